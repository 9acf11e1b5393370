#include <algorithm>

#include "qfalg/involution.hpp"
#include "qfalg/local.hpp"

namespace qfalg {

const char* to_string(Truth t) {
    switch (t) {
        case Truth::True: return "true";
        case Truth::False: return "false";
        case Truth::Unknown: return "unknown";
    }
    return "?";
}

const char* to_string(DecisionReport::Verdict v) {
    switch (v) {
        case DecisionReport::Verdict::AllEquivalent: return "AllEquivalent";
        case DecisionReport::Verdict::CounterexampleFound: return "CounterexampleFound";
        case DecisionReport::Verdict::Inconclusive: return "Inconclusive";
    }
    return "?";
}

namespace {

constexpr const char* kAnisotropic = "anisotropic";
constexpr const char* kHyperbolic = "hyperbolic";
constexpr const char* kIsoNonHyp = "isotropic-non-hyperbolic";
constexpr const char* kUndecided = "undecided";

SampledExtension element_level_shape(const std::string& name, const QuadraticForm& q, const OracleOptions& opt) {
    SampledExtension s{name, kUndecided, "element-level", ""};
    if (q.dim() == 0) {
        s.shape = kHyperbolic;
        return s;
    }
    try {
        if (is_hyperbolic(q, opt)) {
            s.shape = kHyperbolic;
            return s;
        }
        const IsotropyResult r = isotropy_oracle(q, opt);
        if (r.undecided()) {
            s.detail = r.reason;
            return s;
        }
        s.shape = r.isotropic() ? kIsoNonHyp : kAnisotropic;
        if (r.anisotropic()) s.detail = std::string(to_string(r.certificate.kind)) + ": " + r.certificate.detail;
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::OracleUndecided) throw;
        s.detail = e.what();
    }
    return s;
}

void sample_finite(const QuadraticForm& q, const BatteryOptions& opt, std::vector<SampledExtension>& out) {
    const Field& f = q.base();
    const std::uint64_t card = *f.cardinality();
    std::uint64_t size = card;
    for (std::uint32_t k = 2; k <= opt.max_finite_degree; ++k) {
        size *= card;
        if (size > opt.max_finite_cardinality) break;
        const Field big = Field::finite(f.characteristic(), f.degree() * k);
        const std::vector<Elem> emb = finite_field_embedding(f, big);
        const QuadraticForm qk = q.map_coefficients(big, [&](const Elem& x) { return map_element(x, emb); });
        out.push_back(element_level_shape(big.literal(), qk, opt.oracle));
    }
}

void sample_rational(const QuadraticForm& q, std::vector<SampledExtension>& out) {
    const std::vector<mpq_class> diag = rational_diagonal(q);
    for (const auto& v : local::relevant_places(diag)) {
        SampledExtension s;
        s.extension = v.kind == Place::Kind::Real ? "RR" : "QQ_" + std::to_string(v.prime);
        s.method = "local invariants";
        switch (local::shape_at(diag, v)) {
            case local::LocalShape::Anisotropic: s.shape = kAnisotropic; break;
            case local::LocalShape::Hyperbolic: s.shape = kHyperbolic; break;
            case local::LocalShape::IsotropicNonHyperbolic: s.shape = kIsoNonHyp; break;
        }
        out.push_back(std::move(s));
    }
}

// Completion at v: q = <u_i> + pi_v <w_j> with units u, w; W(F_v) = W(k) + W(k).
void sample_function_field(const QuadraticForm& q, const OracleOptions& opt, std::vector<SampledExtension>& out) {
    const Field& f = q.base();
    const std::uint32_t p = f.characteristic();
    const Diagonalization d = diagonalize(q);
    std::vector<Place> places{Place::infinity(p), Place::at_poly(PolyFp(p, {0, 1}))};
    for (const auto& e : d.entries)
        for (const PolyFp* poly : {&e.ratfunc().num, &e.ratfunc().den})
            for (const auto& g : detail::small_irreducible_factors(*poly)) {
                const Place v = Place::at_poly(g);
                if (std::find(places.begin(), places.end(), v) == places.end()) places.push_back(v);
            }
    for (const auto& v : places) {
        const Field res = detail::residue_field(v, p);
        std::vector<Elem> first, second;
        for (const auto& e : d.entries)
            (detail::function_valuation(e, v) % 2 == 0 ? first : second).push_back(detail::unit_residue(e, v, res));
        const SampledExtension r1 = element_level_shape("", diagonal_quadratic(res, first), opt);
        const SampledExtension r2 = element_level_shape("", diagonal_quadratic(res, second), opt);
        SampledExtension s;
        s.extension = f.literal() + "_" + v.to_string();
        s.method = "residue forms over " + res.literal();
        s.detail = std::string("first ") + r1.shape + ", second " + r2.shape;
        if (r1.shape == kUndecided || r2.shape == kUndecided) s.shape = kUndecided;
        else if (r1.shape == kHyperbolic && r2.shape == kHyperbolic) s.shape = kHyperbolic;
        else if (r1.shape == kAnisotropic && r2.shape == kAnisotropic) s.shape = kAnisotropic;
        // A zero-dimensional residue form counts as hyperbolic and anisotropic at once.
        else if ((r1.shape == kAnisotropic && first.size() > 0 && second.empty()) ||
                 (r2.shape == kAnisotropic && second.size() > 0 && first.empty()))
            s.shape = kAnisotropic;
        else s.shape = kIsoNonHyp;
        out.push_back(std::move(s));
    }
}

std::string sampling_note(const Field& f, const BatteryOptions& opt) {
    if (f.is_finite())
        return "base field and GF(q^k) for k <= " + std::to_string(opt.max_finite_degree) + " within " +
               std::to_string(opt.max_finite_cardinality) + " elements";
    if (f.is_rationals()) return "base field and every completion at a relevant place (invariant level)";
    if (f.characteristic() != 2)
        return "base field and completions at infinity, t and the places of the diagonal entries (residue forms)";
    return "base field only: no completion family implemented in characteristic 2";
}

ConditionResult condition(std::string id) {
    ConditionResult c;
    c.id = std::move(id);
    return c;
}

std::string slots_literal(const std::vector<Elem>& slots) {
    std::string s = "pfister_b(";
    for (std::size_t i = 0; i < slots.size(); ++i) s += (i ? "," : "") + slots[i].to_string();
    return s + ")";
}

ConditionResult from_decomposable(const DecomposabilityResult& td, const std::string& id) {
    ConditionResult c = condition(id);
    c.method = "totally_decomposable/" + td.method;
    c.detail = td.detail;
    switch (td.verdict) {
        case DecomposabilityResult::Verdict::Yes:
            c.value = Truth::True;
            c.certificates.push_back({"psi", slots_literal(td.slots)});
            break;
        case DecomposabilityResult::Verdict::No: c.value = Truth::False; break;
        case DecomposabilityResult::Verdict::Undecided: c.value = Truth::Unknown; break;
    }
    return c;
}

ConditionResult from_pfister(const PfisterResult& pr, const QuadraticForm& rho, const std::string& id) {
    ConditionResult c = condition(id);
    c.method = "pfister_similarity/" + pr.method;
    c.detail = pr.detail;
    c.certificates.push_back({"rho", rho.to_string()});
    if (pr.verdict == PfisterResult::Verdict::Yes) {
        c.value = Truth::True;
        PfisterCertificate unit = *pr.certificate;
        unit.scale = rho.base().one();
        c.certificates.push_back({"pfister", pfister_from_certificate(rho.base(), unit).to_string()});
        c.certificates.push_back({"scale", pr.certificate->scale.to_string()});
    } else if (pr.verdict == PfisterResult::Verdict::No) {
        c.value = Truth::False;
    }
    return c;
}

// Slot vectors for psi built from the square classes of phi's diagonal ratios.
std::vector<std::vector<Elem>> slot_candidates(const BilinearForm& phi, std::size_t k) {
    const Field& f = phi.base();
    std::vector<Elem> pool{f.one(), -f.one()};
    if (auto d = phi.diagonal_entries())
        for (std::size_t i = 1; i < d->size(); ++i) {
            const Elem r = (*d)[i] / (*d)[0];
            if (std::find(pool.begin(), pool.end(), r) == pool.end()) pool.push_back(r);
        }
    std::vector<std::vector<Elem>> out;
    std::vector<std::size_t> idx(k, 0);
    while (out.size() < 200) {
        std::vector<Elem> s;
        for (auto i : idx) s.push_back(pool[i]);
        out.push_back(std::move(s));
        // Nondecreasing index tuples: combinations with repetition.
        std::size_t pos = k;
        while (pos > 0 && idx[pos - 1] + 1 == pool.size()) --pos;
        if (pos == 0) break;
        ++idx[pos - 1];
        for (std::size_t j = pos; j < k; ++j) idx[j] = idx[pos - 1];
    }
    return out;
}

ConditionResult pfister_normal_form(const InvolutionRep& rep, const Algebra& D, const BilinearForm& phi, std::size_t k,
                                    const ConditionResult& pfister_cond, const DecomposabilityResult& td,
                                    const std::string& id, const OracleOptions& opt,
                                    std::vector<std::vector<Elem>>& psi_claims) {
    ConditionResult c = condition(id);
    const Field& f = D.field();
    std::vector<std::vector<Elem>> cands = slot_candidates(phi, k);
    const std::size_t from_phi = cands.size();
    if (td.verdict == DecomposabilityResult::Verdict::Yes) cands.push_back(td.slots);
    bool undecided = false;
    for (std::size_t i = 0; i < cands.size(); ++i) {
        const InvolutionRep cand = InvolutionRep::adjoint(tensor_bh(bilinear_pfister(f, cands[i]), unit_form(D)));
        try {
            const SimilarityResult s = similarity_inv(rep, cand, opt);
            if (s.similar) {
                c.value = Truth::True;
                c.method = std::string("isomorphic_inv/") + s.method +
                           (i < from_phi ? "/phi-ratio candidate" : "/constructive candidate");
                c.certificates.push_back({"psi", slots_literal(cands[i])});
                c.certificates.push_back({"similarity_scalar", s.scalar->to_string()});
                psi_claims.push_back(cands[i]);
                return c;
            }
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::OracleUndecided) throw;
            undecided = true;
        }
    }
    if (pfister_cond.value == Truth::False) {
        // Ad(psi) (x) (B, tau) boxtimes (B, tau) = Ad(psi (x) pi), a Pfister form.
        c.value = Truth::False;
        c.method = "excluded: the boxtimes image is not similar to a Pfister form";
        c.detail = pfister_cond.method;
        return c;
    }
    c.method = "isomorphic_inv";
    c.detail = "no Pfister candidate verified among " + std::to_string(cands.size()) +
               (undecided ? " (some comparisons undecided)" : "");
    return c;
}

ConditionResult extension_condition(const std::vector<SampledExtension>& sampled, const std::string& id) {
    ConditionResult c = condition(id);
    c.method = "sampled extensions";
    bool unknown = false;
    for (const auto& s : sampled) {
        if (s.shape == kIsoNonHyp) {
            c.value = Truth::False;
            c.detail = "isotropic and not hyperbolic over " + s.extension;
            c.certificates.push_back({"extension", s.extension});
            return c;
        }
        if (s.shape == kUndecided) unknown = true;
    }
    c.value = unknown ? Truth::Unknown : Truth::True;
    c.detail = unknown ? "some sampled extensions undecided" : "anisotropic or hyperbolic on every sampled extension";
    return c;
}

bool is_power_of_two(std::size_t n) { return n > 0 && (n & (n - 1)) == 0; }

std::size_t log2_floor(std::size_t n) {
    std::size_t k = 0;
    while ((std::size_t{1} << (k + 1)) <= n) ++k;
    return k;
}

// Claims behind a mismatch are re-checked from (D, phi) before it is reported.
bool reverify(const DecisionReport& r, const Algebra& D, const BilinearForm& phi,
              const std::vector<std::vector<Elem>>& psi_claims, const BatteryOptions& opt) {
    const InvolutionRep rep = InvolutionRep::adjoint(tensor_bh(phi, unit_form(D)));
    for (const auto& slots : psi_claims) {
        const InvolutionRep cand = InvolutionRep::adjoint(tensor_bh(bilinear_pfister(D.field(), slots), unit_form(D)));
        if (!isomorphic_inv(rep, cand, opt.oracle)) return false;
    }
    const QuadraticForm rho = tensor(phi, norm_form(D));
    for (const auto& c : r.conditions)
        for (const auto& [name, value] : c.certificates)
            if (name == "extension" && c.value == Truth::False) {
                const auto fresh = sample_extensions(rho, opt);
                const bool found = std::any_of(fresh.begin(), fresh.end(), [&](const SampledExtension& s) {
                    return s.extension == value && s.shape == kIsoNonHyp;
                });
                if (!found) return false;
            }
    return true;
}

DecisionReport run_battery(const std::string& theorem, const Algebra& D, const BilinearForm& phi,
                           const BatteryOptions& opt) {
    DecisionReport r;
    r.theorem = theorem;
    r.algebra = D.literal();
    r.phi = phi.to_string();
    const bool symplectic = theorem == "symplectic";
    const std::vector<std::string> ids = symplectic ? std::vector<std::string>{"i", "ii", "iii", "iv"}
                                                    : std::vector<std::string>{"i", "ii", "iii"};
    auto inconclusive = [&](const std::string& why) {
        for (const auto& id : ids) {
            ConditionResult c = condition(id);
            c.detail = why;
            r.conditions.push_back(std::move(c));
        }
        r.verdict = DecisionReport::Verdict::Inconclusive;
        r.reasons.push_back(why);
        return r;
    };
    if (symplectic && D.kind() != AlgebraKind::Quaternion) return inconclusive("hypothesis: base must be a quaternion algebra");
    if (!symplectic && D.kind() != AlgebraKind::Etale) return inconclusive("hypothesis: base must be a quadratic etale algebra");
    if (!(phi.base() == D.field())) return inconclusive("hypothesis: phi is defined over another field");
    const std::size_t deg = phi.dim() * (symplectic ? 2 : 1);
    r.degree = deg;
    if (!is_power_of_two(deg) || deg < 2) return inconclusive("hypothesis: degree " + std::to_string(deg) + " is not 2^n, n >= 1");

    std::optional<InvolutionRep> rep;
    try {
        rep = InvolutionRep::adjoint(tensor_bh(phi, unit_form(D)));
    } catch (const Error& e) {
        return inconclusive(std::string("hypothesis: ") + e.what());
    }
    const QuadraticForm rho = tensor(phi, norm_form(D));
    const std::size_t k = log2_floor(phi.dim());
    const OracleOptions& o = opt.oracle;

    DecomposabilityResult td;
    try {
        td = totally_decomposable(*rep, o);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::OracleUndecided && e.kind() != ErrorKind::HypothesisViolation) throw;
        td.detail = e.what();
    }
    std::vector<std::vector<Elem>> psi_claims;
    if (td.verdict == DecomposabilityResult::Verdict::Yes) psi_claims.push_back(td.slots);
    const ConditionResult ci = from_decomposable(td, "i");
    const PfisterResult pr = td.pfister.method.empty() ? pfister_similarity(rho, o) : td.pfister;
    const ConditionResult cp = from_pfister(pr, rho, symplectic ? "ii" : "pfister");
    const ConditionResult cn = pfister_normal_form(*rep, D, phi, k, cp, td, symplectic ? "iii" : "ii", o, psi_claims);
    r.sampled_extensions = sample_extensions(rho, opt);
    r.sampling_note = sampling_note(D.field(), opt);
    const ConditionResult ce = extension_condition(r.sampled_extensions, symplectic ? "iv" : "iii");
    if (symplectic) r.conditions = {ci, cp, cn, ce};
    else {
        ConditionResult cn2 = cn;
        cn2.certificates.insert(cn2.certificates.end(), cp.certificates.begin(), cp.certificates.end());
        if (cp.value != Truth::Unknown) cn2.certificates.push_back({"boxtimes_pfister", to_string(cp.value)});
        r.conditions = {ci, cn2, ce};
    }

    // Base-field cross-check of the hermitian and boxtimes computations.
    try {
        (void)is_isotropic_inv(*rep, o);
        (void)is_hyperbolic_inv(*rep, o);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::OracleUndecided) throw;
    }

    std::vector<std::string> unknown;
    bool any_true = false, any_false = false, finite_false = false;
    for (const auto& c : r.conditions) {
        if (c.value == Truth::Unknown) unknown.push_back("condition " + c.id + ": " + c.detail);
        if (c.value == Truth::True) any_true = true;
        if (c.value == Truth::False) {
            any_false = true;
            if (c.id != ce.id) finite_false = true;
        }
    }
    const bool ext_true_only_on_sample = ce.value == Truth::True && finite_false;
    if (!unknown.empty()) {
        r.verdict = DecisionReport::Verdict::Inconclusive;
        r.reasons = unknown;
    } else if (!(any_true && any_false)) {
        r.verdict = DecisionReport::Verdict::AllEquivalent;
    } else if (ext_true_only_on_sample && std::all_of(r.conditions.begin(), r.conditions.end(), [&](const ConditionResult& c) {
                   return c.id == ce.id || c.value == Truth::False;
               })) {
        r.verdict = DecisionReport::Verdict::Inconclusive;
        r.reasons.push_back("the extension condition is not refuted on the sampled family; the remaining conditions are false");
    } else if (reverify(r, D, phi, psi_claims, opt)) {
        r.verdict = DecisionReport::Verdict::CounterexampleFound;
        r.reasons.push_back("conditions disagree after re-verification");
    } else {
        r.verdict = DecisionReport::Verdict::Inconclusive;
        r.reasons.push_back("a certificate failed re-verification");
    }
    if (ce.value == Truth::True) r.reasons.push_back("sampling incomplete: " + r.sampling_note);
    return r;
}

}  // namespace

std::vector<SampledExtension> sample_extensions(const QuadraticForm& q, const BatteryOptions& opt) {
    const Field& f = q.base();
    std::vector<SampledExtension> out{element_level_shape(f.literal(), q, opt.oracle)};
    if (f.is_finite()) sample_finite(q, opt, out);
    else if (f.is_rationals()) sample_rational(q, out);
    else if (f.characteristic() != 2) sample_function_field(q, opt.oracle, out);
    return out;
}

DecisionReport theorem_battery_symplectic(const Algebra& Q, const BilinearForm& phi, const BatteryOptions& opt) {
    return run_battery("symplectic", Q, phi, opt);
}

DecisionReport theorem_battery_unitary(const Algebra& K, const BilinearForm& phi, const BatteryOptions& opt) {
    return run_battery("unitary", K, phi, opt);
}

}  // namespace qfalg
