#include "qfalg/involution.hpp"

#include <algorithm>

#include "qfalg/local.hpp"

namespace qfalg {

const char* to_string(InvolutionKind k) {
    switch (k) {
        case InvolutionKind::Orthogonal: return "orthogonal";
        case InvolutionKind::Symplectic: return "symplectic";
        case InvolutionKind::Unitary: return "unitary";
    }
    return "?";
}

const char* to_string(DecomposabilityResult::Verdict v) {
    switch (v) {
        case DecomposabilityResult::Verdict::Yes: return "yes";
        case DecomposabilityResult::Verdict::No: return "no";
        case DecomposabilityResult::Verdict::Undecided: return "undecided";
    }
    return "?";
}

InvolutionRep InvolutionRep::adjoint(HermitianForm h) {
    if (!h.is_nondegenerate()) throw Error(ErrorKind::Degenerate, "adjoint involution of a degenerate form");
    const Algebra& D = h.algebra();
    const bool char2 = D.field().characteristic() == 2;
    const bool lambda_one = h.lambda().is_one();
    InvolutionKind k = InvolutionKind::Orthogonal;
    std::size_t deg = h.dim();
    switch (D.kind()) {
        case AlgebraKind::Quaternion:
            k = lambda_one && h.is_even() ? InvolutionKind::Symplectic : InvolutionKind::Orthogonal;
            deg *= 2;
            break;
        case AlgebraKind::Etale: k = InvolutionKind::Unitary; break;
        case AlgebraKind::Base:
            // Even over (F, id) means alternating in characteristic 2.
            if (char2) k = h.is_even() ? InvolutionKind::Symplectic : InvolutionKind::Orthogonal;
            else k = lambda_one ? InvolutionKind::Orthogonal : InvolutionKind::Symplectic;
            break;
    }
    return InvolutionRep(std::move(h), k, deg);
}

InvolutionRep InvolutionRep::adjoint(QuadraticForm q) {
    if (!q.is_nonsingular()) throw Error(ErrorKind::SingularForm, "adjoint quadratic pair of a singular form");
    const std::size_t deg = q.dim();
    return InvolutionRep(std::move(q), InvolutionKind::Orthogonal, deg);
}

const HermitianForm& InvolutionRep::hermitian() const {
    if (!is_hermitian()) throw Error(ErrorKind::UnsupportedVariant, "quadratic pair, not a hermitian adjoint");
    return std::get<HermitianForm>(form_);
}

const QuadraticForm& InvolutionRep::quadratic() const {
    if (is_hermitian()) throw Error(ErrorKind::UnsupportedVariant, "hermitian adjoint, not a quadratic pair");
    return std::get<QuadraticForm>(form_);
}

std::string InvolutionRep::to_string() const {
    return "Ad(" + (is_hermitian() ? hermitian().to_string() : quadratic().to_string()) + ")";
}

// ---------------------------------------------------------------------------

Decomposition decompose(const InvolutionRep& rep) {
    const HermitianForm& h = rep.hermitian();
    const Algebra& D = h.algebra();
    const Field& f = D.field();
    if (!h.lambda().is_one()) throw Error(ErrorKind::UnsupportedVariant, "decomposition needs lambda = 1");
    if (D.kind() == AlgebraKind::Base && f.characteristic() == 2)
        throw Error(ErrorKind::UnsupportedVariant, "alternating form over the base field");
    bool split = false;
    if (D.kind() != AlgebraKind::Base) {
        try {
            split = is_split(D);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::OracleUndecided) throw;
        }
    }
    if (split) {
        std::vector<Elem> entries;
        for (std::size_t i = 0; i < h.dim(); ++i) entries.push_back(i % 2 ? -f.one() : f.one());
        return {diagonal_bilinear(f, entries), D, "hyperbolic"};
    }
    const DiagonalProfile p = diagonalize_even(h);
    return {diagonal_bilinear(f, p.entries), D, "diagonal"};
}

namespace {

QuadraticForm boxtimes_form(const InvolutionRep& rep) {
    const Decomposition d = decompose(rep);
    return tensor(d.phi, norm_form(d.base));
}

bool decided_isotropic(const IsotropyResult& r, const std::string& side) {
    if (r.undecided()) throw Error(ErrorKind::OracleUndecided, side + ": " + r.reason);
    return r.isotropic();
}

bool witt_hyperbolic(const QuadraticForm& q, const OracleOptions& opt) {
    try {
        return witt_decompose(q, opt).witt_index * 2 == q.dim();
    } catch (const WittUndecided& e) {
        throw Error(ErrorKind::OracleUndecided, e.what());
    }
}

bool witt_isotropic(const QuadraticForm& q, const OracleOptions& opt) {
    try {
        return witt_decompose(q, opt).witt_index > 0;
    } catch (const WittUndecided& e) {
        if (e.partial().witt_index > 0) return true;
        throw Error(ErrorKind::OracleUndecided, e.what());
    }
}

void require_agreement(bool a, bool b, const std::string& what, const InvolutionRep& rep) {
    if (a != b)
        throw Error(ErrorKind::InternalInconsistency,
                    what + " differs between the two computations for " + rep.to_string());
}

}  // namespace

InvolutionRep boxtimes_base(const InvolutionRep& rep) { return InvolutionRep::adjoint(boxtimes_form(rep)); }

bool is_isotropic_inv(const InvolutionRep& rep, const OracleOptions& opt) {
    bool direct = false, image = false;
    if (rep.is_hermitian()) {
        const HermitianIsotropy r = isotropy_h(rep.hermitian(), opt);
        direct = decided_isotropic(r.trace_result, "hermitian side");
        image = decided_isotropic(isotropy_oracle(boxtimes_form(rep), opt), "boxtimes side");
    } else {
        direct = decided_isotropic(isotropy_oracle(rep.quadratic(), opt), "oracle");
        image = witt_isotropic(rep.quadratic(), opt);
    }
    require_agreement(direct, image, "isotropy", rep);
    return direct;
}

bool is_hyperbolic_inv(const InvolutionRep& rep, const OracleOptions& opt) {
    bool direct = false, image = false;
    try {
        if (rep.is_hermitian()) {
            direct = hyperbolic_flag_h(rep.hermitian(), opt).has_value();
            image = is_hyperbolic(boxtimes_form(rep), opt);
        } else {
            direct = witt_hyperbolic(rep.quadratic(), opt);
            image = is_hyperbolic(rep.quadratic(), opt);
        }
    } catch (const WittUndecided& e) {
        throw Error(ErrorKind::OracleUndecided, e.what());
    }
    require_agreement(direct, image, "hyperbolicity", rep);
    return direct;
}

// ---------------------------------------------------------------------------

namespace {

QuadraticForm rep_trace_form(const InvolutionRep& rep) {
    return rep.is_hermitian() ? trace_form(rep.hermitian()) : rep.quadratic();
}

mpq_class rational_det(const QuadraticForm& q) {
    mpq_class d = 1;
    for (const auto& a : rational_diagonal(q)) d *= a;
    return d;
}

std::pair<int, int> rational_signature(const QuadraticForm& q) {
    int pos = 0, neg = 0;
    for (const auto& a : rational_diagonal(q)) (sgn(a) > 0 ? pos : neg)++;
    return {pos, neg};
}

// c with q1 = c q2 forces c q2 to represent r = q1(x0), so c = r / q2(w).
std::vector<Elem> candidate_scalars(const QuadraticForm& q1, const QuadraticForm& q2) {
    const Field& f = q1.base();
    const std::size_t n = q1.dim();
    const Elem r = represented_value(q1).first;
    std::vector<Vec> ws;
    for (std::size_t i = 0; i < n; ++i) ws.push_back(unit_vec(f, n, i));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            Vec w = unit_vec(f, n, i);
            w[j] = f.one();
            ws.push_back(w);
            w[j] = -f.one();
            ws.push_back(w);
        }
    std::vector<Elem> out{f.one(), -f.one()};
    std::vector<mpz_class> seen_classes{1, -1};
    for (const auto& w : ws) {
        const Elem v = q2.eval(w);
        if (v.is_zero()) continue;
        const Elem c = r / v;
        if (f.is_rationals()) {
            const mpz_class cls = local::squarefree_part(c.rational());
            if (std::find(seen_classes.begin(), seen_classes.end(), cls) != seen_classes.end()) continue;
            seen_classes.push_back(cls);
            out.push_back(f.from_rational(mpq_class(cls)));
        } else if (std::find(out.begin(), out.end(), c) == out.end()) {
            out.push_back(c);
        }
        if (out.size() >= 40) break;
    }
    return out;
}

}  // namespace

SimilarityResult similarity_inv(const InvolutionRep& rep1, const InvolutionRep& rep2, const OracleOptions& opt) {
    if (rep1.is_hermitian() != rep2.is_hermitian() ||
        (rep1.is_hermitian() && rep1.hermitian().algebra() != rep2.hermitian().algebra()))
        throw Error(ErrorKind::HypothesisViolation, "isomorphism test needs a common base");
    SimilarityResult out;
    if (rep1.degree() != rep2.degree() || rep1.kind() != rep2.kind()) {
        out.method = "degree or kind";
        return out;
    }
    const QuadraticForm q1 = rep_trace_form(rep1), q2 = rep_trace_form(rep2);
    const Field& f = q1.base();
    const std::size_t n = q1.dim();
    std::vector<Elem> cands;
    bool complete = false;
    if (f.is_finite()) {
        cands.push_back(f.one());
        if (f.characteristic() != 2)
            for (const auto& x : f.elements())
                if (!x.is_zero() && !x.is_square()) {
                    cands.push_back(x);
                    break;
                }
        complete = true;
        out.method = "square classes";
    } else if (f.is_rationals()) {
        const auto [p1, m1] = rational_signature(q1);
        const auto [p2, m2] = rational_signature(q2);
        if (!((p1 == p2 && m1 == m2) || (p1 == m2 && m1 == p2))) {
            out.method = "signature";
            return out;
        }
        const mpq_class d1 = rational_det(q1), d2 = rational_det(q2);
        if (n % 2 == 0 && local::squarefree_part(d1) != local::squarefree_part(d2)) {
            out.method = "discriminant";
            return out;
        }
        // Hasse(c q) = Hasse(q) when 4 | n and det q is a square, so only sign(c) matters.
        if (n % 4 == 0 && local::squarefree_part(d2) == 1) {
            cands = {f.one(), -f.one()};
            complete = true;
            out.method = "hasse-minkowski";
        } else {
            cands = candidate_scalars(q1, q2);
            out.method = "candidate search";
        }
    } else {
        cands = candidate_scalars(q1, q2);
        out.method = "candidate search";
    }
    bool undecided = false;
    for (const auto& c : cands) {
        try {
            if (isometric(q1, scale(c, q2), opt)) {
                out.similar = true;
                out.scalar = c;
                return out;
            }
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::OracleUndecided) throw;
            undecided = true;
        }
    }
    if (!complete || undecided)
        throw Error(ErrorKind::OracleUndecided,
                    "no similarity scalar among " + std::to_string(cands.size()) + " candidates");
    return out;
}

bool isomorphic_inv(const InvolutionRep& rep1, const InvolutionRep& rep2, const OracleOptions& opt) {
    return similarity_inv(rep1, rep2, opt).similar;
}

// ---------------------------------------------------------------------------

namespace {

bool is_power_of_two(std::size_t n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

DecomposabilityResult totally_decomposable(const InvolutionRep& rep, const OracleOptions& opt) {
    using V = DecomposabilityResult::Verdict;
    if (!rep.is_hermitian()) throw Error(ErrorKind::HypothesisViolation, "needs a hermitian adjoint");
    const Algebra& D = rep.hermitian().algebra();
    const bool ok_kind = (rep.kind() == InvolutionKind::Symplectic && D.kind() == AlgebraKind::Quaternion) ||
                         (rep.kind() == InvolutionKind::Unitary && D.kind() == AlgebraKind::Etale);
    if (!ok_kind) throw Error(ErrorKind::HypothesisViolation, std::string(to_string(rep.kind())) + " over " + D.literal());
    if (!is_power_of_two(rep.degree()) || rep.degree() < 2)
        throw Error(ErrorKind::HypothesisViolation, "degree " + std::to_string(rep.degree()) + " is not 2^n with n >= 1");

    DecomposabilityResult out;
    const Field& f = D.field();
    const QuadraticForm pi = norm_form(D);
    const QuadraticForm rho = boxtimes_form(rep);
    out.pfister = pfister_similarity(rho, opt);
    out.method = "pfister:" + out.pfister.method;
    if (out.pfister.verdict == PfisterResult::Verdict::No) {
        out.verdict = V::No;
        out.detail = out.pfister.detail;
        return out;
    }
    if (out.pfister.verdict == PfisterResult::Verdict::Undecided) {
        out.detail = out.pfister.detail;
        return out;
    }
    // rho = c P with P Pfister; P contains pi, so c^-1 rho = psi (x) pi.
    const QuadraticForm target = scale(out.pfister.certificate->scale.inv(), rho);
    std::optional<std::vector<Elem>> slots;
    try {
        slots = extend_pfister(target, pi, opt);
    } catch (const WittUndecided& e) {
        out.detail = std::string("slot construction undecided: ") + e.what();
        return out;
    }
    if (!slots) {
        out.detail = "slot construction over the norm form did not close up";
        return out;
    }
    const InvolutionRep candidate = InvolutionRep::adjoint(tensor_bh(bilinear_pfister(f, *slots), unit_form(D)));
    try {
        if (!isomorphic_inv(rep, candidate, opt))
            throw Error(ErrorKind::InternalInconsistency, "constructed Pfister slots fail the isomorphism check");
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::OracleUndecided) throw;
        out.detail = std::string("verification undecided: ") + e.what();
        return out;
    }
    out.verdict = V::Yes;
    out.slots = *slots;
    return out;
}

}  // namespace qfalg
