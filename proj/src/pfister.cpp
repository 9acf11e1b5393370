#include "qfalg/pfister.hpp"

#include "qfalg/local.hpp"

namespace qfalg {

const char* to_string(PfisterResult::Verdict v) {
    switch (v) {
        case PfisterResult::Verdict::Yes: return "yes";
        case PfisterResult::Verdict::No: return "no";
        case PfisterResult::Verdict::Undecided: return "undecided";
    }
    return "?";
}

QuadraticForm pfister_from_certificate(const Field& f, const PfisterCertificate& c) {
    if (!c.binary_slot) {
        if (!c.bilinear_slots.empty()) throw Error(ErrorKind::InvalidArgument, "unary certificate with slots");
        return diagonal_quadratic(f, {c.scale});
    }
    return scale(c.scale, quadratic_pfister(f, *c.binary_slot, c.bilinear_slots));
}

std::pair<Elem, Vec> represented_value(const QuadraticForm& q) {
    const Field& f = q.base();
    const std::size_t n = q.dim();
    for (std::size_t i = 0; i < n; ++i)
        if (!q.coeffs()(i, i).is_zero()) return {q.coeffs()(i, i), unit_vec(f, n, i)};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (!q.coeffs()(i, j).is_zero()) {
                Vec v = unit_vec(f, n, i);
                v[j] = f.one();
                return {q.eval(v), v};
            }
    throw Error(ErrorKind::SingularForm, "form represents no nonzero value");
}

namespace {

PfisterResult yes(PfisterCertificate c, std::string method) {
    PfisterResult r;
    r.verdict = PfisterResult::Verdict::Yes;
    r.certificate = std::move(c);
    r.method = std::move(method);
    return r;
}

PfisterResult no(std::string method, std::string detail) {
    PfisterResult r;
    r.verdict = PfisterResult::Verdict::No;
    r.method = std::move(method);
    r.detail = std::move(detail);
    return r;
}

PfisterResult undecided(std::string method, std::string detail) {
    PfisterResult r;
    r.method = std::move(method);
    r.detail = std::move(detail);
    return r;
}

// Scalar c = q(e) and a binary [1, a] spanned inside c^-1 q.
struct BinaryNormalization {
    Elem scale;
    Elem slot;
};

BinaryNormalization normalize_binary(const QuadraticForm& q) {
    const Field& f = q.base();
    const auto [c, e1] = represented_value(q);
    const QuadraticForm qs = scale(c.inv(), q);
    const std::size_t n = q.dim();
    const Elem b11 = qs.polar(e1, e1);
    for (std::size_t j = 0; j < n; ++j) {
        const Vec w = unit_vec(f, n, j);
        if (Matrix::from_columns(f, {e1, w}, n).rank() < 2) continue;
        // y = w + l e1 with b(e1, y) = 1.
        const Elem bw = qs.polar(e1, w);
        Vec y;
        if (!b11.is_zero()) {
            y = axpy((f.one() - bw) / b11, e1, w);
        } else {
            if (bw.is_zero()) continue;
            y = w;
            for (auto& x : y) x = x / bw;
        }
        const Elem a = qs.eval(y);
        // [1, a] is singular exactly when 1 - 4a = 0.
        if ((f.one() - f.from_int(4) * a).is_zero()) continue;
        return {c, a};
    }
    throw Error(ErrorKind::SingularForm, "no nonsingular binary through a represented vector");
}

PfisterResult verified(const QuadraticForm& q, PfisterCertificate c, const std::string& method, const OracleOptions& opt) {
    if (!isometric(q, pfister_from_certificate(q.base(), c), opt))
        return undecided(method, "candidate certificate failed isometry verification");
    return yes(std::move(c), method);
}

PfisterResult constructive(const QuadraticForm& q, const std::string& method, const OracleOptions& opt) {
    const Field& f = q.base();
    const BinaryNormalization bn = normalize_binary(q);
    const QuadraticForm target = scale(bn.scale.inv(), q);
    std::optional<std::vector<Elem>> slots;
    try {
        slots = extend_pfister(target, binary_quadratic(f, f.one(), bn.slot), opt);
    } catch (const WittUndecided& e) {
        return undecided(method, std::string("oracle undecided during slot construction: ") + e.what());
    }
    if (!slots) return undecided(method, "slot construction did not close up to a Pfister form");
    return verified(q, PfisterCertificate{bn.scale, bn.slot, *slots}, method, opt);
}

std::size_t log2_exact(std::size_t n) {
    std::size_t m = 0;
    while ((std::size_t{1} << m) < n) ++m;
    if ((std::size_t{1} << m) != n) throw Error(ErrorKind::NotPowerOfTwoDim, "dimension " + std::to_string(n));
    return m;
}

}  // namespace

std::optional<std::vector<Elem>> extend_pfister(const QuadraticForm& target, const QuadraticForm& seed,
                                                const OracleOptions& opt) {
    const Field& f = target.base();
    if (seed.dim() == 0 || target.dim() % seed.dim()) return std::nullopt;
    QuadraticForm rho = seed;
    std::vector<Elem> slots;
    while (rho.dim() < target.dim()) {
        const WittDecomposition d = witt_decompose(orthogonal_sum(target, negate(rho)), opt);
        if (d.witt_index < rho.dim()) return std::nullopt;
        // An empty kernel leaves target = rho + hyperbolic; <1, -1> (x) rho is the only option.
        const Elem s = d.kernel.dim() == 0 ? -f.one() : represented_value(d.kernel).first;
        slots.push_back(s);
        rho = tensor(diagonal_bilinear(f, {f.one(), s}), rho);
    }
    if (!isometric(target, rho, opt)) return std::nullopt;
    return slots;
}

PfisterResult pfister_similarity(const QuadraticForm& q, const OracleOptions& opt) {
    const std::size_t m = log2_exact(q.dim());
    if (!q.is_nonsingular()) throw Error(ErrorKind::SingularForm, "Pfister similarity of a singular form");
    const Field& f = q.base();
    if (m == 0) return yes(PfisterCertificate{q.coeffs()(0, 0), std::nullopt, {}}, "unary");
    if (m == 1) {
        const BinaryNormalization bn = normalize_binary(q);
        return verified(q, PfisterCertificate{bn.scale, bn.slot, {}}, "binary", opt);
    }
    try {
        if (is_hyperbolic(q, opt))
            return verified(q, PfisterCertificate{f.one(), f.zero(), std::vector<Elem>(m - 1, f.one())}, "hyperbolic",
                            opt);
    } catch (const WittUndecided& e) {
        return undecided("isotropic", std::string("isotropy oracle undecided: ") + e.what());
    }
    const IsotropyResult iso = isotropy_oracle(q, opt);
    if (iso.undecided()) return undecided("isotropic", "isotropy oracle undecided: " + iso.reason);
    if (iso.isotropic()) return no("isotropic", "isotropic but not hyperbolic");
    const FormInvariants inv = invariants(q);
    const std::string disc_name = f.characteristic() == 2 ? "arf" : "discriminant";
    if (inv.disc_or_arf_trivial && !*inv.disc_or_arf_trivial)
        return no(disc_name, f.characteristic() == 2 ? "nontrivial Arf invariant" : "nontrivial signed discriminant");
    if (m == 2) return constructive(q, inv.disc_or_arf_trivial ? disc_name : std::string("constructive"), opt);
    if (m == 3 && f.is_rationals()) {
        const std::vector<mpq_class> a = rational_diagonal(q);
        std::vector<mpq_class> h;
        for (int i = 0; i < 4; ++i) {
            h.push_back(1);
            h.push_back(-1);
        }
        std::vector<mpq_class> all = a;
        all.insert(all.end(), h.begin(), h.end());
        for (const auto& v : local::relevant_places(all)) {
            const int eq = local::invariants_at(a, v).hasse, eh = local::invariants_at(h, v).hasse;
            if (eq != eh) return no("hasse", "Hasse invariant differs from the hyperbolic class at " + v.to_string());
        }
        return constructive(q, "hasse", opt);
    }
    if (m >= 4 && f.is_rationals()) {
        // Completions: hyperbolic at every prime, anisotropic or hyperbolic at RR.
        const std::vector<mpq_class> a = rational_diagonal(q);
        for (const auto& v : local::relevant_places(a))
            if (local::shape_at(a, v) == local::LocalShape::IsotropicNonHyperbolic)
                return no("local", "isotropic and not hyperbolic over the completion at " + v.to_string());
        // What survives is definite, hence +-<<-1, ..., -1>> by Hasse-Minkowski; [1, 5/4] = <1, 1>.
        const int sign = sgn(a.front());
        return verified(q,
                        PfisterCertificate{f.from_int(sign), f.from_rational(mpq_class(5, 4)),
                                           std::vector<Elem>(m - 1, f.one())},
                        "local", opt);
    }
    return constructive(q, "constructive", opt);
}

}  // namespace qfalg
