#include "qfalg/witt.hpp"

#include "qfalg/local.hpp"

namespace qfalg {

namespace {

Vec combine(const Field& f, const Vec& coords, const std::vector<Vec>& basis, std::size_t n) {
    Vec out = zero_vec(f, n);
    for (std::size_t i = 0; i < coords.size(); ++i)
        if (!coords[i].is_zero()) out = axpy(coords[i], basis[i], out);
    return out;
}

WittDecomposition assemble(const QuadraticForm& q, const std::vector<Vec>& pairs, const std::vector<Vec>& rest,
                           const QuadraticForm& kernel, IsotropyResult cert) {
    std::vector<Vec> cols = pairs;
    cols.insert(cols.end(), rest.begin(), rest.end());
    return WittDecomposition{pairs.size() / 2, kernel, Matrix::from_columns(q.base(), cols, q.dim()), std::move(cert)};
}

}  // namespace

QuadraticForm negate(const QuadraticForm& q) {
    if (q.dim() == 0) return q;
    return scale(-q.base().one(), q);
}

WittDecomposition witt_decompose(const QuadraticForm& q, const OracleOptions& opt) {
    if (!q.is_nonsingular()) throw Error(ErrorKind::SingularForm, "Witt decomposition of a singular form");
    const Field& f = q.base();
    const std::size_t n = q.dim();
    std::vector<Vec> basis;  // current subspace, original coordinates
    for (std::size_t i = 0; i < n; ++i) basis.push_back(unit_vec(f, n, i));
    QuadraticForm sub = q;
    std::vector<Vec> pairs;
    while (true) {
        IsotropyResult r = isotropy_oracle(sub, opt);
        if (r.undecided()) throw WittUndecided(r.reason, assemble(q, pairs, basis, sub, r));
        if (r.anisotropic()) return assemble(q, pairs, basis, sub, std::move(r));
        const std::size_t m = sub.dim();
        const Vec& x = r.witness;
        std::size_t j = 0;
        Elem bx = f.zero();
        for (; j < m; ++j) {
            bx = sub.polar(x, unit_vec(f, m, j));
            if (!bx.is_zero()) break;
        }
        if (j == m) throw Error(ErrorKind::InternalInconsistency, "isotropic vector in the radical");
        Vec y = unit_vec(f, m, j);
        for (auto& c : y) c = c / bx;
        y = axpy(-sub.eval(y), x, y);
        std::vector<Vec> comp;
        for (std::size_t l = 0; l < m; ++l) {
            const Vec e = unit_vec(f, m, l);
            Vec w = axpy(-sub.polar(e, y), x, e);
            w = axpy(-sub.polar(e, x), y, w);
            comp.push_back(std::move(w));
        }
        std::vector<Vec> chosen;
        for (auto idx : independent_subset(f, comp)) chosen.push_back(comp[idx]);
        if (chosen.size() != m - 2) throw Error(ErrorKind::InternalInconsistency, "complement has wrong dimension");
        pairs.push_back(combine(f, x, basis, n));
        pairs.push_back(combine(f, y, basis, n));
        std::vector<Vec> next;
        for (const auto& w : chosen) next.push_back(combine(f, w, basis, n));
        sub = sub.restrict_to(chosen);
        basis = std::move(next);
    }
}

std::vector<mpq_class> rational_diagonal(const QuadraticForm& q) {
    if (!q.base().is_rationals()) throw Error(ErrorKind::UnsupportedField, "rational diagonal over " + q.base().literal());
    std::vector<mpq_class> out;
    for (const auto& e : diagonalize(q).entries) out.push_back(e.rational());
    return out;
}

namespace {

bool rational_hyperbolic(const QuadraticForm& q) {
    const std::size_t n = q.dim();
    if (n % 2) return false;
    const std::vector<mpq_class> a = rational_diagonal(q);
    for (const auto& x : a)
        if (sgn(x) == 0) throw Error(ErrorKind::SingularForm, "singular form");
    mpq_class d = (n / 2) % 2 ? -1 : 1;
    for (const auto& x : a) d *= x;
    if (local::squarefree_part(d) != 1) return false;
    for (const auto& v : local::relevant_places(a))
        if (local::witt_index_at(a, v) * 2 != n) return false;
    return true;
}

}  // namespace

bool is_hyperbolic(const QuadraticForm& q, const OracleOptions& opt) {
    if (!q.is_nonsingular()) throw Error(ErrorKind::SingularForm, "hyperbolicity of a singular form");
    if (q.dim() % 2) return false;
    if (q.base().is_rationals()) return rational_hyperbolic(q);
    return witt_decompose(q, opt).witt_index * 2 == q.dim();
}

bool isometric(const QuadraticForm& q1, const QuadraticForm& q2, const OracleOptions& opt) {
    if (!(q1.base() == q2.base())) throw Error(ErrorKind::FieldMismatch, "isometry across fields");
    if (q1.dim() != q2.dim()) return false;
    if (q1 == q2) return true;
    return is_hyperbolic(orthogonal_sum(q1, negate(q2)), opt);
}

std::optional<bool> in_artin_schreier_image(const Elem& c) {
    const Field& f = c.field();
    if (f.characteristic() != 2) throw Error(ErrorKind::UnsupportedField, "Artin-Schreier image is for characteristic 2");
    if (f.is_finite()) return absolute_trace(c) == 0;
    if (!f.is_function_field()) return std::nullopt;
    const RatFunc& r = c.ratfunc();
    if (!r.den.is_one()) return std::nullopt;
    // t^(2k) = (t^k)^2 is congruent to t^k modulo the image; reduce to odd degrees.
    std::vector<std::uint32_t> coeffs = r.num.coeffs();
    for (std::size_t d = coeffs.size(); d-- > 1;) {
        if (d % 2 == 0 && coeffs[d]) {
            coeffs[d] = 0;
            coeffs[d / 2] ^= 1u;
        }
    }
    for (auto x : coeffs)
        if (x) return false;
    return true;
}

FormInvariants invariants(const QuadraticForm& q) {
    if (!q.is_nonsingular()) throw Error(ErrorKind::SingularForm, "invariants of a singular form");
    const Field& f = q.base();
    const std::size_t n = q.dim();
    FormInvariants inv;
    inv.dim = n;
    if (f.characteristic() == 2) {
        Elem arf = f.zero();
        for (const auto& [a, b] : symplectic_decompose(q).binaries) arf += a * b;
        inv.arf = arf;
        inv.disc_or_arf_trivial = in_artin_schreier_image(arf);
        return inv;
    }
    const Diagonalization d = diagonalize(q);
    Elem disc = ((n * (n - 1) / 2) % 2) ? -f.one() : f.one();
    for (const auto& e : d.entries) disc *= e;
    if (f.is_rationals()) {
        const mpz_class sf = n == 0 ? mpz_class(1) : local::squarefree_part(disc.rational());
        inv.signed_discriminant = f.from_rational(mpq_class(sf));
        inv.disc_or_arf_trivial = sf == 1;
        std::vector<mpq_class> a;
        std::size_t pos = 0;
        for (const auto& e : d.entries) {
            a.push_back(e.rational());
            if (sgn(e.rational()) > 0) ++pos;
        }
        inv.signature = std::make_pair(pos, n - pos);
        for (const auto& v : local::relevant_places(a)) inv.hasse.emplace_back(v, local::invariants_at(a, v).hasse);
    } else {
        inv.signed_discriminant = disc;
        inv.disc_or_arf_trivial = disc.is_square();
    }
    return inv;
}

}  // namespace qfalg
