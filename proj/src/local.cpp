#include "qfalg/local.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace qfalg::local {

namespace {

mpq_class integral(const mpq_class& a) {
    // a * den^2 = num * den lies in the same square class and is an integer.
    return mpq_class(a.get_num() * a.get_den());
}

int legendre(const mpz_class& u, const mpz_class& p) {
    mpz_class r = u % p;
    if (r < 0) r += p;
    return mpz_legendre(r.get_mpz_t(), p.get_mpz_t());
}

int mod8(const mpz_class& u) {
    mpz_class r = u % 8;
    if (r < 0) r += 8;
    return static_cast<int>(r.get_si());
}

std::mutex& factor_mutex() {
    static std::mutex m;
    return m;
}

std::map<mpz_class, std::vector<mpz_class>>& factor_cache() {
    static std::map<mpz_class, std::vector<mpz_class>> c;
    return c;
}

}  // namespace

std::vector<mpz_class> prime_factors(const mpz_class& n0) {
    mpz_class n = abs(n0);
    if (n == 0) throw Error(ErrorKind::InvalidArgument, "prime factors of zero");
    {
        std::lock_guard<std::mutex> lock(factor_mutex());
        auto it = factor_cache().find(n);
        if (it != factor_cache().end()) return it->second;
    }
    const mpz_class key = n;
    std::vector<mpz_class> out;
    for (unsigned long d = 2; d <= 2000000UL; d += (d == 2 ? 1 : 2)) {
        if (mpz_class(d) * d > n) break;
        if (mpz_divisible_ui_p(n.get_mpz_t(), d)) {
            out.emplace_back(static_cast<unsigned long>(d));
            while (mpz_divisible_ui_p(n.get_mpz_t(), d)) n /= d;
        }
    }
    if (n > 1) {
        if (mpz_probab_prime_p(n.get_mpz_t(), 30) == 0)
            throw Error(ErrorKind::OracleUndecided, "integer too large to factor: " + n.get_str());
        out.push_back(n);
    }
    std::lock_guard<std::mutex> lock(factor_mutex());
    factor_cache().emplace(key, out);
    return out;
}

int valuation(const mpz_class& n, const mpz_class& p) {
    if (n == 0) throw Error(ErrorKind::InvalidArgument, "valuation of zero");
    mpz_class m = n;
    int v = 0;
    while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
        m /= p;
        ++v;
    }
    return v;
}

int hilbert_symbol(const mpq_class& a0, const mpq_class& b0, const Place& v) {
    if (sgn(a0) == 0 || sgn(b0) == 0) throw Error(ErrorKind::InvalidArgument, "Hilbert symbol of zero");
    if (v.kind == Place::Kind::Real) return (sgn(a0) < 0 && sgn(b0) < 0) ? -1 : 1;
    if (v.kind != Place::Kind::Prime) throw Error(ErrorKind::UnsupportedField, "Hilbert symbol needs a place of Q");
    const mpz_class a = integral(a0).get_num();
    const mpz_class b = integral(b0).get_num();
    const mpz_class p(v.prime);
    const int alpha = valuation(a, p), beta = valuation(b, p);
    mpz_class u = a, w = b;
    for (int i = 0; i < alpha; ++i) u /= p;
    for (int i = 0; i < beta; ++i) w /= p;
    if (v.prime != 2) {
        int r = 1;
        if ((alpha * beta) % 2 && ((v.prime - 1) / 2) % 2) r = -r;
        if (beta % 2) r *= legendre(u, p);
        if (alpha % 2) r *= legendre(w, p);
        return r;
    }
    const int u8 = mod8(u), w8 = mod8(w);
    const int eps_u = ((u8 - 1) / 2) % 2, eps_w = ((w8 - 1) / 2) % 2;
    const int om_u = ((u8 * u8 - 1) / 8) % 2, om_w = ((w8 * w8 - 1) / 8) % 2;
    const int e = eps_u * eps_w + alpha * om_w + beta * om_u;
    return e % 2 ? -1 : 1;
}

int hilbert_symbol(const Elem& a, const Elem& b, const Place& v) {
    if (!a.field().is_rationals() || !b.field().is_rationals())
        throw Error(ErrorKind::UnsupportedField, "Hilbert symbol is implemented over QQ only");
    return hilbert_symbol(a.rational(), b.rational(), v);
}

bool is_local_square(const mpq_class& a0, const Place& v) {
    if (sgn(a0) == 0) return true;
    if (v.kind == Place::Kind::Real) return sgn(a0) > 0;
    const mpz_class a = integral(a0).get_num();
    const mpz_class p(v.prime);
    const int alpha = valuation(a, p);
    if (alpha % 2) return false;
    mpz_class u = a;
    for (int i = 0; i < alpha; ++i) u /= p;
    if (v.prime == 2) return mod8(u) == 1;
    return legendre(u, p) == 1;
}

std::vector<std::uint32_t> relevant_primes(const std::vector<mpq_class>& coeffs) {
    std::vector<std::uint32_t> ps{2};
    for (const auto& c : coeffs) {
        for (const mpz_class* z : {&c.get_num(), &c.get_den()}) {
            if (*z == 0) continue;
            for (const auto& f : prime_factors(*z)) {
                if (!f.fits_ulong_p() || f.get_ui() > 0xffffffffUL)
                    throw Error(ErrorKind::OracleUndecided, "prime exceeds supported range");
                ps.push_back(static_cast<std::uint32_t>(f.get_ui()));
            }
        }
    }
    std::sort(ps.begin(), ps.end());
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
    return ps;
}

std::vector<Place> relevant_places(const std::vector<mpq_class>& coeffs) {
    std::vector<Place> out{Place::real()};
    for (auto p : relevant_primes(coeffs)) out.push_back(Place::at_prime(p));
    return out;
}

Invariants invariants_at(const std::vector<mpq_class>& diag, const Place& v) {
    Invariants inv;
    inv.dim = diag.size();
    for (std::size_t i = 0; i < diag.size(); ++i) {
        for (std::size_t j = i + 1; j < diag.size(); ++j) inv.hasse *= hilbert_symbol(diag[i], diag[j], v);
        inv.det *= diag[i];
    }
    return inv;
}

bool isotropic_from_invariants(const Invariants& inv, const Place& v) {
    switch (inv.dim) {
        case 0:
        case 1: return false;
        case 2: return is_local_square(-inv.det, v);
        case 3: return inv.hasse == hilbert_symbol(mpq_class(-1), mpq_class(-inv.det), v);
        case 4:
            return !is_local_square(inv.det, v) || inv.hasse == hilbert_symbol(mpq_class(-1), mpq_class(-1), v);
        default: return true;
    }
}

std::size_t witt_index_at(const std::vector<mpq_class>& diag, const Place& v) {
    if (v.kind == Place::Kind::Real) {
        std::size_t pos = 0, neg = 0;
        for (const auto& a : diag) (sgn(a) > 0 ? pos : neg)++;
        return std::min(pos, neg);
    }
    Invariants inv = invariants_at(diag, v);
    std::size_t index = 0;
    while (isotropic_from_invariants(inv, v)) {
        // q = H + q'  =>  d(q') = -d(q),  hasse(q) = hasse(q') * (d(q'), -1).
        Invariants next;
        next.dim = inv.dim - 2;
        next.det = -inv.det;
        next.hasse = inv.hasse * hilbert_symbol(next.det, mpq_class(-1), v);
        inv = next;
        ++index;
    }
    return index;
}

bool isotropic_at(const std::vector<mpq_class>& diag, const Place& v) { return witt_index_at(diag, v) > 0; }

mpz_class squarefree_part(const mpq_class& a0) {
    if (sgn(a0) == 0) throw Error(ErrorKind::InvalidArgument, "square class of zero");
    mpz_class n = integral(a0).get_num();
    mpz_class out = sgn(n) < 0 ? -1 : 1;
    for (const auto& p : prime_factors(n))
        if (valuation(n, p) % 2) out *= p;
    return out;
}

LocalShape shape_at(const std::vector<mpq_class>& diag, const Place& v) {
    const std::size_t idx = witt_index_at(diag, v);
    if (idx == 0) return LocalShape::Anisotropic;
    if (2 * idx == diag.size()) return LocalShape::Hyperbolic;
    return LocalShape::IsotropicNonHyperbolic;
}

const char* to_string(LocalShape s) {
    switch (s) {
        case LocalShape::Anisotropic: return "anisotropic";
        case LocalShape::Hyperbolic: return "hyperbolic";
        case LocalShape::IsotropicNonHyperbolic: return "isotropic_non_hyperbolic";
    }
    return "?";
}

}  // namespace qfalg::local
