#include "qfalg/poly.hpp"

#include <algorithm>
#include <sstream>

#include "qfalg/error.hpp"

namespace qfalg {

std::uint32_t mod_pow(std::uint64_t a, std::uint64_t e, std::uint32_t p) {
    std::uint64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = r * a % p;
        a = a * a % p;
        e >>= 1;
    }
    return static_cast<std::uint32_t>(r);
}

std::uint32_t mod_inv(std::uint32_t a, std::uint32_t p) {
    if (a % p == 0) throw Error(ErrorKind::DivisionByZero, "inverse of 0 mod " + std::to_string(p));
    return mod_pow(a, p - 2, p);
}

bool is_prime_u32(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

PolyFp::PolyFp(std::uint32_t p, std::vector<std::uint32_t> coeffs) : p_(p), c_(std::move(coeffs)) {
    for (auto& c : c_) c %= p_;
    trim();
}

PolyFp PolyFp::constant(std::uint32_t p, std::int64_t c) {
    std::int64_t r = c % static_cast<std::int64_t>(p);
    if (r < 0) r += p;
    return PolyFp(p, {static_cast<std::uint32_t>(r)});
}

PolyFp PolyFp::monomial(std::uint32_t p, std::uint32_t c, std::size_t degree) {
    std::vector<std::uint32_t> v(degree + 1, 0);
    v[degree] = c;
    return PolyFp(p, std::move(v));
}

void PolyFp::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

PolyFp PolyFp::operator+(const PolyFp& o) const {
    std::vector<std::uint32_t> r(std::max(c_.size(), o.c_.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = (coeff(i) + o.coeff(i)) % p_;
    return PolyFp(p_, std::move(r));
}

PolyFp PolyFp::operator-() const {
    std::vector<std::uint32_t> r(c_.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = (p_ - c_[i]) % p_;
    return PolyFp(p_, std::move(r));
}

PolyFp PolyFp::operator-(const PolyFp& o) const { return *this + (-o); }

PolyFp PolyFp::operator*(const PolyFp& o) const {
    if (is_zero() || o.is_zero()) return PolyFp(p_, {});
    std::vector<std::uint64_t> acc(c_.size() + o.c_.size() - 1, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (!c_[i]) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j) acc[i + j] = (acc[i + j] + std::uint64_t(c_[i]) * o.c_[j]) % p_;
    }
    std::vector<std::uint32_t> r(acc.begin(), acc.end());
    return PolyFp(p_, std::move(r));
}

PolyFp PolyFp::scaled(std::uint32_t c) const {
    std::vector<std::uint32_t> r(c_.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = static_cast<std::uint32_t>(std::uint64_t(c_[i]) * c % p_);
    return PolyFp(p_, std::move(r));
}

PolyFp PolyFp::monic() const {
    if (is_zero()) return *this;
    return scaled(mod_inv(lead(), p_));
}

std::pair<PolyFp, PolyFp> PolyFp::divmod(const PolyFp& d) const {
    if (d.is_zero()) throw Error(ErrorKind::DivisionByZero, "polynomial division by zero");
    if (degree() < d.degree()) return {PolyFp(p_, {}), *this};
    std::vector<std::uint32_t> r = c_;
    std::vector<std::uint32_t> q(c_.size() - d.c_.size() + 1, 0);
    const std::uint32_t inv = mod_inv(d.lead(), p_);
    for (int i = static_cast<int>(r.size()) - 1; i >= d.degree(); --i) {
        if (!r[i]) continue;
        const std::uint32_t f = static_cast<std::uint32_t>(std::uint64_t(r[i]) * inv % p_);
        const std::size_t shift = i - d.degree();
        q[shift] = f;
        for (std::size_t j = 0; j < d.c_.size(); ++j)
            r[shift + j] = static_cast<std::uint32_t>((r[shift + j] + std::uint64_t(p_ - f) * d.c_[j]) % p_);
    }
    return {PolyFp(p_, std::move(q)), PolyFp(p_, std::move(r))};
}

std::uint32_t PolyFp::eval(std::uint32_t x) const {
    std::uint64_t r = 0;
    for (std::size_t i = c_.size(); i-- > 0;) r = (r * x + c_[i]) % p_;
    return static_cast<std::uint32_t>(r);
}

bool PolyFp::operator<(const PolyFp& o) const {
    if (degree() != o.degree()) return degree() < o.degree();
    for (std::size_t i = c_.size(); i-- > 0;)
        if (c_[i] != o.c_[i]) return c_[i] < o.c_[i];
    return false;
}

std::string PolyFp::to_string(char var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
        if (!c_[i]) continue;
        if (!first) os << "+";
        first = false;
        if (i == 0) {
            os << c_[i];
            continue;
        }
        if (c_[i] != 1) os << c_[i] << "*";
        os << var;
        if (i > 1) os << "^" << i;
    }
    return os.str();
}

PolyFp gcd(PolyFp a, PolyFp b) {
    while (!b.is_zero()) {
        PolyFp r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

PolyFp pow_mod(PolyFp base, std::uint64_t e, const PolyFp& mod) {
    PolyFp r = PolyFp::constant(mod.prime(), 1) % mod;
    base = base % mod;
    while (e) {
        if (e & 1) r = (r * base) % mod;
        base = (base * base) % mod;
        e >>= 1;
    }
    return r;
}

namespace {

// t^(p^k) mod f computed by repeated p-th powering.
PolyFp frobenius_power(const PolyFp& f, std::uint32_t k) {
    const std::uint32_t p = f.prime();
    PolyFp x = PolyFp::monomial(p, 1, 1) % f;
    for (std::uint32_t i = 0; i < k; ++i) x = pow_mod(x, p, f);
    return x;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d) continue;
        out.push_back(d);
        while (n % d == 0) n /= d;
    }
    if (n > 1) out.push_back(n);
    return out;
}

}  // namespace

bool is_irreducible(const PolyFp& f) {
    const int n = f.degree();
    if (n <= 0) return false;
    if (n == 1) return true;
    const std::uint32_t p = f.prime();
    const PolyFp t = PolyFp::monomial(p, 1, 1);
    // Rabin's test.
    if (!(frobenius_power(f, n) == t % f)) return false;
    for (auto r : prime_factors(n)) {
        PolyFp g = gcd(f, frobenius_power(f, n / static_cast<std::uint32_t>(r)) - t);
        if (!g.is_one()) return false;
    }
    return true;
}

std::vector<PolyFp> monic_irreducibles(std::uint32_t p, std::uint32_t degree) {
    std::vector<PolyFp> out;
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < degree; ++i) count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
        std::vector<std::uint32_t> c(degree + 1, 0);
        std::uint64_t x = code;
        for (std::uint32_t i = 0; i < degree; ++i) {
            c[i] = x % p;
            x /= p;
        }
        c[degree] = 1;
        PolyFp f(p, std::move(c));
        if (is_irreducible(f)) out.push_back(std::move(f));
    }
    return out;
}

PolyFp conway_like_modulus(std::uint32_t p, std::uint32_t k) {
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < k; ++i) q *= p;
    const auto factors = prime_factors(q - 1);
    for (const auto& f : monic_irreducibles(p, k)) {
        const PolyFp t = PolyFp::monomial(p, 1, 1);
        bool primitive = !(t % f).is_zero();
        for (auto r : factors) {
            if (!primitive) break;
            if (pow_mod(t, (q - 1) / r, f).is_one()) primitive = false;
        }
        if (primitive) return f;
    }
    throw Error(ErrorKind::InternalInconsistency, "no primitive modulus found");
}

bool poly_sqrt(const PolyFp& f, PolyFp& root) {
    const std::uint32_t p = f.prime();
    if (f.is_zero()) {
        root = f;
        return true;
    }
    if (f.degree() % 2) return false;
    const int m = f.degree() / 2;
    if (p == 2) {
        std::vector<std::uint32_t> r(m + 1, 0);
        for (int i = 0; i <= f.degree(); ++i) {
            if (i % 2) {
                if (f.coeff(i)) return false;
            } else {
                r[i / 2] = f.coeff(i);
            }
        }
        root = PolyFp(p, std::move(r));
        return true;
    }
    std::uint32_t lead_root = p;
    for (std::uint32_t x = 1; x < p; ++x)
        if (std::uint64_t(x) * x % p == f.lead()) {
            lead_root = x;
            break;
        }
    if (lead_root == p) return false;
    std::vector<std::uint32_t> r(m + 1, 0);
    r[m] = lead_root;
    const std::uint32_t inv2r = mod_inv(static_cast<std::uint32_t>(2ULL * lead_root % p), p);
    for (int k = m - 1; k >= 0; --k) {
        // coefficient of t^(m+k) in r^2: 2 r_m r_k + sum_{i+j=m+k, k<i,j<m} r_i r_j
        std::uint64_t s = 0;
        for (int i = k + 1; i < m; ++i) {
            const int j = m + k - i;
            if (j > k && j < m) s = (s + std::uint64_t(r[i]) * r[j]) % p;
        }
        const std::uint64_t target = (f.coeff(m + k) + p - s) % p;
        r[k] = static_cast<std::uint32_t>(target * inv2r % p);
    }
    PolyFp cand(p, std::move(r));
    if (!(cand * cand == f)) return false;
    root = std::move(cand);
    return true;
}

}  // namespace qfalg
