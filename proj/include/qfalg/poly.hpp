#pragma once

// Dense univariate polynomials over a prime field F_p.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace qfalg {

class PolyFp {
public:
    PolyFp() = default;
    PolyFp(std::uint32_t p, std::vector<std::uint32_t> coeffs);

    static PolyFp constant(std::uint32_t p, std::int64_t c);
    static PolyFp monomial(std::uint32_t p, std::uint32_t c, std::size_t degree);

    std::uint32_t prime() const { return p_; }
    // -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
    std::uint32_t coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
    std::uint32_t lead() const { return c_.empty() ? 0 : c_.back(); }
    const std::vector<std::uint32_t>& coeffs() const { return c_; }

    PolyFp operator+(const PolyFp& o) const;
    PolyFp operator-(const PolyFp& o) const;
    PolyFp operator-() const;
    PolyFp operator*(const PolyFp& o) const;
    PolyFp scaled(std::uint32_t c) const;
    PolyFp monic() const;

    // Euclidean division; throws on a zero divisor.
    std::pair<PolyFp, PolyFp> divmod(const PolyFp& d) const;
    PolyFp operator%(const PolyFp& d) const { return divmod(d).second; }
    PolyFp operator/(const PolyFp& d) const { return divmod(d).first; }

    std::uint32_t eval(std::uint32_t x) const;

    bool operator==(const PolyFp& o) const { return p_ == o.p_ && c_ == o.c_; }
    bool operator<(const PolyFp& o) const;

    std::string to_string(char var = 't') const;

private:
    void trim();

    std::uint32_t p_ = 2;
    std::vector<std::uint32_t> c_;
};

std::uint32_t mod_inv(std::uint32_t a, std::uint32_t p);
std::uint32_t mod_pow(std::uint64_t a, std::uint64_t e, std::uint32_t p);
bool is_prime_u32(std::uint32_t n);

PolyFp gcd(PolyFp a, PolyFp b);
PolyFp pow_mod(PolyFp base, std::uint64_t e, const PolyFp& mod);
bool is_irreducible(const PolyFp& f);
// Smallest (in lexicographic order of coefficients) monic irreducible polynomial of
// the given degree whose root generates the multiplicative group.
PolyFp conway_like_modulus(std::uint32_t p, std::uint32_t k);
// All monic irreducible polynomials of the given degree, in increasing order.
std::vector<PolyFp> monic_irreducibles(std::uint32_t p, std::uint32_t degree);

// Square root in F_p[t] if f is a perfect square, otherwise empty optional signalled by false.
bool poly_sqrt(const PolyFp& f, PolyFp& root);

}  // namespace qfalg
