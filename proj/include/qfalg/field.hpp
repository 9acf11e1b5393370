#pragma once

// Exact arithmetic over the supported base fields: GF(p^k), the rationals, and
// rational function fields F_p(t). Elements are immutable values that carry a
// handle to their field; every operation is exact.

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "qfalg/error.hpp"
#include "qfalg/poly.hpp"

namespace qfalg {

enum class FieldKind { Finite, Rationals, RationalFunctions };

namespace detail {
struct FieldData;
}

class Elem;

class Field {
public:
    // GF(p^k) presented as F_p[t]/(m) with a primitive modulus m chosen canonically.
    static Field finite(std::uint32_t p, std::uint32_t k = 1);
    // GF(p^deg m) presented with an explicit monic irreducible modulus.
    static Field finite_with_modulus(const PolyFp& modulus);
    static Field rationals();
    static Field rational_functions(std::uint32_t p);

    FieldKind kind() const;
    std::uint32_t characteristic() const;
    // p^k for finite fields, empty for infinite ones.
    std::optional<std::uint64_t> cardinality() const;
    // Extension degree k of GF(p^k) over F_p; 1 otherwise.
    std::uint32_t degree() const;
    const PolyFp& modulus() const;

    bool is_finite() const { return kind() == FieldKind::Finite; }
    bool is_rationals() const { return kind() == FieldKind::Rationals; }
    bool is_function_field() const { return kind() == FieldKind::RationalFunctions; }

    Elem zero() const;
    Elem one() const;
    Elem from_int(std::int64_t n) const;
    Elem from_rational(const mpq_class& q) const;
    // Finite fields only: element with base-p digit encoding `index`.
    Elem from_index(std::uint64_t index) const;
    // The generator t (root of the modulus, or the transcendental of F_p(t)).
    Elem gen() const;
    Elem from_ratfunc(const PolyFp& num, const PolyFp& den) const;

    // All elements in index order (finite fields only).
    std::vector<Elem> elements() const;
    // Deterministic bounded sampling. For Q: num/den with |num|,|den| <= height.
    // For F_p(t): polynomial ratios with degrees <= height.
    Elem sample(std::mt19937_64& rng, int height) const;
    Elem sample_nonzero(std::mt19937_64& rng, int height) const;

    bool operator==(const Field& o) const;
    bool operator!=(const Field& o) const { return !(*this == o); }

    // CLI literal: GF(q), QQ or Fp_t(p).
    std::string literal() const;

    const detail::FieldData& data() const { return *d_; }

private:
    explicit Field(std::shared_ptr<const detail::FieldData> d) : d_(std::move(d)) {}
    std::shared_ptr<const detail::FieldData> d_;
    friend class Elem;
};

// Reduced rational function num/den over F_p with monic den.
struct RatFunc {
    PolyFp num;
    PolyFp den;
    bool operator==(const RatFunc& o) const { return num == o.num && den == o.den; }
};

class Elem {
public:
    using Payload = std::variant<std::uint32_t, mpq_class, RatFunc>;

    Elem(Field f, Payload v);

    const Field& field() const { return f_; }
    const Payload& payload() const { return v_; }

    std::uint32_t index() const { return std::get<std::uint32_t>(v_); }
    const mpq_class& rational() const { return std::get<mpq_class>(v_); }
    const RatFunc& ratfunc() const { return std::get<RatFunc>(v_); }

    bool is_zero() const;
    bool is_one() const;

    Elem operator+(const Elem& o) const;
    Elem operator-(const Elem& o) const;
    Elem operator*(const Elem& o) const;
    Elem operator/(const Elem& o) const;
    Elem operator-() const;
    Elem& operator+=(const Elem& o) { return *this = *this + o; }
    Elem& operator-=(const Elem& o) { return *this = *this - o; }
    Elem& operator*=(const Elem& o) { return *this = *this * o; }

    Elem inv() const;
    Elem pow(std::int64_t e) const;

    bool operator==(const Elem& o) const;
    bool operator!=(const Elem& o) const { return !(*this == o); }

    bool is_square() const;
    std::optional<Elem> sqrt() const;

    std::string to_string() const;

private:
    void check_same(const Elem& o) const;
    Field f_;
    Payload v_;
};

// A place of Q or of F_p(t).
struct Place {
    enum class Kind { Real, Prime, Poly, Infinity };
    Kind kind = Kind::Real;
    std::uint32_t prime = 0;
    PolyFp poly;

    static Place real() { return {}; }
    static Place at_prime(std::uint32_t p);
    static Place at_poly(const PolyFp& f);
    static Place infinity(std::uint32_t p);

    std::string to_string() const;
    bool operator==(const Place& o) const;
};

// Embedding of GF(q) into GF(q^k) as a lookup table indexed by small-field index.
std::vector<Elem> finite_field_embedding(const Field& small, const Field& big);
Elem map_element(const Elem& x, const std::vector<Elem>& embedding);

// Absolute trace GF(2^k) -> F_2 (0 or 1); requires characteristic 2 finite field.
int absolute_trace(const Elem& x);

}  // namespace qfalg
