#pragma once

// Quaternion algebras (1, u, v, w = uv) with u^2 = u + a, v^2 = b, vu = v - w, and
// quadratic etale algebras (1, u) with u^2 = u + a, both with their canonical
// involution. The base field itself (identity involution) is the degenerate case.

#include <memory>
#include <string>
#include <vector>

#include "qfalg/isotropy.hpp"

namespace qfalg {

enum class AlgebraKind { Base, Etale, Quaternion };

class AlgElem;

class Algebra {
public:
    static Algebra base(const Field& f);
    // Throws DegenerateParameters when 1 + 4a = 0 or b = 0.
    static Algebra quaternion(const Field& f, const Elem& a, const Elem& b);
    static Algebra etale(const Field& f, const Elem& a);
    // F x F presented with u = (0, 1), i.e. a = 0.
    static Algebra split_etale(const Field& f);

    AlgebraKind kind() const;
    const Field& field() const;
    std::size_t dim() const;
    // Structure parameters; b is zero for etale and base algebras.
    const Elem& a() const;
    const Elem& b() const;
    // Created by split_etale().
    bool is_split_pair() const;

    // Coordinates of e_i * e_j in the canonical basis.
    const Vec& product(std::size_t i, std::size_t j) const;

    AlgElem element(Vec coords) const;
    AlgElem scalar(const Elem& c) const;
    AlgElem zero() const;
    AlgElem one() const;
    AlgElem basis(std::size_t i) const;

    // quat(a=..,b=..)@F, etale(a=..)@F, etale(split)@F, or F.
    std::string literal() const;
    std::string basis_name(std::size_t i) const;

    bool operator==(const Algebra& o) const;
    bool operator!=(const Algebra& o) const { return !(*this == o); }

    struct Data;

private:
    explicit Algebra(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
    std::shared_ptr<const Data> d_;
};

class AlgElem {
public:
    AlgElem(Algebra owner, Vec coords);

    const Algebra& owner() const { return owner_; }
    const Vec& coords() const { return c_; }

    AlgElem operator+(const AlgElem& o) const;
    AlgElem operator-(const AlgElem& o) const;
    AlgElem operator-() const;
    AlgElem operator*(const AlgElem& o) const;
    AlgElem scaled(const Elem& c) const;

    bool operator==(const AlgElem& o) const;
    bool operator!=(const AlgElem& o) const { return !(*this == o); }

    bool is_zero() const;
    // Lies in F * 1.
    bool is_scalar() const;
    // The F-coefficient of 1 (requires is_scalar() for a meaningful value).
    const Elem& scalar_part() const { return c_[0]; }

    std::string to_string() const;

private:
    void check_owner(const AlgElem& o) const;
    Algebra owner_;
    Vec c_;
};

AlgElem mul(const AlgElem& x, const AlgElem& y);
Elem trd(const AlgElem& x);
// Trd(x) - x for quaternion and etale algebras; identity on the base field.
AlgElem canonical_involution(const AlgElem& x);
// canonical_involution(x) * x, checked to lie in F.
Elem nrd(const AlgElem& x);

Algebra make_quaternion(const Field& f, const Elem& a, const Elem& b);
Algebra make_etale(const Field& f, const Elem& a);
Algebra make_split_etale(const Field& f);

// x -> nrd(x) on the F-space of the algebra, by polarization of nrd.
QuadraticForm norm_form(const Algebra& A);
bool is_split(const Algebra& A, const OracleOptions& opt = {});
// Quaternions and etale algebras: the norm form is anisotropic. OracleUndecided otherwise.
bool is_division(const Algebra& A, const OracleOptions& opt = {});

}  // namespace qfalg
