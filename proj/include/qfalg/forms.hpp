#pragma once

// Symmetric bilinear forms and quadratic forms over a base field.
//
// Quadratic forms are stored as an upper-triangular coefficient matrix M with
// q(x) = x^T M x, so the polar form has matrix M + M^T in every characteristic.

#include <functional>
#include <string>
#include <vector>

#include "qfalg/matrix.hpp"

namespace qfalg {

class BilinearForm {
public:
    // gram must be symmetric.
    BilinearForm(Field base, Matrix gram);

    const Field& base() const { return base_; }
    const Matrix& gram() const { return gram_; }
    std::size_t dim() const { return gram_.rows(); }

    Elem eval(const Vec& x, const Vec& y) const;
    bool is_alternating() const;
    bool is_nondegenerate() const { return nondegenerate_; }
    // Diagonal entries when the Gram matrix is diagonal.
    std::optional<std::vector<Elem>> diagonal_entries() const;

    // bdiag(a,b)@F or bmat(r1;r2)@F.
    std::string to_string() const;

    bool operator==(const BilinearForm& o) const { return base_ == o.base_ && gram_ == o.gram_; }

private:
    Field base_;
    Matrix gram_;
    bool nondegenerate_;
};

class QuadraticForm {
public:
    // coeffs is reduced to upper-triangular form (M_ij + M_ji moved to i < j).
    QuadraticForm(Field base, Matrix coeffs);

    const Field& base() const { return base_; }
    const Matrix& coeffs() const { return m_; }
    std::size_t dim() const { return m_.rows(); }

    Elem eval(const Vec& x) const;
    Elem polar(const Vec& x, const Vec& y) const;
    Matrix polar_matrix() const;
    bool is_nonsingular() const;

    // Form on the span of the given vectors, in that basis.
    QuadraticForm restrict_to(const std::vector<Vec>& basis) const;
    QuadraticForm map_coefficients(const Field& target, const std::function<Elem(const Elem&)>& f) const;

    // Entries when the coefficient matrix is diagonal.
    std::optional<std::vector<Elem>> diagonal_entries() const;

    std::string to_string() const;

    bool operator==(const QuadraticForm& o) const { return base_ == o.base_ && m_ == o.m_; }

private:
    Field base_;
    Matrix m_;
};

// Constructors.
BilinearForm diagonal_bilinear(const Field& base, const std::vector<Elem>& entries);
BilinearForm bilinear_pfister(const Field& base, const std::vector<Elem>& slots);
// sum a_i x_i^2
QuadraticForm diagonal_quadratic(const Field& base, const std::vector<Elem>& entries);
// a (x^2 + x y + c y^2)
QuadraticForm binary_quadratic(const Field& base, const Elem& a, const Elem& c);
// <<slots>> (x) [1, a]: binary x^2 + xy + a y^2 tensored with the bilinear Pfister form on slots.
QuadraticForm quadratic_pfister(const Field& base, const Elem& a, const std::vector<Elem>& slots);
// x y
QuadraticForm hyperbolic_plane(const Field& base);
QuadraticForm hyperbolic_form(const Field& base, std::size_t planes);

QuadraticForm tensor(const BilinearForm& b, const QuadraticForm& q);
BilinearForm tensor_bb(const BilinearForm& b1, const BilinearForm& b2);
QuadraticForm orthogonal_sum(const QuadraticForm& q1, const QuadraticForm& q2);
BilinearForm orthogonal_sum(const BilinearForm& b1, const BilinearForm& b2);
QuadraticForm scale(const Elem& c, const QuadraticForm& q);
BilinearForm scale(const Elem& c, const BilinearForm& b);
// The quadratic form x -> b(x, x).
QuadraticForm diagonal_part(const BilinearForm& b);

// Orthogonal basis for a quadratic form in characteristic != 2:
// q(P y) = sum entries_i y_i^2 with P's columns the basis.
struct Diagonalization {
    std::vector<Elem> entries;
    std::vector<Vec> basis;
};
Diagonalization diagonalize(const QuadraticForm& q);

// Char-free decomposition of a symmetric bilinear form: anisotropic-diagonal
// vectors are split off while some b(x,x) != 0; a remaining alternating part is
// returned as hyperbolic pairs (e, f) with b(e, f) = 1.
struct BilinearDecomposition {
    std::vector<Elem> diagonal;
    std::vector<Vec> diagonal_basis;
    std::vector<std::pair<Vec, Vec>> alternating_pairs;
    bool diagonalizable() const { return alternating_pairs.empty(); }
};
BilinearDecomposition decompose_bilinear(const BilinearForm& b);

// Symplectic decomposition of a nonsingular quadratic form in characteristic 2
// into binaries a x^2 + xy + b y^2, returned as (a, b) pairs with their basis.
struct SymplecticDecomposition {
    std::vector<std::pair<Elem, Elem>> binaries;
    std::vector<std::pair<Vec, Vec>> basis;
};
SymplecticDecomposition symplectic_decompose(const QuadraticForm& q);

}  // namespace qfalg
