#pragma once

// Witt decomposition, hyperbolicity, isometry, and classical invariants.

#include <optional>
#include <utility>
#include <vector>

#include "qfalg/isotropy.hpp"

namespace qfalg {

struct WittDecomposition {
    std::size_t witt_index = 0;
    QuadraticForm kernel;
    // Columns x_1, y_1, ..., x_k, y_k, then a basis of the kernel space; q restricted
    // to these columns equals hyperbolic_form(k) + kernel exactly.
    Matrix transform;
    // Oracle verdict on the kernel (Anisotropic with certificate when complete).
    IsotropyResult kernel_certificate;
};

// Thrown when the oracle cannot decide; carries the planes split off so far.
class WittUndecided : public Error {
public:
    WittUndecided(const std::string& what, WittDecomposition partial)
        : Error(ErrorKind::OracleUndecided, what), partial_(std::move(partial)) {}
    const WittDecomposition& partial() const { return partial_; }

private:
    WittDecomposition partial_;
};

WittDecomposition witt_decompose(const QuadraticForm& q, const OracleOptions& opt = {});

// Shortcuts through local invariants over QQ; decomposition elsewhere.
bool is_hyperbolic(const QuadraticForm& q, const OracleOptions& opt = {});
bool isometric(const QuadraticForm& q1, const QuadraticForm& q2, const OracleOptions& opt = {});
// -q (equals q in characteristic 2).
QuadraticForm negate(const QuadraticForm& q);

// Diagonal entries of a form over QQ as rationals (via an orthogonal basis).
std::vector<mpq_class> rational_diagonal(const QuadraticForm& q);

struct FormInvariants {
    std::size_t dim = 0;
    // Characteristic != 2: (-1)^(n(n-1)/2) * prod d_i for q = sum d_i x_i^2
    // (reduced to a square-free integer over QQ).
    std::optional<Elem> signed_discriminant;
    // Characteristic 2: sum a_i b_i over a symplectic decomposition.
    std::optional<Elem> arf;
    // Whether the discriminant/Arf class is trivial; empty when undecidable here.
    std::optional<bool> disc_or_arf_trivial;
    // QQ only: Hasse symbol at each relevant place, and (positive, negative) counts.
    std::vector<std::pair<Place, int>> hasse;
    std::optional<std::pair<std::size_t, std::size_t>> signature;
};

FormInvariants invariants(const QuadraticForm& q);

// Membership of c in {x^2 + x} for finite fields of characteristic 2 and F_2(t)
// (polynomial c only); empty when undecidable.
std::optional<bool> in_artin_schreier_image(const Elem& c);

}  // namespace qfalg
