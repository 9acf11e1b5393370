#pragma once

// lambda-hermitian forms h(x, y) = sum theta(x_i) g_ij y_j over (D, theta), where D
// is a quaternion algebra or an etale algebra with its canonical involution, or
// the base field with the identity.

#include <optional>
#include <string>
#include <vector>

#include "qfalg/algebra.hpp"
#include "qfalg/witt.hpp"

namespace qfalg {

using AlgVec = std::vector<AlgElem>;

// The involution attached to D: canonical for quaternion/etale, identity for F.
AlgElem theta(const AlgElem& x);

class HermitianForm {
public:
    // Checks gram[j][i] = lambda * theta(gram[i][j]) and lambda^2 = 1.
    HermitianForm(Algebra D, Elem lambda, std::vector<AlgVec> gram);

    const Algebra& algebra() const { return d_; }
    const Elem& lambda() const { return lambda_; }
    std::size_t dim() const { return gram_.size(); }
    const AlgElem& entry(std::size_t i, std::size_t j) const { return gram_[i][j]; }
    const std::vector<AlgVec>& gram() const { return gram_; }

    AlgElem eval(const AlgVec& x, const AlgVec& y) const;
    bool is_even() const { return even_; }
    bool is_nondegenerate() const { return nondegenerate_; }

    std::string to_string() const;
    bool operator==(const HermitianForm& o) const;

private:
    Algebra d_;
    Elem lambda_;
    std::vector<AlgVec> gram_;
    bool even_ = false;
    bool nondegenerate_ = false;
};

// Symd_lambda(D, theta) = {a + lambda theta(a)} membership.
bool in_symd(const AlgElem& x, const Elem& lambda);

HermitianForm unit_form(const Algebra& D);
HermitianForm from_diagonal(const Algebra& D, const std::vector<Elem>& entries);
HermitianForm tensor_bh(const BilinearForm& phi, const HermitianForm& h);
HermitianForm hyperbolic_h(const Algebra& D, std::size_t half_dim, const Elem& lambda);
HermitianForm hyperbolic_h(const Algebra& D, std::size_t half_dim);
HermitianForm orthogonal_sum(const HermitianForm& h1, const HermitianForm& h2);
HermitianForm scale(const Elem& c, const HermitianForm& h);

struct DiagonalProfile {
    std::vector<Elem> entries;
    // Orthogonal D-basis with h(v_i, v_i) = entries_i.
    std::vector<AlgVec> basis;
};

// Orthogonal basis by Gram-Schmidt over D. Throws NotEven / Degenerate.
DiagonalProfile diagonalize_even(const HermitianForm& h);

// q_h(x) = h(x, x) on the F-space D^n, coordinates ordered (vector index, D-basis index).
QuadraticForm trace_form(const HermitianForm& h);

// F-coordinates <-> D-vectors for the ordering used by trace_form.
AlgVec to_algvec(const Algebra& D, const Vec& coords);
Vec to_coords(const AlgVec& x);

struct HermitianIsotropy {
    IsotropyResult::Status status = IsotropyResult::Status::Undecided;
    // Verified h(x, x) = 0 when isotropic.
    std::optional<AlgVec> witness;
    IsotropyResult trace_result;
};

HermitianIsotropy isotropy_h(const HermitianForm& h, const OracleOptions& opt = {});
bool is_isotropic_h(const HermitianForm& h, const OracleOptions& opt = {});
bool is_hyperbolic_h(const HermitianForm& h, const OracleOptions& opt = {});
// F-basis of a totally isotropic subspace of q_h of half dimension, re-verified; empty if none.
std::optional<std::vector<Vec>> hyperbolic_flag_h(const HermitianForm& h, const OracleOptions& opt = {});

// Trace-form criterion; SignatureMismatch when D or lambda differ.
bool isometric_h(const HermitianForm& h1, const HermitianForm& h2, const OracleOptions& opt = {});
// h1 + (-h2) hyperbolic.
bool isometric_h_by_sum(const HermitianForm& h1, const HermitianForm& h2, const OracleOptions& opt = {});

}  // namespace qfalg
