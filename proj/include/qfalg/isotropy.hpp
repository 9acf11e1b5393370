#pragma once

// Per-field isotropy decision: a verified witness, a certified anisotropy
// verdict, or Undecided when no certificate applies within the search bounds.

#include <cstdint>
#include <optional>
#include <string>

#include "qfalg/forms.hpp"

namespace qfalg {

struct OracleOptions {
    // Height bound for rational witness searches.
    int search_height = 50;
    // Coordinate-polynomial degree bound for function-field searches.
    int search_degree = 2;
    std::uint64_t seed = 0x5eed;
    // Maximum number of candidate vectors examined by any single search.
    std::uint64_t budget = 400000;
};

enum class CertificateKind { Exhausted, LocalObstruction, DefiniteSignature, ResidueForms, DegreeBound };

const char* to_string(CertificateKind k);

struct Certificate {
    CertificateKind kind = CertificateKind::Exhausted;
    // LocalObstruction / ResidueForms: the place where the form is anisotropic.
    std::optional<Place> place;
    // DegreeBound: coordinate degrees searched.
    int degree_bound = -1;
    std::string detail;
};

struct IsotropyResult {
    enum class Status { Witness, Anisotropic, Undecided };
    Status status = Status::Undecided;
    Vec witness;
    Certificate certificate;
    std::string reason;

    bool isotropic() const { return status == Status::Witness; }
    bool anisotropic() const { return status == Status::Anisotropic; }
    bool undecided() const { return status == Status::Undecided; }
};

const char* to_string(IsotropyResult::Status s);

// Requires q nonsingular (SingularForm otherwise). Witnesses are re-verified.
IsotropyResult isotropy_oracle(const QuadraticForm& q, const OracleOptions& opt = {});

namespace detail {
// Rational witness for sum a_i y_i^2 = 0 over square-free integers a_i.
std::optional<std::vector<mpq_class>> rational_witness(const std::vector<mpz_class>& a, const OracleOptions& opt);
// Ternary a x^2 + b y^2 + c z^2 = 0 by bounded search.
std::optional<std::vector<mpz_class>> legendre_solve(const mpz_class& a, const mpz_class& b, const mpz_class& c,
                                                     const OracleOptions& opt);
// Every relevant place of Q sees an isotropic form.
bool locally_isotropic_everywhere(const std::vector<mpz_class>& a);

// Root of A z^2 + B z + C in a finite field, if any.
std::optional<Elem> finite_quadratic_root(const Elem& A, const Elem& B, const Elem& C);

// Valuation and residue of a nonzero element of F_p(t) at a place; the residue
// lives in the residue field (GF(p^deg) for a polynomial place, F_p at infinity).
int function_valuation(const Elem& x, const Place& v);
Field residue_field(const Place& v, std::uint32_t p);
Elem unit_residue(const Elem& x, const Place& v, const Field& residue);
// Monic irreducible factors found by trial division up to degree 3; a cofactor
// of degree <= 7 with no such factor is irreducible and is included too.
std::vector<PolyFp> small_irreducible_factors(const PolyFp& f);
}  // namespace detail

}  // namespace qfalg
