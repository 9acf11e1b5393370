#pragma once

// Local invariants of diagonal quadratic forms over the completions of Q:
// Hilbert symbols, local square classes, Hasse invariants, and the local Witt
// index obtained by peeling off hyperbolic planes at the invariant level.

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "qfalg/field.hpp"

namespace qfalg::local {

// Prime factors of |n| (n != 0), ascending.
std::vector<mpz_class> prime_factors(const mpz_class& n);
int valuation(const mpz_class& n, const mpz_class& p);

// Hilbert symbol (a,b)_v for nonzero rationals; v is Real or Prime.
int hilbert_symbol(const mpq_class& a, const mpq_class& b, const Place& v);
// Elem overload; throws UnsupportedField unless both lie in Q.
int hilbert_symbol(const Elem& a, const Elem& b, const Place& v);

bool is_local_square(const mpq_class& a, const Place& v);

// {2} together with every prime dividing a numerator or denominator.
std::vector<std::uint32_t> relevant_primes(const std::vector<mpq_class>& coeffs);
// Real place followed by Prime(p) for every relevant prime.
std::vector<Place> relevant_places(const std::vector<mpq_class>& coeffs);

// Invariant triple of a diagonal form at a finite place: dimension, determinant
// and Hasse invariant prod_{i<j} (a_i, a_j)_p.
struct Invariants {
    std::size_t dim = 0;
    mpq_class det = 1;
    int hasse = 1;
};

Invariants invariants_at(const std::vector<mpq_class>& diag, const Place& v);
bool isotropic_from_invariants(const Invariants& inv, const Place& v);

// Witt index of <diag> over the completion at v (Real: min of the signature parts).
std::size_t witt_index_at(const std::vector<mpq_class>& diag, const Place& v);
bool isotropic_at(const std::vector<mpq_class>& diag, const Place& v);

// Square-free integer representative of the square class of a (a != 0).
mpz_class squarefree_part(const mpq_class& a);

// Certified three-way local verdict.
enum class LocalShape { Anisotropic, Hyperbolic, IsotropicNonHyperbolic };
LocalShape shape_at(const std::vector<mpq_class>& diag, const Place& v);
const char* to_string(LocalShape s);

}  // namespace qfalg::local
