#pragma once

// Hand-rolled generators and brute-force oracles shared by the unit tests.
// The oracles only use field arithmetic and form evaluation, never the
// library's decision procedures.

#include <functional>
#include <random>
#include <vector>

#include "qfalg/grammar.hpp"
#include "qfalg/involution.hpp"

namespace qt {

using namespace qfalg;

inline std::mt19937_64 rng_for(std::uint64_t salt) { return std::mt19937_64(0x5eed ^ (salt * 0x9e3779b97f4a7c15ULL)); }

// Every vector of F^n for a finite field, zero vector first.
inline void for_each_vector(const Field& f, std::size_t n, const std::function<void(const Vec&)>& fn) {
    const std::vector<Elem> el = f.elements();
    std::vector<std::size_t> idx(n, 0);
    Vec v(n, f.zero());
    for (;;) {
        fn(v);
        std::size_t i = 0;
        while (i < n && ++idx[i] == el.size()) {
            idx[i] = 0;
            v[i] = el[0];
            ++i;
        }
        if (i == n) return;
        v[i] = el[idx[i]];
    }
}

inline std::uint64_t count_zeros(const QuadraticForm& q) {
    std::uint64_t n = 0;
    for_each_vector(q.base(), q.dim(), [&](const Vec& v) { n += q.eval(v).is_zero(); });
    return n;
}

inline bool brute_isotropic(const QuadraticForm& q) { return count_zeros(q) > 1; }

// Nonsingular even-dimensional forms over F_q: q^(2m-1) + e (q^m - q^(m-1)) zeros,
// e = +1 exactly for the hyperbolic form.
inline bool brute_hyperbolic(const QuadraticForm& q) {
    if (q.dim() % 2) return false;
    const std::uint64_t card = *q.base().cardinality();
    std::uint64_t base = 1;
    for (std::size_t i = 0; i + 1 < q.dim(); ++i) base *= card;
    return count_zeros(q) > base;
}

inline std::size_t brute_witt_index(const QuadraticForm& q) {
    const std::size_t n = q.dim();
    if (n % 2) return (n - 1) / 2;
    return brute_hyperbolic(q) ? n / 2 : n / 2 - 1;
}

inline Elem nonzero(const Field& f, std::mt19937_64& rng, int height = 3) { return f.sample_nonzero(rng, height); }

inline std::vector<Elem> nonzero_list(const Field& f, std::size_t n, std::mt19937_64& rng, int height = 3) {
    std::vector<Elem> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(nonzero(f, rng, height));
    return out;
}

// Random upper-triangular nonsingular form.
inline QuadraticForm random_form(const Field& f, std::size_t n, std::mt19937_64& rng, int height = 3) {
    for (;;) {
        Matrix m(f, n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) m(i, j) = f.sample(rng, height);
        QuadraticForm q(f, m);
        if (q.is_nonsingular()) return q;
    }
}

// Random invertible change of basis (columns).
inline std::vector<Vec> random_basis(const Field& f, std::size_t n, std::mt19937_64& rng, int height = 2) {
    for (;;) {
        Matrix m(f, n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m(i, j) = f.sample(rng, height);
        if (m.rank() != n) continue;
        std::vector<Vec> cols;
        for (std::size_t j = 0; j < n; ++j) cols.push_back(m.column(j));
        return cols;
    }
}

// Integer matrix of determinant +-1: random elementary column operations and swaps.
inline std::vector<Vec> unimodular_basis(const Field& f, std::size_t n, std::mt19937_64& rng, int steps = 6) {
    std::vector<Vec> cols;
    for (std::size_t j = 0; j < n; ++j) cols.push_back(unit_vec(f, n, j));
    if (n < 2) return cols;
    for (int s = 0; s < steps; ++s) {
        const std::size_t i = rng() % n, j = (i + 1 + rng() % (n - 1)) % n;
        if (rng() % 4 == 0) {
            std::swap(cols[i], cols[j]);
        } else {
            const Elem c = f.from_int(rng() % 2 ? 1 : -1);
            cols[j] = axpy(c, cols[i], cols[j]);
        }
    }
    return cols;
}

inline AlgElem random_alg(const Algebra& A, std::mt19937_64& rng, int height = 3) {
    Vec c;
    for (std::size_t i = 0; i < A.dim(); ++i) c.push_back(A.field().sample(rng, height));
    return A.element(c);
}

// Random hermitian (lambda = 1) form: scalar diagonal, g_ji = theta(g_ij). Retries until nondegenerate.
inline HermitianForm random_herm(const Algebra& D, std::size_t n, std::mt19937_64& rng, int height = 2) {
    const Field& f = D.field();
    for (;;) {
        std::vector<AlgVec> g(n, AlgVec(n, D.zero()));
        for (std::size_t i = 0; i < n; ++i) {
            g[i][i] = D.scalar(f.sample(rng, height));
            for (std::size_t j = i + 1; j < n; ++j) {
                g[i][j] = random_alg(D, rng, height);
                g[j][i] = theta(g[i][j]);
            }
        }
        HermitianForm h(D, f.one(), g);
        if (h.is_nondegenerate()) return h;
    }
}

// Valid quaternion parameters: 1 + 4a != 0, b != 0.
inline bool valid_quaternion(const Elem& a, const Elem& b) {
    const Field& f = a.field();
    return !(f.one() + f.from_int(4) * a).is_zero() && !b.is_zero();
}

}  // namespace qt
