#include "qfalg/isotropy.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "qfalg/local.hpp"

namespace qfalg {

const char* to_string(CertificateKind k) {
    switch (k) {
        case CertificateKind::Exhausted: return "Exhausted";
        case CertificateKind::LocalObstruction: return "LocalObstruction";
        case CertificateKind::DefiniteSignature: return "DefiniteSignature";
        case CertificateKind::ResidueForms: return "ResidueForms";
        case CertificateKind::DegreeBound: return "DegreeBound";
    }
    return "?";
}

const char* to_string(IsotropyResult::Status s) {
    switch (s) {
        case IsotropyResult::Status::Witness: return "isotropic";
        case IsotropyResult::Status::Anisotropic: return "anisotropic";
        case IsotropyResult::Status::Undecided: return "undecided";
    }
    return "?";
}

namespace {

IsotropyResult witness_result(Vec w) {
    IsotropyResult r;
    r.status = IsotropyResult::Status::Witness;
    r.witness = std::move(w);
    return r;
}

IsotropyResult anisotropic_result(CertificateKind kind, std::string detail, std::optional<Place> place = std::nullopt,
                                  int degree = -1) {
    IsotropyResult r;
    r.status = IsotropyResult::Status::Anisotropic;
    r.certificate.kind = kind;
    r.certificate.place = std::move(place);
    r.certificate.degree_bound = degree;
    r.certificate.detail = std::move(detail);
    return r;
}

IsotropyResult undecided_result(std::string reason) {
    IsotropyResult r;
    r.status = IsotropyResult::Status::Undecided;
    r.reason = std::move(reason);
    return r;
}

std::optional<mpq_class> mpq_sqrt(const mpq_class& x) {
    if (sgn(x) < 0) return std::nullopt;
    if (!mpz_perfect_square_p(x.get_num_mpz_t()) || !mpz_perfect_square_p(x.get_den_mpz_t())) return std::nullopt;
    mpz_class n, d;
    mpz_sqrt(n.get_mpz_t(), x.get_num_mpz_t());
    mpz_sqrt(d.get_mpz_t(), x.get_den_mpz_t());
    return mpq_class(n, d);
}

// ---------------------------------------------------------------------------
// Finite fields

IsotropyResult finite_oracle(const QuadraticForm& q) {
    const Field& f = q.base();
    const std::size_t n = q.dim();
    const Matrix& m = q.coeffs();
    for (std::size_t i = 0; i < n; ++i)
        if (m(i, i).is_zero()) return witness_result(unit_vec(f, n, i));
    if (n <= 1) return anisotropic_result(CertificateKind::Exhausted, "no nonzero vector of a unary form vanishes");
    const std::vector<Elem> elems = f.elements();
    if (n == 2) {
        for (const auto& x : elems) {
            if ((m(0, 0) * x * x + m(0, 1) * x + m(1, 1)).is_zero()) return witness_result({x, f.one()});
        }
        return anisotropic_result(CertificateKind::Exhausted,
                                  "all " + std::to_string(elems.size() * elems.size() - 1) + " nonzero vectors checked");
    }
    // Three variables always admit a zero over a finite field; solve for the third.
    for (const auto& x0 : elems)
        for (const auto& x1 : elems) {
            if (x0.is_zero() && x1.is_zero()) continue;
            const Elem b = m(0, 2) * x0 + m(1, 2) * x1;
            const Elem c = m(0, 0) * x0 * x0 + m(0, 1) * x0 * x1 + m(1, 1) * x1 * x1;
            if (auto z = detail::finite_quadratic_root(m(2, 2), b, c)) {
                Vec w = zero_vec(f, n);
                w[0] = x0;
                w[1] = x1;
                w[2] = *z;
                return witness_result(std::move(w));
            }
        }
    throw Error(ErrorKind::InternalInconsistency, "ternary form over a finite field without a zero");
}

// ---------------------------------------------------------------------------
// Rationals

std::vector<mpq_class> as_mpq(const std::vector<mpz_class>& a) { return {a.begin(), a.end()}; }

bool mixed_signs(const std::vector<mpz_class>& a) {
    bool pos = false, neg = false;
    for (const auto& x : a) (sgn(x) > 0 ? pos : neg) = true;
    return pos && neg;
}

bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
    const std::size_t k = c.size();
    for (std::size_t i = k; i-- > 0;) {
        if (c[i] < n - k + i) {
            ++c[i];
            for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
            return true;
        }
    }
    return false;
}

std::optional<std::vector<mpq_class>> solve_diagonal(const std::vector<mpz_class>& a, const OracleOptions& opt,
                                                     int depth);

std::optional<std::vector<mpq_class>> solve_pair(const std::vector<mpz_class>& a) {
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j)
            if (a[i] == -a[j]) {
                std::vector<mpq_class> w(a.size(), mpq_class(0));
                w[i] = 1;
                w[j] = 1;
                return w;
            }
    return std::nullopt;
}

// Split off t = a_i x^2 + a_j y^2 and recurse on <t'> + rest, t' the square-free part of t.
std::optional<std::vector<mpq_class>> solve_by_descent(const std::vector<mpz_class>& a, const OracleOptions& opt,
                                                       int depth) {
    const std::size_t k = a.size();
    const int h_max = std::max(6, std::min(opt.search_height, 24));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) {
            std::vector<mpz_class> rest;
            std::vector<std::size_t> rest_idx;
            for (std::size_t l = 0; l < k; ++l)
                if (l != i && l != j) {
                    rest.push_back(a[l]);
                    rest_idx.push_back(l);
                }
            for (int h = 1; h <= h_max; ++h)
                for (int s = 0; s <= 2 * h; ++s) {
                    const int x = s <= h ? s : h, y = s <= h ? h : s - h - 1;
                    if (s > h && y >= h) continue;
                    if (std::gcd(x, y) != 1) continue;
                    const mpz_class t = a[i] * x * x + a[j] * y * y;
                    if (t == 0) continue;
                    const mpz_class tp = local::squarefree_part(mpq_class(t));
                    std::vector<mpz_class> reduced{tp};
                    reduced.insert(reduced.end(), rest.begin(), rest.end());
                    if (reduced.size() >= 2 && !mixed_signs(reduced)) continue;
                    if (!detail::locally_isotropic_everywhere(reduced)) continue;
                    auto r = solve_diagonal(reduced, opt, depth + 1);
                    if (!r) continue;
                    mpq_class ratio(t, tp);
                    ratio.canonicalize();
                    const mpq_class scale = *mpq_sqrt(ratio);
                    std::vector<mpq_class> w(k, mpq_class(0));
                    w[i] = mpq_class(x) * (*r)[0] / scale;
                    w[j] = mpq_class(y) * (*r)[0] / scale;
                    for (std::size_t l = 0; l < rest_idx.size(); ++l) w[rest_idx[l]] = (*r)[l + 1];
                    return w;
                }
        }
    return std::nullopt;
}

std::optional<std::vector<mpq_class>> solve_diagonal(const std::vector<mpz_class>& a, const OracleOptions& opt,
                                                     int depth) {
    if (depth > 6) return std::nullopt;
    if (auto w = solve_pair(a)) return w;
    if (a.size() < 3) return std::nullopt;
    if (a.size() == 3) {
        auto r = detail::legendre_solve(a[0], a[1], a[2], opt);
        if (!r) return std::nullopt;
        return std::vector<mpq_class>{mpq_class((*r)[0]), mpq_class((*r)[1]), mpq_class((*r)[2])};
    }
    return solve_by_descent(a, opt, depth);
}

std::optional<std::vector<mpq_class>> embed(const std::vector<std::size_t>& idx, const std::vector<mpq_class>& w,
                                            std::size_t n) {
    std::vector<mpq_class> out(n, mpq_class(0));
    for (std::size_t i = 0; i < idx.size(); ++i) out[idx[i]] = w[i];
    return out;
}

IsotropyResult rational_oracle(const QuadraticForm& q, const OracleOptions& opt) {
    const std::size_t n = q.dim();
    const Diagonalization d = diagonalize(q);
    std::vector<mpz_class> a;
    std::vector<mpq_class> s;  // d_i = a_i s_i^2
    for (const auto& e : d.entries) {
        const mpz_class sf = local::squarefree_part(e.rational());
        a.push_back(sf);
        s.push_back(*mpq_sqrt(e.rational() / mpq_class(sf)));
    }
    if (n == 1) return anisotropic_result(CertificateKind::DefiniteSignature, "unary form");
    if (!mixed_signs(a))
        return anisotropic_result(CertificateKind::DefiniteSignature,
                                  sgn(a[0]) > 0 ? "positive definite" : "negative definite", Place::real());
    const std::vector<mpq_class> aq = as_mpq(a);
    for (const auto& v : local::relevant_places(aq)) {
        if (!local::isotropic_at(aq, v))
            return anisotropic_result(CertificateKind::LocalObstruction, "anisotropic over the completion at " + v.to_string(),
                                      v);
    }
    auto w = detail::rational_witness(a, opt);
    if (!w) return undecided_result("locally isotropic everywhere but no witness found within the search bounds");
    const Field& f = q.base();
    Vec x = zero_vec(f, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (sgn((*w)[i]) == 0) continue;
        x = axpy(f.from_rational((*w)[i] / s[i]), d.basis[i], x);
    }
    return witness_result(std::move(x));
}

// ---------------------------------------------------------------------------
// Rational function fields

PolyFp poly_of(const Elem& x) {
    const RatFunc& r = x.ratfunc();
    if (!r.den.is_one()) throw Error(ErrorKind::InternalInconsistency, "expected a polynomial");
    return r.num;
}

bool finite_diag_anisotropic(const std::vector<Elem>& u) {
    if (u.size() <= 1) return true;
    if (u.size() == 2) return !(-(u[0] * u[1])).is_square();
    return false;
}

std::vector<PolyFp> polys_up_to(std::uint32_t p, int degree) {
    std::vector<PolyFp> out;
    std::uint64_t count = 1;
    for (int i = 0; i <= degree; ++i) count *= p;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        std::vector<std::uint32_t> c;
        std::uint64_t r = idx;
        for (int i = 0; i <= degree; ++i) {
            c.push_back(static_cast<std::uint32_t>(r % p));
            r /= p;
        }
        out.emplace_back(p, std::move(c));
    }
    return out;
}

std::vector<Place> function_field_places(const std::vector<Elem>& entries, std::uint32_t p) {
    std::vector<Place> out{Place::infinity(p)};
    std::vector<PolyFp> polys;
    for (std::uint32_t c = 0; c < p; ++c) polys.push_back(PolyFp(p, {(p - c) % p, 1}));
    if (p <= 7)
        for (const auto& g : monic_irreducibles(p, 2)) polys.push_back(g);
    for (const auto& e : entries)
        for (const PolyFp* f : {&e.ratfunc().num, &e.ratfunc().den})
            if (f->degree() > 0)
                for (const auto& g : detail::small_irreducible_factors(*f)) polys.push_back(g);
    std::sort(polys.begin(), polys.end());
    polys.erase(std::unique(polys.begin(), polys.end()), polys.end());
    for (const auto& g : polys) out.push_back(Place::at_poly(g));
    return out;
}

// Search polynomial vectors; the last coordinate is solved by a square root.
std::optional<Vec> odd_function_search(const Field& f, const std::vector<Elem>& polys_coeffs, const OracleOptions& opt,
                                       int& completed_degree) {
    const std::uint32_t p = f.characteristic();
    const std::size_t n = std::min<std::size_t>(polys_coeffs.size(), 5);
    const std::uint64_t budget = std::min<std::uint64_t>(opt.budget, 100000);
    std::uint64_t spent = 0;
    completed_degree = -1;
    for (int deg = 0; deg <= opt.search_degree; ++deg) {
        const std::vector<PolyFp> cand = polys_up_to(p, deg);
        std::vector<std::size_t> idx(n - 1, 0);
        while (true) {
            if (++spent > budget) return std::nullopt;
            bool nonzero = false;
            PolyFp s(p, {});
            for (std::size_t i = 0; i + 1 < n; ++i) {
                const PolyFp& z = cand[idx[i]];
                if (z.is_zero()) continue;
                nonzero = true;
                s = s + poly_of(polys_coeffs[i]) * z * z;
            }
            if (nonzero) {
                const Elem rhs = -f.from_ratfunc(s, PolyFp::constant(p, 1)) / polys_coeffs[n - 1];
                if (auto r = rhs.sqrt()) {
                    Vec w;
                    for (std::size_t i = 0; i + 1 < n; ++i) w.push_back(f.from_ratfunc(cand[idx[i]], PolyFp::constant(p, 1)));
                    w.push_back(*r);
                    return w;
                }
            }
            std::size_t pos = 0;
            while (pos < idx.size() && ++idx[pos] == cand.size()) idx[pos++] = 0;
            if (pos == idx.size()) break;
        }
        completed_degree = deg;
    }
    return std::nullopt;
}

IsotropyResult odd_function_oracle(const QuadraticForm& q, const OracleOptions& opt) {
    const Field& f = q.base();
    const std::uint32_t p = f.characteristic();
    const std::size_t n = q.dim();
    const Diagonalization d = diagonalize(q);
    if (n <= 4) {
        for (const auto& v : function_field_places(d.entries, p)) {
            const Field res = detail::residue_field(v, p);
            std::vector<Elem> even, odd;
            for (const auto& e : d.entries) {
                const int val = detail::function_valuation(e, v);
                (val % 2 == 0 ? even : odd).push_back(detail::unit_residue(e, v, res));
            }
            if (finite_diag_anisotropic(even) && finite_diag_anisotropic(odd))
                return anisotropic_result(CertificateKind::ResidueForms,
                                          "both residue forms anisotropic at " + v.to_string(), v);
        }
    }
    if (n == 1) throw Error(ErrorKind::InternalInconsistency, "unary form not certified anisotropic");
    // Replace d_i = num/den by num*den (same square class); coordinates rescale by den.
    std::vector<Elem> pc;
    for (const auto& e : d.entries) pc.push_back(f.from_ratfunc(e.ratfunc().num * e.ratfunc().den, PolyFp::constant(p, 1)));
    int completed = -1;
    auto z = odd_function_search(f, pc, opt, completed);
    if (!z) {
        if (n >= 5) return undecided_result("isotropic (dimension >= 5 over a C2 field) but no witness within the degree bound");
        return undecided_result("no residue-form obstruction and no witness with coordinate degree <= " +
                                std::to_string(opt.search_degree));
    }
    Vec x = zero_vec(f, n);
    for (std::size_t i = 0; i < z->size(); ++i) {
        const Elem y = (*z)[i] * f.from_ratfunc(d.entries[i].ratfunc().den, PolyFp::constant(p, 1));
        if (!y.is_zero()) x = axpy(y, d.basis[i], x);
    }
    return witness_result(std::move(x));
}

IsotropyResult char2_function_oracle(const QuadraticForm& q0, const OracleOptions& opt) {
    const Field& f = q0.base();
    const std::size_t n = q0.dim();
    // Clear denominators; scaling keeps the zero set.
    PolyFp common = PolyFp::constant(2, 1);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            if (!q0.coeffs()(i, j).is_zero()) {
                const PolyFp& den = q0.coeffs()(i, j).ratfunc().den;
                common = common * (den / gcd(common, den));
            }
    const QuadraticForm q = scale(f.from_ratfunc(common, PolyFp::constant(2, 1)), q0);
    std::vector<std::vector<PolyFp>> m(n, std::vector<PolyFp>(n, PolyFp(2, {})));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) m[i][j] = poly_of(q.coeffs()(i, j));
    std::uint64_t spent = 0;
    int completed = -1;
    for (int deg = 0; deg <= opt.search_degree; ++deg) {
        const std::vector<PolyFp> cand = polys_up_to(2, deg);
        std::vector<std::size_t> idx(n, 0);
        bool exhausted_budget = false;
        while (true) {
            std::size_t pos = 0;
            while (pos < n && ++idx[pos] == cand.size()) idx[pos++] = 0;
            if (pos == n) break;
            if (++spent > opt.budget) {
                exhausted_budget = true;
                break;
            }
            PolyFp val(2, {});
            for (std::size_t i = 0; i < n; ++i) {
                if (cand[idx[i]].is_zero()) continue;
                for (std::size_t j = i; j < n; ++j)
                    if (!m[i][j].is_zero() && !cand[idx[j]].is_zero()) val = val + m[i][j] * cand[idx[i]] * cand[idx[j]];
            }
            if (val.is_zero()) {
                Vec w;
                for (std::size_t i = 0; i < n; ++i) w.push_back(f.from_ratfunc(cand[idx[i]], PolyFp::constant(2, 1)));
                return witness_result(std::move(w));
            }
        }
        if (exhausted_budget) break;
        completed = deg;
    }
    if (n >= 5) return undecided_result("isotropic (dimension >= 5 over a C2 field) but no witness within the degree bound");
    if (completed < 0) return undecided_result("search budget exhausted before any degree bound was completed");
    return anisotropic_result(CertificateKind::DegreeBound,
                              "no nonzero polynomial zero with coordinate degrees <= " + std::to_string(completed),
                              std::nullopt, completed);
}

}  // namespace

// ---------------------------------------------------------------------------

namespace detail {

bool locally_isotropic_everywhere(const std::vector<mpz_class>& a) {
    const std::vector<mpq_class> aq = as_mpq(a);
    for (const auto& v : local::relevant_places(aq))
        if (!local::isotropic_at(aq, v)) return false;
    return true;
}

std::optional<std::vector<mpz_class>> legendre_solve(const mpz_class& a0, const mpz_class& b0, const mpz_class& c0,
                                                     const OracleOptions& opt) {
    // Order |A| >= |B| >= |C|; search over the two variables with the smaller bounds.
    std::array<std::pair<mpz_class, int>, 3> v{{{a0, 0}, {b0, 1}, {c0, 2}}};
    std::sort(v.begin(), v.end(), [](const auto& l, const auto& r) { return abs(l.first) > abs(r.first); });
    const mpz_class &A = v[0].first, &B = v[1].first, &C = v[2].first;
    auto isqrt = [](const mpz_class& z) {
        mpz_class r;
        mpz_sqrt(r.get_mpz_t(), mpz_class(abs(z)).get_mpz_t());
        return r;
    };
    const long cap = 2000;
    auto bound = [&](const mpz_class& holzer) {
        mpz_class b = holzer + 1;
        if (b < opt.search_height) b = opt.search_height;
        return b > cap ? cap : b.get_si();
    };
    const long bx = bound(isqrt(B * C)), by = bound(isqrt(A * C));
    const std::uint64_t limit = std::max<std::uint64_t>(opt.budget * 10, 4000000);
    std::uint64_t spent = 0;
    const long hmax = std::max(bx, by);
    mpz_class num, z2, z;
    for (long h = 1; h <= hmax; ++h) {
        for (long s = 0; s <= 2 * h; ++s) {
            long x, y;
            if (s <= h) {
                x = s;
                y = h;
            } else {
                x = h;
                y = s - h - 1;
            }
            if (x > bx || y > by) continue;
            if (++spent > limit) return std::nullopt;
            num = -(A * x * x + B * y * y);
            if (!mpz_divisible_p(num.get_mpz_t(), C.get_mpz_t())) continue;
            mpz_divexact(z2.get_mpz_t(), num.get_mpz_t(), C.get_mpz_t());
            if (sgn(z2) < 0 || !mpz_perfect_square_p(z2.get_mpz_t())) continue;
            mpz_sqrt(z.get_mpz_t(), z2.get_mpz_t());
            std::vector<mpz_class> out(3);
            out[v[0].second] = x;
            out[v[1].second] = y;
            out[v[2].second] = z;
            return out;
        }
    }
    return std::nullopt;
}

std::optional<std::vector<mpq_class>> rational_witness(const std::vector<mpz_class>& a, const OracleOptions& opt) {
    const std::size_t n = a.size();
    if (auto w = solve_pair(a)) return w;
    if (n < 3) return std::nullopt;
    if (n == 3) return solve_diagonal(a, opt, 0);
    // Prefer small supports: they keep later coordinates small.
    const std::size_t window = std::min<std::size_t>(n, 10);
    for (std::size_t k = 3; k <= std::min<std::size_t>(n, 5); ++k) {
        std::vector<std::size_t> c(k);
        std::iota(c.begin(), c.end(), 0);
        if (k > window) break;
        do {
            std::vector<mpz_class> sub;
            for (auto i : c) sub.push_back(a[i]);
            if (!mixed_signs(sub)) continue;
            if (k < 5 && !locally_isotropic_everywhere(sub)) continue;
            if (auto w = solve_diagonal(sub, opt, 0)) return embed(c, *w, n);
        } while (next_combination(c, window));
    }
    // Any indefinite five-dimensional subform is isotropic.
    std::vector<std::size_t> c;
    for (std::size_t i = 0; i < n && c.empty(); ++i)
        if (sgn(a[i]) > 0) c.push_back(i);
    for (std::size_t i = 0; i < n && c.size() < 2; ++i)
        if (sgn(a[i]) < 0) c.push_back(i);
    for (std::size_t i = 0; i < n && c.size() < 5; ++i)
        if (std::find(c.begin(), c.end(), i) == c.end()) c.push_back(i);
    std::sort(c.begin(), c.end());
    std::vector<mpz_class> sub;
    for (auto i : c) sub.push_back(a[i]);
    if (!mixed_signs(sub)) return std::nullopt;
    if (auto w = solve_diagonal(sub, opt, 0)) return embed(c, *w, n);
    return std::nullopt;
}

std::optional<Elem> finite_quadratic_root(const Elem& A, const Elem& B, const Elem& C) {
    const Field& f = A.field();
    if (A.is_zero()) {
        if (!B.is_zero()) return -C / B;
        if (C.is_zero()) return f.zero();
        return std::nullopt;
    }
    if (f.characteristic() != 2) {
        const Elem disc = B * B - f.from_int(4) * A * C;
        auto s = disc.sqrt();
        if (!s) return std::nullopt;
        return (*s - B) / (f.from_int(2) * A);
    }
    if (B.is_zero()) return (C / A).sqrt();
    // z = (B/A) w with w^2 + w = AC/B^2.
    const Elem c = A * C / (B * B);
    if (absolute_trace(c) != 0) return std::nullopt;
    for (const auto& w : f.elements())
        if (w * w + w == c) return B / A * w;
    return std::nullopt;
}

int function_valuation(const Elem& x, const Place& v) {
    if (x.is_zero()) throw Error(ErrorKind::InvalidArgument, "valuation of zero");
    const RatFunc& r = x.ratfunc();
    if (v.kind == Place::Kind::Infinity) return r.den.degree() - r.num.degree();
    int val = 0;
    PolyFp a = r.num, b = r.den;
    while ((a % v.poly).is_zero()) {
        a = a / v.poly;
        ++val;
    }
    while ((b % v.poly).is_zero()) {
        b = b / v.poly;
        --val;
    }
    return val;
}

Field residue_field(const Place& v, std::uint32_t p) {
    if (v.kind == Place::Kind::Infinity) return Field::finite(p, 1);
    return Field::finite_with_modulus(v.poly);
}

Elem unit_residue(const Elem& x, const Place& v, const Field& res) {
    const RatFunc& r = x.ratfunc();
    if (v.kind == Place::Kind::Infinity) return res.from_int(r.num.lead()) / res.from_int(r.den.lead());
    PolyFp a = r.num, b = r.den;
    while ((a % v.poly).is_zero()) a = a / v.poly;
    while ((b % v.poly).is_zero()) b = b / v.poly;
    if (v.poly.degree() == 1) {
        const std::uint32_t p = v.poly.prime();
        const std::uint32_t root = (p - v.poly.coeff(0)) % p;
        return res.from_int(a.eval(root)) / res.from_int(b.eval(root));
    }
    return res.from_ratfunc(a % v.poly, b % v.poly);
}

std::vector<PolyFp> small_irreducible_factors(const PolyFp& f0) {
    const std::uint32_t p = f0.prime();
    PolyFp f = f0.monic();
    std::vector<PolyFp> out;
    const std::uint32_t max_deg = p <= 13 ? 3 : (p <= 50 ? 2 : 1);
    for (std::uint32_t d = 1; d <= max_deg && f.degree() > 0; ++d) {
        std::vector<PolyFp> cands;
        if (d == 1) {
            for (std::uint32_t c = 0; c < p; ++c) cands.push_back(PolyFp(p, {(p - c) % p, 1}));
        } else {
            cands = monic_irreducibles(p, d);
        }
        for (const auto& g : cands) {
            if (f.degree() < static_cast<int>(d)) break;
            bool hit = false;
            while ((f % g).is_zero()) {
                f = f / g;
                hit = true;
            }
            if (hit) out.push_back(g);
        }
    }
    if (f.degree() > 0 && is_irreducible(f)) out.push_back(f.monic());
    return out;
}

}  // namespace detail

IsotropyResult isotropy_oracle(const QuadraticForm& q, const OracleOptions& opt) {
    if (!q.is_nonsingular()) throw Error(ErrorKind::SingularForm, "isotropy oracle needs a nonsingular form");
    if (q.dim() == 0) return anisotropic_result(CertificateKind::Exhausted, "zero-dimensional form");
    IsotropyResult r;
    const Field& f = q.base();
    if (f.is_finite()) {
        r = finite_oracle(q);
    } else if (f.is_rationals()) {
        r = rational_oracle(q, opt);
    } else if (f.characteristic() != 2) {
        r = odd_function_oracle(q, opt);
    } else {
        r = char2_function_oracle(q, opt);
    }
    if (r.isotropic() && (is_zero_vec(r.witness) || !q.eval(r.witness).is_zero()))
        throw Error(ErrorKind::InternalInconsistency, "isotropy witness failed re-verification");
    return r;
}

}  // namespace qfalg
