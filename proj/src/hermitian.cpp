#include "qfalg/hermitian.hpp"

#include <sstream>

namespace qfalg {

AlgElem theta(const AlgElem& x) { return canonical_involution(x); }

namespace {

bool rank_grows(const Field& f, std::vector<Vec> span, const Vec& x, std::size_t rows) {
    const std::size_t r0 = span.empty() ? 0 : Matrix::from_columns(f, span, rows).rank();
    span.push_back(x);
    return Matrix::from_columns(f, span, rows).rank() > r0;
}

AlgVec right_mul(const AlgVec& x, const AlgElem& c) {
    AlgVec out;
    out.reserve(x.size());
    for (const auto& xi : x) out.push_back(xi * c);
    return out;
}

AlgVec add(const AlgVec& x, const AlgVec& y) {
    AlgVec out;
    for (std::size_t i = 0; i < x.size(); ++i) out.push_back(x[i] + y[i]);
    return out;
}

AlgVec sub(const AlgVec& x, const AlgVec& y) {
    AlgVec out;
    for (std::size_t i = 0; i < x.size(); ++i) out.push_back(x[i] - y[i]);
    return out;
}

AlgVec unit_algvec(const Algebra& D, std::size_t n, std::size_t i) {
    AlgVec v(n, D.zero());
    v[i] = D.one();
    return v;
}

void require_trace_variant(const HermitianForm& h) {
    if (!h.lambda().is_one() && h.algebra().field().characteristic() != 2)
        throw Error(ErrorKind::UnsupportedVariant, "trace forms need lambda = 1");
    if (!h.is_even()) throw Error(ErrorKind::NotEven, "hermitian form is not even");
}

void require_same_kind(const HermitianForm& h1, const HermitianForm& h2) {
    if (h1.algebra() != h2.algebra() || h1.lambda() != h2.lambda())
        throw Error(ErrorKind::SignatureMismatch,
                    h1.algebra().literal() + " vs " + h2.algebra().literal() + " or differing lambda");
}

}  // namespace

bool in_symd(const AlgElem& x, const Elem& lambda) {
    const Algebra& D = x.owner();
    std::vector<Vec> span;
    for (std::size_t k = 0; k < D.dim(); ++k) {
        const AlgElem e = D.basis(k);
        span.push_back((e + theta(e).scaled(lambda)).coords());
    }
    return !rank_grows(D.field(), span, x.coords(), D.dim());
}

HermitianForm::HermitianForm(Algebra D, Elem lambda, std::vector<AlgVec> gram)
    : d_(std::move(D)), lambda_(std::move(lambda)), gram_(std::move(gram)) {
    const Field& f = d_.field();
    if (!(lambda_.field() == f)) throw Error(ErrorKind::FieldMismatch, "lambda outside the base field");
    if (!(lambda_ * lambda_).is_one()) throw Error(ErrorKind::InvalidArgument, "lambda must satisfy lambda^2 = 1");
    const std::size_t n = gram_.size();
    for (const auto& row : gram_) {
        if (row.size() != n) throw Error(ErrorKind::InvalidArgument, "Gram matrix must be square");
        for (const auto& x : row)
            if (x.owner() != d_) throw Error(ErrorKind::OwnerMismatch, "Gram entry outside " + d_.literal());
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            if (gram_[j][i] != theta(gram_[i][j]).scaled(lambda_))
                throw Error(ErrorKind::InvalidArgument, "Gram matrix is not lambda-hermitian");
    even_ = true;
    for (std::size_t i = 0; i < n && even_; ++i) even_ = in_symd(gram_[i][i], lambda_);
    // Rows: F-basis e_i d_s of V; columns: coordinates of h(e_i d_s, e_j).
    const std::size_t d = d_.dim();
    Matrix m(f, n * d, n * d);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t s = 0; s < d; ++s) {
            const AlgElem ts = theta(d_.basis(s));
            for (std::size_t j = 0; j < n; ++j) {
                const AlgElem v = ts * gram_[i][j];
                for (std::size_t k = 0; k < d; ++k) m(i * d + s, j * d + k) = v.coords()[k];
            }
        }
    nondegenerate_ = n == 0 || m.rank() == n * d;
}

AlgElem HermitianForm::eval(const AlgVec& x, const AlgVec& y) const {
    AlgElem acc = d_.zero();
    for (std::size_t i = 0; i < dim(); ++i) {
        if (x[i].is_zero()) continue;
        const AlgElem tx = theta(x[i]);
        for (std::size_t j = 0; j < dim(); ++j) {
            if (y[j].is_zero() || gram_[i][j].is_zero()) continue;
            acc = acc + tx * gram_[i][j] * y[j];
        }
    }
    return acc;
}

std::string HermitianForm::to_string() const {
    std::ostringstream os;
    bool diagonal_scalar = true;
    for (std::size_t i = 0; i < dim(); ++i)
        for (std::size_t j = 0; j < dim(); ++j) {
            if (i != j && !gram_[i][j].is_zero()) diagonal_scalar = false;
            if (i == j && !gram_[i][j].is_scalar()) diagonal_scalar = false;
        }
    const std::string lam = lambda_.is_one() ? "" : ";lambda=" + lambda_.to_string();
    if (diagonal_scalar && dim() > 0) {
        os << "diag(";
        for (std::size_t i = 0; i < dim(); ++i) os << (i ? "," : "") << gram_[i][i].scalar_part().to_string();
        os << lam << ")";
    } else {
        os << "hmat(";
        for (std::size_t i = 0; i < dim(); ++i) {
            if (i) os << ";";
            for (std::size_t j = 0; j < dim(); ++j) {
                os << (j ? "," : "") << "[";
                const Vec& c = gram_[i][j].coords();
                for (std::size_t k = 0; k < c.size(); ++k) os << (k ? "," : "") << c[k].to_string();
                os << "]";
            }
        }
        os << lam << ")";
    }
    os << "@" << d_.literal();
    return os.str();
}

bool HermitianForm::operator==(const HermitianForm& o) const {
    return d_ == o.d_ && lambda_ == o.lambda_ && gram_ == o.gram_;
}

// ---------------------------------------------------------------------------

HermitianForm unit_form(const Algebra& D) { return from_diagonal(D, {D.field().one()}); }

HermitianForm from_diagonal(const Algebra& D, const std::vector<Elem>& entries) {
    const std::size_t n = entries.size();
    std::vector<AlgVec> g(n, AlgVec(n, D.zero()));
    for (std::size_t i = 0; i < n; ++i) {
        if (!(entries[i].field() == D.field())) throw Error(ErrorKind::FieldMismatch, "entry outside " + D.field().literal());
        if (entries[i].is_zero()) throw Error(ErrorKind::ZeroEntry, "diagonal entry " + std::to_string(i) + " is 0");
        g[i][i] = D.scalar(entries[i]);
    }
    return HermitianForm(D, D.field().one(), std::move(g));
}

HermitianForm tensor_bh(const BilinearForm& phi, const HermitianForm& h) {
    const Algebra& D = h.algebra();
    if (!(phi.base() == D.field())) throw Error(ErrorKind::FieldMismatch, "bilinear form over another field");
    const std::size_t n = phi.dim(), m = h.dim();
    std::vector<AlgVec> g(n * m, AlgVec(n * m, D.zero()));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (phi.gram()(i, j).is_zero()) continue;
            for (std::size_t k = 0; k < m; ++k)
                for (std::size_t l = 0; l < m; ++l) g[i * m + k][j * m + l] = h.entry(k, l).scaled(phi.gram()(i, j));
        }
    return HermitianForm(D, h.lambda(), std::move(g));
}

HermitianForm hyperbolic_h(const Algebra& D, std::size_t half_dim, const Elem& lambda) {
    const std::size_t n = 2 * half_dim;
    std::vector<AlgVec> g(n, AlgVec(n, D.zero()));
    for (std::size_t i = 0; i < half_dim; ++i) {
        g[2 * i][2 * i + 1] = D.one();
        g[2 * i + 1][2 * i] = D.scalar(lambda);
    }
    return HermitianForm(D, lambda, std::move(g));
}

HermitianForm hyperbolic_h(const Algebra& D, std::size_t half_dim) { return hyperbolic_h(D, half_dim, D.field().one()); }

HermitianForm orthogonal_sum(const HermitianForm& h1, const HermitianForm& h2) {
    require_same_kind(h1, h2);
    const Algebra& D = h1.algebra();
    const std::size_t n = h1.dim(), m = h2.dim();
    std::vector<AlgVec> g(n + m, AlgVec(n + m, D.zero()));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) g[i][j] = h1.entry(i, j);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) g[n + i][n + j] = h2.entry(i, j);
    return HermitianForm(D, h1.lambda(), std::move(g));
}

HermitianForm scale(const Elem& c, const HermitianForm& h) {
    if (c.is_zero()) throw Error(ErrorKind::ZeroScalar, "scaling by 0");
    std::vector<AlgVec> g = h.gram();
    for (auto& row : g)
        for (auto& x : row) x = x.scaled(c);
    return HermitianForm(h.algebra(), h.lambda(), std::move(g));
}

// ---------------------------------------------------------------------------

DiagonalProfile diagonalize_even(const HermitianForm& h) {
    require_trace_variant(h);
    if (!h.is_nondegenerate()) throw Error(ErrorKind::Degenerate, "degenerate hermitian form");
    const Algebra& D = h.algebra();
    const std::size_t n = h.dim();
    std::vector<AlgVec> rest;
    for (std::size_t i = 0; i < n; ++i) rest.push_back(unit_algvec(D, n, i));
    DiagonalProfile out;
    while (!rest.empty()) {
        std::size_t pick = rest.size();
        for (std::size_t i = 0; i < rest.size() && pick == rest.size(); ++i)
            if (!h.eval(rest[i], rest[i]).is_zero()) pick = i;
        if (pick == rest.size()) {
            // All h(r, r) = 0: some r_i + r_j d has a nonzero value.
            for (std::size_t i = 0; i < rest.size() && pick == rest.size(); ++i)
                for (std::size_t j = 0; j < rest.size() && pick == rest.size(); ++j) {
                    if (i == j) continue;
                    for (std::size_t s = 0; s < D.dim(); ++s) {
                        const AlgVec cand = add(rest[i], right_mul(rest[j], D.basis(s)));
                        if (!h.eval(cand, cand).is_zero()) {
                            rest[i] = cand;
                            pick = i;
                            break;
                        }
                    }
                }
            if (pick == rest.size()) throw Error(ErrorKind::Degenerate, "no anisotropic vector in the remaining span");
        }
        const AlgVec x = rest[pick];
        const AlgElem a = h.eval(x, x);
        if (!a.is_scalar()) throw Error(ErrorKind::InternalInconsistency, "h(x, x) outside F for an even form");
        const AlgElem ainv = D.scalar(a.scalar_part().inv());
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(pick));
        for (auto& y : rest) {
            const AlgElem c = h.eval(x, y);
            if (!c.is_zero()) y = sub(y, right_mul(x, ainv * c));
        }
        out.entries.push_back(a.scalar_part());
        out.basis.push_back(x);
    }
    return out;
}

QuadraticForm trace_form(const HermitianForm& h) {
    require_trace_variant(h);
    const Algebra& D = h.algebra();
    const Field& f = D.field();
    const std::size_t n = h.dim(), d = D.dim();
    // H[(i,s),(j,t)] = theta(d_s) g_ij d_t
    std::vector<AlgElem> td;
    for (std::size_t s = 0; s < d; ++s) td.push_back(theta(D.basis(s)));
    Matrix m(f, n * d, n * d);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            if (h.entry(i, j).is_zero()) continue;
            for (std::size_t s = 0; s < d; ++s) {
                const AlgElem left = td[s] * h.entry(i, j);
                for (std::size_t t = 0; t < d; ++t) {
                    const std::size_t alpha = i * d + s, beta = j * d + t;
                    if (beta < alpha) continue;
                    const AlgElem v = left * D.basis(t);
                    AlgElem val = v;
                    if (beta != alpha) {
                        // h(f_a, f_b) + h(f_b, f_a) = v + lambda theta(v)
                        val = v + theta(v).scaled(h.lambda());
                    }
                    if (!val.is_scalar()) throw Error(ErrorKind::InternalInconsistency, "trace form value outside F");
                    m(alpha, beta) = val.scalar_part();
                }
            }
        }
    QuadraticForm q(f, std::move(m));
    if (!q.is_nonsingular()) throw Error(ErrorKind::Degenerate, "trace form is singular");
    return q;
}

AlgVec to_algvec(const Algebra& D, const Vec& coords) {
    const std::size_t d = D.dim();
    if (coords.size() % d) throw Error(ErrorKind::InvalidArgument, "coordinate count is not a multiple of dim D");
    AlgVec out;
    for (std::size_t i = 0; i < coords.size() / d; ++i)
        out.push_back(D.element(Vec(coords.begin() + static_cast<std::ptrdiff_t>(i * d),
                                    coords.begin() + static_cast<std::ptrdiff_t>((i + 1) * d))));
    return out;
}

Vec to_coords(const AlgVec& x) {
    Vec out;
    for (const auto& xi : x) out.insert(out.end(), xi.coords().begin(), xi.coords().end());
    return out;
}

HermitianIsotropy isotropy_h(const HermitianForm& h, const OracleOptions& opt) {
    HermitianIsotropy out;
    out.trace_result = isotropy_oracle(trace_form(h), opt);
    out.status = out.trace_result.status;
    if (out.trace_result.isotropic()) {
        AlgVec x = to_algvec(h.algebra(), out.trace_result.witness);
        if (!h.eval(x, x).is_zero()) throw Error(ErrorKind::InternalInconsistency, "trace-form witness is not h-isotropic");
        out.witness = std::move(x);
    }
    return out;
}

bool is_isotropic_h(const HermitianForm& h, const OracleOptions& opt) {
    const HermitianIsotropy r = isotropy_h(h, opt);
    if (r.status == IsotropyResult::Status::Undecided)
        throw Error(ErrorKind::OracleUndecided, "trace form isotropy: " + r.trace_result.reason);
    return r.status == IsotropyResult::Status::Witness;
}

bool is_hyperbolic_h(const HermitianForm& h, const OracleOptions& opt) { return is_hyperbolic(trace_form(h), opt); }

std::optional<std::vector<Vec>> hyperbolic_flag_h(const HermitianForm& h, const OracleOptions& opt) {
    const QuadraticForm q = trace_form(h);
    const WittDecomposition d = witt_decompose(q, opt);
    if (d.witt_index * 2 != q.dim()) return std::nullopt;
    std::vector<Vec> flag;
    for (std::size_t k = 0; k < d.witt_index; ++k) flag.push_back(d.transform.column(2 * k));
    for (std::size_t i = 0; i < flag.size(); ++i) {
        if (!q.eval(flag[i]).is_zero()) throw Error(ErrorKind::InternalInconsistency, "flag vector is not isotropic");
        for (std::size_t j = i + 1; j < flag.size(); ++j)
            if (!q.polar(flag[i], flag[j]).is_zero())
                throw Error(ErrorKind::InternalInconsistency, "flag is not totally isotropic");
    }
    return flag;
}

bool isometric_h(const HermitianForm& h1, const HermitianForm& h2, const OracleOptions& opt) {
    require_same_kind(h1, h2);
    if (h1.dim() != h2.dim()) return false;
    return isometric(trace_form(h1), trace_form(h2), opt);
}

bool isometric_h_by_sum(const HermitianForm& h1, const HermitianForm& h2, const OracleOptions& opt) {
    require_same_kind(h1, h2);
    if (h1.dim() != h2.dim()) return false;
    return is_hyperbolic_h(orthogonal_sum(h1, scale(-h2.algebra().field().one(), h2)), opt);
}

}  // namespace qfalg
