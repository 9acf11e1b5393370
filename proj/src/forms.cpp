#include "qfalg/forms.hpp"

#include <sstream>

namespace qfalg {

namespace {

void require_same(const Field& a, const Field& b) {
    if (!(a == b)) throw Error(ErrorKind::FieldMismatch, a.literal() + " vs " + b.literal());
}

Elem bilinear_eval(const Matrix& g, const Vec& x, const Vec& y) {
    Elem acc = g.field().zero();
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i].is_zero()) continue;
        for (std::size_t j = 0; j < y.size(); ++j)
            if (!y[j].is_zero() && !g(i, j).is_zero()) acc += x[i] * g(i, j) * y[j];
    }
    return acc;
}

void swap_sym(Matrix& g, std::vector<Vec>& basis, std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < g.cols(); ++j) std::swap(g(a, j), g(b, j));
    for (std::size_t i = 0; i < g.rows(); ++i) std::swap(g(i, a), g(i, b));
    std::swap(basis[a], basis[b]);
}

// v_target += c * v_src, applied to the congruence G -> E^T G E.
void add_sym(Matrix& g, std::vector<Vec>& basis, std::size_t target, std::size_t src, const Elem& c) {
    const std::size_t n = g.rows();
    for (std::size_t j = 0; j < n; ++j) g(target, j) += c * g(src, j);
    for (std::size_t i = 0; i < n; ++i) g(i, target) += c * g(i, src);
    basis[target] = axpy(c, basis[src], basis[target]);
}

std::vector<Vec> unit_basis(const Field& f, std::size_t n) {
    std::vector<Vec> b;
    for (std::size_t i = 0; i < n; ++i) b.push_back(unit_vec(f, n, i));
    return b;
}

}  // namespace

// ---------------------------------------------------------------------------

BilinearForm::BilinearForm(Field base, Matrix gram) : base_(std::move(base)), gram_(std::move(gram)) {
    if (gram_.rows() != gram_.cols()) throw Error(ErrorKind::InvalidArgument, "Gram matrix must be square");
    require_same(base_, gram_.field());
    if (!(gram_ == gram_.transpose())) throw Error(ErrorKind::InvalidArgument, "Gram matrix must be symmetric");
    nondegenerate_ = gram_.rows() == 0 || !gram_.determinant().is_zero();
}

Elem BilinearForm::eval(const Vec& x, const Vec& y) const { return bilinear_eval(gram_, x, y); }

bool BilinearForm::is_alternating() const {
    for (std::size_t i = 0; i < dim(); ++i)
        if (!gram_(i, i).is_zero()) return false;
    // Symmetric with zero diagonal is alternating only when gram = -gram^T, i.e. char 2 or zero.
    if (base_.characteristic() == 2) return true;
    for (std::size_t i = 0; i < dim(); ++i)
        for (std::size_t j = 0; j < dim(); ++j)
            if (!gram_(i, j).is_zero()) return false;
    return true;
}

std::optional<std::vector<Elem>> BilinearForm::diagonal_entries() const {
    std::vector<Elem> d;
    for (std::size_t i = 0; i < dim(); ++i) {
        for (std::size_t j = 0; j < dim(); ++j)
            if (i != j && !gram_(i, j).is_zero()) return std::nullopt;
        d.push_back(gram_(i, i));
    }
    return d;
}

QuadraticForm::QuadraticForm(Field base, Matrix coeffs) : base_(std::move(base)), m_(std::move(coeffs)) {
    if (m_.rows() != m_.cols()) throw Error(ErrorKind::InvalidArgument, "coefficient matrix must be square");
    require_same(base_, m_.field());
    for (std::size_t i = 0; i < m_.rows(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (!m_(i, j).is_zero()) {
                m_(j, i) += m_(i, j);
                m_(i, j) = base_.zero();
            }
}

Elem QuadraticForm::eval(const Vec& x) const {
    Elem acc = base_.zero();
    for (std::size_t i = 0; i < dim(); ++i) {
        if (x[i].is_zero()) continue;
        for (std::size_t j = i; j < dim(); ++j)
            if (!x[j].is_zero() && !m_(i, j).is_zero()) acc += m_(i, j) * x[i] * x[j];
    }
    return acc;
}

Matrix QuadraticForm::polar_matrix() const { return m_ + m_.transpose(); }

Elem QuadraticForm::polar(const Vec& x, const Vec& y) const { return bilinear_eval(polar_matrix(), x, y); }

bool QuadraticForm::is_nonsingular() const { return dim() == 0 || !polar_matrix().determinant().is_zero(); }

QuadraticForm QuadraticForm::restrict_to(const std::vector<Vec>& basis) const {
    const Matrix b = polar_matrix();
    std::vector<Vec> bw;
    bw.reserve(basis.size());
    for (const auto& w : basis) bw.push_back(b * w);
    Matrix out(base_, basis.size(), basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i) {
        out(i, i) = eval(basis[i]);
        for (std::size_t j = i + 1; j < basis.size(); ++j) {
            Elem acc = base_.zero();
            for (std::size_t k = 0; k < dim(); ++k)
                if (!basis[i][k].is_zero() && !bw[j][k].is_zero()) acc += basis[i][k] * bw[j][k];
            out(i, j) = acc;
        }
    }
    return QuadraticForm(base_, std::move(out));
}

QuadraticForm QuadraticForm::map_coefficients(const Field& target, const std::function<Elem(const Elem&)>& f) const {
    Matrix out(target, dim(), dim());
    for (std::size_t i = 0; i < dim(); ++i)
        for (std::size_t j = i; j < dim(); ++j) out(i, j) = f(m_(i, j));
    return QuadraticForm(target, std::move(out));
}

std::optional<std::vector<Elem>> QuadraticForm::diagonal_entries() const {
    std::vector<Elem> d;
    for (std::size_t i = 0; i < dim(); ++i) {
        for (std::size_t j = i + 1; j < dim(); ++j)
            if (!m_(i, j).is_zero()) return std::nullopt;
        d.push_back(m_(i, i));
    }
    return d;
}

std::string QuadraticForm::to_string() const {
    std::ostringstream os;
    if (auto d = diagonal_entries(); d && dim() > 0) {
        os << "diag(";
        for (std::size_t i = 0; i < d->size(); ++i) os << (i ? "," : "") << (*d)[i].to_string();
        os << ")";
    } else {
        os << "qmat(";
        for (std::size_t i = 0; i < dim(); ++i) {
            if (i) os << ";";
            for (std::size_t j = 0; j < dim(); ++j) os << (j ? "," : "") << m_(i, j).to_string();
        }
        os << ")";
    }
    os << "@" << base_.literal();
    return os.str();
}

std::string BilinearForm::to_string() const {
    std::ostringstream os;
    if (auto d = diagonal_entries(); d && dim() > 0) {
        os << "bdiag(";
        for (std::size_t i = 0; i < d->size(); ++i) os << (i ? "," : "") << (*d)[i].to_string();
        os << ")";
    } else {
        os << "bmat(";
        for (std::size_t i = 0; i < dim(); ++i) {
            if (i) os << ";";
            for (std::size_t j = 0; j < dim(); ++j) os << (j ? "," : "") << gram_(i, j).to_string();
        }
        os << ")";
    }
    os << "@" << base_.literal();
    return os.str();
}

// ---------------------------------------------------------------------------

BilinearForm diagonal_bilinear(const Field& base, const std::vector<Elem>& entries) {
    Matrix g(base, entries.size(), entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) {
        require_same(base, entries[i].field());
        if (entries[i].is_zero()) throw Error(ErrorKind::ZeroEntry, "diagonal entry " + std::to_string(i) + " is 0");
        g(i, i) = entries[i];
    }
    return BilinearForm(base, std::move(g));
}

BilinearForm bilinear_pfister(const Field& base, const std::vector<Elem>& slots) {
    BilinearForm acc = diagonal_bilinear(base, {base.one()});
    for (std::size_t i = 0; i < slots.size(); ++i) {
        if (slots[i].is_zero()) throw Error(ErrorKind::ZeroSlot, "Pfister slot " + std::to_string(i) + " is 0");
        acc = tensor_bb(acc, diagonal_bilinear(base, {base.one(), slots[i]}));
    }
    return acc;
}

QuadraticForm diagonal_quadratic(const Field& base, const std::vector<Elem>& entries) {
    Matrix m(base, entries.size(), entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) {
        require_same(base, entries[i].field());
        if (entries[i].is_zero()) throw Error(ErrorKind::ZeroEntry, "diagonal entry " + std::to_string(i) + " is 0");
        m(i, i) = entries[i];
    }
    return QuadraticForm(base, std::move(m));
}

QuadraticForm binary_quadratic(const Field& base, const Elem& a, const Elem& c) {
    require_same(base, a.field());
    require_same(base, c.field());
    Matrix m(base, 2, 2);
    m(0, 0) = a;
    m(0, 1) = a;
    m(1, 1) = a * c;
    QuadraticForm q(base, std::move(m));
    if (!q.is_nonsingular())
        throw Error(ErrorKind::SingularParameters, "binary form " + a.to_string() + "[1," + c.to_string() + "] is singular");
    return q;
}

QuadraticForm quadratic_pfister(const Field& base, const Elem& a, const std::vector<Elem>& slots) {
    return tensor(bilinear_pfister(base, slots), binary_quadratic(base, base.one(), a));
}

QuadraticForm hyperbolic_plane(const Field& base) {
    Matrix m(base, 2, 2);
    m(0, 1) = base.one();
    return QuadraticForm(base, std::move(m));
}

QuadraticForm hyperbolic_form(const Field& base, std::size_t planes) {
    Matrix m(base, 2 * planes, 2 * planes);
    for (std::size_t i = 0; i < planes; ++i) m(2 * i, 2 * i + 1) = base.one();
    return QuadraticForm(base, std::move(m));
}

QuadraticForm tensor(const BilinearForm& b, const QuadraticForm& q) {
    require_same(b.base(), q.base());
    const Field& f = q.base();
    const std::size_t n = b.dim(), m = q.dim();
    const Matrix p = q.polar_matrix();
    Matrix out(f, n * m, n * m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < m; ++k) {
            const std::size_t alpha = i * m + k;
            out(alpha, alpha) = b.gram()(i, i) * q.coeffs()(k, k);
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t l = 0; l < m; ++l) {
                    const std::size_t beta = j * m + l;
                    if (beta <= alpha) continue;
                    out(alpha, beta) = b.gram()(i, j) * p(k, l);
                }
        }
    return QuadraticForm(f, std::move(out));
}

BilinearForm tensor_bb(const BilinearForm& b1, const BilinearForm& b2) {
    require_same(b1.base(), b2.base());
    const std::size_t n = b1.dim(), m = b2.dim();
    Matrix out(b1.base(), n * m, n * m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < m; ++k)
                for (std::size_t l = 0; l < m; ++l) out(i * m + k, j * m + l) = b1.gram()(i, j) * b2.gram()(k, l);
    return BilinearForm(b1.base(), std::move(out));
}

QuadraticForm orthogonal_sum(const QuadraticForm& q1, const QuadraticForm& q2) {
    require_same(q1.base(), q2.base());
    const std::size_t n = q1.dim(), m = q2.dim();
    Matrix out(q1.base(), n + m, n + m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out(i, j) = q1.coeffs()(i, j);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) out(n + i, n + j) = q2.coeffs()(i, j);
    return QuadraticForm(q1.base(), std::move(out));
}

BilinearForm orthogonal_sum(const BilinearForm& b1, const BilinearForm& b2) {
    require_same(b1.base(), b2.base());
    const std::size_t n = b1.dim(), m = b2.dim();
    Matrix out(b1.base(), n + m, n + m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out(i, j) = b1.gram()(i, j);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) out(n + i, n + j) = b2.gram()(i, j);
    return BilinearForm(b1.base(), std::move(out));
}

QuadraticForm scale(const Elem& c, const QuadraticForm& q) {
    require_same(c.field(), q.base());
    if (c.is_zero()) throw Error(ErrorKind::ZeroScalar, "scaling by 0");
    Matrix out = q.coeffs();
    for (std::size_t i = 0; i < q.dim(); ++i)
        for (std::size_t j = i; j < q.dim(); ++j) out(i, j) = c * out(i, j);
    return QuadraticForm(q.base(), std::move(out));
}

BilinearForm scale(const Elem& c, const BilinearForm& b) {
    require_same(c.field(), b.base());
    if (c.is_zero()) throw Error(ErrorKind::ZeroScalar, "scaling by 0");
    Matrix out = b.gram();
    for (std::size_t i = 0; i < b.dim(); ++i)
        for (std::size_t j = 0; j < b.dim(); ++j) out(i, j) = c * out(i, j);
    return BilinearForm(b.base(), std::move(out));
}

QuadraticForm diagonal_part(const BilinearForm& b) {
    Matrix m(b.base(), b.dim(), b.dim());
    for (std::size_t i = 0; i < b.dim(); ++i) {
        m(i, i) = b.gram()(i, i);
        for (std::size_t j = i + 1; j < b.dim(); ++j) m(i, j) = b.gram()(i, j) + b.gram()(j, i);
    }
    return QuadraticForm(b.base(), std::move(m));
}

// ---------------------------------------------------------------------------

Diagonalization diagonalize(const QuadraticForm& q) {
    const Field& f = q.base();
    if (f.characteristic() == 2) throw Error(ErrorKind::UnsupportedField, "orthogonal bases need characteristic != 2");
    const std::size_t n = q.dim();
    Matrix g = q.polar_matrix();
    std::vector<Vec> basis = unit_basis(f, n);
    for (std::size_t k = 0; k < n; ++k) {
        if (g(k, k).is_zero()) {
            std::size_t j = k + 1;
            while (j < n && g(j, j).is_zero()) ++j;
            if (j < n) {
                swap_sym(g, basis, k, j);
            } else {
                j = k + 1;
                while (j < n && g(k, j).is_zero()) ++j;
                if (j == n) continue;  // radical vector
                add_sym(g, basis, k, j, f.one());
            }
        }
        const Elem inv = g(k, k).inv();
        for (std::size_t j = k + 1; j < n; ++j) {
            if (g(k, j).is_zero()) continue;
            add_sym(g, basis, j, k, -(g(k, j) * inv));
        }
    }
    Diagonalization d;
    const Elem half = f.from_int(2).inv();
    for (std::size_t k = 0; k < n; ++k) d.entries.push_back(g(k, k) * half);
    d.basis = std::move(basis);
    return d;
}

BilinearDecomposition decompose_bilinear(const BilinearForm& b) {
    const Field& f = b.base();
    const std::size_t n = b.dim();
    Matrix g = b.gram();
    std::vector<Vec> basis = unit_basis(f, n);
    BilinearDecomposition out;
    std::size_t k = 0;
    // Diagonal phase: positions [0, k) hold split-off anisotropic vectors.
    while (k < n) {
        std::size_t j = k;
        while (j < n && g(j, j).is_zero()) ++j;
        if (j == n && f.characteristic() != 2) {
            // b(x,x) != 0 for x = e_k + e_l whenever b(e_k, e_l) != 0.
            bool found = false;
            for (std::size_t a = k; a < n && !found; ++a)
                for (std::size_t c = a + 1; c < n && !found; ++c)
                    if (!g(a, c).is_zero()) {
                        add_sym(g, basis, a, c, f.one());
                        j = a;
                        found = true;
                    }
        }
        if (j == n) break;
        swap_sym(g, basis, k, j);
        const Elem inv = g(k, k).inv();
        for (std::size_t l = k + 1; l < n; ++l)
            if (!g(k, l).is_zero()) add_sym(g, basis, l, k, -(g(k, l) * inv));
        out.diagonal.push_back(g(k, k));
        out.diagonal_basis.push_back(basis[k]);
        ++k;
    }
    // Alternating remainder: split into hyperbolic pairs.
    while (k < n) {
        std::size_t l = k + 1;
        while (l < n && g(k, l).is_zero()) ++l;
        if (l == n) {
            ++k;  // radical
            continue;
        }
        swap_sym(g, basis, k + 1, l);
        add_sym(g, basis, k + 1, k + 1, g(k, k + 1).inv() - f.one());  // scale f so b(e,f) = 1
        for (std::size_t m = k + 2; m < n; ++m) {
            const Elem bf = g(m, k + 1), be = g(m, k);
            if (!bf.is_zero()) add_sym(g, basis, m, k, -bf);
            if (!be.is_zero()) add_sym(g, basis, m, k + 1, -be);
        }
        out.alternating_pairs.emplace_back(basis[k], basis[k + 1]);
        k += 2;
    }
    return out;
}

SymplecticDecomposition symplectic_decompose(const QuadraticForm& q) {
    const Field& f = q.base();
    if (f.characteristic() != 2) throw Error(ErrorKind::UnsupportedField, "symplectic decomposition is for characteristic 2");
    if (!q.is_nonsingular()) throw Error(ErrorKind::SingularForm, "symplectic decomposition of a singular form");
    std::vector<Vec> rest;
    for (std::size_t i = 0; i < q.dim(); ++i) rest.push_back(unit_vec(f, q.dim(), i));
    SymplecticDecomposition out;
    while (!rest.empty()) {
        const Vec e = rest.front();
        std::size_t j = 1;
        while (j < rest.size() && q.polar(e, rest[j]).is_zero()) ++j;
        if (j == rest.size()) throw Error(ErrorKind::SingularForm, "radical vector during symplectic decomposition");
        const Elem c = q.polar(e, rest[j]).inv();
        Vec fv = rest[j];
        for (auto& x : fv) x *= c;
        std::vector<Vec> next;
        for (std::size_t i = 1; i < rest.size(); ++i) {
            if (i == j) continue;
            const Vec& w = rest[i];
            Vec w2 = axpy(-q.polar(w, fv), e, w);
            w2 = axpy(-q.polar(w, e), fv, w2);
            next.push_back(std::move(w2));
        }
        out.binaries.emplace_back(q.eval(e), q.eval(fv));
        out.basis.emplace_back(e, fv);
        rest = std::move(next);
    }
    return out;
}

}  // namespace qfalg
