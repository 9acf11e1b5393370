#include "qfalg/matrix.hpp"

namespace qfalg {

Matrix::Matrix(Field f, std::size_t rows, std::size_t cols)
    : f_(std::move(f)), rows_(rows), cols_(cols), a_(rows * cols, f_.zero()) {}

Matrix Matrix::identity(const Field& f, std::size_t n) {
    Matrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = f.one();
    return m;
}

Matrix Matrix::from_columns(const Field& f, const std::vector<Vec>& cols, std::size_t rows) {
    Matrix m(f, rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j].at(i);
    return m;
}

Matrix Matrix::transpose() const {
    Matrix t(f_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Matrix Matrix::operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw Error(ErrorKind::InvalidArgument, "matrix shape mismatch");
    Matrix r(f_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Elem& x = (*this)(i, k);
            if (x.is_zero()) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) {
                const Elem& y = o(k, j);
                if (!y.is_zero()) r(i, j) += x * y;
            }
        }
    return r;
}

Matrix Matrix::operator+(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw Error(ErrorKind::InvalidArgument, "matrix shape mismatch");
    Matrix r(f_, rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
    return r;
}

Vec Matrix::operator*(const Vec& v) const {
    if (v.size() != cols_) throw Error(ErrorKind::InvalidArgument, "matrix/vector shape mismatch");
    Vec r = zero_vec(f_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (!v[j].is_zero() && !(*this)(i, j).is_zero()) r[i] += (*this)(i, j) * v[j];
    return r;
}

Vec Matrix::column(std::size_t j) const {
    Vec c;
    c.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c.push_back((*this)(i, j));
    return c;
}

namespace {

// Row-reduces in place; returns pivot columns. Tracks determinant sign/scale if det != nullptr.
std::vector<std::size_t> row_reduce(Matrix& m, Elem* det) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t piv = r;
        while (piv < m.rows() && m(piv, c).is_zero()) ++piv;
        if (piv == m.rows()) continue;
        if (piv != r) {
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(r, j));
            if (det) *det = -*det;
        }
        const Elem p = m(r, c);
        if (det) *det *= p;
        const Elem pinv = p.inv();
        for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= pinv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c).is_zero()) continue;
            const Elem f = m(i, c);
            for (std::size_t j = c; j < m.cols(); ++j)
                if (!m(r, j).is_zero()) m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

Elem Matrix::determinant() const {
    if (rows_ != cols_) throw Error(ErrorKind::InvalidArgument, "determinant of non-square matrix");
    Matrix m = *this;
    Elem det = f_.one();
    auto piv = row_reduce(m, &det);
    if (piv.size() < rows_) return f_.zero();
    return det;
}

std::size_t Matrix::rank() const {
    Matrix m = *this;
    return row_reduce(m, nullptr).size();
}

std::vector<Vec> Matrix::nullspace() const {
    Matrix m = *this;
    auto piv = row_reduce(m, nullptr);
    std::vector<bool> is_piv(cols_, false);
    for (auto c : piv) is_piv[c] = true;
    std::vector<Vec> basis;
    for (std::size_t free = 0; free < cols_; ++free) {
        if (is_piv[free]) continue;
        Vec v = zero_vec(f_, cols_);
        v[free] = f_.one();
        for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -m(r, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

Matrix Matrix::inverse() const {
    if (rows_ != cols_) throw Error(ErrorKind::InvalidArgument, "inverse of non-square matrix");
    Matrix aug(f_, rows_, 2 * cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) aug(i, j) = (*this)(i, j);
        aug(i, cols_ + i) = f_.one();
    }
    auto piv = row_reduce(aug, nullptr);
    if (piv.size() < rows_ || piv.back() >= cols_) throw Error(ErrorKind::DivisionByZero, "singular matrix");
    Matrix inv(f_, rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) inv(i, j) = aug(i, cols_ + j);
    return inv;
}

bool Matrix::operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

Vec zero_vec(const Field& f, std::size_t n) { return Vec(n, f.zero()); }

Vec unit_vec(const Field& f, std::size_t n, std::size_t i) {
    Vec v = zero_vec(f, n);
    v.at(i) = f.one();
    return v;
}

Vec axpy(const Elem& a, const Vec& x, const Vec& y) {
    Vec r = y;
    if (a.is_zero()) return r;
    for (std::size_t i = 0; i < r.size(); ++i)
        if (!x[i].is_zero()) r[i] += a * x[i];
    return r;
}

bool is_zero_vec(const Vec& v) {
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

std::vector<std::size_t> independent_subset(const Field& f, const std::vector<Vec>& vectors) {
    std::vector<std::size_t> chosen;
    std::vector<Vec> echelon;  // reduced rows with recorded pivot
    std::vector<std::size_t> pivots;
    for (std::size_t idx = 0; idx < vectors.size(); ++idx) {
        Vec v = vectors[idx];
        for (std::size_t r = 0; r < echelon.size(); ++r)
            if (!v[pivots[r]].is_zero()) v = axpy(-v[pivots[r]], echelon[r], v);
        std::size_t p = 0;
        while (p < v.size() && v[p].is_zero()) ++p;
        if (p == v.size()) continue;
        const Elem inv = v[p].inv();
        for (auto& x : v) x *= inv;
        for (auto& row : echelon)
            if (!row[p].is_zero()) row = axpy(-row[p], v, row);
        echelon.push_back(std::move(v));
        pivots.push_back(p);
        chosen.push_back(idx);
    }
    (void)f;
    return chosen;
}

}  // namespace qfalg
