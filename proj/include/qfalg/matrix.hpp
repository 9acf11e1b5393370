#pragma once

// Small dense matrices over a Field, exact Gaussian elimination.

#include <vector>

#include "qfalg/field.hpp"

namespace qfalg {

using Vec = std::vector<Elem>;

class Matrix {
public:
    Matrix(Field f, std::size_t rows, std::size_t cols);
    static Matrix identity(const Field& f, std::size_t n);
    // Columns given as vectors of equal length.
    static Matrix from_columns(const Field& f, const std::vector<Vec>& cols, std::size_t rows);

    const Field& field() const { return f_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Elem& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Elem& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    Matrix transpose() const;
    Matrix operator*(const Matrix& o) const;
    Matrix operator+(const Matrix& o) const;
    Vec operator*(const Vec& v) const;
    Vec column(std::size_t j) const;

    Elem determinant() const;
    std::size_t rank() const;
    // Basis of {x : A x = 0}.
    std::vector<Vec> nullspace() const;
    // Throws DivisionByZero when singular.
    Matrix inverse() const;

    bool operator==(const Matrix& o) const;

private:
    Field f_;
    std::size_t rows_, cols_;
    std::vector<Elem> a_;
};

Vec zero_vec(const Field& f, std::size_t n);
Vec unit_vec(const Field& f, std::size_t n, std::size_t i);
Vec axpy(const Elem& a, const Vec& x, const Vec& y);  // a*x + y
bool is_zero_vec(const Vec& v);

// Indices of a maximal linearly independent subset of `vectors`, greedily in order.
std::vector<std::size_t> independent_subset(const Field& f, const std::vector<Vec>& vectors);

}  // namespace qfalg
