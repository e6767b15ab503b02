#pragma once

#include <svineq/error.hpp>

#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace svineq {

using Scalar = std::complex<double>;

enum class Field { real, complex };

inline const char* to_string(Field f) { return f == Field::real ? "real" : "complex"; }

inline bool is_finite(const Scalar& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

/// Dense rectangular matrix over the real or complex field, stored row-major.
///
/// A real matrix keeps every imaginary part at exactly zero. Entries are always
/// finite. Both invariants are enforced at construction and on every `set`,
/// so a Matrix that exists is valid.
class Matrix {
public:
    /// rows x cols zero matrix.
    Matrix(std::size_t rows, std::size_t cols, Field field = Field::real)
        : rows_(rows), cols_(cols), field_(field), data_(rows * cols) {
        check_shape(rows, cols);
    }

    Matrix(std::size_t rows, std::size_t cols, Field field, std::vector<Scalar> data)
        : rows_(rows), cols_(cols), field_(field), data_(std::move(data)) {
        check_shape(rows, cols);
        if (data_.size() != rows * cols) {
            throw DimensionError("matrix data length " + std::to_string(data_.size()) + " != rows*cols = " +
                                 std::to_string(rows * cols));
        }
        for (const auto& z : data_) {
            validate_entry(z);
        }
    }

    /// Real matrix from nested rows, e.g. `Matrix::real({{1, 2}, {3, 4}})`.
    static Matrix real(std::initializer_list<std::initializer_list<double>> rows) {
        std::size_t r = rows.size();
        std::size_t c = r == 0 ? 0 : rows.begin()->size();
        std::vector<Scalar> data;
        data.reserve(r * c);
        for (const auto& row : rows) {
            if (row.size() != c) {
                throw DimensionError("ragged row in matrix literal");
            }
            for (double x : row) {
                data.emplace_back(x, 0.0);
            }
        }
        return Matrix(r, c, Field::real, std::move(data));
    }

    static Matrix diagonal(std::span<const double> diag, Field field = Field::real) {
        Matrix m(diag.size(), diag.size(), field);
        for (std::size_t i = 0; i < diag.size(); ++i) {
            m.set(i, i, diag[i]);
        }
        return m;
    }

    static Matrix diagonal(std::initializer_list<double> diag, Field field = Field::real) {
        return diagonal(std::span<const double>(diag.begin(), diag.size()), field);
    }

    static Matrix identity(std::size_t n, Field field = Field::real) {
        Matrix m(n, n, field);
        for (std::size_t i = 0; i < n; ++i) {
            m.set(i, i, 1.0);
        }
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    Field field() const noexcept { return field_; }
    bool is_square() const noexcept { return rows_ == cols_; }
    std::size_t min_dim() const noexcept { return rows_ < cols_ ? rows_ : cols_; }

    const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    void set(std::size_t i, std::size_t j, Scalar value) {
        validate_entry(value);
        data_[i * cols_ + j] = value;
    }

    std::span<const Scalar> data() const noexcept { return data_; }

    bool same_shape(const Matrix& other) const noexcept {
        return rows_ == other.rows_ && cols_ == other.cols_ && field_ == other.field_;
    }

    /// Bitwise equality of shape, field, and every entry.
    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    static void check_shape(std::size_t rows, std::size_t cols) {
        if (rows == 0 || cols == 0) {
            throw DimensionError("matrix dimensions must be positive");
        }
    }

    void validate_entry(const Scalar& z) const {
        if (!is_finite(z)) {
            throw Error("non-finite matrix entry");
        }
        if (field_ == Field::real && z.imag() != 0.0) {
            throw Error("nonzero imaginary part in a real matrix");
        }
    }

    std::size_t rows_;
    std::size_t cols_;
    Field field_;
    std::vector<Scalar> data_;
};

/// The (A, B) operand pair of every bound. Both matrices share rows, cols and field.
class MatrixPair {
public:
    MatrixPair(Matrix a, Matrix b) : a_(std::move(a)), b_(std::move(b)) {
        if (!a_.same_shape(b_)) {
            throw DimensionError("matrix pair shape mismatch: " + std::to_string(a_.rows()) + "x" +
                                 std::to_string(a_.cols()) + " " + to_string(a_.field()) + " vs " +
                                 std::to_string(b_.rows()) + "x" + std::to_string(b_.cols()) + " " +
                                 to_string(b_.field()));
        }
    }

    const Matrix& a() const noexcept { return a_; }
    const Matrix& b() const noexcept { return b_; }

private:
    Matrix a_;
    Matrix b_;
};

inline Matrix add(const Matrix& a, const Matrix& b) {
    if (!a.same_shape(b)) {
        throw DimensionError("add: shape mismatch");
    }
    std::vector<Scalar> out(a.data().size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = a.data()[i] + b.data()[i];
    }
    return Matrix(a.rows(), a.cols(), a.field(), std::move(out));
}

inline Matrix add(const MatrixPair& p) { return add(p.a(), p.b()); }

inline Matrix negate(const Matrix& m) {
    std::vector<Scalar> out(m.data().size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = -m.data()[i];
    }
    return Matrix(m.rows(), m.cols(), m.field(), std::move(out));
}

/// Conjugate transpose.
inline Matrix adjoint(const Matrix& m) {
    std::vector<Scalar> out(m.data().size());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            out[j * m.rows() + i] = std::conj(m(i, j));
        }
    }
    return Matrix(m.cols(), m.rows(), m.field(), std::move(out));
}

inline Matrix multiply(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) {
        throw DimensionError("multiply: inner dimensions differ");
    }
    Field field = (a.field() == Field::complex || b.field() == Field::complex) ? Field::complex : Field::real;
    std::vector<Scalar> out(a.rows() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t l = 0; l < a.cols(); ++l) {
            const Scalar x = a(i, l);
            for (std::size_t j = 0; j < b.cols(); ++j) {
                out[i * b.cols() + j] += x * b(l, j);
            }
        }
    }
    return Matrix(a.rows(), b.cols(), field, std::move(out));
}

inline double frobenius_norm_squared(const Matrix& m) {
    double acc = 0.0;
    for (const auto& z : m.data()) {
        acc += std::norm(z);
    }
    return acc;
}

inline double frobenius_norm(const Matrix& m) { return std::sqrt(frobenius_norm_squared(m)); }

} // namespace svineq
