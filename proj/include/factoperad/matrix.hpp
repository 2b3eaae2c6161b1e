#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "factoperad/error.hpp"
#include "factoperad/field.hpp"

namespace factoperad {

/// Dense row-major matrix over an exact field.
///
/// Tensor products follow the lexicographic convention: in A (x) B the basis
/// vector e_i (x) e_j has index i * dim(B) + j, so the left factor is the most
/// significant digit.
template <class Field>
class Matrix {
public:
    using value_type = typename Field::value_type;

    Matrix() = default;
    Matrix(Field field, std::size_t rows, std::size_t cols)
        : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, field_.zero())
    {
    }
    Matrix(Field field, std::size_t rows, std::size_t cols, std::vector<value_type> entries)
        : field_(std::move(field)), rows_(rows), cols_(cols), data_(std::move(entries))
    {
        if (data_.size() != rows_ * cols_)
            throw InvalidArgument("matrix entry count does not match its shape");
    }

    static Matrix identity(const Field& field, std::size_t n)
    {
        Matrix m(field, n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = field.one();
        return m;
    }

    static Matrix scalar(const Field& field, std::size_t n, const value_type& c)
    {
        Matrix m(field, n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = c;
        return m;
    }

    /// Integer entries, row-major; convenient in tests.
    static Matrix from_ints(const Field& field, std::size_t rows, std::size_t cols,
                            std::initializer_list<long> values)
    {
        if (values.size() != rows * cols)
            throw InvalidArgument("matrix entry count does not match its shape");
        std::vector<value_type> data;
        data.reserve(values.size());
        for (long v : values)
            data.push_back(field.from_int(v));
        return Matrix(field, rows, cols, std::move(data));
    }

    const Field& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    value_type& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const value_type& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    std::span<const value_type> entries() const { return data_; }

    friend Matrix operator*(const Matrix& a, const Matrix& b)
    {
        if (a.cols_ != b.rows_)
            throw InvalidArgument("matrix product shape mismatch: " + a.shape() + " * " + b.shape());
        const Field& f = a.field_;
        Matrix out(f, a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const value_type& aik = a(i, k);
                if (f.is_zero(aik))
                    continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    if (!f.is_zero(b(k, j)))
                        out(i, j) = f.add(out(i, j), f.mul(aik, b(k, j)));
            }
        return out;
    }

    friend Matrix operator+(const Matrix& a, const Matrix& b)
    {
        a.require_same_shape(b);
        Matrix out = a;
        for (std::size_t i = 0; i < out.data_.size(); ++i)
            out.data_[i] = a.field_.add(a.data_[i], b.data_[i]);
        return out;
    }

    friend Matrix operator-(const Matrix& a, const Matrix& b)
    {
        a.require_same_shape(b);
        Matrix out = a;
        for (std::size_t i = 0; i < out.data_.size(); ++i)
            out.data_[i] = a.field_.sub(a.data_[i], b.data_[i]);
        return out;
    }

    Matrix operator-() const
    {
        Matrix out = *this;
        for (auto& v : out.data_)
            v = field_.neg(v);
        return out;
    }

    Matrix scaled(const value_type& c) const
    {
        Matrix out = *this;
        for (auto& v : out.data_)
            v = field_.mul(c, v);
        return out;
    }

    friend bool operator==(const Matrix& a, const Matrix& b)
    {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            return false;
        for (std::size_t i = 0; i < a.data_.size(); ++i)
            if (!a.field_.equal(a.data_[i], b.data_[i]))
                return false;
        return true;
    }

    /// First (row, col) where the two matrices differ; nullopt if equal.
    /// Matrices of different shapes differ at (rows, cols) of the smaller.
    std::optional<std::pair<std::size_t, std::size_t>> first_difference(const Matrix& other) const
    {
        if (rows_ != other.rows_ || cols_ != other.cols_)
            return std::pair{std::min(rows_, other.rows_), std::min(cols_, other.cols_)};
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c)
                if (!field_.equal((*this)(r, c), other(r, c)))
                    return std::pair{r, c};
        return std::nullopt;
    }

    bool is_identity() const { return is_square() && *this == identity(field_, rows_); }

    std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

private:
    void require_same_shape(const Matrix& b) const
    {
        if (rows_ != b.rows_ || cols_ != b.cols_)
            throw InvalidArgument("matrix shape mismatch: " + shape() + " vs " + b.shape());
    }

    Field field_{};
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<value_type> data_;
};

template <class Field>
Matrix<Field> kron(const Matrix<Field>& a, const Matrix<Field>& b)
{
    const Field& f = a.field();
    Matrix<Field> out(f, a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (f.is_zero(a(i, j)))
                continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = f.mul(a(i, j), b(k, l));
        }
    return out;
}

/// Kronecker product of a list of matrices, left to right. The empty product
/// is the 1x1 identity.
template <class Field>
Matrix<Field> kron_all(const Field& field, std::span<const Matrix<Field>> factors)
{
    Matrix<Field> out = Matrix<Field>::identity(field, 1);
    for (const auto& m : factors)
        out = kron(out, m);
    return out;
}

template <class Field>
Matrix<Field> kron_power(const Matrix<Field>& a, int n)
{
    Matrix<Field> out = Matrix<Field>::identity(a.field(), 1);
    for (int i = 0; i < n; ++i)
        out = kron(out, a);
    return out;
}

/// Gauss-Jordan elimination; nullopt when singular.
template <class Field>
std::optional<Matrix<Field>> try_inverse(const Matrix<Field>& m)
{
    if (!m.is_square())
        throw InvalidArgument("inverse of non-square matrix " + m.shape());
    const Field& f = m.field();
    const std::size_t n = m.rows();
    Matrix<Field> a = m;
    Matrix<Field> inv = Matrix<Field>::identity(f, n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && f.is_zero(a(pivot, col)))
            ++pivot;
        if (pivot == n)
            return std::nullopt;
        if (pivot != col)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(pivot, j), a(col, j));
                std::swap(inv(pivot, j), inv(col, j));
            }
        auto scale = f.inv(a(col, col));
        for (std::size_t j = 0; j < n; ++j) {
            a(col, j) = f.mul(a(col, j), scale);
            inv(col, j) = f.mul(inv(col, j), scale);
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || f.is_zero(a(r, col)))
                continue;
            auto factor = a(r, col);
            for (std::size_t j = 0; j < n; ++j) {
                a(r, j) = f.sub(a(r, j), f.mul(factor, a(col, j)));
                inv(r, j) = f.sub(inv(r, j), f.mul(factor, inv(col, j)));
            }
        }
    }
    return inv;
}

template <class Field>
Matrix<Field> inverse(const Matrix<Field>& m)
{
    auto inv = try_inverse(m);
    if (!inv)
        throw SingularMatrix("matrix " + m.shape() + " is not invertible");
    return *std::move(inv);
}

template <class Field>
bool is_invertible(const Matrix<Field>& m)
{
    return m.is_square() && try_inverse(m).has_value();
}

/// Matrix of the linear map that reorders tensor factors.
///
/// `dims[k]` is the dimension of source factor k; `order[p]` names the source
/// factor that lands in target position p.
template <class Field>
Matrix<Field> factor_permutation(const Field& field, std::span<const std::size_t> dims,
                                 std::span<const int> order)
{
    const std::size_t k = dims.size();
    if (order.size() != k)
        throw InvalidArgument("factor permutation arity mismatch");
    std::size_t total = 1;
    for (auto d : dims)
        total *= d;
    std::vector<std::size_t> src_stride(k, 1);
    for (std::size_t i = k; i-- > 1;)
        src_stride[i - 1] = src_stride[i] * dims[i];
    Matrix<Field> out(field, total, total);
    std::vector<std::size_t> digit(k, 0);  // digits of the source index
    for (std::size_t src = 0; src < total; ++src) {
        std::size_t rem = src;
        for (std::size_t i = 0; i < k; ++i) {
            digit[i] = rem / src_stride[i];
            rem %= src_stride[i];
        }
        std::size_t dst = 0;
        for (std::size_t p = 0; p < k; ++p)
            dst = dst * dims[order[p]] + digit[order[p]];
        out(dst, src) = field.one();
    }
    return out;
}

/// Rows in brackets, entries formatted by the field.
template <class Field>
std::ostream& operator<<(std::ostream& os, const Matrix<Field>& m)
{
    os << "[";
    for (std::size_t r = 0; r < m.rows(); ++r) {
        os << (r ? ", [" : "[");
        for (std::size_t c = 0; c < m.cols(); ++c)
            os << (c ? " " : "") << m.field().format(m(r, c));
        os << "]";
    }
    return os << "]";
}

}  // namespace factoperad
