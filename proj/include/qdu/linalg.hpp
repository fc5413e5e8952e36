#pragma once

// Small exact linear algebra: dense matrices for Hilbert data and an
// incremental sparse row-echelon basis over any exact field.

#include "qdu/scalar.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace qdu {

template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    bool is_zero() const {
        for (const auto& x : data_)
            if (x != 0) return false;
        return true;
    }

    T sum() const {
        T s(0);
        for (const auto& x : data_) s += x;
        return s;
    }

    Matrix transposed() const {
        Matrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
        return t;
    }

    Matrix& operator+=(const Matrix& o) {
        check_same(o);
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        check_same(o);
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
        return *this;
    }
    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator-(Matrix a) {
        for (auto& x : a.data_) x = -x;
        return a;
    }
    friend Matrix operator*(const T& s, Matrix a) {
        for (auto& x : a.data_) x *= s;
        return a;
    }
    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw InputError("matrix shape mismatch in product");
        Matrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T& aik = a(i, k);
                if (aik == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
            }
        return c;
    }
    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    friend std::ostream& operator<<(std::ostream& os, const Matrix& m) {
        os << '[';
        for (std::size_t r = 0; r < m.rows_; ++r) {
            os << (r ? ",[" : "[");
            for (std::size_t c = 0; c < m.cols_; ++c) os << (c ? "," : "") << m(r, c);
            os << ']';
        }
        return os << ']';
    }

private:
    void check_same(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw InputError("matrix shape mismatch");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using IntMatrix = Matrix<mpz_class>;

/// Sparse vector: column index -> nonzero entry.
template <class T>
using SparseVector = std::map<std::size_t, T>;

inline Scalar field_inverse(const Scalar& s) { return 1 / s; }
inline bool field_is_zero(const Scalar& s) { return is_zero(s); }

/// Incrementally maintained row-echelon basis. Rows are kept with unit pivots
/// and each row vanishes at the pivots of all earlier rows, so a single pass
/// in insertion order fully reduces a candidate vector.
template <class T>
class EchelonBasis {
public:
    /// Reduces v against the basis; returns the remainder (zero iff v is in the span).
    SparseVector<T> reduce(SparseVector<T> v) const {
        for (const auto& row : rows_) {
            auto it = v.find(row.pivot);
            if (it == v.end()) continue;
            const T factor = it->second;
            for (const auto& [col, x] : row.entries) {
                auto& slot = v[col];
                slot -= factor * x;
                if (field_is_zero(slot)) v.erase(col);
            }
        }
        return v;
    }

    bool contains(const SparseVector<T>& v) const { return reduce(v).empty(); }

    /// Adds v to the span; returns true when v was independent.
    bool insert(const SparseVector<T>& v) {
        auto r = reduce(v);
        if (r.empty()) return false;
        const auto pivot = r.begin()->first;
        const T inv = field_inverse(r.begin()->second);
        for (auto& [col, x] : r) x *= inv;
        rows_.push_back({pivot, std::move(r)});
        return true;
    }

    std::size_t rank() const { return rows_.size(); }

private:
    struct Row {
        std::size_t pivot;
        SparseVector<T> entries;
    };
    std::vector<Row> rows_;
};

template <class T>
std::size_t rank_of(const std::vector<SparseVector<T>>& vectors) {
    EchelonBasis<T> basis;
    for (const auto& v : vectors) basis.insert(v);
    return basis.rank();
}

/// Assigns stable column indices to keys as they are first seen.
template <class Key, class Compare = std::less<Key>>
class ColumnIndex {
public:
    std::size_t operator()(const Key& k) {
        auto [it, inserted] = index_.try_emplace(k, keys_.size());
        if (inserted) keys_.push_back(k);
        return it->second;
    }
    std::optional<std::size_t> find(const Key& k) const {
        auto it = index_.find(k);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }
    const Key& key(std::size_t i) const { return keys_[i]; }
    std::size_t size() const { return keys_.size(); }

private:
    std::map<Key, std::size_t, Compare> index_;
    std::vector<Key> keys_;
};

}  // namespace qdu
