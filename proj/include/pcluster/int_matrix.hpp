#pragma once

#include <cstddef>
#include <initializer_list>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pcluster {

using IntVector = std::vector<long long>;

class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols, long long fill = 0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    IntMatrix(std::initializer_list<std::initializer_list<long long>> rows) {
        rows_ = rows.size();
        cols_ = rows_ ? rows.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
            data_.insert(data_.end(), r.begin(), r.end());
        }
    }

    static IntMatrix identity(std::size_t n) {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    static IntMatrix from_columns(const std::vector<IntVector>& cols) {
        if (cols.empty()) return {};
        IntMatrix m(cols[0].size(), cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) m.set_column(j, cols[j]);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    long long& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    long long operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    IntVector column(std::size_t c) const {
        IntVector v(rows_);
        for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
        return v;
    }
    IntVector row(std::size_t r) const {
        return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                         data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
    }
    void set_column(std::size_t c, const IntVector& v) {
        if (v.size() != rows_) throw std::invalid_argument("column length mismatch");
        for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
    }

    IntMatrix transpose() const {
        IntMatrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
        return t;
    }

    IntMatrix operator-() const {
        IntMatrix m = *this;
        for (auto& x : m.data_) x = -x;
        return m;
    }

    friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
        a.require_same_shape(b);
        IntMatrix m = a;
        for (std::size_t i = 0; i < m.data_.size(); ++i) m.data_[i] += b.data_[i];
        return m;
    }
    friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) { return a + (-b); }

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product dimension mismatch");
        IntMatrix m(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                long long x = a(i, k);
                if (x == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) m(i, j) += x * b(k, j);
            }
        return m;
    }

    friend IntVector operator*(const IntMatrix& a, const IntVector& v) {
        if (a.cols_ != v.size()) throw std::invalid_argument("matrix-vector dimension mismatch");
        IntVector out(a.rows_, 0);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) out[i] += a(i, k) * v[k];
        return out;
    }

    friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    // Stack `bottom` under `top`.
    static IntMatrix vstack(const IntMatrix& top, const IntMatrix& bottom) {
        if (top.cols_ != bottom.cols_) throw std::invalid_argument("vstack column mismatch");
        IntMatrix m(top.rows_ + bottom.rows_, top.cols_);
        std::copy(top.data_.begin(), top.data_.end(), m.data_.begin());
        std::copy(bottom.data_.begin(), bottom.data_.end(),
                  m.data_.begin() + static_cast<std::ptrdiff_t>(top.data_.size()));
        return m;
    }

    IntMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
        IntMatrix m(nr, nc);
        for (std::size_t r = 0; r < nr; ++r)
            for (std::size_t c = 0; c < nc; ++c) m(r, c) = (*this)(r0 + r, c0 + c);
        return m;
    }

    IntMatrix permute_columns(const std::vector<std::size_t>& perm) const {
        IntMatrix m(rows_, cols_);
        for (std::size_t c = 0; c < cols_; ++c)
            for (std::size_t r = 0; r < rows_; ++r) m(r, c) = (*this)(r, perm[c]);
        return m;
    }

    IntMatrix permute_rows(const std::vector<std::size_t>& perm) const {
        IntMatrix m(rows_, cols_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) m(r, c) = (*this)(perm[r], c);
        return m;
    }

    std::vector<std::vector<long long>> to_rows() const {
        std::vector<std::vector<long long>> out;
        for (std::size_t r = 0; r < rows_; ++r) out.push_back(row(r));
        return out;
    }

private:
    void require_same_shape(const IntMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<long long> data_;
};

inline std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
    os << '[';
    for (std::size_t r = 0; r < m.rows(); ++r) {
        if (r) os << "; ";
        for (std::size_t c = 0; c < m.cols(); ++c) os << (c ? " " : "") << m(r, c);
    }
    return os << ']';
}

namespace detail {

inline long long narrow(__int128 x) {
    if (x > std::numeric_limits<long long>::max() || x < std::numeric_limits<long long>::min())
        throw std::overflow_error("integer matrix entry overflow");
    return static_cast<long long>(x);
}

}  // namespace detail

// Bareiss fraction-free elimination; every intermediate is a minor of the input.
inline long long determinant(const IntMatrix& m) {
    if (!m.square()) throw std::invalid_argument("determinant of non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    std::vector<__int128> a(n * n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) a[r * n + c] = m(r, c);
    auto at = [&](std::size_t r, std::size_t c) -> __int128& { return a[r * n + c]; };
    int swaps = 0;
    __int128 prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (at(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && at(p, k) == 0) ++p;
            if (p == n) return 0;
            for (std::size_t c = 0; c < n; ++c) std::swap(at(k, c), at(p, c));
            ++swaps;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j)) / prev;
                detail::narrow(at(i, j));
            }
        }
        prev = at(k, k);
    }
    __int128 d = at(n - 1, n - 1);
    return detail::narrow(swaps % 2 ? -d : d);
}

inline IntMatrix adjugate(const IntMatrix& m) {
    if (!m.square()) throw std::invalid_argument("adjugate of non-square matrix");
    const std::size_t n = m.rows();
    IntMatrix adj(n, n);
    if (n == 1) {
        adj(0, 0) = 1;
        return adj;
    }
    IntMatrix minor(n - 1, n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t r = 0, rr = 0; r < n; ++r) {
                if (r == i) continue;
                for (std::size_t c = 0, cc = 0; c < n; ++c) {
                    if (c == j) continue;
                    minor(rr, cc++) = m(r, c);
                }
                ++rr;
            }
            long long cof = determinant(minor);
            adj(j, i) = ((i + j) % 2) ? -cof : cof;
        }
    }
    return adj;
}

// Exact inverse of a matrix with determinant +1 or -1.
inline IntMatrix inverse_unimodular(const IntMatrix& m) {
    long long d = determinant(m);
    if (d != 1 && d != -1)
        throw std::domain_error("matrix is not unimodular (det = " + std::to_string(d) + ")");
    IntMatrix adj = adjugate(m);
    return d == 1 ? adj : -adj;
}

inline long long dot(const IntVector& a, const IntVector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot product length mismatch");
    long long s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace pcluster
