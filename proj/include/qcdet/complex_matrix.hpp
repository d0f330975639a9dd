#pragma once

// Dense complex matrices with value semantics. Everything in this project
// lives in composite spaces of dimension <= ~100, so matrices are stored
// densely (row-major) and operations allocate freely.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qcdet {

using Complex = std::complex<double>;

class ComplexMatrix {
public:
    ComplexMatrix() = default;

    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {
        if (rows == 0 || cols == 0)
            throw std::invalid_argument("ComplexMatrix: dimensions must be positive");
    }

    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> init) {
        rows_ = init.size();
        if (rows_ == 0)
            throw std::invalid_argument("ComplexMatrix: dimensions must be positive");
        cols_ = init.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_)
                throw std::invalid_argument("ComplexMatrix: ragged initializer");
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }

    Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    bool same_shape(const ComplexMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_; }

    ComplexMatrix& operator+=(const ComplexMatrix& o) {
        require_same_shape(o, "operator+=");
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
        return *this;
    }
    ComplexMatrix& operator-=(const ComplexMatrix& o) {
        require_same_shape(o, "operator-=");
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
        return *this;
    }
    ComplexMatrix& operator*=(Complex z) {
        for (auto& v : data_) v *= z;
        return *this;
    }

private:
    void require_same_shape(const ComplexMatrix& o, const char* op) const {
        if (!same_shape(o))
            throw std::invalid_argument(std::string(op) + ": shape mismatch");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

inline ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
inline ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
inline ComplexMatrix operator*(ComplexMatrix a, Complex z) { return a *= z; }
inline ComplexMatrix operator*(Complex z, ComplexMatrix a) { return a *= z; }

inline ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows())
        throw std::invalid_argument("matmul: inner dimensions do not match");
    ComplexMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex(0.0, 0.0)) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
        }
    return out;
}

inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) { return matmul(a, b); }

inline ComplexMatrix dagger(const ComplexMatrix& m) {
    ComplexMatrix out(m.cols(), m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) out(c, r) = std::conj(m(r, c));
    return out;
}

inline Complex trace(const ComplexMatrix& m) {
    if (m.rows() != m.cols())
        throw std::invalid_argument("trace: matrix must be square");
    Complex t = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
    return t;
}

// Kronecker product; the left factor indexes the coarse blocks.
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t ia = 0; ia < a.rows(); ++ia)
        for (std::size_t ja = 0; ja < a.cols(); ++ja) {
            const Complex w = a(ia, ja);
            if (w == Complex(0.0, 0.0)) continue;
            for (std::size_t ib = 0; ib < b.rows(); ++ib)
                for (std::size_t jb = 0; jb < b.cols(); ++jb)
                    out(ia * b.rows() + ib, ja * b.cols() + jb) = w * b(ib, jb);
        }
    return out;
}

enum class Subsystem { first, second };

// Reduce a matrix on a bipartite space (dim_first * dim_second) to the kept factor.
inline ComplexMatrix partial_trace(const ComplexMatrix& m, std::size_t dim_first,
                                   std::size_t dim_second, Subsystem keep) {
    const std::size_t d = dim_first * dim_second;
    if (m.rows() != d || m.cols() != d)
        throw std::invalid_argument("partial_trace: matrix does not match subsystem dimensions");
    if (keep == Subsystem::first) {
        ComplexMatrix out(dim_first, dim_first);
        for (std::size_t i = 0; i < dim_first; ++i)
            for (std::size_t j = 0; j < dim_first; ++j)
                for (std::size_t k = 0; k < dim_second; ++k)
                    out(i, j) += m(i * dim_second + k, j * dim_second + k);
        return out;
    }
    ComplexMatrix out(dim_second, dim_second);
    for (std::size_t k = 0; k < dim_second; ++k)
        for (std::size_t l = 0; l < dim_second; ++l)
            for (std::size_t i = 0; i < dim_first; ++i)
                out(k, l) += m(i * dim_second + k, i * dim_second + l);
    return out;
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (!a.same_shape(b))
        throw std::invalid_argument("max_abs_diff: shape mismatch");
    double worst = 0.0;
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c)
            worst = std::max(worst, std::abs(a(r, c) - b(r, c)));
    return worst;
}

inline double frobenius_norm(const ComplexMatrix& m) {
    double s = 0.0;
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) s += std::norm(m(r, c));
    return std::sqrt(s);
}

inline bool is_hermitian(const ComplexMatrix& m, double tol = 1e-12) {
    if (m.rows() != m.cols()) return false;
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = r; c < m.cols(); ++c)
            if (std::abs(m(r, c) - std::conj(m(c, r))) > tol) return false;
    return true;
}

// <u|v> for column vectors.
inline Complex inner(const ComplexMatrix& u, const ComplexMatrix& v) {
    if (u.cols() != 1 || v.cols() != 1 || u.rows() != v.rows())
        throw std::invalid_argument("inner: expects column vectors of equal length");
    Complex s = 0.0;
    for (std::size_t i = 0; i < u.rows(); ++i) s += std::conj(u(i, 0)) * v(i, 0);
    return s;
}

// |v><v| for a column vector.
inline ComplexMatrix outer(const ComplexMatrix& v) {
    if (v.cols() != 1)
        throw std::invalid_argument("outer: expects a column vector");
    ComplexMatrix out(v.rows(), v.rows());
    for (std::size_t i = 0; i < v.rows(); ++i)
        for (std::size_t j = 0; j < v.rows(); ++j)
            out(i, j) = v(i, 0) * std::conj(v(j, 0));
    return out;
}

// Re <v|M|v>; the Born-rule weight of |v> in the state M.
inline double real_expectation(const ComplexMatrix& v, const ComplexMatrix& m) {
    if (v.cols() != 1 || m.rows() != m.cols() || m.rows() != v.rows())
        throw std::invalid_argument("real_expectation: dimension mismatch");
    Complex s = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Complex row = 0.0;
        for (std::size_t j = 0; j < m.cols(); ++j) row += m(i, j) * v(j, 0);
        s += std::conj(v(i, 0)) * row;
    }
    return s.real();
}

}  // namespace qcdet
