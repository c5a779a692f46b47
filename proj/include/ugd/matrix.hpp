#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "ugd/errors.hpp"
#include "ugd/rng.hpp"

namespace ugd {

// Row-major dense matrix of doubles. All linear algebra in this project runs
// through this type; kernels are free functions below.
class DenseMatrix {
public:
    DenseMatrix() = default;

    DenseMatrix(int rows, int cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, fill) {
        require(rows >= 0 && cols >= 0, "matrix dimensions must be non-negative");
    }

    static DenseMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows) {
        const int r = static_cast<int>(rows.size());
        const int c = r == 0 ? 0 : static_cast<int>(rows.begin()->size());
        DenseMatrix m(r, c);
        int i = 0;
        for (const auto& row : rows) {
            require(static_cast<int>(row.size()) == c, "ragged initializer");
            int j = 0;
            for (double v : row) m(i, j++) = v;
            ++i;
        }
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }

    double& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
    double operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

    double* row(int i) { return data_.data() + static_cast<std::size_t>(i) * cols_; }
    const double* row(int i) const { return data_.data() + static_cast<std::size_t>(i) * cols_; }

    std::vector<double>& data() { return data_; }
    const std::vector<double>& data() const { return data_; }

    bool same_shape(const DenseMatrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_;
    }

    bool all_finite() const {
        for (double v : data_)
            if (!std::isfinite(v)) return false;
        return true;
    }

    void fill(double v) { std::fill(data_.begin(), data_.end(), v); }

    friend bool operator==(const DenseMatrix& a, const DenseMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> data_;
};

// C = A * B
inline DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
    require(a.cols() == b.rows(), "matmul: inner dimensions differ");
    DenseMatrix c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        double* crow = c.row(i);
        for (int k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            const double* brow = b.row(k);
            for (int j = 0; j < b.cols(); ++j) crow[j] += aik * brow[j];
        }
    }
    return c;
}

// C = A^T * B  (A is n x p, B is n x q, C is p x q)
inline DenseMatrix matmul_tn(const DenseMatrix& a, const DenseMatrix& b) {
    require(a.rows() == b.rows(), "matmul_tn: row counts differ");
    DenseMatrix c(a.cols(), b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        const double* brow = b.row(i);
        for (int k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            double* crow = c.row(k);
            for (int j = 0; j < b.cols(); ++j) crow[j] += aik * brow[j];
        }
    }
    return c;
}

// C = A * B^T  (A is n x p, B is q x p, C is n x q)
inline DenseMatrix matmul_nt(const DenseMatrix& a, const DenseMatrix& b) {
    require(a.cols() == b.cols(), "matmul_nt: column counts differ");
    DenseMatrix c(a.rows(), b.rows());
    for (int i = 0; i < a.rows(); ++i) {
        const double* arow = a.row(i);
        for (int j = 0; j < b.rows(); ++j) {
            const double* brow = b.row(j);
            double dot = 0.0;
            for (int k = 0; k < a.cols(); ++k) dot += arow[k] * brow[k];
            c(i, j) = dot;
        }
    }
    return c;
}

inline void add_scaled(DenseMatrix& dst, const DenseMatrix& src, double scale) {
    require(dst.same_shape(src), "add_scaled: shape mismatch");
    for (std::size_t i = 0; i < dst.size(); ++i) dst.data()[i] += scale * src.data()[i];
}

inline DenseMatrix scaled(const DenseMatrix& m, double scale) {
    DenseMatrix out = m;
    for (double& v : out.data()) v *= scale;
    return out;
}

inline double frobenius_norm(const DenseMatrix& m) {
    double s = 0.0;
    for (double v : m.data()) s += v * v;
    return std::sqrt(s);
}

inline void relu_inplace(DenseMatrix& m) {
    for (double& v : m.data())
        if (v < 0.0) v = 0.0;
}

// Zeroes entries of grad where the pre-activation was <= 0.
inline void relu_backward_inplace(DenseMatrix& grad, const DenseMatrix& pre_activation) {
    require(grad.same_shape(pre_activation), "relu_backward: shape mismatch");
    for (std::size_t i = 0; i < grad.size(); ++i)
        if (pre_activation.data()[i] <= 0.0) grad.data()[i] = 0.0;
}

inline void assert_finite(const DenseMatrix& m, const char* what) {
    if (!m.all_finite()) throw NumericError(std::string("non-finite values in ") + what);
}

// Glorot-uniform initialization, seeded.
inline DenseMatrix glorot_uniform(int fan_in, int fan_out, Rng& rng) {
    DenseMatrix w(fan_in, fan_out);
    const double bound = std::sqrt(6.0 / (fan_in + fan_out));
    for (double& v : w.data()) v = rng.uniform(-bound, bound);
    return w;
}

} // namespace ugd
