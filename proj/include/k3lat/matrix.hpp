#pragma once

#include "numeric.hpp"

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace k3lat {

/// Dense matrix over an exact scalar type (Int or Rat). Value semantics.
template <class T>
class Mat {
  public:
    Mat() = default;
    Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    static Mat from_rows(std::initializer_list<std::initializer_list<T>> rows) {
        Mat m(rows.size(), rows.size() ? rows.begin()->size() : 0);
        std::size_t i = 0;
        for (const auto& r : rows) {
            if (r.size() != m.cols()) throw std::invalid_argument("from_rows: ragged rows");
            std::size_t j = 0;
            for (const auto& v : r) m(i, j++) = v;
            ++i;
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    bool operator==(const Mat& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }
    bool operator!=(const Mat& o) const { return !(*this == o); }

    Mat operator*(const Mat& o) const {
        if (cols_ != o.rows_) throw std::invalid_argument("Mat::operator*: shape mismatch");
        Mat r(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const T& aik = (*this)(i, k);
                if (aik == 0) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) {
                    const T& bkj = o(k, j);
                    if (bkj != 0) r(i, j) += aik * bkj;
                }
            }
        return r;
    }

    Mat operator+(const Mat& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("Mat::operator+: shape mismatch");
        Mat r = *this;
        for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] += o.a_[i];
        return r;
    }

    Mat operator-(const Mat& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("Mat::operator-: shape mismatch");
        Mat r = *this;
        for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] -= o.a_[i];
        return r;
    }

    Mat operator-() const {
        Mat r = *this;
        for (auto& v : r.a_) v = -v;
        return r;
    }

    Mat transpose() const {
        Mat r(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    std::vector<T> mul_vec(const std::vector<T>& x) const {
        if (x.size() != cols_) throw std::invalid_argument("mul_vec: size mismatch");
        std::vector<T> y(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if ((*this)(i, j) != 0) y[i] += (*this)(i, j) * x[j];
        return y;
    }

    std::vector<T> col(std::size_t j) const {
        std::vector<T> c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }

    std::vector<T> row(std::size_t i) const {
        std::vector<T> r(cols_);
        for (std::size_t j = 0; j < cols_; ++j) r[j] = (*this)(i, j);
        return r;
    }

    void set_col(std::size_t j, const std::vector<T>& c) {
        for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = c[i];
    }

    bool is_zero() const {
        for (const auto& v : a_)
            if (v != 0) return false;
        return true;
    }

    bool is_symmetric() const {
        if (rows_ != cols_) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = i + 1; j < cols_; ++j)
                if ((*this)(i, j) != (*this)(j, i)) return false;
        return true;
    }

    template <class U, class Fn>
    Mat<U> map(Fn fn) const {
        Mat<U> r(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(i, j) = fn((*this)(i, j));
        return r;
    }

  private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<T> a_;
};

using IntMat = Mat<Int>;
using RatMat = Mat<Rat>;
using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

inline RatMat to_rat(const IntMat& m) {
    return m.template map<Rat>([](const Int& v) { return Rat(v); });
}

inline RatVec to_rat(const IntVec& v) {
    RatVec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = Rat(v[i]);
    return r;
}

inline bool is_integral(const RatMat& m) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (!is_integral(m(i, j))) return false;
    return true;
}

inline IntMat to_int(const RatMat& m) {
    return m.template map<Int>([](const Rat& v) { return to_int(v); });
}

template <class T>
T dot(const std::vector<T>& a, const std::vector<T>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
    T s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

/// x^T * G * y for a symmetric matrix G.
template <class T>
T bilinear(const Mat<T>& g, const std::vector<T>& x, const std::vector<T>& y) {
    return dot(x, g.mul_vec(y));
}

inline Int content(const IntVec& v) {
    Int g = 0;
    for (const auto& x : v) g = gcd_int(g, x);
    return g;
}

}  // namespace k3lat
