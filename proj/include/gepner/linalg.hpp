#pragma once

#include <Eigen/Core>
#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/traits/is_byte_container.hpp>
#include <concepts>
#include <optional>
#include <vector>

#include "gepner/exactmath.hpp"

// Eigen 3.4 expressions declare const_iterator = void, which the Boost trait cannot inspect.
namespace boost::multiprecision::detail {
template <class C>
    requires std::derived_from<C, Eigen::EigenBase<C>>
struct is_byte_container<C> : boost::false_type {};
}  // namespace boost::multiprecision::detail

namespace Eigen {
template <>
struct NumTraits<gepner::CycloNum> : GenericNumTraits<gepner::CycloNum> {
    typedef gepner::CycloNum Real;
    typedef gepner::CycloNum NonInteger;
    typedef gepner::CycloNum Nested;
    typedef int Literal;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 1,
        AddCost = 8,
        MulCost = 32
    };
    static inline int digits10() { return 0; }
    static inline int max_digits10() { return 0; }
};
}  // namespace Eigen

namespace gepner {

template <class S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;
template <class S>
using RowVec = Eigen::Matrix<S, 1, Eigen::Dynamic>;

using QMat = Mat<Rational>;
using QVec = Vec<Rational>;
using CMat = Mat<CycloNum>;
using CVec = Vec<CycloNum>;
using CRow = RowVec<CycloNum>;

template <class S>
bool is_zero_scalar(const S& x) {
    return x == S(0);
}

template <class A, class B>
bool equal(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            if (!(a(i, j) == b(i, j))) return false;
    return true;
}

template <class S>
struct Echelon {
    Mat<S> rref;
    std::vector<int> pivots;  // pivot column of each nonzero row
};

// Reduced row echelon form over an exact field.
template <class S>
Echelon<S> row_reduce(Mat<S> m) {
    Echelon<S> out;
    const Eigen::Index rows = m.rows(), cols = m.cols();
    Eigen::Index r = 0;
    for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
        Eigen::Index piv = -1;
        for (Eigen::Index i = r; i < rows; ++i)
            if (!is_zero_scalar(m(i, c))) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != r) m.row(piv).swap(m.row(r));
        S inv = S(1) / m(r, c);
        for (Eigen::Index j = c; j < cols; ++j) m(r, j) = m(r, j) * inv;
        for (Eigen::Index i = 0; i < rows; ++i) {
            if (i == r || is_zero_scalar(m(i, c))) continue;
            S f = m(i, c);
            for (Eigen::Index j = c; j < cols; ++j) m(i, j) = m(i, j) - f * m(r, j);
        }
        out.pivots.push_back(static_cast<int>(c));
        ++r;
    }
    out.rref = std::move(m);
    return out;
}

template <class S>
int rank(const Mat<S>& m) {
    return static_cast<int>(row_reduce(m).pivots.size());
}

// Columns form a basis of {v : m v = 0}.
template <class S>
Mat<S> kernel(const Mat<S>& m) {
    auto e = row_reduce(m);
    const Eigen::Index cols = m.cols();
    std::vector<bool> is_piv(cols, false);
    for (int p : e.pivots) is_piv[p] = true;
    std::vector<Eigen::Index> free;
    for (Eigen::Index c = 0; c < cols; ++c)
        if (!is_piv[c]) free.push_back(c);
    Mat<S> k = Mat<S>::Constant(cols, static_cast<Eigen::Index>(free.size()), S(0));
    for (size_t f = 0; f < free.size(); ++f) {
        k(free[f], f) = S(1);
        for (size_t r = 0; r < e.pivots.size(); ++r) k(e.pivots[r], f) = -e.rref(r, free[f]);
    }
    return k;
}

template <class S>
std::optional<Vec<S>> solve(const Mat<S>& a, const Vec<S>& b) {
    Mat<S> aug(a.rows(), a.cols() + 1);
    aug.leftCols(a.cols()) = a;
    aug.col(a.cols()) = b;
    auto e = row_reduce(aug);
    Vec<S> x = Vec<S>::Constant(a.cols(), S(0));
    for (size_t r = 0; r < e.pivots.size(); ++r) {
        if (e.pivots[r] == a.cols()) return std::nullopt;
        x(e.pivots[r]) = e.rref(r, a.cols());
    }
    return x;
}

template <class S>
std::optional<Mat<S>> inverse(const Mat<S>& a) {
    const Eigen::Index n = a.rows();
    if (a.cols() != n) return std::nullopt;
    Mat<S> aug(n, 2 * n);
    aug.leftCols(n) = a;
    aug.rightCols(n) = Mat<S>::Identity(n, n);
    auto e = row_reduce(aug);
    if (static_cast<Eigen::Index>(e.pivots.size()) < n || e.pivots[n - 1] >= n) return std::nullopt;
    return Mat<S>(e.rref.rightCols(n));
}

template <class S>
Mat<S> mat_pow(const Mat<S>& a, int k) {
    Mat<S> r = Mat<S>::Identity(a.rows(), a.cols());
    for (int i = 0; i < k; ++i) r = r * a;
    return r;
}

template <class S>
S determinant(const Mat<S>& a) {
    Mat<S> m = a;
    const Eigen::Index n = m.rows();
    S det = S(1);
    for (Eigen::Index c = 0; c < n; ++c) {
        Eigen::Index piv = -1;
        for (Eigen::Index i = c; i < n; ++i)
            if (!is_zero_scalar(m(i, c))) {
                piv = i;
                break;
            }
        if (piv < 0) return S(0);
        if (piv != c) {
            m.row(piv).swap(m.row(c));
            det = -det;
        }
        det = det * m(c, c);
        for (Eigen::Index i = c + 1; i < n; ++i) {
            if (is_zero_scalar(m(i, c))) continue;
            S f = m(i, c) / m(c, c);
            for (Eigen::Index j = c; j < n; ++j) m(i, j) = m(i, j) - f * m(c, j);
        }
    }
    return det;
}

inline CMat to_cyclo(const QMat& m) {
    CMat r(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) r(i, j) = CycloNum(m(i, j));
    return r;
}

}  // namespace gepner
