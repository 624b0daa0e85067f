#pragma once

#include "field.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace phantomcat {

/// Dense row-major matrix over an exact field.
template <class F>
class Matrix {
public:
    using field_type = F;
    using value_type = typename F::value_type;

    Matrix() = default;
    Matrix(const F& field, std::size_t rows, std::size_t cols)
        : field_(field), rows_(rows), cols_(cols), data_(rows * cols, field.zero()) {}

    static Matrix identity(const F& field, std::size_t n) {
        Matrix m(field, n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
        return m;
    }

    static Matrix from_rows(const F& field, const std::vector<std::vector<value_type>>& rows) {
        std::size_t c = rows.empty() ? 0 : rows.front().size();
        Matrix m(field, rows.size(), c);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != c) throw std::invalid_argument("ragged rows in matrix literal");
            for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    static Matrix from_ints(const F& field, const std::vector<std::vector<long long>>& rows) {
        std::size_t c = rows.empty() ? 0 : rows.front().size();
        Matrix m(field, rows.size(), c);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != c) throw std::invalid_argument("ragged rows in matrix literal");
            for (std::size_t j = 0; j < c; ++j) m(i, j) = field.from_int(rows[i][j]);
        }
        return m;
    }

    static Matrix column(const F& field, const std::vector<value_type>& entries) {
        Matrix m(field, entries.size(), 1);
        for (std::size_t i = 0; i < entries.size(); ++i) m(i, 0) = entries[i];
        return m;
    }

    static Matrix unit_vector(const F& field, std::size_t n, std::size_t i) {
        Matrix m(field, n, 1);
        m(i, 0) = field.one();
        return m;
    }

    const F& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    value_type& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const value_type& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<value_type>& data() const { return data_; }

    bool is_zero() const {
        for (const auto& v : data_)
            if (!field_.is_zero(v)) return false;
        return true;
    }

    bool operator==(const Matrix& o) const {
        if (!(field_ == o.field_) || rows_ != o.rows_ || cols_ != o.cols_) return false;
        for (std::size_t k = 0; k < data_.size(); ++k)
            if (!field_.equal(data_[k], o.data_[k])) return false;
        return true;
    }
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    std::size_t hash() const {
        std::size_t h = rows_ * 1000003u + cols_;
        for (const auto& v : data_) h = h * 1099511628211ULL ^ field_.hash(v);
        return h;
    }

    Matrix transpose() const {
        Matrix t(field_, cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Matrix operator*(const Matrix& o) const {
        check_field(o);
        if (cols_ != o.rows_)
            throw std::invalid_argument("matrix product shape mismatch: " + shape() + " * " + o.shape());
        Matrix r(field_, rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const value_type& a = (*this)(i, k);
                if (field_.is_zero(a)) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) {
                    const value_type& b = o(k, j);
                    if (field_.is_zero(b)) continue;
                    r(i, j) = field_.add(r(i, j), field_.mul(a, b));
                }
            }
        return r;
    }

    Matrix operator+(const Matrix& o) const {
        check_same_shape(o);
        Matrix r(*this);
        for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = field_.add(r.data_[k], o.data_[k]);
        return r;
    }

    Matrix operator-(const Matrix& o) const {
        check_same_shape(o);
        Matrix r(*this);
        for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = field_.sub(r.data_[k], o.data_[k]);
        return r;
    }

    Matrix operator-() const {
        Matrix r(*this);
        for (auto& v : r.data_) v = field_.neg(v);
        return r;
    }

    Matrix scaled(const value_type& c) const {
        Matrix r(*this);
        for (auto& v : r.data_) v = field_.mul(c, v);
        return r;
    }

    Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
        if (r0 + nr > rows_ || c0 + nc > cols_) throw std::out_of_range("block outside matrix");
        Matrix b(field_, nr, nc);
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
        return b;
    }

    void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
        check_field(b);
        if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw std::out_of_range("block outside matrix");
        for (std::size_t i = 0; i < b.rows_; ++i)
            for (std::size_t j = 0; j < b.cols_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
    }

    Matrix col(std::size_t j) const { return block(0, j, rows_, 1); }
    Matrix row(std::size_t i) const { return block(i, 0, 1, cols_); }

    Matrix select_columns(const std::vector<std::size_t>& idx) const {
        Matrix r(field_, rows_, idx.size());
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < idx.size(); ++j) r(i, j) = (*this)(i, idx[j]);
        return r;
    }

    Matrix select_rows(const std::vector<std::size_t>& idx) const {
        Matrix r(field_, idx.size(), cols_);
        for (std::size_t i = 0; i < idx.size(); ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(i, j) = (*this)(idx[i], j);
        return r;
    }

    std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

    std::string str() const {
        std::ostringstream os;
        os << "[";
        for (std::size_t i = 0; i < rows_; ++i) {
            os << (i ? "; " : "");
            for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << field_.format((*this)(i, j));
        }
        os << "]";
        return os.str();
    }

    void check_field(const Matrix& o) const {
        if (!(field_ == o.field_))
            throw field_mismatch("field mismatch: " + field_.name() + " vs " + o.field_.name());
    }

private:
    void check_same_shape(const Matrix& o) const {
        check_field(o);
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument("matrix shape mismatch: " + shape() + " vs " + o.shape());
    }

    F field_{};
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<value_type> data_;
};

template <class F>
Matrix<F> hstack(const Matrix<F>& a, const Matrix<F>& b) {
    a.check_field(b);
    if (a.rows() != b.rows()) throw std::invalid_argument("hstack row mismatch: " + a.shape() + " | " + b.shape());
    Matrix<F> r(a.field(), a.rows(), a.cols() + b.cols());
    r.set_block(0, 0, a);
    r.set_block(0, a.cols(), b);
    return r;
}

template <class F>
Matrix<F> vstack(const Matrix<F>& a, const Matrix<F>& b) {
    a.check_field(b);
    if (a.cols() != b.cols()) throw std::invalid_argument("vstack column mismatch: " + a.shape() + " / " + b.shape());
    Matrix<F> r(a.field(), a.rows() + b.rows(), a.cols());
    r.set_block(0, 0, a);
    r.set_block(a.rows(), 0, b);
    return r;
}

template <class F>
Matrix<F> block_diagonal(const Matrix<F>& a, const Matrix<F>& b) {
    a.check_field(b);
    Matrix<F> r(a.field(), a.rows() + b.rows(), a.cols() + b.cols());
    r.set_block(0, 0, a);
    r.set_block(a.rows(), a.cols(), b);
    return r;
}

template <class F>
struct RrefResult {
    Matrix<F> R;
    std::vector<std::size_t> pivots;
};

/// Reduced row echelon form; pivots are chosen leftmost column first, then topmost row.
template <class F>
RrefResult<F> rref(const Matrix<F>& A) {
    const F& f = A.field();
    Matrix<F> R = A;
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t c = 0; c < R.cols() && row < R.rows(); ++c) {
        std::size_t p = row;
        while (p < R.rows() && f.is_zero(R(p, c))) ++p;
        if (p == R.rows()) continue;
        if (p != row)
            for (std::size_t j = 0; j < R.cols(); ++j) std::swap(R(p, j), R(row, j));
        auto inv = f.inv(R(row, c));
        for (std::size_t j = c; j < R.cols(); ++j) R(row, j) = f.mul(inv, R(row, j));
        for (std::size_t i = 0; i < R.rows(); ++i) {
            if (i == row || f.is_zero(R(i, c))) continue;
            auto factor = R(i, c);
            for (std::size_t j = c; j < R.cols(); ++j) f.axpy_neg(R(i, j), factor, R(row, j));
        }
        pivots.push_back(c);
        ++row;
    }
    return {std::move(R), std::move(pivots)};
}

template <class F>
std::size_t rank(const Matrix<F>& A) {
    if (A.empty()) return 0;
    return rref(A).pivots.size();
}

/// Columns form the canonical free-variable basis of the null space.
template <class F>
Matrix<F> kernel_basis(const Matrix<F>& A) {
    const F& f = A.field();
    auto [R, pivots] = rref(A);
    std::vector<bool> is_pivot(A.cols(), false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<std::size_t> free;
    for (std::size_t c = 0; c < A.cols(); ++c)
        if (!is_pivot[c]) free.push_back(c);
    Matrix<F> K(f, A.cols(), free.size());
    for (std::size_t k = 0; k < free.size(); ++k) {
        K(free[k], k) = f.one();
        for (std::size_t r = 0; r < pivots.size(); ++r) K(pivots[r], k) = f.neg(R(r, free[k]));
    }
    return K;
}

/// Particular solution of A x = b with free variables set to zero, or nothing when inconsistent.
/// b may have several columns; each is solved independently and all must be consistent.
template <class F>
std::optional<Matrix<F>> solve(const Matrix<F>& A, const Matrix<F>& b) {
    A.check_field(b);
    if (A.rows() != b.rows())
        throw std::invalid_argument("solve: row mismatch " + A.shape() + " vs " + b.shape());
    const F& f = A.field();
    Matrix<F> aug = hstack(A, b);
    auto [R, pivots] = rref(aug);
    Matrix<F> x(f, A.cols(), b.cols());
    for (std::size_t r = 0; r < pivots.size(); ++r) {
        if (pivots[r] >= A.cols()) return std::nullopt;
        for (std::size_t j = 0; j < b.cols(); ++j) x(pivots[r], j) = R(r, A.cols() + j);
    }
    return x;
}

/// Basis of the column space, taken from the pivot columns of A.
template <class F>
Matrix<F> image_basis(const Matrix<F>& A) {
    if (A.cols() == 0) return Matrix<F>(A.field(), A.rows(), 0);
    return A.select_columns(rref(A).pivots);
}

/// L with L*A = I for A of full column rank.
template <class F>
Matrix<F> left_inverse(const Matrix<F>& A) {
    const F& f = A.field();
    std::size_t n = A.rows(), k = A.cols();
    auto [R, pivots] = rref(hstack(A, Matrix<F>::identity(f, n)));
    if (pivots.size() < k || (k > 0 && pivots[k - 1] >= k))
        throw std::invalid_argument("left_inverse: matrix " + A.shape() + " is not injective");
    // rows 0..k-1 of R read [I_k | L]
    return R.block(0, k, k, n);
}

template <class F>
Matrix<F> inverse(const Matrix<F>& A) {
    if (A.rows() != A.cols()) throw std::invalid_argument("inverse of non-square matrix " + A.shape());
    return left_inverse(A);
}

template <class F>
struct Quotient {
    Matrix<F> reps;     ///< ambient x q, coset representatives (standard basis vectors)
    Matrix<F> project;  ///< q x ambient, coordinates of the coset of a vector
    std::size_t dim() const { return reps.cols(); }
};

/// Quotient of k^ambient by the column span of sub.
template <class F>
Quotient<F> quotient_reps(const F& f, std::size_t ambient, const Matrix<F>& sub) {
    if (sub.cols() > 0 && sub.rows() != ambient)
        throw std::invalid_argument("quotient_reps: subspace rows do not match ambient dimension");
    std::vector<std::size_t> pivots;
    Matrix<F> R(f, 0, ambient);
    if (sub.cols() > 0) {
        auto rr = rref(sub.transpose());
        pivots = rr.pivots;
        R = rr.R;
    }
    std::vector<bool> is_pivot(ambient, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<std::size_t> np;
    for (std::size_t c = 0; c < ambient; ++c)
        if (!is_pivot[c]) np.push_back(c);
    Matrix<F> reps(f, ambient, np.size());
    Matrix<F> proj(f, np.size(), ambient);
    for (std::size_t j = 0; j < np.size(); ++j) {
        reps(np[j], j) = f.one();
        proj(j, np[j]) = f.one();
        for (std::size_t r = 0; r < pivots.size(); ++r) proj(j, pivots[r]) = f.neg(R(r, np[j]));
    }
    return {std::move(reps), std::move(proj)};
}

/// True when every column of v lies in the column span of S.
template <class F>
bool in_span(const Matrix<F>& S, const Matrix<F>& v) {
    if (v.cols() == 0 || v.is_zero()) return true;
    if (S.cols() == 0) return false;
    return solve(S, v).has_value();
}

/// Basis of the intersection of two column spans inside the same ambient space.
template <class F>
Matrix<F> intersect_spans(const Matrix<F>& A, const Matrix<F>& B) {
    if (A.cols() == 0 || B.cols() == 0) return Matrix<F>(A.field(), A.rows(), 0);
    Matrix<F> K = kernel_basis(hstack(A, -B));
    return image_basis(A * K.block(0, 0, A.cols(), K.cols()));
}

} // namespace phantomcat
