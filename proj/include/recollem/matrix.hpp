#pragma once

#include <cstdlib>
#include <initializer_list>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "field.hpp"

namespace recollem {

// Entry budget for matrices arriving through the serialization boundary.
// Internal scratch matrices (stacked naturality systems, coend presentations)
// may legitimately grow past this; the budget guards user input only.
inline std::size_t max_matrix_entries() {
    static const std::size_t cached = [] {
        if (const char* s = std::getenv("RECOLLEM_MAX_ENTRIES")) {
            char* end = nullptr;
            const unsigned long long x = std::strtoull(s, &end, 10);
            if (end && *end == '\0' && x > 0) return static_cast<std::size_t>(x);
        }
        return static_cast<std::size_t>(4096);
    }();
    return cached;
}

inline void check_entry_budget(std::size_t rows, std::size_t cols) {
    if (rows != 0 && cols > max_matrix_entries() / rows)
        throw LimitError("matrix of " + std::to_string(rows) + "x" + std::to_string(cols) +
                         " entries exceeds the input budget of " +
                         std::to_string(max_matrix_entries()) +
                         " (override with RECOLLEM_MAX_ENTRIES)");
}

// Dense exact matrix, row-major.  A 0xN or Nx0 matrix is a valid object and
// shows up constantly as the value of an empty hom space.
template <ExactField K>
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols, K(0)) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = K(1);
        return m;
    }

    static Matrix from(std::initializer_list<std::initializer_list<long long>> rows) {
        Matrix m(rows.size(), rows.size() ? rows.begin()->size() : 0);
        std::size_t i = 0;
        for (const auto& row : rows) {
            if (row.size() != m.cols_) throw ShapeError("ragged initializer");
            std::size_t j = 0;
            for (long long v : row) m(i, j++) = K(v);
            ++i;
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    K& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const K& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    K& at(std::size_t i, std::size_t j) {
        if (i >= rows_ || j >= cols_) throw ShapeError("matrix index out of range");
        return a_[i * cols_ + j];
    }
    const K& at(std::size_t i, std::size_t j) const {
        if (i >= rows_ || j >= cols_) throw ShapeError("matrix index out of range");
        return a_[i * cols_ + j];
    }

    friend bool operator==(const Matrix& x, const Matrix& y) {
        return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
    }
    friend bool operator!=(const Matrix& x, const Matrix& y) { return !(x == y); }

    bool is_zero() const {
        for (const K& v : a_)
            if (!(v == K(0))) return false;
        return true;
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    friend Matrix operator+(const Matrix& x, const Matrix& y) {
        require_same_shape(x, y, "+");
        Matrix r(x.rows_, x.cols_);
        for (std::size_t k = 0; k < x.a_.size(); ++k) r.a_[k] = x.a_[k] + y.a_[k];
        return r;
    }
    friend Matrix operator-(const Matrix& x, const Matrix& y) {
        require_same_shape(x, y, "-");
        Matrix r(x.rows_, x.cols_);
        for (std::size_t k = 0; k < x.a_.size(); ++k) r.a_[k] = x.a_[k] - y.a_[k];
        return r;
    }
    Matrix operator-() const {
        Matrix r(rows_, cols_);
        for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = -a_[k];
        return r;
    }
    friend Matrix operator*(const K& c, const Matrix& m) {
        Matrix r(m.rows_, m.cols_);
        for (std::size_t k = 0; k < m.a_.size(); ++k) r.a_[k] = c * m.a_[k];
        return r;
    }
    friend Matrix operator*(const Matrix& x, const Matrix& y) {
        if (x.cols_ != y.rows_)
            throw ShapeError("matrix product shape mismatch: " + x.shape_str() + " * " +
                             y.shape_str());
        Matrix r(x.rows_, y.cols_);
        for (std::size_t i = 0; i < x.rows_; ++i)
            for (std::size_t k = 0; k < x.cols_; ++k) {
                const K& v = x(i, k);
                if (v == K(0)) continue;
                for (std::size_t j = 0; j < y.cols_; ++j) r(i, j) += v * y(k, j);
            }
        return r;
    }

    std::string shape_str() const {
        return std::to_string(rows_) + "x" + std::to_string(cols_);
    }

    std::string str() const {
        std::ostringstream os;
        os << "[";
        for (std::size_t i = 0; i < rows_; ++i) {
            os << (i ? "; " : "");
            for (std::size_t j = 0; j < cols_; ++j)
                os << (j ? " " : "") << FieldTraits<K>::to_string((*this)(i, j));
        }
        os << "]";
        return os.str();
    }

private:
    static void require_same_shape(const Matrix& x, const Matrix& y, const char* op) {
        if (x.rows_ != y.rows_ || x.cols_ != y.cols_)
            throw ShapeError(std::string("matrix ") + op + " shape mismatch: " + x.shape_str() +
                             " vs " + y.shape_str());
    }

    std::size_t rows_, cols_;
    std::vector<K> a_;
};

template <ExactField K>
Matrix<K> hstack(const std::vector<Matrix<K>>& parts) {
    if (parts.empty()) return Matrix<K>();
    std::size_t cols = 0;
    for (const auto& p : parts) {
        if (p.rows() != parts.front().rows()) throw ShapeError("hstack row mismatch");
        cols += p.cols();
    }
    Matrix<K> r(parts.front().rows(), cols);
    std::size_t off = 0;
    for (const auto& p : parts) {
        for (std::size_t i = 0; i < p.rows(); ++i)
            for (std::size_t j = 0; j < p.cols(); ++j) r(i, off + j) = p(i, j);
        off += p.cols();
    }
    return r;
}

template <ExactField K>
Matrix<K> vstack(const std::vector<Matrix<K>>& parts) {
    if (parts.empty()) return Matrix<K>();
    std::size_t rows = 0;
    for (const auto& p : parts) {
        if (p.cols() != parts.front().cols()) throw ShapeError("vstack column mismatch");
        rows += p.rows();
    }
    Matrix<K> r(rows, parts.front().cols());
    std::size_t off = 0;
    for (const auto& p : parts) {
        for (std::size_t i = 0; i < p.rows(); ++i)
            for (std::size_t j = 0; j < p.cols(); ++j) r(off + i, j) = p(i, j);
        off += p.rows();
    }
    return r;
}

// Block-diagonal sum.
template <ExactField K>
Matrix<K> direct_sum(const Matrix<K>& x, const Matrix<K>& y) {
    Matrix<K> r(x.rows() + y.rows(), x.cols() + y.cols());
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j) r(i, j) = x(i, j);
    for (std::size_t i = 0; i < y.rows(); ++i)
        for (std::size_t j = 0; j < y.cols(); ++j) r(x.rows() + i, x.cols() + j) = y(i, j);
    return r;
}

template <ExactField K>
Matrix<K> take_cols(const Matrix<K>& m, const std::vector<std::size_t>& idx) {
    Matrix<K> r(m.rows(), idx.size());
    for (std::size_t j = 0; j < idx.size(); ++j) {
        if (idx[j] >= m.cols()) throw ShapeError("column selection out of range");
        for (std::size_t i = 0; i < m.rows(); ++i) r(i, j) = m(i, idx[j]);
    }
    return r;
}

template <ExactField K>
Matrix<K> kron(const Matrix<K>& a, const Matrix<K>& b) {
    Matrix<K> r(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const K& v = a(i, j);
            if (v == K(0)) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    r(i * b.rows() + k, j * b.cols() + l) = v * b(k, l);
        }
    return r;
}

template <ExactField K>
struct Rref {
    Matrix<K> r;                       // reduced row echelon form of the input
    Matrix<K> transform;               // transform * input == r
    std::vector<std::size_t> pivots;   // pivot column of each pivot row
};

// Gauss-Jordan with first-nonzero pivoting; fully deterministic.
template <ExactField K>
Rref<K> rref(const Matrix<K>& m) {
    Rref<K> out{m, Matrix<K>::identity(m.rows()), {}};
    Matrix<K>& r = out.r;
    Matrix<K>& e = out.transform;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t piv = row;
        while (piv < m.rows() && r(piv, col) == K(0)) ++piv;
        if (piv == m.rows()) continue;
        if (piv != row) {
            for (std::size_t j = 0; j < r.cols(); ++j) std::swap(r(row, j), r(piv, j));
            for (std::size_t j = 0; j < e.cols(); ++j) std::swap(e(row, j), e(piv, j));
        }
        const K inv = K(1) / r(row, col);
        for (std::size_t j = 0; j < r.cols(); ++j) r(row, j) = inv * r(row, j);
        for (std::size_t j = 0; j < e.cols(); ++j) e(row, j) = inv * e(row, j);
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row || r(i, col) == K(0)) continue;
            const K f = r(i, col);
            for (std::size_t j = 0; j < r.cols(); ++j) r(i, j) = r(i, j) - f * r(row, j);
            for (std::size_t j = 0; j < e.cols(); ++j) e(i, j) = e(i, j) - f * e(row, j);
        }
        out.pivots.push_back(col);
        ++row;
    }
    return out;
}

template <ExactField K>
struct Decomposition {
    std::size_t rank = 0;
    Matrix<K> kernel_basis;          // cols x nullity; m * kernel_basis == 0
    Matrix<K> image_basis;           // rows x rank; the pivot columns of m
    Matrix<K> cokernel_projection;   // (rows - rank) x rows; proj * m == 0, full row rank
};

template <ExactField K>
Decomposition<K> decompose(const Matrix<K>& m) {
    const Rref<K> rr = rref(m);
    Decomposition<K> d;
    d.rank = rr.pivots.size();

    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t p : rr.pivots) is_pivot[p] = true;

    d.kernel_basis = Matrix<K>(m.cols(), m.cols() - d.rank);
    std::size_t kcol = 0;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        d.kernel_basis(f, kcol) = K(1);
        for (std::size_t j = 0; j < d.rank; ++j)
            d.kernel_basis(rr.pivots[j], kcol) = -rr.r(j, f);
        ++kcol;
    }

    d.image_basis = take_cols(m, rr.pivots);

    d.cokernel_projection = Matrix<K>(m.rows() - d.rank, m.rows());
    for (std::size_t i = d.rank; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.rows(); ++j)
            d.cokernel_projection(i - d.rank, j) = rr.transform(i, j);

    return d;
}

template <ExactField K>
std::size_t rank(const Matrix<K>& m) {
    return rref(m).pivots.size();
}

// A solution x of a * x == b if one exists (free coordinates pinned to zero).
template <ExactField K>
std::optional<Matrix<K>> solve(const Matrix<K>& a, const Matrix<K>& b) {
    if (a.rows() != b.rows())
        throw ShapeError("solve shape mismatch: " + a.shape_str() + " vs " + b.shape_str());
    const Rref<K> rr = rref(a);
    const Matrix<K> eb = rr.transform * b;
    for (std::size_t i = rr.pivots.size(); i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j)
            if (!(eb(i, j) == K(0))) return std::nullopt;
    Matrix<K> x(a.cols(), b.cols());
    for (std::size_t j = 0; j < rr.pivots.size(); ++j)
        for (std::size_t c = 0; c < b.cols(); ++c) x(rr.pivots[j], c) = eb(j, c);
    return x;
}

}  // namespace recollem
