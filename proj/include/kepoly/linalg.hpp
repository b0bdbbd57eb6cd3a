#ifndef KEPOLY_LINALG_HPP
#define KEPOLY_LINALG_HPP

#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "kepoly/rational.hpp"

namespace kepoly {

/// Exact rational vector. Small fixed dimension (the rank r of the group),
/// value semantics throughout.
struct QVec {
    std::vector<Rat> c;

    QVec() = default;
    explicit QVec(int n) : c(static_cast<size_t>(n), Rat(0)) {}
    QVec(std::initializer_list<Rat> init) : c(init) {}

    int dim() const { return static_cast<int>(c.size()); }
    Rat& operator[](int i) { return c[static_cast<size_t>(i)]; }
    const Rat& operator[](int i) const { return c[static_cast<size_t>(i)]; }

    bool is_zero() const {
        for (const Rat& x : c)
            if (x != 0) return false;
        return true;
    }
};

inline QVec operator+(const QVec& a, const QVec& b) {
    QVec r(a.dim());
    for (int i = 0; i < a.dim(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline QVec operator-(const QVec& a, const QVec& b) {
    QVec r(a.dim());
    for (int i = 0; i < a.dim(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline QVec operator-(const QVec& a) {
    QVec r(a.dim());
    for (int i = 0; i < a.dim(); ++i) r[i] = -a[i];
    return r;
}

inline QVec operator*(const Rat& s, const QVec& a) {
    QVec r(a.dim());
    for (int i = 0; i < a.dim(); ++i) r[i] = s * a[i];
    return r;
}

inline bool operator==(const QVec& a, const QVec& b) { return a.c == b.c; }
inline bool operator!=(const QVec& a, const QVec& b) { return !(a == b); }

/// Lexicographic order; the project-wide tie-breaker for deterministic output.
inline bool lex_less(const QVec& a, const QVec& b) {
    for (int i = 0; i < a.dim() && i < b.dim(); ++i) {
        int s = cmp(a[i], b[i]);
        if (s != 0) return s < 0;
    }
    return a.dim() < b.dim();
}

struct QVecLess {
    bool operator()(const QVec& a, const QVec& b) const { return lex_less(a, b); }
};

/// Plain coordinate dot product (no Gram matrix).
inline Rat dot(const QVec& a, const QVec& b) {
    Rat s = 0;
    for (int i = 0; i < a.dim(); ++i) s += a[i] * b[i];
    return s;
}

inline std::string to_string(const QVec& a) {
    std::string s = "(";
    for (int i = 0; i < a.dim(); ++i) {
        if (i) s += ", ";
        s += rat_to_string(a[i]);
    }
    return s + ")";
}

/// Dense exact rational matrix, row-major.
struct QMat {
    int rows = 0, cols = 0;
    std::vector<Rat> a;

    QMat() = default;
    QMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, Rat(0)) {}

    static QMat identity(int n) {
        QMat m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    Rat& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const Rat& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    QVec mul(const QVec& v) const {
        QVec r(rows);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) r[i] += at(i, j) * v[j];
        return r;
    }

    QMat mul(const QMat& m) const {
        QMat r(rows, m.cols);
        for (int i = 0; i < rows; ++i)
            for (int k = 0; k < cols; ++k) {
                if (at(i, k) == 0) continue;
                for (int j = 0; j < m.cols; ++j) r.at(i, j) += at(i, k) * m.at(k, j);
            }
        return r;
    }

    QMat transpose() const {
        QMat r(cols, rows);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) r.at(j, i) = at(i, j);
        return r;
    }

    bool operator==(const QMat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

/// Row-reduce in place; returns the rank. Pivot columns (if requested) record
/// the echelon structure for back-substitution.
inline int row_reduce(QMat& m, std::vector<int>* pivot_cols = nullptr) {
    int rank = 0;
    for (int col = 0; col < m.cols && rank < m.rows; ++col) {
        int piv = -1;
        for (int i = rank; i < m.rows; ++i)
            if (m.at(i, col) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != rank)
            for (int j = 0; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(rank, j));
        Rat inv = 1 / m.at(rank, col);
        for (int j = col; j < m.cols; ++j) m.at(rank, j) *= inv;
        for (int i = 0; i < m.rows; ++i) {
            if (i == rank || m.at(i, col) == 0) continue;
            Rat f = m.at(i, col);
            for (int j = col; j < m.cols; ++j) m.at(i, j) -= f * m.at(rank, j);
        }
        if (pivot_cols) pivot_cols->push_back(col);
        ++rank;
    }
    return rank;
}

inline int rank_of(QMat m) { return row_reduce(m); }

inline Rat det(QMat m) {
    if (m.rows != m.cols) throw std::invalid_argument("det: matrix not square");
    Rat d = 1;
    int n = m.rows;
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int i = col; i < n; ++i)
            if (m.at(i, col) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) return Rat(0);
        if (piv != col) {
            for (int j = 0; j < n; ++j) std::swap(m.at(piv, j), m.at(col, j));
            d = -d;
        }
        d *= m.at(col, col);
        Rat inv = 1 / m.at(col, col);
        for (int i = col + 1; i < n; ++i) {
            if (m.at(i, col) == 0) continue;
            Rat f = m.at(i, col) * inv;
            for (int j = col; j < n; ++j) m.at(i, j) -= f * m.at(col, j);
        }
    }
    return d;
}

/// Solve A x = b exactly. Returns nullopt when inconsistent; when the system is
/// underdetermined, free variables are set to zero.
inline std::optional<QVec> solve(const QMat& A, const QVec& b) {
    QMat aug(A.rows, A.cols + 1);
    for (int i = 0; i < A.rows; ++i) {
        for (int j = 0; j < A.cols; ++j) aug.at(i, j) = A.at(i, j);
        aug.at(i, A.cols) = b[i];
    }
    std::vector<int> pivots;
    int rank = row_reduce(aug, &pivots);
    for (int p : pivots)
        if (p == A.cols) return std::nullopt;  // pivot in the constant column: inconsistent
    QVec x(A.cols);
    for (int k = 0; k < rank; ++k) x[pivots[static_cast<size_t>(k)]] = aug.at(k, A.cols);
    return x;
}

inline QMat inverse(const QMat& A) {
    if (A.rows != A.cols) throw std::invalid_argument("inverse: matrix not square");
    int n = A.rows;
    QMat aug(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug.at(i, j) = A.at(i, j);
        aug.at(i, n + i) = 1;
    }
    if (row_reduce(aug) != n) throw std::invalid_argument("inverse: singular matrix");
    QMat inv(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv.at(i, j) = aug.at(i, n + j);
    return inv;
}

}  // namespace kepoly

#endif
