// Exact arithmetic over the Gaussian rationals Q(i), plus a tiny Q(sqrt(2))
// extension. Test-only: used to pin expected values for small integer/rational
// instances through a path that shares no code with the floating-point
// library. Ranks and inverses are computed by fraction-free Gaussian
// elimination on boost::rational entries; nothing here ever touches a double
// until the final conversion for comparison.

#pragma once

#include <boost/rational.hpp>

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <utility>
#include <vector>

namespace oracle {

using Rat = boost::rational<long long>;

// Gaussian rational a + b*i.
struct CRat {
    Rat re{0};
    Rat im{0};

    CRat() = default;
    CRat(long long r) : re(r) {}
    CRat(Rat r) : re(std::move(r)) {}
    CRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

    static CRat i() { return CRat(Rat(0), Rat(1)); }

    bool is_zero() const { return re == Rat(0) && im == Rat(0); }
    CRat conj() const { return CRat(re, -im); }

    friend CRat operator+(const CRat& x, const CRat& y) { return CRat(x.re + y.re, x.im + y.im); }
    friend CRat operator-(const CRat& x, const CRat& y) { return CRat(x.re - y.re, x.im - y.im); }
    friend CRat operator-(const CRat& x) { return CRat(-x.re, -x.im); }
    friend CRat operator*(const CRat& x, const CRat& y) {
        return CRat(x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re);
    }
    friend CRat operator/(const CRat& x, const CRat& y) {
        Rat d = y.re * y.re + y.im * y.im;
        if (d == Rat(0)) throw std::domain_error("oracle: division by zero");
        CRat n = x * y.conj();
        return CRat(n.re / d, n.im / d);
    }
    friend bool operator==(const CRat& x, const CRat& y) { return x.re == y.re && x.im == y.im; }
    friend bool operator!=(const CRat& x, const CRat& y) { return !(x == y); }

    double to_double_re() const { return boost::rational_cast<double>(re); }
    double to_double_im() const { return boost::rational_cast<double>(im); }
};

// Dense matrix over Q(i).
class RatMat {
  public:
    RatMat(int rows, int cols) : rows_(rows), cols_(cols), e_(static_cast<size_t>(rows) * cols) {
        if (rows <= 0 || cols <= 0) throw std::invalid_argument("oracle: bad shape");
    }

    // Integer-entry initializer, row major.
    static RatMat from_int(std::initializer_list<std::initializer_list<long long>> rows) {
        int r = static_cast<int>(rows.size());
        int c = static_cast<int>(rows.begin()->size());
        RatMat m(r, c);
        int i = 0;
        for (const auto& row : rows) {
            if (static_cast<int>(row.size()) != c) throw std::invalid_argument("oracle: ragged rows");
            int j = 0;
            for (long long v : row) m(i, j++) = CRat(v);
            ++i;
        }
        return m;
    }

    static RatMat from_crat(std::initializer_list<std::initializer_list<CRat>> rows) {
        int r = static_cast<int>(rows.size());
        int c = static_cast<int>(rows.begin()->size());
        RatMat m(r, c);
        int i = 0;
        for (const auto& row : rows) {
            int j = 0;
            for (const CRat& v : row) m(i, j++) = v;
            ++i;
        }
        return m;
    }

    static RatMat identity(int n) {
        RatMat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = CRat(1);
        return m;
    }

    static RatMat zero(int r, int c) { return RatMat(r, c); }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    CRat& operator()(int i, int j) { return e_[static_cast<size_t>(i) * cols_ + j]; }
    const CRat& operator()(int i, int j) const { return e_[static_cast<size_t>(i) * cols_ + j]; }

    friend RatMat operator+(const RatMat& x, const RatMat& y) {
        x.check_same(y);
        RatMat r(x.rows_, x.cols_);
        for (size_t k = 0; k < x.e_.size(); ++k) r.e_[k] = x.e_[k] + y.e_[k];
        return r;
    }
    friend RatMat operator-(const RatMat& x, const RatMat& y) {
        x.check_same(y);
        RatMat r(x.rows_, x.cols_);
        for (size_t k = 0; k < x.e_.size(); ++k) r.e_[k] = x.e_[k] - y.e_[k];
        return r;
    }
    friend RatMat operator*(const RatMat& x, const RatMat& y) {
        if (x.cols_ != y.rows_) throw std::invalid_argument("oracle: shape mismatch in mul");
        RatMat r(x.rows_, y.cols_);
        for (int i = 0; i < x.rows_; ++i)
            for (int k = 0; k < x.cols_; ++k) {
                if (x(i, k).is_zero()) continue;
                for (int j = 0; j < y.cols_; ++j) r(i, j) = r(i, j) + x(i, k) * y(k, j);
            }
        return r;
    }
    friend RatMat operator*(const CRat& s, const RatMat& x) {
        RatMat r(x.rows_, x.cols_);
        for (size_t k = 0; k < x.e_.size(); ++k) r.e_[k] = s * x.e_[k];
        return r;
    }
    friend bool operator==(const RatMat& x, const RatMat& y) {
        return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.e_ == y.e_;
    }

    RatMat conj_transpose() const {
        RatMat r(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j).conj();
        return r;
    }

    RatMat transpose() const {
        RatMat r(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    RatMat pow(int k) const {
        if (rows_ != cols_) throw std::invalid_argument("oracle: pow of non-square");
        RatMat acc = identity(rows_);
        for (int t = 0; t < k; ++t) acc = acc * (*this);
        return acc;
    }

    bool is_zero() const {
        for (const auto& v : e_)
            if (!v.is_zero()) return false;
        return true;
    }

    // Exact rank via Gaussian elimination (any nonzero pivot works over a field).
    int rank() const {
        RatMat m = *this;
        int rank = 0;
        int row = 0;
        for (int col = 0; col < cols_ && row < rows_; ++col) {
            int piv = -1;
            for (int i = row; i < rows_; ++i)
                if (!m(i, col).is_zero()) {
                    piv = i;
                    break;
                }
            if (piv < 0) continue;
            for (int j = 0; j < cols_; ++j) std::swap(m(row, j), m(piv, j));
            for (int i = row + 1; i < rows_; ++i) {
                if (m(i, col).is_zero()) continue;
                CRat f = m(i, col) / m(row, col);
                for (int j = col; j < cols_; ++j) m(i, j) = m(i, j) - f * m(row, j);
            }
            ++row;
            ++rank;
        }
        return rank;
    }

    // Gauss-Jordan inverse; throws on singular input.
    RatMat inverse() const {
        if (rows_ != cols_) throw std::invalid_argument("oracle: inverse of non-square");
        int n = rows_;
        RatMat m = *this;
        RatMat inv = identity(n);
        for (int col = 0; col < n; ++col) {
            int piv = -1;
            for (int i = col; i < n; ++i)
                if (!m(i, col).is_zero()) {
                    piv = i;
                    break;
                }
            if (piv < 0) throw std::domain_error("oracle: singular matrix");
            for (int j = 0; j < n; ++j) {
                std::swap(m(col, j), m(piv, j));
                std::swap(inv(col, j), inv(piv, j));
            }
            CRat d = m(col, col);
            for (int j = 0; j < n; ++j) {
                m(col, j) = m(col, j) / d;
                inv(col, j) = inv(col, j) / d;
            }
            for (int i = 0; i < n; ++i) {
                if (i == col || m(i, col).is_zero()) continue;
                CRat f = m(i, col);
                for (int j = 0; j < n; ++j) {
                    m(i, j) = m(i, j) - f * m(col, j);
                    inv(i, j) = inv(i, j) - f * inv(col, j);
                }
            }
        }
        return inv;
    }

    // Basis of the right null space, one column per basis vector.
    std::vector<std::vector<CRat>> null_basis() const {
        RatMat m = *this;
        int n = cols_;
        std::vector<int> pivot_col;
        int row = 0;
        for (int col = 0; col < n && row < rows_; ++col) {
            int piv = -1;
            for (int i = row; i < rows_; ++i)
                if (!m(i, col).is_zero()) {
                    piv = i;
                    break;
                }
            if (piv < 0) continue;
            for (int j = 0; j < n; ++j) std::swap(m(row, j), m(piv, j));
            CRat d = m(row, col);
            for (int j = 0; j < n; ++j) m(row, j) = m(row, j) / d;
            for (int i = 0; i < rows_; ++i) {
                if (i == row || m(i, col).is_zero()) continue;
                CRat f = m(i, col);
                for (int j = 0; j < n; ++j) m(i, j) = m(i, j) - f * m(row, j);
            }
            pivot_col.push_back(col);
            ++row;
        }
        std::vector<bool> is_pivot(n, false);
        for (int c : pivot_col) is_pivot[c] = true;
        std::vector<std::vector<CRat>> basis;
        for (int freec = 0; freec < n; ++freec) {
            if (is_pivot[freec]) continue;
            std::vector<CRat> v(n);
            v[freec] = CRat(1);
            for (size_t r = 0; r < pivot_col.size(); ++r) v[pivot_col[r]] = -m(static_cast<int>(r), freec);
            basis.push_back(std::move(v));
        }
        return basis;
    }

    static RatMat hcat(const RatMat& x, const RatMat& y) {
        if (x.rows_ != y.rows_) throw std::invalid_argument("oracle: hcat rows mismatch");
        RatMat r(x.rows_, x.cols_ + y.cols_);
        for (int i = 0; i < x.rows_; ++i) {
            for (int j = 0; j < x.cols_; ++j) r(i, j) = x(i, j);
            for (int j = 0; j < y.cols_; ++j) r(i, x.cols_ + j) = y(i, j);
        }
        return r;
    }

    static RatMat kron(const RatMat& x, const RatMat& y) {
        RatMat r(x.rows_ * y.rows_, x.cols_ * y.cols_);
        for (int i = 0; i < x.rows_; ++i)
            for (int j = 0; j < x.cols_; ++j) {
                if (x(i, j).is_zero()) continue;
                for (int p = 0; p < y.rows_; ++p)
                    for (int q = 0; q < y.cols_; ++q)
                        r(i * y.rows_ + p, j * y.cols_ + q) = x(i, j) * y(p, q);
            }
        return r;
    }

  private:
    void check_same(const RatMat& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("oracle: shape mismatch");
    }

    int rows_;
    int cols_;
    std::vector<CRat> e_;
};

inline bool range_equal(const RatMat& x, const RatMat& y) {
    return x.rank() == y.rank() && x.rank() == RatMat::hcat(x, y).rank();
}

// Smallest k >= 0 with rank(a^k) == rank(a^{k+1}).
inline int drazin_index(const RatMat& a) {
    int n = a.rows();
    int prev = n;  // rank of a^0
    RatMat p = RatMat::identity(n);
    for (int k = 1; k <= n + 1; ++k) {
        p = p * a;
        int r = p.rank();
        if (r == prev) return k - 1;
        prev = r;
    }
    return n;
}

// Exact predicates for the defining identities of the inverse family. Each
// inverse is unique when it exists, so confirming the identities on a
// candidate value pins that value exactly.

inline bool penrose_identities_hold(const RatMat& a, const RatMat& x) {
    bool p1 = (a * x * a) == a;
    bool p2 = (x * a * x) == x;
    bool p3 = (a * x).conj_transpose() == (a * x);
    bool p4 = (x * a).conj_transpose() == (x * a);
    return p1 && p2 && p3 && p4;
}

inline bool drazin_axioms_hold(const RatMat& a, const RatMat& x, int k) {
    bool commute = (a * x) == (x * a);
    bool inner = (x * a * x) == x;
    bool power = a.pow(k) == (x * a.pow(k + 1));
    return commute && inner && power;
}

inline bool group_axioms_hold(const RatMat& a, const RatMat& x) {
    return (a * x * a) == a && (x * a * x) == x && (a * x) == (x * a);
}

inline bool core_axioms_hold(const RatMat& a, const RatMat& x) {
    bool inner = (a * x * a) == a;
    bool col = range_equal(x, a);
    // Ax = Aa*: the row space of x equals the row space of a*, i.e. the
    // column space of x* equals the column space of a.
    bool row = range_equal(x.conj_transpose(), a);
    return inner && col && row;
}

inline bool core_ep_axioms_hold(const RatMat& a, const RatMat& x, int k) {
    bool outer = (a * (x * x)) == x;
    bool herm = (a * x).conj_transpose() == (a * x);
    bool power = (x * a.pow(k + 1)) == a.pow(k);
    return outer && herm && power;
}

inline bool bc_axioms_hold(const RatMat& a, const RatMat& b, const RatMat& c, const RatMat& x) {
    bool left = (x * a * b) == b;
    bool right = (c * a * x) == c;
    // x in bAx and x in xAc: column space of x inside that of b, row space inside that of c.
    bool col = RatMat::hcat(b, x).rank() == b.rank();
    bool row = RatMat::hcat(c.conj_transpose(), x.conj_transpose()).rank() == c.conj_transpose().rank();
    return left && right && col && row;
}

// Numbers a + b*sqrt(2), exact field arithmetic in Q(sqrt(2)).
struct QSqrt2 {
    Rat a{0};
    Rat b{0};

    QSqrt2() = default;
    QSqrt2(Rat x, Rat y) : a(std::move(x)), b(std::move(y)) {}

    friend QSqrt2 operator+(const QSqrt2& x, const QSqrt2& y) { return {x.a + y.a, x.b + y.b}; }
    friend QSqrt2 operator*(const QSqrt2& x, const QSqrt2& y) {
        return {x.a * y.a + Rat(2) * x.b * y.b, x.a * y.b + x.b * y.a};
    }
    friend QSqrt2 operator/(const QSqrt2& x, const QSqrt2& y) {
        Rat d = y.a * y.a - Rat(2) * y.b * y.b;
        if (d == Rat(0)) throw std::domain_error("oracle: division by zero in Q(sqrt2)");
        QSqrt2 n = x * QSqrt2(y.a, -y.b);
        return {n.a / d, n.b / d};
    }

    double to_double() const {
        static const double s2 = std::sqrt(2.0);
        return boost::rational_cast<double>(a) + boost::rational_cast<double>(b) * s2;
    }
};

}  // namespace oracle
