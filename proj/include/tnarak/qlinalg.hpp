#pragma once
// Exact rational scalars, dense matrices and integer lattice helpers.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tnarak {

struct Error : std::runtime_error {
    std::string kind;
    Error(std::string k, const std::string& what)
        : std::runtime_error(k + ": " + what), kind(std::move(k)) {}
};

using Rat = mpq_class;
using Int = mpz_class;
using RatVec = std::vector<Rat>;
using IntMat = std::vector<std::vector<Int>>;

inline Rat rat(long p, long q = 1) {
    Rat r(p, q);
    r.canonicalize();
    return r;
}

// Accepts "p", "p/q" and plain decimals like "-0.25".
inline Rat parse_rat(const std::string& s) {
    if (s.empty()) throw Error("ParseError", "empty rational");
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        std::string whole = s.substr(0, dot), frac = s.substr(dot + 1);
        bool neg = !whole.empty() && whole[0] == '-';
        std::string digits = (neg ? whole.substr(1) : whole) + frac;
        if (digits.empty()) throw Error("ParseError", s);
        Int num(digits, 10), den = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
        Rat r(neg ? Int(-num) : num, den);
        r.canonicalize();
        return r;
    }
    Rat r;
    if (r.set_str(s, 10) != 0) throw Error("ParseError", s);
    if (r.get_den() == 0) throw Error("ParseError", "zero denominator in " + s);
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rat& r) { return r.get_str(10); }

inline bool is_zero(const RatVec& v) {
    return std::all_of(v.begin(), v.end(), [](const Rat& x) { return x == 0; });
}

inline Rat dot(const RatVec& a, const RatVec& b) {
    if (a.size() != b.size()) throw Error("DimensionMismatch", "dot");
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline RatVec operator+(const RatVec& a, const RatVec& b) {
    if (a.size() != b.size()) throw Error("DimensionMismatch", "vector add");
    RatVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline RatVec operator-(const RatVec& a, const RatVec& b) {
    if (a.size() != b.size()) throw Error("DimensionMismatch", "vector sub");
    RatVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline RatVec operator*(const Rat& c, const RatVec& a) {
    RatVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
    return r;
}

// Scale to the primitive integer vector on the same ray.
inline RatVec primitive(const RatVec& v) {
    Int l = 1, g = 0;
    for (auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    std::vector<Int> w(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        Rat s = v[i] * l;
        w[i] = s.get_num();
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), w[i].get_mpz_t());
    }
    if (g == 0) return v;
    RatVec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = Rat(w[i] / g);
    return r;
}

inline bool is_integral(const RatVec& v) {
    return std::all_of(v.begin(), v.end(), [](const Rat& x) { return x.get_den() == 1; });
}

class RatMat {
public:
    RatMat() = default;
    RatMat(std::size_t r, std::size_t c) : rows_(r), cols_(c), a_(r * c) {}
    static RatMat from_rows(const std::vector<RatVec>& rows, std::size_t cols = 0) {
        std::size_t c = rows.empty() ? cols : rows[0].size();
        RatMat m(rows.size(), c);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != c) throw Error("DimensionMismatch", "ragged matrix");
            for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }
    static RatMat from_cols(const std::vector<RatVec>& cols, std::size_t rows = 0) {
        return from_rows(cols, rows).transpose();
    }
    static RatMat identity(std::size_t n) {
        RatMat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Rat& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Rat& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    RatVec row(std::size_t i) const { return RatVec(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_); }
    RatVec col(std::size_t j) const {
        RatVec c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }

    RatMat transpose() const {
        RatMat t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    RatVec operator*(const RatVec& x) const {
        if (x.size() != cols_) throw Error("DimensionMismatch", "matrix-vector");
        RatVec y(rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            Rat s = 0;
            for (std::size_t j = 0; j < cols_; ++j)
                if ((*this)(i, j) != 0) s += (*this)(i, j) * x[j];
            y[i] = s;
        }
        return y;
    }

    RatMat operator*(const RatMat& b) const {
        if (cols_ != b.rows_) throw Error("DimensionMismatch", "matrix product");
        RatMat c(rows_, b.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                if ((*this)(i, k) == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += (*this)(i, k) * b(k, j);
            }
        return c;
    }

    bool operator==(const RatMat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rat> a_;
};

// In-place reduced row echelon form; returns pivot columns.
inline std::vector<std::size_t> rref(RatMat& m) {
    std::vector<std::size_t> piv;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && m(p, c) == 0) ++p;
        if (p == m.rows()) continue;
        if (p != r)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
        Rat inv = 1 / m(r, c);
        for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c) == 0) continue;
            Rat f = m(i, c);
            for (std::size_t j = c; j < m.cols(); ++j)
                if (m(r, j) != 0) m(i, j) -= f * m(r, j);
        }
        piv.push_back(c);
        ++r;
    }
    return piv;
}

inline std::size_t rank(RatMat m) { return rref(m).size(); }

inline std::size_t rank(const std::vector<RatVec>& rows, std::size_t cols) {
    if (rows.empty()) return 0;
    return rank(RatMat::from_rows(rows, cols));
}

inline std::vector<RatVec> kernel_basis(const RatMat& a) {
    RatMat m = a;
    auto piv = rref(m);
    std::vector<bool> is_piv(a.cols(), false);
    for (auto p : piv) is_piv[p] = true;
    std::vector<RatVec> basis;
    for (std::size_t f = 0; f < a.cols(); ++f) {
        if (is_piv[f]) continue;
        RatVec v(a.cols());
        v[f] = 1;
        for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -m(i, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

inline std::optional<RatVec> solve(const RatMat& a, const RatVec& b) {
    if (b.size() != a.rows()) throw Error("DimensionMismatch", "solve: rhs length");
    RatMat aug(a.rows(), a.cols() + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
        aug(i, a.cols()) = b[i];
    }
    auto piv = rref(aug);
    if (!piv.empty() && piv.back() == a.cols()) return std::nullopt;
    RatVec x(a.cols());
    for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = aug(i, a.cols());
    return x;
}

inline Rat det(RatMat m) {
    if (m.rows() != m.cols()) throw Error("DimensionMismatch", "det of non-square");
    Rat d = 1;
    std::size_t n = m.rows();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m(p, c) == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
            d = -d;
        }
        d *= m(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (m(i, c) == 0) continue;
            Rat f = m(i, c) / m(c, c);
            for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
        }
    }
    return d;
}

inline std::optional<RatMat> inverse(const RatMat& a) {
    std::size_t n = a.rows();
    if (n != a.cols()) throw Error("DimensionMismatch", "inverse of non-square");
    RatMat aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
        aug(i, n + i) = 1;
    }
    auto piv = rref(aug);
    if (piv.size() < n || piv[n - 1] != n - 1) return std::nullopt;
    RatMat inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
    return inv;
}

// ---- integer matrices ----

struct SmithForm {
    IntMat U, D, V;  // U * A * V = D
};

inline IntMat int_identity(std::size_t n) {
    IntMat m(n, std::vector<Int>(n, 0));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

inline IntMat int_mul(const IntMat& a, const IntMat& b) {
    std::size_t r = a.size(), k = b.size(), c = b.empty() ? 0 : b[0].size();
    IntMat m(r, std::vector<Int>(c, 0));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t l = 0; l < k; ++l)
            for (std::size_t j = 0; j < c; ++j) m[i][j] += a[i][l] * b[l][j];
    return m;
}

inline Int int_det(const IntMat& a) {
    RatMat m(a.size(), a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) m(i, j) = Rat(a[i][j]);
    return det(m).get_num();
}

inline SmithForm smith_normal_form(const IntMat& A) {
    std::size_t m = A.size(), n = m ? A[0].size() : 0;
    for (auto& r : A)
        if (r.size() != n) throw Error("DimensionMismatch", "ragged integer matrix");
    IntMat D = A, U = int_identity(m), V = int_identity(n);
    auto swap_rows = [&](std::size_t i, std::size_t j) { std::swap(D[i], D[j]); std::swap(U[i], U[j]); };
    auto swap_cols = [&](std::size_t i, std::size_t j) {
        for (auto& r : D) std::swap(r[i], r[j]);
        for (auto& r : V) std::swap(r[i], r[j]);
    };
    auto add_row = [&](std::size_t dst, std::size_t src, const Int& f) {  // row dst += f*row src
        for (std::size_t j = 0; j < n; ++j) D[dst][j] += f * D[src][j];
        for (std::size_t j = 0; j < m; ++j) U[dst][j] += f * U[src][j];
    };
    auto add_col = [&](std::size_t dst, std::size_t src, const Int& f) {
        for (std::size_t i = 0; i < m; ++i) D[i][dst] += f * D[i][src];
        for (std::size_t i = 0; i < n; ++i) V[i][dst] += f * V[i][src];
    };
    for (std::size_t t = 0; t < std::min(m, n); ++t) {
        while (true) {
            // smallest nonzero entry of the trailing block goes to (t,t)
            std::size_t bi = m, bj = n;
            for (std::size_t i = t; i < m; ++i)
                for (std::size_t j = t; j < n; ++j)
                    if (D[i][j] != 0 && (bi == m || abs(D[i][j]) < abs(D[bi][bj]))) bi = i, bj = j;
            if (bi == m) goto done;
            swap_rows(t, bi);
            swap_cols(t, bj);
            bool clean = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                Int q = D[i][t] / D[t][t];
                if (q != 0) add_row(i, t, -q);
                if (D[i][t] != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                Int q = D[t][j] / D[t][t];
                if (q != 0) add_col(j, t, -q);
                if (D[t][j] != 0) clean = false;
            }
            if (!clean) continue;
            bool divides = true;
            for (std::size_t i = t + 1; i < m && divides; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (D[i][j] % D[t][t] != 0) {
                        add_row(t, i, 1);
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        if (D[t][t] < 0) {
            for (std::size_t j = 0; j < n; ++j) D[t][j] = -D[t][j];
            for (std::size_t j = 0; j < m; ++j) U[t][j] = -U[t][j];
        }
    }
done:
    return {U, D, V};
}

// Rank-n lattice, optionally a sublattice given by basis columns.
struct IntLattice {
    std::size_t rank = 0;
    std::optional<IntMat> basis;
};

// Invariant factors of the lattice spanned by integer vectors; all 1 iff saturated.
inline std::vector<Int> invariant_factors(const std::vector<RatVec>& vecs) {
    if (vecs.empty()) return {};
    IntMat a(vecs.size(), std::vector<Int>(vecs[0].size()));
    for (std::size_t i = 0; i < vecs.size(); ++i)
        for (std::size_t j = 0; j < vecs[i].size(); ++j) {
            if (vecs[i][j].get_den() != 1) throw Error("NotIntegral", "invariant_factors");
            a[i][j] = vecs[i][j].get_num();
        }
    auto s = smith_normal_form(a);
    std::vector<Int> f;
    for (std::size_t i = 0; i < std::min(a.size(), a[0].size()); ++i)
        if (s.D[i][i] != 0) f.push_back(s.D[i][i]);
    return f;
}

}  // namespace tnarak
