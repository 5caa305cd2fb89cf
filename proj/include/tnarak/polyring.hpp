#pragma once
// Homogeneous polynomials over Q in ambient coordinates, restriction to
// subspaces and sums of rational functions with linear-form denominators.

#include "tnarak/qlinalg.hpp"

#include <map>
#include <sstream>

namespace tnarak {

using Exponent = std::vector<int>;

// All exponent vectors of total degree k in d variables, in descending lex order.
inline std::vector<Exponent> monomials(std::size_t d, int k) {
    std::vector<Exponent> out;
    if (k < 0) return out;
    if (d == 0) {
        if (k == 0) out.push_back({});
        return out;
    }
    Exponent e(d, 0);
    auto rec = [&](auto&& self, std::size_t i, int left) -> void {
        if (i + 1 == d) {
            e[i] = left;
            out.push_back(e);
            return;
        }
        for (int a = left; a >= 0; --a) {
            e[i] = a;
            self(self, i + 1, left - a);
        }
    };
    rec(rec, 0, k);
    return out;
}

class HomogPoly {
public:
    HomogPoly() = default;
    HomogPoly(std::size_t dim, int degree) : dim_(dim), deg_(degree) {}

    static HomogPoly constant(std::size_t dim, const Rat& c) {
        HomogPoly p(dim, 0);
        p.add_term(Exponent(dim, 0), c);
        return p;
    }
    static HomogPoly variable(std::size_t dim, std::size_t i) {
        HomogPoly p(dim, 1);
        Exponent e(dim, 0);
        e.at(i) = 1;
        p.add_term(e, 1);
        return p;
    }
    static HomogPoly linear(const RatVec& coeffs) {
        HomogPoly p(coeffs.size(), 1);
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            Exponent e(coeffs.size(), 0);
            e[i] = 1;
            p.add_term(e, coeffs[i]);
        }
        return p;
    }
    static HomogPoly monomial(const Exponent& e, const Rat& c = 1) {
        int k = 0;
        for (int x : e) k += x;
        HomogPoly p(e.size(), k);
        p.add_term(e, c);
        return p;
    }

    std::size_t dim() const { return dim_; }
    int degree() const { return deg_; }
    const std::map<Exponent, Rat>& terms() const { return c_; }
    bool is_zero() const { return c_.empty(); }

    Rat coeff(const Exponent& e) const {
        auto it = c_.find(e);
        return it == c_.end() ? Rat(0) : it->second;
    }

    void add_term(const Exponent& e, const Rat& c) {
        if (e.size() != dim_) throw Error("DimensionMismatch", "monomial length");
        int k = 0;
        for (int x : e) k += x;
        if (k != deg_) throw Error("DegreeMismatch", "term of degree " + std::to_string(k) + " in degree " + std::to_string(deg_) + " polynomial");
        if (c == 0) return;
        auto [it, fresh] = c_.emplace(e, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) c_.erase(it);
        }
    }

    HomogPoly operator-() const {
        HomogPoly r = *this;
        for (auto& [e, c] : r.c_) c = -c;
        return r;
    }

    HomogPoly& operator+=(const HomogPoly& o) {
        check_same(o, "add");
        for (auto& [e, c] : o.c_) add_term(e, c);
        return *this;
    }
    HomogPoly& operator-=(const HomogPoly& o) {
        check_same(o, "sub");
        for (auto& [e, c] : o.c_) add_term(e, -c);
        return *this;
    }
    friend HomogPoly operator+(HomogPoly a, const HomogPoly& b) { return a += b; }
    friend HomogPoly operator-(HomogPoly a, const HomogPoly& b) { return a -= b; }

    friend HomogPoly operator*(const Rat& s, const HomogPoly& p) {
        HomogPoly r(p.dim_, p.deg_);
        if (s == 0) return r;
        for (auto& [e, c] : p.c_) r.c_.emplace(e, s * c);
        return r;
    }

    friend HomogPoly operator*(const HomogPoly& a, const HomogPoly& b) {
        if (a.dim_ != b.dim_) throw Error("DimensionMismatch", "poly mul");
        HomogPoly r(a.dim_, a.deg_ + b.deg_);
        Exponent e(a.dim_);
        for (auto& [ea, ca] : a.c_)
            for (auto& [eb, cb] : b.c_) {
                for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
                r.add_term(e, ca * cb);
            }
        return r;
    }

    bool operator==(const HomogPoly& o) const { return dim_ == o.dim_ && (c_ == o.c_) && (deg_ == o.deg_ || c_.empty()); }
    bool operator!=(const HomogPoly& o) const { return !(*this == o); }

    HomogPoly pow(int k) const {
        HomogPoly r = constant(dim_, 1);
        for (int i = 0; i < k; ++i) r = r * *this;
        return r;
    }

    Rat evaluate(const RatVec& x) const {
        if (x.size() != dim_) throw Error("DimensionMismatch", "evaluate");
        Rat s = 0;
        for (auto& [e, c] : c_) {
            Rat m = c;
            for (std::size_t i = 0; i < dim_; ++i)
                for (int j = 0; j < e[i]; ++j) m *= x[i];
            s += m;
        }
        return s;
    }

    // x_j = sum_i M(j,i) y_i; result lives in M.cols() variables.
    HomogPoly substitute(const RatMat& M) const {
        if (M.rows() != dim_) throw Error("DimensionMismatch", "substitute");
        std::size_t m = M.cols();
        HomogPoly r(m, deg_);
        std::vector<std::vector<HomogPoly>> powers(dim_);
        for (auto& [e, c] : c_) {
            HomogPoly t = constant(m, c);
            for (std::size_t j = 0; j < dim_; ++j) {
                if (e[j] == 0) continue;
                auto& pw = powers[j];
                if (pw.empty()) pw.push_back(constant(m, 1));
                while ((int)pw.size() <= e[j]) pw.push_back(pw.back() * linear(M.row(j)));
                t = t * pw[e[j]];
            }
            r += t;
        }
        return r;
    }

    // Coefficient vector against monomials(dim, degree).
    RatVec coeff_vector() const {
        auto mons = monomials(dim_, deg_);
        RatVec v(mons.size());
        for (std::size_t i = 0; i < mons.size(); ++i) v[i] = coeff(mons[i]);
        return v;
    }
    static HomogPoly from_coeff_vector(std::size_t dim, int deg, const RatVec& v) {
        auto mons = monomials(dim, deg);
        if (mons.size() != v.size()) throw Error("DimensionMismatch", "coefficient vector");
        HomogPoly p(dim, deg);
        for (std::size_t i = 0; i < mons.size(); ++i) p.add_term(mons[i], v[i]);
        return p;
    }

    std::string str(const std::vector<std::string>& names = {}) const {
        if (c_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
            auto& [e, c] = *it;
            Rat a = c;
            bool unit_mono = std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
            if (!first) os << (a < 0 ? " - " : " + ");
            else if (a < 0) os << "-";
            Rat ab = abs(a);
            if (ab != 1 || unit_mono) os << ab.get_str();
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (!e[i]) continue;
                os << (i < names.size() ? names[i] : "x" + std::to_string(i));
                if (e[i] > 1) os << "^" << e[i];
            }
            first = false;
        }
        return os.str();
    }

private:
    void check_same(const HomogPoly& o, const char* what) const {
        if (dim_ != o.dim_) throw Error("DimensionMismatch", what);
        if (deg_ != o.deg_) throw Error("DegreeMismatch", std::string(what) + ": " + std::to_string(deg_) + " vs " + std::to_string(o.deg_));
    }

    std::size_t dim_ = 0;
    int deg_ = 0;
    std::map<Exponent, Rat> c_;
};

inline HomogPoly poly_add(const HomogPoly& p, const HomogPoly& q) { return p + q; }
inline HomogPoly poly_mul(const HomogPoly& p, const HomogPoly& q) { return p * q; }

struct LinSubspace {
    std::size_t dim = 0;
    std::vector<RatVec> basis;
};

// Parametrize V by its basis and test p - q for the zero polynomial.
inline bool equal_on_span(const HomogPoly& p, const HomogPoly& q, const LinSubspace& V) {
    if (p.dim() != q.dim() || p.dim() != V.dim) throw Error("DimensionMismatch", "equal_on_span");
    HomogPoly d(p.dim(), p.degree());
    if (p.degree() == q.degree()) d = p - q;
    else if (!p.is_zero() || !q.is_zero()) throw Error("DegreeMismatch", "equal_on_span");
    if (d.is_zero()) return true;
    if (V.basis.empty()) return d.degree() > 0 || d.is_zero();
    return d.substitute(RatMat::from_cols(V.basis, V.dim)).is_zero();
}

// Division by a single polynomial in descending lex order: p = quot*q + rem.
inline std::pair<HomogPoly, HomogPoly> divide(const HomogPoly& p, const HomogPoly& q) {
    if (q.is_zero()) throw Error("DivisionByZero", "divide");
    auto lt_q = *q.terms().rbegin();
    HomogPoly quot(p.dim(), p.degree() - q.degree()), rem(p.dim(), p.degree()), work = p;
    while (!work.is_zero()) {
        auto lt = *work.terms().rbegin();
        Exponent diff(p.dim());
        bool div = true;
        for (std::size_t i = 0; i < p.dim(); ++i) {
            diff[i] = lt.first[i] - lt_q.first[i];
            if (diff[i] < 0) div = false;
        }
        if (div) {
            Rat c = lt.second / lt_q.second;
            quot.add_term(diff, c);
            work -= HomogPoly::monomial(diff, c) * q;
        } else {
            rem.add_term(lt.first, lt.second);
            work.add_term(lt.first, -lt.second);
        }
    }
    return {quot, rem};
}

// num / prod(den linear forms), denominator kept factored.
struct RatFun {
    HomogPoly num;
    std::vector<RatVec> den;
};

// Exact sum of rational functions; the total must be a polynomial.
inline HomogPoly ratfun_sum_to_poly(const std::vector<RatFun>& terms, std::size_t dim) {
    // normalize each factor to leading coefficient 1
    std::vector<std::pair<HomogPoly, std::vector<RatVec>>> norm;
    std::vector<std::pair<RatVec, int>> common;
    int out_deg = 0;
    bool have_deg = false;
    for (auto& t : terms) {
        if (t.num.dim() != dim) throw Error("DimensionMismatch", "ratfun_sum_to_poly");
        HomogPoly num = t.num;
        std::vector<RatVec> fs;
        for (auto f : t.den) {
            if (f.size() != dim || is_zero(f)) throw Error("DivisionByZero", "zero linear factor");
            std::size_t i = 0;
            while (f[i] == 0) ++i;
            Rat lead = f[i];
            f = (1 / lead) * f;
            num = (1 / lead) * num;
            fs.push_back(f);
        }
        int deg = t.num.degree() - (int)fs.size();
        if (!t.num.is_zero()) {
            if (have_deg && deg != out_deg) throw Error("DegreeMismatch", "ratfun terms of different degree");
            out_deg = deg;
            have_deg = true;
        }
        std::map<RatVec, int> mult;
        for (auto& f : fs) mult[f]++;
        for (auto& [f, m] : mult) {
            auto it = std::find_if(common.begin(), common.end(), [&](auto& c) { return c.first == f; });
            if (it == common.end()) common.push_back({f, m});
            else it->second = std::max(it->second, m);
        }
        norm.push_back({num, fs});
    }
    if (!have_deg) return HomogPoly(dim, 0);
    int total = 0;
    for (auto& c : common) total += c.second;
    HomogPoly sum(dim, out_deg + total);
    for (auto& [num, fs] : norm) {
        if (num.is_zero()) continue;
        std::map<RatVec, int> mult;
        for (auto& f : fs) mult[f]++;
        HomogPoly t = num;
        for (auto& [f, m] : common) {
            int extra = m - (mult.count(f) ? mult[f] : 0);
            for (int j = 0; j < extra; ++j) t = t * HomogPoly::linear(f);
        }
        sum += t;
    }
    for (auto& [f, m] : common)
        for (int j = 0; j < m; ++j) {
            if (sum.is_zero()) break;
            auto [q, r] = divide(sum, HomogPoly::linear(f));
            if (!r.is_zero()) throw Error("NotPolynomial", "remainder " + r.str());
            sum = q;
        }
    if (sum.is_zero()) return HomogPoly(dim, out_deg);
    return sum;
}

}  // namespace tnarak
