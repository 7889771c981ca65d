#pragma once
//
// Exact truncated power-series engine.
//
// Coefficients are exact (big integers, big rationals, or sparse multivariate
// polynomials over big integers for face-degree markers x_i).  All arithmetic
// is truncating at a fixed order which is tracked explicitly; there is no
// floating point anywhere in this module.

#include <boost/multiprecision/cpp_int.hpp>

#include <cassert>
#include <functional>
#include <map>
#include <stdexcept>
#include <vector>

namespace tormaps::series {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// ---------------------------------------------------------------------------
// Sparse multivariate polynomial in markers x_i, with big-integer
// coefficients.  Used as a coefficient ring for Series to carry face-degree
// markers symbolically; most callers instead substitute integer values for
// the x_i up front and work with Series<Int>.
// ---------------------------------------------------------------------------
class Poly {
public:
    // monomial: map variable index -> positive exponent (empty = constant 1)
    using Monomial = std::map<int, int>;

    Poly() = default;
    Poly(int v) { if (v != 0) terms_[Monomial{}] = v; }
    Poly(const Int& v) { if (v != 0) terms_[Monomial{}] = v; }
    static Poly variable(int index) {
        Poly p;
        p.terms_[Monomial{{index, 1}}] = 1;
        return p;
    }

    bool is_zero() const { return terms_.empty(); }
    const std::map<Monomial, Int>& terms() const { return terms_; }

    Poly& operator+=(const Poly& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator-(const Poly& a) { return Poly{} - a; }
    friend Poly operator*(const Poly& a, const Poly& b) {
        Poly r;
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) {
                Monomial m = ma;
                for (const auto& [v, e] : mb) m[v] += e;
                r.add_term(m, ca * cb);
            }
        return r;
    }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }
    friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    // Substitute integer values for all variables.
    Int evaluate(const std::map<int, Int>& values) const {
        Int total = 0;
        for (const auto& [m, c] : terms_) {
            Int prod = c;
            for (const auto& [v, e] : m) {
                auto it = values.find(v);
                Int base = (it == values.end()) ? Int(0) : it->second;
                for (int k = 0; k < e; ++k) prod *= base;
            }
            total += prod;
        }
        return total;
    }

private:
    void add_term(const Monomial& m, const Int& c) {
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            if (c != 0) terms_[m] = c;
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }
    std::map<Monomial, Int> terms_;
};

// ---------------------------------------------------------------------------
// Series<C>: truncated formal power series sum_{k=0..order} c_k z^k.
// ---------------------------------------------------------------------------
template <class C>
class Series {
public:
    explicit Series(int order) : order_(order), c_(static_cast<size_t>(order) + 1) {
        if (order < 0) throw std::invalid_argument("series order must be >= 0");
    }
    static Series constant(int order, C v) {
        Series s(order);
        s.c_[0] = std::move(v);
        return s;
    }
    static Series z(int order) {
        Series s(order);
        if (order >= 1) s.c_[1] = C(1);
        return s;
    }
    // monomial c * z^k (k may exceed order, yielding 0)
    static Series monomial(int order, C coeff, int k) {
        Series s(order);
        if (k >= 0 && k <= order) s.c_[static_cast<size_t>(k)] = std::move(coeff);
        return s;
    }

    int order() const { return order_; }
    const C& operator[](int k) const { return c_.at(static_cast<size_t>(k)); }
    C& at(int k) { return c_.at(static_cast<size_t>(k)); }

    bool is_zero() const {
        for (const auto& x : c_)
            if (!(x == C(0))) return false;
        return true;
    }
    // smallest k with c_k != 0, or order+1 if zero
    int valuation() const {
        for (int k = 0; k <= order_; ++k)
            if (!(c_[static_cast<size_t>(k)] == C(0))) return k;
        return order_ + 1;
    }

    Series& operator+=(const Series& o) {
        check(o);
        for (int k = 0; k <= order_; ++k) c_[k] += o.c_[k];
        return *this;
    }
    Series& operator-=(const Series& o) {
        check(o);
        for (int k = 0; k <= order_; ++k) c_[k] -= o.c_[k];
        return *this;
    }
    friend Series operator+(Series a, const Series& b) { return a += b; }
    friend Series operator-(Series a, const Series& b) { return a -= b; }
    friend Series operator-(const Series& a) {
        Series r(a.order_);
        for (int k = 0; k <= a.order_; ++k) r.c_[k] = -a.c_[k];
        return r;
    }
    friend Series operator*(const Series& a, const Series& b) {
        a.check(b);
        Series r(a.order_);
        for (int i = 0; i <= a.order_; ++i) {
            if (a.c_[i] == C(0)) continue;
            for (int j = 0; i + j <= a.order_; ++j) {
                if (b.c_[j] == C(0)) continue;
                r.c_[i + j] += a.c_[i] * b.c_[j];
            }
        }
        return r;
    }
    Series& operator*=(const Series& o) { return *this = *this * o; }
    friend Series operator*(const C& s, const Series& a) {
        Series r(a.order_);
        for (int k = 0; k <= a.order_; ++k) r.c_[k] = s * a.c_[k];
        return r;
    }
    friend bool operator==(const Series& a, const Series& b) {
        return a.order_ == b.order_ && a.c_ == b.c_;
    }
    friend bool operator!=(const Series& a, const Series& b) { return !(a == b); }

    Series pow(int e) const {
        if (e < 0) throw std::invalid_argument("negative exponent");
        Series r = constant(order_, C(1));
        Series base = *this;
        while (e > 0) {
            if (e & 1) r = r * base;
            base = base * base;
            e >>= 1;
        }
        return r;
    }

    // multiplicative inverse; requires invertible constant term (+1 or -1 for
    // integer-like C so that the result stays in the ring)
    Series reciprocal() const {
        const C& a0 = c_[0];
        if (a0 == C(0)) throw std::invalid_argument("reciprocal of series with zero constant term");
        Series r(order_);
        r.c_[0] = inverse_of_unit(a0);
        for (int k = 1; k <= order_; ++k) {
            C acc(0);
            for (int j = 1; j <= k; ++j) acc += c_[j] * r.c_[k - j];
            r.c_[k] = -(r.c_[0] * acc);
        }
        // verify exactness for rings where inverse_of_unit may be lossy
        Series checkp = *this * r;
        if (!(checkp == constant(order_, C(1))))
            throw std::domain_error("series constant term is not a unit in the coefficient ring");
        return r;
    }

    // this(inner), inner must have zero constant term
    Series compose(const Series& inner) const {
        check(inner);
        if (!(inner.c_[0] == C(0)))
            throw std::invalid_argument("composition requires inner constant term 0");
        // Horner from the top coefficient down
        Series r = constant(order_, c_[static_cast<size_t>(order_)]);
        for (int k = order_ - 1; k >= 0; --k) {
            r = r * inner;
            r.c_[0] += c_[static_cast<size_t>(k)];
        }
        return r;
    }

private:
    static C inverse_of_unit(const C& a0) {
        if constexpr (std::is_same_v<C, Rat>) {
            return C(1) / a0;
        } else {
            // integer-like rings: only +-1 are units; Poly handled by the
            // post-check in reciprocal()
            return a0;  // a0 == +-1 => a0 is its own inverse; otherwise post-check fires
        }
    }
    void check(const Series& o) const {
        if (o.order_ != order_) throw std::invalid_argument("series order mismatch");
    }
    int order_;
    std::vector<C> c_;
};

using ZSeries = Series<Int>;
using QSeries = Series<Rat>;

// conversions
QSeries to_rational(const ZSeries& s);
ZSeries to_integer(const QSeries& s);  // throws if any coefficient is non-integral

// Solve y = F(y) where F gains at least one order of accuracy every
// `stride` applications (stride = 1 for classical z-valuation-gaining maps).
template <class C>
Series<C> fixed_point(int order, const std::function<Series<C>(const Series<C>&)>& f,
                      int stride = 1) {
    Series<C> y(order);
    int limit = stride * (order + 2) + 2;
    for (int it = 0; it < limit; ++it) {
        Series<C> next = f(y);
        if (next == y) return y;
        y = std::move(next);
    }
    throw std::domain_error("fixed_point did not converge (non-contracting map)");
}

// h_j(w_1..w_m) = [t^j] 1/(1 - sum t^i w_i): sum over compositions of j of
// products of the parts' w's.  Computed by the recurrence
// h_j = sum_{i=1..min(j,m)} w_i h_{j-i}, h_0 = 1.
template <class C>
Series<C> h_poly(int j, const std::vector<Series<C>>& w) {
    if (j < 0) throw std::invalid_argument("h_poly requires j >= 0");
    if (w.empty()) {
        // no parts available: h_0 = 1, h_j = 0 for j > 0 -- need an order; force caller
        throw std::invalid_argument("h_poly needs at least one argument series");
    }
    int order = w[0].order();
    std::vector<Series<C>> h;
    h.push_back(Series<C>::constant(order, C(1)));
    for (int k = 1; k <= j; ++k) {
        Series<C> acc(order);
        for (int i = 1; i <= k && i <= static_cast<int>(w.size()); ++i)
            acc += w[static_cast<size_t>(i - 1)] * h[static_cast<size_t>(k - i)];
        h.push_back(std::move(acc));
    }
    return h[static_cast<size_t>(j)];
}

Int binomial(long n, long k);

// ---------------------------------------------------------------------------
// System (3): W_{-1}..W_{d-1} and A_d = (1+W_0)^d.
// The x-assignment maps i -> value of the face-degree marker x_i (finite
// support; absent = 0).  Values live in the coefficient ring, so markers can
// be symbolic (Poly) or numeric (Int).
// ---------------------------------------------------------------------------
template <class C>
struct WSolution {
    std::map<int, Series<C>> W;  // keys -1..d-1
    Series<C> A;                 // (1+W_0)^d
    WSolution() : A(0) {}
};

template <class C>
WSolution<C> solve_W_system(int d, const std::map<int, C>& x, int order);

template <class C>
struct VSolution {
    std::map<int, Series<C>> V;  // keys 0..b-1
    Series<C> A;                 // hatA_2b = (1+V_0)^{2b}
    VSolution() : A(0) {}
};

// System (5): V_0..V_{b-1} and hatA_2b = (1+V_0)^{2b}.  x maps 2i -> value
// of x_{2i}.
template <class C>
VSolution<C> solve_V_system(int b, const std::map<int, C>& x, int order);

// ---------------------------------------------------------------------------
// Closed forms and mobile-route cross-derivations.
// ---------------------------------------------------------------------------
enum class ClosedForm {
    Triangulation,    // T = r/(1-3r)^2,          r = z(1+r)^4
    Quadrangulation,  // Q = r^2/((1+2r)(1-2r)^2), r = z(1+r)^3
    BipQuadAll,       // F = r^2(1+3r)/((1+r)(1-3r)^2), r = z(1+3r)^2
    LooplessTriAll,   // G = r(1+2r)/(1-4r)^2,     r = z(1+2r)^3
};

ZSeries closed_form_series(ClosedForm which, int order);

// Lattice-path route for T(z); asserts every intermediate rational form and
// the final agreement with closed_form_series(Triangulation).
ZSeries mobile_route_triangulation(int order);

// Lattice-path route for Q(z); ditto against Quadrangulation.
ZSeries mobile_route_quadrangulation(int order);

// Prop: M_d = d * A_d * (G_d/6 + H_d/4); result must be integral.
ZSeries assemble_Md(int d, const ZSeries& A_d, const ZSeries& G_d, const ZSeries& H_d);
// Prop: hatM_2b = 2b * hatA_2b * (hatG/6 + hatH/4).
ZSeries assemble_hatM2b(int b, const ZSeries& hatA, const ZSeries& hatG, const ZSeries& hatH);

// Lattice-path ingredients exposed for tests (bridge counts etc.).
// plus_minus = true: steps {-1,+1}, t marks floor(length/2) (Dyck-type);
// plus_minus = false: steps {-1,0,+1}, t marks length (Motzkin-type).
Int count_bridges(bool plus_minus, int length, int final_height);

}  // namespace tormaps::series
