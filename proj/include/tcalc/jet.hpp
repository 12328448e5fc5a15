#pragma once
// Truncated multivariate Taylor arithmetic ("jets").
//
// A Jet holds the value and all partial derivatives of a scalar up to a fixed
// truncation order at one expansion point.  Coefficients are Taylor
// normalized: slot alpha stores d^alpha f / alpha!.  With that normalization
// multiplication is a plain truncated polynomial product and composition with
// a univariate series is a Horner loop.
//
// Jets are immutable values; every operation returns a fresh jet, so shared
// use across threads needs no locking.

#include <cmath>
#include <span>
#include <vector>

#include "tcalc/errors.hpp"
#include "tcalc/multi_index.hpp"

namespace tcalc {

class Jet {
  public:
    Jet(int dim, int order) : dim_(dim), order_(order) {
        coeffs_.assign(static_cast<std::size_t>(n_jet_coeffs(dim, order)), 0.0);
    }

    static Jet constant(int dim, int order, double v) {
        Jet j(dim, order);
        j.coeffs_[0] = v;
        return j;
    }

    // Coordinate function x_slot evaluated at `value`: jet is value + delta.
    static Jet coordinate(int dim, int order, int slot, double value) {
        if (slot < 0 || slot >= dim) {
            throw ArgumentError("jet coordinate slot out of range: " + std::to_string(slot) +
                                " for dim " + std::to_string(dim));
        }
        Jet j(dim, order);
        j.coeffs_[0] = value;
        if (order >= 1) {
            Exponents e{};
            e[static_cast<std::size_t>(slot)] = 1;
            j.coeffs_[static_cast<std::size_t>(j.table().slot(e))] = 1.0;
        }
        return j;
    }

    int dim() const { return dim_; }
    int order() const { return order_; }
    double value() const { return coeffs_[0]; }
    const std::vector<double>& coeffs() const { return coeffs_; }
    double coeff(int slot) const { return coeffs_[static_cast<std::size_t>(slot)]; }

    const MultiIndexTable& table() const { return mi_table(dim_, order_); }

    // Raw partial derivative d^alpha f (coefficient times alpha!).
    double derivative(const Exponents& alpha) const {
        const auto& t = table();
        int deg = 0;
        for (int d = 0; d < dim_; ++d) deg += alpha[static_cast<std::size_t>(d)];
        if (deg > order_) throw ArgumentError("jet derivative order exceeds truncation order");
        const int s = t.slot(alpha);
        return coeffs_[static_cast<std::size_t>(s)] * t.factorial[static_cast<std::size_t>(s)];
    }
    double d1(int i) const {
        Exponents e{};
        e[static_cast<std::size_t>(i)] = 1;
        return derivative(e);
    }
    double d2(int i, int j) const {
        Exponents e{};
        e[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(e[static_cast<std::size_t>(i)] + 1);
        e[static_cast<std::size_t>(j)] = static_cast<std::uint8_t>(e[static_cast<std::size_t>(j)] + 1);
        return derivative(e);
    }

    // Drop coefficients above new_order.  The graded enumeration makes the
    // lower-order block a prefix.
    Jet truncated(int new_order) const {
        if (new_order > order_) throw ArgumentError("jet truncation cannot raise the order");
        if (new_order == order_) return *this;
        Jet r(dim_, new_order);
        for (std::size_t k = 0; k < r.coeffs_.size(); ++k) r.coeffs_[k] = coeffs_[k];
        return r;
    }

    // Partial derivative as a jet of order-1 lower order.
    Jet partial(int direction) const {
        if (direction < 0 || direction >= dim_) throw ArgumentError("jet partial direction out of range");
        if (order_ == 0) throw ArgumentError("jet partial needs order >= 1");
        const auto& t = table();
        Jet r(dim_, order_ - 1);
        const auto& src = t.dsrc[static_cast<std::size_t>(direction)];
        const auto& fac = t.dfac[static_cast<std::size_t>(direction)];
        for (std::size_t k = 0; k < r.coeffs_.size(); ++k) {
            r.coeffs_[k] = coeffs_[static_cast<std::size_t>(src[k])] * fac[k];
        }
        return r;
    }

    Jet operator-() const {
        Jet r = *this;
        for (auto& c : r.coeffs_) c = -c;
        return r;
    }

    Jet& operator+=(const Jet& o) {
        check_compatible(o);
        for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
        return *this;
    }
    Jet& operator-=(const Jet& o) {
        check_compatible(o);
        for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
        return *this;
    }
    Jet& operator+=(double s) {
        coeffs_[0] += s;
        return *this;
    }
    Jet& operator-=(double s) {
        coeffs_[0] -= s;
        return *this;
    }
    Jet& operator*=(double s) {
        for (auto& c : coeffs_) c *= s;
        return *this;
    }

    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator+(Jet a, double s) { return a += s; }
    friend Jet operator+(double s, Jet a) { return a += s; }
    friend Jet operator-(Jet a, double s) { return a -= s; }
    friend Jet operator-(double s, const Jet& a) { return (-a) += s; }
    friend Jet operator*(Jet a, double s) { return a *= s; }
    friend Jet operator*(double s, Jet a) { return a *= s; }
    friend Jet operator/(Jet a, double s) { return a *= (1.0 / s); }

    friend Jet operator*(const Jet& a, const Jet& b) {
        a.check_compatible(b);
        Jet r(a.dim_, a.order_);
        for (const auto& e : a.table().prod) {
            r.coeffs_[e.c] += a.coeffs_[e.i] * b.coeffs_[e.j];
        }
        return r;
    }
    Jet& operator*=(const Jet& o) { return *this = *this * o; }

    friend Jet operator/(const Jet& a, const Jet& b);
    Jet& operator/=(const Jet& o) { return *this = *this / o; }

  private:
    void check_compatible(const Jet& o) const {
        if (dim_ != o.dim_ || order_ != o.order_) {
            throw ArgumentError("jet arithmetic requires equal dim and order (" +
                                std::to_string(dim_) + "/" + std::to_string(order_) + " vs " +
                                std::to_string(o.dim_) + "/" + std::to_string(o.order_) + ")");
        }
    }

    friend Jet compose_series(const Jet& u, std::span<const double> fk);

    int dim_;
    int order_;
    std::vector<double> coeffs_;
};

// Composition with a univariate Taylor series: fk[k] = F^(k)(u.value())/k!.
// Result = sum_k fk[k] * (u - u0)^k, evaluated by Horner on jets.  Exact to
// rounding because (u - u0) has no constant term, so the sum terminates.
inline Jet compose_series(const Jet& u, std::span<const double> fk) {
    Jet w = u;
    w.coeffs_[0] = 0.0;
    Jet r = Jet::constant(u.dim(), u.order(), fk[static_cast<std::size_t>(u.order())]);
    for (int k = u.order() - 1; k >= 0; --k) {
        r = r * w;
        r += fk[static_cast<std::size_t>(k)];
    }
    return r;
}

namespace detail {

inline std::vector<double> series_exp(double x, int order) {
    std::vector<double> fk(static_cast<std::size_t>(order) + 1);
    const double e = std::exp(x);
    double kfact = 1.0;
    for (int k = 0; k <= order; ++k) {
        if (k > 0) kfact *= k;
        fk[static_cast<std::size_t>(k)] = e / kfact;
    }
    return fk;
}

inline std::vector<double> series_log(double x, int order) {
    // F^(k)/k! = (-1)^(k-1) / (k x^k) for k >= 1
    std::vector<double> fk(static_cast<std::size_t>(order) + 1);
    fk[0] = std::log(x);
    double xk = 1.0;
    for (int k = 1; k <= order; ++k) {
        xk *= x;
        fk[static_cast<std::size_t>(k)] = ((k % 2) ? 1.0 : -1.0) / (k * xk);
    }
    return fk;
}

// Generalized binomial series for x^p: F^(k)/k! = C(p, k) x^(p-k).
inline std::vector<double> series_pow(double x, double p, int order) {
    std::vector<double> fk(static_cast<std::size_t>(order) + 1);
    double binom = 1.0;
    for (int k = 0; k <= order; ++k) {
        if (k > 0) binom *= (p - (k - 1)) / k;
        fk[static_cast<std::size_t>(k)] = binom * std::pow(x, p - k);
    }
    return fk;
}

inline void series_sin_cos(double x, int order, std::vector<double>& s, std::vector<double>& c) {
    s.resize(static_cast<std::size_t>(order) + 1);
    c.resize(static_cast<std::size_t>(order) + 1);
    const double sv = std::sin(x), cv = std::cos(x);
    const double cycle_s[4] = {sv, cv, -sv, -cv};
    const double cycle_c[4] = {cv, -sv, -cv, sv};
    double kfact = 1.0;
    for (int k = 0; k <= order; ++k) {
        if (k > 0) kfact *= k;
        s[static_cast<std::size_t>(k)] = cycle_s[k % 4] / kfact;
        c[static_cast<std::size_t>(k)] = cycle_c[k % 4] / kfact;
    }
}

inline void series_sinh_cosh(double x, int order, std::vector<double>& s, std::vector<double>& c) {
    s.resize(static_cast<std::size_t>(order) + 1);
    c.resize(static_cast<std::size_t>(order) + 1);
    const double sv = std::sinh(x), cv = std::cosh(x);
    double kfact = 1.0;
    for (int k = 0; k <= order; ++k) {
        if (k > 0) kfact *= k;
        s[static_cast<std::size_t>(k)] = ((k % 2) ? cv : sv) / kfact;
        c[static_cast<std::size_t>(k)] = ((k % 2) ? sv : cv) / kfact;
    }
}

}  // namespace detail

inline Jet reciprocal(const Jet& a) {
    const double x = a.value();
    if (x == 0.0) throw EvalError("division by a jet with value 0");
    // F^(k)/k! for 1/x: (-1)^k / x^(k+1)
    std::vector<double> fk(static_cast<std::size_t>(a.order()) + 1);
    double xk = x;
    for (int k = 0; k <= a.order(); ++k) {
        fk[static_cast<std::size_t>(k)] = ((k % 2) ? -1.0 : 1.0) / xk;
        xk *= x;
    }
    return compose_series(a, fk);
}

inline Jet operator/(const Jet& a, const Jet& b) {
    a.check_compatible(b);
    return a * reciprocal(b);
}
inline Jet operator/(double s, const Jet& b) { return reciprocal(b) * s; }

inline Jet exp(const Jet& a) { return compose_series(a, detail::series_exp(a.value(), a.order())); }

inline Jet log(const Jet& a) {
    if (!(a.value() > 0.0)) throw EvalError("log of a jet with nonpositive value");
    return compose_series(a, detail::series_log(a.value(), a.order()));
}

inline Jet sqrt(const Jet& a) {
    if (!(a.value() > 0.0)) throw EvalError("sqrt of a jet with nonpositive value");
    return compose_series(a, detail::series_pow(a.value(), 0.5, a.order()));
}

inline Jet sin(const Jet& a) {
    std::vector<double> s, c;
    detail::series_sin_cos(a.value(), a.order(), s, c);
    return compose_series(a, s);
}
inline Jet cos(const Jet& a) {
    std::vector<double> s, c;
    detail::series_sin_cos(a.value(), a.order(), s, c);
    return compose_series(a, c);
}
inline Jet tan(const Jet& a) {
    const Jet c = cos(a);
    if (c.value() == 0.0) throw EvalError("tan at a pole of cos");
    return sin(a) / c;
}
inline Jet sinh(const Jet& a) {
    std::vector<double> s, c;
    detail::series_sinh_cosh(a.value(), a.order(), s, c);
    return compose_series(a, s);
}
inline Jet cosh(const Jet& a) {
    std::vector<double> s, c;
    detail::series_sinh_cosh(a.value(), a.order(), s, c);
    return compose_series(a, c);
}
inline Jet tanh(const Jet& a) { return sinh(a) / cosh(a); }

// Integer power by squaring; valid for any base value.
inline Jet ipow(const Jet& a, long n) {
    if (n < 0) return reciprocal(ipow(a, -n));
    Jet r = Jet::constant(a.dim(), a.order(), 1.0);
    Jet base = a;
    while (n > 0) {
        if (n & 1) r = r * base;
        base = base * base;
        n >>= 1;
    }
    return r;
}

inline bool is_integer(double x, long& out) {
    if (std::abs(x) > 1e15) return false;
    const double r = std::nearbyint(x);
    if (r == x) {
        out = static_cast<long>(r);
        return true;
    }
    return false;
}

inline Jet pow(const Jet& a, double p) {
    long n;
    if (is_integer(p, n)) return ipow(a, n);
    if (!(a.value() > 0.0)) {
        throw EvalError("non-integer power of a jet with nonpositive value");
    }
    return compose_series(a, detail::series_pow(a.value(), p, a.order()));
}

inline bool jet_is_constant(const Jet& j) {
    for (std::size_t k = 1; k < j.coeffs().size(); ++k) {
        if (j.coeffs()[k] != 0.0) return false;
    }
    return true;
}

inline Jet pow(const Jet& a, const Jet& b) {
    if (jet_is_constant(b)) return pow(a, b.value());
    if (!(a.value() > 0.0)) {
        throw EvalError("power with non-constant exponent requires a positive base");
    }
    return exp(b * log(a));
}

// Whitelisted elementary operations, used by the expression evaluator.
enum class JetFn { Add, Sub, Mul, Div, Pow, Neg, Sin, Cos, Tan, Sinh, Cosh, Tanh, Exp, Log, Sqrt };

inline Jet jet_apply(JetFn fn, std::span<const Jet> args) {
    auto need = [&](std::size_t n) {
        if (args.size() != n) throw ArgumentError("jet_apply: wrong argument count");
    };
    switch (fn) {
        case JetFn::Add: need(2); return args[0] + args[1];
        case JetFn::Sub: need(2); return args[0] - args[1];
        case JetFn::Mul: need(2); return args[0] * args[1];
        case JetFn::Div: need(2); return args[0] / args[1];
        case JetFn::Pow: need(2); return pow(args[0], args[1]);
        case JetFn::Neg: need(1); return -args[0];
        case JetFn::Sin: need(1); return sin(args[0]);
        case JetFn::Cos: need(1); return cos(args[0]);
        case JetFn::Tan: need(1); return tan(args[0]);
        case JetFn::Sinh: need(1); return sinh(args[0]);
        case JetFn::Cosh: need(1); return cosh(args[0]);
        case JetFn::Tanh: need(1); return tanh(args[0]);
        case JetFn::Exp: need(1); return exp(args[0]);
        case JetFn::Log: need(1); return log(args[0]);
        case JetFn::Sqrt: need(1); return sqrt(args[0]);
    }
    throw ArgumentError("jet_apply: unknown function");
}

}  // namespace tcalc
