#pragma once
// Riemannian machinery at a point, all derived from a PointFrame.
//
// Sign conventions (also listed in the README conventions table):
//   Gamma^l_{mn} = (1/2) g^{ls} (d_m g_{sn} + d_n g_{sm} - d_s g_{mn})
//   R^r_{smn}    = d_m Gamma^r_{ns} - d_n Gamma^r_{ms}
//                  + Gamma^r_{ml} Gamma^l_{ns} - Gamma^r_{nl} Gamma^l_{ms}
//   R_{sn}       = R^m_{smn},   R = g^{sn} R_{sn}
// With these choices the unit 2-sphere has R = +2.

#include <vector>

#include "tcalc/frame.hpp"

namespace tcalc {

// Gamma^l_{mn}; jets keep order-1 fewer derivatives than the frame.
inline TensorValue christoffel(const PointFrame& f) {
    if (f.order < 1) throw ArgumentError("christoffel needs frame order >= 1");
    const int n = f.dim;
    const int q = f.order - 1;
    // d_k g_{ij}
    std::vector<Jet> dg(static_cast<std::size_t>(n * n * n), Jet(n, q));
    for (int k = 0; k < n; ++k) {
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                dg[static_cast<std::size_t>((k * n + i) * n + j)] = f.gg(i, j).partial(k);
            }
        }
    }
    auto d = [&](int k, int i, int j) -> const Jet& {
        return dg[static_cast<std::size_t>((k * n + i) * n + j)];
    };
    TensorValue gamma(n, {Var::Up, Var::Lo, Var::Lo}, n, q);
    for (int l = 0; l < n; ++l) {
        for (int m = 0; m < n; ++m) {
            for (int nu = m; nu < n; ++nu) {
                Jet sum(n, q);
                for (int s = 0; s < n; ++s) {
                    sum += f.gi(l, s).truncated(q) * (d(m, s, nu) + d(nu, s, m) - d(s, m, nu));
                }
                sum *= 0.5;
                gamma.at({l, m, nu}) = sum;
                gamma.at({l, nu, m}) = sum;
            }
        }
    }
    return gamma;
}

// Curvature of any torsion-free connection given as Conn^r_{mn} jets.
// Shared by the Levi-Civita and Weyl-connection paths.
inline TensorValue curvature_of_connection(const PointFrame& f, const TensorValue& conn) {
    const int n = f.dim;
    const int q = conn.jet_order() - 1;
    if (q < 0) throw ArgumentError("connection jets must carry at least one derivative order");
    TensorValue out(n, {Var::Up, Var::Lo, Var::Lo, Var::Lo}, n, q);
    for (int r = 0; r < n; ++r) {
        for (int s = 0; s < n; ++s) {
            for (int m = 0; m < n; ++m) {
                for (int nu = m + 1; nu < n; ++nu) {
                    Jet val = conn.at({r, nu, s}).partial(m) - conn.at({r, m, s}).partial(nu);
                    for (int l = 0; l < n; ++l) {
                        val += conn.at({r, m, l}).truncated(q) * conn.at({l, nu, s}).truncated(q);
                        val -= conn.at({r, nu, l}).truncated(q) * conn.at({l, m, s}).truncated(q);
                    }
                    out.at({r, s, m, nu}) = val;
                    out.at({r, s, nu, m}) = -val;
                }
            }
        }
    }
    return out;
}

// R^r_{smn}; order-2 fewer derivatives than the frame.
inline TensorValue riemann(const PointFrame& f) {
    if (f.order < 2) throw ArgumentError("riemann needs frame order >= 2");
    return curvature_of_connection(f, christoffel(f));
}

struct RicciResult {
    TensorValue ricci;  // R_{mn}, lower
    Jet scalar;         // R
};

inline RicciResult ricci(const PointFrame& f) {
    const TensorValue riem = riemann(f);
    const int n = f.dim;
    const int q = riem.jet_order();
    RicciResult r{TensorValue(n, {Var::Lo, Var::Lo}, n, q), Jet(n, q)};
    for (int s = 0; s < n; ++s) {
        for (int nu = 0; nu < n; ++nu) {
            Jet sum(n, q);
            for (int m = 0; m < n; ++m) sum += riem.at({m, s, m, nu});
            r.ricci.at({s, nu}) = sum;
        }
    }
    Jet scalar(n, q);
    for (int s = 0; s < n; ++s) {
        for (int nu = 0; nu < n; ++nu) {
            scalar += f.gi(s, nu).truncated(q) * r.ricci.at({s, nu});
        }
    }
    r.scalar = scalar;
    return r;
}

// Contract slot `slot` with the inverse metric (index up) or metric (down).
inline TensorValue raise_index(const PointFrame& f, const TensorValue& t, int slot) {
    if (t.variance()[static_cast<std::size_t>(slot)] == Var::Up) {
        throw ArgumentError("raise_index: slot is already upper");
    }
    const int n = f.dim;
    const int q = t.jet_order();
    auto var = t.variance();
    var[static_cast<std::size_t>(slot)] = Var::Up;
    TensorValue out(n, var, n, q);
    for (std::size_t flat = 0; flat < out.size(); ++flat) {
        auto idx = out.unflatten(flat);
        Jet sum(n, q);
        for (int c = 0; c < n; ++c) {
            auto src = idx;
            src[static_cast<std::size_t>(slot)] = c;
            std::size_t sflat = 0;
            for (int s = 0; s < t.rank(); ++s) {
                sflat = sflat * static_cast<std::size_t>(n) + static_cast<std::size_t>(src[static_cast<std::size_t>(s)]);
            }
            sum += f.gi(idx[static_cast<std::size_t>(slot)], c).truncated(q) * t[sflat];
        }
        out[flat] = sum;
    }
    return out;
}

inline TensorValue lower_index(const PointFrame& f, const TensorValue& t, int slot) {
    if (t.variance()[static_cast<std::size_t>(slot)] == Var::Lo) {
        throw ArgumentError("lower_index: slot is already lower");
    }
    const int n = f.dim;
    const int q = t.jet_order();
    auto var = t.variance();
    var[static_cast<std::size_t>(slot)] = Var::Lo;
    TensorValue out(n, var, n, q);
    for (std::size_t flat = 0; flat < out.size(); ++flat) {
        auto idx = out.unflatten(flat);
        Jet sum(n, q);
        for (int c = 0; c < n; ++c) {
            auto src = idx;
            src[static_cast<std::size_t>(slot)] = c;
            std::size_t sflat = 0;
            for (int s = 0; s < t.rank(); ++s) {
                sflat = sflat * static_cast<std::size_t>(n) + static_cast<std::size_t>(src[static_cast<std::size_t>(s)]);
            }
            sum += f.gg(idx[static_cast<std::size_t>(slot)], c).truncated(q) * t[sflat];
        }
        out[flat] = sum;
    }
    return out;
}

// Covariant derivative with a supplied connection; the new leftmost slot is
// the (lower) derivative index.  Result keeps min(T.order - 1, Conn.order)
// derivative orders.
inline TensorValue covariant_derivative_with(const TensorValue& t, const TensorValue& conn) {
    const int n = t.dim();
    if (t.jet_order() < 1) throw ArgumentError("covariant derivative needs jets of order >= 1");
    const int q = std::min(t.jet_order() - 1, conn.jet_order());
    std::vector<Var> var;
    var.push_back(Var::Lo);
    for (Var v : t.variance()) var.push_back(v);
    TensorValue out(n, var, n, q);
    for (std::size_t flat = 0; flat < out.size(); ++flat) {
        auto idx = out.unflatten(flat);
        const int w = idx[0];
        std::array<int, 5> tidx{};
        for (int s = 0; s < t.rank(); ++s) tidx[static_cast<std::size_t>(s)] = idx[static_cast<std::size_t>(s + 1)];
        auto tflat = [&](const std::array<int, 5>& ix) {
            std::size_t fl = 0;
            for (int s = 0; s < t.rank(); ++s) fl = fl * static_cast<std::size_t>(n) + static_cast<std::size_t>(ix[static_cast<std::size_t>(s)]);
            return fl;
        };
        Jet sum = t[tflat(tidx)].partial(w).truncated(q);
        for (int s = 0; s < t.rank(); ++s) {
            const int a = tidx[static_cast<std::size_t>(s)];
            for (int c = 0; c < n; ++c) {
                auto src = tidx;
                src[static_cast<std::size_t>(s)] = c;
                const Jet& tc = t[tflat(src)];
                if (t.variance()[static_cast<std::size_t>(s)] == Var::Up) {
                    sum += conn.at({a, w, c}).truncated(q) * tc.truncated(q);
                } else {
                    sum -= conn.at({c, w, a}).truncated(q) * tc.truncated(q);
                }
            }
        }
        out[flat] = sum;
    }
    return out;
}

inline TensorValue covariant_derivative(const PointFrame& f, const TensorValue& t) {
    return covariant_derivative_with(t, christoffel(f));
}

// ---------------------------------------------------------------------------
// Levi-Civita dualization.  epsilon is the permutation symbol (+1/-1/0)
// divided by sqrt|det g|; the branch between sqrt(g) and sqrt(-g) follows the
// recorded sign of det, never the declared signature alone.  Orientation is
// the declared coordinate order.  With these conventions dual(dual(w)) == w
// exactly (round-trip sign +1).
// ---------------------------------------------------------------------------

enum class DualMode { VectorFrom2Form3D, ScalarFrom2Form2D, TwoFormFromVector3D };

inline TensorValue levi_civita_dual(const PointFrame& f, const TensorValue& input, DualMode mode) {
    const int n = f.dim;
    const int q = input.jet_order();
    const Jet sq = f.sqrt_abs_det.truncated(q);
    switch (mode) {
        case DualMode::VectorFrom2Form3D: {
            if (n != 3 || input.rank() != 2) throw ArgumentError("dual: need a rank-2 tensor in dim 3");
            const double scale = input.max_abs_value() + 1.0;
            if (max_antisymmetry_violation(input, 0, 1) / scale > 1e-10) {
                throw ArgumentError("dual: input 2-form is not antisymmetric");
            }
            TensorValue out(n, {Var::Up}, n, q);
            for (int m = 0; m < n; ++m) {
                Jet sum(n, q);
                for (int a = 0; a < n; ++a) {
                    for (int b = 0; b < n; ++b) {
                        const int s = perm_sign({m, a, b});
                        if (s != 0) sum += (0.5 * s) * input.at({a, b});
                    }
                }
                out.at({m}) = sum / sq;
            }
            return out;
        }
        case DualMode::ScalarFrom2Form2D: {
            if (n != 2 || input.rank() != 2) throw ArgumentError("dual: need a rank-2 tensor in dim 2");
            const double scale = input.max_abs_value() + 1.0;
            if (max_antisymmetry_violation(input, 0, 1) / scale > 1e-10) {
                throw ArgumentError("dual: input 2-form is not antisymmetric");
            }
            Jet sum(n, q);
            sum += input.at({0, 1});
            sum -= input.at({1, 0});
            return TensorValue::scalar(n, (0.5 * sum) / sq);
        }
        case DualMode::TwoFormFromVector3D: {
            if (n != 3 || input.rank() != 1) throw ArgumentError("dual: need a rank-1 tensor in dim 3");
            TensorValue out(n, {Var::Lo, Var::Lo}, n, q);
            for (int a = 0; a < n; ++a) {
                for (int b = 0; b < n; ++b) {
                    Jet sum(n, q);
                    for (int m = 0; m < n; ++m) {
                        const int s = perm_sign({a, b, m});
                        if (s != 0) sum += static_cast<double>(s) * input.at({m});
                    }
                    out.at({a, b}) = sum * sq;
                }
            }
            return out;
        }
    }
    throw ArgumentError("dual: unknown mode");
}

}  // namespace tcalc
