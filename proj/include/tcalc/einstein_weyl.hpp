#pragma once
// Weyl-connection geometry: the torsion-free connection preserving a metric's
// conformal class, its curvature, and the associated Einstein-type equation.
//
//   Wconn^l_{mn} = Gamma^l_{mn} + W^l g_{mn} - W_m delta^l_n - W_n delta^l_m
//   compat:  d_w g_{mn} - Wconn^l_{wm} g_{ln} - Wconn^l_{wn} g_{ml} = 2 W_w g_{mn}
//   [Dw_m, Dw_n] V_a = - WR^b_{amn} V_b
//   WR_(mn) = R_{mn} + D_(m W_n) + W_m W_n + g_{mn} (D.W - W.W)
// The symmetrized derivative D_(m W_n) always means (D_m W_n + D_n W_m) / 2;
// only that normalization makes the residual below traceless.

#include "tcalc/curvature.hpp"
#include "tcalc/metric.hpp"

namespace tcalc {

struct WeylStructure {
    MetricSpec metric;
    CovectorSpec weyl_potential;  // W_m, lower index
};

// Evaluated Weyl-potential data at a point.
struct WeylPotentialJets {
    std::vector<Jet> lower;  // W_m
    std::vector<Jet> upper;  // W^m
};

inline WeylPotentialJets eval_weyl_potential(const WeylStructure& ws, const PointFrame& f) {
    WeylPotentialJets out;
    const EvalEnv env = ws.metric.env_at(f.point, f.order);
    out.lower = evaluate_covector(ws.weyl_potential, env);
    out.upper.assign(static_cast<std::size_t>(f.dim), Jet(f.dim, f.order));
    for (int m = 0; m < f.dim; ++m) {
        Jet sum(f.dim, f.order);
        for (int nn = 0; nn < f.dim; ++nn) sum += f.gi(m, nn) * out.lower[static_cast<std::size_t>(nn)];
        out.upper[static_cast<std::size_t>(m)] = sum;
    }
    return out;
}

// Wconn^l_{mn}; jets one order below the frame, like christoffel.
inline TensorValue weyl_connection(const WeylStructure& ws, const PointFrame& f) {
    const TensorValue gamma = christoffel(f);
    const int q = gamma.jet_order();
    const WeylPotentialJets w = eval_weyl_potential(ws, f);
    TensorValue out = gamma;
    for (int l = 0; l < f.dim; ++l) {
        for (int m = 0; m < f.dim; ++m) {
            for (int nn = 0; nn < f.dim; ++nn) {
                Jet v = out.at({l, m, nn});
                v += w.upper[static_cast<std::size_t>(l)].truncated(q) * f.gg(m, nn).truncated(q);
                if (l == nn) v -= w.lower[static_cast<std::size_t>(m)].truncated(q);
                if (l == m) v -= w.lower[static_cast<std::size_t>(nn)].truncated(q);
                out.at({l, m, nn}) = v;
            }
        }
    }
    return out;
}

struct WeylCurvature {
    TensorValue curvature;        // WR^b_{amn}
    TensorValue ricci;            // WR_{mn} = WR^a_{man} (not symmetric in general)
    TensorValue ricci_symmetric;  // WR_(mn)
    Jet scalar{2, 0};             // g^{mn} WR_{mn}
};

inline WeylCurvature weyl_curvature(const WeylStructure& ws, const PointFrame& f) {
    if (f.order < 2) throw ArgumentError("weyl_curvature needs frame order >= 2");
    const TensorValue conn = weyl_connection(ws, f);
    WeylCurvature out;
    out.curvature = curvature_of_connection(f, conn);
    const int n = f.dim;
    const int q = out.curvature.jet_order();
    out.ricci = TensorValue(n, {Var::Lo, Var::Lo}, n, q);
    for (int m = 0; m < n; ++m) {
        for (int nn = 0; nn < n; ++nn) {
            Jet sum(n, q);
            for (int a = 0; a < n; ++a) sum += out.curvature.at({a, m, a, nn});
            out.ricci.at({m, nn}) = sum;
        }
    }
    out.ricci_symmetric = TensorValue(n, {Var::Lo, Var::Lo}, n, q);
    for (int m = 0; m < n; ++m) {
        for (int nn = 0; nn < n; ++nn) {
            out.ricci_symmetric.at({m, nn}) = 0.5 * (out.ricci.at({m, nn}) + out.ricci.at({nn, m}));
        }
    }
    Jet scalar(n, q);
    for (int m = 0; m < n; ++m) {
        for (int nn = 0; nn < n; ++nn) scalar += f.gi(m, nn).truncated(q) * out.ricci.at({m, nn});
    }
    out.scalar = scalar;
    return out;
}

// Residual of the metric-compatibility identity; an algebra check of the
// connection assembly, zero for any (g, W).
inline double compatibility_residual(const WeylStructure& ws, const PointFrame& f) {
    const TensorValue conn = weyl_connection(ws, f);
    const int q = conn.jet_order();
    const WeylPotentialJets w = eval_weyl_potential(ws, f);
    double worst = 0.0;
    for (int om = 0; om < f.dim; ++om) {
        for (int m = 0; m < f.dim; ++m) {
            for (int nn = 0; nn < f.dim; ++nn) {
                Jet v = f.gg(m, nn).partial(om).truncated(q);
                for (int l = 0; l < f.dim; ++l) {
                    v -= conn.at({l, om, m}) * f.gg(l, nn).truncated(q);
                    v -= conn.at({l, om, nn}) * f.gg(m, l).truncated(q);
                }
                v -= 2.0 * (w.lower[static_cast<std::size_t>(om)].truncated(q) *
                            f.gg(m, nn).truncated(q));
                worst = std::max(worst, std::abs(v.value()));
            }
        }
    }
    return worst;
}

struct EWResidual {
    TensorValue full;         // traceless residual of the full equation
    TensorValue gauge_fixed;  // bilinear part only (derivative terms dropped)
    TensorValue sym_deriv;    // D_(m W_n)
    Jet divergence;           // D^m W_m
    int bilinear_sign = 1;    // sign applied to the W-bilinear block
};

// Residual of the three-dimensional Einstein-type equation
//   R_{mn} - g_{mn} R / 3 + s (W_m W_n - g_{mn} W.W / 3)
//     + D_(m W_n) - g_{mn} D.W / 3 = 0
// with s = +1 for a positive-definite reduction and s = -1 when the structure
// comes from an indefinite-signature reduction (the documented relative sign).
inline EWResidual ew_residual(const WeylStructure& ws, const std::vector<double>& point,
                              int bilinear_sign = 1, int order = 3) {
    if (ws.metric.dim() != 3) throw ArgumentError("ew_residual needs dim 3");
    const PointFrame f = build_frame(ws.metric, point, order);
    const int n = 3;
    const RicciResult rc = ricci(f);
    const int q = rc.ricci.jet_order();
    const WeylPotentialJets w = eval_weyl_potential(ws, f);

    // D_m W_n with the Levi-Civita connection
    TensorValue wlow(n, {Var::Lo}, n, f.order);
    for (int m = 0; m < n; ++m) wlow.at({m}) = w.lower[static_cast<std::size_t>(m)];
    const TensorValue dw = covariant_derivative(f, wlow);

    EWResidual out{TensorValue(n, {Var::Lo, Var::Lo}, n, q),
                   TensorValue(n, {Var::Lo, Var::Lo}, n, q),
                   TensorValue(n, {Var::Lo, Var::Lo}, n, q), Jet(n, q), bilinear_sign};

    Jet wsq(n, q);
    for (int m = 0; m < n; ++m) {
        wsq += w.upper[static_cast<std::size_t>(m)].truncated(q) *
               w.lower[static_cast<std::size_t>(m)].truncated(q);
    }
    Jet ddotw(n, q);
    for (int m = 0; m < n; ++m) {
        for (int nn = 0; nn < n; ++nn) ddotw += f.gi(m, nn).truncated(q) * dw.at({m, nn}).truncated(q);
    }
    out.divergence = ddotw;

    const double s = static_cast<double>(bilinear_sign);
    for (int m = 0; m < n; ++m) {
        for (int nn = 0; nn < n; ++nn) {
            const Jet gq = f.gg(m, nn).truncated(q);
            Jet bil = rc.ricci.at({m, nn}) - (1.0 / 3.0) * (gq * rc.scalar);
            bil += s * (w.lower[static_cast<std::size_t>(m)].truncated(q) *
                            w.lower[static_cast<std::size_t>(nn)].truncated(q) -
                        (1.0 / 3.0) * (gq * wsq));
            out.gauge_fixed.at({m, nn}) = bil;
            const Jet symdw = 0.5 * (dw.at({m, nn}).truncated(q) + dw.at({nn, m}).truncated(q));
            out.sym_deriv.at({m, nn}) = symdw;
            out.full.at({m, nn}) = bil + symdw - (1.0 / 3.0) * (gq * ddotw);
        }
    }
    return out;
}

// Check of the closed-form expression for the symmetrized Weyl-Ricci tensor
// against the curvature-trace route; zero for any (g, W).
inline double weyl_ricci_closed_form_residual(const WeylStructure& ws, const std::vector<double>& point,
                                              int order = 3) {
    const PointFrame f = build_frame(ws.metric, point, order);
    const int n = f.dim;
    const WeylCurvature wc = weyl_curvature(ws, f);
    const int q = wc.ricci_symmetric.jet_order();
    const RicciResult rc = ricci(f);
    const WeylPotentialJets w = eval_weyl_potential(ws, f);
    TensorValue wlow(n, {Var::Lo}, n, f.order);
    for (int m = 0; m < n; ++m) wlow.at({m}) = w.lower[static_cast<std::size_t>(m)];
    const TensorValue dw = covariant_derivative(f, wlow);

    Jet wsq(n, q), ddotw(n, q);
    for (int m = 0; m < n; ++m) {
        wsq += w.upper[static_cast<std::size_t>(m)].truncated(q) *
               w.lower[static_cast<std::size_t>(m)].truncated(q);
    }
    for (int m = 0; m < n; ++m) {
        for (int nn = 0; nn < n; ++nn) ddotw += f.gi(m, nn).truncated(q) * dw.at({m, nn}).truncated(q);
    }
    double worst = 0.0;
    for (int m = 0; m < n; ++m) {
        for (int nn = 0; nn < n; ++nn) {
            Jet rhs = rc.ricci.at({m, nn}).truncated(q);
            rhs += 0.5 * (dw.at({m, nn}).truncated(q) + dw.at({nn, m}).truncated(q));
            rhs += w.lower[static_cast<std::size_t>(m)].truncated(q) *
                   w.lower[static_cast<std::size_t>(nn)].truncated(q);
            rhs += f.gg(m, nn).truncated(q) * (ddotw - wsq);
            worst = std::max(worst, std::abs(wc.ricci_symmetric.value({m, nn}) - rhs.value()));
        }
    }
    return worst;
}

enum class ReductionSignature { Indefinite, Positive };

struct FromReductionResult {
    WeylStructure structure;
    ReductionSignature mode;
    int bilinear_sign;  // sign to use in ew_residual for the correspondence
};

// Weyl structure whose potential is the lowered Killing field of a reduction
// solution.  In indefinite signature the correspondence with the gauge-fixed
// equation needs the W-bilinear block negated; with positive metric no sign
// adjustment is applied.
inline FromReductionResult from_reduction(const MetricSpec& base, const CovectorSpec& killing_upper,
                                          ReductionSignature mode) {
    if (base.dim() != 3) throw ArgumentError("from_reduction needs a 3D base");
    CovectorSpec lower = CovectorSpec::zeros(3);
    for (int m = 0; m < 3; ++m) {
        ExprPtr sum;
        for (int nn = 0; nn < 3; ++nn) {
            const ExprPtr& fk = killing_upper.components[static_cast<std::size_t>(nn)];
            const ExprPtr& gmn = base.component(m, nn);
            if (!fk || !gmn) continue;
            ExprPtr term = mul(gmn, fk);
            sum = sum ? add(std::move(sum), std::move(term)) : std::move(term);
        }
        lower.components[static_cast<std::size_t>(m)] = std::move(sum);
    }
    FromReductionResult out{WeylStructure{base, std::move(lower)}, mode,
                            mode == ReductionSignature::Indefinite ? -1 : 1};
    return out;
}

struct GauduchonReport {
    double max_divergence = 0.0;
    double max_sym_deriv = 0.0;
    int evaluated = 0;
    int skipped = 0;
    bool gauge_fixed = false;
    double tolerance = 1e-9;
};

inline GauduchonReport gauduchon_check(const WeylStructure& ws,
                                       const std::vector<std::vector<double>>& points,
                                       double tolerance = 1e-9, int order = 3) {
    GauduchonReport rep;
    rep.tolerance = tolerance;
    for (const auto& p : points) {
        try {
            const EWResidual r = ew_residual(ws, p, 1, order);
            rep.max_divergence = std::max(rep.max_divergence, std::abs(r.divergence.value()));
            rep.max_sym_deriv = std::max(rep.max_sym_deriv, r.sym_deriv.max_abs_value());
            ++rep.evaluated;
        } catch (const EvalError&) {
            ++rep.skipped;
        }
    }
    rep.gauge_fixed = rep.evaluated > 0 && rep.max_divergence < tolerance && rep.max_sym_deriv < tolerance;
    return rep;
}

}  // namespace tcalc
