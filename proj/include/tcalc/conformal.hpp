#pragma once
// Conformal tensors: Schouten, Weyl (dim >= 4), Cotton (dim 3), the
// Chern-Simons integrand density and its 2D reduced form.

#include <numbers>

#include "tcalc/curvature.hpp"

namespace tcalc {

// S^{NL} = R^{NL} - g^{NL} R / (2(n-1)), indices raised with the frame metric.
inline TensorValue schouten(const PointFrame& f) {
    if (f.dim < 3) throw ArgumentError("schouten needs dim >= 3");
    const RicciResult rc = ricci(f);
    const int n = f.dim;
    const int q = rc.ricci.jet_order();
    TensorValue ric_up = raise_index(f, raise_index(f, rc.ricci, 0), 1);
    TensorValue out(n, {Var::Up, Var::Up}, n, q);
    const double c = 1.0 / (2.0 * (n - 1));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            out.at({i, j}) = ric_up.at({i, j}) - c * (f.gi(i, j).truncated(q) * rc.scalar);
        }
    }
    return out;
}

// Weyl tensor with all indices upper:
//   C^{KLMN} = R^{KLMN}
//            - (g^{KM} S^{NL} - g^{KN} S^{ML} - g^{LM} S^{NK} + g^{LN} S^{MK}) / (n-2)
inline TensorValue weyl(const PointFrame& f) {
    if (f.dim < 4) throw ArgumentError("weyl needs dim >= 4");
    const int n = f.dim;
    TensorValue riem = riemann(f);
    const int q = riem.jet_order();
    // raise the three lower slots
    riem = raise_index(f, raise_index(f, raise_index(f, riem, 1), 2), 3);
    const TensorValue s = schouten(f);
    TensorValue out(n, {Var::Up, Var::Up, Var::Up, Var::Up}, n, q);
    const double c = 1.0 / (n - 2);
    for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
            for (int m = 0; m < n; ++m) {
                for (int nn = 0; nn < n; ++nn) {
                    Jet corr = f.gi(k, m).truncated(q) * s.at({nn, l}) -
                               f.gi(k, nn).truncated(q) * s.at({m, l}) -
                               f.gi(l, m).truncated(q) * s.at({nn, k}) +
                               f.gi(l, nn).truncated(q) * s.at({m, k});
                    out.at({k, l, m, nn}) = riem.at({k, l, m, nn}) - c * corr;
                }
            }
        }
    }
    return out;
}

// Cotton tensor, dim 3, frame order >= 3:
//   C^{KL} = (eps^{KMN} D_M R^L_N + eps^{LMN} D_M R^K_N) / (2 sqrt|g|)
inline TensorValue cotton(const PointFrame& f) {
    if (f.dim != 3) throw ArgumentError("cotton needs dim 3");
    if (f.order < 3) throw ArgumentError("cotton needs frame order >= 3");
    const int n = 3;
    const RicciResult rc = ricci(f);
    const TensorValue ric_mixed = raise_index(f, rc.ricci, 0);  // R^L_N
    const TensorValue dric = covariant_derivative(f, ric_mixed);  // D_M R^L_N
    const int q = dric.jet_order();
    const Jet inv_sq = reciprocal(f.sqrt_abs_det.truncated(q));
    TensorValue out(n, {Var::Up, Var::Up}, n, q);
    for (int k = 0; k < n; ++k) {
        for (int l = k; l < n; ++l) {
            Jet sum(n, q);
            for (int m = 0; m < n; ++m) {
                for (int nn = 0; nn < n; ++nn) {
                    const int s_k = perm_sign({k, m, nn});
                    if (s_k != 0) sum += static_cast<double>(s_k) * dric.at({m, l, nn});
                    const int s_l = perm_sign({l, m, nn});
                    if (s_l != 0) sum += static_cast<double>(s_l) * dric.at({m, k, nn});
                }
            }
            const Jet val = (0.5 * sum) * inv_sq;
            out.at({k, l}) = val;
            out.at({l, k}) = val;
        }
    }
    return out;
}

// Pointwise Chern-Simons integrand (a density: permutation symbol, no sqrt g):
//   eps^{KLM} ( (1/2) G^R_{KS} d_L G^S_{MR} + (1/3) G^R_{KS} G^S_{LT} G^T_{MK} )
inline Jet cs_density_3d(const PointFrame& f) {
    if (f.dim != 3) throw ArgumentError("cs_density_3d needs dim 3");
    if (f.order < 2) throw ArgumentError("cs_density_3d needs frame order >= 2");
    const int n = 3;
    const TensorValue gamma = christoffel(f);
    const int q = gamma.jet_order() - 1;
    Jet total(n, q);
    for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
            for (int m = 0; m < n; ++m) {
                const int sign = perm_sign({k, l, m});
                if (sign == 0) continue;
                Jet term(n, q);
                for (int r = 0; r < n; ++r) {
                    for (int s = 0; s < n; ++s) {
                        term += 0.5 * (gamma.at({r, k, s}).truncated(q) * gamma.at({s, m, r}).partial(l));
                        for (int t = 0; t < n; ++t) {
                            term += (1.0 / 3.0) * (gamma.at({r, k, s}).truncated(q) *
                                                   gamma.at({s, l, t}).truncated(q) *
                                                   gamma.at({t, m, k}).truncated(q));
                        }
                    }
                }
                total += static_cast<double>(sign) * term;
            }
        }
    }
    return total;
}

// Reduced Chern-Simons density in 2D: -(1/(8 pi^2)) sqrt(-g) (f r + f^3).
// `f` is the dual field-strength scalar carried as a jet.  The metric must be
// Lorentzian (det < 0) unless allow_any_signature is set, in which case
// sqrt|g| is used.
inline Jet reduced_cs_density_2d(const PointFrame& f, const Jet& field_scalar,
                                 bool allow_any_signature = false) {
    if (f.dim != 2) throw ArgumentError("reduced_cs_density_2d needs dim 2");
    if (f.det_sign > 0 && !allow_any_signature) {
        throw EvalError("reduced_cs_density_2d needs det g < 0 (Lorentzian 2D)");
    }
    const RicciResult rc = ricci(f);
    const int q = std::min(field_scalar.order(), rc.scalar.order());
    const Jet fs = field_scalar.truncated(q);
    const Jet r = rc.scalar.truncated(q);
    const double pref = -1.0 / (8.0 * std::numbers::pi * std::numbers::pi);
    return pref * (f.sqrt_abs_det.truncated(q) * (fs * r + fs * fs * fs));
}

// ---------------------------------------------------------------------------
// Conformal-flatness template report
// ---------------------------------------------------------------------------

struct ConformalPointRecord {
    std::vector<double> point;
    double residual = 0.0;  // max |C| / (max |Riemann| + 1)
    bool skipped = false;
    std::string reason;
};

struct ConformalReport {
    std::vector<ConformalPointRecord> points;
    double max_residual = 0.0;
    bool flat_at_samples = false;
    int evaluated = 0;
    double tolerance = 1e-8;
};

// Normalized size of the conformal template tensor (Weyl in 4D, Cotton in 3D)
// at one point.  Division by (max |Riemann| + 1) keeps flat space well defined.
inline double conformal_template_residual(const PointFrame& f) {
    const double riem_scale = [&] {
        TensorValue riem = riemann(f);
        return riem.max_abs_value() + 1.0;
    }();
    if (f.dim == 4) return weyl(f).max_abs_value() / riem_scale;
    if (f.dim == 3) return cotton(f).max_abs_value() / riem_scale;
    throw ArgumentError("conformal template: every 2D metric is locally conformally flat; no template exists");
}

inline ConformalReport conformal_flatness_report(const MetricSpec& spec,
                                                 const std::vector<std::vector<double>>& points,
                                                 double tolerance = 1e-8, int order = 3) {
    ConformalReport rep;
    rep.tolerance = tolerance;
    for (const auto& p : points) {
        ConformalPointRecord rec;
        rec.point = p;
        try {
            const PointFrame f = build_frame(spec, p, order);
            rec.residual = conformal_template_residual(f);
            rep.max_residual = std::max(rep.max_residual, rec.residual);
            ++rep.evaluated;
        } catch (const EvalError& e) {
            rec.skipped = true;
            rec.reason = e.what();
        }
        rep.points.push_back(std::move(rec));
    }
    rep.flat_at_samples = rep.evaluated > 0 && rep.max_residual < tolerance;
    return rep;
}

}  // namespace tcalc
