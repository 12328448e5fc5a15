#pragma once
// PointFrame: jets of the metric, its inverse and sqrt|det g| at one point.
// Everything downstream (curvature, conformal tensors, reductions) consumes a
// frame rather than re-evaluating the metric.

#include <cmath>
#include <vector>

#include "tcalc/metric.hpp"
#include "tcalc/tensor.hpp"

namespace tcalc {

struct PointFrame {
    int dim = 0;
    int order = 0;
    std::vector<double> point;
    const MetricSpec* spec = nullptr;            // non-owning view
    std::shared_ptr<const MetricSpec> owned;     // set when the frame owns its spec

    std::vector<Jet> g;     // dim*dim, row-major
    std::vector<Jet> ginv;  // dim*dim
    Jet sqrt_abs_det{2, 0};
    int det_sign = 0;  // sign of det(g)

    const Jet& gg(int i, int j) const { return g[static_cast<std::size_t>(i * dim + j)]; }
    const Jet& gi(int i, int j) const { return ginv[static_cast<std::size_t>(i * dim + j)]; }

    TensorValue metric_lower(int jet_order) const {
        TensorValue t(dim, {Var::Lo, Var::Lo}, dim, jet_order);
        for (int i = 0; i < dim; ++i) {
            for (int j = 0; j < dim; ++j) t.at({i, j}) = gg(i, j).truncated(jet_order);
        }
        return t;
    }
    TensorValue metric_upper(int jet_order) const {
        TensorValue t(dim, {Var::Up, Var::Up}, dim, jet_order);
        for (int i = 0; i < dim; ++i) {
            for (int j = 0; j < dim; ++j) t.at({i, j}) = gi(i, j).truncated(jet_order);
        }
        return t;
    }
};

namespace detail {

// Gauss-Jordan with partial pivoting over the jet ring (pivot chosen by
// |value|).  Returns det as a jet alongside the inverse.
inline void invert_jet_matrix(int n, std::vector<Jet>& m, std::vector<Jet>& inv, Jet& det) {
    const int dim = m[0].dim();
    const int order = m[0].order();
    inv.assign(static_cast<std::size_t>(n * n), Jet(dim, order));
    for (int i = 0; i < n; ++i) inv[static_cast<std::size_t>(i * n + i)] = Jet::constant(dim, order, 1.0);
    det = Jet::constant(dim, order, 1.0);

    auto M = [&](int r, int c) -> Jet& { return m[static_cast<std::size_t>(r * n + c)]; };
    auto I = [&](int r, int c) -> Jet& { return inv[static_cast<std::size_t>(r * n + c)]; };

    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int r = col + 1; r < n; ++r) {
            if (std::abs(M(r, col).value()) > std::abs(M(pivot, col).value())) pivot = r;
        }
        if (M(pivot, col).value() == 0.0) {
            det = Jet::constant(dim, order, 0.0);
            return;
        }
        if (pivot != col) {
            for (int c = 0; c < n; ++c) {
                std::swap(M(pivot, c), M(col, c));
                std::swap(I(pivot, c), I(col, c));
            }
            det = -det;
        }
        det = det * M(col, col);
        const Jet pivot_inv = reciprocal(M(col, col));
        for (int c = 0; c < n; ++c) {
            M(col, c) = M(col, c) * pivot_inv;
            I(col, c) = I(col, c) * pivot_inv;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            const Jet factor = M(r, col);
            if (factor.value() == 0.0 && jet_is_constant(factor)) continue;
            for (int c = 0; c < n; ++c) {
                M(r, c) -= factor * M(col, c);
                I(r, c) -= factor * I(col, c);
            }
        }
    }
}

}  // namespace detail

inline PointFrame build_frame(const MetricSpec& spec, const std::vector<double>& point, int order = 3) {
    PointFrame f;
    f.dim = spec.dim();
    f.order = order;
    f.point = point;
    f.spec = &spec;

    const EvalEnv env = spec.env_at(point, order);
    f.g.reserve(static_cast<std::size_t>(f.dim * f.dim));
    for (int i = 0; i < f.dim; ++i) {
        for (int j = 0; j < f.dim; ++j) {
            const ExprPtr& e = spec.component(i, j);
            f.g.push_back(e ? evaluate(*e, env) : Jet(f.dim, order));
        }
    }

    std::vector<Jet> work = f.g;
    Jet det(f.dim, order);
    detail::invert_jet_matrix(f.dim, work, f.ginv, det);

    if (std::abs(det.value()) < 1e-12) {
        throw DegenerateMetricError("degenerate metric: |det g| < 1e-12", point);
    }
    f.det_sign = det.value() > 0.0 ? 1 : -1;
    if (f.det_sign != spec.expected_det_sign()) {
        throw DegenerateMetricError(
            "sign of det g does not match the declared signature", point);
    }
    f.sqrt_abs_det = sqrt(f.det_sign > 0 ? det : -det);
    return f;
}

// Frame that keeps its (typically freshly lifted) spec alive.
inline PointFrame build_frame(std::shared_ptr<const MetricSpec> spec, const std::vector<double>& point,
                              int order = 3) {
    PointFrame f = build_frame(*spec, point, order);
    f.owned = std::move(spec);
    return f;
}

}  // namespace tcalc
