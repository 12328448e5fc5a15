#pragma once
// Metric-as-data: dimension, signature, coordinate names, symmetric component
// expressions and named parameters.  Companion covector / scalar fields share
// the same coordinate and parameter environment.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tcalc/expr.hpp"

namespace tcalc {

struct CoordInterval {
    double lo = 0.5;
    double hi = 1.5;
};

class MetricSpec {
  public:
    MetricSpec() = default;
    MetricSpec(int dim, std::vector<int> signature, std::vector<std::string> coord_names)
        : dim_(dim), signature_(std::move(signature)), coord_names_(std::move(coord_names)) {
        if (dim_ < 2 || dim_ > 4) throw ArgumentError("metric dim must be 2..4");
        if (static_cast<int>(signature_.size()) != dim_)
            throw ArgumentError("signature length must equal dim");
        if (static_cast<int>(coord_names_.size()) != dim_)
            throw ArgumentError("coordinate name count must equal dim");
        components_.assign(static_cast<std::size_t>(dim_ * dim_), nullptr);
        domain_.assign(static_cast<std::size_t>(dim_), std::nullopt);
    }

    int dim() const { return dim_; }
    const std::vector<int>& signature() const { return signature_; }
    const std::vector<std::string>& coord_names() const { return coord_names_; }
    const std::map<std::string, double>& params() const { return params_; }

    void set_param(const std::string& name, double value) { params_[name] = value; }

    int coord_slot(const std::string& name) const {
        for (int i = 0; i < dim_; ++i) {
            if (coord_names_[static_cast<std::size_t>(i)] == name) return i;
        }
        return -1;
    }

    // Only one triangle is stored; both (i,j) and (j,i) alias the same tree.
    void set_component(int i, int j, ExprPtr e) {
        check_index(i);
        check_index(j);
        components_[idx(i, j)] = e;
        components_[idx(j, i)] = std::move(e);
    }
    const ExprPtr& component(int i, int j) const {
        check_index(i);
        check_index(j);
        return components_[idx(i, j)];
    }
    bool has_component(int i, int j) const { return component(i, j) != nullptr; }

    void set_domain(int i, CoordInterval iv) {
        check_index(i);
        domain_[static_cast<std::size_t>(i)] = iv;
    }
    CoordInterval domain(int i) const {
        check_index(i);
        return domain_[static_cast<std::size_t>(i)].value_or(CoordInterval{});
    }
    bool has_domain(int i) const {
        check_index(i);
        return domain_[static_cast<std::size_t>(i)].has_value();
    }

    // Expected sign of det(g) from the declared signature: (-1)^(#minus).
    int expected_det_sign() const {
        int s = 1;
        for (int v : signature_) s *= (v < 0 ? -1 : 1);
        return s;
    }

    EvalEnv env_at(const std::vector<double>& point, int order) const {
        if (static_cast<int>(point.size()) != dim_)
            throw ArgumentError("point length must equal metric dim");
        return EvalEnv::at_point(point, dim_, order, &params_);
    }

  private:
    std::size_t idx(int i, int j) const { return static_cast<std::size_t>(i * dim_ + j); }
    void check_index(int i) const {
        if (i < 0 || i >= dim_) throw ArgumentError("metric component index out of range");
    }

    int dim_ = 0;
    std::vector<int> signature_;  // +1 / -1 per coordinate
    std::vector<std::string> coord_names_;
    std::vector<ExprPtr> components_;  // dim x dim, mirrored storage
    std::map<std::string, double> params_;
    std::vector<std::optional<CoordInterval>> domain_;
};

// A covector (or vector, depending on use) field: dim expression trees over
// the same coordinates and parameters as its metric.
struct CovectorSpec {
    std::vector<ExprPtr> components;  // null entry means identically 0

    static CovectorSpec zeros(int dim) {
        CovectorSpec c;
        c.components.assign(static_cast<std::size_t>(dim), nullptr);
        return c;
    }
    int dim() const { return static_cast<int>(components.size()); }
};

struct ScalarSpec {
    ExprPtr expr;  // null means identically 0
};

// Jet of component g_ij at a point.  Mirror symmetry is exact because both
// triangles alias one expression tree.
inline Jet evaluate_component(const MetricSpec& spec, int i, int j, const std::vector<double>& point,
                              int order) {
    const EvalEnv env = spec.env_at(point, order);
    const ExprPtr& e = spec.component(i, j);
    if (!e) return Jet(spec.dim(), order);
    return evaluate(*e, env);
}

inline Jet evaluate_scalar(const ScalarSpec& s, const EvalEnv& env) {
    if (!s.expr) return Jet(env.dim, env.order);
    return evaluate(*s.expr, env);
}

inline std::vector<Jet> evaluate_covector(const CovectorSpec& c, const EvalEnv& env) {
    std::vector<Jet> out;
    out.reserve(c.components.size());
    for (const auto& e : c.components) {
        out.push_back(e ? evaluate(*e, env) : Jet(env.dim, env.order));
    }
    return out;
}

// Everything a metric file can carry.
struct MetricFile {
    MetricSpec metric;
    std::optional<CovectorSpec> potential;       // a_mu (lower index)
    std::optional<ScalarSpec> conformal;         // sigma
    std::optional<CovectorSpec> killing;         // vector field, upper components
    std::optional<CovectorSpec> weyl_potential;  // W_mu (lower index)
};

// New spec with every component multiplied by e^{2 sigma} symbolically.
inline MetricSpec conformal_rescale(const MetricSpec& spec, const ExprPtr& sigma) {
    MetricSpec out(spec.dim(), spec.signature(), spec.coord_names());
    for (const auto& [k, v] : spec.params()) out.set_param(k, v);
    for (int i = 0; i < spec.dim(); ++i) {
        if (spec.has_domain(i)) out.set_domain(i, spec.domain(i));
    }
    const ExprPtr factor = make_call(JetFn::Exp, "exp", mul(make_number(2.0), sigma));
    for (int i = 0; i < spec.dim(); ++i) {
        for (int j = i; j < spec.dim(); ++j) {
            if (spec.has_component(i, j)) {
                out.set_component(i, j, mul(factor, spec.component(i, j)));
            }
        }
    }
    return out;
}

}  // namespace tcalc
