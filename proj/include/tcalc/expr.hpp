#pragma once
// Expression trees for metric components, potentials and scalars.
//
// Nodes are immutable and shared (shared_ptr), so symbolic constructions such
// as the Kaluza-Klein lift can reuse subtrees without copying.  Evaluation
// happens over jets, which yields exact-to-rounding derivatives of every
// component expression.

#include <cmath>
#include <iomanip>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tcalc/errors.hpp"
#include "tcalc/jet.hpp"

namespace tcalc {

enum class ExprKind { Number, Coord, Param, Unary, Binary, Call, Quadrature };
enum class BinOp { Add, Sub, Mul, Div, Pow };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    ExprKind kind;
    SourcePos pos{};

    double number = 0.0;  // Number; Quadrature: lower integration limit
    int slot = -1;        // Coord; Quadrature: integration variable slot
    std::string name;     // Coord / Param / Call (for diagnostics and printing)
    BinOp op = BinOp::Add;
    JetFn fn = JetFn::Neg;  // Call (always unary; Unary is negation)
    ExprPtr a, b;           // children; Quadrature: a = integrand
};

inline ExprPtr make_number(double v) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Number;
    e->number = v;
    return e;
}
inline ExprPtr make_coord(int slot, std::string name) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Coord;
    e->slot = slot;
    e->name = std::move(name);
    return e;
}
inline ExprPtr make_param(std::string name) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Param;
    e->name = std::move(name);
    return e;
}
inline ExprPtr make_neg(ExprPtr a) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Unary;
    e->a = std::move(a);
    return e;
}
inline ExprPtr make_bin(BinOp op, ExprPtr a, ExprPtr b) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Binary;
    e->op = op;
    e->a = std::move(a);
    e->b = std::move(b);
    return e;
}
inline ExprPtr make_call(JetFn fn, std::string name, ExprPtr a) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Call;
    e->fn = fn;
    e->name = std::move(name);
    e->a = std::move(a);
    return e;
}
// Definite integral of `integrand` (a function of coordinate `var_slot` only)
// from `lower` to the running value of that coordinate.  Produced internally
// (potential reconstruction); not part of the file grammar.
inline ExprPtr make_quadrature(ExprPtr integrand, int var_slot, double lower) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Quadrature;
    e->a = std::move(integrand);
    e->slot = var_slot;
    e->number = lower;
    return e;
}

inline ExprPtr add(ExprPtr a, ExprPtr b) { return make_bin(BinOp::Add, std::move(a), std::move(b)); }
inline ExprPtr sub(ExprPtr a, ExprPtr b) { return make_bin(BinOp::Sub, std::move(a), std::move(b)); }
inline ExprPtr mul(ExprPtr a, ExprPtr b) { return make_bin(BinOp::Mul, std::move(a), std::move(b)); }
inline ExprPtr div(ExprPtr a, ExprPtr b) { return make_bin(BinOp::Div, std::move(a), std::move(b)); }

// Evaluation environment: one jet per coordinate plus parameter values.
struct EvalEnv {
    int dim = 0;
    int order = 0;
    std::vector<Jet> coords;
    const std::map<std::string, double>* params = nullptr;

    static EvalEnv at_point(const std::vector<double>& point, int dim, int order,
                            const std::map<std::string, double>* params) {
        EvalEnv env;
        env.dim = dim;
        env.order = order;
        env.params = params;
        env.coords.reserve(static_cast<std::size_t>(dim));
        for (int i = 0; i < dim; ++i) {
            env.coords.push_back(Jet::coordinate(dim, order, i, point[static_cast<std::size_t>(i)]));
        }
        return env;
    }
};

namespace detail {
double integrate_adaptive(const Expr& integrand, const EvalEnv& env, int slot, double lo, double hi);
}

inline Jet evaluate(const Expr& e, const EvalEnv& env) {
    switch (e.kind) {
        case ExprKind::Number:
            return Jet::constant(env.dim, env.order, e.number);
        case ExprKind::Coord:
            if (e.slot < 0 || e.slot >= env.dim) {
                throw ArgumentError("expression references coordinate slot " + std::to_string(e.slot) +
                                    " outside dim " + std::to_string(env.dim));
            }
            return env.coords[static_cast<std::size_t>(e.slot)];
        case ExprKind::Param: {
            if (env.params == nullptr) throw ArgumentError("no parameter bindings for '" + e.name + "'");
            auto it = env.params->find(e.name);
            if (it == env.params->end()) throw ArgumentError("unbound parameter '" + e.name + "'");
            return Jet::constant(env.dim, env.order, it->second);
        }
        case ExprKind::Unary:
            return -evaluate(*e.a, env);
        case ExprKind::Binary: {
            const Jet a = evaluate(*e.a, env);
            const Jet b = evaluate(*e.b, env);
            switch (e.op) {
                case BinOp::Add: return a + b;
                case BinOp::Sub: return a - b;
                case BinOp::Mul: return a * b;
                case BinOp::Div: return a / b;
                case BinOp::Pow: return pow(a, b);
            }
            throw ArgumentError("unknown binary operator");
        }
        case ExprKind::Call: {
            const Jet a = evaluate(*e.a, env);
            return jet_apply(e.fn, std::span<const Jet>(&a, 1));
        }
        case ExprKind::Quadrature: {
            // F(x) = integral_{lower}^{x} integrand(s) ds along coordinate
            // e.slot; derivatives come from the integrand's own jet.
            const Jet& x = env.coords[static_cast<std::size_t>(e.slot)];
            const double value = detail::integrate_adaptive(*e.a, env, e.slot, e.number, x.value());
            const Jet g = evaluate(*e.a, env);  // integrand jet at x
            // Taylor series of F along e.slot: F_0 = value, F_{k+1} = g_k/(k+1)
            std::vector<double> fk(static_cast<std::size_t>(env.order) + 1, 0.0);
            fk[0] = value;
            const auto& t = g.table();
            for (int k = 0; k + 1 <= env.order; ++k) {
                Exponents alpha{};
                alpha[static_cast<std::size_t>(e.slot)] = static_cast<std::uint8_t>(k);
                fk[static_cast<std::size_t>(k + 1)] = g.coeff(t.slot(alpha)) / (k + 1);
            }
            return compose_series(x, fk);
        }
    }
    throw ArgumentError("unknown expression node");
}

namespace detail {

inline double eval_value_1d(const Expr& e, const EvalEnv& proto, int slot, double x) {
    EvalEnv env = proto;
    env.order = 0;
    for (auto& c : env.coords) c = Jet::constant(proto.dim, 0, c.value());
    env.coords[static_cast<std::size_t>(slot)] = Jet::constant(proto.dim, 0, x);
    return evaluate(e, env).value();
}

inline double adaptive_simpson(const Expr& f, const EvalEnv& proto, int slot, double a, double b,
                               double fa, double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = eval_value_1d(f, proto, slot, lm);
    const double frm = eval_value_1d(f, proto, slot, rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return adaptive_simpson(f, proto, slot, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, proto, slot, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

inline double integrate_adaptive(const Expr& integrand, const EvalEnv& env, int slot, double lo, double hi) {
    if (lo == hi) return 0.0;
    const double fa = eval_value_1d(integrand, env, slot, lo);
    const double fb = eval_value_1d(integrand, env, slot, hi);
    const double m = 0.5 * (lo + hi);
    const double fm = eval_value_1d(integrand, env, slot, m);
    const double whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(integrand, env, slot, lo, hi, fa, fm, fb, whole, 1e-13, 48);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Printing and structural utilities
// ---------------------------------------------------------------------------

inline std::string format_number(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

namespace detail {

// Operator precedence for parenthesis-minimal printing.
inline int precedence(const Expr& e) {
    switch (e.kind) {
        case ExprKind::Binary:
            switch (e.op) {
                case BinOp::Add:
                case BinOp::Sub: return 1;
                case BinOp::Mul:
                case BinOp::Div: return 2;
                case BinOp::Pow: return 4;
            }
            return 0;
        case ExprKind::Unary: return 3;
        default: return 5;
    }
}

inline void print_expr(const Expr& e, std::ostream& os, int parent_prec, bool right_side) {
    const int prec = precedence(e);
    bool need_parens = prec < parent_prec;
    if (prec == parent_prec) {
        // - and / are left-associative, ^ right-associative
        if (e.kind == ExprKind::Binary) {
            if ((e.op == BinOp::Sub || e.op == BinOp::Div || e.op == BinOp::Add ||
                 e.op == BinOp::Mul) &&
                right_side) {
                need_parens = true;
            }
            if (e.op == BinOp::Pow && !right_side) need_parens = true;
        }
    }
    if (need_parens) os << "(";
    switch (e.kind) {
        case ExprKind::Number: {
            const double v = e.number;
            if (v < 0.0) {
                os << "(" << format_number(v) << ")";
            } else {
                os << format_number(v);
            }
            break;
        }
        case ExprKind::Coord:
        case ExprKind::Param:
            os << e.name;
            break;
        case ExprKind::Unary:
            os << "-";
            print_expr(*e.a, os, 3, true);
            break;
        case ExprKind::Binary: {
            const char* sym = "?";
            switch (e.op) {
                case BinOp::Add: sym = " + "; break;
                case BinOp::Sub: sym = " - "; break;
                case BinOp::Mul: sym = "*"; break;
                case BinOp::Div: sym = "/"; break;
                case BinOp::Pow: sym = "^"; break;
            }
            print_expr(*e.a, os, prec, false);
            os << sym;
            print_expr(*e.b, os, prec, true);
            break;
        }
        case ExprKind::Call:
            os << e.name << "(";
            print_expr(*e.a, os, 0, false);
            os << ")";
            break;
        case ExprKind::Quadrature:
            os << "quad[x" << e.slot << "](";
            print_expr(*e.a, os, 0, false);
            os << ", " << format_number(e.number) << ")";
            break;
    }
    if (need_parens) os << ")";
}

}  // namespace detail

inline std::string to_string(const Expr& e) {
    std::ostringstream os;
    detail::print_expr(e, os, 0, false);
    return os.str();
}

inline bool structurally_equal(const Expr& a, const Expr& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case ExprKind::Number: return a.number == b.number;
        case ExprKind::Coord: return a.slot == b.slot && a.name == b.name;
        case ExprKind::Param: return a.name == b.name;
        case ExprKind::Unary: return structurally_equal(*a.a, *b.a);
        case ExprKind::Binary:
            return a.op == b.op && structurally_equal(*a.a, *b.a) && structurally_equal(*a.b, *b.b);
        case ExprKind::Call: return a.fn == b.fn && structurally_equal(*a.a, *b.a);
        case ExprKind::Quadrature:
            return a.slot == b.slot && a.number == b.number && structurally_equal(*a.a, *b.a);
    }
    return false;
}

// Replace every coordinate reference by the supplied expression (slot-indexed).
// Used for symbolic coordinate changes.
inline ExprPtr substitute_coords(const ExprPtr& e, const std::vector<ExprPtr>& replacement) {
    switch (e->kind) {
        case ExprKind::Number:
        case ExprKind::Param:
            return e;
        case ExprKind::Coord: {
            const auto& r = replacement[static_cast<std::size_t>(e->slot)];
            if (!r) throw ArgumentError("no replacement for coordinate '" + e->name + "'");
            return r;
        }
        case ExprKind::Unary:
            return make_neg(substitute_coords(e->a, replacement));
        case ExprKind::Binary:
            return make_bin(e->op, substitute_coords(e->a, replacement),
                            substitute_coords(e->b, replacement));
        case ExprKind::Call:
            return make_call(e->fn, e->name, substitute_coords(e->a, replacement));
        case ExprKind::Quadrature:
            throw ArgumentError("coordinate substitution through a quadrature node is not supported");
    }
    throw ArgumentError("unknown expression node");
}

// Collect free identifiers (coordinate slots and parameter names).
inline void collect_free(const Expr& e, std::vector<int>& coord_slots, std::vector<std::string>& params) {
    switch (e.kind) {
        case ExprKind::Number: return;
        case ExprKind::Coord: coord_slots.push_back(e.slot); return;
        case ExprKind::Param: params.push_back(e.name); return;
        case ExprKind::Unary: collect_free(*e.a, coord_slots, params); return;
        case ExprKind::Binary:
            collect_free(*e.a, coord_slots, params);
            collect_free(*e.b, coord_slots, params);
            return;
        case ExprKind::Call: collect_free(*e.a, coord_slots, params); return;
        case ExprKind::Quadrature:
            coord_slots.push_back(e.slot);
            collect_free(*e.a, coord_slots, params);
            return;
    }
}

}  // namespace tcalc
