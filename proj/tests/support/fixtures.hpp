#pragma once
// Shared test utilities: random fixture generators and finite-difference
// oracles.  The oracles are deliberately independent of the jet machinery:
// metric values are read through order-0 evaluation and differentiated with
// central differences, and the matrix work here is plain double arithmetic.

#include <cmath>
#include <random>
#include <vector>

#include "tcalc/kaluza_klein.hpp"
#include "tcalc/metric.hpp"

namespace tcalc::testing {

// --------------------------------------------------------------------------
// Random expression / metric builders
// --------------------------------------------------------------------------

inline ExprPtr coordinate_exprs(const std::vector<std::string>& names, int i) {
    return make_coord(i, names[static_cast<std::size_t>(i)]);
}

// Random quadratic polynomial c0 + sum ci xi + sum cij xi xj.
inline ExprPtr random_quadratic(std::mt19937_64& rng, const std::vector<std::string>& names,
                                double amp) {
    std::uniform_real_distribution<double> U(-amp, amp);
    ExprPtr e = make_number(U(rng));
    for (std::size_t i = 0; i < names.size(); ++i) {
        e = add(e, mul(make_number(U(rng)), make_coord(static_cast<int>(i), names[i])));
        for (std::size_t j = i; j < names.size(); ++j) {
            e = add(e, mul(make_number(U(rng)),
                           mul(make_coord(static_cast<int>(i), names[i]),
                               make_coord(static_cast<int>(j), names[j]))));
        }
    }
    return e;
}

inline std::vector<std::string> default_names(int dim) {
    const std::vector<std::string> all = {"x0", "x1", "x2", "x3"};
    return {all.begin(), all.begin() + dim};
}

inline std::vector<int> lorentzian_signature(int dim) {
    std::vector<int> s(static_cast<std::size_t>(dim), -1);
    s[0] = 1;
    return s;
}

// Flat metric plus a small random quadratic perturbation of every component.
inline MetricSpec random_metric(std::mt19937_64& rng, int dim, double pert = 0.06,
                                double half_width = 0.5) {
    const auto names = default_names(dim);
    const auto sig = lorentzian_signature(dim);
    MetricSpec m(dim, sig, names);
    for (int i = 0; i < dim; ++i) {
        for (int j = i; j < dim; ++j) {
            ExprPtr p = mul(make_number(pert), random_quadratic(rng, names, 1.0));
            if (i == j) {
                p = add(make_number(static_cast<double>(sig[static_cast<std::size_t>(i)])), p);
            }
            m.set_component(i, j, p);
        }
        m.set_domain(i, {-half_width, half_width});
    }
    return m;
}

// Conformally flat metric with its flatness hidden twice over: a random
// smooth conformal factor on flat space followed by a random invertible
// linear coordinate mix applied symbolically.
inline MetricSpec random_conformally_flat(std::mt19937_64& rng, int dim) {
    const auto names = default_names(dim);
    const auto sig = lorentzian_signature(dim);
    std::uniform_real_distribution<double> U(-0.2, 0.2);

    // mix matrix L = I + small
    std::vector<std::vector<double>> L(static_cast<std::size_t>(dim),
                                       std::vector<double>(static_cast<std::size_t>(dim), 0.0));
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            L[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = (i == j ? 1.0 : 0.0) + U(rng);
        }
    }
    // M = L^T eta L (constant symmetric matrix of the mixed flat metric)
    std::vector<std::vector<double>> M(static_cast<std::size_t>(dim),
                                       std::vector<double>(static_cast<std::size_t>(dim), 0.0));
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            double s = 0.0;
            for (int k = 0; k < dim; ++k) {
                s += L[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] *
                     static_cast<double>(sig[static_cast<std::size_t>(k)]) *
                     L[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
            }
            M[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = s;
        }
    }
    // sigma over the original flat coordinates, then composed with L x
    const ExprPtr sigma = random_quadratic(rng, names, 0.12);
    std::vector<ExprPtr> lin;
    for (int k = 0; k < dim; ++k) {
        ExprPtr row;
        for (int j = 0; j < dim; ++j) {
            ExprPtr term = mul(make_number(L[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)]),
                               make_coord(j, names[static_cast<std::size_t>(j)]));
            row = row ? add(std::move(row), std::move(term)) : std::move(term);
        }
        lin.push_back(std::move(row));
    }
    const ExprPtr sigma_mixed = substitute_coords(sigma, lin);
    const ExprPtr factor = make_call(JetFn::Exp, "exp", mul(make_number(2.0), sigma_mixed));

    MetricSpec m(dim, sig, names);
    for (int i = 0; i < dim; ++i) {
        for (int j = i; j < dim; ++j) {
            const double mij = M[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            if (std::abs(mij) > 0.0) m.set_component(i, j, mul(make_number(mij), factor));
        }
        m.set_domain(i, {-0.8, 0.8});
    }
    return m;
}

inline CovectorSpec random_covector(std::mt19937_64& rng, int dim, double amp = 0.3) {
    const auto names = default_names(dim);
    CovectorSpec c = CovectorSpec::zeros(dim);
    for (int i = 0; i < dim; ++i) {
        c.components[static_cast<std::size_t>(i)] =
            mul(make_number(amp), random_quadratic(rng, names, 1.0));
    }
    return c;
}

inline KKData random_kk(std::mt19937_64& rng, int base_dim, bool with_sigma = true) {
    MetricSpec base = random_metric(rng, base_dim);
    CovectorSpec a = random_covector(rng, base_dim, 0.3);
    ScalarSpec sigma;
    if (with_sigma) sigma.expr = random_quadratic(rng, default_names(base_dim), 0.15);
    return KKData(std::move(base), std::move(a), std::move(sigma));
}

inline std::vector<double> random_point(std::mt19937_64& rng, int dim, double half_width = 0.4) {
    std::uniform_real_distribution<double> U(-half_width, half_width);
    std::vector<double> p;
    for (int i = 0; i < dim; ++i) p.push_back(U(rng));
    return p;
}

// --------------------------------------------------------------------------
// Finite-difference oracles (independent of the jet evaluation path)
// --------------------------------------------------------------------------

inline double metric_value(const MetricSpec& m, int i, int j, const std::vector<double>& p) {
    return evaluate_component(m, i, j, p, 0).value();
}

template <typename F>
inline double fd_first(F&& f, std::vector<double> p, int dir, double h) {
    p[static_cast<std::size_t>(dir)] += h;
    const double up = f(p);
    p[static_cast<std::size_t>(dir)] -= 2.0 * h;
    const double dn = f(p);
    return (up - dn) / (2.0 * h);
}

template <typename F>
inline double fd_second(F&& f, std::vector<double> p, int di, int dj, double h) {
    if (di == dj) {
        const double mid = f(p);
        p[static_cast<std::size_t>(di)] += h;
        const double up = f(p);
        p[static_cast<std::size_t>(di)] -= 2.0 * h;
        const double dn = f(p);
        return (up - 2.0 * mid + dn) / (h * h);
    }
    auto g = [&](std::vector<double> q) { return fd_first(f, std::move(q), dj, h); };
    return fd_first(g, std::move(p), di, h);
}

// Plain double-precision matrix inverse (Gauss-Jordan, partial pivoting).
inline std::vector<std::vector<double>> invert_matrix(std::vector<std::vector<double>> a) {
    const int n = static_cast<int>(a.size());
    std::vector<std::vector<double>> inv(static_cast<std::size_t>(n),
                                         std::vector<double>(static_cast<std::size_t>(n), 0.0));
    for (int i = 0; i < n; ++i) inv[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1.0;
    for (int c = 0; c < n; ++c) {
        int piv = c;
        for (int r = c + 1; r < n; ++r) {
            if (std::abs(a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]) >
                std::abs(a[static_cast<std::size_t>(piv)][static_cast<std::size_t>(c)])) {
                piv = r;
            }
        }
        std::swap(a[static_cast<std::size_t>(piv)], a[static_cast<std::size_t>(c)]);
        std::swap(inv[static_cast<std::size_t>(piv)], inv[static_cast<std::size_t>(c)]);
        const double d = a[static_cast<std::size_t>(c)][static_cast<std::size_t>(c)];
        for (int j = 0; j < n; ++j) {
            a[static_cast<std::size_t>(c)][static_cast<std::size_t>(j)] /= d;
            inv[static_cast<std::size_t>(c)][static_cast<std::size_t>(j)] /= d;
        }
        for (int r = 0; r < n; ++r) {
            if (r == c) continue;
            const double f = a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
            for (int j = 0; j < n; ++j) {
                a[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] -=
                    f * a[static_cast<std::size_t>(c)][static_cast<std::size_t>(j)];
                inv[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] -=
                    f * inv[static_cast<std::size_t>(c)][static_cast<std::size_t>(j)];
            }
        }
    }
    return inv;
}

// Christoffel symbols from finite-difference metric derivatives.
inline std::vector<double> christoffel_fd(const MetricSpec& m, const std::vector<double>& p,
                                          double h = 1e-5) {
    const int n = m.dim();
    std::vector<std::vector<double>> g(static_cast<std::size_t>(n),
                                       std::vector<double>(static_cast<std::size_t>(n), 0.0));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = metric_value(m, i, j, p);
    }
    const auto ginv = invert_matrix(g);
    std::vector<double> dg(static_cast<std::size_t>(n * n * n), 0.0);
    for (int k = 0; k < n; ++k) {
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                dg[static_cast<std::size_t>((k * n + i) * n + j)] =
                    fd_first([&](const std::vector<double>& q) { return metric_value(m, i, j, q); }, p,
                             k, h);
            }
        }
    }
    std::vector<double> gamma(static_cast<std::size_t>(n * n * n), 0.0);
    auto d = [&](int k, int i, int j) { return dg[static_cast<std::size_t>((k * n + i) * n + j)]; };
    for (int l = 0; l < n; ++l) {
        for (int mu = 0; mu < n; ++mu) {
            for (int nu = 0; nu < n; ++nu) {
                double s = 0.0;
                for (int sg = 0; sg < n; ++sg) {
                    s += ginv[static_cast<std::size_t>(l)][static_cast<std::size_t>(sg)] *
                         (d(mu, sg, nu) + d(nu, sg, mu) - d(sg, mu, nu));
                }
                gamma[static_cast<std::size_t>((l * n + mu) * n + nu)] = 0.5 * s;
            }
        }
    }
    return gamma;
}

// Riemann tensor from finite differences of the FD Christoffel symbols.
inline std::vector<double> riemann_fd(const MetricSpec& m, const std::vector<double>& p,
                                      double h = 1e-4) {
    const int n = m.dim();
    auto gamma_at = [&](const std::vector<double>& q) { return christoffel_fd(m, q, 1e-5); };
    const auto g0 = gamma_at(p);
    std::vector<std::vector<double>> dgam(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        std::vector<double> up = p, dn = p;
        up[static_cast<std::size_t>(k)] += h;
        dn[static_cast<std::size_t>(k)] -= h;
        const auto gu = gamma_at(up), gd = gamma_at(dn);
        dgam[static_cast<std::size_t>(k)].resize(gu.size());
        for (std::size_t t = 0; t < gu.size(); ++t) {
            dgam[static_cast<std::size_t>(k)][t] = (gu[t] - gd[t]) / (2.0 * h);
        }
    }
    auto G = [&](int l, int mu, int nu) { return g0[static_cast<std::size_t>((l * n + mu) * n + nu)]; };
    auto dG = [&](int k, int l, int mu, int nu) {
        return dgam[static_cast<std::size_t>(k)][static_cast<std::size_t>((l * n + mu) * n + nu)];
    };
    std::vector<double> riem(static_cast<std::size_t>(n * n * n * n), 0.0);
    for (int r = 0; r < n; ++r) {
        for (int s = 0; s < n; ++s) {
            for (int mu = 0; mu < n; ++mu) {
                for (int nu = 0; nu < n; ++nu) {
                    double v = dG(mu, r, nu, s) - dG(nu, r, mu, s);
                    for (int l = 0; l < n; ++l) v += G(r, mu, l) * G(l, nu, s) - G(r, nu, l) * G(l, mu, s);
                    riem[static_cast<std::size_t>(((r * n + s) * n + mu) * n + nu)] = v;
                }
            }
        }
    }
    return riem;
}

}  // namespace tcalc::testing
