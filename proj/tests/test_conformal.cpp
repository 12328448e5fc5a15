#include <catch2/catch_amalgamated.hpp>

#include <numbers>

#include "support/fixtures.hpp"
#include "tcalc/conformal.hpp"
#include "tcalc/parser.hpp"
#include "tcalc/report.hpp"
#include "tcalc/solutions.hpp"

using namespace tcalc;
namespace tt = tcalc::testing;

namespace {

MetricSpec sphere3() {
    return parse_metric_file("dim 3\nsignature + + +\ncoords ch th ph\n"
                             "g[0][0] = 1\ng[1][1] = sin(ch)^2\n"
                             "g[2][2] = sin(ch)^2 * sin(th)^2\n")
        .metric;
}

MetricSpec minkowski(int dim) {
    if (dim == 3) {
        return parse_metric_file("dim 3\nsignature + - -\ncoords t x y\n"
                                 "g[0][0] = 1\ng[1][1] = -1\ng[2][2] = -1\n")
            .metric;
    }
    return parse_metric_file("dim 4\nsignature + - - -\ncoords t x y z\n"
                             "g[0][0] = 1\ng[1][1] = -1\ng[2][2] = -1\ng[3][3] = -1\n")
        .metric;
}

double max_trace_4d(const PointFrame& f, const TensorValue& t) {
    // max normalized contraction of any index pair of an all-upper rank-4 tensor
    const double scale = t.max_abs_value() + 1.0;
    double worst = 0.0;
    for (int sa = 0; sa < 4; ++sa) {
        for (int sb = sa + 1; sb < 4; ++sb) {
            for (int c = 0; c < 4; ++c) {
                for (int d = 0; d < 4; ++d) {
                    double tr = 0.0;
                    for (int m = 0; m < 4; ++m) {
                        for (int nn = 0; nn < 4; ++nn) {
                            std::array<int, 4> idx{};
                            int free_slot = 0;
                            const int frees[2] = {c, d};
                            for (int s = 0; s < 4; ++s) {
                                if (s == sa) {
                                    idx[static_cast<std::size_t>(s)] = m;
                                } else if (s == sb) {
                                    idx[static_cast<std::size_t>(s)] = nn;
                                } else {
                                    idx[static_cast<std::size_t>(s)] = frees[free_slot++];
                                }
                            }
                            tr += f.gg(m, nn).value() *
                                  t.value({idx[0], idx[1], idx[2], idx[3]});
                        }
                    }
                    worst = std::max(worst, std::abs(tr) / scale);
                }
            }
        }
    }
    return worst;
}

}  // namespace

TEST_CASE("schouten: flat space vanishes, the 3-sphere gives g/2") {
    {
        const PointFrame f = build_frame(minkowski(4), {0.0, 1.0, 2.0, 3.0}, 3);
        CHECK(schouten(f).max_abs_value() == 0.0);
    }
    const PointFrame f = build_frame(sphere3(), {1.0, 1.2, 0.5}, 3);
    const TensorValue s = schouten(f);
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            CHECK_THAT(s.value({i, j}),
                       Catch::Matchers::WithinAbs(0.5 * f.gi(i, j).value(), 1e-11));
        }
    }
    const PointFrame f2 = build_frame(parse_metric_file(
                                          "dim 2\nsignature + +\ncoords a b\n"
                                          "g[0][0] = 1\ng[1][1] = 1\n")
                                          .metric,
                                      {0.0, 0.0}, 3);
    CHECK_THROWS_AS(schouten(f2), ArgumentError);
}

TEST_CASE("weyl: minkowski vanishes and the dimension guard holds") {
    const PointFrame f = build_frame(minkowski(4), {0.0, 1.0, 2.0, 3.0}, 3);
    CHECK(weyl(f).max_abs_value() == 0.0);
    const PointFrame f3 = build_frame(sphere3(), {1.0, 1.2, 0.5}, 3);
    CHECK_THROWS_AS(weyl(f3), ArgumentError);
}

TEST_CASE("weyl vanishes on the conformally flat fixture exp(2 sigma) eta") {
    const MetricSpec m = parse_metric_file(
                             "dim 4\nsignature + - - -\ncoords t x y z\n"
                             "g[0][0] = exp(2*(0.3*t + 0.1*x^2))\n"
                             "g[1][1] = -exp(2*(0.3*t + 0.1*x^2))\n"
                             "g[2][2] = -exp(2*(0.3*t + 0.1*x^2))\n"
                             "g[3][3] = -exp(2*(0.3*t + 0.1*x^2))\n")
                             .metric;
    for (const auto& p : {std::vector<double>{0.1, 0.2, -0.3, 0.4},
                          std::vector<double>{-0.4, 0.5, 0.0, -0.2}}) {
        const PointFrame f = build_frame(m, p, 3);
        CHECK(conformal_template_residual(f) < 1e-9);
    }
}

TEST_CASE("weyl of a generic 4D metric is nonzero but traceless in every pair") {
    std::mt19937_64 rng(21);
    const MetricSpec m = tt::random_metric(rng, 4);
    const auto p = tt::random_point(rng, 4);
    const PointFrame f = build_frame(m, p, 3);
    const TensorValue c = weyl(f);
    CHECK(c.max_abs_value() > 1e-4);
    CHECK(max_trace_4d(f, c) < 1e-10);
}

TEST_CASE("cotton: flat 3D vanishes, rescaled flat vanishes, family (b) does not") {
    {
        const PointFrame f = build_frame(minkowski(3), {0.0, 1.0, 2.0}, 3);
        CHECK(cotton(f).max_abs_value() == 0.0);
    }
    {
        // lambda(x) * flat with lambda = 1 + 0.2 rho^2 (conformal template)
        const MetricSpec m = parse_metric_file(
                                 "dim 3\nsignature + - -\ncoords t rho y\n"
                                 "g[0][0] = 1 + 0.2*rho^2\n"
                                 "g[1][1] = -(1 + 0.2*rho^2)\n"
                                 "g[2][2] = -(1 + 0.2*rho^2)\n")
                                 .metric;
        const PointFrame f = build_frame(m, {0.3, 0.8, -0.2}, 3);
        CHECK(conformal_template_residual(f) < 1e-9);
    }
    {
        const MetricSpec m = solution_b_metric(1.0, 1.0);
        const PointFrame f = build_frame(m, {0.0, 2.0, 1.0}, 3);
        const TensorValue c = cotton(f);
        CHECK(c.max_abs_value() > 1e-3);  // generically curved, not conformally flat
        const double scale = c.max_abs_value() + 1.0;
        CHECK(max_symmetry_violation(c, 0, 1) / scale < 1e-10);
        // traceless
        double tr = 0.0;
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) tr += f.gg(i, j).value() * c.value({i, j});
        }
        CHECK(std::abs(tr) / scale < 1e-10);
    }
    CHECK_THROWS_AS(cotton(build_frame(minkowski(4), {0, 0, 0, 0}, 3)), ArgumentError);
}

TEST_CASE("conformal template suite: randomized hidden-flat metrics in 3D and 4D") {
    std::mt19937_64 rng(2024);
    for (int dim : {3, 4}) {
        for (int trial = 0; trial < 10; ++trial) {
            const MetricSpec m = tt::random_conformally_flat(rng, dim);
            const auto pts = sample_random(m, 6, 1000 + static_cast<std::uint64_t>(trial));
            for (const auto& p : pts) {
                const PointFrame f = build_frame(m, p, 3);
                const double res = conformal_template_residual(f);
                CAPTURE(dim, trial, res);
                CHECK(res < 1e-8);
            }
        }
    }
}

TEST_CASE("conformal rescale never flips the template verdict") {
    std::mt19937_64 rng(5);
    // a curved (not conformally flat) metric stays curved, a flat one stays flat
    const MetricSpec curved = solution_b_metric(1.0, 1.0);
    const ExprPtr sigma = mul(make_number(0.15), make_coord(1, "rho"));
    const MetricSpec curved_r = conformal_rescale(curved, sigma);
    for (const auto& p : sample_grid(curved, 3)) {
        const double before = conformal_template_residual(build_frame(curved, p, 3));
        const double after = conformal_template_residual(build_frame(curved_r, p, 3));
        CHECK((before < 1e-8) == (after < 1e-8));
    }
    const MetricSpec flat = tt::random_conformally_flat(rng, 4);
    const ExprPtr sigma4 = mul(make_number(0.1), make_coord(2, "x2"));
    const MetricSpec flat_r = conformal_rescale(flat, sigma4);
    for (const auto& p : sample_random(flat, 5, 77)) {
        const double before = conformal_template_residual(build_frame(flat, p, 3));
        const double after = conformal_template_residual(build_frame(flat_r, p, 3));
        CHECK(before < 1e-8);
        CHECK(after < 1e-8);
    }
}

TEST_CASE("weyl picks up the conformal weight under rescaling") {
    std::mt19937_64 rng(31);
    const MetricSpec m = tt::random_metric(rng, 4);
    const auto p = tt::random_point(rng, 4);
    const double s0 = 0.21;
    const MetricSpec r = conformal_rescale(m, make_number(s0));
    const TensorValue w_before = weyl(build_frame(m, p, 3));
    const TensorValue w_after = weyl(build_frame(r, p, 3));
    // all-upper Weyl scales by exp(-6 sigma) under g -> exp(2 sigma) g
    const double factor = std::exp(-6.0 * s0);
    for (std::size_t k = 0; k < w_before.size(); ++k) {
        CHECK_THAT(w_after[k].value(),
                   Catch::Matchers::WithinAbs(factor * w_before[k].value(), 1e-10));
    }
}

TEST_CASE("cotton conservation via cross-point differences, and exactly with order 4") {
    const MetricSpec m = solution_b_metric(1.0, 1.0);
    const std::vector<double> p = {0.2, 1.6, 0.8};

    // order-3 frames: divergence assembled from finite differences across points
    {
        const PointFrame f = build_frame(m, p, 3);
        const TensorValue gamma = christoffel(f);
        auto cotton_at = [&](const std::vector<double>& q) { return cotton(build_frame(m, q, 3)); };
        const TensorValue c0 = cotton_at(p);
        const double h = 1e-4;
        double worst = 0.0;
        for (int l = 0; l < 3; ++l) {
            double div = 0.0;
            for (int k = 0; k < 3; ++k) {
                std::vector<double> up = p, dn = p;
                up[static_cast<std::size_t>(k)] += h;
                dn[static_cast<std::size_t>(k)] -= h;
                div += (cotton_at(up).value({k, l}) - cotton_at(dn).value({k, l})) / (2 * h);
                for (int s = 0; s < 3; ++s) {
                    div += gamma.value({k, k, s}) * c0.value({s, l});
                    div += gamma.value({l, k, s}) * c0.value({k, s});
                }
            }
            worst = std::max(worst, std::abs(div));
        }
        CHECK(worst < 1e-6);
    }

    // order-4 frames: cotton entries keep one derivative order, so the
    // divergence is a direct jet contraction
    {
        const PointFrame f = build_frame(m, p, 4);
        const TensorValue c = cotton(f);
        REQUIRE(c.jet_order() >= 1);
        const TensorValue dc = covariant_derivative(f, c);
        double worst = 0.0;
        for (int l = 0; l < 3; ++l) {
            double div = 0.0;
            for (int k = 0; k < 3; ++k) div += dc.value({k, k, l});
            worst = std::max(worst, std::abs(div));
        }
        CHECK(worst < 1e-9);
    }
}

TEST_CASE("chern-simons density: flat cartesian chart vanishes, values are reproducible") {
    {
        const PointFrame f = build_frame(minkowski(3), {0.1, 0.2, 0.3}, 3);
        CHECK(cs_density_3d(f).value() == 0.0);
    }
    const MetricSpec m = solution_b_metric(1.0, 1.0);
    const PointFrame f = build_frame(m, {0.0, 2.0, 1.0}, 3);
    const double v1 = cs_density_3d(f).value();
    const double v2 = cs_density_3d(build_frame(m, {0.0, 2.0, 1.0}, 3)).value();
    CHECK(std::isfinite(v1));
    CHECK(v1 == v2);  // bit-for-bit deterministic
}

TEST_CASE("reduced chern-simons density in 2D") {
    const MetricSpec m2 = parse_metric_file("dim 2\nsignature + -\ncoords t x\n"
                                            "g[0][0] = 1\ng[1][1] = -1\n")
                              .metric;
    const PointFrame f = build_frame(m2, {0.0, 0.0}, 3);
    // f = 0 gives 0
    CHECK(reduced_cs_density_2d(f, Jet(2, 1)).value() == 0.0);
    // flat, f = 1: -(1/(8 pi^2)) * (0 + 1)
    const double expect = -1.0 / (8.0 * std::numbers::pi * std::numbers::pi);
    CHECK_THAT(reduced_cs_density_2d(f, Jet::constant(2, 1, 1.0)).value(),
               Catch::Matchers::WithinRel(expect, 1e-15));
    CHECK_THAT(expect, Catch::Matchers::WithinAbs(-0.0126651, 1e-7));
    // Euclidean 2D is rejected unless explicitly allowed
    const MetricSpec e2 = parse_metric_file("dim 2\nsignature + +\ncoords a b\n"
                                            "g[0][0] = 1\ng[1][1] = 1\n")
                              .metric;
    const PointFrame fe = build_frame(e2, {0.0, 0.0}, 3);
    CHECK_THROWS_AS(reduced_cs_density_2d(fe, Jet::constant(2, 1, 1.0)), EvalError);
    CHECK(std::isfinite(reduced_cs_density_2d(fe, Jet::constant(2, 1, 1.0), true).value()));
    // curved check: r = -f^2 style spot value cross-checked by independent arithmetic
    const MetricSpec curved = static_gauge_2d_metric(1.0, 1.0);
    const std::vector<double> p = {0.0, 0.9};
    const PointFrame fc = build_frame(curved, p, 3);
    const Jet fj = Jet::constant(2, 1, 0.9);
    const double r2d = ricci(fc).scalar.value();
    const double by_hand = -(fc.sqrt_abs_det.value() * (0.9 * r2d + 0.9 * 0.9 * 0.9)) /
                           (8.0 * std::numbers::pi * std::numbers::pi);
    CHECK_THAT(reduced_cs_density_2d(fc, fj).value(),
               Catch::Matchers::WithinRel(by_hand, 1e-13));
}

TEST_CASE("conformal flatness report records skipped points") {
    const MetricSpec m = solution_b_metric(-1.0, 0.0);  // w(2) = 0 exactly
    std::vector<std::vector<double>> pts = {{0.0, 2.0, 1.0}, {0.0, 3.0, 1.0}};
    const ConformalReport rep = conformal_flatness_report(m, pts, 1e-8);
    CHECK(rep.evaluated == 1);
    REQUIRE(rep.points.size() == 2);
    CHECK(rep.points[0].skipped);
    CHECK_FALSE(rep.points[1].skipped);
    CHECK_FALSE(rep.flat_at_samples);
}
