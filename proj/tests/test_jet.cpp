#include <catch2/catch_amalgamated.hpp>

#include <functional>
#include <random>

#include "tcalc/jet.hpp"

using namespace tcalc;

TEST_CASE("coordinate jet holds the point value and a unit first derivative") {
    const Jet j = Jet::coordinate(3, 3, 0, 2.0);
    CHECK(j.value() == 2.0);
    CHECK(j.d1(0) == 1.0);
    CHECK(j.d1(1) == 0.0);
    CHECK(j.d2(0, 0) == 0.0);
    CHECK(j.derivative({3, 0, 0, 0}) == 0.0);
}

TEST_CASE("dense coefficient count is C(dim+order, order)") {
    const Jet j = Jet::coordinate(2, 3, 1, 5.0);
    REQUIRE(j.coeffs().size() == 10);  // C(5,3)
    int nonzero = 0;
    for (double c : j.coeffs()) nonzero += (c != 0.0);
    CHECK(nonzero == 2);  // the value 5 and the unit first-order slot
    CHECK(n_jet_coeffs(4, 3) == 35);
    CHECK(n_jet_coeffs(4, 4) == 70);
}

TEST_CASE("coordinate slot out of range is rejected") {
    CHECK_THROWS_AS(Jet::coordinate(3, 3, 3, 0.0), ArgumentError);
    CHECK_THROWS_AS(Jet::coordinate(3, 3, -1, 0.0), ArgumentError);
}

TEST_CASE("arithmetic requires matching dim and order") {
    const Jet a = Jet::coordinate(2, 3, 0, 1.0);
    const Jet b = Jet::coordinate(3, 3, 0, 1.0);
    const Jet c = Jet::coordinate(2, 2, 0, 1.0);
    CHECK_THROWS_AS(a + b, ArgumentError);
    CHECK_THROWS_AS(a * c, ArgumentError);
}

TEST_CASE("tanh jet at the origin reproduces the analytic derivatives") {
    // tanh: f(0)=0, f'=1, f''=0, f'''=-2 (Taylor coefficient -1/3)
    const Jet x = Jet::coordinate(2, 3, 0, 0.0);
    const Jet t = tanh(x);
    CHECK_THAT(t.value(), Catch::Matchers::WithinAbs(0.0, 1e-15));
    CHECK_THAT(t.d1(0), Catch::Matchers::WithinAbs(1.0, 1e-15));
    CHECK_THAT(t.derivative({2, 0, 0, 0}), Catch::Matchers::WithinAbs(0.0, 1e-15));
    CHECK_THAT(t.derivative({3, 0, 0, 0}), Catch::Matchers::WithinAbs(-2.0, 1e-12));
    CHECK_THAT(t.coeff(t.table().slot({3, 0, 0, 0})),
               Catch::Matchers::WithinAbs(-1.0 / 3.0, 1e-13));

    // cross-check first and second derivatives against central differences
    auto f = [](double v) { return std::tanh(v); };
    const double h = 1e-5;
    const double fd1 = (f(h) - f(-h)) / (2 * h);
    const double fd2 = (f(h) - 2 * f(0) + f(-h)) / (h * h);
    CHECK_THAT(t.d1(0), Catch::Matchers::WithinAbs(fd1, 1e-9));
    CHECK_THAT(t.derivative({2, 0, 0, 0}), Catch::Matchers::WithinAbs(fd2, 1e-6));
}

TEST_CASE("exp jet at the origin has unit derivatives at every order") {
    const Jet x = Jet::coordinate(2, 3, 0, 0.0);
    const Jet e = exp(x);
    CHECK_THAT(e.value(), Catch::Matchers::WithinAbs(1.0, 1e-15));
    CHECK_THAT(e.d1(0), Catch::Matchers::WithinAbs(1.0, 1e-15));
    CHECK_THAT(e.derivative({2, 0, 0, 0}), Catch::Matchers::WithinAbs(1.0, 1e-15));
    CHECK_THAT(e.derivative({3, 0, 0, 0}), Catch::Matchers::WithinAbs(1.0, 1e-14));
}

TEST_CASE("product jet carries the product rule exactly") {
    const Jet x = Jet::coordinate(2, 3, 0, 2.0);
    const Jet y = Jet::coordinate(2, 3, 1, 3.0);
    const Jet p = x * y;
    CHECK(p.value() == 6.0);
    CHECK(p.d1(0) == 3.0);
    CHECK(p.d1(1) == 2.0);
    CHECK(p.d2(0, 1) == 1.0);
    CHECK(p.derivative({3, 0, 0, 0}) == 0.0);
    CHECK(p.derivative({2, 1, 0, 0}) == 0.0);
}

TEST_CASE("division and domain errors") {
    const Jet x = Jet::coordinate(2, 3, 0, 0.0);
    const Jet one = Jet::constant(2, 3, 1.0);
    CHECK_THROWS_AS(one / x, EvalError);
    CHECK_THROWS_AS(log(x), EvalError);
    CHECK_THROWS_AS(sqrt(Jet::constant(2, 3, -1.0)), EvalError);
    CHECK_THROWS_AS(pow(Jet::constant(2, 3, -1.0), 0.5), EvalError);
    // non-constant exponent with nonpositive base
    CHECK_THROWS_AS(pow(Jet::constant(2, 3, -2.0), x), EvalError);
    // integer powers of negative bases are fine
    const Jet q = pow(Jet::coordinate(2, 3, 0, -2.0), 3.0);
    CHECK(q.value() == -8.0);
    CHECK_THAT(q.d1(0), Catch::Matchers::WithinRel(12.0, 1e-14));
}

TEST_CASE("chain rule consistency: sin(x^2) equals sin applied to x*x exactly") {
    const Jet x = Jet::coordinate(3, 3, 1, 0.7);
    const Jet a = sin(x * x);
    const Jet args[] = {x, x};
    const Jet xx = jet_apply(JetFn::Mul, std::span<const Jet>(args, 2));
    const Jet sin_arg[] = {xx};
    const Jet b = jet_apply(JetFn::Sin, std::span<const Jet>(sin_arg, 1));
    for (std::size_t k = 0; k < a.coeffs().size(); ++k) {
        CHECK(a.coeffs()[k] == b.coeffs()[k]);  // identical code path, bitwise equal
    }
}

namespace {

// Paired jet/double evaluators for the finite-difference property test.
struct RandomExpr {
    std::function<Jet(const std::vector<Jet>&)> jet;
    std::function<double(const std::vector<double>&)> val;
};

RandomExpr make_random_expr(std::mt19937_64& rng, int dim, int depth) {
    std::uniform_int_distribution<int> pick(0, 9);
    std::uniform_real_distribution<double> C(-1.5, 1.5);
    if (depth == 0 || pick(rng) == 0) {
        if (pick(rng) < 3) {
            const double c = C(rng);
            return {[c](const std::vector<Jet>& xs) {
                        return Jet::constant(xs[0].dim(), xs[0].order(), c);
                    },
                    [c](const std::vector<double>&) { return c; }};
        }
        std::uniform_int_distribution<int> slot(0, dim - 1);
        const int s = slot(rng);
        return {[s](const std::vector<Jet>& xs) { return xs[static_cast<std::size_t>(s)]; },
                [s](const std::vector<double>& xs) { return xs[static_cast<std::size_t>(s)]; }};
    }
    const RandomExpr a = make_random_expr(rng, dim, depth - 1);
    switch (pick(rng)) {
        case 0:
        case 1: {
            const RandomExpr b = make_random_expr(rng, dim, depth - 1);
            return {[a, b](const std::vector<Jet>& xs) { return a.jet(xs) + b.jet(xs); },
                    [a, b](const std::vector<double>& xs) { return a.val(xs) + b.val(xs); }};
        }
        case 2: {
            const RandomExpr b = make_random_expr(rng, dim, depth - 1);
            return {[a, b](const std::vector<Jet>& xs) { return a.jet(xs) * b.jet(xs); },
                    [a, b](const std::vector<double>& xs) { return a.val(xs) * b.val(xs); }};
        }
        case 3: {
            // denominator bounded away from zero
            const RandomExpr b = make_random_expr(rng, dim, depth - 1);
            return {[a, b](const std::vector<Jet>& xs) {
                        return a.jet(xs) / (b.jet(xs) * b.jet(xs) + 1.5);
                    },
                    [a, b](const std::vector<double>& xs) {
                        return a.val(xs) / (b.val(xs) * b.val(xs) + 1.5);
                    }};
        }
        case 4:
            return {[a](const std::vector<Jet>& xs) { return sin(a.jet(xs)); },
                    [a](const std::vector<double>& xs) { return std::sin(a.val(xs)); }};
        case 5:
            return {[a](const std::vector<Jet>& xs) { return cos(a.jet(xs)); },
                    [a](const std::vector<double>& xs) { return std::cos(a.val(xs)); }};
        case 6:
            return {[a](const std::vector<Jet>& xs) { return tanh(a.jet(xs)); },
                    [a](const std::vector<double>& xs) { return std::tanh(a.val(xs)); }};
        case 7:
            return {[a](const std::vector<Jet>& xs) { return exp(tanh(a.jet(xs))); },
                    [a](const std::vector<double>& xs) { return std::exp(std::tanh(a.val(xs))); }};
        case 8:
            return {[a](const std::vector<Jet>& xs) { return log(a.jet(xs) * a.jet(xs) + 1.2); },
                    [a](const std::vector<double>& xs) {
                        return std::log(a.val(xs) * a.val(xs) + 1.2);
                    }};
        default:
            return {[a](const std::vector<Jet>& xs) { return sqrt(a.jet(xs) * a.jet(xs) + 1.1); },
                    [a](const std::vector<double>& xs) {
                        return std::sqrt(a.val(xs) * a.val(xs) + 1.1);
                    }};
    }
}

}  // namespace

TEST_CASE("1000 random expressions: first and second partials match central differences") {
    std::mt19937_64 rng(20240517);
    std::uniform_real_distribution<double> P(-0.8, 0.8);
    const int dim = 3;
    int checked = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const RandomExpr e = make_random_expr(rng, dim, 3);
        std::vector<double> p = {P(rng), P(rng), P(rng)};
        std::vector<Jet> xs;
        for (int i = 0; i < dim; ++i) {
            xs.push_back(Jet::coordinate(dim, 3, i, p[static_cast<std::size_t>(i)]));
        }
        const Jet j = e.jet(xs);

        auto fd_match = [&](double jet_value, auto&& fd_at_step) {
            // accept the better of the two stated steps
            const double f4 = fd_at_step(1e-4), f5 = fd_at_step(1e-5);
            const double scale = std::max({std::abs(jet_value), std::abs(f4), 1.0});
            const double err = std::min(std::abs(jet_value - f4), std::abs(jet_value - f5));
            return err / scale < 1e-5;
        };
        for (int i = 0; i < dim; ++i) {
            const bool ok = fd_match(j.d1(i), [&](double h) {
                std::vector<double> up = p, dn = p;
                up[static_cast<std::size_t>(i)] += h;
                dn[static_cast<std::size_t>(i)] -= h;
                return (e.val(up) - e.val(dn)) / (2 * h);
            });
            if (!ok) {
                CAPTURE(trial, i);
                REQUIRE(ok);
            }
            ++checked;
        }
        for (int i = 0; i < dim; ++i) {
            for (int k = i; k < dim; ++k) {
                const bool ok = fd_match(j.d2(i, k), [&](double h) {
                    if (i == k) {
                        std::vector<double> up = p, dn = p;
                        up[static_cast<std::size_t>(i)] += h;
                        dn[static_cast<std::size_t>(i)] -= h;
                        return (e.val(up) - 2 * e.val(p) + e.val(dn)) / (h * h);
                    }
                    std::vector<double> pp = p, pm = p, mp = p, mm = p;
                    pp[static_cast<std::size_t>(i)] += h;
                    pp[static_cast<std::size_t>(k)] += h;
                    pm[static_cast<std::size_t>(i)] += h;
                    pm[static_cast<std::size_t>(k)] -= h;
                    mp[static_cast<std::size_t>(i)] -= h;
                    mp[static_cast<std::size_t>(k)] += h;
                    mm[static_cast<std::size_t>(i)] -= h;
                    mm[static_cast<std::size_t>(k)] -= h;
                    return (e.val(pp) - e.val(pm) - e.val(mp) + e.val(mm)) / (4 * h * h);
                });
                if (!ok) {
                    CAPTURE(trial, i, k);
                    REQUIRE(ok);
                }
                ++checked;
            }
        }
    }
    CHECK(checked == 1000 * (3 + 6));
}

TEST_CASE("ring laws hold coefficient-wise") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> U(-2.0, 2.0);
    for (int trial = 0; trial < 200; ++trial) {
        const int dim = 2 + static_cast<int>(trial % 3);
        auto rand_jet = [&] {
            Jet acc = Jet::constant(dim, 3, U(rng));
            for (int i = 0; i < dim; ++i) {
                acc += U(rng) * Jet::coordinate(dim, 3, i, U(rng));
                acc += U(rng) * (Jet::coordinate(dim, 3, i, U(rng)) *
                                 Jet::coordinate(dim, 3, (i + 1) % dim, U(rng)));
            }
            return acc;
        };
        const Jet a = rand_jet(), b = rand_jet(), c = rand_jet();
        const Jet lhs_assoc = (a + b) + c, rhs_assoc = a + (b + c);
        const Jet lhs_dist = a * (b + c), rhs_dist = a * b + a * c;
        for (std::size_t k = 0; k < lhs_assoc.coeffs().size(); ++k) {
            const double scale = std::abs(lhs_assoc.coeffs()[k]) + 1.0;
            CHECK(std::abs(lhs_assoc.coeffs()[k] - rhs_assoc.coeffs()[k]) / scale < 1e-12);
        }
        for (std::size_t k = 0; k < lhs_dist.coeffs().size(); ++k) {
            const double scale = std::abs(lhs_dist.coeffs()[k]) + 1.0;
            CHECK(std::abs(lhs_dist.coeffs()[k] - rhs_dist.coeffs()[k]) / scale < 1e-12);
        }
    }
}

TEST_CASE("truncation keeps the low-order block and partial lowers the order") {
    const Jet x = Jet::coordinate(2, 4, 0, 0.3);
    const Jet f = sin(x * x);
    const Jet t = f.truncated(2);
    CHECK(t.order() == 2);
    CHECK(t.value() == f.value());
    CHECK(t.d1(0) == f.d1(0));
    const Jet d = f.partial(0);
    CHECK(d.order() == 3);
    // d/dx sin(x^2) = 2x cos(x^2)
    CHECK_THAT(d.value(), Catch::Matchers::WithinRel(2 * 0.3 * std::cos(0.09), 1e-14));
    CHECK_THAT(d.d1(0), Catch::Matchers::WithinRel(f.d2(0, 0), 1e-14));
}
