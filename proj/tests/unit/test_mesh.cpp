#include <doctest.h>

#include <cmath>
#include <random>

#include "nlheat/errors.hpp"
#include "nlheat/laplacian.hpp"
#include "nlheat/mesh.hpp"
#include "support/oracles.hpp"

using namespace nlheat;
using oracle::pi;

namespace {

Field sine(const Grid& g, double k = 1.0) {
    return Field::sample(g, [k](double x) { return std::sin(k * pi * x); });
}

Field random_field(const Grid& g, std::mt19937_64& gen, double lo = -1.0, double hi = 1.0) {
    return Field(g, oracle::uniform(gen, g.size(), lo, hi));
}

}  // namespace

TEST_CASE("grid geometry") {
    const Grid g = Grid::interval(2.0, 3);
    CHECK(g.dim() == 1);
    CHECK(g.size() == 3);
    CHECK(g.h(0) == doctest::Approx(0.5));
    CHECK(g.coordinate(0)[0] == doctest::Approx(0.5));
    CHECK(g.coordinate(2)[0] == doctest::Approx(1.5));

    const Grid r = Grid::rectangle(1.0, 2.0, 3, 4);
    CHECK(r.size() == 12);
    CHECK(r.cell_measure() == doctest::Approx(0.25 * 0.4));
    // Row-major: node 5 is (i = 1, j = 1).
    CHECK(r.coordinate(5)[0] == doctest::Approx(0.5));
    CHECK(r.coordinate(5)[1] == doctest::Approx(0.8));

    CHECK(g.refined().n(0) == 7);
    CHECK(g.refined().h(0) == doctest::Approx(0.25));

    CHECK_THROWS_AS(Grid::interval(0.0, 3), InvalidParameter);
    CHECK_THROWS_AS(Grid::interval(-1.0, 3), InvalidParameter);
    CHECK_THROWS_AS(Grid::interval(1.0, 0), InvalidParameter);
    CHECK_THROWS_AS(Grid::rectangle(1.0, 1.0, 2, 0), InvalidParameter);
}

TEST_CASE("field construction rejects bad data") {
    const Grid g = Grid::interval(1.0, 3);
    CHECK_THROWS_AS(Field(g, {1.0, 2.0}), InvalidParameter);
    CHECK_THROWS_AS(Field(g, {1.0, NAN, 2.0}), InvalidParameter);
    CHECK_THROWS_AS(Field(g, {1.0, INFINITY, 2.0}), InvalidParameter);
    const Field f(g, {1.0, -2.0, 3.0});
    CHECK(f.min() == -2.0);
    CHECK(f.max() == 3.0);
    CHECK_FALSE(f.is_nonnegative());
}

TEST_CASE("norm_lp") {
    const Grid g = Grid::interval(1.0, 199);

    SUBCASE("zero field") {
        const Field z = Field::zeros(g);
        for (double p : {1.0, 2.0, 3.5, kInfinity}) {
            CHECK(norm_lp(z, p) == 0.0);
        }
    }
    SUBCASE("constant field measures the interior") {
        for (std::size_t n : {1u, 4u, 199u}) {
            const Grid gn = Grid::interval(1.0, n);
            const double expected = std::sqrt(static_cast<double>(n) / static_cast<double>(n + 1));
            CHECK(norm_lp(Field::constant(gn, 1.0), 2.0) == doctest::Approx(expected).epsilon(1e-14));
        }
    }
    SUBCASE("sine against the integral of sin^2") {
        const double ref = std::sqrt(oracle::midpoint([](double x) { return std::sin(pi * x) * std::sin(pi * x); },
                                                      0.0, 1.0, 1 << 20));
        CHECK(ref == doctest::Approx(std::sqrt(0.5)).epsilon(1e-10));
        CHECK(std::abs(norm_lp(sine(g), 2.0) - ref) <= 1e-3);
        CHECK(norm_lp(sine(g), kInfinity) == doctest::Approx(1.0));
    }
    SUBCASE("exponent below one") {
        CHECK_THROWS_AS(norm_lp(sine(g), 0.5), InvalidParameter);
        CHECK_THROWS_AS(norm_lp(sine(g), NAN), InvalidParameter);
    }
}

TEST_CASE("norm_lp properties on random fields") {
    std::mt19937_64 gen(7);
    for (int trial = 0; trial < 50; ++trial) {
        const Grid g = trial % 2 ? Grid::interval(1.3, 17 + trial) : Grid::rectangle(1.0, 0.7, 5 + trial % 4, 6);
        const Field f = random_field(g, gen);
        const double c = oracle::uniform(gen, 1, -5.0, 5.0)[0];
        for (double p : {1.0, 2.0, 3.0, kInfinity}) {
            // absolute homogeneity
            CHECK(norm_lp(scaled(c, f), p) == doctest::Approx(std::abs(c) * norm_lp(f, p)).epsilon(1e-12));
            if (!std::isinf(p)) {
                CHECK(norm_lp(f, kInfinity) >=
                      norm_lp(f, p) / std::pow(g.interior_measure(), 1.0 / p) * (1.0 - 1e-12));
            }
        }
    }
}

TEST_CASE("h1 seminorm") {
    CHECK(h1_seminorm_sq(Field::zeros(Grid::interval(1.0, 9))) == 0.0);

    // One node, slopes +-2 over two edges of width 1/2.
    CHECK(h1_seminorm_sq(Field(Grid::interval(1.0, 1), {1.0})) == doctest::Approx(4.0));

    const double ref = oracle::midpoint([](double x) { return pi * pi * std::cos(pi * x) * std::cos(pi * x); }, 0.0,
                                        1.0, 1 << 20);
    CHECK(ref == doctest::Approx(pi * pi / 2.0).epsilon(1e-10));
    CHECK(std::abs(h1_seminorm_sq(sine(Grid::interval(1.0, 199))) - ref) <= 1e-2);
}

TEST_CASE("summation by parts against the Dirichlet stencil") {
    std::mt19937_64 gen(11);
    for (int trial = 0; trial < 40; ++trial) {
        const Grid g = trial % 2 ? Grid::interval(0.5 + trial * 0.1, 3 + 5 * trial)
                                 : Grid::rectangle(1.0 + 0.05 * trial, 0.8, 3 + trial % 5, 4 + trial % 3);
        const Field f = random_field(g, gen);
        const DirichletLaplacian lap(g);
        const double lhs = h1_seminorm_sq(f);
        const double rhs = inner_product(f, lap.apply(f));
        CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(rhs));
    }
}

TEST_CASE("inner product") {
    const Grid g = Grid::interval(1.0, 199);
    const Field s1 = sine(g);
    const Field s2 = sine(g, 2.0);
    CHECK(inner_product(Field::zeros(g), s1) == 0.0);
    CHECK(inner_product(s1, s1) == doctest::Approx(std::pow(norm_lp(s1, 2.0), 2)).epsilon(1e-14));
    CHECK(std::abs(inner_product(s1, s2)) <= 1e-3);
    CHECK_THROWS_AS(inner_product(s1, Field::zeros(Grid::interval(1.0, 198))), GridMismatch);
    CHECK_THROWS_AS(inner_product(s1, Field::zeros(Grid::interval(2.0, 199))), GridMismatch);
}

TEST_CASE("trapezoid time integral") {
    const Grid g = Grid::interval(1.0, 31);
    const Field s = sine(g);

    SUBCASE("exact on constants and linear trajectories") {
        std::vector<double> t;
        std::vector<Field> c;
        std::vector<Field> lin;
        for (int k = 0; k <= 10; ++k) {
            t.push_back(0.03 * k);
            c.push_back(Field::constant(g, 2.5));
            lin.push_back(scaled(t.back(), s));
        }
        const double T = t.back();
        const Field ic = trapezoid_time_integral(t, c);
        const Field il = trapezoid_time_integral(t, lin);
        for (std::size_t i = 0; i < g.size(); ++i) {
            CHECK(ic[i] == doctest::Approx(2.5 * T).epsilon(1e-14));
            CHECK(il[i] == doctest::Approx(0.5 * T * T * s[i]).epsilon(1e-13));
        }
    }
    SUBCASE("exponential decay against the antiderivative") {
        const Grid gf = Grid::interval(1.0, 199);
        const Field sf = sine(gf);
        const double T = 0.1;
        const double dt = 1e-4;
        std::vector<double> t;
        std::vector<Field> u;
        for (int k = 0; k <= 1000; ++k) {
            t.push_back(k * dt);
            u.push_back(scaled(std::exp(-pi * pi * t.back()), sf));
        }
        const Field integral = trapezoid_time_integral(t, u);
        const Field exact = scaled(oracle::decay_integral(pi * pi, T), sf);
        CHECK(norm_lp(integral - exact, 2.0) / norm_lp(exact, 2.0) <= 1e-4);
    }
    SUBCASE("linear in the samples") {
        std::mt19937_64 gen(3);
        std::vector<double> t{0.0, 0.1, 0.25, 0.3};
        std::vector<Field> a, b, ab;
        for (std::size_t k = 0; k < t.size(); ++k) {
            a.push_back(random_field(g, gen));
            b.push_back(random_field(g, gen));
            ab.push_back(linear_combination(2.0, a.back(), -3.0, b.back()));
        }
        const Field lhs = trapezoid_time_integral(t, ab);
        const Field rhs = linear_combination(2.0, trapezoid_time_integral(t, a), -3.0, trapezoid_time_integral(t, b));
        CHECK(norm_lp(lhs - rhs, kInfinity) <= 1e-14);
    }
    SUBCASE("rejects malformed sample lists") {
        const std::vector<Field> one{s};
        CHECK_THROWS_AS(trapezoid_time_integral(std::vector<double>{0.0}, one), InvalidParameter);
        const std::vector<Field> two{s, s};
        CHECK_THROWS_AS(trapezoid_time_integral(std::vector<double>{0.1, 0.2}, two), InvalidParameter);
        CHECK_THROWS_AS(trapezoid_time_integral(std::vector<double>{0.0, 0.0}, two), InvalidParameter);
        const std::vector<Field> three{s, s, s};
        CHECK_THROWS_AS(trapezoid_time_integral(std::vector<double>{0.0, 0.2, 0.1}, three), InvalidParameter);
    }
}

TEST_CASE("restriction to a coarser grid") {
    const Grid coarse = Grid::rectangle(1.0, 2.0, 3, 4);
    const Grid fine = coarse.refined().refined();
    auto f = [](double x, double y) { return x + 10.0 * y; };
    const Field r = restrict_to(Field::sample(fine, f), coarse);
    const Field direct = Field::sample(coarse, f);
    CHECK(norm_lp(r - direct, kInfinity) <= 1e-12);
    CHECK_THROWS_AS(restrict_to(Field::zeros(Grid::rectangle(1.0, 2.0, 4, 4)), coarse), GridMismatch);
}
