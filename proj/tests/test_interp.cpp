#include <wortho/interp.hpp>
#include <wortho/recurrence.hpp>
#include <wortho/zeros.hpp>

#include <gtest/gtest.h>

#include <random>
#include <utility>
#include <vector>

using namespace wortho;

TEST(Lagrange, CardinalProperty) {
    const RecurrenceTable t = generate(Measure::one_minus_x(), 6);
    const ZeroSet z = find_zeros(t, 6);
    const LagrangeBasis basis(z.x);
    for (std::size_t k = 1; k <= basis.size(); ++k) {
        for (std::size_t j = 1; j <= basis.size(); ++j) {
            const double v = eval_basis(basis, k, z.x[j - 1]);
            if (j == k) EXPECT_NEAR(v, 1.0, 1e-12);
            else EXPECT_NEAR(v, 0.0, 1e-12);
        }
    }
}

TEST(Lagrange, SingleNodeIsConstantOne) {
    const LagrangeBasis basis({0.3});
    for (double x : {-0.9, 0.0, 0.3, 0.99}) EXPECT_NEAR(eval_basis(basis, 1, x), 1.0, 1e-15);
}

TEST(Lagrange, OmegaFormMatchesProductForm) {
    const LagrangeBasis basis({-0.8, -0.1, 0.45, 0.7, 0.9});
    for (std::size_t k = 0; k < basis.size(); ++k) {
        EXPECT_EQ(basis.omega(k).degree_bound(), 4);
        for (double x : {-0.95, -0.5, 0.0, 0.33, 0.8}) EXPECT_NEAR(basis.omega(k)(x), eval_basis(basis, k + 1, x), 1e-12);
    }
}

TEST(Lagrange, Preconditions) {
    EXPECT_THROW(LagrangeBasis({}), precondition_error);
    EXPECT_THROW(LagrangeBasis({0.2, 0.2}), precondition_error);
    EXPECT_THROW(LagrangeBasis({1.0}), precondition_error);
    const LagrangeBasis basis({0.1, 0.2});
    EXPECT_THROW(eval_basis(basis, 0, 0.0), precondition_error);
    EXPECT_THROW(eval_basis(basis, 3, 0.0), precondition_error);
}

TEST(Interpolate, ConstantFromOnePoint) {
    const std::vector<std::pair<double, double>> pts{{0.4, 2.5}};
    const OmegaFunction f = interpolate(pts);
    EXPECT_EQ(f.degree_bound(), 0);
    EXPECT_NEAR(f(-0.7), 2.5, 1e-15);
}

TEST(Interpolate, ReproducesOmegaFunctions) {
    std::mt19937_64 rng(0x5EED);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int m = 1; m <= 8; ++m) {
        std::vector<double> b0(static_cast<std::size_t>(m) + 1), b1(static_cast<std::size_t>(m));
        for (double& v : b0) v = u(rng);
        for (double& v : b1) v = u(rng);
        const OmegaFunction g(m, b0, b1);
        std::vector<std::pair<double, double>> pts;
        for (int j = 0; j <= m; ++j) {
            const double x = std::cos(std::numbers::pi * (j + 0.5) / (m + 1));
            pts.emplace_back(x, g(x));
        }
        const OmegaFunction f = interpolate(pts);
        for (int k = 0; k < 50; ++k) {
            const double x = -0.99 + 1.98 * k / 49.0;
            EXPECT_NEAR(f(x), g(x), 1e-11) << "m = " << m;
        }
    }
}
