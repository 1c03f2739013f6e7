#include <wortho/omega.hpp>
#include <wortho/recurrence.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

using namespace wortho;

namespace {

constexpr double beta1 = -0.4244131815783876; // (1-x) dx, from the mpmath oracle

OmegaFunction random_omega(int m, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> b0(static_cast<std::size_t>(m) + 1), b1(static_cast<std::size_t>(m));
    for (double& v : b0) v = u(rng);
    for (double& v : b1) v = u(rng);
    return OmegaFunction(m, b0, b1);
}

} // namespace

TEST(Omega, ParityZerosEnforced) {
    const OmegaFunction f(3, {1, 2, 3, 4}, {5, 6, 7});
    EXPECT_EQ(f.b0()[0], 0.0);
    EXPECT_EQ(f.b0()[1], 2.0);
    EXPECT_EQ(f.b0()[2], 0.0);
    EXPECT_EQ(f.b0()[3], 4.0);
    EXPECT_EQ(f.b1()[0], 5.0);
    EXPECT_EQ(f.b1()[1], 0.0);
    EXPECT_EQ(f.b1()[2], 7.0);
}

TEST(Omega, ConstructorRejectsBadLengths) {
    EXPECT_THROW(OmegaFunction(2, {1, 2}, {1, 2}), precondition_error);
    EXPECT_THROW(OmegaFunction(-1), precondition_error);
}

TEST(Omega, ConstantEvaluates) {
    EXPECT_EQ(OmegaFunction::constant(1.0)(0.37), 1.0);
}

TEST(Omega, W1OfExampleOneAtZero) {
    const RecurrenceTable t = generate(Measure::one_minus_x(), 2);
    EXPECT_NEAR(t.function(1)(0.0), 0.4244132, 5e-8);
    EXPECT_NEAR(t.function(1)(0.0), -beta1, 1e-14);
}

TEST(Omega, EndpointDropsHalfcirclePart) {
    std::mt19937_64 rng(0x5EED);
    for (int m = 0; m < 8; ++m) {
        const OmegaFunction f = random_omega(m, rng);
        double b0_at_1 = 0.0;
        for (double c : f.b0()) b0_at_1 += c;
        EXPECT_NEAR(f(1.0), b0_at_1, 1e-14);
    }
}

TEST(Omega, EvaluationOutsideDomainRejected) {
    EXPECT_THROW(OmegaFunction::constant(1.0)(1.5), precondition_error);
}

TEST(MulLinear, IdentityMultiplierGivesX) {
    const OmegaFunction f = mul_linear(OmegaFunction::constant(1.0), 1.0, 0.0);
    EXPECT_EQ(f.degree_bound(), 1);
    EXPECT_EQ(f.b0()[1], 1.0);
    EXPECT_EQ(f.b0()[0], 0.0);
    EXPECT_EQ(f.b1()[0], 0.0);
}

TEST(MulLinear, FirstStep) {
    const double b = 0.3;
    const OmegaFunction f = mul_linear(OmegaFunction::constant(1.0), 1.0, b);
    EXPECT_EQ(f.b0()[1], 1.0);
    EXPECT_EQ(f.b1()[0], -b);
}

TEST(MulLinear, SecondStepExpansion) {
    // (x - b s)^2 = (1 - b^2) x^2 + b^2 - 2 b x s
    const double b = 0.3;
    const OmegaFunction f = mul_linear(mul_linear(OmegaFunction::constant(1.0), 1.0, b), 1.0, b);
    EXPECT_NEAR(f.b0()[2], 1.0 - b * b, 1e-15);
    EXPECT_NEAR(f.b0()[0], b * b, 1e-15);
    EXPECT_NEAR(f.b1()[1], -2.0 * b, 1e-15);
    for (int k = 0; k < 50; ++k) {
        const double x = -0.99 + 1.98 * k / 49.0;
        const double s = std::sqrt(1.0 - x * x);
        EXPECT_NEAR(f(x), (x - b * s) * (x - b * s), 1e-14);
    }
}

TEST(MulLinear, PointwiseOnRandomFunctions) {
    std::mt19937_64 rng(0x5EED);
    for (int m = 0; m < 10; ++m) {
        const OmegaFunction f = random_omega(m, rng);
        const double g = 0.7, b = -1.3;
        const OmegaFunction h = mul_linear(f, g, b);
        for (int k = 0; k < 20; ++k) {
            const ThetaPoint p = ThetaPoint::from_theta(0.3 + 0.28 * k);
            EXPECT_NEAR(h.eval(p), (g * p.x - b * p.s) * f.eval(p), 1e-13);
        }
    }
}

TEST(MulHalfcircle, MultipliesBySqrt) {
    const OmegaFunction f = mul_halfcircle(OmegaFunction::constant(2.0));
    EXPECT_NEAR(f(0.6), 1.6, 1e-15);
}

TEST(Accumulate, ParityMismatchRejected) {
    OmegaFunction f(2);
    EXPECT_THROW(f.accumulate(OmegaFunction(1), 1.0), precondition_error);
    f.accumulate(OmegaFunction::constant(3.0), 1.0);
    EXPECT_EQ(f.b0()[0], 3.0);
}

TEST(LeadingStep, Identity) {
    const LeadingStep s = leading_step(LeadingData{}, 1.0, 0.0);
    EXPECT_EQ(s.next.a0, 1.0);
    EXPECT_EQ(s.next.a1, 0.0);
    EXPECT_EQ(s.next.lambda, 1.0);
    EXPECT_EQ(s.current.lambda_next, 1.0);
}

TEST(LeadingStep, ExampleOneBeta) {
    const LeadingStep s = leading_step(LeadingData{}, 1.0, -0.4244132);
    EXPECT_EQ(s.next.a0, 1.0);
    EXPECT_NEAR(s.next.a1, 0.4244132, 1e-15);
    EXPECT_NEAR(s.next.lambda, 1.18012656, 1e-8);
}

TEST(LeadingStep, IdentityChainKeepsLambdaOne) {
    LeadingData d;
    for (int m = 0; m < 20; ++m) d = leading_step(d, 1.0, 0.0).next;
    EXPECT_EQ(d.lambda, 1.0);
}

TEST(LeadingStep, MatchesMulLinear) {
    std::mt19937_64 rng(7);
    const OmegaFunction f = random_omega(5, rng);
    const OmegaFunction g = mul_linear(f, 0.8, 0.45);
    const LeadingStep s = leading_step(leading_data(f), 0.8, 0.45);
    EXPECT_NEAR(s.next.a0, g.lead0(), 1e-14);
    EXPECT_NEAR(s.next.a1, g.lead1(), 1e-14);
    EXPECT_NEAR(s.next.lambda, g.lead_factor(), 1e-13);
}

TEST(WBasis, BasisElements) {
    const RecurrenceTable t = generate(Measure::one_minus_x(), 6);
    const std::vector<double> c = expand_in_w_basis(t.function(5), t.w);
    EXPECT_NEAR(c[0], 1.0, 1e-13);
    for (std::size_t j = 1; j < c.size(); ++j) EXPECT_NEAR(c[j], 0.0, 1e-13);

    const std::vector<double> d = expand_in_w_basis(mul_halfcircle(t.function(4)), t.w);
    EXPECT_NEAR(d[0], 0.0, 1e-13);
    EXPECT_NEAR(d[1], 1.0, 1e-13);
    for (std::size_t j = 2; j < d.size(); ++j) EXPECT_NEAR(d[j], 0.0, 1e-13);
}

TEST(WBasis, RandomReconstruction) {
    const RecurrenceTable t = generate(Measure::one_minus_x(), 6);
    std::mt19937_64 rng(0x5EED);
    for (int trial = 0; trial < 10; ++trial) {
        const OmegaFunction f = random_omega(5, rng);
        const OmegaFunction g = reconstruct_from_w_basis(expand_in_w_basis(f, t.w), t.w);
        for (int k = 0; k < 100; ++k) {
            const ThetaPoint p = ThetaPoint::from_theta(2.0 * std::numbers::pi * (k + 0.5) / 100.0);
            EXPECT_NEAR(g.eval(p), f.eval(p), 1e-12);
        }
    }
}
