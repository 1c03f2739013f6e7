#include <wortho/recurrence.hpp>

#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

using namespace wortho;

namespace {

constexpr double pi = std::numbers::pi;

// mpmath Stieltjes oracle, 40 digits (tests/oracles/stieltjes_mp.py)
constexpr std::array<double, 6> one_minus_x_beta{-0.4244131815783876, -0.3029977925494297, -0.2398160843768596,
                                              -0.2003581585955691, -0.1730830604894307, -0.1529639450724041};
constexpr std::array<double, 5> one_minus_x_alpha{0.2229580705225003, 0.2408212564355188, 0.2455305513540586, 0.2473987025023344,
                                               0.2483151998864697};
constexpr std::array<double, 7> one_minus_x_rho{1.5707963267948966,    0.3785519756461112,   0.09411985936102809,  0.02349518114185316,
                                             0.005870161117771687, 0.001466993479256219, 0.0003666445489050157};

// values as printed to 7 decimals
constexpr std::array<double, 6> printed_beta{-0.4244132, -0.3029978, -0.2398161, -0.2003582, -0.1730831, -0.1529639};
constexpr std::array<double, 5> printed_alpha{0.2229581, 0.2408213, 0.2455306, 0.2473987, 0.2483152};

} // namespace

TEST(Generate, ExampleOnePrintedTable) {
    const RecurrenceTable t = generate(Measure::one_minus_x(), 6);
    for (int m = 1; m <= 6; ++m) EXPECT_NEAR(t.beta(m), printed_beta[m - 1], 5e-7) << "m = " << m;
    for (int m = 2; m <= 6; ++m) EXPECT_NEAR(t.alpha(m), printed_alpha[m - 2], 5e-7) << "m = " << m;
}

TEST(Generate, ExampleOneAgainstOracle) {
    const RecurrenceTable t = generate(Measure::one_minus_x(), 6);
    for (int m = 1; m <= 6; ++m) EXPECT_NEAR(t.beta(m), one_minus_x_beta[m - 1], 1e-13);
    for (int m = 2; m <= 6; ++m) EXPECT_NEAR(t.alpha(m), one_minus_x_alpha[m - 2], 1e-13);
    for (int m = 0; m <= 6; ++m) EXPECT_NEAR(t.rho(m), one_minus_x_rho[m], 1e-13 * one_minus_x_rho[m]);
}

TEST(Generate, AlphaCrossCheck) {
    const RecurrenceTable t = generate(Measure::one_minus_x(), 12);
    for (int m = 2; m <= 12; ++m) EXPECT_NEAR(t.alpha_check[m], t.alpha(m), 1e-12 * t.alpha(m));
}

TEST(Generate, SymmetricMeasureHasZeroBeta) {
    for (const Measure& psi : {Measure::lebesgue(), Measure::chebyshev1(), Measure::gegenbauer_eta(1.5, 0.0)}) {
        const RecurrenceTable t = generate(psi, 8);
        for (int m = 1; m <= 8; ++m) EXPECT_NEAR(t.beta(m), 0.0, 1e-14) << psi.describe() << " m = " << m;
    }
}

TEST(Generate, ChebyshevUAlphaIsQuarter) {
    const RecurrenceTable t = generate(Measure::gegenbauer_eta(1.0, 0.0), 8);
    for (int m = 2; m <= 8; ++m) EXPECT_NEAR(t.alpha(m), 0.25, 1e-12);
}

TEST(Generate, LeadFactorIsProductOfBetas) {
    const RecurrenceTable t = generate(Measure::one_minus_x(), 10);
    double lambda = 1.0;
    for (int m = 1; m <= 10; ++m) {
        lambda *= 1.0 + t.beta(m) * t.beta(m);
        EXPECT_NEAR(t.function(m).lead_factor(), lambda, 1e-12 * lambda);
    }
}

TEST(Generate, ScaledEvaluationMatchesFunctions) {
    const RecurrenceTable t = generate(Measure::one_minus_x(), 8);
    for (double x : {-0.9, -0.2, 0.3, 0.8}) {
        for (int m = 0; m <= 8; ++m) EXPECT_NEAR(t.eval(m, x), t.function(m)(x), 1e-13);
    }
}

TEST(Generate, Preconditions) {
    EXPECT_THROW(generate(Measure::one_minus_x(), 0), precondition_error);
    EXPECT_THROW(generate(Measure::one_minus_x(), 41), precondition_error);
}

TEST(Generate, FailureReportsOrder) {
    // interior singularity with the refinement depth capped at 3
    const Measure hard = Measure::expression("abs(x - 0.3)^(-0.5)").with_quad(QuadSettings{4, 1e-12, 3});
    try {
        generate(hard, 6);
        FAIL() << "expected generation_error";
    } catch (const generation_error& e) {
        EXPECT_EQ(e.order(), 0);
    }
}

TEST(Rescale, IdentityScaling) {
    const RecurrenceTable t = generate(Measure::one_minus_x(), 5);
    const GeneralRecurrence r = rescale(t, std::vector<double>(6, 1.0));
    for (int m = 1; m <= 5; ++m) EXPECT_EQ(r.beta[m], t.beta(m));
    for (int m = 2; m <= 5; ++m) EXPECT_EQ(r.alpha[m], t.alpha(m));
}

TEST(Rescale, GammaFactors) {
    const RecurrenceTable t = generate(Measure::one_minus_x(), 3);
    const GeneralRecurrence r = rescale(t, {2.0, 3.0, 0.5, 4.0});
    EXPECT_DOUBLE_EQ(r.beta[2], 0.5 * t.beta(2));
    EXPECT_DOUBLE_EQ(r.alpha[3], 4.0 * 0.5 * t.alpha(3));
    EXPECT_DOUBLE_EQ(r.rho[3], (2.0 * 3.0 * 0.5 * 4.0) * (2.0 * 3.0 * 0.5 * 4.0) * t.rho(3));
    EXPECT_THROW(rescale(t, {1.0, 0.0, 1.0, 1.0}), precondition_error);
}

TEST(GegenbauerEtaClosedForm, ChebyshevU) {
    const GegenbauerEtaCoeffs c = gegenbauer_eta_coeffs(1.0, 0.0, 3);
    EXPECT_EQ(c.beta_hat, 0.0);
    EXPECT_DOUBLE_EQ(c.alpha_hat_next, 0.25);
}

TEST(GegenbauerEtaClosedForm, Legendre) {
    EXPECT_DOUBLE_EQ(gegenbauer_eta_coeffs(0.5, 0.0, 2).alpha_hat_next, 4.0 / 15.0);
    for (int m = 1; m <= 12; ++m) EXPECT_NEAR(gegenbauer_eta_coeffs(0.5, 0.0, m).alpha_hat_next, m * m / (4.0 * m * m - 1.0), 1e-15);
}

TEST(GegenbauerEtaClosedForm, GenericParameters) {
    const GegenbauerEtaCoeffs c = gegenbauer_eta_coeffs(0.75, 0.5, 1);
    EXPECT_DOUBLE_EQ(c.beta_hat, 2.0 / 3.0);
    EXPECT_NEAR(c.alpha_hat_next, 0.2857142857142857, 1e-15);
}

TEST(GegenbauerEtaClosedForm, DomainIsLambdaAtLeastHalf) {
    EXPECT_THROW(gegenbauer_eta_coeffs(0.4, 0.0, 1), precondition_error);
    EXPECT_THROW(gegenbauer_eta_rho(0.3, 0.0, 1), precondition_error);
    EXPECT_NO_THROW(gegenbauer_eta_coeffs(0.5, 0.0, 1));
}

TEST(GegenbauerEtaClosedForm, GeneratedMatchesClosedForms) {
    const std::array<std::pair<double, double>, 4> params{{{1.0, 0.0}, {0.75, 0.5}, {2.0, 1.0}, {0.6, -0.3}}};
    for (const auto& [lambda, eta] : params) {
        const RecurrenceTable t = generate(Measure::gegenbauer_eta(lambda, eta), 12);
        for (int m = 1; m <= 11; ++m) {
            const GegenbauerEtaCoeffs c = gegenbauer_eta_coeffs(lambda, eta, m);
            if (eta != 0.0) EXPECT_NEAR(t.beta(m), c.beta_hat, 1e-9 * std::abs(c.beta_hat));
            else EXPECT_NEAR(t.beta(m), 0.0, 1e-13);
            EXPECT_NEAR(t.alpha(m + 1), c.alpha_hat_next, 1e-9 * c.alpha_hat_next);
        }
    }
}

TEST(GegenbauerEtaClosedForm, HypergeometricForm) {
    EXPECT_DOUBLE_EQ(gegenbauer_eta_w_via_2f1(0.75, 0.5, 0, 1.234), 1.0);
    EXPECT_NEAR(gegenbauer_eta_w_via_2f1(1.0, 0.0, 2, pi), -0.25, 1e-14);
    const RecurrenceTable t = generate(Measure::gegenbauer_eta(0.75, 0.5), 4);
    for (double theta : {0.3, 1.7, 3.1, 4.4, 5.9}) {
        const ThetaPoint p = ThetaPoint::from_theta(theta);
        EXPECT_NEAR(gegenbauer_eta_w_via_2f1(0.75, 0.5, 3, theta), t.eval(3, p.x, p.s), 1e-8);
    }
}

TEST(GegenbauerEtaClosedForm, NormClosedForm) {
    EXPECT_NEAR(gegenbauer_eta_rho(1.0, 0.0, 0), pi / 2, 1e-14);
    EXPECT_NEAR(gegenbauer_eta_rho(1.0, 0.0, 1), pi / 8, 1e-14);
    const Measure psi = Measure::gegenbauer_eta(0.75, 0.5);
    const RecurrenceTable t = generate(psi, 3);
    const double direct = integrate(psi, [&](double x, double s) { const double w = t.eval(2, x, s); return w * w; }, true);
    EXPECT_NEAR(gegenbauer_eta_rho(0.75, 0.5, 2), direct, 1e-7 * direct);
    // mpmath value
    EXPECT_NEAR(gegenbauer_eta_rho(0.75, 0.5, 3), 0.01174569242946137, 1e-12 * 0.0117);
}

TEST(Csv, HeaderAndBlanks) {
    const RecurrenceTable t = generate(Measure::one_minus_x(), 3);
    std::ostringstream os;
    write_csv(os, t);
    std::istringstream in(os.str());
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "m,beta_hat,alpha_hat,rho_hat");
    std::getline(in, line);
    EXPECT_EQ(line, "0,,,1.5707963267949");
    std::getline(in, line);
    EXPECT_EQ(line, "1,-0.424413181578388,,0.378551975646111");
    std::getline(in, line);
    EXPECT_EQ(line.rfind("2,-0.30299779254943,0.2229580705225", 0), 0u);
}
