#pragma once

// The normalized family
//   W_0 = 1,  W_1 = x - b_1 s,  W_{m+1} = (x - b_{m+1} s) W_m - a_{m+1} W_{m-1},  s = sqrt(1 - x^2),
// generated order by order from a measure, and the closed forms of the weight
// exp(-2 eta acos x) (1 - x^2)^(lambda - 1).

#include <wortho/error.hpp>
#include <wortho/measure.hpp>
#include <wortho/omega.hpp>
#include <wortho/special.hpp>

#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <string>
#include <vector>

namespace wortho {

/// Generation stopped at an order; `order()` is the first order that could not be produced.
class generation_error : public numeric_error {
public:
    generation_error(const std::string& what, int order)
        : numeric_error(what + " (order " + std::to_string(order) + ")"), order_(order) {}
    int order() const noexcept { return order_; }

private:
    int order_;
};

struct RecurrenceTable {
    int N = 0;
    std::vector<double> beta_hat;    ///< index 1..N+1 (entry 0 unused)
    std::vector<double> alpha_hat;   ///< index 2..N+1 (entries 0, 1 unused)
    std::vector<double> alpha_check; ///< alpha_hat from the direct integral, same indexing
    std::vector<double> rho_hat;     ///< index 0..N
    std::vector<OmegaFunction> w;    ///< W_0..W_N
    std::vector<LeadingData> leading;

    double beta(int m) const { return beta_hat.at(static_cast<std::size_t>(m)); }
    double alpha(int m) const { return alpha_hat.at(static_cast<std::size_t>(m)); }
    double rho(int m) const { return rho_hat.at(static_cast<std::size_t>(m)); }
    const OmegaFunction& function(int m) const { return w.at(static_cast<std::size_t>(m)); }

    /// W_0(x)..W_m(x) scaled by 2^k, by the recurrence (the stable way to evaluate).
    void eval_scaled(double x, double s, int m, double* out) const {
        out[0] = 1.0;
        if (m >= 1) out[1] = 2.0 * (x - beta_hat[1] * s);
        for (int k = 1; k < m; ++k)
            out[k + 1] = 2.0 * (x - beta_hat[static_cast<std::size_t>(k) + 1] * s) * out[k] -
                         4.0 * alpha_hat[static_cast<std::size_t>(k) + 1] * out[k - 1];
    }

    double eval(int m, double x, double s) const {
        require(m >= 0 && m <= N + 1, "RecurrenceTable::eval: order outside the table");
        std::vector<double> v(static_cast<std::size_t>(m) + 1);
        eval_scaled(x, s, m, v.data());
        return std::ldexp(v.back(), -m);
    }

    double eval(int m, double x) const {
        require(std::abs(x) <= 1.0, "RecurrenceTable::eval: |x| > 1");
        return eval(m, x, std::abs(x) > 0.99 ? std::sin(std::acos(x)) : std::sqrt(1.0 - x * x));
    }
};

namespace detail {

inline double scaled_integral(const Measure& psi, int m, Weighting wt, auto&& g) {
    return integrate_theta(psi, g, wt).value * std::ldexp(1.0, -2 * m);
}

} // namespace detail

/// Coefficients and functions up to order N (and b_{N+1}, a_{N+1}). Integrals are taken of
/// the pointwise recurrence values of 2^m W_m so that the integrands stay of unit size.
inline RecurrenceTable generate(const Measure& psi, int N, int max_order = 40) {
    require(N >= 1, "generate: N must be >= 1");
    require(N <= max_order, "generate: N exceeds the order cap");

    RecurrenceTable t;
    t.N = N;
    t.beta_hat.assign(static_cast<std::size_t>(N) + 2, 0.0);
    t.alpha_hat.assign(static_cast<std::size_t>(N) + 2, 0.0);
    t.alpha_check.assign(static_cast<std::size_t>(N) + 2, 0.0);
    t.rho_hat.assign(static_cast<std::size_t>(N) + 1, 0.0);
    t.w.reserve(static_cast<std::size_t>(N) + 1);
    t.w.push_back(OmegaFunction::constant(1.0));
    t.leading.push_back(leading_data(t.w[0]));

    std::vector<double> v(static_cast<std::size_t>(N) + 2);
    int order = 0;
    try {
        t.rho_hat[0] = integrate(psi, [](double) { return 1.0; }, true);
        if (!(t.rho_hat[0] > 0.0)) throw generation_error("generate: rho_hat is not positive", 0);
        t.beta_hat[1] = integrate(psi, [](double x) { return x; }) / t.rho_hat[0];

        for (int m = 0; m < N; ++m) {
            order = m + 1;
            const double b = t.beta_hat[static_cast<std::size_t>(m) + 1];
            OmegaFunction next = mul_linear(t.w.back(), 1.0, b);
            if (m >= 1) next.accumulate(t.w[static_cast<std::size_t>(m) - 1], -t.alpha_hat[static_cast<std::size_t>(m) + 1]);
            const LeadingStep step = leading_step(t.leading.back(), 1.0, b);
            t.leading.back().lambda_next = step.current.lambda_next;
            t.leading.push_back(leading_data(next));
            t.w.push_back(std::move(next));

            const int k = m + 1;
            auto square = [&](const ThetaPoint& p) {
                t.eval_scaled(p.x, p.s, k, v.data());
                return v[static_cast<std::size_t>(k)] * v[static_cast<std::size_t>(k)];
            };
            const double rho = detail::scaled_integral(psi, k, Weighting::halfcircle, square);
            if (!(rho > 0.0)) throw generation_error("generate: rho_hat is not positive, orthogonality lost", k);
            t.rho_hat[static_cast<std::size_t>(k)] = rho;
            const double xw = detail::scaled_integral(psi, k, Weighting::psi, [&](const ThetaPoint& p) { return p.x * square(p); });
            const double bn = xw / rho;
            t.beta_hat[static_cast<std::size_t>(k) + 1] = bn;
            const double bk = t.beta_hat[static_cast<std::size_t>(k)];
            t.alpha_hat[static_cast<std::size_t>(k) + 1] =
                (1.0 + bn * bn) / (1.0 + bk * bk) * rho / t.rho_hat[static_cast<std::size_t>(k) - 1];
            const double cross = detail::scaled_integral(psi, k, Weighting::halfcircle, [&](const ThetaPoint& p) {
                t.eval_scaled(p.x, p.s, k, v.data());
                return 2.0 * (p.x - bn * p.s) * v[static_cast<std::size_t>(k) - 1] * v[static_cast<std::size_t>(k)];
            });
            t.alpha_check[static_cast<std::size_t>(k) + 1] = cross / t.rho_hat[static_cast<std::size_t>(k) - 1];
        }
        t.leading.back().lambda_next = t.leading.back().lambda;
    } catch (const generation_error&) {
        throw;
    } catch (const numeric_error& e) {
        throw generation_error(std::string("generate: ") + e.what(), order);
    }
    return t;
}

/// Coefficients of the family W_m = gamma_0 ... gamma_m W^_m for nonzero gamma_0..gamma_{N}:
/// beta_m = gamma_m b_m, alpha_{m+1} = gamma_{m+1} gamma_m a_{m+1}, rho_m = (gamma_0...gamma_m)^2 r_m.
struct GeneralRecurrence {
    std::vector<double> gamma, beta, alpha, rho;
};

inline GeneralRecurrence rescale(const RecurrenceTable& t, const std::vector<double>& gamma) {
    require(gamma.size() >= static_cast<std::size_t>(t.N) + 1, "rescale: need gamma_0..gamma_N");
    GeneralRecurrence r;
    r.gamma.assign(gamma.begin(), gamma.begin() + t.N + 1);
    r.beta.assign(static_cast<std::size_t>(t.N) + 1, 0.0);
    r.alpha.assign(static_cast<std::size_t>(t.N) + 1, 0.0);
    r.rho.assign(static_cast<std::size_t>(t.N) + 1, 0.0);
    double g = 1.0;
    for (int m = 0; m <= t.N; ++m) {
        const auto i = static_cast<std::size_t>(m);
        require(gamma[i] != 0.0, "rescale: gamma_m must be nonzero");
        g *= gamma[i];
        r.rho[i] = g * g * t.rho_hat[i];
        if (m >= 1) r.beta[i] = gamma[i] * t.beta_hat[i];
        if (m >= 2) r.alpha[i] = gamma[i] * gamma[i - 1] * t.alpha_hat[i];
    }
    return r;
}

struct GegenbauerEtaCoeffs {
    double beta_hat;
    double alpha_hat_next;
};

namespace detail {
inline void require_lambda(double lambda) {
    require(std::isfinite(lambda) && lambda >= 0.5, "lambda must be >= 1/2");
}
} // namespace detail

/// b_m = eta/(m + lambda - 1),  a_{m+1} = m (m + 2 lambda - 1) / (4 (m + lambda - 1)(m + lambda)).
inline GegenbauerEtaCoeffs gegenbauer_eta_coeffs(double lambda, double eta, int m) {
    detail::require_lambda(lambda);
    require(m >= 1, "gegenbauer_eta_coeffs: m must be >= 1");
    const double md = m;
    return {eta / (md + lambda - 1.0), 0.25 * md * (md + 2.0 * lambda - 1.0) / ((md + lambda - 1.0) * (md + lambda))};
}

/// W_m at x = cos(theta/2) from the terminating hypergeometric form
///   2^-m (2 lambda)_m / (lambda)_m exp(-i m theta/2) 2F1(-m, b; 2 lambda; 1 - exp(i theta)),  b = lambda + i eta.
inline double gegenbauer_eta_w_via_2f1(double lambda, double eta, int m, double theta) {
    detail::require_lambda(lambda);
    require(m >= 0, "gegenbauer_eta_w_via_2f1: m must be >= 0");
    const std::complex<double> b(lambda, eta);
    const std::complex<double> z = std::polar(1.0, theta);
    const std::complex<double> y = 1.0 - z;
    std::complex<double> term = 1.0, sum = 1.0;
    double abs_sum = 1.0;
    for (int k = 0; k < m; ++k) {
        term *= (static_cast<double>(k - m)) * (b + static_cast<double>(k)) / ((2.0 * lambda + k) * (k + 1.0)) * y;
        sum += term;
        abs_sum += std::abs(term);
    }
    const double pref = std::ldexp(pochhammer(2.0 * lambda, m) / pochhammer(lambda, m), -m);
    const std::complex<double> val = pref * std::polar(1.0, -0.5 * m * theta) * sum;
    const double scale = std::max(1.0, pref * abs_sum);
    if (std::abs(val.imag()) > 1e-10 * scale) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "gegenbauer_eta_w_via_2f1: imaginary residual %.3g exceeds tolerance", val.imag());
        throw numeric_error(buf);
    }
    return val.real();
}

/// r_m = pi m! (lambda+m) Gamma(2 lambda + m) / (2^(2 lambda + 2m - 1) e^(eta pi) |Gamma(b+m+1)|^2)
///       * |(b)_m|^2 / ((lambda)_m)^2,  b = lambda + i eta.
inline double gegenbauer_eta_rho(double lambda, double eta, int m) {
    detail::require_lambda(lambda);
    require(m >= 0, "gegenbauer_eta_rho: m must be >= 0");
    const std::complex<double> b(lambda, eta);
    const double log_num = std::log(std::numbers::pi) + std::lgamma(m + 1.0) + std::log(lambda + m) + std::lgamma(2.0 * lambda + m);
    const double log_den = (2.0 * lambda + 2.0 * m - 1.0) * std::numbers::ln2 + eta * std::numbers::pi +
                           2.0 * lgamma_complex(b + static_cast<double>(m) + 1.0).real();
    const std::complex<double> bm = pochhammer(b, m);
    const double lm = pochhammer(lambda, m);
    return std::exp(log_num - log_den) * std::norm(bm) / (lm * lm);
}

namespace detail {
inline std::string fmt15(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}
} // namespace detail

/// "m,beta_hat,alpha_hat,rho_hat" for m = 0..N; beta blank at m = 0, alpha blank for m <= 1.
inline void write_csv(std::ostream& os, const RecurrenceTable& t) {
    os << "m,beta_hat,alpha_hat,rho_hat\n";
    for (int m = 0; m <= t.N; ++m) {
        os << m << ',';
        if (m >= 1) os << detail::fmt15(t.beta(m));
        os << ',';
        if (m >= 2) os << detail::fmt15(t.alpha(m));
        os << ',' << detail::fmt15(t.rho(m)) << '\n';
    }
}

} // namespace wortho
