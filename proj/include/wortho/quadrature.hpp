#pragma once

// Rules at the zeros of W_m:
//   even m = 2n:   int E dpsi            = sum lambda_hat_k E(x_k),    E in Omega_{4n-1}
//   odd m = 2n+1:  int E sqrt(1-x^2) dpsi = sum lambda_tilde_k E(x_k),  E in Omega_{4n}
// with lambda_k = int L_k^2 sqrt(1-x^2) dpsi, lambda_hat_k = lambda_k / sqrt(1-x_k^2) (even),
// lambda_tilde_k = lambda_k (odd).

#include <wortho/error.hpp>
#include <wortho/interp.hpp>
#include <wortho/measure.hpp>
#include <wortho/omega.hpp>
#include <wortho/recurrence.hpp>
#include <wortho/zeros.hpp>

#include <cmath>
#include <cstdio>
#include <ostream>
#include <vector>

namespace wortho {

struct QuadratureRule {
    int m = 0;
    ParityCase parity = ParityCase::odd;
    ZeroSet nodes;
    std::vector<double> lambda;
    std::vector<double> lambda_hat;   ///< dpsi weights
    std::vector<double> lambda_tilde; ///< sqrt(1-x^2) dpsi weights
    /// Largest relative gap between the identity-based weights and the direct integrals of L_k.
    double cross_check = 0.0;
};

/// Builds the rule of order m from a generated table of the measure psi. The weight family fixed
/// by the parity identity is stored from that identity after reconciling it with the direct
/// integral of L_k; the other family is the direct integral.
inline QuadratureRule build_rule(const Measure& psi, const RecurrenceTable& t, int m, double check_tol = 1e-9) {
    require(m >= 1 && m <= t.N, "build_rule: order outside the table");
    QuadratureRule r;
    r.m = m;
    r.parity = m % 2 == 0 ? ParityCase::even : ParityCase::odd;
    r.nodes = find_zeros(t, m);
    const LagrangeBasis basis(r.nodes.x);

    const auto n = static_cast<std::size_t>(m);
    r.lambda.resize(n);
    r.lambda_hat.resize(n);
    r.lambda_tilde.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        auto lk = [&](const ThetaPoint& p) { return basis.eval_complex(k, p).first; };
        const double sq = integrate_theta(psi, [&](const ThetaPoint& p) { const double v = lk(p); return v * v; }, Weighting::halfcircle).value;
        const double hat = integrate_theta(psi, lk, Weighting::psi).value;
        const double tilde = integrate_theta(psi, lk, Weighting::halfcircle).value;
        r.lambda[k] = sq;
        const double sk = ThetaPoint::from_theta(r.nodes.theta[k]).s;
        double identity, direct;
        if (r.parity == ParityCase::even) {
            identity = sq / sk;
            direct = hat;
            r.lambda_hat[k] = identity;
            r.lambda_tilde[k] = tilde;
        } else {
            identity = sq;
            direct = tilde;
            r.lambda_hat[k] = hat;
            r.lambda_tilde[k] = identity;
        }
        const double gap = std::abs(identity - direct) / std::abs(identity);
        r.cross_check = std::max(r.cross_check, gap);
        if (!(sq > 0.0)) throw numeric_error("build_rule: nonpositive weight lambda_k");
    }
    if (!(r.cross_check <= check_tol)) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "build_rule: weight identity and direct integral differ by %.3g (relative)", r.cross_check);
        throw numeric_error(buf);
    }
    return r;
}

namespace detail {
template <class F>
double apply_weights(const QuadratureRule& rule, const std::vector<double>& w, F&& e) {
    double sum = 0.0;
    for (std::size_t k = 0; k < w.size(); ++k) {
        const ThetaPoint p = ThetaPoint::from_theta(rule.nodes.theta[k]);
        sum += w[k] * e.eval(p);
    }
    return sum;
}
} // namespace detail

/// sum lambda_hat_k e(x_k); exact against dpsi for e in Omega_{4n-1} when m = 2n.
inline double apply_even(const QuadratureRule& rule, const OmegaFunction& e) {
    require(rule.parity == ParityCase::even, "apply_even: rule order is odd");
    return detail::apply_weights(rule, rule.lambda_hat, e);
}

/// sum lambda_tilde_k e(x_k); exact against sqrt(1-x^2) dpsi for e in Omega_{4n} when m = 2n+1.
inline double apply_odd(const QuadratureRule& rule, const OmegaFunction& e) {
    require(rule.parity == ParityCase::odd, "apply_odd: rule order is even");
    return detail::apply_weights(rule, rule.lambda_tilde, e);
}

inline void write_csv(std::ostream& os, const QuadratureRule& r) {
    os << "k,x,lambda,lambda_hat,lambda_tilde\n";
    char buf[200];
    for (std::size_t k = 0; k < r.lambda.size(); ++k) {
        std::snprintf(buf, sizeof buf, "%zu,%.15g,%.15g,%.15g,%.15g\n", k + 1, r.nodes.x[k], r.lambda[k], r.lambda_hat[k],
                      r.lambda_tilde[k]);
        os << buf;
    }
}

} // namespace wortho
