#pragma once

// Invariant suites over a measure: orthogonality, quadrature, chain, opuc, bridge, zeros.
// Each check carries its measured value, the threshold it was held to and the outcome.

#include <wortho/error.hpp>
#include <wortho/interp.hpp>
#include <wortho/measure.hpp>
#include <wortho/omega.hpp>
#include <wortho/opuc.hpp>
#include <wortho/quadrature.hpp>
#include <wortho/recurrence.hpp>
#include <wortho/selfinv.hpp>
#include <wortho/zeros.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace wortho {

struct Check {
    enum class Kind {
        at_most,  ///< pass iff value <= threshold; the threshold follows the suite tolerance override
        above,    ///< pass iff value > threshold; fixed bound
        note,     ///< reported, never fails
    };
    std::string name;
    double value = 0.0;
    double threshold = 0.0;
    Kind kind = Kind::at_most;
    bool pass = true;
    std::string detail;
};

struct SuiteReport {
    std::string suite;
    std::string measure;
    int N = 0;
    std::uint64_t seed = 0;
    std::vector<Check> checks;

    bool passed() const {
        return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
    }
};

struct VerifyOptions {
    int N = 12;
    std::optional<double> tol; ///< replaces every residual threshold when set
    std::uint64_t seed = 0x5EED;
};

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"orthogonality", "quadrature", "chain", "opuc", "bridge", "zeros"};
    return names;
}

namespace detail {

class Recorder {
public:
    Recorder(SuiteReport& r, const VerifyOptions& o) : report_(r), opts_(o) {}

    void at_most(std::string name, double value, double threshold, std::string detail = {}) {
        const double thr = opts_.tol.value_or(threshold);
        report_.checks.push_back({std::move(name), value, thr, Check::Kind::at_most, value <= thr, std::move(detail)});
    }
    void above(std::string name, double value, double bound, std::string detail = {}) {
        report_.checks.push_back({std::move(name), value, bound, Check::Kind::above, value > bound, std::move(detail)});
    }
    void note(std::string name, double value, std::string detail = {}) {
        report_.checks.push_back({std::move(name), value, 0.0, Check::Kind::note, true, std::move(detail)});
    }

private:
    SuiteReport& report_;
    const VerifyOptions& opts_;
};

// Integral of g(V, p) where V[k] = 2^k W_k(x) at the sample point p, against the weighting.
template <class G>
auto scaled_family_integral(const Measure& psi, const RecurrenceTable& t, int top, Weighting wt, G&& g) {
    std::vector<double> v(static_cast<std::size_t>(top) + 1);
    return integrate_theta(
               psi,
               [&](const ThetaPoint& p) {
                   t.eval_scaled(p.x, p.s, top, v.data());
                   return g(v, p);
               },
               wt)
        .value;
}

inline OmegaFunction random_omega(int m, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> b0(static_cast<std::size_t>(m) + 1), b1(static_cast<std::size_t>(m));
    for (double& v : b0) v = u(rng);
    for (double& v : b1) v = u(rng);
    return OmegaFunction(m, std::move(b0), std::move(b1));
}

// Random element of Omega_K drawn in the mixed basis W_K, s W_{K-1}, W_{K-2}, ...
inline OmegaFunction random_in_class(int K, const RecurrenceTable& t, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> c(static_cast<std::size_t>(K) + 1);
    for (double& v : c) v = u(rng);
    return reconstruct_from_w_basis(c, t.w);
}

inline void suite_orthogonality(const Measure& psi, const VerifyOptions& o, Recorder& rec) {
    const int N = o.N;
    const RecurrenceTable t = generate(psi, N);
    double rho_min = t.rho(0), alpha_min = 1.0, alpha_gap = 0.0, lead_gap = 0.0;
    double lambda = 1.0;
    for (int m = 1; m <= N; ++m) {
        rho_min = std::min(rho_min, t.rho(m));
        if (m >= 2) {
            alpha_min = std::min(alpha_min, t.alpha(m));
            alpha_gap = std::max(alpha_gap, std::abs(t.alpha(m) - t.alpha_check[static_cast<std::size_t>(m)]) / t.alpha(m));
        }
        lambda *= 1.0 + t.beta(m) * t.beta(m);
        lead_gap = std::max(lead_gap, std::abs(t.function(m).lead_factor() - lambda) / lambda);
    }
    rec.above("rho_hat positive (min)", rho_min, 0.0);
    rec.above("alpha_hat positive (min)", alpha_min, 0.0);
    rec.at_most("alpha_hat: quotient form vs direct integral (rel)", alpha_gap, 1e-9);
    rec.at_most("lead factor = prod(1 + beta_hat^2) (rel)", lead_gap, 1e-10);

    // norms of 2^k W_k against dpsi for the odd-gap pairs
    std::vector<double> psi_norm(static_cast<std::size_t>(N) + 1), hc_norm(static_cast<std::size_t>(N) + 1);
    for (int k = 0; k <= N; ++k) {
        const auto kk = static_cast<std::size_t>(k);
        psi_norm[kk] = scaled_family_integral(psi, t, k, Weighting::psi, [&](const std::vector<double>& v, const ThetaPoint&) { return v[kk] * v[kk]; });
        hc_norm[kk] = std::ldexp(t.rho(k), 2 * k);
    }
    double even_gap = 0.0, odd_gap = 0.0;
    for (int m = 1; m <= N; ++m) {
        for (int n = 0; n < m; ++n) {
            const auto mm = static_cast<std::size_t>(m), nn = static_cast<std::size_t>(n);
            const bool even = (m - n) % 2 == 0;
            const double v = scaled_family_integral(psi, t, m, even ? Weighting::halfcircle : Weighting::psi,
                                                    [&](const std::vector<double>& w, const ThetaPoint&) { return w[nn] * w[mm]; });
            if (even) even_gap = std::max(even_gap, std::abs(v) / std::sqrt(hc_norm[nn] * hc_norm[mm]));
            else odd_gap = std::max(odd_gap, std::abs(v) / std::sqrt(psi_norm[nn] * psi_norm[mm]));
        }
    }
    rec.at_most("orthogonality, m-n even, sqrt(1-x^2) dpsi (rel)", even_gap, 1e-8);
    rec.at_most("orthogonality, m-n odd, dpsi (rel)", odd_gap, 1e-8);

    // parity-constrained monomials against W_m, and (x + i s)^(-m+1+2s) = exp(i (-m+1+2s) theta/2)
    double b0_gap = 0.0, b1_gap = 0.0, exp_gap = 0.0;
    for (int m = 1; m <= N; ++m) {
        const auto mm = static_cast<std::size_t>(m);
        const double l1 = scaled_family_integral(psi, t, m, Weighting::psi, [&](const std::vector<double>& v, const ThetaPoint&) { return std::abs(v[mm]); });
        const double l1h = scaled_family_integral(psi, t, m, Weighting::halfcircle, [&](const std::vector<double>& v, const ThetaPoint&) { return std::abs(v[mm]); });
        for (int j = m - 1; j >= 0; j -= 2) {
            const double v = scaled_family_integral(psi, t, m, Weighting::psi, [&](const std::vector<double>& w, const ThetaPoint& p) { return std::pow(p.x, j) * w[mm]; });
            b0_gap = std::max(b0_gap, std::abs(v) / l1);
        }
        for (int j = m - 2; j >= 0; j -= 2) {
            const double v = scaled_family_integral(psi, t, m, Weighting::halfcircle, [&](const std::vector<double>& w, const ThetaPoint& p) { return std::pow(p.x, j) * w[mm]; });
            b1_gap = std::max(b1_gap, std::abs(v) / l1h);
        }
        for (int s = 0; s < m; ++s) {
            const cplx v = scaled_family_integral(psi, t, m, Weighting::psi, [&](const std::vector<double>& w, const ThetaPoint& p) {
                return std::polar(w[mm], 0.5 * (-m + 1 + 2 * s) * p.theta);
            });
            exp_gap = std::max(exp_gap, std::abs(v) / l1);
        }
    }
    rec.at_most("int B0 W_m dpsi = 0, B0 in P_{m-1} (rel)", b0_gap, 1e-8);
    rec.at_most("int B1 W_m sqrt(1-x^2) dpsi = 0, B1 in P_{m-2} (rel)", b1_gap, 1e-8);
    rec.at_most("int (x + i sqrt(1-x^2))^(-m+1+2s) W_m dpsi = 0 (rel)", exp_gap, 1e-8);

    // further orthogonality values
    double xs_gap = 0.0, q_gap = 0.0, zero_gap = 0.0;
    for (int m = 2; m <= N; ++m) {
        const auto mm = static_cast<std::size_t>(m);
        const double bm = t.beta(m), bn = t.beta(m + 1);
        const double scale = std::ldexp(1.0, 2 * m - 1);
        const double xs = scaled_family_integral(psi, t, m, Weighting::psi, [&](const std::vector<double>& w, const ThetaPoint& p) { return p.x * p.s * w[mm - 1] * w[mm]; }) / scale;
        const double q = scaled_family_integral(psi, t, m, Weighting::psi, [&](const std::vector<double>& w, const ThetaPoint& p) { return p.s * p.s * w[mm - 1] * w[mm]; }) / scale;
        xs_gap = std::max(xs_gap, std::abs(xs - t.rho(m) * (1.0 - bm * bn) / (1.0 + bm * bm)) / t.rho(m));
        q_gap = std::max(q_gap, std::abs(q + t.rho(m) * (bm + bn) / (1.0 + bm * bm)) / t.rho(m));
        for (int k = 1; k <= (m - 1) / 2; ++k) {
            const auto lo = static_cast<std::size_t>(m - 1 - 2 * k);
            const double sc = std::ldexp(1.0, m + static_cast<int>(lo));
            const double a = scaled_family_integral(psi, t, m, Weighting::psi, [&](const std::vector<double>& w, const ThetaPoint& p) { return p.x * p.s * w[lo] * w[mm]; }) / sc;
            const double b = scaled_family_integral(psi, t, m, Weighting::psi, [&](const std::vector<double>& w, const ThetaPoint& p) { return p.s * p.s * w[lo] * w[mm]; }) / sc;
            zero_gap = std::max(zero_gap, std::max(std::abs(a), std::abs(b)) / std::sqrt(t.rho(m) * t.rho(static_cast<int>(lo))));
        }
    }
    rec.at_most("int x sqrt(1-x^2) W_{m-1} W_m dpsi = rho_m (1 - b_m b_{m+1})/(1 + b_m^2) (rel)", xs_gap, 1e-8);
    rec.at_most("int (1-x^2) W_{m-1} W_m dpsi = -rho_m (b_m + b_{m+1})/(1 + b_m^2) (rel)", q_gap, 1e-8);
    rec.at_most("int x sqrt(1-x^2) W_{m-1-2k} W_m dpsi = int (1-x^2) W_{m-1-2k} W_m dpsi = 0, k >= 1 (rel)", zero_gap, 1e-8);
}

inline void suite_quadrature(const Measure& psi, const VerifyOptions& o, Recorder& rec) {
    const int N = std::max(o.N, 4);
    const RecurrenceTable t = generate(psi, N);
    std::mt19937_64 rng(o.seed);
    const double mass_psi = integrate(psi, [](double) { return 1.0; });
    const double mass_hc = t.rho(0);
    double lambda_min = 1.0;
    for (int n = 1; 4 * n <= N && n <= 3; ++n) {
        for (const int m : {2 * n, 2 * n + 1}) {
            const bool even = m % 2 == 0;
            const QuadratureRule r = build_rule(psi, t, m, 1.0);
            const LagrangeBasis basis(r.nodes.x);
            for (double l : r.lambda) lambda_min = std::min(lambda_min, l);
            const std::string tag = (even ? "even m = " : "odd m = ") + std::to_string(m);
            rec.at_most("weight identity " + std::string(even ? "lambda_hat = lambda/sqrt(1-x^2)" : "lambda_tilde = lambda") + ", " + tag + " (rel)",
                        r.cross_check, 1e-10);

            const int K = even ? 4 * n - 1 : 4 * n;
            double worst = 0.0;
            for (int i = 0; i < 50; ++i) {
                const OmegaFunction e = random_in_class(K, t, rng);
                const Weighting wt = even ? Weighting::psi : Weighting::halfcircle;
                const double direct = integrate_theta(psi, [&](const ThetaPoint& p) { return e.eval(p); }, wt).value;
                const double l1 = integrate_theta(psi, [&](const ThetaPoint& p) { return std::abs(e.eval(p)); }, wt).value;
                const double rule = even ? apply_even(r, e) : apply_odd(r, e);
                worst = std::max(worst, std::abs(rule - direct) / l1);
            }
            rec.at_most("exactness on 50 random elements of Omega_" + std::to_string(K) + ", " + tag + " (rel)", worst, 1e-9);

            double defining = 0.0;
            for (std::size_t j = 0; j < r.lambda.size(); ++j) {
                const OmegaFunction sq = omega_product(basis.omega(j), basis.omega(j));
                const double v = even ? apply_even(r, mul_halfcircle(sq)) : apply_odd(r, sq);
                defining = std::max(defining, std::abs(v - r.lambda[j]) / r.lambda[j]);
            }
            rec.at_most("rule applied to " + std::string(even ? "sqrt(1-x^2) L_j^2" : "L_j^2") + " gives lambda_j, " + tag + " (rel)", defining, 1e-10);

            if (!even) {
                double sh = 0.0, st = 0.0;
                for (std::size_t k = 0; k < r.lambda.size(); ++k) {
                    sh += r.lambda_hat[k];
                    st += r.lambda_tilde[k];
                }
                rec.at_most("sum lambda_hat = int dpsi, sum lambda_tilde = int sqrt(1-x^2) dpsi, " + tag + " (rel)",
                            std::max(std::abs(sh - mass_psi) / mass_psi, std::abs(st - mass_hc) / mass_hc), 1e-10);
            } else {
                // W_{2n}^2 lies in Omega_{4n}, one step outside the class, and vanishes at every node
                const auto mm = static_cast<std::size_t>(m);
                const double direct = scaled_family_integral(psi, t, m, Weighting::psi, [&](const std::vector<double>& v, const ThetaPoint&) { return v[mm] * v[mm]; }) *
                                      std::ldexp(1.0, -2 * m);
                const double rule = apply_even(r, omega_product(t.function(m), t.function(m)));
                rec.note("class sharpness: even rule on W_m^2 in Omega_" + std::to_string(2 * m) + ", " + tag + " (rel deviation)",
                         std::abs(rule - direct) / direct, std::abs(rule - direct) / direct > 1e-6 ? "deviates, class is sharp" : "no deviation found");
            }
        }
    }
    rec.above("all lambda_k positive (min)", lambda_min, 0.0);
}

inline void suite_chain(const Measure& psi, const VerifyOptions& o, Recorder& rec) {
    const RecurrenceTable t = generate(psi, o.N);
    const std::vector<double> a(t.alpha_hat.begin() + 2, t.alpha_hat.end());
    const ChainSeqData c = chain_parameters(a);

    auto identities = [](const ChainSeqData& d, double& min_gap, double& max_gap) {
        min_gap = 0.0;
        max_gap = 0.0;
        for (int k = 1; k <= d.size(); ++k) {
            const auto kk = static_cast<std::size_t>(k);
            min_gap = std::max(min_gap, std::abs((1.0 - d.minimal[kk - 1]) * d.minimal[kk] - d.alpha[kk]) / d.alpha[kk]);
            max_gap = std::max(max_gap, std::abs((1.0 - d.maximal[kk - 1]) * d.maximal[kk] - d.alpha[kk]) / d.alpha[kk]);
        }
    };
    auto bounds = [](const ChainSeqData& d) {
        double in = 1.0;
        for (std::size_t k = 1; k < d.minimal.size(); ++k) in = std::min({in, d.minimal[k], 1.0 - d.minimal[k]});
        for (double v : d.maximal) in = std::min({in, v, 1.0 - v});
        return in;
    };
    auto separation = [](const ChainSeqData& d) {
        double s = 1.0;
        for (std::size_t k = 0; k < d.minimal.size(); ++k) s = std::min(s, d.maximal[k] - d.minimal[k]);
        return s;
    };

    double gmin, gmax;
    identities(c, gmin, gmax);
    rec.at_most("chain identity (1 - g_{k-1}) g_k = a_{k+1}, minimal (rel)", gmin, 1e-10);
    rec.at_most("chain identity (1 - M_k) M_{k+1} = a_{k+1}, maximal by truncation (rel)", gmax, 1e-10);
    rec.above("parameters inside (0, 1), truncation (distance)", bounds(c), 0.0);
    double rise = 0.0;
    for (std::size_t i = 1; i < c.m1_estimates.size(); ++i) rise = std::max(rise, c.m1_estimates[i] - c.m1_estimates[i - 1]);
    rec.at_most("truncation estimates of M_1 non-increasing in T (largest rise)", rise, 1e-12);
    rec.note("M_1 by truncation at T = " + std::to_string(c.trunc_depth), c.maximal[0],
             c.converged ? "converged" : "not converged to 1e-12 by T = 2^16");

    if (psi.integrable()) {
        const ChainSeqData cm = chain_from_measure(psi, t);
        identities(cm, gmin, gmax);
        rec.at_most("chain identity, maximal from the measure value of M_1 (rel)", gmax, 1e-10);
        rec.above("parameters inside (0, 1), measure (distance)", bounds(cm), 0.0);
        rec.above("maximal exceeds minimal at every index, M_{k+1} - g_k (min)", separation(cm), 1e-6);
        rec.note("M_1 from the measure", cm.maximal[0]);
    } else {
        rec.above("maximal exceeds minimal at every index, truncation (min)", separation(c), 1e-6);
        rec.note("measure value of M_1", 0.0, "skipped: (1-x^2)^(-1/2) dpsi not integrable");
    }
}

inline void suite_opuc(const Measure& psi, const VerifyOptions& o, Recorder& rec) {
    const int N = std::max(o.N, 6);
    const RecurrenceTable t = generate(psi, N);
    const auto K = khat_from_recurrence(t, N, o.seed);
    double kgap = 0.0;
    for (int m = 0; m <= N; ++m) {
        SelfInversivePoly ref = omega_to_selfinv(t.function(m));
        ref *= std::ldexp(1.0, m);
        double scale = 0.0, d = 0.0;
        for (std::size_t j = 0; j < ref.coeffs().size(); ++j) {
            scale = std::max(scale, std::abs(ref[j]));
            d = std::max(d, std::abs(ref[j] - K[static_cast<std::size_t>(m)][j]));
        }
        kgap = std::max(kgap, d / scale);
    }
    rec.at_most("K_m by recurrence = 2^m omega_to_selfinv(W_m) (rel)", kgap, 1e-10);

    double mom = 0.0;
    for (int m = 1; m <= 6; ++m)
        for (double r : khat_moment_residuals(K[static_cast<std::size_t>(m)], psi)) mom = std::max(mom, r);
    rec.at_most("int z^(s-m) K_m(z) (1-z) dmu = 0, m <= 6 (rel)", mom, 1e-9);
    {
        std::vector<cplx> c = K[4].coeffs();
        c[1] += 1e-3;
        double worst = 0.0;
        for (double r : khat_moment_residuals(SelfInversivePoly(c), psi)) worst = std::max(worst, r);
        rec.above("perturbed K_4 detected by the moment residuals (max)", worst, 1e-5);
    }

    if (!psi.integrable()) {
        rec.note("Verblunsky and Szego checks", 0.0, "skipped: (1-x^2)^(-1/2) dpsi not integrable");
        return;
    }
    const ChainSeqData chain = chain_from_measure(psi, t);
    const int S = std::min(5, N);
    cplx a0_prev;
    double a0_sep = 1.0;
    for (const double tt : {0.0, 0.3, 0.9}) {
        const VerblunskySeq v = verblunsky(chain, t.beta_hat, tt, N);
        double amax = 0.0, form = 0.0, tau = 0.0;
        for (int m = 1; m <= N; ++m) {
            const auto mm = static_cast<std::size_t>(m);
            const double b = t.beta(m);
            amax = std::max(amax, std::abs(v.a[mm - 1]));
            form = std::max(form, std::abs(std::abs(cplx(1.0 - 2.0 * v.frak_m[mm], -b)) / std::abs(cplx(1.0, -b)) - std::abs(v.a[mm - 1])));
            tau = std::max(tau, std::abs(std::abs(v.tau[mm]) - 1.0));
        }
        char tag[32];
        std::snprintf(tag, sizeof tag, "t = %.1f", tt);
        rec.above(std::string("1 - max |a_m|, ") + tag, 1.0 - amax, 0.0);
        rec.at_most(std::string("|a_{m-1}| = |1 - 2 m_m - i b_m| / |1 - i b_m|, ") + tag, form, 1e-12);
        rec.at_most(std::string("|tau_m| = 1, ") + tag, tau, 1e-13);
        if (tt > 0.0) a0_sep = std::min(a0_sep, std::abs(v.a[0] - a0_prev));
        a0_prev = v.a[0];

        const SzegoReport z = szego_verify(v, psi, t, S, o.seed);
        rec.at_most(std::string("-conj(S_m(0)) = a_{m-1}, ") + tag, z.verblunsky_defect, 1e-14);
        rec.at_most(std::string("Szego orthogonality N = ") + std::to_string(S) + ", " + tag + " (rel)", z.orthogonality, 1e-8);
        rec.at_most(std::string("CD kernel K_m(z,1) / K_m(z) constant, ") + tag + " (rel spread)", z.cd_ratio_spread, 1e-7);
    }
    rec.above("a_0 changes with t (min |a_0(t') - a_0(t)|)", a0_sep, 0.0);
}

inline void suite_bridge(const Measure& psi, const VerifyOptions& o, Recorder& rec) {
    std::mt19937_64 rng(o.seed);
    double rt = 0.0, mod = 0.0, lead = 0.0;
    for (int i = 0; i < 100; ++i) {
        const OmegaFunction f = random_omega(i % 21, rng);
        const SelfInversivePoly q = omega_to_selfinv(f);
        const OmegaFunction g = selfinv_to_omega(q);
        double d = 0.0;
        for (std::size_t k = 0; k < f.b0().size(); ++k) d = std::max(d, std::abs(f.b0()[k] - g.b0()[k]));
        for (std::size_t k = 0; k < f.b1().size(); ++k) d = std::max(d, std::abs(f.b1()[k] - g.b1()[k]));
        rt = std::max(rt, d / f.coeff_scale());
        for (int j = 0; j < 100; ++j) {
            const ThetaPoint p = ThetaPoint::from_theta((j + 0.5) * 2.0 * std::numbers::pi / 100.0);
            const double fv = f.eval(p), sc = f.eval_scale(p.x, p.s);
            mod = std::max(mod, std::abs(std::norm(q(std::polar(1.0, p.theta))) - fv * fv) / std::max(1.0, sc * sc));
        }
        const int m = f.degree_bound();
        const cplx k0 = std::ldexp(1.0, -m) * cplx(f.lead0(), f.lead1());
        lead = std::max(lead, std::abs(q[0] - k0) / std::abs(k0));
    }
    rec.at_most("roundtrip Omega -> self-inversive -> Omega, degree <= 20 (rel)", rt, 1e-12);
    rec.at_most("|Q(e^{i theta})|^2 = f(x)^2 (rel)", mod, 1e-10);
    rec.at_most("k_0 = 2^-m (a0 + i a1) (rel)", lead, 1e-12);

    for (const ParityCase pc : {ParityCase::even, ParityCase::odd}) {
        double worst = 0.0;
        bool degrees = true;
        for (int m = 1; m <= 3; ++m) {
            const int n = pc == ParityCase::even ? 2 * m : 2 * m + 1;
            const int d = pc == ParityCase::even ? 4 * m - 1 : 4 * m;
            for (int i = 0; i < 100; ++i) {
                const OmegaFunction w = random_omega(n, rng);
                const OmegaFunction e = random_omega(d, rng);
                const DivisionResult r = divide(e, w, pc);
                degrees = degrees && r.f.degree_bound() == 2 * m - 1 && r.g.degree_bound() == (pc == ParityCase::even ? 2 * m - 1 : 2 * m);
                double res = 0.0, sc = 0.0;
                for (int j = 0; j < 200; ++j) {
                    const ThetaPoint p = ThetaPoint::from_theta((j + 0.5) * 2.0 * std::numbers::pi / 200.0);
                    res = std::max(res, std::abs(e.eval(p) - r.f.eval(p) * w.eval(p) - r.g.eval(p)));
                    sc = std::max(sc, e.eval_scale(p.x, p.s));
                }
                worst = std::max(worst, res / sc);
            }
        }
        const std::string tag = pc == ParityCase::even ? "even" : "odd";
        rec.at_most("division residual e - f w - g, " + tag + " case, m = 1..3 (rel)", worst, 1e-10);
        rec.above("division degree bounds, " + tag + " case (1 = as stated)", degrees ? 1.0 : 0.0, 0.5);
    }

    const RecurrenceTable t = generate(psi, 2);
    const OmegaFunction e = omega_product(t.function(1), t.function(2));
    const DivisionResult r = divide(e, t.function(2), ParityCase::even);
    double gap = 0.0;
    for (int j = 0; j < 200; ++j) {
        const ThetaPoint p = ThetaPoint::from_theta((j + 0.5) * 2.0 * std::numbers::pi / 200.0);
        gap = std::max({gap, std::abs(r.f.eval(p) - t.function(1).eval(p)), std::abs(r.g.eval(p))});
    }
    rec.at_most("W_1 W_2 divided by W_2 gives (W_1, 0)", gap, 1e-10);
}

inline void suite_zeros(const Measure& psi, const VerifyOptions& o, Recorder& rec) {
    const int N = o.N;
    const RecurrenceTable t = generate(psi, N);
    std::vector<ZeroSet> z;
    double res = 0.0, inside = 1.0;
    bool counts = true, monotone = true;
    for (int m = 1; m <= N; ++m) {
        z.push_back(find_zeros(t, m));
        const ZeroSet& s = z.back();
        counts = counts && static_cast<int>(s.x.size()) == m;
        for (std::size_t k = 0; k < s.x.size(); ++k) {
            res = std::max(res, s.residual[k] / s.scale[k]);
            inside = std::min({inside, 1.0 - s.x[k], s.x[k] + 1.0});
            if (k > 0) monotone = monotone && s.x[k - 1] < s.x[k];
        }
    }
    rec.above("exactly m zeros for m = 1.." + std::to_string(N) + " (1 = yes)", counts ? 1.0 : 0.0, 0.5);
    rec.above("zeros strictly increasing (1 = yes)", monotone ? 1.0 : 0.0, 0.5);
    rec.above("zeros strictly inside (-1, 1) (distance)", inside, 0.0);
    rec.at_most("residual |W_m(x_k)| / local scale", res, 1e-12);
    bool inter = true;
    for (std::size_t i = 0; i + 1 < z.size(); ++i) inter = inter && check_interlacing(z[i], z[i + 1]);
    rec.above("interlacing of consecutive orders (1 = yes)", inter ? 1.0 : 0.0, 0.5);

    std::mt19937_64 rng(o.seed);
    int excess = 0;
    for (int i = 0; i < 40; ++i) {
        const OmegaFunction f = random_omega(1 + i % 12, rng);
        excess = std::max(excess, count_sign_changes(f) - f.degree_bound());
    }
    rec.at_most("sign changes of random Omega_m functions minus m (max)", excess, 0.0);
    if (psi.kind() == Measure::Kind::one_minus_x && N >= 4) {
        double best = 1.0;
        for (double x : z[3].x) best = std::min(best, std::abs(x + 0.0055075));
        rec.at_most("W_4 zero near -0.0055075, (1-x) dx", best, 1e-5);
    }
}

} // namespace detail

/// Runs one suite; throws precondition_error for an unknown name.
inline SuiteReport run_suite(const std::string& name, const Measure& psi, const VerifyOptions& o = {}) {
    require(o.N >= 1 && o.N <= 40, "verify: N must be in 1..40");
    SuiteReport r;
    r.suite = name;
    r.measure = psi.describe();
    r.N = o.N;
    r.seed = o.seed;
    detail::Recorder rec(r, o);
    if (name == "orthogonality") detail::suite_orthogonality(psi, o, rec);
    else if (name == "quadrature") detail::suite_quadrature(psi, o, rec);
    else if (name == "chain") detail::suite_chain(psi, o, rec);
    else if (name == "opuc") detail::suite_opuc(psi, o, rec);
    else if (name == "bridge") detail::suite_bridge(psi, o, rec);
    else if (name == "zeros") detail::suite_zeros(psi, o, rec);
    else throw precondition_error("unknown verify suite \"" + name + "\"");
    return r;
}

} // namespace wortho
