#pragma once

// The unit-circle side. With z = exp(i theta) and x = cos(theta/2):
//   exp(-i m theta/2) K_m(z) = 2^m W_m(x),
//   dmu(z) = dpsi(x) / sin(theta/2)   (the positively oriented transport),
// chain sequences built from a_{m+1}, and Verblunsky coefficients of the probability measures
// with a jump t at z = 1.

#include <wortho/error.hpp>
#include <wortho/measure.hpp>
#include <wortho/recurrence.hpp>
#include <wortho/selfinv.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <vector>

namespace wortho {

/// K_0..K_N from K_{m+1} = [(1 + i b_{m+1}) z + (1 - i b_{m+1})] K_m - 4 a_{m+1} z K_{m-1}, checked
/// against 2^m W_m at 50 random angles.
inline std::vector<SelfInversivePoly> khat_from_recurrence(const RecurrenceTable& t, int N, std::uint64_t seed = 0x5EED) {
    require(N >= 0 && N <= t.N, "khat_from_recurrence: order outside the table");
    std::vector<SelfInversivePoly> K;
    K.reserve(static_cast<std::size_t>(N) + 1);
    K.emplace_back(std::vector<cplx>{1.0});
    for (int m = 0; m < N; ++m) {
        const double b = t.beta(m + 1);
        const SelfInversivePoly lin(std::vector<cplx>{cplx(1.0, -b), cplx(1.0, b)});
        std::vector<cplx> c = multiply(lin, K.back()).coeffs();
        if (m >= 1) {
            const double a4 = 4.0 * t.alpha(m + 1);
            const auto& prev = K[static_cast<std::size_t>(m) - 1].coeffs();
            for (std::size_t j = 0; j < prev.size(); ++j) c[j + 1] -= a4 * prev[j];
        }
        K.emplace_back(std::move(c));
    }

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    std::vector<double> v(static_cast<std::size_t>(N) + 1);
    for (int i = 0; i < 50; ++i) {
        const ThetaPoint p = ThetaPoint::from_theta(angle(rng));
        t.eval_scaled(p.x, p.s, N, v.data());
        for (int m = 0; m <= N; ++m) {
            const cplx lhs = std::polar(1.0, -0.5 * m * p.theta) * K[static_cast<std::size_t>(m)](std::polar(1.0, p.theta));
            double scale = 0.0;
            for (const cplx& c : K[static_cast<std::size_t>(m)].coeffs()) scale += std::abs(c);
            if (std::abs(lhs - v[static_cast<std::size_t>(m)]) > 1e-10 * std::max(1.0, scale)) {
                char buf[128];
                std::snprintf(buf, sizeof buf, "khat_from_recurrence: K_%d disagrees with 2^m W_m at theta = %.6g", m, p.theta);
                throw numeric_error(buf);
            }
        }
    }
    return K;
}

/// |int z^(s-m) K(z) (1 - z) dmu(z)| for s = 0..m-1, each divided by the integral of the
/// modulus of the integrand. Uses (1 - z)/sin(theta/2) = -2i exp(i theta/2), so the integral
/// is taken against dpsi and needs no integrability of (1-x^2)^(-1/2).
inline std::vector<double> khat_moment_residuals(const SelfInversivePoly& K, const Measure& psi) {
    const int m = K.degree();
    std::vector<double> out;
    for (int s = 0; s < m; ++s) {
        auto g = [&](const ThetaPoint& p) {
            const cplx z = std::polar(1.0, p.theta);
            return std::polar(1.0, (s - m) * p.theta + 0.5 * p.theta) * K(z) * cplx(0.0, -2.0);
        };
        const cplx v = integrate_theta(psi, g, Weighting::psi).value;
        const double scale = integrate_theta(psi, [&](const ThetaPoint& p) { return std::abs(g(p)); }, Weighting::psi).value;
        out.push_back(std::abs(v) / scale);
    }
    return out;
}

/// Thrown when a sequence fails to be a positive chain sequence; `index()` is the first failure.
class chain_error : public numeric_error {
public:
    chain_error(const std::string& what, int index) : numeric_error(what + " at index " + std::to_string(index)), index_(index) {}
    int index() const noexcept { return index_; }

private:
    int index_;
};

/// Parameters of the chain sequence c_k = a_{k+1} (k >= 1), c_k = (1 - g_{k-1}) g_k.
/// maximal[j] = M_{j+1} is aligned with minimal[j] = g_j; so maximal[0] = M_1 >= g_0 = 0.
struct ChainSeqData {
    enum class Source { truncation, measure };

    std::vector<double> alpha;   ///< a_2..a_{K+1} stored at 1..K (entry 0 unused)
    std::vector<double> minimal; ///< g_0 = 0, g_1..g_K
    std::vector<double> maximal; ///< M_1..M_{K+1}
    Source source = Source::truncation;
    int trunc_depth = 0;          ///< final truncation depth T
    bool converged = false;       ///< successive M_1 estimates met the tolerance
    bool tail_extended = false;   ///< sequence extended beyond K by min(last value, 1/4)
    std::vector<double> m1_estimates; ///< M_1 at each truncation depth tried

    int size() const noexcept { return static_cast<int>(alpha.size()) - 1; }
    double M(int j) const { return maximal.at(static_cast<std::size_t>(j) - 1); }
};

namespace detail {

inline void minimal_parameters(ChainSeqData& c) {
    const int K = c.size();
    c.minimal.assign(static_cast<std::size_t>(K) + 1, 0.0);
    for (int k = 1; k <= K; ++k) {
        const double g = c.alpha[static_cast<std::size_t>(k)] / (1.0 - c.minimal[static_cast<std::size_t>(k) - 1]);
        if (!(g > 0.0 && g < 1.0)) throw chain_error("not a positive chain sequence (minimal parameter outside (0,1))", k);
        c.minimal[static_cast<std::size_t>(k)] = g;
    }
}

} // namespace detail

/// Minimal parameters by forward recursion and maximal parameters by backward truncation:
/// h_T = 1, h_{k-1} = 1 - c_k / h_k, with T = K + 20 doubled until successive h_0 differ by
/// less than tol or T exceeds 2^16. Beyond K the sequence repeats its last value.
inline ChainSeqData chain_parameters(const std::vector<double>& alpha_from2, double tol = 1e-12) {
    const int K = static_cast<int>(alpha_from2.size());
    require(K >= 4, "chain_parameters: need at least 4 entries");
    for (double a : alpha_from2) require(a > 0.0 && std::isfinite(a), "chain_parameters: entries must be positive");
    ChainSeqData c;
    c.alpha.assign(1, 0.0);
    c.alpha.insert(c.alpha.end(), alpha_from2.begin(), alpha_from2.end());
    detail::minimal_parameters(c);

    const double tail = std::min(c.alpha.back(), 0.25);
    auto at = [&](int k) { return k <= K ? c.alpha[static_cast<std::size_t>(k)] : tail; };
    std::vector<double> h;
    double prev_m1 = 0.0;
    for (int T = K + 20;; T *= 2) {
        h.assign(static_cast<std::size_t>(T) + 1, 0.0);
        h[static_cast<std::size_t>(T)] = 1.0;
        for (int k = T; k >= 1; --k) {
            const double v = 1.0 - at(k) / h[static_cast<std::size_t>(k)];
            if (!(v > 0.0)) throw chain_error("not a positive chain sequence (backward parameter <= 0)", k - 1);
            h[static_cast<std::size_t>(k) - 1] = v;
        }
        c.trunc_depth = T;
        c.tail_extended = T > K;
        c.m1_estimates.push_back(h[0]);
        if (c.m1_estimates.size() >= 2 && std::abs(h[0] - prev_m1) < tol) {
            c.converged = true;
            break;
        }
        prev_m1 = h[0];
        if (2 * T > (1 << 16)) break;
    }
    c.maximal.assign(h.begin(), h.begin() + K + 1);
    return c;
}

/// M_1 = r_0 (1 + b_1^2) / int (1 - x^2)^(-1/2) dpsi, from which M_{k+1} = a_{k+1}/(1 - M_k).
inline double maximal_m1_from_measure(const Measure& psi, const RecurrenceTable& t) {
    require(psi.integrable(), "maximal_m1_from_measure: needs integrable (1 - x^2)^(-1/2) dpsi");
    const double circle_mass = integrate_theta(psi, [](const ThetaPoint&) { return 1.0; }, Weighting::circle).value;
    return t.rho(0) * (1.0 + t.beta(1) * t.beta(1)) / circle_mass;
}

/// Chain data of a generated table whose maximal parameters start from the measure value of M_1.
inline ChainSeqData chain_from_measure(const Measure& psi, const RecurrenceTable& t) {
    ChainSeqData c;
    c.alpha.assign(1, 0.0);
    for (int m = 2; m <= t.N + 1; ++m) c.alpha.push_back(t.alpha(m));
    detail::minimal_parameters(c);
    c.source = ChainSeqData::Source::measure;
    c.converged = true;
    const int K = c.size();
    c.maximal.assign(static_cast<std::size_t>(K) + 1, 0.0);
    c.maximal[0] = maximal_m1_from_measure(psi, t);
    c.m1_estimates.push_back(c.maximal[0]);
    for (int k = 1; k <= K; ++k) {
        const double v = c.alpha[static_cast<std::size_t>(k)] / (1.0 - c.maximal[static_cast<std::size_t>(k) - 1]);
        if (!(v > 0.0 && v < 1.0)) throw chain_error("maximal parameter left (0,1)", k);
        c.maximal[static_cast<std::size_t>(k)] = v;
    }
    return c;
}

struct VerblunskySeq {
    double t = 0.0;
    std::vector<double> frak_m; ///< m_0 = 0, m_1..m_N
    std::vector<cplx> tau;      ///< tau_0 = 1, tau_1..tau_N
    std::vector<cplx> a;        ///< a_0..a_{N-1}
};

/// a_{m-1} = (1 - 2 m_m - i b_m) / ((1 - i b_m) tau_{m-1}) for m = 1..N with
/// m_1 = (1 - t) M_1, m_{k+1} = a_{k+1} / (1 - m_k), tau_m = (1 - i b_m)/(1 + i b_m) tau_{m-1}.
inline VerblunskySeq verblunsky(const ChainSeqData& chain, const std::vector<double>& beta_hat, double t, int N) {
    require(t >= 0.0 && t < 1.0, "verblunsky: t must lie in [0, 1)");
    require(N >= 1 && N <= chain.size() + 1, "verblunsky: order outside the chain data");
    require(beta_hat.size() > static_cast<std::size_t>(N), "verblunsky: beta_hat too short");
    VerblunskySeq v;
    v.t = t;
    v.frak_m.assign(static_cast<std::size_t>(N) + 1, 0.0);
    v.tau.assign(static_cast<std::size_t>(N) + 1, 1.0);
    v.a.assign(static_cast<std::size_t>(N), 0.0);
    v.frak_m[1] = (1.0 - t) * chain.M(1);
    for (int k = 1; k < N; ++k) {
        const double prev = v.frak_m[static_cast<std::size_t>(k)];
        const double next = chain.alpha[static_cast<std::size_t>(k)] / (1.0 - prev);
        if (!(next < 1.0)) throw numeric_error("verblunsky: minimal parameter reached 1 (precision failure)");
        v.frak_m[static_cast<std::size_t>(k) + 1] = next;
    }
    for (int m = 1; m <= N; ++m) {
        const double b = beta_hat[static_cast<std::size_t>(m)];
        const cplx num(1.0 - 2.0 * v.frak_m[static_cast<std::size_t>(m)], -b);
        v.a[static_cast<std::size_t>(m) - 1] = num / (cplx(1.0, -b) * v.tau[static_cast<std::size_t>(m) - 1]);
        v.tau[static_cast<std::size_t>(m)] = cplx(1.0, -b) / cplx(1.0, b) * v.tau[static_cast<std::size_t>(m) - 1];
    }
    return v;
}

/// Monic S_0..S_N from S_{m+1} = z S_m - conj(a_m) S_m^*.
inline std::vector<std::vector<cplx>> szego_polynomials(const std::vector<cplx>& a, int N) {
    require(static_cast<int>(a.size()) >= N, "szego_polynomials: need a_0..a_{N-1}");
    std::vector<std::vector<cplx>> S{{1.0}};
    for (int m = 0; m < N; ++m) {
        const auto& s = S.back();
        std::vector<cplx> next(s.size() + 1, 0.0);
        for (std::size_t j = 0; j < s.size(); ++j) next[j + 1] += s[j];
        const std::size_t deg = s.size() - 1;
        // S^*(z) = z^m conj(S(1/conj z)): coefficient j is conj(s_{m-j})
        for (std::size_t j = 0; j <= deg; ++j) next[j] -= std::conj(a[static_cast<std::size_t>(m)]) * std::conj(s[deg - j]);
        S.push_back(std::move(next));
    }
    return S;
}

struct SzegoReport {
    double verblunsky_defect = 0.0;   ///< max |(-conj S_m(0)) - a_{m-1}|
    double orthogonality = 0.0;       ///< max |<S_n, S_m>| / sqrt(<S_n,S_n><S_m,S_m>), n < m <= N
    std::vector<std::vector<double>> residuals; ///< the same quantity per (m, n)
    double cd_ratio_spread = 0.0;     ///< max relative spread of K_m(z,1)/K^_m(z) over sample points
};

/// Checks the Verblunsky sequence against the measure mu^(t) = c(t) dpsi/sin(theta/2) + t delta_1
/// with c(t) = (1 - t) / int dpsi/sqrt(1-x^2).
inline SzegoReport szego_verify(const VerblunskySeq& v, const Measure& psi, const RecurrenceTable& table, int N,
                                std::uint64_t seed = 0x5EED) {
    require(psi.integrable(), "szego_verify: the measure must have integrable (1 - x^2)^(-1/2) dpsi");
    require(N >= 1 && N <= 8 && N <= static_cast<int>(v.a.size()), "szego_verify: N must be in 1..8 and covered by a");
    require(N <= table.N, "szego_verify: table too short");
    SzegoReport r;
    const auto S = szego_polynomials(v.a, N);
    for (int m = 1; m <= N; ++m)
        r.verblunsky_defect = std::max(r.verblunsky_defect, std::abs(-std::conj(S[static_cast<std::size_t>(m)][0]) - v.a[static_cast<std::size_t>(m) - 1]));

    const double circle_mass = integrate_theta(psi, [](const ThetaPoint&) { return 1.0; }, Weighting::circle).value;
    const double c = (1.0 - v.t) / circle_mass;
    auto poly = [](const std::vector<cplx>& p, cplx z) {
        cplx s = 0.0;
        for (auto it = p.rbegin(); it != p.rend(); ++it) s = s * z + *it;
        return s;
    };
    auto inner = [&](int n, int m) {
        const auto& pn = S[static_cast<std::size_t>(n)];
        const auto& pm = S[static_cast<std::size_t>(m)];
        const cplx cont = integrate_theta(
                              psi,
                              [&](const ThetaPoint& p) {
                                  const cplx z = std::polar(1.0, p.theta);
                                  return poly(pn, z) * std::conj(poly(pm, z));
                              },
                              Weighting::circle)
                              .value;
        return c * cont + v.t * poly(pn, 1.0) * std::conj(poly(pm, 1.0));
    };
    std::vector<double> norms(static_cast<std::size_t>(N) + 1);
    for (int m = 0; m <= N; ++m) norms[static_cast<std::size_t>(m)] = inner(m, m).real();
    r.residuals.assign(static_cast<std::size_t>(N) + 1, std::vector<double>(static_cast<std::size_t>(N) + 1, 0.0));
    for (int m = 1; m <= N; ++m) {
        for (int n = 0; n < m; ++n) {
            const double res = std::abs(inner(n, m)) / std::sqrt(norms[static_cast<std::size_t>(n)] * norms[static_cast<std::size_t>(m)]);
            r.residuals[static_cast<std::size_t>(m)][static_cast<std::size_t>(n)] = res;
            r.orthogonality = std::max(r.orthogonality, res);
        }
    }

    // CD kernel with orthonormal s_j = S_j / ||S_j||, ||S_j||^2 = prod_{k<j} (1 - |a_k|^2)
    const auto K = khat_from_recurrence(table, N, seed);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    for (int m = 1; m <= N; ++m) {
        std::vector<double> nrm2(static_cast<std::size_t>(m) + 1, 1.0);
        for (int j = 1; j <= m; ++j)
            nrm2[static_cast<std::size_t>(j)] = nrm2[static_cast<std::size_t>(j) - 1] * (1.0 - std::norm(v.a[static_cast<std::size_t>(j) - 1]));
        cplx first = 0.0;
        double spread = 0.0;
        for (int i = 0; i < 20; ++i) {
            const cplx z = std::polar(1.0, angle(rng));
            cplx kz = 0.0;
            for (int j = 0; j <= m; ++j) {
                const auto& sj = S[static_cast<std::size_t>(j)];
                kz += std::conj(poly(sj, 1.0)) * poly(sj, z) / nrm2[static_cast<std::size_t>(j)];
            }
            const cplx ratio = kz / K[static_cast<std::size_t>(m)](z);
            if (i == 0) first = ratio;
            else spread = std::max(spread, std::abs(ratio - first) / std::abs(first));
        }
        r.cd_ratio_spread = std::max(r.cd_ratio_spread, spread);
    }
    return r;
}

} // namespace wortho
