#pragma once

#include <wortho/error.hpp>
#include <wortho/measure.hpp>
#include <wortho/omega.hpp>
#include <wortho/recurrence.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <string>
#include <vector>

namespace wortho {

struct ZeroSet {
    int m = 0;
    std::vector<double> x;        ///< ascending, in (-1, 1)
    std::vector<double> theta;    ///< 2 acos(x), descending
    std::vector<double> residual; ///< |W_m(x_k)|
    std::vector<double> scale;    ///< magnitude of the terms summed in W_m(x_k)
};

namespace detail {

struct Bracketed {
    double theta;
    double value;
};

// Sign change of g on [a, b] (ga, gb of opposite sign) refined to |dtheta| <= 1e-14 by
// secant steps that fall back to bisection whenever they leave the middle of the bracket.
template <class G>
Bracketed refine_root(G& g, double a, double b, double ga, double gb) {
    for (int iter = 0; iter < 200 && b - a > 1e-14; ++iter) {
        double c = a - ga * (b - a) / (gb - ga);
        const double w = b - a;
        if (!(c > a + 0.05 * w && c < b - 0.05 * w) || iter % 3 == 2) c = 0.5 * (a + b);
        const double gc = g(c);
        if (gc == 0.0) return {c, 0.0};
        if ((gc < 0.0) == (ga < 0.0)) {
            a = c;
            ga = gc;
        } else {
            b = c;
            gb = gc;
        }
    }
    return std::abs(ga) <= std::abs(gb) ? Bracketed{a, ga} : Bracketed{b, gb};
}

} // namespace detail

/// Zeros of a function of theta in (0, 2pi) known to have exactly m simple zeros there.
/// `g(p)` returns (value, scale) at a ThetaPoint.
template <class G>
ZeroSet find_zeros_theta(G&& g, int m) {
    require(m >= 0, "find_zeros: order must be >= 0");
    ZeroSet z;
    z.m = m;
    if (m == 0) return z;
    const double two_pi = 2.0 * std::numbers::pi;
    auto value = [&](double th) { return g(ThetaPoint::from_theta(th)).first; };

    int grid = 20 * m + 40;
    int found = 0;
    std::vector<std::pair<double, double>> brackets;
    std::vector<std::pair<double, double>> values;
    for (int attempt = 0; attempt <= 6; ++attempt, grid *= 2) {
        brackets.clear();
        values.clear();
        double prev_t = two_pi / (grid + 1), prev_v = value(prev_t);
        for (int i = 2; i <= grid; ++i) {
            const double t = two_pi * i / (grid + 1);
            const double v = value(t);
            if ((v < 0.0) != (prev_v < 0.0)) {
                brackets.push_back({prev_t, t});
                values.push_back({prev_v, v});
            }
            prev_t = t;
            prev_v = v;
        }
        found = static_cast<int>(brackets.size());
        if (found == m) break;
    }
    if (found != m) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "find_zeros: found %d sign changes, expected %d", found, m);
        throw numeric_error(buf);
    }
    // brackets ascend in theta, so x descends; fill from the back
    z.x.resize(static_cast<std::size_t>(m));
    z.theta.resize(static_cast<std::size_t>(m));
    z.residual.resize(static_cast<std::size_t>(m));
    z.scale.resize(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k) {
        const auto [a, b] = brackets[static_cast<std::size_t>(k)];
        const auto [ga, gb] = values[static_cast<std::size_t>(k)];
        const auto root = detail::refine_root(value, a, b, ga, gb);
        const ThetaPoint p = ThetaPoint::from_theta(root.theta);
        auto [v, s] = g(p);
        // include the change of g under a relative perturbation of theta, which bounds the attainable residual
        const double h = 1e-6 * std::min(root.theta, two_pi - root.theta);
        const double slope = std::abs(value(root.theta + h) - value(root.theta - h)) / (2.0 * h);
        s = std::max(s, slope * root.theta);
        const auto i = static_cast<std::size_t>(m - 1 - k);
        z.x[i] = p.x;
        z.theta[i] = root.theta;
        z.residual[i] = std::abs(v);
        z.scale[i] = s;
    }
    for (int k = 0; k + 1 < m; ++k) {
        if (!(z.x[static_cast<std::size_t>(k)] < z.x[static_cast<std::size_t>(k) + 1]))
            throw numeric_error("find_zeros: zeros are not distinct");
    }
    return z;
}

/// The m zeros of W_m of a generated family.
inline ZeroSet find_zeros(const RecurrenceTable& t, int m) {
    require(m >= 0 && m <= t.N, "find_zeros: order outside the table");
    std::vector<double> v(static_cast<std::size_t>(m) + 1), a(static_cast<std::size_t>(m) + 1);
    return find_zeros_theta(
        [&](const ThetaPoint& p) {
            t.eval_scaled(p.x, p.s, m, v.data());
            // magnitude recurrence for the local scale
            a[0] = 1.0;
            if (m >= 1) a[1] = 2.0 * (std::abs(p.x) + std::abs(t.beta(1)) * p.s);
            for (int k = 1; k < m; ++k)
                a[static_cast<std::size_t>(k) + 1] = 2.0 * (std::abs(p.x) + std::abs(t.beta(k + 1)) * p.s) * a[static_cast<std::size_t>(k)] +
                                                     4.0 * t.alpha(k + 1) * a[static_cast<std::size_t>(k) - 1];
            return std::pair{std::ldexp(v.back(), -m), std::ldexp(a.back(), -m)};
        },
        m);
}

/// The zeros of an Omega function of exact degree m that has m zeros in (-1, 1).
inline ZeroSet find_zeros(const OmegaFunction& f) {
    return find_zeros_theta([&](const ThetaPoint& p) { return std::pair{f.eval(p), f.eval_scale(p.x, p.s)}; },
                            f.degree_bound());
}

/// Sign changes of f on a uniform grid of `points` interior points of (-1, 1).
inline int count_sign_changes(const OmegaFunction& f, int points = 10000) {
    int changes = 0;
    double prev = 0.0;
    for (int i = 1; i <= points; ++i) {
        const double v = f(-1.0 + 2.0 * i / (points + 1.0));
        if (v == 0.0) continue;
        if (prev != 0.0 && (v < 0.0) != (prev < 0.0)) ++changes;
        prev = v;
    }
    return changes;
}

/// True iff b has one more zero than a and every zero of a lies strictly between
/// consecutive zeros of b.
inline bool check_interlacing(const ZeroSet& a, const ZeroSet& b) {
    if (b.x.size() != a.x.size() + 1) return false;
    for (std::size_t i = 0; i < a.x.size(); ++i)
        if (!(b.x[i] < a.x[i] && a.x[i] < b.x[i + 1])) return false;
    return true;
}

inline void write_csv(std::ostream& os, const ZeroSet& z) {
    os << "k,x,theta,residual\n";
    char buf[160];
    for (std::size_t k = 0; k < z.x.size(); ++k) {
        std::snprintf(buf, sizeof buf, "%zu,%.15g,%.15g,%.15g\n", k + 1, z.x[k], z.theta[k], z.residual[k]);
        os << buf;
    }
}

} // namespace wortho
