#pragma once

// Positive measures dpsi on [-1, 1] and the integration engine.
//
// Every integral is taken in the angle theta in [0, 2pi] with x = cos(theta/2), so
// sqrt(1 - x^2) = sin(theta/2) >= 0 and |dx| = sin(theta/2)/2 dtheta. The two halves
// theta in [0, pi] and theta in [pi, 2pi] are parameterized separately by their distance
// u in [0, pi] from the nearest endpoint, which keeps nodes next to x = +-1 resolved.

#include <wortho/error.hpp>
#include <wortho/expr.hpp>
#include <wortho/gauss_legendre.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <concepts>
#include <cstdio>
#include <limits>
#include <memory>
#include <numbers>
#include <string>
#include <type_traits>
#include <vector>

namespace wortho {

struct QuadSettings {
    int panels = 32;             ///< initial panels over [0, 2pi] (split evenly between the halves)
    double tolerance = 1e-12;    ///< target absolute error
    int max_refinements = 200;   ///< maximal bisection depth of any panel
};

/// Sample point of the theta parameterization with accurately formed endpoint quantities.
struct ThetaPoint {
    double theta;       ///< in [0, 2pi]
    double x;           ///< cos(theta/2)
    double s;           ///< sin(theta/2) = sqrt(1 - x^2)
    double one_minus_x; ///< 1 - x without cancellation
    double one_plus_x;  ///< 1 + x without cancellation

    static ThetaPoint from_distance(double u, bool upper_half) {
        const double c = std::cos(0.5 * u);
        const double q = std::sin(0.25 * u);
        const double near = 2.0 * q * q;
        if (!upper_half) return {u, c, std::sin(0.5 * u), near, 1.0 + c};
        return {2.0 * std::numbers::pi - u, -c, std::sin(0.5 * u), 1.0 + c, near};
    }

    static ThetaPoint from_theta(double theta) {
        return theta <= std::numbers::pi ? from_distance(theta, false)
                                         : from_distance(2.0 * std::numbers::pi - theta, true);
    }

    static ThetaPoint from_x(double x) { return from_theta(2.0 * std::acos(std::clamp(x, -1.0, 1.0))); }
};

/// Which measure an integral is taken against.
enum class Weighting {
    psi,        ///< dpsi(x)
    halfcircle, ///< sqrt(1 - x^2) dpsi(x)
    circle,     ///< dpsi(x) / sqrt(1 - x^2): the transported measure dmu on the unit circle
};

class Measure {
public:
    enum class Kind { one_minus_x, gegenbauer_eta, lebesgue, chebyshev1, expression };

    /// (1 - x) dx.
    static Measure one_minus_x() { return Measure(Kind::one_minus_x); }

    /// dx.
    static Measure lebesgue() { return Measure(Kind::lebesgue); }

    /// (1 - x^2)^(-1/2) dx.
    static Measure chebyshev1() { return Measure(Kind::chebyshev1); }

    /// exp(-2 eta acos(x)) (1 - x^2)^(lambda - 1) dx, finite for lambda > 0.
    static Measure gegenbauer_eta(double lambda, double eta) {
        require(std::isfinite(lambda) && lambda > 0.0, "gegenbauer_eta: lambda must be > 0");
        require(std::isfinite(eta), "gegenbauer_eta: eta must be finite");
        Measure m(Kind::gegenbauer_eta);
        m.lambda_ = lambda;
        m.eta_ = eta;
        m.integrable_ = lambda > 0.5;
        return m;
    }

    /// w(x) dx for a parsed weight. `integrable` declares that the integral of
    /// (1 - x^2)^(-1/2) dpsi exists; it cannot be inferred for user weights.
    static Measure expression(std::string_view weight, bool integrable = false, QuadSettings quad = {}) {
        Measure m(Kind::expression);
        m.expr_ = std::make_shared<const WeightExpr>(parse_weight(weight));
        m.integrable_ = integrable;
        m.quad_ = quad;
        m.check_expression();
        return m;
    }

    Measure with_quad(QuadSettings q) const {
        require(q.panels >= 2 && q.tolerance > 0.0 && q.max_refinements >= 1, "invalid quadrature settings");
        Measure m = *this;
        m.quad_ = q;
        return m;
    }

    Kind kind() const noexcept { return kind_; }
    const QuadSettings& quad() const noexcept { return quad_; }
    double lambda() const noexcept { return lambda_; }
    double eta() const noexcept { return eta_; }
    const WeightExpr* weight_expr() const noexcept { return expr_.get(); }

    /// Whether the integral of (1 - x^2)^(-1/2) dpsi exists.
    bool integrable() const noexcept { return integrable_; }

    std::string name() const {
        switch (kind_) {
        case Kind::one_minus_x: return "one_minus_x";
        case Kind::gegenbauer_eta: return "gegenbauer_eta";
        case Kind::lebesgue: return "lebesgue";
        case Kind::chebyshev1: return "chebyshev1";
        case Kind::expression: return "expression";
        }
        return "?";
    }

    std::string describe() const {
        char buf[128];
        switch (kind_) {
        case Kind::gegenbauer_eta:
            std::snprintf(buf, sizeof buf, "gegenbauer_eta(lambda=%.6g, eta=%.6g)", lambda_, eta_);
            return buf;
        case Kind::expression: return "expression(" + expr_->source() + ")";
        default: return name();
        }
    }

    /// Weight function w(x) of dpsi = w(x) dx on (-1, 1).
    double weight(double x) const { return weight_at(ThetaPoint::from_x(x)); }

    double weight_at(const ThetaPoint& p) const {
        switch (kind_) {
        case Kind::one_minus_x: return p.one_minus_x;
        case Kind::lebesgue: return 1.0;
        case Kind::chebyshev1: return 1.0 / p.s;
        case Kind::gegenbauer_eta: return std::exp(-eta_ * p.theta) * std::pow(p.s, 2.0 * lambda_ - 2.0);
        case Kind::expression: return (*expr_)(p.x);
        }
        return 0.0;
    }

    /// Density of the chosen weighting with respect to dtheta, at a theta sample point.
    double theta_density(const ThetaPoint& p, Weighting w) const {
        // power of sin(theta/2) carried by the weighting, on top of |dx/dtheta| = s/2
        const int k = w == Weighting::psi ? 1 : (w == Weighting::halfcircle ? 2 : 0);
        switch (kind_) {
        case Kind::one_minus_x: return 0.5 * p.one_minus_x * ipow(p.s, k);
        case Kind::lebesgue: return 0.5 * ipow(p.s, k);
        case Kind::chebyshev1: return 0.5 * ipow(p.s, k - 1);
        case Kind::gegenbauer_eta:
            return 0.5 * std::exp(-eta_ * p.theta) * std::pow(p.s, 2.0 * lambda_ - 2.0 + k);
        case Kind::expression: return 0.5 * (*expr_)(p.x) * ipow(p.s, k);
        }
        return 0.0;
    }

private:
    explicit Measure(Kind k) : kind_(k) {
        integrable_ = k == Kind::one_minus_x || k == Kind::lebesgue;
    }

    static double ipow(double s, int k) {
        switch (k) {
        case -1: return 1.0 / s;
        case 0: return 1.0;
        case 1: return s;
        default: return s * s;
        }
    }

    void check_expression() const;

    Kind kind_;
    double lambda_ = 1.0;
    double eta_ = 0.0;
    bool integrable_ = false;
    std::shared_ptr<const WeightExpr> expr_;
    QuadSettings quad_{};
};

template <class T>
struct IntegrationResult {
    T value{};
    double error = 0.0;
    long evaluations = 0;
};

namespace detail {

template <class F>
auto call_at(F& f, const ThetaPoint& p) {
    if constexpr (std::is_invocable_v<F&, const ThetaPoint&>) return f(p);
    else if constexpr (std::is_invocable_v<F&, double, double>) return f(p.x, p.s);
    else return f(p.x);
}

template <class F>
using integrand_value_t = std::decay_t<decltype(call_at(std::declval<F&>(), std::declval<const ThetaPoint&>()))>;

template <class T>
struct Panel {
    double a, b;       // in u
    bool upper;        // theta in [pi, 2pi]
    int depth;
    T left, right;     // 16-point values on the two halves
    double abs_value;
    double err;
    T value() const { return left + right; }
};

} // namespace detail

/// Adaptive composite 16-point Gauss-Legendre in theta of g(point) against the chosen weighting.
/// The panel with the largest error estimate (whole panel vs. its two halves) is bisected until
/// the summed estimate meets the tolerance or the roundoff floor of the integrand.
template <class G>
auto integrate_theta(const Measure& psi, G&& g, Weighting weighting)
    -> IntegrationResult<detail::integrand_value_t<G>> {
    using T = detail::integrand_value_t<G>;
    using Panel = detail::Panel<T>;
    const auto& gl = detail::gauss_legendre<16>();
    const QuadSettings& q = psi.quad();
    long evaluations = 0;

    auto rule = [&](double a, double b, bool upper, double& abs_sum) {
        const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
        T sum{};
        for (std::size_t i = 0; i < 16; ++i) {
            const ThetaPoint p = ThetaPoint::from_distance(mid + half * gl.nodes[i], upper);
            const T v = detail::call_at(g, p) * psi.theta_density(p, weighting);
            sum += gl.weights[i] * v;
            abs_sum += gl.weights[i] * half * std::abs(v);
        }
        evaluations += 16;
        return sum * half;
    };

    auto make = [&](double a, double b, bool upper, int depth, T coarse) {
        const double m = 0.5 * (a + b);
        double abs_sum = 0.0;
        const T l = rule(a, m, upper, abs_sum);
        const T r = rule(m, b, upper, abs_sum);
        return Panel{a, b, upper, depth, l, r, abs_sum, std::abs(l + r - coarse)};
    };

    auto by_error = [](const Panel& x, const Panel& y) { return x.err < y.err; };
    std::vector<Panel> heap;
    const int per_half = std::max(1, q.panels / 2);
    const double width = std::numbers::pi / per_half;
    for (int side = 0; side < 2; ++side) {
        for (int i = 0; i < per_half; ++i) {
            const double a = i * width, b = (i + 1) * width;
            double ignored = 0.0;
            heap.push_back(make(a, b, side == 1, 0, rule(a, b, side == 1, ignored)));
        }
    }
    std::make_heap(heap.begin(), heap.end(), by_error);

    std::vector<Panel> frozen;
    auto totals = [&](T& value, double& err, double& abs_total) {
        value = T{};
        err = 0.0;
        abs_total = 0.0;
        for (const auto* set : {&heap, &frozen}) {
            for (const Panel& p : *set) {
                value += p.value();
                err += p.err;
                abs_total += p.abs_value;
            }
        }
    };

    constexpr std::size_t max_panels = 400000;
    T value{};
    double err = 0.0, abs_total = 0.0;
    totals(value, err, abs_total);
    const double floor_factor = 64.0 * std::numeric_limits<double>::epsilon();
    while (err > std::max(q.tolerance, floor_factor * abs_total)) {
        if (heap.empty() || heap.size() + frozen.size() > max_panels) {
            throw integration_error("integration did not converge", std::real(value), err);
        }
        std::pop_heap(heap.begin(), heap.end(), by_error);
        Panel worst = heap.back();
        heap.pop_back();
        if (worst.depth >= q.max_refinements) {
            frozen.push_back(worst);
            continue;
        }
        const double m = 0.5 * (worst.a + worst.b);
        err -= worst.err;
        abs_total -= worst.abs_value;
        value -= worst.value();
        for (Panel child : {make(worst.a, m, worst.upper, worst.depth + 1, worst.left),
                            make(m, worst.b, worst.upper, worst.depth + 1, worst.right)}) {
            err += child.err;
            abs_total += child.abs_value;
            value += child.value();
            heap.push_back(child);
            std::push_heap(heap.begin(), heap.end(), by_error);
        }
        if (!std::isfinite(err) || !std::isfinite(abs_total)) {
            throw integration_error("integrand or weight is not finite", std::real(value), err);
        }
    }
    totals(value, err, abs_total);
    return {value, err, evaluations};
}

/// Integral of f against dpsi, or against sqrt(1 - x^2) dpsi when `with_halfcircle_weight`.
/// f may take (x), (x, sqrt(1 - x^2)) or a ThetaPoint.
template <class F>
double integrate(const Measure& psi, F&& f, bool with_halfcircle_weight = false) {
    return integrate_theta(psi, std::forward<F>(f), with_halfcircle_weight ? Weighting::halfcircle : Weighting::psi).value;
}

/// Total mass of dpsi.
inline double mass(const Measure& psi) {
    return integrate(psi, [](double) { return 1.0; });
}

inline void Measure::check_expression() const {
    // sampled nonnegativity at the engine's initial nodes
    const auto& gl = detail::gauss_legendre<16>();
    const int per_half = std::max(1, quad_.panels / 2);
    const double width = std::numbers::pi / per_half;
    for (int side = 0; side < 2; ++side) {
        for (int i = 0; i < per_half; ++i) {
            for (double t : gl.nodes) {
                const ThetaPoint p = ThetaPoint::from_distance((i + 0.5 + 0.5 * t) * width, side == 1);
                const double w = (*expr_)(p.x);
                if (w < 0.0) {
                    char buf[96];
                    std::snprintf(buf, sizeof buf, "weight is negative at x = %.17g", p.x);
                    throw precondition_error(buf);
                }
            }
        }
    }
    const double total = mass(*this);
    if (!(total > 0.0)) throw precondition_error("weight has zero total mass");
}

} // namespace wortho
