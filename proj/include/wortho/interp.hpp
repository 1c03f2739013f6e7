#pragma once

// Interpolation in Omega_{n-1} at n distinct nodes x_k = cos(theta_k/2) of (-1, 1):
//   L_k(x) = exp(i (n-1)(theta_k - theta)/2) prod_{l != k} (z - z_l)/(z_k - z_l),  z = exp(i theta).

#include <wortho/error.hpp>
#include <wortho/measure.hpp>
#include <wortho/omega.hpp>
#include <wortho/selfinv.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <span>
#include <utility>
#include <vector>

namespace wortho {

class LagrangeBasis {
public:
    explicit LagrangeBasis(std::vector<double> nodes) : x_(std::move(nodes)) {
        require(!x_.empty(), "LagrangeBasis: need at least one node");
        for (double x : x_) require(x > -1.0 && x < 1.0, "LagrangeBasis: nodes must lie strictly inside (-1, 1)");
        theta_.reserve(x_.size());
        for (double x : x_) theta_.push_back(ThetaPoint::from_x(x).theta);
        for (std::size_t i = 0; i < x_.size(); ++i)
            for (std::size_t j = i + 1; j < x_.size(); ++j)
                require(x_[i] != x_[j] && theta_[i] != theta_[j], "LagrangeBasis: duplicate nodes");

        // scaled Lagrange polynomials exp(i (n-1) theta_k/2) prod (z - z_l)/(z_k - z_l) are self-inversive
        const std::size_t n = x_.size();
        omega_.reserve(n);
        for (std::size_t k = 0; k < n; ++k) {
            std::vector<cplx> c{1.0};
            cplx denom = std::polar(1.0, 0.5 * (n - 1.0) * theta_[k]);
            const cplx zk = std::polar(1.0, theta_[k]);
            for (std::size_t l = 0; l < n; ++l) {
                if (l == k) continue;
                const cplx zl = std::polar(1.0, theta_[l]);
                c.push_back(0.0);
                for (std::size_t i = c.size() - 1; i > 0; --i) c[i] = c[i - 1] - zl * c[i];
                c[0] = -zl * c[0];
                denom /= zk - zl;
            }
            for (cplx& v : c) v *= denom;
            omega_.push_back(selfinv_to_omega(SelfInversivePoly(std::move(c)).symmetrized()));
        }
    }

    std::size_t size() const noexcept { return x_.size(); }
    std::span<const double> nodes() const noexcept { return x_; }
    std::span<const double> thetas() const noexcept { return theta_; }

    /// L_k as an element of Omega_{n-1} (k is 0-based here).
    const OmegaFunction& omega(std::size_t k) const { return omega_.at(k); }

    /// L_k at a theta sample point by the product form; returns (real part, imaginary residual).
    std::pair<double, double> eval_complex(std::size_t k, const ThetaPoint& p) const {
        const std::size_t n = x_.size();
        const cplx z = std::polar(1.0, p.theta);
        const cplx zk = std::polar(1.0, theta_[k]);
        std::vector<std::pair<double, cplx>> factors;
        factors.reserve(n);
        for (std::size_t l = 0; l < n; ++l) {
            if (l == k) continue;
            const cplx zl = std::polar(1.0, theta_[l]);
            factors.push_back({std::abs(z - zl), (z - zl) / (zk - zl)});
        }
        std::sort(factors.begin(), factors.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        cplx v = std::polar(1.0, 0.5 * (n - 1.0) * (theta_[k] - p.theta));
        for (const auto& f : factors) v *= f.second;
        return {v.real(), v.imag()};
    }

private:
    std::vector<double> x_;
    std::vector<double> theta_;
    std::vector<OmegaFunction> omega_;
};

/// L_{m,k}(x), k = 1..m.
inline double eval_basis(const LagrangeBasis& basis, std::size_t k, double x) {
    require(k >= 1 && k <= basis.size(), "eval_basis: index outside 1..m");
    require(std::abs(x) <= 1.0, "eval_basis: |x| > 1");
    const auto [re, im] = basis.eval_complex(k - 1, ThetaPoint::from_x(x));
    if (std::abs(im) > 1e-11 * std::max(1.0, std::abs(re))) throw numeric_error("eval_basis: imaginary residual too large");
    return re;
}

/// The unique F in Omega_m through m+1 points (x_j, y_j) with distinct x_j in (-1, 1).
inline OmegaFunction interpolate(std::span<const std::pair<double, double>> points) {
    require(!points.empty(), "interpolate: no points");
    std::vector<double> xs;
    xs.reserve(points.size());
    for (const auto& [x, y] : points) xs.push_back(x);
    const LagrangeBasis basis(std::move(xs));
    OmegaFunction f(static_cast<int>(points.size()) - 1);
    for (std::size_t k = 0; k < points.size(); ++k) f.accumulate(basis.omega(k), points[k].second);
    return f;
}

} // namespace wortho
