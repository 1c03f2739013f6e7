#pragma once

// Functions F(x) = B0(x) + sqrt(1 - x^2) B1(x) of the space Omega_m, where B0 has degree <= m
// and the parity of m, B1 has degree <= m - 1 and the parity of m - 1.

#include <wortho/error.hpp>
#include <wortho/measure.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace wortho {

class OmegaFunction {
public:
    /// The zero function of Omega_0.
    OmegaFunction() : OmegaFunction(0) {}

    /// The zero function of Omega_m.
    explicit OmegaFunction(int m) : m_(m) {
        require(m >= 0, "OmegaFunction: degree bound must be nonnegative");
        b0_.assign(static_cast<std::size_t>(m) + 1, 0.0);
        b1_.assign(static_cast<std::size_t>(m), 0.0);
    }

    /// Monomial coefficients indexed by power: b0[k] multiplies x^k, b1[k] multiplies
    /// sqrt(1 - x^2) x^k. Entries of the wrong parity are set to zero.
    OmegaFunction(int m, std::vector<double> b0, std::vector<double> b1) : m_(m), b0_(std::move(b0)), b1_(std::move(b1)) {
        require(m >= 0, "OmegaFunction: degree bound must be nonnegative");
        require(b0_.size() == static_cast<std::size_t>(m) + 1, "OmegaFunction: b0 must have m+1 entries");
        require(b1_.size() == static_cast<std::size_t>(m), "OmegaFunction: b1 must have m entries");
        for (std::size_t k = 0; k < b0_.size(); ++k)
            if ((k + m_) % 2 != 0) b0_[k] = 0.0;
        for (std::size_t k = 0; k < b1_.size(); ++k)
            if ((k + m_ + 1) % 2 != 0) b1_[k] = 0.0;
    }

    static OmegaFunction constant(double c) { return OmegaFunction(0, {c}, {}); }

    int degree_bound() const noexcept { return m_; }
    std::span<const double> b0() const noexcept { return b0_; }
    std::span<const double> b1() const noexcept { return b1_; }

    /// First and second leading coefficients: of x^m in B0 and of x^(m-1) in B1.
    double lead0() const noexcept { return b0_.back(); }
    double lead1() const noexcept { return m_ == 0 ? 0.0 : b1_.back(); }
    double lead_factor() const noexcept { return lead0() * lead0() + lead1() * lead1(); }
    bool exact_degree() const noexcept { return lead_factor() > 0.0; }

    double operator()(double x) const {
        require(std::abs(x) <= 1.0, "OmegaFunction: |x| > 1");
        // sqrt(1 - x^2) via the angle near the endpoints
        const double s = std::abs(x) > 0.99 ? std::sin(std::acos(x)) : std::sqrt(1.0 - x * x);
        return eval(x, s);
    }

    /// Value with s = sqrt(1 - x^2) supplied by the caller.
    double eval(double x, double s) const noexcept { return horner(b0_, x) + s * horner(b1_, x); }
    double eval(const ThetaPoint& p) const noexcept { return eval(p.x, p.s); }

    /// Magnitude bound of the evaluation: same sums with absolute values.
    double eval_scale(double x, double s) const noexcept {
        const double ax = std::abs(x);
        double v0 = 0.0, v1 = 0.0;
        for (auto it = b0_.rbegin(); it != b0_.rend(); ++it) v0 = v0 * ax + std::abs(*it);
        for (auto it = b1_.rbegin(); it != b1_.rend(); ++it) v1 = v1 * ax + std::abs(*it);
        return v0 + s * v1;
    }

    /// Largest coefficient magnitude.
    double coeff_scale() const noexcept {
        double s = 0.0;
        for (double c : b0_) s = std::max(s, std::abs(c));
        for (double c : b1_) s = std::max(s, std::abs(c));
        return s;
    }

    OmegaFunction& operator*=(double c) {
        for (double& v : b0_) v *= c;
        for (double& v : b1_) v *= c;
        return *this;
    }

    OmegaFunction& operator+=(const OmegaFunction& g) { return accumulate(g, 1.0); }
    OmegaFunction& operator-=(const OmegaFunction& g) { return accumulate(g, -1.0); }

    /// this += c * g; g may have any degree bound of the same parity.
    OmegaFunction& accumulate(const OmegaFunction& g, double c) {
        require((g.m_ - m_) % 2 == 0, "OmegaFunction: degree bounds of different parity do not share a space");
        if (g.m_ > m_) {
            b0_.resize(g.b0_.size(), 0.0);
            b1_.resize(g.b1_.size(), 0.0);
            m_ = g.m_;
        }
        for (std::size_t k = 0; k < g.b0_.size(); ++k) b0_[k] += c * g.b0_[k];
        for (std::size_t k = 0; k < g.b1_.size(); ++k) b1_[k] += c * g.b1_[k];
        return *this;
    }

    friend OmegaFunction operator+(OmegaFunction f, const OmegaFunction& g) { return f += g; }
    friend OmegaFunction operator-(OmegaFunction f, const OmegaFunction& g) { return f -= g; }
    friend OmegaFunction operator*(double c, OmegaFunction f) { return f *= c; }
    friend OmegaFunction operator*(OmegaFunction f, double c) { return f *= c; }

    friend bool operator==(const OmegaFunction&, const OmegaFunction&) = default;

private:
    static double horner(const std::vector<double>& c, double x) noexcept {
        double v = 0.0;
        for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * x + *it;
        return v;
    }

    int m_;
    std::vector<double> b0_;
    std::vector<double> b1_;
};

/// Same function viewed in Omega_new_m (new_m >= m, same parity).
inline OmegaFunction raise_degree(const OmegaFunction& f, int new_m) {
    require(new_m >= f.degree_bound() && (new_m - f.degree_bound()) % 2 == 0,
            "raise_degree: target must be >= m with the same parity");
    OmegaFunction g(new_m);
    return g += f;
}

/// Drops the coefficients above degree new_m (same parity); used after eliminating leading terms.
inline OmegaFunction truncate_degree(const OmegaFunction& f, int new_m) {
    require(new_m >= 0 && new_m <= f.degree_bound() && (f.degree_bound() - new_m) % 2 == 0,
            "truncate_degree: target must be <= m with the same parity");
    std::vector<double> b0(f.b0().begin(), f.b0().begin() + new_m + 1);
    std::vector<double> b1(f.b1().begin(), f.b1().begin() + new_m);
    return OmegaFunction(new_m, std::move(b0), std::move(b1));
}

/// [gamma x - beta sqrt(1 - x^2)] f, expanded in Omega_{m+1} with (sqrt(1 - x^2))^2 = 1 - x^2.
inline OmegaFunction mul_linear(const OmegaFunction& f, double gamma, double beta) {
    const int m = f.degree_bound();
    std::vector<double> b0(static_cast<std::size_t>(m) + 2, 0.0);
    std::vector<double> b1(static_cast<std::size_t>(m) + 1, 0.0);
    const auto fb0 = f.b0();
    const auto fb1 = f.b1();
    // B0' = gamma x B0 - beta (1 - x^2) B1,   B1' = gamma x B1 - beta B0
    for (std::size_t k = 0; k < fb0.size(); ++k) {
        b0[k + 1] += gamma * fb0[k];
        b1[k] -= beta * fb0[k];
    }
    for (std::size_t k = 0; k < fb1.size(); ++k) {
        b0[k] -= beta * fb1[k];
        b0[k + 2] += beta * fb1[k];
        b1[k + 1] += gamma * fb1[k];
    }
    return OmegaFunction(m + 1, std::move(b0), std::move(b1));
}

/// sqrt(1 - x^2) f as an element of Omega_{m+1}.
inline OmegaFunction mul_halfcircle(const OmegaFunction& f) { return mul_linear(f, 0.0, -1.0); }

struct LeadingData {
    double a0 = 1.0;        ///< first leading coefficient
    double a1 = 0.0;        ///< second leading coefficient
    double lambda = 1.0;    ///< lead factor a0^2 + a1^2
    double lambda_next = 0.0; ///< a0(next) a0 + a1(next) a1, filled once the next order is known
};

inline LeadingData leading_data(const OmegaFunction& f) {
    return {f.lead0(), f.lead1(), f.lead_factor(), 0.0};
}

struct LeadingStep {
    LeadingData current; ///< input with lambda_next filled in
    LeadingData next;
};

/// Leading coefficients of [gamma x - beta sqrt(1 - x^2)] W_m - alpha W_{m-1} from those of W_m:
/// (a0, a1) -> [[gamma, beta], [-beta, gamma]] (a0, a1).
inline LeadingStep leading_step(const LeadingData& prev, double gamma, double beta) {
    LeadingStep out{prev, {}};
    out.next.a0 = gamma * prev.a0 + beta * prev.a1;
    out.next.a1 = -beta * prev.a0 + gamma * prev.a1;
    out.next.lambda = (gamma * gamma + beta * beta) * prev.lambda;
    out.current.lambda_next = gamma * prev.lambda;
    return out;
}

/// Coefficients c_0..c_n of f in the mixed basis
///   { W_n, sqrt(1-x^2) W_{n-1}, W_{n-2}, sqrt(1-x^2) W_{n-3}, ... }
/// built from basis[k] = W_k, k = 0..n, by eliminating leading pairs two degrees at a time.
inline std::vector<double> expand_in_w_basis(const OmegaFunction& f, std::span<const OmegaFunction> basis) {
    const int n = f.degree_bound();
    require(basis.size() >= static_cast<std::size_t>(n) + 1, "expand_in_w_basis: basis shorter than degree + 1");
    for (int k = 0; k <= n; ++k) {
        require(basis[static_cast<std::size_t>(k)].degree_bound() == k, "expand_in_w_basis: basis[k] must lie in Omega_k");
        require(basis[static_cast<std::size_t>(k)].exact_degree(), "expand_in_w_basis: basis element is not of exact degree");
    }

    std::vector<double> c(static_cast<std::size_t>(n) + 1, 0.0);
    OmegaFunction r = f;
    for (int top = n; top >= 0; top -= 2) {
        const std::size_t j = static_cast<std::size_t>(n - top);
        const OmegaFunction& w = basis[static_cast<std::size_t>(top)];
        if (top == 0) {
            c[j] = r.b0()[0] / w.b0()[0];
            break;
        }
        const OmegaFunction& v = basis[static_cast<std::size_t>(top - 1)];
        const double r0 = r.lead0(), r1 = r.lead1();
        // sqrt(1-x^2) W_{top-1} has leading pair (-a1(top-1), a0(top-1))
        const double det = w.lead0() * v.lead0() + w.lead1() * v.lead1();
        if (std::abs(det) <= 1e-300 || std::abs(det) <= 1e-14 * std::sqrt(w.lead_factor() * v.lead_factor())) {
            throw numeric_error("expand_in_w_basis: singular elimination step (lambda_{k,1} = 0)");
        }
        const double cw = (r0 * v.lead0() + r1 * v.lead1()) / det;
        const double cv = (w.lead0() * r1 - w.lead1() * r0) / det;
        c[j] = cw;
        c[j + 1] = cv;
        r.accumulate(w, -cw);
        r.accumulate(mul_halfcircle(v), -cv);
        if (top == 1) break;
        r = truncate_degree(r, top - 2);
    }
    return c;
}

/// Inverse of expand_in_w_basis: sum of c_j times the j-th mixed basis element of Omega_n.
inline OmegaFunction reconstruct_from_w_basis(std::span<const double> c, std::span<const OmegaFunction> basis) {
    require(!c.empty(), "reconstruct_from_w_basis: empty coefficient list");
    const int n = static_cast<int>(c.size()) - 1;
    require(basis.size() >= c.size(), "reconstruct_from_w_basis: basis shorter than coefficient list");
    OmegaFunction f(n);
    for (int j = 0; j <= n; ++j) {
        const int k = n - j;
        const OmegaFunction& w = basis[static_cast<std::size_t>(k)];
        if (j % 2 == 0) f.accumulate(w, c[static_cast<std::size_t>(j)]);
        else f.accumulate(mul_halfcircle(w), c[static_cast<std::size_t>(j)]);
    }
    return f;
}

} // namespace wortho
