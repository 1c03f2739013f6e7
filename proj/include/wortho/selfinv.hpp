#pragma once

// Self-inversive polynomials Q(z) = k_0 + k_1 z + ... + k_m z^m with k_j = conj(k_{m-j}) and the
// bijection with Omega_m given by exp(-i m theta/2) Q(exp(i theta)) = F(cos(theta/2)).

#include <wortho/error.hpp>
#include <wortho/omega.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdio>
#include <vector>

namespace wortho {

using cplx = std::complex<double>;

class SelfInversivePoly {
public:
    SelfInversivePoly() : k_{1.0} {}

    /// Coefficients k_0..k_m (length m+1). The symmetry is not enforced here; see is_symmetric().
    explicit SelfInversivePoly(std::vector<cplx> k) : k_(std::move(k)) {
        require(!k_.empty(), "SelfInversivePoly: need at least one coefficient");
    }

    int degree() const noexcept { return static_cast<int>(k_.size()) - 1; }
    const std::vector<cplx>& coeffs() const noexcept { return k_; }
    cplx operator[](std::size_t j) const { return k_.at(j); }

    cplx operator()(cplx z) const noexcept {
        cplx v = 0.0;
        for (auto it = k_.rbegin(); it != k_.rend(); ++it) v = v * z + *it;
        return v;
    }

    /// Largest deviation |k_j - conj(k_{m-j})| relative to the largest |k_j|.
    double symmetry_defect() const noexcept {
        double scale = 0.0, worst = 0.0;
        const std::size_t m = k_.size() - 1;
        for (std::size_t j = 0; j <= m; ++j) {
            scale = std::max(scale, std::abs(k_[j]));
            worst = std::max(worst, std::abs(k_[j] - std::conj(k_[m - j])));
        }
        return scale == 0.0 ? 0.0 : worst / scale;
    }

    bool is_symmetric(double rel_tol = 1e-13) const noexcept { return symmetry_defect() <= rel_tol; }

    /// Projection onto the self-inversive polynomials: k_j <- (k_j + conj(k_{m-j}))/2.
    SelfInversivePoly symmetrized() const {
        std::vector<cplx> k(k_.size());
        const std::size_t m = k_.size() - 1;
        for (std::size_t j = 0; j <= m; ++j) k[j] = 0.5 * (k_[j] + std::conj(k_[m - j]));
        return SelfInversivePoly(std::move(k));
    }

    SelfInversivePoly& operator*=(cplx c) {
        for (cplx& v : k_) v *= c;
        return *this;
    }

private:
    std::vector<cplx> k_;
};

/// Polynomial product; the image of the product of the corresponding Omega functions.
inline SelfInversivePoly multiply(const SelfInversivePoly& p, const SelfInversivePoly& q) {
    std::vector<cplx> r(p.coeffs().size() + q.coeffs().size() - 1, 0.0);
    for (std::size_t i = 0; i < p.coeffs().size(); ++i)
        for (std::size_t j = 0; j < q.coeffs().size(); ++j) r[i + j] += p.coeffs()[i] * q.coeffs()[j];
    return SelfInversivePoly(std::move(r));
}

namespace detail {

// Horner in a Chebyshev basis: coefficients of sum_k c[k] x^k as a sum of T_j (or U_j).
inline std::vector<double> monomial_to_chebyshev(const std::vector<double>& c, bool second_kind) {
    const std::size_t n = c.size();
    std::vector<double> a(n, 0.0), next(n, 0.0);
    for (std::size_t k = n; k-- > 0;) {
        std::fill(next.begin(), next.end(), 0.0);
        // x T_j = (T_{j+1} + T_{|j-1|})/2, x T_0 = T_1;  x U_j = (U_{j+1} + U_{j-1})/2, x U_0 = U_1/2
        for (std::size_t j = 0; j + 1 < n; ++j) {
            if (a[j] == 0.0) continue;
            if (j == 0) {
                next[1] += second_kind ? 0.5 * a[0] : a[0];
            } else {
                next[j + 1] += 0.5 * a[j];
                next[j - 1] += 0.5 * a[j];
            }
        }
        next[0] += c[k];
        a.swap(next);
    }
    return a;
}

// Monomial coefficients of sum_j a[j] T_j (or U_j).
inline std::vector<double> chebyshev_to_monomial(const std::vector<double>& a, bool second_kind) {
    const std::size_t n = a.size();
    std::vector<double> out(n, 0.0);
    if (n == 0) return out;
    std::vector<double> prev(n, 0.0), cur(n, 0.0), nxt(n, 0.0);
    prev[0] = 1.0; // T_0 = U_0 = 1
    out[0] += a[0];
    if (n == 1) return out;
    cur[1] = second_kind ? 2.0 : 1.0;
    for (std::size_t i = 0; i < n; ++i) out[i] += a[1] * cur[i];
    for (std::size_t j = 2; j < n; ++j) {
        std::fill(nxt.begin(), nxt.end(), 0.0);
        for (std::size_t i = 0; i + 1 < n; ++i) nxt[i + 1] += 2.0 * cur[i];
        for (std::size_t i = 0; i < n; ++i) nxt[i] -= prev[i];
        for (std::size_t i = 0; i < n; ++i) out[i] += a[j] * nxt[i];
        prev.swap(cur);
        cur.swap(nxt);
    }
    return out;
}

} // namespace detail

/// The self-inversive Q of degree m with exp(-i m theta/2) Q(exp(i theta)) = f(cos(theta/2)).
/// With x = cos(phi), T_j(x) = cos(j phi) and sqrt(1-x^2) U_{j-1}(x) = sin(j phi), so
/// f = sum_j t_j cos(j phi) + v_j sin(j phi) over j = m, m-2, ..., and k_{(m+j)/2} = (t_j - i v_j)/2.
inline SelfInversivePoly omega_to_selfinv(const OmegaFunction& f) {
    const int m = f.degree_bound();
    const auto t = detail::monomial_to_chebyshev({f.b0().begin(), f.b0().end()}, false);
    const auto u = detail::monomial_to_chebyshev({f.b1().begin(), f.b1().end()}, true);
    std::vector<cplx> k(static_cast<std::size_t>(m) + 1, 0.0);
    for (int j = m; j > 0; j -= 2) {
        const double v = u[static_cast<std::size_t>(j - 1)];
        const cplx kp(0.5 * t[static_cast<std::size_t>(j)], -0.5 * v);
        k[static_cast<std::size_t>((m + j) / 2)] = kp;
        k[static_cast<std::size_t>((m - j) / 2)] = std::conj(kp);
    }
    if (m % 2 == 0) k[static_cast<std::size_t>(m / 2)] = t[0];
    return SelfInversivePoly(std::move(k));
}

/// Inverse of omega_to_selfinv. Throws when q is not self-inversive to 1e-13 relative.
inline OmegaFunction selfinv_to_omega(const SelfInversivePoly& q) {
    const double defect = q.symmetry_defect();
    if (defect > 1e-13) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "selfinv_to_omega: coefficients not conjugate-reciprocal (defect %.3g)", defect);
        throw precondition_error(buf);
    }
    const int m = q.degree();
    const auto& k = q.coeffs();
    std::vector<double> t(static_cast<std::size_t>(m) + 1, 0.0), u(static_cast<std::size_t>(m), 0.0);
    for (int p = m; 2 * p > m; --p) {
        const int j = 2 * p - m;
        const cplx hi = k[static_cast<std::size_t>(p)], lo = k[static_cast<std::size_t>(m - p)];
        t[static_cast<std::size_t>(j)] = hi.real() + lo.real();
        u[static_cast<std::size_t>(j - 1)] = -hi.imag() + lo.imag();
    }
    if (m % 2 == 0) t[0] = k[static_cast<std::size_t>(m / 2)].real();
    return OmegaFunction(m, detail::chebyshev_to_monomial(t, false), detail::chebyshev_to_monomial(u, true));
}

/// Product of two Omega functions (degree bounds add), computed through the bridge.
inline OmegaFunction omega_product(const OmegaFunction& f, const OmegaFunction& g) {
    return selfinv_to_omega(multiply(omega_to_selfinv(f), omega_to_selfinv(g)).symmetrized());
}

enum class ParityCase { even, odd };

struct DivisionResult {
    OmegaFunction f; ///< quotient in Omega_{2m-1}
    OmegaFunction g; ///< remainder in Omega_{2m-1} (even case) or Omega_{2m} (odd case)
};

/// E = F W + G with W of exact degree n = 2m (even case, E in Omega_{4m-1}) or n = 2m+1
/// (odd case, E in Omega_{4m}). E of smaller degree bound with matching parity is accepted.
/// In the z-domain: P = Q K + z^m R, where the low coefficients q_0..q_{m-1} follow by forward
/// substitution and the rest by the symmetry of Q.
inline DivisionResult divide(const OmegaFunction& e, const OmegaFunction& w, ParityCase parity) {
    const int n = w.degree_bound();
    const bool even = parity == ParityCase::even;
    require(n % 2 == (even ? 0 : 1), "divide: degree of w does not match the parity case");
    const int m = even ? n / 2 : (n - 1) / 2;
    require(m >= 1, "divide: w must have degree >= 2");
    const int d = even ? 4 * m - 1 : 4 * m;
    require(e.degree_bound() <= d && (d - e.degree_bound()) % 2 == 0,
            "divide: e is not in the class Omega_{4m-1} (even) / Omega_{4m} (odd)");

    const SelfInversivePoly K = omega_to_selfinv(w);
    const cplx k0 = K[0];
    if (!w.exact_degree() || std::abs(k0) == 0.0) throw precondition_error("divide: w is not of exact degree (k_0 = 0)");
    const SelfInversivePoly P = omega_to_selfinv(raise_degree(e, d));
    const auto& p = P.coeffs();
    const auto& k = K.coeffs();

    const int qlen = d - n + 1; // = 2m
    std::vector<cplx> q(static_cast<std::size_t>(qlen), 0.0);
    for (int j = 0; j < m; ++j) {
        cplx acc = p[static_cast<std::size_t>(j)];
        for (int l = 0; l < j; ++l) acc -= q[static_cast<std::size_t>(l)] * k[static_cast<std::size_t>(j - l)];
        q[static_cast<std::size_t>(j)] = acc / k0;
    }
    for (int j = m; j < qlen; ++j) q[static_cast<std::size_t>(j)] = std::conj(q[static_cast<std::size_t>(qlen - 1 - j)]);

    const SelfInversivePoly Q(q);
    const SelfInversivePoly QK = multiply(Q, K);
    const int rdeg = d - 2 * m;
    std::vector<cplx> r(static_cast<std::size_t>(rdeg) + 1, 0.0);
    for (int j = 0; j <= rdeg; ++j) r[static_cast<std::size_t>(j)] = p[static_cast<std::size_t>(m + j)] - QK[static_cast<std::size_t>(m + j)];

    return {selfinv_to_omega(Q.symmetrized()), selfinv_to_omega(SelfInversivePoly(std::move(r)).symmetrized())};
}

} // namespace wortho
