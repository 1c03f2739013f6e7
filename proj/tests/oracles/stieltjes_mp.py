"""High-precision reference values for the test suites.

Runs the normalized Stieltjes loop pointwise (three-term recurrence in theta,
x = cos(theta/2)) with mpmath quadrature at 40 digits. Independent of the C++
code path: no monomial coefficients, no adaptive Gauss-Legendre.

usage: python3 stieltjes_mp.py
"""
import mpmath as mp

mp.mp.dps = 40


def theta_weight(kind, lam=None, eta=None):
    # dpsi/dtheta (positive orientation) for the builtin measures
    if kind == "one_minus_x":
        return lambda t: (1 - mp.cos(t / 2)) * mp.sin(t / 2) / 2
    if kind == "lebesgue":
        return lambda t: mp.sin(t / 2) / 2
    if kind == "chebyshev1":
        return lambda t: mp.mpf(1) / 2
    if kind == "gegenbauer":
        return lambda t: mp.exp(-eta * t) * mp.sin(t / 2) ** (2 * lam - 1) / 2
    raise ValueError(kind)


def integ(g):
    return mp.quad(g, mp.linspace(0, 2 * mp.pi, 9))


def w_values(beta, alpha, m, t):
    x, s = mp.cos(t / 2), mp.sin(t / 2)
    w_prev, w = mp.mpf(1), x - beta[1] * s
    if m == 0:
        return w_prev
    for k in range(1, m):
        w_prev, w = w, (x - beta[k + 1] * s) * w - alpha[k + 1] * w_prev
    return w


def stieltjes(kind, n, **kw):
    wt = theta_weight(kind, **kw)
    beta, alpha, rho = {}, {}, {}
    rho[0] = integ(lambda t: mp.sin(t / 2) * wt(t))
    beta[1] = integ(lambda t: mp.cos(t / 2) * wt(t)) / rho[0]
    for m in range(1, n + 1):
        rho[m] = integ(lambda t: w_values(beta, alpha, m, t) ** 2 * mp.sin(t / 2) * wt(t))
        if m == n:
            break
        beta[m + 1] = integ(lambda t: mp.cos(t / 2) * w_values(beta, alpha, m, t) ** 2 * wt(t)) / rho[m]
        alpha[m + 1] = (1 + beta[m + 1] ** 2) / (1 + beta[m] ** 2) * rho[m] / rho[m - 1]
    return beta, alpha, rho, wt


def zero_near(beta, alpha, m, x0):
    return mp.cos(mp.findroot(lambda t: w_values(beta, alpha, m, t), 2 * mp.acos(x0)) / 2)


if __name__ == "__main__":
    beta, alpha, rho, wt = stieltjes("one_minus_x", 7)
    print("(1-x) dx")
    for m in range(1, 7):
        print(m, mp.nstr(beta[m], 16), mp.nstr(alpha.get(m, 0), 16), mp.nstr(rho[m], 16))
    print("W4 zero near 0:", mp.nstr(zero_near(beta, alpha, 4, 0), 16))
    print("W1 zero:", mp.nstr(zero_near(beta, alpha, 1, -0.4), 16))
    # chain parameter M_1 via moments: rho_0 (1 + beta_1^2) / int dpsi/sqrt(1-x^2)
    a = integ(lambda t: wt(t) / mp.sin(t / 2))
    print("M1 (moments) (1-x) dx:", mp.nstr(rho[0] * (1 + beta[1] ** 2) / a, 16))

    lam, eta = mp.mpf("0.75"), mp.mpf("0.5")
    beta, alpha, rho, wt = stieltjes("gegenbauer", 3, lam=lam, eta=eta)
    print("gegenbauer 0.75/0.5 rho:", [mp.nstr(rho[m], 16) for m in range(4)])
    b = lam + 1j * eta
    for m in range(4):
        closed = (mp.pi * mp.factorial(m) * (lam + m) * mp.gamma(2 * lam + m)
                  / (2 ** (2 * lam + 2 * m - 1) * mp.exp(eta * mp.pi) * abs(mp.gamma(b + m + 1)) ** 2)
                  / mp.rf(lam, m) ** 2 * abs(mp.rf(b, m)) ** 2)
        print("  closed rho", m, mp.nstr(closed, 16), "ratio", mp.nstr(rho[m] / closed, 16))
    a = integ(lambda t: wt(t) / mp.sin(t / 2))
    print("M1 (moments) gegenbauer 0.75/0.5:", mp.nstr(rho[0] * (1 + beta[1] ** 2) / a, 16))
    # backward truncation over the closed-form alpha sequence
    for T in (1000, 100000):
        h = mp.mpf(1)
        for k in range(T, 0, -1):
            ak = mp.mpf(1) / 4 * k * (k + 2 * lam - 1) / ((k + lam - 1) * (k + lam))
            h = 1 - ak / h
        print("  M1 backward T=%d:" % T, mp.nstr(h, 16))
