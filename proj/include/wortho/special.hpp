#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>

namespace wortho {

/// log Gamma(z) for complex z (principal branch of the real part; the imaginary part is only
/// defined up to multiples of 2 pi). Lanczos approximation with g = 607/128 and 15 terms,
/// reflection for Re z < 1/2.
inline std::complex<double> lgamma_complex(std::complex<double> z) {
    static constexpr double g = 607.0 / 128.0;
    static constexpr std::array<double, 15> c{
        0.99999999999999709182,     57.156235665862923517,     -59.597960355475491248,
        14.136097974741747174,      -0.49191381609762019978,   .33994649984811888699e-4,
        .46523628927048575665e-4,   -.98374475304879564677e-4, .15808870322491248884e-3,
        -.21026444172410488319e-3,  .21743961811521264320e-3,  -.16431810653676389022e-3,
        .84418223983852743293e-4,   -.26190838401581408670e-4, .36899182659531622704e-5,
    };
    constexpr double pi = std::numbers::pi;
    if (z.real() < 0.5) {
        // Gamma(z) Gamma(1 - z) = pi / sin(pi z)
        return std::log(pi / std::sin(pi * z)) - lgamma_complex(1.0 - z);
    }
    z -= 1.0;
    std::complex<double> a = c[0];
    for (std::size_t k = 1; k < c.size(); ++k) a += c[k] / (z + static_cast<double>(k));
    const std::complex<double> t = z + g + 0.5;
    return 0.5 * std::log(2.0 * pi) + (z + 0.5) * std::log(t) - t + std::log(a);
}

/// Rising factorial (a)_n = a (a+1) ... (a+n-1).
template <class T>
T pochhammer(T a, int n) {
    T r = 1.0;
    for (int k = 0; k < n; ++k) r *= a + static_cast<double>(k);
    return r;
}

} // namespace wortho
