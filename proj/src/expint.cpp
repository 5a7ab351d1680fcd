#include "hardyq/detail/expint.hpp"

#include <cmath>
#include <limits>

namespace hardyq::detail {

namespace {
constexpr double kEulerGamma = 0.57721566490153286060651209008240243;
using cd = std::complex<double>;
}  // namespace

cd expint_e1(cd z) {
    const double az = std::abs(z);
    if (az == 0.0) return cd(std::numeric_limits<double>::infinity(), 0.0);

    if (az <= 4.0) {
        // E1(z) = -gamma - ln z + sum_{k>=1} (-1)^{k+1} z^k / (k * k!)
        cd sum = 0.0;
        cd term(1.0, 0.0);
        for (int k = 1; k <= 64; ++k) {
            term *= -z / static_cast<double>(k);
            const cd add = -term / static_cast<double>(k);
            sum += add;
            if (std::abs(add) < 1e-18 * (std::abs(sum) + 1e-300)) break;
        }
        return -kEulerGamma - std::log(z) + sum;
    }

    // Continued fraction E1(z) = e^{-z} / (z + 1 - 1/(z + 3 - 4/(z + 5 - ...)))
    // evaluated with the modified Lentz algorithm.
    const double tiny = 1e-300;
    cd b = z + 1.0;
    cd c = 1.0 / tiny;
    cd d = 1.0 / b;
    cd h = d;
    for (int k = 1; k <= 400; ++k) {
        const double a = -static_cast<double>(k) * static_cast<double>(k);
        b += 2.0;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        if (c == cd(0.0, 0.0)) c = tiny;
        const cd delta = c * d;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    return h * std::exp(-z);
}

}  // namespace hardyq::detail
