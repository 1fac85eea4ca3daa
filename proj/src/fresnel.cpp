#include "csc/numerics.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace csc {

namespace {

constexpr double kSeriesLimit = 1.5;
constexpr double kEps = 1e-17;
constexpr int kMaxIter = 200;

// Power series, adequate for |x| <= 1.5 (largest term ~ 10, so at most one
// digit is lost to cancellation).
FresnelCS fresnel_series(double ax) {
    const double t = 0.5 * std::numbers::pi * ax * ax;  // (pi/2) x^2
    double c_sum = 0.0;
    double s_sum = 0.0;
    // term_n = t^n / n!, alternating signs per even/odd pair
    double term = 1.0;
    for (int n = 0; n < kMaxIter; ++n) {
        const double contrib = term / (2.0 * n + 1.0);
        const int phase = n % 4;
        if (phase == 0) c_sum += contrib;
        else if (phase == 1) s_sum += contrib;
        else if (phase == 2) c_sum -= contrib;
        else s_sum -= contrib;
        if (n > 2 && contrib < kEps * std::abs(c_sum + s_sum)) break;
        term *= t / (n + 1.0);
    }
    return {ax * c_sum, ax * s_sum};
}

// Continued fraction for the complementary error function (modified Lentz),
// written for C + jS = (1+j)/2 * (1 - e^{j pi x^2/2} * h(x)).
FresnelCS fresnel_continued_fraction(double ax) {
    const double pix2 = std::numbers::pi * ax * ax;
    constexpr double tiny = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();

    cplx b{1.0, -pix2};
    cplx cc{1.0 / tiny, 0.0};
    cplx d = 1.0 / b;
    cplx h = d;
    int n = -1;
    for (int k = 2; k <= 20 * kMaxIter; ++k) {
        n += 2;
        const double a = -static_cast<double>(n) * (n + 1);
        b += 4.0;
        d = 1.0 / (a * d + b);
        cc = b + a / cc;
        const cplx del = cc * d;
        h *= del;
        if (std::abs(del.real() - 1.0) + std::abs(del.imag()) < 1e-16) break;
    }
    h *= cplx{ax, -ax};
    const cplx cs = cplx{0.5, 0.5} * (1.0 - cplx{std::cos(0.5 * pix2), std::sin(0.5 * pix2)} * h);
    return {cs.real(), cs.imag()};
}

}  // namespace

FresnelCS fresnel(double x) {
    if (!std::isfinite(x)) throw std::domain_error("fresnel: non-finite argument");
    const double ax = std::abs(x);
    FresnelCS r = ax < kSeriesLimit ? fresnel_series(ax) : fresnel_continued_fraction(ax);
    if (x < 0.0) {
        r.c = -r.c;
        r.s = -r.s;
    }
    return r;
}

}  // namespace csc
