#include "csc/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace csc {

namespace {

constexpr double kRescaleAbove = 1e250;
constexpr double kMaxArgument = 1e6;

// Starting order for the downward recurrence. Past the turning point
// (order ~ |x|) J_n decays over a transition width ~ |x|^{1/3}; starting
// 20 widths beyond it leaves the seed error far below double precision.
int miller_start(int max_order, double ax) {
    const double turning = std::max(static_cast<double>(max_order), ax);
    int start = static_cast<int>(turning + 40.0 + 20.0 * std::cbrt(ax));
    if (start % 2 != 0) ++start;
    return start;
}

}  // namespace

std::vector<double> bessel_j_sequence(int max_order, double x) {
    if (max_order < 0) throw std::invalid_argument("bessel_j_sequence: negative max_order");
    if (!std::isfinite(x)) throw std::domain_error("bessel_j: non-finite argument");
    const double ax = std::abs(x);
    if (ax > kMaxArgument) throw std::domain_error("bessel_j: |x| exceeds 1e6");

    std::vector<double> out(static_cast<std::size_t>(max_order) + 1, 0.0);
    if (ax == 0.0) {
        out[0] = 1.0;
        return out;
    }

    const int start = miller_start(max_order, ax);
    const double two_over_x = 2.0 / ax;

    // j_next = J_{n+1}, j_cur = J_n (unnormalized).
    double j_next = 0.0;
    double j_cur = 1e-300;
    double norm = 0.0;  // J_0 + 2 sum_{k>=1} J_2k, unnormalized

    for (int n = start; n > 0; --n) {
        const double j_prev = n * two_over_x * j_cur - j_next;
        j_next = j_cur;
        j_cur = j_prev;  // now holds J_{n-1}
        const int order = n - 1;
        if (order <= max_order) out[static_cast<std::size_t>(order)] = j_cur;
        if (order > 0 && order % 2 == 0) norm += 2.0 * j_cur;

        if (std::abs(j_cur) > kRescaleAbove) {
            const double scale = 1.0 / kRescaleAbove;
            j_cur *= scale;
            j_next *= scale;
            norm *= scale;
            for (int k = order; k <= max_order; ++k) out[static_cast<std::size_t>(k)] *= scale;
        }
    }
    norm += j_cur;  // J_0

    const double inv = 1.0 / norm;
    for (auto& v : out) v *= inv;

    if (x < 0.0) {
        for (std::size_t k = 1; k < out.size(); k += 2) out[k] = -out[k];
    }
    return out;
}

double bessel_j(int order, double x) {
    const int n = order < 0 ? -order : order;
    const double value = bessel_j_sequence(n, x)[static_cast<std::size_t>(n)];
    // J_{-n} = (-1)^n J_n
    return (order < 0 && (n % 2 != 0)) ? -value : value;
}

}  // namespace csc
