#include "csc/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace csc {

void require_finite_sequence(std::span<const cplx> seq) {
    if (seq.empty()) throw std::invalid_argument("sequence must have length >= 1");
    for (const auto& v : seq) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw std::domain_error("sequence contains non-finite samples");
    }
}

DftPlan::DftPlan(std::size_t length) : n_(length) {
    if (length == 0) throw std::invalid_argument("DftPlan: length must be >= 1");

    // Radix 4 first keeps the recursion shallow for powers of two.
    std::size_t rem = length;
    while (rem % 4 == 0) {
        factors_.push_back(4);
        rem /= 4;
    }
    for (std::size_t p = 2; rem > 1;) {
        if (p * p > rem) {
            factors_.push_back(rem);
            break;
        }
        if (rem % p == 0) {
            factors_.push_back(p);
            rem /= p;
        } else {
            p = (p == 2) ? 3 : p + 2;
        }
    }
    if (factors_.empty()) factors_.push_back(1);

    twiddles_.resize(length);
    for (std::size_t i = 0; i < length; ++i) {
        const double angle = -2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(length);
        twiddles_[i] = {std::cos(angle), std::sin(angle)};
    }
}

void DftPlan::forward(std::span<const cplx> in, std::span<cplx> out) const {
    transform(in, out, false);
}

void DftPlan::inverse(std::span<const cplx> in, std::span<cplx> out) const {
    transform(in, out, true);
    const double scale = 1.0 / static_cast<double>(n_);
    for (auto& v : out) v *= scale;
}

void DftPlan::transform(std::span<const cplx> in, std::span<cplx> out, bool inverse) const {
    if (in.size() != n_ || out.size() != n_) throw std::invalid_argument("DftPlan: length mismatch");
    if (in.data() == out.data()) {
        const ComplexVector copy(in.begin(), in.end());
        transform(copy, out, inverse);
        return;
    }
    ComplexVector scratch(factors_.empty() ? 1 : *std::max_element(factors_.begin(), factors_.end()));
    recurse(in.data(), 1, out.data(), n_, 0, inverse, scratch.data());
}

// Decimation in time: split the n-point transform into p interleaved
// sub-transforms of length m = n/p, then butterfly them together.
void DftPlan::recurse(const cplx* in, std::size_t stride, cplx* out, std::size_t n,
                      std::size_t factor_index, bool inverse, cplx* scratch) const {
    if (n == 1) {
        out[0] = in[0];
        return;
    }
    const std::size_t p = factors_[factor_index];
    const std::size_t m = n / p;
    for (std::size_t q = 0; q < p; ++q)
        recurse(in + q * stride, stride * p, out + q * m, m, factor_index + 1, inverse, scratch);

    const std::size_t step = n_ / n;  // twiddle stride for an n-point stage
    auto tw = [&](std::size_t e) {
        const cplx w = twiddles_[(e % n) * step];
        return inverse ? std::conj(w) : w;
    };

    if (p == 2) {
        for (std::size_t k = 0; k < m; ++k) {
            const cplx a = out[k];
            const cplx b = out[k + m] * tw(k);
            out[k] = a + b;
            out[k + m] = a - b;
        }
        return;
    }
    if (p == 4) {
        const cplx j = inverse ? cplx{0.0, 1.0} : cplx{0.0, -1.0};
        for (std::size_t k = 0; k < m; ++k) {
            const cplx a0 = out[k];
            const cplx a1 = out[k + m] * tw(k);
            const cplx a2 = out[k + 2 * m] * tw(2 * k);
            const cplx a3 = out[k + 3 * m] * tw(3 * k);
            const cplx s02 = a0 + a2, d02 = a0 - a2;
            const cplx s13 = a1 + a3, d13 = (a1 - a3) * j;
            out[k] = s02 + s13;
            out[k + m] = d02 + d13;
            out[k + 2 * m] = s02 - s13;
            out[k + 3 * m] = d02 - d13;
        }
        return;
    }
    // generic radix-p butterfly
    for (std::size_t k = 0; k < m; ++k) {
        for (std::size_t q = 0; q < p; ++q) scratch[q] = out[k + q * m];
        for (std::size_t r = 0; r < p; ++r) {
            const std::size_t idx = k + r * m;
            cplx acc = scratch[0];
            for (std::size_t q = 1; q < p; ++q) acc += scratch[q] * tw(q * idx);
            out[idx] = acc;
        }
    }
}

ComplexVector dft(std::span<const cplx> seq, bool inverse) {
    require_finite_sequence(seq);
    const DftPlan plan(seq.size());
    ComplexVector out(seq.size());
    if (inverse) plan.inverse(seq, out);
    else plan.forward(seq, out);
    return out;
}

}  // namespace csc
