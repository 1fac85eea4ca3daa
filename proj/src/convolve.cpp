#include "csc/numerics.hpp"

#include <algorithm>
#include <stdexcept>

namespace csc {

namespace {

// Smallest length >= n whose only prime factors are 2, 3, 5, 7.
std::size_t smooth_length(std::size_t n) {
    for (std::size_t len = n;; ++len) {
        std::size_t r = len;
        for (std::size_t p : {2u, 3u, 5u, 7u})
            while (r % p == 0) r /= p;
        if (r == 1) return len;
    }
}

}  // namespace

cplx IndexedSequence::at(int index) const {
    if (index < start || index >= end()) return {0.0, 0.0};
    return values[static_cast<std::size_t>(index - start)];
}

// Convolution theorem on a zero-padded grid long enough that the circular
// product equals the linear one.
IndexedSequence convolve_full(const IndexedSequence& a, const IndexedSequence& b) {
    if (a.values.empty() || b.values.empty())
        throw std::invalid_argument("convolve_full: empty operand");

    const std::size_t out_len = a.values.size() + b.values.size() - 1;
    IndexedSequence out{a.start + b.start, ComplexVector(out_len)};

    if (a.values.size() == 1 || b.values.size() == 1) {
        const auto& longer = a.values.size() == 1 ? b.values : a.values;
        const cplx scalar = a.values.size() == 1 ? a.values[0] : b.values[0];
        for (std::size_t i = 0; i < out_len; ++i) out.values[i] = scalar * longer[i];
        return out;
    }

    const std::size_t grid = smooth_length(out_len);
    const DftPlan plan(grid);
    ComplexVector fa(grid), fb(grid), buf(grid);

    std::copy(a.values.begin(), a.values.end(), buf.begin());
    plan.forward(buf, fa);
    std::fill(buf.begin(), buf.end(), cplx{});
    std::copy(b.values.begin(), b.values.end(), buf.begin());
    plan.forward(buf, fb);
    for (std::size_t i = 0; i < grid; ++i) fa[i] *= fb[i];
    plan.inverse(fa, buf);

    std::copy(buf.begin(), buf.begin() + static_cast<std::ptrdiff_t>(out_len), out.values.begin());
    return out;
}

}  // namespace csc
