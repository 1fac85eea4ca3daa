// numerics.hpp - special functions and transforms used across the library
//
// Bessel functions of the first kind (integer order), Fresnel integrals,
// a mixed-radix DFT and index-aware linear convolution. Everything here is
// a pure function of its arguments and safe to call concurrently.

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace csc {

using cplx = std::complex<double>;
using ComplexVector = std::vector<cplx>;

// Throws std::domain_error if any sample is NaN/Inf, std::invalid_argument if empty.
void require_finite_sequence(std::span<const cplx> seq);

// ---------------------------------------------------------------------------
// Bessel functions of the first kind
// ---------------------------------------------------------------------------

// J_order(x) for any integer order. Miller backward recurrence normalized by
// the sum rule J_0 + 2 sum J_2k = 1. Absolute error < 1e-10 for |x| <= 500.
// Throws std::domain_error for non-finite x or |x| > 1e6.
double bessel_j(int order, double x);

// J_0(x) .. J_max_order(x) in one recurrence pass.
std::vector<double> bessel_j_sequence(int max_order, double x);

// ---------------------------------------------------------------------------
// Fresnel integrals
// ---------------------------------------------------------------------------

struct FresnelCS {
    double c = 0.0;
    double s = 0.0;
};

// C(x) = int_0^x cos(pi u^2 / 2) du, S(x) = int_0^x sin(pi u^2 / 2) du.
//
// This is the pi/2-normalized convention. The closed-form linear-chirp FDSS
// in fdss.cpp is written against it; the unnormalized int cos(u^2) variant
// does not reproduce the chirp's Fourier coefficients.
FresnelCS fresnel(double x);

// ---------------------------------------------------------------------------
// DFT
// ---------------------------------------------------------------------------

// Precomputed mixed-radix plan for one transform length. Lengths whose
// factors are small primes run in O(L log L); a large prime factor degrades
// to a direct sum over that factor. Plans are immutable after construction.
class DftPlan {
public:
    explicit DftPlan(std::size_t length);

    std::size_t size() const { return n_; }

    // Forward: X_k = sum_n x_n e^{-j2pi kn/L} (unscaled).
    void forward(std::span<const cplx> in, std::span<cplx> out) const;
    // Inverse: x_n = (1/L) sum_k X_k e^{+j2pi kn/L}.
    void inverse(std::span<const cplx> in, std::span<cplx> out) const;

private:
    void transform(std::span<const cplx> in, std::span<cplx> out, bool inverse) const;
    void recurse(const cplx* in, std::size_t stride, cplx* out, std::size_t n,
                 std::size_t factor_index, bool inverse, cplx* scratch) const;

    std::size_t n_;
    std::vector<std::size_t> factors_;
    ComplexVector twiddles_;  // e^{-j2pi i/L}, i = 0..L-1
};

ComplexVector dft(std::span<const cplx> seq, bool inverse = false);

// ---------------------------------------------------------------------------
// Index-aware linear convolution
// ---------------------------------------------------------------------------

// A finite sequence whose first element sits at integer index `start`.
struct IndexedSequence {
    int start = 0;
    ComplexVector values;

    int end() const { return start + static_cast<int>(values.size()); }  // one past last
    cplx at(int index) const;  // zero outside the support
};

// Aperiodic convolution; output start = a.start + b.start,
// length = len(a) + len(b) - 1.
IndexedSequence convolve_full(const IndexedSequence& a, const IndexedSequence& b);

}  // namespace csc
