#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace wc {

using cplx = std::complex<double>;

constexpr double kPi = 3.141592653589793238462643383279502884;

/// Error taxonomy shared by the whole library; the C API maps `code` onto its
/// status enum, internal callers catch by type.
enum class errc {
    invalid_argument,
    pole,
    singularity,
    truncation,
    convergence,
    not_automorphic,
    validation,
    io,
    internal,
};

class error : public std::runtime_error {
  public:
    error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    errc code() const { return code_; }

  private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

inline double sqr(double x) { return x * x; }
inline double abs2(cplx z) { return z.real() * z.real() + z.imag() * z.imag(); }

/// Kahan–Neumaier compensated accumulator; summation order is part of the
/// determinism contract, so every reduction in the library goes through one
/// of these in a fixed index order.
struct kahan_sum {
    double sum = 0.0;
    double comp = 0.0;
    void add(double x) {
        double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

struct kahan_csum {
    kahan_sum re, im;
    void add(cplx z) {
        re.add(z.real());
        im.add(z.imag());
    }
    cplx value() const { return {re.value(), im.value()}; }
};

/// xorshift-based deterministic generator for probe/sample points; fixed seed
/// per call site so reports are reproducible across platforms (no libc rand).
struct det_rng {
    explicit det_rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}
    double uniform() {  // in [0,1)
        state_ ^= state_ << 13;
        state_ ^= state_ >> 7;
        state_ ^= state_ << 17;
        return double(state_ >> 11) * 0x1.0p-53;
    }
    /// point in the disk |z| <= rmax, bounded away from 0 by rmin
    cplx disk_point(double rmin, double rmax) {
        double r = rmin + (rmax - rmin) * uniform();
        double th = 2.0 * kPi * uniform();
        return std::polar(r, th);
    }

  private:
    std::uint64_t state_;
};

}  // namespace wc
