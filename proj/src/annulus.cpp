#include "annulus.hpp"

#include <cmath>

namespace wc {

namespace {

constexpr double kFixedPointTol = 1e-13;

cplx ipow(cplx z, int n) {
    if (n < 0) return 1.0 / ipow(z, -n);
    cplx out{1.0, 0.0};
    for (int i = 0; i < n; ++i) out *= z;
    return out;
}

}  // namespace

AnnulusSpec make_annulus(double q) {
    if (!(q > 0.0) || q > 0.95)
        fail(errc::invalid_argument, "annulus modulus must satisfy 0 < q <= 0.95");
    AnnulusSpec an;
    an.q = q;
    an.log_multiplier = 2.0 * kPi * kPi / std::log(1.0 / q);
    an.multiplier = std::exp(an.log_multiplier);
    an.beta = cplx{0.0, 2.0 * kPi / an.log_multiplier};
    return an;
}

cplx annulus_uniformizer(const AnnulusSpec& an, cplx z) {
    if (std::abs(z - 1.0) < kFixedPointTol || std::abs(z + 1.0) < kFixedPointTol)
        fail(errc::singularity, "uniformizer evaluated at a deck fixed point (+-1)");
    cplx w = cplx{0.0, 1.0} * (1.0 + z) / (1.0 - z);
    // clamp to the closed upper half plane before the principal log so the
    // branch is continuous across the boundary arcs (which map to real w);
    // the clamp must yield +0.0 (not -0.0, which std::max would keep and
    // atan2 would send to the -pi side of the cut)
    double re = w.real(), im = w.imag() > 0.0 ? w.imag() : 0.0;
    cplx logw{std::log(std::hypot(re, im)), std::atan2(im, re)};
    return std::exp(an.beta * logw);
}

cplx annulus_uniformizer_derivative(const AnnulusSpec& an, cplx z) {
    cplx lam = annulus_uniformizer(an, z);
    return lam * an.beta * 2.0 / (1.0 - z * z);
}

MoebiusMap annulus_deck_generator(const AnnulusSpec& an) {
    // C^{-1} diag(sqrt(multiplier), 1/sqrt(multiplier)) C reduces to the real
    // symmetric matrix [[cosh u, sinh u], [sinh u, cosh u]], u = log_multiplier/2
    double u = 0.5 * an.log_multiplier;
    double ch = std::cosh(u), sh = std::sinh(u);
    return make_moebius(cplx{ch, 0.0}, cplx{sh, 0.0}, cplx{sh, 0.0}, cplx{ch, 0.0});
}

cplx laurent_eval(const LaurentPoly& h, cplx s) {
    if (std::abs(s) < 1e-300) {
        for (const auto& [n, c] : h.coeffs)
            if (n < 0 && std::abs(c) > 0.0)
                fail(errc::pole, "Laurent polynomial with negative powers evaluated at 0");
    }
    kahan_csum out;
    for (const auto& [n, c] : h.coeffs) out.add(c * ipow(s, n));
    return out.value();
}

LaurentPoly laurent_derivative(const LaurentPoly& h, int k) {
    if (k < 0) fail(errc::invalid_argument, "derivative order must be non-negative");
    LaurentPoly cur = h;
    for (int i = 0; i < k; ++i) {
        LaurentPoly next;
        for (const auto& [n, c] : cur.coeffs)
            if (n != 0) next.coeffs[n - 1] = double(n) * c;
        cur = std::move(next);
    }
    return cur;
}

namespace {

/// (1/2*pi*i) \oint_{|s|=rho} h(s)/(s-lam0)^{k+1} ds by the offset trapezoid
/// rule: the mean over s_j of the integrand times s_j.
cplx circle_cauchy(const LaurentPoly& h, cplx lam0, int k, double rho, int M) {
    kahan_csum sum;
    for (int j = 0; j < M; ++j) {
        cplx s = std::polar(rho, 2.0 * kPi * (j + 0.5) / M);
        sum.add(laurent_eval(h, s) / ipow(s - lam0, k + 1) * s);
    }
    return sum.value() / double(M);
}

}  // namespace

cplx annulus_cauchy_oracle(const AnnulusSpec& an, const LaurentPoly& h, cplx lam0, int k) {
    double a = std::abs(lam0);
    if (a < an.q + 1e-6 || a > 1.0 - 1e-6)
        fail(errc::invalid_argument,
             "oracle base point within 1e-6 of an annulus boundary circle");
    cplx prev = circle_cauchy(h, lam0, k, 1.0, 64) - circle_cauchy(h, lam0, k, an.q, 64);
    for (int M = 128; M <= (1 << 20); M *= 2) {
        cplx cur = circle_cauchy(h, lam0, k, 1.0, M) - circle_cauchy(h, lam0, k, an.q, M);
        if (std::abs(cur - prev) <= 1e-12 * std::max(1.0, std::abs(cur))) return cur;
        prev = cur;
    }
    fail(errc::convergence, "two-circle Cauchy oracle did not stabilize under doubling");
}

}  // namespace wc
