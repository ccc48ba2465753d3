#pragma once

#include <map>

#include "moebius.hpp"

namespace wc {

/// Uniformization constants of the round annulus A(q, 1) = { q < |s| < 1 }.
/// The covering map from the unit disk is Lambda(z) = exp(beta * Log C(z))
/// with the Cayley map C(z) = i(1+z)/(1-z) onto the upper half plane and
/// beta = 2*pi*i / log(multiplier); the deck transformation group is the
/// cyclic hyperbolic group generated by z -> C^{-1}(multiplier * C(z)).
struct AnnulusSpec {
    double q = 0.0;
    double log_multiplier = 0.0;  // 2*pi^2 / log(1/q)
    double multiplier = 0.0;      // exp(log_multiplier)
    cplx beta{};                  // 2*pi*i / log_multiplier
};

/// Requires 0 < q <= 0.95 (beyond that the multiplier overflows any useful
/// working range).
AnnulusSpec make_annulus(double q);

/// Lambda(z); Log is taken with the imaginary part of C(z) clamped to the
/// closed upper half plane, which selects a single analytic branch on the
/// closed disk minus the fixed points +-1 and maps |z| = 1 onto |s| in {q, 1}.
/// Lambda(0) = sqrt(q) > 0.
cplx annulus_uniformizer(const AnnulusSpec& an, cplx z);

/// Lambda'(z) = Lambda(z) * beta * 2/(1 - z^2).
cplx annulus_uniformizer_derivative(const AnnulusSpec& an, cplx z);

/// The hyperbolic deck generator, det-normalized; fixed points -1 and +1.
MoebiusMap annulus_deck_generator(const AnnulusSpec& an);

/// Finite Laurent polynomial sum_n c_n s^n, the test-function class whose
/// members are holomorphic on a neighborhood of the closed annulus.
struct LaurentPoly {
    std::map<int, cplx> coeffs;
};

cplx laurent_eval(const LaurentPoly& h, cplx s);
LaurentPoly laurent_derivative(const LaurentPoly& h, int k = 1);

/// Independent oracle for h^{(k)}(lam0) / k! : the Cauchy integral of
/// h(s)/(s-lam0)^{k+1} over the two boundary circles of A(q, 1), each circle
/// quadratured by doubling trapezoid sums to 1e-12 relative agreement. This
/// shares no code path with laurent_derivative, so the two can certify each
/// other. lam0 must sit at least 1e-6 away from both circles.
cplx annulus_cauchy_oracle(const AnnulusSpec& an, const LaurentPoly& h, cplx lam0, int k);

}  // namespace wc
