#pragma once

#include "fuchsian.hpp"

namespace wc {

/// The group Green's function g_zeta as a Blaschke product over a truncated
/// orbit, with its derivative and the boundary orbit-sum kernel of the
/// log-derivative. Factor normalization: b_w(z) = (|w|/w)(w-z)/(1-conj(w)z),
/// b_0(z) = z, so g(0) > 0 whenever 0 is not an orbit point. Both sides of
/// every downstream identity use the same g, so the normalization cancels.
struct GreenEvaluator {
    Orbit orbit;
    cplx zeta{};
    double tail_bound = 0.0;
    std::vector<cplx> singular_points;  // circle fixed points of the group
};

GreenEvaluator make_green(const GroupSpec& spec, Orbit orbit);

/// Trivial-group evaluator (single Blaschke factor at zeta) for disk-domain use.
GreenEvaluator make_green_disk(cplx zeta);

/// Blaschke product over the orbit, valid on the closed disk.
cplx eval_g(const GreenEvaluator& ge, cplx z);

/// g'(z) for |z| < 1. Uses the logarithmic-derivative form away from orbit
/// points (numerically stabler than the product rule) and the leave-one-out
/// product at orbit points, where g vanishes.
cplx eval_g_prime(const GreenEvaluator& ge, cplx z);

/// Truncated orbit-parameterized boundary sum for (g'/g)(t):
///   sum over orbit words gamma of (1-|zeta|^2)/|gamma(t)-zeta|^2 * gamma'(t)/gamma(t).
/// Requires |t| = 1 away from the group's fixed points (exclusion 1e-9).
cplx boundary_log_derivative(const GreenEvaluator& ge, cplx t);

/// Same sum without the fixed-point exclusion. The truncated sum stays finite
/// (it merely grows like 1/dist toward a fixed point); adaptive boundary
/// quadrature needs values inside the exclusion radius to resolve the
/// log-modulus spike there.
cplx boundary_log_derivative_raw(const GreenEvaluator& ge, cplx t);

/// (g'/g)(t) as the plain sum of per-factor logarithmic derivatives b'_w/b_w
/// over the truncated orbit — an algebraically independent route to the same
/// value as boundary_log_derivative (orbit-sum identity check).
cplx orbit_log_derivative_direct(const GreenEvaluator& ge, cplx t);

/// |g'(t)| on the circle: the real positive value t*(g'/g)(t) (|g| = 1 there).
/// The imaginary residual is a truncation diagnostic, written on request.
double boundary_abs_g_prime(const GreenEvaluator& ge, cplx t, double* im_residual = nullptr);

/// Character mu of g under the group, measured at probe points.
Character character_mu(const GreenEvaluator& ge, const GroupSpec& spec,
                       const std::vector<cplx>& probes, double* max_spread = nullptr,
                       double spread_tol = 1e-6);

}  // namespace wc
