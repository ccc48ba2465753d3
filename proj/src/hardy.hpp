#pragma once

#include "greens.hpp"
#include "quadrature.hpp"

namespace wc {

/// Equispaced boundary grid t_j = exp(i(2*pi*j/M + offset)). The default
/// offset pi/M keeps grid points off the hyperbolic fixed points, which sit at
/// roots of unity in the symmetric test configurations.
struct BoundaryGrid {
    int M = 0;
    double offset = 0.0;
};

/// M must be a power of two. Registered singular points (fixed points) are
/// checked against the 1e-9 proximity invariant.
BoundaryGrid make_grid(int M, const std::vector<cplx>& singular = {});
BoundaryGrid make_grid_offset(int M, double offset, const std::vector<cplx>& singular = {});

cplx grid_point(const BoundaryGrid& grid, int j);

/// (1 - |zeta|^2) / |t - zeta|^2
double poisson_kernel(cplx zeta, cplx t);

/// Mean of the samples (trapezoid for periodic integrands against normalized
/// Lebesgue measure), compensated, fixed index order.
cplx integrate_boundary(const std::vector<cplx>& samples, const BoundaryGrid& grid);
double integrate_boundary_real(const std::vector<double>& samples, const BoundaryGrid& grid);

/// exp( mean_j (t_j+z)/(t_j-z) * logmod_j ): the Herglotz-kernel outer function
/// with positive value at 0 for logmod = 0. Requires |z| <= 1 - 1e-6.
cplx outer_from_modulus(const std::vector<double>& logmod, const BoundaryGrid& grid, cplx z);

/// Smirnov/outer mean-value deviation | log|u(base)| - sum_j P_base(t_j) log|u(t_j)| / M |.
/// base = 0 gives the plain log-modulus mean; a nonzero base Poisson-weights
/// the boundary term so that outer functions still score ~0. u(base) = 0 is a
/// base-point error; the caller shifts the base.
double check_outer(const std::function<cplx(cplx)>& u, const BoundaryGrid& grid, cplx base = 0.0);

/// Composite 16-point Gauss rule holding the resolved boundary data
/// log|g'(e^{i theta})|. The data has Poisson spikes at every orbit point,
/// nested geometrically toward the hyperbolic fixed points (scales down to
/// ~1/multiplier^depth), so resolving it is the expensive step; the rule is
/// built once per split and every Herglotz evaluation reuses it.
struct OuterRule {
    std::vector<double> pa, pb;   // stored panel bounds, sorted by pa
    std::vector<double> theta;    // 16 nodes per panel, row-major
    std::vector<double> lm;       // log|g'| at the nodes
};

OuterRule build_outer_rule(const GreenEvaluator& ge, double abstol);

/// log|g'(e^{i theta})| as the sum of Poisson kernels of the orbit points
/// (the termwise pullback P_zeta(gamma t)|gamma'(t)| = P_{gamma^{-1} zeta}(t)
/// applied to the boundary orbit sum).
double boundary_log_abs_g_prime(const GreenEvaluator& ge, double theta);

/// Inner-outer factorization g' = Delta * O on the boundary grid.
///
/// Carries two routes to the outer factor:
///  - the grid evaluator (Herglotz sum over the stored samples), which makes
///    the definition check log|O(0)| = mean(log|g'|) an identity on the grid;
///  - a refined evaluator (the cached composite rule, subdivided per call
///    around the kernel peak) used for interior values. The refinement is
///    what keeps Delta meaningful at points hyperbolically deep toward the
///    fixed points (generator images of probes land within ~1/multiplier of
///    the boundary, far below any uniform grid's resolution).
struct InnerOuterSplit {
    GreenEvaluator green;
    BoundaryGrid grid;
    std::vector<double> logmod;  // log|g'(t_j)| via the boundary orbit sum
    double grid_log_mean = 0.0;
    double herglotz_abstol = 5e-10;
    OuterRule rule;
};

InnerOuterSplit inner_outer_split(const GreenEvaluator& ge, const BoundaryGrid& grid);

cplx split_outer_grid(const InnerOuterSplit& split, cplx z);
cplx split_outer(const InnerOuterSplit& split, cplx z);
cplx split_delta(const InnerOuterSplit& split, cplx z);
cplx split_psi(const InnerOuterSplit& split, cplx z);

/// |log|O_grid(0)| - grid mean of log|g'|| — zero by construction; kept as a
/// guard against evaluator drift.
double split_definition_check(const InnerOuterSplit& split);

/// Character delta of the inner factor, measured at probes.
Character character_delta(const InnerOuterSplit& split, const GroupSpec& spec,
                          const std::vector<cplx>& probes, double* max_spread = nullptr,
                          double spread_tol = 1e-6);

/// Residue quadrature for the Lemma's derivative operator:
///   (1/2*pi*i) \oint_{|t-zeta|=r} htilde(t) g'(t)/g(t)^{k+1} dt,
/// which equals h^{(k)}(Lambda(zeta))/k! when htilde is the Lemma's function.
/// Doubles M2 until two successive levels agree to 1e-10; a winding-number
/// check certifies that exactly the one zero of g at zeta is enclosed.
cplx residue_derivative(int k, const std::function<cplx(cplx)>& htilde,
                        const GreenEvaluator& ge, cplx zeta, double radius, int M2,
                        std::vector<int>* doubling_history = nullptr);

/// Default radius: half the distance to the nearest other orbit point, capped
/// at 0.1 and by half the gap to the unit circle (the quadrature circle must
/// stay interior).
double residue_radius(const GreenEvaluator& ge);

}  // namespace wc
