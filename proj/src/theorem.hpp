#pragma once

#include "annulus.hpp"
#include "hardy.hpp"

namespace wc {

enum class Domain { disk, annulus };

/// One verification case: domain, base point, derivative order, test function,
/// and the numerical knobs.
struct TheoremConfig {
    Domain domain = Domain::annulus;
    double q = 0.05;  // annulus modulus; ignored for the disk
    cplx zeta{0.3, 0.0};
    int k = 0;
    LaurentPoly h;
    int grid_m = 4096;
    double tail_tol = 1e-12;
    double tolerance = 1e-6;
};

/// Everything built once per case: uniformization, orbit, Green evaluator,
/// inner-outer split, and the derivative-operator base point lam0 = Lambda(zeta).
struct TheoremContext {
    TheoremConfig config;
    bool disk = false;
    AnnulusSpec an;    // valid iff !disk
    GroupSpec group;   // empty generator list for the disk
    GreenEvaluator green;
    InnerOuterSplit split;
    cplx lam0{};
};

TheoremContext build_context(const TheoremConfig& config);

/// Lambda(z) and Lambda'(z); the identity map and 1 on the disk.
cplx ctx_uniformizer(const TheoremContext& ctx, cplx z);
cplx ctx_uniformizer_derivative(const TheoremContext& ctx, cplx z);

/// f / Delta = h(Lambda) Lambda' g^{k+1} / ((Lambda - lam0)^{k+1} g').
/// Regular across the orbit of zeta after cancellation, but numerically 0/0
/// there: evaluation within 1e-8 of an orbit point is refused.
cplx eval_core(const TheoremContext& ctx, cplx z);

/// The Smirnov-class test function f = core * Delta (interior points only;
/// Delta comes from the refined outer evaluator).
cplx eval_f(const TheoremContext& ctx, cplx z);

/// Boundary integrand of the main identity with Delta and g^k cancelled
/// analytically (|g| = |Delta| = 1 on the circle):
///   h(Lambda(t)) Lambda'(t) / (Lambda(t)-lam0)^{k+1} / (g'/g)(t),
/// with (g'/g)(t) the boundary orbit sum.
cplx boundary_integrand(const TheoremContext& ctx, cplx t);

/// Unfolded boundary integral of an automorphic, character-trivial integrand G:
///   sum over |n| <= translates of the integral of G * (Poisson o gamma^n) *
///   |(gamma^n)'| over the two fundamental arcs, by midpoint quadrature in the
///   hyperbolic arc-length coordinate (mx points per arc). Exact for the disk
///   (single trivial translate, whole circle). With `absolute`, integrates |G|.
cplx folded_boundary_integral(const TheoremContext& ctx, const std::function<cplx(cplx)>& G,
                              int mx, int translates, bool absolute);

struct LhsResult {
    cplx value;                    // folded evaluation (annulus); grid value (disk)
    cplx grid_value;               // literal boundary-grid quadrature at config.grid_m
    std::vector<int> folded_history;  // mx doubling trail until stabilization
    double consistency = 0.0;      // |S * Delta * g^k - f| / |f| on the 1-1e-4 circle
};

/// LHS of the main identity: integral of f/(Delta g^k) against the Poisson
/// kernel on the circle. The folded evaluation and the literal grid quadrature
/// are the same integral; the folded form converges spectrally because the
/// unfolded kernel restores the integrand's periodicity in the group coordinate.
LhsResult lhs_integral(const TheoremContext& ctx);

/// RHS of the main identity: (1/k!) ((1/g') d/dt)^k (f/Delta) at zeta, via the
/// residue quadrature of core * g'/g^{k+1} around zeta. Retries with halved
/// radius when the winding certificate rejects the circle.
cplx rhs_operator(const TheoremContext& ctx, std::vector<int>* doubling_history = nullptr,
                  double* radius_used = nullptr);

/// h^{(k)}(lam0)/k! by Laurent differentiation (exact coefficient algebra).
cplx oracle_value(const TheoremContext& ctx);

struct VerificationReport {
    TheoremConfig config;
    cplx lhs{}, rhs{}, oracle{};
    double abs_err = 0.0;      // |lhs - rhs|
    double rel_err = 0.0;      // |lhs - rhs| / max(|rhs|, 1) — relative above unit scale
    double rel_lhs_oracle = 0.0;
    double rel_rhs_oracle = 0.0;
    double max_rel_err = 0.0;  // max pairwise; the pass metric
    bool pass = false;
    double character_residual = 0.0;  // |char(f) - mu^k delta| per generator, maxed
    double consistency = 0.0;
    cplx lhs_grid{};           // literal grid quadrature (diagnostic)
    std::vector<int> folded_history;
    std::vector<int> residue_history;
    double residue_radius_used = 0.0;
    int orbit_size = 0;
    double tail_bound = 0.0;
    int grid_m = 0;
    double wall_ms = 0.0;
};

/// Full check of the derivative identity for one configuration. The
/// character comparison can be skipped (with_characters = false) by callers
/// that only consume the quadrature errors, e.g. convergence sweeps running
/// at deliberately loose truncation where probe ratios lose accuracy.
VerificationReport verify_theorem(const TheoremConfig& config, bool with_characters = true);

/// Max over generators and deterministic interior probes of
/// |(Lambda' g/g')(gamma z) / (Lambda' g/g')(z) - 1|; 0 for the trivial group.
double verify_automorphy(const TheoremContext& ctx, int probes = 20);

struct UnfoldingResult {
    cplx unfolded{};  // plain grid quadrature of G * Poisson
    cplx folded{};    // arc quadrature with the unfolded kernel
    double diff = 0.0;
    int grid_m = 0;
    std::vector<int> folded_history;
};

/// Compare the two quadratures of the same boundary integral for the k=0
/// theorem integrand (automorphic with trivial character).
UnfoldingResult verify_unfolding(const TheoremContext& ctx, int grid_m);

struct L1Result {
    double disk_side = 0.0;            // integral of |f/(Delta g^k)| * Poisson on the circle
    double domain_side = 0.0;          // (1/2pi) oint |h(s)| / |s-lam0|^{k+1} |ds| over the domain boundary
    double domain_side_literal = 0.0;  // same with exponent 1 (the display as printed)
    double rel_diff = 0.0;             // disk vs domain (exponent k+1)
};

L1Result verify_l1_identity(const TheoremContext& ctx);

/// Invert the build_f formula for h o Lambda at deterministic interior probes
/// and compare against laurent_eval(h, Lambda(probe)); max relative deviation.
double recover_h_roundtrip(const TheoremContext& ctx, int probes = 8);

}  // namespace wc
