#include "greens.hpp"

#include <cmath>

namespace wc {

namespace {

constexpr double kZeroFactor = 1e-300;   // below this an orbit point counts as 0
constexpr double kFixedPointExcl = 1e-9;  // boundary kernel exclusion radius

/// Elementary factor b_w(z) with the (|w|/w) normalization; b_0(z) = z.
inline cplx blaschke_factor(cplx w, cplx z) {
    double aw = std::abs(w);
    if (aw < kZeroFactor) return z;
    return (aw / w) * (w - z) / (1.0 - std::conj(w) * z);
}

/// b_w'(z) (derivative in z); b_0' = 1.
inline cplx blaschke_factor_prime(cplx w, cplx z) {
    double aw = std::abs(w);
    if (aw < kZeroFactor) return cplx{1.0, 0.0};
    cplx den = 1.0 - std::conj(w) * z;
    return (aw / w) * (aw * aw - 1.0) / (den * den);
}

/// b_w'(z)/b_w(z) = (|w|^2-1) / ((1-conj(w)z)(w-z)); 1/z for w = 0.
inline cplx blaschke_log_derivative(cplx w, cplx z) {
    double aw = std::abs(w);
    if (aw < kZeroFactor) return 1.0 / z;
    return (aw * aw - 1.0) / ((1.0 - std::conj(w) * z) * (w - z));
}

}  // namespace

GreenEvaluator make_green(const GroupSpec& spec, Orbit orbit) {
    GreenEvaluator ge;
    ge.zeta = orbit.base;
    ge.tail_bound = orbit.tail_bound;
    ge.orbit = std::move(orbit);
    for (const MoebiusMap& gen : spec.generators) {
        Classification cls = classify(gen);
        if (cls.kind == MapKind::hyperbolic) {
            ge.singular_points.push_back(cls.attracting);
            ge.singular_points.push_back(cls.repelling);
        }
    }
    return ge;
}

GreenEvaluator make_green_disk(cplx zeta) {
    if (std::abs(zeta) >= 1.0)
        fail(errc::invalid_argument, "disk Green base must lie inside the disk");
    GreenEvaluator ge;
    ge.zeta = zeta;
    ge.orbit.base = zeta;
    ge.orbit.entries.push_back({Word{}, identity_map(), zeta, 1.0 - std::abs(zeta)});
    return ge;
}

cplx eval_g(const GreenEvaluator& ge, cplx z) {
    cplx out{1.0, 0.0};
    for (const OrbitEntry& e : ge.orbit.entries) out *= blaschke_factor(e.point, z);
    return out;
}

cplx eval_g_prime(const GreenEvaluator& ge, cplx z) {
    if (std::abs(z) >= 1.0)
        fail(errc::invalid_argument, "eval_g_prime requires an interior point");
    // an orbit point within factor-degeneracy range switches us to leave-one-out
    std::size_t hit = ge.orbit.entries.size();
    for (std::size_t i = 0; i < ge.orbit.entries.size(); ++i) {
        if (std::abs(z - ge.orbit.entries[i].point) < 1e-12) {
            hit = i;
            break;
        }
    }
    if (hit == ge.orbit.entries.size()) {
        cplx g = eval_g(ge, z);
        kahan_csum s;
        for (const OrbitEntry& e : ge.orbit.entries) s.add(blaschke_log_derivative(e.point, z));
        return g * s.value();
    }
    // derivative of the vanishing factor times the product of the others
    cplx out = blaschke_factor_prime(ge.orbit.entries[hit].point, z);
    for (std::size_t i = 0; i < ge.orbit.entries.size(); ++i)
        if (i != hit) out *= blaschke_factor(ge.orbit.entries[i].point, z);
    return out;
}

cplx boundary_log_derivative(const GreenEvaluator& ge, cplx t) {
    for (cplx p : ge.singular_points)
        if (std::abs(t - p) < kFixedPointExcl)
            fail(errc::singularity, "boundary kernel within 1e-9 of a hyperbolic fixed point");
    return boundary_log_derivative_raw(ge, t);
}

cplx boundary_log_derivative_raw(const GreenEvaluator& ge, cplx t) {
    if (std::abs(std::abs(t) - 1.0) > 1e-12)
        fail(errc::invalid_argument, "boundary kernel requires |t| = 1");
    const double pz = 1.0 - abs2(ge.zeta);
    kahan_csum s;
    for (const OrbitEntry& e : ge.orbit.entries) {
        cplx gt = map_apply(e.map, t);
        cplx term = pz / abs2(gt - ge.zeta) * map_derivative(e.map, t) / gt;
        s.add(term);
    }
    return s.value();
}

cplx orbit_log_derivative_direct(const GreenEvaluator& ge, cplx t) {
    kahan_csum s;
    for (const OrbitEntry& e : ge.orbit.entries) s.add(blaschke_log_derivative(e.point, t));
    return s.value();
}

double boundary_abs_g_prime(const GreenEvaluator& ge, cplx t, double* im_residual) {
    cplx v = t * boundary_log_derivative(ge, t);
    if (im_residual) *im_residual = std::abs(v.imag()) / std::max(v.real(), 1e-300);
    if (!(v.real() > 0.0))
        fail(errc::internal, "boundary |g'| lost positivity; truncation too aggressive");
    return v.real();
}

Character character_mu(const GreenEvaluator& ge, const GroupSpec& spec,
                       const std::vector<cplx>& probes, double* max_spread,
                       double spread_tol) {
    auto g = [&](cplx z) { return eval_g(ge, z); };
    return measure_character(g, spec, probes, max_spread, spread_tol);
}

}  // namespace wc
