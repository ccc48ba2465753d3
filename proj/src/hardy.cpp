#include "hardy.hpp"

#include <algorithm>
#include <cmath>

namespace wc {

namespace {

bool power_of_two(int m) { return m >= 2 && (m & (m - 1)) == 0; }

void check_grid_clearance(const BoundaryGrid& grid, const std::vector<cplx>& singular) {
    const double step = 2.0 * kPi / grid.M;
    for (cplx p : singular) {
        if (std::abs(std::abs(p) - 1.0) > 1e-6) continue;  // off-circle points can't collide
        double phi = std::arg(p);
        long j = std::lround((phi - grid.offset) / step);
        for (long dj = -1; dj <= 1; ++dj) {
            long jj = ((j + dj) % grid.M + grid.M) % grid.M;
            if (std::abs(grid_point(grid, int(jj)) - p) < 1e-9)
                fail(errc::invalid_argument,
                     "grid point within 1e-9 of a registered singular point");
        }
    }
}

}  // namespace

BoundaryGrid make_grid(int M, const std::vector<cplx>& singular) {
    return make_grid_offset(M, kPi / M, singular);
}

BoundaryGrid make_grid_offset(int M, double offset, const std::vector<cplx>& singular) {
    if (!power_of_two(M) || M > (1 << 26))
        fail(errc::invalid_argument, "grid size must be a power of two in [2, 2^26]");
    BoundaryGrid grid{M, offset};
    check_grid_clearance(grid, singular);
    return grid;
}

cplx grid_point(const BoundaryGrid& grid, int j) {
    return std::polar(1.0, 2.0 * kPi * j / grid.M + grid.offset);
}

double poisson_kernel(cplx zeta, cplx t) { return (1.0 - abs2(zeta)) / abs2(t - zeta); }

cplx integrate_boundary(const std::vector<cplx>& samples, const BoundaryGrid& grid) {
    if (int(samples.size()) != grid.M)
        fail(errc::invalid_argument, "sample count does not match the grid");
    kahan_csum s;
    for (std::size_t j = 0; j < samples.size(); ++j) {
        if (!std::isfinite(samples[j].real()) || !std::isfinite(samples[j].imag()))
            fail(errc::validation, "non-finite boundary sample at index " + std::to_string(j));
        s.add(samples[j]);
    }
    return s.value() / double(grid.M);
}

double integrate_boundary_real(const std::vector<double>& samples, const BoundaryGrid& grid) {
    if (int(samples.size()) != grid.M)
        fail(errc::invalid_argument, "sample count does not match the grid");
    kahan_sum s;
    for (std::size_t j = 0; j < samples.size(); ++j) {
        if (!std::isfinite(samples[j]))
            fail(errc::validation, "non-finite boundary sample at index " + std::to_string(j));
        s.add(samples[j]);
    }
    return s.value() / double(grid.M);
}

cplx outer_from_modulus(const std::vector<double>& logmod, const BoundaryGrid& grid, cplx z) {
    if (int(logmod.size()) != grid.M)
        fail(errc::invalid_argument, "sample count does not match the grid");
    if (std::abs(z) > 1.0 - 1e-6)
        fail(errc::invalid_argument,
             "grid outer evaluator requires |z| <= 1 - 1e-6 (kernel unresolved closer in)");
    kahan_csum s;
    for (int j = 0; j < grid.M; ++j) {
        cplx t = grid_point(grid, j);
        s.add((t + z) / (t - z) * logmod[j]);
    }
    return std::exp(s.value() / double(grid.M));
}

double check_outer(const std::function<cplx(cplx)>& u, const BoundaryGrid& grid, cplx base) {
    cplx ub = u(base);
    if (std::abs(ub) < 1e-300)
        fail(errc::invalid_argument, "check_outer base point is a zero of u; shift the base");
    kahan_sum s;
    for (int j = 0; j < grid.M; ++j) {
        cplx t = grid_point(grid, j);
        double a = std::abs(u(t));
        if (!(a > 0.0) || !std::isfinite(a))
            fail(errc::validation,
                 "check_outer boundary sample vanished or diverged at index " + std::to_string(j));
        s.add(poisson_kernel(base, t) * std::log(a));
    }
    return std::abs(std::log(std::abs(ub)) - s.value() / double(grid.M));
}

double boundary_log_abs_g_prime(const GreenEvaluator& ge, double theta) {
    cplx t = std::polar(1.0, theta);
    kahan_sum s;
    for (const OrbitEntry& e : ge.orbit.entries)
        s.add((1.0 - abs2(e.point)) / abs2(t - e.point));
    return std::log(std::max(s.value(), 1e-300));
}

OuterRule build_outer_rule(const GreenEvaluator& ge, double abstol) {
    // Breakpoints: a uniform base partition (so no stored panel is ever wider
    // than the Herglotz kernel's smoothness scale for interior points), plus
    // dyadic collars around every near-circle orbit point and fixed point,
    // matched to the known Poisson-spike scales.
    std::vector<double> brk;
    const int kUniform = 64;
    for (int j = 0; j <= kUniform; ++j) brk.push_back(-kPi + 2.0 * kPi * j / kUniform);
    auto add_collar = [&](double phi, double scale) {
        brk.push_back(std::remainder(phi, 2.0 * kPi));
        for (double s = scale; s < 1.0; s *= 4.0) {
            brk.push_back(std::remainder(phi - s, 2.0 * kPi));
            brk.push_back(std::remainder(phi + s, 2.0 * kPi));
        }
    };
    double smin = 1.0;
    for (const OrbitEntry& e : ge.orbit.entries) {
        if (e.deficiency < 0.2) {
            add_collar(std::arg(e.point), std::max(e.deficiency, 1e-13));
            smin = std::min(smin, std::max(e.deficiency, 1e-13));
        }
    }
    for (cplx p : ge.singular_points) add_collar(std::arg(p), smin);
    std::sort(brk.begin(), brk.end());
    brk.front() = -kPi;
    brk.back() = kPi;
    brk.erase(std::unique(brk.begin(), brk.end(),
                          [](double a, double b) { return std::abs(a - b) < 1e-13; }),
              brk.end());

    const GaussRule& gl = gauss_rule(16);
    struct Panel {
        double a, b, tol;
    };
    std::vector<Panel> stack;
    const double total = 2.0 * kPi;
    for (std::size_t i = brk.size() - 1; i >= 1; --i)
        stack.push_back({brk[i - 1], brk[i], abstol * (brk[i] - brk[i - 1]) / total});

    OuterRule rule;
    double node[32], data[32];
    while (!stack.empty()) {
        Panel p = stack.back();
        stack.pop_back();
        double mid = 0.5 * (p.a + p.b);
        double c1 = 0.5 * (p.a + mid), c2 = 0.5 * (mid + p.b);
        double h2 = 0.5 * (p.b - p.a), h4 = 0.5 * h2;
        kahan_sum coarse, fine;
        for (int i = 0; i < 16; ++i) {
            double x = mid + h2 * gl.x[i];
            coarse.add(gl.w[i] * boundary_log_abs_g_prime(ge, x));
            node[i] = c1 + h4 * gl.x[i];
            node[16 + i] = c2 + h4 * gl.x[i];
            data[i] = boundary_log_abs_g_prime(ge, node[i]);
            data[16 + i] = boundary_log_abs_g_prime(ge, node[16 + i]);
            fine.add(gl.w[i] * (data[i] + data[16 + i]));
        }
        double err = std::abs(h4 * fine.value() - h2 * coarse.value());
        if (err <= std::max(p.tol, 1e-12 * std::abs(h4 * fine.value())) ||
            (p.b - p.a) < 1e-13) {
            // store the two halves (their nodes are already evaluated)
            rule.pa.push_back(p.a);
            rule.pb.push_back(mid);
            rule.pa.push_back(mid);
            rule.pb.push_back(p.b);
            for (int i = 0; i < 32; ++i) {
                rule.theta.push_back(node[i]);
                rule.lm.push_back(data[i]);
            }
        } else {
            stack.push_back({mid, p.b, 0.5 * p.tol});
            stack.push_back({p.a, mid, 0.5 * p.tol});
        }
        if (rule.pa.size() + 2 * stack.size() > 400000)
            fail(errc::convergence, "outer-rule construction exceeded panel budget");
    }
    // deterministic panel order for the per-evaluation compensated sums
    std::vector<std::size_t> idx(rule.pa.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t i, std::size_t j) { return rule.pa[i] < rule.pa[j]; });
    OuterRule sorted;
    sorted.pa.reserve(idx.size());
    sorted.pb.reserve(idx.size());
    sorted.theta.reserve(16 * idx.size());
    sorted.lm.reserve(16 * idx.size());
    for (std::size_t i : idx) {
        sorted.pa.push_back(rule.pa[i]);
        sorted.pb.push_back(rule.pb[i]);
        for (int k = 0; k < 16; ++k) {
            sorted.theta.push_back(rule.theta[16 * i + k]);
            sorted.lm.push_back(rule.lm[16 * i + k]);
        }
    }
    return sorted;
}

InnerOuterSplit inner_outer_split(const GreenEvaluator& ge, const BoundaryGrid& grid) {
    check_grid_clearance(grid, ge.singular_points);
    InnerOuterSplit split;
    split.green = ge;
    split.grid = grid;
    split.logmod.resize(grid.M);
    kahan_sum mean;
    for (int j = 0; j < grid.M; ++j) {
        cplx t = grid_point(grid, j);
        double v = (t * boundary_log_derivative_raw(ge, t)).real();
        if (!(v > 0.0))
            fail(errc::internal, "boundary |g'| lost positivity on the split grid");
        double lm = std::log(v);
        if (lm < -700.0)
            fail(errc::validation, "degenerate boundary modulus: log|g'| below -700");
        split.logmod[j] = lm;
        mean.add(lm);
    }
    split.grid_log_mean = mean.value() / grid.M;
    split.rule = build_outer_rule(ge, split.herglotz_abstol);
    return split;
}

cplx split_outer_grid(const InnerOuterSplit& split, cplx z) {
    return outer_from_modulus(split.logmod, split.grid, z);
}

namespace {

/// Circular distance (mod 2*pi) from the interval [a, b] to the angle th0;
/// zero when th0 (up to full turns) lies inside the interval.
double panel_peak_distance(double a, double b, double th0) {
    double rel = th0 - a;
    rel -= 2.0 * kPi * std::floor(rel / (2.0 * kPi));
    if (rel <= b - a) return 0.0;
    double da = std::abs(std::remainder(th0 - a, 2.0 * kPi));
    double db = std::abs(std::remainder(th0 - b, 2.0 * kPi));
    return std::min(da, db);
}

}  // namespace

cplx split_outer(const InnerOuterSplit& split, cplx z) {
    if (std::abs(z) > 1.0 - 1e-14)
        fail(errc::invalid_argument, "outer evaluator requires an interior point");
    const GaussRule& gl = gauss_rule(16);
    const OuterRule& r = split.rule;
    const GreenEvaluator& ge = split.green;
    const double th0 = std::arg(z);
    const double d0 = std::max(1.0 - std::abs(z), 1e-14);
    auto kernel = [&](double th) {
        cplx t = std::polar(1.0, th);
        return (t + z) / (t - z);
    };
    // A stored panel is usable when its width is at most its distance to the
    // kernel peak at arg(z) (16-point Gauss then resolves the kernel to far
    // below the data tolerance); panels hugging the peak are subdivided with
    // fresh data evaluations until the same criterion holds at scale 1 - |z|.
    kahan_csum acc;
    std::vector<std::pair<double, double>> stack;
    for (std::size_t i = 0; i < r.pa.size(); ++i) {
        double a = r.pa[i], b = r.pb[i];
        if (b - a <= std::max(panel_peak_distance(a, b, th0), d0)) {
            double h2 = 0.5 * (b - a);
            for (int k = 0; k < 16; ++k)
                acc.add(gl.w[k] * h2 * kernel(r.theta[16 * i + k]) * r.lm[16 * i + k]);
            continue;
        }
        stack.push_back({a, b});
        while (!stack.empty()) {
            auto [sa, sb] = stack.back();
            stack.pop_back();
            if (sb - sa <= std::max(panel_peak_distance(sa, sb, th0), d0) || sb - sa < 1e-15) {
                double h2 = 0.5 * (sb - sa), mid = 0.5 * (sa + sb);
                for (int k = 0; k < 16; ++k) {
                    double th = mid + h2 * gl.x[k];
                    acc.add(gl.w[k] * h2 * kernel(th) * boundary_log_abs_g_prime(ge, th));
                }
            } else {
                double mid = 0.5 * (sa + sb);
                stack.push_back({mid, sb});
                stack.push_back({sa, mid});
            }
        }
    }
    return std::exp(acc.value() / (2.0 * kPi));
}

cplx split_delta(const InnerOuterSplit& split, cplx z) {
    return eval_g_prime(split.green, z) / split_outer(split, z);
}

cplx split_psi(const InnerOuterSplit& split, cplx z) { return 1.0 / split_outer(split, z); }

double split_definition_check(const InnerOuterSplit& split) {
    cplx o0 = split_outer_grid(split, 0.0);
    return std::abs(std::log(std::abs(o0)) - split.grid_log_mean);
}

Character character_delta(const InnerOuterSplit& split, const GroupSpec& spec,
                          const std::vector<cplx>& probes, double* max_spread,
                          double spread_tol) {
    auto d = [&](cplx z) { return split_delta(split, z); };
    return measure_character(d, spec, probes, max_spread, spread_tol);
}

namespace {

cplx ipow(cplx z, int n) {
    cplx out{1.0, 0.0};
    for (int i = 0; i < n; ++i) out *= z;
    return out;
}

/// One quadrature level: mean over M offset-equispaced points of
/// htilde * g'/g^{k+1} * (t - zeta), plus the winding mean of g'/g * (t - zeta).
void residue_level(int k, const std::function<cplx(cplx)>& htilde, const GreenEvaluator& ge,
                   cplx zeta, double radius, int M, cplx* value, cplx* winding) {
    kahan_csum sv, sw;
    for (int j = 0; j < M; ++j) {
        cplx t = zeta + std::polar(radius, 2.0 * kPi * (j + 0.5) / M);
        cplx g = eval_g(ge, t);
        cplx gp = eval_g_prime(ge, t);
        cplx dt = t - zeta;
        sv.add(htilde(t) * gp / ipow(g, k + 1) * dt);
        sw.add(gp / g * dt);
    }
    *value = sv.value() / double(M);
    *winding = sw.value() / double(M);
}

}  // namespace

cplx residue_derivative(int k, const std::function<cplx(cplx)>& htilde,
                        const GreenEvaluator& ge, cplx zeta, double radius, int M2,
                        std::vector<int>* doubling_history) {
    if (k < 0) fail(errc::invalid_argument, "derivative order must be non-negative");
    if (radius < 1e-8) fail(errc::invalid_argument, "residue radius below 1e-8");
    if (std::abs(zeta) + radius >= 1.0)
        fail(errc::invalid_argument, "residue circle leaves the open disk");
    if (M2 < 4) M2 = 4;
    cplx prev, prev_wind;
    residue_level(k, htilde, ge, zeta, radius, M2, &prev, &prev_wind);
    if (doubling_history) doubling_history->push_back(M2);
    for (int M = 2 * M2; M <= (1 << 16); M *= 2) {
        cplx cur, wind;
        residue_level(k, htilde, ge, zeta, radius, M, &cur, &wind);
        if (doubling_history) doubling_history->push_back(M);
        if (std::abs(cur - prev) <= 1e-10 * std::max(1.0, std::abs(cur))) {
            if (std::abs(wind - 1.0) > 1e-6)
                fail(errc::convergence,
                     "residue circle winding is not 1 (radius too large; encloses extra zeros)");
            return cur;
        }
        prev = cur;
    }
    fail(errc::convergence, "residue quadrature did not stabilize under doubling");
}

double residue_radius(const GreenEvaluator& ge) {
    double r = 0.1;
    r = std::min(r, 0.5 * (1.0 - std::abs(ge.zeta)));
    for (const OrbitEntry& e : ge.orbit.entries) {
        double d = std::abs(e.point - ge.zeta);
        if (d > 1e-13) r = std::min(r, 0.5 * d);
    }
    return r;
}

}  // namespace wc
