#include "quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace wc {

namespace {

GaussRule build_gauss(int n) {
    GaussRule r;
    r.x.resize(n);
    r.w.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // Chebyshev-angle initial guess, then Newton on P_n
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        r.x[i] = -x;
        r.x[n - 1 - i] = x;
        double w = 2.0 / ((1.0 - x * x) * pp * pp);
        r.w[i] = w;
        r.w[n - 1 - i] = w;
    }
    return r;
}

}  // namespace

const GaussRule& gauss_rule(int n) {
    static std::map<int, GaussRule> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, build_gauss(n)).first;
    return it->second;
}

cplx adaptive_panel_integral(const std::function<void(const double*, cplx*, int)>& fn,
                             const std::vector<double>& brk, double abstol,
                             PanelStats* stats, int order, double min_width) {
    if (brk.size() < 2) fail(errc::invalid_argument, "adaptive integral needs an interval");
    const GaussRule& rule = gauss_rule(order);

    struct Panel {
        double a, b, tol;
    };
    std::vector<Panel> stack;
    const int npanels0 = int(brk.size()) - 1;
    for (int i = npanels0 - 1; i >= 0; --i)
        stack.push_back({brk[i], brk[i + 1], abstol / npanels0});

    std::vector<double> xs(3 * order);
    std::vector<cplx> ys(3 * order);
    kahan_csum total;
    int evals = 0, panels = 0;

    while (!stack.empty()) {
        Panel p = stack.back();
        stack.pop_back();
        double mid = 0.5 * (p.a + p.b);
        double h2 = 0.5 * (p.b - p.a), h4 = 0.5 * h2;
        double c1 = 0.5 * (p.a + mid), c2 = 0.5 * (mid + p.b);
        for (int i = 0; i < order; ++i) {
            xs[i] = mid + h2 * rule.x[i];        // whole panel
            xs[order + i] = c1 + h4 * rule.x[i];  // left half
            xs[2 * order + i] = c2 + h4 * rule.x[i];
        }
        fn(xs.data(), ys.data(), 3 * order);
        evals += 3 * order;
        kahan_csum whole, halves;
        for (int i = 0; i < order; ++i) {
            whole.add(rule.w[i] * ys[i]);
            halves.add(rule.w[i] * (ys[order + i] + ys[2 * order + i]));
        }
        cplx coarse = h2 * whole.value();
        cplx fine = h4 * halves.value();
        // the relative floor keeps kernel-peak panels (which hold O(1) of the
        // integral in a tiny width) from demanding sub-eps absolute agreement
        double accept = std::max(p.tol, 1e-12 * std::abs(fine));
        if (std::abs(fine - coarse) <= accept || (p.b - p.a) < min_width) {
            total.add(fine);
            ++panels;
        } else {
            stack.push_back({mid, p.b, 0.5 * p.tol});
            stack.push_back({p.a, mid, 0.5 * p.tol});
        }
        if (panels + int(stack.size()) > 2'000'000)
            fail(errc::convergence, "adaptive integral exceeded panel budget");
    }
    if (stats) {
        stats->evaluations = evals;
        stats->panels = panels;
    }
    return total.value();
}

}  // namespace wc
