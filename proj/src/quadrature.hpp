#pragma once

#include <functional>
#include <vector>

#include "common.hpp"

namespace wc {

/// Gauss–Legendre rule on [-1, 1]; nodes/weights computed once per order and
/// cached (Newton on the Legendre recurrence, accurate to machine precision).
struct GaussRule {
    std::vector<double> x, w;
};

const GaussRule& gauss_rule(int n);

struct PanelStats {
    int evaluations = 0;
    int panels = 0;
};

/// Adaptive panel integration of fn over the union [brk[0], brk[1]] ∪ ... .
/// Each panel is accepted when one Gauss pass agrees with its bisection to the
/// panel's share of abstol; otherwise the panel splits. Panels narrower than
/// min_width are accepted unconditionally (integrand bounded, measure-zero
/// contribution), which terminates the recursion at chirp-type boundary points
/// whose derivative structure continues to all scales.
cplx adaptive_panel_integral(const std::function<void(const double*, cplx*, int)>& fn,
                             const std::vector<double>& brk, double abstol,
                             PanelStats* stats = nullptr, int order = 16,
                             double min_width = 1e-14);

}  // namespace wc
