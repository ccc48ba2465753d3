#pragma once

#include <array>
#include <functional>
#include <vector>

#include "moebius.hpp"

namespace wc {

enum class GroupStructure { cyclic, free_group };

/// Finitely generated discrete group of disk automorphisms. All generators
/// must be hyperbolic; the cyclic structure admits exactly one generator.
struct GroupSpec {
    std::vector<MoebiusMap> generators;
    GroupStructure structure = GroupStructure::cyclic;
};

GroupSpec make_group_spec(std::vector<MoebiusMap> generators, GroupStructure structure);

/// One letter of a reduced word: generator index and exponent sign (+1/-1).
struct WordLetter {
    int gen = 0;
    int sign = 1;
};
using Word = std::vector<WordLetter>;  // empty = identity; adjacent letters never cancel

struct OrbitEntry {
    Word word;
    MoebiusMap map;
    cplx point;         // gamma(base)
    double deficiency;  // 1 - |point|
};

/// Truncated orbit {gamma(base)} sorted by deficiency descending, with a
/// certified geometric bound on the omitted deficiency sum.
struct Orbit {
    cplx base{};
    std::vector<OrbitEntry> entries;
    double tail_bound = 0.0;
    int levels = 0;  // completed BFS word lengths
};

/// Breadth-first enumeration over reduced words by word length; whole levels
/// are always completed (keeps the truncated word set closed under inversion,
/// which downstream orbit sums rely on). Stops once the frontier's geometric
/// tail estimate drops below tail_tol.
Orbit enumerate_orbit(const GroupSpec& spec, cplx base, double tail_tol,
                      std::size_t max_elements = 20000);

/// Truncated Widom sum: sum of deficiencies in the fixed descending order.
/// The certified remainder lives separately in orbit.tail_bound.
double widom_sum(const Orbit& orbit);

/// Unimodular character: one value per generator, extended multiplicatively.
struct Character {
    std::vector<cplx> gen_values;
};

cplx evaluate_character(const Character& chi, const Word& word);

/// Measure the character of an automorphic function u (u(gamma z) = alpha * u(z))
/// by direct ratios at probe points. Consistency across probes and unit modulus
/// are enforced at spread_tol (callers working with truncated products widen it
/// to track the truncation bound); the returned values are projected to unit
/// modulus. The measured spreads are written to *max_spread when non-null.
Character measure_character(const std::function<cplx(cplx)>& u, const GroupSpec& spec,
                            const std::vector<cplx>& probes, double* max_spread = nullptr,
                            double spread_tol = 1e-6);

/// Fundamental arcs of a cyclic group on the circle: [t0, gamma(t0)) and
/// [s0, gamma(s0)), one per component of the circle minus the two fixed points.
/// Arcs are stored by their endpoints; translates tile the circle.
struct CircleArc {
    cplx start{};
    cplx end{};
};

std::array<CircleArc, 2> fundamental_arcs(const GroupSpec& spec, cplx anchor);

}  // namespace wc
