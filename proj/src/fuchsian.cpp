#include "fuchsian.hpp"

#include <algorithm>
#include <cmath>

namespace wc {

GroupSpec make_group_spec(std::vector<MoebiusMap> generators, GroupStructure structure) {
    if (generators.empty())
        fail(errc::invalid_argument, "group spec needs at least one generator");
    if (structure == GroupStructure::cyclic && generators.size() != 1)
        fail(errc::invalid_argument, "cyclic group spec admits exactly one generator");
    for (std::size_t i = 0; i < generators.size(); ++i) {
        if (classify(generators[i]).kind != MapKind::hyperbolic)
            fail(errc::invalid_argument,
                 "generator " + std::to_string(i) + " is not hyperbolic");
    }
    return GroupSpec{std::move(generators), structure};
}

namespace {

bool word_less(const Word& a, const Word& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].gen != b[i].gen) return a[i].gen < b[i].gen;
        if (a[i].sign != b[i].sign) return a[i].sign > b[i].sign;  // +1 before -1
    }
    return false;
}

struct Frontier {
    Word word;
    MoebiusMap map;
    double deficiency;
};

}  // namespace

Orbit enumerate_orbit(const GroupSpec& spec, cplx base, double tail_tol,
                      std::size_t max_elements) {
    if (std::abs(base) >= 1.0)
        fail(errc::invalid_argument, "orbit base must lie strictly inside the disk");
    if (!(tail_tol > 0.0))
        fail(errc::invalid_argument, "tail_tol must be positive");

    const int ngen = int(spec.generators.size());
    std::vector<MoebiusMap> inv(ngen);
    for (int i = 0; i < ngen; ++i) inv[i] = inverse(spec.generators[i]);

    Orbit orbit;
    orbit.base = base;
    orbit.entries.push_back({Word{}, identity_map(), base, 1.0 - std::abs(base)});

    // children per frontier word: a free group on n generators branches into
    // 2n-1 non-cancelling extensions; the cyclic group into exactly one.
    const double branching =
        spec.structure == GroupStructure::cyclic ? 1.0 : double(2 * ngen - 1);

    std::vector<Frontier> frontier{{Word{}, identity_map(), 1.0 - std::abs(base)}};
    double achieved_bound = 1e300;

    while (true) {
        std::vector<Frontier> next;
        double level_sum = 0.0;
        double worst_ratio = 0.0;
        for (const Frontier& par : frontier) {
            for (int gi = 0; gi < ngen; ++gi) {
                for (int sign : {+1, -1}) {
                    if (!par.word.empty()) {
                        const WordLetter& last = par.word.back();
                        if (last.gen == gi && last.sign == -sign) continue;  // cancellation
                    }
                    Word w = par.word;
                    w.push_back({gi, sign});
                    MoebiusMap m =
                        compose(par.map, sign > 0 ? spec.generators[gi] : inv[gi]);
                    cplx pt = map_apply(m, base);
                    double def = 1.0 - std::abs(pt);
                    if (!(def > 0.0))
                        fail(errc::invalid_argument,
                             "orbit left the open disk; generators are not disk automorphisms");
                    next.push_back({std::move(w), m, def});
                    level_sum += def;
                    worst_ratio = std::max(worst_ratio, def / par.deficiency);
                }
            }
        }
        if (next.empty()) break;  // trivial branch structure exhausted (cannot happen)

        for (const Frontier& fr : next)
            orbit.entries.push_back({fr.word, fr.map, map_apply(fr.map, base), fr.deficiency});
        ++orbit.levels;

        // geometric tail certificate: each deeper level shrinks by at most
        // branching * worst_ratio, so the omitted sum is a geometric series.
        double c = branching * worst_ratio;
        if (c < 1.0) {
            achieved_bound = level_sum * c / (1.0 - c);
            if (achieved_bound < tail_tol) {
                orbit.tail_bound = achieved_bound;
                break;
            }
        }
        if (orbit.entries.size() + next.size() * std::size_t(branching + 1) > max_elements)
            fail(errc::truncation,
                 "orbit truncation failed to reach tail_tol before max_elements; best bound " +
                     std::to_string(achieved_bound));
        frontier = std::move(next);
    }

    // fixed global order: deficiency descending, ties broken by word
    std::sort(orbit.entries.begin(), orbit.entries.end(),
              [](const OrbitEntry& x, const OrbitEntry& y) {
                  if (x.deficiency != y.deficiency) return x.deficiency > y.deficiency;
                  return word_less(x.word, y.word);
              });

    // discrete groups acting freely never collide; a collision means bad input
    for (std::size_t i = 0; i < orbit.entries.size(); ++i)
        for (std::size_t j = i + 1; j < orbit.entries.size(); ++j)
            if (std::abs(orbit.entries[i].point - orbit.entries[j].point) <= 1e-13)
                fail(errc::invalid_argument,
                     "orbit points collide below 1e-13; group is not discrete "
                     "(or base is a fixed point)");
    return orbit;
}

double widom_sum(const Orbit& orbit) {
    kahan_sum s;
    for (const OrbitEntry& e : orbit.entries) s.add(e.deficiency);
    return s.value();
}

cplx evaluate_character(const Character& chi, const Word& word) {
    cplx v{1.0, 0.0};
    for (const WordLetter& l : word) {
        if (l.gen < 0 || l.gen >= int(chi.gen_values.size()))
            fail(errc::invalid_argument, "character evaluation: generator index out of range");
        cplx g = chi.gen_values[l.gen];
        v *= (l.sign > 0) ? g : std::conj(g);  // unimodular inverse = conjugate
    }
    return v;
}

Character measure_character(const std::function<cplx(cplx)>& u, const GroupSpec& spec,
                            const std::vector<cplx>& probes, double* max_spread,
                            double spread_tol) {
    if (probes.empty())
        fail(errc::invalid_argument, "measure_character needs at least one probe");
    Character chi;
    double worst = 0.0;
    for (const MoebiusMap& gen : spec.generators) {
        std::vector<cplx> ratios;
        ratios.reserve(probes.size());
        for (cplx z : probes) {
            cplx uz = u(z);
            if (std::abs(uz) < 1e-300)
                fail(errc::invalid_argument, "measure_character probe hit a zero of u");
            ratios.push_back(u(map_apply(gen, z)) / uz);
        }
        kahan_csum acc;
        for (cplx r : ratios) acc.add(r);
        cplx mean = acc.value() / double(ratios.size());
        double spread = 0.0;
        for (cplx r : ratios) spread = std::max(spread, std::abs(r - mean) / std::abs(mean));
        if (spread > spread_tol)
            fail(errc::not_automorphic,
                 "character ratios differ across probes by " + std::to_string(spread));
        if (std::abs(std::abs(mean) - 1.0) > spread_tol)
            fail(errc::not_automorphic,
                 "character value is not unimodular: |value| = " + std::to_string(std::abs(mean)));
        worst = std::max(worst, spread);
        chi.gen_values.push_back(mean / std::abs(mean));
    }
    if (max_spread) *max_spread = worst;
    return chi;
}

namespace {

/// Disk automorphism taking (repelling, axis midpoint, attracting) to (-1, 0, 1).
/// Gives standard position for a hyperbolic map: the axis becomes the real
/// diameter and the circle components become the upper/lower semicircles.
MoebiusMap standardizer(const Classification& cls) {
    cplx p = cls.attracting, r = cls.repelling;
    cplx m;
    if (std::abs(p + r) < 1e-9) {
        m = 0.0;  // axis is already a diameter
    } else {
        // center c of the geodesic circle through p, r orthogonal to the unit
        // circle satisfies Re(conj(c) p) = Re(conj(c) r) = 1
        double a11 = p.real(), a12 = p.imag();
        double a21 = r.real(), a22 = r.imag();
        double det = a11 * a22 - a12 * a21;
        if (std::abs(det) < 1e-14) fail(errc::internal, "degenerate hyperbolic axis");
        double cx = (a22 - a12) / det;
        double cy = (a11 - a21) / det;
        cplx c{cx, cy};
        double rad = std::sqrt(abs2(c) - 1.0);
        m = c * ((std::abs(c) - rad) / std::abs(c));
    }
    MoebiusMap a0 = make_disk_automorphism(m, 1.0);
    cplx img = map_apply(a0, p);
    return compose(make_moebius(1.0 / img, 0.0, 0.0, 1.0), a0);  // rotate image of p to 1
}

}  // namespace

std::array<CircleArc, 2> fundamental_arcs(const GroupSpec& spec, cplx anchor) {
    if (spec.structure != GroupStructure::cyclic)
        fail(errc::invalid_argument, "fundamental arcs are defined for cyclic groups only");
    const MoebiusMap& gen = spec.generators[0];
    Classification cls = classify(gen);
    anchor /= std::abs(anchor);
    if (std::abs(anchor - cls.attracting) < 1e-9 || std::abs(anchor - cls.repelling) < 1e-9)
        fail(errc::invalid_argument, "anchor degenerately close to a fixed point");

    // mirror the anchor into the other circle component through standard position
    MoebiusMap W = standardizer(cls);
    cplx mirrored = map_apply(inverse(W), std::conj(map_apply(W, anchor)));
    mirrored /= std::abs(mirrored);

    CircleArc first{anchor, map_apply(gen, anchor)};
    CircleArc second{mirrored, map_apply(gen, mirrored)};
    return {first, second};
}

}  // namespace wc
