#include "moebius.hpp"

#include <cmath>

namespace wc {

MoebiusMap make_moebius(cplx a, cplx b, cplx c, cplx d) {
    cplx det = a * d - b * c;
    if (std::abs(det) < 1e-200)
        fail(errc::invalid_argument, "moebius matrix is singular");
    cplx s = std::sqrt(det);
    return {a / s, b / s, c / s, d / s};
}

MoebiusMap make_disk_automorphism(cplx center, cplx phase) {
    if (std::abs(center) >= 1.0)
        fail(errc::invalid_argument, "disk automorphism center must satisfy |a| < 1");
    if (std::abs(std::abs(phase) - 1.0) > 1e-12)
        fail(errc::invalid_argument, "disk automorphism phase must be unimodular");
    // phase*(z - center)/(1 - conj(center) z)
    return make_moebius(phase, -phase * center, -std::conj(center), 1.0);
}

MoebiusMap identity_map() { return MoebiusMap{}; }

cplx map_apply(const MoebiusMap& m, cplx z) {
    cplx den = m.c * z + m.d;
    if (std::abs(den) < 1e-300)
        fail(errc::pole, "moebius evaluation at pole");
    return (m.a * z + m.b) / den;
}

cplx map_derivative(const MoebiusMap& m, cplx z) {
    cplx den = m.c * z + m.d;
    if (std::abs(den) < 1e-300)
        fail(errc::pole, "moebius derivative at pole");
    return 1.0 / (den * den);
}

MoebiusMap compose(const MoebiusMap& m1, const MoebiusMap& m2) {
    // Plain matrix product, no renormalization: composing det-1 maps keeps
    // det = 1 in exact arithmetic, while recomputing the determinant here
    // cancels catastrophically once entries are large (hyperbolic powers:
    // cosh^2 - sinh^2 evaluates to 0 in doubles). The action is scale
    // invariant, and the derivative drift this admits scales like the
    // word's own deficiency, which keeps weighted orbit sums at machine
    // accuracy.
    return {m1.a * m2.a + m1.b * m2.c, m1.a * m2.b + m1.b * m2.d,
            m1.c * m2.a + m1.d * m2.c, m1.c * m2.b + m1.d * m2.d};
}

MoebiusMap inverse(const MoebiusMap& m) {
    return make_moebius(m.d, -m.b, -m.c, m.a);
}

bool same_map(const MoebiusMap& m1, const MoebiusMap& m2, double tol) {
    for (cplx z : {cplx(0.21, 0.05), cplx(-0.4, 0.33), cplx(0.07, -0.66)}) {
        if (std::abs(map_apply(m1, z) - map_apply(m2, z)) > tol) return false;
    }
    return true;
}

Classification classify(const MoebiusMap& m) {
    Classification out;
    if (same_map(m, identity_map())) {
        out.kind = MapKind::identity;
        return out;
    }
    // Disk automorphisms normalized to det 1 have real trace up to the global
    // sign ambiguity; rotate it real and classify by |tr| vs 2.
    cplx trc = m.a + m.d;
    double tr = std::abs(trc);
    if (std::abs(trc.real()) < std::abs(trc) * (1.0 - 1e-9) && std::abs(trc.imag()) > 1e-9)
        fail(errc::invalid_argument, "classify: trace not real; not a disk automorphism");

    if (tr > 2.0 + 1e-12) {
        out.kind = MapKind::hyperbolic;
        double half = tr / 2.0;
        double root = std::sqrt(half * half - 1.0);
        double mult = (half + root) * (half + root);
        out.multiplier = mult;
        // fixed points: c z^2 + (d-a) z - b = 0
        if (std::abs(m.c) < 1e-300) {
            // affine: fixed points at infinity excluded for disk automorphisms
            fail(errc::internal, "classify: hyperbolic disk map with c = 0");
        }
        cplx disc = std::sqrt((m.d - m.a) * (m.d - m.a) + 4.0 * m.c * m.b);
        cplx p1 = (-(m.d - m.a) + disc) / (2.0 * m.c);
        cplx p2 = (-(m.d - m.a) - disc) / (2.0 * m.c);
        // attracting fixed point p has |gamma'(p)| = 1/lambda < 1
        if (std::abs(map_derivative(m, p1)) < 1.0) {
            out.attracting = p1;
            out.repelling = p2;
        } else {
            out.attracting = p2;
            out.repelling = p1;
        }
        // snap to the circle (fixed points of hyperbolic disk maps lie on |z|=1)
        out.attracting /= std::abs(out.attracting);
        out.repelling /= std::abs(out.repelling);
    } else if (tr > 2.0 - 1e-12) {
        out.kind = MapKind::parabolic;
    } else {
        out.kind = MapKind::elliptic;
    }
    return out;
}

}  // namespace wc
