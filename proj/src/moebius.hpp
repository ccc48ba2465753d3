#pragma once

#include <array>

#include "common.hpp"

namespace wc {

/// Möbius transformation z -> (az+b)/(cz+d), stored det-normalized (ad-bc = 1).
/// The global sign of the matrix is not meaningful; maps are compared by their
/// action on points, never entrywise.
struct MoebiusMap {
    cplx a{1.0}, b{0.0}, c{0.0}, d{1.0};
};

enum class MapKind { identity, elliptic, parabolic, hyperbolic };

struct Classification {
    MapKind kind = MapKind::identity;
    double multiplier = 1.0;  // hyperbolic: real lambda > 1
    cplx attracting{0.0};     // hyperbolic: circle fixed points
    cplx repelling{0.0};
};

/// Normalize an (a,b;c,d) matrix to determinant 1. Throws invalid_argument on
/// a (numerically) singular matrix.
MoebiusMap make_moebius(cplx a, cplx b, cplx c, cplx d);

/// z -> phase*(z - center)/(1 - conj(center)*z); |center| < 1, |phase| = 1.
MoebiusMap make_disk_automorphism(cplx center, cplx phase);

MoebiusMap identity_map();

cplx map_apply(const MoebiusMap& m, cplx z);       // pole guarded at 1e-300
cplx map_derivative(const MoebiusMap& m, cplx z);  // 1/(cz+d)^2

MoebiusMap compose(const MoebiusMap& m1, const MoebiusMap& m2);
MoebiusMap inverse(const MoebiusMap& m);

Classification classify(const MoebiusMap& m);

/// Action-based equality (entry comparison is meaningless up to sign).
bool same_map(const MoebiusMap& m1, const MoebiusMap& m2, double tol = 1e-12);

}  // namespace wc
