#include <doctest.h>

#include "annulus.hpp"
#include "hardy.hpp"

using namespace wc;

namespace {

struct AnnulusGreen {
    GroupSpec spec;
    GreenEvaluator ge;
};

AnnulusGreen annulus_green(double q, cplx zeta, double tail = 1e-12) {
    GroupSpec spec =
        make_group_spec({annulus_deck_generator(make_annulus(q))}, GroupStructure::cyclic);
    Orbit orbit = enumerate_orbit(spec, zeta, tail);
    return {spec, make_green(spec, orbit)};
}

cplx ipow_local(cplx b, int k) {
    cplx r = 1.0;
    for (int i = 0; i < k; ++i) r *= b;
    return r;
}

}  // namespace

TEST_CASE("poisson kernel: center, explicit value, unit boundary mean") {
    CHECK(poisson_kernel(0.0, std::polar(1.0, 0.7)) == doctest::Approx(1.0).epsilon(1e-15));
    // (1 - 0.25) / |1 - 0.5|^2 = 3
    CHECK(poisson_kernel(0.5, 1.0) == doctest::Approx(3.0).epsilon(1e-14));

    BoundaryGrid grid = make_grid(1024);
    std::vector<double> samples(grid.M);
    for (int j = 0; j < grid.M; ++j)
        samples[j] = poisson_kernel(cplx{0.3, 0.2}, grid_point(grid, j));
    CHECK(integrate_boundary_real(samples, grid) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("grid construction: power of two, offset, singular clearance") {
    BoundaryGrid grid = make_grid(8);
    CHECK(grid.M == 8);
    CHECK(grid.offset == doctest::Approx(kPi / 8).epsilon(1e-15));
    for (int j = 0; j < 8; ++j) {
        CHECK(std::abs(std::abs(grid_point(grid, j)) - 1.0) <= 1e-15);
        CHECK(std::abs(grid_point(grid, j) - std::polar(1.0, 2.0 * kPi * j / 8 + kPi / 8)) <=
              1e-15);
    }
    CHECK_THROWS_AS(make_grid(1000), error);
    // offset 0 puts t_0 = 1 exactly on the registered singular point
    CHECK_THROWS_AS(make_grid_offset(8, 0.0, {cplx{1.0, 0.0}}), error);
}

TEST_CASE("boundary integration: constants, mean of roots of unity, Poisson of t^2") {
    BoundaryGrid grid = make_grid(512);
    std::vector<cplx> constant(grid.M, cplx{2.5, -1.0});
    cplx c = integrate_boundary(constant, grid);
    CHECK(std::abs(c - cplx{2.5, -1.0}) <= 1e-14);

    std::vector<cplx> points(grid.M);
    for (int j = 0; j < grid.M; ++j) points[j] = grid_point(grid, j);
    CHECK(std::abs(integrate_boundary(points, grid)) <= 1e-15);

    // Poisson integral of the analytic monomial t^2 recovers zeta^2
    std::vector<cplx> weighted(grid.M);
    for (int j = 0; j < grid.M; ++j) {
        cplx t = grid_point(grid, j);
        weighted[j] = poisson_kernel(0.4, t) * t * t;
    }
    CHECK(std::abs(integrate_boundary(weighted, grid) - 0.16) <= 1e-12);
}

TEST_CASE("outer function from boundary modulus") {
    BoundaryGrid grid = make_grid(4096);

    std::vector<double> logmod(grid.M, std::log(2.0));
    cplx o = outer_from_modulus(logmod, grid, cplx{0.3, 0.1});
    CHECK(std::abs(o - 2.0) <= 1e-12);

    // 1 - z/2 is outer with positive value at 0, so the Herglotz
    // reconstruction returns the function itself
    for (int j = 0; j < grid.M; ++j)
        logmod[j] = std::log(std::abs(1.0 - grid_point(grid, j) / 2.0));
    cplx o3 = outer_from_modulus(logmod, grid, 0.3);
    CHECK(std::abs(o3 - 0.85) <= 1e-10);

    CHECK_THROWS_AS(outer_from_modulus(logmod, grid, cplx{1.0 - 1e-7, 0.0}), error);
}

TEST_CASE("check_outer: outer scores zero, inner scores its Green potential") {
    BoundaryGrid grid = make_grid(4096);
    CHECK(check_outer([](cplx z) { return 1.0 - z / 2.0; }, grid) <= 1e-10);

    // z is inner; from base 0.5 the deviation is exactly -log|0.5|
    auto id = [](cplx z) { return z; };
    CHECK_THROWS_AS(check_outer(id, grid, 0.0), error);
    CHECK(check_outer(id, grid, 0.5) == doctest::Approx(std::log(2.0)).epsilon(1e-6));
}

TEST_CASE("check_outer trapezoid error law on the uniformizer derivative") {
    // Lambda' is zero-free and outer; the equispaced Poisson sum carries a
    // log(4)/M aliasing floor, so the score must track that law, not zero.
    AnnulusSpec an = make_annulus(0.05);
    BoundaryGrid grid = make_grid(1 << 16);
    double dev = check_outer([&](cplx z) { return annulus_uniformizer_derivative(an, z); }, grid);
    double law = std::log(4.0) / grid.M;
    CHECK(std::abs(dev - law) <= 0.3 * law);
}

TEST_CASE("inner-outer split of the trivial factorization g = z") {
    GreenEvaluator ge = make_green_disk(0.0);  // g = z, g' = 1
    BoundaryGrid grid = make_grid(256);
    InnerOuterSplit split = inner_outer_split(ge, grid);
    CHECK(split_definition_check(split) <= 1e-13);
    for (cplx z : {cplx{0.0, 0.0}, cplx{0.4, -0.2}, cplx{-0.7, 0.1}}) {
        CHECK(std::abs(split_outer(split, z) - 1.0) <= 1e-10);
        CHECK(std::abs(split_delta(split, z) - 1.0) <= 1e-10);
        CHECK(std::abs(split_psi(split, z) - 1.0) <= 1e-10);
    }
}

TEST_CASE("annulus split: definition check and composite rule sanity") {
    AnnulusGreen ag = annulus_green(0.05, 0.3);
    BoundaryGrid grid = make_grid(4096, ag.ge.singular_points);
    InnerOuterSplit split = inner_outer_split(ag.ge, grid);

    CHECK(split_definition_check(split) <= 1e-12);

    const OuterRule& rule = split.rule;
    REQUIRE(!rule.pa.empty());
    CHECK(rule.pa.front() == doctest::Approx(-kPi).epsilon(1e-12));
    CHECK(rule.pb.back() == doctest::Approx(kPi).epsilon(1e-12));
    kahan_sum len;
    for (std::size_t i = 0; i < rule.pa.size(); ++i) {
        if (i > 0) CHECK(rule.pa[i] >= rule.pa[i - 1]);
        CHECK(rule.pb[i] > rule.pa[i]);
        len.add(rule.pb[i] - rule.pa[i]);
    }
    CHECK(std::abs(len.value() - 2.0 * kPi) <= 1e-9);
    CHECK(rule.theta.size() == 16 * rule.pa.size());
    CHECK(rule.lm.size() == rule.theta.size());
}

TEST_CASE("annulus split: outer factor is zero-free harmonic-log, Delta contractive") {
    AnnulusGreen ag = annulus_green(0.05, 0.3);
    BoundaryGrid grid = make_grid(4096, ag.ge.singular_points);
    InnerOuterSplit split = inner_outer_split(ag.ge, grid);

    // mean-value property of log|O| on the circle |z| = 0.5
    kahan_sum mv;
    const int n = 64;
    for (int j = 0; j < n; ++j) {
        cplx z = std::polar(0.5, 2.0 * kPi * (j + 0.5) / n);
        mv.add(std::log(std::abs(split_outer(split, z))));
    }
    double center = std::log(std::abs(split_outer(split, 0.0)));
    CHECK(std::abs(mv.value() / n - center) <= 1e-8);

    det_rng rng(0x517bd21u);
    for (int i = 0; i < 100; ++i) {
        cplx z = rng.disk_point(0.0, 0.95);
        CHECK(std::abs(split_delta(split, z)) <= 1.0 + 1e-6);
    }
}

TEST_CASE("boundary log|g'|: termwise Poisson pullback matches the direct sum") {
    AnnulusGreen ag = annulus_green(0.05, cplx{-0.25, 0.35});
    for (double theta : {0.3, 1.7, -2.2, 3.0}) {
        double direct = std::log(boundary_abs_g_prime(ag.ge, std::polar(1.0, theta)));
        CHECK(std::abs(boundary_log_abs_g_prime(ag.ge, theta) - direct) <= 1e-9);
    }
}

TEST_CASE("character of Delta: trivial on the trivial group, -1 on the annulus") {
    GreenEvaluator disk = make_green_disk(0.3);
    BoundaryGrid dgrid = make_grid(256);
    InnerOuterSplit dsplit = inner_outer_split(disk, dgrid);
    Character trivial = character_delta(dsplit, GroupSpec{}, {cplx{0.2, 0.1}});
    CHECK(trivial.gen_values.empty());

    AnnulusGreen ag = annulus_green(0.05, 0.3);
    BoundaryGrid grid = make_grid(4096, ag.ge.singular_points);
    InnerOuterSplit split = inner_outer_split(ag.ge, grid);
    std::vector<cplx> probes;
    for (int j = 0; j < 3; ++j) probes.push_back(std::polar(0.31, 2.0 * kPi * j / 3 + 0.37));
    double spread = 0.0;
    Character delta = character_delta(split, ag.spec, probes, &spread);
    REQUIRE(delta.gen_values.size() == 1);
    // the inner factor of g' flips sign under the deck generator here
    CHECK(std::abs(delta.gen_values[0] - cplx{-1.0, 0.0}) <= 1e-6);
    CHECK(spread <= 1e-6);
}

TEST_CASE("residue quadrature: zero-order residues and exact derivative orders") {
    GreenEvaluator ge = make_green_disk(0.3);

    // k = 0: (1/2*pi*i) oint t^2 g'/g dt = zeta^2
    cplx v0 = residue_derivative(
        0, [](cplx t) { return t * t; }, ge, 0.3, 0.1, 64);
    CHECK(std::abs(v0 - 0.09) <= 1e-12);

    // htilde = g^k * phi reduces the integrand to phi g'/g for any k
    cplx v2 = residue_derivative(
        2, [&](cplx t) { return ipow_local(eval_g(ge, t), 2) * (t * t + 1.0); }, ge, 0.3, 0.1,
        64);
    CHECK(std::abs(v2 - 1.09) <= 1e-11);
}

TEST_CASE("residue quadrature: k-th Taylor coefficient through the Green kernel") {
    // htilde = phi * g^{k+1} / ((t - zeta)^{k+1} g') turns the integrand into
    // phi / (t - zeta)^{k+1}, so the quadrature must return phi^{(k)}(zeta)/k!
    GreenEvaluator ge = make_green_disk(0.2);
    auto phi = [](cplx t) {
        cplx sum = 0.0, term = 1.0;
        for (int n = 1; n <= 20; ++n) {
            sum += term;
            term *= t / double(n);
        }
        return sum + term;  // degree-20 Taylor polynomial of exp
    };
    const int k = 3;
    auto htilde = [&](cplx t) {
        return phi(t) * ipow_local(eval_g(ge, t), k + 1) /
               (ipow_local(t - 0.2, k + 1) * eval_g_prime(ge, t));
    };
    std::vector<int> history;
    cplx v = residue_derivative(k, htilde, ge, 0.2, 0.1, 64, &history);
    CHECK(std::abs(v - std::exp(0.2) / 6.0) <= 1e-9);
    CHECK(history.size() >= 2);  // at least one doubling to certify agreement
}

TEST_CASE("residue quadrature: rejected configurations") {
    GreenEvaluator ge = make_green_disk(0.3);
    auto one = [](cplx) { return cplx{1.0, 0.0}; };
    CHECK_THROWS_AS(residue_derivative(-1, one, ge, 0.3, 0.1, 64), error);
    CHECK_THROWS_AS(residue_derivative(0, one, ge, 0.3, 1e-9, 64), error);
    // circle reaching |t| >= 1
    CHECK_THROWS_AS(residue_derivative(0, one, ge, 0.3, 0.7001, 64), error);

    // a circle enclosing deck translates of zeta has winding number > 1
    MoebiusMap gamma =
        make_moebius(std::cosh(0.4), std::sinh(0.4), std::sinh(0.4), std::cosh(0.4));
    GroupSpec spec = make_group_spec({gamma}, GroupStructure::cyclic);
    GreenEvaluator crowded = make_green(spec, enumerate_orbit(spec, 0.3, 1e-10));
    bool threw = false;
    try {
        residue_derivative(0, one, crowded, 0.3, 0.6, 64);
    } catch (const error& e) {
        threw = true;
        CHECK(e.code() == errc::convergence);
    }
    CHECK(threw);

    // the default radius stays clear of both neighbors and the circle
    double r = residue_radius(crowded);
    CHECK(r > 0.0);
    CHECK(r <= 0.1);
}
