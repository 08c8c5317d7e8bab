#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lqg/measure.hpp"
#include "lqg/rng.hpp"

using namespace lqg;

TEST_CASE("gamma zero is exact Lebesgue") {
    const GridSpec g = build_grid(64, 2.0);
    const FieldSample f = sample_gff(g, 11);
    const LiouvilleMeasure mu = build_measure(f, 0.0);
    const double cell = g.spacing * g.spacing;
    for (double m : mu.masses) CHECK(m == cell);
    CHECK(mu.gamma == 0.0);

    CHECK_THROWS_AS(build_measure(f, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(build_measure(f, -0.5), std::invalid_argument);

    // a log-singular field is bound to the gamma it was validated against
    const FieldSample sing = add_log_singularity(f, 0.5, 1.0);
    CHECK_THROWS_AS(build_measure(sing, 1.5), std::invalid_argument);
    CHECK_NOTHROW(build_measure(sing, 1.0));
}

TEST_CASE("masses are positive and finite, total mass finite") {
    const GridSpec g = build_grid(128, 3.0);
    for (std::uint64_t seed : {3ull, 4ull}) {
        const FieldSample f = sample_gff(g, seed);
        const LiouvilleMeasure mu = build_measure(f, 1.5);
        for (double m : mu.masses) {
            CHECK(m > 0.0);
            CHECK(std::isfinite(m));
        }
        CHECK(std::isfinite(total_mass(mu)));
        CHECK(ball_mass(mu, 0.0, 0.0, 1.0) > 0.0);
    }
}

TEST_CASE("constant field shift scales all masses by exp(gamma a)") {
    const GridSpec g = build_grid(64, 2.0);
    const FieldSample f = sample_gff(g, 21);
    const double gamma = 1.0, a = 0.37;
    FieldSample shifted = f;
    for (double& v : shifted.values) v += a;
    const LiouvilleMeasure mu = build_measure(f, gamma);
    const LiouvilleMeasure mu2 = build_measure(shifted, gamma);
    const double factor = std::exp(gamma * a);
    for (std::size_t c = 0; c < mu.masses.size(); ++c)
        CHECK(mu2.masses[c] == doctest::Approx(mu.masses[c] * factor).epsilon(1e-12));
}

TEST_CASE("Weyl scaling is exact for smooth shifts") {
    const GridSpec g = build_grid(64, 2.0);
    const FieldSample f = sample_gff(g, 22);
    const double gamma = 1.2;
    const LiouvilleMeasure mu = build_measure(f, gamma);

    auto check_shift = [&](auto&& fn) {
        FieldSample shifted = f;
        std::vector<double> shift(g.size());
        for (int iy = 0; iy < g.n; ++iy)
            for (int ix = 0; ix < g.n; ++ix) {
                shift[g.index(ix, iy)] = fn(g.cx(ix), g.cy(iy));
                shifted.values[g.index(ix, iy)] += shift[g.index(ix, iy)];
            }
        FieldSample shift_field;
        shift_field.grid = g;
        shift_field.values = shift;
        const auto shift_eps = smoothed_values(shift_field, 2.0 * g.spacing);
        const LiouvilleMeasure rebuilt = build_measure(shifted, gamma);
        for (std::size_t c = 0; c < mu.masses.size(); ++c) {
            const double scaled = mu.masses[c] * std::exp(gamma * shift_eps[c]);
            CHECK(rebuilt.masses[c] == doctest::Approx(scaled).epsilon(1e-12));
        }
    };
    check_shift([](double, double) { return 0.4; });
    check_shift([](double x, double) { return 0.3 * x; });
    check_shift([](double x, double y) { return 0.1 * (x * x - y * y); });
}

TEST_CASE("ball mass approximates disk area in the Lebesgue case") {
    const GridSpec g = build_grid(256, 1.0);
    const LiouvilleMeasure mu = lebesgue_measure(g);
    for (double r : {16.0 * g.spacing, 32.0 * g.spacing, 0.5}) {
        CHECK(ball_mass(mu, 0.0, 0.0, r) == doctest::Approx(M_PI * r * r).epsilon(0.03));
    }
    CHECK_THROWS_AS(ball_mass(mu, 0.9, 0.0, 0.5), std::invalid_argument);  // leaves grid
}

TEST_CASE("degenerate tiny balls") {
    const GridSpec g = build_grid(64, 1.0);
    const LiouvilleMeasure mu = lebesgue_measure(g);
    // centered at a cell center: exactly that cell
    const double cx = g.cx(20), cy = g.cy(33);
    CHECK(ball_mass(mu, cx, cy, 0.25 * g.spacing) == mu.at(20, 33));
    // centered at the origin corner, radius below half-diagonal: no centers inside
    CHECK(ball_mass(mu, 0.0, 0.0, 0.25 * g.spacing) == 0.0);
}

TEST_CASE("ball and annulus partition exactly") {
    const GridSpec g = build_grid(128, 2.0);
    const FieldSample f = sample_gff(g, 30);
    const LiouvilleMeasure mu = build_measure(f, 1.0);
    KeyedRng rng(77, 5);
    for (int rep = 0; rep < 20; ++rep) {
        const double cx = -0.5 + rng.next_unit();
        const double cy = -0.5 + rng.next_unit();
        const double r1 = 0.05 + 0.4 * rng.next_unit();
        const double r2 = r1 + 0.05 + 0.5 * rng.next_unit();
        const double whole = ball_mass(mu, cx, cy, r2);
        const double parts = ball_mass(mu, cx, cy, r1) + annulus_mass(mu, cx, cy, r1, r2);
        CHECK(parts == doctest::Approx(whole).epsilon(1e-12));
    }
}

TEST_CASE("annulus mass behavior") {
    const GridSpec g = build_grid(256, 1.0);
    const LiouvilleMeasure mu = lebesgue_measure(g);
    const double r1 = 8.0 * g.spacing, r2 = 32.0 * g.spacing;
    CHECK(annulus_mass(mu, 0.0, 0.0, r1, r2) ==
          doctest::Approx(M_PI * (r2 * r2 - r1 * r1)).epsilon(0.03));
    // shrinking annulus empties
    CHECK(annulus_mass(mu, 0.0, 0.0, r1, r1 * (1.0 + 1e-12)) == 0.0);
    CHECK_THROWS_AS(annulus_mass(mu, 0.0, 0.0, r2, r1), std::invalid_argument);

    // positive mass for any resolvable annulus, random measure included
    const GridSpec g2 = build_grid(128, 2.0);
    const FieldSample f = sample_gff(g2, 31);
    const LiouvilleMeasure mu2 = build_measure(f, 1.5);
    CHECK(annulus_mass(mu2, 0.2, 0.1, 0.1, 0.25) > 0.0);
}

TEST_CASE("volume growth exponents at gamma 1" * doctest::timeout(1200)) {
    // fraction of unit-disk cells violating eps^{4.5} <= mass(B_eps) <= eps^{0.5}
    const GridSpec g = build_grid(512, 1.5);
    const FieldSample f = sample_gff(g, 77);
    const LiouvilleMeasure mu = build_measure(f, 1.0);
    const double eps = 16.0 * g.spacing;
    const double lo = std::pow(eps, 4.5), hi = std::pow(eps, 0.5);
    long probed = 0, violated = 0;
    for (int iy = 0; iy < g.n; iy += 4)
        for (int ix = 0; ix < g.n; ix += 4) {
            const double x = g.cx(ix), y = g.cy(iy);
            if (x * x + y * y >= 1.0) continue;
            ++probed;
            const double m = ball_mass(mu, x, y, eps);
            if (m < lo || m > hi) ++violated;
        }
    CHECK(probed > 1000);
    CHECK(static_cast<double>(violated) / probed <= 0.05);
}
