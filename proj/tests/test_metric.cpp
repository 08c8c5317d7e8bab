#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lqg/metric.hpp"
#include "lqg/rng.hpp"

using namespace lqg;

namespace {

FieldSample flat_field(const GridSpec& g, double value = 0.0) {
    FieldSample f;
    f.grid = g;
    f.values.assign(g.size(), value);
    return f;
}

}  // namespace

TEST_CASE("xi zero gives the scaled l1 graph distance") {
    const GridSpec g = build_grid(64, 1.0);
    const FieldSample f = flat_field(g);
    const DistanceField d = distance_field(f, 0.0);
    CHECK(d.d[g.origin_index()] == 0.0);
    for (int iy = 0; iy < g.n; ++iy)
        for (int ix = 0; ix < g.n; ++ix) {
            const int steps = std::abs(ix - g.origin_ix) + std::abs(iy - g.origin_iy);
            CHECK(d.d[g.index(ix, iy)] ==
                  doctest::Approx(steps * g.spacing).epsilon(1e-12));
        }

    // l1 disk of radius u
    const double u = 0.3;
    const auto ball = metric_ball(d, u);
    for (int iy = 0; iy < g.n; ++iy)
        for (int ix = 0; ix < g.n; ++ix) {
            const int steps = std::abs(ix - g.origin_ix) + std::abs(iy - g.origin_iy);
            CHECK((ball[g.index(ix, iy)] != 0) == (steps * g.spacing < u));
        }
}

TEST_CASE("metric ball conventions and nesting") {
    const GridSpec g = build_grid(32, 1.0);
    const DistanceField d = distance_field(flat_field(g), 0.0);
    const auto empty = metric_ball(d, 0.0);
    for (auto v : empty) CHECK(v == 0);
    const auto tiny = metric_ball(d, 1e-12);
    std::size_t count = 0;
    for (auto v : tiny) count += v;
    CHECK(count == 1);
    CHECK(tiny[g.origin_index()] == 1);

    const auto b1 = metric_ball(d, 0.2);
    const auto b2 = metric_ball(d, 0.5);
    for (std::size_t c = 0; c < b1.size(); ++c)
        if (b1[c]) CHECK(b2[c] == 1);
}

TEST_CASE("constant field shift scales all distances") {
    const GridSpec g = build_grid(48, 2.0);
    const FieldSample f = sample_gff(g, 42);
    const double xi = 0.3, a = 0.8;
    FieldSample shifted = f;
    for (double& v : shifted.values) v += a;
    const DistanceField d1 = distance_field(f, xi);
    const DistanceField d2 = distance_field(shifted, xi);
    const double factor = std::exp(xi * a);
    for (std::size_t c = 0; c < d1.d.size(); ++c)
        CHECK(d2.d[c] == doctest::Approx(d1.d[c] * factor).epsilon(1e-12));
}

TEST_CASE("shortest-path fixed point and edge triangle inequality") {
    const GridSpec g = build_grid(48, 2.0);
    const FieldSample f = sample_gff(g, 43);
    const double xi = 0.4;
    const DistanceField d = distance_field(f, xi);
    const auto h_eps = smoothed_values(f, 2.0 * g.spacing);
    auto weight = [&](std::size_t a, std::size_t b) {
        return g.spacing * std::exp(0.5 * xi * (h_eps[a] + h_eps[b]));
    };
    for (int iy = 0; iy < g.n; ++iy)
        for (int ix = 0; ix < g.n; ++ix) {
            const std::size_t c = g.index(ix, iy);
            double best = std::numeric_limits<double>::infinity();
            const int dx[4] = {-1, 1, 0, 0};
            const int dy[4] = {0, 0, -1, 1};
            for (int k = 0; k < 4; ++k) {
                if (!g.in_bounds(ix + dx[k], iy + dy[k])) continue;
                const std::size_t nb = g.index(ix + dx[k], iy + dy[k]);
                const double w = weight(c, nb);
                CHECK(std::abs(d.d[c] - d.d[nb]) <= w * (1.0 + 1e-12));
                best = std::min(best, d.d[nb] + w);
            }
            if (c != g.origin_index())
                CHECK(d.d[c] == doctest::Approx(best).epsilon(1e-12));
        }
}

TEST_CASE("distance symmetry spot checks") {
    const GridSpec g = build_grid(48, 2.0);
    const FieldSample f = sample_gff(g, 44);
    const DistanceField from_origin = distance_field(f, 0.35);
    KeyedRng rng(9, 1);
    for (int k = 0; k < 10; ++k) {
        const int ix = static_cast<int>(rng.next_below(g.n));
        const int iy = static_cast<int>(rng.next_below(g.n));
        const DistanceField back = distance_field_from(f, 0.35, ix, iy);
        CHECK(back.d[g.origin_index()] ==
              doctest::Approx(from_origin.d[g.index(ix, iy)]).epsilon(1e-12));
    }
}

TEST_CASE("xi lookup at gamma sqrt(8/3)") {
    CHECK(xi_sqrt83() == doctest::Approx(std::sqrt(8.0 / 3.0) / 4.0).epsilon(1e-15));
    CHECK(xi_sqrt83() == doctest::Approx(0.40825).epsilon(1e-4));
}

TEST_CASE("equal-mass metric ball") {
    const GridSpec g = build_grid(128, 1.0);
    const LiouvilleMeasure mu = lebesgue_measure(g);
    const DistanceField d = distance_field(flat_field(g), 0.0);
    const double t = 0.05;
    double u = 0.0;
    const auto mask = metric_ball_of_mass(d, mu, t, &u);
    CHECK(u > 0.0);
    double mass = 0.0;
    std::size_t cells = 0;
    for (std::size_t c = 0; c < mask.size(); ++c)
        if (mask[c]) {
            mass += mu.masses[c];
            ++cells;
        }
    // granularity: one equal-distance shell of the l1 disk
    const int ring = static_cast<int>(u / g.spacing) + 1;
    CHECK(std::abs(mass - t) <= 4.0 * ring * g.spacing * g.spacing);
    // result is the l1 disk
    for (std::size_t c = 0; c < mask.size(); ++c)
        CHECK((mask[c] != 0) == (d.d[c] < u));

    CHECK_THROWS_AS(metric_ball_of_mass(d, mu, 2.0 * total_mass(mu), nullptr),
                    std::invalid_argument);
}

TEST_CASE("deterministic ties resolve toward smaller u") {
    const GridSpec g = build_grid(32, 1.0);
    const LiouvilleMeasure mu = lebesgue_measure(g);
    const DistanceField d = distance_field(flat_field(g), 0.0);
    // l1 shells have equal mass at many radii; matching exactly one shell's
    // cumulative mass must choose that shell, not a larger equal-error one
    double target = 0.0;
    for (std::size_t c = 0; c < d.d.size(); ++c)
        if (d.d[c] < 3.5 * g.spacing) target += mu.masses[c];
    double u = 0.0;
    const auto mask = metric_ball_of_mass(d, mu, target, &u);
    double got = 0.0;
    for (std::size_t c = 0; c < mask.size(); ++c)
        if (mask[c]) got += mu.masses[c];
    CHECK(got == doctest::Approx(target).epsilon(1e-12));
}
