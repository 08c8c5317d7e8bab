#pragma once

#include <cstdint>
#include <vector>

#include "lqg/field.hpp"
#include "lqg/grid.hpp"

namespace lqg {

// gamma-Liouville measure at grid resolution: per-cell masses
// m(c) = eps^{gamma^2/2} exp(gamma h_eps(c)) spacing^2 with eps = 2 spacing.
// gamma = 0 is the exact Lebesgue oracle, m(c) = spacing^2.
struct LiouvilleMeasure {
    GridSpec grid;
    std::vector<double> masses;
    double gamma = 0.0;
    double epsilon = 0.0;
    std::uint64_t field_seed = 0;

    double at(int ix, int iy) const { return masses[grid.index(ix, iy)]; }
};

LiouvilleMeasure build_measure(const FieldSample& field, double gamma);
LiouvilleMeasure lebesgue_measure(const GridSpec& grid);

// Sum of masses over cell centers in the open ball. Half-open radial binning:
// ball(r) and annulus(r1, r2) = {r1 <= |z - center| < r2} partition exactly.
double ball_mass(const LiouvilleMeasure& mu, double center_x, double center_y, double radius);
double annulus_mass(const LiouvilleMeasure& mu, double center_x, double center_y, double r1,
                    double r2);

double total_mass(const LiouvilleMeasure& mu);

}  // namespace lqg
