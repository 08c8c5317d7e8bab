#pragma once

#include <cstdint>
#include <vector>

#include "lqg/field.hpp"
#include "lqg/measure.hpp"

namespace lqg {

// Shortest-path approximation of the LQG distance from the origin cell:
// 4-neighbor Dijkstra with edge weight spacing * exp(xi (h_eps(c)+h_eps(c'))/2),
// h_eps the same circle-averaged field the measure uses.
struct DistanceField {
    GridSpec grid;
    std::vector<double> d;
    double xi = 0.0;
    std::uint64_t field_seed = 0;
};

DistanceField distance_field(const FieldSample& field, double xi);
// same weights, arbitrary source (symmetry spot checks)
DistanceField distance_field_from(const FieldSample& field, double xi, int source_ix,
                                  int source_iy);

// xi = gamma/d_gamma at gamma = sqrt(8/3), where d_{sqrt(8/3)} = 4.
inline double xi_sqrt83() { return 0.408248290463863016366214012450982; }

// {c : d(c) < u}; u = 0 is empty
std::vector<std::uint8_t> metric_ball(const DistanceField& dist, double u);

// smallest-u ball whose mass best matches t over the attained mass set
std::vector<std::uint8_t> metric_ball_of_mass(const DistanceField& dist,
                                              const LiouvilleMeasure& mu, double t,
                                              double* u_out = nullptr);

}  // namespace lqg
