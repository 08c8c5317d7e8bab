#pragma once

#include <cstdint>
#include <vector>

#include "lqg/grid.hpp"
#include "lqg/measure.hpp"
#include "lqg/obstacle.hpp"

namespace lqg {

// Capacity IDLA (experimental): sequential random walkers from the origin,
// each carrying mass q = t / n_walkers, deposit into the unfilled
// capacity m(c) - filled(c) of every cell they visit and die when empty
// or when they exit the domain (remaining mass counts as leaked).
struct IdlaState {
    GridSpec grid;
    std::vector<double> filled;
    long walkers_done = 0;
    double quantum = 0.0;
    std::uint64_t seed = 0;
    double leaked = 0.0;
};

IdlaState run_idla(const LiouvilleMeasure& mu, double t, long n_walkers, const DomainMask& domain,
                   std::uint64_t seed);

// occupied-set mask {filled >= threshold_fraction * m}, default half capacity
std::vector<std::uint8_t> idla_mask(const IdlaState& state, const LiouvilleMeasure& mu,
                                    double threshold_fraction = 0.5);

struct IdlaComparison {
    double jaccard = 0.0;
    double symdiff_mass = 0.0;
};

IdlaComparison compare_idla_harmonic(const IdlaState& state, const Cluster& cluster,
                                     const LiouvilleMeasure& mu);

}  // namespace lqg
