#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lqg/grid.hpp"
#include "lqg/measure.hpp"

namespace lqg {

enum class SolveMethod { sandpile, lcp };
enum class SweepOrder { row_major, reverse, permuted };

// Odometer of the discrete obstacle problem. v >= 0, v = 0 off the domain,
// and with s := t 1_origin + Lv (retained mass), 0 <= s <= m with
// s = m wherever v is meaningfully positive.
struct Odometer {
    GridSpec grid;
    std::vector<double> v;
    std::vector<double> retained;  // s = t 1_origin + Lv, recomputed at solve end
    double t = 0.0;
    DomainMask domain;
    double tol_rel = 0.0;
    double tol_mass = 0.0;  // tol_rel * anchor t, in mass units
    SolveMethod method = SolveMethod::sandpile;
    long sweeps = 0;
    double leaked = 0.0;  // mass destroyed at the absorbing boundary (sandpile only)
};

struct SolveOptions {
    double tol_rel = 1e-8;
    // nesting along a t family requires one threshold scale; 0 means "use t"
    double anchor_t = 0.0;
    long max_sweeps = 2000000;
    SweepOrder order = SweepOrder::row_major;
    std::uint64_t order_seed = 0;
    bool red_black = false;            // lcp only
    const Odometer* warm = nullptr;    // same measure/domain, smaller t
};

// Abelian toppling: mass t starts at the origin cell; any cell above its
// capacity m(c) sends the excess equally to its 4 neighbors (mass leaving the
// domain is destroyed). v accumulates excess/4 per toppling so that at the
// fixed point t 1_origin + Lv equals the retained mass.
Odometer solve_divisible_sandpile(const LiouvilleMeasure& mu, double t, const DomainMask& domain,
                                  const SolveOptions& opts = {});

// Projected Gauss-Seidel on the same complementarity system:
// v(c) <- max(0, (sum_nb v + t 1_origin(c) - m(c)) / 4), monotone from below.
Odometer solve_lcp(const LiouvilleMeasure& mu, double t, const DomainMask& domain,
                   const SolveOptions& opts = {});

struct Cluster {
    GridSpec grid;
    std::vector<std::uint8_t> mask;
    double t = 0.0;
    bool touched_boundary = false;
    double domain_radius = 0.0;
    std::size_t cell_count = 0;

    bool contains(int ix, int iy) const {
        return ix >= 0 && ix < grid.n && iy >= 0 && iy < grid.n &&
               mask[grid.index(ix, iy)] != 0;
    }
};

// Threshold the odometer: cells with v above 10x the solver tolerance, the
// origin, and filled cells adjacent to that core. Throws if the result is
// not 4-connected (solver non-convergence).
Cluster extract_cluster(const Odometer& od, const LiouvilleMeasure& mu);

double cluster_mass(const LiouvilleMeasure& mu, const Cluster& cluster);

struct GrowFamilyResult {
    std::vector<Cluster> clusters;  // one per completed t, never boundary-touching
    Odometer final_odometer;
    double final_radius = 0.0;
    std::vector<double> failed_t;   // t values the grid could not accommodate
    std::string error;

    bool ok() const { return failed_t.empty(); }
};

// Solve an increasing family of t values, warm-starting along t and doubling
// the domain radius (capped at 0.9 * half_width) whenever a cluster touches or
// comes within 4 cells of the domain boundary.
GrowFamilyResult grow_family(const LiouvilleMeasure& mu, const std::vector<double>& t_list,
                             double initial_radius, const SolveOptions& opts = {},
                             SolveMethod method = SolveMethod::sandpile);

}  // namespace lqg
