#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lqg/grid.hpp"
#include "lqg/measure.hpp"
#include "lqg/obstacle.hpp"

namespace lqg {

// One named diagnostic: labeled values plus an optional pass verdict.
// pass is set only for checks with a declared tolerance; exploratory
// statistics leave it unset.
struct DiagnosticReport {
    std::string name;
    std::vector<std::pair<std::string, double>> values;
    std::optional<bool> pass;
    double tolerance = 0.0;
    std::string provenance;

    void add(const std::string& label, double value) { values.emplace_back(label, value); }
    std::string to_json() const;
};

std::string reports_to_json(const std::vector<DiagnosticReport>& reports);

// | mu-average of f over the cluster - f0 |, normalized by max(1, sup |f|)
double mean_value_residual(const Cluster& cluster, const LiouvilleMeasure& mu,
                           std::span<const double> f, double f0);

// Mean-value residuals for harmonic polynomials Re/Im z^k up to degree_max,
// for Green potentials of the domain with poles well outside the cluster, and
// the one-sided inequality for subharmonic probes |z - p|^2.
DiagnosticReport harmonic_test_suite(const Cluster& cluster, const LiouvilleMeasure& mu,
                                     const DomainMask& domain, int degree_max, int n_green_points,
                                     std::uint64_t probe_seed, double tolerance = 0.03);

DiagnosticReport conservation_check(const Cluster& cluster, const LiouvilleMeasure& mu, double t);

// mass of the mask cells adjacent to non-mask cells, over the cluster mass
double boundary_mass_fraction(const Cluster& cluster, const LiouvilleMeasure& mu);

// number of connected components of mask within B_{2 rho}(center) whose
// cell-adjacency closure meets both the rho/3 and the 2 rho circle rings
int crossing_count(const Cluster& cluster, double center_x, double center_y, double rho);

struct AnnulusFunctionals {
    double M = 0.0;   // inf over z in A_{rho/2,rho}, dyadic r, of mass(B_r(z)) / (r/rho)^{beta-}
    double SG = 0.0;  // sup over probes x of sum_y G_{B_2rho}(x,y) m(y), y in A_{rho/4,2rho}
};

AnnulusFunctionals annulus_functionals(const LiouvilleMeasure& mu, double center_x,
                                       double center_y, double rho, double beta_minus,
                                       int max_probes = 64);

// variable-aspect version SG_{r1,r2}(z): Green's function of B_{r2}(z),
// probes and mass both over the annulus A_{r1,r2}(z)
double annulus_sg(const LiouvilleMeasure& mu, double center_x, double center_y, double r1,
                  double r2, int max_probes = 64);

// Two-sample comparison of cluster statistics between {cluster in B_1 at t}
// and {1/r * cluster in B_r at A_r t}, A_r = exp(gamma (Q log r + h_r(0))),
// with fresh seeds per family. Gates on the rank-sum p-value of the areas.
DiagnosticReport scale_invariance_test(double gamma, double t, double r, int n_seeds, int n_grid,
                                       std::uint64_t seed0);

// max over consecutive clusters of symdiff mass / delta t (ideal value 1)
DiagnosticReport continuity_proxy(const std::vector<Cluster>& family,
                                  const LiouvilleMeasure& mu);

// exploratory (pass unset): crossing counts over a grid of (center, rho),
// reporting the max and the tail fraction with 2+ crossings
DiagnosticReport crossing_report(const Cluster& cluster, const LiouvilleMeasure& mu,
                                 int max_centers = 64);

// exploratory (pass unset): empirical max of
// mass(A_{r,2r}(z) ∩ cluster) / SG_{3r,6r}(z) over annuli whose outer shell
// leaves the cluster and whose 10r-ball avoids the origin
DiagnosticReport harmonic_chain_report(const Cluster& cluster, const LiouvilleMeasure& mu,
                                       int max_annuli = 12);

// exploratory (pass unset): box-counting of the mask boundary over dyadic
// box sizes, with the fitted log-log slope as a roughness estimate
DiagnosticReport boundary_roughness_report(const Cluster& cluster);

// two-sided Wilcoxon rank-sum p-value (normal approximation, tie-corrected)
double rank_sum_p_value(std::span<const double> a, std::span<const double> b);

double euclidean_area(const Cluster& cluster);
double euclidean_diameter(const Cluster& cluster);

}  // namespace lqg
