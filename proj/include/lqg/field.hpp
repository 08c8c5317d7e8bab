#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lqg/grid.hpp"

namespace lqg {

// Q = 2/gamma + gamma/2; +inf at gamma = 0.
double lqg_Q(double gamma);

// Regularized Gaussian free field at cell centers, normalized so the circle
// average over the unit circle about 0 vanishes. An optional -alpha0 log|z|
// singularity is recorded together with the gamma it was validated against.
struct FieldSample {
    GridSpec grid;
    std::vector<double> values;
    double alpha0 = 0.0;
    double gamma_ref = 0.0;
    std::uint64_t seed = 0;
    bool normalized = false;
};

// Zero-boundary box GFF synthesized spectrally: independent standard
// Gaussians per discrete sine mode scaled by (mode eigenvalue)^{-1/2},
// then the unit-circle average is subtracted. Deterministic in (grid, seed).
// The box must contain the unit normalization circle (half_width > 1 + spacing).
FieldSample sample_gff(const GridSpec& grid, std::uint64_t seed);

// Arithmetic mean of field values over circle_cells(center, radius).
double circle_average(const FieldSample& field, double center_x, double center_y, double radius);

FieldSample add_log_singularity(const FieldSample& field, double alpha0, double gamma);

// Per-cell circle average h_eps at radius epsilon (translation-invariant ring
// stencil); falls back to the raw cell value where the ring leaves the box.
std::vector<double> smoothed_values(const FieldSample& field, double epsilon);

}  // namespace lqg
