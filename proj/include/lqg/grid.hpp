#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace lqg {

// Square grid of n x n cells covering [-half_width, half_width]^2.
// Cell (ix, iy) has center ((ix - n/2 + 0.5) * spacing, (iy - n/2 + 0.5) * spacing);
// storage is row-major, index = iy * n + ix. The origin cell is (n/2 - 1, n/2 - 1),
// center (-spacing/2, -spacing/2), the grid point nearest 0 under this convention.
struct GridSpec {
    int n = 0;
    double spacing = 0.0;
    double half_width = 0.0;
    int origin_ix = 0;
    int origin_iy = 0;

    std::size_t size() const { return static_cast<std::size_t>(n) * n; }
    std::size_t index(int ix, int iy) const { return static_cast<std::size_t>(iy) * n + ix; }
    std::size_t origin_index() const { return index(origin_ix, origin_iy); }
    bool in_bounds(int ix, int iy) const { return ix >= 0 && ix < n && iy >= 0 && iy < n; }

    double cx(int ix) const { return (ix - 0.5 * n + 0.5) * spacing; }
    double cy(int iy) const { return (iy - 0.5 * n + 0.5) * spacing; }

    // cell whose closed square contains (x, y); false if outside the grid
    bool locate(double x, double y, int& ix, int& iy) const;
};

GridSpec build_grid(int n, double half_width);

// Boolean disk mask: mask(c) true iff the cell center lies strictly inside
// the disk of `radius` about (center_x, center_y). Obstacle domains are
// always centered at the origin; offset disks serve diagnostics only.
struct DomainMask {
    int n = 0;
    std::vector<std::uint8_t> mask;
    double radius = 0.0;
    double center_x = 0.0;
    double center_y = 0.0;
    std::size_t cell_count = 0;

    bool contains(int ix, int iy) const {
        return ix >= 0 && ix < n && iy >= 0 && iy < n &&
               mask[static_cast<std::size_t>(iy) * n + ix] != 0;
    }
    bool centered_at_origin() const { return center_x == 0.0 && center_y == 0.0; }
};

DomainMask disk_domain(const GridSpec& grid, double radius);
DomainMask disk_region(const GridSpec& grid, double center_x, double center_y, double radius);

// Unnormalized 4-neighbor graph Laplacian with absorbing boundary:
// (Lu)(c) = sum_{c' ~ c} u(c') - 4 u(c), cells outside `domain` read as 0.
// Output is 0 outside the domain.
std::vector<double> discrete_laplacian(std::span<const double> values, const GridSpec& grid,
                                       const DomainMask& domain);

// Green's function of the masked Laplacian: L G = -1_{source} on the domain,
// G = 0 outside. Conjugate gradients to max-norm residual <= tol.
std::vector<double> discrete_green(const GridSpec& grid, const DomainMask& domain, int source_ix,
                                   int source_iy, double tol = 1e-10);

// Cells whose center lies within spacing/2 of the circle |z - center| = radius,
// in row-major order. radius must be >= spacing and the center on-grid.
std::vector<std::pair<int, int>> circle_cells(const GridSpec& grid, double center_x,
                                              double center_y, double radius);

}  // namespace lqg
