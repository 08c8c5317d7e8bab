#include "lqg/grid.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>
#include <string>

namespace lqg {

bool GridSpec::locate(double x, double y, int& ix, int& iy) const {
    const int jx = static_cast<int>(std::floor(x / spacing + 0.5 * n));
    const int jy = static_cast<int>(std::floor(y / spacing + 0.5 * n));
    if (!in_bounds(jx, jy)) return false;
    ix = jx;
    iy = jy;
    return true;
}

GridSpec build_grid(int n, double half_width) {
    if (n < 16 || n % 2 != 0) throw std::invalid_argument("n must be even and >= 16");
    if (!(half_width > 0.0)) throw std::invalid_argument("half_width must be positive");
    GridSpec g;
    g.n = n;
    g.half_width = half_width;
    g.spacing = 2.0 * half_width / n;
    g.origin_ix = n / 2 - 1;
    g.origin_iy = n / 2 - 1;
    return g;
}

static DomainMask make_disk(const GridSpec& grid, double cx0, double cy0, double radius) {
    if (!(radius > 0.0)) throw std::invalid_argument("disk radius must be positive");
    DomainMask d;
    d.n = grid.n;
    d.radius = radius;
    d.center_x = cx0;
    d.center_y = cy0;
    d.mask.assign(grid.size(), 0);
    const double r2 = radius * radius;
    for (int iy = 0; iy < grid.n; ++iy) {
        const double dy = grid.cy(iy) - cy0;
        for (int ix = 0; ix < grid.n; ++ix) {
            const double dx = grid.cx(ix) - cx0;
            if (dx * dx + dy * dy < r2) {
                d.mask[grid.index(ix, iy)] = 1;
                ++d.cell_count;
            }
        }
    }
    return d;
}

DomainMask disk_domain(const GridSpec& grid, double radius) {
    return make_disk(grid, 0.0, 0.0, radius);
}

DomainMask disk_region(const GridSpec& grid, double center_x, double center_y, double radius) {
    return make_disk(grid, center_x, center_y, radius);
}

std::vector<double> discrete_laplacian(std::span<const double> values, const GridSpec& grid,
                                       const DomainMask& domain) {
    if (values.size() != grid.size()) throw std::invalid_argument("value/grid shape mismatch");
    const int n = grid.n;
    std::vector<double> out(grid.size(), 0.0);
    auto val = [&](int ix, int iy) -> double {
        return domain.contains(ix, iy) ? values[grid.index(ix, iy)] : 0.0;
    };
    for (int iy = 0; iy < n; ++iy) {
        for (int ix = 0; ix < n; ++ix) {
            if (!domain.contains(ix, iy)) continue;
            const double u = values[grid.index(ix, iy)];
            out[grid.index(ix, iy)] =
                val(ix - 1, iy) + val(ix + 1, iy) + val(ix, iy - 1) + val(ix, iy + 1) - 4.0 * u;
        }
    }
    return out;
}

// CG on -L restricted to the domain cells; -L is SPD there.
std::vector<double> discrete_green(const GridSpec& grid, const DomainMask& domain, int source_ix,
                                   int source_iy, double tol) {
    if (!domain.contains(source_ix, source_iy))
        throw std::invalid_argument("green: source outside domain");
    const int n = grid.n;

    std::vector<std::int32_t> id(grid.size(), -1);
    std::vector<std::int32_t> cells;
    cells.reserve(domain.cell_count);
    for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < n; ++ix)
            if (domain.contains(ix, iy)) {
                id[grid.index(ix, iy)] = static_cast<std::int32_t>(cells.size());
                cells.push_back(static_cast<std::int32_t>(grid.index(ix, iy)));
            }
    const std::size_t m = cells.size();
    if (m == 0) throw std::invalid_argument("green: empty domain");

    // neighbor table in compact indexing, -1 for absorbed
    std::vector<std::int32_t> nb(4 * m, -1);
    for (std::size_t k = 0; k < m; ++k) {
        const int ix = static_cast<int>(cells[k]) % n;
        const int iy = static_cast<int>(cells[k]) / n;
        const int dx[4] = {-1, 1, 0, 0};
        const int dy[4] = {0, 0, -1, 1};
        for (int d = 0; d < 4; ++d) {
            const int jx = ix + dx[d];
            const int jy = iy + dy[d];
            if (domain.contains(jx, jy)) nb[4 * k + d] = id[grid.index(jx, jy)];
        }
    }

    auto apply = [&](const std::vector<double>& x, std::vector<double>& y) {
        for (std::size_t k = 0; k < m; ++k) {
            double s = 4.0 * x[k];
            for (int d = 0; d < 4; ++d) {
                const std::int32_t j = nb[4 * k + d];
                if (j >= 0) s -= x[j];
            }
            y[k] = s;
        }
    };

    std::vector<double> x(m, 0.0), r(m, 0.0), p(m, 0.0), ap(m, 0.0);
    r[id[grid.index(source_ix, source_iy)]] = 1.0;
    p = r;
    double rs = 0.0;
    for (double v : r) rs += v * v;

    const std::size_t max_iter = 40 * m + 1000;
    for (std::size_t it = 0; it < max_iter; ++it) {
        double rmax = 0.0;
        for (double v : r) rmax = std::max(rmax, std::abs(v));
        if (rmax <= tol) break;
        apply(p, ap);
        double pap = 0.0;
        for (std::size_t k = 0; k < m; ++k) pap += p[k] * ap[k];
        const double alpha = rs / pap;
        for (std::size_t k = 0; k < m; ++k) {
            x[k] += alpha * p[k];
            r[k] -= alpha * ap[k];
        }
        double rs_new = 0.0;
        for (double v : r) rs_new += v * v;
        const double beta = rs_new / rs;
        rs = rs_new;
        for (std::size_t k = 0; k < m; ++k) p[k] = r[k] + beta * p[k];
    }

    std::vector<double> out(grid.size(), 0.0);
    for (std::size_t k = 0; k < m; ++k) out[cells[k]] = x[k];
    return out;
}

std::vector<std::pair<int, int>> circle_cells(const GridSpec& grid, double center_x,
                                              double center_y, double radius) {
    if (radius < grid.spacing) throw std::invalid_argument("circle under-resolved");
    int cix, ciy;
    if (!grid.locate(center_x, center_y, cix, ciy))
        throw std::invalid_argument("circle center outside grid");

    std::vector<std::pair<int, int>> out;
    const double half = 0.5 * grid.spacing;
    // scan only the band of rows the circle can touch
    const int iy_lo = std::max(0, static_cast<int>(std::floor((center_y - radius - half) / grid.spacing + 0.5 * grid.n)));
    const int iy_hi = std::min(grid.n - 1, static_cast<int>(std::ceil((center_y + radius + half) / grid.spacing + 0.5 * grid.n)));
    for (int iy = iy_lo; iy <= iy_hi; ++iy) {
        const double dy = grid.cy(iy) - center_y;
        for (int ix = 0; ix < grid.n; ++ix) {
            const double dx = grid.cx(ix) - center_x;
            const double dist = std::sqrt(dx * dx + dy * dy);
            if (std::abs(dist - radius) < half) out.emplace_back(ix, iy);
        }
    }
    if (out.empty()) throw std::runtime_error("circle_cells: no cells found");
    return out;
}

}  // namespace lqg
