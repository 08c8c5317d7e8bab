#include "lqg/field.hpp"

#include <fftw3.h>

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>

#include "lqg/rng.hpp"

namespace lqg {

double lqg_Q(double gamma) {
    if (gamma == 0.0) return std::numeric_limits<double>::infinity();
    return 2.0 / gamma + gamma / 2.0;
}

namespace {

std::mutex fftw_mutex;

// One cached in-place DST-I plan per size; executed via the new-array
// interface on fftw_malloc'd buffers (identical alignment guarantees).
struct PlanCache {
    std::map<int, std::pair<fftw_plan, double*>> plans;
    ~PlanCache() {
        for (auto& [n, entry] : plans) {
            fftw_destroy_plan(entry.first);
            fftw_free(entry.second);
        }
    }
};

fftw_plan dst2_plan(int n) {
    static PlanCache cache;
    std::lock_guard<std::mutex> lock(fftw_mutex);
    auto it = cache.plans.find(n);
    if (it != cache.plans.end()) return it->second.first;
    double* buf = fftw_alloc_real(static_cast<std::size_t>(n) * n);
    fftw_plan p = fftw_plan_r2r_2d(n, n, buf, buf, FFTW_RODFT00, FFTW_RODFT00, FFTW_ESTIMATE);
    if (p == nullptr) throw std::runtime_error("fftw plan creation failed");
    cache.plans.emplace(n, std::make_pair(p, buf));
    return p;
}

}  // namespace

FieldSample sample_gff(const GridSpec& grid, std::uint64_t seed) {
    if (grid.n < 16) throw std::invalid_argument("grid too small");
    if (!(grid.half_width > 1.0 + grid.spacing))
        throw std::invalid_argument("grid box must contain the unit normalization circle");

    const int n = grid.n;
    const std::size_t total = grid.size();
    fftw_plan plan = dst2_plan(n);

    double* buf = fftw_alloc_real(total);
    const KeyedRng rng(seed, rng_stream::gff_modes);
    const double pi = 3.14159265358979323846;
    const double two_pi = 2.0 * pi;
    const double coeff_norm = 1.0 / (2.0 * (n + 1.0));

    // mode (j, k) <-> sine frequencies (j+1, k+1); graph-Laplacian eigenvalue
    // lambda = 4 - 2cos(pi(j+1)/(n+1)) - 2cos(pi(k+1)/(n+1))
    std::vector<double> cosv(n);
    for (int j = 0; j < n; ++j) cosv[j] = std::cos(pi * (j + 1) / (n + 1.0));
    for (int k = 0; k < n; ++k) {
        for (int j = 0; j < n; ++j) {
            const double lambda = 4.0 - 2.0 * cosv[j] - 2.0 * cosv[k];
            const double amp = std::sqrt(two_pi / lambda) * coeff_norm;
            const std::uint64_t mode = static_cast<std::uint64_t>(k) * n + j;
            buf[mode] = amp * rng.normal_at(mode);
        }
    }

    fftw_execute_r2r(plan, buf, buf);

    FieldSample out;
    out.grid = grid;
    out.seed = seed;
    out.values.assign(buf, buf + total);
    fftw_free(buf);

    // pin h_1(0) = 0
    double mean = 0.0;
    const auto ring = circle_cells(grid, 0.0, 0.0, 1.0);
    for (const auto& [ix, iy] : ring) mean += out.values[grid.index(ix, iy)];
    mean /= static_cast<double>(ring.size());
    for (double& v : out.values) v -= mean;
    out.normalized = true;
    return out;
}

double circle_average(const FieldSample& field, double center_x, double center_y, double radius) {
    const GridSpec& g = field.grid;
    if (std::max(std::abs(center_x), std::abs(center_y)) + radius + 0.5 * g.spacing >
        g.half_width)
        throw std::invalid_argument("circle leaves the grid box");
    const auto ring = circle_cells(g, center_x, center_y, radius);
    double sum = 0.0;
    for (const auto& [ix, iy] : ring) sum += field.values[g.index(ix, iy)];
    return sum / static_cast<double>(ring.size());
}

FieldSample add_log_singularity(const FieldSample& field, double alpha0, double gamma) {
    const double q = lqg_Q(gamma);
    if (!(alpha0 < q))
        throw std::invalid_argument("alpha0 must satisfy alpha0 < Q = 2/gamma + gamma/2 = " +
                                    std::to_string(q));
    FieldSample out = field;
    out.alpha0 = alpha0;
    out.gamma_ref = gamma;
    if (alpha0 == 0.0) return out;
    const GridSpec& g = field.grid;
    const double cutoff = 0.5 * g.spacing;
    for (int iy = 0; iy < g.n; ++iy) {
        const double y = g.cy(iy);
        for (int ix = 0; ix < g.n; ++ix) {
            const double x = g.cx(ix);
            const double r = std::max(std::sqrt(x * x + y * y), cutoff);
            out.values[g.index(ix, iy)] -= alpha0 * std::log(r);
        }
    }
    return out;
}

std::vector<double> smoothed_values(const FieldSample& field, double epsilon) {
    const GridSpec& g = field.grid;
    if (epsilon < g.spacing) throw std::invalid_argument("smoothing radius under-resolved");
    const int n = g.n;

    // ring offsets about any cell center
    std::vector<std::pair<int, int>> offsets;
    const double half = 0.5 * g.spacing;
    const int reach = static_cast<int>(std::ceil((epsilon + half) / g.spacing)) + 1;
    for (int dy = -reach; dy <= reach; ++dy)
        for (int dx = -reach; dx <= reach; ++dx) {
            const double dist = g.spacing * std::sqrt(double(dx) * dx + double(dy) * dy);
            if (std::abs(dist - epsilon) < half) offsets.emplace_back(dx, dy);
        }
    if (offsets.empty()) throw std::runtime_error("empty smoothing ring");

    std::vector<double> out(g.size());
    const double inv = 1.0 / static_cast<double>(offsets.size());
    for (int iy = 0; iy < n; ++iy) {
        for (int ix = 0; ix < n; ++ix) {
            const std::size_t c = g.index(ix, iy);
            if (ix - reach < 0 || ix + reach >= n || iy - reach < 0 || iy + reach >= n) {
                bool inside = true;
                double sum = 0.0;
                for (const auto& [dx, dy] : offsets) {
                    const int jx = ix + dx;
                    const int jy = iy + dy;
                    if (!g.in_bounds(jx, jy)) {
                        inside = false;
                        break;
                    }
                    sum += field.values[g.index(jx, jy)];
                }
                out[c] = inside ? sum * inv : field.values[c];
            } else {
                double sum = 0.0;
                const long long base = static_cast<long long>(c);
                for (const auto& [dx, dy] : offsets)
                    sum += field.values[static_cast<std::size_t>(base + static_cast<long long>(dy) * n + dx)];
                out[c] = sum * inv;
            }
        }
    }
    return out;
}

}  // namespace lqg
