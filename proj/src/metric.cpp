#include "lqg/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace lqg {

namespace {

DistanceField dijkstra(const FieldSample& field, double xi, std::size_t source) {
    if (!(xi >= 0.0)) throw std::invalid_argument("xi must be nonnegative");
    const GridSpec& g = field.grid;
    const int n = g.n;

    // half-exponent factors so an edge weight is spacing * f(c) * f(c')
    std::vector<double> f(g.size());
    if (xi == 0.0) {
        std::fill(f.begin(), f.end(), 1.0);
    } else {
        const std::vector<double> h_eps = smoothed_values(field, 2.0 * g.spacing);
        for (std::size_t c = 0; c < f.size(); ++c) f[c] = std::exp(0.5 * xi * h_eps[c]);
    }

    DistanceField out;
    out.grid = g;
    out.xi = xi;
    out.field_seed = field.seed;
    out.d.assign(g.size(), std::numeric_limits<double>::infinity());
    out.d[source] = 0.0;

    using Item = std::pair<double, std::uint32_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
    heap.emplace(0.0, static_cast<std::uint32_t>(source));
    while (!heap.empty()) {
        const auto [dc, cu] = heap.top();
        heap.pop();
        const std::size_t c = cu;
        if (dc > out.d[c]) continue;
        const int ix = static_cast<int>(c % n);
        const int iy = static_cast<int>(c / n);
        const int dx[4] = {-1, 1, 0, 0};
        const int dy[4] = {0, 0, -1, 1};
        for (int k = 0; k < 4; ++k) {
            const int jx = ix + dx[k];
            const int jy = iy + dy[k];
            if (!g.in_bounds(jx, jy)) continue;
            const std::size_t j = g.index(jx, jy);
            const double w = g.spacing * f[c] * f[j];
            const double dj = dc + w;
            if (dj < out.d[j]) {
                out.d[j] = dj;
                heap.emplace(dj, static_cast<std::uint32_t>(j));
            }
        }
    }
    return out;
}

}  // namespace

DistanceField distance_field(const FieldSample& field, double xi) {
    return dijkstra(field, xi, field.grid.origin_index());
}

DistanceField distance_field_from(const FieldSample& field, double xi, int source_ix,
                                  int source_iy) {
    if (!field.grid.in_bounds(source_ix, source_iy))
        throw std::invalid_argument("source outside grid");
    return dijkstra(field, xi, field.grid.index(source_ix, source_iy));
}

std::vector<std::uint8_t> metric_ball(const DistanceField& dist, double u) {
    if (!(u >= 0.0)) throw std::invalid_argument("u must be nonnegative");
    std::vector<std::uint8_t> mask(dist.d.size(), 0);
    for (std::size_t c = 0; c < dist.d.size(); ++c) mask[c] = dist.d[c] < u ? 1 : 0;
    return mask;
}

std::vector<std::uint8_t> metric_ball_of_mass(const DistanceField& dist,
                                              const LiouvilleMeasure& mu, double t,
                                              double* u_out) {
    if (dist.grid.n != mu.grid.n) throw std::invalid_argument("grid mismatch");
    if (!(t > 0.0)) throw std::invalid_argument("t must be positive");
    if (t > total_mass(mu)) throw std::invalid_argument("t exceeds reachable mass");

    // sort cells by distance; attained ball masses are the prefix sums
    std::vector<std::uint32_t> order(dist.d.size());
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        return dist.d[a] != dist.d[b] ? dist.d[a] < dist.d[b] : a < b;
    });

    double best_err = std::numeric_limits<double>::infinity();
    double best_u = 0.0;
    std::size_t best_len = 0;
    double mass = 0.0;
    for (std::size_t k = 0; k < order.size();) {
        // advance over a block of equal distances: a ball is a strict sublevel set
        std::size_t k2 = k;
        while (k2 < order.size() && dist.d[order[k2]] == dist.d[order[k]]) {
            mass += mu.masses[order[k2]];
            ++k2;
        }
        const double err = std::abs(mass - t);
        if (err < best_err) {
            best_err = err;
            best_len = k2;
            best_u = k2 < order.size() ? dist.d[order[k2]] : std::nextafter(dist.d[order[k2 - 1]],
                                                                            std::numeric_limits<double>::infinity());
        }
        k = k2;
    }

    std::vector<std::uint8_t> mask(dist.d.size(), 0);
    for (std::size_t k = 0; k < best_len; ++k) mask[order[k]] = 1;
    if (u_out != nullptr) *u_out = best_u;
    return mask;
}

}  // namespace lqg
