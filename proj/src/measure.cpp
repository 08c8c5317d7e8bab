#include "lqg/measure.hpp"

#include <cmath>
#include <stdexcept>

namespace lqg {

LiouvilleMeasure build_measure(const FieldSample& field, double gamma) {
    if (!(gamma >= 0.0 && gamma < 2.0)) throw std::invalid_argument("gamma must be in [0, 2)");
    if (field.alpha0 != 0.0 && gamma != field.gamma_ref)
        throw std::invalid_argument("gamma must match the field's log-singularity gamma");

    if (gamma == 0.0) {
        LiouvilleMeasure mu = lebesgue_measure(field.grid);
        mu.field_seed = field.seed;
        return mu;
    }

    const GridSpec& g = field.grid;
    LiouvilleMeasure mu;
    mu.grid = g;
    mu.gamma = gamma;
    mu.epsilon = 2.0 * g.spacing;
    mu.field_seed = field.seed;
    mu.masses.resize(g.size());

    const std::vector<double> h_eps = smoothed_values(field, mu.epsilon);
    const double area = g.spacing * g.spacing;
    const double prefactor = std::pow(mu.epsilon, gamma * gamma / 2.0) * area;
    for (std::size_t c = 0; c < g.size(); ++c)
        mu.masses[c] = prefactor * std::exp(gamma * h_eps[c]);
    return mu;
}

LiouvilleMeasure lebesgue_measure(const GridSpec& grid) {
    LiouvilleMeasure mu;
    mu.grid = grid;
    mu.gamma = 0.0;
    mu.epsilon = 2.0 * grid.spacing;
    mu.masses.assign(grid.size(), grid.spacing * grid.spacing);
    return mu;
}

double ball_mass(const LiouvilleMeasure& mu, double center_x, double center_y, double radius) {
    const GridSpec& g = mu.grid;
    if (radius < 0.0) throw std::invalid_argument("radius must be nonnegative");
    if (std::max(std::abs(center_x), std::abs(center_y)) + radius > g.half_width + 0.5 * g.spacing)
        throw std::invalid_argument("ball leaves the grid");
    const double r2 = radius * radius;
    const int reach = static_cast<int>(std::ceil(radius / g.spacing)) + 1;
    int cix, ciy;
    if (!g.locate(center_x, center_y, cix, ciy))
        throw std::invalid_argument("ball center outside grid");
    double sum = 0.0;
    for (int iy = std::max(0, ciy - reach); iy <= std::min(g.n - 1, ciy + reach); ++iy) {
        const double dy = g.cy(iy) - center_y;
        for (int ix = std::max(0, cix - reach); ix <= std::min(g.n - 1, cix + reach); ++ix) {
            const double dx = g.cx(ix) - center_x;
            if (dx * dx + dy * dy < r2) sum += mu.masses[g.index(ix, iy)];
        }
    }
    return sum;
}

double annulus_mass(const LiouvilleMeasure& mu, double center_x, double center_y, double r1,
                    double r2) {
    if (!(r1 > 0.0 && r1 < r2)) throw std::invalid_argument("need 0 < r1 < r2");
    const GridSpec& g = mu.grid;
    if (std::max(std::abs(center_x), std::abs(center_y)) + r2 > g.half_width + 0.5 * g.spacing)
        throw std::invalid_argument("annulus leaves the grid");
    const double r1sq = r1 * r1;
    const double r2sq = r2 * r2;
    const int reach = static_cast<int>(std::ceil(r2 / g.spacing)) + 1;
    int cix, ciy;
    if (!g.locate(center_x, center_y, cix, ciy))
        throw std::invalid_argument("annulus center outside grid");
    double sum = 0.0;
    for (int iy = std::max(0, ciy - reach); iy <= std::min(g.n - 1, ciy + reach); ++iy) {
        const double dy = g.cy(iy) - center_y;
        for (int ix = std::max(0, cix - reach); ix <= std::min(g.n - 1, cix + reach); ++ix) {
            const double dx = g.cx(ix) - center_x;
            const double d2 = dx * dx + dy * dy;
            if (d2 >= r1sq && d2 < r2sq) sum += mu.masses[g.index(ix, iy)];
        }
    }
    return sum;
}

double total_mass(const LiouvilleMeasure& mu) {
    double sum = 0.0;
    for (double m : mu.masses) sum += m;
    return sum;
}

}  // namespace lqg
