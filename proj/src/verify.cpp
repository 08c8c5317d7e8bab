#include "lqg/verify.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "lqg/field.hpp"
#include "lqg/parallel.hpp"
#include "lqg/rng.hpp"

namespace lqg {

namespace {

std::string json_escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
        if (ch == '"' || ch == '\\') out.push_back('\\');
        out.push_back(ch);
    }
    return out;
}

void append_json(std::ostringstream& os, const DiagnosticReport& r) {
    os << "{\"name\":\"" << json_escape(r.name) << "\",\"values\":[";
    for (std::size_t i = 0; i < r.values.size(); ++i) {
        if (i) os << ",";
        os << "{\"label\":\"" << json_escape(r.values[i].first) << "\",\"value\":";
        const double v = r.values[i].second;
        if (std::isfinite(v)) {
            std::ostringstream num;
            num.precision(17);
            num << v;
            os << num.str();
        } else {
            os << "null";
        }
        os << "}";
    }
    os << "],\"pass\":";
    if (r.pass.has_value())
        os << (*r.pass ? "true" : "false");
    else
        os << "null";
    os << ",\"tolerance\":" << r.tolerance;
    os << ",\"provenance\":\"" << json_escape(r.provenance) << "\"}";
}

}  // namespace

std::string DiagnosticReport::to_json() const {
    std::ostringstream os;
    append_json(os, *this);
    return os.str();
}

std::string reports_to_json(const std::vector<DiagnosticReport>& reports) {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < reports.size(); ++i) {
        if (i) os << ",";
        append_json(os, reports[i]);
    }
    os << "]";
    return os.str();
}

double mean_value_residual(const Cluster& cluster, const LiouvilleMeasure& mu,
                           std::span<const double> f, double f0) {
    if (f.size() != mu.grid.size()) throw std::invalid_argument("f/grid shape mismatch");
    if (cluster.grid.n != mu.grid.n) throw std::invalid_argument("grid mismatch");
    double num = 0.0, den = 0.0, sup = 0.0;
    for (std::size_t c = 0; c < f.size(); ++c) {
        if (!cluster.mask[c]) continue;
        if (!std::isfinite(f[c])) throw std::invalid_argument("f not finite on cluster");
        num += f[c] * mu.masses[c];
        den += mu.masses[c];
        sup = std::max(sup, std::abs(f[c]));
    }
    if (den <= 0.0) throw std::invalid_argument("cluster has zero mass");
    return std::abs(num / den - f0) / std::max(1.0, sup);
}

DiagnosticReport harmonic_test_suite(const Cluster& cluster, const LiouvilleMeasure& mu,
                                     const DomainMask& domain, int degree_max, int n_green_points,
                                     std::uint64_t probe_seed, double tolerance) {
    const GridSpec& g = mu.grid;
    DiagnosticReport rep;
    rep.name = "harmonic_test_suite";
    rep.tolerance = tolerance;
    rep.provenance = "degree_max=" + std::to_string(degree_max) +
                     " n_green_points=" + std::to_string(n_green_points);

    bool all_ok = true;
    double worst = 0.0;

    // harmonic polynomials Re z^k, Im z^k
    std::vector<double> f(g.size());
    for (int deg = 0; deg <= degree_max; ++deg) {
        for (int part = 0; part < (deg == 0 ? 1 : 2); ++part) {
            for (int iy = 0; iy < g.n; ++iy)
                for (int ix = 0; ix < g.n; ++ix) {
                    const std::complex<double> z(g.cx(ix), g.cy(iy));
                    const std::complex<double> zk = std::pow(z, deg);
                    f[g.index(ix, iy)] = part == 0 ? zk.real() : zk.imag();
                }
            const double f0 = deg == 0 ? 1.0 : 0.0;
            const double res = mean_value_residual(cluster, mu, f, f0);
            rep.add((part == 0 ? "poly_re_deg" : "poly_im_deg") + std::to_string(deg), res);
            worst = std::max(worst, res);
            if (res > tolerance) all_ok = false;
        }
    }

    // Green potentials of the domain with poles outside twice the cluster diameter
    const double diam = euclidean_diameter(cluster);
    const double lo = std::min(2.0 * diam, 0.8 * domain.radius);
    const double hi = 0.95 * domain.radius;
    KeyedRng rng(probe_seed, rng_stream::probe_points);
    int placed = 0;
    std::size_t attempts = 0;
    while (placed < n_green_points && attempts < 1000) {
        ++attempts;
        const double rad = lo + (hi - lo) * rng.next_unit();
        const double ang = 6.283185307179586 * rng.next_unit();
        int px, py;
        if (!g.locate(rad * std::cos(ang), rad * std::sin(ang), px, py)) continue;
        if (!domain.contains(px, py)) continue;
        if (cluster.mask[g.index(px, py)]) continue;
        const std::vector<double> green = discrete_green(g, domain, px, py);
        const double f0 = green[g.origin_index()];
        const double res = mean_value_residual(cluster, mu, green, f0);
        rep.add("green_potential_" + std::to_string(placed), res);
        worst = std::max(worst, res);
        if (res > tolerance) all_ok = false;
        ++placed;
    }
    if (placed < n_green_points) throw std::runtime_error("could not place Green probes");

    // one-sided inequality for subharmonic probes f = |z - p|^2,
    // scaled to the cluster size so the normalizer stays at 1
    const double scale = std::max(diam, 4.0 * g.spacing);
    const double probes[4][2] = {{0.0, 0.0}, {0.5, 0.0}, {0.0, -0.5}, {0.35, 0.35}};
    double min_slack = 0.0;
    for (const auto& p : probes) {
        const double px = p[0] * scale;
        const double py = p[1] * scale;
        double num = 0.0, den = 0.0, sup = 0.0;
        for (int iy = 0; iy < g.n; ++iy)
            for (int ix = 0; ix < g.n; ++ix) {
                const std::size_t c = g.index(ix, iy);
                if (!cluster.mask[c]) continue;
                const double dx = g.cx(ix) - px;
                const double dy = g.cy(iy) - py;
                const double val = dx * dx + dy * dy;
                num += val * mu.masses[c];
                den += mu.masses[c];
                sup = std::max(sup, std::abs(val));
            }
        const double f0 = px * px + py * py;
        const double slack = (num / den - f0) / std::max(1.0, sup);
        min_slack = std::min(min_slack, slack);
    }
    rep.add("subharmonic_min_slack", min_slack);
    if (min_slack < -1e-3) all_ok = false;

    rep.add("worst_residual", worst);
    rep.pass = all_ok;
    return rep;
}

DiagnosticReport conservation_check(const Cluster& cluster, const LiouvilleMeasure& mu,
                                    double t) {
    DiagnosticReport rep;
    rep.name = "conservation_check";
    rep.tolerance = 0.02;
    const double mass = cluster_mass(mu, cluster);
    const double ratio = mass / t;
    rep.add("cluster_mass", mass);
    rep.add("ratio", ratio);
    rep.add("touched_boundary", cluster.touched_boundary ? 1.0 : 0.0);
    const double tol_num = 1e-9;
    if (cluster.cell_count <= 1) {
        // single-cell cluster: grid-scale degenerate, report only
        return rep;
    }
    if (cluster.touched_boundary)
        rep.pass = ratio <= 1.0 + tol_num;
    else
        rep.pass = ratio <= 1.0 + tol_num && ratio >= 0.98;
    return rep;
}

double boundary_mass_fraction(const Cluster& cluster, const LiouvilleMeasure& mu) {
    const GridSpec& g = mu.grid;
    if (cluster.grid.n != g.n) throw std::invalid_argument("grid mismatch");
    double boundary = 0.0, total = 0.0;
    for (int iy = 0; iy < g.n; ++iy)
        for (int ix = 0; ix < g.n; ++ix) {
            const std::size_t c = g.index(ix, iy);
            if (!cluster.mask[c]) continue;
            total += mu.masses[c];
            if (!cluster.contains(ix - 1, iy) || !cluster.contains(ix + 1, iy) ||
                !cluster.contains(ix, iy - 1) || !cluster.contains(ix, iy + 1))
                boundary += mu.masses[c];
        }
    if (total <= 0.0) throw std::invalid_argument("cluster has zero mass");
    return boundary / total;
}

int crossing_count(const Cluster& cluster, double center_x, double center_y, double rho) {
    const GridSpec& g = cluster.grid;
    if (std::max(std::abs(center_x), std::abs(center_y)) + 2.0 * rho >
        g.half_width + 0.5 * g.spacing)
        throw std::invalid_argument("annulus leaves the grid");

    const double r_out = 2.0 * rho;
    const double r_in = rho / 3.0;
    const int reach = static_cast<int>(std::ceil(r_out / g.spacing)) + 1;
    int cix, ciy;
    if (!g.locate(center_x, center_y, cix, ciy))
        throw std::invalid_argument("center outside grid");

    const int x0 = std::max(0, cix - reach), x1 = std::min(g.n - 1, cix + reach);
    const int y0 = std::max(0, ciy - reach), y1 = std::min(g.n - 1, ciy + reach);
    const int wnx = x1 - x0 + 1, wny = y1 - y0 + 1;

    auto dist = [&](int ix, int iy) {
        const double dx = g.cx(ix) - center_x;
        const double dy = g.cy(iy) - center_y;
        return std::sqrt(dx * dx + dy * dy);
    };
    auto inside = [&](int ix, int iy) {
        return cluster.contains(ix, iy) && dist(ix, iy) < r_out;
    };

    std::vector<std::int32_t> comp(static_cast<std::size_t>(wnx) * wny, -1);
    int n_components = 0;
    int crossings = 0;
    const double half = 0.5 * g.spacing;
    for (int iy = y0; iy <= y1; ++iy)
        for (int ix = x0; ix <= x1; ++ix) {
            if (!inside(ix, iy)) continue;
            const std::size_t l = static_cast<std::size_t>(iy - y0) * wnx + (ix - x0);
            if (comp[l] >= 0) continue;
            // flood one component, tracking whether its closure meets both rings
            bool meets_inner = false, meets_outer = false;
            std::vector<std::pair<int, int>> stack{{ix, iy}};
            comp[l] = n_components;
            while (!stack.empty()) {
                const auto [px, py] = stack.back();
                stack.pop_back();
                const int dxs[4] = {-1, 1, 0, 0};
                const int dys[4] = {0, 0, -1, 1};
                // the closure (cell + neighbors) decides ring contact
                for (int ddy = -1; ddy <= 1; ++ddy)
                    for (int ddx = -1; ddx <= 1; ++ddx) {
                        if (std::abs(ddx) + std::abs(ddy) > 1) continue;
                        const int qx = px + ddx, qy = py + ddy;
                        if (!g.in_bounds(qx, qy)) continue;
                        const double d = dist(qx, qy);
                        if (std::abs(d - r_in) < half) meets_inner = true;
                        if (std::abs(d - r_out) < half) meets_outer = true;
                    }
                for (int k = 0; k < 4; ++k) {
                    const int qx = px + dxs[k], qy = py + dys[k];
                    if (qx < x0 || qx > x1 || qy < y0 || qy > y1) continue;
                    if (!inside(qx, qy)) continue;
                    const std::size_t ql = static_cast<std::size_t>(qy - y0) * wnx + (qx - x0);
                    if (comp[ql] < 0) {
                        comp[ql] = n_components;
                        stack.emplace_back(qx, qy);
                    }
                }
            }
            ++n_components;
            if (meets_inner && meets_outer) ++crossings;
        }
    return crossings;
}

AnnulusFunctionals annulus_functionals(const LiouvilleMeasure& mu, double center_x,
                                       double center_y, double rho, double beta_minus,
                                       int max_probes) {
    const GridSpec& g = mu.grid;
    if (rho < 16.0 * g.spacing) throw std::invalid_argument("annulus under-resolved");
    AnnulusFunctionals out;

    // M: inf over cell centers z in A_{rho/2, rho} and dyadic r in [4 spacing, rho/4]
    std::vector<double> radii;
    for (double r = rho / 4.0; r >= 4.0 * g.spacing; r /= 2.0) radii.push_back(r);
    double m_inf = std::numeric_limits<double>::infinity();
    const int reach = static_cast<int>(std::ceil(rho / g.spacing)) + 1;
    int cix, ciy;
    if (!g.locate(center_x, center_y, cix, ciy))
        throw std::invalid_argument("center outside grid");
    for (int iy = std::max(0, ciy - reach); iy <= std::min(g.n - 1, ciy + reach); ++iy)
        for (int ix = std::max(0, cix - reach); ix <= std::min(g.n - 1, cix + reach); ++ix) {
            const double dx = g.cx(ix) - center_x;
            const double dy = g.cy(iy) - center_y;
            const double d = std::sqrt(dx * dx + dy * dy);
            if (d < rho / 2.0 || d >= rho) continue;
            for (double r : radii) {
                const double ratio = ball_mass(mu, g.cx(ix), g.cy(iy), r) /
                                     std::pow(r / rho, beta_minus);
                m_inf = std::min(m_inf, ratio);
            }
        }
    out.M = m_inf;
    out.SG = annulus_sg(mu, center_x, center_y, rho / 4.0, 2.0 * rho, max_probes);
    return out;
}

double annulus_sg(const LiouvilleMeasure& mu, double center_x, double center_y, double r1,
                  double r2, int max_probes) {
    const GridSpec& g = mu.grid;
    if (!(r1 > 0.0 && r1 < r2)) throw std::invalid_argument("need 0 < r1 < r2");
    const DomainMask ball = disk_region(g, center_x, center_y, r2);
    if (ball.cell_count == 0) throw std::invalid_argument("ball outside grid");

    // annulus cells, subsampled deterministically to at most max_probes probes
    std::vector<std::pair<int, int>> annulus;
    const int reach = static_cast<int>(std::ceil(r2 / g.spacing)) + 1;
    int cix, ciy;
    if (!g.locate(center_x, center_y, cix, ciy))
        throw std::invalid_argument("center outside grid");
    for (int iy = std::max(0, ciy - reach); iy <= std::min(g.n - 1, ciy + reach); ++iy)
        for (int ix = std::max(0, cix - reach); ix <= std::min(g.n - 1, cix + reach); ++ix) {
            const double dx = g.cx(ix) - center_x;
            const double dy = g.cy(iy) - center_y;
            const double d2 = dx * dx + dy * dy;
            if (d2 >= r1 * r1 && d2 < r2 * r2) annulus.emplace_back(ix, iy);
        }
    if (annulus.empty()) throw std::invalid_argument("empty annulus");

    std::vector<std::pair<int, int>> probes;
    if (static_cast<int>(annulus.size()) <= max_probes) {
        probes = annulus;
    } else {
        const std::size_t stride = annulus.size() / static_cast<std::size_t>(max_probes);
        for (std::size_t k = 0; k < annulus.size() && probes.size() < static_cast<std::size_t>(max_probes);
             k += stride)
            probes.push_back(annulus[k]);
    }

    std::vector<double> results(probes.size(), 0.0);
    parallel_for(probes.size(), [&](std::size_t p) {
        const auto [px, py] = probes[p];
        const std::vector<double> green = discrete_green(g, ball, px, py);
        double sum = 0.0;
        for (const auto& [ix, iy] : annulus)
            sum += green[g.index(ix, iy)] * mu.masses[g.index(ix, iy)];
        results[p] = sum;
    });
    double sg = 0.0;
    for (double v : results) sg = std::max(sg, v);
    return sg;
}

double euclidean_area(const Cluster& cluster) {
    return static_cast<double>(cluster.cell_count) * cluster.grid.spacing * cluster.grid.spacing;
}

double euclidean_diameter(const Cluster& cluster) {
    const GridSpec& g = cluster.grid;
    // diameter of the bounding box corners is within sqrt(2) of the true
    // diameter; exact pairwise scan is quadratic, use extreme points instead
    std::vector<std::pair<double, double>> pts;
    int x0 = g.n, x1 = -1, y0 = g.n, y1 = -1;
    for (int iy = 0; iy < g.n; ++iy)
        for (int ix = 0; ix < g.n; ++ix)
            if (cluster.mask[g.index(ix, iy)]) {
                x0 = std::min(x0, ix);
                x1 = std::max(x1, ix);
                y0 = std::min(y0, iy);
                y1 = std::max(y1, iy);
            }
    if (x1 < 0) return 0.0;
    const double w = (x1 - x0 + 1) * g.spacing;
    const double h = (y1 - y0 + 1) * g.spacing;
    return std::max(w, h);
}

DiagnosticReport scale_invariance_test(double gamma, double t, double r, int n_seeds, int n_grid,
                                       std::uint64_t seed0) {
    if (n_seeds < 50) throw std::invalid_argument("need at least 50 seeds");
    if (!(r > 0.0)) throw std::invalid_argument("r must be positive");

    DiagnosticReport rep;
    rep.name = "scale_invariance_test";
    rep.tolerance = 0.01;
    rep.provenance = "test=two-sided-wilcoxon-rank-sum gamma=" + std::to_string(gamma) +
                     " t=" + std::to_string(t) + " r=" + std::to_string(r) +
                     " n_seeds=" + std::to_string(n_seeds);

    // gamma (Q log r + h_r(0)) written as (2 + gamma^2/2) log r + gamma h_r(0)
    // so the gamma = 0 limit (A_r = r^2, both families t-area disks) is exact
    const double log_ar_drift = (2.0 + gamma * gamma / 2.0) * std::log(r);

    // family 1: clusters in B_1 at mass t; box half-width 3
    // family 2: clusters in B_r at mass A_r t on a box scaled by r with the
    // same cell count, so the rescaled lattice matches family 1 exactly
    std::vector<double> area1(n_seeds), area2(n_seeds), diam1(n_seeds), diam2(n_seeds);

    parallel_for(static_cast<std::size_t>(2 * n_seeds), [&](std::size_t job) {
        const bool second = job >= static_cast<std::size_t>(n_seeds);
        const int k = static_cast<int>(second ? job - n_seeds : job);
        const std::uint64_t seed =
            KeyedRng::mix(seed0 + 1000003ull * static_cast<std::uint64_t>(job) + (second ? 777ull : 0ull));
        const double box = second ? 3.0 * r : 3.0;
        const GridSpec grid = build_grid(n_grid, box);
        const FieldSample field = sample_gff(grid, seed);
        const LiouvilleMeasure mu =
            gamma == 0.0 ? lebesgue_measure(grid) : build_measure(field, gamma);
        double tt = t;
        double domain_radius = 1.0;
        if (second) {
            const double h_r0 = circle_average(field, 0.0, 0.0, r);
            const double a_r = std::exp(log_ar_drift + gamma * h_r0);
            tt = a_r * t;
            domain_radius = r;
        }
        const DomainMask domain = disk_domain(grid, domain_radius);
        SolveOptions opts;
        const Odometer od = solve_divisible_sandpile(mu, tt, domain, opts);
        const Cluster cl = extract_cluster(od, mu);
        const double rescale = second ? 1.0 / (r * r) : 1.0;
        if (second) {
            area2[k] = euclidean_area(cl) * rescale;
            diam2[k] = euclidean_diameter(cl) / r;
        } else {
            area1[k] = euclidean_area(cl);
            diam1[k] = euclidean_diameter(cl);
        }
    });

    const double p_area = rank_sum_p_value(area1, area2);
    const double p_diam = rank_sum_p_value(diam1, diam2);
    rep.add("p_value_area", p_area);
    rep.add("p_value_diameter", p_diam);
    rep.add("median_area_family1", [&] {
        std::vector<double> v = area1;
        std::nth_element(v.begin(), v.begin() + v.size() / 2, v.end());
        return v[v.size() / 2];
    }());
    rep.add("median_area_family2_rescaled", [&] {
        std::vector<double> v = area2;
        std::nth_element(v.begin(), v.begin() + v.size() / 2, v.end());
        return v[v.size() / 2];
    }());
    rep.pass = p_area >= 0.01;
    return rep;
}

DiagnosticReport continuity_proxy(const std::vector<Cluster>& family,
                                  const LiouvilleMeasure& mu) {
    if (family.size() < 2) throw std::invalid_argument("need at least two clusters");
    DiagnosticReport rep;
    rep.name = "continuity_proxy";
    rep.tolerance = 2.0;
    double worst = 0.0;
    for (std::size_t i = 1; i < family.size(); ++i) {
        const double dt = family[i].t - family[i - 1].t;
        if (!(dt > 0.0)) throw std::invalid_argument("family must be increasing in t");
        double symdiff = 0.0;
        for (std::size_t c = 0; c < mu.masses.size(); ++c)
            if (family[i].mask[c] != family[i - 1].mask[c]) symdiff += mu.masses[c];
        worst = std::max(worst, symdiff / dt);
    }
    rep.add("max_symdiff_mass_over_dt", worst);
    rep.pass = worst <= 2.0;
    return rep;
}

DiagnosticReport crossing_report(const Cluster& cluster, const LiouvilleMeasure& mu,
                                 int max_centers) {
    const GridSpec& g = cluster.grid;
    DiagnosticReport rep;
    rep.name = "crossing_report";
    rep.provenance = "exploratory: no computable bound on the crossing constant";

    // coarse sublattice of centers around the cluster, three rho scales
    const double diam = euclidean_diameter(cluster);
    const double base_rho = std::max(8.0 * g.spacing, diam / 8.0);
    int sampled = 0, worst = 0, tail = 0;
    const int stride = std::max(1, g.n / 12);
    for (double rho : {base_rho, 1.5 * base_rho, 2.25 * base_rho}) {
        for (int iy = stride / 2; iy < g.n && sampled < max_centers; iy += stride)
            for (int ix = stride / 2; ix < g.n && sampled < max_centers; ix += stride) {
                const double x = g.cx(ix), y = g.cy(iy);
                if (std::max(std::abs(x), std::abs(y)) + 2.0 * rho >
                    g.half_width - 0.5 * g.spacing)
                    continue;
                const int crossings = crossing_count(cluster, x, y, rho);
                ++sampled;
                worst = std::max(worst, crossings);
                if (crossings >= 2) ++tail;
            }
    }
    rep.add("sampled_annuli", sampled);
    rep.add("max_crossings", worst);
    rep.add("fraction_with_2_or_more", sampled ? static_cast<double>(tail) / sampled : 0.0);
    (void)mu;
    return rep;
}

DiagnosticReport harmonic_chain_report(const Cluster& cluster, const LiouvilleMeasure& mu,
                                       int max_annuli) {
    const GridSpec& g = mu.grid;
    DiagnosticReport rep;
    rep.name = "harmonic_chain_report";
    rep.provenance = "exploratory: empirical constant of the annulus-mass bound";

    const double diam = std::max(euclidean_diameter(cluster), 8.0 * g.spacing);
    double max_ratio = 0.0;
    int sampled = 0;
    const int stride = std::max(1, g.n / 10);
    for (double r : {diam / 6.0, diam / 4.0}) {
        if (r < 4.0 * g.spacing) continue;
        for (int iy = stride / 2; iy < g.n && sampled < max_annuli; iy += stride)
            for (int ix = stride / 2; ix < g.n && sampled < max_annuli; ix += stride) {
                const double x = g.cx(ix), y = g.cy(iy);
                if (std::hypot(x, y) <= 10.0 * r) continue;  // keep the origin out
                if (std::max(std::abs(x), std::abs(y)) + 6.0 * r >
                    g.half_width - 0.5 * g.spacing)
                    continue;
                // outer shell must meet the cluster complement
                bool shell_leaves = false;
                double annulus_cluster_mass = 0.0;
                const int reach = static_cast<int>(std::ceil(5.0 * r / g.spacing)) + 1;
                int cix, ciy;
                if (!g.locate(x, y, cix, ciy)) continue;
                for (int jy = std::max(0, ciy - reach);
                     jy <= std::min(g.n - 1, ciy + reach); ++jy)
                    for (int jx = std::max(0, cix - reach);
                         jx <= std::min(g.n - 1, cix + reach); ++jx) {
                        const double d = std::hypot(g.cx(jx) - x, g.cy(jy) - y);
                        const bool in_cluster = cluster.mask[g.index(jx, jy)] != 0;
                        if (d >= 4.0 * r && d < 5.0 * r && !in_cluster) shell_leaves = true;
                        if (d >= r && d < 2.0 * r && in_cluster)
                            annulus_cluster_mass += mu.masses[g.index(jx, jy)];
                    }
                if (!shell_leaves || annulus_cluster_mass == 0.0) continue;
                const double sg = annulus_sg(mu, x, y, 3.0 * r, 6.0 * r, 24);
                if (sg <= 0.0) continue;
                max_ratio = std::max(max_ratio, annulus_cluster_mass / sg);
                ++sampled;
            }
    }
    rep.add("sampled_annuli", sampled);
    rep.add("max_mass_to_sg_ratio", max_ratio);
    return rep;
}

DiagnosticReport boundary_roughness_report(const Cluster& cluster) {
    const GridSpec& g = cluster.grid;
    DiagnosticReport rep;
    rep.name = "boundary_roughness";
    rep.provenance = "exploratory: box-counting of the mask boundary";

    std::vector<std::pair<int, int>> boundary;
    for (int iy = 0; iy < g.n; ++iy)
        for (int ix = 0; ix < g.n; ++ix) {
            if (!cluster.mask[g.index(ix, iy)]) continue;
            if (!cluster.contains(ix - 1, iy) || !cluster.contains(ix + 1, iy) ||
                !cluster.contains(ix, iy - 1) || !cluster.contains(ix, iy + 1))
                boundary.emplace_back(ix, iy);
        }
    rep.add("boundary_cells", static_cast<double>(boundary.size()));
    if (boundary.empty()) return rep;

    std::vector<double> log_inv_size, log_count;
    for (int box : {2, 4, 8, 16}) {
        std::set<std::pair<int, int>> occupied;
        for (const auto& [ix, iy] : boundary) occupied.emplace(ix / box, iy / box);
        rep.add("boxes_at_" + std::to_string(box), static_cast<double>(occupied.size()));
        log_inv_size.push_back(-std::log(static_cast<double>(box)));
        log_count.push_back(std::log(static_cast<double>(occupied.size())));
    }
    // least-squares slope of log(count) vs log(1/box)
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < log_inv_size.size(); ++i) {
        mx += log_inv_size[i];
        my += log_count[i];
    }
    mx /= log_inv_size.size();
    my /= log_count.size();
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < log_inv_size.size(); ++i) {
        num += (log_inv_size[i] - mx) * (log_count[i] - my);
        den += (log_inv_size[i] - mx) * (log_inv_size[i] - mx);
    }
    rep.add("box_counting_slope", den > 0.0 ? num / den : 0.0);
    return rep;
}

double rank_sum_p_value(std::span<const double> a, std::span<const double> b) {
    const std::size_t n1 = a.size(), n2 = b.size();
    if (n1 == 0 || n2 == 0) throw std::invalid_argument("empty sample");
    std::vector<std::pair<double, int>> all;
    all.reserve(n1 + n2);
    for (double v : a) all.emplace_back(v, 0);
    for (double v : b) all.emplace_back(v, 1);
    std::sort(all.begin(), all.end());

    // midranks with tie correction
    const std::size_t n = all.size();
    std::vector<double> rank(n);
    double tie_sum = 0.0;
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j < n && all[j].first == all[i].first) ++j;
        const double mid = 0.5 * static_cast<double>(i + j - 1) + 1.0;
        for (std::size_t k = i; k < j; ++k) rank[k] = mid;
        const double tied = static_cast<double>(j - i);
        tie_sum += tied * tied * tied - tied;
        i = j;
    }
    double r1 = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        if (all[i].second == 0) r1 += rank[i];

    const double mean = static_cast<double>(n1) * (n + 1) / 2.0;
    const double var = (static_cast<double>(n1) * n2 / 12.0) *
                       (n + 1.0 - tie_sum / (static_cast<double>(n) * (n - 1)));
    if (var <= 0.0) return 1.0;  // all values tied
    const double z = (r1 - mean) / std::sqrt(var);
    const double p = std::erfc(std::abs(z) / std::sqrt(2.0));  // two-sided
    return p;
}

}  // namespace lqg
