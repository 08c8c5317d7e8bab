#include "lqg/obstacle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "lqg/rng.hpp"

namespace lqg {

namespace {

struct Window {
    int lox, hix, loy, hiy;

    void include(int ix, int iy, int n) {
        lox = std::min(lox, std::max(0, ix));
        hix = std::max(hix, std::min(n - 1, ix));
        loy = std::min(loy, std::max(0, iy));
        hiy = std::max(hiy, std::min(n - 1, iy));
    }
};

void validate_inputs(const LiouvilleMeasure& mu, double t, const DomainMask& domain,
                     const SolveOptions& opts) {
    if (mu.grid.n != domain.n) throw std::invalid_argument("measure/domain grid mismatch");
    if (!(t >= 0.0)) throw std::invalid_argument("t must be nonnegative");
    if (!(opts.tol_rel > 0.0)) throw std::invalid_argument("tol must be positive");
    if (!domain.centered_at_origin()) throw std::invalid_argument("obstacle domain must be centered at the origin");
    if (!domain.contains(mu.grid.origin_ix, mu.grid.origin_iy))
        throw std::invalid_argument("origin not inside domain");
}

// s = t 1_origin + Lv on the domain, clipped at zero rounding noise
std::vector<double> retained_from(const GridSpec& grid, const DomainMask& domain,
                                  const std::vector<double>& v, double t) {
    std::vector<double> s = discrete_laplacian(v, grid, domain);
    s[grid.origin_index()] += t;
    for (double& x : s) x = std::max(x, 0.0);
    return s;
}

}  // namespace

Odometer solve_divisible_sandpile(const LiouvilleMeasure& mu, double t, const DomainMask& domain,
                                  const SolveOptions& opts) {
    validate_inputs(mu, t, domain, opts);
    const GridSpec& g = mu.grid;
    const int n = g.n;
    const double anchor = opts.anchor_t > 0.0 ? opts.anchor_t : t;
    const double thr = opts.tol_rel * anchor / static_cast<double>(domain.cell_count);

    Odometer od;
    od.grid = g;
    od.t = t;
    od.domain = domain;
    od.tol_rel = opts.tol_rel;
    od.tol_mass = opts.tol_rel * anchor;
    od.method = SolveMethod::sandpile;

    std::vector<double> v(g.size(), 0.0);
    std::vector<double> s(g.size(), 0.0);
    Window w{g.origin_ix, g.origin_ix, g.origin_iy, g.origin_iy};

    if (opts.warm != nullptr) {
        if (opts.warm->grid.n != n || opts.warm->t > t ||
            opts.warm->domain.radius != domain.radius ||
            opts.warm->domain.cell_count != domain.cell_count)
            throw std::invalid_argument("warm start requires the same grid/domain and smaller t");
        v = opts.warm->v;
        s = opts.warm->retained;
        od.leaked = opts.warm->leaked;
        s[g.origin_index()] += t - opts.warm->t;
        for (int iy = 0; iy < n; ++iy)
            for (int ix = 0; ix < n; ++ix)
                if (v[g.index(ix, iy)] > 0.0 || s[g.index(ix, iy)] > 0.0) w.include(ix, iy, n);
    } else {
        s[g.origin_index()] = t;
    }

    const double* m = mu.masses.data();
    std::vector<std::uint32_t> perm;

    auto topple = [&](int ix, int iy, double& max_excess) {
        const std::size_t c = g.index(ix, iy);
        if (!domain.mask[c]) return;
        const double excess = s[c] - m[c];
        if (excess <= 0.0) return;
        max_excess = std::max(max_excess, excess);
        s[c] = m[c];
        const double quarter = 0.25 * excess;
        v[c] += quarter;
        const int dx[4] = {-1, 1, 0, 0};
        const int dy[4] = {0, 0, -1, 1};
        for (int d = 0; d < 4; ++d) {
            const int jx = ix + dx[d];
            const int jy = iy + dy[d];
            if (domain.contains(jx, jy)) {
                s[g.index(jx, jy)] += quarter;
                w.include(jx, jy, n);
            } else {
                od.leaked += quarter;
            }
        }
    };

    long sweep = 0;
    for (; sweep < opts.max_sweeps; ++sweep) {
        double max_excess = 0.0;
        if (opts.order == SweepOrder::row_major) {
            for (int iy = w.loy; iy <= w.hiy; ++iy)
                for (int ix = w.lox; ix <= w.hix; ++ix) topple(ix, iy, max_excess);
        } else if (opts.order == SweepOrder::reverse) {
            for (int iy = w.hiy; iy >= w.loy; --iy)
                for (int ix = w.hix; ix >= w.lox; --ix) topple(ix, iy, max_excess);
        } else {
            const int lox0 = w.lox, loy0 = w.loy;
            const int wnx = w.hix - w.lox + 1;
            const int wny = w.hiy - w.loy + 1;
            perm.resize(static_cast<std::size_t>(wnx) * wny);
            std::iota(perm.begin(), perm.end(), 0u);
            KeyedRng rng(opts.order_seed, rng_stream::sweep_permutation + static_cast<std::uint64_t>(sweep));
            for (std::size_t k = perm.size(); k > 1; --k)
                std::swap(perm[k - 1], perm[rng.next_below(static_cast<std::uint32_t>(k))]);
            for (std::uint32_t p : perm)
                topple(lox0 + static_cast<int>(p % wnx), loy0 + static_cast<int>(p / wnx),
                       max_excess);
        }
        if (max_excess <= thr) break;
    }
    if (sweep >= opts.max_sweeps)
        throw std::runtime_error("divisible sandpile did not converge within " +
                                 std::to_string(opts.max_sweeps) + " sweeps");

    od.sweeps = sweep + 1;
    od.v = std::move(v);
    od.retained = retained_from(g, domain, od.v, t);
    return od;
}

Odometer solve_lcp(const LiouvilleMeasure& mu, double t, const DomainMask& domain,
                   const SolveOptions& opts) {
    validate_inputs(mu, t, domain, opts);
    const GridSpec& g = mu.grid;
    const int n = g.n;
    const double anchor = opts.anchor_t > 0.0 ? opts.anchor_t : t;
    const double thr = opts.tol_rel * anchor / static_cast<double>(domain.cell_count);

    Odometer od;
    od.grid = g;
    od.t = t;
    od.domain = domain;
    od.tol_rel = opts.tol_rel;
    od.tol_mass = opts.tol_rel * anchor;
    od.method = SolveMethod::lcp;

    std::vector<double> v(g.size(), 0.0);
    Window w{g.origin_ix, g.origin_ix, g.origin_iy, g.origin_iy};
    if (opts.warm != nullptr) {
        if (opts.warm->grid.n != n || opts.warm->t > t ||
            opts.warm->domain.radius != domain.radius ||
            opts.warm->domain.cell_count != domain.cell_count)
            throw std::invalid_argument("warm start requires the same grid/domain and smaller t");
        v = opts.warm->v;
        for (int iy = 0; iy < n; ++iy)
            for (int ix = 0; ix < n; ++ix)
                if (v[g.index(ix, iy)] > 0.0) w.include(ix, iy, n);
    }

    const double* m = mu.masses.data();
    const std::size_t origin = g.origin_index();

    auto relax = [&](int ix, int iy, double& max_update) {
        const std::size_t c = g.index(ix, iy);
        if (!domain.mask[c]) return;
        double nb = 0.0;
        if (domain.contains(ix - 1, iy)) nb += v[c - 1];
        if (domain.contains(ix + 1, iy)) nb += v[c + 1];
        if (domain.contains(ix, iy - 1)) nb += v[c - n];
        if (domain.contains(ix, iy + 1)) nb += v[c + n];
        double rhs = nb - m[c];
        if (c == origin) rhs += od.t;
        const double vnew = std::max(0.0, 0.25 * rhs);
        const double delta = vnew - v[c];
        if (delta != 0.0) {
            max_update = std::max(max_update, std::abs(delta));
            v[c] = vnew;
            if (vnew > 0.0) w.include(ix + 1, iy, n), w.include(ix - 1, iy, n),
                w.include(ix, iy + 1, n), w.include(ix, iy - 1, n);
        }
    };

    long sweep = 0;
    for (; sweep < opts.max_sweeps; ++sweep) {
        double max_update = 0.0;
        if (opts.red_black) {
            for (int parity = 0; parity < 2; ++parity)
                for (int iy = w.loy; iy <= w.hiy; ++iy)
                    for (int ix = w.lox + ((w.lox + iy + parity) & 1); ix <= w.hix; ix += 2)
                        relax(ix, iy, max_update);
        } else {
            for (int iy = w.loy; iy <= w.hiy; ++iy)
                for (int ix = w.lox; ix <= w.hix; ++ix) relax(ix, iy, max_update);
        }
        if (max_update <= thr) break;
    }
    if (sweep >= opts.max_sweeps)
        throw std::runtime_error("projected Gauss-Seidel did not converge within " +
                                 std::to_string(opts.max_sweeps) + " sweeps");

    od.sweeps = sweep + 1;
    od.v = std::move(v);
    od.retained = retained_from(g, domain, od.v, t);
    return od;
}

Cluster extract_cluster(const Odometer& od, const LiouvilleMeasure& mu) {
    const GridSpec& g = od.grid;
    if (mu.grid.n != g.n) throw std::invalid_argument("measure/odometer grid mismatch");
    const int n = g.n;
    const double tol_extract = 10.0 * od.tol_mass;

    Cluster cl;
    cl.grid = g;
    cl.t = od.t;
    cl.domain_radius = od.domain.radius;
    cl.mask.assign(g.size(), 0);

    auto core = [&](int ix, int iy) {
        return od.domain.contains(ix, iy) && od.v[g.index(ix, iy)] > tol_extract;
    };

    for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < n; ++ix) {
            const std::size_t c = g.index(ix, iy);
            if (!od.domain.mask[c]) continue;
            bool in = core(ix, iy);
            if (!in && od.retained[c] >= mu.masses[c] - tol_extract) {
                // filled-to-capacity cells count only next to the toppled core;
                // otherwise zero-retained cells of negligible capacity would
                // appear as speckle far from the cluster
                in = core(ix - 1, iy) || core(ix + 1, iy) || core(ix, iy - 1) || core(ix, iy + 1);
            }
            if (in) {
                cl.mask[c] = 1;
                ++cl.cell_count;
            }
        }
    const std::size_t origin = g.origin_index();
    if (!cl.mask[origin]) {
        cl.mask[origin] = 1;
        ++cl.cell_count;
    }

    // connectivity is structural; a split mask means the solve did not converge
    std::vector<std::uint8_t> seen(g.size(), 0);
    std::vector<std::size_t> stack{origin};
    seen[origin] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
        const std::size_t c = stack.back();
        stack.pop_back();
        const int ix = static_cast<int>(c % n);
        const int iy = static_cast<int>(c / n);
        const int dx[4] = {-1, 1, 0, 0};
        const int dy[4] = {0, 0, -1, 1};
        for (int d = 0; d < 4; ++d) {
            const int jx = ix + dx[d];
            const int jy = iy + dy[d];
            if (jx < 0 || jx >= n || jy < 0 || jy >= n) continue;
            const std::size_t cc = g.index(jx, jy);
            if (cl.mask[cc] && !seen[cc]) {
                seen[cc] = 1;
                ++reached;
                stack.push_back(cc);
            }
        }
    }
    if (reached != cl.cell_count)
        throw std::runtime_error("extracted cluster is not 4-connected (solver non-convergence)");

    for (int iy = 0; iy < n && !cl.touched_boundary; ++iy)
        for (int ix = 0; ix < n; ++ix) {
            if (!cl.mask[g.index(ix, iy)]) continue;
            if (!od.domain.contains(ix - 1, iy) || !od.domain.contains(ix + 1, iy) ||
                !od.domain.contains(ix, iy - 1) || !od.domain.contains(ix, iy + 1)) {
                cl.touched_boundary = true;
                break;
            }
        }
    return cl;
}

double cluster_mass(const LiouvilleMeasure& mu, const Cluster& cluster) {
    if (mu.grid.n != cluster.grid.n) throw std::invalid_argument("grid mismatch");
    double sum = 0.0;
    for (std::size_t c = 0; c < mu.masses.size(); ++c)
        if (cluster.mask[c]) sum += mu.masses[c];
    return sum;
}

GrowFamilyResult grow_family(const LiouvilleMeasure& mu, const std::vector<double>& t_list,
                             double initial_radius, const SolveOptions& opts,
                             SolveMethod method) {
    if (t_list.empty()) throw std::invalid_argument("empty t list");
    for (std::size_t i = 0; i < t_list.size(); ++i) {
        if (!(t_list[i] > 0.0)) throw std::invalid_argument("t values must be positive");
        if (i > 0 && !(t_list[i] > t_list[i - 1]))
            throw std::invalid_argument("t list must be strictly increasing");
    }
    const GridSpec& g = mu.grid;
    const double radius_cap = 0.9 * g.half_width;
    if (!(initial_radius > 0.0) || initial_radius > radius_cap)
        throw std::invalid_argument("initial radius out of range");

    SolveOptions base = opts;
    base.anchor_t = t_list.back();

    GrowFamilyResult res;
    res.final_radius = initial_radius;
    DomainMask domain = disk_domain(g, initial_radius);
    Odometer current;
    bool have_current = false;

    auto solve_on = [&](double t, const Odometer* warm) {
        SolveOptions o = base;
        o.warm = warm;
        return method == SolveMethod::sandpile ? solve_divisible_sandpile(mu, t, domain, o)
                                               : solve_lcp(mu, t, domain, o);
    };
    auto near_boundary = [&](const Cluster& cl) {
        if (cl.touched_boundary) return true;
        const double safe = domain.radius - 4.0 * g.spacing;
        const double safe2 = safe * safe;
        for (int iy = 0; iy < g.n; ++iy) {
            const double y = g.cy(iy);
            for (int ix = 0; ix < g.n; ++ix)
                if (cl.mask[g.index(ix, iy)]) {
                    const double x = g.cx(ix);
                    if (x * x + y * y > safe2) return true;
                }
        }
        return false;
    };

    for (double t : t_list) {
        Odometer od = solve_on(t, have_current ? &current : nullptr);
        Cluster cl = extract_cluster(od, mu);
        while (near_boundary(cl) && domain.radius < radius_cap) {
            const double next_radius = std::min(2.0 * domain.radius, radius_cap);
            domain = disk_domain(g, next_radius);
            res.final_radius = next_radius;
            have_current = false;  // absorbed mass invalidates warm state across domains
            od = solve_on(t, nullptr);
            cl = extract_cluster(od, mu);
        }
        if (near_boundary(cl)) {
            res.failed_t.push_back(t);
            res.error = "grid exhausted: cluster reaches the domain cap at t = " +
                        std::to_string(t);
            continue;
        }
        current = std::move(od);
        have_current = true;
        res.clusters.push_back(std::move(cl));
    }
    if (have_current) res.final_odometer = std::move(current);
    return res;
}

}  // namespace lqg
