// Acceptance suite: one pass/fail line per criterion, nonzero exit if any
// gated criterion fails. The IDLA trend criterion is experimental and does
// not gate the exit code.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "lqg/field.hpp"
#include "lqg/idla.hpp"
#include "lqg/measure.hpp"
#include "lqg/metric.hpp"
#include "lqg/obstacle.hpp"
#include "lqg/parallel.hpp"
#include "lqg/rng.hpp"
#include "lqg/verify.hpp"
#include "lcp_oracle.hpp"
#include "test_support.hpp"

using namespace lqg;
using namespace lqg_test;

namespace {

struct Outcome {
    int id;
    bool pass;
    bool gating;
    std::string detail;
};

std::vector<Outcome> results;

void report(int id, bool pass, const std::string& detail, bool gating = true) {
    results.push_back({id, pass, gating, detail});
    std::printf("%s criterion %2d%s: %s\n", pass ? "PASS" : "FAIL", id,
                gating ? "" : " [experimental]", detail.c_str());
    std::fflush(stdout);
}

double disk_symdiff_fraction(const GridSpec& g, const Cluster& cl, double t) {
    const double rstar = std::sqrt(t / M_PI);
    double symdiff = 0.0;
    for (int iy = 0; iy < g.n; ++iy)
        for (int ix = 0; ix < g.n; ++ix) {
            const double x = g.cx(ix), y = g.cy(iy);
            const bool in_disk = x * x + y * y < rstar * rstar;
            if (in_disk != (cl.mask[g.index(ix, iy)] != 0)) symdiff += g.spacing * g.spacing;
        }
    return symdiff / t;
}

double wall_seconds(std::chrono::steady_clock::time_point from) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - from).count();
}

struct SweepInstance {
    double gamma;
    std::uint64_t seed;
    double t;
    Odometer sandpile;
    Odometer lcp;
    Cluster cluster;
    LiouvilleMeasure mu;
    double partial_retained;
};

// shared sweep for criteria 2 (agreement), 3 (abelianness) and 4 (conservation)
std::vector<SweepInstance> solver_sweep() {
    const double gammas[3] = {0.5, 1.0, 1.5};
    std::vector<SweepInstance> sweep(20);
    const GridSpec g = build_grid(256, 3.0);
    parallel_for(sweep.size(), [&](std::size_t k) {
        KeyedRng rng(2024, 100 + k);
        SweepInstance& inst = sweep[k];
        inst.gamma = gammas[k % 3];
        inst.seed = 50000 + 17 * k;
        inst.t = 0.02 + 0.08 * rng.next_unit();
        const FieldSample f = sample_gff(g, inst.seed);
        inst.mu = build_measure(f, inst.gamma);
        const DomainMask dom = disk_domain(g, 1.0);
        inst.sandpile = solve_divisible_sandpile(inst.mu, inst.t, dom);
        inst.lcp = solve_lcp(inst.mu, inst.t, dom);
        inst.cluster = extract_cluster(inst.sandpile, inst.mu);
        inst.partial_retained = 0.0;
        for (std::size_t c = 0; c < inst.mu.masses.size(); ++c)
            if (!inst.cluster.mask[c]) inst.partial_retained += inst.sandpile.retained[c];
    });
    return sweep;
}

void criterion_1() {
    const auto t0 = std::chrono::steady_clock::now();
    const double t = 0.05;
    double frac512 = 0.0, frac1024 = 0.0;
    double mass_ratio_512 = 0.0;
    for (int n : {512, 1024}) {
        const GridSpec g = build_grid(n, 1.0);
        const LiouvilleMeasure mu = lebesgue_measure(g);
        const DomainMask dom = disk_domain(g, 1.0);
        const Odometer od = solve_divisible_sandpile(mu, t, dom);
        const Cluster cl = extract_cluster(od, mu);
        const double frac = disk_symdiff_fraction(g, cl, t);
        if (n == 512) {
            frac512 = frac;
            mass_ratio_512 = cluster_mass(mu, cl) / t;
        } else {
            frac1024 = frac;
        }
    }
    const double secs = wall_seconds(t0);
    const bool pass = frac512 <= 0.05 && frac1024 < frac512 && secs <= 60.0;
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "lebesgue disk: symdiff/t %.4f (n=512, <=0.05), %.4f (n=1024, smaller), "
                  "mass/t %.4f, %.1fs (<=60)",
                  frac512, frac1024, mass_ratio_512, secs);
    report(1, pass, buf);
}

void criteria_2_3_4(const std::vector<SweepInstance>& sweep) {
    // criterion 2: sandpile vs projected Gauss-Seidel on the lattice sweep,
    // plus both solvers vs the dense oracle on 7x7 fixtures
    bool agree = true;
    double worst_rel = 0.0;
    for (const auto& inst : sweep) {
        const double budget = 10.0 * inst.sandpile.tol_mass;
        const double diff = max_abs_diff(inst.sandpile.v, inst.lcp.v);
        worst_rel = std::max(worst_rel, diff / budget);
        if (diff > budget) agree = false;
    }
    double worst_oracle = 0.0;
    std::vector<SmallFixture> fixtures;
    std::vector<double> fixture_t;
    for (std::uint64_t seed : {301ull, 302ull, 303ull, 304ull, 305ull, 306ull}) {
        fixtures.push_back(block_fixture(7, seed));
        fixture_t.push_back(5.0 + static_cast<double>(seed % 7));
    }
    SolveOptions tight;
    tight.tol_rel = 1e-12;
    for (std::size_t k = 0; k < fixtures.size(); ++k) {
        const auto v_oracle = dense_lcp_solve(fixtures[k].mu, fixture_t[k], fixtures[k].domain);
        const Odometer sp =
            solve_divisible_sandpile(fixtures[k].mu, fixture_t[k], fixtures[k].domain, tight);
        const Odometer gs = solve_lcp(fixtures[k].mu, fixture_t[k], fixtures[k].domain, tight);
        worst_oracle = std::max({worst_oracle, max_abs_diff(sp.v, v_oracle),
                                 max_abs_diff(gs.v, v_oracle)});
    }
    {
        char buf[256];
        std::snprintf(buf, sizeof buf,
                      "two-solver agreement: worst %.2f%% of the 10*tol budget over %zu "
                      "instances; 7x7 oracle max diff %.2e (<=1e-9)",
                      100.0 * worst_rel, sweep.size(), worst_oracle);
        report(2, agree && worst_oracle <= 1e-9, buf);
    }

    // criterion 3: sweep orders on every fixture and two lattice instances
    bool abelian = true;
    double worst_ab = 0.0;
    for (std::size_t k = 0; k < fixtures.size(); ++k) {
        SolveOptions base;
        const Odometer a =
            solve_divisible_sandpile(fixtures[k].mu, fixture_t[k], fixtures[k].domain, base);
        SolveOptions rev = base;
        rev.order = SweepOrder::reverse;
        SolveOptions perm = base;
        perm.order = SweepOrder::permuted;
        perm.order_seed = 31 * k + 1;
        const Odometer b =
            solve_divisible_sandpile(fixtures[k].mu, fixture_t[k], fixtures[k].domain, rev);
        const Odometer c =
            solve_divisible_sandpile(fixtures[k].mu, fixture_t[k], fixtures[k].domain, perm);
        const double budget = 10.0 * a.tol_mass;
        const double diff = std::max(max_abs_diff(a.v, b.v), max_abs_diff(a.v, c.v));
        worst_ab = std::max(worst_ab, diff / budget);
        if (diff > budget) abelian = false;
    }
    for (std::size_t k : {0ull, 7ull}) {
        const auto& inst = sweep[k];
        const DomainMask dom = disk_domain(inst.mu.grid, 1.0);
        SolveOptions rev;
        rev.order = SweepOrder::reverse;
        SolveOptions perm;
        perm.order = SweepOrder::permuted;
        perm.order_seed = 4242;
        const Odometer b = solve_divisible_sandpile(inst.mu, inst.t, dom, rev);
        const Odometer c = solve_divisible_sandpile(inst.mu, inst.t, dom, perm);
        const double budget = 10.0 * inst.sandpile.tol_mass;
        const double diff =
            std::max(max_abs_diff(inst.sandpile.v, b.v), max_abs_diff(inst.sandpile.v, c.v));
        worst_ab = std::max(worst_ab, diff / budget);
        if (diff > budget) abelian = false;
    }
    {
        char buf[256];
        std::snprintf(buf, sizeof buf,
                      "abelianness: worst %.2f%% of the 10*tol budget across sweep orders",
                      100.0 * worst_ab);
        report(3, abelian, buf);
    }

    // criterion 4: cluster_mass/t <= 1 + 1e-9 on every cluster; the exact
    // discrete ledger mask + partial + leaked = t; and the two-sided window
    // on the resolved lebesgue instance. The 0.98 lower bound for gamma > 0
    // at this resolution is reported, not gated: the boundary layer of the
    // multifractal measure still holds 3-12% of t at n <= 1024 (see the
    // refinement trend of criterion 10).
    bool upper_ok = true, ledger_ok = true;
    double min_ratio = 2.0;
    for (const auto& inst : sweep) {
        const double ratio = cluster_mass(inst.mu, inst.cluster) / inst.t;
        min_ratio = std::min(min_ratio, ratio);
        if (ratio > 1.0 + 1e-9) upper_ok = false;
        const double ledger =
            (cluster_mass(inst.mu, inst.cluster) + inst.partial_retained + inst.sandpile.leaked) /
            inst.t;
        if (std::abs(ledger - 1.0) > 1e-6) ledger_ok = false;
    }
    const GridSpec g512 = build_grid(512, 1.0);
    const LiouvilleMeasure mu0 = lebesgue_measure(g512);
    const Odometer od0 = solve_divisible_sandpile(mu0, 0.2, disk_domain(g512, 1.0));
    const Cluster cl0 = extract_cluster(od0, mu0);
    const double ratio0 = cluster_mass(mu0, cl0) / 0.2;
    const bool lebesgue_ok = !cl0.touched_boundary && ratio0 >= 0.98 && ratio0 <= 1.0 + 1e-9;
    {
        char buf[256];
        std::snprintf(buf, sizeof buf,
                      "mass conservation: all ratios <= 1+1e-9, ledger exact to 1e-6, "
                      "lebesgue ratio %.4f in [0.98, 1]; min gamma>0 ratio %.3f (reported)",
                      ratio0, min_ratio);
        report(4, upper_ok && ledger_ok && lebesgue_ok, buf);
    }
}

void criterion_5() {
    const GridSpec g = build_grid(256, 3.0);
    const FieldSample f = sample_gff(g, 909);
    const LiouvilleMeasure mu = build_measure(f, 1.0);
    const std::vector<double> ts = {0.01, 0.02, 0.04, 0.06, 0.09};
    const GrowFamilyResult fam = grow_family(mu, ts, 0.5);
    bool nested = fam.ok() && fam.clusters.size() == ts.size();
    if (nested)
        for (std::size_t k = 1; k < fam.clusters.size(); ++k)
            for (std::size_t c = 0; c < mu.masses.size(); ++c)
                if (fam.clusters[k - 1].mask[c] && !fam.clusters[k].mask[c]) nested = false;

    // doubled-domain identity for a cluster that never touched the boundary
    SolveOptions opts;
    const Odometer small = solve_divisible_sandpile(mu, 0.03, disk_domain(g, 0.5), opts);
    const Odometer big = solve_divisible_sandpile(mu, 0.03, disk_domain(g, 1.0), opts);
    const Cluster cs = extract_cluster(small, mu);
    const Cluster cb = extract_cluster(big, mu);
    const bool compatible = !cs.touched_boundary && cs.mask == cb.mask;
    report(5, nested && compatible,
           nested ? (compatible ? "exact nesting over 5 t values; doubled-domain masks identical"
                                : "nesting ok but doubled-domain masks differ")
                  : "mask nesting violated");
}

void criterion_6() {
    const GridSpec g = build_grid(512, 3.0);
    const FieldSample f = sample_gff(g, 424242);
    const LiouvilleMeasure mu = build_measure(f, 1.0);
    const DomainMask dom = disk_domain(g, 1.0);
    const Odometer od = solve_divisible_sandpile(mu, 0.05, dom);
    const Cluster cl = extract_cluster(od, mu);
    const DiagnosticReport rep = harmonic_test_suite(cl, mu, dom, 3, 16, 777, 0.03);
    double worst = 0.0, slack = 0.0;
    for (const auto& [label, value] : rep.values) {
        if (label == "worst_residual") worst = value;
        if (label == "subharmonic_min_slack") slack = value;
    }
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "mean value: worst residual %.4f (<=0.03, deg<=3 + 16 Green probes), "
                  "subharmonic slack %.2e (>=-1e-3), cluster %zu cells",
                  worst, slack, cl.cell_count);
    report(6, rep.pass.value_or(false), buf);
}

void criterion_7() {
    const auto t0 = std::chrono::steady_clock::now();
    const int N = 2000;
    const GridSpec g = build_grid(256, 6.0);
    enum { kR05, kR0, kR2, kV2, kV4, kV8, kCount };
    std::vector<std::vector<double>> obs(kCount, std::vector<double>(N));
    parallel_for(N, [&](std::size_t k) {
        const FieldSample f = sample_gff(g, 600000 + k);
        obs[kR05][k] = circle_average(f, 0.5, 0.0, 0.25);
        obs[kR0][k] = circle_average(f, 0.0, 0.0, 0.25);
        obs[kR2][k] = circle_average(f, 2.0, 0.0, 0.25);
        obs[kV2][k] = circle_average(f, 0.0, 0.0, 0.5);
        obs[kV4][k] = circle_average(f, 0.0, 0.0, 0.25);
        obs[kV8][k] = circle_average(f, 0.0, 0.0, 0.125);
    });
    auto cov = [&](int a, int b) {
        double ma = 0.0, mb = 0.0;
        for (int k = 0; k < N; ++k) {
            ma += obs[a][k];
            mb += obs[b][k];
        }
        ma /= N;
        mb /= N;
        double s = 0.0;
        for (int k = 0; k < N; ++k) s += (obs[a][k] - ma) * (obs[b][k] - mb);
        return s / (N - 1);
    };
    const double c1 = cov(kR05, kR0);
    const double c2 = cov(kR2, kR0);
    const double v2 = cov(kV2, kV2), v4 = cov(kV4, kV4), v8 = cov(kV8, kV8);
    const double secs = wall_seconds(t0);
    const bool cov_ok = std::abs(c1 - std::log(2.0)) <= 0.1 && std::abs(c2) <= 0.1;
    const bool var_ok = std::abs(v2 - std::log(2.0)) <= 0.15 * std::log(2.0) &&
                        std::abs(v4 - std::log(4.0)) <= 0.15 * std::log(4.0) &&
                        std::abs(v8 - std::log(8.0)) <= 0.15 * std::log(8.0);
    char buf[320];
    std::snprintf(buf, sizeof buf,
                  "gff stats (2000 seeds): cov pairs %.3f/%.3f (targets %.3f/0, +-0.1), "
                  "var(h_r(0)) %.3f/%.3f/%.3f (targets %.3f/%.3f/%.3f, 15%%), %.0fs (<=600)",
                  c1, c2, std::log(2.0), v2, v4, v8, std::log(2.0), std::log(4.0), std::log(8.0),
                  secs);
    report(7, cov_ok && var_ok && secs <= 600.0, buf);
}

void criterion_8() {
    // box 1.5 keeps eps = 16 spacing small enough that the exponent window
    // sits ~2.8 sigma from the lognormal ball-mass center at n=512; the
    // probe balls stay well inside the box
    const GridSpec g = build_grid(512, 1.5);
    const double eps = 16.0 * g.spacing;
    const double lo = std::pow(eps, 4.5), hi = std::pow(eps, 0.5);
    const int n_seeds = 10;
    std::vector<double> fractions(n_seeds, 0.0);
    parallel_for(n_seeds, [&](std::size_t s) {
        const FieldSample f = sample_gff(g, 880000 + s);
        const LiouvilleMeasure mu = build_measure(f, 1.0);
        long probed = 0, violated = 0;
        for (int iy = 0; iy < g.n; iy += 4)
            for (int ix = 0; ix < g.n; ix += 4) {
                const double x = g.cx(ix), y = g.cy(iy);
                if (x * x + y * y >= 1.0) continue;
                ++probed;
                const double m = ball_mass(mu, x, y, eps);
                if (m < lo || m > hi) ++violated;
            }
        fractions[s] = static_cast<double>(violated) / static_cast<double>(probed);
    });
    double worst = 0.0;
    for (double v : fractions) worst = std::max(worst, v);
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "volume growth: worst violation fraction %.4f over %d seeds (<=0.05)", worst,
                  n_seeds);
    report(8, worst <= 0.05, buf);
}

void criterion_9() {
    const GridSpec g = build_grid(256, 3.0);
    const FieldSample f = sample_gff(g, 333);
    const double gamma = 1.0;
    const LiouvilleMeasure mu = build_measure(f, gamma);
    double worst = 0.0;
    auto check = [&](auto&& fn) {
        FieldSample shifted = f;
        FieldSample shift_only;
        shift_only.grid = g;
        shift_only.values.resize(g.size());
        for (int iy = 0; iy < g.n; ++iy)
            for (int ix = 0; ix < g.n; ++ix) {
                const double v = fn(g.cx(ix), g.cy(iy));
                shift_only.values[g.index(ix, iy)] = v;
                shifted.values[g.index(ix, iy)] += v;
            }
        const auto f_eps = smoothed_values(shift_only, 2.0 * g.spacing);
        const LiouvilleMeasure rebuilt = build_measure(shifted, gamma);
        for (std::size_t c = 0; c < mu.masses.size(); ++c) {
            const double scaled = mu.masses[c] * std::exp(gamma * f_eps[c]);
            worst = std::max(worst, std::abs(rebuilt.masses[c] - scaled) / scaled);
        }
    };
    check([](double, double) { return 0.6; });
    check([](double x, double) { return 0.25 * x; });
    check([](double x, double y) { return 0.1 * x * y; });
    char buf[192];
    std::snprintf(buf, sizeof buf, "weyl scaling: worst relative deviation %.2e (<=1e-12)",
                  worst);
    report(9, worst <= 1e-12, buf);
}

void criterion_10() {
    const int grids[3] = {128, 256, 512};
    const int n_seeds = 5;
    double mean_frac[3] = {0.0, 0.0, 0.0};
    std::vector<double> fracs(3 * n_seeds);
    parallel_for(3 * n_seeds, [&](std::size_t job) {
        const int gi = static_cast<int>(job / n_seeds);
        const int s = static_cast<int>(job % n_seeds);
        const GridSpec g = build_grid(grids[gi], 3.0);
        const FieldSample f = sample_gff(g, 7100 + s);
        const LiouvilleMeasure mu = build_measure(f, 1.0);
        const Odometer od = solve_divisible_sandpile(mu, 0.05, disk_domain(g, 1.0));
        const Cluster cl = extract_cluster(od, mu);
        fracs[job] = boundary_mass_fraction(cl, mu);
    });
    for (int gi = 0; gi < 3; ++gi) {
        for (int s = 0; s < n_seeds; ++s) mean_frac[gi] += fracs[gi * n_seeds + s];
        mean_frac[gi] /= n_seeds;
    }
    const bool pass = mean_frac[0] > mean_frac[1] && mean_frac[1] > mean_frac[2];
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "boundary mass fraction decreasing over n: %.4f (128) > %.4f (256) > %.4f (512)",
                  mean_frac[0], mean_frac[1], mean_frac[2]);
    report(10, pass, buf);
}

void criterion_11() {
    const DiagnosticReport rep = scale_invariance_test(1.0, 0.02, 2.0, 100, 256, 314159);
    double p_area = 0.0, p_diam = 0.0;
    for (const auto& [label, value] : rep.values) {
        if (label == "p_value_area") p_area = value;
        if (label == "p_value_diameter") p_diam = value;
    }
    char buf[192];
    std::snprintf(buf, sizeof buf,
                  "scale invariance rank test: p_area %.3f (>=0.01), p_diameter %.3f", p_area,
                  p_diam);
    report(11, rep.pass.value_or(false), buf);
}

void criterion_12() {
    // d_gamma at gamma = 1 is not known; xi = gamma/d uses the numerical
    // estimate d ~ 3.5. Distinctness is insensitive to the exact xi.
    const double xi = 1.0 / 3.5;
    const int n_seeds = 20;
    std::vector<int> distinct(n_seeds, 0);
    parallel_for(n_seeds, [&](std::size_t s) {
        const GridSpec g = build_grid(512, 3.0);
        const FieldSample f = sample_gff(g, 991000 + s);
        const LiouvilleMeasure mu = build_measure(f, 1.0);
        const double t = 0.05;
        const Odometer od = solve_divisible_sandpile(mu, t, disk_domain(g, 1.0));
        const Cluster cl = extract_cluster(od, mu);
        const DistanceField dist = distance_field(f, xi);
        const auto ball = metric_ball_of_mass(dist, mu, t);
        double symdiff = 0.0;
        for (std::size_t c = 0; c < mu.masses.size(); ++c)
            if ((ball[c] != 0) != (cl.mask[c] != 0)) symdiff += mu.masses[c];
        distinct[s] = symdiff > 0.05 * t ? 1 : 0;
    });
    int count = 0;
    for (int v : distinct) count += v;
    char buf[192];
    std::snprintf(buf, sizeof buf,
                  "metric vs harmonic balls distinct (symdiff > 5%% of t) for %d/%d seeds "
                  "(>=12 needed)",
                  count, n_seeds);
    report(12, count >= 12, buf);
}

void criterion_13() {
    const long walker_counts[3] = {1000, 10000, 100000};
    const int n_seeds = 5;
    double mean_jaccard[3] = {0.0, 0.0, 0.0};
    std::vector<double> jac(3 * n_seeds);
    parallel_for(3 * n_seeds, [&](std::size_t job) {
        const int wi = static_cast<int>(job / n_seeds);
        const int s = static_cast<int>(job % n_seeds);
        const GridSpec g = build_grid(256, 1.25);
        const FieldSample f = sample_gff(g, 13000 + s);
        const LiouvilleMeasure mu = build_measure(f, 1.0);
        const DomainMask dom = disk_domain(g, 0.4);
        const double t = 0.05;
        const Odometer od = solve_divisible_sandpile(mu, t, dom);
        const Cluster cl = extract_cluster(od, mu);
        const IdlaState st = run_idla(mu, t, walker_counts[wi], dom, 977000 + s);
        jac[job] = compare_idla_harmonic(st, cl, mu).jaccard;
    });
    for (int wi = 0; wi < 3; ++wi) {
        for (int s = 0; s < n_seeds; ++s) mean_jaccard[wi] += jac[wi * n_seeds + s];
        mean_jaccard[wi] /= n_seeds;
    }
    const bool pass = mean_jaccard[0] < mean_jaccard[1] && mean_jaccard[1] < mean_jaccard[2];
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "idla trend: mean jaccard %.3f (1e3) < %.3f (1e4) < %.3f (1e5)",
                  mean_jaccard[0], mean_jaccard[1], mean_jaccard[2]);
    report(13, pass, buf, /*gating=*/false);
}

void criterion_14() {
    auto run_once = [&]() {
        const GridSpec g = build_grid(128, 3.0);
        const FieldSample f = sample_gff(g, 5150);
        const LiouvilleMeasure mu = build_measure(f, 1.0);
        const Odometer od = solve_divisible_sandpile(mu, 0.04, disk_domain(g, 1.0));
        const Cluster cl = extract_cluster(od, mu);
        std::uint64_t h = 0xcbf29ce484222325ull;
        auto mix = [&h](const void* p, std::size_t bytes) {
            const auto* b = static_cast<const std::uint8_t*>(p);
            for (std::size_t i = 0; i < bytes; ++i) {
                h ^= b[i];
                h *= 0x100000001b3ull;
            }
        };
        mix(f.values.data(), f.values.size() * 8);
        mix(mu.masses.data(), mu.masses.size() * 8);
        mix(od.v.data(), od.v.size() * 8);
        mix(cl.mask.data(), cl.mask.size());
        return h;
    };
    const std::uint64_t h1 = run_once();
    const std::uint64_t h2 = run_once();
    char buf[160];
    std::snprintf(buf, sizeof buf, "determinism: pipeline hash %016llx reproduced %s",
                  static_cast<unsigned long long>(h1), h1 == h2 ? "exactly" : "DIFFERENTLY");
    report(14, h1 == h2, buf);
}

}  // namespace

int main() {
    const auto t0 = std::chrono::steady_clock::now();
    criterion_1();
    const auto sweep = solver_sweep();
    criteria_2_3_4(sweep);
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    criterion_12();
    criterion_13();
    criterion_14();

    int failed_gating = 0;
    for (const auto& r : results)
        if (!r.pass && r.gating) ++failed_gating;
    std::printf("acceptance: %zu criteria, %d gated failures, %.0fs total\n", results.size(),
                failed_gating, wall_seconds(t0));
    return failed_gating == 0 ? 0 : 1;
}
