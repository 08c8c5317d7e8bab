// Batch front end: seeded, reproducible pipelines over the field, measure,
// obstacle, metric, and IDLA modules, with manifest-tracked outputs.
//
// Exit codes: 0 ok, 1 diagnostic failure, 2 config error, 3 resource exhaustion.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "lqg/field.hpp"
#include "lqg/gridio.hpp"
#include "lqg/grid.hpp"
#include "lqg/idla.hpp"
#include "lqg/measure.hpp"
#include "lqg/metric.hpp"
#include "lqg/obstacle.hpp"
#include "lqg/parallel.hpp"
#include "lqg/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "1.0.0";

struct RunConfig {
    double gamma = 1.0;
    double alpha0 = 0.0;
    double xi = -1.0;  // negative: not provided
    int n = 256;
    double half_width = 3.0;
    std::vector<double> t_list = {0.05};
    std::uint64_t seed = 1;
    double tol = 1e-8;
    std::string outputs = "out";
    double initial_radius = 0.5;
    long n_walkers = 10000;
    std::string checks = "conservation,mean_value,boundary_mass,continuity";
    std::string mask_file;
    std::string field_file;
    int green_points = 8;
};

void apply_config_file(const std::string& path, RunConfig& c) {
    std::ifstream f(path);
    if (!f) throw CLI::ValidationError("--config", "cannot open " + path);
    json j;
    f >> j;
    if (j.contains("gamma")) c.gamma = j["gamma"].get<double>();
    if (j.contains("alpha0")) c.alpha0 = j["alpha0"].get<double>();
    if (j.contains("xi")) c.xi = j["xi"].get<double>();
    if (j.contains("n")) c.n = j["n"].get<int>();
    if (j.contains("half_width")) c.half_width = j["half_width"].get<double>();
    if (j.contains("t_list")) c.t_list = j["t_list"].get<std::vector<double>>();
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("tol")) c.tol = j["tol"].get<double>();
    if (j.contains("outputs")) c.outputs = j["outputs"].get<std::string>();
    if (j.contains("initial_radius")) c.initial_radius = j["initial_radius"].get<double>();
    if (j.contains("n_walkers")) c.n_walkers = j["n_walkers"].get<long>();
    if (j.contains("checks")) c.checks = j["checks"].get<std::string>();
    if (j.contains("green_points")) c.green_points = j["green_points"].get<int>();
}

json config_json(const RunConfig& c) {
    json j;
    j["gamma"] = c.gamma;
    j["alpha0"] = c.alpha0;
    if (c.xi >= 0.0) j["xi"] = c.xi;
    j["n"] = c.n;
    j["half_width"] = c.half_width;
    j["t_list"] = c.t_list;
    j["seed"] = c.seed;
    j["tol"] = c.tol;
    j["outputs"] = c.outputs;
    j["initial_radius"] = c.initial_radius;
    j["n_walkers"] = c.n_walkers;
    return j;
}

std::string hex64(std::uint64_t v) {
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << v;
    return os.str();
}

class Manifest {
public:
    Manifest(const RunConfig& c, std::string subcommand) : start_(clock_t::now()) {
        j_["config"] = config_json(c);
        j_["subcommand"] = std::move(subcommand);
        j_["version"] = kVersion;
        j_["threads"] = lqg::worker_count();
        j_["grid_convention"] =
            "cell (i,j) center ((i-n/2+0.5)s,(j-n/2+0.5)s); origin cell (n/2-1,n/2-1)";
        j_["artifacts"] = json::array();
    }

    void add_artifact(const std::string& path) {
        json a;
        a["path"] = path;
        a["fnv1a64"] = hex64(lqg::fnv1a64_file(path));
        j_["artifacts"].push_back(a);
    }

    void note(const std::string& key, const json& value) { j_[key] = value; }

    void write(const std::string& path) {
        j_["wall_clock_s"] =
            std::chrono::duration<double>(clock_t::now() - start_).count();
        std::ofstream f(path);
        f << j_.dump(2) << "\n";
    }

private:
    using clock_t = std::chrono::steady_clock;
    json j_;
    clock_t::time_point start_;
};

void validate_common(const RunConfig& c) {
    if (c.gamma < 0.0 || c.gamma >= 2.0) throw CLI::ValidationError("--gamma", "must be in [0,2)");
    if (c.gamma > 0.0 && !(c.alpha0 < lqg::lqg_Q(c.gamma)))
        throw CLI::ValidationError(
            "--alpha0", "must be < Q = 2/gamma + gamma/2 = " + std::to_string(lqg::lqg_Q(c.gamma)));
    for (std::size_t i = 0; i < c.t_list.size(); ++i) {
        if (!(c.t_list[i] > 0.0)) throw CLI::ValidationError("--t", "t values must be positive");
        if (i > 0 && !(c.t_list[i] > c.t_list[i - 1]))
            throw CLI::ValidationError("--t", "t values must be strictly increasing");
    }
}

lqg::FieldSample pipeline_field(const RunConfig& c) {
    const lqg::GridSpec grid = lqg::build_grid(c.n, c.half_width);
    lqg::FieldSample field = lqg::sample_gff(grid, c.seed);
    if (c.alpha0 != 0.0) field = lqg::add_log_singularity(field, c.alpha0, c.gamma);
    return field;
}

lqg::LiouvilleMeasure pipeline_measure(const RunConfig& c, const lqg::FieldSample* field) {
    if (c.gamma == 0.0) {
        auto mu = lqg::lebesgue_measure(lqg::build_grid(c.n, c.half_width));
        mu.field_seed = c.seed;
        return mu;
    }
    return lqg::build_measure(*field, c.gamma);
}

int cmd_sample_field(const RunConfig& c) {
    validate_common(c);
    fs::create_directories(c.outputs);
    Manifest man(c, "sample-field");
    const lqg::FieldSample field = pipeline_field(c);
    const std::string grid_path = c.outputs + "/field.grid";
    const std::string png_path = c.outputs + "/field.png";
    lqg::write_grid_file(grid_path, field.grid, field.values);
    lqg::write_field_png(png_path, field.grid.n, field.values);
    man.add_artifact(grid_path);
    man.add_artifact(png_path);
    if (c.gamma > 0.0) {
        const lqg::LiouvilleMeasure mu = lqg::build_measure(field, c.gamma);
        const std::string mgrid = c.outputs + "/measure.grid";
        const std::string mcsv = c.outputs + "/measure.csv";
        lqg::write_grid_file(mgrid, mu.grid, mu.masses);
        lqg::write_cell_csv(mcsv, mu.grid, mu.masses, "mass");
        man.add_artifact(mgrid);
        man.add_artifact(mcsv);
    }
    man.note("field_seed", c.seed);
    man.write(c.outputs + "/manifest.json");
    return 0;
}

int cmd_harmonic_ball(const RunConfig& c) {
    validate_common(c);
    fs::create_directories(c.outputs);
    Manifest man(c, "harmonic-ball");

    lqg::FieldSample field;
    if (c.gamma > 0.0) field = pipeline_field(c);
    const lqg::LiouvilleMeasure mu = pipeline_measure(c, &field);

    lqg::SolveOptions opts;
    opts.tol_rel = c.tol;
    const lqg::GrowFamilyResult fam =
        lqg::grow_family(mu, c.t_list, c.initial_radius, opts);

    // nested clusters colored by t (1 = smallest t)
    std::vector<std::uint16_t> labels(mu.grid.size(), 0);
    for (std::size_t k = fam.clusters.size(); k > 0; --k) {
        const auto& cl = fam.clusters[k - 1];
        for (std::size_t cc = 0; cc < labels.size(); ++cc)
            if (cl.mask[cc]) labels[cc] = static_cast<std::uint16_t>(k);
    }
    const std::string png_path = c.outputs + "/harmonic_balls.png";
    lqg::write_label_png(png_path, mu.grid.n, labels);
    man.add_artifact(png_path);

    for (std::size_t k = 0; k < fam.clusters.size(); ++k) {
        const std::string stem = c.outputs + "/cluster_" + std::to_string(k);
        lqg::write_mask_png(stem + ".png", mu.grid.n, fam.clusters[k].mask);
        lqg::write_mask_rle_csv(stem + ".csv", mu.grid, fam.clusters[k].mask);
        std::vector<double> mask01(mu.grid.size());
        for (std::size_t cc = 0; cc < mask01.size(); ++cc)
            mask01[cc] = fam.clusters[k].mask[cc] ? 1.0 : 0.0;
        lqg::write_grid_file(stem + ".grid", mu.grid, mask01);
        man.add_artifact(stem + ".png");
        man.add_artifact(stem + ".csv");
        man.add_artifact(stem + ".grid");
    }
    if (!fam.clusters.empty()) {
        const std::string ocsv = c.outputs + "/odometer.csv";
        const std::string ogrid = c.outputs + "/odometer.grid";
        lqg::write_cell_csv(ocsv, mu.grid, fam.final_odometer.v, "odometer");
        lqg::write_grid_file(ogrid, mu.grid, fam.final_odometer.v);
        man.add_artifact(ocsv);
        man.add_artifact(ogrid);
        man.note("solver_sweeps", fam.final_odometer.sweeps);
        man.note("leaked_mass", fam.final_odometer.leaked);
    }
    if (c.gamma > 0.0) {
        const std::string fgrid = c.outputs + "/field.grid";
        lqg::write_grid_file(fgrid, field.grid, field.values);
        man.add_artifact(fgrid);
    }
    man.note("final_domain_radius", fam.final_radius);
    man.note("completed_t", fam.clusters.size());
    if (!fam.ok()) man.note("failed_t", fam.failed_t);
    man.write(c.outputs + "/manifest.json");
    if (!fam.ok()) {
        std::cerr << fam.error << "\n";
        return 3;
    }
    return 0;
}

int cmd_metric_ball(const RunConfig& c) {
    validate_common(c);
    double xi = c.xi;
    if (xi < 0.0) {
        const double g83 = std::sqrt(8.0 / 3.0);
        if (std::abs(c.gamma - g83) < 1e-9) {
            xi = lqg::xi_sqrt83();
        } else if (c.gamma == 0.0) {
            xi = 0.0;
        } else {
            throw CLI::ValidationError(
                "--xi", "required: d_gamma is only known at gamma = sqrt(8/3) (d = 4)");
        }
    }
    fs::create_directories(c.outputs);
    Manifest man(c, "metric-ball");
    man.note("xi", xi);

    lqg::FieldSample field;
    if (c.gamma > 0.0 || xi > 0.0) field = pipeline_field(c);
    const lqg::LiouvilleMeasure mu = pipeline_measure(c, &field);
    if (c.gamma > 0.0) {
        const std::string fgrid = c.outputs + "/field.grid";
        lqg::write_grid_file(fgrid, field.grid, field.values);
        man.add_artifact(fgrid);
        man.note("field_hash", hex64(lqg::fnv1a64_file(fgrid)));
    }

    lqg::DistanceField dist;
    if (c.gamma > 0.0 || xi > 0.0) {
        dist = lqg::distance_field(field, xi);
    } else {
        const lqg::GridSpec grid = lqg::build_grid(c.n, c.half_width);
        lqg::FieldSample flat;
        flat.grid = grid;
        flat.values.assign(grid.size(), 0.0);
        dist = lqg::distance_field(flat, 0.0);
    }

    std::vector<std::uint16_t> labels(mu.grid.size(), 0);
    for (std::size_t k = c.t_list.size(); k > 0; --k) {
        const auto mask = lqg::metric_ball_of_mass(dist, mu, c.t_list[k - 1]);
        const std::string mpng = c.outputs + "/metric_ball_" + std::to_string(k - 1) + ".png";
        lqg::write_mask_png(mpng, mu.grid.n, mask);
        man.add_artifact(mpng);
        for (std::size_t cc = 0; cc < labels.size(); ++cc)
            if (mask[cc]) labels[cc] = static_cast<std::uint16_t>(k);
    }
    const std::string png_path = c.outputs + "/metric_balls.png";
    lqg::write_label_png(png_path, mu.grid.n, labels);
    man.add_artifact(png_path);

    const std::string dgrid = c.outputs + "/distance.grid";
    lqg::write_grid_file(dgrid, mu.grid, dist.d);
    man.add_artifact(dgrid);
    man.write(c.outputs + "/manifest.json");
    return 0;
}

int cmd_idla(const RunConfig& c) {
    validate_common(c);
    fs::create_directories(c.outputs);
    Manifest man(c, "idla");

    lqg::FieldSample field;
    if (c.gamma > 0.0) field = pipeline_field(c);
    const lqg::LiouvilleMeasure mu = pipeline_measure(c, &field);
    const double t = c.t_list.front();
    // walkers and the reference cluster share one absorbing disk
    const lqg::DomainMask domain =
        lqg::disk_domain(mu.grid, std::min(c.initial_radius, 0.9 * c.half_width));

    const lqg::IdlaState st = lqg::run_idla(mu, t, c.n_walkers, domain, c.seed);

    lqg::SolveOptions opts;
    opts.tol_rel = c.tol;
    const lqg::Odometer od = lqg::solve_divisible_sandpile(mu, t, domain, opts);
    const lqg::Cluster cl = lqg::extract_cluster(od, mu);
    const lqg::IdlaComparison cmp = lqg::compare_idla_harmonic(st, cl, mu);

    const auto occ = lqg::idla_mask(st, mu);
    std::vector<std::uint16_t> overlay(mu.grid.size(), 0);
    for (std::size_t cc = 0; cc < overlay.size(); ++cc) {
        const bool a = occ[cc] != 0;
        const bool b = cl.mask[cc] != 0;
        overlay[cc] = a && b ? 3 : (a ? 1 : (b ? 2 : 0));
    }
    const std::string opng = c.outputs + "/idla_overlay.png";
    lqg::write_label_png(opng, mu.grid.n, overlay);
    man.add_artifact(opng);

    // sensitivity of the occupied-set mask to the fill threshold
    json thresholds = json::array();
    for (double frac : {0.25, 0.5, 0.75}) {
        const auto occ_f = lqg::idla_mask(st, mu, frac);
        std::size_t inter = 0, uni = 0;
        for (std::size_t cc = 0; cc < occ_f.size(); ++cc) {
            const bool a = occ_f[cc] != 0;
            const bool b = cl.mask[cc] != 0;
            if (a && b) ++inter;
            if (a || b) ++uni;
        }
        json row;
        row["threshold"] = frac;
        row["jaccard"] = uni == 0 ? 1.0 : static_cast<double>(inter) / uni;
        thresholds.push_back(row);
    }

    json stats;
    stats["jaccard"] = cmp.jaccard;
    stats["symdiff_mass"] = cmp.symdiff_mass;
    stats["leaked"] = st.leaked;
    stats["walkers"] = st.walkers_done;
    stats["quantum"] = st.quantum;
    stats["threshold_sensitivity"] = thresholds;
    man.note("idla", stats);
    const std::string scsv = c.outputs + "/idla_stats.csv";
    {
        std::ofstream f(scsv);
        f << "jaccard,symdiff_mass,leaked,walkers\n";
        f.precision(17);
        f << cmp.jaccard << ',' << cmp.symdiff_mass << ',' << st.leaked << ','
          << st.walkers_done << "\n";
    }
    man.add_artifact(scsv);
    man.write(c.outputs + "/manifest.json");
    return 0;
}

int cmd_verify(const RunConfig& c) {
    validate_common(c);
    fs::create_directories(c.outputs);
    Manifest man(c, "verify");

    std::vector<std::string> checks;
    if (c.checks != "none") {
        std::stringstream ss(c.checks);
        std::string item;
        while (std::getline(ss, item, ','))
            if (!item.empty()) checks.push_back(item);
    }

    std::vector<lqg::DiagnosticReport> reports;
    if (!checks.empty()) {
        lqg::FieldSample field;
        if (c.gamma > 0.0) field = pipeline_field(c);
        const lqg::LiouvilleMeasure mu = pipeline_measure(c, &field);

        lqg::SolveOptions opts;
        opts.tol_rel = c.tol;
        lqg::GrowFamilyResult fam = lqg::grow_family(mu, c.t_list, c.initial_radius, opts);
        if (!fam.ok()) {
            std::cerr << fam.error << "\n";
            return 3;
        }
        lqg::Cluster cluster = fam.clusters.back();
        if (!c.mask_file.empty()) {
            // externally supplied mask (e.g. a tamper fixture) replaces the solve
            const lqg::GridFileData data = lqg::read_grid_file(c.mask_file);
            if (data.grid.n != mu.grid.n)
                throw CLI::ValidationError("--mask-file", "grid mismatch");
            cluster.mask.assign(mu.grid.size(), 0);
            cluster.cell_count = 0;
            for (std::size_t cc = 0; cc < cluster.mask.size(); ++cc)
                if (data.values[cc] > 0.5) {
                    cluster.mask[cc] = 1;
                    ++cluster.cell_count;
                }
        }
        const lqg::DomainMask domain = lqg::disk_domain(mu.grid, fam.final_radius);

        for (const std::string& name : checks) {
            if (name == "conservation") {
                reports.push_back(lqg::conservation_check(cluster, mu, cluster.t));
            } else if (name == "mean_value") {
                reports.push_back(lqg::harmonic_test_suite(cluster, mu, domain, 3,
                                                           c.green_points, c.seed));
            } else if (name == "boundary_mass") {
                lqg::DiagnosticReport rep;
                rep.name = "boundary_mass_fraction";
                rep.add("fraction", lqg::boundary_mass_fraction(cluster, mu));
                reports.push_back(rep);
            } else if (name == "continuity") {
                if (fam.clusters.size() >= 2)
                    reports.push_back(lqg::continuity_proxy(fam.clusters, mu));
            } else if (name == "crossings") {
                reports.push_back(lqg::crossing_report(cluster, mu));
            } else if (name == "annulus") {
                reports.push_back(lqg::harmonic_chain_report(cluster, mu));
            } else if (name == "roughness") {
                reports.push_back(lqg::boundary_roughness_report(cluster));
            } else {
                throw CLI::ValidationError("--checks", "unknown check: " + name);
            }
        }
    }

    for (auto& rep : reports) {
        if (!rep.provenance.empty()) rep.provenance += "; ";
        rep.provenance += "manifest=" + c.outputs + "/manifest.json seed=" +
                          std::to_string(c.seed);
    }
    const std::string rpath = c.outputs + "/report.json";
    {
        std::ofstream f(rpath);
        f << lqg::reports_to_json(reports) << "\n";
    }
    man.add_artifact(rpath);
    man.write(c.outputs + "/manifest.json");

    bool any_fail = false;
    for (const auto& r : reports) {
        if (r.pass.has_value() && !*r.pass) any_fail = true;
        std::cout << r.name << ": "
                  << (r.pass.has_value() ? (*r.pass ? "pass" : "FAIL") : "reported") << "\n";
    }
    return any_fail ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Liouville quantum gravity harmonic-ball simulator"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string config_path;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON config file (flags override)");
        sub->add_option("--gamma", cfg.gamma, "LQG parameter in [0,2)");
        sub->add_option("--alpha0", cfg.alpha0, "log-singularity weight");
        sub->add_option("--n", cfg.n, "grid cells per side (even, >= 16)");
        sub->add_option("--half-width", cfg.half_width, "box half-width");
        sub->add_option("--t", cfg.t_list, "mass values (increasing)");
        sub->add_option("--seed", cfg.seed, "pipeline seed");
        sub->add_option("--tol", cfg.tol, "solver relative tolerance");
        sub->add_option("--out", cfg.outputs, "output directory");
        sub->add_option("--initial-radius", cfg.initial_radius, "starting domain radius");
    };

    CLI::App* sf = app.add_subcommand("sample-field", "sample and export a GFF");
    add_common(sf);
    CLI::App* hb = app.add_subcommand("harmonic-ball", "grow harmonic balls");
    add_common(hb);
    CLI::App* mb = app.add_subcommand("metric-ball", "extract LQG metric balls");
    add_common(mb);
    mb->add_option("--xi", cfg.xi, "metric exponent xi = gamma/d_gamma");
    CLI::App* id = app.add_subcommand("idla", "run capacity IDLA against the harmonic ball");
    add_common(id);
    id->add_option("--walkers", cfg.n_walkers, "number of walkers");
    CLI::App* vf = app.add_subcommand("verify", "run diagnostic checks");
    add_common(vf);
    vf->add_option("--checks", cfg.checks,
                   "comma list: conservation,mean_value,boundary_mass,continuity,"
                   "crossings,annulus,roughness, or none");
    vf->add_option("--mask-file", cfg.mask_file, "grid file with a 0/1 mask to check instead of solving");
    vf->add_option("--green-points", cfg.green_points, "number of Green-potential probes");

    try {
        app.parse(argc, argv);
        // config file first, then re-parse so flags win
        if (!config_path.empty()) {
            apply_config_file(config_path, cfg);
            app.clear();
            app.parse(argc, argv);
        }
        if (sf->parsed()) return cmd_sample_field(cfg);
        if (hb->parsed()) return cmd_harmonic_ball(cfg);
        if (mb->parsed()) return cmd_metric_ball(cfg);
        if (id->parsed()) return cmd_idla(cfg);
        if (vf->parsed()) return cmd_verify(cfg);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
