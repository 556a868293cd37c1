// Command-line front end: loads posets/measures/kernels from JSON, computes
// order-aware distances and stability certificates, runs coupled-chain
// simulations and the property suite, and writes plot-ready CSV/JSON.
//
// Exit codes: 0 success, 2 configuration error, 3 I/O error, 4 domain error
// (invalid inputs or model preconditions), 5 failed assertion or property
// counterexample, 1 unexpected error.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "tov/coupling.hpp"
#include "tov/errors.hpp"
#include "tov/json_io.hpp"
#include "tov/kernel.hpp"
#include "tov/measure.hpp"
#include "tov/models.hpp"
#include "tov/ordered_affinity.hpp"
#include "tov/rng.hpp"
#include "tov/suite.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Values resolved from (in order of precedence): command-line flag, config
// file field, environment, built-in default.
struct Resolver {
    json config;
    fs::path config_dir;

    template <typename T>
    void fill(const CLI::Option* opt, const std::string& key, T& value) const {
        if (opt->count() > 0) return;
        if (config.contains(key)) value = config.at(key).get<T>();
    }

    void require(const std::string& key, const std::string& value) const {
        if (value.empty())
            throw tov::ConfigError("missing required field '" + key + "'");
    }

    fs::path resolve(const std::string& path) const {
        fs::path p = path;
        if (p.is_relative() && !config_dir.empty()) {
            if (fs::exists(config_dir / p) || !fs::exists(p)) return config_dir / p;
        }
        return p;
    }
};

std::uint64_t default_seed() {
    if (const char* env = std::getenv("TOV_SEED")) return std::strtoull(env, nullptr, 10);
    return 42;
}

tov::MarkovKernel load_kernel(const Resolver& r, const std::string& path) {
    const fs::path p = r.resolve(path);
    return tov::kernel_from_json(tov::read_json_file(p), p.parent_path());
}

void emit(const std::string& out, const std::string& text) {
    if (out.empty())
        std::cout << text;
    else
        tov::write_text_file(out, text);
}

// ---------------------------------------------------------------------------

int run_metrics(const Resolver& r, const std::string& poset_path,
                const std::string& mu_path, const std::string& nu_path,
                const std::string& out) {
    r.require("poset", poset_path);
    r.require("mu", mu_path);
    r.require("nu", nu_path);
    const tov::PosetPtr poset =
        tov::poset_from_json(tov::read_json_file(r.resolve(poset_path)));

    auto load_measure = [&](const std::string& path) {
        const json j = tov::read_json_file(r.resolve(path));
        if (j.contains("poset"))
            return tov::measure_from_json(j, r.resolve(path).parent_path());
        return tov::Measure(poset, j.at("weights").get<std::vector<double>>());
    };
    const tov::Measure mu = load_measure(mu_path);
    const tov::Measure nu = load_measure(nu_path);

    const tov::UpsetSup d_mn = tov::max_upset_deficiency(mu, nu);
    const tov::UpsetSup d_nm = tov::max_upset_deficiency(nu, mu);
    const json result = {
        {"tv", tov::tv_distance(mu, nu)},
        {"affinity", tov::affinity(mu, nu)},
        {"alpha_o_mu_nu", tov::ordered_affinity(mu, nu)},
        {"alpha_o_nu_mu", tov::ordered_affinity(nu, mu)},
        {"gamma", tov::gamma_distance(mu, nu)},
        {"beta", tov::beta_distance(mu, nu)},
        {"deficiency_mu_nu",
         {{"value", d_mn.value}, {"witness", d_mn.witness.elements()}}},
        {"deficiency_nu_mu",
         {{"value", d_nm.value}, {"witness", d_nm.witness.elements()}}},
        {"dominated_mu_nu", tov::stochastically_dominated(mu, nu)},
        {"dominated_nu_mu", tov::stochastically_dominated(nu, mu)},
    };
    emit(out, result.dump(2) + "\n");
    return 0;
}

int run_certify(const Resolver& r, const std::string& kernel_path, int m_max,
                const std::string& out) {
    r.require("kernel", kernel_path);
    const tov::MarkovKernel kernel = load_kernel(r, kernel_path);
    const tov::StabilityCertificate cert = tov::certify_stationary(kernel, m_max);
    emit(out, tov::certificate_to_json(cert).dump(2) + "\n");
    return 0;
}

tov::GridModel build_model(const std::string& model, double capacity, int grid,
                           int cells, int n, double s1, double s2) {
    if (model == "inventory")
        return tov::inventory_model(capacity, grid, {0.0, 1.0, cells});
    if (model == "splitting") return tov::splitting_lattice_model(n, s1, s2);
    throw tov::ConfigError("unknown model '" + model + "'");
}

int run_couple_sim(const Resolver& r, const std::string& kernel_path,
                   const std::string& model, double capacity, int grid, int cells,
                   int n, double s1, double s2, int x0, int y0, int horizon,
                   std::size_t reps, std::uint64_t seed, const std::string& out) {
    std::optional<tov::MarkovKernel> kernel;
    if (!kernel_path.empty())
        kernel = load_kernel(r, kernel_path);
    else if (!model.empty())
        kernel = build_model(model, capacity, grid, cells, n, s1, s2).kernel;
    else
        throw tov::ConfigError("couple-sim needs a kernel file or a model");

    if (y0 < 0) y0 = kernel->size() - 1;
    const tov::CoupledKernel coupled = tov::absorbing_coupled_kernel(*kernel);
    const tov::CoupledChainStats stats =
        tov::simulate_coupled_chain(coupled, x0, y0, horizon, reps, seed);

    tov::CsvWriter csv({"t", "p_never_leq", "p_never_geq", "se_leq", "se_geq",
                        "gamma_exact", "bound"});
    tov::Measure mu = tov::Measure::dirac(kernel->poset(), x0);
    tov::Measure nu = tov::Measure::dirac(kernel->poset(), y0);
    for (int t = 0; t <= horizon; ++t) {
        csv.add_row({static_cast<double>(t), stats.p_never_leq[t],
                     stats.p_never_geq[t], stats.se_leq[t], stats.se_geq[t],
                     tov::gamma_distance(mu, nu),
                     stats.p_never_leq[t] + stats.p_never_geq[t]});
        if (t < horizon) {
            mu = tov::apply(mu, *kernel);
            nu = tov::apply(nu, *kernel);
        }
    }
    emit(out, csv.text());
    return 0;
}

int run_model(const std::string& model, int horizon, double capacity, int grid,
              int cells, int n, double s1, double s2, int trajectory,
              std::uint64_t seed, const std::string& out,
              const std::string& out_prefix) {
    if (model == "bernoulli") {
        tov::CsvWriter csv({"t", "gamma", "bound"});
        double bound = 1.0;  // sigma >= 1/2, so gamma contracts by half per step
        for (int t = 0; t <= horizon; ++t) {
            csv.add_row({static_cast<double>(t), tov::bernoulli_gamma(t), bound});
            bound *= 0.5;
        }
        emit(out, csv.text());
        return 0;
    }

    const tov::GridModel grid_model =
        build_model(model, capacity, grid, cells, n, s1, s2);
    const std::string prefix = out_prefix.empty() ? model + "_" : out_prefix;
    tov::write_json_file(prefix + "kernel.json",
                         tov::kernel_to_json(grid_model.kernel));

    const tov::StabilityCertificate cert =
        tov::certify_stationary(grid_model.kernel, 5);
    json cert_json = tov::certificate_to_json(cert);
    cert_json["shock_cell_mass"] = grid_model.shock_cell_mass;
    tov::write_json_file(prefix + "certificate.json", cert_json);

    tov::CsvWriter csv({"t", "gamma", "bound"});
    tov::Measure mu = tov::Measure::dirac(grid_model.kernel.poset(),
                                          grid_model.kernel.size() / 2);
    const double gamma0 = tov::gamma_distance(mu, cert.stationary);
    double bound = gamma0;
    for (int t = 0; t <= horizon; ++t) {
        csv.add_row({static_cast<double>(t),
                     tov::gamma_distance(mu, cert.stationary), bound});
        mu = tov::apply(mu, grid_model.kernel);
        bound *= cert.rate;
    }
    tov::write_text_file(prefix + "convergence.csv", csv.text());

    if (trajectory > 0) {
        tov::Rng rng(seed);
        tov::CsvWriter path_csv({"t", "state"});
        int state = grid_model.kernel.size() / 2;
        for (int t = 0; t <= trajectory; ++t) {
            path_csv.add_row({static_cast<double>(t), grid_model.grid[state]});
            const double u = rng.uniform01();
            double acc = 0.0;
            for (int j = 0; j < grid_model.kernel.size(); ++j) {
                acc += grid_model.kernel.at(state, j);
                if (u < acc || j + 1 == grid_model.kernel.size()) {
                    state = j;
                    break;
                }
            }
        }
        tov::write_text_file(prefix + "trajectory.csv", path_csv.text());
    }

    std::cout << "model " << model << ": sigma_m=" << tov::fmt_real(cert.sigma_m)
              << " rate=" << tov::fmt_real(cert.rate) << " m=" << cert.m << "\n";
    return 0;
}

int run_suite(int trials, std::uint64_t seed, const std::string& out) {
    const tov::SuiteReport report = tov::run_property_suite(seed, trials);
    const std::string text = tov::format_report(report);
    if (!out.empty()) tov::write_text_file(out, text);
    std::cout << text;
    return report.all_passed() ? 0 : 5;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Order-aware stability toolkit for finite Markov chains"};
    app.require_subcommand(1);

    std::string config_path;
    app.add_option("--config", config_path, "JSON config; flags override fields")
        ->check(CLI::ExistingFile);

    // metrics
    auto* metrics = app.add_subcommand("metrics", "Distances between two measures");
    std::string m_poset, m_mu, m_nu, m_out;
    auto* o_poset = metrics->add_option("--poset", m_poset, "poset JSON path");
    auto* o_mu = metrics->add_option("--mu", m_mu, "first measure JSON path");
    auto* o_nu = metrics->add_option("--nu", m_nu, "second measure JSON path");
    auto* o_mout = metrics->add_option("--out", m_out, "output JSON path");

    // certify
    auto* certify = app.add_subcommand("certify", "Stationary certificate");
    std::string c_kernel, c_out;
    int c_mmax = 10;
    auto* o_ckernel = certify->add_option("--kernel", c_kernel, "kernel JSON path");
    auto* o_cmmax = certify->add_option("--m-max", c_mmax, "largest power to try");
    auto* o_cout = certify->add_option("--out", c_out, "output JSON path");

    // couple-sim
    auto* couple = app.add_subcommand("couple-sim", "Coupled chain simulation");
    std::string s_kernel, s_model, s_out;
    double s_capacity = 2.0, s_s1 = 0.3, s_s2 = 0.3;
    int s_grid = 101, s_cells = 256, s_n = 8, s_x0 = 0, s_y0 = -1, s_horizon = 20;
    std::size_t s_reps = 100000;
    std::uint64_t s_seed = default_seed();
    auto* o_skernel = couple->add_option("--kernel", s_kernel, "kernel JSON path");
    auto* o_smodel = couple->add_option("--model", s_model, "inventory|splitting");
    auto* o_scap = couple->add_option("--capacity", s_capacity, "inventory capacity");
    auto* o_sgrid = couple->add_option("--grid", s_grid, "inventory grid points");
    auto* o_scells = couple->add_option("--cells", s_cells, "shock quantile cells");
    auto* o_sn = couple->add_option("--n", s_n, "splitting lattice size");
    auto* o_ss1 = couple->add_option("--s1", s_s1, "down-split probability");
    auto* o_ss2 = couple->add_option("--s2", s_s2, "up-split probability");
    auto* o_sx0 = couple->add_option("--x0", s_x0, "first start state");
    auto* o_sy0 = couple->add_option("--y0", s_y0, "second start state (default top)");
    auto* o_shor = couple->add_option("--horizon", s_horizon, "steps to simulate");
    auto* o_sreps = couple->add_option("--reps", s_reps, "replications");
    auto* o_sseed = couple->add_option("--seed", s_seed, "RNG seed");
    auto* o_sout = couple->add_option("--out", s_out, "output CSV path");

    // model-run
    auto* model_run = app.add_subcommand("model-run", "Run a built-in model");
    std::string r_model, r_out, r_prefix;
    int r_horizon = 12, r_grid = 101, r_cells = 256, r_n = 8, r_trajectory = 0;
    double r_capacity = 2.0, r_s1 = 0.3, r_s2 = 0.3;
    std::uint64_t r_seed = default_seed();
    auto* o_rmodel =
        model_run->add_option("--model", r_model, "bernoulli|inventory|splitting");
    auto* o_rhor = model_run->add_option("--t", r_horizon, "horizon");
    auto* o_rcap = model_run->add_option("--capacity", r_capacity, "inventory capacity");
    auto* o_rgrid = model_run->add_option("--grid", r_grid, "inventory grid points");
    auto* o_rcells = model_run->add_option("--cells", r_cells, "shock quantile cells");
    auto* o_rn = model_run->add_option("--n", r_n, "splitting lattice size");
    auto* o_rs1 = model_run->add_option("--s1", r_s1, "down-split probability");
    auto* o_rs2 = model_run->add_option("--s2", r_s2, "up-split probability");
    auto* o_rtraj =
        model_run->add_option("--trajectory", r_trajectory, "also emit a sample path");
    auto* o_rseed = model_run->add_option("--seed", r_seed, "RNG seed");
    auto* o_rout = model_run->add_option("--out", r_out, "output CSV (bernoulli)");
    auto* o_rprefix =
        model_run->add_option("--out-prefix", r_prefix, "output prefix (grid models)");

    // suite
    auto* suite = app.add_subcommand("suite", "Run the property suite");
    int p_trials = 200;
    std::uint64_t p_seed = default_seed();
    std::string p_out;
    auto* o_ptrials = suite->add_option("--trials", p_trials, "instances per property");
    auto* o_pseed = suite->add_option("--seed", p_seed, "RNG seed");
    auto* o_pout = suite->add_option("--out", p_out, "report text path");

    CLI11_PARSE(app, argc, argv);

    try {
        Resolver r;
        if (!config_path.empty()) {
            r.config = tov::read_json_file(config_path);
            r.config_dir = fs::path(config_path).parent_path();
        }

        // A config may state its experiment kind; it must then match the
        // subcommand it is used with.
        if (r.config.contains("experiment")) {
            const auto kind = r.config.at("experiment").get<std::string>();
            std::string active;
            for (const CLI::App* sub : app.get_subcommands(
                     [](const CLI::App* s) { return s->parsed(); }))
                active = sub->get_name();
            if (kind != active)
                throw tov::ConfigError("config is for experiment '" + kind +
                                       "' but subcommand is '" + active + "'");
        }

        if (app.got_subcommand(metrics)) {
            r.fill(o_poset, "poset", m_poset);
            r.fill(o_mu, "mu", m_mu);
            r.fill(o_nu, "nu", m_nu);
            r.fill(o_mout, "out", m_out);
            return run_metrics(r, m_poset, m_mu, m_nu, m_out);
        }
        if (app.got_subcommand(certify)) {
            r.fill(o_ckernel, "kernel", c_kernel);
            r.fill(o_cmmax, "m_max", c_mmax);
            r.fill(o_cout, "out", c_out);
            r.require("kernel", c_kernel);
            return run_certify(r, c_kernel, c_mmax, c_out);
        }
        if (app.got_subcommand(couple)) {
            r.fill(o_skernel, "kernel", s_kernel);
            r.fill(o_smodel, "model", s_model);
            r.fill(o_scap, "capacity", s_capacity);
            r.fill(o_sgrid, "grid", s_grid);
            r.fill(o_scells, "cells", s_cells);
            r.fill(o_sn, "n", s_n);
            r.fill(o_ss1, "s1", s_s1);
            r.fill(o_ss2, "s2", s_s2);
            r.fill(o_sx0, "x0", s_x0);
            r.fill(o_sy0, "y0", s_y0);
            r.fill(o_shor, "horizon", s_horizon);
            r.fill(o_sreps, "reps", s_reps);
            r.fill(o_sseed, "seed", s_seed);
            r.fill(o_sout, "out", s_out);
            return run_couple_sim(r, s_kernel, s_model, s_capacity, s_grid, s_cells,
                                  s_n, s_s1, s_s2, s_x0, s_y0, s_horizon, s_reps,
                                  s_seed, s_out);
        }
        if (app.got_subcommand(model_run)) {
            r.fill(o_rmodel, "model", r_model);
            r.fill(o_rhor, "t", r_horizon);
            r.fill(o_rcap, "capacity", r_capacity);
            r.fill(o_rgrid, "grid", r_grid);
            r.fill(o_rcells, "cells", r_cells);
            r.fill(o_rn, "n", r_n);
            r.fill(o_rs1, "s1", r_s1);
            r.fill(o_rs2, "s2", r_s2);
            r.fill(o_rtraj, "trajectory", r_trajectory);
            r.fill(o_rseed, "seed", r_seed);
            r.fill(o_rout, "out", r_out);
            r.fill(o_rprefix, "out_prefix", r_prefix);
            r.require("model", r_model);
            return run_model(r_model, r_horizon, r_capacity, r_grid, r_cells, r_n,
                             r_s1, r_s2, r_trajectory, r_seed, r_out, r_prefix);
        }
        if (app.got_subcommand(suite)) {
            r.fill(o_ptrials, "trials", p_trials);
            r.fill(o_pseed, "seed", p_seed);
            r.fill(o_pout, "out", p_out);
            return run_suite(p_trials, p_seed, p_out);
        }
        throw tov::ConfigError("no subcommand selected");
    } catch (const tov::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const tov::IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 3;
    } catch (const tov::AssertionFailure& e) {
        std::cerr << "assertion failure: " << e.what() << "\n";
        return 5;
    } catch (const tov::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return 1;
    }
}
