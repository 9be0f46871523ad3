#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "ldrwe/entropy.hpp"
#include "ldrwe/errors.hpp"
#include "ldrwe/parallel.hpp"
#include "ldrwe/path_oracle.hpp"
#include "ldrwe/quenched_rate.hpp"
#include "ldrwe/tilted_measures.hpp"

namespace ldrwe::cli {

namespace {

using nlohmann::json;

// ---------------------------------------------------------------------------
// output plumbing
// ---------------------------------------------------------------------------

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void add_row(std::vector<std::string> row) { rows.push_back(std::move(row)); }
};

std::string fmt(double v) { return format_double(v); }

void write_table(const Table& table, const std::string& format, std::ostream& os) {
    if (format == "json") {
        json arr = json::array();
        for (const auto& row : table.rows) {
            json obj;
            for (std::size_t c = 0; c < table.columns.size(); ++c) obj[table.columns[c]] = row[c];
            arr.push_back(obj);
        }
        os << arr.dump(2) << '\n';
        return;
    }
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c) os << ',';
        os << table.columns[c];
    }
    os << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) os << ',';
            os << row[c];
        }
        os << '\n';
    }
}

void vector_columns(Table& table, const std::string& prefix, int dim) {
    for (int k = 0; k < dim; ++k) table.columns.push_back(prefix + "_" + std::to_string(k));
}

void push_vector(std::vector<std::string>& row, const Eigen::VectorXd& v) {
    for (int k = 0; k < v.size(); ++k) row.push_back(fmt(v(k)));
}

// ---------------------------------------------------------------------------
// shared option state
// ---------------------------------------------------------------------------

struct CommonOptions {
    std::string preset_name;
    std::string config_path;
    std::string out_path;
    std::string format;
    std::vector<double> xi;
    std::vector<double> rho;
    int n = 0;
    std::vector<int> n_grid;
    std::int64_t replicas = 0;
    std::uint64_t seed = 0;
    bool seed_set = false;
    double window_radius = -1.0;
    double epsilon = -1.0;
    double tol_newton = -1.0;
    double tol_identity = -1.0;
    int samples = 20;
    int k = 1;
    std::string law = "averaged";
    std::string kind = "tilted";

    void register_model_flags(CLI::App* cmd) {
        cmd->add_option("--preset", preset_name, "built-in model name");
        cmd->add_option("--config", config_path, "path to a config file");
        cmd->add_option("--out", out_path, "output path (default stdout)");
        cmd->add_option("--format", format, "csv or json");
        cmd->add_option("--seed", seed, "64-bit unsigned seed")->each([this](const std::string&) {
            seed_set = true;
        });
        cmd->add_option("--tol-newton", tol_newton, "Newton solver tolerance override");
        cmd->add_option("--tol-identity", tol_identity, "identity-suite tolerance override");
    }

    ExperimentConfig resolve_config() const {
        ExperimentConfig cfg;
        if (!preset_name.empty() && !config_path.empty())
            throw ConfigError("preset", "give either --preset or --config, not both");
        if (!preset_name.empty()) {
            cfg = preset(preset_name);
        } else if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw ConfigError("config", "cannot open '" + config_path + "'");
            std::ostringstream ss;
            ss << in.rdbuf();
            cfg = parse_config(ss.str());
        } else {
            throw ConfigError("preset", "a model is required: --preset or --config");
        }
        if (!format.empty()) {
            if (format != "csv" && format != "json")
                throw ConfigError("format", "must be 'csv' or 'json'");
            cfg.format = format;
        }
        if (seed_set) cfg.seed = seed;
        if (replicas > 0) cfg.replicas = replicas;
        if (window_radius >= 0.0) cfg.window_radius = window_radius;
        if (tol_newton > 0.0) cfg.tol_newton = tol_newton;
        if (tol_identity > 0.0) cfg.tol_identity = tol_identity;
        return cfg;
    }
};

Eigen::VectorXd to_vector(const std::vector<double>& values, int dim, const std::string& field) {
    if (static_cast<int>(values.size()) != dim)
        throw ConfigError(field, "expected " + std::to_string(dim) + " components");
    Eigen::VectorXd v(dim);
    for (int k = 0; k < dim; ++k) v(k) = values[static_cast<std::size_t>(k)];
    return v;
}

// velocity grid: explicit --xi, else config xi_grid, else the default segment
std::vector<Eigen::VectorXd> resolve_grid(const Model& model, const CommonOptions& opt) {
    std::vector<Eigen::VectorXd> grid;
    if (!opt.xi.empty()) {
        grid.push_back(to_vector(opt.xi, model.steps.dim(), "xi"));
    } else if (!model.cfg.xi_grid.empty()) {
        for (std::size_t i = 0; i < model.cfg.xi_grid.size(); ++i) {
            grid.push_back(to_vector(model.cfg.xi_grid[i], model.steps.dim(),
                                     "xi_grid[" + std::to_string(i) + "]"));
        }
    } else {
        grid = default_xi_grid(model);
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!in_relative_interior(grid[i], model.geom, model.steps)) {
            std::string field = !opt.xi.empty() ? "xi" : "xi_grid[" + std::to_string(i) + "]";
            throw ConfigError(field, "velocity is outside the relative interior of the step hull");
        }
    }
    return grid;
}

std::vector<int> resolve_n_grid(const Model& model, const CommonOptions& opt,
                                std::vector<int> fallback) {
    if (!opt.n_grid.empty()) return opt.n_grid;
    if (!model.cfg.horizons.empty()) return model.cfg.horizons;
    return fallback;
}

struct OutputSink {
    std::ofstream file;
    std::ostream* os = nullptr;

    OutputSink(const std::string& path, std::ostream& fallback) {
        if (path.empty()) {
            os = &fallback;
        } else {
            file.open(path);
            if (!file) throw ConfigError("out", "cannot open '" + path + "' for writing");
            os = &file;
        }
    }
    std::ostream& stream() { return *os; }
};

// ---------------------------------------------------------------------------
// subcommands
// ---------------------------------------------------------------------------

int cmd_rate_curve(const CommonOptions& opt, std::ostream& out) {
    Model model(opt.resolve_config());
    SolverOptions solver{model.cfg.tol_newton, 100};
    auto grid = resolve_grid(model, opt);
    const int d = model.steps.dim();
    OutputSink sink(opt.out_path, out);

    Table table;
    vector_columns(table, "xi", d);
    if (opt.law == "averaged") {
        vector_columns(table, "rho", d);
        table.columns.insert(table.columns.end(), {"value", "residual"});
        std::vector<RateSolution> sols(grid.size());
        parallel_for(grid.size(), [&](std::size_t i) {
            sols[i] = rate_averaged(grid[i], model.qhat, model.steps, model.geom, solver);
        });
        for (const auto& sol : sols) {
            std::vector<std::string> row;
            push_vector(row, sol.xi);
            push_vector(row, sol.rho);
            row.push_back(fmt(sol.value));
            row.push_back(fmt(sol.residual));
            table.add_row(std::move(row));
        }
    } else if (opt.law == "quenched-constant") {
        if (model.env.kind == EnvKind::SpatialIIDField)
            throw ConfigError("law", "quenched-constant requires a constant or deterministic environment");
        vector_columns(table, "rho_a", d);
        table.columns.push_back("i_averaged");
        vector_columns(table, "rho_q", d);
        table.columns.insert(table.columns.end(),
                             {"i_quenched", "gap", "residual_averaged", "residual_quenched"});
        std::vector<std::pair<RateSolution, RateSolution>> sols(grid.size());
        parallel_for(grid.size(), [&](std::size_t i) {
            sols[i] = {rate_averaged(grid[i], model.qhat, model.steps, model.geom, solver),
                       rate_quenched(grid[i], model.env.mixture, model.steps, model.geom, solver)};
        });
        for (const auto& [a, q] : sols) {
            std::vector<std::string> row;
            push_vector(row, a.xi);
            push_vector(row, a.rho);
            row.push_back(fmt(a.value));
            push_vector(row, q.rho);
            row.push_back(fmt(q.value));
            row.push_back(fmt(q.value - a.value));
            row.push_back(fmt(a.residual));
            row.push_back(fmt(q.residual));
            table.add_row(std::move(row));
        }
    } else {
        throw ConfigError("law", "must be 'averaged' or 'quenched-constant'");
    }
    write_table(table, model.cfg.format, sink.stream());
    return 0;
}

int cmd_tilt(const CommonOptions& opt, std::ostream& out) {
    Model model(opt.resolve_config());
    if (opt.xi.empty()) throw ConfigError("xi", "tilt requires --xi");
    Eigen::VectorXd xi = to_vector(opt.xi, model.steps.dim(), "xi");
    if (!in_relative_interior(xi, model.geom, model.steps))
        throw ConfigError("xi", "velocity is outside the relative interior of the step hull");
    const int n = opt.n > 0 ? opt.n : 8;
    OutputSink sink(opt.out_path, out);

    SolverOptions solver{model.cfg.tol_newton, 100};
    RateSolution sol = rate_averaged(xi, model.qhat, model.steps, model.geom, solver);
    StepKernel tilted = tilted_step_kernel(sol.rho, model.qhat, model.steps);

    json doc;
    doc["xi"] = std::vector<double>(xi.data(), xi.data() + xi.size());
    doc["rho"] = std::vector<double>(sol.rho.data(), sol.rho.data() + sol.rho.size());
    doc["rate_value"] = sol.value;
    doc["log_phi"] = log_mgf(sol.rho, model.qhat, model.steps).value;
    doc["averaged_tilted_kernel"] = tilted.probs;
    doc["n"] = n;

    if (model.env.kind != EnvKind::SpatialIIDField) {
        json kernels = json::array();
        for (const auto& atom : model.env.mixture.atoms)
            kernels.push_back(sc_mu_kernel(sol.rho, atom, model.steps).probs);
        doc["atom_mu_kernels"] = kernels;
        if (model.env.mixture.strictly_positive()) {
            TiltedKernelFamily nu = sc_nu_kernel(xi, model.env.mixture, model.steps, model.geom);
            doc["rho_quenched"] = std::vector<double>(nu.rho.data(), nu.rho.data() + nu.rho.size());
            json nuk = json::array();
            for (const auto& kk : nu.atom_kernels) nuk.push_back(kk.probs);
            doc["atom_nu_kernels"] = nuk;
        }
    }

    std::vector<EnvironmentSample> windows;
    for (int s = 0; s < 4; ++s)
        windows.push_back(sample_levels(model.env, n + 1, static_cast<std::uint64_t>(s)));
    auto unit = [](const EnvironmentSample&) { return 1.0; };
    doc["doob_residual_unit_u"] = doob_residual(sol.rho, windows, n, unit, model.steps).residual;

    std::vector<double> trace;
    for (int i = 1; i <= n; ++i)
        trace.push_back(u_n_value(sol.rho, windows[0], model.steps, i));
    doc["u_n_trace"] = trace;

    sink.stream() << doc.dump(2) << '\n';
    return 0;
}

int cmd_entropy_decompose(const CommonOptions& opt, std::ostream& out) {
    Model model(opt.resolve_config());
    if (model.env.kind == EnvKind::SpatialIIDField)
        throw ConfigError("env_kind", "entropy decomposition requires a constant environment");
    if (!model.env.mixture.strictly_positive())
        throw ConfigError("atom_probs", "entropy decomposition needs strictly positive atoms");
    auto grid = resolve_grid(model, opt);
    OutputSink sink(opt.out_path, out);

    Table table;
    vector_columns(table, "xi", model.steps.dim());
    vector_columns(table, "rho", model.steps.dim());
    table.columns.insert(table.columns.end(),
                         {"h_env", "h_q", "sum", "i_avg", "i_quenched", "residual"});
    std::vector<EntropyReport> reps(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) {
        reps[i] = sc_entropy_decomposition(grid[i], model.env.mixture, model.steps, model.geom);
    });
    for (const auto& rep : reps) {
        std::vector<std::string> row;
        push_vector(row, rep.xi);
        push_vector(row, rep.rho);
        for (double v : {rep.h_env, rep.h_q, rep.sum, rep.i_avg, rep.i_quenched, rep.residual})
            row.push_back(fmt(v));
        table.add_row(std::move(row));
    }
    write_table(table, model.cfg.format, sink.stream());
    return 0;
}

int cmd_simulate(const CommonOptions& opt, std::ostream& out) {
    Model model(opt.resolve_config());
    const int n = opt.n > 0 ? opt.n : 20;
    OutputSink sink(opt.out_path, out);

    EndpointLaw law = (opt.law == "quenched")
                          ? endpoint_law(sample_levels(model.env, n), model.steps, n)
                          : endpoint_law(model.qhat, model.steps, n);

    // deterministic row order: sort endpoints lexicographically
    std::vector<std::pair<LatticePoint, double>> rows(law.log_probs.begin(), law.log_probs.end());
    std::sort(rows.begin(), rows.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    Table table;
    vector_columns(table, "x", model.steps.dim());
    table.columns.insert(table.columns.end(), {"prob", "log_prob"});
    for (const auto& [x, logp] : rows) {
        std::vector<std::string> row;
        for (auto c : x) row.push_back(std::to_string(c));
        row.push_back(fmt(std::exp(logp)));
        row.push_back(fmt(logp));
        table.add_row(std::move(row));
    }
    write_table(table, model.cfg.format, sink.stream());
    return 0;
}

int cmd_is_estimate(const CommonOptions& opt, std::ostream& out) {
    Model model(opt.resolve_config());
    if (opt.xi.empty()) throw ConfigError("xi", "is-estimate requires --xi");
    Eigen::VectorXd xi = to_vector(opt.xi, model.steps.dim(), "xi");
    const int n = opt.n > 0 ? opt.n : 40;
    EstimatorKind kind;
    if (opt.kind == "tilted") kind = EstimatorKind::Tilted;
    else if (opt.kind == "naive") kind = EstimatorKind::Naive;
    else throw ConfigError("kind", "must be 'tilted' or 'naive'");
    OutputSink sink(opt.out_path, out);

    MCEstimate est = importance_sample(model.qhat, model.steps, model.geom, n, xi,
                                       model.cfg.window_radius, model.cfg.replicas,
                                       model.cfg.seed, kind);
    double exact = std::numeric_limits<double>::quiet_NaN();
    try {
        EndpointLaw law = endpoint_law(model.qhat, model.steps, n, 4'000'000);
        exact = std::exp(log_window_mass(law, VelocityWindow{xi, model.cfg.window_radius}));
    } catch (const BudgetExceeded&) {
        // exact column stays nan when the DP is too large
    }

    Table table;
    table.columns = {"n"};
    vector_columns(table, "xi", model.steps.dim());
    table.columns.insert(table.columns.end(),
                         {"kind", "estimate", "std_error", "replicas", "seed", "dp_exact"});
    std::vector<std::string> row{std::to_string(n)};
    push_vector(row, xi);
    row.push_back(kind == EstimatorKind::Tilted ? "tilted" : "naive");
    row.push_back(fmt(est.mean));
    row.push_back(fmt(est.std_error));
    row.push_back(std::to_string(est.replicas));
    row.push_back(std::to_string(est.seed));
    row.push_back(fmt(exact));
    table.add_row(std::move(row));
    write_table(table, model.cfg.format, sink.stream());
    return 0;
}

int cmd_ldp_slope(const CommonOptions& opt, std::ostream& out) {
    Model model(opt.resolve_config());
    if (opt.xi.empty()) throw ConfigError("xi", "ldp-slope requires --xi");
    Eigen::VectorXd xi = to_vector(opt.xi, model.steps.dim(), "xi");
    auto n_grid = resolve_n_grid(model, opt, {50, 100, 150, 200});
    OutputSink sink(opt.out_path, out);

    Table table;
    if (opt.law == "averaged") {
        table.columns = {"n", "slope"};
        for (const auto& pt :
             ldp_slope(model.qhat, model.steps, xi, n_grid, model.cfg.window_radius)) {
            table.add_row({std::to_string(pt.n), fmt(pt.slope)});
        }
    } else if (opt.law == "quenched-constant") {
        if (model.env.kind == EnvKind::SpatialIIDField)
            throw ConfigError("law", "quenched-constant requires a constant environment");
        table.columns = {"n", "slope_mean", "slope_se", "samples"};
        int max_n = *std::max_element(n_grid.begin(), n_grid.end());
        for (int n : n_grid) {
            double sum = 0.0, sumsq = 0.0;
            for (int s = 0; s < opt.samples; ++s) {
                EnvironmentSample env =
                    sample_levels(model.env, max_n, static_cast<std::uint64_t>(s));
                auto pts = ldp_slope(env, model.steps, xi, {n}, model.cfg.window_radius);
                sum += pts[0].slope;
                sumsq += pts[0].slope * pts[0].slope;
            }
            double ns = static_cast<double>(opt.samples);
            double mean = sum / ns;
            double var = std::max(sumsq / ns - mean * mean, 0.0);
            double se = (opt.samples > 1) ? std::sqrt(var / (ns - 1.0)) : 0.0;
            table.add_row({std::to_string(n), fmt(mean), fmt(se), std::to_string(opt.samples)});
        }
    } else {
        throw ConfigError("law", "must be 'averaged' or 'quenched-constant'");
    }
    write_table(table, model.cfg.format, sink.stream());
    return 0;
}

int cmd_concentration(const CommonOptions& opt, std::ostream& out) {
    Model model(opt.resolve_config());
    if (model.env.kind == EnvKind::SpatialIIDField)
        throw ConfigError("env_kind", "concentration requires a constant environment");
    Eigen::VectorXd rho;
    if (!opt.rho.empty()) {
        rho = to_vector(opt.rho, model.steps.dim(), "rho");
    } else if (!model.cfg.rho_grid.empty()) {
        rho = to_vector(model.cfg.rho_grid.front(), model.steps.dim(), "rho_grid[0]");
    } else {
        rho = model.geom.l_basis().col(0);
    }
    double eps = opt.epsilon;
    if (eps <= 0.0) eps = 0.5 * jensen_gap(rho, model.env.mixture, model.steps);
    if (eps <= 0.0) throw ConfigError("epsilon", "epsilon must be positive (degenerate mixture?)");
    auto n_grid = resolve_n_grid(model, opt, {25, 50, 100, 200});
    OutputSink sink(opt.out_path, out);

    ConcentrationReport rep = log_un_concentration(rho, model.env.mixture, model.steps, n_grid,
                                                   model.cfg.replicas, eps, model.cfg.seed);
    Table table;
    table.columns = {"n",       "mean_rate",       "se_rate", "tail_frequency",
                     "epsilon", "exact_mean_rate", "fit_slope"};
    for (const auto& pt : rep.points) {
        table.add_row({std::to_string(pt.n), fmt(pt.mean_rate), fmt(pt.se_rate),
                       fmt(pt.tail_frequency), fmt(rep.epsilon), fmt(rep.exact_mean_rate),
                       fmt(rep.fitted_log_slope)});
    }
    write_table(table, model.cfg.format, sink.stream());
    return 0;
}

int cmd_dim_probe(const CommonOptions& opt, std::ostream& out) {
    Model model(opt.resolve_config());
    const int n = opt.n > 0 ? opt.n : 40;
    OutputSink sink(opt.out_path, out);

    std::vector<Eigen::VectorXd> xi_list;
    if (!opt.xi.empty()) {
        xi_list.push_back(to_vector(opt.xi, model.steps.dim(), "xi"));
    } else if (!model.cfg.xi_grid.empty()) {
        for (std::size_t i = 0; i < model.cfg.xi_grid.size(); ++i)
            xi_list.push_back(to_vector(model.cfg.xi_grid[i], model.steps.dim(),
                                        "xi_grid[" + std::to_string(i) + "]"));
    } else {
        Eigen::VectorXd lln = lln_velocity(model.qhat, model.steps);
        xi_list.push_back(lln);
        Eigen::VectorXd far = model.steps.step_vector(model.geom.extreme_points().front());
        xi_list.push_back(lln + 0.3 * (far - lln));
    }

    auto rows = dimension_gap_probe(model.env, model.steps, xi_list, n, opt.samples,
                                    model.cfg.window_radius);
    Table table;
    vector_columns(table, "xi", model.steps.dim());
    table.columns.insert(table.columns.end(),
                         {"averaged_slope", "quenched_mean", "quenched_se", "gap", "gap_sig"});
    for (const auto& r : rows) {
        std::vector<std::string> row;
        push_vector(row, r.xi);
        for (double v : {r.averaged_slope, r.quenched_mean, r.quenched_se, r.gap, r.gap_sig})
            row.push_back(fmt(v));
        table.add_row(std::move(row));
    }
    write_table(table, model.cfg.format, sink.stream());
    return 0;
}

int cmd_verify(const CommonOptions& opt, std::ostream& out, std::ostream& err) {
    Model model(opt.resolve_config());
    OutputSink sink(opt.out_path, out);
    auto results = verify_suite(model);

    int failures = 0;
    const CheckResult* first_fail = nullptr;
    for (const auto& r : results) {
        char line[256];
        std::snprintf(line, sizeof(line), "%-4s %-42s residual=%s %s tol=%g lhs=%s rhs=%s",
                      r.pass ? "ok" : "FAIL", r.name.c_str(), fmt(r.residual).c_str(),
                      r.geq ? ">=" : "<=", r.tol, fmt(r.lhs).c_str(), fmt(r.rhs).c_str());
        sink.stream() << line << '\n';
        if (!r.pass) {
            ++failures;
            if (!first_fail) first_fail = &r;
        }
    }
    sink.stream() << "verify: " << (results.size() - static_cast<std::size_t>(failures)) << " ok, "
                  << failures << " failed\n";
    if (first_fail) {
        err << "verify failed at '" << first_fail->name << "': lhs=" << fmt(first_fail->lhs)
            << " rhs=" << fmt(first_fail->rhs) << " residual=" << fmt(first_fail->residual)
            << (first_fail->geq ? " >= " : " <= ") << first_fail->tol << " violated\n";
        return 1;
    }
    return 0;
}

} // namespace

Model::Model(const ExperimentConfig& c)
    : cfg(c), steps(c.make_step_set()), geom(Geometry::build(steps)),
      env(c.make_environment()), qhat(averaged_kernel(env)) {}

std::vector<Eigen::VectorXd> default_xi_grid(const Model& model, int count) {
    const auto& extremes = model.geom.extreme_points();
    Eigen::VectorXd lln = lln_velocity(model.qhat, model.steps);
    // farthest-apart extreme pair, ties broken by index order
    int best_i = extremes[0], best_j = extremes[1 % extremes.size()];
    double best = -1.0;
    for (std::size_t a = 0; a < extremes.size(); ++a) {
        for (std::size_t b = a + 1; b < extremes.size(); ++b) {
            double dist = (model.steps.step_vector(extremes[a]) -
                           model.steps.step_vector(extremes[b])).squaredNorm();
            if (dist > best + 1e-12) {
                best = dist;
                best_i = extremes[a];
                best_j = extremes[b];
            }
        }
    }
    Eigen::VectorXd a = lln + 0.9 * (model.steps.step_vector(best_i) - lln);
    Eigen::VectorXd b = lln + 0.9 * (model.steps.step_vector(best_j) - lln);
    std::vector<Eigen::VectorXd> grid;
    grid.reserve(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
        double t = static_cast<double>(k) / static_cast<double>(count - 1);
        grid.push_back(a + t * (b - a));
    }
    return grid;
}

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"large-deviation toolkit for random walks in dynamic random environments"};
    app.require_subcommand(1);

    CommonOptions opt;
    auto add_common = [&](CLI::App* cmd, bool with_model = true) {
        if (with_model) opt.register_model_flags(cmd);
        return cmd;
    };

    CLI::App* rate = add_common(app.add_subcommand("rate-curve", "solve rate functions on a velocity grid"));
    rate->add_option("--law", opt.law, "averaged | quenched-constant");
    rate->add_option("--xi", opt.xi, "single velocity (overrides the grid)")->delimiter(',');

    CLI::App* tilt = add_common(app.add_subcommand("tilt", "minimizer kernels and Doob diagnostics at one velocity"));
    tilt->add_option("--xi", opt.xi, "target velocity")->delimiter(',')->required();
    tilt->add_option("--n", opt.n, "finite-n horizon for alpha_n and the u_n trace");

    CLI::App* entropy = add_common(app.add_subcommand("entropy-decompose", "entropy split of the averaged rate"));
    entropy->add_option("--xi", opt.xi, "single velocity (overrides the grid)")->delimiter(',');

    CLI::App* simulate = add_common(app.add_subcommand("simulate", "exact endpoint law by dynamic programming"));
    simulate->add_option("--n", opt.n, "horizon");
    simulate->add_option("--law", opt.law, "averaged | quenched");

    CLI::App* ise = add_common(app.add_subcommand("is-estimate", "Monte Carlo estimate of a velocity-window probability"));
    ise->add_option("--xi", opt.xi, "target velocity")->delimiter(',')->required();
    ise->add_option("--n", opt.n, "horizon");
    ise->add_option("--replicas", opt.replicas, "Monte Carlo replicas");
    ise->add_option("--kind", opt.kind, "tilted | naive");
    ise->add_option("--window-radius", opt.window_radius, "window radius");

    CLI::App* slope = add_common(app.add_subcommand("ldp-slope", "finite-n rate slopes from exact endpoint laws"));
    slope->add_option("--xi", opt.xi, "target velocity")->delimiter(',')->required();
    slope->add_option("--n-grid", opt.n_grid, "horizons")->delimiter(',');
    slope->add_option("--law", opt.law, "averaged | quenched-constant");
    slope->add_option("--samples", opt.samples, "environment samples for the quenched law");
    slope->add_option("--window-radius", opt.window_radius, "window radius");

    CLI::App* conc = add_common(app.add_subcommand("concentration", "empirical concentration of log u_n"));
    conc->add_option("--rho", opt.rho, "tilt vector (default: first tangent basis vector)")->delimiter(',');
    conc->add_option("--n-grid", opt.n_grid, "horizons")->delimiter(',');
    conc->add_option("--replicas", opt.replicas, "Monte Carlo replicas");
    conc->add_option("--epsilon", opt.epsilon, "tail threshold (default: half the Jensen gap)");

    CLI::App* probe = add_common(app.add_subcommand("dim-probe", "averaged vs quenched slopes for field environments"));
    probe->add_option("--xi", opt.xi, "single velocity")->delimiter(',');
    probe->add_option("--n", opt.n, "horizon");
    probe->add_option("--samples", opt.samples, "environment samples");
    probe->add_option("--window-radius", opt.window_radius, "window radius");

    CLI::App* verify = add_common(app.add_subcommand("verify", "run the identity suite"));
    (void)verify;

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "config error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (rate->parsed()) return cmd_rate_curve(opt, out);
        if (tilt->parsed()) return cmd_tilt(opt, out);
        if (entropy->parsed()) return cmd_entropy_decompose(opt, out);
        if (simulate->parsed()) return cmd_simulate(opt, out);
        if (ise->parsed()) return cmd_is_estimate(opt, out);
        if (slope->parsed()) return cmd_ldp_slope(opt, out);
        if (conc->parsed()) return cmd_concentration(opt, out);
        if (probe->parsed()) return cmd_dim_probe(opt, out);
        if (verify->parsed()) return cmd_verify(opt, out, err);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        err << "numerical failure: " << e.what() << '\n';
        return 1;
    }
    err << "config error: no subcommand selected\n";
    return 2;
}

} // namespace ldrwe::cli
