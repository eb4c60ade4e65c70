#include <CLI11.hpp>
#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "quadpencil/eigensolver.hpp"
#include "quadpencil/error.hpp"
#include "quadpencil/evolution.hpp"
#include "quadpencil/experiments.hpp"
#include "quadpencil/scoring.hpp"
#include "quadpencil/solvent.hpp"
#include "quadpencil/splitting.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitNoPairs = 2;
constexpr int kExitBudget = 3;

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw qp::InvalidInputError("cannot open file: " + path);
    json j;
    in >> j;
    return j;
}

qp::QuadraticPencil load_pencil(const std::string& path) {
    return qp::QuadraticPencil::from_json(load_json_file(path));
}

struct PairsResult {
    qp::QuadraticPencil pencil;
    std::vector<qp::EigenPair> eigenpairs;
    std::vector<qp::PairScore> scores;  // enumeration order
    std::uint64_t attempted = 0;
};

PairsResult enumerate_pairs(const std::string& pencil_path, double cluster_tol,
                            double kappa_cap, const std::string& mode_flag) {
    PairsResult r{load_pencil(pencil_path), {}, {}, 0};
    const auto decomp = qp::eigenpairs(r.pencil.companion_matrix());
    r.eigenpairs = qp::make_eigenpairs(decomp.values, decomp.vectors, cluster_tol);

    qp::SplitMode mode;
    if (mode_flag.empty()) {
        switch (r.pencil.structure()) {
            case qp::Structure::hermitian: mode = qp::SplitMode::hermitian; break;
            case qp::Structure::gyroscopic: mode = qp::SplitMode::gyroscopic; break;
            default: mode = qp::SplitMode::general; break;
        }
    } else {
        mode = qp::split_mode_from_string(mode_flag);
    }

    qp::SplittingStream stream(r.eigenpairs, mode, cluster_tol);
    std::int64_t idx = 0;
    while (auto s = stream.next()) {
        try {
            const auto pair = qp::make_pair(r.pencil, r.eigenpairs, *s, kappa_cap);
            r.scores.push_back(qp::score_pair(pair, idx));
        } catch (const qp::DegeneratePartError&) {
        } catch (const qp::IncompletePairError&) {
        } catch (const qp::UnscorablePairError&) {
        }
        ++idx;
    }
    r.attempted = static_cast<std::uint64_t>(idx);
    return r;
}

int cmd_pairs(const std::string& pencil_path, double cluster_tol, double kappa_cap,
              const std::string& mode_flag, const std::string& out_path) {
    auto r = enumerate_pairs(pencil_path, cluster_tol, kappa_cap, mode_flag);
    if (r.scores.empty()) {
        std::cerr << "no admissible complete pairs (" << r.attempted
                  << " splittings attempted)\n";
        return kExitNoPairs;
    }
    const auto [best, worst] = qp::select_best_worst(r.scores);

    std::vector<qp::PairScore> sorted = r.scores;
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const auto& a, const auto& b) {
                         return a.kappa_max < b.kappa_max;
                     });
    json out;
    out["splittings_attempted"] = r.attempted;
    auto scores = json::array();
    for (const auto& s : sorted) scores.push_back(qp::score_to_json(s));
    out["scores"] = std::move(scores);
    out["best_index"] = best.splitting_index;
    out["worst_index"] = worst.splitting_index;
    qp::write_file_atomic(out_path, out.dump(2) + "\n");
    std::cout << out_path << ": " << r.scores.size() << " pairs, best kappa_max "
              << best.kappa_max << "\n";
    return kExitOk;
}

qp::Vector parse_vector_arg(const std::string& arg, Eigen::Index n) {
    if (arg.empty()) return qp::Vector::Zero(n);
    qp::Vector v = qp::vector_from_json(json::parse(arg));
    if (v.size() != n)
        throw qp::InvalidInputError("vector argument has wrong dimension");
    return v;
}

qp::Forcing parse_forcing(const std::string& arg, Eigen::Index n) {
    if (arg.empty() || arg == "zero")
        return [n](double) { return qp::Vector::Zero(n); };
    if (arg.rfind("constant:", 0) == 0) {
        qp::Vector v = parse_vector_arg(arg.substr(9), n);
        return [v](double) { return v; };
    }
    if (arg.rfind("file:", 0) == 0) {
        const json tbl = load_json_file(arg.substr(5));
        if (!tbl.contains("times") || !tbl.contains("values"))
            throw qp::InvalidInputError("forcing table needs times and values");
        std::vector<double> times = tbl.at("times").get<std::vector<double>>();
        std::vector<qp::Vector> values;
        for (const auto& row : tbl.at("values"))
            values.push_back(qp::vector_from_json(row));
        if (times.size() != values.size() || times.size() < 2)
            throw qp::InvalidInputError("forcing table is malformed");
        for (const auto& v : values)
            if (v.size() != n)
                throw qp::InvalidInputError("forcing table dimension mismatch");
        return [times, values](double t) {
            if (t <= times.front()) return values.front();
            if (t >= times.back()) return values.back();
            const auto it = std::upper_bound(times.begin(), times.end(), t);
            const std::size_t k = static_cast<std::size_t>(it - times.begin());
            const double w = (t - times[k - 1]) / (times[k] - times[k - 1]);
            return qp::Vector((1.0 - w) * values[k - 1] + w * values[k]);
        };
    }
    throw qp::InvalidInputError("forcing must be zero, constant:<json> or file:<path>");
}

std::vector<int> parse_part(const std::string& arg) {
    std::vector<int> part;
    std::stringstream ss(arg);
    std::string tok;
    while (std::getline(ss, tok, ',')) part.push_back(std::stoi(tok));
    std::sort(part.begin(), part.end());
    return part;
}

int cmd_solve(const std::string& pencil_path, const std::string& pair_arg,
              const std::string& u0_arg, const std::string& u1_arg,
              const std::string& f_arg, double t_end, int steps,
              double cluster_tol, double kappa_cap, const std::string& out_path) {
    auto r = enumerate_pairs(pencil_path, cluster_tol, kappa_cap, "");
    const Eigen::Index n = r.pencil.n();

    qp::Splitting sel;
    if (pair_arg == "best") {
        if (r.scores.empty()) {
            std::cerr << "no admissible complete pairs\n";
            return kExitNoPairs;
        }
        const auto [best, worst] = qp::select_best_worst(r.scores);
        sel.part_x = best.part_x;
        sel.part_z = best.part_z;
    } else {
        sel.part_x = parse_part(pair_arg);
        if (static_cast<Eigen::Index>(sel.part_x.size()) != n)
            throw qp::InvalidInputError("--pair needs n comma-separated indices");
        std::size_t xi = 0;
        for (int i = 0; i < 2 * n; ++i) {
            if (xi < sel.part_x.size() && sel.part_x[xi] == i)
                ++xi;
            else
                sel.part_z.push_back(i);
        }
        if (xi != sel.part_x.size())
            throw qp::InvalidInputError("--pair indices out of range or repeated");
    }
    const auto pair = qp::make_pair(r.pencil, r.eigenpairs, sel, kappa_cap);

    const qp::Vector u0 = parse_vector_arg(u0_arg, n);
    const qp::Vector u1 = parse_vector_arg(u1_arg, n);
    const qp::Forcing f = parse_forcing(f_arg, n);
    if (!(t_end > 0) || steps < 1)
        throw qp::InvalidInputError("--t-end must be > 0 and --steps >= 1");
    std::vector<double> grid(steps + 1);
    for (int k = 0; k <= steps; ++k)
        grid[k] = t_end * static_cast<double>(k) / steps;

    const auto result = qp::solve_ivp(r.pencil, pair, u0, u1, f, grid);

    json out;
    out["times"] = result.times;
    auto xs = json::array(), dxs = json::array();
    for (const auto& x : result.x_values) xs.push_back(qp::vector_to_json(x));
    for (const auto& dx : result.dx_values) dxs.push_back(qp::vector_to_json(dx));
    out["x"] = std::move(xs);
    out["dx"] = std::move(dxs);
    out["residual_max"] = result.residual_max;
    qp::write_file_atomic(out_path, out.dump(2) + "\n");
    std::cout << out_path << ": " << result.times.size()
              << " samples, residual_max " << result.residual_max << "\n";
    return kExitOk;
}

int cmd_experiment(qp::ExperimentSpec spec, const std::string& out_dir) {
    const auto report = qp::run_experiment(spec);
    qp::write_file_atomic(out_dir + "/report.json",
                          qp::report_to_json(report).dump(2) + "\n");
    qp::emit_spectrum_plot(report, "best", out_dir + "/spectrum_best.svg");
    qp::emit_spectrum_plot(report, "worst", out_dir + "/spectrum_worst.svg");
    std::cout << out_dir << "/report.json: " << report.scores.size()
              << " pairs scored";
    if (spec.oracle)
        std::cout << ", eps_best " << report.eps_best << ", eps_worst "
                  << report.eps_worst;
    std::cout << "\n";
    return kExitOk;
}

int cmd_spectrum_plot(const std::string& report_path, const std::string& which,
                      const std::string& out_path) {
    const json j = load_json_file(report_path);
    qp::ExperimentReport report;
    report.spec.oracle = false;
    for (const auto& e : j.at("eigenvalues"))
        report.eigenvalues.emplace_back(e.at(0).get<double>(), e.at(1).get<double>());
    for (const auto& s : j.at("scores")) {
        qp::PairScore ps;
        ps.splitting_index = s.at("splitting_index").get<std::int64_t>();
        ps.part_x = s.at("splitting").get<std::vector<int>>();
        ps.part_z = s.at("splitting_z").get<std::vector<int>>();
        report.scores.push_back(std::move(ps));
    }
    report.best_index = j.at("best_index").get<std::int64_t>();
    report.worst_index = j.at("worst_index").get<std::int64_t>();
    qp::emit_spectrum_plot(report, which, out_path);
    std::cout << out_path << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Complete pairs of right solvents of quadratic matrix pencils"};
    app.require_subcommand(1);

    // Caps internal worker parallelism; the pipeline is deterministic
    // regardless of the setting.
    if (const char* threads = std::getenv("QUADPENCIL_THREADS")) {
        const int t = std::atoi(threads);
        if (t >= 1) Eigen::setNbThreads(t);
    }

    std::string pencil_path, out_path, mode_flag, pair_arg = "best";
    std::string u0_arg, u1_arg, f_arg = "zero", report_path, which = "best";
    double cluster_tol = 1e-8, kappa_cap = 1e12, t_end = 1.0;
    int steps = 32;
    bool full = false, oracle_off = false;
    qp::ExperimentSpec spec;
    std::string family = "complex", out_dir = ".";

    auto* pairs = app.add_subcommand("pairs", "enumerate and score complete pairs");
    pairs->add_option("--pencil", pencil_path, "pencil JSON file")->required();
    pairs->add_option("--cluster-tol", cluster_tol, "eigenvalue clustering tolerance");
    pairs->add_option("--kappa-cap", kappa_cap, "condition-number rejection cap");
    pairs->add_option("--mode", mode_flag, "general|hermitian|gyroscopic");
    pairs->add_option("--out", out_path, "output report path")
        ->default_val("pairs_report.json");

    auto* solve = app.add_subcommand("solve", "solve the initial value problem");
    solve->add_option("--pencil", pencil_path, "pencil JSON file")->required();
    solve->add_option("--pair", pair_arg, "\"best\" or comma-separated part_x indices");
    solve->add_option("--u0", u0_arg, "initial value, vector JSON");
    solve->add_option("--u1", u1_arg, "initial derivative, vector JSON");
    solve->add_option("--f", f_arg, "zero | constant:<vector JSON> | file:<table>");
    solve->add_option("--t-end", t_end, "final time");
    solve->add_option("--steps", steps, "grid steps");
    solve->add_option("--cluster-tol", cluster_tol, "eigenvalue clustering tolerance");
    solve->add_option("--kappa-cap", kappa_cap, "condition-number rejection cap");
    solve->add_option("--out", out_path, "trajectory output path")
        ->default_val("trajectory.json");

    auto* exp = app.add_subcommand("experiment", "run a random-pencil experiment");
    exp->add_option("--family", family, "complex|hermitian|gyroscopic");
    exp->add_option("--n", spec.n, "pencil size");
    exp->add_option("--scale-b", spec.scale_b, "entry scale for B");
    exp->add_option("--scale-c", spec.scale_c, "entry scale for C");
    exp->add_option("--seed", spec.seed, "PRNG seed");
    exp->add_option("--oracle-digits", spec.oracle_digits, "oracle precision");
    exp->add_flag("--no-oracle", oracle_off, "skip the high-precision oracle");
    exp->add_option("--budget", spec.budget, "max splittings to attempt");
    exp->add_option("--cluster-tol", spec.cluster_tol, "clustering tolerance");
    exp->add_option("--kappa-cap", spec.kappa_cap, "condition-number cap");
    exp->add_flag("--full", full,
                  "lift the splitting budget for paper-scale sweeps");
    exp->add_option("--out", out_dir, "output directory")->default_val(".");

    auto* plot = app.add_subcommand("spectrum-plot", "re-emit a spectrum plot");
    plot->add_option("--report", report_path, "report.json from experiment")
        ->required();
    plot->add_option("--which", which, "best|worst");
    plot->add_option("--out", out_path, "output SVG path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitInput;
    }

    try {
        if (pairs->parsed())
            return cmd_pairs(pencil_path, cluster_tol, kappa_cap, mode_flag, out_path);
        if (solve->parsed())
            return cmd_solve(pencil_path, pair_arg, u0_arg, u1_arg, f_arg, t_end,
                             steps, cluster_tol, kappa_cap, out_path);
        if (exp->parsed()) {
            spec.family = qp::family_from_string(family);
            spec.oracle = !oracle_off;
            if (full && exp->count("--budget") == 0)
                spec.budget = std::numeric_limits<std::uint64_t>::max();
            return cmd_experiment(spec, out_dir);
        }
        if (plot->parsed())
            return cmd_spectrum_plot(report_path, which, out_path);
    } catch (const qp::NoPairsError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNoPairs;
    } catch (const qp::BudgetError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBudget;
    } catch (const qp::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}
