#include "quadpencil/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "quadpencil/eigensolver.hpp"
#include "quadpencil/error.hpp"
#include "quadpencil/expm.hpp"
#include "quadpencil/highprec.hpp"
#include "quadpencil/linalg.hpp"
#include "quadpencil/solvent.hpp"

namespace qp {

Family family_from_string(const std::string& s) {
    if (s == "complex" || s == "complex_uniform") return Family::complex_uniform;
    if (s == "hermitian" || s == "hermitian_real") return Family::hermitian_real;
    if (s == "gyroscopic" || s == "gyroscopic_real") return Family::gyroscopic_real;
    throw InvalidInputError("unknown experiment family: " + s);
}

std::string family_to_string(Family f) {
    switch (f) {
        case Family::complex_uniform: return "complex_uniform";
        case Family::hermitian_real: return "hermitian_real";
        case Family::gyroscopic_real: return "gyroscopic_real";
    }
    return "complex_uniform";
}

SplitMode family_mode(Family f) {
    switch (f) {
        case Family::complex_uniform: return SplitMode::general;
        case Family::hermitian_real: return SplitMode::hermitian;
        case Family::gyroscopic_real: return SplitMode::gyroscopic;
    }
    return SplitMode::general;
}

Structure family_structure(Family f) {
    switch (f) {
        case Family::complex_uniform: return Structure::general;
        case Family::hermitian_real: return Structure::hermitian;
        case Family::gyroscopic_real: return Structure::gyroscopic;
    }
    return Structure::general;
}

QuadraticPencil generate_pencil(const ExperimentSpec& spec) {
    if (spec.n < 1) throw InvalidInputError("generate_pencil: n must be >= 1");
    if (spec.scale_b <= 0 || spec.scale_c <= 0)
        throw InvalidInputError("generate_pencil: scales must be positive");
    const int n = spec.n;
    SplitMix64 rng(spec.seed);
    Matrix b = Matrix::Zero(n, n);
    Matrix c = Matrix::Zero(n, n);

    switch (spec.family) {
        case Family::complex_uniform:
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    const double re = rng.symmetric(spec.scale_b);
                    const double im = rng.symmetric(spec.scale_b);
                    b(i, j) = Complex(re, im);
                }
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    const double re = rng.symmetric(spec.scale_c);
                    const double im = rng.symmetric(spec.scale_c);
                    c(i, j) = Complex(re, im);
                }
            break;
        case Family::hermitian_real:
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j)
                    b(i, j) = b(j, i) = rng.symmetric(spec.scale_b);
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j)
                    c(i, j) = c(j, i) = rng.symmetric(spec.scale_c);
            break;
        case Family::gyroscopic_real:
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) {
                    const double v = rng.symmetric(spec.scale_b);
                    b(i, j) = v;
                    b(j, i) = -v;
                }
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j)
                    c(i, j) = c(j, i) = rng.symmetric(spec.scale_c);
            break;
    }
    return QuadraticPencil(std::move(b), std::move(c), family_structure(spec.family));
}

namespace {

Matrix u_of_one_double(const SolventPair& pair) {
    return (matrix_exp(pair.X.X) - matrix_exp(pair.Z.X)) *
           inverse(pair.X.X - pair.Z.X);
}

double oracle_eps(const QuadraticPencil& pencil, const std::vector<EigenPair>& pairs,
                  const PairScore& score, const ExperimentSpec& spec) {
    Splitting s;
    s.part_x = score.part_x;
    s.part_z = score.part_z;
    const SolventPair pair = make_pair(pencil, pairs, s, spec.kappa_cap);
    Matrix x1, x2, z1, z2;
    stack_part(pairs, s.part_x, x1, x2);
    stack_part(pairs, s.part_z, z1, z2);
    const Matrix u16 = u_of_one_double(pair);
    const BigComplexMatrix u_high =
        u_of_one_highprec(x1, x2, z1, z2, spec.oracle_digits);
    return relative_error(u16, u_high);
}

}  // namespace

ExperimentReport run_experiment(const ExperimentSpec& spec) {
    ExperimentReport report;
    report.spec = spec;

    const QuadraticPencil pencil = generate_pencil(spec);
    const auto decomp = eigenpairs(pencil.companion_matrix());
    report.eigenvalues = decomp.values;
    const auto pairs =
        make_eigenpairs(decomp.values, decomp.vectors, spec.cluster_tol);

    const SplitMode mode = family_mode(spec.family);
    SplittingStream stream(pairs, mode, spec.cluster_tol);
    if (stream.total_count() > spec.budget)
        throw BudgetError("run_experiment: " + std::to_string(stream.total_count()) +
                          " splittings exceed the budget of " +
                          std::to_string(spec.budget));
    if (stream.infeasible())
        throw NoPairsError("run_experiment: no admissible splittings (" +
                           stream.diagnostic() + ")");

    std::int64_t idx = 0;
    std::size_t best_pos = 0, worst_pos = 0;
    while (auto s = stream.next()) {
        try {
            const SolventPair pair = make_pair(pencil, pairs, *s, spec.kappa_cap);
            PairScore score = score_pair(pair, idx);
            report.scores.push_back(std::move(score));
            const auto& sc = report.scores.back();
            const auto& best = report.scores[best_pos];
            const auto& worst = report.scores[worst_pos];
            if (sc.kappa_max < best.kappa_max) best_pos = report.scores.size() - 1;
            if (sc.kappa_max > worst.kappa_max) worst_pos = report.scores.size() - 1;
        } catch (const DegeneratePartError&) {
        } catch (const IncompletePairError&) {
        } catch (const UnscorablePairError&) {
        }
        ++idx;
    }
    report.splittings_total = static_cast<std::uint64_t>(idx);
    if (report.scores.empty())
        throw NoPairsError(
            "run_experiment: every splitting was rejected (degenerate or "
            "incomplete); " +
            std::to_string(idx) + " attempted");

    report.best_index = report.scores[best_pos].splitting_index;
    report.worst_index = report.scores[worst_pos].splitting_index;

    if (spec.oracle) {
        report.eps_best = oracle_eps(pencil, pairs, report.scores[best_pos], spec);
        report.eps_worst = oracle_eps(pencil, pairs, report.scores[worst_pos], spec);
    }
    return report;
}

void write_file_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot open for writing: " + tmp);
        out << content;
        if (!out) throw Error("write failed: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw Error("rename failed: " + path);
}

namespace {

std::string format_coord(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

}  // namespace

void emit_spectrum_plot(const ExperimentReport& report, const std::string& which,
                        const std::string& svg_path) {
    const std::int64_t want =
        (which == "best") ? report.best_index : report.worst_index;
    if (which != "best" && which != "worst")
        throw InvalidInputError("emit_spectrum_plot: which must be best or worst");
    const PairScore* sel = nullptr;
    for (const auto& s : report.scores)
        if (s.splitting_index == want) {
            sel = &s;
            break;
        }
    if (!sel) throw NoPairsError("emit_spectrum_plot: selection not in report");

    double re_min = 0, re_max = 0, im_min = 0, im_max = 0;
    for (const Complex v : report.eigenvalues) {
        re_min = std::min(re_min, v.real());
        re_max = std::max(re_max, v.real());
        im_min = std::min(im_min, v.imag());
        im_max = std::max(im_max, v.imag());
    }
    const double pad_re = 0.1 * std::max(re_max - re_min, 1e-3);
    const double pad_im = 0.1 * std::max(im_max - im_min, 1e-3);
    re_min -= pad_re;
    re_max += pad_re;
    im_min -= pad_im;
    im_max += pad_im;
    const double w = 480, h = 480, margin = 40;
    const auto sx = [&](double re) {
        return margin + (re - re_min) / (re_max - re_min) * (w - 2 * margin);
    };
    const auto sy = [&](double im) {
        return h - margin - (im - im_min) / (im_max - im_min) * (h - 2 * margin);
    };

    std::vector<bool> in_x(report.eigenvalues.size(), false);
    for (const int i : sel->part_x) in_x[i] = true;

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w
        << "\" height=\"" << h << "\" viewBox=\"0 0 " << w << " " << h << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<line x1=\"" << margin << "\" y1=\"" << h - margin << "\" x2=\""
        << w - margin << "\" y2=\"" << h - margin
        << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    svg << "<line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin
        << "\" y2=\"" << h - margin << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    svg << "<text x=\"" << w / 2 << "\" y=\"" << h - 8
        << "\" text-anchor=\"middle\" font-size=\"14\">Re</text>\n";
    svg << "<text x=\"12\" y=\"" << h / 2
        << "\" text-anchor=\"middle\" font-size=\"14\" transform=\"rotate(-90 12 "
        << h / 2 << ")\">Im</text>\n";

    for (std::size_t i = 0; i < report.eigenvalues.size(); ++i) {
        const std::string cx = format_coord(sx(report.eigenvalues[i].real()));
        const std::string cy = format_coord(sy(report.eigenvalues[i].imag()));
        if (in_x[i]) {
            svg << "<circle cx=\"" << cx << "\" cy=\"" << cy
                << "\" r=\"4\" fill=\"black\"/>\n";
        } else {
            // Six-armed star glyph.
            svg << "<g stroke=\"black\" stroke-width=\"1.5\">";
            for (int arm = 0; arm < 3; ++arm) {
                const double ang = arm * M_PI / 3.0;
                const double dx = 5.5 * std::cos(ang), dy = 5.5 * std::sin(ang);
                svg << "<line x1=\"" << format_coord(std::stod(cx) - dx) << "\" y1=\""
                    << format_coord(std::stod(cy) - dy) << "\" x2=\""
                    << format_coord(std::stod(cx) + dx) << "\" y2=\""
                    << format_coord(std::stod(cy) + dy) << "\"/>";
            }
            svg << "</g>\n";
        }
    }
    svg << "</svg>\n";
    write_file_atomic(svg_path, svg.str());

    std::string csv_path = svg_path;
    if (csv_path.size() >= 4 && csv_path.substr(csv_path.size() - 4) == ".svg")
        csv_path = csv_path.substr(0, csv_path.size() - 4);
    csv_path += ".csv";
    std::ostringstream csv;
    csv << "re,im,part\n";
    csv.precision(17);
    for (std::size_t i = 0; i < report.eigenvalues.size(); ++i)
        csv << report.eigenvalues[i].real() << "," << report.eigenvalues[i].imag()
            << "," << (in_x[i] ? "x" : "z") << "\n";
    write_file_atomic(csv_path, csv.str());
}

nlohmann::json spec_to_json(const ExperimentSpec& spec) {
    nlohmann::json j;
    j["family"] = family_to_string(spec.family);
    j["n"] = spec.n;
    j["scale_b"] = spec.scale_b;
    j["scale_c"] = spec.scale_c;
    j["seed"] = spec.seed;
    j["oracle_digits"] = spec.oracle_digits;
    j["oracle"] = spec.oracle;
    j["kappa_cap"] = spec.kappa_cap;
    j["cluster_tol"] = spec.cluster_tol;
    j["budget"] = spec.budget;
    return j;
}

nlohmann::json report_to_json(const ExperimentReport& report) {
    nlohmann::json j;
    j["spec"] = spec_to_json(report.spec);
    auto eigs = nlohmann::json::array();
    for (const Complex v : report.eigenvalues)
        eigs.push_back({v.real(), v.imag()});
    j["eigenvalues"] = std::move(eigs);
    auto scores = nlohmann::json::array();
    for (const auto& s : report.scores) scores.push_back(score_to_json(s));
    j["scores"] = std::move(scores);
    j["splittings_total"] = report.splittings_total;
    j["best_index"] = report.best_index;
    j["worst_index"] = report.worst_index;
    if (report.spec.oracle) {
        j["eps_best"] = report.eps_best;
        j["eps_worst"] = report.eps_worst;
    }
    return j;
}

}  // namespace qp
