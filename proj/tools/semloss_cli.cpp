// ============================================================================
// semloss command-line frontend
//
// Subcommands:
//   fit1d            fit one (or all) 1-D families to a grid column
//   fit2d            fit the 2-D accuracy surface by gradient descent
//   sweep            fit a range of term counts with warm-start chaining
//   diagnose-table3  evaluate the published surface parameters under several
//                    input conventions and report MAPE or overflow per case
//   gradcheck        verify analytic gradients against finite differences
//   linkcalc         Shannon-threshold SNR and gap-ratio arithmetic
//   export-fixture   dump an embedded fixture as CSV
//
// Reports are JSON (schema_version 1), plot data is TSV.  With a fixed seed
// and --no-timestamp, reports are byte-identical across runs.
//
// Exit codes: 0 success, 2 usage/input error, 3 fit failure,
//             4 verification failure.
// ============================================================================

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "semloss/semloss.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace semloss;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitFit = 3;
constexpr int kExitVerify = 4;

// ---------------------------------------------------------------------------
// Shared options
// ---------------------------------------------------------------------------

struct CommonOpts {
    std::string fixture;
    std::string csv_path;
    std::string out_dir = ".";
    std::uint64_t seed = 0;
    std::uint64_t iters = 200000;
    std::size_t starts = 8;
    bool safeguard = true;
    bool literal_accumulate = false;
    bool normalize_q = false;
    bool no_timestamp = false;
    std::vector<std::string> argv_echo;
};

void add_data_source(CLI::App* cmd, CommonOpts& o) {
    auto* fx = cmd->add_option("--fixture", o.fixture,
                               "embedded fixture name (table1|table2|table3|sigmoid_fig5)");
    auto* cs = cmd->add_option("--csv", o.csv_path, "grid CSV path");
    fx->excludes(cs);
    cs->excludes(fx);
}

void add_fit_options(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--out", o.out_dir, "output directory (default .)");
    cmd->add_option("--seed", o.seed, "RNG seed (default 0)");
    cmd->add_option("--iters", o.iters, "iteration budget (default 200000)");
    cmd->add_option("--starts", o.starts, "multi-start count (default 8)");
    cmd->add_flag("--safeguard,!--no-safeguard", o.safeguard,
                  "reject SSE-increasing steps and halve that group's rate (default on)");
    cmd->add_flag("--literal-accumulate", o.literal_accumulate,
                  "keep gradient accumulators across iterations (study mode)");
    cmd->add_flag("--normalize-q", o.normalize_q, "divide the q axis by 100 before fitting");
    cmd->add_flag("--no-timestamp", o.no_timestamp, "omit timestamps from reports");
}

FitConfig config_from(const CommonOpts& o) {
    FitConfig cfg;
    cfg.seed = o.seed;
    cfg.max_iterations = o.iters;
    cfg.n_starts = o.starts;
    cfg.safeguard = o.safeguard;
    cfg.literal_accumulate = o.literal_accumulate;
    return cfg;
}

/*! Resolve the grid a data command operates on. */
AccuracyGrid resolve_grid(const CommonOpts& o) {
    AccuracyGrid grid;
    if (!o.csv_path.empty()) {
        grid = load_grid_csv(o.csv_path);
    } else if (!o.fixture.empty()) {
        if (parse_fixture_name(o.fixture) != FixtureName::table1)
            throw input_error("fixture '" + o.fixture + "' is not an accuracy grid; "
                              "only table1 can feed a fit");
        grid = fixture_table1();
    } else {
        throw input_error("no data source: pass --fixture table1 or --csv PATH");
    }
    if (o.normalize_q) {
        for (double& q : grid.q_axis) q /= 100.0;
        grid.label += " (q/100)";
    }
    return grid;
}

std::string data_source_name(const CommonOpts& o) {
    if (!o.csv_path.empty()) return o.csv_path;
    if (!o.fixture.empty()) return o.fixture;
    return "none";
}

// ---------------------------------------------------------------------------
// JSON serialization
// ---------------------------------------------------------------------------

std::string iso_timestamp() {
    const std::time_t now = std::time(nullptr);
    std::tm tm_utc{};
    gmtime_r(&now, &tm_utc);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

json config_json(const FitConfig& c) {
    json j;
    j["learning_rates"] = c.learning_rates;
    j["max_iterations"] = c.max_iterations;
    j["rel_tolerance"] = c.rel_tolerance;
    j["seed"] = c.seed;
    j["init_policy"] = init_policy_name(c.init_policy);
    j["safeguard"] = c.safeguard;
    j["n_starts"] = c.n_starts;
    j["literal_accumulate"] = c.literal_accumulate;
    return j;
}

json params_json(const std::variant<Model1DParams, SemanticLossParams>& params) {
    json j;
    if (std::holds_alternative<Model1DParams>(params)) {
        const auto& p = std::get<Model1DParams>(params);
        j["family"] = family_name(family_of(p));
        j["coefficients"] = param_vector(p);
    } else {
        const auto& p = std::get<SemanticLossParams>(params);
        j["mu0"] = p.mu0;
        json terms = json::array();
        for (const auto& t : p.terms)
            terms.push_back({t.mu1, t.mu2, t.mu3, t.mu4, t.mu5});
        j["terms"] = std::move(terms);
    }
    return j;
}

json report_json(const FitReport& r) {
    json j;
    j["params"] = params_json(r.params);
    j["sse"] = r.sse;
    j["mape"] = r.mape;
    j["r_squared"] = r.r_squared;
    j["iterations_used"] = r.iterations_used;
    j["converged"] = r.converged;
    j["residuals"] = r.residuals;
    json trace = json::array();
    for (const auto& [it, sse] : r.trace) trace.push_back({it, sse});
    j["trace"] = std::move(trace);
    j["config"] = config_json(r.config_echo);
    j["data_label"] = r.data_label;
    return j;
}

json document_shell(const CommonOpts& o, const std::string& command) {
    json doc;
    doc["schema_version"] = 1;
    // The output directory is environment, not semantics: skip it in the echo
    // so reruns into different directories stay byte-identical.
    std::string echo = command;
    for (std::size_t i = 0; i < o.argv_echo.size(); ++i) {
        if (o.argv_echo[i] == "--out") {
            ++i;  // swallow the directory argument as well
            continue;
        }
        if (o.argv_echo[i].rfind("--out=", 0) == 0) continue;
        echo += " " + o.argv_echo[i];
    }
    doc["command"] = echo;
    doc["fixture_or_file"] = data_source_name(o);
    if (!o.no_timestamp) doc["timestamp"] = iso_timestamp();
    return doc;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw input_error("cannot write '" + path.string() + "'");
    out << text;
    if (!out) throw input_error("write to '" + path.string() + "' failed");
}

void write_document(const CommonOpts& o, const std::string& name, const json& doc) {
    fs::create_directories(o.out_dir);
    write_text(fs::path(o.out_dir) / name, doc.dump(2) + "\n");
}

std::string tsv_number(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

// ---------------------------------------------------------------------------
// fit1d
// ---------------------------------------------------------------------------

const std::vector<ModelFamily> kAccuracyFamilies = {
    ModelFamily::poly2, ModelFamily::poly3, ModelFamily::log,
    ModelFamily::exp1, ModelFamily::exp2};

void write_curve_tsv(const CommonOpts& o, const FitReport& report, ModelFamily family,
                     double x_lo, double x_hi) {
    constexpr int kPoints = 200;
    std::string tsv = "x\tfitted\n";
    const auto& params = std::get<Model1DParams>(report.params);
    for (int i = 0; i < kPoints; ++i) {
        const double x = x_lo + (x_hi - x_lo) * i / (kPoints - 1);
        tsv += tsv_number(x) + "\t" + tsv_number(eval_model1d(params, x)) + "\n";
    }
    fs::create_directories(o.out_dir);
    write_text(fs::path(o.out_dir) / (std::string("fit1d_curve_") + family_name(family) + ".tsv"),
               tsv);
}

int run_fit1d(const CommonOpts& o, const std::string& family_arg, std::size_t s_col) {
    const AccuracyGrid grid = resolve_grid(o);
    const Series1D series = column_series(grid, s_col);
    const FitConfig cfg = config_from(o);

    json doc = document_shell(o, "fit1d");
    if (family_arg == "all") {
        json families;
        std::vector<std::pair<double, ModelFamily>> ranking;
        for (ModelFamily f : kAccuracyFamilies) {
            FitReport rep = fit_model1d(f, series, cfg);
            write_curve_tsv(o, rep, f, series.x.front(), series.x.back());
            ranking.emplace_back(rep.sse, f);
            families[family_name(f)] = report_json(rep);
        }
        std::stable_sort(ranking.begin(), ranking.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; });
        json order = json::array();
        for (const auto& [sse, f] : ranking) order.push_back({family_name(f), sse});
        doc["report"] = {{"families", std::move(families)}, {"ranking", std::move(order)}};
    } else {
        const ModelFamily family = parse_family(family_arg);
        FitReport rep = fit_model1d(family, series, cfg);
        write_curve_tsv(o, rep, family, series.x.front(), series.x.back());
        doc["report"] = report_json(rep);
    }
    write_document(o, "fit1d_report.json", doc);
    return kExitOk;
}

// ---------------------------------------------------------------------------
// fit2d
// ---------------------------------------------------------------------------

int run_fit2d(const CommonOpts& o, std::size_t nc) {
    const AccuracyGrid grid = resolve_grid(o);
    const FitReport rep = fit_semantic_loss(grid, nc, config_from(o));

    std::string tsv = "q\ts\tfitted\tmeasured\tresidual\n";
    const auto& params = std::get<SemanticLossParams>(rep.params);
    for (std::size_t i = 0; i < grid.n_s(); ++i)
        for (std::size_t j = 0; j < grid.n_q(); ++j) {
            const double fitted = eval_semantic_loss(params, grid.q_axis[j], grid.s_axis[i]);
            tsv += tsv_number(grid.q_axis[j]) + "\t" + tsv_number(grid.s_axis[i]) + "\t" +
                   tsv_number(fitted) + "\t" + tsv_number(grid.values[i][j]) + "\t" +
                   tsv_number(grid.values[i][j] - fitted) + "\n";
        }
    fs::create_directories(o.out_dir);
    write_text(fs::path(o.out_dir) / "fit2d_surface.tsv", tsv);

    json doc = document_shell(o, "fit2d");
    doc["report"] = report_json(rep);
    write_document(o, "fit2d_report.json", doc);
    return kExitOk;
}

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------

int run_sweep(const CommonOpts& o, std::size_t nc_min, std::size_t nc_max) {
    if (nc_min < 1 || nc_min > nc_max || nc_max > 16)
        throw input_error("sweep: need 1 <= nc-min <= nc-max <= 16");
    const AccuracyGrid grid = resolve_grid(o);
    std::vector<std::size_t> range;
    for (std::size_t nc = nc_min; nc <= nc_max; ++nc) range.push_back(nc);
    const auto entries = nc_sweep(grid, range, config_from(o));

    std::string tsv = "nc\tsse\tmape\tr_squared\n";
    json rows = json::array();
    for (const auto& e : entries) {
        json row;
        row["nc"] = e.n_terms;
        if (e.ok()) {
            row["report"] = report_json(*e.report);
            tsv += std::to_string(e.n_terms) + "\t" + tsv_number(e.report->sse) + "\t" +
                   tsv_number(e.report->mape) + "\t" + tsv_number(e.report->r_squared) + "\n";
        } else {
            row["error"] = e.error;
        }
        rows.push_back(std::move(row));
    }
    fs::create_directories(o.out_dir);
    write_text(fs::path(o.out_dir) / "sweep_mape.tsv", tsv);

    json doc = document_shell(o, "sweep");
    doc["report"] = {{"entries", std::move(rows)}};
    write_document(o, "sweep_report.json", doc);

    const bool any_failed = std::any_of(entries.begin(), entries.end(),
                                        [](const SweepEntry& e) { return !e.ok(); });
    return any_failed ? kExitFit : kExitOk;
}

// ---------------------------------------------------------------------------
// diagnose-table3
// ---------------------------------------------------------------------------

/*! Evaluate the published surface parameters under one input convention.
 *  "Overflow" here covers both a guarded exponent fault and predictions so
 *  large they are meaningless as accuracies (beyond +/-1e6): either way the
 *  convention cannot be the one the published fit used. */
json evaluate_hypothesis(const Table3Fixture& fixture, const AccuracyGrid& base,
                         double q_scale, double acc_scale, const std::string& name) {
    constexpr double kSaneLimit = 1e6;
    json h;
    h["hypothesis"] = name;
    h["q_scale"] = q_scale;
    h["accuracy_scale"] = acc_scale;

    std::vector<double> predicted, actual;
    bool overflow = false;
    std::size_t overflow_term = 0;
    double overflow_q = 0.0;

    for (std::size_t i = 0; i < base.n_s() && !overflow; ++i)
        for (std::size_t j = 0; j < base.n_q(); ++j) {
            const double q = base.q_axis[j] * q_scale;
            const double s = base.s_axis[i];
            double value = 0.0;
            try {
                value = eval_semantic_loss(fixture.params, q, s);
            } catch (const eval_error&) {
                overflow = true;
            }
            if (!overflow && (!std::isfinite(value) || std::fabs(value) > kSaneLimit))
                overflow = true;
            if (overflow) {
                // identify the dominant term at the faulting point
                double worst = -1.0;
                for (std::size_t k = 0; k < fixture.params.terms.size(); ++k) {
                    const auto& t = fixture.params.terms[k];
                    const double arg = t.mu5 * q;
                    const double magnitude =
                        (arg > kExpArgLimit) ? std::numeric_limits<double>::infinity()
                                             : std::fabs((t.mu1 + t.mu2) * std::exp(arg));
                    if (magnitude > worst) {
                        worst = magnitude;
                        overflow_term = k + 1;
                    }
                }
                overflow_q = q;
                break;
            }
            predicted.push_back(value);
            actual.push_back(base.values[i][j] * acc_scale);
        }

    h["overflow"] = overflow;
    if (overflow) {
        h["overflow_term"] = overflow_term;
        h["overflow_at_q"] = overflow_q;
        h["mape"] = nullptr;
    } else {
        h["mape"] = metrics(predicted, actual).mape;
    }
    return h;
}

int run_diagnose(const CommonOpts& o, const std::vector<std::string>& q_conventions) {
    const Table3Fixture fixture = fixture_table3();
    const AccuracyGrid base = fixture_table1();

    std::vector<std::pair<std::string, double>> q_scales;
    const std::vector<std::string> wanted =
        q_conventions.empty() ? std::vector<std::string>{"q_raw", "q_div100", "q_div1000"}
                              : q_conventions;
    for (const auto& name : wanted) {
        if (name == "q_raw") q_scales.emplace_back(name, 1.0);
        else if (name == "q_div100") q_scales.emplace_back(name, 0.01);
        else if (name == "q_div1000") q_scales.emplace_back(name, 0.001);
        else throw input_error("unknown hypothesis '" + name +
                               "' (expected q_raw|q_div100|q_div1000)");
    }

    json hypotheses = json::array();
    for (const auto& [q_name, q_scale] : q_scales)
        for (const auto& [acc_name, acc_scale] :
             std::vector<std::pair<std::string, double>>{{"acc_raw", 1.0}, {"acc_div100", 0.01}})
            hypotheses.push_back(evaluate_hypothesis(fixture, base, q_scale, acc_scale,
                                                     q_name + "/" + acc_name));

    json doc = document_shell(o, "diagnose-table3");
    doc["fixture_or_file"] = "table3";
    doc["report"] = {{"mu5_printed", fixture.mu5_printed}, {"hypotheses", std::move(hypotheses)}};
    write_document(o, "diagnose_table3_report.json", doc);
    return kExitOk;
}

// ---------------------------------------------------------------------------
// gradcheck
// ---------------------------------------------------------------------------

int run_gradcheck(const CommonOpts& o, std::uint64_t seed_count) {
    if (seed_count < 1) throw input_error("gradcheck: need at least one seed");
    const AccuracyGrid grid = resolve_grid(o);
    constexpr double kTolerance = 1e-5;
    constexpr double kStep = 1e-6;

    GradientComparison worst;
    std::uint64_t worst_seed = 0;
    for (std::uint64_t seed = 0; seed < seed_count; ++seed) {
        const SemanticLossParams params =
            detail::initial_params(grid, 4, FitConfig{}, o.seed + seed);
        const GradientComparison cmp = compare_gradients(
            semantic_loss_gradients(params, grid), finite_diff_gradient(params, grid, kStep));
        if (cmp.max_rel_error > worst.max_rel_error) {
            worst = cmp;
            worst_seed = seed;
        }
    }
    const bool pass = worst.max_rel_error <= kTolerance;

    json doc = document_shell(o, "gradcheck");
    doc["report"] = {{"seeds", seed_count},
                     {"tolerance", kTolerance},
                     {"max_rel_error", worst.max_rel_error},
                     {"worst_component", worst.worst_component},
                     {"worst_seed", worst_seed},
                     {"pass", pass}};
    write_document(o, "gradcheck_report.json", doc);

    std::printf("gradcheck: %llu seeds, max rel error %.3e (%s)\n",
                static_cast<unsigned long long>(seed_count), worst.max_rel_error,
                pass ? "pass" : "FAIL");
    if (!pass) {
        std::fprintf(stderr, "gradcheck FAILED: component %s at seed %llu, rel error %.3e > %.0e\n",
                     worst.worst_component.c_str(),
                     static_cast<unsigned long long>(worst_seed), worst.max_rel_error,
                     kTolerance);
        return kExitVerify;
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// linkcalc
// ---------------------------------------------------------------------------

int run_linkcalc(double rate, const std::optional<double>& gamma_db) {
    const double threshold = shannon_snr_db(rate);
    std::printf("gamma_shannon_db = %.4f\n", threshold);
    if (gamma_db) {
        const double ratio = snr_ratio(LinkOperatingPoint{*gamma_db, rate});
        std::printf("s = %.4f\n", ratio);
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// export-fixture
// ---------------------------------------------------------------------------

int run_export(const CommonOpts& o, const std::string& fixture_name) {
    const FixtureName name = parse_fixture_name(fixture_name);
    fs::create_directories(o.out_dir);
    const fs::path path = fs::path(o.out_dir) / (fixture_name + ".csv");
    switch (name) {
        case FixtureName::table1:
            write_grid_csv(fixture_table1(), path.string());
            break;
        case FixtureName::table2: {
            std::string csv = "row_label,a,b,c,d,column_index\n";
            for (const auto& row : fixture_table2().rows) {
                csv += tsv_number(row.row_label) + "," + tsv_number(row.params.a) + "," +
                       tsv_number(row.params.b) + "," + tsv_number(row.params.c) + "," +
                       tsv_number(row.params.d) + "," + std::to_string(row.column_index) + "\n";
            }
            write_text(path, csv);
            break;
        }
        case FixtureName::table3: {
            const Table3Fixture f = fixture_table3();
            std::string csv = "mu0," + tsv_number(f.params.mu0) + "\n";
            csv += "term,mu1,mu2,mu3,mu4,mu5,mu5_printed\n";
            for (std::size_t k = 0; k < f.params.terms.size(); ++k) {
                const auto& t = f.params.terms[k];
                csv += std::to_string(k + 1) + "," + tsv_number(t.mu1) + "," +
                       tsv_number(t.mu2) + "," + tsv_number(t.mu3) + "," + tsv_number(t.mu4) +
                       "," + tsv_number(t.mu5) + "," + tsv_number(f.mu5_printed[k]) + "\n";
            }
            write_text(path, csv);
            break;
        }
        case FixtureName::sigmoid_fig5: {
            const SigmoidParams p = fixture_sigmoid_fig5();
            write_text(path, "b,c,d,e\n" + tsv_number(p.b) + "," + tsv_number(p.c) + "," +
                                 tsv_number(p.d) + "," + tsv_number(p.e) + "\n");
            break;
        }
    }
    std::printf("wrote %s\n", path.string().c_str());
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"semantic-loss surface fitting toolkit"};
    app.require_subcommand(1);

    CommonOpts opts;
    for (int i = 1; i < argc; ++i) opts.argv_echo.emplace_back(argv[i]);

    // fit1d
    auto* fit1d = app.add_subcommand("fit1d", "fit a 1-D family to one grid column");
    std::string family = "exp2";
    std::size_t s_col = 0;
    fit1d->add_option("--family", family,
                      "poly2|poly3|log|exp1|exp2|sigmoid|all (default exp2)");
    fit1d->add_option("--s-col", s_col, "s-column index (default 0)");
    add_data_source(fit1d, opts);
    add_fit_options(fit1d, opts);

    // fit2d
    auto* fit2d = app.add_subcommand("fit2d", "fit the 2-D accuracy surface");
    std::size_t nc = 4;
    fit2d->add_option("--nc", nc, "number of surface terms (default 4)");
    add_data_source(fit2d, opts);
    add_fit_options(fit2d, opts);

    // sweep
    auto* sweep = app.add_subcommand("sweep", "fit a range of term counts");
    std::size_t nc_min = 1, nc_max = 4;
    sweep->add_option("--nc-min", nc_min, "smallest term count (default 1)");
    sweep->add_option("--nc-max", nc_max, "largest term count (default 4)");
    add_data_source(sweep, opts);
    add_fit_options(sweep, opts);

    // diagnose-table3
    auto* diagnose = app.add_subcommand(
        "diagnose-table3", "evaluate the published surface parameters under q/accuracy scalings");
    std::vector<std::string> hypotheses;
    diagnose->add_option("--hypotheses", hypotheses,
                         "subset of q conventions: q_raw q_div100 q_div1000 (default all)");
    diagnose->add_option("--out", opts.out_dir, "output directory (default .)");
    diagnose->add_flag("--no-timestamp", opts.no_timestamp, "omit timestamps from reports");

    // gradcheck
    auto* gradcheck = app.add_subcommand("gradcheck",
                                         "compare analytic gradients with finite differences");
    std::uint64_t seeds = 200;
    gradcheck->add_option("--seeds", seeds, "number of random parameter draws (default 200)");
    add_data_source(gradcheck, opts);
    add_fit_options(gradcheck, opts);

    // linkcalc
    auto* linkcalc = app.add_subcommand("linkcalc", "Shannon-threshold SNR and gap ratio");
    double rate = 0.0;
    std::optional<double> gamma_db;
    linkcalc->add_option("--rate", rate, "transmission rate r in bit/s/Hz")->required();
    linkcalc->add_option("--gamma-db", gamma_db, "received SNR in dB (enables the s ratio)");

    // export-fixture
    auto* exporter = app.add_subcommand("export-fixture", "dump an embedded fixture as CSV");
    std::string export_name;
    exporter->add_option("--fixture", export_name, "fixture to dump")->required();
    exporter->add_option("--out", opts.out_dir, "output directory (default .)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        if (fit1d->parsed()) return run_fit1d(opts, family, s_col);
        if (fit2d->parsed()) return run_fit2d(opts, nc);
        if (sweep->parsed()) return run_sweep(opts, nc_min, nc_max);
        if (diagnose->parsed()) return run_diagnose(opts, hypotheses);
        if (gradcheck->parsed()) return run_gradcheck(opts, seeds);
        if (linkcalc->parsed()) return run_linkcalc(rate, gamma_db);
        if (exporter->parsed()) return run_export(opts, export_name);
    } catch (const input_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInput;
    } catch (const fit_error& e) {
        std::fprintf(stderr, "fit error: %s\n", e.what());
        return kExitFit;
    } catch (const eval_error& e) {
        std::fprintf(stderr, "evaluation error: %s\n", e.what());
        return kExitFit;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "unexpected error: %s\n", e.what());
        return kExitFit;
    }
    return kExitInput;
}
