// ============================================================================
// Acceptance gate
//
// Runs the numbered acceptance checks end-to-end, one [PASS]/[FAIL] line per
// criterion, exercising the CLI binary where a criterion is about observable
// command behavior and the library directly where it is about numerics.
// `--criterion N` selects a single check (used by the ctest entries); with no
// selector every criterion runs.  Exit code = number of failed criteria.
// ============================================================================

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "semloss/semloss.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace semloss;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool cond, const std::string& why) {
        if (!cond) {
            pass = false;
            if (!detail.empty()) detail += "; ";
            detail += why;
        }
    }
    void note(const std::string& text) {
        if (!detail.empty()) detail += "; ";
        detail += text;
    }
};

std::string fmt(double v, int digits = 4) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
    return buf;
}

fs::path work_dir(const std::string& tag) {
    const fs::path dir = fs::temp_directory_path() / "semloss_acceptance" / tag;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string("\"") + SEMLOSS_CLI_PATH + "\" " + args +
                            " > /dev/null 2>&1";
    const int raw = std::system(cmd.c_str());
    return (raw == -1) ? -1 : WEXITSTATUS(raw);
}

json load_json(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    return json::parse(in);
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

// criterion 1 — analytic gradients vs central finite differences, 200 draws
Outcome criterion1() {
    Outcome o;
    const fs::path dir = work_dir("c1");
    o.require(run_cli("gradcheck --seeds 200 --fixture table1 --no-timestamp --out " +
                      dir.string()) == 0,
              "gradcheck exited nonzero");
    if (!o.pass) return o;
    const json doc = load_json(dir / "gradcheck_report.json");
    const double err = doc["report"]["max_rel_error"].get<double>();
    o.require(err <= 1e-5, "max rel error " + fmt(err) + " > 1e-5");
    o.note("max rel error " + fmt(err) + " over 200 draws (tol 1e-5)");
    return o;
}

// criterion 2 — four-term surface fit reaches MAPE <= 0.5 % with defaults
Outcome criterion2() {
    Outcome o;
    const fs::path dir = work_dir("c2");
    o.require(run_cli("fit2d --fixture table1 --nc 4 --no-timestamp --out " + dir.string()) == 0,
              "fit2d exited nonzero");
    if (!o.pass) return o;
    const json doc = load_json(dir / "fit2d_report.json");
    const double mape = doc["report"]["mape"].get<double>();
    o.require(mape <= 0.5, "MAPE " + fmt(mape) + "% > 0.5%");
    o.note("MAPE " + fmt(mape) + "% (bound 0.5%), SSE " +
           fmt(doc["report"]["sse"].get<double>()));
    return o;
}

// criterion 3 — term-count sweep: SSE non-increasing, MAPE(4) < MAPE(1)
Outcome criterion3() {
    Outcome o;
    const fs::path dir = work_dir("c3");
    o.require(run_cli("sweep --fixture table1 --nc-min 1 --nc-max 4 --no-timestamp --out " +
                      dir.string()) == 0,
              "sweep exited nonzero");
    if (!o.pass) return o;
    const json doc = load_json(dir / "sweep_report.json");
    const auto& entries = doc["report"]["entries"];
    o.require(entries.size() == 4, "expected 4 sweep entries");
    if (!o.pass) return o;

    std::vector<double> sse, mape;
    for (const auto& e : entries) {
        sse.push_back(e["report"]["sse"].get<double>());
        mape.push_back(e["report"]["mape"].get<double>());
    }
    for (std::size_t i = 1; i < sse.size(); ++i)
        o.require(sse[i] <= sse[i - 1], "SSE increased from " + fmt(sse[i - 1]) + " to " +
                                            fmt(sse[i]) + " at term count " +
                                            std::to_string(i + 1));
    o.require(mape[3] < mape[0],
              "MAPE(4 terms) " + fmt(mape[3]) + " not below MAPE(1 term) " + fmt(mape[0]));
    o.note("SSE " + fmt(sse[0]) + " -> " + fmt(sse[1]) + " -> " + fmt(sse[2]) + " -> " +
           fmt(sse[3]) + "; MAPE " + fmt(mape[0]) + "% -> " + fmt(mape[3]) + "%");
    return o;
}

// criterion 4 — per-family objective ranking on the first accuracy column
Outcome criterion4() {
    Outcome o;
    const fs::path dir = work_dir("c4");
    o.require(run_cli("fit1d --family all --fixture table1 --s-col 0 --no-timestamp --out " +
                      dir.string()) == 0,
              "fit1d --family all exited nonzero");
    if (!o.pass) return o;
    const json doc = load_json(dir / "fit1d_report.json");
    const auto& families = doc["report"]["families"];
    const double best = families["exp2"]["sse"].get<double>();
    std::string summary = "exp2 " + fmt(best);
    for (const char* other : {"poly2", "poly3", "log", "exp1"}) {
        const double sse = families[other]["sse"].get<double>();
        o.require(best < sse, std::string("exp2 SSE not strictly below ") + other);
        summary += ", " + std::string(other) + " " + fmt(sse);
    }
    o.note(summary);
    return o;
}

// criterion 5 — stored exp2 rows reproduce their grid columns within 0.5
Outcome criterion5() {
    Outcome o;
    const AccuracyGrid grid = fixture_table1();
    const Table2Fixture rows = fixture_table2();
    std::string devs;
    for (const auto& row : rows.rows) {
        const Series1D col = column_series(grid, row.column_index);
        double max_dev = 0.0;
        for (std::size_t i = 0; i < col.size(); ++i)
            max_dev = std::max(max_dev,
                               std::fabs(eval_model1d(Model1DParams{row.params}, col.x[i]) -
                                         col.y[i]));
        o.require(max_dev <= 0.5, "row " + fmt(row.row_label) + " deviates by " + fmt(max_dev));
        devs += (devs.empty() ? "" : ", ") + fmt(max_dev);
    }
    const double spot = eval_model1d(Model1DParams{rows.rows[0].params}, 10.0);
    o.require(std::fabs(spot - 81.94) <= 0.05,
              "spot value " + fmt(spot, 6) + " not within 0.05 of 81.94");
    o.note("per-row max deviations {" + devs + "} (bound 0.5); spot " + fmt(spot, 6));
    return o;
}

// criterion 6 — stored sigmoid vs the maximum-accuracy column, and our own fit
Outcome criterion6() {
    Outcome o;
    const Table2Fixture rows = fixture_table2();
    const Model1DParams published{fixture_sigmoid_fig5()};

    Series1D pts;
    pts.label = "a vs s";
    for (const auto& row : rows.rows) {
        pts.x.push_back(row.row_label);
        pts.y.push_back(row.params.a);
    }

    double max_dev = 0.0;
    std::vector<double> published_pred;
    std::string devs;
    for (std::size_t i = 0; i < pts.x.size(); ++i) {
        const double pred = eval_model1d(published, pts.x[i]);
        published_pred.push_back(pred);
        const double dev = std::fabs(pred - pts.y[i]);
        max_dev = std::max(max_dev, dev);
        devs += (devs.empty() ? "" : ", ") + fmt(dev);
    }
    o.require(max_dev <= 1.0, "stored sigmoid deviates from the asymptote column by {" + devs +
                                  "}, max " + fmt(max_dev) + " > 1.0");

    const double published_sse = metrics(published_pred, pts.y).sse;
    const FitReport own = fit_nonlinear_1d(ModelFamily::sigmoid, pts, FitConfig{});
    o.require(own.sse <= published_sse, "own sigmoid fit SSE " + fmt(own.sse) +
                                            " exceeds stored-parameter SSE " +
                                            fmt(published_sse));
    o.note("own fit SSE " + fmt(own.sse) + " <= stored-parameter SSE " + fmt(published_sse));
    return o;
}

// criterion 7 — Shannon-threshold anchors and ratio linearity
Outcome criterion7() {
    Outcome o;
    o.require(shannon_snr_db(1.0) == 0.0, "threshold at rate 1 is not exactly 0");
    const double at2 = shannon_snr_db(2.0);
    o.require(std::fabs(at2 - 4.7712) <= 1e-4,
              "threshold at rate 2 = " + fmt(at2, 8) + " not within 1e-4 of 4.7712");

    SeededRng rng(424242);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double gamma = rng.uniform(-40.0, 40.0);
        double rate = rng.uniform(0.05, 32.0);
        if (std::fabs(rate - 1.0) < 1e-3) rate += 0.1;
        const double lhs = snr_ratio({2.0 * gamma, rate});
        const double rhs = 2.0 * snr_ratio({gamma, rate});
        worst = std::max(worst, std::fabs(lhs - rhs) / std::max(1.0, std::fabs(rhs)));
    }
    o.require(worst <= 1e-12, "linearity violated: worst rel discrepancy " + fmt(worst));
    o.note("threshold(2) = " + fmt(at2, 8) + "; linearity over 1000 draws, worst " + fmt(worst));
    return o;
}

// criterion 8 — items documented as out of desk-scale scope
Outcome criterion8() {
    Outcome o;
    // The stored four-term optimum is not a reproduction target (unreported
    // initialization/normalization); its behavior is covered by the diagnostic
    // subcommand, which must succeed under every input convention.
    const fs::path dir = work_dir("c8");
    o.require(run_cli("diagnose-table3 --no-timestamp --out " + dir.string()) == 0,
              "diagnose-table3 exited nonzero");
    if (o.pass) {
        const json doc = load_json(dir / "diagnose_table3_report.json");
        o.require(doc["report"]["hypotheses"].size() == 6, "expected 6 hypotheses");
    }
    o.note("out of scope by design: exact stored-optimum reproduction (covered by "
           "diagnose-table3 + criterion 2), the physical transmission chain, and "
           "classifier training; diagnostic subcommand verified");
    return o;
}

// criterion 9 — byte-identical reports across reruns at a fixed seed
Outcome criterion9() {
    Outcome o;
    const fs::path a2 = work_dir("c9_fit2d_a"), b2 = work_dir("c9_fit2d_b");
    const fs::path a3 = work_dir("c9_sweep_a"), b3 = work_dir("c9_sweep_b");

    const std::string fit2d_args = "fit2d --fixture table1 --nc 4 --seed 0 --no-timestamp --out ";
    const std::string sweep_args =
        "sweep --fixture table1 --nc-min 1 --nc-max 4 --seed 0 --no-timestamp --out ";
    o.require(run_cli(fit2d_args + a2.string()) == 0, "first fit2d run failed");
    o.require(run_cli(fit2d_args + b2.string()) == 0, "second fit2d run failed");
    o.require(run_cli(sweep_args + a3.string()) == 0, "first sweep run failed");
    o.require(run_cli(sweep_args + b3.string()) == 0, "second sweep run failed");
    if (!o.pass) return o;

    const std::string fit2d_a = slurp(a2 / "fit2d_report.json");
    o.require(!fit2d_a.empty() && fit2d_a == slurp(b2 / "fit2d_report.json"),
              "fit2d reports differ between runs");
    const std::string sweep_a = slurp(a3 / "sweep_report.json");
    o.require(!sweep_a.empty() && sweep_a == slurp(b3 / "sweep_report.json"),
              "sweep reports differ between runs");
    o.require(slurp(a2 / "fit2d_surface.tsv") == slurp(b2 / "fit2d_surface.tsv"),
              "surface tables differ between runs");
    o.note("fit2d and sweep reports byte-identical across reruns");
    return o;
}

struct Criterion {
    const char* title;
    std::function<Outcome()> run;
    double budget_seconds;  // 0 = no budget
};

const std::map<int, Criterion> kCriteria = {
    {1, {"gradient check against finite differences", criterion1, 10.0}},
    {2, {"four-term surface fit MAPE", criterion2, 60.0}},
    {3, {"term-count sweep trend", criterion3, 240.0}},
    {4, {"one-dimensional family ranking", criterion4, 10.0}},
    {5, {"stored exp2 rows vs grid columns", criterion5, 1.0}},
    {6, {"stored sigmoid vs asymptote column", criterion6, 1.0}},
    {7, {"link math anchors and linearity", criterion7, 1.0}},
    {8, {"out-of-scope items", criterion8, 0.0}},
    {9, {"report determinism", criterion9, 300.0}},
};

} // namespace

int main(int argc, char** argv) {
    int selected = 0;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--criterion" && i + 1 < argc) {
            selected = std::atoi(argv[++i]);
        } else {
            std::fprintf(stderr, "usage: %s [--criterion N]\n", argv[0]);
            return 2;
        }
    }
    if (selected != 0 && kCriteria.find(selected) == kCriteria.end()) {
        std::fprintf(stderr, "unknown criterion %d (valid: 1..9)\n", selected);
        return 2;
    }

    int failures = 0;
    for (const auto& [number, criterion] : kCriteria) {
        if (selected != 0 && number != selected) continue;

        const auto start = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = criterion.run();
        } catch (const std::exception& e) {
            outcome.pass = false;
            outcome.require(false, std::string("exception: ") + e.what());
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (criterion.budget_seconds > 0.0)
            outcome.require(secs < criterion.budget_seconds,
                            "runtime " + fmt(secs) + " s exceeded the " +
                                fmt(criterion.budget_seconds) + " s budget");

        std::printf("[%s] criterion %d: %s — %s (%.1f s)\n", outcome.pass ? "PASS" : "FAIL",
                    number, criterion.title, outcome.detail.c_str(), secs);
        std::fflush(stdout);
        if (!outcome.pass) ++failures;
    }
    return failures;
}
