// CLI integration checks: exit codes, output files, reproducibility.
// Usage: edalab_cli_tests <path-to-eda_lab-binary>
#include "edalab/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

int failures = 0;

void check(bool ok, const std::string& what) {
    if (!ok) {
        ++failures;
        std::cout << "FAIL " << what << "\n";
    } else {
        std::cout << "ok   " << what << "\n";
    }
}

int run_command(const std::string& command) {
    const int status = std::system(command.c_str());
    if (status == -1) return -1;
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: edalab_cli_tests <eda_lab binary>\n";
        return 64;
    }
    const std::string cli = argv[1];
    const fs::path work = fs::temp_directory_path() / "edalab_cli_tests";
    fs::remove_all(work);
    fs::create_directories(work);

    const fs::path dynamics_cfg = work / "dynamics.json";
    write_file(dynamics_cfg, R"({
        "problem": {"kind": "onemax", "bits": 6},
        "selection": {"selection": "truncation", "mu": 0.5},
        "initial": {"kind": "uniform"},
        "max_iters": 100
    })");

    // dynamics: success, expected tau and bound values in the report
    {
        const fs::path out = work / "dyn";
        const int code = run_command(cli + " dynamics --config " +
                                     dynamics_cfg.string() + " --out-dir " +
                                     out.string() + " > /dev/null");
        check(code == 0, "dynamics exits 0");
        check(fs::exists(out / "trajectory.csv"), "trajectory.csv written");
        check(fs::exists(out / "bound_report.json"), "bound_report.json written");

        const nlohmann::json report =
            nlohmann::json::parse(slurp(out / "bound_report.json"));
        check(report["bound_report"]["engine_tau"].get<int>() == 6,
              "engine tau is 6");
        check(report["bound_report"]["exact_tau_iterations"].get<long>() == 6,
              "exact tau iterations is 6");
        check(std::abs(report["bound_report"]["upper_bound"].get<double>() -
                       64.0) < 1e-9,
              "upper bound is 64");

        std::ifstream csv(out / "trajectory.csv");
        edalab::io::CsvTable table = edalab::io::read_csv(csv);
        check(table.rows.size() == 7, "trajectory has states 0..6");
        check(!table.metadata.empty(), "trajectory carries metadata header");
    }

    // dynamics from an already-converged start: single-row trajectory
    {
        const fs::path cfg = work / "converged.json";
        write_file(cfg, R"({
            "problem": {"kind": "onemax", "bits": 6},
            "selection": {"selection": "truncation", "mu": 0.5},
            "initial": {"kind": "d0", "d0": 0.0}
        })");
        const fs::path out = work / "dyn0";
        const int code = run_command(cli + " dynamics --config " + cfg.string() +
                                     " --out-dir " + out.string() + " > /dev/null");
        check(code == 0, "converged start exits 0");
        std::ifstream csv(out / "trajectory.csv");
        edalab::io::CsvTable table = edalab::io::read_csv(csv);
        check(table.rows.size() == 1, "converged trajectory is a single state");
        const nlohmann::json report =
            nlohmann::json::parse(slurp(out / "bound_report.json"));
        check(report["bound_report"]["engine_tau"].get<int>() == 0, "tau is 0");
    }

    // missing config file: configuration error
    {
        const int code = run_command(cli + " dynamics --config " +
                                     (work / "missing.json").string() +
                                     " 2> /dev/null");
        check(code == 2, "missing config exits 2");
    }

    // malformed config: configuration error
    {
        const fs::path cfg = work / "bad.json";
        write_file(cfg, R"({"problem": {"kind": "cube"}})");
        const int code = run_command(cli + " dynamics --config " + cfg.string() +
                                     " 2> /dev/null");
        check(code == 2, "bad config exits 2");
    }

    // non-convergence: fair ties cannot absorb in 3 iterations
    {
        const fs::path cfg = work / "slow.json";
        write_file(cfg, R"({
            "problem": {"kind": "onemax", "bits": 6},
            "selection": {"selection": "tournament", "ties": "fair"},
            "initial": {"kind": "uniform"},
            "max_iters": 3
        })");
        const fs::path out = work / "slow";
        const int code = run_command(cli + " dynamics --config " + cfg.string() +
                                     " --out-dir " + out.string() +
                                     " > /dev/null 2>&1");
        check(code == 3, "non-convergence exits 3");
        check(fs::exists(out / "trajectory.csv"),
              "partial trajectory still written");
        const nlohmann::json report =
            nlohmann::json::parse(slurp(out / "bound_report.json"));
        check(report["bound_report"]["engine_tau"].is_null(),
              "engine tau reported as not reached");
        check(report["bound_report"]["note"].get<std::string>().find(
                  "unbounded") != std::string::npos,
              "fair-ties note present");
    }

    // bounds grid
    {
        const fs::path cfg = work / "grid.json";
        write_file(cfg, R"({
            "problem": {"kind": "onemax", "bits": 6},
            "selection": {"selection": "truncation", "mu": 0.5},
            "grid": {"d0": [0.75], "mu": [0.25, 0.5]}
        })");
        const fs::path out = work / "grid";
        const int code = run_command(cli + " bounds --config " + cfg.string() +
                                     " --out-dir " + out.string() + " > /dev/null");
        check(code == 0, "bounds exits 0");
        std::ifstream csv(out / "bounds_grid.csv");
        edalab::io::CsvTable table = edalab::io::read_csv(csv);
        check(table.rows.size() == 2, "grid has two rows");
        if (table.rows.size() == 2) {
            check(std::strtod(table.rows[0][4].c_str(), nullptr) == 1.0,
                  "exact tau 1.0 at mu 0.25");
            check(std::strtod(table.rows[1][4].c_str(), nullptr) == 2.0,
                  "exact tau 2.0 at mu 0.5");
        }
    }

    // empty grid: header-only CSV
    {
        const fs::path cfg = work / "empty_grid.json";
        write_file(cfg, R"({
            "problem": {"kind": "onemax", "bits": 6},
            "selection": {"selection": "truncation", "mu": 0.5},
            "grid": {"d0": [], "mu": []}
        })");
        const fs::path out = work / "empty_grid";
        const int code = run_command(cli + " bounds --config " + cfg.string() +
                                     " --out-dir " + out.string() + " > /dev/null");
        check(code == 0, "empty grid exits 0");
        std::ifstream csv(out / "bounds_grid.csv");
        edalab::io::CsvTable table = edalab::io::read_csv(csv);
        check(table.rows.empty() && !table.columns.empty(),
              "empty grid emits header only");
    }

    // out-of-domain grid value is rejected and named
    {
        const fs::path cfg = work / "bad_grid.json";
        write_file(cfg, R"({
            "problem": {"kind": "onemax", "bits": 6},
            "selection": {"selection": "truncation", "mu": 0.5},
            "grid": {"d0": [0.5, 1.5], "mu": [0.5]}
        })");
        const int code = run_command(cli + " bounds --config " + cfg.string() +
                                     " 2> " + (work / "bad_grid.err").string());
        check(code == 2, "out-of-domain grid exits 2");
        check(slurp(work / "bad_grid.err").find("1.5") != std::string::npos,
              "offending grid value named");
    }

    // simulate: determinism and file round trip
    {
        const fs::path cfg = work / "simulate.json";
        write_file(cfg, R"({
            "problem": {"kind": "onemax", "bits": 6},
            "selection": {"selection": "truncation", "mu": 0.5},
            "simulation": {
                "population_size": 2000,
                "seed": 20240601,
                "replications": 10
            }
        })");
        const fs::path out_a = work / "sim_a";
        const fs::path out_b = work / "sim_b";
        const int code_a = run_command(cli + " simulate --config " + cfg.string() +
                                       " --out-dir " + out_a.string() +
                                       " > /dev/null");
        const int code_b = run_command(cli + " simulate --config " + cfg.string() +
                                       " --out-dir " + out_b.string() +
                                       " > /dev/null");
        check(code_a == 0 && code_b == 0, "simulate exits 0");
        for (const char* name : {"trials.csv", "summary.json", "comparison.csv"}) {
            check(fs::exists(out_a / name), std::string(name) + " written");
            check(slurp(out_a / name) == slurp(out_b / name),
                  std::string(name) + " byte-identical across reruns");
        }
        const nlohmann::json summary =
            nlohmann::json::parse(slurp(out_a / "summary.json"));
        check(summary["config"]["replications"].get<int>() == 10,
              "summary echoes replications");
        check(summary["generator"] == "std::mt19937_64", "generator recorded");

        // seed override changes the outputs
        const fs::path out_c = work / "sim_c";
        run_command(cli + " simulate --config " + cfg.string() + " --out-dir " +
                    out_c.string() + " --seed 777 > /dev/null");
        check(slurp(out_c / "summary.json") != slurp(out_a / "summary.json"),
              "seed override takes effect");
        const nlohmann::json overridden =
            nlohmann::json::parse(slurp(out_c / "summary.json"));
        check(overridden["metadata"]["base_seed"].get<std::uint64_t>() == 777,
              "override recorded in metadata");
    }

    // simulate without a simulation section: configuration error
    {
        const int code = run_command(cli + " simulate --config " +
                                     dynamics_cfg.string() + " 2> /dev/null");
        check(code == 2, "simulate without simulation section exits 2");
    }

    // compare: comparison products only
    {
        const fs::path cfg = work / "compare.json";
        write_file(cfg, R"({
            "problem": {"kind": "onemax", "bits": 6},
            "selection": {"selection": "tournament", "ties": "paper"},
            "simulation": {
                "population_size": 1000,
                "seed": 3,
                "replications": 5
            }
        })");
        const fs::path out = work / "cmp";
        const int code = run_command(cli + " compare --config " + cfg.string() +
                                     " --out-dir " + out.string() + " > /dev/null");
        check(code == 0, "compare exits 0");
        check(fs::exists(out / "comparison.csv"), "comparison.csv written");
        check(fs::exists(out / "compare_report.json"), "compare_report.json written");
        check(!fs::exists(out / "trials.csv"), "compare emits no per-trial dump");
    }

    // --format csv suppresses JSON outputs
    {
        const fs::path out = work / "fmt";
        const int code = run_command(cli + " dynamics --config " +
                                     dynamics_cfg.string() + " --out-dir " +
                                     out.string() + " --format csv > /dev/null");
        check(code == 0, "format filter exits 0");
        check(fs::exists(out / "trajectory.csv"), "csv kept under --format csv");
        check(fs::exists(out / "bound_report.csv"),
              "report has a csv form under --format csv");
        check(!fs::exists(out / "bound_report.json"),
              "json suppressed under --format csv");
    }

    std::cout << (failures == 0 ? "ALL OK" : "FAILURES") << "\n";
    return failures == 0 ? 0 : 1;
}
