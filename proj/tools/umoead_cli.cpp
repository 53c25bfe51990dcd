// Command-line front end for the umoead shared library. Talks to the core
// exclusively through the C API in umoead.h.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nlohmann/json.hpp"
#include "umoead.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitConfig = 2;

int exit_code_for(umoead_status status) {
    switch (status) {
        case UMOEAD_OK:
            return kExitOk;
        case UMOEAD_ERR_IO:
        case UMOEAD_ERR_RUNTIME:
            return kExitRuntime;
        default:
            return kExitConfig;
    }
}

int fail(umoead_status status) {
    std::cerr << "error: " << umoead_last_error() << "\n";
    return exit_code_for(status);
}

std::vector<double> parse_number_list(const std::string& text) {
    std::vector<double> values;
    std::stringstream stream(text);
    std::string token;
    while (std::getline(stream, token, ',')) {
        if (token.empty()) continue;
        values.push_back(std::stod(token));
    }
    return values;
}

int run_command(const std::string& config_path, const std::string& problem, int population,
                long long seed, const std::string& mode, const std::string& out_dir) {
    nlohmann::json config = nlohmann::json::object();
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) {
            std::cerr << "error: cannot open config file: " << config_path << "\n";
            return kExitConfig;
        }
        try {
            in >> config;
        } catch (const std::exception& e) {
            std::cerr << "error: invalid config JSON: " << e.what() << "\n";
            return kExitConfig;
        }
    }
    if (!problem.empty()) config["problem"] = problem;
    if (population > 0) config["population"] = population;
    if (seed >= 0) config["seed"] = seed;
    if (!mode.empty()) config["mode"] = mode;
    if (!out_dir.empty()) config["output"] = out_dir;

    umoead_run* run = umoead_run_create(config.dump().c_str());
    if (!run) return fail(UMOEAD_ERR_CONFIG);

    const umoead_status status = umoead_run_execute(run);
    if (status != UMOEAD_OK) {
        const int code = fail(status);
        umoead_run_close(run);
        return code;
    }

    const nlohmann::json report = nlohmann::json::parse(umoead_run_report_json(run));
    const auto& rounds = report.at("rounds");
    for (std::size_t i = 0; i < rounds.size(); ++i) {
        const auto& r = rounds[i];
        std::printf("round %zu  hv=%.6f  spacing=%.6f  sparsity=%.6f  delta=%.6f  soft=%.6f\n",
                    i + 1, r.at("hv").get<double>(), r.at("spacing").get<double>(),
                    r.at("sparsity").get<double>(), r.at("delta").get<double>(),
                    r.at("soft_delta").get<double>());
    }
    const auto& timing = report.at("timing");
    std::printf("done in %.2fs (evolve %.2fs, pfl %.2fs, adjust %.2fs)\n",
                timing.at("total_seconds").get<double>(),
                timing.at("evolve_seconds").get<double>(),
                timing.at("pfl_seconds").get<double>(),
                timing.at("adjust_seconds").get<double>());
    if (!out_dir.empty())
        std::printf("results written to %s\n", out_dir.c_str());
    else if (report.at("config").contains("output") &&
             !report.at("config").at("output").get<std::string>().empty())
        std::printf("results written to %s\n",
                    report.at("config").at("output").get<std::string>().c_str());
    umoead_run_close(run);
    return kExitOk;
}

int oracle_command(const std::string& problem_id, const std::string& lambda_text, bool numeric,
                   double tol) {
    const std::vector<double> lambda = parse_number_list(lambda_text);
    if (lambda.empty()) {
        std::cerr << "error: --lambda expects comma-separated weights\n";
        return kExitConfig;
    }
    umoead_problem* problem = umoead_problem_open(problem_id.c_str(), 0);
    if (!problem) return fail(UMOEAD_ERR_CONFIG);

    const int m = umoead_problem_objectives(problem);
    std::vector<double> y(static_cast<std::size_t>(m), 0.0);
    umoead_status status;
    if (numeric) {
        status = umoead_problem_numeric_h(problem, lambda.data(),
                                          static_cast<int>(lambda.size()), tol, y.data());
    } else {
        status = umoead_problem_analytic_h(problem, lambda.data(),
                                           static_cast<int>(lambda.size()), y.data());
        if (status == UMOEAD_ERR_NOT_AVAILABLE)
            status = umoead_problem_numeric_h(problem, lambda.data(),
                                              static_cast<int>(lambda.size()), tol, y.data());
    }
    if (status != UMOEAD_OK) {
        const int code = fail(status);
        umoead_problem_close(problem);
        return code;
    }
    for (int i = 0; i < m; ++i) {
        if (i) std::cout << ' ';
        std::cout << y[static_cast<std::size_t>(i)];
    }
    std::cout << '\n';
    umoead_problem_close(problem);
    return kExitOk;
}

int metrics_command(const std::string& input_path, const std::string& ref_text, double soft_k) {
    const std::vector<double> ref = parse_number_list(ref_text);
    if (ref.size() < 2) {
        std::cerr << "error: --ref expects at least two comma-separated values\n";
        return kExitConfig;
    }
    std::ifstream in(input_path);
    if (!in) {
        std::cerr << "error: cannot open input file: " << input_path << "\n";
        return kExitConfig;
    }

    std::string header;
    if (!std::getline(in, header)) {
        std::cerr << "error: empty input file\n";
        return kExitConfig;
    }
    std::vector<std::size_t> y_columns;
    {
        std::stringstream stream(header);
        std::string name;
        std::size_t column = 0;
        while (std::getline(stream, name, ',')) {
            if (!name.empty() && name[0] == 'y') y_columns.push_back(column);
            ++column;
        }
    }
    if (y_columns.size() != ref.size()) {
        std::cerr << "error: found " << y_columns.size() << " objective columns but --ref has "
                  << ref.size() << " components\n";
        return kExitConfig;
    }

    std::vector<double> flat;
    int rows = 0;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream stream(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(stream, cell, ',')) cells.push_back(cell);
        for (std::size_t col : y_columns) {
            if (col >= cells.size()) {
                std::cerr << "error: short row in " << input_path << "\n";
                return kExitConfig;
            }
            flat.push_back(std::stod(cells[col]));
        }
        ++rows;
    }

    std::vector<char> buffer(1 << 16);
    const umoead_status status =
        umoead_metrics_score(flat.data(), rows, static_cast<int>(ref.size()), ref.data(), soft_k,
                             buffer.data(), buffer.size());
    if (status != UMOEAD_OK) return fail(status);
    std::cout << buffer.data() << '\n';
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"decomposition-based multiobjective optimizer with uniform weight adjustment"};
    app.require_subcommand(1);

    std::string config_path, problem, mode, out_dir;
    int population = 0;
    long long seed = -1;
    CLI::App* run = app.add_subcommand("run", "execute an optimization run");
    run->add_option("--config", config_path, "JSON config file");
    run->add_option("--problem", problem, "problem id override");
    run->add_option("--n", population, "population size override");
    run->add_option("--seed", seed, "random seed override");
    run->add_option("--mode", mode, "umoead or moead");
    run->add_option("--out", out_dir, "output directory");

    std::string oracle_problem, oracle_lambda;
    bool oracle_numeric = false;
    double oracle_tol = 1e-10;
    CLI::App* oracle = app.add_subcommand("oracle", "print the Pareto objective for a weight");
    oracle->add_option("--problem", oracle_problem, "problem id")->required();
    oracle->add_option("--lambda", oracle_lambda, "comma-separated weight vector")->required();
    oracle->add_flag("--numeric", oracle_numeric, "force the bisection oracle");
    oracle->add_option("--tol", oracle_tol, "bisection tolerance");

    std::string metrics_input, metrics_ref;
    double metrics_soft_k = 50.0;
    CLI::App* metrics = app.add_subcommand("metrics", "score an objective set from a CSV file");
    metrics->add_option("--input", metrics_input, "objectives.csv-style input")->required();
    metrics->add_option("--ref", metrics_ref, "comma-separated reference point")->required();
    metrics->add_option("--soft-k", metrics_soft_k, "sharpness of the soft minimum");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (run->parsed()) return run_command(config_path, problem, population, seed, mode, out_dir);
        if (oracle->parsed())
            return oracle_command(oracle_problem, oracle_lambda, oracle_numeric, oracle_tol);
        if (metrics->parsed()) return metrics_command(metrics_input, metrics_ref, metrics_soft_k);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitConfig;
}
