#include "umoead/harness.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>

#include "nlohmann/json.hpp"
#include "umoead/errors.hpp"
#include "umoead/pfl.hpp"
#include "umoead/scalarize.hpp"
#include "umoead/uniformity.hpp"

namespace umoead::harness {

namespace {

using nlohmann::json;

long long binomial(int n, int k) {
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

int das_dennis_count(int m, int H) { return static_cast<int>(binomial(H + m - 1, m - 1)); }

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

int env_threads() {
    const char* value = std::getenv("UMOEAD_THREADS");
    if (!value) return 1;
    int threads = std::atoi(value);
    return threads > 0 ? threads : 1;
}

void append_csv_value(std::string& line, double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    line.append(buf, ptr);
}

json timing_to_json(const PhaseTiming& t) {
    return json{{"evolve_seconds", t.evolve_seconds},
                {"pfl_seconds", t.pfl_seconds},
                {"adjust_seconds", t.adjust_seconds},
                {"metrics_seconds", t.metrics_seconds},
                {"total_seconds", t.total_seconds}};
}

json record_to_json(const metrics::MetricsRecord& r) {
    return json::parse(metrics::record_to_json_string(r));
}

}  // namespace

RunConfig config_from_json_string(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("invalid config JSON: ") + e.what());
    }
    RunConfig c;
    try {
        c.problem = j.value("problem", c.problem);
        c.n_var = j.value("n_var", c.n_var);
        c.population = j.value("population", c.population);
        c.partitions = j.value("partitions", c.partitions);
        c.neighborhood = j.value("neighborhood", c.neighborhood);
        c.outer_rounds = j.value("outer_rounds", c.outer_rounds);
        c.inner_generations = j.value("inner_generations", c.inner_generations);
        c.mode = j.value("mode", c.mode);
        c.elite_update = j.value("elite_update", c.elite_update);
        c.replacement_cap = j.value("replacement_cap", c.replacement_cap);
        c.seed = j.value("seed", c.seed);
        if (j.contains("operators")) {
            const json& ops = j.at("operators");
            c.operators.eta_c = ops.value("eta_c", c.operators.eta_c);
            c.operators.p_c = ops.value("p_c", c.operators.p_c);
            c.operators.eta_m = ops.value("eta_m", c.operators.eta_m);
            c.operators.p_m = ops.value("p_m", c.operators.p_m);
        }
        if (j.contains("pfl")) {
            const json& p = j.at("pfl");
            c.pfl.hidden = p.value("hidden", c.pfl.hidden);
            c.pfl.epochs = p.value("epochs", c.pfl.epochs);
            c.pfl.lr = p.value("lr", c.pfl.lr);
            c.pfl.init_checkpoint = p.value("init_checkpoint", c.pfl.init_checkpoint);
        }
        if (j.contains("adjust")) {
            const json& a = j.at("adjust");
            c.adjust.steps = a.value("steps", c.adjust.steps);
            c.adjust.lr = a.value("lr", c.adjust.lr);
            c.adjust.objective = a.value("objective", c.adjust.objective);
            c.adjust.soft_k = a.value("soft_k", c.adjust.soft_k);
        }
        if (j.contains("metrics")) {
            const json& m = j.at("metrics");
            c.metrics.ref = m.value("ref", c.metrics.ref);
            c.metrics.soft_k = m.value("soft_k", c.metrics.soft_k);
        }
        c.initial_weights = j.value("initial_weights", c.initial_weights);
        c.output_dir = j.value("output", c.output_dir);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("invalid config value: ") + e.what());
    }
    return c;
}

std::string config_to_json_string(const RunConfig& c) {
    json j;
    j["problem"] = c.problem;
    j["n_var"] = c.n_var;
    j["population"] = c.population;
    j["partitions"] = c.partitions;
    j["neighborhood"] = c.neighborhood;
    j["outer_rounds"] = c.outer_rounds;
    j["inner_generations"] = c.inner_generations;
    j["mode"] = c.mode;
    j["elite_update"] = c.elite_update;
    j["replacement_cap"] = c.replacement_cap;
    j["seed"] = c.seed;
    j["operators"] = json{{"eta_c", c.operators.eta_c},
                          {"p_c", c.operators.p_c},
                          {"eta_m", c.operators.eta_m},
                          {"p_m", c.operators.p_m}};
    j["pfl"] = json{{"hidden", c.pfl.hidden},
                    {"epochs", c.pfl.epochs},
                    {"lr", c.pfl.lr},
                    {"init_checkpoint", c.pfl.init_checkpoint}};
    j["adjust"] = json{{"steps", c.adjust.steps},
                       {"lr", c.adjust.lr},
                       {"objective", c.adjust.objective},
                       {"soft_k", c.adjust.soft_k}};
    j["metrics"] = json{{"ref", c.metrics.ref}, {"soft_k", c.metrics.soft_k}};
    j["initial_weights"] = c.initial_weights;
    j["output"] = c.output_dir;
    return j.dump(2);
}

RunConfig resolve(const RunConfig& input) {
    RunConfig c = input;
    const problems::Problem problem = problems::make(c.problem, c.n_var);
    c.n_var = problem.n;
    const int m = problem.m;

    if (!c.initial_weights.empty()) {
        if (c.population == 0) c.population = static_cast<int>(c.initial_weights.size());
        if (c.population != static_cast<int>(c.initial_weights.size()))
            throw ConfigError("initial_weights size disagrees with population");
        for (const auto& w : c.initial_weights) {
            if (static_cast<int>(w.size()) != m)
                throw ConfigError("initial_weights entries must have m components");
            double sum = 0.0;
            for (double v : w) {
                if (v < 0.0) throw ConfigError("initial_weights must be nonnegative");
                sum += v;
            }
            if (std::abs(sum - 1.0) > 1e-9)
                throw ConfigError("initial_weights must lie on the simplex");
        }
    }

    // Das-Dennis sizing: for two objectives H = N - 1 is exact; otherwise
    // the smallest lattice still covering N, truncated deterministically.
    if (c.population > 0 && c.partitions == 0) {
        if (m == 2) {
            c.partitions = c.population - 1;
        } else {
            int H = 1;
            while (das_dennis_count(m, H) < c.population) ++H;
            c.partitions = H;
        }
    } else if (c.population == 0 && c.partitions > 0) {
        c.population = das_dennis_count(m, c.partitions);
    } else if (c.population == 0 && c.partitions == 0) {
        c.population = m == 2 ? 100 : 91;
        c.partitions = m == 2 ? 99 : 12;
    }
    if (c.population < 2) throw ConfigError("population must be at least 2");
    if (c.partitions < 1) throw ConfigError("partitions must be at least 1");

    if (c.neighborhood == 0)
        c.neighborhood = std::max(2, (c.population + 9) / 10);
    if (c.neighborhood < 2 || c.neighborhood > c.population)
        throw ConfigError("neighborhood must satisfy 2 <= T <= N");

    if (c.outer_rounds < 1) throw ConfigError("outer_rounds must be positive");
    if (c.inner_generations < 0) throw ConfigError("inner_generations must be nonnegative");
    if (c.mode != "umoead" && c.mode != "moead")
        throw ConfigError("mode must be \"umoead\" or \"moead\"");
    if (c.elite_update != "classic" && c.elite_update != "literal")
        throw ConfigError("elite_update must be \"classic\" or \"literal\"");
    if (c.replacement_cap < 1) throw ConfigError("replacement_cap must be positive");
    if (c.adjust.objective != "hard" && c.adjust.objective != "soft")
        throw ConfigError("adjust.objective must be \"hard\" or \"soft\"");
    if (c.pfl.epochs < 0 || c.adjust.steps < 0)
        throw ConfigError("pfl.epochs and adjust.steps must be nonnegative");
    if (!(c.adjust.soft_k > 0.0) || !(c.metrics.soft_k > 0.0))
        throw ConfigError("soft_k must be positive");

    if (c.operators.p_m < 0.0) c.operators.p_m = 1.0 / static_cast<double>(problem.n);

    if (c.metrics.ref.empty()) {
        if (!problem.pf_nadir.empty()) {
            c.metrics.ref = problem.pf_nadir;
            for (double& v : c.metrics.ref) v *= 1.1;
        }
        // else: left empty; the per-round nadir of the snapshot is used.
    } else if (static_cast<int>(c.metrics.ref.size()) != m) {
        throw ConfigError("metrics.ref must have m components");
    }
    return c;
}

namespace {

std::vector<std::vector<double>> build_initial_weights(const RunConfig& c, int m) {
    if (!c.initial_weights.empty()) return c.initial_weights;
    std::vector<std::vector<double>> weights = scalarize::das_dennis(m, c.partitions);
    if (static_cast<int>(weights.size()) < c.population)
        throw ConfigError("partitions too small for the requested population");
    weights.resize(static_cast<std::size_t>(c.population));
    return weights;
}

metrics::MetricsRecord snapshot(const moead::PopulationState& state, const RunConfig& c) {
    std::vector<std::vector<double>> objectives;
    objectives.reserve(state.individuals.size());
    for (const auto& ind : state.individuals) objectives.push_back(ind.y);

    std::vector<double> ref = c.metrics.ref;
    if (ref.empty()) {
        ref.assign(static_cast<std::size_t>(state.num_objectives()),
                   -std::numeric_limits<double>::infinity());
        for (const auto& y : objectives)
            for (std::size_t i = 0; i < ref.size(); ++i) ref[i] = std::max(ref[i], y[i]);
        for (double& v : ref) v *= 1.1;
    }
    return metrics::report(objectives, ref, c.metrics.soft_k);
}

}  // namespace

RunReport run(const RunConfig& input) {
    const auto t_start = std::chrono::steady_clock::now();
    const RunConfig c = resolve(input);
    const problems::Problem problem = problems::make(c.problem, c.n_var);

    RunReport report;
    report.config = c;
    report.seed = c.seed;

    moead::StepConfig step;
    step.operators = c.operators;
    step.elite = c.elite_update == "classic" ? moead::EliteUpdate::Classic
                                             : moead::EliteUpdate::Literal;
    step.replacement_cap = c.replacement_cap;
    step.threads = env_threads();

    moead::PopulationState state =
        moead::init_population(problem, build_initial_weights(c, problem.m), c.neighborhood,
                               c.seed);

    // The surrogate warm-starts across rounds; an explicit checkpoint (e.g.
    // from a previous run) seeds round one.
    pfl::PflModel model = c.pfl.init_checkpoint.empty()
                              ? pfl::PflModel(problem.m, c.pfl.hidden, c.seed)
                              : pfl::PflModel::load(c.pfl.init_checkpoint);
    if (model.output_dim() != problem.m)
        throw ConfigError("init_checkpoint model does not match the problem dimension");

    for (int round = 0; round < c.outer_rounds; ++round) {
        {
            const auto t0 = std::chrono::steady_clock::now();
            for (int g = 0; g < c.inner_generations; ++g)
                moead::generation_step(state, problem, step);
            report.timing.evolve_seconds += seconds_since(t0);
        }

        if (c.mode == "umoead") {
            const auto t0 = std::chrono::steady_clock::now();
            std::vector<pfl::TrainingPair> pairs(state.individuals.size());
            for (std::size_t j = 0; j < state.individuals.size(); ++j) {
                pairs[j].theta = state.angles[j];
                pairs[j].y = state.individuals[j].y;
            }
            if (c.pfl.epochs > 0) model.fit(pairs, c.pfl.epochs, c.pfl.lr);
            report.timing.pfl_seconds += seconds_since(t0);

            const auto t1 = std::chrono::steady_clock::now();
            uniformity::AdjustConfig adjust;
            adjust.steps = c.adjust.steps;
            adjust.lr = c.adjust.lr;
            adjust.objective = c.adjust.objective == "hard"
                                   ? uniformity::AscentObjective::HardMin
                                   : uniformity::AscentObjective::SoftMin;
            adjust.soft_k = c.adjust.soft_k;
            uniformity::AdjustResult adjusted = uniformity::adjust_angles(model, state.angles,
                                                                          adjust);
            if (adjusted.status == uniformity::AdjustStatus::Ok) {
                std::vector<std::vector<double>> new_weights;
                new_weights.reserve(adjusted.angles.size());
                for (const auto& theta : adjusted.angles)
                    new_weights.push_back(scalarize::angle_to_weight(theta));
                moead::refresh_weights(state, std::move(new_weights), c.neighborhood);
            }
            report.timing.adjust_seconds += seconds_since(t1);
        }

        const auto t2 = std::chrono::steady_clock::now();
        report.rounds.push_back(snapshot(state, c));
        report.timing.metrics_seconds += seconds_since(t2);
    }

    for (const auto& ind : state.individuals) {
        report.final_x.push_back(ind.x);
        report.final_y.push_back(ind.y);
    }
    report.final_weights = state.weights;
    report.final_angles = state.angles;
    report.timing.total_seconds = seconds_since(t_start);

    if (!c.output_dir.empty()) export_report(report, c.output_dir);
    return report;
}

void export_report(const RunReport& report, const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory " + dir.string() + ": " +
                                     ec.message());

    const auto write_file = [&](const std::string& name, const std::string& content) {
        const std::filesystem::path path = dir / name;
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
        out << content;
        if (!out) throw std::runtime_error("failed writing " + path.string());
    };

    const std::size_t n_var = report.final_x.empty() ? 0 : report.final_x[0].size();
    const std::size_t n_obj = report.final_y.empty() ? 0 : report.final_y[0].size();

    std::string objectives = "index";
    for (std::size_t i = 1; i <= n_var; ++i) objectives += ",x" + std::to_string(i);
    for (std::size_t i = 1; i <= n_obj; ++i) objectives += ",y" + std::to_string(i);
    objectives += '\n';
    for (std::size_t row = 0; row < report.final_x.size(); ++row) {
        objectives += std::to_string(row);
        for (double v : report.final_x[row]) {
            objectives += ',';
            append_csv_value(objectives, v);
        }
        for (double v : report.final_y[row]) {
            objectives += ',';
            append_csv_value(objectives, v);
        }
        objectives += '\n';
    }
    write_file("objectives.csv", objectives);

    std::string weights = "index";
    for (std::size_t i = 1; i <= n_obj; ++i) weights += ",lambda" + std::to_string(i);
    for (std::size_t i = 1; i + 1 <= n_obj; ++i) weights += ",theta" + std::to_string(i);
    weights += '\n';
    for (std::size_t row = 0; row < report.final_weights.size(); ++row) {
        weights += std::to_string(row);
        for (double v : report.final_weights[row]) {
            weights += ',';
            append_csv_value(weights, v);
        }
        for (double v : report.final_angles[row]) {
            weights += ',';
            append_csv_value(weights, v);
        }
        weights += '\n';
    }
    write_file("weights.csv", weights);

    json rounds = json::array();
    for (const auto& r : report.rounds) rounds.push_back(record_to_json(r));
    write_file("metrics.json", json{{"rounds", rounds}}.dump(2) + "\n");
    write_file("config.json", config_to_json_string(report.config) + "\n");
}

std::string report_to_json_string(const RunReport& report) {
    json j;
    j["config"] = json::parse(config_to_json_string(report.config));
    j["seed"] = report.seed;
    json rounds = json::array();
    for (const auto& r : report.rounds) rounds.push_back(record_to_json(r));
    j["rounds"] = rounds;
    j["final"] = json{{"x", report.final_x},
                      {"objectives", report.final_y},
                      {"weights", report.final_weights},
                      {"angles", report.final_angles}};
    j["timing"] = timing_to_json(report.timing);
    return j.dump(2);
}

}  // namespace umoead::harness
