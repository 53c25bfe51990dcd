#include "umoead.h"

#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "umoead/errors.hpp"
#include "umoead/harness.hpp"
#include "umoead/metrics.hpp"
#include "umoead/problems.hpp"

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& message) { g_last_error = message; }

umoead_status status_from_exception() {
    try {
        throw;
    } catch (const umoead::ConfigError& e) {
        set_error(e.what());
        return UMOEAD_ERR_CONFIG;
    } catch (const umoead::NotAvailableError& e) {
        set_error(e.what());
        return UMOEAD_ERR_NOT_AVAILABLE;
    } catch (const umoead::NoIntersectionError& e) {
        set_error(e.what());
        return UMOEAD_ERR_NO_INTERSECTION;
    } catch (const std::domain_error& e) {
        set_error(e.what());
        return UMOEAD_ERR_INVALID;
    } catch (const std::invalid_argument& e) {
        set_error(e.what());
        return UMOEAD_ERR_INVALID;
    } catch (const std::bad_alloc&) {
        set_error("out of memory");
        return UMOEAD_ERR_RUNTIME;
    } catch (const std::exception& e) {
        set_error(e.what());
        return UMOEAD_ERR_RUNTIME;
    } catch (...) {
        set_error("unknown error");
        return UMOEAD_ERR_RUNTIME;
    }
}

}  // namespace

struct umoead_problem {
    umoead::problems::Problem impl;
};

struct umoead_run {
    umoead::harness::RunConfig config;
    std::string config_json;
    umoead::harness::RunReport report;
    std::string report_json;
    bool executed = false;
};

extern "C" {

const char* umoead_last_error(void) { return g_last_error.c_str(); }

umoead_problem* umoead_problem_open(const char* id, int n_var) {
    if (!id) {
        set_error("problem id is null");
        return nullptr;
    }
    try {
        return new umoead_problem{umoead::problems::make(id, n_var)};
    } catch (...) {
        status_from_exception();
        return nullptr;
    }
}

void umoead_problem_close(umoead_problem* problem) { delete problem; }

int umoead_problem_objectives(const umoead_problem* problem) {
    return problem ? problem->impl.m : 0;
}

int umoead_problem_variables(const umoead_problem* problem) {
    return problem ? problem->impl.n : 0;
}

umoead_status umoead_problem_bounds(const umoead_problem* problem, double* lower, double* upper) {
    if (!problem || !lower || !upper) {
        set_error("null argument");
        return UMOEAD_ERR_INVALID;
    }
    std::memcpy(lower, problem->impl.lower.data(), problem->impl.lower.size() * sizeof(double));
    std::memcpy(upper, problem->impl.upper.data(), problem->impl.upper.size() * sizeof(double));
    return UMOEAD_OK;
}

umoead_status umoead_problem_evaluate(const umoead_problem* problem, const double* x, int n,
                                      double* y, int m) {
    if (!problem || !x || !y) {
        set_error("null argument");
        return UMOEAD_ERR_INVALID;
    }
    if (n != problem->impl.n || m != problem->impl.m) {
        set_error("dimension mismatch");
        return UMOEAD_ERR_INVALID;
    }
    try {
        const std::vector<double> out =
            umoead::problems::evaluate(problem->impl, std::span<const double>(x, static_cast<std::size_t>(n)));
        std::memcpy(y, out.data(), out.size() * sizeof(double));
        return UMOEAD_OK;
    } catch (...) {
        return status_from_exception();
    }
}

umoead_status umoead_problem_analytic_h(const umoead_problem* problem, const double* lambda,
                                        int m, double* y) {
    if (!problem || !lambda || !y) {
        set_error("null argument");
        return UMOEAD_ERR_INVALID;
    }
    if (m != problem->impl.m) {
        set_error("dimension mismatch");
        return UMOEAD_ERR_INVALID;
    }
    try {
        const std::vector<double> out = umoead::problems::analytic_h(
            problem->impl, std::span<const double>(lambda, static_cast<std::size_t>(m)));
        std::memcpy(y, out.data(), out.size() * sizeof(double));
        return UMOEAD_OK;
    } catch (...) {
        return status_from_exception();
    }
}

umoead_status umoead_problem_numeric_h(const umoead_problem* problem, const double* lambda, int m,
                                       double tol, double* y) {
    if (!problem || !lambda || !y) {
        set_error("null argument");
        return UMOEAD_ERR_INVALID;
    }
    if (m != problem->impl.m) {
        set_error("dimension mismatch");
        return UMOEAD_ERR_INVALID;
    }
    try {
        const std::vector<double> out = umoead::problems::numeric_h_oracle(
            problem->impl, std::span<const double>(lambda, static_cast<std::size_t>(m)), tol);
        std::memcpy(y, out.data(), out.size() * sizeof(double));
        return UMOEAD_OK;
    } catch (...) {
        return status_from_exception();
    }
}

umoead_run* umoead_run_create(const char* config_json) {
    if (!config_json) {
        set_error("config JSON is null");
        return nullptr;
    }
    try {
        auto run = std::make_unique<umoead_run>();
        run->config = umoead::harness::resolve(
            umoead::harness::config_from_json_string(config_json));
        run->config_json = umoead::harness::config_to_json_string(run->config);
        return run.release();
    } catch (...) {
        status_from_exception();
        return nullptr;
    }
}

void umoead_run_close(umoead_run* run) { delete run; }

const char* umoead_run_config_json(umoead_run* run) {
    return run ? run->config_json.c_str() : "";
}

umoead_status umoead_run_execute(umoead_run* run) {
    if (!run) {
        set_error("null run handle");
        return UMOEAD_ERR_INVALID;
    }
    try {
        run->report = umoead::harness::run(run->config);
        run->report_json = umoead::harness::report_to_json_string(run->report);
        run->executed = true;
        return UMOEAD_OK;
    } catch (...) {
        return status_from_exception();
    }
}

const char* umoead_run_report_json(umoead_run* run) {
    if (!run || !run->executed) {
        set_error("run has not executed");
        return nullptr;
    }
    return run->report_json.c_str();
}

umoead_status umoead_run_export(umoead_run* run, const char* dir) {
    if (!run || !dir) {
        set_error("null argument");
        return UMOEAD_ERR_INVALID;
    }
    if (!run->executed) {
        set_error("run has not executed");
        return UMOEAD_ERR_INVALID;
    }
    try {
        umoead::harness::export_report(run->report, dir);
        return UMOEAD_OK;
    } catch (const std::exception& e) {
        set_error(e.what());
        return UMOEAD_ERR_IO;
    }
}

umoead_status umoead_metrics_score(const double* y, int n_points, int m, const double* ref,
                                   double soft_k, char* json_out, size_t json_cap) {
    if (!y || !ref || !json_out) {
        set_error("null argument");
        return UMOEAD_ERR_INVALID;
    }
    if (n_points < 0 || m < 1) {
        set_error("invalid dimensions");
        return UMOEAD_ERR_INVALID;
    }
    try {
        std::vector<std::vector<double>> points(static_cast<std::size_t>(n_points));
        for (int i = 0; i < n_points; ++i)
            points[static_cast<std::size_t>(i)].assign(y + static_cast<std::size_t>(i) * m,
                                                       y + static_cast<std::size_t>(i + 1) * m);
        const umoead::metrics::MetricsRecord record = umoead::metrics::report(
            points, std::span<const double>(ref, static_cast<std::size_t>(m)), soft_k);
        const std::string text = umoead::metrics::record_to_json_string(record);
        if (text.size() + 1 > json_cap) {
            set_error("output buffer too small");
            return UMOEAD_ERR_INVALID;
        }
        std::memcpy(json_out, text.c_str(), text.size() + 1);
        return UMOEAD_OK;
    } catch (...) {
        return status_from_exception();
    }
}

}  // extern "C"
