#include "fdbvp.h"

#include "fdbvp/bounds1d.hpp"
#include "fdbvp/boundsnd.hpp"
#include "fdbvp/inequalities.hpp"
#include "fdbvp/norms.hpp"
#include "fdbvp/solver.hpp"
#include "fdbvp/spectral.hpp"
#include "fdbvp/sweep.hpp"

#include <nlohmann/json.hpp>

#include <cstdlib>
#include <cstring>
#include <limits>
#include <new>
#include <string>

struct fdbvp_mesh_s {
    fdbvp::Mesh mesh;
};

struct fdbvp_solution_s {
    fdbvp::SolveResult result;
    fdbvp::Nonlinearity nonlinearity;
};

namespace {

thread_local std::string g_lastError;

void setError(const char* what) { g_lastError = what ? what : "unknown error"; }

char* dupString(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template <typename Fn>
fdbvp_status guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const std::invalid_argument& e) {
        setError(e.what());
        return FDBVP_EINVAL;
    } catch (const std::bad_alloc&) {
        setError("out of memory");
        return FDBVP_ENOMEM;
    } catch (const std::exception& e) {
        setError(e.what());
        return FDBVP_EFAIL;
    }
}

fdbvp_status emitString(const std::string& s, char** out) {
    *out = dupString(s);
    if (!*out) {
        setError("out of memory");
        return FDBVP_ENOMEM;
    }
    return FDBVP_OK;
}

fdbvp::Nonlinearity parseNonlinearity(const char* spec) {
    std::string s(spec ? spec : "");
    if (!s.empty() && s.front() == '{') return fdbvp::nonlinearityFromJson(s);
    return fdbvp::builtinNonlinearity(s);
}

}  // namespace

extern "C" {

const char* fdbvp_version(void) { return "1.0.0"; }

const char* fdbvp_last_error(void) { return g_lastError.c_str(); }

void fdbvp_string_free(char* s) { std::free(s); }

fdbvp_status fdbvp_mesh_create(const double* a, const double* b, const int* counts, int n,
                               fdbvp_mesh** out) {
    return guarded([&]() -> fdbvp_status {
        if (!a || !b || !counts || !out || n < 1) {
            setError("mesh_create: null argument or n < 1");
            return FDBVP_EINVAL;
        }
        fdbvp::BoxDomain domain(std::vector<double>(a, a + n), std::vector<double>(b, b + n));
        *out = new fdbvp_mesh_s{fdbvp::Mesh(std::move(domain), std::vector<int>(counts, counts + n))};
        return FDBVP_OK;
    });
}

void fdbvp_mesh_destroy(fdbvp_mesh* mesh) { delete mesh; }

int fdbvp_mesh_dim(const fdbvp_mesh* mesh) { return mesh ? mesh->mesh.dim() : 0; }

fdbvp_status fdbvp_mesh_spacing(const fdbvp_mesh* mesh, int axis, double* out) {
    if (!mesh || !out || axis < 0 || axis >= mesh->mesh.dim()) {
        setError("mesh_spacing: bad argument");
        return FDBVP_EINVAL;
    }
    *out = mesh->mesh.spacing(axis);
    return FDBVP_OK;
}

size_t fdbvp_mesh_point_count(const fdbvp_mesh* mesh) {
    return mesh ? mesh->mesh.pointCount() : 0;
}

fdbvp_status fdbvp_eigen_report(const fdbvp_mesh* mesh, char** json_out) {
    return guarded([&]() -> fdbvp_status {
        if (!mesh || !json_out) {
            setError("eigen_report: null argument");
            return FDBVP_EINVAL;
        }
        const fdbvp::EigenPair pair = fdbvp::firstEigenpair(mesh->mesh);
        nlohmann::json j{{"lambda_1h", pair.lambda1h},
                         {"lambda_1", fdbvp::continuumLambda1(mesh->mesh.domain())},
                         {"t_scale", pair.tScale},
                         {"distance_bound_ratio", fdbvp::distanceBoundCheck(pair)}};
        return emitString(j.dump(2), json_out);
    });
}

fdbvp_status fdbvp_verify_inequality(const fdbvp_mesh* mesh, const char* spec_json, int samples,
                                     uint64_t seed, char** json_out) {
    return guarded([&]() -> fdbvp_status {
        if (!mesh || !spec_json || !json_out || samples < 0) {
            setError("verify_inequality: bad argument");
            return FDBVP_EINVAL;
        }
        const nlohmann::json j = nlohmann::json::parse(spec_json);
        const auto spec = fdbvp::InequalitySpec::parse(
            j.at("name").get<std::string>(), j.value("p", 4.0), j.value("alpha", 2.0),
            j.value("beta", 0.0));
        const auto report = fdbvp::checkInequality(spec, mesh->mesh, samples, seed);
        return emitString(report.toJson(), json_out);
    });
}

fdbvp_status fdbvp_bound_1d(const char* growth, double K, double L, char** json_out) {
    return guarded([&]() -> fdbvp_status {
        if (!growth || !json_out) {
            setError("bound_1d: null argument");
            return FDBVP_EINVAL;
        }
        std::string name(growth);
        fdbvp::Growth1D g = [&]() {
            if (name == "cubic_plus_one") return fdbvp::Growth1D::cubicPlusOne(K);
            if (name.rfind("power_plus_one:", 0) == 0)
                return fdbvp::Growth1D::powerPlusOne(std::stod(name.substr(15)), K);
            throw std::invalid_argument("bound_1d: unknown growth " + name);
        }();
        const auto report = fdbvp::aprioriBound1d(
            [&g](double, double s) { return g.g(s); }, g, L);
        return emitString(report.toJson(), json_out);
    });
}

fdbvp_status fdbvp_bound_nd(int n, double p, double lambda, double C1, double C2, double C3,
                            const double* a, const double* b, char** json_out) {
    return guarded([&]() -> fdbvp_status {
        if (!a || !b || !json_out || n < 2) {
            setError("bound_nd: bad argument");
            return FDBVP_EINVAL;
        }
        fdbvp::BoxDomain domain(std::vector<double>(a, a + n), std::vector<double>(b, b + n));
        const auto report = fdbvp::aprioriBoundNd(n, p, lambda, C1, C2, C3, domain);
        return emitString(report.toJson(), json_out);
    });
}

fdbvp_status fdbvp_solve(const fdbvp_mesh* mesh, const char* nonlinearity_json,
                         const char* options_json, fdbvp_solution** out) {
    return guarded([&]() -> fdbvp_status {
        if (!mesh || !nonlinearity_json || !out) {
            setError("solve: null argument");
            return FDBVP_EINVAL;
        }
        fdbvp::Nonlinearity nl = parseNonlinearity(nonlinearity_json);
        fdbvp::SolveOptions options;
        fdbvp::InitialGuess guess = fdbvp::InitialGuess::zero();
        if (options_json && *options_json) {
            const nlohmann::json j = nlohmann::json::parse(options_json);
            options.tol = j.value("tol", options.tol);
            options.maxNewton = j.value("max_newton", options.maxNewton);
            if (j.value("initial", "zero") == std::string("scaled_eigen"))
                guess = fdbvp::InitialGuess::scaledEigen(j.value("tau", 0.0));
        }
        auto result = fdbvp::solveNonlinear(mesh->mesh, nl, guess, options);
        *out = new fdbvp_solution_s{std::move(result), std::move(nl)};
        return FDBVP_OK;
    });
}

void fdbvp_solution_destroy(fdbvp_solution* solution) { delete solution; }

fdbvp_status fdbvp_solution_report(const fdbvp_solution* solution, char** json_out) {
    return guarded([&]() -> fdbvp_status {
        if (!solution || !json_out) {
            setError("solution_report: null argument");
            return FDBVP_EINVAL;
        }
        const auto checks = fdbvp::verifySolution(solution->result, solution->nonlinearity);
        nlohmann::json j{{"converged", solution->result.converged},
                         {"residual_inf", solution->result.residualInf},
                         {"newton_iters", solution->result.newtonIters},
                         {"min_value", solution->result.minValue},
                         {"u_inf", fdbvp::normLinf(solution->result.u)},
                         {"u_D", fdbvp::normD(solution->result.u)},
                         {"checks", nlohmann::json::parse(checks.toJson())}};
        return emitString(j.dump(2), json_out);
    });
}

fdbvp_status fdbvp_solution_values_csv(const fdbvp_solution* solution, char** csv_out) {
    return guarded([&]() -> fdbvp_status {
        if (!solution || !csv_out) {
            setError("solution_values_csv: null argument");
            return FDBVP_EINVAL;
        }
        return emitString(solution->result.u.toCsv(), csv_out);
    });
}

fdbvp_status fdbvp_solution_norm_inf(const fdbvp_solution* solution, double* out) {
    if (!solution || !out) {
        setError("solution_norm_inf: null argument");
        return FDBVP_EINVAL;
    }
    *out = fdbvp::normLinf(solution->result.u);
    return FDBVP_OK;
}

fdbvp_status fdbvp_sweep_run(const char* config_json, char** records_json_out) {
    return guarded([&]() -> fdbvp_status {
        if (!config_json || !records_json_out) {
            setError("sweep_run: null argument");
            return FDBVP_EINVAL;
        }
        const auto records = fdbvp::runSweep(fdbvp::SweepConfig::fromJson(config_json));
        return emitString(fdbvp::recordsToJson(records), records_json_out);
    });
}

namespace {

std::vector<fdbvp::SweepRecord> recordsFromJson(const char* records_json) {
    const nlohmann::json arr = nlohmann::json::parse(records_json);
    std::vector<fdbvp::SweepRecord> records;
    for (const auto& j : arr) {
        fdbvp::SweepRecord r;
        r.n = j.at("n").get<int>();
        r.N = j.at("N").get<std::vector<int>>();
        r.h = j.at("h").get<std::vector<double>>();
        r.uInf = j.at("u_inf").get<double>();
        r.uD = j.at("u_D").get<double>();
        r.residual = j.at("residual").get<double>();
        if (j.at("M_bar").is_string())
            r.Mbar = std::numeric_limits<double>::infinity();
        else
            r.Mbar = j.at("M_bar").get<double>();
        r.passed = j.at("passed").get<bool>();
        r.wallMs = j.at("wall_ms").get<double>();
        r.converged = j.value("converged", true);
        records.push_back(std::move(r));
    }
    return records;
}

}  // namespace

fdbvp_status fdbvp_records_to_csv(const char* records_json, char** csv_out) {
    return guarded([&]() -> fdbvp_status {
        if (!records_json || !csv_out) {
            setError("records_to_csv: null argument");
            return FDBVP_EINVAL;
        }
        return emitString(fdbvp::recordsToCsv(recordsFromJson(records_json)), csv_out);
    });
}

fdbvp_status fdbvp_records_to_plot_csv(const char* records_json, char** csv_out) {
    return guarded([&]() -> fdbvp_status {
        if (!records_json || !csv_out) {
            setError("records_to_plot_csv: null argument");
            return FDBVP_EINVAL;
        }
        return emitString(fdbvp::recordsToPlotCsv(recordsFromJson(records_json)), csv_out);
    });
}

}  // extern "C"
