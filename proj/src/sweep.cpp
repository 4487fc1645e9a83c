#include "fdbvp/sweep.hpp"

#include "fdbvp/bounds1d.hpp"
#include "fdbvp/boundsnd.hpp"
#include "fdbvp/norms.hpp"
#include "fdbvp/solver.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace fdbvp {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

SweepConfig SweepConfig::fromJson(const std::string& json) {
    const nlohmann::json j = nlohmann::json::parse(json);
    SweepConfig c;
    c.lower = j.at("domain").at("a").get<std::vector<double>>();
    c.upper = j.at("domain").at("b").get<std::vector<double>>();
    if (j.at("nonlinearity").is_string())
        c.nonlinearity = j.at("nonlinearity").get<std::string>();
    else
        c.nonlinearity = j.at("nonlinearity").dump();
    c.meshes = j.at("meshes").get<std::vector<std::vector<int>>>();
    c.supercritical = j.value("mode", "subcritical") == std::string("supercritical");
    c.seed = j.value("seed", static_cast<std::uint64_t>(0));
    c.tol = j.value("tol", 1e-12);
    return c;
}

std::string SweepConfig::toJson() const {
    nlohmann::json nl;
    if (!nonlinearity.empty() && nonlinearity.front() == '{')
        nl = nlohmann::json::parse(nonlinearity);
    else
        nl = nonlinearity;
    nlohmann::json j{{"domain", {{"a", lower}, {"b", upper}}},
                     {"nonlinearity", nl},
                     {"meshes", meshes},
                     {"mode", supercritical ? "supercritical" : "subcritical"},
                     {"seed", seed},
                     {"tol", tol}};
    return j.dump(2);
}

std::vector<SweepRecord> runSweep(const SweepConfig& config) {
    const BoxDomain domain(config.lower, config.upper);
    const int n = domain.dim();
    Nonlinearity nl = config.nonlinearity.empty() || config.nonlinearity.front() != '{'
                          ? builtinNonlinearity(config.nonlinearity)
                          : nonlinearityFromJson(config.nonlinearity);

    double mbar = std::numeric_limits<double>::infinity();
    if (!config.supercritical) {
        if (n == 1) {
            if (!nl.minorant)
                throw std::invalid_argument("runSweep: 1d subcritical mode needs a growth minorant");
            const double L = domain.edge(0) / 2.0;
            const double center = (domain.lower(0) + domain.upper(0)) / 2.0;
            // The 1d bound is framed on (-L, L); shift the coordinate accordingly.
            const auto fShifted = [&nl, center](double x, double s) {
                const double xs = x + center;
                return nl.f(std::span<const double>(&xs, 1), s);
            };
            mbar = aprioriBound1d(fShifted, *nl.minorant, L).Mbar;
        } else {
            if (!nl.metadata.present)
                throw std::invalid_argument("runSweep: subcritical mode needs growth metadata");
            if (!(nl.metadata.p < n / (n - 1.0)))
                throw std::invalid_argument("runSweep: subcritical mode needs p < n/(n-1)");
            nl.spotCheckMetadata(domain);
            mbar = aprioriBoundNd(n, nl.metadata.p, nl.metadata.lambda, nl.metadata.C1,
                                  nl.metadata.C2, nl.metadata.C3, domain)
                       .Mbar;
        }
    }

    std::vector<std::vector<int>> meshes = config.meshes;
    std::sort(meshes.begin(), meshes.end(), [&](const auto& lhs, const auto& rhs) {
        double hl = 0.0, hr = 0.0;
        for (int i = 0; i < n; ++i) {
            hl = std::max(hl, domain.edge(i) / lhs[i]);
            hr = std::max(hr, domain.edge(i) / rhs[i]);
        }
        return hl > hr;
    });

    std::vector<SweepRecord> records;
    records.reserve(meshes.size());
    for (const auto& counts : meshes) {
        const auto t0 = std::chrono::steady_clock::now();
        SweepRecord rec;
        rec.n = n;
        rec.N = counts;
        rec.Mbar = mbar;
        Mesh mesh(domain, counts);
        rec.h = mesh.spacings();

        std::vector<double> center(n);
        for (int i = 0; i < n; ++i)
            center[i] = (domain.lower(i) + domain.upper(i)) / 2.0;
        const bool startFromZero = nl.f(center, 0.0) > 0.0;
        SolveOptions options;
        options.tol = config.tol;
        const SolveResult result = solveNonlinear(
            mesh, nl, startFromZero ? InitialGuess::zero() : InitialGuess::scaledEigen(), options);

        rec.uInf = normLinf(result.u);
        rec.uD = normD(result.u);
        rec.residual = result.residualInf;
        rec.converged = result.converged;
        rec.passed = rec.uInf <= rec.Mbar;
        rec.wallMs = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                         .count();
        records.push_back(std::move(rec));
    }
    return records;
}

std::string recordsToCsv(const std::vector<SweepRecord>& records) {
    if (records.empty()) throw std::invalid_argument("recordsToCsv: no records");
    const int n = records.front().n;
    std::ostringstream out;
    out << "n";
    for (int i = 1; i <= n; ++i) out << ",N_" << i;
    for (int i = 1; i <= n; ++i) out << ",h_" << i;
    out << ",u_inf,u_D,residual,M_bar,passed,wall_ms\n";
    for (const auto& r : records) {
        out << r.n;
        for (int i = 0; i < n; ++i) out << "," << r.N[i];
        for (int i = 0; i < n; ++i) out << "," << fmt(r.h[i]);
        out << "," << fmt(r.uInf) << "," << fmt(r.uD) << "," << fmt(r.residual) << ","
            << fmt(r.Mbar) << "," << (r.passed ? "true" : "false") << "," << fmt(r.wallMs) << "\n";
    }
    return out.str();
}

std::vector<SweepRecord> recordsFromCsv(const std::string& csv) {
    std::istringstream in(csv);
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("recordsFromCsv: empty input");
    const std::size_t nCols = static_cast<std::size_t>(std::count(line.begin(), line.end(), ',')) + 1;
    // columns: 1 + n + n + 6
    if (nCols < 9 || (nCols - 7) % 2 != 0)
        throw std::invalid_argument("recordsFromCsv: unexpected header");
    const int n = static_cast<int>((nCols - 7) / 2);
    std::vector<SweepRecord> records;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string cell;
        auto next = [&]() {
            if (!std::getline(ls, cell, ',')) throw std::invalid_argument("recordsFromCsv: short row");
            return cell;
        };
        SweepRecord r;
        r.n = std::stoi(next());
        if (r.n != n) throw std::invalid_argument("recordsFromCsv: dimension mismatch");
        r.N.resize(n);
        r.h.resize(n);
        for (int i = 0; i < n; ++i) r.N[i] = std::stoi(next());
        for (int i = 0; i < n; ++i) r.h[i] = std::stod(next());
        r.uInf = std::stod(next());
        r.uD = std::stod(next());
        r.residual = std::stod(next());
        r.Mbar = std::stod(next());
        r.passed = next() == "true";
        r.wallMs = std::stod(next());
        records.push_back(std::move(r));
    }
    if (records.empty()) throw std::invalid_argument("recordsFromCsv: no data rows");
    return records;
}

std::string recordsToJson(const std::vector<SweepRecord>& records) {
    if (records.empty()) throw std::invalid_argument("recordsToJson: no records");
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : records) {
        nlohmann::json row{{"n", r.n},
                           {"N", r.N},
                           {"h", r.h},
                           {"u_inf", r.uInf},
                           {"u_D", r.uD},
                           {"residual", r.residual},
                           {"passed", r.passed},
                           {"wall_ms", r.wallMs},
                           {"converged", r.converged}};
        // JSON has no infinity literal; supercritical rows carry M_bar as text.
        if (std::isfinite(r.Mbar))
            row["M_bar"] = r.Mbar;
        else
            row["M_bar"] = "inf";
        arr.push_back(std::move(row));
    }
    return arr.dump(2);
}

std::string recordsToPlotCsv(const std::vector<SweepRecord>& records) {
    if (records.empty()) throw std::invalid_argument("recordsToPlotCsv: no records");
    std::ostringstream out;
    out << "h_max,u_inf\n";
    for (const auto& r : records) {
        const double hMax = *std::max_element(r.h.begin(), r.h.end());
        out << fmt(hMax) << "," << fmt(r.uInf) << "\n";
    }
    return out.str();
}

void writeReportFiles(const std::vector<SweepRecord>& records, const std::string& dir,
                      const std::string& base) {
    if (records.empty()) throw std::invalid_argument("writeReportFiles: no records");
    std::filesystem::create_directories(dir);
    const auto write = [&](const std::string& name, const std::string& content) {
        const auto path = std::filesystem::path(dir) / name;
        std::ofstream out(path, std::ios::binary);
        out << content;
        if (!out) throw std::runtime_error("writeReportFiles: cannot write " + path.string());
    };
    write(base + ".csv", recordsToCsv(records));
    write(base + ".json", recordsToJson(records));
    write(base + "_plot.csv", recordsToPlotCsv(records));
}

}  // namespace fdbvp
