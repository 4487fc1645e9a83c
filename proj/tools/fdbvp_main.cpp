// Command-line harness for the fdbvp shared library. Talks to the core
// exclusively through the C API in fdbvp.h; flags are assembled into the
// JSON configs the library understands.

#include "fdbvp.h"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct MeshSpec {
    std::vector<double> a, b;
    std::vector<int> counts;
};

// "a1,b1,N1;a2,b2,N2;..." one axis per semicolon-separated group.
MeshSpec parseMeshSpec(const std::string& text) {
    MeshSpec spec;
    std::istringstream in(text);
    std::string group;
    while (std::getline(in, group, ';')) {
        if (group.empty()) continue;
        double a = 0.0, b = 0.0;
        int n = 0;
        if (std::sscanf(group.c_str(), "%lf,%lf,%d", &a, &b, &n) != 3)
            throw CLI::ValidationError("--mesh", "expected a,b,N groups separated by ';'");
        spec.a.push_back(a);
        spec.b.push_back(b);
        spec.counts.push_back(n);
    }
    if (spec.a.empty()) throw CLI::ValidationError("--mesh", "no axes given");
    return spec;
}

struct MeshHandle {
    fdbvp_mesh* mesh = nullptr;
    ~MeshHandle() { fdbvp_mesh_destroy(mesh); }
};

struct OwnedString {
    char* s = nullptr;
    ~OwnedString() { fdbvp_string_free(s); }
};

[[noreturn]] void fail(const char* where) {
    std::cerr << where << ": " << fdbvp_last_error() << "\n";
    std::exit(1);
}

void writeFile(const std::string& dir, const std::string& name, const std::string& content) {
    std::filesystem::create_directories(dir);
    const auto path = std::filesystem::path(dir) / name;
    std::ofstream out(path, std::ios::binary);
    out << content;
    if (!out) {
        std::cerr << "cannot write " << path << "\n";
        std::exit(1);
    }
    std::cerr << "wrote " << path.string() << "\n";
}

std::string readFile(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::cerr << "cannot read " << path << "\n";
        std::exit(1);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

MeshHandle makeMesh(const std::string& meshText) {
    const MeshSpec spec = parseMeshSpec(meshText);
    MeshHandle handle;
    if (fdbvp_mesh_create(spec.a.data(), spec.b.data(), spec.counts.data(),
                          static_cast<int>(spec.a.size()), &handle.mesh) != FDBVP_OK)
        fail("mesh");
    return handle;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite-difference elliptic BVP toolbox"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string outDir;
    std::uint64_t seed = 0;
    double tol = 1e-12;
    app.add_option("--out", outDir, "directory for output files (default: print only)");
    app.add_option("--seed", seed, "RNG seed for sampled verification");
    app.add_option("--tol", tol, "solver tolerance");

    // eigen
    auto* eigen = app.add_subcommand("eigen", "first Dirichlet eigenpair data");
    std::string eigenMesh;
    eigen->add_option("--mesh", eigenMesh, "mesh spec a,b,N;a,b,N;...")->required();

    // verify
    auto* verify = app.add_subcommand("verify", "randomized inequality verification");
    std::string verifyMesh, inequality;
    int samples = 200;
    double p = 4.0, alpha = 2.0, beta = 0.0;
    verify->add_option("--mesh", verifyMesh, "mesh spec")->required();
    verify->add_option("--inequality", inequality,
                       "poincare|hardy|sobolev_n|sobolev_2_orlicz|sobolev_2_lp|hardy_sobolev")
        ->required();
    verify->add_option("--samples", samples, "random samples");
    verify->add_option("--p", p, "exponent for sobolev_2_lp");
    verify->add_option("--alpha", alpha, "hardy_sobolev alpha");
    verify->add_option("--beta", beta, "hardy_sobolev beta");

    // bound1d
    auto* bound1d = app.add_subcommand("bound1d", "1d a priori bound report");
    std::string growth = "cubic_plus_one";
    double K = 1.0, L = 1.0;
    bound1d->add_option("--growth", growth, "cubic_plus_one | power_plus_one:<p>");
    bound1d->add_option("--K", K, "minorant anchor K > 0");
    bound1d->add_option("--L", L, "half-width of (-L, L)");

    // boundnd
    auto* boundnd = app.add_subcommand("boundnd", "n-d a priori bound report");
    int bndN = 2;
    double bndP = 1.5, bndLambda = 0.0, C1 = 1.0, C2 = 1.0, C3 = 1.0;
    std::string domainText = "0,1;0,1";
    boundnd->add_option("--n", bndN, "dimension (>= 2)");
    boundnd->add_option("--p", bndP, "growth exponent, 1 < p < n/(n-1)");
    boundnd->add_option("--lambda", bndLambda, "linear minorant slope (> lambda_1)")->required();
    boundnd->add_option("--C1", C1, "f >= lambda s - C1");
    boundnd->add_option("--C2", C2, "f <= C2 s^p + C3");
    boundnd->add_option("--C3", C3, "f <= C2 s^p + C3");
    boundnd->add_option("--domain", domainText, "box spec a,b;a,b;...");

    // solve
    auto* solve = app.add_subcommand("solve", "solve -Delta_h u = f(x,u), u = 0 on the boundary");
    std::string solveMesh, nonlinearity = "cubic_plus_one", initial = "zero", configFile;
    double tau = 0.0;
    solve->add_option("--mesh", solveMesh, "mesh spec")->required();
    solve->add_option("--nonlinearity", nonlinearity, "builtin id or registry JSON");
    solve->add_option("--config", configFile, "file with a registry JSON object");
    solve->add_option("--initial", initial, "zero | scaled_eigen");
    solve->add_option("--tau", tau, "scale for the eigenfunction start (0 = automatic)");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "mesh-refinement sweep with bound checks");
    std::string sweepConfigFile, sweepDomain = "0,1;0,1", sweepNl = "power15_plus_one",
                sweepMode = "subcritical", meshList = "8,16,32";
    sweep->add_option("--config", sweepConfigFile, "full sweep config JSON file");
    sweep->add_option("--domain", sweepDomain, "box spec a,b;a,b;...");
    sweep->add_option("--nonlinearity", sweepNl, "builtin id or registry JSON");
    sweep->add_option("--meshes", meshList, "comma-separated per-axis counts, e.g. 8,16,32");
    sweep->add_option("--mode", sweepMode, "subcritical | supercritical");

    CLI11_PARSE(app, argc, argv);

    if (eigen->parsed()) {
        MeshHandle mesh = makeMesh(eigenMesh);
        OwnedString json;
        if (fdbvp_eigen_report(mesh.mesh, &json.s) != FDBVP_OK) fail("eigen");
        std::cout << json.s << "\n";
        if (!outDir.empty()) writeFile(outDir, "eigen.json", json.s);
        return 0;
    }

    if (verify->parsed()) {
        MeshHandle mesh = makeMesh(verifyMesh);
        const nlohmann::json spec{{"name", inequality}, {"p", p}, {"alpha", alpha}, {"beta", beta}};
        OwnedString json;
        if (fdbvp_verify_inequality(mesh.mesh, spec.dump().c_str(), samples, seed, &json.s) !=
            FDBVP_OK)
            fail("verify");
        std::cout << json.s << "\n";
        if (!outDir.empty()) writeFile(outDir, "verify_" + inequality + ".json", json.s);
        return 0;
    }

    if (bound1d->parsed()) {
        OwnedString json;
        if (fdbvp_bound_1d(growth.c_str(), K, L, &json.s) != FDBVP_OK) fail("bound1d");
        std::cout << json.s << "\n";
        if (!outDir.empty()) writeFile(outDir, "bound1d.json", json.s);
        return 0;
    }

    if (boundnd->parsed()) {
        std::vector<double> a, b;
        std::istringstream in(domainText);
        std::string group;
        while (std::getline(in, group, ';')) {
            double lo = 0.0, hi = 0.0;
            if (std::sscanf(group.c_str(), "%lf,%lf", &lo, &hi) != 2) {
                std::cerr << "--domain expects a,b;a,b;...\n";
                return 1;
            }
            a.push_back(lo);
            b.push_back(hi);
        }
        if (static_cast<int>(a.size()) != bndN) {
            std::cerr << "--domain axis count must match --n\n";
            return 1;
        }
        OwnedString json;
        if (fdbvp_bound_nd(bndN, bndP, bndLambda, C1, C2, C3, a.data(), b.data(), &json.s) !=
            FDBVP_OK)
            fail("boundnd");
        std::cout << json.s << "\n";
        if (!outDir.empty()) writeFile(outDir, "boundnd.json", json.s);
        return 0;
    }

    if (solve->parsed()) {
        MeshHandle mesh = makeMesh(solveMesh);
        const std::string nlSpec = configFile.empty() ? nonlinearity : readFile(configFile);
        const nlohmann::json options{{"initial", initial}, {"tau", tau}, {"tol", tol}};
        fdbvp_solution* solution = nullptr;
        if (fdbvp_solve(mesh.mesh, nlSpec.c_str(), options.dump().c_str(), &solution) != FDBVP_OK)
            fail("solve");
        OwnedString report, csv;
        if (fdbvp_solution_report(solution, &report.s) != FDBVP_OK ||
            fdbvp_solution_values_csv(solution, &csv.s) != FDBVP_OK) {
            fdbvp_solution_destroy(solution);
            fail("solve report");
        }
        std::cout << report.s << "\n";
        if (!outDir.empty()) {
            writeFile(outDir, "solution.json", report.s);
            writeFile(outDir, "solution.csv", csv.s);
        }
        fdbvp_solution_destroy(solution);
        return 0;
    }

    if (sweep->parsed()) {
        std::string configJson;
        if (!sweepConfigFile.empty()) {
            configJson = readFile(sweepConfigFile);
        } else {
            std::vector<double> a, b;
            std::istringstream in(sweepDomain);
            std::string group;
            while (std::getline(in, group, ';')) {
                double lo = 0.0, hi = 0.0;
                if (std::sscanf(group.c_str(), "%lf,%lf", &lo, &hi) != 2) {
                    std::cerr << "--domain expects a,b;a,b;...\n";
                    return 1;
                }
                a.push_back(lo);
                b.push_back(hi);
            }
            std::vector<std::vector<int>> meshes;
            std::istringstream ms(meshList);
            while (std::getline(ms, group, ',')) {
                const int count = std::stoi(group);
                meshes.push_back(std::vector<int>(a.size(), count));
            }
            nlohmann::json nl;
            if (!sweepNl.empty() && sweepNl.front() == '{')
                nl = nlohmann::json::parse(sweepNl);
            else
                nl = sweepNl;
            const nlohmann::json config{{"domain", {{"a", a}, {"b", b}}},
                                        {"nonlinearity", nl},
                                        {"meshes", meshes},
                                        {"mode", sweepMode},
                                        {"seed", seed},
                                        {"tol", tol}};
            configJson = config.dump();
        }
        OwnedString records;
        if (fdbvp_sweep_run(configJson.c_str(), &records.s) != FDBVP_OK) fail("sweep");
        OwnedString csv, plot;
        if (fdbvp_records_to_csv(records.s, &csv.s) != FDBVP_OK ||
            fdbvp_records_to_plot_csv(records.s, &plot.s) != FDBVP_OK)
            fail("sweep output");
        std::cout << csv.s;
        if (!outDir.empty()) {
            writeFile(outDir, "sweep.csv", csv.s);
            writeFile(outDir, "sweep.json", records.s);
            writeFile(outDir, "sweep_plot.csv", plot.s);
        }
        return 0;
    }

    return 0;
}
