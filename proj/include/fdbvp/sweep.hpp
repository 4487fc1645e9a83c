#pragma once

#include "fdbvp/grid.hpp"

#include <string>
#include <vector>

namespace fdbvp {

/// One mesh row of a refinement sweep. In subcritical mode `passed` states
/// u_inf <= Mbar with the mesh-independent bound computed once up front; in
/// supercritical mode Mbar is +inf and no bound is claimed.
struct SweepRecord {
    int n = 0;
    std::vector<int> N;
    std::vector<double> h;
    double uInf = 0.0;
    double uD = 0.0;
    double residual = 0.0;
    double Mbar = 0.0;
    bool passed = false;
    double wallMs = 0.0;
    bool converged = false;
};

struct SweepConfig {
    std::vector<double> lower, upper;           // box corners
    std::string nonlinearity;                   // registry JSON or builtin id
    std::vector<std::vector<int>> meshes;       // counts per row
    bool supercritical = false;
    std::uint64_t seed = 0;
    double tol = 1e-12;

    static SweepConfig fromJson(const std::string& json);
    std::string toJson() const;
};

/// Runs the solver over every mesh of the config. Subcritical runs compute
/// the a priori bound once (1d via the growth minorant, n >= 2 via the
/// metadata pipeline) and check every row against it; solver failures are
/// recorded per row and the sweep continues. Rows are ordered coarse to
/// fine (descending max h).
std::vector<SweepRecord> runSweep(const SweepConfig& config);

/// CSV with the exact columns
///   n, N_1..N_n, h_1..h_n, u_inf, u_D, residual, M_bar, passed, wall_ms
/// and %.17g number formatting, so rows parse back bit-identically.
std::string recordsToCsv(const std::vector<SweepRecord>& records);
std::vector<SweepRecord> recordsFromCsv(const std::string& csv);
/// JSON array mirroring the CSV fields (plus the per-row convergence flag).
std::string recordsToJson(const std::vector<SweepRecord>& records);
/// Plot-ready companion: x = max h_i, y = u_inf.
std::string recordsToPlotCsv(const std::vector<SweepRecord>& records);

/// Writes <base>.csv, <base>.json and <base>_plot.csv under dir.
/// Throws on empty records or I/O failure.
void writeReportFiles(const std::vector<SweepRecord>& records, const std::string& dir,
                      const std::string& base);

}  // namespace fdbvp
