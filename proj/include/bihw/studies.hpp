#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bihw/cases.hpp"
#include "bihw/norms.hpp"
#include "bihw/solver.hpp"

namespace bihw {

/// One build -> solve -> measure pipeline on the unit box (0,1)^d x (0,T).
struct CellSpec {
    int p = 2;      ///< p_s = p_t
    int n_el_s = 8; ///< elements per spatial direction
    int n_el_t = 8;
    Stabilization mode = Stabilization::iga_penalty;
    int reg_s = -1; ///< -1: p - 1
    int reg_t = -1; ///< -1: p - 1
    std::optional<double> delta;
    bool crosscheck_dense = false;
};

struct CellResult {
    CellSpec spec;
    std::string case_name;
    double h_s = 0.0, h_t = 0.0;
    int n_s = 0, n_t = 0;
    long long n_dof = 0;
    SpaceTimeErrors errors;
    SpatialErrors final_errors;
    double relative_residual = 0.0;
    double imag_discard_norm = 0.0;
    double wall_time = 0.0;
    double flops_estimate = 0.0;
    int lu_factorizations = 0;
    bool dense_fallback = false;
    /// |x - x_dense|_inf / |x_dense|_inf when crosscheck_dense is set, else NaN
    double dense_difference = 0.0;
    /// empty on success; otherwise the numerical failure message
    std::string failure;
    bool ok() const { return failure.empty(); }
};

/// Numerical failures (solver, factorization, size) are caught and
/// recorded in `failure`; configuration errors propagate.
CellResult run_cell(const CellSpec& spec, const ManufacturedCase& c);

DiscretizationConfig make_config(const CellSpec& spec, const ManufacturedCase& c);

/// Run `count` independent tasks on up to `jobs` threads.
void parallel_for(int count, int jobs, const std::function<void(int)>& task);

// ---------------------------------------------------------------- convergence

struct ConvergenceRow {
    CellResult cell;
    /// log(e_prev / e) / log(h_prev / h) against the previous row of the same
    /// degree; NaN on the coarsest row.
    double rate_l2l2 = 0.0;
    double rate_h1mix = 0.0;
    double rate_x = 0.0;
};

struct ConvergenceTable {
    std::vector<ConvergenceRow> rows; ///< grouped by degree, coarse to fine
    std::vector<std::string> skipped; ///< levels with an empty clamped space
};

struct ConvergenceOptions {
    std::vector<int> degrees{2, 3};
    std::vector<int> n_elements{2, 4, 8, 16, 32}; ///< h = 1/n, must double
    Stabilization mode = Stabilization::iga_penalty;
    int reg_s = -1;
    int reg_t = -1;
    std::optional<double> delta;
    bool crosscheck_dense = false;
    int jobs = 1;
};

ConvergenceTable convergence_study(const ManufacturedCase& c, const ConvergenceOptions& opts);

/// Rates between the two finest levels of degree p (NaN if fewer than two).
struct FinestRates {
    double l2l2, h1mix, x;
};
FinestRates finest_rates(const ConvergenceTable& t, int p);

// ------------------------------------------------------------------ stability

enum class Stability { stable, unstable };
std::string to_string(Stability s);

/// `errors` ordered from the coarsest (h_max) to the finest (h_min) level.
/// Unstable if err_X(h_min) > 10 err_X(h_max), or any error exceeds 1e3 or
/// is not finite; otherwise stable.
Stability classify(const std::vector<SpaceTimeErrors>& errors);

constexpr double kGrowthThreshold = 10.0;
constexpr double kBlowupThreshold = 1e3;

/// One (mode, spatial regularity, temporal regularity) configuration.
struct StabilityRow {
    std::string group;   ///< none | iga-max | iga-reduced | fem-c0 | fem-reduced
    Stabilization mode = Stabilization::none;
    int p = 2;
    int reg_s = 1, reg_t = 1;
    Stability expected = Stability::stable;
    Stability observed = Stability::stable;
    std::vector<CellResult> cells; ///< coarse to fine; failed cells count as blow-up
    bool matches() const { return expected == observed; }
};

struct StabilityReport {
    std::vector<StabilityRow> rows;
    std::vector<std::string> skipped; ///< levels with an empty clamped space
};

struct StabilityOptions {
    std::vector<int> degrees{2};
    std::vector<int> n_elements{2, 4, 8, 16, 32};
    std::vector<Stabilization> modes{Stabilization::none, Stabilization::iga_penalty,
                                     Stabilization::fem_projection};
    int reg_s = -1;
    std::optional<double> delta;
    int jobs = 1;
};

/// Rows per degree: unstabilized for every temporal regularity 0..p-1,
/// penalty with p-1 and each reduced regularity, projection with C^0 and
/// each regularity 1..p-1. Expected classes follow the regularity rules.
StabilityReport stability_study(const ManufacturedCase& c, const StabilityOptions& opts);

// ------------------------------------------------------------------ CFL sweep

struct CflSweepRow {
    CellResult cell;
    double ratio = 0.0; ///< h_t / h_t_max
    Stability observed = Stability::stable;
};

struct CflSweep {
    CflReport cfl;          ///< at the finest h_t of the sweep
    SpaceTimeErrors reference; ///< errors at the finest h_t
    std::vector<CflSweepRow> rows; ///< fine to coarse in h_t
    /// Geometric mean of the largest stable and the smallest unstable h_t
    /// (walking up from the finest); NaN if no transition was found.
    double boundary = 0.0;
};

struct CflSweepOptions {
    int d = 1;
    int p = 2;
    int n_el_s = 8;
    Stabilization mode = Stabilization::none;
    /// h_t = h_t_max * 2^(k/4) for k in [k_min, k_max]
    int k_min = -4;
    int k_max = 8;
    int jobs = 1;
};

/// Each cell is classified against the finest one with the stability
/// rule, as the two-level sequence (finest, cell).
CflSweep cfl_sweep(const ManufacturedCase& c, const CflSweepOptions& opts);

// --------------------------------------------------------------------- timing

struct TimingRow {
    int p = 2;
    double h = 0.0;
    int n_s = 0, n_t = 0;
    long long n_dof = 0;
    double wall_time = 0.0;   ///< median over repeats, factorization + solve
    double growth = 0.0;      ///< wall_time / previous level's, NaN on the first
    double flops = 0.0;
    double flops_growth = 0.0;
    double relative_residual = 0.0;
    int lu_factorizations = 0;
};

struct TimingOptions {
    std::vector<int> degrees{2};
    std::vector<int> n_elements{8, 16, 32};
    Stabilization mode = Stabilization::iga_penalty;
    int repeats = 3;
};

/// Runs sequentially so that timings do not compete for cores; the repeats
/// cycle through the levels.
std::vector<TimingRow> timing_study(const ManufacturedCase& c, const TimingOptions& opts);

// ------------------------------------------------------------ fixed-N compare

/// Mesh pair with N_dof closest to a target and h_t / h_s in [0.8, 1.25]
/// (ties broken toward h_t = h_s).
struct MeshPair {
    int n_el_s = 0, n_el_t = 0;
    long long n_dof = 0;
};
MeshPair mesh_for_target(int d, int p, int reg_s, int reg_t, long long target);

struct CompareRow {
    std::string scheme; ///< "iga" (maximal regularity) or "fem" (C^1 space, C^0 time)
    CellResult cell;
};

struct CompareOptions {
    std::vector<int> degrees{2, 3, 4, 5};
    long long target_dofs = 8400;
    int jobs = 1;
};

std::vector<CompareRow> compare_study(const ManufacturedCase& c, const CompareOptions& opts);

// -------------------------------------------------------------------- output

inline constexpr const char* kCsvVersion = "# bihw-results v1";

void write_cell_csv(std::ostream& os, const std::string& study,
                    const std::vector<const CellResult*>& cells);
void write_convergence_csv(std::ostream& os, const ConvergenceTable& t);
void write_stability_csv(std::ostream& os, const StabilityReport& r);
void write_cfl_csv(std::ostream& os, const CflSweep& s);
void write_timing_csv(std::ostream& os, const std::vector<TimingRow>& rows);
void write_compare_csv(std::ostream& os, const std::vector<CompareRow>& rows);

/// Two-column "h error" files, one per norm and degree:
/// l2l2_p<p>.dat, h1mix_p<p>.dat, x_p<p>.dat.
std::vector<std::filesystem::path> write_convergence_dat(const std::filesystem::path& dir,
                                                         const ConvergenceTable& t);
/// err_X over h per stability row: stability_<group>_p<p>_r<reg_t>.dat
std::vector<std::filesystem::path> write_stability_dat(const std::filesystem::path& dir,
                                                       const StabilityReport& r);
/// wall_time over N_dof per degree: timing_p<p>.dat
std::vector<std::filesystem::path> write_timing_dat(const std::filesystem::path& dir,
                                                    const std::vector<TimingRow>& rows);

} // namespace bihw
