#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace bihw::cli {

enum ExitCode : int { ok = 0, numerical_failure = 1, config_error = 2 };

/// Settings of one study. Empty lists and unset optionals take the
/// study-dependent defaults listed by `bihw <study> --help`.
struct StudyConfig {
    std::string kind; ///< solve | convergence | stability | timing | cfl | compare
    std::string case_name;
    std::vector<int> degrees;
    std::vector<double> h;
    std::string mode; ///< default iga; none for cfl
    std::vector<std::string> modes;
    std::optional<double> delta;
    std::optional<int> reg_s;
    std::optional<int> reg_t;
    int jobs = 1;
    std::string out = "bihw-out";
    bool crosscheck_dense = false;
    bool finest = false;
    int repeats = 3;
    long long target_dofs = 8400;
    int k_min = -4;
    int k_max = 8;
};

/// Fill study-dependent defaults in place.
void apply_defaults(StudyConfig& cfg);

/// Effective configuration as a config-file section that reproduces the run.
std::string serialize(const StudyConfig& cfg);

/// Parse `args` (without the program name), run the study and write
/// results.csv, summary.txt, effective.cfg and *.dat files into the output
/// directory. Errors are printed to `err` with an "error:" prefix.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace bihw::cli
