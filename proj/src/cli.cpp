#include "bihw/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "bihw/error.hpp"
#include "bihw/studies.hpp"

namespace bihw::cli {

namespace fs = std::filesystem;

namespace {

Stabilization parse_mode(const std::string& s)
{
    if (s == "none")
        return Stabilization::none;
    if (s == "iga")
        return Stabilization::iga_penalty;
    if (s == "fem")
        return Stabilization::fem_projection;
    throw ParameterError("unknown stabilization mode '" + s + "' (expected none, iga or fem)");
}

std::vector<int> elements_from_h(const std::vector<double>& h)
{
    std::vector<int> n;
    for (double v : h) {
        if (!(v > 0.0) || v > 1.0)
            throw ParameterError("mesh size h must lie in (0, 1]");
        const long k = std::lround(1.0 / v);
        if (std::abs(k * v - 1.0) > 1e-9)
            throw ParameterError("mesh size h must be 1/n for an integer n");
        n.push_back(static_cast<int>(k));
    }
    return n;
}

std::string g17(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

int case_dim(const std::string& name)
{
    return name == "line1d" ? 1 : 2;
}

std::vector<double> halving(int n_levels_from_half)
{
    std::vector<double> h;
    double v = 0.5;
    for (int i = 0; i < n_levels_from_half; ++i, v *= 0.5)
        h.push_back(v);
    return h;
}

void register_options(CLI::App* sub, StudyConfig& c)
{
    sub->add_option("--case", c.case_name,
                    "manufactured case: square2d (default; line1d for cfl and compare) or line1d")
        ->check(CLI::IsMember({"line1d", "square2d"}));
    sub->add_option("--p", c.degrees,
                    "degrees p = p_s = p_t, comma separated (default: solve 2, convergence 2,3, "
                    "stability 2, timing 2, cfl 2, compare 2,3,4,5)")
        ->delimiter(',');
    sub->add_option("--h", c.h,
                    "mesh sizes h = h_s = h_t (1/n), comma separated (default: solve 1/8; "
                    "convergence and stability 1/2..1/32 in 2D, 1/2..1/64 in 1D; timing "
                    "1/8,1/16,1/32; cfl: the fixed h_s, 1/8)")
        ->delimiter(',');
    sub->add_option("--mode", c.mode,
                    "stabilization: none, iga (penalty) or fem (projection) (default iga; none "
                    "for cfl)")
        ->check(CLI::IsMember({"none", "iga", "fem"}));
    sub->add_option("--delta", c.delta, "penalty constant (default 10^-p)");
    sub->add_option("--regularity-space", c.reg_s, "spatial regularity (default p-1)");
    sub->add_option("--regularity-time", c.reg_t, "temporal regularity (default p-1)");
    sub->add_option("--jobs", c.jobs, "worker threads for independent cells")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--out", c.out, "output directory")->capture_default_str();
    sub->add_flag("--crosscheck-dense", c.crosscheck_dense,
                  "also solve with dense LU and report the difference");
}

// Output helpers ---------------------------------------------------------

struct Artifacts {
    fs::path dir;
    std::vector<fs::path> written;

    std::ofstream open(const std::string& name)
    {
        std::ofstream os(dir / name);
        if (!os)
            throw ParameterError("cannot write " + (dir / name).string());
        written.push_back(dir / name);
        return os;
    }
};

std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

bool any_failed(const std::vector<const CellResult*>& cells, std::ostream& err)
{
    bool failed = false;
    for (const CellResult* c : cells)
        if (!c->ok()) {
            err << "error: p=" << c->spec.p << " n_el=" << c->spec.n_el_s << ": " << c->failure
                << '\n';
            failed = true;
        }
    return failed;
}

void write_cell_summary(std::ostream& os, const CellResult& r, const std::string& prefix = "")
{
    os << prefix << "n_dof = " << r.n_dof << '\n'
       << prefix << "err_l2l2 = " << g17(r.errors.l2l2) << '\n'
       << prefix << "err_h1mix = " << g17(r.errors.h1mix) << '\n'
       << prefix << "err_x = " << g17(r.errors.x) << '\n'
       << prefix << "final_l2 = " << g17(r.final_errors.l2) << '\n'
       << prefix << "final_h1 = " << g17(r.final_errors.h1) << '\n'
       << prefix << "final_h2 = " << g17(r.final_errors.h2) << '\n'
       << prefix << "relative_residual = " << g17(r.relative_residual) << '\n';
}

// Studies ------------------------------------------------------------------

int run_solve(const StudyConfig& c, const ManufacturedCase& mc, Artifacts& art, std::ostream& out,
              std::ostream& err)
{
    const std::vector<int> n = elements_from_h(c.h);
    std::vector<CellSpec> specs;
    for (int p : c.degrees)
        for (int k : n) {
            CellSpec s;
            s.p = p;
            s.n_el_s = s.n_el_t = k;
            s.mode = parse_mode(c.mode);
            s.reg_s = c.reg_s.value_or(-1);
            s.reg_t = c.reg_t.value_or(-1);
            s.delta = c.delta;
            s.crosscheck_dense = c.crosscheck_dense;
            specs.push_back(s);
        }
    std::vector<CellResult> cells(specs.size());
    parallel_for(static_cast<int>(specs.size()), c.jobs,
                 [&](int i) { cells[i] = run_cell(specs[i], mc); });

    std::vector<const CellResult*> ptrs;
    for (const auto& cell : cells)
        ptrs.push_back(&cell);
    auto csv = art.open("results.csv");
    write_cell_csv(csv, "solve", ptrs);

    auto sum = art.open("summary.txt");
    sum << "study = solve\ncase = " << mc.name << '\n';
    for (const auto& cell : cells) {
        const std::string prefix =
            "p" + std::to_string(cell.spec.p) + ".n" + std::to_string(cell.spec.n_el_s) + ".";
        write_cell_summary(sum, cell, prefix);
        sum << prefix << "imag_discard_norm = " << g17(cell.imag_discard_norm) << '\n'
            << prefix << "flops_estimate = " << g17(cell.flops_estimate) << '\n'
            << prefix << "lu_factorizations = " << cell.lu_factorizations << '\n'
            << prefix << "dense_fallback = " << (cell.dense_fallback ? "true" : "false") << '\n';
        if (cell.spec.crosscheck_dense)
            sum << prefix << "dense_difference = " << g17(cell.dense_difference) << '\n';
        sum << prefix << "wall_time = " << g17(cell.wall_time) << '\n';
        out << "p=" << cell.spec.p << " h=1/" << cell.spec.n_el_s << " N_dof=" << cell.n_dof
            << " residual=" << fmt(cell.relative_residual) << " err_X=" << fmt(cell.errors.x)
            << '\n';
    }
    return any_failed(ptrs, err) ? numerical_failure : ok;
}

int run_convergence(const StudyConfig& c, const ManufacturedCase& mc, Artifacts& art,
                    std::ostream& out, std::ostream& err)
{
    ConvergenceOptions o;
    o.degrees = c.degrees;
    o.n_elements = elements_from_h(c.h);
    o.mode = parse_mode(c.mode);
    o.reg_s = c.reg_s.value_or(-1);
    o.reg_t = c.reg_t.value_or(-1);
    o.delta = c.delta;
    o.crosscheck_dense = c.crosscheck_dense;
    o.jobs = c.jobs;
    const ConvergenceTable t = convergence_study(mc, o);

    auto csv = art.open("results.csv");
    write_convergence_csv(csv, t);
    for (auto& f : write_convergence_dat(art.dir, t))
        art.written.push_back(f);

    auto sum = art.open("summary.txt");
    sum << "study = convergence\ncase = " << mc.name << "\nmode = " << c.mode << '\n';
    for (int p : c.degrees) {
        const FinestRates r = finest_rates(t, p);
        sum << "p" << p << ".rate_l2l2 = " << g17(r.l2l2) << '\n'
            << "p" << p << ".rate_h1mix = " << g17(r.h1mix) << '\n'
            << "p" << p << ".rate_x = " << g17(r.x) << '\n';
    }
    for (const auto& note : t.skipped)
        sum << "skipped = " << note << '\n';
    std::vector<const CellResult*> ptrs;
    for (const auto& row : t.rows) {
        ptrs.push_back(&row.cell);
        out << "p=" << row.cell.spec.p << " h=1/" << row.cell.spec.n_el_s
            << " N_dof=" << row.cell.n_dof << " L2L2=" << fmt(row.cell.errors.l2l2) << " ("
            << fmt(row.rate_l2l2) << ") H1mix=" << fmt(row.cell.errors.h1mix) << " ("
            << fmt(row.rate_h1mix) << ") X=" << fmt(row.cell.errors.x) << " ("
            << fmt(row.rate_x) << ")\n";
    }
    return any_failed(ptrs, err) ? numerical_failure : ok;
}

int run_stability(const StudyConfig& c, const ManufacturedCase& mc, Artifacts& art,
                  std::ostream& out)
{
    StabilityOptions o;
    o.degrees = c.degrees;
    o.n_elements = elements_from_h(c.h);
    o.modes.clear();
    for (const auto& m : c.modes)
        o.modes.push_back(parse_mode(m));
    o.reg_s = c.reg_s.value_or(-1);
    o.delta = c.delta;
    o.jobs = c.jobs;
    const StabilityReport r = stability_study(mc, o);

    auto csv = art.open("results.csv");
    write_stability_csv(csv, r);
    for (auto& f : write_stability_dat(art.dir, r))
        art.written.push_back(f);

    auto sum = art.open("summary.txt");
    sum << "study = stability\ncase = " << mc.name << '\n';
    bool all = true;
    for (const auto& row : r.rows) {
        const std::string key = row.group + ".p" + std::to_string(row.p) + ".s" +
                                std::to_string(row.reg_s) + ".t" + std::to_string(row.reg_t);
        sum << key << " = " << to_string(row.observed) << " (expected "
            << to_string(row.expected) << ")\n";
        out << row.group << " p=" << row.p << " C^" << row.reg_s << " space, C^" << row.reg_t
            << " time: " << to_string(row.observed) << (row.matches() ? "" : "  [differs]")
            << '\n';
        all = all && row.matches();
    }
    for (const auto& s : r.skipped)
        sum << "skipped = " << s << '\n';
    sum << "all_rows_match = " << (all ? "true" : "false") << '\n';
    return ok;
}

int run_timing(const StudyConfig& c, const ManufacturedCase& mc, Artifacts& art, std::ostream& out)
{
    TimingOptions o;
    o.degrees = c.degrees;
    o.n_elements = elements_from_h(c.h);
    o.mode = parse_mode(c.mode);
    o.repeats = c.repeats;
    const std::vector<TimingRow> rows = timing_study(mc, o);

    auto csv = art.open("results.csv");
    write_timing_csv(csv, rows);
    for (auto& f : write_timing_dat(art.dir, rows))
        art.written.push_back(f);

    auto sum = art.open("summary.txt");
    sum << "study = timing\ncase = " << mc.name << "\nrepeats = " << c.repeats << '\n';
    for (const auto& r : rows) {
        const std::string key = "p" + std::to_string(r.p) + ".n" + std::to_string(r.n_t) + ".";
        sum << key << "n_dof = " << r.n_dof << '\n'
            << key << "wall_time = " << g17(r.wall_time) << '\n'
            << key << "growth = " << g17(r.growth) << '\n'
            << key << "flops_growth = " << g17(r.flops_growth) << '\n';
        out << "p=" << r.p << " h=" << fmt(r.h) << " N_dof=" << r.n_dof
            << " time=" << fmt(r.wall_time) << "s growth=" << fmt(r.growth)
            << " model growth=" << fmt(r.flops_growth) << '\n';
    }
    return ok;
}

int run_cfl(const StudyConfig& c, const ManufacturedCase& mc, Artifacts& art, std::ostream& out)
{
    if (c.degrees.size() != 1 || c.h.size() != 1)
        throw ParameterError("cfl: give exactly one degree and one spatial mesh size");
    CflSweepOptions o;
    o.d = mc.d;
    o.p = c.degrees.front();
    o.n_el_s = elements_from_h(c.h).front();
    o.mode = parse_mode(c.mode);
    o.k_min = c.k_min;
    o.k_max = c.k_max;
    o.jobs = c.jobs;
    const CflSweep s = cfl_sweep(mc, o);

    auto csv = art.open("results.csv");
    write_cfl_csv(csv, s);
    auto sum = art.open("summary.txt");
    sum << "study = cfl\ncase = " << mc.name << "\nlambda_max = " << g17(s.cfl.lambda_max)
        << "\nrho = " << s.cfl.rho.num << '/' << s.cfl.rho.den
        << "\nh_t_max = " << g17(s.cfl.h_t_max) << "\nboundary = " << g17(s.boundary)
        << "\nboundary_ratio = " << g17(s.boundary / s.cfl.h_t_max) << '\n';
    for (const auto& row : s.rows)
        out << "h_t=" << fmt(row.cell.h_t) << " h_t/h_t_max=" << fmt(row.ratio)
            << " err_X=" << fmt(row.cell.errors.x) << ' ' << to_string(row.observed) << '\n';
    out << "h_t_max=" << fmt(s.cfl.h_t_max) << " empirical boundary=" << fmt(s.boundary) << '\n';
    return ok;
}

int run_compare(const StudyConfig& c, const ManufacturedCase& mc, Artifacts& art,
                std::ostream& out, std::ostream& err)
{
    CompareOptions o;
    o.degrees = c.degrees;
    o.target_dofs = c.target_dofs;
    o.jobs = c.jobs;
    const std::vector<CompareRow> rows = compare_study(mc, o);

    auto csv = art.open("results.csv");
    write_compare_csv(csv, rows);
    auto sum = art.open("summary.txt");
    sum << "study = compare\ncase = " << mc.name << "\ntarget_dofs = " << c.target_dofs << '\n';
    std::vector<const CellResult*> ptrs;
    for (const auto& r : rows) {
        ptrs.push_back(&r.cell);
        write_cell_summary(sum, r.cell, r.scheme + ".p" + std::to_string(r.cell.spec.p) + ".");
        out << r.scheme << " p=" << r.cell.spec.p << " h_s=1/" << r.cell.spec.n_el_s
            << " h_t=1/" << r.cell.spec.n_el_t << " N_dof=" << r.cell.n_dof
            << " final L2=" << fmt(r.cell.final_errors.l2) << " H1=" << fmt(r.cell.final_errors.h1)
            << " H2=" << fmt(r.cell.final_errors.h2) << '\n';
    }
    return any_failed(ptrs, err) ? numerical_failure : ok;
}

} // namespace

void apply_defaults(StudyConfig& c)
{
    const bool one_d_default = c.kind == "cfl" || c.kind == "compare";
    if (c.case_name.empty())
        c.case_name = one_d_default ? "line1d" : "square2d";
    const int d = case_dim(c.case_name);
    if (c.degrees.empty()) {
        if (c.kind == "convergence")
            c.degrees = {2, 3};
        else if (c.kind == "compare")
            c.degrees = {2, 3, 4, 5};
        else
            c.degrees = {2};
    }
    if (c.h.empty()) {
        if (c.kind == "convergence" || c.kind == "stability")
            c.h = halving((d == 2 ? 5 : 6) + (c.finest ? 1 : 0));
        else if (c.kind == "timing")
            c.h = {0.125, 0.0625, 0.03125};
        else
            c.h = {0.125};
    }
    if (c.mode.empty())
        c.mode = c.kind == "cfl" ? "none" : "iga";
    if (c.modes.empty())
        c.modes = {"none", "iga", "fem"};
}

std::string serialize(const StudyConfig& c)
{
    std::ostringstream os;
    auto join = [&os](const auto& v, auto&& f) {
        for (std::size_t i = 0; i < v.size(); ++i)
            os << (i ? "," : "") << f(v[i]);
    };
    const auto id = [](const auto& x) { return x; };
    os << '[' << c.kind << "]\n";
    os << "case=" << c.case_name << '\n';
    os << "p=";
    join(c.degrees, id);
    os << "\nh=";
    join(c.h, g17);
    os << "\nmode=" << c.mode << '\n';
    if (c.kind == "stability") {
        os << "modes=";
        join(c.modes, id);
        os << '\n';
    }
    if (c.delta)
        os << "delta=" << g17(*c.delta) << '\n';
    if (c.reg_s)
        os << "regularity-space=" << *c.reg_s << '\n';
    if (c.reg_t)
        os << "regularity-time=" << *c.reg_t << '\n';
    os << "jobs=" << c.jobs << '\n';
    os << "crosscheck-dense=" << (c.crosscheck_dense ? "true" : "false") << '\n';
    if (c.kind == "timing")
        os << "repeats=" << c.repeats << '\n';
    if (c.kind == "compare")
        os << "target-dofs=" << c.target_dofs << '\n';
    if (c.kind == "cfl")
        os << "k-min=" << c.k_min << "\nk-max=" << c.k_max << '\n';
    return os.str();
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Space-time isogeometric solver for the clamped biharmonic wave equation "
                 "u_tt + Delta^2 u = f.\nConfig files hold one [study] section of key=value "
                 "lines; keys are the long option names."};
    // "-h" would clash with the mesh-size option --h
    app.set_help_flag("--help", "print this help and exit");
    app.set_config("--config", "", "read options from a config file", false);
    app.allow_config_extras(CLI::config_extras_mode::error);
    app.require_subcommand(1, 1);
    app.fallthrough();

    const std::vector<std::pair<std::string, std::string>> kinds = {
        {"solve", "solve single configurations and report residuals and errors"},
        {"convergence", "error norms and observed rates over a uniform h-halving sequence"},
        {"stability", "classify stabilization / regularity combinations over an h-sweep"},
        {"timing", "wall time of the fast solver over refinements (median of repeats)"},
        {"cfl", "sweep h_t at fixed h_s and locate the empirical stability boundary"},
        {"compare", "final-time errors of penalty and projection schemes at fixed N_dof"},
    };
    std::map<std::string, std::unique_ptr<StudyConfig>> configs;
    std::map<std::string, CLI::App*> subs;
    for (const auto& [name, desc] : kinds) {
        auto cfg = std::make_unique<StudyConfig>();
        cfg->kind = name;
        CLI::App* sub = app.add_subcommand(name, desc);
        sub->set_help_flag("--help", "print this help and exit");
        register_options(sub, *cfg);
        if (name == "convergence" || name == "stability")
            sub->add_flag("--finest", cfg->finest,
                          "extend the default sweep by one level (1/64 in 2D, 1/128 in 1D)");
        if (name == "stability")
            sub->add_option("--modes", cfg->modes, "stabilization modes (default none,iga,fem)")
                ->delimiter(',')
                ->check(CLI::IsMember({"none", "iga", "fem"}));
        if (name == "timing")
            sub->add_option("--repeats", cfg->repeats, "timed runs per level")
                ->check(CLI::PositiveNumber)
                ->capture_default_str();
        if (name == "compare")
            sub->add_option("--target-dofs", cfg->target_dofs, "target N_dof per degree")
                ->check(CLI::PositiveNumber)
                ->capture_default_str();
        if (name == "cfl") {
            sub->add_option("--k-min", cfg->k_min, "finest step: h_t = h_t_max 2^(k/4)")
                ->capture_default_str();
            sub->add_option("--k-max", cfg->k_max, "coarsest step")->capture_default_str();
        }
        subs[name] = sub;
        configs[name] = std::move(cfg);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return config_error;
    }

    std::string kind;
    for (const auto& [name, sub] : subs)
        if (sub->parsed())
            kind = name;
    StudyConfig& c = *configs[kind];

    try {
        apply_defaults(c);
        const ManufacturedCase mc = manufactured_case(c.case_name);
        Artifacts art{fs::path(c.out), {}};
        fs::create_directories(art.dir);
        {
            auto eff = art.open("effective.cfg");
            eff << serialize(c);
        }
        int code = ok;
        if (kind == "solve")
            code = run_solve(c, mc, art, out, err);
        else if (kind == "convergence")
            code = run_convergence(c, mc, art, out, err);
        else if (kind == "stability")
            code = run_stability(c, mc, art, out);
        else if (kind == "timing")
            code = run_timing(c, mc, art, out);
        else if (kind == "cfl")
            code = run_cfl(c, mc, art, out);
        else
            code = run_compare(c, mc, art, out, err);
        out << "wrote " << art.written.size() << " files to " << art.dir.string() << '\n';
        return code;
    } catch (const ParameterError& e) {
        err << "error: " << e.what() << '\n';
        return config_error;
    } catch (const UnsupportedDegreeError& e) {
        err << "error: " << e.what() << '\n';
        return config_error;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return config_error;
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return config_error;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return numerical_failure;
    }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    std::vector<const char*> argv{"bihw"};
    for (const auto& a : args)
        argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

} // namespace bihw::cli
