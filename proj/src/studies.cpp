#include "bihw/studies.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <limits>
#include <mutex>
#include <ostream>
#include <thread>

#include "bihw/error.hpp"

namespace bihw {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string num(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10e", v);
    return buf;
}

// Clamped or constrained dimension of a uniform open spline space on
// n_el elements: n_el (p - reg) + reg + 1 basis functions minus `removed`.
int space_dim(int n_el, int p, int reg, int removed)
{
    return n_el * (p - reg) + reg + 1 - removed;
}

int resolve(int reg, int p)
{
    return reg < 0 ? p - 1 : reg;
}

std::string empty_space_note(int p, int n)
{
    return "p=" + std::to_string(p) + " h=1/" + std::to_string(n) + ": empty clamped space";
}

SpaceTimeErrors blown_up()
{
    const double inf = std::numeric_limits<double>::infinity();
    return {inf, inf, inf, inf, inf, inf};
}

double rate(double e_prev, double e, double h_prev, double h)
{
    if (!(e_prev > 0.0) || !(e > 0.0))
        return kNaN;
    return std::log(e_prev / e) / std::log(h_prev / h);
}

void write_cell_header(std::ostream& os)
{
    os << "case,p,mode,reg_s,reg_t,h_s,h_t,n_s,n_t,n_dof,err_l2l2,err_h1mix,err_x,"
          "final_l2,final_h1,final_h2,relative_residual,imag_discard_norm,dense_difference,"
          "lu_factorizations,flops_estimate,status,wall_time";
}

void write_cell_fields(std::ostream& os, const CellResult& r)
{
    const CellSpec& s = r.spec;
    os << r.case_name << ',' << s.p << ',' << to_string(s.mode) << ',' << resolve(s.reg_s, s.p)
       << ',' << resolve(s.reg_t, s.p) << ',' << num(r.h_s) << ',' << num(r.h_t) << ',' << r.n_s
       << ',' << r.n_t << ',' << r.n_dof << ',' << num(r.errors.l2l2) << ','
       << num(r.errors.h1mix) << ',' << num(r.errors.x) << ',' << num(r.final_errors.l2) << ','
       << num(r.final_errors.h1) << ',' << num(r.final_errors.h2) << ','
       << num(r.relative_residual) << ',' << num(r.imag_discard_norm) << ','
       << num(r.dense_difference) << ',' << r.lu_factorizations << ','
       << num(r.flops_estimate) << ',' << (r.ok() ? (r.dense_fallback ? "dense" : "ok") : "failed")
       << ',' << num(r.wall_time);
}

std::filesystem::path write_columns(const std::filesystem::path& file,
                                    const std::string& header,
                                    const std::vector<std::pair<double, double>>& pts)
{
    std::ofstream os(file);
    if (!os)
        throw ParameterError("cannot write " + file.string());
    os << "# " << header << '\n';
    for (const auto& [a, b] : pts)
        os << num(a) << ' ' << num(b) << '\n';
    return file;
}

} // namespace

DiscretizationConfig make_config(const CellSpec& spec, const ManufacturedCase& c)
{
    DiscretizationConfig cfg;
    cfg.d = c.d;
    cfg.p_s = spec.p;
    cfg.p_t = spec.p;
    cfg.reg_s = spec.reg_s;
    cfg.reg_t = spec.reg_t;
    cfg.n_el_s = spec.n_el_s;
    cfg.n_el_t = spec.n_el_t;
    cfg.T = c.T;
    cfg.mode = spec.mode;
    cfg.delta = spec.delta;
    cfg.forcing = c.forcing;
    return cfg;
}

CellResult run_cell(const CellSpec& spec, const ManufacturedCase& c)
{
    CellResult r;
    r.spec = spec;
    r.case_name = c.name;
    r.dense_difference = kNaN;
    const SpaceTimeSystem sys = build_system(make_config(spec, c));
    r.h_s = sys.meta.h_s;
    r.h_t = sys.meta.h_t;
    r.n_s = sys.n_s();
    r.n_t = sys.n_t();
    r.n_dof = static_cast<long long>(sys.n_dof());
    try {
        SolveReport rep = solve_system(sys);
        r.relative_residual = rep.relative_residual;
        r.imag_discard_norm = rep.imag_discard_norm;
        r.wall_time = rep.wall_time;
        r.flops_estimate = flops_model(r.n_s, r.n_t, spec.p, c.d).total;
        r.lu_factorizations = rep.lu_factorizations;
        r.dense_fallback = rep.dense_fallback;
        r.errors = error_norms_spacetime(rep.solution, sys, c);
        r.final_errors = error_norms_final_time(rep.solution, sys, c);
        if (spec.crosscheck_dense) {
            const Eigen::VectorXd xd = solve_dense_oracle(sys);
            const double scale = xd.lpNorm<Eigen::Infinity>();
            const double diff = (rep.solution - xd).lpNorm<Eigen::Infinity>();
            r.dense_difference = scale > 0.0 ? diff / scale : diff;
        }
    } catch (const SolverError& e) {
        r.failure = e.what();
    } catch (const FactorizationError& e) {
        r.failure = e.what();
    } catch (const NumericalError& e) {
        r.failure = e.what();
    } catch (const SizeError& e) {
        r.failure = e.what();
    }
    if (!r.ok()) {
        r.errors = blown_up();
        r.relative_residual = kNaN;
    }
    return r;
}

void parallel_for(int count, int jobs, const std::function<void(int)>& task)
{
    if (count <= 0)
        return;
    if (jobs <= 1 || count == 1) {
        for (int i = 0; i < count; ++i)
            task(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (int i = next++; i < count; i = next++) {
            try {
                task(i);
            } catch (...) {
                const std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error)
                    first_error = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    const int n = std::min(jobs, count);
    for (int t = 0; t < n; ++t)
        pool.emplace_back(worker);
    for (auto& t : pool)
        t.join();
    if (first_error)
        std::rethrow_exception(first_error);
}

// ---------------------------------------------------------------- convergence

ConvergenceTable convergence_study(const ManufacturedCase& c, const ConvergenceOptions& opts)
{
    if (opts.degrees.empty() || opts.n_elements.empty())
        throw ParameterError("convergence: need at least one degree and one mesh size");
    for (std::size_t i = 1; i < opts.n_elements.size(); ++i)
        if (opts.n_elements[i] != 2 * opts.n_elements[i - 1])
            throw ParameterError("convergence: mesh sizes must form a uniform halving sequence");

    ConvergenceTable t;
    std::vector<CellSpec> specs;
    for (int p : opts.degrees)
        for (int n : opts.n_elements) {
            if (space_dim(n, p, resolve(opts.reg_s, p), 4) <= 0) {
                t.skipped.push_back(empty_space_note(p, n));
                continue;
            }
            CellSpec s;
            s.p = p;
            s.n_el_s = s.n_el_t = n;
            s.mode = opts.mode;
            s.reg_s = opts.reg_s;
            s.reg_t = opts.reg_t;
            s.delta = opts.delta;
            s.crosscheck_dense = opts.crosscheck_dense;
            specs.push_back(s);
        }

    if (specs.empty())
        throw ParameterError("convergence: no mesh level yields a non-empty clamped space");
    t.rows.resize(specs.size());
    parallel_for(static_cast<int>(specs.size()), opts.jobs,
                 [&](int i) { t.rows[i].cell = run_cell(specs[i], c); });

    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        ConvergenceRow& row = t.rows[i];
        const bool first = i == 0 || t.rows[i - 1].cell.spec.p != row.cell.spec.p;
        if (first) {
            row.rate_l2l2 = row.rate_h1mix = row.rate_x = kNaN;
            continue;
        }
        const CellResult& a = t.rows[i - 1].cell;
        const CellResult& b = row.cell;
        row.rate_l2l2 = rate(a.errors.l2l2, b.errors.l2l2, a.h_s, b.h_s);
        row.rate_h1mix = rate(a.errors.h1mix, b.errors.h1mix, a.h_s, b.h_s);
        row.rate_x = rate(a.errors.x, b.errors.x, a.h_s, b.h_s);
    }
    return t;
}

FinestRates finest_rates(const ConvergenceTable& t, int p)
{
    for (auto it = t.rows.rbegin(); it != t.rows.rend(); ++it)
        if (it->cell.spec.p == p)
            return {it->rate_l2l2, it->rate_h1mix, it->rate_x};
    return {kNaN, kNaN, kNaN};
}

// ------------------------------------------------------------------ stability

std::string to_string(Stability s)
{
    return s == Stability::stable ? "stable" : "unstable";
}

Stability classify(const std::vector<SpaceTimeErrors>& errors)
{
    if (errors.empty())
        throw ParameterError("classify: empty error sequence");
    for (const auto& e : errors)
        for (double v : {e.l2l2, e.h1mix, e.x})
            if (!std::isfinite(v) || v > kBlowupThreshold)
                return Stability::unstable;
    return errors.back().x > kGrowthThreshold * errors.front().x ? Stability::unstable
                                                                  : Stability::stable;
}

StabilityReport stability_study(const ManufacturedCase& c, const StabilityOptions& opts)
{
    if (opts.degrees.empty() || opts.n_elements.empty())
        throw ParameterError("stability: need at least one degree and one mesh size");
    const auto wanted = [&](Stabilization m) {
        return std::find(opts.modes.begin(), opts.modes.end(), m) != opts.modes.end();
    };

    StabilityReport report;
    for (int p : opts.degrees) {
        const int reg_s = resolve(opts.reg_s, p);
        auto add = [&](const char* group, Stabilization m, int reg_t, Stability expected) {
            StabilityRow row;
            row.group = group;
            row.mode = m;
            row.p = p;
            row.reg_s = reg_s;
            row.reg_t = reg_t;
            row.expected = expected;
            report.rows.push_back(row);
        };
        if (wanted(Stabilization::none))
            for (int r = p - 1; r >= 0; --r)
                add("none", Stabilization::none, r, Stability::unstable);
        if (wanted(Stabilization::iga_penalty)) {
            add("iga-max", Stabilization::iga_penalty, p - 1, Stability::stable);
            for (int r = p - 2; r >= 0; --r)
                add("iga-reduced", Stabilization::iga_penalty, r, Stability::unstable);
        }
        if (wanted(Stabilization::fem_projection)) {
            add("fem-c0", Stabilization::fem_projection, 0, Stability::stable);
            for (int r = p - 1; r >= 1; --r)
                add("fem-reduced", Stabilization::fem_projection, r, Stability::unstable);
        }
    }

    struct Task {
        std::size_t row;
        CellSpec spec;
    };
    std::vector<Task> tasks;
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        const StabilityRow& row = report.rows[i];
        for (int n : opts.n_elements) {
            if (space_dim(n, row.p, row.reg_s, 4) <= 0) {
                const std::string note = empty_space_note(row.p, n);
                if (std::find(report.skipped.begin(), report.skipped.end(), note) ==
                    report.skipped.end())
                    report.skipped.push_back(note);
                continue;
            }
            CellSpec s;
            s.p = row.p;
            s.n_el_s = s.n_el_t = n;
            s.mode = row.mode;
            s.reg_s = row.reg_s;
            s.reg_t = row.reg_t;
            s.delta = opts.delta;
            tasks.push_back({i, s});
        }
    }

    std::vector<CellResult> results(tasks.size());
    parallel_for(static_cast<int>(tasks.size()), opts.jobs,
                 [&](int i) { results[i] = run_cell(tasks[i].spec, c); });
    for (std::size_t i = 0; i < tasks.size(); ++i)
        report.rows[tasks[i].row].cells.push_back(std::move(results[i]));

    for (auto& row : report.rows) {
        if (row.cells.empty())
            throw ParameterError("stability: no valid mesh level for p=" + std::to_string(row.p));
        std::vector<SpaceTimeErrors> seq;
        for (const auto& cell : row.cells)
            seq.push_back(cell.errors);
        row.observed = classify(seq);
    }
    return report;
}

// ------------------------------------------------------------------ CFL sweep

CflSweep cfl_sweep(const ManufacturedCase& c, const CflSweepOptions& opts)
{
    if (opts.k_min > opts.k_max)
        throw ParameterError("cfl sweep: empty k range");
    if (c.d != opts.d)
        throw ParameterError("cfl sweep: case dimension does not match d");

    CellSpec base;
    base.p = opts.p;
    base.n_el_s = opts.n_el_s;
    base.n_el_t = 1;
    base.mode = opts.mode;
    const SpaceTimeSystem probe = build_system(make_config(base, c));
    const CflReport cfl0 = cfl_check(probe.spatial, opts.p, c.T);

    std::vector<int> n_t;
    for (int k = opts.k_min; k <= opts.k_max; ++k) {
        const double h = cfl0.h_t_max * std::pow(2.0, k / 4.0);
        n_t.push_back(std::max(1, static_cast<int>(std::lround(c.T / h))));
    }
    std::sort(n_t.begin(), n_t.end(), std::greater<>());
    n_t.erase(std::unique(n_t.begin(), n_t.end()), n_t.end());

    CflSweep sweep;
    sweep.rows.resize(n_t.size());
    parallel_for(static_cast<int>(n_t.size()), opts.jobs, [&](int i) {
        CellSpec s = base;
        s.n_el_t = n_t[i];
        sweep.rows[i].cell = run_cell(s, c);
    });

    sweep.cfl = cfl_check(probe.spatial, opts.p, sweep.rows.front().cell.h_t);
    sweep.reference = sweep.rows.front().cell.errors;
    for (auto& row : sweep.rows) {
        row.ratio = row.cell.h_t / sweep.cfl.h_t_max;
        row.observed = classify({sweep.reference, row.cell.errors});
    }
    sweep.boundary = kNaN;
    if (classify({sweep.reference}) == Stability::stable) {
        for (std::size_t i = 1; i < sweep.rows.size(); ++i) {
            if (sweep.rows[i].observed == Stability::unstable) {
                sweep.boundary = std::sqrt(sweep.rows[i - 1].cell.h_t * sweep.rows[i].cell.h_t);
                break;
            }
        }
    }
    return sweep;
}

// --------------------------------------------------------------------- timing

std::vector<TimingRow> timing_study(const ManufacturedCase& c, const TimingOptions& opts)
{
    if (opts.repeats < 1)
        throw ParameterError("timing: repeats must be >= 1");
    std::vector<TimingRow> rows;
    for (int p : opts.degrees) {
        std::vector<SpaceTimeSystem> systems;
        for (int n : opts.n_elements) {
            CellSpec s;
            s.p = p;
            s.n_el_s = s.n_el_t = n;
            s.mode = opts.mode;
            systems.push_back(build_system(make_config(s, c)));
        }
        // repeats cycle through the levels: back-to-back solves of one system
        // would run the smallest level entirely from warm caches
        const std::size_t L = systems.size();
        std::vector<std::vector<double>> times(L);
        std::vector<SolveReport> last(L);
        for (int k = 0; k < opts.repeats; ++k)
            for (std::size_t l = 0; l < L; ++l) {
                last[l] = solve_system(systems[l]);
                times[l].push_back(last[l].wall_time);
            }
        const std::size_t first = rows.size();
        for (std::size_t l = 0; l < L; ++l) {
            const SpaceTimeSystem& sys = systems[l];
            std::vector<double>& t = times[l];
            std::sort(t.begin(), t.end());
            const std::size_t m = t.size();
            TimingRow row;
            row.wall_time = m % 2 ? t[m / 2] : 0.5 * (t[m / 2 - 1] + t[m / 2]);
            row.relative_residual = last[l].relative_residual;
            row.lu_factorizations = last[l].lu_factorizations;
            row.p = p;
            row.h = sys.meta.h_s;
            row.n_s = sys.n_s();
            row.n_t = sys.n_t();
            row.n_dof = static_cast<long long>(sys.n_dof());
            row.flops = flops_model(row.n_s, row.n_t, p, c.d).total;
            if (rows.size() > first) {
                row.growth = row.wall_time / rows.back().wall_time;
                row.flops_growth = row.flops / rows.back().flops;
            } else {
                row.growth = row.flops_growth = kNaN;
            }
            rows.push_back(row);
        }
    }
    return rows;
}

// ------------------------------------------------------------ fixed-N compare

MeshPair mesh_for_target(int d, int p, int reg_s, int reg_t, long long target)
{
    if (target <= 0 || (d != 1 && d != 2) || p < 2)
        throw ParameterError("mesh_for_target: invalid arguments");
    MeshPair best;
    long long best_gap = std::numeric_limits<long long>::max();
    double best_skew = std::numeric_limits<double>::infinity();
    for (int ns_el = 1;; ++ns_el) {
        const long long dim = space_dim(ns_el, p, reg_s, 4);
        if (dim <= 0)
            continue;
        const long long n_s = d == 1 ? dim : dim * dim;
        if (n_s > target)
            break;
        const double want_nt = static_cast<double>(target) / static_cast<double>(n_s);
        const int guess = static_cast<int>((want_nt - reg_t) / (p - reg_t));
        for (int nt_el = std::max(1, guess - 2); nt_el <= guess + 2; ++nt_el) {
            const double ratio = static_cast<double>(ns_el) / nt_el; // h_t / h_s for T = 1
            if (ratio < 0.8 || ratio > 1.25)
                continue;
            const long long n = n_s * space_dim(nt_el, p, reg_t, 1);
            const long long gap = std::llabs(n - target);
            const double skew = std::abs(std::log(ratio));
            if (gap < best_gap || (gap == best_gap && skew < best_skew)) {
                best = {ns_el, nt_el, n};
                best_gap = gap;
                best_skew = skew;
            }
        }
    }
    if (best.n_dof == 0)
        throw ParameterError("mesh_for_target: no mesh pair with h_t/h_s in [0.8, 1.25]");
    return best;
}

std::vector<CompareRow> compare_study(const ManufacturedCase& c, const CompareOptions& opts)
{
    std::vector<CompareRow> rows;
    for (int p : opts.degrees) {
        struct Scheme {
            const char* name;
            Stabilization mode;
            int reg_s, reg_t;
        };
        for (const Scheme& sc : {Scheme{"iga", Stabilization::iga_penalty, p - 1, p - 1},
                                 Scheme{"fem", Stabilization::fem_projection, 1, 0}}) {
            const MeshPair mesh = mesh_for_target(c.d, p, sc.reg_s, sc.reg_t, opts.target_dofs);
            CompareRow row;
            row.scheme = sc.name;
            row.cell.spec.p = p;
            row.cell.spec.n_el_s = mesh.n_el_s;
            row.cell.spec.n_el_t = mesh.n_el_t;
            row.cell.spec.mode = sc.mode;
            row.cell.spec.reg_s = sc.reg_s;
            row.cell.spec.reg_t = sc.reg_t;
            rows.push_back(row);
        }
    }
    parallel_for(static_cast<int>(rows.size()), opts.jobs,
                 [&](int i) { rows[i].cell = run_cell(rows[i].cell.spec, c); });
    return rows;
}

// -------------------------------------------------------------------- output

void write_cell_csv(std::ostream& os, const std::string& study,
                    const std::vector<const CellResult*>& cells)
{
    os << kCsvVersion << " study=" << study << '\n';
    write_cell_header(os);
    os << '\n';
    for (const CellResult* r : cells) {
        write_cell_fields(os, *r);
        os << '\n';
    }
}

void write_convergence_csv(std::ostream& os, const ConvergenceTable& t)
{
    os << kCsvVersion << " study=convergence\n";
    write_cell_header(os);
    os << ",rate_l2l2,rate_h1mix,rate_x\n";
    for (const auto& row : t.rows) {
        write_cell_fields(os, row.cell);
        os << ',' << num(row.rate_l2l2) << ',' << num(row.rate_h1mix) << ',' << num(row.rate_x)
           << '\n';
    }
}

void write_stability_csv(std::ostream& os, const StabilityReport& r)
{
    os << kCsvVersion << " study=stability\n";
    write_cell_header(os);
    os << ",group,expected,observed\n";
    for (const auto& row : r.rows)
        for (const auto& cell : row.cells) {
            write_cell_fields(os, cell);
            os << ',' << row.group << ',' << to_string(row.expected) << ','
               << to_string(row.observed) << '\n';
        }
}

void write_cfl_csv(std::ostream& os, const CflSweep& s)
{
    os << kCsvVersion << " study=cfl lambda_max=" << num(s.cfl.lambda_max)
       << " h_t_max=" << num(s.cfl.h_t_max) << " boundary=" << num(s.boundary) << '\n';
    write_cell_header(os);
    os << ",ratio,observed\n";
    for (const auto& row : s.rows) {
        write_cell_fields(os, row.cell);
        os << ',' << num(row.ratio) << ',' << to_string(row.observed) << '\n';
    }
}

void write_timing_csv(std::ostream& os, const std::vector<TimingRow>& rows)
{
    os << kCsvVersion << " study=timing\n";
    os << "p,h,n_s,n_t,n_dof,relative_residual,lu_factorizations,flops_estimate,flops_growth,"
          "wall_time,growth\n";
    for (const auto& r : rows)
        os << r.p << ',' << num(r.h) << ',' << r.n_s << ',' << r.n_t << ',' << r.n_dof << ','
           << num(r.relative_residual) << ',' << r.lu_factorizations << ',' << num(r.flops) << ','
           << num(r.flops_growth) << ',' << num(r.wall_time) << ',' << num(r.growth) << '\n';
}

void write_compare_csv(std::ostream& os, const std::vector<CompareRow>& rows)
{
    os << kCsvVersion << " study=compare\n";
    write_cell_header(os);
    os << ",scheme\n";
    for (const auto& row : rows) {
        write_cell_fields(os, row.cell);
        os << ',' << row.scheme << '\n';
    }
}

std::vector<std::filesystem::path> write_convergence_dat(const std::filesystem::path& dir,
                                                         const ConvergenceTable& t)
{
    std::vector<int> degrees;
    for (const auto& row : t.rows)
        if (std::find(degrees.begin(), degrees.end(), row.cell.spec.p) == degrees.end())
            degrees.push_back(row.cell.spec.p);
    std::vector<std::filesystem::path> files;
    for (int p : degrees) {
        std::vector<std::pair<double, double>> l2, h1, x;
        for (const auto& row : t.rows) {
            if (row.cell.spec.p != p)
                continue;
            l2.emplace_back(row.cell.h_s, row.cell.errors.l2l2);
            h1.emplace_back(row.cell.h_s, row.cell.errors.h1mix);
            x.emplace_back(row.cell.h_s, row.cell.errors.x);
        }
        const std::string suffix = "_p" + std::to_string(p) + ".dat";
        files.push_back(write_columns(dir / ("l2l2" + suffix), "h err_l2l2", l2));
        files.push_back(write_columns(dir / ("h1mix" + suffix), "h err_h1mix", h1));
        files.push_back(write_columns(dir / ("x" + suffix), "h err_x", x));
    }
    return files;
}

std::vector<std::filesystem::path> write_stability_dat(const std::filesystem::path& dir,
                                                       const StabilityReport& r)
{
    std::vector<std::filesystem::path> files;
    for (const auto& row : r.rows) {
        std::vector<std::pair<double, double>> pts;
        for (const auto& cell : row.cells)
            pts.emplace_back(cell.h_s, cell.errors.x);
        const std::string name = "stability_" + row.group + "_p" + std::to_string(row.p) + "_r" +
                                 std::to_string(row.reg_t) + ".dat";
        files.push_back(write_columns(dir / name, "h err_x", pts));
    }
    return files;
}

std::vector<std::filesystem::path> write_timing_dat(const std::filesystem::path& dir,
                                                    const std::vector<TimingRow>& rows)
{
    std::vector<int> degrees;
    for (const auto& r : rows)
        if (std::find(degrees.begin(), degrees.end(), r.p) == degrees.end())
            degrees.push_back(r.p);
    std::vector<std::filesystem::path> files;
    for (int p : degrees) {
        std::vector<std::pair<double, double>> pts;
        for (const auto& r : rows)
            if (r.p == p)
                pts.emplace_back(static_cast<double>(r.n_dof), r.wall_time);
        files.push_back(
            write_columns(dir / ("timing_p" + std::to_string(p) + ".dat"), "n_dof wall_time", pts));
    }
    return files;
}

} // namespace bihw
