#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "doctest.h"

#include "bihw/cli.hpp"

namespace fs = std::filesystem;
using bihw::cli::run;

namespace {

struct TempDir {
    fs::path path;
    TempDir()
    {
        std::random_device rd;
        path = fs::temp_directory_path() / ("bihw-cli-" + std::to_string(rd()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string operator/(const std::string& s) const { return (path / s).string(); }
};

std::string slurp(const fs::path& p)
{
    std::ifstream is(p);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

/// CSV with the wall_time column removed (located from the header row).
std::string without_wall_time(const std::string& csv)
{
    auto split = [](const std::string& line) {
        std::vector<std::string> f;
        std::stringstream ss(line);
        for (std::string x; std::getline(ss, x, ',');)
            f.push_back(x);
        return f;
    };
    std::istringstream is(csv);
    std::string line, out;
    std::ptrdiff_t col = -1;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') {
            out += line + '\n';
            continue;
        }
        auto f = split(line);
        if (col < 0) {
            const auto it = std::find(f.begin(), f.end(), "wall_time");
            REQUIRE(it != f.end());
            col = it - f.begin();
        }
        f.erase(f.begin() + col);
        for (const auto& x : f)
            out += x + ',';
        out += '\n';
    }
    return out;
}

struct Run {
    int code;
    std::string out, err;
};

Run call(const std::vector<std::string>& args)
{
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

double summary_value(const std::string& text, const std::string& key)
{
    const auto pos = text.find(key + " = ");
    REQUIRE(pos != std::string::npos);
    return std::stod(text.substr(pos + key.size() + 3));
}

} // namespace

TEST_CASE("help exits with 0")
{
    const auto r = call({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("solve") != std::string::npos);
    const auto s = call({"solve", "--help"});
    CHECK(s.code == 0);
    CHECK(s.out.find("--regularity-time") != std::string::npos);
}

TEST_CASE("solve writes artifacts with a small residual")
{
    TempDir tmp;
    const auto r = call({"solve", "--case", "line1d", "--p", "2", "--h", "0.125", "--out", tmp / "o"});
    CHECK(r.code == 0);
    for (const char* f : {"results.csv", "summary.txt", "effective.cfg"})
        CHECK(fs::exists(tmp.path / "o" / f));
    const std::string sum = slurp(tmp.path / "o" / "summary.txt");
    CHECK(summary_value(sum, "relative_residual") <= 1e-9);
    const std::string csv = slurp(tmp.path / "o" / "results.csv");
    CHECK(csv.rfind("# bihw-results v1", 0) == 0);
}

TEST_CASE("configuration errors exit with 2")
{
    TempDir tmp;
    CHECK(call({"convergence", "--config", tmp / "missing.cfg"}).code == 2);
    CHECK(call({}).code == 2);
    CHECK(call({"solve", "--bogus", "1"}).code == 2);
    CHECK(call({"solve", "--mode", "weird", "--out", tmp / "o"}).code == 2);
    CHECK(call({"solve", "--case", "nope", "--out", tmp / "o"}).code == 2);
    CHECK(call({"solve", "--p", "0", "--case", "line1d", "--out", tmp / "o"}).code == 2);
    const auto bad = call({"solve", "--h", "0.5", "--case", "line1d", "--out", tmp / "o"});
    CHECK(bad.code == 2);
    CHECK(bad.err.rfind("error:", 0) == 0);

    // unknown keys in a config file are rejected
    {
        std::ofstream cfg(tmp.path / "bad.cfg");
        cfg << "[solve]\ncase=line1d\ncolour=blue\n";
    }
    const auto unk = call({"solve", "--config", tmp / "bad.cfg", "--out", tmp / "o"});
    CHECK(unk.code == 2);
    CHECK(unk.err.find("error:") != std::string::npos);
}

TEST_CASE("numerical failures exit with 1")
{
    TempDir tmp;
    // a dense cross-check above the size cap fails the cell
    setenv("BIHW_MAX_DENSE", "10", 1);
    const auto r = call({"solve", "--case", "line1d", "--p", "2", "--h", "0.125",
                         "--crosscheck-dense", "--out", tmp / "o"});
    unsetenv("BIHW_MAX_DENSE");
    CHECK(r.code == 1);
    CHECK(r.err.find("error:") != std::string::npos);
}

TEST_CASE("outputs are deterministic and the effective config round-trips")
{
    TempDir tmp;
    const std::vector<std::string> base{"convergence", "--case", "line1d", "--p", "2,3",
                                        "--h", "0.25,0.125,0.0625"};
    auto args = base;
    args.insert(args.end(), {"--out", tmp / "a"});
    REQUIRE(call(args).code == 0);
    args = base;
    args.insert(args.end(), {"--out", tmp / "b", "--jobs", "2"});
    REQUIRE(call(args).code == 0);
    const std::string a = without_wall_time(slurp(tmp.path / "a" / "results.csv"));
    CHECK(a == without_wall_time(slurp(tmp.path / "b" / "results.csv")));
    CHECK(a.find("wall_time") == std::string::npos);

    // rerun from the serialized effective configuration
    std::string cfg = slurp(tmp.path / "a" / "effective.cfg");
    CHECK(cfg.rfind("[convergence]", 0) == 0);
    {
        std::ofstream os(tmp.path / "round.cfg");
        os << cfg;
    }
    REQUIRE(call({"convergence", "--config", tmp / "round.cfg", "--out", tmp / "c"}).code == 0);
    CHECK(a == without_wall_time(slurp(tmp.path / "c" / "results.csv")));
    for (const char* f : {"l2l2_p2.dat", "h1mix_p3.dat", "x_p2.dat"})
        CHECK(fs::exists(tmp.path / "a" / f));
}

TEST_CASE("other studies run")
{
    TempDir tmp;
    CHECK(call({"stability", "--case", "line1d", "--h", "0.25,0.125", "--modes", "iga,fem",
                "--out", tmp / "s"})
              .code == 0);
    CHECK(slurp(tmp.path / "s" / "results.csv").find("iga-max") != std::string::npos);
    CHECK(call({"timing", "--h", "0.25,0.125", "--repeats", "1", "--out", tmp / "t"}).code == 0);
    CHECK(call({"cfl", "--k-min", "-1", "--k-max", "1", "--out", tmp / "f"}).code == 0);
    CHECK(slurp(tmp.path / "f" / "effective.cfg").find("mode=none") != std::string::npos);
    CHECK(call({"compare", "--p", "2", "--target-dofs", "300", "--out", tmp / "c"}).code == 0);
}
