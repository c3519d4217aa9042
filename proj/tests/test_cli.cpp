// End-to-end tests of the command-line binary: CSV layout, numeric
// formatting, determinism, config files, and exit codes. The binary path
// arrives via the SPINCLOCK_BIN environment variable.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

std::string binary() {
    const char* bin = std::getenv("SPINCLOCK_BIN");
    REQUIRE(bin != nullptr);
    return bin;
}

fs::path scratch_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "spinclock_cli_tests";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

// Runs the binary with the given arguments; stdout/stderr go to a log file
// so test output stays readable. Returns the process exit code.
int run(const std::string& args) {
    const std::string log = (scratch_dir() / "last_run.log").string();
    const std::string cmd = binary() + " " + args + " > " + log + " 2>&1";
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return WEXITSTATUS(status);
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream ss(text);
    std::string line;
    while (std::getline(ss, line))
        out.push_back(line);
    return out;
}

std::vector<std::string> split(const std::string& line, char sep = ',') {
    std::vector<std::string> out;
    std::istringstream ss(line);
    std::string field;
    while (std::getline(ss, field, sep))
        out.push_back(field);
    return out;
}

// Parses a CSV written by the binary into per-line numeric fields.
std::vector<std::vector<double>> numeric_rows(const fs::path& p) {
    const auto ls = lines_of(read_file(p));
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 1; i < ls.size(); ++i) {
        std::vector<double> row;
        for (const auto& f : split(ls[i]))
            row.push_back(std::strtod(f.c_str(), nullptr));
        rows.push_back(std::move(row));
    }
    return rows;
}

const std::string kParams = "--theta 1.5707963267948966 --epsilon 0.1 --mu -1";

} // namespace

TEST_CASE("simulate: default channel layout and full-precision round-trip") {
    const fs::path out = scratch_dir() / "defaults.csv";
    REQUIRE(run("simulate " + kParams + " --t-max 0.1 --dt 0.01 --sample-every 1 --out " +
                out.string()) == 0);

    const auto ls = lines_of(read_file(out));
    REQUIRE(ls.size() == 12); // header + 11 samples on [0, 0.1]
    CHECK(ls[0] == "t,n3L,n3L1,joint_pp,joint_pm,joint_mp,joint_mm,m1,m2,m3,current,chirality,"
                   "s_reg,s_cur,s_tot");

    // %.17g fields survive a parse/format round trip unchanged.
    for (const auto& field : split(ls[5])) {
        const double v = std::strtod(field.c_str(), nullptr);
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        CHECK(field == buf);
    }
}

TEST_CASE("simulate: identical runs produce identical bytes") {
    const fs::path a = scratch_dir() / "det_a.csv";
    const fs::path b = scratch_dir() / "det_b.csv";
    const std::string tail = " --t-max 1 --dt 0.01 --sample-every 10 --out ";
    REQUIRE(run("simulate " + kParams + tail + a.string()) == 0);
    REQUIRE(run("simulate " + kParams + tail + b.string()) == 0);
    CHECK(read_file(a) == read_file(b));
}

TEST_CASE("simulate: closed-form and spectral backends agree") {
    const fs::path a = scratch_dir() / "method_analytic.csv";
    const fs::path b = scratch_dir() / "method_expm.csv";
    const std::string tail = " --t-max 3 --dt 0.01 --sample-every 10";
    REQUIRE(run("simulate " + kParams + tail + " --method analytic --out " + a.string()) == 0);
    REQUIRE(run("simulate " + kParams + tail + " --method expm --out " + b.string()) == 0);

    // Different computation paths: not the same bytes, but the same physics.
    CHECK(read_file(a) != read_file(b));
    const auto ra = numeric_rows(a);
    const auto rb = numeric_rows(b);
    REQUIRE(ra.size() == rb.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < ra.size(); ++i) {
        REQUIRE(ra[i].size() == rb[i].size());
        for (std::size_t j = 0; j < ra[i].size(); ++j)
            worst = std::max(worst, std::abs(ra[i][j] - rb[i][j]));
    }
    CHECK(worst <= 1e-6);
}

TEST_CASE("simulate: channel selection") {
    const fs::path c = scratch_dir() / "complex_channel.csv";
    REQUIRE(run("simulate " + kParams + " --t-max 0.1 --dt 0.01 --out " + c.string() +
                " --observables m") == 0);
    CHECK(lines_of(read_file(c))[0] == "t,m_re,m_im");

    const fs::path pair = scratch_dir() / "pair_channel.csv";
    REQUIRE(run("simulate " + kParams + " --t-max 0.1 --dt 0.01 --out " + pair.string() +
                " --observables m2,m3") == 0);
    CHECK(lines_of(read_file(pair))[0] == "t,m2,m3");

    // An empty list leaves only the time column.
    const fs::path bare = scratch_dir() / "bare.csv";
    REQUIRE(run("simulate " + kParams + " --t-max 0.1 --dt 0.01 --out " + bare.string() +
                " --observables \"\"") == 0);
    CHECK(lines_of(read_file(bare))[0] == "t");

    CHECK(run("simulate " + kParams + " --t-max 0.1 --out " + c.string() +
              " --observables bogus") == 2);
}

TEST_CASE("simulate: config file mirrors flags, flags win") {
    const fs::path cfg = scratch_dir() / "run.cfg";
    {
        std::ofstream f(cfg);
        f << "# baseline parameters\n"
          << "theta = 0.1\n"
          << "epsilon = 0.1\n"
          << "mu = 0.5\n"
          << "t-max = 0.2\n"
          << "dt = 0.01\n"
          << "sample-every = 2\n";
    }
    const fs::path a = scratch_dir() / "cfg_a.csv";
    const fs::path b = scratch_dir() / "cfg_b.csv";
    REQUIRE(run("simulate --config " + cfg.string() + " --out " + a.string()) == 0);
    REQUIRE(run("simulate --theta 0.1 --epsilon 0.1 --mu 0.5 --t-max 0.2 --dt 0.01 "
                "--sample-every 2 --out " +
                b.string()) == 0);
    CHECK(read_file(a) == read_file(b));

    // A flag given on the command line overrides the file's value.
    const fs::path c = scratch_dir() / "cfg_c.csv";
    const fs::path d = scratch_dir() / "cfg_d.csv";
    REQUIRE(run("simulate --config " + cfg.string() + " --theta 2.0 --out " + c.string()) == 0);
    REQUIRE(run("simulate --theta 2.0 --epsilon 0.1 --mu 0.5 --t-max 0.2 --dt 0.01 "
                "--sample-every 2 --out " +
                d.string()) == 0);
    CHECK(read_file(c) == read_file(d));

    // Required options may arrive through the file.
    const fs::path e = scratch_dir() / "cfg_e.csv";
    const fs::path cfg_out = scratch_dir() / "with_out.cfg";
    {
        std::ofstream f(cfg_out);
        f << "t-max = 0.1\ndt = 0.01\nout = " << e.string() << "\n";
    }
    REQUIRE(run("simulate " + kParams + " --config " + cfg_out.string()) == 0);
    CHECK(fs::exists(e));

    // Unknown keys are configuration errors, not silent no-ops.
    const fs::path bad = scratch_dir() / "bad.cfg";
    {
        std::ofstream f(bad);
        f << "bogus = 3\n";
    }
    CHECK(run("simulate " + kParams + " --config " + bad.string() + " --out " + e.string()) == 2);
}

TEST_CASE("exit codes") {
    const std::string out = (scratch_dir() / "codes.csv").string();
    // 1: an honest validation failure (machine-epsilon agreement cannot meet 1e-18).
    CHECK(run("validate " + kParams + " --t-max 2 --tol 1e-18") == 1);
    // 0: the same comparison at the documented tolerance.
    CHECK(run("validate " + kParams + " --t-max 2 --tol 1e-6") == 0);
    // 2: configuration errors of each flavor.
    CHECK(run("simulate --epsilon -0.5 --out " + out) == 2);        // invalid parameter
    CHECK(run("simulate " + kParams) == 2);                         // missing --out
    CHECK(run("figures --fig 9 --out " + scratch_dir().string()) == 2); // unknown figure
    CHECK(run("figures --out " + scratch_dir().string()) == 2);     // missing --fig
    CHECK(run("ness --epsilon 0 --out " + out) == 2);               // no stationary state
    CHECK(run("simulate " + kParams + " --method unitary --out " + out) == 2);
    CHECK(run("frobnicate") == 2);                                  // unknown subcommand
    CHECK(run("simulate --no-such-flag --out " + out) == 2);
}

TEST_CASE("spectrum: closed forms match the numerics they are printed with") {
    const fs::path out = scratch_dir() / "spectrum.csv";
    REQUIRE(run("spectrum " + kParams + " --out " + out.string()) == 0);
    const auto ls = lines_of(read_file(out));
    CHECK(ls[0] == "source,label,re,im,multiplicity");

    bool found_residual = false, found_degenerate = false;
    for (const auto& line : ls) {
        const auto f = split(line);
        if (f.size() == 5 && f[1] == "omega_match_residual") {
            found_residual = true;
            CHECK(std::strtod(f[2].c_str(), nullptr) <= 1e-8);
        }
        if (f.size() == 5 && f[1] == "omega_degenerate") {
            found_degenerate = true;
            CHECK(std::strtod(f[2].c_str(), nullptr) == 0.0);
        }
    }
    CHECK(found_residual);
    CHECK(found_degenerate);
}

TEST_CASE("ness: stationarity residual is reported and tiny") {
    const fs::path out = scratch_dir() / "ness.csv";
    REQUIRE(run("ness " + kParams + " --out " + out.string()) == 0);
    bool found = false;
    for (const auto& line : lines_of(read_file(out))) {
        const auto f = split(line);
        if (f.size() == 5 && f[0] == "residual_norm") {
            found = true;
            CHECK(std::strtod(f[3].c_str(), nullptr) <= 1e-12);
        }
    }
    CHECK(found);
}

TEST_CASE("figures: one command per published figure") {
    const fs::path dir = scratch_dir() / "fig2";
    fs::create_directories(dir);
    REQUIRE(run("figures --fig 2 --out " + dir.string()) == 0);
    for (const char* name : {"fig2_a.csv", "fig2_b.csv", "fig2_c.csv", "fig2_d.csv"})
        CHECK(fs::exists(dir / name));
    CHECK(lines_of(read_file(dir / "fig2_c.csv"))[0] == "t,s_reg");
}
