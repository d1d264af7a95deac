// Integration tests that drive the installed binary the way a user
// would: option parsing, exit codes, output files and reproducibility.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

const std::string kBin = POLARISCOPE_BIN;
const fs::path kDataDir = POLARISCOPE_DATA_DIR;

struct RunResult {
  int exit_code = -1;
  std::string stderr_text;
};

class Sandbox {
public:
  Sandbox() {
    dir_ = fs::temp_directory_path() /
           ("polariscope_cli_" + std::to_string(counter_++));
    fs::create_directories(dir_);
  }
  ~Sandbox() { fs::remove_all(dir_); }

  RunResult run(const std::string& args, const std::string& env = "") const {
    const fs::path errfile = dir_ / "stderr.txt";
    const std::string cmd = (env.empty() ? "" : env + " ") + kBin + " " + args +
                            " 2>" + errfile.string();
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream err(errfile);
    std::stringstream ss;
    ss << err.rdbuf();
    r.stderr_text = ss.str();
    return r;
  }

  std::string slurp(const std::string& name) const {
    std::ifstream in(dir_ / name);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  bool exists(const std::string& name) const { return fs::exists(dir_ / name); }

  std::string out(const std::string& prefix) const {
    return (dir_ / prefix).string();
  }

private:
  static inline int counter_ = 0;
  fs::path dir_;
};

const std::string kConfig = (kDataDir / "reference.ini").string();

}  // namespace

TEST_CASE("decompose writes CSV plus manifest and exits 0") {
  Sandbox sb;
  const RunResult r =
      sb.run("decompose --config " + kConfig + " --out " + sb.out("a"));
  CHECK(r.exit_code == 0);
  REQUIRE(sb.exists("a_decompose.csv"));
  REQUIRE(sb.exists("a_decompose.manifest.json"));
  const std::string csv = sb.slurp("a_decompose.csv");
  CHECK(csv.rfind("fprime,alpha0_norm,alpha1_norm,alpha2_norm,residual_norm",
                  0) == 0);
  const std::string manifest = sb.slurp("a_decompose.manifest.json");
  CHECK(manifest.find("\"command\": \"decompose\"") != std::string::npos);
}

TEST_CASE("usage errors exit with code 2") {
  Sandbox sb;
  CHECK(sb.run("frobnicate --config " + kConfig).exit_code == 2);
  CHECK(sb.run("decompose").exit_code == 2);  // missing --config
  CHECK(sb.run("trajectory --config " + kConfig).exit_code == 2);  // no --path
  CHECK(sb.run("trajectory --config " + kConfig + " --path diagonal")
            .exit_code == 2);
  const RunResult missing = sb.run("decompose --config /no/such/file.ini");
  CHECK(missing.exit_code == 2);
  CHECK(missing.stderr_text.find("no/such/file.ini") != std::string::npos);
}

TEST_CASE("malformed config reports file and line, exit 2") {
  Sandbox sb;
  std::ofstream(sb.out("bad.ini")) << "[cloud]\natoms 1e9\n";
  const RunResult r = sb.run("decompose --config " + sb.out("bad.ini"));
  CHECK(r.exit_code == 2);
  CHECK(r.stderr_text.find("bad.ini:2") != std::string::npos);
}

TEST_CASE("scan refuses ranges that cross a resonance, exit 2") {
  Sandbox sb;
  const RunResult r = sb.run("scan --config " + kConfig +
                             " --from='-260 MHz' --to='-240 MHz' --points 41" +
                             " --out " + sb.out("s"));
  CHECK(r.exit_code == 2);
  CHECK(r.stderr_text.find("resonance") != std::string::npos);
  CHECK_FALSE(sb.exists("s_scan.csv"));
}

TEST_CASE("scan emits slopes and is invariant under the thread cap") {
  Sandbox sb;
  const std::string args = "scan --config " + kConfig +
                           " --from '50 GHz' --to '500 GHz' --points 12 --log";
  CHECK(sb.run(args + " --out " + sb.out("one"),
               "POLARISCOPE_THREADS=1")
            .exit_code == 0);
  CHECK(sb.run(args + " --out " + sb.out("four"),
               "POLARISCOPE_THREADS=4")
            .exit_code == 0);
  CHECK(sb.slurp("one_scan.csv") == sb.slurp("four_scan.csv"));
  const std::string manifest = sb.slurp("one_scan.manifest.json");
  CHECK(manifest.find("vector_slope") != std::string::npos);
  CHECK(manifest.find("tensor_slope") != std::string::npos);
}

TEST_CASE("photocurrent reruns are byte-identical for a fixed seed") {
  Sandbox sb;
  const std::string args =
      "photocurrent --config " + kConfig + " --fz 20000 --seed 7 --out ";
  CHECK(sb.run(args + sb.out("p1")).exit_code == 0);
  CHECK(sb.run(args + sb.out("p2")).exit_code == 0);
  CHECK(sb.slurp("p1_photocurrent.csv") == sb.slurp("p2_photocurrent.csv"));

  CHECK(sb.run("photocurrent --config " + kConfig +
               " --fz 20000 --seed 8 --out " + sb.out("p3"))
            .exit_code == 0);
  CHECK(sb.slurp("p1_photocurrent.csv") != sb.slurp("p3_photocurrent.csv"));
}

TEST_CASE("trajectory and squeeze produce the documented columns") {
  Sandbox sb;
  CHECK(sb.run("trajectory --config " + kConfig + " --path xy --measure sz" +
               " --samples 50 --out " + sb.out("t"))
            .exit_code == 0);
  CHECK(sb.slurp("t_trajectory.csv").rfind("path_parameter,sy_norm,sz_norm",
                                           0) == 0);
  CHECK(sb.slurp("t_trajectory.manifest.json").find("\"measure\": \"sz\"") !=
        std::string::npos);

  CHECK(sb.run("squeeze --config " + kConfig +
               " --tau-grid '1 ms,5 ms,10 ms' --out " + sb.out("q"))
            .exit_code == 0);
  const std::string csv = sb.slurp("q_squeeze.csv");
  CHECK(csv.rfind("tau,snr2,w,tau_over_tau_s", 0) == 0);
  // three grid entries -> header + 3 rows
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
  CHECK(sb.run("squeeze --config " + kConfig + " --tau-grid '1 us:1 ms:7'" +
               " --out " + sb.out("q2"))
            .exit_code == 0);
}
