// CLI contract checks: subcommand wiring, exit codes, config-file handling.
// argv[1] = path to the rvol binary.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

int failures = 0;

int run(const std::string& cmd) {
  const int status = std::system((cmd + " >/dev/null 2>&1").c_str());
  return WEXITSTATUS(status);
}

std::string capture(const std::string& cmd) {
  const fs::path tmp = fs::temp_directory_path() / "rvol_cli_capture.txt";
  const int status = std::system((cmd + " > " + tmp.string() + " 2>/dev/null").c_str());
  (void)status;
  std::ifstream in(tmp);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void expect(bool ok, const std::string& what) {
  std::printf("[%s] %s\n", ok ? "ok" : "FAIL", what.c_str());
  if (!ok) ++failures;
}

void expect_exit(int got, int want, const std::string& what) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%s (exit %d, want %d)", what.c_str(), got, want);
  expect(got == want, buf);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: rvol_cli_checks <path-to-rvol>\n");
    return 2;
  }
  const std::string cli = argv[1];
  const fs::path root = fs::temp_directory_path() / "rvol_cli_checks";
  fs::remove_all(root);
  fs::create_directories(root);
  const std::string sim_dir = (root / "sim").string();
  const std::string out_dir = (root / "out").string();

  // usage errors
  expect_exit(run(cli), 2, "no subcommand is a usage error");
  expect_exit(run(cli + " frobnicate"), 2, "unknown subcommand");
  expect_exit(run(cli + " simulate --days 10 --bogus-flag 1 --out " + sim_dir), 2,
              "unknown flag");
  expect_exit(run(cli + " --kernels mmx simulate --days 10 --out " + sim_dir), 2,
              "unknown kernel backend");
  expect_exit(run(cli + " --help"), 0, "--help exits cleanly");

  // data generation and the measure pipeline
  expect_exit(run(cli + " simulate --days 220 --seed 3 --sv --sv-rho -0.5 "
                        "--jump-intensity 0.4 --jump-sd 0.004 --out " + sim_dir),
              0, "simulate");
  expect(fs::exists(fs::path(sim_dir) / "ticks.csv") &&
             fs::exists(fs::path(sim_dir) / "measures.csv") &&
             fs::exists(fs::path(sim_dir) / "truth.csv"),
         "simulate writes ticks, measures and truth files");

  expect_exit(run(cli + " compute-measures --ticks " + sim_dir + "/ticks.csv --out " +
                  out_dir),
              0, "compute-measures");
  {
    // returns re-derived from tick prices differ from the simulated ones by
    // ~1 ulp (log of exp), so compare the rv columns numerically
    auto rv_column = [](const fs::path& p) {
      std::ifstream in(p);
      std::string line;
      std::vector<double> rv;
      while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#' || line.rfind("date", 0) == 0) continue;
        const auto c1 = line.find(',');
        rv.push_back(std::stod(line.substr(c1 + 1)));
      }
      return rv;
    };
    const auto a = rv_column(fs::path(sim_dir) / "measures.csv");
    const auto b = rv_column(fs::path(out_dir) / "measures.csv");
    bool close = a.size() == b.size() && !a.empty();
    for (std::size_t i = 0; close && i < a.size(); ++i) {
      close = std::fabs(a[i] - b[i]) <= 1e-9 * a[i];
    }
    expect(close, "simulate and compute-measures agree on the rv series");
  }

  expect_exit(run(cli + " describe --measures " + out_dir + "/measures.csv"), 0,
              "describe");
  const std::string table =
      capture(cli + " describe --measures " + out_dir + "/measures.csv");
  expect(table.find("RV") != std::string::npos &&
             table.find("Q(20)") != std::string::npos,
         "describe prints the statistics table");

  expect_exit(run(cli + " --kernels scalar fit --measures " + out_dir +
                  "/measures.csv --nw-lag 5 --out " + out_dir),
              0, "fit with a fixed NW lag on the scalar backend");

  expect_exit(run(cli + " forecast --measures " + out_dir + "/measures.csv "
                        "--window 60 --out " + out_dir),
              0, "forecast");
  expect_exit(run(cli + " evaluate --forecasts " + out_dir + "/forecasts.csv --out " +
                  out_dir),
              0, "evaluate");

  const std::string dm = capture(cli + " dm-test --forecasts " + out_dir +
                                 "/forecasts.csv --benchmark HAR-J "
                                 "--comparison HAR-J-LE --loss mae");
  expect(dm.find("\"statistic\"") != std::string::npos &&
             dm.find("HAR-J-LE") != std::string::npos,
         "dm-test emits a result for the requested pair");
  expect_exit(run(cli + " dm-test --forecasts " + out_dir + "/forecasts.csv "
                        "--benchmark HAR-J --comparison NOPE --loss mae"),
              3, "dm-test with an unknown model is a data error");
  expect_exit(run(cli + " dm-test --forecasts " + out_dir + "/forecasts.csv "
                        "--benchmark HAR-J --comparison HAR-J-LE --loss l7"),
              2, "unknown loss name is a usage error");

  // config file: values apply, flags win
  {
    const fs::path cfg = root / "config.json";
    std::ofstream out(cfg);
    out << "{\"forecast\": {\"window\": 60, \"out\": \"" << (root / "cfg_out").string()
        << "\"}}\n";
  }
  expect_exit(run(cli + " forecast --config " + (root / "config.json").string() +
                  " --measures " + out_dir + "/measures.csv"),
              0, "config file supplies window and output directory");
  expect(fs::exists(root / "cfg_out" / "forecasts.csv"),
         "config-supplied output directory was used");
  {
    std::ifstream a(fs::path(out_dir) / "forecasts.csv", std::ios::binary);
    std::ifstream b(root / "cfg_out" / "forecasts.csv", std::ios::binary);
    std::ostringstream sa, sb;
    sa << a.rdbuf();
    sb << b.rdbuf();
    expect(sa.str() == sb.str(), "config window matches the flag run");
  }

  // data errors
  expect_exit(run(cli + " describe --measures " + (root / "nope.csv").string()), 3,
              "missing input file is a data error");
  {
    std::ofstream bad(root / "bad.csv");
    bad << "date,rv\n2020-01-02,-1\n";
  }
  expect_exit(run(cli + " describe --measures " + (root / "bad.csv").string()), 3,
              "negative rv is a data error");

  // numerical error: constant rv makes the volatility block collinear
  {
    std::ofstream flat(root / "flat.csv");
    flat << "date,rv,rsv_plus,rsv_minus,bv,ret\n";
    int y = 2015;
    for (int m = 1; m <= 12; ++m) {
      for (int d = 1; d <= 28; ++d) {
        char buf[128];
        std::snprintf(buf, sizeof(buf),
                      "%04d-%02d-%02d,1e-4,5e-5,5e-5,9e-5,0.001\n", y, m, d);
        flat << buf;
      }
    }
  }
  expect_exit(run(cli + " fit --measures " + (root / "flat.csv").string()), 4,
              "collinear design is a numerical error");

  if (failures == 0) {
    std::printf("cli checks: all passed\n");
    return 0;
  }
  std::printf("cli checks: %d FAILED\n", failures);
  return 1;
}
