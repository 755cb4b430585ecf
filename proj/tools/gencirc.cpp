// SPDX-License-Identifier: Apache-2.0
// gencirc: spectra of generalized circulant matrices from the command line.

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "gencirc/cli.hpp"

namespace {

struct CommonOptions {
  double tol = 1e-9;
  std::string input = "-";
  std::string output = "-";
};

// Opens `path` for reading, "-" meaning standard input.
std::unique_ptr<std::istream> open_input(const std::string& path) {
  if (path == "-") return nullptr;
  auto file = std::make_unique<std::ifstream>(path);
  if (!*file) return nullptr;
  return file;
}

std::optional<std::string> slurp(const std::string& path) {
  std::ifstream file(path);
  if (!file) return std::nullopt;
  std::ostringstream buf;
  buf << file.rdbuf();
  return buf.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Eigendecomposition of generalized circulant matrices"};
  app.require_subcommand(1);

  CommonOptions common;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--tol", common.tol, "relative residual tolerance")->capture_default_str();
    cmd->add_option("--input", common.input, "instance file, '-' for standard input")->capture_default_str();
    cmd->add_option("--output", common.output, "output file, '-' for standard output")->capture_default_str();
  };

  auto* spectrum = app.add_subcommand("spectrum", "print the eigendecomposition of an instance as JSON");
  add_common(spectrum);

  auto* verify = app.add_subcommand("verify", "check a decomposition against dense oracles (exit 2 on failure)");
  add_common(verify);
  std::string cached_spectrum;
  verify->add_option("--spectrum", cached_spectrum, "check this spectrum file instead of recomputing");

  auto* bench = app.add_subcommand("bench", "time the closed forms against the dense oracle (CSV)");
  add_common(bench);
  gencirc::cli::BenchFlags bench_flags;
  bench->add_option("--m-list", bench_flags.m_list, "matrix sizes")->delimiter(',')->required();
  bench->add_option("--case", bench_flags.case_name, "s1 | coprime | divisor | general")->capture_default_str();
  bench->add_option("--trials", bench_flags.trials, "trials per size")->capture_default_str();
  bench->add_option("--seed", bench_flags.seed, "RNG seed")->capture_default_str();
  bench->add_option("--oracle-cap", bench_flags.oracle_cap, "largest m timed against the dense oracle")
      ->capture_default_str();

  auto* example = app.add_subcommand("example", "print a built-in instance");
  add_common(example);
  std::string example_name;
  example->add_option("name", example_name, "worked-3x3 | ramp-5x5-s2 | ramp-9x9-s3")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : gencirc::cli::kUsage;
  }

  std::unique_ptr<std::ofstream> out_file;
  if (common.output != "-") {
    out_file = std::make_unique<std::ofstream>(common.output);
    if (!*out_file) {
      std::cerr << "cannot open " << common.output << " for writing\n";
      return gencirc::cli::kUsage;
    }
  }
  std::ostream& out = out_file ? *out_file : std::cout;

  if (*example) return gencirc::cli::cmd_example(example_name, out, std::cerr);
  if (*bench) return gencirc::cli::cmd_bench(bench_flags, out, std::cerr);

  auto in_file = open_input(common.input);
  if (common.input != "-" && !in_file) {
    std::cerr << "cannot open " << common.input << '\n';
    return gencirc::cli::kUsage;
  }
  std::istream& in = in_file ? *in_file : std::cin;

  if (*spectrum) return gencirc::cli::cmd_spectrum(in, out, std::cerr);

  gencirc::cli::VerifyFlags flags;
  flags.tol = common.tol;
  if (!cached_spectrum.empty()) {
    flags.cached_spectrum = slurp(cached_spectrum);
    if (!flags.cached_spectrum) {
      std::cerr << "cannot open " << cached_spectrum << '\n';
      return gencirc::cli::kUsage;
    }
  }
  return gencirc::cli::cmd_verify(in, out, std::cerr, flags);
}
