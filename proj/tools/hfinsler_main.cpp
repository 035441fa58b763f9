// hfinsler: Chern-Rund connection of left-invariant Randers metrics on the
// 3-dimensional Heisenberg group.
//
//   hfinsler eval  --xi 0.3 --w 0,0,1 --what connection --basis natural
//   hfinsler check --samples 1000 --seed 42
//   hfinsler sweep --xi 0.1:0.9 --theta 0.2:2.9 --step 0.1 --out f.csv

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hfinsler_cli/commands.hpp"

namespace {

using hfinsler::cli::kExitUsage;

bool parse_vector(const std::string& text, hfinsler::Vector3& out) {
  std::stringstream ss(text);
  std::string item;
  int n = 0;
  while (std::getline(ss, item, ',')) {
    if (n == 3) return false;
    try {
      std::size_t used = 0;
      out[n] = std::stod(item, &used);
      if (used != item.size()) return false;
    } catch (const std::exception&) {
      return false;
    }
    ++n;
  }
  return n == 3;
}

bool parse_range(const std::string& text, double& lo, double& hi) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) return false;
  try {
    std::size_t a = 0;
    std::size_t b = 0;
    const std::string left = text.substr(0, colon);
    const std::string right = text.substr(colon + 1);
    lo = std::stod(left, &a);
    hi = std::stod(right, &b);
    return a == left.size() && b == right.size();
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Chern-Rund connection of left-invariant Randers metrics on the Heisenberg group"};
  app.require_subcommand(1);

  // eval
  auto* eval = app.add_subcommand("eval", "Evaluate one quantity at (W, xi)");
  double xi = 0.0;
  std::string w_text;
  std::string what = "metric";
  std::string basis = "natural";
  std::string format = "json";
  eval->add_option("--xi", xi, "Randers parameter, 0 <= xi < 1")->required();
  eval->add_option("--w", w_text, "Reference vector as x,y,z (normalized automatically)")->required();
  eval->add_option("--what", what, "metric|cartan|cartan-vector|frame|connection|fcoeffs");
  eval->add_option("--basis", basis, "natural|frame");
  eval->add_option("--format", format, "json|csv");

  // check
  auto* check = app.add_subcommand("check", "Run the invariant suite on seeded random samples");
  int samples = 1000;
  std::uint64_t seed = 42;
  std::vector<std::string> overrides;
  check->add_option("--samples", samples, "Random samples per invariant");
  check->add_option("--seed", seed, "Sampler seed");
  check->add_option("--tol", overrides, "Tolerance override NAME=VALUE (repeatable)");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Tabulate f1..f5 over an (xi, theta) grid as CSV");
  std::string xi_range = "0.1:0.9";
  std::string theta_range = "0.1:3.0";
  double step = 0.1;
  std::string out_path;
  sweep->add_option("--xi", xi_range, "xi range lo:hi");
  sweep->add_option("--theta", theta_range, "theta range lo:hi, reference sin(t) X + cos(t) Z");
  sweep->add_option("--step", step, "Grid step for both ranges");
  sweep->add_option("--out", out_path, "Output CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (eval->parsed()) {
    hfinsler::cli::EvalRequest req;
    req.xi = xi;
    const auto q = hfinsler::cli::parse_quantity(what);
    const auto b = hfinsler::cli::parse_basis(basis);
    const auto f = hfinsler::cli::parse_format(format);
    if (!parse_vector(w_text, req.w) || !q || !b || !f) {
      std::cerr << "eval: invalid --w, --what, --basis or --format\n";
      return kExitUsage;
    }
    req.what = *q;
    req.basis = *b;
    req.format = *f;
    return hfinsler::cli::cmd_eval(req, std::cout, std::cerr);
  }

  if (check->parsed()) {
    hfinsler::cli::CheckOptions opts;
    opts.samples = samples;
    opts.seed = seed;
    for (const std::string& o : overrides) {
      const auto eq = o.find('=');
      try {
        if (eq == std::string::npos) throw std::invalid_argument(o);
        opts.tolerance_overrides[o.substr(0, eq)] = std::stod(o.substr(eq + 1));
      } catch (const std::exception&) {
        std::cerr << "check: --tol expects NAME=VALUE, got '" << o << "'\n";
        return kExitUsage;
      }
    }
    try {
      const auto report = hfinsler::cli::run_check(opts);
      hfinsler::cli::write_report(report, std::cout);
      return report.pass ? hfinsler::cli::kExitOk : hfinsler::cli::kExitInvariantFailure;
    } catch (const hfinsler::GeometryError& e) {
      std::cerr << "check: " << e.what() << '\n';
      return kExitUsage;
    }
  }

  hfinsler::cli::SweepOptions opts;
  opts.step = step;
  opts.out_path = out_path;
  if (!parse_range(xi_range, opts.xi_min, opts.xi_max) ||
      !parse_range(theta_range, opts.theta_min, opts.theta_max)) {
    std::cerr << "sweep: ranges must be written lo:hi\n";
    return kExitUsage;
  }
  return hfinsler::cli::cmd_sweep(opts, std::cerr);
}
