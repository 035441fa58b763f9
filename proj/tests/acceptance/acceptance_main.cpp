// Acceptance gate: one PASS/FAIL line per criterion, exit status 0 iff all
// pass. Usage: hfinsler_acceptance <path-to-hfinsler-executable>
#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "hfinsler/connection.hpp"
#include "hfinsler/frame.hpp"
#include "hfinsler/oracle.hpp"
#include "hfinsler/randers.hpp"
#include "hfinsler/sampling.hpp"

namespace {

using namespace hfinsler;

// Tolerances, fixed here and nowhere else.
constexpr double kCentralTableTol = 1e-10;
constexpr double kCentralMetricTol = 1e-12;
constexpr double kCentralCartanTol = 1e-12;
constexpr double kMutualOracleTol = 1e-9;
constexpr double kMetricFdRelTol = 1e-6;
constexpr double kCartanFdAbsTol = 1e-5;
constexpr double kTraceRelTol = 1e-5;
constexpr double kStructuralTol = 1e-9;
constexpr double kFrameTol = 1e-10;
constexpr double kReadoutTol = 1e-9;
constexpr double kScalarOnlyTol = 1e-10;
constexpr double kDegenerateTol = 1e-12;

constexpr int kMutualSamples = 500;
constexpr int kOracleSamples = 200;
constexpr int kFrameSamples = 500;
constexpr int kCoeffSamples = 200;
constexpr std::array<double, 5> kCentralXis = {0.1, 0.3, 0.5, 0.7, 0.9};

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

double max_abs(const Vector3& v) { return v.cwiseAbs().maxCoeff(); }

// Tables produced by criteria 1 and 2, re-checked structurally by criterion 4.
struct Produced {
  ConnectionTable table;
  Vector3 w;
  RandersParam p;
};
std::vector<Produced> produced;

Outcome central_case() {
  double table = 0.0, metric = 0.0, cartan = 0.0;
  for (double xi : kCentralXis) {
    const RandersParam p(xi);
    for (CenterSide side : {CenterSide::Positive, CenterSide::Negative}) {
      const double k = side == CenterSide::Positive ? 1.0 + xi : 1.0 - xi;
      const Vector3 w = side == CenterSide::Positive ? unit_z() : -unit_z();
      const ConnectionTable t = solve_chern_rund(w, p, central_orthonormal_basis(p, side));
      produced.push_back({t, w, p});
      // The expected entries, written out: half = k / 2.
      ConnectionTable expected(Basis3::natural());
      expected.set_row(0, 1, 0.5 * unit_z());
      expected.set_row(1, 0, -0.5 * unit_z());
      expected.set_row(2, 0, -0.5 * k * unit_y());
      expected.set_row(0, 2, -0.5 * k * unit_y());
      expected.set_row(2, 1, 0.5 * k * unit_x());
      expected.set_row(1, 2, 0.5 * k * unit_x());
      table = std::max(table, compare_tables(expected, change_basis(t, Basis3::natural())).max_abs);
      table = std::max(table, compare_tables(expected, central_table(p, side)).max_abs);
      const Matrix3 g = Vector3(k, k, k * k).asDiagonal();
      metric = std::max(metric, (osculating_metric(w, p).matrix() - g).cwiseAbs().maxCoeff());
      cartan = std::max(cartan, cartan_tensor(w, p).max_abs());
    }
  }
  return {table <= kCentralTableTol && metric <= kCentralMetricTol && cartan <= kCentralCartanTol,
          "table " + fmt(table) + ", metric " + fmt(metric) + ", cartan " + fmt(cartan)};
}

Outcome mutual_oracle() {
  Sampler rng(20260001);
  double worst = 0.0;
  for (int n = 0; n < kMutualSamples; ++n) {
    const Vector3 w = rng.off_center_direction();
    const RandersParam p = rng.randers(0.05, 0.95);
    const MoorFrame f = build_frame(w, p);
    const ConnectionTable closed = closed_frame_table(f, p);
    const ConnectionTable solved = solve_chern_rund(f, p);
    worst = std::max(worst, compare_tables(closed, solved).max_abs);
    produced.push_back({closed, w, p});
    produced.push_back({solved, w, p});
  }
  return {worst <= kMutualOracleTol, std::to_string(kMutualSamples) + " samples, max " + fmt(worst)};
}

Outcome definition_vs_closed() {
  Sampler rng(20260002);
  double metric = 0.0, cartan = 0.0, trace = 0.0;
  for (int n = 0; n < kOracleSamples; ++n) {
    const Vector3 w = rng.off_center_direction();
    const RandersParam p = rng.randers(0.05, 0.95);
    const Matrix3 g = osculating_metric(w, p).matrix();
    metric = std::max(metric, (oracle::metric_fd(w, p).matrix() - g).norm() / g.norm());
    cartan = std::max(cartan, max_abs_difference(cartan_tensor(w, p), oracle::cartan_fd(w, p)));
    const Vector3 c = cartan_vector(w, p);
    trace = std::max(trace, (oracle::cartan_vector_trace(w, p) - c).norm() / c.norm());
  }
  return {metric <= kMetricFdRelTol && cartan <= kCartanFdAbsTol && trace <= kTraceRelTol,
          "metric rel " + fmt(metric) + ", cartan abs " + fmt(cartan) + ", trace rel " + fmt(trace)};
}

Outcome structural() {
  double torsion = 0.0, almost = 0.0;
  for (const Produced& t : produced) {
    torsion = std::max(torsion, torsion_residual(t.table));
    almost = std::max(almost, almost_metric_residual(t.table, t.w, t.p));
  }
  return {!produced.empty() && torsion <= kStructuralTol && almost <= kStructuralTol,
          std::to_string(produced.size()) + " tables, torsion " + fmt(torsion) + ", almost-metric " +
              fmt(almost)};
}

Outcome frame_identities() {
  Sampler rng(20260003);
  double worst = 0.0;
  bool oriented = true;
  for (int n = 0; n < kFrameSamples; ++n) {
    const Vector3 w = rng.off_center_direction();
    const RandersParam p = rng.randers(0.05, 0.95);
    const MoorFrame f = build_frame(w, p);
    const SymMetric3 g = osculating_metric(w, p);
    const Vector3 x0 = p.drift();
    const double a = inner(x0, w);
    const FrameScalars s = frame_scalars(f.w_scalar, p);
    const Matrix3 gram = g.in_basis(f.basis()).matrix();
    const std::array<double, 14> residuals = {
        inner(w, f.e2) + inner(x0, f.e2),
        inner(f.e3, f.e2),
        (1 + a) * (inner(f.e2, f.e2) - inner(x0, f.e2) * inner(x0, f.e2)) - 1.0,
        inner(f.e3, f.e3) * (1 + a) - 1.0,
        s.z_e2_squared - inner(unit_z(), f.e2) * inner(unit_z(), f.e2),
        s.e2_e2 - inner(f.e2, f.e2),
        s.x0_e2 - inner(x0, f.e2),
        g.norm(cross(w, f.e2)) - 1.0,
        inner(f.e3, x0),
        inner(f.e3, w),
        (gram - Matrix3::Identity()).cwiseAbs().maxCoeff(),
        max_abs(f.e3 - cross(w, f.e2)),
        max_abs(frame_brackets(f, p).e3_e1 - bracket(f.e3, f.e1)),
        max_abs(frame_brackets(f, p).e2_e3 - bracket(f.e2, f.e3)),
    };
    for (double r : residuals) worst = std::max(worst, std::abs(r));
    oriented = oriented && inner(unit_z(), f.e2) > 0.0;
  }
  return {worst <= kFrameTol && oriented,
          std::to_string(kFrameSamples) + " samples, max " + fmt(worst) +
              (oriented ? ", <Z,E2> > 0 throughout" : ", <Z,E2> <= 0 seen")};
}

Outcome coefficient_laws() {
  Sampler rng(20260004);
  bool half_exact = true;
  double readout = 0.0, scalar_only = 0.0;
  auto diff = [](const FCoeffs& a, const FCoeffs& b) {
    return std::max({std::abs(a.f1 - b.f1), std::abs(a.f2 - b.f2), std::abs(a.f3 - b.f3),
                     std::abs(a.f4 - b.f4), std::abs(a.f5 - b.f5)});
  };
  for (int n = 0; n < kCoeffSamples; ++n) {
    const RandersParam p = rng.randers(0.05, 0.95);
    const double xi = p.xi();

    // References perpendicular to Z have w = 1.
    const double phi = rng.uniform(0.0, 2.0 * std::numbers::pi);
    const MoorFrame f = build_frame(Vector3(std::cos(phi), std::sin(phi), 0.0), p);
    const ConnectionTable t = solve_chern_rund(f, p);
    readout = std::max({readout, std::abs(f.w_scalar * t(0, 0, 2) - xi),
                        std::abs(f.w_scalar * t(1, 0, 2) - (0.5 - xi * xi))});

    // Two references with the same height share w.
    const double z = rng.uniform(-0.99, 0.99);
    const double r = std::sqrt(1.0 - z * z);
    const double phi2 = rng.uniform(0.0, 2.0 * std::numbers::pi);
    const MoorFrame a = build_frame(normalize_reference({r, 0.0, z}), p);
    const MoorFrame b = build_frame(normalize_reference({r * std::cos(phi2), r * std::sin(phi2), z}), p);
    const FCoeffs fa = f_coefficients(a, p);
    scalar_only = std::max({scalar_only, diff(fa, f_coefficients(b, p)), diff(fa, f_coefficients(a.w_scalar, p))});
    half_exact = half_exact && fa.f3 == a.w_scalar / 2 && f_coefficients(a.w_scalar, p).f3 == a.w_scalar / 2;
  }
  return {half_exact && readout <= kReadoutTol && scalar_only <= kScalarOnlyTol,
          std::string(half_exact ? "f3 = w/2 exact" : "f3 != w/2") + ", w=1 readouts " + fmt(readout) +
              ", (w, xi)-only " + fmt(scalar_only)};
}

Outcome degeneracy() {
  int central_errors = 0;
  double cartan_vec = 0.0, euclid = 0.0, riemann_cartan = 0.0;
  Sampler rng(20260005);
  for (double xi : kCentralXis) {
    const RandersParam p(xi);
    for (const Vector3& w : {unit_z(), Vector3(-unit_z())}) {
      try {
        build_frame(w, p);
      } catch (const GeometryError& e) {
        if (e.code() == ErrorCode::CentralReference) ++central_errors;
      }
      cartan_vec = std::max(cartan_vec, cartan_vector(w, p).norm());
    }
  }
  const RandersParam zero(0.0);
  for (int n = 0; n < 50; ++n) {
    const Vector3 w = rng.direction();
    euclid = std::max(euclid, (osculating_metric(w, zero).matrix() - Matrix3::Identity()).cwiseAbs().maxCoeff());
    riemann_cartan = std::max(riemann_cartan, cartan_tensor(w, zero).max_abs());
  }
  const int expected = static_cast<int>(2 * kCentralXis.size());
  return {central_errors == expected && cartan_vec <= kDegenerateTol && euclid <= kDegenerateTol &&
              riemann_cartan <= kDegenerateTol,
          std::to_string(central_errors) + "/" + std::to_string(expected) + " central rejections, |C| " +
              fmt(cartan_vec) + ", xi=0 metric " + fmt(euclid) + ", xi=0 cartan " + fmt(riemann_cartan)};
}

struct RunResult {
  int status = -1;
  std::string output;
};

RunResult run(const std::string& command) {
  RunResult r;
  FILE* pipe = popen(command.c_str(), "r");
  if (pipe == nullptr) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.output.append(buf.data(), n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

Outcome cli_determinism(const std::string& exe) {
  if (exe.empty()) return {false, "no executable given"};
  const std::string command = "'" + exe + "' check --samples 1000 --seed 42";
  const RunResult a = run(command);
  const RunResult b = run(command);
  const bool same = !a.output.empty() && a.output == b.output;
  return {a.status == 0 && b.status == 0 && same,
          "exit " + std::to_string(a.status) + "/" + std::to_string(b.status) + ", " +
              std::to_string(a.output.size()) + " bytes, " + (same ? "identical" : "different")};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string exe = argc > 1 ? argv[1] : "";
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"central-case exactness", central_case},
      {"mutual oracle, generic references", mutual_oracle},
      {"definition vs closed form", definition_vs_closed},
      {"torsion and almost-metric identities", structural},
      {"frame identities", frame_identities},
      {"coefficient laws", coefficient_laws},
      {"degeneracy handling", degeneracy},
      {"cli determinism", [&] { return cli_determinism(exe); }},
  };
  int failures = 0;
  int index = 0;
  for (const auto& [name, check] : criteria) {
    ++index;
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += o.pass ? 0 : 1;
    std::printf("%s criterion %d: %s (%s)\n", o.pass ? "PASS" : "FAIL", index, name.c_str(), o.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
