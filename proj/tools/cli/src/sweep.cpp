#include <cmath>
#include <fstream>
#include <ostream>

#include "hfinsler/connection.hpp"
#include "hfinsler/frame.hpp"
#include "hfinsler_cli/commands.hpp"

namespace hfinsler::cli {
namespace {

std::vector<double> grid(double lo, double hi, double step) {
  const auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-9)) + 1;
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) out.push_back(lo + static_cast<double>(i) * step);
  return out;
}

void invalid(const std::string& what) { throw GeometryError(ErrorCode::InvalidParameter, what); }

}  // namespace

std::vector<SweepRow> sweep_rows(const SweepOptions& o) {
  if (!(o.step > 0.0) || !std::isfinite(o.step)) invalid("--step must be positive");
  if (!(o.xi_min <= o.xi_max) || !(o.theta_min <= o.theta_max)) invalid("ranges must satisfy min <= max");
  if (!(o.xi_min > 0.0) || !(o.xi_max < 1.0)) invalid("xi range must lie inside (0, 1)");
  if (!std::isfinite(o.theta_min) || !std::isfinite(o.theta_max)) invalid("theta range must be finite");

  const std::vector<double> thetas = grid(o.theta_min, o.theta_max, o.step);
  for (double theta : thetas) {
    const double s = std::sin(theta);
    if (s * s < kNearCentralThreshold) {
      invalid("theta grid touches the central band around 0 or pi (theta = " +
              format_double(theta) + ")");
    }
  }

  std::vector<SweepRow> rows;
  for (double xi : grid(o.xi_min, o.xi_max, o.step)) {
    const RandersParam p(xi);
    for (double theta : thetas) {
      const Vector3 w = normalize_reference({std::sin(theta), 0.0, std::cos(theta)});
      const MoorFrame f = build_frame(w, p);
      const FCoeffs fc = f_coefficients(f, p);
      const ConnectionTable solved = solve_chern_rund(f, p);
      const double table_err = compare_tables(solved, closed_frame_table(f, p)).max_abs;
      const double w_s = f.w_scalar;
      const double read_err = std::max({std::abs(w_s * solved(0, 0, 2) - fc.f1),
                                        std::abs(w_s * solved(1, 0, 2) - fc.f2),
                                        std::abs(w_s * solved(2, 0, 1) - fc.f3),
                                        std::abs(solved(1, 1, 2) - fc.f4),
                                        std::abs(solved(1, 2, 1) - fc.f5)});
      rows.push_back({xi, theta, w_s, fc.f1, fc.f2, fc.f3, fc.f4, fc.f5,
                      std::max(table_err, read_err)});
    }
  }
  return rows;
}

void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
  out << "xi,theta,w_scalar,f1,f2,f3,f4,f5,max_crosscheck_err\n";
  for (const SweepRow& r : rows) {
    out << format_double(r.xi) << ',' << format_double(r.theta) << ',' << format_double(r.w_scalar)
        << ',' << format_double(r.f1) << ',' << format_double(r.f2) << ',' << format_double(r.f3)
        << ',' << format_double(r.f4) << ',' << format_double(r.f5) << ','
        << format_double(r.max_crosscheck_err) << '\n';
  }
}

int cmd_sweep(const SweepOptions& opts, std::ostream& err) {
  std::vector<SweepRow> rows;
  try {
    rows = sweep_rows(opts);
  } catch (const GeometryError& e) {
    err << "sweep: " << e.what() << '\n';
    return kExitUsage;
  }
  std::ofstream file(opts.out_path, std::ios::binary | std::ios::trunc);
  if (!file) {
    err << "sweep: cannot open '" << opts.out_path << "' for writing\n";
    return kExitUsage;
  }
  write_sweep_csv(rows, file);
  file.flush();
  if (!file) {
    err << "sweep: write to '" << opts.out_path << "' failed\n";
    return kExitUsage;
  }
  return kExitOk;
}

}  // namespace hfinsler::cli
