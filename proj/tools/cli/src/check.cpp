#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>

#include "hfinsler/connection.hpp"
#include "hfinsler/frame.hpp"
#include "hfinsler/oracle.hpp"
#include "hfinsler/randers.hpp"
#include "hfinsler/sampling.hpp"
#include "hfinsler_cli/commands.hpp"

namespace hfinsler::cli {
namespace {

struct Sample {
  Vector3 w;
  RandersParam p;
  Vector3 u;
  Vector3 v;
  Vector3 x;
  Basis3 basis;
  double phi;
};

// Running maximum; NaN sticks so it can never pass.
struct Accum {
  int samples = 0;
  double max_error = 0.0;

  void add(double e) {
    ++samples;
    if (std::isnan(e) || std::isnan(max_error)) {
      max_error = std::numeric_limits<double>::quiet_NaN();
    } else {
      max_error = std::max(max_error, e);
    }
  }
  void violation(bool ok) { add(ok ? 0.0 : 1.0); }
};

using Check = std::function<Accum(const std::vector<Sample>&)>;

struct Invariant {
  std::string name;
  double tolerance;
  Check run;
};

double max_abs(const Vector3& v) { return v.cwiseAbs().maxCoeff(); }

Vector3 rotate_about_z(const Vector3& w, double phi) {
  const double c = std::cos(phi);
  const double s = std::sin(phi);
  return {c * w[0] - s * w[1], s * w[0] + c * w[1], w[2]};
}

// f1..f5 read off an elimination table in the Berwald-Moor frame.
FCoeffs readout(const ConnectionTable& t, double w) {
  return {w * t(0, 0, 2), w * t(1, 0, 2), w * t(2, 0, 1), t(1, 1, 2), t(1, 2, 1)};
}

double fcoeff_diff(const FCoeffs& a, const FCoeffs& b) {
  return std::max({std::abs(a.f1 - b.f1), std::abs(a.f2 - b.f2), std::abs(a.f3 - b.f3),
                   std::abs(a.f4 - b.f4), std::abs(a.f5 - b.f5)});
}

constexpr double kCentralXis[] = {0.1, 0.3, 0.5, 0.7, 0.9};

template <typename F>
Check each(F body) {
  return [body](const std::vector<Sample>& samples) {
    Accum acc;
    for (const Sample& s : samples) body(s, acc);
    return acc;
  };
}

std::vector<Invariant> invariants() {
  std::vector<Invariant> out;
  auto add = [&](std::string name, double tol, Check run) {
    out.push_back({std::move(name), tol, std::move(run)});
  };

  // algebra
  add("algebra.bracket_cross_agreement", 1e-15, each([](const Sample& s, Accum& a) {
        a.add(max_abs(bracket(s.u, s.v) - inner(cross(s.u, s.v), unit_z()) * unit_z()));
      }));
  add("algebra.jacobi", 0.0, each([](const Sample& s, Accum& a) {
        a.add(max_abs(bracket(s.u, bracket(s.v, s.x)) + bracket(s.v, bracket(s.x, s.u)) +
                      bracket(s.x, bracket(s.u, s.v))));
      }));
  add("algebra.triple_product", 1e-12, each([](const Sample& s, Accum& a) {
        a.add(max_abs(cross(cross(s.u, s.v), s.x) - (inner(s.u, s.x) * s.v - inner(s.v, s.x) * s.u)));
      }));

  // randers
  add("randers.metric_spd", 0.0, each([](const Sample& s, Accum& a) {
        const SymMetric3 g = osculating_metric(s.w, s.p);
        a.violation(g.min_eigenvalue() > 0.0 && g.is_positive_definite());
      }));
  add("randers.cartan_reference_slot", 1e-12, each([](const Sample& s, Accum& a) {
        const CartanTensor c = cartan_tensor(s.w, s.p);
        a.add(std::max({std::abs(c.evaluate(s.w, s.u, s.v)), std::abs(c.evaluate(s.u, s.w, s.v)),
                        std::abs(c.evaluate(s.u, s.v, s.w))}));
      }));
  add("randers.cartan_vector_orthogonal_to_reference", 1e-10, each([](const Sample& s, Accum& a) {
        a.add(std::abs(osculating_metric(s.w, s.p).inner(s.w, cartan_vector(s.w, s.p))));
      }));
  add("randers.cartan_vector_center_component", 1e-10, each([](const Sample& s, Accum& a) {
        const SymMetric3 g = osculating_metric(s.w, s.p);
        const auto [x2, x3] = orthonormal_completion(s.w);
        const Matrix3 gi = g.in_basis(Basis3(s.w, x2, x3)).inverse();
        const double expected = (gi(1, 1) + gi(2, 2)) * s.p.xi() * horizontal_norm_squared(s.w);
        const double got = g.inner(cartan_vector(s.w, s.p), unit_z());
        a.add(got > 0.0 ? std::abs(got - expected) : 1.0);
      }));
  add("randers.cartan_vector_commutes_with_reference", 1e-12, each([](const Sample& s, Accum& a) {
        a.add(max_abs(bracket(cartan_vector(s.w, s.p), s.w)));
      }));
  add("randers.orthogonal_complement", 1e-10, each([](const Sample& s, Accum& a) {
        const SymMetric3 g = osculating_metric(s.w, s.p);
        const Matrix3 gm = g.matrix();
        const Vector3 c = cartan_vector(s.w, s.p);
        Vector3 sv = cross(gm * c, gm * s.w);
        sv /= sv.norm();
        a.add(std::max({std::abs(inner(sv, s.p.drift())), std::abs(inner(sv, s.w)),
                        std::abs(g.inner(sv, s.p.drift()))}));
      }));
  add("randers.riemannian_case", 1e-12, each([](const Sample& s, Accum& a) {
        const RandersParam zero(0.0);
        a.add(std::max({(osculating_metric(s.w, zero).matrix() - Matrix3::Identity()).cwiseAbs().maxCoeff(),
                        cartan_tensor(s.w, zero).max_abs(), max_abs(cartan_vector(s.w, zero))}));
      }));

  // oracle
  add("oracle.metric_fd", 1e-6, each([](const Sample& s, Accum& a) {
        const Matrix3 closed = osculating_metric(s.w, s.p).matrix();
        a.add((oracle::metric_fd(s.w, s.p).matrix() - closed).norm() / closed.norm());
      }));
  add("oracle.cartan_fd", 1e-5, each([](const Sample& s, Accum& a) {
        a.add(max_abs_difference(oracle::cartan_fd(s.w, s.p), cartan_tensor(s.w, s.p)));
      }));
  add("oracle.cartan_vector_trace", 1e-5, each([](const Sample& s, Accum& a) {
        const Vector3 closed = cartan_vector(s.w, s.p);
        a.add((oracle::cartan_vector_trace(s.w, s.p) - closed).norm() / closed.norm());
      }));
  add("oracle.trace_basis_independence", 1e-8, each([](const Sample& s, Accum& a) {
        a.add(max_abs(oracle::cartan_vector_trace(s.w, s.p) -
                      oracle::cartan_vector_trace(s.w, s.p, s.basis)));
      }));
  add("oracle.richardson_gain", 0.1, [](const std::vector<Sample>& samples) {
    double on = 0.0;
    double off = 0.0;
    const std::size_t n = std::min<std::size_t>(samples.size(), 50);
    for (std::size_t i = 0; i < n; ++i) {
      const Sample& s = samples[i];
      const CartanTensor closed = cartan_tensor(s.w, s.p);
      on = std::max(on, max_abs_difference(oracle::cartan_fd(s.w, s.p, {5e-3, true}), closed));
      off = std::max(off, max_abs_difference(oracle::cartan_fd(s.w, s.p, {5e-3, false}), closed));
    }
    Accum acc;
    acc.add(on / off);
    acc.samples = static_cast<int>(n);
    return acc;
  });

  // frame
  auto frame_check = [&](std::string name, double tol,
                         std::function<void(const Sample&, const MoorFrame&, Accum&)> body) {
    add(std::move(name), tol, each([body](const Sample& s, Accum& a) {
          body(s, build_frame(s.w, s.p), a);
        }));
  };
  frame_check("frame.orthonormality", 1e-10, [](const Sample& s, const MoorFrame& f, Accum& a) {
    const Matrix3 m = osculating_metric(s.w, s.p).in_basis(f.basis()).matrix();
    a.add((m - Matrix3::Identity()).cwiseAbs().maxCoeff());
  });
  frame_check("frame.reference_drift_relation", 1e-10, [](const Sample& s, const MoorFrame& f, Accum& a) {
    a.add(std::abs(inner(s.w, f.e2) + inner(s.p.drift(), f.e2)));
  });
  frame_check("frame.e3_e2_orthogonal", 1e-10, [](const Sample&, const MoorFrame& f, Accum& a) {
    a.add(std::abs(inner(f.e3, f.e2)));
  });
  frame_check("frame.e3_orthogonality", 1e-10, [](const Sample& s, const MoorFrame& f, Accum& a) {
    a.add(std::max({std::abs(inner(f.e3, s.p.drift())), std::abs(inner(f.e3, s.w)),
                    std::abs(osculating_metric(s.w, s.p).inner(f.e3, s.p.drift()))}));
  });
  frame_check("frame.e2_norm_relation", 1e-10, [](const Sample& s, const MoorFrame& f, Accum& a) {
    const double x0e2 = inner(s.p.drift(), f.e2);
    a.add(std::abs((1.0 + inner(s.p.drift(), s.w)) * (inner(f.e2, f.e2) - x0e2 * x0e2) - 1.0));
  });
  frame_check("frame.e3_norm_relation", 1e-10, [](const Sample& s, const MoorFrame& f, Accum& a) {
    a.add(std::abs(inner(f.e3, f.e3) * (1.0 + inner(s.p.drift(), s.w)) - 1.0));
  });
  frame_check("frame.closed_scalars", 1e-10, [](const Sample& s, const MoorFrame& f, Accum& a) {
    const FrameScalars fs = frame_scalars(f.w_scalar, s.p);
    a.add(std::max({std::abs(f.e2[2] * f.e2[2] - fs.z_e2_squared),
                    std::abs(inner(f.e2, f.e2) - fs.e2_e2),
                    std::abs(inner(s.p.drift(), f.e2) - fs.x0_e2),
                    std::abs(f.w_scalar - osculating_metric(s.w, s.p).norm(s.w))}));
  });
  frame_check("frame.cross_norm", 1e-10, [](const Sample& s, const MoorFrame& f, Accum& a) {
    a.add(std::abs(osculating_metric(s.w, s.p).norm(cross(s.w, f.e2)) - 1.0));
  });
  frame_check("frame.orientation", 0.0, [](const Sample& s, const MoorFrame& f, Accum& a) {
    a.violation(f.e2[2] > 0.0 && f.e3 == cross(s.w, f.e2));
  });
  frame_check("frame.w_scalar_bounds", 0.0, [](const Sample& s, const MoorFrame& f, Accum& a) {
    a.violation(1.0 - s.p.xi() < f.w_scalar && f.w_scalar < 1.0 + s.p.xi());
  });
  frame_check("frame.brackets", 1e-12, [](const Sample& s, const MoorFrame& f, Accum& a) {
    const FrameBrackets b = frame_brackets(f, s.p);
    a.add(std::max(max_abs(b.e3_e1 - bracket(f.e3, f.e1)), max_abs(b.e2_e3 - bracket(f.e2, f.e3))));
  });
  frame_check("frame.cartan_vs_closed", 1e-10, [](const Sample& s, const MoorFrame& f, Accum& a) {
    a.add(max_abs_difference(frame_cartan_components(f, s.p), cartan_tensor(s.w, s.p)));
  });
  frame_check("frame.cartan_vs_fd", 1e-5, [](const Sample& s, const MoorFrame& f, Accum& a) {
    a.add(max_abs_difference(frame_cartan_components(f, s.p), oracle::cartan_fd(s.w, s.p)));
  });

  // connection
  frame_check("connection.closed_vs_algorithm", 1e-9, [](const Sample& s, const MoorFrame& f, Accum& a) {
    a.add(compare_tables(solve_chern_rund(f, s.p), closed_frame_table(f, s.p)).max_abs);
  });
  frame_check("connection.torsion", 1e-9, [](const Sample& s, const MoorFrame& f, Accum& a) {
    a.add(std::max({torsion_residual(solve_chern_rund(f, s.p)),
                    torsion_residual(closed_frame_table(f, s.p)),
                    torsion_residual(solve_chern_rund(s.w, s.p, orthonormalize(s.basis, osculating_metric(s.w, s.p))))}));
  });
  frame_check("connection.almost_metric", 1e-9, [](const Sample& s, const MoorFrame& f, Accum& a) {
    a.add(std::max(almost_metric_residual(solve_chern_rund(f, s.p), s.w, s.p),
                   almost_metric_residual(closed_frame_table(f, s.p), s.w, s.p)));
  });
  frame_check("connection.cartan_source", 1e-9, [](const Sample& s, const MoorFrame& f, Accum& a) {
    a.add(compare_tables(solve_chern_rund(f, s.p), solve_chern_rund(s.w, s.p, f.basis())).max_abs);
  });
  frame_check("connection.basis_independence", 1e-9, [](const Sample& s, const MoorFrame& f, Accum& a) {
    const Basis3 other = orthonormalize(s.basis, osculating_metric(s.w, s.p));
    const Basis3 natural = Basis3::natural();
    a.add(compare_tables(change_basis(solve_chern_rund(f, s.p), natural),
                         change_basis(solve_chern_rund(s.w, s.p, other), natural))
              .max_abs);
  });
  frame_check("connection.change_basis_round_trip", 1e-12, [](const Sample& s, const MoorFrame& f, Accum& a) {
    const ConnectionTable t = solve_chern_rund(f, s.p);
    const ConnectionTable back = change_basis(change_basis(t, Basis3::natural()), f.basis());
    a.add(compare_tables(t, back).max_abs);
  });
  frame_check("connection.reference_derivative_structure", 1e-9,
              [](const Sample& s, const MoorFrame& f, Accum& a) {
                double worst = 0.0;
                for (const ConnectionTable& t : {solve_chern_rund(f, s.p), closed_frame_table(f, s.p)}) {
                  const auto d = reference_derivatives(t, s.w);
                  const Basis3 b = f.basis();
                  const Vector3 d1 = b.coordinates(d[0]);
                  const Vector3 d2 = b.coordinates(d[1]);
                  const Vector3 d3 = b.coordinates(d[2]);
                  worst = std::max({worst, std::abs(d1[0]), std::abs(d1[1]), std::abs(d2[0]),
                                    std::abs(d2[1]), std::abs(d3[0]), std::abs(d3[2])});
                }
                a.add(worst);
              });
  frame_check("connection.fcoeffs_vs_algorithm", 1e-9, [](const Sample& s, const MoorFrame& f, Accum& a) {
    a.add(fcoeff_diff(readout(solve_chern_rund(f, s.p), f.w_scalar), f_coefficients(f, s.p)));
  });
  frame_check("connection.fcoeffs_depend_on_w_only", 1e-10, [](const Sample& s, const MoorFrame& f, Accum& a) {
    const FCoeffs here = f_coefficients(f, s.p);
    const FCoeffs rotated = f_coefficients(build_frame(rotate_about_z(s.w, s.phi), s.p), s.p);
    a.add(std::max(fcoeff_diff(here, rotated), fcoeff_diff(here, f_coefficients(f.w_scalar, s.p))));
  });
  frame_check("connection.f3_law", 0.0, [](const Sample& s, const MoorFrame& f, Accum& a) {
    a.add(std::abs(f_coefficients(f, s.p).f3 - f.w_scalar / 2.0));
  });
  add("connection.unit_w_values", 1e-9, each([](const Sample& s, Accum& a) {
        const Vector3 w{std::cos(s.phi), std::sin(s.phi), 0.0};
        const MoorFrame f = build_frame(w, s.p);
        const FCoeffs read = readout(solve_chern_rund(f, s.p), f.w_scalar);
        const double xi = s.p.xi();
        a.add(std::max({std::abs(read.f1 - xi), std::abs(read.f2 - (0.5 - xi * xi)),
                        std::abs(f.w_scalar - 1.0), fcoeff_diff(read, f_coefficients(1.0, s.p))}));
      }));
  add("connection.central_table", 1e-10, [](const std::vector<Sample>&) {
    Accum acc;
    for (double xi : kCentralXis) {
      const RandersParam p(xi);
      for (CenterSide side : {CenterSide::Positive, CenterSide::Negative}) {
        const Vector3 w = side == CenterSide::Positive ? unit_z() : Vector3(-unit_z());
        const ConnectionTable t = solve_chern_rund(w, p, central_orthonormal_basis(p, side));
        acc.add(std::max({compare_tables(central_table(p, side), t).max_abs, torsion_residual(t),
                          almost_metric_residual(t, w, p)}));
      }
    }
    return acc;
  });
  add("connection.central_metric_and_cartan", 1e-12, [](const std::vector<Sample>&) {
    Accum acc;
    for (double xi : kCentralXis) {
      const RandersParam p(xi);
      Matrix3 expected = Matrix3::Zero();
      expected.diagonal() << xi + 1.0, xi + 1.0, (1.0 + xi) * (1.0 + xi);
      acc.add(std::max({(osculating_metric(unit_z(), p).matrix() - expected).cwiseAbs().maxCoeff(),
                        cartan_tensor(unit_z(), p).max_abs(),
                        max_abs(cartan_vector(unit_z(), p)), max_abs(cartan_vector(-unit_z(), p))}));
    }
    return acc;
  });

  return out;
}

}  // namespace

const std::map<std::string, double>& default_tolerances() {
  static const std::map<std::string, double> table = [] {
    std::map<std::string, double> m;
    for (const Invariant& inv : invariants()) m[inv.name] = inv.tolerance;
    return m;
  }();
  return table;
}

CheckReport run_check(const CheckOptions& opts) {
  if (opts.samples < 1) {
    throw GeometryError(ErrorCode::InvalidParameter, "check needs --samples >= 1");
  }
  const auto& defaults = default_tolerances();
  for (const auto& [name, tol] : opts.tolerance_overrides) {
    if (!defaults.contains(name)) {
      throw GeometryError(ErrorCode::InvalidParameter, "unknown invariant '" + name + "'");
    }
  }

  Sampler sampler(opts.seed);
  std::vector<Sample> samples;
  samples.reserve(static_cast<std::size_t>(opts.samples));
  for (int i = 0; i < opts.samples; ++i) {
    const Vector3 w = sampler.off_center_direction();
    const RandersParam p = sampler.randers();
    const Vector3 u = sampler.cube();
    const Vector3 v = sampler.cube();
    const Vector3 x = sampler.cube();
    const Basis3 basis = sampler.basis();
    const double phi = sampler.uniform(0.0, 2.0 * std::numbers::pi);
    samples.push_back({w, p, u, v, x, basis, phi});
  }

  CheckReport report;
  report.seed = opts.seed;
  report.samples = opts.samples;
  report.pass = true;
  for (const Invariant& inv : invariants()) {
    const auto it = opts.tolerance_overrides.find(inv.name);
    const double tol = it != opts.tolerance_overrides.end() ? it->second : inv.tolerance;
    const Accum acc = inv.run(samples);
    CheckRecord rec{inv.name, acc.samples, acc.max_error, tol, acc.max_error <= tol};
    report.pass = report.pass && rec.pass;
    report.records.push_back(std::move(rec));
  }
  return report;
}

void write_report(const CheckReport& report, std::ostream& out) {
  out << "hfinsler check: samples=" << report.samples << " seed=" << report.seed << '\n';
  out << std::left << std::setw(48) << "invariant" << std::setw(9) << "samples"
      << std::setw(26) << "max_error" << std::setw(26) << "tolerance" << "status\n";
  int passed = 0;
  for (const CheckRecord& r : report.records) {
    out << std::left << std::setw(48) << r.name << std::setw(9) << r.samples << std::setw(26)
        << format_double(r.max_error) << std::setw(26) << format_double(r.tolerance)
        << (r.pass ? "PASS" : "FAIL") << '\n';
    passed += r.pass ? 1 : 0;
  }
  out << "overall: " << (report.pass ? "PASS" : "FAIL") << " (" << passed << '/'
      << report.records.size() << " invariants)\n";
}

}  // namespace hfinsler::cli
