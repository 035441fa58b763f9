#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hfinsler/algebra.hpp"
#include "hfinsler_cli/json_writer.hpp"

namespace hfinsler::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvariantFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitDegenerate = 3;

enum class Quantity { Metric, Cartan, CartanVector, Frame, Connection, FCoeffs };
enum class OutputBasis { Natural, Frame };
enum class Format { Json, Csv };

std::optional<Quantity> parse_quantity(std::string_view s);
std::optional<OutputBasis> parse_basis(std::string_view s);
std::optional<Format> parse_format(std::string_view s);
std::string_view to_string(Quantity q);
std::string_view to_string(OutputBasis b);

struct EvalRequest {
  double xi = 0.0;
  Vector3 w = unit_z();  // normalized on ingestion
  Quantity what = Quantity::Metric;
  OutputBasis basis = OutputBasis::Natural;
  Format format = Format::Json;
};

/// Builds the JSON result document. Throws GeometryError on invalid input or
/// when a frame-dependent quantity is requested at a degenerate reference.
Json eval_document(const EvalRequest& req);

/// Recovers the request that produced an eval JSON document.
EvalRequest request_from_document(const Json& doc);

/// Writes the document (JSON or CSV) to `out`; diagnostics go to `err`.
/// Returns 0, 2 (invalid input) or 3 (central reference).
int cmd_eval(const EvalRequest& req, std::ostream& out, std::ostream& err);

struct CheckRecord {
  std::string name;
  int samples = 0;
  double max_error = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct CheckReport {
  std::vector<CheckRecord> records;
  bool pass = false;
  std::uint64_t seed = 0;
  int samples = 0;
};

struct CheckOptions {
  int samples = 1000;
  std::uint64_t seed = 42;
  std::map<std::string, double> tolerance_overrides;
};

/// Names of every invariant cmd_check runs, with their default tolerances.
const std::map<std::string, double>& default_tolerances();

/// Runs the invariant suite. Throws GeometryError(InvalidParameter) for
/// samples < 1 or an unknown override name.
CheckReport run_check(const CheckOptions& opts);

void write_report(const CheckReport& report, std::ostream& out);

struct SweepOptions {
  double xi_min = 0.1;
  double xi_max = 0.9;
  double theta_min = 0.1;
  double theta_max = 3.0;
  double step = 0.1;
  std::string out_path;
};

struct SweepRow {
  double xi = 0.0;
  double theta = 0.0;
  double w_scalar = 0.0;
  double f1 = 0.0;
  double f2 = 0.0;
  double f3 = 0.0;
  double f4 = 0.0;
  double f5 = 0.0;
  double max_crosscheck_err = 0.0;
};

/// Grid rows ordered by (xi, theta), references sin(theta) X + cos(theta) Z.
/// Throws GeometryError(InvalidParameter) on malformed ranges.
std::vector<SweepRow> sweep_rows(const SweepOptions& opts);

void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out);

/// Returns 0, or 2 on invalid ranges / unwritable path.
int cmd_sweep(const SweepOptions& opts, std::ostream& err);

}  // namespace hfinsler::cli
