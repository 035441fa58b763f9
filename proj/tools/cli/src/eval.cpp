#include <ostream>

#include "hfinsler/connection.hpp"
#include "hfinsler/frame.hpp"
#include "hfinsler/randers.hpp"
#include "hfinsler_cli/commands.hpp"

namespace hfinsler::cli {
namespace {

Json vec(const Vector3& v) { return Json::array({v[0], v[1], v[2]}); }

Json mat(const Matrix3& m) {
  Json out = Json::array();
  for (int i = 0; i < 3; ++i) out.push_back(Json::array({m(i, 0), m(i, 1), m(i, 2)}));
  return out;
}

Json tensor(const CartanTensor& c) {
  Json out = Json::array();
  for (int i = 0; i < 3; ++i) {
    Json slab = Json::array();
    for (int j = 0; j < 3; ++j) slab.push_back(Json::array({c(i, j, 0), c(i, j, 1), c(i, j, 2)}));
    out.push_back(slab);
  }
  return out;
}

Json table(const ConnectionTable& t) {
  Json out = Json::array();
  for (int i = 0; i < 3; ++i) {
    Json slab = Json::array();
    for (int j = 0; j < 3; ++j) slab.push_back(vec(t.row(i, j)));
    out.push_back(slab);
  }
  return out;
}

Json discrepancy(const TableDiscrepancy& d) {
  return Json{{"max_abs", d.max_abs},
              {"component", Json::array({d.i + 1, d.j + 1, d.k + 1})},
              {"algorithm", d.lhs},
              {"closed_form", d.rhs}};
}

Json connection_result(const Vector3& w, const RandersParam& p, OutputBasis basis, Json& result) {
  if (basis == OutputBasis::Frame || (!p.is_riemannian() && !is_central(w))) {
    const MoorFrame f = build_frame(w, p);
    const ConnectionTable solved = solve_chern_rund(f, p);
    result["method"] = "three-stage elimination on Berwald-Moor frame";
    result["crosscheck"] = discrepancy(compare_tables(solved, closed_frame_table(f, p)));
    return table(basis == OutputBasis::Frame ? solved : change_basis(solved, Basis3::natural()));
  }
  if (is_central(w)) {
    const CenterSide side = w[2] > 0.0 ? CenterSide::Positive : CenterSide::Negative;
    const ConnectionTable solved = solve_chern_rund(w, p, central_orthonormal_basis(p, side));
    result["method"] = "three-stage elimination on central orthonormal basis";
    return table(change_basis(solved, Basis3::natural()));
  }
  const Basis3 basis_gs = orthonormalize(Basis3::natural(), osculating_metric(w, p));
  result["method"] = "three-stage elimination on Gram-Schmidt basis";
  return table(change_basis(solve_chern_rund(w, p, basis_gs), Basis3::natural()));
}

void write_csv(const Json& doc, std::ostream& out) {
  const Json& in = doc["input"];
  const Json& result = doc["result"];
  out << "# xi=" << format_double(in["xi"].get<double>()) << " w="
      << format_double(in["w"][0].get<double>()) << ' ' << format_double(in["w"][1].get<double>())
      << ' ' << format_double(in["w"][2].get<double>())
      << " w_scalar=" << format_double(in["w_scalar"].get<double>())
      << " quantity=" << result["quantity"].get<std::string>()
      << " basis=" << result["basis"].get<std::string>();
  for (const auto& flag : doc["flags"]) out << " flag=" << flag.get<std::string>();
  out << '\n';

  const std::string q = result["quantity"].get<std::string>();
  auto num = [](const Json& j) { return format_double(j.get<double>()); };
  if (q == "metric" || q == "frame") {
    const Json m = q == "metric" ? result["components"]
                                 : Json::array({result["e1"], result["e2"], result["e3"]});
    out << "i,j,value\n";
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) out << i + 1 << ',' << j + 1 << ',' << num(m[i][j]) << '\n';
  } else if (q == "cartan" || q == "connection") {
    const Json& t = result[q == "cartan" ? "components" : "gamma"];
    out << "i,j,k,value\n";
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
          out << i + 1 << ',' << j + 1 << ',' << k + 1 << ',' << num(t[i][j][k]) << '\n';
  } else if (q == "cartan-vector") {
    out << "i,value\n";
    for (int i = 0; i < 3; ++i) out << i + 1 << ',' << num(result["vector"][i]) << '\n';
  } else {
    out << "i,value\n";
    for (int i = 0; i < 5; ++i)
      out << i + 1 << ',' << num(result["f" + std::to_string(i + 1)]) << '\n';
  }
}

}  // namespace

std::optional<Quantity> parse_quantity(std::string_view s) {
  if (s == "metric") return Quantity::Metric;
  if (s == "cartan") return Quantity::Cartan;
  if (s == "cartan-vector") return Quantity::CartanVector;
  if (s == "frame") return Quantity::Frame;
  if (s == "connection") return Quantity::Connection;
  if (s == "fcoeffs") return Quantity::FCoeffs;
  return std::nullopt;
}

std::optional<OutputBasis> parse_basis(std::string_view s) {
  if (s == "natural") return OutputBasis::Natural;
  if (s == "frame") return OutputBasis::Frame;
  return std::nullopt;
}

std::optional<Format> parse_format(std::string_view s) {
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  return std::nullopt;
}

std::string_view to_string(Quantity q) {
  switch (q) {
    case Quantity::Metric: return "metric";
    case Quantity::Cartan: return "cartan";
    case Quantity::CartanVector: return "cartan-vector";
    case Quantity::Frame: return "frame";
    case Quantity::Connection: return "connection";
    case Quantity::FCoeffs: return "fcoeffs";
  }
  return "";
}

std::string_view to_string(OutputBasis b) { return b == OutputBasis::Frame ? "frame" : "natural"; }

Json eval_document(const EvalRequest& req) {
  const RandersParam p(req.xi);
  const Vector3 w = normalize_reference(req.w);
  const double w_scalar = 1.0 + p.xi() * w[2];

  Json flags = Json::array();
  if (p.is_riemannian()) flags.push_back("riemannian");
  if (is_central(w)) {
    flags.push_back("central");
  } else if (is_near_central(w)) {
    flags.push_back("near-central");
  }

  Json result{{"quantity", std::string(to_string(req.what))},
              {"basis", std::string(to_string(req.basis))}};
  auto frame_basis = [&] { return build_frame(w, p).basis(); };

  switch (req.what) {
    case Quantity::Metric: {
      const SymMetric3 g = osculating_metric(w, p);
      result["components"] =
          mat(req.basis == OutputBasis::Frame ? g.in_basis(frame_basis()).matrix() : g.matrix());
      break;
    }
    case Quantity::Cartan: {
      const CartanTensor c = cartan_tensor(w, p);
      result["components"] = tensor(req.basis == OutputBasis::Frame ? c.in_basis(frame_basis()) : c);
      break;
    }
    case Quantity::CartanVector: {
      const Vector3 c = cartan_vector(w, p);
      result["vector"] = vec(req.basis == OutputBasis::Frame ? frame_basis().coordinates(c) : c);
      break;
    }
    case Quantity::Frame: {
      const MoorFrame f = build_frame(w, p);
      result["basis"] = "natural";
      result["e1"] = vec(f.e1);
      result["e2"] = vec(f.e2);
      result["e3"] = vec(f.e3);
      result["w_scalar"] = f.w_scalar;
      break;
    }
    case Quantity::Connection:
      result["gamma"] = connection_result(w, p, req.basis, result);
      break;
    case Quantity::FCoeffs: {
      const FCoeffs fc = f_coefficients(build_frame(w, p), p);
      result["basis"] = "frame";
      result["f1"] = fc.f1;
      result["f2"] = fc.f2;
      result["f3"] = fc.f3;
      result["f4"] = fc.f4;
      result["f5"] = fc.f5;
      break;
    }
  }

  return Json{{"input", {{"xi", p.xi()}, {"w", vec(w)}, {"w_scalar", w_scalar}}},
              {"result", result},
              {"flags", flags}};
}

EvalRequest request_from_document(const Json& doc) {
  EvalRequest req;
  const Json& in = doc.at("input");
  req.xi = in.at("xi").get<double>();
  for (int i = 0; i < 3; ++i) req.w[i] = in.at("w").at(i).get<double>();
  const Json& result = doc.at("result");
  req.what = parse_quantity(result.at("quantity").get<std::string>()).value();
  // Frame and fcoeffs documents report the basis their numbers live in, not
  // the requested one; either request reproduces them.
  req.basis = parse_basis(result.at("basis").get<std::string>()).value();
  req.format = Format::Json;
  return req;
}

int cmd_eval(const EvalRequest& req, std::ostream& out, std::ostream& err) {
  Json doc;
  try {
    doc = eval_document(req);
  } catch (const GeometryError& e) {
    err << "eval: " << e.what() << '\n';
    return e.code() == ErrorCode::CentralReference ? kExitDegenerate : kExitUsage;
  }
  if (req.format == Format::Json) {
    out << dump_json(doc);
  } else {
    write_csv(doc, out);
  }
  return kExitOk;
}

}  // namespace hfinsler::cli
