#include "hfinsler_cli/json_writer.hpp"

#include <cstdio>

namespace hfinsler::cli {
namespace {

bool is_flat_array(const Json& j) {
  if (!j.is_array()) return false;
  for (const auto& e : j)
    if (e.is_structured()) return false;
  return true;
}

void write(const Json& j, std::string& out, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * depth), ' ');
  const std::string inner_pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  switch (j.type()) {
    case Json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      if (is_flat_array(j)) {
        out += '[';
        bool first = true;
        for (const auto& e : j) {
          if (!first) out += ", ";
          first = false;
          write(e, out, depth + 1);
        }
        out += ']';
        return;
      }
      out += "[\n";
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += ",\n";
        first = false;
        out += inner_pad;
        write(e, out, depth + 1);
      }
      out += '\n' + pad + ']';
      return;
    }
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ",\n";
        first = false;
        out += inner_pad + Json(key).dump() + ": ";
        write(value, out, depth + 1);
      }
      out += '\n' + pad + '}';
      return;
    }
    default:
      out += j.dump();
      return;
  }
}

}  // namespace

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string dump_json(const Json& doc) {
  std::string out;
  write(doc, out, 0);
  out += '\n';
  return out;
}

}  // namespace hfinsler::cli
