#include "bisheaf/json_writer.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace bisheaf {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s(buf);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

namespace {

void indent(std::ostream& out, int depth) {
  for (int i = 0; i < depth; ++i) out << "  ";
}

void write(std::ostream& out, const ordered_json& v, int depth) {
  switch (v.type()) {
    case ordered_json::value_t::object: {
      if (v.empty()) {
        out << "{}";
        return;
      }
      out << "{\n";
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) out << ",\n";
        first = false;
        indent(out, depth + 1);
        out << ordered_json(it.key()).dump() << ": ";
        write(out, it.value(), depth + 1);
      }
      out << "\n";
      indent(out, depth);
      out << "}";
      return;
    }
    case ordered_json::value_t::array: {
      if (v.empty()) {
        out << "[]";
        return;
      }
      out << "[\n";
      bool first = true;
      for (const auto& item : v) {
        if (!first) out << ",\n";
        first = false;
        indent(out, depth + 1);
        write(out, item, depth + 1);
      }
      out << "\n";
      indent(out, depth);
      out << "]";
      return;
    }
    case ordered_json::value_t::number_float: {
      double d = v.get<double>();
      out << (std::isfinite(d) ? format_double(d) : "null");
      return;
    }
    default:
      out << v.dump();
  }
}

}  // namespace

void write_json(std::ostream& out, const ordered_json& value) {
  write(out, value, 0);
  out << "\n";
}

std::string to_json_text(const ordered_json& value) {
  std::ostringstream os;
  write_json(os, value);
  return os.str();
}

}  // namespace bisheaf
