#include "jgeo/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "jgeo/error.hpp"

namespace jgeo {
namespace {

std::string number(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (unsigned char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (ch < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", ch);
          out += buf;
        } else {
          out += static_cast<char>(ch);
        }
    }
  }
  return out + "\"";
}

// Already-rendered JSON values keyed in sorted order.
using Object = std::map<std::string, std::string>;

std::string render(const Object& obj, int indent) {
  if (obj.empty()) return "{}";
  std::string pad(indent + 2, ' ');
  std::string out = "{\n";
  bool first = true;
  for (const auto& [k, v] : obj) {
    if (!first) out += ",\n";
    first = false;
    out += pad + quoted(k) + ": " + v;
  }
  return out + "\n" + std::string(indent, ' ') + "}";
}

std::string render_array(const std::vector<std::string>& items, int indent) {
  if (items.empty()) return "[]";
  std::string pad(indent + 2, ' ');
  std::string out = "[\n";
  for (std::size_t i = 0; i < items.size(); ++i) {
    out += pad + items[i];
    if (i + 1 < items.size()) out += ",";
    out += "\n";
  }
  return out + std::string(indent, ' ') + "]";
}

std::string optional_number(const std::optional<double>& v) { return v ? number(*v) : "null"; }

}  // namespace

std::string report_json(const DefectReport& r) {
  std::vector<std::string> checks;
  for (const auto& c : r.checks) {
    Object o;
    o["id"] = quoted(c.id);
    o["anchor"] = quoted(c.anchor);
    o["kind"] = quoted(c.kind);
    o["status"] = quoted(c.status);
    o["max_abs_defect"] = number(c.max_abs_defect);
    o["scale"] = number(c.scale);
    o["pass"] = c.pass ? "true" : "false";
    o["gating"] = c.gating ? "true" : "false";
    o["hypothesis_defect"] = optional_number(c.hypothesis_defect);
    o["value"] = optional_number(c.value);
    o["note"] = quoted(c.note);
    checks.push_back(render(o, 4));
  }
  std::vector<std::string> notes;
  for (const auto& n : r.notes) notes.push_back(quoted(n));
  Object top;
  top["tool_version"] = quoted(r.tool_version);
  top["chart_id"] = quoted(r.chart_id);
  top["suite"] = quoted(r.suite);
  top["seed"] = std::to_string(r.seed);
  top["points"] = std::to_string(r.points);
  top["tol_abs"] = number(r.tol.abs);
  top["tol_rel"] = number(r.tol.rel);
  top["notes"] = render_array(notes, 2);
  top["checks"] = render_array(checks, 2);
  top["overall"] = r.overall() ? "true" : "false";
  return render(top, 0) + "\n";
}

std::string report_text(const DefectReport& r) {
  std::ostringstream out;
  out << r.tool_version << "  chart " << r.chart_id << "  suite " << r.suite << "  seed " << r.seed << "  points "
      << r.points << "  tol " << r.tol.abs << " + " << r.tol.rel << "*scale\n";
  for (const auto& n : r.notes) out << "  note: " << n << "\n";
  for (const auto& c : r.checks) {
    char line[160];
    std::snprintf(line, sizeof line, "%-20s %-14s %-38s max %-12.4g", c.status.c_str(), c.kind.c_str(), c.id.c_str(),
                  c.max_abs_defect);
    out << line;
    if (c.hypothesis_defect) out << " hyp " << number(*c.hypothesis_defect);
    if (c.value) out << " value " << number(*c.value);
    out << "\n    " << c.anchor << "\n";
    if (!c.note.empty()) out << "    " << c.note << "\n";
  }
  out << "overall: " << (r.overall() ? "PASS" : "FAIL") << "\n";
  return out.str();
}

std::string render_report(const DefectReport& r, const std::string& format) {
  if (format == "json") return report_json(r);
  if (format == "text") return report_text(r);
  throw UsageError("unknown report format '" + format + "' (json or text)");
}

void emit_report(const DefectReport& r, const std::string& format, const std::string& path) {
  std::string text = render_report(r, format);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write report '" + path + "'");
  out << text;
  out.close();
  if (!out) throw Error("writing report '" + path + "' failed");
}

}  // namespace jgeo
