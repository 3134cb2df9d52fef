#include "jgeo/document.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "jgeo/error.hpp"
#include "jgeo/parse.hpp"
#include "jgeo/suite.hpp"

namespace jgeo {
namespace {

using nlohmann::json;

struct KindInfo {
  const char* name;
  const char* kind;
};

constexpr KindInfo kKinds[] = {
    {"pi", "bivector"},      {"xi", "vector"}, {"lambda", "one_form"},    {"eta", "one_form"},
    {"theta", "one_form"},   {"omega", "two_form"}, {"g", "metric"}, {"phi", "endomorphism"},
    {"f", "scalar"},
};

const char* expected_kind(const std::string& name) {
  for (const auto& k : kKinds) {
    if (name == k.name) return k.kind;
  }
  return nullptr;
}

double number(const json& v, const std::string& where) {
  if (!v.is_number()) throw SchemaError(where + ": expected a number");
  return v.get<double>();
}

ScalarField expression(const json& v, const Chart& chart, const std::string& where) {
  std::string text;
  if (v.is_string()) {
    text = v.get<std::string>();
  } else if (v.is_number()) {
    return ScalarField::constant(v.get<double>());
  } else {
    throw SchemaError(where + ": expected an expression string");
  }
  try {
    return parse_scalar(text, chart);
  } catch (const ParseError& e) {
    throw ParseError(where + ": " + e.detail() + " in \"" + text + "\"", e.position());
  }
}

// Resolves one coordinate token of a component key; forms may write dx,
// vectors may write a leading "∂" or "d/d".
int coordinate_token(std::string tok, const Chart& chart, Slot slot, const std::string& where) {
  const std::string partial_sign = "\xE2\x88\x82";  // U+2202
  if (auto i = chart.index_of(tok)) return *i;
  if (slot == Slot::Down && tok.size() > 1 && tok[0] == 'd') {
    if (auto i = chart.index_of(tok.substr(1))) return *i;
  }
  if (slot == Slot::Up) {
    if (tok.rfind(partial_sign, 0) == 0) tok = tok.substr(partial_sign.size());
    else if (tok.rfind("d/d", 0) == 0) tok = tok.substr(3);
    if (auto i = chart.index_of(tok)) return *i;
  }
  throw DimensionError(where + ": '" + tok + "' is not a coordinate of the " + std::to_string(chart.dim()) +
                       "-dimensional chart");
}

std::vector<int> index_word(const std::string& key, const Chart& chart, Slot slot, int degree,
                            const std::string& where) {
  std::vector<int> idx;
  std::size_t start = 0;
  for (;;) {
    std::size_t hat = key.find('^', start);
    std::string tok = key.substr(start, hat == std::string::npos ? std::string::npos : hat - start);
    tok.erase(0, tok.find_first_not_of(' '));
    tok.erase(tok.find_last_not_of(' ') + 1);
    idx.push_back(coordinate_token(tok, chart, slot, where));
    if (hat == std::string::npos) break;
    start = hat + 1;
  }
  if (static_cast<int>(idx.size()) != degree) {
    throw SchemaError(where + ": key '" + key + "' should name " + std::to_string(degree) + " coordinate(s)");
  }
  for (std::size_t k = 1; k < idx.size(); ++k) {
    if (idx[k - 1] >= idx[k]) throw SchemaError(where + ": key '" + key + "' is not strictly increasing");
  }
  return idx;
}

TensorField components(const json& entry, const ChartPtr& chart, Slot slot, int degree, const std::string& where) {
  if (degree > chart->dim()) {
    throw DimensionError(where + ": degree " + std::to_string(degree) + " exceeds the chart dimension " +
                         std::to_string(chart->dim()));
  }
  auto it = entry.find("components");
  if (it == entry.end() || !it->is_object()) throw SchemaError(where + ": missing \"components\" object");
  std::map<std::vector<int>, ScalarField> values;
  for (const auto& [key, v] : it->items()) {
    std::string kw = where + ".components[" + key + "]";
    auto idx = index_word(key, *chart, slot, degree, kw);
    if (values.count(idx)) throw SchemaError(kw + ": repeated component");
    values[idx] = expression(v, *chart, kw);
  }
  return TensorField::skew_from(chart, slot, degree, values);
}

MatrixField matrix(const json& entry, const ChartPtr& chart, MatrixRole role, const std::string& where) {
  auto it = entry.find("matrix");
  if (it == entry.end() || !it->is_array()) throw SchemaError(where + ": missing \"matrix\" array");
  const int n = chart->dim();
  if (static_cast<int>(it->size()) != n) {
    throw DimensionError(where + ": matrix has " + std::to_string(it->size()) + " rows, chart dimension is " +
                         std::to_string(n));
  }
  std::vector<std::vector<ScalarField>> rows;
  for (int i = 0; i < n; ++i) {
    const json& row = (*it)[i];
    if (!row.is_array()) throw SchemaError(where + ": matrix row " + std::to_string(i) + " is not an array");
    if (static_cast<int>(row.size()) != n) {
      throw DimensionError(where + ": matrix row " + std::to_string(i) + " has " + std::to_string(row.size()) +
                           " entries, chart dimension is " + std::to_string(n));
    }
    std::vector<ScalarField> r;
    for (int j = 0; j < n; ++j) {
      r.push_back(expression(row[j], *chart, where + ".matrix[" + std::to_string(i) + "][" + std::to_string(j) + "]"));
    }
    rows.push_back(std::move(r));
  }
  if (role == MatrixRole::Metric) {
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (!rows[i][j].same(rows[j][i])) {
          throw SchemaError(where + ": metric entries (" + std::to_string(i) + "," + std::to_string(j) +
                            ") and (" + std::to_string(j) + "," + std::to_string(i) + ") differ");
        }
      }
    }
  }
  return MatrixField(chart, std::move(rows), role);
}

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
  for (const auto& [key, v] : obj.items()) {
    bool ok = std::any_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; });
    if (!ok) throw SchemaError(where + ": unknown key \"" + key + "\"");
  }
}

ChartPtr read_chart(const json& doc, const std::string& id) {
  auto it = doc.find("chart");
  if (it == doc.end() || !it->is_object()) throw SchemaError("document: missing \"chart\" object");
  const json& c = *it;
  reject_unknown_keys(c, {"coords", "box", "avoid_zero_margin"}, "chart");
  auto coords_it = c.find("coords");
  if (coords_it == c.end() || !coords_it->is_array()) throw SchemaError("chart: missing \"coords\" array");
  std::vector<std::string> coords;
  for (const auto& v : *coords_it) {
    if (!v.is_string()) throw SchemaError("chart.coords: coordinate names must be strings");
    coords.push_back(v.get<std::string>());
  }
  std::vector<Interval> box;
  if (auto b = c.find("box"); b != c.end()) {
    if (!b->is_array()) throw SchemaError("chart.box: expected an array of [lo, hi] pairs");
    for (std::size_t i = 0; i < b->size(); ++i) {
      const json& iv = (*b)[i];
      std::string w = "chart.box[" + std::to_string(i) + "]";
      if (!iv.is_array() || iv.size() != 2) throw SchemaError(w + ": expected [lo, hi]");
      box.push_back({number(iv[0], w), number(iv[1], w)});
    }
  }
  double margin = 0.0;
  if (auto m = c.find("avoid_zero_margin"); m != c.end()) margin = number(*m, "chart.avoid_zero_margin");
  return make_chart(std::move(coords), std::move(box), margin, id);
}

}  // namespace

bool StructureSet::has(std::string_view name) const {
  if (name == "g") return g.has_value();
  if (name == "phi") return phi.has_value();
  if (name == "f") return f.has_value();
  return tensors.count(std::string(name)) > 0;
}

const TensorField& StructureSet::tensor(const std::string& name) const {
  auto it = tensors.find(name);
  if (it == tensors.end()) throw UsageError("structure '" + name + "' is not defined");
  return it->second;
}

StructureSet parse_document(std::string_view text, const std::string& fallback_id) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("document is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw SchemaError("document: top level must be an object");
  reject_unknown_keys(doc, {"id", "description", "chart", "structures", "claims"}, "document");
  std::string id = fallback_id;
  if (auto it = doc.find("id"); it != doc.end()) {
    if (!it->is_string()) throw SchemaError("document.id: expected a string");
    id = it->get<std::string>();
  }

  StructureSet set;
  set.id = id;
  set.chart = read_chart(doc, id);

  auto st = doc.find("structures");
  if (st == doc.end() || !st->is_object()) throw SchemaError("document: missing \"structures\" object");
  for (const auto& [name, entry] : st->items()) {
    std::string where = "structures." + name;
    const char* want = expected_kind(name);
    if (!want) throw SchemaError(where + ": unknown structure name (expected pi, xi, lambda, eta, theta, omega, g, phi or f)");
    if (!entry.is_object()) throw SchemaError(where + ": expected an object");
    auto k = entry.find("kind");
    if (k == entry.end() || !k->is_string()) throw SchemaError(where + ": missing \"kind\"");
    if (k->get<std::string>() != want) {
      throw SchemaError(where + ": kind must be \"" + std::string(want) + "\", got \"" + k->get<std::string>() + "\"");
    }
    std::string kind = want;
    if (kind == "scalar") {
      reject_unknown_keys(entry, {"kind", "expr"}, where);
      auto e = entry.find("expr");
      if (e == entry.end()) throw SchemaError(where + ": missing \"expr\"");
      set.f = expression(*e, *set.chart, where + ".expr");
    } else if (kind == "metric" || kind == "endomorphism") {
      reject_unknown_keys(entry, {"kind", "matrix"}, where);
      MatrixRole role = kind == "metric" ? MatrixRole::Metric : MatrixRole::Endomorphism;
      MatrixField m = matrix(entry, set.chart, role, where);
      (kind == "metric" ? set.g : set.phi) = std::move(m);
    } else {
      reject_unknown_keys(entry, {"kind", "components"}, where);
      Slot slot = (kind == "vector" || kind == "bivector") ? Slot::Up : Slot::Down;
      int degree = (kind == "bivector" || kind == "two_form") ? 2 : 1;
      set.tensors.emplace(name, components(entry, set.chart, slot, degree, where));
    }
  }

  if (auto cl = doc.find("claims"); cl != doc.end()) {
    if (!cl->is_array()) throw SchemaError("document.claims: expected an array of suite names");
    auto known = suite_names();
    for (const auto& v : *cl) {
      if (!v.is_string()) throw SchemaError("document.claims: suite names must be strings");
      std::string s = v.get<std::string>();
      if (s == "all" || std::find(known.begin(), known.end(), s) == known.end()) {
        throw SchemaError("document.claims: unknown suite \"" + s + "\"");
      }
      set.claims.push_back(s);
    }
  }
  return set;
}

StructureSet load_document(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open document '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string id = path;
  if (auto slash = id.find_last_of('/'); slash != std::string::npos) id = id.substr(slash + 1);
  if (auto dot = id.rfind(".json"); dot != std::string::npos && dot + 5 == id.size()) id = id.substr(0, dot);
  return parse_document(buf.str(), id);
}

StructureSet load_builtin(std::string_view name) { return parse_document(builtin_text(name), std::string(name)); }

}  // namespace jgeo
