#pragma once

// Structure documents: a chart plus named structures, read from JSON.
//
//   {"chart": {"coords": ["x","y","z"], "box": [[-1,1],[-1,1],[-1,1]], "avoid_zero_margin": 0},
//    "structures": {
//      "eta": {"kind": "one_form", "components": {"dz": "1", "dx": "-y"}},
//      "pi":  {"kind": "bivector", "components": {"x^y": "1"}},
//      "g":   {"kind": "metric", "matrix": [["1+y^2","0","-y"], ...]},
//      "f":   {"kind": "scalar", "expr": "x"}},
//    "claims": ["contact", "connection"]}
//
// Entry names and kinds are fixed: pi bivector, xi vector, lambda/eta/theta
// one_form, omega two_form, g metric, phi endomorphism (row i, column j holds
// Phi^i_j), f scalar. Multi-index keys list strictly increasing coordinates.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "jgeo/chart.hpp"
#include "jgeo/matrix.hpp"
#include "jgeo/tensor.hpp"

namespace jgeo {

struct StructureSet {
  ChartPtr chart;
  std::map<std::string, TensorField> tensors;  // pi, xi, lambda, eta, theta, omega
  std::optional<MatrixField> g;
  std::optional<MatrixField> phi;
  std::optional<ScalarField> f;
  std::vector<std::string> claims;
  std::string id;

  bool has(std::string_view name) const;
  const TensorField& tensor(const std::string& name) const;
};

/// Parses a document held in memory; `id` names the chart in reports when
/// the document has no "id".
StructureSet parse_document(std::string_view json_text, const std::string& id);
StructureSet load_document(const std::string& path);

/// Built-in example documents.
std::vector<std::string> builtin_names();
std::string builtin_text(std::string_view name);
StructureSet load_builtin(std::string_view name);

}  // namespace jgeo
