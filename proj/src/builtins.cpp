#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "jgeo/document.hpp"
#include "jgeo/error.hpp"

namespace jgeo {
namespace {

const std::vector<std::pair<std::string, std::string>>& registry() {
  static const std::vector<std::pair<std::string, std::string>> docs = {
      {"poisson-r2", R"doc({
  "description": "Symplectic Poisson bivector on the plane with the Euclidean metric",
  "chart": {"coords": ["x", "y"], "box": [[-1, 1], [-1, 1]]},
  "structures": {
    "pi": {"kind": "bivector", "components": {"x^y": "1"}},
    "g": {"kind": "metric", "matrix": [["1", "0"], ["0", "1"]]}
  },
  "claims": ["jacobi", "algebroid", "connection", "compatibility"]
})doc"},
      {"contact-r3", R"doc({
  "description": "Standard contact form dz - y dx with its contact metric structure",
  "chart": {"coords": ["x", "y", "z"], "box": [[-1, 1], [-1, 1], [-1, 1]]},
  "structures": {
    "eta": {"kind": "one_form", "components": {"dz": "1", "dx": "-y"}},
    "xi": {"kind": "vector", "components": {"z": "1"}},
    "phi": {"kind": "endomorphism", "matrix": [["0", "1", "0"], ["-1", "0", "0"], ["0", "y", "0"]]},
    "g": {"kind": "metric", "matrix": [["1+y^2", "0", "-y"], ["0", "1", "0"], ["-y", "0", "1"]]}
  },
  "claims": ["jacobi", "algebroid", "contact", "connection"]
})doc"},
      {"kenmotsu-r3", R"doc({
  "description": "Warped product dt^2 + e^t (dx^2 + dy^2), a 1/2-Kenmotsu structure",
  "chart": {"coords": ["x", "y", "t"], "box": [[-1, 1], [-1, 1], [-1, 1]]},
  "structures": {
    "eta": {"kind": "one_form", "components": {"dt": "1"}},
    "xi": {"kind": "vector", "components": {"t": "1"}},
    "phi": {"kind": "endomorphism", "matrix": [["0", "-1", "0"], ["1", "0", "0"], ["0", "0", "0"]]},
    "g": {"kind": "metric", "matrix": [["exp(t)", "0", "0"], ["0", "exp(t)", "0"], ["0", "0", "1"]]}
  },
  "claims": ["kenmotsu", "connection"]
})doc"},
      {"kenmotsu-alpha1-r3", R"doc({
  "description": "Warped product dt^2 + e^{2t} (dx^2 + dy^2): Kenmotsu, not 1/2-Kenmotsu",
  "chart": {"coords": ["x", "y", "t"], "box": [[-1, 1], [-1, 1], [-1, 1]]},
  "structures": {
    "eta": {"kind": "one_form", "components": {"dt": "1"}},
    "xi": {"kind": "vector", "components": {"t": "1"}},
    "phi": {"kind": "endomorphism", "matrix": [["0", "-1", "0"], ["1", "0", "0"], ["0", "0", "0"]]},
    "g": {"kind": "metric", "matrix": [["exp(2*t)", "0", "0"], ["0", "exp(2*t)", "0"], ["0", "0", "1"]]}
  },
  "claims": ["connection"]
})doc"},
      {"lcs-r4", R"doc({
  "description": "Conformally symplectic e^{-x}(dx^dy + du^dv), theta = dx, Hermitian metric e^{-x} delta",
  "chart": {"coords": ["x", "y", "u", "v"], "box": [[-1, 1], [-1, 1], [-1, 1], [-1, 1]]},
  "structures": {
    "omega": {"kind": "two_form", "components": {"x^y": "exp(-x)", "u^v": "exp(-x)"}},
    "theta": {"kind": "one_form", "components": {"dx": "1"}},
    "g": {"kind": "metric", "matrix": [["exp(-x)", "0", "0", "0"], ["0", "exp(-x)", "0", "0"],
                                       ["0", "0", "exp(-x)", "0"], ["0", "0", "0", "exp(-x)"]]},
    "f": {"kind": "scalar", "expr": "x"}
  },
  "claims": ["jacobi", "algebroid", "lcs", "conformal-kahler", "connection"]
})doc"},
      {"kahler-r4", R"doc({
  "description": "Flat Kaehler structure dx^dy + du^dv with the Euclidean metric",
  "chart": {"coords": ["x", "y", "u", "v"], "box": [[-1, 1], [-1, 1], [-1, 1], [-1, 1]]},
  "structures": {
    "omega": {"kind": "two_form", "components": {"x^y": "1", "u^v": "1"}},
    "g": {"kind": "metric", "matrix": [["1", "0", "0", "0"], ["0", "1", "0", "0"],
                                       ["0", "0", "1", "0"], ["0", "0", "0", "1"]]}
  },
  "claims": ["jacobi", "algebroid", "lcs", "connection", "compatibility", "conformal-kahler"]
})doc"},
      {"jacobi-violate-r3", R"doc({
  "description": "Pair with [pi,pi] = 0 but 2 xi ^ pi != 0: not a Jacobi structure",
  "chart": {"coords": ["x", "y", "z"], "box": [[-1, 1], [-1, 1], [-1, 1]]},
  "structures": {
    "pi": {"kind": "bivector", "components": {"x^y": "1", "y^z": "x"}},
    "xi": {"kind": "vector", "components": {"z": "1"}},
    "lambda": {"kind": "one_form", "components": {}}
  },
  "claims": ["jacobi"]
})doc"},
      {"nonclosed-theta-r4", R"doc({
  "description": "The lcs-r4 form with theta = y dx, which is not closed",
  "chart": {"coords": ["x", "y", "u", "v"], "box": [[-1, 1], [-1, 1], [-1, 1], [-1, 1]]},
  "structures": {
    "omega": {"kind": "two_form", "components": {"x^y": "exp(-x)", "u^v": "exp(-x)"}},
    "theta": {"kind": "one_form", "components": {"dx": "y"}}
  },
  "claims": ["lcs"]
})doc"},
  };
  return docs;
}

}  // namespace

std::vector<std::string> builtin_names() {
  std::vector<std::string> names;
  for (const auto& [name, text] : registry()) names.push_back(name);
  return names;
}

std::string builtin_text(std::string_view name) {
  for (const auto& [n, text] : registry()) {
    if (n == name) return text;
  }
  throw UsageError("unknown builtin '" + std::string(name) + "'");
}

}  // namespace jgeo
