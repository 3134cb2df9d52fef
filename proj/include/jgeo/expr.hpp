#pragma once

// Symbolic scalar fields over chart coordinates.
//
// Expressions are hash-consed: structurally equal trees share one node, so a
// ScalarField is a cheap handle and `same()` is structural equality. Nodes are
// owned by a process-wide store and are never freed. Builders fold constants
// and apply a handful of local rewrites (x+0, x*1, --x, ...); there is no
// canonical simplification, identities are checked by evaluation.

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace jgeo {

enum class Op : std::uint8_t {
  Const,
  Var,
  Add,
  Sub,
  Mul,
  Div,
  Pow,
  Neg,
  Sin,
  Cos,
  Tan,
  Exp,
  Log,
  Sqrt,
  Sinh,
  Cosh,
};

struct Node;

class ScalarField {
 public:
  /// The zero field.
  ScalarField();

  static ScalarField constant(double c);
  static ScalarField coordinate(int index);

  Op op() const noexcept;
  /// Constant value; only meaningful when op() == Op::Const.
  double value() const noexcept;
  /// Coordinate index for Op::Var, exponent for Op::Pow.
  int payload() const noexcept;
  int arity() const noexcept;
  ScalarField child(int i) const;

  bool is_constant() const noexcept { return op() == Op::Const; }
  bool is_zero() const noexcept { return is_constant() && value() == 0.0; }
  bool is_one() const noexcept { return is_constant() && value() == 1.0; }

  /// Highest coordinate index referenced, -1 for constants.
  int max_var() const noexcept;
  std::uint64_t hash() const noexcept;
  bool same(const ScalarField& other) const noexcept { return n_ == other.n_; }
  const Node* node() const noexcept { return n_; }

 private:
  explicit ScalarField(const Node* n) : n_(n) {}
  friend struct Builder;
  const Node* n_;
};

ScalarField operator+(const ScalarField& a, const ScalarField& b);
ScalarField operator-(const ScalarField& a, const ScalarField& b);
ScalarField operator*(const ScalarField& a, const ScalarField& b);
ScalarField operator/(const ScalarField& a, const ScalarField& b);
ScalarField operator-(const ScalarField& a);

ScalarField operator+(const ScalarField& a, double b);
ScalarField operator+(double a, const ScalarField& b);
ScalarField operator-(const ScalarField& a, double b);
ScalarField operator-(double a, const ScalarField& b);
ScalarField operator*(const ScalarField& a, double b);
ScalarField operator*(double a, const ScalarField& b);
ScalarField operator/(const ScalarField& a, double b);
ScalarField operator/(double a, const ScalarField& b);

ScalarField& operator+=(ScalarField& a, const ScalarField& b);
ScalarField& operator-=(ScalarField& a, const ScalarField& b);
ScalarField& operator*=(ScalarField& a, const ScalarField& b);

ScalarField pow(const ScalarField& base, int exponent);
ScalarField sin(const ScalarField& a);
ScalarField cos(const ScalarField& a);
ScalarField tan(const ScalarField& a);
ScalarField exp(const ScalarField& a);
ScalarField log(const ScalarField& a);
ScalarField sqrt(const ScalarField& a);
ScalarField sinh(const ScalarField& a);
ScalarField cosh(const ScalarField& a);

/// Builds a node from an operator and its children (used by the parser and
/// by generic tree rewriting). Pow takes the exponent as `payload`.
ScalarField make_unary(Op op, const ScalarField& a);
ScalarField make_binary(Op op, const ScalarField& a, const ScalarField& b);

/// Exact partial derivative with respect to coordinate `index`. Memoized per node.
ScalarField partial(const ScalarField& f, int index);

/// Evaluates many fields at one point, sharing common subexpressions.
class Evaluator {
 public:
  explicit Evaluator(std::span<const double> point);
  double operator()(const ScalarField& f);

 private:
  double eval(const Node* n);
  std::vector<double> point_;
  std::unordered_map<const Node*, double> cache_;
};

/// IEEE double value of `f` at `point`. Throws DomainError naming the
/// offending subexpression, DimensionError if `point` is too short.
double eval_scalar(const ScalarField& f, std::span<const double> point);

/// Text in the expression grammar; `names` supplies coordinate identifiers
/// (defaults to x0, x1, ...). Re-parsing the text yields an equivalent field.
std::string to_string(const ScalarField& f, std::span<const std::string> names = {});

/// Number of distinct nodes in the DAG rooted at `f`.
std::size_t dag_size(const ScalarField& f);

/// Total nodes interned so far in this process.
std::size_t store_size();

}  // namespace jgeo
