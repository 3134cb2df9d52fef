#include "jgeo/expr.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <deque>
#include <limits>
#include <mutex>
#include <unordered_map>
#include <unordered_set>

#include "jgeo/error.hpp"

namespace jgeo {

struct Node {
  Op op;
  int payload;
  double value;
  const Node* a;
  const Node* b;
  std::uint64_t hash;
  std::uint32_t id;
  int max_var;
  mutable std::vector<const Node*> dmemo;  // partial derivative per coordinate
};

namespace {

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  // splitmix64 finalizer over a running combination
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  h ^= h >> 30;
  h *= 0xbf58476d1ce4e5b9ULL;
  h ^= h >> 27;
  h *= 0x94d049bb133111ebULL;
  h ^= h >> 31;
  return h;
}

class Store {
 public:
  static Store& instance() {
    static Store s;
    return s;
  }

  const Node* intern(Op op, int payload, double value, const Node* a, const Node* b) {
    if (value == 0.0) value = 0.0;  // fold -0.0
    std::uint64_t h = mix(static_cast<std::uint64_t>(op), static_cast<std::uint64_t>(payload));
    h = mix(h, std::bit_cast<std::uint64_t>(value));
    h = mix(h, a ? a->hash : 0);
    h = mix(h, b ? b->hash : 0);
    std::lock_guard lock(mu_);
    auto [lo, hi] = index_.equal_range(h);
    for (auto it = lo; it != hi; ++it) {
      const Node* n = it->second;
      if (n->op == op && n->payload == payload && n->a == a && n->b == b &&
          std::bit_cast<std::uint64_t>(n->value) == std::bit_cast<std::uint64_t>(value)) {
        return n;
      }
    }
    int mv = -1;
    if (op == Op::Var) mv = payload;
    if (a) mv = std::max(mv, a->max_var);
    if (b) mv = std::max(mv, b->max_var);
    nodes_.push_back(Node{op, payload, value, a, b, h, static_cast<std::uint32_t>(nodes_.size()), mv, {}});
    const Node* n = &nodes_.back();
    index_.emplace(h, n);
    return n;
  }

  const Node* memo_get(const Node* n, int var) {
    std::lock_guard lock(mu_);
    if (static_cast<std::size_t>(var) < n->dmemo.size()) return n->dmemo[var];
    return nullptr;
  }

  void memo_put(const Node* n, int var, const Node* d) {
    std::lock_guard lock(mu_);
    if (n->dmemo.size() <= static_cast<std::size_t>(var)) n->dmemo.resize(var + 1, nullptr);
    n->dmemo[var] = d;
  }

  std::size_t size() {
    std::lock_guard lock(mu_);
    return nodes_.size();
  }

 private:
  std::mutex mu_;
  std::deque<Node> nodes_;
  std::unordered_multimap<std::uint64_t, const Node*> index_;
};

bool is_unary_fn(Op op) {
  switch (op) {
    case Op::Sin:
    case Op::Cos:
    case Op::Tan:
    case Op::Exp:
    case Op::Log:
    case Op::Sqrt:
    case Op::Sinh:
    case Op::Cosh:
      return true;
    default:
      return false;
  }
}

const char* fn_name(Op op) {
  switch (op) {
    case Op::Sin: return "sin";
    case Op::Cos: return "cos";
    case Op::Tan: return "tan";
    case Op::Exp: return "exp";
    case Op::Log: return "log";
    case Op::Sqrt: return "sqrt";
    case Op::Sinh: return "sinh";
    case Op::Cosh: return "cosh";
    default: return "?";
  }
}

bool node_less(const Node* x, const Node* y) {
  if (x->hash != y->hash) return x->hash < y->hash;
  return x->id < y->id;
}

double ipow(double base, int n) {
  bool inv = n < 0;
  unsigned long long e = inv ? -static_cast<long long>(n) : n;
  double r = 1.0;
  double b = base;
  while (e) {
    if (e & 1ULL) r *= b;
    b *= b;
    e >>= 1;
  }
  return inv ? 1.0 / r : r;
}

}  // namespace

struct Builder {
  static ScalarField wrap(const Node* n) { return ScalarField(n); }
  static const Node* raw(const ScalarField& f) { return f.n_; }
};

namespace {

const Node* intern(Op op, int payload, double value, const Node* a, const Node* b) {
  return Store::instance().intern(op, payload, value, a, b);
}

const Node* cst(double c) { return intern(Op::Const, 0, c, nullptr, nullptr); }

bool is_c(const Node* n) { return n->op == Op::Const; }
bool is_c(const Node* n, double v) { return n->op == Op::Const && n->value == v; }

const Node* b_neg(const Node* a);
const Node* b_add(const Node* a, const Node* b);
const Node* b_sub(const Node* a, const Node* b);
const Node* b_mul(const Node* a, const Node* b);
const Node* b_div(const Node* a, const Node* b);
const Node* b_pow(const Node* a, int n);
const Node* b_fn(Op op, const Node* a);

const Node* b_neg(const Node* a) {
  if (is_c(a)) return cst(-a->value);
  if (a->op == Op::Neg) return a->a;
  if (a->op == Op::Sub) return b_sub(a->b, a->a);
  return intern(Op::Neg, 0, 0.0, a, nullptr);
}

const Node* b_add(const Node* a, const Node* b) {
  if (is_c(a) && is_c(b)) return cst(a->value + b->value);
  if (is_c(a, 0.0)) return b;
  if (is_c(b, 0.0)) return a;
  if (b->op == Op::Neg) return b_sub(a, b->a);
  if (a->op == Op::Neg) return b_sub(b, a->a);
  if (node_less(b, a)) std::swap(a, b);
  return intern(Op::Add, 0, 0.0, a, b);
}

const Node* b_sub(const Node* a, const Node* b) {
  if (is_c(a) && is_c(b)) return cst(a->value - b->value);
  if (a == b) return cst(0.0);
  if (is_c(b, 0.0)) return a;
  if (is_c(a, 0.0)) return b_neg(b);
  if (b->op == Op::Neg) return b_add(a, b->a);
  return intern(Op::Sub, 0, 0.0, a, b);
}

const Node* b_mul(const Node* a, const Node* b) {
  if (is_c(a) && is_c(b)) return cst(a->value * b->value);
  if (is_c(a, 0.0) || is_c(b, 0.0)) return cst(0.0);
  if (is_c(a, 1.0)) return b;
  if (is_c(b, 1.0)) return a;
  if (is_c(a, -1.0)) return b_neg(b);
  if (is_c(b, -1.0)) return b_neg(a);
  if (a->op == Op::Neg && b->op == Op::Neg) return b_mul(a->a, b->a);
  if (a->op == Op::Neg) return b_neg(b_mul(a->a, b));
  if (b->op == Op::Neg) return b_neg(b_mul(a, b->a));
  if (is_c(b)) std::swap(a, b);
  if (is_c(a)) {
    if (a->value < 0.0) return b_neg(b_mul(cst(-a->value), b));
    // c1 * (c2 * x) -> (c1*c2) * x
    if (b->op == Op::Mul && is_c(b->a)) return b_mul(cst(a->value * b->a->value), b->b);
    return intern(Op::Mul, 0, 0.0, a, b);
  }
  if (node_less(b, a)) std::swap(a, b);
  return intern(Op::Mul, 0, 0.0, a, b);
}

const Node* b_div(const Node* a, const Node* b) {
  if (is_c(b, 1.0)) return a;
  if (is_c(a) && is_c(b) && b->value != 0.0) return cst(a->value / b->value);
  if (is_c(a, 0.0) && !is_c(b, 0.0)) return cst(0.0);
  if (is_c(b, -1.0)) return b_neg(a);
  if (a->op == Op::Neg) return b_neg(b_div(a->a, b));
  if (b->op == Op::Neg) return b_neg(b_div(a, b->a));
  return intern(Op::Div, 0, 0.0, a, b);
}

const Node* b_pow(const Node* a, int n) {
  if (n == 0) return cst(1.0);
  if (n == 1) return a;
  if (is_c(a)) {
    if (a->value != 0.0 || n > 0) {
      double v = ipow(a->value, n);
      if (std::isfinite(v)) return cst(v);
    }
  }
  if (a->op == Op::Pow) {
    long long m = static_cast<long long>(a->payload) * n;
    if (m >= std::numeric_limits<int>::min() && m <= std::numeric_limits<int>::max()) {
      return b_pow(a->a, static_cast<int>(m));
    }
  }
  if (a->op == Op::Neg) {
    const Node* p = b_pow(a->a, n);
    return (n % 2 == 0) ? p : b_neg(p);
  }
  return intern(Op::Pow, n, 0.0, a, nullptr);
}

double apply_fn(Op op, double x) {
  switch (op) {
    case Op::Sin: return std::sin(x);
    case Op::Cos: return std::cos(x);
    case Op::Tan: return std::tan(x);
    case Op::Exp: return std::exp(x);
    case Op::Log: return std::log(x);
    case Op::Sqrt: return std::sqrt(x);
    case Op::Sinh: return std::sinh(x);
    case Op::Cosh: return std::cosh(x);
    default: return std::numeric_limits<double>::quiet_NaN();
  }
}

const Node* b_fn(Op op, const Node* a) {
  if (is_c(a)) {
    double x = a->value;
    bool ok = !((op == Op::Log && x <= 0.0) || (op == Op::Sqrt && x < 0.0));
    if (ok) {
      double v = apply_fn(op, x);
      if (std::isfinite(v)) return cst(v);
    }
  }
  return intern(op, 0, 0.0, a, nullptr);
}

const Node* derive(const Node* n, int var);

const Node* derive_uncached(const Node* n, int var) {
  const Node* a = n->a;
  const Node* b = n->b;
  switch (n->op) {
    case Op::Const:
      return cst(0.0);
    case Op::Var:
      return cst(n->payload == var ? 1.0 : 0.0);
    case Op::Add:
      return b_add(derive(a, var), derive(b, var));
    case Op::Sub:
      return b_sub(derive(a, var), derive(b, var));
    case Op::Neg:
      return b_neg(derive(a, var));
    case Op::Mul:
      return b_add(b_mul(derive(a, var), b), b_mul(a, derive(b, var)));
    case Op::Div: {
      const Node* da = derive(a, var);
      const Node* db = derive(b, var);
      // a'/b - a b'/b^2
      return b_sub(b_div(da, b), b_div(b_mul(a, db), b_pow(b, 2)));
    }
    case Op::Pow: {
      const Node* da = derive(a, var);
      return b_mul(b_mul(cst(n->payload), b_pow(a, n->payload - 1)), da);
    }
    case Op::Sin:
      return b_mul(b_fn(Op::Cos, a), derive(a, var));
    case Op::Cos:
      return b_neg(b_mul(b_fn(Op::Sin, a), derive(a, var)));
    case Op::Tan:
      return b_div(derive(a, var), b_pow(b_fn(Op::Cos, a), 2));
    case Op::Exp:
      return b_mul(n, derive(a, var));
    case Op::Log:
      return b_div(derive(a, var), a);
    case Op::Sqrt:
      return b_div(derive(a, var), b_mul(cst(2.0), n));
    case Op::Sinh:
      return b_mul(b_fn(Op::Cosh, a), derive(a, var));
    case Op::Cosh:
      return b_mul(b_fn(Op::Sinh, a), derive(a, var));
  }
  return cst(0.0);
}

const Node* derive(const Node* n, int var) {
  if (n->max_var < var) return cst(0.0);
  Store& s = Store::instance();
  if (const Node* d = s.memo_get(n, var)) return d;
  const Node* d = derive_uncached(n, var);
  s.memo_put(n, var, d);
  return d;
}

// ---------- printing ----------

int precedence(const Node* n) {
  switch (n->op) {
    case Op::Add:
    case Op::Sub:
      return 1;
    case Op::Mul:
    case Op::Div:
      return 2;
    case Op::Neg:
      return 3;
    case Op::Pow:
      return 4;
    default:
      return 5;
  }
}

std::string format_number(double v) {
  std::array<char, 64> buf{};
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

void print(const Node* n, std::span<const std::string> names, std::string& out);

void print_wrapped(const Node* n, int min_prec, std::span<const std::string> names, std::string& out) {
  if (precedence(n) < min_prec) {
    out += '(';
    print(n, names, out);
    out += ')';
  } else {
    print(n, names, out);
  }
}

void print(const Node* n, std::span<const std::string> names, std::string& out) {
  switch (n->op) {
    case Op::Const:
      if (n->value < 0.0) {
        out += "(-" + format_number(-n->value) + ")";
      } else {
        out += format_number(n->value);
      }
      return;
    case Op::Var:
      if (static_cast<std::size_t>(n->payload) < names.size()) {
        out += names[n->payload];
      } else {
        out += "x" + std::to_string(n->payload);
      }
      return;
    case Op::Add:
      print_wrapped(n->a, 1, names, out);
      out += " + ";
      print_wrapped(n->b, 1, names, out);
      return;
    case Op::Sub:
      print_wrapped(n->a, 1, names, out);
      out += " - ";
      print_wrapped(n->b, 2, names, out);
      return;
    case Op::Mul:
      print_wrapped(n->a, 2, names, out);
      out += "*";
      print_wrapped(n->b, 3, names, out);
      return;
    case Op::Div:
      print_wrapped(n->a, 2, names, out);
      out += "/";
      print_wrapped(n->b, 3, names, out);
      return;
    case Op::Neg:
      // '-' binds tighter than '^' in the grammar, so anything but an atom is wrapped
      out += "-";
      print_wrapped(n->a, 5, names, out);
      return;
    case Op::Pow:
      print_wrapped(n->a, 5, names, out);
      out += "^" + std::to_string(n->payload);
      return;
    default:
      out += fn_name(n->op);
      out += "(";
      print(n->a, names, out);
      out += ")";
      return;
  }
}

std::string short_repr(const Node* n) {
  std::string s;
  print(n, {}, s);
  if (s.size() > 160) s = s.substr(0, 157) + "...";
  return s;
}

}  // namespace

// ---------- ScalarField ----------

ScalarField::ScalarField() : n_(cst(0.0)) {}

ScalarField ScalarField::constant(double c) { return ScalarField(cst(c)); }

ScalarField ScalarField::coordinate(int index) {
  if (index < 0) throw DimensionError("negative coordinate index");
  return ScalarField(intern(Op::Var, index, 0.0, nullptr, nullptr));
}

Op ScalarField::op() const noexcept { return n_->op; }
double ScalarField::value() const noexcept { return n_->value; }
int ScalarField::payload() const noexcept { return n_->payload; }
int ScalarField::arity() const noexcept { return n_->b ? 2 : (n_->a ? 1 : 0); }
ScalarField ScalarField::child(int i) const { return ScalarField(i == 0 ? n_->a : n_->b); }
int ScalarField::max_var() const noexcept { return n_->max_var; }
std::uint64_t ScalarField::hash() const noexcept { return n_->hash; }

#define JGEO_RAW(f) Builder::raw(f)
#define JGEO_WRAP(n) Builder::wrap(n)

ScalarField operator+(const ScalarField& a, const ScalarField& b) { return JGEO_WRAP(b_add(JGEO_RAW(a), JGEO_RAW(b))); }
ScalarField operator-(const ScalarField& a, const ScalarField& b) { return JGEO_WRAP(b_sub(JGEO_RAW(a), JGEO_RAW(b))); }
ScalarField operator*(const ScalarField& a, const ScalarField& b) { return JGEO_WRAP(b_mul(JGEO_RAW(a), JGEO_RAW(b))); }
ScalarField operator/(const ScalarField& a, const ScalarField& b) { return JGEO_WRAP(b_div(JGEO_RAW(a), JGEO_RAW(b))); }
ScalarField operator-(const ScalarField& a) { return JGEO_WRAP(b_neg(JGEO_RAW(a))); }

ScalarField operator+(const ScalarField& a, double b) { return a + ScalarField::constant(b); }
ScalarField operator+(double a, const ScalarField& b) { return ScalarField::constant(a) + b; }
ScalarField operator-(const ScalarField& a, double b) { return a - ScalarField::constant(b); }
ScalarField operator-(double a, const ScalarField& b) { return ScalarField::constant(a) - b; }
ScalarField operator*(const ScalarField& a, double b) { return a * ScalarField::constant(b); }
ScalarField operator*(double a, const ScalarField& b) { return ScalarField::constant(a) * b; }
ScalarField operator/(const ScalarField& a, double b) { return a / ScalarField::constant(b); }
ScalarField operator/(double a, const ScalarField& b) { return ScalarField::constant(a) / b; }

ScalarField& operator+=(ScalarField& a, const ScalarField& b) { return a = a + b; }
ScalarField& operator-=(ScalarField& a, const ScalarField& b) { return a = a - b; }
ScalarField& operator*=(ScalarField& a, const ScalarField& b) { return a = a * b; }

ScalarField pow(const ScalarField& base, int exponent) { return JGEO_WRAP(b_pow(JGEO_RAW(base), exponent)); }
ScalarField sin(const ScalarField& a) { return JGEO_WRAP(b_fn(Op::Sin, JGEO_RAW(a))); }
ScalarField cos(const ScalarField& a) { return JGEO_WRAP(b_fn(Op::Cos, JGEO_RAW(a))); }
ScalarField tan(const ScalarField& a) { return JGEO_WRAP(b_fn(Op::Tan, JGEO_RAW(a))); }
ScalarField exp(const ScalarField& a) { return JGEO_WRAP(b_fn(Op::Exp, JGEO_RAW(a))); }
ScalarField log(const ScalarField& a) { return JGEO_WRAP(b_fn(Op::Log, JGEO_RAW(a))); }
ScalarField sqrt(const ScalarField& a) { return JGEO_WRAP(b_fn(Op::Sqrt, JGEO_RAW(a))); }
ScalarField sinh(const ScalarField& a) { return JGEO_WRAP(b_fn(Op::Sinh, JGEO_RAW(a))); }
ScalarField cosh(const ScalarField& a) { return JGEO_WRAP(b_fn(Op::Cosh, JGEO_RAW(a))); }

ScalarField make_unary(Op op, const ScalarField& a) {
  if (op == Op::Neg) return -a;
  if (is_unary_fn(op)) return JGEO_WRAP(b_fn(op, JGEO_RAW(a)));
  throw Error("make_unary: not a unary operator");
}

ScalarField make_binary(Op op, const ScalarField& a, const ScalarField& b) {
  switch (op) {
    case Op::Add: return a + b;
    case Op::Sub: return a - b;
    case Op::Mul: return a * b;
    case Op::Div: return a / b;
    default: throw Error("make_binary: not a binary operator");
  }
}

ScalarField partial(const ScalarField& f, int index) {
  if (index < 0) throw DimensionError("negative coordinate index");
  return JGEO_WRAP(derive(JGEO_RAW(f), index));
}

#undef JGEO_RAW
#undef JGEO_WRAP

// ---------- evaluation ----------

Evaluator::Evaluator(std::span<const double> point) : point_(point.begin(), point.end()) {}

double Evaluator::operator()(const ScalarField& f) {
  if (f.max_var() >= static_cast<int>(point_.size())) {
    throw DimensionError("point has dimension " + std::to_string(point_.size()) +
                         " but the field references coordinate " + std::to_string(f.max_var()));
  }
  return eval(f.node());
}

double Evaluator::eval(const Node* n) {
  switch (n->op) {
    case Op::Const: return n->value;
    case Op::Var: return point_[n->payload];
    default: break;
  }
  if (auto it = cache_.find(n); it != cache_.end()) return it->second;

  double r = 0.0;
  switch (n->op) {
    case Op::Add: r = eval(n->a) + eval(n->b); break;
    case Op::Sub: r = eval(n->a) - eval(n->b); break;
    case Op::Mul: r = eval(n->a) * eval(n->b); break;
    case Op::Div: {
      double num = eval(n->a);
      double den = eval(n->b);
      if (den == 0.0) throw DomainError("division by zero in " + short_repr(n));
      r = num / den;
      break;
    }
    case Op::Pow: {
      double x = eval(n->a);
      if (x == 0.0 && n->payload < 0) throw DomainError("division by zero in " + short_repr(n));
      r = ipow(x, n->payload);
      break;
    }
    case Op::Neg: r = -eval(n->a); break;
    case Op::Log: {
      double x = eval(n->a);
      if (!(x > 0.0)) throw DomainError("log of nonpositive value in " + short_repr(n));
      r = std::log(x);
      break;
    }
    case Op::Sqrt: {
      double x = eval(n->a);
      if (x < 0.0) throw DomainError("sqrt of negative value in " + short_repr(n));
      r = std::sqrt(x);
      break;
    }
    default: r = apply_fn(n->op, eval(n->a)); break;
  }
  cache_.emplace(n, r);
  return r;
}

double eval_scalar(const ScalarField& f, std::span<const double> point) {
  Evaluator ev(point);
  return ev(f);
}

std::string to_string(const ScalarField& f, std::span<const std::string> names) {
  std::string out;
  print(f.node(), names, out);
  return out;
}

std::size_t dag_size(const ScalarField& f) {
  std::unordered_set<const Node*> seen;
  std::vector<const Node*> stack{f.node()};
  while (!stack.empty()) {
    const Node* n = stack.back();
    stack.pop_back();
    if (!seen.insert(n).second) continue;
    if (n->a) stack.push_back(n->a);
    if (n->b) stack.push_back(n->b);
  }
  return seen.size();
}

std::size_t store_size() { return Store::instance().size(); }

}  // namespace jgeo
