#include "jgeo/chart.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>

#include "jgeo/error.hpp"

namespace jgeo {

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  auto head = static_cast<unsigned char>(s.front());
  if (!(std::isalpha(head) || head == '_')) return false;
  return std::all_of(s.begin() + 1, s.end(), [](char c) {
    auto u = static_cast<unsigned char>(c);
    return std::isalnum(u) || u == '_';
  });
}

Chart::Chart(std::vector<std::string> coords, std::vector<Interval> box, double avoid_zero_margin,
             std::string id)
    : coords_(std::move(coords)), box_(std::move(box)), margin_(avoid_zero_margin), id_(std::move(id)) {
  if (coords_.empty()) throw DimensionError("chart needs at least one coordinate");
  std::set<std::string> seen;
  for (const auto& c : coords_) {
    if (!is_identifier(c)) throw SchemaError("invalid coordinate name '" + c + "'");
    if (!seen.insert(c).second) throw SchemaError("duplicate coordinate name '" + c + "'");
  }
  if (box_.empty()) box_.assign(coords_.size(), Interval{});
  if (box_.size() != coords_.size()) {
    throw DimensionError("box has " + std::to_string(box_.size()) + " intervals for " +
                         std::to_string(coords_.size()) + " coordinates");
  }
  for (std::size_t i = 0; i < box_.size(); ++i) {
    const auto& iv = box_[i];
    if (!(iv.lo <= iv.hi) || !std::isfinite(iv.lo) || !std::isfinite(iv.hi)) {
      throw SchemaError("empty box interval for coordinate '" + coords_[i] + "'");
    }
  }
  if (!(margin_ >= 0.0)) throw SchemaError("avoid_zero_margin must be nonnegative");
}

std::optional<int> Chart::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (coords_[i] == name) return static_cast<int>(i);
  }
  return std::nullopt;
}

ChartPtr make_chart(std::vector<std::string> coords, std::vector<Interval> box, double avoid_zero_margin,
                    std::string id) {
  return std::make_shared<const Chart>(std::move(coords), std::move(box), avoid_zero_margin, std::move(id));
}

// mt19937_64 is fully specified by the standard; only the real conversion is ours.
Rng::Rng(std::uint64_t seed) : engine_(seed) {}

std::uint64_t Rng::next() { return engine_(); }

double Rng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

int Rng::integer(int lo, int hi) {
  auto span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<int>(next() % span);
}

std::vector<Point> sample_points(const Sampler& s) {
  if (!s.chart) throw UsageError("sampler has no chart");
  if (s.count < 0) throw UsageError("negative sample count");
  const Chart& chart = *s.chart;
  const double margin = chart.avoid_zero_margin();
  for (const auto& iv : chart.box()) {
    if (!(iv.lo <= iv.hi)) throw SchemaError("empty box");
    if (margin > 0.0 && -margin <= iv.lo && iv.hi <= margin) {
      throw SchemaError("box interval lies inside the excluded margin around zero");
    }
  }
  Rng rng(s.seed);
  std::vector<Point> pts;
  pts.reserve(s.count);
  for (int k = 0; k < s.count; ++k) {
    Point p(chart.dim());
    for (int i = 0; i < chart.dim(); ++i) {
      const auto& iv = chart.box()[i];
      double v = rng.uniform(iv.lo, iv.hi);
      int tries = 0;
      while (margin > 0.0 && std::abs(v) < margin) {
        if (++tries > 10000) throw SchemaError("cannot sample outside the excluded margin");
        v = rng.uniform(iv.lo, iv.hi);
      }
      p[i] = v;
    }
    pts.push_back(std::move(p));
  }
  return pts;
}

}  // namespace jgeo
