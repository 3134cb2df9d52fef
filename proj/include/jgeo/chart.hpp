#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace jgeo {

struct Interval {
  double lo = -1.0;
  double hi = 1.0;
};

using Point = std::vector<double>;

/// A single coordinate chart: coordinate names plus the box that sampling
/// draws from. Points with some |coordinate| < avoid_zero_margin are never
/// sampled (used to keep away from singular loci).
class Chart {
 public:
  /// Empty `box` means [-1,1]^dim.
  explicit Chart(std::vector<std::string> coords, std::vector<Interval> box = {},
                 double avoid_zero_margin = 0.0, std::string id = {});

  int dim() const noexcept { return static_cast<int>(coords_.size()); }
  const std::vector<std::string>& coords() const noexcept { return coords_; }
  const std::vector<Interval>& box() const noexcept { return box_; }
  double avoid_zero_margin() const noexcept { return margin_; }
  const std::string& id() const noexcept { return id_; }
  std::optional<int> index_of(std::string_view name) const;

 private:
  std::vector<std::string> coords_;
  std::vector<Interval> box_;
  double margin_;
  std::string id_;
};

using ChartPtr = std::shared_ptr<const Chart>;

ChartPtr make_chart(std::vector<std::string> coords, std::vector<Interval> box = {},
                    double avoid_zero_margin = 0.0, std::string id = {});

bool is_identifier(std::string_view s);

struct Sampler {
  ChartPtr chart;
  int count = 32;
  std::uint64_t seed = 42;
};

/// `count` points drawn uniformly from the chart box. The sequence depends
/// only on (chart, count, seed).
std::vector<Point> sample_points(const Sampler& s);

/// Deterministic uniform source shared by the sampler and the random-field
/// generators: mt19937_64 with a fixed 53-bit conversion, so sequences are
/// identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  double uniform();                      // [0, 1)
  double uniform(double lo, double hi);  // [lo, hi)
  int integer(int lo, int hi);           // inclusive
  std::uint64_t next();

 private:
  std::mt19937_64 engine_;
};

}  // namespace jgeo
