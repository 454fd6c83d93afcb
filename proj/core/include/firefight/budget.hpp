#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace firefight {

/// Firefighter supply f(t), t >= 1, and its cumulative sum f*(t).
///
/// Every budget is stored as an explicit finite prefix followed by a
/// periodic tail, which covers constant, periodic, prefix+tail and tabled
/// (sparse, zero elsewhere) supplies.
class Budget {
 public:
  enum class Kind : std::uint8_t { Constant, Periodic, PrefixPeriodic, Table };

  static Budget constant(std::int64_t c);
  static Budget periodic(std::vector<std::int64_t> period);
  static Budget prefix_periodic(std::vector<std::int64_t> prefix, std::vector<std::int64_t> period);
  /// Rounds not listed get zero firefighters.
  static Budget table(std::vector<std::pair<std::int64_t, std::int64_t>> entries);

  /// Parses const:c | periodic:a,b,... | prefix:a,b/c,d | table:t=f,... |
  /// table:<file> (lines "t f", '#' comments).
  static Budget parse(std::string_view spec);

  /// [4, 3 x (m-1)]: f*(t) = 3t + ceil(t/m).
  static Budget containment_default(std::int64_t m);

  Kind kind() const { return kind_; }
  std::int64_t at(std::int64_t t) const;
  std::int64_t cumulative(std::int64_t t) const;

  /// Canonical spec string; parse(describe()) == *this.
  std::string describe() const;

  const std::vector<std::int64_t>& prefix() const { return prefix_; }
  const std::vector<std::int64_t>& period() const { return period_; }

  /// Long-run average over the periodic tail as (sum, length).
  std::pair<std::int64_t, std::int64_t> tail_average() const;

  /// Split supply for the Cartesian reduction:
  /// g(2k-1) = floor(f(k)/2), g(2k) = ceil(f(k)/2).
  Budget split_halves() const;

  friend bool operator==(const Budget&, const Budget&) = default;

 private:
  Budget(Kind kind, std::vector<std::int64_t> prefix, std::vector<std::int64_t> period);

  Kind kind_;
  std::vector<std::int64_t> prefix_;
  std::vector<std::int64_t> period_;
  std::vector<std::int64_t> prefix_sums_;  // prefix_sums_[i] = sum of prefix_[0..i)
  std::vector<std::int64_t> period_sums_;  // same for period_
};

std::int64_t cumulative(const Budget& b, std::int64_t t);

}  // namespace firefight
