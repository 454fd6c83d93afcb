#include "firefight/budget.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace firefight {

namespace {

std::int64_t parse_int(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw std::invalid_argument("not an integer: '" + std::string(s) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos == std::string_view::npos ? s.size() - start : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::vector<std::int64_t> parse_list(std::string_view s) {
  std::vector<std::int64_t> out;
  for (auto part : split(s, ',')) out.push_back(parse_int(part));
  return out;
}

std::string join(const std::vector<std::int64_t>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  return out;
}

std::vector<std::int64_t> sums(const std::vector<std::int64_t>& v) {
  std::vector<std::int64_t> s(v.size() + 1, 0);
  for (std::size_t i = 0; i < v.size(); ++i) s[i + 1] = s[i] + v[i];
  return s;
}

}  // namespace

Budget::Budget(Kind kind, std::vector<std::int64_t> prefix, std::vector<std::int64_t> period)
    : kind_(kind), prefix_(std::move(prefix)), period_(std::move(period)) {
  if (period_.empty()) throw std::invalid_argument("budget period must be nonempty");
  for (auto v : prefix_) {
    if (v < 0) throw std::invalid_argument("budget values must be nonnegative");
  }
  for (auto v : period_) {
    if (v < 0) throw std::invalid_argument("budget values must be nonnegative");
  }
  prefix_sums_ = sums(prefix_);
  period_sums_ = sums(period_);
}

Budget Budget::constant(std::int64_t c) { return Budget(Kind::Constant, {}, {c}); }

Budget Budget::periodic(std::vector<std::int64_t> period) {
  return Budget(Kind::Periodic, {}, std::move(period));
}

Budget Budget::prefix_periodic(std::vector<std::int64_t> prefix, std::vector<std::int64_t> period) {
  return Budget(Kind::PrefixPeriodic, std::move(prefix), std::move(period));
}

Budget Budget::table(std::vector<std::pair<std::int64_t, std::int64_t>> entries) {
  std::map<std::int64_t, std::int64_t> by_round;
  for (auto [t, f] : entries) {
    if (t < 1) throw std::invalid_argument("table rounds start at 1");
    if (!by_round.emplace(t, f).second) {
      throw std::invalid_argument("duplicate table round " + std::to_string(t));
    }
  }
  std::vector<std::int64_t> prefix;
  if (!by_round.empty()) prefix.assign(static_cast<std::size_t>(by_round.rbegin()->first), 0);
  for (auto [t, f] : by_round) prefix[static_cast<std::size_t>(t - 1)] = f;
  while (!prefix.empty() && prefix.back() == 0) prefix.pop_back();
  return Budget(Kind::Table, std::move(prefix), {0});
}

Budget Budget::containment_default(std::int64_t m) {
  if (m < 1) throw std::invalid_argument("m must be positive");
  std::vector<std::int64_t> period(static_cast<std::size_t>(m), 3);
  period[0] = 4;
  return m == 1 ? constant(4) : periodic(std::move(period));
}

Budget Budget::parse(std::string_view spec) {
  auto colon = spec.find(':');
  if (colon == std::string_view::npos) throw std::invalid_argument("budget spec needs kind:values");
  auto kind = spec.substr(0, colon);
  auto body = spec.substr(colon + 1);
  if (kind == "const") return constant(parse_int(body));
  if (kind == "periodic") return periodic(parse_list(body));
  if (kind == "prefix") {
    auto slash = body.find('/');
    if (slash == std::string_view::npos) throw std::invalid_argument("prefix budget needs prefix/period");
    return prefix_periodic(parse_list(body.substr(0, slash)), parse_list(body.substr(slash + 1)));
  }
  if (kind == "table") {
    std::vector<std::pair<std::int64_t, std::int64_t>> entries;
    if (body.empty()) return table({});
    if (body.find('=') != std::string_view::npos) {
      for (auto item : split(body, ',')) {
        auto eq = item.find('=');
        if (eq == std::string_view::npos) throw std::invalid_argument("table entries are t=f");
        entries.emplace_back(parse_int(item.substr(0, eq)), parse_int(item.substr(eq + 1)));
      }
      return table(std::move(entries));
    }
    std::ifstream in{std::string(body)};
    if (!in) throw std::invalid_argument("cannot open budget table '" + std::string(body) + "'");
    std::string line;
    while (std::getline(in, line)) {
      if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
      std::istringstream ls(line);
      std::int64_t t, f;
      if (ls >> t >> f) entries.emplace_back(t, f);
    }
    return table(std::move(entries));
  }
  throw std::invalid_argument("unknown budget kind '" + std::string(kind) + "'");
}

std::int64_t Budget::at(std::int64_t t) const {
  if (t < 1) throw std::invalid_argument("budget is defined for t >= 1");
  const auto i = static_cast<std::size_t>(t - 1);
  if (i < prefix_.size()) return prefix_[i];
  return period_[(i - prefix_.size()) % period_.size()];
}

std::int64_t Budget::cumulative(std::int64_t t) const {
  if (t < 0) throw std::invalid_argument("cumulative budget needs t >= 0");
  const auto n = static_cast<std::size_t>(t);
  if (n <= prefix_.size()) return prefix_sums_[n];
  const std::size_t rest = n - prefix_.size();
  const std::size_t full = rest / period_.size();
  const std::size_t part = rest % period_.size();
  return prefix_sums_.back() + static_cast<std::int64_t>(full) * period_sums_.back() + period_sums_[part];
}

std::string Budget::describe() const {
  switch (kind_) {
    case Kind::Constant: return "const:" + std::to_string(period_[0]);
    case Kind::Periodic: return "periodic:" + join(period_);
    case Kind::PrefixPeriodic: return "prefix:" + join(prefix_) + "/" + join(period_);
    case Kind::Table: {
      std::string out = "table:";
      bool first = true;
      for (std::size_t i = 0; i < prefix_.size(); ++i) {
        if (prefix_[i] == 0) continue;
        if (!first) out += ',';
        first = false;
        out += std::to_string(i + 1) + "=" + std::to_string(prefix_[i]);
      }
      return out;
    }
  }
  return {};
}

std::pair<std::int64_t, std::int64_t> Budget::tail_average() const {
  return {period_sums_.back(), static_cast<std::int64_t>(period_.size())};
}

Budget Budget::split_halves() const {
  auto halve = [](const std::vector<std::int64_t>& v) {
    std::vector<std::int64_t> out;
    out.reserve(v.size() * 2);
    for (auto f : v) {
      out.push_back(f / 2);
      out.push_back(f - f / 2);
    }
    return out;
  };
  const Kind kind = kind_ == Kind::Constant ? Kind::Periodic : kind_;
  return Budget(kind, halve(prefix_), kind_ == Kind::Table ? period_ : halve(period_));
}

std::int64_t cumulative(const Budget& b, std::int64_t t) { return b.cumulative(t); }

}  // namespace firefight
