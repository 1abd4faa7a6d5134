/**
 * @file core.cpp
 */
#include "bagg/core.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace bagg {

std::string to_string(const Rat& r) {
  std::ostringstream os;
  os << num(r);
  if (den(r) != 1) os << '/' << den(r);
  return os.str();
}

std::string to_decimal_string(const Rat& r, int places) {
  // Round |r| * 10^places to the nearest integer, half away from zero.
  Int scale = 1;
  for (int i = 0; i < places; ++i) scale *= 10;
  Int p = num(r), q = den(r);
  bool neg = p < 0;
  if (neg) p = -p;
  Int scaled = p * scale;
  Int whole = (2 * scaled + q) / (2 * q);  // floor(scaled/q + 1/2)
  Int ip = whole / scale, fp = whole % scale;
  std::ostringstream os;
  if (neg && (ip != 0 || fp != 0)) os << '-';
  os << ip;
  if (places > 0) {
    std::string digits = fp.str();
    os << '.' << std::string(places - static_cast<int>(digits.size()), '0') << digits;
  }
  return os.str();
}

std::optional<Rat> parse_rational(std::string_view text) {
  // Trim surrounding whitespace.
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) return std::nullopt;

  auto is_integer = [](std::string_view s) {
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) s.remove_prefix(1);
    if (s.empty()) return false;
    return std::all_of(s.begin(), s.end(),
                       [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
  };

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    std::string_view ns = text.substr(0, slash), ds = text.substr(slash + 1);
    if (!is_integer(ns) || !is_integer(ds)) return std::nullopt;
    Int d{std::string(ds)};
    if (d == 0) return std::nullopt;
    return Rat(Int{std::string(ns)}, d);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view ws = text.substr(0, dot), fs = text.substr(dot + 1);
    bool neg = !ws.empty() && ws.front() == '-';
    if (ws.empty() || ws == "-" || ws == "+") ws = "0";
    if (fs.empty()) fs = "0";
    std::string wclean{ws};
    if (!is_integer(wclean) || !is_integer(fs)) return std::nullopt;
    Int scale = 1;
    for (size_t i = 0; i < fs.size(); ++i) scale *= 10;
    Int frac_part{std::string(fs)};
    Int total = boost::multiprecision::abs(Int{wclean}) * scale + frac_part;
    if (neg) total = -total;
    return Rat(total, scale);
  }
  if (!is_integer(text)) return std::nullopt;
  return Rat(Int{std::string(text)});
}

Rat sum(const std::vector<Rat>& xs) {
  Rat s = 0;
  for (const Rat& x : xs) s += x;
  return s;
}

Profile validate_profile(const std::vector<std::vector<Rat>>& raw) {
  const int n = static_cast<int>(raw.size());
  if (n < 1) throw ValidationError("profile needs at least one voter");
  const int m = static_cast<int>(raw.front().size());
  if (m < 2) throw ValidationError("profile needs at least two alternatives");
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(raw[i].size()) != m)
      throw ValidationError("row " + std::to_string(i + 1) + " has inconsistent length");
    Rat row_sum = 0;
    for (int j = 0; j < m; ++j) {
      const Rat& v = raw[i][j];
      if (v < 0 || v > 1)
        throw ValidationError("EntryOutOfRange(" + std::to_string(i + 1) + "," +
                              std::to_string(j + 1) + "): " + to_string(v));
      row_sum += v;
    }
    if (row_sum != 1)
      throw ValidationError("RowNotNormalized(" + std::to_string(i + 1) +
                            "): sum " + to_string(row_sum));
  }
  return Profile{n, m, raw};
}

bool is_single_minded(const Profile& p) {
  for (const auto& row : p.votes) {
    bool one_seen = false;
    for (const Rat& v : row) {
      if (v == 1) one_seen = true;
      else if (v != 0) return false;
    }
    if (!one_seen) return false;
  }
  return true;
}

Allocation mean_allocation(const Profile& p) {
  Allocation a;
  a.values.assign(p.m, Rat(0));
  for (int j = 0; j < p.m; ++j) {
    for (int i = 0; i < p.n; ++i) a.values[j] += p.votes[i][j];
    a.values[j] /= p.n;
  }
  return a;
}

LevelVector level_vector(const Profile& p, int k) {
  if (k < 1 || k > p.n) throw DimensionError("LevelOutOfRange: k=" + std::to_string(k));
  LevelVector lv;
  lv.k = k;
  lv.values.reserve(p.m);
  std::vector<Rat> col(p.n);
  for (int j = 0; j < p.m; ++j) {
    for (int i = 0; i < p.n; ++i) col[i] = p.votes[i][j];
    std::sort(col.begin(), col.end());
    lv.values.push_back(col[k - 1]);
  }
  return lv;
}

Rat overlap(const std::vector<Rat>& v, const std::vector<Rat>& w) {
  if (v.size() != w.size()) throw DimensionError("LengthMismatch in overlap");
  Rat s = 0;
  for (size_t j = 0; j < v.size(); ++j) s += std::min(v[j], w[j]);
  return s;
}

Rat utility(const Profile& p, int i, const Allocation& a) {
  if (i < 0 || i >= p.n) throw DimensionError("VoterOutOfRange: " + std::to_string(i));
  return overlap(p.votes[i], a.values);
}

Rat social_welfare(const Profile& p, const Allocation& a) {
  if (static_cast<int>(a.values.size()) != p.m)
    throw DimensionError("DimensionMismatch in social_welfare");
  Rat s = 0;
  for (int i = 0; i < p.n; ++i) s += utility(p, i, a);
  return s;
}

std::pair<Allocation, Rat> welfare_optimal(const Profile& p) {
  // Per-alternative marginal value of budget is a step function: spending inside
  // the level segment [mu^{k-1}_j, mu^k_j) satisfies the n-k+1 voters whose votes
  // are >= mu^k_j, i.e. it earns approval n-k+1 per unit. Greedily fund segments
  // by decreasing approval; ties by lower alternative index.
  std::vector<LevelVector> mu;
  mu.reserve(p.n);
  for (int k = 1; k <= p.n; ++k) mu.push_back(level_vector(p, k));

  struct Segment {
    int approval;  // n-k+1
    int j;
    Rat lo, hi;
  };
  std::vector<Segment> segs;
  for (int j = 0; j < p.m; ++j) {
    Rat prev = 0;
    for (int k = 1; k <= p.n; ++k) {
      const Rat& cur = mu[k - 1].values[j];
      if (cur > prev) segs.push_back({p.n - k + 1, j, prev, cur});
      prev = cur;
    }
  }
  std::stable_sort(segs.begin(), segs.end(), [](const Segment& a, const Segment& b) {
    if (a.approval != b.approval) return a.approval > b.approval;
    return a.j < b.j;
  });

  Allocation a;
  a.values.assign(p.m, Rat(0));
  Rat remaining = 1;
  for (const Segment& s : segs) {
    if (remaining == 0) break;
    Rat len = s.hi - s.lo;
    Rat take = std::min(len, remaining);
    a.values[s.j] += take;
    remaining -= take;
  }
  // Row sums of the profile are 1, so sum_j mu^n_j >= 1 and the budget is always
  // exhausted inside the segments.
  if (remaining != 0) throw Error("welfare_optimal: budget not exhausted (invariant breach)");
  return {a, social_welfare(p, a)};
}

}  // namespace bagg
