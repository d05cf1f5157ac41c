#pragma once

// Reference implementations written independently of the library, used to
// cross-check it in unit and acceptance tests.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

struct Pt {
  double x, y;
};

// Crossing count along a ray going straight up (toward -y), plus an explicit
// boundary check so edge points count as inside.
inline bool inside_polygon(const std::vector<Pt>& poly, Pt p) {
  const std::size_t n = poly.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i) {
    const Pt a = poly[i];
    const Pt b = poly[(i + 1) % n];
    const double c = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
    if (c == 0.0 && std::fmin(a.x, b.x) <= p.x && p.x <= std::fmax(a.x, b.x) && std::fmin(a.y, b.y) <= p.y &&
        p.y <= std::fmax(a.y, b.y)) {
      return true;
    }
  }
  int crossings = 0;
  for (std::size_t i = 0; i < n; ++i) {
    Pt a = poly[i];
    Pt b = poly[(i + 1) % n];
    if (a.x == b.x) continue;  // vertical edges never cross a vertical ray
    if (a.x > b.x) std::swap(a, b);
    if (!(a.x <= p.x && p.x < b.x)) continue;
    const double y_at = a.y + (p.x - a.x) * (b.y - a.y) / (b.x - a.x);
    if (y_at < p.y) ++crossings;
  }
  return crossings % 2 == 1;
}

// Decimal m * 10^e parsed by the C library, so the value is the correctly
// rounded double of that decimal.
inline double decimal(long long m, int e) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%llde%d", m, e);
  return std::strtod(buf, nullptr);
}

struct Step {
  int mantissa;  // 1, 2 or 5
  int exponent;
  double value() const { return decimal(mantissa, exponent); }
  Step next() const {
    if (mantissa == 1) return {2, exponent};
    if (mantissa == 2) return {5, exponent};
    return {1, exponent + 1};
  }
};

// Smallest {1,2,5} x 10^k not below `raw`, found by walking up from far below.
inline Step nice_step(double raw) {
  Step s{1, -20};
  while (s.value() < raw) s = s.next();
  return s;
}

struct Bin {
  double lo, hi;
};

// Edges are integer multiples of the step; widen the step until at most
// target + 1 bins cover [min, max].
inline std::vector<Bin> nice_bins(double min, double max, int target) {
  if (min == max) return {{min, max}};
  Step s = nice_step((max - min) / target);
  for (;;) {
    auto edge = [&](long long k) { return decimal(k * s.mantissa, s.exponent); };
    long long k0 = static_cast<long long>(std::floor(min / s.value())) + 2;
    while (edge(k0) > min) --k0;
    long long k1 = k0 + 1;
    while (edge(k1) < max) ++k1;
    if (k1 - k0 <= target + 1) {
      std::vector<Bin> out;
      for (long long k = k0; k < k1; ++k) out.push_back({edge(k), edge(k + 1)});
      return out;
    }
    s = s.next();
  }
}

inline std::size_t bin_of(const std::vector<Bin>& bins, double v) {
  for (std::size_t i = 0; i + 1 < bins.size(); ++i) {
    if (bins[i].lo <= v && v < bins[i].hi) return i;
  }
  return bins.size() - 1;
}

enum class Op { Count, Sum, Mean, Min, Max, Median };

inline double reduce(Op op, std::vector<double> v) {
  double s = 0;
  for (double x : v) s += x;
  switch (op) {
    case Op::Count: return static_cast<double>(v.size());
    case Op::Sum: return s;
    case Op::Mean: return s / static_cast<double>(v.size());
    case Op::Min: {
      double m = v[0];
      for (double x : v) m = x < m ? x : m;
      return m;
    }
    case Op::Max: {
      double m = v[0];
      for (double x : v) m = x > m ? x : m;
      return m;
    }
    case Op::Median: {
      // Selection sort keeps this deliberately unlike the library's std::sort.
      for (std::size_t i = 0; i < v.size(); ++i) {
        for (std::size_t j = i + 1; j < v.size(); ++j) {
          if (v[j] < v[i]) std::swap(v[i], v[j]);
        }
      }
      const std::size_t n = v.size();
      return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2;
    }
  }
  return 0;
}

// Numeric group-by over explicit bins: result per non-empty bin, ascending.
inline std::vector<double> group_numeric(const std::vector<std::pair<double, double>>& key_value, int target, Op op) {
  double lo = key_value[0].first, hi = lo;
  for (auto [k, _] : key_value) {
    lo = std::fmin(lo, k);
    hi = std::fmax(hi, k);
  }
  const auto bins = nice_bins(lo, hi, target);
  std::vector<std::vector<double>> members(bins.size());
  for (auto [k, v] : key_value) members[bin_of(bins, k)].push_back(v);
  std::vector<double> out;
  for (auto& m : members) {
    if (!m.empty()) out.push_back(reduce(op, m));
  }
  return out;
}

// Nominal group-by: groups in first-appearance order.
inline std::vector<std::pair<std::string, double>> group_nominal(
    const std::vector<std::pair<std::string, double>>& key_value, Op op) {
  std::vector<std::string> order;
  std::map<std::string, std::vector<double>> members;
  for (const auto& [k, v] : key_value) {
    if (!members.count(k)) order.push_back(k);
    members[k].push_back(v);
  }
  std::vector<std::pair<std::string, double>> out;
  for (const auto& k : order) out.push_back({k, reduce(op, members[k])});
  return out;
}

// Auto-fit domain: [min, max] widened by 5% of the span on each side, or by
// max(|v| * 5%, 1) when min == max.
inline std::pair<double, double> padded(double min, double max) {
  if (min == max) {
    const double pad = std::fmax(std::fabs(min) * 0.05, 1.0);
    return {min - pad, max + pad};
  }
  const double pad = (max - min) * 0.05;
  return {min - pad, max + pad};
}

inline bool relative_close(double a, double b, double tol) {
  if (a == b) return true;
  return std::fabs(a - b) <= tol * std::fmax(std::fabs(a), std::fabs(b));
}

}  // namespace oracle
