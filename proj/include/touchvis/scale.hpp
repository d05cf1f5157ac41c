#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "touchvis/data.hpp"
#include "touchvis/error.hpp"

namespace touchvis {

enum class ScaleKind { Linear, Band, Time };

constexpr std::string_view to_string(ScaleKind k) {
  switch (k) {
    case ScaleKind::Linear: return "linear";
    case ScaleKind::Band: return "band";
    case ScaleKind::Time: return "time";
  }
  return "linear";
}

/// A scale domain: numeric [lo, hi] for linear/time, ordered categories for band.
struct Domain {
  ScaleKind kind = ScaleKind::Linear;
  double lo = 0.0;
  double hi = 1.0;
  std::vector<std::string> categories;

  bool is_band() const { return kind == ScaleKind::Band; }
  friend bool operator==(const Domain&, const Domain&) = default;
};

/// Fraction of the span added on each side of an automatically fitted domain.
inline constexpr double kDomainPadding = 0.05;

inline Domain padded_numeric_domain(ScaleKind kind, double min, double max) {
  if (min == max) {
    const double pad = std::max(std::abs(min) * kDomainPadding, 1.0);
    return {kind, min - pad, max + pad, {}};
  }
  const double pad = (max - min) * kDomainPadding;
  return {kind, min - pad, max + pad, {}};
}

inline ScaleKind scale_kind_for(FieldType t) {
  switch (t) {
    case FieldType::Nominal: return ScaleKind::Band;
    case FieldType::Quantitative: return ScaleKind::Linear;
    case FieldType::Temporal: return ScaleKind::Time;
  }
  return ScaleKind::Linear;
}

/// Maps a domain onto a pixel range [r0, r1]. r1 may be smaller than r0
/// (vertical axes grow upward).
class Scale {
 public:
  Scale() = default;
  Scale(Domain domain, double r0, double r1) : domain_(std::move(domain)), r0_(r0), r1_(r1) {
    if (domain_.is_band()) {
      if (domain_.categories.empty()) throw Error(ErrorCode::EmptyDomain, "band scale without categories");
      auto sorted = domain_.categories;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw Error(ErrorCode::SpecError, "band categories must be distinct");
      }
    } else if (!(domain_.lo < domain_.hi)) {
      throw Error(ErrorCode::EmptyDomain, "numeric domain needs lo < hi");
    }
  }

  ScaleKind kind() const { return domain_.kind; }
  const Domain& domain() const { return domain_; }
  double range_start() const { return r0_; }
  double range_end() const { return r1_; }

  double apply(double v) const { return r0_ + (v - domain_.lo) / (domain_.hi - domain_.lo) * (r1_ - r0_); }
  double invert(double px) const { return domain_.lo + (px - r0_) / (r1_ - r0_) * (domain_.hi - domain_.lo); }

  std::optional<std::size_t> band_index(std::string_view category) const {
    const auto& cats = domain_.categories;
    auto it = std::find(cats.begin(), cats.end(), category);
    if (it == cats.end()) return std::nullopt;
    return static_cast<std::size_t>(it - cats.begin());
  }
  double bandwidth() const { return (r1_ - r0_) / static_cast<double>(domain_.categories.size()); }
  double band_start(std::size_t index) const { return r0_ + bandwidth() * static_cast<double>(index); }
  double band_center(std::size_t index) const { return band_start(index) + bandwidth() / 2.0; }

 private:
  Domain domain_;
  double r0_ = 0.0;
  double r1_ = 1.0;
};

/// Fits a scale to `values`: padded [min, max] for numeric fields, distinct
/// categories in first-appearance order for nominal ones.
inline Scale compute_scale(FieldType type, std::span<const Value> values, double r0, double r1) {
  if (values.empty()) throw Error(ErrorCode::EmptyDomain, "cannot fit a scale to no values");
  if (type == FieldType::Nominal) {
    Domain d{ScaleKind::Band, 0.0, 0.0, {}};
    for (const auto& v : values) {
      const auto& s = std::get<std::string>(v);
      if (std::find(d.categories.begin(), d.categories.end(), s) == d.categories.end()) d.categories.push_back(s);
    }
    return Scale(std::move(d), r0, r1);
  }
  double lo = std::get<double>(values.front());
  double hi = lo;
  for (const auto& v : values) {
    const double x = std::get<double>(v);
    if (!std::isfinite(x)) throw Error(ErrorCode::SpecError, "non-finite value in scale input");
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  return Scale(padded_numeric_domain(scale_kind_for(type), lo, hi), r0, r1);
}

inline Scale compute_scale(FieldType type, std::span<const double> values, double r0, double r1) {
  std::vector<Value> boxed(values.begin(), values.end());
  return compute_scale(type, boxed, r0, r1);
}

}  // namespace touchvis
