#pragma once

#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bsz {

// One empirically checked inequality: lhs against an envelope with implied
// constant 1. For exact identities lhs is the observed deviation, envelope
// the tolerance, and passed is set.
struct BoundReport {
  std::string name;
  double lhs = 0.0;
  double envelope = 0.0;
  double ratio = 0.0;
  std::vector<std::pair<std::string, double>> params;
  std::optional<bool> passed;

  double param(std::string_view key) const {
    for (const auto& [k, v] : params) {
      if (k == key) return v;
    }
    return std::numeric_limits<double>::quiet_NaN();
  }
};

inline BoundReport make_report(std::string name, double lhs, double envelope,
                               std::vector<std::pair<std::string, double>> params = {}) {
  BoundReport r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.envelope = envelope;
  r.ratio = envelope != 0.0 ? lhs / envelope : std::numeric_limits<double>::infinity();
  r.params = std::move(params);
  return r;
}

inline BoundReport make_identity_report(std::string name, double deviation, double tolerance,
                                        std::vector<std::pair<std::string, double>> params = {}) {
  BoundReport r = make_report(std::move(name), deviation, tolerance, std::move(params));
  r.passed = deviation < tolerance;
  return r;
}

}  // namespace bsz
