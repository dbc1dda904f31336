#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "epidisagg/epicalendar.hpp"

namespace epidisagg {

/// Per-unit monthly value sequence over consecutive calendar months.
struct MonthlySeries {
  std::string unit_id;
  MonthKey start;
  std::vector<double> values;
};

/// Per-unit weekly value sequence over consecutive epi-weeks.
struct WeeklySeries {
  std::string unit_id;
  EpiWeekId start;
  std::vector<double> values;
};

enum class Method { linear, jitter, spline };

/// Disaggregation method plus its parameters. Seed and noise fraction are
/// only meaningful for jitter.
struct MethodKind {
  Method kind = Method::linear;
  std::uint64_t seed = 0;
  double noise_frac = 0.05;

  static MethodKind make_linear() { return MethodKind{Method::linear, 0, 0.0}; }
  static MethodKind make_jitter(std::uint64_t seed, double noise_frac = 0.05) {
    return MethodKind{Method::jitter, seed, noise_frac};
  }
  static MethodKind make_spline() { return MethodKind{Method::spline, 0, 0.0}; }
};

const char* method_name(Method m);
std::optional<Method> method_from_name(std::string_view name);

}  // namespace epidisagg
