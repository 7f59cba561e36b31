// Built-in sets with exact parametrizations, and the experiment runner
// that enumerates, covers and verifies them over a range of height bounds.
#pragma once

#include "ratcover/certificate.hpp"
#include "ratcover/cover.hpp"
#include "ratcover/enumerate.hpp"
#include "ratcover/parametrize.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ratcover {

struct BuiltinSet {
  std::string name;
  std::string description;
  unsigned default_e = 2;
  /// Absent for sets without an exact chart (powers-ab).
  std::optional<StrongParam> chart;
  MembershipPredicate predicate;
};

/// parabola, circle-arc, cubic, affine, lambda-line, powers-ab.
std::vector<std::string> builtin_names();
/// Throws on an unknown name. Charts come uncertified.
BuiltinSet builtin(const std::string& name);

/// Certifies the chart at the order k = b(m,n,e) + 1 with bound 1.
StrongParam certified_chart(const BuiltinSet& set, unsigned e);

struct ExperimentSpec {
  std::string name;
  unsigned e = 0;  ///< 0 selects the set's default
  std::vector<Integer> heights;
  JMode mode = JMode::Auto;
};

struct ExperimentRow {
  Integer T;
  std::size_t points = 0;
  std::optional<std::size_t> hypersurfaces;
  std::optional<Integer> bound;
  std::optional<bool> verified;
  std::string verify_message;
  std::size_t violations = 0;
  /// powers-ab: points off the fibres c^q = a^p for b = p/q (always 0).
  std::optional<std::size_t> transcendental;
  /// lambda-line: points whose projection misses y = sqrt(2) x (always 0).
  std::optional<std::size_t> off_target;
  std::vector<std::string> hypersurface_lines;
  std::string certificate;
  std::string preimages;
};

std::vector<ExperimentRow> run_experiment(const ExperimentSpec& spec);
std::string format_experiment_table(const ExperimentSpec& spec, const std::vector<ExperimentRow>& rows);

}  // namespace ratcover
