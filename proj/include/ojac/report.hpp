#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ojac/poly.hpp"

namespace ojac {

struct Condition {
  std::string name;
  Poly residual;
  bool pass;
};

/// Outcome of a check. Shape errors (wrong parity, momentum degree, weight)
/// are kept apart from residual failures. Observations are recorded for
/// display only and never affect the verdict.
struct VerificationReport {
  std::string structure;
  std::vector<std::string> shape_errors;
  std::vector<Condition> conditions;
  std::vector<Condition> observations;

  bool verdict() const;

  /// Adds a condition that passes iff the residual is zero.
  void add(std::string name, Poly residual);
  /// Adds a yes/no condition, recorded with residual 0 or 1.
  void add_flag(std::string name, bool ok, const Chart& chart);
  void observe(std::string name, Poly value);
  /// Appends the conditions of `other`, prefixing their names.
  void append(const VerificationReport& other, std::string_view prefix = {});

  const Condition* find(std::string_view name) const;

  std::string str() const;
};

}  // namespace ojac
