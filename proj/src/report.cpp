#include "ojac/report.hpp"

#include <algorithm>
#include <sstream>

namespace ojac {

bool VerificationReport::verdict() const {
  return shape_errors.empty() && std::all_of(conditions.begin(), conditions.end(), [](const Condition& c) { return c.pass; });
}

void VerificationReport::add(std::string name, Poly residual) {
  const bool ok = residual.is_zero();
  conditions.push_back({std::move(name), std::move(residual), ok});
}

void VerificationReport::add_flag(std::string name, bool ok, const Chart& chart) {
  conditions.push_back({std::move(name), ok ? Poly(chart) : Poly::constant(chart, 1), ok});
}

void VerificationReport::observe(std::string name, Poly value) {
  observations.push_back({std::move(name), std::move(value), true});
}

void VerificationReport::append(const VerificationReport& other, std::string_view prefix) {
  const std::string p(prefix);
  for (const auto& e : other.shape_errors) shape_errors.push_back(p + e);
  for (const auto& c : other.conditions) conditions.push_back({p + c.name, c.residual, c.pass});
  for (const auto& c : other.observations) observations.push_back({p + c.name, c.residual, c.pass});
}

const Condition* VerificationReport::find(std::string_view name) const {
  for (const auto& c : conditions)
    if (c.name == name) return &c;
  return nullptr;
}

std::string VerificationReport::str() const {
  std::ostringstream os;
  os << structure << ": " << (verdict() ? "PASS" : "FAIL") << '\n';
  for (const auto& e : shape_errors) os << "  shape error: " << e << '\n';
  for (const auto& c : conditions) os << "  [" << (c.pass ? "ok" : "FAIL") << "] " << c.name << " = " << c.residual.str() << '\n';
  for (const auto& c : observations) os << "  (" << c.name << " = " << c.residual.str() << ")\n";
  return os.str();
}

}  // namespace ojac
