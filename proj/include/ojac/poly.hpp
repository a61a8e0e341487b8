#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ojac/chart.hpp"

namespace ojac {

using Rational = mpq_class;

std::string to_string(const Rational& q);

/// Product of generator powers in declaration order, times formal
/// exponentials exp(rate * z) attached to even generators. Odd generators
/// appear with power at most one.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t n) : powers_(n, 0) {}

  std::size_t size() const { return powers_.size(); }
  unsigned power(std::size_t i) const { return powers_[i]; }
  int rate(std::size_t i) const { return rates_.empty() ? 0 : rates_[i]; }
  void set_power(std::size_t i, unsigned p) { powers_[i] = static_cast<std::uint16_t>(p); }
  void set_rate(std::size_t i, int r);
  bool has_rates() const { return !rates_.empty(); }
  unsigned degree() const;

  bool operator==(const Monomial&) const = default;

 private:
  std::vector<std::uint16_t> powers_;
  std::vector<std::int32_t> rates_;  // empty when every rate is zero
};

/// Total degree first, then larger powers of earlier generators first,
/// then exponential rates.
struct MonomialOrder {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Graded-commutative polynomial with exact rational coefficients over a
/// chart. The term map never stores zero coefficients, so equal values have
/// identical term maps.
class Poly {
 public:
  using Terms = std::map<Monomial, Rational, MonomialOrder>;

  explicit Poly(Chart chart);

  static Poly constant(const Chart& chart, const Rational& c);
  static Poly gen(const Chart& chart, std::size_t index);
  static Poly gen(const Chart& chart, std::string_view name);
  /// exp(rate * z) for an even generator z.
  static Poly exp_tag(const Chart& chart, std::string_view name, int rate);

  const Chart& chart() const { return chart_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  /// Adds c * m; m must already be canonical for this chart.
  void add_term(const Monomial& m, const Rational& c);

  Poly operator-() const;
  Poly& operator+=(const Poly& other);
  Poly& operator-=(const Poly& other);
  Poly& operator*=(const Rational& c);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
  friend Poly operator*(const Poly& a, const Poly& b);

  bool operator==(const Poly& other) const;

  /// Canonical text rendering; also valid DSL expression syntax.
  std::string str() const;

 private:
  Chart chart_;
  Terms terms_;
};

Poly multiply(const Poly& f, const Poly& g);
Poly pow(const Poly& f, unsigned k);

enum class ParityClass { Even, Odd, Mixed };
/// Zero counts as even.
ParityClass parity_of(const Poly& f);
/// Throws ParityError when f is mixed.
Parity homogeneous_parity(const Poly& f, std::string_view what = "polynomial");
Poly parity_part(const Poly& f, Parity p);
Parity monomial_parity(const Chart& chart, const Monomial& m);

/// nullopt when terms disagree; zero has weight 0.
std::optional<int> weight_of(const Poly& f);
int monomial_weight(const Chart& chart, const Monomial& m);

/// Set of momentum degrees over the terms of f (empty for zero).
std::set<unsigned> momentum_degrees(const Poly& f);
bool is_momentum_free(const Poly& f);

/// Left derivative with respect to generator z.
Poly left_derivative(const Poly& f, std::size_t z);
Poly left_derivative(const Poly& f, std::string_view z);
/// Right derivative with respect to generator z.
Poly right_derivative(const Poly& f, std::size_t z);

/// Generator index -> image, both on the chart of f. Unbound generators map
/// to themselves. Each image must have the parity of the generator it
/// replaces (zero is allowed).
using Binding = std::map<std::size_t, Poly>;
Poly substitute(const Poly& f, const Binding& binding);

/// Cross-chart substitution: generator name -> image on `target`;
/// unbound generators map to the generator of the same name in `target`.
using NamedBinding = std::map<std::string, Poly, std::less<>>;
Poly pullback(const Poly& f, const Chart& target, const NamedBinding& binding);

/// Re-expresses f on a chart containing all of its generators by name.
Poly embed(const Poly& f, const Chart& target);

}  // namespace ojac
