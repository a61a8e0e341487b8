#pragma once

#include <map>
#include <string>
#include <vector>

#include "ojac/poly.hpp"

namespace ojac {

/// Appends P[z] for every generator z of `base`, with the parity of z and
/// weight -w(z). Throws ChartError if `base` already carries momenta.
Chart cotangent_chart(const Chart& base);

/// Appends d[z] for every generator z, with flipped parity and weight w(z)
/// unless overridden by name. Existing generators (momenta included) become
/// plain coordinates of the new chart.
Chart anticotangent_chart(const Chart& base, const std::map<std::string, int, std::less<>>& weight_override = {});

/// Generators of a followed by those of b.
Chart product_chart(const Chart& a, const Chart& b);

/// The chart on which vector fields of `chart` live: `chart` itself when
/// it already carries momenta, its cotangent chart otherwise.
Chart phase_chart(const Chart& chart);

/// The generators of a phase chart other than its momenta.
Chart base_chart(const Chart& phase);

/// Canonical Poisson bracket on a chart with momenta. Mixed-parity F is
/// split into homogeneous parts.
Poly poisson(const Poly& F, const Poly& G);

/// Vector field X = X^z d/dz on the base generators of a phase chart. The
/// components are momentum-free polynomials on the phase chart.
class VectorField {
 public:
  /// Zero field of the given parity.
  explicit VectorField(Chart phase, Parity parity = Parity::Even);

  /// Throws ParityError for non-uniform parity, ShapeError for components
  /// containing momenta or attached to generators without a conjugate.
  static VectorField make(const Chart& phase, const std::map<std::size_t, Poly>& components);
  static VectorField make(const Chart& phase, const std::map<std::string, Poly, std::less<>>& components);

  const Chart& chart() const { return chart_; }
  Parity parity() const { return parity_; }
  bool is_zero() const { return components_.empty(); }
  /// Component along generator z (zero when absent).
  Poly component(std::size_t z) const;
  Poly component(std::string_view z) const;
  const std::map<std::size_t, Poly>& components() const { return components_; }

  VectorField operator-() const;
  friend VectorField operator+(const VectorField& a, const VectorField& b);
  friend VectorField operator-(const VectorField& a, const VectorField& b);
  /// Left multiplication f * X.
  friend VectorField operator*(const Poly& f, const VectorField& x);
  friend VectorField operator*(const Rational& c, const VectorField& x);

  bool operator==(const VectorField& other) const;

  std::string str() const;

 private:
  Chart chart_;
  Parity parity_;
  std::map<std::size_t, Poly> components_;
};

/// Sum of X^z P[z].
Poly symbol(const VectorField& x);
/// Inverse of symbol; throws ShapeError unless chi has momentum degree one.
VectorField unsymbol(const Poly& chi);
/// X(f) = {symbol(X), f}; f momentum-free on the chart of X.
Poly apply(const VectorField& x, const Poly& f);
/// [X, Y] = unsymbol({symbol X, symbol Y}).
VectorField commutator(const VectorField& x, const VectorField& y);
/// Xi = sum of w(z) z d/dz over the non-zero-weight base generators.
VectorField euler_field(const Chart& chart);
/// d = sum of d[z] d/dz over the generators that carry a fibre d[z].
VectorField de_rham_field(const Chart& chart);
/// Action of de_rham_field on a momentum-free f; result on f's chart.
Poly de_rham(const Poly& f);
/// Weight of a field, read off its symbol; nullopt if inhomogeneous.
std::optional<int> field_weight(const VectorField& x);

/// i_X on forms: (-1)^{parity X} X^z d(form)/d(d[z]) (left derivative).
/// The form lives on a chart containing the generators of X and their fibres.
Poly interior(const VectorField& x, const Poly& form);

/// sum over conjugate pairs of d[P[z]] d[z] on anticotangent_chart(phase).
Poly canonical_symplectic_form(const Chart& phase);

/// Pullback of a form along a map given by its action on coordinates:
/// the images of the d[z] are the de Rham differentials of the images of z.
/// `source` must be an anticotangent chart; binding names coordinates of
/// its base; `target` must be an anticotangent chart too.
Poly pullback_form(const Poly& form, const Chart& target, const NamedBinding& coordinate_images);

}  // namespace ojac
