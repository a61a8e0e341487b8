#pragma once

#include <array>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "ojac/constructions.hpp"

namespace ojac {

/// One fibre direction alpha. `eta` names the fibre coordinate on Pi E*,
/// `xi` the one on Pi E; both carry the parity opposite to `parity`.
struct FibreDecl {
  std::string eta;
  std::string xi;
  Parity parity = Parity::Even;
};

/// Structure functions of an algebroid over a base chart of weight-zero
/// coordinates x^A: the anchor Q_a^A, the bracket functions Q^c_{ba} and
/// the cocycle Q_a. Q^c_{ba} multiplies xi^a xi^b in D, so the partner
/// entry obeys Q^c_{ab} = (-1)^{(a+1)(b+1)} Q^c_{ba}.
class AlgebroidData {
 public:
  AlgebroidData() = default;
  /// Throws ChartError on name clashes or a base chart with momenta or
  /// nonzero weights.
  static AlgebroidData make(const Chart& base, std::vector<FibreDecl> fibres, std::string name = {});

  std::string name;

  const Chart& base() const { return base_; }
  const std::vector<FibreDecl>& fibres() const { return fibres_; }
  std::size_t rank() const { return fibres_.size(); }
  /// Index of the fibre whose eta or xi is called `name`.
  std::size_t fibre_index(std::string_view name) const;

  /// Coordinates (x, eta) of Pi E*, eta of weight 1.
  const Chart& dual_chart() const { return dual_; }
  /// Coordinates (x, xi) of Pi E, xi of weight 1.
  const Chart& bundle_chart() const { return bundle_; }
  Chart dual_phase() const { return cotangent_chart(dual_); }
  Chart bundle_phase() const { return cotangent_chart(bundle_); }

  /// Setters take functions of the base coordinates and check their parity.
  void set_anchor(std::size_t a, std::size_t A, const Poly& f);
  /// Sets Q^c_{ba} and its partner Q^c_{ab}. Throws ShapeError when the
  /// partner was set explicitly to a different value, or when a = b and the
  /// antisymmetry forces zero.
  void set_bracket(std::size_t c, std::size_t b, std::size_t a, const Poly& f);
  void set_cocycle(std::size_t a, const Poly& f);

  const Poly& anchor(std::size_t a, std::size_t A) const { return anchor_[a * base_.size() + A]; }
  const Poly& bracket(std::size_t c, std::size_t b, std::size_t a) const { return bracket_[key(c, b, a)]; }
  const Poly& cocycle(std::size_t a) const { return cocycle_[a]; }
  bool has_cocycle() const;

  /// Sign relating Q^c_{ab} to Q^c_{ba}.
  int swap_sign(std::size_t a, std::size_t b) const;

 private:
  std::size_t key(std::size_t c, std::size_t b, std::size_t a) const { return (c * rank() + b) * rank() + a; }
  Poly on_base(const Poly& f, Parity expected, const std::string& what) const;

  Chart base_;
  std::vector<FibreDecl> fibres_;
  Chart dual_;
  Chart bundle_;
  std::vector<Poly> anchor_;
  std::vector<Poly> bracket_;
  std::vector<bool> bracket_set_;
  std::vector<Poly> cocycle_;
};

/// S = (-1)^a pi^a Q_a^A p_A + 1/2 (-1)^{a+b} pi^a pi^b Q^c_{ba} eta_c and
/// Q = pi^a Q_a on T*(Pi E*), pi^a = P[eta_a]. Throws ShapeError unless
/// both have weight -1.
OddJacobiStructure build_jacobi_algebroid(const AlgebroidData& d);

/// (R^-1)^*: eta_a -> P[xi^a], P[eta_a] -> (-1)^a xi^a, from T*(Pi E*)
/// to T*(Pi E).
Poly r_pullback(const AlgebroidData& d, const Poly& F);

/// R^* on the coordinates of T*(Pi E), as images on T*(Pi E*).
NamedBinding r_images(const AlgebroidData& d);

/// R^* omega_{T*(Pi E)} - omega_{T*(Pi E*)} on the anticotangent chart of
/// T*(Pi E*), plus R^* (R^-1)^* z - z for every coordinate z.
VerificationReport verify_symplectomorphism(const Chart& base, const std::vector<Parity>& fibre_parities);
/// Base x1..xn even; fibre parities alternate even, odd, even, ...
VerificationReport verify_symplectomorphism(unsigned base_dim, unsigned fibre_dim);

/// D = unsymbol((R^-1)^* S), q = -(R^-1)^* Q on Pi E. With `checked`,
/// throws ShapeError unless the odd Jacobi conditions hold.
QuasiQData extract_quasiq(const AlgebroidData& d, bool checked = true);

/// Q = xi^a Q_a^A d/dx^A + 1/2 (xi^a xi^b Q^c_{ba} + 2 (-1)^a xi^a Q_a xi^c) d/dxi^c
/// and phi = (-1)^{a+1} xi^a Q_a.
HomologicalWithCocycle lie_algebroid_from_jacobi(const AlgebroidData& d, bool checked = true);

/// Same data with zero cocycle and
/// Q^c_{ba} -> Q^c_{ba} - (-1)^{a+b} (delta_a^c Q_b + (-1)^{(a+1)(b+1)} Q_a delta_b^c).
AlgebroidData replaced_structure_constants(const AlgebroidData& d);

/// Extends a Lie algebroid (zero cocycle, Schouten S) by an even fibre
/// direction with eta = `tau`, xi = `xi`: Q^c_{tau,a} = -delta_a^c and
/// Q_tau = -1, so S gains P[tau] pi^a eta_a and Q = -P[tau].
AlgebroidData extend_lie_algebroid(const AlgebroidData& lie, const std::string& tau = "tau",
                                   const std::string& xi = "eta");
OddJacobiStructure extend_lie_to_jacobi(const AlgebroidData& lie, const std::string& tau = "tau",
                                        const std::string& xi = "eta");

/// schoutenize(build_jacobi_algebroid(d), coord); throws ShapeError unless
/// the odd Jacobi conditions hold.
QSData schoutenize_algebroid(const AlgebroidData& d, const std::string& coord = "t");

/// Odd contact form alpha = d[tau] - xs_a d[x_a] on Pi T*R^n x R^{0|1}:
/// phi_S^* alpha = 0, phi_S^* d alpha = S, i_Q alpha = 1, i_Q d alpha = 0,
/// where phi_S^* d[z] = (-1)^z dS/dP[z].
VerificationReport contact_check(unsigned n);

/// Anchor and bracket of sections read off the Lie algebroid field Q via
/// derived brackets: a(s_a) is the x-part of [i_a, Q] and [s_a, s_b] is
/// [[i_a, Q], i_b], with i_a = d/dxi^a; phi(s_a) = i_a phi. Recorded as
/// observations on the phase chart of Pi E (fields by their symbols).
VerificationReport section_structure(const AlgebroidData& d);

/// Plain text format, one declaration per line, '#' comments:
///   name NAME
///   base X even|odd
///   fibre ETA XI even|odd            (parity of the index)
///   anchor ETA X : TERM, TERM, ...
///   bracket ETA_c ETA_b ETA_a : ...  (Q^c_{ba})
///   cocycle ETA : ...
/// A term is a rational followed by generator powers, e.g. -1/2 x^2 y.
/// Throws Error with the line number on malformed input.
AlgebroidData read_algebroid_data(std::istream& in);
void write_algebroid_data(std::ostream& out, const AlgebroidData& d);

}  // namespace ojac
