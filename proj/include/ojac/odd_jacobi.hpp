#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ojac/phase_space.hpp"
#include "ojac/random.hpp"
#include "ojac/report.hpp"

namespace ojac {

/// A pair (S, Q) on the cotangent chart of `base`: S odd of momentum degree
/// two, Q the odd symbol of the homological field.
struct OddJacobiStructure {
  std::string name;
  Chart base;
  Chart phase;
  Poly S{Chart{}};
  Poly Q{Chart{}};
  std::optional<VerificationReport> verified;

  /// Embeds S and Q (given on base or phase chart) into the phase chart.
  static OddJacobiStructure make(const Chart& base, const Poly& S, const Poly& Q, std::string name = {});

  /// Momentum-free f lifted to the phase chart.
  Poly lift(const Poly& f) const;
  VectorField homological() const;
};

/// Shape errors for S (degree 2, odd) and Q (degree 1, odd).
std::vector<std::string> odd_jacobi_shape_errors(const Poly& S, const Poly& Q);

/// Residuals {Q,Q}, {Q,S}, {S,S} + 2QS.
VerificationReport verify_odd_jacobi(const OddJacobiStructure& J);

/// [[f,g]] = (-1)^{f+1} {{S,f},g} - (-1)^{f+1} {Q, fg}. Mixed inputs are
/// split into parity parts.
Poly odd_jacobi_bracket(const OddJacobiStructure& J, const Poly& f, const Poly& g);

/// Q(f) = {Q, f}.
Poly q_apply(const OddJacobiStructure& J, const Poly& f);

/// Coefficients of S = 1/2 S^{AB} p_B p_A and Q = Q^A p_A, indexed by
/// position in phase.conjugate_pairs().
std::vector<std::vector<Poly>> schouten_coefficients(const Chart& phase, const Poly& S);
std::vector<Poly> symbol_coefficients(const Chart& phase, const Poly& Q);

/// X_f from the coordinate formula
///   X_f = (-1)^{A f + 1} S^{AB} df/dx^B d/dx^A + (-1)^f f Q^A d/dx^A,
/// checked against X_f(g) = (-1)^f [[f,g]] - Q(f) g on every generator.
/// Throws Error on disagreement and ParityError for mixed f.
VectorField hamiltonian_vf(const OddJacobiStructure& J, const Poly& f);

/// Residuals {chi,S} and {chi,Q} for chi = symbol(X).
VerificationReport is_jacobi_vf(const OddJacobiStructure& J, const VectorField& X);

struct SampleOptions {
  std::uint64_t seed = 1;
  unsigned samples = 100;
  unsigned max_degree = 3;
  unsigned max_terms = 3;
};

/// Symmetry, Jacobi identity, generalised Leibniz rule and the even
/// diagonal on seeded random homogeneous functions. Each residual is the
/// first non-zero one met, or zero.
VerificationReport check_theorem_odd_jacobi_algebra(const OddJacobiStructure& J, const SampleOptions& opts = {});

/// Q[[f,g]] = [[Qf,g]] + (-1)^{f+1}[[f,Qg]], [Q,X_f] = -X_{Qf},
/// [X_f,X_g] = -X_{[[f,g]]}.
VerificationReport check_derivation_and_morphism(const OddJacobiStructure& J, const Poly& f, const Poly& g);

/// Passes iff (Q(f) = 0) agrees with (X_f is a Jacobi field). The residuals
/// themselves are kept as observations.
VerificationReport check_q_closed_hamiltonian(const OddJacobiStructure& J, const Poly& f);

}  // namespace ojac
