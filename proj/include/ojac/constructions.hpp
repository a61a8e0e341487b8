#pragma once

#include <string>

#include "ojac/odd_jacobi.hpp"

namespace ojac {

/// A Schouten structure Sbar and a compatible homological symbol Qbar.
struct QSData {
  std::string name;
  Chart base;
  Chart phase;
  Poly Sbar{Chart{}};
  Poly Qbar{Chart{}};

  static QSData make(const Chart& base, const Poly& Sbar, const Poly& Qbar, std::string name = {});
};

/// QS data with an even homothety field E on the phase chart.
struct ExactQSData {
  QSData qs;
  VectorField E{Chart{}};
};

/// Odd field D and odd curving function q with D^2 = qD and D(q) = 0.
struct QuasiQData {
  std::string name;
  Chart base;
  Chart phase;
  VectorField D{Chart{}};
  Poly q{Chart{}};

  static QuasiQData make(const Chart& base, const VectorField& D, const Poly& q, std::string name = {});
};

/// S~ = exp(-t)(S - Q p) on the chart extended by an even weight-0
/// coordinate `coord` with momentum p. Throws ChartError if `coord` is
/// already a generator. Qbar is Q.
QSData schoutenize(const OddJacobiStructure& J, const std::string& coord = "t");

/// {S~,S~} = exp(-2t)({S,S} + 2QS - 2p{S,Q} + p^2{Q,Q}) and
/// {S~,Q} = exp(-t)({S,Q} - p{Q,Q}), for any S, Q of the right shape.
VerificationReport check_schoutenization_identities(const OddJacobiStructure& J, const std::string& coord = "t");

/// Residuals {S,S}, {Q,S}, {Q,Q}.
VerificationReport verify_qs(const QSData& d);

/// Residuals {E,S}+S and {E,Q}+Q, with E the symbol of the homothety.
VerificationReport verify_exact_qs(const ExactQSData& d);

/// S = a Sbar + b E Qbar, Q = b Qbar. Throws ShapeError unless
/// verify_qs and verify_exact_qs pass.
OddJacobiStructure exact_qs_to_jacobi(const ExactQSData& d, const Rational& a, const Rational& b);

/// {S,S} + 2 Qbar (Sbar + E Qbar) for S = Sbar + E Qbar.
VerificationReport check_exact_qs_expansion(const ExactQSData& d);

/// Residuals 1/2[D,D] - qD (as symbols) and D(q).
VerificationReport verify_quasi_q(const QuasiQData& d);

struct HomologicalWithCocycle {
  VectorField Q;
  Poly phi;
};

/// Q = D - q Xi, phi = q. Requires verify_quasi_q and D, q of weight one.
HomologicalWithCocycle quasiq_to_homological(const QuasiQData& d);

/// D = Q + phi Xi, q = phi. Requires [Q,Q] = 0, Q(phi) = 0, phi odd of
/// weight one.
QuasiQData homological_plus_cocycle_to_quasiq(const VectorField& Q, const Poly& phi, std::string name = {});

}  // namespace ojac
