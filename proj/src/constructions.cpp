#include "ojac/constructions.hpp"

#include "ojac/error.hpp"

namespace ojac {

namespace {

Chart extend_by_time(const Chart& base, const std::string& coord) {
  if (base.find(coord)) throw ChartError("schoutenization coordinate '" + coord + "' is already a generator");
  std::vector<Generator> gens = base.generators();
  gens.push_back(Generator{coord, Parity::Even, 0, GeneratorKind::Base, 0});
  return Chart::from_generators(std::move(gens), ChartOrigin::Product);
}

void require(bool ok, const std::string& what) {
  if (!ok) throw ShapeError("precondition failed: " + what);
}

}  // namespace

QSData QSData::make(const Chart& base, const Poly& Sbar, const Poly& Qbar, std::string name) {
  QSData d;
  d.name = std::move(name);
  d.base = base;
  d.phase = phase_chart(base);
  d.Sbar = embed(Sbar, d.phase);
  d.Qbar = embed(Qbar, d.phase);
  return d;
}

QuasiQData QuasiQData::make(const Chart& base, const VectorField& D, const Poly& q, std::string name) {
  QuasiQData d;
  d.name = std::move(name);
  d.base = base;
  d.phase = phase_chart(base);
  require_same_chart(d.phase, D.chart(), "quasi Q field");
  d.D = D.is_zero() ? VectorField(d.phase, Parity::Odd) : D;
  if (!is_momentum_free(q)) throw ShapeError("curving function contains momenta");
  d.q = embed(q, d.phase);
  return d;
}

QSData schoutenize(const OddJacobiStructure& J, const std::string& coord) {
  const Chart base = extend_by_time(J.base, coord);
  const Chart phase = cotangent_chart(base);
  const Poly S = embed(J.S, phase), Q = embed(J.Q, phase);
  const Poly p = Poly::gen(phase, momentum_name(coord));
  const Poly Sbar = Poly::exp_tag(phase, coord, -1) * (S - Q * p);
  return QSData::make(base, Sbar, Q, J.name.empty() ? std::string() : J.name + "_schoutenized");
}

VerificationReport check_schoutenization_identities(const OddJacobiStructure& J, const std::string& coord) {
  const QSData d = schoutenize(J, coord);
  const Poly S = embed(J.S, d.phase), Q = embed(J.Q, d.phase);
  const Poly p = Poly::gen(d.phase, momentum_name(coord));
  const Poly e1 = Poly::exp_tag(d.phase, coord, -1), e2 = Poly::exp_tag(d.phase, coord, -2);
  VerificationReport r;
  r.structure = d.name;
  r.add("identity_1", poisson(d.Sbar, d.Sbar) - e2 * (poisson(S, S) + Q * S * Rational(2) -
                                                      p * poisson(S, Q) * Rational(2) + p * p * poisson(Q, Q)));
  r.add("identity_2", poisson(d.Sbar, Q) - e1 * (poisson(S, Q) - p * poisson(Q, Q)));
  return r;
}

VerificationReport verify_qs(const QSData& d) {
  VerificationReport r;
  r.structure = d.name;
  r.shape_errors = odd_jacobi_shape_errors(d.Sbar, d.Qbar);
  if (!r.shape_errors.empty()) return r;
  r.add("{S,S}", poisson(d.Sbar, d.Sbar));
  r.add("{Q,S}", poisson(d.Qbar, d.Sbar));
  r.add("{Q,Q}", poisson(d.Qbar, d.Qbar));
  return r;
}

VerificationReport verify_exact_qs(const ExactQSData& d) {
  VerificationReport r;
  r.structure = d.qs.name;
  require_same_chart(d.qs.phase, d.E.chart(), "homothety field");
  if (!d.E.is_zero() && d.E.parity() != Parity::Even) r.shape_errors.push_back("homothety field is not even");
  const Poly e = symbol(d.E);
  r.add("{E,S}+S", poisson(e, d.qs.Sbar) + d.qs.Sbar);
  r.add("{E,Q}+Q", poisson(e, d.qs.Qbar) + d.qs.Qbar);
  return r;
}

OddJacobiStructure exact_qs_to_jacobi(const ExactQSData& d, const Rational& a, const Rational& b) {
  require(verify_qs(d.qs).verdict(), "QS conditions");
  require(verify_exact_qs(d).verdict(), "homothety conditions");
  const Poly e = symbol(d.E);
  const Poly S = d.qs.Sbar * a + e * d.qs.Qbar * b;
  const std::string name = d.qs.name.empty() ? std::string()
                                             : d.qs.name + "_pencil(" + a.get_str() + "," + b.get_str() + ")";
  return OddJacobiStructure::make(d.qs.base, S, d.qs.Qbar * b, name);
}

VerificationReport check_exact_qs_expansion(const ExactQSData& d) {
  const Poly e = symbol(d.E);
  const Poly S = d.qs.Sbar + e * d.qs.Qbar;
  VerificationReport r;
  r.structure = d.qs.name;
  r.add("{S,S}+2Q(S+EQ)", poisson(S, S) + d.qs.Qbar * (d.qs.Sbar + e * d.qs.Qbar) * Rational(2));
  return r;
}

VerificationReport verify_quasi_q(const QuasiQData& d) {
  VerificationReport r;
  r.structure = d.name;
  if (!d.D.is_zero() && d.D.parity() != Parity::Odd) r.shape_errors.push_back("D is not odd");
  if (parity_of(d.q) != ParityClass::Odd && !d.q.is_zero()) r.shape_errors.push_back("q is not odd");
  if (!r.shape_errors.empty()) return r;
  const Poly chi = symbol(d.D);
  r.add("D^2-qD", poisson(chi, chi) * Rational(1, 2) - d.q * chi);
  r.add("D(q)", apply(d.D, d.q));
  return r;
}

HomologicalWithCocycle quasiq_to_homological(const QuasiQData& d) {
  require(verify_quasi_q(d).verdict(), "quasi Q conditions");
  require(d.D.is_zero() || field_weight(d.D) == 1, "D has weight one");
  require(d.q.is_zero() || weight_of(d.q) == 1, "q has weight one");
  const VectorField Xi = euler_field(d.phase);
  VectorField Q = d.D - d.q * Xi;
  if (Q.is_zero()) Q = VectorField(d.phase, Parity::Odd);
  return {Q, d.q};
}

QuasiQData homological_plus_cocycle_to_quasiq(const VectorField& Q, const Poly& phi, std::string name) {
  const Chart& phase = Q.chart();
  const Poly f = embed(phi, phase);
  require(Q.is_zero() || Q.parity() == Parity::Odd, "Q is odd");
  require(commutator(Q, Q).is_zero(), "[Q,Q] = 0");
  require(f.is_zero() || parity_of(f) == ParityClass::Odd, "phi is odd");
  require(apply(Q, f).is_zero(), "Q(phi) = 0");
  const VectorField Xi = euler_field(phase);
  require(apply(Xi, f) == f, "phi has weight one");
  VectorField D = Q + f * Xi;
  if (D.is_zero()) D = VectorField(phase, Parity::Odd);
  return QuasiQData::make(base_chart(phase), D, f, std::move(name));
}

}  // namespace ojac
