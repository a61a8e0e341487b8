#include "ojac/odd_jacobi.hpp"

#include "ojac/error.hpp"

namespace ojac {

namespace {

Rational sgn(int s) { return Rational(s); }

// (-1)^{f+1}
int shifted_sign(Parity f) { return -sign_of(f); }

void shape_of(std::vector<std::string>& out, const Poly& f, const char* what, unsigned degree) {
  if (parity_of(f) != ParityClass::Odd && !f.is_zero()) out.push_back(std::string(what) + " is not odd");
  const auto deg = momentum_degrees(f);
  if (!deg.empty() && (deg.size() != 1 || *deg.begin() != degree))
    out.push_back(std::string(what) + " does not have momentum degree " + std::to_string(degree));
}

Poly bracket_homogeneous(const OddJacobiStructure& J, const Poly& f, const Poly& g) {
  const Parity pf = homogeneous_parity(f);
  const Rational s = sgn(shifted_sign(pf));
  return (poisson(poisson(J.S, f), g) - poisson(J.Q, f * g)) * s;
}

}  // namespace

OddJacobiStructure OddJacobiStructure::make(const Chart& base, const Poly& S, const Poly& Q, std::string name) {
  OddJacobiStructure J;
  J.name = std::move(name);
  J.base = base;
  J.phase = phase_chart(base);
  J.S = embed(S, J.phase);
  J.Q = embed(Q, J.phase);
  return J;
}

Poly OddJacobiStructure::lift(const Poly& f) const {
  if (!is_momentum_free(f)) throw ShapeError("expected a function without momenta: " + f.str());
  return embed(f, phase);
}

VectorField OddJacobiStructure::homological() const {
  VectorField q = unsymbol(Q);
  return q.is_zero() ? VectorField(phase, Parity::Odd) : q;
}

std::vector<std::string> odd_jacobi_shape_errors(const Poly& S, const Poly& Q) {
  std::vector<std::string> out;
  shape_of(out, S, "S", 2);
  shape_of(out, Q, "Q", 1);
  return out;
}

VerificationReport verify_odd_jacobi(const OddJacobiStructure& J) {
  VerificationReport r;
  r.structure = J.name;
  r.shape_errors = odd_jacobi_shape_errors(J.S, J.Q);
  if (!r.shape_errors.empty()) return r;
  r.add("{Q,Q}", poisson(J.Q, J.Q));
  r.add("{Q,S}", poisson(J.Q, J.S));
  r.add("{S,S}+2QS", poisson(J.S, J.S) + J.Q * J.S * Rational(2));
  return r;
}

Poly odd_jacobi_bracket(const OddJacobiStructure& J, const Poly& f, const Poly& g) {
  const Poly F = J.lift(f), G = J.lift(g);
  Poly out(J.phase);
  for (const Parity pf : {Parity::Even, Parity::Odd}) {
    const Poly fp = parity_part(F, pf);
    if (fp.is_zero()) continue;
    for (const Parity pg : {Parity::Even, Parity::Odd}) {
      const Poly gp = parity_part(G, pg);
      if (!gp.is_zero()) out += bracket_homogeneous(J, fp, gp);
    }
  }
  return out;
}

Poly q_apply(const OddJacobiStructure& J, const Poly& f) { return poisson(J.Q, J.lift(f)); }

std::vector<std::vector<Poly>> schouten_coefficients(const Chart& phase, const Poly& S) {
  const auto& pairs = phase.conjugate_pairs();
  std::vector<std::vector<Poly>> s(pairs.size(), std::vector<Poly>(pairs.size(), Poly(phase)));
  for (std::size_t a = 0; a < pairs.size(); ++a)
    for (std::size_t b = 0; b < pairs.size(); ++b)
      s[a][b] = left_derivative(left_derivative(S, pairs[b].second), pairs[a].second);
  return s;
}

std::vector<Poly> symbol_coefficients(const Chart& phase, const Poly& Q) {
  std::vector<Poly> q;
  for (const auto& [x, p] : phase.conjugate_pairs()) q.push_back(right_derivative(Q, p));
  return q;
}

VectorField hamiltonian_vf(const OddJacobiStructure& J, const Poly& f_in) {
  const Poly f = J.lift(f_in);
  const Parity pf = homogeneous_parity(f, "hamiltonian function");
  const auto& pairs = J.phase.conjugate_pairs();
  const auto s = schouten_coefficients(J.phase, J.S);
  const auto q = symbol_coefficients(J.phase, J.Q);
  std::map<std::size_t, Poly> comps;
  for (std::size_t a = 0; a < pairs.size(); ++a) {
    const Parity pa = J.phase[pairs[a].first].parity;
    Poly c = f * q[a] * sgn(sign_of(pf));
    for (std::size_t b = 0; b < pairs.size(); ++b) {
      if (s[a][b].is_zero()) continue;
      c += s[a][b] * left_derivative(f, pairs[b].first) * sgn(-koszul(pa, pf));
    }
    if (!c.is_zero()) comps.emplace(pairs[a].first, std::move(c));
  }
  VectorField X = comps.empty() ? VectorField(J.phase, flip(pf)) : VectorField::make(J.phase, comps);

  const Poly qf = q_apply(J, f);
  for (const auto z : J.phase.base_indices()) {
    const Poly gz = Poly::gen(J.phase, z);
    const Poly expected = odd_jacobi_bracket(J, f, gz) * sgn(sign_of(pf)) - qf * gz;
    if (apply(X, gz) != expected)
      throw Error("hamiltonian field of " + f.str() + " disagrees with its defining action on " + gz.str());
  }
  return X;
}

VerificationReport is_jacobi_vf(const OddJacobiStructure& J, const VectorField& X) {
  require_same_chart(J.phase, X.chart(), "is_jacobi_vf");
  VerificationReport r;
  r.structure = J.name;
  const Poly chi = symbol(X);
  r.add("{X,S}", poisson(chi, J.S));
  r.add("{X,Q}", poisson(chi, J.Q));
  return r;
}

VerificationReport check_theorem_odd_jacobi_algebra(const OddJacobiStructure& J, const SampleOptions& opts) {
  RandomOptions ro;
  ro.max_degree = opts.max_degree;
  ro.max_terms = opts.max_terms;
  RandomPolys rng(opts.seed, ro);
  const Poly zero(J.phase);
  const Poly one = Poly::constant(J.phase, 1);
  Poly sym = zero, jac = zero, leib = zero, diag = zero;
  const auto keep = [](Poly& slot, Poly r) {
    if (slot.is_zero() && !r.is_zero()) slot = std::move(r);
  };
  const auto br = [&](const Poly& a, const Poly& b) { return odd_jacobi_bracket(J, a, b); };

  for (unsigned i = 0; i < opts.samples; ++i) {
    const Parity pf = rng.coin(), pg = rng.coin(), ph = rng.coin();
    const Poly f = rng.function(J.phase, pf), g = rng.function(J.phase, pg), h = rng.function(J.phase, ph);
    const auto sh = [](Parity a, Parity b) { return sgn(koszul(flip(a), flip(b))); };

    keep(sym, br(f, g) + br(g, f) * sh(pf, pg));
    keep(jac, br(f, br(g, h)) * sh(pf, ph) + br(g, br(h, f)) * sh(pg, pf) + br(h, br(f, g)) * sh(ph, pg));
    keep(leib, br(f, g * h) - br(f, g) * h - g * br(f, h) * sgn(koszul(flip(pf), pg)) + br(f, one) * g * h);
    const Poly e = rng.function(J.phase, Parity::Even);
    keep(diag, br(e, br(e, e)));
  }

  VerificationReport r;
  r.structure = J.name;
  r.add("symmetry", sym);
  r.add("jacobi_identity", jac);
  r.add("generalised_leibniz", leib);
  r.add("even_diagonal", diag);
  return r;
}

VerificationReport check_derivation_and_morphism(const OddJacobiStructure& J, const Poly& f_in, const Poly& g_in) {
  const Poly f = J.lift(f_in), g = J.lift(g_in);
  const Parity pf = homogeneous_parity(f), pg = homogeneous_parity(g);
  (void)pg;
  const Poly fg = odd_jacobi_bracket(J, f, g);
  const Poly Qf = q_apply(J, f), Qg = q_apply(J, g);

  VerificationReport r;
  r.structure = J.name;
  r.add("Q-derivation",
        q_apply(J, fg) - odd_jacobi_bracket(J, Qf, g) - odd_jacobi_bracket(J, f, Qg) * sgn(shifted_sign(pf)));
  const VectorField Xf = hamiltonian_vf(J, f), Xg = hamiltonian_vf(J, g);
  r.add("[Q,X_f]+X_{Qf}", symbol(commutator(J.homological(), Xf)) + symbol(hamiltonian_vf(J, Qf)));
  r.add("[X_f,X_g]+X_{[[f,g]]}", symbol(commutator(Xf, Xg)) + symbol(hamiltonian_vf(J, fg)));
  return r;
}

VerificationReport check_q_closed_hamiltonian(const OddJacobiStructure& J, const Poly& f) {
  const Poly Qf = q_apply(J, f);
  const VerificationReport jr = is_jacobi_vf(J, hamiltonian_vf(J, f));
  VerificationReport r;
  r.structure = J.name;
  r.observe("Q(f)", Qf);
  for (const auto& c : jr.conditions) r.observe("X_f " + c.name, c.residual);
  r.add_flag("Q(f)=0 <=> X_f Jacobi", Qf.is_zero() == jr.verdict(), J.phase);
  return r;
}

}  // namespace ojac
