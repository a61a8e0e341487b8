#include "ojac/examples.hpp"

#include "ojac/error.hpp"

namespace ojac::examples {

namespace {

Poly gen(const Chart& c, const std::string& name) { return Poly::gen(c, name); }
Poly mom(const Chart& c, const std::string& name) { return Poly::gen(c, momentum_name(name)); }

std::string idx(const char* stem, unsigned a) { return stem + std::to_string(a); }

}  // namespace

Chart superline_chart() { return Chart::make({{"t", Parity::Even, 0}, {"xi", Parity::Odd, 0}}); }

OddJacobiStructure superline() {
  const Chart ph = cotangent_chart(superline_chart());
  return OddJacobiStructure::make(superline_chart(), -(mom(ph, "xi") * mom(ph, "t")), -mom(ph, "xi"), "superline");
}

Chart odd_contact_chart(unsigned n) {
  std::vector<GeneratorDecl> decls;
  for (unsigned a = 1; a <= n; ++a) decls.push_back({idx("x", a), Parity::Even, 0});
  for (unsigned a = 1; a <= n; ++a) decls.push_back({idx("xs", a), Parity::Odd, 1});
  decls.push_back({"tau", Parity::Odd, 1});
  return Chart::make(decls);
}

OddJacobiStructure odd_contact(unsigned n) {
  const Chart base = odd_contact_chart(n);
  const Chart ph = cotangent_chart(base);
  Poly S(ph);
  for (unsigned a = 1; a <= n; ++a)
    S += mom(ph, idx("xs", a)) * (mom(ph, idx("x", a)) + gen(ph, idx("xs", a)) * mom(ph, "tau"));
  return OddJacobiStructure::make(base, S, -mom(ph, "tau"), "odd_contact_" + std::to_string(n));
}

Chart de_rham_chart(unsigned n) {
  std::vector<GeneratorDecl> decls;
  for (unsigned a = 1; a <= n; ++a) decls.push_back({idx("x", a), Parity::Even, 0});
  for (unsigned a = 1; a <= n; ++a) decls.push_back({fibre_name(idx("x", a)), Parity::Odd, 1});
  return Chart::make(decls);
}

OddJacobiStructure de_rham(unsigned n) {
  const Chart base = de_rham_chart(n);
  const Chart ph = cotangent_chart(base);
  Poly Q(ph);
  for (unsigned a = 1; a <= n; ++a) Q += gen(ph, fibre_name(idx("x", a))) * mom(ph, idx("x", a));
  return OddJacobiStructure::make(base, Poly(ph), Q, "de_rham_" + std::to_string(n));
}

OddJacobiStructure odd_symplectic(unsigned n) {
  std::vector<GeneratorDecl> decls;
  for (unsigned a = 1; a <= n; ++a) decls.push_back({idx("x", a), Parity::Even, 0});
  for (unsigned a = 1; a <= n; ++a) decls.push_back({idx("xs", a), Parity::Odd, 1});
  const Chart base = Chart::make(decls);
  const Chart ph = cotangent_chart(base);
  Poly S(ph);
  for (unsigned a = 1; a <= n; ++a) S += mom(ph, idx("xs", a)) * mom(ph, idx("x", a));
  return OddJacobiStructure::make(base, S, Poly(ph), "odd_symplectic_" + std::to_string(n));
}

AlgebroidData lie_algebra_so3() {
  std::vector<FibreDecl> fib;
  for (unsigned a = 1; a <= 3; ++a) fib.push_back({idx("eta", a), idx("xi", a), Parity::Even});
  auto d = AlgebroidData::make(Chart(), fib, "so3");
  // Q^c_{ba} is the coefficient of e_c in [e_a, e_b].
  for (std::size_t a = 0; a < 3; ++a) d.set_bracket((a + 2) % 3, (a + 1) % 3, a, Poly::constant(d.base(), 1));
  return d;
}

OddJacobiStructure lie_schouten(const AlgebroidData& lie) {
  const Chart ph = lie.dual_phase();
  Poly S(ph);
  const std::size_t r = lie.rank();
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = 0; b < r; ++b)
      for (std::size_t c = 0; c < r; ++c) {
        const Poly& q = lie.bracket(c, a, b);
        if (q.is_zero()) continue;
        const auto& f = lie.fibres();
        const int s = sign_of(f[a].parity + f[b].parity);
        S += mom(ph, f[a].eta) * mom(ph, f[b].eta) * embed(q, ph) * gen(ph, f[c].eta) * Rational(s, 2);
      }
  return OddJacobiStructure::make(lie.dual_chart(), S, Poly(ph), lie.name + "_schouten");
}

OddJacobiStructure lie_algebra_bracket(const AlgebroidData& lie) {
  const Chart ph = lie.bundle_phase();
  Poly Q(ph);
  const std::size_t r = lie.rank();
  const auto& f = lie.fibres();
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = 0; b < r; ++b)
      for (std::size_t c = 0; c < r; ++c) {
        const Poly& q = lie.bracket(c, b, a);
        if (!q.is_zero())
          Q += gen(ph, f[a].xi) * gen(ph, f[b].xi) * embed(q, ph) * mom(ph, f[c].xi) * Rational(1, 2);
      }
  return OddJacobiStructure::make(lie.bundle_chart(), Poly(ph), Q, lie.name + "_ce");
}

OddJacobiStructure lie_algebra_cocycle() {
  std::vector<FibreDecl> fib;
  for (unsigned a = 1; a <= 3; ++a) fib.push_back({idx("eta", a), idx("xi", a), Parity::Even});
  auto lie = AlgebroidData::make(Chart(), fib, "g3");
  lie.set_bracket(1, 2, 1, Poly::constant(lie.base(), 1));
  const auto J0 = build_jacobi_algebroid(lie);
  const Chart& ph = J0.phase;
  const Poly pi1 = mom(ph, "eta1");
  Poly S = J0.S;
  for (unsigned c = 1; c <= 3; ++c) S += pi1 * mom(ph, idx("eta", c)) * gen(ph, idx("eta", c));
  return OddJacobiStructure::make(lie.dual_chart(), S, -pi1, "lie_algebra_cocycle");
}

ExactQSData exact_qs_1() {
  const Chart base = Chart::make({{"x", Parity::Even, 0}, {"xs", Parity::Odd, 1}});
  const Chart ph = cotangent_chart(base);
  ExactQSData d;
  d.qs = QSData::make(base, mom(ph, "xs") * mom(ph, "x"), Poly(ph), "exact_qs_1");
  d.E = VectorField::make(ph, std::map<std::string, Poly, std::less<>>{{"xs", gen(ph, "xs")}});
  return d;
}

ExactQSData exact_qs_2() {
  const Chart base = Chart::make({{"x", Parity::Even, 0}, {"d[x]", Parity::Odd, 1}});
  const Chart ph = cotangent_chart(base);
  ExactQSData d;
  d.qs = QSData::make(base, Poly(ph), gen(ph, "d[x]") * mom(ph, "x"), "exact_qs_2");
  d.E = VectorField::make(ph, std::map<std::string, Poly, std::less<>>{{"x", gen(ph, "x")}});
  return d;
}

AlgebroidData tangent_algebroid(unsigned n) {
  std::vector<GeneratorDecl> decls;
  std::vector<FibreDecl> fib;
  for (unsigned a = 1; a <= n; ++a) {
    decls.push_back({idx("x", a), Parity::Even, 0});
    fib.push_back({idx("xs", a), idx("xi", a), Parity::Even});
  }
  auto d = AlgebroidData::make(Chart::make(decls), fib, "tangent_" + std::to_string(n));
  for (unsigned a = 0; a < n; ++a) d.set_anchor(a, a, Poly::constant(d.base(), 1));
  return d;
}

AlgebroidData lie_algebra_2dim(const Rational& q1, const Rational& q2) {
  auto d = AlgebroidData::make(Chart(), {{"eta1", "xi1", Parity::Even}, {"eta2", "xi2", Parity::Even}}, "lie_2dim");
  d.set_bracket(1, 1, 0, Poly::constant(d.base(), 1));
  d.set_cocycle(0, Poly::constant(d.base(), q1));
  d.set_cocycle(1, Poly::constant(d.base(), q2));
  return d;
}

AlgebroidData non_jacobi_3dim() {
  std::vector<FibreDecl> fib;
  for (unsigned a = 1; a <= 3; ++a) fib.push_back({idx("eta", a), idx("xi", a), Parity::Even});
  auto d = AlgebroidData::make(Chart(), fib, "non_jacobi_3dim");
  d.set_bracket(2, 1, 0, Poly::constant(d.base(), 1));
  d.set_bracket(0, 2, 0, Poly::constant(d.base(), 1));
  return d;
}

AlgebroidData flat_connection(const Chart& base, const std::vector<Poly>& A, std::string name) {
  if (A.size() != base.size()) throw ShapeError("flat_connection needs one component per base coordinate");
  std::vector<FibreDecl> fib;
  for (const auto& g : base.generators()) {
    if (g.parity != Parity::Even) throw ShapeError("flat_connection needs an even base chart");
    fib.push_back({"xs_" + g.name, fibre_name(g.name), Parity::Even});
  }
  auto d = AlgebroidData::make(base, fib, std::move(name));
  const std::size_t n = base.size();
  for (std::size_t a = 0; a < n; ++a) {
    d.set_anchor(a, a, Poly::constant(base, 1));
    d.set_cocycle(a, -A[a]);
    for (std::size_t b = 0; b < n; ++b)
      if (a != b) {
        d.set_bracket(b, b, a, A[a]);
        d.set_bracket(a, b, a, -A[b]);
      }
  }
  return d;
}

}  // namespace ojac::examples
