// Acceptance run: one PASS/FAIL line per criterion.
// Usage: acceptance OJCHECK GOLDEN_DIR

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "ojac/dsl.hpp"
#include "ojac/examples.hpp"

using namespace ojac;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back(what);
    }
  }
  void require(const VerificationReport& r, const std::string& what) {
    if (!r.verdict()) {
      pass = false;
      std::string s = r.str();
      if (s.size() > 600) s = s.substr(0, 600) + "...";
      notes.push_back(what + ": " + s);
    }
  }
};

Chart euclidean(unsigned p, unsigned q) {
  std::vector<GeneratorDecl> decls;
  for (unsigned i = 1; i <= p; ++i) decls.push_back({"x" + std::to_string(i), Parity::Even, 0});
  for (unsigned i = 1; i <= q; ++i) decls.push_back({"th" + std::to_string(i), Parity::Odd, 0});
  return Chart::make(decls);
}

Poly mom(const Chart& c, const std::string& z) { return Poly::gen(c, momentum_name(z)); }

// 1
void superline(Outcome& o) {
  const auto J = examples::superline();
  const auto r = verify_odd_jacobi(J);
  o.require(r, "verify_odd_jacobi(superline)");
  for (const auto& c : r.conditions) o.require(c.residual.is_zero(), c.name + " is not zero");
  // {S,S} = -2 (-pi)(-pi p), both sides zero as pi^2 = 0.
  const Poly pi = mom(J.phase, "xi"), p = mom(J.phase, "t");
  const Poly lhs = poisson(J.S, J.S), rhs = (-pi) * (-(pi * p)) * Rational(-2);
  o.require(lhs == rhs && lhs.is_zero(), "{S,S} = -2(-pi)(-pi p) with both sides zero");
}

// 2
void odd_contact(Outcome& o) {
  for (unsigned n : {1u, 2u}) {
    o.require(verify_odd_jacobi(examples::odd_contact(n)), "verify_odd_jacobi(odd_contact " + std::to_string(n) + ")");
    o.require(contact_check(n), "contact_check(" + std::to_string(n) + ")");
  }
}

// 3
void algebra_theorem(Outcome& o) {
  SampleOptions so;
  so.samples = 100;
  so.max_degree = 3;
  for (const auto& J : {examples::superline(), examples::odd_contact(1), examples::odd_contact(2)}) {
    so.seed += 1000;
    o.require(check_theorem_odd_jacobi_algebra(J, so), J.name);
  }
}

// 4
void derivations(Outcome& o) {
  for (const auto& e : dsl::catalog_entries()) {
    if (e.negative) continue;
    for (unsigned n = 1; n <= (e.parameterized ? 2u : 1u); ++n) {
      const dsl::Model m = dsl::catalog(e.name, n);
      const dsl::Session s(m);
      for (const auto& decl : m.structures) {
        const auto& b = s.structure(decl.name);
        if (!b.jacobi) continue;
        const auto& J = *b.jacobi;
        RandomPolys rng(4000 + n);
        // The two directions of the biconditional are counted apart.
        unsigned failed_identities = 0, closed_not_jacobi = 0, jacobi_not_closed = 0;
        for (int i = 0; i < 20; ++i) {
          const Poly f = rng.function(J.phase, rng.coin()), g = rng.function(J.phase, rng.coin());
          if (!check_derivation_and_morphism(J, f, g).verdict()) ++failed_identities;
          const auto r = check_q_closed_hamiltonian(J, f);
          if (!r.verdict()) ++(r.observations.front().residual.is_zero() ? closed_not_jacobi : jacobi_not_closed);
        }
        o.require(failed_identities == 0, J.name + ": derivation/morphism identities fail on " +
                                               std::to_string(failed_identities) + " of 20 samples");
        o.require(closed_not_jacobi == 0, J.name + ": Q(f) = 0 but X_f is not a Jacobi field on " +
                                               std::to_string(closed_not_jacobi) + " of 20 samples");
        o.require(jacobi_not_closed == 0, J.name + ": X_f is a Jacobi field but Q(f) != 0 on " +
                                               std::to_string(jacobi_not_closed) + " of 20 samples");
      }
    }
  }
}

// 5
void schoutenization(Outcome& o) {
  RandomPolys rng(77);
  for (const Chart& base : {euclidean(1, 1), euclidean(2, 1)})
    for (int i = 0; i < 15; ++i) {
      const Chart ph = cotangent_chart(base);
      const auto J = OddJacobiStructure::make(base, rng.almost_schouten(ph), rng.odd_symbol(ph));
      o.require(check_schoutenization_identities(J), "identities on random (S, Q)");
    }
  o.require(verify_qs(schoutenize(examples::superline(), "s")), "verify_qs(schoutenize(superline))");
}

// 6
void exact_qs(Outcome& o) {
  const auto d = examples::exact_qs_1();
  o.require(verify_qs(d.qs), "verify_qs(exact_qs_1)");
  o.require(verify_exact_qs(d), "verify_exact_qs(exact_qs_1)");
  for (const auto& [a, b] : std::vector<std::pair<int, int>>{{1, 0}, {0, 1}, {1, 1}, {2, 3}})
    o.require(verify_odd_jacobi(exact_qs_to_jacobi(d, a, b)),
              "pencil (" + std::to_string(a) + "," + std::to_string(b) + ")");
}

// 7
void algebroid_chain(Outcome& o) {
  // Brute-force search for a non-zero cocycle of the 2-dim Lie algebra.
  std::optional<AlgebroidData> lie;
  for (int q1 = -2; q1 <= 2 && !lie; ++q1)
    for (int q2 = -2; q2 <= 2 && !lie; ++q2) {
      if (q1 == 0 && q2 == 0) continue;
      auto d = examples::lie_algebra_2dim(q1, q2);
      if (verify_odd_jacobi(build_jacobi_algebroid(d)).verdict()) lie = d;
    }
  o.require(lie.has_value(), "no cocycle found");
  if (!lie) return;
  for (const auto& d : {*lie, extend_lie_algebroid(examples::tangent_algebroid(1))}) {
    const std::string n = d.name.empty() ? "algebroid" : d.name;
    o.require(verify_odd_jacobi(build_jacobi_algebroid(d)), n + " build_jacobi_algebroid");
    const QuasiQData q = extract_quasiq(d, false);
    o.require(verify_quasi_q(q), n + " extract_quasiq");
    const auto h = lie_algebroid_from_jacobi(d, false);
    o.require(commutator(h.Q, h.Q).is_zero(), n + " [Q,Q] = 0");
    o.require(apply(h.Q, h.phi).is_zero(), n + " Q(phi) = 0");
    const auto back = homological_plus_cocycle_to_quasiq(h.Q, h.phi);
    o.require(back.D == q.D && back.q == q.q, n + " (Q, phi) -> quasi Q round trip");
    const auto fwd = quasiq_to_homological(q);
    o.require(fwd.Q == h.Q && fwd.phi == h.phi, n + " quasi Q -> (Q, phi) round trip");
  }
  const auto bad = verify_odd_jacobi(build_jacobi_algebroid(examples::non_jacobi_3dim()));
  bool nonzero = false;
  for (const auto& c : bad.conditions) nonzero = nonzero || !c.residual.is_zero();
  o.require(!bad.verdict() && nonzero, "non-Jacobi constants must fail with a nonzero residual");
}

// 8
void lemma_a(Outcome& o) {
  for (const auto& [n, r] : std::vector<std::pair<unsigned, unsigned>>{{1, 1}, {1, 2}, {2, 1}})
    o.require(verify_symplectomorphism(n, r), "symplectomorphism (" + std::to_string(n) + "|" + std::to_string(r) + ")");
  RandomOptions ro;
  ro.include_momenta = true;
  ro.max_degree = 3;
  RandomPolys rng(101, ro);
  const auto d = AlgebroidData::make(Chart::make({{"x", Parity::Even, 0}}), {{"eta", "xi", Parity::Even}});
  const Chart ph = d.dual_phase();
  unsigned bad = 0;
  for (int i = 0; i < 50; ++i) {
    const Poly F = rng.function(ph, rng.coin()), G = rng.function(ph, rng.coin());
    if (poisson(r_pullback(d, F), r_pullback(d, G)) != r_pullback(d, poisson(F, G))) ++bad;
  }
  o.require(bad == 0, "bracket preservation fails on " + std::to_string(bad) + " of 50 pairs");
}

// 9
void corollaries(Outcome& o) {
  const auto J = extend_lie_to_jacobi(examples::tangent_algebroid(1));
  const auto oc = examples::odd_contact(1);
  o.require(J.phase == oc.phase && J.S == oc.S && J.Q == oc.Q, "extension of T R^1 equals the odd contact structure");
  const Chart b = Chart::make({{"x", Parity::Even, 0}, {"y", Parity::Even, 0}});
  const Poly x = Poly::gen(b, "x"), y = Poly::gen(b, "y");
  o.require(verify_odd_jacobi(build_jacobi_algebroid(examples::flat_connection(b, {y, x}))), "exact A");
  o.require(!verify_odd_jacobi(build_jacobi_algebroid(examples::flat_connection(b, {Poly(b), x}))).verdict(),
            "non-closed A must fail");
  for (const auto& d : {extend_lie_algebroid(examples::tangent_algebroid(1)), examples::lie_algebra_2dim(1, 0)}) {
    const auto q = schoutenize_algebroid(d);
    o.require(weight_of(q.Sbar) == -1, "schoutenized S has weight -1");
    o.require(verify_qs(q), "verify_qs(schoutenize_algebroid)");
  }
}

// 10
void self_tests(Outcome& o) {
  {
    const Chart c = euclidean(2, 2);
    RandomPolys rng(11);
    unsigned bad = 0;
    for (int i = 0; i < 100; ++i) {
      const Parity pf = rng.coin(), pg = rng.coin();
      const Poly f = rng.function(c, pf), g = rng.function(c, pg), h = rng.function(c, rng.coin());
      bool ok = (f * g) * h == f * (g * h) && f * (g + h) == f * g + f * h && f * g == g * f * Rational(koszul(pf, pg));
      for (std::size_t z = 0; z < c.size(); ++z)
        ok = ok && left_derivative(f * g, z) ==
                       left_derivative(f, z) * g + f * left_derivative(g, z) * Rational(koszul(c[z].parity, pf));
      if (!ok) ++bad;
    }
    o.require(bad == 0, "graded-core invariants fail on " + std::to_string(bad) + " samples");
  }
  {
    const Chart ph = cotangent_chart(euclidean(2, 2));
    RandomOptions ro;
    ro.include_momenta = true;
    ro.max_terms = 3;
    RandomPolys rng(17, ro);
    unsigned bad = 0;
    for (int i = 0; i < 60; ++i) {
      const Parity pf = rng.coin(), pg = rng.coin();
      const Poly f = rng.function(ph, pf), g = rng.function(ph, pg), h = rng.function(ph, rng.coin());
      const Rational s = koszul(pf, pg);
      const Poly fg = poisson(f, g);
      const bool ok = (fg + poisson(g, f) * s).is_zero() &&
                      (poisson(f, poisson(g, h)) - poisson(fg, h) - poisson(g, poisson(f, h)) * s).is_zero() &&
                      (poisson(f, g * h) - fg * h - g * poisson(f, h) * s).is_zero();
      if (!ok) ++bad;
    }
    o.require(bad == 0, "Poisson axioms fail on " + std::to_string(bad) + " samples");
  }
  {
    // {Q,Q}, {Q,S}, {S,S} + 2QS against their coordinate expansions.
    const Chart base = euclidean(1, 1);
    const Chart ph = cotangent_chart(base);
    const std::size_t n = base.size();
    const auto par = [&](std::size_t a) { return base[a].parity; };
    const auto p = [&](std::size_t a) { return Poly::gen(ph, *ph.momentum_of(a)); };
    const auto d = [](const Poly& f, std::size_t a) { return left_derivative(f, a); };
    RandomPolys rng(31);
    unsigned bad = 0;
    for (int i = 0; i < 40; ++i) {
      std::vector<std::vector<Poly>> s(n, std::vector<Poly>(n, Poly(ph)));
      std::vector<Poly> q;
      for (std::size_t a = 0; a < n; ++a) {
        q.push_back(rng.function_of(ph, ph.base_indices(), flip(par(a))));
        for (std::size_t b = a; b < n; ++b) {
          if (a == b && par(a) == Parity::Odd) continue;
          s[a][b] = rng.function_of(ph, ph.base_indices(), Parity::Odd + par(a) + par(b));
          s[b][a] = s[a][b] * Rational(koszul(par(a), par(b)));
        }
      }
      Poly S(ph), Q(ph), qq(ph), qs(ph), ss(ph);
      for (std::size_t a = 0; a < n; ++a) {
        Q += q[a] * p(a);
        for (std::size_t b = 0; b < n; ++b) S += s[a][b] * p(b) * p(a) * Rational(1, 2);
      }
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
          qq += q[b] * d(q[a], b) * p(a) * Rational(2);
          Poly coeff(ph);
          for (std::size_t c = 0; c < n; ++c)
            coeff += q[c] * d(s[b][a], c) * Rational(1, 2) + s[b][c] * d(q[a], c) * Rational(sign_of(par(b)));
          qs += coeff * p(a) * p(b);
          for (std::size_t c = 0; c < n; ++c) {
            Poly inner = q[c] * s[b][a];
            for (std::size_t e = 0; e < n; ++e) inner += s[c][e] * d(s[b][a], e);
            ss += inner * p(a) * p(b) * p(c) * Rational(sign_of(par(c)));
          }
        }
      if (poisson(Q, Q) != qq || poisson(Q, S) != qs || poisson(S, S) + Q * S * Rational(2) != ss) ++bad;
    }
    o.require(bad == 0, "local expansions disagree on " + std::to_string(bad) + " samples");
  }
}

// Runs `cmd`, returning the exit status and stdout.
std::pair<int, std::string> run(const std::string& cmd) {
  std::string out;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return {-1, out};
  char buf[4096];
  std::size_t k;
  while ((k = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, k);
  const int st = pclose(p);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string ojcheck, golden;

// 11
void cli(Outcome& o) {
  const auto [rc, out] = run("'" + ojcheck + "' verify '" + golden + "/superline.dsl' --format json");
  o.require(rc == 0, "superline exit code " + std::to_string(rc));
  o.require(out == slurp(golden + "/superline.json"), "superline JSON differs from the golden file");
  for (const char* neg : {"lie_schouten_non_jacobi", "flat_connection_not_closed"}) {
    const auto [nrc, nout] = run("'" + ojcheck + "' examples run " + neg + " --format json");
    o.require(nrc == 1, std::string(neg) + " exit code " + std::to_string(nrc));
  }
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: acceptance OJCHECK GOLDEN_DIR\n";
    return 2;
  }
  ojcheck = argv[1];
  golden = argv[2];
  struct Criterion {
    const char* title;
    double budget;
    std::function<void(Outcome&)> run;
  };
  const std::vector<Criterion> criteria = {
      {"superline odd Jacobi structure", 1, superline},
      {"odd contact structure and contact identities", 2, odd_contact},
      {"odd Jacobi algebra on 100 sampled triples", 20, algebra_theorem},
      {"derivation, morphism and Q-closed identities on catalog structures", 10, derivations},
      {"schoutenization", 5, schoutenization},
      {"exact QS structure and pencil", 3, exact_qs},
      {"Jacobi algebroid chain", 5, algebroid_chain},
      {"R is a symplectomorphism", 5, lemma_a},
      {"extension, flat connection, schoutenized algebroid", 5, corollaries},
      {"engine self-tests", 10, self_tests},
      {"CLI golden file and negative exit codes", 1, cli},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i].run(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.require(secs < criteria[i].budget, "over the time budget of " + std::to_string(criteria[i].budget) + " s");
    char line[160];
    std::snprintf(line, sizeof line, "criterion %2zu: %s  %s (%.2f s)", i + 1, o.pass ? "PASS" : "FAIL",
                  criteria[i].title, secs);
    std::cout << line << '\n';
    for (const auto& n : o.notes) std::cout << "    " << n << '\n';
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
