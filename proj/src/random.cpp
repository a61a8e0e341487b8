#include "ojac/random.hpp"

namespace ojac {

int RandomPolys::coefficient() {
  std::uniform_int_distribution<int> dist(1, opts_.coeff_bound);
  const int c = dist(rng_);
  return coin() == Parity::Odd ? -c : c;
}

Parity RandomPolys::coin() { return std::uniform_int_distribution<int>(0, 1)(rng_) ? Parity::Odd : Parity::Even; }

Poly RandomPolys::function_of(const Chart& chart, const std::vector<std::size_t>& gens, Parity parity) {
  Poly out(chart);
  if (gens.empty()) return parity == Parity::Even ? Poly::constant(chart, coefficient()) : out;
  std::uniform_int_distribution<unsigned> nterms(1, opts_.max_terms);
  std::uniform_int_distribution<unsigned> degree(0, opts_.max_degree);
  std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
  const unsigned n = nterms(rng_);
  for (unsigned t = 0; t < n; ++t) {
    for (int attempt = 0; attempt < 32; ++attempt) {
      Monomial m(chart.size());
      const unsigned d = degree(rng_);
      for (unsigned k = 0; k < d; ++k) {
        const auto g = gens[pick(rng_)];
        if (chart[g].parity == Parity::Odd && m.power(g)) continue;
        m.set_power(g, m.power(g) + 1);
      }
      if (monomial_parity(chart, m) != parity || out.terms().count(m)) continue;
      out.add_term(m, coefficient());
      break;
    }
  }
  return out;
}

Poly RandomPolys::function(const Chart& chart, Parity parity) {
  std::vector<std::size_t> gens;
  for (std::size_t i = 0; i < chart.size(); ++i)
    if (opts_.include_momenta || chart[i].kind != GeneratorKind::Momentum) gens.push_back(i);
  return function_of(chart, gens, parity);
}

Poly RandomPolys::almost_schouten(const Chart& phase) {
  const auto base = phase.base_indices();
  const auto& pairs = phase.conjugate_pairs();
  Poly out(phase);
  for (std::size_t a = 0; a < pairs.size(); ++a)
    for (std::size_t b = a; b < pairs.size(); ++b) {
      const auto& [xa, pa] = pairs[a];
      const auto& [xb, pb] = pairs[b];
      // p_A p_A vanishes for odd A.
      if (a == b && phase[xa].parity == Parity::Odd) continue;
      const Parity want = Parity::Odd + phase[xa].parity + phase[xb].parity;
      out += function_of(phase, base, want) * Poly::gen(phase, pa) * Poly::gen(phase, pb);
    }
  return out;
}

Poly RandomPolys::odd_symbol(const Chart& phase) {
  const auto base = phase.base_indices();
  Poly out(phase);
  for (const auto& [x, p] : phase.conjugate_pairs())
    out += function_of(phase, base, flip(phase[x].parity)) * Poly::gen(phase, p);
  return out;
}

Poly random_function(const Chart& chart, unsigned max_degree, Parity parity, std::uint64_t seed) {
  RandomOptions opts;
  opts.max_degree = max_degree;
  RandomPolys rng(seed, opts);
  return rng.function(chart, parity);
}

}  // namespace ojac
