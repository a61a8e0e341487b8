#include "ojac/phase_space.hpp"

#include "ojac/error.hpp"

namespace ojac {

Chart cotangent_chart(const Chart& base) {
  if (base.has_momenta() || base.origin() == ChartOrigin::Cotangent)
    throw ChartError("already a cotangent chart: " + base.describe());
  std::vector<Generator> gens = base.generators();
  const std::size_t n = gens.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& z = base[i];
    gens.push_back(Generator{momentum_name(z.name), z.parity, -z.weight, GeneratorKind::Momentum, i});
  }
  return Chart::from_generators(std::move(gens), ChartOrigin::Cotangent);
}

Chart anticotangent_chart(const Chart& base, const std::map<std::string, int, std::less<>>& weight_override) {
  std::vector<Generator> gens = base.generators();
  for (auto& g : gens)
    if (g.kind == GeneratorKind::Momentum) g.kind = GeneratorKind::Base;
  const std::size_t n = gens.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& z = base[i];
    const auto name = fibre_name(z.name);
    auto it = weight_override.find(name);
    const int w = it == weight_override.end() ? z.weight : it->second;
    gens.push_back(Generator{name, flip(z.parity), w, GeneratorKind::Fibre, i});
  }
  return Chart::from_generators(std::move(gens), ChartOrigin::Anticotangent);
}

Chart product_chart(const Chart& a, const Chart& b) {
  if (a.has_momenta() || b.has_momenta()) throw ChartError("product of charts with momenta");
  std::vector<Generator> gens = a.generators();
  for (auto g : b.generators()) {
    if (g.kind != GeneratorKind::Base) g.of += a.size();
    gens.push_back(std::move(g));
  }
  return Chart::from_generators(std::move(gens), ChartOrigin::Product);
}

Chart phase_chart(const Chart& chart) {
  if (chart.has_momenta() || chart.origin() == ChartOrigin::Cotangent) return chart;
  return cotangent_chart(chart);
}

Chart base_chart(const Chart& phase) {
  if (!phase.has_momenta()) return phase;
  std::vector<Generator> gens;
  for (const auto& g : phase.generators()) {
    if (g.kind == GeneratorKind::Momentum) continue;
    if (gens.size() != &g - phase.generators().data()) throw ChartError("momenta must follow the base generators");
    gens.push_back(g);
  }
  return Chart::from_generators(std::move(gens), ChartOrigin::Plain);
}

Poly poisson(const Poly& F, const Poly& G) {
  require_same_chart(F.chart(), G.chart(), "poisson");
  const auto& chart = F.chart();
  if (!chart.has_momenta() && !chart.empty() && chart.origin() != ChartOrigin::Cotangent)
    throw ChartError("poisson bracket needs a cotangent chart, got " + chart.describe());
  Poly out(chart);
  for (const Parity fp : {Parity::Even, Parity::Odd}) {
    const Poly part = parity_part(F, fp);
    if (part.is_zero()) continue;
    for (const auto& [x, p] : chart.conjugate_pairs()) {
      const Parity a = chart[x].parity;
      const int s1 = koszul(a, fp) * sign_of(a);
      const int s2 = koszul(a, fp);
      const Poly dFp = left_derivative(part, p);
      if (!dFp.is_zero()) {
        const Poly dGx = left_derivative(G, x);
        if (!dGx.is_zero()) out += (dFp * dGx) * Rational(s1);
      }
      const Poly dFx = left_derivative(part, x);
      if (!dFx.is_zero()) {
        const Poly dGp = left_derivative(G, p);
        if (!dGp.is_zero()) out -= (dFx * dGp) * Rational(s2);
      }
    }
  }
  return out;
}

VectorField::VectorField(Chart phase, Parity parity) : chart_(std::move(phase)), parity_(parity) {}

VectorField VectorField::make(const Chart& phase, const std::map<std::size_t, Poly>& components) {
  VectorField out(phase);
  std::optional<Parity> seen;
  for (const auto& [z, c] : components) {
    require_same_chart(phase, c.chart(), "vector field component");
    if (z >= phase.size() || phase[z].kind == GeneratorKind::Momentum || !phase.momentum_of(z))
      throw ShapeError("vector field component along a generator without conjugate momentum");
    if (c.is_zero()) continue;
    if (!is_momentum_free(c)) throw ShapeError("vector field component contains momenta: " + c.str());
    const Parity p = homogeneous_parity(c, "vector field component") + phase[z].parity;
    if (seen && *seen != p) throw ParityError("vector field with non-uniform parity");
    seen = p;
    out.components_.emplace(z, c);
  }
  out.parity_ = seen.value_or(Parity::Even);
  return out;
}

VectorField VectorField::make(const Chart& phase, const std::map<std::string, Poly, std::less<>>& components) {
  std::map<std::size_t, Poly> by_index;
  for (const auto& [name, c] : components) by_index.emplace(phase.index_of(name), c);
  return make(phase, by_index);
}

Poly VectorField::component(std::size_t z) const {
  auto it = components_.find(z);
  return it == components_.end() ? Poly(chart_) : it->second;
}

Poly VectorField::component(std::string_view z) const { return component(chart_.index_of(z)); }

VectorField VectorField::operator-() const {
  VectorField out(*this);
  for (auto& [z, c] : out.components_) c = -c;
  return out;
}

namespace {

VectorField combine(const VectorField& a, const VectorField& b, int sign) {
  require_same_chart(a.chart(), b.chart(), "vector field sum");
  std::map<std::size_t, Poly> comps = a.components();
  for (const auto& [z, c] : b.components()) {
    auto [it, inserted] = comps.try_emplace(z, c * Rational(sign));
    if (!inserted) it->second += c * Rational(sign);
  }
  VectorField out = VectorField::make(a.chart(), comps);
  if (out.is_zero()) return VectorField(a.chart(), a.parity());
  return out;
}

}  // namespace

VectorField operator+(const VectorField& a, const VectorField& b) { return combine(a, b, 1); }
VectorField operator-(const VectorField& a, const VectorField& b) { return combine(a, b, -1); }

VectorField operator*(const Poly& f, const VectorField& x) {
  std::map<std::size_t, Poly> comps;
  for (const auto& [z, c] : x.components()) comps.emplace(z, f * c);
  VectorField out = VectorField::make(x.chart(), comps);
  if (out.is_zero()) return VectorField(x.chart(), x.parity() + homogeneous_parity(f));
  return out;
}

VectorField operator*(const Rational& c, const VectorField& x) {
  if (c == 0) return VectorField(x.chart(), x.parity());
  VectorField out(x);
  for (auto& [z, comp] : out.components_) comp *= c;
  return out;
}

bool VectorField::operator==(const VectorField& other) const {
  return chart_ == other.chart_ && components_ == other.components_ &&
         (components_.empty() || parity_ == other.parity_);
}

std::string VectorField::str() const { return symbol(*this).str(); }

Poly symbol(const VectorField& x) {
  Poly out(x.chart());
  for (const auto& [z, c] : x.components()) out += c * Poly::gen(x.chart(), *x.chart().momentum_of(z));
  return out;
}

VectorField unsymbol(const Poly& chi) {
  const auto degrees = momentum_degrees(chi);
  if (!degrees.empty() && (degrees.size() != 1 || *degrees.begin() != 1))
    throw ShapeError("unsymbol: momentum degree must be exactly one: " + chi.str());
  const auto& chart = chi.chart();
  std::map<std::size_t, Poly> comps;
  for (const auto& [x, p] : chart.conjugate_pairs()) {
    Poly c = right_derivative(chi, p);
    if (!c.is_zero()) comps.emplace(x, std::move(c));
  }
  return VectorField::make(chart, comps);
}

Poly apply(const VectorField& x, const Poly& f) {
  if (!is_momentum_free(f)) throw ShapeError("vector fields act on momentum-free functions: " + f.str());
  return poisson(symbol(x), f);
}

VectorField commutator(const VectorField& x, const VectorField& y) {
  require_same_chart(x.chart(), y.chart(), "commutator");
  VectorField out = unsymbol(poisson(symbol(x), symbol(y)));
  if (out.is_zero()) return VectorField(x.chart(), x.parity() + y.parity());
  return out;
}

VectorField euler_field(const Chart& chart) {
  const Chart phase = phase_chart(chart);
  std::map<std::size_t, Poly> comps;
  for (const auto z : phase.base_indices())
    if (phase[z].weight != 0 && phase.momentum_of(z))
      comps.emplace(z, Poly::gen(phase, z) * Rational(phase[z].weight));
  return VectorField::make(phase, comps);
}

VectorField de_rham_field(const Chart& chart) {
  const Chart phase = phase_chart(chart);
  std::map<std::size_t, Poly> comps;
  for (const auto z : phase.base_indices())
    if (auto dz = phase.fibre_of(z)) comps.emplace(z, Poly::gen(phase, *dz));
  if (comps.empty()) return VectorField(phase, Parity::Odd);
  return VectorField::make(phase, comps);
}

Poly de_rham(const Poly& f) {
  if (!is_momentum_free(f)) throw ShapeError("de Rham differential of a function with momenta");
  // Sum of d[z] df/dz, the action of de_rham_field. Computed directly so
  // that charts whose coordinates are named like momenta (anticotangent
  // charts of phase spaces) need no cotangent chart of their own.
  const Chart& c = f.chart();
  Poly out(c);
  for (std::size_t z = 0; z < c.size(); ++z)
    if (auto dz = c.fibre_of(z)) out += Poly::gen(c, *dz) * left_derivative(f, z);
  return out;
}

std::optional<int> field_weight(const VectorField& x) { return weight_of(symbol(x)); }

Poly interior(const VectorField& x, const Poly& form) {
  const auto& c = form.chart();
  Poly out(c);
  for (const auto& [z, comp] : x.components()) {
    const auto dz = c.find(fibre_name(x.chart()[z].name));
    if (!dz) continue;
    out += embed(comp, c) * left_derivative(form, *dz);
  }
  return out * Rational(sign_of(x.parity()));
}

Poly canonical_symplectic_form(const Chart& phase) {
  const Chart forms = anticotangent_chart(phase);
  Poly out(forms);
  for (const auto& [x, p] : phase.conjugate_pairs())
    out += Poly::gen(forms, fibre_name(phase[p].name)) * Poly::gen(forms, fibre_name(phase[x].name));
  return out;
}

Poly pullback_form(const Poly& form, const Chart& target, const NamedBinding& coordinate_images) {
  const auto& source = form.chart();
  NamedBinding full;
  for (std::size_t i = 0; i < source.size(); ++i) {
    const auto& g = source[i];
    if (g.kind == GeneratorKind::Fibre) continue;
    auto it = coordinate_images.find(g.name);
    Poly img = it != coordinate_images.end() ? it->second : Poly::gen(target, g.name);
    if (auto dz = source.fibre_of(i)) full.emplace(source[*dz].name, de_rham(img));
    full.emplace(g.name, std::move(img));
  }
  return pullback(form, target, full);
}

}  // namespace ojac
