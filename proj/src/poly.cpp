#include "ojac/poly.hpp"

#include <algorithm>
#include <sstream>

#include "ojac/error.hpp"

namespace ojac {

std::string to_string(const Rational& q) { return q.get_str(); }

void Monomial::set_rate(std::size_t i, int r) {
  if (rates_.empty()) {
    if (r == 0) return;
    rates_.assign(powers_.size(), 0);
  }
  rates_[i] = r;
  if (std::all_of(rates_.begin(), rates_.end(), [](int x) { return x == 0; })) rates_.clear();
}

unsigned Monomial::degree() const {
  unsigned d = 0;
  for (auto p : powers_) d += p;
  return d;
}

bool MonomialOrder::operator()(const Monomial& a, const Monomial& b) const {
  const unsigned da = a.degree(), db = b.degree();
  if (da != db) return da < db;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a.power(i) != b.power(i)) return a.power(i) > b.power(i);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a.rate(i) != b.rate(i)) return a.rate(i) < b.rate(i);
  return false;
}

Poly::Poly(Chart chart) : chart_(std::move(chart)) {}

Poly Poly::constant(const Chart& chart, const Rational& c) {
  Poly p(chart);
  p.add_term(Monomial(chart.size()), c);
  return p;
}

Poly Poly::gen(const Chart& chart, std::size_t index) {
  if (index >= chart.size()) throw ChartError("generator index out of range");
  Poly p(chart);
  Monomial m(chart.size());
  m.set_power(index, 1);
  p.add_term(m, 1);
  return p;
}

Poly Poly::gen(const Chart& chart, std::string_view name) { return gen(chart, chart.index_of(name)); }

Poly Poly::exp_tag(const Chart& chart, std::string_view name, int rate) {
  const auto i = chart.index_of(name);
  if (chart[i].parity != Parity::Even || chart[i].kind == GeneratorKind::Momentum)
    throw ParityError("exponential of '" + std::string(name) + "' requires an even coordinate");
  Poly p(chart);
  Monomial m(chart.size());
  m.set_rate(i, rate);
  p.add_term(m, 1);
  return p;
}

void Poly::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Poly Poly::operator-() const {
  Poly out(*this);
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

Poly& Poly::operator+=(const Poly& other) {
  require_same_chart(chart_, other.chart_, "addition");
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& other) {
  require_same_chart(chart_, other.chart_, "subtraction");
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

Poly& Poly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, coeff] : terms_) coeff *= c;
  return *this;
}

bool Poly::operator==(const Poly& other) const { return chart_ == other.chart_ && terms_ == other.terms_; }

namespace {

// Product of canonical monomials a*b; returns 0 when an odd generator
// repeats, otherwise the Koszul sign of sorting b's odd factors past a's.
int merge(const Chart& chart, const Monomial& a, const Monomial& b, Monomial& out) {
  const std::size_t n = chart.size();
  out = Monomial(n);
  int odd_in_a_after = 0;  // odd factors of a at positions > i
  for (std::size_t i = 0; i < n; ++i)
    if (chart[i].parity == Parity::Odd && a.power(i)) ++odd_in_a_after;
  int sign = 1;
  for (std::size_t i = 0; i < n; ++i) {
    const bool odd = chart[i].parity == Parity::Odd;
    if (odd && a.power(i)) --odd_in_a_after;
    if (odd && a.power(i) && b.power(i)) return 0;
    if (odd && b.power(i) && (odd_in_a_after & 1)) sign = -sign;
    out.set_power(i, a.power(i) + b.power(i));
    if (a.has_rates() || b.has_rates()) out.set_rate(i, a.rate(i) + b.rate(i));
  }
  return sign;
}

}  // namespace

Poly operator*(const Poly& a, const Poly& b) {
  require_same_chart(a.chart(), b.chart(), "multiplication");
  Poly out(a.chart());
  Monomial m;
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) {
      const int s = merge(a.chart(), ma, mb, m);
      if (s == 0) continue;
      out.add_term(m, s > 0 ? Rational(ca * cb) : Rational(-(ca * cb)));
    }
  return out;
}

Poly multiply(const Poly& f, const Poly& g) { return f * g; }

Poly pow(const Poly& f, unsigned k) {
  Poly out = Poly::constant(f.chart(), 1);
  for (unsigned i = 0; i < k; ++i) out = out * f;
  return out;
}

Parity monomial_parity(const Chart& chart, const Monomial& m) {
  Parity p = Parity::Even;
  for (std::size_t i = 0; i < m.size(); ++i)
    if (m.power(i) && chart[i].parity == Parity::Odd) p = flip(p);
  return p;
}

ParityClass parity_of(const Poly& f) {
  std::optional<Parity> seen;
  for (const auto& [m, c] : f.terms()) {
    const Parity p = monomial_parity(f.chart(), m);
    if (seen && *seen != p) return ParityClass::Mixed;
    seen = p;
  }
  return seen.value_or(Parity::Even) == Parity::Odd ? ParityClass::Odd : ParityClass::Even;
}

Parity homogeneous_parity(const Poly& f, std::string_view what) {
  switch (parity_of(f)) {
    case ParityClass::Even: return Parity::Even;
    case ParityClass::Odd: return Parity::Odd;
    case ParityClass::Mixed: break;
  }
  throw ParityError(std::string(what) + " has mixed parity: " + f.str());
}

Poly parity_part(const Poly& f, Parity p) {
  Poly out(f.chart());
  for (const auto& [m, c] : f.terms())
    if (monomial_parity(f.chart(), m) == p) out.add_term(m, c);
  return out;
}

int monomial_weight(const Chart& chart, const Monomial& m) {
  int w = 0;
  for (std::size_t i = 0; i < m.size(); ++i) w += static_cast<int>(m.power(i)) * chart[i].weight;
  return w;
}

std::optional<int> weight_of(const Poly& f) {
  std::optional<int> seen;
  for (const auto& [m, c] : f.terms()) {
    const int w = monomial_weight(f.chart(), m);
    if (seen && *seen != w) return std::nullopt;
    seen = w;
  }
  return seen.value_or(0);
}

std::set<unsigned> momentum_degrees(const Poly& f) {
  std::set<unsigned> out;
  const auto& chart = f.chart();
  for (const auto& [m, c] : f.terms()) {
    unsigned d = 0;
    for (std::size_t i = 0; i < m.size(); ++i)
      if (chart[i].kind == GeneratorKind::Momentum) d += m.power(i);
    out.insert(d);
  }
  return out;
}

bool is_momentum_free(const Poly& f) {
  const auto d = momentum_degrees(f);
  return d.empty() || (d.size() == 1 && *d.begin() == 0);
}

namespace {

Poly derivative(const Poly& f, std::size_t z, bool left) {
  const auto& chart = f.chart();
  if (z >= chart.size()) throw ChartError("derivative: generator index out of range");
  const bool odd = chart[z].parity == Parity::Odd;
  Poly out(chart);
  for (const auto& [m, c] : f.terms()) {
    if (!odd && m.rate(z) != 0) out.add_term(m, c * m.rate(z));
    const unsigned k = m.power(z);
    if (k == 0) continue;
    Monomial d = m;
    d.set_power(z, k - 1);
    if (!odd) {
      out.add_term(d, c * k);
      continue;
    }
    int passed = 0;
    if (left) {
      for (std::size_t i = 0; i < z; ++i)
        if (m.power(i) && chart[i].parity == Parity::Odd) ++passed;
    } else {
      for (std::size_t i = z + 1; i < m.size(); ++i)
        if (m.power(i) && chart[i].parity == Parity::Odd) ++passed;
    }
    out.add_term(d, (passed & 1) ? Rational(-c) : c);
  }
  return out;
}

}  // namespace

Poly left_derivative(const Poly& f, std::size_t z) { return derivative(f, z, true); }
Poly left_derivative(const Poly& f, std::string_view z) { return derivative(f, f.chart().index_of(z), true); }
Poly right_derivative(const Poly& f, std::size_t z) { return derivative(f, z, false); }

namespace {

// Shared by substitute/pullback: image(i) returns the image of source
// generator i on the target chart, or nullopt when it maps to `same[i]`.
template <class ImageFn>
Poly substitute_impl(const Poly& f, const Chart& target, ImageFn image, const std::vector<std::size_t>& same) {
  const auto& source = f.chart();
  Poly out(target);
  for (const auto& [m, c] : f.terms()) {
    Poly term = Poly::constant(target, c);
    Monomial tags(target.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
      const Poly* img = image(i);
      if (m.rate(i) != 0) {
        if (img) throw ShapeError("cannot substitute into exp(" + std::to_string(m.rate(i)) + "*" + source[i].name + ")");
        tags.set_rate(same[i], m.rate(i));
      }
      if (m.power(i) == 0) continue;
      if (img) {
        for (unsigned k = 0; k < m.power(i); ++k) term = term * *img;
      } else {
        Monomial g(target.size());
        g.set_power(same[i], m.power(i));
        Poly gp(target);
        gp.add_term(g, 1);
        term = term * gp;
      }
      if (term.is_zero()) break;
    }
    if (tags.has_rates()) {
      Poly t(target);
      t.add_term(tags, 1);
      term = term * t;
    }
    out += term;
  }
  return out;
}

void check_binding_parity(const Generator& g, const Poly& img) {
  if (img.is_zero()) return;
  const auto pc = parity_of(img);
  const auto want = g.parity == Parity::Odd ? ParityClass::Odd : ParityClass::Even;
  if (pc != want)
    throw ParityError("binding for " + std::string(to_string(g.parity)) + " generator '" + g.name +
                      "' has the wrong parity: " + img.str());
}

}  // namespace

Poly substitute(const Poly& f, const Binding& binding) {
  const auto& chart = f.chart();
  for (const auto& [i, img] : binding) {
    if (i >= chart.size()) throw ChartError("binding: generator index out of range");
    require_same_chart(chart, img.chart(), "substitute");
    check_binding_parity(chart[i], img);
  }
  std::vector<std::size_t> same(chart.size());
  for (std::size_t i = 0; i < same.size(); ++i) same[i] = i;
  return substitute_impl(
      f, chart,
      [&](std::size_t i) -> const Poly* {
        auto it = binding.find(i);
        return it == binding.end() ? nullptr : &it->second;
      },
      same);
}

Poly pullback(const Poly& f, const Chart& target, const NamedBinding& binding) {
  const auto& source = f.chart();
  std::vector<const Poly*> images(source.size(), nullptr);
  std::vector<std::size_t> same(source.size(), 0);
  for (const auto& [name, img] : binding) {
    const auto i = source.index_of(name);
    require_same_chart(target, img.chart(), "pullback");
    check_binding_parity(source[i], img);
    images[i] = &img;
  }
  // Only generators that actually occur need a namesake in the target.
  std::vector<bool> used(source.size(), false);
  for (const auto& [m, c] : f.terms())
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m.power(i) || m.rate(i)) used[i] = true;
  for (std::size_t i = 0; i < source.size(); ++i) {
    if (images[i] || !used[i]) continue;
    const auto j = target.find(source[i].name);
    if (!j) throw ChartError("pullback: no image for generator '" + source[i].name + "' in " + target.describe());
    if (target[*j].parity != source[i].parity)
      throw ParityError("pullback: generator '" + source[i].name + "' changes parity");
    same[i] = *j;
  }
  return substitute_impl(f, target, [&](std::size_t i) { return images[i]; }, same);
}

Poly embed(const Poly& f, const Chart& target) {
  if (f.chart() == target) return f;
  return pullback(f, target, {});
}

namespace {

void render_monomial(std::ostream& os, const Chart& chart, const Monomial& m) {
  bool first = true;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m.power(i)) {
      os << (first ? "" : "*") << chart[i].name;
      if (m.power(i) > 1) os << '^' << m.power(i);
      first = false;
    }
    if (m.rate(i)) {
      os << (first ? "" : "*") << "exp(" << m.rate(i) << '*' << chart[i].name << ')';
      first = false;
    }
  }
}

}  // namespace

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    const bool neg = c < 0;
    const Rational mag = neg ? Rational(-c) : c;
    if (first)
      os << (neg ? "-" : "");
    else
      os << (neg ? " - " : " + ");
    first = false;
    const bool unit = m.degree() == 0 && !m.has_rates();
    if (unit) {
      os << to_string(mag);
    } else {
      if (mag != 1) os << to_string(mag) << '*';
      render_monomial(os, chart_, m);
    }
  }
  return os.str();
}

}  // namespace ojac
