#include "ojac/chart.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "ojac/error.hpp"

namespace ojac {

const char* to_string(Parity p) { return p == Parity::Even ? "even" : "odd"; }

std::string momentum_name(std::string_view z) { return "P[" + std::string(z) + "]"; }
std::string fibre_name(std::string_view z) { return "d[" + std::string(z) + "]"; }

struct Chart::Data {
  std::vector<Generator> gens;
  ChartOrigin origin = ChartOrigin::Plain;
  std::map<std::string, std::size_t, std::less<>> index;
  std::vector<std::optional<std::size_t>> momentum;
  std::vector<std::optional<std::size_t>> fibre;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
};

namespace {

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };
  if (!alpha(s.front())) return false;
  return std::all_of(s.begin(), s.end(), [&](char c) { return alpha(c) || (c >= '0' && c <= '9'); });
}

}  // namespace

Chart::Chart() : Chart(build({}, ChartOrigin::Plain)) {}

Chart::Chart(std::shared_ptr<const Data> d) : d_(std::move(d)) {}

std::shared_ptr<const Chart::Data> Chart::build(std::vector<Generator> gens, ChartOrigin origin) {
  auto d = std::make_shared<Chart::Data>();
  d->origin = origin;
  d->momentum.assign(gens.size(), std::nullopt);
  d->fibre.assign(gens.size(), std::nullopt);
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const auto& g = gens[i];
    if (!d->index.emplace(g.name, i).second) throw ChartError("duplicate generator name '" + g.name + "'");
    if (g.kind == GeneratorKind::Base) continue;
    if (g.of >= gens.size() || g.of == i) throw ChartError("dangling link on generator '" + g.name + "'");
    if (g.kind == GeneratorKind::Momentum) {
      const auto& z = gens[g.of];
      if (z.kind == GeneratorKind::Momentum) throw ChartError("momentum of a momentum: '" + g.name + "'");
      if (z.parity != g.parity || z.weight != -g.weight)
        throw ChartError("momentum '" + g.name + "' must have the parity and opposite weight of '" + z.name + "'");
      d->momentum[g.of] = i;
    } else {
      if (gens[g.of].parity == g.parity) throw ChartError("fibre '" + g.name + "' must have flipped parity");
      d->fibre[g.of] = i;
    }
  }
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (d->momentum[i]) d->pairs.emplace_back(i, *d->momentum[i]);
  d->gens = std::move(gens);
  return d;
}

Chart Chart::make(const std::vector<GeneratorDecl>& decls) {
  std::vector<Generator> gens;
  std::map<std::string, std::size_t, std::less<>> seen;
  for (const auto& decl : decls) {
    Generator g{decl.name, decl.parity, decl.weight, GeneratorKind::Base, 0};
    std::string_view n = decl.name;
    if (n.size() > 3 && n.substr(0, 2) == "d[" && n.back() == ']') {
      auto inner = n.substr(2, n.size() - 3);
      auto it = seen.find(inner);
      if (it == seen.end()) throw ChartError("fibre '" + decl.name + "' declared before its generator");
      if (gens[it->second].parity == decl.parity)
        throw ChartError("fibre '" + decl.name + "' must have flipped parity");
      g.kind = GeneratorKind::Fibre;
      g.of = it->second;
    } else if (!is_identifier(n) || n == "P" || n == "d" || n == "exp") {
      throw ChartError("invalid generator name '" + decl.name + "'");
    }
    if (!seen.emplace(decl.name, gens.size()).second)
      throw ChartError("duplicate generator name '" + decl.name + "'");
    gens.push_back(std::move(g));
  }
  return Chart(build(std::move(gens), ChartOrigin::Plain));
}

Chart Chart::from_generators(std::vector<Generator> gens, ChartOrigin origin) {
  return Chart(build(std::move(gens), origin));
}

std::size_t Chart::size() const { return d_->gens.size(); }
const Generator& Chart::operator[](std::size_t i) const { return d_->gens.at(i); }
const std::vector<Generator>& Chart::generators() const { return d_->gens; }
ChartOrigin Chart::origin() const { return d_->origin; }

std::optional<std::size_t> Chart::find(std::string_view name) const {
  auto it = d_->index.find(name);
  if (it == d_->index.end()) return std::nullopt;
  return it->second;
}

std::size_t Chart::index_of(std::string_view name) const {
  if (auto i = find(name)) return *i;
  throw ChartError("generator '" + std::string(name) + "' not in chart " + describe());
}

bool Chart::has_momenta() const { return !d_->pairs.empty(); }
std::optional<std::size_t> Chart::momentum_of(std::size_t z) const { return d_->momentum.at(z); }
std::optional<std::size_t> Chart::fibre_of(std::size_t z) const { return d_->fibre.at(z); }

std::vector<std::size_t> Chart::base_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < size(); ++i)
    if (d_->gens[i].kind != GeneratorKind::Momentum) out.push_back(i);
  return out;
}

const std::vector<std::pair<std::size_t, std::size_t>>& Chart::conjugate_pairs() const { return d_->pairs; }

bool Chart::operator==(const Chart& other) const {
  return d_ == other.d_ || d_->gens == other.d_->gens;
}

std::string Chart::describe() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < size(); ++i) os << (i ? ", " : "") << d_->gens[i].name;
  os << ')';
  return os.str();
}

void require_same_chart(const Chart& a, const Chart& b, std::string_view what) {
  if (!(a == b))
    throw ChartError(std::string(what) + ": chart mismatch " + a.describe() + " vs " + b.describe());
}

}  // namespace ojac
