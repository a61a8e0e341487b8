#include "ojac/algebroid.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include "ojac/error.hpp"
#include "ojac/examples.hpp"

namespace ojac {

namespace {

Rational sgn(int s) { return Rational(s); }

void require(bool ok, const std::string& what) {
  if (!ok) throw ShapeError("precondition failed: " + what);
}

std::vector<GeneratorDecl> decls_of(const Chart& c) {
  std::vector<GeneratorDecl> out;
  for (const auto& g : c.generators()) out.push_back({g.name, g.parity, g.weight});
  return out;
}

Chart with_fibres(const Chart& base, const std::vector<FibreDecl>& fibres, bool dual) {
  auto decls = decls_of(base);
  for (const auto& f : fibres) decls.push_back({dual ? f.eta : f.xi, flip(f.parity), 1});
  return Chart::make(decls);
}

VectorField field_or_zero(const Chart& phase, const std::map<std::string, Poly, std::less<>>& comps, Parity p) {
  std::map<std::string, Poly, std::less<>> nz;
  for (const auto& [z, c] : comps)
    if (!c.is_zero()) nz.emplace(z, c);
  return nz.empty() ? VectorField(phase, p) : VectorField::make(phase, nz);
}

void require_jacobi(const AlgebroidData& d, const OddJacobiStructure& J) {
  require(verify_odd_jacobi(J).verdict(), "odd Jacobi conditions for algebroid '" + d.name + "'");
}

}  // namespace

AlgebroidData AlgebroidData::make(const Chart& base, std::vector<FibreDecl> fibres, std::string name) {
  if (base.has_momenta()) throw ChartError("algebroid base chart carries momenta");
  for (const auto& g : base.generators())
    if (g.weight != 0) throw ChartError("algebroid base coordinate '" + g.name + "' has nonzero weight");
  AlgebroidData d;
  d.name = std::move(name);
  d.base_ = base;
  d.fibres_ = std::move(fibres);
  // Chart::make rejects clashes within each chart; eta and xi names must
  // also be distinct from each other so that fibre_index is unambiguous.
  d.dual_ = with_fibres(base, d.fibres_, true);
  d.bundle_ = with_fibres(base, d.fibres_, false);
  for (const auto& f : d.fibres_)
    if (d.dual_.find(f.xi) && f.xi != f.eta) throw ChartError("fibre name '" + f.xi + "' is used on both sides");
  const std::size_t r = d.rank(), n = base.size();
  const Poly zero(base);
  d.anchor_.assign(r * n, zero);
  d.bracket_.assign(r * r * r, zero);
  d.bracket_set_.assign(r * r * r, false);
  d.cocycle_.assign(r, zero);
  return d;
}

std::size_t AlgebroidData::fibre_index(std::string_view name) const {
  for (std::size_t a = 0; a < fibres_.size(); ++a)
    if (fibres_[a].eta == name || fibres_[a].xi == name) return a;
  throw ChartError("unknown fibre coordinate '" + std::string(name) + "'");
}

Poly AlgebroidData::on_base(const Poly& f, Parity expected, const std::string& what) const {
  if (!is_momentum_free(f)) throw ShapeError(what + " contains momenta");
  Poly g = embed(f, base_);
  const auto pc = parity_of(g);
  if (!g.is_zero() && pc != (expected == Parity::Even ? ParityClass::Even : ParityClass::Odd))
    throw ParityError(what + " must be " + to_string(expected) + ": " + g.str());
  return g;
}

int AlgebroidData::swap_sign(std::size_t a, std::size_t b) const {
  return koszul(flip(fibres_.at(a).parity), flip(fibres_.at(b).parity));
}

void AlgebroidData::set_anchor(std::size_t a, std::size_t A, const Poly& f) {
  const Parity p = fibres_.at(a).parity + base_[A].parity;
  anchor_[a * base_.size() + A] = on_base(f, p, "anchor Q_" + fibres_[a].eta + "^" + base_[A].name);
}

void AlgebroidData::set_bracket(std::size_t c, std::size_t b, std::size_t a, const Poly& f) {
  const Parity p = fibres_.at(a).parity + fibres_.at(b).parity + fibres_.at(c).parity;
  const std::string what = "bracket Q^" + fibres_[c].eta + "_{" + fibres_[b].eta + "," + fibres_[a].eta + "}";
  const Poly g = on_base(f, p, what);
  const Poly partner = g * sgn(swap_sign(a, b));
  const std::size_t k1 = key(c, b, a), k2 = key(c, a, b);
  if (a == b && partner != g) throw ShapeError(what + " must vanish by antisymmetry");
  if (k1 != k2 && bracket_set_[k2] && bracket_[k2] != partner)
    throw ShapeError(what + " contradicts its antisymmetric partner " + bracket_[k2].str());
  bracket_[k1] = g;
  bracket_[k2] = partner;
  bracket_set_[k1] = true;
}

void AlgebroidData::set_cocycle(std::size_t a, const Poly& f) {
  cocycle_.at(a) = on_base(f, fibres_.at(a).parity, "cocycle Q_" + fibres_[a].eta);
}

bool AlgebroidData::has_cocycle() const {
  for (const auto& q : cocycle_)
    if (!q.is_zero()) return true;
  return false;
}

OddJacobiStructure build_jacobi_algebroid(const AlgebroidData& d) {
  const Chart ph = d.dual_phase();
  const auto& fib = d.fibres();
  const Chart& base = d.base();
  const auto pi = [&](std::size_t a) { return Poly::gen(ph, momentum_name(fib[a].eta)); };
  Poly S(ph), Q(ph);
  for (std::size_t a = 0; a < d.rank(); ++a) {
    const Rational sa = sgn(sign_of(fib[a].parity));
    for (std::size_t A = 0; A < base.size(); ++A)
      if (!d.anchor(a, A).is_zero())
        S += pi(a) * embed(d.anchor(a, A), ph) * Poly::gen(ph, momentum_name(base[A].name)) * sa;
    for (std::size_t b = 0; b < d.rank(); ++b) {
      const Rational sab = sa * sgn(sign_of(fib[b].parity)) * Rational(1, 2);
      for (std::size_t c = 0; c < d.rank(); ++c)
        if (!d.bracket(c, b, a).is_zero())
          S += pi(a) * pi(b) * embed(d.bracket(c, b, a), ph) * Poly::gen(ph, fib[c].eta) * sab;
    }
    if (!d.cocycle(a).is_zero()) Q += pi(a) * embed(d.cocycle(a), ph);
  }
  if (!S.is_zero() && weight_of(S) != -1) throw ShapeError("weight audit: S of '" + d.name + "' is not of weight -1");
  if (!Q.is_zero() && weight_of(Q) != -1) throw ShapeError("weight audit: Q of '" + d.name + "' is not of weight -1");
  return OddJacobiStructure::make(d.dual_chart(), S, Q, d.name);
}

Poly r_pullback(const AlgebroidData& d, const Poly& F) {
  require_same_chart(d.dual_phase(), F.chart(), "r_pullback");
  const Chart target = d.bundle_phase();
  NamedBinding b;
  for (const auto& f : d.fibres()) {
    b.emplace(f.eta, Poly::gen(target, momentum_name(f.xi)));
    b.emplace(momentum_name(f.eta), Poly::gen(target, f.xi) * sgn(sign_of(f.parity)));
  }
  return pullback(F, target, b);
}

NamedBinding r_images(const AlgebroidData& d) {
  const Chart src = d.dual_phase();
  NamedBinding b;
  for (const auto& f : d.fibres()) {
    b.emplace(momentum_name(f.xi), Poly::gen(src, f.eta));
    b.emplace(f.xi, Poly::gen(src, momentum_name(f.eta)) * sgn(sign_of(f.parity)));
  }
  return b;
}

VerificationReport verify_symplectomorphism(const Chart& base, const std::vector<Parity>& fibre_parities) {
  std::vector<FibreDecl> fib;
  for (std::size_t a = 0; a < fibre_parities.size(); ++a)
    fib.push_back({"eta" + std::to_string(a + 1), "xi" + std::to_string(a + 1), fibre_parities[a]});
  const auto d = AlgebroidData::make(base, fib, "R");
  const Chart dual = d.dual_phase(), bundle = d.bundle_phase();
  const Chart forms = anticotangent_chart(dual);

  NamedBinding images;
  for (const auto& [z, img] : r_images(d)) images.emplace(z, embed(img, forms));
  VerificationReport r;
  r.structure = "R over (" + std::to_string(base.size()) + "|" + std::to_string(fib.size()) + ")";
  r.add("R^*omega - omega", pullback_form(canonical_symplectic_form(bundle), forms, images) -
                                canonical_symplectic_form(dual));

  const auto back = r_images(d);
  for (std::size_t z = 0; z < bundle.size(); ++z) {
    const Poly gz = Poly::gen(bundle, z);
    r.add("(R^-1)^*R^*" + bundle[z].name + " - " + bundle[z].name, r_pullback(d, pullback(gz, dual, back)) - gz);
  }
  return r;
}

VerificationReport verify_symplectomorphism(unsigned base_dim, unsigned fibre_dim) {
  std::vector<GeneratorDecl> decls;
  for (unsigned i = 1; i <= base_dim; ++i) decls.push_back({"x" + std::to_string(i), Parity::Even, 0});
  std::vector<Parity> fib;
  for (unsigned a = 0; a < fibre_dim; ++a) fib.push_back(a % 2 ? Parity::Odd : Parity::Even);
  return verify_symplectomorphism(Chart::make(decls), fib);
}

QuasiQData extract_quasiq(const AlgebroidData& d, bool checked) {
  const auto J = build_jacobi_algebroid(d);
  if (checked) require_jacobi(d, J);
  const Poly Sh = r_pullback(d, J.S), Qh = r_pullback(d, J.Q);
  const Chart ph = d.bundle_phase();
  const VectorField D = Sh.is_zero() ? VectorField(ph, Parity::Odd) : unsymbol(Sh);
  auto out = QuasiQData::make(d.bundle_chart(), D, -Qh, d.name.empty() ? std::string() : d.name + "_quasi_q");
  if ((!D.is_zero() && field_weight(D) != 1) || (!out.q.is_zero() && weight_of(out.q) != 1))
    throw Error("weight audit: quasi Q data of '" + d.name + "' is not of weight 1");
  return out;
}

HomologicalWithCocycle lie_algebroid_from_jacobi(const AlgebroidData& d, bool checked) {
  if (checked) require_jacobi(d, build_jacobi_algebroid(d));
  const Chart ph = d.bundle_phase();
  const auto& fib = d.fibres();
  const auto xi = [&](std::size_t a) { return Poly::gen(ph, fib[a].xi); };
  std::map<std::string, Poly, std::less<>> comps;
  for (std::size_t A = 0; A < d.base().size(); ++A) {
    Poly c(ph);
    for (std::size_t a = 0; a < d.rank(); ++a) c += xi(a) * embed(d.anchor(a, A), ph);
    comps.emplace(d.base()[A].name, c);
  }
  Poly phi(ph), cocycle_part(ph);
  for (std::size_t a = 0; a < d.rank(); ++a) {
    const Poly t = xi(a) * embed(d.cocycle(a), ph) * sgn(sign_of(fib[a].parity));
    cocycle_part += t;
    phi -= t;
  }
  for (std::size_t c = 0; c < d.rank(); ++c) {
    Poly v(ph);
    for (std::size_t a = 0; a < d.rank(); ++a)
      for (std::size_t b = 0; b < d.rank(); ++b)
        if (!d.bracket(c, b, a).is_zero()) v += xi(a) * xi(b) * embed(d.bracket(c, b, a), ph) * Rational(1, 2);
    v += cocycle_part * xi(c);
    comps.emplace(fib[c].xi, v);
  }
  return {field_or_zero(ph, comps, Parity::Odd), phi};
}

AlgebroidData replaced_structure_constants(const AlgebroidData& d) {
  auto out = AlgebroidData::make(d.base(), d.fibres(), d.name.empty() ? std::string() : d.name + "_lie");
  const std::size_t r = d.rank();
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t A = 0; A < d.base().size(); ++A) out.set_anchor(a, A, d.anchor(a, A));
  for (std::size_t c = 0; c < r; ++c)
    for (std::size_t b = 0; b < r; ++b)
      for (std::size_t a = 0; a < r; ++a) {
        Poly shift(d.base());
        if (a == c) shift += d.cocycle(b);
        if (b == c) shift += d.cocycle(a) * sgn(d.swap_sign(a, b));
        const int s = sign_of(d.fibres()[a].parity + d.fibres()[b].parity);
        out.set_bracket(c, b, a, d.bracket(c, b, a) - shift * sgn(s));
      }
  return out;
}

AlgebroidData extend_lie_algebroid(const AlgebroidData& lie, const std::string& tau, const std::string& xi) {
  require(!lie.has_cocycle(), "algebroid '" + lie.name + "' has zero cocycle");
  require(verify_odd_jacobi(build_jacobi_algebroid(lie)).verdict(), "algebroid '" + lie.name + "' is a Lie algebroid");
  auto fib = lie.fibres();
  fib.push_back({tau, xi, Parity::Even});
  auto out = AlgebroidData::make(lie.base(), fib, lie.name.empty() ? std::string() : lie.name + "_extended");
  const std::size_t r = lie.rank(), t = r;
  for (std::size_t a = 0; a < r; ++a) {
    for (std::size_t A = 0; A < lie.base().size(); ++A) out.set_anchor(a, A, lie.anchor(a, A));
    for (std::size_t b = 0; b < r; ++b)
      for (std::size_t c = 0; c < r; ++c) out.set_bracket(c, b, a, lie.bracket(c, b, a));
    out.set_bracket(a, t, a, Poly::constant(lie.base(), -1));
  }
  out.set_cocycle(t, Poly::constant(lie.base(), -1));
  return out;
}

OddJacobiStructure extend_lie_to_jacobi(const AlgebroidData& lie, const std::string& tau, const std::string& xi) {
  return build_jacobi_algebroid(extend_lie_algebroid(lie, tau, xi));
}

QSData schoutenize_algebroid(const AlgebroidData& d, const std::string& coord) {
  const auto J = build_jacobi_algebroid(d);
  require_jacobi(d, J);
  return schoutenize(J, coord);
}

VerificationReport contact_check(unsigned n) {
  require(n >= 1, "contact_check needs n >= 1");
  const auto J = examples::odd_contact(n);
  const Chart forms = anticotangent_chart(J.base);
  const auto g = [&](const std::string& z) { return Poly::gen(forms, z); };
  Poly alpha = g(fibre_name("tau")), dxs_dx(forms);
  for (unsigned a = 1; a <= n; ++a) {
    const auto x = "x" + std::to_string(a), xs = "xs" + std::to_string(a);
    alpha -= g(xs) * g(fibre_name(x));
    dxs_dx += g(fibre_name(xs)) * g(fibre_name(x));
  }
  const Poly dalpha = de_rham(alpha);

  NamedBinding phi;
  for (const auto z : J.base.base_indices()) {
    const auto& gz = J.base[z];
    phi.emplace(fibre_name(gz.name), left_derivative(J.S, momentum_name(gz.name)) * sgn(sign_of(gz.parity)));
  }
  const VectorField Q = J.homological();

  VerificationReport r;
  r.structure = "odd_contact_" + std::to_string(n);
  r.add("d alpha + d[xs_a] d[x_a]", dalpha + dxs_dx);
  r.add("phi_S^* alpha", pullback(alpha, J.phase, phi));
  r.add("phi_S^* d alpha - S", pullback(dalpha, J.phase, phi) - J.S);
  r.add("i_Q alpha - 1", interior(Q, alpha) - Poly::constant(forms, 1));
  r.add("i_Q d alpha", interior(Q, dalpha));
  return r;
}

VerificationReport section_structure(const AlgebroidData& d) {
  const auto [Q, phi] = lie_algebroid_from_jacobi(d, false);
  const Chart ph = d.bundle_phase();
  const auto& fib = d.fibres();
  std::vector<VectorField> i;
  for (const auto& f : fib) i.push_back(VectorField::make(ph, std::map<std::string, Poly, std::less<>>{{f.xi, Poly::constant(ph, 1)}}));

  VerificationReport r;
  r.structure = d.name;
  for (std::size_t a = 0; a < d.rank(); ++a) {
    const VectorField iQ = commutator(i[a], Q);
    Poly anchor(ph);
    for (std::size_t A = 0; A < d.base().size(); ++A)
      anchor += iQ.component(d.base()[A].name) * Poly::gen(ph, momentum_name(d.base()[A].name));
    r.observe("a(s_" + fib[a].eta + ")", anchor);
  }
  for (std::size_t a = 0; a < d.rank(); ++a)
    for (std::size_t b = 0; b < d.rank(); ++b)
      r.observe("[s_" + fib[a].eta + ",s_" + fib[b].eta + "]", symbol(commutator(commutator(i[a], Q), i[b])));
  for (std::size_t a = 0; a < d.rank(); ++a) r.observe("phi(s_" + fib[a].eta + ")", apply(i[a], phi));
  return r;
}

// ---- plain data files ----

namespace {

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
  throw Error("algebroid data line " + std::to_string(line) + ": " + msg);
}

Parity parse_parity(std::size_t line, const std::string& s) {
  if (s == "even") return Parity::Even;
  if (s == "odd") return Parity::Odd;
  fail(line, "expected even or odd, got '" + s + "'");
}

Poly parse_terms(std::size_t line, const std::string& text, const Chart& base) {
  Poly out(base);
  std::stringstream terms(text);
  std::string term;
  while (std::getline(terms, term, ',')) {
    std::istringstream ts(term);
    std::string tok;
    if (!(ts >> tok)) fail(line, "empty term");
    Rational c;
    try {
      c = Rational(tok);
      if (c.get_den() == 0) fail(line, "zero denominator in '" + tok + "'");
      c.canonicalize();
    } catch (const std::invalid_argument&) {
      fail(line, "bad rational '" + tok + "'");
    }
    Poly t = Poly::constant(base, c);
    while (ts >> tok) {
      const auto caret = tok.find('^');
      const std::string name = tok.substr(0, caret);
      unsigned k = 1;
      if (caret != std::string::npos) {
        try {
          k = static_cast<unsigned>(std::stoul(tok.substr(caret + 1)));
        } catch (const std::exception&) {
          fail(line, "bad power in '" + tok + "'");
        }
      }
      if (!base.find(name)) fail(line, "unknown base coordinate '" + name + "'");
      t = t * pow(Poly::gen(base, name), k);
    }
    out += t;
  }
  return out;
}

std::string render_terms(const Poly& f) {
  if (f.is_zero()) return "0";
  const Chart& c = f.chart();
  std::string out;
  for (const auto& [m, q] : f.terms()) {
    if (m.has_rates()) throw Error("exponential tags cannot be written to algebroid data files");
    if (!out.empty()) out += ", ";
    out += q.get_str();
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m.power(i) == 0) continue;
      out += " " + c[i].name;
      if (m.power(i) > 1) out += "^" + std::to_string(m.power(i));
    }
  }
  return out;
}

struct Entry {
  std::size_t line;
  std::vector<std::string> head;
  std::string terms;
};

}  // namespace

AlgebroidData read_algebroid_data(std::istream& in) {
  std::string name;
  std::vector<GeneratorDecl> base;
  std::vector<FibreDecl> fibres;
  std::vector<Entry> entries;
  std::string raw;
  for (std::size_t line = 1; std::getline(in, raw); ++line) {
    raw = raw.substr(0, raw.find('#'));
    const auto colon = raw.find(':');
    std::istringstream hs(raw.substr(0, colon));
    std::vector<std::string> head;
    for (std::string tok; hs >> tok;) head.push_back(tok);
    if (head.empty()) {
      if (colon != std::string::npos) fail(line, "missing keyword");
      continue;
    }
    const std::string& kw = head[0];
    if (kw == "name" || kw == "base" || kw == "fibre") {
      if (colon != std::string::npos) fail(line, "unexpected ':'");
      if (kw == "name" && head.size() == 2) name = head[1];
      else if (kw == "base" && head.size() == 3) base.push_back({head[1], parse_parity(line, head[2]), 0});
      else if (kw == "fibre" && head.size() == 4) fibres.push_back({head[1], head[2], parse_parity(line, head[3])});
      else fail(line, "wrong number of fields for '" + kw + "'");
    } else if (kw == "anchor" || kw == "bracket" || kw == "cocycle") {
      const std::size_t want = kw == "anchor" ? 3 : kw == "bracket" ? 4 : 2;
      if (head.size() != want) fail(line, "wrong number of indices for '" + kw + "'");
      if (colon == std::string::npos) fail(line, "missing ':' before the coefficients");
      entries.push_back({line, head, raw.substr(colon + 1)});
    } else {
      fail(line, "unknown keyword '" + kw + "'");
    }
  }

  AlgebroidData d;
  try {
    d = AlgebroidData::make(Chart::make(base), fibres, name);
  } catch (const Error& e) {
    throw Error(std::string("algebroid data: ") + e.what());
  }
  for (const auto& e : entries) {
    try {
      const Poly f = parse_terms(e.line, e.terms, d.base());
      const auto& h = e.head;
      if (h[0] == "anchor") d.set_anchor(d.fibre_index(h[1]), d.base().index_of(h[2]), f);
      else if (h[0] == "bracket") d.set_bracket(d.fibre_index(h[1]), d.fibre_index(h[2]), d.fibre_index(h[3]), f);
      else d.set_cocycle(d.fibre_index(h[1]), f);
    } catch (const Error& err) {
      const std::string what = err.what();
      if (what.rfind("algebroid data line", 0) == 0) throw;
      fail(e.line, what);
    }
  }
  return d;
}

void write_algebroid_data(std::ostream& out, const AlgebroidData& d) {
  if (!d.name.empty()) out << "name " << d.name << "\n";
  for (const auto& g : d.base().generators()) out << "base " << g.name << " " << to_string(g.parity) << "\n";
  for (const auto& f : d.fibres()) out << "fibre " << f.eta << " " << f.xi << " " << to_string(f.parity) << "\n";
  const auto& fib = d.fibres();
  for (std::size_t a = 0; a < d.rank(); ++a)
    for (std::size_t A = 0; A < d.base().size(); ++A)
      if (!d.anchor(a, A).is_zero())
        out << "anchor " << fib[a].eta << " " << d.base()[A].name << " : " << render_terms(d.anchor(a, A)) << "\n";
  for (std::size_t c = 0; c < d.rank(); ++c)
    for (std::size_t b = 0; b < d.rank(); ++b)
      for (std::size_t a = 0; a < d.rank(); ++a)
        if (!d.bracket(c, b, a).is_zero())
          out << "bracket " << fib[c].eta << " " << fib[b].eta << " " << fib[a].eta << " : "
              << render_terms(d.bracket(c, b, a)) << "\n";
  for (std::size_t a = 0; a < d.rank(); ++a)
    if (!d.cocycle(a).is_zero()) out << "cocycle " << fib[a].eta << " : " << render_terms(d.cocycle(a)) << "\n";
}

}  // namespace ojac
