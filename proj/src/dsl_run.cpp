#include <algorithm>
#include <future>
#include <iomanip>
#include <sstream>

#include "json.hpp"
#include "ojac/dsl.hpp"

namespace ojac::dsl {

namespace {

struct KindInfo {
  const char* kind;
  std::vector<std::string> fields;
};

const std::vector<KindInfo>& kinds() {
  static const std::vector<KindInfo> k = {
      {"oddjacobi", {"S", "Q"}}, {"schouten", {"S"}},           {"qmanifold", {"Q"}},
      {"quasiq", {"D", "q"}},    {"exactqs", {"S", "Q", "E"}}, {"algebroid", {"dual", "anchor", "bracket", "cocycle"}},
  };
  return k;
}

const KindInfo& kind_info(const std::string& kind) {
  for (const auto& k : kinds())
    if (kind == k.kind) return k;
  throw Error("unknown structure kind '" + kind + "'");
}

bool has_jacobi(const std::string& kind) {
  return kind == "oddjacobi" || kind == "schouten" || kind == "qmanifold" || kind == "algebroid";
}

// Conversions and the kinds they apply to.
const std::vector<std::pair<std::string, std::vector<std::string>>>& conversions() {
  static const std::vector<std::pair<std::string, std::vector<std::string>>> c = {
      {"schoutenize", {"oddjacobi", "schouten", "qmanifold", "algebroid"}},
      {"quasiq", {"algebroid"}},
      {"homological", {"algebroid", "quasiq"}},
      {"jacobi", {"exactqs"}},
  };
  return c;
}

template <class F>
auto at(Pos pos, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const DslError&) {
    throw;
  } catch (const Error& e) {
    throw DslError(pos, e.what());
  }
}

Chart make_chart(const ChartDecl& c) {
  std::vector<GeneratorDecl> decls;
  for (const auto& d : c.coords) {
    decls.push_back({d.name, d.parity, d.weight});
    at(d.pos, [&] { return Chart::make(decls); });
  }
  return Chart::make(decls);
}

Parity expected_parity(const std::string& field) { return field == "E" ? Parity::Even : Parity::Odd; }

void require_parity(const Poly& f, Parity p, const FieldDecl& fd) {
  if (f.is_zero()) return;
  const ParityClass c = parity_of(f);
  const bool ok = (c == ParityClass::Even && p == Parity::Even) || (c == ParityClass::Odd && p == Parity::Odd);
  if (!ok) throw DslError(fd.pos, "field " + fd.name + " must be " + to_string(p));
}

VectorField field_of(const Poly& chi, const Chart& phase, Parity p, Pos pos) {
  if (chi.is_zero()) return VectorField(phase, p);
  return at(pos, [&] { return unsymbol(chi); });
}

std::string default_xi(std::size_t a) { return "xi" + std::to_string(a + 1); }

Bound bind_algebroid(const StructureDecl& s, const Chart& chart) {
  std::vector<GeneratorDecl> base;
  std::vector<FibreDecl> fibres;
  for (const auto& g : chart.generators()) {
    if (g.weight == 0)
      base.push_back({g.name, g.parity, 0});
    else if (g.weight == 1)
      fibres.push_back({g.name, default_xi(fibres.size()), flip(g.parity)});
    else
      throw DslError(s.pos, "algebroid coordinate '" + g.name + "' must have weight 0 or 1");
  }
  const auto fibre_of = [&](const std::string& n, Pos pos) -> std::size_t {
    for (std::size_t a = 0; a < fibres.size(); ++a)
      if (fibres[a].eta == n || fibres[a].xi == n) return a;
    throw DslError(pos, "'" + n + "' is not a fibre coordinate of chart " + s.chart);
  };
  const auto arity = [&](const FieldDecl& f, std::size_t n) {
    if (f.indices.size() != n)
      throw DslError(f.pos, "field " + f.name + " takes " + std::to_string(n) + " indices");
  };
  for (const auto& f : s.fields)
    if (f.name == "dual") {
      arity(f, 1);
      if (f.value.kind != Expr::Kind::Name) throw DslError(f.value.pos, "dual coordinate must be a name");
      fibres[fibre_of(f.indices[0], f.pos)].xi = f.value.name;
    }
  Chart base_chart = at(s.pos, [&] { return Chart::make(base); });
  AlgebroidData d = at(s.pos, [&] { return AlgebroidData::make(base_chart, fibres, s.name); });
  for (const auto& f : s.fields) {
    if (f.name == "dual") continue;
    const Poly v = elaborate(f.value, d.base());
    if (f.name == "anchor") {
      arity(f, 2);
      const auto A = d.base().find(f.indices[1]);
      if (!A) throw DslError(f.pos, "'" + f.indices[1] + "' is not a base coordinate of chart " + s.chart);
      const std::size_t a = fibre_of(f.indices[0], f.pos);
      at(f.pos, [&] { d.set_anchor(a, *A, v); return 0; });
    } else if (f.name == "bracket") {
      arity(f, 3);
      const std::size_t c = fibre_of(f.indices[0], f.pos), b = fibre_of(f.indices[1], f.pos),
                        a = fibre_of(f.indices[2], f.pos);
      at(f.pos, [&] { d.set_bracket(c, b, a, v); return 0; });
    } else {
      arity(f, 1);
      const std::size_t a = fibre_of(f.indices[0], f.pos);
      at(f.pos, [&] { d.set_cocycle(a, v); return 0; });
    }
  }
  Bound b;
  b.base = d.dual_chart();
  b.jacobi = at(s.pos, [&] { return build_jacobi_algebroid(d); });
  b.algebroid = std::move(d);
  return b;
}

Bound bind(const StructureDecl& s, const Chart& chart) {
  const KindInfo& info = kind_info(s.kind);
  std::map<std::string, const FieldDecl*> seen;
  for (const auto& f : s.fields) {
    if (std::find(info.fields.begin(), info.fields.end(), f.name) == info.fields.end()) {
      std::string list;
      for (const auto& n : info.fields) list += (list.empty() ? "" : ", ") + n;
      throw DslError(f.pos, "unknown field '" + f.name + "' for " + s.kind + " (expected " + list + ")");
    }
    if (s.kind == "algebroid") continue;
    if (!f.indices.empty()) throw DslError(f.pos, "field " + f.name + " takes no indices");
    if (!seen.emplace(f.name, &f).second) throw DslError(f.pos, "field " + f.name + " given twice");
  }
  if (s.kind == "algebroid") {
    Bound b = bind_algebroid(s, chart);
    b.kind = s.kind;
    b.name = s.name;
    return b;
  }

  const Chart phase = at(s.pos, [&] { return cotangent_chart(chart); });
  std::map<std::string, Poly> v;
  for (const auto& n : info.fields) {
    auto it = seen.find(n);
    if (it == seen.end()) {
      v.emplace(n, Poly(phase));
      continue;
    }
    Poly p = elaborate(it->second->value, phase);
    require_parity(p, expected_parity(n), *it->second);
    v.emplace(n, std::move(p));
  }
  const auto pos_of = [&](const std::string& n) { return seen.count(n) ? seen[n]->pos : s.pos; };

  Bound b;
  b.kind = s.kind;
  b.name = s.name;
  b.base = chart;
  if (s.kind == "oddjacobi") {
    b.jacobi = OddJacobiStructure::make(chart, v.at("S"), v.at("Q"), s.name);
  } else if (s.kind == "schouten") {
    b.jacobi = OddJacobiStructure::make(chart, v.at("S"), Poly(phase), s.name);
  } else if (s.kind == "qmanifold") {
    b.jacobi = OddJacobiStructure::make(chart, Poly(phase), v.at("Q"), s.name);
  } else if (s.kind == "quasiq") {
    const VectorField D = field_of(v.at("D"), phase, Parity::Odd, pos_of("D"));
    b.quasiq = at(pos_of("q"), [&] { return QuasiQData::make(chart, D, v.at("q"), s.name); });
  } else {
    ExactQSData d;
    d.qs = QSData::make(chart, v.at("S"), v.at("Q"), s.name);
    d.E = field_of(v.at("E"), phase, Parity::Even, pos_of("E"));
    b.exactqs = std::move(d);
  }
  return b;
}

std::string fresh_coordinate(const Chart& c) {
  for (const char* n : {"t", "s", "u"})
    if (!c.find(n)) return n;
  for (int i = 1;; ++i)
    if (!c.find("t" + std::to_string(i))) return "t" + std::to_string(i);
}

VerificationReport sampled(const OddJacobiStructure& J, const RunOptions& opts) {
  SampleOptions so;
  so.seed = opts.seed;
  so.samples = opts.samples;
  so.max_degree = opts.max_degree;
  VerificationReport r;
  r.append(check_theorem_odd_jacobi_algebra(J, so), "sampled ");
  return r;
}

VerificationReport check(const Bound& b, const RunOptions& opts) {
  VerificationReport r;
  r.structure = b.name;
  if (b.jacobi) {
    const auto& J = *b.jacobi;
    r.shape_errors = odd_jacobi_shape_errors(J.S, J.Q);
    if (!r.shape_errors.empty()) return r;
    if (b.kind == "schouten") {
      r.add("{S,S}", poisson(J.S, J.S));
    } else if (b.kind == "qmanifold") {
      r.add("{Q,Q}", poisson(J.Q, J.Q));
    } else {
      r.append(verify_odd_jacobi(J));
    }
    if (opts.samples) r.append(sampled(J, opts));
  } else if (b.quasiq) {
    r.append(verify_quasi_q(*b.quasiq));
  } else {
    r.append(verify_qs(b.exactqs->qs));
    r.append(verify_exact_qs(*b.exactqs));
  }
  return r;
}

void convert(const Bound& b, const std::string& via, DirectiveReport& out) {
  VerificationReport& r = out.report;
  const auto emit = [&](const std::string& n, const Poly& p) { out.outputs.emplace_back(n, p.str()); };
  if (via == "schoutenize") {
    const std::string coord = fresh_coordinate(b.jacobi->base);
    const QSData d = schoutenize(*b.jacobi, coord);
    out.outputs.emplace_back("coordinate", coord);
    emit("S", d.Sbar);
    emit("Q", d.Qbar);
    r.append(verify_qs(d));
  } else if (via == "quasiq") {
    const QuasiQData q = extract_quasiq(*b.algebroid, false);
    emit("D", symbol(q.D));
    emit("q", q.q);
    r.append(verify_quasi_q(q));
  } else if (via == "homological") {
    const HomologicalWithCocycle h =
        b.algebroid ? lie_algebroid_from_jacobi(*b.algebroid, false) : quasiq_to_homological(*b.quasiq);
    emit("Q", symbol(h.Q));
    emit("phi", h.phi);
    r.add("[Q,Q]", symbol(commutator(h.Q, h.Q)));
    r.add("Q(phi)", apply(h.Q, h.phi));
  } else {
    const OddJacobiStructure J = exact_qs_to_jacobi(*b.exactqs, 1, 1);
    emit("S", J.S);
    emit("Q", J.Q);
    r.append(verify_odd_jacobi(J));
  }
}

}  // namespace

Poly elaborate(const Expr& e, const Chart& chart) {
  switch (e.kind) {
    case Expr::Kind::Number: return Poly::constant(chart, e.number);
    case Expr::Kind::Name: {
      if (!chart.find(e.name)) throw DslError(e.pos, "unknown name '" + e.name + "' on chart " + chart.describe());
      return Poly::gen(chart, e.name);
    }
    case Expr::Kind::Exp: {
      if (e.number.get_den() != 1 || abs(e.number) > 1000) throw DslError(e.pos, "exp rate must be a small integer");
      if (!chart.find(e.name)) throw DslError(e.pos, "unknown name '" + e.name + "' on chart " + chart.describe());
      return at(e.pos, [&] { return Poly::exp_tag(chart, e.name, static_cast<int>(e.number.get_num().get_si())); });
    }
    case Expr::Kind::Neg: return -elaborate(e.args[0], chart);
    case Expr::Kind::Pow: return pow(elaborate(e.args[0], chart), e.power);
    case Expr::Kind::Mul: return elaborate(e.args[0], chart) * elaborate(e.args[1], chart);
    case Expr::Kind::Add:
    case Expr::Kind::Sub: {
      const Poly a = elaborate(e.args[0], chart), b = elaborate(e.args[1], chart);
      if (!a.is_zero() && !b.is_zero() && parity_of(a) != parity_of(b))
        throw DslError(e.pos, "cannot add terms of different parity: " + a.str() + " and " + b.str());
      return e.kind == Expr::Kind::Add ? a + b : a - b;
    }
  }
  throw Error("unreachable expression kind");
}

Session::Session(const Model& model) : model_(model) {
  for (const auto& c : model.charts) {
    if (charts_.count(c.name)) throw DslError(c.pos, "chart '" + c.name + "' declared twice");
    charts_.emplace(c.name, make_chart(c));
  }
  for (const auto& s : model.structures) {
    if (structures_.count(s.name)) throw DslError(s.pos, "structure '" + s.name + "' declared twice");
    auto it = charts_.find(s.chart);
    if (it == charts_.end()) throw DslError(s.pos, "unknown chart '" + s.chart + "'");
    structures_.emplace(s.name, bind(s, it->second));
  }
  for (const auto& d : model.directives) {
    const Bound& b = target(d);
    if (d.kind == Directive::Kind::Bracket) {
      if (!has_jacobi(b.kind)) throw DslError(d.pos, "bracket needs an odd Jacobi structure, '" + b.name + "' is " + b.kind);
      for (const auto& a : d.args) {
        const Poly f = elaborate(a, b.base);
        if (!f.is_zero() && parity_of(f) == ParityClass::Mixed) throw DslError(a.pos, "bracket operand has mixed parity");
      }
    } else if (d.kind == Directive::Kind::Convert) {
      auto it = std::find_if(conversions().begin(), conversions().end(), [&](const auto& c) { return c.first == d.via; });
      if (it == conversions().end())
        throw DslError(d.pos, "unknown conversion '" + d.via + "' (expected schoutenize, quasiq, homological or jacobi)");
      if (std::find(it->second.begin(), it->second.end(), b.kind) == it->second.end())
        throw DslError(d.pos, "cannot convert " + b.kind + " '" + b.name + "' via " + d.via);
    }
  }
}

const Bound& Session::structure(std::string_view name) const {
  auto it = structures_.find(name);
  if (it == structures_.end()) throw Error("unknown structure '" + std::string(name) + "'");
  return it->second;
}

const Chart& Session::chart(std::string_view name) const {
  auto it = charts_.find(name);
  if (it == charts_.end()) throw Error("unknown chart '" + std::string(name) + "'");
  return it->second;
}

const Bound& Session::target(const Directive& d) const {
  auto it = structures_.find(d.target);
  if (it == structures_.end()) throw DslError(d.pos, "unknown structure '" + d.target + "'");
  return it->second;
}

Poly Session::bracket(std::string_view structure_name, const Expr& f, const Expr& g) const {
  const Bound& b = structure(structure_name);
  if (!b.jacobi) throw Error("bracket needs an odd Jacobi structure, '" + b.name + "' is " + b.kind);
  const auto& J = *b.jacobi;
  return odd_jacobi_bracket(J, J.lift(elaborate(f, b.base)), J.lift(elaborate(g, b.base)));
}

DirectiveReport Session::execute(const Directive& d, const RunOptions& opts) const {
  DirectiveReport out;
  out.directive = render(d);
  const Bound& b = target(d);
  out.report.structure = b.name;
  try {
    switch (d.kind) {
      case Directive::Kind::Check: out.report = check(b, opts); break;
      case Directive::Kind::Bracket:
        out.outputs.emplace_back("[[" + render(d.args[0]) + "," + render(d.args[1]) + "]]",
                                 bracket(b.name, d.args[0], d.args[1]).str());
        break;
      case Directive::Kind::Convert: convert(b, d.via, out); break;
    }
  } catch (const Error& e) {
    out.report.shape_errors.push_back(e.what());
  }
  out.report.structure = b.name;
  return out;
}

std::vector<DirectiveReport> Session::run(const RunOptions& opts) const {
  const auto& ds = model_.directives;
  std::vector<DirectiveReport> out;
  if (!opts.parallel) {
    for (const auto& d : ds) out.push_back(execute(d, opts));
    return out;
  }
  std::vector<std::future<DirectiveReport>> jobs;
  for (const auto& d : ds) jobs.push_back(std::async(std::launch::async, [this, &d, &opts] { return execute(d, opts); }));
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

std::string emit(const std::vector<DirectiveReport>& reports, Format format) {
  if (format == Format::Json) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& d : reports) {
      nlohmann::ordered_json j;
      j["structure"] = d.report.structure;
      j["directive"] = d.directive;
      auto conds = nlohmann::ordered_json::array();
      for (const auto& c : d.report.conditions)
        conds.push_back({{"name", c.name}, {"residual", c.residual.str()}, {"pass", c.pass}});
      j["conditions"] = std::move(conds);
      if (!d.report.shape_errors.empty()) j["shape_errors"] = d.report.shape_errors;
      if (!d.outputs.empty()) {
        auto outs = nlohmann::ordered_json::array();
        for (const auto& [n, v] : d.outputs) outs.push_back({{"name", n}, {"value", v}});
        j["outputs"] = std::move(outs);
      }
      j["verdict"] = d.report.verdict();
      arr.push_back(std::move(j));
    }
    return arr.dump(2) + "\n";
  }
  std::ostringstream os;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& d = reports[i];
    if (i) os << '\n';
    os << d.directive << '\n';
    std::size_t w = 0;
    for (const auto& c : d.report.conditions) w = std::max(w, c.name.size());
    for (const auto& e : d.report.shape_errors) os << "  shape error: " << e << '\n';
    for (const auto& c : d.report.conditions)
      os << "  " << std::left << std::setw(static_cast<int>(w)) << c.name << "  " << (c.pass ? "pass" : "FAIL") << "  "
         << c.residual.str() << '\n';
    for (const auto& [n, v] : d.outputs) os << "  " << n << " = " << v << '\n';
    os << "  verdict: " << (d.report.verdict() ? "pass" : "FAIL") << '\n';
  }
  return os.str();
}

int exit_code(const std::vector<DirectiveReport>& reports) {
  for (const auto& d : reports)
    if (!d.report.verdict()) return 1;
  return 0;
}

}  // namespace ojac::dsl
