#include <sstream>

#include "ojac/dsl.hpp"
#include "ojac/examples.hpp"

namespace ojac::dsl {

namespace {

const char* const kSuperline = R"(# R^{1|1} with its canonical odd Jacobi structure.
chart superline {
  coord t : even;
  coord xi : odd;
}

structure oddjacobi superline on superline {
  S = -P[xi]*P[t];
  Q = -P[xi];
}

check superline;
bracket superline(t, xi);
)";

std::string chart_block(const std::string& name, const Chart& c) {
  std::ostringstream os;
  os << "chart " << name << " {\n";
  for (const auto& g : c.generators()) {
    os << "  coord " << g.name << " : " << to_string(g.parity);
    if (g.weight) os << " weight " << g.weight;
    os << ";\n";
  }
  os << "}\n";
  return os.str();
}

using Fields = std::vector<std::pair<std::string, Poly>>;

std::string structure_block(const std::string& kind, const std::string& name, const Fields& fields) {
  std::ostringstream os;
  os << "structure " << kind << ' ' << name << " on " << name << " {\n";
  for (const auto& [f, v] : fields)
    if (!v.is_zero()) os << "  " << f << " = " << v.str() << ";\n";
  os << "}\n";
  return os.str();
}

std::string directives(const std::string& name, const std::vector<std::string>& extra) {
  std::string s = "check " + name + ";\n";
  for (const auto& e : extra) s += e + "\n";
  return s;
}

std::string jacobi_source(const OddJacobiStructure& J, const std::string& kind, const std::vector<std::string>& extra = {}) {
  Fields f;
  if (kind != "qmanifold") f.emplace_back("S", J.S);
  if (kind != "schouten") f.emplace_back("Q", J.Q);
  return chart_block(J.name, J.base) + "\n" + structure_block(kind, J.name, f) + "\n" + directives(J.name, extra);
}

std::string exact_qs_source(const ExactQSData& d) {
  const auto& n = d.qs.name;
  const Fields f{{"S", d.qs.Sbar}, {"Q", d.qs.Qbar}, {"E", symbol(d.E)}};
  return chart_block(n, d.qs.base) + "\n" + structure_block("exactqs", n, f) + "\n" +
         directives(n, {"convert " + n + " via jacobi;"});
}

std::string algebroid_source(const AlgebroidData& d, const std::vector<std::string>& extra) {
  std::ostringstream os;
  const auto& n = d.name;
  const auto& fib = d.fibres();
  const Chart& base = d.base();
  os << chart_block(n, d.dual_chart()) << "\nstructure algebroid " << n << " on " << n << " {\n";
  for (std::size_t a = 0; a < fib.size(); ++a)
    if (fib[a].xi != "xi" + std::to_string(a + 1)) os << "  dual[" << fib[a].eta << "] = " << fib[a].xi << ";\n";
  for (std::size_t a = 0; a < fib.size(); ++a)
    for (std::size_t A = 0; A < base.size(); ++A)
      if (!d.anchor(a, A).is_zero())
        os << "  anchor[" << fib[a].eta << ", " << base[A].name << "] = " << d.anchor(a, A).str() << ";\n";
  for (std::size_t c = 0; c < fib.size(); ++c)
    for (std::size_t b = 0; b < fib.size(); ++b)
      for (std::size_t a = b; a < fib.size(); ++a)
        if (!d.bracket(c, b, a).is_zero())
          os << "  bracket[" << fib[c].eta << ", " << fib[b].eta << ", " << fib[a].eta << "] = " << d.bracket(c, b, a).str()
             << ";\n";
  for (std::size_t a = 0; a < fib.size(); ++a)
    if (!d.cocycle(a).is_zero()) os << "  cocycle[" << fib[a].eta << "] = " << d.cocycle(a).str() << ";\n";
  os << "}\n\n" << directives(n, extra);
  return os.str();
}

std::vector<std::string> algebroid_conversions(const std::string& n) {
  return {"convert " + n + " via quasiq;", "convert " + n + " via homological;"};
}

AlgebroidData flat(bool closed) {
  const Chart b = Chart::make({{"x", Parity::Even, 0}, {"y", Parity::Even, 0}});
  const Poly x = Poly::gen(b, "x"), y = Poly::gen(b, "y");
  // A = y dx + x dy is exact; A = x dy has dA = dx dy.
  return closed ? examples::flat_connection(b, {y, x}, "flat_connection")
                : examples::flat_connection(b, {Poly(b), x}, "flat_connection_not_closed");
}

AlgebroidData named(AlgebroidData d, std::string name) {
  d.name = std::move(name);
  return d;
}

OddJacobiStructure renamed(OddJacobiStructure J, std::string name) {
  J.name = std::move(name);
  return J;
}

}  // namespace

const std::vector<CatalogEntry>& catalog_entries() {
  static const std::vector<CatalogEntry> e = {
      {"superline", "R^{1|1} with S = -P[xi] P[t], Q = -P[xi]", false, false},
      {"odd_symplectic", "canonical Schouten structure on Pi T* R^n", true, false},
      {"lie_schouten", "Lie-Schouten structure of so(3) on Pi g*", false, false},
      {"lie_schouten_non_jacobi", "Lie-Schouten structure of constants violating the Jacobi identity", false, true},
      {"de_rham", "de Rham differential on Pi T R^n", true, false},
      {"lie_algebra_bracket", "Chevalley-Eilenberg field of so(3) on Pi g", false, false},
      {"odd_contact", "odd Jacobi structure of the odd contact form on Pi T* R^n x R^{0|1}", true, false},
      {"exact_qs_1", "exact QS structure P[xs] P[x] with homothety xs d/dxs", false, false},
      {"exact_qs_2", "exact QS structure Q = d[x] P[x] with homothety x d/dx", false, false},
      {"flat_connection", "flat Abelian connection A = y dx + x dy on the plane", false, false},
      {"flat_connection_not_closed", "connection A = x dy, not closed", false, true},
      {"lie_algebra_cocycle", "three-dimensional Lie algebra with the cocycle xi1 on Pi g*", false, false},
      {"tangent_extension", "T R^1 extended by an even fibre direction", false, false},
      {"algebroid_2dim", "two-dimensional Lie algebra with cocycle (1, 0)", false, false},
  };
  return e;
}

std::string catalog_source(std::string_view name, unsigned n) {
  if (n == 0) throw Error("catalog dimension must be positive");
  if (name == "superline") return kSuperline;
  if (name == "odd_symplectic") return jacobi_source(examples::odd_symplectic(n), "schouten");
  if (name == "lie_schouten")
    return jacobi_source(renamed(examples::lie_schouten(examples::lie_algebra_so3()), "lie_schouten"), "schouten");
  if (name == "lie_schouten_non_jacobi")
    return jacobi_source(renamed(examples::lie_schouten(examples::non_jacobi_3dim()), "lie_schouten_non_jacobi"),
                         "schouten");
  if (name == "de_rham") return jacobi_source(examples::de_rham(n), "qmanifold", {"bracket de_rham_" + std::to_string(n) + "(x1, x1);"});
  if (name == "lie_algebra_bracket")
    return jacobi_source(renamed(examples::lie_algebra_bracket(examples::lie_algebra_so3()), "lie_algebra_bracket"),
                         "qmanifold", {"bracket lie_algebra_bracket(xi1, xi2);"});
  if (name == "odd_contact") {
    const auto J = examples::odd_contact(n);
    return jacobi_source(J, "oddjacobi", {"convert " + J.name + " via schoutenize;"});
  }
  if (name == "exact_qs_1") return exact_qs_source(examples::exact_qs_1());
  if (name == "exact_qs_2") return exact_qs_source(examples::exact_qs_2());
  if (name == "flat_connection") return algebroid_source(flat(true), algebroid_conversions("flat_connection"));
  if (name == "flat_connection_not_closed") return algebroid_source(flat(false), {});
  if (name == "lie_algebra_cocycle") return jacobi_source(examples::lie_algebra_cocycle(), "oddjacobi");
  if (name == "tangent_extension")
    return algebroid_source(named(extend_lie_algebroid(examples::tangent_algebroid(1)), "tangent_extension"),
                            algebroid_conversions("tangent_extension"));
  if (name == "algebroid_2dim")
    return algebroid_source(named(examples::lie_algebra_2dim(1, 0), "algebroid_2dim"),
                            algebroid_conversions("algebroid_2dim"));
  std::string list;
  for (const auto& e : catalog_entries()) list += (list.empty() ? "" : ", ") + e.name;
  throw Error("unknown example '" + std::string(name) + "'; available: " + list);
}

Model catalog(std::string_view name, unsigned n) { return parse(catalog_source(name, n)); }

}  // namespace ojac::dsl
