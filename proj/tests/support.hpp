#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ojac/phase_space.hpp"
#include "ojac/random.hpp"

namespace ojac::test {

inline Chart plain(std::initializer_list<GeneratorDecl> decls) { return Chart::make(std::vector<GeneratorDecl>(decls)); }

inline Chart superline() { return plain({{"t", Parity::Even, 0}, {"xi", Parity::Odd, 0}}); }

/// (p|q) coordinates x1..xp even, th1..thq odd, all of weight 0.
inline Chart euclidean(unsigned p, unsigned q) {
  std::vector<GeneratorDecl> decls;
  for (unsigned i = 1; i <= p; ++i) decls.push_back({"x" + std::to_string(i), Parity::Even, 0});
  for (unsigned i = 1; i <= q; ++i) decls.push_back({"th" + std::to_string(i), Parity::Odd, 0});
  return Chart::make(decls);
}

inline Poly g(const Chart& c, std::string_view name) { return Poly::gen(c, name); }
inline Poly k(const Chart& c, const Rational& q) { return Poly::constant(c, q); }

}  // namespace ojac::test
