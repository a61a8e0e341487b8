#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ojac {

enum class Parity : unsigned char { Even = 0, Odd = 1 };

inline Parity operator+(Parity a, Parity b) {
  return static_cast<Parity>(static_cast<unsigned char>(a) ^ static_cast<unsigned char>(b));
}
inline Parity flip(Parity p) { return p + Parity::Odd; }
inline int bit(Parity p) { return static_cast<int>(p); }
/// (-1)^{ab} for parities a, b.
inline int koszul(Parity a, Parity b) { return (bit(a) & bit(b)) ? -1 : 1; }
/// (-1)^p.
inline int sign_of(Parity p) { return bit(p) ? -1 : 1; }

const char* to_string(Parity p);

enum class GeneratorKind : unsigned char {
  Base,      // a coordinate of the underlying manifold
  Momentum,  // P[z], conjugate to generator `of`
  Fibre,     // d[z], parity-flipped copy of generator `of`
};

struct Generator {
  std::string name;
  Parity parity = Parity::Even;
  int weight = 0;
  GeneratorKind kind = GeneratorKind::Base;
  // Index (within the same chart) of the generator this one is attached to;
  // meaningful for Momentum and Fibre kinds only.
  std::size_t of = 0;

  bool operator==(const Generator&) const = default;
};

struct GeneratorDecl {
  std::string name;
  Parity parity = Parity::Even;
  int weight = 0;
};

enum class ChartOrigin : unsigned char { Plain, Cotangent, Anticotangent, Product };

/// An ordered list of generators. Declaration order is the canonical
/// monomial order. Charts are immutable and cheap to copy.
class Chart {
 public:
  /// The point chart.
  Chart();

  /// Builds a plain chart. A name of the form d[z] with z declared earlier
  /// and of opposite parity is recorded as the anticotangent fibre of z.
  /// Throws ChartError on duplicate or reserved names.
  static Chart make(const std::vector<GeneratorDecl>& decls);

  /// Low-level constructor used by the chart builders.
  static Chart from_generators(std::vector<Generator> gens, ChartOrigin origin);

  std::size_t size() const;
  bool empty() const { return size() == 0; }
  const Generator& operator[](std::size_t i) const;
  const std::vector<Generator>& generators() const;
  ChartOrigin origin() const;

  std::optional<std::size_t> find(std::string_view name) const;
  /// Throws ChartError if absent.
  std::size_t index_of(std::string_view name) const;

  bool has_momenta() const;
  /// Index of P[z] for generator z, if present.
  std::optional<std::size_t> momentum_of(std::size_t z) const;
  /// Index of d[z] for generator z, if present.
  std::optional<std::size_t> fibre_of(std::size_t z) const;
  /// Indices of all non-momentum generators, in order.
  std::vector<std::size_t> base_indices() const;
  /// Pairs (z, P[z]) in base order.
  const std::vector<std::pair<std::size_t, std::size_t>>& conjugate_pairs() const;

  /// Structural equality: same generators in the same order.
  bool operator==(const Chart& other) const;

  std::string describe() const;

 private:
  struct Data;
  explicit Chart(std::shared_ptr<const Data> d);
  static std::shared_ptr<const Data> build(std::vector<Generator> gens, ChartOrigin origin);
  std::shared_ptr<const Data> d_;
};

std::string momentum_name(std::string_view z);
std::string fibre_name(std::string_view z);

/// Throws ChartError if the charts differ.
void require_same_chart(const Chart& a, const Chart& b, std::string_view what);

}  // namespace ojac
