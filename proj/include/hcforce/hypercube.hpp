#pragma once

// The hypercube Q_n, its even/odd bipartition in lexicographic order, and
// the 0/1 support pattern of its bipartite adjacency matrix.
//
// Vertices are 0/1 strings of length n. The first string position maps to
// the most significant bit, so lexicographic order of strings is numeric
// order of the bitmasks.

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hcforce/gf_matrix.hpp"

namespace hcforce {

inline constexpr unsigned kMaxDimension = 30;

enum class Parity : std::uint8_t { even, odd };

inline const char* to_string(Parity p) noexcept { return p == Parity::even ? "even" : "odd"; }

struct HypercubeVertex {
  unsigned n = 0;
  std::uint32_t bits = 0;

  HypercubeVertex() = default;
  HypercubeVertex(unsigned dim, std::uint32_t mask) : n(dim), bits(mask) {
    if (dim == 0 || dim > kMaxDimension)
      throw std::invalid_argument("hypercube dimension out of range");
    if (mask >> dim) throw std::invalid_argument("vertex bitmask exceeds dimension");
  }

  static HypercubeVertex parse(std::string_view s) {
    if (s.empty() || s.size() > kMaxDimension)
      throw std::invalid_argument("bad hypercube vertex '" + std::string(s) + "'");
    std::uint32_t bits = 0;
    for (char ch : s) {
      if (ch != '0' && ch != '1')
        throw std::invalid_argument("bad hypercube vertex '" + std::string(s) + "'");
      bits = (bits << 1) | static_cast<std::uint32_t>(ch - '0');
    }
    return {static_cast<unsigned>(s.size()), bits};
  }

  std::string str() const {
    std::string s(n, '0');
    for (unsigned i = 0; i < n; ++i)
      if ((bits >> (n - 1 - i)) & 1U) s[i] = '1';
    return s;
  }

  friend bool operator==(const HypercubeVertex&, const HypercubeVertex&) = default;
  friend auto operator<=>(const HypercubeVertex&, const HypercubeVertex&) = default;
};

inline Parity parity(HypercubeVertex v) noexcept {
  return (std::popcount(v.bits) & 1) ? Parity::odd : Parity::even;
}

inline bool adjacent(HypercubeVertex a, HypercubeVertex b) noexcept {
  return a.n == b.n && std::popcount(a.bits ^ b.bits) == 1;
}

/// The n vertices at Hamming distance one, flipping positions 1..n in order.
inline std::vector<HypercubeVertex> neighbors(HypercubeVertex v) {
  std::vector<HypercubeVertex> out;
  out.reserve(v.n);
  for (unsigned i = 0; i < v.n; ++i)
    out.push_back({v.n, v.bits ^ (std::uint32_t{1} << (v.n - 1 - i))});
  return out;
}

struct LexIndex {
  Parity part;
  std::size_t index;
  friend bool operator==(const LexIndex&, const LexIndex&) = default;
};

// Among [0, b) exactly floor(b/2) masks share b's parity: pairs (2k, 2k+1)
// split evenly and b-1 has the opposite parity when b is odd.
inline LexIndex lex_index(HypercubeVertex v) noexcept { return {parity(v), v.bits >> 1}; }

inline HypercubeVertex vertex_at(unsigned n, Parity part, std::size_t index) {
  // Inverse of lex_index: the low bit is whatever fixes the parity.
  const auto high = static_cast<std::uint32_t>(index << 1);
  const bool odd_high = std::popcount(high) & 1;
  const bool want_odd = part == Parity::odd;
  return {n, high | static_cast<std::uint32_t>(odd_high != want_odd)};
}

struct Bipartition {
  unsigned n = 0;
  std::vector<HypercubeVertex> even_part;
  std::vector<HypercubeVertex> odd_part;
};

inline Bipartition bipartition(unsigned n) {
  if (n == 0 || n > kMaxDimension) throw std::invalid_argument("hypercube dimension out of range");
  Bipartition b{n, {}, {}};
  const std::size_t half = std::size_t{1} << (n - 1);
  b.even_part.reserve(half);
  b.odd_part.reserve(half);
  for (std::uint32_t bits = 0; bits < (std::uint32_t{1} << n); ++bits) {
    HypercubeVertex v{n, bits};
    (parity(v) == Parity::even ? b.even_part : b.odd_part).push_back(v);
  }
  return b;
}

/// 0/1 pattern marking where the edge indeterminate sits in a bipartite
/// adjacency matrix. Stored as a GF(2) matrix.
class SupportPattern {
 public:
  explicit SupportPattern(GFMatrix mask) : mask_(std::move(mask)) {
    if (mask_.field() != Field::gf2)
      throw std::invalid_argument("SupportPattern: mask must be over GF(2)");
  }
  SupportPattern(std::size_t rows, std::size_t cols) : mask_(Field::gf2, rows, cols) {}

  std::size_t rows() const noexcept { return mask_.rows(); }
  std::size_t cols() const noexcept { return mask_.cols(); }
  bool present(std::size_t r, std::size_t c) const { return mask_.is_nonzero(r, c); }
  void mark(std::size_t r, std::size_t c) { mask_.set(r, c, 1); }
  const GFMatrix& mask() const noexcept { return mask_; }

  friend bool operator==(const SupportPattern&, const SupportPattern&) = default;

 private:
  GFMatrix mask_;
};

/// Bipartite adjacency pattern of Q_n: rows E_n, columns O_n, both lexicographic.
inline SupportPattern support_matrix(unsigned n) {
  if (n == 0 || n > kMaxDimension) throw std::invalid_argument("support_matrix: n must be >= 1");
  const std::size_t half = std::size_t{1} << (n - 1);
  SupportPattern s(half, half);
  for (std::size_t i = 0; i < half; ++i) {
    const HypercubeVertex v = vertex_at(n, Parity::even, i);
    for (std::uint32_t flip = 1; flip < (std::uint32_t{1} << n); flip <<= 1)
      s.mark(i, lex_index({n, v.bits ^ flip}).index);
  }
  return s;
}

struct AssignResult {
  bool ok = true;
  std::optional<std::pair<std::size_t, std::size_t>> mismatch;  // first offending (row, col)
  explicit operator bool() const noexcept { return ok; }
};

/// Checks that `values` is nonzero exactly on the support of `s`.
inline AssignResult assign(const SupportPattern& s, const GFMatrix& values) {
  if (s.rows() != values.rows() || s.cols() != values.cols())
    throw std::invalid_argument("assign: dimension mismatch");
  for (std::size_t r = 0; r < s.rows(); ++r) {
    auto m = s.mask().one_plane(r);
    auto v1 = values.one_plane(r);
    auto v2 = values.two_plane(r);
    for (std::size_t w = 0; w < m.size(); ++w) {
      const Word nz = v1[w] | (v2.empty() ? 0 : v2[w]);
      if (const Word diff = nz ^ m[w]) {
        return {false, std::pair{r, w * kWordBits + std::countr_zero(diff)}};
      }
    }
  }
  return {};
}

inline void write_support(std::ostream& os, const SupportPattern& s) { write_matrix(os, s.mask()); }

inline SupportPattern read_support(std::istream& is) {
  GFMatrix m = read_matrix(is);
  if (m.field() != Field::gf2)
    throw std::invalid_argument("support pattern must use the gfp 2 header");
  return SupportPattern(std::move(m));
}

}  // namespace hcforce
