#pragma once

// Dense matrices over GF(2) and GF(3) with bit-sliced row storage.
//
// Every row is stored as one (GF(2)) or two (GF(3)) bitplanes of 64-bit
// words. For GF(3) the planes are one-hot: bit set in the "one" plane means
// the entry is 1, bit set in the "two" plane means the entry is 2. Row
// additions and negations are then a handful of word-wide logic ops.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hcforce {

using Word = std::uint64_t;
using Element = std::uint8_t;

inline constexpr std::size_t kWordBits = 64;

/// Prime modulus of the coefficient field. Only GF(2) and GF(3) are supported.
enum class Field : std::uint8_t { gf2 = 2, gf3 = 3 };

constexpr unsigned modulus(Field f) noexcept { return static_cast<unsigned>(f); }

inline Field field_from_modulus(unsigned p) {
  if (p == 2) return Field::gf2;
  if (p == 3) return Field::gf3;
  throw std::invalid_argument("unsupported field modulus " + std::to_string(p) +
                              " (expected 2 or 3)");
}

constexpr Element field_add(Field f, Element a, Element b) noexcept {
  return static_cast<Element>((a + b) % modulus(f));
}
constexpr Element field_mul(Field f, Element a, Element b) noexcept {
  return static_cast<Element>((a * b) % modulus(f));
}
constexpr Element field_neg(Field f, Element a) noexcept {
  return static_cast<Element>((modulus(f) - a) % modulus(f));
}
// In GF(2) and GF(3) every nonzero element is its own inverse.
constexpr Element field_inv(Element a) noexcept { return a; }

namespace detail {

constexpr std::size_t words_for(std::size_t bits) noexcept {
  return (bits + kWordBits - 1) / kWordBits;
}

// dst += src over GF(3), one-hot bitplanes, words [from, to).
inline void gf3_add(Word* dst1, Word* dst2, const Word* src1, const Word* src2,
                    std::size_t from, std::size_t to) noexcept {
  for (std::size_t w = from; w < to; ++w) {
    const Word a1 = dst1[w], a2 = dst2[w], b1 = src1[w], b2 = src2[w];
    const Word t = (a1 | b2) ^ (a2 | b1);
    dst1[w] = (a2 | b2) ^ t;
    dst2[w] = (a1 | b1) ^ t;
  }
}

// dst -= src over GF(3); subtraction is addition of the plane-swapped source.
inline void gf3_sub(Word* dst1, Word* dst2, const Word* src1, const Word* src2,
                    std::size_t from, std::size_t to) noexcept {
  gf3_add(dst1, dst2, src2, src1, from, to);
}

inline void gf2_add(Word* dst, const Word* src, std::size_t from,
                    std::size_t to) noexcept {
  for (std::size_t w = from; w < to; ++w) dst[w] ^= src[w];
}

}  // namespace detail

class GFMatrix {
 public:
  GFMatrix(Field field, std::size_t rows, std::size_t cols)
      : field_(field), rows_(rows), cols_(cols), stride_(detail::words_for(cols)) {
    if (rows == 0 || cols == 0)
      throw std::invalid_argument("GFMatrix: dimensions must be at least 1x1");
    one_.assign(rows_ * stride_, 0);
    if (field_ == Field::gf3) two_.assign(rows_ * stride_, 0);
  }

  /// Builds a matrix from a row-major list of element values.
  static GFMatrix from_entries(Field field, std::size_t rows, std::size_t cols,
                               std::span<const Element> entries) {
    if (entries.size() != rows * cols)
      throw std::invalid_argument("GFMatrix: entry count does not match dimensions");
    GFMatrix m(field, rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) m.set(r, c, entries[r * cols + c]);
    return m;
  }

  static GFMatrix from_rows(Field field,
                            const std::vector<std::vector<int>>& values) {
    if (values.empty() || values.front().empty())
      throw std::invalid_argument("GFMatrix: dimensions must be at least 1x1");
    GFMatrix m(field, values.size(), values.front().size());
    for (std::size_t r = 0; r < values.size(); ++r) {
      if (values[r].size() != m.cols_)
        throw std::invalid_argument("GFMatrix: ragged row list");
      for (std::size_t c = 0; c < m.cols_; ++c) {
        if (values[r][c] < 0)
          throw std::invalid_argument("GFMatrix: negative entry");
        m.set(r, c, static_cast<Element>(values[r][c]));
      }
    }
    return m;
  }

  Field field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }
  std::size_t words_per_row() const noexcept { return stride_; }

  Element at(std::size_t r, std::size_t c) const {
    check_index(r, c);
    const std::size_t w = r * stride_ + c / kWordBits;
    const Word bit = Word{1} << (c % kWordBits);
    if (one_[w] & bit) return 1;
    if (field_ == Field::gf3 && (two_[w] & bit)) return 2;
    return 0;
  }

  void set(std::size_t r, std::size_t c, Element v) {
    check_index(r, c);
    if (v >= modulus(field_))
      throw std::invalid_argument("GFMatrix: entry " + std::to_string(v) +
                                  " out of range for GF(" +
                                  std::to_string(modulus(field_)) + ")");
    const std::size_t w = r * stride_ + c / kWordBits;
    const Word bit = Word{1} << (c % kWordBits);
    one_[w] &= ~bit;
    if (field_ == Field::gf3) two_[w] &= ~bit;
    if (v == 1) one_[w] |= bit;
    if (v == 2) two_[w] |= bit;
  }

  /// Unpacks to a row-major element list.
  std::vector<Element> entries() const {
    std::vector<Element> out(rows_ * cols_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) out[r * cols_ + c] = at(r, c);
    return out;
  }

  bool is_nonzero(std::size_t r, std::size_t c) const {
    check_index(r, c);
    const std::size_t w = r * stride_ + c / kWordBits;
    const Word bit = Word{1} << (c % kWordBits);
    return ((one_[w] | (two_.empty() ? 0 : two_[w])) & bit) != 0;
  }

  std::size_t count_nonzero() const noexcept {
    std::size_t n = 0;
    for (std::size_t i = 0; i < one_.size(); ++i)
      n += std::popcount(one_[i] | (two_.empty() ? 0 : two_[i]));
    return n;
  }

  // Raw bitplane access. The "two" plane is empty for GF(2).
  std::span<Word> one_plane(std::size_t r) { return {one_.data() + r * stride_, stride_}; }
  std::span<Word> two_plane(std::size_t r) {
    if (two_.empty()) return {};
    return {two_.data() + r * stride_, stride_};
  }
  std::span<const Word> one_plane(std::size_t r) const {
    return {one_.data() + r * stride_, stride_};
  }
  std::span<const Word> two_plane(std::size_t r) const {
    if (two_.empty()) return {};
    return {two_.data() + r * stride_, stride_};
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    std::swap_ranges(one_.begin() + a * stride_, one_.begin() + (a + 1) * stride_,
                     one_.begin() + b * stride_);
    if (!two_.empty())
      std::swap_ranges(two_.begin() + a * stride_, two_.begin() + (a + 1) * stride_,
                       two_.begin() + b * stride_);
  }

  /// Row dst += coef * row src, restricted to words [from_word, words_per_row()).
  void add_row_multiple(std::size_t dst, std::size_t src, Element coef,
                        std::size_t from_word = 0) {
    coef = static_cast<Element>(coef % modulus(field_));
    if (coef == 0) return;
    Word* d1 = one_.data() + dst * stride_;
    const Word* s1 = one_.data() + src * stride_;
    if (field_ == Field::gf2) {
      detail::gf2_add(d1, s1, from_word, stride_);
      return;
    }
    Word* d2 = two_.data() + dst * stride_;
    const Word* s2 = two_.data() + src * stride_;
    if (coef == 1)
      detail::gf3_add(d1, d2, s1, s2, from_word, stride_);
    else
      detail::gf3_sub(d1, d2, s1, s2, from_word, stride_);
  }

  void scale_row(std::size_t r, Element coef) {
    coef = static_cast<Element>(coef % modulus(field_));
    if (coef == 1) return;
    if (coef == 0) {
      std::fill_n(one_.begin() + r * stride_, stride_, 0);
      if (!two_.empty()) std::fill_n(two_.begin() + r * stride_, stride_, 0);
      return;
    }
    // coef == 2 in GF(3): negation swaps the planes.
    std::swap_ranges(one_.begin() + r * stride_, one_.begin() + (r + 1) * stride_,
                     two_.begin() + r * stride_);
  }

  friend bool operator==(const GFMatrix& a, const GFMatrix& b) noexcept {
    return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ &&
           a.one_ == b.one_ && a.two_ == b.two_;
  }

 private:
  void check_index(std::size_t r, std::size_t c) const {
    if (r >= rows_ || c >= cols_) throw std::out_of_range("GFMatrix: index out of range");
  }

  Field field_;
  std::size_t rows_;
  std::size_t cols_;
  std::size_t stride_;
  std::vector<Word> one_;
  std::vector<Word> two_;
};

inline GFMatrix identity(std::size_t k, Field field) {
  GFMatrix m(field, k, k);
  for (std::size_t i = 0; i < k; ++i) m.set(i, i, 1);
  return m;
}

inline GFMatrix scalar_mul(Element c, const GFMatrix& m) {
  if (c >= modulus(m.field()))
    throw std::invalid_argument("scalar_mul: scalar out of field range");
  GFMatrix out = m;
  for (std::size_t r = 0; r < out.rows(); ++r) out.scale_row(r, c);
  return out;
}

/// Product a*b. Each output row accumulates the rows of b selected by the
/// nonzero entries of the matching row of a, so sparse left factors are cheap.
inline GFMatrix mat_mul(const GFMatrix& a, const GFMatrix& b) {
  if (a.field() != b.field()) throw std::invalid_argument("mat_mul: modulus mismatch");
  if (a.cols() != b.rows()) throw std::invalid_argument("mat_mul: dimension mismatch");
  const Field f = a.field();
  const std::size_t stride = b.words_per_row();
  GFMatrix out(f, a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto a1 = a.one_plane(i);
    auto a2 = a.two_plane(i);
    auto o1 = out.one_plane(i);
    auto o2 = out.two_plane(i);
    for (std::size_t w = 0; w < a.words_per_row(); ++w) {
      Word live = a1[w] | (a2.empty() ? 0 : a2[w]);
      while (live) {
        const std::size_t k = w * kWordBits + std::countr_zero(live);
        live &= live - 1;
        auto b1 = b.one_plane(k);
        if (f == Field::gf2) {
          detail::gf2_add(o1.data(), b1.data(), 0, stride);
          continue;
        }
        auto b2 = b.two_plane(k);
        if ((a1[w] >> (k % kWordBits)) & 1)
          detail::gf3_add(o1.data(), o2.data(), b1.data(), b2.data(), 0, stride);
        else
          detail::gf3_sub(o1.data(), o2.data(), b1.data(), b2.data(), 0, stride);
      }
    }
  }
  return out;
}

/// Assembles [[tl, tr], [bl, br]].
inline GFMatrix block2x2(const GFMatrix& tl, const GFMatrix& tr, const GFMatrix& bl,
                         const GFMatrix& br) {
  const Field f = tl.field();
  if (tr.field() != f || bl.field() != f || br.field() != f)
    throw std::invalid_argument("block2x2: modulus mismatch");
  if (tl.rows() != tr.rows() || bl.rows() != br.rows() || tl.cols() != bl.cols() ||
      tr.cols() != br.cols())
    throw std::invalid_argument("block2x2: dimension mismatch");
  GFMatrix out(f, tl.rows() + bl.rows(), tl.cols() + tr.cols());
  auto place = [&out](const GFMatrix& blk, std::size_t r0, std::size_t c0) {
    for (std::size_t r = 0; r < blk.rows(); ++r) {
      auto p1 = blk.one_plane(r);
      auto p2 = blk.two_plane(r);
      for (std::size_t w = 0; w < p1.size(); ++w) {
        for (Word bits = p1[w]; bits; bits &= bits - 1)
          out.set(r0 + r, c0 + w * kWordBits + std::countr_zero(bits), 1);
        if (p2.empty()) continue;
        for (Word bits = p2[w]; bits; bits &= bits - 1)
          out.set(r0 + r, c0 + w * kWordBits + std::countr_zero(bits), 2);
      }
    }
  };
  place(tl, 0, 0);
  place(tr, 0, tl.cols());
  place(bl, tl.rows(), 0);
  place(br, tl.rows(), tl.cols());
  return out;
}

/// The submatrix on the given row and column index lists (in the given order).
inline GFMatrix submatrix(const GFMatrix& m, std::span<const std::size_t> rows,
                          std::span<const std::size_t> cols) {
  GFMatrix out(m.field(), rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) out.set(i, j, m.at(rows[i], cols[j]));
  return out;
}

inline GFMatrix transpose(const GFMatrix& m) {
  GFMatrix out(m.field(), m.cols(), m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const Element v = m.at(r, c);
      if (v) out.set(c, r, v);
    }
  return out;
}

namespace detail {

struct EchelonResult {
  std::size_t rank = 0;
  Element det = 0;  // meaningful for square inputs only
};

// Forward elimination in place. Pivot rule: for each column left to right,
// the first row at or below the current pivot row with a nonzero entry.
// When `reduce` is set, pivot rows are normalized to 1 and the pivot column
// is cleared above as well (reduced row echelon form); `pivot_cols` bounds
// which columns may hold pivots.
inline EchelonResult echelon(GFMatrix& m, bool reduce, std::size_t pivot_cols) {
  const Field f = m.field();
  EchelonResult res;
  Element det = 1;
  std::size_t row = 0;
  for (std::size_t col = 0; col < pivot_cols && row < m.rows(); ++col) {
    const std::size_t w = col / kWordBits;
    const Word bit = Word{1} << (col % kWordBits);
    std::size_t piv = row;
    for (; piv < m.rows(); ++piv) {
      Word v = m.one_plane(piv)[w];
      if (f == Field::gf3) v |= m.two_plane(piv)[w];
      if (v & bit) break;
    }
    if (piv == m.rows()) continue;
    if (piv != row) {
      m.swap_rows(piv, row);
      det = field_neg(f, det);
    }
    const Element pv = (m.one_plane(row)[w] & bit) ? 1 : 2;
    det = field_mul(f, det, pv);
    if (pv != 1) m.scale_row(row, field_inv(pv));

    auto eliminate = [&](std::size_t r) {
      const Word one = m.one_plane(r)[w] & bit;
      const Word two = f == Field::gf3 ? (m.two_plane(r)[w] & bit) : 0;
      if (one)
        m.add_row_multiple(r, row, field_neg(f, 1), w);
      else if (two)
        m.add_row_multiple(r, row, field_neg(f, 2), w);
    };
    // Entries left of `col` in pivot rows below are already zero, so
    // updates can start at the pivot's word.
    for (std::size_t r = row + 1; r < m.rows(); ++r) eliminate(r);
    if (reduce) {
      for (std::size_t r = 0; r < row; ++r) {
        const Word one = m.one_plane(r)[w] & bit;
        const Word two = f == Field::gf3 ? (m.two_plane(r)[w] & bit) : 0;
        if (one)
          m.add_row_multiple(r, row, field_neg(f, 1), 0);
        else if (two)
          m.add_row_multiple(r, row, field_neg(f, 2), 0);
      }
    }
    ++row;
  }
  res.rank = row;
  res.det = (m.square() && row == m.rows()) ? det : 0;
  return res;
}

}  // namespace detail

inline std::size_t rank(const GFMatrix& m) {
  GFMatrix work = m;
  return detail::echelon(work, false, work.cols()).rank;
}

inline Element det(const GFMatrix& m) {
  if (!m.square()) throw std::invalid_argument("det: matrix is not square");
  GFMatrix work = m;
  return detail::echelon(work, false, work.cols()).det;
}

/// Inverse by Gauss-Jordan on [m | I]; std::nullopt when m is singular.
inline std::optional<GFMatrix> inverse(const GFMatrix& m) {
  if (!m.square()) throw std::invalid_argument("inverse: matrix is not square");
  const std::size_t n = m.rows();
  GFMatrix aug(m.field(), n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      const Element v = m.at(r, c);
      if (v) aug.set(r, c, v);
    }
    aug.set(r, n + r, 1);
  }
  const auto res = detail::echelon(aug, true, n);
  if (res.rank < n) return std::nullopt;
  GFMatrix out(m.field(), n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      const Element v = aug.at(r, n + c);
      if (v) out.set(r, c, v);
    }
  return out;
}

// Text format: "gfp <p> <rows> <cols>" then one digit string per row.
inline void write_matrix(std::ostream& os, const GFMatrix& m) {
  os << "gfp " << modulus(m.field()) << ' ' << m.rows() << ' ' << m.cols() << '\n';
  std::string line(m.cols(), '0');
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c)
      line[c] = static_cast<char>('0' + m.at(r, c));
    os << line << '\n';
  }
}

inline std::string to_string(const GFMatrix& m) {
  std::ostringstream os;
  write_matrix(os, m);
  return os.str();
}

inline GFMatrix read_matrix(std::istream& is) {
  std::string header;
  if (!std::getline(is, header)) throw std::invalid_argument("matrix: missing header");
  std::istringstream hs(header);
  std::string tag;
  unsigned p = 0;
  std::size_t rows = 0, cols = 0;
  std::string extra;
  if (!(hs >> tag >> p >> rows >> cols) || tag != "gfp" || (hs >> extra))
    throw std::invalid_argument("matrix: malformed header '" + header + "'");
  const Field f = field_from_modulus(p);
  if (rows == 0 || cols == 0) throw std::invalid_argument("matrix: empty dimensions");
  GFMatrix m(f, rows, cols);
  std::string line;
  for (std::size_t r = 0; r < rows; ++r) {
    if (!std::getline(is, line))
      throw std::invalid_argument("matrix: expected " + std::to_string(rows) + " rows");
    if (line.size() != cols)
      throw std::invalid_argument("matrix: row " + std::to_string(r) + " has length " +
                                  std::to_string(line.size()));
    for (std::size_t c = 0; c < cols; ++c) {
      const char ch = line[c];
      if (ch < '0' || static_cast<unsigned>(ch - '0') >= p)
        throw std::invalid_argument("matrix: bad digit in row " + std::to_string(r));
      if (ch != '0') m.set(r, c, static_cast<Element>(ch - '0'));
    }
  }
  return m;
}

inline GFMatrix parse_matrix(const std::string& text) {
  std::istringstream is(text);
  return read_matrix(is);
}

}  // namespace hcforce
