#pragma once

// Forcing sets, forcing numbers, rank lower bounds and unique-PM order search.
//
// S is forcing for a perfect matching M when M is the only perfect matching
// containing S, equivalently when deleting the endpoints of S leaves a graph
// whose perfect matching M \ S is unique.

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "hcforce/certificate.hpp"
#include "hcforce/gf_matrix.hpp"
#include "hcforce/hypercube.hpp"
#include "hcforce/matching.hpp"

namespace hcforce {

inline constexpr std::size_t kDefaultForcingCap = 16;
inline constexpr unsigned kExhaustiveMaxDimension = 4;

enum class BoundSource : std::uint8_t { none, rank_certificate };

inline const char* to_string(BoundSource s) noexcept {
  return s == BoundSource::rank_certificate ? "rank" : "none";
}

struct ForcingReport {
  Matching matching;
  std::size_t forcing_number = 0;
  Matching witness;
  std::size_t lower_bound_used = 0;
  BoundSource bound_source = BoundSource::none;
};

namespace detail {

inline void require_perfect(const BipartiteGraph& g, const Matching& m) {
  if (!is_perfect_matching(g, m)) throw std::invalid_argument("matching is not a perfect matching of the graph");
}

// For a fixed perfect matching with at most 64 edges: edge i -> edge j when
// left(i) is adjacent to right(j), j != i. Directed cycles are exactly the
// M-alternating cycles, and removing the endpoints of S removes S's nodes.
class AlternationDigraph {
 public:
  AlternationDigraph(const BipartiteGraph& g, const Matching& m) : succ_(m.size(), 0) {
    if (m.size() > 64) throw CapExceeded("matching has more than 64 edges");
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::size_t j = 0; j < m.size(); ++j)
        if (i != j && g.has_edge(m.edges[i].left, m.edges[j].right)) succ_[i] |= Word{1} << j;
  }

  /// True iff the digraph restricted to `alive` (bitmask over edge indices) is acyclic.
  bool acyclic(Word alive) const noexcept {
    // Peel vertices with no live successor until nothing changes.
    bool changed = true;
    while (alive && changed) {
      changed = false;
      for (Word bits = alive; bits; bits &= bits - 1) {
        const int i = std::countr_zero(bits);
        if ((succ_[i] & alive) == 0) {
          alive &= ~(Word{1} << i);
          changed = true;
        }
      }
    }
    return alive == 0;
  }

  std::size_t size() const noexcept { return succ_.size(); }

 private:
  std::vector<Word> succ_;
};

inline Word full_mask(std::size_t k) noexcept { return k >= 64 ? ~Word{0} : (Word{1} << k) - 1; }

inline Matching select(const Matching& m, Word subset) {
  Matching s;
  for (Word bits = subset; bits; bits &= bits - 1) s.edges.push_back(m.edges[std::countr_zero(bits)]);
  return s;
}

/// Visits k-subsets of {0..n-1} as bitmasks in lexicographic order of their
/// sorted index lists; stops early when f returns true.
template <class F>
bool for_each_combination(std::size_t n, std::size_t k, F&& f) {
  if (k > n) return false;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    Word mask = 0;
    for (auto i : idx) mask |= Word{1} << i;
    if (f(mask)) return true;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return false;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace detail

/// Is s a forcing set of the perfect matching m? Decided by testing the
/// graph left after deleting the endpoints of s for a unique perfect matching.
inline bool is_forcing(const BipartiteGraph& g, const Matching& m, const Matching& s) {
  detail::require_perfect(g, m);
  VertexSet left(g.left_size(), true), right(g.right_size(), true);
  for (const auto& e : s.edges) {
    if (!std::binary_search(m.edges.begin(), m.edges.end(), e))
      throw std::invalid_argument("forcing candidate is not a subset of the matching");
    left.reset(e.left);
    right.reset(e.right);
  }
  return detail::unique_pm(detail::GraphView(g, std::move(left), std::move(right))).unique;
}

/// Minimum forcing set by size-ordered subset enumeration starting at `lower`.
/// Among equal sizes the lexicographically first subset of edge indices wins.
inline ForcingReport forcing_number(const BipartiteGraph& g, const Matching& m, std::size_t lower = 0,
                                    BoundSource source = BoundSource::none,
                                    std::size_t cap = kDefaultForcingCap) {
  detail::require_perfect(g, m);
  if (m.size() > cap || m.size() > 64)
    throw CapExceeded("forcing_number: matching has " + std::to_string(m.size()) + " edges, cap is " +
                      std::to_string(cap));
  if (lower > m.size()) throw std::invalid_argument("forcing_number: lower bound exceeds matching size");
  const detail::AlternationDigraph dg(g, m);
  const Word all = detail::full_mask(m.size());
  for (std::size_t k = lower; k <= m.size(); ++k) {
    Word hit = 0;
    const bool found = detail::for_each_combination(m.size(), k, [&](Word subset) {
      if (!dg.acyclic(all & ~subset)) return false;
      hit = subset;
      return true;
    });
    if (found) return {m, k, detail::select(m, hit), lower, source};
  }
  // Unreachable: the full matching is always forcing.
  throw std::logic_error("forcing_number: no forcing set found");
}

/// N - rank(assignment) for a graph with N vertices per side. Every forcing set
/// of every perfect matching has at least this many edges.
inline std::size_t rank_lower_bound(const BipartiteGraph& g, const GFMatrix& assignment) {
  if (g.left_size() != g.right_size())
    throw std::invalid_argument("rank_lower_bound: parts have different sizes");
  const auto check = assign(g.support(), assignment);
  if (!check.ok)
    throw std::invalid_argument("rank_lower_bound: assignment does not match support at (" +
                                std::to_string(check.mismatch->first) + ", " +
                                std::to_string(check.mismatch->second) + ")");
  return g.left_size() - rank(assignment);
}

/// For a balanced induced subgraph of Q_n (n >= 2): the rank bound using B_n
/// restricted to the kept vertices. nullopt when the graph has no hypercube
/// origin or cannot carry the bound.
inline std::optional<std::size_t> hypercube_rank_bound(const BipartiteGraph& g) {
  const auto& o = g.origin();
  if (!o || o->n < 2 || g.left_size() != g.right_size()) return std::nullopt;
  if (g.left_size() == 0) return 0;
  const GFMatrix b = build_B(o->n);
  std::vector<std::size_t> rows, cols;
  for (auto bits : o->left_bits) rows.push_back(lex_index({o->n, bits}).index);
  for (auto bits : o->right_bits) cols.push_back(lex_index({o->n, bits}).index);
  return rank_lower_bound(g, submatrix(b, rows, cols));
}

/// Every perfect matching of g, deduplicated and in canonical order.
inline std::vector<Matching> all_perfect_matchings(const BipartiteGraph& g,
                                                   std::size_t cap = kDefaultEnumerationCap) {
  std::set<Matching> seen;
  enumerate_pms(g, cap, [&](const Matching& m) { seen.insert(m); });
  return {seen.begin(), seen.end()};
}

/// Forcing number of every perfect matching, in canonical matching order.
inline std::vector<ForcingReport> forcing_reports(const BipartiteGraph& g, std::size_t lower = 0,
                                                  BoundSource source = BoundSource::none,
                                                  unsigned jobs = 1,
                                                  std::size_t enum_cap = kDefaultEnumerationCap,
                                                  std::size_t forcing_cap = kDefaultForcingCap) {
  const std::vector<Matching> pms = all_perfect_matchings(g, enum_cap);
  if (pms.empty()) throw std::invalid_argument("forcing_spectrum: graph has no perfect matching");
  if (!pms.empty() && pms.front().size() > forcing_cap)
    throw CapExceeded("forcing_spectrum: matchings have " + std::to_string(pms.front().size()) +
                      " edges, cap is " + std::to_string(forcing_cap));
  std::vector<ForcingReport> out(pms.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    try {
      for (std::size_t i = next++; i < pms.size(); i = next++)
        out[i] = forcing_number(g, pms[i], lower, source, forcing_cap);
    } catch (...) {
      std::lock_guard lock(failure_mu);
      if (!failure) failure = std::current_exception();
      next = pms.size();
    }
  };
  jobs = std::max(1U, jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

inline std::set<std::size_t> forcing_spectrum(const BipartiteGraph& g, std::size_t lower = 0,
                                              BoundSource source = BoundSource::none, unsigned jobs = 1,
                                              std::size_t enum_cap = kDefaultEnumerationCap,
                                              std::size_t forcing_cap = kDefaultForcingCap) {
  std::set<std::size_t> spectrum;
  for (const auto& r : forcing_reports(g, lower, source, jobs, enum_cap, forcing_cap))
    spectrum.insert(r.forcing_number);
  return spectrum;
}

enum class SweepMode : std::uint8_t { exhaustive, bounded };

struct UniqueOrderResult {
  std::size_t order = 0;
  std::vector<HypercubeVertex> witness;  // empty in bounded mode
  bool exhaustive = false;
};

/// Largest order of an induced subgraph of Q_n with a unique perfect matching.
/// Exhaustive mode sweeps balanced vertex subsets from the largest size down
/// (n <= 4); bounded mode returns the certified ceiling 2 * rank(B_n).
inline UniqueOrderResult max_unique_pm_order(unsigned n, SweepMode mode) {
  if (n == 0) throw std::invalid_argument("max_unique_pm_order: n must be >= 1");
  if (mode == SweepMode::bounded) {
    if (n < 2) throw std::invalid_argument("max_unique_pm_order: bounded mode needs n >= 2");
    return {2 * rank(build_B(n)), {}, false};
  }
  if (n > kExhaustiveMaxDimension)
    throw CapExceeded("max_unique_pm_order: exhaustive mode supports n <= " +
                      std::to_string(kExhaustiveMaxDimension));
  const BipartiteGraph q = hypercube_graph(n);
  const std::size_t half = q.left_size();
  for (std::size_t k = half + 1; k-- > 0;) {
    std::optional<UniqueOrderResult> found;
    detail::for_each_combination(half, k, [&](Word lmask) {
      return detail::for_each_combination(half, k, [&](Word rmask) {
        VertexSet l(half), r(half);
        for (std::size_t i = 0; i < half; ++i) {
          if ((lmask >> i) & 1) l.set(i);
          if ((rmask >> i) & 1) r.set(i);
        }
        if (!detail::unique_pm(detail::GraphView(q, l, r)).unique) return false;
        UniqueOrderResult res{2 * k, {}, true};
        l.for_each([&](std::size_t i) { res.witness.push_back({n, q.origin()->left_bits[i]}); });
        r.for_each([&](std::size_t j) { res.witness.push_back({n, q.origin()->right_bits[j]}); });
        std::sort(res.witness.begin(), res.witness.end());
        found = std::move(res);
        return true;
      });
    });
    if (found) return *found;
  }
  return {0, {}, true};
}

/// Number of vertex subsets of Q_n (all 2^(2^n) of them) whose induced
/// subgraph has a unique perfect matching, keyed by order. n <= 4.
inline std::map<std::size_t, std::uint64_t> unique_pm_order_histogram(unsigned n) {
  if (n == 0 || n > kExhaustiveMaxDimension)
    throw CapExceeded("unique_pm_order_histogram: n must be in [1, 4]");
  const BipartiteGraph q = hypercube_graph(n);
  const std::size_t half = q.left_size();
  std::map<std::size_t, std::uint64_t> hist;
  for (Word lmask = 0; lmask < (Word{1} << half); ++lmask)
    for (Word rmask = 0; rmask < (Word{1} << half); ++rmask) {
      if (std::popcount(lmask) != std::popcount(rmask)) continue;  // no PM possible
      VertexSet l(half), r(half);
      for (std::size_t i = 0; i < half; ++i) {
        if ((lmask >> i) & 1) l.set(i);
        if ((rmask >> i) & 1) r.set(i);
      }
      if (detail::unique_pm(detail::GraphView(q, l, r)).unique) ++hist[2 * std::popcount(lmask)];
    }
  return hist;
}

// "matching <k> forcing <f> witness {a-b,...} bound <b> source <rank|none>"
inline void write_forcing_report(std::ostream& os, const BipartiteGraph& g, const ForcingReport& r) {
  os << "matching " << r.matching.size() << " forcing " << r.forcing_number << " witness {";
  for (std::size_t i = 0; i < r.witness.size(); ++i) {
    if (i) os << ',';
    os << g.left_label(r.witness.edges[i].left) << '-' << g.right_label(r.witness.edges[i].right);
  }
  os << "} bound " << r.lower_bound_used << " source " << to_string(r.bound_source) << '\n';
}

}  // namespace hcforce
