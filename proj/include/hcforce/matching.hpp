#pragma once

// Bipartite graphs, perfect matching search, exact counting, and
// unique-perfect-matching detection.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hcforce/gf_matrix.hpp"
#include "hcforce/hypercube.hpp"

namespace hcforce {

/// Thrown when a search would exceed a configured size limit.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultEnumerationCap = 40;
inline constexpr std::size_t kPermanentMaxSide = 20;

/// Fixed-size set of vertex indices packed into words.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::size_t size, bool full = false)
      : size_(size), words_(detail::words_for(size), full ? ~Word{0} : 0) {
    if (full) trim();
  }

  std::size_t size() const noexcept { return size_; }
  bool test(std::size_t i) const noexcept { return (words_[i / kWordBits] >> (i % kWordBits)) & 1; }
  void set(std::size_t i) noexcept { words_[i / kWordBits] |= Word{1} << (i % kWordBits); }
  void reset(std::size_t i) noexcept { words_[i / kWordBits] &= ~(Word{1} << (i % kWordBits)); }
  std::size_t count() const noexcept {
    std::size_t n = 0;
    for (Word w : words_) n += std::popcount(w);
    return n;
  }
  std::span<const Word> words() const noexcept { return words_; }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w)
      for (Word bits = words_[w]; bits; bits &= bits - 1)
        f(w * kWordBits + static_cast<std::size_t>(std::countr_zero(bits)));
  }

  friend bool operator==(const VertexSet&, const VertexSet&) = default;

 private:
  void trim() noexcept {
    if (size_ % kWordBits && !words_.empty()) words_.back() &= (Word{1} << (size_ % kWordBits)) - 1;
  }

  std::size_t size_ = 0;
  std::vector<Word> words_;
};

struct HypercubeOrigin {
  unsigned n = 0;
  std::vector<std::uint32_t> left_bits;   // even vertices
  std::vector<std::uint32_t> right_bits;  // odd vertices
};

struct Edge {
  std::uint32_t left = 0;
  std::uint32_t right = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// A set of vertex-disjoint edges, kept sorted by (left, right).
struct Matching {
  std::vector<Edge> edges;

  Matching() = default;
  explicit Matching(std::vector<Edge> e) : edges(std::move(e)) { std::sort(edges.begin(), edges.end()); }

  std::size_t size() const noexcept { return edges.size(); }
  bool empty() const noexcept { return edges.empty(); }
  friend bool operator==(const Matching&, const Matching&) = default;
  friend auto operator<=>(const Matching&, const Matching&) = default;
};

class BipartiteGraph {
 public:
  BipartiteGraph() = default;
  BipartiteGraph(std::vector<std::string> left, std::vector<std::string> right)
      : left_(std::move(left)), right_(std::move(right)), stride_(detail::words_for(right_.size())) {
    adj_.assign(left_.size() * stride_, 0);
    for (std::size_t i = 0; i < left_.size(); ++i)
      if (!left_index_.emplace(left_[i], i).second)
        throw std::invalid_argument("duplicate vertex label '" + left_[i] + "'");
    for (std::size_t j = 0; j < right_.size(); ++j)
      if (left_index_.count(right_[j]) || !right_index_.emplace(right_[j], j).second)
        throw std::invalid_argument("duplicate vertex label '" + right_[j] + "'");
  }

  std::size_t left_size() const noexcept { return left_.size(); }
  std::size_t right_size() const noexcept { return right_.size(); }
  std::size_t vertex_count() const noexcept { return left_.size() + right_.size(); }
  const std::string& left_label(std::size_t i) const { return left_.at(i); }
  const std::string& right_label(std::size_t j) const { return right_.at(j); }

  std::optional<std::size_t> find_left(const std::string& label) const {
    auto it = left_index_.find(label);
    if (it == left_index_.end()) return std::nullopt;
    return it->second;
  }
  std::optional<std::size_t> find_right(const std::string& label) const {
    auto it = right_index_.find(label);
    if (it == right_index_.end()) return std::nullopt;
    return it->second;
  }

  void add_edge(std::size_t l, std::size_t r) {
    if (l >= left_.size() || r >= right_.size()) throw std::out_of_range("add_edge: vertex out of range");
    adj_[l * stride_ + r / kWordBits] |= Word{1} << (r % kWordBits);
  }
  bool has_edge(std::size_t l, std::size_t r) const noexcept {
    return (adj_[l * stride_ + r / kWordBits] >> (r % kWordBits)) & 1;
  }
  std::span<const Word> row(std::size_t l) const noexcept { return {adj_.data() + l * stride_, stride_}; }

  std::size_t edge_count() const noexcept {
    std::size_t n = 0;
    for (Word w : adj_) n += std::popcount(w);
    return n;
  }

  /// Neighbors of left vertex l, in index order.
  std::vector<std::size_t> neighbors_of_left(std::size_t l) const {
    std::vector<std::size_t> out;
    auto r = row(l);
    for (std::size_t w = 0; w < r.size(); ++w)
      for (Word bits = r[w]; bits; bits &= bits - 1)
        out.push_back(w * kWordBits + static_cast<std::size_t>(std::countr_zero(bits)));
    return out;
  }

  /// The left-by-right 0/1 adjacency pattern.
  SupportPattern support() const {
    if (left_.empty() || right_.empty()) throw std::invalid_argument("support: graph has an empty part");
    SupportPattern s(left_.size(), right_.size());
    for (std::size_t l = 0; l < left_.size(); ++l)
      for (std::size_t r : neighbors_of_left(l)) s.mark(l, r);
    return s;
  }

  const std::optional<HypercubeOrigin>& origin() const noexcept { return origin_; }
  void set_origin(HypercubeOrigin o) { origin_ = std::move(o); }

 private:
  std::vector<std::string> left_;
  std::vector<std::string> right_;
  std::map<std::string, std::size_t> left_index_;
  std::map<std::string, std::size_t> right_index_;
  std::size_t stride_ = 0;
  std::vector<Word> adj_;
  std::optional<HypercubeOrigin> origin_;
};

/// Q_n restricted to `keep` (all of Q_n when `keep` is empty). Left part is
/// the kept even vertices, right part the kept odd vertices, both lexicographic.
inline BipartiteGraph hypercube_graph(unsigned n, std::vector<HypercubeVertex> keep = {}) {
  if (n == 0 || n > 20) throw std::invalid_argument("hypercube_graph: n must be in [1, 20]");
  if (keep.empty()) {
    for (std::uint32_t b = 0; b < (std::uint32_t{1} << n); ++b) keep.push_back({n, b});
  }
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  HypercubeOrigin origin{n, {}, {}};
  std::vector<std::string> left, right;
  for (const auto& v : keep) {
    if (v.n != n) throw std::invalid_argument("hypercube_graph: vertex '" + v.str() + "' has wrong length");
    if (parity(v) == Parity::even) {
      origin.left_bits.push_back(v.bits);
      left.push_back(v.str());
    } else {
      origin.right_bits.push_back(v.bits);
      right.push_back(v.str());
    }
  }
  BipartiteGraph g(std::move(left), std::move(right));
  std::map<std::uint32_t, std::size_t> right_pos;
  for (std::size_t j = 0; j < origin.right_bits.size(); ++j) right_pos[origin.right_bits[j]] = j;
  for (std::size_t i = 0; i < origin.left_bits.size(); ++i)
    for (unsigned k = 0; k < n; ++k) {
      auto it = right_pos.find(origin.left_bits[i] ^ (std::uint32_t{1} << k));
      if (it != right_pos.end()) g.add_edge(i, it->second);
    }
  g.set_origin(std::move(origin));
  return g;
}

/// An induced subgraph together with the host indices of its vertices.
struct InducedSubgraph {
  BipartiteGraph graph;
  VertexSet kept_left;
  VertexSet kept_right;
  std::vector<std::size_t> left_map;   // local left index -> host left index
  std::vector<std::size_t> right_map;  // local right index -> host right index
};

inline InducedSubgraph induced(const BipartiteGraph& host, const VertexSet& keep_left,
                               const VertexSet& keep_right) {
  if (keep_left.size() != host.left_size() || keep_right.size() != host.right_size())
    throw std::invalid_argument("induced: vertex set size does not match host");
  InducedSubgraph h{{}, keep_left, keep_right, {}, {}};
  std::vector<std::string> left, right;
  keep_left.for_each([&](std::size_t i) {
    h.left_map.push_back(i);
    left.push_back(host.left_label(i));
  });
  keep_right.for_each([&](std::size_t j) {
    h.right_map.push_back(j);
    right.push_back(host.right_label(j));
  });
  h.graph = BipartiteGraph(std::move(left), std::move(right));
  for (std::size_t a = 0; a < h.left_map.size(); ++a)
    for (std::size_t b = 0; b < h.right_map.size(); ++b)
      if (host.has_edge(h.left_map[a], h.right_map[b])) h.graph.add_edge(a, b);
  if (host.origin()) {
    HypercubeOrigin o{host.origin()->n, {}, {}};
    for (auto i : h.left_map) o.left_bits.push_back(host.origin()->left_bits[i]);
    for (auto j : h.right_map) o.right_bits.push_back(host.origin()->right_bits[j]);
    h.graph.set_origin(std::move(o));
  }
  return h;
}

/// Induced subgraph on vertices named by label; throws on an unknown label.
inline InducedSubgraph induced(const BipartiteGraph& host, const std::vector<std::string>& labels) {
  VertexSet l(host.left_size()), r(host.right_size());
  for (const auto& s : labels) {
    if (auto i = host.find_left(s))
      l.set(*i);
    else if (auto j = host.find_right(s))
      r.set(*j);
    else
      throw std::invalid_argument("induced: unknown vertex '" + s + "'");
  }
  return induced(host, l, r);
}

namespace detail {

// A graph with a subset of its vertices marked alive. Algorithms below work
// on views so inner loops never materialize subgraphs.
struct GraphView {
  const BipartiteGraph* g;
  VertexSet left_alive;
  VertexSet right_alive;

  explicit GraphView(const BipartiteGraph& graph)
      : g(&graph), left_alive(graph.left_size(), true), right_alive(graph.right_size(), true) {}
  GraphView(const BipartiteGraph& graph, VertexSet l, VertexSet r)
      : g(&graph), left_alive(std::move(l)), right_alive(std::move(r)) {}

  template <class F>
  void for_each_alive_neighbor(std::size_t l, F&& f) const {
    auto row = g->row(l);
    auto alive = right_alive.words();
    for (std::size_t w = 0; w < row.size(); ++w)
      for (Word bits = row[w] & alive[w]; bits; bits &= bits - 1)
        f(w * kWordBits + static_cast<std::size_t>(std::countr_zero(bits)));
  }
};

inline constexpr std::size_t kUnmatched = static_cast<std::size_t>(-1);

// Kuhn's augmenting paths, left vertices and neighbors in index order.
// Returns mate_of_left or nullopt when no perfect matching exists.
inline std::optional<std::vector<std::size_t>> perfect_matching(const GraphView& v) {
  const BipartiteGraph& g = *v.g;
  if (v.left_alive.count() != v.right_alive.count()) return std::nullopt;
  std::vector<std::size_t> mate_l(g.left_size(), kUnmatched), mate_r(g.right_size(), kUnmatched);
  std::vector<std::uint32_t> seen(g.right_size(), 0);
  std::uint32_t stamp = 0;

  // Iterative DFS for an augmenting path from `root`.
  struct Frame {
    std::size_t left;
    std::vector<std::size_t> nbrs;
    std::size_t next;
  };
  auto augment = [&](std::size_t root) {
    ++stamp;
    std::vector<Frame> stack;
    auto push = [&](std::size_t l) {
      Frame f{l, {}, 0};
      v.for_each_alive_neighbor(l, [&](std::size_t r) { f.nbrs.push_back(r); });
      stack.push_back(std::move(f));
    };
    std::vector<std::size_t> via;  // right vertex chosen at each stack depth
    push(root);
    while (!stack.empty()) {
      Frame& top = stack.back();
      if (top.next == top.nbrs.size()) {
        stack.pop_back();
        if (!via.empty()) via.pop_back();
        continue;
      }
      const std::size_t r = top.nbrs[top.next++];
      if (seen[r] == stamp) continue;
      seen[r] = stamp;
      if (mate_r[r] == kUnmatched) {
        // Flip the path: stack[d].left takes the right vertex chosen below it.
        via.push_back(r);
        for (std::size_t d = 0; d < stack.size(); ++d) {
          const std::size_t l = stack[d].left, rr = via[d];
          mate_l[l] = rr;
          mate_r[rr] = l;
        }
        return true;
      }
      via.push_back(r);
      push(mate_r[r]);
    }
    return false;
  };

  bool ok = true;
  v.left_alive.for_each([&](std::size_t l) {
    if (ok && !augment(l)) ok = false;
  });
  if (!ok) return std::nullopt;
  return mate_l;
}

inline Matching to_matching(const GraphView& v, const std::vector<std::size_t>& mate_l) {
  Matching m;
  v.left_alive.for_each([&](std::size_t l) {
    m.edges.push_back({static_cast<std::uint32_t>(l), static_cast<std::uint32_t>(mate_l[l])});
  });
  return m;
}

// Given a perfect matching, true iff there is no alternating cycle: the
// digraph l -> mate(r) over unmatched edges (l, r) is acyclic.
inline bool alternating_acyclic(const GraphView& v, const std::vector<std::size_t>& mate_l,
                                const std::vector<std::size_t>& mate_r) {
  const BipartiteGraph& g = *v.g;
  std::vector<std::uint8_t> color(g.left_size(), 0);  // 0 new, 1 on stack, 2 done
  struct Frame {
    std::size_t left;
    std::vector<std::size_t> succ;
    std::size_t next;
  };
  bool acyclic = true;
  v.left_alive.for_each([&](std::size_t root) {
    if (!acyclic || color[root]) return;
    std::vector<Frame> stack;
    auto push = [&](std::size_t l) {
      color[l] = 1;
      Frame f{l, {}, 0};
      v.for_each_alive_neighbor(l, [&](std::size_t r) {
        if (r != mate_l[l]) f.succ.push_back(mate_r[r]);
      });
      stack.push_back(std::move(f));
    };
    push(root);
    while (!stack.empty() && acyclic) {
      Frame& top = stack.back();
      if (top.next == top.succ.size()) {
        color[top.left] = 2;
        stack.pop_back();
        continue;
      }
      const std::size_t nxt = top.succ[top.next++];
      if (color[nxt] == 1) acyclic = false;
      else if (color[nxt] == 0) push(nxt);
    }
  });
  return acyclic;
}

struct UniqueResult {
  bool unique = false;
  std::optional<Matching> witness;
};

inline UniqueResult unique_pm(const GraphView& v) {
  auto mate_l = perfect_matching(v);
  if (!mate_l) return {};
  std::vector<std::size_t> mate_r(v.g->right_size(), kUnmatched);
  v.left_alive.for_each([&](std::size_t l) { mate_r[(*mate_l)[l]] = l; });
  if (!alternating_acyclic(v, *mate_l, mate_r)) return {};
  return {true, to_matching(v, *mate_l)};
}

// Backtracking over a minimum-degree unmatched vertex (either side).
class PmEnumerator {
 public:
  PmEnumerator(const GraphView& v, const std::function<void(const Matching&)>* cb)
      : v_(v), cb_(cb), left_free_(v.left_alive), right_free_(v.right_alive) {
    const BipartiteGraph& g = *v.g;
    right_adj_.assign(g.right_size(), VertexSet(g.left_size()));
    v.left_alive.for_each([&](std::size_t l) {
      v.for_each_alive_neighbor(l, [&](std::size_t r) { right_adj_[r].set(l); });
    });
  }

  std::uint64_t run() {
    if (left_free_.count() != right_free_.count()) return 0;
    recurse();
    return count_;
  }

 private:
  std::size_t left_degree(std::size_t l) const {
    std::size_t d = 0;
    auto row = v_.g->row(l);
    auto free = right_free_.words();
    for (std::size_t w = 0; w < row.size(); ++w) d += std::popcount(row[w] & free[w]);
    return d;
  }
  std::size_t right_degree(std::size_t r) const {
    std::size_t d = 0;
    auto adj = right_adj_[r].words();
    auto free = left_free_.words();
    for (std::size_t w = 0; w < adj.size(); ++w) d += std::popcount(adj[w] & free[w]);
    return d;
  }

  void recurse() {
    std::size_t best = kUnmatched, best_deg = kUnmatched;
    bool best_left = true;
    left_free_.for_each([&](std::size_t l) {
      const std::size_t d = left_degree(l);
      if (d < best_deg) best = l, best_deg = d, best_left = true;
    });
    if (best == kUnmatched) {
      ++count_;
      if (cb_ && *cb_) (*cb_)(Matching(current_));
      return;
    }
    if (best_deg == 0) return;
    right_free_.for_each([&](std::size_t r) {
      const std::size_t d = right_degree(r);
      if (d < best_deg) best = r, best_deg = d, best_left = false;
    });
    if (best_deg == 0) return;

    if (best_left) {
      const std::size_t l = best;
      std::vector<std::size_t> opts;
      auto row = v_.g->row(l);
      auto free = right_free_.words();
      for (std::size_t w = 0; w < row.size(); ++w)
        for (Word bits = row[w] & free[w]; bits; bits &= bits - 1)
          opts.push_back(w * kWordBits + static_cast<std::size_t>(std::countr_zero(bits)));
      for (std::size_t r : opts) branch(l, r);
    } else {
      const std::size_t r = best;
      std::vector<std::size_t> opts;
      auto adj = right_adj_[r].words();
      auto free = left_free_.words();
      for (std::size_t w = 0; w < adj.size(); ++w)
        for (Word bits = adj[w] & free[w]; bits; bits &= bits - 1)
          opts.push_back(w * kWordBits + static_cast<std::size_t>(std::countr_zero(bits)));
      for (std::size_t l : opts) branch(l, r);
    }
  }

  void branch(std::size_t l, std::size_t r) {
    left_free_.reset(l);
    right_free_.reset(r);
    current_.push_back({static_cast<std::uint32_t>(l), static_cast<std::uint32_t>(r)});
    recurse();
    current_.pop_back();
    left_free_.set(l);
    right_free_.set(r);
  }

  const GraphView& v_;
  const std::function<void(const Matching&)>* cb_;
  VertexSet left_free_;
  VertexSet right_free_;
  std::vector<VertexSet> right_adj_;
  std::vector<Edge> current_;
  std::uint64_t count_ = 0;
};

inline std::uint64_t permanent_count(const GraphView& v) {
  std::vector<std::size_t> rows, cols;
  v.left_alive.for_each([&](std::size_t l) { rows.push_back(l); });
  v.right_alive.for_each([&](std::size_t r) { cols.push_back(r); });
  if (rows.size() != cols.size()) return 0;
  const std::size_t n = rows.size();
  if (n > kPermanentMaxSide)
    throw CapExceeded("pm_count_by_permanent: part size " + std::to_string(n) + " exceeds " +
                      std::to_string(kPermanentMaxSide));
  if (n == 0) return 1;
  // column j as a bitmask over compact row indices
  std::vector<std::uint32_t> col_rows(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (v.g->has_edge(rows[i], cols[j])) col_rows[j] |= std::uint32_t{1} << i;

  // Ryser: perm = sum over column subsets S of (-1)^{n-|S|} prod_i rowsum_i(S),
  // visiting subsets in Gray-code order.
  std::vector<std::int64_t> rowsum(n, 0);
  __int128 total = 0;
  std::uint64_t gray = 0;
  for (std::uint64_t k = 1; k < (std::uint64_t{1} << n); ++k) {
    const auto j = static_cast<std::size_t>(std::countr_zero(k));
    gray ^= std::uint64_t{1} << j;
    const std::int64_t delta = (gray >> j) & 1 ? 1 : -1;
    for (std::uint32_t bits = col_rows[j]; bits; bits &= bits - 1) rowsum[std::countr_zero(bits)] += delta;
    __int128 prod = 1;
    for (std::size_t i = 0; i < n && prod != 0; ++i) prod *= rowsum[i];
    const bool negative = (n - static_cast<std::size_t>(std::popcount(gray))) & 1;
    total += negative ? -prod : prod;
  }
  return static_cast<std::uint64_t>(total);
}

}  // namespace detail

inline std::optional<Matching> find_pm(const BipartiteGraph& g) {
  detail::GraphView v(g);
  auto mate = detail::perfect_matching(v);
  if (!mate) return std::nullopt;
  return detail::to_matching(v, *mate);
}

/// Exact number of perfect matchings. The callback, if set, sees each one.
inline std::uint64_t enumerate_pms(const BipartiteGraph& g, std::size_t cap = kDefaultEnumerationCap,
                                   const std::function<void(const Matching&)>& cb = {}) {
  if (g.vertex_count() > cap)
    throw CapExceeded("enumerate_pms: " + std::to_string(g.vertex_count()) + " vertices exceeds cap " +
                      std::to_string(cap));
  detail::GraphView v(g);
  return detail::PmEnumerator(v, &cb).run();
}

struct UniquePmResult {
  bool unique = false;
  std::optional<Matching> witness;
};

/// Polynomial test: find one perfect matching, then look for an alternating cycle.
inline UniquePmResult has_unique_pm(const BipartiteGraph& g) {
  auto r = detail::unique_pm(detail::GraphView(g));
  return {r.unique, std::move(r.witness)};
}

/// Perfect matching count as the permanent of the 0/1 adjacency pattern.
inline std::uint64_t pm_count_by_permanent(const BipartiteGraph& g) {
  return detail::permanent_count(detail::GraphView(g));
}

inline bool is_matching(const BipartiteGraph& g, const Matching& m) {
  std::vector<bool> used_l(g.left_size()), used_r(g.right_size());
  for (const auto& e : m.edges) {
    if (e.left >= g.left_size() || e.right >= g.right_size()) return false;
    if (!g.has_edge(e.left, e.right) || used_l[e.left] || used_r[e.right]) return false;
    used_l[e.left] = used_r[e.right] = true;
  }
  return true;
}

inline bool is_perfect_matching(const BipartiteGraph& g, const Matching& m) {
  return g.left_size() == g.right_size() && m.size() == g.left_size() && is_matching(g, m);
}

// ---------------------------------------------------------------------------
// Text formats.
//
// Graph file:
//   graph <nleft> <nright>          followed by   edge <leftlabel> <rightlabel>
//   hypercube <n>                   followed by   keep <vertexstring>   (none: all of Q_n)
// Left labels are assigned in order of first appearance; vertices never named
// by an edge are labelled x<i> / y<j> (1-based).
//
// Matching file: one "<label> <label>" line per edge, in either orientation.

inline BipartiteGraph read_graph(std::istream& is) {
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(is, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    lines.push_back(line);
  }
  if (lines.empty()) throw std::invalid_argument("graph: empty input");
  std::istringstream head(lines.front());
  std::string kind;
  head >> kind;
  if (kind == "hypercube") {
    unsigned n = 0;
    if (!(head >> n) || n == 0 || n > 20) throw std::invalid_argument("graph: bad hypercube header");
    std::vector<HypercubeVertex> keep;
    for (std::size_t i = 1; i < lines.size(); ++i) {
      std::istringstream ls(lines[i]);
      std::string tag, v, extra;
      if (!(ls >> tag >> v) || tag != "keep" || (ls >> extra))
        throw std::invalid_argument("graph: expected 'keep <vertex>' but got '" + lines[i] + "'");
      auto hv = HypercubeVertex::parse(v);
      if (hv.n != n) throw std::invalid_argument("graph: vertex '" + v + "' has wrong length");
      keep.push_back(hv);
    }
    return hypercube_graph(n, std::move(keep));
  }
  if (kind != "graph") throw std::invalid_argument("graph: unknown header '" + lines.front() + "'");
  std::size_t nl = 0, nr = 0;
  if (!(head >> nl >> nr)) throw std::invalid_argument("graph: bad header '" + lines.front() + "'");
  std::vector<std::string> left, right;
  std::map<std::string, std::size_t> li, ri;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::istringstream ls(lines[i]);
    std::string tag, a, b, extra;
    if (!(ls >> tag >> a >> b) || tag != "edge" || (ls >> extra))
      throw std::invalid_argument("graph: expected 'edge <left> <right>' but got '" + lines[i] + "'");
    auto [ia, newa] = li.emplace(a, left.size());
    if (newa) left.push_back(a);
    auto [ib, newb] = ri.emplace(b, right.size());
    if (newb) right.push_back(b);
    edges.emplace_back(ia->second, ib->second);
  }
  if (left.size() > nl || right.size() > nr)
    throw std::invalid_argument("graph: more distinct vertices than declared in header");
  for (std::size_t i = left.size(); i < nl; ++i) left.push_back("x" + std::to_string(i + 1));
  for (std::size_t j = right.size(); j < nr; ++j) right.push_back("y" + std::to_string(j + 1));
  BipartiteGraph g(std::move(left), std::move(right));
  for (auto [a, b] : edges) g.add_edge(a, b);
  return g;
}

inline Matching read_matching(std::istream& is, const BipartiteGraph& g) {
  Matching m;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    std::string a, b, extra;
    if (!(ls >> a >> b) || (ls >> extra))
      throw std::invalid_argument("matching: line " + std::to_string(lineno) + " is not '<u> <v>'");
    auto la = g.find_left(a), rb = g.find_right(b);
    if (!la || !rb) {
      la = g.find_left(b);
      rb = g.find_right(a);
    }
    if (!la || !rb)
      throw std::invalid_argument("matching: line " + std::to_string(lineno) + " names no left/right pair");
    if (!g.has_edge(*la, *rb))
      throw std::invalid_argument("matching: " + a + " " + b + " is not an edge");
    m.edges.push_back({static_cast<std::uint32_t>(*la), static_cast<std::uint32_t>(*rb)});
  }
  std::sort(m.edges.begin(), m.edges.end());
  if (!is_matching(g, m)) throw std::invalid_argument("matching: edges are not vertex-disjoint");
  return m;
}

inline void write_matching(std::ostream& os, const BipartiteGraph& g, const Matching& m) {
  for (const auto& e : m.edges) os << g.left_label(e.left) << ' ' << g.right_label(e.right) << '\n';
}

}  // namespace hcforce
