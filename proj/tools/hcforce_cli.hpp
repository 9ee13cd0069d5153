#pragma once

// Command-line front end. Kept in a header so tests can drive it in-process.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or input error,
// 3 size cap exceeded.

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hcforce/certificate.hpp"
#include "hcforce/forcing.hpp"
#include "hcforce/gf_matrix.hpp"
#include "hcforce/hypercube.hpp"
#include "hcforce/matching.hpp"

namespace hcforce::cli {

enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kUsage = 2, kCapExceeded = 3 };

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline std::ifstream open_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  return in;
}

inline Field parse_field(const std::string& s) {
  if (s == "gf2") return Field::gf2;
  if (s == "gf3") return Field::gf3;
  throw UsageError("--field must be gf2 or gf3");
}

inline GFMatrix construct(unsigned n, const std::string& kind, const std::optional<std::string>& field) {
  if (n == 0 || n > 20) throw UsageError("--n must be in [1, 20]");
  const bool gf3_kind = kind == "A" || kind == "Ainv" || kind == "B";
  if (gf3_kind && field && *field != "gf3") throw UsageError("kind " + kind + " is defined over gf3 only");
  if (kind == "A") return build_A(n).a;
  if (kind == "Ainv") return build_A(n).a_inv;
  if (kind == "B") {
    if (n < 2) throw UsageError("kind B requires --n >= 2");
    return build_B(n);
  }
  if (kind == "ones" || kind == "support") {
    GFMatrix ones = build_ones(n);
    if (!field || parse_field(*field) == Field::gf2) return ones;
    GFMatrix out(Field::gf3, ones.rows(), ones.cols());
    for (std::size_t r = 0; r < ones.rows(); ++r)
      for (std::size_t c = 0; c < ones.cols(); ++c)
        if (ones.is_nonzero(r, c)) out.set(r, c, 1);
    return out;
  }
  throw UsageError("--kind must be one of A, Ainv, B, ones, support");
}

struct GraphSource {
  std::optional<unsigned> hypercube;
  std::optional<std::string> graph_file;

  BipartiteGraph load() const {
    if (hypercube && graph_file) throw UsageError("give either --hypercube or --graph, not both");
    if (hypercube) {
      if (*hypercube == 0 || *hypercube > 20) throw UsageError("--hypercube must be in [1, 20]");
      return hypercube_graph(*hypercube);
    }
    if (graph_file) {
      auto in = open_file(*graph_file);
      return read_graph(in);
    }
    throw UsageError("one of --hypercube or --graph is required");
  }
};

inline void add_graph_options(CLI::App* cmd, GraphSource& src) {
  cmd->add_option("--hypercube", src.hypercube, "Use the hypercube Q_n");
  cmd->add_option("--graph", src.graph_file, "Graph file (graph/edge or hypercube/keep format)");
}

// Bound seed for forcing searches: the restricted rank certificate for
// hypercube-derived graphs, zero otherwise.
inline std::pair<std::size_t, BoundSource> seed_bound(const BipartiteGraph& g) {
  if (auto b = hypercube_rank_bound(g)) return {*b, BoundSource::rank_certificate};
  return {0, BoundSource::none};
}

}  // namespace detail

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Forcing numbers of hypercube perfect matchings"};
  app.require_subcommand(1);

  unsigned n = 0;
  std::string kind;
  std::optional<std::string> field;
  std::optional<std::string> matrix_file;
  std::optional<std::string> matching_file;
  std::optional<std::size_t> cap;
  std::optional<unsigned> max_n;
  unsigned jobs = 1;
  bool bounded = false;
  std::string method = "enumerate";
  detail::GraphSource src;

  auto* construct = app.add_subcommand("construct", "Print a certificate or support matrix");
  construct->add_option("--n", n, "Dimension")->required();
  construct->add_option("--kind", kind, "A, Ainv, B, ones or support")->required();
  construct->add_option("--field", field, "gf2 or gf3 (support/ones only)");

  auto* verify = app.add_subcommand("verify", "Run the four certificate checks for Q_n");
  verify->add_option("--n", n, "Dimension (>= 2)")->required();

  auto* rank_cmd = app.add_subcommand("rank", "Rank of a constructed or stored matrix");
  rank_cmd->add_option("--n", n, "Dimension");
  rank_cmd->add_option("--kind", kind, "A, Ainv, B, ones or support");
  rank_cmd->add_option("--field", field, "gf2 or gf3 (support/ones only)");
  rank_cmd->add_option("--matrix", matrix_file, "Matrix file in gfp text format");

  auto* forcing = app.add_subcommand("forcing", "Forcing number of one perfect matching");
  detail::add_graph_options(forcing, src);
  forcing->add_option("--matching", matching_file, "Matching file")->required();
  forcing->add_option("--cap", cap, "Largest matching searched (default 16 edges)");

  auto* spectrum = app.add_subcommand("spectrum", "Set of forcing numbers over all perfect matchings");
  detail::add_graph_options(spectrum, src);
  spectrum->add_option("--jobs", jobs, "Worker threads");
  spectrum->add_option("--cap", cap, "Enumeration vertex cap (default 40)");
  spectrum->add_option("--max-n", max_n, "Largest hypercube dimension accepted (default 4)");

  auto* maxunique = app.add_subcommand("maxunique", "Largest induced subgraph with a unique perfect matching");
  maxunique->add_option("--hypercube", src.hypercube, "Dimension")->required();
  maxunique->add_flag("--bounded", bounded, "Report the rank-certified ceiling instead of sweeping");

  auto* bound = app.add_subcommand("bound", "Rank lower bound on every forcing number");
  detail::add_graph_options(bound, src);

  auto* count = app.add_subcommand("count-pms", "Number of perfect matchings");
  detail::add_graph_options(count, src);
  count->add_option("--cap", cap, "Enumeration vertex cap (default 40)");
  count->add_option("--method", method, "enumerate or permanent")
      ->check(CLI::IsMember({"enumerate", "permanent"}));

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*construct) {
      write_matrix(out, detail::construct(n, kind, field));
      return kOk;
    }
    if (*verify) {
      if (n < 2 || n > 20) throw UsageError("--n must be in [2, 20]");
      const CertificateReport report = verify_certificate(n);
      write_report(out, report);
      return report.all_passed() ? kOk : kVerifyFailed;
    }
    if (*rank_cmd) {
      if (matrix_file) {
        if (n != 0 || !kind.empty()) throw UsageError("give either --matrix or --n/--kind");
        auto in = detail::open_file(*matrix_file);
        out << rank(read_matrix(in)) << '\n';
      } else {
        if (kind.empty()) throw UsageError("rank needs --matrix or --n with --kind");
        out << rank(detail::construct(n, kind, field)) << '\n';
      }
      return kOk;
    }
    if (*forcing) {
      const BipartiteGraph g = src.load();
      auto in = detail::open_file(*matching_file);
      const Matching m = read_matching(in, g);
      if (!is_perfect_matching(g, m)) throw UsageError("matching is not a perfect matching of the graph");
      const auto [lower, source] = detail::seed_bound(g);
      write_forcing_report(out, g, forcing_number(g, m, lower, source, cap.value_or(kDefaultForcingCap)));
      return kOk;
    }
    if (*spectrum) {
      const unsigned limit = max_n.value_or(kExhaustiveMaxDimension);
      if (src.hypercube && *src.hypercube > limit)
        throw CapExceeded("spectrum: --hypercube " + std::to_string(*src.hypercube) +
                          " exceeds the dimension cap " + std::to_string(limit));
      const BipartiteGraph g = src.load();
      const auto [lower, source] = detail::seed_bound(g);
      const auto values =
          forcing_spectrum(g, lower, source, jobs, cap.value_or(kDefaultEnumerationCap), kDefaultForcingCap);
      bool first = true;
      for (auto v : values) {
        out << (first ? "" : " ") << v;
        first = false;
      }
      out << '\n';
      return kOk;
    }
    if (*maxunique) {
      const auto res = max_unique_pm_order(*src.hypercube, bounded ? SweepMode::bounded : SweepMode::exhaustive);
      out << res.order << '\n';
      if (res.exhaustive) {
        for (std::size_t i = 0; i < res.witness.size(); ++i) out << (i ? " " : "") << res.witness[i].str();
        out << '\n';
      } else {
        out << "bound certified, attainment unverified\n";
      }
      return kOk;
    }
    if (*bound) {
      if (src.hypercube && !src.graph_file) {
        if (*src.hypercube < 2 || *src.hypercube > 20) throw UsageError("--hypercube must be in [2, 20]");
        const GFMatrix b = build_B(*src.hypercube);
        out << b.rows() - rank(b) << '\n';
        return kOk;
      }
      const BipartiteGraph g = src.load();
      const auto b = hypercube_rank_bound(g);
      if (!b) throw UsageError("bound needs a balanced hypercube-derived graph with n >= 2");
      out << *b << '\n';
      return kOk;
    }
    if (*count) {
      const BipartiteGraph g = src.load();
      if (method == "permanent")
        out << pm_count_by_permanent(g) << '\n';
      else
        out << enumerate_pms(g, cap.value_or(kDefaultEnumerationCap)) << '\n';
      return kOk;
    }
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << " (raise the limit with --cap / --max-n, or use --bounded)\n";
    return kCapExceeded;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace hcforce::cli
