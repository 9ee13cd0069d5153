#pragma once

// Explicit rank certificates for the hypercube support pattern.
//
// A_1 = [1], and over GF(3)
//   A_{k+1}      = [[2A_k, I], [I, A_k^-1]]
//   A_{k+1}^-1   = [[A_k^-1, 2I], [2I, 2A_k]]
//   B_n          = [[A_{n-1}, I], [I, A_{n-1}^-1]]
// Every one of these is a nonzero assignment of the support of W_n, and
// rank(B_n) = 2^{n-2}. Over GF(2) the all-ones assignment has rank 2^{n-2}
// for even n and is an involution for odd n.

#include <chrono>
#include <cstddef>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "hcforce/gf_matrix.hpp"
#include "hcforce/hypercube.hpp"

namespace hcforce {

struct APair {
  GFMatrix a;
  GFMatrix a_inv;
};

/// A_n and its inverse, built jointly from the block recursion (no elimination).
inline APair build_A(unsigned n) {
  if (n == 0 || n > kMaxDimension) throw std::invalid_argument("build_A: n must be >= 1");
  APair cur{identity(1, Field::gf3), identity(1, Field::gf3)};
  for (unsigned k = 1; k < n; ++k) {
    const std::size_t half = cur.a.rows();
    const GFMatrix eye = identity(half, Field::gf3);
    const GFMatrix two_eye = scalar_mul(2, eye);
    const GFMatrix two_a = scalar_mul(2, cur.a);
    GFMatrix next_a = block2x2(two_a, eye, eye, cur.a_inv);
    GFMatrix next_inv = block2x2(cur.a_inv, two_eye, two_eye, two_a);
    cur = APair{std::move(next_a), std::move(next_inv)};
  }
  return cur;
}

inline GFMatrix build_B(unsigned n) {
  if (n < 2 || n > kMaxDimension) throw std::invalid_argument("build_B: n must be >= 2");
  const APair prev = build_A(n - 1);
  const GFMatrix eye = identity(prev.a.rows(), Field::gf3);
  return block2x2(prev.a, eye, eye, prev.a_inv);
}

/// The support of W_n read as a GF(2) matrix (every w replaced by 1).
inline GFMatrix build_ones(unsigned n) { return support_matrix(n).mask(); }

struct CertificateCheck {
  std::string name;
  bool passed = false;
  long long millis = 0;
};

struct CertificateReport {
  unsigned n = 0;
  std::vector<CertificateCheck> checks;

  bool all_passed() const noexcept {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return !checks.empty();
  }
};

// One line per check: "check <name> <pass|fail> <millis>".
inline void write_report(std::ostream& os, const CertificateReport& r) {
  for (const auto& c : r.checks)
    os << "check " << c.name << ' ' << (c.passed ? "pass" : "fail") << ' ' << c.millis << '\n';
}

/// Runs the four certificate checks for dimension n >= 2:
///   inverse    A_{n-1} * A_{n-1}^-1 == I
///   a-support  A_{n-1} and A_{n-1}^-1 are nonzero assignments of W_{n-1}
///   b-support  B_n is a nonzero assignment of W_n
///   b-rank     rank(B_n) == 2^{n-2} over GF(3)
/// Construction time is charged to the first check that needs each matrix.
inline CertificateReport verify_certificate(unsigned n) {
  if (n < 2 || n > kMaxDimension) throw std::invalid_argument("verify_certificate: n must be >= 2");
  using Clock = std::chrono::steady_clock;
  auto millis_since = [](Clock::time_point t0) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
  };
  CertificateReport report{n, {}};

  auto t0 = Clock::now();
  const APair pair = build_A(n - 1);
  const bool inv_ok =
      mat_mul(pair.a, pair.a_inv) == identity(pair.a.rows(), Field::gf3);
  report.checks.push_back({"inverse", inv_ok, millis_since(t0)});

  t0 = Clock::now();
  const SupportPattern prev_support = support_matrix(n - 1);
  const bool a_ok = assign(prev_support, pair.a).ok && assign(prev_support, pair.a_inv).ok;
  report.checks.push_back({"a-support", a_ok, millis_since(t0)});

  t0 = Clock::now();
  const GFMatrix eye = identity(pair.a.rows(), Field::gf3);
  const GFMatrix b = block2x2(pair.a, eye, eye, pair.a_inv);
  const bool b_ok = assign(support_matrix(n), b).ok;
  report.checks.push_back({"b-support", b_ok, millis_since(t0)});

  t0 = Clock::now();
  const bool rank_ok = rank(b) == (std::size_t{1} << (n - 2));
  report.checks.push_back({"b-rank", rank_ok, millis_since(t0)});
  return report;
}

}  // namespace hcforce
