#pragma once

// Entropy inequality chains: the path-count bound on log lambda, the
// 54 log(2n+2)/(2n+2) target, the genus-g lift, and Psi_{g,L} membership.
// Verdicts always compare the conservative interval sides.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pacert/numeric.hpp"
#include "pacert/spectral.hpp"
#include "pacert/twist_region.hpp"

namespace pacert {

/// 13 log(2 n N_k) / n: the bound on log lambda_0 from length-floor(n/13) paths.
inline Interval lemma5_bound(int n, std::int64_t n_k, mpfr_prec_t precision = kDefaultPrecision) {
  if (n < 13) throw std::domain_error("lemma5_bound needs n >= 13");
  if (n_k < 2) throw std::domain_error("lemma5_bound needs N_k >= 2");
  const Interval arg = Interval::point(BigInt(2) * n * n_k, precision);
  return Interval::point(13L, precision) * log(arg) / Interval::point(static_cast<long>(n), precision);
}

/// 54 log(2n+2) / (2n+2).
inline Interval theorem_bound(int n, mpfr_prec_t precision = kDefaultPrecision) {
  if (n < 1) throw std::domain_error("theorem_bound needs n >= 1");
  const Interval x = Interval::point(static_cast<long>(2 * n + 2), precision);
  return Interval::point(54L, precision) * log(x) / x;
}

/// L log(s) / s.
inline Interval psi_bound(const Rational& big_l, std::int64_t s, mpfr_prec_t precision = kDefaultPrecision) {
  const Interval x = Interval::point(static_cast<long>(s), precision);
  return Interval::point(big_l, precision) * log(x) / x;
}

enum class Verdict { pass, fail, inconclusive };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

struct MainInequalityResult {
  int n = 0;
  Verdict verdict = Verdict::inconclusive;
  std::optional<CertifiedRadius> radius;
  Rational log_lambda_hi;   ///< upper end of log(hi)
  Interval bound;           ///< 54 log(2n+2)/(2n+2)
  Rational margin;          ///< bound.lo - log_lambda_hi; >= 0 iff pass
  std::string note;
};

/// Passes iff log(certified hi) <= 54 log(2n+2)/(2n+2) on conservative sides.
inline MainInequalityResult verify_main_inequality(const TransitionMatrix& t, int n,
                                                   const Rational& tol = Rational(1, 1000000000),
                                                   const RadiusOptions& options = {}) {
  MainInequalityResult out;
  out.n = n;
  out.bound = theorem_bound(n, options.precision);
  try {
    out.radius = certified_radius(t, tol, options);
  } catch (const std::exception& e) {
    out.note = e.what();
    return out;
  }
  out.log_lambda_hi = log_upper(out.radius->hi, options.precision);
  out.margin = out.bound.lo_rational() - out.log_lambda_hi;
  out.verdict = out.margin >= 0 ? Verdict::pass : Verdict::fail;
  if (!out.radius->converged) out.note = "bracket did not reach tolerance";
  return out;
}

inline MainInequalityResult verify_main_inequality(const ComposedMatrix& tk, int n,
                                                   const Rational& tol = Rational(1, 1000000000),
                                                   const RadiusOptions& options = {}) {
  if (n != tk.n) throw std::invalid_argument("n does not match the composed matrix");
  return verify_main_inequality(tk.spliced, n, tol, options);
}

/// Least tested n after which every tested n passes; nullopt if the largest fails.
inline std::optional<int> empirical_threshold(const std::vector<std::pair<int, bool>>& results) {
  std::optional<int> threshold;
  std::vector<std::pair<int, bool>> sorted = results;
  std::sort(sorted.begin(), sorted.end());
  for (auto it = sorted.rbegin(); it != sorted.rend(); ++it) {
    if (!it->second) break;
    threshold = it->first;
  }
  return threshold;
}

struct ChainLink {
  std::string label;
  Interval value;
};

/// The recorded chain log lambda_0 <= 13 log(2nN_k)/n <= ... <= 54 log(2n+2)/(2n+2).
struct EntropyBudget {
  int n = 0;
  int k = 0;
  std::int64_t n_k = 0;
  std::uint64_t l = 0;
  std::vector<ChainLink> chain;
  /// Each link's upper end below the next link's lower end.
  std::vector<bool> link_holds;

  bool holds() const {
    for (bool b : link_holds) {
      if (!b) return false;
    }
    return true;
  }
};

inline EntropyBudget entropy_budget(int n, int k, std::int64_t e_k, const Interval& log_lambda,
                                    mpfr_prec_t precision = kDefaultPrecision) {
  EntropyBudget b;
  b.n = n;
  b.k = k;
  b.n_k = std::max<std::int64_t>(2, e_k);
  b.l = locality_length(n);
  const Interval two_n_two = Interval::point(static_cast<long>(2 * n + 2), precision);
  const Interval two = Interval::point(2L, precision);
  b.chain.push_back({"log lambda_0", log_lambda});
  b.chain.push_back({"log(2n N_k)/(n/13)", lemma5_bound(n, b.n_k, precision)});
  b.chain.push_back({"2 log(2n+2)/(2n/26)",
                     two * log(two_n_two) / (Interval::point(Rational(2 * n, 26), precision))});
  b.chain.push_back({"2 log(2n+2)/((2n+2)/27)",
                     two * log(two_n_two) / (two_n_two / Interval::point(27L, precision))});
  b.chain.push_back({"54 log(2n+2)/(2n+2)", theorem_bound(n, precision)});
  for (std::size_t i = 0; i + 1 < b.chain.size(); ++i) {
    // first link is non-strict, the displayed middle links are strict, last is an identity
    const Interval& a = b.chain[i].value;
    const Interval& c = b.chain[i + 1].value;
    if (i == 0) {
      b.link_holds.push_back(a.certainly_less_equal(c));
    } else if (i + 2 == b.chain.size()) {
      b.link_holds.push_back(!a.certainly_less(c) && !c.certainly_less(a));
    } else {
      b.link_holds.push_back(a.certainly_less(c));
    }
  }
  return b;
}

/// Lifted-surface parameters and the strict chain
/// 54 log(n+m+2)/(n+m+2) < 54 log s / ((s-1)/(2g+1) + 1) < 162 g log s / s.
struct LiftParameters {
  int g = 0;
  int n = 0;
  int m = 0;
  std::int64_t s = 0;
  Rational big_l;  ///< declared L = 162 g
  Interval lhs;
  Interval middle;
  Interval rhs;
  bool first_strict = false;
  bool second_strict = false;

  bool holds() const { return first_strict && second_strict; }
};

inline std::int64_t lifted_puncture_count(int g, int n, int m) {
  return static_cast<std::int64_t>(2 * g + 1) * (n + m + 1) + 1;
}

inline LiftParameters lift_bound(int g, int n, int m, mpfr_prec_t precision = kDefaultPrecision) {
  if (g < 2) throw std::domain_error("lift_bound needs g >= 2");
  if (n != m) throw std::domain_error("lift_bound needs n = m");
  LiftParameters p;
  p.g = g;
  p.n = n;
  p.m = m;
  p.s = lifted_puncture_count(g, n, m);
  p.big_l = Rational(162 * g);
  const Interval fifty_four = Interval::point(54L, precision);
  const Interval s = Interval::point(static_cast<long>(p.s), precision);
  const Interval nm2 = Interval::point(static_cast<long>(n + m + 2), precision);
  p.lhs = fifty_four * log(nm2) / nm2;
  const Interval denom = Interval::point(Rational(p.s - 1, 2 * g + 1) + 1, precision);
  p.middle = fifty_four * log(s) / denom;
  p.rhs = Interval::point(static_cast<long>(162 * g), precision) * log(s) / s;
  p.first_strict = p.lhs.certainly_less(p.middle);
  p.second_strict = p.middle.certainly_less(p.rhs);
  return p;
}

/// log lambda <= L log(s)/s, decided on the certified upper end of log lambda.
inline bool psi_membership(int g, const Rational& big_l, std::int64_t s, const Interval& log_lambda,
                           mpfr_prec_t precision = kDefaultPrecision) {
  if (g < 0) throw std::domain_error("genus must be non-negative");
  if (s < 3) throw std::domain_error("psi_membership needs s >= 3");
  if (big_l == 0) return log_lambda.hi_rational() <= 0;
  return log_lambda.certainly_less_equal(psi_bound(big_l, s, precision));
}

}  // namespace pacert
