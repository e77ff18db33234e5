#pragma once

// Certified Perron-Frobenius analysis on non-negative integer matrices:
// exact path counts, spectral-radius brackets, and the path-count bound
// lambda^l <= max_i N(V_i, l).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pacert/numeric.hpp"
#include "pacert/spine_model.hpp"
#include "pacert/twist_region.hpp"

namespace pacert {

class ReducibleMatrixError : public std::domain_error {
 public:
  explicit ReducibleMatrixError(const std::string& what) : std::domain_error(what) {}
};

/// Irreducible = strongly connected directed graph (a 1x1 matrix needs a loop).
inline bool is_irreducible(const TransitionMatrix& t) {
  if (t.dim() == 0) return false;
  if (t.dim() == 1) return t.entry(0, 0) > 0;
  return directed_graph(t).strongly_connected();
}

/// Dense exact integer matrix.
class BigMatrix {
 public:
  explicit BigMatrix(std::size_t dim) : dim_(dim), data_(dim * dim, BigInt(0)) {}
  explicit BigMatrix(const TransitionMatrix& t) : BigMatrix(t.dim()) {
    for (std::size_t r = 0; r < dim_; ++r) {
      for (const auto& e : t.row(r)) at(r, e.col) = e.count;
    }
  }
  static BigMatrix identity(std::size_t dim) {
    BigMatrix out(dim);
    for (std::size_t i = 0; i < dim; ++i) out.at(i, i) = 1;
    return out;
  }

  std::size_t dim() const { return dim_; }
  BigInt& at(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }
  const BigInt& at(std::size_t r, std::size_t c) const { return data_[r * dim_ + c]; }

  friend BigMatrix operator*(const BigMatrix& a, const BigMatrix& b) {
    BigMatrix out(a.dim_);
    for (std::size_t i = 0; i < a.dim_; ++i) {
      for (std::size_t k = 0; k < a.dim_; ++k) {
        const BigInt& aik = a.at(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < a.dim_; ++j) {
          const BigInt& bkj = b.at(k, j);
          if (bkj != 0) out.at(i, j) += aik * bkj;
        }
      }
    }
    return out;
  }

  /// this * T with T sparse.
  BigMatrix times(const TransitionMatrix& t) const {
    BigMatrix out(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
      for (std::size_t k = 0; k < dim_; ++k) {
        const BigInt& aik = at(i, k);
        if (aik == 0) continue;
        for (const auto& e : t.row(k)) out.at(i, e.col) += aik * e.count;
      }
    }
    return out;
  }

  std::vector<BigInt> row_sums() const {
    std::vector<BigInt> out(dim_, BigInt(0));
    for (std::size_t i = 0; i < dim_; ++i) {
      for (std::size_t j = 0; j < dim_; ++j) out[i] += at(i, j);
    }
    return out;
  }

  BigInt trace() const {
    BigInt s = 0;
    for (std::size_t i = 0; i < dim_; ++i) s += at(i, i);
    return s;
  }

 private:
  std::size_t dim_;
  std::vector<BigInt> data_;
};

/// T^l by repeated squaring.
inline BigMatrix matrix_power(const TransitionMatrix& t, std::uint64_t l) {
  BigMatrix result = BigMatrix::identity(t.dim());
  BigMatrix base(t);
  bool first = true;
  while (l > 0) {
    if (l & 1U) {
      result = first ? base : result * base;
      first = false;
    }
    l >>= 1U;
    if (l > 0) base = base * base;
  }
  return result;
}

/// x -> T x on exact vectors.
inline std::vector<BigInt> apply(const TransitionMatrix& t, const std::vector<BigInt>& x) {
  std::vector<BigInt> out(t.dim(), BigInt(0));
  for (std::size_t r = 0; r < t.dim(); ++r) {
    for (const auto& e : t.row(r)) out[r] += x[e.col] * e.count;
  }
  return out;
}

/// N(V_i, l) for every vertex: the row sums of T^l.
struct PathCountTable {
  std::uint64_t l = 0;
  std::vector<std::string> labels;
  std::vector<BigInt> counts;

  /// Lexicographically least label attaining the maximum.
  std::size_t max_vertex() const {
    std::size_t best = 0;
    for (std::size_t i = 1; i < counts.size(); ++i) {
      if (counts[i] > counts[best] || (counts[i] == counts[best] && labels[i] < labels[best])) best = i;
    }
    return best;
  }
  const BigInt& max_count() const { return counts.at(max_vertex()); }
};

/// Exact row sums of T^l. Uses repeated squaring when that is cheaper than
/// l sparse products.
inline PathCountTable path_counts(const TransitionMatrix& t, std::uint64_t l) {
  if (l < 1) throw std::domain_error("path length must be >= 1");
  PathCountTable table;
  table.l = l;
  table.labels = t.labels();
  const double d = static_cast<double>(t.dim());
  const double squaring_cost = d * d * d * std::log2(static_cast<double>(l) + 1.0);
  const double iteration_cost = static_cast<double>(l) * static_cast<double>(std::max<std::size_t>(t.nonzeros(), 1)) * d;
  if (squaring_cost < iteration_cost) {
    table.counts = matrix_power(t, l).row_sums();
  } else {
    std::vector<BigInt> x(t.dim(), BigInt(1));
    for (std::uint64_t s = 0; s < l; ++s) x = pacert::apply(t, x);
    table.counts = std::move(x);
  }
  return table;
}

/// (max_i N(V_i, l))^{1/l}, rounded up.
inline Rational pf_upper_bound(const TransitionMatrix& t, std::uint64_t l,
                               mpfr_prec_t precision = kDefaultPrecision) {
  const PathCountTable table = path_counts(t, l);
  return root(Interval::point(table.max_count(), precision), static_cast<unsigned long>(l)).hi_rational();
}

struct Bracket {
  Rational lo;
  Rational hi;
  std::uint64_t l = 0;

  Rational width() const { return hi - lo; }
  bool contains(const Bracket& inner) const { return lo <= inner.lo && inner.hi <= hi; }
};

/// lo <= lambda(T) <= hi.
struct CertifiedRadius {
  Rational lo;
  Rational hi;
  std::uint64_t l_used = 0;
  bool converged = false;
  std::vector<Bracket> history;           ///< combined bracket per doubling, nested
  std::vector<Bracket> row_sum_history;   ///< [min rowsum(T^l)^{1/l}, max rowsum(T^l)^{1/l}]

  Rational width() const { return hi - lo; }
  Interval as_interval(mpfr_prec_t precision = kDefaultPrecision) const {
    return Interval::hull(lo, hi, precision);
  }
};

struct RadiusOptions {
  unsigned max_doublings = 20;             ///< l <= 2^max_doublings
  double dense_work_budget = 2.0e7;        ///< interval multiply-adds spent on T^l squaring
  mpfr_prec_t precision = kDefaultPrecision;
};

namespace detail {

/// Outward-rounded enclosure of T^l, stored densely.
class IntervalPower {
 public:
  IntervalPower(const TransitionMatrix& t, mpfr_prec_t precision)
      : dim_(t.dim()), lo_(dim_ * dim_, Real(precision)), hi_(dim_ * dim_, Real(precision)) {
    for (std::size_t r = 0; r < dim_; ++r) {
      for (const auto& e : t.row(r)) {
        mpfr_set_si(lo_[r * dim_ + e.col].get(), e.count, MPFR_RNDD);
        mpfr_set_si(hi_[r * dim_ + e.col].get(), e.count, MPFR_RNDU);
      }
    }
  }

  void square() {
    lo_ = product(lo_, MPFR_RNDD);
    hi_ = product(hi_, MPFR_RNDU);
  }

  /// [min_i rowsum_i^{1/l}, max_i rowsum_i^{1/l}] with outward rounding.
  Bracket row_sum_bracket(std::uint64_t l) const {
    const mpfr_prec_t p = lo_.front().precision();
    Real min_lo(p), max_hi(p), s(p);
    for (std::size_t i = 0; i < dim_; ++i) {
      mpfr_set_zero(s.get(), 1);
      for (std::size_t j = 0; j < dim_; ++j) mpfr_add(s.get(), s.get(), lo_[i * dim_ + j].get(), MPFR_RNDD);
      if (i == 0 || mpfr_less_p(s.get(), min_lo.get())) mpfr_set(min_lo.get(), s.get(), MPFR_RNDD);
      mpfr_set_zero(s.get(), 1);
      for (std::size_t j = 0; j < dim_; ++j) mpfr_add(s.get(), s.get(), hi_[i * dim_ + j].get(), MPFR_RNDU);
      if (i == 0 || mpfr_greater_p(s.get(), max_hi.get())) mpfr_set(max_hi.get(), s.get(), MPFR_RNDU);
    }
    mpfr_rootn_ui(min_lo.get(), min_lo.get(), static_cast<unsigned long>(l), MPFR_RNDD);
    mpfr_rootn_ui(max_hi.get(), max_hi.get(), static_cast<unsigned long>(l), MPFR_RNDU);
    return {min_lo.to_rational(), max_hi.to_rational(), l};
  }

  double squaring_cost() const { return 2.0 * static_cast<double>(dim_) * dim_ * dim_; }

 private:
  std::vector<Real> product(const std::vector<Real>& a, mpfr_rnd_t rnd) const {
    std::vector<Real> out(dim_ * dim_, Real(a.front().precision()));
    for (std::size_t i = 0; i < dim_; ++i) {
      for (std::size_t k = 0; k < dim_; ++k) {
        const Real& aik = a[i * dim_ + k];
        if (mpfr_zero_p(aik.get())) continue;
        for (std::size_t j = 0; j < dim_; ++j) {
          const Real& akj = a[k * dim_ + j];
          if (mpfr_zero_p(akj.get())) continue;
          Real& cell = out[i * dim_ + j];
          mpfr_fma(cell.get(), aik.get(), akj.get(), cell.get(), rnd);
        }
      }
    }
    return out;
  }

  std::size_t dim_;
  std::vector<Real> lo_;
  std::vector<Real> hi_;
};

/// Power iteration on T + I; any positive vector gives a valid
/// Collatz-Wielandt bracket, so this iterate never needs certification.
class ShiftedPowerIterate {
 public:
  explicit ShiftedPowerIterate(const TransitionMatrix& t) : t_(t), y_(t.dim(), 1.0L), scratch_(t.dim()) {}

  void advance_to(std::uint64_t steps) {
    while (done_ < steps) {
      long double mx = 0;
      for (std::size_t r = 0; r < t_.dim(); ++r) {
        long double s = y_[r];
        for (const auto& e : t_.row(r)) s += static_cast<long double>(e.count) * y_[e.col];
        scratch_[r] = s;
        mx = std::max(mx, s);
      }
      for (std::size_t r = 0; r < t_.dim(); ++r) y_[r] = scratch_[r] / mx;
      ++done_;
    }
  }

  /// Exact [min_i (Ty)_i / y_i, max_i (Ty)_i / y_i] for the current iterate,
  /// converted to integers exactly (common power-of-two scale).
  Bracket collatz_wielandt(std::uint64_t l) const {
    const std::size_t d = t_.dim();
    std::vector<BigInt> mantissa(d);
    std::vector<int> exponent(d);
    std::optional<int> e_min;
    for (std::size_t i = 0; i < d; ++i) {
      if (y_[i] <= 0) continue;
      int e = 0;
      const long double frac = std::frexp(y_[i], &e);  // y = frac * 2^e, frac in [1/2, 1)
      mantissa[i] = BigInt(static_cast<unsigned long long>(std::ldexp(frac, 64)));
      exponent[i] = e;
      if (!e_min || e < *e_min) e_min = e;
    }
    std::vector<BigInt> y(d);
    for (std::size_t i = 0; i < d; ++i) {
      if (y_[i] > 0) y[i] = mantissa[i] << static_cast<unsigned>(exponent[i] - *e_min);
      if (y[i] == 0) y[i] = 1;
    }
    const std::vector<BigInt> ty = pacert::apply(t_, y);
    Bracket b;
    b.l = l;
    for (std::size_t i = 0; i < d; ++i) {
      const Rational ratio(ty[i], y[i]);
      if (i == 0 || ratio < b.lo) b.lo = ratio;
      if (i == 0 || ratio > b.hi) b.hi = ratio;
    }
    return b;
  }

 private:
  const TransitionMatrix& t_;
  std::vector<long double> y_;
  std::vector<long double> scratch_;
  std::uint64_t done_ = 0;
};

}  // namespace detail

/// Two-sided certified bracket of the Perron root. Each doubling of l
/// intersects the row-sum bracket of T^l (outward-rounded squaring, while the
/// dense work budget lasts) with the exact Collatz-Wielandt bracket of the
/// l-th shifted power iterate. Brackets are nested by construction.
inline CertifiedRadius certified_radius(const TransitionMatrix& t, const Rational& tol,
                                        const RadiusOptions& options = {}) {
  if (!is_irreducible(t)) {
    throw ReducibleMatrixError("certified_radius needs an irreducible matrix; use pf_upper_bound or analyse each strongly connected component");
  }
  const std::size_t d = t.dim();
  CertifiedRadius out;

  // l = 1: exact row sums.
  Bracket rows{Rational(t.row_sum(0)), Rational(t.row_sum(0)), 1};
  for (std::size_t i = 1; i < d; ++i) {
    const Rational s(t.row_sum(i));
    rows.lo = std::min(rows.lo, s);
    rows.hi = std::max(rows.hi, s);
  }
  out.row_sum_history.push_back(rows);

  detail::ShiftedPowerIterate iterate(t);
  Bracket current = rows;
  {
    const Bracket cw = iterate.collatz_wielandt(0);
    current.lo = std::max(current.lo, cw.lo);
    current.hi = std::min(current.hi, cw.hi);
  }
  out.history.push_back(current);

  std::optional<detail::IntervalPower> power;
  double work = 0;
  if (d > 0 && 2.0 * static_cast<double>(d) * d * d <= options.dense_work_budget) {
    power.emplace(t, options.precision);
  }

  std::uint64_t l = 1;
  for (unsigned a = 1; a <= options.max_doublings && current.width() > tol; ++a) {
    l <<= 1U;
    Bracket next = current;
    next.l = l;
    if (power && work + power->squaring_cost() <= options.dense_work_budget) {
      power->square();
      work += power->squaring_cost();
      const Bracket rs = power->row_sum_bracket(l);
      out.row_sum_history.push_back(rs);
      next.lo = std::max(next.lo, rs.lo);
      next.hi = std::min(next.hi, rs.hi);
    } else {
      power.reset();
    }
    iterate.advance_to(l);
    const Bracket cw = iterate.collatz_wielandt(l);
    next.lo = std::max(next.lo, cw.lo);
    next.hi = std::min(next.hi, cw.hi);
    current = next;
    out.history.push_back(current);
  }

  out.lo = current.lo;
  out.hi = current.hi;
  out.l_used = current.l;
  out.converged = current.width() <= tol;
  return out;
}

/// rho(A) = 1 for the permutation block; the Perron block dominates iff its
/// certified lower bound exceeds 1.
inline bool perron_block_dominates(const BlockDecomposition& blocks) {
  if (!blocks.permutation_is_bijective()) return false;
  const CertifiedRadius r = certified_radius(blocks.perron_block, Rational(1, 1000000));
  return r.lo > 1;
}

struct PfCheck {
  std::uint64_t l = 0;
  std::string max_vertex;
  BigInt max_count;
  Rational bound;             ///< (max N)^{1/l} rounded up
  bool lo_below_bound = false;     ///< certified lo <= bound
  bool lo_power_below_count = false;  ///< lo^l <= max N, exactly
};

struct PfReport {
  CertifiedRadius radius;
  std::vector<PfCheck> checks;
  std::uint64_t tightest_l = 0;
  bool passed = true;
};

inline PfReport verify_pf_proposition(const TransitionMatrix& t, std::uint64_t l_max,
                                      const Rational& tol = Rational(1, 1000000000)) {
  PfReport report;
  report.radius = certified_radius(t, tol);
  std::vector<BigInt> x(t.dim(), BigInt(1));
  std::optional<Rational> tightest;
  for (std::uint64_t l = 1; l <= l_max; ++l) {
    x = pacert::apply(t, x);
    PathCountTable table{l, t.labels(), x};
    PfCheck check;
    check.l = l;
    const std::size_t v = table.max_vertex();
    check.max_vertex = table.labels[v];
    check.max_count = table.counts[v];
    check.bound = root(Interval::point(check.max_count), static_cast<unsigned long>(l)).hi_rational();
    check.lo_below_bound = report.radius.lo <= check.bound;
    check.lo_power_below_count = pow_exact(report.radius.lo, l) <= Rational(check.max_count);
    report.passed = report.passed && check.lo_below_bound && check.lo_power_below_count;
    if (!tightest || check.bound < *tightest) {
      tightest = check.bound;
      report.tightest_l = l;
    }
    report.checks.push_back(std::move(check));
  }
  return report;
}

struct LocalityReport {
  int n = 0;
  std::uint64_t l = 0;
  std::int64_t e_k = 0;
  std::int64_t n_k = 0;
  bool inconclusive = false;          ///< arc budget exhausted
  std::uint64_t arcs_visited = 0;
  BigInt paths_meeting_both = 0;      ///< walks using arcs of both D and D_k
  BigInt max_pair_through_d = 0;
  BigInt max_pair_through_dk = 0;
  BigInt max_vertex_count = 0;
  std::string max_vertex;
  bool matches_matrix_power = false;  ///< enumeration totals == rowsum(T_k^l)

  bool disjoint_ok() const { return paths_meeting_both == 0; }
  bool pair_d_ok() const { return max_pair_through_d <= 2; }
  bool pair_dk_ok() const { return max_pair_through_dk <= e_k; }
  bool vertex_ok() const { return max_vertex_count <= BigInt(2) * n * n_k; }
  bool passed() const {
    return !inconclusive && disjoint_ok() && pair_d_ok() && pair_dk_ok() && vertex_ok() && matches_matrix_power;
  }
};

/// Default path length floor(n/13).
inline std::uint64_t locality_length(int n) { return static_cast<std::uint64_t>(n / 13); }

/// Enumerates every length-l walk of T_k (parallel arcs weighted by
/// multiplicity) and classifies it by whether it uses arcs of D (out of the
/// six special rows) and of D_k (out of the three spliced rows).
inline LocalityReport path_locality_check(const ComposedMatrix& tk, std::uint64_t l,
                                          std::uint64_t arc_budget = 50'000'000) {
  if (l < 1) throw std::domain_error("path length must be >= 1");
  LocalityReport rep;
  rep.n = tk.n;
  rep.l = l;
  rep.e_k = tk.block.max_entry;
  rep.n_k = std::max<std::int64_t>(2, rep.e_k);

  const TransitionMatrix& t = tk.spliced;
  const std::size_t d = t.dim();
  std::vector<bool> in_d(d, false), in_dk(d, false);
  const SpineMap shape = build_f3_spine_map(tk.n, tk.n);
  for (const EdgeId& e : shape.special_edges()) in_d[shape.index_of(e)] = true;
  for (std::size_t r : tk.spliced_rows()) in_dk[r] = true;

  struct Frame {
    std::size_t vertex;
    std::size_t next_arc;
    BigInt weight;
    bool used_d;
    bool used_dk;
  };
  const PathCountTable reference = path_counts(t, l);
  rep.matches_matrix_power = true;
  BigInt best_vertex = -1;
  for (std::size_t start = 0; start < d && !rep.inconclusive; ++start) {
    std::vector<BigInt> total(d, BigInt(0)), via_d(d, BigInt(0)), via_dk(d, BigInt(0));
    std::vector<Frame> stack;
    stack.push_back({start, 0, BigInt(1), false, false});
    while (!stack.empty()) {
      Frame& top = stack.back();
      if (stack.size() == l + 1) {
        total[top.vertex] += top.weight;
        if (top.used_d) via_d[top.vertex] += top.weight;
        if (top.used_dk) via_dk[top.vertex] += top.weight;
        if (top.used_d && top.used_dk) rep.paths_meeting_both += top.weight;
        stack.pop_back();
        continue;
      }
      const auto arcs = t.row(top.vertex);
      if (top.next_arc >= arcs.size()) {
        stack.pop_back();
        continue;
      }
      if (++rep.arcs_visited > arc_budget) {
        rep.inconclusive = true;
        break;
      }
      const auto& arc = arcs[top.next_arc++];
      Frame child{arc.col, 0, top.weight * arc.count, top.used_d || in_d[top.vertex],
                  top.used_dk || in_dk[top.vertex]};
      stack.push_back(std::move(child));
    }
    if (rep.inconclusive) break;
    BigInt from_start = 0;
    for (std::size_t v = 0; v < d; ++v) {
      from_start += total[v];
      rep.max_pair_through_d = std::max(rep.max_pair_through_d, via_d[v]);
      rep.max_pair_through_dk = std::max(rep.max_pair_through_dk, via_dk[v]);
    }
    if (from_start != reference.counts[start]) rep.matches_matrix_power = false;
    if (from_start > best_vertex) {
      best_vertex = from_start;
      rep.max_vertex = t.label(start);
    }
  }
  rep.max_vertex_count = best_vertex < 0 ? BigInt(0) : best_vertex;
  if (rep.inconclusive) rep.matches_matrix_power = false;
  return rep;
}

/// tr(T^l) for l = 1..l_max: closed-walk counts. Equal sequences up to the
/// dimension force equal characteristic polynomials.
inline std::vector<BigInt> closed_walk_counts(const TransitionMatrix& t, std::uint64_t l_max) {
  std::vector<BigInt> out;
  BigMatrix power(t);
  for (std::uint64_t l = 1; l <= l_max; ++l) {
    if (l > 1) power = power.times(t);
    out.push_back(power.trace());
  }
  return out;
}

/// Sorted row sums of T^l.
inline std::vector<BigInt> row_sum_multiset(const TransitionMatrix& t, std::uint64_t l) {
  std::vector<BigInt> sums = path_counts(t, l).counts;
  std::sort(sums.begin(), sums.end());
  return sums;
}

}  // namespace pacert
