// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <Eigen/Dense>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "pacert/pacert.hpp"

using namespace pacert;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(const std::string& id, const std::string& title, double limit_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (limit_s > 0 && secs > limit_s) {
    o.pass = false;
    o.detail += " (over time limit " + std::to_string(limit_s) + " s)";
  }
  if (!o.pass) ++failures;
  std::printf("[%s] %-3s %s (%.2f s): %s\n", o.pass ? "PASS" : "FAIL", id.c_str(), title.c_str(), secs, o.detail.c_str());
  std::fflush(stdout);
}

double eigen_radius(const TransitionMatrix& t) {
  const auto d = static_cast<Eigen::Index>(t.dim());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
  for (std::size_t r = 0; r < t.dim(); ++r)
    for (const auto& e : t.row(r)) m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(e.col)) = static_cast<double>(e.count);
  const Eigen::VectorXcd ev = m.eigenvalues();
  double rho = 0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) rho = std::max(rho, std::abs(ev(i)));
  return rho;
}

const Rational kTol9(1, 1000000000);

Outcome criterion1() {
  std::ostringstream d;
  for (int n : {8, 11, 14, 20, 52}) {
    const SpineMap map = build_f3_spine_map(n, n);
    const TransitionMatrix p = transition_matrix(map);
    std::vector<std::int64_t> special;
    for (const EdgeId& e : map.special_edges()) special.push_back(p.row_sum(map.index_of(e)));
    std::sort(special.begin(), special.end());
    if (special != std::vector<std::int64_t>{3, 5, 7, 9, 11, 13}) return {false, "special rows wrong at n=" + std::to_string(n)};
    std::size_t others = 0;
    for (std::size_t r = 0; r < p.dim(); ++r) {
      if (p.row_sum(r) == 1) ++others;
    }
    if (others != p.dim() - 6) return {false, "non-special row sum != 1 at n=" + std::to_string(n)};
    if (p.total() != 2 * n + 42) return {false, "total wrong at n=" + std::to_string(n)};
    d << "n=" << n << " total=" << p.total() << " ";
  }
  return {true, d.str()};
}

Outcome criterion2() {
  const auto corpus = random_corpus(100);
  std::size_t violations = 0, oracle_misses = 0, checks = 0;
  for (const auto& t : corpus) {
    const PfReport rep = verify_pf_proposition(t, 6, kTol9);
    checks += rep.checks.size();
    if (!rep.passed) ++violations;
    const double rho = eigen_radius(t);
    if (rep.radius.lo.convert_to<double>() > rho * (1 + 1e-9) + 1e-12 ||
        rep.radius.hi.convert_to<double>() < rho * (1 - 1e-9) - 1e-12) {
      ++oracle_misses;
    }
  }
  std::ostringstream d;
  d << corpus.size() << " matrices, " << checks << " (T,l) checks, violations=" << violations
    << ", eigen-oracle disagreements=" << oracle_misses;
  return {violations == 0 && oracle_misses == 0, d.str()};
}

Outcome criterion3() {
  const CertifiedRadius r = certified_radius(transition_matrix(build_f3_spine_map(20, 20)), kTol9);
  bool nested = true;
  for (std::size_t i = 1; i < r.history.size(); ++i) nested = nested && r.history[i - 1].contains(r.history[i]);
  std::optional<std::uint64_t> reached;
  for (const auto& b : r.history) {
    if (!reached && b.width() <= Rational(1, 1000000)) reached = b.l;
  }
  std::ostringstream d;
  d << "bracket [" << decimal_down(r.lo) << ", " << decimal_up(r.hi) << "], width<=1e-6 at l="
    << (reached ? std::to_string(*reached) : "never") << ", nested=" << (nested ? "yes" : "no");
  return {nested && reached.has_value(), d.str()};
}

Outcome criterion4() {
  SweepConfig c;
  c.n_start = 30;
  c.n_stop = 300;
  c.n_step = 3;
  c.k_list = {0, 1, 2, 3};
  c.exponent = 10;
  const SweepResult res = run_sweep(c);
  bool ok = true;
  std::ostringstream d;
  for (const auto& [k, n_emp] : res.n_emp) {
    std::size_t rows = 0, pass = 0;
    for (const auto& row : res.rows) {
      if (row.k != k) continue;
      ++rows;
      if (row.verdict == Verdict::pass) ++pass;
    }
    d << "k=" << k << ": N_emp=" << (n_emp ? std::to_string(*n_emp) : "none") << " (" << pass << "/" << rows << ") ";
    ok = ok && n_emp.has_value();
  }
  return {ok, d.str()};
}

Outcome criterion5() {
  std::ostringstream d;
  bool ok = true;
  for (const auto& [n, l] : {std::pair{52, 4}, std::pair{104, 8}}) {
    for (int k : {1, 2, 3}) {
      const ComposedMatrix tk = splice(transition_matrix(build_f3_spine_map(n, n)), n, local_block(default_twist_word(k)));
      const LocalityReport r = path_locality_check(tk, static_cast<std::uint64_t>(l));
      ok = ok && r.passed();
      d << "n=" << n << ",k=" << k << ":" << (r.passed() ? "ok" : "FAIL") << "(pair_D=" << r.max_pair_through_d
        << ",pair_Dk=" << r.max_pair_through_dk << "/" << r.n_k << ") ";
    }
  }
  return {ok, d.str()};
}

struct SplicePair {
  int n;
  int j;
  int j2;
};

std::vector<SplicePair> relocation_pairs() {
  std::vector<SplicePair> out;
  for (int n : {12, 20}) {
    for (int i = 2; i <= n - 5; ++i) {
      for (int k = 1; k <= n - (i + 3); ++k) {
        const int j2 = relocate_support(i, k, n);
        if (i >= 5 && j2 <= n - 5) out.push_back({n, i, j2});
      }
    }
  }
  return out;
}

Outcome criterion6_replay() {
  std::size_t cases = 0, passed = 0;
  for (int n : {12, 20}) {
    for (int i = 2; i <= n - 5; ++i) {
      for (int k = 1; k <= n - (i + 3); ++k) {
        ++cases;
        if (verify_conjugation(n, n, i, k).passed) ++passed;
      }
    }
  }
  return {passed == cases, std::to_string(passed) + "/" + std::to_string(cases) + " legal (i,k) replays pass"};
}

Outcome criterion6_cospectral() {
  std::size_t pairs = 0, equal_traces = 0, overlapping = 0;
  const LocalBlock h = local_block(default_twist_word(1));
  for (const auto& p : relocation_pairs()) {
    const TransitionMatrix base = transition_matrix(build_f3_spine_map(p.n, p.n));
    const TransitionMatrix a = splice(base, p.n, h, p.j).spliced;
    const TransitionMatrix b = splice(base, p.n, h, p.j2).spliced;
    ++pairs;
    if (closed_walk_counts(a, a.dim()) == closed_walk_counts(b, b.dim())) ++equal_traces;
    const CertifiedRadius ra = certified_radius(a, kTol9), rb = certified_radius(b, kTol9);
    if (std::max(ra.lo, rb.lo) <= std::min(ra.hi, rb.hi)) ++overlapping;
  }
  std::ostringstream d;
  d << pairs << " spliced pairs: tr(T^l) equal for l<=dim in " << equal_traces << ", certified brackets intersect in "
    << overlapping;
  return {pairs > 0 && equal_traces == pairs && overlapping == pairs, d.str()};
}

Outcome criterion6_literal() {
  std::size_t pairs = 0, identical_brackets = 0, equal_multisets = 0;
  const LocalBlock h = local_block(default_twist_word(1));
  for (const auto& p : relocation_pairs()) {
    const TransitionMatrix base = transition_matrix(build_f3_spine_map(p.n, p.n));
    const TransitionMatrix a = splice(base, p.n, h, p.j).spliced;
    const TransitionMatrix b = splice(base, p.n, h, p.j2).spliced;
    ++pairs;
    bool same = true;
    for (std::uint64_t l : {1u, 2u, 4u}) same = same && row_sum_multiset(a, l) == row_sum_multiset(b, l);
    if (same) ++equal_multisets;
    const CertifiedRadius ra = certified_radius(a, kTol9), rb = certified_radius(b, kTol9);
    if (ra.lo == rb.lo && ra.hi == rb.hi) ++identical_brackets;
  }
  std::ostringstream d;
  d << pairs << " spliced pairs: sorted row sums of T, T^2, T^4 equal in " << equal_multisets
    << ", identical bracket endpoints in " << identical_brackets;
  return {equal_multisets == pairs && identical_brackets == pairs, d.str()};
}

Outcome criterion7() {
  const Interval v8 = octahedron_constant();
  const bool width = v8.width() <= Rational(1, 1000000000000LL);
  const bool value = Interval::hull(Rational(3663862376708LL, 1000000000000LL), Rational(3663862376709LL, 1000000000000LL)).contains(v8);
  bool coeffs = true;
  std::mt19937 rng(17);
  for (int k = 1; k <= 100; ++k) {
    coeffs = coeffs && block_volume(k).coeff == 4 * k && drilled_lower_bound(k).coeff == 4 * k &&
             filled_lower_bound(k).coeff == 3 * k && filled_lower_bound(k).coeff + k == drilled_lower_bound(k).coeff;
    const std::int64_t deg = std::uniform_int_distribution<std::int64_t>(1, 1000)(rng);
    coeffs = coeffs && lifted_lower_bound(k, deg).coeff == Rational(3 * k * deg);
  }
  std::ostringstream d;
  d << "V8 in [" << decimal_down(v8.lo_rational(), 20) << ", " << decimal_up(v8.hi_rational(), 20) << "]"
    << " width<=1e-12:" << (width ? "yes" : "no") << " agrees with 3.663862376708:" << (value ? "yes" : "no")
    << " coefficients k<=100:" << (coeffs ? "exact" : "MISMATCH");
  return {width && value && coeffs, d.str()};
}

Outcome criterion8() {
  std::mt19937_64 rng(8);
  std::size_t ok = 0, ordered = 0;
  const std::size_t total = 1000;
  for (std::size_t t = 0; t < total; ++t) {
    const int k = std::uniform_int_distribution<int>(1, 10)(rng);
    std::vector<std::int64_t> u(static_cast<std::size_t>(k)), v(static_cast<std::size_t>(k));
    for (auto& x : u) x = std::uniform_int_distribution<std::int64_t>(1, 1000000)(rng);
    for (auto& x : v) x = std::uniform_int_distribution<std::int64_t>(1, 1000000)(rng);
    const TwistWord w = TwistWord::standard(u, v);
    const SlopeAssignment s = surgery_correspondence(w);
    if (word_from_slopes(s) == w) ++ok;
    bool order = s.slopes.size() == static_cast<std::size_t>(2 * k);
    for (int i = k; i >= 1 && order; --i) {
      const std::size_t p = static_cast<std::size_t>(2 * (k - i));
      order = s.slopes[p].slope == Rational(1, v[static_cast<std::size_t>(i - 1)]) &&
              s.slopes[p + 1].slope == Rational(1, u[static_cast<std::size_t>(i - 1)]);
    }
    if (order) ++ordered;
  }
  return {ok == total && ordered == total,
          std::to_string(ok) + "/1000 round trips, " + std::to_string(ordered) + "/1000 in (1/v_k, 1/u_k, ..., 1/v_1, 1/u_1) order"};
}

Outcome criterion9() {
  std::ostringstream d;
  bool ok = true;
  for (int g : {2, 3, 4}) {
    for (int n : {100, 200}) {
      const LiftParameters p = lift_bound(g, n, n);
      const bool s_ok = p.s == static_cast<std::int64_t>(2 * g + 1) * (n + n + 1) + 1;
      ok = ok && s_ok && p.holds();
      d << "g=" << g << ",n=" << n << ",s=" << p.s << (p.holds() && s_ok ? " ok " : " FAIL ");
    }
  }
  return {ok, d.str()};
}

}  // namespace

int main() {
  report("1", "matrix fidelity", 1.0, criterion1);
  report("2", "path-count bound on 100 random matrices", 30.0, criterion2);
  report("3", "certified bracket convergence P(20,20)", 10.0, criterion3);
  report("4", "main inequality sweep k=0..3, n=30..300", 600.0, criterion4);
  report("5", "path locality n=52 (l=4), n=104 (l=8)", 120.0, criterion5);
  report("6a", "conjugation replay, all legal (i,k), n in {12,20}", 0, criterion6_replay);
  report("6b", "relocated splices are cospectral", 0, criterion6_cospectral);
  report("6c", "relocated splices: equal sorted row sums of T,T^2,T^4 and identical brackets", 0, criterion6_literal);
  report("7", "volume ledger", 0, criterion7);
  report("8", "surgery correspondence", 0, criterion8);
  report("9", "lift arithmetic", 0, criterion9);
  std::printf("%d criterion line(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
