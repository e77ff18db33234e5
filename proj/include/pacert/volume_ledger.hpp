#pragma once

// Exact volume bookkeeping in multiples of V_8, certified constants V_8 and
// v_3 from the Lobachevsky function, the drilling locus L_k, and the
// Dehn-filling slope <-> twist exponent correspondence.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pacert/numeric.hpp"
#include "pacert/twist_region.hpp"

namespace pacert {

/// Bernoulli numbers B_0..B_n (B_1 = -1/2), exact.
inline std::vector<Rational> bernoulli_numbers(std::size_t n) {
  std::vector<Rational> b(n + 1);
  b[0] = 1;
  for (std::size_t m = 1; m <= n; ++m) {
    Rational s = 0;
    BigInt binom = 1;  // C(m+1, j)
    for (std::size_t j = 0; j < m; ++j) {
      s += Rational(binom) * b[j];
      binom = binom * (m + 1 - j) / (j + 1);
    }
    b[m] = -s / Rational(static_cast<long>(m + 1));
  }
  return b;
}

/// Lobachevsky function at theta = pi * num/den, 0 < theta < pi:
///   L(t) = t - t log(2t) + sum_{j>=1} 2^{2j-1}|B_{2j}| t^{2j+1} / (j (2j)! (2j+1)),
/// truncated once the certified tail 2t r^{N+1} / ((N+1)(2N+3)(1-r)),
/// r = (t/pi)^2, drops below 2^-precision.
inline Interval lobachevsky_pi_fraction(long num, long den, mpfr_prec_t precision = kDefaultPrecision) {
  if (num <= 0 || den <= 0 || num >= den) throw std::domain_error("theta must lie in (0, pi)");
  const mpfr_prec_t work = precision + 32;
  const Interval ratio = Interval::point(Rational(num, den), work);
  const Interval theta = Interval::pi(work) * ratio;
  const Interval one = Interval::point(1L, work);
  const Interval two = Interval::point(2L, work);
  Interval sum = theta - theta * log(two * theta);

  const Interval r = ratio * ratio;
  const Interval theta_sq = theta * theta;
  const Rational target = Rational(1) / Rational(BigInt(1) << static_cast<unsigned>(precision + 4));

  std::size_t terms = 8;
  std::vector<Rational> bern = bernoulli_numbers(2 * terms);
  Interval theta_pow = theta;     // theta^{2j+1}
  Interval r_pow = one;           // r^j
  BigInt factorial = 1;           // (2j)!
  for (std::size_t j = 1;; ++j) {
    if (2 * j > bern.size() - 1) {
      terms *= 2;
      bern = bernoulli_numbers(2 * terms);
    }
    factorial *= BigInt(2 * j - 1) * BigInt(2 * j);
    theta_pow = theta_pow * theta_sq;
    r_pow = r_pow * r;
    Rational b = bern[2 * j];
    if (b < 0) b = -b;
    const Rational coeff = Rational(BigInt(1) << static_cast<unsigned>(2 * j - 1)) * b /
                           (Rational(static_cast<long>(j)) * Rational(factorial) * Rational(static_cast<long>(2 * j + 1)));
    sum = sum + Interval::point(coeff, work) * theta_pow;

    const long nn = static_cast<long>(j + 1);
    const Interval tail = two * theta * (r_pow * r) /
                          (Interval::point(nn * (2 * nn + 1), work) * (one - r));
    if (tail.hi_rational() < target) {
      Interval bounded = sum + Interval::hull(Rational(0), tail.hi_rational(), work);
      Interval out(precision);
      out = Interval::hull(bounded.lo_rational(), bounded.hi_rational(), precision);
      return out;
    }
  }
}

/// V_8 = 8 L(pi/4), volume of the regular ideal octahedron.
inline Interval octahedron_constant(mpfr_prec_t precision = kDefaultPrecision) {
  return Interval::point(8L, precision) * lobachevsky_pi_fraction(1, 4, precision);
}

/// v_3 = 3 L(pi/3), volume of the regular ideal tetrahedron.
inline Interval tetrahedron_constant(mpfr_prec_t precision = kDefaultPrecision) {
  return Interval::point(3L, precision) * lobachevsky_pi_fraction(1, 3, precision);
}

/// coeff * V_8, with coeff exact. `conditional` marks bounds that hold only
/// once the twist exponents exceed the non-effective filling constant B_k.
struct VolumeExpr {
  Rational coeff;
  bool conditional = false;
  std::string condition;

  Interval numeric(mpfr_prec_t precision = kDefaultPrecision) const {
    return Interval::point(coeff, precision) * octahedron_constant(precision);
  }
};

inline const char* kFillingCondition = "u_i, v_i >= B_k";

inline void require_block_count(int k) {
  if (k < 1) throw std::domain_error("block count k must be >= 1 (got " + std::to_string(k) + ")");
}

/// vol(A_0) = 2 V_8.
inline VolumeExpr base_block_volume() { return {Rational(2), false, ""}; }

/// vol(A_k) = 4k V_8: k glued copies of A, each two copies of A_0.
inline VolumeExpr block_volume(int k) {
  require_block_count(k);
  return {Rational(2) * 2 * k, false, ""};
}

/// vol(M_f minus N(L_k)) >= 4k V_8.
inline VolumeExpr drilled_lower_bound(int k) {
  require_block_count(k);
  return {block_volume(k).coeff, false, ""};
}

/// vol(M_{h_k f}) >= drilled - k V_8 = 3k V_8, conditional on B_k.
inline VolumeExpr filled_lower_bound(int k) {
  const VolumeExpr drilled = drilled_lower_bound(k);
  return {drilled.coeff - k, true, kFillingCondition};
}

/// Lift through a cover of degree deg: volume scales by deg.
inline VolumeExpr lifted_lower_bound(int k, std::int64_t degree) {
  if (degree < 1) throw std::domain_error("cover degree must be >= 1");
  const VolumeExpr filled = filled_lower_bound(k);
  return {filled.coeff * Rational(degree), filled.conditional, filled.condition};
}

/// ||[M]|| = vol(M) / v_3.
inline Interval gromov_norm(const Interval& volume, mpfr_prec_t precision = kDefaultPrecision) {
  return volume / tetrahedron_constant(precision);
}

inline Interval gromov_norm(const VolumeExpr& vol, mpfr_prec_t precision = kDefaultPrecision) {
  if (vol.coeff == 0) return Interval::point(0L, precision);
  return gromov_norm(vol.numeric(precision), precision);
}

/// ||[M_beta]|| <= ||[M]|| for a filling of M: both sides are V_8 multiples,
/// so the comparison is exact on coefficients.
inline bool filling_does_not_increase_norm(const VolumeExpr& filled, const VolumeExpr& parent) {
  return filled.coeff <= parent.coeff;
}

struct LocusComponent {
  Curve curve;
  Rational level;
  int boundary_index;  ///< d_i M_k
};

struct BoundarySlot {
  int index;
  std::optional<LocusComponent> component;
};

/// L_k: alpha at 2i/4k (i = 1..k+1), gamma at (2i+1)/4k (i = 1..k-1), beta at 1/4k.
struct DrillingLocus {
  int k = 0;
  std::vector<LocusComponent> components;
  /// gamma levels as listed in the displayed formula for L_k: 3/4k, ..., (2k+1)/4k.
  std::vector<Rational> displayed_gamma_levels;

  std::size_t boundary_label_count() const { return static_cast<std::size_t>(2 * k + 2); }
  /// 2k+1 components against 2k+2 boundary labels.
  bool label_count_mismatch() const { return components.size() != boundary_label_count(); }

  std::vector<LocusComponent> of(Curve c) const {
    std::vector<LocusComponent> out;
    for (const auto& comp : components) {
      if (comp.curve == c) out.push_back(comp);
    }
    return out;
  }
};

inline DrillingLocus drilling_locus(int k) {
  require_block_count(k);
  DrillingLocus locus;
  locus.k = k;
  const long denom = 4L * k;
  locus.components.push_back({Curve::beta, Rational(1, denom), 1});
  for (int i = 1; i <= k + 1; ++i) locus.components.push_back({Curve::alpha, Rational(2L * i, denom), 2 * i});
  for (int i = 1; i <= k - 1; ++i) locus.components.push_back({Curve::gamma, Rational(2L * i + 1, denom), 2 * i + 1});
  for (int i = 1; i <= k; ++i) locus.displayed_gamma_levels.push_back(Rational(2L * i + 1, denom));
  return locus;
}

/// d_1 .. d_{2k+2}; slots with no component stay empty.
inline std::vector<BoundarySlot> boundary_indexing(int k) {
  const DrillingLocus locus = drilling_locus(k);
  std::vector<BoundarySlot> slots;
  for (int idx = 1; idx <= 2 * k + 2; ++idx) {
    BoundarySlot slot{idx, std::nullopt};
    for (const auto& c : locus.components) {
      if (c.boundary_index == idx) slot.component = c;
    }
    slots.push_back(slot);
  }
  return slots;
}

struct SlopeEntry {
  Rational slope;             ///< 1/r
  int boundary_index = 0;
  Curve curve = Curve::alpha;
  std::int64_t exponent = 0;  ///< r
  std::string name;           ///< "v_k", "u_k", ...
};

/// Slopes (1/v_k, 1/u_k, ..., 1/v_1, 1/u_1) on d_1, d_2, ..., d_2k.
struct SlopeAssignment {
  int k = 0;
  std::vector<SlopeEntry> slopes;
};

inline SlopeAssignment surgery_correspondence(const TwistWord& word) {
  const int k = word.k();
  const std::vector<BoundarySlot> slots = boundary_indexing(k);
  SlopeAssignment out;
  out.k = k;
  for (int i = k; i >= 1; --i) {
    for (bool is_v : {true, false}) {
      const std::int64_t r = is_v ? word.v(i) : word.u(i);
      if (r == 0) throw std::domain_error("zero twist exponent gives slope 1/0");
      SlopeEntry e;
      e.exponent = r;
      e.slope = Rational(1) / Rational(r);
      e.boundary_index = static_cast<int>(out.slopes.size()) + 1;
      e.curve = is_v ? (i == k ? Curve::beta : Curve::gamma) : Curve::alpha;
      e.name = std::string(is_v ? "v_" : "u_") + std::to_string(i);
      const auto& slot = slots.at(static_cast<std::size_t>(e.boundary_index - 1));
      if (!slot.component || slot.component->curve != e.curve) {
        throw std::logic_error("slope order disagrees with boundary labelling at d_" + std::to_string(e.boundary_index));
      }
      out.slopes.push_back(std::move(e));
    }
  }
  return out;
}

/// Inverse of surgery_correspondence.
inline TwistWord word_from_slopes(const SlopeAssignment& assignment) {
  const int k = assignment.k;
  if (assignment.slopes.size() != static_cast<std::size_t>(2 * k)) {
    throw std::invalid_argument("slope list must have 2k entries");
  }
  std::vector<std::int64_t> u(static_cast<std::size_t>(k)), v(static_cast<std::size_t>(k));
  for (std::size_t p = 0; p < assignment.slopes.size(); ++p) {
    const Rational& s = assignment.slopes[p].slope;
    if (boost::multiprecision::numerator(s) != 1 || s <= 0) {
      throw std::invalid_argument("slope is not of the form 1/r with r >= 1");
    }
    const auto r = static_cast<std::int64_t>(boost::multiprecision::denominator(s));
    const std::size_t i = static_cast<std::size_t>(k) - 1 - p / 2;  // 0-based pair index
    (p % 2 == 0 ? v : u)[i] = r;
  }
  return TwistWord::standard(u, v);
}

/// Canonical key for (n, m) under (n, m) ~ (n+3, m) ~ (n, m+3).
inline std::pair<int, int> fiber_equivalence(int n, int m) {
  if (n <= 3 || m <= 3) throw std::domain_error("fiber equivalence needs n, m > 3");
  return {(n - 4) % 3 + 4, (m - 4) % 3 + 4};
}

}  // namespace pacert
