#pragma once

// Local modification h_k supported in the three-puncture subsurface, modelled
// as a 3x3 non-negative block and spliced into the f^3 transition matrix.

#include <array>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "pacert/spine_model.hpp"

namespace pacert {

enum class Curve { alpha, gamma, beta };

inline char curve_letter(Curve c) {
  switch (c) {
    case Curve::alpha: return 'a';
    case Curve::gamma: return 'g';
    case Curve::beta: return 'b';
  }
  return '?';
}

inline Curve curve_from_letter(char c) {
  switch (c) {
    case 'a': return Curve::alpha;
    case 'g': return Curve::gamma;
    case 'b': return Curve::beta;
    default: throw std::invalid_argument(std::string("unknown twist curve '") + c + "'");
  }
}

inline std::string curve_name(Curve c) {
  switch (c) {
    case Curve::alpha: return "alpha";
    case Curve::gamma: return "gamma";
    case Curve::beta: return "beta";
  }
  return "?";
}

struct Syllable {
  Curve curve;
  std::int64_t exponent;
  friend bool operator==(const Syllable&, const Syllable&) = default;
};

/// Product of Dehn-twist powers, leftmost syllable first.
class TwistWord {
 public:
  TwistWord() = default;
  explicit TwistWord(std::vector<Syllable> syllables) : syllables_(std::move(syllables)) {
    for (const Syllable& s : syllables_) {
      if (s.exponent < 1) throw std::invalid_argument("twist exponents must be >= 1");
    }
  }

  /// T_a^{u_1} T_g^{v_1} ... T_a^{u_k} T_b^{v_k}.
  static TwistWord standard(const std::vector<std::int64_t>& u, const std::vector<std::int64_t>& v) {
    if (u.size() != v.size()) throw std::invalid_argument("u and v must have the same length");
    std::vector<Syllable> s;
    for (std::size_t i = 0; i < u.size(); ++i) {
      s.push_back({Curve::alpha, u[i]});
      s.push_back({i + 1 < u.size() ? Curve::gamma : Curve::beta, v[i]});
    }
    return TwistWord(std::move(s));
  }

  /// Every exponent equal to `exponent`.
  static TwistWord uniform(int k, std::int64_t exponent) {
    return standard(std::vector<std::int64_t>(static_cast<std::size_t>(k), exponent),
                    std::vector<std::int64_t>(static_cast<std::size_t>(k), exponent));
  }

  /// Parses "a^2 g^3 a^1 b^4"; a bare letter means exponent 1.
  static TwistWord parse(const std::string& text) {
    std::istringstream in(text);
    std::string token;
    std::vector<Syllable> s;
    while (in >> token) {
      if (token.size() == 1) {
        s.push_back({curve_from_letter(token[0]), 1});
        continue;
      }
      if (token.size() < 3 || token[1] != '^') throw std::invalid_argument("bad syllable '" + token + "'");
      std::size_t used = 0;
      const long long e = std::stoll(token.substr(2), &used);
      if (used != token.size() - 2) throw std::invalid_argument("bad exponent in '" + token + "'");
      s.push_back({curve_from_letter(token[0]), e});
    }
    return TwistWord(std::move(s));
  }

  std::string to_string() const {
    std::string out;
    for (const Syllable& s : syllables_) {
      if (!out.empty()) out += ' ';
      out += curve_letter(s.curve);
      out += '^';
      out += std::to_string(s.exponent);
    }
    return out;
  }

  const std::vector<Syllable>& syllables() const { return syllables_; }
  bool empty() const { return syllables_.empty(); }

  /// k when the word has the standard shape, nullopt otherwise.
  std::optional<int> shape_k() const {
    if (syllables_.empty() || syllables_.size() % 2 != 0) return std::nullopt;
    const std::size_t k = syllables_.size() / 2;
    for (std::size_t i = 0; i < k; ++i) {
      if (syllables_[2 * i].curve != Curve::alpha) return std::nullopt;
      const Curve second = i + 1 < k ? Curve::gamma : Curve::beta;
      if (syllables_[2 * i + 1].curve != second) return std::nullopt;
    }
    return static_cast<int>(k);
  }

  int k() const {
    const auto k = shape_k();
    if (!k) throw std::invalid_argument("twist word is not of the form a^u1 g^v1 ... a^uk b^vk: " + to_string());
    return *k;
  }

  std::int64_t u(int i) const { return syllables_.at(static_cast<std::size_t>(2 * (i - 1))).exponent; }
  std::int64_t v(int i) const { return syllables_.at(static_cast<std::size_t>(2 * (i - 1) + 1)).exponent; }

  friend bool operator==(const TwistWord&, const TwistWord&) = default;

 private:
  std::vector<Syllable> syllables_;
};

using Block3 = std::array<std::array<std::int64_t, 3>, 3>;

/// 3x3 non-negative block over (e_j, e_{j+1}, e_{j+2}) and its max entry E_k.
struct LocalBlock {
  Block3 h{};
  std::int64_t max_entry = 0;

  static LocalBlock from_matrix(const Block3& h) {
    LocalBlock out;
    out.h = h;
    for (const auto& row : h) {
      for (std::int64_t x : row) {
        if (x < 0) throw std::invalid_argument("local block entries must be non-negative");
        out.max_entry = std::max(out.max_entry, x);
      }
    }
    return out;
  }
  static LocalBlock identity() { return from_matrix({{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}); }

  bool is_identity() const { return h == identity().h; }

  friend bool operator==(const LocalBlock&, const LocalBlock&) = default;
};

/// Intersection vector of a curve with (e_j, e_{j+1}, e_{j+2}).
inline std::array<std::int64_t, 3> intersection_vector(Curve c) {
  switch (c) {
    case Curve::alpha: return {1, 1, 0};
    case Curve::gamma: return {0, 1, 1};
    case Curve::beta: return {1, 1, 1};
  }
  return {0, 0, 0};
}

namespace detail {

inline std::int64_t mul_add(std::int64_t acc, std::int64_t a, std::int64_t b) {
  std::int64_t prod = 0;
  std::int64_t sum = 0;
  if (__builtin_mul_overflow(a, b, &prod) || __builtin_add_overflow(acc, prod, &sum)) {
    throw std::overflow_error("local block entry exceeds 64-bit range");
  }
  return sum;
}

inline Block3 multiply(const Block3& a, const Block3& b) {
  Block3 out{};
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      std::int64_t s = 0;
      for (std::size_t l = 0; l < 3; ++l) s = mul_add(s, a[i][l], b[l][j]);
      out[i][j] = s;
    }
  }
  return out;
}

}  // namespace detail

/// M_c^t = I + t (c (x) c).
inline Block3 twist_block(Curve c, std::int64_t t) {
  const auto v = intersection_vector(c);
  Block3 out{};
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) out[i][j] = detail::mul_add(i == j ? 1 : 0, t, v[i] * v[j]);
  }
  return out;
}

/// Ordered product of the syllable matrices.
inline LocalBlock local_block(const TwistWord& word) {
  Block3 h = LocalBlock::identity().h;
  for (const Syllable& s : word.syllables()) h = detail::multiply(h, twist_block(s.curve, s.exponent));
  return LocalBlock::from_matrix(h);
}

/// Default model: k standard pairs, every exponent 10.
inline TwistWord default_twist_word(int k, std::int64_t exponent = 10) {
  return TwistWord::uniform(k, exponent);
}

/// Splice position j = floor(n/2) - 1.
inline int default_splice_index(int n) { return n / 2 - 1; }

inline void require_splice_index(int n, int j) {
  if (j < 5 || j > n - 5) {
    throw std::domain_error("splice index j=" + std::to_string(j) + " outside [5, n-5] for n=" +
                            std::to_string(n));
  }
}

/// f^3 matrix with rows e_{j-3}, e_{j-2}, e_{j-1} redirected through H.
struct ComposedMatrix {
  TransitionMatrix base;
  int n = 0;
  int j = 0;
  LocalBlock block;
  TransitionMatrix spliced;

  /// Row indices e_{j-3}, e_{j-2}, e_{j-1}.
  std::array<std::size_t, 3> spliced_rows() const {
    return {static_cast<std::size_t>(j - 4), static_cast<std::size_t>(j - 3),
            static_cast<std::size_t>(j - 2)};
  }
  /// Column indices e_j, e_{j+1}, e_{j+2}.
  std::array<std::size_t, 3> target_columns() const {
    return {static_cast<std::size_t>(j - 1), static_cast<std::size_t>(j),
            static_cast<std::size_t>(j + 1)};
  }
};

inline void require_f3_matrix(const TransitionMatrix& base, int n) {
  if (n < 7) throw std::domain_error("splice requires n >= 7");
  if (base.dim() != static_cast<std::size_t>(2 * n)) {
    throw std::invalid_argument("base is not an f^3 matrix with n = m = " + std::to_string(n));
  }
  for (int i = 1; i <= n; ++i) {
    if (base.label(static_cast<std::size_t>(i - 1)) != EdgeId::e(i).label() ||
        base.label(static_cast<std::size_t>(n + i - 1)) != EdgeId::ep(i).label()) {
      throw std::invalid_argument("base labels do not match the f^3 spine with n = m");
    }
  }
}

inline ComposedMatrix splice(const TransitionMatrix& base, int n, const LocalBlock& block, int j) {
  require_f3_matrix(base, n);
  require_splice_index(n, j);
  ComposedMatrix out;
  out.base = base;
  out.n = n;
  out.j = j;
  out.block = block;
  out.spliced = base;
  const auto rows = out.spliced_rows();
  const auto cols = out.target_columns();
  for (std::size_t r = 0; r < 3; ++r) {
    std::vector<TransitionMatrix::Entry> entries;
    for (std::size_t c = 0; c < 3; ++c) {
      if (block.h[r][c] != 0) entries.push_back({cols[c], block.h[r][c]});
    }
    out.spliced = out.spliced.with_row(rows[r], std::move(entries));
  }
  return out;
}

inline ComposedMatrix splice(const TransitionMatrix& base, int n, const LocalBlock& block) {
  return splice(base, n, block, default_splice_index(n));
}

/// Support location after conjugating by p_n^k.
inline int relocate_support(int i, int k, int n) {
  if (i < 2 || i > n - 5) {
    throw std::domain_error("support index i=" + std::to_string(i) + " outside [2, n-5]");
  }
  if (k < 1 || k > n - (i + 3)) {
    throw std::domain_error("shift k=" + std::to_string(k) + " outside [1, n-(i+3)] = [1, " +
                            std::to_string(n - (i + 3)) + "]");
  }
  return i + k;
}

}  // namespace pacert
