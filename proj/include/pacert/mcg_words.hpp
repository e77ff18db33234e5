#pragma once

// Symbolic words over the rotations p (supported in X), q (supported in Y),
// the macro f = q p, and the twist h tagged with its support position.
// Only supports matter: h is opaque.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace pacert {

/// Punctures of S_{0,n+m+2}: V_1..V_n in X (V_1 = X cap Y), W_2..W_m in Y, and x, y, z.
class PunctureSet {
 public:
  PunctureSet(int n, int m) : n_(n), m_(m) {
    if (n < 3 || m < 3) throw std::domain_error("puncture model needs n, m >= 3");
  }

  int n() const { return n_; }
  int m() const { return m_; }
  std::size_t size() const { return static_cast<std::size_t>(n_ + m_ + 2); }

  /// Index of V_i (1 <= i <= n).
  std::size_t v(int i) const { return static_cast<std::size_t>(i - 1); }
  /// Index of the i-th puncture of Y; W_1 is V_1.
  std::size_t w(int i) const { return i == 1 ? v(1) : static_cast<std::size_t>(n_ + i - 2); }
  std::size_t x() const { return static_cast<std::size_t>(n_ + m_ - 1); }
  std::size_t y() const { return static_cast<std::size_t>(n_ + m_); }
  std::size_t z() const { return static_cast<std::size_t>(n_ + m_ + 1); }

  std::string label(std::size_t idx) const {
    if (idx < static_cast<std::size_t>(n_)) return "V" + std::to_string(idx + 1);
    if (idx < static_cast<std::size_t>(n_ + m_ - 1)) return "W" + std::to_string(idx - n_ + 2);
    if (idx == x()) return "x";
    if (idx == y()) return "y";
    if (idx == z()) return "z";
    throw std::out_of_range("puncture index");
  }

  std::set<std::size_t> x_punctures() const {
    std::set<std::size_t> s;
    for (int i = 1; i <= n_; ++i) s.insert(v(i));
    return s;
  }
  std::set<std::size_t> y_punctures() const {
    std::set<std::size_t> s;
    for (int i = 1; i <= m_; ++i) s.insert(w(i));
    return s;
  }

 private:
  int n_;
  int m_;
};

using Permutation = std::vector<std::size_t>;  ///< perm[i] = image of i

inline Permutation identity_permutation(std::size_t size) {
  Permutation p(size);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

/// (a * b)(x) = a(b(x)): apply b first.
inline Permutation compose(const Permutation& a, const Permutation& b) {
  Permutation out(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = a[b[i]];
  return out;
}

inline Permutation inverse(const Permutation& p) {
  Permutation out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[p[i]] = i;
  return out;
}

inline Permutation power(const Permutation& p, int e) {
  Permutation base = e >= 0 ? p : inverse(p);
  Permutation out = identity_permutation(p.size());
  for (int i = 0; i < std::abs(e); ++i) out = compose(base, out);
  return out;
}

inline std::vector<std::size_t> fixed_points(const Permutation& p) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == i) out.push_back(i);
  }
  return out;
}

/// Cycle notation with labels, fixed points omitted; "()" for the identity.
inline std::string cycle_string(const Permutation& p, const PunctureSet& punctures) {
  std::string out;
  std::vector<bool> seen(p.size(), false);
  for (std::size_t start = 0; start < p.size(); ++start) {
    if (seen[start] || p[start] == start) continue;
    out += "(";
    std::size_t cur = start;
    bool first = true;
    while (!seen[cur]) {
      seen[cur] = true;
      if (!first) out += " ";
      out += punctures.label(cur);
      first = false;
      cur = p[cur];
    }
    out += ")";
  }
  return out.empty() ? "()" : out;
}

enum class LetterKind { p, q, f, h };

/// One syllable: p^e, q^e, f^e, or h supported at V_pos, V_pos+1, V_pos+2.
struct Letter {
  LetterKind kind = LetterKind::p;
  int power = 1;
  int position = 0;  ///< h only

  static Letter p(int e = 1) { return {LetterKind::p, e, 0}; }
  static Letter q(int e = 1) { return {LetterKind::q, e, 0}; }
  static Letter f(int e = 1) { return {LetterKind::f, e, 0}; }
  static Letter h(int pos) { return {LetterKind::h, 1, pos}; }

  std::string to_string() const {
    switch (kind) {
      case LetterKind::h: return "h@" + std::to_string(position);
      case LetterKind::p: return power == 1 ? "p" : "p^" + std::to_string(power);
      case LetterKind::q: return power == 1 ? "q" : "q^" + std::to_string(power);
      case LetterKind::f: return power == 1 ? "f" : "f^" + std::to_string(power);
    }
    return "?";
  }

  friend bool operator==(const Letter&, const Letter&) = default;
};

using MCGWord = std::vector<Letter>;

inline std::string to_string(const MCGWord& w) {
  if (w.empty()) return "1";
  std::string out;
  for (const Letter& l : w) {
    if (!out.empty()) out += " ";
    out += l.to_string();
  }
  return out;
}

/// h@i is supported on {V_i, V_{i+1}, V_{i+2}} (indices mod n) plus the
/// annulus around its boundary; disjointness is decided on punctures only.
inline std::set<std::size_t> support(const Letter& letter, const PunctureSet& punctures) {
  switch (letter.kind) {
    case LetterKind::p: return punctures.x_punctures();
    case LetterKind::q: return punctures.y_punctures();
    case LetterKind::f: {
      std::set<std::size_t> s = punctures.x_punctures();
      const auto y = punctures.y_punctures();
      s.insert(y.begin(), y.end());
      return s;
    }
    case LetterKind::h: {
      std::set<std::size_t> s;
      for (int d = 0; d < 3; ++d) {
        const int idx = ((letter.position - 1 + d) % punctures.n() + punctures.n()) % punctures.n() + 1;
        s.insert(punctures.v(idx));
      }
      return s;
    }
  }
  return {};
}

inline bool disjoint(const std::set<std::size_t>& a, const std::set<std::size_t>& b) {
  return std::none_of(a.begin(), a.end(), [&](std::size_t x) { return b.contains(x); });
}

/// p rotates V_1 -> V_2 -> ... -> V_n -> V_1; q rotates Y's punctures the
/// other way round the disk, written W_1 -> W_2 -> ... -> W_m -> W_1 in Y's
/// own clockwise labelling. Twists fix every puncture.
inline Permutation generator_action(const Letter& letter, const PunctureSet& punctures) {
  Permutation p = identity_permutation(punctures.size());
  switch (letter.kind) {
    case LetterKind::h: return p;
    case LetterKind::p:
      for (int i = 1; i <= punctures.n(); ++i) p[punctures.v(i)] = punctures.v(i % punctures.n() + 1);
      return power(p, letter.power);
    case LetterKind::q:
      for (int i = 1; i <= punctures.m(); ++i) p[punctures.w(i)] = punctures.w(i % punctures.m() + 1);
      return power(p, letter.power);
    case LetterKind::f: {
      const Permutation f = compose(generator_action(Letter::q(), punctures), generator_action(Letter::p(), punctures));
      return power(f, letter.power);
    }
  }
  return p;
}

/// Product of the letters as maps; the rightmost letter acts first.
inline Permutation puncture_action(const MCGWord& w, int n, int m) {
  const PunctureSet punctures(n, m);
  Permutation out = identity_permutation(punctures.size());
  for (const Letter& l : w) out = compose(out, generator_action(l, punctures));
  return out;
}

/// Bubbles X-supported letters (p, h) to the left of q letters whenever the
/// adjacent supports are disjoint. Never merges or cancels letters.
inline MCGWord commute_if_disjoint(MCGWord w, int n, int m) {
  const PunctureSet punctures(n, m);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      const Letter& a = w[i];
      const Letter& b = w[i + 1];
      const bool b_in_x = b.kind == LetterKind::p || b.kind == LetterKind::h;
      if (a.kind == LetterKind::q && b_in_x && disjoint(support(a, punctures), support(b, punctures))) {
        std::swap(w[i], w[i + 1]);
        changed = true;
      }
    }
  }
  return w;
}

inline void require_conjugation_parameters(int n, int m, int i, int k) {
  if (n < 7 || m < 7) throw std::domain_error("conjugation replay needs n, m >= 7");
  if (i < 2 || i > n - 5) throw std::domain_error("support index i outside [2, n-5]");
  if (k < 1 || k > n - (i + 3)) {
    throw std::domain_error("shift k=" + std::to_string(k) + " outside [1, n-(i+3)] = [1, " +
                            std::to_string(n - (i + 3)) + "]");
  }
}

struct ConjugationReport {
  bool passed = false;
  std::vector<std::string> trace;  ///< numbered lines, line 0 is the starting word
  std::size_t macro_steps = 0;
  MCGWord final_word;
  MCGWord expected_word;
  bool action_preserved = false;   ///< every step leaves the puncture action unchanged
};

namespace detail {

/// Merge adjacent powers of the same rotation/macro and drop zero powers.
inline MCGWord merge_powers(MCGWord w) {
  MCGWord out;
  for (const Letter& l : w) {
    if (!out.empty() && out.back().kind == l.kind && l.kind != LetterKind::h) {
      out.back().power += l.power;
      if (out.back().power == 0) out.pop_back();
    } else if (l.kind == LetterKind::h || l.power != 0) {
      out.push_back(l);
    }
  }
  return out;
}

}  // namespace detail

/// Replays f^k h f^3 f^{-k} = (p^k h p^{-k}) f^3 by rewriting. Each shift of
/// the twist takes two macro-steps:
///   expand   f^a h@s ...  ->  f^{a-1} q (p h@s p^{-1}) p ...  =  f^{a-1} q h@(s+1) p ...
///   commute  q h@(s+1) p f^b  ->  h@(s+1) q p f^b  ->  h@(s+1) f^{b+1}
/// with the commutation licensed only by disjoint supports.
inline ConjugationReport verify_conjugation(int n, int m, int i, int k) {
  require_conjugation_parameters(n, m, i, k);
  const PunctureSet punctures(n, m);
  ConjugationReport rep;
  rep.action_preserved = true;

  MCGWord w = detail::merge_powers({Letter::f(k), Letter::h(i), Letter::f(3), Letter::f(-k)});
  const Permutation initial_action = puncture_action(w, n, m);
  std::size_t line = 0;
  auto record = [&](const std::string& rule) {
    rep.trace.push_back(std::to_string(line++) + ". " + to_string(w) + "    [" + rule + "]");
    if (puncture_action(w, n, m) != initial_action) rep.action_preserved = false;
  };
  record("start: f^k h f^3 f^-k");

  for (int step = 1; step <= k; ++step) {
    // w = [f^a] h@s [f^b]
    std::size_t h_at = 0;
    while (h_at < w.size() && w[h_at].kind != LetterKind::h) ++h_at;
    const bool shape_ok = h_at < w.size() && h_at <= 1 && w.size() - h_at <= 2 &&
                          (h_at == 0 || w[0].kind == LetterKind::f) &&
                          (h_at + 1 == w.size() || w[h_at + 1].kind == LetterKind::f);
    if (!shape_ok) {
      rep.trace.push_back("unexpected word shape: " + to_string(w));
      rep.final_word = w;
      return rep;
    }
    const int a = h_at == 1 ? w[0].power : 0;
    const int s = w[h_at].position;
    const int b = h_at + 1 < w.size() ? w[h_at + 1].power : 0;
    // f^a = f^{a-1} q p, then p h@s = (p h@s p^-1) p = h@(s+1) p.
    w = detail::merge_powers({Letter::f(a - 1), Letter::q(), Letter::h(s + 1), Letter::p(), Letter::f(b)});
    ++rep.macro_steps;
    record("expand f = q p; conjugate h by p, support V" + std::to_string(s) + " -> V" + std::to_string(s + 1));

    MCGWord commuted = commute_if_disjoint(w, n, m);
    const std::size_t h_slot = static_cast<std::size_t>(a - 1 != 0 ? 1 : 0);
    if (commuted.size() <= h_slot + 1 || commuted[h_slot].kind != LetterKind::h) {
      rep.trace.push_back("q does not commute with h@" + std::to_string(s + 1) + ": supports meet");
      rep.final_word = w;
      return rep;
    }
    // fold q p into f and merge with the trailing power
    MCGWord folded;
    for (std::size_t idx = 0; idx < commuted.size(); ++idx) {
      if (idx + 1 < commuted.size() && commuted[idx].kind == LetterKind::q && commuted[idx].power == 1 &&
          commuted[idx + 1].kind == LetterKind::p && commuted[idx + 1].power == 1) {
        folded.push_back(Letter::f(1));
        ++idx;
      } else {
        folded.push_back(commuted[idx]);
      }
    }
    w = detail::merge_powers(folded);
    ++rep.macro_steps;
    record("commute q past h@" + std::to_string(s + 1) + " (disjoint supports); fold q p = f");
  }

  rep.final_word = w;
  rep.expected_word = {Letter::h(i + k), Letter::f(3)};
  rep.passed = rep.final_word == rep.expected_word && rep.action_preserved;
  return rep;
}

}  // namespace pacert
