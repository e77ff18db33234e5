#pragma once

// Serialization: matrix and report JSON, flat key=value configs, word
// parsing, outward-rounded decimal formatting.

#include <mpfr.h>

#include <algorithm>
#include <cstdlib>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "pacert/mcg_words.hpp"
#include "pacert/numeric.hpp"
#include "pacert/spectral.hpp"
#include "pacert/spine_model.hpp"
#include "pacert/twist_region.hpp"
#include "pacert/volume_ledger.hpp"

namespace pacert {

using Json = nlohmann::ordered_json;

/// q rounded toward -inf (rnd = MPFR_RNDD) or +inf (MPFR_RNDU), `digits` significant digits.
inline std::string decimal(const Rational& q, mpfr_rnd_t rnd, int digits = 17) {
  const Real r = Real::from_rational(q, kDefaultPrecision, rnd);
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*R*g", digits, rnd, r.get());
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

inline std::string decimal_down(const Rational& q, int digits = 17) { return decimal(q, MPFR_RNDD, digits); }
inline std::string decimal_up(const Rational& q, int digits = 17) { return decimal(q, MPFR_RNDU, digits); }

/// ["lo", "hi"], rounded outward.
inline Json interval_json(const Interval& x, int digits = 20) {
  return Json::array({decimal_down(x.lo_rational(), digits), decimal_up(x.hi_rational(), digits)});
}

// ---- matrices ------------------------------------------------------------

/// {"n", "m", "entries": [[row, col, count], ...]} sorted by (row, col) label strings.
inline Json matrix_to_json(const TransitionMatrix& t, int n, int m) {
  if (t.dim() != static_cast<std::size_t>(n + m)) throw std::invalid_argument("matrix dimension is not n + m");
  std::vector<std::tuple<std::string, std::string, std::int64_t>> entries;
  for (std::size_t r = 0; r < t.dim(); ++r) {
    for (const auto& e : t.row(r)) entries.emplace_back(t.label(r), t.label(e.col), e.count);
  }
  std::sort(entries.begin(), entries.end());
  Json out;
  out["n"] = n;
  out["m"] = m;
  Json arr = Json::array();
  for (const auto& [row, col, count] : entries) arr.push_back(Json::array({row, col, count}));
  out["entries"] = std::move(arr);
  return out;
}

inline std::string matrix_to_string(const TransitionMatrix& t, int n, int m) {
  return matrix_to_json(t, n, m).dump() + "\n";
}

inline std::vector<std::string> spine_labels(int n, int m) {
  std::vector<std::string> labels;
  for (int i = 1; i <= n; ++i) labels.push_back(EdgeId::e(i).label());
  for (int i = 1; i <= m; ++i) labels.push_back(EdgeId::ep(i).label());
  return labels;
}

inline TransitionMatrix matrix_from_json(const Json& j) {
  const int n = j.at("n").get<int>();
  const int m = j.at("m").get<int>();
  if (n < 1 || m < 1) throw std::invalid_argument("matrix JSON needs n, m >= 1");
  const std::vector<std::string> labels = spine_labels(n, m);
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < labels.size(); ++i) index[labels[i]] = i;
  std::vector<std::vector<TransitionMatrix::Entry>> rows(labels.size());
  for (const auto& e : j.at("entries")) {
    const auto r = index.find(e.at(0).get<std::string>());
    const auto c = index.find(e.at(1).get<std::string>());
    if (r == index.end() || c == index.end()) throw std::invalid_argument("unknown label in matrix JSON");
    rows[r->second].push_back({c->second, e.at(2).get<std::int64_t>()});
  }
  return TransitionMatrix(labels, std::move(rows));
}

// ---- spectral report -----------------------------------------------------

inline Json path_report_json(const PathCountTable& table, mpfr_prec_t precision = kDefaultPrecision) {
  Json out;
  out["l"] = table.l;
  out["max_vertex"] = table.labels.at(table.max_vertex());
  out["max_count"] = table.max_count().str();
  out["bound"] = to_fraction_string(
      root(Interval::point(table.max_count(), precision), static_cast<unsigned long>(table.l)).hi_rational());
  return out;
}

// ---- local blocks and words ----------------------------------------------

inline Json local_block_json(const LocalBlock& b) {
  Json out = Json::array();
  for (const auto& row : b.h) out.push_back(Json::array({row[0], row[1], row[2]}));
  return out;
}

inline LocalBlock local_block_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 3) throw std::invalid_argument("local block must be a 3x3 array");
  Block3 h{};
  for (std::size_t r = 0; r < 3; ++r) {
    if (!j[r].is_array() || j[r].size() != 3) throw std::invalid_argument("local block must be a 3x3 array");
    for (std::size_t c = 0; c < 3; ++c) h[r][c] = j[r][c].get<std::int64_t>();
  }
  return LocalBlock::from_matrix(h);
}

/// Parses "q h@5 p^-1 f^3".
inline MCGWord parse_mcg_word(const std::string& text) {
  std::istringstream in(text);
  std::string token;
  MCGWord w;
  while (in >> token) {
    if (token.rfind("h@", 0) == 0) {
      w.push_back(Letter::h(std::stoi(token.substr(2))));
      continue;
    }
    int power = 1;
    if (token.size() > 2 && token[1] == '^') {
      std::size_t used = 0;
      power = std::stoi(token.substr(2), &used);
      if (used != token.size() - 2) throw std::invalid_argument("bad power in '" + token + "'");
    } else if (token.size() != 1) {
      throw std::invalid_argument("bad letter '" + token + "'");
    }
    switch (token[0]) {
      case 'p': w.push_back(Letter::p(power)); break;
      case 'q': w.push_back(Letter::q(power)); break;
      case 'f': w.push_back(Letter::f(power)); break;
      default: throw std::invalid_argument("bad letter '" + token + "'");
    }
  }
  return w;
}

// ---- flat key=value files --------------------------------------------------

using KeyValues = std::vector<std::pair<std::string, std::string>>;

namespace detail {
inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}
}  // namespace detail

/// `key = value` lines; '#' starts a comment line; duplicate keys are errors.
inline KeyValues parse_key_values(const std::string& text) {
  KeyValues out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = detail::trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("line " + std::to_string(lineno) + ": expected key = value");
    std::string key = detail::trim(t.substr(0, eq));
    std::string value = detail::trim(t.substr(eq + 1));
    if (key.empty()) throw std::invalid_argument("line " + std::to_string(lineno) + ": empty key");
    for (const auto& kv : out) {
      if (kv.first == key) throw std::invalid_argument("duplicate key '" + key + "'");
    }
    out.emplace_back(std::move(key), std::move(value));
  }
  return out;
}

inline std::string write_key_values(const KeyValues& kv) {
  std::string out;
  for (const auto& [k, v] : kv) out += k + " = " + v + "\n";
  return out;
}

// ---- volume ledger ---------------------------------------------------------

inline Json constants_json(mpfr_prec_t precision = kDefaultPrecision) {
  Json out;
  out["precision_bits"] = precision;
  out["V8"] = interval_json(octahedron_constant(precision), 25);
  out["v3"] = interval_json(tetrahedron_constant(precision), 25);
  return out;
}

inline Json volume_row_json(int k, const std::string& quantity, const VolumeExpr& v,
                            mpfr_prec_t precision = kDefaultPrecision) {
  Json row;
  row["k"] = k;
  row["quantity"] = quantity;
  row["coeff_V8"] = to_fraction_string(v.coeff);
  row["conditional"] = v.conditional;
  if (v.conditional) row["condition"] = v.condition;
  row["gromov_norm"] = interval_json(gromov_norm(v, precision));
  return row;
}

inline Json locus_json(const DrillingLocus& locus) {
  Json out;
  out["k"] = locus.k;
  Json comps = Json::array();
  for (const auto& c : locus.components) {
    comps.push_back({{"curve", curve_name(c.curve)},
                     {"level", to_fraction_string(c.level)},
                     {"boundary", c.boundary_index}});
  }
  out["components"] = std::move(comps);
  Json labels = Json::array();
  for (const auto& slot : boundary_indexing(locus.k)) {
    labels.push_back({{"boundary", slot.index},
                      {"curve", slot.component ? Json(curve_name(slot.component->curve)) : Json(nullptr)}});
  }
  out["boundary_labels"] = std::move(labels);
  Json gammas = Json::array();
  for (const auto& g : locus.displayed_gamma_levels) gammas.push_back(to_fraction_string(g));
  out["displayed_gamma_levels"] = std::move(gammas);
  out["label_count_mismatch"] = locus.label_count_mismatch();
  return out;
}

/// Rows for k = 1..k_max plus the constants table.
inline Json ledger_json(int k_max, mpfr_prec_t precision = kDefaultPrecision) {
  Json out;
  out["constants"] = constants_json(precision);
  out["base_block"] = volume_row_json(0, "A_0", base_block_volume(), precision);
  Json rows = Json::array();
  Json loci = Json::array();
  for (int k = 1; k <= k_max; ++k) {
    rows.push_back(volume_row_json(k, "block", block_volume(k), precision));
    rows.push_back(volume_row_json(k, "drilled", drilled_lower_bound(k), precision));
    rows.push_back(volume_row_json(k, "filled", filled_lower_bound(k), precision));
    loci.push_back(locus_json(drilling_locus(k)));
  }
  out["rows"] = std::move(rows);
  out["loci"] = std::move(loci);
  return out;
}

inline Json slopes_json(const SlopeAssignment& s) {
  Json out = Json::array();
  for (const auto& e : s.slopes) {
    out.push_back({{"boundary", e.boundary_index},
                   {"curve", curve_name(e.curve)},
                   {"exponent", e.name},
                   {"slope", to_fraction_string(e.slope)}});
  }
  return out;
}

}  // namespace pacert
