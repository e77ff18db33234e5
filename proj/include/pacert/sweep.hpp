#pragma once

// Batch sweep over (k, n): certified main-inequality rows, CSV/SVG output,
// and the flat config file.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "pacert/bounds.hpp"
#include "pacert/io.hpp"
#include "pacert/spine_model.hpp"
#include "pacert/twist_region.hpp"

namespace pacert {

/// Keys: n_start, n_stop (inclusive), n_step, k_list, exponent, h, tolerance,
/// csv, plot, reference_c, workers. `h` (nine comma-separated integers, row
/// major) replaces the twist-word block for every k >= 1.
struct SweepConfig {
  int n_start = 30;
  int n_stop = 300;
  int n_step = 3;
  std::vector<int> k_list{0, 1, 2, 3};
  std::int64_t exponent = 10;
  std::optional<LocalBlock> explicit_h;
  Rational tolerance{1, 1000000000};
  std::string csv_path = "sweep.csv";
  std::string plot_path;
  Rational reference_c{1};
  unsigned workers = 0;  ///< 0: hardware concurrency

  std::vector<int> n_values() const {
    std::vector<int> out;
    for (int n = n_start; n <= n_stop; n += n_step) out.push_back(n);
    return out;
  }

  void validate() const {
    if (n_step <= 0) throw std::domain_error("n_step must be > 0");
    if (n_start <= n_stop && n_start < 7) throw std::domain_error("n_start must be >= 7");
    if (exponent < 1) throw std::domain_error("exponent must be >= 1");
    if (tolerance <= 0) throw std::domain_error("tolerance must be > 0");
    for (int k : k_list) {
      if (k < 0) throw std::domain_error("k values must be >= 0");
    }
  }

  friend bool operator==(const SweepConfig& a, const SweepConfig& b) {
    return a.n_start == b.n_start && a.n_stop == b.n_stop && a.n_step == b.n_step && a.k_list == b.k_list &&
           a.exponent == b.exponent && a.explicit_h == b.explicit_h && a.tolerance == b.tolerance &&
           a.csv_path == b.csv_path && a.plot_path == b.plot_path && a.reference_c == b.reference_c &&
           a.workers == b.workers;
  }
};

namespace detail {

inline std::vector<std::int64_t> parse_int_list(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    std::size_t used = 0;
    out.push_back(std::stoll(item, &used));
    if (used != item.size()) throw std::invalid_argument("bad integer '" + item + "'");
  }
  return out;
}

inline std::string join_ints(const std::vector<std::int64_t>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + std::to_string(xs[i]);
  return out;
}

inline int to_int(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  int x = 0;
  try {
    x = std::stoi(value, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("key '" + key + "': not an integer");
  }
  if (used != value.size()) throw std::invalid_argument("key '" + key + "': not an integer");
  return x;
}

}  // namespace detail

inline SweepConfig config_from_key_values(const KeyValues& kv) {
  SweepConfig c;
  for (const auto& [key, value] : kv) {
    if (key == "n_start") c.n_start = detail::to_int(key, value);
    else if (key == "n_stop") c.n_stop = detail::to_int(key, value);
    else if (key == "n_step") c.n_step = detail::to_int(key, value);
    else if (key == "k_list") {
      c.k_list.clear();
      for (auto k : detail::parse_int_list(value)) c.k_list.push_back(static_cast<int>(k));
    } else if (key == "exponent") c.exponent = detail::to_int(key, value);
    else if (key == "h") {
      if (value.empty()) {
        c.explicit_h.reset();
        continue;
      }
      const auto xs = detail::parse_int_list(value);
      if (xs.size() != 9) throw std::invalid_argument("key 'h': expected 9 integers");
      Block3 h{};
      for (std::size_t i = 0; i < 9; ++i) h[i / 3][i % 3] = xs[i];
      c.explicit_h = LocalBlock::from_matrix(h);
    } else if (key == "tolerance") c.tolerance = parse_fraction(value);
    else if (key == "csv") c.csv_path = value;
    else if (key == "plot") c.plot_path = value;
    else if (key == "reference_c") c.reference_c = parse_fraction(value);
    else if (key == "workers") {
      const int w = detail::to_int(key, value);
      if (w < 0) throw std::invalid_argument("key 'workers' must be >= 0");
      c.workers = static_cast<unsigned>(w);
    } else {
      throw std::invalid_argument("unknown config key '" + key + "'");
    }
  }
  c.validate();
  return c;
}

inline SweepConfig parse_sweep_config(const std::string& text) { return config_from_key_values(parse_key_values(text)); }

inline std::string write_sweep_config(const SweepConfig& c) {
  KeyValues kv;
  kv.emplace_back("n_start", std::to_string(c.n_start));
  kv.emplace_back("n_stop", std::to_string(c.n_stop));
  kv.emplace_back("n_step", std::to_string(c.n_step));
  kv.emplace_back("k_list", detail::join_ints(std::vector<std::int64_t>(c.k_list.begin(), c.k_list.end())));
  kv.emplace_back("exponent", std::to_string(c.exponent));
  std::vector<std::int64_t> h;
  if (c.explicit_h) {
    for (const auto& row : c.explicit_h->h) h.insert(h.end(), row.begin(), row.end());
  }
  kv.emplace_back("h", detail::join_ints(h));
  kv.emplace_back("tolerance", to_fraction_string(c.tolerance));
  kv.emplace_back("csv", c.csv_path);
  kv.emplace_back("plot", c.plot_path);
  kv.emplace_back("reference_c", to_fraction_string(c.reference_c));
  kv.emplace_back("workers", std::to_string(c.workers));
  return write_key_values(kv);
}

struct SweepRow {
  int k = 0;
  int n = 0;
  std::int64_t e_k = 1;
  std::int64_t n_k = 2;
  Rational lambda_lo;
  Rational lambda_hi;
  Rational log_lambda_hi;
  Rational bound_lo;  ///< lower end of 54 log(2n+2)/(2n+2)
  Verdict verdict = Verdict::inconclusive;
  Rational margin;
  std::string error;  ///< non-empty when the row could not be computed
};

struct SweepResult {
  std::vector<SweepRow> rows;              ///< ordered by (k, n)
  std::map<int, std::optional<int>> n_emp;  ///< per k
};

inline LocalBlock sweep_block(const SweepConfig& c, int k) {
  if (k == 0) return LocalBlock::identity();
  if (c.explicit_h) return *c.explicit_h;
  return local_block(default_twist_word(k, c.exponent));
}

inline SweepRow sweep_row(const SweepConfig& c, int k, int n) {
  SweepRow row;
  row.k = k;
  row.n = n;
  try {
    const TransitionMatrix base = transition_matrix(build_f3_spine_map(n, n));
    MainInequalityResult r;
    if (k == 0) {
      r = verify_main_inequality(base, n, c.tolerance);
    } else {
      const LocalBlock block = sweep_block(c, k);
      row.e_k = block.max_entry;
      r = verify_main_inequality(splice(base, n, block), n, c.tolerance);
    }
    row.n_k = std::max<std::int64_t>(2, row.e_k);
    row.bound_lo = r.bound.lo_rational();
    row.verdict = r.verdict;
    if (r.radius) {
      row.lambda_lo = r.radius->lo;
      row.lambda_hi = r.radius->hi;
      row.log_lambda_hi = r.log_lambda_hi;
      row.margin = r.margin;
    } else {
      row.error = r.note;
    }
  } catch (const std::exception& e) {
    row.verdict = Verdict::inconclusive;
    row.error = e.what();
  }
  return row;
}

/// Rows computed in parallel, stored by (k, n) index so output order never
/// depends on scheduling.
inline SweepResult run_sweep(const SweepConfig& c) {
  c.validate();
  std::vector<int> ks = c.k_list;
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  const std::vector<int> ns = c.n_values();
  std::vector<std::pair<int, int>> cells;
  for (int k : ks) {
    for (int n : ns) cells.emplace_back(k, n);
  }
  SweepResult result;
  result.rows.resize(cells.size());
  std::atomic<std::size_t> next{0};
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const unsigned workers = std::max(1u, std::min<unsigned>(c.workers ? c.workers : hw,
                                                           static_cast<unsigned>(std::max<std::size_t>(cells.size(), 1))));
  auto work = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      result.rows[i] = sweep_row(c, cells[i].first, cells[i].second);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  for (int k : ks) {
    std::vector<std::pair<int, bool>> verdicts;
    for (const auto& r : result.rows) {
      if (r.k == k) verdicts.emplace_back(r.n, r.verdict == Verdict::pass);
    }
    result.n_emp[k] = verdicts.empty() ? std::nullopt : empirical_threshold(verdicts);
  }
  return result;
}

inline const char* kSweepCsvHeader = "n,k,E_k,N_k,lambda_lo,lambda_hi,log_lambda_hi,bound_54,pass,margin";

/// lambda_lo, bound_54 and margin are rounded down; lambda_hi and
/// log_lambda_hi up. Rows that failed to compute carry empty numeric cells.
inline std::string sweep_csv(const SweepResult& result) {
  std::string out = std::string(kSweepCsvHeader) + "\n";
  for (const auto& r : result.rows) {
    out += std::to_string(r.n) + "," + std::to_string(r.k) + "," + std::to_string(r.e_k) + "," +
           std::to_string(r.n_k) + ",";
    if (r.error.empty()) {
      out += decimal_down(r.lambda_lo) + "," + decimal_up(r.lambda_hi) + "," + decimal_up(r.log_lambda_hi) + "," +
             decimal_down(r.bound_lo) + "," + to_string(r.verdict) + "," + decimal_down(r.margin);
    } else {
      out += ",,,,inconclusive,";
    }
    out += "\n";
  }
  return out;
}

inline Json sweep_summary_json(const SweepResult& result) {
  Json out = Json::object();
  Json per_k = Json::array();
  for (const auto& [k, n_emp] : result.n_emp) {
    std::size_t pass = 0, fail = 0, inconclusive = 0;
    for (const auto& r : result.rows) {
      if (r.k != k) continue;
      if (r.verdict == Verdict::pass) ++pass;
      else if (r.verdict == Verdict::fail) ++fail;
      else ++inconclusive;
    }
    per_k.push_back({{"k", k},
                     {"N_emp", n_emp ? Json(*n_emp) : Json(nullptr)},
                     {"pass", pass},
                     {"fail", fail},
                     {"inconclusive", inconclusive}});
  }
  out["summary"] = std::move(per_k);
  return out;
}

/// Static SVG: log lambda_hi per k, 54 log(2n+2)/(2n+2), and c log n / n.
inline std::string sweep_svg(const SweepResult& result, const Rational& reference_c) {
  const double w = 800, h = 500, left = 70, right = 160, top = 30, bottom = 50;
  std::vector<int> ns;
  for (const auto& r : result.rows) ns.push_back(r.n);
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (ns.empty()) {
    svg << "</svg>\n";
    return svg.str();
  }
  const double c = reference_c.convert_to<double>();
  auto bound = [](int n) { return 54.0 * std::log(2.0 * n + 2) / (2.0 * n + 2); };
  auto reference = [c](int n) { return c * std::log(static_cast<double>(n)) / n; };
  double ymax = 0;
  for (int n : ns) ymax = std::max({ymax, bound(n), reference(n)});
  for (const auto& r : result.rows) {
    if (r.error.empty()) ymax = std::max(ymax, r.log_lambda_hi.convert_to<double>());
  }
  ymax *= 1.05;
  const double x0 = ns.front(), x1 = std::max(ns.back(), ns.front() + 1);
  auto px = [&](double x) { return left + (x - x0) / (x1 - x0) * (w - left - right); };
  auto py = [&](double y) { return top + (1 - y / ymax) * (h - top - bottom); };
  auto fmt = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return std::string(buf);
  };
  auto polyline = [&](const std::vector<std::pair<double, double>>& pts, const std::string& colour,
                      const std::string& dash) {
    svg << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\"";
    if (!dash.empty()) svg << " stroke-dasharray=\"" << dash << "\"";
    svg << " points=\"";
    for (const auto& [x, y] : pts) svg << fmt(px(x)) << "," << fmt(py(y)) << " ";
    svg << "\"/>\n";
  };
  svg << "<line x1=\"" << left << "\" y1=\"" << h - bottom << "\" x2=\"" << w - right << "\" y2=\"" << h - bottom
      << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << h - bottom
      << "\" stroke=\"black\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double y = ymax * t / 4;
    svg << "<text x=\"" << left - 8 << "\" y=\"" << fmt(py(y) + 4) << "\" font-size=\"11\" text-anchor=\"end\">"
        << fmt(y) << "</text>\n";
  }
  svg << "<text x=\"" << left << "\" y=\"" << h - bottom + 18 << "\" font-size=\"11\">" << ns.front() << "</text>\n";
  svg << "<text x=\"" << w - right << "\" y=\"" << h - bottom + 18 << "\" font-size=\"11\" text-anchor=\"end\">"
      << ns.back() << "</text>\n";
  svg << "<text x=\"" << (left + w - right) / 2 << "\" y=\"" << h - 10
      << "\" font-size=\"12\" text-anchor=\"middle\">n = m</text>\n";

  std::vector<std::pair<std::string, std::string>> legend;
  std::vector<std::pair<double, double>> pts;
  for (int n : ns) pts.emplace_back(n, bound(n));
  polyline(pts, "black", "");
  legend.emplace_back("black", "54 log(2n+2)/(2n+2)");
  pts.clear();
  for (int n : ns) pts.emplace_back(n, reference(n));
  polyline(pts, "grey", "6,4");
  legend.emplace_back("grey", to_fraction_string(reference_c) + " log n / n");

  const char* colours[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
  std::size_t ci = 0;
  for (const auto& [k, n_emp] : result.n_emp) {
    pts.clear();
    for (const auto& r : result.rows) {
      if (r.k == k && r.error.empty()) pts.emplace_back(r.n, r.log_lambda_hi.convert_to<double>());
    }
    const std::string colour = colours[ci++ % 6];
    polyline(pts, colour, "");
    legend.emplace_back(colour, "log lambda_hi, k=" + std::to_string(k));
  }
  for (std::size_t i = 0; i < legend.size(); ++i) {
    const double y = top + 14 + 18.0 * static_cast<double>(i);
    svg << "<line x1=\"" << w - right + 10 << "\" y1=\"" << y - 4 << "\" x2=\"" << w - right + 30 << "\" y2=\""
        << y - 4 << "\" stroke=\"" << legend[i].first << "\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << w - right + 35 << "\" y=\"" << y << "\" font-size=\"10\">" << legend[i].second
        << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace pacert
