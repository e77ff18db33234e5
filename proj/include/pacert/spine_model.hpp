#pragma once

// Spine graph of the (n+m+2)-punctured sphere and the transition matrix of
// the graph map induced by the cube of the Hironaka-Kin map f_{n,m} = q_m p_n.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pacert/numeric.hpp"

namespace pacert {

enum class EdgeFamily { plain, prime };

/// A contributing edge of the spine: e_i (plain) or e'_i (prime).
struct EdgeId {
  EdgeFamily family = EdgeFamily::plain;
  int index = 1;

  static constexpr EdgeId e(int i) { return {EdgeFamily::plain, i}; }
  static constexpr EdgeId ep(int i) { return {EdgeFamily::prime, i}; }

  /// "e3" or "ep3".
  std::string label() const {
    return (family == EdgeFamily::plain ? "e" : "ep") + std::to_string(index);
  }
  static EdgeId parse(const std::string& label) {
    if (label.size() >= 3 && label.compare(0, 2, "ep") == 0) return ep(std::stoi(label.substr(2)));
    if (label.size() >= 2 && label[0] == 'e') return e(std::stoi(label.substr(1)));
    throw std::invalid_argument("not an edge label: " + label);
  }

  friend auto operator<=>(const EdgeId&, const EdgeId&) = default;
};

using EdgeWord = std::vector<EdgeId>;

/// Image word of every contributing edge under the graph map of f^3.
class SpineMap {
 public:
  SpineMap(int n, int m, std::map<EdgeId, EdgeWord> images)
      : n_(n), m_(m), images_(std::move(images)) {
    for (const EdgeId& edge : edges()) {
      if (!images_.contains(edge)) throw std::invalid_argument("edge without image: " + edge.label());
    }
    if (images_.size() != static_cast<std::size_t>(n_ + m_)) {
      throw std::invalid_argument("image table has edges outside the spine");
    }
    for (const auto& [edge, word] : images_) {
      for (const EdgeId& letter : word) {
        if (!contains(letter)) throw std::invalid_argument("image letter outside the spine: " + letter.label());
      }
    }
  }

  int n() const { return n_; }
  int m() const { return m_; }

  bool contains(const EdgeId& edge) const {
    const int bound = edge.family == EdgeFamily::plain ? n_ : m_;
    return edge.index >= 1 && edge.index <= bound;
  }

  /// e_1..e_n then e'_1..e'_m; this is also the matrix index order.
  std::vector<EdgeId> edges() const {
    std::vector<EdgeId> out;
    out.reserve(static_cast<std::size_t>(n_ + m_));
    for (int i = 1; i <= n_; ++i) out.push_back(EdgeId::e(i));
    for (int i = 1; i <= m_; ++i) out.push_back(EdgeId::ep(i));
    return out;
  }

  std::size_t index_of(const EdgeId& edge) const {
    if (!contains(edge)) throw std::out_of_range("edge not in spine: " + edge.label());
    return edge.family == EdgeFamily::plain ? static_cast<std::size_t>(edge.index - 1)
                                            : static_cast<std::size_t>(n_ + edge.index - 1);
  }

  const EdgeWord& image(const EdgeId& edge) const { return images_.at(edge); }
  const std::map<EdgeId, EdgeWord>& images() const { return images_; }

  /// The six edges whose images have length > 1, in decreasing word length.
  std::vector<EdgeId> special_edges() const {
    return {EdgeId::ep(1), EdgeId::e(n_), EdgeId::ep(m_), EdgeId::e(n_ - 1), EdgeId::ep(m_ - 1),
            EdgeId::e(n_ - 2)};
  }

 private:
  int n_;
  int m_;
  std::map<EdgeId, EdgeWord> images_;
};

inline void require_spine_parameters(int n, int m) {
  if (n < 7 || m < 7) {
    throw std::domain_error("spine requires n >= 7 and m >= 7 (got n=" + std::to_string(n) +
                            ", m=" + std::to_string(m) + ")");
  }
}

/// Graph map of f^3 on the contributing edges. The prime shift
/// e'_i -> e'_{i+3} for 1 < i <= m-2 wraps e'_{m+1} to e'_1.
inline SpineMap build_f3_spine_map(int n, int m) {
  require_spine_parameters(n, m);
  using E = EdgeId;
  std::map<EdgeId, EdgeWord> images;
  for (int i = 1; i <= n - 3; ++i) images[E::e(i)] = {E::e(i + 3)};
  for (int i = 2; i <= m - 2; ++i) images[E::ep(i)] = {E::ep(i + 3 <= m ? i + 3 : i + 3 - m)};

  images[E::ep(1)] = {E::ep(4), E::ep(4), E::ep(3), E::ep(3), E::ep(2), E::ep(2), E::ep(1),
                      E::e(1),  E::e(2),  E::e(2),  E::e(3),  E::e(3),  E::e(4)};
  images[E::e(n)] = {E::e(3),  E::e(3),  E::e(2),  E::e(2),  E::e(1), E::ep(1),
                     E::ep(2), E::ep(2), E::ep(3), E::ep(3), E::ep(4)};
  images[E::ep(m)] = {E::ep(3), E::ep(3), E::ep(2), E::ep(2), E::ep(1),
                      E::e(1),  E::e(2),  E::e(2),  E::e(3)};
  images[E::e(n - 1)] = {E::e(2), E::e(2), E::e(1), E::ep(1), E::ep(2), E::ep(2), E::ep(3)};
  images[E::ep(m - 1)] = {E::ep(2), E::ep(2), E::ep(1), E::e(1), E::e(2)};
  images[E::e(n - 2)] = {E::e(1), E::ep(1), E::ep(2)};
  return SpineMap(n, m, std::move(images));
}

/// Sparse square non-negative integer matrix; rows are sources.
class TransitionMatrix {
 public:
  struct Entry {
    std::size_t col;
    std::int64_t count;
    friend bool operator==(const Entry&, const Entry&) = default;
  };

  TransitionMatrix() = default;

  TransitionMatrix(std::vector<std::string> labels, std::vector<std::vector<Entry>> rows)
      : labels_(std::move(labels)), rows_(std::move(rows)) {
    if (labels_.size() != rows_.size()) throw std::invalid_argument("label/row count mismatch");
    for (auto& row : rows_) normalize(row);
  }

  /// Labels default to V1..Vd.
  static TransitionMatrix from_dense(const std::vector<std::vector<std::int64_t>>& dense,
                                     std::vector<std::string> labels = {}) {
    const std::size_t d = dense.size();
    if (labels.empty()) {
      for (std::size_t i = 0; i < d; ++i) labels.push_back("V" + std::to_string(i + 1));
    }
    std::vector<std::vector<Entry>> rows(d);
    for (std::size_t i = 0; i < d; ++i) {
      if (dense[i].size() != d) throw std::invalid_argument("matrix is not square");
      for (std::size_t j = 0; j < d; ++j) {
        if (dense[i][j] != 0) rows[i].push_back({j, dense[i][j]});
      }
    }
    return TransitionMatrix(std::move(labels), std::move(rows));
  }

  std::size_t dim() const { return rows_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  std::optional<std::size_t> index_of(const std::string& label) const {
    const auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - labels_.begin());
  }

  std::span<const Entry> row(std::size_t i) const { return rows_.at(i); }

  std::int64_t entry(std::size_t r, std::size_t c) const {
    for (const Entry& e : rows_.at(r)) {
      if (e.col == c) return e.count;
    }
    return 0;
  }

  std::int64_t row_sum(std::size_t r) const {
    std::int64_t s = 0;
    for (const Entry& e : rows_.at(r)) s = checked_add(s, e.count);
    return s;
  }

  std::int64_t total() const {
    std::int64_t s = 0;
    for (std::size_t r = 0; r < dim(); ++r) s = checked_add(s, row_sum(r));
    return s;
  }

  std::int64_t max_entry() const {
    std::int64_t mx = 0;
    for (const auto& row : rows_) {
      for (const Entry& e : row) mx = std::max(mx, e.count);
    }
    return mx;
  }

  std::size_t nonzeros() const {
    std::size_t s = 0;
    for (const auto& row : rows_) s += row.size();
    return s;
  }

  std::vector<std::vector<std::int64_t>> dense() const {
    std::vector<std::vector<std::int64_t>> out(dim(), std::vector<std::int64_t>(dim(), 0));
    for (std::size_t r = 0; r < dim(); ++r) {
      for (const Entry& e : rows_[r]) out[r][e.col] = e.count;
    }
    return out;
  }

  /// Copy with row r replaced.
  TransitionMatrix with_row(std::size_t r, std::vector<Entry> entries) const {
    TransitionMatrix copy = *this;
    normalize(entries);
    copy.rows_.at(r) = std::move(entries);
    return copy;
  }

  /// P' with P'[pi(i)][pi(j)] = P[i][j].
  TransitionMatrix permuted(const std::vector<std::size_t>& pi) const {
    if (pi.size() != dim()) throw std::invalid_argument("permutation size mismatch");
    std::vector<std::string> labels(dim());
    std::vector<std::vector<Entry>> rows(dim());
    for (std::size_t i = 0; i < dim(); ++i) {
      labels[pi[i]] = labels_[i];
      for (const Entry& e : rows_[i]) rows[pi[i]].push_back({pi[e.col], e.count});
    }
    return TransitionMatrix(std::move(labels), std::move(rows));
  }

  friend bool operator==(const TransitionMatrix&, const TransitionMatrix&) = default;

 private:
  static std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t out = 0;
    if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("matrix row sum overflow");
    return out;
  }

  void normalize(std::vector<Entry>& row) const {
    std::sort(row.begin(), row.end(), [](const Entry& a, const Entry& b) { return a.col < b.col; });
    std::vector<Entry> merged;
    for (const Entry& e : row) {
      if (e.count < 0) throw std::invalid_argument("negative transition count");
      if (e.col >= rows_.size()) throw std::out_of_range("column index out of range");
      if (e.count == 0) continue;
      if (!merged.empty() && merged.back().col == e.col) {
        merged.back().count = checked_add(merged.back().count, e.count);
      } else {
        merged.push_back(e);
      }
    }
    row = std::move(merged);
  }

  std::vector<std::string> labels_;
  std::vector<std::vector<Entry>> rows_;
};

/// Entry (e, e'') counts occurrences of e'' in image(e).
inline TransitionMatrix transition_matrix(const SpineMap& map) {
  const std::vector<EdgeId> edges = map.edges();
  std::vector<std::string> labels;
  std::vector<std::vector<TransitionMatrix::Entry>> rows(edges.size());
  for (const EdgeId& edge : edges) labels.push_back(edge.label());
  for (const EdgeId& edge : edges) {
    auto& row = rows[map.index_of(edge)];
    for (const EdgeId& letter : map.image(edge)) row.push_back({map.index_of(letter), 1});
  }
  return TransitionMatrix(std::move(labels), std::move(rows));
}

/// Block form T = [[A, *], [0, P]]: A permutes the loop edges a_i, a'_i and
/// peripheral edges b_i, b'_i; P is the contributing-edge block.
struct BlockDecomposition {
  int n = 0;
  int m = 0;
  std::vector<std::string> permutation_labels;  ///< a1..an, ap1..apm, b1..bn, bp1..bpm
  std::vector<std::size_t> permutation;         ///< A[i][permutation[i]] = 1
  TransitionMatrix perron_block;

  bool permutation_is_bijective() const {
    std::vector<bool> hit(permutation.size(), false);
    for (std::size_t target : permutation) {
      if (target >= hit.size() || hit[target]) return false;
      hit[target] = true;
    }
    return true;
  }

  TransitionMatrix permutation_matrix() const {
    std::vector<std::vector<TransitionMatrix::Entry>> rows(permutation.size());
    for (std::size_t i = 0; i < permutation.size(); ++i) rows[i].push_back({permutation[i], 1});
    return TransitionMatrix(permutation_labels, std::move(rows));
  }
};

/// The loop and peripheral edges sit at the n + m slots of the joint puncture
/// orbit (X's slots then Y's); f advances every slot by one, so f^3 by three.
inline BlockDecomposition block_decomposition(int n, int m) {
  require_spine_parameters(n, m);
  BlockDecomposition out;
  out.n = n;
  out.m = m;
  const std::size_t slots = static_cast<std::size_t>(n + m);
  for (const char* family : {"a", "b"}) {
    for (int i = 1; i <= n; ++i) out.permutation_labels.push_back(std::string(family) + std::to_string(i));
    for (int i = 1; i <= m; ++i) out.permutation_labels.push_back(std::string(family) + "p" + std::to_string(i));
  }
  out.permutation.resize(2 * slots);
  for (std::size_t block = 0; block < 2; ++block) {
    for (std::size_t s = 0; s < slots; ++s) {
      out.permutation[block * slots + s] = block * slots + (s + 3) % slots;
    }
  }
  out.perron_block = transition_matrix(build_f3_spine_map(n, m));
  return out;
}

/// Directed multigraph of a non-negative integer matrix: T[i][j] parallel arcs V_i -> V_j.
class DirectedMultigraph {
 public:
  struct Arc {
    std::size_t from;
    std::size_t to;
    std::int64_t multiplicity;
  };

  explicit DirectedMultigraph(const TransitionMatrix& t) : labels_(t.labels()), out_(t.dim()) {
    for (std::size_t r = 0; r < t.dim(); ++r) {
      for (const auto& e : t.row(r)) {
        out_[r].push_back({r, e.col, e.count});
        arc_count_ += e.count;
      }
    }
  }

  std::size_t vertex_count() const { return out_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  std::span<const Arc> out_arcs(std::size_t v) const { return out_.at(v); }
  /// Arcs counted with multiplicity.
  const BigInt& arc_count() const { return arc_count_; }

  /// Strongly connected components (Tarjan, iterative); component ids in
  /// reverse topological order of discovery.
  std::vector<std::size_t> components(std::size_t* count = nullptr) const {
    const std::size_t nv = vertex_count();
    constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
    std::vector<std::size_t> index(nv, kUnset), low(nv, 0), comp(nv, kUnset);
    std::vector<bool> on_stack(nv, false);
    std::vector<std::size_t> stack;
    std::size_t next_index = 0;
    std::size_t next_comp = 0;
    std::vector<std::pair<std::size_t, std::size_t>> call;  // (vertex, next arc)
    for (std::size_t root = 0; root < nv; ++root) {
      if (index[root] != kUnset) continue;
      call.push_back({root, 0});
      index[root] = low[root] = next_index++;
      stack.push_back(root);
      on_stack[root] = true;
      while (!call.empty()) {
        auto& [v, arc] = call.back();
        if (arc < out_[v].size()) {
          const std::size_t w = out_[v][arc++].to;
          if (index[w] == kUnset) {
            index[w] = low[w] = next_index++;
            stack.push_back(w);
            on_stack[w] = true;
            call.push_back({w, 0});
          } else if (on_stack[w]) {
            low[v] = std::min(low[v], index[w]);
          }
          continue;
        }
        if (low[v] == index[v]) {
          std::size_t w = kUnset;
          do {
            w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            comp[w] = next_comp;
          } while (w != v);
          ++next_comp;
        }
        const std::size_t finished = v;
        call.pop_back();
        if (!call.empty()) {
          const std::size_t parent = call.back().first;
          low[parent] = std::min(low[parent], low[finished]);
        }
      }
    }
    if (count != nullptr) *count = next_comp;
    return comp;
  }

  bool strongly_connected() const {
    if (vertex_count() == 0) return false;
    std::size_t count = 0;
    components(&count);
    return count == 1;
  }

 private:
  std::vector<std::string> labels_;
  std::vector<std::vector<Arc>> out_;
  BigInt arc_count_ = 0;
};

inline DirectedMultigraph directed_graph(const TransitionMatrix& p) { return DirectedMultigraph(p); }

}  // namespace pacert
