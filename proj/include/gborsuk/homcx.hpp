#pragma once

#include "gborsuk/group.hpp"
#include "gborsuk/quotient.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gborsuk {

class hom_error : public std::runtime_error {
 public:
  enum class kind { too_large, size_mismatch };

  hom_error(kind k, const std::string& msg) : std::runtime_error(msg), kind_(k) {}
  kind which() const { return kind_; }

 private:
  kind kind_;
};

/// A cell of the prodsimplicial complex Hom(K_m, H): one nonempty subset of
/// V(H) per source vertex, any cross pair being an edge of H.
struct ProdCell {
  std::vector<std::vector<int>> parts;  // sorted subsets

  int dim() const {
    int d = 0;
    for (const auto& p : parts) d += static_cast<int>(p.size()) - 1;
    return d;
  }

  bool operator==(const ProdCell& o) const { return parts == o.parts; }
  bool operator<(const ProdCell& o) const { return parts < o.parts; }
};

inline QuotGraph complete_graph(int t) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < t; ++i)
    for (int j = i + 1; j < t; ++j) edges.emplace_back(i, j);
  return QuotGraph::from_edges(t, std::move(edges), {}, "K" + std::to_string(t));
}

namespace detail {

struct HomEnumerator {
  const QuotGraph& h;
  int m;
  std::optional<int> max_dim;
  std::size_t guard;
  std::size_t work = 0;
  std::vector<ProdCell> cells;
  std::vector<std::vector<int>> current;

  void tick() {
    if (++work > guard)
      throw hom_error(hom_error::kind::too_large,
                      "hom cell enumeration exceeded the size guard");
  }

  // Candidates for the next part: vertices adjacent to everything chosen.
  std::vector<int> candidates() const {
    std::vector<int> out;
    for (int v = 0; v < h.n; ++v) {
      bool ok = true;
      for (const auto& part : current) {
        for (int u : part)
          if (!h.adjacent(u, v)) {
            ok = false;
            break;
          }
        if (!ok) break;
      }
      if (ok) out.push_back(v);
    }
    return out;
  }

  void extend(int pos, int dim_so_far) {
    if (pos == m) {
      cells.push_back(ProdCell{current});
      return;
    }
    std::vector<int> cand = candidates();
    int nc = static_cast<int>(cand.size());
    if (nc == 0) return;
    if (nc > 24)
      throw hom_error(hom_error::kind::too_large,
                      "candidate set too large for subset enumeration");
    for (unsigned mask = 1; mask < (1u << nc); ++mask) {
      tick();
      int extra = std::popcount(mask) - 1;
      if (max_dim && dim_so_far + extra > *max_dim) continue;
      std::vector<int> part;
      for (int i = 0; i < nc; ++i)
        if (mask >> i & 1) part.push_back(cand[i]);
      current.push_back(std::move(part));
      extend(pos + 1, dim_so_far + extra);
      current.pop_back();
    }
  }
};

}  // namespace detail

/// All cells of Hom(K_m, H), optionally capped by dimension. The target
/// must be loop-free; enumeration is guarded against blowup.
inline std::vector<ProdCell> hom_cells(int m, const QuotGraph& h,
                                       std::optional<int> max_dim = std::nullopt,
                                       std::size_t guard = 2'000'000) {
  if (m < 1) throw std::invalid_argument("hom_cells requires m >= 1");
  if (h.has_loops())
    throw std::invalid_argument("hom_cells requires a loop-free target");
  detail::HomEnumerator e{h, m, max_dim, guard};
  e.extend(0, 0);
  std::sort(e.cells.begin(), e.cells.end());
  return e.cells;
}

/// dim Hom(K_m, K_t) by enumeration, with a witness cell of that dimension.
inline std::pair<int, ProdCell> hom_dimension_complete(int m, int t) {
  if (m > t) throw std::invalid_argument("hom_dimension_complete requires m <= t");
  auto cells = hom_cells(m, complete_graph(t));
  int best = -1;
  ProdCell witness;
  for (const auto& c : cells) {
    if (c.dim() > best) {
      best = c.dim();
      witness = c;
    }
  }
  return {best, witness};
}

/// The G-action on cells of Hom(K_|G|, H): g permutes the coordinates by
/// right multiplication, (g sigma)_i = sigma_{pi(i)} with g_i g = g_{pi(i)}.
inline ProdCell act_on_cell(const GroupTable& g, int elem, const ProdCell& cell) {
  int m = g.order();
  if (static_cast<int>(cell.parts.size()) != m)
    throw hom_error(hom_error::kind::size_mismatch,
                    "cell arity does not match the group order");
  ProdCell out;
  out.parts.resize(m);
  for (int i = 0; i < m; ++i) out.parts[i] = cell.parts[g.mul(i, elem)];
  return out;
}

/// The 1-skeleton of Hom(K_m, H): vertices are the graph homomorphisms
/// K_m -> H, edges join homomorphisms differing in exactly one value.
inline QuotGraph hom_one_skeleton(int m, const QuotGraph& h,
                                  std::size_t guard = 2'000'000) {
  auto zero_cells = hom_cells(m, h, 0, guard);
  int n = static_cast<int>(zero_cells.size());
  std::vector<std::pair<int, int>> edges;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      int diff = 0;
      for (int i = 0; i < m && diff < 2; ++i)
        if (zero_cells[a].parts[i] != zero_cells[b].parts[i]) ++diff;
      if (diff == 1) edges.emplace_back(a, b);
    }
  return QuotGraph::from_edges(n, std::move(edges), {}, "hom_skeleton");
}

inline nlohmann::json cells_to_json(const std::vector<ProdCell>& cells) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& c : cells) out.push_back(c.parts);
  return out;
}

}  // namespace gborsuk
