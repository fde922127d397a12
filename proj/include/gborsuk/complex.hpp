#pragma once

#include "gborsuk/group.hpp"
#include "gborsuk/rational.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gborsuk {

class complex_error : public std::runtime_error {
 public:
  enum class kind { dimension_too_high, group_mismatch, bad_action, bad_complex };

  complex_error(kind k, const std::string& msg) : std::runtime_error(msg), kind_(k) {}
  kind which() const { return kind_; }

 private:
  kind kind_;
};

/// A triangulation vertex: an exact rational convex combination of atomic
/// vertices. Weights are strictly positive and sum to 1; entries are sorted
/// by atom id, so equal labels compare equal.
struct VertexLabel {
  std::vector<std::pair<int, Rational>> weights;

  static VertexLabel atom(int id) { return VertexLabel{{{id, Rational(1)}}}; }

  bool operator==(const VertexLabel& o) const { return weights == o.weights; }
  bool operator<(const VertexLabel& o) const { return weights < o.weights; }

  Rational total() const {
    Rational s = 0;
    for (const auto& [a, w] : weights) s += w;
    return s;
  }

  Rational weight_of(int atom_id) const {
    for (const auto& [a, w] : weights)
      if (a == atom_id) return w;
    return Rational(0);
  }

  /// Applies an atom permutation to the support.
  VertexLabel acted(std::span<const int> atom_perm) const {
    VertexLabel out;
    out.weights.reserve(weights.size());
    for (const auto& [a, w] : weights) out.weights.emplace_back(atom_perm[a], w);
    std::sort(out.weights.begin(), out.weights.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    return out;
  }

  /// Exact uniform average of a set of labels.
  static VertexLabel average(std::span<const VertexLabel> labels) {
    std::map<int, Rational> acc;
    for (const auto& l : labels)
      for (const auto& [a, w] : l.weights) acc[a] += w;
    Rational n(static_cast<int>(labels.size()));
    VertexLabel out;
    out.weights.reserve(acc.size());
    for (auto& [a, w] : acc) out.weights.emplace_back(a, w / n);
    return out;
  }

  static VertexLabel midpoint(const VertexLabel& a, const VertexLabel& b) {
    VertexLabel pair[2] = {a, b};
    return average(pair);
  }

  /// Convex combination (1-t)*a + t*b.
  static VertexLabel mix(const VertexLabel& a, const VertexLabel& b, const Rational& t) {
    std::map<int, Rational> acc;
    for (const auto& [id, w] : a.weights) acc[id] += w * (1 - t);
    for (const auto& [id, w] : b.weights) acc[id] += w * t;
    VertexLabel out;
    for (auto& [id, w] : acc)
      if (w != 0) out.weights.emplace_back(id, w);
    return out;
  }
};

struct FreenessResult {
  bool free = true;
  int face = -1;  // index of a violating maximal face, when not free
  int g = -1;     // the violating non-identity element
};

/// A finite free G-simplicial complex with exact rational vertex labels.
///
/// Atoms carry the group action as permutation tables; triangulation
/// vertices are labels over atoms; faces are stored as maximal faces.
/// The induced vertex action is derived at construction and construction
/// fails if the atom action does not permute labels and faces.
/// Instances are immutable; subdivisions build new values.
class GComplex {
 public:
  GComplex(GroupTable group, int num_atoms, std::vector<std::vector<int>> atom_action,
           std::vector<VertexLabel> vertices, std::vector<std::vector<int>> maximal_faces,
           std::vector<VertexLabel> tracking = {}, int tracking_dim = 0)
      : group_(std::move(group)),
        num_atoms_(num_atoms),
        atom_action_(std::move(atom_action)),
        vertices_(std::move(vertices)),
        faces_(std::move(maximal_faces)),
        tracking_(std::move(tracking)),
        tracking_dim_(tracking_dim) {
    validate_atom_action();
    normalize_faces();
    build_vertex_index();
    build_vertex_action();
    check_faces_invariant();
  }

  const GroupTable& group() const { return group_; }
  int num_atoms() const { return num_atoms_; }
  int atom_action(int g, int a) const { return atom_action_[g][a]; }
  const std::vector<std::vector<int>>& atom_actions() const { return atom_action_; }

  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  const VertexLabel& label(int v) const { return vertices_[v]; }
  const std::vector<VertexLabel>& labels() const { return vertices_; }

  int vertex_action(int g, int v) const { return vertex_action_[g][v]; }
  const std::vector<std::vector<int>>& vertex_actions() const { return vertex_action_; }

  const std::vector<std::vector<int>>& maximal_faces() const { return faces_; }
  int dim() const { return dim_; }
  bool is_pure() const { return pure_; }

  int vertex_of_label(const VertexLabel& l) const {
    auto it = vertex_index_.find(l);
    return it == vertex_index_.end() ? -1 : it->second;
  }

  /// All 1-simplices, as sorted pairs, derived from the maximal faces.
  std::vector<std::pair<int, int>> all_edges() const {
    std::set<std::pair<int, int>> es;
    for (const auto& f : faces_)
      for (size_t i = 0; i < f.size(); ++i)
        for (size_t j = i + 1; j < f.size(); ++j) es.emplace(f[i], f[j]);
    return {es.begin(), es.end()};
  }

  bool has_tracking() const { return !tracking_.empty(); }
  int tracking_dim() const { return tracking_dim_; }
  const VertexLabel& tracking(int v) const { return tracking_[v]; }

  /// Returns a copy whose tracking coordinates are the identity on the
  /// current vertex set. Subdivisions propagate tracking by the same exact
  /// averaging as labels, so tracked positions stay expressed in this
  /// complex's vertices.
  GComplex with_identity_tracking() const {
    GComplex c = *this;
    c.tracking_.clear();
    c.tracking_.reserve(vertices_.size());
    for (int v = 0; v < num_vertices(); ++v) c.tracking_.push_back(VertexLabel::atom(v));
    c.tracking_dim_ = num_vertices();
    return c;
  }

  GComplex with_tracking(std::vector<VertexLabel> tracking, int tracking_dim) const {
    if (tracking.size() != vertices_.size())
      throw std::invalid_argument("tracking size must match vertex count");
    GComplex c = *this;
    c.tracking_ = std::move(tracking);
    c.tracking_dim_ = tracking_dim;
    return c;
  }

  nlohmann::json to_json() const {
    nlohmann::json atoms = nlohmann::json::array();
    for (int a = 0; a < num_atoms_; ++a) {
      nlohmann::json action = nlohmann::json::array();
      for (int g = 0; g < group_.order(); ++g) action.push_back(atom_action_[g][a]);
      atoms.push_back({{"id", a}, {"action", action}});
    }
    nlohmann::json verts = nlohmann::json::array();
    for (const auto& v : vertices_) {
      nlohmann::json lbl = nlohmann::json::object();
      for (const auto& [a, w] : v.weights) lbl[std::to_string(a)] = to_string(w);
      verts.push_back(lbl);
    }
    return {{"group", group_.to_json()},
            {"atoms", atoms},
            {"vertices", verts},
            {"faces", faces_}};
  }

  static GComplex from_json(const nlohmann::json& j) {
    GroupTable g = GroupTable::from_json(j.at("group"));
    int na = static_cast<int>(j.at("atoms").size());
    std::vector<std::vector<int>> action(g.order(), std::vector<int>(na));
    for (const auto& a : j.at("atoms")) {
      int id = a.at("id").get<int>();
      auto row = a.at("action").get<std::vector<int>>();
      for (int e = 0; e < g.order(); ++e) action[e][id] = row[e];
    }
    std::vector<VertexLabel> verts;
    for (const auto& vj : j.at("vertices")) {
      VertexLabel l;
      for (auto it = vj.begin(); it != vj.end(); ++it)
        l.weights.emplace_back(std::stoi(it.key()), parse_rational(it.value().get<std::string>()));
      std::sort(l.weights.begin(), l.weights.end(),
                [](const auto& x, const auto& y) { return x.first < y.first; });
      verts.push_back(std::move(l));
    }
    auto faces = j.at("faces").get<std::vector<std::vector<int>>>();
    return GComplex(std::move(g), na, std::move(action), std::move(verts), std::move(faces));
  }

 private:
  void validate_atom_action() {
    int m = group_.order();
    if (static_cast<int>(atom_action_.size()) != m)
      throw complex_error(complex_error::kind::bad_action, "atom action missing group elements");
    for (const auto& row : atom_action_) {
      if (static_cast<int>(row.size()) != num_atoms_)
        throw complex_error(complex_error::kind::bad_action, "atom action row size mismatch");
      std::vector<char> seen(num_atoms_, 0);
      for (int x : row) {
        if (x < 0 || x >= num_atoms_ || seen[x]++)
          throw complex_error(complex_error::kind::bad_action,
                              "atom action is not a permutation");
      }
    }
    for (int a = 0; a < num_atoms_; ++a)
      if (atom_action_[0][a] != a)
        throw complex_error(complex_error::kind::bad_action, "identity must act trivially");
    for (int g = 0; g < m; ++g)
      for (int h = 0; h < m; ++h)
        for (int a = 0; a < num_atoms_; ++a)
          if (atom_action_[g][atom_action_[h][a]] != atom_action_[group_.mul(g, h)][a])
            throw complex_error(complex_error::kind::bad_action,
                                "atom action is not a group action");
  }

  void normalize_faces() {
    for (auto& f : faces_) {
      std::sort(f.begin(), f.end());
      if (std::adjacent_find(f.begin(), f.end()) != f.end())
        throw complex_error(complex_error::kind::bad_complex, "face has repeated vertices");
      for (int v : f)
        if (v < 0 || v >= static_cast<int>(vertices_.size()))
          throw complex_error(complex_error::kind::bad_complex, "face vertex out of range");
    }
    std::sort(faces_.begin(), faces_.end());
    faces_.erase(std::unique(faces_.begin(), faces_.end()), faces_.end());
    if (faces_.empty())
      throw complex_error(complex_error::kind::bad_complex, "complex has no faces");
    dim_ = 0;
    size_t mx = 0, mn = SIZE_MAX;
    for (const auto& f : faces_) {
      mx = std::max(mx, f.size());
      mn = std::min(mn, f.size());
    }
    dim_ = static_cast<int>(mx) - 1;
    pure_ = (mx == mn);
    for (const auto& v : vertices_) {
      if (v.weights.empty() || v.total() != 1)
        throw complex_error(complex_error::kind::bad_complex,
                            "vertex label weights must be positive and sum to 1");
      for (const auto& [a, w] : v.weights)
        if (w <= 0 || a < 0 || a >= num_atoms_)
          throw complex_error(complex_error::kind::bad_complex, "bad vertex label entry");
    }
  }

  void build_vertex_index() {
    for (int v = 0; v < num_vertices(); ++v) {
      if (!vertex_index_.emplace(vertices_[v], v).second)
        throw complex_error(complex_error::kind::bad_complex, "duplicate vertex label");
    }
  }

  void build_vertex_action() {
    int m = group_.order();
    vertex_action_.assign(m, std::vector<int>(num_vertices()));
    for (int g = 0; g < m; ++g) {
      for (int v = 0; v < num_vertices(); ++v) {
        VertexLabel moved = vertices_[v].acted(atom_action_[g]);
        auto it = vertex_index_.find(moved);
        if (it == vertex_index_.end())
          throw complex_error(complex_error::kind::bad_action,
                              "group action does not permute triangulation vertices");
        vertex_action_[g][v] = it->second;
      }
    }
  }

  void check_faces_invariant() const {
    std::set<std::vector<int>> face_set(faces_.begin(), faces_.end());
    for (int g = 1; g < group_.order(); ++g) {
      for (const auto& f : faces_) {
        std::vector<int> img(f.size());
        for (size_t i = 0; i < f.size(); ++i) img[i] = vertex_action_[g][f[i]];
        std::sort(img.begin(), img.end());
        if (!face_set.count(img))
          throw complex_error(complex_error::kind::bad_action,
                              "group action does not map faces to faces");
      }
    }
  }

  GroupTable group_;
  int num_atoms_;
  std::vector<std::vector<int>> atom_action_;
  std::vector<VertexLabel> vertices_;
  std::vector<std::vector<int>> faces_;
  std::vector<VertexLabel> tracking_;
  int tracking_dim_ = 0;
  std::map<VertexLabel, int> vertex_index_;
  std::vector<std::vector<int>> vertex_action_;
  int dim_ = 0;
  bool pure_ = true;
};

/// G as a 0-dimensional complex, one atom per element, acting by left
/// multiplication.
inline GComplex group_complex(const GroupTable& g) {
  int m = g.order();
  std::vector<std::vector<int>> action(m, std::vector<int>(m));
  for (int e = 0; e < m; ++e)
    for (int a = 0; a < m; ++a) action[e][a] = g.mul(e, a);
  std::vector<VertexLabel> verts;
  std::vector<std::vector<int>> faces;
  for (int a = 0; a < m; ++a) {
    verts.push_back(VertexLabel::atom(a));
    faces.push_back({a});
  }
  return GComplex(g, m, std::move(action), std::move(verts), std::move(faces));
}

/// The m-cycle with vertices labeled by Z_m, acting by rotation.
inline GComplex cycle_complex(int m) {
  if (m < 3) throw std::invalid_argument("cycle_complex requires m >= 3");
  GroupTable g = GroupTable::cyclic(m);
  std::vector<std::vector<int>> action(m, std::vector<int>(m));
  for (int e = 0; e < m; ++e)
    for (int a = 0; a < m; ++a) action[e][a] = (a + e) % m;
  std::vector<VertexLabel> verts;
  std::vector<std::vector<int>> faces;
  for (int a = 0; a < m; ++a) {
    verts.push_back(VertexLabel::atom(a));
    faces.push_back({a, (a + 1) % m});
  }
  return GComplex(std::move(g), m, std::move(action), std::move(verts), std::move(faces));
}

/// Simplicial join with the diagonal action. Atoms and vertices of l are
/// shifted past k's; vertex order is k's vertices then l's.
inline GComplex join(const GComplex& k, const GComplex& l) {
  if (!(k.group() == l.group()))
    throw complex_error(complex_error::kind::group_mismatch,
                        "join requires the same group on both factors");
  int m = k.group().order();
  int na = k.num_atoms() + l.num_atoms();
  std::vector<std::vector<int>> action(m, std::vector<int>(na));
  for (int g = 0; g < m; ++g) {
    for (int a = 0; a < k.num_atoms(); ++a) action[g][a] = k.atom_action(g, a);
    for (int a = 0; a < l.num_atoms(); ++a)
      action[g][k.num_atoms() + a] = k.num_atoms() + l.atom_action(g, a);
  }
  std::vector<VertexLabel> verts = k.labels();
  for (const auto& v : l.labels()) {
    VertexLabel shifted = v;
    for (auto& [a, w] : shifted.weights) a += k.num_atoms();
    verts.push_back(std::move(shifted));
  }
  std::vector<std::vector<int>> faces;
  faces.reserve(k.maximal_faces().size() * l.maximal_faces().size());
  for (const auto& fk : k.maximal_faces())
    for (const auto& fl : l.maximal_faces()) {
      std::vector<int> f = fk;
      for (int v : fl) f.push_back(k.num_vertices() + v);
      faces.push_back(std::move(f));
    }
  return GComplex(k.group(), na, std::move(action), std::move(verts), std::move(faces));
}

/// E_d G as an iterated join. For the standard cyclic table with m >= 3 the
/// E_1 layer is the m-cycle; otherwise G^{*(d+1)}.
inline GComplex classifying_space(const GroupTable& g, int d) {
  if (d < 0) throw std::invalid_argument("classifying_space requires d >= 0");
  if (d == 0) return group_complex(g);
  bool standard_cyclic = g.order() >= 3 && g == GroupTable::cyclic(g.order());
  GComplex e = standard_cyclic ? cycle_complex(g.order())
                               : join(group_complex(g), group_complex(g));
  for (int i = 2; i <= d; ++i) e = join(group_complex(g), e);
  return e;
}

namespace detail {

/// Incremental vertex table for subdivisions: dedups labels, propagates
/// tracking by the same averaging.
struct VertexBuilder {
  std::vector<VertexLabel> labels;
  std::vector<VertexLabel> tracking;
  bool track;
  std::map<VertexLabel, int> index;

  explicit VertexBuilder(const GComplex& t) : track(t.has_tracking()) {
    labels = t.labels();
    if (track)
      for (int v = 0; v < t.num_vertices(); ++v) tracking.push_back(t.tracking(v));
    for (int v = 0; v < t.num_vertices(); ++v) index.emplace(labels[v], v);
  }

  int intern(VertexLabel lbl, VertexLabel trk) {
    auto it = index.find(lbl);
    if (it != index.end()) return it->second;
    int id = static_cast<int>(labels.size());
    index.emplace(lbl, id);
    labels.push_back(std::move(lbl));
    if (track) tracking.push_back(std::move(trk));
    return id;
  }

  int average_of(const GComplex& t, std::span<const int> verts) {
    std::vector<VertexLabel> ls;
    ls.reserve(verts.size());
    for (int v : verts) ls.push_back(t.label(v));
    VertexLabel lbl = VertexLabel::average(ls);
    VertexLabel trk;
    if (track) {
      std::vector<VertexLabel> ts;
      for (int v : verts) ts.push_back(t.tracking(v));
      trk = VertexLabel::average(ts);
    }
    return intern(std::move(lbl), std::move(trk));
  }

  int midpoint_of(const GComplex& t, int a, int b) {
    int vs[2] = {a, b};
    return average_of(t, vs);
  }
};

}  // namespace detail

/// Medial subdivision for complexes of dimension <= 2: every edge gains its
/// midpoint and each triangle is replaced by the four medial triangles.
inline GComplex medial_subdivide_2d(const GComplex& t) {
  if (t.dim() > 2)
    throw complex_error(complex_error::kind::dimension_too_high,
                        "medial_subdivide_2d requires dim <= 2");
  detail::VertexBuilder vb(t);
  std::vector<std::vector<int>> faces;
  for (const auto& f : t.maximal_faces()) {
    if (f.size() == 1) {
      faces.push_back(f);
    } else if (f.size() == 2) {
      int m = vb.midpoint_of(t, f[0], f[1]);
      faces.push_back({f[0], m});
      faces.push_back({m, f[1]});
    } else {
      int m01 = vb.midpoint_of(t, f[0], f[1]);
      int m02 = vb.midpoint_of(t, f[0], f[2]);
      int m12 = vb.midpoint_of(t, f[1], f[2]);
      faces.push_back({f[0], m01, m02});
      faces.push_back({f[1], m01, m12});
      faces.push_back({f[2], m02, m12});
      faces.push_back({m01, m02, m12});
    }
  }
  return GComplex(t.group(), t.num_atoms(), t.atom_actions(), std::move(vb.labels),
                  std::move(faces), std::move(vb.tracking), t.tracking_dim());
}

/// Medial subdivision for dimension <= 3: each tetrahedron splits into 4
/// corner tetrahedra plus 8 around the centroid; triangles and edges follow
/// the 2-dimensional rule, so shared faces subdivide compatibly.
inline GComplex medial_subdivide_3d(const GComplex& t) {
  if (t.dim() > 3)
    throw complex_error(complex_error::kind::dimension_too_high,
                        "medial_subdivide_3d requires dim <= 3");
  detail::VertexBuilder vb(t);
  std::vector<std::vector<int>> faces;
  for (const auto& f : t.maximal_faces()) {
    if (f.size() == 1) {
      faces.push_back(f);
    } else if (f.size() == 2) {
      int m = vb.midpoint_of(t, f[0], f[1]);
      faces.push_back({f[0], m});
      faces.push_back({m, f[1]});
    } else if (f.size() == 3) {
      int m01 = vb.midpoint_of(t, f[0], f[1]);
      int m02 = vb.midpoint_of(t, f[0], f[2]);
      int m12 = vb.midpoint_of(t, f[1], f[2]);
      faces.push_back({f[0], m01, m02});
      faces.push_back({f[1], m01, m12});
      faces.push_back({f[2], m02, m12});
      faces.push_back({m01, m02, m12});
    } else {
      int v1 = f[0], v2 = f[1], v3 = f[2], v4 = f[3];
      int m12 = vb.midpoint_of(t, v1, v2), m13 = vb.midpoint_of(t, v1, v3);
      int m14 = vb.midpoint_of(t, v1, v4), m23 = vb.midpoint_of(t, v2, v3);
      int m24 = vb.midpoint_of(t, v2, v4), m34 = vb.midpoint_of(t, v3, v4);
      int w = vb.average_of(t, f);
      faces.push_back({v1, m12, m13, m14});
      faces.push_back({v2, m12, m23, m24});
      faces.push_back({v3, m13, m23, m34});
      faces.push_back({v4, m14, m24, m34});
      faces.push_back({m12, m13, m14, w});
      faces.push_back({m12, m23, m24, w});
      faces.push_back({m13, m23, m34, w});
      faces.push_back({m14, m24, m34, w});
      faces.push_back({m12, m14, m24, w});
      faces.push_back({m12, m13, m23, w});
      faces.push_back({m13, m14, m34, w});
      faces.push_back({m23, m24, m34, w});
    }
  }
  return GComplex(t.group(), t.num_atoms(), t.atom_actions(), std::move(vb.labels),
                  std::move(faces), std::move(vb.tracking), t.tracking_dim());
}

/// Barycentric subdivision: one vertex per face of t (labeled by the exact
/// barycenter), facets are the maximal chains of faces. Barycenter vertices
/// of singletons keep the original vertex ids.
inline GComplex barycentric(const GComplex& t) {
  std::set<std::vector<int>> all_faces;
  for (const auto& f : t.maximal_faces()) {
    int n = static_cast<int>(f.size());
    for (int mask = 1; mask < (1 << n); ++mask) {
      std::vector<int> sub;
      for (int i = 0; i < n; ++i)
        if (mask & (1 << i)) sub.push_back(f[i]);
      all_faces.insert(std::move(sub));
    }
  }
  std::vector<std::vector<int>> face_list(all_faces.begin(), all_faces.end());
  std::sort(face_list.begin(), face_list.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  std::map<std::vector<int>, int> face_id;
  std::vector<VertexLabel> verts;
  std::vector<VertexLabel> tracking;
  bool track = t.has_tracking();
  for (const auto& f : face_list) {
    face_id.emplace(f, static_cast<int>(verts.size()));
    std::vector<VertexLabel> ls;
    for (int v : f) ls.push_back(t.label(v));
    verts.push_back(VertexLabel::average(ls));
    if (track) {
      std::vector<VertexLabel> ts;
      for (int v : f) ts.push_back(t.tracking(v));
      tracking.push_back(VertexLabel::average(ts));
    }
  }
  std::vector<std::vector<int>> chains;
  for (const auto& f : t.maximal_faces()) {
    std::vector<int> perm = f;
    std::sort(perm.begin(), perm.end());
    do {
      std::vector<int> chain;
      std::vector<int> prefix;
      for (int v : perm) {
        prefix.push_back(v);
        std::vector<int> key = prefix;
        std::sort(key.begin(), key.end());
        chain.push_back(face_id.at(key));
      }
      chains.push_back(std::move(chain));
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return GComplex(t.group(), t.num_atoms(), t.atom_actions(), std::move(verts),
                  std::move(chains), std::move(tracking), t.tracking_dim());
}

/// Splits every edge of a 1-dimensional complex into parts(a, b) equal
/// segments. The split count must be constant on G-orbits of edges or
/// construction of the result fails.
inline GComplex subdivide_edges(const GComplex& t,
                                const std::function<int(int, int)>& parts) {
  if (t.dim() > 1)
    throw complex_error(complex_error::kind::dimension_too_high,
                        "subdivide_edges requires dim <= 1");
  detail::VertexBuilder vb(t);
  std::vector<std::vector<int>> faces;
  for (const auto& f : t.maximal_faces()) {
    if (f.size() == 1) {
      faces.push_back(f);
      continue;
    }
    int n = parts(f[0], f[1]);
    if (n < 1) throw std::invalid_argument("edge split count must be >= 1");
    int prev = f[0];
    for (int k = 1; k <= n; ++k) {
      int next;
      if (k == n) {
        next = f[1];
      } else {
        Rational tk(k, n);
        VertexLabel lbl = VertexLabel::mix(t.label(f[0]), t.label(f[1]), tk);
        VertexLabel trk;
        if (vb.track) trk = VertexLabel::mix(t.tracking(f[0]), t.tracking(f[1]), tk);
        next = vb.intern(std::move(lbl), std::move(trk));
      }
      faces.push_back({prev, next});
      prev = next;
    }
  }
  return GComplex(t.group(), t.num_atoms(), t.atom_actions(), std::move(vb.labels),
                  std::move(faces), std::move(vb.tracking), t.tracking_dim());
}

inline GComplex subdivide_edges(const GComplex& t, int parts) {
  return subdivide_edges(t, [parts](int, int) { return parts; });
}

/// Simplicial freeness: every face disjoint from all of its non-identity
/// translates. Checking maximal faces suffices since subfaces inherit the
/// property. Violations are reported, not thrown.
inline FreenessResult check_free(const GComplex& t) {
  const auto& faces = t.maximal_faces();
  for (int g = 1; g < t.group().order(); ++g) {
    for (int fi = 0; fi < static_cast<int>(faces.size()); ++fi) {
      const auto& f = faces[fi];
      std::vector<int> img(f.size());
      for (size_t i = 0; i < f.size(); ++i) img[i] = t.vertex_action(g, f[i]);
      std::sort(img.begin(), img.end());
      std::vector<int> common;
      std::set_intersection(f.begin(), f.end(), img.begin(), img.end(),
                            std::back_inserter(common));
      if (!common.empty()) return {false, fi, g};
    }
  }
  return {};
}

}  // namespace gborsuk
