#ifndef BETTILIN_POSET_HPP
#define BETTILIN_POSET_HPP

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "bettilin/errors.hpp"

namespace bettilin {

/// A simplex: strictly increasing vertex ids. Orientation is the id order.
using Face = std::vector<int>;

struct FaceHash {
  std::size_t operator()(const Face& f) const noexcept {
    std::size_t h = f.size();
    for (int v : f) h ^= std::hash<int>{}(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

using Bitset = boost::dynamic_bitset<>;

/// A finite poset on elements 0..n-1. Each element carries a label and a
/// stable integer id; induced subposets keep the ids of their parent, so
/// simplicial complexes built from related posets share one vertex namespace.
class FinitePoset {
 public:
  FinitePoset() = default;

  /// Builds the poset from leq(i, j) and checks the partial-order axioms.
  template <class Leq>
  static FinitePoset from_relation(std::vector<std::string> labels, Leq&& leq, std::vector<int> ids = {}) {
    const std::size_t n = labels.size();
    std::vector<Bitset> down(n, Bitset(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (leq(j, i)) down[i].set(j);
      }
    }
    return FinitePoset(std::move(labels), std::move(ids), std::move(down));
  }

  /// down[x] = { y : y <= x }.
  FinitePoset(std::vector<std::string> labels, std::vector<int> ids, std::vector<Bitset> down)
      : labels_(std::move(labels)), ids_(std::move(ids)), down_(std::move(down)) {
    const std::size_t n = labels_.size();
    if (ids_.empty()) {
      ids_.resize(n);
      for (std::size_t i = 0; i < n; ++i) ids_[i] = static_cast<int>(i);
    }
    if (ids_.size() != n || down_.size() != n) throw std::invalid_argument("poset size mismatch");
    for (std::size_t i = 0; i < n; ++i) {
      if (down_[i].size() != n) throw std::invalid_argument("poset relation has wrong width");
      id_index_.emplace(ids_[i], i);
    }
    if (id_index_.size() != n) throw std::invalid_argument("poset ids are not distinct");
    validate();
    build_derived();
  }

  std::size_t size() const { return labels_.size(); }
  bool empty() const { return labels_.empty(); }

  bool leq(std::size_t a, std::size_t b) const { return down_.at(b).test(a); }
  bool less(std::size_t a, std::size_t b) const { return a != b && leq(a, b); }
  bool comparable(std::size_t a, std::size_t b) const { return leq(a, b) || leq(b, a); }

  const std::string& label(std::size_t i) const { return labels_.at(i); }
  const std::vector<std::string>& labels() const { return labels_; }
  int id(std::size_t i) const { return ids_.at(i); }
  const std::vector<int>& ids() const { return ids_; }
  std::optional<std::size_t> index_of_id(int id) const {
    auto it = id_index_.find(id);
    if (it == id_index_.end()) return std::nullopt;
    return it->second;
  }

  const Bitset& down_set(std::size_t x) const { return down_.at(x); }
  const Bitset& up_set(std::size_t x) const { return up_.at(x); }

  /// Elements covered by x.
  const std::vector<std::size_t>& lower_covers(std::size_t x) const { return lower_covers_.at(x); }
  /// Elements covering x.
  const std::vector<std::size_t>& upper_covers(std::size_t x) const { return upper_covers_.at(x); }
  bool covers(std::size_t upper, std::size_t lower) const {
    const auto& c = lower_covers_.at(upper);
    return std::find(c.begin(), c.end(), lower) != c.end();
  }

  const std::vector<std::size_t>& minimal() const { return minimal_; }
  const std::vector<std::size_t>& maximal() const { return maximal_; }
  bool is_minimal(std::size_t x) const { return dims_.at(x) == 0; }

  /// Length of the longest chain ending at x.
  int dimension(std::size_t x) const { return dims_.at(x); }

  /// Elements sorted so that y < x implies y comes first.
  const std::vector<std::size_t>& linear_extension() const { return linext_; }

  /// Induced subposet on the given elements (kept in ascending index order).
  FinitePoset induced(std::vector<std::size_t> subset) const {
    std::sort(subset.begin(), subset.end());
    subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
    const std::size_t m = subset.size();
    std::vector<std::string> labels;
    std::vector<int> ids;
    std::vector<Bitset> down(m, Bitset(m));
    for (std::size_t a = 0; a < m; ++a) {
      labels.push_back(labels_.at(subset[a]));
      ids.push_back(ids_[subset[a]]);
      for (std::size_t b = 0; b < m; ++b) {
        if (leq(subset[b], subset[a])) down[a].set(b);
      }
    }
    return FinitePoset(std::move(labels), std::move(ids), std::move(down));
  }

  FinitePoset strictly_below(std::size_t x) const {
    check_index(x);
    return induced(members(down_[x], x));
  }
  FinitePoset at_most(std::size_t x) const {
    check_index(x);
    return induced(members(down_[x]));
  }
  FinitePoset at_least(std::size_t x) const {
    check_index(x);
    return induced(members(up_[x]));
  }

  /// True when some element of the poset is >= every element of s.
  bool has_upper_bound(const std::vector<std::size_t>& s) const {
    if (empty()) return false;
    Bitset common(size());
    common.set();
    for (std::size_t e : s) common &= up_.at(e);
    return common.any();
  }

  static std::vector<std::size_t> members(const Bitset& b, std::optional<std::size_t> skip = std::nullopt) {
    std::vector<std::size_t> out;
    for (auto i = b.find_first(); i != Bitset::npos; i = b.find_next(i)) {
      if (!skip || i != *skip) out.push_back(i);
    }
    return out;
  }

 private:
  void check_index(std::size_t x) const {
    if (x >= size()) throw std::out_of_range("element " + std::to_string(x) + " is not in the poset");
  }

  void validate() const {
    const std::size_t n = size();
    for (std::size_t i = 0; i < n; ++i) {
      if (!down_[i].test(i)) throw std::invalid_argument("order relation is not reflexive");
      for (auto j = down_[i].find_first(); j != Bitset::npos; j = down_[i].find_next(j)) {
        if (j != i && down_[j].test(i)) throw std::invalid_argument("order relation is not antisymmetric");
        if (!down_[j].is_subset_of(down_[i])) throw std::invalid_argument("order relation is not transitive");
      }
    }
  }

  void build_derived() {
    const std::size_t n = size();
    up_.assign(n, Bitset(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (auto j = down_[i].find_first(); j != Bitset::npos; j = down_[i].find_next(j)) up_[j].set(i);
    }
    linext_.resize(n);
    for (std::size_t i = 0; i < n; ++i) linext_[i] = i;
    std::stable_sort(linext_.begin(), linext_.end(),
                     [&](std::size_t a, std::size_t b) { return down_[a].count() < down_[b].count(); });
    lower_covers_.assign(n, {});
    upper_covers_.assign(n, {});
    for (std::size_t x = 0; x < n; ++x) {
      Bitset strict_down = down_[x];
      strict_down.reset(x);
      for (auto y = strict_down.find_first(); y != Bitset::npos; y = strict_down.find_next(y)) {
        Bitset between = strict_down & up_[y];
        between.reset(y);
        if (between.none()) lower_covers_[x].push_back(y);
      }
      for (std::size_t y : lower_covers_[x]) upper_covers_[y].push_back(x);
    }
    for (auto& c : upper_covers_) std::sort(c.begin(), c.end());
    dims_.assign(n, 0);
    for (std::size_t x : linext_) {
      for (std::size_t y : lower_covers_[x]) dims_[x] = std::max(dims_[x], dims_[y] + 1);
    }
    minimal_.clear();
    maximal_.clear();
    for (std::size_t x = 0; x < n; ++x) {
      if (lower_covers_[x].empty()) minimal_.push_back(x);
      if (upper_covers_[x].empty()) maximal_.push_back(x);
    }
  }

  std::vector<std::string> labels_;
  std::vector<int> ids_;
  std::vector<Bitset> down_;
  std::vector<Bitset> up_;
  std::unordered_map<int, std::size_t> id_index_;
  std::vector<std::vector<std::size_t>> lower_covers_;
  std::vector<std::vector<std::size_t>> upper_covers_;
  std::vector<int> dims_;
  std::vector<std::size_t> minimal_;
  std::vector<std::size_t> maximal_;
  std::vector<std::size_t> linext_;
};

/// Abstract simplicial complex on integer vertex ids. The VOID complex has no
/// faces at all; the EMPTY complex {∅} has only the empty face.
class SimplicialComplex {
 public:
  /// The void complex.
  SimplicialComplex() = default;

  static SimplicialComplex empty_complex() {
    SimplicialComplex s;
    s.add_dimension_slots(-1);
    s.insert_unchecked({});
    return s;
  }

  /// Downward closure of the given faces. No facets gives the void complex.
  static SimplicialComplex from_facets(const std::vector<Face>& facets,
                                       std::size_t cap = Limits{}.max_faces) {
    SimplicialComplex s;
    if (facets.empty()) return s;
    std::vector<std::unordered_set<Face, FaceHash>> seen;
    std::size_t total = 0;
    for (Face f : facets) {
      std::sort(f.begin(), f.end());
      if (std::adjacent_find(f.begin(), f.end()) != f.end()) throw std::invalid_argument("face repeats a vertex");
      if (f.size() >= 63) throw CapExceeded("facet dimension", 62);
      const std::size_t k = f.size();
      if (seen.size() < k + 1) seen.resize(k + 1);
      if (seen[k].count(f)) continue;
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
        Face sub;
        for (std::size_t b = 0; b < k; ++b) {
          if (mask >> b & 1) sub.push_back(f[b]);
        }
        if (seen[sub.size()].insert(std::move(sub)).second && ++total > cap) {
          throw CapExceeded("simplicial complex face count", cap);
        }
      }
    }
    std::vector<Face> all;
    for (auto& level : seen) all.insert(all.end(), level.begin(), level.end());
    return from_closed_faces(std::move(all));
  }

  /// Builds from a face list that must already be closed under subsets.
  static SimplicialComplex from_closed_faces(std::vector<Face> faces) {
    SimplicialComplex s;
    if (faces.empty()) return s;
    for (auto& f : faces) {
      std::sort(f.begin(), f.end());
      if (std::adjacent_find(f.begin(), f.end()) != f.end()) throw std::invalid_argument("face repeats a vertex");
    }
    std::sort(faces.begin(), faces.end(), [](const Face& a, const Face& b) {
      return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    faces.erase(std::unique(faces.begin(), faces.end()), faces.end());
    s.add_dimension_slots(static_cast<int>(faces.back().size()) - 1);
    for (auto& f : faces) s.insert_unchecked(std::move(f));
    for (int d = 0; d <= s.dimension(); ++d) {
      for (const Face& f : s.faces(d)) {
        for (std::size_t j = 0; j < f.size(); ++j) {
          if (!s.contains(remove_vertex(f, j))) throw std::invalid_argument("face list is not closed under subsets");
        }
      }
    }
    return s;
  }

  static Face remove_vertex(const Face& f, std::size_t j) {
    Face g;
    g.reserve(f.size() - 1);
    for (std::size_t k = 0; k < f.size(); ++k) {
      if (k != j) g.push_back(f[k]);
    }
    return g;
  }

  bool is_void() const { return by_dim_.empty(); }
  /// -1 for {∅}; -2 for the void complex.
  int dimension() const { return static_cast<int>(by_dim_.size()) - 2; }

  std::size_t count(int d) const {
    if (d < -1 || d > dimension()) return 0;
    return by_dim_[d + 1].size();
  }
  const std::vector<Face>& faces(int d) const {
    static const std::vector<Face> none;
    if (d < -1 || d > dimension()) return none;
    return by_dim_[d + 1];
  }
  std::optional<std::size_t> index_of(const Face& f) const {
    int d = static_cast<int>(f.size()) - 1;
    if (d > dimension() || is_void()) return std::nullopt;
    auto it = index_[d + 1].find(f);
    if (it == index_[d + 1].end()) return std::nullopt;
    return it->second;
  }
  bool contains(const Face& f) const { return index_of(f).has_value(); }

  std::size_t size() const {
    std::size_t t = 0;
    for (const auto& l : by_dim_) t += l.size();
    return t;
  }

  std::vector<int> vertices() const {
    std::vector<int> v;
    for (const Face& f : faces(0)) v.push_back(f[0]);
    return v;
  }

  /// Nonempty faces ordered by (dimension, lexicographic).
  std::vector<Face> nonempty_faces() const {
    std::vector<Face> out;
    for (int d = 0; d <= dimension(); ++d) out.insert(out.end(), faces(d).begin(), faces(d).end());
    return out;
  }

  /// Faces satisfying keep; keep must be closed under taking subsets.
  template <class Pred>
  SimplicialComplex subcomplex(Pred&& keep) const {
    std::vector<Face> kept;
    for (const auto& level : by_dim_) {
      for (const Face& f : level) {
        if (keep(f)) kept.push_back(f);
      }
    }
    return from_closed_faces(std::move(kept));
  }

  bool is_subcomplex_of(const SimplicialComplex& other) const {
    for (const auto& level : by_dim_) {
      for (const Face& f : level) {
        if (!other.contains(f)) return false;
      }
    }
    return true;
  }

  friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b) {
    return a.by_dim_ == b.by_dim_;
  }

 private:
  void add_dimension_slots(int d) {
    while (dimension() < d) {
      by_dim_.emplace_back();
      index_.emplace_back();
    }
  }
  void insert_unchecked(Face f) {
    int d = static_cast<int>(f.size()) - 1;
    add_dimension_slots(d);
    index_[d + 1].emplace(f, by_dim_[d + 1].size());
    by_dim_[d + 1].push_back(std::move(f));
  }

  std::vector<std::vector<Face>> by_dim_;
  std::vector<std::unordered_map<Face, std::size_t, FaceHash>> index_;
};

/// Δ(P): faces are the chains of P, as sorted element ids.
inline SimplicialComplex order_complex(const FinitePoset& p, std::size_t cap = Limits{}.max_faces) {
  std::vector<Face> faces{Face{}};
  std::vector<std::size_t> chain;
  std::function<void(const Bitset&)> extend = [&](const Bitset& candidates) {
    for (auto y = candidates.find_first(); y != Bitset::npos; y = candidates.find_next(y)) {
      chain.push_back(y);
      Face f;
      for (std::size_t e : chain) f.push_back(p.id(e));
      std::sort(f.begin(), f.end());
      faces.push_back(std::move(f));
      if (faces.size() > cap) throw CapExceeded("order complex face count", cap);
      Bitset next = candidates & p.up_set(y);
      next.reset(y);
      extend(next);
      chain.pop_back();
    }
  };
  if (!p.empty()) {
    Bitset all(p.size());
    all.set();
    // each chain is generated once, from its minimum upward
    for (std::size_t x = 0; x < p.size(); ++x) {
      chain.assign(1, x);
      faces.push_back({p.id(x)});
      if (faces.size() > cap) throw CapExceeded("order complex face count", cap);
      Bitset next = p.up_set(x);
      next.reset(x);
      extend(next);
    }
  }
  return SimplicialComplex::from_closed_faces(std::move(faces));
}

/// Θ(P): vertices the minimal elements, faces the sets of minimal elements
/// with an upper bound in P. Θ of the empty poset is {∅}.
inline SimplicialComplex theta_complex(const FinitePoset& p, std::size_t cap = Limits{}.max_faces) {
  if (p.empty()) return SimplicialComplex::empty_complex();
  std::vector<Face> facets;
  for (std::size_t m : p.maximal()) {
    Face f;
    for (std::size_t a : p.minimal()) {
      if (p.leq(a, m)) f.push_back(p.id(a));
    }
    facets.push_back(std::move(f));
  }
  return SimplicialComplex::from_facets(facets, cap);
}

/// Γ(P, C): subsets of C with an upper bound in P (same convention as Θ).
inline SimplicialComplex crosscut_complex(const FinitePoset& p, const std::vector<std::size_t>& c,
                                          std::size_t cap = Limits{}.max_faces) {
  if (p.empty() || c.empty()) return SimplicialComplex::empty_complex();
  std::vector<Face> facets;
  for (std::size_t m : p.maximal()) {
    Face f;
    for (std::size_t a : c) {
      if (p.leq(a, m)) f.push_back(p.id(a));
    }
    facets.push_back(std::move(f));
  }
  return SimplicialComplex::from_facets(facets, cap);
}

/// True iff C is a crosscut of P: an antichain meeting every maximal chain
/// in an element comparable to the whole chain, whose bounded subsets have a
/// join or a meet in P.
inline bool crosscut_check(const FinitePoset& p, std::vector<std::size_t> c) {
  std::sort(c.begin(), c.end());
  c.erase(std::unique(c.begin(), c.end()), c.end());
  for (std::size_t x : c) {
    if (x >= p.size()) throw std::out_of_range("crosscut element outside the poset");
  }
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (std::size_t j = i + 1; j < c.size(); ++j) {
      if (p.comparable(c[i], c[j])) return false;
    }
  }
  if (p.empty()) return true;
  if (c.empty()) return false;

  // Condition (2) on maximal chains suffices: a witness for a chain works
  // for all of its subchains.
  bool every_chain_ok = true;
  std::vector<std::size_t> chain;
  std::function<void(std::size_t)> walk = [&](std::size_t x) {
    if (!every_chain_ok) return;
    chain.push_back(x);
    if (p.upper_covers(x).empty()) {
      bool witnessed = std::any_of(c.begin(), c.end(), [&](std::size_t w) {
        return std::all_of(chain.begin(), chain.end(), [&](std::size_t e) { return p.comparable(w, e); });
      });
      if (!witnessed) every_chain_ok = false;
    } else {
      for (std::size_t y : p.upper_covers(x)) walk(y);
    }
    chain.pop_back();
  };
  for (std::size_t m : p.minimal()) walk(m);
  if (!every_chain_ok) return false;

  if (c.size() > 20) throw CapExceeded("crosscut candidate size", 20);
  const std::size_t n = p.size();
  auto least_of = [&](const Bitset& set, bool upward) {
    // an element of set below (upward) / above every element of set
    for (auto x = set.find_first(); x != Bitset::npos; x = set.find_next(x)) {
      const Bitset& reach = upward ? p.up_set(x) : p.down_set(x);
      if (set.is_subset_of(reach)) return true;
    }
    return false;
  };
  for (std::uint32_t mask = 1; mask < (1u << c.size()); ++mask) {
    if (__builtin_popcount(mask) < 2) continue;
    Bitset uppers(n), lowers(n);
    uppers.set();
    lowers.set();
    for (std::size_t b = 0; b < c.size(); ++b) {
      if (mask >> b & 1) {
        uppers &= p.up_set(c[b]);
        lowers &= p.down_set(c[b]);
      }
    }
    if (uppers.none() && lowers.none()) continue;  // unbounded
    bool join = uppers.any() && least_of(uppers, true);
    bool meet = lowers.any() && least_of(lowers, false);
    if (!join && !meet) return false;
  }
  return true;
}

/// F(S): nonempty faces of S ordered by inclusion. Element ids index
/// S.nonempty_faces().
inline FinitePoset face_poset(const SimplicialComplex& s) {
  if (s.is_void()) throw std::invalid_argument("face poset of the void complex");
  std::vector<Face> faces = s.nonempty_faces();
  const std::size_t n = faces.size();
  std::vector<std::string> labels;
  std::vector<Bitset> down(n, Bitset(n));
  std::unordered_map<Face, std::size_t, FaceHash> where;
  for (std::size_t i = 0; i < n; ++i) where.emplace(faces[i], i);
  for (std::size_t i = 0; i < n; ++i) {
    std::ostringstream os;
    os << '{';
    for (std::size_t k = 0; k < faces[i].size(); ++k) os << (k ? "," : "") << faces[i][k];
    os << '}';
    labels.push_back(os.str());
    const std::size_t k = faces[i].size();
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << k); ++mask) {
      Face sub;
      for (std::size_t b = 0; b < k; ++b) {
        if (mask >> b & 1) sub.push_back(faces[i][b]);
      }
      down[i].set(where.at(sub));
    }
  }
  return FinitePoset(std::move(labels), {}, std::move(down));
}

/// sd(S) = Δ(F(S)); vertex ids index S.nonempty_faces().
inline SimplicialComplex barycentric_subdivision(const SimplicialComplex& s,
                                                 std::size_t cap = Limits{}.max_faces) {
  return order_complex(face_poset(s), cap);
}

/// ψ(σ) = { a minimal : σ lies in Δ(P_{>=a}) }, for a chain σ given by ids.
inline Face psi_map(const FinitePoset& p, const Face& sigma) {
  std::vector<std::size_t> elems;
  for (int id : sigma) {
    auto i = p.index_of_id(id);
    if (!i) throw std::invalid_argument("psi: vertex " + std::to_string(id) + " is not in the poset");
    elems.push_back(*i);
  }
  for (std::size_t a = 0; a < elems.size(); ++a) {
    for (std::size_t b = a + 1; b < elems.size(); ++b) {
      if (!p.comparable(elems[a], elems[b])) throw std::invalid_argument("psi: argument is not a chain");
    }
  }
  Face out;
  for (std::size_t a : p.minimal()) {
    if (std::all_of(elems.begin(), elems.end(), [&](std::size_t e) { return p.leq(a, e); })) out.push_back(p.id(a));
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Hasse diagram in Graphviz DOT. Elements in `dashed` (by index) and the
/// cover edges touching them are drawn dashed.
inline void write_dot(std::ostream& os, const FinitePoset& p, const std::set<std::size_t>& dashed = {},
                      const std::string& name = "hasse") {
  auto quote = [](const std::string& s) {
    std::string q = "\"";
    for (char ch : s) {
      if (ch == '"' || ch == '\\') q += '\\';
      q += ch;
    }
    return q + "\"";
  };
  os << "digraph " << quote(name) << " {\n";
  os << "  rankdir=BT;\n";
  os << "  node [shape=box, style=rounded];\n";
  for (std::size_t i = 0; i < p.size(); ++i) {
    os << "  n" << i << " [label=" << quote(p.label(i));
    if (dashed.count(i)) os << ", style=\"rounded,dashed\"";
    os << "];\n";
  }
  for (std::size_t x = 0; x < p.size(); ++x) {
    for (std::size_t y : p.lower_covers(x)) {
      os << "  n" << y << " -> n" << x << " [arrowhead=none";
      if (dashed.count(x) || dashed.count(y)) os << ", style=dashed";
      os << "];\n";
    }
  }
  os << "}\n";
}

}  // namespace bettilin

#endif  // BETTILIN_POSET_HPP
