#ifndef BETTILIN_HOMOLOGY_HPP
#define BETTILIN_HOMOLOGY_HPP

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bettilin/poset.hpp"
#include "bettilin/sparse.hpp"

namespace bettilin {

/// Dimensions indexed by degree, starting at min_degree.
struct DegreeDims {
  int min_degree = 0;
  std::vector<std::size_t> dims;

  std::size_t at(int i) const {
    if (i < min_degree || i >= min_degree + static_cast<int>(dims.size())) return 0;
    return dims[static_cast<std::size_t>(i - min_degree)];
  }
  bool all_zero() const {
    return std::all_of(dims.begin(), dims.end(), [](std::size_t d) { return d == 0; });
  }
  int max_degree() const { return min_degree + static_cast<int>(dims.size()) - 1; }
  friend bool operator==(const DegreeDims& a, const DegreeDims& b) {
    int lo = std::min(a.min_degree, b.min_degree);
    int hi = std::max(a.max_degree(), b.max_degree());
    for (int i = lo; i <= hi; ++i) {
      if (a.at(i) != b.at(i)) return false;
    }
    return true;
  }
};

/// A bounded complex of finite-dimensional vector spaces with differentials
/// d_i : C_i -> C_{i-1}.
template <class F>
class LinearComplex {
 public:
  using Matrix = SparseMatrix<F>;

  LinearComplex(F field, int min_degree, std::vector<std::size_t> dims)
      : field_(std::move(field)), min_degree_(min_degree), dims_(std::move(dims)) {
    // d_i stored for i in [min, max + 1]
    for (int i = min_degree_; i <= max_degree() + 1; ++i) boundaries_.emplace_back(dim(i - 1), dim(i));
  }
  virtual ~LinearComplex() = default;

  const F& field() const { return field_; }
  int min_degree() const { return min_degree_; }
  int max_degree() const { return min_degree_ + static_cast<int>(dims_.size()) - 1; }
  std::size_t dim(int i) const {
    if (i < min_degree_ || i > max_degree()) return 0;
    return dims_[static_cast<std::size_t>(i - min_degree_)];
  }

  /// d_i : C_i -> C_{i-1}; zero outside the stored range.
  const Matrix& boundary(int i) const {
    static const Matrix zero;
    if (i < min_degree_ || i > max_degree() + 1) return zero;
    return boundaries_[static_cast<std::size_t>(i - min_degree_)];
  }
  void set_boundary(int i, Matrix d) {
    if (i < min_degree_ || i > max_degree() + 1) throw std::out_of_range("boundary degree out of range");
    if (d.rows() != dim(i - 1) || d.cols() != dim(i)) throw std::invalid_argument("boundary has the wrong shape");
    boundaries_[static_cast<std::size_t>(i - min_degree_)] = std::move(d);
  }

  bool is_complex() const {
    for (int i = min_degree_ + 1; i <= max_degree(); ++i) {
      if (!boundary(i - 1).multiply(field_, boundary(i)).is_zero()) return false;
    }
    return true;
  }

  /// dim H_i = dim C_i - rank d_i - rank d_{i+1}; requires d∘d = 0.
  DegreeDims homology_dims() const {
    DegreeDims out{min_degree_, {}};
    std::vector<std::size_t> ranks;
    for (int i = min_degree_; i <= max_degree() + 1; ++i) ranks.push_back(rank(field_, boundary(i)));
    for (int i = min_degree_; i <= max_degree(); ++i) {
      auto k = static_cast<std::size_t>(i - min_degree_);
      out.dims.push_back(dim(i) - ranks[k] - ranks[k + 1]);
    }
    return out;
  }

  /// Σ (-1)^i dim C_i
  long euler_characteristic() const {
    long chi = 0;
    for (int i = min_degree_; i <= max_degree(); ++i) chi += (i % 2 == 0 ? 1 : -1) * static_cast<long>(dim(i));
    return chi;
  }

 private:
  F field_;
  int min_degree_;
  std::vector<std::size_t> dims_;
  std::vector<Matrix> boundaries_;
};

template <class F>
using FaceChain = std::vector<std::pair<Face, typename F::Element>>;

/// Sorts the vertices of an oriented simplex; returns the permutation sign
/// (+1/-1), or 0 when a vertex repeats (degenerate image).
inline int sort_with_sign(Face& f) {
  int sign = 1;
  for (std::size_t i = 1; i < f.size(); ++i) {
    for (std::size_t j = i; j > 0 && f[j - 1] >= f[j]; --j) {
      if (f[j - 1] == f[j]) return 0;
      std::swap(f[j - 1], f[j]);
      sign = -sign;
    }
  }
  for (std::size_t i = 1; i < f.size(); ++i) {
    if (f[i - 1] == f[i]) return 0;
  }
  return sign;
}

/// Simplicial boundary of a chain given by faces; d[v] = [∅].
template <class F>
FaceChain<F> face_boundary(const F& field, const FaceChain<F>& c) {
  std::map<Face, typename F::Element> acc;
  for (const auto& [face, coeff] : c) {
    for (std::size_t j = 0; j < face.size(); ++j) {
      auto v = j % 2 == 0 ? coeff : field.neg(coeff);
      auto [it, fresh] = acc.emplace(SimplicialComplex::remove_vertex(face, j), v);
      if (!fresh) it->second = field.add(it->second, v);
    }
  }
  FaceChain<F> out;
  for (auto& [face, v] : acc) {
    if (!field.is_zero(v)) out.emplace_back(face, std::move(v));
  }
  return out;
}

/// Reduced simplicial chain complex C̃_*(S; k). C̃_{-1} is spanned by the
/// empty face when S is not void; basis order in each degree is the face
/// order of S.
template <class F>
class ChainComplex : public LinearComplex<F> {
 public:
  using Element = typename F::Element;
  using Vector = SparseVector<F>;

  ChainComplex(F field, SimplicialComplex complex)
      : LinearComplex<F>(field, -1, face_counts(complex)), complex_(std::move(complex)) {
    for (int i = 0; i <= complex_.dimension(); ++i) {
      SparseMatrix<F> d(complex_.count(i - 1), complex_.count(i));
      const auto& faces = complex_.faces(i);
      for (std::size_t c = 0; c < faces.size(); ++c) {
        std::vector<std::pair<std::size_t, Element>> entries;
        for (std::size_t j = 0; j < faces[c].size(); ++j) {
          std::size_t row = *complex_.index_of(SimplicialComplex::remove_vertex(faces[c], j));
          entries.emplace_back(row, j % 2 == 0 ? field.one() : field.neg(field.one()));
        }
        d.set_column(c, make_sparse(field, std::move(entries)));
      }
      this->set_boundary(i, std::move(d));
    }
  }

  const SimplicialComplex& complex() const { return complex_; }

  Vector from_faces(int i, const FaceChain<F>& c) const {
    std::vector<std::pair<std::size_t, Element>> entries;
    for (const auto& [face, v] : c) {
      if (static_cast<int>(face.size()) - 1 != i) throw std::invalid_argument("chain has a face of the wrong dimension");
      auto idx = complex_.index_of(face);
      if (!idx) throw std::invalid_argument("chain is not supported on the complex");
      entries.emplace_back(*idx, v);
    }
    return make_sparse(this->field(), std::move(entries));
  }

  FaceChain<F> to_faces(int i, const Vector& c) const {
    FaceChain<F> out;
    const auto& faces = complex_.faces(i);
    for (const auto& [idx, v] : c) out.emplace_back(faces.at(idx), v);
    return out;
  }

  Vector boundary_of(int i, const Vector& c) const { return this->boundary(i).apply(this->field(), c); }

 private:
  static std::vector<std::size_t> face_counts(const SimplicialComplex& s) {
    std::vector<std::size_t> counts;
    for (int d = -1; d <= s.dimension(); ++d) counts.push_back(s.count(d));
    return counts;
  }

  SimplicialComplex complex_;
};

template <class F>
std::shared_ptr<const ChainComplex<F>> chain_complex(const F& field, const SimplicialComplex& s) {
  return std::make_shared<const ChainComplex<F>>(field, s);
}

/// Reduced homology dimensions of S over the field, from degree -1.
template <class F>
DegreeDims reduced_homology(const F& field, const SimplicialComplex& s) {
  if (s.is_void()) return {-1, {}};
  return ChainComplex<F>(field, s).homology_dims();
}

/// Cycle representatives for a basis of H_i, with the reduction data needed
/// to write any cycle in that basis.
template <class F>
class HomologyBasis {
 public:
  using Element = typename F::Element;
  using Vector = SparseVector<F>;

  HomologyBasis(std::shared_ptr<const LinearComplex<F>> complex, int degree)
      : complex_(std::move(complex)), degree_(degree), echelon_(complex_->field()) {
    const F& field = complex_->field();
    const auto& d_next = complex_->boundary(degree + 1);
    for (std::size_t j = 0; j < d_next.cols(); ++j) echelon_.insert(d_next.column(j), {});
    for (auto& z : kernel_basis(field, complex_->boundary(degree))) {
      auto red = echelon_.reduce(std::move(z));
      if (red.remainder.empty()) continue;
      Vector tag{{reps_.size(), field.one()}};
      reps_.push_back(red.remainder);
      echelon_.store(std::move(red.remainder), std::move(tag));
    }
  }

  int degree() const { return degree_; }
  std::size_t dimension() const { return reps_.size(); }
  const std::vector<Vector>& representatives() const { return reps_; }
  const LinearComplex<F>& complex() const { return *complex_; }

  bool is_cycle(const Vector& z) const {
    return complex_->boundary(degree_).apply(complex_->field(), z).empty();
  }

  /// Coefficients c with z - Σ c_j z_j a boundary.
  std::vector<Element> express(const Vector& z) const {
    const F& field = complex_->field();
    if (!z.empty() && z.back().first >= complex_->dim(degree_)) throw std::invalid_argument("chain is too long");
    if (!is_cycle(z)) throw std::invalid_argument("express_in_basis: chain is not a cycle");
    auto red = echelon_.reduce(z);
    if (!red.remainder.empty()) throw std::logic_error("cycle did not reduce to zero");
    std::vector<Element> coeffs(reps_.size(), field.zero());
    for (const auto& [j, v] : red.combination) coeffs[j] = v;
    return coeffs;
  }

  bool is_boundary(const Vector& z) const {
    auto red = echelon_.reduce(z);
    if (!red.remainder.empty()) return false;
    for (const auto& [j, v] : red.combination) {
      if (j < reps_.size() && !complex_->field().is_zero(v)) return false;
    }
    return true;
  }

 private:
  std::shared_ptr<const LinearComplex<F>> complex_;
  int degree_;
  std::vector<Vector> reps_;
  ColumnEchelon<F> echelon_;
};

template <class F>
HomologyBasis<F> homology_basis(std::shared_ptr<const LinearComplex<F>> complex, int degree) {
  return HomologyBasis<F>(std::move(complex), degree);
}

template <class F>
std::vector<typename F::Element> express_in_basis(const HomologyBasis<F>& basis, const SparseVector<F>& z) {
  return basis.express(z);
}

using VertexMap = std::function<int(int)>;

/// Pushes an i-chain of src through a vertex map into tgt. Simplices whose
/// image repeats a vertex are dropped.
template <class F>
SparseVector<F> push_chain(const ChainComplex<F>& src, int i, const SparseVector<F>& c, const ChainComplex<F>& tgt,
                           const VertexMap& f) {
  const F& field = src.field();
  std::vector<std::pair<std::size_t, typename F::Element>> entries;
  for (const auto& [idx, v] : c) {
    Face image;
    for (int vertex : src.complex().faces(i).at(idx)) image.push_back(f(vertex));
    int sign = sort_with_sign(image);
    if (sign == 0) continue;
    auto where = tgt.complex().index_of(image);
    if (!where) throw std::invalid_argument("vertex map is not simplicial: image face missing from target");
    entries.emplace_back(*where, sign > 0 ? v : field.neg(v));
  }
  return make_sparse(field, std::move(entries));
}

/// Matrix of f_* : H_i(src) -> H_i(tgt) in the given bases.
template <class F>
SparseMatrix<F> induced_map(const ChainComplex<F>& src, const HomologyBasis<F>& src_basis, const ChainComplex<F>& tgt,
                            const HomologyBasis<F>& tgt_basis, const VertexMap& f) {
  if (src_basis.degree() != tgt_basis.degree()) throw std::invalid_argument("induced_map: degree mismatch");
  const int i = src_basis.degree();
  const F& field = src.field();
  SparseMatrix<F> m(tgt_basis.dimension(), src_basis.dimension());
  for (std::size_t j = 0; j < src_basis.dimension(); ++j) {
    auto image = push_chain(src, i, src_basis.representatives()[j], tgt, f);
    auto coeffs = tgt_basis.express(image);
    SparseVector<F> col;
    for (std::size_t r = 0; r < coeffs.size(); ++r) {
      if (!field.is_zero(coeffs[r])) col.emplace_back(r, coeffs[r]);
    }
    m.set_column(j, std::move(col));
  }
  return m;
}

/// Inclusion-induced map; vertices keep their ids.
template <class F>
SparseMatrix<F> inclusion_map(const ChainComplex<F>& src, const HomologyBasis<F>& src_basis,
                              const ChainComplex<F>& tgt, const HomologyBasis<F>& tgt_basis) {
  return induced_map(src, src_basis, tgt, tgt_basis, [](int v) { return v; });
}

/// Chain-level barycentric subdivision C(S) -> C(sd S), where the vertex of
/// sd S with id t is the t-th face of S.nonempty_faces(). Commutes with d.
template <class F>
class Subdivision {
 public:
  Subdivision(F field, const SimplicialComplex& s) : field_(std::move(field)) {
    auto faces = s.nonempty_faces();
    for (std::size_t t = 0; t < faces.size(); ++t) face_id_.emplace(faces[t], static_cast<int>(t));
  }

  int id_of(const Face& f) const {
    auto it = face_id_.find(f);
    if (it == face_id_.end()) throw std::invalid_argument("face is not in the subdivided complex");
    return it->second;
  }

  /// sd(σ) = (-1)^k Σ_j (-1)^j [sd(σ minus j-th vertex), σ]
  const FaceChain<F>& of(const Face& sigma) {
    auto it = memo_.find(sigma);
    if (it != memo_.end()) return it->second;
    FaceChain<F> out;
    if (sigma.empty()) {
      out.emplace_back(Face{}, field_.one());
    } else if (sigma.size() == 1) {
      out.emplace_back(Face{id_of(sigma)}, field_.one());
    } else {
      const int top = id_of(sigma);
      const bool odd_k = (sigma.size() - 1) % 2 == 1;
      std::map<Face, typename F::Element> acc;
      for (std::size_t j = 0; j < sigma.size(); ++j) {
        bool negate = odd_k != (j % 2 == 1);
        FaceChain<F> lower = of(SimplicialComplex::remove_vertex(sigma, j));
        for (auto& [chain, v] : lower) {
          Face g = chain;
          g.push_back(top);
          auto val = negate ? field_.neg(v) : v;
          auto [pos, fresh] = acc.emplace(std::move(g), val);
          if (!fresh) pos->second = field_.add(pos->second, val);
        }
      }
      for (auto& [g, v] : acc) {
        if (!field_.is_zero(v)) out.emplace_back(g, std::move(v));
      }
    }
    return memo_.emplace(sigma, std::move(out)).first->second;
  }

  FaceChain<F> apply(const FaceChain<F>& c) {
    std::map<Face, typename F::Element> acc;
    for (const auto& [sigma, v] : c) {
      for (const auto& [g, w] : of(sigma)) {
        auto val = field_.mul(v, w);
        auto [pos, fresh] = acc.emplace(g, val);
        if (!fresh) pos->second = field_.add(pos->second, val);
      }
    }
    FaceChain<F> out;
    for (auto& [g, v] : acc) {
      if (!field_.is_zero(v)) out.emplace_back(g, std::move(v));
    }
    return out;
  }

 private:
  F field_;
  std::unordered_map<Face, int, FaceHash> face_id_;
  std::map<Face, FaceChain<F>> memo_;
};

/// Matrix of ψ_* : H̃_i(Δ(P)) -> H̃_i(Θ(P)). ψ reverses inclusion on face
/// posets, so it is realized as the vertex map sd Δ(P) -> sd Θ(P) sending the
/// barycenter of σ to the barycenter of ψ(σ), after subdividing the cycles.
template <class F>
SparseMatrix<F> psi_induced_map(const F& field, const FinitePoset& p, int degree,
                                std::size_t cap = Limits{}.max_faces) {
  SimplicialComplex delta = order_complex(p, cap);
  SimplicialComplex theta = theta_complex(p, cap);
  auto delta_cc = chain_complex(field, delta);
  auto sd_delta = chain_complex(field, barycentric_subdivision(delta, cap));
  auto sd_theta = chain_complex(field, barycentric_subdivision(theta, cap));
  HomologyBasis<F> src(delta_cc, degree);
  HomologyBasis<F> tgt(sd_theta, degree);

  const std::vector<Face> delta_faces = delta.nonempty_faces();
  const std::vector<Face> theta_faces = theta.nonempty_faces();
  std::map<Face, int> theta_id;
  for (std::size_t t = 0; t < theta_faces.size(); ++t) theta_id.emplace(theta_faces[t], static_cast<int>(t));
  VertexMap bary = [&](int t) { return theta_id.at(psi_map(p, delta_faces.at(static_cast<std::size_t>(t)))); };

  Subdivision<F> sd(field, delta);
  SparseMatrix<F> m(tgt.dimension(), src.dimension());
  for (std::size_t j = 0; j < src.dimension(); ++j) {
    auto subdivided = sd.apply(delta_cc->to_faces(degree, src.representatives()[j]));
    auto image = push_chain(*sd_delta, degree, sd_delta->from_faces(degree, subdivided), *sd_theta, bary);
    auto coeffs = tgt.express(image);
    SparseVector<F> col;
    for (std::size_t r = 0; r < coeffs.size(); ++r) {
      if (!field.is_zero(coeffs[r])) col.emplace_back(r, coeffs[r]);
    }
    m.set_column(j, std::move(col));
  }
  return m;
}

enum class SplitRule {
  kPreferFirst,   // a face lying in both pieces goes to c'
  kPreferSecond,  // a face lying in both pieces goes to c''
};

/// Mayer–Vietoris connecting map at chain level for whole = first ∪ second:
/// splits the i-cycle c as c' + c'' with c' on `first` and c'' on `second`
/// and returns d(c'), an (i-1)-cycle of first ∩ second.
template <class F>
FaceChain<F> mv_connecting(const F& field, const SimplicialComplex& first, const SimplicialComplex& second,
                           const SimplicialComplex& whole, int i, const FaceChain<F>& cycle,
                           SplitRule rule = SplitRule::kPreferFirst) {
  if (!first.is_subcomplex_of(whole) || !second.is_subcomplex_of(whole)) {
    throw std::invalid_argument("mv_connecting: pieces are not subcomplexes of the union");
  }
  for (int d = -1; d <= whole.dimension(); ++d) {
    for (const Face& f : whole.faces(d)) {
      if (!first.contains(f) && !second.contains(f)) {
        throw std::invalid_argument("mv_connecting: the pieces do not cover the union");
      }
    }
  }
  for (const auto& [face, v] : cycle) {
    if (static_cast<int>(face.size()) - 1 != i || !whole.contains(face)) {
      throw std::invalid_argument("mv_connecting: chain is not an i-chain of the union");
    }
  }
  if (!face_boundary(field, cycle).empty()) throw std::invalid_argument("mv_connecting: chain is not a cycle");
  FaceChain<F> first_part;
  for (const auto& [face, v] : cycle) {
    bool to_first = rule == SplitRule::kPreferFirst ? first.contains(face) : !second.contains(face);
    if (to_first) first_part.emplace_back(face, v);
  }
  return face_boundary(field, first_part);
}

/// Relative chain complex C(S)/C(T), degrees from -1; basis = faces of S not
/// in T.
template <class F>
std::shared_ptr<const LinearComplex<F>> relative_complex(const F& field, const SimplicialComplex& s,
                                                         const SimplicialComplex& t) {
  if (!t.is_subcomplex_of(s)) throw std::invalid_argument("relative homology: T is not a subcomplex of S");
  std::vector<std::vector<std::size_t>> kept(static_cast<std::size_t>(std::max(0, s.dimension() + 2)));
  std::vector<std::unordered_map<std::size_t, std::size_t>> renumber(kept.size());
  std::vector<std::size_t> dims;
  for (int d = -1; d <= s.dimension(); ++d) {
    auto k = static_cast<std::size_t>(d + 1);
    const auto& faces = s.faces(d);
    for (std::size_t idx = 0; idx < faces.size(); ++idx) {
      if (!t.contains(faces[idx])) {
        renumber[k].emplace(idx, kept[k].size());
        kept[k].push_back(idx);
      }
    }
    dims.push_back(kept[k].size());
  }
  auto out = std::make_shared<LinearComplex<F>>(field, -1, dims);
  for (int d = 0; d <= s.dimension(); ++d) {
    auto k = static_cast<std::size_t>(d + 1);
    SparseMatrix<F> m(kept[k - 1].size(), kept[k].size());
    for (std::size_t c = 0; c < kept[k].size(); ++c) {
      const Face& face = s.faces(d)[kept[k][c]];
      std::vector<std::pair<std::size_t, typename F::Element>> entries;
      for (std::size_t j = 0; j < face.size(); ++j) {
        std::size_t row = *s.index_of(SimplicialComplex::remove_vertex(face, j));
        auto it = renumber[k - 1].find(row);
        if (it == renumber[k - 1].end()) continue;  // lies in T
        entries.emplace_back(it->second, j % 2 == 0 ? field.one() : field.neg(field.one()));
      }
      m.set_column(c, make_sparse(field, std::move(entries)));
    }
    out->set_boundary(d, std::move(m));
  }
  return out;
}

template <class F>
DegreeDims relative_homology(const F& field, const SimplicialComplex& s, const SimplicialComplex& t) {
  if (s.is_void()) {
    if (!t.is_void()) throw std::invalid_argument("relative homology: T is not a subcomplex of S");
    return {-1, {}};
  }
  return relative_complex(field, s, t)->homology_dims();
}

}  // namespace bettilin

#endif  // BETTILIN_HOMOLOGY_HPP
