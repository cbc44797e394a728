#ifndef BETTILIN_RESOLUTION_HPP
#define BETTILIN_RESOLUTION_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "bettilin/errors.hpp"
#include "bettilin/homology.hpp"
#include "bettilin/monomial.hpp"
#include "bettilin/parallel.hpp"
#include "bettilin/poset.hpp"
#include "bettilin/taylor.hpp"

namespace bettilin {

/// The poset construction D(P, k): D_{i,α} = H̃_{i-1}(Δ(P_{<α})) with maps
/// φ^{α,λ}_i : D_{i,α} -> D_{i-1,λ} along covers λ ⋖ α, each the
/// Mayer–Vietoris connecting map for Δ_α = Δ_{≤λ} ∪ (∪_{β≠λ} Δ_{≤β})
/// followed by the inclusion Δ_{α,λ} ⊆ Δ_λ.
template <class F>
class PosetConstruction {
 public:
  using Matrix = SparseMatrix<F>;
  using Vector = SparseVector<F>;

  PosetConstruction(FinitePoset poset, F field, const Limits& limits = {})
      : poset_(std::move(poset)), field_(std::move(field)) {
    const std::size_t n = poset_.size();
    below_.resize(n);
    bases_.resize(n);
    parallel_for(n, limits.threads, [&](std::size_t alpha) {
      below_[alpha] = chain_complex(field_, order_complex(poset_.strictly_below(alpha), limits.max_faces));
      const int top = below_[alpha]->complex().dimension() + 1;  // H̃_{i-1} vanishes above
      for (int i = 0; i <= top; ++i) bases_[alpha].emplace_back(below_[alpha], i - 1);
    });
    for (std::size_t alpha = 0; alpha < n; ++alpha) {
      top_degree_ = std::max(top_degree_, static_cast<int>(bases_[alpha].size()) - 1);
    }
    std::vector<std::vector<std::tuple<int, std::size_t, Matrix>>> found(n);
    parallel_for(n, limits.threads, [&](std::size_t alpha) {
      for (std::size_t lambda : poset_.lower_covers(alpha)) {
        for (int i = 1; i <= top_degree_; ++i) {
          if (dim(i, alpha) == 0 || dim(i - 1, lambda) == 0) continue;
          found[alpha].emplace_back(i, lambda, compute_phi(i, alpha, lambda));
        }
      }
    });
    for (std::size_t alpha = 0; alpha < n; ++alpha) {
      for (auto& [i, lambda, m] : found[alpha]) phi_.emplace(std::make_tuple(i, alpha, lambda), std::move(m));
    }
  }

  const FinitePoset& poset() const { return poset_; }
  const F& field() const { return field_; }
  int top_degree() const { return top_degree_; }

  /// dim D_{i,α}
  std::size_t dim(int i, std::size_t alpha) const {
    const auto& b = bases_.at(alpha);
    if (i < 0 || i >= static_cast<int>(b.size())) return 0;
    return b[static_cast<std::size_t>(i)].dimension();
  }

  std::vector<std::size_t> total_ranks() const {
    std::vector<std::size_t> r(static_cast<std::size_t>(top_degree_ + 1), 0);
    for (std::size_t alpha = 0; alpha < poset_.size(); ++alpha) {
      for (int i = 0; i <= top_degree_; ++i) r[static_cast<std::size_t>(i)] += dim(i, alpha);
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
  }

  /// Reduced chain complex of Δ_α = Δ(P_{<α}).
  const ChainComplex<F>& below(std::size_t alpha) const { return *below_.at(alpha); }

  /// Basis of D_{i,α} = H̃_{i-1}(Δ_α).
  const HomologyBasis<F>& basis(int i, std::size_t alpha) const {
    const auto& b = bases_.at(alpha);
    if (i < 0 || i >= static_cast<int>(b.size())) throw std::out_of_range("no homology basis in that degree");
    return b[static_cast<std::size_t>(i)];
  }

  /// Matrix of φ^{α,λ}_i (rows: D_{i-1,λ}, cols: D_{i,α}); nullptr when it is
  /// the zero map between nonzero spaces is impossible to store, i.e. when
  /// either space vanishes.
  const Matrix* phi(int i, std::size_t alpha, std::size_t lambda) const {
    auto it = phi_.find(std::make_tuple(i, alpha, lambda));
    return it == phi_.end() ? nullptr : &it->second;
  }
  const std::map<std::tuple<int, std::size_t, std::size_t>, Matrix>& maps() const { return phi_; }

  /// d(c') for a cycle c of Δ_α in degree i-1, split against the cover λ.
  /// kPreferFirst sends a face to c' iff all its vertices are ≤ λ;
  /// kPreferSecond sends it to c'' iff its vertices are ≤ some other cover.
  FaceChain<F> connecting_chain(std::size_t alpha, std::size_t lambda, int i, const Vector& cycle,
                                SplitRule rule = SplitRule::kPreferFirst) const {
    if (!poset_.covers(alpha, lambda)) throw std::invalid_argument("connecting map needs a cover relation");
    const auto& cc = below(alpha);
    if (!cc.boundary_of(i - 1, cycle).empty()) throw std::invalid_argument("connecting map: input is not a cycle");
    auto under = [&](const Face& f, std::size_t top) {
      return std::all_of(f.begin(), f.end(), [&](int id) { return poset_.leq(*poset_.index_of_id(id), top); });
    };
    FaceChain<F> first_part;
    for (auto& [face, v] : cc.to_faces(i - 1, cycle)) {
      bool to_first;
      if (rule == SplitRule::kPreferFirst) {
        to_first = under(face, lambda);
      } else {
        bool in_second = false;
        for (std::size_t beta : poset_.lower_covers(alpha)) {
          if (beta != lambda && under(face, beta)) in_second = true;
        }
        to_first = !in_second;
      }
      if (to_first) first_part.emplace_back(face, v);
    }
    return face_boundary(field_, first_part);
  }

 private:
  Matrix compute_phi(int i, std::size_t alpha, std::size_t lambda) const {
    const auto& src = basis(i, alpha);
    const auto& tgt = basis(i - 1, lambda);
    Matrix m(tgt.dimension(), src.dimension());
    for (std::size_t j = 0; j < src.dimension(); ++j) {
      FaceChain<F> image = connecting_chain(alpha, lambda, i, src.representatives()[j]);
      auto coeffs = tgt.express(below(lambda).from_faces(i - 2, image));
      Vector col;
      for (std::size_t r = 0; r < coeffs.size(); ++r) {
        if (!field_.is_zero(coeffs[r])) col.emplace_back(r, coeffs[r]);
      }
      m.set_column(j, std::move(col));
    }
    return m;
  }

  FinitePoset poset_;
  F field_;
  std::vector<std::shared_ptr<const ChainComplex<F>>> below_;
  std::vector<std::vector<HomologyBasis<F>>> bases_;
  std::map<std::tuple<int, std::size_t, std::size_t>, Matrix> phi_;
  int top_degree_ = 0;
};

template <class F>
PosetConstruction<F> poset_construction(const FinitePoset& poset, const F& field, const Limits& limits = {}) {
  return PosetConstruction<F>(poset, field, limits);
}

/// Differential block ∂^{α,λ}_i = x^{shift} ⊗ φ^{α,λ}_i.
template <class F>
struct GradedBlock {
  int degree;
  std::size_t source;
  std::size_t target;
  Multidegree shift;
  SparseMatrix<F> matrix;
};

/// F(η): F_i = ⊕_λ D_{i,λ} ⊗ R(-η(λ)) with blocks along covers.
template <class F>
class GradedComplex {
 public:
  GradedComplex(const PosetConstruction<F>& d, std::vector<Multidegree> grading)
      : poset_(d.poset()), field_(d.field()), grading_(std::move(grading)), top_degree_(d.top_degree()) {
    const std::size_t n = poset_.size();
    if (grading_.size() != n) throw std::invalid_argument("grading must assign a multidegree to every element");
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        if (poset_.less(b, a) && !grading_[b].divides(grading_[a])) {
          throw std::invalid_argument("grading is not order-preserving");
        }
      }
    }
    mult_.assign(n, std::vector<std::size_t>(static_cast<std::size_t>(top_degree_ + 1), 0));
    for (std::size_t a = 0; a < n; ++a) {
      for (int i = 0; i <= top_degree_; ++i) mult_[a][static_cast<std::size_t>(i)] = d.dim(i, a);
    }
    for (const auto& [key, m] : d.maps()) {
      auto [i, alpha, lambda] = key;
      blocks_.push_back({i, alpha, lambda, grading_[alpha].minus(grading_[lambda]), m});
    }
  }

  const FinitePoset& poset() const { return poset_; }
  const F& field() const { return field_; }
  const std::vector<Multidegree>& grading() const { return grading_; }
  int top_degree() const { return top_degree_; }
  std::size_t multiplicity(int i, std::size_t alpha) const {
    if (i < 0 || i > top_degree_) return 0;
    return mult_.at(alpha)[static_cast<std::size_t>(i)];
  }
  std::vector<std::size_t> ranks() const {
    std::vector<std::size_t> r(static_cast<std::size_t>(top_degree_ + 1), 0);
    for (const auto& row : mult_) {
      for (std::size_t i = 0; i < row.size(); ++i) r[i] += row[i];
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
  }
  const std::vector<GradedBlock<F>>& blocks() const { return blocks_; }

  /// Every block shift nonzero: all differential entries lie in the maximal
  /// ideal.
  bool is_minimal() const {
    return std::all_of(blocks_.begin(), blocks_.end(), [](const auto& b) { return !b.shift.is_zero(); });
  }

  const SparseMatrix<F>* block(int i, std::size_t alpha, std::size_t lambda) const {
    for (const auto& b : blocks_) {
      if (b.degree == i && b.source == alpha && b.target == lambda) return &b.matrix;
    }
    return nullptr;
  }

 private:
  FinitePoset poset_;
  F field_;
  std::vector<Multidegree> grading_;
  int top_degree_;
  std::vector<std::vector<std::size_t>> mult_;
  std::vector<GradedBlock<F>> blocks_;
};

template <class F>
GradedComplex<F> homogenize(const PosetConstruction<F>& d, std::vector<Multidegree> grading) {
  return GradedComplex<F>(d, std::move(grading));
}

/// Where a check first failed.
struct Witness {
  std::string reason;  // "differential", "augmentation" or "strand"
  int degree = 0;
  Multidegree alpha;
  std::optional<Multidegree> target;
};

struct ComplexCheck {
  bool squares_to_zero = true;  // ∂_{i-1} ∘ ∂_i = 0
  bool augmentation = true;     // ε ∘ ∂_1 = 0 for ε(e_a) = x^{η(a)}
  std::optional<Witness> witness;
  bool ok() const { return squares_to_zero && augmentation; }
};

template <class F>
ComplexCheck check_complex(const GradedComplex<F>& g) {
  const F& field = g.field();
  const auto& p = g.poset();
  ComplexCheck out;
  auto note = [&](const std::string& why, int i, std::size_t a, std::optional<std::size_t> t) {
    if (!out.witness) {
      out.witness = Witness{why, i, g.grading()[a], t ? std::optional<Multidegree>(g.grading()[*t]) : std::nullopt};
    }
  };
  for (std::size_t alpha = 0; alpha < p.size(); ++alpha) {
    for (int i = 2; i <= g.top_degree(); ++i) {
      if (g.multiplicity(i, alpha) == 0) continue;
      // composite into each μ two cover steps below α
      std::map<std::size_t, SparseMatrix<F>> composite;
      for (std::size_t lambda : p.lower_covers(alpha)) {
        const auto* outer = g.block(i, alpha, lambda);
        if (!outer) continue;
        for (std::size_t mu : p.lower_covers(lambda)) {
          const auto* inner = g.block(i - 1, lambda, mu);
          if (!inner) continue;
          auto prod = inner->multiply(field, *outer);
          auto [it, fresh] = composite.emplace(mu, prod);
          if (!fresh) {
            for (std::size_t c = 0; c < prod.cols(); ++c) {
              it->second.set_column(c, axpy(field, field.one(), prod.column(c), it->second.column(c)));
            }
          }
        }
      }
      for (const auto& [mu, m] : composite) {
        if (!m.is_zero()) {
          out.squares_to_zero = false;
          note("differential", i, alpha, mu);
        }
      }
    }
    if (g.multiplicity(1, alpha) > 0) {
      SparseVector<F> total;
      for (std::size_t lambda : p.lower_covers(alpha)) {
        const auto* b = g.block(1, alpha, lambda);
        if (!b) continue;
        // D_{0,λ} is one-dimensional, spanned by [∅]; ε sends it to 1
        SparseVector<F> row;
        for (std::size_t c = 0; c < b->cols(); ++c) {
          for (const auto& [r, v] : b->column(c)) row = axpy(field, v, SparseVector<F>{{c, field.one()}}, row);
        }
        total = axpy(field, field.one(), row, total);
      }
      if (!total.empty()) {
        out.augmentation = false;
        note("augmentation", 1, alpha, std::nullopt);
      }
    }
  }
  return out;
}

template <class F>
bool is_complex(const GradedComplex<F>& g) {
  return check_complex(g).ok();
}

struct StrandResult {
  DegreeDims homology;  // H_i of the strand, i >= 0
  bool exact = false;   // augmented strand ... -> F_0 -> k -> 0 is exact
};

/// Vector-space strand of F(η) at multidegree α: term i is ⊕ D_{i,β} over
/// β with η(β) ≤ α.
template <class F>
StrandResult strand_exactness(const GradedComplex<F>& g, const Multidegree& alpha) {
  const F& field = g.field();
  const auto& p = g.poset();
  const int top = g.top_degree();
  std::vector<std::vector<std::size_t>> offset(p.size(), std::vector<std::size_t>(static_cast<std::size_t>(top + 1), 0));
  std::vector<std::size_t> dims(static_cast<std::size_t>(top + 1), 0);
  std::vector<bool> in(p.size(), false);
  for (std::size_t b = 0; b < p.size(); ++b) {
    if (!g.grading()[b].divides(alpha)) continue;
    in[b] = true;
    for (int i = 0; i <= top; ++i) {
      offset[b][static_cast<std::size_t>(i)] = dims[static_cast<std::size_t>(i)];
      dims[static_cast<std::size_t>(i)] += g.multiplicity(i, b);
    }
  }
  std::vector<std::size_t> aug_dims{dims[0] > 0 ? std::size_t{1} : std::size_t{0}};
  aug_dims.insert(aug_dims.end(), dims.begin(), dims.end());
  auto plain = std::make_shared<LinearComplex<F>>(field, 0, dims);
  auto augmented = std::make_shared<LinearComplex<F>>(field, -1, aug_dims);
  for (int i = 1; i <= top; ++i) {
    std::vector<std::vector<std::pair<std::size_t, typename F::Element>>> cols(dims[static_cast<std::size_t>(i)]);
    for (const auto& blk : g.blocks()) {
      if (blk.degree != i || !in[blk.source]) continue;
      std::size_t co = offset[blk.source][static_cast<std::size_t>(i)];
      std::size_t ro = offset[blk.target][static_cast<std::size_t>(i - 1)];
      for (std::size_t c = 0; c < blk.matrix.cols(); ++c) {
        for (const auto& [r, v] : blk.matrix.column(c)) cols[co + c].emplace_back(ro + r, v);
      }
    }
    SparseMatrix<F> d(dims[static_cast<std::size_t>(i - 1)], dims[static_cast<std::size_t>(i)]);
    for (std::size_t c = 0; c < cols.size(); ++c) d.set_column(c, make_sparse(field, std::move(cols[c])));
    plain->set_boundary(i, d);
    augmented->set_boundary(i, std::move(d));
  }
  if (dims[0] > 0) {
    SparseMatrix<F> eps(1, dims[0]);
    for (std::size_t c = 0; c < dims[0]; ++c) eps.set_column(c, {{0, field.one()}});
    augmented->set_boundary(0, std::move(eps));
  }
  return {plain->homology_dims(), augmented->homology_dims().all_zero()};
}

struct ConstructionVerdict {
  bool is_complex = false;
  bool is_acyclic = false;
  bool is_minimal = false;
  std::vector<std::size_t> ranks;
  std::optional<Witness> witness;
};

/// Builds D(P,k), homogenizes by the multidegree labels, and checks that
/// F(η) is an acyclic complex resolving the ideal: ∂² = 0, ε∂_1 = 0, and
/// every strand at a lattice element is exact after augmentation. Strands
/// between lattice elements coincide with the strand at the join of the
/// generators below them, so lattice elements suffice.
template <class F>
ConstructionVerdict verify_construction(const FinitePoset& poset, const std::vector<Multidegree>& grading,
                                        const std::vector<Multidegree>& strand_degrees, const F& field,
                                        const Limits& limits = {}) {
  auto d = poset_construction(poset, field, limits);
  auto g = homogenize(d, grading);
  ConstructionVerdict v;
  v.ranks = g.ranks();
  v.is_minimal = g.is_minimal();
  auto check = check_complex(g);
  v.is_complex = check.ok();
  if (!v.is_complex) {
    v.witness = check.witness;
    return v;
  }
  std::vector<StrandResult> strands(strand_degrees.size());
  parallel_for(strand_degrees.size(), limits.threads,
               [&](std::size_t k) { strands[k] = strand_exactness(g, strand_degrees[k]); });
  v.is_acyclic = true;
  for (std::size_t k = 0; k < strands.size(); ++k) {
    if (!strands[k].exact) {
      v.is_acyclic = false;
      int deg = 0;
      for (int i = 0; i <= strands[k].homology.max_degree(); ++i) {
        if (strands[k].homology.at(i) != (i == 0 ? 1u : 0u)) {
          deg = i;
          break;
        }
      }
      v.witness = Witness{"strand", deg, strand_degrees[k], std::nullopt};
      break;
    }
  }
  return v;
}

/// True iff each homological degree's Betti numbers sit in a single total
/// degree d_i and d_0 < d_1 < ...
inline bool purity_check(const BettiTable& table) {
  std::map<int, std::set<std::uint64_t>> degrees;
  for (const auto& [key, rank] : table) {
    if (rank > 0) degrees[key.first].insert(key.second.total_degree());
  }
  std::optional<std::uint64_t> previous;
  for (const auto& [i, ds] : degrees) {
    if (ds.size() != 1) return false;
    if (previous && *ds.begin() <= *previous) return false;
    previous = *ds.begin();
  }
  return true;
}

struct LinearityOptions {
  Limits limits;
  bool check_lattice = true;  // also run the construction on L
  bool run_oracle = true;     // compare against Taylor/Tor Betti numbers
};

struct LinearityReport {
  std::string field;
  std::vector<std::string> vars;
  std::vector<Multidegree> gens;

  bool is_complex = false;  // F(η) over B
  bool is_acyclic = false;
  bool betti_linear = false;
  std::optional<bool> lattice_linear;
  std::string lattice_status;  // "computed", "implied", "skipped", "cap_exceeded"
  bool pure = false;

  BettiTable betti_table;
  std::vector<std::size_t> betti_totals;
  std::vector<std::size_t> resolution_ranks;  // ranks of F(η) over B
  std::size_t lattice_size = 0;
  std::size_t betti_poset_size = 0;
  std::optional<bool> oracle_agrees;

  std::optional<Witness> witness;          // first failure over B
  std::optional<Witness> lattice_witness;  // first failure over L
  std::vector<std::string> violations;     // broken internal invariants; empty when healthy
};

/// Runs the full pipeline. Betti-linear iff the construction on B is an
/// acyclic complex resolving I; lattice-linear likewise on L. A lattice-linear
/// ideal is Betti-linear, so a negative B verdict settles L without building it.
template <class F>
LinearityReport decide_linearity(const MonomialIdeal& ideal, const F& field, const LinearityOptions& options = {}) {
  const Limits& limits = options.limits;
  LinearityReport r;
  r.field = field.name();
  r.vars = ideal.vars;
  r.gens = ideal.gens;

  LcmLattice lat = lcm_lattice(ideal, limits.max_lattice);
  BettiPoset bp = betti_poset(lat, field, limits);
  r.lattice_size = lat.size();
  r.betti_poset_size = bp.degrees.size();
  r.betti_table = bp.table;
  r.betti_totals = betti_totals(bp.table);
  r.pure = purity_check(bp.table);

  if (options.run_oracle && ideal.gens.size() <= limits.max_taylor_generators) {
    r.oracle_agrees = tor_betti(ideal, field, limits.max_taylor_generators) == bp.table;
    if (!*r.oracle_agrees) r.violations.push_back("Betti numbers disagree with the Taylor oracle");
  }

  auto on_b = verify_construction(bp.poset, bp.degrees, lat.degrees, field, limits);
  r.is_complex = on_b.is_complex;
  r.is_acyclic = on_b.is_complex && on_b.is_acyclic;
  r.betti_linear = r.is_acyclic && on_b.is_minimal;
  r.resolution_ranks = on_b.ranks;
  r.witness = on_b.witness;

  if (!r.betti_linear) {
    r.lattice_linear = false;
    r.lattice_status = "implied";
  } else if (!options.check_lattice) {
    r.lattice_status = "skipped";
  } else {
    try {
      auto on_l = verify_construction(lat.poset, lat.degrees, lat.degrees, field, limits);
      r.lattice_linear = on_l.is_complex && on_l.is_acyclic && on_l.is_minimal;
      r.lattice_witness = on_l.witness;
      r.lattice_status = "computed";
    } catch (const CapExceeded&) {
      r.lattice_status = "cap_exceeded";
    }
  }

  if (r.betti_linear && r.resolution_ranks != r.betti_totals) {
    r.violations.push_back("acyclic construction on B has ranks different from the Betti numbers");
  }
  if (r.pure && !r.betti_linear) r.violations.push_back("pure resolution reported as not Betti-linear");
  if (r.lattice_linear.value_or(false) && !r.betti_linear) {
    r.violations.push_back("lattice-linear but not Betti-linear");
  }
  return r;
}

}  // namespace bettilin

#endif  // BETTILIN_RESOLUTION_HPP
