#ifndef BETTILIN_TAYLOR_HPP
#define BETTILIN_TAYLOR_HPP

#include <bit>
#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "bettilin/errors.hpp"
#include "bettilin/homology.hpp"
#include "bettilin/monomial.hpp"

namespace bettilin {

/// Taylor resolution of a monomial ideal. The basis of homological degree i
/// is the (i+1)-subsets σ of generators (bitmasks), in degree lcm(σ), with
/// ∂σ = Σ_j (-1)^j x^{lcm σ - lcm(σ∖σ_j)} (σ∖σ_j), σ_j the j-th smallest index.
class TaylorComplex {
 public:
  struct Term {
    std::uint32_t face;
    int sign;
    Multidegree shift;
  };

  TaylorComplex(const MonomialIdeal& ideal, std::size_t max_generators = Limits{}.max_taylor_generators)
      : gens_(ideal.gens), nvars_(ideal.nvars()) {
    if (gens_.empty()) throw std::invalid_argument("Taylor complex of an ideal without generators");
    if (gens_.size() > max_generators || gens_.size() > 30) {
      throw CapExceeded("Taylor complex generator count", std::min<std::size_t>(max_generators, 30));
    }
    const std::uint32_t full = std::uint32_t{1} << gens_.size();
    lcm_.resize(full);
    lcm_[0] = Multidegree::zero(nvars_);
    for (std::uint32_t mask = 1; mask < full; ++mask) {
      auto low = static_cast<std::size_t>(std::countr_zero(mask));
      lcm_[mask] = lcm_[mask & (mask - 1)].join(gens_[low]);
    }
    basis_.resize(gens_.size());
    for (std::uint32_t mask = 1; mask < full; ++mask) {
      basis_[static_cast<std::size_t>(std::popcount(mask) - 1)].push_back(mask);
    }
  }

  std::size_t generators() const { return gens_.size(); }
  int top_degree() const { return static_cast<int>(gens_.size()) - 1; }
  std::size_t rank(int i) const {
    if (i < 0 || i > top_degree()) return 0;
    return basis_[static_cast<std::size_t>(i)].size();
  }
  const std::vector<std::uint32_t>& basis(int i) const { return basis_.at(static_cast<std::size_t>(i)); }
  const Multidegree& label(std::uint32_t mask) const { return lcm_.at(mask); }

  std::vector<Term> boundary(std::uint32_t mask) const {
    std::vector<Term> out;
    if (std::popcount(mask) < 2) return out;
    int j = 0;
    for (std::uint32_t rest = mask; rest; rest &= rest - 1, ++j) {
      std::uint32_t bit = rest & (~rest + 1);
      std::uint32_t face = mask & ~bit;
      out.push_back({face, j % 2 == 0 ? 1 : -1, lcm_[mask].minus(lcm_[face])});
    }
    return out;
  }

  /// ∂∘∂ = 0 with monomial coefficients tracked exactly.
  bool is_complex() const {
    for (const auto& level : basis_) {
      for (std::uint32_t mask : level) {
        std::map<std::pair<std::uint32_t, std::vector<std::uint32_t>>, int> acc;
        for (const auto& t1 : boundary(mask)) {
          for (const auto& t2 : boundary(t1.face)) {
            acc[{t2.face, t1.shift.plus(t2.shift).exponents()}] += t1.sign * t2.sign;
          }
        }
        for (const auto& [key, v] : acc) {
          if (v != 0) return false;
        }
      }
    }
    return true;
  }

  /// Strand at α of T itself: basis σ with lcm(σ) | α, unit coefficients.
  template <class F>
  std::shared_ptr<const LinearComplex<F>> strand(const F& field, const Multidegree& alpha) const {
    return build(field, [&](std::uint32_t mask) { return lcm_[mask].divides(alpha); });
  }

  /// Strand of T ⊗ k at α: basis σ with lcm(σ) = α, keeping only the
  /// differential entries of degree shift zero.
  template <class F>
  std::shared_ptr<const LinearComplex<F>> tor_strand(const F& field, const Multidegree& alpha) const {
    return build(field, [&](std::uint32_t mask) { return lcm_[mask] == alpha; });
  }

  /// Complex on the masks accepted by `in`; boundary terms landing on rejected
  /// masks are dropped. This is a subquotient of T whenever the rejected masks
  /// below the accepted ones span a subcomplex.
  template <class F, class Pred>
  std::shared_ptr<const LinearComplex<F>> build(const F& field, Pred&& in) const {
    std::vector<std::vector<std::uint32_t>> kept(basis_.size());
    std::vector<std::unordered_map<std::uint32_t, std::size_t>> where(basis_.size());
    std::vector<std::size_t> dims;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      for (std::uint32_t mask : basis_[i]) {
        if (in(mask)) {
          where[i].emplace(mask, kept[i].size());
          kept[i].push_back(mask);
        }
      }
      dims.push_back(kept[i].size());
    }
    auto out = std::make_shared<LinearComplex<F>>(field, 0, dims);
    for (std::size_t i = 1; i < basis_.size(); ++i) {
      SparseMatrix<F> d(kept[i - 1].size(), kept[i].size());
      for (std::size_t c = 0; c < kept[i].size(); ++c) {
        std::vector<std::pair<std::size_t, typename F::Element>> entries;
        for (const auto& t : boundary(kept[i][c])) {
          auto it = where[i - 1].find(t.face);
          if (it == where[i - 1].end()) continue;
          entries.emplace_back(it->second, field.from_int(t.sign));
        }
        d.set_column(c, make_sparse(field, std::move(entries)));
      }
      out->set_boundary(static_cast<int>(i), std::move(d));
    }
    return out;
  }

  /// Distinct lcm labels with their masks.
  std::map<Multidegree, std::vector<std::uint32_t>> masks_by_label() const {
    std::map<Multidegree, std::vector<std::uint32_t>> out;
    for (std::uint32_t mask = 1; mask < lcm_.size(); ++mask) out[lcm_[mask]].push_back(mask);
    return out;
  }

 private:
  std::vector<Multidegree> gens_;
  std::size_t nvars_;
  std::vector<Multidegree> lcm_;
  std::vector<std::vector<std::uint32_t>> basis_;
};

inline TaylorComplex taylor_complex(const MonomialIdeal& ideal,
                                    std::size_t max_generators = Limits{}.max_taylor_generators) {
  return TaylorComplex(ideal, max_generators);
}

/// β_{i,α} = dim H_i((T ⊗ k)_α), computed for each α that labels a subset.
template <class F>
BettiTable tor_betti(const TaylorComplex& taylor, const F& field) {
  BettiTable table;
  for (const auto& [alpha, masks] : taylor.masks_by_label()) {
    auto h = taylor.tor_strand(field, alpha)->homology_dims();
    for (int i = h.min_degree; i <= h.max_degree(); ++i) {
      if (h.at(i) > 0) table[{i, alpha}] = h.at(i);
    }
  }
  return table;
}

template <class F>
BettiTable tor_betti(const MonomialIdeal& ideal, const F& field,
                     std::size_t max_generators = Limits{}.max_taylor_generators) {
  return tor_betti(TaylorComplex(ideal, max_generators), field);
}

/// Homology of T_α / Σ_{β ∈ covers} T_β, where T_β is the strand of T at β.
template <class F>
DegreeDims quotient_strand_homology(const TaylorComplex& taylor, const F& field, const Multidegree& alpha,
                                    const std::vector<Multidegree>& covers) {
  for (const auto& b : covers) {
    if (!b.divides(alpha) || b == alpha) throw std::invalid_argument("quotient strand: cover is not below alpha");
  }
  auto in_sub = [&](std::uint32_t mask) {
    for (const auto& b : covers) {
      if (taylor.label(mask).divides(b)) return true;
    }
    return false;
  };
  return taylor
      .build(field, [&](std::uint32_t mask) { return taylor.label(mask).divides(alpha) && !in_sub(mask); })
      ->homology_dims();
}

/// Same, with the covers of α taken in B: the maximal elements of B_{<α}.
template <class F>
DegreeDims quotient_strand_homology(const TaylorComplex& taylor, const LcmLattice& lat, const BettiPoset& bp,
                                    const F& field, const Multidegree& alpha) {
  if (!lat.find(alpha)) throw std::invalid_argument("quotient strand: " + alpha.to_string(lat.vars) + " is not in L");
  std::vector<Multidegree> below;
  for (const auto& d : bp.degrees) {
    if (d.divides(alpha) && d != alpha) below.push_back(d);
  }
  std::vector<Multidegree> covers;
  for (const auto& d : below) {
    bool maximal = std::none_of(below.begin(), below.end(), [&](const Multidegree& e) { return e != d && d.divides(e); });
    if (maximal) covers.push_back(d);
  }
  return quotient_strand_homology(taylor, field, alpha, covers);
}

}  // namespace bettilin

#endif  // BETTILIN_TAYLOR_HPP
