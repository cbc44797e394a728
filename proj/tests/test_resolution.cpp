#include <gtest/gtest.h>

#include <numeric>

#include "support.hpp"

using namespace bettilin;
using namespace testing_support;

namespace {

RationalField QQ;

FinitePoset antichain(std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("p" + std::to_string(i));
  return FinitePoset::from_relation(labels, [](std::size_t a, std::size_t b) { return a == b; });
}

/// Every multidegree componentwise between zero and `top`.
std::vector<Multidegree> box(const Multidegree& top) {
  std::vector<Multidegree> out{Multidegree::zero(top.size())};
  for (std::size_t v = 0; v < top.size(); ++v) {
    std::vector<Multidegree> next;
    for (const auto& m : out) {
      for (std::uint32_t e = 0; e <= top[v]; ++e) {
        auto x = m.exponents();
        x[v] = e;
        next.emplace_back(x);
      }
    }
    out = std::move(next);
  }
  return out;
}

Multidegree permute(const Multidegree& m, const std::vector<std::size_t>& perm) {
  std::vector<std::uint32_t> x(m.size());
  for (std::size_t v = 0; v < m.size(); ++v) x[perm[v]] = m[v];
  return Multidegree(x);
}

}  // namespace

TEST(PosetConstruction, Antichain) {
  auto d = poset_construction(antichain(3), QQ);
  EXPECT_EQ(d.total_ranks(), (std::vector<std::size_t>{3}));
  EXPECT_TRUE(d.maps().empty());
  for (std::size_t a = 0; a < 3; ++a) {
    EXPECT_EQ(d.dim(0, a), 1u);
    EXPECT_EQ(d.dim(1, a), 0u);
  }
}

TEST(PosetConstruction, Path5OnBAndL) {
  auto lat = lcm_lattice(data_ideal("path5.ideal"));
  auto bp = betti_poset(lat, QQ);
  auto on_b = poset_construction(bp.poset, QQ);
  EXPECT_EQ(on_b.total_ranks(), (std::vector<std::size_t>{4, 4, 1}));
  auto on_l = poset_construction(lat.poset, QQ);
  EXPECT_EQ(on_l.total_ranks(), (std::vector<std::size_t>{4, 4, 1}));
  // dims on B agree with the Betti table
  for (std::size_t k = 0; k < bp.poset.size(); ++k) {
    for (int i = 0; i <= on_b.top_degree(); ++i) {
      auto it = bp.table.find({i, bp.degrees[k]});
      EXPECT_EQ(on_b.dim(i, k), it == bp.table.end() ? 0u : it->second);
    }
  }
  // the top element has four covers in B, each carrying a nonzero φ_2
  auto top = *bp.find(md({1, 1, 1, 1, 1}));
  for (std::size_t lambda : bp.poset.lower_covers(top)) {
    const auto* phi = on_b.phi(2, top, lambda);
    ASSERT_NE(phi, nullptr);
    EXPECT_FALSE(phi->is_zero());
  }
  EXPECT_EQ(on_b.phi(1, top, bp.poset.lower_covers(top)[0]), nullptr);
}

TEST(PosetConstruction, SmallIdealBlocks) {
  auto principal = data_ideal("principal.ideal");
  auto lat1 = lcm_lattice(principal);
  auto g1 = homogenize(poset_construction(lat1.poset, QQ), lat1.degrees);
  EXPECT_EQ(g1.ranks(), (std::vector<std::size_t>{1}));
  EXPECT_TRUE(g1.blocks().empty());
  EXPECT_TRUE(is_complex(g1));

  auto xy = data_ideal("two_vars.ideal");
  auto lat = lcm_lattice(xy);
  auto g = homogenize(poset_construction(lat.poset, QQ), lat.degrees);
  EXPECT_EQ(g.ranks(), (std::vector<std::size_t>{2, 1}));
  ASSERT_EQ(g.blocks().size(), 2u);
  for (const auto& b : g.blocks()) {
    EXPECT_EQ(b.degree, 1);
    ASSERT_EQ(b.matrix.rows(), 1u);
    ASSERT_EQ(b.matrix.cols(), 1u);
    auto v = b.matrix.column(0).at(0).second;
    EXPECT_TRUE(v == 1 || v == -1);
    EXPECT_EQ(b.shift.total_degree(), 1u);
  }
  EXPECT_TRUE(g.is_minimal());
  EXPECT_TRUE(is_complex(g));
  for (const auto& alpha : box(md({2, 2}))) EXPECT_TRUE(strand_exactness(g, alpha).exact);
}

TEST(PosetConstruction, GradingMustPreserveOrder) {
  auto lat = lcm_lattice(data_ideal("two_vars.ideal"));
  auto d = poset_construction(lat.poset, QQ);
  auto bad = lat.degrees;
  bad[lattice_index(lat, "x*y")] = md({1, 0});
  EXPECT_THROW(homogenize(d, bad), std::invalid_argument);
  EXPECT_THROW(homogenize(d, std::vector<Multidegree>{md({1, 0})}), std::invalid_argument);
}

TEST(PosetConstruction, ConnectingChainMatchesMayerVietoris) {
  for (const auto& ideal : corpus(60, 31)) {
    auto lat = lcm_lattice(ideal);
    const auto& p = lat.poset;
    auto d = poset_construction(p, QQ);
    for (std::size_t a = 0; a < p.size(); ++a) {
      auto covers = p.lower_covers(a);
      auto whole = order_complex(p.strictly_below(a));
      for (std::size_t l : covers) {
        auto first = order_complex(p.at_most(l));
        std::vector<SimplicialComplex> others;
        for (std::size_t b : covers) {
          if (b != l) others.push_back(order_complex(p.at_most(b)));
        }
        auto second = others.empty() ? SimplicialComplex{} : union_of(others);
        for (int i = 1; i <= d.top_degree(); ++i) {
          if (d.dim(i, a) == 0) continue;
          for (const auto& rep : d.basis(i, a).representatives()) {
            auto z = d.below(a).to_faces(i - 1, rep);
            auto ours = d.connecting_chain(a, l, i, rep);
            auto theirs = mv_connecting(QQ, first, second, whole, i - 1, z);
            std::sort(ours.begin(), ours.end());
            std::sort(theirs.begin(), theirs.end());
            EXPECT_EQ(ours, theirs);
          }
        }
      }
    }
  }
  auto lat = lcm_lattice(data_ideal("path5.ideal"));
  auto d = poset_construction(lat.poset, QQ);
  auto top = lattice_index(lat, "a*b*c*d*e");
  auto atom = lattice_index(lat, "a*c");
  EXPECT_THROW(d.connecting_chain(top, atom, 2, d.basis(2, top).representatives()[0]), std::invalid_argument);
}

TEST(PosetConstruction, PhiIndependentOfSplitRuleInHomology) {
  for (const auto& ideal : corpus(60, 32)) {
    auto lat = lcm_lattice(ideal);
    auto d = poset_construction(lat.poset, QQ);
    for (const auto& [key, m] : d.maps()) {
      auto [i, a, l] = key;
      const auto& tgt = d.basis(i - 1, l);
      for (std::size_t j = 0; j < d.basis(i, a).dimension(); ++j) {
        const auto& rep = d.basis(i, a).representatives()[j];
        auto second = d.connecting_chain(a, l, i, rep, SplitRule::kPreferSecond);
        auto coeffs = tgt.express(d.below(l).from_faces(i - 2, second));
        std::vector<RationalField::Element> column(tgt.dimension(), 0);
        for (const auto& [r, v] : m.column(j)) column[r] = v;
        EXPECT_EQ(coeffs, column);
      }
    }
  }
}

TEST(Verdict, Path5) {
  auto r = decide_linearity(data_ideal("path5.ideal"), QQ);
  EXPECT_TRUE(r.is_complex);
  EXPECT_TRUE(r.is_acyclic);
  EXPECT_TRUE(r.betti_linear);
  ASSERT_TRUE(r.lattice_linear.has_value());
  EXPECT_FALSE(*r.lattice_linear);
  EXPECT_EQ(r.lattice_status, "computed");
  ASSERT_TRUE(r.lattice_witness.has_value());
  EXPECT_EQ(r.lattice_witness->reason, "differential");
  EXPECT_EQ(r.lattice_witness->degree, 2);
  EXPECT_EQ(r.lattice_witness->alpha, md({1, 1, 1, 1, 1}));
  EXPECT_EQ(r.resolution_ranks, (std::vector<std::size_t>{4, 4, 1}));
  EXPECT_EQ(r.lattice_size, 11u);
  EXPECT_EQ(r.betti_poset_size, 9u);
  EXPECT_EQ(r.oracle_agrees, std::optional<bool>(true));
  EXPECT_FALSE(r.pure);
  EXPECT_TRUE(r.violations.empty());
}

TEST(Verdict, Path5InPositiveCharacteristic) {
  for (std::uint64_t p : {2ULL, 3ULL, 32003ULL}) {
    auto r = decide_linearity(data_ideal("path5.ideal"), PrimeField{p});
    EXPECT_TRUE(r.betti_linear);
    EXPECT_EQ(r.lattice_linear, std::optional<bool>(false));
  }
}

TEST(Verdict, TwelveGens) {
  auto r = decide_linearity(data_ideal("twelve_gens.ideal"), QQ);
  EXPECT_FALSE(r.is_complex && r.is_acyclic);
  EXPECT_FALSE(r.betti_linear);
  EXPECT_EQ(r.lattice_linear, std::optional<bool>(false));
  EXPECT_EQ(r.lattice_status, "implied");
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_EQ(r.betti_totals, (std::vector<std::size_t>{12, 26, 21, 6}));
  EXPECT_EQ(r.lattice_size, 241u);
  EXPECT_EQ(r.oracle_agrees, std::optional<bool>(true));
  EXPECT_TRUE(r.violations.empty());
}

TEST(Verdict, CapsAndSkips) {
  LinearityOptions skip;
  skip.check_lattice = false;
  auto r = decide_linearity(data_ideal("path5.ideal"), QQ, skip);
  EXPECT_EQ(r.lattice_status, "skipped");
  EXPECT_FALSE(r.lattice_linear.has_value());
  LinearityOptions tight;
  tight.limits.max_lattice = 5;
  EXPECT_THROW(decide_linearity(data_ideal("path5.ideal"), QQ, tight), CapExceeded);
  LinearityOptions no_oracle;
  no_oracle.run_oracle = false;
  EXPECT_FALSE(decide_linearity(data_ideal("two_vars.ideal"), QQ, no_oracle).oracle_agrees.has_value());
}

TEST(Verdict, SmallIdeals) {
  for (const char* name : {"principal.ideal", "two_vars.ideal", "max_square.ideal", "squarefree_veronese.ideal"}) {
    auto r = decide_linearity(data_ideal(name), QQ);
    EXPECT_TRUE(r.betti_linear) << name;
    EXPECT_EQ(r.lattice_linear, std::optional<bool>(true)) << name;
    EXPECT_TRUE(r.pure) << name;
    EXPECT_TRUE(r.violations.empty()) << name;
  }
}

TEST(Purity, Cases) {
  EXPECT_TRUE(purity_check({}));
  EXPECT_TRUE(purity_check({{{0, md({1, 0})}, 1}, {{0, md({0, 1})}, 1}, {{1, md({1, 1})}, 1}}));
  EXPECT_FALSE(purity_check({{{0, md({2, 0})}, 1}, {{0, md({0, 1})}, 1}, {{1, md({2, 1})}, 1}}));
  EXPECT_FALSE(purity_check({{{0, md({2, 0})}, 1}, {{1, md({1, 0})}, 1}}));
  EXPECT_FALSE(purity_check(betti_poset(lcm_lattice(data_ideal("path5.ideal")), QQ).table));
}

TEST(Properties, CorpusInvariants) {
  for (auto fld : {std::uint64_t{0}, std::uint64_t{2}}) {
    with_field(fld, [&](const auto& field) {
      std::size_t linear = 0, nonlinear = 0;
      for (const auto& ideal : corpus(200, 33)) {
        auto r = decide_linearity(ideal, field);
        EXPECT_TRUE(r.violations.empty()) << r.violations.front();
        EXPECT_EQ(r.oracle_agrees, std::optional<bool>(true));
        if (r.pure) {
          EXPECT_TRUE(r.betti_linear);
        }
        if (r.betti_linear) {
          EXPECT_EQ(r.resolution_ranks, r.betti_totals);
          ++linear;
        } else {
          EXPECT_EQ(r.lattice_linear, std::optional<bool>(false));
          ++nonlinear;
        }
        if (r.lattice_linear.value_or(false)) {
          EXPECT_TRUE(r.betti_linear);
        }
      }
      EXPECT_GT(linear, 0u);
      EXPECT_GT(nonlinear, 0u);
      return 0;
    });
  }
}

TEST(Properties, BlocksLieOnCoversWithPositiveShifts) {
  for (const auto& ideal : corpus(80, 34)) {
    auto lat = lcm_lattice(ideal);
    auto bp = betti_poset(lat, QQ);
    auto g = homogenize(poset_construction(bp.poset, QQ), bp.degrees);
    for (const auto& b : g.blocks()) {
      EXPECT_TRUE(bp.poset.covers(b.source, b.target));
      EXPECT_FALSE(b.shift.is_zero());
      EXPECT_EQ(b.matrix.rows(), g.multiplicity(b.degree - 1, b.target));
      EXPECT_EQ(b.matrix.cols(), g.multiplicity(b.degree, b.source));
    }
    EXPECT_TRUE(g.is_minimal());
    // when the differential squares to zero, the composites vanish on every path
    if (check_complex(g).squares_to_zero) {
      for (const auto& outer : g.blocks()) {
        for (std::size_t mu = 0; mu < bp.poset.size(); ++mu) {
          SparseMatrix<RationalField> acc(g.multiplicity(outer.degree - 2, mu), outer.matrix.cols());
          bool any = false;
          for (const auto& other : g.blocks()) {
            if (other.degree != outer.degree || other.source != outer.source) continue;
            const auto* inner = g.block(outer.degree - 1, other.target, mu);
            if (!inner) continue;
            auto prod = inner->multiply(QQ, other.matrix);
            for (std::size_t c = 0; c < prod.cols(); ++c) {
              acc.set_column(c, axpy(QQ, QQ.one(), prod.column(c), acc.column(c)));
            }
            any = true;
          }
          if (any) {
            EXPECT_TRUE(acc.is_zero());
          }
        }
      }
    }
  }
}

TEST(Properties, LatticeStrandsSuffice) {
  for (const auto& ideal : corpus(80, 35)) {
    auto lat = lcm_lattice(ideal);
    auto bp = betti_poset(lat, QQ);
    auto g = homogenize(poset_construction(bp.poset, QQ), bp.degrees);
    if (!is_complex(g)) continue;
    bool on_lattice = true, on_box = true;
    for (const auto& alpha : lat.degrees) on_lattice = on_lattice && strand_exactness(g, alpha).exact;
    for (const auto& alpha : box(lat.degrees.back())) on_box = on_box && strand_exactness(g, alpha).exact;
    EXPECT_EQ(on_lattice, on_box);
  }
}

TEST(Properties, PermutationInvariance) {
  std::mt19937_64 rng(36);
  for (const auto& ideal : corpus(80, 37)) {
    std::vector<std::size_t> perm(ideal.nvars());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<Multidegree> gens;
    for (const auto& m : ideal.gens) gens.push_back(permute(m, perm));
    std::shuffle(gens.begin(), gens.end(), rng);
    auto moved = MonomialIdeal::minimalized(ideal.vars, gens);
    auto a = decide_linearity(ideal, QQ);
    auto b = decide_linearity(moved, QQ);
    EXPECT_EQ(a.betti_linear, b.betti_linear);
    EXPECT_EQ(a.lattice_linear, b.lattice_linear);
    EXPECT_EQ(a.is_complex, b.is_complex);
    EXPECT_EQ(a.betti_totals, b.betti_totals);
    EXPECT_EQ(a.resolution_ranks, b.resolution_ranks);
    BettiTable relabelled;
    for (const auto& [key, v] : a.betti_table) relabelled[{key.first, permute(key.second, perm)}] = v;
    EXPECT_EQ(relabelled, b.betti_table);
  }
}

TEST(Properties, ThreadCountDoesNotChangeVerdict) {
  LinearityOptions many;
  many.limits.threads = 4;
  auto a = decide_linearity(data_ideal("twelve_gens.ideal"), QQ);
  auto b = decide_linearity(data_ideal("twelve_gens.ideal"), QQ, many);
  EXPECT_EQ(a.betti_table, b.betti_table);
  EXPECT_EQ(a.resolution_ranks, b.resolution_ranks);
  EXPECT_EQ(a.betti_linear, b.betti_linear);
  ASSERT_TRUE(a.witness && b.witness);
  EXPECT_EQ(a.witness->alpha, b.witness->alpha);
}
