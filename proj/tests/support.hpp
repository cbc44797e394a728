#ifndef BETTILIN_TESTS_SUPPORT_HPP
#define BETTILIN_TESTS_SUPPORT_HPP

#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bettilin/bettilin.hpp"

namespace testing_support {

using namespace bettilin;

inline std::string read_data(const std::string& name) {
  std::ifstream in(std::string(BETTILIN_DATA_DIR) + "/" + name);
  if (!in) throw std::runtime_error("missing data file " + name);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline MonomialIdeal data_ideal(const std::string& name) { return parse_ideal(read_data(name)); }

inline std::vector<std::string> var_names(std::size_t n) {
  std::vector<std::string> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(std::string(1, static_cast<char>('a' + i)));
  return v;
}

/// Random nonunit ideal with nvars variables, at most ngens generators and
/// exponents at most max_exp (before minimalization).
inline MonomialIdeal random_ideal(std::mt19937_64& rng, std::size_t nvars, std::size_t ngens, std::uint32_t max_exp) {
  std::uniform_int_distribution<std::uint32_t> e(0, max_exp);
  std::vector<Multidegree> gens;
  while (gens.size() < ngens) {
    std::vector<std::uint32_t> x(nvars);
    for (auto& v : x) v = e(rng);
    Multidegree m(x);
    if (!m.is_zero()) gens.push_back(m);
  }
  return MonomialIdeal::minimalized(var_names(nvars), gens);
}

/// The desk-scale corpus: up to 4 variables, up to 5 generators, exponents
/// up to 3. Deterministic for a given seed.
inline std::vector<MonomialIdeal> corpus(std::size_t count, std::uint64_t seed = 20261016) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> nv(1, 4), ng(1, 5);
  std::vector<MonomialIdeal> out;
  for (std::size_t k = 0; k < count; ++k) out.push_back(random_ideal(rng, nv(rng), ng(rng), 3));
  return out;
}

/// Random poset on n elements: i < j with probability p, then transitive
/// closure. Elements are labelled by index.
inline FinitePoset random_poset(std::mt19937_64& rng, std::size_t n, double p) {
  std::vector<std::vector<bool>> rel(n, std::vector<bool>(n, false));
  std::bernoulli_distribution coin(p);
  for (std::size_t i = 0; i < n; ++i) {
    rel[i][i] = true;
    for (std::size_t j = i + 1; j < n; ++j) rel[i][j] = coin(rng);
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (rel[i][k] && rel[k][j]) rel[i][j] = true;
      }
    }
  }
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("p" + std::to_string(i));
  return FinitePoset::from_relation(labels, [&](std::size_t a, std::size_t b) { return bool(rel[a][b]); });
}

/// Random complex on nv vertices from nf random facets of size up to max_size.
inline SimplicialComplex random_complex(std::mt19937_64& rng, int nv, int nf, int max_size) {
  std::uniform_int_distribution<int> size(1, max_size), vert(0, nv - 1);
  std::vector<Face> facets;
  for (int k = 0; k < nf; ++k) {
    Face f;
    int s = size(rng);
    while (static_cast<int>(f.size()) < s) {
      int v = vert(rng);
      if (std::find(f.begin(), f.end(), v) == f.end()) f.push_back(v);
    }
    std::sort(f.begin(), f.end());
    facets.push_back(f);
  }
  return SimplicialComplex::from_facets(facets);
}

/// Number of chains (including the empty chain) by brute force over subsets.
inline std::size_t brute_force_chain_count(const FinitePoset& p) {
  const std::size_t n = p.size();
  std::size_t count = 0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    bool chain = true;
    for (std::size_t i = 0; i < n && chain; ++i) {
      for (std::size_t j = i + 1; j < n && chain; ++j) {
        if ((mask >> i & 1) && (mask >> j & 1) && !p.comparable(i, j)) chain = false;
      }
    }
    if (chain) ++count;
  }
  return count;
}

/// All distinct joins of nonempty generator subsets, by enumeration.
inline std::vector<Multidegree> brute_force_joins(const MonomialIdeal& ideal) {
  std::vector<Multidegree> out;
  const std::size_t g = ideal.gens.size();
  for (std::uint32_t mask = 1; mask < (1u << g); ++mask) {
    Multidegree j = Multidegree::zero(ideal.nvars());
    for (std::size_t k = 0; k < g; ++k) {
      if (mask >> k & 1) j = j.join(ideal.gens[k]);
    }
    out.push_back(j);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline SimplicialComplex union_of(const std::vector<SimplicialComplex>& parts) {
  std::vector<Face> faces;
  for (const auto& s : parts) {
    for (int d = -1; d <= s.dimension(); ++d) faces.insert(faces.end(), s.faces(d).begin(), s.faces(d).end());
  }
  return SimplicialComplex::from_closed_faces(faces);
}

inline Multidegree md(std::initializer_list<std::uint32_t> e) { return Multidegree(e); }

inline std::size_t lattice_index(const LcmLattice& lat, const std::string& label) {
  for (std::size_t i = 0; i < lat.size(); ++i) {
    if (lat.label(i) == label) return i;
  }
  throw std::runtime_error("no lattice element " + label);
}

}  // namespace testing_support

#endif  // BETTILIN_TESTS_SUPPORT_HPP
