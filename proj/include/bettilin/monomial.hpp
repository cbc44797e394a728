#ifndef BETTILIN_MONOMIAL_HPP
#define BETTILIN_MONOMIAL_HPP

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "bettilin/errors.hpp"
#include "bettilin/homology.hpp"
#include "bettilin/parallel.hpp"
#include "bettilin/poset.hpp"

namespace bettilin {

/// Exponent vector a in N^n, standing for the monomial x^a. Ordered by
/// (total degree, lexicographic exponents).
class Multidegree {
 public:
  Multidegree() = default;
  explicit Multidegree(std::vector<std::uint32_t> exponents) : exps_(std::move(exponents)) {}
  Multidegree(std::initializer_list<std::uint32_t> exponents) : exps_(exponents) {}

  static Multidegree zero(std::size_t n) { return Multidegree(std::vector<std::uint32_t>(n, 0)); }

  std::size_t size() const { return exps_.size(); }
  std::uint32_t operator[](std::size_t i) const { return exps_[i]; }
  const std::vector<std::uint32_t>& exponents() const { return exps_; }

  /// Componentwise <=, i.e. x^this divides x^other.
  bool divides(const Multidegree& other) const {
    check_same_size(other);
    for (std::size_t i = 0; i < exps_.size(); ++i) {
      if (exps_[i] > other.exps_[i]) return false;
    }
    return true;
  }

  /// Componentwise max (lcm).
  Multidegree join(const Multidegree& other) const {
    check_same_size(other);
    std::vector<std::uint32_t> out(exps_.size());
    for (std::size_t i = 0; i < exps_.size(); ++i) out[i] = std::max(exps_[i], other.exps_[i]);
    return Multidegree(std::move(out));
  }

  /// Componentwise min (gcd).
  Multidegree meet(const Multidegree& other) const {
    check_same_size(other);
    std::vector<std::uint32_t> out(exps_.size());
    for (std::size_t i = 0; i < exps_.size(); ++i) out[i] = std::min(exps_[i], other.exps_[i]);
    return Multidegree(std::move(out));
  }

  /// this - other; requires other to divide this.
  Multidegree minus(const Multidegree& other) const {
    if (!other.divides(*this)) throw std::invalid_argument("multidegree difference would be negative");
    std::vector<std::uint32_t> out(exps_.size());
    for (std::size_t i = 0; i < exps_.size(); ++i) out[i] = exps_[i] - other.exps_[i];
    return Multidegree(std::move(out));
  }

  Multidegree plus(const Multidegree& other) const {
    check_same_size(other);
    std::vector<std::uint32_t> out(exps_.size());
    for (std::size_t i = 0; i < exps_.size(); ++i) out[i] = exps_[i] + other.exps_[i];
    return Multidegree(std::move(out));
  }

  std::uint64_t total_degree() const { return std::accumulate(exps_.begin(), exps_.end(), std::uint64_t{0}); }
  bool is_zero() const { return total_degree() == 0; }

  /// "a*c^2"-style string; "1" for the zero vector.
  std::string to_string(const std::vector<std::string>& names) const {
    std::string s;
    for (std::size_t i = 0; i < exps_.size(); ++i) {
      if (exps_[i] == 0) continue;
      if (!s.empty()) s += '*';
      s += i < names.size() ? names[i] : "x" + std::to_string(i + 1);
      if (exps_[i] > 1) s += "^" + std::to_string(exps_[i]);
    }
    return s.empty() ? "1" : s;
  }

  friend bool operator==(const Multidegree& a, const Multidegree& b) { return a.exps_ == b.exps_; }
  friend bool operator!=(const Multidegree& a, const Multidegree& b) { return !(a == b); }
  friend bool operator<(const Multidegree& a, const Multidegree& b) {
    auto da = a.total_degree(), db = b.total_degree();
    return da != db ? da < db : a.exps_ < b.exps_;
  }

 private:
  void check_same_size(const Multidegree& other) const {
    if (other.exps_.size() != exps_.size()) throw std::invalid_argument("multidegrees have different lengths");
  }
  std::vector<std::uint32_t> exps_;
};

struct MultidegreeHash {
  std::size_t operator()(const Multidegree& m) const noexcept {
    std::size_t h = m.size();
    for (auto e : m.exponents()) h ^= std::hash<std::uint32_t>{}(e) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

/// A monomial ideal given by its minimal generators (input order kept).
struct MonomialIdeal {
  std::vector<std::string> vars;
  std::vector<Multidegree> gens;
  std::vector<std::string> warnings;

  std::size_t nvars() const { return vars.size(); }
  std::string monomial(const Multidegree& m) const { return m.to_string(vars); }

  /// Drops duplicates and generators divisible by another generator,
  /// keeping the first occurrence order.
  static MonomialIdeal minimalized(std::vector<std::string> vars, const std::vector<Multidegree>& gens) {
    MonomialIdeal ideal;
    ideal.vars = std::move(vars);
    if (gens.empty()) throw std::invalid_argument("an ideal needs at least one generator");
    for (std::size_t i = 0; i < gens.size(); ++i) {
      if (gens[i].size() != ideal.vars.size()) throw std::invalid_argument("generator has the wrong number of exponents");
      if (gens[i].is_zero()) throw std::invalid_argument("the unit monomial is not a proper generator");
    }
    for (std::size_t i = 0; i < gens.size(); ++i) {
      bool keep = true;
      for (std::size_t j = 0; j < gens.size() && keep; ++j) {
        if (i == j) continue;
        if (gens[j] == gens[i]) {
          if (j < i) {
            keep = false;
            ideal.warnings.push_back("duplicate generator " + ideal.monomial(gens[i]) + " removed");
          }
        } else if (gens[j].divides(gens[i])) {
          keep = false;
          ideal.warnings.push_back("generator " + ideal.monomial(gens[i]) + " is divisible by " +
                                   ideal.monomial(gens[j]) + " and was removed");
        }
      }
      if (keep) ideal.gens.push_back(gens[i]);
    }
    return ideal;
  }
};

namespace detail {

struct Statement {
  std::size_t line;
  std::string text;
};

inline std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline bool is_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

class GensParser {
 public:
  GensParser(std::string text, std::size_t line, const std::vector<std::string>& vars)
      : text_(std::move(text)), line_(line), vars_(vars) {
    for (std::size_t i = 0; i < vars_.size(); ++i) var_index_.emplace(vars_[i], i);
  }

  std::vector<Multidegree> parse() {
    std::vector<Multidegree> out;
    skip_space();
    if (at_end()) throw ParseError(line_, "empty generator list");
    while (true) {
      out.push_back(monomial());
      skip_space();
      if (at_end()) break;
      expect(',');
      skip_space();
      if (at_end()) throw ParseError(line_, "trailing comma in generator list");
    }
    return out;
  }

 private:
  Multidegree monomial() {
    skip_space();
    std::vector<std::uint32_t> exps(vars_.size(), 0);
    if (peek() == '[') {
      ++pos_;
      std::vector<std::uint32_t> tuple;
      while (true) {
        skip_space();
        tuple.push_back(number());
        skip_space();
        if (peek() == ']') {
          ++pos_;
          break;
        }
        expect(',');
      }
      if (tuple.size() != vars_.size()) {
        throw ParseError(line_, "exponent tuple has " + std::to_string(tuple.size()) + " entries, expected " +
                                    std::to_string(vars_.size()));
      }
      return Multidegree(std::move(tuple));
    }
    while (true) {
      skip_space();
      std::string name = identifier();
      auto it = var_index_.find(name);
      if (it == var_index_.end()) throw ParseError(line_, "unknown variable '" + name + "'");
      std::uint32_t e = 1;
      skip_space();
      if (peek() == '^') {
        ++pos_;
        skip_space();
        e = number();
      }
      exps[it->second] += e;
      skip_space();
      if (peek() != '*') break;
      ++pos_;
    }
    return Multidegree(std::move(exps));
  }

  std::string identifier() {
    std::size_t start = pos_;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
    std::string id = text_.substr(start, pos_ - start);
    if (!is_identifier(id)) throw ParseError(line_, "malformed monomial near '" + text_.substr(start, 10) + "'");
    return id;
  }

  std::uint32_t number() {
    std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) throw ParseError(line_, "expected a non-negative integer");
    std::string digits = text_.substr(start, pos_ - start);
    if (digits.size() > 9) throw ParseError(line_, "exponent too large: " + digits);
    return static_cast<std::uint32_t>(std::stoul(digits));
  }

  void expect(char c) {
    if (peek() != c) {
      std::string got = at_end() ? "end of input" : std::string("'") + text_[pos_] + "'";
      throw ParseError(line_, std::string("expected '") + c + "', got " + got);
    }
    ++pos_;
  }
  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  bool at_end() const { return pos_ >= text_.size(); }

  std::string text_;
  std::size_t pos_ = 0;
  std::size_t line_;
  const std::vector<std::string>& vars_;
  std::unordered_map<std::string, std::size_t> var_index_;
};

}  // namespace detail

/// Parses
///   vars <name>+
///   gens <monomial> (, <monomial>)*
/// where a monomial is name(^e)?(*name(^e)?)* or an exponent tuple [e1,...,en].
/// Statements end at a newline or ';'; '#' starts a comment.
inline MonomialIdeal parse_ideal(const std::string& text) {
  std::vector<detail::Statement> statements;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::size_t start = 0;
    while (start <= line.size()) {
      auto semi = line.find(';', start);
      std::string piece = detail::trim(line.substr(start, semi == std::string::npos ? std::string::npos : semi - start));
      if (!piece.empty()) statements.push_back({lineno, piece});
      if (semi == std::string::npos) break;
      start = semi + 1;
    }
  }
  if (statements.empty()) throw ParseError(std::max<std::size_t>(lineno, 1), "missing 'vars' statement");
  auto keyword = [](const std::string& s) { return s.substr(0, s.find_first_of(" \t")); };
  auto rest = [](const std::string& s) {
    auto sp = s.find_first_of(" \t");
    return sp == std::string::npos ? std::string{} : detail::trim(s.substr(sp));
  };

  const auto& vs = statements[0];
  if (keyword(vs.text) != "vars") throw ParseError(vs.line, "expected 'vars', got '" + keyword(vs.text) + "'");
  std::vector<std::string> vars;
  {
    std::istringstream names(rest(vs.text));
    std::string name;
    std::set<std::string> seen;
    while (names >> name) {
      if (!detail::is_identifier(name)) throw ParseError(vs.line, "bad variable name '" + name + "'");
      if (!seen.insert(name).second) throw ParseError(vs.line, "variable '" + name + "' declared twice");
      vars.push_back(name);
    }
  }
  if (vars.empty()) throw ParseError(vs.line, "no variables declared");

  if (statements.size() < 2) throw ParseError(vs.line, "missing 'gens' statement");
  const auto& gs = statements[1];
  if (keyword(gs.text) != "gens") throw ParseError(gs.line, "expected 'gens', got '" + keyword(gs.text) + "'");
  auto gens = detail::GensParser(rest(gs.text), gs.line, vars).parse();
  for (const auto& g : gens) {
    if (g.is_zero()) throw ParseError(gs.line, "the unit monomial is not a proper generator");
  }
  if (statements.size() > 2) throw ParseError(statements[2].line, "unexpected statement '" + statements[2].text + "'");
  return MonomialIdeal::minimalized(std::move(vars), gens);
}

/// Lcm-lattice without its bottom: the distinct joins of nonempty sets of
/// generators, ordered by divisibility. Element ids equal indices.
struct LcmLattice {
  FinitePoset poset;
  std::vector<Multidegree> degrees;
  std::vector<std::size_t> generator_element;  // generator index -> element
  std::vector<std::string> vars;

  std::size_t size() const { return degrees.size(); }
  std::optional<std::size_t> find(const Multidegree& m) const {
    auto it = std::lower_bound(degrees.begin(), degrees.end(), m);
    if (it == degrees.end() || *it != m) return std::nullopt;
    return static_cast<std::size_t>(it - degrees.begin());
  }
  std::string label(std::size_t i) const { return degrees.at(i).to_string(vars); }
};

inline FinitePoset divisibility_poset(const std::vector<Multidegree>& degrees, const std::vector<std::string>& vars,
                                      std::vector<int> ids = {}) {
  std::vector<std::string> labels;
  for (const auto& d : degrees) labels.push_back(d.to_string(vars));
  return FinitePoset::from_relation(
      std::move(labels), [&](std::size_t a, std::size_t b) { return degrees[a].divides(degrees[b]); }, std::move(ids));
}

/// Closure of the generators under joins, seeded with the generators and
/// joined with generators until nothing new appears.
inline LcmLattice lcm_lattice(const MonomialIdeal& ideal, std::size_t cap = Limits{}.max_lattice) {
  if (ideal.gens.empty()) throw std::invalid_argument("lcm lattice of an ideal without generators");
  std::unordered_set<Multidegree, MultidegreeHash> seen(ideal.gens.begin(), ideal.gens.end());
  std::vector<Multidegree> frontier(seen.begin(), seen.end());
  if (seen.size() > cap) throw CapExceeded("lcm lattice size", cap);
  while (!frontier.empty()) {
    std::vector<Multidegree> next;
    for (const auto& x : frontier) {
      for (const auto& g : ideal.gens) {
        Multidegree j = x.join(g);
        if (seen.insert(j).second) {
          if (seen.size() > cap) throw CapExceeded("lcm lattice size", cap);
          next.push_back(std::move(j));
        }
      }
    }
    frontier = std::move(next);
  }
  LcmLattice lat;
  lat.vars = ideal.vars;
  lat.degrees.assign(seen.begin(), seen.end());
  std::sort(lat.degrees.begin(), lat.degrees.end());
  lat.poset = divisibility_poset(lat.degrees, lat.vars);
  for (const auto& g : ideal.gens) lat.generator_element.push_back(*lat.find(g));
  return lat;
}

/// β_{i,α}, keyed by (homological degree, multidegree).
using BettiTable = std::map<std::pair<int, Multidegree>, std::size_t>;

inline std::vector<std::size_t> betti_totals(const BettiTable& table) {
  std::vector<std::size_t> totals;
  for (const auto& [key, rank] : table) {
    auto i = static_cast<std::size_t>(key.first);
    if (totals.size() <= i) totals.resize(i + 1, 0);
    totals[i] += rank;
  }
  return totals;
}

/// Betti poset B ⊆ L with the multigraded Betti numbers of the ideal.
struct BettiPoset {
  FinitePoset poset;                      // induced from L; ids are lattice ids
  std::vector<Multidegree> degrees;       // per element of B
  std::vector<std::size_t> lattice_index; // ι : B -> L
  BettiTable table;

  std::optional<std::size_t> find(const Multidegree& m) const {
    auto it = std::lower_bound(degrees.begin(), degrees.end(), m);
    if (it == degrees.end() || *it != m) return std::nullopt;
    return static_cast<std::size_t>(it - degrees.begin());
  }
};

enum class BettiRoute {
  kCrosscut,      // H̃(Θ(L_{<α})), homotopy equivalent to Δ(L_{<α})
  kOrderComplex,  // H̃(Δ(L_{<α})) directly
};

/// Reduced homology of L_{<α} for one lattice element, by the chosen route.
template <class F>
DegreeDims lattice_lower_homology(const LcmLattice& lat, std::size_t alpha, const F& field, BettiRoute route,
                                  std::size_t max_faces = Limits{}.max_faces) {
  FinitePoset below = lat.poset.strictly_below(alpha);
  SimplicialComplex complex =
      route == BettiRoute::kCrosscut ? theta_complex(below, max_faces) : order_complex(below, max_faces);
  return reduced_homology(field, complex);
}

/// α ∈ B iff H̃_*(L_{<α}) ≠ 0; β_{i,α} = dim H̃_{i-1}(Δ(L_{<α})).
template <class F>
BettiPoset betti_poset(const LcmLattice& lat, const F& field, const Limits& limits = {},
                       BettiRoute route = BettiRoute::kCrosscut) {
  std::vector<DegreeDims> homology(lat.size());
  parallel_for(lat.size(), limits.threads, [&](std::size_t alpha) {
    homology[alpha] = lattice_lower_homology(lat, alpha, field, route, limits.max_faces);
  });
  BettiPoset bp;
  for (std::size_t alpha = 0; alpha < lat.size(); ++alpha) {
    const auto& h = homology[alpha];
    if (h.all_zero()) continue;
    bp.lattice_index.push_back(alpha);
    bp.degrees.push_back(lat.degrees[alpha]);
    for (int d = h.min_degree; d <= h.max_degree(); ++d) {
      if (h.at(d) > 0) bp.table[{d + 1, lat.degrees[alpha]}] = h.at(d);
    }
  }
  bp.poset = lat.poset.induced(bp.lattice_index);
  return bp;
}

}  // namespace bettilin

#endif  // BETTILIN_MONOMIAL_HPP
