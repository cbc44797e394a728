#ifndef BETTILIN_REPORT_HPP
#define BETTILIN_REPORT_HPP

#include <algorithm>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "json.hpp"

#include "bettilin/monomial.hpp"
#include "bettilin/resolution.hpp"

namespace bettilin {

using Json = nlohmann::ordered_json;

inline Json exponents_json(const Multidegree& m) { return Json(m.exponents()); }

inline Json poset_json(const FinitePoset& p, const std::vector<Multidegree>& degrees,
                       const std::vector<std::string>& vars) {
  Json elems = Json::array();
  for (const auto& d : degrees) elems.push_back({{"monomial", d.to_string(vars)}, {"exponents", exponents_json(d)}});
  Json covers = Json::array();
  for (std::size_t x = 0; x < p.size(); ++x) {
    for (std::size_t y : p.lower_covers(x)) covers.push_back({y, x});
  }
  return {{"elems", elems}, {"covers", covers}};
}

/// Entries sorted by (i, α).
inline Json betti_table_json(const BettiTable& table, const std::vector<std::string>& vars) {
  Json out = Json::array();
  for (const auto& [key, rank] : table) {
    out.push_back({{"i", key.first},
                   {"alpha", exponents_json(key.second)},
                   {"monomial", key.second.to_string(vars)},
                   {"rank", rank}});
  }
  return out;
}

inline Json gens_json(const MonomialIdeal& ideal) {
  Json out = Json::array();
  for (const auto& g : ideal.gens) out.push_back(g.to_string(ideal.vars));
  return out;
}

inline Json ideal_summary_json(const MonomialIdeal& ideal, const std::string& field, const LcmLattice& lat,
                               const BettiPoset& bp) {
  return {{"field", field},
          {"vars", ideal.vars},
          {"gens", gens_json(ideal)},
          {"lattice", poset_json(lat.poset, lat.degrees, lat.vars)},
          {"betti_poset", poset_json(bp.poset, bp.degrees, lat.vars)},
          {"betti_table", betti_table_json(bp.table, lat.vars)},
          {"betti_totals", betti_totals(bp.table)}};
}

inline Json witness_json(const std::optional<Witness>& w, const std::vector<std::string>& vars) {
  if (!w) return nullptr;
  Json out = {{"reason", w->reason}, {"degree", w->degree}, {"alpha", w->alpha.to_string(vars)}};
  out["target"] = w->target ? Json(w->target->to_string(vars)) : Json(nullptr);
  return out;
}

inline Json report_json(const LinearityReport& r) {
  Json gens = Json::array();
  for (const auto& g : r.gens) gens.push_back(g.to_string(r.vars));
  Json out;
  out["field"] = r.field;
  out["vars"] = r.vars;
  out["gens"] = gens;
  out["is_complex"] = r.is_complex;
  out["is_acyclic"] = r.is_acyclic;
  out["betti_linear"] = r.betti_linear;
  out["lattice_linear"] = r.lattice_linear ? Json(*r.lattice_linear) : Json(nullptr);
  out["lattice_status"] = r.lattice_status;
  out["pure"] = r.pure;
  out["lattice_size"] = r.lattice_size;
  out["betti_poset_size"] = r.betti_poset_size;
  out["betti_table"] = betti_table_json(r.betti_table, r.vars);
  out["betti_totals"] = r.betti_totals;
  out["resolution_ranks"] = r.resolution_ranks;
  out["oracle_agrees"] = r.oracle_agrees ? Json(*r.oracle_agrees) : Json(nullptr);
  out["witness"] = witness_json(r.witness, r.vars);
  out["lattice_witness"] = witness_json(r.lattice_witness, r.vars);
  out["violations"] = r.violations;
  return out;
}

template <class F>
Json graded_complex_json(const GradedComplex<F>& g, const std::vector<std::string>& vars) {
  const F& field = g.field();
  Json modules = Json::array();
  for (int i = 0; i <= g.top_degree(); ++i) {
    Json summands = Json::array();
    for (std::size_t a = 0; a < g.poset().size(); ++a) {
      if (auto m = g.multiplicity(i, a)) {
        summands.push_back({{"element", a}, {"degree", g.grading()[a].to_string(vars)}, {"rank", m}});
      }
    }
    modules.push_back({{"i", i}, {"summands", summands}});
  }
  std::vector<const GradedBlock<F>*> order;
  for (const auto& b : g.blocks()) order.push_back(&b);
  std::sort(order.begin(), order.end(), [](const auto* x, const auto* y) {
    return std::tie(x->degree, x->source, x->target) < std::tie(y->degree, y->source, y->target);
  });
  Json blocks = Json::array();
  for (const auto* b : order) {
    Json rows = Json::array();
    for (const auto& row : b->matrix.to_dense(field)) {
      Json r = Json::array();
      for (const auto& v : row) r.push_back(field.to_string(v));
      rows.push_back(r);
    }
    blocks.push_back({{"i", b->degree},
                      {"source", g.grading()[b->source].to_string(vars)},
                      {"target", g.grading()[b->target].to_string(vars)},
                      {"shift", b->shift.to_string(vars)},
                      {"matrix", rows}});
  }
  return {{"field", field.name()}, {"ranks", g.ranks()}, {"modules", modules}, {"blocks", blocks}};
}

/// Rows are total degree minus homological degree, columns homological
/// degree; zeros print as '.'.
inline void write_betti_diagram(std::ostream& os, const BettiTable& table) {
  if (table.empty()) {
    os << "(zero ideal)\n";
    return;
  }
  std::map<std::pair<long, int>, std::size_t> cells;
  int max_i = 0;
  std::set<long> rows;
  for (const auto& [key, rank] : table) {
    long row = static_cast<long>(key.second.total_degree()) - key.first;
    cells[{row, key.first}] += rank;
    rows.insert(row);
    max_i = std::max(max_i, key.first);
  }
  auto totals = betti_totals(table);
  std::size_t width = 1;
  for (auto t : totals) width = std::max(width, std::to_string(t).size());
  width += 1;
  os << std::setw(7) << "";
  for (int i = 0; i <= max_i; ++i) os << std::setw(static_cast<int>(width)) << i;
  os << "\n" << std::setw(7) << std::left << "total:" << std::right;
  for (int i = 0; i <= max_i; ++i) os << std::setw(static_cast<int>(width)) << totals[static_cast<std::size_t>(i)];
  os << "\n";
  for (long row : rows) {
    os << std::setw(6) << row << ":";
    for (int i = 0; i <= max_i; ++i) {
      auto it = cells.find({row, i});
      os << std::setw(static_cast<int>(width)) << (it == cells.end() ? std::string(".") : std::to_string(it->second));
    }
    os << "\n";
  }
}

inline void write_report_text(std::ostream& os, const LinearityReport& r) {
  auto yes_no = [](bool b) { return b ? "true" : "false"; };
  os << "field: " << r.field << "\n";
  os << "ideal: (";
  for (std::size_t k = 0; k < r.gens.size(); ++k) os << (k ? ", " : "") << r.gens[k].to_string(r.vars);
  os << ")\n";
  os << "lattice elements: " << r.lattice_size << "\n";
  os << "betti poset elements: " << r.betti_poset_size << "\n";
  os << "is_complex: " << yes_no(r.is_complex) << "\n";
  os << "is_acyclic: " << yes_no(r.is_acyclic) << "\n";
  os << "betti_linear: " << yes_no(r.betti_linear) << "\n";
  os << "lattice_linear: " << (r.lattice_linear ? yes_no(*r.lattice_linear) : "unknown") << " (" << r.lattice_status
     << ")\n";
  os << "pure: " << yes_no(r.pure) << "\n";
  if (r.oracle_agrees) os << "oracle_agrees: " << yes_no(*r.oracle_agrees) << "\n";
  if (r.witness) {
    os << "witness: " << r.witness->reason << " failure in degree " << r.witness->degree << " at "
       << r.witness->alpha.to_string(r.vars);
    if (r.witness->target) os << " into " << r.witness->target->to_string(r.vars);
    os << "\n";
  }
  for (const auto& v : r.violations) os << "violation: " << v << "\n";
  os << "betti table:\n";
  write_betti_diagram(os, r.betti_table);
}

inline void write_betti_text(std::ostream& os, const BettiTable& table, const std::vector<std::string>& vars) {
  for (const auto& [key, rank] : table) os << key.first << " " << key.second.to_string(vars) << " " << rank << "\n";
  os << "totals:";
  for (auto t : betti_totals(table)) os << " " << t;
  os << "\n";
  write_betti_diagram(os, table);
}

}  // namespace bettilin

#endif  // BETTILIN_REPORT_HPP
