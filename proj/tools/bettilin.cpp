#include <fstream>
#include <iostream>
#include <iterator>
#include <set>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "bettilin/bettilin.hpp"
#include "bettilin/report.hpp"

namespace {

using namespace bettilin;

struct Config {
  std::string input = "-";
  std::uint64_t characteristic = 0;
  std::string format = "json";
  bool mark_betti = false;
  std::string on = "betti";
  bool skip_lattice = false;
  Limits limits;
};

std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void print_warnings(const MonomialIdeal& ideal) {
  for (const auto& w : ideal.warnings) std::cerr << "warning: " << w << "\n";
}

void write_poset_text(std::ostream& os, const FinitePoset& p) {
  os << "elements: " << p.size() << "\n";
  for (std::size_t x = 0; x < p.size(); ++x) {
    os << p.label(x) << ":";
    for (std::size_t y : p.lower_covers(x)) os << " " << p.label(y);
    os << "\n";
  }
}

template <class F>
int cmd_check(const Config& cfg, const MonomialIdeal& ideal, const F& field) {
  LinearityOptions options;
  options.limits = cfg.limits;
  options.check_lattice = !cfg.skip_lattice;
  auto report = decide_linearity(ideal, field, options);
  if (cfg.format == "text") {
    write_report_text(std::cout, report);
  } else {
    std::cout << report_json(report).dump(2) << "\n";
  }
  return 0;
}

template <class F>
int cmd_poset(const Config& cfg, const MonomialIdeal& ideal, const F& field, bool betti_only) {
  auto lat = lcm_lattice(ideal, cfg.limits.max_lattice);
  auto bp = betti_poset(lat, field, cfg.limits);
  if (cfg.format == "dot") {
    if (betti_only) {
      write_dot(std::cout, bp.poset, {}, "betti_poset");
    } else {
      std::set<std::size_t> dashed;
      if (cfg.mark_betti) {
        for (std::size_t a = 0; a < lat.size(); ++a) {
          if (!bp.find(lat.degrees[a])) dashed.insert(a);
        }
      }
      write_dot(std::cout, lat.poset, dashed, "lcm_lattice");
    }
  } else if (cfg.format == "text") {
    write_poset_text(std::cout, betti_only ? bp.poset : lat.poset);
  } else {
    std::cout << ideal_summary_json(ideal, field.name(), lat, bp).dump(2) << "\n";
  }
  return 0;
}

template <class F>
int cmd_betti_table(const Config& cfg, const MonomialIdeal& ideal, const F& field) {
  auto lat = lcm_lattice(ideal, cfg.limits.max_lattice);
  auto bp = betti_poset(lat, field, cfg.limits);
  if (cfg.format == "text") {
    write_betti_text(std::cout, bp.table, ideal.vars);
  } else {
    Json out = {{"field", field.name()},
                {"betti_table", betti_table_json(bp.table, ideal.vars)},
                {"betti_totals", betti_totals(bp.table)}};
    std::cout << out.dump(2) << "\n";
  }
  return 0;
}

template <class F>
int cmd_resolution(const Config& cfg, const MonomialIdeal& ideal, const F& field) {
  auto lat = lcm_lattice(ideal, cfg.limits.max_lattice);
  const FinitePoset* poset = &lat.poset;
  const std::vector<Multidegree>* grading = &lat.degrees;
  BettiPoset bp;
  if (cfg.on == "betti") {
    bp = betti_poset(lat, field, cfg.limits);
    poset = &bp.poset;
    grading = &bp.degrees;
  }
  auto g = homogenize(poset_construction(*poset, field, cfg.limits), *grading);
  auto check = check_complex(g);
  bool acyclic = check.ok();
  std::optional<Multidegree> failed;
  for (const auto& alpha : lat.degrees) {
    if (!acyclic) break;
    if (!strand_exactness(g, alpha).exact) {
      acyclic = false;
      failed = alpha;
    }
  }
  if (cfg.format == "text") {
    std::cout << "ranks:";
    for (auto r : g.ranks()) std::cout << " " << r;
    std::cout << "\nis_complex: " << (check.ok() ? "true" : "false") << "\n";
    std::cout << "is_acyclic: " << (acyclic ? "true" : "false") << "\n";
    for (const auto& b : g.blocks()) {
      std::cout << "d" << b.degree << " " << g.grading()[b.source].to_string(ideal.vars) << " -> "
                << g.grading()[b.target].to_string(ideal.vars) << " shift " << b.shift.to_string(ideal.vars) << ":";
      for (const auto& row : b.matrix.to_dense(field)) {
        std::cout << " [";
        for (std::size_t c = 0; c < row.size(); ++c) std::cout << (c ? " " : "") << field.to_string(row[c]);
        std::cout << "]";
      }
      std::cout << "\n";
    }
  } else {
    Json out = graded_complex_json(g, ideal.vars);
    out["poset"] = cfg.on;
    out["is_complex"] = check.ok();
    out["is_acyclic"] = acyclic;
    out["witness"] = witness_json(check.witness, ideal.vars);
    out["failed_strand"] = failed ? Json(failed->to_string(ideal.vars)) : Json(nullptr);
    std::cout << out.dump(2) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Betti-linearity of monomial ideals"};
  app.require_subcommand(1);
  Config cfg;
  auto add_common = [&](CLI::App* sub, std::vector<std::string> formats) {
    sub->add_option("input", cfg.input, "ideal file, or - for stdin")->required();
    sub->add_option("--char", cfg.characteristic, "field characteristic: 0 for QQ, or a prime")
        ->default_val(0);
    sub->add_option("--format", cfg.format, "output format")
        ->check(CLI::IsMember(formats))
        ->default_val(formats.front());
    sub->add_option("--max-lattice", cfg.limits.max_lattice, "lattice element cap")
        ->default_val(cfg.limits.max_lattice);
    sub->add_option("--max-faces", cfg.limits.max_faces, "face count cap")->default_val(cfg.limits.max_faces);
    sub->add_option("--threads", cfg.limits.threads, "worker threads")->default_val(1)->check(CLI::PositiveNumber);
  };
  auto* check = app.add_subcommand("check", "decide Betti- and lattice-linearity");
  add_common(check, {"json", "text"});
  check->add_flag("--skip-lattice", cfg.skip_lattice, "do not run the construction on the lcm-lattice");
  auto* lattice = app.add_subcommand("lattice", "lcm-lattice");
  add_common(lattice, {"json", "text", "dot"});
  lattice->add_flag("--mark-betti", cfg.mark_betti, "dash elements outside the Betti poset");
  auto* bposet = app.add_subcommand("betti-poset", "Betti poset");
  add_common(bposet, {"json", "text", "dot"});
  auto* table = app.add_subcommand("betti-table", "multigraded Betti numbers");
  add_common(table, {"json", "text"});
  auto* resolution = app.add_subcommand("resolution", "homogenized poset construction");
  add_common(resolution, {"json", "text"});
  resolution->add_option("--on", cfg.on, "poset to build on")
      ->check(CLI::IsMember({"betti", "lattice"}))
      ->default_val("betti");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    auto ideal = parse_ideal(read_input(cfg.input));
    print_warnings(ideal);
    auto run = [&](const auto& field) -> int {
      if (check->parsed()) return cmd_check(cfg, ideal, field);
      if (lattice->parsed()) return cmd_poset(cfg, ideal, field, false);
      if (bposet->parsed()) return cmd_poset(cfg, ideal, field, true);
      if (table->parsed()) return cmd_betti_table(cfg, ideal, field);
      return cmd_resolution(cfg, ideal, field);
    };
    if (cfg.characteristic == 0) return run(RationalField{});
    return run(PrimeField{cfg.characteristic});
  } catch (const CapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
