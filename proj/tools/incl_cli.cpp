// incl: command-line front end for team semantics of inclusion logic.
//
// Exit codes: 0 yes, 1 no, 2 input error, 3 resource guard exceeded.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "incl/incl.hpp"
#include "json.hpp"

namespace {

using namespace incl;
using Json = nlohmann::ordered_json;

constexpr int kYes = 0;
constexpr int kNo = 1;
constexpr int kInputError = 2;
constexpr int kGuard = 3;

struct Guards {
  std::size_t max_rows = MsmOptions{}.brute_max_rows;
  std::size_t max_domain = MsmOptions{}.brute_max_domain;
  std::size_t max_cover_rows = EvalLimits{}.max_cover_rows;
  std::size_t max_exists_rows = EvalLimits{}.max_exists_rows;

  void attach(CLI::App& app) {
    app.add_option("--max-rows", max_rows, "Largest team enumerated by brute force")->capture_default_str();
    app.add_option("--max-domain", max_domain, "Largest domain for brute force over quantifiers")
        ->capture_default_str();
    app.add_option("--max-cover-rows", max_cover_rows, "Largest team split by a disjunction")
        ->capture_default_str();
    app.add_option("--max-exists-rows", max_exists_rows, "Largest extended team searched for E x.")
        ->capture_default_str();
  }

  MsmOptions options() const {
    MsmOptions o;
    o.brute_max_rows = max_rows;
    o.brute_max_domain = max_domain;
    o.eval.max_cover_rows = max_cover_rows;
    o.eval.max_exists_rows = max_exists_rows;
    return o;
  }
};

struct Inputs {
  std::string model_file;
  std::string team_file;
  std::string formula;

  void attach(CLI::App& app) {
    app.add_option("model", model_file, "Model JSON file")->required();
    app.add_option("team", team_file, "Team JSON file")->required();
    app.add_option("formula", formula, "Formula text")->required();
  }

  Model model() const { return model_from_json(read_text_file(model_file)); }
  Team team() const { return team_from_json(read_text_file(team_file)); }
  Formula phi() const { return parse_formula(formula); }
};

Row parse_row(const std::string& text) {
  Row r;
  std::stringstream in(text);
  for (std::string item; std::getline(in, item, ',');) r.push_back(Value::of(item));
  return r;
}

std::size_t row_index(const Team& team, std::size_t k) {
  if (k >= team.size()) {
    throw DomainError("row " + std::to_string(k) + " out of range for a team of " + std::to_string(team.size()) +
                      " rows");
  }
  return k;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read " + path);
  return in;
}

void print_csv(const Team& t) {
  for (std::size_t i = 0; i < t.vars().size(); ++i) std::cout << (i ? "," : "") << t.vars()[i];
  std::cout << "\n";
  for (const auto& r : t.rows()) {
    for (std::size_t i = 0; i < r.size(); ++i) std::cout << (i ? "," : "") << r[i].str();
    std::cout << "\n";
  }
}

// Emits the team on stdout, or team.json / manifest.json / model.json in `dir`.
void emit_reduction(const ReductionOutput& out, const std::string& dir) {
  if (dir.empty()) {
    std::cout << team_to_json(out.team);
    return;
  }
  std::filesystem::create_directories(dir);
  std::filesystem::path base(dir);
  write_text_file((base / "team.json").string(), team_to_json(out.team));
  write_text_file((base / "manifest.json").string(), manifest_json(out));
  if (out.model) write_text_file((base / "model.json").string(), model_to_json(*out.model));
}

std::pair<Value, Value> endpoints(const Digraph& g, const std::string& from, const std::string& to) {
  if (!from.empty() && !to.empty()) return {Value::of(from), Value::of(to)};
  if (!g.marked()) throw DomainError("graph has no marked pair; pass --from and --to");
  return *g.marked();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Team semantics toolkit for inclusion logic"};
  app.require_subcommand(1);
  int code = kYes;

  // check
  Inputs check_in;
  Guards check_guards;
  bool check_json = false;
  auto* check = app.add_subcommand("check", "Decide whether the team satisfies the formula");
  check_in.attach(*check);
  check_guards.attach(*check);
  check->add_flag("--json", check_json, "Structured output");
  check->callback([&] {
    Team t = check_in.team();
    MsmResult r = msm(check_in.model(), t, check_in.phi(), check_guards.options());
    bool sat = r.max_subteam == t;
    if (check_json) {
      Json j;
      j["verdict"] = sat ? "SAT" : "UNSAT";
      j["method"] = to_string(r.method);
      j["team_rows"] = t.size();
      j["max_subteam_rows"] = r.max_subteam.size();
      if (r.witness) j["witness"] = *r.witness;
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << (sat ? "SAT" : "UNSAT") << "\nmethod: " << to_string(r.method) << "\n";
    }
    code = sat ? kYes : kNo;
  });

  // msm
  Inputs msm_in;
  Guards msm_guards;
  std::optional<std::size_t> msm_row;
  auto* msm_cmd = app.add_subcommand("msm", "Maximal satisfying subteam, or membership of one row");
  msm_in.attach(*msm_cmd);
  msm_guards.attach(*msm_cmd);
  msm_cmd->add_option("--row", msm_row, "Row index in canonical order");
  msm_cmd->callback([&] {
    Team t = msm_in.team();
    MsmResult r = msm(msm_in.model(), t, msm_in.phi(), msm_guards.options());
    if (msm_row) {
      bool in = r.max_subteam.contains(t.row(row_index(t, *msm_row)));
      std::cout << (in ? "IN" : "OUT") << "\n";
      code = in ? kYes : kNo;
    } else {
      std::cout << team_to_json(r.max_subteam);
    }
  });

  // game
  Inputs game_in;
  std::size_t game_row = 0;
  std::string game_dot;
  auto* game = app.add_subcommand("game", "Solve the safety game from one row");
  game_in.attach(*game);
  game->add_option("--row", game_row, "Start row index in canonical order")->capture_default_str();
  game->add_option("--dot", game_dot, "Write the arena as Graphviz DOT");
  game->callback([&] {
    Team t = game_in.team();
    GameArena arena = GameArena::build(game_in.model(), t, row_index(t, game_row), game_in.phi());
    GameSolution sol = solve(arena);
    std::cout << "winner: Player " << to_string(sol.winner) << "\n";
    std::cout << "positions: " << arena.size() << ", moves: " << arena.move_count() << "\n";
    const Strategy& st = sol.winner == Player::I ? sol.strategy_i : sol.strategy_ii;
    std::cout << "strategy:\n";
    for (std::size_t p = 0; p < arena.size(); ++p) {
      if (!st.choice[p]) continue;
      bool winning_side = sol.attractor[p] == (sol.winner == Player::I);
      if (!winning_side) continue;
      std::cout << "  " << to_string(arena.position(p), t) << " -> "
                << to_string(arena.position(*st.choice[p]), t) << "\n";
    }
    if (!game_dot.empty()) write_text_file(game_dot, arena.to_dot(&sol.attractor));
    code = sol.winner == Player::II ? kYes : kNo;
  });

  // reduce
  auto* reduce = app.add_subcommand("reduce", "Generate hardness-reduction teams");
  reduce->require_subcommand(1);
  std::string out_dir, graph_file, from, to;
  bool bidirectional = false;
  auto graph_options = [&](CLI::App* sub) {
    sub->add_option("graph", graph_file, "Graph JSON file")->required();
    sub->add_option("--from", from, "Source vertex (defaults to the marked pair)");
    sub->add_option("--to", to, "Target vertex (defaults to the marked pair)");
    sub->add_option("--out", out_dir, "Write team, manifest and model files here");
  };

  auto* reach = reduce->add_subcommand("reach", "Reachability to x <= y");
  graph_options(reach);
  reach->add_flag("--bidirectional", bidirectional, "Use x <= y & y <= x");
  reach->callback([&] {
    Digraph g = digraph_from_json(read_text_file(graph_file));
    auto [a, b] = endpoints(g, from, to);
    emit_reduction(reduce_reach(g, a, b, bidirectional), out_dir);
  });

  auto* detreach = reduce->add_subcommand("detreach", "Deterministic reachability to x <= y with key y");
  graph_options(detreach);
  detreach->callback([&] {
    Digraph g = digraph_from_json(read_text_file(graph_file));
    auto [a, b] = endpoints(g, from, to);
    emit_reduction(reduce_detreach(g, a, b), out_dir);
  });

  auto* keyed = reduce->add_subcommand("reach-keyed", "Reachability to x <= z & y <= z with key z");
  graph_options(keyed);
  keyed->callback([&] {
    Digraph g = digraph_from_json(read_text_file(graph_file));
    auto [a, b] = endpoints(g, from, to);
    emit_reduction(reduce_reach_keyed(g, a, b), out_dir);
  });

  std::string circuit_file, variant = "xz_yz";
  auto* mcvp = reduce->add_subcommand("mcvp", "Monotone circuit value to a conjunction of two atoms");
  mcvp->add_option("circuit", circuit_file, "Circuit JSON file")->required();
  mcvp->add_option("--variant", variant, "xz_yz, xy_yz or xy_xz")->capture_default_str();
  mcvp->add_option("--out", out_dir, "Write team, manifest and model files here");
  mcvp->callback([&] {
    Circuit c = circuit_from_json(read_text_file(circuit_file));
    emit_reduction(reduce_mcvp(c, mcvp_variant_from_string(variant)), out_dir);
  });

  std::string game_file;
  auto* game_red = reduce->add_subcommand("game", "Two-player pebble game to a universal formula");
  game_red->add_option("game", game_file, "Game JSON file")->required();
  game_red->add_option("--out", out_dir, "Write team, manifest and model files here");
  game_red->callback([&] {
    emit_reduction(reduce_game(game_from_json(read_text_file(game_file))), out_dir);
  });

  std::string lift_model, lift_x, lift_y, lift_alpha, lift_beta;
  std::size_t lift_row = 0;
  Guards lift_guards;
  auto* lift = reduce->add_subcommand("lift", "Maximal subteam membership to model checking");
  lift->add_option("model", lift_model, "Model JSON file")->required();
  lift->add_option("team", lift_x, "Team X JSON file")->required();
  lift->add_option("--row", lift_row, "Row s of X in canonical order")->capture_default_str();
  lift->add_option("--alpha", lift_alpha, "Formula over the variables of X")->required();
  lift->add_option("--beta", lift_beta, "First-order formula over the variables of Y")->required();
  lift->add_option("--y", lift_y, "Team Y JSON file")->required();
  lift_guards.attach(*lift);
  lift->callback([&] {
    Model m = model_from_json(read_text_file(lift_model));
    Team x = team_from_json(read_text_file(lift_x));
    Team y = team_from_json(read_text_file(lift_y));
    Row s = x.row(row_index(x, lift_row));
    std::cout << team_to_json(
        msm_to_mc_lift(m, x, s, parse_formula(lift_alpha), parse_formula(lift_beta), y, lift_guards.options()));
  });

  // translate
  std::string tc_text;
  bool harness = false;
  std::size_t size = 4, trials = 200, jobs = 1;
  std::uint64_t seed = 1;
  auto* translate = app.add_subcommand("translate", "Translate a TC formula into the weak fragment");
  translate->add_option("formula", tc_text, "TC formula, e.g. TC[x,y]{E(x,y)}(min,max)");
  translate->add_flag("--harness", harness, "Run the randomized equivalence harness");
  translate->add_option("--size", size, "Largest model size for the harness")->capture_default_str();
  translate->add_option("--trials", trials, "Harness trials")->capture_default_str();
  translate->add_option("--seed", seed, "Harness seed")->capture_default_str();
  translate->add_option("--jobs", jobs, "Harness worker threads")->capture_default_str();
  translate->callback([&] {
    if (!tc_text.empty()) {
      Formula f = translate_tc(parse_tc(tc_text));
      std::cout << to_string(f) << "\n";
    } else if (!harness) {
      throw DomainError("nothing to do: give a formula or --harness");
    }
    if (harness) {
      TcHarnessReport r = tc_equiv_harness(size, trials, seed, jobs);
      std::cout << "cases: " << r.cases << "\nmismatches: " << r.mismatches << "\nnot weak: " << r.not_weak << "\n";
      for (const auto& d : r.details) std::cout << "  " << d << "\n";
      code = r.mismatches == 0 && r.not_weak == 0 ? kYes : kNo;
    }
  });

  // classify
  auto* classify = app.add_subcommand("classify", "Complexity of maximal subteam membership");
  classify->require_subcommand(1);
  std::string cls_text;
  std::vector<std::string> keys;
  auto* conj = classify->add_subcommand("conj", "Conjunction of unary inclusion atoms");
  conj->add_option("formula", cls_text)->required();
  conj->callback([&] {
    std::cout << to_string(classify_conjunction(flatten_conjunction(parse_formula(cls_text)))) << "\n";
  });
  auto* disj = classify->add_subcommand("disj", "Disjunction of unary inclusion atoms");
  disj->add_option("formula", cls_text)->required();
  disj->callback([&] {
    std::cout << to_string(classify_disjunction(flatten_disjunction(parse_formula(cls_text)))) << "\n";
  });
  auto* keyed_cls = classify->add_subcommand("keyed", "Formula over teams with key variables");
  keyed_cls->add_option("formula", cls_text)->required();
  keyed_cls->add_option("--key", keys, "Key variable (repeatable)")->required();
  keyed_cls->callback([&] {
    std::set<std::string> ks(keys.begin(), keys.end());
    std::cout << to_string(classify_key_restricted(parse_formula(cls_text), ks)) << "\n";
  });
  auto* fragment = classify->add_subcommand("fragment", "Weak-fragment membership and general verdict");
  fragment->add_option("formula", cls_text)->required();
  fragment->callback([&] {
    Formula f = parse_formula(cls_text);
    bool weak = is_weak_fragment(f);
    std::cout << "weak fragment: " << (weak ? "yes" : "no") << "\n" << to_string(classify_formula(f)) << "\n";
    code = weak ? kYes : kNo;
  });

  // repair
  auto* repair = app.add_subcommand("repair", "Subset repairs under unary inclusion dependencies");
  repair->require_subcommand(1);
  std::string db_file, deps_file, candidate_file, tuple_text;
  auto db_options = [&](CLI::App* sub) {
    sub->add_option("database", db_file, "CSV file with a header row")->required();
    sub->add_option("dependencies", deps_file, "One x <= y per line")->required();
  };
  auto load = [&] {
    auto db_in = open_input(db_file);
    auto deps_in = open_input(deps_file);
    Team db = read_csv_team(db_in);
    return std::pair{db, read_dependencies(deps_in)};
  };
  auto* compute = repair->add_subcommand("compute", "Print the subset repair as CSV");
  db_options(compute);
  compute->callback([&] {
    auto [db, deps] = load();
    print_csv(subset_repair(db, deps));
  });
  auto* rcheck = repair->add_subcommand("check", "Decide whether a candidate is the subset repair");
  db_options(rcheck);
  rcheck->add_option("candidate", candidate_file, "Candidate CSV file")->required();
  rcheck->callback([&] {
    auto [db, deps] = load();
    auto cand_in = open_input(candidate_file);
    bool ok = is_subset_repair(read_csv_team(cand_in), db, deps);
    std::cout << (ok ? "REPAIR" : "NOT A REPAIR") << "\n";
    code = ok ? kYes : kNo;
  });
  auto* answer = repair->add_subcommand("answer", "Consistent answer to an atomic query");
  db_options(answer);
  answer->add_option("--tuple", tuple_text, "Comma-separated tuple")->required();
  answer->callback([&] {
    auto [db, deps] = load();
    bool certain = consistent_answer_atomic(db, deps, parse_row(tuple_text));
    std::cout << (certain ? "CERTAIN" : "NOT CERTAIN") << "\n";
    code = certain ? kYes : kNo;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  } catch (const GuardExceeded& e) {
    std::cerr << "guard exceeded: " << e.what() << "\n";
    return kGuard;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return code;
}
