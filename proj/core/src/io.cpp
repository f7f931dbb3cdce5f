#include "incl/io.hpp"

#include <fstream>
#include <sstream>

#include "incl/errors.hpp"
#include "json.hpp"

namespace incl {

using json = nlohmann::ordered_json;

namespace {

json parse(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw DomainError(std::string("malformed ") + what + " JSON: " + e.what());
  }
}

template <typename F>
auto guarded(const char* what, F body) {
  try {
    return body();
  } catch (const json::exception& e) {
    throw DomainError(std::string("invalid ") + what + ": " + e.what());
  }
}

std::vector<Value> value_list(const json& j) {
  std::vector<Value> out;
  for (const auto& v : j) out.push_back(Value::of(v.get<std::string>()));
  return out;
}

json value_array(std::span<const Value> vs) {
  json a = json::array();
  for (Value v : vs) a.push_back(v.str());
  return a;
}

std::string json_string(std::string_view s) { return json(std::string(s)).dump(); }

std::string inline_row(std::span<const Value> r) {
  std::string out = "[";
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i) out += ", ";
    out += json_string(r[i].text());
  }
  return out + "]";
}

}  // namespace

Model model_from_json(const std::string& text) {
  json j = parse(text, "model");
  return guarded("model", [&] {
    std::vector<Value> domain = value_list(j.at("domain"));
    std::map<std::string, Relation> rels;
    if (j.contains("relations")) {
      for (const auto& [name, r] : j.at("relations").items()) {
        Relation rel;
        rel.arity = r.at("arity").get<std::size_t>();
        for (const auto& t : r.at("tuples")) rel.tuples.insert(value_list(t));
        rels.emplace(name, std::move(rel));
      }
    }
    std::optional<std::vector<Value>> order;
    if (j.contains("order") && !j.at("order").is_null()) order = value_list(j.at("order"));
    return Model(std::move(domain), std::move(rels), std::move(order));
  });
}

std::string model_to_json(const Model& model) {
  json j;
  j["domain"] = value_array(model.domain());
  json rels = json::object();
  for (const auto& [name, rel] : model.relations()) {
    std::vector<Tuple> tuples(rel.tuples.begin(), rel.tuples.end());
    std::sort(tuples.begin(), tuples.end());
    json ts = json::array();
    for (const auto& t : tuples) ts.push_back(value_array(t));
    rels[name] = {{"arity", rel.arity}, {"tuples", ts}};
  }
  j["relations"] = rels;
  if (model.ordered()) j["order"] = value_array(model.order());
  return j.dump(2) + "\n";
}

Team team_from_json(const std::string& text) {
  json j = parse(text, "team");
  return guarded("team", [&] {
    std::vector<std::string> vars = j.at("vars").get<std::vector<std::string>>();
    std::vector<Row> rows;
    for (const auto& r : j.at("rows")) rows.push_back(value_list(r));
    return Team(std::move(vars), std::move(rows));
  });
}

std::string team_to_json(const Team& team) {
  std::string out = "{\n  \"vars\": [";
  for (std::size_t i = 0; i < team.vars().size(); ++i) {
    if (i) out += ", ";
    out += json_string(team.vars()[i]);
  }
  out += "],\n  \"rows\": [";
  for (std::size_t i = 0; i < team.size(); ++i) {
    out += i ? ",\n    " : "\n    ";
    out += inline_row(team.row(i));
  }
  out += team.empty() ? "]\n}\n" : "\n  ]\n}\n";
  return out;
}

namespace {

Digraph digraph_from(const json& j) {
  std::vector<Value> vertices = value_list(j.at("vertices"));
  std::vector<std::pair<Value, Value>> edges;
  for (const auto& e : j.at("edges")) {
    if (e.size() != 2) throw DomainError("edges must be pairs");
    edges.emplace_back(Value::of(e[0].get<std::string>()), Value::of(e[1].get<std::string>()));
  }
  std::optional<std::pair<Value, Value>> marked;
  if (j.contains("marked") && !j.at("marked").is_null()) {
    const auto& m = j.at("marked");
    if (m.size() != 2) throw DomainError("marked must be a pair");
    marked.emplace(Value::of(m[0].get<std::string>()), Value::of(m[1].get<std::string>()));
  }
  return Digraph(std::move(vertices), std::move(edges), marked);
}

}  // namespace

Digraph digraph_from_json(const std::string& text) {
  json j = parse(text, "graph");
  return guarded("graph", [&] { return digraph_from(j); });
}

std::string digraph_to_json(const Digraph& g) {
  json j;
  j["vertices"] = json::array();
  for (Value v : g.vertices()) j["vertices"].push_back(v.str());
  j["edges"] = json::array();
  for (const auto& [u, v] : g.edges()) j["edges"].push_back({u.str(), v.str()});
  if (g.marked()) j["marked"] = {g.marked()->first.str(), g.marked()->second.str()};
  return j.dump(2) + "\n";
}

Circuit circuit_from_json(const std::string& text) {
  json j = parse(text, "circuit");
  return guarded("circuit", [&] {
    Circuit c;
    c.output = j.at("output").get<std::string>();
    for (const auto& [id, g] : j.at("gates").items()) {
      Gate gate;
      std::string op = g.at("op").get<std::string>();
      if (op == "input") {
        gate.op = Gate::Op::Input;
        gate.value = g.at("value").get<bool>();
      } else if (op == "and" || op == "or") {
        gate.op = op == "and" ? Gate::Op::And : Gate::Op::Or;
        const auto& in = g.at("inputs");
        if (in.size() != 2) throw DomainError("gate " + id + " must have exactly two inputs");
        gate.left = in[0].get<std::string>();
        gate.right = in[1].get<std::string>();
      } else {
        throw DomainError("gate " + id + " has unknown op '" + op + "'");
      }
      c.gates.emplace(id, gate);
    }
    return c;
  });
}

std::string circuit_to_json(const Circuit& c) {
  json gates = json::object();
  for (const auto& [id, g] : c.gates) {
    if (g.op == Gate::Op::Input) {
      gates[id] = {{"op", "input"}, {"value", g.value}};
    } else {
      gates[id] = {{"op", g.op == Gate::Op::And ? "and" : "or"}, {"inputs", {g.left, g.right}}};
    }
  }
  json j;
  j["output"] = c.output;
  j["gates"] = gates;
  return j.dump(2) + "\n";
}

GameInstance game_from_json(const std::string& text) {
  json j = parse(text, "game");
  return guarded("game", [&] {
    return GameInstance{digraph_from(j), Value::of(j.at("start").get<std::string>())};
  });
}

std::string manifest_json(const ReductionOutput& out) {
  json j;
  j["formula"] = to_string(out.formula);
  j["query_row"] = value_array(out.query_row);
  j["vars"] = out.team.vars();
  return j.dump(2) + "\n";
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError("cannot write " + path);
  out << text;
}

}  // namespace incl
