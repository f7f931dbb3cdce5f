#pragma once

#include <string>

#include "incl/model.hpp"
#include "incl/reductions.hpp"
#include "incl/team.hpp"

namespace incl {

// All readers throw DomainError with a readable message on malformed input.

/// `{"domain":[...],"relations":{"E":{"arity":2,"tuples":[[...]]}},"order":[...]}`
Model model_from_json(const std::string& text);
std::string model_to_json(const Model& model);

/// `{"vars":[...],"rows":[[...],...]}`; output lists rows in canonical order,
/// one per line.
Team team_from_json(const std::string& text);
std::string team_to_json(const Team& team);

/// `{"vertices":[...],"edges":[["u","v"],...],"marked":["a","b"]}`
Digraph digraph_from_json(const std::string& text);
std::string digraph_to_json(const Digraph& g);

/// `{"output":"1","gates":{"1":{"op":"and","inputs":["2","3"]},
///   "7":{"op":"input","value":true}}}`
Circuit circuit_from_json(const std::string& text);
std::string circuit_to_json(const Circuit& c);

/// A digraph object with an extra `"start"` vertex.
GameInstance game_from_json(const std::string& text);

/// `{"formula":"...","query_row":[...],"vars":[...]}`
std::string manifest_json(const ReductionOutput& out);

/// Whole file contents; throws DomainError when it cannot be read.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace incl
