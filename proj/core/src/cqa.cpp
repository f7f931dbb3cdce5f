#include "incl/cqa.hpp"

#include <sstream>

#include "incl/classify.hpp"
#include "incl/errors.hpp"
#include "incl/msm.hpp"

namespace incl {

Team subset_repair(const Team& db, const std::vector<Formula>& deps) {
  inclusion_graph(deps);
  if (deps.empty()) return db;
  return msm_removal(db, deps);
}

bool is_subset_repair(const Team& candidate, const Team& db, const std::vector<Formula>& deps) {
  if (candidate.vars() != db.vars() || !candidate.is_subteam_of(db)) {
    throw PreconditionError("candidate repair is not a subset of the database");
  }
  return subset_repair(db, deps) == candidate;
}

bool consistent_answer_atomic(const Team& db, const std::vector<Formula>& deps, const Row& tuple) {
  if (tuple.size() != db.vars().size()) {
    throw DomainError("query tuple has arity " + std::to_string(tuple.size()) + ", expected " +
                      std::to_string(db.vars().size()));
  }
  return subset_repair(db, deps).contains(tuple);
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) {
    auto b = cell.find_first_not_of(" \t\r");
    auto e = cell.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

Team read_csv_team(std::istream& in) {
  std::string line;
  std::vector<std::string> header;
  while (header.empty() && std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") != std::string::npos) header = split_csv(line);
  }
  if (header.empty()) throw DomainError("CSV input has no header row");
  std::vector<Row> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto cells = split_csv(line);
    if (cells.size() != header.size()) {
      throw DomainError("CSV line " + std::to_string(lineno) + " has " + std::to_string(cells.size()) +
                        " cells, expected " + std::to_string(header.size()));
    }
    rows.push_back(values_of(cells));
  }
  return Team(header, std::move(rows));
}

std::vector<Formula> read_dependencies(std::istream& in) {
  std::vector<Formula> out;
  std::string line;
  while (std::getline(in, line)) {
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    Formula f = parse_formula(line);
    if (!f.is_inclusion()) throw DomainError("dependency '" + line + "' is not an inclusion atom");
    out.push_back(f);
  }
  return out;
}

}  // namespace incl
