#include "incl/model.hpp"

#include <algorithm>

#include "incl/errors.hpp"

namespace incl {

Model::Model(std::vector<Value> domain, std::map<std::string, Relation> relations,
             std::optional<std::vector<Value>> order)
    : domain_(std::move(domain)), relations_(std::move(relations)), order_(std::move(order)) {
  std::sort(domain_.begin(), domain_.end());
  domain_.erase(std::unique(domain_.begin(), domain_.end()), domain_.end());
  in_domain_.insert(domain_.begin(), domain_.end());

  for (const auto& [name, rel] : relations_) {
    if (name == kOrderRelation) {
      throw DomainError("relation name '" + name + "' is reserved for the model order");
    }
    for (const auto& t : rel.tuples) {
      if (t.size() != rel.arity) {
        throw DomainError("relation " + name + ": tuple " + to_string(t) + " does not have arity " +
                          std::to_string(rel.arity));
      }
      for (Value v : t) {
        if (!in_domain_.contains(v)) {
          throw DomainError("relation " + name + ": value '" + v.str() + "' is not in the domain");
        }
      }
    }
  }

  if (order_) {
    if (order_->size() != domain_.size()) {
      throw DomainError("order must list every domain element exactly once");
    }
    for (std::size_t i = 0; i < order_->size(); ++i) {
      Value v = (*order_)[i];
      if (!in_domain_.contains(v) || !ranks_.emplace(v, i).second) {
        throw DomainError("order must list every domain element exactly once");
      }
    }
  }
}

bool Model::has_relation(std::string_view name) const {
  if (name == kOrderRelation) return true;
  return relations_.find(std::string(name)) != relations_.end();
}

std::size_t Model::arity(std::string_view name) const {
  if (name == kOrderRelation) return 2;
  auto it = relations_.find(std::string(name));
  if (it == relations_.end()) throw DomainError("unknown relation '" + std::string(name) + "'");
  return it->second.arity;
}

bool Model::holds(std::string_view name, std::span<const Value> args) const {
  if (name == kOrderRelation) {
    if (args.size() != 2) throw DomainError("order relation takes two arguments");
    return less(args[0], args[1]);
  }
  auto it = relations_.find(std::string(name));
  if (it == relations_.end()) throw DomainError("unknown relation '" + std::string(name) + "'");
  if (args.size() != it->second.arity) {
    throw DomainError("relation " + std::string(name) + " applied to " + std::to_string(args.size()) +
                      " arguments, expected " + std::to_string(it->second.arity));
  }
  return it->second.tuples.contains(Tuple(args.begin(), args.end()));
}

const std::vector<Value>& Model::order() const {
  if (!order_) throw DomainError("model has no order");
  return *order_;
}

std::size_t Model::rank(Value v) const {
  if (!order_) throw DomainError("model has no order");
  auto it = ranks_.find(v);
  if (it == ranks_.end()) throw DomainError("value '" + v.str() + "' is not in the ordered domain");
  return it->second;
}

bool Model::less(Value a, Value b) const { return rank(a) < rank(b); }

Value Model::min() const {
  if (order().empty()) throw DomainError("empty domain has no least element");
  return order().front();
}

Value Model::max() const {
  if (order().empty()) throw DomainError("empty domain has no greatest element");
  return order().back();
}

Model bare_model(std::vector<Value> domain) { return Model(std::move(domain), {}); }

Model ordered_chain(std::size_t n, std::map<std::string, Relation> relations) {
  std::vector<Value> dom;
  for (std::size_t i = 0; i < n; ++i) dom.push_back(Value::of(std::to_string(i)));
  return Model(dom, std::move(relations), dom);
}

}  // namespace incl
