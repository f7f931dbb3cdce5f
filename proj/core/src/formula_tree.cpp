#include "incl/errors.hpp"
#include "incl/formula.hpp"

namespace incl {

FormulaTree FormulaTree::build(const Formula& f) {
  if (!f.is_quantifier_free()) {
    throw UnsupportedFragment("formula trees are only built for quantifier-free formulas");
  }
  FormulaTree tree;
  struct Frame {
    Formula f;
    std::optional<std::size_t> parent;
  };
  std::vector<Frame> stack{{f, std::nullopt}};
  while (!stack.empty()) {
    Frame fr = std::move(stack.back());
    stack.pop_back();
    std::size_t id = tree.nodes_.size();
    tree.nodes_.push_back({fr.f, fr.parent, {}});
    if (fr.parent) tree.nodes_[*fr.parent].children.push_back(id);
    if (fr.f.is_binary()) {
      stack.push_back({fr.f.right(), id});
      stack.push_back({fr.f.left(), id});
    }
  }
  return tree;
}

std::vector<std::size_t> FormulaTree::ancestors(std::size_t id) const {
  std::vector<std::size_t> out;
  for (auto p = nodes_.at(id).parent; p; p = nodes_[*p].parent) out.push_back(*p);
  return out;
}

}  // namespace incl
