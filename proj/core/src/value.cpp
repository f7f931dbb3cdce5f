#include "incl/value.hpp"

#include <memory>
#include <mutex>
#include <unordered_map>

namespace incl {
namespace {

class Interner {
 public:
  const std::string* intern(std::string_view text) {
    std::lock_guard lock(mutex_);
    auto it = index_.find(text);
    if (it != index_.end()) return it->second;
    auto owned = std::make_unique<const std::string>(text);
    const std::string* p = owned.get();
    storage_.push_back(std::move(owned));
    index_.emplace(std::string_view(*p), p);
    return p;
  }

 private:
  std::mutex mutex_;
  std::vector<std::unique_ptr<const std::string>> storage_;
  std::unordered_map<std::string_view, const std::string*> index_;
};

Interner& interner() {
  static Interner instance;
  return instance;
}

}  // namespace

Value Value::of(std::string_view text) { return Value(interner().intern(text)); }

std::vector<Value> values_of(const std::vector<std::string>& texts) {
  std::vector<Value> out;
  out.reserve(texts.size());
  for (const auto& t : texts) out.push_back(Value::of(t));
  return out;
}

std::string to_string(const Tuple& t) {
  std::string out = "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += ",";
    out += t[i].text();
  }
  return out + ")";
}

}  // namespace incl
