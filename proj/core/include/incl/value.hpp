#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace incl {

/// An interned domain element. Equality is identity of the interned symbol;
/// ordering follows the canonical textual form so that sorted output never
/// depends on interning order.
class Value {
 public:
  Value() = default;

  static Value of(std::string_view text);

  std::string_view text() const noexcept {
    return symbol_ ? std::string_view(*symbol_) : std::string_view();
  }
  std::string str() const { return std::string(text()); }

  friend bool operator==(Value a, Value b) noexcept { return a.symbol_ == b.symbol_; }
  friend std::strong_ordering operator<=>(Value a, Value b) noexcept {
    if (a.symbol_ == b.symbol_) return std::strong_ordering::equal;
    return a.text().compare(b.text()) < 0 ? std::strong_ordering::less
                                          : std::strong_ordering::greater;
  }

  std::size_t hash() const noexcept { return std::hash<const void*>{}(symbol_); }

 private:
  explicit Value(const std::string* symbol) : symbol_(symbol) {}
  const std::string* symbol_ = nullptr;
};

using Tuple = std::vector<Value>;

struct TupleHash {
  std::size_t operator()(const Tuple& t) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (Value v : t) h = (h ^ v.hash()) * 0x100000001b3ULL;
    return h;
  }
};

/// Builds values from textual forms, in order.
std::vector<Value> values_of(const std::vector<std::string>& texts);

std::string to_string(const Tuple& t);

}  // namespace incl

template <>
struct std::hash<incl::Value> {
  std::size_t operator()(incl::Value v) const noexcept { return v.hash(); }
};
