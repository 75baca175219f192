#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

namespace mergeguard {

using BigInt = boost::multiprecision::cpp_int;

/// A runtime value. `std::nullopt` is the uninitialized value (bottom).
using Value = std::optional<BigInt>;

std::string to_string(const Value& v);

/// A program state: a finite map from (variable, index) to integers.
/// Scalars live at index 0. Absent keys read as bottom.
class Valuation {
 public:
  using Key = std::pair<std::string, BigInt>;

  Value get(std::string_view var, const BigInt& index = 0) const;
  void set(const std::string& var, const BigInt& index, const Value& v);
  void set(const std::string& var, const Value& v) { set(var, 0, v); }

  const std::map<Key, BigInt>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

  friend bool operator==(const Valuation&, const Valuation&) = default;

 private:
  std::map<Key, BigInt> entries_;
};

std::string to_string(const Valuation& v);

}  // namespace mergeguard
