#pragma once

#include <cctype>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tcad {

/// Ordered variables x_1 < x_2 < ... < x_n. Index 0 is the smallest variable.
class VarOrder {
 public:
  VarOrder() = default;

  explicit VarOrder(std::vector<std::string> names) : names_(std::move(names)) {
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (!is_valid_name(names_[i])) {
        throw std::invalid_argument("invalid variable name '" + names_[i] + "'");
      }
      for (std::size_t j = 0; j < i; ++j) {
        if (names_[j] == names_[i]) {
          throw std::invalid_argument("duplicate variable '" + names_[i] + "'");
        }
      }
    }
  }

  static bool is_valid_name(const std::string& name) {
    if (name.empty() || !std::isalpha(static_cast<unsigned char>(name[0]))) return false;
    for (char c : name) {
      if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    }
    return true;
  }

  std::size_t size() const { return names_.size(); }
  const std::string& name(int index) const { return names_.at(static_cast<std::size_t>(index)); }
  const std::vector<std::string>& names() const { return names_; }

  std::optional<int> index_of(const std::string& name) const {
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (names_[i] == name) return static_cast<int>(i);
    }
    return std::nullopt;
  }

  bool operator==(const VarOrder&) const = default;

 private:
  std::vector<std::string> names_;
};

}  // namespace tcad
