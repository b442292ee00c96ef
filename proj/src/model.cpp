#include "graphjoin/model.hpp"

#include <algorithm>

namespace graphjoin {

Tuple::Tuple(std::initializer_list<std::pair<std::string, std::string>> bindings) {
  for (const auto& [attribute, value] : bindings) {
    set(attribute, AttributeValue(value));
  }
}

void Tuple::set(std::string attribute, AttributeValue value) {
  auto it = std::lower_bound(
      bindings_.begin(), bindings_.end(), attribute,
      [](const Binding& b, const std::string& key) { return b.first < key; });
  if (it != bindings_.end() && it->first == attribute) {
    it->second = std::move(value);
    return;
  }
  bindings_.emplace(it, std::move(attribute), std::move(value));
}

const AttributeValue* Tuple::find(std::string_view attribute) const {
  auto it = std::lower_bound(
      bindings_.begin(), bindings_.end(), attribute,
      [](const Binding& b, std::string_view key) { return b.first < key; });
  if (it != bindings_.end() && it->first == attribute) {
    return &it->second;
  }
  return nullptr;
}

std::vector<std::string> Tuple::domain() const {
  std::vector<std::string> out;
  out.reserve(bindings_.size());
  for (const auto& b : bindings_) out.push_back(b.first);
  return out;
}

IndexUniverse::IndexUniverse(std::initializer_list<std::uint64_t> values)
    : IndexUniverse(std::vector<std::uint64_t>(values)) {}

IndexUniverse::IndexUniverse(std::vector<std::uint64_t> values) : values_(std::move(values)) {
  std::sort(values_.begin(), values_.end());
  values_.erase(std::unique(values_.begin(), values_.end()), values_.end());
}

void IndexUniverse::insert(std::uint64_t value) {
  auto it = std::lower_bound(values_.begin(), values_.end(), value);
  if (it == values_.end() || *it != value) values_.insert(it, value);
}

bool IndexUniverse::contains(std::uint64_t value) const {
  return std::binary_search(values_.begin(), values_.end(), value);
}

std::optional<std::uint64_t> IndexUniverse::max() const {
  if (values_.empty()) return std::nullopt;
  return values_.back();
}

}  // namespace graphjoin
