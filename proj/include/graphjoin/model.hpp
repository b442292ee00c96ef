#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace graphjoin {

/// Opaque attribute value. Equality is byte-exact on the text; no coercion.
class AttributeValue {
 public:
  AttributeValue() = default;
  explicit AttributeValue(std::string text) : text_(std::move(text)) {}

  const std::string& text() const noexcept { return text_; }

  friend bool operator==(const AttributeValue&, const AttributeValue&) = default;
  friend auto operator<=>(const AttributeValue&, const AttributeValue&) = default;

 private:
  std::string text_;
};

/// A finite function from attribute names to values. Bindings are kept
/// sorted by attribute name so that equal functions compare equal.
class Tuple {
 public:
  using Binding = std::pair<std::string, AttributeValue>;

  Tuple() = default;
  Tuple(std::initializer_list<std::pair<std::string, std::string>> bindings);

  /// Binds `attribute`, replacing any existing value.
  void set(std::string attribute, AttributeValue value);
  const AttributeValue* find(std::string_view attribute) const;
  bool contains(std::string_view attribute) const { return find(attribute) != nullptr; }

  bool empty() const noexcept { return bindings_.empty(); }
  std::size_t size() const noexcept { return bindings_.size(); }
  const std::vector<Binding>& bindings() const noexcept { return bindings_; }
  std::vector<std::string> domain() const;

  friend bool operator==(const Tuple&, const Tuple&) = default;
  friend auto operator<=>(const Tuple&, const Tuple&) = default;

 private:
  std::vector<Binding> bindings_;
};

/// The i-th replica of a tuple inside an indexed set.
struct IndexedElement {
  Tuple payload;
  std::uint64_t replica = 0;

  friend bool operator==(const IndexedElement&, const IndexedElement&) = default;
  friend auto operator<=>(const IndexedElement&, const IndexedElement&) = default;
};

using LabelSet = std::set<std::string>;

/// Finite set of replica indices an indexed set was built over (Im of its
/// multiplicity function, or the dovetail image for combined sets).
class IndexUniverse {
 public:
  IndexUniverse() = default;
  IndexUniverse(std::initializer_list<std::uint64_t> values);
  explicit IndexUniverse(std::vector<std::uint64_t> values);

  void insert(std::uint64_t value);
  bool contains(std::uint64_t value) const;
  bool empty() const noexcept { return values_.empty(); }
  std::size_t size() const noexcept { return values_.size(); }
  /// Largest member; empty universes have no maximum.
  std::optional<std::uint64_t> max() const;
  const std::vector<std::uint64_t>& values() const noexcept { return values_; }

  friend bool operator==(const IndexUniverse&, const IndexUniverse&) = default;

 private:
  std::vector<std::uint64_t> values_;  // sorted, unique
};

}  // namespace graphjoin
