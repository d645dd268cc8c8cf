#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "teeda/error.hpp"
#include "teeda/item.hpp"

namespace teeda {

/// Requests and jackets keyed by id, kept in insertion order. Ids are unique
/// across both kinds.
class Corpus {
 public:
  Corpus() = default;

  std::size_t size() const noexcept { return items_.size(); }
  bool empty() const noexcept { return items_.empty(); }

  const std::vector<Item>& items() const noexcept { return items_; }
  auto begin() const noexcept { return items_.begin(); }
  auto end() const noexcept { return items_.end(); }

  bool contains(std::string_view id) const { return index_.count(std::string(id)) != 0; }

  const Item* find(std::string_view id) const {
    auto it = index_.find(std::string(id));
    return it == index_.end() ? nullptr : &items_[it->second];
  }

  const Item& at(std::string_view id) const {
    if (const Item* item = find(id)) return *item;
    throw Error(ErrorCode::UnknownItem, "no item with id '" + std::string(id) + "'");
  }

  /// Adds an item. An empty id is replaced by a generated one. Returns the
  /// stored id.
  const std::string& add(Item item) {
    if (item_id(item).empty()) set_item_id(item, next_id());
    const std::string& id = item_id(item);
    if (contains(id)) throw Error(ErrorCode::DuplicateId, "duplicate id '" + id + "'");
    if (auto errors = check_invariants(item); !errors.empty())
      throw Error(ErrorCode::ValidationError, "invalid item '" + id + "'", std::move(errors));
    note_id(id);
    index_.emplace(id, items_.size());
    items_.push_back(std::move(item));
    return item_id(items_.back());
  }

  /// Replaces the item with the same id in place, keeping its position.
  void replace(Item item) {
    auto it = index_.find(item_id(item));
    if (it == index_.end())
      throw Error(ErrorCode::UnknownItem, "no item with id '" + item_id(item) + "'");
    if (auto errors = check_invariants(item); !errors.empty())
      throw Error(ErrorCode::ValidationError, "invalid item '" + item_id(item) + "'",
                  std::move(errors));
    items_[it->second] = std::move(item);
  }

  void erase(std::string_view id) {
    auto it = index_.find(std::string(id));
    if (it == index_.end())
      throw Error(ErrorCode::UnknownItem, "no item with id '" + std::string(id) + "'");
    const std::size_t pos = it->second;
    index_.erase(it);
    items_.erase(items_.begin() + static_cast<std::ptrdiff_t>(pos));
    for (auto& [key, idx] : index_)
      if (idx > pos) --idx;
  }

  /// Next generated id: "item-" plus a zero-padded counter that never goes
  /// backwards, even across deletions.
  std::string next_id() const {
    std::size_t n = counter_;
    std::string id;
    do {
      ++n;
      id = format_generated(n);
    } while (contains(id));
    return id;
  }

  std::vector<const DataRequest*> requests() const {
    std::vector<const DataRequest*> out;
    for (const auto& item : items_)
      if (auto* r = std::get_if<DataRequest>(&item)) out.push_back(r);
    return out;
  }

  std::vector<const DataJacket*> jackets() const {
    std::vector<const DataJacket*> out;
    for (const auto& item : items_)
      if (auto* j = std::get_if<DataJacket>(&item)) out.push_back(j);
    return out;
  }

  friend bool operator==(const Corpus& a, const Corpus& b) { return a.items_ == b.items_; }

 private:
  static std::string format_generated(std::size_t n) {
    std::string digits = std::to_string(n);
    if (digits.size() < 6) digits.insert(0, 6 - digits.size(), '0');
    return "item-" + digits;
  }

  void note_id(const std::string& id) {
    constexpr std::string_view prefix = "item-";
    if (id.size() <= prefix.size() || id.compare(0, prefix.size(), prefix) != 0) return;
    std::size_t n = 0;
    for (std::size_t i = prefix.size(); i < id.size(); ++i) {
      if (id[i] < '0' || id[i] > '9') return;
      n = n * 10 + static_cast<std::size_t>(id[i] - '0');
    }
    if (n > counter_) counter_ = n;
  }

  std::vector<Item> items_;
  std::unordered_map<std::string, std::size_t> index_;
  std::size_t counter_ = 0;
};

}  // namespace teeda
