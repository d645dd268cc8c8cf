#pragma once

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <ctime>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "teeda/persistence.hpp"

namespace teeda {

enum class EventAction { Created, Updated, Deleted, Categorized };

inline constexpr std::string_view to_string(EventAction a) {
  switch (a) {
    case EventAction::Created: return "created";
    case EventAction::Updated: return "updated";
    case EventAction::Deleted: return "deleted";
    case EventAction::Categorized: return "categorized";
  }
  return "";
}

inline std::optional<EventAction> parse_action(std::string_view s) {
  for (auto a : {EventAction::Created, EventAction::Updated, EventAction::Deleted,
                 EventAction::Categorized})
    if (to_string(a) == s) return a;
  return std::nullopt;
}

/// One committed registry change. Deleted events carry only the id; all
/// others carry the full item document as stored after the change.
struct Event {
  std::uint64_t seq = 0;
  EventAction action = EventAction::Created;
  std::string id;
  std::optional<Json> item;
  std::string timestamp;

  friend bool operator==(const Event&, const Event&) = default;
};

inline Json to_document(const Event& e) {
  Json doc;
  doc["seq"] = e.seq;
  doc["action"] = std::string(to_string(e.action));
  if (e.item)
    doc["item"] = *e.item;
  else
    doc["id"] = e.id;
  doc["timestamp"] = e.timestamp;
  return doc;
}

inline Event event_from_document(const Json& doc) {
  try {
    Event e;
    e.seq = doc.at("seq").get<std::uint64_t>();
    auto action = parse_action(doc.at("action").get<std::string>());
    if (!action) throw Error(ErrorCode::ParseError, "unknown event action");
    e.action = *action;
    if (doc.contains("item")) {
      e.item = doc.at("item");
      e.id = e.item->at("id").get<std::string>();
    } else {
      e.id = doc.at("id").get<std::string>();
    }
    e.timestamp = doc.value("timestamp", "");
    return e;
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::ParseError, std::string("event document: ") + ex.what());
  }
}

/// Applies one event to a corpus. Replaying events 1..n over an empty corpus
/// reproduces the registry state after event n.
inline void apply_event(Corpus& corpus, const Event& e) {
  auto item_of = [&]() -> Item {
    if (!e.item) throw Error(ErrorCode::ParseError, "event " + std::to_string(e.seq) + " lacks an item");
    // Events only ever carry documents the registry already accepted.
    return from_document(*e.item, {.lenient = true}).value();
  };
  switch (e.action) {
    case EventAction::Created: corpus.add(item_of()); break;
    case EventAction::Updated:
    case EventAction::Categorized: corpus.replace(item_of()); break;
    case EventAction::Deleted: corpus.erase(e.id); break;
  }
}

inline Corpus replay(const std::vector<Event>& events) {
  Corpus corpus;
  for (const auto& e : events) apply_event(corpus, e);
  return corpus;
}

inline std::string utc_timestamp(std::chrono::system_clock::time_point tp) {
  const std::time_t t = std::chrono::system_clock::to_time_t(tp);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

/// Shared item registry with an ordered event log.
///
/// Writers go through one commit point: validate, persist corpus and event
/// log, then publish the new snapshot and the event together and wake
/// subscribers. Readers work on immutable corpus snapshots. When a data file
/// is given, the event log lives next to it as `<file>.events.jsonl`.
class Registry {
 public:
  using Clock = std::function<std::string()>;

  struct Snapshot {
    std::shared_ptr<const Corpus> corpus;
    std::uint64_t seq = 0;
  };

  explicit Registry(std::optional<fs::path> data_file = std::nullopt, Clock clock = {})
      : data_file_(std::move(data_file)),
        clock_(clock ? std::move(clock)
                     : Clock([] { return utc_timestamp(std::chrono::system_clock::now()); })),
        corpus_(std::make_shared<const Corpus>()) {
    if (data_file_) recover();
  }

  Registry(const Registry&) = delete;
  Registry& operator=(const Registry&) = delete;

  ~Registry() { close(); }

  static fs::path event_log_path(const fs::path& data_file) {
    fs::path p = data_file;
    p += ".events.jsonl";
    return p;
  }

  // --- writes ---------------------------------------------------------------

  /// Throws Error(ValidationError) with field errors, or DuplicateId.
  Event create(const Json& document) {
    std::lock_guard writer(write_mutex_);
    Item item = validated(document);
    auto next = std::make_shared<Corpus>(*current());
    if (!item_id(item).empty() && next->contains(item_id(item)))
      throw Error(ErrorCode::DuplicateId, "duplicate id '" + item_id(item) + "'");
    const std::string id = next->add(std::move(item));
    return commit(std::move(next), EventAction::Created, id);
  }

  /// Full replacement of an existing item. The kind may not change.
  Event update(std::string_view id, const Json& document) {
    std::lock_guard writer(write_mutex_);
    Item item = validated(document);
    if (!item_id(item).empty() && item_id(item) != id)
      throw Error(ErrorCode::IdMismatch, "document id '" + item_id(item) + "' does not match '" +
                                             std::string(id) + "'");
    set_item_id(item, std::string(id));
    auto next = std::make_shared<Corpus>(*current());
    const Item& existing = next->at(id);
    if (item_kind(existing) != item_kind(item))
      throw Error(ErrorCode::KindMismatch, "cannot change the kind of '" + std::string(id) + "'");
    next->replace(std::move(item));
    return commit(std::move(next), EventAction::Updated, std::string(id));
  }

  Event remove(std::string_view id) {
    std::lock_guard writer(write_mutex_);
    auto next = std::make_shared<Corpus>(*current());
    next->erase(id);
    return commit(std::move(next), EventAction::Deleted, std::string(id));
  }

  /// Throws UnknownRequest or NotARequest.
  Event categorize(std::string_view id, std::optional<Category> category) {
    std::lock_guard writer(write_mutex_);
    auto next = std::make_shared<Corpus>(*current());
    assign_category_in_place(*next, id, category);
    return commit(std::move(next), EventAction::Categorized, std::string(id));
  }

  // --- reads ----------------------------------------------------------------

  Snapshot snapshot() const {
    std::lock_guard lock(state_mutex_);
    return {corpus_, log_.size()};
  }

  std::uint64_t seq() const {
    std::lock_guard lock(state_mutex_);
    return log_.size();
  }

  std::vector<Json> list_items(std::optional<DataKind> kind = std::nullopt) const {
    auto snap = snapshot();
    std::vector<Json> out;
    for (const auto& item : *snap.corpus)
      if (!kind || item_kind(item) == *kind) out.push_back(to_document(item));
    return out;
  }

  /// Events with seq in (since, current]. Throws ReplayGap when `since` is
  /// ahead of the log.
  std::vector<Event> events_since(std::uint64_t since) const {
    std::lock_guard lock(state_mutex_);
    return slice(since);
  }

  /// Blocks until an event after `since` exists, the timeout passes, or the
  /// registry closes.
  std::vector<Event> wait_events(std::uint64_t since, std::chrono::milliseconds timeout) const {
    std::unique_lock lock(state_mutex_);
    changed_.wait_for(lock, timeout, [&] { return closed_ || log_.size() > since; });
    return slice(since);
  }

  bool closed() const {
    std::lock_guard lock(state_mutex_);
    return closed_;
  }

  /// Wakes every waiting subscriber; later waits return immediately.
  void close() {
    {
      std::lock_guard lock(state_mutex_);
      closed_ = true;
    }
    changed_.notify_all();
  }

  /// Cursor over the event log. `since` replays history after that seq;
  /// without it the subscription starts live at the current seq.
  class Subscription {
   public:
    Subscription(const Registry& registry, std::uint64_t cursor)
        : registry_(&registry), cursor_(cursor) {}

    /// Next event in commit order, or nothing on timeout / close.
    std::optional<Event> next(std::chrono::milliseconds timeout) {
      if (buffer_.empty()) {
        buffer_ = registry_->wait_events(cursor_, timeout);
        pos_ = 0;
      }
      if (pos_ >= buffer_.size()) {
        buffer_.clear();
        return std::nullopt;
      }
      Event e = buffer_[pos_++];
      cursor_ = e.seq;
      if (pos_ >= buffer_.size()) buffer_.clear();
      return e;
    }

    std::uint64_t cursor() const noexcept { return cursor_; }

   private:
    const Registry* registry_;
    std::uint64_t cursor_;
    std::vector<Event> buffer_;
    std::size_t pos_ = 0;
  };

  Subscription subscribe(std::optional<std::uint64_t> since = std::nullopt) const {
    std::lock_guard lock(state_mutex_);
    const std::uint64_t current = log_.size();
    if (since && *since > current)
      throw Error(ErrorCode::ReplayGap, "since=" + std::to_string(*since) +
                                            " is ahead of the log (seq " + std::to_string(current) + ")");
    return Subscription(*this, since.value_or(current));
  }

 private:
  std::shared_ptr<const Corpus> current() const {
    std::lock_guard lock(state_mutex_);
    return corpus_;
  }

  static Item validated(const Json& document) {
    auto item = from_document(document);
    if (!item) throw Error(ErrorCode::ValidationError, item.summary(), item.errors());
    return std::move(item).value();
  }

  std::vector<Event> slice(std::uint64_t since) const {
    if (since > log_.size())
      throw Error(ErrorCode::ReplayGap, "since=" + std::to_string(since) +
                                            " is ahead of the log (seq " +
                                            std::to_string(log_.size()) + ")");
    return {log_.begin() + static_cast<std::ptrdiff_t>(since), log_.end()};
  }

  Event make_event(const Corpus& corpus, EventAction action, std::string id,
                   std::uint64_t seq) const {
    Event e;
    e.seq = seq;
    e.action = action;
    if (action != EventAction::Deleted) e.item = to_document(corpus.at(id));
    e.id = std::move(id);
    e.timestamp = clock_();
    return e;
  }

  // Caller holds write_mutex_.
  Event commit(std::shared_ptr<Corpus> next, EventAction action, std::string id) {
    Event e = make_event(*next, action, std::move(id), seq() + 1);
    if (data_file_) {
      save_corpus(*next, *data_file_);
      append_log(e);
    }
    {
      std::lock_guard lock(state_mutex_);
      corpus_ = std::move(next);
      log_.push_back(e);
    }
    changed_.notify_all();
    return e;
  }

  void append_log(const Event& e) const {
    std::ofstream out(event_log_path(*data_file_), std::ios::binary | std::ios::app);
    out << to_document(e).dump() << '\n';
    out.flush();
    if (!out) throw Error(ErrorCode::IoError, "cannot append to event log");
  }

  /// Rebuilds state from the event log, then reconciles with the corpus file
  /// (which may have been edited offline, e.g. by a CLI import) by appending
  /// the events that turn the replayed state into the file's contents.
  void recover() {
    const fs::path log_path = event_log_path(*data_file_);
    std::vector<Event> events;
    if (fs::exists(log_path)) {
      const std::string text = detail::read_file(log_path);
      std::size_t line_no = 0;
      for (auto line : detail::split_lines(text)) {
        ++line_no;
        if (detail::trim(line).empty()) continue;
        Json doc;
        try {
          doc = Json::parse(line);
        } catch (const nlohmann::json::parse_error& ex) {
          throw Error(ErrorCode::ParseError, "event log line " + std::to_string(line_no) + ": " + ex.what(),
                      {}, line_no);
        }
        events.push_back(event_from_document(doc));
        if (events.back().seq != events.size())
          throw Error(ErrorCode::ParseError, "event log is not contiguous at line " + std::to_string(line_no),
                      {}, line_no);
      }
    }
    Corpus state = replay(events);
    // A missing corpus file means the log alone is authoritative.
    const Corpus on_disk = fs::exists(*data_file_) ? load_corpus(*data_file_, {.lenient = true}) : state;

    std::vector<Event> pending;
    auto seq = [&] { return events.size() + pending.size() + 1; };
    std::vector<std::string> gone;
    for (const auto& item : state)
      if (!on_disk.contains(item_id(item))) gone.push_back(item_id(item));
    for (const auto& id : gone) {
      pending.push_back(make_event(state, EventAction::Deleted, id, seq()));
      state.erase(id);
    }
    for (const auto& item : on_disk) {
      const Item* have = state.find(item_id(item));
      if (have && *have == item) continue;
      if (have) {
        state.replace(item);
        pending.push_back(make_event(state, EventAction::Updated, item_id(item), seq()));
      } else {
        state.add(item);
        pending.push_back(make_event(state, EventAction::Created, item_id(item), seq()));
      }
    }

    events.insert(events.end(), pending.begin(), pending.end());
    for (const auto& e : pending) append_log(e);
    if (!pending.empty() || !fs::exists(*data_file_)) save_corpus(state, *data_file_);
    corpus_ = std::make_shared<const Corpus>(std::move(state));
    log_ = std::move(events);
  }

  std::optional<fs::path> data_file_;
  Clock clock_;

  std::mutex write_mutex_;
  mutable std::mutex state_mutex_;
  mutable std::condition_variable changed_;
  std::shared_ptr<const Corpus> corpus_;
  std::vector<Event> log_;
  bool closed_ = false;
};

}  // namespace teeda
