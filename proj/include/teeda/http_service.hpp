#pragma once

// HTTP front end for a Registry. Bodies are the JSON documents from
// document.hpp; the live feed at /events is a text/event-stream.

#include <atomic>
#include <chrono>
#include <cstdint>
#include <optional>
#include <string>

#include <httplib.h>

#include "teeda/registry.hpp"

namespace teeda {

struct ServiceOptions {
  /// Poll interval of the event stream while no event is pending.
  std::chrono::milliseconds stream_poll{200};
};

class HttpService {
 public:
  explicit HttpService(Registry& registry, ServiceOptions options = {})
      : registry_(registry), options_(options) {
    routes();
  }

  HttpService(const HttpService&) = delete;
  HttpService& operator=(const HttpService&) = delete;

  ~HttpService() { stop(); }

  /// Binds to `port` (0 picks a free port) and returns the bound port.
  int bind(const std::string& host, int port) {
    if (port == 0) return server_.bind_to_any_port(host);
    if (!server_.bind_to_port(host, port))
      throw Error(ErrorCode::IoError, "cannot bind " + host + ":" + std::to_string(port));
    return port;
  }

  /// Blocks serving requests until stop().
  bool listen_after_bind() { return server_.listen_after_bind(); }

  void wait_until_ready() const { server_.wait_until_ready(); }

  void stop() {
    if (stopping_.exchange(true)) return;
    server_.stop();
  }

  httplib::Server& server() noexcept { return server_; }

 private:
  static void send_json(httplib::Response& res, int status, const Json& body) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
  }

  static int status_for(ErrorCode code) {
    switch (code) {
      case ErrorCode::UnknownItem:
      case ErrorCode::UnknownRequest:
      case ErrorCode::UnknownNode:
        return 404;
      case ErrorCode::DuplicateId:
        return 409;
      case ErrorCode::IoError:
        return 500;
      default:
        return 400;
    }
  }

  static void send_error(httplib::Response& res, const Error& e) {
    Json body;
    body["error"] = std::string(to_string(e.code()));
    body["message"] = e.what();
    body["errors"] = errors_json(e.fields());
    send_json(res, status_for(e.code()), body);
  }

  template <typename Handler>
  static httplib::Server::Handler guarded(Handler handler) {
    return [handler](const httplib::Request& req, httplib::Response& res) {
      try {
        handler(req, res);
      } catch (const Error& e) {
        send_error(res, e);
      } catch (const nlohmann::json::exception& e) {
        send_error(res, Error(ErrorCode::ParseError, e.what()));
      }
    };
  }

  static Json parse_body(const httplib::Request& req) {
    try {
      return Json::parse(req.body);
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorCode::ParseError, std::string("request body: ") + e.what(),
                  {{"", ErrorCode::ParseError, "malformed JSON"}});
    }
  }

  static std::optional<std::uint64_t> query_uint(const httplib::Request& req, const char* key) {
    if (!req.has_param(key)) return std::nullopt;
    const auto text = req.get_param_value(key);
    try {
      std::size_t used = 0;
      const auto v = std::stoull(text, &used);
      if (used != text.size()) throw std::invalid_argument(key);
      return v;
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, std::string("query parameter '") + key + "' must be a non-negative integer");
    }
  }

  static Json with_seq(std::uint64_t seq, const char* key, Json body) {
    Json doc;
    doc["seq"] = seq;
    doc[key] = std::move(body);
    return doc;
  }

  static std::string sse_frame(const Event& e) {
    return "id: " + std::to_string(e.seq) + "\nevent: " + std::string(to_string(e.action)) +
           "\ndata: " + to_document(e).dump() + "\n\n";
  }

  void routes() {
    server_.Post("/items", guarded([this](const httplib::Request& req, httplib::Response& res) {
      auto event = registry_.create(parse_body(req));
      send_json(res, 201, to_document(event));
    }));

    server_.Get("/items", guarded([this](const httplib::Request& req, httplib::Response& res) {
      std::optional<DataKind> kind;
      if (req.has_param("kind")) {
        kind = parse_token<DataKind>(req.get_param_value("kind"));
        if (!kind)
          throw Error(ErrorCode::UnknownKind, "unknown kind", {{"kind", ErrorCode::UnknownKind, req.get_param_value("kind")}});
      }
      auto snap = registry_.snapshot();
      Json items = Json::array();
      for (const auto& item : *snap.corpus)
        if (!kind || item_kind(item) == *kind) items.push_back(to_document(item));
      send_json(res, 200, with_seq(snap.seq, "items", std::move(items)));
    }));

    server_.Get(R"(/items/([^/]+))", guarded([this](const httplib::Request& req, httplib::Response& res) {
      auto snap = registry_.snapshot();
      send_json(res, 200, to_document(snap.corpus->at(req.matches[1].str())));
    }));

    server_.Put(R"(/items/([^/]+))", guarded([this](const httplib::Request& req, httplib::Response& res) {
      send_json(res, 200, to_document(registry_.update(req.matches[1].str(), parse_body(req))));
    }));

    server_.Delete(R"(/items/([^/]+))", guarded([this](const httplib::Request& req, httplib::Response& res) {
      send_json(res, 200, to_document(registry_.remove(req.matches[1].str())));
    }));

    server_.Put(R"(/items/([^/]+)/category)",
                guarded([this](const httplib::Request& req, httplib::Response& res) {
                  const Json body = parse_body(req);
                  std::optional<Category> category;
                  if (!body.is_object() || !body.contains("category"))
                    throw Error(ErrorCode::ParseError, "expected {\"category\": token|null}",
                                {{"category", ErrorCode::ParseError, "missing"}});
                  if (!body["category"].is_null()) {
                    const auto text = body["category"].get<std::string>();
                    category = parse_token<Category>(text);
                    if (!category)
                      throw Error(ErrorCode::UnknownCategory, "unknown category",
                                  {{"category", ErrorCode::UnknownCategory, text}});
                  }
                  send_json(res, 200, to_document(registry_.categorize(req.matches[1].str(), category)));
                }));

    server_.Get("/network", guarded([this](const httplib::Request&, httplib::Response& res) {
      auto snap = registry_.snapshot();
      Json doc = to_document(build_network(*snap.corpus));
      doc["seq"] = snap.seq;
      send_json(res, 200, doc);
    }));

    server_.Get("/stats", guarded([this](const httplib::Request&, httplib::Response& res) {
      auto snap = registry_.snapshot();
      const Corpus& c = *snap.corpus;
      Json doc = to_document(corpus_stats(c));
      doc["seq"] = snap.seq;
      doc["common_variables"] = detail::labels_json(common_variable_types(c).labels);
      doc["frequency"] = to_document(variable_frequency(c));
      send_json(res, 200, doc);
    }));

    server_.Get("/report", guarded([this](const httplib::Request&, httplib::Response& res) {
      auto snap = registry_.snapshot();
      send_json(res, 200, with_seq(snap.seq, "report", to_document(scenario_report(*snap.corpus))));
    }));

    server_.Get(R"(/matches/([^/]+))", guarded([this](const httplib::Request& req, httplib::Response& res) {
      auto snap = registry_.snapshot();
      const auto& request = request_by_id(*snap.corpus, req.matches[1].str());
      std::optional<std::size_t> top_k;
      if (auto k = query_uint(req, "top_k")) top_k = static_cast<std::size_t>(*k);
      auto ranked = rank_candidates(request, *snap.corpus, top_k);
      Json doc = with_seq(snap.seq, "matches", to_document(ranked));
      doc["request"] = request.id;
      send_json(res, 200, doc);
    }));

    // follow=0 returns the replay and closes; limit=N closes after N events.
    server_.Get("/events", guarded([this](const httplib::Request& req, httplib::Response& res) {
      auto sub = std::make_shared<Registry::Subscription>(registry_.subscribe(query_uint(req, "since")));
      const bool follow = !req.has_param("follow") || req.get_param_value("follow") != "0";
      const auto limit = query_uint(req, "limit");
      auto sent = std::make_shared<std::uint64_t>(0);
      res.set_header("Cache-Control", "no-cache");
      res.set_chunked_content_provider(
          "text/event-stream",
          [this, sub, follow, limit, sent](std::size_t, httplib::DataSink& sink) {
            while (!stopping_ && !registry_.closed() && sink.is_writable()) {
              if (limit && *sent >= *limit) break;
              auto event = sub->next(follow ? options_.stream_poll : std::chrono::milliseconds(0));
              if (!event) {
                if (!follow) break;
                continue;
              }
              const auto frame = sse_frame(*event);
              if (!sink.write(frame.data(), frame.size())) return false;
              ++*sent;
            }
            sink.done();
            return true;
          });
    }));
  }

  Registry& registry_;
  ServiceOptions options_;
  httplib::Server server_;
  std::atomic<bool> stopping_{false};
};

}  // namespace teeda
