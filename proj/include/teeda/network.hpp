#pragma once

#include <algorithm>
#include <cstddef>
#include <iterator>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "teeda/corpus.hpp"
#include "teeda/ratio.hpp"

namespace teeda {

/// Undirected link between two items that share at least one variable.
/// Endpoints are ordered so that `a < b`.
struct Edge {
  std::string a;
  std::string b;
  std::size_t weight = 0;
  VariableSet shared;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Node {
  std::string id;
  DataKind kind;
  std::string name;

  friend bool operator==(const Node&, const Node&) = default;
};

/// Nodes sorted by id, edges sorted by (a, b).
struct ExchangeNetwork {
  std::vector<Node> nodes;
  std::vector<Edge> edges;

  const Node* find_node(std::string_view id) const {
    auto it = std::lower_bound(nodes.begin(), nodes.end(), id,
                               [](const Node& n, std::string_view key) { return n.id < key; });
    return (it != nodes.end() && it->id == id) ? &*it : nullptr;
  }

  friend bool operator==(const ExchangeNetwork&, const ExchangeNetwork&) = default;
};

inline VariableSet intersect(const VariableSet& x, const VariableSet& y) {
  VariableSet out;
  std::set_intersection(x.begin(), x.end(), y.begin(), y.end(),
                        std::inserter(out, out.end()));
  return out;
}

inline VariableSet shared_variables(const Item& a, const Item& b) {
  return intersect(item_variables(a), item_variables(b));
}

/// Links every pair of items whose variable sets intersect, requests and
/// jackets alike. Candidate pairs come from a label -> items inverted index,
/// so pairs with nothing in common are never visited.
inline ExchangeNetwork build_network(const Corpus& corpus) {
  ExchangeNetwork net;
  const auto& items = corpus.items();
  net.nodes.reserve(items.size());
  for (const auto& item : items)
    net.nodes.push_back({item_id(item), item_kind(item), item_name(item)});
  std::sort(net.nodes.begin(), net.nodes.end(),
            [](const Node& x, const Node& y) { return x.id < y.id; });

  // Positions into `net.nodes`, so that pair keys are already id-ordered.
  std::unordered_map<std::string_view, std::size_t> position;
  for (std::size_t i = 0; i < net.nodes.size(); ++i) position.emplace(net.nodes[i].id, i);

  std::map<VariableLabel, std::vector<std::size_t>> postings;
  for (const auto& item : items) {
    const std::size_t pos = position.at(item_id(item));
    for (const auto& label : item_variables(item)) postings[label].push_back(pos);
  }

  std::map<std::pair<std::size_t, std::size_t>, VariableSet> pairs;
  for (auto& [label, list] : postings) {
    std::sort(list.begin(), list.end());
    for (std::size_t i = 0; i < list.size(); ++i)
      for (std::size_t j = i + 1; j < list.size(); ++j)
        pairs[{list[i], list[j]}].insert(label);
  }

  net.edges.reserve(pairs.size());
  for (auto& [key, shared] : pairs) {
    Edge e{net.nodes[key.first].id, net.nodes[key.second].id, shared.size(), std::move(shared)};
    net.edges.push_back(std::move(e));
  }
  return net;
}

/// Ids adjacent to `id`, ascending. Throws UnknownNode.
inline std::vector<std::string> neighbors(const ExchangeNetwork& net, std::string_view id) {
  if (!net.find_node(id))
    throw Error(ErrorCode::UnknownNode, "no node with id '" + std::string(id) + "'");
  std::vector<std::string> out;
  for (const auto& e : net.edges) {
    if (e.a == id) out.push_back(e.b);
    else if (e.b == id) out.push_back(e.a);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// How far one jacket goes toward fulfilling one request.
struct SatisfactionReport {
  std::string request_id;
  std::string jacket_id;
  VariableSet covered;
  VariableSet missing;
  Ratio coverage;
  bool satisfied = false;
  /// Size of the jacket's variable set; used for ranking.
  std::size_t jacket_size = 0;

  friend bool operator==(const SatisfactionReport&, const SatisfactionReport&) = default;
};

inline SatisfactionReport satisfaction(const DataRequest& request, const DataJacket& jacket) {
  SatisfactionReport rep;
  rep.request_id = request.id;
  rep.jacket_id = jacket.id;
  rep.jacket_size = jacket.variables.size();
  for (const auto& label : request.variables) {
    if (jacket.variables.count(label))
      rep.covered.insert(label);
    else
      rep.missing.insert(label);
  }
  rep.coverage = Ratio(rep.covered.size(), request.variables.size());
  rep.satisfied = rep.missing.empty();
  return rep;
}

/// Ranking order: coverage desc, jacket size asc, jacket id asc.
inline bool ranks_before(const SatisfactionReport& x, const SatisfactionReport& y) {
  if (x.coverage != y.coverage) return x.coverage > y.coverage;
  if (x.jacket_size != y.jacket_size) return x.jacket_size < y.jacket_size;
  return x.jacket_id < y.jacket_id;
}

/// Jackets with non-zero coverage of `request`, best first.
inline std::vector<SatisfactionReport> rank_candidates(
    const DataRequest& request, const Corpus& corpus,
    std::optional<std::size_t> top_k = std::nullopt) {
  std::vector<SatisfactionReport> out;
  for (const DataJacket* jacket : corpus.jackets()) {
    auto rep = satisfaction(request, *jacket);
    if (!rep.coverage.is_zero()) out.push_back(std::move(rep));
  }
  std::sort(out.begin(), out.end(), ranks_before);
  if (top_k && out.size() > *top_k) out.resize(*top_k);
  return out;
}

/// Looks up the request by id. Throws UnknownRequest when the id is absent
/// or names a jacket.
inline const DataRequest& request_by_id(const Corpus& corpus, std::string_view id) {
  const Item* item = corpus.find(id);
  const auto* req = item ? std::get_if<DataRequest>(item) : nullptr;
  if (!req) throw Error(ErrorCode::UnknownRequest, "no request with id '" + std::string(id) + "'");
  return *req;
}

}  // namespace teeda
