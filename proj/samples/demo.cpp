// Registers a request and two jackets, then prints the network and the
// ranked candidates for the request.

#include <iostream>

#include "teeda/teeda.hpp"

int main() {
  using namespace teeda;

  Corpus corpus;
  auto request = validate_request("Behavioral history of those infected with COVID-19",
                                  {"date", "address", "place visited"},
                                  "To decide whether going out is safe in my area")
                     .value();
  request.id = "req-behavior";
  corpus.add(request);

  JacketInput cases{"Number of positive cases in Tokyo Metropolis (by city)",
                    {"date", "city name", "number of positive cases"},
                    "Open data from the metropolitan government",
                    {"time series", "table"},
                    {"CSV"},
                    "generally shareable"};
  corpus.add(validate_jacket(cases).value());

  JacketInput survey{"A survey on coping with anxiety during COVID-19 pandemic",
                     {"Address", "age", "type of anxiety"},
                     std::nullopt,
                     {"table"},
                     {"PDF"},
                     "shareable by purchase"};
  corpus.add(validate_jacket(survey).value());

  const auto net = build_network(corpus);
  std::cout << net.nodes.size() << " nodes, " << net.edges.size() << " edges\n";
  for (const auto& e : net.edges)
    std::cout << "  " << e.a << " -- " << e.b << " shares " << render::join_labels(e.shared) << "\n";

  std::cout << "\n" << render::matches_block(request, rank_candidates(request, corpus));

  if (auto hint = suggest_category(request))
    std::cout << "\nsuggested category: " << token(*hint) << "\n";
  return 0;
}
