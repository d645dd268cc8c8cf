// teeda: batch access to the registry, analyses and HTTP service.
//
// Exit codes: 0 success, 1 usage error, 2 validation / parse / I/O error.

#include <csignal>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "teeda/http_service.hpp"
#include "teeda/teeda.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

struct Options {
  bool lenient = false;
  bool json = false;

  std::string corpus;
  std::string corpus_b;
  std::string out;
  std::string file;
  std::string into;
  std::string kind;
  std::string format = "records";
  std::string request;
  std::string dimension;
  std::string host = "127.0.0.1";
  int port = 8080;
  std::size_t top = 0;
};

teeda::Corpus load(const Options& o, const std::string& path) {
  return teeda::load_corpus(path, {.lenient = o.lenient});
}

void print_json(const teeda::Json& doc) { std::cout << doc.dump(2) << "\n"; }

teeda::DataKind parse_kind(const std::string& text) {
  auto kind = teeda::parse_token<teeda::DataKind>(text);
  if (!kind) throw CLI::ValidationError("--kind", "expected request or providable");
  return *kind;
}

int run_stats(const Options& o) {
  const auto corpus = load(o, o.corpus);
  if (o.json) {
    teeda::Json doc = teeda::to_document(teeda::corpus_stats(corpus));
    doc["common_variables"] = teeda::detail::labels_json(teeda::common_variable_types(corpus).labels);
    doc["frequency"] = teeda::to_document(teeda::variable_frequency(corpus));
    print_json(doc);
  } else {
    std::cout << teeda::render::full_stats(corpus, o.top ? o.top : 15);
  }
  return kExitOk;
}

int run_network(const Options& o) {
  const auto net = teeda::build_network(load(o, o.corpus));
  teeda::export_network(net, o.out);
  std::cout << "wrote " << net.nodes.size() << " nodes, " << net.edges.size() << " edges to "
            << o.out << "\n";
  return kExitOk;
}

int run_match(const Options& o) {
  const auto corpus = load(o, o.corpus);
  const auto& request = teeda::request_by_id(corpus, o.request);
  std::optional<std::size_t> top;
  if (o.top) top = o.top;
  const auto ranked = teeda::rank_candidates(request, corpus, top);
  if (o.json)
    print_json(teeda::to_document(ranked));
  else
    std::cout << teeda::render::matches_block(request, ranked);
  return kExitOk;
}

int run_report(const Options& o) {
  const auto report = teeda::scenario_report(load(o, o.corpus), o.top ? o.top : teeda::kDefaultSuggestionTop);
  if (o.json)
    print_json(teeda::to_document(report));
  else
    std::cout << teeda::render::report_block(report);
  return kExitOk;
}

int run_compare(const Options& o) {
  const auto dim = teeda::parse_dimension(o.dimension);
  if (!dim) throw CLI::ValidationError("--dimension", "expected sharing, types or formats");
  const auto paired = teeda::compare_breakdowns(load(o, o.corpus), load(o, o.corpus_b), *dim);
  if (o.json)
    print_json(teeda::to_document(paired));
  else
    std::cout << teeda::render::compare_block(paired, "A", "B");
  return kExitOk;
}

int run_import(const Options& o) {
  const auto kind = parse_kind(o.kind);
  teeda::ImportResult result;
  if (o.format == "csv")
    result = teeda::import_csv(o.file, kind);
  else
    result = teeda::import_records(o.file, kind, {.lenient = o.lenient});

  teeda::Corpus corpus;
  if (teeda::fs::exists(o.into)) corpus = load(o, o.into);
  std::size_t added = 0;
  for (auto& item : result.items) {
    if (!teeda::item_id(item).empty() && corpus.contains(teeda::item_id(item))) {
      std::cerr << "skipped: duplicate id '" << teeda::item_id(item) << "'\n";
      result.errors.push_back({0, {{"id", teeda::ErrorCode::DuplicateId, teeda::item_id(item)}}});
      continue;
    }
    corpus.add(std::move(item));
    ++added;
  }
  teeda::save_corpus(corpus, o.into);
  for (const auto& e : result.errors)
    if (e.row) std::cerr << e.message() << "\n";
  std::cout << "imported " << added << " items, " << result.errors.size() << " rejected\n";
  return result.errors.empty() ? kExitOk : kExitData;
}

int run_export(const Options& o) {
  const auto corpus = load(o, o.corpus);
  teeda::Corpus out;
  std::optional<teeda::DataKind> kind;
  if (!o.kind.empty()) kind = parse_kind(o.kind);
  for (const auto& item : corpus)
    if (!kind || teeda::item_kind(item) == *kind) out.add(item);
  teeda::save_corpus(out, o.out);
  std::cout << "wrote " << out.size() << " items to " << o.out << "\n";
  return kExitOk;
}

int run_serve(const Options& o) {
  // Block termination signals here so that every thread inherits the mask
  // and only the waiter below receives them.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  teeda::Registry registry(teeda::fs::path(o.file));
  teeda::HttpService service(registry);
  const int port = service.bind(o.host, o.port);
  std::cout << "serving " << o.file << " on http://" << o.host << ":" << port << " (seq "
            << registry.seq() << ")" << std::endl;

  std::thread waiter([&] {
    int sig = 0;
    sigwait(&signals, &sig);
    registry.close();
    service.stop();
  });
  service.listen_after_bind();
  // listen returned without a signal (e.g. socket failure): release the waiter.
  pthread_kill(waiter.native_handle(), SIGTERM);
  waiter.join();
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Data request / data jacket matching and analysis"};
  app.require_subcommand(1);
  Options o;
  app.add_flag("--lenient", o.lenient, "Keep unknown record fields instead of rejecting them");

  auto* serve = app.add_subcommand("serve", "Run the HTTP registry on a corpus file");
  serve->add_option("--port", o.port, "Port (0 picks a free one)")->default_val(8080);
  serve->add_option("--host", o.host, "Bind address")->default_val("127.0.0.1");
  serve->add_option("--data", o.file, "Corpus file")->required();

  auto* import = app.add_subcommand("import", "Append items from a CSV or records file");
  import->add_option("--kind", o.kind, "request | providable")->required()->check(CLI::IsMember({"request", "providable"}));
  import->add_option("--format", o.format, "csv | records")->check(CLI::IsMember({"csv", "records"}));
  import->add_option("FILE", o.file, "Input file")->required()->check(CLI::ExistingFile);
  import->add_option("--into", o.into, "Corpus file to append to (created if absent)")->required();

  auto* exp = app.add_subcommand("export", "Write the corpus as canonical records");
  exp->add_option("CORPUS", o.corpus)->required()->check(CLI::ExistingFile);
  exp->add_option("--out", o.out, "Output file")->required();
  exp->add_option("--kind", o.kind, "Only this kind")->check(CLI::IsMember({"request", "providable"}));

  auto* stats = app.add_subcommand("stats", "Corpus statistics");
  stats->add_option("CORPUS", o.corpus)->required()->check(CLI::ExistingFile);
  stats->add_option("--top", o.top, "Rows in each variable ranking (default 15)");
  stats->add_flag("--json", o.json, "Structured output");

  auto* network = app.add_subcommand("network", "Export the exchange network");
  network->add_option("CORPUS", o.corpus)->required()->check(CLI::ExistingFile);
  network->add_option("--out", o.out, "Network document path")->required();

  auto* match = app.add_subcommand("match", "Rank providable data for a request");
  match->add_option("CORPUS", o.corpus)->required()->check(CLI::ExistingFile);
  match->add_option("--request", o.request, "Request id")->required();
  match->add_option("--top", o.top, "Keep the best K (default all)");
  match->add_flag("--json", o.json, "Structured output");

  auto* report = app.add_subcommand("report", "Category scenario report");
  report->add_option("CORPUS", o.corpus)->required()->check(CLI::ExistingFile);
  report->add_option("--top", o.top, "Profile variables per suggestion (default 5)");
  report->add_flag("--json", o.json, "Structured output");

  auto* compare = app.add_subcommand("compare", "Side-by-side metadata breakdown of two corpora");
  compare->add_option("CORPUS_A", o.corpus)->required()->check(CLI::ExistingFile);
  compare->add_option("CORPUS_B", o.corpus_b)->required()->check(CLI::ExistingFile);
  compare->add_option("--dimension", o.dimension, "sharing | types | formats")
      ->required()
      ->check(CLI::IsMember({"sharing", "types", "formats"}));
  compare->add_flag("--json", o.json, "Structured output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (serve->parsed()) return run_serve(o);
    if (import->parsed()) return run_import(o);
    if (exp->parsed()) return run_export(o);
    if (stats->parsed()) return run_stats(o);
    if (network->parsed()) return run_network(o);
    if (match->parsed()) return run_match(o);
    if (report->parsed()) return run_report(o);
    if (compare->parsed()) return run_compare(o);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const teeda::Error& e) {
    std::cerr << "error: " << teeda::to_string(e.code()) << ": " << e.what() << "\n";
    for (const auto& f : e.fields()) std::cerr << "  " << f.message() << "\n";
    return kExitData;
  }
  return kExitUsage;
}
