#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "support.hpp"

namespace teeda {
namespace {

using testing::ScratchDir;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::IoError;
}

TEST(LoadCorpus, NeedsAndCasesFixture) {
  const auto c = load_corpus(testing::fixture("needs_and_cases.jsonl"));
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c.at("needs"), Item(testing::needs_request()));
  const auto& j = std::get<DataJacket>(c.at("cases"));
  EXPECT_EQ(token(*j.sharing), "generally shareable");
  EXPECT_TRUE(j.types.contains(DataType::NumericalValue));
  EXPECT_TRUE(j.formats.contains(DataFormat::Other));
  EXPECT_EQ(j.formats.size(), 2u);
}

TEST(LoadCorpus, EmptyAndBlankFiles) {
  EXPECT_TRUE(parse_corpus("").empty());
  EXPECT_TRUE(parse_corpus("\n  \n\r\n").empty());
}

TEST(LoadCorpus, MissingFileIsIoError) {
  EXPECT_EQ(code_of([] { load_corpus("/nonexistent/teeda/corpus.jsonl"); }), ErrorCode::IoError);
}

TEST(LoadCorpus, ErrorsCarryLineNumbers) {
  const std::string good = R"({"id":"a","kind":"request","name":"n","variables":["x"]})";
  try {
    parse_corpus(good + "\n\n{not json\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ParseError);
    EXPECT_EQ(e.line(), 3u);
  }
  try {
    parse_corpus(good + "\n" + R"({"id":"b","kind":"request","name":"","variables":[]})" + "\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ValidationError);
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.fields().size(), 2u);  // every problem reported
  }
  try {
    parse_corpus(good + "\n" + good + "\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DuplicateId);
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(LoadCorpus, StrictRejectsUnknownFieldsLenientKeepsThem) {
  const std::string line =
      R"({"id":"a","kind":"request","name":"n","variables":["x"],"priority":3})";
  EXPECT_EQ(code_of([&] { parse_corpus(line); }), ErrorCode::ValidationError);
  const auto c = parse_corpus(line, {.lenient = true});
  const auto& r = std::get<DataRequest>(c.at("a"));
  EXPECT_EQ(Json::parse(r.extensions), Json::parse(R"({"priority":3})"));
  // Extension fields survive a round trip.
  EXPECT_EQ(serialize_corpus(c), line + "\n");
}

TEST(LoadCorpus, WrongKindFieldIsRejectedEvenWhenLenient) {
  const std::string line = R"({"id":"a","kind":"request","name":"n","variables":["x"],"sharing":"open"})";
  try {
    parse_corpus(line, {.lenient = true});
    FAIL();
  } catch (const Error& e) {
    ASSERT_EQ(e.fields().size(), 1u);
    EXPECT_EQ(e.fields()[0].code, ErrorCode::FieldNotAllowed);
  }
}

TEST(SaveCorpus, CanonicalCasesRecord) {
  Corpus c;
  c.add(testing::positive_cases_jacket());
  const auto doc = Json::parse(serialize_corpus(c));
  EXPECT_EQ(doc["types"], Json::parse(R"(["time series","numerical value","table","image"])"));
  EXPECT_EQ(doc["formats"], Json::parse(R"(["CSV","other"])"));
  EXPECT_EQ(doc["sharing"], "generally shareable");
  EXPECT_EQ(doc["variables"], Json::parse(R"(["daily number of cases","date","total number of cases"])"));
}

TEST(SaveCorpus, RoundTripOnRandomCorpora) {
  ScratchDir dir("persist");
  std::mt19937_64 rng(2024);
  for (int round = 0; round < 100; ++round) {
    const auto corpus = testing::random_corpus(rng);
    const auto path = dir / ("c" + std::to_string(round) + ".jsonl");
    save_corpus(corpus, path);
    const auto back = load_corpus(path);
    ASSERT_EQ(back, corpus) << "round " << round;
    EXPECT_EQ(corpus_stats(back), corpus_stats(corpus));
    EXPECT_EQ(build_network(back), build_network(corpus));
    const auto again = dir / "again.jsonl";
    save_corpus(back, again);
    EXPECT_EQ(slurp(again), slurp(path));
  }
}

TEST(SaveCorpus, NonAsciiLabelsSurvive) {
  Corpus c;
  c.add(testing::make_request("u", {"日付", "Straße", "CAFÉ name"}));
  const auto back = parse_corpus(serialize_corpus(c));
  EXPECT_EQ(testing::texts(item_variables(back.at("u"))),
            (std::vector<std::string>{"caf\xC3\x89 name", "stra\xC3\x9F" "e", "日付"}));
}

TEST(ParseCsv, QuotingAndLines) {
  const auto recs = parse_csv("\xEF\xBB\xBF" "a,b\r\n\"x, y\",\"say \"\"hi\"\"\"\n\n\"multi\nline\",z\n");
  ASSERT_EQ(recs.size(), 3u);
  EXPECT_EQ(recs[0].fields, (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(recs[1].fields, (std::vector<std::string>{"x, y", "say \"hi\""}));
  EXPECT_EQ(recs[1].line, 2u);
  EXPECT_EQ(recs[2].fields, (std::vector<std::string>{"multi\nline", "z"}));
  EXPECT_EQ(recs[2].line, 4u);
}

TEST(SplitList, TrimsAndDropsEmptyPieces) {
  EXPECT_EQ(split_list(" a ; b;;c; "), (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_TRUE(split_list("  ").empty());
}

TEST(ImportCsv, CasesJacketRowFixture) {
  const auto res = import_csv(testing::fixture("positive_cases_jacket.csv"), DataKind::Providable);
  ASSERT_TRUE(res.errors.empty()) << res.errors[0].message();
  ASSERT_EQ(res.items.size(), 1u);
  auto expected = testing::positive_cases_jacket();
  auto got = std::get<DataJacket>(res.items[0]);
  got.id = expected.id;
  EXPECT_EQ(got, expected);
}

TEST(ImportCsv, BlankVariablesIsMissingVariables) {
  const auto res = import_csv_text("name,variables\nSome request,\"  ; ;\"\n", DataKind::Request);
  EXPECT_TRUE(res.items.empty());
  ASSERT_EQ(res.errors.size(), 1u);
  EXPECT_EQ(res.errors[0].row, 2u);
  ASSERT_EQ(res.errors[0].errors.size(), 1u);
  EXPECT_EQ(res.errors[0].errors[0].code, ErrorCode::MissingVariables);
}

TEST(ImportCsv, HeaderProblems) {
  EXPECT_EQ(code_of([] { import_csv_text("", DataKind::Request); }), ErrorCode::HeaderMismatch);
  EXPECT_EQ(code_of([] { import_csv_text("name,variables,sharing\n", DataKind::Request); }),
            ErrorCode::HeaderMismatch);
  EXPECT_EQ(code_of([] { import_csv_text("name,purpose\n", DataKind::Request); }), ErrorCode::HeaderMismatch);
  EXPECT_EQ(code_of([] { import_csv_text("name,variables,Name\n", DataKind::Request); }),
            ErrorCode::HeaderMismatch);
  // Header names are matched case-insensitively.
  EXPECT_EQ(import_csv_text("Name, VARIABLES\nn,a;b\n", DataKind::Request).items.size(), 1u);
}

// Twenty data rows, audited by hand: rows are file lines with the header on
// line 1, so data row k sits on line k + 1.
TEST(ImportCsv, MixedTwentyRowFile) {
  const std::string csv =
      "name,variables,outline,types,formats,sharing\n"
      "Case counts,date;number of cases,,time series,CSV,generally shareable\n"           // 2 ok
      "Hospital beds,hospital name;number of beds,,table,RDB,not yet decided\n"             // 3 ok
      ",date,,,,\n"                                                                       // 4 MissingName
      "Rainfall,,,,,\n"                                                                   // 5 MissingVariables
      "Mobility,area name;time of day,,heatmap,,\n"                                       // 6 UnknownType
      "Sales,type of business;sales,,,PDF;scroll,\n"                                      // 7 UnknownFormat
      "Survey,reason;needs,,,,shareable sometimes\n"                                      // 8 UnknownSharing
      "Weather,temperature;humidity,\"daily, hourly\",numerical value,CSV,other conditions\n" // 9 ok
      "Short row,date\n"                                                                  // 10 width
      "Population,population;city name,,number,others,shareable by purchased\n"           // 11 ok
      ",,,,,\n"                                                                           // 12 name+vars
      "Visitors,event name; ;date,,,,non-shareable\n"                                     // 13 ok
      "Events,event name,,,,Shareable By Purchase\n"                                      // 14 ok
      "Bad all,,,graph;nope,,never\n"                                                     // 15 vars+type+sharing
      "Shops,industry;sales,,,,\n"                                                        // 16 ok
      "Prices,product name;sales,,table;table,CSV;csv,\n"                                 // 17 ok
      "\"Quoted, name\",\"latitude;longitude\",,image,other,shareable within a limited range\n" // 18 ok
      "Trailing,date,,,,,\n"                                                              // 19 width
      "Anxiety,type of anxiety;consultation content,,text,TXT,conditions/negotiations are required\n" // 20 ok
      "Cafes,caf\xC3\xA9 name;Date,,,,non-shareable\n";                        // 21 ok
  const auto res = import_csv_text(csv, DataKind::Providable);
  EXPECT_EQ(res.items.size(), 11u);
  std::map<std::size_t, std::vector<ErrorCode>> errs;
  for (const auto& e : res.errors)
    for (const auto& f : e.errors) errs[e.row].push_back(f.code);
  const std::map<std::size_t, std::vector<ErrorCode>> expected{
      {4, {ErrorCode::MissingName}},
      {5, {ErrorCode::MissingVariables}},
      {6, {ErrorCode::UnknownType}},
      {7, {ErrorCode::UnknownFormat}},
      {8, {ErrorCode::UnknownSharingCondition}},
      {10, {ErrorCode::ParseError}},
      {12, {ErrorCode::MissingName, ErrorCode::MissingVariables}},
      {15, {ErrorCode::MissingVariables, ErrorCode::UnknownType, ErrorCode::UnknownSharingCondition}},
      {19, {ErrorCode::ParseError}},
  };
  EXPECT_EQ(errs, expected);

  const auto& weather = std::get<DataJacket>(res.items[2]);
  EXPECT_EQ(weather.outline, "daily, hourly");
  const auto& population = std::get<DataJacket>(res.items[3]);
  EXPECT_EQ(population.sharing, SharingCondition::ShareableByPurchase);
  EXPECT_TRUE(population.types.contains(DataType::NumericalValue));
  const auto& visitors = std::get<DataJacket>(res.items[4]);
  EXPECT_EQ(visitors.variables.size(), 2u);
  const auto& prices = std::get<DataJacket>(res.items[7]);
  EXPECT_EQ(prices.types.size(), 1u);
  EXPECT_EQ(prices.formats.size(), 1u);
}

TEST(ImportCsv, InvalidUtf8RowIsRejected) {
  const auto res = import_csv_text("name,variables\nok,a\nbad \xC3,b\n", DataKind::Request);
  EXPECT_EQ(res.items.size(), 1u);
  ASSERT_EQ(res.errors.size(), 1u);
  EXPECT_EQ(res.errors[0].row, 3u);
}

TEST(ImportRecords, KindMismatchIsRowError) {
  const std::string text = R"({"kind":"request","name":"n","variables":["x"]})"
                           "\n"
                           R"({"kind":"providable","name":"m","variables":["y"]})"
                           "\n";
  const auto res = import_records_text(text, DataKind::Providable);
  ASSERT_EQ(res.items.size(), 1u);
  ASSERT_EQ(res.errors.size(), 1u);
  EXPECT_EQ(res.errors[0].row, 1u);
  EXPECT_EQ(res.errors[0].errors[0].code, ErrorCode::KindMismatch);
}

TEST(NetworkFile, RoundTrip) {
  ScratchDir dir("net");
  std::mt19937_64 rng(11);
  for (int round = 0; round < 100; ++round) {
    const auto net = build_network(testing::random_corpus(rng));
    const auto path = dir / "net.json";
    export_network(net, path);
    EXPECT_EQ(load_network(path), net);
  }
}

TEST(NetworkFile, EmptyNetworkDocument) {
  ScratchDir dir("net-empty");
  export_network(build_network(Corpus{}), dir / "n.json");
  EXPECT_EQ(Json::parse(slurp(dir / "n.json")), Json::parse(R"({"nodes":[],"edges":[]})"));
  EXPECT_EQ(load_network(dir / "n.json"), ExchangeNetwork{});
}

TEST(NetworkFile, NeedsAndCasesDocument) {
  Corpus c;
  c.add(testing::needs_request());
  c.add(testing::positive_cases_jacket());
  const auto doc = to_document(build_network(c));
  EXPECT_EQ(doc["nodes"].size(), 2u);
  EXPECT_EQ(doc["nodes"][0], Json::parse(R"({"id":"cases","kind":"providable","name":"Trends in the number of positive cases by date of confirmation"})"));
  EXPECT_EQ(doc["nodes"][1]["id"], "needs");
  EXPECT_EQ(doc["nodes"][1]["kind"], "request");
  EXPECT_TRUE(doc["edges"].empty());
}

TEST(NetworkFile, MalformedFileIsParseError) {
  ScratchDir dir("net-bad");
  spit(dir / "n.json", "{\"nodes\": [");
  EXPECT_EQ(code_of([&] { load_network(dir / "n.json"); }), ErrorCode::ParseError);
}

}  // namespace
}  // namespace teeda
