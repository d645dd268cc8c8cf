#pragma once

// Plain-text tables for terminal output. Averages and proportions are shown
// with two decimals; the structured documents carry full precision.

#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "teeda/analytics.hpp"
#include "teeda/network.hpp"
#include "teeda/scenario.hpp"

namespace teeda::render {

inline std::string two_decimals(const std::optional<Ratio>& r) {
  return r ? r->fixed(2) : "-";
}

template <typename T>
std::string or_dash(const std::optional<T>& v) {
  return v ? std::to_string(*v) : "-";
}

inline std::string pad_left(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

inline std::string pad_right(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

inline std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

template <typename Range>
std::string join_labels(const Range& labels, const std::string& sep = ", ") {
  std::vector<std::string> parts;
  for (const auto& l : labels) parts.push_back(l.text());
  return parts.empty() ? "-" : join(parts, sep);
}

inline std::string summary_line(const CorpusStats& s) {
  return "items " + std::to_string(s.n_items()) + ", requests " + std::to_string(s.n_requests()) +
         ", providable " + std::to_string(s.n_jackets()) + ", variable types " +
         std::to_string(s.all.distinct_variables) + ", avg " + two_decimals(s.all.avg_variables);
}

/// Summary line followed by the per-side characteristic-value table.
inline std::string stats_block(const CorpusStats& s) {
  constexpr std::size_t label_w = 44;
  const std::size_t widths[] = {10, 14, 17};
  std::ostringstream out;
  out << summary_line(s) << "\n\n";
  auto row = [&](const std::string& label, const std::string& all, const std::string& req,
                 const std::string& prov) {
    out << pad_right(label, label_w) << pad_left(all, widths[0]) << pad_left(req, widths[1])
        << pad_left(prov, widths[2]) << "\n";
  };
  row("", "All data", "Data request", "Providable data");
  row("No. of data items", std::to_string(s.all.items), std::to_string(s.requests.items),
      std::to_string(s.jackets.items));
  row("No. of variables", std::to_string(s.all.total_variables),
      std::to_string(s.requests.total_variables), std::to_string(s.jackets.total_variables));
  row("Types of variables", std::to_string(s.all.distinct_variables),
      std::to_string(s.requests.distinct_variables), std::to_string(s.jackets.distinct_variables));
  row("Average no. of variables in each data item", two_decimals(s.all.avg_variables),
      two_decimals(s.requests.avg_variables), two_decimals(s.jackets.avg_variables));
  row("Maximum no. of variables in each data item", or_dash(s.all.max_variables),
      or_dash(s.requests.max_variables), or_dash(s.jackets.max_variables));
  row("Minimum no. of variables in each data item", or_dash(s.all.min_variables),
      or_dash(s.requests.min_variables), or_dash(s.jackets.min_variables));
  return out.str();
}

inline std::string frequency_block(const std::string& title, const FrequencyTable& t) {
  std::ostringstream out;
  out << title << "\n";
  if (t.rows.empty()) out << "  (none)\n";
  std::size_t rank = 0;
  for (const auto& r : t.rows)
    out << pad_left(std::to_string(++rank), 4) << "  " << pad_left(std::to_string(r.count), 4)
        << "  " << r.label.text() << "\n";
  return out.str();
}

/// Stats block plus variable rankings and mismatch metrics.
inline std::string full_stats(const Corpus& corpus, std::size_t top_k = 15) {
  std::ostringstream out;
  out << stats_block(corpus_stats(corpus)) << "\n";
  const auto common = common_variable_types(corpus);
  const auto rs = singleton_ratio(corpus, DataKind::Request);
  const auto js = singleton_ratio(corpus, DataKind::Providable);
  out << "common variable types " << common.count << "\n";
  out << "variables appearing once: request " << rs.singletons << " of " << rs.distinct
      << ", providable " << js.singletons << " of " << js.distinct << "\n";
  const auto unmet = unmet_requests(corpus);
  out << "unmet requests " << unmet.size() << " of " << corpus.requests().size() << "\n\n";
  out << frequency_block("top variables (all data)", variable_frequency(corpus, std::nullopt, top_k))
      << "\n";
  out << frequency_block("top variables (data requests)",
                         variable_frequency(corpus, DataKind::Request, top_k))
      << "\n";
  out << frequency_block("top variables (providable data)",
                         variable_frequency(corpus, DataKind::Providable, top_k));
  return out.str();
}

inline std::string matches_block(const DataRequest& request,
                                 const std::vector<SatisfactionReport>& ranked) {
  std::ostringstream out;
  out << "request " << request.id << ": " << request.name << "\n";
  out << "variables: " << join_labels(request.variables) << "\n";
  if (ranked.empty()) {
    out << "no providable data shares a variable with this request (unmet)\n";
    return out.str();
  }
  std::size_t rank = 0;
  for (const auto& r : ranked) {
    out << "#" << ++rank << " " << r.jacket_id << "  coverage " << r.coverage.str() << " ("
        << r.coverage.fixed(2) << ")" << (r.satisfied ? "  satisfied" : "") << "\n";
    out << "    covered: " << join_labels(r.covered) << "\n";
    out << "    missing: " << join_labels(r.missing) << "\n";
  }
  if (!ranked.front().satisfied) out << "no single providable item satisfies this request (unmet)\n";
  return out.str();
}

inline std::string report_block(const ScenarioReport& rep, std::size_t profile_top = 10) {
  std::ostringstream out;
  out << "scenario report: " << rep.categorized() << " categorized requests, "
      << rep.uncategorized.size() << " uncategorized\n";
  for (const auto& sec : rep.sections) {
    out << "\n[" << token(sec.category) << "] requests " << sec.count << "\n";
    std::vector<std::string> prof;
    for (std::size_t i = 0; i < sec.profile.rows.size() && i < profile_top; ++i)
      prof.push_back(sec.profile.rows[i].label.text() + " (" +
                     std::to_string(sec.profile.rows[i].count) + ")");
    out << "  profile: " << (prof.empty() ? "-" : join(prof, ", ")) << "\n";
    out << "  missing from all providable data: " << join_labels(sec.missing) << "\n";
    out << "  suggested variables for new data: " << join_labels(sec.suggestions) << "\n";
  }
  if (!rep.uncategorized.empty())
    out << "\nuncategorized: " << join(rep.uncategorized, ", ") << "\n";
  return out.str();
}

inline std::string compare_block(const PairedBreakdown& p, const std::string& label_a,
                                 const std::string& label_b) {
  constexpr std::size_t token_w = 38;
  std::ostringstream out;
  out << "dimension " << to_string(p.a.dimension) << "\n";
  out << pad_right("token", token_w) << pad_left(label_a + " count", 14)
      << pad_left(label_a + " share", 14) << pad_left(label_b + " count", 14)
      << pad_left(label_b + " share", 14) << "\n";
  for (std::size_t i = 0; i < p.a.rows.size(); ++i) {
    const auto& ra = p.a.rows[i];
    const auto& rb = p.b.rows[i];
    out << pad_right(ra.token, token_w) << pad_left(std::to_string(ra.count), 14)
        << pad_left(two_decimals(ra.proportion), 14) << pad_left(std::to_string(rb.count), 14)
        << pad_left(two_decimals(rb.proportion), 14) << "\n";
  }
  out << pad_right("denominator", token_w) << pad_left(std::to_string(p.a.denominator), 14)
      << pad_left("", 14) << pad_left(std::to_string(p.b.denominator), 14) << "\n";
  return out.str();
}

}  // namespace teeda::render
