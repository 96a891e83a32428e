#pragma once

#include "wseq/classify.hpp"
#include "wseq/proximate.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace wseq {

using Json = nlohmann::ordered_json;

// Shortest decimal that reads back to the same double.
std::string format_number(double x);

Json to_json(const PropertyVerdict& v);
Json to_json(const PropertyReport& r);
Json to_json(const IndexEstimate& e);
Json to_json(const SeriesVerdict& v);
Json to_json(const IntervalVerdict& v);
Json to_json(const FlatWitness& w);
Json to_json(const ClassificationReport& r, const std::string& sequence);

// "(1,inf)", "[1,inf)", "(0,1) or (0,1]", "empty", ...; supersets read "subset of (0,2]".
std::string render_interval(const IntervalVerdict& v);

std::string render_text(const ClassificationReport& r, const std::string& sequence);
std::string render_csv(const ClassificationReport& r);

struct TableRow {
  double alpha;
  double beta;
  ClassificationReport report;
};

// Classification rows for M_{alpha,beta}, one per beta, treating alpha symbolically.
std::vector<TableRow> mab_table(double alpha, const std::vector<double>& betas);

enum class Format { Json, Csv, Text };
std::string render_table(const std::vector<TableRow>& rows, Format format);

} // namespace wseq
