#pragma once

#include "wseq/sequence.hpp"

#include <string>
#include <vector>

namespace wseq {

enum class Convergence { Diverges, Converges, Inconclusive };
enum class SeriesMethod { ClosedFormRule, Condensation, PartialSumTrend };

struct SeriesVerdict {
  Convergence verdict = Convergence::Inconclusive;
  SeriesMethod method = SeriesMethod::Condensation;
  double partial_sum = 0.0;
  std::string detail;
};

const char* to_string(Convergence c);
const char* to_string(SeriesMethod m);

// Heuristic verdict for sum_k exp(log_terms[k]).
SeriesVerdict classify_log_terms(const std::vector<double>& log_terms);

// sum (m_p)^(-1/gamma)
SeriesVerdict mu_series(const WeightSequence& seq, double gamma);
// sum ((p+1) m_p)^(-1/(gamma+1))
SeriesVerdict sigma_series(const WeightSequence& seq, double gamma);

struct SeriesPair {
  SeriesVerdict mu;
  SeriesVerdict sigma;
};

// Both series at the same exponent; a heuristic pair contradicting
// "sigma converges implies mu converges" is downgraded to Inconclusive.
SeriesPair series_at(const WeightSequence& seq, double gamma);

} // namespace wseq
