#pragma once

#include "wseq/sequence.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace wseq {

enum class IndexMethod {
  LiminfDirect,
  TailRegression,
  ExponentOfConvergence,
  AlmostIncreasingBisection,
  GammaBetaBisection,
  ClosedForm,
};

const char* to_string(IndexMethod m);

struct IndexEstimate {
  bool infinite = false; // the +inf marker; value is meaningless when set
  double value = 0.0;
  IndexMethod method = IndexMethod::TailRegression;
  std::size_t prefix = 0;
  std::vector<double> diagnostics; // estimates on growing prefixes, last = full prefix
  std::string note;

  double spread() const; // |last - second-to-last| of the diagnostics, 0 if fewer than two
};

enum class IndexMode {
  Auto,    // closed form for built-in families, numeric otherwise
  Numeric, // always estimate from the stored terms
};

constexpr std::size_t kMinIndexTerms = 64;

IndexEstimate omega(const WeightSequence& seq, IndexMode mode = IndexMode::Auto);
IndexEstimate exponent_of_convergence(const std::vector<double>& c);
IndexEstimate gamma_almost_increasing(const WeightSequence& seq, IndexMode mode = IndexMode::Auto);
IndexEstimate gamma_via_gamma_beta(const WeightSequence& seq, IndexMode mode = IndexMode::Auto);

// Growth fit of y[p] ~ w log(p+1) + b log log(p+1) + c on the upper part of the prefix.
struct GrowthFit {
  double slope = 0.0;      // w
  double log_coeff = 0.0;  // b, zero when the two-term fit was used
  double rms = 0.0;
  std::size_t window_lo = 0;
  bool corrected = false;  // three-term fit accepted
};

GrowthFit fit_log_growth(const std::vector<double>& y, std::size_t len);

} // namespace wseq
