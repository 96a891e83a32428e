#pragma once

#include "wseq/indices.hpp"
#include "wseq/properties.hpp"
#include "wseq/proximate.hpp"
#include "wseq/sequence.hpp"
#include "wseq/series.hpp"

#include <optional>
#include <string>
#include <vector>

namespace wseq {

enum class IntervalKind { Empty, All, UpTo, From };
enum class Endpoint { Open, Closed, Unknown };
enum class BoundSource { None, OmegaIndex, GammaIndex, FloorGammaPlusOne };

const char* to_string(IntervalKind k);
const char* to_string(Endpoint e);
const char* to_string(BoundSource b);

// From(b): (b,inf) or [b,inf). UpTo(b): (0,b) or (0,b].
// When subset_proven is false the interval is only a proven superset of the true one.
struct IntervalVerdict {
  IntervalKind kind = IntervalKind::Empty;
  double bound = 0.0;
  Endpoint endpoint = Endpoint::Unknown;
  BoundSource bound_source = BoundSource::None;
  bool subset_proven = true;
  std::vector<std::string> citations;
  std::string note;

  static IntervalVerdict empty();
  static IntervalVerdict all(bool proven);
  static IntervalVerdict from(double b, Endpoint e, BoundSource src);
  static IntervalVerdict upto(double b, Endpoint e, BoundSource src, bool proven);
  IntervalVerdict& cite(const std::string& tag);
};

struct ClassifyOptions {
  IndexMode mode = IndexMode::Auto;
  // Decide S and S~u exactly when gamma is a known small-denominator rational.
  // Off reproduces the family-generic table, which treats alpha symbolically.
  bool use_rationality = true;
  std::optional<ProximateOrderSpec> proximate_order;
};

struct ClassificationInputs {
  PropertyReport properties;
  IndexEstimate omega;
  IndexEstimate gamma;
  IndexEstimate gamma_check; // (gamma_beta) estimator, validator only
  std::optional<SeriesVerdict> mu_at_omega;
  std::optional<SeriesVerdict> sigma_at_omega;
  bool degenerate = false;
  bool admits_proximate_order = false;
  std::string admissibility_source;
  std::optional<bool> gamma_rational; // empty when undecidable
};

struct ClassificationReport {
  ClassificationInputs inputs;
  IntervalVerdict A, Au, Atilde; // injectivity: I_M, I~u_M, I~_M
  IntervalVerdict S, Su, Stilde; // surjectivity: S_M, S~u_M, S~_M
  // Same-class pairs whose shared endpoint can belong to at most one side.
  std::vector<std::string> coupled;
  std::vector<std::string> citations;
};

ClassificationReport full_classification(const WeightSequence& seq, const ClassifyOptions& opts = {});

// Never-bijective and containment checks; returns a description of each violation.
std::vector<std::string> invariant_violations(const ClassificationReport& r);

// True when x is within 1e-9 of p/q for some q <= 64.
bool is_small_rational(double x);

// Tolerance used for numeric index estimates (zero thresholds and superset widening).
constexpr double kIndexTolerance = 0.02;

} // namespace wseq
