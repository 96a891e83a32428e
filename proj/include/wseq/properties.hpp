#pragma once

#include "wseq/sequence.hpp"

#include <cstddef>
#include <optional>
#include <string>

namespace wseq {

enum class Status { HoldsOnPrefix, FailsAt, Fails, Inconclusive, AnalyticYes, AnalyticNo };

const char* to_string(Status s);

struct PropertyVerdict {
  Status status = Status::Inconclusive;
  std::optional<std::size_t> index; // first violating index for FailsAt
  std::optional<double> witness;    // D for dc, sup m_p/M_p^(1/p) (or A) for mg, B for snq
  bool stabilized = false;
  std::string note;

  // Holds analytically, or on the prefix with a stabilized witness.
  bool holds() const;
  // Refuted on the prefix, analytically, or the witness keeps growing.
  bool fails() const;
};

struct PropertyReport {
  PropertyVerdict lc, dc, mg, nq, snq;
  PropertyVerdict weight;
  PropertyVerdict strongly_regular;
};

PropertyVerdict check_lc(const WeightSequence& seq);
PropertyVerdict check_dc(const WeightSequence& seq);
PropertyVerdict check_mg(const WeightSequence& seq);
PropertyVerdict check_nq(const WeightSequence& seq);
PropertyVerdict check_snq(const WeightSequence& seq);
PropertyVerdict check_weight(const WeightSequence& seq);

PropertyReport full_report(const WeightSequence& seq);

// m_p bounded on the prefix: the quotients stop growing (degenerate, non-weight case).
bool quotients_bounded(const WeightSequence& seq);

} // namespace wseq
