#pragma once

#include "wseq/sequence.hpp"

#include <vector>

namespace wseq {

// Piecewise evaluation of h_M, omega_M and d_M on the range certified by the stored prefix.
class AssocEvaluator {
public:
  explicit AssocEvaluator(const WeightSequence& seq); // requires (lc)

  // omega_M(t) = sup_p log(t^p / M_p); valid for 0 < t < m_{N-2}.
  double omega_M(double t) const;
  // log h_M(t) = log inf_p M_p t^p; valid for t > 1/m_{N-2}.
  double log_h_M(double t) const;
  // log omega_M(t) / log t; needs t > 1 and omega_M(t) > 0.
  double d_M(double t) const;

  // Exclusive upper end of the omega_M range, m_{N-2}.
  double omega_limit() const;
  const std::vector<double>& logm() const { return logm_; }
  const std::vector<double>& logM() const { return logM_; }

private:
  // Value of sup_p (p s - log M_p) at s = log t, by locating the bracketing knot.
  double legendre(double s) const;

  std::vector<double> logM_;
  std::vector<double> logm_;
};

} // namespace wseq
