#include "wseq/assoc.hpp"

#include "wseq/error.hpp"
#include "wseq/properties.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace wseq {

AssocEvaluator::AssocEvaluator(const WeightSequence& seq) : logM_(seq.logM()), logm_(seq.log_quotients()) {
  PropertyVerdict lc = check_lc(seq);
  if (lc.status != Status::HoldsOnPrefix)
    fail(ErrorKind::InvalidParameter, "associated functions need a log-convex sequence (quotients decrease at p=" +
                                          std::to_string(*lc.index) + ")");
}

double AssocEvaluator::omega_limit() const { return std::exp(logm_.back()); }

double AssocEvaluator::legendre(double s) const {
  // p = #{k : log m_k <= s}, so log m_{p-1} <= s < log m_p
  auto p = static_cast<std::size_t>(std::upper_bound(logm_.begin(), logm_.end(), s) - logm_.begin());
  if (p >= logm_.size()) {
    std::ostringstream os;
    os.precision(17);
    os << "argument beyond the range covered by the prefix (needs t < " << omega_limit() << ")";
    fail(ErrorKind::Range, os.str());
  }
  if (p == 0) return 0.0;
  return static_cast<double>(p) * s - logM_[p];
}

double AssocEvaluator::omega_M(double t) const {
  if (!(t > 0.0)) fail(ErrorKind::Domain, "omega_M needs t > 0");
  return legendre(std::log(t));
}

double AssocEvaluator::log_h_M(double t) const {
  if (!(t > 0.0)) fail(ErrorKind::Domain, "h_M needs t > 0");
  return -legendre(-std::log(t));
}

double AssocEvaluator::d_M(double t) const {
  if (!(t > 1.0)) fail(ErrorKind::Domain, "d_M needs t > 1");
  double w = omega_M(t);
  if (!(w > 0.0)) fail(ErrorKind::Domain, "d_M undefined where omega_M vanishes");
  return std::log(w) / std::log(t);
}

} // namespace wseq
