#include "wseq/sequence.hpp"

#include "wseq/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace wseq {

namespace {

void require_terms(std::size_t n) {
  if (n < 2) fail(ErrorKind::InvalidParameter, "a sequence needs at least 2 terms");
}

void require_positive(double x, const char* name) {
  if (!(x > 0.0) || !std::isfinite(x))
    fail(ErrorKind::InvalidParameter, std::string(name) + " must be a positive finite number");
}

std::vector<double> cumsum_from_zero(const std::vector<double>& logm) {
  std::vector<double> out(logm.size() + 1, 0.0);
  for (std::size_t p = 0; p < logm.size(); ++p) out[p + 1] = out[p] + logm[p];
  return out;
}

std::vector<double> log_factorials(std::size_t n) {
  std::vector<double> lf(n, 0.0);
  for (std::size_t p = 1; p < n; ++p) lf[p] = lf[p - 1] + std::log(static_cast<double>(p));
  return lf;
}

double mab_log_quotient(double alpha, double beta, std::size_t p) {
  double k = static_cast<double>(p) + 1.0;
  return alpha * std::log(k) + beta * std::log(std::log(M_E + k));
}

} // namespace

std::string Family::describe() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind) {
  case FamilyKind::Gevrey: os << "gevrey:" << alpha; break;
  case FamilyKind::MAB: os << "mab:" << alpha << "," << beta; break;
  case FamilyKind::QPow: os << "qpow:" << q; break;
  case FamilyKind::Custom: os << "custom"; break;
  }
  return os.str();
}

std::vector<double> WeightSequence::log_quotients() const {
  std::vector<double> out(logM_.size() - 1);
  for (std::size_t p = 0; p + 1 < logM_.size(); ++p) out[p] = logM_[p + 1] - logM_[p];
  return out;
}

std::optional<double> WeightSequence::rule_log_quotient(std::size_t p) const {
  if (!has_quotient_rule()) return std::nullopt;
  switch (family_.kind) {
  case FamilyKind::Gevrey: return family_.alpha * std::log(static_cast<double>(p) + 1.0);
  case FamilyKind::MAB: return mab_log_quotient(family_.alpha, family_.beta, p);
  case FamilyKind::QPow: return (2.0 * static_cast<double>(p) + 1.0) * std::log(family_.q);
  case FamilyKind::Custom: break;
  }
  return std::nullopt;
}

WeightSequence with_family(std::vector<double> logM, Family fam, bool regularized) {
  WeightSequence s;
  s.logM_ = std::move(logM);
  s.family_ = fam;
  s.regularized_ = regularized;
  return s;
}

WeightSequence make_gevrey(double alpha, std::size_t n_terms) {
  require_positive(alpha, "alpha");
  require_terms(n_terms);
  std::vector<double> logM(n_terms, 0.0);
  for (std::size_t p = 1; p < n_terms; ++p) logM[p] = logM[p - 1] + alpha * std::log(static_cast<double>(p));
  return with_family(std::move(logM), Family{FamilyKind::Gevrey, alpha, 0.0, 0.0}, false);
}

WeightSequence make_mab(double alpha, double beta, std::size_t n_terms) {
  require_positive(alpha, "alpha");
  if (!std::isfinite(beta)) fail(ErrorKind::InvalidParameter, "beta must be finite");
  require_terms(n_terms);
  std::vector<double> logm(n_terms - 1);
  bool lc = true;
  for (std::size_t p = 0; p + 1 < n_terms; ++p) {
    logm[p] = mab_log_quotient(alpha, beta, p);
    if (p > 0 && logm[p] < logm[p - 1]) lc = false;
  }
  std::vector<double> logM = cumsum_from_zero(logm);
  if (!lc) logM = convex_minorant(logM);
  return with_family(std::move(logM), Family{FamilyKind::MAB, alpha, beta, 0.0}, !lc);
}

WeightSequence make_qpow(double q, std::size_t n_terms) {
  if (!(q > 1.0) || !std::isfinite(q)) fail(ErrorKind::InvalidParameter, "q must be > 1");
  require_terms(n_terms);
  std::vector<double> logM(n_terms);
  double lq = std::log(q);
  for (std::size_t p = 0; p < n_terms; ++p) logM[p] = static_cast<double>(p) * static_cast<double>(p) * lq;
  return with_family(std::move(logM), Family{FamilyKind::QPow, 0.0, 0.0, q}, false);
}

WeightSequence from_log_table(std::vector<double> values) {
  if (values.size() < 2) fail(ErrorKind::InvalidParameter, "a sequence needs at least 2 terms");
  if (!(std::fabs(values[0]) <= 1e-12))
    fail(ErrorKind::Normalization, "first value must be log M_0 = 0");
  for (double v : values)
    if (!std::isfinite(v)) fail(ErrorKind::InvalidParameter, "log table contains a non-finite value");
  values[0] = 0.0;
  return with_family(std::move(values), Family{}, false);
}

WeightSequence from_log_quotients(const std::vector<double>& logm) {
  if (logm.empty()) fail(ErrorKind::InvalidParameter, "need at least one quotient");
  return from_log_table(cumsum_from_zero(logm));
}

WeightSequence hat(const WeightSequence& seq) { return shift(seq, 1.0); }

WeightSequence check(const WeightSequence& seq) { return shift(seq, -1.0); }

WeightSequence power(const WeightSequence& seq, double s) {
  require_positive(s, "power exponent");
  std::vector<double> logM = seq.logM();
  for (double& v : logM) v *= s;
  Family f = seq.family();
  switch (f.kind) {
  case FamilyKind::Gevrey: f.alpha *= s; break;
  case FamilyKind::MAB: f.alpha *= s; f.beta *= s; break;
  case FamilyKind::QPow: f.q = std::pow(f.q, s); break;
  case FamilyKind::Custom: break;
  }
  return with_family(std::move(logM), f, seq.regularized());
}

WeightSequence shift(const WeightSequence& seq, double s) {
  if (!std::isfinite(s)) fail(ErrorKind::InvalidParameter, "shift must be finite");
  std::vector<double> logM = seq.logM();
  std::vector<double> lf = log_factorials(logM.size());
  for (std::size_t p = 0; p < logM.size(); ++p) logM[p] += s * lf[p];
  Family f = seq.family();
  if (f.kind == FamilyKind::Gevrey || f.kind == FamilyKind::MAB) {
    f.alpha += s;
    if (!(f.alpha > 0.0)) f = Family{};
  } else {
    f = Family{};
  }
  return with_family(std::move(logM), f, f.builtin() && seq.regularized());
}

WeightSequence interpolate(const WeightSequence& seq, int r) {
  if (r < 1) fail(ErrorKind::InvalidParameter, "interpolation factor must be >= 1");
  if (r == 1) return seq;
  const auto& M = seq.logM();
  std::size_t n = M.size();
  std::size_t ru = static_cast<std::size_t>(r);
  std::vector<double> P((n - 1) * ru + 1);
  for (std::size_t k = 0; k + 1 < n; ++k)
    for (std::size_t j = 0; j < ru; ++j)
      P[k * ru + j] = j == 0 ? M[k] : (static_cast<double>(ru - j) * M[k] + static_cast<double>(j) * M[k + 1]) / r;
  P.back() = M.back();
  return with_family(std::move(P), Family{}, false);
}

std::vector<double> convex_minorant(const std::vector<double>& values) {
  std::size_t n = values.size();
  if (n < 3) return values;
  // lower hull by monotone chain; x coordinates are already sorted
  std::vector<std::size_t> hull;
  for (std::size_t i = 0; i < n; ++i) {
    while (hull.size() >= 2) {
      std::size_t a = hull[hull.size() - 2], b = hull.back();
      double cross = (static_cast<double>(b) - a) * (values[i] - values[a]) -
                     (values[b] - values[a]) * (static_cast<double>(i) - a);
      if (cross <= 0.0) hull.pop_back();
      else break;
    }
    hull.push_back(i);
  }
  std::vector<double> out(n);
  for (std::size_t h = 0; h + 1 < hull.size(); ++h) {
    std::size_t a = hull[h], b = hull[h + 1];
    out[a] = values[a];
    double slope = (values[b] - values[a]) / static_cast<double>(b - a);
    for (std::size_t i = a + 1; i < b; ++i) out[i] = values[a] + slope * static_cast<double>(i - a);
  }
  out[hull.back()] = values[hull.back()];
  return out;
}

Equivalence equivalent(const WeightSequence& a, const WeightSequence& b) {
  if (a.size() != b.size()) fail(ErrorKind::InvalidParameter, "sequences must share the same prefix length");
  std::size_t n = a.size();
  Equivalence eq;
  eq.prefix = n;
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  double lo_half = lo, hi_half = hi;
  std::size_t half = std::max<std::size_t>(1, n / 2);
  for (std::size_t p = 1; p < n; ++p) {
    double e = (b.logM()[p] - a.logM()[p]) / static_cast<double>(p);
    lo = std::min(lo, e);
    hi = std::max(hi, e);
    if (p == half) { lo_half = lo; hi_half = hi; }
  }
  double change = std::max(hi - hi_half, lo_half - lo);
  if (std::isfinite(lo) && std::isfinite(hi) && change < 1e-6) {
    eq.bounded = true;
    eq.L = std::exp(lo);
    eq.H = std::exp(hi);
    eq.diagnostic = "running extremes stable over the last half of the prefix";
  } else {
    eq.trend = change;
    std::ostringstream os;
    os << "unbounded trend: running extremes of e_p moved by " << change << " over the last half";
    eq.diagnostic = os.str();
  }
  return eq;
}

} // namespace wseq
