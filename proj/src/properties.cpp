#include "wseq/properties.hpp"

#include "wseq/series.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

namespace wseq {

namespace {

constexpr double kStableLog = 0.00995033085316809; // log 1.01
constexpr std::size_t kPairScanCap = 2048;

// Evaluates a log-witness on prefixes n/4, n/2, n and applies the 1% agreement rule.
PropertyVerdict stabilized_witness(std::size_t n, const std::function<double(std::size_t)>& log_witness) {
  double w4 = log_witness(std::max<std::size_t>(2, n / 4));
  double w2 = log_witness(std::max<std::size_t>(2, n / 2));
  double w1 = log_witness(n);
  PropertyVerdict v;
  v.status = Status::HoldsOnPrefix;
  v.witness = std::exp(w1);
  double hi = std::max({w4, w2, w1}), lo = std::min({w4, w2, w1});
  v.stabilized = std::isfinite(w1) && hi - lo <= kStableLog;
  if (!v.stabilized) v.note = "witness fails to stabilize across prefixes";
  return v;
}

constexpr std::size_t kMinWitnessTerms = 16;

PropertyVerdict too_short() {
  PropertyVerdict v;
  v.note = "prefix too short";
  return v;
}

PropertyVerdict analytic(bool yes, const PropertyVerdict& numeric, const char* why) {
  PropertyVerdict v = numeric;
  v.status = yes ? Status::AnalyticYes : Status::AnalyticNo;
  v.index.reset();
  v.note = why;
  return v;
}

PropertyVerdict implied(const PropertyVerdict& from, const PropertyVerdict& old, const char* why) {
  PropertyVerdict v = old;
  v.status = from.status == Status::AnalyticYes ? Status::AnalyticYes : Status::HoldsOnPrefix;
  v.stabilized = true;
  v.index.reset();
  v.note = why;
  return v;
}

} // namespace

const char* to_string(Status s) {
  switch (s) {
  case Status::HoldsOnPrefix: return "holds_on_prefix";
  case Status::FailsAt: return "fails_at";
  case Status::Fails: return "fails";
  case Status::Inconclusive: return "inconclusive";
  case Status::AnalyticYes: return "analytic_yes";
  case Status::AnalyticNo: return "analytic_no";
  }
  return "?";
}

bool PropertyVerdict::holds() const {
  return status == Status::AnalyticYes || (status == Status::HoldsOnPrefix && stabilized);
}

bool PropertyVerdict::fails() const {
  return status == Status::FailsAt || status == Status::Fails || status == Status::AnalyticNo ||
         (status == Status::HoldsOnPrefix && !stabilized);
}

PropertyVerdict check_lc(const WeightSequence& seq) {
  PropertyVerdict v;
  v.stabilized = true;
  const auto& M = seq.logM();
  for (std::size_t p = 1; p + 1 < seq.size(); ++p) {
    // rounding of differences of large log terms
    double scale = std::max({std::fabs(M[p - 1]), std::fabs(M[p]), std::fabs(M[p + 1])});
    double tol = 1e-12 + 8.0 * std::numeric_limits<double>::epsilon() * scale;
    if (seq.log_quotient(p) < seq.log_quotient(p - 1) - tol) {
      v.status = Status::FailsAt;
      v.index = p;
      v.note = "quotient sequence decreases";
      return v;
    }
  }
  v.status = Status::HoldsOnPrefix;
  return v;
}

PropertyVerdict check_dc(const WeightSequence& seq) {
  if (seq.size() < kMinWitnessTerms) return too_short();
  auto logm = seq.log_quotients();
  // running max of log m_p / (p+1), read at each prefix
  std::vector<double> run(logm.size());
  double mx = -INFINITY;
  for (std::size_t p = 0; p < logm.size(); ++p) {
    mx = std::max(mx, logm[p] / (static_cast<double>(p) + 1.0));
    run[p] = mx;
  }
  return stabilized_witness(seq.size(), [&](std::size_t n) { return run[n - 2]; });
}

PropertyVerdict check_mg(const WeightSequence& seq) {
  if (seq.size() < kMinWitnessTerms) return too_short();
  const auto& M = seq.logM();
  if (check_lc(seq).status == Status::HoldsOnPrefix) {
    std::vector<double> run(seq.size() - 1, -INFINITY);
    double mx = -INFINITY;
    for (std::size_t p = 1; p + 1 < seq.size(); ++p) {
      mx = std::max(mx, seq.log_quotient(p) - M[p] / static_cast<double>(p));
      run[p] = mx;
    }
    return stabilized_witness(seq.size(), [&](std::size_t n) { return run[std::max<std::size_t>(1, n - 2)]; });
  }
  // direct scan of M_{p+q} <= A^{p+q} M_p M_q
  std::size_t n = std::min(seq.size(), kPairScanCap);
  auto scan = [&](std::size_t len) {
    double mx = -INFINITY;
    for (std::size_t s = 2; s < len; ++s)
      for (std::size_t p = 1; p <= s / 2; ++p)
        mx = std::max(mx, (M[s] - M[p] - M[s - p]) / static_cast<double>(s));
    return mx;
  };
  PropertyVerdict v = stabilized_witness(n, scan);
  v.note = "pairwise scan on a capped prefix" + (v.note.empty() ? std::string() : "; " + v.note);
  return v;
}

PropertyVerdict check_nq(const WeightSequence& seq) {
  auto terms = seq.log_quotients();
  for (std::size_t k = 0; k < terms.size(); ++k) terms[k] = -terms[k] - std::log(static_cast<double>(k) + 1.0);
  SeriesVerdict s = classify_log_terms(terms);
  PropertyVerdict v;
  v.witness = s.partial_sum;
  v.note = s.detail;
  switch (s.verdict) {
  case Convergence::Converges: v.status = Status::HoldsOnPrefix; v.stabilized = true; break;
  case Convergence::Diverges: v.status = Status::Fails; break;
  case Convergence::Inconclusive: v.status = Status::Inconclusive; break;
  }
  return v;
}

PropertyVerdict check_snq(const WeightSequence& seq) {
  if (seq.size() < kMinWitnessTerms) return too_short();
  auto logm = seq.log_quotients();
  std::vector<double> x(logm.size());
  for (std::size_t q = 0; q < x.size(); ++q) x[q] = -std::log(static_cast<double>(q) + 1.0) - logm[q];

  // B_n = max_{p <= n/2} m_p * sum_{q >= p} 1/((q+1) m_q); the part of the sum
  // beyond the prefix is completed from the decay rate over the last octave.
  auto log_B = [&](std::size_t n) {
    std::size_t len = n - 1;
    std::size_t mid = len / 2;
    double s = -(x[len - 1] - x[mid]) / (std::log(static_cast<double>(len)) - std::log(static_cast<double>(mid) + 1.0));
    if (!(s > 1.0)) return HUGE_VAL;
    double rem = x[len - 1] + std::log(static_cast<double>(len)) - std::log(s - 1.0);
    double suffix = rem, best = -INFINITY;
    for (std::size_t q = len; q-- > 0;) {
      double hi = std::max(suffix, x[q]);
      suffix = hi + std::log(std::exp(suffix - hi) + std::exp(x[q] - hi));
      if (q <= mid) best = std::max(best, logm[q] + suffix);
    }
    return best;
  };
  return stabilized_witness(seq.size(), log_B);
}

bool quotients_bounded(const WeightSequence& seq) {
  std::size_t len = seq.size() - 1;
  return seq.log_quotient(len - 1) - seq.log_quotient(len / 4) <= 0.01;
}

PropertyVerdict check_weight(const WeightSequence& seq) {
  PropertyVerdict v = check_lc(seq);
  if (v.status != Status::HoldsOnPrefix) return v;
  if (quotients_bounded(seq)) {
    v.status = Status::Fails;
    v.note = "quotients do not grow on the prefix";
  }
  return v;
}

PropertyReport full_report(const WeightSequence& seq) {
  PropertyReport r;
  r.lc = check_lc(seq);
  r.dc = check_dc(seq);
  r.mg = check_mg(seq);
  r.nq = check_nq(seq);
  r.snq = check_snq(seq);
  r.weight = check_weight(seq);

  const Family& f = seq.family();
  if (f.kind == FamilyKind::Gevrey || f.kind == FamilyKind::MAB) {
    const char* why = "strongly regular family";
    r.lc = analytic(true, r.lc, why);
    r.dc = analytic(true, r.dc, why);
    r.mg = analytic(true, r.mg, why);
    r.nq = analytic(true, r.nq, why);
    r.snq = analytic(true, r.snq, why);
    r.weight = analytic(true, r.weight, why);
  } else if (f.kind == FamilyKind::QPow) {
    const char* why = "q^(p^2) is lc and snq but not mg";
    r.lc = analytic(true, r.lc, why);
    r.dc = analytic(true, r.dc, why);
    r.dc.witness = f.q * f.q;
    r.mg = analytic(false, r.mg, why);
    r.nq = analytic(true, r.nq, why);
    r.snq = analytic(true, r.snq, why);
    r.weight = analytic(true, r.weight, why);
  }

  if (r.mg.holds() && !r.dc.holds()) r.dc = implied(r.mg, r.dc, "implied by mg");
  if (r.snq.holds() && !r.nq.holds()) r.nq = implied(r.snq, r.nq, "implied by snq");

  PropertyVerdict& sr = r.strongly_regular;
  const PropertyVerdict* parts[] = {&r.lc, &r.mg, &r.snq};
  bool all_analytic = true, any_analytic_no = false, any_fail = false, all_hold = true;
  for (const auto* p : parts) {
    all_analytic = all_analytic && p->status == Status::AnalyticYes;
    any_analytic_no = any_analytic_no || p->status == Status::AnalyticNo;
    any_fail = any_fail || p->fails();
    all_hold = all_hold && p->holds();
  }
  sr.stabilized = all_hold;
  if (all_analytic) sr.status = Status::AnalyticYes;
  else if (any_analytic_no) sr.status = Status::AnalyticNo;
  else if (any_fail) sr.status = Status::Fails;
  else if (all_hold) sr.status = Status::HoldsOnPrefix;
  else sr.status = Status::Inconclusive;
  return r;
}

} // namespace wseq
