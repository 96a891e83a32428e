#include "wseq/series.hpp"

#include "wseq/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace wseq {

namespace {

constexpr double kDivergeBelow = 1.02;
constexpr double kConvergeAbove = 1.1;
constexpr std::size_t kMinLevels = 8;

double log_sum_exp(const double* x, std::size_t n) {
  double mx = -INFINITY;
  for (std::size_t i = 0; i < n; ++i) mx = std::max(mx, x[i]);
  if (!std::isfinite(mx)) return mx;
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += std::exp(x[i] - mx);
  return mx + std::log(s);
}

// Least-squares slope of y against x.
double slope(const std::vector<double>& x, const std::vector<double>& y) {
  double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) { mx += x[i]; my += y[i]; }
  mx /= n; my /= n;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

Convergence judge(double s_hat) {
  if (s_hat <= kDivergeBelow) return Convergence::Diverges;
  if (s_hat >= kConvergeAbove) return Convergence::Converges;
  return Convergence::Inconclusive;
}

// Relative to the critical series 1/(n log n): the terms look like
// 1/(n log^s n) when the dyadic-level values fall like -s log k.
double bertrand_exponent(const std::vector<double>& level_values, std::size_t first) {
  std::vector<double> x, y;
  for (std::size_t k = first; k < level_values.size(); ++k) {
    x.push_back(std::log(static_cast<double>(k)));
    y.push_back(level_values[k]);
  }
  return -slope(x, y);
}

SeriesVerdict closed_form(Convergence c, const std::string& detail) {
  SeriesVerdict v;
  v.verdict = c;
  v.method = SeriesMethod::ClosedFormRule;
  v.detail = detail;
  return v;
}

bool same_exponent(double a, double b) { return std::fabs(a - b) <= 1e-12 * std::max(1.0, std::fabs(a)); }

void require_gamma(double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) fail(ErrorKind::InvalidParameter, "series exponent must be positive and finite");
}

} // namespace

const char* to_string(Convergence c) {
  switch (c) {
  case Convergence::Diverges: return "diverges";
  case Convergence::Converges: return "converges";
  case Convergence::Inconclusive: return "inconclusive";
  }
  return "?";
}

const char* to_string(SeriesMethod m) {
  switch (m) {
  case SeriesMethod::ClosedFormRule: return "closed_form_rule";
  case SeriesMethod::Condensation: return "condensation";
  case SeriesMethod::PartialSumTrend: return "partial_sum_trend";
  }
  return "?";
}

SeriesVerdict classify_log_terms(const std::vector<double>& log_terms) {
  SeriesVerdict v;
  std::size_t n = log_terms.size();
  v.partial_sum = n ? std::exp(log_sum_exp(log_terms.data(), n)) : 0.0;

  // full dyadic blocks [2^k, 2^(k+1)) inside the prefix
  std::size_t levels = 0;
  while ((std::size_t{2} << levels) <= n) ++levels;
  if (levels < kMinLevels) {
    v.verdict = Convergence::Inconclusive;
    v.detail = "prefix too short for condensation";
    return v;
  }
  std::vector<double> condensed(levels), blocks(levels);
  for (std::size_t k = 0; k < levels; ++k) {
    std::size_t a = std::size_t{1} << k;
    condensed[k] = static_cast<double>(k) * M_LN2 + log_terms[a];
    blocks[k] = log_sum_exp(log_terms.data() + a, a);
  }
  std::size_t first = levels / 2;
  double s_cond = bertrand_exponent(condensed, first);
  double s_block = bertrand_exponent(blocks, first);
  Convergence c1 = judge(s_cond), c2 = judge(s_block);

  std::ostringstream os;
  os.precision(4);
  os << "condensed exponent " << s_cond << ", block exponent " << s_block << " over " << (levels - first)
     << " dyadic levels";
  v.detail = os.str();
  if (c1 == c2) {
    v.verdict = c1;
    v.method = SeriesMethod::Condensation;
  } else {
    v.verdict = Convergence::Inconclusive;
    v.method = SeriesMethod::PartialSumTrend;
    v.detail += "; estimators disagree";
  }
  return v;
}

SeriesVerdict mu_series(const WeightSequence& seq, double gamma) {
  require_gamma(gamma);
  const Family& f = seq.family();
  if (f.kind == FamilyKind::QPow) return closed_form(Convergence::Converges, "q^(2p+1) dominates every power");
  if (f.kind == FamilyKind::Gevrey || f.kind == FamilyKind::MAB) {
    double beta = f.kind == FamilyKind::MAB ? f.beta : 0.0;
    bool div = same_exponent(gamma, f.alpha) ? beta <= f.alpha : gamma > f.alpha;
    return closed_form(div ? Convergence::Diverges : Convergence::Converges,
                       "terms (p+1)^(-alpha/gamma) log^(-beta/gamma)");
  }
  auto logm = seq.log_quotients();
  for (double& x : logm) x = -x / gamma;
  return classify_log_terms(logm);
}

SeriesVerdict sigma_series(const WeightSequence& seq, double gamma) {
  require_gamma(gamma);
  const Family& f = seq.family();
  if (f.kind == FamilyKind::QPow) return closed_form(Convergence::Converges, "q^(2p+1) dominates every power");
  if (f.kind == FamilyKind::Gevrey || f.kind == FamilyKind::MAB) {
    double beta = f.kind == FamilyKind::MAB ? f.beta : 0.0;
    bool div = same_exponent(gamma, f.alpha) ? beta <= f.alpha + 1.0 : gamma > f.alpha;
    return closed_form(div ? Convergence::Diverges : Convergence::Converges,
                       "terms (p+1)^(-(alpha+1)/(gamma+1)) log^(-beta/(gamma+1))");
  }
  auto logm = seq.log_quotients();
  for (std::size_t p = 0; p < logm.size(); ++p)
    logm[p] = -(std::log(static_cast<double>(p) + 1.0) + logm[p]) / (gamma + 1.0);
  return classify_log_terms(logm);
}

SeriesPair series_at(const WeightSequence& seq, double gamma) {
  SeriesPair pair{mu_series(seq, gamma), sigma_series(seq, gamma)};
  if (pair.sigma.verdict == Convergence::Converges && pair.mu.verdict != Convergence::Converges) {
    if (pair.sigma.method == SeriesMethod::ClosedFormRule && pair.mu.method == SeriesMethod::ClosedFormRule)
      fail(ErrorKind::Internal, "closed-form series verdicts contradict: sigma converges but mu does not");
    for (SeriesVerdict* v : {&pair.mu, &pair.sigma}) {
      v->verdict = Convergence::Inconclusive;
      v->detail += "; downgraded: sigma converged while mu did not";
    }
  }
  return pair;
}

} // namespace wseq
