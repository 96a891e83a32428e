#include "wseq/indices.hpp"

#include "wseq/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>

namespace wseq {

namespace {

constexpr double kFitRmsTol = 1e-3;
// Residuals this large are oscillation, not noise: the regression slope stops tracking the liminf.
constexpr double kOscillationRms = 0.05;
constexpr double kStableLog = 0.00995033085316809; // log 1.01
constexpr double kBisectTol = 1e-3;
constexpr double kBracketCap = 1024.0;
constexpr int kFitSamples = 97;

double log_add(double a, double b) {
  double hi = std::max(a, b);
  if (!std::isfinite(hi)) return hi;
  return hi + std::log(std::exp(a - hi) + std::exp(b - hi));
}

std::vector<std::size_t> geometric_samples(std::size_t lo, std::size_t hi) {
  std::vector<std::size_t> ps;
  double a = std::log(static_cast<double>(lo)), b = std::log(static_cast<double>(hi));
  for (int i = 0; i < kFitSamples; ++i) {
    auto p = static_cast<std::size_t>(std::llround(std::exp(a + (b - a) * i / (kFitSamples - 1))));
    p = std::clamp(p, lo, hi);
    if (ps.empty() || ps.back() != p) ps.push_back(p);
  }
  return ps;
}

IndexEstimate closed_form(double value, bool infinite, std::size_t prefix, const char* note) {
  IndexEstimate e;
  e.method = IndexMethod::ClosedForm;
  e.value = infinite ? 0.0 : value;
  e.infinite = infinite;
  e.prefix = prefix;
  e.note = note;
  return e;
}

void require_terms(const WeightSequence& seq) {
  if (seq.size() < kMinIndexTerms)
    fail(ErrorKind::InsufficientData, "index estimation needs at least " + std::to_string(kMinIndexTerms) + " terms");
}

// Prefix lengths (in quotients) for the diagnostics, smallest first.
std::vector<std::size_t> diagnostic_prefixes(std::size_t len, std::initializer_list<std::size_t> divisors) {
  std::vector<std::size_t> out;
  for (std::size_t d : divisors)
    if (len / d + 1 >= kMinIndexTerms) out.push_back(len / d);
  return out;
}

// Removes a fitted b log log(p+1) term so that the remaining growth is a pure power.
std::vector<double> detrend(const std::vector<double>& logm, std::size_t len) {
  std::vector<double> out(logm.begin(), logm.begin() + static_cast<std::ptrdiff_t>(len));
  GrowthFit fit = fit_log_growth(logm, len);
  if (!fit.corrected) return out;
  for (std::size_t p = 0; p < len; ++p)
    out[p] -= fit.log_coeff * std::log(std::log(static_cast<double>(std::max(p, fit.window_lo)) + 1.0));
  return out;
}

struct Sup {
  bool infinite = false;
  double value = 0.0;
};

// Largest x with good(x), assuming good is downward closed.
Sup bisect_sup(const std::function<bool(double)>& good) {
  double lo = 0.0, hi = 1.0;
  while (good(hi)) {
    if (hi >= kBracketCap) return {true, 0.0};
    lo = hi;
    hi *= 2.0;
  }
  while (hi - lo > kBisectTol) {
    double mid = 0.5 * (lo + hi);
    if (good(mid)) lo = mid;
    else hi = mid;
  }
  return {false, lo};
}

double ai_estimate(const std::vector<double>& logm, std::size_t len, bool& infinite) {
  std::vector<double> lm = detrend(logm, len);
  std::vector<double> lp(len);
  for (std::size_t p = 0; p < len; ++p) lp[p] = std::log(static_cast<double>(p) + 1.0);
  std::size_t p0 = len / 16, quarter = len / 4;
  // m_p/(p+1)^g is almost increasing on the tail when its worst drawdown stops growing
  auto stable = [&](double g) {
    double run = -INFINITY, dd = 0.0, dd_quarter = 0.0;
    for (std::size_t p = p0; p < len; ++p) {
      double h = lm[p] - g * lp[p];
      run = std::max(run, h);
      dd = std::max(dd, run - h);
      if (p == quarter) dd_quarter = dd;
    }
    return dd - dd_quarter <= kStableLog;
  };
  Sup s = bisect_sup(stable);
  infinite = s.infinite;
  return s.value;
}

double gamma_beta_estimate(const std::vector<double>& logm, std::size_t len, bool& infinite) {
  std::vector<double> lm = detrend(logm, len);
  std::vector<double> x(len), suf(len);
  auto log_A = [&](double b, std::size_t n) {
    for (std::size_t q = 0; q < n; ++q) x[q] = -lm[q] / b;
    double s = -(x[n - 1] - x[n / 2]) / (std::log(static_cast<double>(n)) - std::log(static_cast<double>(n / 2) + 1.0));
    if (!(s > 1.0)) return HUGE_VAL;
    double acc = x[n - 1] + std::log(static_cast<double>(n)) - std::log(s - 1.0);
    for (std::size_t q = n; q-- > 0;) {
      acc = log_add(acc, x[q]);
      suf[q] = acc;
    }
    double best = -INFINITY;
    for (std::size_t p = 0; p <= n / 2; ++p)
      best = std::max(best, lm[p] / b - std::log(static_cast<double>(p) + 1.0) + suf[p]);
    return best;
  };
  auto stable = [&](double b) {
    double a4 = log_A(b, len / 4), a2 = log_A(b, len / 2), a1 = log_A(b, len);
    if (!std::isfinite(a4) || !std::isfinite(a2) || !std::isfinite(a1)) return false;
    return std::max({a4, a2, a1}) - std::min({a4, a2, a1}) <= kStableLog;
  };
  Sup s = bisect_sup(stable);
  infinite = s.infinite;
  return s.value;
}

IndexEstimate gamma_numeric(const WeightSequence& seq, IndexMethod method,
                            double (*estimate)(const std::vector<double>&, std::size_t, bool&)) {
  require_terms(seq);
  auto logm = seq.log_quotients();
  IndexEstimate e;
  e.method = method;
  e.prefix = seq.size();
  bool inf = false;
  for (std::size_t len : diagnostic_prefixes(logm.size(), {4, 2, 1})) {
    double v = estimate(logm, len, inf);
    e.diagnostics.push_back(inf ? INFINITY : v);
  }
  e.infinite = inf;
  e.value = inf ? 0.0 : e.diagnostics.back();
  if (inf) e.note = "stable for every tested exponent up to the bracketing cap";
  return e;
}

} // namespace

const char* to_string(IndexMethod m) {
  switch (m) {
  case IndexMethod::LiminfDirect: return "liminf_direct";
  case IndexMethod::TailRegression: return "tail_regression";
  case IndexMethod::ExponentOfConvergence: return "exponent_of_convergence";
  case IndexMethod::AlmostIncreasingBisection: return "almost_increasing_bisection";
  case IndexMethod::GammaBetaBisection: return "gamma_beta_bisection";
  case IndexMethod::ClosedForm: return "closed_form";
  }
  return "?";
}

double IndexEstimate::spread() const {
  if (diagnostics.size() < 2) return 0.0;
  return std::fabs(diagnostics.back() - diagnostics[diagnostics.size() - 2]);
}

GrowthFit fit_log_growth(const std::vector<double>& y, std::size_t len) {
  GrowthFit fit;
  fit.window_lo = std::max<std::size_t>(2, len / 64);
  auto ps = geometric_samples(fit.window_lo, len - 1);
  auto rows = static_cast<Eigen::Index>(ps.size());
  Eigen::MatrixXd A(rows, 3);
  Eigen::VectorXd b(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    double t = std::log(static_cast<double>(ps[i]) + 1.0);
    A(i, 0) = t;
    A(i, 1) = std::log(t);
    A(i, 2) = 1.0;
    b(i) = y[ps[i]];
  }
  Eigen::VectorXd c3 = A.colPivHouseholderQr().solve(b);
  double rms3 = std::sqrt((A * c3 - b).squaredNorm() / static_cast<double>(rows));
  if (rms3 <= kFitRmsTol) {
    fit.slope = c3(0);
    fit.log_coeff = c3(1);
    fit.rms = rms3;
    fit.corrected = true;
    return fit;
  }
  Eigen::MatrixXd A2(rows, 2);
  A2.col(0) = A.col(0);
  A2.col(1) = A.col(2);
  Eigen::VectorXd c2 = A2.colPivHouseholderQr().solve(b);
  fit.slope = c2(0);
  fit.rms = std::sqrt((A2 * c2 - b).squaredNorm() / static_cast<double>(rows));
  return fit;
}

IndexEstimate omega(const WeightSequence& seq, IndexMode mode) {
  const Family& f = seq.family();
  if (mode == IndexMode::Auto) {
    if (f.kind == FamilyKind::Gevrey || f.kind == FamilyKind::MAB)
      return closed_form(f.alpha, false, seq.size(), "omega(M_alpha,beta) = alpha");
    if (f.kind == FamilyKind::QPow) return closed_form(0.0, true, seq.size(), "quotients grow faster than any power");
  }
  require_terms(seq);
  auto logm = seq.log_quotients();
  IndexEstimate e;
  e.method = IndexMethod::TailRegression;
  e.prefix = seq.size();
  auto prefixes = diagnostic_prefixes(logm.size(), {8, 4, 2, 1});
  std::vector<GrowthFit> fits;
  bool oscillating = false;
  for (std::size_t len : prefixes) {
    fits.push_back(fit_log_growth(logm, len));
    e.diagnostics.push_back(std::max(0.0, fits.back().slope));
    oscillating = oscillating || (!fits.back().corrected && fits.back().rms > kOscillationRms);
  }
  const auto& d = e.diagnostics;
  bool geometric = d.size() >= 3 && d.back() > 64.0;
  for (std::size_t i = 1; geometric && i < d.size(); ++i) geometric = d[i] >= 1.5 * d[i - 1];
  if (geometric) {
    e.infinite = true;
    e.note = "slope estimates grow geometrically with the prefix";
    return e;
  }
  if (oscillating) {
    for (std::size_t i = 0; i < prefixes.size(); ++i) {
      double lo = INFINITY;
      for (std::size_t p : geometric_samples(fits[i].window_lo, prefixes[i] - 1))
        lo = std::min(lo, (logm[p] - logm[0]) / std::log(static_cast<double>(p) + 1.0));
      e.diagnostics[i] = std::max(0.0, lo);
    }
    e.method = IndexMethod::LiminfDirect;
    e.note = "oscillating tail: direct liminf of log m_p / log(p+1)";
  } else {
    e.note = fits.back().corrected ? "log-corrected tail fit" : "power-law tail fit";
  }
  e.value = d.back();
  return e;
}

IndexEstimate exponent_of_convergence(const std::vector<double>& c) {
  if (c.size() < kMinIndexTerms) fail(ErrorKind::InsufficientData, "exponent of convergence needs at least 64 terms");
  std::vector<double> logc(c.size());
  for (std::size_t p = 0; p < c.size(); ++p) {
    if (!(c[p] > 0.0)) fail(ErrorKind::InvalidParameter, "terms must be positive");
    if (p > 0 && c[p] < c[p - 1]) fail(ErrorKind::InvalidParameter, "terms must be nondecreasing");
    logc[p] = std::log(c[p]);
  }
  IndexEstimate e;
  e.method = IndexMethod::ExponentOfConvergence;
  e.prefix = c.size();
  for (std::size_t len : diagnostic_prefixes(c.size() - 1, {8, 4, 2, 1})) {
    double k = fit_log_growth(logc, len + 1).slope;
    e.diagnostics.push_back(k > 0.0 ? 1.0 / k : INFINITY);
  }
  if (!std::isfinite(e.diagnostics.back())) {
    e.infinite = true;
    e.note = "terms do not grow";
  } else {
    e.value = e.diagnostics.back();
  }
  return e;
}

IndexEstimate gamma_almost_increasing(const WeightSequence& seq, IndexMode mode) {
  const Family& f = seq.family();
  if (mode == IndexMode::Auto) {
    if (f.kind == FamilyKind::Gevrey || f.kind == FamilyKind::MAB)
      return closed_form(f.alpha, false, seq.size(), "gamma(M_alpha,beta) = alpha");
    if (f.kind == FamilyKind::QPow) return closed_form(0.0, true, seq.size(), "quotients grow faster than any power");
  }
  return gamma_numeric(seq, IndexMethod::AlmostIncreasingBisection, ai_estimate);
}

IndexEstimate gamma_via_gamma_beta(const WeightSequence& seq, IndexMode mode) {
  const Family& f = seq.family();
  if (mode == IndexMode::Auto) {
    if (f.kind == FamilyKind::Gevrey || f.kind == FamilyKind::MAB)
      return closed_form(f.alpha, false, seq.size(), "gamma(M_alpha,beta) = alpha");
    if (f.kind == FamilyKind::QPow) return closed_form(0.0, true, seq.size(), "quotients grow faster than any power");
  }
  return gamma_numeric(seq, IndexMethod::GammaBetaBisection, gamma_beta_estimate);
}

} // namespace wseq
