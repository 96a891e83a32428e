#include "wseq/proximate.hpp"

#include "wseq/error.hpp"
#include "wseq/indices.hpp"
#include "wseq/seqspec.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace wseq {

namespace {

constexpr double kE2 = 7.38905609893065; // e^2
constexpr double kRealPartMaxModulus = 1e6;

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) fail(ErrorKind::InvalidParameter, std::string(what) + " must be finite");
}

void require_nonnegative(double x, const char* what) {
  if (!(x >= 0.0) || !std::isfinite(x)) fail(ErrorKind::InvalidParameter, std::string(what) + " must be >= 0");
}

void require_positive(double x, const char* what) {
  if (!(x > 0.0) || !std::isfinite(x)) fail(ErrorKind::InvalidParameter, std::string(what) + " must be positive");
}

// First index of the last decade of an increasing grid.
std::size_t last_decade_start(const std::vector<double>& grid) {
  double cut = grid.back() / 10.0;
  auto it = std::lower_bound(grid.begin(), grid.end(), cut);
  return static_cast<std::size_t>(it - grid.begin());
}

// Nonincreasing over [from, end) and either small at the end or below its starting value.
bool decays(const std::vector<double>& q, std::size_t from) {
  for (std::size_t i = from + 1; i < q.size(); ++i)
    if (q[i] > q[i - 1] * (1.0 + 1e-12) + 1e-300) return false;
  return q.back() < 1e-2 || q.back() < q[from];
}

double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double n = static_cast<double>(x.size()), mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) { mx += x[i]; my += y[i]; }
  mx /= n; my /= n;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxx > 0 ? sxy / sxx : 0.0;
}

std::vector<double> uniform(double lo, double hi, std::size_t n) {
  if (n == 1) return {0.5 * (lo + hi)};
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  return out;
}

} // namespace

std::vector<double> log_grid(double lo, double hi, std::size_t points) {
  if (!(lo > 0.0) || !(hi > lo) || points < 2) fail(ErrorKind::InvalidParameter, "log grid needs 0 < lo < hi and 2+ points");
  std::vector<double> out(points);
  double a = std::log(lo), b = std::log(hi);
  for (std::size_t i = 0; i < points; ++i)
    out[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(points - 1));
  out.front() = lo;
  out.back() = hi;
  return out;
}

ProximateOrderSpec::ProximateOrderSpec(ProximateKind kind, double a, double b) : kind_(kind), a_(a), b_(b) {
  switch (kind_) {
  case ProximateKind::Constant: r0_ = 0.0; break;
  case ProximateKind::AlphaBeta: r0_ = std::exp(std::max(std::fabs(b_), std::fabs(b_) / a_) + 1.0); break;
  case ProximateKind::PowerTail:
  case ProximateKind::LogTail: {
    // scan for the last place where rho(t) log t fails to increase
    auto grid = log_grid(kE2, 1e12, 2000);
    r0_ = kE2;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      double t = grid[i];
      if (rho_prime(t) * std::log(t) + rho(t) / t <= 0.0 && i + 1 < grid.size()) r0_ = grid[i + 1];
    }
    break;
  }
  }
}

ProximateOrderSpec ProximateOrderSpec::constant(double rho) {
  require_nonnegative(rho, "rho");
  return ProximateOrderSpec(ProximateKind::Constant, rho, 0.0);
}

ProximateOrderSpec ProximateOrderSpec::alpha_beta(double alpha, double beta) {
  require_positive(alpha, "alpha");
  require_finite(beta, "beta");
  return ProximateOrderSpec(ProximateKind::AlphaBeta, alpha, beta);
}

ProximateOrderSpec ProximateOrderSpec::power_tail(double rho, double gamma) {
  require_nonnegative(rho, "rho");
  require_positive(gamma, "gamma");
  return ProximateOrderSpec(ProximateKind::PowerTail, rho, gamma);
}

ProximateOrderSpec ProximateOrderSpec::log_tail(double rho, double gamma) {
  require_nonnegative(rho, "rho");
  require_positive(gamma, "gamma");
  return ProximateOrderSpec(ProximateKind::LogTail, rho, gamma);
}

ProximateOrderSpec ProximateOrderSpec::parse(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos) fail(ErrorKind::InvalidParameter, "proximate order needs '<kind>:<args>': " + text);
  std::string kind = text.substr(0, colon);
  auto args = split(text.substr(colon + 1), ',');
  auto want = [&](std::size_t n) {
    if (args.size() != n) fail(ErrorKind::InvalidParameter, kind + " takes " + std::to_string(n) + " argument(s)");
  };
  if (kind == "constant") { want(1); return constant(parse_number(args[0])); }
  if (kind == "alphabeta") { want(2); return alpha_beta(parse_number(args[0]), parse_number(args[1])); }
  if (kind == "powertail") { want(2); return power_tail(parse_number(args[0]), parse_number(args[1])); }
  if (kind == "logtail") { want(2); return log_tail(parse_number(args[0]), parse_number(args[1])); }
  fail(ErrorKind::InvalidParameter, "unknown proximate order kind: " + kind);
}

double ProximateOrderSpec::limit() const { return kind_ == ProximateKind::AlphaBeta ? 1.0 / a_ : a_; }

double ProximateOrderSpec::rho(double t) const {
  switch (kind_) {
  case ProximateKind::Constant: return a_;
  case ProximateKind::AlphaBeta: {
    double L = std::log(t);
    return 1.0 / a_ - (b_ / a_) * std::log(L) / L;
  }
  case ProximateKind::PowerTail: return a_ + std::pow(t, -b_);
  case ProximateKind::LogTail: return a_ + std::pow(std::log(t), -b_);
  }
  return 0.0;
}

double ProximateOrderSpec::rho_prime(double t) const {
  switch (kind_) {
  case ProximateKind::Constant: return 0.0;
  case ProximateKind::AlphaBeta: {
    double L = std::log(t);
    return -(b_ / a_) * (1.0 - std::log(L)) / (t * L * L);
  }
  case ProximateKind::PowerTail: return -b_ * std::pow(t, -b_ - 1.0);
  case ProximateKind::LogTail: return -b_ * std::pow(std::log(t), -b_ - 1.0) / t;
  }
  return 0.0;
}

std::complex<double> ProximateOrderSpec::V(double r, double theta) const {
  if (!(r > 0.0) || r < r0_) {
    std::ostringstream os;
    os << "V needs modulus >= " << r0_;
    fail(ErrorKind::Domain, os.str());
  }
  if (!(std::fabs(theta) < M_PI)) fail(ErrorKind::Domain, "V needs |argument| < pi");
  std::complex<double> logz(std::log(r), theta);
  switch (kind_) {
  case ProximateKind::Constant: return std::exp(a_ * logz);
  case ProximateKind::AlphaBeta: return std::exp(logz / a_ - (b_ / a_) * std::log(logz));
  case ProximateKind::PowerTail:
  case ProximateKind::LogTail: return std::exp(rho(r) * logz);
  }
  return {};
}

std::string ProximateOrderSpec::describe() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind_) {
  case ProximateKind::Constant: os << "constant:" << a_; break;
  case ProximateKind::AlphaBeta: os << "alphabeta:" << a_ << "," << b_; break;
  case ProximateKind::PowerTail: os << "powertail:" << a_ << "," << b_; break;
  case ProximateKind::LogTail: os << "logtail:" << a_ << "," << b_; break;
  }
  return os.str();
}

ProximateCheck check_proximate_order(const ProximateOrderSpec& spec, const std::vector<double>& grid) {
  if (grid.size() < 10) fail(ErrorKind::InvalidParameter, "proximate order grid needs at least 10 points");
  if (!(grid.front() > kE2)) fail(ErrorKind::InvalidParameter, "proximate order grid must start above e^2");
  if (!(grid.back() >= 10.0 * grid.front())) fail(ErrorKind::InvalidParameter, "proximate order grid must span a decade");
  ProximateCheck c;
  std::vector<double> gap(grid.size()), term(grid.size());
  c.nonnegative = true;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double t = grid[i], r = spec.rho(t);
    c.nonnegative = c.nonnegative && r >= 0.0;
    gap[i] = std::fabs(r - spec.limit());
    term[i] = std::fabs(t * spec.rho_prime(t) * std::log(t));
  }
  std::size_t from = last_decade_start(grid);
  c.limit_ok = decays(gap, from);
  c.derivative_ok = decays(term, from);
  c.limit_gap = gap.back();
  c.decay_term = term.back();
  c.pass = c.nonnegative && c.limit_ok && c.derivative_ok;
  std::ostringstream os;
  os << "rho>=0: " << (c.nonnegative ? "yes" : "no") << "; |rho-limit| " << (c.limit_ok ? "decays" : "does not decay")
     << " (last " << c.limit_gap << "); |t rho' log t| " << (c.derivative_ok ? "decays" : "does not decay")
     << " (last " << c.decay_term << ")";
  c.diagnostics = os.str();
  return c;
}

Admissibility admissibility(const WeightSequence& seq, const ProximateOrderSpec& spec, const std::vector<double>& grid) {
  if (grid.size() < 10 || !(grid.back() >= 10.0 * grid.front()))
    fail(ErrorKind::InvalidParameter, "admissibility grid must have 10+ points and span a decade");
  AssocEvaluator ev(seq);
  std::size_t from = std::max<std::size_t>(1, last_decade_start(grid));
  Admissibility a;
  double lo_before = INFINITY, hi_before = -INFINITY, lo = INFINITY, hi = -INFINITY;
  std::vector<double> x, y;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double t = grid[i];
    double g = std::log(t) * (ev.d_M(t) - spec.rho(t));
    lo = std::min(lo, g);
    hi = std::max(hi, g);
    if (i < from) {
      lo_before = lo;
      hi_before = hi;
    } else {
      x.push_back(std::log(t));
      y.push_back(g);
    }
  }
  a.C = lo;
  a.D = hi;
  a.trend = x.size() >= 2 ? ls_slope(x, y) : 0.0;
  a.pass = lo_before - lo <= 0.05 && hi - hi_before <= 0.05;
  return a;
}

std::vector<double> admissibility_grid(const WeightSequence& seq, std::size_t points) {
  double lo = std::max(kE2 * 1.01, 1.5 * std::exp(seq.log_quotient(0)));
  double hi = 0.99 * std::exp(seq.log_quotient(seq.size() - 2));
  if (!(hi > 10.0 * lo)) fail(ErrorKind::InsufficientData, "prefix too short to cover a decade of omega_M");
  return log_grid(lo, hi, points);
}

RealPartBound check_real_part_bound(const ProximateOrderSpec& spec, double opening, std::size_t n_mod,
                                    std::size_t n_arg) {
  double rho = spec.limit();
  if (!(rho > 0.0)) fail(ErrorKind::InvalidParameter, "real-part bound needs a nonzero proximate order");
  if (!(opening > 0.0) || !(opening < 1.0 / rho)) fail(ErrorKind::InvalidParameter, "opening must lie in (0, 1/rho)");
  if (n_mod < 2 || n_arg < 2) fail(ErrorKind::InvalidParameter, "real-part grid needs at least 2x2 points");
  RealPartBound out;
  out.R0 = spec.R0();
  double rmin = std::max(out.R0, 1.0);
  if (!(rmin < kRealPartMaxModulus)) fail(ErrorKind::InvalidParameter, "R0 exceeds the sweep range");
  auto moduli = log_grid(rmin, kRealPartMaxModulus, n_mod);
  auto angles = uniform(-opening * M_PI / 2, opening * M_PI / 2, n_arg);
  double b = INFINITY, b_half = INFINITY, b_quarter = INFINITY;
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    double vr = spec.V(moduli[i], 0.0).real();
    for (double th : angles) {
      double ratio = spec.V(moduli[i], th).real() / vr;
      b = std::min(b, ratio);
      if (2 * i >= moduli.size()) b_half = std::min(b_half, ratio);
      if (4 * i >= 3 * moduli.size()) b_quarter = std::min(b_quarter, ratio);
    }
  }
  out.b = b;
  out.stabilized = std::fabs(b_quarter - b_half) <= 1e-2;
  out.pass = b > 0.0 && out.stabilized;
  return out;
}

FlatFunction::FlatFunction(const WeightSequence&, ProximateOrderSpec spec) : spec_(std::move(spec)) {}

double FlatFunction::max_modulus() const {
  return spec_.R0() > 0.0 ? 1.0 / spec_.R0() : std::numeric_limits<double>::infinity();
}

double FlatFunction::log_abs(double r, double theta) const {
  if (!(r > 0.0) || r > max_modulus()) fail(ErrorKind::Domain, "flat function evaluated outside 0 < |z| <= 1/R0");
  return -spec_.V(1.0 / r, -theta).real();
}

namespace {

struct Grid {
  std::vector<double> moduli, angles;
};

Grid flat_grid(Sector sector, std::size_t n_mod, std::size_t n_arg) {
  Grid g;
  g.moduli = n_mod == 1 ? std::vector<double>{sector.radius} : log_grid(sector.radius * 1e-3, sector.radius, n_mod);
  g.angles = uniform(-sector.opening * M_PI / 2, sector.opening * M_PI / 2, n_arg);
  return g;
}

} // namespace

FlatWitness certify_flatness(const WeightSequence& seq, const ProximateOrderSpec& spec, Sector sector,
                             std::size_t n_mod, std::size_t n_arg) {
  require_positive(sector.opening, "sector opening");
  require_positive(sector.radius, "sector radius");
  if (n_mod < 1 || n_arg < 1) fail(ErrorKind::InvalidParameter, "grid must be nonempty");
  IndexEstimate w = omega(seq, IndexMode::Auto);
  if (!w.infinite && !(sector.opening < w.value))
    fail(ErrorKind::InvalidParameter, "sector opening must be below omega(M)");
  FlatFunction G(seq, spec);
  if (sector.radius > G.max_modulus()) fail(ErrorKind::Domain, "sector radius exceeds 1/R0 of the proximate order");

  AssocEvaluator ev(seq);
  Grid grid = flat_grid(sector, n_mod, n_arg);
  std::vector<double> logG;
  for (double r : grid.moduli)
    for (double th : grid.angles) logG.push_back(G.log_abs(r, th));

  FlatWitness best;
  best.sector = sector;
  best.n_mod = n_mod;
  best.n_arg = n_arg;
  best.low_confidence = n_mod * n_arg <= 1;
  double best_s = INFINITY, any_s = INFINITY, any_c2 = 0.0;
  bool covered = false, feasible = false;
  for (int k = -8; k <= 8; ++k) {
    double c2 = std::ldexp(1.0, k);
    if (!(1.0 / (c2 * grid.moduli.front()) < ev.omega_limit())) continue;
    covered = true;
    double s = -INFINITY;
    std::size_t argmax_ring = 0;
    for (std::size_t i = 0; i < grid.moduli.size(); ++i) {
      double om = ev.omega_M(1.0 / (c2 * grid.moduli[i]));
      for (std::size_t j = 0; j < grid.angles.size(); ++j) {
        double v = logG[i * grid.angles.size() + j] + om;
        if (v > s) { s = v; argmax_ring = i; }
      }
    }
    if (s < any_s) { any_s = s; any_c2 = c2; }
    // a maximum on the innermost ring means the bound degrades toward the vertex
    bool ok = std::isfinite(s) && (argmax_ring > 0 || grid.moduli.size() == 1);
    if (ok && s < best_s) {
      best_s = s;
      best.c2 = c2;
      feasible = true;
    }
  }
  if (!covered)
    fail(ErrorKind::InsufficientData, "omega_M range exhausted on this grid; use a longer prefix");
  if (!feasible) {
    best_s = any_s;
    best.c2 = any_c2;
    best.note = "bound grows toward the vertex for every c2";
  }
  best.c1 = std::exp(best_s);
  double sup = -INFINITY;
  for (std::size_t i = 0; i < grid.moduli.size(); ++i) {
    double om = ev.omega_M(1.0 / (best.c2 * grid.moduli[i]));
    for (std::size_t j = 0; j < grid.angles.size(); ++j)
      sup = std::max(sup, logG[i * grid.angles.size() + j] - best_s + om);
  }
  best.sup_ratio = std::exp(sup);
  best.pass = feasible && std::isfinite(best_s) && best.c1 > 0.0 && best.sup_ratio <= 1.0 + 1e-12;
  if (best.low_confidence) best.note = best.note.empty() ? "single-point grid" : best.note + "; single-point grid";
  return best;
}

std::vector<FlatRow> flat_rows(const WeightSequence& seq, const ProximateOrderSpec& spec, const FlatWitness& w) {
  FlatFunction G(seq, spec);
  AssocEvaluator ev(seq);
  Grid grid = flat_grid(w.sector, w.n_mod, w.n_arg);
  std::vector<FlatRow> rows;
  for (double r : grid.moduli)
    for (double th : grid.angles)
      rows.push_back({r, th, G.log_abs(r, th), std::log(w.c1) - ev.omega_M(1.0 / (w.c2 * r))});
  return rows;
}

} // namespace wseq
