#pragma once

#include "wseq/assoc.hpp"
#include "wseq/sequence.hpp"

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace wseq {

enum class ProximateKind { Constant, AlphaBeta, PowerTail, LogTail };

// Constant(rho), AlphaBeta(alpha, beta), PowerTail(rho, gamma): rho + t^-gamma,
// LogTail(rho, gamma): rho + log(t)^-gamma.
class ProximateOrderSpec {
public:
  static ProximateOrderSpec constant(double rho);
  static ProximateOrderSpec alpha_beta(double alpha, double beta);
  static ProximateOrderSpec power_tail(double rho, double gamma);
  static ProximateOrderSpec log_tail(double rho, double gamma);
  // "constant:<rho>", "alphabeta:<a>,<b>", "powertail:<rho>,<g>", "logtail:<rho>,<g>"
  static ProximateOrderSpec parse(const std::string& text);

  ProximateKind kind() const { return kind_; }
  double limit() const;
  double rho(double t) const;
  double rho_prime(double t) const;
  // Smallest modulus from which V is evaluated; V is increasing on [R0, inf).
  double R0() const { return r0_; }
  // V(z) at z = r e^{i theta}, r >= R0, |theta| < pi.
  std::complex<double> V(double r, double theta) const;
  // Sector values of V are only approximately analytic for the tail families.
  bool heuristic() const { return kind_ == ProximateKind::PowerTail || kind_ == ProximateKind::LogTail; }
  std::string describe() const;

private:
  ProximateOrderSpec(ProximateKind kind, double a, double b);

  ProximateKind kind_;
  double a_;
  double b_;
  double r0_ = 0.0;
};

std::vector<double> log_grid(double lo, double hi, std::size_t points);

struct ProximateCheck {
  bool pass = false;
  bool nonnegative = false;
  bool limit_ok = false;
  bool derivative_ok = false;
  double limit_gap = 0.0;  // |rho(t) - limit| at the end of the grid
  double decay_term = 0.0; // |t rho'(t) log t| at the end of the grid
  std::string diagnostics;
};

ProximateCheck check_proximate_order(const ProximateOrderSpec& spec, const std::vector<double>& grid);

struct Admissibility {
  bool pass = false;
  double C = 0.0; // min of log t (d_M(t) - rho(t)) over the grid
  double D = 0.0; // max
  double trend = 0.0; // slope of the same quantity in log t over the last decade
};

Admissibility admissibility(const WeightSequence& seq, const ProximateOrderSpec& spec, const std::vector<double>& grid);

// Default grid for admissibility: log-spaced from e^2 to just below the omega_M range end.
std::vector<double> admissibility_grid(const WeightSequence& seq, std::size_t points = 400);

struct RealPartBound {
  bool pass = false;
  double b = 0.0;  // min of Re V(z) / V(|z|) over the grid
  double R0 = 0.0;
  bool stabilized = false;
};

RealPartBound check_real_part_bound(const ProximateOrderSpec& spec, double opening, std::size_t n_mod,
                                    std::size_t n_arg);

// z -> log|G(z)|, G(z) = exp(-V(1/z)), for 0 < |z| <= 1/R0.
class FlatFunction {
public:
  FlatFunction(const WeightSequence& seq, ProximateOrderSpec spec);
  double log_abs(double r, double theta) const;
  double max_modulus() const;

private:
  ProximateOrderSpec spec_;
};

struct Sector {
  double opening = 0.0; // fraction of pi
  double radius = 0.0;
};

struct FlatWitness {
  bool pass = false;
  double c1 = 0.0;
  double c2 = 0.0;
  Sector sector;
  std::size_t n_mod = 0;
  std::size_t n_arg = 0;
  double sup_ratio = 0.0; // max over the grid of |G(z)| / (c1 h_M(c2|z|))
  bool low_confidence = false;
  std::string note;
};

struct FlatRow {
  double modulus;
  double argument;
  double log_G;
  double log_bound; // log c1 + log h_M(c2 |z|)
};

FlatWitness certify_flatness(const WeightSequence& seq, const ProximateOrderSpec& spec, Sector sector,
                             std::size_t n_mod, std::size_t n_arg);

std::vector<FlatRow> flat_rows(const WeightSequence& seq, const ProximateOrderSpec& spec, const FlatWitness& w);

} // namespace wseq
