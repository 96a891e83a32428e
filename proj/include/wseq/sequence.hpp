#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace wseq {

enum class FamilyKind { Gevrey, MAB, QPow, Custom };

struct Family {
  FamilyKind kind = FamilyKind::Custom;
  double alpha = 0.0; // Gevrey, MAB
  double beta = 0.0;  // MAB
  double q = 0.0;     // QPow

  bool builtin() const { return kind != FamilyKind::Custom; }
  std::string describe() const;
};

// A sequence (M_p) stored as log M_p, with M_0 = 1.
class WeightSequence {
public:
  const std::vector<double>& logM() const { return logM_; }
  std::size_t size() const { return logM_.size(); }

  // log m_p = log M_{p+1} - log M_p, for p < size()-1.
  double log_quotient(std::size_t p) const { return logM_[p + 1] - logM_[p]; }
  std::vector<double> log_quotients() const;

  const Family& family() const { return family_; }
  bool regularized() const { return regularized_; }

  // Closed-form log m_p valid for every p; only for unmodified built-in families.
  bool has_quotient_rule() const { return family_.builtin() && !regularized_; }
  std::optional<double> rule_log_quotient(std::size_t p) const;

  friend WeightSequence make_gevrey(double alpha, std::size_t n_terms);
  friend WeightSequence make_mab(double alpha, double beta, std::size_t n_terms);
  friend WeightSequence make_qpow(double q, std::size_t n_terms);
  friend WeightSequence from_log_table(std::vector<double> values);
  friend WeightSequence with_family(std::vector<double> logM, Family fam, bool regularized);

private:
  std::vector<double> logM_;
  Family family_;
  bool regularized_ = false;
};

WeightSequence make_gevrey(double alpha, std::size_t n_terms);
WeightSequence make_mab(double alpha, double beta, std::size_t n_terms);
WeightSequence make_qpow(double q, std::size_t n_terms);
WeightSequence from_log_table(std::vector<double> values);
WeightSequence from_log_quotients(const std::vector<double>& logm);

WeightSequence hat(const WeightSequence& seq);
WeightSequence check(const WeightSequence& seq);
WeightSequence power(const WeightSequence& seq, double s);
WeightSequence shift(const WeightSequence& seq, double s);
WeightSequence interpolate(const WeightSequence& seq, int r);

// Greatest convex minorant of p -> values[p].
std::vector<double> convex_minorant(const std::vector<double>& values);

struct Equivalence {
  bool bounded = false; // Yes(L, H) when true
  double L = 0.0;
  double H = 0.0;
  std::size_t prefix = 0;
  double trend = 0.0; // growth of max|e_p| over the last half when unbounded
  std::string diagnostic;
};

Equivalence equivalent(const WeightSequence& a, const WeightSequence& b);

} // namespace wseq
