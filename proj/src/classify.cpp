#include "wseq/classify.hpp"

#include "wseq/error.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace wseq {

namespace {

bool is_integer(double x) { return std::fabs(x - std::round(x)) <= 1e-12 * std::max(1.0, std::fabs(x)); }

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

// Smaller of two superset bounds of the form (0,b) / (0,b]; ties keep the open one.
IntervalVerdict tighter(const IntervalVerdict& a, const IntervalVerdict& b) {
  if (a.bound < b.bound) return a;
  if (b.bound < a.bound) return b;
  return a.endpoint == Endpoint::Open ? a : b;
}

void merge_citations(IntervalVerdict& into, const IntervalVerdict& from) {
  for (const auto& c : from.citations)
    if (std::find(into.citations.begin(), into.citations.end(), c) == into.citations.end()) into.citations.push_back(c);
}

ClassificationInputs gather(const WeightSequence& seq, const ClassifyOptions& opts) {
  PropertyVerdict lc = check_lc(seq);
  if (lc.status == Status::FailsAt)
    fail(ErrorKind::InvalidParameter,
         "classification needs a log-convex sequence (quotients decrease at p=" + std::to_string(*lc.index) + ")");
  ClassificationInputs in;
  in.properties = full_report(seq);
  if (!seq.family().builtin() && quotients_bounded(seq)) {
    in.degenerate = true;
    return in;
  }
  in.omega = omega(seq, opts.mode);
  in.gamma = gamma_almost_increasing(seq, opts.mode);
  in.gamma_check = gamma_via_gamma_beta(seq, opts.mode);
  if (!in.omega.infinite && !in.gamma.infinite && in.gamma.value > in.omega.value) {
    in.gamma.note += (in.gamma.note.empty() ? "" : "; ") + std::string("capped at the omega estimate");
    in.gamma.value = in.omega.value;
  }
  if (in.omega.infinite != in.gamma.infinite && in.gamma.infinite) {
    in.gamma.infinite = false;
    in.gamma.value = in.omega.value;
    in.gamma.note = "capped at the omega estimate";
  }
  if (!in.omega.infinite && in.omega.value >= kIndexTolerance) {
    SeriesPair sp = series_at(seq, in.omega.value);
    in.mu_at_omega = sp.mu;
    in.sigma_at_omega = sp.sigma;
  }
  if (in.gamma.method == IndexMethod::ClosedForm && !in.gamma.infinite) in.gamma_rational = is_small_rational(in.gamma.value);

  const Family& f = seq.family();
  if (f.kind == FamilyKind::Gevrey || f.kind == FamilyKind::MAB) {
    in.admits_proximate_order = true;
    in.admissibility_source = "family proximate order " +
                              (f.kind == FamilyKind::Gevrey ? ProximateOrderSpec::constant(1.0 / f.alpha).describe()
                                                            : ProximateOrderSpec::alpha_beta(f.alpha, f.beta).describe());
  }
  if (opts.proximate_order && !in.admits_proximate_order) {
    const ProximateOrderSpec& po = *opts.proximate_order;
    std::vector<double> grid = admissibility_grid(seq);
    ProximateCheck pc = check_proximate_order(po, grid);
    Admissibility adm = admissibility(seq, po, grid);
    in.admits_proximate_order = po.limit() > 0.0 && pc.pass && adm.pass && in.properties.weight.holds();
    in.admissibility_source = "numeric check of " + po.describe() + (in.admits_proximate_order ? " passed" : " failed");
  }
  return in;
}

struct Injectivity {
  IntervalVerdict A, Au, Atilde;
};

Injectivity injectivity(const ClassificationInputs& in) {
  Injectivity r;
  if (in.degenerate) {
    r.A = r.Au = r.Atilde = IntervalVerdict::all(true).cite("degenerate-sequence");
    return r;
  }
  if (in.omega.infinite) {
    r.A = r.Au = r.Atilde = IntervalVerdict::empty().cite("infinite-omega");
    return r;
  }
  double w = in.omega.value;
  if (w < kIndexTolerance) {
    r.A = r.Au = r.Atilde = IntervalVerdict::all(true).cite("zero-omega");
    return r;
  }
  auto endpoint = [](const std::optional<SeriesVerdict>& v) {
    if (!v) return Endpoint::Unknown;
    switch (v->verdict) {
    case Convergence::Diverges: return Endpoint::Closed;
    case Convergence::Converges: return Endpoint::Open;
    case Convergence::Inconclusive: break;
    }
    return Endpoint::Unknown;
  };
  r.Atilde = IntervalVerdict::from(w, Endpoint::Open, BoundSource::OmegaIndex)
                 .cite("watson-lemma")
                 .cite("flat-function-construction");
  r.Au = IntervalVerdict::from(w, endpoint(in.mu_at_omega), BoundSource::OmegaIndex)
             .cite("watson-lemma")
             .cite("mu-series-criterion");
  r.A = IntervalVerdict::from(w, endpoint(in.sigma_at_omega), BoundSource::OmegaIndex)
            .cite("watson-lemma")
            .cite("sigma-series-criterion");
  return r;
}

struct Surjectivity {
  IntervalVerdict S, Su, Stilde;
};

Surjectivity surjectivity(const ClassificationInputs& in, const ClassifyOptions& opts) {
  Surjectivity r;
  const PropertyReport& pr = in.properties;
  if (in.degenerate) {
    r.S = r.Su = r.Stilde = IntervalVerdict::empty().cite("degenerate-sequence");
    return r;
  }
  if (pr.snq.fails() || (!in.gamma.infinite && in.gamma.value < kIndexTolerance)) {
    r.S = r.Su = r.Stilde = IntervalVerdict::empty().cite("snq-needed-for-surjectivity");
    return r;
  }
  if (in.gamma.infinite) {
    IntervalVerdict v = IntervalVerdict::all(false).cite("floor-gamma-bound");
    v.note = "no relevant information: gamma is infinite";
    r.S = r.Su = r.Stilde = v;
    return r;
  }

  double g = in.gamma.value;
  bool exact = in.gamma.method == IndexMethod::ClosedForm;
  // For estimates the bound must hold for every gamma within the tolerance.
  double g_hi = exact ? g : g + kIndexTolerance;
  bool g_int = exact && is_integer(g);

  IntervalVerdict by_omega;
  bool have_omega = !in.omega.infinite;
  if (have_omega)
    by_omega = IntervalVerdict::upto(in.omega.value, Endpoint::Closed, BoundSource::OmegaIndex, false)
                   .cite("gamma-le-omega");

  IntervalVerdict generic = g_int ? IntervalVerdict::upto(g + 1.0, Endpoint::Open, BoundSource::FloorGammaPlusOne, false)
                                  : IntervalVerdict::upto(std::floor(g_hi) + 1.0, Endpoint::Closed,
                                                          BoundSource::FloorGammaPlusOne, false);
  generic.cite("floor-gamma-bound");
  if (have_omega) generic = tighter(generic, by_omega);
  r.Stilde = generic;

  IntervalVerdict uniform = generic;
  if (pr.dc.holds()) {
    IntervalVerdict dcb = g_int ? IntervalVerdict::upto(g, Endpoint::Open, BoundSource::GammaIndex, false)
                                : IntervalVerdict::upto(std::floor(g_hi) + 1.0, Endpoint::Open,
                                                        BoundSource::FloorGammaPlusOne, false);
    dcb.cite("dc-floor-gamma-bound");
    uniform = have_omega ? tighter(dcb, by_omega) : dcb;
  }
  r.S = r.Su = uniform;

  if (!pr.strongly_regular.holds()) return r;

  // (0,gamma) is surjective and nothing beyond gamma is
  r.S = r.Su = r.Stilde =
      IntervalVerdict::upto(g, Endpoint::Unknown, BoundSource::GammaIndex, true).cite("strongly-regular-gamma");
  if (opts.use_rationality && in.gamma_rational.value_or(false)) {
    r.S.endpoint = r.Su.endpoint = Endpoint::Open;
    r.S.cite("rational-gamma");
    r.Su.cite("rational-gamma");
  }

  if (in.admits_proximate_order) {
    // admissibility forces gamma = omega
    double w = in.omega.value;
    for (IntervalVerdict* v : {&r.S, &r.Su, &r.Stilde}) {
      v->bound = w;
      v->bound_source = BoundSource::OmegaIndex;
    }
    r.Stilde.endpoint = Endpoint::Closed;
    r.Stilde.cite("proximate-order-closed");
    bool mu_div = in.mu_at_omega && in.mu_at_omega->verdict == Convergence::Diverges;
    bool sigma_div = in.sigma_at_omega && in.sigma_at_omega->verdict == Convergence::Diverges;
    if (mu_div) {
      r.S.endpoint = r.Su.endpoint = Endpoint::Open;
      r.S.cite("proximate-order-series");
      r.Su.cite("proximate-order-series");
    } else if (sigma_div) {
      r.S.endpoint = Endpoint::Open;
      r.S.cite("proximate-order-series");
    }
  }
  return r;
}

// Applies "never bijective": a surjectivity interval cannot reach into the injectivity one.
void separate(IntervalVerdict& inj, IntervalVerdict& surj, const char* name, std::vector<std::string>& coupled) {
  if (surj.kind == IntervalKind::Empty || inj.kind == IntervalKind::Empty) return;
  if (inj.kind == IntervalKind::All) {
    if (surj.subset_proven) fail(ErrorKind::Internal, std::string(name) + ": injective everywhere yet surjective somewhere");
    surj = IntervalVerdict::empty().cite("never-bijective");
    return;
  }
  if (surj.kind == IntervalKind::All) {
    if (surj.subset_proven) fail(ErrorKind::Internal, std::string(name) + ": surjective everywhere yet injective somewhere");
    surj = IntervalVerdict::upto(inj.bound, inj.endpoint == Endpoint::Closed ? Endpoint::Open : Endpoint::Closed,
                                 BoundSource::OmegaIndex, false)
               .cite("never-bijective");
    return;
  }
  if (surj.bound > inj.bound) {
    surj.bound = inj.bound;
    surj.bound_source = BoundSource::OmegaIndex;
    if (inj.endpoint == Endpoint::Closed) surj.endpoint = Endpoint::Open;
    else surj.endpoint = surj.subset_proven ? Endpoint::Unknown : Endpoint::Closed;
    surj.note = "bound capped at the injectivity endpoint";
    surj.cite("never-bijective");
  }
  if (surj.bound < inj.bound) return;
  if (inj.endpoint == Endpoint::Closed) {
    if (surj.endpoint == Endpoint::Closed && surj.subset_proven)
      fail(ErrorKind::Internal, std::string(name) + ": both intervals contain the shared endpoint " + fmt(inj.bound));
    if (surj.endpoint != Endpoint::Open) {
      surj.endpoint = Endpoint::Open;
      surj.cite("never-bijective");
    }
  } else if (surj.endpoint == Endpoint::Closed && surj.subset_proven) {
    if (inj.endpoint == Endpoint::Unknown) {
      inj.endpoint = Endpoint::Open;
      inj.cite("never-bijective");
    }
  } else if (inj.endpoint == Endpoint::Unknown && surj.endpoint == Endpoint::Unknown && surj.subset_proven) {
    coupled.push_back(name);
  }
}

// Can the interval contain its bound under some resolution?
bool may_contain_bound(const IntervalVerdict& v) { return v.endpoint != Endpoint::Open; }
bool must_contain_bound(const IntervalVerdict& v) { return v.endpoint == Endpoint::Closed; }

} // namespace

const char* to_string(IntervalKind k) {
  switch (k) {
  case IntervalKind::Empty: return "empty";
  case IntervalKind::All: return "all";
  case IntervalKind::UpTo: return "upto";
  case IntervalKind::From: return "from";
  }
  return "?";
}

const char* to_string(Endpoint e) {
  switch (e) {
  case Endpoint::Open: return "open";
  case Endpoint::Closed: return "closed";
  case Endpoint::Unknown: return "unknown";
  }
  return "?";
}

const char* to_string(BoundSource b) {
  switch (b) {
  case BoundSource::None: return "none";
  case BoundSource::OmegaIndex: return "omega_index";
  case BoundSource::GammaIndex: return "gamma_index";
  case BoundSource::FloorGammaPlusOne: return "floor_gamma_plus_one";
  }
  return "?";
}

IntervalVerdict IntervalVerdict::empty() {
  IntervalVerdict v;
  v.kind = IntervalKind::Empty;
  return v;
}

IntervalVerdict IntervalVerdict::all(bool proven) {
  IntervalVerdict v;
  v.kind = IntervalKind::All;
  v.subset_proven = proven;
  return v;
}

IntervalVerdict IntervalVerdict::from(double b, Endpoint e, BoundSource src) {
  IntervalVerdict v;
  v.kind = IntervalKind::From;
  v.bound = b;
  v.endpoint = e;
  v.bound_source = src;
  return v;
}

IntervalVerdict IntervalVerdict::upto(double b, Endpoint e, BoundSource src, bool proven) {
  IntervalVerdict v;
  v.kind = IntervalKind::UpTo;
  v.bound = b;
  v.endpoint = e;
  v.bound_source = src;
  v.subset_proven = proven;
  return v;
}

IntervalVerdict& IntervalVerdict::cite(const std::string& tag) {
  if (std::find(citations.begin(), citations.end(), tag) == citations.end()) citations.push_back(tag);
  return *this;
}

bool is_small_rational(double x) {
  if (!std::isfinite(x)) return false;
  for (int q = 1; q <= 64; ++q)
    if (std::fabs(x * q - std::round(x * q)) <= 1e-9 * q) return true;
  return false;
}

ClassificationReport full_classification(const WeightSequence& seq, const ClassifyOptions& opts) {
  ClassificationReport r;
  r.inputs = gather(seq, opts);
  Injectivity inj = injectivity(r.inputs);
  Surjectivity sur = surjectivity(r.inputs, opts);
  r.A = inj.A;
  r.Au = inj.Au;
  r.Atilde = inj.Atilde;
  r.S = sur.S;
  r.Su = sur.Su;
  r.Stilde = sur.Stilde;
  separate(r.A, r.S, "A_M/S_M", r.coupled);
  separate(r.Au, r.Su, "Au_M/Su_M", r.coupled);
  separate(r.Atilde, r.Stilde, "Atilde_M/Stilde_M", r.coupled);

  auto problems = invariant_violations(r);
  if (!problems.empty()) {
    std::string msg = "classification invariant violated:";
    for (const auto& p : problems) msg += " " + p + ";";
    fail(ErrorKind::Internal, msg);
  }

  IntervalVerdict all;
  for (const IntervalVerdict* v : {&r.A, &r.Au, &r.Atilde, &r.S, &r.Su, &r.Stilde}) merge_citations(all, *v);
  r.citations = all.citations;
  return r;
}

std::vector<std::string> invariant_violations(const ClassificationReport& r) {
  std::vector<std::string> out;
  auto coupled = [&](const std::string& name) {
    return std::find(r.coupled.begin(), r.coupled.end(), name) != r.coupled.end();
  };
  auto disjoint = [&](const IntervalVerdict& inj, const IntervalVerdict& surj, const std::string& name) {
    if (inj.kind == IntervalKind::Empty || surj.kind == IntervalKind::Empty || !surj.subset_proven) return;
    if (inj.kind == IntervalKind::All || surj.kind == IntervalKind::All) {
      out.push_back(name + ": overlapping intervals");
      return;
    }
    if (surj.bound > inj.bound) out.push_back(name + ": surjectivity bound exceeds injectivity bound");
    else if (surj.bound == inj.bound && may_contain_bound(surj) && may_contain_bound(inj) && !coupled(name))
      out.push_back(name + ": shared endpoint " + fmt(inj.bound) + " may lie in both");
  };
  disjoint(r.A, r.S, "A_M/S_M");
  disjoint(r.Au, r.Su, "Au_M/Su_M");
  disjoint(r.Atilde, r.Stilde, "Atilde_M/Stilde_M");

  // bigger must contain smaller
  auto contains_from = [&](const IntervalVerdict& big, const IntervalVerdict& small, const std::string& name) {
    if (small.kind == IntervalKind::Empty || big.kind == IntervalKind::All) return;
    if (big.kind == IntervalKind::Empty || small.kind == IntervalKind::All) {
      out.push_back(name + ": containment broken");
      return;
    }
    if (big.bound > small.bound ||
        (big.bound == small.bound && big.endpoint == Endpoint::Open && must_contain_bound(small)))
      out.push_back(name + ": containment broken");
  };
  contains_from(r.A, r.Au, "A_M>=Au_M");
  contains_from(r.Au, r.Atilde, "Au_M>=Atilde_M");

  auto contains_upto = [&](const IntervalVerdict& big, const IntervalVerdict& small, const std::string& name) {
    if (!small.subset_proven || !big.subset_proven) return;
    if (small.kind == IntervalKind::Empty || big.kind == IntervalKind::All) return;
    if (big.kind == IntervalKind::Empty || small.kind == IntervalKind::All) {
      out.push_back(name + ": containment broken");
      return;
    }
    if (big.bound < small.bound ||
        (big.bound == small.bound && big.endpoint == Endpoint::Open && must_contain_bound(small)))
      out.push_back(name + ": containment broken");
  };
  contains_upto(r.Su, r.S, "Su_M>=S_M");
  contains_upto(r.Stilde, r.Su, "Stilde_M>=Su_M");
  return out;
}

} // namespace wseq
