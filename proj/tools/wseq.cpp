// Command-line front end: analyze, classify, eval, flat, table, props, indices.

#include "wseq/assoc.hpp"
#include "wseq/classify.hpp"
#include "wseq/error.hpp"
#include "wseq/indices.hpp"
#include "wseq/properties.hpp"
#include "wseq/proximate.hpp"
#include "wseq/report.hpp"
#include "wseq/seqspec.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

using namespace wseq;

namespace {

struct Config {
  std::string seq;
  std::size_t terms = 10000;
  std::string format = "json";
  std::string fn;
  std::string at;
  std::string range;
  std::optional<double> opening;
  double radius = 0.1;
  std::string grid = "64x64";
  std::string po;
  std::string out;
  double alpha = 0.0;
  std::string betas;
  bool betas_given = false;
  bool numeric = false;
};

int exit_code(ErrorKind k) {
  switch (k) {
  case ErrorKind::InsufficientData: return 3;
  case ErrorKind::Internal: return 1;
  default: return 2;
  }
}

Format parse_format(const std::string& f) {
  if (f == "json") return Format::Json;
  if (f == "csv") return Format::Csv;
  if (f == "text") return Format::Text;
  fail(ErrorKind::InvalidParameter, "unknown format: " + f);
}

void emit(const Config& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.out);
  if (!f) fail(ErrorKind::InvalidParameter, "cannot write " + cfg.out);
  f << text;
}

WeightSequence load(const Config& cfg) {
  if (cfg.seq.empty()) fail(ErrorKind::InvalidParameter, "--seq is required");
  if (cfg.terms < kMinIndexTerms) fail(ErrorKind::InvalidParameter, "--terms must be at least 64");
  WeightSequence s = parse_sequence_spec(cfg.seq, cfg.terms);
  if (s.size() < kMinIndexTerms)
    fail(ErrorKind::InsufficientData, "sequence has " + std::to_string(s.size()) + " terms; at least 64 are needed");
  return s;
}

// 17 significant digits, keeping a visible decimal point on integral values.
std::string render_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s = buf;
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

int cmd_analyze(const Config& cfg, bool intervals_only) {
  WeightSequence seq = load(cfg);
  ClassifyOptions opts;
  if (!cfg.po.empty()) opts.proximate_order = ProximateOrderSpec::parse(cfg.po);
  ClassificationReport r = full_classification(seq, opts);
  Format f = parse_format(cfg.format);
  if (f == Format::Text) emit(cfg, render_text(r, cfg.seq));
  else if (f == Format::Csv) emit(cfg, render_csv(r));
  else {
    Json j = to_json(r, cfg.seq);
    if (intervals_only) {
      Json k;
      k["sequence"] = j["sequence"];
      k["injectivity"] = j["injectivity"];
      k["surjectivity"] = j["surjectivity"];
      k["citations"] = j["citations"];
      j = k;
    }
    emit(cfg, j.dump(2) + "\n");
  }
  return 0;
}

int cmd_props(const Config& cfg) {
  WeightSequence seq = load(cfg);
  Json j;
  j["sequence"] = cfg.seq;
  j["properties"] = to_json(full_report(seq));
  emit(cfg, j.dump(2) + "\n");
  return 0;
}

int cmd_indices(const Config& cfg) {
  WeightSequence seq = load(cfg);
  IndexMode mode = cfg.numeric ? IndexMode::Numeric : IndexMode::Auto;
  Json j;
  j["sequence"] = cfg.seq;
  j["omega"] = to_json(omega(seq, mode));
  j["gamma"] = to_json(gamma_almost_increasing(seq, mode));
  j["gamma_beta"] = to_json(gamma_via_gamma_beta(seq, mode));
  emit(cfg, j.dump(2) + "\n");
  return 0;
}

int cmd_eval(const Config& cfg) {
  WeightSequence seq = load(cfg);
  AssocEvaluator ev(seq);
  if (cfg.fn != "hM" && cfg.fn != "omegaM" && cfg.fn != "dM")
    fail(ErrorKind::InvalidParameter, "--fn must be hM, omegaM or dM");
  std::vector<std::pair<std::string, double>> points;
  if (!cfg.at.empty()) {
    for (const auto& tok : split(cfg.at, ',')) points.emplace_back(tok, parse_number(tok));
  } else if (!cfg.range.empty()) {
    auto parts = split(cfg.range, ':');
    if (parts.size() != 3) fail(ErrorKind::InvalidParameter, "--range needs lo:hi:points");
    double lo = parse_number(parts[0]), hi = parse_number(parts[1]);
    double n = parse_number(parts[2]);
    if (!(n >= 2) || n != std::floor(n)) fail(ErrorKind::InvalidParameter, "--range needs an integer point count >= 2");
    for (double t : log_grid(lo, hi, static_cast<std::size_t>(n))) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.17g", t);
      points.emplace_back(buf, t);
    }
  } else {
    fail(ErrorKind::InvalidParameter, "eval needs --at or --range");
  }
  std::string out = "t,value\n";
  bool any = false;
  for (const auto& [tok, t] : points) {
    try {
      if (!(t > 0.0)) fail(ErrorKind::Range, "t must be positive");
      double v = cfg.fn == "omegaM" ? ev.omega_M(t) : cfg.fn == "hM" ? std::exp(ev.log_h_M(t)) : ev.d_M(t);
      out += tok + "," + render_value(v) + "\n";
      any = true;
    } catch (const Error& e) {
      out += tok + (e.kind() == ErrorKind::Domain ? ",ERR:domain\n" : ",ERR:range\n");
    }
  }
  emit(cfg, out);
  return any ? 0 : 3;
}

int cmd_flat(const Config& cfg) {
  WeightSequence seq = load(cfg);
  const Family& f = seq.family();
  std::optional<ProximateOrderSpec> po;
  if (!cfg.po.empty()) po = ProximateOrderSpec::parse(cfg.po);
  else if (f.kind == FamilyKind::Gevrey) po = ProximateOrderSpec::constant(1.0 / f.alpha);
  else if (f.kind == FamilyKind::MAB) po = ProximateOrderSpec::alpha_beta(f.alpha, f.beta);
  else fail(ErrorKind::InvalidParameter, "--po is required for this sequence");
  auto x = cfg.grid.find('x');
  if (x == std::string::npos) fail(ErrorKind::InvalidParameter, "--grid needs <n>x<m>");
  double nm = parse_number(cfg.grid.substr(0, x)), na = parse_number(cfg.grid.substr(x + 1));
  if (!(nm >= 1 && na >= 1) || nm != std::floor(nm) || na != std::floor(na))
    fail(ErrorKind::InvalidParameter, "--grid needs positive integers");
  double opening;
  if (cfg.opening) {
    opening = *cfg.opening;
  } else {
    IndexEstimate w = omega(seq);
    if (w.infinite) fail(ErrorKind::InvalidParameter, "--sector-opening is required when omega is infinite");
    opening = 0.9 * w.value;
  }
  FlatWitness w = certify_flatness(seq, *po, Sector{opening, cfg.radius}, static_cast<std::size_t>(nm),
                                   static_cast<std::size_t>(na));
  if (parse_format(cfg.format) == Format::Csv) {
    std::string out = "modulus,argument,log_G,log_bound\n";
    char buf[160];
    for (const FlatRow& r : flat_rows(seq, *po, w)) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", r.modulus, r.argument, r.log_G, r.log_bound);
      out += buf;
    }
    emit(cfg, out);
  } else {
    Json j;
    j["sequence"] = cfg.seq;
    j["proximate_order"] = po->describe();
    j["witness"] = to_json(w);
    emit(cfg, j.dump(2) + "\n");
  }
  return w.pass ? 0 : 1;
}

int cmd_table(const Config& cfg) {
  if (!cfg.betas_given) fail(ErrorKind::InvalidParameter, "--betas is required");
  std::vector<double> betas;
  if (!cfg.betas.empty())
    for (const auto& tok : split(cfg.betas, ',')) betas.push_back(parse_number(tok));
  Format f = parse_format(cfg.format);
  emit(cfg, render_table(mab_table(cfg.alpha, betas), f));
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weight sequence analysis: growth indices, associated functions and Borel map intervals"};
  app.require_subcommand(1);
  Config cfg;

  auto seq_opts = [&](CLI::App* c) {
    c->add_option("--seq", cfg.seq, "gevrey:<a> | mab:<a>,<b> | qpow:<q> | file:<path> | quot:<path>");
    c->add_option("--terms", cfg.terms, "prefix length (default 10000)");
    c->add_option("--out", cfg.out, "write output to a file");
  };
  auto fmt_opt = [&](CLI::App* c) { c->add_option("--format", cfg.format, "json | csv | text"); };

  CLI::App* analyze = app.add_subcommand("analyze", "full classification report");
  seq_opts(analyze);
  fmt_opt(analyze);
  analyze->add_option("--po", cfg.po, "proximate order to test for admissibility");

  CLI::App* classify = app.add_subcommand("classify", "injectivity and surjectivity intervals only");
  seq_opts(classify);
  fmt_opt(classify);
  classify->add_option("--po", cfg.po, "proximate order to test for admissibility");

  CLI::App* eval = app.add_subcommand("eval", "evaluate h_M, omega_M or d_M as CSV");
  seq_opts(eval);
  eval->add_option("--fn", cfg.fn, "hM | omegaM | dM")->required();
  eval->add_option("--at", cfg.at, "comma separated t values");
  eval->add_option("--range", cfg.range, "lo:hi:points, log spaced");

  CLI::App* flat = app.add_subcommand("flat", "certify a flat function on a sector");
  seq_opts(flat);
  fmt_opt(flat);
  flat->add_option("--po", cfg.po, "constant:<rho> | alphabeta:<a>,<b> | powertail:<rho>,<g> | logtail:<rho>,<g>");
  flat->add_option("--sector-opening", cfg.opening, "opening as a fraction of pi");
  flat->add_option("--radius", cfg.radius, "sector radius");
  flat->add_option("--grid", cfg.grid, "<moduli>x<arguments>");

  CLI::App* table = app.add_subcommand("table", "interval table for M_{alpha,beta}");
  table->add_option("--family", cfg.fn, "only mab is supported")->check(CLI::IsMember({"mab"}));
  table->add_option("--alpha", cfg.alpha, "alpha > 0")->required();
  table->add_option("--betas", cfg.betas, "comma separated betas");
  table->add_option("--out", cfg.out, "write output to a file");

  CLI::App* props = app.add_subcommand("props", "property report");
  seq_opts(props);

  CLI::App* indices = app.add_subcommand("indices", "growth index estimates");
  seq_opts(indices);
  indices->add_flag("--numeric", cfg.numeric, "estimate even when a closed form is known");

  std::string table_format = "text";
  table->add_option("--format", table_format, "json | csv | text");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*analyze) return cmd_analyze(cfg, false);
    if (*classify) return cmd_analyze(cfg, true);
    if (*eval) return cmd_eval(cfg);
    if (*flat) return cmd_flat(cfg);
    if (*table) {
      cfg.format = table_format;
      cfg.betas_given = table->count("--betas") > 0;
      return cmd_table(cfg);
    }
    if (*props) return cmd_props(cfg);
    if (*indices) return cmd_indices(cfg);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
