#include "wseq/report.hpp"

#include "wseq/error.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace wseq {

namespace {

Json number_or_inf(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return nullptr;
  return x;
}

Json optional_number(const std::optional<double>& x) { return x ? number_or_inf(*x) : Json(nullptr); }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

const char* kIntervalNames[] = {"A_M", "Au_M", "Atilde_M", "S_M", "Su_M", "Stilde_M"};

std::vector<const IntervalVerdict*> six(const ClassificationReport& r) {
  return {&r.A, &r.Au, &r.Atilde, &r.S, &r.Su, &r.Stilde};
}

} // namespace

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, x);
    if (std::strtod(buf, nullptr) == x) break;
  }
  return buf;
}

Json to_json(const PropertyVerdict& v) {
  Json j;
  j["status"] = to_string(v.status);
  j["index"] = v.index ? Json(*v.index) : Json(nullptr);
  j["witness"] = optional_number(v.witness);
  j["stabilized"] = v.stabilized;
  j["note"] = v.note;
  return j;
}

Json to_json(const PropertyReport& r) {
  Json j;
  j["lc"] = to_json(r.lc);
  j["dc"] = to_json(r.dc);
  j["mg"] = to_json(r.mg);
  j["nq"] = to_json(r.nq);
  j["snq"] = to_json(r.snq);
  j["weight_sequence"] = to_json(r.weight);
  j["strongly_regular"] = to_json(r.strongly_regular);
  return j;
}

Json to_json(const IndexEstimate& e) {
  Json j;
  j["value"] = e.infinite ? Json("inf") : number_or_inf(e.value);
  j["method"] = to_string(e.method);
  j["prefix"] = e.prefix;
  Json d = Json::array();
  for (double x : e.diagnostics) d.push_back(number_or_inf(x));
  j["diagnostics"] = d;
  j["note"] = e.note;
  return j;
}

Json to_json(const SeriesVerdict& v) {
  Json j;
  j["verdict"] = to_string(v.verdict);
  j["method"] = to_string(v.method);
  j["partial_sum"] = v.method == SeriesMethod::ClosedFormRule ? Json(nullptr) : number_or_inf(v.partial_sum);
  j["detail"] = v.detail;
  return j;
}

Json to_json(const IntervalVerdict& v) {
  Json j;
  j["kind"] = to_string(v.kind);
  bool bounded = v.kind == IntervalKind::UpTo || v.kind == IntervalKind::From;
  j["bound"] = bounded ? number_or_inf(v.bound) : (v.kind == IntervalKind::All ? Json("inf") : Json(nullptr));
  j["endpoint"] = bounded ? Json(to_string(v.endpoint)) : Json(nullptr);
  j["subset_proven"] = v.subset_proven;
  j["bound_source"] = to_string(v.bound_source);
  j["citations"] = v.citations;
  j["rendered"] = render_interval(v);
  if (!v.note.empty()) j["note"] = v.note;
  return j;
}

Json to_json(const FlatWitness& w) {
  Json j;
  j["pass"] = w.pass;
  j["c1"] = number_or_inf(w.c1);
  j["c2"] = number_or_inf(w.c2);
  j["sector"] = Json{{"opening", w.sector.opening}, {"radius", w.sector.radius}};
  j["grid"] = Json{{"moduli", w.n_mod}, {"arguments", w.n_arg}};
  j["sup_ratio"] = number_or_inf(w.sup_ratio);
  j["low_confidence"] = w.low_confidence;
  j["note"] = w.note;
  return j;
}

Json to_json(const ClassificationReport& r, const std::string& sequence) {
  const ClassificationInputs& in = r.inputs;
  Json j;
  j["sequence"] = sequence;
  j["properties"] = to_json(in.properties);
  if (in.degenerate) {
    j["indices"] = Json{{"omega", nullptr}, {"gamma", nullptr}, {"gamma_beta", nullptr}};
  } else {
    j["indices"] = Json{{"omega", to_json(in.omega)}, {"gamma", to_json(in.gamma)}, {"gamma_beta", to_json(in.gamma_check)}};
  }
  j["series"] = Json{{"mu_at_omega", in.mu_at_omega ? to_json(*in.mu_at_omega) : Json(nullptr)},
                     {"sigma_at_omega", in.sigma_at_omega ? to_json(*in.sigma_at_omega) : Json(nullptr)}};
  j["injectivity"] = Json{{"A_M", to_json(r.A)}, {"Au_M", to_json(r.Au)}, {"Atilde_M", to_json(r.Atilde)}};
  j["surjectivity"] = Json{{"S_M", to_json(r.S)}, {"Su_M", to_json(r.Su)}, {"Stilde_M", to_json(r.Stilde)}};
  j["admits_proximate_order"] = in.admits_proximate_order;
  j["admissibility_source"] = in.admissibility_source;
  j["gamma_rational"] = in.gamma_rational ? Json(*in.gamma_rational) : Json(nullptr);
  j["coupled_endpoints"] = r.coupled;
  j["citations"] = r.citations;
  return j;
}

std::string render_interval(const IntervalVerdict& v) {
  std::string b = format_number(v.bound);
  std::string body;
  switch (v.kind) {
  case IntervalKind::Empty: return "empty";
  case IntervalKind::All: body = "(0,inf)"; break;
  case IntervalKind::From:
    switch (v.endpoint) {
    case Endpoint::Open: body = "(" + b + ",inf)"; break;
    case Endpoint::Closed: body = "[" + b + ",inf)"; break;
    case Endpoint::Unknown: body = "(" + b + ",inf) or [" + b + ",inf)"; break;
    }
    break;
  case IntervalKind::UpTo:
    switch (v.endpoint) {
    case Endpoint::Open: body = "(0," + b + ")"; break;
    case Endpoint::Closed: body = "(0," + b + "]"; break;
    case Endpoint::Unknown: body = "(0," + b + ") or (0," + b + "]"; break;
    }
    break;
  }
  return v.subset_proven ? body : "subset of " + body;
}

std::string render_text(const ClassificationReport& r, const std::string& sequence) {
  const ClassificationInputs& in = r.inputs;
  std::ostringstream os;
  auto idx = [](const IndexEstimate& e) {
    return (e.infinite ? std::string("inf") : format_number(e.value)) + " (" + to_string(e.method) + ")";
  };
  const PropertyReport& p = in.properties;
  os << "sequence: " << sequence << "\n";
  os << "properties: lc=" << to_string(p.lc.status) << " dc=" << to_string(p.dc.status)
     << " mg=" << to_string(p.mg.status) << " nq=" << to_string(p.nq.status) << " snq=" << to_string(p.snq.status)
     << " strongly_regular=" << to_string(p.strongly_regular.status) << "\n";
  if (in.degenerate) {
    os << "indices: not computed (quotients bounded)\n";
  } else {
    os << "omega: " << idx(in.omega) << "\n";
    os << "gamma: " << idx(in.gamma) << "\n";
  }
  if (in.mu_at_omega) os << "mu series at omega: " << to_string(in.mu_at_omega->verdict) << "\n";
  if (in.sigma_at_omega) os << "sigma series at omega: " << to_string(in.sigma_at_omega->verdict) << "\n";
  auto all = six(r);
  for (std::size_t i = 0; i < all.size(); ++i) os << kIntervalNames[i] << ": " << render_interval(*all[i]) << "\n";
  os << "citations:";
  for (const auto& c : r.citations) os << " " << c;
  os << "\n";
  return os.str();
}

std::string render_csv(const ClassificationReport& r) {
  std::ostringstream os;
  os << "interval,kind,bound,endpoint,subset_proven,rendered\n";
  auto all = six(r);
  for (std::size_t i = 0; i < all.size(); ++i) {
    const IntervalVerdict& v = *all[i];
    bool bounded = v.kind == IntervalKind::UpTo || v.kind == IntervalKind::From;
    os << kIntervalNames[i] << "," << to_string(v.kind) << "," << (bounded ? format_number(v.bound) : "") << ","
       << (bounded ? to_string(v.endpoint) : "") << "," << (v.subset_proven ? "true" : "false") << ","
       << csv_field(render_interval(v)) << "\n";
  }
  return os.str();
}

std::vector<TableRow> mab_table(double alpha, const std::vector<double>& betas) {
  if (betas.empty()) fail(ErrorKind::InvalidParameter, "the table needs at least one beta");
  ClassifyOptions opts;
  opts.use_rationality = false;
  std::vector<TableRow> rows;
  for (double b : betas) rows.push_back({alpha, b, full_classification(make_mab(alpha, b, 512), opts)});
  return rows;
}

std::string render_table(const std::vector<TableRow>& rows, Format format) {
  std::vector<std::vector<std::string>> cells;
  cells.push_back({"alpha", "beta"});
  for (const char* n : kIntervalNames) cells.back().push_back(n);
  for (const auto& row : rows) {
    std::vector<std::string> line{format_number(row.alpha), format_number(row.beta)};
    for (const IntervalVerdict* v : six(row.report)) line.push_back(render_interval(*v));
    cells.push_back(line);
  }
  std::ostringstream os;
  if (format == Format::Json) {
    Json arr = Json::array();
    for (const auto& row : rows) {
      Json j;
      j["alpha"] = row.alpha;
      j["beta"] = row.beta;
      const ClassificationReport& r = row.report;
      j["injectivity"] = Json{{"A_M", to_json(r.A)}, {"Au_M", to_json(r.Au)}, {"Atilde_M", to_json(r.Atilde)}};
      j["surjectivity"] = Json{{"S_M", to_json(r.S)}, {"Su_M", to_json(r.Su)}, {"Stilde_M", to_json(r.Stilde)}};
      arr.push_back(j);
    }
    os << arr.dump(2) << "\n";
  } else if (format == Format::Csv) {
    for (const auto& line : cells) {
      for (std::size_t i = 0; i < line.size(); ++i) os << (i ? "," : "") << csv_field(line[i]);
      os << "\n";
    }
  } else {
    std::vector<std::size_t> width(cells[0].size(), 0);
    for (const auto& line : cells)
      for (std::size_t i = 0; i < line.size(); ++i) width[i] = std::max(width[i], line[i].size());
    for (const auto& line : cells) {
      std::string out;
      for (std::size_t i = 0; i < line.size(); ++i) {
        out += line[i];
        if (i + 1 < line.size()) out += std::string(width[i] - line[i].size() + 2, ' ');
      }
      os << out << "\n";
    }
  }
  return os.str();
}

} // namespace wseq
