#include "wseq/seqspec.hpp"

#include "wseq/error.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>

namespace wseq {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<double> read_column(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::InvalidParameter, "cannot open " + path);
  std::vector<double> values;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty()) continue;
    try {
      values.push_back(parse_number(t));
    } catch (const Error&) {
      fail(ErrorKind::InvalidParameter, path + ":" + std::to_string(lineno) + ": not a number: " + t);
    }
  }
  return values;
}

} // namespace

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    auto pos = text.find(sep, start);
    parts.push_back(trim(text.substr(start, pos == std::string::npos ? std::string::npos : pos - start)));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return parts;
}

double parse_number(const std::string& token) {
  std::string t = trim(token);
  if (t.empty()) fail(ErrorKind::InvalidParameter, "empty number");
  char* end = nullptr;
  errno = 0;
  double v = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size() || errno == ERANGE)
    fail(ErrorKind::InvalidParameter, "not a number: " + t);
  return v;
}

WeightSequence parse_sequence_spec(const std::string& spec, std::size_t n_terms) {
  auto colon = spec.find(':');
  if (colon == std::string::npos) fail(ErrorKind::InvalidParameter, "sequence spec needs '<kind>:<args>': " + spec);
  std::string kind = spec.substr(0, colon);
  std::string args = spec.substr(colon + 1);

  if (kind == "gevrey") return make_gevrey(parse_number(args), n_terms);
  if (kind == "qpow") return make_qpow(parse_number(args), n_terms);
  if (kind == "mab") {
    auto parts = split(args, ',');
    if (parts.size() != 2) fail(ErrorKind::InvalidParameter, "mab needs <alpha>,<beta>");
    return make_mab(parse_number(parts[0]), parse_number(parts[1]), n_terms);
  }
  if (kind == "file" || kind == "quot") {
    std::vector<double> values = read_column(args);
    if (kind == "file") {
      if (values.size() > n_terms) values.resize(n_terms);
      return from_log_table(std::move(values));
    }
    if (values.size() + 1 > n_terms) values.resize(n_terms > 0 ? n_terms - 1 : 0);
    return from_log_quotients(values);
  }
  fail(ErrorKind::InvalidParameter, "unknown sequence kind: " + kind);
}

} // namespace wseq
