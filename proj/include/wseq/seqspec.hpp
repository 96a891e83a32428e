#pragma once

#include "wseq/sequence.hpp"

#include <cstddef>
#include <string>

namespace wseq {

// Parses "gevrey:<a>", "mab:<a>,<b>", "qpow:<q>", "file:<path>" or "quot:<path>".
// Built-in families get n_terms terms; file tables are truncated to n_terms when longer.
WeightSequence parse_sequence_spec(const std::string& spec, std::size_t n_terms);

// Strict decimal parse of the whole token; throws InvalidParameter otherwise.
double parse_number(const std::string& token);

std::vector<std::string> split(const std::string& text, char sep);

} // namespace wseq
