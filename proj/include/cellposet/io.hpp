#pragma once

#include <string>

#include "cellposet/poset.hpp"

namespace cellposet {

// Canonical relabeling: elements sorted by (rank, sorted atom-id list,
// original id), ids renumbered consecutively, cover lists sorted. The result
// is a fixed point of the renumbering, so canonical files diff cleanly.
SimplicialPoset canonical_form(const SimplicialPoset& p);

// Element-for-element equality after canonical renumbering.
bool canonically_equal(const SimplicialPoset& a, const SimplicialPoset& b);

// Line-oriented text format, LF endings:
//   cellposet 1
//   d <d>
//   n <element count>
//   e <id> <rank> <covers comma-separated, or ->   (one line per element)
// Writing always canonicalizes first. Parsing rejects unknown versions,
// duplicate ids, dangling or rank-skewed cover references.
std::string write_poset(const SimplicialPoset& p);
SimplicialPoset parse_poset(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace cellposet
