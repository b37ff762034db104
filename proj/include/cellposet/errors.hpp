#pragma once

#include <stdexcept>
#include <string>

namespace cellposet {

class CellposetError : public std::runtime_error {
public:
  explicit CellposetError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input text: poset files, trace files, h-vector strings.
class ParseError : public CellposetError {
public:
  explicit ParseError(const std::string& what) : CellposetError(what) {}
};

// An operation was called outside its contract (invalid glue map, index out
// of range, hypotheses not met, ...).
class PreconditionError : public CellposetError {
public:
  explicit PreconditionError(const std::string& what) : CellposetError(what) {}
};

// A runtime consistency check failed. These guard identities the
// constructions rely on; one firing means a bug, not bad input.
class ConsistencyError : public CellposetError {
public:
  explicit ConsistencyError(const std::string& what) : CellposetError(what) {}
};

}  // namespace cellposet
