#pragma once

#include <string>
#include <vector>

#include "cellposet/poset.hpp"

namespace cellposet {

// Replayable build recipe in SSA form. Step i defines variable t<i>; glue
// pair lists reference element ids of the operand variables, which are
// deterministic because every constructor and glue assigns dense ids in a
// fixed order.
struct TraceStep {
  enum class Op { Boolean, Delta, Glue };
  Op op = Op::Boolean;
  int d = 0;
  int k = 0;        // Delta only
  int a = -1;       // Glue operands
  int b = -1;
  GluePairs pairs;  // Glue only, sorted by left id
};

struct ConstructionTrace {
  std::vector<TraceStep> steps;
  int result = -1;

  int add_boolean(int d);
  int add_delta(int d, int k);
  int add_glue(int a, int b, GluePairs pairs);
};

std::string write_trace(const ConstructionTrace& trace);
ConstructionTrace parse_trace(const std::string& text);

}  // namespace cellposet
