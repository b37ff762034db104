#include "cellposet/trace.hpp"

#include <sstream>

namespace cellposet {

int ConstructionTrace::add_boolean(int d) {
  TraceStep s;
  s.op = TraceStep::Op::Boolean;
  s.d = d;
  steps.push_back(std::move(s));
  return static_cast<int>(steps.size()) - 1;
}

int ConstructionTrace::add_delta(int d, int k) {
  TraceStep s;
  s.op = TraceStep::Op::Delta;
  s.d = d;
  s.k = k;
  steps.push_back(std::move(s));
  return static_cast<int>(steps.size()) - 1;
}

int ConstructionTrace::add_glue(int a, int b, GluePairs pairs) {
  TraceStep s;
  s.op = TraceStep::Op::Glue;
  s.a = a;
  s.b = b;
  s.pairs = std::move(pairs);
  steps.push_back(std::move(s));
  return static_cast<int>(steps.size()) - 1;
}

std::string write_trace(const ConstructionTrace& trace) {
  std::ostringstream out;
  out << "celltrace 1\n";
  for (size_t i = 0; i < trace.steps.size(); ++i) {
    const TraceStep& s = trace.steps[i];
    out << "t" << i << " = ";
    switch (s.op) {
      case TraceStep::Op::Boolean:
        out << "boolean " << s.d;
        break;
      case TraceStep::Op::Delta:
        out << "delta " << s.d << " " << s.k;
        break;
      case TraceStep::Op::Glue: {
        out << "glue t" << s.a << " t" << s.b << " [";
        for (size_t j = 0; j < s.pairs.size(); ++j) {
          if (j) out << ",";
          out << s.pairs[j].first << ":" << s.pairs[j].second;
        }
        out << "]";
        break;
      }
    }
    out << "\n";
  }
  out << "result t" << trace.result << "\n";
  return out.str();
}

namespace {

int parse_var(const std::string& tok, int defined) {
  if (tok.size() < 2 || tok[0] != 't') throw ParseError("expected variable, got '" + tok + "'");
  size_t pos = 0;
  int v = 0;
  try {
    v = std::stoi(tok.substr(1), &pos);
  } catch (const std::exception&) {
    throw ParseError("bad variable '" + tok + "'");
  }
  if (pos != tok.size() - 1) throw ParseError("bad variable '" + tok + "'");
  if (v < 0 || v >= defined) throw ParseError("variable " + tok + " not defined yet");
  return v;
}

int parse_int(const std::string& tok) {
  size_t pos = 0;
  int v = 0;
  try {
    v = std::stoi(tok, &pos);
  } catch (const std::exception&) {
    throw ParseError("bad integer '" + tok + "'");
  }
  if (pos != tok.size()) throw ParseError("bad integer '" + tok + "'");
  return v;
}

GluePairs parse_pairs(const std::string& tok) {
  if (tok.size() < 2 || tok.front() != '[' || tok.back() != ']')
    throw ParseError("expected [pairs], got '" + tok + "'");
  GluePairs pairs;
  const std::string body = tok.substr(1, tok.size() - 2);
  if (body.empty()) return pairs;
  size_t pos = 0;
  while (pos <= body.size()) {
    size_t comma = body.find(',', pos);
    std::string item = body.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    size_t colon = item.find(':');
    if (colon == std::string::npos) throw ParseError("bad pair '" + item + "'");
    pairs.emplace_back(parse_int(item.substr(0, colon)), parse_int(item.substr(colon + 1)));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return pairs;
}

}  // namespace

ConstructionTrace parse_trace(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "celltrace 1")
    throw ParseError("bad or missing trace header");
  ConstructionTrace trace;
  bool have_result = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (have_result) throw ParseError("content after result line");
    std::istringstream ls(line);
    std::string tok;
    ls >> tok;
    if (tok == "result") {
      std::string var;
      if (!(ls >> var)) throw ParseError("missing result variable");
      trace.result = parse_var(var, static_cast<int>(trace.steps.size()));
      if (ls >> tok) throw ParseError("trailing tokens on result line");
      have_result = true;
      continue;
    }
    const int lhs = parse_var(tok, static_cast<int>(trace.steps.size()) + 1);
    if (lhs != static_cast<int>(trace.steps.size()))
      throw ParseError("steps must define t0, t1, ... in order");
    std::string eq, op;
    if (!(ls >> eq >> op) || eq != "=") throw ParseError("malformed step line: " + line);
    if (op == "boolean") {
      std::string dtok;
      if (!(ls >> dtok)) throw ParseError("boolean step needs d");
      trace.add_boolean(parse_int(dtok));
    } else if (op == "delta") {
      std::string dtok, ktok;
      if (!(ls >> dtok >> ktok)) throw ParseError("delta step needs d and k");
      trace.add_delta(parse_int(dtok), parse_int(ktok));
    } else if (op == "glue") {
      std::string atok, btok, ptok;
      if (!(ls >> atok >> btok >> ptok)) throw ParseError("glue step needs operands and pairs");
      int a = parse_var(atok, lhs);
      int b = parse_var(btok, lhs);
      trace.add_glue(a, b, parse_pairs(ptok));
    } else {
      throw ParseError("unknown step op '" + op + "'");
    }
    if (ls >> tok) throw ParseError("trailing tokens on step line: " + line);
  }
  if (!have_result) throw ParseError("missing result line");
  return trace;
}

}  // namespace cellposet
