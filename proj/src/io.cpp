#include "cellposet/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace cellposet {

SimplicialPoset canonical_form(const SimplicialPoset& p) {
  if (!p.sound())
    throw PreconditionError("canonical_form requires a structurally sound poset");
  struct Key {
    int rank;
    std::vector<Id> atoms;
    Id id;
  };
  std::vector<Key> keys;
  keys.reserve(p.size());
  for (const Element& e : p.elements()) keys.push_back({e.rank, p.atoms_of(e.id), e.id});
  std::sort(keys.begin(), keys.end(), [](const Key& a, const Key& b) {
    if (a.rank != b.rank) return a.rank < b.rank;
    if (a.atoms != b.atoms) return a.atoms < b.atoms;
    return a.id < b.id;
  });
  std::map<Id, Id> renum;
  for (int i = 0; i < static_cast<int>(keys.size()); ++i) renum[keys[i].id] = i;
  std::vector<Element> els;
  els.reserve(keys.size());
  for (const Key& k : keys) {
    const Element& e = p.element_at(p.index_of(k.id));
    Element out{renum.at(e.id), e.rank, {}};
    for (Id c : e.covers) out.covers.push_back(renum.at(c));
    std::sort(out.covers.begin(), out.covers.end());
    els.push_back(std::move(out));
  }
  return SimplicialPoset(p.d(), std::move(els));
}

bool canonically_equal(const SimplicialPoset& a, const SimplicialPoset& b) {
  if (a.d() != b.d() || a.size() != b.size()) return false;
  SimplicialPoset ca = canonical_form(a);
  SimplicialPoset cb = canonical_form(b);
  for (int i = 0; i < ca.size(); ++i) {
    const Element& x = ca.element_at(i);
    const Element& y = cb.element_at(i);
    if (x.id != y.id || x.rank != y.rank || x.covers != y.covers) return false;
  }
  return true;
}

std::string write_poset(const SimplicialPoset& p) {
  SimplicialPoset c = canonical_form(p);
  std::ostringstream out;
  out << "cellposet 1\n";
  out << "d " << c.d() << "\n";
  out << "n " << c.size() << "\n";
  for (const Element& e : c.elements()) {
    out << "e " << e.id << " " << e.rank << " ";
    if (e.covers.empty()) {
      out << "-";
    } else {
      for (size_t i = 0; i < e.covers.size(); ++i) {
        if (i) out << ",";
        out << e.covers[i];
      }
    }
    out << "\n";
  }
  return out.str();
}

namespace {

long long parse_ll(const std::string& tok, const char* what) {
  size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(tok, &pos);
  } catch (const std::exception&) {
    throw ParseError(std::string("bad ") + what + " '" + tok + "'");
  }
  if (pos != tok.size()) throw ParseError(std::string("bad ") + what + " '" + tok + "'");
  return v;
}

}  // namespace

SimplicialPoset parse_poset(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "cellposet 1")
    throw ParseError("bad or missing poset header");
  if (!std::getline(in, line) || line.rfind("d ", 0) != 0) throw ParseError("missing d line");
  const long long d = parse_ll(line.substr(2), "d");
  if (d < 1 || d > 25) throw ParseError("d out of range");
  if (!std::getline(in, line) || line.rfind("n ", 0) != 0) throw ParseError("missing n line");
  const long long n = parse_ll(line.substr(2), "n");
  if (n < 0 || n > 10'000'000) throw ParseError("n out of range");

  std::vector<Element> els;
  els.reserve(static_cast<size_t>(n));
  for (long long i = 0; i < n; ++i) {
    if (!std::getline(in, line)) throw ParseError("truncated file: expected " + std::to_string(n) +
                                                  " element lines");
    std::istringstream ls(line);
    std::string tag, idtok, ranktok, covtok;
    if (!(ls >> tag >> idtok >> ranktok >> covtok) || tag != "e")
      throw ParseError("malformed element line: " + line);
    std::string extra;
    if (ls >> extra) throw ParseError("trailing tokens on element line: " + line);
    Element e;
    const long long id = parse_ll(idtok, "element id");
    if (id < 0 || id > 1'000'000'000) throw ParseError("element id out of range");
    e.id = static_cast<Id>(id);
    const long long rank = parse_ll(ranktok, "rank");
    if (rank < 1 || rank > d) throw ParseError("rank out of range on element " + idtok);
    e.rank = static_cast<int>(rank);
    if (covtok != "-") {
      size_t pos = 0;
      while (pos <= covtok.size()) {
        size_t comma = covtok.find(',', pos);
        std::string item =
            covtok.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        e.covers.push_back(static_cast<Id>(parse_ll(item, "cover id")));
        if (comma == std::string::npos) break;
        pos = comma + 1;
      }
    }
    els.push_back(std::move(e));
  }
  while (std::getline(in, line))
    if (!line.empty()) throw ParseError("trailing content after element lines");

  SimplicialPoset p(static_cast<int>(d), std::move(els));
  // Duplicate ids, dangling covers and rank-skewed references are format
  // violations. A duplicated cover entry parses: it is a validation failure
  // (never silently deduplicated), and certification must get to report it.
  if (const auto& issue = p.construction_issue()) {
    using Kind = ValidationReport::Kind;
    if (issue->kind != Kind::DuplicateCover)
      throw ParseError("invalid poset file: " + issue->reason + " (element " +
                       std::to_string(issue->witness) + ")");
  }
  return p;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CellposetError("cannot write file: " + path);
  out << content;
  if (!out) throw CellposetError("write failed: " + path);
}

}  // namespace cellposet
