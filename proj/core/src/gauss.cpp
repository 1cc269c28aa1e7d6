#include "vknot/gauss.hpp"

#include <cctype>
#include <map>

namespace vknot {

namespace {

struct Cursor {
  const std::string& s;
  size_t i = 0;

  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool done() {
    skip_ws();
    return i >= s.size();
  }
  char peek() {
    skip_ws();
    return s[i];
  }
  char take() {
    skip_ws();
    return s[i++];
  }
};

}  // namespace

OrientedGaussCode parse_gauss_code(const std::string& text) {
  if (text.find(';') != std::string::npos)
    throw MultiComponentError("multi-component codes are not supported");

  OrientedGaussCode out;
  Cursor c{text};
  std::map<long long, int> renumber;           // original label -> 1..c
  std::map<int, int> seen_over, seen_under;    // new label -> count

  while (!c.done()) {
    CrossingPass p;
    char sign = c.take();
    if (sign == '+') p.over = true;
    else if (sign == '-') p.over = false;
    else throw SyntaxError(std::string("expected '+' or '-', got '") + sign + "'");

    if (c.done()) throw SyntaxError("truncated pass: missing side symbol");
    char side = c.take();
    if (side == '>') p.side = Side::LeftToRight;
    else if (side == '<') p.side = Side::RightToLeft;
    else throw SyntaxError(std::string("expected '>' or '<', got '") + side + "'");

    if (c.done()) throw SyntaxError("truncated pass: missing crossing label");
    if (!std::isdigit(static_cast<unsigned char>(c.peek())))
      throw SyntaxError("crossing label must be a positive integer");
    long long label = 0;
    bool any = false;
    while (c.i < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.i]))) {
      label = label * 10 + (c.s[c.i] - '0');
      if (label > 1'000'000'000) throw SyntaxError("crossing label out of range");
      ++c.i;
      any = true;
    }
    if (!any || label == 0) throw SyntaxError("crossing label must be a positive integer");

    auto it = renumber.find(label);
    if (it == renumber.end())
      it = renumber.emplace(label, static_cast<int>(renumber.size()) + 1).first;
    p.crossing_id = it->second;
    (p.over ? seen_over : seen_under)[p.crossing_id]++;
    out.passes.push_back(p);
  }

  out.crossing_count = static_cast<int>(renumber.size());
  for (int id = 1; id <= out.crossing_count; ++id) {
    if (seen_over[id] != 1 || seen_under[id] != 1)
      throw ConsistencyError("crossing " + std::to_string(id) +
                             " must be passed exactly once over and once under");
  }
  return out;
}

std::string serialize_gauss_code(const OrientedGaussCode& code) {
  std::map<int, int> renumber;
  std::string out;
  for (const CrossingPass& p : code.passes) {
    auto it = renumber.find(p.crossing_id);
    if (it == renumber.end())
      it = renumber.emplace(p.crossing_id, static_cast<int>(renumber.size()) + 1).first;
    out += p.over ? '+' : '-';
    out += p.side == Side::LeftToRight ? '>' : '<';
    out += std::to_string(it->second);
  }
  return out;
}

}  // namespace vknot
