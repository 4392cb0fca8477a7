#pragma once

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "syllo/formula.hpp"

namespace fixtures {

// Parses "All x1 are x2" style sentences over terms named x1..xN (term id
// N-1). Independent of the library's text layer on purpose.
inline syllo::Formula f(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> w;
  for (std::string t; in >> t;) w.push_back(t);
  auto id = [](const std::string& name) {
    if (name.size() < 2 || name[0] != 'x') throw std::runtime_error("bad term " + name);
    return static_cast<syllo::TermId>(std::stoul(name.substr(1)) - 1);
  };
  using syllo::Quantifier;
  if (w.size() == 4 && w[0] == "All" && w[2] == "are") return {Quantifier::A, id(w[1]), id(w[3])};
  if (w.size() == 4 && w[0] == "No" && w[2] == "are") return {Quantifier::E, id(w[1]), id(w[3])};
  if (w.size() == 4 && w[0] == "Some" && w[2] == "are") return {Quantifier::I, id(w[1]), id(w[3])};
  if (w.size() == 5 && w[0] == "Some" && w[2] == "are" && w[3] == "not")
    return {Quantifier::O, id(w[1]), id(w[4])};
  throw std::runtime_error("bad fixture sentence: " + s);
}

inline syllo::KnowledgeBase kb(std::size_t n_terms, const std::vector<std::string>& lines,
                               const std::string& id = "fixture") {
  std::vector<syllo::Formula> out;
  for (const auto& l : lines) out.push_back(f(l));
  return syllo::KnowledgeBase(id, n_terms, out);
}

// Twelve-premise knowledge base of the introductory worked example.
inline syllo::KnowledgeBase intro_kb() {
  return kb(11, {"All x1 are x2", "All x2 are x4", "All x3 are x5", "All x10 are x11",
                 "All x4 are x6", "All x2 are x3", "All x5 are x7", "Some x5 are not x1",
                 "All x9 are x10", "All x6 are x8", "All x8 are x9", "Some x11 are not x4"},
            "intro");
}

// Thirty-premise knowledge base over x1..x27 with one inference of each type.
inline syllo::KnowledgeBase seven_type_kb() {
  return kb(27,
            {"All x1 are x2",   "All x2 are x3",   "All x2 are x4",   "All x3 are x5",
             "All x4 are x6",   "All x5 are x7",   "All x6 are x8",   "All x8 are x9",
             "All x9 are x10",  "All x10 are x11", "All x11 are x12", "All x13 are x14",
             "All x13 are x15", "All x14 are x16", "All x15 are x17", "All x16 are x18",
             "All x17 are x19", "All x18 are x20", "All x19 are x21", "All x21 are x22",
             "All x22 are x23", "All x23 are x24", "All x24 are x25", "All x24 are x26",
             "All x26 are x27", "No x20 are x12",  "Some x15 are x1",  "Some x11 are not x4",
             "Some x5 are not x1", "Some x20 are not x16"},
            "seven-type");
}

}  // namespace fixtures
