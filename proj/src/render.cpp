#include "syllo/render.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <numeric>
#include <sstream>

#include "syllo/errors.hpp"

namespace syllo {

extern const char* const kBuiltinSyllables;  // generated from data/syllables.txt

namespace {

constexpr std::array<std::string_view, 13> kReserved = {
    "all",      "no",        "some",  "are",   "not",   "hypothesis", "premises",
    "knowledge", "base",     "query", "study", "every", "is"};

constexpr std::string_view kForbiddenChars = ",;<>:";

std::string_view trim(std::string_view s) {
  auto is_space = [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_words(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::vector<std::string_view> split_on(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i)
    if (i == s.size() || s[i] == sep) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  return out;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

void check_word(std::string_view w) {
  if (w.empty()) throw InputError("empty vocabulary word");
  for (char c : w)
    if (std::isspace(static_cast<unsigned char>(c)) || kForbiddenChars.find(c) != std::string_view::npos)
      throw InputError("vocabulary word '" + std::string(w) + "' contains a forbidden character");
  if (is_reserved_word(w)) throw InputError("vocabulary word '" + std::string(w) + "' is reserved");
}

}  // namespace

std::string_view to_string(VocabKind k) {
  switch (k) {
    case VocabKind::Syllable: return "syllable";
    case VocabKind::Symbolic: return "symbolic";
    case VocabKind::External: return "external";
  }
  return "?";
}

VocabKind vocab_kind_from_string(std::string_view s) {
  if (s == "syllable") return VocabKind::Syllable;
  if (s == "symbolic") return VocabKind::Symbolic;
  if (s == "external") return VocabKind::External;
  throw InputError("unknown vocabulary kind '" + std::string(s) + "'");
}

std::string fold_case(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool is_reserved_word(std::string_view w) {
  const std::string f = fold_case(w);
  return std::find(kReserved.begin(), kReserved.end(), f) != kReserved.end();
}

Vocabulary::Vocabulary(VocabKind kind, std::vector<std::string> words)
    : kind_(kind), words_(std::move(words)) {
  for (const auto& w : words_) {
    check_word(w);
    if (!folded_.insert(fold_case(w)).second)
      throw InputError("duplicate vocabulary word '" + w + "'");
  }
}

bool Vocabulary::contains(std::string_view w) const { return folded_.count(fold_case(w)) > 0; }

const std::vector<std::string>& builtin_syllables() {
  static const std::vector<std::string> syllables = [] {
    std::vector<std::string> out;
    std::istringstream in(kBuiltinSyllables);
    for (std::string line; std::getline(in, line);) {
      auto t = trim(line);
      if (!t.empty()) out.emplace_back(t);
    }
    return out;
  }();
  return syllables;
}

std::vector<std::string> read_word_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read word list " + path);
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);) {
    auto t = trim(line);
    if (!t.empty()) out.emplace_back(t);
  }
  return out;
}

Vocabulary syllable_vocabulary(std::uint64_t seed, std::size_t size,
                               const std::vector<std::string>& syllables, const Vocabulary* exclude) {
  const std::size_t s = syllables.size();
  if (s == 0) throw InputError("empty syllable inventory");
  // Visit all ordered syllable pairs in a random order and keep valid ones.
  std::vector<std::uint32_t> order(s * s);
  std::iota(order.begin(), order.end(), 0U);
  Rng rng(derive_seed(seed, "vocabulary"));
  rng.shuffle(order);
  std::vector<std::string> words;
  std::unordered_set<std::string> seen;
  for (auto code : order) {
    if (words.size() == size) break;
    std::string w = syllables[code / s] + syllables[code % s];
    std::string f = fold_case(w);
    if (is_reserved_word(f) || seen.count(f) || (exclude && exclude->contains(f))) continue;
    seen.insert(f);
    words.push_back(std::move(w));
  }
  if (words.size() < size)
    throw InputError("syllable inventory yields only " + std::to_string(words.size()) +
                     " usable words; " + std::to_string(size) + " requested");
  return Vocabulary(VocabKind::Syllable, std::move(words));
}

Vocabulary symbolic_vocabulary(std::size_t size) {
  std::vector<std::string> words;
  words.reserve(size);
  for (std::size_t i = 1; i <= size; ++i) words.push_back("X" + std::to_string(i));
  return Vocabulary(VocabKind::Symbolic, std::move(words));
}

Vocabulary external_vocabulary(const std::string& path) {
  return Vocabulary(VocabKind::External, read_word_lines(path));
}

Assignment random_assignment(const Vocabulary& vocab, std::size_t n_terms, Rng& rng) {
  if (n_terms > vocab.size())
    throw InputError("vocabulary of " + std::to_string(vocab.size()) + " words cannot name " +
                     std::to_string(n_terms) + " terms");
  Assignment out;
  for (auto i : rng.sample_indices(vocab.size(), n_terms)) out.push_back(vocab.words()[i]);
  return out;
}

Assignment indexed_assignment(std::size_t n_terms, std::string_view prefix) {
  Assignment out;
  for (std::size_t i = 1; i <= n_terms; ++i) out.push_back(std::string(prefix) + std::to_string(i));
  return out;
}

Lexicon::Lexicon(const Assignment& asg) : words_(asg) {
  for (std::size_t i = 0; i < asg.size(); ++i)
    if (!ids_.emplace(fold_case(asg[i]), static_cast<TermId>(i)).second)
      throw InputError("assignment is not injective: '" + asg[i] + "'");
}

std::optional<TermId> Lexicon::find(std::string_view word) const {
  auto it = ids_.find(fold_case(word));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

TermId Lexicon::intern(std::string_view word) {
  auto [it, inserted] = ids_.emplace(fold_case(word), static_cast<TermId>(ids_.size()));
  if (inserted) words_.emplace_back(word);
  return it->second;
}

std::string render_formula(const Formula& f, const Assignment& asg) {
  if (f.subj >= asg.size() || f.obj >= asg.size())
    throw InputError("formula " + to_string(f) + " uses a term without an assigned word");
  const std::string& a = asg[f.subj];
  const std::string& b = asg[f.obj];
  switch (f.q) {
    case Quantifier::A: return "All " + a + " are " + b;
    case Quantifier::E: return "No " + a + " are " + b;
    case Quantifier::I: return "Some " + a + " are " + b;
    case Quantifier::O: return "Some " + a + " are not " + b;
  }
  return {};
}

std::vector<std::size_t> random_permutation(std::size_t n, Rng& rng) {
  auto p = identity_permutation(n);
  rng.shuffle(p);
  return p;
}

std::vector<std::size_t> identity_permutation(std::size_t n) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), std::size_t{0});
  return p;
}

std::vector<std::size_t> in_rendered_order(const PremiseSet& set,
                                           const std::vector<std::size_t>& perm) {
  std::vector<std::size_t> out;
  for (auto i : perm)
    if (set.contains(i)) out.push_back(i);
  return out;
}

namespace {

void check_perm(const KnowledgeBase& kb, const std::vector<std::size_t>& perm) {
  if (perm.size() != kb.size()) throw InputError("permutation size does not match the KB");
  std::vector<bool> seen(kb.size(), false);
  for (auto i : perm) {
    if (i >= kb.size() || seen[i]) throw InputError("invalid premise permutation");
    seen[i] = true;
  }
}

std::string render_pair(const KnowledgeBase& kb, const Formula& h, const PremiseSet& premises,
                        const Assignment& asg, const std::vector<std::size_t>& perm) {
  return "hypothesis: " + render_formula(h, asg) +
         " premises: " + join(render_premises(kb, premises, asg, perm), ", ");
}

}  // namespace

std::string render_kb(const KnowledgeBase& kb, const Assignment& asg,
                      const std::vector<std::size_t>& perm) {
  check_perm(kb, perm);
  std::vector<std::string> parts;
  parts.reserve(perm.size());
  for (auto i : perm) parts.push_back(render_formula(kb[i], asg));
  return "knowledge base: " + join(parts, ", ");
}

std::vector<std::string> render_premises(const KnowledgeBase& kb, const PremiseSet& set,
                                         const Assignment& asg,
                                         const std::vector<std::size_t>& perm) {
  std::vector<std::string> out;
  for (auto i : in_rendered_order(set, perm)) out.push_back(render_formula(kb[i], asg));
  return out;
}

std::string render_datapoint(const KnowledgeBase& kb, const Formula& hypothesis,
                             const PremiseSet& gold, const Assignment& asg,
                             const std::vector<std::size_t>& perm) {
  return render_kb(kb, asg, perm) + " <QUERY> " + render_pair(kb, hypothesis, gold, asg, perm);
}

std::string render_episode(const KnowledgeBase& kb, const std::vector<StudyPair>& study,
                           const Formula& query, const PremiseSet& gold, const Assignment& asg,
                           const std::vector<std::size_t>& perm) {
  if (study.size() != 3)
    throw InputError("an episode needs exactly 3 study pairs, got " + std::to_string(study.size()));
  std::string out = render_kb(kb, asg, perm) + " <STUDY> ";
  for (const auto& s : study) out += render_pair(kb, s.hypothesis, s.premises, asg, perm) + "; ";
  out += "<QUERY> " + render_pair(kb, query, gold, asg, perm);
  return out;
}

std::optional<Formula> parse_formula(std::string_view text, const Lexicon& lex) {
  auto w = split_words(text);
  auto is = [&](std::size_t i, std::string_view kw) { return fold_case(w[i]) == kw; };
  std::optional<Quantifier> q;
  std::string_view a, b;
  if (w.size() == 4 && is(2, "are")) {
    if (is(0, "all")) q = Quantifier::A;
    else if (is(0, "no")) q = Quantifier::E;
    else if (is(0, "some")) q = Quantifier::I;
    a = w[1];
    b = w[3];
  } else if (w.size() == 5 && is(0, "some") && is(2, "are") && is(3, "not")) {
    q = Quantifier::O;
    a = w[1];
    b = w[4];
  }
  if (!q) return std::nullopt;
  auto x = lex.find(a);
  auto y = lex.find(b);
  if (!x || !y) return std::nullopt;
  return Formula{*q, *x, *y};
}

std::vector<ParsedItem> parse_premise_list(std::string_view text, const Lexicon& lex) {
  std::vector<ParsedItem> out;
  for (auto part : split_on(text, ',')) {
    auto t = trim(part);
    if (t.empty()) continue;
    out.push_back({std::string(t), parse_formula(t, lex)});
  }
  return out;
}

namespace {

std::string_view expect_prefix(std::string_view s, std::string_view prefix, const char* where) {
  if (s.substr(0, prefix.size()) != prefix)
    throw InputError(std::string("malformed text: expected '") + std::string(prefix) + "' " + where);
  return s.substr(prefix.size());
}

// Items separated by exactly ", ".
std::vector<Formula> parse_strict_list(std::string_view text, const Lexicon& lex) {
  std::vector<Formula> out;
  if (text.empty()) return out;
  for (auto part : split_on(text, ',')) {
    if (!out.empty()) part = expect_prefix(part, " ", "after ','");
    auto f = parse_formula(part, lex);
    if (!f || trim(part) != part)
      throw InputError("malformed text: cannot read premise '" + std::string(part) + "'");
    out.push_back(*f);
  }
  return out;
}

ParsedPair parse_pair(std::string_view text, const Lexicon& lex) {
  auto rest = expect_prefix(text, "hypothesis: ", "before a hypothesis");
  const auto at = rest.find(" premises: ");
  if (at == std::string_view::npos) throw InputError("malformed text: missing ' premises: '");
  auto h = parse_formula(rest.substr(0, at), lex);
  if (!h) throw InputError("malformed text: cannot read hypothesis");
  return {*h, parse_strict_list(rest.substr(at + 11), lex)};
}

}  // namespace

ParsedText parse_text(std::string_view text, Lexicon& lex, bool intern_kb_words) {
  ParsedText out;
  const auto q = text.find(" <QUERY> ");
  if (q == std::string_view::npos) throw InputError("malformed text: missing <QUERY>");
  std::string_view head = text.substr(0, q);
  std::string_view query = text.substr(q + 9);

  std::string_view kb_part = expect_prefix(head, "knowledge base: ", "at the start");
  std::string_view study_part;
  const auto s = kb_part.find(" <STUDY> ");
  const bool has_study = s != std::string_view::npos;
  if (has_study) {
    study_part = kb_part.substr(s + 9);
    kb_part = kb_part.substr(0, s);
  }

  for (auto t : split_on(kb_part, ',')) {
    if (!out.kb.empty()) t = expect_prefix(t, " ", "after ','");
    if (intern_kb_words) {
      auto words = split_words(t);
      if (words.size() == 4 || words.size() == 5) {
        lex.intern(words[1]);
        lex.intern(words.back());
      }
    }
    auto f = parse_formula(t, lex);
    if (!f) throw InputError("malformed text: cannot read KB premise '" + std::string(t) + "'");
    out.kb.push_back(*f);
  }

  if (has_study) {
    // Each study pair is terminated by ";"; the block ends with "; " before
    // the query marker, which the split above left as a trailing ";".
    if (study_part.empty() || study_part.back() != ';')
      throw InputError("malformed text: study block must end with ';'");
    study_part.remove_suffix(1);
    for (auto piece : split_on(study_part, ';')) {
      auto t = piece;
      if (!out.study.empty()) t = expect_prefix(t, " ", "between study pairs");
      out.study.push_back(parse_pair(t, lex));
    }
  }
  out.query = parse_pair(query, lex);
  return out;
}

}  // namespace syllo
