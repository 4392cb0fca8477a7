#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "syllo/formula.hpp"
#include "syllo/premise_set.hpp"
#include "syllo/rng.hpp"

namespace syllo {

// Embedded in dataset metadata; bump when any layout detail below changes.
inline constexpr std::string_view kFormatVersion = "syllo-text-v1";

enum class VocabKind { Syllable, Symbolic, External };

std::string_view to_string(VocabKind k);
VocabKind vocab_kind_from_string(std::string_view s);

// Lowercase ASCII copy.
std::string fold_case(std::string_view s);

// Words that may never be used as terms (compared case-insensitively).
bool is_reserved_word(std::string_view w);

class Vocabulary {
 public:
  Vocabulary() = default;
  // Validates: non-empty words without whitespace or any of ",;<>:", no
  // reserved words, no duplicates up to case. Throws InputError.
  Vocabulary(VocabKind kind, std::vector<std::string> words);

  [[nodiscard]] VocabKind kind() const { return kind_; }
  [[nodiscard]] const std::vector<std::string>& words() const { return words_; }
  [[nodiscard]] std::size_t size() const { return words_.size(); }
  [[nodiscard]] bool contains(std::string_view w) const;

 private:
  VocabKind kind_ = VocabKind::External;
  std::vector<std::string> words_;
  std::unordered_set<std::string> folded_;
};

// The bundled inventory of common English syllables, one per line in
// data/syllables.txt.
const std::vector<std::string>& builtin_syllables();

// Reads an inventory or word list: one entry per line, blank lines and
// surrounding whitespace ignored.
std::vector<std::string> read_word_lines(const std::string& path);

// Pseudowords made of exactly two syllables, drawn without replacement in a
// seed-determined order. Words listed in `exclude` (case-insensitive) are
// skipped, which gives vocabularies disjoint from a training vocabulary.
// Throws InputError when the inventory cannot supply `size` words.
Vocabulary syllable_vocabulary(std::uint64_t seed, std::size_t size = 5000,
                               const std::vector<std::string>& syllables = builtin_syllables(),
                               const Vocabulary* exclude = nullptr);

// X1 .. Xsize.
Vocabulary symbolic_vocabulary(std::size_t size = 5000);

Vocabulary external_vocabulary(const std::string& path);

// Injective map from term ids to words.
using Assignment = std::vector<std::string>;

// n distinct words drawn uniformly from the vocabulary.
Assignment random_assignment(const Vocabulary& vocab, std::size_t n_terms, Rng& rng);

// Identity naming x1..xn, used for worked examples and the oracle CLI.
Assignment indexed_assignment(std::size_t n_terms, std::string_view prefix = "x");

// Case-insensitive word -> term id map used when reading text back.
class Lexicon {
 public:
  Lexicon() = default;
  explicit Lexicon(const Assignment& asg);

  [[nodiscard]] std::optional<TermId> find(std::string_view word) const;
  // Returns the existing id or assigns the next free one.
  TermId intern(std::string_view word);
  [[nodiscard]] std::size_t size() const { return ids_.size(); }
  // First-seen spelling of each word, indexed by term id.
  [[nodiscard]] const Assignment& words() const { return words_; }

 private:
  std::unordered_map<std::string, TermId> ids_;
  Assignment words_;
};

std::string render_formula(const Formula& f, const Assignment& asg);

// Uniformly random permutation of 0..n-1. Element k is the KB index of the
// premise rendered at position k.
std::vector<std::size_t> random_permutation(std::size_t n, Rng& rng);
std::vector<std::size_t> identity_permutation(std::size_t n);

// Premise indices of `set` in rendered order (by position in `perm`).
std::vector<std::size_t> in_rendered_order(const PremiseSet& set,
                                           const std::vector<std::size_t>& perm);

struct StudyPair {
  Formula hypothesis;
  PremiseSet premises;
};

// "knowledge base: P1, P2, ..." in permutation order.
std::string render_kb(const KnowledgeBase& kb, const Assignment& asg,
                      const std::vector<std::size_t>& perm);

// Gold premise strings in rendered order.
std::vector<std::string> render_premises(const KnowledgeBase& kb, const PremiseSet& set,
                                         const Assignment& asg,
                                         const std::vector<std::size_t>& perm);

// knowledge base: ... <QUERY> hypothesis: H premises: g1, g2
std::string render_datapoint(const KnowledgeBase& kb, const Formula& hypothesis,
                             const PremiseSet& gold, const Assignment& asg,
                             const std::vector<std::size_t>& perm);

// knowledge base: ... <STUDY> hypothesis: H1 premises: p, p; ... <QUERY> ...
// Throws InputError unless there are exactly three study pairs.
std::string render_episode(const KnowledgeBase& kb, const std::vector<StudyPair>& study,
                           const Formula& query, const PremiseSet& gold, const Assignment& asg,
                           const std::vector<std::size_t>& perm);

// One comma-separated item of a premise list.
struct ParsedItem {
  std::string raw;                 // trimmed item text
  std::optional<Formula> formula;  // empty when unparseable or a word is unknown
};

// Total function over untrusted text: splits on commas, trims, skips empty
// items, matches the four templates case-insensitively.
std::vector<ParsedItem> parse_premise_list(std::string_view text, const Lexicon& lex);

// A single formula, or nullopt.
std::optional<Formula> parse_formula(std::string_view text, const Lexicon& lex);

struct ParsedPair {
  Formula hypothesis;
  std::vector<Formula> premises;

  friend bool operator==(const ParsedPair&, const ParsedPair&) = default;
};

struct ParsedText {
  std::vector<Formula> kb;  // rendered order
  std::vector<ParsedPair> study;
  ParsedPair query;

  friend bool operator==(const ParsedText&, const ParsedText&) = default;
};

// Strict parser for rendered datapoints and episodes (not model output).
// Words in the knowledge-base section are interned into `lex` when
// `intern_kb_words` is set; every later word must already be known.
// Throws InputError on any deviation from the layout.
ParsedText parse_text(std::string_view text, Lexicon& lex, bool intern_kb_words = false);

}  // namespace syllo
