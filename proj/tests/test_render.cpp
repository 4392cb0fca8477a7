#include <doctest.h>

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "syllo/errors.hpp"
#include "syllo/kbgen.hpp"
#include "syllo/logic.hpp"
#include "syllo/render.hpp"

using namespace syllo;
using fixtures::f;

namespace {

PremiseSet indices(const KnowledgeBase& kb, const std::vector<std::string>& lines) {
  PremiseSet s;
  for (const auto& l : lines) s.insert(*kb.index_of(f(l)));
  return s;
}

}  // namespace

TEST_CASE("formula templates") {
  auto names = indexed_assignment(20);
  CHECK(render_formula(f("All x3 are x5"), names) == "All x3 are x5");
  CHECK(render_formula(f("Some x11 are not x4"), names) == "Some x11 are not x4");
  CHECK(render_formula(f("No x20 are x12"), names) == "No x20 are x12");
  CHECK(render_formula(f("Some x1 are x2"), names) == "Some x1 are x2");
  CHECK_THROWS_AS(render_formula(Formula{Quantifier::A, 0, 25}, names), InputError);
}

TEST_CASE("vocabularies") {
  auto sym = symbolic_vocabulary(5);
  CHECK(sym.words() == std::vector<std::string>{"X1", "X2", "X3", "X4", "X5"});

  auto a = syllable_vocabulary(1);
  auto b = syllable_vocabulary(1);
  CHECK(a.size() == 5000);
  CHECK(a.words() == b.words());
  CHECK(syllable_vocabulary(2).words() != a.words());

  const auto& syl = builtin_syllables();
  CHECK(syl.size() >= 250);
  std::set<std::string> inventory(syl.begin(), syl.end());
  for (const auto& w : a.words()) {
    CHECK_FALSE(is_reserved_word(w));
    bool split = false;
    for (std::size_t k = 1; k < w.size() && !split; ++k)
      split = inventory.count(w.substr(0, k)) && inventory.count(w.substr(k));
    CHECK(split);
  }

  auto unseen = syllable_vocabulary(3, 5000, builtin_syllables(), &a);
  for (const auto& w : unseen.words()) CHECK_FALSE(a.contains(w));

  CHECK_THROWS_AS(syllable_vocabulary(1, 100, {"ba", "be"}), InputError);
  CHECK_THROWS_AS(Vocabulary(VocabKind::External, {"wug", "WUG"}), InputError);
  CHECK_THROWS_AS(Vocabulary(VocabKind::External, {"All"}), InputError);
  CHECK_THROWS_AS(Vocabulary(VocabKind::External, {"a,b"}), InputError);
  CHECK_THROWS_AS(Vocabulary(VocabKind::External, {"two words"}), InputError);
}

TEST_CASE("introductory episode layout") {
  auto kb = fixtures::intro_kb();
  auto names = indexed_assignment(kb.n_terms());
  auto perm = identity_permutation(kb.size());

  const std::string kb_text =
      "knowledge base: All x1 are x2, All x2 are x4, All x3 are x5, All x10 are x11, All x4 are x6, "
      "All x2 are x3, All x5 are x7, Some x5 are not x1, All x9 are x10, All x6 are x8, "
      "All x8 are x9, Some x11 are not x4";
  CHECK(render_kb(kb, names, perm) == kb_text);

  auto gold = indices(kb, {"All x3 are x5", "All x5 are x7"});
  CHECK(render_datapoint(kb, f("All x3 are x7"), gold, names, perm) ==
        kb_text + " <QUERY> hypothesis: All x3 are x7 premises: All x3 are x5, All x5 are x7");

  std::vector<StudyPair> study{
      {f("All x8 are x11"), indices(kb, {"All x8 are x9", "All x9 are x10", "All x10 are x11"})},
      {f("All x1 are x3"), indices(kb, {"All x1 are x2", "All x2 are x3"})},
      {f("All x2 are x6"), indices(kb, {"All x2 are x4", "All x4 are x6"})}};
  const std::string ep = render_episode(kb, study, f("All x3 are x7"), gold, names, perm);
  CHECK(ep == kb_text +
                  " <STUDY> hypothesis: All x8 are x11 premises: All x10 are x11, All x9 are x10, "
                  "All x8 are x9; hypothesis: All x1 are x3 premises: All x1 are x2, All x2 are "
                  "x3; hypothesis: All x2 are x6 premises: All x2 are x4, All x4 are x6; <QUERY> "
                  "hypothesis: All x3 are x7 premises: All x3 are x5, All x5 are x7");

  study.pop_back();
  CHECK_THROWS_AS(render_episode(kb, study, f("All x3 are x7"), gold, names, perm), InputError);
}

TEST_CASE("gold order follows the rendered permutation") {
  auto kb = fixtures::intro_kb();
  auto names = indexed_assignment(kb.n_terms());
  auto perm = identity_permutation(kb.size());
  std::reverse(perm.begin(), perm.end());
  auto gold = indices(kb, {"All x3 are x5", "All x5 are x7"});
  CHECK(render_premises(kb, gold, names, perm) ==
        std::vector<std::string>{"All x5 are x7", "All x3 are x5"});
}

TEST_CASE("premise list parsing") {
  Lexicon lex(indexed_assignment(10));
  auto items = parse_premise_list("All x3 are x5, All x5 are x7", lex);
  REQUIRE(items.size() == 2);
  CHECK(items[0].formula == f("All x3 are x5"));
  CHECK(items[1].formula == f("All x5 are x7"));

  CHECK(parse_premise_list("", lex).empty());
  CHECK(parse_premise_list(" , ,", lex).empty());

  auto bad = parse_premise_list("Every wug is blump", lex);
  REQUIRE(bad.size() == 1);
  CHECK_FALSE(bad[0].formula.has_value());
  CHECK(bad[0].raw == "Every wug is blump");

  auto mixed = parse_premise_list("  all X3 ARE x5 ,some x1 are NOT x2, All x3 are zork", lex);
  REQUIRE(mixed.size() == 3);
  CHECK(mixed[0].formula == f("All x3 are x5"));
  CHECK(mixed[1].formula == f("Some x1 are not x2"));
  CHECK_FALSE(mixed[2].formula.has_value());
}

TEST_CASE("strict text parser round trip on generated KBs") {
  auto vocab = syllable_vocabulary(4);
  Rng rng(99);
  for (const auto& kb : gen_kbs(GenConfig::for_purpose(Purpose::Train, 4), 5, Purpose::Train)) {
    auto asg = random_assignment(vocab, kb.n_terms(), rng);
    auto perm = random_permutation(kb.size(), rng);
    Reasoner r(kb);
    auto h = Formula{Quantifier::A, kb[0].subj, kb[0].obj};
    auto gold = r.minimal_sets(h).front().premises;
    std::vector<StudyPair> study;
    for (std::size_t k = 1; k <= 3; ++k) {
      const auto& p = kb[k];
      study.push_back({Formula{Quantifier::A, p.subj, p.obj}, PremiseSet{}});
    }
    // Study premises only need to be KB members for the layout test.
    for (std::size_t k = 0; k < 3; ++k) study[k].premises.insert(k + 1);
    const auto text = render_episode(kb, study, h, gold, asg, perm);

    Lexicon lex(asg);
    auto parsed = parse_text(text, lex);
    REQUIRE(parsed.kb.size() == kb.size());
    for (std::size_t k = 0; k < perm.size(); ++k) CHECK(parsed.kb[k] == kb[perm[k]]);
    CHECK(parsed.study.size() == 3);
    CHECK(parsed.query.hypothesis == h);

    // Interning from the KB section recovers the structure up to renaming.
    Lexicon fresh;
    auto again = parse_text(text, fresh, true);
    CHECK(again.kb.size() == kb.size());
    CHECK(fresh.size() == kb.n_terms());
  }
}

TEST_CASE("strict parser rejects malformed text") {
  Lexicon lex(indexed_assignment(5));
  CHECK_THROWS_AS(parse_text("knowledge base: All x1 are x2", lex), InputError);
  CHECK_THROWS_AS(parse_text("kb: All x1 are x2 <QUERY> hypothesis: All x1 are x2 premises: All x1 are x2", lex),
                  InputError);
  CHECK_THROWS_AS(parse_text("knowledge base: All x1 are x2 <QUERY> hypothesis: All x1 are x2 premises: All x1 are x9", lex),
                  InputError);
  CHECK_THROWS_AS(parse_text("knowledge base: All x1 are x2,All x2 are x3 <QUERY> hypothesis: All x1 are x2 premises: All x1 are x2", lex),
                  InputError);
  auto ok = parse_text("knowledge base: All x1 are x2 <QUERY> hypothesis: All x1 are x2 premises: All x1 are x2", lex);
  CHECK(ok.kb.size() == 1);
  CHECK(ok.study.empty());
}
