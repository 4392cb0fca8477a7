#include <doctest.h>

#include <set>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "syllo/errors.hpp"
#include "syllo/logic.hpp"
#include "syllo/oracle.hpp"
#include "syllo/rng.hpp"

using namespace syllo;
using fixtures::f;

namespace {

PremiseSet indices_of(const KnowledgeBase& kb, const std::vector<std::string>& lines) {
  PremiseSet s;
  for (const auto& l : lines) {
    auto i = kb.index_of(f(l));
    REQUIRE_MESSAGE(i.has_value(), l);
    s.insert(*i);
  }
  return s;
}

void check_minimal(const KnowledgeBase& kb, const std::string& hyp,
                   const std::vector<std::string>& expected, int itype, int length) {
  CAPTURE(hyp);
  auto mi = minimal_premises(kb, f(hyp));
  REQUIRE(mi.has_value());
  CHECK(mi->premises == indices_of(kb, expected));
  CHECK(mi->itype == itype);
  CHECK(mi->length == length);
}

}  // namespace

TEST_CASE("a_reachable follows directed A-edges reflexively") {
  auto kb = fixtures::kb(2, {"All x1 are x2"});
  CHECK(a_reachable(kb, 0, 1));
  CHECK_FALSE(a_reachable(kb, 1, 0));
  CHECK(a_reachable(kb, 1, 1));
  CHECK_THROWS_AS(a_reachable(kb, 0, 2), InputError);

  auto intro = fixtures::intro_kb();
  CHECK(a_reachable(intro, f("All x3 are x7").subj, f("All x3 are x7").obj));
}

TEST_CASE("entails on small examples") {
  auto kb = fixtures::kb(4, {"All x2 are x3", "All x2 are x4"});
  CHECK(entails(kb, f("Some x3 are x4")));
  CHECK(entails(kb, f("Some x4 are x3")));

  auto one = fixtures::kb(2, {"All x1 are x2"});
  CHECK_FALSE(entails(one, f("Some x1 are not x2")));
  CHECK_FALSE(entails(one, f("All x2 are x1")));
  CHECK_THROWS_AS(entails(one, Formula{Quantifier::A, 0, 0}), InputError);

  // Two-edge chain a->b, one-edge chain c->d, E(b,d): concludes E(a,c).
  auto t6 = fixtures::kb(5, {"All x1 are x2", "All x2 are x3", "All x4 are x5", "No x3 are x5"});
  CHECK(entails(t6, f("No x1 are x4")));
  CHECK(entails(t6, f("No x4 are x1")));
  auto mi = minimal_premises(t6, f("No x1 are x4"));
  REQUIRE(mi);
  CHECK(mi->itype == 6);
  CHECK(mi->length == 3);
}

TEST_CASE("entails rejects inconsistent knowledge bases") {
  auto bad = fixtures::kb(3, {"All x1 are x2", "All x1 are x3", "No x2 are x3"});
  CHECK_FALSE(consistent_syntactic(bad));
  CHECK_THROWS_AS(entails(bad, f("All x1 are x2")), InconsistentKbError);
  CHECK_THROWS_AS(minimal_premises(bad, f("All x1 are x2")), InconsistentKbError);
}

TEST_CASE("consistent_syntactic examples") {
  CHECK(consistent_syntactic(fixtures::kb(3, {"All x1 are x2", "All x2 are x3"})));
  CHECK_FALSE(consistent_syntactic(fixtures::kb(2, {"All x1 are x2", "Some x1 are not x2"})));
  CHECK_FALSE(consistent_syntactic(fixtures::kb(2, {"Some x1 are x2", "No x2 are x1"})));
  CHECK(consistent_syntactic(fixtures::kb(3, {"All x1 are x2", "Some x3 are not x2"})));
}

TEST_CASE("minimal premises on trivial cases") {
  auto one = fixtures::kb(2, {"All x1 are x2"});
  check_minimal(one, "All x1 are x2", {"All x1 are x2"}, 2, 1);
  CHECK_FALSE(minimal_premises(one, f("Some x1 are not x2")).has_value());

  auto e = fixtures::kb(3, {"No x1 are x3"});
  check_minimal(e, "Some x1 are not x3", {"No x1 are x3"}, 3, 0);
  std::vector<Formula> only_e{f("No x1 are x3")};
  CHECK(entails_semantic(3, only_e, f("Some x1 are not x3"), ModelBound{4}));
  CHECK_FALSE(entails_semantic(3, std::vector<Formula>{}, f("Some x1 are not x3"), ModelBound{4}));

  auto redundant = fixtures::kb(3, {"All x1 are x2", "All x2 are x3", "All x1 are x3"});
  CHECK_THROWS_AS(minimal_premises(redundant, f("All x1 are x3")), RedundancyError);
  CHECK(all_minimal_premises(redundant, f("All x1 are x3")).size() == 2);
}

TEST_CASE("introductory example: query and study pairs") {
  auto kb = fixtures::intro_kb();
  REQUIRE(consistent_syntactic(kb));
  check_minimal(kb, "All x3 are x7", {"All x3 are x5", "All x5 are x7"}, 2, 2);
  check_minimal(kb, "All x8 are x11", {"All x8 are x9", "All x9 are x10", "All x10 are x11"}, 2, 3);
  check_minimal(kb, "All x1 are x3", {"All x1 are x2", "All x2 are x3"}, 2, 2);
}

TEST_CASE("seven-type example: one inference of each type") {
  auto kb = fixtures::seven_type_kb();
  REQUIRE(consistent_syntactic(kb));
  const std::vector<std::string> spine{"All x1 are x2",  "All x2 are x4",   "All x4 are x6",
                                       "All x6 are x8",  "All x8 are x9",   "All x9 are x10",
                                       "All x10 are x11", "All x11 are x12"};
  auto with = [](std::vector<std::string> a, const std::vector<std::string>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
  };

  check_minimal(kb, "Some x12 are not x1",
                {"All x1 are x2", "All x2 are x4", "All x11 are x12", "Some x11 are not x4"}, 1, 3);
  check_minimal(kb, "All x2 are x11",
                {"All x2 are x4", "All x4 are x6", "All x6 are x8", "All x8 are x9", "All x9 are x10",
                 "All x10 are x11"},
                2, 6);
  check_minimal(kb, "Some x3 are not x16",
                {"All x2 are x3", "All x2 are x4", "All x4 are x6", "All x6 are x8", "All x8 are x9",
                 "All x9 are x10", "All x10 are x11", "All x11 are x12", "All x16 are x18",
                 "All x18 are x20", "No x20 are x12"},
                3, 10);
  check_minimal(kb, "Some x7 are x8",
                {"All x2 are x3", "All x2 are x4", "All x3 are x5", "All x4 are x6", "All x5 are x7",
                 "All x6 are x8"},
                4, 6);
  check_minimal(kb, "Some x17 are not x14",
                with(spine, {"All x14 are x16", "All x16 are x18", "All x18 are x20",
                             "All x15 are x17", "No x20 are x12", "Some x15 are x1"}),
                5, 12);
  check_minimal(kb, "No x1 are x13",
                with(spine, {"All x13 are x14", "All x14 are x16", "All x16 are x18",
                             "All x18 are x20", "No x20 are x12"}),
                6, 12);
  check_minimal(kb, "Some x25 are x12",
                with(spine, {"All x15 are x17", "All x17 are x19", "All x19 are x21",
                             "All x21 are x22", "All x22 are x23", "All x23 are x24",
                             "All x24 are x25", "Some x15 are x1"}),
                7, 15);
}

TEST_CASE("negate is an involution with the expected duality") {
  CHECK(negate(f("No x2 are x3")) == f("Some x2 are x3"));
  CHECK(negate(f("All x1 are x2")) == f("Some x1 are not x2"));
  for (auto q : {Quantifier::A, Quantifier::E, Quantifier::I, Quantifier::O})
    for (TermId a = 0; a < 4; ++a)
      for (TermId b = 0; b < 4; ++b) {
        Formula x{q, a, b};
        CHECK(negate(negate(x)) == x);
      }
}

namespace {

KnowledgeBase random_small_kb(Rng& rng, std::size_t max_terms, std::size_t max_premises) {
  const std::size_t n = 2 + rng.below(max_terms - 1);
  const std::size_t m = rng.below(max_premises + 1);
  std::vector<Formula> ps;
  while (ps.size() < m) {
    auto a = static_cast<TermId>(rng.below(n));
    auto b = static_cast<TermId>(rng.below(n));
    if (a == b) continue;
    ps.push_back({static_cast<Quantifier>(rng.below(4)), a, b});
  }
  return KnowledgeBase("random", n, ps);
}

}  // namespace

TEST_CASE("properties on random consistent knowledge bases") {
  Rng rng(derive_seed(7, "logic-properties"));
  int checked = 0;
  for (int it = 0; it < 300; ++it) {
    auto kb = random_small_kb(rng, 5, 7);
    if (!consistent_syntactic(kb)) continue;
    ++checked;
    const auto n = static_cast<TermId>(kb.n_terms());
    for (auto q : {Quantifier::A, Quantifier::E, Quantifier::I, Quantifier::O})
      for (TermId x = 0; x < n; ++x)
        for (TermId y = 0; y < n; ++y) {
          if (x == y) continue;
          Formula h{q, x, y};
          const bool e = entails(kb, h);
          if (is_symmetric(q)) CHECK(e == entails(kb, Formula{q, y, x}));
          // Every minimal set entails h and no single removal does.
          for (const auto& mi : all_minimal_premises(kb, h)) {
            auto sub = kb.restricted_to(mi.premises);
            CHECK(Reasoner(sub).derivable(h));
            for (auto i : mi.premises.indices()) {
              auto smaller = mi.premises;
              smaller.erase(i);
              CHECK_FALSE(Reasoner(kb.restricted_to(smaller)).derivable(h));
            }
          }
          // Monotonicity under a consistent extension.
          if (e) {
            auto g = Formula{static_cast<Quantifier>(rng.below(4)), static_cast<TermId>(rng.below(n)),
                             static_cast<TermId>(rng.below(n))};
            if (g.subj != g.obj) {
              auto bigger = kb.with_premise(g);
              if (consistent_syntactic(bigger)) CHECK(entails(bigger, h));
            }
          }
        }
  }
  CHECK(checked > 50);
}
