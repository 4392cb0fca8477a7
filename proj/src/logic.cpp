#include "syllo/logic.hpp"

#include <algorithm>
#include <string>

#include "syllo/errors.hpp"

namespace syllo {

Reasoner::Reasoner(const KnowledgeBase& kb) : kb_(&kb), n_(kb.n_terms()) {
  words_ = (n_ + 63) / 64;
  a_out_.resize(n_);
  reach_.assign(n_, Bits(words_, 0));
  ancestors_.assign(n_, Bits(words_, 0));
  for (std::size_t i = 0; i < kb.size(); ++i) {
    const Formula& f = kb[i];
    switch (f.q) {
      case Quantifier::A: a_out_[f.subj].emplace_back(f.obj, i); break;
      case Quantifier::E: e_idx_.push_back(i); break;
      case Quantifier::I: i_idx_.push_back(i); break;
      case Quantifier::O: o_idx_.push_back(i); break;
    }
  }
  // Breadth-first closure from every term; n is small.
  std::vector<TermId> stack;
  for (TermId s = 0; s < n_; ++s) {
    auto& row = reach_[s];
    row[s >> 6] |= std::uint64_t{1} << (s & 63);
    stack.assign(1, s);
    while (!stack.empty()) {
      TermId u = stack.back();
      stack.pop_back();
      for (auto [v, idx] : a_out_[u]) {
        (void)idx;
        if (!((row[v >> 6] >> (v & 63)) & 1U)) {
          row[v >> 6] |= std::uint64_t{1} << (v & 63);
          stack.push_back(v);
        }
      }
    }
  }
  for (TermId x = 0; x < n_; ++x)
    for (TermId y = 0; y < n_; ++y)
      if (reach(x, y)) ancestors_[y][x >> 6] |= std::uint64_t{1} << (x & 63);
}

void Reasoner::check_term(TermId t) const {
  if (t >= n_)
    throw InputError("term " + std::to_string(t) + " outside [0, " + std::to_string(n_) + ")");
}

bool Reasoner::a_reachable(TermId x, TermId y) const {
  check_term(x);
  check_term(y);
  return reach(x, y);
}

bool Reasoner::common_ancestor(TermId x, TermId y) const {
  for (std::size_t k = 0; k < words_; ++k)
    if ((ancestors_[x][k] & ancestors_[y][k]) != 0) return true;
  return false;
}

std::vector<PremiseSet> Reasoner::a_chains(TermId from, TermId to) const {
  check_term(from);
  check_term(to);
  std::vector<PremiseSet> out;
  if (!reach(from, to)) return out;
  if (from == to) {
    out.emplace_back();
    return out;
  }
  std::vector<bool> on_path(n_, false);
  PremiseSet current;
  auto dfs = [&](auto&& self, TermId u) -> void {
    if (u == to) {
      out.push_back(current);
      return;
    }
    on_path[u] = true;
    for (auto [v, idx] : a_out_[u]) {
      if (on_path[v] || !reach(v, to)) continue;
      current.insert(idx);
      self(self, v);
      current.erase(idx);
    }
    on_path[u] = false;
  };
  dfs(dfs, from);
  return out;
}

bool Reasoner::derivable(const Formula& h) const {
  check_term(h.subj);
  check_term(h.obj);
  const TermId x = h.subj;
  const TermId y = h.obj;
  const auto& P = kb_->premises();
  switch (h.q) {
    case Quantifier::A:
      return reach(x, y);
    case Quantifier::I:
      if (common_ancestor(x, y)) return true;
      for (auto i : i_idx_) {
        const auto [u, v] = std::pair{P[i].subj, P[i].obj};
        if ((reach(u, x) && reach(v, y)) || (reach(v, x) && reach(u, y))) return true;
      }
      return false;
    case Quantifier::E:
      for (auto i : e_idx_) {
        const auto [u, v] = std::pair{P[i].subj, P[i].obj};
        if ((reach(x, u) && reach(y, v)) || (reach(x, v) && reach(y, u))) return true;
      }
      return false;
    case Quantifier::O:
      for (auto i : o_idx_)
        if (reach(P[i].subj, x) && reach(y, P[i].obj)) return true;
      for (auto i : e_idx_) {
        const auto [u, v] = std::pair{P[i].subj, P[i].obj};
        if ((reach(y, u) && common_ancestor(x, v)) || (reach(y, v) && common_ancestor(x, u)))
          return true;
      }
      for (auto i : i_idx_) {
        for (auto e : e_idx_) {
          for (int io = 0; io < 2; ++io) {
            const TermId a = io ? P[i].obj : P[i].subj;
            const TermId ee = io ? P[i].subj : P[i].obj;
            for (int eo = 0; eo < 2; ++eo) {
              const TermId d = eo ? P[e].obj : P[e].subj;
              const TermId f = eo ? P[e].subj : P[e].obj;
              if (reach(a, x) && reach(ee, f) && reach(y, d)) return true;
            }
          }
        }
      }
      return false;
  }
  return false;
}

bool Reasoner::consistent() const {
  const auto& P = kb_->premises();
  for (auto i : o_idx_)
    if (reach(P[i].subj, P[i].obj)) return false;
  for (auto i : e_idx_)
    if (derivable(Formula{Quantifier::I, P[i].subj, P[i].obj})) return false;
  return true;
}

namespace {

// Appends every union a|b|c|extra with a, b, c drawn from the given lists.
void add_products(std::vector<Reasoner::Candidate>& out, int itype, const PremiseSet& extra,
                  const std::vector<PremiseSet>& l1, const std::vector<PremiseSet>& l2,
                  const std::vector<PremiseSet>& l3) {
  for (const auto& a : l1)
    for (const auto& b : l2)
      for (const auto& c : l3) out.push_back({a | b | c | extra, itype});
}

}  // namespace

std::vector<Reasoner::Candidate> Reasoner::candidates(const Formula& h,
                                                     std::optional<std::size_t> through) const {
  check_term(h.subj);
  check_term(h.obj);
  std::vector<Candidate> out;
  auto skip = [&](std::size_t i) { return through && *through != i; };
  const TermId x = h.subj;
  const TermId y = h.obj;
  const auto& P = kb_->premises();
  static const std::vector<PremiseSet> unit(1);

  switch (h.q) {
    case Quantifier::A:
      if (through) break;
      for (auto& c : a_chains(x, y)) out.push_back({c, 2});
      break;

    case Quantifier::I:
      if (!through)
        for (TermId a = 0; a < n_; ++a)
          if (reach(a, x) && reach(a, y))
            add_products(out, 4, {}, a_chains(a, x), a_chains(a, y), unit);
      for (auto i : i_idx_) {
        if (skip(i)) continue;
        for (int o = 0; o < 2; ++o) {
          const TermId a = o ? P[i].obj : P[i].subj;
          const TermId c = o ? P[i].subj : P[i].obj;
          if (reach(a, x) && reach(c, y))
            add_products(out, 7, PremiseSet{i}, a_chains(a, x), a_chains(c, y), unit);
        }
      }
      break;

    case Quantifier::E:
      for (auto i : e_idx_) {
        if (skip(i)) continue;
        for (int o = 0; o < 2; ++o) {
          const TermId b = o ? P[i].obj : P[i].subj;
          const TermId d = o ? P[i].subj : P[i].obj;
          if (reach(x, b) && reach(y, d))
            add_products(out, 6, PremiseSet{i}, a_chains(x, b), a_chains(y, d), unit);
        }
      }
      break;

    case Quantifier::O:
      for (auto i : o_idx_) {
        if (skip(i)) continue;
        const TermId a = P[i].subj;
        const TermId d = P[i].obj;
        if (reach(a, x) && reach(y, d))
          add_products(out, 1, PremiseSet{i}, a_chains(a, x), a_chains(y, d), unit);
      }
      for (auto i : e_idx_) {
        if (skip(i)) continue;
        for (int o = 0; o < 2; ++o) {
          const TermId d = o ? P[i].obj : P[i].subj;
          const TermId e = o ? P[i].subj : P[i].obj;
          if (!reach(y, d)) continue;
          auto to_d = a_chains(y, d);
          for (TermId a = 0; a < n_; ++a)
            if (reach(a, x) && reach(a, e))
              add_products(out, 3, PremiseSet{i}, a_chains(a, x), to_d, a_chains(a, e));
        }
      }
      for (auto i : i_idx_) {
        for (auto e : e_idx_) {
          if (through && *through != i && *through != e) continue;
          for (int io = 0; io < 2; ++io) {
            const TermId a = io ? P[i].obj : P[i].subj;
            const TermId ee = io ? P[i].subj : P[i].obj;
            for (int eo = 0; eo < 2; ++eo) {
              const TermId d = eo ? P[e].obj : P[e].subj;
              const TermId f = eo ? P[e].subj : P[e].obj;
              if (reach(a, x) && reach(ee, f) && reach(y, d))
                add_products(out, 5, PremiseSet{i, e}, a_chains(a, x), a_chains(y, d),
                             a_chains(ee, f));
            }
          }
        }
      }
      break;
  }
  return out;
}

std::vector<Reasoner::Candidate> Reasoner::minimal_sets(const Formula& h) const {
  auto all = candidates(h);
  std::sort(all.begin(), all.end(), [](const Candidate& a, const Candidate& b) {
    if (a.premises != b.premises) return a.premises < b.premises;
    return a.itype < b.itype;
  });
  all.erase(std::unique(all.begin(), all.end(),
                        [](const Candidate& a, const Candidate& b) { return a.premises == b.premises; }),
            all.end());
  std::vector<Candidate> out;
  for (std::size_t i = 0; i < all.size(); ++i) {
    bool minimal = true;
    for (std::size_t j = 0; j < all.size() && minimal; ++j)
      if (j != i && all[j].premises.is_proper_subset_of(all[i].premises)) minimal = false;
    if (minimal) out.push_back(all[i]);
  }
  return out;
}

int Reasoner::length_of(const PremiseSet& s) const {
  int n = 0;
  for (auto i : s.indices())
    if (i < kb_->size() && (*kb_)[i].q == Quantifier::A) ++n;
  return n;
}

namespace {

void check_hypothesis(const KnowledgeBase& kb, const Formula& h) {
  if (h.subj >= kb.n_terms() || h.obj >= kb.n_terms())
    throw InputError("hypothesis " + to_string(h) + " references a term outside [0, " +
                     std::to_string(kb.n_terms()) + ")");
  if (h.subj == h.obj) throw InputError("reflexive hypothesis " + to_string(h) + " not accepted");
}

void require_consistent(const Reasoner& r) {
  if (!r.consistent()) throw InconsistentKbError("knowledge base " + r.kb().id() + " is inconsistent");
}

}  // namespace

bool a_reachable(const KnowledgeBase& kb, TermId x, TermId y) {
  return Reasoner(kb).a_reachable(x, y);
}

bool entails(const KnowledgeBase& kb, const Formula& h) {
  check_hypothesis(kb, h);
  Reasoner r(kb);
  require_consistent(r);
  return r.derivable(h);
}

std::vector<MinimalInference> all_minimal_premises(const KnowledgeBase& kb, const Formula& h) {
  check_hypothesis(kb, h);
  Reasoner r(kb);
  require_consistent(r);
  std::vector<MinimalInference> out;
  if (!r.derivable(h)) return out;
  for (const auto& c : r.minimal_sets(h))
    out.push_back(MinimalInference{c.itype, h, c.premises, r.length_of(c.premises)});
  return out;
}

std::optional<MinimalInference> minimal_premises(const KnowledgeBase& kb, const Formula& h) {
  auto all = all_minimal_premises(kb, h);
  if (all.empty()) return std::nullopt;
  if (all.size() > 1)
    throw RedundancyError("hypothesis " + to_string(h) + " has " + std::to_string(all.size()) +
                          " minimal premise sets in knowledge base " + kb.id());
  return all.front();
}

bool consistent_syntactic(const KnowledgeBase& kb) { return Reasoner(kb).consistent(); }

}  // namespace syllo
