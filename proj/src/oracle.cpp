#include "syllo/oracle.hpp"

#include <bit>
#include <string>

#include "syllo/errors.hpp"

namespace syllo {
namespace {

using Profile = std::uint32_t;

bool has(Profile p, TermId t) { return (p >> t) & 1U; }

// Universal formulas constrain single elements.
bool profile_allowed(Profile p, std::span<const Formula> formulas) {
  for (const auto& f : formulas) {
    if (f.q == Quantifier::A && has(p, f.subj) && !has(p, f.obj)) return false;
    if (f.q == Quantifier::E && has(p, f.subj) && has(p, f.obj)) return false;
  }
  return true;
}

void check_terms(std::size_t n_terms, std::span<const Formula> formulas) {
  for (const auto& f : formulas)
    if (f.subj >= n_terms || f.obj >= n_terms)
      throw InputError("formula " + to_string(f) + " references a term outside [0, " +
                       std::to_string(n_terms) + ")");
}

void check_size(std::size_t n_terms, const OracleOptions& opts) {
  if (opts.max_terms > kOracleHardTermCap)
    throw InputError("oracle term limit " + std::to_string(opts.max_terms) + " exceeds hard cap " +
                     std::to_string(kOracleHardTermCap));
  if (n_terms > opts.max_terms)
    throw InputError("oracle refuses " + std::to_string(n_terms) + " terms (limit " +
                     std::to_string(opts.max_terms) + ")");
  if (n_terms == 0) throw InputError("oracle needs at least one term");
}

Interpretation from_profiles(std::size_t n_terms, const std::vector<Profile>& elements) {
  Interpretation m;
  m.universe_size = elements.size();
  m.extents.assign(n_terms, 0);
  for (std::size_t j = 0; j < elements.size(); ++j)
    for (TermId t = 0; t < n_terms; ++t)
      if (has(elements[j], t)) m.extents[t] |= std::uint64_t{1} << j;
  return m;
}

bool satisfies_all(const Interpretation& m, std::span<const Formula> formulas) {
  for (auto e : m.extents)
    if (e == 0) return false;
  for (const auto& f : formulas)
    if (!satisfies(m, f)) return false;
  return true;
}

}  // namespace

bool satisfies(const Interpretation& m, const Formula& f) {
  const std::uint64_t a = m.extents.at(f.subj);
  const std::uint64_t b = m.extents.at(f.obj);
  switch (f.q) {
    case Quantifier::A: return (a & ~b) == 0;
    case Quantifier::E: return (a & b) == 0;
    case Quantifier::I: return (a & b) != 0;
    case Quantifier::O: return (a & ~b) != 0;
  }
  return false;
}

std::size_t completeness_bound(std::size_t n_terms, std::span<const Formula> formulas) {
  std::size_t n = n_terms;
  for (const auto& f : formulas)
    if (!is_universal(f.q)) ++n;
  return n;
}

std::optional<Interpretation> find_model(std::size_t n_terms, std::span<const Formula> formulas,
                                         ModelBound bound, const OracleOptions& opts) {
  check_size(n_terms, opts);
  check_terms(n_terms, formulas);
  const std::size_t need = completeness_bound(n_terms, formulas);
  if (bound.max_universe < need)
    throw BoundError("model bound " + std::to_string(bound.max_universe) +
                     " below completeness threshold " + std::to_string(need));
  if (need > 64) throw InputError("oracle supports at most 64 witnesses");

  std::vector<Profile> allowed;
  const Profile total = Profile{1} << n_terms;
  for (Profile p = 0; p < total; ++p)
    if (profile_allowed(p, formulas)) allowed.push_back(p);

  auto witness = [&](auto pred) -> std::optional<Profile> {
    for (auto p : allowed)
      if (pred(p)) return p;
    return std::nullopt;
  };

  std::vector<Profile> elements;
  for (TermId t = 0; t < n_terms; ++t) {
    auto w = witness([t](Profile p) { return has(p, t); });
    if (!w) return std::nullopt;
    elements.push_back(*w);
  }
  for (const auto& f : formulas) {
    if (is_universal(f.q)) continue;
    const bool want_obj = f.q == Quantifier::I;
    auto w = witness([&](Profile p) { return has(p, f.subj) && has(p, f.obj) == want_obj; });
    if (!w) return std::nullopt;
    elements.push_back(*w);
  }
  auto m = from_profiles(n_terms, elements);
  if (!satisfies_all(m, formulas)) throw InternalError("oracle constructed a non-model");
  return m;
}

bool consistent_semantic(const KnowledgeBase& kb, ModelBound bound, const OracleOptions& opts) {
  return find_model(kb.n_terms(), kb.premises(), bound, opts).has_value();
}

std::size_t entailment_bound(std::size_t n_terms, std::span<const Formula> premises,
                             const Formula& h) {
  return completeness_bound(n_terms, premises) + (is_universal(negate(h).q) ? 0 : 1);
}

bool entails_semantic(std::size_t n_terms, std::span<const Formula> premises, const Formula& h,
                      ModelBound bound, const OracleOptions& opts) {
  std::vector<Formula> refuted(premises.begin(), premises.end());
  refuted.push_back(negate(h));
  return !find_model(n_terms, refuted, bound, opts).has_value();
}

bool entails_semantic(const KnowledgeBase& kb, const Formula& h, ModelBound bound,
                      const OracleOptions& opts) {
  return entails_semantic(kb.n_terms(), kb.premises(), h, bound, opts);
}

std::vector<PremiseSet> minimal_premise_sets_semantic(const KnowledgeBase& kb, const Formula& h,
                                                      const OracleOptions& opts) {
  const std::size_t m = kb.size();
  if (m > 20) throw InputError("subset enumeration limited to 20 premises");
  std::vector<std::uint32_t> entailing;
  std::vector<Formula> subset;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << m); ++mask) {
    subset.clear();
    for (std::size_t i = 0; i < m; ++i)
      if ((mask >> i) & 1U) subset.push_back(kb[i]);
    const ModelBound b{entailment_bound(kb.n_terms(), subset, h)};
    if (entails_semantic(kb.n_terms(), subset, h, b, opts)) entailing.push_back(mask);
  }
  std::vector<PremiseSet> out;
  for (auto s : entailing) {
    bool minimal = true;
    for (auto t : entailing)
      if (t != s && (t & ~s) == 0) {
        minimal = false;
        break;
      }
    if (!minimal) continue;
    PremiseSet ps;
    for (std::size_t i = 0; i < m; ++i)
      if ((s >> i) & 1U) ps.insert(i);
    out.push_back(ps);
  }
  return out;
}

namespace {

// Calls visit(elements) for each nondecreasing profile sequence of length
// size; stops early when visit returns true.
template <typename Visit>
bool for_each_structure(std::size_t n_terms, std::size_t size, Visit visit) {
  if (n_terms > kOracleHardTermCap || size == 0 || size > 64)
    throw InputError("exhaustive enumeration out of range");
  const Profile total = Profile{1} << n_terms;
  std::vector<Profile> elems(size, 0);
  while (true) {
    if (visit(elems)) return true;
    std::size_t k = size;
    while (k > 0 && elems[k - 1] + 1 == total) --k;
    if (k == 0) return false;
    const Profile next = elems[k - 1] + 1;
    for (std::size_t j = k - 1; j < size; ++j) elems[j] = next;
  }
}

}  // namespace

bool exists_model_exhaustive(std::size_t n_terms, std::span<const Formula> formulas,
                             std::size_t universe_size) {
  check_terms(n_terms, formulas);
  return for_each_structure(n_terms, universe_size, [&](const std::vector<Profile>& e) {
    return satisfies_all(from_profiles(n_terms, e), formulas);
  });
}

bool entails_exhaustive(std::size_t n_terms, std::span<const Formula> premises, const Formula& h,
                        std::size_t max_universe) {
  check_terms(n_terms, premises);
  check_terms(n_terms, std::span<const Formula>(&h, 1));
  for (std::size_t u = 1; u <= max_universe; ++u) {
    const bool counter = for_each_structure(n_terms, u, [&](const std::vector<Profile>& e) {
      auto m = from_profiles(n_terms, e);
      return satisfies_all(m, premises) && !satisfies(m, h);
    });
    if (counter) return false;
  }
  return true;
}

}  // namespace syllo
