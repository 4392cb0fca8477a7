#include "syllo/evaluator.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_map>

#include "syllo/errors.hpp"

namespace syllo {

GoldItem read_gold(const TextRecord& r) {
  GoldItem g;
  g.id = r.id;
  g.itype = r.itype;
  g.length = r.length;
  ParsedText p;
  try {
    p = parse_text(r.text, g.lex, true);
  } catch (const InputError& e) {
    throw InputError("gold record " + r.id + ": " + e.what());
  }
  g.kb = std::move(p.kb);
  for (const auto& s : r.gold) {
    auto f = parse_formula(s, g.lex);
    if (!f) throw InputError("gold record " + r.id + ": cannot read gold premise '" + s + "'");
    g.gold.push_back(*f);
  }
  if (g.gold != p.query.premises)
    throw InputError("gold record " + r.id + ": gold list differs from the query premises");
  return g;
}

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::Correct: return "correct";
    case Outcome::Nvm: return "nvm";
    case Outcome::Map: return "map";
    case Outcome::Residual: return "residual";
  }
  return "?";
}

Score score(const GoldItem& gold, std::string_view raw_text) {
  const std::set<Formula> kb(gold.kb.begin(), gold.kb.end());
  const std::set<Formula> want(gold.gold.begin(), gold.gold.end());
  std::set<Formula> got;
  Score s;
  for (const auto& item : parse_premise_list(raw_text, gold.lex)) {
    if (!item.formula) {
      ++s.hallucinated;
      continue;
    }
    Formula f = *item.formula;
    if (!kb.count(f) && is_symmetric(f.q)) std::swap(f.subj, f.obj);
    if (kb.count(f)) got.insert(f);
    else ++s.hallucinated;
  }
  s.hp = s.hallucinated > 0;
  if (!s.hp && got == want) return s;

  const bool superset = std::includes(got.begin(), got.end(), want.begin(), want.end());
  if (superset && got.size() > want.size()) {
    s.outcome = Outcome::Nvm;
    s.extra_count = static_cast<int>(got.size() - want.size());
    return s;
  }
  for (const auto& f : want)
    if (f.q == Quantifier::A && !got.count(f)) ++s.missing_a_count;
  s.outcome = s.missing_a_count > 0 ? Outcome::Map : Outcome::Residual;
  return s;
}

void MetricsAccumulator::add(int itype, int length, const Score& s) {
  auto& c = cells[{itype, length}];
  ++c.total;
  switch (s.outcome) {
    case Outcome::Correct: ++c.correct; break;
    case Outcome::Nvm:
      ++nvm;
      nvm_extra_sum += static_cast<std::size_t>(s.extra_count);
      break;
    case Outcome::Map:
      ++map;
      map_missing_sum += static_cast<std::size_t>(s.missing_a_count);
      break;
    case Outcome::Residual: ++residual; break;
  }
  if (s.hp) ++hp;
}

MetricsAccumulator& MetricsAccumulator::operator+=(const MetricsAccumulator& o) {
  for (const auto& [k, c] : o.cells) {
    cells[k].total += c.total;
    cells[k].correct += c.correct;
  }
  nvm += o.nvm;
  map += o.map;
  residual += o.residual;
  hp += o.hp;
  nvm_extra_sum += o.nvm_extra_sum;
  map_missing_sum += o.map_missing_sum;
  return *this;
}

namespace {

constexpr std::size_t kGroupSize = 5;

double pct(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : 100.0 * static_cast<double>(num) / static_cast<double>(den);
}

double mean(std::size_t sum, std::size_t n) {
  return n == 0 ? 0.0 : static_cast<double>(sum) / static_cast<double>(n);
}

}  // namespace

MetricsReport make_report(const MetricsAccumulator& acc, const CellMask* mask) {
  std::map<int, std::vector<int>> lengths;
  if (mask) {
    for (const auto& r : mask->ranges())
      for (int len = r.min_len; len <= r.max_len; ++len) lengths[r.itype].push_back(len);
  } else {
    for (const auto& [k, c] : acc.cells) lengths[k.first].push_back(k.second);
  }
  std::map<std::pair<int, int>, LengthGroup> group;
  for (auto& [t, ls] : lengths) {
    std::sort(ls.begin(), ls.end());
    ls.erase(std::unique(ls.begin(), ls.end()), ls.end());
    const std::size_t n_short = std::min(kGroupSize, ls.size());
    const std::size_t n_long = std::min(kGroupSize, ls.size() - n_short);
    for (std::size_t i = 0; i < n_short; ++i) group[{t, ls[i]}] = LengthGroup::Short;
    for (std::size_t i = ls.size() - n_long; i < ls.size(); ++i) group[{t, ls[i]}] = LengthGroup::Long;
  }

  MetricsReport r;
  std::size_t short_correct = 0, long_correct = 0;
  for (const auto& [k, c] : acc.cells) {
    CellReport cr{k.first, k.second, c.total, c.correct, pct(c.correct, c.total), LengthGroup::None};
    if (auto it = group.find(k); it != group.end()) cr.group = it->second;
    r.total += c.total;
    r.correct += c.correct;
    if (cr.group == LengthGroup::Short) {
      r.short_total += c.total;
      short_correct += c.correct;
    } else if (cr.group == LengthGroup::Long) {
      r.long_total += c.total;
      long_correct += c.correct;
    }
    r.cells.push_back(cr);
  }
  r.error_count = r.total - r.correct;
  r.accuracy_all = pct(r.correct, r.total);
  r.accuracy_short = pct(short_correct, r.short_total);
  r.accuracy_long = pct(long_correct, r.long_total);
  r.nvm_count = acc.nvm;
  r.nvm_pct = pct(acc.nvm, r.error_count);
  r.avg_nvm = mean(acc.nvm_extra_sum, acc.nvm);
  r.map_count = acc.map;
  r.map_pct = pct(acc.map, r.error_count);
  r.avg_map = mean(acc.map_missing_sum, acc.map);
  r.hp_count = acc.hp;
  r.hp_pct = pct(acc.hp, r.error_count);
  r.residual_count = acc.residual;
  r.residual_pct = pct(acc.residual, r.error_count);
  if (acc.nvm + acc.map + acc.residual != r.error_count)
    throw InternalError("error partition does not add up");
  return r;
}

Evaluation evaluate(const std::vector<TextRecord>& gold, const std::vector<PredictionRecord>& preds,
                    const CellMask* mask) {
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < gold.size(); ++i)
    if (!index.emplace(gold[i].id, i).second)
      throw InputError("gold file repeats episode id " + gold[i].id);
  std::set<std::string> seen;
  Evaluation ev;
  MetricsAccumulator acc;
  for (const auto& p : preds) {
    auto it = index.find(p.episode_id);
    if (it == index.end()) throw InputError("prediction for unknown episode id '" + p.episode_id + "'");
    if (!seen.insert(p.episode_id).second)
      throw InputError("repeated prediction for episode id '" + p.episode_id + "'");
    const TextRecord& g = gold[it->second];
    const Score s = score(read_gold(g), p.raw_text);
    acc.add(g.itype, g.length, s);
    ev.scored.push_back({p.episode_id, g.itype, g.length, s});
  }
  ev.unpredicted = gold.size() - seen.size();
  ev.report = make_report(acc, mask);
  return ev;
}

std::vector<std::string> compare_reports(const MetricsReport& a, const MetricsReport& b,
                                         double tolerance) {
  std::vector<std::string> out;
  auto count = [&](const char* name, std::size_t x, std::size_t y) {
    if (x != y) out.push_back(std::string(name) + ": " + std::to_string(x) + " vs " + std::to_string(y));
  };
  auto rate = [&](const std::string& name, double x, double y) {
    if (std::fabs(x - y) > tolerance)
      out.push_back(name + ": " + std::to_string(x) + " vs " + std::to_string(y));
  };
  count("total", a.total, b.total);
  count("short_total", a.short_total, b.short_total);
  count("long_total", a.long_total, b.long_total);
  rate("accuracy_all", a.accuracy_all, b.accuracy_all);
  rate("accuracy_short", a.accuracy_short, b.accuracy_short);
  rate("accuracy_long", a.accuracy_long, b.accuracy_long);
  rate("nvm_pct", a.nvm_pct, b.nvm_pct);
  rate("avg_nvm", a.avg_nvm, b.avg_nvm);
  rate("map_pct", a.map_pct, b.map_pct);
  rate("avg_map", a.avg_map, b.avg_map);
  rate("hp_pct", a.hp_pct, b.hp_pct);
  rate("residual_pct", a.residual_pct, b.residual_pct);

  std::map<std::pair<int, int>, const CellReport*> cb;
  for (const auto& c : b.cells) cb[{c.itype, c.length}] = &c;
  for (const auto& c : a.cells) {
    const std::string name = "cell " + std::to_string(c.itype) + "/" + std::to_string(c.length);
    auto it = cb.find({c.itype, c.length});
    if (it == cb.end()) {
      out.push_back(name + ": missing in second report");
      continue;
    }
    count((name + " total").c_str(), c.total, it->second->total);
    rate(name + " accuracy", c.accuracy, it->second->accuracy);
    cb.erase(it);
  }
  for (const auto& [k, c] : cb)
    out.push_back("cell " + std::to_string(k.first) + "/" + std::to_string(k.second) +
                  ": missing in first report");
  return out;
}

std::map<std::string, MeanStd> summarize_reports(const std::vector<MetricsReport>& reports) {
  const std::vector<std::pair<std::string, double MetricsReport::*>> fields = {
      {"accuracy_all", &MetricsReport::accuracy_all}, {"accuracy_short", &MetricsReport::accuracy_short},
      {"accuracy_long", &MetricsReport::accuracy_long}, {"nvm_pct", &MetricsReport::nvm_pct},
      {"avg_nvm", &MetricsReport::avg_nvm},           {"map_pct", &MetricsReport::map_pct},
      {"avg_map", &MetricsReport::avg_map},           {"hp_pct", &MetricsReport::hp_pct},
      {"residual_pct", &MetricsReport::residual_pct}};
  std::map<std::string, MeanStd> out;
  if (reports.empty()) return out;
  const double n = static_cast<double>(reports.size());
  for (const auto& [name, field] : fields) {
    double sum = 0;
    for (const auto& r : reports) sum += r.*field;
    const double m = sum / n;
    double ss = 0;
    for (const auto& r : reports) ss += (r.*field - m) * (r.*field - m);
    out[name] = {m, reports.size() > 1 ? std::sqrt(ss / (n - 1)) : 0.0};
  }
  return out;
}

}  // namespace syllo
