#include "fsqca/minimize.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>

namespace fsqca {

std::string to_string(SolutionKind kind) {
  switch (kind) {
    case SolutionKind::complex_solution: return "complex";
    case SolutionKind::parsimonious: return "parsimonious";
    case SolutionKind::intermediate: return "intermediate";
  }
  return "complex";
}

bool DirectionalExpectations::all_agnostic() const {
  for (Expectation e : per_condition) {
    if (e != Expectation::agnostic) return false;
  }
  return true;
}

DirectionalExpectations DirectionalExpectations::agnostic(unsigned k) {
  return DirectionalExpectations{std::vector<Expectation>(k, Expectation::agnostic)};
}

namespace {

std::uint64_t implicant_key(std::uint32_t bits, std::uint32_t mask) {
  return (std::uint64_t{mask} << 32) | bits;
}

} // namespace

std::vector<Implicant> prime_implicants(const std::vector<std::uint32_t>& on_set,
                                        const std::vector<std::uint32_t>& dc_set, unsigned k) {
  if (k == 0 || k > kMaxConditions) {
    throw ConfigError("condition count must be in [1, " + std::to_string(kMaxConditions) + "]");
  }
  if (on_set.empty()) throw DataError("no positive rows to explain: the table has no solution");

  const std::uint32_t n_corners = 1u << k;
  const std::set<std::uint32_t> on(on_set.begin(), on_set.end());
  const std::set<std::uint32_t> dc(dc_set.begin(), dc_set.end());
  for (std::uint32_t c : on) {
    if (c >= n_corners) throw ConfigError("corner value out of range for k");
    if (dc.count(c)) throw InternalError("on-set and don't-care set overlap at corner " +
                                         std::to_string(c));
  }
  for (std::uint32_t c : dc) {
    if (c >= n_corners) throw ConfigError("corner value out of range for k");
  }

  // Classic merging: group same-mask implicants by popcount of their value
  // bits; two that differ in exactly one specified bit combine into the
  // implicant with that bit released. Unmerged survivors are maximal.
  const std::uint32_t full_mask = n_corners - 1u;
  std::map<std::uint32_t, std::set<std::uint32_t>> level; // mask -> value bits
  for (std::uint32_t c : on) level[full_mask].insert(c);
  for (std::uint32_t c : dc) level[full_mask].insert(c);

  std::set<std::uint64_t> primes;
  while (!level.empty()) {
    std::map<std::uint32_t, std::set<std::uint32_t>> next;
    for (const auto& [mask, bits_set] : level) {
      std::map<int, std::vector<std::uint32_t>> by_ones;
      for (std::uint32_t b : bits_set) by_ones[std::popcount(b)].push_back(b);
      std::set<std::uint32_t> merged;
      for (const auto& [ones, group] : by_ones) {
        const auto upper = by_ones.find(ones + 1);
        if (upper == by_ones.end()) continue;
        for (std::uint32_t a : group) {
          for (std::uint32_t b : upper->second) {
            const std::uint32_t diff = a ^ b;
            if (std::popcount(diff) != 1) continue;
            merged.insert(a);
            merged.insert(b);
            next[mask & ~diff].insert(a & ~diff);
          }
        }
      }
      for (std::uint32_t b : bits_set) {
        if (!merged.count(b)) primes.insert(implicant_key(b, mask));
      }
    }
    level = std::move(next);
  }

  std::vector<Implicant> result;
  for (std::uint64_t key : primes) {
    const Implicant imp(k, static_cast<std::uint32_t>(key), static_cast<std::uint32_t>(key >> 32));
    bool covers_on = false;
    for (std::uint32_t c : on) {
      if (imp.covers(c)) {
        covers_on = true;
        break;
      }
    }
    if (covers_on) result.push_back(imp);
  }
  std::sort(result.begin(), result.end());
  return result;
}

namespace {

/// Exhaustive enumeration of every completion of exactly `limit` candidate
/// implicants that covers all still-uncovered corners. At each node the
/// uncovered corner with the fewest candidate coverers is branched on, so
/// every cover is reachable; duplicates from different branch orders are
/// folded by the caller's canonical set.
struct CoverSearch {
  const std::vector<std::vector<std::size_t>>& coverers; // per corner: candidate idx
  const std::vector<std::vector<std::size_t>>& covers_of; // per candidate: corner idx
  std::size_t n_corners;

  std::vector<int> cover_count;  // per corner: how many chosen candidates cover it
  std::vector<std::size_t> chosen;
  std::set<std::vector<std::size_t>>* out = nullptr;
  std::size_t limit = 0;
  std::size_t best = SIZE_MAX; // used by the minimum-size pass

  bool all_covered() const {
    for (std::size_t c = 0; c < n_corners; ++c) {
      if (cover_count[c] == 0) return false;
    }
    return true;
  }

  std::size_t pick_corner() const {
    std::size_t pick = SIZE_MAX;
    std::size_t fewest = SIZE_MAX;
    for (std::size_t c = 0; c < n_corners; ++c) {
      if (cover_count[c] != 0) continue;
      if (coverers[c].size() < fewest) {
        fewest = coverers[c].size();
        pick = c;
      }
    }
    return pick;
  }

  void choose(std::size_t cand) {
    chosen.push_back(cand);
    for (std::size_t c : covers_of[cand]) ++cover_count[c];
  }
  void unchoose(std::size_t cand) {
    chosen.pop_back();
    for (std::size_t c : covers_of[cand]) --cover_count[c];
  }

  // Pass 1: find the minimum completion size.
  void find_minimum() {
    const std::size_t corner = pick_corner();
    if (corner == SIZE_MAX) {
      best = std::min(best, chosen.size());
      return;
    }
    if (chosen.size() + 1 >= best) return; // any completion is at least one bigger
    for (std::size_t cand : coverers[corner]) {
      choose(cand);
      find_minimum();
      unchoose(cand);
    }
  }

  // Pass 2: collect every completion of size exactly `limit`.
  void enumerate() {
    const std::size_t corner = pick_corner();
    if (corner == SIZE_MAX) {
      if (chosen.size() == limit) {
        std::vector<std::size_t> sorted = chosen;
        std::sort(sorted.begin(), sorted.end());
        out->insert(std::move(sorted));
      }
      return;
    }
    if (chosen.size() >= limit) return;
    for (std::size_t cand : coverers[corner]) {
      choose(cand);
      enumerate();
      unchoose(cand);
    }
  }
};

} // namespace

std::vector<std::vector<Implicant>> minimal_covers(const std::vector<Implicant>& pis,
                                                   const std::vector<std::uint32_t>& on_set) {
  std::vector<std::uint32_t> corners(on_set.begin(), on_set.end());
  std::sort(corners.begin(), corners.end());
  corners.erase(std::unique(corners.begin(), corners.end()), corners.end());
  if (corners.empty()) return {{}};

  // Who covers what, by index.
  std::vector<std::vector<std::size_t>> coverers(corners.size());
  for (std::size_t p = 0; p < pis.size(); ++p) {
    for (std::size_t c = 0; c < corners.size(); ++c) {
      if (pis[p].covers(corners[c])) coverers[c].push_back(p);
    }
  }

  // Essential implicants: sole coverer of some corner.
  std::set<std::size_t> essential;
  for (std::size_t c = 0; c < corners.size(); ++c) {
    if (coverers[c].empty()) {
      throw InternalError("on-set corner " + std::to_string(corners[c]) +
                          " is covered by no prime implicant");
    }
    if (coverers[c].size() == 1) essential.insert(coverers[c][0]);
  }

  std::vector<bool> corner_open(corners.size(), true);
  for (std::size_t c = 0; c < corners.size(); ++c) {
    for (std::size_t p : coverers[c]) {
      if (essential.count(p)) {
        corner_open[c] = false;
        break;
      }
    }
  }

  // Remaining subproblem over non-essential candidates and open corners.
  std::vector<std::size_t> open_corners;
  for (std::size_t c = 0; c < corners.size(); ++c) {
    if (corner_open[c]) open_corners.push_back(c);
  }

  std::set<std::vector<std::size_t>> completions;
  if (open_corners.empty()) {
    completions.insert(std::vector<std::size_t>{});
  } else {
    std::vector<std::size_t> candidates;
    for (std::size_t p = 0; p < pis.size(); ++p) {
      if (essential.count(p)) continue;
      for (std::size_t c : open_corners) {
        if (pis[p].covers(corners[c])) {
          candidates.push_back(p);
          break;
        }
      }
    }
    std::vector<std::vector<std::size_t>> sub_coverers(open_corners.size());
    std::vector<std::vector<std::size_t>> covers_of(candidates.size());
    for (std::size_t ci = 0; ci < open_corners.size(); ++ci) {
      for (std::size_t pi = 0; pi < candidates.size(); ++pi) {
        if (pis[candidates[pi]].covers(corners[open_corners[ci]])) {
          sub_coverers[ci].push_back(pi);
          covers_of[pi].push_back(ci);
        }
      }
    }

    CoverSearch search{sub_coverers, covers_of, open_corners.size(), {}, {}, nullptr, 0, SIZE_MAX};
    search.cover_count.assign(open_corners.size(), 0);
    search.find_minimum();
    if (search.best == SIZE_MAX) {
      throw InternalError("set cover search failed although every corner has a coverer");
    }

    std::set<std::vector<std::size_t>> raw;
    search.out = &raw;
    search.limit = search.best;
    search.enumerate();
    for (const auto& completion : raw) {
      std::vector<std::size_t> mapped;
      mapped.reserve(completion.size());
      for (std::size_t pi : completion) mapped.push_back(candidates[pi]);
      completions.insert(std::move(mapped));
    }
  }

  std::vector<std::vector<Implicant>> covers;
  for (const auto& completion : completions) {
    std::vector<Implicant> cover;
    for (std::size_t p : essential) cover.push_back(pis[p]);
    for (std::size_t p : completion) cover.push_back(pis[p]);
    std::sort(cover.begin(), cover.end());
    covers.push_back(std::move(cover));
  }
  std::sort(covers.begin(), covers.end());
  covers.erase(std::unique(covers.begin(), covers.end()), covers.end());
  return covers;
}

namespace {

void gather_sets(const TruthTable& t, std::vector<std::uint32_t>& on,
                 std::vector<std::uint32_t>& remainders, std::vector<std::uint32_t>& negatives) {
  for (const TruthTableRow& row : t.rows) {
    switch (row.outcome_code) {
      case OutcomeCode::positive: on.push_back(row.corner); break;
      case OutcomeCode::remainder: remainders.push_back(row.corner); break;
      case OutcomeCode::negative: negatives.push_back(row.corner); break;
      case OutcomeCode::contradiction: break; // excluded from both sets
    }
  }
}

void check_solution(const std::vector<Implicant>& terms, const std::vector<std::uint32_t>& on,
                    const std::vector<std::uint32_t>& negatives) {
  for (std::uint32_t c : on) {
    bool covered = false;
    for (const Implicant& term : terms) {
      if (term.covers(c)) {
        covered = true;
        break;
      }
    }
    if (!covered) {
      throw InternalError("positive corner " + std::to_string(c) + " left uncovered");
    }
  }
  for (const Implicant& term : terms) {
    for (std::uint32_t c : negatives) {
      if (term.covers(c)) {
        throw InternalError("term " + term.pattern() + " covers the negative corner " +
                            std::to_string(c));
      }
    }
  }
}

Implicant with_expected_literals(const Implicant& base, const Implicant& complex_term,
                                 const DirectionalExpectations& expectations) {
  Implicant term = base;
  for (unsigned j = 0; j < term.k(); ++j) {
    const Expectation e = expectations.per_condition[j];
    if (e == Expectation::agnostic) continue;
    const Tri expected = e == Expectation::expect_present ? Tri::present : Tri::absent;
    if (complex_term.state(j) == expected) term.set_state(j, expected);
  }
  return term;
}

} // namespace

Solution solve(const TruthTable& t, SolutionKind kind,
               const DirectionalExpectations& expectations) {
  std::vector<std::uint32_t> on, remainders, negatives;
  gather_sets(t, on, remainders, negatives);

  if (!expectations.per_condition.empty() && expectations.per_condition.size() != t.k) {
    throw ConfigError("directional expectations cover " +
                      std::to_string(expectations.per_condition.size()) + " conditions but the " +
                      "table has " + std::to_string(t.k));
  }

  Solution s;
  s.kind = kind;
  switch (kind) {
    case SolutionKind::complex_solution: {
      s.ties = minimal_covers(prime_implicants(on, {}, t.k), on);
      s.terms = s.ties.front();
      break;
    }
    case SolutionKind::parsimonious: {
      s.ties = minimal_covers(prime_implicants(on, remainders, t.k), on);
      s.terms = s.ties.front();
      break;
    }
    case SolutionKind::intermediate: {
      if (expectations.all_agnostic()) {
        s.ties = minimal_covers(prime_implicants(on, {}, t.k), on);
        s.terms = s.ties.front();
        s.note = "no directional expectations stated, so no counterfactual is easy; "
                 "the intermediate solution equals the complex solution";
        break;
      }
      const Solution complex_sol = solve(t, SolutionKind::complex_solution);
      const Solution pars_sol = solve(t, SolutionKind::parsimonious);
      const std::vector<Implicant> pars_pool = prime_implicants(on, remainders, t.k);

      // Counterfactual add-back: each parsimonious term, refined by the
      // expected-direction literals of every complex term it subsumes.
      std::set<Implicant> terms;
      for (const Implicant& p : pars_sol.terms) {
        bool matched = false;
        for (const Implicant& c : complex_sol.terms) {
          if (!c.specializes(p)) continue;
          matched = true;
          terms.insert(with_expected_literals(p, c, expectations));
        }
        if (!matched) terms.insert(p);
      }
      // A complex term subsumed by no reported parsimonious term still has
      // a maximal generalization among the parsimonious implicants; pair it
      // with the first one so every observed configuration stays covered.
      for (const Implicant& c : complex_sol.terms) {
        bool matched = false;
        for (const Implicant& p : pars_sol.terms) {
          if (c.specializes(p)) {
            matched = true;
            break;
          }
        }
        if (matched) continue;
        for (const Implicant& p : pars_pool) {
          if (c.specializes(p)) {
            terms.insert(with_expected_literals(p, c, expectations));
            break;
          }
        }
      }
      // Absorption: a term inside another term is redundant.
      std::vector<Implicant> kept;
      for (const Implicant& a : terms) {
        bool absorbed = false;
        for (const Implicant& b : terms) {
          if (!(a == b) && a.specializes(b)) {
            absorbed = true;
            break;
          }
        }
        if (!absorbed) kept.push_back(a);
      }
      std::sort(kept.begin(), kept.end());
      s.terms = kept;
      s.ties = {kept};
      break;
    }
  }
  check_solution(s.terms, on, negatives);
  return s;
}

Solution label_core_peripheral(const Solution& intermediate, const Solution& parsimonious) {
  Solution labeled = intermediate;
  labeled.core_flags.clear();
  for (const Implicant& term : intermediate.terms) {
    std::vector<bool> flags(term.k(), false);
    for (const Implicant& p : parsimonious.terms) {
      if (term.k() != p.k()) {
        throw ConfigError("solutions span different condition counts and cannot be labeled");
      }
      if (!term.specializes(p)) continue;
      for (unsigned j = 0; j < term.k(); ++j) {
        if (p.state(j) != Tri::dontcare) flags[j] = true;
      }
    }
    labeled.core_flags.push_back(std::move(flags));
  }
  return labeled;
}

} // namespace fsqca
