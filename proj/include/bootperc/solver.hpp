#pragma once

#include <algorithm>
#include <bit>
#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bootperc/bootstrap.hpp"
#include "bootperc/errors.hpp"
#include "bootperc/graph.hpp"
#include "bootperc/subsets.hpp"
#include "bootperc/vertex_set.hpp"

namespace bootperc {

// Exact search over seed sets. Candidates of one cardinality are visited in
// colexicographic order and the lowest percolating (or, for the universal
// check, lowest non-percolating) set is reported. Results do not depend on
// the job count or on whether symmetry reduction is enabled.

using Rational = boost::multiprecision::cpp_rational;

inline constexpr std::uint64_t kDefaultWorkCap = 100'000'000;

struct SolverOptions {
  std::uint64_t work_cap = kDefaultWorkCap;  // max closure evaluations
  unsigned jobs = 1;
  // Enumerate one representative per orbit of the twin-class symmetry. When
  // `classes` is empty the classes are computed with twin_classes().
  bool symmetry = false;
  std::vector<std::vector<Vertex>> classes;
  // Skip cardinalities below seed_feasibility_lower_bound for this partition.
  std::optional<BipartitePartition> side_partition;
};

enum class SolveStatus { found, absent, exceeds_budget, refused };

inline const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::found: return "found";
    case SolveStatus::absent: return "absent";
    case SolveStatus::exceeds_budget: return "exceeds_budget";
    case SolveStatus::refused: return "refused";
  }
  return "unknown";
}

struct SolveResult {
  SolveStatus status = SolveStatus::refused;
  std::optional<std::size_t> size;      // m(G,r) for min; l otherwise
  std::optional<VertexSet> witness;     // percolating set, or counterexample
  std::uint64_t closures = 0;           // closure evaluations performed
  std::string message;
};

// ---------------------------------------------------------------------------
// Bounds

inline Rational reichman_bound(const Graph& g, std::size_t r) {
  check_threshold(r);
  Rational sum = 0;
  for (Vertex v = 0; v < g.order(); ++v) {
    const Rational term(static_cast<long long>(r), static_cast<long long>(g.degree(v) + 1));
    sum += term < 1 ? term : Rational(1);
  }
  return sum;
}

inline std::size_t reichman_ceiling(const Graph& g, std::size_t r) {
  const Rational b = reichman_bound(g, r);
  using boost::multiprecision::cpp_int;
  cpp_int q = boost::multiprecision::numerator(b) / boost::multiprecision::denominator(b);
  if (q * boost::multiprecision::denominator(b) != boost::multiprecision::numerator(b)) ++q;
  return q.convert_to<std::size_t>();
}

struct SideBound {
  std::size_t left = 0;
  std::size_t right = 0;
  std::size_t total() const { return left + right; }
};

// Both sides must be cliques. A non-seed vertex x of side X is infected only
// after r - deg_Y(x) seeds of X are present, so either X is entirely seeded
// or X holds at least r - max_x deg_Y(x) seeds.
inline SideBound seed_feasibility_lower_bound(const Graph& g, std::size_t r, const BipartitePartition& p) {
  check_threshold(r);
  const std::size_t n = g.order();
  if (p.left.universe() != n || p.right.universe() != n) throw ValidationError("partition over a different universe");
  if (p.left.intersects(p.right) || (p.left | p.right).count() != n)
    throw ValidationError("sides must partition the vertex set");
  if (!is_clique(g, p.left) || !is_clique(g, p.right)) throw ValidationError("both sides must be cliques");
  auto need = [&](const VertexSet& side, const VertexSet& other) {
    std::size_t max_cross = 0;
    side.for_each([&](Vertex v) { max_cross = std::max(max_cross, g.count_in(v, other)); });
    const std::size_t base = r > max_cross ? r - max_cross : 0;
    return std::min(side.count(), base);
  };
  return SideBound{need(p.left, p.right), need(p.right, p.left)};
}

// ---------------------------------------------------------------------------
// Search internals

namespace detail {

// Closure on graphs with n <= 64, one word per row.
class MaskKernel {
 public:
  MaskKernel(const Graph& g, std::size_t r) : r_(r), n_(g.order()), adj_(g.order()) {
    for (Vertex v = 0; v < n_; ++v) adj_[v] = g.row(v)[0];
    full_ = n_ == 64 ? ~Word{0} : ((Word{1} << n_) - 1);
  }

  Word closure(Word seed) const {
    Word inf = seed;
    bool changed = true;
    while (changed) {
      changed = false;
      Word touched = 0;
      for (Word s = inf; s != 0; s &= s - 1) touched |= adj_[std::countr_zero(s)];
      for (Word c = touched & ~inf; c != 0; c &= c - 1) {
        const int v = std::countr_zero(c);
        if (static_cast<std::size_t>(std::popcount(adj_[v] & inf)) >= r_) {
          inf |= Word{1} << v;
          changed = true;
        }
      }
    }
    return inf;
  }

  bool percolates(Word seed) const { return closure(seed) == full_; }
  Word full() const { return full_; }

 private:
  std::size_t r_;
  std::size_t n_;
  std::vector<Word> adj_;
  Word full_ = 0;
};

inline VertexSet set_from_mask(std::size_t n, Word m) {
  VertexSet s(n);
  for (; m != 0; m &= m - 1) s.insert(static_cast<Vertex>(std::countr_zero(m)));
  return s;
}

inline bool is_twin_pair(const Graph& g, Vertex a, Vertex b, bool closed) {
  if (closed != g.adjacent(a, b)) return false;
  VertexSet na = g.neighbourhood(a), nb = g.neighbourhood(b);
  na.erase(b);
  nb.erase(a);
  return na == nb;
}

inline void validate_classes(const Graph& g, const std::vector<std::vector<Vertex>>& classes) {
  std::vector<bool> seen(g.order(), false);
  for (const auto& c : classes) {
    if (c.empty()) throw ValidationError("empty symmetry class");
    for (Vertex v : c) {
      if (v >= g.order() || seen[v]) throw ValidationError("symmetry classes must partition the vertex set");
      seen[v] = true;
    }
    if (c.size() < 2) continue;
    const bool closed = g.adjacent(c[0], c[1]);
    for (std::size_t i = 1; i < c.size(); ++i)
      if (!is_twin_pair(g, c[0], c[i], closed))
        throw ValidationError("symmetry class containing vertex " + std::to_string(c[0]) + " is not a twin class");
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end())
    throw ValidationError("symmetry classes must partition the vertex set");
}

// Number of count vectors (c_i <= size_i, sum c_i = k), saturating.
inline std::uint64_t orbit_count(const std::vector<std::vector<Vertex>>& classes, std::size_t k) {
  std::vector<std::uint64_t> ways(k + 1, 0);
  ways[0] = 1;
  for (const auto& c : classes) {
    std::vector<std::uint64_t> next(k + 1, 0);
    for (std::size_t have = 0; have <= k; ++have) {
      if (ways[have] == 0) continue;
      for (std::size_t take = 0; take <= c.size() && have + take <= k; ++take)
        next[have + take] = saturating_add(next[have + take], ways[have]);
    }
    ways = std::move(next);
  }
  return ways[k];
}

// Canonical orbit representatives of size k (lowest members of each class),
// sorted in colex order.
inline std::vector<VertexSet> orbit_representatives(std::size_t n, std::vector<std::vector<Vertex>> classes,
                                                    std::size_t k) {
  for (auto& c : classes) std::sort(c.begin(), c.end());
  std::vector<VertexSet> out;
  VertexSet cur(n);
  auto rec = [&](auto&& self, std::size_t idx, std::size_t left) -> void {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    if (idx == classes.size()) return;
    const auto& c = classes[idx];
    for (std::size_t take = 0; take <= c.size() && take <= left; ++take) {
      for (std::size_t t = 0; t < take; ++t) cur.insert(c[t]);
      self(self, idx + 1, left - take);
      for (std::size_t t = 0; t < take; ++t) cur.erase(c[t]);
    }
  };
  rec(rec, 0, k);
  std::sort(out.begin(), out.end(), [](const VertexSet& a, const VertexSet& b) { return colex_less(a, b); });
  return out;
}

// First k-subset in colex order whose percolation verdict equals `want`.
// Returns nullopt when none exists. Adds the number of evaluated sets to
// `work` (only sets up to the answer are counted; the count is the same on
// every run).
class SizeSearch {
 public:
  SizeSearch(const Graph& g, std::size_t r, const SolverOptions& opt) : g_(g), r_(r), opt_(opt) {
    if (opt_.symmetry) {
      classes_ = opt_.classes.empty() ? twin_classes(g) : opt_.classes;
      validate_classes(g, classes_);
    }
  }

  std::uint64_t candidates(std::size_t k) const {
    return opt_.symmetry ? orbit_count(classes_, k) : binomial(g_.order(), k);
  }

  std::optional<VertexSet> first(std::size_t k, bool want, std::uint64_t& work) const {
    const std::size_t n = g_.order();
    if (k > n) return std::nullopt;
    if (opt_.symmetry) return first_symmetric(k, want, work);
    if (k <= 2) return first_small(k, want, work);
    if (n <= 64) return first_mask(k, want, work);
    return first_general(k, want, work);
  }

 private:
  bool verdict_set(ClosureEngine& e, const VertexSet& s) const { return e.run(s) == g_.order(); }

  std::optional<VertexSet> first_small(std::size_t k, bool want, std::uint64_t& work) const {
    const std::size_t n = g_.order();
    ClosureEngine e(g_, r_);
    std::vector<Vertex> c(k);
    for (std::size_t i = 0; i < k; ++i) c[i] = i;
    do {
      ++work;
      if ((e.run(std::span<const Vertex>(c)) == n) == want) return VertexSet::from(n, c);
    } while (next_colex(c, n));
    return std::nullopt;
  }

  // Chunk (top, second): all k-sets whose two largest elements are those.
  // Chunk order (top ascending, then second ascending) is colex order.
  std::optional<VertexSet> first_mask(std::size_t k, bool want, std::uint64_t& work) const {
    const std::size_t n = g_.order();
    const MaskKernel kernel(g_, r_);
    std::vector<std::pair<std::size_t, std::size_t>> chunks;
    for (std::size_t top = k - 1; top < n; ++top)
      for (std::size_t second = k - 2; second < top; ++second) chunks.emplace_back(top, second);
    std::vector<Word> found(chunks.size(), 0);
    std::vector<std::uint64_t> spent(chunks.size(), 0);
    const std::size_t low = k - 2;
    const std::size_t idx = parallel_first(chunks.size(), opt_.jobs, [&](std::size_t i) {
      const auto [top, second] = chunks[i];
      const Word high = (Word{1} << top) | (Word{1} << second);
      const Word limit = Word{1} << second;
      Word sub = low == 0 ? 0 : (Word{1} << low) - 1;
      while (true) {
        ++spent[i];
        if (kernel.percolates(high | sub) == want) {
          found[i] = high | sub;
          return true;
        }
        if (low == 0) return false;
        sub = next_same_popcount(sub);
        if (sub >= limit) return false;
      }
    });
    for (std::size_t i = 0; i < chunks.size() && i <= idx; ++i) work += spent[i];
    if (idx == chunks.size()) return std::nullopt;
    return set_from_mask(n, found[idx]);
  }

  // Chunks keyed by the largest element; the rest in colex order.
  std::optional<VertexSet> first_general(std::size_t k, bool want, std::uint64_t& work) const {
    const std::size_t n = g_.order();
    const std::size_t chunks = n - k + 1;
    std::vector<std::optional<VertexSet>> found(chunks);
    std::vector<std::uint64_t> spent(chunks, 0);
    const std::size_t idx = parallel_first(chunks, opt_.jobs, [&](std::size_t i) {
      const std::size_t top = k - 1 + i;
      ClosureEngine e(g_, r_);
      std::vector<Vertex> c(k);
      for (std::size_t j = 0; j + 1 < k; ++j) c[j] = j;
      std::vector<Vertex> lower(c.begin(), c.end() - 1);
      while (true) {
        std::copy(lower.begin(), lower.end(), c.begin());
        c[k - 1] = top;
        ++spent[i];
        if ((e.run(std::span<const Vertex>(c)) == n) == want) {
          found[i] = VertexSet::from(n, c);
          return true;
        }
        if (!next_colex(lower, top)) return false;
      }
    });
    for (std::size_t i = 0; i < chunks && i <= idx; ++i) work += spent[i];
    if (idx == chunks) return std::nullopt;
    return found[idx];
  }

  std::optional<VertexSet> first_symmetric(std::size_t k, bool want, std::uint64_t& work) const {
    const auto reps = orbit_representatives(g_.order(), classes_, k);
    constexpr std::size_t kBlock = 1024;
    const std::size_t chunks = (reps.size() + kBlock - 1) / kBlock;
    std::vector<std::size_t> hit(chunks, reps.size());
    std::vector<std::uint64_t> spent(chunks, 0);
    const std::size_t idx = parallel_first(chunks, opt_.jobs, [&](std::size_t c) {
      ClosureEngine e(g_, r_);
      const std::size_t end = std::min(reps.size(), (c + 1) * kBlock);
      for (std::size_t i = c * kBlock; i < end; ++i) {
        ++spent[c];
        if (verdict_set(e, reps[i]) == want) {
          hit[c] = i;
          return true;
        }
      }
      return false;
    });
    for (std::size_t c = 0; c < chunks && c <= idx; ++c) work += spent[c];
    if (idx == chunks) return std::nullopt;
    return reps[hit[idx]];
  }

  const Graph& g_;
  std::size_t r_;
  const SolverOptions& opt_;
  std::vector<std::vector<Vertex>> classes_;
};

inline std::string refusal(std::size_t k, std::uint64_t need, std::uint64_t cap) {
  return "cardinality " + std::to_string(k) + " needs " + (need == kSaturated ? std::string(">2^64") : std::to_string(need)) +
         " more closures; work cap is " + std::to_string(cap);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Public entry points

// m(G,r). With `budget`, sizes above it are not searched and yield
// exceeds_budget.
inline SolveResult min_percolating_set_size(const Graph& g, std::size_t r, std::optional<std::size_t> budget = {},
                                            const SolverOptions& opt = {}) {
  check_threshold(r);
  const std::size_t n = g.order();
  SolveResult res;
  if (n < r) {
    // Every proper subset is closed.
    res.status = SolveStatus::found;
    res.size = n;
    res.witness = VertexSet::full(n);
    return res;
  }
  std::size_t start = r;
  if (opt.side_partition) start = std::max(start, seed_feasibility_lower_bound(g, r, *opt.side_partition).total());
  const detail::SizeSearch search(g, r, opt);
  for (std::size_t k = start; k <= n; ++k) {
    if (budget && k > *budget) {
      res.status = SolveStatus::exceeds_budget;
      res.message = "no percolating set of size <= " + std::to_string(*budget);
      return res;
    }
    const std::uint64_t need = search.candidates(k);
    if (need > opt.work_cap || res.closures > opt.work_cap - need) {
      res.status = SolveStatus::refused;
      res.message = detail::refusal(k, need, opt.work_cap);
      return res;
    }
    if (auto w = search.first(k, true, res.closures)) {
      if (!percolates(g, r, *w)) throw AuditFailure("solver witness failed engine replay");
      res.status = SolveStatus::found;
      res.size = k;
      res.witness = std::move(w);
      return res;
    }
  }
  throw AuditFailure("the full vertex set did not percolate");
}

// Lowest-colex percolating set of size exactly l.
inline SolveResult exists_percolating_set(const Graph& g, std::size_t r, std::size_t l, const SolverOptions& opt = {}) {
  check_threshold(r);
  if (l > g.order()) throw InvalidArgument("l exceeds the vertex count");
  SolveResult res;
  res.size = l;
  const detail::SizeSearch search(g, r, opt);
  const bool trivially_closed = l < r && l < g.order();
  if (trivially_closed || (opt.side_partition && seed_feasibility_lower_bound(g, r, *opt.side_partition).total() > l)) {
    res.status = SolveStatus::absent;
    return res;
  }
  const std::uint64_t need = search.candidates(l);
  if (need > opt.work_cap) {
    res.status = SolveStatus::refused;
    res.message = detail::refusal(l, need, opt.work_cap);
    return res;
  }
  if (auto w = search.first(l, true, res.closures)) {
    if (!percolates(g, r, *w)) throw AuditFailure("solver witness failed engine replay");
    res.status = SolveStatus::found;
    res.witness = std::move(w);
  } else {
    res.status = SolveStatus::absent;
  }
  return res;
}

// found: `witness` is the lowest-colex l-set that does not percolate.
// absent: every l-set percolates.
inline SolveResult all_sets_percolate(const Graph& g, std::size_t r, std::size_t l, const SolverOptions& opt = {}) {
  check_threshold(r);
  if (l > g.order()) throw InvalidArgument("l exceeds the vertex count");
  SolveResult res;
  res.size = l;
  const detail::SizeSearch search(g, r, opt);
  const std::uint64_t need = search.candidates(l);
  if (need > opt.work_cap) {
    res.status = SolveStatus::refused;
    res.message = detail::refusal(l, need, opt.work_cap);
    return res;
  }
  if (auto w = search.first(l, false, res.closures)) {
    if (percolates(g, r, *w)) throw AuditFailure("counterexample percolates on engine replay");
    res.status = SolveStatus::found;
    res.witness = std::move(w);
  } else {
    res.status = SolveStatus::absent;
  }
  return res;
}

}  // namespace bootperc
