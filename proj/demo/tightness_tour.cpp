// Walks through the tight constructions and the matching pipelines: each
// lower-bound graph is built and audited, the pipeline refuses it, and a
// slightly denser random graph gets a percolating set.

#include <iostream>

#include "bootperc/bootperc.hpp"

using namespace bootperc;

namespace {

void print(const std::string& what, const PipelineResult& p) {
  std::cout << what << ": " << to_string(p.status);
  if (p.seed) std::cout << " seed " << p.seed->to_string();
  if (!p.fired_case.empty()) std::cout << " via " << p.fired_case;
  std::cout << '\n';
}

}  // namespace

int main() {
  // Every 4-set percolates above the two-clique bound; the construction
  // sits exactly on it with a closed 4-set.
  const CliquePair fig = fig1_two_clique(12, 3, 4);
  std::cout << "two-clique (12,3,4): min degree " << min_degree(fig.graph) << ", seed "
            << fig.seed.to_string() << (is_closed(fig.graph, 3, fig.seed) ? " closed" : " open") << '\n';

  // Big-l tightness: D(G) = n+2r-l-3 and no 5-set percolates.
  const CliquePair big = big_l_tightness_graph(12, 4, 5);
  const SolveResult m = min_percolating_set_size(big.graph, 4);
  std::cout << "big-l (12,4,5): D(G) " << ore_degree_sum(big.graph) << ", m(G,4) " << *m.size << '\n';
  print("  big-l pipeline", find_percolating_set_big_l(big.graph, 4, 5));

  // Ore-type tightness graph: two K_40 joined by a 4-regular girth-8 graph.
  AuditLog log;
  const CliquePair ore = ore_tightness_graph(40, 7, 7, OreVariant::full, 1, false, &log);
  const SideBound b = seed_feasibility_lower_bound(ore.graph, 7, ore.sides);
  std::cout << "ore-tightness (40,7,7): " << log.entries().size() << " audits, D(G) " << ore_degree_sum(ore.graph)
            << ", at least " << b.total() << " seeds needed\n";
  print("  ore pipeline", find_percolating_set_ore(ore.graph, 7, 7));

  // Two cliques with 3-regular cross edges clear the degree condition.
  Rng rng(3);
  const Graph g = random_two_clique_graph(100, 3, rng);
  print("two cliques, s=3, r=6, l=7", find_percolating_set_ore(g, 6, 7));
  print("two cliques, s=3, r=4, l=5", find_percolating_set_big_l(g, 4, 5));
  print("G(300, 0.8), r=3, k=2", find_percolating_set_stacked(random_graph(300, 0.8, 1), 3, 2));
}
