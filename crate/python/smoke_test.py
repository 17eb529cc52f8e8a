"""Smoke test for the arbodom Python extension.

Build first, e.g. `maturin develop --release -m crates/python/Cargo.toml`,
then run `python python/smoke_test.py`.
"""

from fractions import Fraction
from itertools import combinations

import arbodom


def brute_force_opt(g):
    closed = [{v, *g.neighbors(v)} for v in range(g.n)]
    best = sum(g.weights)
    for size in range(1, g.n + 1):
        for subset in combinations(range(g.n), size):
            covered = set().union(*(closed[v] for v in subset))
            if len(covered) == g.n:
                best = min(best, sum(g.weights[v] for v in subset))
    return best


def main():
    g = arbodom.Graph.arboricity(12, 2, weight_max=8, seed=3)
    assert g.alpha == 2 and g.n == 12
    opt, witness = arbodom.exact_mds(g)
    assert opt == brute_force_opt(g)
    assert arbodom.is_dominating(g, witness)

    det = arbodom.mds_deterministic(g, "1/2")
    assert arbodom.is_dominating(g, det.members)
    assert det.total_weight <= Fraction(det.claimed_factor) * opt
    assert Fraction(det.certificate_total) <= opt
    assert all(passed for _, passed, _ in det.verify(g))

    again = arbodom.DominatingSet.from_json(det.to_json())
    assert again.members == det.members

    rand = arbodom.mds_randomized(g, 1, seed=7)
    assert arbodom.is_dominating(g, rand.members)
    assert rand.cover_counts is not None
    general = arbodom.mds_general(g, 2, seed=7)
    assert arbodom.is_dominating(g, general.members)

    tree = arbodom.Graph.tree(15, seed=1)
    assert arbodom.tree_mds(tree).total_weight <= 3 * arbodom.exact_mds(tree)[0]

    unit = arbodom.Graph.arboricity(10, 1, seed=4)
    for run in (arbodom.mds_unweighted, arbodom.mds_unknown_delta, arbodom.mds_unknown_alpha):
        assert arbodom.is_dominating(unit, run(unit, "1/10").members)

    h = arbodom.LowerBoundGraph(arbodom.Graph.cycle(5))
    assert (h.graph.n, h.graph.m) == (45, 60)
    cover, feasible = h.fractional_cover(list(range(h.graph.n)))
    assert feasible and len(cover) == 5

    assert arbodom.Graph.parse(g.to_text()).edges() == g.edges()
    try:
        arbodom.mds_deterministic(g, "2")
    except ValueError:
        pass
    else:
        raise AssertionError("eps outside (0, 1) accepted")

    print("python smoke test passed")


if __name__ == "__main__":
    main()
