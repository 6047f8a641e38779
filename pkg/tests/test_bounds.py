from __future__ import annotations

import math
from fractions import Fraction

import pytest

from stlab import (
    BipartiteGraph,
    Tree,
    anticoncentration_bound,
    aut_size,
    bound_for_tree,
    bregman_minc_log,
    code_to_tree,
    complete_bipartite,
    complete_graph,
    count_labeled_copies,
    count_spanning_trees,
    cycle_graph,
    enumerate_unlabeled_trees,
    iso_class_probability,
    labeled_copies_bound,
    permanent_ryser,
    stirling_factor,
)
from stlab.bounds import composite_min_n

from helpers import (
    brute_force_permanent,
    path_tree,
    random_bipartite,
    random_connected_graph,
    star_tree,
)


def test_bregman_minc_examples():
    k33 = complete_bipartite(3, 3)
    assert bregman_minc_log(k33) == pytest.approx(math.log(6))
    assert permanent_ryser(k33) == 6
    h12 = BipartiteGraph(2, 2, [(0, 0), (1, 0), (1, 1)])
    assert bregman_minc_log(h12) == pytest.approx(math.log(2) / 2)
    assert permanent_ryser(h12) <= math.exp(bregman_minc_log(h12)) + 1e-12
    k44 = complete_bipartite(4, 4)
    assert bregman_minc_log(k44) == pytest.approx(math.log(24))
    assert permanent_ryser(k44) == 24


def test_bregman_minc_requires_balanced_parts():
    with pytest.raises(ValueError):
        bregman_minc_log(complete_bipartite(2, 3))


def test_bregman_minc_isolated_vertex():
    h = BipartiteGraph(2, 2, [(1, 0), (1, 1)])
    assert bregman_minc_log(h) == float("-inf")


def test_permanent_identity_and_empty():
    ident = BipartiteGraph(3, 3, [(0, 0), (1, 1), (2, 2)])
    assert permanent_ryser(ident) == 1
    assert permanent_ryser(BipartiteGraph(0, 0, [])) == 1
    assert permanent_ryser(BipartiteGraph(2, 2, [])) == 0


def test_permanent_matches_brute_force():
    for seed in range(40):
        n = 1 + seed % 5
        h = random_bipartite(n, n, 0.55, seed=seed)
        assert permanent_ryser(h) == brute_force_permanent(h)


def test_permanent_cap():
    with pytest.raises(ValueError):
        permanent_ryser(complete_bipartite(21, 21))


def test_bregman_dominates_permanent():
    for seed in range(60):
        n = 2 + seed % 6
        h = random_bipartite(n, n, 0.6, seed=seed + 1000, min_x_degree=1)
        pm = permanent_ryser(h)
        if pm > 0:
            assert math.log(pm) <= bregman_minc_log(h) + 1e-9


def test_count_labeled_copies_in_k4():
    k4 = complete_graph(4)
    assert count_labeled_copies(path_tree(4), k4) == 24
    assert count_labeled_copies(star_tree(4), k4) == 24


def test_count_labeled_copies_degree_pruning():
    c5 = cycle_graph(5)
    assert count_labeled_copies(star_tree(5), c5) == 0  # needs degree 4 > 2
    assert count_labeled_copies(path_tree(5), c5) == 10


def test_count_labeled_copies_size_guards():
    with pytest.raises(ValueError):
        count_labeled_copies(path_tree(4), complete_graph(13))
    assert count_labeled_copies(path_tree(5), complete_graph(4)) == 0


def test_count_labeled_copies_subtree_case():
    # non-spanning embeddings also count: path on 3 into K4
    assert count_labeled_copies(path_tree(3), complete_graph(4)) == 24


def test_iso_class_probability_k4():
    k4 = complete_graph(4)
    assert iso_class_probability(path_tree(4), k4) == Fraction(3, 4)
    assert iso_class_probability(star_tree(4), k4) == Fraction(1, 4)


def test_iso_class_probability_not_embeddable():
    assert iso_class_probability(star_tree(5), cycle_graph(5)) == 0


def test_iso_class_probabilities_sum_to_one():
    for seed in range(8):
        g = random_connected_graph(6, seed + 900)
        total = sum(
            iso_class_probability(code_to_tree(code), g)
            for code in enumerate_unlabeled_trees(g.n)
        )
        assert total == 1


def test_partition_identity():
    for seed in range(10):
        g = random_connected_graph(7, seed + 40)
        acc = 0
        for code in enumerate_unlabeled_trees(g.n):
            rep = code_to_tree(code)
            copies = count_labeled_copies(rep, g)
            a = aut_size(rep)
            assert copies % a == 0
            acc += copies // a
        assert acc == count_spanning_trees(g)


def test_anticoncentration_bound_values():
    assert anticoncentration_bound(2000) == pytest.approx(math.exp(-1))
    # exp(-13863/2000), frozen from direct evaluation
    assert anticoncentration_bound(13863) == pytest.approx(9.7653497e-4, rel=1e-7)
    assert anticoncentration_bound(1) == pytest.approx(math.exp(-1 / 2000))
    with pytest.raises(ValueError):
        anticoncentration_bound(0)


def test_stirling_factor_values():
    assert stirling_factor(1) == pytest.approx(math.e)
    # frozen from (10!)^(1/10) * e / 10
    assert stirling_factor(10) == pytest.approx(
        math.factorial(10) ** 0.1 * math.e / 10, rel=1e-12
    )
    assert stirling_factor(10) == pytest.approx(1.2310360899, abs=1e-9)
    assert stirling_factor(10**6) == pytest.approx(1.0000078, abs=1e-6)


def test_stirling_factor_decreasing_above_one():
    grid = [1, 2, 3, 5, 10, 30, 100, 1000, 10**4, 10**5, 10**6]
    vals = [stirling_factor(d) for d in grid]
    assert all(v > 1.0 for v in vals)
    assert all(a > b for a, b in zip(vals, vals[1:]))


def test_labeled_copies_bound_few_leaves():
    n, d, delta = 10**4, 100, 1e-10
    rep = labeled_copies_bound(n, 2, d)
    assert rep.case == "few-leaves"
    gamma = math.exp(-1) - 0.1
    expected = (
        math.log(10)
        - (gamma - 600 * math.sqrt(delta)) ** 2 / 32 * n
        + n * math.log((1 + delta) * d)
    )
    assert rep.log_bound == pytest.approx(expected)
    assert rep.components["matching"] == 0.0


def test_labeled_copies_bound_many_leaves():
    n, d = 10**4, 10**3
    rep = labeled_copies_bound(n, n - 1, d)
    assert rep.case == "many-leaves"
    expected = math.log(n) + (n - 1) * (math.log1p(1e-9) - 1 + math.log(d))
    assert rep.log_bound == pytest.approx(expected)
    assert rep.components["tail"] == 0.0


def test_labeled_copies_bound_trivial_fallback():
    rep = labeled_copies_bound(4, 2, 3)
    assert rep.case == "trivial"
    assert rep.log_bound == pytest.approx(4 * math.log((1 + 1e-10) * 3))
    assert rep.n < composite_min_n(1e-10) < 10**4


def test_labeled_copies_bound_components_sum():
    for args in [(10**4, 2, 100), (10**4, 9999, 1000), (4, 2, 3), (2000, 500, 50)]:
        rep = labeled_copies_bound(*args)
        assert sum(rep.components.values()) == pytest.approx(rep.log_bound)


def test_labeled_copies_bound_headline_reported():
    rep = labeled_copies_bound(5000, 2, 100)
    assert rep.headline_log_bound == pytest.approx(-5.0 + 5000 * math.log(100))


def test_labeled_copies_bound_validation():
    with pytest.raises(ValueError):
        labeled_copies_bound(1, 0, 3)
    with pytest.raises(ValueError):
        labeled_copies_bound(10, 10, 3)
    with pytest.raises(ValueError):
        labeled_copies_bound(10, 2, 3, delta=1.0)


def test_trivial_bound_covers_actual_counts_small_hosts():
    # at desk scale the report falls back to the trivial bound, which is a
    # true bound on these hosts; larger-case composites are asymptotic only
    k4 = complete_graph(4)
    for t in (path_tree(4), star_tree(4)):
        rep = bound_for_tree(t, d=3)
        assert rep.case == "trivial"
        assert rep.log_bound >= math.log(count_labeled_copies(t, k4))
    c5 = cycle_graph(5)
    rep = bound_for_tree(path_tree(5), d=2)
    assert rep.log_bound >= math.log(count_labeled_copies(path_tree(5), c5))


def test_bound_for_tree_uses_leaf_count():
    t = star_tree(8)
    rep = bound_for_tree(t, d=5)
    assert rep.leaves == 7
