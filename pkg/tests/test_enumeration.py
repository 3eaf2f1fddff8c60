import itertools

import pytest

from asymgraphs.automorphism import automorphism_group, brute_force_group_order, canonical_form
from asymgraphs.constructions import fig3_tree, subdivided_star
from asymgraphs.enumeration import (
    EnumerationError,
    all_partitions,
    asds_formula,
    chord_matchings,
    count_asds,
    distinct_partitions,
    enumerate_asymmetric_trees,
    enumerate_cubic_hamiltonian,
    enumerate_graphs,
    enumerate_trees,
    is_subdivided_star,
    q_distinct,
)
from asymgraphs.graph import Graph, decode_graph6


# ---------------------------------------------------------------------------
# partitions


def euler_odd_parts(m):
    """Partitions into odd parts; equinumerous with distinct-part partitions."""
    ways = [1] + [0] * m
    for part in range(1, m + 1, 2):
        for s in range(part, m + 1):
            ways[s] += ways[s - part]
    return ways[m]


def test_q_small_values():
    assert [q_distinct(m) for m in range(9)] == [1, 1, 1, 2, 2, 3, 4, 5, 6]
    assert [p.parts for p in distinct_partitions(6)] == [(3, 2, 1), (4, 2), (5, 1), (6,)]
    assert len(distinct_partitions(8)) == 6


@pytest.mark.parametrize("m", range(0, 31))
def test_q_matches_euler(m):
    assert q_distinct(m) == euler_odd_parts(m)


def test_q_matches_listing():
    for m in range(1, 41):
        parts = distinct_partitions(m)
        assert len(parts) == q_distinct(m)
        assert all(p.sum == m and len(set(p.parts)) == len(p) for p in parts)


def test_distinct_partitions_min_parts():
    assert [p.parts for p in distinct_partitions(9, 3)] == [(4, 3, 2), (5, 3, 1), (6, 2, 1)]
    assert distinct_partitions(5, 3) == []
    with pytest.raises(ValueError):
        q_distinct(-1)


def test_all_partitions_count():
    # p(m) for m = 1..10
    assert [sum(1 for _ in all_partitions(m)) for m in range(1, 11)] == [1, 2, 3, 5, 7, 11, 15, 22, 30, 42]


# ---------------------------------------------------------------------------
# subdivided-star counts


def test_asds_small():
    assert (count_asds(7).formula_value, count_asds(7).exact_value) == (1, 1)
    assert (count_asds(8).formula_value, count_asds(8).exact_value) == (2, 1)
    assert count_asds(8).stars == [(4, 2, 1)]
    assert count_asds(9).exact_value == 2


@pytest.mark.parametrize("n", range(7, 21))
def test_asds_exact_matches_partitions(n):
    c = count_asds(n)
    assert c.exact_value == c.partition_count
    assert c.discrepancy == (0 if n % 2 else 1)
    assert all(len(set(s)) == len(s) >= 3 for s in c.stars)


def test_asds_rejects_small_n():
    with pytest.raises(EnumerationError):
        count_asds(3)
    assert asds_formula(7) == 1


# ---------------------------------------------------------------------------
# cubic Hamiltonian census


def double_factorial_matchings(n):
    # matchings of the complement of C_n by inclusion-exclusion over cycle edges used
    from math import comb

    def pm(k):
        out = 1
        for i in range(k - 1, 0, -2):
            out *= i
        return out

    total = 0
    for j in range(0, n // 2 + 1):
        # ways to choose j pairwise disjoint edges of C_n
        chosen = comb(n - j, j) + comb(n - j - 1, j - 1) if j else 1
        total += (-1) ** j * chosen * pm(n - 2 * j)
    return total


@pytest.mark.parametrize("n", [4, 6, 8, 10])
def test_chord_matching_count(n):
    assert sum(1 for _ in chord_matchings(n)) == double_factorial_matchings(n)


@pytest.mark.parametrize("n, total", [(4, 1), (6, 2), (8, 5), (10, 17)])
def test_small_census(n, total):
    r = enumerate_cubic_hamiltonian(n)
    assert r.total_count == total
    assert r.asymmetric_count == 0
    for code in r.representatives:
        g = decode_graph6(code)
        assert g.is_regular(3)


def test_census_orders_match_brute_force():
    r = enumerate_cubic_hamiltonian(8)
    assert r.group_orders == [brute_force_group_order(decode_graph6(c)) for c in r.representatives]


def test_census_workers_identical():
    assert enumerate_cubic_hamiltonian(10, workers=3).to_json() == enumerate_cubic_hamiltonian(10).to_json()


@pytest.mark.parametrize("n", [5, 2, 18])
def test_census_rejects(n):
    with pytest.raises(EnumerationError):
        enumerate_cubic_hamiltonian(n)


# ---------------------------------------------------------------------------
# trees: independent oracle via centre-rooted AHU codes


def tree_centres(adj):
    n = len(adj)
    deg = [len(a) for a in adj]
    layer = [v for v in range(n) if deg[v] <= 1]
    removed = len(layer)
    while removed < n:
        nxt = []
        for v in layer:
            for w in adj[v]:
                deg[w] -= 1
                if deg[w] == 1:
                    nxt.append(w)
        removed += len(nxt)
        layer = nxt
    return layer


def rooted_code(adj, v, parent, sink=None):
    kids = sorted(rooted_code(adj, w, v, sink) for w in adj[v] if w != parent)
    if sink is not None and len(kids) != len(set(kids)):
        sink.append(v)
    return "(" + "".join(kids) + ")"


def tree_code_and_symmetry(adj):
    """AHU code of a free tree and whether it has a non-trivial automorphism."""
    centres = tree_centres(adj)
    clashes = []
    if len(centres) == 1:
        return rooted_code(adj, centres[0], -1, clashes), bool(clashes)
    a, b = centres
    ca, cb = rooted_code(adj, a, b, clashes), rooted_code(adj, b, a, clashes)
    return "".join(sorted([ca, cb])), bool(clashes) or ca == cb


def oracle_trees(n):
    """Grow trees leaf by leaf, deduplicated by AHU code."""
    level = {"()": [[]]} if n >= 1 else {}
    for size in range(2, n + 1):
        nxt = {}
        for adj in level.values():
            for v in range(size - 1):
                new = [list(a) for a in adj] + [[v]]
                new[v].append(size - 1)
                code, _ = tree_code_and_symmetry(new)
                nxt.setdefault(code, new)
        level = nxt
    return level


def adj_to_graph(adj):
    return Graph(len(adj), [(u, v) for u in range(len(adj)) for v in adj[u] if u < v])


@pytest.mark.parametrize("n", range(1, 11))
def test_tree_counts_match_ahu_oracle(n):
    oracle = oracle_trees(n)
    ours = enumerate_trees(n)
    assert len(ours) == len(oracle)
    assert sorted(canonical_form(adj_to_graph(a)) for a in oracle.values()) == ours
    asym = [a for a in oracle.values() if not tree_code_and_symmetry(a)[1]]
    assert len(enumerate_asymmetric_trees(n)) == len(asym)


def test_tree_counts_known():
    assert [len(enumerate_trees(n)) for n in range(1, 13)] == [1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235, 551]


def test_asymmetric_trees_7_8_9():
    counts = {n: enumerate_asymmetric_trees(n) for n in (7, 8, 9)}
    assert [len(counts[n]) for n in (7, 8, 9)] == [1, 1, 3]
    nine = [decode_graph6(c) for c in counts[9]]
    for t in nine:
        assert brute_force_group_order(t) == 1
    non_stars = [t for t in nine if not is_subdivided_star(t)]
    assert len(non_stars) == 1
    assert canonical_form(non_stars[0]) == canonical_form(fig3_tree())
    stars = {canonical_form(t) for t in nine if is_subdivided_star(t)}
    assert stars == {canonical_form(subdivided_star([1, 2, 5])), canonical_form(subdivided_star([1, 3, 4]))}


def test_no_asymmetric_trees_2_to_6():
    for n in range(2, 7):
        assert enumerate_asymmetric_trees(n) == []


def test_tree_bounds():
    with pytest.raises(EnumerationError):
        enumerate_trees(0)
    with pytest.raises(EnumerationError):
        enumerate_trees(13)


# ---------------------------------------------------------------------------
# small graphs


def test_graph_counts():
    assert [len(enumerate_graphs(n)) for n in range(7)] == [1, 1, 2, 4, 11, 34, 156]


def test_graphs_n4_exhaustive():
    # every labelled graph on 4 vertices lands on one of the 11 forms
    pairs = list(itertools.combinations(range(4), 2))
    forms = {canonical_form(Graph(4, [p for i, p in enumerate(pairs) if bits >> i & 1])) for bits in range(64)}
    assert forms == set(enumerate_graphs(4))
    orders = sorted(automorphism_group(decode_graph6(c)).group_order for c in forms)
    assert sum(24 // o for o in orders) == 64
