import itertools
import random

import pytest

from asymgraphs.automorphism import are_isomorphic, automorphism_group, canonical_form, is_asymmetric
from asymgraphs.constructions import (
    ConstructionError,
    ConstructionSpec,
    classify_cubic_edges,
    cubic_chords,
    cubic_edge_class_formulas,
    cubic_family,
    extend_asymmetric,
    fig3_tree,
    hamiltonian_certificate,
    higher_regular_family,
    quartic_family,
    quartic_matching,
    search_5regular_asymmetric_hamiltonian,
    subdivided_star,
)
from asymgraphs.graph import build_graph, cycles_of_length, dirac_guarantees_hamiltonian, find_hamiltonian_cycle

from conftest import random_relabeling

EVEN_12_64 = list(range(12, 65, 2))


def one_based(edges):
    return sorted(tuple(sorted((u + 1, v + 1))) for u, v in edges)


# ---------------------------------------------------------------------------
# subdivided stars and the figure trees


def test_star_fig1_and_fig2():
    t = subdivided_star([1, 2, 3])
    assert t.n == 7 and t.is_tree() and t.degree(0) == 3
    assert t.n == 7 and is_asymmetric(t)
    assert subdivided_star([1, 2, 4]).n == 8


def test_star_two_arms_is_path():
    p5 = subdivided_star([2, 2])
    assert sorted(p5.degrees()) == [1, 1, 2, 2, 2]
    assert not is_asymmetric(p5)


@pytest.mark.parametrize("arms", [[], [0, 1], [2, -1]])
def test_star_rejects(arms):
    with pytest.raises(ConstructionError):
        subdivided_star(arms)


def test_distinct_arm_stars_asymmetric():
    checked = 0
    for total in range(6, 21):
        for k in range(3, 6):
            for arms in itertools.combinations(range(1, total), k):
                if sum(arms) == total:
                    assert is_asymmetric(subdivided_star(arms)), arms
                    checked += 1
    assert checked > 100


def test_fig3_tree():
    t = fig3_tree()
    assert sorted(t.degrees(), reverse=True) == [3, 3, 2, 2, 2, 1, 1, 1, 1]
    assert t.is_tree() and t.num_edges == 8
    assert is_asymmetric(t)
    # the two degree-3 vertices are adjacent
    assert t.has_edge(0, 1) and t.degree(0) == t.degree(1) == 3
    for arms in ([1, 2, 5], [1, 3, 4]):
        assert not are_isomorphic(t, subdivided_star(arms))


# ---------------------------------------------------------------------------
# cubic and quartic families


def test_cubic12_chords_and_triangles():
    assert sorted(cubic_chords(12)) == sorted([(12, 5), (1, 10), (11, 9), (2, 8), (3, 7), (4, 6)])
    g = cubic_family(12)
    assert g.is_regular(3)
    assert sorted(cycles_of_length(g, 3)) == [(3, 4, 5), (8, 9, 10)]


@pytest.mark.parametrize("n", [11, 10, 13, 0])
def test_family_rejects_bad_n(n):
    with pytest.raises(ConstructionError):
        cubic_family(n)
    with pytest.raises(ConstructionError):
        quartic_family(n)


@pytest.mark.parametrize("n", EVEN_12_64)
def test_cubic_family_invariants(n):
    g = cubic_family(n)
    assert g.is_regular(3) and g.is_connected()
    assert hamiltonian_certificate(g) == list(range(n))
    h = n // 2
    assert sorted(cycles_of_length(g, 3)) == [(h - 3, h - 2, h - 1), (n - 4, n - 3, n - 2)]
    assert is_asymmetric(g)


def test_quartic12_matching():
    expected = {(3, 9), (2, 4), (1, 5), (6, 12), (7, 11), (8, 10)}
    assert {tuple(sorted(e)) for e in quartic_matching(12)} == expected
    g = quartic_family(12)
    assert g.is_regular(4) and is_asymmetric(g)


@pytest.mark.parametrize("n", EVEN_12_64)
def test_quartic_family_invariants(n):
    g = quartic_family(n)
    assert g.is_regular(4)
    assert hamiltonian_certificate(g) == list(range(n))
    assert is_asymmetric(g)
    # the added edges form a perfect matching disjoint from the cubic base
    matched = sorted(v for e in quartic_matching(n) for v in e)
    assert matched == list(range(1, n + 1))


@pytest.mark.parametrize("n", [12, 14, 20, 30, 40])
def test_complement_families(n):
    c = higher_regular_family(n, "cubic")
    q = higher_regular_family(n, "quartic")
    assert c.is_regular(n - 4) and q.is_regular(n - 5)
    assert dirac_guarantees_hamiltonian(c) and dirac_guarantees_hamiltonian(q)
    assert is_asymmetric(c) and is_asymmetric(q)


def test_complement_involution_on_family():
    assert higher_regular_family(14, "cubic").complement() == cubic_family(14)
    with pytest.raises(ConstructionError):
        higher_regular_family(14, "quintic")


# ---------------------------------------------------------------------------
# edge classes


def test_classes_n12():
    cls = classify_cubic_edges(cubic_family(12), 12)
    assert one_based(cls.classes["I"]) == [(1, 2)]
    assert sum(len(v) for v in cls.classes.values()) == 18
    assert cls.leftover == []


def test_class_v_n16():
    cls = classify_cubic_edges(cubic_family(16), 16)
    assert one_based(cls.classes["V"]) == [(7, 16), (12, 13)]


@pytest.mark.parametrize("n", range(12, 41, 2))
def test_classes_partition(n):
    g = cubic_family(n)
    cls = classify_cubic_edges(g, n)
    members = [e for es in cls.classes.values() for e in es]
    assert len(members) == len(set(members)) == g.num_edges
    assert cls.leftover == []


def test_class_vi_formula_range():
    # k = 2 gives v2 v_{n-4}, which already belongs to class II
    f = cubic_edge_class_formulas(12)
    assert (2, 8) in f["II"] and f["VI"] == []
    assert cubic_edge_class_formulas(16)["VI"] == [(3, 11), (4, 10)]


def test_classify_rejects_other_graphs():
    with pytest.raises(ConstructionError):
        classify_cubic_edges(quartic_family(12), 12)


# ---------------------------------------------------------------------------
# extension


def test_extend_t123():
    assert are_isomorphic(extend_asymmetric(subdivided_star([1, 2, 3])), subdivided_star([1, 2, 4]))
    assert are_isomorphic(extend_asymmetric(subdivided_star([1, 2, 4])), subdivided_star([1, 2, 5]))


def test_extend_cubic12():
    g = extend_asymmetric(cubic_family(12))
    assert g.n == 13 and is_asymmetric(g)
    assert sorted(g.degrees()) == [1] + [3] * 11 + [4]


def test_extend_rejects_symmetric():
    with pytest.raises(ConstructionError):
        extend_asymmetric(subdivided_star([2, 2]))


def test_extend_single_vertex():
    # K1 is the trivial asymmetric graph; its extension P2 is not asymmetric
    from asymgraphs.constructions import ExtensionError
    from asymgraphs.graph import Graph

    with pytest.raises(ExtensionError):
        extend_asymmetric(Graph(1))


@pytest.mark.parametrize("n", range(12, 25, 2))
def test_extend_families(n):
    for g in (cubic_family(n), quartic_family(n), higher_regular_family(n, "cubic")):
        h = extend_asymmetric(g)
        assert h.n == n + 1 and is_asymmetric(h)


# ---------------------------------------------------------------------------
# 5-regular search


def test_search_5reg():
    g = search_5regular_asymmetric_hamiltonian(12, seed=1, budget=200)
    assert g is not None
    assert g.is_regular(5)
    assert automorphism_group(g).group_order == 1
    assert find_hamiltonian_cycle(g) is not None
    assert search_5regular_asymmetric_hamiltonian(12, seed=1, budget=200) == g
    rng = random.Random(3)
    for _ in range(10):
        assert canonical_form(random_relabeling(rng, g)) == canonical_form(g)


def test_search_5reg_zero_budget():
    assert search_5regular_asymmetric_hamiltonian(12, seed=1, budget=0) is None


# ---------------------------------------------------------------------------
# recipes


def test_spec_round_trip():
    spec = ConstructionSpec.from_json('{"family": "subdivided-star", "arms": "1,2,3"}')
    assert spec.arms == [1, 2, 3]
    assert spec.build() == subdivided_star([1, 2, 3])
    assert ConstructionSpec.from_dict(spec.to_dict()) == spec
    assert ConstructionSpec("cubic", 14).build() == cubic_family(14)
    assert ConstructionSpec("fig3_tree").build() == fig3_tree()


@pytest.mark.parametrize(
    "data",
    [{"family": "dodecahedron", "n": 12}, {"family": "cubic"}, {"family": "quartic", "n": 13}, {"family": "subdivided_star"}],
)
def test_spec_rejects(data):
    with pytest.raises(ConstructionError):
        ConstructionSpec.from_dict(data)


def test_build_graph_matches_one_based_names():
    g = cubic_family(12)
    assert g == build_graph(12, [(k, k % 12 + 1) for k in range(1, 13)] + cubic_chords(12))
