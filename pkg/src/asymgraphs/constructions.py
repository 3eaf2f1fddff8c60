"""Builders for the asymmetric graph families.

Edge recipes are written with the 1-based vertex names ``v1..vn`` used in
the literature on these families and converted once by ``build_graph``.
"""
from __future__ import annotations

import json
import random
from dataclasses import asdict, dataclass, field
from typing import Callable, Sequence

from .automorphism import automorphism_group, is_asymmetric
from .graph import (
    Graph,
    GraphError,
    bfs_distances,
    build_graph,
    cycles_of_length,
    edge_cycle_profile,
    find_hamiltonian_cycle,
    is_hamiltonian_cycle,
)


class ConstructionError(ValueError):
    """Bad construction parameters or a recipe that failed its own audit."""


class ExtensionError(RuntimeError):
    """Extending an asymmetric graph produced a graph with symmetry."""


FAMILIES = (
    "subdivided_star",
    "fig3_tree",
    "cubic",
    "quartic",
    "complement_cubic",
    "complement_quartic",
    "five_regular",
)


def _check_even_n(n: int, family: str) -> None:
    if not isinstance(n, int) or n < 12 or n % 2:
        raise ConstructionError(f"{family} needs an even n >= 12, got n={n}")


def _wrap(k: int, n: int) -> int:
    """Reduce a 1-based index mod n, with residue 0 meaning v_n."""
    return (k - 1) % n + 1


def subdivided_star(arms: Sequence[int]) -> Graph:
    """``T_{n1,...,nk}``: vertex v1 is the centre, arms follow in the given order."""
    if not arms:
        raise ConstructionError("a subdivided star needs at least one arm")
    if any(a < 1 for a in arms):
        raise ConstructionError(f"arm lengths must be positive, got {list(arms)}")
    n = 1 + sum(arms)
    edges = []
    nxt = 2
    for length in arms:
        prev = 1
        for _ in range(length):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return build_graph(n, edges)


def fig3_tree() -> Graph:
    """Smallest asymmetric tree that is not a subdivided star (9 vertices).

    v1 and v2 are the adjacent degree-3 vertices; v1 carries arms of length 1
    (v6) and 3 (v7 v8 v9), v2 carries arms of length 2 (v3 v4) and 1 (v5).
    """
    return build_graph(9, [(1, 2), (2, 3), (3, 4), (2, 5), (1, 6), (1, 7), (7, 8), (8, 9)])


def hamiltonian_cycle_edges(n: int) -> list[tuple[int, int]]:
    return [(k, k + 1) for k in range(1, n)] + [(n, 1)]


def cubic_chords(n: int) -> list[tuple[int, int]]:
    half = n // 2
    chords = [(n, half - 1), (1, n - 2), (n - 1, n - 3)]
    chords += [(k, n - 2 - k) for k in range(2, half - 1)]
    return chords


def cubic_family(n: int) -> Graph:
    _check_even_n(n, "cubic family")
    return build_graph(n, hamiltonian_cycle_edges(n) + cubic_chords(n))


def quartic_matching(n: int) -> list[tuple[int, int]]:
    """Perfect matching added on top of the cubic graph."""
    half = n // 2
    if n % 4 == 0:
        q = n // 4
        extra = [(q, 3 * q)]
        extra += [(q + i, _wrap(q - i, n)) for i in range(1, half)]
    else:
        extra = [(1, half + 1)]
        extra += [(1 + i, _wrap(1 - i, n)) for i in range(1, half)]
    return extra


def quartic_family(n: int) -> Graph:
    _check_even_n(n, "quartic family")
    base = hamiltonian_cycle_edges(n) + cubic_chords(n)
    present = {frozenset(e) for e in base}
    for u, v in quartic_matching(n):
        if u == v or frozenset((u, v)) in present:
            raise ConstructionError(f"quartic chord v{u}v{v} collides with an existing edge for n={n}")
        present.add(frozenset((u, v)))
    return build_graph(n, base + quartic_matching(n))


def higher_regular_family(n: int, source: str = "cubic") -> Graph:
    """Complement of the cubic (``n-4``-regular) or quartic (``n-5``-regular) graph."""
    if source == "cubic":
        return cubic_family(n).complement()
    if source == "quartic":
        return quartic_family(n).complement()
    raise ConstructionError(f"source must be 'cubic' or 'quartic', got {source!r}")


# ---------------------------------------------------------------------------
# extension by one vertex


def extend_asymmetric(g: Graph) -> Graph:
    """Add one pendant vertex so the result is again asymmetric.

    Without leaves the new vertex hangs off a vertex of maximum degree.
    Otherwise it extends the leaf farthest from any vertex of degree > 2.
    Ties go to the lowest index. The result is re-certified by the solver.
    """
    if not is_asymmetric(g):
        raise ConstructionError("extend_asymmetric needs an asymmetric input graph")
    degs = g.degrees()
    leaves = [v for v in range(g.n) if degs[v] == 1]
    if not leaves:
        top = max(degs) if degs else 0
        anchor = min(v for v in range(g.n) if degs[v] == top) if g.n else None
    else:
        branch = {v for v in range(g.n) if degs[v] > 2}
        if branch:
            def reach(u: int) -> float:
                dist = bfs_distances(g, u)
                ds = [d for w, d in dist.items() if w in branch]
                return min(ds) if ds else float("inf")
        else:
            def reach(u: int) -> float:
                return max(bfs_distances(g, u).values())
        anchor = max(leaves, key=lambda u: (reach(u), -u))
    out = g.add_vertex([] if anchor is None else [anchor])
    report = automorphism_group(out)
    if not report.is_asymmetric:
        raise ExtensionError(
            f"extension of an asymmetric graph on {g.n} vertices at v{(anchor or 0) + 1} "
            f"has group order {report.group_order}; the extension step fails here"
        )
    return out


# ---------------------------------------------------------------------------
# 5-regular search


def _random_two_factor(n: int, forbidden: set[frozenset], rng: random.Random) -> list[tuple[int, int]] | None:
    stubs = [v for v in range(1, n + 1) for _ in range(2)]
    rng.shuffle(stubs)
    pairs = []
    seen = set()
    for i in range(0, len(stubs), 2):
        e = frozenset((stubs[i], stubs[i + 1]))
        if len(e) == 1 or e in forbidden or e in seen:
            return None
        seen.add(e)
        pairs.append((stubs[i], stubs[i + 1]))
    return pairs


def _random_matching(n: int, forbidden: set[frozenset], rng: random.Random) -> list[tuple[int, int]] | None:
    verts = list(range(1, n + 1))
    rng.shuffle(verts)
    out: list[tuple[int, int]] = []

    def solve(free: list[int]) -> bool:
        if not free:
            return True
        u = free[0]
        options = [w for w in free[1:] if frozenset((u, w)) not in forbidden]
        rng.shuffle(options)
        for w in options:
            out.append((u, w))
            if solve([x for x in free[1:] if x != w]):
                return True
            out.pop()
        return False

    return out if solve(verts) else None


def search_5regular_asymmetric_hamiltonian(n: int, seed: int = 0, budget: int = 1000) -> Graph | None:
    """Random search for an asymmetric 5-regular graph containing ``C_n``.

    Each trial adds a random 2-regular chord set and then a random perfect
    matching to the cycle ``v1..vn`` and keeps the first asymmetric result.
    """
    _check_even_n(n, "5-regular search")
    rng = random.Random(seed)
    cycle = hamiltonian_cycle_edges(n)
    base = {frozenset(e) for e in cycle}
    for _ in range(budget):
        two = _random_two_factor(n, base, rng)
        if two is None:
            continue
        used = base | {frozenset(e) for e in two}
        match = _random_matching(n, used, rng)
        if match is None:
            continue
        g = build_graph(n, cycle + two + match)
        if is_asymmetric(g):
            return g
    return None


# ---------------------------------------------------------------------------
# edge classes of the cubic family

CLASS_LABELS = ("I", "II", "III", "IV", "V", "VI", "VII")


@dataclass
class EdgeClassification:
    n: int
    classes: dict[str, list[tuple[int, int]]]
    leftover: list[tuple[int, int]] = field(default_factory=list)

    def label_of(self, edge: tuple[int, int]) -> str | None:
        e = tuple(sorted(edge))
        for label, members in self.classes.items():
            if e in members:
                return label
        return None

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "classes": {k: [f"v{u + 1}v{v + 1}" for u, v in es] for k, es in self.classes.items()},
            "leftover": [f"v{u + 1}v{v + 1}" for u, v in self.leftover],
        }


def cubic_edge_class_formulas(n: int) -> dict[str, list[tuple[int, int]]]:
    """The seven index-set formulas, as 1-based pairs."""
    h = n // 2
    return {
        "I": [(1, 2)],
        "II": [(n, n - 1), (n, 1), (1, n - 2), (2, n - 4), (h - 3, h + 1)],
        "III": [(n - 2, n - 1), (n - 1, n - 3), (h - 1, h), (h - 1, h - 2)],
        "IV": [(n - 3, n - 2), (h - 2, h)],
        "V": [(n, h - 1), (n - 3, n - 4)],
        # k = 2 and k = n/2 - 3 are the class-II chords
        "VI": [(k, n - 2 - k) for k in range(3, h - 3)],
        "VII": [(k, k + 1) for k in list(range(2, h - 2)) + list(range(h, n - 4))],
    }


@dataclass(frozen=True)
class _EdgeFacts:
    c3: int
    c4: int
    c5: int
    touching_c3: int
    touching_c4: int
    near_other_c3: bool


def _edge_facts(g: Graph) -> dict[tuple[int, int], _EdgeFacts]:
    triangles = [set(t) for t in cycles_of_length(g, 3)]
    squares = [set(c) for c in cycles_of_length(g, 4)]
    dist = {v: bfs_distances(g, v) for v in range(g.n)}
    facts = {}
    for u, v in g.edges():
        prof = edge_cycle_profile(g, (u, v), max_length=5)
        near = False
        for tri in triangles:
            if {u, v} <= tri:
                others = [t for t in triangles if t is not tri]
                near = any(dist[x][y] == 2 for x in (u, v) for t in others for y in t)
        touching_c3 = sum(1 for t in triangles if (u in t or v in t) and not {u, v} <= t)
        touching_c4 = sum(1 for s in squares if (u in s or v in s) and not {u, v} <= s)
        facts[(u, v)] = _EdgeFacts(
            prof.in_cycles[3], prof.in_cycles[4], prof.in_cycles[5], touching_c3, touching_c4, near
        )
    return facts


# membership test for each class, phrased through cycle statistics only
CLASS_PREDICATES: dict[str, Callable[[_EdgeFacts], bool]] = {
    "I": lambda f: f.c4 == 0 and f.touching_c4 == 2,
    # the C5 through a triangle chord puts two class-VII edges in a C4 and a C5 too;
    # class II edges are the ones with no other C4 at their endpoints
    "II": lambda f: f.c4 >= 1 and f.c5 >= 1 and f.touching_c4 == 0,
    "III": lambda f: f.c3 >= 1 and f.near_other_c3,
    "IV": lambda f: f.c3 >= 1 and not f.near_other_c3,
    # v_{n-3} v_{n-4} lies on the 5-cycle v_{n-4} v2 v1 v_{n-2} v_{n-3}, so no C5 condition
    "V": lambda f: f.c3 == 0 and f.touching_c3 >= 1 and f.c4 == 0,
    "VI": lambda f: f.c4 == 2 and f.c5 == 0,
    "VII": lambda f: f.c4 >= 1 and f.touching_c4 >= 1,
}


def classify_cubic_edges(g: Graph, n: int) -> EdgeClassification:
    if g != cubic_family(n):
        raise ConstructionError(f"graph is not the cubic family member on {n} vertices")
    classes = {}
    assigned: set[tuple[int, int]] = set()
    for label, pairs in cubic_edge_class_formulas(n).items():
        members = sorted(tuple(sorted((u - 1, v - 1))) for u, v in pairs)
        for e in members:
            if not g.has_edge(*e):
                raise ConstructionError(f"class {label} edge v{e[0] + 1}v{e[1] + 1} is not in the graph")
            if e in assigned:
                raise ConstructionError(f"edge v{e[0] + 1}v{e[1] + 1} falls in two classes")
            assigned.add(e)
        classes[label] = members
    leftover = [e for e in g.edges() if e not in assigned]
    result = EdgeClassification(n, classes, leftover)
    mismatches = check_edge_predicates(g, result)
    if mismatches:
        raise ConstructionError("edge classes disagree with their cycle predicates: " + "; ".join(mismatches))
    return result


def check_edge_predicates(g: Graph, classification: EdgeClassification) -> list[str]:
    """Edges where a class predicate and class membership disagree."""
    facts = _edge_facts(g)
    problems = []
    for label, pred in CLASS_PREDICATES.items():
        members = set(classification.classes.get(label, []))
        for e, f in facts.items():
            if pred(f) != (e in members):
                state = "member fails" if e in members else "non-member satisfies"
                problems.append(f"{label}: {state} at v{e[0] + 1}v{e[1] + 1}")
    return problems


# ---------------------------------------------------------------------------
# recipes


@dataclass
class ConstructionSpec:
    family: str
    n: int | None = None
    arms: list[int] | None = None
    seed: int = 0
    budget: int = 1000

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ConstructionError(f"unknown family {self.family!r}; expected one of {', '.join(FAMILIES)}")
        if self.family == "subdivided_star":
            if not self.arms:
                raise ConstructionError("subdivided_star needs arms")
        elif self.family != "fig3_tree":
            if self.n is None:
                raise ConstructionError(f"{self.family} needs n")
            _check_even_n(self.n, self.family)

    @classmethod
    def from_dict(cls, data: dict) -> "ConstructionSpec":
        family = str(data["family"]).replace("-", "_")
        arms = data.get("arms")
        if isinstance(arms, str):
            arms = [int(a) for a in arms.split(",") if a]
        return cls(family, data.get("n"), arms, int(data.get("seed", 0)), int(data.get("budget", 1000)))

    @classmethod
    def from_json(cls, text: str) -> "ConstructionSpec":
        return cls.from_dict(json.loads(text))

    def to_dict(self) -> dict:
        return {k: v for k, v in asdict(self).items() if v is not None}

    def build(self) -> Graph | None:
        f = self.family
        if f == "subdivided_star":
            return subdivided_star(self.arms)
        if f == "fig3_tree":
            return fig3_tree()
        if f == "cubic":
            return cubic_family(self.n)
        if f == "quartic":
            return quartic_family(self.n)
        if f == "complement_cubic":
            return higher_regular_family(self.n, "cubic")
        if f == "complement_quartic":
            return higher_regular_family(self.n, "quartic")
        return search_5regular_asymmetric_hamiltonian(self.n, self.seed, self.budget)


def contains_cycle_v1_to_vn(g: Graph) -> bool:
    """True when ``v1 v2 ... vn`` is a Hamiltonian cycle of ``g``."""
    return is_hamiltonian_cycle(g, list(range(g.n)))


def hamiltonian_certificate(g: Graph) -> list[int] | None:
    if contains_cycle_v1_to_vn(g):
        return list(range(g.n))
    return find_hamiltonian_cycle(g)


__all__ = [
    "ConstructionError",
    "ConstructionSpec",
    "EdgeClassification",
    "ExtensionError",
    "GraphError",
    "classify_cubic_edges",
    "cubic_family",
    "extend_asymmetric",
    "fig3_tree",
    "higher_regular_family",
    "quartic_family",
    "search_5regular_asymmetric_hamiltonian",
    "subdivided_star",
]
