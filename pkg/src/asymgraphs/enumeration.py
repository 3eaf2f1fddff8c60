"""Counting and exhaustive generation.

* distinct-part partitions and the subdivided-star count built on them,
* isomorphism-free enumeration of cubic Hamiltonian graphs (``C_n`` plus a
  perfect matching of chords),
* small trees and small graphs up to isomorphism.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .automorphism import automorphism_group, canonical_form, triangle_counts
from .constructions import subdivided_star
from .graph import Graph, _bits, decode_graph6


class EnumerationError(ValueError):
    pass


# ---------------------------------------------------------------------------
# partitions


@dataclass(frozen=True)
class DistinctPartition:
    parts: tuple[int, ...]

    def __post_init__(self):
        if any(a <= b for a, b in zip(self.parts, self.parts[1:])) or any(p <= 0 for p in self.parts):
            raise ValueError(f"parts must be strictly decreasing positive integers: {self.parts}")

    @property
    def sum(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)


def q_distinct(m: int) -> int:
    """Number of partitions of ``m`` into distinct parts; ``q(0) = 1``."""
    if m < 0:
        raise ValueError("m must be non-negative")
    ways = [1] + [0] * m
    for part in range(1, m + 1):
        for s in range(m, part - 1, -1):
            ways[s] += ways[s - part]
    return ways[m]


def distinct_partitions(m: int, min_parts: int = 1) -> list[DistinctPartition]:
    """All partitions of ``m`` into at least ``min_parts`` distinct parts, lexicographic."""
    out: list[tuple[int, ...]] = []

    def grow(remaining: int, cap: int, acc: list[int]) -> None:
        if remaining == 0:
            if len(acc) >= min_parts:
                out.append(tuple(acc))
            return
        for p in range(1, min(cap, remaining) + 1):
            acc.append(p)
            grow(remaining - p, p - 1, acc)
            acc.pop()

    if m >= 1:
        grow(m, m, [])
    return [DistinctPartition(p) for p in sorted(out)]


def all_partitions(m: int) -> Iterator[tuple[int, ...]]:
    """Every partition of ``m`` (repeats allowed), parts non-increasing."""

    def grow(remaining: int, cap: int, acc: list[int]):
        if remaining == 0:
            yield tuple(acc)
            return
        for p in range(min(cap, remaining), 0, -1):
            acc.append(p)
            yield from grow(remaining - p, p, acc)
            acc.pop()

    yield from grow(m, m, [])


@dataclass
class AsdsCount:
    n: int
    formula_value: int
    exact_value: int
    partition_count: int
    stars: list[tuple[int, ...]]

    @property
    def discrepancy(self) -> int:
        return self.formula_value - self.exact_value

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "formula": self.formula_value,
            "exact": self.exact_value,
            "discrepancy": self.discrepancy,
            "partitions_3plus_distinct": self.partition_count,
            "stars": [list(s) for s in self.stars],
        }


def asds_formula(n: int) -> int:
    return q_distinct(n - 1) - (n - 1) // 2


def count_asds(n: int) -> AsdsCount:
    """Asymmetric subdivided stars on ``n`` vertices, by formula and by solver.

    The exact value builds the star for every partition of ``n - 1`` (with or
    without repeated parts) and keeps those the solver finds asymmetric.
    """
    if n < 4:
        raise EnumerationError("count_asds needs n >= 4")
    asym = []
    for arms in all_partitions(n - 1):
        if automorphism_group(subdivided_star(arms)).is_asymmetric:
            asym.append(arms)
    partition_count = len(distinct_partitions(n - 1, 3))
    return AsdsCount(n, asds_formula(n), len(asym), partition_count, sorted(asym))


def is_subdivided_star(g: Graph) -> bool:
    """A tree with at most one vertex of degree >= 3 (paths included)."""
    return g.is_tree() and sum(1 for d in g.degrees() if d >= 3) <= 1


# ---------------------------------------------------------------------------
# cubic Hamiltonian census

CENSUS_MIN_N = 4
CENSUS_MAX_N = 16


def chord_matchings(n: int, first_partner: int | None = None) -> Iterator[list[tuple[int, int]]]:
    """Perfect matchings of the complement of the cycle ``0..n-1``.

    ``first_partner`` restricts the output to matchings pairing vertex 0 with it.
    """
    def adjacent_on_cycle(u: int, w: int) -> bool:
        return (w - u) % n in (1, n - 1)

    matched = [False] * n
    acc: list[tuple[int, int]] = []
    if first_partner is not None:
        if adjacent_on_cycle(0, first_partner) or not 0 < first_partner < n:
            return
        matched[0] = matched[first_partner] = True
        acc.append((0, first_partner))

    def grow():
        try:
            u = matched.index(False)
        except ValueError:
            yield list(acc)
            return
        matched[u] = True
        for w in range(u + 1, n):
            if not matched[w] and not adjacent_on_cycle(u, w):
                matched[w] = True
                acc.append((u, w))
                yield from grow()
                acc.pop()
                matched[w] = False
        matched[u] = False

    yield from grow()


def _square_counts(g: Graph) -> list[int]:
    masks = g.masks
    counts = [0] * g.n
    for v in range(g.n):
        # 4-cycles through v: pairs of neighbours with a common neighbour other than v
        nb = _bits(masks[v])
        c = 0
        for i, a in enumerate(nb):
            for b in nb[i + 1:]:
                c += (masks[a] & masks[b] & ~(1 << v)).bit_count()
        counts[v] = c
    return counts


def _bucket_key(g: Graph) -> tuple:
    return tuple(sorted(zip(g.degrees(), triangle_counts(g), _square_counts(g))))


@dataclass
class CensusReport:
    n: int
    total_count: int
    asymmetric_count: int
    representatives: list[bytes]
    group_orders: list[int]
    matchings_examined: int = 0
    note: str = (
        "every cubic Hamiltonian graph is the cycle v1..vn plus a perfect matching of "
        "non-cycle pairs, so all such matchings are generated and merged by canonical form"
    )

    def asymmetric_representatives(self) -> list[bytes]:
        return [r for r, o in zip(self.representatives, self.group_orders) if o == 1]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "total_count": self.total_count,
            "asymmetric_count": self.asymmetric_count,
            "matchings_examined": self.matchings_examined,
            "representatives": [r.decode() for r in self.representatives],
            "group_orders": self.group_orders,
            "note": self.note,
        }


def _census_chunk(n: int, first_partner: int | None) -> tuple[int, dict[tuple, set[bytes]]]:
    cycle = [(i, i + 1) for i in range(n - 1)] + [(0, n - 1)]
    buckets: dict[tuple, set[bytes]] = {}
    examined = 0
    for matching in chord_matchings(n, first_partner):
        examined += 1
        g = Graph(n, cycle + matching)
        # canonical forms only need comparing inside one invariant bucket
        buckets.setdefault(_bucket_key(g), set()).add(canonical_form(g))
    return examined, buckets


def enumerate_cubic_hamiltonian(n: int, workers: int = 1) -> CensusReport:
    """Census of cubic Hamiltonian graphs on ``n`` vertices up to isomorphism.

    With ``workers > 1`` the matchings are split by the chord at vertex 0 and
    handled in separate processes; the merge is a sorted union, so the report
    does not depend on the worker count.
    """
    if n % 2:
        raise EnumerationError(f"no cubic graph has an odd number of vertices (n={n})")
    if not CENSUS_MIN_N <= n <= CENSUS_MAX_N:
        raise EnumerationError(f"census supports {CENSUS_MIN_N} <= n <= {CENSUS_MAX_N}, got n={n}")
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        partners = list(range(2, n - 1))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_census_chunk, [n] * len(partners), partners))
    else:
        chunks = [_census_chunk(n, None)]
    examined = sum(c[0] for c in chunks)
    buckets: dict[tuple, set[bytes]] = {}
    for _, part in chunks:
        for key, codes in part.items():
            buckets.setdefault(key, set()).update(codes)
    reps = sorted(set().union(*buckets.values())) if buckets else []
    orders = [automorphism_group(decode_graph6(r)).group_order for r in reps]
    return CensusReport(n, len(reps), sum(1 for o in orders if o == 1), reps, orders, examined)


# ---------------------------------------------------------------------------
# trees and small graphs

TREE_MAX_N = 12


def enumerate_trees(n: int) -> list[bytes]:
    """Canonical forms of all trees on ``n`` vertices, grown leaf by leaf."""
    if not 1 <= n <= TREE_MAX_N:
        raise EnumerationError(f"tree enumeration supports 1 <= n <= {TREE_MAX_N}, got n={n}")
    level = {canonical_form(Graph(1))}
    for size in range(2, n + 1):
        nxt = set()
        for code in level:
            t = decode_graph6(code)
            for v in range(size - 1):
                nxt.add(canonical_form(t.add_vertex([v])))
        level = nxt
    return sorted(level)


def enumerate_asymmetric_trees(n: int) -> list[bytes]:
    return [c for c in enumerate_trees(n) if automorphism_group(decode_graph6(c)).is_asymmetric]


def enumerate_graphs(n: int) -> list[bytes]:
    """Canonical forms of all graphs on ``n`` vertices (practical for n <= 7)."""
    if n < 0:
        raise EnumerationError("n must be non-negative")
    level = {canonical_form(Graph(0))}
    for size in range(1, n + 1):
        nxt = set()
        for code in level:
            g = decode_graph6(code)
            base = g.edges()
            for subset in range(1 << (size - 1)):
                nxt.add(canonical_form(Graph(size, base + [(v, size - 1) for v in _bits(subset)])))
        level = nxt
    return sorted(level)
