"""Automorphism groups and canonical forms by individualization-refinement.

One search engine serves both jobs. Nodes of the search tree are equitable
colorings; a child individualizes one vertex of the first smallest
non-singleton cell and refines again. Leaves (discrete colorings) are
labelings of the graph. Two leaves whose relabeled graphs coincide yield an
automorphism, and automorphisms found so far prune sibling branches that lie
in the same orbit.

The group order is read off the first path: at each node on it, the orbit of
the first child under the automorphisms fixing the node's prefix is a
coset-representative count, and the product of those orbit lengths is
``|Aut(G)|``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations
from typing import Iterable, Sequence

import numpy as np

from .graph import Graph, GraphError, _bits, encode_graph6


@dataclass(frozen=True)
class Permutation:
    """Bijection on ``0..n-1``; ``images[v]`` is the image of ``v``."""

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError("not a permutation")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    def __call__(self, v: int) -> int:
        return self.images[v]

    def __len__(self) -> int:
        return len(self.images)

    def compose(self, other: "Permutation") -> "Permutation":
        """``self`` after ``other``."""
        return Permutation(tuple(self.images[v] for v in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for v, w in enumerate(self.images):
            inv[w] = v
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(v == w for v, w in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        """Non-trivial cycles, each starting at its smallest vertex."""
        seen = set()
        out = []
        for start in range(len(self.images)):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            w = self.images[start]
            while w != start:
                cyc.append(w)
                seen.add(w)
                w = self.images[w]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def cycle_notation(self) -> str:
        """One-line cycle notation on 1-based vertex names, ``()`` for identity."""
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(str(v + 1) for v in c) + ")" for c in cyc)

    def is_automorphism_of(self, g: Graph) -> bool:
        if len(self.images) != g.n:
            return False
        return all(g.has_edge(self.images[u], self.images[v]) for u, v in g.edges())


@dataclass(frozen=True)
class Coloring:
    """Ordered partition of the vertex set into cells."""

    cells: tuple[tuple[int, ...], ...]

    @classmethod
    def unit(cls, n: int) -> "Coloring":
        return cls((tuple(range(n)),) if n else ())

    @classmethod
    def from_cells(cls, cells: Iterable[Iterable[int]], n: int | None = None) -> "Coloring":
        cells = tuple(tuple(c) for c in cells)
        flat = [v for c in cells for v in c]
        if any(not c for c in cells):
            raise ValueError("empty cell")
        size = len(flat) if n is None else n
        if sorted(flat) != list(range(size)):
            raise ValueError("cells must partition the vertex set")
        return cls(cells)

    def is_discrete(self) -> bool:
        return all(len(c) == 1 for c in self.cells)

    def cell_index(self) -> list[int]:
        idx = [0] * sum(len(c) for c in self.cells)
        for i, c in enumerate(self.cells):
            for v in c:
                idx[v] = i
        return idx

    def __len__(self) -> int:
        return len(self.cells)


@dataclass
class AutReport:
    n: int
    group_order: int
    generators: list[Permutation]
    orbits: list[list[int]]
    is_asymmetric: bool

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "group_order": self.group_order,
            "generators": [p.cycle_notation() for p in self.generators],
            "orbits": [[v + 1 for v in orb] for orb in self.orbits],
            "is_asymmetric": self.is_asymmetric,
        }


# ---------------------------------------------------------------------------
# refinement


def _mask(cell: Iterable[int]) -> int:
    m = 0
    for v in cell:
        m |= 1 << v
    return m


def _refine_cells(masks: Sequence[int], cells: list[list[int]], splitters: list[int]) -> list[list[int]]:
    """Coarsest equitable refinement of ``cells``.

    ``splitters`` are bitmasks of vertex sets the caller wants re-checked;
    passing every cell is always correct, passing just a freshly
    individualized singleton is enough when ``cells`` was equitable before.
    Fragments of a split cell are ordered by increasing neighbour count.
    """
    queue = list(splitters)
    head = 0
    while head < len(queue):
        if len(cells) == len(masks):
            break
        w = queue[head]
        head += 1
        new_cells = []
        for cell in cells:
            if len(cell) == 1:
                new_cells.append(cell)
                continue
            groups: dict[int, list[int]] = {}
            for v in cell:
                groups.setdefault((masks[v] & w).bit_count(), []).append(v)
            if len(groups) == 1:
                new_cells.append(cell)
                continue
            for key in sorted(groups):
                frag = groups[key]
                new_cells.append(frag)
                queue.append(_mask(frag))
        cells = new_cells
    return cells


def refine(g: Graph, coloring: Coloring) -> Coloring:
    """Coarsest equitable coloring refining ``coloring`` (1-dim WL)."""
    cells = [sorted(c) for c in coloring.cells]
    out = _refine_cells(g.masks, cells, [_mask(c) for c in cells])
    return Coloring(tuple(tuple(sorted(c)) for c in out))


def is_equitable(g: Graph, coloring: Coloring) -> bool:
    cell_masks = [_mask(c) for c in coloring.cells]
    for c in coloring.cells:
        for w in cell_masks:
            if len({(g.masks[v] & w).bit_count() for v in c}) > 1:
                return False
    return True


def _individualize(cells: list[list[int]], v: int) -> tuple[list[list[int]], int]:
    out = []
    for cell in cells:
        if v in cell:
            out.append([v])
            rest = [w for w in cell if w != v]
            if rest:
                out.append(rest)
        else:
            out.append(cell)
    return out, 1 << v


def _target_cell(cells: list[list[int]]) -> list[int]:
    best = None
    for cell in cells:
        if len(cell) > 1 and (best is None or len(cell) < len(best)):
            best = cell
    return sorted(best)


def _node_invariant(masks: Sequence[int], cells: list[list[int]]) -> tuple:
    # cell sizes plus the quotient matrix of an equitable coloring
    cm = [_mask(c) for c in cells]
    return tuple((len(c), tuple((masks[c[0]] & w).bit_count() for w in cm)) for c in cells)


class _UnionFind:
    def __init__(self, items: Iterable[int]):
        self.parent = {v: v for v in items}

    def find(self, v: int) -> int:
        while self.parent[v] != v:
            self.parent[v] = self.parent[self.parent[v]]
            v = self.parent[v]
        return v

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


@dataclass
class _Leaf:
    seq: tuple[int, ...]
    lab: tuple[int, ...]
    code: bytes


@dataclass
class _Search:
    graph: Graph
    canonical: bool
    generators: list[tuple[int, ...]] = field(default_factory=list)
    first: _Leaf | None = None
    best: _Leaf | None = None
    first_invariants: list[tuple] = field(default_factory=list)
    order: int = 1

    def run(self) -> None:
        g = self.graph
        if g.n == 0:
            return
        cells = _refine_cells(g.masks, [list(range(g.n))], [(1 << g.n) - 1])
        self._visit(cells, (), True)

    def _leaf_code(self, lab: Sequence[int]) -> bytes:
        pos = [0] * len(lab)
        for i, v in enumerate(lab):
            pos[v] = i
        return encode_graph6(self.graph.relabel(pos))

    def _automorphism(self, a: _Leaf, b: _Leaf) -> tuple[int, ...]:
        img = [0] * len(a.lab)
        for x, y in zip(a.lab, b.lab):
            img[x] = y
        return tuple(img)

    def _visit(self, cells: list[list[int]], seq: tuple[int, ...], on_first: bool) -> int | None:
        depth = len(seq)
        masks = self.graph.masks
        if on_first:
            self.first_invariants.append(_node_invariant(masks, cells))
        elif not self.canonical:
            # a subtree whose invariant differs from the first path holds no leaf equivalent to it
            if _node_invariant(masks, cells) != self.first_invariants[depth]:
                return None

        if len(cells) == len(masks):
            lab = tuple(c[0] for c in cells)
            leaf = _Leaf(seq, lab, self._leaf_code(lab))
            if self.first is None:
                self.first = self.best = leaf
                return None
            if leaf.code == self.first.code:
                self._record(self._automorphism(self.first, leaf))
                return _common_prefix(seq, self.first.seq)
            if self.canonical:
                if leaf.code == self.best.code:
                    self._record(self._automorphism(self.best, leaf))
                    return _common_prefix(seq, self.best.seq)
                if leaf.code < self.best.code:
                    self.best = leaf
            return None

        target = _target_cell(cells)
        explored: list[int] = []
        uf = _UnionFind(target)
        seen_gens = 0
        for x in target:
            seen_gens = self._merge_orbits(uf, seq, seen_gens)
            if any(uf.find(x) == uf.find(y) for y in explored):
                continue
            explored.append(x)
            child, splitter = _individualize(cells, x)
            child = _refine_cells(masks, child, [splitter])
            jump = self._visit(child, seq + (x,), on_first and x == target[0])
            if jump is not None and jump < depth:
                return jump
        if on_first:
            self._merge_orbits(uf, seq, seen_gens)
            root = uf.find(target[0])
            self.order *= sum(1 for v in target if uf.find(v) == root)
        return None

    def _merge_orbits(self, uf: _UnionFind, seq: tuple[int, ...], start: int) -> int:
        for gen in self.generators[start:]:
            if all(gen[s] == s for s in seq):
                for v in uf.parent:
                    uf.union(v, gen[v])
        return len(self.generators)

    def _record(self, gen: tuple[int, ...]) -> None:
        if any(v != w for v, w in enumerate(gen)):
            self.generators.append(gen)


def _common_prefix(a: Sequence[int], b: Sequence[int]) -> int:
    k = 0
    for x, y in zip(a, b):
        if x != y:
            break
        k += 1
    return k


def orbits_from_generators(n: int, generators: Iterable[Sequence[int]]) -> list[list[int]]:
    uf = _UnionFind(range(n))
    for gen in generators:
        for v in range(n):
            uf.union(v, gen[v])
    groups: dict[int, list[int]] = {}
    for v in range(n):
        groups.setdefault(uf.find(v), []).append(v)
    return sorted(groups.values())


def automorphism_group(g: Graph) -> AutReport:
    if g.n < 1:
        raise GraphError("automorphism_group needs at least one vertex")
    search = _Search(g, canonical=False)
    search.run()
    gens = [Permutation(p) for p in search.generators]
    orbits = orbits_from_generators(g.n, search.generators)
    return AutReport(g.n, search.order, gens, orbits, search.order == 1)


def is_asymmetric(g: Graph) -> bool:
    return automorphism_group(g).group_order == 1


def canonical_labeling(g: Graph) -> Permutation:
    """Permutation taking ``g`` to its canonical copy (vertex ``v`` -> ``perm(v)``)."""
    if g.n == 0:
        return Permutation(())
    search = _Search(g, canonical=True)
    search.run()
    pos = [0] * g.n
    for i, v in enumerate(search.best.lab):
        pos[v] = i
    return Permutation(tuple(pos))


def canonical_form(g: Graph) -> bytes:
    """graph6 of the canonical copy; equal exactly for isomorphic graphs."""
    if g.n == 0:
        return encode_graph6(g)
    search = _Search(g, canonical=True)
    search.run()
    return search.best.code


def triangle_counts(g: Graph) -> list[int]:
    masks = g.masks
    return [sum((masks[v] & masks[w]).bit_count() for w in _bits(masks[v])) // 2 for v in range(g.n)]


def _prefilter_key(g: Graph) -> tuple:
    return (g.n, g.num_edges, tuple(sorted(zip(g.degrees(), triangle_counts(g)))))


def are_isomorphic(g: Graph, h: Graph) -> bool:
    if _prefilter_key(g) != _prefilter_key(h):
        return False
    return canonical_form(g) == canonical_form(h)


# ---------------------------------------------------------------------------
# brute-force oracle

BRUTE_FORCE_MAX_N = 9


@lru_cache(maxsize=None)
def _all_permutations(n: int) -> np.ndarray:
    return np.array(list(permutations(range(n))), dtype=np.int8).reshape(-1, n)


def _adjacency_matrix(g: Graph) -> np.ndarray:
    a = np.zeros((g.n, g.n), dtype=bool)
    for u, v in g.edges():
        a[u, v] = a[v, u] = True
    return a


def brute_force_automorphisms(g: Graph) -> list[Permutation]:
    """Every automorphism, found by testing all ``n!`` vertex permutations."""
    n = g.n
    if n > BRUTE_FORCE_MAX_N:
        raise GraphError(f"brute force is limited to n <= {BRUTE_FORCE_MAX_N}")
    if n == 0:
        return [Permutation(())]
    perms = _all_permutations(n)
    a = _adjacency_matrix(g)
    ok = np.ones(len(perms), dtype=bool)
    for i in range(n):
        for j in range(i + 1, n):
            ok &= a[perms[:, i], perms[:, j]] == a[i, j]
    return [Permutation(tuple(int(x) for x in p)) for p in perms[ok]]


def brute_force_group_order(g: Graph) -> int:
    return len(brute_force_automorphisms(g))


def brute_force_isomorphic(g: Graph, h: Graph) -> bool:
    """Search all bijections for an isomorphism (oracle, n <= 9)."""
    if g.n != h.n or g.num_edges != h.num_edges:
        return False
    n = g.n
    if n > BRUTE_FORCE_MAX_N:
        raise GraphError(f"brute force is limited to n <= {BRUTE_FORCE_MAX_N}")
    if n == 0:
        return True
    perms = _all_permutations(n)
    a = _adjacency_matrix(g)
    b = _adjacency_matrix(h)
    ok = np.ones(len(perms), dtype=bool)
    for i in range(n):
        for j in range(i + 1, n):
            ok &= b[perms[:, i], perms[:, j]] == a[i, j]
    return bool(ok.any())


def group_order_upper_bound(g: Graph) -> int:
    """Product of factorials of the refined cell sizes; a cheap sanity bound."""
    return math.prod(math.factorial(len(c)) for c in refine(g, Coloring.unit(g.n)).cells)
