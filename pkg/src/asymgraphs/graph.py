"""Immutable simple graphs and the queries the rest of the package needs.

Vertices are ``0..n-1`` internally. User-facing functions (``build_graph``,
DOT export, reports) use 1-based names, so ``v_k`` is internal index ``k - 1``.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence


class GraphError(ValueError):
    """Raised for malformed graph input."""


class Graph6Error(GraphError):
    """Raised when a graph6 string cannot be decoded."""


class Graph:
    """Undirected simple graph stored as one neighbour bitmask per vertex."""

    __slots__ = ("_n", "_adj", "_hash")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise GraphError(f"vertex count must be non-negative, got {n}")
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if adj[u] >> v & 1:
                raise GraphError(f"duplicate edge ({u}, {v})")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        self._n = n
        self._adj = tuple(adj)
        self._hash = None

    @classmethod
    def from_masks(cls, masks: Sequence[int]) -> "Graph":
        """Wrap precomputed neighbour bitmasks; symmetry is checked."""
        n = len(masks)
        full = (1 << n) - 1
        for v, m in enumerate(masks):
            if m & ~full or m >> v & 1:
                raise GraphError(f"bad adjacency mask for vertex {v}")
        for u in range(n):
            m = masks[u]
            while m:
                low = m & -m
                w = low.bit_length() - 1
                if not masks[w] >> u & 1:
                    raise GraphError(f"asymmetric adjacency between {u} and {w}")
                m ^= low
        g = cls.__new__(cls)
        g._n = n
        g._adj = tuple(masks)
        g._hash = None
        return g

    @property
    def n(self) -> int:
        return self._n

    @property
    def masks(self) -> tuple[int, ...]:
        return self._adj

    def __len__(self) -> int:
        return self._n

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._adj == other._adj

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._adj)
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(n={self._n}, m={self.num_edges})"

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._adj[u] >> v & 1)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return _bits(self._adj[v])

    def degree(self, v: int) -> int:
        return self._adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [m.bit_count() for m in self._adj]

    @property
    def num_edges(self) -> int:
        return sum(self.degrees()) // 2

    def edges(self) -> list[tuple[int, int]]:
        """Edges as sorted ``(u, v)`` pairs with ``u < v``."""
        return [(u, v) for u in range(self._n) for v in _bits(self._adj[u]) if u < v]

    def is_regular(self, k: int | None = None) -> bool:
        degs = set(self.degrees())
        if len(degs) > 1:
            return False
        return k is None or not degs or degs == {k}

    def is_connected(self) -> bool:
        if self._n == 0:
            return True
        return len(bfs_distances(self, 0)) == self._n

    def is_tree(self) -> bool:
        return self._n >= 1 and self.num_edges == self._n - 1 and self.is_connected()

    def complement(self) -> "Graph":
        full = (1 << self._n) - 1
        return Graph.from_masks([full & ~m & ~(1 << v) for v, m in enumerate(self._adj)])

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Return the graph with vertex ``v`` renamed to ``perm[v]``."""
        masks = [0] * self._n
        for v, m in enumerate(self._adj):
            row = 0
            for w in _bits(m):
                row |= 1 << perm[w]
            masks[perm[v]] = row
        return Graph.from_masks(masks)

    def add_vertex(self, neighbors: Iterable[int] = ()) -> "Graph":
        """Return a copy with one extra vertex ``n`` joined to ``neighbors``."""
        new = self._n
        return Graph(self._n + 1, self.edges() + [(v, new) for v in neighbors])

    def to_graph6(self) -> bytes:
        return encode_graph6(self)

    def to_dot(self, name: str = "G") -> str:
        return to_dot(self, name)


def _bits(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


def build_graph(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Build a graph from 1-based vertex pairs (``v1..vn``)."""
    pairs = []
    for u, v in edges:
        if not (1 <= u <= n and 1 <= v <= n):
            raise GraphError(f"edge v{u}v{v} has an endpoint outside 1..{n}")
        pairs.append((u - 1, v - 1))
    return Graph(n, pairs)


def complement(g: Graph) -> Graph:
    return g.complement()


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def complete_graph(n: int) -> Graph:
    return Graph(n, combinations(range(n), 2))


def bfs_distances(g: Graph, source: int) -> dict[int, int]:
    dist = {source: 0}
    queue = deque([source])
    masks = g.masks
    while queue:
        u = queue.popleft()
        for w in _bits(masks[u]):
            if w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def distance(g: Graph, u: int, v: int) -> int | None:
    """Hop count of a shortest ``u``-``v`` path, or ``None`` if unreachable."""
    if not (0 <= u < g.n and 0 <= v < g.n):
        raise GraphError(f"vertex out of range for n={g.n}")
    return bfs_distances(g, u).get(v)


def eccentricity(g: Graph, v: int) -> int:
    return max(bfs_distances(g, v).values())


# ---------------------------------------------------------------------------
# cycles


@dataclass(frozen=True)
class EdgeCycleProfile:
    """Cycle statistics around one edge.

    ``in_cycles[L]`` counts the distinct ``L``-cycles that use the edge.
    ``incident_cycles[L]`` counts the ``L``-cycles whose vertex set lies within
    distance ``max_distance`` of an endpoint (distance 0: sharing a vertex),
    which includes the cycles that contain the edge.
    """

    edge: tuple[int, int]
    in_cycles: dict[int, int]
    incident_cycles: dict[int, int]
    max_distance: int = 0

    def touching_not_containing(self, length: int) -> int:
        return self.incident_cycles[length] - self.in_cycles[length]


def cycles_through_edge(g: Graph, u: int, v: int, length: int) -> list[tuple[int, ...]]:
    """Distinct cycles of ``length`` vertices that use edge ``uv``.

    Each cycle is returned once, as the vertex sequence starting ``u, ..., v``.
    """
    if not g.has_edge(u, v):
        raise GraphError(f"({u}, {v}) is not an edge")
    masks = g.masks
    found: list[tuple[int, ...]] = []
    path = [u]

    def extend(last: int, used: int) -> None:
        if len(path) == length - 1:
            if masks[last] >> v & 1:
                found.append(tuple(path) + (v,))
            return
        for w in _bits(masks[last] & ~used):
            path.append(w)
            extend(w, used | 1 << w)
            path.pop()

    if length == 2:
        return []
    # the path from u must reach v in exactly length-1 edges without using uv
    extend(u, 1 << u | 1 << v)
    return found


def cycles_of_length(g: Graph, length: int) -> list[tuple[int, ...]]:
    """Every cycle with ``length`` vertices, each listed once.

    A cycle is reported from its smallest vertex ``s``, in the direction whose
    second vertex is smaller than its last.
    """
    masks = g.masks
    out: list[tuple[int, ...]] = []
    for s in range(g.n):
        allowed = ~((1 << (s + 1)) - 1)
        path = [s]

        def extend(last: int, used: int) -> None:
            if len(path) == length:
                if masks[last] >> s & 1 and path[1] < path[-1]:
                    out.append(tuple(path))
                return
            for w in _bits(masks[last] & allowed & ~used):
                path.append(w)
                extend(w, used | 1 << w)
                path.pop()

        extend(s, 1 << s)
    return out


def edge_cycle_profile(
    g: Graph, edge: tuple[int, int], max_length: int = 6, max_distance: int = 0
) -> EdgeCycleProfile:
    u, v = edge
    if not (0 <= u < g.n and 0 <= v < g.n) or not g.has_edge(u, v):
        raise GraphError(f"{edge} is not an edge")
    if max_length > 8:
        raise GraphError("cycle profiles support lengths up to 8")
    du = bfs_distances(g, u)
    dv = bfs_distances(g, v)
    in_cycles = {}
    incident = {}
    for length in range(3, max_length + 1):
        in_cycles[length] = len(cycles_through_edge(g, u, v, length))
        near = 0
        for cyc in cycles_of_length(g, length):
            d = min(min(du.get(w, g.n), dv.get(w, g.n)) for w in cyc)
            if d <= max_distance:
                near += 1
        incident[length] = near
    return EdgeCycleProfile((u, v), in_cycles, incident, max_distance)


# ---------------------------------------------------------------------------
# Hamiltonicity


def find_hamiltonian_cycle(g: Graph) -> list[int] | None:
    """Backtracking search for a Hamiltonian cycle.

    Starts at vertex 0 and tries neighbours in increasing order, so the answer
    is deterministic. An unvisited vertex left with fewer than two usable
    neighbours prunes the branch.
    """
    n = g.n
    if n < 3:
        return None
    masks = g.masks
    if any(m.bit_count() < 2 for m in masks):
        return None
    full = (1 << n) - 1
    path = [0]

    def viable(visited: int, end: int) -> bool:
        # unvisited vertices may still connect to the current end or to 0
        open_ = (full & ~visited) | 1 << end | 1
        rest = full & ~visited
        while rest:
            low = rest & -rest
            w = low.bit_length() - 1
            if (masks[w] & open_).bit_count() < 2:
                return False
            rest ^= low
        return True

    def extend(end: int, visited: int) -> bool:
        if visited == full:
            return bool(masks[end] & 1)
        for w in _bits(masks[end] & ~visited):
            vis = visited | 1 << w
            if vis != full and not viable(vis, w):
                continue
            path.append(w)
            if extend(w, vis):
                return True
            path.pop()
        return False

    return path if extend(0, 1) else None


def is_hamiltonian_cycle(g: Graph, cycle: Sequence[int]) -> bool:
    if len(cycle) != g.n or len(set(cycle)) != g.n or g.n < 3:
        return False
    return all(g.has_edge(cycle[i], cycle[(i + 1) % g.n]) for i in range(g.n))


def dirac_guarantees_hamiltonian(g: Graph) -> bool:
    """Minimum degree at least n/2. Sufficient for Hamiltonicity, not necessary."""
    if g.n < 3:
        raise GraphError("Dirac's condition needs n >= 3")
    return 2 * min(g.degrees()) >= g.n


# ---------------------------------------------------------------------------
# graph6 and DOT


def _size_prefix(n: int) -> bytes:
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126] + [(n >> s & 63) + 63 for s in (12, 6, 0)])
    if n <= 68719476735:
        return bytes([126, 126] + [(n >> s & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])
    raise GraphError(f"graph6 cannot encode n={n}")


def encode_graph6(g: Graph) -> bytes:
    """graph6 bytes (no header, no newline)."""
    n = g.n
    masks = g.masks
    out = bytearray(_size_prefix(n))
    acc = 0
    nbits = 0
    for j in range(1, n):
        col = masks[j]
        for i in range(j):
            acc = acc << 1 | (col >> i & 1)
            nbits += 1
            if nbits == 6:
                out.append(acc + 63)
                acc = nbits = 0
    if nbits:
        out.append((acc << (6 - nbits)) + 63)
    return bytes(out)


def decode_graph6(data: bytes | str) -> Graph:
    if isinstance(data, str):
        data = data.encode("ascii", errors="replace")
    data = data.rstrip(b"\r\n")
    if data.startswith(b">>graph6<<"):
        data = data[10:]
    if not data:
        raise Graph6Error("empty graph6 string")
    for b in data:
        if not 63 <= b <= 126:
            raise Graph6Error(f"byte {b!r} outside the graph6 range 63..126")
    vals = [b - 63 for b in data]
    if vals[0] != 63:
        n, body = vals[0], vals[1:]
    elif len(vals) >= 2 and vals[1] == 63:
        if len(vals) < 8:
            raise Graph6Error("truncated size field")
        n = 0
        for x in vals[2:8]:
            n = n << 6 | x
        body = vals[8:]
    else:
        if len(vals) < 4:
            raise Graph6Error("truncated size field")
        n = vals[1] << 12 | vals[2] << 6 | vals[3]
        body = vals[4:]
    nbits = n * (n - 1) // 2
    expected = (nbits + 5) // 6
    if len(body) < expected:
        raise Graph6Error(f"expected {expected} data bytes for n={n}, got {len(body)}")
    if len(body) > expected:
        raise Graph6Error("trailing bytes after graph6 data")
    masks = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if body[k // 6] >> (5 - k % 6) & 1:
                masks[i] |= 1 << j
                masks[j] |= 1 << i
            k += 1
    if expected and body[-1] & ((1 << (6 * expected - nbits)) - 1):
        raise Graph6Error("non-zero padding bits")
    return Graph.from_masks(masks)


def read_graph6_lines(lines: Iterable[bytes | str]) -> Iterator[Graph]:
    for line in lines:
        line = line.strip()
        if line:
            yield decode_graph6(line)


def to_dot(g: Graph, name: str = "G") -> str:
    """Undirected DOT text with vertices named ``v1``..``vn``."""
    lines = [f"graph {name} {{"]
    lines += [f"  v{v + 1};" for v in range(g.n)]
    lines += [f"  v{u + 1} -- v{v + 1};" for u, v in g.edges()]
    lines.append("}")
    return "\n".join(lines) + "\n"


def vname(v: int) -> str:
    """1-based name of internal vertex ``v``."""
    return f"v{v + 1}"
