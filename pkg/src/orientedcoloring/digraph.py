"""Core oriented-graph machinery.

An oriented graph is a finite simple digraph with no loops and no pair of
opposite arcs.  Vertices are the dense integers 0..n-1.  Adjacency is stored
as one out-neighbor mask and one in-neighbor mask per vertex (arbitrary
precision Python ints), so neighborhood intersections/unions cost one
word-parallel integer operation.

This module also owns the plain-text serialization formats:

* digraph format: optional ``#`` comment lines, a header ``digraph <n> <m>``,
  then exactly m lines ``<u> <v>`` meaning arc u->v with 0 <= u, v < n;
* color-map format: one line ``<vertex> <color>`` per source vertex, in
  ascending vertex order.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple


class GraphError(ValueError):
    """Malformed graph, arc, or serialized input."""


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bits_of(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


class OrientedGraph:
    """Oriented graph with bitset adjacency; treat as immutable once built."""

    __slots__ = ("n", "m", "out_bits", "in_bits", "und_bits")

    def __init__(self, n: int, out_bits: list[int], in_bits: list[int], m: int):
        self.n = n
        self.m = m
        self.out_bits = out_bits
        self.in_bits = in_bits
        self.und_bits = [out_bits[v] | in_bits[v] for v in range(n)]

    @classmethod
    def empty(cls, n: int) -> "OrientedGraph":
        return cls(n, [0] * n, [0] * n, 0)

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[tuple[int, int]]) -> "OrientedGraph":
        """Build from an arc list, rejecting loops, duplicates and opposite arcs."""
        if n < 0:
            raise GraphError(f"negative vertex count {n}")
        out_bits = [0] * n
        in_bits = [0] * n
        m = 0
        for u, v in arcs:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"arc ({u},{v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            if out_bits[u] >> v & 1:
                raise GraphError(f"duplicate arc ({u},{v})")
            if out_bits[v] >> u & 1:
                raise GraphError(f"opposite arcs between {u} and {v}")
            out_bits[u] |= 1 << v
            in_bits[v] |= 1 << u
            m += 1
        return cls(n, out_bits, in_bits, m)

    def has_arc(self, u: int, v: int) -> bool:
        return bool(self.out_bits[u] >> v & 1)

    def adjacent(self, u: int, v: int) -> bool:
        return bool(self.und_bits[u] >> v & 1)

    def out_neighbors(self, v: int) -> list[int]:
        return list(iter_bits(self.out_bits[v]))

    def in_neighbors(self, v: int) -> list[int]:
        return list(iter_bits(self.in_bits[v]))

    def neighbors(self, v: int) -> list[int]:
        return list(iter_bits(self.und_bits[v]))

    def out_degree(self, v: int) -> int:
        return self.out_bits[v].bit_count()

    def in_degree(self, v: int) -> int:
        return self.in_bits[v].bit_count()

    def degree(self, v: int) -> int:
        return self.und_bits[v].bit_count()

    def max_degree(self) -> int:
        return max((self.degree(v) for v in range(self.n)), default=0)

    def arcs(self) -> Iterator[tuple[int, int]]:
        """All arcs in ascending (src, dst) order."""
        for u in range(self.n):
            for v in iter_bits(self.out_bits[u]):
                yield (u, v)

    def is_regular(self, d: int) -> bool:
        return all(self.degree(v) == d for v in range(self.n))

    def induced_subgraph(self, vertices: list[int]) -> tuple["OrientedGraph", list[int]]:
        """Subgraph induced on ``vertices`` (ascending); returns (sub, old_of_new)."""
        old_of_new = sorted(vertices)
        new_of_old = {old: new for new, old in enumerate(old_of_new)}
        keep = bits_of(old_of_new)
        sub_n = len(old_of_new)
        out_bits = [0] * sub_n
        in_bits = [0] * sub_n
        m = 0
        for new, old in enumerate(old_of_new):
            for w in iter_bits(self.out_bits[old] & keep):
                out_bits[new] |= 1 << new_of_old[w]
                in_bits[new_of_old[w]] |= 1 << new
                m += 1
        return OrientedGraph(sub_n, out_bits, in_bits, m), old_of_new

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, OrientedGraph)
            and self.n == other.n
            and self.out_bits == other.out_bits
        )

    def __hash__(self) -> int:
        return hash((self.n, tuple(self.out_bits)))

    def __repr__(self) -> str:
        return f"OrientedGraph(n={self.n}, m={self.m})"


class TargetGraph:
    """An oriented graph used as a homomorphism target, plus metadata.

    ``anti_twin`` is the involutive unique-non-neighbor map when the target
    has one (Tromp graphs); None otherwise.
    """

    __slots__ = ("graph", "name", "anti_twin")

    def __init__(self, graph: OrientedGraph, name: str, anti_twin: list[int] | None = None):
        self.graph = graph
        self.name = name
        self.anti_twin = anti_twin

    @property
    def n(self) -> int:
        return self.graph.n

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.name} on {self.graph.n} vertices>"


@dataclass(frozen=True)
class ColorMap:
    """Total assignment source vertex -> target vertex."""

    assignment: tuple[int, ...]
    target_id: str = ""

    def __getitem__(self, v: int) -> int:
        return self.assignment[v]

    def __len__(self) -> int:
        return len(self.assignment)


class DegreeProfile(NamedTuple):
    max_degree: int
    degeneracy: int
    elimination_order: list[int]


def degree_profile(g: OrientedGraph, *, high_index_ties: bool = False) -> DegreeProfile:
    """Max degree, degeneracy, and a min-degree elimination order.

    Repeatedly removes a minimum-degree vertex; the degeneracy is the largest
    degree seen at removal time.  Ties go to the lowest index (highest with
    ``high_index_ties``, used by the solver's reverse-order heuristic).
    """
    n = g.n
    deg = [g.degree(v) for v in range(n)]
    max_degree = max(deg, default=0)
    alive = [True] * n
    und = g.und_bits
    key = (lambda v: n - 1 - v) if high_index_ties else (lambda v: v)
    heap = [(deg[v], key(v), v) for v in range(n)]
    heapq.heapify(heap)
    order: list[int] = []
    degeneracy = 0
    alive_mask = (1 << n) - 1
    while heap:
        d, _, v = heapq.heappop(heap)
        if not alive[v] or d != deg[v]:
            continue
        alive[v] = False
        alive_mask &= ~(1 << v)
        order.append(v)
        if d > degeneracy:
            degeneracy = d
        for w in iter_bits(und[v] & alive_mask):
            deg[w] -= 1
            heapq.heappush(heap, (deg[w], key(w), w))
    return DegreeProfile(max_degree, degeneracy, order)


def find_k_sources(g: OrientedGraph, k: int) -> set[int]:
    """Vertices of degree k whose arcs are all outgoing."""
    if k < 0:
        raise ValueError("k must be >= 0")
    return {v for v in range(g.n) if g.in_bits[v] == 0 and g.out_degree(v) == k}


def find_k_sinks(g: OrientedGraph, k: int) -> set[int]:
    """Vertices of degree k whose arcs are all incoming."""
    if k < 0:
        raise ValueError("k must be >= 0")
    return {v for v in range(g.n) if g.out_bits[v] == 0 and g.in_degree(v) == k}


def has_source_adjacent_to_sink(g: OrientedGraph, k: int) -> bool:
    """True iff some k-source has a k-sink among its out-neighbors."""
    sinks = bits_of(find_k_sinks(g, k))
    if not sinks:
        return False
    return any(g.out_bits[v] & sinks for v in find_k_sources(g, k))


def connected_components(g: OrientedGraph) -> list[list[int]]:
    """Weakly connected components as sorted vertex lists, ordered by minimum vertex."""
    seen = 0
    comps: list[list[int]] = []
    und = g.und_bits
    for v in range(g.n):
        if seen >> v & 1:
            continue
        comp = 1 << v
        frontier = comp
        while frontier:
            nxt = 0
            for w in iter_bits(frontier):
                nxt |= und[w]
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
        comps.append(list(iter_bits(comp)))
    return comps


def verify_homomorphism(
    g: OrientedGraph, t: OrientedGraph, c: ColorMap | Iterable[int]
) -> tuple[int, int] | None:
    """None if ``c`` is a homomorphism g -> t, else the first violating arc.

    The map must be total on V(g) with images inside V(t); anything else is a
    malformed map and raises GraphError.
    """
    phi = c.assignment if isinstance(c, ColorMap) else tuple(c)
    if len(phi) != g.n:
        raise GraphError(f"map covers {len(phi)} vertices, graph has {g.n}")
    for v, img in enumerate(phi):
        if not (0 <= img < t.n):
            raise GraphError(f"image {img} of vertex {v} out of range for target n={t.n}")
    t_out = t.out_bits
    for u in range(g.n):
        pu = phi[u]
        row = t_out[pu]
        for v in iter_bits(g.out_bits[u]):
            if not (row >> phi[v] & 1):
                return (u, v)
    return None


def is_automorphism(g: OrientedGraph, perm: list[int]) -> bool:
    """True iff ``perm`` is an arc-preserving permutation of V(g)."""
    if sorted(perm) != list(range(g.n)):
        return False
    for v in range(g.n):
        image = 0
        for w in iter_bits(g.out_bits[v]):
            image |= 1 << perm[w]
        if image != g.out_bits[perm[v]]:
            return False
    return True


# --- plain-text formats ---


def write_digraph(g: OrientedGraph, comments: Iterable[str] = ()) -> str:
    lines = [f"# {c}" for c in comments]
    lines.append(f"digraph {g.n} {g.m}")
    lines.extend(f"{u} {v}" for u, v in g.arcs())
    return "\n".join(lines) + "\n"


def parse_digraph(text: str) -> OrientedGraph:
    """Parse the digraph text format; malformed input raises GraphError."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise GraphError("empty digraph input")
    header = lines[0].split()
    if len(header) != 3 or header[0] != "digraph":
        raise GraphError(f"bad header line: {lines[0]!r}")
    try:
        n, m = int(header[1]), int(header[2])
    except ValueError:
        raise GraphError(f"bad header line: {lines[0]!r}") from None
    body = lines[1:]
    if len(body) != m:
        raise GraphError(f"header announces {m} arcs, found {len(body)}")
    arcs = []
    for ln in body:
        parts = ln.split()
        if len(parts) != 2:
            raise GraphError(f"bad arc line: {ln!r}")
        try:
            arcs.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise GraphError(f"bad arc line: {ln!r}") from None
    return OrientedGraph.from_arcs(n, arcs)


def write_color_map(c: ColorMap) -> str:
    return "\n".join(f"{v} {col}" for v, col in enumerate(c.assignment)) + "\n"


def parse_color_map(text: str, target_id: str = "") -> ColorMap:
    """Parse the color-map format; vertices must appear in ascending dense order."""
    assignment = []
    for ln in text.splitlines():
        ln = ln.strip()
        if not ln or ln.startswith("#"):
            continue
        parts = ln.split()
        if len(parts) != 2:
            raise GraphError(f"bad color-map line: {ln!r}")
        try:
            v, col = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphError(f"bad color-map line: {ln!r}") from None
        if v != len(assignment):
            raise GraphError(f"expected vertex {len(assignment)}, got {v}")
        assignment.append(col)
    return ColorMap(tuple(assignment), target_id)
