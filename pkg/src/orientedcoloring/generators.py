"""Seeded random instance generation for testing every coloring pipeline.

All randomness comes from xorshift64* (Marsaglia/Vigna): the 64-bit state
evolves by x ^= x >> 12; x ^= x << 25; x ^= x >> 27 and outputs
(x * 0x2545F4914F6CDD1D) mod 2^64.  The generator is fixed by these constants
so that identical specs reproduce identical graphs across platforms and
implementations.  Every model post-checks its defining predicate before
returning.
"""

from __future__ import annotations

from dataclasses import dataclass

from .digraph import (
    OrientedGraph,
    connected_components,
    degree_profile,
    find_k_sources,
    has_source_adjacent_to_sink,
)


class GenError(ValueError):
    """Infeasible generator spec or exhausted rejection budget."""


_MASK64 = (1 << 64) - 1
_XS_MULT = 0x2545F4914F6CDD1D


class Xorshift64Star:
    """xorshift64* with the classic (12, 25, 27) shift triple."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = (seed & _MASK64) or 0x9E3779B97F4A7C15

    def next_u64(self) -> int:
        x = self.state
        x ^= x >> 12
        x ^= (x << 25) & _MASK64
        x ^= x >> 27
        self.state = x
        return (x * _XS_MULT) & _MASK64

    def randrange(self, n: int) -> int:
        if n <= 0:
            raise ValueError("randrange needs n > 0")
        bound = _MASK64 + 1 - (_MASK64 + 1) % n
        while True:
            r = self.next_u64()
            if r < bound:
                return r % n

    def shuffle(self, items: list) -> None:
        for i in range(len(items) - 1, 0, -1):
            j = self.randrange(i + 1)
            items[i], items[j] = items[j], items[i]

    def sample(self, pool: list[int], k: int) -> list[int]:
        pool = pool[:]
        self.shuffle(pool)
        return pool[:k]


MODELS = (
    "bounded-degree",
    "d-regular",
    "k-degenerate",
    "planted-3-sources",
    "disjoint-regular-components",
)


@dataclass(frozen=True)
class GenSpec:
    """model, size, the model parameter (Delta, d, or k), and a 64-bit seed."""

    model: str
    n: int
    param: int
    seed: int
    forbid_3_source: bool = False  # d-regular only: retry until no 3-source
    components: int = 2  # disjoint-regular-components only

    def __post_init__(self) -> None:
        if self.model not in MODELS:
            raise GenError(f"unknown model {self.model!r}")
        if self.n < 0 or self.param < 0:
            raise GenError("n and param must be non-negative")


def generate(spec: GenSpec) -> OrientedGraph:
    """Generate an instance; deterministic per spec, predicate post-checked."""
    rng = Xorshift64Star(spec.seed)
    if spec.model == "bounded-degree":
        g = _bounded_degree(rng, spec.n, spec.param)
        assert g.max_degree() <= spec.param
    elif spec.model == "d-regular":
        g = _d_regular(rng, spec.n, spec.param, spec.forbid_3_source)
        assert g.is_regular(spec.param)
        if spec.forbid_3_source:
            assert not find_k_sources(g, spec.param)
    elif spec.model == "k-degenerate":
        g = _k_degenerate(rng, spec.n, spec.param)
        assert degree_profile(g).degeneracy <= spec.param
    elif spec.model == "planted-3-sources":
        g = _planted_3_sources(rng, spec.n, spec.param)
        assert g.max_degree() <= 3 and find_k_sources(g, 3)
    else:
        g = _disjoint_regular(rng, spec.n, spec.param, spec.components, spec.forbid_3_source)
        comps = connected_components(g)
        assert len(comps) >= 2
        for comp in comps:
            assert all(g.degree(v) == spec.param for v in comp)
    return g


def _bounded_degree(rng: Xorshift64Star, n: int, delta: int) -> OrientedGraph:
    out = [0] * n
    inn = [0] * n
    deg = [0] * n
    m = 0
    for _ in range(3 * n * max(delta, 1)):
        u = rng.randrange(n) if n else 0
        v = rng.randrange(n) if n else 0
        if u == v or deg[u] >= delta or deg[v] >= delta:
            continue
        if (out[u] | inn[u]) >> v & 1:
            continue
        out[u] |= 1 << v
        inn[v] |= 1 << u
        deg[u] += 1
        deg[v] += 1
        m += 1
    return OrientedGraph(n, out, inn, m)


def _suitable(edges: set[tuple[int, int]], potential: dict[int, int]) -> bool:
    if not potential:
        return True
    nodes = sorted(potential)
    for i, s1 in enumerate(nodes):
        for s2 in nodes[i + 1 :]:
            if (s1, s2) not in edges:
                return True
    return False


def _pair_stubs(rng: Xorshift64Star, n: int, d: int) -> set[tuple[int, int]] | None:
    """Configuration-model pairing with stub repair (the NetworkX scheme)."""
    edges: set[tuple[int, int]] = set()
    stubs = [v for v in range(n) for _ in range(d)]
    while stubs:
        potential: dict[int, int] = {}
        rng.shuffle(stubs)
        it = iter(stubs)
        for s1, s2 in zip(it, it):
            if s1 > s2:
                s1, s2 = s2, s1
            if s1 != s2 and (s1, s2) not in edges:
                edges.add((s1, s2))
            else:
                potential[s1] = potential.get(s1, 0) + 1
                potential[s2] = potential.get(s2, 0) + 1
        if not _suitable(edges, potential):
            return None
        stubs = [node for node in sorted(potential) for _ in range(potential[node])]
    return edges


def _d_regular(rng: Xorshift64Star, n: int, d: int, forbid_3_source: bool, tries: int = 2000) -> OrientedGraph:
    if d < 1 or n <= d or (n * d) % 2:
        raise GenError(f"d-regular needs n > d >= 1 and n*d even, got n={n}, d={d}")
    for _ in range(tries):
        edges = _pair_stubs(rng, n, d)
        if edges is None:
            continue
        arcs = []
        for a, b in sorted(edges):
            arcs.append((a, b) if rng.randrange(2) else (b, a))
        g = OrientedGraph.from_arcs(n, arcs)
        if forbid_3_source:
            g = _flip_out_sources(g, d)
            if find_k_sources(g, d):
                continue
        return g
    raise GenError(f"rejection budget exhausted for d-regular n={n}, d={d}")


def _flip_out_sources(g: OrientedGraph, d: int) -> OrientedGraph:
    """Reorient a d-regular graph until no vertex has all arcs outgoing.

    A random orientation of a large d-regular graph almost surely has sources,
    so rejection alone cannot work; instead, reverse a directed path from each
    source to the nearest vertex of in-degree >= 2 (one always exists in the
    source's reachable set).  Interior path vertices keep their in/out counts,
    so sources strictly decrease.
    """
    from .digraph import iter_bits

    out = list(g.out_bits)
    inn = list(g.in_bits)
    n = g.n
    while True:
        source = next(
            (v for v in range(n) if inn[v] == 0 and out[v].bit_count() == d), None
        )
        if source is None:
            break
        parent = {source: -1}
        frontier = [source]
        goal = -1
        while frontier and goal < 0:
            nxt = []
            for v in frontier:
                for w in iter_bits(out[v]):
                    if w in parent:
                        continue
                    parent[w] = v
                    if inn[w].bit_count() >= 2:
                        goal = w
                        break
                    nxt.append(w)
                if goal >= 0:
                    break
            frontier = nxt
        assert goal >= 0, "d-regular orientation has no reachable high-in-degree vertex"
        v = goal
        while parent[v] >= 0:
            u = parent[v]
            out[u] &= ~(1 << v)
            inn[v] &= ~(1 << u)
            out[v] |= 1 << u
            inn[u] |= 1 << v
            v = u
    return OrientedGraph(n, out, inn, g.m)


def _k_degenerate(rng: Xorshift64Star, n: int, k: int) -> OrientedGraph:
    arcs = []
    for v in range(1, n):
        picks = rng.randrange(min(v, k) + 1)
        for w in rng.sample(list(range(v)), picks):
            arcs.append((v, w) if rng.randrange(2) else (w, v))
    return OrientedGraph.from_arcs(n, arcs)


def _planted_3_sources(rng: Xorshift64Star, n: int, delta: int) -> OrientedGraph:
    if delta != 3:
        raise GenError("planted-3-sources is a maximum-degree-3 model; param must be 3")
    if n < 8:
        raise GenError("planted-3-sources needs n >= 8")
    n_src = max(1, n // 10)
    others = list(range(n_src, n))
    base = _bounded_degree(rng, n, 2)  # leave headroom for the planted arcs
    out = list(base.out_bits)
    inn = list(base.in_bits)
    # scrub everything touching the reserved source vertices
    m = 0
    for v in range(n_src):
        out[v] = inn[v] = 0
    src_mask = (1 << n_src) - 1
    for v in others:
        out[v] &= ~src_mask
        inn[v] &= ~src_mask
    deg = [0] * n
    for v in others:
        deg[v] = (out[v] | inn[v]).bit_count()
        m += out[v].bit_count()
    for s in range(n_src):
        room = [v for v in others if deg[v] <= 2]
        if len(room) < 3:
            raise GenError("not enough low-degree vertices to plant a 3-source")
        for v in rng.sample(room, 3):
            out[s] |= 1 << v
            inn[v] |= 1 << s
            deg[v] += 1
            m += 1
    return OrientedGraph(n, out, inn, m)


def _disjoint_regular(
    rng: Xorshift64Star, n: int, d: int, components: int, forbid_3_source: bool = False
) -> OrientedGraph:
    if components < 2:
        raise GenError("disjoint-regular-components needs >= 2 components")
    size = n // components
    if size <= d or (size * d) % 2:
        raise GenError(
            f"component size {size} infeasible for {d}-regular (need size > d, size*d even)"
        )
    total = size * components
    arcs = []
    for c in range(components):
        part = _d_regular(rng, size, d, forbid_3_source)
        off = c * size
        arcs.extend((u + off, v + off) for u, v in part.arcs())
    return OrientedGraph.from_arcs(total, arcs)


def strip_3source_3sink_adjacency(g: OrientedGraph) -> OrientedGraph:
    """Remove arcs between 3-sources and 3-sinks until none are adjacent.

    Each removal drops the source to degree 2, so the loop is monotone and no
    new 3-sources or 3-sinks can appear.
    """
    from .digraph import bits_of, find_k_sinks, iter_bits

    while True:
        sinks = bits_of(find_k_sinks(g, 3))
        offending = None
        for u in sorted(find_k_sources(g, 3)):
            hit = g.out_bits[u] & sinks
            if hit:
                offending = (u, (hit & -hit).bit_length() - 1)
                break
        if offending is None:
            return g
        g = OrientedGraph.from_arcs(g.n, [a for a in g.arcs() if a != offending])


def oracle_ready_instance(n: int, seed: int) -> OrientedGraph:
    """A 2-degenerate, max-degree-3 graph with no 3-source adjacent to a 3-sink."""
    rng = Xorshift64Star(seed)
    for _ in range(200):
        g = strip_3source_3sink_adjacency(_bounded_degree(rng, n, 3))
        if degree_profile(g).degeneracy <= 2 and not has_source_adjacent_to_sink(g, 3):
            return g
    raise GenError(f"could not produce an oracle-ready instance for n={n}, seed={seed}")


# --- corpora for the end-to-end pipelines ---


def theorem4_corpus(count: int, seed: int, n_max: int = 200) -> list[GenSpec]:
    """A mixed maximum-degree-3 corpus: sparse bounded-degree, planted
    3-sources, 3-regular with and without sources, and disjoint 3-regular
    unions."""
    rng = Xorshift64Star(seed)
    specs = []
    for i in range(count):
        kind = i % 5
        sub_seed = rng.next_u64()
        if kind == 0:
            n = 8 + rng.randrange(max(1, n_max - 7))
            specs.append(GenSpec("bounded-degree", n, 3, sub_seed))
        elif kind == 1:
            n = 10 + rng.randrange(max(1, n_max - 9))
            specs.append(GenSpec("planted-3-sources", n, 3, sub_seed))
        elif kind == 2:
            n = 2 * (3 + rng.randrange(max(1, n_max // 2 - 2)))
            specs.append(GenSpec("d-regular", n, 3, sub_seed, forbid_3_source=True))
        elif kind == 3:
            n = 2 * (3 + rng.randrange(max(1, n_max // 2 - 2)))
            specs.append(GenSpec("d-regular", n, 3, sub_seed))
        else:
            size = 2 * (2 + rng.randrange(max(1, n_max // 8)))
            specs.append(GenSpec("disjoint-regular-components", 2 * size, 3, sub_seed))
    return specs


def corollary_corpus(delta: int, count: int, seed: int, n_max: int = 120) -> list[GenSpec]:
    """A mixed bounded-degree-Delta corpus for the general pipeline,
    including Delta-regular instances (repair path) and disjoint regular
    unions (connectivity independence)."""
    rng = Xorshift64Star(seed)
    specs = []
    for i in range(count):
        kind = i % 4
        sub_seed = rng.next_u64()
        if kind in (0, 1):
            n = delta + 2 + rng.randrange(max(1, n_max - delta - 1))
            specs.append(GenSpec("bounded-degree", n, delta, sub_seed))
        elif kind == 2:
            n = delta + 1 + rng.randrange(max(1, n_max - delta))
            if (n * delta) % 2:
                n += 1
            specs.append(GenSpec("d-regular", n, delta, sub_seed))
        else:
            size = delta + 1 + rng.randrange(max(1, n_max // 3 - delta))
            if (size * delta) % 2:
                size += 1
            specs.append(GenSpec("disjoint-regular-components", 2 * size, delta, sub_seed))
    return specs
