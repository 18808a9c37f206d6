"""Independent brute-force oracles used to cross-check the library.

These deliberately avoid the library's search machinery: map enumeration is
bit-parallel over all |T|^|G| assignments, and the property minima use plain
itertools loops.
"""

from __future__ import annotations

from itertools import product

from orientedcoloring.digraph import OrientedGraph


class MapEnumerationOracle:
    """Existence of a homomorphism by enumerating every map [n] -> V(t).

    Map index m encodes the assignment digit-wise base |t|.  For each ordered
    vertex pair the oracle precomputes the bitset of maps sending it onto an
    arc; a source graph is satisfiable iff the AND over its arcs is nonzero.
    """

    def __init__(self, t: OrientedGraph, n: int):
        self.t = t
        self.n = n
        self.total = t.n**n
        self.pair_masks: dict[tuple[int, int], int] = {}
        powers = [t.n**u for u in range(n)]
        for u in range(n):
            for v in range(n):
                if u == v:
                    continue
                bits = 0
                for m in range(self.total):
                    if t.has_arc(m // powers[u] % t.n, m // powers[v] % t.n):
                        bits |= 1 << m
                self.pair_masks[(u, v)] = bits

    def exists(self, g: OrientedGraph) -> bool:
        assert g.n == self.n
        if self.t.n == 0:
            return g.n == 0
        acc = (1 << self.total) - 1
        for u, v in g.arcs():
            acc &= self.pair_masks[(u, v)]
            if not acc:
                return False
        return True


def successor_set_naive(g: OrientedGraph, seq, alpha) -> set[int]:
    out = set(range(g.n))
    for v, s in zip(seq, alpha):
        wanted = {u for u in range(g.n) if (g.has_arc(v, u) if s > 0 else g.has_arc(u, v))}
        out &= wanted
    return out


def compatible_naive(seq, alpha, anti_twin=None) -> bool:
    for i in range(len(seq)):
        for j in range(len(seq)):
            if i == j:
                continue
            if seq[i] == seq[j] and alpha[i] != alpha[j]:
                return False
            if anti_twin is not None and seq[i] == anti_twin[seq[j]] and alpha[i] == alpha[j]:
                return False
    return True


def pnk_min_naive(g: OrientedGraph, n: int, anti_twin=None) -> int | None:
    """Exact minimum successor count over all compatible n-sequences."""
    best = None
    for seq in product(range(g.n), repeat=n):
        for alpha in product((1, -1), repeat=n):
            if not compatible_naive(seq, alpha, anti_twin):
                continue
            size = len(successor_set_naive(g, seq, alpha))
            if best is None or size < best:
                best = size
    return best


def cnk_min_naive(g: OrientedGraph, n: int) -> int | None:
    """Exact minimum of min(|union N+|, |union N-|) over all n-cliques."""
    best = None
    for clique in product(range(g.n), repeat=n):
        if len(set(clique)) != n or any(clique[i] >= clique[i + 1] for i in range(n - 1)):
            continue
        if any(
            not g.adjacent(clique[i], clique[j])
            for i in range(n)
            for j in range(i + 1, n)
        ):
            continue
        outs: set[int] = set()
        ins: set[int] = set()
        for v in clique:
            outs.update(g.out_neighbors(v))
            ins.update(g.in_neighbors(v))
        size = min(len(outs), len(ins))
        if best is None or size < best:
            best = size
    return best


def transitive_triangles_naive(g: OrientedGraph) -> int:
    count = 0
    for x in range(g.n):
        for y in range(g.n):
            for z in range(g.n):
                if g.has_arc(x, y) and g.has_arc(y, z) and g.has_arc(x, z):
                    count += 1
    return count


def degeneracy_naive(g: OrientedGraph) -> int:
    """Degeneracy by repeated full scans, independent of the heap version."""
    alive = set(range(g.n))
    worst = 0
    while alive:
        v = min(alive, key=lambda x: (sum(1 for w in g.neighbors(x) if w in alive), x))
        worst = max(worst, sum(1 for w in g.neighbors(v) if w in alive))
        alive.remove(v)
    return worst
