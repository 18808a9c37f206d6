"""Tromp graphs Tr(G), the augmented target Tr*(QR_p), and the 9-vertex T_9.

Tr(G) doubles G and adds two hub vertices.  Layout on 2m+2 vertices, m=|V(G)|:
[0..m-1] is the copy G, [m..2m-1] the copy G', vertex 2m is "inf" and 2m+1 is
"inf'".  Arcs: u -> inf, inf -> u', u' -> inf', inf' -> u for every base
vertex u, and u -> v, u' -> v', v -> u', v' -> u for every base arc u -> v.
Each vertex has a unique non-neighbor, its anti-twin (u <-> u', inf <-> inf').

Tr*(QR_p) adds t0 (a twin of vertex 0), t1 (a twin of vertex 1) and the single
arc t1 -> t0; it is the repair target for Delta-regular components.

T_9 is QR_7 plus vertices 7 and 8 with arcs 0->7, 1->7, 7->3, 7->8 and 8->i
for 0 <= i <= 6; it is the target for all graphs of maximum degree 3.
"""

from __future__ import annotations

from functools import lru_cache

from .digraph import (
    GraphError,
    OrientedGraph,
    TargetGraph,
    is_automorphism,
    iter_bits,
)
from .paley import PaleyTournament, build_paley


class TrompGraph(TargetGraph):
    __slots__ = ("base", "base_order", "paley_q")

    def __init__(self, base: OrientedGraph, graph: OrientedGraph, anti_twin: list[int], name: str, paley_q: int | None):
        super().__init__(graph, name, anti_twin)
        self.base = base
        self.base_order = base.n
        self.paley_q = paley_q

    @property
    def infinity(self) -> int:
        return 2 * self.base_order

    @property
    def infinity_prime(self) -> int:
        return 2 * self.base_order + 1


class TrStarGraph(TargetGraph):
    __slots__ = ("tromp", "t0", "t1", "paley_q")

    def __init__(self, tromp: TrompGraph, graph: OrientedGraph):
        p = tromp.paley_q
        super().__init__(graph, f"tromp*:{p}")
        self.tromp = tromp
        self.paley_q = p
        self.t0 = tromp.graph.n
        self.t1 = tromp.graph.n + 1


class T9Graph(TargetGraph):
    __slots__ = ()

    def __init__(self, graph: OrientedGraph):
        super().__init__(graph, "t9")


def build_tromp(g: OrientedGraph | PaleyTournament) -> TrompGraph:
    """Tromp construction over an oriented graph (or a Paley tournament)."""
    paley_q = None
    if isinstance(g, PaleyTournament):
        paley_q = g.q
        g = g.graph
    m = g.n
    n = 2 * m + 2
    inf, inf_p = 2 * m, 2 * m + 1
    arcs: list[tuple[int, int]] = []
    for u in range(m):
        arcs.append((u, inf))
        arcs.append((inf, u + m))
        arcs.append((u + m, inf_p))
        arcs.append((inf_p, u))
    for u, v in g.arcs():
        arcs.append((u, v))
        arcs.append((u + m, v + m))
        arcs.append((v, u + m))
        arcs.append((v + m, u))
    graph = OrientedGraph.from_arcs(n, arcs)
    anti_twin = [(u + m) % (2 * m) for u in range(2 * m)] + [inf_p, inf]
    name = f"tromp:{paley_q}" if paley_q is not None else f"tromp(n={m})"
    t = TrompGraph(g, graph, anti_twin, name, paley_q)
    _assert_tromp(t)
    return t


def _assert_tromp(t: TrompGraph) -> None:
    g = t.graph
    at = t.anti_twin
    assert g.m == 4 * t.base_order + 4 * t.base.m, "Tromp arc count off"
    for v in range(g.n):
        assert at[at[v]] == v and at[v] != v, "anti-twin map is not a fixed-point-free involution"
        assert not g.adjacent(v, at[v]), f"anti-twin pair ({v},{at[v]}) is adjacent"


@lru_cache(maxsize=None)
def tromp_over_paley(q: int) -> TrompGraph:
    """Cached Tr(QR_q)."""
    return build_tromp(build_paley(q))


@lru_cache(maxsize=None)
def build_tromp_star(p: int) -> TrStarGraph:
    """Tr*(QR_p): Tr(QR_p) plus twins of vertices 0 and 1 and the arc t1 -> t0."""
    tromp = tromp_over_paley(p)
    tg = tromp.graph
    n = tg.n + 2
    t0, t1 = tg.n, tg.n + 1
    arcs = list(tg.arcs())
    for twin, orig in ((t0, 0), (t1, 1)):
        for w in iter_bits(tg.out_bits[orig]):
            arcs.append((twin, w))
        for w in iter_bits(tg.in_bits[orig]):
            arcs.append((w, twin))
    arcs.append((t1, t0))
    graph = OrientedGraph.from_arcs(n, arcs)
    star = TrStarGraph(tromp, graph)
    _assert_tromp_star(star)
    return star


def _assert_tromp_star(s: TrStarGraph) -> None:
    g = s.graph
    tg = s.tromp.graph
    nfull = g.n
    tromp_mask = (1 << tg.n) - 1
    for twin, orig in ((s.t0, 0), (s.t1, 1)):
        assert g.out_bits[twin] & tromp_mask == tg.out_bits[orig], "twin out-neighborhood off"
        assert g.in_bits[twin] & tromp_mask == tg.in_bits[orig], "twin in-neighborhood off"
        assert not g.adjacent(twin, orig), "twin adjacent to its original"
    new_mask = (1 << s.t0) | (1 << s.t1)
    assert g.has_arc(s.t1, s.t0), "missing arc t1 -> t0"
    assert g.out_bits[s.t0] & new_mask == 0 and g.in_bits[s.t1] & new_mask == 0, (
        "extra arcs among {t0, t1}"
    )
    assert nfull == 2 * s.paley_q + 4


_T9_EXTRA_ARCS = ((0, 7), (1, 7), (7, 3), (7, 8), (8, 0), (8, 1), (8, 2), (8, 3), (8, 4), (8, 5), (8, 6))


@lru_cache(maxsize=None)
def build_t9() -> T9Graph:
    """The fixed 9-vertex target: QR_7 plus the dominating repair vertices 7 and 8."""
    qr7 = build_paley(7)
    arcs = list(qr7.graph.arcs()) + list(_T9_EXTRA_ARCS)
    graph = OrientedGraph.from_arcs(9, arcs)
    assert graph.m == 32
    assert graph.out_bits[8] == 0b0111_1111, "vertex 8 must dominate QR_7"
    assert graph.in_bits[7] == 0b011 and graph.out_bits[7] == (1 << 3) | (1 << 8)
    sub, _ = graph.induced_subgraph(list(range(7)))
    assert sub == qr7.graph, "restriction of T_9 to 0..6 must equal QR_7"
    return T9Graph(graph)


def find_tromp_automorphism(
    t: TrompGraph, pins: list[tuple[int, int]] | None = None
) -> list[int] | None:
    """Backtracking search for an automorphism of Tr(G) extending ``pins``.

    Searches over anti-twin class representatives with candidate bitsets and
    neighborhood propagation; sigma(at(v)) = at(sigma(v)) is forced because
    anti-twins are the unique non-neighbor pairs.  Returns None only when the
    pins admit no extension (single-vertex pins and arc pins onto (0,1) are
    guaranteed by vertex-/arc-transitivity for Tr over Paley tournaments).
    """
    g = t.graph
    at = t.anti_twin
    n = g.n
    m = t.base_order
    reps = list(range(m)) + [2 * m]
    rep_index = {r: i for i, r in enumerate(reps)}
    full = (1 << n) - 1

    sigma = [-1] * n
    candidates = [full] * len(reps)
    out, inn = g.out_bits, g.in_bits

    def assign(idx: int, w: int, cand: list[int]) -> bool:
        """Bind rep idx to w (and its anti-twin); prune; False on a dead end."""
        r = reps[idx]
        sigma[r] = w
        sigma[at[r]] = at[w]
        used = (1 << w) | (1 << at[w])
        non_r = full & ~out[r] & ~inn[r] & ~(1 << r)
        non_w = full & ~out[w] & ~inn[w] & ~(1 << w)
        for j in range(len(reps)):
            s = reps[j]
            if sigma[s] >= 0:
                continue
            c = cand[j] & ~used
            if out[r] >> s & 1:
                c &= out[w]
            elif inn[r] >> s & 1:
                c &= inn[w]
            elif non_r >> s & 1:
                c &= non_w
            ar = at[r]
            aw = at[w]
            if out[ar] >> s & 1:
                c &= out[aw]
            elif inn[ar] >> s & 1:
                c &= inn[aw]
            if not c:
                return False
            cand[j] = c
        return True

    # Fold the pins into initial candidate sets, rewriting non-representative
    # pins through the forced anti-twin rule.
    if pins:
        want: dict[int, int] = {}
        for v, img in pins:
            if not (0 <= v < n and 0 <= img < n):
                raise GraphError(f"pin ({v},{img}) out of range")
            r, target = (v, img) if v in rep_index else (at[v], at[img])
            if want.setdefault(r, target) != target:
                return None
        seen_images = set()
        for r, target in want.items():
            if target in seen_images or at[target] in seen_images:
                return None
            seen_images.add(target)
            candidates[rep_index[r]] &= 1 << target

    # Unpinned searches keep the static ascending order, whose first-choice
    # result is the identity.  Pinned searches pick the most-constrained rep
    # next (ties to the lowest index), which keeps the backtracking shallow
    # even on Tr(QR_659).
    use_mrv = bool(pins)

    def pick(cand: list[int]) -> int:
        best, best_size = -1, 1 << 62
        for j, r in enumerate(reps):
            if sigma[r] >= 0:
                continue
            if not use_mrv:
                return j
            size = cand[j].bit_count()
            if size < best_size:
                best, best_size = j, size
        return best

    def search(done: int, cand: list[int]) -> bool:
        if done == len(reps):
            return True
        idx = pick(cand)
        for w in iter_bits(cand[idx]):
            nxt = cand[:]
            if assign(idx, w, nxt) and search(done + 1, nxt):
                return True
            sigma[reps[idx]] = -1
            sigma[at[reps[idx]]] = -1
        return False

    if not search(0, candidates):
        return None
    assert is_automorphism(g, sigma), "automorphism search produced a non-automorphism"
    return sigma


# --- closed-form automorphisms of Tr(QR_q) ---
#
# Tr(QR_q) is a signed structure on the projective line over GF(q): encode
# vertex u < q as (z=u, +), vertex u+q as (z=u, -), hub 2q as (inf, +) and
# hub 2q+1 as (inf, -).  With the pair character d(z1,z2) = chi(z2-z1) for
# finite points, d(x,inf) = +1, d(inf,x) = -1, the arcs are exactly:
# (z1,e1) -> (z2,e2) iff e1*e2*d(z1,z2) = +1.
# A Moebius map f(z) = (az+b)/(cz+d) with square determinant becomes an
# automorphism via (z,e) -> (f(z), e*s(z)) where the sign twist is
# s(z) = chi(cz+d), patched at the pole (-chi(c)) and at infinity
# (chi(c), or chi(d) when c = 0).  Every output is assertion-checked.

_INF = -1


def _mobius_tromp_perm(t: TrompGraph, mat: tuple[int, int, int, int]) -> list[int]:
    """The Tr(QR_q) permutation induced by a Moebius map with square det."""
    paley = build_paley(t.paley_q)
    f = paley.field
    res = paley.residues
    a, b, c, d = mat
    det = f.sub(f.mul(a, d), f.mul(b, c))
    if det not in res:
        raise GraphError("Moebius determinant must be a non-zero square")

    def chi(x: int) -> int:
        return 1 if x in res else -1

    q = t.base_order
    perm = [0] * (2 * q + 2)

    def image(z: int) -> tuple[int, int]:
        """(f(z), sign twist s(z)); z = _INF encodes the point at infinity."""
        if z == _INF:
            if c != 0:
                return f.mul(a, f.inv(c)), chi(c)
            return _INF, chi(d)
        den = f.add(f.mul(c, z), d)
        if den == 0:
            return _INF, -chi(c)
        return f.mul(f.add(f.mul(a, z), b), f.inv(den)), chi(den)

    def encode(w: int, eps: int) -> int:
        if w == _INF:
            return 2 * q if eps > 0 else 2 * q + 1
        return w if eps > 0 else w + q

    for z in list(range(q)) + [_INF]:
        w, s = image(z)
        src_plus = encode(z, 1)
        perm[src_plus] = encode(w, s)
        perm[t.anti_twin[src_plus]] = encode(w, -s)
    assert is_automorphism(t.graph, perm), "Moebius action broke arcs"
    return perm


def tromp_pin_automorphism(t: TrompGraph, pins: list[tuple[int, int]]) -> list[int] | None:
    """An automorphism of Tr(QR_q) realizing the pins.

    Uses the closed-form Moebius action for the two pin shapes the coloring
    repair needs (send any vertex to 0; send an arc (0, c) onto (0, 1)) and
    falls back to the backtracking search for anything else or for Tromp
    graphs over non-Paley bases.
    """
    if t.paley_q is None:
        return find_tromp_automorphism(t, pins)
    paley = build_paley(t.paley_q)
    f = paley.field
    q = t.base_order
    n0 = next(x for x in range(1, q) if x not in paley.residues)

    def decode(v: int) -> tuple[int, int]:
        if v == 2 * q:
            return _INF, 1
        if v == 2 * q + 1:
            return _INF, -1
        return (v, 1) if v < q else (v - q, -1)

    mat = None
    if len(pins) == 1 and pins[0][1] == 0:
        z, eps = decode(pins[0][0])
        if z == _INF:
            mat = (0, n0, 1, 0) if eps > 0 else (0, 1, n0, 0)
        elif eps > 0:
            mat = (1, f.neg(z), 0, 1)
        else:
            mat = (n0, f.neg(f.mul(n0, z)), 0, n0)
    elif len(pins) == 2 and pins[0] == (0, 0) and pins[1][1] == 1:
        y, _eps = decode(pins[1][0])
        if not t.graph.has_arc(0, pins[1][0]):
            return find_tromp_automorphism(t, pins)
        if y == _INF:
            mat = (1, 0, 1, 1)
        else:
            mat = (1, 0, f.mul(f.sub(y, 1), f.inv(y)), 1)
    if mat is None:
        return find_tromp_automorphism(t, pins)
    perm = _mobius_tromp_perm(t, mat)
    assert all(perm[v] == img for v, img in pins), "closed form missed a pin"
    return perm
