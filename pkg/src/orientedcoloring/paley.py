"""Paley tournaments QR_q and their affine automorphisms.

QR_q has the elements of GF(q) as vertices (q = 3 mod 4 a prime power) and an
arc u -> v exactly when v - u is a non-zero square.  Because -1 is a
non-square for q = 3 mod 4, every vertex pair carries exactly one arc, and
negation x -> -x reverses all arcs.  The maps x -> a*x + b with a a non-zero
square are arc-preserving and act transitively on arcs.
"""

from __future__ import annotations

from functools import lru_cache

from .digraph import GraphError, OrientedGraph, TargetGraph, is_automorphism
from .gf import FieldError, FieldSpec, build_field


class PaleyTournament(TargetGraph):
    __slots__ = ("field", "residues")

    def __init__(self, field: FieldSpec, graph: OrientedGraph, residues: frozenset[int]):
        super().__init__(graph, f"qr:{field.q}")
        self.field = field
        self.residues = residues

    @property
    def q(self) -> int:
        return self.field.q


@lru_cache(maxsize=None)
def build_paley(q: int) -> PaleyTournament:
    """Build QR_q; rejects q unless it is a prime power = 3 (mod 4).

    Results are cached and shared; tournaments are immutable after build.
    """
    field = build_field(q)
    residues = field.nonzero_squares()
    if len(residues) != (q - 1) // 2:
        raise FieldError(f"GF({q}) has {len(residues)} non-zero squares, expected {(q - 1) // 2}")
    if field.neg(1) in residues:
        raise FieldError(f"-1 is a square in GF({q}); q = 3 (mod 4) should prevent this")
    out_bits = [0] * q
    in_bits = [0] * q
    add = field.add
    for u in range(q):
        row = 0
        for r in residues:
            row |= 1 << add(u, r)
        out_bits[u] = row
    for u in range(q):
        for v in range(q):
            if out_bits[u] >> v & 1:
                in_bits[v] |= 1 << u
    graph = OrientedGraph(q, out_bits, in_bits, q * (q - 1) // 2)
    t = PaleyTournament(field, graph, residues)
    _assert_tournament(t)
    return t


def _assert_tournament(t: PaleyTournament) -> None:
    g = t.graph
    full = (1 << g.n) - 1
    for v in range(g.n):
        if g.out_bits[v] & g.in_bits[v]:
            raise FieldError(f"opposite arcs at vertex {v} in {t.name}")
        if g.und_bits[v] != full & ~(1 << v):
            raise FieldError(f"vertex {v} of {t.name} is not adjacent to every other vertex")


def affine_automorphism(t: PaleyTournament, a: int, b: int) -> list[int]:
    """The permutation x -> a*x + b; requires a to be a non-zero square."""
    f = t.field
    if a not in t.residues:
        raise GraphError(f"multiplier {a} is not a non-zero square of GF({f.q})")
    if not (0 <= b < f.q):
        raise GraphError(f"offset {b} out of range for GF({f.q})")
    perm = [f.add(f.mul(a, x), b) for x in range(f.q)]
    assert is_automorphism(t.graph, perm), f"affine map ({a},{b}) broke arcs of {t.name}"
    return perm


def map_arc_to_arc(t: PaleyTournament, frm: tuple[int, int], to: tuple[int, int]) -> list[int]:
    """An affine automorphism sending arc ``frm`` onto arc ``to``.

    Solves a*frm.src + b = to.src, a*frm.dst + b = to.dst; arc-transitivity
    guarantees the solution has a square multiplier.
    """
    if not t.graph.has_arc(*frm):
        raise GraphError(f"{frm} is not an arc of {t.name}")
    if not t.graph.has_arc(*to):
        raise GraphError(f"{to} is not an arc of {t.name}")
    f = t.field
    a = f.mul(f.sub(to[1], to[0]), f.inv(f.sub(frm[1], frm[0])))
    b = f.sub(to[0], f.mul(a, frm[0]))
    return affine_automorphism(t, a, b)


def converse_map(t: PaleyTournament) -> list[int]:
    """The permutation x -> -x, an isomorphism onto the converse tournament."""
    f = t.field
    perm = [f.neg(x) for x in range(f.q)]
    g = t.graph
    for u, v in g.arcs():
        assert g.has_arc(perm[v], perm[u]), f"negation failed to reverse arc ({u},{v})"
    return perm


def apply_permutation_to_colors(colors: list[int], perm: list[int]) -> list[int]:
    """Recolor by composing a target automorphism with an existing coloring."""
    return [perm[c] for c in colors]
