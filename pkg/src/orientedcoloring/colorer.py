"""Constructive oriented colorings of bounded-degree graphs.

Three entry points:

* color_deg3: every graph of maximum degree <= 3 into the fixed 9-vertex
  target T_9, per weakly connected component (2-degenerate / planted-source
  components go through the QR_7 oracle plus the dominating vertex 8;
  3-regular source-free components remove one arc, recolor by a QR_7
  automorphism and spend the two repair vertices 7 and 8);
* color_degenerate: any (Delta-1)-degenerate graph of maximum degree Delta
  into a target with Properties P(Delta-1, Delta-2) and
  C(Delta-2, n(Delta-2)/(Delta-1)+1), by arc/vertex reductions replayed in
  reverse;
* color_general: any graph of maximum degree Delta in 4..7 into Tr*(QR_p),
  p = select_target(Delta); Delta-regular components remove one arc, get the
  degenerate coloring, and are repaired through Tromp automorphisms and the
  twin vertices t0/t1.

Every result is self-verified against its target before it is returned; an
impossible step raises TheoremContradiction (a bug sentinel, never a normal
outcome).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .digraph import (
    ColorMap,
    GraphError,
    OrientedGraph,
    TargetGraph,
    connected_components,
    degree_profile,
    find_k_sources,
    iter_bits,
    verify_homomorphism,
)
from .homsolver import TheoremContradiction, qr7_oracle
from .paley import affine_automorphism, build_paley, map_arc_to_arc
from .properties import certified_properties, check_cnk, check_pnk
from .tromp import (
    TrompGraph,
    TrStarGraph,
    build_t9,
    build_tromp_star,
    tromp_pin_automorphism,
    tromp_over_paley,
)


@dataclass
class ComponentTrace:
    """Which rule colored a component, into which target."""

    vertices: tuple[int, ...]
    rule: str
    target_name: str
    bound: int
    colors: dict[int, int]


@dataclass
class ColoringResult:
    """A verified coloring plus its claimed chromatic bound and per-component trace.

    ``map``/``target``/``bound_claimed`` are set when every component went to
    the same target; otherwise only the per-component traces carry colorings.
    """

    map: ColorMap | None
    target: TargetGraph | None
    bound_claimed: int | None
    trace: list[ComponentTrace]

    @property
    def unified(self) -> bool:
        return self.map is not None


# Corollary table: maximum degree -> Paley modulus of the certified target.
TARGET_MODULUS = {4: 11, 5: 43, 6: 151, 7: 659}


def select_target(delta: int) -> int:
    """The Paley modulus p with Tr*(QR_p) certified for maximum degree delta."""
    if delta not in TARGET_MODULUS:
        raise ValueError(
            f"unsupported maximum degree {delta}: certified targets exist for 4..7 only"
        )
    p = TARGET_MODULUS[delta]
    cert = certified_properties(p, delta)
    if not cert.certified:
        raise RuntimeError(f"target chain for delta={delta} is uncertified: {cert.reason}")
    return p


# --- maximum degree 3 ---


def color_deg3(g: OrientedGraph) -> ColoringResult:
    """Color any graph of maximum degree <= 3 into T_9, component by component."""
    if g.max_degree() > 3:
        raise GraphError(f"maximum degree {g.max_degree()} exceeds 3")
    t9 = build_t9()
    phi = [0] * g.n
    traces = []
    for comp in connected_components(g):
        sub, old_of_new = g.induced_subgraph(comp)
        colors, rule = _color_deg3_component(sub)
        for new, old in enumerate(old_of_new):
            phi[old] = colors[new]
        traces.append(
            ComponentTrace(tuple(comp), rule, t9.name, 9, dict(zip(old_of_new, colors)))
        )
    cmap = ColorMap(tuple(phi), t9.name)
    bad = verify_homomorphism(g, t9.graph, cmap)
    if bad is not None:
        raise TheoremContradiction(f"deg3 coloring violates arc {bad}")
    return ColoringResult(cmap, t9, 9, traces)


def _color_deg3_component(c: OrientedGraph) -> tuple[list[int], str]:
    profile = degree_profile(c)
    sources = find_k_sources(c, 3)
    if profile.degeneracy <= 2 or sources:
        # Remove every 3-source (pairwise non-adjacent), color the 2-degenerate
        # remainder into QR_7, then give the sources the dominating vertex 8.
        keep = [v for v in range(c.n) if v not in sources]
        rest, old_of_new = c.induced_subgraph(keep)
        base = qr7_oracle(rest)
        colors = [8] * c.n
        for new, old in enumerate(old_of_new):
            colors[old] = base[new]
        return colors, "2-degenerate-or-3-source"

    # 3-regular with no 3-source: break one arc u->v at a vertex v of
    # out-degree two, then repair with the extra vertices 7 and 8.
    assert c.is_regular(3)
    v = next(x for x in range(c.n) if c.out_degree(x) == 2)
    u = c.in_neighbors(v)[0]
    u1 = c.in_neighbors(u)[0]
    u2 = next(w for w in c.neighbors(u) if w not in (u1, v))
    reduced = OrientedGraph.from_arcs(c.n, [a for a in c.arcs() if a != (u, v)])
    base = qr7_oracle(reduced)
    colors = list(base.assignment)
    qr7 = build_paley(7)
    if c.has_arc(u, u2):
        # u1 -> u -> u2 forces distinct colors; land them on (1,3) or (0,3)
        if qr7.graph.has_arc(colors[u1], colors[u2]):
            sigma = map_arc_to_arc(qr7, (colors[u1], colors[u2]), (1, 3))
        else:
            sigma = map_arc_to_arc(qr7, (colors[u2], colors[u1]), (3, 0))
    else:
        # both u1 and u2 point at u; land their colors inside {0,1}
        if colors[u1] == colors[u2]:
            sigma = affine_automorphism(qr7, 1, qr7.field.neg(colors[u1]))
        elif qr7.graph.has_arc(colors[u1], colors[u2]):
            sigma = map_arc_to_arc(qr7, (colors[u1], colors[u2]), (0, 1))
        else:
            sigma = map_arc_to_arc(qr7, (colors[u2], colors[u1]), (0, 1))
    colors = [sigma[x] for x in colors]
    colors[u] = 7
    colors[v] = 8
    return colors, "3-regular-repair"


# --- degenerate graphs into a certified target ---


def certify_target(t: TargetGraph, delta: int) -> None:
    """Check that t satisfies the target hypotheses for maximum degree delta.

    Paley-Tromp targets go through the certified derivation chain; anything
    else is checked explicitly (exhaustive P scan and clique scan), which is
    only feasible for small targets.
    """
    if isinstance(t, TrompGraph) and t.paley_q is not None and delta >= 4:
        cert = certified_properties(t.paley_q, delta)
        if not cert.certified:
            raise RuntimeError(f"{t.name} uncertified for delta={delta}: {cert.reason}")
        return
    rep_p = check_pnk(t, delta - 1, delta - 2)
    if not rep_p.holds:
        raise RuntimeError(f"{t.name} lacks P({delta - 1},{delta - 2}): {rep_p.summary()}")
    if delta >= 3:
        need = Fraction(t.graph.n * (delta - 2), delta - 1) + 1
        rep_c = check_cnk(t, delta - 2, need)
        if not rep_c.holds:
            raise RuntimeError(f"{t.name} lacks C({delta - 2},{need}): {rep_c.summary()}")


def color_degenerate(
    g: OrientedGraph,
    t: TargetGraph,
    delta: int,
    *,
    certified: bool = False,
    check_counting: bool = True,
) -> ColorMap:
    """Color a (delta-1)-degenerate graph of maximum degree <= delta into t.

    Reduction loop: repeatedly take a minimum-degree vertex u; if its
    neighborhood spans an arc v1->v2, delete the u-v1 arc, else delete u.
    Replay in reverse: an arc op recolors v1 from its successor-set options
    (filtered for compatibility at u, where each later neighbor kills at most
    one option) and then recolors u; a vertex op colors u from the
    intersection of the per-neighbor allowed unions and re-picks each
    neighbor inside its option clique.  Empty choice sets raise
    TheoremContradiction.
    """
    if delta < 2:
        raise ValueError("delta must be >= 2")
    profile = degree_profile(g)
    if profile.max_degree > delta:
        raise GraphError(f"maximum degree {profile.max_degree} exceeds delta={delta}")
    if profile.degeneracy > delta - 1:
        raise GraphError(f"degeneracy {profile.degeneracy} exceeds delta-1={delta - 1}")
    if not certified:
        certify_target(t, delta)

    n = g.n
    out = list(g.out_bits)
    inn = list(g.in_bits)
    alive = (1 << n) - 1
    remaining = n
    ops: list[tuple] = []

    while remaining:
        u, best_d = -1, n + 1
        for x in iter_bits(alive):
            d = ((out[x] | inn[x]) & alive).bit_count()
            if d < best_d:
                u, best_d = x, d
        if best_d > delta - 1:
            raise TheoremContradiction("reduction found no vertex of degree <= delta-1")
        nbrs_mask = (out[u] | inn[u]) & alive
        u_nbrs = [(w, 1 if out[w] >> u & 1 else -1) for w in iter_bits(nbrs_mask)]
        v1 = v2 = -1
        for a in iter_bits(nbrs_mask):
            inner = out[a] & nbrs_mask
            if inner:
                v1, v2 = a, (inner & -inner).bit_length() - 1
                break
        if v1 >= 0:
            v1_others = [
                (w, 1 if out[w] >> v1 & 1 else -1)
                for w in iter_bits((out[v1] | inn[v1]) & alive)
                if w != u
            ]
            ops.append(("arc", u, v1, v2, u_nbrs, v1_others))
            if out[u] >> v1 & 1:
                out[u] &= ~(1 << v1)
                inn[v1] &= ~(1 << u)
            else:
                out[v1] &= ~(1 << u)
                inn[u] &= ~(1 << v1)
        else:
            vi_others = [
                [
                    (x, 1 if out[x] >> w & 1 else -1)
                    for x in iter_bits((out[w] | inn[w]) & alive)
                    if x != u
                ]
                for w, _ in u_nbrs
            ]
            ops.append(("vertex", u, u_nbrs, vi_others))
            alive &= ~(1 << u)
            remaining -= 1

    phi = _replay(n, ops, t, delta, check_counting)
    cmap = ColorMap(tuple(phi), t.name)
    bad = verify_homomorphism(g, t.graph, cmap)
    if bad is not None:
        raise TheoremContradiction(f"degenerate coloring violates arc {bad}")
    return cmap


def _replay(n: int, ops: list[tuple], t: TargetGraph, delta: int, check_counting: bool) -> list[int]:
    tg = t.graph
    at = t.anti_twin
    t_out, t_in = tg.out_bits, tg.in_bits
    full = (1 << tg.n) - 1
    phi = [-1] * n

    def options(pairs: list[tuple[int, int]]) -> int:
        mask = full
        for x, s in pairs:
            mask &= t_out[phi[x]] if s > 0 else t_in[phi[x]]
        return mask

    for op in reversed(ops):
        if op[0] == "vertex":
            _, u, u_nbrs, vi_others = op
            inter = full
            option_sets = []
            for (w, s), others in zip(u_nbrs, vi_others):
                opts = options(others)
                option_sets.append(opts)
                allowed = 0
                for o in iter_bits(opts):
                    allowed |= t_out[o] if s > 0 else t_in[o]
                inter &= allowed
            if check_counting and u_nbrs:
                floor = tg.n - len(u_nbrs) * (Fraction(tg.n, delta - 1) - 1)
                if inter.bit_count() < floor:
                    raise TheoremContradiction(
                        f"vertex-case intersection {inter.bit_count()} below counting bound {floor}"
                    )
            if not inter:
                raise TheoremContradiction("vertex-case color intersection is empty")
            phi[u] = (inter & -inter).bit_length() - 1
            for (w, s), opts in zip(u_nbrs, option_sets):
                pick = opts & (t_in[phi[u]] if s > 0 else t_out[phi[u]])
                if not pick:
                    raise TheoremContradiction("neighbor re-pick found no adjacent option")
                phi[w] = (pick & -pick).bit_length() - 1
        else:
            _, u, v1, v2, u_nbrs, v1_others = op
            s1 = next(s for w, s in u_nbrs if w == v1)
            opts = options(v1_others)
            eliminated = 0
            killers = 0
            for w, sw in u_nbrs:
                if w in (v1, v2):
                    continue
                killers += 1
                if sw != s1:
                    eliminated |= 1 << phi[w]
                elif at is not None:
                    eliminated |= 1 << at[phi[w]]
            surviving = opts & ~eliminated
            if check_counting and (opts & eliminated).bit_count() > killers:
                raise TheoremContradiction("arc-case elimination exceeded one option per neighbor")
            if not surviving:
                raise TheoremContradiction("arc-case option clique fully eliminated")
            phi[v1] = (surviving & -surviving).bit_length() - 1
            cand = options(u_nbrs)
            if not cand:
                raise TheoremContradiction("arc-case found no color for the pivot vertex")
            phi[u] = (cand & -cand).bit_length() - 1
    return phi


# --- maximum degree 4..7 into Tr*(QR_p) ---


def color_general(
    g: OrientedGraph, delta: int, *, uniform_target: bool = False
) -> ColoringResult:
    """Color any graph of maximum degree delta in 4..7 into Tr*(QR_p).

    Components that are not delta-regular take the degenerate route into
    Tr(QR_p), a subgraph of Tr*(QR_p).  Without ``uniform_target``, a
    component of maximum degree <= 3 is routed to T_9 and a d-regular
    component with 4 <= d < delta to the smaller Tr*(QR_{p(d)}); the merged
    map is reported only when all components share one target.
    """
    if not 4 <= delta <= 7:
        raise ValueError(f"delta={delta} unsupported: certified targets exist for 4..7 only")
    if g.max_degree() > delta:
        raise GraphError(f"maximum degree {g.max_degree()} exceeds delta={delta}")
    p = select_target(delta)
    star = build_tromp_star(p)
    traces = []
    for comp in connected_components(g):
        sub, old_of_new = g.induced_subgraph(comp)
        d_comp = sub.max_degree()
        if not uniform_target and d_comp <= 3:
            res3 = color_deg3(sub)
            colors = list(res3.map.assignment)
            tname, bound = res3.target.name, 9
            rule = "routed-deg3/" + res3.trace[0].rule
            target_graph = res3.target.graph
        else:
            if not uniform_target and 4 <= d_comp < delta and sub.is_regular(d_comp):
                p_c = select_target(d_comp)
                star_c = build_tromp_star(p_c)
                delta_c = d_comp
            else:
                star_c, delta_c = star, delta
            tromp_c = star_c.tromp
            if sub.is_regular(delta_c):
                colors = _color_regular_component(sub, tromp_c, star_c, delta_c)
                tname, bound, rule = star_c.name, star_c.graph.n, "regular-repair"
                target_graph = star_c.graph
            else:
                cmap = color_degenerate(sub, tromp_c, delta_c, certified=True)
                colors = list(cmap.assignment)
                tname, bound, rule = star_c.name, star_c.graph.n, "degenerate"
                target_graph = star_c.graph
        bad = verify_homomorphism(sub, target_graph, colors)
        if bad is not None:
            raise TheoremContradiction(f"component coloring violates arc {bad}")
        traces.append(ComponentTrace(tuple(comp), rule, tname, bound, dict(zip(old_of_new, colors))))

    names = {tr.target_name for tr in traces}
    if len(names) > 1:
        return ColoringResult(None, None, None, traces)
    shared = names.pop() if names else star.name
    target = _target_by_name(shared)
    phi = [0] * g.n
    for tr in traces:
        for v, c in tr.colors.items():
            phi[v] = c
    cmap = ColorMap(tuple(phi), shared)
    bad = verify_homomorphism(g, target.graph, cmap)
    if bad is not None:
        raise TheoremContradiction(f"merged coloring violates arc {bad}")
    return ColoringResult(cmap, target, target.graph.n, traces)


def _target_by_name(name: str) -> TargetGraph:
    if name == "t9":
        return build_t9()
    kind, _, q = name.partition(":")
    if kind == "qr":
        return build_paley(int(q))
    if kind == "tromp":
        return tromp_over_paley(int(q))
    if kind == "tromp*":
        return build_tromp_star(int(q))
    raise ValueError(f"unknown target name {name!r}")


def _color_regular_component(
    sub: OrientedGraph, tromp: TrompGraph, star: TrStarGraph, delta: int
) -> list[int]:
    """Remove one arc, color, then repair via Tromp automorphisms and twins."""
    u, v = next(sub.arcs())
    reduced = OrientedGraph.from_arcs(sub.n, [a for a in sub.arcs() if a != (u, v)])
    base = color_degenerate(reduced, tromp, delta, certified=True)
    colors = list(base.assignment)

    sigma = tromp_pin_automorphism(tromp, [(colors[v], 0)])
    if sigma is None:
        raise TheoremContradiction("vertex-transitivity pin failed on a Tromp target")
    colors = [sigma[c] for c in colors]

    t_out, t_in = tromp.graph.out_bits, tromp.graph.in_bits
    opts = (1 << tromp.graph.n) - 1
    for w in reduced.neighbors(u):
        opts &= t_out[colors[w]] if reduced.has_arc(w, u) else t_in[colors[w]]
    pick = opts & ~(1 | (1 << tromp.anti_twin[0]))
    if not pick:
        raise TheoremContradiction("no option for the repaired vertex outside {0, at(0)}")
    cu = (pick & -pick).bit_length() - 1
    colors[u] = cu
    if not tromp.graph.has_arc(cu, 0):
        # the arc runs 0 -> phi(u); move it onto (0,1) and spend the twins
        sigma2 = tromp_pin_automorphism(tromp, [(0, 0), (cu, 1)])
        if sigma2 is None:
            raise TheoremContradiction("arc-transitivity pin failed on a Tromp target")
        colors = [sigma2[c] for c in colors]
        colors[u] = star.t1
        colors[v] = star.t0
    return colors


def color_auto(
    g: OrientedGraph, delta: int | None = None, *, uniform_target: bool = False
) -> ColoringResult:
    """Route by maximum degree: <= 3 to T_9, 4..7 to Tr*(QR_p)."""
    d = g.max_degree() if delta is None else delta
    if d <= 3:
        return color_deg3(g)
    return color_general(g, d, uniform_target=uniform_target)
