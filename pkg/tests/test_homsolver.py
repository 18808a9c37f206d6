from itertools import combinations, product

import pytest

from orientedcoloring.digraph import GraphError, OrientedGraph, verify_homomorphism
from orientedcoloring.generators import GenSpec, Xorshift64Star, generate
from orientedcoloring.homsolver import SolverConfig, TheoremContradiction, qr7_oracle, solve
from orientedcoloring.paley import build_paley

from oracles import MapEnumerationOracle


def all_oriented_graphs(n):
    """Every labeled oriented graph on n vertices (3 states per pair)."""
    pairs = list(combinations(range(n), 2))
    for states in product((0, 1, 2), repeat=len(pairs)):
        arcs = []
        for (u, v), s in zip(pairs, states):
            if s == 1:
                arcs.append((u, v))
            elif s == 2:
                arcs.append((v, u))
        yield OrientedGraph.from_arcs(n, arcs)


def all_tournaments(n):
    pairs = list(combinations(range(n), 2))
    for states in product((0, 1), repeat=len(pairs)):
        arcs = [(u, v) if s else (v, u) for (u, v), s in zip(pairs, states)]
        yield OrientedGraph.from_arcs(n, arcs)


def test_c5_into_qr3_matches_bruteforce():
    c5 = OrientedGraph.from_arcs(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])
    qr3 = build_paley(3).graph
    oracle = MapEnumerationOracle(qr3, 5)
    result = solve(c5, qr3)
    assert (result.status == "sat") == oracle.exists(c5)
    assert result.status == "unsat"


def test_identity_pins():
    g = generate(GenSpec("bounded-degree", 12, 3, 4))
    result = solve(g, g, SolverConfig(pins={v: v for v in range(g.n)}))
    assert result.status == "sat"
    assert result.map.assignment == tuple(range(g.n))


def test_single_arc_deterministic():
    arc = OrientedGraph.from_arcs(2, [(0, 1)])
    result = solve(arc, build_paley(3).graph)
    assert result.map.assignment == (0, 1)


def test_inconsistent_pins_unsat():
    arc = OrientedGraph.from_arcs(2, [(0, 1)])
    result = solve(arc, build_paley(3).graph, SolverConfig(pins={0: 1, 1: 0}))
    assert result.status == "unsat"
    with pytest.raises(GraphError):
        solve(arc, build_paley(3).graph, SolverConfig(pins={0: 9}))


def test_budget_exhaustion():
    g = generate(GenSpec("d-regular", 10, 3, 8))
    result = solve(g, build_paley(3).graph, SolverConfig(budget=3))
    assert result.status in ("budget", "unsat")
    full = solve(g, build_paley(3).graph)
    if full.status == "unsat":
        assert result.status in ("budget", "unsat")


@pytest.mark.parametrize("order", ["degeneracy", "mrv"])
def test_completeness_small(order):
    # every oriented source on <= 3 vertices against every 3-tournament
    targets = list(all_tournaments(3))
    oracles = [MapEnumerationOracle(t, 3) for t in targets]
    for g in all_oriented_graphs(3):
        for t, oracle in zip(targets, oracles):
            got = solve(g, t, SolverConfig(order=order))
            assert (got.status == "sat") == oracle.exists(g)
            if got.status == "sat":
                assert verify_homomorphism(g, t, got.map) is None


def test_completeness_4_vertices_sampled_tournaments():
    rng = Xorshift64Star(99)
    targets = list(all_tournaments(4))
    targets = [targets[rng.randrange(len(targets))] for _ in range(6)]
    oracles = [MapEnumerationOracle(t, 4) for t in targets]
    for g in all_oriented_graphs(4):
        for t, oracle in zip(targets, oracles):
            assert (solve(g, t).status == "sat") == oracle.exists(g)


def test_forward_checking_prunes_soundly():
    # every recorded prune must be justified by a direct arc violation
    for seed in (1, 2, 3):
        g = generate(GenSpec("bounded-degree", 14, 3, seed))
        t = build_paley(7).graph
        result = solve(g, t, record_prunes=True)
        assert result.status == "sat"
        for w, lost, v in result.prune_log:
            assert g.adjacent(v, w)
            # v had just been assigned some color c; pruning (w, lost) means
            # lost conflicts with c along the (v, w) arc in one direction
            ok_dirs = []
            if g.has_arc(v, w):
                ok_dirs.append(any(t.has_arc(c, lost) for c in range(t.n)))
            if g.has_arc(w, v):
                ok_dirs.append(any(t.has_arc(lost, c) for c in range(t.n)))
            assert ok_dirs  # the arc exists in some direction


def test_qr7_oracle_path():
    path = OrientedGraph.from_arcs(3, [(0, 1), (1, 2)])
    cmap = qr7_oracle(path)
    assert verify_homomorphism(path, build_paley(7).graph, cmap) is None


def test_qr7_oracle_rejects_bad_inputs():
    star4 = OrientedGraph.from_arcs(5, [(0, 1), (0, 2), (0, 3), (0, 4)])
    with pytest.raises(GraphError):
        qr7_oracle(star4)  # max degree 4
    k4 = OrientedGraph.from_arcs(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    with pytest.raises(GraphError):
        qr7_oracle(k4)  # 3-regular, degeneracy 3
    sas = OrientedGraph.from_arcs(6, [(0, 1), (0, 2), (0, 3), (4, 3), (5, 3)])
    with pytest.raises(GraphError):
        qr7_oracle(sas)  # 3-source adjacent to a 3-sink


def test_qr7_oracle_large_instance():
    # 200 vertices, 2-degenerate, max degree 3, no forbidden pattern
    from orientedcoloring.generators import oracle_ready_instance

    g = oracle_ready_instance(200, 7)
    cmap = qr7_oracle(g)
    assert verify_homomorphism(g, build_paley(7).graph, cmap) is None
