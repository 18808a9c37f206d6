import json
from fractions import Fraction
from itertools import product

import pytest

from orientedcoloring.digraph import OrientedGraph
from orientedcoloring.paley import build_paley
from orientedcoloring.properties import (
    CliqueBudgetExceeded,
    MINIMAL_PNN,
    _pruned_chunks,
    _pruned_scan_chunk,
    alpha_successors,
    certified_properties,
    check_cnk,
    check_pnk,
    count_transitive_triangles,
    is_compatible,
    paley_moduli,
    search_minimal_paley,
)
from orientedcoloring.tromp import tromp_over_paley

from oracles import cnk_min_naive, pnk_min_naive, transitive_triangles_naive


def test_alpha_successors_examples():
    qr7 = build_paley(7)
    assert alpha_successors(qr7, (0, 1), (1, 1)) == {2}
    assert alpha_successors(qr7, (0, 1), (-1, 1)) == {3, 5}
    assert len(alpha_successors(qr7, (0, 1), (-1, 1))) == (7 + 1) // 4
    assert alpha_successors(qr7, (), ()) == set(range(7))


def test_alpha_successors_match_naive():
    t = tromp_over_paley(7)
    for seq in product(range(8), repeat=2):
        for alpha in product((1, -1), repeat=2):
            got = alpha_successors(t, seq, alpha)
            assert got == {
                u
                for u in range(t.graph.n)
                if all(
                    t.graph.has_arc(v, u) if s > 0 else t.graph.has_arc(u, v)
                    for v, s in zip(seq, alpha)
                )
            }


def test_is_compatible():
    qr7 = build_paley(7)
    assert is_compatible(qr7, (3, 3), (1, 1))
    assert not is_compatible(qr7, (3, 3), (1, -1))
    tr = tromp_over_paley(7)
    u, atu = 2, tr.anti_twin[2]
    assert is_compatible(tr, (u, atu), (1, -1))
    assert not is_compatible(tr, (u, atu), (1, 1))
    assert is_compatible(tr, (0, 5), (1, 1))


def test_check_pnk_examples():
    r = check_pnk(build_paley(11), 2, 2)
    assert r.holds and r.achieved_min == 2
    r = check_pnk(build_paley(7), 2, 2)
    assert not r.holds and r.achieved_min == 1
    r = check_pnk(build_paley(43), 3, 3, mode="pruned")
    assert r.holds and r.achieved_min == 3


def test_witness_achieves_min():
    t = build_paley(11)
    r = check_pnk(t, 2, 2)
    seq, alpha = r.witness
    assert len(alpha_successors(t, seq, alpha)) == r.achieved_min


@pytest.mark.parametrize("q", [3, 7, 11, 19])
def test_pruned_matches_exhaustive_small(q):
    t = build_paley(q)
    for n in (1, 2, 3):
        exh = check_pnk(t, n, 1)
        pru = check_pnk(t, n, 1, mode="pruned")
        assert exh.achieved_min == pru.achieved_min
        assert exh.achieved_min == pnk_min_naive(t.graph, n)


def test_pruned_matches_exhaustive_beyond_q():
    # n exceeding q forces repeated vertices in sequences
    t = build_paley(3)
    exh = check_pnk(t, 4, 1)
    pru = check_pnk(t, 4, 1, mode="pruned")
    assert exh.achieved_min == pru.achieved_min == pnk_min_naive(t.graph, 4)


def test_exhaustive_on_tromp_matches_naive():
    t = tromp_over_paley(3)
    for n in (1, 2, 3):
        got = check_pnk(t, n, 1).achieved_min
        assert got == pnk_min_naive(t.graph, n, t.anti_twin)


def test_pnk_monotone_in_n():
    for q in (7, 11):
        t = build_paley(q)
        for n in (2, 3):
            hi = check_pnk(t, n, 1).achieved_min
            lo = check_pnk(t, n - 1, 1).achieved_min
            assert hi <= lo


def test_pruned_mode_requires_paley():
    with pytest.raises(ValueError):
        check_pnk(tromp_over_paley(7), 2, 1, mode="pruned")


def test_stop_at_failure_reports_certificate():
    t = build_paley(7)
    r = check_pnk(t, 2, 2, mode="pruned", stop_at_failure=True)
    assert not r.holds and r.achieved_min < 2
    seq, alpha = r.witness
    assert len(alpha_successors(t, seq, alpha)) == r.achieved_min


def test_successor_sets_are_cliques_in_tromp():
    # nonempty compatible constraint sets in Tr(QR_p) produce anti-twin-free
    # cliques; checked exhaustively for p in {3,7,11} and n <= 3
    for p in (3, 7, 11):
        t = tromp_over_paley(p)
        g, at = t.graph, t.anti_twin
        for n in (1, 2, 3):
            for seq in product(range(g.n), repeat=n):
                for alpha in product((1, -1), repeat=n):
                    if not is_compatible(t, seq, alpha):
                        continue
                    succ = sorted(alpha_successors(t, seq, alpha))
                    for i, a in enumerate(succ):
                        for b in succ[i + 1 :]:
                            assert at[a] != b
                            assert g.adjacent(a, b)


def test_check_cnk_examples():
    t11 = tromp_over_paley(11)
    assert check_cnk(t11, 2, 17).holds
    t7 = tromp_over_paley(7)
    r = check_cnk(t7, 3, 13)
    assert r.holds and r.achieved_min == cnk_min_naive(t7.graph, 3)
    single = OrientedGraph.empty(1)
    assert not check_cnk(single, 1, 1).holds


def test_check_cnk_matches_naive():
    t = tromp_over_paley(7)
    for n in (1, 2, 3):
        assert check_cnk(t, n, 1).achieved_min == cnk_min_naive(t.graph, n)


def test_check_cnk_budget_refusal():
    with pytest.raises(CliqueBudgetExceeded) as err:
        check_cnk(tromp_over_paley(11), 2, 17, max_cliques=10)
    assert "certified_properties" in str(err.value)


def test_certified_examples():
    c = certified_properties(659, 7)
    assert c.certified
    assert c.required_pnk == (6, 5)
    assert c.required_cnk == (5, Fraction(1101))
    assert any("C(3,1154)" in step for step in c.chain)

    c = certified_properties(11, 4)
    assert c.certified and c.required_cnk == (2, Fraction(17))

    c = certified_properties(11, 7)
    assert not c.certified and "P(5,5)" in c.reason

    c = certified_properties(151, 6)
    assert c.certified and c.required_cnk[1] == Fraction(1221, 5)


def test_paley_moduli():
    assert paley_moduli(50) == [3, 7, 11, 19, 23, 31, 43, 47]
    assert paley_moduli(50, include_prime_powers=True) == [3, 7, 11, 19, 23, 27, 31, 43, 47]


def test_search_minimal_p22():
    res = search_minimal_paley(2, 2, 20, include_prime_powers=True)
    assert res.first_success == 11 == MINIMAL_PNN[2]
    assert [q for q, r in res.entries if not r.holds] == [3, 7]
    assert not res.truncated


def test_search_budget_truncates():
    res = search_minimal_paley(3, 3, 50, include_prime_powers=True, budget=1)
    assert res.truncated and res.first_success is None


def test_checkpoint_resume(tmp_path):
    t = build_paley(43)
    fresh = check_pnk(t, 3, 3, mode="pruned")
    # simulate an interrupted run: scan the first half of the chunks honestly
    chunks = _pruned_chunks(43, 3, sorted(set(range(1, 43)) - t.residues))
    half = len(chunks) // 2
    best, witness, leaves = None, None, 0
    for chunk in chunks[:half]:
        b, w, lv, _ = _pruned_scan_chunk(t, 3, chunk, None)
        leaves += lv
        if b is not None and (best is None or b < best):
            best, witness = b, w
    ckpt = tmp_path / "p33.ckpt"
    ckpt.write_text(
        json.dumps(
            {
                "target": "qr:43",
                "n": 3,
                "done": half,
                "total": len(chunks),
                "best": [best, list(witness[0]), list(witness[1])],
                "leaves": leaves,
                "stopped": False,
            }
        )
    )
    resumed = check_pnk(t, 3, 3, mode="pruned", checkpoint=str(ckpt))
    assert resumed.holds == fresh.holds
    assert resumed.achieved_min == fresh.achieved_min
    state = json.loads(ckpt.read_text())
    assert state["done"] == len(chunks)


def test_checkpoint_mismatch_rejected(tmp_path):
    ckpt = tmp_path / "bad.ckpt"
    ckpt.write_text(json.dumps({"target": "qr:7", "n": 2, "done": 0, "best": None, "leaves": 0}))
    with pytest.raises(ValueError):
        check_pnk(build_paley(11), 2, 2, mode="pruned", checkpoint=str(ckpt))


def test_parallel_jobs_match_serial():
    t = build_paley(43)
    serial = check_pnk(t, 3, 3, mode="pruned")
    parallel = check_pnk(t, 3, 3, mode="pruned", jobs=2)
    assert (serial.holds, serial.achieved_min, serial.witness) == (
        parallel.holds,
        parallel.achieved_min,
        parallel.witness,
    )
    exh_serial = check_pnk(t, 2, 2)
    exh_parallel = check_pnk(t, 2, 2, jobs=2)
    assert (exh_serial.achieved_min, exh_serial.witness) == (
        exh_parallel.achieved_min,
        exh_parallel.witness,
    )


def test_transitive_triangles():
    qr7 = build_paley(7)
    assert count_transitive_triangles(qr7) == 21
    c3 = OrientedGraph.from_arcs(3, [(0, 1), (1, 2), (2, 0)])
    assert count_transitive_triangles(c3) == 0
    tt = OrientedGraph.from_arcs(3, [(0, 1), (1, 2), (0, 2)])
    assert count_transitive_triangles(tt) == 1
    assert count_transitive_triangles(qr7) == transitive_triangles_naive(qr7.graph)
