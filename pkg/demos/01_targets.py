#!/usr/bin/env python3
"""Build the coloring targets and look at their structure.

QR_q is the tournament on GF(q) (q = 3 mod 4) with an arc u -> v whenever
v - u is a non-zero square.  Tr(QR_q) doubles it and adds two hubs; every
vertex gets a unique non-neighbor, its anti-twin.  T_9 extends QR_7 by a
dominating repair pair.
"""

from orientedcoloring import (
    build_paley,
    build_t9,
    build_tromp_star,
    count_transitive_triangles,
    tromp_over_paley,
)
from orientedcoloring.digraph import is_automorphism, write_digraph

qr7 = build_paley(7)
print("QR_7 residues:", sorted(qr7.residues))
print("QR_7 arcs:", qr7.graph.m)
print("transitive triangles:", count_transitive_triangles(qr7.graph), "= 7*6*4/8")
print()
print(write_digraph(qr7.graph))

for p in (3, 7, 11, 43):
    tr = tromp_over_paley(p)
    print(
        f"Tr(QR_{p}): {tr.graph.n} vertices, {tr.graph.m} arcs"
        f" (= 2*{p}*{p + 1}),"
        f" anti-twin map is an automorphism: {is_automorphism(tr.graph, tr.anti_twin)}"
    )

star = build_tromp_star(11)
print(f"\nTr*(QR_11): {star.graph.n} vertices; twins t0={star.t0}, t1={star.t1}")
print("arc t1 -> t0:", star.graph.has_arc(star.t1, star.t0))

t9 = build_t9()
print(f"\nT_9: {t9.graph.n} vertices, {t9.graph.m} arcs")
print("vertex 8 dominates:", t9.graph.out_neighbors(8))
print("vertex 7: in", t9.graph.in_neighbors(7), "out", t9.graph.out_neighbors(7))
