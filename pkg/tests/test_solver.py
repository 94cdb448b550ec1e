from __future__ import annotations

import random
from itertools import combinations

import numpy as np
import pytest

from htorus.fixtures import corpus
from htorus.graph import Graph, complete, complete_bipartite, petersen, star
from htorus.scheme import DrawingScheme, is_iocr0, odd_independent_pairs, reference_rotation
from htorus.solver import (SAT, UNKNOWN, UNSAT, PairSystem, QuadraticSearch, _cotree, _cotree_order,
                           build_sphere_system, certificate_check, certificate_problem, even_vertex_set,
                           iter_torus_solutions, min_iocr, recompute_parities, solve_sphere, solve_torus,
                           solve_torus_ungauged)
from htorus.scheme import even_vertices

from conftest import random_graph


def test_sphere_system_sizes():
    assert build_sphere_system(star(4)).n_rows == 0
    assert build_sphere_system(complete(4)).n_rows == 3
    assert build_sphere_system(complete(5)).n_rows == 15


def test_solve_sphere_known():
    assert solve_sphere(star(4)).sat
    r = solve_sphere(complete(4))
    assert r.sat and certificate_check(complete(4), r.certificate)
    assert not r.certificate.homology.any()
    assert solve_sphere(complete(5)).status == UNSAT
    assert solve_sphere(complete_bipartite(3, 3)).status == UNSAT


@pytest.mark.parametrize("g", [complete(5), complete(6), complete(7), complete_bipartite(3, 3),
                               complete_bipartite(3, 6), petersen()], ids=["K5", "K6", "K7", "K33", "K36", "P"])
def test_solve_torus_sat(g):
    r = solve_torus(g)
    assert r.sat
    assert certificate_problem(g, r.certificate) is None
    assert all(r.certificate.x(e) == (0, 0) for e in range(g.m) if e not in _cotree(g))


def test_k37_unsat_exhaustive():
    g = complete_bipartite(3, 7)
    r = solve_torus(g)
    assert r.status == UNSAT
    assert r.stats["branches_total"] == 4 ** 12 == r.stats["branches_decided"]


def test_budget_never_reports_unsat():
    r = solve_torus(complete_bipartite(3, 7), budget=1000)
    assert r.status == UNKNOWN
    assert solve_torus_ungauged(complete_bipartite(3, 3), budget=0).status == UNKNOWN


def test_workers_agree():
    r = solve_torus(complete_bipartite(3, 7), workers=2)
    assert r.status == UNSAT and r.stats["branches_decided"] == 4 ** 12
    assert solve_torus(complete(6), workers=2).sat


def _feasible_set_by_scalar(qs):
    return {p for p in range(4 ** len(qs.free)) if qs.feasible(p)}


@pytest.mark.parametrize("g", [complete(5), complete_bipartite(3, 3), complete_bipartite(3, 4), petersen(),
                               Graph(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3), (1, 4), (2, 5)])])
@pytest.mark.parametrize("suffix", [0, 3, 6])
def test_vectorized_matches_scalar(g, suffix):
    ps = PairSystem(g)
    qs = QuadraticSearch(ps, _cotree_order(g, _cotree(g)), suffix_edges=suffix)
    found = set(qs.run(find_all=True))
    assert qs.complete
    assert found == _feasible_set_by_scalar(qs)
    # and feasibility means the linear y-system is consistent
    for p in list(found)[:20]:
        assert ps.system.is_consistent(ps.rhs(qs.x_from_packed(p)))


def _random_cr0(g, rng):
    m = g.m
    P = np.zeros((m, m), dtype=np.uint8)
    for e, f in combinations(range(m), 2):
        P[e, f] = P[f, e] = rng.getrandbits(1)
    return P


def test_vectorized_matches_scalar_random_cr0():
    rng = random.Random(31)
    for _ in range(40):
        g = random_graph(rng, rng.randint(4, 7), 0.6)
        ps = PairSystem(g, cr0=_random_cr0(g, rng))
        free = _cotree_order(g, _cotree(g))
        if len(free) > 7:
            continue
        qs = QuadraticSearch(ps, free)
        assert set(qs.run(find_all=True)) == _feasible_set_by_scalar(qs)


def test_gauge_agreement_on_corpus():
    for g in corpus():
        a, b = solve_torus(g), solve_torus_ungauged(g)
        assert a.status == b.status == SAT
        assert certificate_check(g, a.certificate) and certificate_check(g, b.certificate)


def test_gauge_agreement_random_cr0():
    rng = random.Random(32)
    for g in corpus():
        if 3 <= g.m <= 8:
            cr0 = _random_cr0(g, rng)
            assert solve_torus(g, cr0=cr0).status == solve_torus_ungauged(g, cr0=cr0).status
    for g in (complete_bipartite(3, 3), complete(5), complete_bipartite(3, 4)):
        assert solve_torus_ungauged(g).status == solve_torus(g).status == SAT


def test_coboundary_shift_preserves_branch_feasibility():
    # the gauge step in isolation: x_e += z_u + z_v never changes whether the
    # y-system is consistent, for feasible and infeasible branches alike
    rng = random.Random(36)
    outcomes = set()
    graphs = [g for g in corpus() if g.m >= 9] + [complete_bipartite(3, 4), petersen(), complete(7)]
    for g in graphs:
        for cr0 in (None, _random_cr0(g, rng)):
            ps = PairSystem(g, cr0=cr0)
            for _ in range(20):
                x = [(rng.getrandbits(1), rng.getrandbits(1)) for _ in range(g.m)]
                z = [(rng.getrandbits(1), rng.getrandbits(1)) for _ in range(g.n)]
                shifted = [(a ^ z[u][0] ^ z[v][0], b ^ z[u][1] ^ z[v][1])
                           for (a, b), (u, v) in zip(x, g.edges)]
                ok = ps.system.is_consistent(ps.rhs(x))
                assert ok == ps.system.is_consistent(ps.rhs(shifted))
                outcomes.add(ok)
    assert outcomes == {True, False}


def test_monotonicity_under_edge_deletion():
    rng = random.Random(33)
    for g in (complete(7), complete_bipartite(3, 6), complete(6)):
        assert solve_torus(g).sat
        for _ in range(3):
            drop = rng.sample(range(g.m), rng.randint(1, 4))
            assert solve_torus(g.delete_edges(drop)).sat
    # sphere: subgraphs of planar graphs stay sat; K5 minus an edge is planar
    assert solve_sphere(complete(5).delete_edges([0])).sat


def test_relabeling_invariance():
    rng = random.Random(34)
    graphs = [complete_bipartite(3, 7), complete_bipartite(3, 6), petersen(), complete(5)]
    graphs += [random_graph(rng, 7, 0.5) for _ in range(5)]
    for g in graphs:
        base_t, base_s = solve_torus(g).status, solve_sphere(g).status
        for _ in range(2):
            perm = list(range(g.n))
            rng.shuffle(perm)
            h = g.relabel(perm)
            assert solve_torus(h).status == base_t
            assert solve_sphere(h).status == base_s
            order = list(range(g.n))
            rng.shuffle(order)
            assert solve_torus(g, order=order).status == base_t


def test_certificate_check_detects_tampering():
    g = complete(5)
    s = solve_torus(g).certificate
    assert certificate_check(g, s)
    e, v = next((e, v) for e in range(g.m) for v in range(g.n) if v not in g.edges[e])
    bad = s.replace(finger_moves=s.finger_moves ^ {(e, v)})
    assert not certificate_check(g, bad)
    # consistent record but odd independent pair
    from htorus.moves import edge_vertex_move
    moved = edge_vertex_move(s, e, v)
    assert not is_iocr0(moved) and not certificate_check(g, moved)
    assert "independent" in certificate_problem(g, moved)


def test_hand_built_k4_reference():
    g = complete(4)
    s = DrawingScheme.reference(g, (0, 1, 2, 3))
    assert len(odd_independent_pairs(s)) == 1
    assert not certificate_check(g, s)
    # a finger move of 02 around 3 fixes the one interleaving pair 02 x 13
    from htorus.moves import edge_vertex_move
    fixed = edge_vertex_move(s, g.edge_id(0, 2), 3)
    assert certificate_check(g, fixed)


def test_recompute_matches_vectorised_parities_and_even_sets():
    rng = random.Random(35)
    for g in (complete(5), complete_bipartite(3, 4)):
        for k, (x, y0, ps) in enumerate(iter_torus_solutions(g)):
            if k > 30:
                break
            for y in [y0] + ps.system.sample_solutions(3, rng, ps.rhs(x)):
                s = ps.scheme(x, y)
                assert np.array_equal(recompute_parities(s), s.parity)
                assert even_vertex_set(ps, x, y) == even_vertices(s)


def test_every_enumerated_certificate_is_sound():
    for g in (complete(5), complete_bipartite(3, 3)):
        n = 0
        for x, y, ps in iter_torus_solutions(g):
            assert certificate_check(g, ps.scheme(x, y))
            n += 1
        assert n > 0


def test_min_iocr_values():
    assert min_iocr(Graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)]), "sphere").value == 0
    r = min_iocr(complete(5), "sphere")
    assert (r.value, r.exact) == (1, True)
    assert len(odd_independent_pairs(r.scheme)) == 1
    assert min_iocr(complete_bipartite(3, 3), "sphere").value == 1
    r = min_iocr(complete_bipartite(3, 7), "torus", anneal_steps=20_000)
    assert r.value >= 1
    assert len(odd_independent_pairs(r.scheme)) == r.value
    with pytest.raises(ValueError):
        min_iocr(complete(4), "klein")


def test_min_iocr_zero_iff_sat_on_corpus():
    for g in corpus():
        r = min_iocr(g, "sphere", anneal_steps=2000, restarts=1)
        assert r.exact
        assert (r.value == 0) == solve_sphere(g).sat
        assert len(odd_independent_pairs(r.scheme)) == r.value
    for g in corpus()[::7]:
        r = min_iocr(g, "torus", anneal_steps=2000, restarts=1)
        assert r.value == 0 and solve_torus(g).sat
