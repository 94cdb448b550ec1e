from __future__ import annotations

import json

import pytest

from htorus import experiments as ex
from htorus import fixtures
from htorus.graph import complete, complete_bipartite, cycle, path, star


def test_e1_small_corpora():
    rep = ex.run_E1_theorem1([complete(4)])
    assert rep.verdict == ex.PASS and rep.records[0]["solver"] == "sat"


@pytest.mark.slow
def test_e1_k8_adversarial():
    rep = ex.run_E1_theorem1([complete(8)])
    assert rep.verdict == ex.PASS
    assert rep.records[0]["solver"] == "unsat" and rep.records[0]["embeddable"] is False


def test_e7_small_corpora():
    rep = ex.run_E7_planar_ht([complete(5), complete_bipartite(3, 3)])
    assert rep.verdict == ex.PASS
    assert [r["solver"] for r in rep.records] == ["unsat", "unsat"]
    assert not any(r["embeddable"] for r in rep.records)
    trees = [path(6), star(5), cycle(3).delete_edges([0])]
    rep = ex.run_E7_planar_ht(trees)
    assert rep.verdict == ex.PASS and all(r["solver"] == "sat" for r in rep.records)


def test_budget_exhaustion_makes_report_incomplete(monkeypatch):
    monkeypatch.setattr(ex, "GENUS_BUDGET", 1)
    rep = ex.run_E1_theorem1([complete(7)])
    assert rep.verdict == ex.INCOMPLETE
    assert rep.records[0]["embeddable"] is None


def test_reports_are_reproducible():
    a = json.dumps(ex.run_E2_k37().to_dict(), sort_keys=True)
    b = json.dumps(ex.run_E2_k37().to_dict(), sort_keys=True)
    assert a == b
    a = ex.run_E7_planar_ht().to_dict()
    assert a == ex.run_E7_planar_ht().to_dict()
    assert a["report_version"] == 1
    assert a["environment"]["corpus_sha256"] == fixtures.HASHES["connected_le6.g6"]
    assert "seconds" not in a["records"][0]
    assert "seconds" in ex.run_E7_planar_ht([complete(4)], timings=True).records[0]


def test_e2_records():
    rep = ex.run_E2_k37()
    by = {r["graph"]: r for r in rep.records}
    assert by["K3,7"]["status"] == "unsat" and by["K3,7"]["branches_decided"] == 4 ** 12
    assert by["K3,6+K3"]["status"] == "sat" and by["K3,6+K3"]["certificate_ok"]
    assert rep.summary["fig4_genus"] == 1


def test_crossing_lemma_flags():
    assert ex.crossing_lemma_bound(complete(8)) == pytest.approx(28 ** 3 / (64 * 64))
    assert ex.crossing_lemma_flag(4, True, 5.36) == "FAIL"
    assert ex.crossing_lemma_flag(6, True, 5.36) == "PASS(exact)"
    assert ex.crossing_lemma_flag(7, False, 5.36) == "PASS(necessary)"
    assert ex.crossing_lemma_flag(4, False, 5.36) == "INCONCLUSIVE"
    assert ex.crossing_lemma_flag(0, True, 0.5) == "PASS(vacuous)"
    rep = ex.run_E6_crossing_lemma([("C4", cycle(4))])
    assert rep.verdict == ex.PASS
    assert rep.records[0]["flag"] == "PASS(vacuous)"
    assert rep.records[0]["best_found"] == 0 and rep.records[0]["bound"] == pytest.approx(4 ** 3 / (64 * 4 ** 2))


def test_e5_small_configuration():
    rep = ex.run_E5_bracers([(3, [("a", "b", 2)])], samples=5)
    assert rep.verdict == ex.PASS and rep.records[0]["certificates"] > 0


def test_fixture_hash_mismatch(monkeypatch):
    monkeypatch.setitem(fixtures.HASHES, "connected_le6.g6", "0" * 64)
    with pytest.raises(fixtures.FixtureError):
        fixtures.corpus()


def test_corpus_shape():
    graphs = fixtures.corpus()
    assert len(graphs) == 143
    assert all(g.is_connected() for g in graphs)
    assert max(g.n for g in graphs) == 6
