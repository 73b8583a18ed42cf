import random

import pytest

from artifact import front as F
from artifact.front import FrontDiagram, L, R, Site, X
from artifact.randgen import random_diagram
from artifact.rewrite import (Overlapping, PatternMismatch, applicable_sites,
                              apply_reidemeister, far_commute, variant_table,
                              word_hash)

TREFOIL = (L(1), L(3), X(2), X(2), X(2), R(1), R(1))


def _ledger(d):
    m = d.lk_matrix()
    n = d.n_components
    return ({d.labels[c]: d.classical(c)[:2] for c in range(n)},
            {(d.labels[a], d.labels[b]): m[a][b] for a in range(n) for b in range(n) if a != b})


def test_variant_table_shape():
    t = variant_table()
    assert set(t) == {"R1", "R2", "R3"}
    assert set(t["R1"]) == {"kink_a", "kink_b"}
    assert len(t["R2"]) == 4 and set(t["R3"]) == {"triple"}


@pytest.mark.parametrize("variant", ["kink_a", "kink_b"])
def test_r1_on_unknot(variant):
    u = FrontDiagram((L(1), R(1)))
    out, rec = apply_reidemeister(u, "R1", variant, Site(1, 1))
    assert len(out.events) == 5
    assert out.classical(0)[:2] == (-1, 0)
    back, _ = apply_reidemeister(out, "R1", variant, rec.site, "backward")
    assert back.events == u.events


def test_r3_absent_on_trefoil():
    assert applicable_sites(FrontDiagram(TREFOIL), "R3") == []


def test_triple_point_in_move5_fixture():
    d = FrontDiagram((L(1), X(1), L(3), X(2), L(3), X(2), X(4), X(3), X(4), X(3),
                      R(5), R(2), R(1)))
    assert (Site(7, 3), "triple", "forward") in applicable_sites(d, "R3")
    out, _ = apply_reidemeister(d, "R3", "triple", Site(7, 3))
    assert (Site(6, 3), "triple", "backward") in applicable_sites(d, "R3")
    assert any(s == Site(7, 3) and dn == "backward" for s, _, dn in applicable_sites(out, "R3"))


def test_mismatch_and_overlap_errors():
    u = FrontDiagram((L(1), R(1)))
    with pytest.raises(PatternMismatch):
        apply_reidemeister(u, "R2", "right_up", Site(0, 1), "backward")
    with pytest.raises(PatternMismatch):
        apply_reidemeister(u, "R2", "nope", Site(0, 1))
    with pytest.raises(Overlapping):
        far_commute(u, 0)
    with pytest.raises(F.InvalidSite):
        far_commute(u, 5)


def test_far_commute_disjoint():
    d = FrontDiagram((L(1), L(3), R(1), R(1)))
    out = far_commute(d, 1)
    assert out.n_components == 2
    labelled = d.with_attrs(labels=("a", "b"))
    assert _ledger(far_commute(labelled, 1)) == _ledger(labelled)


def test_forward_backward_roundtrip_random():
    rng = random.Random(2)
    for _ in range(60):
        d = random_diagram(rng, 30)
        for kind in ("R1", "R2", "R3"):
            sites = applicable_sites(d, kind)
            for s, v, dn in rng.sample(sites, min(4, len(sites))):
                out, rec = apply_reidemeister(d, kind, v, s, dn)
                undo = "backward" if dn == "forward" else "forward"
                back, _ = apply_reidemeister(out, kind, v, s, undo)
                assert back.events == d.events
                assert rec.replay(d).events == out.events


def test_record_replay_guards_word():
    u = FrontDiagram((L(1), R(1)))
    _, rec = apply_reidemeister(u, "R1", "kink_a", Site(1, 1))
    with pytest.raises(PatternMismatch):
        rec.replay(FrontDiagram(TREFOIL))
    assert rec.before == word_hash(u)


def test_labels_follow_components():
    rng = random.Random(4)
    for _ in range(40):
        d = random_diagram(rng, 30)
        d = d.with_attrs(labels=range(d.n_components))
        base = _ledger(d)
        for kind in ("R2", "R3"):
            for s, v, dn in applicable_sites(d, kind)[:6]:
                assert _ledger(apply_reidemeister(d, kind, v, s, dn)[0]) == base


def test_far_commute_reindexes():
    d = FrontDiagram((L(1), L(1), L(5), R(1), R(3), R(1)))
    out = far_commute(d, 2)
    assert out.word_str() == "L1 L1 R1 L3 R3 R1"
    assert out.n_components == d.n_components
    assert far_commute(out, 2).events == d.events
    with pytest.raises(Overlapping):
        far_commute(FrontDiagram(TREFOIL), 2)
