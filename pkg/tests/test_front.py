import random

import pytest

from artifact import front as F
from artifact.front import FrontDiagram, Handle, L, R, Site, X
from artifact.randgen import random_diagram

from _oracles import pl_invariants

UNKNOT = (L(1), R(1))
TREFOIL = (L(1), L(3), X(2), X(2), X(2), R(1), R(1))


def test_validate_unknot_and_trefoil():
    comps = F.validate(FrontDiagram(UNKNOT))
    assert len(comps) == 1 and comps[0].nodes == ((1, 1), (1, 2))
    assert len(F.validate(FrontDiagram(TREFOIL))) == 1
    long = FrontDiagram((), kind="long", k0=1)
    assert [c.closed for c in F.validate(long)] == [False]


@pytest.mark.parametrize("events, err", [
    ((L(3),), F.PositionOutOfRange),
    ((L(1), X(2)), F.PositionOutOfRange),
    ((L(1),), F.BoundaryMismatch),
    ((R(1),), F.PositionOutOfRange),
])
def test_validate_errors(events, err):
    with pytest.raises(err):
        F.validate(FrontDiagram(events))


def test_orientation_and_label_counts():
    with pytest.raises(F.OrientationMissing):
        FrontDiagram(UNKNOT, orient=(True, False))
    with pytest.raises(F.OrientationMissing):
        FrontDiagram(UNKNOT + UNKNOT, labels=("a",))


def test_standard_form_needs_handles():
    with pytest.raises(F.UncoveredBoundaryStrand):
        F.validate(FrontDiagram((), kind="standard", k0=1))
    ok = FrontDiagram((), kind="standard", k0=1, handles=(Handle("h", (1, 1), (1, 1)),))
    assert ok.components[0].closed


def test_classical_small_cases():
    assert F.classical(FrontDiagram(UNKNOT), 0)[:2] == (-1, 0)
    t = F.classical(FrontDiagram(TREFOIL), 0)
    assert (t.tb, t.rot, t.writhe, t.right_cusps) == (1, 0, 3, 2)
    assert F.classical(FrontDiagram((), kind="long", k0=1), 0)[:2] == (0, 0)


def test_classical_matches_pl_oracle():
    rng = random.Random(11)
    for _ in range(200):
        d = random_diagram(rng, 30)
        inv, lkm = pl_invariants(d.events, d.orient)
        for c in range(d.n_components):
            got = d.classical(c)
            assert (got.tb, got.rot, got.writhe) == inv[c]
            for c2 in range(d.n_components):
                if c2 != c:
                    assert d.lk(c, c2) == lkm[c][c2]


def test_lk_errors_and_split():
    two = FrontDiagram(UNKNOT + UNKNOT)
    assert two.lk(0, 1) == 0
    with pytest.raises(F.SameComponent):
        two.lk(0, 0)
    with pytest.raises(F.InvalidComponent):
        two.lk(0, 5)


def test_reverse_negates_rot_and_lk():
    rng = random.Random(3)
    for _ in range(50):
        d = random_diagram(rng, 30)
        if not d.n_components:
            continue
        r = F.reverse(d, 0)
        assert r.classical(0).tb == d.classical(0).tb
        assert r.classical(0).rot == -d.classical(0).rot
        for c in range(1, d.n_components):
            assert r.lk(0, c) == -d.lk(0, c)


@pytest.mark.parametrize("sign", [1, -1])
@pytest.mark.parametrize("flip", [False, True])
def test_stabilize_deltas(sign, flip):
    u = FrontDiagram(UNKNOT)
    if flip:
        u = F.reverse(u, 0)
    before = u.classical(0)
    s = F.stabilize(u, 0, sign, Site(1, 1))
    after = s.classical(0)
    assert (after.tb - before.tb, after.rot - before.rot) == (-1, sign)


def test_destabilize_inverts_stabilize():
    t = FrontDiagram(TREFOIL)
    s = F.stabilize(t, 0, -1, Site(1, 1))
    g = next(g for g in range(len(s.events)) if _zig(s, g))
    back = F.destabilize(s, Site(g, 1))
    assert F.canonical(back).events == F.canonical(t).events
    assert back.classical(0)[:2] == (1, 0)


def _zig(d, g):
    try:
        F.zigzag_sign(d, g)
        return True
    except F.FrontError:
        return False


def test_destabilize_without_zigzag():
    with pytest.raises(F.NoZigzagAtSite):
        F.destabilize(FrontDiagram(UNKNOT), Site(1, 1))


@pytest.mark.parametrize("events, tb", [(UNKNOT, -1), (TREFOIL, 1)])
def test_pushoff(events, tb):
    d, c = F.pushoff(FrontDiagram(events), 0)
    assert d.n_components == 2
    assert d.classical(c)[:2] == d.classical(1 - c)[:2]
    assert d.lk(0, 1) == tb


def test_add_twist():
    t = FrontDiagram(TREFOIL)
    for sign, dtb in ((1, 0), (-1, -2)):
        a = F.add_twist(t, 0, sign, Site(1, 1))
        assert a.classical(0).tb - 1 == dtb
        assert a.classical(0).right_cusps == 3
        assert a.classical(0).writhe - 3 == sign


def test_pinch_two_split_unknots():
    d = FrontDiagram((L(1), L(3), R(3), R(1)))
    p = F.pinch(d, Site(2, 2))
    assert p.n_components == 1 and p.classical(0).tb == -3
    with pytest.raises(F.OrientationConflict):
        F.pinch(d.with_attrs(orient=(True, False)), Site(2, 2))


def test_pinch_side_by_side_unknots_and_back():
    two = FrontDiagram(UNKNOT + UNKNOT)
    one = F.pinch(two, Site(2, 1))
    assert one.n_components == 1 and one.classical(0)[:2] == (-1, 0)
    assert F.pinch(one, Site(1, 1)).events == two.events


def test_self_pinch_splits():
    t = FrontDiagram(TREFOIL)
    assert F.pinch(t, Site(1, 1)).n_components == 2


def test_connect_sum_laws():
    two = FrontDiagram(UNKNOT + UNKNOT)
    assert F.connect_sum(two, 0, Site(1, 1), 1, Site(3, 1)).classical(0).tb == -1
    ut = FrontDiagram(UNKNOT + TREFOIL)
    cs = F.connect_sum(ut, 0, Site(1, 2), 1, Site(3, 1))
    assert cs.n_components == 1 and cs.classical(0)[:2] == (1, 0)


def test_connect_sum_rot_additive():
    a = F.stabilize(FrontDiagram(UNKNOT), 0, 1, Site(1, 1))
    d = FrontDiagram(a.events + TREFOIL)
    rots = [d.classical(c).rot for c in range(2)]
    tbs = [d.classical(c).tb for c in range(2)]
    g = len(a.events)
    cs = F.connect_sum(d, 0, Site(1, 1), 1, Site(g + 1, 1))
    assert cs.classical(0)[:2] == (sum(tbs) + 1, sum(rots))


def test_insert_meridian():
    u = FrontDiagram(UNKNOT)
    m, k = F.insert_meridian(u, 0, Site(1, 1))
    assert m.classical(k)[:2] == (-1, 0)
    assert abs(m.lk(0, 1)) == 1


def test_complete_long():
    assert F.complete_long(FrontDiagram((), kind="long", k0=1)).classical(0)[:2] == (-1, 0)
    lt = FrontDiagram((L(2), X(1), X(1), X(1), R(2)), kind="long", k0=1)
    assert lt.classical(0).tb == 2
    assert F.complete_long(lt).classical(0).tb == 1
    with pytest.raises(F.NotLong):
        F.complete_long(FrontDiagram(UNKNOT))


@pytest.mark.parametrize("tb, rot", [(-1, 0), (-3, 0), (-2, 1), (-2, -1), (-4, 3)])
def test_unknot_with_invariants(tb, rot):
    d = F.unknot_with_invariants(tb, rot)
    assert d.classical(0)[:2] == (tb, rot)


@pytest.mark.parametrize("tb, rot", [(-1, -1), (0, 0), (-2, 0), (-3, 4)])
def test_unknot_unrealizable(tb, rot):
    with pytest.raises(F.Unrealizable):
        F.unknot_with_invariants(tb, rot)


def test_route_finger_preserves_invariants():
    d = FrontDiagram(UNKNOT + TREFOIL)
    out = F.route_finger(d, Site(1, 1), Site(3, 1))
    assert [out.classical(c)[:2] for c in range(2)] == [d.classical(c)[:2] for c in range(2)]
    assert len(out.events) > len(d.events)


def test_canonical_idempotent():
    rng = random.Random(5)
    for _ in range(100):
        d = random_diagram(rng, 30)
        c = F.canonical(d)
        assert F.canonical(c).events == c.events
        assert sorted(c.classical(i)[:2] for i in range(c.n_components)) == \
            sorted(d.classical(i)[:2] for i in range(d.n_components))


def test_lk_matrix_symmetric():
    rng = random.Random(8)
    for _ in range(50):
        d = random_diagram(rng, 40)
        m = d.lk_matrix()
        for a in range(d.n_components):
            assert m[a][a] is None
            for b in range(d.n_components):
                if a != b:
                    assert m[a][b] == m[b][a] == d.lk(a, b)
