"""Handle moves on contact surgery diagrams.

Each move takes a :class:`~artifact.surgery.SurgeryDiagram` and returns a
new one.  Components are addressed by name or by canonical index.  The moves
only build diagrams; checking them against invariants is the job of
:mod:`artifact.verify`.
"""

from __future__ import annotations

import json
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Sequence

from . import front as F
from .front import FrontDiagram, FrontError, Site
from .rewrite import PatternMismatch, apply_reidemeister, far_commute
from .surgery import Role, SurgeryDiagram, match_stabilizations, UNSOLVABLE

__all__ = [
    "CoefficientNotPlusMinusOne", "CoefficientNotMinusOne", "NotAPushoffPair",
    "NotSplit", "NotAPushoff", "NotAMeridian", "BlockNotFound", "NoShark",
    "NoZigzag", "NotThroughOnce", "NotAPlusOneUnknot", "NotMarked", "handle_slide",
    "cancel_pair", "pushoff_meridian", "first_kirby", "first_kirby_block",
    "shark_move", "insert_shark", "shark_table", "replace_one_handles",
    "unknot_move", "rolfsen_twist_view", "UNKNOT_MOVES",
]


class CoefficientNotPlusMinusOne(FrontError):
    pass


class CoefficientNotMinusOne(FrontError):
    pass


class NotAPushoffPair(FrontError):
    pass


class NotSplit(FrontError):
    pass


class NotAPushoff(FrontError):
    pass


class NotAMeridian(FrontError):
    pass


class BlockNotFound(FrontError):
    pass


class NoShark(FrontError):
    pass


class NoZigzag(F.NoZigzagAtSite):
    pass


class NotThroughOnce(FrontError):
    pass


class NotAPlusOneUnknot(FrontError):
    pass


class NotMarked(FrontError):
    pass


UNKNOT_MOVES = ("move4", "move5", "move6", "meridianIsotopy1", "meridianIsotopy2",
                "meridianIsotopy3", "oneHandleSlide")


def _ix(sd: SurgeryDiagram, ref) -> int:
    if isinstance(ref, str):
        return sd.index(ref)
    sd.front._check_comp(ref)
    return ref


def _wrap(front: FrontDiagram) -> SurgeryDiagram:
    return SurgeryDiagram(front)


def _find(front: FrontDiagram, label) -> int:
    return front.labels.index(label)


def _fresh_names(sd: SurgeryDiagram, stems) -> list[str]:
    taken = set(sd.names)
    out = []
    for stem in stems:
        nm, k = stem, 1
        while nm in taken:
            nm, k = f"{stem}{k}", k + 1
        taken.add(nm)
        out.append(nm)
    return out


def _others(front: FrontDiagram, comps) -> list[int]:
    s = set(comps)
    return [x for x in range(front.n_components) if x not in s]


# --------------------------------------------------------------------------
# second Kirby move

def _nearest_nodes(front: FrontDiagram, a: int, b: int, near: Site | None = None):
    """A node of ``a`` and a node of ``b`` close together in the word."""
    na, nb = front.nodes_of(a), front.nodes_of(b)
    if near is not None:
        if front.comp_of.get((near.gap, near.pos)) != a:
            raise F.InvalidSite(f"band site {tuple(near)} is not on the sliding component")
        na = [(near.gap, near.pos)]
    best = None
    by_gap: dict[int, list[int]] = {}
    for g, p in nb:
        by_gap.setdefault(g, []).append(p)
    gaps = sorted(by_gap)
    for g, p in na:
        for h in gaps:
            for q in by_gap[h]:
                key = (abs(h - g), abs(q - p), g, p, h, q)
                if best is None or key < best:
                    best = key
    _, _, g, p, h, q = best
    return Site(g, p), Site(h, q)


def handle_slide(sd: SurgeryDiagram, i, j, orientation: str = "add",
                 band_site: Site | None = None) -> SurgeryDiagram:
    """Slide component ``i`` over the contact (+-1) curve ``j``.

    ``i`` is band-summed with the push-off of ``j`` carrying one extra twist
    of the sign of ``j``'s coefficient; ``orientation="subtract"`` reverses
    the push-off first.  The contact coefficient of ``i`` is kept as is.
    """
    front = sd.front
    ci, cj = _ix(sd, i), _ix(sd, j)
    if ci == cj:
        raise F.SameComponent("a component cannot slide over itself")
    rj = sd.roles[cj]
    if rj.marked or abs(rj.coeff) != 1:
        raise CoefficientNotPlusMinusOne(f"{rj.name} does not carry contact +-1")
    if orientation not in ("add", "subtract"):
        raise FrontError(f"orientation must be add or subtract, not {orientation!r}")
    ri = sd.roles[ci]
    copy_tag = ("slide-copy",)
    f, copy = F.pushoff(front, cj, label=copy_tag)
    jj = _find(f, rj)
    site = next(Site(g, p) for g, p in f.nodes_of(copy)
                if f.comp_of.get((g, p + 1)) == jj)
    f = F.twist_around(f, site, 1 if rj.coeff > 0 else -1)
    copy = _find(f, copy_tag)
    if orientation == "subtract":
        f = F.reverse(f, copy)
    ci = _find(f, ri)
    si, sc = _nearest_nodes(f, ci, copy, band_site)
    f = F._band(f, ci, si, copy, sc, prefer=(ci,))
    return _wrap(f)


# --------------------------------------------------------------------------
# cancelling pairs and the push-off / meridian exchange

def _is_split(front: FrontDiagram, comps: Sequence[int]) -> bool:
    rest = _others(front, comps)
    return all(front.crossings_between(a, b) == 0 for a in comps for b in rest)


def cancel_pair(sd: SurgeryDiagram, direction: str, pair=None, *,
                base: FrontDiagram | None = None, gap: int = 0, slot: int = 0,
                coeffs=(-1, 1), names: Sequence[str] | None = None) -> SurgeryDiagram:
    """Insert or remove a knot together with its push-off, coefficients (-1, +1).

    ``insert`` places ``base`` (default: the tb = -1 unknot) and its push-off
    at ``(gap, slot)``; ``remove`` deletes the pair named by ``pair``.
    """
    front = sd.front
    if direction == "insert":
        base = FrontDiagram((F.L(1), F.R(1))) if base is None else base
        if base.kind != "closed" or base.n_components != 1:
            raise FrontError("the base of a cancelling pair is one closed knot")
        if names is None:
            names = _fresh_names(sd, ("m", "p"))
        ra, rb = Role(names[0], Fraction(coeffs[0])), Role(names[1], Fraction(coeffs[1]))
        if sorted((ra.coeff, rb.coeff)) != [-1, 1]:
            raise NotAPushoffPair("a cancelling pair carries coefficients -1 and +1")
        sub, copy = F.pushoff(base.with_attrs(labels=[ra]), 0, label=rb)
        out, _ = F.insert_closed(front, sub, gap, slot)
        return _wrap(out)
    if direction != "remove":
        raise FrontError(f"direction must be insert or remove, not {direction!r}")
    if pair is None:
        raise NotAPushoffPair("remove needs the pair of components")
    a, b = (_ix(sd, x) for x in pair)
    if a == b:
        raise NotAPushoffPair("the two members of a pair must differ")
    ra, rb = sd.roles[a], sd.roles[b]
    if ra.marked or rb.marked or sorted((ra.coeff, rb.coeff)) != [-1, 1]:
        raise NotAPushoffPair("a cancelling pair carries coefficients -1 and +1")
    ca, cb = front.classical(a), front.classical(b)
    if (ca.tb, ca.rot) != (cb.tb, cb.rot) or front.lk(a, b) != ca.tb:
        raise NotAPushoffPair(f"{ra.name} and {rb.name} are not a push-off pair")
    if not _is_split(front, (a, b)):
        raise NotSplit(f"{ra.name}, {rb.name} cross other components")
    return _wrap(F.delete_components(front, (a, b)))


def _others_lk(front, c, skip):
    return {x: front.lk(c, x) for x in range(front.n_components) if x not in skip}


def pushoff_meridian(sd: SurgeryDiagram, base, target, direction: str = "forward",
                     site: Site | None = None) -> SurgeryDiagram:
    """Exchange a push-off of a (-1) curve for a Legendrian meridian of it."""
    front = sd.front
    b, t = _ix(sd, base), _ix(sd, target)
    rb, rt = sd.roles[b], sd.roles[t]
    if rb.marked or rb.coeff != -1:
        raise CoefficientNotMinusOne(f"{rb.name} does not carry contact -1")
    if b == t:
        raise F.SameComponent("base and target coincide")
    cb, ct = front.classical(b), front.classical(t)
    if direction == "forward":
        ok = ((ct.tb, ct.rot) == (cb.tb, cb.rot) and front.lk(t, b) == cb.tb
              and _others_lk(front, t, (t, b)) == _others_lk(front, b, (t, b)))
        if not ok:
            raise NotAPushoff(f"{rt.name} is not a push-off of {rb.name}")
        f = F.delete_components(front, [t])
        bb = _find(f, rb)
        s = Site(*f.nodes_of(bb)[0]) if site is None else site
        f, _ = F.insert_meridian(f, bb, s, label=rt)
        return _wrap(f)
    if direction != "backward":
        raise FrontError(f"direction must be forward or backward, not {direction!r}")
    others = _others_lk(front, t, (t, b))
    if (ct.tb, ct.rot) != (-1, 0) or abs(front.lk(t, b)) != 1 or any(others.values()):
        raise NotAMeridian(f"{rt.name} is not a standard meridian of {rb.name}")
    f = F.delete_components(front, [t])
    f, _ = F.pushoff(f, _find(f, rb), label=rt)
    return _wrap(f)


# --------------------------------------------------------------------------
# first Kirby move

def _read_json(name: str) -> dict:
    return json.loads(resources.files("artifact").joinpath(f"data/{name}").read_text())


@lru_cache(maxsize=None)
def first_kirby_block() -> SurgeryDiagram:
    raw = _read_json("first_kirby_block.json")
    events = [F.Event(t[0], int(t[1:])) for t in raw["word"].split()]
    comps = raw["components"]
    roles = [Role(c["name"], Fraction(c["coeff"])) for c in comps]
    return SurgeryDiagram(FrontDiagram(tuple(events), orient=[c["orient"] == "+" for c in comps],
                                       labels=roles))


def _clusters(front: FrontDiagram) -> list[list[int]]:
    """Components grouped by geometric crossings."""
    n = front.n_components
    parent = list(range(n))

    def root(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e, (t, p) in enumerate(front.events):
        if t == "X":
            a, b = root(front.comp_of[(e, p)]), root(front.comp_of[(e, p + 1)])
            parent[a] = b
    groups: dict[int, list[int]] = {}
    for x in range(n):
        groups.setdefault(root(x), []).append(x)
    return sorted(groups.values())


def first_kirby(sd: SurgeryDiagram, direction: str = "add", gap: int = 0, slot: int = 0,
                names: Sequence[str] | None = None) -> SurgeryDiagram:
    """Append or remove the overtwisted-sphere block."""
    block = first_kirby_block()
    front = sd.front
    if direction == "add":
        if names is None:
            names = _fresh_names(sd, [f"fk_{r.name}" for r in block.roles])
        sub = block.front.with_attrs(labels=[Role(nm, r.coeff) for nm, r in zip(names, block.roles)])
        out, _ = F.insert_closed(front, sub, gap, slot)
        return _wrap(out)
    if direction != "remove":
        raise FrontError(f"direction must be add or remove, not {direction!r}")
    target = F.canonical(block.front.with_attrs(labels=[r.coeff for r in block.roles]))
    for group in _clusters(front):
        if len(group) != block.front.n_components:
            continue
        if any(sd.roles[x].marked for x in group):
            continue
        if names is not None and {sd.roles[x].name for x in group} != set(names):
            continue
        sub = F.restrict(front, group)
        sub = F.canonical(sub.with_attrs(labels=[r.coeff for r in sub.labels]))
        if sub.events == target.events and sub.labels == target.labels:
            return _wrap(F.delete_components(front, group))
    raise BlockNotFound("no split copy of the first-Kirby block")


# --------------------------------------------------------------------------
# sharks

@lru_cache(maxsize=None)
def shark_table() -> dict[int, int]:
    raw = _read_json("shark_table.json")
    return {int(k): v["rot_times_lk"] for k, v in raw.items() if not k.startswith("_")}


def _sharks(front: FrontDiagram, roles, c: int, need: int) -> list[int]:
    out = []
    for k, r in enumerate(roles):
        if k == c or r.marked or r.coeff != 1:
            continue
        ck = front.classical(k)
        if ck.tb != -2 or abs(ck.rot) != 1:
            continue
        l = front.lk(k, c)
        if abs(l) == 1 and ck.rot * l == need:
            out.append(k)
    return out


def insert_shark(sd: SurgeryDiagram, c, sign: int, site: Site | None = None,
                 name: str | None = None) -> SurgeryDiagram:
    """Add a shark next to the marked knot ``c``, placed for a zigzag of ``sign``.

    Next to a surgery curve the shark would change the surgered manifold,
    so only marked knots qualify.
    """
    front = sd.front
    ci = _ix(sd, c)
    if not sd.roles[ci].marked:
        raise NotMarked(f"{sd.roles[ci].name} is a surgery curve, not a marked knot")
    s = Site(*front.nodes_of(ci)[0]) if site is None else site
    role = Role(name or sd.fresh_name("shark"), Fraction(1))
    f, k = F.insert_meridian(front, ci, s, label=role)
    g, p = f.nodes_of(k)[0]
    ci = _find(f, sd.roles[ci])
    need = shark_table()[sign]
    for zs in (1, -1):
        trial = F.stabilize(f, k, zs, Site(g, p))
        kk = _find(trial, role)
        if trial.classical(kk).rot * trial.lk(kk, ci) == need:
            return _wrap(trial)
    raise NoShark("could not place a shark")  # pragma: no cover


def shark_move(sd: SurgeryDiagram, c, direction: str, site: Site, sign: int | None = None
               ) -> SurgeryDiagram:
    """Remove (or add) a zigzag of marked knot ``c`` using a shark."""
    front = sd.front
    ci = _ix(sd, c)
    table = shark_table()
    if direction == "destabilize":
        try:
            s = F.zigzag_sign(front, site.gap)
        except F.NoZigzagAtSite as exc:
            raise NoZigzag(str(exc)) from None
        if front.event_components(site.gap)[0] != ci:
            raise NoZigzag(f"zigzag at gap {site.gap} is not on {sd.roles[ci].name}")
        fresh = [k for k in _sharks(front, sd.roles, ci, table[s])
                 if "spent" not in sd.roles[k].tags]
        if not fresh:
            raise NoShark(f"no unused shark for an S{'+' if s > 0 else '-'} zigzag")
        k = fresh[0]
        roles = list(front.labels)
        roles[k] = roles[k].with_tags("spent")
        f = F.destabilize(front.with_attrs(labels=roles), site)
        return _wrap(f)
    if direction != "stabilize":
        raise FrontError(f"direction must be destabilize or stabilize, not {direction!r}")
    if sign not in (1, -1):
        raise FrontError("stabilize needs sign +1 or -1")
    cands = _sharks(front, sd.roles, ci, table[sign])
    if not cands:
        raise NoShark("no shark next to the knot")
    spent = [k for k in cands if "spent" in sd.roles[k].tags]
    roles = list(front.labels)
    if spent:
        roles[spent[0]] = roles[spent[0]].with_tags(drop=["spent"])
    f = F.stabilize(front.with_attrs(labels=roles), ci, sign, site)
    return _wrap(f)


# --------------------------------------------------------------------------
# 1-handles

def replace_one_handles(sd: SurgeryDiagram) -> SurgeryDiagram:
    """Close the strands through every 1-handle and encircle them by a (+1) unknot."""
    front = sd.front
    if front.kind != "standard":
        if front.kind == "closed":
            return sd
        raise FrontError("only standard-form diagrams carry 1-handles")
    front.components  # validates blocks and coverage
    K = front.k0
    n = len(front.events)
    prefix = [F.L(t) for t in range(1, K + 1)]
    mer: list[F.Event] = []
    extras = []
    for h in front.handles:
        a, b = h.left
        q = K + a
        g = K + len(mer)
        extras.append(((g + 1, q), 1, Role(h.name, Fraction(1))))
        mer += F.meridian_word(q, b - a + 1)
    body = [e.shift(K) for e in front.events]
    # strand at right position K + c + i must arrive at K + a + i
    target = {}
    for h in front.handles:
        for i in range(h.size):
            target[h.right[0] + i] = h.left[0] + i
    order = [target[s] for s in range(1, K + 1)]
    braid = []
    changed = True
    while changed:
        changed = False
        for s in range(K - 1):
            if order[s] > order[s + 1]:
                order[s], order[s + 1] = order[s + 1], order[s]
                braid.append(F.X(K + s + 1))
                changed = True
    suffix = [F.R(t) for t in range(K, 0, -1)]
    events = prefix + mer + body + braid + suffix
    off = len(prefix) + len(mer)

    def anchor(nd):
        g, p = nd
        if off <= g <= off + n and p > K:
            return (g - off, p - K)
        return None

    out = F.rebuild(front, events, anchor, extras=extras, kind="closed", k0=0, handles=())
    return _wrap(out)


# --------------------------------------------------------------------------
# moves around a (+1) unknot

def _plus_one_unknot(sd: SurgeryDiagram, ref) -> int:
    u = _ix(sd, ref)
    r = sd.roles[u]
    c = sd.front.classical(u)
    if r.marked or r.coeff != 1 or (c.tb, c.rot) != (-1, 0):
        raise NotAPlusOneUnknot(f"{r.name} is not a tb = -1 unknot with contact +1")
    return u


def _window_comps(front: FrontDiagram, g: int, length: int) -> set[int]:
    comps = set()
    for e in range(g, min(g + length, len(front.events))):
        t, p = front.events[e]
        gg = e + 1 if t == "L" else e
        comps.add(front.comp_of[(gg, p)])
        comps.add(front.comp_of[(gg, p + 1)])
    return comps


def unknot_move(sd: SurgeryDiagram, kind: str, unknot, *, component=None,
                site: Site | None = None, variant: str | None = None,
                direction: str = "forward", to: Site | None = None,
                orientation: str | None = None) -> SurgeryDiagram:
    """Isotopies near a (+1) unknot, and move 6 (slide over it).

    ``move4``  a cusp of another component passes a strand of the unknot (R2);
    ``move5``  a crossing of two other strands slides past the unknot (R3);
    ``meridianIsotopy1``  an event of the unknot commutes with its neighbour;
    ``meridianIsotopy2``  a cusp of the unknot passes another strand (R2);
    ``meridianIsotopy3``  a kink is added to or removed from the unknot (R1);
    ``oneHandleSlide``  a finger of the unknot is pushed across other strands;
    ``move6``  ``component`` is slid over the unknot it passes once.
    """
    front = sd.front
    u = _plus_one_unknot(sd, unknot)
    if kind not in UNKNOT_MOVES:
        raise PatternMismatch(f"unknown unknot move {kind!r}")
    if kind == "move6":
        if component is None:
            raise PatternMismatch("move6 needs the component passing through the unknot")
        c = _ix(sd, component)
        l = front.lk(c, u)
        if abs(l) != 1:
            raise NotThroughOnce(f"{sd.roles[c].name} links the unknot {l} times")
        if orientation is None:
            orientation = "subtract" if l > 0 else "add"
        return handle_slide(sd, c, u, orientation)
    if site is None:
        raise PatternMismatch(f"{kind} needs a site")
    if kind == "oneHandleSlide":
        if front.comp_of.get((site.gap, site.pos)) != u:
            raise PatternMismatch("the finger must start on the unknot")
        if to is None:
            raise PatternMismatch("oneHandleSlide needs a target site")
        return _wrap(F.route_finger(front, site, to))
    if kind == "meridianIsotopy1":
        if u not in _window_comps(front, site.gap, 2):
            raise PatternMismatch("no event of the unknot at this site")
        return _wrap(far_commute(front, site.gap))
    rkind = {"move4": "R2", "move5": "R3", "meridianIsotopy2": "R2",
             "meridianIsotopy3": "R1"}[kind]
    if variant is None:
        variant = {"R1": "kink_a", "R2": "right_up", "R3": "triple"}[rkind]
    out, _ = apply_reidemeister(front, rkind, variant, site, direction)
    # the local window in whichever word holds the crossings
    g_front, window = (out, 3) if direction == "forward" else (front, 3)
    comps = _window_comps(g_front, site.gap, window)
    uu = u if g_front is front else _find(out, sd.roles[u])
    if kind == "move4":
        # the cusp belongs to another component, the unknot is the passed strand
        cusp_owner = _cusp_owner(g_front, site.gap, window)
        if uu not in comps or cusp_owner == uu:
            raise PatternMismatch("move4 pushes another component's cusp past the unknot")
    elif kind == "meridianIsotopy2":
        if _cusp_owner(g_front, site.gap, window) != uu:
            raise PatternMismatch("meridianIsotopy2 moves a cusp of the unknot")
    elif kind == "move5":
        if uu not in comps or len(comps) < 3:
            raise PatternMismatch("move5 slides two other strands past the unknot")
    else:
        if rkind == "R1" and _cusp_owner(g_front, site.gap, window) != uu:
            raise PatternMismatch("meridianIsotopy3 acts on the unknot")
    return _wrap(out)


def _cusp_owner(front: FrontDiagram, g: int, length: int) -> int | None:
    for e in range(g, min(g + length, len(front.events))):
        t, p = front.events[e]
        if t == "R":
            return front.comp_of[(e, p)]
        if t == "L":
            return front.comp_of[(e + 1, p)]
    return None


def rolfsen_twist_view(sd: SurgeryDiagram, unknot, component,
                       reference: tuple[int, int] | None = None) -> dict:
    """Read-only report on a (+1) unknot seen as a 0-framed Rolfsen twist curve."""
    u = _plus_one_unknot(sd, unknot)
    front = sd.front
    c = _ix(sd, component)
    # a tb = -1 unknot bounds a disc whose framing is the Seifert framing
    surface = front.classical(u).tb + sd.roles[u].coeff
    inv = front.classical(c)
    report = {
        "unknot": sd.roles[u].name,
        "surface_framing_coefficient": surface,
        "component": sd.roles[c].name,
        "linking": front.lk(c, u),
        "tb": inv.tb,
        "rot": inv.rot,
    }
    if reference is not None:
        km = match_stabilizations(inv.tb - reference[0], inv.rot - reference[1])
        report["stabilizations"] = None if km is UNSOLVABLE else km
    return report
