"""Legendrian fronts as event words.

A front is read left to right as a word of events acting on horizontal
strands numbered from the top (1-based):

* ``L(p)`` -- a left cusp born in the slot above strand ``p``; the two new
  strands take positions ``p`` and ``p+1``.
* ``R(p)`` -- a right cusp joining strands ``p`` and ``p+1``.
* ``X(p)`` -- strands ``p`` and ``p+1`` cross.  The strand that descends
  (``p -> p+1``) is in front.

A *node* ``(g, p)`` is the strand at position ``p`` in gap ``g``; gap ``g``
sits between events ``g-1`` and ``g``.  Components are traced through nodes
and every component carries an orientation flag (direction of travel at its
first node) plus an opaque label.  Rewrites carry flags and labels across
through node anchors, so callers never re-orient by hand.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Any, Iterable, NamedTuple, Sequence

__all__ = [
    "Event", "L", "R", "X", "Site", "Handle", "FrontDiagram", "Component",
    "ClassicalInvariants", "FrontError", "PositionOutOfRange",
    "BoundaryMismatch", "OrientationMissing", "InvalidComponent",
    "SameComponent", "OpenComponent", "InvalidSite", "NoZigzagAtSite",
    "OrientationConflict", "NotLong", "Unrealizable", "BlockedByBoundary",
    "UncoveredBoundaryStrand", "validate", "classical", "lk", "stabilize",
    "destabilize", "pushoff", "add_twist", "twist_around", "pinch", "unpinch",
    "connect_sum", "band_merge", "insert_meridian", "complete_long",
    "unknot_with_invariants", "route_finger", "insert_closed",
    "delete_components", "restrict", "reverse", "relabel", "kink",
    "move_right_cusp", "KINK_A", "KINK_B",
]


# --------------------------------------------------------------------------
# errors

class FrontError(ValueError):
    """Base class for semantic errors on fronts."""


class PositionOutOfRange(FrontError):
    def __init__(self, index: int, msg: str = ""):
        self.index = index
        super().__init__(f"event {index}: position out of range{msg}")


class BoundaryMismatch(FrontError):
    pass


class OrientationMissing(FrontError):
    pass


class InvalidComponent(FrontError):
    pass


class SameComponent(FrontError):
    pass


class OpenComponent(FrontError):
    pass


class InvalidSite(FrontError):
    pass


class NoZigzagAtSite(FrontError):
    pass


class OrientationConflict(FrontError):
    pass


class NotLong(FrontError):
    pass


class Unrealizable(FrontError):
    pass


class BlockedByBoundary(FrontError):
    pass


class UncoveredBoundaryStrand(FrontError):
    pass


# --------------------------------------------------------------------------
# events and small records

class Event(NamedTuple):
    kind: str  # "L", "R" or "X"
    pos: int

    def __str__(self) -> str:
        return f"{self.kind}{self.pos}"

    def shift(self, k: int) -> "Event":
        return Event(self.kind, self.pos + k)


def L(p: int) -> Event:
    return Event("L", p)


def R(p: int) -> Event:
    return Event("R", p)


def X(p: int) -> Event:
    return Event("X", p)


class Site(NamedTuple):
    gap: int
    pos: int
    pos2: int | None = None


@dataclass(frozen=True)
class Handle:
    name: str
    left: tuple[int, int]
    right: tuple[int, int]

    @property
    def size(self) -> int:
        return self.left[1] - self.left[0] + 1


class ClassicalInvariants(NamedTuple):
    tb: int
    rot: int
    writhe: int
    right_cusps: int
    up_cusps: int
    down_cusps: int


@dataclass(frozen=True)
class Component:
    nodes: tuple[tuple[int, int], ...]  # traversal order from the first node
    dirs: tuple[int, ...]               # +1 rightward, -1 leftward (unoriented trace)
    closed: bool

    @property
    def first(self) -> tuple[int, int]:
        return self.nodes[0]


def _fwd(ev: Event, p: int) -> int:
    """Position after ``ev`` of a strand not consumed by a cusp."""
    k, q = ev
    if k == "X":
        return q + 1 if p == q else q if p == q + 1 else p
    if k == "L":
        return p if p < q else p + 2
    return p if p < q else p - 2


def _bwd(ev: Event, p: int) -> int:
    k, q = ev
    if k == "X":
        return q + 1 if p == q else q if p == q + 1 else p
    if k == "L":
        return p if p < q else p - 2
    return p if p < q else p + 2


# --------------------------------------------------------------------------
# the diagram

KINDS = ("closed", "long", "standard")


@dataclass(frozen=True)
class FrontDiagram:
    """Immutable event word with orientation flags and component labels.

    ``orient[i]`` is True when component ``i`` runs rightward at its first
    node; ``labels[i]`` is any hashable payload (surgery roles live here).
    Both tuples are indexed by the canonical component order: components
    sorted by their first node ``(gap, pos)``.
    """

    events: tuple[Event, ...] = ()
    kind: str = "closed"
    k0: int = 0
    handles: tuple[Handle, ...] = ()
    orient: tuple[bool, ...] | None = None
    labels: tuple[Any, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "events", tuple(Event(*e) for e in self.events))
        object.__setattr__(self, "handles", tuple(self.handles))
        if self.kind not in KINDS:
            raise FrontError(f"unknown kind {self.kind!r}")
        if self.kind == "closed" and self.k0 != 0:
            raise BoundaryMismatch("closed diagrams have no boundary strands")
        if self.kind == "long" and self.k0 != 1:
            raise BoundaryMismatch("long diagrams have one boundary strand")
        n = len(self.components)
        if self.orient is None:
            object.__setattr__(self, "orient", (True,) * n)
        else:
            object.__setattr__(self, "orient", tuple(bool(o) for o in self.orient))
            if len(self.orient) != n:
                raise OrientationMissing(
                    f"{len(self.orient)} orientation flags for {n} components")
        if self.labels is None:
            object.__setattr__(self, "labels", (None,) * n)
        else:
            object.__setattr__(self, "labels", tuple(self.labels))
            if len(self.labels) != n:
                raise OrientationMissing(
                    f"{len(self.labels)} labels for {n} components")

    # ---- strand counts and handles -------------------------------------

    @functools.cached_property
    def counts(self) -> tuple[int, ...]:
        k = self.k0
        out = [k]
        for i, (t, p) in enumerate(self.events):
            if t == "L":
                if not 1 <= p <= k + 1:
                    raise PositionOutOfRange(i, f" (L{p} with {k} strands)")
                k += 2
            elif t in "RX":
                if not 1 <= p <= k - 1:
                    raise PositionOutOfRange(i, f" ({t}{p} with {k} strands)")
                if t == "R":
                    k -= 2
            else:
                raise FrontError(f"event {i}: unknown kind {t!r}")
            out.append(k)
        if k != self.k0:
            raise BoundaryMismatch(f"word ends with {k} strands, expected {self.k0}")
        return tuple(out)

    @functools.cached_property
    def _handle_maps(self) -> tuple[dict, dict]:
        r2l: dict[int, int] = {}
        l2r: dict[int, int] = {}
        if self.kind != "standard":
            if self.handles:
                raise FrontError("only standard-form diagrams carry handles")
            return r2l, l2r
        for h in self.handles:
            (a, b), (c, d) = h.left, h.right
            if b - a != d - c or b < a - 1:
                raise FrontError(f"handle {h.name}: block sizes differ")
            if b < a and not (1 <= a <= self.k0 + 1 and 1 <= c <= self.k0 + 1):
                raise PositionOutOfRange(-1, f" (handle {h.name})")
            for i in range(b - a + 1):
                if a + i in l2r or c + i in r2l:
                    raise FrontError(f"handle {h.name}: overlapping blocks")
                if not (1 <= a + i <= self.k0 and 1 <= c + i <= self.k0):
                    raise PositionOutOfRange(-1, f" (handle {h.name})")
                l2r[a + i] = c + i
                r2l[c + i] = a + i
        missing = sorted(set(range(1, self.k0 + 1)) - set(l2r))
        if missing or len(r2l) != self.k0:
            raise UncoveredBoundaryStrand(f"boundary strands {missing} not in a handle")
        return r2l, l2r

    # ---- tracing --------------------------------------------------------

    def step(self, node: tuple[int, int], right: bool):
        """Next (node, right) along the strand, or None at an open end."""
        g, p = node
        ev = self.events
        n = len(ev)
        if right:
            if g == n:
                if self.kind == "standard":
                    return (0, self._handle_maps[0][p]), True
                return None
            t, q = ev[g]
            if t == "R" and (p == q or p == q + 1):
                return (g, 2 * q + 1 - p), False
            return (g + 1, _fwd(ev[g], p)), True
        if g == 0:
            if self.kind == "standard":
                return (n, self._handle_maps[1][p]), False
            return None
        t, q = ev[g - 1]
        if t == "L" and (p == q or p == q + 1):
            return (g, 2 * q + 1 - p), True
        return (g - 1, _bwd(ev[g - 1], p)), False

    @functools.cached_property
    def components(self) -> tuple[Component, ...]:
        return self._trace[0]

    @functools.cached_property
    def comp_of(self) -> dict[tuple[int, int], int]:
        return self._trace[1]

    @functools.cached_property
    def _trace(self):
        # same walk as ``step``, inlined: this is the hot loop of every rewrite
        counts = self.counts
        r2l, l2r = self._handle_maps
        ev = self.events
        n = len(ev)
        std = self.kind == "standard"
        comp_of: dict = {}
        comps = []
        for g0, k in enumerate(counts):
            for p0 in range(1, k + 1):
                if (g0, p0) in comp_of:
                    continue
                ci = len(comps)
                nodes, dirs = [(g0, p0)], [1]
                comp_of[(g0, p0)] = ci
                g, p, right, sgn = g0, p0, True, 1
                closed = True
                while True:
                    if right:
                        if g == n:
                            if not std:
                                closed = False
                                break
                            g, p = 0, r2l[p]
                        else:
                            t, q = ev[g]
                            if t == "R" and (p == q or p == q + 1):
                                p, right, sgn = 2 * q + 1 - p, False, -1
                            else:
                                if t == "X":
                                    if p == q:
                                        p += 1
                                    elif p == q + 1:
                                        p -= 1
                                elif p >= q:
                                    p += 2 if t == "L" else -2
                                g += 1
                    else:
                        if g == 0:
                            if not std:  # pragma: no cover - walks start rightward
                                closed = False
                                break
                            g, p = n, l2r[p]
                        else:
                            t, q = ev[g - 1]
                            if t == "L" and (p == q or p == q + 1):
                                p, right, sgn = 2 * q + 1 - p, True, 1
                            else:
                                if t == "X":
                                    if p == q:
                                        p += 1
                                    elif p == q + 1:
                                        p -= 1
                                elif p >= q:
                                    p += -2 if t == "L" else 2
                                g -= 1
                    if right and g == g0 and p == p0:
                        break
                    nd = (g, p)
                    comp_of[nd] = ci
                    nodes.append(nd)
                    dirs.append(sgn)
                if not closed and g0 != 0:  # pragma: no cover - long strand starts at (0, 1)
                    raise FrontError("open strand does not start at the left end")
                comps.append(Component(tuple(nodes), tuple(dirs), closed))
        return tuple(comps), comp_of

    @functools.cached_property
    def direction(self) -> dict[tuple[int, int], int]:
        """Oriented direction (+1 right, -1 left) of every node."""
        out = {}
        for c, o in zip(self.components, self.orient):
            s = 1 if o else -1
            for nd, d in zip(c.nodes, c.dirs):
                out[nd] = s * d
        return out

    @property
    def n_components(self) -> int:
        return len(self.components)

    def component_at(self, site: Site) -> int:
        self.check_site(site)
        return self.comp_of[(site.gap, site.pos)]

    def check_site(self, site: Site) -> None:
        g, p = site.gap, site.pos
        if not 0 <= g <= len(self.events):
            raise InvalidSite(f"gap {g} outside 0..{len(self.events)}")
        if not 1 <= p <= self.counts[g]:
            raise InvalidSite(f"no strand {p} at gap {g}")
        if site.pos2 is not None and not 1 <= site.pos2 <= self.counts[g]:
            raise InvalidSite(f"no strand {site.pos2} at gap {g}")

    def _check_comp(self, c: int) -> None:
        if not 0 <= c < self.n_components:
            raise InvalidComponent(f"component {c} out of range")

    # ---- crossings and cusps -------------------------------------------

    @functools.cached_property
    def _tallies(self):
        n = self.n_components
        writhe = [0] * n
        rc = [0] * n
        up = [0] * n
        down = [0] * n
        lk2 = [[0] * n for _ in range(n)]
        comp, dirn = self.comp_of, self.direction
        for e, (t, p) in enumerate(self.events):
            if t == "X":
                a, b = (e, p), (e, p + 1)
                s = 1 if dirn[a] == dirn[b] else -1
                ca, cb = comp[a], comp[b]
                if ca == cb:
                    writhe[ca] += s
                else:
                    lk2[ca][cb] += s
                    lk2[cb][ca] += s
            elif t == "L":
                u = (e + 1, p)
                c = comp[u]
                if dirn[u] == 1:
                    up[c] += 1
                else:
                    down[c] += 1
            else:
                u = (e, p)
                c = comp[u]
                rc[c] += 1
                if dirn[u] == 1:
                    down[c] += 1
                else:
                    up[c] += 1
        return writhe, rc, up, down, lk2

    def crossing_sign(self, e: int) -> int:
        t, p = self.events[e]
        if t != "X":
            raise InvalidSite(f"event {e} is not a crossing")
        d = self.direction
        return 1 if d[(e, p)] == d[(e, p + 1)] else -1

    def cusp_direction(self, e: int) -> str:
        """``'up'`` or ``'down'`` for the cusp at event ``e``."""
        t, p = self.events[e]
        d = self.direction
        if t == "L":
            return "up" if d[(e + 1, p)] == 1 else "down"
        if t == "R":
            return "down" if d[(e, p)] == 1 else "up"
        raise InvalidSite(f"event {e} is not a cusp")

    def event_components(self, e: int) -> tuple[int, int]:
        t, p = self.events[e]
        g = e + 1 if t == "L" else e
        return self.comp_of[(g, p)], self.comp_of[(g, p + 1)]

    def classical(self, c: int) -> ClassicalInvariants:
        self._check_comp(c)
        w, rc, up, down, _ = self._tallies
        dn, u = down[c], up[c]
        if (dn - u) % 2:
            # only open strands can have an odd cusp balance
            raise OpenComponent("rotation number undefined")
        return ClassicalInvariants(w[c] - rc[c], (dn - u) // 2, w[c], rc[c], u, dn)

    def lk(self, c1: int, c2: int) -> int:
        self._check_comp(c1)
        self._check_comp(c2)
        if c1 == c2:
            raise SameComponent("linking number needs two components")
        if not (self.components[c1].closed and self.components[c2].closed):
            raise OpenComponent("linking number of an open strand")
        v = self._tallies[4][c1][c2]
        if v % 2:  # pragma: no cover - parity holds for closed components
            raise FrontError("odd crossing sum between closed components")
        return v // 2

    def lk_matrix(self) -> tuple[tuple[int | None, ...], ...]:
        """All pairwise linking numbers; ``None`` on the diagonal and for open strands."""
        lk2 = self._tallies[4]
        closed = [c.closed for c in self.components]
        n = len(closed)
        return tuple(tuple(lk2[a][b] // 2 if a != b and closed[a] and closed[b] else None
                           for b in range(n)) for a in range(n))

    def crossings_between(self, c1: int, c2: int) -> int:
        """Number of geometric crossings between two components."""
        comp = self.comp_of
        n = 0
        for e, (t, p) in enumerate(self.events):
            if t == "X" and {comp[(e, p)], comp[(e, p + 1)]} == {c1, c2}:
                n += 1
        return n

    def nodes_of(self, c: int) -> tuple[tuple[int, int], ...]:
        self._check_comp(c)
        return self.components[c].nodes

    def index_of_label(self, pred) -> list[int]:
        return [i for i, lab in enumerate(self.labels) if pred(lab)]

    def word_str(self) -> str:
        return self._word

    @functools.cached_property
    def _word(self) -> str:
        return " ".join(f"{t}{p}" for t, p in self.events)

    def with_attrs(self, orient=None, labels=None) -> "FrontDiagram":
        orient = self.orient if orient is None else tuple(bool(o) for o in orient)
        labels = self.labels if labels is None else tuple(labels)
        n = self.n_components
        if len(orient) != n or len(labels) != n:
            raise OrientationMissing(f"{len(orient)} flags and {len(labels)} labels "
                                     f"for {n} components")
        return _derive(self, orient, labels)


_SHAPE_CACHES = ("counts", "_handle_maps", "_trace", "components", "comp_of", "_word")
_ORIENT_CACHES = ("direction", "_tallies")


def _derive(d: FrontDiagram, orient: tuple, labels: tuple) -> FrontDiagram:
    """Copy of ``d`` with new flags and labels, keeping the tracing caches."""
    out = object.__new__(FrontDiagram)
    for f in ("events", "kind", "k0", "handles"):
        object.__setattr__(out, f, getattr(d, f))
    object.__setattr__(out, "orient", orient)
    object.__setattr__(out, "labels", labels)
    keep = _SHAPE_CACHES + (_ORIENT_CACHES if orient == d.orient else ())
    for name in keep:
        if name in d.__dict__:
            out.__dict__[name] = d.__dict__[name]
    return out


# --------------------------------------------------------------------------
# rebuilding with anchors

def rebuild(old: FrontDiagram, events: Sequence[Event], anchor, *,
            extras: Iterable = (), prefer: Sequence[int] = (),
            kind: str | None = None, k0: int | None = None,
            handles=None, probe: frozenset | None = None) -> FrontDiagram:
    """New diagram whose components inherit flags and labels from ``old``.

    ``anchor(node)`` maps a node of the new word to a node of ``old`` on the
    same oriented strand (or None).  ``extras`` is a list of
    ``(node, direction, label)`` used for components with no anchor.
    ``prefer`` ranks old components when a merged component inherits a label.
    ``probe``, when given, is a set of gaps containing every place where an
    anchored run can start or end; only nodes there (or the first node of a
    component avoiding them) are consulted.
    """
    kind = old.kind if kind is None else kind
    k0 = old.k0 if k0 is None else k0
    handles = old.handles if handles is None else handles
    bare = FrontDiagram(tuple(events), kind, k0, handles)
    rank = {c: i for i, c in enumerate(prefer)}
    orient, labels = [], []
    extra_by_comp: dict[int, tuple] = {}
    for nd, dirn, lab in extras:
        extra_by_comp.setdefault(bare.comp_of[nd], (nd, dirn, lab))
    odir, ocomp = old.direction, old.comp_of
    for i, comp in enumerate(bare.components):
        flag = None
        best = None
        pairs = zip(comp.nodes, comp.dirs)
        if probe is not None:
            pairs = [(nd, d) for nd, d in zip(comp.nodes, comp.dirs) if nd[0] in probe]
            if not pairs:
                pairs = [(comp.nodes[0], comp.dirs[0])]
        for nd, d in pairs:
            on = anchor(nd)
            if on is None:
                continue
            f = odir[on] == d
            if flag is None:
                flag = f
            elif flag != f:
                raise OrientationConflict(
                    f"component through node {nd} cannot be oriented coherently")
            oc = ocomp[on]
            key = (rank.get(oc, len(rank)), oc)
            if best is None or key < best:
                best = key
        if flag is None:
            if i not in extra_by_comp:
                raise FrontError(f"component at {comp.first} has no anchor")
            nd, dirn, lab = extra_by_comp[i]
            d = comp.dirs[comp.nodes.index(nd)]
            orient.append(dirn == d)
            labels.append(lab)
        else:
            orient.append(flag)
            labels.append(old.labels[best[1]])
    return _derive(bare, tuple(orient), tuple(labels))


def splice(d: FrontDiagram, i: int, j: int, new: Sequence[Event], *,
           extras: Iterable = (), prefer: Sequence[int] = ()) -> FrontDiagram:
    """Replace ``events[i:j]`` by ``new`` (same strand counts at both ends)."""
    new = [Event(*e) for e in new]
    events = d.events[:i] + tuple(new) + d.events[j:]
    m = len(new)
    shift = (j - i) - m

    def anchor(nd):
        g, p = nd
        if g <= i:
            return nd
        if g >= i + m:
            return (g + shift, p)
        return None

    return rebuild(d, events, anchor, extras=extras, prefer=prefer,
                   probe=frozenset((i, i + m)))


# --------------------------------------------------------------------------
# far commutation of adjacent events

def commute_events(e1: Event, e2: Event, strict: bool = False
                   ) -> tuple[Event, Event] | None:
    """Swap two adjacent events acting on disjoint places, or None.

    ``e1`` is applied first.  The result ``(f2, f1)`` has ``f2`` first and
    reaches the same strand configuration.  A right cusp followed by a left
    cusp in the same slot commutes with the new cusp placed above.  With
    ``strict`` set, cusp pairs that touch that way are left alone, which
    keeps normal forms stable.
    """
    (t1, p), (t2, q) = e1, e2
    if strict and {t1, t2} == {"L", "R"}:
        if t1 == "R" and q == p:
            return None
        if t1 == "L" and q in (p - 2, p + 2):
            return None
    a_strands = t1 in "XL"
    b_strands = t2 in "XR"
    if a_strands and b_strands:
        if abs(p - q) <= 1:
            return None
    elif a_strands and not b_strands:
        if q - 1 == p:
            return None
    elif b_strands and not a_strands:
        if p - 1 == q:
            return None
    # e2 pulled back through e1
    if b_strands:
        q2 = _bwd(e1, q)
    elif t1 == "L":
        q2 = q if q - 1 <= p - 1 else q - 2
    elif t1 == "R":
        q2 = q if q - 1 <= p - 1 else q + 2
    else:
        q2 = q
    f2 = Event(t2, q2)
    # e1 pushed forward through f2
    if a_strands and t1 == "X" or t1 == "R":
        p2 = _fwd(f2, p) if t2 != "L" else (p + 2 if p >= q2 else p)
    elif t2 == "L":
        p2 = p + 2 if q2 - 1 <= p - 1 else p
    elif t2 == "R":
        p2 = p - 2 if q2 + 1 <= p - 1 else p
    else:
        p2 = p
    return f2, Event(t1, p2)


def far_commute_at(d: FrontDiagram, i: int) -> FrontDiagram:
    """Swap events ``i`` and ``i+1`` if they commute (else InvalidSite)."""
    if not 0 <= i < len(d.events) - 1:
        raise InvalidSite(f"no event pair at {i}")
    res = commute_events(d.events[i], d.events[i + 1])
    if res is None:
        raise InvalidSite(f"events {i} and {i + 1} overlap")
    return splice(d, i, i + 2, res)


def _rank(e: Event) -> tuple[int, int]:
    return (e.pos, "LXR".index(e.kind))


def canonical(d: FrontDiagram) -> FrontDiagram:
    """Normal form under far commutation (greedy smallest-first extraction)."""
    rem = list(d.events)
    tok = list(range(len(rem)))
    out, out_tok = [], []
    while rem:
        best = None
        for j in range(len(rem)):
            ev = rem[j]
            ok = True
            for k in range(j - 1, -1, -1):
                r = commute_events(rem[k], ev, strict=True)
                if r is None:
                    ok = False
                    break
                ev = r[0]
            if ok and (best is None or _rank(ev) < best[0]):
                best = (_rank(ev), j)
                if best[0] == (1, 0):
                    break
        j = best[1]
        for k in range(j - 1, -1, -1):
            f2, f1 = commute_events(rem[k], rem[k + 1], strict=True)
            rem[k], rem[k + 1] = f2, f1
            tok[k], tok[k + 1] = tok[k + 1], tok[k]
        out.append(rem.pop(0))
        out_tok.append(tok.pop(0))
    return _reanchor_by_ids(d, out, out_tok)


def _strand_ids(events: Sequence[Event], k0: int, tokens: Sequence[int]):
    """Per-gap lists of strand ids; a strand keeps its id through crossings."""
    cur = [("b", s) for s in range(k0)]
    gaps = [tuple(cur)]
    for (t, p), tk in zip(events, tokens):
        cur = list(cur)
        if t == "L":
            cur[p - 1:p - 1] = [("u", tk), ("l", tk)]
        elif t == "R":
            del cur[p - 1:p + 1]
        else:
            cur[p - 1], cur[p] = cur[p], cur[p - 1]
        gaps.append(tuple(cur))
    return gaps


def _reanchor_by_ids(d: FrontDiagram, events, tokens) -> FrontDiagram:
    old = _strand_ids(d.events, d.k0, range(len(d.events)))
    new = _strand_ids(events, d.k0, tokens)
    where = {}
    for g, ids in enumerate(old):
        for p, x in enumerate(ids, 1):
            where.setdefault(x, (g, p))

    def anchor(nd):
        g, p = nd
        return where.get(new[g][p - 1])

    return rebuild(d, events, anchor)


# --------------------------------------------------------------------------
# queries

def validate(d: FrontDiagram) -> tuple[Component, ...]:
    """Trace all components (raises on an invalid word)."""
    return d.components


def classical(d: FrontDiagram, c: int) -> ClassicalInvariants:
    return d.classical(c)


def lk(d: FrontDiagram, c1: int, c2: int) -> int:
    return d.lk(c1, c2)


def reverse(d: FrontDiagram, c: int) -> FrontDiagram:
    d._check_comp(c)
    o = list(d.orient)
    o[c] = not o[c]
    return d.with_attrs(orient=o)


def relabel(d: FrontDiagram, c: int, label) -> FrontDiagram:
    d._check_comp(c)
    lab = list(d.labels)
    lab[c] = label
    return d.with_attrs(labels=lab)


def _site_on(d: FrontDiagram, c: int | None, site: Site) -> int:
    d.check_site(site)
    owner = d.comp_of[(site.gap, site.pos)]
    if c is not None and owner != c:
        raise InvalidSite(f"site {tuple(site)} is not on component {c}")
    return owner


# --------------------------------------------------------------------------
# stabilization

def stabilize(d: FrontDiagram, c: int | None, sign: int, site: Site) -> FrontDiagram:
    """Add a zigzag whose cusps are both traversed down (+) or up (-)."""
    _site_on(d, c, site)
    g, p = site.gap, site.pos
    rightward = d.direction[(g, p)] == 1
    if (sign > 0) == rightward:
        new = [L(p + 1), R(p)]
    else:
        new = [L(p), R(p + 1)]
    return splice(d, g, g, new)


def destabilize(d: FrontDiagram, site: Site) -> FrontDiagram:
    g = site.gap
    ev = d.events
    if 0 <= g < len(ev) - 1:
        (t1, a), (t2, b) = ev[g], ev[g + 1]
        if t1 == "L" and t2 == "R" and abs(a - b) == 1:
            return splice(d, g, g + 2, [])
    raise NoZigzagAtSite(f"no zigzag at gap {g}")


def zigzag_sign(d: FrontDiagram, g: int) -> int:
    """+1 or -1 for the zigzag occupying events ``g, g+1``."""
    ev = d.events
    if not (0 <= g < len(ev) - 1 and ev[g].kind == "L" and ev[g + 1].kind == "R"
            and abs(ev[g].pos - ev[g + 1].pos) == 1):
        raise NoZigzagAtSite(f"no zigzag at gap {g}")
    return 1 if d.cusp_direction(g) == "down" else -1


# --------------------------------------------------------------------------
# push-off

def pushoff(d: FrontDiagram, c: int, label=None) -> tuple[FrontDiagram, int]:
    """Double component ``c``; the copy runs directly above every strand."""
    d._check_comp(c)
    if not d.components[c].closed:
        raise OpenComponent("push-off of an open strand")
    comp = d.comp_of
    ev = d.events
    counts = d.counts
    new: list[Event] = []
    gapmap: list[int] = []
    newpos: list[dict[int, int]] = []
    for g in range(len(ev) + 1):
        gapmap.append(len(new))
        m, above = {}, 0
        for s in range(1, counts[g] + 1):
            if comp[(g, s)] == c:
                above += 1
            m[s] = s + above
        newpos.append(m)
        if g == len(ev):
            break
        t, p = ev[g]
        if t == "X":
            cu, cl = comp[(g, p)] == c, comp[(g, p + 1)] == c
            a = m[p]
            if cu and cl:
                b = a - 1
                new += [X(b + 1), X(b), X(b + 2), X(b + 1)]
            elif cu:
                new += [X(a), X(a - 1)]
            elif cl:
                new += [X(a), X(a + 1)]
            else:
                new.append(X(a))
        elif t == "L":
            q = p + sum(1 for s in range(1, p) if comp[(g, s)] == c)
            if comp[(g + 1, p)] == c:
                new += [L(q), L(q + 2), X(q + 1)]
            else:
                new.append(L(q))
        else:
            a = m[p]
            if comp[(g, p)] == c:
                b = a - 1
                new += [X(b + 1), R(b + 2), R(b)]
            else:
                new.append(R(a))
    inv = {}
    for g, m in enumerate(newpos):
        for s, ps in m.items():
            inv[(gapmap[g], ps)] = (g, s)
    g0, s0 = d.components[c].first
    copy_node = (gapmap[g0], newpos[g0][s0] - 1)
    out = rebuild(d, new, inv.get, extras=[(copy_node, d.direction[(g0, s0)], label)])
    return out, out.comp_of[copy_node]


# --------------------------------------------------------------------------
# twists, kinks and meridians

def KINK_A(p: int) -> list[Event]:
    return [L(p + 1), X(p), R(p + 1)]


def KINK_B(p: int) -> list[Event]:
    return [L(p), X(p + 1), R(p)]


def kink(d: FrontDiagram, site: Site, variant: str = "a") -> FrontDiagram:
    d.check_site(site)
    pat = KINK_A if variant == "a" else KINK_B
    return splice(d, site.gap, site.gap, pat(site.pos))


def add_twist(d: FrontDiagram, c: int | None, sign: int, site: Site) -> FrontDiagram:
    """Insert a one-crossing loop: writhe +1 (sign > 0) or -1 (sign < 0)."""
    _site_on(d, c, site)
    p = site.pos
    new = KINK_A(p) if sign > 0 else [L(p + 1), X(p + 1), R(p)]
    return splice(d, site.gap, site.gap, new)


def twist_around(d: FrontDiagram, site: Site, sign: int) -> FrontDiagram:
    """Loop the strand at ``site.pos`` once around the strand just below it.

    Changes the writhe of the looping strand by ``sign`` and its linking
    with the strand below by ``sign`` when both run the same way.
    """
    d.check_site(site)
    p = site.pos
    if p + 1 > d.counts[site.gap]:
        raise InvalidSite("no partner strand below the site")
    if sign > 0:
        new = [L(p + 2), X(p + 1), X(p), X(p + 1), R(p + 2)]
    else:
        new = [L(p), X(p + 1), X(p + 2), X(p + 2), R(p + 1)]
    return splice(d, site.gap, site.gap, new)


def meridian_word(p: int, around: int = 1) -> list[Event]:
    down = [X(p + i) for i in range(1, around + 1)]
    return [L(p)] + down + down[::-1] + [R(p)]


def insert_meridian(d: FrontDiagram, c: int | None, site: Site, label=None,
                    around: int = 1, direction: int = 1) -> tuple[FrontDiagram, int]:
    """Clasp a tb = -1 unknot around ``around`` strands starting at ``site``."""
    _site_on(d, c, site)
    g, p = site.gap, site.pos
    if p + around - 1 > d.counts[g]:
        raise InvalidSite("bundle extends past the last strand")
    node = (g + 1, p)
    out = splice(d, g, g, meridian_word(p, around), extras=[(node, direction, label)])
    return out, out.comp_of[node]


# --------------------------------------------------------------------------
# saddles and band sums

def pinch(d: FrontDiagram, site: Site, prefer: Sequence[int] = ()) -> FrontDiagram:
    """Toggle a saddle between strands ``pos`` and ``pos+1``.

    If the site sits between a right cusp and a left cusp facing each other
    in the same slot, the pair is removed; otherwise the pair
    ``R(pos) L(pos)`` is inserted.  Applying it twice at the middle of the
    saddle restores the original word.
    """
    g, p = site.gap, site.pos
    ev = d.events
    if 0 < g < len(ev) and ev[g - 1] == R(p) and ev[g] == L(p):
        return unpinch(d, g - 1, prefer=prefer)
    d.check_site(site)
    if p + 1 > d.counts[g]:
        raise InvalidSite("pinch needs two adjacent strands")
    if not prefer:
        prefer = [d.comp_of[(g, p)]]
    return splice(d, g, g, [R(p), L(p)], prefer=prefer)


def unpinch(d: FrontDiagram, i: int, prefer: Sequence[int] = ()) -> FrontDiagram:
    ev = d.events
    if not (0 <= i < len(ev) - 1 and ev[i].kind == "R" and ev[i + 1] == L(ev[i].pos)):
        raise InvalidSite(f"no facing cusp pair at event {i}")
    if not prefer:
        prefer = [d.comp_of[(i, ev[i].pos)]]
    return splice(d, i, i + 2, [], prefer=prefer)


def _r2_up(d, e):
    p = d.events[e].pos
    return splice(d, e, e + 1, [X(p - 1), X(p), R(p - 1)])


def _r2_down(d, e):
    p = d.events[e].pos
    return splice(d, e, e + 1, [X(p + 1), X(p), R(p + 1)])


def move_right_cusp(d: FrontDiagram, e: int) -> tuple[FrontDiagram, int, int]:
    """Push the right cusp at event ``e`` past the next event.

    Returns the new diagram, the new index of the cusp and the number of
    events inserted before it.  Blocking strands are cleared with a
    second-type Reidemeister move first.
    """
    ev = d.events
    if ev[e].kind != "R" or e + 1 >= len(ev):
        raise InvalidSite(f"no right cusp with a successor at {e}")
    if commute_events(ev[e], ev[e + 1]) is None:
        d = _r2_up(d, e)
        e += 2
        grown = 2
    else:
        grown = 0
    return far_commute_at(d, e), e + 1, grown


def align_right_cusp(d: FrontDiagram, e: int, q: int) -> tuple[FrontDiagram, int]:
    """Move the right cusp at ``e`` vertically until it reads ``R(q)``."""
    while d.events[e].pos > q:
        d = _r2_up(d, e)
        e += 2
    while d.events[e].pos < q:
        if d.events[e].pos + 2 > d.counts[e]:
            raise InvalidSite("cannot push the cusp below the last strand")
        d = _r2_down(d, e)
        e += 2
    return d, e


def band_merge(d: FrontDiagram, r: int, l: int, prefer_label=None) -> FrontDiagram:
    """Join the right cusp at ``r`` to the later left cusp at ``l``.

    The right cusp is routed forward by isotopies until it faces the left
    cusp; the facing pair is then removed.  The merged component keeps the
    label ``prefer_label`` when one of its parts carries it.
    """
    if not (d.events[r].kind == "R" and d.events[l].kind == "L" and r < l):
        raise InvalidSite("band needs a right cusp before a left cusp")
    while r < l - 1:
        d, r, grown = move_right_cusp(d, r)
        l += grown
    d, r2 = align_right_cusp(d, r, d.events[l].pos)
    prefer = [i for i, lab in enumerate(d.labels) if lab == prefer_label]
    return unpinch(d, r2, prefer=prefer)


def _oriented_kinks(d: FrontDiagram, site: Site) -> dict[str, tuple[str, str]]:
    """Cusp directions (left, right) produced by each kink variant at a site."""
    right = d.direction[(site.gap, site.pos)] == 1
    a = ("up", "down") if right else ("down", "up")
    b = ("down", "up") if right else ("up", "down")
    return {"a": a, "b": b}


def connect_sum(d: FrontDiagram, c1: int, site1: Site, c2: int, site2: Site) -> FrontDiagram:
    """Band two components together through a cusp-to-cusp splice."""
    if c1 == c2:
        raise SameComponent("connected sum needs two components")
    _site_on(d, c1, site1)
    _site_on(d, c2, site2)
    return _band(d, c1, site1, c2, site2, prefer=(c1, c2))


def _band(d, ca, sa, cb, sb, prefer):
    saved = d.labels
    d = d.with_attrs(labels=[("band", i) for i in range(d.n_components)])
    # the right cusp comes from the earlier site
    if sa.gap > sb.gap:
        ca, sa, cb, sb = cb, sb, ca, sa
    ra = _oriented_kinks(d, sa)["a"][1]
    want = "up" if ra == "down" else "down"
    kb = _oriented_kinks(d, sb)
    vb = "a" if kb["a"][0] == want else "b"
    d = kink(d, sb, vb)
    d = kink(d, sa, "a")
    d = band_merge(d, sa.gap + 2, sb.gap + 3, prefer_label=("band", prefer[0]))
    return d.with_attrs(labels=[saved[lab[1]] for lab in d.labels])


def route_finger(d: FrontDiagram, frm: Site, to: Site) -> FrontDiagram:
    """Push a finger of the strand at ``frm`` forward to sit just above ``to``."""
    d.check_site(frm)
    if not 0 <= to.gap <= len(d.events):
        raise InvalidSite(f"gap {to.gap} outside the word")
    if not 1 <= to.pos <= d.counts[to.gap] + 1:
        raise InvalidSite(f"no slot above strand {to.pos} at gap {to.gap}")
    if to.gap <= frm.gap:
        raise InvalidSite("fingers are routed forward")
    d = kink(d, frm, "a")
    e, target = frm.gap + 2, to.gap + 3
    while e < target - 1:
        d, e, grown = move_right_cusp(d, e)
        target += grown
    d, e = align_right_cusp(d, e, to.pos)
    return d


# --------------------------------------------------------------------------
# long knots and unknots

def complete_long(d: FrontDiagram) -> FrontDiagram:
    """Close a long knot by an arc running above the whole word."""
    if d.kind != "long":
        raise NotLong("completion needs a long diagram")
    events = [L(1)] + [e.shift(1) for e in d.events] + [R(1)]
    n = len(d.events)

    def anchor(nd):
        g, p = nd
        if 1 <= g <= n + 1 and p >= 2:
            return (g - 1, p - 1)
        return None

    return rebuild(d, events, anchor, kind="closed", k0=0, handles=())


def unknot_with_invariants(tb: int, rot: int, long: bool = False) -> FrontDiagram:
    """Standard (long) unknot with the requested classical invariants."""
    if long:
        if tb + abs(rot) > 0 or (tb + rot) % 2:
            raise Unrealizable(f"no long unknot with tb={tb}, rot={rot}")
        d = FrontDiagram((), "long", 1)
        site, n = Site(0, 1), -tb
    else:
        if tb + abs(rot) > -1 or (tb + rot) % 2 == 0:
            raise Unrealizable(f"no unknot with tb={tb}, rot={rot}")
        d = FrontDiagram((L(1), R(1)))
        site, n = Site(1, 1), -1 - tb
    sign = 1 if rot >= 0 else -1
    for _ in range(abs(rot)):
        d = stabilize(d, None, sign, site)
    for _ in range((n - abs(rot)) // 2):
        d = stabilize(d, None, 1, site)
        d = stabilize(d, None, -1, site)
    return d


# --------------------------------------------------------------------------
# inserting and deleting whole components

def insert_closed(d: FrontDiagram, sub: FrontDiagram, gap: int, slot: int = 0
                  ) -> tuple[FrontDiagram, list[int]]:
    """Place the closed diagram ``sub`` at ``gap`` below ``slot`` strands.

    Returns the new diagram and the indices of the inserted components in
    the order of ``sub``'s components.
    """
    if sub.kind != "closed":
        raise FrontError("only closed diagrams can be inserted")
    if not 0 <= gap <= len(d.events) or not 0 <= slot <= d.counts[gap]:
        raise InvalidSite(f"no slot {slot} at gap {gap}")
    new = [e.shift(slot) for e in sub.events]
    extras = []
    firsts = []
    for c, lab in zip(sub.components, sub.labels):
        h, s = c.first
        nd = (gap + h, s + slot)
        firsts.append(nd)
        extras.append((nd, sub.direction[c.first], lab))
    out = splice(d, gap, gap, new, extras=extras)
    return out, [out.comp_of[nd] for nd in firsts]


def delete_components(d: FrontDiagram, comps: Iterable[int]) -> FrontDiagram:
    """Erase components; crossings with the erased strands disappear too."""
    dead = set(comps)
    for c in dead:
        d._check_comp(c)
    comp = d.comp_of
    ev = d.events
    counts = d.counts
    new: list[Event] = []
    gap_of_new = [0]

    def above(g, p):
        return sum(1 for s in range(1, p) if comp[(g, s)] in dead)

    for e, (t, p) in enumerate(ev):
        if t == "X":
            if comp[(e, p)] in dead or comp[(e, p + 1)] in dead:
                continue
            new.append(X(p - above(e, p)))
        elif t == "L":
            if comp[(e + 1, p)] in dead:
                continue
            new.append(L(p - above(e, p)))
        else:
            if comp[(e, p)] in dead:
                continue
            new.append(R(p - above(e, p)))
        gap_of_new.append(e + 1)
    kept = []
    for g in gap_of_new:
        kept.append([s for s in range(1, counts[g] + 1) if comp[(g, s)] not in dead])

    def anchor(nd):
        g, p = nd
        return (gap_of_new[g], kept[g][p - 1])

    return rebuild(d, new, anchor)


def restrict(d: FrontDiagram, comps: Iterable[int]) -> FrontDiagram:
    keep = set(comps)
    return delete_components(d, [i for i in range(d.n_components) if i not in keep])
