"""Legendrian Reidemeister moves and far commutation on event words.

Variant tables live in ``data/rmoves.json``.  A variant is a pair of
patterns; ``forward`` rewrites ``lhs`` into ``rhs`` and ``backward`` the
reverse.  A site is ``Site(gap, p)``: the pattern starts at event ``gap``
and ``p`` is the position parameter the offsets refer to.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .front import (Event, FrontDiagram, FrontError, InvalidSite, Site,
                    commute_events, splice)

__all__ = ["RMoveKind", "RewriteRecord", "PatternMismatch", "Overlapping",
           "variant_table", "applicable_sites", "apply_reidemeister",
           "far_commute", "word_hash"]

RMoveKind = str  # "R1", "R2" or "R3"


class PatternMismatch(FrontError):
    pass


class Overlapping(FrontError):
    pass


@dataclass(frozen=True)
class RewriteRecord:
    kind: str
    variant: str
    direction: str
    site: Site
    before: str
    after: str

    def replay(self, d: FrontDiagram) -> FrontDiagram:
        if word_hash(d) != self.before:
            raise PatternMismatch("record does not start from this word")
        if self.kind == "far":
            return far_commute(d, self.site.gap)
        return apply_reidemeister(d, self.kind, self.variant, self.site, self.direction)[0]


def word_hash(d: FrontDiagram) -> str:
    text = f"{d.kind}:{d.k0}:{d.word_str()}"
    return hashlib.sha256(text.encode()).hexdigest()[:16]


def _tok(s: str) -> tuple[str, int]:
    return s[0], int(s[1:])


@lru_cache(maxsize=None)
def variant_table() -> dict:
    raw = json.loads(resources.files("artifact").joinpath("data/rmoves.json").read_text())
    table = {}
    for kind, variants in raw.items():
        if kind.startswith("_"):
            continue
        table[kind] = {
            name: {"lhs": tuple(_tok(t) for t in v["lhs"]),
                   "rhs": tuple(_tok(t) for t in v["rhs"]),
                   "strands": tuple(v["strands"])}
            for name, v in variants.items()}
    return table


def _instantiate(pattern, p):
    return [Event(k, p + o) for k, o in pattern]


def _fits(window, k: int) -> bool:
    """Whether ``window`` is position-valid starting from ``k`` strands."""
    for t, q in window:
        if t == "L":
            if not 1 <= q <= k + 1:
                return False
            k += 2
        else:
            if not 1 <= q <= k - 1:
                return False
            if t == "R":
                k -= 2
    return True


def _match(d: FrontDiagram, pattern, gap: int) -> int | None:
    """Parameter ``p`` if ``pattern`` (non-empty) matches at ``gap``."""
    ev = d.events
    if gap < 0 or gap + len(pattern) > len(ev):
        return None
    k0, o0 = pattern[0]
    if ev[gap].kind != k0:
        return None
    p = ev[gap].pos - o0
    if list(ev[gap:gap + len(pattern)]) != _instantiate(pattern, p):
        return None
    return p


def _sites_for(d: FrontDiagram, src, dst, strands):
    out = []
    k = d.counts
    if not src:
        for g in range(len(d.events) + 1):
            for p in range(1, k[g] + 1):
                if all(1 <= p + o <= k[g] for o in strands) and _fits(_instantiate(dst, p), k[g]):
                    out.append(Site(g, p))
        return out
    for g in range(len(d.events) - len(src) + 1):
        p = _match(d, src, g)
        if p is not None and _fits(_instantiate(dst, p), k[g]):
            out.append(Site(g, p))
    return out


def applicable_sites(d: FrontDiagram, kind: str, direction: str | None = None):
    """All ``(site, variant, direction)`` where a move of ``kind`` applies."""
    table = variant_table()
    if kind not in table:
        raise FrontError(f"unknown move kind {kind!r}")
    out = []
    dirs = ("forward", "backward") if direction is None else (direction,)
    for name, v in table[kind].items():
        for dn in dirs:
            if dn == "forward":
                sites = _sites_for(d, v["lhs"], v["rhs"], v["strands"])
            else:
                sites = _sites_for(d, v["rhs"], v["lhs"], ())
            out.extend((s, name, dn) for s in sites)
    out.sort(key=lambda t: (t[0].gap, t[0].pos, t[1], t[2]))
    return out


def apply_reidemeister(d: FrontDiagram, kind: str, variant: str, site: Site,
                       direction: str = "forward") -> tuple[FrontDiagram, RewriteRecord]:
    table = variant_table()
    try:
        v = table[kind][variant]
    except KeyError:
        raise PatternMismatch(f"unknown variant {kind}/{variant}") from None
    src, dst = (v["lhs"], v["rhs"]) if direction == "forward" else (v["rhs"], v["lhs"])
    g, p = site.gap, site.pos
    if not 0 <= g <= len(d.events):
        raise PatternMismatch(f"gap {g} outside the word")
    if src:
        if _match(d, src, g) != p:
            raise PatternMismatch(f"{kind}/{variant} {direction} does not match at {tuple(site)}")
    else:
        strands = v["strands"] if direction == "forward" else ()
        if not all(1 <= p + o <= d.counts[g] for o in strands):
            raise PatternMismatch(f"no strand for {kind}/{variant} at {tuple(site)}")
    new = _instantiate(dst, p)
    if not _fits(new, d.counts[g]):
        raise PatternMismatch(f"{kind}/{variant} leaves the strand range at {tuple(site)}")
    out = splice(d, g, g + len(src), new)
    rec = RewriteRecord(kind, variant, direction, Site(g, p), word_hash(d), word_hash(out))
    return out, rec


def far_commute(d: FrontDiagram, gap: int) -> FrontDiagram:
    """Swap events ``gap`` and ``gap+1`` when they act on disjoint places."""
    ev = d.events
    if not 0 <= gap < len(ev) - 1:
        raise InvalidSite(f"no event pair at {gap}")
    res = commute_events(ev[gap], ev[gap + 1])
    if res is None:
        raise Overlapping(f"events {gap} and {gap + 1} overlap")
    return splice(d, gap, gap + 2, res)
