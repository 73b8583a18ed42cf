"""Invariant ledgers and per-move contracts.

A ledger is everything we can compute exactly from a surgery diagram.  A
contract is a list of clauses (stored in ``data/contracts.json``) that
relate the ledger before a move to the ledger after it.  Components are
matched across a move by name.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Any, Callable

from .front import FrontError
from .surgery import (D3Report, HomologyReport, SurgeryDiagram, d3, h1,
                      topological_coefficient)

__all__ = ["UnknownMoveKind", "Ledger", "Clause", "VerificationReport", "ledger",
           "contracts", "check_move", "CLAUSES"]


class UnknownMoveKind(FrontError):
    pass


@dataclass(frozen=True)
class Ledger:
    components: dict[str, dict]
    lk: dict[tuple[str, str], int]
    topological: dict[str, Fraction]
    h1: HomologyReport
    d3: D3Report
    n_components: int
    word_length: int

    def ambient(self):
        return (self.h1, self.d3.defined, self.d3.value)

    def essentials(self):
        """Everything except the word length."""
        return (self.components, self.lk, self.topological, self.ambient(), self.n_components)

    def link(self, a: str, b: str) -> int:
        return self.lk[(a, b) if a < b else (b, a)]

    def framing(self, name: str) -> Fraction:
        """Topological framing; marked knots count with their tb."""
        c = self.components[name]
        return Fraction(c["tb"]) + (0 if c["coeff"] == "marked" else Fraction(c["coeff"]))

    def to_json(self) -> dict:
        return {
            "components": self.components,
            "lk": {f"{a},{b}": v for (a, b), v in self.lk.items()},
            "topological": {k: str(v) for k, v in self.topological.items()},
            "h1": str(self.h1),
            "d3": str(self.d3.value) if self.d3.defined else None,
            "d3_reason": self.d3.reason or None,
            "n_components": self.n_components,
            "word_length": self.word_length,
        }


def ledger(sd: SurgeryDiagram) -> Ledger:
    if sd.front.kind == "standard":
        from .kirby import replace_one_handles
        sd = replace_one_handles(sd)
    f = sd.front
    comps = {}
    closed = []
    for i, role in enumerate(sd.roles):
        inv = f.classical(i)
        comps[role.name] = {
            "coeff": role.coeff_text(),
            "tb": inv.tb, "rot": inv.rot, "closed": f.components[i].closed,
        }
        if f.components[i].closed:
            closed.append(i)
    lk = {}
    mat = f.lk_matrix()
    for a in closed:
        for b in closed:
            na, nb = sd.roles[a].name, sd.roles[b].name
            if na < nb:
                lk[(na, nb)] = mat[a][b]
    surg = sd.surgery_indices()
    topo = {sd.roles[i].name: topological_coefficient(sd, i) for i in surg}
    return Ledger(comps, lk, topo, h1(sd, surg), d3(sd, surg), f.n_components, len(f.events))


# --------------------------------------------------------------------------
# contracts

@dataclass(frozen=True)
class Clause:
    name: str
    expected: Any
    actual: Any
    passed: bool

    def to_json(self) -> dict:
        return {"name": self.name, "expected": _plain(self.expected),
                "actual": _plain(self.actual), "pass": self.passed}


@dataclass
class VerificationReport:
    step: int
    move: str
    clauses: list[Clause] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.clauses)

    def to_json(self) -> dict:
        return {"step": self.step, "move": self.move,
                "clauses": [c.to_json() for c in self.clauses]}

    def failures(self) -> list[Clause]:
        return [c for c in self.clauses if not c.passed]


def _plain(v):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, HomologyReport):
        return str(v)
    if isinstance(v, dict):
        return {str(k) if not isinstance(k, tuple) else ",".join(k): _plain(x)
                for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    return v


@lru_cache(maxsize=None)
def _contracts_raw() -> str:
    return resources.files("artifact").joinpath("data/contracts.json").read_text()


def contracts() -> dict[str, list[dict]]:
    raw = json.loads(_contracts_raw())
    return {k: v for k, v in raw.items() if not k.startswith("_")}


def _resolve(v, params):
    if isinstance(v, str) and v.startswith("-$"):
        return -params[v[2:]]
    if isinstance(v, str) and v.startswith("$"):
        return params[v[1:]]
    if isinstance(v, list):
        return [_resolve(x, params) for x in v]
    return v


def _eps(orientation: str) -> int:
    return 1 if orientation == "add" else -1


def _shared(b: Ledger, a: Ledger, skip) -> list[str]:
    return sorted(n for n in b.components if n in a.components and n not in skip)


def _c_ledger_equal(b, a, cl):
    return [("ledger", b.essentials(), a.essentials())]


def _c_ambient(b, a, cl):
    return [("h1", b.h1, a.h1), ("d3", b.d3.value if b.d3.defined else None,
                                 a.d3.value if a.d3.defined else None)]


def _c_h1_equal(b, a, cl):
    return [("h1", b.h1, a.h1)]


def _c_d3_shift(b, a, cl):
    if not b.d3.defined:
        return [("d3 defined", True, False)]
    return [("d3", b.d3.value + Fraction(cl["delta"]), a.d3.value if a.d3.defined else None)]


def _c_ambient_if_marked(b, a, cl):
    if b.components[cl["component"]]["coeff"] != "marked":
        return []
    return _c_ambient(b, a, cl)


def _c_count_delta(b, a, cl):
    return [("component count", b.n_components + cl["delta"], a.n_components)]


def _c_others(b, a, cl):
    skip = set(cl["except"])
    names = _shared(b, a, skip)
    exp = {n: b.components[n] for n in names}
    act = {n: a.components[n] for n in names}
    pairs = [(x, y) for x in names for y in names if x < y
             and (x, y) in b.lk and (x, y) in a.lk]
    return [("unchanged components", exp, act),
            ("unchanged linking", {p: b.lk[p] for p in pairs}, {p: a.lk[p] for p in pairs})]


def _c_classical_delta(b, a, cl):
    n = cl["component"]
    cb, ca = b.components[n], a.components.get(n)
    if ca is None:
        return [(f"{n} present", True, False)]
    return [(f"tb({n})", cb["tb"] + cl["tb"], ca["tb"]),
            (f"rot({n})", cb["rot"] + cl["rot"], ca["rot"])]


def _c_coeff(b, a, cl):
    n = cl["component"]
    return [(f"coefficient({n})", b.components[n]["coeff"],
             a.components.get(n, {}).get("coeff"))]


def _c_slide_framing(b, a, cl):
    i, j, e = cl["i"], cl["j"], _eps(cl["orientation"])
    exp = b.framing(i) + b.framing(j) + 2 * e * b.link(i, j)
    return [(f"framing({i})", exp, a.framing(i)),
            (f"rot({i})", b.components[i]["rot"] + e * b.components[j]["rot"],
             a.components[i]["rot"])]


def _c_slide_linking(b, a, cl):
    i, j, e = cl["i"], cl["j"], _eps(cl["orientation"])
    exp, act = {}, {}
    for x in _shared(b, a, {i}):
        if not b.components[x]["closed"]:
            continue
        lj = b.framing(j) if x == j else b.link(j, x)
        exp[x] = b.link(i, x) + e * lj
        act[x] = a.link(i, x)
    return [(f"lk({i}, .)", exp, act)]


def _c_meridian(b, a, cl):
    n, base = cl["component"], cl["base"]
    c = a.components[n]
    others = {x: a.link(n, x) for x in a.components
              if x not in (n, base) and a.components[x]["closed"]}
    return [(f"(tb, rot)({n})", (-1, 0), (c["tb"], c["rot"])),
            (f"|lk({n}, {base})|", 1, abs(a.link(n, base))),
            (f"lk({n}, others)", {x: 0 for x in others}, others)]


def _c_pushoff(b, a, cl):
    n, base = cl["component"], cl["base"]
    c, cb = a.components[n], a.components[base]
    return [(f"(tb, rot)({n})", (cb["tb"], cb["rot"]), (c["tb"], c["rot"])),
            (f"lk({n}, {base})", cb["tb"], a.link(n, base))]


CLAUSES: dict[str, Callable] = {
    "ledger_equal": _c_ledger_equal,
    "ambient": _c_ambient,
    "h1_equal": _c_h1_equal,
    "d3_shift": _c_d3_shift,
    "ambient_if_marked": _c_ambient_if_marked,
    "count_delta": _c_count_delta,
    "others_unchanged": _c_others,
    "classical_delta": _c_classical_delta,
    "coefficient_unchanged": _c_coeff,
    "slide_framing": _c_slide_framing,
    "slide_linking": _c_slide_linking,
    "meridian_shape": _c_meridian,
    "pushoff_shape": _c_pushoff,
}


def check_move(before: Ledger, after: Ledger, kind: str, params: dict | None = None,
               step: int = 0) -> VerificationReport:
    """Evaluate the contract of ``kind`` on a pair of ledgers."""
    table = contracts()
    if kind not in table:
        raise UnknownMoveKind(f"no contract for move {kind!r}")
    params = dict(params or {})
    rep = VerificationReport(step, kind)
    for raw in table[kind]:
        cl = {k: _resolve(v, params) for k, v in raw.items()}
        for name, exp, act in CLAUSES[cl["kind"]](before, after, cl):
            rep.clauses.append(Clause(f"{cl['kind']}: {name}", exp, act, exp == act))
    return rep
