"""Diagram files, move scripts, rendering and the ``artifact`` command.

Diagram file::

    # comments start with '#'
    kind: closed            # or long, or standard(k0)
    word: L1 L3 X2 X2 X2 R1 R1
    handle h: left=1..1 right=1..1
    comp K: orient=+ coeff=marked
    comp u: orient=- coeff=-1 tags=spent

``comp`` lines bind to traced components in canonical order.  A script is
one move per line: a move name, optional bare words (``forward``,
``insert`` ...) and ``key=value`` arguments.  Sites are written ``gap:pos``.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable
from xml.sax.saxutils import escape

from . import front as F
from . import kirby as K
from .front import Event, FrontDiagram, FrontError, Handle, Site
from .rewrite import apply_reidemeister, far_commute
from .surgery import Role, SurgeryDiagram
from .verify import VerificationReport, check_move, ledger

__all__ = ["CliError", "SyntaxError", "SemanticError", "StepError", "VerificationFailed",
           "parse_diagram", "serialize_diagram", "parse_script", "run_script", "render",
           "main"]


class CliError(Exception):
    exit_code = 2


class SyntaxError(CliError):  # noqa: A001 - the name is part of the interface
    exit_code = 1

    def __init__(self, line: int, col: int, expected: str):
        super().__init__(f"line {line}, col {col}: expected {expected}")
        self.line, self.col, self.expected = line, col, expected


class SemanticError(CliError):
    exit_code = 2


class StepError(CliError):
    exit_code = 2

    def __init__(self, step: int, move: str, cause: Exception):
        super().__init__(f"step {step} ({move}): {cause}")
        self.step, self.move, self.cause = step, move, cause


class VerificationFailed(CliError):
    exit_code = 3

    def __init__(self, report: VerificationReport, reports: list):
        bad = "; ".join(f"{c.name}: expected {c.expected}, got {c.actual}"
                        for c in report.failures())
        super().__init__(f"step {report.step} ({report.move}) failed: {bad}")
        self.report, self.reports = report, reports


# --------------------------------------------------------------------------
# diagram files

_EVENT = re.compile(r"([LRX])([1-9][0-9]*)$")
_COEFF = re.compile(r"(marked|[+-]?[0-9]+(?:/[0-9]+)?)$")


def _lines(text: str):
    for n, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].rstrip()
        if body.strip():
            yield n, raw, body


def _col(raw: str, token: str, start: int = 0) -> int:
    i = raw.find(token, start)
    return (i if i >= 0 else len(raw.rstrip())) + 1


def parse_word(s: str, line: int = 1, raw: str | None = None, offset: int = 0) -> list[Event]:
    raw = s if raw is None else raw
    out = []
    pos = offset
    for tok in s.split():
        pos = raw.find(tok, pos)
        m = _EVENT.match(tok)
        if not m:
            raise SyntaxError(line, pos + 1, "an event L<i>, R<i> or X<i>")
        out.append(Event(m.group(1), int(m.group(2))))
        pos += len(tok)
    return out


def _kv(body: str, raw: str, line: int, start: int) -> dict[str, tuple[str, int]]:
    out = {}
    pos = start
    for tok in body[start:].split():
        pos = raw.find(tok, pos)
        if "=" not in tok:
            raise SyntaxError(line, pos + 1, "key=value")
        k, v = tok.split("=", 1)
        out[k] = (v, pos + len(k) + 2)
        pos += len(tok)
    return out


def _range(v: str, line: int, col: int) -> tuple[int, int]:
    m = re.fullmatch(r"([0-9]+)\.\.([0-9]+)", v)
    if not m:
        raise SyntaxError(line, col, "a range a..b")
    return int(m.group(1)), int(m.group(2))


def parse_diagram(text: str) -> SurgeryDiagram:
    kind, k0, word, handles, comps = None, 0, None, [], []
    for n, raw, body in _lines(text):
        s = body.lstrip()
        ind = len(body) - len(s)
        if s.startswith("kind:"):
            v = s[5:].strip()
            m = re.fullmatch(r"(closed|long|standard\(([0-9]+)\))", v)
            if not m:
                raise SyntaxError(n, _col(raw, v, ind + 5), "closed, long or standard(k0)")
            kind = "standard" if m.group(2) is not None else v
            k0 = int(m.group(2)) if m.group(2) is not None else (1 if v == "long" else 0)
        elif s.startswith("word:"):
            word = parse_word(s[5:], n, raw, ind + 5)
        elif s.startswith("handle ") or s.startswith("comp "):
            head, _, rest = s.partition(":")
            parts = head.split()
            if len(parts) != 2 or not _:
                raise SyntaxError(n, ind + 1, "'handle <name>:' or 'comp <name>:'")
            name = parts[1]
            kv = _kv(body, raw, n, ind + len(head) + 1)
            if parts[0] == "handle":
                for key in ("left", "right"):
                    if key not in kv:
                        raise SyntaxError(n, len(body) + 1, f"{key}=a..b")
                handles.append(Handle(name, _range(kv["left"][0], n, kv["left"][1]),
                                      _range(kv["right"][0], n, kv["right"][1])))
            else:
                if "orient" not in kv or kv["orient"][0] not in "+-" or len(kv["orient"][0]) != 1:
                    raise SyntaxError(n, kv.get("orient", ("", len(body) + 1))[1], "orient=+ or orient=-")
                cv, cc = kv.get("coeff", (None, len(body) + 1))
                if cv is None or not _COEFF.match(cv):
                    raise SyntaxError(n, cc, "coeff=marked, an integer or p/q")
                extra = set(kv) - {"orient", "coeff", "tags"}
                if extra:
                    k = sorted(extra)[0]
                    raise SyntaxError(n, kv[k][1] - len(k) - 1, "orient, coeff or tags")
                tags = kv["tags"][0].split(",") if "tags" in kv else []
                try:
                    coeff = None if cv == "marked" else Fraction(cv)
                    role = Role(name, coeff, frozenset(t for t in tags if t))
                except (ZeroDivisionError, FrontError) as exc:
                    raise SemanticError(f"line {n}: {exc}") from None
                comps.append((kv["orient"][0] == "+", role))
        else:
            raise SyntaxError(n, ind + 1, "kind:, word:, handle or comp")
    if kind is None:
        raise SyntaxError(1, 1, "a kind: line")
    if word is None:
        raise SyntaxError(1, 1, "a word: line")
    try:
        bare = FrontDiagram(tuple(word), kind, k0, tuple(handles))
        n = bare.n_components
        if len(comps) != n:
            raise SemanticError(f"{len(comps)} comp lines for {n} components")
        d = FrontDiagram(tuple(word), kind, k0, tuple(handles),
                         orient=[o for o, _ in comps], labels=[r for _, r in comps])
        return SurgeryDiagram(d)
    except FrontError as exc:
        raise SemanticError(str(exc)) from None


def serialize_diagram(sd: SurgeryDiagram) -> str:
    f = sd.front
    kind = f"standard({f.k0})" if f.kind == "standard" else f.kind
    out = [f"kind: {kind}", ("word: " + f.word_str()).rstrip()]
    for h in f.handles:
        out.append(f"handle {h.name}: left={h.left[0]}..{h.left[1]} "
                   f"right={h.right[0]}..{h.right[1]}")
    for o, r in zip(f.orient, sd.roles):
        line = f"comp {r.name}: orient={'+' if o else '-'} coeff={r.coeff_text()}"
        if r.tags:
            line += " tags=" + ",".join(sorted(r.tags))
        out.append(line)
    return "\n".join(out) + "\n"


# --------------------------------------------------------------------------
# scripts

@dataclass(frozen=True)
class Step:
    line: int
    move: str
    words: tuple[str, ...]
    args: dict


def parse_script(text: str) -> list[Step]:
    steps = []
    for n, raw, body in _lines(text):
        toks = body.split()
        move, words, args = toks[0], [], {}
        pos = raw.find(move) + len(move)
        for tok in toks[1:]:
            pos = raw.find(tok, pos)
            if "=" in tok:
                k, v = tok.split("=", 1)
                if not k or not v:
                    raise SyntaxError(n, pos + 1, "key=value")
                args[k] = v
            else:
                words.append(tok)
            pos += len(tok)
        if move not in _MOVES:
            raise SyntaxError(n, raw.find(move) + 1, "a move name")
        steps.append(Step(n, move, tuple(words), args))
    return steps


def _site(v: str) -> Site:
    parts = v.split(":")
    if len(parts) not in (2, 3) or not all(p.lstrip("-").isdigit() for p in parts):
        raise SemanticError(f"bad site {v!r}; write gap:pos")
    nums = [int(p) for p in parts]
    return Site(*nums)


def _sign(v: str) -> int:
    if v in ("+", "+1", "1"):
        return 1
    if v in ("-", "-1"):
        return -1
    raise SemanticError(f"bad sign {v!r}")


def _req(step: Step, key: str) -> str:
    if key not in step.args:
        raise SemanticError(f"missing argument {key}=")
    return step.args[key]


def _word_opt(step: Step, choices, default):
    for w in step.words:
        if w in choices:
            return w
    if step.words:
        raise SemanticError(f"unexpected word {step.words[0]!r}")
    return default


def _name(sd: SurgeryDiagram, ref: str) -> str:
    sd.index(ref)
    return ref


def _comp_at(sd: SurgeryDiagram, site: Site) -> str:
    c = sd.front.comp_of.get((site.gap, site.pos))
    if c is None:
        raise F.InvalidSite(f"no strand at {site.gap}:{site.pos}")
    return sd.roles[c].name


def _m_reidemeister(sd, st):
    direction = _word_opt(st, ("forward", "backward"), "forward")
    variant = st.args.get("variant") or {"R1": "kink_a", "R2": "right_up", "R3": "triple"}[st.move]
    f, _ = apply_reidemeister(sd.front, st.move, variant, _site(_req(st, "site")), direction)
    return SurgeryDiagram(f), st.move, {}


def _m_far(sd, st):
    return SurgeryDiagram(far_commute(sd.front, int(_req(st, "gap")))), "far_commute", {}


def _m_canonical(sd, st):
    return SurgeryDiagram(F.canonical(sd.front)), "canonical", {}


def _m_route(sd, st):
    f = F.route_finger(sd.front, _site(_req(st, "from")), _site(_req(st, "to")))
    return SurgeryDiagram(f), "route_finger", {}


def _m_stabilize(sd, st):
    c = _name(sd, _req(st, "c"))
    sign = _sign(_req(st, "sign"))
    f = F.stabilize(sd.front, sd.index(c), sign, _site(_req(st, "site")))
    return SurgeryDiagram(f), "stabilize", {"c": c, "sign": sign}


def _m_destabilize(sd, st):
    site = _site(_req(st, "site"))
    sign = F.zigzag_sign(sd.front, site.gap)
    c = sd.roles[sd.front.event_components(site.gap)[0]].name
    return SurgeryDiagram(F.destabilize(sd.front, site)), "destabilize", {"c": c, "sign": sign}


def _m_slide(sd, st):
    i, j = _name(sd, _req(st, "i")), _name(sd, _req(st, "j"))
    o = st.args.get("orientation", "add")
    band = _site(st.args["band"]) if "band" in st.args else None
    out = K.handle_slide(sd, i, j, o, band)
    return out, "handle_slide", {"i": i, "j": j, "orientation": o}


def _m_cancel(sd, st):
    d = _word_opt(st, ("insert", "remove"), None)
    if d == "remove":
        pair = _req(st, "pair").split(",")
        return K.cancel_pair(sd, "remove", pair), "cancel_pair_remove", {}
    if d != "insert":
        raise SemanticError("cancel_pair needs insert or remove")
    at = _site(st.args.get("at", "0:0"))
    base = None
    if "base" in st.args:
        base = FrontDiagram(tuple(parse_word(st.args["base"].replace(",", " "))))
    names = st.args["names"].split(",") if "names" in st.args else None
    coeffs = tuple(int(x) for x in st.args.get("coeffs", "-1,+1").split(","))
    out = K.cancel_pair(sd, "insert", base=base, gap=at.gap, slot=at.pos, coeffs=coeffs,
                        names=names)
    return out, "cancel_pair_insert", {}


def _m_pm(sd, st):
    d = _word_opt(st, ("forward", "backward"), "forward")
    b, t = _name(sd, _req(st, "base")), _name(sd, _req(st, "target"))
    site = _site(st.args["site"]) if "site" in st.args else None
    return K.pushoff_meridian(sd, b, t, d, site), f"pushoff_meridian_{d}", {"base": b, "target": t}


def _m_fk(sd, st):
    d = _word_opt(st, ("add", "remove"), "add")
    at = _site(st.args.get("at", "0:0"))
    names = st.args["names"].split(",") if "names" in st.args else None
    return K.first_kirby(sd, d, at.gap, at.pos, names), f"first_kirby_{d}", {}


def _m_shark(sd, st):
    d = _word_opt(st, ("destabilize", "stabilize"), None)
    if d is None:
        raise SemanticError("shark needs destabilize or stabilize")
    c = _name(sd, _req(st, "c"))
    site = _site(_req(st, "site"))
    if d == "destabilize":
        sign = F.zigzag_sign(sd.front, site.gap)
        out = K.shark_move(sd, c, d, site)
    else:
        sign = _sign(_req(st, "sign"))
        out = K.shark_move(sd, c, d, site, sign)
    return out, f"shark_{d}", {"c": c, "sign": sign}


def _m_insert_shark(sd, st):
    c = _name(sd, _req(st, "c"))
    site = _site(st.args["site"]) if "site" in st.args else None
    out = K.insert_shark(sd, c, _sign(_req(st, "sign")), site, st.args.get("name"))
    return out, "insert_shark", {}


def _m_replace(sd, st):
    return K.replace_one_handles(sd), "replace_one_handles", {}


def _m_unknot(sd, st):
    u = _name(sd, _req(st, "unknot"))
    kind = "move6" if st.move == "LightBulb" else st.move
    if kind == "move6":
        c = _name(sd, _req(st, "c"))
        out = K.unknot_move(sd, kind, u, component=c)
        return out, st.move, {"c": c}
    direction = _word_opt(st, ("forward", "backward"), "forward")
    site = _site(_req(st, "site" if kind != "oneHandleSlide" else "from"))
    to = _site(st.args["to"]) if "to" in st.args else None
    out = K.unknot_move(sd, kind, u, site=site, variant=st.args.get("variant"),
                        direction=direction, to=to)
    return out, st.move, {}


def _m_rolfsen(sd, st):
    u, c = _name(sd, _req(st, "unknot")), _name(sd, _req(st, "c"))
    K.rolfsen_twist_view(sd, u, c)
    return sd, "rolfsen_twist_view", {}


_MOVES: dict[str, Callable] = {
    "R1": _m_reidemeister, "R2": _m_reidemeister, "R3": _m_reidemeister,
    "far_commute": _m_far, "canonical": _m_canonical, "route_finger": _m_route,
    "stabilize": _m_stabilize, "destabilize": _m_destabilize,
    "handle_slide": _m_slide, "cancel_pair": _m_cancel, "pushoff_meridian": _m_pm,
    "first_kirby": _m_fk, "shark": _m_shark, "insert_shark": _m_insert_shark,
    "replace_one_handles": _m_replace, "move4": _m_unknot, "move5": _m_unknot,
    "move6": _m_unknot, "LightBulb": _m_unknot, "meridianIsotopy1": _m_unknot,
    "meridianIsotopy2": _m_unknot, "meridianIsotopy3": _m_unknot,
    "oneHandleSlide": _m_unknot, "rolfsen_twist_view": _m_rolfsen,
}


def run_script(sd: SurgeryDiagram, script: str | list[Step], verify: bool = True
               ) -> tuple[SurgeryDiagram, list[VerificationReport]]:
    """Apply a script; with ``verify`` every step is checked against its contract."""
    steps = parse_script(script) if isinstance(script, str) else script
    reports = []
    before = ledger(sd) if verify else None
    for idx, st in enumerate(steps, 1):
        try:
            out, kind, params = _MOVES[st.move](sd, st)
        except (FrontError, SemanticError, KeyError, ValueError) as exc:
            raise StepError(idx, st.move, exc) from exc
        if verify:
            after = ledger(out)
            rep = check_move(before, after, kind, params, step=idx)
            reports.append(rep)
            if not rep.passed:
                raise VerificationFailed(rep, reports)
            before = after
        sd = out
    return sd, reports


# --------------------------------------------------------------------------
# rendering

_DX, _DY = 40, 24


def _polylines(f: FrontDiagram) -> dict[int, list[tuple[int, int]]]:
    """One point list per component, in half-column units; cusps get their own point."""
    ev = f.events

    def pt(g, p):
        return (g * 2, p * 2)

    segs = {}
    for c, comp in enumerate(f.components):
        cur = []
        nodes = comp.nodes
        for k, (nd, d) in enumerate(zip(nodes, comp.dirs)):
            g, p = nd
            cur.append(pt(g, p))
            nxt = nodes[(k + 1) % len(nodes)] if comp.closed or k + 1 < len(nodes) else None
            if nxt is None:
                break
            h, q = nxt
            if d == 1 and h == g and g < len(ev) and ev[g].kind == "R":
                cur.append((2 * g + 1, 2 * ev[g].pos + 1))
            elif d == -1 and h == g and g > 0 and ev[g - 1].kind == "L":
                cur.append((2 * g - 1, 2 * ev[g - 1].pos + 1))
        if comp.closed:
            cur.append(cur[0])
        segs[c] = cur
    return segs


def _cusp_label_points(f: FrontDiagram) -> dict[int, tuple[int, int]]:
    out = {}
    for e, (t, p) in enumerate(f.events):
        if t == "R":
            c = f.comp_of[(e, p)]
            out.setdefault(c, (2 * e + 1, 2 * p + 1))
    return out


def _render_svg(sd: SurgeryDiagram) -> str:
    f = sd.front
    width = (len(f.events) + 1) * _DX
    height = (max(f.counts) + 2) * _DY
    sx = lambda x: x * _DX // 2 + _DX // 2  # noqa: E731
    sy = lambda y: y * _DY // 2  # noqa: E731
    out = ['<?xml version="1.0" encoding="UTF-8"?>',
           f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" '
           f'height="{height}" viewBox="0 0 {width} {height}">',
           '<rect width="100%" height="100%" fill="white"/>']
    for c, pts in _polylines(f).items():
        name = escape(sd.roles[c].name, {'"': "&quot;"})
        coords = " ".join(f"{sx(x)},{sy(y)}" for x, y in pts)
        out.append(f'<polyline class="comp" data-name="{name}" points="{coords}" '
                   'fill="none" stroke="black" stroke-width="2"/>')
    # the ascending strand of each crossing is broken under the descending one
    for e, (t, p) in enumerate(f.events):
        if t == "X":
            cx, cy = sx(2 * e + 1), sy(2 * p + 1)
            out.append(f'<circle cx="{cx}" cy="{cy}" r="4" fill="white"/>')
            out.append(f'<line x1="{sx(2 * e)}" y1="{sy(2 * p)}" x2="{sx(2 * e + 2)}" '
                       f'y2="{sy(2 * p + 2)}" stroke="black" stroke-width="2"/>')
    for c, (x, y) in sorted(_cusp_label_points(f).items()):
        r = sd.roles[c]
        out.append(f'<text x="{sx(x) + 4}" y="{sy(y) - 4}" font-size="12" '
                   f'font-family="monospace">{escape(r.name)} {escape(r.coeff_text())}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _render_ascii(sd: SurgeryDiagram) -> str:
    f = sd.front
    ev = f.events
    n = len(ev)
    rows = 2 * max(f.counts, default=0) + 1
    cols = 4 * n + 1
    grid = [[" "] * cols for _ in range(max(rows, 1))]

    def put(r, c, ch):
        if 0 <= r < len(grid) and 0 <= c < cols:
            grid[r][c] = ch

    def row(p):
        return 2 * (p - 1)

    for g, k in enumerate(f.counts):
        for p in range(1, k + 1):
            put(row(p), 4 * g, "-")
    for e, (t, p) in enumerate(ev):
        c0 = 4 * e
        for q in range(1, f.counts[e] + 1):
            if t == "X" and q in (p, p + 1):
                continue
            if t == "R" and q in (p, p + 1):
                continue
            q2 = F._fwd(Event(t, p), q)
            r0, r1 = row(q), row(q2)
            step = (r1 - r0) // 4
            for i in range(1, 4):
                if step == 0:
                    put(r0, c0 + i, "-")
                else:
                    put(r0 + step * i, c0 + i, "\\" if step > 0 else "/")
        r = row(p)
        if t == "X":
            put(r, c0 + 1, "-")
            put(r + 1, c0 + 2, "\\")
            put(r + 2, c0 + 3, "-")
            put(r + 2, c0 + 1, "-")
            put(r, c0 + 3, "-")
        elif t == "L":
            put(r + 1, c0 + 2, "<")
            put(r, c0 + 3, "/")
            put(r + 2, c0 + 3, "\\")
        else:
            put(r, c0 + 1, "\\")
            put(r + 1, c0 + 2, ">")
            put(r + 2, c0 + 1, "/")
    lines = ["".join(rw).rstrip() for rw in grid]
    legend = []
    for c, (x, y) in sorted(_cusp_label_points(f).items()):
        r = sd.roles[c]
        legend.append(f"{r.name} {r.coeff_text()} (first right cusp at event {(x - 1) // 2})")
    for c, r in enumerate(sd.roles):
        if c not in _cusp_label_points(f):
            legend.append(f"{r.name} {r.coeff_text()} (no right cusp)")
    return "\n".join(lines + [""] + legend) + "\n"


def render(sd: SurgeryDiagram, format: str = "ascii") -> str:
    if format == "svg":
        return _render_svg(sd)
    if format == "ascii":
        return _render_ascii(sd)
    raise SemanticError(f"unknown format {format!r}")


# --------------------------------------------------------------------------
# command line

def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_check(a):
    sd = parse_diagram(_read(a.file))
    print(f"ok: {sd.front.kind}, {sd.front.n_components} components, "
          f"{len(sd.front.events)} events")


def _cmd_invariants(a):
    sd = parse_diagram(_read(a.file))
    print(json.dumps(ledger(sd).to_json(), indent=2, sort_keys=True))


def _cmd_apply(a):
    sd = parse_diagram(_read(a.file))
    steps = parse_script(_read(a.script))
    try:
        out, reports = run_script(sd, steps, verify=a.verify)
    except VerificationFailed as exc:
        if a.report:
            _emit(json.dumps([r.to_json() for r in exc.reports], indent=2), a.report)
        raise
    if a.report:
        _emit(json.dumps([r.to_json() for r in reports], indent=2) + "\n", a.report)
    for r in reports:
        print(f"step {r.step} {r.move}: pass ({len(r.clauses)} clauses)", file=sys.stderr)
    _emit(serialize_diagram(out), a.out)


def _cmd_render(a):
    _emit(render(parse_diagram(_read(a.file)), a.format), a.out)


def _cmd_gen(a):
    try:
        f = F.unknot_with_invariants(a.tb, a.rot, a.long)
    except FrontError as exc:
        raise SemanticError(str(exc)) from None
    role = Role(a.name, None if a.coeff == "marked" else Fraction(a.coeff))
    _emit(serialize_diagram(SurgeryDiagram(f.with_attrs(labels=[role]))), a.out)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="artifact", description="Legendrian surgery diagram tools")
    sub = p.add_subparsers(dest="command", required=True)
    c = sub.add_parser("check", help="validate a diagram file")
    c.add_argument("file")
    c.set_defaults(run=_cmd_check)
    c = sub.add_parser("invariants", help="print the invariant ledger as JSON")
    c.add_argument("file")
    c.set_defaults(run=_cmd_invariants)
    c = sub.add_parser("apply", help="run a move script")
    c.add_argument("file")
    c.add_argument("script")
    c.add_argument("--verify", action="store_true")
    c.add_argument("--out")
    c.add_argument("--report", help="write verification reports as JSON")
    c.set_defaults(run=_cmd_apply)
    c = sub.add_parser("render", help="draw the front")
    c.add_argument("file")
    c.add_argument("--format", choices=["ascii", "svg"], default="ascii")
    c.add_argument("--out")
    c.set_defaults(run=_cmd_render)
    c = sub.add_parser("gen", help="generate a standard diagram")
    c.add_argument("what", choices=["unknot"])
    c.add_argument("--tb", type=int, required=True)
    c.add_argument("--rot", type=int, required=True)
    c.add_argument("--long", action="store_true")
    c.add_argument("--name", default="K")
    c.add_argument("--coeff", default="marked")
    c.add_argument("--out")
    c.set_defaults(run=_cmd_gen)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.run(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except FrontError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0
