"""Random valid fronts for property tests and demos."""

from __future__ import annotations

import random

from .front import Event, FrontDiagram

__all__ = ["random_word", "random_diagram"]


def random_word(rng: random.Random, max_len: int = 60, k0: int = 0) -> list[Event]:
    """A position-valid word of at most ``max_len`` events ending at ``k0`` strands."""
    n = rng.randint(0, max_len)
    k, out = k0, []
    while True:
        left = max_len - len(out)
        need = (k - k0) // 2  # right cusps still owed
        if left <= need or (len(out) >= n and k == k0):
            break
        opts = []
        if left >= need + 2:  # room for the L and the R it owes
            opts.append("L")
        if k >= 2:
            opts += ["X", "X", "X"]
            if k - 2 >= k0:
                opts += ["R", "R"]
        if left - 1 <= need and k - 2 >= k0 and k >= 2:
            opts = ["R"]
        if len(out) >= n and k > k0:
            opts = [o for o in opts if o != "L"] or ["R"]
        if not opts:
            break
        t = rng.choice(opts)
        if t == "L":
            out.append(Event("L", rng.randint(1, k + 1)))
            k += 2
        else:
            out.append(Event(t, rng.randint(1, k - 1)))
            if t == "R":
                k -= 2
    while k > k0:
        out.append(Event("R", rng.randint(1, k - 1)))
        k -= 2
    return out


def random_diagram(rng: random.Random, max_len: int = 60) -> FrontDiagram:
    """Random closed diagram with random orientation flags."""
    d = FrontDiagram(tuple(random_word(rng, max_len)))
    return d.with_attrs(orient=[rng.random() < 0.5 for _ in range(d.n_components)])
