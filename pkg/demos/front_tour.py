"""Classical invariants of a few small fronts, and what the basic moves do to them."""

from artifact import front as F
from artifact.front import FrontDiagram, L, R, Site, X

unknot = FrontDiagram((L(1), R(1)))
trefoil = FrontDiagram((L(1), L(3), X(2), X(2), X(2), R(1), R(1)))

for name, d in (("unknot", unknot), ("trefoil", trefoil)):
    c = d.classical(0)
    print(f"{name:8s} {d.word_str():24s} tb={c.tb:+d} rot={c.rot:+d}")

s = F.stabilize(trefoil, 0, 1, Site(1, 1))
print("S+ trefoil", s.word_str(), tuple(s.classical(0))[:2])

p, k = F.pushoff(trefoil, 0)
print("push-off links the trefoil", p.lk(k, 1 - k), "times")

for sign in (1, -1):
    t = F.add_twist(trefoil, 0, sign, Site(1, 1))
    print(f"twist {sign:+d}: tb {trefoil.classical(0).tb} -> {t.classical(0).tb}")

long = FrontDiagram((L(2), X(1), X(1), X(1), R(2)), kind="long", k0=1)
print("long trefoil tb", long.classical(0).tb, "closes to", F.complete_long(long).classical(0).tb)
