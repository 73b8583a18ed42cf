"""d3 of the empty diagram, a cancelling pair, the first-Kirby block and a bare shark.

The first three all describe the standard plane field on S^3 (d3 = -1/2).
A shark on its own is topologically a (-1)-framed unknot, so the manifold
is still S^3, but d3 moves up by one.
"""

from artifact import front as F
from artifact import kirby as K
from artifact.front import FrontDiagram, L, R, Site
from artifact.surgery import Role, SurgeryDiagram, d3, h1

empty = SurgeryDiagram(FrontDiagram((), labels=()))
shark = F.stabilize(FrontDiagram((L(1), R(1))), 0, 1, Site(1, 1))
cases = {
    "empty": empty,
    "cancelling pair": K.cancel_pair(empty, "insert"),
    "first-Kirby block": K.first_kirby(empty, "add"),
    "bare shark": SurgeryDiagram(shark.with_attrs(labels=[Role("s", 1)])),
}
for name, sd in cases.items():
    print(f"{name:18s} H1={h1(sd)!s:3s} d3={d3(sd).value}")
