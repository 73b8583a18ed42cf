from fractions import Fraction

import pytest

from artifact import kirby as K
from artifact.front import FrontDiagram
from artifact.surgery import SurgeryDiagram
from artifact.verify import (CLAUSES, UnknownMoveKind, check_move, contracts,
                             ledger)

from _util import corpus

EMPTY = SurgeryDiagram(FrontDiagram((), labels=()))


def test_every_contract_clause_is_known():
    table = contracts()
    assert "handle_slide" in table and "_doc" not in table
    for kind, clauses in table.items():
        for cl in clauses:
            assert cl["kind"] in CLAUSES, kind


def test_ledger_of_marked_diagram():
    led = ledger(corpus("marked_through_plus1"))
    assert led.components["K"]["coeff"] == "marked"
    assert led.topological == {"u": 0}
    assert led.link("u", "K") == led.link("K", "u") == -1
    assert str(led.h1) == "Z" and not led.d3.defined
    assert led.framing("K") == -1


def test_ledger_of_standard_form():
    led = ledger(corpus("one_handle_one_strand"))
    assert set(led.components) == {"h", "K"}
    assert str(led.h1) == "Z"


def test_ledger_json():
    js = ledger(corpus("rational_surgery")).to_json()
    assert js["topological"] == {"K": "1/2"}
    assert js["d3"] is None and js["d3_reason"] == "rational coefficient present"
    assert js["h1"] == "0"


def test_unknown_kind():
    led = ledger(EMPTY)
    with pytest.raises(UnknownMoveKind):
        check_move(led, led, "teleport")


def test_contract_catches_wrong_move():
    sd = corpus("two_unknots_minus1")
    out = K.handle_slide(sd, "a", "b", "add")
    rep = check_move(ledger(sd), ledger(out), "R1")
    assert not rep.passed and rep.failures()
    js = rep.to_json()
    assert js["move"] == "R1" and js["clauses"][0]["pass"] is False


def test_shark_pass_and_d3_shift_clause():
    host = corpus("trefoil_marked")
    out = K.insert_shark(host, "K", 1)
    rep = check_move(ledger(host), ledger(out), "insert_shark")
    assert rep.passed
    assert ledger(out).d3.value == Fraction(1, 2)


def test_cancel_pair_contract():
    c = K.cancel_pair(EMPTY, "insert")
    assert check_move(ledger(EMPTY), ledger(c), "cancel_pair_insert").passed
    assert check_move(ledger(c), ledger(EMPTY), "cancel_pair_remove").passed
    assert not check_move(ledger(EMPTY), ledger(c), "cancel_pair_remove").passed
