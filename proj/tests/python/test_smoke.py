import pytest

import weylmod


def test_bracket():
    r = weylmod.Operator("D^2").bracket(weylmod.Operator("t^3"))
    assert str(r) == "6*t^3*D + 9*t^3"
    assert r == weylmod.Operator("6*t^3*D + 9*t^3")


def test_cocycle_and_product():
    assert weylmod.Operator("t^2*D").cocycle(weylmod.Operator("t^-2*D")) == "1/2"
    assert str(weylmod.Operator("D").product(weylmod.Operator("t"))) == "t*D + t"


def test_rank_two():
    a = weylmod.Operator("t1^-1*D1^2", rank=2)
    b = weylmod.Operator("t1*D2", rank=2)
    assert str(a.bracket(b)) == "2*D1*D2 + D2"
    assert [k for k, _ in (a + b).grade()] == [[-1, 0], [1, 0]]


def test_act_and_h_sequence():
    assert weylmod.act("t*D", "x", lam="2") == "2*x^2 - 4*x + 2"
    assert weylmod.h_sequence("x", 4) == ["-1", "1/2", "-1/6", "0", "1/30"]


def test_errors():
    with pytest.raises(weylmod.ParseError):
        weylmod.Operator("D^")
    with pytest.raises(weylmod.ParseError):
        weylmod.Operator("mu*D")
    assert issubclass(weylmod.ParseError, weylmod.Error)


def test_verify_suite():
    assert "bracket" in weylmod.suite_names()
    r = weylmod.verify("bracket")
    assert r["ok"] and r["checks"] == 32
