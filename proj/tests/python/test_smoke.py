import json
from fractions import Fraction

import pytest

import padic_tate as pt


@pytest.fixture
def Q5():
    return pt.Field(5)


def test_element_arithmetic(Q5):
    x = pt.Element(Q5, "1 + 5^1", 10)
    y = pt.Element(Q5, "3", 10)
    assert str(x * y) == str(pt.Element(Q5, "18", 10))
    assert (x / y * y).agrees(x)
    assert x.valuation() == "0"
    assert pt.Element(Q5, "0", 7).valuation() == ">=7"
    assert pt.Element(Q5, "25", 10).lift(20).abs_prec == 20


def test_exp_log(Q5):
    assert str(pt.exp(pt.Element(Q5, "0", 10))) == "1 + O(pi^10)"
    x = pt.Element(Q5, "5^1 + 2*5^2", 30)
    assert pt.log(pt.exp(x)).agrees(x)
    with pytest.raises(pt.PadicError) as err:
        pt.exp(pt.Element(Q5, "1", 10))
    assert err.value.kind == "OutsideConvergenceDomain"
    assert not err.value.precision_error


def test_ramified_field():
    K = pt.Field(2, "eisenstein:2:1")
    assert K.e == 2 and K.spec == "eisenstein:2:1"
    x = pt.Element(K, "pi^3", 30)
    assert (pt.exp(x) - pt.Element(K, "1", 30)).valuation() == x.valuation() == "3/2"


def test_tate_curve(Q5):
    E = pt.TateCurve(pt.Element(Q5, "25", 40))
    assert E.j().valuation() == "-2"
    u = pt.Element(Q5, "2", 40)
    P = E.phi(u)
    assert Fraction(E.residual(P).valuation().lstrip(">=")) >= 30
    assert E.phi(E.q) is None
    assert E.add(P, None)[0].agrees(P[0])
    check = pt.verify_homomorphism(E.q, u, pt.Element(Q5, "3", 40), 40, 30)
    assert check["ok"] and not check["disagrees"]
    with pytest.raises(pt.PadicError) as err:
        E.phi(pt.Element(Q5, "5^40", 40))
    assert err.value.precision_error


def test_balls(Q5):
    C = [pt.Element(Q5, "0", 40), pt.Element(Q5, "1", 40)]
    center, radius = pt.ball_next(C, "1", pt.Element(Q5, "26", 40))
    assert radius == "3"
    assert not pt.same_ball(C, "1", pt.Element(Q5, "26", 40), pt.Element(Q5, "51", 40))


def test_lattice():
    S = pt.smith_normal_form([[2, 4, 4], [-6, 6, 12]])
    assert S["invariants"] == [2, 6] and S["rank"] == 2
    big = 10**30
    assert pt.rank([[big, 1], [2 * big, 2]]) == 1
    K = pt.kernel([[1, 2, 3]])
    assert all(sum(a * b for a, b in zip([1, 2, 3], col)) == 0 for col in zip(*K))
    verdict = pt.rotund_check(2, [[1], [1]], [], 1)
    assert verdict["refuted"] and verdict["witness"] is not None
    assert pt.atypical(2, 2, 2, 3)


def test_relations(Q5):
    z = [pt.Element(Q5, s, 30) for s in ("5", "25", "35")]
    report = pt.relation_search(z, 6)
    assert [5, -1, 0] in report["relations"]
    assert report["precision"] == 20


def test_harness_and_cli():
    assert "lattice" in pt.suite_names()
    records = pt.run_suite("exp", trials=5)
    assert records and all(r["ok"] for r in records)
    status, out, err = pt.cli(["tate", "j", "--format", "structured"])
    assert status == 0 and json.loads(out)["v_j"] == "-2"
    assert pt.cli(["frobnicate"])[0] == 2
