import cmath
import math
from fractions import Fraction

import oscint


def test_cubic_pole_table():
    table = oscint.pole_table("x^3", prefactor=False)
    locations = {p["location"] for p in table["poles"]}
    assert "-1/3" in locations
    assert all(p["order"] == 1 for p in table["poles"])
    lead = next(p for p in table["poles"] if p["location"] == "-1/3")
    re, im = lead["principal_parts"][0]
    # phi(t) = t^(1/3)/3 and phi(-t) = -t^(1/3)/3 for a cubic, so the bracket
    # residue at -1/3 is (1 + exp(i pi / 3)) / 3
    want = (1 + cmath.exp(1j * math.pi / 3)) / 3
    assert abs(complex(re, im) - want) < 1e-8


def test_fiber_csv_roundtrip():
    text = oscint.fiber_csv("x^2", exact=True)
    assert text.splitlines()[1].startswith("side,s,")
    assert "x^2" in text.splitlines()[0]


def test_oscillatory_prediction_matches_numeric():
    terms = oscint.oscillatory_terms("x^2")
    assert terms[0][0] == "1/2"
    tau = 400.0
    pred = sum(c * math.log(tau) ** m / tau ** float(Fraction(r)) for r, m, c in terms)
    num = oscint.oscillatory_value("x^2", tau=tau)
    assert abs(num - pred) < 0.02 * abs(pred)


def test_cycle_prediction():
    assert oscint.predict_pole_cosets(k=2, eps=1) == {"0": 0, "1/2": 1}
    assert oscint.predict_pole_cosets(k=2, eps=1, region="+:1") == {"0": 1, "1/2": 1}
    points = oscint.cycle_points(k=3, eps=1)
    assert len(points) == 3 and points[1] == "0"


def test_spectrum():
    assert set(oscint.spectrum_cosets("x^2-y^3")) >= {"1/6", "5/6"}


def test_exact_algebra_criterion():
    results = oscint.run_acceptance("exact-algebra")
    assert len(results) == 1
    assert results[0]["pass"], results[0]["details"]
