import cmath
import math

import pytest

import tfse


@pytest.fixture(scope="module")
def system():
    return tfse.EdgeSystem()


def test_mittag_leffler_reduces_to_exp():
    for z in (1.0, -5 + 3j, 2j):
        assert abs(tfse.ml_eval(1.0, 1.0, z) - cmath.exp(z)) <= 1e-12 * abs(cmath.exp(z))
    assert tfse.ml_eval(0.5, 1.0, -1.0).real == pytest.approx(0.42758357615580, rel=1e-12)
    assert tfse.ml_deriv(0.5, 0.0).real == pytest.approx(2 / math.sqrt(math.pi), rel=1e-14)
    assert tfse.gamma_reciprocal(-3.0) == 0.0
    assert tfse.ml_log_abs(0.3, 1.0, 25.0) > 700


def test_ground_state():
    g = tfse.ground_state(0.0)
    assert g["lambda1"] == pytest.approx(3.0, abs=1e-3)
    assert g["phi1"][0] == 0.0 and g["phi1"][-1] == 0.0
    assert g["h"] * sum(v * v for v in g["phi1"]) == pytest.approx(1.0, abs=1e-10)
    assert 1.0 < tfse.ground_state(8.0)["lambda1"] < 1.001


def test_currents(system):
    js = tfse.current_schrodinger(system)
    assert js < 0
    assert tfse.current_direct(1.0, 1.0, system, 10.0) == pytest.approx(js, rel=1e-3)
    assert tfse.current_direct(0.5, 0.5, system, 1e3) == pytest.approx(tfse.naber_constant(0.5, system), rel=2e-2)
    sign, log_abs = tfse.current_log_abs(0.5, 0.25, system, 1e4)
    assert sign in (-1, 1) and log_abs > 700
    with pytest.raises(tfse.OverflowGuard):
        tfse.current_direct(0.5, 0.25, system, 1e4)
    assert tfse.classify_regime(0.5, 0.25) == ("ExponentialGrowth", 0.0)
    assert tfse.case2_bracket(0.5) == 0.0


def test_msd(system):
    m = tfse.msd_direct(0.5, 0.5, system, 10.0)
    assert min(m["A"], m["B"], m["C"]) >= 0
    assert m["total"] == m["A"] + m["B"] + m["C"] + m["F"]
    assert tfse.msd_naber_leading(0.5, system) > 0
    assert tfse.msd_case2_leading(0.5, 1.0, system) > 0


def test_wellposed():
    assert tfse.envelope(0.5, 1.0, 2.0, 0.0) == 1.0
    assert tfse.solution_norm_sq(1.0, 1.0, [(1.5, 0.25), (2.0, 0.75)], 7.0) == pytest.approx(1.0, rel=1e-12)


def test_config_and_tables():
    assert "order.beta=0.25" in tfse.config({"order.beta": 0.25})
    with pytest.raises(tfse.ConfigError, match="order.alpha"):
        tfse.config({"order.alpha": 1.5})
    rows = tfse.run_regimes({"regimes.synthetic": "t^-2.5"})
    assert [r["beta"] for r in rows] == [0.25, 0.5, 0.75]
    assert rows[2]["pass"]
    csv = tfse.csv("current", {"time.t_max": 10, "time.n_samples": 3})
    assert csv.splitlines()[0] == "t,J_direct,J_asymptotic,logJ,regime,method"
    assert len(csv.splitlines()) == 4
    with pytest.raises(tfse.DomainError):
        tfse.csv("nothing")
