import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grossopt.grossone import GROSSONE, GrossNumber, parse
from grossopt.problems import (
    BUILTIN_PROBLEMS,
    Problem,
    ScaledProblem,
    get_problem,
    grid,
    grid_min_oracle,
    lipschitz_overestimate,
    load_problems,
    parse_expression,
    problem_from_expression,
)
from grossopt.scalar import FLOAT, GROSS

f1, f2, f3 = (BUILTIN_PROBLEMS[n] for n in ("f1", "f2", "f3"))


def f3_plain(x):
    return -sum(k * math.sin((k + 1) * x + k) for k in range(1, 6))


class TestBuiltins:
    def test_f1_at_zero(self):
        assert f1(0.0) == pytest.approx(0.1, abs=1e-15)

    def test_f2_matches_math(self):
        assert f2(4.1) == pytest.approx(math.sin(4.1) + math.sin(41.0 / 3.0), rel=1e-15)

    @pytest.mark.parametrize("x", [-0.491, -6.775, 5.792])
    def test_f3_minima(self, x):
        assert f3(x) == pytest.approx(-12.0312, abs=1e-4)
        assert f3(x) == pytest.approx(f3_plain(x), rel=1e-14)

    def test_reference_minima_are_grid_minima(self):
        for p in (f1, f2, f3):
            x, v = grid_min_oracle(p, 1e-4)
            assert any(abs(x - xm) < 1e-3 and abs(v - fm) < 1e-3 for xm, fm in p.known_minima)

    def test_vectorized_agrees_with_scalar(self):
        xs = np.linspace(f3.a, f3.b, 101)
        assert np.allclose(f3.values(xs), [f3_plain(x) for x in xs], rtol=0, atol=1e-12)

    def test_frozen_lipschitz_constants(self):
        for p in (f1, f2, f3):
            assert lipschitz_overestimate(p, 1e-4, 1.2) == pytest.approx(p.lipschitz, rel=1e-12)

    def test_outside_domain(self):
        with pytest.raises(ValueError):
            f3(10.5)

    def test_get_problem(self):
        assert get_problem("f2") is f2
        with pytest.raises(KeyError):
            get_problem("nope")


class TestScaled:
    def test_float_scaling(self):
        p = ScaledProblem(f3, 2.0, 10.0)
        assert p.ops is FLOAT
        assert p(-0.491) == 2.0 * f3(-0.491) + 10.0

    def test_gross_scaling(self):
        p = ScaledProblem(f3, GrossNumber("1@-1"), GROSSONE)
        assert p.ops is GROSS
        v = p(-0.491)
        assert v.leading_power == 1 and v.digit(1) == 1.0
        assert v.digit(-1) == pytest.approx(-12.0312, abs=1e-4)

    def test_alpha_must_be_positive(self):
        with pytest.raises(ValueError):
            ScaledProblem(f3, -1.0, 0.0)
        with pytest.raises(ValueError):
            ScaledProblem(f3, parse("-1@1+5@0"), 0.0)

    @settings(max_examples=50)
    @given(st.floats(-10, 10), st.floats(-10, 10))
    def test_slope_scales_by_alpha(self, x, y):
        # the slope between two points of alpha*f + beta is alpha times that of f
        p = ScaledProblem(f3, GrossNumber("1@-1"), GrossNumber("1@1"))
        if x == y:
            return
        hf = abs(f3(x) - f3(y)) / abs(x - y)
        hg = abs(p(x) - p(y)) / abs(x - y)
        assert hg == GrossNumber("1@-1") * hf


class TestGridOracle:
    def test_grid_endpoints(self):
        xs = grid(-10.0, 10.0, 1e-4)
        assert len(xs) == 200001 and xs[0] == -10.0 and xs[-1] == pytest.approx(10.0)

    def test_ill_conditioned_float_grid(self):
        x, v = grid_min_oracle(ScaledProblem(f3, 1e-17, 1.0), 1e-4)
        assert round(x, 3) == -8.194 and round(v, 1) == 1.0

    def test_gross_grid_recovers_true_minimum(self):
        x, v = grid_min_oracle(ScaledProblem(f3, GrossNumber("1@-1"), GROSSONE), 1e-4)
        assert x == pytest.approx(5.7918, abs=1e-9)
        assert v.digit(1) == 1.0 and v.digit(-1) == pytest.approx(-12.0312, abs=1e-4)

    def test_constant_ties_go_left(self):
        p = problem_from_expression("c", (0, 1), "3.5")
        assert grid_min_oracle(p, 0.1) == (0.0, 3.5)

    def test_bad_step(self):
        with pytest.raises(ValueError):
            grid(0.0, 1.0, 0.0)


class TestLipschitz:
    def test_linear(self):
        p = problem_from_expression("lin", (0, 1), "2*x")
        assert lipschitz_overestimate(p, 1e-3, 1.0) == pytest.approx(2.0)

    def test_abs(self):
        p = problem_from_expression("v", (-1, 1), "abs(x)")
        assert lipschitz_overestimate(p, 1e-3, 1.0) == pytest.approx(1.0)

    def test_safety(self):
        with pytest.raises(ValueError):
            lipschitz_overestimate(f3, 1e-3, 0.5)


class TestExpressions:
    @pytest.mark.parametrize(
        "text, x, expected",
        [
            ("abs(x - 0.4)", 0.1, 0.30000000000000004),
            ("x^2 + 1", 3.0, 10.0),
            ("2*x^3 - x^2", 2.0, 12.0),
            ("x**2 - 2*x", 2.0, 0.0),
            ("-sin(pi*x)", 0.5, -1.0),
            ("exp(x) + sqrt(x)", 0.0, 1.0),
            ("e - cos(0*x)", 5.0, math.e - 1.0),
        ],
    )
    def test_evaluate(self, text, x, expected):
        assert parse_expression(text)(x) == pytest.approx(expected, rel=1e-15)

    def test_vectorized(self):
        fn = parse_expression("2")
        out = fn(np.arange(3.0))
        assert out.shape == (3,) and (out == 2.0).all()

    @pytest.mark.parametrize("text", ["import os", "y + 1", "x +", "__import__('os')", "log(x)", "x if x else 1"])
    def test_rejected(self, text):
        with pytest.raises(ValueError):
            parse_expression(text)

    def test_load_problems(self, tmp_path):
        path = tmp_path / "p.json"
        path.write_text(json.dumps({"problems": [
            {"name": "v", "domain": [0, 1], "expression": "abs(x - 0.4)", "lipschitz": 1.5},
            {"name": "q", "domain": [-1, 2], "expression": "x^2"},
        ]}))
        probs = load_problems(path)
        assert set(probs) == {"v", "q"}
        assert probs["v"].lipschitz == 1.5 and probs["q"].lipschitz is None
        assert probs["q"](2.0) == 4.0

    def test_empty_domain(self):
        with pytest.raises(ValueError):
            Problem("bad", 1.0, 1.0, abs)
