"""Reproducible experiments: homogeneity checks, the ill-conditioning demo, sweeps."""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

import numpy as np

from .grossone import GROSSONE, GrossNumber, parse_scalar
from .problems import Problem, ScaledProblem, get_problem, grid
from .solver import (
    Characteristic,
    Estimator,
    MethodConfig,
    METHOD_IDS,
    RunReport,
    Search,
    run,
)

__all__ = [
    "ScalePair",
    "IDENTITY",
    "FINITE",
    "G_SCALE",
    "H_SCALE",
    "GROSS_SCALES",
    "FINITE_SCALES",
    "parse_scales",
    "HomogeneityRunError",
    "InvariantFailure",
    "Divergence",
    "HomogeneityVerdict",
    "check_homogeneity",
    "IllCondDemo",
    "illcond_demo",
    "BenchmarkCell",
    "benchmark_suite",
    "trial_table",
    "recover",
]

REL_TOL = 1e-9


@dataclass(frozen=True)
class ScalePair:
    """Scaling ``alpha > 0`` and shift ``beta`` applied as ``alpha*f + beta``."""

    alpha: float | GrossNumber
    beta: float | GrossNumber
    label: str = ""

    def __post_init__(self):
        if not self.alpha > 0:
            raise ValueError(f"alpha must be positive, got {self.alpha}")
        if not self.label:
            object.__setattr__(self, "label", f"{_lit(self.alpha)},{_lit(self.beta)}")

    @property
    def exact(self) -> bool:
        """Whether scaling leaves every digit of the search bit-exact.

        True when ``alpha`` is a single term whose digit is a power of two and
        ``beta`` has no term at ``alpha``'s power, so no digit ever mixes
        ``f`` values with ``beta`` or rounds when multiplied by ``alpha``.
        """
        a = _as_gross(self.alpha)
        b = _as_gross(self.beta)
        if not a.is_monomial():
            return False
        (p, d), = a.terms
        if math.frexp(d)[0] != 0.5:
            return False
        return b.digit(p) == 0.0


def _as_gross(v) -> GrossNumber:
    return v if isinstance(v, GrossNumber) else GrossNumber.from_real(v)


def _lit(v) -> str:
    return _as_gross(v).to_literal()


IDENTITY = ScalePair(1.0, 0.0, "identity")
FINITE = ScalePair(2.0, 10.0, "finite")
G_SCALE = ScalePair(GROSSONE.div_by_monomial(GROSSONE * GROSSONE), GROSSONE, "g")
H_SCALE = ScalePair(GROSSONE, GROSSONE * GROSSONE, "h")
GROSS_SCALES = (G_SCALE, H_SCALE)
FINITE_SCALES = (IDENTITY, FINITE)


def parse_scales(text: str) -> list[ScalePair]:
    """Parse ``"a1,b1;a2,b2"`` with gross literals, e.g. ``"1@-1,1@1;1@1,1@2"``."""
    pairs = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        parts = chunk.split(",")
        if len(parts) != 2:
            raise ValueError(f"scale pair {chunk!r} must be 'alpha,beta'")
        pairs.append(ScalePair(parse_scalar(parts[0].strip()), parse_scalar(parts[1].strip())))
    return pairs


def recover(value, alpha, beta) -> float:
    """Undo the scaling: ``(value - beta) / alpha`` as a machine real."""
    out = (value - beta) / alpha
    return out.to_real() if isinstance(out, GrossNumber) else float(out)


# -- homogeneity --------------------------------------------------------


class HomogeneityRunError(RuntimeError):
    """A solver error in one of the two runs; ``run`` is "original" or "scaled"."""

    def __init__(self, run: str, error: Exception):
        self.run = run
        self.error = error
        super().__init__(f"{run} run failed: {type(error).__name__}: {error}")


@dataclass(frozen=True)
class InvariantFailure:
    iteration: int
    interval: int
    quantity: str  # "H", "l" or "R"
    expected: str
    actual: str


@dataclass(frozen=True)
class Divergence:
    iteration: int
    x_original: float | None
    x_scaled: float | None
    reason: str


@dataclass
class HomogeneityVerdict:
    method: str
    problem: str
    scale: ScalePair
    exact: bool
    sequences_equal: bool
    first_divergence: Divergence | None
    trial_counts: tuple[int, int]
    iterations_checked: int = 0
    invariant_failures: list[InvariantFailure] = field(default_factory=list)
    cases: frozenset = frozenset()  # "a"/"b": estimates scale with alpha; "c"/"d": all estimates are 1

    @property
    def invariants_ok(self) -> bool:
        return not self.invariant_failures

    @property
    def ok(self) -> bool:
        return self.sequences_equal and self.invariants_ok


def _mag(v) -> float:
    if isinstance(v, GrossNumber):
        return max((abs(d) for _, d in v.terms), default=0.0)
    return abs(float(v))


def _same(u, v, exact: bool, ref: float = 0.0) -> bool:
    if exact:
        return u == v
    return _mag(u - v) <= REL_TOL * max(_mag(u), _mag(v), ref)


def _same_x(u: float, v: float, exact: bool, width: float) -> bool:
    if exact:
        return u == v
    return math.isclose(u, v, rel_tol=REL_TOL, abs_tol=REL_TOL * width)


def _check_invariants(f: Search, g: Search, scale: ScalePair, exact: bool, iteration: int,
                      out: list, cases: set) -> None:
    alpha, beta = scale.alpha, scale.beta
    scaled = f.config.estimator is Estimator.APRIORI or f.hk > 0
    geometric = f.config.characteristic is Characteristic.GEOMETRIC
    if scaled:
        a_hat, b_hat = alpha, beta
        cases.add("a" if geometric else "b")
    else:
        a_hat, b_hat = 1, f.z[0] * (alpha - 1) + beta
        cases.add("c" if geometric else "d")
    if not geometric:
        b_hat = 4 * b_hat
    # rounding of z is bounded by zref; slopes and estimates inherit it over the
    # shortest interval (only used when the comparison is not exact)
    zref = _mag(alpha) * max(_mag(z) for z in f.z) * 4 + _mag(beta) * 4
    noise = zref / min(f.x[j + 1] - f.x[j] for j in range(len(f.H)))
    r = f.config.r
    for j in range(len(f.H)):
        dx = f.x[j + 1] - f.x[j]
        want = alpha * f.H[j]
        if not _same(g.H[j], want, exact, noise):
            out.append(InvariantFailure(iteration, j, "H", str(want), str(g.H[j])))
        want = alpha * f.l[j] if scaled else f.l[j]
        if not scaled and not (f.l[j] == 1 and g.l[j] == 1):
            out.append(InvariantFailure(iteration, j, "l", "1", str(g.l[j])))
        elif not _same(g.l[j], want, exact, r * noise):
            out.append(InvariantFailure(iteration, j, "l", str(want), str(g.l[j])))
        want = a_hat * f.R[j] + b_hat
        if not _same(g.R[j], want, exact, zref + r * noise * dx):
            out.append(InvariantFailure(iteration, j, "R", str(want), str(g.R[j])))


def _scaled_config(config: MethodConfig, alpha) -> MethodConfig:
    if config.estimator is Estimator.APRIORI and config.lipschitz is not None:
        return replace(config, lipschitz=alpha * config.lipschitz)
    return config


def check_homogeneity(
    problem: Problem | str,
    method: MethodConfig | str,
    scale: ScalePair,
    check_invariants: bool = True,
    exact: bool | None = None,
) -> HomogeneityVerdict:
    """Run ``f`` and ``alpha*f + beta`` side by side and compare them each iteration.

    Trial abscissas and selected intervals are compared bit-for-bit when the
    scale pair is exact (see :attr:`ScalePair.exact`) and to a relative
    tolerance of 1e-9 otherwise.  With ``check_invariants`` the slopes, Lipschitz
    estimates and characteristics of the scaled run are also checked against
    the affine images predicted from the unscaled run.
    """
    base = get_problem(problem) if isinstance(problem, str) else problem
    config = MethodConfig.from_id(method) if isinstance(method, str) else method
    if exact is None:
        exact = scale.exact
    try:
        f = Search(base, config)
    except Exception as exc:
        raise HomogeneityRunError("original", exc) from exc
    try:
        g = Search(ScaledProblem(base, scale.alpha, scale.beta), _scaled_config(config, scale.alpha))
    except Exception as exc:
        raise HomogeneityRunError("scaled", exc) from exc

    width = base.b - base.a
    failures: list[InvariantFailure] = []
    cases: set = set()
    divergence = None
    iteration = 0
    while True:
        if check_invariants:
            _check_invariants(f, g, scale, exact, iteration, failures, cases)
        f_more = _step(f, "original")
        g_more = _step(g, "scaled")
        if f.selected[-1] != g.selected[-1]:
            divergence = Divergence(iteration, None, None, f"selected interval {f.selected[-1]} vs {g.selected[-1]}")
            break
        if f_more != g_more or f.stop_reason is not g.stop_reason:
            divergence = Divergence(iteration, None, None, f"stop {f.stop_reason} vs {g.stop_reason}")
            break
        if not f_more:
            break
        xf, xg = f.trials[-1][0], g.trials[-1][0]
        if not _same_x(xf, xg, exact, width):
            divergence = Divergence(iteration, xf, xg, "trial abscissa differs")
            break
        iteration += 1

    # finish both runs to report their trial counts
    while _step(f, "original"):
        pass
    while _step(g, "scaled"):
        pass
    return HomogeneityVerdict(
        method=config.id,
        problem=base.name,
        scale=scale,
        exact=exact,
        sequences_equal=divergence is None and f.k == g.k,
        first_divergence=divergence,
        trial_counts=(f.k, g.k),
        iterations_checked=iteration + 1,
        invariant_failures=failures,
        cases=frozenset(cases),
    )


def _step(search: Search, which: str) -> bool:
    try:
        return search.step()
    except Exception as exc:
        raise HomogeneityRunError(which, exc) from exc


# -- ill-conditioning ---------------------------------------------------


@dataclass
class IllCondDemo:
    """Grid minima of ``f``, its float-scaled image and the gross-scaled image."""

    alpha: float
    beta: float
    step: float
    true_argmin: tuple[float, float]
    float_argmin: tuple[float, float]
    inverted_argmin: tuple[float, float]
    gross_scale: ScalePair
    gross_argmin: tuple[float, GrossNumber]
    gross_recovered: float
    ill_conditioned: bool
    xs: np.ndarray = field(repr=False)
    f_values: np.ndarray = field(repr=False)
    g_values: np.ndarray = field(repr=False)
    f_inverted: np.ndarray = field(repr=False)

    def plot_rows(self) -> Iterable[tuple[float, float, str]]:
        """``(x, value, series)`` rows for the three curves."""
        for name, vs in (("f", self.f_values), ("g_float", self.g_values), ("f_inverted", self.f_inverted)):
            for x, v in zip(self.xs.tolist(), vs.tolist()):
                yield x, v, name


def illcond_demo(
    alpha: float = 1e-17,
    beta: float = 1.0,
    step: float = 1e-4,
    problem: Problem | str = "f3",
    gross_scale: ScalePair = G_SCALE,
) -> IllCondDemo:
    """Compare grid minima of ``alpha*f + beta`` in doubles and in gross arithmetic.

    The float path is what a conventional evaluation sees; the gross path
    scales with ``gross_scale`` and recovers ``f*`` exactly from its minimum.
    """
    base = get_problem(problem) if isinstance(problem, str) else problem
    xs = grid(base.a, base.b, step)
    fs = base.values(xs)
    gs = alpha * fs + beta
    fhat = (gs - beta) / alpha

    i_true = int(np.argmin(fs))
    i_float = int(np.argmin(gs))
    i_inv = int(np.argmin(fhat))

    a_g, b_g = gross_scale.alpha, gross_scale.beta
    gross_vals = [a_g * v + b_g for v in fs.tolist()]
    i_gross = min(range(len(gross_vals)), key=gross_vals.__getitem__)
    gmin = gross_vals[i_gross]

    lost = i_float != i_true or float(gs[i_float]) != alpha * float(fs[i_true]) + beta
    return IllCondDemo(
        alpha=alpha,
        beta=beta,
        step=step,
        true_argmin=(float(xs[i_true]), float(fs[i_true])),
        float_argmin=(float(xs[i_float]), float(gs[i_float])),
        inverted_argmin=(float(xs[i_inv]), float(fhat[i_inv])),
        gross_scale=gross_scale,
        gross_argmin=(float(xs[i_gross]), gmin),
        gross_recovered=recover(gmin, a_g, b_g),
        ill_conditioned=bool(lost),
        xs=xs,
        f_values=fs,
        g_values=gs,
        f_inverted=fhat,
    )


# -- sweeps -------------------------------------------------------------


@dataclass
class BenchmarkCell:
    problem: str
    method: str
    scale: ScalePair
    report: RunReport | None
    error: str | None = None

    @property
    def trial_count(self) -> int | None:
        return None if self.report is None else self.report.trial_count


def _run_cell(args) -> BenchmarkCell:
    base, config, scale = args
    try:
        rep = run(ScaledProblem(base, scale.alpha, scale.beta), _scaled_config(config, scale.alpha))
        return BenchmarkCell(base.name, config.id, scale, rep)
    except Exception as exc:  # recorded per cell, the sweep goes on
        return BenchmarkCell(base.name, config.id, scale, None, f"{type(exc).__name__}: {exc}")


def benchmark_suite(
    methods: Sequence[MethodConfig | str] = METHOD_IDS,
    problems: Sequence[Problem | str] = ("f1", "f2", "f3"),
    scales: Sequence[ScalePair] = (IDENTITY, G_SCALE, H_SCALE),
    max_workers: int | None = None,
    **config_kwargs,
) -> list[BenchmarkCell]:
    """Run every method on every problem under every scale pair.

    Cells are returned in (problem, method, scale) order.  ``config_kwargs``
    are passed to :meth:`MethodConfig.from_id` for methods given by id.
    With ``max_workers > 1`` cells run in worker processes, so problems must
    be picklable.
    """
    configs = [MethodConfig.from_id(m, **config_kwargs) if isinstance(m, str) else m for m in methods]
    bases = [get_problem(p) if isinstance(p, str) else p for p in problems]
    jobs = [(b, c, s) for b in bases for c in configs for s in scales]
    if max_workers and max_workers > 1 and jobs:
        with ProcessPoolExecutor(max_workers=max_workers) as pool:
            return list(pool.map(_run_cell, jobs))
    return [_run_cell(j) for j in jobs]


def trial_table(cells: Iterable[BenchmarkCell]) -> dict[tuple[str, str], dict[str, int | None]]:
    """Trial counts keyed by (problem, method), then by scale label."""
    table: dict[tuple[str, str], dict[str, int | None]] = {}
    for c in cells:
        table.setdefault((c.problem, c.method), {})[c.scale.label] = c.trial_count
    return table
