"""Uniform evaluation and timing of every reliability measure."""

from __future__ import annotations

import time
import warnings
from dataclasses import dataclass, field

from .classical import (
    SplitScheme,
    cronbach_alpha,
    fit_one_factor,
    glb_details,
    omega_from_fit,
    split_half,
)
from .data import ResponseMatrix, VarianceMode, covariance
from .errors import ReliabilityError, SingleItemError, ZeroTotalVarianceError
from .search import SearchParams, monotone_delta

MEASURES = ("alpha", "omega_paper", "omega_conventional", "glb", "split_half", "monotone_delta")


@dataclass(frozen=True)
class MeasureParams:
    variance_mode: VarianceMode = "sample"
    split_scheme: SplitScheme = "odd-even"
    split_seed: int = 0
    search: SearchParams = field(default_factory=SearchParams)


@dataclass(frozen=True)
class MeasureValue:
    measure: str
    value: float | None
    seconds: float = 0.0
    notes: str = ""


def parse_measures(spec: str | None, omega_variant: str = "paper") -> tuple[str, ...]:
    """Parse a comma-separated measure list.

    ``all`` (or an empty list) selects every measure. ``delta`` is an alias of
    ``monotone_delta`` and ``omega`` of ``omega_<omega_variant>``.
    """
    if not spec or spec.strip() == "all":
        return MEASURES
    if omega_variant not in ("paper", "conventional"):
        raise ValueError(f"unknown omega variant {omega_variant!r}")
    aliases = {"delta": "monotone_delta", "omega": f"omega_{omega_variant}"}
    names = []
    for raw in spec.split(","):
        name = aliases.get(raw.strip(), raw.strip())
        if name not in MEASURES:
            raise ValueError(f"unknown measure {raw.strip()!r}; choose from {', '.join(MEASURES)}")
        if name not in names:
            names.append(name)
    return tuple(names)


def _omega(m: ResponseMatrix, params: MeasureParams, variant: str) -> tuple[float, str]:
    if m.n_items < 2:
        raise SingleItemError("at least 2 items are required")
    cov = covariance(m.values, params.variance_mode)
    if cov.sum() <= 1e-12 * abs(cov.trace()) or cov.trace() == 0:
        raise ZeroTotalVarianceError("total scores have zero variance")
    fit = fit_one_factor(cov)
    value = omega_from_fit(fit, variant)
    other = "conventional" if variant == "paper" else "paper"
    notes = [f"omega_{other}={omega_from_fit(fit, other):.4f}", f"factor_iterations={fit.iterations}"]
    if fit.notes:
        notes.append(fit.notes)
    return value, "; ".join(notes)


def _evaluate(m: ResponseMatrix, measure: str, params: MeasureParams) -> tuple[float, str]:
    if measure == "alpha":
        return cronbach_alpha(m, params.variance_mode), ""
    if measure == "omega_paper":
        return _omega(m, params, "paper")
    if measure == "omega_conventional":
        return _omega(m, params, "conventional")
    if measure == "glb":
        if m.n_items < 2:
            raise SingleItemError("at least 2 items are required")
        res = glb_details(covariance(m.values, params.variance_mode))
        return res.value, f"sweeps={res.sweeps}"
    if measure == "split_half":
        return split_half(m, params.split_scheme, params.split_seed), f"scheme={params.split_scheme}"
    if measure == "monotone_delta":
        res = monotone_delta(m, params.search)
        diag = res.diagnostics
        return res.delta, (
            f"c_star={res.c_star}; c_max={res.c_max}; restarts={diag.restarts}; "
            f"accepted={diag.accepted_swaps}; proposals={diag.proposals}"
        )
    raise ValueError(f"unknown measure {measure!r}")


def compute_measure(m: ResponseMatrix, measure: str, params: MeasureParams | None = None) -> MeasureValue:
    """Evaluate one measure with wall-clock timing.

    Data errors do not propagate: the value is ``None`` and the error goes to
    ``notes`` as ``error[CODE]: message``. Convergence warnings are appended
    to ``notes``.
    """
    params = params or MeasureParams()
    notes = []
    value = None
    began = time.perf_counter()
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        try:
            value, extra = _evaluate(m, measure, params)
            if extra:
                notes.append(extra)
        except ReliabilityError as exc:
            notes.append(f"error[{exc.code}]: {exc}")
    seconds = time.perf_counter() - began
    notes.extend(str(w.message) for w in caught)
    return MeasureValue(measure, None if value is None else float(value), seconds, "; ".join(notes))


def time_measures(m: ResponseMatrix, measures=MEASURES, params: MeasureParams | None = None) -> list[MeasureValue]:
    return [compute_measure(m, name, params) for name in measures]
