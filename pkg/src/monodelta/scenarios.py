"""Synthetic survey generators and the four-scenario benchmark suite.

Every generator draws the latent trait ``F`` (N values) first and the item
noise ``E`` (N x K values) second from ``numpy.random.default_rng(seed)``;
extra draws come afterwards. With their perturbation switched off the
multidimensional and non-normal generators therefore reproduce
:func:`generate_unidimensional` bit for bit.

Likert discretization maps each item's standardized value ``z`` (population
standard deviation ``sqrt(loading**2 + noise_sd**2)``) affinely so that
``z = -2`` lands on 1 and ``z = +2`` on ``L``, then rounds and clamps to
``[1, L]``.
"""

from __future__ import annotations

import configparser
import dataclasses
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .data import ResponseMatrix
from .errors import ConfigError, ReliabilityError
from .measures import MEASURES, MeasureParams, compute_measure, parse_measures
from .search import SearchParams

SCENARIOS = ("ideal", "redundancy", "multidimensional", "nonnormal")
_UINT64 = 2**64


@dataclass(frozen=True)
class SyntheticSpec:
    n_respondents: int
    n_items: int
    loadings: tuple[float, ...]
    noise_sd: float
    likert_levels: int | None = 5
    seed: int = 0

    def __post_init__(self):
        loadings = _as_loadings(self.loadings, self.n_items)
        object.__setattr__(self, "loadings", tuple(float(v) for v in loadings))
        if self.n_respondents < 2:
            raise ReliabilityError(f"n_respondents must be >= 2, got {self.n_respondents}")
        if self.noise_sd < 0:
            raise ReliabilityError(f"noise_sd must be >= 0, got {self.noise_sd}")
        _check_levels(self.likert_levels)


def _as_loadings(loadings, k: int) -> np.ndarray:
    arr = np.broadcast_to(np.asarray(loadings, dtype=float), (k,)) if np.ndim(loadings) == 0 else np.asarray(loadings, dtype=float)
    if arr.shape != (k,):
        raise ReliabilityError(f"expected {k} loadings, got {arr.size}")
    return arr.copy()


def _check_levels(levels: int | None) -> None:
    if levels is not None and levels < 2:
        raise ReliabilityError(f"likert_levels must be >= 2, got {levels}")


def _labels(k: int) -> tuple[str, ...]:
    return tuple(f"item{i + 1}" for i in range(k))


def _item_sd(loadings: np.ndarray, noise_sd: float) -> np.ndarray:
    sd = np.sqrt(loadings**2 + noise_sd**2)
    return np.where(sd > 0, sd, 1.0)


def to_likert(z: np.ndarray, levels: int) -> np.ndarray:
    """Map standardized scores onto ``1..levels``; +-2 SD spans the scale."""
    return np.clip(np.rint((levels + 1) / 2 + z * (levels - 1) / 4), 1, levels)


def _finish(x: np.ndarray, loadings: np.ndarray, noise_sd: float, levels: int | None) -> ResponseMatrix:
    if levels is not None:
        x = to_likert(x / _item_sd(loadings, noise_sd), levels)
    return ResponseMatrix(x, _labels(x.shape[1]))


def generate_unidimensional(spec: SyntheticSpec) -> ResponseMatrix:
    """One common factor: ``x = loading * F + noise_sd * E``."""
    rng = np.random.default_rng(spec.seed)
    lam = np.asarray(spec.loadings)
    latent = rng.standard_normal(spec.n_respondents)
    noise = rng.standard_normal((spec.n_respondents, spec.n_items))
    x = latent[:, None] * lam + spec.noise_sd * noise
    return _finish(x, lam, spec.noise_sd, spec.likert_levels)


def inject_redundancy(
    m: ResponseMatrix,
    r: int,
    factor: float = 0.95,
    noise_sd: float | None = None,
    seed: int = 0,
    likert_levels: int | None = None,
) -> ResponseMatrix:
    """Append ``r`` near-copies of existing items.

    Copy ``i`` is built from column ``i % K`` as ``factor * column + noise``
    with normal noise of standard deviation ``noise_sd`` (default: 5% of the
    source column's sample SD) and is labelled ``<label>_dup<i>``. With
    ``likert_levels`` the copies are rounded and clamped to ``1..likert_levels``.
    The original columns are left untouched.
    """
    if r < 1:
        raise ReliabilityError(f"r must be >= 1, got {r}")
    _check_levels(likert_levels)
    rng = np.random.default_rng(seed)
    x = m.values
    k = m.n_items
    copies = np.empty((m.n_respondents, r))
    labels = []
    for i in range(r):
        src = i % k
        sd = 0.05 * x[:, src].std(ddof=1) if noise_sd is None else noise_sd
        col = factor * x[:, src] + rng.normal(0.0, sd, m.n_respondents)
        if likert_levels is not None:
            col = np.clip(np.rint(col), 1, likert_levels)
        copies[:, i] = col
        labels.append(f"{m.item_labels[src]}_dup{i + 1}")
    return ResponseMatrix(np.hstack([x, copies]), m.item_labels + tuple(labels))


def generate_multidimensional(
    n: int,
    k1: int,
    k2: int,
    loadings1,
    loadings2,
    trait_correlation: float = 0.0,
    noise_sd: float = 0.6,
    likert_levels: int | None = 5,
    seed: int = 0,
) -> ResponseMatrix:
    """Two latent traits; the first ``k1`` items load on one, the rest on the other.

    The second trait is ``rho * F + sqrt(1 - rho**2) * G`` with ``G`` drawn
    after the item noise, so ``trait_correlation=1`` gives the
    unidimensional data of the same seed. At ``trait_correlation=0`` the
    population covariance is block diagonal.
    """
    if k1 < 2 or k2 < 2:
        raise ReliabilityError(f"each trait needs at least 2 items, got k1={k1}, k2={k2}")
    if not 0.0 <= trait_correlation <= 1.0:
        raise ReliabilityError(f"trait_correlation must lie in [0, 1], got {trait_correlation}")
    _check_levels(likert_levels)
    lam = np.concatenate([_as_loadings(loadings1, k1), _as_loadings(loadings2, k2)])
    rng = np.random.default_rng(seed)
    first = rng.standard_normal(n)
    noise = rng.standard_normal((n, k1 + k2))
    second = trait_correlation * first + math.sqrt(1.0 - trait_correlation**2) * rng.standard_normal(n)
    traits = np.column_stack([first, second])[:, [0] * k1 + [1] * k2]
    x = traits * lam + noise_sd * noise
    return _finish(x, lam, noise_sd, likert_levels)


def skew_transform(z: np.ndarray, skew_strength: float) -> np.ndarray:
    """Strictly increasing per-item distortion of standardized scores.

    ``y = sign(z) * |z|**(1 + s)`` stretches the tails, then an exponential
    tilt ``expm1(t * y) / t`` skews them, with ``t = s / 3`` on even-indexed
    items and ``-s / 3`` on odd-indexed ones (alternating ceiling and floor
    effects).
    """
    if skew_strength <= 0:
        return z
    y = np.sign(z) * np.abs(z) ** (1.0 + skew_strength)
    tilt = skew_strength / 3.0 * np.where(np.arange(z.shape[1]) % 2 == 0, 1.0, -1.0)
    return np.expm1(tilt * y) / tilt


def apply_nonnormal_correlated(
    n: int,
    k: int,
    loadings,
    skew_strength: float = 1.5,
    error_rho: float = 0.6,
    noise_sd: float = 0.6,
    likert_levels: int | None = None,
    seed: int = 0,
) -> ResponseMatrix:
    """One-factor data with AR(1)-correlated item errors and skewed, heavy-tailed items.

    Item errors follow ``e[l] = rho * e[l-1] + sqrt(1 - rho**2) * E[l]`` along
    the item index. For ``skew_strength > 0`` each item is standardized and
    passed through :func:`skew_transform` before optional discretization.
    With both perturbations at zero the output equals
    :func:`generate_unidimensional` for the same seed.
    """
    if skew_strength < 0:
        raise ReliabilityError(f"skew_strength must be >= 0, got {skew_strength}")
    if not 0.0 <= error_rho < 1.0:
        raise ReliabilityError(f"error_rho must lie in [0, 1), got {error_rho}")
    _check_levels(likert_levels)
    lam = _as_loadings(loadings, k)
    rng = np.random.default_rng(seed)
    latent = rng.standard_normal(n)
    innovations = rng.standard_normal((n, k))
    errors = innovations.copy()
    keep = math.sqrt(1.0 - error_rho**2)
    for col in range(1, k):
        errors[:, col] = error_rho * errors[:, col - 1] + keep * innovations[:, col]
    x = latent[:, None] * lam + noise_sd * errors
    if skew_strength == 0:
        return _finish(x, lam, noise_sd, likert_levels)
    y = skew_transform(x / _item_sd(lam, noise_sd), skew_strength)
    if likert_levels is not None:
        y = to_likert(y, likert_levels)
    return ResponseMatrix(y, _labels(k))


# ---------------------------------------------------------------------------
# suite configuration


def _opt_int(text: str) -> int | None:
    return None if text.strip().lower() in ("", "none") else int(text)


def _opt_float(text: str) -> float | None:
    return None if text.strip().lower() in ("", "none") else float(text)


def _names(text: str) -> tuple[str, ...]:
    return tuple(part.strip() for part in text.split(",") if part.strip())


@dataclass(frozen=True)
class DatasetSpec:
    label: str
    loading: float
    noise_sd: float
    seed: int


@dataclass(frozen=True)
class ScenarioConfig:
    """Full configuration of a suite run.

    Each dataset label gets its own data seed derived from ``seed`` and its
    position; ``dataset_overrides`` maps a label to replacement values for
    ``loading``, ``noise_sd`` or ``seed``. The same dataset seed is reused in
    every scenario, so scenarios are paired comparisons: the ideal data are
    the redundancy scenario's "before" and the multidimensional scenario's
    matched unidimensional baseline.
    """

    seed: int = 20240101
    n_respondents: int = 350
    n_items: int = 15
    loading: float = 0.8
    noise_sd: float = 0.6
    likert_levels: int | None = 5
    datasets: tuple[str, ...] = ("d1", "d2", "d3")
    dataset_overrides: dict = field(
        default_factory=lambda: {"d1": {"loading": 0.75}, "d3": {"loading": 0.85}}
    )
    scenarios: tuple[str, ...] = SCENARIOS
    measures: tuple[str, ...] = MEASURES
    redundancy_count: int | None = None
    redundancy_factor: float = 0.95
    redundancy_noise_sd: float | None = None
    split_items: int | None = None
    trait_correlation: float = 0.0
    skew_strength: float = 1.5
    error_rho: float = 0.6
    nonnormal_likert_levels: int | None = None
    restarts: int = 10
    max_non_improving: int | None = None
    search_seed: int | None = None
    variance_mode: str = "sample"
    split_scheme: str = "odd-even"
    split_seed: int = 0

    def __post_init__(self):
        bad = [s for s in self.scenarios if s not in SCENARIOS]
        if bad:
            raise ConfigError(f"unknown scenario(s) {', '.join(bad)}; choose from {', '.join(SCENARIOS)}")
        try:
            object.__setattr__(self, "measures", parse_measures(",".join(self.measures)))
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        if len(set(self.datasets)) != len(self.datasets) or not self.datasets:
            raise ConfigError("dataset labels must be non-empty and distinct")
        unknown = set(self.dataset_overrides) - set(self.datasets)
        if unknown:
            raise ConfigError(f"overrides for undeclared dataset(s): {', '.join(sorted(unknown))}")
        if self.n_respondents < 2 or self.n_items < 4:
            raise ConfigError("need n_respondents >= 2 and n_items >= 4")
        if self.variance_mode not in ("sample", "population"):
            raise ConfigError(f"variance_mode must be 'sample' or 'population', got {self.variance_mode!r}")
        if self.split_scheme not in ("odd-even", "random"):
            raise ConfigError(f"split_scheme must be 'odd-even' or 'random', got {self.split_scheme!r}")
        if not 2 <= self.k1 <= self.n_items - 2:
            raise ConfigError(f"split_items must leave at least 2 items per trait, got {self.k1}")

    @property
    def k1(self) -> int:
        return self.split_items if self.split_items is not None else self.n_items // 2

    @property
    def r(self) -> int:
        return self.redundancy_count if self.redundancy_count is not None else self.n_items // 2

    def dataset_specs(self) -> list[DatasetSpec]:
        specs = []
        for index, label in enumerate(self.datasets):
            over = self.dataset_overrides.get(label, {})
            derived = int(np.random.SeedSequence([self.seed, index]).generate_state(1, np.uint64)[0])
            specs.append(
                DatasetSpec(
                    label=label,
                    loading=float(over.get("loading", self.loading)),
                    noise_sd=float(over.get("noise_sd", self.noise_sd)),
                    seed=int(over.get("seed", derived)),
                )
            )
        return specs

    def measure_params(self) -> MeasureParams:
        seed = self.seed if self.search_seed is None else self.search_seed
        return MeasureParams(
            variance_mode=self.variance_mode,
            split_scheme=self.split_scheme,
            split_seed=self.split_seed,
            search=SearchParams(
                seed=seed % _UINT64, restarts=self.restarts, max_non_improving=self.max_non_improving
            ),
        )

    def to_dict(self) -> dict:
        out = {}
        for f in dataclasses.fields(self):
            value = getattr(self, f.name)
            out[f.name] = list(value) if isinstance(value, tuple) else value
        out["dataset_overrides"] = {k: dict(sorted(v.items())) for k, v in sorted(self.dataset_overrides.items())}
        out["resolved_datasets"] = [dataclasses.asdict(s) for s in self.dataset_specs()]
        return out

    def replace(self, **changes) -> "ScenarioConfig":
        return dataclasses.replace(self, **changes)


CONFIG_KEYS = {
    "seed": int,
    "n_respondents": int,
    "n_items": int,
    "loading": float,
    "noise_sd": float,
    "likert_levels": _opt_int,
    "datasets": _names,
    "scenarios": _names,
    "measures": _names,
    "redundancy_count": _opt_int,
    "redundancy_factor": float,
    "redundancy_noise_sd": _opt_float,
    "split_items": _opt_int,
    "trait_correlation": float,
    "skew_strength": float,
    "error_rho": float,
    "nonnormal_likert_levels": _opt_int,
    "restarts": int,
    "max_non_improving": _opt_int,
    "search_seed": _opt_int,
    "variance_mode": str,
    "split_scheme": str,
    "split_seed": int,
}
_OVERRIDE_KEYS = {"loading": float, "noise_sd": float, "seed": int}


def config_from_mapping(items: dict[str, str], base: ScenarioConfig | None = None) -> ScenarioConfig:
    """Build a config from string key/value pairs.

    Keys are :class:`ScenarioConfig` field names; ``<label>.loading``,
    ``<label>.noise_sd`` and ``<label>.seed`` set per-dataset overrides. Keys
    not given keep the values of ``base``.
    """
    base = base or ScenarioConfig()
    changes = {}
    overrides = {k: dict(v) for k, v in base.dataset_overrides.items()}
    for key, text in items.items():
        key = key.strip().replace("-", "_")
        try:
            if "." in key:
                label, name = key.rsplit(".", 1)
                if name not in _OVERRIDE_KEYS:
                    raise ConfigError(f"unknown dataset override {key!r}")
                overrides.setdefault(label, {})[name] = _OVERRIDE_KEYS[name](text)
            elif key in CONFIG_KEYS:
                changes[key] = CONFIG_KEYS[key](text)
            else:
                raise ConfigError(f"unknown configuration key {key!r}")
        except ValueError as exc:
            raise ConfigError(f"bad value for {key!r}: {exc}") from None
    datasets = changes.get("datasets", base.datasets)
    changes["dataset_overrides"] = {k: v for k, v in overrides.items() if k in datasets or k not in base.datasets}
    try:
        return dataclasses.replace(base, **changes)
    except TypeError as exc:
        raise ConfigError(str(exc)) from None


def parse_config(text: str, base: ScenarioConfig | None = None) -> ScenarioConfig:
    """Parse the flat ``key = value`` configuration format.

    One setting per line, ``#`` or ``;`` start a comment line, lists are
    comma-separated and ``none`` clears an optional value::

        seed = 7
        datasets = camera, phone
        camera.loading = 0.7
        nonnormal_likert_levels = none
    """
    parser = configparser.ConfigParser(interpolation=None, comment_prefixes=("#", ";"))
    parser.optionxform = str
    try:
        parser.read_string("[suite]\n" + text)
    except configparser.Error as exc:
        raise ConfigError(f"malformed configuration: {exc}") from None
    return config_from_mapping(dict(parser["suite"]), base)


def format_config(config: ScenarioConfig) -> str:
    """Render ``config`` in the format read by :func:`parse_config`."""
    lines = []
    for name in CONFIG_KEYS:
        value = getattr(config, name)
        if isinstance(value, tuple):
            value = ", ".join(value)
        lines.append(f"{name} = {'none' if value is None else value}")
    for label, over in sorted(config.dataset_overrides.items()):
        for key, value in sorted(over.items()):
            lines.append(f"{label}.{key} = {value}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# suite execution


@dataclass(frozen=True)
class ReportRow:
    scenario: str
    dataset: str
    measure: str
    value: float | None
    seconds: float
    notes: str = ""


@dataclass(frozen=True)
class ScenarioReport:
    rows: tuple[ReportRow, ...]
    spec_echo: dict

    def value(self, scenario: str, dataset: str, measure: str) -> float | None:
        for row in self.rows:
            if (row.scenario, row.dataset, row.measure) == (scenario, dataset, measure):
                return row.value
        raise KeyError((scenario, dataset, measure))


def _sub_seed(seed: int, purpose: int) -> int:
    return int(np.random.SeedSequence([seed, purpose]).generate_state(1, np.uint64)[0])


def scenario_data(config: ScenarioConfig, scenario: str, dataset: DatasetSpec) -> ResponseMatrix:
    """Generate the response matrix of one (scenario, dataset) cell."""
    n, k = config.n_respondents, config.n_items
    if scenario == "ideal":
        spec = SyntheticSpec(n, k, (dataset.loading,) * k, dataset.noise_sd, config.likert_levels, dataset.seed)
        return generate_unidimensional(spec)
    if scenario == "redundancy":
        base = scenario_data(config, "ideal", dataset)
        return inject_redundancy(
            base,
            config.r,
            config.redundancy_factor,
            config.redundancy_noise_sd,
            seed=_sub_seed(dataset.seed, 1),
            likert_levels=config.likert_levels,
        )
    if scenario == "multidimensional":
        k1 = config.k1
        return generate_multidimensional(
            n, k1, k - k1, dataset.loading, dataset.loading,
            config.trait_correlation, dataset.noise_sd, config.likert_levels, dataset.seed,
        )
    if scenario == "nonnormal":
        return apply_nonnormal_correlated(
            n, k, dataset.loading, config.skew_strength, config.error_rho,
            dataset.noise_sd, config.nonnormal_likert_levels, dataset.seed,
        )
    raise ConfigError(f"unknown scenario {scenario!r}")


def run_scenario_suite(config: ScenarioConfig | None = None, datasets: Sequence[str] | None = None) -> ScenarioReport:
    """Evaluate every configured measure on every (scenario, dataset) cell.

    Rows come in (scenario, dataset, measure) order. A measure that fails
    on a cell yields a row with ``value=None`` and the error in ``notes``.
    """
    config = config or ScenarioConfig()
    params = config.measure_params()
    rows = []
    for scenario in config.scenarios:
        for dataset in config.dataset_specs():
            if datasets is not None and dataset.label not in datasets:
                continue
            m = scenario_data(config, scenario, dataset)
            for measure in config.measures:
                res = compute_measure(m, measure, params)
                rows.append(ReportRow(scenario, dataset.label, measure, res.value, res.seconds, res.notes))
    return ScenarioReport(tuple(rows), config.to_dict())
