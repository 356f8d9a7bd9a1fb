import numpy as np
import pytest

from monodelta import MEASURES, MeasureParams, ResponseMatrix, SearchParams, compute_measure, parse_measures, time_measures
from monodelta.scenarios import SyntheticSpec, generate_unidimensional


def test_parse_measures():
    assert parse_measures("all") == MEASURES
    assert parse_measures(None) == MEASURES
    assert parse_measures("alpha, delta,alpha") == ("alpha", "monotone_delta")
    assert parse_measures("omega") == ("omega_paper",)
    assert parse_measures("omega", "conventional") == ("omega_conventional",)
    with pytest.raises(ValueError):
        parse_measures("kappa")


def test_every_measure_on_clean_data():
    m = generate_unidimensional(SyntheticSpec(60, 6, (0.8,) * 6, 0.6, 5, 3))
    values = time_measures(m, MEASURES, MeasureParams(search=SearchParams(restarts=2)))
    assert [v.measure for v in values] == list(MEASURES)
    for v in values:
        assert v.value is not None and np.isfinite(v.value) and 0 < v.value <= 1
        assert v.seconds >= 0
    omega = values[1]
    assert "omega_conventional=" in omega.notes


def test_errors_become_notes():
    m = ResponseMatrix([[1, 3], [2, 2], [3, 1]])
    res = compute_measure(m, "alpha")
    assert res.value is None and res.notes.startswith("error[ZERO_TOTAL_VARIANCE]")
    single = ResponseMatrix([[1], [2], [3]])
    for name in ("alpha", "omega_paper", "glb", "split_half"):
        assert compute_measure(single, name).notes.startswith("error[SINGLE_ITEM]")
    assert compute_measure(single, "monotone_delta").value == 1.0


def test_alpha_timing_at_reference_size():
    rng = np.random.default_rng(0)
    m = ResponseMatrix(rng.integers(1, 6, (350, 67)).astype(float))
    assert compute_measure(m, "alpha").seconds < 1.0


def test_delta_takes_longer_than_alpha():
    m = generate_unidimensional(SyntheticSpec(80, 8, (0.8,) * 8, 0.6, 5, 1))
    alpha, delta = time_measures(m, ("alpha", "monotone_delta"))
    assert delta.seconds > alpha.seconds
