import numpy as np
import pytest

from monodelta import ResponseMatrix


def likert(seed: int, n: int, k: int, levels: int = 5) -> ResponseMatrix:
    rng = np.random.default_rng(seed)
    return ResponseMatrix(rng.integers(1, levels + 1, (n, k)).astype(float))


def one_factor_likert(seed: int, n: int, k: int, loading: float = 0.8, noise: float = 0.6) -> ResponseMatrix:
    """Positively correlated Likert data from a single latent factor."""
    rng = np.random.default_rng(seed)
    z = rng.standard_normal(n)[:, None] * loading + noise * rng.standard_normal((n, k))
    return ResponseMatrix(np.clip(np.rint(3 + z * 1.2), 1, 5))


@pytest.fixture
def small_w():
    from monodelta import DominanceMatrix

    return DominanceMatrix(np.array([[0, 2], [1, 0]]), 3)


_VERDICTS: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def record_verdict():
    def record(number: int, ok: bool, detail: str) -> None:
        _VERDICTS[number] = (bool(ok), detail)

    return record


def pytest_terminal_summary(terminalreporter):
    if not _VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_VERDICTS):
        ok, detail = _VERDICTS[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
