"""Backend parity and correctness of the segment-cost kernel."""

import math

import numpy as np
import pytest

import hypergrowth as hg
from hypergrowth import _kernels
from hypergrowth.fitting import _line_fit
from conftest import africa_composite, row_by_name, synth

HAS_NUMBA = _kernels._numba_importable()
BACKENDS = ["numpy"] + (["numba"] if HAS_NUMBA else [])


def reference_sse(t: np.ndarray, y: np.ndarray) -> float:
    intercept, slope = _line_fit(t, y, None)
    r = y - (intercept + slope * t)
    return math.fsum((r * r).tolist())


def normalized(series: hg.TimeSeries) -> tuple[np.ndarray, np.ndarray]:
    t = series.years
    mid = 0.5 * (t[0] + t[-1])
    half = 0.5 * (t[-1] - t[0])
    return (t - mid) / half, 1.0 / series.values


@pytest.mark.parametrize("backend", BACKENDS)
class TestKernelCorrectness:
    def test_matches_reference_fit(self, backend):
        s = synth(row_by_name("asia"), step=25.0, noise_rel=0.05, seed=2)
        u, y = normalized(s)
        cost = _kernels.sse_matrix(u, y, 4, backend=backend)
        n = len(s)
        rng = np.random.default_rng(0)
        for _ in range(25):
            i = int(rng.integers(0, n - 4))
            j = int(rng.integers(i + 4, n + 1))
            ref = reference_sse(u[i:j], y[i:j])
            assert cost[i, j] == pytest.approx(ref, rel=1e-9, abs=1e-18)

    def test_short_segments_are_inf(self, backend):
        s = synth(row_by_name("asia"), step=50.0)
        u, y = normalized(s)
        cost = _kernels.sse_matrix(u, y, 4, backend=backend)
        n = len(s)
        for i in range(n):
            for j in range(i, min(i + 4, n + 1)):
                assert cost[i, j] == np.inf

    def test_noiseless_costs_are_tiny(self, backend):
        s = synth(row_by_name("world-gdp"), step=25.0)
        u, y = normalized(s)
        cost = _kernels.sse_matrix(u, y, 4, backend=backend)
        finite = cost[np.isfinite(cost)]
        scale = float(np.max(y * y))
        assert np.all(finite < 1e-24 * scale * len(s))


@pytest.mark.skipif(not HAS_NUMBA, reason="numba not installed")
class TestBackendParity:
    def test_cost_matrices_agree(self):
        s = africa_composite()
        u, y = normalized(s)
        a = _kernels.sse_matrix(u, y, 4, backend="numpy")
        b = _kernels.sse_matrix(u, y, 4, backend="numba")
        mask = np.isfinite(a)
        np.testing.assert_array_equal(mask, np.isfinite(b))
        np.testing.assert_allclose(a[mask], b[mask], rtol=1e-9, atol=1e-22)

    def test_same_partition_chosen(self, monkeypatch):
        s = africa_composite()
        results = {}
        for backend in ("numpy", "numba"):
            monkeypatch.setattr(_kernels, "_DEFAULT_BACKEND", backend)
            results[backend] = hg.segment(s, max_segments=3)
        a, b = results["numpy"], results["numba"]
        assert a.breakpoints == b.breakpoints
        # Reported parameters come from the compensated refit and are
        # bit-identical whichever backend ranked the partitions.
        for seg_a, seg_b in zip(a.segments, b.segments):
            assert seg_a.fit.model == seg_b.fit.model
        assert a.total_sse == b.total_sse


class TestBackendSelection:
    def test_resolve_explicit(self):
        assert _kernels.resolve_backend("numpy") == "numpy"

    def test_resolve_auto(self):
        expected = "numba" if HAS_NUMBA else "numpy"
        assert _kernels.resolve_backend("auto") == expected

    def test_env_choice_validated(self, monkeypatch):
        monkeypatch.setenv(_kernels._ENV_VAR, "cuda")
        with pytest.raises(RuntimeError, match="HYPERGROWTH_BACKEND"):
            _kernels._read_env_choice()

    def test_env_numpy_respected(self, monkeypatch):
        monkeypatch.setenv(_kernels._ENV_VAR, "numpy")
        assert _kernels.resolve_backend() == "numpy"

    def test_active_backend_reports_string(self):
        assert _kernels.active_backend() in ("numpy", "numba")
