"""Hot numeric kernels with a numba fast path and a pure-numpy fallback.

The one genuinely hot loop in this package is the all-segments cost matrix
behind the breakpoint search: for every admissible index range [i, j) it
computes the sum of squared residuals of an ordinary least-squares line fit.
That is O(n^3) work, done in compiled code when numba is importable and in
vectorized numpy otherwise.

Backend selection, once at import:

    HYPERGROWTH_BACKEND=auto    numba when available, else numpy (default)
    HYPERGROWTH_BACKEND=numba   require numba, fail loudly if missing
    HYPERGROWTH_BACKEND=numpy   force the pure-numpy fallback

Both implementations fit each segment after shifting coordinates to the
segment's first point (so the normal-equation sums do not cancel) and then
accumulate residuals explicitly in a second pass, which keeps near-zero SSEs
accurate instead of drowning them in the rounding of large partial sums.
The caller never depends on bit-identical costs across backends: downstream
code re-derives all reported numbers from the chosen partition with the
compensated-summation fitting path.
"""

from __future__ import annotations

import os

import numpy as np

_ENV_VAR = "HYPERGROWTH_BACKEND"
_CHOICES = ("auto", "numba", "numpy")


def _read_env_choice() -> str:
    choice = os.environ.get(_ENV_VAR, "auto").strip().lower()
    if choice not in _CHOICES:
        raise RuntimeError(f"{_ENV_VAR} must be one of {_CHOICES}, got {choice!r}")
    return choice


def _numba_importable() -> bool:
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


def resolve_backend(choice: str | None = None) -> str:
    """Map an explicit or environment choice to 'numba' or 'numpy'."""
    choice = _read_env_choice() if choice is None else choice
    if choice == "numpy":
        return "numpy"
    if choice == "numba":
        if not _numba_importable():
            raise RuntimeError("HYPERGROWTH_BACKEND=numba but numba is not installed")
        return "numba"
    return "numba" if _numba_importable() else "numpy"


_DEFAULT_BACKEND = resolve_backend()


def active_backend() -> str:
    return _DEFAULT_BACKEND


def _sse_matrix_numpy(t: np.ndarray, y: np.ndarray, min_size: int) -> np.ndarray:
    n = t.size
    cost = np.full((n + 1, n + 1), np.inf)
    for i in range(0, n - min_size + 1):
        # Shift to the segment start so cumulative sums stay well conditioned.
        tt = t[i:] - t[i]
        yy = y[i:] - y[i]
        m = np.arange(1.0, tt.size + 1.0)
        st = np.cumsum(tt)
        sy = np.cumsum(yy)
        stt = np.cumsum(tt * tt)
        sty = np.cumsum(tt * yy)
        sxx = stt - st * st / m
        sxy = sty - st * sy / m
        with np.errstate(divide="ignore", invalid="ignore"):
            slope = np.where(sxx > 0.0, sxy / np.where(sxx > 0.0, sxx, 1.0), 0.0)
        icept = sy / m - slope * st / m
        resid = yy[None, :] - icept[:, None] - slope[:, None] * tt[None, :]
        resid *= np.tri(tt.size)  # row L keeps points 0..L
        sse = np.einsum("ij,ij->i", resid, resid)
        lengths = np.arange(1, tt.size + 1)
        ok = lengths >= min_size
        cost[i, i + lengths[ok]] = sse[ok]
    return cost


def _build_numba_kernel():
    from numba import njit

    @njit(cache=True)
    def _sse_matrix_numba(t, y, min_size):  # pragma: no cover - compiled
        n = t.size
        cost = np.full((n + 1, n + 1), np.inf)
        for i in range(0, n - min_size + 1):
            st = 0.0
            sy = 0.0
            stt = 0.0
            sty = 0.0
            for j in range(i + 1, n + 1):
                dt = t[j - 1] - t[i]
                dy = y[j - 1] - y[i]
                st += dt
                sy += dy
                stt += dt * dt
                sty += dt * dy
                m = j - i
                if m < min_size:
                    continue
                sxx = stt - st * st / m
                if sxx <= 0.0:
                    continue
                slope = (sty - st * sy / m) / sxx
                icept = sy / m - slope * st / m
                acc = 0.0
                for p in range(i, j):
                    r = (y[p] - y[i]) - icept - slope * (t[p] - t[i])
                    acc += r * r
                cost[i, j] = acc
        return cost

    return _sse_matrix_numba


_NUMBA_KERNEL = None


def _numba_kernel():
    global _NUMBA_KERNEL
    if _NUMBA_KERNEL is None:
        _NUMBA_KERNEL = _build_numba_kernel()
    return _NUMBA_KERNEL


def sse_matrix(
    t: np.ndarray, y: np.ndarray, min_size: int, backend: str | None = None
) -> np.ndarray:
    """Cost matrix C with C[i, j] = line-fit SSE over points i..j-1.

    Entries for segments shorter than ``min_size`` are +inf.  ``backend``
    overrides the import-time default; pass "numpy" or "numba" explicitly
    when comparing implementations.
    """
    if min_size < 2:
        raise ValueError("min_size must be at least 2")
    t = np.ascontiguousarray(t, dtype=np.float64)
    y = np.ascontiguousarray(y, dtype=np.float64)
    if t.size != y.size:
        raise ValueError("t and y must have equal length")
    chosen = _DEFAULT_BACKEND if backend is None else resolve_backend(backend)
    if chosen == "numba":
        return _numba_kernel()(t, y, min_size)
    return _sse_matrix_numpy(t, y, min_size)
