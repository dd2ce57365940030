"""Harmonic-oscillator basis functions and operator matrix elements.

Everything works in the dimensionless coordinate of a unit oscillator, where
state n has energy n + 1/2.  Matrix elements of xi, xi^2, xi^3 and xi^4 come
from closed-form band expressions.  The absolute-value operators |xi| and
|xi|^3 (tagged lambda_xi and lambda_xi3) have no finite band, so those
elements are integrated numerically on the half line and extended to very
large indices by power-law scaling of anchor values:

* they vanish whenever n + m is odd,
* numerical integration is trusted for min(n, m) <= 100 - k/2 with
  k = |n - m| <= 50,
* for k > 50 the value at (n, n + 50) is scaled by (50/k)^(5/4) for |xi|
  and (50/k)^(5/2 + 0.02 n) for |xi|^3, with sign (-1)^((50 + k)/2),
* for min index beyond the trusted row limit, the value at the limit row is
  scaled by (n/n_e)^(1/2) for |xi| and (n/n_e)^(3/2) for |xi|^3.

Tables are capped at 500 x 500.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

TABLE_LIMIT = 500
# numerical integration is trusted up to this smaller-index row at k = 0 ...
QUAD_ROW_LIMIT = 100
# ... and out to this bandwidth; beyond either, scaled anchors take over
QUAD_BAND_LIMIT = 50

TAGS = ("xi", "xi2", "xi3", "xi4", "lambda_xi", "lambda_xi3")


class IndexOutOfRangeError(IndexError):
    pass


@dataclass(frozen=True)
class QuadratureScheme:
    """Composite Gauss-Legendre rule on the half line.

    The integration interval [0, cutoff] is split into unit panels with
    points_per_panel Gauss-Legendre nodes each.  The cutoff covers the
    classical turning point of the larger state plus a tail margin, rounded
    up to a whole panel.
    """

    points_per_panel: int = 24
    tail: float = 8.0

    def cutoff(self, n: int, m: int) -> int:
        return math.ceil(math.sqrt(2.0 * max(n, m) + 1.0) + self.tail)


DEFAULT_SCHEME = QuadratureScheme()


@lru_cache(maxsize=64)
def _panel_nodes(cutoff: int, points_per_panel: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights for unit panels tiling [0, cutoff]."""
    base_x, base_w = np.polynomial.legendre.leggauss(points_per_panel)
    offsets = np.arange(cutoff, dtype=float)[:, None]
    x = (offsets + 0.5 * (base_x + 1.0)[None, :]).ravel()
    w = np.tile(0.5 * base_w, cutoff)
    return x, w


def wavefunction_value(n: int, xi):
    """Normalized oscillator wavefunction psi_n evaluated at xi.

    Uses the stable upward recursion
    psi_{n+1} = (sqrt(2) xi psi_n - sqrt(n) psi_{n-1}) / sqrt(n+1),
    starting from the normalized Gaussian ground state.  xi may be a scalar
    or an array.
    """
    if n < 0:
        raise ValueError("quantum number must be non-negative")
    x = np.asarray(xi, dtype=float)
    prev = np.zeros_like(x)
    cur = np.pi ** -0.25 * np.exp(-0.5 * x * x)
    for j in range(n):
        prev, cur = cur, (math.sqrt(2.0) * x * cur - math.sqrt(j) * prev) / math.sqrt(j + 1)
    if np.ndim(xi) == 0:
        return float(cur)
    return cur


def wavefunction_rows(n_max: int, xi: np.ndarray) -> np.ndarray:
    """All wavefunctions 0..n_max on a grid, one per row."""
    if n_max < 0:
        raise ValueError("quantum number must be non-negative")
    x = np.asarray(xi, dtype=float)
    rows = np.empty((n_max + 1, x.size))
    rows[0] = np.pi ** -0.25 * np.exp(-0.5 * x * x)
    if n_max >= 1:
        rows[1] = math.sqrt(2.0) * x * rows[0]
    for j in range(1, n_max):
        rows[j + 1] = (math.sqrt(2.0) * x * rows[j] - math.sqrt(j) * rows[j - 1]) / math.sqrt(j + 1)
    return rows


def _check_indices(n: int, m: int) -> None:
    if n < 0 or m < 0:
        raise IndexOutOfRangeError("indices must be non-negative")
    if n > TABLE_LIMIT or m > TABLE_LIMIT:
        raise IndexOutOfRangeError(f"indices above {TABLE_LIMIT} are not tabulated")


def xi_element(n: int, m: int) -> float:
    """<n|xi|m>: single band at |n - m| = 1."""
    _check_indices(n, m)
    a, b = min(n, m), max(n, m)
    if b - a == 1:
        return math.sqrt((a + 1) / 2.0)
    return 0.0


def xi2_element(n: int, m: int) -> float:
    """<n|xi^2|m>: bands at |n - m| = 0 and 2."""
    _check_indices(n, m)
    a, b = min(n, m), max(n, m)
    k = b - a
    if k == 0:
        return a + 0.5
    if k == 2:
        return 0.5 * math.sqrt((a + 1.0) * (a + 2.0))
    return 0.0


def xi3_element(n: int, m: int) -> float:
    """<n|xi^3|m>: bands at |n - m| = 1 and 3."""
    _check_indices(n, m)
    a, b = min(n, m), max(n, m)
    k = b - a
    if k == 1:
        return 1.5 * (a + 1.0) * math.sqrt((a + 1.0) / 2.0)
    if k == 3:
        return 0.5 * math.sqrt((a + 1.0) * (a + 2.0) * (a + 3.0) / 2.0)
    return 0.0


def xi4_element(n: int, m: int) -> float:
    """<n|xi^4|m>: bands at |n - m| = 0, 2 and 4."""
    _check_indices(n, m)
    a, b = min(n, m), max(n, m)
    k = b - a
    if k == 0:
        return 0.75 * (2.0 * a * a + 2.0 * a + 1.0)
    if k == 2:
        return (a + 1.5) * math.sqrt((a + 1.0) * (a + 2.0))
    if k == 4:
        return 0.25 * math.sqrt((a + 1.0) * (a + 2.0) * (a + 3.0) * (a + 4.0))
    return 0.0


@lru_cache(maxsize=8)
def _psi_grid(n_max: int, cutoff: int, points_per_panel: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    x, w = _panel_nodes(cutoff, points_per_panel)
    return x, w, wavefunction_rows(n_max, x)


def _quadrature_element(n: int, m: int, power: int, scheme: QuadratureScheme) -> float:
    """Raw half-line integral 2 * int_0^cutoff psi_n psi_m xi^power dxi.

    Valid for even n + m regardless of the trusted region; callers decide
    whether to trust it.
    """
    cutoff = scheme.cutoff(n, m)
    x, w, psi = _psi_grid(max(n, m), cutoff, scheme.points_per_panel)
    return 2.0 * float(np.sum(w * psi[n] * psi[m] * x**power))


def _abs_power_element(n: int, m: int, power: int, scheme: QuadratureScheme) -> float:
    """<n| |xi|^power |m> for odd power, with anchor scaling outside the
    trusted quadrature region."""
    _check_indices(n, m)
    a, b = min(n, m), max(n, m)
    if (a + b) % 2 == 1:
        return 0.0
    k = b - a
    if k > QUAD_BAND_LIMIT:
        anchor = _abs_power_element(a, a + QUAD_BAND_LIMIT, power, scheme)
        sign = -1.0 if ((QUAD_BAND_LIMIT + k) // 2) % 2 else 1.0
        if power == 1:
            expo = 1.25
        else:
            expo = 2.5 + 0.02 * a
        return sign * anchor * (QUAD_BAND_LIMIT / k) ** expo
    row_limit = QUAD_ROW_LIMIT - k // 2
    if a > row_limit:
        anchor = _abs_power_element(row_limit, row_limit + k, power, scheme)
        expo = 0.5 if power == 1 else 1.5
        return anchor * (a / row_limit) ** expo
    return _quadrature_element(a, b, power, scheme)


def lambda_xi_element(n: int, m: int, scheme: QuadratureScheme = DEFAULT_SCHEME) -> float:
    """<n| |xi| |m>."""
    return _abs_power_element(n, m, 1, scheme)


def lambda_xi3_element(n: int, m: int, scheme: QuadratureScheme = DEFAULT_SCHEME) -> float:
    """<n| |xi|^3 |m>."""
    return _abs_power_element(n, m, 3, scheme)


@dataclass(frozen=True)
class ElementTable:
    """Dense symmetric table of operator matrix elements for indices 0..max_n."""

    tag: str
    max_n: int
    values: np.ndarray

    def value(self, n: int, m: int) -> float:
        if n < 0 or m < 0 or n > self.max_n or m > self.max_n:
            raise IndexOutOfRangeError(
                f"({n}, {m}) outside table range 0..{self.max_n}"
            )
        return float(self.values[n, m])


_CLOSED_FORMS = {
    "xi": xi_element,
    "xi2": xi2_element,
    "xi3": xi3_element,
    "xi4": xi4_element,
}


def _banded_table(tag: str, max_n: int) -> np.ndarray:
    fn = _CLOSED_FORMS[tag]
    vals = np.zeros((max_n + 1, max_n + 1))
    bands = {"xi": (1,), "xi2": (0, 2), "xi3": (1, 3), "xi4": (0, 2, 4)}[tag]
    for k in bands:
        for a in range(max_n + 1 - k):
            v = fn(a, a + k)
            vals[a, a + k] = v
            vals[a + k, a] = v
    return vals


def _abs_power_table(power: int, max_n: int, scheme: QuadratureScheme) -> np.ndarray:
    vals = np.zeros((max_n + 1, max_n + 1))
    # block of raw integrals covering every trusted (row, band) pair
    qcol = min(max_n, QUAD_ROW_LIMIT + QUAD_BAND_LIMIT)
    cutoff = scheme.cutoff(qcol, qcol)
    x, w, psi = _psi_grid(qcol, cutoff, scheme.points_per_panel)
    block = 2.0 * (psi * (w * x**power)) @ psi.T

    for a in range(max_n + 1):
        for b in range(a, min(max_n, a + QUAD_BAND_LIMIT) + 1, 1):
            if (a + b) % 2 == 1:
                continue
            k = b - a
            row_limit = QUAD_ROW_LIMIT - k // 2
            if a <= row_limit:
                v = block[a, b]
            else:
                expo = 0.5 if power == 1 else 1.5
                v = vals[row_limit, row_limit + k] * (a / row_limit) ** expo
            vals[a, b] = v
            vals[b, a] = v
    # bandwidths beyond the anchor band, scaled off the completed k = 50 column;
    # only even k carries a value, odd k stays zero by parity
    for a in range(max_n + 1):
        for b in range(a + QUAD_BAND_LIMIT + 2, max_n + 1, 2):
            k = b - a
            anchor = vals[a, a + QUAD_BAND_LIMIT]
            sign = -1.0 if ((QUAD_BAND_LIMIT + k) // 2) % 2 else 1.0
            expo = 1.25 if power == 1 else 2.5 + 0.02 * a
            v = sign * anchor * (QUAD_BAND_LIMIT / k) ** expo
            vals[a, b] = v
            vals[b, a] = v
    return vals


def build_element_table(
    tag: str, max_n: int, scheme: QuadratureScheme = DEFAULT_SCHEME
) -> ElementTable:
    """Build the full element table for one operator tag, indices 0..max_n."""
    if tag not in TAGS:
        raise ValueError(f"unknown operator tag {tag!r}, expected one of {TAGS}")
    if max_n < 0:
        raise IndexOutOfRangeError("max_n must be non-negative")
    if max_n > TABLE_LIMIT:
        raise IndexOutOfRangeError(f"max_n above {TABLE_LIMIT} is not supported")
    if tag in _CLOSED_FORMS:
        vals = _banded_table(tag, max_n)
    else:
        power = 1 if tag == "lambda_xi" else 3
        vals = _abs_power_table(power, max_n, scheme)
    vals.setflags(write=False)
    return ElementTable(tag=tag, max_n=max_n, values=vals)


@lru_cache(maxsize=16)
def cached_element_table(tag: str, max_n: int) -> ElementTable:
    """Memoized build_element_table with the default quadrature scheme."""
    return build_element_table(tag, max_n)


def write_table_csv(table: ElementTable, stream) -> None:
    """Dump a table as CSV rows n,m,value with 17 significant digits."""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(["n", "m", "value"])
    for n in range(table.max_n + 1):
        for m in range(table.max_n + 1):
            writer.writerow([n, m, f"{table.values[n, m]:.17g}"])
