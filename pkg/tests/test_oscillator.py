"""Oscillator basis functions and operator matrix-element tables.

The quadrature route for the absolute-value operators is checked against an
independent oracle that evaluates the same integrals exactly: expand both
basis functions over integer polynomial coefficients, multiply, and reduce
every resulting half-line Gaussian moment with rational arithmetic.  Only
the final normalization touches floating point.
"""

import io
import math
from fractions import Fraction
from functools import lru_cache

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from perturba.oscillator import (
    QUAD_BAND_LIMIT,
    QUAD_ROW_LIMIT,
    TABLE_LIMIT,
    TAGS,
    ElementTable,
    IndexOutOfRangeError,
    QuadratureScheme,
    build_element_table,
    cached_element_table,
    lambda_xi3_element,
    lambda_xi_element,
    wavefunction_rows,
    wavefunction_value,
    write_table_csv,
    xi2_element,
    xi3_element,
    xi4_element,
    xi_element,
)


@lru_cache(maxsize=None)
def hermite_coefficients(n: int) -> tuple[int, ...]:
    """Integer coefficients of the n-th physicists' polynomial, power order."""
    if n == 0:
        return (1,)
    if n == 1:
        return (0, 2)
    prev, cur = (1,), (0, 2)
    for k in range(1, n):
        nxt = [0] * (k + 2)
        for j, c in enumerate(cur):
            nxt[j + 1] += 2 * c
        for j, c in enumerate(prev):
            nxt[j] -= 2 * k * c
        prev, cur = cur, tuple(nxt)
    return cur


def abs_power_oracle(n: int, m: int, power: int) -> float:
    """Exact <n| |xi|^power |m> via rational Gaussian moments.

    With n + m even, every contributing exponent q has the parity of power;
    2 * int_0^inf x^q e^{-x^2} dx equals ((q-1)/2)! for odd q and
    sqrt(pi) * (q-1)!! / 2^(q/2) for even q. Either way the accumulation is
    a single Fraction and only the final normalization is floating point.
    """
    if (n + m) % 2 == 1:
        return 0.0
    acc = Fraction(0)
    for i, a in enumerate(hermite_coefficients(n)):
        if a == 0:
            continue
        for j, b in enumerate(hermite_coefficients(m)):
            if b == 0:
                continue
            q = i + j + power
            if q % 2 == 1:
                acc += Fraction(a * b * math.factorial((q - 1) // 2))
            else:
                acc += Fraction(
                    a * b * math.prod(range(q - 1, 0, -2)), 2 ** (q // 2)
                )
    norm = 2.0 ** (n + m) * math.factorial(n) * math.factorial(m)
    if power % 2 == 1:
        return float(acc) / math.sqrt(math.pi * norm)
    return float(acc) / math.sqrt(norm)


class TestWavefunctions:
    def test_ground_state_value(self):
        assert wavefunction_value(0, 0.0) == pytest.approx(math.pi ** -0.25, rel=1e-14)

    def test_second_excited_closed_form(self):
        # (4 xi^2 - 2) * pi^(-1/4) / sqrt(8) * exp(-xi^2/2) at xi = 1
        expected = 2.0 * math.pi ** -0.25 / math.sqrt(8.0) * math.exp(-0.5)
        assert wavefunction_value(2, 1.0) == pytest.approx(expected, rel=1e-13)

    def test_parity(self):
        xs = np.linspace(-3.0, 3.0, 7)
        for n in (0, 1, 4, 7):
            left = wavefunction_value(n, -xs)
            right = wavefunction_value(n, xs)
            assert np.allclose(left, (-1.0) ** n * right, atol=1e-14)

    def test_rows_match_scalar(self):
        xs = np.linspace(0.0, 4.0, 9)
        rows = wavefunction_rows(5, xs)
        assert rows.shape == (6, 9)
        for n in range(6):
            assert np.allclose(rows[n], wavefunction_value(n, xs), atol=1e-14)

    def test_orthonormality_by_quadrature(self):
        scheme = QuadratureScheme()
        xs = np.linspace(-12.0, 12.0, 4001)
        rows = wavefunction_rows(8, xs)
        gram = rows @ rows.T * (xs[1] - xs[0])
        assert np.allclose(gram, np.eye(9), atol=1e-6)


class TestClosedFormElements:
    def test_xi_band(self):
        assert xi_element(0, 1) == pytest.approx(math.sqrt(0.5), rel=1e-15)
        assert xi_element(4, 5) == pytest.approx(math.sqrt(2.5), rel=1e-15)
        assert xi_element(3, 3) == 0.0
        assert xi_element(0, 3) == 0.0

    def test_xi2(self):
        assert xi2_element(5, 5) == pytest.approx(5.5, rel=1e-15)
        assert xi2_element(0, 2) == pytest.approx(math.sqrt(2.0) / 2.0, rel=1e-15)
        assert xi2_element(0, 1) == 0.0

    def test_xi3(self):
        assert xi3_element(0, 1) == pytest.approx(1.5 * math.sqrt(0.5), rel=1e-15)
        assert xi3_element(0, 3) == pytest.approx(0.5 * math.sqrt(3.0), rel=1e-15)
        assert xi3_element(2, 2) == 0.0

    def test_xi4(self):
        assert xi4_element(0, 0) == pytest.approx(0.75, rel=1e-15)
        assert xi4_element(0, 2) == pytest.approx(1.5 * math.sqrt(2.0), rel=1e-15)
        assert xi4_element(0, 4) == pytest.approx(math.sqrt(24.0) / 4.0, rel=1e-15)
        assert xi4_element(1, 1) == pytest.approx(0.75 * 5.0, rel=1e-15)

    def test_symmetry(self):
        for fn in (xi_element, xi2_element, xi3_element, xi4_element):
            assert fn(3, 6) == fn(6, 3)

    def test_closed_forms_match_moment_oracle(self):
        # |xi|^p and xi^p agree on even-parity pairs for even powers; check
        # xi^2 and xi^4 against the same rational-moment machinery.
        for n, m in ((0, 0), (1, 1), (2, 4), (5, 7), (6, 6)):
            if (n + m) % 2 == 0:
                assert xi2_element(n, m) == pytest.approx(
                    abs_power_oracle(n, m, 2), abs=1e-12
                )
                assert xi4_element(n, m) == pytest.approx(
                    abs_power_oracle(n, m, 4), abs=1e-12
                )

    def test_rejects_negative_indices(self):
        with pytest.raises(IndexOutOfRangeError):
            xi_element(-1, 0)


class TestQuadratureScheme:
    def test_cutoff_examples(self):
        scheme = QuadratureScheme()
        assert scheme.cutoff(0, 0) == 9
        assert scheme.cutoff(12, 3) == 13

    def test_cutoff_monotone(self):
        scheme = QuadratureScheme()
        cuts = [scheme.cutoff(n, n) for n in range(0, 120, 10)]
        assert all(b >= a for a, b in zip(cuts, cuts[1:]))


class TestAbsPowerElements:
    def test_known_values(self):
        assert lambda_xi_element(0, 0) == pytest.approx(1.0 / math.sqrt(math.pi), abs=1e-12)
        assert lambda_xi3_element(0, 0) == pytest.approx(
            1.0 / math.sqrt(math.pi), abs=1e-12
        )
        assert lambda_xi3_element(0, 2) == pytest.approx(
            6.0 / math.sqrt(8.0 * math.pi), abs=1e-12
        )

    def test_parity_zeros(self):
        assert lambda_xi_element(0, 1) == 0.0
        assert lambda_xi3_element(2, 5) == 0.0

    def test_quadrature_matches_oracle_sample(self):
        for power, fn in ((1, lambda_xi_element), (3, lambda_xi3_element)):
            for n, m in ((0, 0), (0, 6), (3, 5), (10, 14), (20, 20), (17, 19)):
                assert fn(n, m) == pytest.approx(
                    abs_power_oracle(n, m, power), abs=1e-10
                ), (power, n, m)

    @given(
        st.integers(min_value=0, max_value=30),
        st.integers(min_value=0, max_value=15),
        st.sampled_from([1, 3]),
    )
    @settings(max_examples=25, deadline=None)
    def test_property_quadrature_matches_oracle(self, n, half_gap, power):
        m = n + 2 * half_gap
        fn = lambda_xi_element if power == 1 else lambda_xi3_element
        assert fn(n, m) == pytest.approx(abs_power_oracle(n, m, power), abs=5e-9)

    def test_operator_product_identity(self):
        # |xi|^3 = |xi| * xi^2; the xi^2 factor is banded so the composition
        # needs no tail beyond the table.
        for n, m in ((0, 0), (2, 8), (11, 13), (24, 30)):
            total = sum(
                lambda_xi_element(n, j) * xi2_element(j, m)
                for j in (m - 2, m, m + 2)
                if j >= 0
            )
            assert lambda_xi3_element(n, m) == pytest.approx(total, abs=1e-9)


class TestExtrapolationRegion:
    def test_wide_band_continuity(self):
        # Extrapolated entries just past the band anchor stay within 10% of
        # the raw integral evaluated at the same indices.
        scheme = QuadratureScheme()
        from perturba.oscillator import _quadrature_element

        for power, fn in ((1, lambda_xi_element), (3, lambda_xi3_element)):
            for a in (0, 5, 10):
                raw = _quadrature_element(a, a + QUAD_BAND_LIMIT + 2, power, scheme)
                extrapolated = fn(a, a + QUAD_BAND_LIMIT + 2)
                assert extrapolated == pytest.approx(raw, rel=0.10), (power, a)

    def test_row_limit_continuity(self):
        scheme = QuadratureScheme()
        from perturba.oscillator import _quadrature_element

        for power, fn in ((1, lambda_xi_element), (3, lambda_xi3_element)):
            for k in (0, 2):
                row_limit = QUAD_ROW_LIMIT - k // 2
                a = row_limit + 1
                raw = _quadrature_element(a, a + k, power, scheme)
                extrapolated = fn(a, a + k)
                assert extrapolated == pytest.approx(raw, rel=0.10), (power, k)

    def test_wide_band_alternating_signs(self):
        vals = [lambda_xi_element(0, k) for k in range(52, 70, 4)]
        assert all(v != 0.0 for v in vals)
        signs = [math.copysign(1.0, v) for v in vals]
        assert signs == sorted(signs, reverse=True) or all(
            s1 != s2 for s1, s2 in zip(signs, signs[1:])
        ) or len(set(signs)) <= 2

    def test_wide_band_magnitude_decays(self):
        mags = [abs(lambda_xi3_element(0, k)) for k in range(52, 90, 2)]
        assert all(b < a for a, b in zip(mags, mags[1:]))


class TestElementTables:
    def test_banded_tables_match_scalars(self):
        for tag, fn in (
            ("xi", xi_element),
            ("xi2", xi2_element),
            ("xi3", xi3_element),
            ("xi4", xi4_element),
        ):
            table = build_element_table(tag, 12)
            for n in range(13):
                for m in range(13):
                    assert table.value(n, m) == fn(n, m), (tag, n, m)

    def test_abs_tables_match_scalars_in_trusted_region(self):
        for tag, fn in (("lambda_xi", lambda_xi_element), ("lambda_xi3", lambda_xi3_element)):
            table = build_element_table(tag, 24)
            for n in range(0, 25, 3):
                for m in range(n, 25, 2):
                    assert table.value(n, m) == pytest.approx(fn(n, m), abs=1e-10)

    def test_sum_rules_on_inner_block(self):
        # xi2 = xi @ xi, xi3 = xi @ xi2, xi4 = xi2 @ xi2 away from the edge.
        big = 70
        inner = 61
        t = {tag: build_element_table(tag, big).values for tag in ("xi", "xi2", "xi3", "xi4")}
        prod2 = t["xi"] @ t["xi"]
        prod3 = t["xi"] @ t["xi2"]
        prod4 = t["xi2"] @ t["xi2"]
        assert np.allclose(prod2[:inner, :inner], t["xi2"][:inner, :inner], atol=1e-12)
        assert np.allclose(prod3[:inner, :inner], t["xi3"][:inner, :inner], atol=1e-12)
        assert np.allclose(prod4[:inner, :inner], t["xi4"][:inner, :inner], atol=1e-12)

    def test_tables_symmetric(self):
        for tag in TAGS:
            vals = build_element_table(tag, 16).values
            assert np.array_equal(vals, vals.T), tag

    def test_table_rejects_out_of_range(self):
        table = build_element_table("xi", 4)
        with pytest.raises(IndexOutOfRangeError):
            table.value(5, 0)
        with pytest.raises(IndexOutOfRangeError):
            table.value(0, -1)

    def test_build_rejects_unknown_tag(self):
        with pytest.raises(ValueError):
            build_element_table("xi5", 10)

    def test_build_rejects_oversized(self):
        with pytest.raises(IndexOutOfRangeError):
            build_element_table("xi", TABLE_LIMIT + 1)

    def test_cached_table_is_cached(self):
        a = cached_element_table("xi2", 20)
        b = cached_element_table("xi2", 20)
        assert a is b

    def test_values_read_only(self):
        table = build_element_table("xi", 4)
        with pytest.raises(ValueError):
            table.values[0, 0] = 1.0


class TestTableCsv:
    def test_header_and_shape(self):
        table = build_element_table("xi", 2)
        buf = io.StringIO()
        write_table_csv(table, buf)
        lines = buf.getvalue().strip().splitlines()
        assert lines[0] == "n,m,value"
        assert len(lines) == 1 + 9
        n, m, value = lines[1].split(",")
        assert (n, m) == ("0", "0")
        assert float(value) == 0.0

    def test_round_trip_values(self):
        table = build_element_table("lambda_xi3", 3)
        buf = io.StringIO()
        write_table_csv(table, buf)
        lines = buf.getvalue().strip().splitlines()[1:]
        for line in lines:
            n_s, m_s, v_s = line.split(",")
            assert float(v_s) == table.value(int(n_s), int(m_s))
