import math

import mpmath
import pytest

from conical_heat_trace import DomainError, bernoulli, expansion_terms, i_j_closed
from conical_heat_trace.irrationality import d_j, d_j_mp, diagnostic_row, lower_bound, report, v_j

ODD_J = list(range(1, 42, 2))


@pytest.fixture(scope="module")
def rows():
    return report(41)


class TestWeights:
    def test_first_weight(self):
        """V_1 = pi^2/16 - pi^4/192"""
        assert v_j(1) == pytest.approx(math.pi**2 / 16 - math.pi**4 / 192, rel=1e-12)

    def test_first_ratio(self):
        """D_1 = 12/pi^2 * |B_2/B_4| = 60/pi^2"""
        assert d_j(1) == pytest.approx(60 / math.pi**2, rel=1e-14)

    @pytest.mark.parametrize("j", ODD_J)
    def test_ratio_bound(self, j):
        """D_j stays above its rational lower envelope; the gap shrinks like 3^-(j+1)"""
        with mpmath.workdps(60):
            envelope = mpmath.mpf(2 ** (j + 3) - 1) * (3 ** (j + 3) - 2) / (9 * (2 ** (j + 1) - 1) * (3 ** (j + 1) - 1))
            assert d_j_mp(j) > envelope

    @pytest.mark.parametrize("j", [1, 15, 41])
    def test_ratio_double_precision(self, j):
        """The float ratio agrees with the extended-precision one"""
        with mpmath.workdps(30):
            assert d_j(j) == pytest.approx(float(d_j_mp(j)), rel=1e-14)

    @pytest.mark.parametrize("j", [2, 0, -1])
    def test_odd_only(self, j):
        """The diagnostics are defined for odd j"""
        with pytest.raises(DomainError):
            v_j(j)
        with pytest.raises(DomainError):
            lower_bound(j)


class TestReport:
    def test_row_count(self, rows):
        """One row per odd j up to 41"""
        assert [row.j for row in rows] == ODD_J

    def test_weights_exceed_lower_bound(self, rows):
        """V_j > lower bound > 0 for every odd j"""
        for row in rows:
            assert row.v_j > row.lower_bound > 0

    def test_roots_increase(self, rows):
        """The (j+3)-th roots of the Taylor coefficients grow over the last rows"""
        tail = [row.root for row in rows[-5:]]
        assert all(a < b for a, b in zip(tail, tail[1:]))

    def test_weight_roots_stay_large(self, rows):
        """|V_j|^(1/(j+3)) >= 1/2 from j = 15 on"""
        assert all(row.v_root >= 0.5 for row in rows if row.j >= 15)

    def test_alternating_signs(self, rows):
        """Taylor coefficients carry the sign of B_{j+3}"""
        for row in rows:
            assert row.taylor_coeff * float(bernoulli(row.j + 3)) > 0

    def test_integrals(self, rows):
        """I_j and I_{j+2} come from the closed forms"""
        assert rows[0].i_j == i_j_closed(1)
        assert rows[0].i_j2 == i_j_closed(3)

    def test_matches_expansion(self):
        """Taylor coefficients agree with the expansion of F"""
        terms = expansion_terms(7)
        for j in (1, 3, 5, 7):
            assert diagnostic_row(j).taylor_coeff == pytest.approx(terms[j - 1].coefficient, rel=1e-14)

    def test_single_row(self):
        """j_max = 1 yields one row"""
        assert len(report(1)) == 1

    @pytest.mark.parametrize("j_max", [2, 43, 0])
    def test_bad_limit(self, j_max):
        """j_max is odd and at most 41"""
        with pytest.raises(DomainError):
            report(j_max)

    def test_warns_when_bound_fails(self, mocker, caplog):
        """A weight at or below its bound is logged"""
        mocker.patch("conical_heat_trace.irrationality.v_j", return_value=1e-30)
        report(3)
        assert "does not exceed its lower bound" in caplog.text
