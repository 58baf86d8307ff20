import time
from fractions import Fraction

import pytest

from nlslab.exponents import (
    StrichartzExponents,
    as_rational,
    check_subcritical,
    dual_pair_identity,
    report,
    solve_exponents,
    verify_exponents,
)


class TestCheckSubcritical:
    def test_known_critical_regularities(self):
        assert check_subcritical(3, 3)["s_c"] == Fraction(1, 2)
        assert check_subcritical(2, 3)["s_c"] == Fraction(0)
        assert check_subcritical(1, 5)["s_c"] == Fraction(0)
        assert check_subcritical(1, 3)["s_c"] == Fraction(-1, 2)

    def test_flags(self):
        flags = check_subcritical(3, 3)
        assert flags["h1_subcritical"] and not flags["l2_subcritical"]
        flags = check_subcritical(2, 3)
        assert flags["h1_subcritical"] and not flags["l2_subcritical"]
        flags = check_subcritical(1, 3)
        assert flags["h1_subcritical"] and flags["l2_subcritical"]

    def test_rational_inputs(self):
        assert check_subcritical(2, "7/3")["s_c"] == Fraction(1) - Fraction(3, 2)
        assert check_subcritical(1, Fraction(5, 2))["s_c"] == Fraction(1, 2) - Fraction(4, 3)

    def test_invalid(self):
        with pytest.raises(ValueError):
            check_subcritical(0, 3)
        with pytest.raises(ValueError):
            check_subcritical(1, 1)
        with pytest.raises(TypeError):
            as_rational(object())


class TestSolveExponents:
    def test_one_dimensional_quintic(self):
        e = solve_exponents(1, 5)
        assert e.beta == Fraction(3, 4)
        assert all(verify_exponents(e))
        assert e.in_range()

    def test_two_dimensional_cubic(self):
        e = solve_exponents(2, 3)
        assert all(verify_exponents(e))
        assert e.in_range()

    def test_three_dimensional_quintic_rejected(self):
        # 1/(p-1) = 1/4 is not strictly greater than (n-2)/4 = 1/4
        with pytest.raises(ValueError, match="not energy-subcritical"):
            solve_exponents(3, 5)

    def test_fractional_power(self):
        e = solve_exponents(2, "5/2")
        assert all(verify_exponents(e))
        assert dual_pair_identity(e)


class TestVerifyExponents:
    def test_perturbed_r0_breaks_relations(self):
        e = solve_exponents(1, 5)
        bad = StrichartzExponents(
            n=e.n, p=e.p, beta=e.beta, q0=e.q0, r0=e.r0 + 1, q1=e.q1, r1=e.r1
        )
        checks = verify_exponents(bad)
        assert checks[1] is False  # smoothing-pair identity
        assert checks[2] is False  # dual spatial gap
        assert checks[0] is True  # untouched pair still fine

    def test_degenerate_tuple_fails_multiple_relations(self):
        bad = StrichartzExponents(
            n=2,
            p=Fraction(3),
            beta=Fraction(1, 2),
            q0=Fraction(2),
            r0=Fraction(2),
            q1=Fraction(2),
            r1=Fraction(2),
        )
        checks = verify_exponents(bad)
        assert checks.count(False) >= 2
        assert not bad.in_range()


def _h1_subcritical_powers(n: int, count: int) -> list[Fraction]:
    # rationals spread over (1, p_max) with p_max respecting energy subcriticality
    p_max = Fraction(5) if n == 3 else Fraction(8)
    out = []
    for k in range(1, count + 1):
        p = 1 + (p_max - 1) * Fraction(k, count + 1)
        out.append(p)
    return out


def test_sweep_of_two_hundred_parameter_points():
    start = time.monotonic()
    total = 0
    for n in (1, 2, 3):
        for p in _h1_subcritical_powers(n, 67):
            e = solve_exponents(n, p)
            assert all(verify_exponents(e))
            assert e.in_range()
            # derived consequence of the gap relation: 2 < r1 < p + 1
            assert Fraction(2) < e.r1 < e.p + 1
            assert dual_pair_identity(e)
            total += 1
    elapsed = time.monotonic() - start
    assert total >= 200
    assert elapsed < 5.0


def test_report_format():
    e = solve_exponents(1, 5)
    text = report(e)
    assert text.startswith("# nlslab-exponents v1")
    assert "beta = 3/4" in text
    assert text.count("= ok") == 7
