"""Exact-arithmetic construction of admissible Strichartz exponent systems.

For an energy-subcritical power p the solver produces rationals
(beta, q0, r0, q1, r1) with 2 < q0, r0, q1, r1 < infinity and 0 < beta < 1
satisfying, exactly,

    2/q1 + n/r1 = n/2                      (wave-admissible pair)
    2/q0 + n/r0 = (n-2)/2 + beta           (beta-smoothing pair)
    1/r1 + (p-1)/r0 = 1 - 1/r1             (dual spatial gap)
    1/q1 + (p-1)/q0 < 1 - 1/q1             (strict temporal gap)
    r0 > p + 1                             (potential-energy window)

All arithmetic is over fractions.Fraction; p may be given as int, Fraction,
a string like "5/2", or a float (converted exactly from its binary value).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

RationalLike = Union[int, float, str, Fraction]

RELATION_NAMES = (
    "admissible_pair_q1_r1",
    "smoothing_pair_q0_r0",
    "dual_spatial_gap",
    "strict_temporal_gap",
    "potential_energy_window",
)


def as_rational(value: RationalLike) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as a rational")


@dataclass(frozen=True)
class StrichartzExponents:
    """Exact exponent tuple for dimension n and nonlinearity power p."""

    n: int
    p: Fraction
    beta: Fraction
    q0: Fraction
    r0: Fraction
    q1: Fraction
    r1: Fraction

    def in_range(self) -> bool:
        two = Fraction(2)
        return (
            all(two < e for e in (self.q0, self.r0, self.q1, self.r1))
            and Fraction(0) < self.beta < Fraction(1)
        )


def check_subcritical(n: int, p: RationalLike) -> dict:
    """Exact subcriticality flags and the critical regularity n/2 - 2/(p-1)."""
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    p = as_rational(p)
    if not p > 1:
        raise ValueError(f"power must exceed 1, got {p}")
    s_c = Fraction(n, 2) - Fraction(2) / (p - 1)
    return {
        "h1_subcritical": Fraction(1) / (p - 1) > Fraction(n - 2, 4),
        "l2_subcritical": s_c < 0,
        "s_c": s_c,
    }


def solve_exponents(n: int, p: RationalLike) -> StrichartzExponents:
    """Constructive solution: beta at the midpoint of its admissible window,
    r0 the first admissible integer offset above max(p+1, 2), then r1 and q1
    determined by the gap and admissibility identities."""
    p = as_rational(p)
    flags = check_subcritical(n, p)
    if not flags["h1_subcritical"]:
        raise ValueError(f"(n, p) = ({n}, {p}) is not energy-subcritical")

    lower = max(Fraction(0), Fraction(n - 2, 2))
    upper = min(Fraction(n, 2), Fraction(2) / (p - 1))
    target = (lower + upper) / 2  # (n-2)/2 + beta
    beta = target - Fraction(n - 2, 2)

    base = max(p + 1, Fraction(2))
    r0 = None
    q0 = None
    for k in range(1, 10**6 + 1):
        candidate = base + k
        gap = target - Fraction(n) / candidate
        if 0 < gap < 1:
            r0 = candidate
            q0 = Fraction(2) / gap
            break
    if r0 is None or q0 is None:
        raise RuntimeError("no admissible r0 found; the construction should always succeed")

    r1 = Fraction(2) / (1 - (p - 1) / r0)
    q1 = Fraction(2) / (Fraction(n, 2) - Fraction(n) / r1)

    result = StrichartzExponents(n=n, p=p, beta=beta, q0=q0, r0=r0, q1=q1, r1=r1)
    if not result.in_range() or not all(verify_exponents(result)):
        raise RuntimeError(f"constructed exponents violate their contract: {result}")
    return result


def verify_exponents(e: StrichartzExponents) -> list[bool]:
    """Each defining relation checked independently and exactly; order follows
    RELATION_NAMES."""
    n = Fraction(e.n)
    return [
        Fraction(2) / e.q1 + n / e.r1 == n / 2,
        Fraction(2) / e.q0 + n / e.r0 == (n - 2) / 2 + e.beta,
        1 / e.r1 + (e.p - 1) / e.r0 == 1 - 1 / e.r1,
        1 / e.q1 + (e.p - 1) / e.q0 < 1 - 1 / e.q1,
        e.r0 > e.p + 1,
    ]


def dual_pair_identity(e: StrichartzExponents) -> bool:
    """2/q1' + n/r1' = (n+4)/2 with 1/x' = 1 - 1/x, a consequence of the
    admissible-pair relation; holds exactly for every solution."""
    q1_dual = 1 - 1 / e.q1
    r1_dual = 1 - 1 / e.r1
    return 2 * q1_dual + Fraction(e.n) * r1_dual == Fraction(e.n + 4, 2)


def report(e: StrichartzExponents) -> str:
    """Structured text record of the tuple and its verification."""
    lines = [
        "# nlslab-exponents v1",
        f"n = {e.n}",
        f"p = {e.p}",
        f"beta = {e.beta}",
        f"q0 = {e.q0}",
        f"r0 = {e.r0}",
        f"q1 = {e.q1}",
        f"r1 = {e.r1}",
    ]
    for name, ok in zip(RELATION_NAMES, verify_exponents(e)):
        lines.append(f"relation {name} = {'ok' if ok else 'violated'}")
    lines.append(f"relation dual_pair_identity = {'ok' if dual_pair_identity(e) else 'violated'}")
    lines.append(f"range 2 < q0,r0,q1,r1 < inf and 0 < beta < 1 = {'ok' if e.in_range() else 'violated'}")
    return "\n".join(lines) + "\n"
