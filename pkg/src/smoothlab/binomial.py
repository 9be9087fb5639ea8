"""Central binomial coefficients as the contrast case: all their prime
factors sit below 2n, so the 2n-smooth part is the whole coefficient."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .arith import Factorization, primes_upto


def binomial_valuation(n: int, p: int) -> int:
    """v_p(C(2n, n)) by counting the carries when n + n is added in
    base p; 0 once p > 2n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if p > 2 * n:
        return 0
    carries = 0
    t = n
    carry = 0
    while t > 0 or carry:
        digit = t % p
        carry = 1 if 2 * digit + carry >= p else 0
        carries += carry
        t //= p
    return carries


@dataclass(frozen=True)
class BinomialReport:
    n: int
    cutoff_y: int  # 2n
    factors: Factorization
    smooth_part: int  # reconstructed product; equals C(2n, n)
    reconstruction_ok: bool
    log_s: float
    threshold: float  # n * ln 2
    member: bool  # strict smooth_part > 2^n
    margin: float


def binomial_membership(n: int) -> BinomialReport:
    """s_{2n}(C(2n, n)) assembled from carry counts, checked against the
    coefficient itself, and compared (strictly) with 2^n.

    n = 1 is the boundary: 2 > 2 fails, so it is reported non-member.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    entries = []
    for p in primes_upto(2 * n):
        e = binomial_valuation(n, p)
        if e:
            entries.append((p, e))
    factors = Factorization(tuple(entries))
    s = factors.value()
    log_s = factors.log_value()
    threshold = n * math.log(2)
    return BinomialReport(
        n=n,
        cutoff_y=2 * n,
        factors=factors,
        smooth_part=s,
        reconstruction_ok=s == math.comb(2 * n, n),
        log_s=log_s,
        threshold=threshold,
        member=s > 2**n,
        margin=log_s - threshold,
    )
