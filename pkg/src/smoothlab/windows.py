"""Windowed products of smooth parts over (N/2, N], per-prime valuation
sums, and the two-bin split of primes by o_p * ln p / ell_p.

Everything here is finite and exact (or double precision where a real
number is unavoidable); nothing asserts an asymptotic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .arith import is_prime, primes_upto, valuation
from .bounds import density_bound, stewart_bound
from .orders import SequenceSpec, order_record, term_valuation_direct
from .smooth import CutoffSpec, membership, smooth_part_of_term


def _window(N: int) -> range:
    """Integers n with N/2 < n <= N."""
    return range(N // 2 + 1, N + 1)


def _count_multiples_in_window(m: int, N: int) -> int:
    """#{N/2 < n <= N : m | n}."""
    return N // m - (N // 2) // m


@dataclass(frozen=True)
class WindowReport:
    N: int
    K: Fraction
    cutoff_y: int
    log_Q: float  # n-major evaluation
    log_Q_by_prime: float  # p-major evaluation
    per_prime_contributions: list[tuple[int, int, float]]  # (p, sum of v_p, sum * ln p)
    member_count: int | None = None

    @property
    def agreement_delta(self) -> float:
        return abs(self.log_Q - self.log_Q_by_prime)


def window_product(seq: SequenceSpec, K, N: int, c=None) -> WindowReport:
    """log of prod over n in (N/2, N] of s_{floor(KN)}(a^n - 1), computed
    twice: summing over n, and exchanging summation to run over primes.

    member_count (against the threshold c^n at cutoff Kn) is filled only
    when c is supplied.
    """
    if N < 2:
        raise ValueError("N must be >= 2")
    K = Fraction(K)
    y = (K.numerator * N) // K.denominator
    a = seq.base

    log_q = math.fsum(smooth_part_of_term(seq, n, y).log_value for n in _window(N))

    contributions = []
    for p in primes_upto(y):
        if a % p == 0:
            continue
        total = sum(term_valuation_direct(seq, n, p) for n in _window(N))
        if total:
            contributions.append((p, total, total * math.log(p)))
    log_q_by_prime = math.fsum(c3 for _, _, c3 in contributions)

    member_count = None
    if c is not None:
        cutoff = CutoffSpec.linear(K)
        member_count = sum(1 for n in _window(N) if membership(seq, n, cutoff, c).member)

    return WindowReport(
        N=N,
        K=K,
        cutoff_y=y,
        log_Q=log_q,
        log_Q_by_prime=log_q_by_prime,
        per_prime_contributions=contributions,
        member_count=member_count,
    )


def prime_window_valuation_sum(seq: SequenceSpec, p: int, N: int) -> tuple[int, int]:
    """Sum of v_p(a^n - 1) over the window, both directly and via the
    order data: o_p * #(multiples of ell_p) + sum over k >= 1 of
    #(multiples of ell_p * p^k).  The two must agree exactly.
    """
    if p == 2:
        raise ValueError("p = 2 has its own formula; use even_prime_window_sum")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if seq.base % p == 0:
        raise ValueError("p divides the base")
    if N < 1:
        raise ValueError("N must be >= 1")

    direct = sum(term_valuation_direct(seq, n, p) for n in _window(N))

    rec = order_record(seq, p)
    formula = rec.o * _count_multiples_in_window(rec.ell, N)
    m = rec.ell * p
    while m <= N:
        formula += _count_multiples_in_window(m, N)
        m *= p
    return direct, formula


def even_prime_window_sum(seq: SequenceSpec, N: int) -> int:
    """Exact sum of v_2(a^n - 1) over n in (N/2, N] via the p = 2
    valuation rule; 0 for even bases."""
    if N < 1:
        raise ValueError("N must be >= 1")
    a = seq.base
    if a % 2 == 0:
        return 0
    o2 = order_record(seq, 2).o
    v_a1 = valuation(a + 1, 2)
    total = 0
    for n in _window(N):
        if n % 2 == 1:
            total += o2
        else:
            total += o2 + v_a1 + valuation(n // 2, 2)
    return total


def _dyadic_index(ell: int) -> int:
    """i with ell in (2^i, 2^(i+1)]; ell = 1 maps to -1."""
    return (ell - 1).bit_length() - 1


@dataclass(frozen=True)
class DyadicReport:
    N: int
    K: Fraction
    y: float
    ratios: list[tuple[int, float]]  # (p, o_p * ln p / ell_p)
    Q1_size: int
    Q2_size: int
    S1: float  # N * sum of ratios over the small bin
    S2: float  # trivial estimate N * #Q2
    I: int  # max dyadic index of ell_p over Q2; -1 when Q2 empty
    stewart_values: list[tuple[int, float]]


def dyadic_partition(seq: SequenceSpec, K, N: int, y: float) -> DyadicReport:
    """Split the primes p <= floor(KN) (p not dividing the base) by
    whether o_p * ln p / ell_p falls below 1/y."""
    if y <= 0:
        raise ValueError("y must be positive")
    if N < 1:
        raise ValueError("N must be >= 1")
    K = Fraction(K)
    cutoff = (K.numerator * N) // K.denominator
    a = seq.base
    threshold = 1.0 / y

    ratios = []
    q1_sum = 0.0
    q1 = q2 = 0
    max_ell_q2 = 0
    stewart_values = []
    for p in primes_upto(cutoff):
        if a % p == 0:
            continue
        rec = order_record(seq, p)
        r = rec.o * math.log(p) / rec.ell
        ratios.append((p, r))
        if r < threshold:
            q1 += 1
            q1_sum += r
        else:
            q2 += 1
            max_ell_q2 = max(max_ell_q2, rec.ell)
            if p >= 17:
                stewart_values.append((p, stewart_bound(p)))

    return DyadicReport(
        N=N,
        K=K,
        y=y,
        ratios=ratios,
        Q1_size=q1,
        Q2_size=q2,
        S1=N * q1_sum,
        S2=float(N * q2),
        I=_dyadic_index(max_ell_q2) if q2 else -1,
        stewart_values=stewart_values,
    )


@dataclass(frozen=True)
class DensityRow:
    upper: float  # window is (upper/2, upper]
    member_count: int
    bound: float | None  # density bound at floor(upper), when defined
    ratio: float | None


def density_check(seq: SequenceSpec, cutoff: CutoffSpec, c, N: int) -> list[DensityRow]:
    """Member counts per dyadic window (N/2^(i+1), N/2^i] against the
    density bound.  Observational: ratios are reported, nothing is
    asserted."""
    if N < 3:
        raise ValueError("N must be >= 3")
    members = set()
    for n in range(1, N + 1):
        if membership(seq, n, cutoff, c).member:
            members.add(n)
    rows = []
    upper = float(N)
    for _ in range(math.ceil(math.log2(N))):
        lower = upper / 2
        count = sum(1 for n in members if lower < n <= upper)
        m = int(upper)
        if m >= 3:
            bound = density_bound(m)
            ratio = count / bound
        else:
            bound = ratio = None
        rows.append(DensityRow(upper=upper, member_count=count, bound=bound, ratio=ratio))
        upper = lower
    return rows
