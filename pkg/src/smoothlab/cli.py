"""Command-line surface.  Every subcommand emits machine-readable JSON
(default) or CSV, deterministically: identical inputs give byte-identical
output regardless of --threads."""

from __future__ import annotations

import functools
import json
import sys
from fractions import Fraction

import click

from .abc_triples import abc_quality
from .arith import FactorizationError
from .binomial import binomial_membership
from .bounds import default_y, density_bound, stewart_bound
from .orders import SequenceSpec
from .smooth import (
    CutoffSpec,
    counting_report,
    enumerate_members,
    membership,
    order_divisor_primes,
    smooth_part_of_term,
    term_prime_log_sum,
)
from .windows import density_check, dyadic_partition, window_product

SCHEMA_VERSION = 1


def _parse_rational(value: str) -> Fraction:
    """Exact rational from 'P/Q' or a decimal literal (1.2 -> 6/5)."""
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise click.BadParameter(f"not a rational: {value!r}") from exc


class RationalParam(click.ParamType):
    name = "rational"

    def convert(self, value, param, ctx):
        if isinstance(value, Fraction):
            return value
        return _parse_rational(value)


RATIONAL = RationalParam()


def _fmt_real(x: float) -> str:
    return format(x, ".12g")


def _csv_cell(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return _fmt_real(v)
    if v is None:
        return ""
    return str(v)


def _json_default(v):
    if isinstance(v, Fraction):
        return str(v)
    raise TypeError(f"not JSON serializable: {v!r}")


def _emit(parameters: dict, results: list[dict], fmt: str, out: str | None):
    if fmt == "json":
        doc = {
            "schema_version": SCHEMA_VERSION,
            "parameters": {
                k: (str(v) if isinstance(v, Fraction) else v) for k, v in parameters.items()
            },
            "results": results,
        }
        text = json.dumps(doc, indent=2, default=_json_default) + "\n"
    else:
        if results:
            columns = list(results[0].keys())
        else:
            columns = []
        lines = [",".join(columns)]
        for row in results:
            lines.append(",".join(_csv_cell(row.get(c)) for c in columns))
        text = "\n".join(lines) + "\n"
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _factors_json(factors) -> list[list[int]]:
    return [[p, e] for p, e in factors]


def _factors_csv(factors) -> str:
    return ";".join(f"{p}^{e}" for p, e in factors)


def _cutoff(K: Fraction | None, theta: Fraction | None) -> CutoffSpec:
    if (K is None) == (theta is None):
        raise click.UsageError("exactly one of --K and --theta is required")
    if theta is not None:
        return CutoffSpec.power(theta)
    return CutoffSpec.linear(K)


def _handle_errors(f):
    @functools.wraps(f)
    def wrapper(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except FactorizationError as exc:
            click.echo(f"error: {exc} (unfactored cofactor {exc.cofactor})", err=True)
            sys.exit(3)
        except ValueError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(2)

    return wrapper


def _common(f):
    f = click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json",
                     show_default=True, help="Output format.")(f)
    f = click.option("--out", type=click.Path(dir_okay=False), default=None,
                     help="Write output to PATH instead of stdout.")(f)
    f = click.option("--threads", type=click.IntRange(min=1), default=1, show_default=True,
                     help="Worker threads; output is identical for any value.")(f)
    return f


def _cutoff_opts(f):
    f = click.option("--K", "K", type=RATIONAL, default=None,
                     help="Linear cutoff: y(n) = floor(K*n).")(f)
    f = click.option("--theta", type=RATIONAL, default=None,
                     help="Power cutoff: y(n) = floor(n**theta); excludes --K.")(f)
    return f


@click.group()
def main():
    """Exact smooth parts, orders and p-adic valuations of a^n - 1."""


@main.command("membership")
@click.option("--base", type=click.IntRange(min=2), required=True)
@click.option("--n", type=click.IntRange(min=1), required=True)
@_cutoff_opts
@click.option("--c", "c", type=RATIONAL, required=True)
@_common
@_handle_errors
def membership_cmd(base, n, K, theta, c, fmt, out, threads):
    """Decide whether the smooth part of base^n - 1 exceeds c^n."""
    cutoff = _cutoff(K, theta)
    v = membership(SequenceSpec(base), n, cutoff, c)
    params = {"base": base, "n": n, "cutoff": cutoff.describe(), "c": c}
    _emit(params, [{
        "n": v.n,
        "cutoff_y": cutoff.value_at(n),
        "log_s": v.log_s,
        "threshold": v.threshold,
        "member": v.member,
        "margin": v.margin,
        "exact_tiebreak_used": v.exact_tiebreak_used,
    }], fmt, out)


@main.command("enumerate")
@click.option("--base", type=click.IntRange(min=2), required=True)
@click.option("--N", "N", type=click.IntRange(min=0), required=True)
@_cutoff_opts
@click.option("--c", "c", type=RATIONAL, required=True)
@_common
@_handle_errors
def enumerate_cmd(base, N, K, theta, c, fmt, out, threads):
    """List the n <= N whose smooth part exceeds c^n."""
    cutoff = _cutoff(K, theta)
    members = enumerate_members(SequenceSpec(base), cutoff, c, N, threads=threads)
    params = {"base": base, "N": N, "cutoff": cutoff.describe(), "c": c}
    _emit(params, [{"n": n} for n in members], fmt, out)


@main.command("svalue")
@click.option("--base", type=click.IntRange(min=2), required=True)
@click.option("--n", type=click.IntRange(min=1), required=True)
@click.option("--y", type=click.IntRange(min=0), default=None,
              help="Explicit smoothness cutoff; overrides --K/--theta.")
@_cutoff_opts
@click.option("--materialize", is_flag=True, help="Include the exact integer value.")
@_common
@_handle_errors
def svalue_cmd(base, n, y, K, theta, materialize, fmt, out, threads):
    """Smooth part of base^n - 1 at one cutoff."""
    if y is None:
        y = _cutoff(K, theta).value_at(n)
    rec = smooth_part_of_term(SequenceSpec(base), n, y, materialize=materialize)
    params = {"base": base, "n": n, "y": y, "materialize": materialize}
    row = {
        "n": n,
        "cutoff_y": y,
        "factors": _factors_json(rec.factors) if fmt == "json" else _factors_csv(rec.factors),
        "log_value": rec.log_value,
    }
    if materialize:
        row["exact_value"] = str(rec.exact_value)
    _emit(params, [row], fmt, out)


@main.command("snk")
@click.option("--base", type=click.IntRange(min=2), required=True)
@click.option("--n", type=click.IntRange(min=1), required=True)
@click.option("--K", "K", type=RATIONAL, required=True)
@_common
@_handle_errors
def snk_cmd(base, n, K, fmt, out, threads):
    """Log-sum over primes dividing base^n - 1 below the cutoff, the
    per-prime order records, and the counting bound."""
    seq = SequenceSpec(base)
    rep = counting_report(seq, K, n)
    records = order_divisor_primes(seq, K, n)
    log_sum = term_prime_log_sum(seq, K, n)
    params = {"base": base, "n": n, "K": K}
    rows = [{
        "n": n,
        "prime_count": rep.prime_count,
        "log_sum": log_sum,
        "normalized": rep.normalized,
        "bound": rep.bound,
        "bound_holds": rep.bound_holds,
        "records": ([[r.p, r.ell, r.o] for r in records] if fmt == "json"
                    else ";".join(f"{r.p}:{r.ell}:{r.o}" for r in records)),
    }]
    _emit(params, rows, fmt, out)


@main.command("window")
@click.option("--base", type=click.IntRange(min=2), required=True)
@click.option("--N", "N", type=click.IntRange(min=2), required=True)
@click.option("--K", "K", type=RATIONAL, required=True)
@click.option("--c", "c", type=RATIONAL, default=None,
              help="Also count members in the window at this threshold.")
@_common
@_handle_errors
def window_cmd(base, N, K, c, fmt, out, threads):
    """Windowed product of smooth parts over (N/2, N], both evaluation
    orders."""
    rep = window_product(SequenceSpec(base), K, N, c=c)
    params = {"base": base, "N": N, "K": K, "c": c}
    rows = [{
        "N": N,
        "cutoff_y": rep.cutoff_y,
        "log_Q": rep.log_Q,
        "log_Q_by_prime": rep.log_Q_by_prime,
        "agreement_delta": rep.agreement_delta,
        "member_count": rep.member_count,
    }]
    _emit(params, rows, fmt, out)


@main.command("dyadic")
@click.option("--base", type=click.IntRange(min=2), required=True)
@click.option("--N", "N", type=click.IntRange(min=3), required=True)
@click.option("--K", "K", type=RATIONAL, required=True)
@click.option("--y", type=float, default=None,
              help="Partition threshold parameter; defaults to the built-in y(N).")
@_common
@_handle_errors
def dyadic_cmd(base, N, K, y, fmt, out, threads):
    """Two-bin split of primes by o_p*ln p/ell_p against 1/y."""
    if y is None:
        y = default_y(N)
    rep = dyadic_partition(SequenceSpec(base), K, N, y)
    params = {"base": base, "N": N, "K": K, "y": y}
    rows = [{
        "N": N,
        "y": rep.y,
        "Q1_size": rep.Q1_size,
        "Q2_size": rep.Q2_size,
        "S1": rep.S1,
        "S2": rep.S2,
        "I": rep.I,
    }]
    _emit(params, rows, fmt, out)


@main.command("bounds")
@click.option("--N", "N", type=click.IntRange(min=3), required=True)
@click.option("--p", "p", type=click.IntRange(min=17), default=None,
              help="Also evaluate the per-prime order bound at p.")
@click.option("--precision", type=click.Choice(["double", "high"]), default="double",
              show_default=True)
@click.option("--check-base", type=click.IntRange(min=2), default=None,
              help="Run the per-window density table for this base.")
@click.option("--check-c", type=RATIONAL, default=None)
@_cutoff_opts
@_common
@_handle_errors
def bounds_cmd(N, p, precision, check_base, check_c, K, theta, fmt, out, threads):
    """Threshold function y(N), density bound, optional per-prime bound,
    and the optional observational density table."""
    params = {"N": N, "p": p, "precision": precision}
    row = {
        "N": N,
        "default_y": float(default_y(N, precision)),
        "density_bound": float(density_bound(N, precision)),
    }
    if p is not None:
        row["stewart_bound"] = float(stewart_bound(p, precision))
    rows = [row]
    if check_base is not None:
        if check_c is None:
            raise click.UsageError("--check-c is required with --check-base")
        cutoff = _cutoff(K, theta)
        params.update({"check_base": check_base, "check_c": check_c,
                       "cutoff": cutoff.describe()})
        for r in density_check(SequenceSpec(check_base), cutoff, check_c, N):
            rows.append({
                "window_upper": r.upper,
                "member_count": r.member_count,
                "density_bound": r.bound,
                "ratio": r.ratio,
            })
    _emit(params, rows, fmt, out)


@main.command("abc")
@click.option("--base", type=click.IntRange(min=2), required=True)
@click.option("--n", type=click.IntRange(min=1), required=True)
@click.option("--K", "K", type=RATIONAL, required=True)
@click.option("--c", "c", type=RATIONAL, required=True)
@_common
@_handle_errors
def abc_cmd(base, n, K, c, fmt, out, threads):
    """Quality of the triple (base^n - 1, 1, base^n) and the smooth/rough
    split of the left side."""
    rep = abc_quality(SequenceSpec(base), n, K, c)
    params = {"base": base, "n": n, "K": K, "c": c}
    rows = [{
        "n": n,
        "A": str(rep.A),
        "B": str(rep.B),
        "C": str(rep.C),
        "rad_ABC": str(rep.rad_ABC),
        "quality": rep.quality,
        "s_value": str(rep.s_value),
        "t_value": str(rep.t_value),
        "log_t": rep.log_t,
        "cofactor_bound": rep.cofactor_bound,
        "cofactor_below_bound": rep.cofactor_below_bound,
    }]
    _emit(params, rows, fmt, out)


@main.command("binomial")
@click.option("--n", type=click.IntRange(min=1), default=None,
              help="Single index to report.")
@click.option("--N", "N", type=click.IntRange(min=1), default=None,
              help="Report every index 1..N.")
@_common
@_handle_errors
def binomial_cmd(n, N, fmt, out, threads):
    """Smooth-part report for central binomial coefficients."""
    if (n is None) == (N is None):
        raise click.UsageError("exactly one of --n and --N is required")
    ns = [n] if n is not None else list(range(1, N + 1))
    params = {"n": n, "N": N}
    rows = []
    for i in ns:
        rep = binomial_membership(i)
        rows.append({
            "n": i,
            "cutoff_y": rep.cutoff_y,
            "log_s": rep.log_s,
            "threshold": rep.threshold,
            "member": rep.member,
            "margin": rep.margin,
            "reconstruction_ok": rep.reconstruction_ok,
        })
    _emit(params, rows, fmt, out)


if __name__ == "__main__":
    main()
