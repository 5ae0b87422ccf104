"""Verification sweeps: check registry, parallel execution, report emission.

A job names a field, a check, and a scope (everything, one witness, or a
seeded sample).  The witness domain is split into contiguous blocks, one
per worker, and block results are concatenated in block order, so output
is byte-identical regardless of worker count.  Wall time is tracked on the
report but never written to the output stream for the same reason.
"""

from __future__ import annotations

import json
import os
import random
import time
from dataclasses import dataclass
from multiprocessing import Pool
from typing import Callable, Optional, Sequence, TextIO

from . import kloos, padic
from .cyclo import CycInt
from .ff import FFElem, FieldCtx, FieldError, make_field
from .kloos import CongruenceReport


class JobError(ValueError):
    """Invalid job configuration: unknown check, bad scope, bad field."""


@dataclass(frozen=True)
class VerificationJob:
    p: int
    n: int
    check: str
    modulus: Optional[tuple[int, ...]] = None
    scope: tuple = ("all",)
    jobs: Optional[int] = None
    precision: Optional[int] = None


@dataclass
class SweepReport:
    job: dict
    total: int
    cases: list[CongruenceReport]
    failures: list[CongruenceReport]
    histogram: Optional[dict]
    wall_time: float


@dataclass(frozen=True)
class CheckDef:
    domain: str                      # element | exponent | aggregate
    needs_padic: bool
    default_precision: Optional[int]
    min_precision: int
    requires: Callable[[int, int], Optional[str]]


def _any(p: int, n: int) -> Optional[str]:
    return None


def _p3(p: int, n: int) -> Optional[str]:
    return None if p == 3 else "requires p = 3"


def _p3_n2(p: int, n: int) -> Optional[str]:
    if p != 3:
        return "requires p = 3"
    return None if n >= 2 else "requires n >= 2"


def _p3_n3(p: int, n: int) -> Optional[str]:
    if p != 3:
        return "requires p = 3"
    return None if n >= 3 else "requires n >= 3"


CHECKS: dict[str, CheckDef] = {
    "thm1": CheckDef("element", False, None, 0, _any),
    "mod9": CheckDef("element", False, None, 0, _p3_n2),
    "mod27": CheckDef("element", False, None, 0, _p3_n3),
    "fourier": CheckDef("element", True, 3, 3, _p3_n3),
    "identities": CheckDef("element", True, 3, 1, _p3_n3),
    "moisio": CheckDef("element", False, None, 0, _any),
    "wan": CheckDef("element", False, None, 0, _any),
    "weil": CheckDef("element", False, None, 0, _p3),
    "stickelberger": CheckDef("exponent", True, 2, 1, _any),
    "wt1": CheckDef("exponent", True, 3, 3, _p3_n3),
    "spectrum": CheckDef("aggregate", False, None, 0, _any),
}


def _case_reports(check: str, ctx: FieldCtx, uctx, idx: int) -> list[CongruenceReport]:
    if check in ("stickelberger", "wt1"):
        if check == "stickelberger":
            return [padic.check_stickelberger(uctx, idx)]
        return [padic.check_gauss_square_mod27(uctx, idx)]
    elem = ctx.element_at(idx)
    if check == "thm1":
        return [kloos.check_conjugate_product(ctx, elem)]
    if check == "mod9":
        return [kloos.check_mod9(ctx, elem)]
    if check == "mod27":
        return [kloos.check_mod27(ctx, elem)]
    if check == "moisio":
        return [kloos.check_min_poly_reduction(ctx, elem)]
    if check == "wan":
        return [kloos.check_min_poly_degree(ctx, elem)]
    if check == "weil":
        return [kloos.check_weil_bound(ctx, elem)]
    if check == "fourier":
        return [padic.check_fourier_mod27(uctx, elem)]
    if check == "identities":
        return list(padic.identity_reports(uctx, elem))
    raise JobError(f"unknown check {check!r}")


def _block_worker(payload: tuple) -> list:
    p, n, modulus, check, precision, indices = payload
    ctx = make_field(p, n, modulus)
    if check == "spectrum":
        return [kloos._counts_by_index(ctx, k) for k in indices]
    uctx = padic.lift_field(ctx, precision) if CHECKS[check].needs_padic else None
    out: list[CongruenceReport] = []
    for idx in indices:
        out.extend(_case_reports(check, ctx, uctx, idx))
    return out


def _resolve_scope(job: VerificationJob, ctx: FieldCtx, domain: str) -> tuple[list[int], dict]:
    q = ctx.q
    kind = job.scope[0]
    if domain == "aggregate" and kind != "all":
        raise JobError(f"check {job.check!r} only supports a full sweep (--all)")
    if kind == "all":
        indices = list(range(q)) if domain != "exponent" else list(range(1, q - 1))
        return indices, {"kind": "all"}
    if kind == "element":
        if domain == "exponent":
            raise JobError(
                f"check {job.check!r} sweeps Gauss-sum indices; use --j, --all or --sample")
        elem = ctx.element(job.scope[1])
        return [ctx.index(elem)], {"kind": "element", "element": list(elem.coeffs)}
    if kind == "exponent":
        if domain != "exponent":
            raise JobError(
                f"check {job.check!r} sweeps field elements; use --a, --all or --sample")
        j = job.scope[1]
        if not 1 <= j <= q - 2:
            raise JobError(f"index {j} outside [1, {q - 2}]")
        return [j], {"kind": "exponent", "j": j}
    if kind == "sample":
        count, seed = job.scope[1], job.scope[2]
        pool = range(q) if domain != "exponent" else range(1, q - 1)
        if not 0 <= count <= len(pool):
            raise JobError(f"sample size {count} outside [0, {len(pool)}]")
        indices = sorted(random.Random(seed).sample(pool, count))
        return indices, {"kind": "sample", "count": count, "seed": seed}
    raise JobError(f"unknown scope {kind!r}")


def _split_blocks(indices: Sequence[int], workers: int) -> list[tuple[int, ...]]:
    if not indices:
        return []
    workers = max(1, min(workers, len(indices)))
    size, extra = divmod(len(indices), workers)
    blocks, start = [], 0
    for w in range(workers):
        stop = start + size + (1 if w < extra else 0)
        blocks.append(tuple(indices[start:stop]))
        start = stop
    return blocks


def _spectrum_reports(ctx: FieldCtx, counts_list: list[tuple[int, ...]]):
    p = ctx.p
    hist: dict = {}
    totals = [0] * p
    for counts in counts_list:
        value = CycInt.from_power_counts(p, counts)
        key = value.as_rational() if p == 3 else value.coords
        hist[key] = hist.get(key, 0) + 1
        for t, c in enumerate(counts):
            totals[t] += c
    total_value = CycInt.from_power_counts(p, totals)
    checksum = total_value.as_rational()
    reports = [CongruenceReport(
        "spectrum/checksum", checksum if checksum is not None else total_value.coords,
        ctx.q, None, checksum == ctx.q, "sum-over-field")]
    if p == 3 and ctx.n > 1:
        for key in sorted(hist):
            reports.append(CongruenceReport(
                "spectrum/divisible-by-3", key % 3, 0, 3, key % 3 == 0, key))
    ordered = dict(sorted(hist.items()))
    return reports, ordered


def run_verification(job: VerificationJob) -> SweepReport:
    t0 = time.perf_counter()
    if job.check not in CHECKS:
        raise JobError(f"unknown check {job.check!r}; choose from {sorted(CHECKS)}")
    cd = CHECKS[job.check]
    try:
        ctx = make_field(job.p, job.n, job.modulus)
    except FieldError as e:
        raise JobError(str(e)) from e
    problem = cd.requires(job.p, job.n)
    if problem:
        raise JobError(f"check {job.check!r} {problem} (field has p={job.p}, n={job.n})")
    precision = job.precision if job.precision is not None else cd.default_precision
    if cd.needs_padic and (precision is None or precision < cd.min_precision):
        raise JobError(
            f"check {job.check!r} needs precision >= {cd.min_precision}, got {precision}")

    indices, scope_echo = _resolve_scope(job, ctx, cd.domain)
    workers = job.jobs if job.jobs is not None else (os.cpu_count() or 1)
    if workers < 1:
        raise JobError(f"worker count must be positive, got {job.jobs}")
    blocks = _split_blocks(indices, workers)
    payloads = [(job.p, job.n, ctx.modulus, job.check, precision, blk) for blk in blocks]

    if len(payloads) <= 1:
        results = [_block_worker(pl) for pl in payloads]
    else:
        with Pool(processes=len(payloads)) as pool:
            results = pool.map(_block_worker, payloads)

    histogram: Optional[dict] = None
    if job.check == "spectrum":
        counts_list = [c for block in results for c in block]
        cases, histogram = _spectrum_reports(ctx, counts_list)
    else:
        cases = [r for block in results for r in block]
        if job.check in ("mod9", "mod27"):
            histogram = {}
            for r in cases:
                histogram[r.lhs] = histogram.get(r.lhs, 0) + 1
            histogram = dict(sorted(histogram.items()))

    failures = [r for r in cases if not r.passed]
    echo = {
        "field": {"p": ctx.p, "n": ctx.n, "modulus": list(ctx.modulus),
                  "generator": list(ctx.generator.coeffs)},
        "check": job.check,
        "scope": scope_echo,
        "precision": precision if cd.needs_padic else None,
    }
    return SweepReport(echo, len(indices), cases, failures, histogram,
                       time.perf_counter() - t0)


def _jsonable(v):
    if isinstance(v, FFElem):
        return list(v.coeffs)
    if isinstance(v, tuple):
        return list(v)
    return v


def _report_dict(r: CongruenceReport) -> dict:
    return {
        "type": "case",
        "subject": r.subject,
        "witness": _jsonable(r.witness),
        "lhs": _jsonable(r.lhs),
        "rhs": _jsonable(r.rhs),
        "modulus": r.modulus,
        "pass": r.passed,
    }


def _histogram_json(histogram: Optional[dict]) -> Optional[dict]:
    if histogram is None:
        return None
    return {str(k): v for k, v in histogram.items()}


def emit_report(report: SweepReport, fmt: str, stream: TextIO,
                records: str = "failures") -> None:
    """Write a sweep report; formats are json-lines, csv, and summary.

    `records` selects whether json-lines carries every case or only the
    failures.  Nothing emitted here depends on worker count or timing.
    """
    if fmt == "json-lines":
        rows = report.cases if records == "all" else report.failures
        for r in rows:
            stream.write(json.dumps(_report_dict(r)) + "\n")
        summary = {
            "type": "summary",
            **report.job,
            "total": report.total,
            "failures": len(report.failures),
            "histogram": _histogram_json(report.histogram),
        }
        stream.write(json.dumps(summary) + "\n")
    elif fmt == "csv":
        stream.write("subject,witness,lhs,rhs,modulus,pass\n")
        for r in report.cases:
            row = [r.subject, _csv_cell(r.witness), _csv_cell(r.lhs),
                   _csv_cell(r.rhs), "" if r.modulus is None else str(r.modulus),
                   str(r.passed).lower()]
            stream.write(",".join(row) + "\n")
    elif fmt == "summary":
        for r in report.failures:
            stream.write(
                f"FAIL {r.subject} witness={_csv_cell(r.witness)} "
                f"lhs={_csv_cell(r.lhs)} rhs={_csv_cell(r.rhs)}\n")
        if report.histogram is not None:
            for k, v in report.histogram.items():
                stream.write(f"count[{_csv_cell(k)}] = {v}\n")
        verdict = "PASS" if not report.failures else "FAIL"
        tail = "" if not report.failures else f" failures={len(report.failures)}"
        stream.write(f"{verdict} total={report.total}{tail}\n")
    else:
        raise JobError(f"unknown format {fmt!r}")


def _csv_cell(v) -> str:
    if isinstance(v, FFElem):
        return ":".join(str(c) for c in v.coeffs)
    if isinstance(v, tuple):
        return ":".join(str(c) for c in v)
    return str(v)
