"""Command line: ``romikseq compute|verify|scan``.

Exit codes: 0 verified or consistent, 1 counterexample on a theorem check,
2 inconclusive horizon, 3 usage or guard error.  ``scan`` exits 0 whatever
the mathematics says.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Callable

from . import congruence as cg
from . import dseq, modular
from .errors import RomikError, UsageError
from .reports import CheckReport, Status, dumps_reports
from .rmatrix import RINV_EVEN, r_entry
from .seqcore import pi3, taylor_poly, u, v

log = logging.getLogger("romikseq")

EXIT_OK, EXIT_COUNTER, EXIT_INCONCLUSIVE, EXIT_USAGE = 0, 1, 2, 3

SEQUENCES = ("u", "v", "d", "r", "rinv", "poly")


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated integers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="romikseq", description=__doc__.splitlines()[0])
    ap.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp, formats):
        sp.add_argument("--max-n", "--horizon", dest="horizon", type=int, default=None, help="last index")
        sp.add_argument("--format", choices=formats, default=formats[0])
        sp.add_argument("--out", default=None, help="write to this file instead of stdout")
        sp.add_argument("--unsafe-no-guard", action="store_true", help="ignore the computability guards")

    c = sub.add_parser("compute", help="tables of exact values")
    c.add_argument("selector", choices=SEQUENCES)
    common(c, ("csv", "json", "text"))
    c.add_argument("--modulus", type=int, default=None, help="residues of u, v or d modulo this")
    c.add_argument("--header", action="store_true", help="emit a CSV header line")

    for name, helptext in (("verify", "theorem checks"), ("scan", "conjecture scans")):
        sp = sub.add_parser(name, help=helptext)
        sp.add_argument("selector", choices=sorted(VERIFY_JOBS if name == "verify" else SCAN_JOBS))
        common(sp, ("json", "text"))
        sp.add_argument("-p", "--prime", type=_int_list, default=None)
        sp.add_argument("-e", "--exponent", type=_int_list, default=None)
        sp.add_argument("-k", type=int, default=None, help="column index where relevant")
        sp.add_argument("--row", type=int, default=None, help="row parameter n where relevant")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--count", type=int, default=None, help="number of random sequences")
        sp.add_argument("--variant", default="1", help="C1 variant: 1, 2 or 2a")
        sp.add_argument("--jobs", type=int, default=1)
        sp.add_argument("--timings", action="store_true", help="keep elapsed_ms in reports")
    return ap


# ---------------------------------------------------------------- compute


def _compute_rows(sel: str, N: int, modulus: int | None, guarded: bool) -> list[tuple]:
    if N < 0:
        raise UsageError("--max-n must be non-negative")
    if modulus is not None:
        if sel not in ("u", "v", "d"):
            raise UsageError("--modulus applies to u, v and d only")
        res = modular.residues(sel, N, modulus, None if guarded else N)
        return [(n, r) for n, r in enumerate(res)]
    if guarded:
        dseq.check_guard(N if sel != "poly" else N // 2)
    if sel == "u":
        return [(n, u(n)) for n in range(N + 1)]
    if sel == "v":
        return [(n, v(n)) for n in range(N + 1)]
    if sel == "d":
        return list(enumerate(dseq.d_values(N, guard=None)))
    if sel == "r":
        return [(n, k, r_entry(n, k)) for n in range(N + 1) for k in range(n + 1)]
    if sel == "rinv":
        return [(n, k, RINV_EVEN.row(n)[k]) for n in range(N + 1) for k in range(n + 1)]
    # poly: coefficients of p_n(t), ascending degree
    return [(n, j, c) for n in range(N + 1) for j, c in enumerate(taylor_poly(n).coeffs)]


def _columns(sel: str) -> list[str]:
    if sel in ("r", "rinv"):
        return ["n", "k", "value"]
    if sel == "poly":
        return ["n", "degree", "coefficient"]
    return ["n", "value"]


def _fmt(x) -> str:
    return str(x) if not isinstance(x, Fraction) or x.denominator != 1 else str(x.numerator)


def render_table(sel: str, rows: list[tuple], fmt: str, header: bool = False) -> str:
    cols = _columns(sel)
    if fmt == "json":
        return json.dumps({"sequence": sel, "columns": cols, "rows": [[_fmt(x) for x in r] for r in rows]}, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if header:
            w.writerow(cols)
        for r in rows:
            w.writerow([_fmt(x) for x in r])
        return buf.getvalue()
    lines = ["  ".join(cols)] if header else []
    lines += ["  ".join(_fmt(x) for x in r) for r in rows]
    return "\n".join(lines) + "\n"


def run_compute(args) -> int:
    N = 10 if args.horizon is None else args.horizon
    rows = _compute_rows(args.selector, N, args.modulus, not args.unsafe_no_guard)
    _emit(render_table(args.selector, rows, args.format, args.header), args.out)
    return EXIT_OK


# ---------------------------------------------------------------- verify / scan jobs

Job = Callable[..., list[CheckReport]]


def _pe(args, p_default, e_default):
    ps = args.prime or [p_default]
    es = args.exponent or [e_default]
    return [(p, e) for p in ps for e in es]


def _thm_main_1(p, e, h, a):
    start = cg.claimed_vanishing_start("d", p, e)[1]
    return [cg.verify_vanishing("d", p, e, h or max(150, start))]


def _thm_main_2(p, e, h, a):
    P, s = cg.d_period_claim(p, e)
    if p == 2:
        raise UsageError("use thm-main-3 for powers of 2")
    return [cg.verify_periodicity("d", p, e, horizon=h or max(150, s + 4 * P))]


def _thm_main_3(p, e, h, a):
    P, _ = cg.d_period_claim(2, e)
    return [cg.verify_periodicity("d", 2, e, horizon=h or max(64, 4 * P))]


def _shift(p, e, h, a):
    return [cg.verify_shift_congruence(p, e, h or 150)]


def _vanish(family, theorem):
    def job(p, e, h, a):
        if family == "u" and (p % 4 == 3) != (theorem == "thm1"):
            raise UsageError(f"{theorem} needs p = {3 if theorem == 'thm1' else 1} (mod 4)")
        start = cg.claimed_vanishing_start(family, p, e, theorem)[1]
        reps = [cg.verify_vanishing(family, p, e, h or start + 50, theorem)]
        if theorem == "thm1A":
            reps.append(cg.quadratic_residue_check(p))
        return reps

    return job


def _random_label(seed):
    return "u" if seed is None else f"random:{seed}"


def _thm4(p, e, h, a):
    n_max = 6 if a.row is None else a.row
    count = 20 if a.count is None else a.count
    K = h or 4 * 2**e
    out = []
    for seed in [None] + [a.seed + i for i in range(count)]:
        y = u if seed is None else cg.RandomSeq(seed)
        rep = None
        for n in range(n_max + 1):
            rep = cg.verify_periodicity("Rinv_row", 2, e, horizon=K, n=n, y=y)
            if rep.status is not Status.VERIFIED:
                break
        rep.params = {"e": e, "n_max": n_max, "horizon": K, "y": _random_label(seed)}
        if rep.status is not Status.VERIFIED:
            rep.params["n"] = n
        out.append(rep)
    return out


def _thm9(p, e, h, a):
    return [cg.verify_Rinv_divisibility(p, h or 60)]


def _thm12(p, e, h, a):
    return [cg.verify_twisted_Rinv(p, e, a.k or 1, h or 40)]


def _prop2(p, e, h, a):
    count = 10 if a.count is None else a.count
    xs = [("pi3", pi3)] + [(f"random:{a.seed + i}", cg.RandomSeq(a.seed + i, odd_at=(1, 2))) for i in range(count)]
    out = []
    for label, x in xs:
        rep = cg.verify_vx_periodicity(e, x, h)
        rep.params["x"] = label
        out.append(rep)
    return out


def _prop2a(p, e, h, a):
    return _prop2(p, 2, h, a)


# selector -> (job, default p, default e)
VERIFY_JOBS: dict[str, tuple[Job, int, int]] = {
    "thm-main-1": (_thm_main_1, 3, 2),
    "thm-main-2": (_thm_main_2, 5, 1),
    "thm-main-3": (_thm_main_3, 2, 4),
    "wakhare": (_shift, 13, 1),
    "d-u-p": (_shift, 5, 2),
    "thm1": (_vanish("u", "thm1"), 3, 2),
    "thm1A": (_vanish("u", "thm1A"), 5, 1),
    "thm2": (_vanish("v", "thm2"), 3, 2),
    "thm2A": (_vanish("v", "thm2A"), 5, 1),
    "thm4": (_thm4, 2, 4),
    "thm9": (_thm9, 3, 1),
    "thm12": (_thm12, 5, 1),
    "prop2": (_prop2, 2, 3),
    "prop2a": (_prop2a, 2, 2),
}


def _scan(cid):
    def job(p, e, h, a):
        extra = {}
        if cid == "c1":
            extra["variant"] = a.variant
        if cid == "c5":
            if p == 2:
                extra["n"] = a.row or 0
            else:
                extra["k"] = a.k or 1
        return [cg.scan_conjecture(cid, p, e, h or 200, **extra)]

    return job


SCAN_JOBS: dict[str, tuple[Job, int, int]] = {
    "c1": (_scan("c1"), 3, 1),
    "c2": (_scan("c2"), 7, 1),
    "c3": (_scan("c3"), 3, 1),
    "c4": (_scan("c4"), 5, 1),
    "c5": (_scan("c5"), 5, 1),
    "h2adic": (lambda p, e, h, a: [cg.scan_conjecture("h2adic", horizon=40 if h is None else h)], 2, 1),
}


def _lift_guards() -> None:
    modular.FULL_GUARD = modular.BANDED_GUARD = sys.maxsize


def _run_job(command, selector, p, e, args):
    if args.unsafe_no_guard:
        _lift_guards()
    table = VERIFY_JOBS if command == "verify" else SCAN_JOBS
    job = table[selector][0]
    return job(p, e, args.horizon, args)


def run_checks(args) -> int:
    table = VERIFY_JOBS if args.command == "verify" else SCAN_JOBS
    _, p0, e0 = table[args.selector]
    combos = _pe(args, p0, e0)
    if args.jobs > 1 and len(combos) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            futs = [pool.submit(_run_job, args.command, args.selector, p, e, args) for p, e in combos]
            reports = [r for f in futs for r in f.result()]
    else:
        reports = [r for p, e in combos for r in _run_job(args.command, args.selector, p, e, args)]
    if not args.timings:
        for r in reports:
            r.elapsed_ms = None
    _emit(render_reports(reports, args.format), args.out)
    if args.command == "scan":
        return EXIT_OK
    statuses = {r.status for r in reports}
    if Status.COUNTEREXAMPLE in statuses:
        return EXIT_COUNTER
    if Status.INCONCLUSIVE in statuses:
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def render_reports(reports: list[CheckReport], fmt: str) -> str:
    if fmt == "json":
        return dumps_reports(reports)
    lines = []
    for r in json.loads(dumps_reports(reports)):
        params = " ".join(f"{k}={v}" for k, v in sorted(r["params"].items()))
        line = f"{r['check_id']:<14} {r['status']:<20} {params}"
        if r["claimed"]:
            line += f" claimed={r['claimed']}"
        if r["observed"]:
            line += f" observed={r['observed']}"
        if r["witness"]:
            line += f" witness={r['witness']}"
        lines.append(line)
    return "\n".join(lines) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr)
    if args.unsafe_no_guard:
        _lift_guards()
    try:
        if args.command == "compute":
            return run_compute(args)
        if args.jobs < 1:
            raise UsageError("--jobs must be positive")
        return run_checks(args)
    except (RomikError, ValueError) as exc:
        print(f"romikseq: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
