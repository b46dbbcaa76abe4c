"""Command-line driver.

Exit codes: 0 when every check passes, 1 when a mathematical violation is
found, 2 on bad input or configuration.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
import time
from dataclasses import dataclass, field, fields
from fractions import Fraction
from pathlib import Path
from typing import Optional

from . import congruence_families as cf
from . import newman_families as nf
from . import radu
from .density import q_density_report, sieve
from .errors import B21Error
from .gf2series import bt_parity, c_series, eta_quotient_parity
from .quadforms import q_membership

log = logging.getLogger("b21parity")

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2
FORMATS = ("json", "csv", "text")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    series_limit: int = 2_000_000
    output_format: str = "json"
    output_path: Optional[Path] = None
    depth: dict[str, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.series_limit < 1:
            raise UsageError("series_limit must be >= 1")
        if self.output_format not in FORMATS:
            raise UsageError(f"format must be one of {FORMATS}")


def read_config_file(path: Path) -> dict[str, str]:
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    out = {}
    for lineno, raw in enumerate(path.read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        out[key] = value
    return out


def build_config(args: argparse.Namespace) -> RunConfig:
    values: dict = {}
    if args.config:
        raw = read_config_file(Path(args.config))
        known = {f.name for f in fields(RunConfig)}
        for key, value in raw.items():
            if key.startswith("depth."):
                values.setdefault("depth", {})[key[6:]] = int(value)
            elif key in ("series_limit",):
                values[key] = int(value)
            elif key in ("format", "output_format"):
                values["output_format"] = value
            elif key in ("out", "output_path"):
                values["output_path"] = Path(value)
            elif key not in known:
                raise UsageError(f"unknown config key {key!r}")
    if args.format:
        values["output_format"] = args.format
    if args.out:
        values["output_path"] = Path(args.out)
    if getattr(args, "series_limit", None):
        values["series_limit"] = args.series_limit
    return RunConfig(**values)


# ---------------------------------------------------------------------------
# output


def _jsonable(x):
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, Path):
        return str(x)
    if isinstance(x, float):
        raise TypeError("floating-point values are not allowed in reports")
    return x


def canonical_json(doc) -> str:
    return json.dumps(_jsonable(doc), sort_keys=True) + "\n"


def _flat_rows(results: list[dict]) -> tuple[list[str], list[dict]]:
    rows = []
    for r in results:
        rows.append({k: v for k, v in r.items() if not isinstance(v, (dict, list))})
    keys = sorted({k for r in rows for k in r})
    return keys, rows


def render(report: dict, fmt: str, csv_text: Optional[str] = None) -> str:
    if fmt == "json":
        return canonical_json(report)
    if fmt == "csv":
        if csv_text is not None:
            return csv_text
        keys, rows = _flat_rows(report["results"])
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=keys, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        return buf.getvalue()
    lines = [f"command: {report['command']}"]
    for k, v in sorted(report["inputs"].items()):
        lines.append(f"  {k} = {_jsonable(v)}")
    for r in report["results"]:
        summary = {k: v for k, v in r.items() if not isinstance(v, (dict, list))}
        lines.append("  " + ", ".join(f"{k}={_jsonable(v)}" for k, v in sorted(summary.items())))
    lines.append(f"violations: {len(report['violations'])}")
    for v in report["violations"]:
        lines.append(f"  ! {json.dumps(_jsonable(v), sort_keys=True)}")
    return "\n".join(lines) + "\n"


def emit(config: RunConfig, report: dict, csv_text: Optional[str] = None) -> None:
    text = render(report, config.output_format, csv_text)
    if config.output_path:
        config.output_path.write_text(text)
    else:
        sys.stdout.write(text)


def _report(command: str, inputs: dict, results: list, violations: list, start: float) -> dict:
    return {
        "command": command,
        "inputs": inputs,
        "results": results,
        "violations": violations,
        "runtime_ms": int((time.perf_counter() - start) * 1000),
    }


def _require_q_prime(p: int) -> None:
    from sympy import isprime

    if p < 3 or not isprime(p):
        raise UsageError(f"p={p} is not an odd prime")
    if q_membership(p) is None:
        raise UsageError(f"p={p} is not in Q")


# ---------------------------------------------------------------------------
# commands


def cmd_verify_theorem1(p: int, beta: Optional[int], config: RunConfig) -> int:
    start = time.perf_counter()
    _require_q_prime(p)
    bad = cf.excluded_beta(p)
    if beta is not None and not 0 <= beta < p:
        raise UsageError(f"beta must lie in [0, {p})")
    betas = [beta] if beta is not None else [b for b in range(p) if b != bad]
    parity = bt_parity(21, config.series_limit)
    n_max = config.depth.get("verify-theorem1")
    results, violations = [], []
    for b in betas:
        fam = cf.theorem11_family(p, b, allow_excluded=True)
        rep = cf.verify_family(fam, parity, n_max=n_max)
        d = rep.as_dict()
        results.append(d)
        for n, idx in rep.violations:
            violations.append({"beta": b, "n": n, "index": idx, "excluded": fam.excluded})
    inputs = {"p": p, "beta": beta, "excluded_beta": bad, "series_limit": config.series_limit}
    emit(config, _report("verify-theorem1", inputs, results, violations, start))
    # a failure at the excluded beta is the expected outcome, not a violation of the theorem
    real = [v for v in violations if not v["excluded"]]
    return EXIT_VIOLATION if real else EXIT_OK


def cmd_keith_zanello(p: int, config: RunConfig) -> int:
    start = time.perf_counter()
    parity = bt_parity(21, config.series_limit)
    results, violations = [], []
    for k in range(1, p):
        rep = cf.verify_family(cf.keith_zanello_family(p, k), parity)
        results.append(rep.as_dict())
        violations += [{"k": k, "n": n, "index": i} for n, i in rep.violations]
    inputs = {"p": p, "series_limit": config.series_limit}
    emit(config, _report("keith-zanello", inputs, results, violations, start))
    return EXIT_VIOLATION if violations else EXIT_OK


def parse_instance(text: str) -> radu.RaduInstance:
    """``m,M,N,r_1,...,r_d,t`` with one exponent per divisor of M, or a built-in label."""
    if text in radu.PAPER_INSTANCES:
        return radu.RaduInstance.from_vector(*radu.PAPER_INSTANCES[text])
    try:
        nums = [int(x) for x in text.replace(" ", "").split(",")]
    except ValueError:
        raise UsageError(f"malformed instance {text!r}") from None
    if len(nums) < 5:
        raise UsageError("instance needs m,M,N, at least one exponent, and t")
    m, M, N, *r_vec, t = nums
    try:
        return radu.RaduInstance.from_vector(m, M, N, r_vec, t)
    except ValueError as e:
        raise UsageError(str(e)) from None


def parse_eta(text: str) -> dict[int, int]:
    """``delta:exp,delta:exp`` (e.g. ``1:-1,3:4``)."""
    out = {}
    try:
        for part in text.replace(" ", "").split(","):
            if not part:
                continue
            d, e = part.split(":")
            out[int(d)] = out.get(int(d), 0) + int(e)
    except ValueError:
        raise UsageError(f"malformed eta exponents {text!r}") from None
    if any(d < 1 for d in out):
        raise UsageError("eta indices must be positive")
    return out


def cmd_radu(inst: radu.RaduInstance, rprime: dict[int, int], config: RunConfig) -> int:
    start = time.perf_counter()
    inputs = {"m": inst.m, "M": inst.M, "N": inst.N, "r": inst.r, "t": inst.t, "r_prime": rprime}
    ds = radu.delta_star_check(inst)
    if not ds:
        result = {"delta_star": {str(i): ok for i, ok in ds.conditions.items()}, "status": "not-admissible"}
        viol = [{"delta_star_condition": i} for i in ds.failing()]
        emit(config, _report("radu", inputs, [result], viol, start))
        return EXIT_VIOLATION
    pset = radu.p_set(inst)
    _, nu_floor = radu.nu_bound(inst, rprime, pset)
    limit = max(inst.m * nu_floor + max(pset) + 1, 1)
    parity = eta_quotient_parity(inst.r, limit)
    try:
        cert = radu.verify_instance(inst, rprime, parity)
    except radu.HypothesisViolated as e:
        emit(config, _report("radu", inputs, [], [{"hypothesis": str(e)}], start))
        return EXIT_VIOLATION
    doc = cert.to_dict()
    viol = [{"t_prime": tp, "n": n} for tp, n in cert.failures]
    emit(config, _report("radu", inputs, [doc], viol, start))
    return EXIT_OK if cert.status == "proven" else EXIT_VIOLATION


def cmd_newman(p: int, config: RunConfig) -> int:
    start = time.perf_counter()
    climit = max(config.series_limit // 4, 1)
    cs = c_series(climit)
    depth = config.depth.get("newman", 200)
    try:
        rec = nf.verify_recurrence(p, cs, depth)
        thm = nf.verify_theorem12(p, cs)
    except nf.ExcludedPrime as e:
        raise UsageError(str(e)) from None
    violations = [{"recurrence_n": n} for n in rec.failures]
    for fam in thm.families:
        violations += [{"family_param": fam.family.param, "n": n, "index": i} for n, i in fam.violations]
    violations += [{"oddness_k": o.k, "index": o.b21_index} for o in thm.oddness if o.status == "fail"]
    inputs = {"p": p, "c_series_limit": climit, "depth": depth}
    emit(config, _report("newman", inputs, [rec.as_dict(), thm.as_dict()], violations, start))
    return EXIT_VIOLATION if violations else EXIT_OK


def cmd_density(X: int, config: RunConfig, workers: int = 1) -> int:
    start = time.perf_counter()
    rep = q_density_report(X, workers=workers)
    violations = [{"qp_mismatch": p} for p in rep.qp_mismatches]
    violations += [{"residue_violation": p} for p in rep.residue_violations]
    result = rep.as_dict()
    result["q_primes_head"] = rep.q_primes()[:20]
    csv_text = rep.to_csv() if config.output_format == "csv" else None
    emit(config, _report("density", {"X": X}, [result], violations, start), csv_text)
    return EXIT_VIOLATION if violations else EXIT_OK


def cmd_conjecture(limit: int, config: RunConfig) -> int:
    start = time.perf_counter()
    qs = [p for p in sieve(limit) if p > 2 and q_membership(p) is not None]
    top = max(((11 * p * p - 11) // 24 for p in qs), default=0)
    cs = c_series(top + 1)
    results, flagged = [], []
    for p in qs:
        rep = cf.conjecture_check(p, cs)
        results.append(rep.as_dict())
        if rep.counterexample:
            flagged.append({"p": p, "parity": rep.parity, "a_value": rep.a_value})
            log.warning("COUNTEREXAMPLE at p=%d: parity=%d a=%d", p, rep.parity, rep.a_value)
    report = _report("conjecture", {"limit": limit}, results, [], start)
    report["counterexamples"] = flagged
    emit(config, report)
    # counterexamples are findings, not process failures
    return EXIT_OK


def cmd_series(eta: dict[int, int], limit: int, config: RunConfig) -> int:
    start = time.perf_counter()
    s = eta_quotient_parity(eta, limit)
    result = {"limit": limit, "support": s.support().tolist(), "bits": "".join(map(str, s.bits.tolist()))}
    csv_text = None
    if config.output_format == "csv":
        csv_text = "n,bit\n" + "".join(f"{n},{b}\n" for n, b in enumerate(s.bits.tolist()))
    emit(config, _report("series", {"eta": eta, "limit": limit}, [result], [], start), csv_text)
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS)
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--config", help="key=value configuration file")
    common.add_argument("-v", "--verbose", action="store_true")

    ap = argparse.ArgumentParser(prog="b21parity", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("verify-theorem1", parents=[common], help="Q-prime congruence families")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--beta", type=int)
    s.add_argument("--limit", dest="series_limit", type=int, help="b_21 index bound")
    s.add_argument("--depth", type=int, help="largest n per progression")

    s = sub.add_parser("keith-zanello", parents=[common], help="families for p = 13,17,19,23 mod 24")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--limit", dest="series_limit", type=int)

    s = sub.add_parser("radu", parents=[common], help="Radu certificate for one instance")
    s.add_argument("--instance", required=True, help="m,M,N,r...,t or one of " + ",".join(radu.PAPER_INSTANCES))
    s.add_argument("--rprime", default="", help="delta:exp,... over divisors of N")

    s = sub.add_parser("newman", parents=[common], help="recurrence and mod p^mu family checks")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--limit", dest="series_limit", type=int, help="b_21 index bound (c-series gets a quarter)")
    s.add_argument("--depth", type=int, help="recurrence n_max")

    s = sub.add_parser("density", parents=[common], help="membership scan of primes below X")
    s.add_argument("--limit", type=int, required=True, help="sieve bound X")
    s.add_argument("--workers", type=int, default=1)

    s = sub.add_parser("conjecture", parents=[common], help="scan p in Q below a bound")
    s.add_argument("--limit", type=int, default=500)

    s = sub.add_parser("series", parents=[common], help="parity series of an eta-quotient")
    s.add_argument("--eta", default="1:-1,3:4")
    s.add_argument("--limit", type=int, default=100)
    return ap


def main(argv: Optional[list[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        config = build_config(args)
        if getattr(args, "depth", None) is not None:
            config.depth[args.command] = args.depth
        if args.command == "verify-theorem1":
            return cmd_verify_theorem1(args.p, args.beta, config)
        if args.command == "keith-zanello":
            return cmd_keith_zanello(args.p, config)
        if args.command == "radu":
            return cmd_radu(parse_instance(args.instance), parse_eta(args.rprime), config)
        if args.command == "newman":
            return cmd_newman(args.p, config)
        if args.command == "density":
            return cmd_density(args.limit, config, args.workers)
        if args.command == "conjecture":
            return cmd_conjecture(args.limit, config)
        if args.command == "series":
            return cmd_series(parse_eta(args.eta), args.limit, config)
    except (UsageError, B21Error, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
