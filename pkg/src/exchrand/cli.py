"""Command-line front end.

Subcommands expose the samplers, exact laws, correlation function and
verification suites with explicit seeds (default seed is the constant 0; no
environment variable is consulted).  Output is machine readable: JSON mode
emits one object per line with floats printed to 17 significant digits so
every double round-trips exactly; CSV mode emits a header plus one record
per sample or weight.

Exit status: 0 on success, 1 when a verification suite reports a failure,
2 on usage or parameter errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from .crp import Partition, crp_sample, crp_validate, ewens_pitman_log_pmf
from .errors import DomainError, InvalidParameterError, UnknownSuiteError
from .polya import (
    CountVector,
    LabelSequence,
    UrnParams,
    polya_count_log_pmf,
    polya_sample,
    polya_seq_log_pmf,
)
from .rngdist import RandomSource, sample_dirichlet_gamma, sample_dirichlet_stick
from .verify import SUITE_NAMES, run_suite
from .weights import block_count_prob, empirical_block_weights, gem_sample, rho_k

DEFAULT_SEED = 0


def _fmt_float(x: float) -> str:
    if x != x or x in (float("inf"), float("-inf")):
        return json.dumps(x)  # not representable in strict JSON anyway; keep py repr
    return format(x, ".17g")


def _json_dumps(obj) -> str:
    """json.dumps with floats rendered to 17 significant digits."""
    if isinstance(obj, float):
        return _fmt_float(obj)
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, (int, str)) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_json_dumps(v) for v in obj) + "]"
    if isinstance(obj, dict):
        return "{" + ", ".join(
            f"{json.dumps(str(k))}: {_json_dumps(v)}" for k, v in obj.items()
        ) + "}"
    raise TypeError(f"cannot serialize {type(obj)!r}")


def _csv_value(x) -> str:
    if isinstance(x, float):
        return _fmt_float(x)
    return str(x)


class _Output:
    def __init__(self, path: Optional[str]):
        self._path = path
        self._handle = open(path, "w") if path else sys.stdout

    def line(self, text: str):
        self._handle.write(text + "\n")

    def close(self):
        if self._path:
            self._handle.close()


def _emit_records(out: _Output, fmt: str, header, rows):
    """CSV: header + rows.  JSON: one object per line keyed by the header."""
    if fmt == "csv":
        out.line(",".join(header))
        for row in rows:
            out.line(",".join(_csv_value(v) for v in row))
    else:
        for row in rows:
            out.line(_json_dumps(dict(zip(header, row))))


def _emit_object(out: _Output, fmt: str, obj: dict):
    if fmt == "csv":
        out.line(",".join(obj.keys()))
        out.line(",".join(_csv_value(v) for v in obj.values()))
    else:
        out.line(_json_dumps(obj))


def _parse_floats(text: str):
    try:
        return tuple(float(part) for part in text.split(","))
    except ValueError:
        raise InvalidParameterError(f"expected comma-separated reals, got {text!r}")


def _parse_ints(text: str):
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise InvalidParameterError(f"expected comma-separated integers, got {text!r}")


def _parse_partition(text: str) -> Partition:
    try:
        blocks = json.loads(text)
    except json.JSONDecodeError:
        raise InvalidParameterError(f"partition must be a JSON array of arrays, got {text!r}")
    if not isinstance(blocks, list) or not all(isinstance(b, list) for b in blocks):
        raise InvalidParameterError("partition must be a JSON array of arrays of integers")
    return Partition.from_blocks(blocks)


def _add_common(parser, seed=True):
    if seed:
        parser.add_argument("--seed", type=int, default=DEFAULT_SEED)
    parser.add_argument("--format", choices=("json", "csv"), default="json")
    parser.add_argument("--output", default=None, help="output path (default: stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="exchrand",
        description="Polya urns, restaurant partitions and their exact laws",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sample = sub.add_parser("sample", help="draw from the sequential samplers")
    sample_sub = sample.add_subparsers(dest="what", required=True)

    sp = sample_sub.add_parser("polya")
    sp.add_argument("--alphas", required=True)
    sp.add_argument("--n", type=int, required=True)
    _add_common(sp)

    sc = sample_sub.add_parser("crp")
    sc.add_argument("--alpha", type=float, required=True)
    sc.add_argument("--theta", type=float, required=True)
    sc.add_argument("--n", type=int, required=True)
    _add_common(sc)

    sg = sample_sub.add_parser("gem")
    sg.add_argument("--alpha", type=float, required=True)
    sg.add_argument("--theta", type=float, required=True)
    sg.add_argument("--depth", type=int, required=True)
    _add_common(sg)

    sd = sample_sub.add_parser("dirichlet")
    sd.add_argument("--alphas", required=True)
    sd.add_argument("--method", choices=("gamma", "stick"), default="gamma")
    _add_common(sd)

    pmf = sub.add_parser("pmf", help="evaluate the exact laws")
    pmf_sub = pmf.add_subparsers(dest="what", required=True)

    ps = pmf_sub.add_parser("polya-seq")
    ps.add_argument("--alphas", required=True)
    ps.add_argument("--seq", required=True)
    _add_common(ps, seed=False)

    pc = pmf_sub.add_parser("polya-counts")
    pc.add_argument("--alphas", required=True)
    pc.add_argument("--counts", required=True)
    _add_common(pc, seed=False)

    pe = pmf_sub.add_parser("ewens-pitman")
    pe.add_argument("--alpha", type=float, required=True)
    pe.add_argument("--theta", type=float, required=True)
    pe.add_argument("--partition", required=True, help='e.g. "[[1,3],[2]]"')
    _add_common(pe, seed=False)

    bw = sub.add_parser("blockweights", help="empirical block weights of one partition draw")
    bw.add_argument("--alpha", type=float, required=True)
    bw.add_argument("--theta", type=float, required=True)
    bw.add_argument("--n", type=int, required=True)
    _add_common(bw)

    rho = sub.add_parser("rho", help="k-correlation function of the ranked weights")
    rho.add_argument("--alpha", type=float, required=True)
    rho.add_argument("--theta", type=float, required=True)
    rho.add_argument("--k", type=int, required=True)
    rho.add_argument("--x", required=True)
    _add_common(rho, seed=False)

    bc = sub.add_parser("blockcount", help="finite-n block size count probability")
    bc.add_argument("--alpha", type=float, required=True)
    bc.add_argument("--theta", type=float, required=True)
    bc.add_argument("--n", type=int, required=True)
    bc.add_argument("--sizes", required=True)
    _add_common(bc, seed=False)

    ver = sub.add_parser("verify", help="run a verification suite")
    ver.add_argument("--suite", required=True, help=", ".join(SUITE_NAMES))
    _add_common(ver)

    return parser


def _run(args, out: _Output) -> int:
    fmt = args.format
    if args.command == "sample":
        if args.what == "polya":
            seq = polya_sample(UrnParams(_parse_floats(args.alphas)), args.n,
                               RandomSource(args.seed))
            if fmt == "json":
                _emit_object(out, fmt, {"labels": list(seq.labels), "k": seq.k,
                                        "seed": args.seed})
            else:
                _emit_records(out, fmt, ("index", "label"),
                              list(enumerate(seq.labels, start=1)))
        elif args.what == "crp":
            params = crp_validate(args.alpha, args.theta)
            pi = crp_sample(params, args.n, RandomSource(args.seed))
            if fmt == "json":
                _emit_object(out, fmt, {"partition": [list(b) for b in pi.blocks],
                                        "n": pi.n, "seed": args.seed})
            else:
                rows = [(i, j + 1) for j, block in enumerate(pi.blocks) for i in block]
                rows.sort()
                _emit_records(out, fmt, ("customer", "block"), rows)
        elif args.what == "gem":
            params = crp_validate(args.alpha, args.theta)
            w = gem_sample(params, args.depth, RandomSource(args.seed))
            _emit_weights(out, fmt, w.v, w.residual, seed=args.seed)
        else:  # dirichlet
            sampler = sample_dirichlet_gamma if args.method == "gamma" else sample_dirichlet_stick
            x = sampler(_parse_floats(args.alphas), RandomSource(args.seed))
            if fmt == "json":
                _emit_object(out, fmt, {"weights": list(x.weights),
                                        "method": args.method, "seed": args.seed})
            else:
                _emit_records(out, fmt, ("index", "weight"),
                              list(enumerate(x.weights, start=1)))
        return 0

    if args.command == "pmf":
        if args.what == "polya-seq":
            alphas = _parse_floats(args.alphas)
            params = UrnParams(alphas)
            seq = LabelSequence(_parse_ints(args.seq), params.k)
            value = polya_seq_log_pmf(params, seq)
        elif args.what == "polya-counts":
            params = UrnParams(_parse_floats(args.alphas))
            value = polya_count_log_pmf(params, CountVector(_parse_ints(args.counts)))
        else:  # ewens-pitman
            params = crp_validate(args.alpha, args.theta)
            value = ewens_pitman_log_pmf(params, _parse_partition(args.partition))
        prob = value.to_real()
        log_prob = value.logmag if value.sign > 0 else float("-inf")
        _emit_object(out, fmt, {"log_prob": log_prob, "prob": prob})
        return 0

    if args.command == "blockweights":
        params = crp_validate(args.alpha, args.theta)
        pi = crp_sample(params, args.n, RandomSource(args.seed))
        w = empirical_block_weights(pi)
        _emit_weights(out, fmt, w.v, w.residual, seed=args.seed)
        return 0

    if args.command == "rho":
        params = crp_validate(args.alpha, args.theta)
        xs = _parse_floats(args.x)
        if len(xs) != args.k:
            raise InvalidParameterError(f"--k is {args.k} but --x has {len(xs)} coordinates")
        _emit_object(out, fmt, {"value": rho_k(params, xs)})
        return 0

    if args.command == "blockcount":
        params = crp_validate(args.alpha, args.theta)
        _emit_object(out, fmt, {"value": block_count_prob(params, args.n,
                                                          _parse_ints(args.sizes))})
        return 0

    # verify
    reports = run_suite(args.suite, args.seed)
    header = ("name", "statistic", "threshold", "passed", "seed", "details")
    rows = [(r.name, r.statistic, r.threshold, r.passed, r.seed, r.details)
            for r in reports]
    if fmt == "csv":
        quoted = [(name, stat, thr, ok, seed, f'"{det}"' if "," in det else det)
                  for name, stat, thr, ok, seed, det in rows]
        _emit_records(out, fmt, header, quoted)
    else:
        for r in reports:
            out.line(_json_dumps(r.to_dict()))
    return 0 if all(r.passed for r in reports) else 1


def _emit_weights(out: _Output, fmt: str, v, residual: float, seed: int):
    if fmt == "json":
        _emit_object(out, fmt, {"weights": list(v), "residual": residual, "seed": seed})
    else:
        rows = list(enumerate(v, start=1)) + [("residual", residual)]
        _emit_records(out, fmt, ("index", "weight"), rows)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = _Output(getattr(args, "output", None))
    try:
        return _run(args, out)
    except (InvalidParameterError, DomainError, UnknownSuiteError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    finally:
        out.close()


def entrypoint():
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
