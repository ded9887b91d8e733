"""Command-line front end.

    starconf classify --n 2 --l 5 --r 4 --d 5
    starconf hilbert --n 2 --l 4 --tmax 4
    starconf certify --n 2 --d 3 [--strategy evaluation]
    starconf decompose --F f.txt --forms forms.txt --r 3
    starconf decompose --random --n 2 --l 4 --r 3 --d 5 --seed 7
    starconf table --nmax 4 --dmax 6 [--certify] [--jobs 4] [--format csv]
    starconf selftest
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .certify import DEFAULT_RETRIES, Certificate, Strategy, certify_tuple
from .classify import CSV_HEADER, ClassVerdict, classify, grid
from .field import FieldConfig, default_prime
from .membership import decompose
from .poly import PolySyntaxError, parse_poly, random_form
from .star import LinearFormSet, TupleNLRD, expected_hf, hilbert_function, random_general_forms, star_generators, subsets

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE = 0, 1, 2

STRATEGY_NAMES = {"macaulay": Strategy.MACAULAY, "evaluation": Strategy.EVALUATION}


@dataclass(frozen=True)
class RunConfig:
    prime: int
    seed: int = 1
    retries: int = DEFAULT_RETRIES
    jobs: int = 1
    field_kind: str = "prime"
    output_path: str | None = None

    @property
    def field(self) -> FieldConfig:
        if self.field_kind == "rational":
            return FieldConfig.rationals()
        return FieldConfig.prime_field(self.prime)

    @classmethod
    def from_args(cls, args) -> RunConfig:
        return cls(
            prime=args.prime,
            seed=args.seed,
            retries=getattr(args, "retries", DEFAULT_RETRIES),
            jobs=getattr(args, "jobs", 1),
            field_kind=args.field,
            output_path=getattr(args, "output", None),
        )


class UsageError(Exception):
    pass


def derived_seed(base: int, t: TupleNLRD) -> int:
    """Per-tuple seed independent of scheduling order."""
    digest = hashlib.sha256(f"{base}:{t.n}:{t.l}:{t.r}:{t.d}".encode()).digest()
    return int.from_bytes(digest[:4], "big")


def _emit(text: str, cfg: RunConfig | None = None):
    if cfg is not None and cfg.output_path:
        Path(cfg.output_path).write_text(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


# -- subcommands ---------------------------------------------------------------


def cmd_classify(args) -> int:
    c = classify(args.n, args.l, args.r, args.d)
    if args.json:
        print(json.dumps(c.to_json()))
        return EXIT_OK
    t = c.nlrd
    extra = f" (finite d: {c.finite_d.value})" if c.finite_d else ""
    bound = f", l*n - C(l,n) = {c.bound_value}" if c.bound_value is not None else ""
    print(f"({t.n},{t.l},{t.r},{t.d}): {c.verdict.value}{extra}  case {c.case}{bound}")
    return EXIT_OK


def cmd_hilbert(args) -> int:
    cfg = RunConfig.from_args(args)
    n, l = args.n, args.l
    if l < n:
        raise UsageError("hilbert needs l >= n (star points)")
    r = l - n + 1
    tmax = l if args.tmax is None else args.tmax
    forms = random_general_forms(n, l, cfg.field, np.random.default_rng(cfg.seed))
    gens = star_generators(forms, r)
    rows = []
    for t in range(tmax + 1):
        hf = hilbert_function(gens, t)
        exp = expected_hf(n, l, t)
        rows.append({"t": t, "hf": hf, "expected": exp, "match": hf == exp})
    if args.json:
        _emit(json.dumps({"n": n, "l": l, "r": r, "seed": cfg.seed, "rows": rows}), cfg)
    else:
        lines = [f"{'t':>3} {'HF':>6} {'expected':>9}  status"]
        lines += [f"{x['t']:>3} {x['hf']:>6} {x['expected']:>9}  {'MATCH' if x['match'] else 'DIFF'}" for x in rows]
        _emit("\n".join(lines), cfg)
    return EXIT_OK if all(x["match"] for x in rows) else EXIT_NEGATIVE


def cmd_certify(args) -> int:
    cfg = RunConfig.from_args(args)
    if args.d < 3 or args.n < 2:
        raise UsageError(f"certify needs n >= 2 and d >= 3 (tuple (n, n+2, 3, d)), got n={args.n}, d={args.d}")
    cert = certify_tuple(args.n, args.d, STRATEGY_NAMES[args.strategy], cfg.field, cfg.seed, cfg.retries)
    _emit(cert.dumps(indent=2), cfg)
    if not args.quiet:
        print(f"{cert.verdict.value}: rank {cert.achieved_rank}/{cert.target_rank}", file=sys.stderr)
    return EXIT_OK if cert.certified else EXIT_NEGATIVE


def _read_polys(path: str) -> list[str]:
    lines = Path(path).read_text().splitlines()
    return [s.strip() for s in lines if s.strip() and not s.lstrip().startswith("#")]


def cmd_decompose(args) -> int:
    cfg = RunConfig.from_args(args)
    field = cfg.field
    if args.random:
        for flag in ("n", "l", "r", "d"):
            if getattr(args, flag) is None:
                raise UsageError(f"--random needs --{flag}")
        n, l, r, d = args.n, args.l, args.r, args.d
        if r > min(l, d):
            raise UsageError(f"need r <= min(l, d), got r={r}")
        rng = np.random.default_rng(cfg.seed)
        forms = random_general_forms(n, l, field, rng)
        F = None
        for sigma in subsets(l, r):
            term = forms.product(sigma) * random_form(field, n + 1, d - r, rng)
            F = term if F is None else F + term
    else:
        if not args.F or not args.forms or args.r is None:
            raise UsageError("decompose needs --F, --forms and --r (or --random)")
        f_lines = _read_polys(args.F)
        form_lines = _read_polys(args.forms)
        if len(f_lines) != 1:
            raise UsageError(f"{args.F} must hold exactly one polynomial")
        nvars = args.nvars
        if nvars is None:
            nvars = max(parse_poly(s, field).nvars for s in f_lines + form_lines)
        F = parse_poly(f_lines[0], field, nvars=nvars)
        forms = LinearFormSet(tuple(parse_poly(s, field, nvars=nvars, degree=1) for s in form_lines))
        r = args.r
    if r > F.degree or not 0 < r <= forms.l:
        raise UsageError(f"need 0 < r <= min(deg F, l), got r={r}, deg F={F.degree}, l={forms.l}")
    dec = decompose(F, forms, r)
    if dec is None:
        _emit(json.dumps({"decomposable": False}) if args.json else "not decomposable", cfg)
        return EXIT_NEGATIVE
    verified = dec.reconstruct() == F
    if args.json:
        out = {
            "decomposable": True,
            "verified": verified,
            "F": str(F),
            "L": [str(f) for f in forms.forms],
            "M": {",".join(map(str, s)): str(m) for s, m in dec.M.items()},
        }
        _emit(json.dumps(out, indent=2), cfg)
    else:
        lines = [f"M[{','.join(map(str, s))}] = {m}" for s, m in dec.M.items()]
        lines.append("reconstruction verified" if verified else "RECONSTRUCTION MISMATCH")
        _emit("\n".join(lines), cfg)
    return EXIT_OK if verified else EXIT_NEGATIVE


def _certifiable(c) -> bool:
    t = c.nlrd
    return c.verdict is ClassVerdict.GENERIC_YES and t.l == t.n + 2 and t.r == 3 and t.n >= 2


def _certify_job(job):
    n, d, strategy, field_json, seed, retries = job
    cert = certify_tuple(n, d, Strategy(strategy), FieldConfig.from_json(field_json), seed, retries)
    return cert.to_json()


def cmd_table(args) -> int:
    cfg = RunConfig.from_args(args)
    classes = [classify(t.n, t.l, t.r, t.d) for t in grid(args.nmax, args.dmax, args.lspan)]
    certs: dict[int, dict] = {}
    if args.certify:
        strategy = STRATEGY_NAMES[args.strategy]
        idx = [i for i, c in enumerate(classes) if _certifiable(c)]
        jobs = [
            (classes[i].nlrd.n, classes[i].nlrd.d, strategy.value, cfg.field.to_json(),
             derived_seed(cfg.seed, classes[i].nlrd), cfg.retries)
            for i in idx
        ]
        if cfg.jobs > 1 and len(jobs) > 1:
            with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
                results = list(pool.map(_certify_job, jobs))
        else:
            results = [_certify_job(j) for j in jobs]
        certs = dict(zip(idx, results))
    if args.format == "csv":
        header = CSV_HEADER + (",certificate" if args.certify else "")
        lines = [header]
        for i, c in enumerate(classes):
            row = c.csv_row()
            if args.certify:
                row += "," + (certs[i]["verdict"] if i in certs else "")
            lines.append(row)
        _emit("\n".join(lines), cfg)
    else:
        rows = []
        for i, c in enumerate(classes):
            row = c.to_json()
            if args.certify:
                row["certificate"] = certs.get(i)
            rows.append(row)
        doc = {
            "nmax": args.nmax,
            "dmax": args.dmax,
            "lspan": args.lspan,
            "seed": cfg.seed,
            "field": cfg.field.to_json(),
            "rows": rows,
        }
        _emit(json.dumps(doc, indent=1), cfg)
    bad = [i for i, cert in certs.items() if cert["verdict"] != "Certified"]
    return EXIT_NEGATIVE if bad else EXIT_OK


def cmd_selftest(args) -> int:
    from .selftest import run_all

    cfg = RunConfig.from_args(args)
    _, failed = run_all(cfg.field)
    return EXIT_OK if failed == 0 else EXIT_NEGATIVE


# -- parser ----------------------------------------------------------------------


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _nonnegative(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--prime", type=int, default=default_prime(), help="field modulus (env STAR_PRIME)")
    common.add_argument("--field", choices=["prime", "rational"], default="prime")
    common.add_argument("--seed", type=int, default=1)
    common.add_argument("--output", help="write the report here instead of stdout")

    p = argparse.ArgumentParser(prog="starconf", description=__doc__.split("\n")[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", help="classify a tuple (n, l, r, d)")
    for flag in ("n", "l", "r", "d"):
        c.add_argument(f"--{flag}", type=_positive, required=True)
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_classify)

    h = sub.add_parser("hilbert", parents=[common], help="Hilbert function of star points")
    h.add_argument("--n", type=_positive, required=True)
    h.add_argument("--l", type=_positive, required=True)
    h.add_argument("--tmax", type=_nonnegative)
    h.add_argument("--json", action="store_true")
    h.set_defaults(func=cmd_hilbert)

    ce = sub.add_parser("certify", parents=[common], help="certify (n, n+2, 3, d)")
    ce.add_argument("--n", type=_positive, required=True)
    ce.add_argument("--d", type=_positive, required=True)
    ce.add_argument("--strategy", choices=sorted(STRATEGY_NAMES), default="macaulay")
    ce.add_argument("--retries", type=_nonnegative, default=DEFAULT_RETRIES)
    ce.add_argument("--quiet", action="store_true")
    ce.set_defaults(func=cmd_certify)

    de = sub.add_parser("decompose", parents=[common], help="write F = sum L_sigma M_sigma")
    de.add_argument("--F", help="file with one polynomial")
    de.add_argument("--forms", help="file with one linear form per line")
    de.add_argument("--nvars", type=_positive)
    de.add_argument("--random", action="store_true", help="build F from random L and M first")
    for flag in ("n", "l", "r", "d"):
        de.add_argument(f"--{flag}", type=_positive)
    de.add_argument("--json", action="store_true")
    de.set_defaults(func=cmd_decompose)

    t = sub.add_parser("table", parents=[common], help="classification grid")
    t.add_argument("--nmax", type=_positive, required=True)
    t.add_argument("--dmax", type=_positive, required=True)
    t.add_argument("--lspan", type=_nonnegative, default=6, help="l ranges over 1..n+lspan")
    t.add_argument("--certify", action="store_true")
    t.add_argument("--strategy", choices=sorted(STRATEGY_NAMES), default="macaulay")
    t.add_argument("--retries", type=_nonnegative, default=DEFAULT_RETRIES)
    t.add_argument("--jobs", type=_positive, default=1)
    t.add_argument("--format", choices=["json", "csv"], default="json")
    t.set_defaults(func=cmd_table)

    s = sub.add_parser("selftest", parents=[common], help="run the invariant checks")
    s.set_defaults(func=cmd_selftest)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, PolySyntaxError, OSError) as exc:
        print(f"starconf {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"starconf {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
