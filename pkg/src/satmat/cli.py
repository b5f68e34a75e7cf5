"""Command line entry point.

Exit status: 0 on success, 1 when a check fails (e.g. ``verify`` rejects the
matrix), 2 on usage errors and budget refusals.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import classify as cls
from .construct import SaturationCertificate, build_tp, greedy_saturate, pad_middle, verify_saturating
from .core import Matrix01, PermutationMatrix, orbit
from .oracle import BudgetExceeded, ex_exact, sat_exact, sat_upper_random, verify_lift_lemma


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, indent=2)


def _read_matrix(path: str) -> Matrix01:
    try:
        with open(path) as fh:
            return Matrix01.from_text(fh.read())
    except OSError as e:
        raise UsageError(f"cannot read matrix file {path!r}: {e.strerror}") from None
    except ValueError as e:
        raise UsageError(f"bad matrix file {path!r}: {e}") from None


def _perm(args) -> PermutationMatrix:
    if args.perm is None:
        raise UsageError("--perm is required")
    try:
        return PermutationMatrix.parse(args.perm)
    except ValueError as e:
        raise UsageError(f"--perm: {e}") from None


def _pattern(args) -> Matrix01:
    if (args.perm is None) == (args.pattern is None):
        raise UsageError("give exactly one of --perm and --pattern")
    if args.perm is not None:
        return _perm(args).to_matrix()
    return _read_matrix(args.pattern)


def _positive(name):
    def parse(text):
        try:
            v = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"{name} must be an integer, got {text!r}") from None
        if v < 1:
            raise argparse.ArgumentTypeError(f"{name} must be positive, got {v}")
        return v

    return parse


def _non_negative(text):
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {v}")
    return v


# -- verbs ------------------------------------------------------------------------------


def cmd_classify(args) -> int:
    p = _perm(args)
    witnesses = {str(i): cls.reduces_to_class(p, i) for i in (1, 2, 3, 4)}
    print(
        _dump(
            {
                "perm": str(p),
                "k": p.k,
                "ordinary": all(w is None for w in witnesses.values()),
                "classes": {i: (w.to_dict() if w else None) for i, w in witnesses.items()},
            }
        )
    )
    return 0


def cmd_orbit(args) -> int:
    images = sorted(orbit(_perm(args)), key=lambda q: q.sigma)
    if args.json:
        print(_dump([str(q) for q in images]))
    else:
        print("\n".join(str(q) for q in images))
    return 0


def _emit_matrix(m: Matrix01, args, **extra) -> None:
    if args.json:
        print(_dump({**extra, "rows": m.rows, "cols": m.cols, "ones": m.ones_count(), "matrix": m.to_text()}))
    else:
        print(m.to_text())


def cmd_construct(args) -> int:
    p = _perm(args)
    if p.k < 2:
        raise UsageError("--perm: the construction needs k >= 2")
    m = pad_middle(build_tp(p), args.pad)
    _emit_matrix(m, args, perm=str(p), pad=args.pad)
    return 0


def cmd_saturate(args) -> int:
    pattern = _pattern(args)
    if args.matrix is not None:
        start = _read_matrix(args.matrix)
    else:
        p = _perm(args)
        if p.k < 2:
            raise UsageError("--perm: the construction needs k >= 2")
        start = build_tp(p)
    try:
        m = greedy_saturate(start, pattern)
    except ValueError as e:
        print(f"saturate: {e}", file=sys.stderr)
        return 1
    if args.pad:
        try:
            m = pad_middle(m, args.pad)
        except ValueError as e:
            raise UsageError(f"--pad: {e}") from None
    _emit_matrix(m, args)
    return 0


def cmd_verify(args) -> int:
    if args.matrix is None:
        raise UsageError("--matrix is required")
    result = verify_saturating(_read_matrix(args.matrix), _pattern(args))
    ok = isinstance(result, SaturationCertificate)
    print(_dump({"saturating": ok, **result.to_dict()}))
    return 0 if ok else 1


def _extremal(args, exact) -> int:
    pattern = _pattern(args)
    try:
        res = exact(args.n, pattern)
    except BudgetExceeded as e:
        if exact is sat_exact and args.trials:
            res = sat_upper_random(args.n, pattern, args.trials, args.seed)
        else:
            raise UsageError(str(e)) from None
    print(_dump(res.to_dict()))
    return 0


def cmd_sat(args) -> int:
    return _extremal(args, sat_exact)


def cmd_ex(args) -> int:
    return _extremal(args, ex_exact)


def cmd_census(args) -> int:
    try:
        report = cls.census(args.k, workers=args.threads)
    except ValueError as e:
        raise UsageError(str(e)) from None
    print(_dump(report.to_dict()))
    return 0


def cmd_sample(args) -> int:
    print(_dump(cls.sample_census(args.k, args.samples, args.seed).to_dict()))
    return 0


def cmd_lift_check(args) -> int:
    try:
        report = verify_lift_lemma(args.n, _pattern(args), args.d)
    except BudgetExceeded as e:
        raise UsageError(str(e)) from None
    print(_dump(report.to_dict()))
    return 0 if report.holds else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="satmat", description="Saturation functions of forbidden 0-1 matrices.")
    sub = parser.add_subparsers(dest="verb", required=True)

    def verb(name, func, help, pattern=False, json_flag=True):
        sp = sub.add_parser(name, help=help)
        sp.set_defaults(func=func)
        sp.add_argument("--perm", help='permutation in one-line form, e.g. "4 1 3 5 2"')
        if pattern:
            sp.add_argument("--pattern", help="pattern matrix file (rows of 0/1)")
        if json_flag:
            sp.add_argument("--json", action="store_true", help="emit JSON")
        return sp

    verb("classify", cmd_classify, "class witnesses and ordinariness of a permutation")
    verb("orbit", cmd_orbit, "the images of a permutation under the 8 symmetries")
    sp = verb("construct", cmd_construct, "the T_P witness matrix")
    sp.add_argument("--pad", type=_non_negative, default=0, help="zero lines inserted at the middle")
    sp = verb("saturate", cmd_saturate, "greedy saturation (of T_P by default)", pattern=True)
    sp.add_argument("--matrix", help="start from this matrix file instead of T_P")
    sp.add_argument("--pad", type=_non_negative, default=0, help="zero lines inserted at the middle afterwards")
    sp = verb("verify", cmd_verify, "certify that a matrix is saturating", pattern=True)
    sp.add_argument("--matrix", help="matrix file to check")
    for name, func in (("sat", cmd_sat), ("ex", cmd_ex)):
        sp = verb(name, func, f"exact {name}(n, P) for small n", pattern=True)
        sp.add_argument("--n", type=_positive("--n"), required=True)
        if name == "sat":
            sp.add_argument("--trials", type=_positive("--trials"), help="beyond the exact budget, random greedy upper bound")
            sp.add_argument("--seed", type=int, default=0)
    sp = sub.add_parser("census", help="classify every k x k permutation")
    sp.set_defaults(func=cmd_census)
    sp.add_argument("--k", type=_positive("--k"), required=True)
    sp.add_argument("--threads", type=_positive("--threads"), default=1)
    sp.add_argument("--json", action="store_true")
    sp = sub.add_parser("sample", help="Monte-Carlo estimate of the ordinary fraction")
    sp.set_defaults(func=cmd_sample)
    sp.add_argument("--k", type=_positive("--k"), required=True)
    sp.add_argument("--samples", type=_positive("--samples"), required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--json", action="store_true")
    sp = verb("lift-check", cmd_lift_check, "check the d-dimensional lift identity", pattern=True)
    sp.add_argument("--n", type=_positive("--n"), required=True)
    sp.add_argument("--d", type=int, required=True)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "d", 2) < 2:
        parser.error("--d must be at least 2")
    try:
        return args.func(args)
    except UsageError as e:
        parser.error(f"{args.verb}: {e}")  # exits with status 2


if __name__ == "__main__":
    sys.exit(main())
