"""Command-line interface.

Exit codes: 0 success, 1 parse or I/O error, 2 verification or agreement
failure, 3 solver precondition unmet.
"""

from __future__ import annotations

import argparse
import logging
import sys
from typing import Callable, Sequence

from . import bruteforce, diagonal, fixedrank, linearize, reductions
from .core import (
    CopicError,
    EnumerationTooLarge,
    Instance,
    NegativeCycleError,
    NoSolutionError,
    PreconditionError,
    Solution,
    format_cost,
)
from .document import (
    DocumentError,
    dumps,
    instance_to_json,
    load_json,
    parse_instance,
    parse_kcard,
)
from .families import DEFAULT_ENUM_CAP, Unconstrained
from .generate import generate_instance

log = logging.getLogger("copic")

EXIT_OK, EXIT_PARSE, EXIT_VERIFY, EXIT_PRECONDITION = 0, 1, 2, 3


class VerificationFailure(CopicError):
    pass


def _rank1(inst: Instance, cap: int) -> Solution:
    if isinstance(inst.family1, Unconstrained):
        return fixedrank.solve_rank1_unconstrained_side(inst)
    if isinstance(inst.family2, Unconstrained):
        return fixedrank.solve_rank1_unconstrained_side(inst.transposed()).swapped()
    raise PreconditionError("requires an unconstrained family")


def _rankr(inst: Instance, cap: int) -> Solution:
    if isinstance(inst.family1, Unconstrained):
        return fixedrank.solve_rankr_unconstrained_side(inst, cap=cap)
    if isinstance(inst.family2, Unconstrained):
        return fixedrank.solve_rankr_unconstrained_side(inst.transposed(), cap=cap).swapped()
    raise PreconditionError("requires an unconstrained family")


def _side(side: int) -> Callable[[Instance, int], Solution]:
    return lambda inst, cap: bruteforce.solve_by_side_enumeration(inst, side, cap)


def _diag(fn) -> Callable[[Instance, int], Solution]:
    return lambda inst, cap: fn(inst)


SOLVERS: dict[str, Callable[[Instance, int], Solution]] = {
    name: _diag(fn) for name, fn in diagonal.SOLVERS.items()
}
SOLVERS.update({
    "rank1": _rank1,
    "rankr": _rankr,
    "side1": _side(1),
    "side2": _side(2),
})

# most specific first
AUTO_ORDER = ("diag-unconstrained", "diag-uniform", "diag-common-paths", "diag-matroid",
              "diag-uniform-path", "diag-one-side", "rank1", "rankr", "side1", "side2")

_FALLTHROUGH = (PreconditionError, EnumerationTooLarge, NegativeCycleError)


def solve_instance(inst: Instance, solver: str, cap: int, workers: int) -> tuple[Solution, str]:
    if solver == "bruteforce":
        return bruteforce.solve_bruteforce(inst, cap, workers), "bruteforce"
    if solver != "auto":
        return SOLVERS[solver](inst, cap), solver
    for name in AUTO_ORDER:
        try:
            return SOLVERS[name](inst, cap), name
        except _FALLTHROUGH as exc:
            log.info("auto: %s rejected: %s", name, exc)
    return bruteforce.solve_bruteforce(inst, cap, workers), "bruteforce"


def _solution_json(sol: Solution | None, solver: str) -> dict:
    if sol is None:
        return {"objective": "inf", "s1": None, "s2": None, "solver": solver}
    return {"objective": format_cost(sol.objective), "s1": list(sol.s1), "s2": list(sol.s2),
            "solver": solver}


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (int, str)) or x is None:
        return x
    return format_cost(x)


def _certificate_json(cert, method: str) -> dict:
    out = {"verdict": cert.verdict}
    if cert.linearizable:
        out["a"] = [format_cost(x) for x in cert.a]
        out["b"] = [format_cost(x) for x in cert.b]
    else:
        w = dict(cert.witness)
        if "terms" in w:
            w["terms"] = [{"coef": t[0], "s1": t[1], "s2": t[2]} for t in w["terms"]]
        out["witness"] = _jsonable(w)
    out["method"] = method
    return out


# ---------------------------------------------------------------------------
# commands


def cmd_solve(args) -> int:
    inst = parse_instance(load_json(args.instance))
    try:
        sol, name = solve_instance(inst, args.solver, args.cap, args.workers)
    except NoSolutionError as exc:
        log.info("no solution: %s", exc)
        sol, name = None, args.solver
    out = _solution_json(sol, name)
    if args.verify:
        try:
            ref = bruteforce.solve_bruteforce(inst, args.cap, args.workers).objective
        except NoSolutionError:
            ref = None
        except EnumerationTooLarge as exc:
            log.warning("verification skipped: %s", exc)
            out["verified"] = None
            print(dumps(out))
            return EXIT_OK
        mine = None if sol is None else sol.objective
        out["verified"] = mine == ref
        print(dumps(out))
        if mine != ref:
            ref_text = "inf" if ref is None else format_cost(ref)
            print(f"verification failed: brute force found {ref_text}", file=sys.stderr)
            return EXIT_VERIFY
        return EXIT_OK
    print(dumps(out))
    return EXIT_OK


def cmd_lincheck(args) -> int:
    inst = parse_instance(load_json(args.instance))

    def structural():
        try:
            return linearize.check_copic_linearizable(inst, args.cap), "structural"
        except PreconditionError as exc:
            log.info("structural test unavailable (%s); using enumeration", exc)
            return bruteforce.linearizable_bruteforce(inst, args.cap), "bruteforce"

    if args.method == "bruteforce":
        cert, method = bruteforce.linearizable_bruteforce(inst, args.cap), "bruteforce"
        print(dumps(_certificate_json(cert, method)))
        return EXIT_OK
    cert, method = structural()
    out = _certificate_json(cert, method)
    if args.method == "both":
        ref = bruteforce.linearizable_bruteforce(inst, args.cap)
        out["agreement"] = ref.linearizable == cert.linearizable
        print(dumps(out))
        if not out["agreement"]:
            print("structural and enumeration verdicts disagree", file=sys.stderr)
            return EXIT_VERIFY
        return EXIT_OK
    print(dumps(out))
    return EXIT_OK


def cmd_gen(args) -> int:
    inst = generate_instance(args.families[0], args.families[1], args.m, args.n, args.seed,
                             tuple(args.cost_range), args.structure)
    print(dumps(instance_to_json(inst)))
    return EXIT_OK


def cmd_reduce_cut(args) -> int:
    inst = parse_kcard(load_json(args.instance))
    solver = SOLVERS[args.solver] if args.solver != "bruteforce" else None
    if solver is None:
        fn = lambda i: bruteforce.solve_bruteforce(i, args.cap, args.workers)  # noqa: E731
    else:
        fn = lambda i: solver(i, args.cap)  # noqa: E731
    try:
        res = reductions.solve_kcard_cut_via_copic(inst, fn)
    except NoSolutionError as exc:
        print(dumps({"cost": "inf", "left": None, "right": None, "k1": None, "k2": None}))
        log.info("no cut: %s", exc)
        return EXIT_OK
    out = {"cost": format_cost(res.cost), "left": list(res.left), "right": list(res.right),
           "k1": res.k1, "k2": res.k2}
    if args.verify:
        ref = reductions.enumerate_cuts(inst)
        out["verified"] = ref.cost == res.cost
        print(dumps(out))
        return EXIT_OK if out["verified"] else EXIT_VERIFY
    print(dumps(out))
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing


def _common() -> argparse.ArgumentParser:
    """Global flags, accepted before or after the subcommand."""
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--cap", type=int, default=argparse.SUPPRESS,
                   help=f"enumeration cap (default {DEFAULT_ENUM_CAP})")
    p.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="random seed (default 0)")
    p.add_argument("--workers", type=int, default=argparse.SUPPRESS,
                   help="processes for brute-force enumeration (default 1)")
    p.add_argument("-v", "--verbose", action="count", default=argparse.SUPPRESS)
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="copic", parents=[common],
                                     description="Solve and analyse COPIC instances.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", parents=[common], help="solve an instance")
    p.add_argument("--instance", required=True)
    p.add_argument("--solver", default="auto", choices=["auto", "bruteforce", *SOLVERS])
    p.add_argument("--verify", action="store_true", help="cross-check against brute force")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("lincheck", parents=[common], help="test linearizability")
    p.add_argument("--instance", required=True)
    p.add_argument("--method", default="structural", choices=["structural", "bruteforce", "both"])
    p.set_defaults(func=cmd_lincheck)

    p = sub.add_parser("gen", parents=[common], help="generate a random instance")
    p.add_argument("--families", nargs=2, metavar=("F1", "F2"), required=True)
    p.add_argument("--m", type=int, default=4)
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--cost-range", nargs=2, type=int, metavar=("LO", "HI"), default=[-9, 9])
    p.add_argument("--structure", default="random",
                   help="random | rank:R | diagonal | linearizable")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("reduce-cut", parents=[common], help="k-card min directed cut")
    p.add_argument("--instance", required=True)
    p.add_argument("--solver", default="bruteforce", choices=["bruteforce", "side1", "side2"])
    p.add_argument("--verify", action="store_true", help="cross-check by enumerating cuts")
    p.set_defaults(func=cmd_reduce_cut)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    for name, default in (("cap", DEFAULT_ENUM_CAP), ("seed", 0), ("workers", 1), ("verbose", 0)):
        if not hasattr(args, name):
            setattr(args, name, default)
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2),
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except (DocumentError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (PreconditionError, EnumerationTooLarge, NegativeCycleError) as exc:
        print(f"precondition unmet: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except CopicError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
