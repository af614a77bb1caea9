"""``isotorus`` command-line front end.

With ``--json`` the machine-readable result goes to stdout and the human
report to stderr; without it the human report goes to stdout.

Exit codes: 0 ok, 1 verdict-level failure, 2 usage or input error,
3 internal invariant breach.
"""
from __future__ import annotations

import argparse
import json
import sys

from .certificates import Assumptions, VerdictOptions, incompressibility_verdict
from .errors import IsotorusError, ParseError, ValidationError
from .kernel import brute_force_kernel_oracle, group_stats, kernel_group, prime_divisors, rank_index_search
from .polarization import classify_polarization, shioda_mitani_make
from .problem import load_problem, make_problem, problem_to_obj
from .torus import endo_power, subtorus_make

EXIT_OK, EXIT_VERDICT, EXIT_USAGE, EXIT_BREACH = 0, 1, 2, 3


class Outcome:
    def __init__(self, payload, text, code=EXIT_OK, lines=None):
        self.payload = payload
        self.text = text
        self.code = code
        self.lines = lines        # JSON-lines output instead of a single document


def _endomorphism(problem, power):
    e = problem.endomorphism
    if e is None:
        raise ParseError("problem file has no endomorphism")
    return endo_power(e, power) if power > 1 else e


def _power(args, problem):
    return args.power if args.power is not None else problem.options["power"]


# subcommands

def cmd_kernel(args):
    problem = load_problem(args.problem)
    s = _power(args, problem)
    e = _endomorphism(problem, s)
    G = kernel_group(e)
    primes = [args.prime] if args.prime else (problem.options["primes"] or prime_divisors(G.order))
    lines = [{"power": s, "kernel": G.to_json(), "order": G.order, "rank": G.rank,
              "exponent": G.exponent}]
    text = [f"Ker(f^{s}) = {G}  (order {G.order}, rank {G.rank}, exponent {G.exponent})"]
    for p in primes:
        order, rank, exponent, pr = group_stats(G, p)
        lines.append({"prime": p, "p_rank": pr})
        text.append(f"  {p}-rank {pr}")
    if args.prime:
        res = rank_index_search(problem.endomorphism, args.prime, args.s_max)
        lines.append({"rank_index_search": res.to_json()})
        text.append(f"  least s with {args.prime}-rank >= dim: {res.s if res.found else 'not found'}")
    code = EXIT_OK
    if args.oracle:
        H = brute_force_kernel_oracle(e)
        agree = H == G
        lines.append({"oracle": H.to_json(), "agrees": agree})
        text.append(f"  brute-force oracle: {H} ({'agrees' if agree else 'DISAGREES'})")
        if not agree:
            code = EXIT_BREACH
    return Outcome(None, "\n".join(text), code, lines)


def cmd_classify(args):
    problem = load_problem(args.problem)
    e = _endomorphism(problem, _power(args, problem))
    r = classify_polarization(e)
    return Outcome(r.to_json(), r.describe())


def cmd_shioda_mitani(args):
    try:
        a, b, c = (int(x) for x in args.abc.split(","))
    except ValueError:
        raise ParseError("--abc expects three comma-separated integers") from None
    T = shioda_mitani_make(a, b, c)
    obj = problem_to_obj(make_problem(T))
    return Outcome(obj, f"Shioda-Mitani torus for ({a}, {b}, {c}) over {T.spec}")


def _load_subtorus(problem, path):
    with open(path, encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(obj, dict) or set(obj) != {"basis"}:
        raise ParseError("subtorus file must be {\"basis\": [[int, ...], ...]}")
    return subtorus_make(problem.torus, obj["basis"])


def cmd_orbit(args):
    from .dynamics import orbit_analysis
    problem = load_problem(args.problem)
    e = _endomorphism(problem, _power(args, problem))
    seeds = [_load_subtorus(problem, args.seed)] if args.seed else problem.subtori
    if not seeds:
        raise ParseError("no seed subtorus: pass --seed or list subtori in the problem file")
    cutoff = args.cutoff if args.cutoff is not None else problem.options["cutoff"]
    records = [orbit_analysis(e, B, cutoff) for B in seeds]
    text = "\n".join(f"{r.seed}: {r.outcome} (preperiod {r.preperiod}, period {r.period})"
                     for r in records)
    return Outcome({"orbits": [r.to_json() for r in records]}, text)


def cmd_survey(args):
    from .dynamics import preperiodicity_survey
    problem = load_problem(args.problem)
    e = _endomorphism(problem, _power(args, problem))
    H = args.height if args.height is not None else problem.options["height"]
    cutoff = args.cutoff if args.cutoff is not None else problem.options["cutoff"]
    res = preperiodicity_survey(e, H, cutoff)
    counts = ", ".join(f"{k}: {v}" for k, v in sorted(res.counts().items()))
    return Outcome(res.to_json(), f"{len(res.records)} subtori up to height {H}, cutoff {cutoff}: {counts}")


def cmd_gcd_powers(args):
    from .dynamics import gcd_power_test
    try:
        M = json.loads(args.matrix)
    except json.JSONDecodeError as exc:
        raise ParseError(f"--matrix: {exc.msg}", exc.lineno, exc.colno) from None
    if not (isinstance(M, list) and M and all(isinstance(r, list) and len(r) == len(M) for r in M)):
        raise ParseError("--matrix expects a square integer matrix")
    res = gcd_power_test(M, args.steps)
    text = (f"content(M^s), s = 1..{args.steps}: {res.contents}\n"
            f"content(M^{res.size}) = 1: {res.hypothesis}; violation: {res.violated}")
    return Outcome(res.to_json(), text, EXIT_VERDICT if res.violated else EXIT_OK)


ASSUME_FLAGS = {"simple": "is_simple", "product": "is_product_of_elliptic_curves",
                "nonisogenous": "factors_pairwise_nonisogenous"}


def cmd_certify(args):
    problem = load_problem(args.problem)
    e = _endomorphism(problem, _power(args, problem))
    a = problem.assumptions.to_json()
    for flag in args.assume or []:
        a[ASSUME_FLAGS[flag]] = True
    if args.complete_subtori:
        a["subtorus_list_complete"] = True
    if args.jordan is not None:
        a["jordan_constant"] = args.jordan
    if args.kL is not None:
        a["k_L"] = args.kL
    assumptions = Assumptions(**a)
    H = args.height if args.height is not None else problem.options["height"]
    cert = incompressibility_verdict(e, assumptions, VerdictOptions(height=H, subtori=tuple(problem.subtori)))
    return Outcome(cert.to_json(), cert.report())


def cmd_corpus(args):
    from .corpus import run_corpus
    select = None if args.case is None else [c for c in args.case if c]
    rep = run_corpus(select, jobs=args.jobs)
    return Outcome(rep.to_json(), rep.summary() or "empty selection",
                   EXIT_OK if rep.passed else EXIT_VERDICT)


def cmd_proptest(args):
    from .proptest import run_property_suites
    rep = run_property_suites(args.seed, sizes=tuple(args.size or [1]), select=args.suite,
                              scale=args.scale, jobs=args.jobs)
    return Outcome(rep.to_json(), rep.summary(), EXIT_OK if rep.passed else EXIT_VERDICT)


# parser

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="JSON on stdout, human report on stderr")

    parser = argparse.ArgumentParser(prog="isotorus", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def with_problem(name, func, help):
        p = sub.add_parser(name, parents=[common], help=help)
        p.add_argument("problem", help="problem file (schema isotorus/1)")
        p.add_argument("--power", type=int, help="iterate f^s before the computation")
        p.set_defaults(func=func)
        return p

    p = with_problem("kernel", cmd_kernel, "kernel group structure")
    p.add_argument("--prime", type=int, help="report the p-rank and run the rank-index search")
    p.add_argument("--s-max", type=int, default=12, help="search bound for the rank-index search")
    p.add_argument("--oracle", action="store_true", help="cross-check with the brute-force oracle")

    with_problem("classify", cmd_classify, "polarization classification")

    p = with_problem("orbit", cmd_orbit, "orbit of a seed subtorus")
    p.add_argument("--seed", help="subtorus file {\"basis\": ...}; default: subtori in the problem")
    p.add_argument("--cutoff", type=int)

    p = with_problem("survey", cmd_survey, "preperiodicity survey of 1-subtori")
    p.add_argument("--height", type=int)
    p.add_argument("--cutoff", type=int)

    p = with_problem("certify", cmd_certify, "essential-dimension certificate")
    p.add_argument("--assume", action="append", choices=sorted(ASSUME_FLAGS))
    p.add_argument("--complete-subtori", action="store_true")
    p.add_argument("--height", type=int)
    p.add_argument("--jordan", type=int, help="Jordan constant J")
    p.add_argument("--kL", type=int, help="index of K(L)")

    p = sub.add_parser("gcd-powers", parents=[common], help="contents of M^s")
    p.add_argument("--matrix", required=True, help='e.g. "[[0,1],[-3,1]]"')
    p.add_argument("--steps", type=int, default=40)
    p.set_defaults(func=cmd_gcd_powers)

    p = sub.add_parser("shioda-mitani", parents=[common], help="emit a Shioda-Mitani torus file")
    p.add_argument("--abc", required=True, help="positive definite form a,b,c")
    p.set_defaults(func=cmd_shioda_mitani)

    p = sub.add_parser("corpus", parents=[common], help="run the worked-example corpus")
    p.add_argument("--case", action="append", help="select a case id (repeatable)")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_corpus)

    p = sub.add_parser("proptest", parents=[common], help="run the seeded property suites")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--size", type=int, action="append")
    p.add_argument("--suite", action="append")
    p.add_argument("--scale", type=float, default=1.0, help="multiply the per-suite case counts")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_proptest)
    return parser


def _emit(out: Outcome, as_json: bool):
    if as_json:
        if out.lines is not None:
            for line in out.lines:
                print(json.dumps(line, sort_keys=True))
        else:
            print(json.dumps(out.payload, indent=2, sort_keys=True))
        print(out.text, file=sys.stderr)
    else:
        print(out.text)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    # shioda-mitani always emits a torus file
    as_json = args.json or args.command == "shioda-mitani"
    try:
        out = args.func(args)
    except (ParseError, ValidationError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except IsotorusError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_VERDICT
    except AssertionError as exc:
        print(f"invariant breach: {exc}", file=sys.stderr)
        return EXIT_BREACH
    _emit(out, as_json)
    return out.code


if __name__ == "__main__":
    sys.exit(main())
