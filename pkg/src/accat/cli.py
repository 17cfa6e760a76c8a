"""``accat`` command-line interface.

Constructions print JSON on stdout; checks print one line per fact.  With
``--json-out PATH`` every command also writes a machine-readable report.

Exit codes: 0 success, 1 property failure, 2 invalid input or unknown
command, 3 resource cap reached.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings

from . import io
from .acyclic import reflect
from .congruence import (DEFAULT_CAP, coequalizer, filtered_colimit, finite_colimit, pushout,
                         quotient)
from .errors import (AccatError, GrowthExceeded, SearchBudgetExceeded, StageBudgetExceeded,
                     UnknownSuite)
from .fincat import FinCat, FinFunctor, is_acyclic, is_dwyer, is_sieve
from .generate import SuiteConfig
from .homology import homology
from .model import find_lift, has_rlp, smallness_witness, soa_factorize
from .simplicial import (SimplicialComplex, TruncationWarning, nerve, sd, tau1,
                         thol_generator)
from .suites import SUITES, run_suite, suite_config
from ._search import DEFAULT_BUDGET

OK, FAILED, INVALID, CAPPED = 0, 1, 2, 3


class Outcome:
    """What a subcommand produced: exit code, text lines and a report payload."""

    def __init__(self, code=OK, lines=(), payload=None):
        self.code = code
        self.lines = list(lines)
        self.payload = payload if payload is not None else {}


def _json_lines(payload) -> list:
    return [json.dumps(payload, indent=2)]


def _built(payload) -> Outcome:
    return Outcome(OK, _json_lines(payload), payload)


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


# -- subcommands -------------------------------------------------------------------


def cmd_check(args) -> Outcome:
    obj = io.load_any(args.file)
    lines, payload, code = [], {}, OK
    if isinstance(obj, FinCat):
        acyc = is_acyclic(obj)
        payload = {"kind": "category", "objects": len(obj.objects),
                   "morphisms": len(obj.morphisms), "acyclic": acyc}
        lines = ["valid category",
                 f"objects: {len(obj.objects)}",
                 f"non-identity morphisms: {len(obj.morphisms)}",
                 f"acyclic: {_yes(acyc)}"]
        if args.acyclic and not acyc:
            code = FAILED
    elif isinstance(obj, FinFunctor):
        sieve = is_sieve(obj)
        payload = {"kind": "functor", "injective_on_objects": obj.is_injective_on_objects(),
                   "full": obj.is_full(), "faithful": obj.is_faithful(), "sieve": sieve}
        lines = ["valid functor"] + [f"{k.replace('_', ' ')}: {_yes(v)}"
                                     for k, v in payload.items() if k != "kind"]
        if args.dwyer:
            dw = bool(sieve and is_dwyer(obj, args.budget))
            payload["dwyer"] = dw
            lines.append(f"dwyer: {_yes(dw)}")
            code = OK if dw else FAILED
        if args.sieve and not sieve:
            code = FAILED
    else:
        payload = {"kind": "complex", "dimension": obj.dim, "f_vector": list(obj.f_vector()),
                   "euler_characteristic": obj.euler_characteristic()}
        lines = ["valid complex", f"dimension: {obj.dim}",
                 f"f-vector: {list(obj.f_vector())}",
                 f"euler characteristic: {obj.euler_characteristic()}"]
    return Outcome(code, lines, payload)


def cmd_reflect(args) -> Outcome:
    result = reflect(io.load_category(args.category), args.cap)
    return _built({"category": io.category_to_dict(result.quotient),
                   "unit": io.functor_to_dict(result.unit), "rounds": result.rounds})


def cmd_quotient(args) -> Outcome:
    C = io.load_category(args.category)
    R = io.load_relation(args.relation)
    R.validate(C)
    Q, q = quotient(C, R, args.cap)
    return _built({"category": io.category_to_dict(Q), "quotient_map": io.functor_to_dict(q)})


def _load_pair(args, first, second):
    src = io.load_category(args.source) if args.source else None
    tgt = io.load_category(args.target) if args.target else None
    F = io.load_functor(first, src, tgt)
    G = io.load_functor(second, src or F.source, tgt or F.target)
    return F, G


def cmd_coequalize(args) -> Outcome:
    F, G = _load_pair(args, args.first, args.second)
    Q, q = coequalizer(F, G, args.cap)
    return _built({"category": io.category_to_dict(Q), "quotient_map": io.functor_to_dict(q)})


def cmd_pushout(args) -> Outcome:
    i = io.load_functor(args.left)
    F = io.load_functor(args.right, source=i.source)
    P, leg_b, leg_c = pushout(i, F, args.cap)
    return _built({"category": io.category_to_dict(P),
                   "left_leg": io.functor_to_dict(leg_b),
                   "right_leg": io.functor_to_dict(leg_c)})


def cmd_colimit(args) -> Outcome:
    D = io.load_diagram(args.diagram)
    L, cocone = filtered_colimit(D) if args.filtered else finite_colimit(D, args.cap)
    return _built({"category": io.category_to_dict(L),
                   "cocone": {x: io.functor_to_dict(F) for x, F in cocone.items()}})


def cmd_nerve(args) -> Outcome:
    C = io.load_category(args.category)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", TruncationWarning)
        X = nerve(C, args.max_dim)
    payload = io.sset_to_dict(X)
    lines = [f"# {w.message}" for w in caught] + _json_lines(payload)
    return Outcome(OK, lines, payload)


def cmd_sd(args) -> Outcome:
    K = sd(io.load_complex(args.file), args.times)
    return _built(io.complex_to_dict(K))


def cmd_tau1(args) -> Outcome:
    obj = io.load_any(args.file)
    if isinstance(obj, FinCat):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", TruncationWarning)
            obj = nerve(obj, max(2, args.max_dim or 2))
    elif not isinstance(obj, SimplicialComplex):
        raise io.FormatError("tau1 needs a complex or a category file")
    return _built(io.category_to_dict(tau1(obj, args.cap)))


def cmd_generators(args) -> Outcome:
    F = thol_generator(args.set, args.dim, args.horn)
    return _built({"domain": io.category_to_dict(F.source),
                   "codomain": io.category_to_dict(F.target),
                   "functor": io.functor_to_dict(F)})


def cmd_homology(args) -> Outcome:
    if args.via_nerve:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", TruncationWarning)
            X = nerve(io.load_category(args.file), args.max_dim)
    else:
        X = io.load_complex(args.file)
    profile = homology(X)
    payload = {"betti": list(profile.betti),
               "torsion": [list(t) for t in profile.torsion]}
    return Outcome(OK, profile.lines(), payload)


def cmd_lift(args) -> Outcome:
    sq = io.load_square(args.square)
    h = find_lift(sq, args.budget)
    if not h:
        return Outcome(FAILED, ["no lift"], {"lift": None})
    payload = {"lift": io.functor_to_dict(h)}
    return Outcome(OK, _json_lines(payload), payload)


def _load_one(args):
    src = io.load_category(args.source) if args.source else None
    tgt = io.load_category(args.target) if args.target else None
    return io.load_functor(args.functor, src, tgt)


def cmd_rlp(args) -> Outcome:
    g = _load_one(args)
    verdict = has_rlp(g, args.against, args.max_dim, args.budget)
    payload = {"holds": verdict.holds, "max_dim": verdict.max_dim,
               "generator": verdict.generator}
    lines = [f"RLP against {args.against} up to dimension {verdict.max_dim}: {_yes(verdict.holds)}"]
    if not verdict:
        lines.append(f"first failing generator: {verdict.generator}")
    return Outcome(OK if verdict else FAILED, lines, payload)


def cmd_factorize(args) -> Outcome:
    f = _load_one(args)
    try:
        record, q = soa_factorize(f, args.against, args.max_dim, args.max_stages,
                                  args.cap, args.budget)
    except StageBudgetExceeded as exc:
        sizes = [len(c.objects) for c in exc.record.categories()]
        payload = {"converged": False, "stages": len(exc.record.stages), "objects": sizes}
        return Outcome(CAPPED, [f"no convergence after {exc.max_stages} stages",
                                f"objects per stage: {sizes}"], payload)
    payload = {"converged": True, "stages": len(record.stages),
               "objects": [len(c.objects) for c in record.categories()],
               "middle": io.category_to_dict(q.source),
               "cell_map": io.functor_to_dict(record.composite),
               "fibration": io.functor_to_dict(q)}
    return _built(payload)


def cmd_smallness(args) -> Outcome:
    C = io.load_category(args.category)
    cats, funs = io.load_chain(args.chain)
    v = smallness_witness(C, cats, funs, args.cap, args.budget)
    payload = {"bijective": v.bijective, "colimit_size": v.colimit_size,
               "direct_size": v.direct_size}
    lines = [f"colim Hom(C, X_k): {v.colimit_size}",
             f"Hom(C, colim X_k): {v.direct_size}",
             f"bijective: {_yes(v.bijective)}"]
    return Outcome(OK if v else FAILED, lines, payload)


def cmd_suite(args) -> Outcome:
    if args.list:
        lines = [f"{name}: {s.description}" for name, s in SUITES.items()]
        return Outcome(OK, lines, {"suites": list(SUITES)})
    if args.name is None:
        raise UnknownSuite("name a suite, or pass --list")
    overrides = {}
    if args.max_objects:
        overrides["max_objects"] = args.max_objects
    if args.max_morphisms:
        overrides["max_morphisms"] = args.max_morphisms
    if args.cap != DEFAULT_CAP:
        overrides["cap"] = args.cap
    base = SuiteConfig(seed=args.seed, cap=args.cap, budget=args.budget)
    cfg = suite_config(args.name, base, **overrides)
    report = run_suite(args.name, cfg, args.count, args.workers)
    lines = [f"{args.name} #{r.index}: {'PASS' if r.passed else 'FAIL'} {r.detail}".rstrip()
             for r in report.results]
    lines.append(report.summary())
    return Outcome(OK if report.ok else FAILED, lines, report.to_dict())


# -- parser ------------------------------------------------------------------------------


def _global_flags(parser, defaults: bool):
    def d(value):
        return value if defaults else argparse.SUPPRESS

    parser.add_argument("--cap", type=int, default=d(DEFAULT_CAP),
                        help="class cap for congruence saturation")
    parser.add_argument("--budget", type=int, default=d(DEFAULT_BUDGET),
                        help="node budget for backtracking searches")
    parser.add_argument("--seed", type=int, default=d(0), help="seed for generated instances")
    parser.add_argument("--json-out", metavar="PATH", default=d(None),
                        help="also write a JSON report to PATH")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="accat",
                                     description="Finite categories, acyclic categories and their homotopy toolkit.")
    _global_flags(parser, True)
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, False)
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    def add(name, func, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=func)
        return p

    p = add("check", cmd_check, "validate a category, functor or complex file")
    p.add_argument("file")
    p.add_argument("--acyclic", action="store_true", help="fail unless the category is acyclic")
    p.add_argument("--sieve", action="store_true", help="fail unless the functor is a sieve")
    p.add_argument("--dwyer", action="store_true", help="fail unless the functor is a Dwyer map")

    p = add("reflect", cmd_reflect, "acyclic reflection with its unit")
    p.add_argument("category")

    p = add("quotient", cmd_quotient, "quotient by the congruence generated by a relation")
    p.add_argument("category")
    p.add_argument("relation")

    p = add("coequalize", cmd_coequalize, "coequalizer of two parallel functors")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--source", help="category file for the shared source")
    p.add_argument("--target", help="category file for the shared target")

    p = add("pushout", cmd_pushout, "pushout of a span B <- A -> C")
    p.add_argument("left", help="functor A -> B naming its categories")
    p.add_argument("right", help="functor A -> C naming its target")

    p = add("colimit", cmd_colimit, "colimit of a finite diagram of categories")
    p.add_argument("diagram")
    p.add_argument("--filtered", action="store_true",
                   help="use the objectwise formula for a filtered index")

    p = add("nerve", cmd_nerve, "nerve of a category")
    p.add_argument("category")
    p.add_argument("--max-dim", type=int, default=None)

    p = add("sd", cmd_sd, "barycentric subdivision of a complex")
    p.add_argument("file")
    p.add_argument("--times", type=int, default=1)

    p = add("tau1", cmd_tau1, "fundamental category of a complex or of a category's nerve")
    p.add_argument("file")
    p.add_argument("--max-dim", type=int, default=None)

    p = add("generators", cmd_generators, "a boundary or horn generator as a poset functor")
    p.add_argument("--set", choices=("I", "J"), required=True)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--horn", type=int, default=None, help="missing face k for J")

    p = add("homology", cmd_homology, "integral homology of a complex or a nerve")
    p.add_argument("file")
    p.add_argument("--via-nerve", action="store_true", help="treat the file as a category")
    p.add_argument("--max-dim", type=int, default=None)

    p = add("lift", cmd_lift, "search for a diagonal filler of a square")
    p.add_argument("square")

    for name, func, help_text in [("rlp", cmd_rlp, "right lifting property against I or J"),
                                  ("factorize", cmd_factorize, "small object argument factorization")]:
        p = add(name, func, help_text)
        p.add_argument("functor")
        p.add_argument("--source", help="category file for the source")
        p.add_argument("--target", help="category file for the target")
        p.add_argument("--against", choices=("I", "J"), default="J")
        p.add_argument("--max-dim", type=int, default=None)
        if name == "factorize":
            p.add_argument("--max-stages", type=int, default=16)

    p = add("smallness", cmd_smallness, "compare Hom out of C with a sequential colimit")
    p.add_argument("category")
    p.add_argument("chain")

    p = add("suite", cmd_suite, "run a named property suite")
    p.add_argument("name", nargs="?")
    p.add_argument("--count", type=int, default=None)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--max-objects", type=int, default=None)
    p.add_argument("--max-morphisms", type=int, default=None)
    p.add_argument("--list", action="store_true", help="list the available suites")
    return parser


def _classify(exc: BaseException) -> int:
    if isinstance(exc, (GrowthExceeded, SearchBudgetExceeded, StageBudgetExceeded)):
        return CAPPED
    return INVALID


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        outcome = args.func(args)
    except (AccatError, ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        code = _classify(exc)
        label = "resource cap" if code == CAPPED else "error"
        message = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"{label}: {message}", file=sys.stderr)
        outcome = Outcome(code, [], {"error": str(message)})
    else:
        for line in outcome.lines:
            print(line)
    if args.json_out:
        report = {"command": args.command, "exit_code": outcome.code, **outcome.payload}
        io.dump(report, args.json_out)
    return outcome.code


if __name__ == "__main__":
    sys.exit(main())
