"""Named property suites over generated and enumerated instances."""

from __future__ import annotations

import functools
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, replace

from ._search import Budget
from .acyclic import reflect
from .congruence import (RelationPair, coproduct_by_pushouts, coproduct_of_maps, filtered_colimit,
                         finite_colimit, pushout, quotient_universal_check,
                         saturate, sieve_pushout_direct)
from .errors import (AccatError, ConditionsViolated, GrowthExceeded, SearchBudgetExceeded,
                     StageBudgetExceeded, UnknownSuite)
from .fincat import (FinCat, FinFunctor, are_isomorphic, chain_category, count_functors,
                     discrete_category, enumerate_functors, find_isomorphism_under, is_acyclic,
                     is_dwyer, is_isomorphism, is_sieve, terminal_category)
from .generate import (SuiteConfig, dedupe_isomorphic, random_acyclic, random_category,
                       random_complex, random_filtered_diagram, random_functor,
                       random_map_family, random_sieve_span, rng_for, small_acyclic_categories,
                       small_categories)
from .homology import HomologyProfile, homology
from .model import has_rlp, soa_factorize
from .simplicial import (Poset, TruncationWarning, boundary, csd2, horn, nerve, sd,
                         standard_simplex, tau1, thol_generator)


@dataclass
class InstanceResult:
    index: int
    passed: bool
    detail: str = ""


@dataclass
class SuiteReport:
    name: str
    results: list = field(default_factory=list)

    @property
    def passed(self) -> int:
        return sum(r.passed for r in self.results)

    @property
    def total(self) -> int:
        return len(self.results)

    @property
    def ok(self) -> bool:
        return self.passed == self.total

    def failures(self) -> list:
        return [r for r in self.results if not r.passed]

    def summary(self) -> str:
        return f"{self.name}: {self.passed}/{self.total} passed"

    def to_dict(self) -> dict:
        return {"suite": self.name, "passed": self.passed, "total": self.total,
                "results": [asdict(r) for r in self.results]}


@dataclass(frozen=True)
class Suite:
    name: str
    check: object           # (cfg, index) -> (passed, detail)
    default_count: object   # int, or a callable giving the size of a fixed corpus
    max_objects: int = 4
    max_morphisms: int = 10
    description: str = ""
    cap: int = None         # suite-specific saturation cap, if any


# -- sieve pushouts -------------------------------------------------------------


def _span(cfg, index):
    return random_sieve_span(rng_for(cfg, "sieve-span", index), cfg.max_objects, cfg.max_morphisms)


def _pushsieve_acyclic(cfg, index):
    s = _span(cfg, index)
    P, _, _ = pushout(s.i, s.F, cfg.cap)
    return is_acyclic(P), f"{len(P.objects)} objects, {len(P.morphisms)} morphisms"


def _pushsieve_oracle(cfg, index):
    s = _span(cfg, index)
    P, _, _ = pushout(s.i, s.F, cfg.cap)
    direct = sieve_pushout_direct(s.i, s.F)
    return are_isomorphic(P, direct, Budget(cfg.budget)), ""


def _pushsieve_legs(cfg, index):
    s = _span(cfg, index)
    P, leg_b, leg_c = pushout(s.i, s.F, cfg.cap)
    problems = []
    if not leg_c.is_injective_on_objects():
        problems.append("C-leg not injective on objects")
    if not leg_c.is_full():
        problems.append("C-leg not full")
    if not leg_c.is_faithful():
        problems.append("C-leg not faithful")
    in_a = set(s.i.object_map.values())
    members = {p: ([], []) for p in P.objects}
    for b in leg_b.source.objects:
        members[leg_b.obj(b)][0].append(b)
    for c in leg_c.source.objects:
        members[leg_c.obj(c)][1].append(c)
    for p, (bs, cs) in members.items():
        outside = [b for b in bs if b not in in_a]
        singleton = len(outside) == 1 and len(bs) == 1 and not cs
        one_c = len(cs) == 1 and not outside
        if singleton == one_c:
            problems.append(f"object class {p!r} has B-members {bs} and C-members {cs}")
    return not problems, "; ".join(problems)


# -- filtered colimits, reflection, coproducts ----------------------------------------


def _filtered(cfg, index):
    D = random_filtered_diagram(rng_for(cfg, "filtered-diagram", index), cfg.max_objects)
    L, _ = filtered_colimit(D)
    M, _ = finite_colimit(D, cfg.cap)
    if not is_acyclic(L):
        return False, "filtered colimit is not acyclic"
    return are_isomorphic(L, M, Budget(cfg.budget)), f"{len(L.objects)} objects"


def walking_isomorphism() -> FinCat:
    return FinCat(["a", "b"], [("f", "a", "b"), ("g", "b", "a")],
                  {("f", "g"): "id:a", ("g", "f"): "id:b"})


def cyclic_group(n: int) -> FinCat:
    names = ["id:*"] + [f"r{k}" for k in range(1, n)]
    table = {(names[i], names[j]): names[(i + j) % n] for i in range(1, n) for j in range(1, n)}
    return FinCat(["*"], [(names[k], "*", "*") for k in range(1, n)], table)


def poset_corpus() -> list:
    diamond = Poset(["0", "1", "2", "3"], [("0", "1"), ("0", "2"), ("1", "3"), ("2", "3"),
                                           ("0", "3")])
    vee = Poset(["a", "b", "c"], [("a", "b"), ("a", "c")])
    return [chain_category(1), chain_category(2), chain_category(3), discrete_category(["p", "q"]),
            vee.as_category(), diamond.as_category(), csd2(standard_simplex(1)).as_category()]


def reflection_corpus() -> list:
    """``(label, category, expected reflection or None for 'itself with iso unit')``."""
    point = terminal_category()
    out = [("walking isomorphism", walking_isomorphism(), point),
           ("2-element group", cyclic_group(2), point),
           ("3-element group", cyclic_group(3), point),
           ("parallel pair", FinCat(["a", "b"], [("f", "a", "b"), ("g", "a", "b")]), None)]
    out += [(f"poset {k}", P, None) for k, P in enumerate(poset_corpus())]
    return out


def _reflect(cfg, index):
    corpus = reflection_corpus()
    if index < len(corpus):
        label, C, expected = corpus[index]
        r = reflect(C, cfg.cap)
        if expected is None:
            ok = is_isomorphism(r.unit) and r.rounds == 1
        else:
            ok = are_isomorphic(r.quotient, expected)
        return ok and is_acyclic(r.quotient), label
    C = random_category(rng_for(cfg, "category", index - len(corpus)), cfg.max_objects,
                        cfg.max_morphisms)
    r = reflect(C, cfg.cap)
    return is_acyclic(r.quotient), f"rounds={r.rounds}"


def _dirprodlim(cfg, index):
    maps = random_map_family(rng_for(cfg, "family", index))
    Z, comp = coproduct_by_pushouts(maps, cfg.cap)
    direct = coproduct_of_maps(maps)
    phi = find_isomorphism_under(comp, direct, Budget(cfg.budget))
    return phi is not None, f"{len(maps)} maps"


# -- exhaustive corpora -------------------------------------------------------------


@functools.lru_cache(maxsize=None)
def adjunction_corpus() -> tuple:
    return tuple(dedupe_isomorphic(small_categories(3, 3) + small_acyclic_categories(3, 6)))


@functools.lru_cache(maxsize=None)
def acyclic_targets() -> tuple:
    return tuple(small_acyclic_categories(3, 3))


def _adjunction(cfg, index):
    C = adjunction_corpus()[index]
    r = reflect(C, cfg.cap)
    problems = []
    for k, D in enumerate(acyclic_targets()):
        left = count_functors(r.quotient, D, Budget(cfg.budget))
        right = count_functors(C, D, Budget(cfg.budget))
        if left != right:
            problems.append(f"target {k}: {left} != {right}")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", TruncationWarning)
        N = nerve(C, 2) if not is_acyclic(C) else nerve(C)
    if not are_isomorphic(tau1(N, cfg.cap), C):
        problems.append("fundamental category of the nerve differs")
    return not problems, "; ".join(problems)


@functools.lru_cache(maxsize=None)
def quotient_corpus() -> tuple:
    return tuple(small_categories(3, 3))


@functools.lru_cache(maxsize=None)
def quotient_targets() -> tuple:
    return tuple(small_categories(3, 2))


def single_relations(C: FinCat) -> list:
    """One object pair or one pair of single arrows, each unordered and distinct."""
    out = []
    objs = list(C.objects)
    for a in range(len(objs)):
        for b in range(a + 1, len(objs)):
            out.append(RelationPair([(objs[a], objs[b])]))
    arrows = list(C.arrows)
    for a in range(len(arrows)):
        for b in range(a + 1, len(arrows)):
            out.append(RelationPair((), [((arrows[a],), (arrows[b],))]))
    return out


def _satisfies(F: FinFunctor, R: RelationPair) -> bool:
    for x, y in R.object_pairs:
        if F.obj(x) != F.obj(y):
            return False
    D = F.target
    for u, v in R.sequence_pairs:
        images = []
        for seq in (u, v):
            out = F.mor(seq[0])
            for m in seq[1:]:
                nxt = F.mor(m)
                if D.tgt(out) != D.src(nxt):
                    return False
                out = D.compose(out, nxt)
            images.append(out)
        if images[0] != images[1]:
            return False
    return True


def _quotient_universal(cfg, index):
    C = quotient_corpus()[index]
    problems, skipped = [], 0
    functors = [enumerate_functors(C, D, Budget(cfg.budget)) for D in quotient_targets()]
    for R in single_relations(C):
        try:
            P = saturate(C, R, cfg.cap)
        except GrowthExceeded:
            skipped += 1
            continue
        Q, q = P.to_category()
        for k, D in enumerate(quotient_targets()):
            sat = set()
            for F in functors[k]:
                if _satisfies(F, R):
                    sat.add(F)
                    G = quotient_universal_check(C, R, F, cfg.cap, P)
                    if q.then(G) != F:
                        problems.append(f"{R}: induced functor does not factor")
                else:
                    try:
                        quotient_universal_check(C, R, F, cfg.cap, P)
                        problems.append(f"{R}: violating functor was accepted")
                    except ConditionsViolated:
                        pass
            images = [q.then(G) for G in enumerate_functors(Q, D, Budget(cfg.budget))]
            if len(set(images)) != len(images) or set(images) != sat:
                problems.append(f"target {k}: factorization is not unique for {R}")
    detail = "; ".join(problems[:3])
    if skipped:
        detail = (detail + "; " if detail else "") + f"{skipped} infinite quotients skipped"
    return not problems, detail


# -- generators and homology --------------------------------------------------------


def _generator_counts(cfg, index):
    checks = [
        ("cSd2 Delta^1 has 5 elements", lambda: len(csd2(standard_simplex(1))) == 5),
        ("cSd2 Delta^2 has 25 elements", lambda: len(csd2(standard_simplex(2))) == 25),
        ("sd Delta^2 has 7/12/6 simplices", lambda: sd(standard_simplex(2)).f_vector() == [7, 12, 6]),
        ("I at n=0 is the empty poset into a point",
         lambda: (len(thol_generator("I", 0).source.objects) == 0
                  and len(thol_generator("I", 0).target.objects) == 1)),
    ]
    label, fn = checks[index]
    return fn(), label


def generator_list(max_dim: int = 3) -> list:
    out = [("I", n, None) for n in range(max_dim + 1)]
    out += [("J", n, k) for n in range(1, max_dim + 1) for k in range(n + 1)]
    return out


def _generator_structure(cfg, index):
    kind, n, k = generator_list()[index]
    F = thol_generator(kind, n, k)
    label = f"{kind} n={n}" + (f" k={k}" if k is not None else "")
    problems = []
    if not is_sieve(F):
        problems.append("not a sieve")
    w = is_dwyer(F, Budget(cfg.budget))
    if not w:
        problems.append(f"not Dwyer: {w}")
    elif w.problems(F):
        problems.append("Dwyer witness fails validation")
    for C in (F.source, F.target):
        try:
            Poset.from_category(C)
        except ValueError:
            problems.append("endpoint is not a poset")
    return not problems, label + ("; " + "; ".join(problems) if problems else "")


def homology_generator_cases() -> list:
    out = []
    for n in range(4):
        out.append((f"Delta^{n}", standard_simplex(n), HomologyProfile.point()))
    for n in range(1, 4):
        out.append((f"boundary of Delta^{n}", boundary(n), HomologyProfile.sphere(n - 1)))
        for k in range(n + 1):
            out.append((f"horn({n},{k})", horn(n, k), HomologyProfile.point()))
    return out


def _homology(cfg, index):
    cases = homology_generator_cases()
    if index < len(cases):
        label, K, expected = cases[index]
        got = homology(nerve(csd2(K).as_category()))
        return got == expected, f"{label}: {got.betti}"
    K = random_complex(rng_for(cfg, "complex", index - len(cases)))
    a, b = homology(K), homology(sd(K))
    return a == b, f"betti {a.betti}"


# -- small object argument ---------------------------------------------------------


SOA_MAX_OBJECTS = 300
SOA_BUDGET = 150_000


def soa_instance(cfg, index) -> FinFunctor:
    rng = rng_for(cfg, "soa", index)
    X = random_acyclic(rng, cfg.max_objects, 6)
    Y = random_acyclic(rng, cfg.max_objects, 6)
    return random_functor(rng, X, Y)


def _soa(cfg, index):
    f = soa_instance(cfg, index)
    budget = Budget(min(cfg.budget, SOA_BUDGET))
    try:
        record, q = soa_factorize(f, "J", 2, 8, cap=min(cfg.cap, SOA_MAX_OBJECTS), budget=budget)
    except StageBudgetExceeded as exc:
        return False, f"no J-injective after {exc.max_stages} stages"
    except GrowthExceeded:
        return False, f"stage grew past {SOA_MAX_OBJECTS} objects"
    except SearchBudgetExceeded:
        return False, "square enumeration exceeded its budget"
    problems = []
    if not has_rlp(q, "J", 2, Budget(cfg.budget)):
        problems.append("q lacks the lifting property")
    if record.composite.then(q) != f:
        problems.append("composite differs from f")
    if not all(is_acyclic(C) for C in record.categories()):
        problems.append("an intermediate stage is not acyclic")
    return not problems, f"{len(record.stages)} stages" + ("; " + "; ".join(problems) if problems else "")


SUITES = {s.name: s for s in [
    Suite("pushsieve-acyclic", _pushsieve_acyclic, 200, 5, 10,
          "pushouts along sieves of acyclic categories are acyclic"),
    Suite("pushsieve-oracle", _pushsieve_oracle, 200, 5, 10,
          "general pushout agrees with the normal-form sieve pushout"),
    Suite("pushsieve-legs", _pushsieve_legs, 200, 5, 10,
          "the far leg is a full embedding and object classes are as expected"),
    Suite("filtered-colimit", _filtered, 100, 4, 8,
          "filtered colimits of acyclic categories are acyclic and agree with finite colimits"),
    Suite("reflect-acyclic", _reflect, 200 + len(reflection_corpus()), 4, 10,
          "acyclic reflection yields acyclic categories; fixed corpus outcomes"),
    Suite("adjunction-counts", _adjunction, lambda: len(adjunction_corpus()), 3, 6,
          "hom-set sizes across the reflection and the nerve/fundamental category counit"),
    Suite("generator-counts", _generator_counts, 4, 3, 10, "sizes of subdivided generators"),
    Suite("generator-structure", _generator_structure, len(generator_list()), 3, 10,
          "generators are sieves and Dwyer maps between posets"),
    Suite("homology", _homology, len(homology_generator_cases()) + 50, 8, 10,
          "generator homology profiles and subdivision invariance"),
    Suite("coproduct-pushouts", _dirprodlim, 50, 3, 5,
          "coproducts of maps as composites of pushouts"),
    Suite("soa", _soa, 20, 4, 6, "bounded small object argument against J"),
    # the largest finite quotient in this corpus has 8 arrows, so a small cap
    # separates finite from infinite quotients without long saturation runs
    Suite("quotient-universal", _quotient_universal, lambda: len(quotient_corpus()), 3, 3,
          "quotients by single relations have the universal property", cap=500),
]}


FIXED_CORPUS = {"adjunction-counts", "generator-counts", "generator-structure",
                "quotient-universal"}


def suite_config(name: str, cfg: SuiteConfig = None, **overrides) -> SuiteConfig:
    """``cfg`` with the suite's own size bounds unless overridden."""
    if name not in SUITES:
        raise UnknownSuite(f"unknown suite {name!r}")
    s = SUITES[name]
    base = dict(max_objects=s.max_objects, max_morphisms=s.max_morphisms)
    if s.cap is not None:
        base["cap"] = s.cap
    base.update(overrides)
    return replace(cfg or SuiteConfig(), **base)


def default_count(name: str) -> int:
    c = SUITES[name].default_count
    return c() if callable(c) else c


def _run_one(name: str, cfg: SuiteConfig, index: int) -> InstanceResult:
    try:
        passed, detail = SUITES[name].check(cfg, index)
    except (GrowthExceeded, SearchBudgetExceeded) as exc:
        return InstanceResult(index, False, f"resource cap: {exc}")
    except AccatError as exc:
        return InstanceResult(index, False, f"{type(exc).__name__}: {exc}")
    return InstanceResult(index, bool(passed), detail)


def run_suite(name: str, cfg: SuiteConfig = None, count: int = None, workers: int = 1,
              progress=None) -> SuiteReport:
    """Run ``count`` instances of a suite (its default size when omitted).

    Fixed-corpus suites cap ``count`` at the corpus size.  Results are
    ordered by instance index whatever the number of workers.
    """
    if name not in SUITES:
        raise UnknownSuite(f"unknown suite {name!r}")
    cfg = cfg or suite_config(name)
    total = default_count(name)
    n = total if count is None else count
    if name in FIXED_CORPUS:
        n = min(n, total)
    report = SuiteReport(name)
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            results = pool.map(functools.partial(_run_one, name, cfg), range(n))
            report.results = list(results)
    else:
        for i in range(n):
            res = _run_one(name, cfg, i)
            report.results.append(res)
            if progress:
                progress(res)
    return report
