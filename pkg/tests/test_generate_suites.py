import pytest

from accat.congruence import is_filtered
from accat.errors import UnknownSuite
from accat.fincat import (are_isomorphic, is_acyclic, is_sieve, terminal_category)
from accat.generate import (KINDS, SuiteConfig, dedupe_isomorphic, generate_instance,
                            small_acyclic_categories, small_categories)
from accat.suites import SUITES, default_count, run_suite, suite_config


def test_config_bounds_must_be_positive():
    with pytest.raises(ValueError):
        SuiteConfig(max_objects=0)
    with pytest.raises(ValueError):
        SuiteConfig(budget=-1)


@pytest.mark.parametrize("kind", KINDS)
def test_instances_are_deterministic(kind):
    cfg = SuiteConfig(seed=11)
    for index in range(5):
        a = generate_instance(kind, cfg, index)
        b = generate_instance(kind, cfg, index)
        if kind in ("category", "acyclic"):
            assert a == b
        elif kind == "sieve-span":
            assert (a.i, a.F) == (b.i, b.F)
        else:
            assert a.index == b.index and a.nodes == b.nodes


def test_unknown_kind():
    with pytest.raises(ValueError):
        generate_instance("monoid", SuiteConfig())


def test_one_object_acyclic_is_terminal():
    cfg = SuiteConfig(max_objects=1)
    for index in range(5):
        assert are_isomorphic(generate_instance("acyclic", cfg, index), terminal_category())


def test_generated_instances_pass_their_validators():
    cfg = SuiteConfig(seed=2, max_objects=4, max_morphisms=8)
    for index in range(20):
        assert is_acyclic(generate_instance("acyclic", cfg, index))
        span = generate_instance("sieve-span", cfg, index)
        assert is_sieve(span.i) and is_acyclic(span.i.target) and is_acyclic(span.F.target)
        D = generate_instance("filtered-diagram", cfg, index)
        D.validate()
        assert is_filtered(D.index)
        assert all(is_acyclic(node) for node in D.nodes.values())


def test_one_object_categories_are_the_small_monoids():
    # monoids of order 1, 2, 3, 4 up to isomorphism: 1, 2, 7, 35
    one = [C for C in small_categories(1, 3) if len(C.objects) == 1]
    counts = [sum(1 for C in one if len(C.morphisms) == k) for k in range(4)]
    assert counts == [1, 2, 7, 35]


def test_acyclic_enumerations_agree():
    general = [C for C in small_categories(3, 3) if is_acyclic(C)]
    direct = small_acyclic_categories(3, 3)
    assert len(general) == len(direct) == 15
    assert all(any(are_isomorphic(C, D) for D in direct) for C in general)


def test_dedupe_keeps_one_per_class():
    cats = small_acyclic_categories(2, 2)
    assert len(dedupe_isomorphic(cats + cats)) == len(cats)


# -- suites ---------------------------------------------------------------------------


def test_pushsieve_suite_with_seed_seven():
    report = run_suite("pushsieve-acyclic", suite_config("pushsieve-acyclic", SuiteConfig(seed=7)),
                       count=100)
    assert report.total == 100 and report.ok


def test_reflection_corpus_passes():
    report = run_suite("reflect-acyclic", count=11)
    assert report.ok
    labels = [r.detail for r in report.results]
    assert labels[:4] == ["walking isomorphism", "2-element group", "3-element group",
                          "parallel pair"]


def test_unknown_suite():
    with pytest.raises(UnknownSuite):
        run_suite("no-such-suite")
    with pytest.raises(UnknownSuite):
        suite_config("no-such-suite")


def test_reports_are_reproducible_and_order_stable():
    cfg = suite_config("filtered-colimit", SuiteConfig(seed=5))
    a = run_suite("filtered-colimit", cfg, count=12)
    b = run_suite("filtered-colimit", cfg, count=12)
    c = run_suite("filtered-colimit", cfg, count=12, workers=2)
    assert a.to_dict() == b.to_dict() == c.to_dict()
    assert [r.index for r in c.results] == list(range(12))


def test_fixed_corpus_sizes():
    assert default_count("generator-counts") == 4
    assert default_count("generator-structure") == 13
    assert set(SUITES) >= {"pushsieve-acyclic", "pushsieve-oracle", "pushsieve-legs",
                           "filtered-colimit", "reflect-acyclic", "adjunction-counts",
                           "generator-counts", "generator-structure", "homology",
                           "coproduct-pushouts", "soa", "quotient-universal"}


def test_resource_caps_are_reported_per_instance():
    cfg = suite_config("soa", SuiteConfig(seed=0, budget=50))
    report = run_suite("soa", cfg, count=2)
    assert report.total == 2
    assert all("budget" in r.detail or r.passed for r in report.results)
