"""Acceptance suite: each criterion runs exactly, prints one line, and is
enforced at its stated budget.

Runtime budgets hold on release machines; pass/fail is what matters.
Run with `pytest tests/test_acceptance.py -v -s` to see the summary lines.
"""

import time

import pytest

from affext.verify import (claim_abelian_subgroup, claim_central_tensor,
                           claim_coboundary_lemma, claim_cohomology_oracle,
                           claim_commutator_laws, claim_equivalence_gamma,
                           claim_nilpotent_tensor, claim_roundtrip,
                           claim_split_test, claim_stabilizer_z1,
                           claim_trivial_action, run_all, results_to_json)


def _check(label, rep, budget=None, elapsed=None):
    status = "pass" if rep["holds"] else "FAIL"
    line = "criterion %-28s %s" % (label, status)
    if elapsed is not None:
        line += "  (%.2fs)" % elapsed
    print(line)
    assert rep["holds"], rep.get("witness")
    if budget is not None and elapsed is not None:
        assert elapsed < budget, "%s exceeded its %ss budget: %.2fs" % (
            label, budget, elapsed)


def test_criterion_01_roundtrip():
    t0 = time.time()
    rep = claim_roundtrip()
    _check("1 round-trip", rep, budget=10.0, elapsed=time.time() - t0)


def test_criterion_02_cohomology_vs_oracle():
    t0 = time.time()
    rep = claim_cohomology_oracle()
    elapsed = time.time() - t0
    _check("2 cohomology-vs-oracle", rep, budget=60.0, elapsed=elapsed)
    details = rep["details"]
    assert details["Z2-by-Z2"]["h2"] == 2
    assert details["Z2-by-Z2"]["types"] == ["Z2xZ2", "Z4"]


def test_criterion_03_split_test():
    t0 = time.time()
    rep = claim_split_test()
    _check("3 split-test", rep, budget=1.0, elapsed=time.time() - t0)


def test_criterion_04_coboundaries_are_cocycles():
    t0 = time.time()
    rep = claim_coboundary_lemma()
    _check("4 coboundary-lemma", rep, elapsed=time.time() - t0)


def test_criterion_05_equivalence_cross_validation():
    t0 = time.time()
    rep = claim_equivalence_gamma()
    _check("5 equivalence-gamma", rep, elapsed=time.time() - t0)


def test_criterion_06_stabilizer_z1():
    t0 = time.time()
    rep = claim_stabilizer_z1()
    _check("6 stabilizer-z1", rep, elapsed=time.time() - t0)


def test_criterion_07_commutator_laws():
    t0 = time.time()
    rep = claim_commutator_laws()
    _check("7 commutator-laws", rep, budget=30.0, elapsed=time.time() - t0)


def test_criterion_08_central_tensor():
    t0 = time.time()
    rep = claim_central_tensor()
    _check("8 central-tensor", rep, elapsed=time.time() - t0)


def test_criterion_09_nilpotent_decomposition():
    t0 = time.time()
    rep = claim_nilpotent_tensor()
    _check("9 nilpotent-tensor", rep, elapsed=time.time() - t0)


def test_criterion_10_trivial_action():
    t0 = time.time()
    rep = claim_trivial_action()
    _check("10 trivial-action", rep, elapsed=time.time() - t0)


def test_criterion_11_abelian_subgroup():
    t0 = time.time()
    rep = claim_abelian_subgroup()
    _check("11 abelian-subgroup", rep, elapsed=time.time() - t0)


def test_criterion_12_determinism():
    from affext.serialization import dump_json
    t0 = time.time()
    results1, ok1 = run_all()
    js1 = dump_json(results_to_json(results1))
    results2, ok2 = run_all()
    js2 = dump_json(results_to_json(results2))
    holds = ok1 and ok2 and js1 == js2
    _check("12 determinism", {"holds": holds, "witness": None},
           elapsed=time.time() - t0)
