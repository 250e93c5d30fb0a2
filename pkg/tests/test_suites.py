import time

import pytest

from bvbicomplex.lie_algebra import load_algebra
from bvbicomplex.suites import SUITES, SuiteOptions, run_suite

FAST = SuiteOptions(seed=1, trials=3, alpha_trials=1)


@pytest.mark.parametrize("suite", SUITES)
def test_suites_pass_on_abelian1(suite):
    (rep,) = run_suite(suite, load_algebra("abelian1"), FAST)
    assert rep.passed, [c.name for c in rep.failures()]


@pytest.mark.parametrize("suite", ("brackets", "nonabelian-cs", "covariant"))
def test_suites_pass_on_so3(suite):
    (rep,) = run_suite(suite, load_algebra("so3"), FAST)
    assert rep.passed, [c.name for c in rep.failures()]


def test_report_json_is_sorted_and_untimed():
    (rep,) = run_suite("abelian-cs", load_algebra("abelian1"), FAST)
    js = rep.to_json()
    names = [c["name"] for c in js["checks"]]
    assert names == sorted(names) and js["schema"] == 1
    assert all("seconds" not in c for c in js["checks"])
    assert all("seconds" in c for c in rep.to_json(timing=True)["checks"])


def test_all_runs_every_suite():
    reps = run_suite("all", load_algebra("abelian1"), FAST)
    assert [r.suite for r in reps] == list(SUITES)


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suite("nope", load_algebra("abelian1"))
