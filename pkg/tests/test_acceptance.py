"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -s`` or ``python3 tests/test_acceptance.py``.
Every criterion must finish with zero failures inside its time budget.
"""

import os
import sys
import time
from contextlib import contextmanager

import pytest

from dnbraids.absolute import enumerate_standard_coxeter, leq_T, nc_elements
from dnbraids.coxeter import CoxeterType, format_cycles, parse_element, word_to_element
from dnbraids.diagrams import beta_x
from dnbraids.dual import DualContext, atom_word
from dnbraids.garside import format_word
from dnbraids.mikado import strand_removal_test
from dnbraids.verify import RunConfig, verify

WORKERS = os.cpu_count() or 1
_printer = None


def _say(line: str) -> None:
    if _printer is not None:
        with _printer.disabled():
            print(line)
    else:
        print(line)


@pytest.fixture(autouse=True)
def _console(capsys):
    global _printer
    _printer = capsys
    yield
    _printer = None


@contextmanager
def criterion(name: str, budget: float):
    start = time.perf_counter()
    try:
        yield
    except BaseException as exc:
        _say(f"FAIL {name} ({time.perf_counter() - start:.1f}s): {exc}")
        raise
    elapsed = time.perf_counter() - start
    if elapsed > budget:
        _say(f"FAIL {name}: took {elapsed:.1f}s, budget {budget:.0f}s")
        pytest.fail(f"{name} exceeded its {budget}s budget")
    _say(f"PASS {name} ({elapsed:.1f}s)")


def campaign(check: str, rank: int, family: str = "D", **kw):
    report = verify(RunConfig(check=check, family=family, rank=rank, workers=WORKERS, **kw))
    assert report.ok, [f.reproducer for f in report.failures[:3]]
    return report


def test_1_theorem_main_small():
    with criterion("1 theorem-main D_3, D_4", 120):
        for n, per_c in ((3, 14), (4, 50)):
            coxes = enumerate_standard_coxeter(CoxeterType("D", n))
            assert campaign("theorem-main", n).instances == per_c * len(coxes)


def test_1_theorem_main_rank5():
    with criterion("1 theorem-main D_5 (calibrated normal-form test)", 600):
        coxes = enumerate_standard_coxeter(CoxeterType("D", 5))
        assert campaign("theorem-main", 5).instances == 182 * len(coxes)


def test_2_cor_sdb():
    with criterion("2 cor-sdb D_3, D_4", 300):
        for n in (3, 4):
            campaign("cor-sdb", n)


def test_3_prop_lifts():
    with criterion("3 prop-lifts D_4, D_5", 120):
        assert campaign("prop-lifts", 4).instances == 192
        assert campaign("prop-lifts", 5).instances == 1920


def test_4_thm_mikado_bd():
    with criterion("4 thm-mikado-bd ranks 2, 3", 180):
        for n in (2, 3):
            campaign("thm-mikado-bd", n)


def test_5_relations():
    with criterion("5 lemma-relations-dn ranks 3-6", 60):
        for n in (3, 4, 5, 6):
            campaign("lemma-relations-dn", n)


def test_6_standard_shape():
    with criterion("6 lemma-std n = 3, 4, 5", 60):
        for n in (3, 4, 5):
            campaign("lemma-std", n)


def test_7_dual_matsumoto():
    with criterion("7 dual-matsumoto D_3, D_4", 300):
        for n in (3, 4):
            campaign("dual-matsumoto", n)


def test_8_ar_equivalence():
    with criterion("8 ar-equivalence D_3, D_4", 300):
        assert campaign("ar-equivalence", 3).instances == 24 * len(enumerate_standard_coxeter(CoxeterType("D", 3)))
        assert campaign("ar-equivalence", 4).instances == 192 * len(enumerate_standard_coxeter(CoxeterType("D", 4)))


def test_9_dual_diagrams():
    with criterion("9 prop-dual-diagrams D_4", 300):
        campaign("prop-dual-diagrams", 4)


def test_10_braids_are_mikado():
    with criterion("10 strand removal on beta_x, D_4", 60):
        D4 = CoxeterType("D", 4)
        count = 0
        for c in enumerate_standard_coxeter(D4):
            ctx = DualContext.create(c)
            for x in nc_elements(c):
                assert strand_removal_test(beta_x(x, c, ctx=ctx, check=False).crossings), (c, x)
                count += 1
        assert count == 50 * len(enumerate_standard_coxeter(D4))


def test_11_worked_examples():
    with criterion("11 worked examples", 1):
        A3 = CoxeterType("A", 3)
        ctx = DualContext.create(word_to_element(A3, [1, 2]))
        assert format_word(atom_word(ctx, word_to_element(A3, [1, 2, 1]))) == "sig1 sig2 sig1^-1"

        D8 = CoxeterType("D", 8)
        c = word_to_element(D8, [1, 3, 5, 7, 6, 4, 2, 0])
        assert format_cycles(c) == "[-8,-7,-5,-3,-1,4,6][2]"
        for text in ("((1,-8))((7,5,-2))", "((8,7,5))[6,3,1][2]", "((6,3,-4))"):
            assert leq_T(parse_element(D8, text), c), text


def test_12_mikado_calibration():
    with criterion("12 mikado-calibration A_3, B_3, D_3", 180):
        for family in ("A", "B", "D"):
            campaign("mikado-calibration", 3, family=family)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s", "-o", "addopts="]))
