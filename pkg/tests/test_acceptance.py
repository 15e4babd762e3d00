"""Acceptance gate: one test per criterion, each printing a pass/fail line.

Criterion 3 is expected to fail honestly: the degenerate stable point of the
centerless 4D entry is Lyapunov stable, but its excursion shrinks so slowly
with the perturbation radius that the fixed probe thresholds report it as
empirically unstable at every practical radius.  See the repository notes for
the quantitative analysis.
"""

from liestab import acceptance


def _run(fn):
    res = fn()
    mark = "PASS" if res.passed else "FAIL"
    print(f"{mark}  {res.name} ({res.seconds:.1f}s): {res.details}")
    assert res.passed, res.details


def test_criterion_1_degenerate_worked_example():
    _run(acceptance.criterion_1)


def test_criterion_2_three_dimensional_catalog():
    _run(acceptance.criterion_2)


def test_criterion_3_four_dimensional_catalog():
    _run(acceptance.criterion_3)


def test_criterion_4_witness_existence():
    _run(acceptance.criterion_4)


def test_criterion_5_conservation_and_order():
    _run(acceptance.criterion_5)


def test_criterion_6_oracle_equivalence():
    _run(acceptance.criterion_6)


def test_criterion_7_structural_invariants():
    _run(acceptance.criterion_7)


def test_criterion_8_basis_invariance():
    _run(acceptance.criterion_8)
