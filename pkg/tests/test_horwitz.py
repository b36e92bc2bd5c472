"""Coefficient-of-variation model: theoretical CV, empirical curve, effort law."""

import math

import numpy as np
import pytest

from intdist.errors import DomainError
from intdist.horwitz import CvPoint, cv_theoretical, hall_selinger_n, horwitz_cv, horwitz_table


def test_cv_theoretical_values():
    assert abs(cv_theoretical(1e-4, 1e6) - 0.09999499987499375) < 1e-15
    assert cv_theoretical(0.5, 1.0) == pytest.approx(1.0, rel=1e-15)
    with pytest.raises(DomainError):
        cv_theoretical(0.0, 10.0)
    with pytest.raises(DomainError):
        cv_theoretical(0.5, 0.0)
    with pytest.raises(DomainError):
        cv_theoretical(1.0, 10.0)


def test_cv_theoretical_small_p_limit():
    # the (1-p) factor is an O(p) correction on (np)^(-1/2)
    for p in (1e-8, 1e-5, 1e-3):
        base = 1.0 / math.sqrt(1e4 * p)
        assert abs(cv_theoretical(p, 1e4) - base) / base <= p


def test_horwitz_cv_values_and_shape():
    assert abs(horwitz_cv(1e-6) - 0.02 * 10.0**0.9) < 1e-15
    ps = np.geomspace(1e-8, 0.5, 30)
    cvs = [horwitz_cv(float(p)) for p in ps]
    assert cvs == sorted(cvs, reverse=True)
    assert horwitz_cv(1.0 - 1e-12) == pytest.approx(0.02, rel=1e-9)
    with pytest.raises(DomainError):
        horwitz_cv(0.0)


def test_hall_selinger_values():
    assert abs(hall_selinger_n(1e-6) - 2500.0 * 10.0**4.2) / (2500.0 * 10.0**4.2) < 1e-14
    assert hall_selinger_n(1.0 - 1e-12) == pytest.approx(2500.0, rel=1e-9)
    np_product = hall_selinger_n(1e-6) * 1e-6
    assert 1.0 / math.sqrt(np_product) == pytest.approx(0.15887, abs=5e-6)


def test_effort_law_reproduces_horwitz_curve():
    for p in np.geomspace(1e-8, 1e-3, 25):
        ratio = cv_theoretical(float(p), hall_selinger_n(float(p))) / horwitz_cv(float(p))
        assert 1.0 - 1e-3 <= ratio <= 1.0


def test_table_endpoints_and_monotonicity():
    rows = horwitz_table(1e-8, 1e-1, 2)
    assert len(rows) == 2
    assert rows[0].p == pytest.approx(1e-8, rel=1e-12)
    assert rows[1].p == pytest.approx(1e-1, rel=1e-12)
    rows = horwitz_table(1e-8, 1e-1, 40)
    cvs = [r.cv for r in rows]
    assert cvs == sorted(cvs, reverse=True)
    ns = [r.n for r in rows]
    assert ns == sorted(ns, reverse=True)


def test_table_rejects_bad_range():
    with pytest.raises(DomainError):
        horwitz_table(1e-1, 1e-8, 10)
    with pytest.raises(DomainError):
        horwitz_table(1e-8, 1e-1, 1)


def test_cv_point_invariants():
    with pytest.raises(DomainError):
        CvPoint(p=0.0, n=10.0, cv=0.1)
    with pytest.raises(DomainError):
        CvPoint(p=0.5, n=-1.0, cv=0.1)
