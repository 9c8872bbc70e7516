"""Determinant batteries and the Bochner Gram test."""

import random
from fractions import Fraction

import mpmath
import pytest

from tplab.errors import DomainError
from tplab.pff_catalog import get_entry
from tplab.tp_tester import (
    CATALOG_LATTICE,
    STRATEGIES,
    Grid,
    bochner_battery,
    bochner_gram,
    make_grid,
    tp_battery,
    tp_det,
)


def test_det_examples(prec):
    g = get_entry("gaussian")
    assert tp_det(g, xs=[0], ys=[0], prec=prec).contains(1)
    d = tp_det(g, xs=[0, 1], ys=[0, 1], prec=prec)
    with mpmath.workdps(80):
        assert d.contains(1 - mpmath.exp(-2 * mpmath.pi))
    assert d.rad < mpmath.mpf("1e-30")
    assert tp_det(get_entry("one_sided_exp"), xs=[0, 1], ys=[0, 1], prec=prec).contains(1)


def test_det_of_sorted_grid_ignores_construction_order(prec):
    g = get_entry("logistic")
    rng = random.Random("tp:perm")
    for _ in range(20):
        xs = sorted(Fraction(rng.randint(-512, 512), 128) for _ in range(4))
        ys = sorted(Fraction(rng.randint(-512, 512), 128) for _ in range(4))
        if len(set(xs)) < 4 or len(set(ys)) < 4:
            continue
        sx, sy = xs[:], ys[:]
        rng.shuffle(sx)
        rng.shuffle(sy)
        assert tp_det(g, Grid(tuple(sorted(sx)), tuple(sorted(sy))), prec) == tp_det(g, Grid(tuple(xs), tuple(ys)), prec)


def test_one_sided_zero_row(prec):
    e = get_entry("one_sided_exp")
    d = tp_det(e, xs=[-3, -2, -1], ys=[0, 1, 2], prec=prec)
    assert d == 0


@pytest.mark.parametrize("xs,ys", [([1, 0], [0, 1]), ([0, 1], [0]), ([], []), (list(range(7)), list(range(7)))])
def test_grid_validation(xs, ys):
    with pytest.raises(DomainError):
        Grid(tuple(xs), tuple(ys))


def test_grid_json_is_exact():
    g = Grid((Fraction(-1, 1024), Fraction(3)), (0, Fraction(5, 2)))
    assert g.to_json() == {"xs": ["-1/1024", "3"], "ys": ["0", "5/2"]}


@pytest.mark.parametrize("strategy", STRATEGIES)
def test_grids_live_on_the_lattice(strategy):
    e = get_entry("indicator")
    rng = random.Random(f"tp:{strategy}")
    for n in range(1, 7):
        g = make_grid(e, n, strategy, rng, CATALOG_LATTICE)
        assert g.order == n
        assert all((x / CATALOG_LATTICE).denominator == 1 for x in g.xs + g.ys)


def test_battery_is_deterministic(prec):
    a = tp_battery("gumbel", 3, 15, seed=11, prec=prec)
    b = tp_battery("gumbel", 3, 15, seed=11, prec=prec)
    assert a.to_json() == b.to_json()
    assert a.verdict == "no-certified-violation"
    c = tp_battery("gumbel", 3, 15, seed=12, prec=prec)
    assert c.to_json() != a.to_json()


def test_battery_finds_the_indicator_violation(prec):
    r = tp_battery("indicator", 3, 100, seed=7, strategy="adversarial-support-edges", prec=prec)
    assert r.verdict == "certified-violation"
    worst = min(r.orders, key=lambda o: o.min_det.upper)
    assert worst.min_det.upper < 0
    # the recorded grid reproduces the violation
    assert tp_det(get_entry("indicator"), worst.worst_grid, prec).upper < 0


def test_battery_rejects_bad_arguments(prec):
    with pytest.raises(DomainError):
        tp_battery("gaussian", 7, 5, seed=0, prec=prec)
    with pytest.raises(DomainError):
        tp_battery("gaussian", 2, 5, seed=0, strategy="grid-search", prec=prec)


def test_bochner_single_point(prec):
    v = bochner_gram([0], prec)
    assert v.status == "certified-positive-definite"
    assert v.min_eigenvalue.is_positive()


def test_bochner_evenness(prec):
    t = Fraction(13, 8)
    a, b = bochner_gram([0, t], prec), bochner_gram([-t, 0], prec)
    assert a.status == b.status
    assert abs(a.min_eigenvalue.mid - b.min_eigenvalue.mid) <= a.min_eigenvalue.rad + b.min_eigenvalue.rad


def test_bochner_rejects_repeated_taus(prec):
    with pytest.raises(DomainError):
        bochner_gram([1, 1], prec)


def test_bochner_battery_small(prec):
    r = bochner_battery(n_max=4, trials=10, seed=3, prec=prec)
    assert len(r.items) == 10
    assert r.verdict == "no-certified-violation"
    assert r.to_json() == bochner_battery(n_max=4, trials=10, seed=3, prec=prec).to_json()
