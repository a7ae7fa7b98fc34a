import itertools
import time

import pytest

from motivic_nearby.errors import GuardExceeded
from motivic_nearby.jets import jet_count, multi_jet_count
from motivic_nearby.poly import parse_polynomial

X = ["x"]
XY = ["x", "y"]


def test_coordinate_on_line():
    total, by_ac = jet_count(parse_polynomial("x", X), 2, 3)
    assert total == 2 and by_ac == {1: 1, 2: 1}


def test_node():
    assert jet_count(parse_polynomial("x*y", XY), 2, 3)[0] == 108


@pytest.mark.parametrize("q", [2, 3, 5, 7])
@pytest.mark.parametrize("n", [0, 1, 2, 3, 4])
def test_coordinate_closed_form(n, q):
    assert jet_count(parse_polynomial("x", X), n, q)[0] == q - 1


def test_multi_jets():
    x, y = parse_polynomial("x", XY), parse_polynomial("y", XY)
    assert multi_jet_count([x, y], (1, 1), 3) == 36
    assert multi_jet_count([x, y], (1, 2), 3) == 108
    with pytest.raises(ValueError):
        multi_jet_count([x, y], (0, 1), 3)


def test_guard():
    with pytest.raises(GuardExceeded):
        jet_count(parse_polynomial("x*y", XY), 20, 5)


def test_laurent_rejected():
    with pytest.raises(ValueError):
        jet_count(parse_polynomial("x^-1", X), 1, 3)


@pytest.mark.parametrize("text,n,q", [("x^2 + y^3", 2, 3), ("x*y + y^2", 1, 5), ("2*x^2 - y", 2, 3)])
def test_against_naive_enumeration(text, n, q):
    g = parse_polynomial(text, XY)
    terms = g.reduce_mod(q)
    total, hist = 0, {}
    for cs in itertools.product(range(q), repeat=2 * (n + 1)):
        arc = [cs[: n + 1], cs[n + 1:]]
        series = [0] * (n + 1)
        for e, c in terms.items():
            mono = [1] + [0] * n
            for var, k in enumerate(e):
                for _ in range(k):
                    mono = [sum(mono[i] * arc[var][m - i] for i in range(m + 1)) % q for m in range(n + 1)]
            series = [(s + c * t) % q for s, t in zip(series, mono)]
        if all(v == 0 for v in series[:n]) and series[n]:
            total += 1
            hist[series[n]] = hist.get(series[n], 0) + 1
    assert jet_count(g, n, q) == (total, hist)


def test_speed_of_cusp_at_order_three():
    start = time.perf_counter()
    jet_count(parse_polynomial("x^2 + y^3", XY), 3, 5)
    assert time.perf_counter() - start < 2.0
