import math
import threading

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rectwalk import quadrature
from rectwalk.errors import AccuracyError, DomainError, IntegrandError
from rectwalk.quadrature import integrate_adaptive, integrate_de

BETA_13_16 = 1.476278975234343235  # Gamma(13/16)^2 / Gamma(13/8), mpmath


def rel(a, b):
    return abs(a - b) / abs(b)


def test_inverse_sqrt_singularity():
    res = integrate_de(lambda t: t ** -0.5, 0.0, 1.0)
    assert rel(res.value, 2.0) < 1e-12
    assert res.err_estimate <= 1e-12 * abs(res.value)


def test_arctan():
    assert rel(integrate_de(lambda x: 1 / (1 + x * x), -1.0, 1.0).value, math.pi / 2) < 1e-14


def test_saw_numerator_kernel():
    res = integrate_de(lambda t, lo, hi: (lo * hi) ** (-3 / 16), 0.0, 1.0, offsets=True)
    assert rel(res.value, BETA_13_16) < 1e-12
    exact = math.gamma(13 / 16) ** 2 / math.gamma(13 / 8)
    assert rel(res.value, exact) < 1e-12


@pytest.mark.parametrize("s", [-0.4, -3 / 16, -0.1, 0.25])
def test_beta_exactness(s):
    got = integrate_de(lambda t, lo, hi: (lo * hi) ** s, 0.0, 1.0, 1e-13, offsets=True).value
    exact = math.gamma(s + 1) ** 2 / math.gamma(2 * s + 2)
    assert rel(got, exact) < 1e-11


def test_offsets_are_accurate_at_shifted_interval():
    # singularity at the upper end of [1, 1 + 1e-6]; plain x would lose the distance
    upper = 1.0 + 1e-6
    w = upper - 1.0  # exact width of the representable interval
    got = integrate_de(lambda x, lo, hi: hi ** -0.5, 1.0, upper, offsets=True).value
    assert rel(got, 2 * math.sqrt(w)) < 1e-12


def test_scalar_only_integrand():
    res = integrate_de(lambda x: math.exp(x), 0.0, 1.0)
    assert rel(res.value, math.e - 1) < 1e-13


def test_adaptive_examples():
    assert rel(integrate_adaptive(math.sin, 0.0, math.pi).value, 2.0) < 1e-13
    assert rel(integrate_adaptive(math.exp, 0.0, 1.0).value, math.e - 1) < 1e-13


@settings(max_examples=10, deadline=None)
@given(
    st.floats(0.1, 3.0), st.floats(-2.0, 2.0), st.floats(0.5, 4.0),
    st.floats(-1.0, 0.0), st.floats(0.5, 2.0),
)
def test_de_agrees_with_adaptive_on_smooth_integrands(a, b, c, lo, span):
    f = lambda x: a * np.exp(np.sin(c * x)) + b * np.cos(x) ** 2 + 1 / (1 + x * x)
    hi = lo + span
    de = integrate_de(f, lo, hi, 1e-13).value
    ad = integrate_adaptive(lambda x: float(f(x)), lo, hi, 1e-13).value
    assert rel(de, ad) < 1e-12


@settings(max_examples=15, deadline=None)
@given(
    st.lists(st.floats(-3, 3), min_size=4, max_size=4),
    st.lists(st.floats(-3, 3), min_size=4, max_size=4),
)
def test_linearity(p, q):
    f = np.polynomial.Polynomial(p)
    g = np.polynomial.Polynomial(q)
    both = integrate_de(lambda x: f(x) + g(x), 0.0, 1.0, 1e-13)
    sep = integrate_de(f, 0.0, 1.0, 1e-13).value + integrate_de(g, 0.0, 1.0, 1e-13).value
    exact = (f + g).integ()(1.0) - (f + g).integ()(0.0)
    scale = 1 + sum(abs(x) for x in p + q)
    assert abs(both.value - sep) < 1e-12 * scale
    assert abs(both.value - exact) < 1e-12 * scale


@settings(max_examples=15, deadline=None)
@given(st.floats(0.05, 0.95))
def test_interval_additivity(split):
    f = lambda x: np.exp(-x) * np.cos(3 * x)
    whole = integrate_de(f, 0.0, 1.0, 1e-13).value
    parts = integrate_de(f, 0.0, split, 1e-13).value + integrate_de(f, split, 1.0, 1e-13).value
    assert abs(whole - parts) < 1e-12


def test_nan_raises_integrand_error():
    with pytest.raises(IntegrandError):
        integrate_de(lambda x: np.where(x > 0.3, np.nan, 1.0), 0.0, 1.0)


def test_non_convergence_carries_estimate():
    # a jump inside the interval defeats the DE rule within two levels
    with pytest.raises(AccuracyError) as info:
        integrate_de(lambda x: np.where(x > 0.3, 1.0, 0.0), 0.0, 1.0, 1e-14, max_level=4)
    assert info.value.estimate == pytest.approx(0.7, abs=0.05)


@pytest.mark.parametrize(
    "lower, upper, tol", [(1.0, 0.0, 1e-10), (0.0, 0.0, 1e-10), (0.0, 1.0, 1e-16), (0.0, 1.0, 0.1)]
)
def test_request_validation(lower, upper, tol):
    with pytest.raises(DomainError):
        integrate_de(lambda x: x, lower, upper, tol)


def test_evaluation_count_is_modest():
    res = integrate_de(lambda t, lo, hi: (lo * hi) ** (-3 / 16), 0.0, 1.0, 1e-12, offsets=True)
    assert res.evaluations < 4000


def test_node_tables_shared_across_threads():
    quadrature._level_nodes.cache_clear()
    results = []

    def work():
        results.append(integrate_de(lambda t: t ** -0.5, 0.0, 1.0, 1e-13).value)

    threads = [threading.Thread(target=work) for _ in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert len(set(results)) == 1
