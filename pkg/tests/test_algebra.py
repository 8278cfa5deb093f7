import random

import pytest
from hypothesis import given, strategies as st

from auditmpc.algebra import (Q, BilinearGroup, DensePolynomial, DomainError, EvaluationDomain,
                              batch_inverse, divide_by_linear, divide_by_vanishing, fft_evaluate,
                              fft_interpolate, fq_from_bytes, fq_to_bytes, g1_from_bytes, g1_gen,
                              g1_mul, g1_to_bytes, g2_gen, g2_mul, inv, lagrange_coeffs_at, msm,
                              pairing, poly_divmod, poly_eval, poly_mul_naive, root_of_unity)

fe = st.integers(min_value=0, max_value=Q - 1)


def naive_interp(xs, ys):
    # O(n^2) Lagrange, written out independently of the library helpers
    n = len(xs)
    out = [0] * n
    for i in range(n):
        num = [1]
        den = 1
        for j in range(n):
            if j != i:
                nxt = [0] * (len(num) + 1)
                for k, c in enumerate(num):
                    nxt[k] = (nxt[k] - xs[j] * c) % Q
                    nxt[k + 1] = (nxt[k + 1] + c) % Q
                num = nxt
                den = den * (xs[i] - xs[j]) % Q
        f = ys[i] * pow(den, Q - 2, Q) % Q
        for k, c in enumerate(num):
            out[k] = (out[k] + f * c) % Q
    return out


def test_root_of_unity_order():
    for n in (2, 8, 1 << 12):
        w = root_of_unity(n)
        assert pow(w, n, Q) == 1
        assert pow(w, n // 2, Q) != 1


def test_interpolate_constant_and_identity():
    d = EvaluationDomain(8)
    assert trimmed(fft_interpolate([7] * 8, d)) == [7]
    assert trimmed(fft_interpolate(d.elements, d)) == [0, 1]


def trimmed(c):
    c = list(c.coeffs if isinstance(c, DensePolynomial) else c)
    while c and c[-1] == 0:
        c.pop()
    return c


def test_interpolate_matches_naive_lagrange():
    rng = random.Random(3)
    d = EvaluationDomain(8)
    ev = [rng.randrange(Q) for _ in range(8)]
    assert trimmed(fft_interpolate(ev, d)) == trimmed(naive_interp(d.elements, ev))


def test_interpolate_size_mismatch():
    with pytest.raises(DomainError):
        fft_interpolate([1, 2, 3], EvaluationDomain(4))


@pytest.mark.parametrize("logn", range(0, 13))
def test_fft_roundtrip(logn):
    n = 1 << logn
    rng = random.Random(logn)
    c = [rng.randrange(Q) for _ in range(n)]
    d = EvaluationDomain(n)
    assert trimmed(fft_interpolate(fft_evaluate(c, d), d)) == trimmed(c)


@given(st.lists(fe, min_size=1, max_size=16), fe)
def test_fft_evaluate_matches_horner(c, x):
    d = EvaluationDomain(16)
    ev = fft_evaluate(c, d)
    for i in (0, 5, 15):
        assert ev[i] == poly_eval(c, d.element(i))


def test_coset_domain():
    d = EvaluationDomain(8, offset=7)
    c = list(range(1, 9))
    assert d.ifft(d.fft(c)) == c
    ev = d.fft(c)
    for i in range(8):
        assert ev[i] == poly_eval(c, d.elements[i])
    assert d.elements[0] == 7
    assert d.vanishing_eval(d.element(5)) == 0


def test_divmod_vanishing_root():
    d = EvaluationDomain(8)
    vh = DensePolynomial([Q - 1] + [0] * 7 + [1])
    q, r = poly_divmod(vh, DensePolynomial([-d.element(3), 1]))
    assert r.is_zero()


def test_divmod_self():
    a = DensePolynomial([3, 1, 4, 1, 5])
    q, r = poly_divmod(a, a)
    assert q == 1 and r.is_zero()


def test_divmod_zero_divisor():
    with pytest.raises(ZeroDivisionError):
        poly_divmod(DensePolynomial([1, 2]), DensePolynomial([]))


@given(st.lists(fe, min_size=1, max_size=65), st.lists(fe, min_size=1, max_size=65))
def test_divmod_identity(a, b):
    if not any(b):
        b = b + [1]
    q, r = poly_divmod(a, b)
    assert r.degree < DensePolynomial(b).degree or r.is_zero()
    back = DensePolynomial(poly_mul_naive(list(q.coeffs), list(b))) + r
    assert back == DensePolynomial(a)


def test_divmod_long_and_fft_paths_agree():
    from auditmpc.algebra import _fft_divmod, _long_divmod, trim
    rng = random.Random(5)
    for da, db in ((150, 70), (200, 3), (90, 89)):
        a = [rng.randrange(Q) for _ in range(da + 1)]
        b = [rng.randrange(Q) for _ in range(db + 1)]
        q1, r1 = _long_divmod(a, b)
        q2, r2 = _fft_divmod(a, b)
        assert trim(q1) == trim(q2) and trim(r1) == trim(r2)


def test_divide_by_vanishing_and_linear():
    rng = random.Random(9)
    a = [rng.randrange(Q) for _ in range(40)]
    quo, rem = divide_by_vanishing(a, 8)
    vh = [Q - 1] + [0] * 7 + [1]
    back = DensePolynomial(poly_mul_naive(quo, vh)) + DensePolynomial(rem)
    assert back == DensePolynomial(a)
    z = rng.randrange(Q)
    w = divide_by_linear(a, z)
    lhs = DensePolynomial(poly_mul_naive(w, [-z % Q, 1])) + poly_eval(a, z)
    assert lhs == DensePolynomial(a)


def test_vanishing_brute_force():
    rng = random.Random(2)
    for n in (1, 2, 4, 8, 16):
        d = EvaluationDomain(n)
        for _ in range(5):
            x = rng.randrange(Q)
            prod = 1
            for k in d.elements:
                prod = prod * (x - k) % Q
            assert d.vanishing_eval(x) == prod == (pow(x, n, Q) - 1) % Q


def test_lagrange_coeffs():
    assert lagrange_coeffs_at([0, 1], 5) == [Q - 4, 5]
    pts = [3, 9, 11, 20]
    assert lagrange_coeffs_at(pts, 11) == [0, 0, 1, 0]
    assert sum(lagrange_coeffs_at(pts, 12345)) % Q == 1
    with pytest.raises(DomainError):
        lagrange_coeffs_at([1, 1], 3)


@given(st.lists(fe, min_size=1, max_size=6), fe)
def test_lagrange_reproduces_polynomial(c, x):
    pts = list(range(1, len(c) + 1))
    lam = lagrange_coeffs_at(pts, x)
    assert sum(l * poly_eval(c, p) for l, p in zip(lam, pts)) % Q == poly_eval(c, x)


@given(st.lists(st.integers(min_value=1, max_value=Q - 1), min_size=1, max_size=20))
def test_batch_inverse(xs):
    assert batch_inverse(xs) == [inv(x) for x in xs]


def test_pairing_bilinear():
    rng = random.Random(11)
    g, h = g1_gen(), g2_gen()
    for _ in range(100):
        a, b = rng.randrange(1, Q), rng.randrange(1, Q)
        assert pairing(g1_mul(g, a), g2_mul(h, b)) == pairing(g1_mul(g, a * b % Q), h)


def test_bilinear_group_nondegenerate():
    G = BilinearGroup()
    assert G.pairing(G.g, G.h) != G.gt_one()
    assert G.order == Q


def test_msm_matches_naive():
    rng = random.Random(4)
    pts = [g1_mul(g1_gen(), rng.randrange(Q)) for _ in range(20)]
    sc = [rng.randrange(Q) for _ in range(20)]
    sc[3] = 0
    acc = g1_mul(pts[0], sc[0])
    for p, s in zip(pts[1:], sc[1:]):
        acc = acc + g1_mul(p, s)
    assert msm(pts, sc) == acc


@given(fe)
def test_serialization_roundtrip(x):
    assert fq_from_bytes(fq_to_bytes(x)) == x
    p = g1_mul(g1_gen(), x)
    assert g1_from_bytes(g1_to_bytes(p)) == p
    assert len(g1_to_bytes(p)) == 48


def test_golden_serialization():
    # fixed encodings: compressed generator and 2*G in G1, little-endian scalar
    assert g1_to_bytes(g1_gen()).hex().startswith("97f1d3a73197d794")
    assert fq_to_bytes(1) == b"\x01" + b"\x00" * 31
    with pytest.raises(ValueError):
        fq_from_bytes(Q.to_bytes(32, "little"))
