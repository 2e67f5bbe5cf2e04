import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from bggchar.charring import (
    Character,
    TruncationWindow,
    baby_verma_character,
    char_add,
    char_mul,
    frobenius_stretch,
    monomial,
    q_minus,
    shift,
    steinberg_character,
    verma_character,
    verma_multiplicities,
    weyl_character,
    zero_character,
)
from bggchar.errors import CapExceededError, InsufficientDepthError, WindowMismatchError
from bggchar.rootsys import add, parse_type, scale, weyl_dimension

A1 = parse_type("A1")
A2 = parse_type("A2")


def ex(rd, terms):
    return Character.exact(rd, terms)


def det(m):
    if len(m) == 1:
        return m[0][0]
    return sum((-1) ** j * m[0][j] * det([row[:j] + row[j + 1:] for row in m[1:]]) for j in range(len(m)))


def alternant(mu, rd):
    out = {}
    for w in rd.weyl_group():
        img = tuple(sum(w[i][j] * mu[j] for j in range(rd.rank)) for i in range(rd.rank))
        out[img] = out.get(img, 0) + det([list(r) for r in w])
    return out


def dict_mul(f, g):
    out = {}
    for a, x in f.items():
        for b, y in g.items():
            k = add(a, b)
            out[k] = out.get(k, 0) + x * y
    return {k: v for k, v in out.items() if v}


# -- addition --------------------------------------------------------------------


def test_add_examples():
    f = ex(A1, {(0,): 1})
    assert char_add(f, zero_character(A1)) == f
    assert char_add(f, f).terms == {(0,): 2}
    s = char_add(weyl_character((1,), A1), weyl_character((0,), A1))
    assert s.terms == {(1,): 1, (0,): 1, (-1,): 1}
    assert s.exact_outside


def test_add_windows():
    v = verma_character((0,), A1, 5)
    w = verma_character((0,), A1, 3)
    assert char_add(v, w).window == w.window
    assert char_add(v, w)[(-4,)] == 2
    far = verma_character((-20,), A1, 3)
    with pytest.raises(WindowMismatchError):
        char_add(v, far)
    # an exact summand is cut to the truncated window
    mixed = char_add(v, weyl_character((8,), A1))
    assert mixed.window == v.window and mixed[(8,)] == 0 and mixed[(-2,)] == 2


# -- multiplication --------------------------------------------------------------


def test_mul_examples():
    f = verma_character((3,), A1, 4)
    assert char_mul(f, monomial(A1, (0,))) == f
    prod = char_mul(ex(A1, {(1,): 1, (-1,): 1}), ex(A1, {(3,): 1, (-3,): 1}))
    assert prod.terms == {(4,): 1, (2,): 1, (-2,): 1, (-4,): 1}


@pytest.mark.parametrize("lam", [(0,), (5,), (-7,)])
def test_q_minus_shift_is_verma(lam):
    for depth in (0, 3, 9):
        lhs = char_mul(q_minus(A1, depth), monomial(A1, add(lam, (1,))))
        assert lhs == verma_character(lam, A1, depth)


def test_mul_refuses_unsound_window():
    v = verma_character((0,), A1, 3)
    with pytest.raises(InsufficientDepthError):
        char_mul(v, monomial(A1, (0,)), TruncationWindow((0,), 4))
    # a window sitting lower needs deeper knowledge too
    with pytest.raises(InsufficientDepthError):
        char_mul(v, monomial(A1, (0,)), TruncationWindow((-4,), 2))
    ok = char_mul(v, monomial(A1, (0,)), TruncationWindow((-2,), 2))
    assert ok.terms == {(-2,): 1, (-4,): 1, (-6,): 1}


def test_mul_of_two_truncated():
    a = verma_character((0,), A1, 6)
    b = verma_character((2,), A1, 4)
    prod = char_mul(a, b)
    assert prod.window == TruncationWindow((2,), 4)
    # Delta(0) Delta(2) has coefficient k+1 at 2 - 2k
    assert [prod[(2 - 2 * k,)] for k in range(5)] == [1, 2, 3, 4, 5]


@settings(max_examples=60, deadline=None)
@given(st.tuples(st.integers(-6, 6), st.integers(-6, 6)), st.tuples(st.integers(-6, 6), st.integers(-6, 6)),
       st.integers(0, 4), st.sampled_from(["A2", "B2", "G2"]))
def test_truncation_soundness(lam, mu, d, label):
    rd = parse_type(label)
    shallow = char_mul(verma_character(lam, rd, d), verma_character(mu, rd, d))
    deep = char_mul(verma_character(lam, rd, d + 4), verma_character(mu, rd, d + 4))
    assert deep.restrict(shallow.window) == shallow


# -- stretch -----------------------------------------------------------------------


def test_stretch_examples():
    f = ex(A1, {(-1,): 1, (-3,): 1})
    assert frobenius_stretch(f, 1) == f
    assert frobenius_stretch(f, 3).terms == {(-3,): 1, (-9,): 1}
    v = frobenius_stretch(verma_character((-1,), A1, 2), 3)
    assert v.window == TruncationWindow((-3,), 8)
    assert v.terms == {(-3,): 1, (-9,): 1, (-15,): 1}


small_chars = st.dictionaries(st.tuples(st.integers(-4, 4), st.integers(-4, 4)), st.integers(1, 3), max_size=5)


@given(small_chars, small_chars, st.integers(1, 4))
def test_stretch_is_ring_map(f, g, m):
    f, g = ex(A2, f), ex(A2, g)
    assert frobenius_stretch(char_mul(f, g), m) == char_mul(frobenius_stretch(f, m), frobenius_stretch(g, m))
    assert frobenius_stretch(char_add(f, g), m) == char_add(frobenius_stretch(f, m), frobenius_stretch(g, m))


@settings(deadline=None)
@given(st.integers(-5, 5), st.integers(-5, 5), st.integers(0, 5), st.integers(2, 4))
def test_stretch_of_truncated_product(a, b, d, m):
    f = verma_character((a,), A1, d)
    g = verma_character((b,), A1, d)
    lhs = frobenius_stretch(char_mul(f, g), m)
    rhs = char_mul(frobenius_stretch(f, m), frobenius_stretch(g, m))
    assert lhs == rhs


# -- Verma and q^- -------------------------------------------------------------------


def test_verma_examples():
    assert verma_character((0,), A1, 3).terms == {(0,): 1, (-2,): 1, (-4,): 1, (-6,): 1}
    v = verma_character((0, 0), A2, 3)
    assert v[(-1, -1)] == 2  # lambda - (alpha1 + alpha2)
    for label in ("A1", "A2", "B2", "G2", "B3"):
        rd = parse_type(label)
        lam = tuple(range(rd.rank))
        assert verma_character(lam, rd, 2)[lam] == 1
    with pytest.raises(ValueError):
        verma_character((0,), A1, TruncationWindow((2,), 3))


def test_q_minus_examples():
    assert q_minus(A1, 3).terms == {(-1,): 1, (-3,): 1, (-5,): 1, (-7,): 1}
    qa = q_minus(A2, 2)
    assert qa[(-1, -1)] == 1
    assert qa[(-2, -2)] == 2


@pytest.mark.parametrize("label", ["A1", "A2", "B2", "G2"])
def test_verma_identity_random(label):
    rd = parse_type(label)
    rng = random.Random(label)
    for _ in range(10):
        lam = tuple(rng.randint(-9, 9) for _ in range(rd.rank))
        for depth in (0, 4, 8):
            rhs = char_mul(q_minus(rd, depth), monomial(rd, add(lam, rd.rho)))
            assert verma_character(lam, rd, depth) == rhs


# -- Weyl characters -----------------------------------------------------------------


def test_weyl_examples():
    for n in range(6):
        assert weyl_character((n,), A1).terms == {(n - 2 * k,): 1 for k in range(n + 1)}
    assert weyl_character((0, 0), A2).terms == {(0, 0): 1}
    w = weyl_character((1, 1), A2)
    assert w.dimension() == 8 and w[(0, 0)] == 2
    with pytest.raises(ValueError):
        weyl_character((-1, 0), A2)


def test_weyl_from_tensor_product():
    # V(omega1) (x) V(omega2) = V(omega1 + omega2) + trivial in type A2
    prod = char_mul(weyl_character((1, 0), A2), weyl_character((0, 1), A2))
    assert prod == char_add(weyl_character((1, 1), A2), weyl_character((0, 0), A2))


@pytest.mark.parametrize("label", ["A1", "A2", "B2", "G2"])
def test_weyl_matches_alternating_formula(label):
    rd = parse_type(label)
    a_rho = alternant(rd.rho, rd)
    for lam in [(a,) * rd.rank for a in range(3)] + [tuple(range(rd.rank, 0, -1))]:
        chi = weyl_character(lam, rd)
        assert dict_mul(dict(chi.terms), a_rho) == alternant(add(lam, rd.rho), rd)


@pytest.mark.parametrize("label", ["A2", "B2", "G2", "A3", "C3", "D4"])
def test_weyl_invariance_and_shape(label):
    rd = parse_type(label)
    lam = tuple(1 + (i % 2) for i in range(rd.rank))
    chi = weyl_character(lam, rd)
    assert chi.dimension() == weyl_dimension(lam, rd)
    assert chi[lam] == 1
    for w in rd.weyl_group():
        for mu, m in chi.terms.items():
            img = tuple(sum(w[i][j] * mu[j] for j in range(rd.rank)) for i in range(rd.rank))
            assert chi[img] == m
    coords = [rd.root_coords_int(tuple(a - b for a, b in zip(lam, mu))) for mu in chi.terms]
    assert all(c is not None and min(c) >= 0 for c in coords)


# -- baby Verma and Steinberg ----------------------------------------------------------


def test_baby_verma_examples():
    assert baby_verma_character((0,), 5, A1).terms == {(-2 * k,): 1 for k in range(5)}
    assert baby_verma_character((0, 0), 5, A2).dimension() == 125
    assert baby_verma_character((0, 0), 3, A2)[(-1, -1)] == 2
    assert baby_verma_character((0, 0), 3, parse_type("B2")).dimension() == 81


@given(st.tuples(st.integers(-9, 9), st.integers(-9, 9)), st.tuples(st.integers(-3, 3), st.integers(-3, 3)),
       st.sampled_from([2, 3, 5]))
def test_baby_verma_periodicity(lam, mu, ell):
    moved = add(lam, scale(ell, mu))
    assert baby_verma_character(moved, ell, A2) == shift(baby_verma_character(lam, ell, A2), scale(ell, mu))


def test_steinberg_examples():
    st3 = steinberg_character(3, A1)
    assert st3.terms == {(2,): 1, (0,): 1, (-2,): 1}
    assert steinberg_character(5, A2).dimension() == 125
    assert steinberg_character(2, A1).terms == {(1,): 1, (-1,): 1}
    assert steinberg_character(3, parse_type("G2")).dimension() == 3**6


# -- windows, JSON, peeling ------------------------------------------------------------------


def test_window_validation():
    with pytest.raises(ValueError):
        Character.truncated(A1, {(2,): 1}, TruncationWindow((0,), 3))
    with pytest.raises(ValueError):
        Character.exact(A1, {(0,): -1})
    with pytest.raises(CapExceededError):
        verma_character((0, 0, 0, 0), parse_type("A4"), 40)


def test_exact_window_spans_cosets():
    s = ex(A1, {(1,): 1, (0,): 1})
    assert s.window.depth >= 1
    assert s.covers((-50,))


def test_json_roundtrip_and_order():
    for ch in (verma_character((1, -2), A2, 3), weyl_character((2, 1), A2), q_minus(parse_type("G2"), 2)):
        data = ch.to_json()
        assert [t[0] for t in data["terms"]] == sorted(t[0] for t in data["terms"])
        assert Character.from_json(json.loads(json.dumps(data))) == ch
        assert json.dumps(ch.to_json()) == json.dumps(data)


def test_verma_multiplicities():
    win = TruncationWindow((0,), 6)
    v = verma_character((0,), A1, win)
    assert verma_multiplicities(char_add(v, v)) == {(0,): 2}
    lower = verma_character((-2,), A1, 5).restrict(win)
    assert verma_multiplicities(char_add(v, lower)) == {(0,): 1, (-2,): 1}
    prod = char_mul(weyl_character((1, 0), A2), verma_character((0, 1), A2, 4))
    mult = verma_multiplicities(prod)
    # tensoring a Verma module with V(omega1) gives the three shifts by its weights
    assert mult == {(1, 1): 1, (-1, 2): 1, (0, 0): 1}
