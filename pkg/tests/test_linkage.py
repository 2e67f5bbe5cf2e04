import random

import pytest
from hypothesis import given, settings, strategies as st

from bggchar.charring import TruncationWindow
from bggchar.linkage import (
    AffineReflection,
    apply_reflection,
    in_dot_orbit,
    linkage_downset,
    strongly_linked,
)
from bggchar.rootsys import dominance_leq, parse_type

A1 = parse_type("A1")


def test_reflection_examples():
    r = AffineReflection((1,), 0, 3)
    assert apply_reflection(r, (0,), A1) == (-2,)
    assert apply_reflection(r, apply_reflection(r, (7,), A1), A1) == (7,)
    # fixed point: <lam + rho, alpha^vee> = m * k
    assert apply_reflection(AffineReflection((1,), 1, 3), (2,), A1) == (2,)
    with pytest.raises(ValueError):
        apply_reflection(AffineReflection((2, 1), 0, 3), (0, 0), parse_type("A2"))


def test_linked_examples():
    res = strongly_linked((4,), (4,), 3, A1)
    assert res.linked and res.chain == ()
    res = strongly_linked((0,), (4,), 3, A1)
    assert res.linked and len(res.chain) == 1
    assert res.chain[0][1] == AffineReflection((1,), 1, 3)
    assert not strongly_linked((1,), (4,), 3, A1)
    assert not strongly_linked((6,), (4,), 3, A1)


def test_downset_examples():
    down = linkage_downset((0,), 3, A1, 9)
    assert {w for (w,) in down} == {0, -2, -6, -8, -12, -14, -18}
    assert (0,) in down
    a2 = parse_type("A2")
    down = linkage_downset((2, 1), 3, a2, 4)
    assert (2, 1) in down
    assert all(dominance_leq(mu, (2, 1), a2) for mu in down)


def check_chain(res, rd):
    ws = res.weights()
    assert ws[0] == res.mu and ws[-1] == res.lam
    for (w, refl), nxt in zip(res.chain, [w for w, _ in res.chain[1:]] + [res.mu]):
        assert apply_reflection(refl, w, rd) == nxt
        assert dominance_leq(nxt, w, rd)


@pytest.mark.parametrize("label,k", [("A1", 2), ("A1", 3), ("A2", 3), ("B2", 2), ("B2", 3), ("G2", 5)])
def test_linkage_against_orbits(label, k):
    rd = parse_type(label)
    rng = random.Random(label + str(k))
    for _ in range(4):
        lam = tuple(rng.randint(-4, 6) for _ in range(rd.rank))
        depth = 4
        down = linkage_downset(lam, k, rd, depth)
        for _, mu in TruncationWindow(lam, depth).points(rd):
            res = strongly_linked(mu, lam, k, rd)
            assert res.linked == (mu in down)
            if res.linked:
                check_chain(res, rd)
                assert dominance_leq(mu, lam, rd)
                assert in_dot_orbit(mu, lam, k, rd)


def test_orbit_is_necessary_not_sufficient():
    # 4 is in the orbit of 0 but lies above it
    assert in_dot_orbit((4,), (0,), 3, A1)
    assert not strongly_linked((4,), (0,), 3, A1)


@settings(max_examples=40, deadline=None)
@given(st.tuples(st.integers(-5, 5), st.integers(-5, 5)), st.sampled_from(["A2", "B2"]), st.sampled_from([2, 3]),
       st.data())
def test_transitivity(lam, label, k, data):
    rd = parse_type(label)
    down = sorted(linkage_downset(lam, k, rd, 5))
    nu = data.draw(st.sampled_from(down))
    lower = sorted(linkage_downset(nu, k, rd, 3))
    mu = data.draw(st.sampled_from(lower))
    res = strongly_linked(mu, lam, k, rd)
    assert res.linked
    check_chain(res, rd)


def test_window_not_at_top():
    win = TruncationWindow((-4,), 3)
    assert {w for (w,) in linkage_downset((0,), 3, A1, win)} == {-6, -8}
