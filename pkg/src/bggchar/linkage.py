"""Affine reflections and the strong linkage relation.

``mu`` is strongly linked to ``lam`` at modulus ``k`` when there is a chain
``mu = mu_1 <= mu_2 <= ... <= mu_r = lam`` in which each weight is the image
of the next under a dot-acting affine reflection ``s_{beta,m}``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

from .charring import TruncationWindow
from .rootsys import (
    RootCoords,
    RootDatum,
    Weight,
    add,
    affine_dot_reflection,
    dot_action,
    scale,
    sub,
)


@dataclass(frozen=True)
class AffineReflection:
    beta: RootCoords
    m: int
    modulus: int

    def to_json(self) -> dict:
        return {"beta": list(self.beta), "m": self.m, "modulus": self.modulus}


def apply_reflection(r: AffineReflection, lam: Sequence[int], rd: RootDatum) -> Weight:
    return affine_dot_reflection(tuple(r.beta), r.m, r.modulus, lam, rd)


@dataclass(frozen=True)
class LinkageResult:
    """Verdict plus a witness chain.

    ``chain`` lists ``(weight, reflection)`` steps starting at ``lam``: each
    reflection sends its weight to the next one, and the last one lands on
    ``mu``.  It is empty when ``mu == lam`` or when not linked.
    """

    linked: bool
    mu: Weight
    lam: Weight
    chain: tuple[tuple[Weight, AffineReflection], ...] = field(default=())

    def __bool__(self) -> bool:
        return self.linked

    def weights(self) -> list[Weight]:
        """The chain as an ascending sequence ``mu, ..., lam``."""
        if not self.linked:
            return []
        return [self.mu] + [w for w, _ in reversed(self.chain)]

    def to_json(self) -> dict:
        return {
            "linked": self.linked,
            "mu": list(self.mu),
            "lambda": list(self.lam),
            "chain": [{"weight": list(w), "reflection": r.to_json()} for w, r in self.chain],
        }


def _down_steps(nu: Weight, k: int, rd: RootDatum, room: Sequence[int]):
    """Reflections sending ``nu`` strictly down by at most ``room`` (simple-root coordinates).

    Yields ``(image, reflection, root coordinates of nu - image)``.
    """
    shifted = add(nu, rd.rho)
    for beta in rd.positive_roots:
        a = rd.coroot_pairing(shifted, beta)
        # image = nu - c*beta with c = a - m*k > 0
        cmax = min(room[i] // b for i, b in enumerate(beta) if b > 0)
        c = a % k or k
        while c <= cmax:
            m = (a - c) // k
            yield sub(nu, scale(c, rd.root_to_weight(beta))), AffineReflection(beta, m, k), scale(c, beta)
            c += k


def strongly_linked(mu, lam, k: int, rd: RootDatum) -> LinkageResult:
    """Breadth-first search downward from ``lam``, never passing below ``mu``."""
    mu, lam = tuple(mu), tuple(lam)
    if k < 1:
        raise ValueError("modulus must be positive")
    if mu == lam:
        return LinkageResult(True, mu, lam)
    gap = rd.root_coords_int(sub(lam, mu))
    if gap is None or min(gap) < 0:
        return LinkageResult(False, mu, lam)
    parent: dict[Weight, tuple[Weight, AffineReflection] | None] = {lam: None}
    todo = deque([(lam, gap)])
    while todo:
        nu, room = todo.popleft()
        for img, refl, drop in _down_steps(nu, k, rd, room):
            if img in parent:
                continue
            parent[img] = (nu, refl)
            if img == mu:
                chain = []
                cur = mu
                while parent[cur] is not None:
                    prev, r = parent[cur]
                    chain.append((prev, r))
                    cur = prev
                return LinkageResult(True, mu, lam, tuple(reversed(chain)))
            todo.append((img, tuple(x - y for x, y in zip(room, drop))))
    return LinkageResult(False, mu, lam)


def linkage_downset(lam, k: int, rd: RootDatum, window: TruncationWindow | int) -> set[Weight]:
    """All weights of ``window`` strongly linked to ``lam``.

    An integer ``window`` is a depth below ``lam``.
    """
    lam = tuple(lam)
    if isinstance(window, int):
        window = TruncationWindow(lam, window)
    # search the box below lam that reaches the bottom of the window
    offset = rd.root_coords_int(sub(lam, window.top))
    if offset is None:
        return set()
    depth = max(o + window.depth for o in offset)
    if depth < 0:
        return set()
    start = (depth,) * rd.rank
    seen = {lam: start}
    todo = deque([lam])
    while todo:
        nu = todo.popleft()
        for img, _, drop in _down_steps(nu, k, rd, seen[nu]):
            if img not in seen:
                seen[img] = tuple(x - y for x, y in zip(seen[nu], drop))
                todo.append(img)
    return {w for w in seen if window.contains(w, rd)}


def in_dot_orbit(mu, lam, k: int, rd: RootDatum) -> bool:
    """Whether ``mu`` lies in the orbit of ``lam`` under the affine Weyl group at modulus ``k``."""
    mu = tuple(mu)
    for w in rd.weyl_group():
        coords = rd.root_coords_int(sub(dot_action(w, lam, rd), mu))
        if coords is not None and all(c % k == 0 for c in coords):
            return True
    return False
