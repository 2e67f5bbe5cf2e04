"""Truncated formal characters.

A :class:`Character` is a finitely supported map from weights to positive
integers together with a :class:`TruncationWindow` saying where the map is
known to be correct.  Characters of finite-dimensional modules are flagged
``exact_outside`` and carry an envelope window computed from their support.

For a truncated character the window is the box of weights
``top - sum(n_i alpha_i)`` with integers ``0 <= n_i <= depth``.  For an exact
character the envelope uses rational ``n_i`` so that supports spread over
several cosets of the root lattice are still enclosed.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Mapping, Sequence

from .errors import CapExceededError, InsufficientDepthError, WindowMismatchError
from .rootsys import (
    RootDatum,
    Weight,
    add,
    dominance_leq,
    is_dominant,
    parse_type,
    scale,
    sub,
    weyl_dimension,
)

VOLUME_CAP = 10**6


@dataclass(frozen=True)
class TruncationWindow:
    top: Weight
    depth: int

    def __post_init__(self):
        object.__setattr__(self, "top", tuple(int(x) for x in self.top))
        if self.depth < 0:
            raise ValueError("window depth must be nonnegative")

    def volume(self, rank: int) -> int:
        return (self.depth + 1) ** rank

    def contains(self, mu: Sequence[int], rd: RootDatum) -> bool:
        coords = rd.root_coords_int(sub(self.top, mu))
        return coords is not None and all(0 <= c <= self.depth for c in coords)

    def points(self, rd: RootDatum) -> Iterator[tuple[tuple[int, ...], Weight]]:
        """Yield ``(n, top - n)`` for every box point, ordered by height of ``n``."""
        check_volume(self, rd)
        box = itertools.product(range(self.depth + 1), repeat=rd.rank)
        for n in sorted(box, key=lambda v: (sum(v), v)):
            yield n, sub(self.top, rd.root_to_weight(n))

    def inside(self, other: "TruncationWindow", rd: RootDatum) -> bool:
        """True when every point of this box is a point of ``other``."""
        coords = rd.root_coords_int(sub(other.top, self.top))
        return coords is not None and all(0 <= c and c + self.depth <= other.depth for c in coords)


def check_volume(window: TruncationWindow, rd: RootDatum) -> None:
    if window.volume(rd.rank) > VOLUME_CAP:
        raise CapExceededError(
            f"window of depth {window.depth} in rank {rd.rank} exceeds {VOLUME_CAP} lattice points"
        )


def _envelope(rd: RootDatum, weights) -> TruncationWindow:
    """Canonical window enclosing a finite set of weights (rational semantics)."""
    weights = list(weights)
    if not weights:
        return TruncationWindow(rd.zero, 0)
    tops = [w for w in weights if all(dominance_leq(v, w, rd) for v in weights)]
    if tops:
        top = tops[0]
    else:
        coords = [rd.weight_to_root(w) for w in weights]
        top = rd.root_to_weight([math.ceil(max(c[i] for c in coords)) for i in range(rd.rank)])
    depth = 0
    for w in weights:
        depth = max(depth, math.ceil(max(rd.weight_to_root(sub(top, w)))))
    return TruncationWindow(top, depth)


@dataclass(frozen=True)
class Character:
    rd: RootDatum
    terms: Mapping[Weight, int]
    window: TruncationWindow
    exact_outside: bool = False

    def __post_init__(self):
        clean = {tuple(k): int(v) for k, v in self.terms.items() if v != 0}
        for mu, v in clean.items():
            if v < 0:
                raise ValueError(f"negative multiplicity {v} at {mu}")
            if len(mu) != self.rd.rank:
                raise ValueError(f"weight {mu} has wrong length for {self.rd.label}")
        object.__setattr__(self, "terms", clean)
        if not self.exact_outside:
            for mu in clean:
                if not self.window.contains(mu, self.rd):
                    raise ValueError(f"weight {mu} lies outside the window {self.window}")

    # -- construction --------------------------------------------------------

    @classmethod
    def exact(cls, rd: RootDatum, terms: Mapping) -> "Character":
        terms = {tuple(k): v for k, v in terms.items() if v}
        return cls(rd, terms, _envelope(rd, terms), True)

    @classmethod
    def truncated(cls, rd: RootDatum, terms: Mapping, window: TruncationWindow) -> "Character":
        return cls(rd, dict(terms), window, False)

    # -- queries ---------------------------------------------------------------

    def __getitem__(self, mu) -> int:
        return self.terms.get(tuple(mu), 0)

    def covers(self, mu) -> bool:
        """Whether the coefficient at ``mu`` is known to be correct."""
        return self.exact_outside or self.window.contains(mu, self.rd)

    def dimension(self) -> int | None:
        return sum(self.terms.values()) if self.exact_outside else None

    def items(self):
        return sorted(self.terms.items())

    def __len__(self) -> int:
        return len(self.terms)

    def restrict(self, window: TruncationWindow) -> "Character":
        """The same character viewed on another window.

        Weights of ``window`` that are not below the top of a truncated
        character have coefficient zero, so the new window may reach above
        the old one; below the old top it must stay inside the old box.
        """
        if not self.exact_outside:
            delta = self.rd.root_coords_int(sub(self.window.top, window.top))
            if delta is not None and max(delta) + window.depth > self.window.depth:
                raise WindowMismatchError(f"{window} reaches below {self.window}")
        keep = {mu: v for mu, v in self.terms.items() if window.contains(mu, self.rd)}
        return Character(self.rd, keep, window, False)

    def to_json(self) -> dict:
        return {
            "type": self.rd.label,
            "top": list(self.window.top),
            "depth": self.window.depth,
            "exact_outside": self.exact_outside,
            "terms": [[list(mu), v] for mu, v in self.items()],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "Character":
        rd = parse_type(data["type"])
        terms = {tuple(mu): int(v) for mu, v in data["terms"]}
        if data.get("exact_outside"):
            return cls.exact(rd, terms)
        return cls.truncated(rd, terms, TruncationWindow(tuple(data["top"]), int(data["depth"])))


def monomial(rd: RootDatum, mu: Sequence[int], mult: int = 1) -> Character:
    return Character.exact(rd, {tuple(mu): mult})


def zero_character(rd: RootDatum) -> Character:
    return Character.exact(rd, {})


# -- ring operations ---------------------------------------------------------


def _same_datum(f: Character, g: Character) -> RootDatum:
    if f.rd != g.rd:
        raise ValueError(f"characters for {f.rd.label} and {g.rd.label} cannot be combined")
    return f.rd


def char_add(f: Character, g: Character) -> Character:
    """Pointwise sum.

    Truncated windows must be nested; the sum is only known on the smaller
    of the two, so that is the window of the result.
    """
    rd = _same_datum(f, g)
    total = dict(f.terms)
    for mu, v in g.terms.items():
        total[mu] = total.get(mu, 0) + v
    if f.exact_outside and g.exact_outside:
        return Character.exact(rd, total)
    if f.exact_outside or g.exact_outside:
        win = g.window if f.exact_outside else f.window
    elif f.window.inside(g.window, rd):
        win = f.window
    elif g.window.inside(f.window, rd):
        win = g.window
    else:
        raise WindowMismatchError(f"windows {f.window} and {g.window} are not nested")
    return Character(rd, {mu: v for mu, v in total.items() if win.contains(mu, rd)}, win)


def char_sum(chars: Sequence[Character], rd: RootDatum) -> Character:
    out = zero_character(rd)
    for c in chars:
        out = char_add(out, c)
    return out


def char_scale(f: Character, k: int) -> Character:
    if k < 0:
        raise ValueError("characters have nonnegative multiplicities")
    terms = {mu: k * v for mu, v in f.terms.items()}
    if f.exact_outside:
        return Character.exact(f.rd, terms)
    return Character(f.rd, terms, f.window)


def _sound_depth(f: Character, target_top: Weight, other_top: Weight) -> Fraction:
    """Largest result depth that a truncated factor ``f`` can support at ``target_top``."""
    delta = f.rd.weight_to_root(sub(target_top, add(f.window.top, other_top)))
    return min(f.window.depth + d for d in delta)


def char_mul(f: Character, g: Character, window: TruncationWindow | None = None) -> Character:
    """Product of characters, truncated to ``window``.

    With no window given: the product of two exact characters is exact, and
    otherwise the result sits at the sum of the tops with the smallest depth
    among the truncated factors.  A requested window that would need terms
    missing from a truncated factor raises :class:`InsufficientDepthError`.
    """
    rd = _same_datum(f, g)
    if window is None and f.exact_outside and g.exact_outside:
        out: dict[Weight, int] = {}
        for a, x in f.terms.items():
            for b, y in g.terms.items():
                w = add(a, b)
                out[w] = out.get(w, 0) + x * y
        return Character.exact(rd, out)
    if window is None:
        top = add(f.window.top, g.window.top)
        depth = min(c.window.depth for c in (f, g) if not c.exact_outside)
        window = TruncationWindow(top, depth)
    for a, b in ((f, g), (g, f)):
        if not a.exact_outside and window.depth > _sound_depth(a, window.top, b.window.top):
            raise InsufficientDepthError(
                f"factor known to depth {a.window.depth} at {list(a.window.top)} cannot "
                f"fill depth {window.depth} at {list(window.top)}"
            )
    check_volume(window, rd)
    top_coords = rd.weight_to_root(window.top)
    hi = [c - window.depth for c in top_coords]
    out = {}
    gterms = list(g.terms.items())
    gcoords = [rd.weight_to_root(b) for b, _ in gterms]
    for a, x in f.terms.items():
        ac = rd.weight_to_root(a)
        for (b, y), bc in zip(gterms, gcoords):
            # quick rejection before the exact lattice test
            if any(u + v > t or u + v < h for u, v, t, h in zip(ac, bc, top_coords, hi)):
                continue
            w = add(a, b)
            out[w] = out.get(w, 0) + x * y
    return Character(rd, {w: v for w, v in out.items() if window.contains(w, rd)}, window)


def shift(f: Character, mu: Sequence[int]) -> Character:
    """Multiply by ``e^mu``."""
    mu = tuple(mu)
    terms = {add(w, mu): v for w, v in f.terms.items()}
    if f.exact_outside:
        return Character.exact(f.rd, terms)
    return Character(f.rd, terms, TruncationWindow(add(f.window.top, mu), f.window.depth))


def frobenius_stretch(f: Character, m: int) -> Character:
    """Scale every exponent by ``m``.

    A truncated window ``(top, d)`` becomes ``(m*top, m*d + m - 1)``: the
    extra layers hold only weights that are not ``m``-multiples, whose
    coefficient is known to vanish.
    """
    if m < 1:
        raise ValueError("stretch factor must be positive")
    terms = {scale(m, w): v for w, v in f.terms.items()}
    if f.exact_outside:
        return Character.exact(f.rd, terms)
    win = TruncationWindow(scale(m, f.window.top), m * f.window.depth + m - 1)
    return Character(f.rd, terms, win)


# -- closed-form characters ----------------------------------------------------


def verma_character(lam: Sequence[int], rd: RootDatum, window: TruncationWindow | int) -> Character:
    """Kostant partition function expansion below ``lam``.

    ``window`` may be an integer depth, in which case the window top is ``lam``.
    """
    lam = tuple(lam)
    if isinstance(window, int):
        window = TruncationWindow(lam, window)
    if window.top != lam:
        raise ValueError("a Verma character window must have top equal to the highest weight")
    check_volume(window, rd)
    table = rd.partition_table((window.depth,) * rd.rank)
    terms = {sub(lam, rd.root_to_weight(n)): v for n, v in table.items() if v}
    return Character(rd, terms, window)


def q_minus(rd: RootDatum, window: TruncationWindow | int) -> Character:
    """Character of the Verma module with highest weight ``-rho``."""
    neg_rho = scale(-1, rd.rho)
    if isinstance(window, int):
        window = TruncationWindow(neg_rho, window)
    return verma_character(neg_rho, rd, window)


def dominant_weights_below(lam: Sequence[int], rd: RootDatum) -> list[Weight]:
    """Dominant weights ``mu <= lam`` sorted by increasing depth below ``lam``."""
    lam = tuple(lam)
    seen = {lam}
    todo = [lam]
    while todo:
        mu = todo.pop()
        for beta in rd.positive_roots:
            nu = sub(mu, rd.root_to_weight(beta))
            if is_dominant(nu) and nu not in seen:
                seen.add(nu)
                todo.append(nu)
    return sorted(seen, key=lambda mu: (sum(rd.weight_to_root(sub(lam, mu))), mu))


@lru_cache(maxsize=512)
def _dominant_multiplicities(label: str, lam: Weight) -> tuple[tuple[Weight, int], ...]:
    rd = parse_type(label)
    doms = dominant_weights_below(lam, rd)
    mult: dict[Weight, int] = {}
    lr = add(lam, rd.rho)
    norm_top = rd.inner(lr, lr)
    roots = [(beta, rd.root_to_weight(beta)) for beta in rd.positive_roots]
    for mu in doms:
        if mu == lam:
            mult[mu] = 1
            continue
        total = Fraction(0)
        for _, bw in roots:
            nu = add(mu, bw)
            while True:
                m = mult.get(rd.dominant_conjugate(nu), 0)
                if m == 0:
                    break
                total += m * rd.inner(nu, bw)
                nu = add(nu, bw)
        mr = add(mu, rd.rho)
        val = 2 * total / (norm_top - rd.inner(mr, mr))
        assert val.denominator == 1, "Freudenthal recursion produced a fraction"
        mult[mu] = int(val)
    return tuple((mu, m) for mu, m in mult.items() if m)


def weyl_character(lam: Sequence[int], rd: RootDatum) -> Character:
    """Character of the irreducible module of dominant highest weight ``lam`` in characteristic 0."""
    lam = tuple(lam)
    if not is_dominant(lam):
        raise ValueError(f"{list(lam)} is not dominant")
    terms: dict[Weight, int] = {}
    for mu, m in _dominant_multiplicities(rd.label, lam):
        for nu in rd.orbit(mu):
            terms[nu] = m
    ch = Character.exact(rd, terms)
    if ch.dimension() != weyl_dimension(lam, rd):
        raise ArithmeticError(f"Weyl character of {list(lam)} failed the dimension check")
    return ch


def baby_verma_character(lam: Sequence[int], bound: int, rd: RootDatum) -> Character:
    """Character of the baby Verma module: each root used fewer than ``bound`` times."""
    if bound < 1:
        raise ValueError("bound must be positive")
    lam = tuple(lam)
    span = [(bound - 1) * sum(beta[i] for beta in rd.positive_roots) for i in range(rd.rank)]
    if math.prod(s + 1 for s in span) > VOLUME_CAP:
        raise CapExceededError("baby Verma module too large for the safety cap")
    table = rd.partition_table(span, cap=bound)
    return Character.exact(rd, {sub(lam, rd.root_to_weight(n)): v for n, v in table.items() if v})


def steinberg_character(m: int, rd: RootDatum) -> Character:
    """Weyl character at ``(m-1) rho``; its dimension must be ``m**N``."""
    if m < 1:
        raise ValueError("modulus must be positive")
    ch = weyl_character(scale(m - 1, rd.rho), rd)
    if ch.dimension() != m**rd.num_positive_roots:
        raise ArithmeticError("Steinberg character has the wrong dimension")
    return ch


def verma_multiplicities(f: Character, window: TruncationWindow | None = None) -> dict[Weight, int]:
    """Coefficients ``c_mu`` with ``f = sum c_mu Char Delta(mu)`` on a window.

    Peels Verma characters off from the top of the window downwards.  Values
    may be negative if ``f`` is not Verma-filtered.
    """
    rd = f.rd
    if window is None:
        if f.exact_outside:
            raise ValueError("an explicit window is needed for an exact character")
        window = f.window
    elif not f.covers(window.top) or (not f.exact_outside and not window.inside(f.window, rd)):
        raise WindowMismatchError(f"{window} is not inside {f.window}")
    table = rd.partition_table((window.depth,) * rd.rank)
    found: dict[tuple[int, ...], int] = {}
    out: dict[Weight, int] = {}
    for n, mu in window.points(rd):
        val = f[mu]
        for a, c in found.items():
            diff = tuple(x - y for x, y in zip(n, a))
            if min(diff) >= 0:
                val -= c * table[diff]
        if val:
            found[n] = val
            out[mu] = val
    return out
