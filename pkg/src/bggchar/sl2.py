"""Explicit computations for sl2.

Weights are plain integers here.  A layer of a Verma filtration is a
:class:`FiltrationQuotient` ``(c, b, t)`` standing for ``L(c) (x) Delta(b)^(t)``:
the simple module ``L(c)`` with ``c`` restricted at modulus ``t`` tensored with
a Verma module stretched by ``t``.  Its highest weight is ``c + t*b``.

One filtration step at modulus ``m`` on ``Delta(n)``, ``n = n0 + m*n1``:

* ``n0 = m - 1``: a single layer ``(m-1, n1)``;
* otherwise two layers, bottom ``(m - n0 - 2, n1 - 1)`` and top ``(n0, n1)``.

Applying a step to the Verma part of ``(c, b, t)`` gives layers
``(c + t*c', b', t*m)``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .charring import (
    Character,
    TruncationWindow,
    char_add,
    char_mul,
    frobenius_stretch,
    q_minus,
    verma_character,
    verma_multiplicities,
    weyl_character,
)
from .errors import ConfigurationError
from .rootsys import parse_type

A1 = parse_type("A1")


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, int(n**0.5) + 1))


@dataclass(frozen=True)
class Sl2Regime:
    """``kind`` is ``"modular"`` (uses ``p``) or ``"quantum"`` (uses ``ell`` then ``p``)."""

    kind: str
    p: int
    ell: int | None = None

    def __post_init__(self):
        if not _is_prime(self.p):
            raise ConfigurationError(f"p={self.p} is not prime")
        if self.kind == "quantum":
            if self.ell is None or self.ell <= 1 or self.ell % 2 == 0:
                raise ConfigurationError("ell must be odd and greater than 1")
        elif self.kind != "modular":
            raise ConfigurationError(f"unknown regime {self.kind!r}")

    @classmethod
    def modular(cls, p: int) -> "Sl2Regime":
        return cls("modular", p)

    @classmethod
    def quantum(cls, ell: int, p: int) -> "Sl2Regime":
        return cls("quantum", p, ell)

    @property
    def first_modulus(self) -> int:
        return self.p if self.kind == "modular" else self.ell

    def to_json(self) -> dict:
        return {"kind": self.kind, "p": self.p, "ell": self.ell}


def _window(top: int, window) -> TruncationWindow:
    if isinstance(window, int):
        return TruncationWindow((top,), window)
    return window


def _digits_char(n: int, m: int) -> Character:
    """``prod chi(n_i)^(m^i)`` over the base-m digits of ``n >= 0``."""
    ch = weyl_character((n % m,), A1)
    stretch = m
    n //= m
    while n:
        ch = char_mul(ch, frobenius_stretch(weyl_character((n % m,), A1), stretch))
        n //= m
        stretch *= m
    return ch


def _modular_simple(n: int, p: int, window: TruncationWindow) -> Character:
    if n >= 0:
        return _digits_char(n, p)
    if n == -1:
        top = TruncationWindow((-1,), _span(-1, window))
        return q_minus(A1, top) if top == window else q_minus(A1, top).restrict(window)
    # n <= -2: L(n) = L(p^r + n) * L(-1)^(p^r) with p^r + n in [0, p^r)
    big = p
    while big < -n:
        big *= p
    top = TruncationWindow((n,), _span(n, window))
    tail = frobenius_stretch(q_minus(A1, top.depth // big), big)
    out = char_mul(_digits_char(big + n, p), tail, top)
    return out if top == window else out.restrict(window)


def _span(n: int, window: TruncationWindow) -> int:
    """Depth below ``n`` that reaches the bottom of ``window``."""
    gap = n - window.top[0]
    if gap % 2:
        return 0
    return max(0, gap // 2 + window.depth)


def sl2_simple_char(n: int, regime: Sl2Regime, window=0) -> Character:
    """Simple character of highest weight ``n`` from the closed forms.

    Finite-dimensional simples (``n >= 0``) are returned exactly.  Otherwise
    the result is known on ``window`` (an integer means a depth below ``n``).
    """
    win = _window(n, window)
    if regime.kind == "modular":
        return _modular_simple(n, regime.p, win)
    ell = regime.ell
    n0, n1 = n % ell, n // ell
    head = weyl_character((n0,), A1)
    if n1 == 0:
        return head
    if n >= 0:
        return char_mul(head, frobenius_stretch(_digits_char(n1, regime.p), ell))
    top = TruncationWindow((n,), _span(n, win))
    inner = _modular_simple(n1, regime.p, TruncationWindow((n1,), top.depth // ell))
    out = char_mul(head, frobenius_stretch(inner, ell), top)
    return out if top == win else out.restrict(win)


@dataclass(frozen=True)
class FiltrationQuotient:
    restricted_part: int
    verma_part: int
    twist: int

    @property
    def head(self) -> int:
        return self.restricted_part + self.twist * self.verma_part

    def character(self, regime: Sl2Regime, depth: int) -> Character:
        """``Char L(c) * (Char Delta(b))^(t)`` known to ``depth`` below the head."""
        c, b, t = self.restricted_part, self.verma_part, self.twist
        win = TruncationWindow((self.head,), depth)
        simple = sl2_simple_char(c, regime)
        return char_mul(simple, frobenius_stretch(verma_character((b,), A1, depth // t), t), win)

    def to_json(self) -> dict:
        return {"restricted_part": self.restricted_part, "verma_part": self.verma_part, "twist": self.twist}


def _step(n: int, m: int) -> list[tuple[int, int]]:
    n0, n1 = n % m, n // m
    if n0 == m - 1:
        return [(m - 1, n1)]
    return [(m - n0 - 2, n1 - 1), (n0, n1)]


def sl2_verma_filtration_step(n: int, regime: Sl2Regime) -> list[FiltrationQuotient]:
    """Layers of the first filtration of ``Delta(n)``, bottom layer first."""
    m = regime.first_modulus
    return [FiltrationQuotient(c, b, m) for c, b in _step(n, m)]


def _refine(q: FiltrationQuotient, p: int) -> list[FiltrationQuotient]:
    """Apply one modulus-p step to the Verma part of a layer."""
    c, t = q.restricted_part, q.twist
    return [FiltrationQuotient(c + t * c2, b2, t * p) for c2, b2 in _step(q.verma_part, p)]


def _initial_layers(n: int, regime: Sl2Regime) -> list[FiltrationQuotient]:
    if regime.kind == "modular":
        return [FiltrationQuotient(0, n, 1)]
    return sl2_verma_filtration_step(n, regime)


@dataclass
class CompositionLedger:
    """Composition factors of a Verma module above ``cutoff``.

    ``remainder`` holds the layers left unexpanded.  Their characters cover
    everything the factors do not: the Verma character equals the factor
    characters plus, for each remainder layer, its character minus the simple
    character at its head when that head is already counted as a factor.
    """

    n: int
    regime: Sl2Regime
    cutoff: int
    factors: Counter = field(default_factory=Counter)
    remainder: list[FiltrationQuotient] = field(default_factory=list)

    def factor_weights(self) -> set[int]:
        return set(self.factors)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "regime": self.regime.to_json(),
            "cutoff": self.cutoff,
            "factors": [[w, m] for w, m in sorted(self.factors.items(), reverse=True)],
            "remainder": [q.to_json() for q in self.remainder],
        }


def sl2_composition_factors(n: int, regime: Sl2Regime, cutoff: int) -> CompositionLedger:
    if cutoff >= n:
        raise ValueError("cutoff must lie below the highest weight")
    ledger = CompositionLedger(n, regime, cutoff)
    todo = _initial_layers(n, regime)
    while todo:
        q = todo.pop()
        if q.head <= cutoff:
            ledger.remainder.append(q)
        elif q.verma_part == -1:
            # Delta(-1) is simple, so the layer is the simple module at its head
            ledger.factors[q.head] += 1
        elif q.head - 2 * q.twist <= cutoff:
            # everything under the top factor lies at or below the cutoff
            ledger.factors[q.head] += 1
            ledger.remainder.append(q)
        else:
            todo.extend(_refine(q, regime.p))
    ledger.remainder.sort(key=lambda q: (-q.head, q.twist, q.restricted_part))
    return ledger


def ledger_character(ledger: CompositionLedger, depth: int) -> Character:
    """Factor characters plus remainder corrections, known to ``depth`` below ``n``.

    By construction this equals the Verma character on the whole window.
    """
    win = TruncationWindow((ledger.n,), depth)
    bottom = ledger.n - 2 * depth
    total = Character.truncated(A1, {}, win)
    for w, mult in ledger.factors.items():
        if w < bottom:
            continue
        ch = sl2_simple_char(w, ledger.regime, win)
        if ch.exact_outside:
            ch = ch.restrict(win)
        for _ in range(mult):
            total = char_add(total, ch)
    for q in ledger.remainder:
        if q.head < bottom:
            continue
        qc = q.character(ledger.regime, (q.head - bottom) // 2)
        terms = dict(qc.terms)
        if q.head > ledger.cutoff:
            top = sl2_simple_char(q.head, ledger.regime, qc.window)
            for w, v in top.terms.items():
                if qc.covers(w):
                    terms[w] -= v
        total = char_add(total, Character.truncated(A1, terms, win))
    return total


def sl2_socle(n: int, regime: Sl2Regime) -> int | None:
    """Highest weight of the socle of ``Delta(n)``, or None if the socle is zero."""
    if n >= 0:
        return -n - 2
    if n == -1:
        return -1
    return None


def _comp_labels(layers: list[FiltrationQuotient]) -> Counter:
    return Counter(q.head for q in layers)


def sl2_baby_verma_comp(n: int, r: int, p: int) -> Counter:
    """Composition multiset of the baby Verma module at level ``r``.

    Labels are highest weights ``c + p**r * b`` of the layers after ``r``
    filtration steps; the layer ``(c, b, p**r)`` has dimension ``dim L(c)``.
    """
    if r < 1:
        raise ValueError("r must be positive")
    layers = [FiltrationQuotient(0, n, 1)]
    for _ in range(r):
        layers = [x for q in layers for x in _refine(q, p)]
    return _comp_labels(layers)


def sl2_quantum_filtration_comp(n: int, r: int, ell: int, p: int) -> Counter:
    """Labels of the layers after one ``ell`` step and ``r`` further ``p`` steps."""
    if r < 0:
        raise ValueError("r must be nonnegative")
    layers = [FiltrationQuotient(c, b, ell) for c, b in _step(n, ell)]
    for _ in range(r):
        layers = [x for q in layers for x in _refine(q, p)]
    return _comp_labels(layers)


def restricted_label_dimension(label: int, modulus: int, p: int, ell: int | None = None) -> int:
    """Dimension of the baby simple module with the given label at ``modulus``."""
    c = label % modulus
    ch = sl2_simple_char(c, Sl2Regime.quantum(ell, p) if ell else Sl2Regime.modular(p))
    return ch.dimension()


# -- tilting characters ------------------------------------------------------------


def _two_alcove(m: int, modulus: int) -> Character:
    """``T(modulus - 1 + a)`` for ``0 <= a <= modulus - 1``."""
    a = m - (modulus - 1)
    ch = weyl_character((m,), A1)
    if a > 0:
        ch = char_add(ch, weyl_character((modulus - 1 - a,), A1))
    return ch


def tilting_character_modular(m: int, p: int) -> Character:
    """Character of the indecomposable tilting module of highest weight ``m >= 0``."""
    if m < 0:
        raise ValueError("tilting highest weights are dominant")
    if m < p - 1:
        return weyl_character((m,), A1)
    rest = m - (p - 1)
    a, m1 = rest % p, rest // p
    base = _two_alcove(p - 1 + a, p)
    if m1 == 0:
        return base
    return char_mul(base, frobenius_stretch(tilting_character_modular(m1, p), p))


def tilting_character_quantum(m: int, ell: int, p: int) -> Character:
    if m < 0:
        raise ValueError("tilting highest weights are dominant")
    if m < ell - 1:
        return weyl_character((m,), A1)
    rest = m - (ell - 1)
    a, m1 = rest % ell, rest // ell
    base = _two_alcove(ell - 1 + a, ell)
    if m1 == 0:
        return base
    return char_mul(base, frobenius_stretch(tilting_character_modular(m1, p), ell))


def infinity_tilting_shift(lam: int, regime: Sl2Regime) -> int:
    """The stretch ``M`` used to build the infinite tilting module at ``lam``.

    Modular: ``p**r`` with ``r >= 1`` least such that ``lam + 1 < p**r``.
    Quantum: ``ell * p**r`` with ``r >= 0`` least such that ``lam + 1 < ell * p**r``.
    """
    big = regime.p if regime.kind == "modular" else regime.ell
    while lam + 1 >= big:
        big *= regime.p
    return big


def infinity_tilting_character(lam: int, regime: Sl2Regime, depth: int) -> Character:
    """``Char T(lam + M) * (q^-)^(M)`` known to ``depth`` below ``lam``."""
    if lam < -1:
        raise ValueError("highest weight must be at least -1")
    big = infinity_tilting_shift(lam, regime)
    if regime.kind == "modular":
        fin = tilting_character_modular(lam + big, regime.p)
    else:
        fin = tilting_character_quantum(lam + big, regime.ell, regime.p)
    tail = frobenius_stretch(q_minus(A1, depth // big), big)
    return char_mul(fin, tail, TruncationWindow((lam,), depth))


def sl2_reciprocity_check(lam: int, mu: int, regime: Sl2Regime) -> tuple[int, int, bool]:
    """Verma multiplicity in the infinite tilting module against a baby Verma count.

    ``lhs`` is the multiplicity of ``Delta(mu)`` in a Verma flag of the
    infinite tilting module at ``lam``; ``rhs`` the multiplicity of the
    label ``-lam - 2`` in the matching filtration of ``Delta(mu)``.
    """
    if lam < -1:
        raise ValueError("reciprocity needs lam >= -1")
    if mu > lam or (lam - mu) % 2:
        lhs = 0
    else:
        depth = (lam - mu) // 2
        ch = infinity_tilting_character(lam, regime, depth)
        lhs = verma_multiplicities(ch).get((mu,), 0)
    big = infinity_tilting_shift(lam, regime)
    target = -lam - 2
    if regime.kind == "modular":
        r = 1
        while regime.p**r < big:
            r += 1
        rhs = sl2_baby_verma_comp(mu, r, regime.p)[target]
    else:
        r = 0
        while regime.ell * regime.p**r < big:
            r += 1
        rhs = sl2_quantum_filtration_comp(mu, r, regime.ell, regime.p)[target]
    return lhs, rhs, lhs == rhs
