"""Simple characters assembled from restricted data by Steinberg tensor products.

Restricted simple characters are input: a :class:`RestrictedCharProvider`
supplies ``Char L(lam0)`` for ``lam0`` with every coordinate in ``[0, m)``.
Everything else follows from

    Char L(lam) = Char L(lam0) * (Char L(lam1))^(m),   lam = lam0 + m*lam1,

applied recursively, with the antidominant closed form
``Char L(lam) = Char L(M rho + lam) * (q^-)^(M)`` as the base case.
"""

from __future__ import annotations

import json
import math
import threading
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

from .charring import (
    Character,
    TruncationWindow,
    char_mul,
    frobenius_stretch,
    monomial,
    q_minus,
    steinberg_character,
    weyl_character,
)
from .errors import ConfigurationError, MissingRestrictedWeight
from .rootsys import (
    RootDatum,
    Weight,
    adic_decompose,
    dominance_leq,
    is_antidominant,
    is_dominant,
    is_restricted,
    parse_type,
    scale,
    sub,
)

WEYL_PROVENANCE = "weyl characters: valid for generic q / large p only"


class RestrictedCharProvider:
    """Read-only table of restricted simple characters at one modulus.

    Entries come from ``table`` or, lazily, from ``factory``.  Every entry is
    checked on arrival: it must be exact, have coefficient 1 at its key, and
    lie below the key; the entry at ``(m-1) rho`` must be the Steinberg
    character.
    """

    def __init__(
        self,
        rd: RootDatum,
        modulus: int,
        table: Mapping[Sequence[int], Character] | None = None,
        provenance: str = "",
        factory: Callable[[Weight], Character | None] | None = None,
    ):
        if modulus < 1:
            raise ValueError("modulus must be positive")
        self.rd = rd
        self.modulus = modulus
        self.provenance = provenance
        self._factory = factory
        self._table: dict[Weight, Character] = {}
        self._expanded: dict[Weight, Character] = {}  # dominant weights, by digits
        self._lock = threading.Lock()
        for lam, ch in (table or {}).items():
            lam = tuple(lam)
            self._check(lam, ch)
            self._table[lam] = ch

    def _check(self, lam: Weight, ch: Character) -> None:
        m = self.modulus
        if len(lam) != self.rd.rank or not is_restricted(lam, m):
            raise ValueError(f"{list(lam)} is not {m}-restricted")
        if ch.rd != self.rd or not ch.exact_outside:
            raise ValueError(f"entry at {list(lam)} must be an exact {self.rd.label} character")
        if ch[lam] != 1:
            raise ValueError(f"entry at {list(lam)} must have coefficient 1 at its highest weight")
        if not all(dominance_leq(mu, lam, self.rd) for mu in ch.terms):
            raise ValueError(f"entry at {list(lam)} has weights above its highest weight")
        if lam == scale(m - 1, self.rd.rho) and ch != steinberg_character(m, self.rd):
            raise ValueError("the entry at (m-1)rho must be the Steinberg character")

    def has(self, lam) -> bool:
        lam = tuple(lam)
        if lam in self._table:
            return True
        return self._factory is not None and is_restricted(lam, self.modulus)

    def __call__(self, lam) -> Character:
        lam = tuple(lam)
        hit = self._table.get(lam)
        if hit is not None:
            return hit
        if self._factory is None or not is_restricted(lam, self.modulus):
            raise MissingRestrictedWeight(lam, self.modulus)
        ch = self._factory(lam)
        if ch is None:
            raise MissingRestrictedWeight(lam, self.modulus)
        self._check(lam, ch)
        with self._lock:
            self._table.setdefault(lam, ch)
        return ch

    def known_weights(self) -> list[Weight]:
        return sorted(self._table)

    def to_json(self) -> dict:
        return {
            "modulus": self.modulus,
            "type": self.rd.label,
            "provenance": self.provenance,
            "table": {",".join(map(str, k)): v.to_json() for k, v in sorted(self._table.items())},
        }


class RecordingProvider(RestrictedCharProvider):
    """Wraps a provider and records every weight it cannot supply.

    Missing entries are replaced by the single highest-weight term so that a
    computation can run to the end and report all gaps at once.  Results
    computed through this wrapper are placeholders whenever ``missing`` is
    nonempty.
    """

    def __init__(self, inner: RestrictedCharProvider):
        super().__init__(inner.rd, inner.modulus, provenance=inner.provenance)
        self.inner = inner
        self.missing: set[Weight] = set()

    def has(self, lam) -> bool:
        return self.inner.has(lam)

    def __call__(self, lam) -> Character:
        try:
            return self.inner(lam)
        except MissingRestrictedWeight:
            self.missing.add(tuple(lam))
            return monomial(self.rd, lam)


def provider_from_json(data: Mapping) -> RestrictedCharProvider:
    rd = parse_type(data["type"])
    table = {}
    for key, ch in data["table"].items():
        lam = tuple(int(x) for x in key.split(","))
        table[lam] = Character.from_json(ch)
    return RestrictedCharProvider(rd, int(data["modulus"]), table, data.get("provenance", ""))


def load_provider(path) -> RestrictedCharProvider:
    with open(path) as fh:
        return provider_from_json(json.load(fh))


def dump_provider(provider: RestrictedCharProvider, path) -> None:
    with open(path, "w") as fh:
        json.dump(provider.to_json(), fh, indent=1, sort_keys=True)


def weyl_provider(rd: RootDatum, modulus: int) -> RestrictedCharProvider:
    """Restricted characters taken to be Weyl characters.

    Correct for generic quantum parameters and for large primes, not in
    general.
    """
    return RestrictedCharProvider(
        rd, modulus, provenance=WEYL_PROVENANCE, factory=lambda lam: weyl_character(lam, rd)
    )


def sl2_provider(modulus: int, p: int | None = None) -> RestrictedCharProvider:
    """Exact restricted simple characters for sl2.

    With ``p`` unset every restricted ``n < modulus`` has the Weyl
    character, which is the case for a prime modulus and for the quantum
    case at an odd root of unity.  With ``modulus = p**r`` the entry is the
    product of the stretched digit characters of ``n`` in base ``p``.
    """
    rd = parse_type("A1")
    if p is None:
        return RestrictedCharProvider(
            rd, modulus, provenance="sl2 restricted simples", factory=lambda lam: weyl_character(lam, rd)
        )
    r = round(math.log(modulus, p))
    if p**r != modulus:
        raise ConfigurationError(f"modulus {modulus} is not a power of {p}")
    base = sl2_provider(p)
    return power_provider(base, r, provenance=f"sl2 restricted simples, base {p} digits")


def power_provider(base: RestrictedCharProvider, r: int, provenance: str = "") -> RestrictedCharProvider:
    """Provider at modulus ``m**r`` whose entries are expanded digit by digit from ``base``."""
    if r < 1:
        raise ValueError("r must be positive")
    return RestrictedCharProvider(
        base.rd,
        base.modulus**r,
        provenance=provenance or f"{base.provenance} (digit expansion, power {r})",
        factory=lambda lam: _finite_simple(lam, base),
    )


def steinberg_only_provider(rd: RootDatum, modulus: int) -> RestrictedCharProvider:
    """The two restricted weights whose characters are known in every type."""
    table = {rd.zero: monomial(rd, rd.zero), scale(modulus - 1, rd.rho): steinberg_character(modulus, rd)}
    return RestrictedCharProvider(rd, modulus, table, provenance="trivial and Steinberg weights")


# -- simple characters ---------------------------------------------------------

def _finite_simple(lam: Weight, provider: RestrictedCharProvider) -> Character:
    """Exact character of a dominant weight by its base-m digits."""
    lam = tuple(lam)
    hit = provider._expanded.get(lam)
    if hit is not None:
        return hit
    m = provider.modulus
    dec = adic_decompose(lam, m)
    ch = provider(dec.lambda0)
    if any(dec.lambda1):
        rest = frobenius_stretch(_finite_simple(dec.lambda1, provider), m)
        ch = char_mul(ch, rest)
    if not isinstance(provider, RecordingProvider):
        with provider._lock:
            provider._expanded[lam] = ch
    return ch


def _as_window(lam: Weight, window) -> TruncationWindow:
    if isinstance(window, int):
        return TruncationWindow(lam, window)
    return window


def _outer_depth(lam: Weight, window: TruncationWindow, rd: RootDatum) -> int | None:
    """Depth at top ``lam`` whose box contains ``window``, or None if impossible."""
    coords = rd.root_coords_int(sub(lam, window.top))
    if coords is None:
        return None
    return max(0, max(coords) + window.depth)


def simple_char_modular(lam, provider: RestrictedCharProvider, window) -> Character:
    """Character of the simple module of highest weight ``lam``.

    Dominant weights give exact characters.  Otherwise the result is known
    on ``window`` (a window or an integer depth below ``lam``).
    """
    rd = provider.rd
    lam = tuple(lam)
    window = _as_window(lam, window)
    if is_dominant(lam):
        return _finite_simple(lam, provider)
    if window.top != lam:
        depth = _outer_depth(lam, window, rd)
        if depth is None:
            return Character.truncated(rd, {}, window)
        return simple_char_modular(lam, provider, depth).restrict(window)
    if is_antidominant(lam):
        return antidominant_simple_char(lam, provider, window)
    if window.depth == 0:
        return Character.truncated(rd, {lam: 1}, window)
    m = provider.modulus
    dec = adic_decompose(lam, m)
    inner = simple_char_modular(dec.lambda1, provider, window.depth // m)
    return char_mul(provider(dec.lambda0), frobenius_stretch(inner, m), window)


def antidominant_exponent(lam: Sequence[int], m: int) -> int:
    """Least ``r >= 1`` with ``m**r * rho + lam`` restricted at modulus ``m**r``."""
    r = 1
    while m**r < -min(lam):
        r += 1
    return r


def antidominant_simple_char(lam, provider: RestrictedCharProvider, window) -> Character:
    """Simple character at an antidominant weight: a finite part times stretched ``q^-``."""
    rd = provider.rd
    lam = tuple(lam)
    if not is_antidominant(lam):
        raise ValueError(f"{list(lam)} is not antidominant")
    window = _as_window(lam, window)
    if window.top != lam:
        depth = _outer_depth(lam, window, rd)
        if depth is None:
            return Character.truncated(rd, {}, window)
        return antidominant_simple_char(lam, provider, depth).restrict(window)
    big = provider.modulus ** antidominant_exponent(lam, provider.modulus)
    finite = _finite_simple(tuple(big + x for x in lam), provider)
    tail = frobenius_stretch(q_minus(rd, window.depth // big), big)
    return char_mul(finite, tail, window)


def simple_char_quantum(
    lam, q_provider: RestrictedCharProvider, p_provider: RestrictedCharProvider, window
) -> Character:
    """Quantum simple character: ``Char L_q(lam0) * (Char L_p(lam1))^(ell)``."""
    if q_provider.rd != p_provider.rd:
        raise ValueError("providers disagree on the root datum")
    rd = q_provider.rd
    lam = tuple(lam)
    window = _as_window(lam, window)
    if window.top != lam:
        depth = _outer_depth(lam, window, rd)
        if depth is None:
            return Character.truncated(rd, {}, window)
        return simple_char_quantum(lam, q_provider, p_provider, depth).restrict(window)
    ell = q_provider.modulus
    dec = adic_decompose(lam, ell)
    head = q_provider(dec.lambda0)
    if not any(dec.lambda1):
        return head
    inner = simple_char_modular(dec.lambda1, p_provider, window.depth // ell)
    stretched = frobenius_stretch(inner, ell)
    if head.exact_outside and stretched.exact_outside:
        return char_mul(head, stretched)
    return char_mul(head, stretched, window)


@dataclass(frozen=True)
class SimpleCharRequest:
    """A simple-character query: ``regime`` is ``("modular", p)`` or ``("quantum", ell, p)``."""

    lam: Weight
    regime: tuple
    window: TruncationWindow

    def __post_init__(self):
        kind = self.regime[0]
        if kind == "modular":
            if self.regime[1] < 2:
                raise ConfigurationError("p must be at least 2")
        elif kind == "quantum":
            ell = self.regime[1]
            if ell <= 1 or ell % 2 == 0:
                raise ConfigurationError("ell must be odd and greater than 1")
        else:
            raise ConfigurationError(f"unknown regime {kind!r}")


def simple_character(req: SimpleCharRequest, provider, p_provider=None) -> Character:
    if req.regime[0] == "modular":
        return simple_char_modular(req.lam, provider, req.window)
    return simple_char_quantum(req.lam, provider, p_provider, req.window)


# -- single weight multiplicities ------------------------------------------------


def stabilization_exponent(lam: Sequence[int], mu: Sequence[int], m: int, rd: RootDatum) -> int:
    """Least ``r >= 1`` with ``m**r`` larger than every coefficient of ``lam - mu``."""
    coords = rd.root_coords_int(sub(lam, mu))
    if coords is None or min(coords) < 0:
        raise ValueError(f"{list(mu)} is not below {list(lam)}")
    r = 1
    while m**r <= max(coords):
        r += 1
    return r


def _finite_weight_mult(lam: Weight, nu: Weight, provider: RestrictedCharProvider, r: int) -> int:
    """``dim L(lam)_nu`` for ``lam`` restricted at modulus ``m**r``, digit by digit."""
    m = provider.modulus
    if r == 1:
        return provider(lam)[nu]
    dec = adic_decompose(lam, m)
    total = 0
    for alpha, a in provider(dec.lambda0).terms.items():
        diff = sub(nu, alpha)
        if all(x % m == 0 for x in diff):
            beta = tuple(x // m for x in diff)
            if dominance_leq(beta, dec.lambda1, provider.rd):
                total += a * _finite_weight_mult(dec.lambda1, beta, provider, r - 1)
    return total


def weight_mult_stabilized(lam, mu, provider: RestrictedCharProvider, r: int | None = None) -> tuple[int, int]:
    """``dim L(lam)_mu`` through a single decomposition at modulus ``m**r``.

    ``r`` defaults to the least exponent for which ``m**r`` exceeds every
    coefficient of ``lam - mu``; larger values give the same answer.
    Returns ``(multiplicity, r)``.
    """
    rd = provider.rd
    lam, mu = tuple(lam), tuple(mu)
    bound = stabilization_exponent(lam, mu, provider.modulus, rd)
    if r is None:
        r = bound
    elif r < bound:
        raise ValueError(f"r={r} is below the stabilization bound {bound}")
    big = provider.modulus**r
    dec = adic_decompose(lam, big)
    nu = sub(mu, scale(big, dec.lambda1))
    if not dominance_leq(nu, dec.lambda0, rd):
        return 0, r
    return _finite_weight_mult(dec.lambda0, nu, provider, r), r
