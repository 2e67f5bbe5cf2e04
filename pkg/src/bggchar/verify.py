"""Identity-verification suites shared by the CLI and the test-suite."""

from __future__ import annotations

import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .charring import TruncationWindow, char_mul, check_volume, monomial, q_minus, verma_character
from .linkage import linkage_downset
from .rootsys import RootDatum, add
from .sl2 import (
    A1,
    Sl2Regime,
    ledger_character,
    sl2_composition_factors,
    sl2_reciprocity_check,
    sl2_socle,
)
from .steinberg import power_provider, simple_char_modular, sl2_provider, weyl_provider


@dataclass
class Report:
    suite: str
    checks: int = 0
    failures: list = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def record(self, ok: bool, detail) -> None:
        self.checks += 1
        if not ok:
            self.failures.append(detail)

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "passed": self.passed,
            "checks": self.checks,
            "failed": len(self.failures),
            "failures": self.failures[:20],
            **self.extra,
        }


def verma_identity(rd: RootDatum, depth: int, count: int = 20, seed: int = 0) -> Report:
    """``Char Delta(lam) == q^- * e^(lam + rho)`` on random highest weights."""
    check_volume(TruncationWindow(rd.zero, depth), rd)
    rng = random.Random(seed)
    rep = Report("verma-identity")
    qm = q_minus(rd, depth)
    for _ in range(count):
        lam = tuple(rng.randint(-6, 6) for _ in range(rd.rank))
        lhs = verma_character(lam, rd, depth)
        rhs = char_mul(qm, monomial(rd, add(lam, rd.rho)))
        rep.record(lhs == rhs, {"type": rd.label, "lambda": list(lam)})
    return rep


def steinberg_consistency(rd: RootDatum, p: int, depth: int, count: int = 30, seed: int = 0) -> Report:
    """Expanding at modulus ``p`` twice agrees with one expansion at ``p**2``.

    For sl2 the modulus-``p**2`` table is built from base-``p`` digits of the
    exact restricted characters; in other types both sides use Weyl
    characters as restricted input.
    """
    rep = Report("steinberg-consistency")
    if rd.rank == 1:
        small, big = sl2_provider(p), sl2_provider(p * p, p)
        weights = [(n,) for n in range(-p * p, p * p)]
    else:
        small = weyl_provider(rd, p)
        big = power_provider(small, 2)
        rng = random.Random(seed)
        weights = [tuple(rng.randint(-p * p, p * p - 1) for _ in range(rd.rank)) for _ in range(count)]
    for lam in weights:
        win = TruncationWindow(lam, depth)
        a = simple_char_modular(lam, small, win).restrict(win)
        b = simple_char_modular(lam, big, win).restrict(win)
        rep.record(a == b, {"lambda": list(lam)})
    return rep


def sl2_ledger(regime: Sl2Regime, cutoff: int, weights=None) -> Report:
    """Conservation, linkage and socle checks on composition ledgers of sl2 Verma modules.

    With ``weights`` unset a single ledger for ``n = 0`` is checked.
    """
    rep = Report("sl2-ledger")
    weights = [0] if weights is None else list(weights)
    for n in weights:
        cut = cutoff if cutoff < n else n - 1
        ledger = sl2_composition_factors(n, regime, cut)
        depth = (n - cut) // 2 + 1
        rep.record(
            ledger_character(ledger, depth) == verma_character((n,), A1, depth),
            {"n": n, "check": "conservation"},
        )
        moduli = [regime.p] if regime.kind == "modular" else [regime.ell]
        down = set()
        for k in moduli:
            down |= {w[0] for w in linkage_downset((n,), k, A1, (n - min(ledger.factors)) // 2)}
        rep.record(ledger.factor_weights() <= down, {"n": n, "check": "linkage"})
        soc = sl2_socle(n, regime)
        if soc is not None and soc > cut:
            rep.record(ledger.factors[soc] >= 1, {"n": n, "check": "socle"})
        if len(weights) == 1:
            rep.extra["factors"] = sorted(ledger.factors, reverse=True)
            rep.extra["remainder"] = [q.to_json() for q in ledger.remainder]
    return rep


def reciprocity(regime: Sl2Regime, lam_range=None, depth: int | None = None) -> Report:
    """Tilting-side and baby-Verma-side multiplicities agree for every linked pair."""
    rep = Report("reciprocity")
    m = regime.p if regime.kind == "modular" else regime.ell * regime.p
    if lam_range is None:
        lam_range = range(-1, regime.p**2 if regime.kind == "modular" else m)
    if depth is None:
        depth = 3 * regime.p**2
    k = regime.first_modulus
    pairs = [(lam, mu[0]) for lam in lam_range for mu in sorted(linkage_downset((lam,), k, A1, depth))]

    def run(pair):
        lam, mu = pair
        return pair, sl2_reciprocity_check(lam, mu, regime)

    with ThreadPoolExecutor(max_workers=4) as pool:
        results = list(pool.map(run, pairs))
    for (lam, mu), (lhs, rhs, ok) in results:
        rep.record(ok, {"lambda": lam, "mu": mu, "lhs": lhs, "rhs": rhs})
    return rep
