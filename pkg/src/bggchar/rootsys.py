"""Root data, weight lattice arithmetic and partition counts.

Weights are integer tuples in fundamental-weight coordinates, so coordinate
``i`` of ``lam`` is ``<lam, alpha_i^vee>``.  Roots are integer tuples in
simple-root coordinates.  The Cartan matrix is stored with
``cartan[i][j] = <alpha_j, alpha_i^vee>``, which makes column ``j`` the
weight coordinates of ``alpha_j``.
"""

from __future__ import annotations

import itertools
import math
import re
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import ConfigurationError

Weight = tuple[int, ...]
RootCoords = tuple[int, ...]
Matrix = tuple[tuple[int, ...], ...]

SUPPORTED_TYPES = ("A1", "A2", "A3", "A4", "B2", "B3", "B4", "C3", "C4", "D4", "G2")


def cartan_matrix(type_label: str, rank: int) -> Matrix:
    """Bourbaki-numbered Cartan matrix with ``C[i][j] = <alpha_j, alpha_i^vee>``."""
    label = f"{type_label}{rank}"
    if label not in SUPPORTED_TYPES:
        raise ConfigurationError(
            f"unsupported root datum {label!r}; supported: {', '.join(SUPPORTED_TYPES)}"
        )
    c = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]
    if type_label == "G":
        c[0][1], c[1][0] = -3, -1
        return tuple(map(tuple, c))
    if type_label == "D":
        edges = [(0, 1), (1, 2), (1, 3)]
    else:
        edges = [(i, i + 1) for i in range(rank - 1)]
    for i, j in edges:
        c[i][j] = c[j][i] = -1
    if type_label == "B":
        # alpha_n short
        c[rank - 1][rank - 2] = -2
    elif type_label == "C":
        # alpha_n long
        c[rank - 2][rank - 1] = -2
    return tuple(map(tuple, c))


def _symmetrizers(c: Matrix) -> tuple[int, ...]:
    n = len(c)
    d: list[Fraction | None] = [None] * n
    d[0] = Fraction(1)
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(n):
            if c[i][j] != 0 and d[j] is None:
                d[j] = d[i] * c[i][j] / c[j][i]
                stack.append(j)
    lcm = math.lcm(*(x.denominator for x in d))
    ints = [int(x * lcm) for x in d]
    g = math.gcd(*ints)
    return tuple(x // g for x in ints)


def _inverse(c: Matrix) -> tuple[tuple[Fraction, ...], ...]:
    n = len(c)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(c)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return tuple(tuple(row[n:]) for row in a)


def _positive_roots(c: Matrix) -> tuple[RootCoords, ...]:
    """Closure from simple roots using alpha-strings, level by level in height."""
    n = len(c)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    roots = set(simple)
    level = list(simple)
    while level:
        nxt = set()
        for beta in level:
            for i in range(n):
                # p = how far beta - k*alpha_i stays a root
                p = 0
                down = list(beta)
                while True:
                    down[i] -= 1
                    if tuple(down) in roots:
                        p += 1
                    else:
                        break
                pairing = sum(c[i][j] * beta[j] for j in range(n))
                if p - pairing > 0:
                    up = list(beta)
                    up[i] += 1
                    nxt.add(tuple(up))
        nxt -= roots
        roots |= nxt
        level = sorted(nxt)
    return tuple(sorted(roots, key=lambda r: (sum(r), r)))


def _matmul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n)
    )


@dataclass(frozen=True, eq=False)
class RootDatum:
    type_label: str
    rank: int
    cartan: Matrix
    d: tuple[int, ...]
    positive_roots: tuple[RootCoords, ...]
    coxeter_number: int
    w0_action: tuple[tuple[int, int], ...]
    _cinv: tuple[tuple[Fraction, ...], ...] = field(repr=False)
    _pcache: dict = field(default_factory=dict, repr=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    @property
    def label(self) -> str:
        return f"{self.type_label}{self.rank}"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, RootDatum) and other.label == self.label

    def __hash__(self) -> int:
        return hash(self.label)

    @property
    def num_positive_roots(self) -> int:
        return len(self.positive_roots)

    @property
    def rho(self) -> Weight:
        return (1,) * self.rank

    @property
    def zero(self) -> Weight:
        return (0,) * self.rank

    # -- basis changes -------------------------------------------------------

    def root_to_weight(self, coeffs: Sequence[int]) -> Weight:
        c = self.cartan
        return tuple(sum(c[i][j] * coeffs[j] for j in range(self.rank)) for i in range(self.rank))

    def weight_to_root(self, lam: Sequence[int]) -> tuple[Fraction, ...]:
        inv = self._cinv
        return tuple(sum(inv[i][j] * lam[j] for j in range(self.rank)) for i in range(self.rank))

    def root_coords_int(self, lam: Sequence[int]) -> RootCoords | None:
        """Integer simple-root coordinates of ``lam``, or None if not in the root lattice."""
        coords = self.weight_to_root(lam)
        if any(x.denominator != 1 for x in coords):
            return None
        return tuple(int(x) for x in coords)

    # -- pairings --------------------------------------------------------------

    def coroot_pairing(self, lam: Sequence[int], beta: RootCoords) -> int:
        """``<lam, beta^vee>`` for a root ``beta`` given in simple-root coordinates."""
        num = sum(lam[j] * beta[j] * self.d[j] for j in range(self.rank))
        half_norm = self.root_norm(beta)
        q, r = divmod(num * 2, half_norm * 2)
        if r:
            raise ArithmeticError(f"non-integral pairing for root {beta}")
        return q

    def root_norm(self, beta: RootCoords) -> int:
        """``(beta, beta) / 2`` in the normalisation where short simple roots have 1."""
        n = self.rank
        c, d = self.cartan, self.d
        total = sum(beta[i] * d[i] * c[i][j] * beta[j] for i in range(n) for j in range(n))
        return total // 2

    def inner(self, lam: Sequence[int], mu: Sequence[int]) -> Fraction:
        """W-invariant form with ``(alpha_i, alpha_i) = 2 d_i``."""
        coords = self.weight_to_root(lam)
        return sum((coords[j] * self.d[j] * mu[j] for j in range(self.rank)), Fraction(0))

    # -- Weyl group ----------------------------------------------------------

    def simple_reflection(self, i: int, lam: Sequence[int]) -> Weight:
        k = lam[i]
        return tuple(lam[j] - k * self.cartan[j][i] for j in range(self.rank))

    def apply_w0(self, lam: Sequence[int]) -> Weight:
        return tuple(sign * lam[src] for src, sign in self.w0_action)

    def dominant_conjugate(self, lam: Sequence[int]) -> Weight:
        lam = tuple(lam)
        while True:
            i = next((i for i, x in enumerate(lam) if x < 0), None)
            if i is None:
                return lam
            lam = self.simple_reflection(i, lam)

    def orbit(self, lam: Sequence[int]) -> set[Weight]:
        start = tuple(lam)
        seen = {start}
        todo = [start]
        while todo:
            mu = todo.pop()
            for i in range(self.rank):
                nu = self.simple_reflection(i, mu)
                if nu not in seen:
                    seen.add(nu)
                    todo.append(nu)
        return seen

    def weyl_group(self) -> tuple[Matrix, ...]:
        """All elements of W as integer matrices acting on weight coordinates."""
        return _weyl_group(self.label)

    # -- partition functions ---------------------------------------------------

    def partition_table(self, bounds: Sequence[int], cap: int | None = None) -> dict[RootCoords, int]:
        """Partition counts for every ``nu`` in the box ``0 <= nu_i <= bounds[i]``.

        ``cap`` bounds each root multiplicity by ``n_beta < cap``; ``None``
        gives the Kostant partition function.  Results are memoised on the
        datum and the lock keeps concurrent fills consistent.
        """
        bounds = tuple(int(b) for b in bounds)
        key = (bounds, cap)
        with self._lock:
            hit = self._pcache.get(key)
            if hit is not None:
                return hit
        # cache any box that dominates the requested one
        with self._lock:
            for (b, cp), tbl in self._pcache.items():
                if cp == cap and all(x >= y for x, y in zip(b, bounds)):
                    return {nu: v for nu, v in tbl.items() if all(a <= y for a, y in zip(nu, bounds))}
        table = _partition_box(self.positive_roots, bounds, cap)
        with self._lock:
            self._pcache[key] = table
        return table


@lru_cache(maxsize=None)
def _weyl_group(label: str) -> tuple[Matrix, ...]:
    rd = build_root_datum(label[0], int(label[1:]))
    n = rd.rank
    gens = []
    for i in range(n):
        cols = [rd.simple_reflection(i, tuple(int(k == j) for k in range(n))) for j in range(n)]
        gens.append(tuple(tuple(cols[j][r] for j in range(n)) for r in range(n)))
    ident = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    seen = {ident}
    todo = [ident]
    while todo:
        w = todo.pop()
        for s in gens:
            ws = _matmul(s, w)
            if ws not in seen:
                seen.add(ws)
                todo.append(ws)
    return tuple(sorted(seen))


def _partition_box(roots: Sequence[RootCoords], bounds: Weight, cap: int | None) -> dict[RootCoords, int]:
    points = list(itertools.product(*(range(b + 1) for b in bounds)))
    dp = dict.fromkeys(points, 0)
    dp[(0,) * len(bounds)] = 1
    for beta in roots:
        if any(b > m for b, m in zip(beta, bounds)):
            continue
        new: dict[RootCoords, int] = {}
        for nu in points:  # lexicographic, so nu - beta is already done
            prev = tuple(a - b for a, b in zip(nu, beta))
            val = dp[nu]
            if min(prev) >= 0:
                val += new[prev]
                if cap is not None:
                    far = tuple(a - cap * b for a, b in zip(nu, beta))
                    if min(far) >= 0:
                        val -= dp[far]
            new[nu] = val
        dp = new
    return dp


@lru_cache(maxsize=None)
def build_root_datum(type_label: str, rank: int) -> RootDatum:
    c = cartan_matrix(type_label, rank)
    roots = _positive_roots(c)
    n = rank
    cinv = _inverse(c)
    h = max(sum(r) for r in roots) + 1
    # longest element: reflect rho to the antidominant chamber
    mu = (1,) * n
    word = []
    while any(x > 0 for x in mu):
        i = next(i for i, x in enumerate(mu) if x > 0)
        word.append(i)
        k = mu[i]
        mu = tuple(mu[j] - k * c[j][i] for j in range(n))
    images = []
    for j in range(n):
        v = tuple(int(k == j) for k in range(n))
        for i in word:
            v = tuple(v[r] - v[i] * c[r][i] for r in range(n))
        images.append(v)
    # column j is w0(omega_j); w0 = -(diagram automorphism)
    w0 = []
    for i in range(n):
        row = [images[j][i] for j in range(n)]
        (src,) = [j for j in range(n) if row[j] != 0]
        w0.append((src, row[src]))
    return RootDatum(
        type_label=type_label,
        rank=rank,
        cartan=c,
        d=_symmetrizers(c),
        positive_roots=roots,
        coxeter_number=h,
        w0_action=tuple(w0),
        _cinv=cinv,
    )


def parse_type(label: str) -> RootDatum:
    """Root datum from a label such as ``"A2"`` or ``"G2"``."""
    m = re.fullmatch(r"\s*([A-Ga-g])\s*(\d+)\s*", label)
    if not m:
        raise ConfigurationError(
            f"unsupported root datum {label!r}; supported: {', '.join(SUPPORTED_TYPES)}"
        )
    return build_root_datum(m.group(1).upper(), int(m.group(2)))


# -- weight predicates and actions ------------------------------------------


def is_dominant(lam: Iterable[int]) -> bool:
    return all(x >= 0 for x in lam)


def is_antidominant(lam: Iterable[int]) -> bool:
    return all(x <= -1 for x in lam)


def is_restricted(lam: Iterable[int], m: int) -> bool:
    return all(0 <= x < m for x in lam)


def add(a: Sequence[int], b: Sequence[int]) -> Weight:
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Sequence[int], b: Sequence[int]) -> Weight:
    return tuple(x - y for x, y in zip(a, b))


def scale(k: int, a: Sequence[int]) -> Weight:
    return tuple(k * x for x in a)


def dominance_leq(mu: Sequence[int], lam: Sequence[int], rd: RootDatum) -> bool:
    """True iff ``lam - mu`` is a nonnegative integer combination of simple roots."""
    if len(mu) != rd.rank or len(lam) != rd.rank:
        raise ValueError("weight length does not match the rank")
    coords = rd.root_coords_int(sub(lam, mu))
    return coords is not None and min(coords) >= 0


def dot_action(w, lam: Sequence[int], rd: RootDatum) -> Weight:
    """Dot action ``w . lam = w(lam + rho) - rho``.

    ``w`` is either a Weyl group element as a matrix (see
    :meth:`RootDatum.weyl_group`) or an affine reflection given as a triple
    ``(beta, m, modulus)``.
    """
    if len(w) == 3 and isinstance(w[1], int):
        beta, m, k = w
        return affine_dot_reflection(beta, m, k, lam, rd)
    shifted = add(lam, rd.rho)
    n = rd.rank
    return tuple(sum(w[i][j] * shifted[j] for j in range(n)) - 1 for i in range(n))


def affine_dot_reflection(
    beta: RootCoords, m: int, modulus: int, lam: Sequence[int], rd: RootDatum
) -> Weight:
    """``s_{beta,m} . lam = s_beta . lam + m * modulus * beta``."""
    beta = tuple(beta)
    if beta not in rd.positive_roots:
        raise ValueError(f"{beta} is not a positive root of {rd.label}")
    k = rd.coroot_pairing(add(lam, rd.rho), beta) - m * modulus
    return sub(lam, scale(k, rd.root_to_weight(beta)))


def kostant_partition(nu: Sequence[int], rd: RootDatum) -> int:
    """Number of ways to write ``nu`` (simple-root coordinates) as a sum of positive roots."""
    nu = tuple(nu)
    if min(nu) < 0:
        return 0
    return rd.partition_table(nu)[nu]


def count_bounded_partitions(nu: Sequence[int], bound: int, rd: RootDatum) -> int:
    """Like :func:`kostant_partition` but every root is used fewer than ``bound`` times."""
    if bound < 1:
        raise ValueError("bound must be positive")
    nu = tuple(nu)
    if min(nu) < 0:
        return 0
    return rd.partition_table(nu, cap=bound)[nu]


@dataclass(frozen=True)
class AdicDecomposition:
    lambda0: Weight
    lambda1: Weight
    modulus: int


def adic_decompose(lam: Sequence[int], m: int) -> AdicDecomposition:
    """Split ``lam = lambda0 + m * lambda1`` with every coordinate of lambda0 in ``[0, m)``."""
    if m < 1:
        raise ValueError("modulus must be positive")
    q = [divmod(x, m) for x in lam]
    return AdicDecomposition(tuple(r for _, r in q), tuple(a for a, _ in q), m)


def weyl_dimension(lam: Sequence[int], rd: RootDatum) -> int:
    """Weyl's dimension formula for a dominant weight."""
    shifted = add(lam, rd.rho)
    num = den = 1
    for beta in rd.positive_roots:
        num *= rd.coroot_pairing(shifted, beta)
        den *= rd.coroot_pairing(rd.rho, beta)
    q, r = divmod(num, den)
    assert r == 0
    return q
