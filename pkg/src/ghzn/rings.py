"""Ring-theoretic predicates for ``Z/n``.

Every ideal of ``Z/n`` is principal, so an ideal is stored as the divisor
``g = gcd(x1, ..., xk, n)`` of ``n``.  The zero ideal is ``g = n`` and the
unit ideal is ``g = 1``.

The predicates that define regularity and the two necessary criteria for
the generating hypothesis are decided by exhaustive (vectorised) search over
the ring when ``n`` is small enough, and by the number-theoretic closed form
otherwise; when both are available they are cross-checked.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from math import gcd
from typing import Iterable

import numpy as np

from .linalg import Modulus

__all__ = [
    "IdealZn",
    "RingReport",
    "RelativeReason",
    "annihilator",
    "nilpotence_criterion",
    "annihilator_criterion",
    "is_regular",
    "crt_decompose",
    "double_annihilator_check",
    "ideal_is_ring_summand",
    "relative_gh_predicate",
    "nilradical",
    "ring_report",
]

# Exhaustive checks above this size are skipped in favour of closed forms.
DEFAULT_MAX_BRUTE = 2000


@dataclass(frozen=True)
class IdealZn:
    """The ideal ``(g)`` of ``Z/n`` with canonical generator ``g | n``."""

    modulus: Modulus
    g: int

    def __post_init__(self):
        object.__setattr__(self, "modulus", Modulus.of(self.modulus))
        n = self.modulus.n
        g = gcd(int(self.g), n) or n
        object.__setattr__(self, "g", g)

    @classmethod
    def generated_by(cls, modulus: Modulus | int, generators: Iterable[int]) -> "IdealZn":
        modulus = Modulus.of(modulus)
        g = modulus.n
        for x in generators:
            g = gcd(g, int(x) % modulus.n)
        return cls(modulus, g)

    @property
    def n(self) -> int:
        return self.modulus.n

    @property
    def generator(self) -> int:
        """The generator as a residue in ``[0, n)`` (0 for the zero ideal)."""
        return self.g % self.n

    @property
    def size(self) -> int:
        return self.n // self.g

    def elements(self) -> list[int]:
        return list(range(0, self.n, self.g))

    def __contains__(self, x: int) -> bool:
        return int(x) % self.g == 0

    def is_zero(self) -> bool:
        return self.g == self.n

    def __str__(self) -> str:
        return f"({self.generator}) in Z/{self.n}"


class RelativeReason(str, enum.Enum):
    OK = "ok"
    NOT_SUMMAND = "not-summand"
    QUOTIENT_NOT_REGULAR = "quotient-not-regular"


def annihilator(n: Modulus | int, i: IdealZn) -> IdealZn:
    """``ann((g)) = (n/g)``."""
    n = Modulus.of(n)
    return IdealZn(n, n.n // i.g)


def nilradical(n: Modulus | int) -> IdealZn:
    n = Modulus.of(n)
    return IdealZn(n, n.radical)


def _residues(n: int) -> np.ndarray:
    return np.arange(n, dtype=np.int64)


def _brute_nilpotent_free(n: int) -> bool:
    x = _residues(n)
    power = x.copy()
    # x^k for k up to log2(n) + 1 covers every nilpotency index in Z/n
    for _ in range(n.bit_length() + 1):
        if np.any((power == 0) & (x != 0)):
            return False
        power = (power * x) % n
    return not np.any((power == 0) & (x != 0))


def _brute_regular(n: int) -> bool:
    x = _residues(n)
    xx = (x * x) % n
    # row x, column y: x*y*x mod n
    table = (xx[:, None] * x[None, :]) % n
    return bool(np.all(np.any(table == x[:, None], axis=1)))


def _brute_double_annihilator(n: int) -> bool:
    x = _residues(n)
    kills = ((x[:, None] * x[None, :]) % n == 0).astype(np.float64)
    # bad[x, z] counts y in ann(x) with z*y != 0; zero row <=> z in ann(ann(x))
    bad = kills @ (1.0 - kills).T
    annann = bad == 0
    multiples = (x[:, None] * x[None, :]) % n
    principal = np.zeros((n, n), dtype=bool)
    np.put_along_axis(principal, multiples, True, axis=1)
    return bool(np.array_equal(annann, principal))


def nilpotence_criterion(n: Modulus | int, max_brute: int = DEFAULT_MAX_BRUTE) -> bool:
    """True when ``Z/n`` has no nonzero nilpotent elements."""
    n = Modulus.of(n)
    closed = n.squarefree
    if n.n <= max_brute:
        brute = _brute_nilpotent_free(n.n)
        if brute != closed:
            raise AssertionError(f"nilpotence check disagrees with squarefreeness for n={n.n}")
        return brute
    return closed


def annihilator_criterion(n: Modulus | int, max_brute: int = DEFAULT_MAX_BRUTE) -> bool:
    """True when ``ann(ann((x))) == (x)`` for every ``x``.

    Always true over ``Z/n``; the check is carried out anyway.
    """
    n = Modulus.of(n)
    if n.n <= max_brute:
        return _brute_double_annihilator(n.n)
    return all(double_annihilator_check(n, IdealZn(n, d)) for d in n.divisors())


def is_regular(n: Modulus | int, max_brute: int = DEFAULT_MAX_BRUTE) -> bool:
    """True when every ``x`` has ``y`` with ``x*y*x == x``."""
    n = Modulus.of(n)
    closed = n.squarefree
    if n.n <= max_brute:
        brute = _brute_regular(n.n)
        if brute != closed:
            raise AssertionError(f"regularity check disagrees with squarefreeness for n={n.n}")
        return brute
    return closed


def crt_decompose(n: Modulus | int) -> list[int]:
    """Pairwise coprime prime powers with product ``n``, ordered by prime."""
    return list(Modulus.of(n).prime_powers)


def double_annihilator_check(n: Modulus | int, i: IdealZn) -> bool:
    n = Modulus.of(n)
    return annihilator(n, annihilator(n, i)) == i


def ideal_is_ring_summand(n: Modulus | int, i: IdealZn) -> int | None:
    """An idempotent ``e`` with ``(e) == i``, or ``None`` if there is none.

    Such an ``e`` exists exactly when ``gcd(g, n/g) == 1``; it is the CRT
    solution of ``e = 0 mod g``, ``e = 1 mod n/g``.
    """
    n = Modulus.of(n)
    g = i.g
    m = n.n // g
    if gcd(g, m) != 1:
        return None
    if m == 1:
        return 0
    return (g * pow(g, -1, m)) % n.n


def relative_gh_predicate(n: Modulus | int, i: IdealZn) -> tuple[bool, RelativeReason]:
    """Whether ``i`` is a ring summand of ``Z/n`` with regular quotient ``Z/g``."""
    n = Modulus.of(n)
    if ideal_is_ring_summand(n, i) is None:
        return False, RelativeReason.NOT_SUMMAND
    if i.g > 1 and not Modulus(i.g).squarefree:
        return False, RelativeReason.QUOTIENT_NOT_REGULAR
    return True, RelativeReason.OK


@dataclass(frozen=True)
class RingReport:
    modulus: Modulus
    is_regular: bool
    nilpotence_criterion: bool
    annihilator_criterion: bool
    squarefree: bool
    prime_power_factors: tuple[int, ...]
    nilradical: IdealZn
    brute_forced: bool

    def to_dict(self) -> dict:
        return {
            "modulus": self.modulus.n,
            "is_regular": self.is_regular,
            "nilpotence_criterion": self.nilpotence_criterion,
            "annihilator_criterion": self.annihilator_criterion,
            "squarefree": self.squarefree,
            "prime_power_factors": list(self.prime_power_factors),
            "is_product_of_fields": self.squarefree,
            "nilradical": self.nilradical.generator,
            "brute_forced": self.brute_forced,
        }


def ring_report(n: Modulus | int, max_brute: int = DEFAULT_MAX_BRUTE) -> RingReport:
    n = Modulus.of(n)
    report = RingReport(
        modulus=n,
        is_regular=is_regular(n, max_brute),
        nilpotence_criterion=nilpotence_criterion(n, max_brute),
        annihilator_criterion=annihilator_criterion(n, max_brute),
        squarefree=n.squarefree,
        prime_power_factors=tuple(crt_decompose(n)),
        nilradical=nilradical(n),
        brute_forced=n.n <= max_brute,
    )
    assert report.is_regular == (report.nilpotence_criterion and report.annihilator_criterion)
    return report
