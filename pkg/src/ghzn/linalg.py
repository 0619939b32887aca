"""Exact linear algebra over the residue ring ``Z/nZ``.

Everything in the package that decides something (homology, homotopies,
quasi-isomorphisms) ends up as a question about row spans of matrices mod n.
Because ``Z/n`` has zero divisors an ordinary echelon form does not determine
the row span, so the workhorse here is the Howell normal form, which does.

Matrices are dense ``numpy.int64`` arrays with entries reduced into
``[0, n)``.  ``n`` is assumed to fit comfortably in a machine word
(products of two residues must not overflow ``int64``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd, prod
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "Modulus",
    "MatZn",
    "HowellForm",
    "InvariantFactors",
    "howell_form",
    "solve_linear",
    "kernel_basis",
    "left_obstruction",
    "module_structure",
    "is_projective",
    "factorize",
    "xgcd",
    "unit_normalizer",
    "smith_diagonal",
]

MAX_MODULUS = 2**31


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division (n is desk-sized)."""
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, s, t)`` with ``s*a + t*b == g == gcd(a, b)``."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        return -a, -s0, -t0
    return a, s0, t0


def unit_normalizer(a: int, n: int) -> int:
    """A unit ``u`` of ``Z/n`` with ``u*a == gcd(a, n) (mod n)``."""
    g = gcd(a, n)
    m = n // g
    if m == 1:
        return 1
    u = pow((a // g) % m, -1, m)
    while gcd(u, n) != 1:
        u += m
    return u % n


@dataclass(frozen=True)
class Modulus:
    """The modulus ``n >= 2`` of the coefficient ring ``Z/n``."""

    n: int
    factorization: tuple[tuple[int, int], ...] = field(
        init=False, repr=False, compare=False
    )

    def __post_init__(self):
        n = int(self.n)
        if n < 2:
            raise ValueError(f"modulus must be >= 2, got {self.n}")
        if n >= MAX_MODULUS:
            raise ValueError(f"modulus {n} exceeds the supported size {MAX_MODULUS}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "factorization", tuple(sorted(factorize(n).items())))

    @classmethod
    def of(cls, value: "Modulus | int") -> "Modulus":
        return value if isinstance(value, Modulus) else cls(int(value))

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factorization)

    @property
    def prime_powers(self) -> tuple[int, ...]:
        return tuple(p**e for p, e in self.factorization)

    @property
    def squarefree(self) -> bool:
        return all(e == 1 for _, e in self.factorization)

    @property
    def radical(self) -> int:
        return prod(self.primes)

    def divisors(self) -> list[int]:
        divs = [1]
        for p, e in self.factorization:
            divs = [d * p**k for d in divs for k in range(e + 1)]
        return sorted(divs)

    def __int__(self) -> int:
        return self.n

    def __str__(self) -> str:
        return f"Z/{self.n}"


class MatZn:
    """Immutable dense matrix over ``Z/n``.

    ``0 x k`` and ``k x 0`` shapes are allowed and behave like any other
    matrix (products with them give correctly shaped zero matrices).
    """

    __slots__ = ("modulus", "a")

    def __init__(self, modulus: Modulus | int, data, shape: tuple[int, int] | None = None):
        modulus = Modulus.of(modulus)
        arr = np.array(data, dtype=np.int64)
        if shape is not None:
            arr = arr.reshape(shape)
        elif arr.ndim == 1 and arr.size == 0:
            arr = arr.reshape(0, 0)
        if arr.ndim != 2:
            raise ValueError(f"expected a 2-d array, got shape {arr.shape}")
        arr %= modulus.n
        arr.setflags(write=False)
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "a", arr)

    def __setattr__(self, name, value):
        raise AttributeError("MatZn is immutable")

    def __reduce__(self):
        return (MatZn._wrap, (self.modulus, np.array(self.a)))

    @classmethod
    def _wrap(cls, modulus: Modulus, arr: np.ndarray) -> "MatZn":
        # arr must already be reduced
        obj = cls.__new__(cls)
        arr = np.ascontiguousarray(arr, dtype=np.int64)
        arr.setflags(write=False)
        object.__setattr__(obj, "modulus", modulus)
        object.__setattr__(obj, "a", arr)
        return obj

    @classmethod
    def zeros(cls, modulus: Modulus | int, rows: int, cols: int) -> "MatZn":
        modulus = Modulus.of(modulus)
        return cls._wrap(modulus, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, modulus: Modulus | int, size: int) -> "MatZn":
        modulus = Modulus.of(modulus)
        return cls._wrap(modulus, np.eye(size, dtype=np.int64))

    @classmethod
    def scalar(cls, modulus: Modulus | int, size: int, r: int) -> "MatZn":
        modulus = Modulus.of(modulus)
        return cls._wrap(modulus, (int(r) % modulus.n) * np.eye(size, dtype=np.int64))

    @property
    def n(self) -> int:
        return self.modulus.n

    @property
    def shape(self) -> tuple[int, int]:
        return self.a.shape

    @property
    def rows(self) -> int:
        return self.a.shape[0]

    @property
    def cols(self) -> int:
        return self.a.shape[1]

    @property
    def T(self) -> "MatZn":
        return MatZn._wrap(self.modulus, self.a.T)

    def is_zero(self) -> bool:
        return not self.a.any()

    def tolist(self) -> list[list[int]]:
        return self.a.tolist()

    def _check(self, other: "MatZn"):
        if self.modulus != other.modulus:
            raise ValueError(f"modulus mismatch: {self.modulus} vs {other.modulus}")

    def __matmul__(self, other: "MatZn") -> "MatZn":
        self._check(other)
        return MatZn._wrap(self.modulus, (self.a @ other.a) % self.n)

    def __add__(self, other: "MatZn") -> "MatZn":
        self._check(other)
        return MatZn._wrap(self.modulus, (self.a + other.a) % self.n)

    def __sub__(self, other: "MatZn") -> "MatZn":
        self._check(other)
        return MatZn._wrap(self.modulus, (self.a - other.a) % self.n)

    def __neg__(self) -> "MatZn":
        return MatZn._wrap(self.modulus, (-self.a) % self.n)

    def __mul__(self, r: int) -> "MatZn":
        return MatZn._wrap(self.modulus, (self.a * (int(r) % self.n)) % self.n)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, MatZn):
            return NotImplemented
        return (
            self.modulus == other.modulus
            and self.a.shape == other.a.shape
            and bool(np.array_equal(self.a, other.a))
        )

    def __hash__(self):
        return hash((self.n, self.a.shape, self.a.tobytes()))

    def __repr__(self) -> str:
        return f"MatZn(n={self.n}, {self.tolist()}, shape={self.shape})"


@dataclass(frozen=True)
class HowellForm:
    """Howell normal form ``h`` of a matrix ``A`` together with a witness.

    ``transform @ A == h`` and the rows of ``h`` span the row span of ``A``.
    ``pivots`` lists ``(row, col, value)`` for every row of ``h``; every
    row of ``h`` is nonzero.
    """

    h: MatZn
    transform: MatZn
    pivots: tuple[tuple[int, int, int], ...]

    def rows_from(self, col: int) -> list[int]:
        """Indices of the rows whose leading column is ``>= col``."""
        return [r for r, c, _ in self.pivots if c >= col]

    def reduce(self, v: Sequence[int]) -> tuple[np.ndarray, np.ndarray]:
        """Greedy reduction of a row vector against ``h``.

        Returns ``(coefficients, residual)``; ``v`` is in the row span exactly
        when the residual is zero (this is what the Howell property buys).
        """
        n = self.h.n
        h = self.h.a
        v = np.array(v, dtype=np.int64) % n
        coeffs = np.zeros(h.shape[0], dtype=np.int64)
        for r, c, p in self.pivots:
            x = int(v[c])
            if x % p:
                break
            if x:
                q = x // p
                coeffs[r] = q
                v = (v - q * h[r]) % n
        return coeffs, v


def _howell_arrays(
    a: np.ndarray, n: int, track: bool = True
) -> tuple[np.ndarray, np.ndarray | None, list[tuple[int, int, int]]]:
    m, k = a.shape
    # every pivot appends at most one annihilator row
    W = np.zeros((m + k, k), dtype=np.int64)
    W[:m] = a % n
    U = np.zeros((m + k, m), dtype=np.int64) if track else None
    if track:
        U[:m] = np.eye(m, dtype=np.int64)
    live = m
    r = 0
    for c in range(k):
        if r >= live:
            break
        col = W[r:live, c]
        nz = np.flatnonzero(col)
        if nz.size == 0:
            continue
        vals = col[nz]
        gs = np.gcd(vals, n)
        best = int(nz[np.argmin(gs)])
        gmin = int(gs.min())
        if best:
            W[[r, r + best]] = W[[r + best, r]]
            if track:
                U[[r, r + best]] = U[[r + best, r]]
        if np.all(vals % gmin == 0):
            unit = unit_normalizer(int(W[r, c]), n)
            if unit != 1:
                W[r] = (W[r] * unit) % n
                if track:
                    U[r] = (U[r] * unit) % n
            p = int(W[r, c])
            q = W[r + 1:live, c] // p
            if q.any():
                W[r + 1:live] = (W[r + 1:live] - q[:, None] * W[r]) % n
                if track:
                    U[r + 1:live] = (U[r + 1:live] - q[:, None] * U[r]) % n
        else:
            for i in range(r + 1, live):
                b = int(W[i, c])
                if b == 0:
                    continue
                x = int(W[r, c])
                g, s, t = xgcd(x, b)
                u, v = -b // g, x // g
                W[r], W[i] = (s * W[r] + t * W[i]) % n, (u * W[r] + v * W[i]) % n
                if track:
                    U[r], U[i] = (s * U[r] + t * U[i]) % n, (u * U[r] + v * U[i]) % n
            unit = unit_normalizer(int(W[r, c]), n)
            if unit != 1:
                W[r] = (W[r] * unit) % n
                if track:
                    U[r] = (U[r] * unit) % n
            p = int(W[r, c])
        if r:
            q = W[:r, c] // p
            if q.any():
                W[:r] = (W[:r] - q[:, None] * W[r]) % n
                if track:
                    U[:r] = (U[:r] - q[:, None] * U[r]) % n
        # Howell property: (n/p) * row must stay reachable from the rows below
        ann_row = (W[r] * (n // p)) % n
        if ann_row.any():
            W[live] = ann_row
            if track:
                U[live] = (U[r] * (n // p)) % n
            live += 1
        r += 1
    keep = np.flatnonzero(W[:live].any(axis=1))
    h = W[keep]
    t = U[keep] if track else None
    pivots = []
    for row in range(h.shape[0]):
        c = int(np.flatnonzero(h[row])[0])
        pivots.append((row, c, int(h[row, c])))
    return h, t, pivots


def howell_form(a: MatZn) -> HowellForm:
    """Howell normal form of ``a``.

    Two matrices with the same row span over ``Z/n`` get identical ``h``.

    >>> howell_form(MatZn(4, [[2]])).pivots
    ((0, 0, 2),)
    """
    n = a.n
    h, t, pivots = _howell_arrays(a.a, n)
    return HowellForm(MatZn._wrap(a.modulus, h), MatZn._wrap(a.modulus, t), tuple(pivots))


def solve_linear(a: MatZn, b: Sequence[int]) -> np.ndarray | None:
    """One solution ``x`` of ``a @ x == b`` over ``Z/n``, or ``None``.

    ``None`` is returned exactly when the system has no solution.
    """
    b = np.asarray(b, dtype=np.int64).reshape(-1)
    if b.shape[0] != a.rows:
        raise ValueError(f"right-hand side has length {b.shape[0]}, expected {a.rows}")
    n = a.n
    b = b % n
    if a.cols == 0:
        return np.zeros(0, dtype=np.int64) if not b.any() else None
    hf = howell_form(a.T)
    coeffs, residual = hf.reduce(b)
    if residual.any():
        return None
    return (coeffs @ hf.transform.a) % n


def kernel_basis(a: MatZn) -> MatZn:
    """Rows generating ``{x : a @ x == 0}``, in Howell normal form."""
    m, k = a.shape
    n = a.n
    aug = np.concatenate([a.a.T, np.eye(k, dtype=np.int64)], axis=1)
    h, _, pivots = _howell_arrays(aug, n, track=False)
    rows = [r for r, c, _ in pivots if c >= m]
    return MatZn._wrap(a.modulus, h[rows, m:].reshape(len(rows), k))


def left_obstruction(a: MatZn, b: Sequence[int]) -> np.ndarray | None:
    """A functional ``y`` with ``y @ a == 0`` and ``y @ b != 0``.

    Such a ``y`` proves ``a @ x == b`` unsolvable.  Over ``Z/n`` one exists
    whenever the system is unsolvable (``Z/n`` is self-injective), so
    ``None`` means the system is solvable.
    """
    b = np.asarray(b, dtype=np.int64).reshape(-1) % a.n
    if b.shape[0] != a.rows:
        raise ValueError(f"right-hand side has length {b.shape[0]}, expected {a.rows}")
    left = kernel_basis(a.T)
    for y in left.a:
        if int(y @ b) % a.n:
            return y.copy()
    return None


@dataclass(frozen=True)
class InvariantFactors:
    """A finite ``Z/n``-module ``Z/d1 + ... + Z/dk`` with ``d1 | d2 | ... | dk``."""

    modulus: Modulus
    factors: tuple[int, ...]

    def __post_init__(self):
        n = self.modulus.n
        fs = tuple(int(d) for d in self.factors)
        object.__setattr__(self, "factors", fs)
        for d in fs:
            if d <= 1 or n % d:
                raise ValueError(f"invalid invariant factor {d} over Z/{n}")
        for d, e in zip(fs, fs[1:]):
            if e % d:
                raise ValueError(f"factors {fs} do not form a divisibility chain")

    @property
    def order(self) -> int:
        return prod(self.factors)

    def is_zero(self) -> bool:
        return not self.factors

    def __len__(self) -> int:
        return len(self.factors)

    def tolist(self) -> list[int]:
        return list(self.factors)


def smith_diagonal(rows: Iterable[Sequence[int]], ncols: int) -> list[int]:
    """Nonzero diagonal of the integer Smith normal form (no transforms)."""
    A = [[int(x) for x in r] for r in rows]
    m = len(A)
    diag: list[int] = []
    t = 0
    while t < min(m, ncols):
        entries = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, ncols) if A[i][j]]
        if not entries:
            break
        _, pi, pj = min(entries)
        A[t], A[pi] = A[pi], A[t]
        for row in A:
            row[t], row[pj] = row[pj], row[t]
        while True:
            p = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // p
                    A[i] = [x - q * y for x, y in zip(A[i], A[t])]
                    if A[i][t]:
                        dirty = True
            for j in range(t + 1, ncols):
                if A[t][j]:
                    q = A[t][j] // p
                    for row in A:
                        row[j] -= q * row[t]
                    if A[t][j]:
                        dirty = True
            if not dirty:
                bad = next(
                    (i for i in range(t + 1, m) for j in range(t + 1, ncols) if A[i][j] % p),
                    None,
                )
                if bad is None:
                    break
                A[t] = [x + y for x, y in zip(A[t], A[bad])]
            # move the smallest nonzero entry of row/column t to the corner
            cand = [(abs(A[i][t]), i, t) for i in range(t, m) if A[i][t]]
            cand += [(abs(A[t][j]), t, j) for j in range(t, ncols) if A[t][j]]
            _, pi, pj = min(cand)
            A[t], A[pi] = A[pi], A[t]
            for row in A:
                row[t], row[pj] = row[pj], row[t]
        diag.append(abs(A[t][t]))
        t += 1
    return diag


def module_structure(generators: int, relations: MatZn) -> InvariantFactors:
    """Invariant factors of ``(Z/n)^k / rowspan(relations)``.

    The relation matrix is lifted to the integers, ``n * I_k`` is appended
    and the integer Smith normal form is read off.
    """
    k = int(generators)
    if relations.cols != k:
        raise ValueError(f"relations have {relations.cols} columns, expected {k}")
    n = relations.n
    lifted = [list(map(int, r)) for r in relations.a] + [
        [n if i == j else 0 for j in range(k)] for i in range(k)
    ]
    diag = smith_diagonal(lifted, k)
    return InvariantFactors(relations.modulus, tuple(d for d in diag if d != 1))


def is_projective(m: InvariantFactors) -> bool:
    """Whether ``m`` is a projective ``Z/n``-module.

    ``Z/d`` is projective exactly when ``d`` is a unitary divisor of ``n``.
    """
    n = m.modulus.n
    return all(gcd(d, n // d) == 1 for d in m.factors)
