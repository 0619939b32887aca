"""Bounded chain complexes of free ``Z/n``-modules and maps between them.

Conventions (fixed once, checked by ``d @ d == 0`` everywhere):

* homological grading, ``d_i : X_i -> X_{i-1}`` is a ``rank(i-1) x rank(i)``
  matrix acting on column vectors;
* ``(Sigma^k X)_i = X_{i-k}`` with differential ``(-1)^k d``;
* ``cone(f)_i = X_{i-1} + Y_i`` with ``d(x, y) = (-d x, f x + d y)``;
* ``(X (x) Y)_m`` is the sum of ``X_p (x) Y_q`` over ``p + q = m`` in
  order of *descending* ``p``, bases ordered row-major (Kronecker), and
  ``d(x (x) y) = dx (x) y + (-1)^p x (x) dy``;
* a degree-``k`` map has components ``f_i : X_i -> Y_{i+k}`` and satisfies
  ``d f_i = (-1)^k f_{i-1} d``.  Questions about it are answered for the
  degree-0 map ``Sigma^k X -> Y`` with the same components.

For a complex of free modules, ``pi_i X = [Sigma^i S, X] = H_i(X)``, so
"induces zero on homotopy" means "induces zero on homology" below.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd, prod
from typing import Iterable, Mapping, Sequence

import numpy as np

from .linalg import (
    InvariantFactors,
    MatZn,
    Modulus,
    kernel_basis,
    left_obstruction,
    module_structure,
    solve_linear,
)
from .rings import IdealZn, annihilator

__all__ = [
    "ChainComplex",
    "ChainMap",
    "Homotopy",
    "Obstruction",
    "Violation",
    "InvalidComplexError",
    "HomologyGroup",
    "HomologyData",
    "InducedMap",
    "Cone",
    "KoszulBundle",
    "sphere",
    "zero_complex",
    "validate",
    "homology",
    "induced_homology_map",
    "suspend",
    "cone",
    "direct_sum",
    "tensor",
    "dualize",
    "identity_map",
    "zero_map",
    "scalar_map",
    "compose",
    "homotopy_perturbation",
    "homotopy_system",
    "null_homotopy",
    "homotopy_obstruction",
    "is_contractible",
    "is_quasi_iso",
    "koszul",
    "koszul_contracts",
    "unit_composite",
]


@dataclass(frozen=True)
class Violation:
    """First broken invariant of a complex or map."""

    kind: str
    degree: int | None
    message: str

    def to_dict(self) -> dict:
        return {"kind": self.kind, "degree": self.degree, "message": self.message}


class InvalidComplexError(ValueError):
    def __init__(self, violation: Violation):
        super().__init__(violation.message)
        self.violation = violation


def _as_mat(modulus: Modulus, m, shape: tuple[int, int]) -> MatZn:
    if isinstance(m, MatZn):
        if m.modulus != modulus:
            raise ValueError(f"matrix over Z/{m.n} in a complex over Z/{modulus.n}")
        return m
    arr = np.array(m, dtype=np.int64)
    if arr.size == 0:
        arr = arr.reshape(shape if 0 in shape else (0, 0))
    return MatZn(modulus, arr)


class ChainComplex:
    """A bounded complex ``0 -> X_hi -> ... -> X_lo -> 0`` of free modules.

    Args:
        modulus: the coefficient ring ``Z/n``.
        lo: lowest degree of the window.
        ranks: free ranks for degrees ``lo, lo+1, ..., hi``.
        differentials: ``{i: d_i}`` for ``lo < i <= hi``; missing entries are
            zero.  Matrices may be ``MatZn`` or nested lists.
        check: run :func:`validate` and raise :class:`InvalidComplexError`.
    """

    __slots__ = ("modulus", "lo", "ranks", "_d", "_cache")

    def __init__(
        self,
        modulus: Modulus | int,
        lo: int,
        ranks: Sequence[int],
        differentials: Mapping[int, object] | None = None,
        check: bool = True,
    ):
        self.modulus = Modulus.of(modulus)
        self.lo = int(lo)
        self.ranks = tuple(int(r) for r in ranks)
        if any(r < 0 for r in self.ranks):
            raise ValueError(f"negative rank in {self.ranks}")
        d = {}
        for i, m in (differentials or {}).items():
            i = int(i)
            d[i] = _as_mat(self.modulus, m, (self.rank(i - 1), self.rank(i)))
        self._d = d
        self._cache: dict = {}
        if check:
            v = validate(self)
            if v is not None:
                raise InvalidComplexError(v)

    @property
    def n(self) -> int:
        return self.modulus.n

    @property
    def hi(self) -> int:
        return self.lo + len(self.ranks) - 1

    @property
    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    @property
    def total_rank(self) -> int:
        return sum(self.ranks)

    def rank(self, i: int) -> int:
        if self.lo <= i <= self.hi:
            return self.ranks[i - self.lo]
        return 0

    def d(self, i: int) -> MatZn:
        m = self._d.get(i)
        if m is None:
            return MatZn.zeros(self.modulus, self.rank(i - 1), self.rank(i))
        return m

    def differentials(self) -> dict[int, MatZn]:
        """Stored differentials that are not identically zero (or empty)."""
        return {i: self.d(i) for i in range(self.lo + 1, self.hi + 1)}

    def support(self) -> tuple[int, int] | None:
        nz = [i for i in self.degrees if self.rank(i)]
        return (nz[0], nz[-1]) if nz else None

    def trimmed(self) -> "ChainComplex":
        sup = self.support()
        if sup is None:
            return zero_complex(self.modulus)
        lo, hi = sup
        return ChainComplex(
            self.modulus,
            lo,
            [self.rank(i) for i in range(lo, hi + 1)],
            {i: self.d(i) for i in range(lo + 1, hi + 1)},
            check=False,
        )

    def same_as(self, other: "ChainComplex") -> bool:
        """Bit-for-bit equality including the declared degree window."""
        return (
            self.modulus == other.modulus
            and self.lo == other.lo
            and self.ranks == other.ranks
            and all(self.d(i) == other.d(i) for i in self.degrees)
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, ChainComplex):
            return NotImplemented
        return self.trimmed().same_as(other.trimmed())

    def __hash__(self):
        t = self.trimmed()
        return hash((t.n, t.lo, t.ranks))

    def __repr__(self) -> str:
        return f"ChainComplex(n={self.n}, lo={self.lo}, ranks={list(self.ranks)})"


def sphere(modulus: Modulus | int, degree: int = 0) -> ChainComplex:
    """``Sigma^degree S``: the ring in a single degree."""
    return ChainComplex(modulus, degree, [1], check=False)


def zero_complex(modulus: Modulus | int) -> ChainComplex:
    return ChainComplex(modulus, 0, [], check=False)


class ChainMap:
    """A degree-``k`` map ``f_i : X_i -> Y_{i+k}`` between complexes."""

    __slots__ = ("source", "target", "degree", "_f")

    def __init__(
        self,
        source: ChainComplex,
        target: ChainComplex,
        components: Mapping[int, object] | None = None,
        degree: int = 0,
        check: bool = True,
    ):
        if source.modulus != target.modulus:
            raise ValueError("source and target have different moduli")
        self.source = source
        self.target = target
        self.degree = int(degree)
        f = {}
        for i, m in (components or {}).items():
            i = int(i)
            f[i] = _as_mat(source.modulus, m, (target.rank(i + self.degree), source.rank(i)))
        self._f = f
        if check:
            v = validate(self)
            if v is not None:
                raise InvalidComplexError(v)

    @property
    def modulus(self) -> Modulus:
        return self.source.modulus

    @property
    def n(self) -> int:
        return self.source.n

    def component(self, i: int) -> MatZn:
        m = self._f.get(i)
        if m is None:
            return MatZn.zeros(self.modulus, self.target.rank(i + self.degree), self.source.rank(i))
        return m

    def components(self) -> dict[int, MatZn]:
        """Nonzero components only."""
        return {i: m for i in self.source.degrees if not (m := self.component(i)).is_zero()}

    def is_zero(self) -> bool:
        return all(self.component(i).is_zero() for i in self.source.degrees)

    def __add__(self, other: "ChainMap") -> "ChainMap":
        _same_shape(self, other)
        return ChainMap(
            self.source,
            self.target,
            {i: self.component(i) + other.component(i) for i in self.source.degrees},
            self.degree,
            check=False,
        )

    def __sub__(self, other: "ChainMap") -> "ChainMap":
        return self + other * -1

    def __mul__(self, r: int) -> "ChainMap":
        return ChainMap(
            self.source,
            self.target,
            {i: self.component(i) * r for i in self.source.degrees},
            self.degree,
            check=False,
        )

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, ChainMap):
            return NotImplemented
        return (
            self.degree == other.degree
            and self.source == other.source
            and self.target == other.target
            and all(self.component(i) == other.component(i) for i in self.source.degrees)
        )

    __hash__ = None

    def __repr__(self) -> str:
        comps = {i: m.tolist() for i, m in self.components().items()}
        return f"ChainMap(degree={self.degree}, {comps}, {self.source!r} -> {self.target!r})"


def _same_shape(f: ChainMap, g: ChainMap):
    if f.degree != g.degree or not f.source.same_as(g.source) or not f.target.same_as(g.target):
        raise ValueError("maps have different sources, targets or degrees")


def validate(obj: ChainComplex | ChainMap) -> Violation | None:
    """Check every structural invariant; return the first violation or ``None``."""
    if isinstance(obj, ChainComplex):
        return _validate_complex(obj)
    if isinstance(obj, ChainMap):
        return _validate_map(obj)
    raise TypeError(f"cannot validate {type(obj).__name__}")


def _validate_complex(x: ChainComplex) -> Violation | None:
    for i in sorted(x._d):
        if not (x.lo < i <= x.hi) and not x._d[i].is_zero() and x._d[i].a.size:
            return Violation("degree", i, f"differential d_{i} lies outside the window [{x.lo}, {x.hi}]")
    for i in range(x.lo, x.hi + 2):
        m = x.d(i)
        want = (x.rank(i - 1), x.rank(i))
        if m.shape != want and not (m.a.size == 0 and 0 in want):
            return Violation("shape", i, f"d_{i} has shape {m.shape}, expected {want}")
    for i in range(x.lo + 2, x.hi + 1):
        if not (x.d(i - 1) @ x.d(i)).is_zero():
            return Violation("d_squared", i, f"d_{i - 1} d_{i} != 0 over Z/{x.n}")
    return None


def _validate_map(f: ChainMap) -> Violation | None:
    for v in (validate(f.source), validate(f.target)):
        if v is not None:
            return v
    k = f.degree
    for i in sorted(f._f):
        want = (f.target.rank(i + k), f.source.rank(i))
        m = f._f[i]
        if m.shape != want and not (m.a.size == 0 and 0 in want):
            return Violation("shape", i, f"f_{i} has shape {m.shape}, expected {want}")
    sign = -1 if k % 2 else 1
    lo = min(f.source.lo, f.target.lo - k)
    hi = max(f.source.hi, f.target.hi - k) + 1
    for i in range(lo, hi + 1):
        lhs = f.target.d(i + k) @ f.component(i)
        rhs = (f.component(i - 1) @ f.source.d(i)) * sign
        if lhs != rhs:
            return Violation("chain_condition", i, f"d f_{i} != (-1)^{k} f_{i - 1} d")
    return None


# --------------------------------------------------------------------------
# homology


@dataclass(frozen=True)
class HomologyGroup:
    """``H_i`` presented by cycle generators modulo relations.

    ``cycles`` has one column per generator; ``relations`` has one row per
    relation among those generators (kernel relations and boundaries).
    """

    degree: int
    factors: InvariantFactors
    cycles: MatZn
    relations: MatZn

    @property
    def generators(self) -> int:
        return self.cycles.cols

    def is_zero(self) -> bool:
        return self.factors.is_zero()


@dataclass(frozen=True)
class HomologyData:
    complex: ChainComplex
    groups: dict[int, HomologyGroup]

    def __getitem__(self, i: int) -> HomologyGroup:
        return self.groups[i]

    def factors(self, i: int) -> list[int]:
        g = self.groups.get(i)
        return g.factors.tolist() if g is not None else []

    def as_dict(self) -> dict[int, list[int]]:
        """Invariant factors of the nonzero groups."""
        return {i: g.factors.tolist() for i, g in sorted(self.groups.items()) if not g.is_zero()}

    def is_zero(self) -> bool:
        return all(g.is_zero() for g in self.groups.values())

    def order(self, i: int) -> int:
        g = self.groups.get(i)
        return g.factors.order if g is not None else 1


def _homology_group(x: ChainComplex, i: int) -> HomologyGroup:
    mod = x.modulus
    z = kernel_basis(x.d(i))
    cycles = z.T
    c = cycles.cols
    rels = [r for r in kernel_basis(cycles).a]
    for col in x.d(i + 1).a.T:
        y = solve_linear(cycles, col)
        if y is None:
            raise AssertionError(f"boundary in degree {i} is not a cycle")
        rels.append(y)
    relations = MatZn(mod, np.array(rels, dtype=np.int64).reshape(len(rels), c))
    return HomologyGroup(i, module_structure(c, relations), cycles, relations)


def homology(x: ChainComplex) -> HomologyData:
    """``H_i = ker d_i / im d_{i+1}`` for every degree of the window."""
    cached = x._cache.get("homology")
    if cached is None:
        cached = HomologyData(x, {i: _homology_group(x, i) for i in x.degrees})
        x._cache["homology"] = cached
    return cached


@dataclass(frozen=True)
class InducedMap:
    """``H_i(f)`` in the chosen cycle bases.

    ``matrices[i]`` maps source-generator coordinates to target-generator
    coordinates.  ``witnesses[i]`` holds, for each source generator ``c``, a
    chain ``z`` with ``d z = f(c)`` when the induced map vanishes in degree
    ``i`` (else ``None``).
    """

    map: ChainMap
    matrices: dict[int, MatZn]
    zero: dict[int, bool]
    witnesses: dict[int, list[np.ndarray] | None]

    def is_zero(self) -> bool:
        return all(self.zero.values())


def _degree_zero(f: ChainMap) -> ChainMap:
    if f.degree == 0:
        return f
    src = suspend(f.source, f.degree)
    comps = {i + f.degree: f.component(i) for i in f.source.degrees}
    return ChainMap(src, f.target, comps, 0, check=False)


def induced_homology_map(f: ChainMap) -> InducedMap:
    """Induced map on homology (degree-k maps are first re-indexed to degree 0)."""
    f = _degree_zero(f)
    hx, hy = homology(f.source), homology(f.target)
    mats, zero, wits = {}, {}, {}
    for i in f.source.degrees:
        gx = hx[i]
        images = (f.component(i) @ gx.cycles).a
        gy = hy.groups.get(i)
        cy = gy.cycles if gy is not None else MatZn.zeros(f.modulus, 0, 0)
        cols = []
        for col in images.T:
            y = solve_linear(cy, col) if cy.rows else np.zeros(0, dtype=np.int64)
            if y is None:
                raise AssertionError(f"image of a cycle in degree {i} is not a cycle")
            cols.append(y)
        mats[i] = MatZn(f.modulus, np.array(cols, dtype=np.int64).reshape(len(cols), cy.cols).T)
        dy = f.target.d(i + 1)
        ws = []
        for col in images.T:
            w = solve_linear(dy, col)
            if w is None:
                ws = None
                break
            ws.append(w)
        zero[i] = ws is not None
        wits[i] = ws
    return InducedMap(f, mats, zero, wits)


# --------------------------------------------------------------------------
# constructions


def _window(*spans: tuple[int, int] | None) -> tuple[int, int] | None:
    spans = [s for s in spans if s is not None and s[0] <= s[1]]
    if not spans:
        return None
    return min(s[0] for s in spans), max(s[1] for s in spans)


def _span(x: ChainComplex, shift: int = 0) -> tuple[int, int] | None:
    if not x.ranks:
        return None
    return x.lo + shift, x.hi + shift


def suspend(x: ChainComplex, k: int = 1) -> ChainComplex:
    """``Sigma^k X``: shift up by ``k`` and multiply ``d`` by ``(-1)^k``."""
    sign = -1 if k % 2 else 1
    diffs = {i + k: x.d(i) * sign for i in range(x.lo + 1, x.hi + 1)}
    return ChainComplex(x.modulus, x.lo + k, x.ranks, diffs, check=False)


@dataclass(frozen=True)
class Cone:
    """Mapping cone with its inclusion ``Y -> cone`` and projection ``cone -> Sigma X``."""

    complex: ChainComplex
    inclusion: ChainMap
    projection: ChainMap


def _block(rows: Sequence[int], cols: Sequence[int], blocks: Mapping[tuple[int, int], np.ndarray]) -> np.ndarray:
    out = np.zeros((sum(rows), sum(cols)), dtype=np.int64)
    ro = np.concatenate([[0], np.cumsum(rows)]).astype(int)
    co = np.concatenate([[0], np.cumsum(cols)]).astype(int)
    for (r, c), b in blocks.items():
        out[ro[r]:ro[r + 1], co[c]:co[c + 1]] = b
    return out


def cone(f: ChainMap) -> Cone:
    """Mapping cone of a chain map (degree-k maps are re-indexed first)."""
    f = _degree_zero(f)
    x, y = f.source, f.target
    mod = f.modulus
    n = mod.n
    win = _window(_span(x, 1), _span(y))
    if win is None:
        z = zero_complex(mod)
        return Cone(z, ChainMap(y, z, check=False), ChainMap(z, suspend(x), check=False))
    lo, hi = win
    ranks = [x.rank(i - 1) + y.rank(i) for i in range(lo, hi + 1)]
    diffs = {}
    for i in range(lo + 1, hi + 1):
        rows = [x.rank(i - 2), y.rank(i - 1)]
        cols = [x.rank(i - 1), y.rank(i)]
        blocks = {
            (0, 0): (-x.d(i - 1).a) % n,
            (1, 0): f.component(i - 1).a,
            (1, 1): y.d(i).a,
        }
        diffs[i] = MatZn._wrap(mod, _block(rows, cols, blocks))
    c = ChainComplex(mod, lo, ranks, diffs, check=False)
    sx = suspend(x)
    inc, proj = {}, {}
    for i in range(lo, hi + 1):
        xr, yr = x.rank(i - 1), y.rank(i)
        if yr:
            inc[i] = MatZn._wrap(mod, np.vstack([np.zeros((xr, yr), dtype=np.int64), np.eye(yr, dtype=np.int64)]))
        if xr:
            proj[i] = MatZn._wrap(mod, np.hstack([np.eye(xr, dtype=np.int64), np.zeros((xr, yr), dtype=np.int64)]))
    return Cone(c, ChainMap(y, c, inc, check=False), ChainMap(c, sx, proj, check=False))


def direct_sum(x: ChainComplex, y: ChainComplex) -> ChainComplex:
    if x.modulus != y.modulus:
        raise ValueError("direct sum of complexes over different rings")
    win = _window(_span(x), _span(y))
    if win is None:
        return zero_complex(x.modulus)
    lo, hi = win
    ranks = [x.rank(i) + y.rank(i) for i in range(lo, hi + 1)]
    diffs = {}
    for i in range(lo + 1, hi + 1):
        rows = [x.rank(i - 1), y.rank(i - 1)]
        cols = [x.rank(i), y.rank(i)]
        diffs[i] = MatZn._wrap(x.modulus, _block(rows, cols, {(0, 0): x.d(i).a, (1, 1): y.d(i).a}))
    return ChainComplex(x.modulus, lo, ranks, diffs, check=False)


def _tensor_blocks(x: ChainComplex, y: ChainComplex, m: int) -> list[tuple[int, int]]:
    """``(p, q)`` pairs of degree ``m`` in order of descending ``p``."""
    return [(p, m - p) for p in range(x.hi, x.lo - 1, -1) if y.lo <= m - p <= y.hi]


def tensor(x: ChainComplex, y: ChainComplex) -> ChainComplex:
    """Tensor product with the Koszul sign ``(-1)^p`` on ``x (x) dy``."""
    if x.modulus != y.modulus:
        raise ValueError("tensor product of complexes over different rings")
    mod = x.modulus
    n = mod.n
    if not x.ranks or not y.ranks:
        return zero_complex(mod)
    lo, hi = x.lo + y.lo, x.hi + y.hi
    ranks = [sum(x.rank(p) * y.rank(q) for p, q in _tensor_blocks(x, y, m)) for m in range(lo, hi + 1)]
    diffs = {}
    for m in range(lo + 1, hi + 1):
        src = _tensor_blocks(x, y, m)
        dst = _tensor_blocks(x, y, m - 1)
        idx = {pq: k for k, pq in enumerate(dst)}
        blocks = {}
        for c, (p, q) in enumerate(src):
            if (p - 1, q) in idx:
                blocks[(idx[(p - 1, q)], c)] = np.kron(x.d(p).a, np.eye(y.rank(q), dtype=np.int64))
            if (p, q - 1) in idx:
                sign = -1 if p % 2 else 1
                blocks[(idx[(p, q - 1)], c)] = sign * np.kron(np.eye(x.rank(p), dtype=np.int64), y.d(q).a)
        rows = [x.rank(p) * y.rank(q) for p, q in dst]
        cols = [x.rank(p) * y.rank(q) for p, q in src]
        diffs[m] = MatZn._wrap(mod, _block(rows, cols, blocks) % n)
    return ChainComplex(mod, lo, ranks, diffs, check=False)


def dualize(x: ChainComplex) -> ChainComplex:
    """``DX = Hom(X, R)``: ``(DX)_i = (X_{-i})^*`` with ``d^D_i = (d_{1-i})^T``.

    With this sign choice ``D(DX) == X`` and ``D(Sigma X) == Sigma^-1 DX``
    hold on the nose.
    """
    if not x.ranks:
        return zero_complex(x.modulus)
    ranks = list(reversed(x.ranks))
    diffs = {i: x.d(1 - i).T for i in range(-x.hi + 1, -x.lo + 1)}
    return ChainComplex(x.modulus, -x.hi, ranks, diffs, check=False)


# --------------------------------------------------------------------------
# maps


def identity_map(x: ChainComplex) -> ChainMap:
    return scalar_map(x, 1)


def zero_map(x: ChainComplex, y: ChainComplex, degree: int = 0) -> ChainMap:
    return ChainMap(x, y, {}, degree, check=False)


def scalar_map(x: ChainComplex, r: int) -> ChainMap:
    """Multiplication by ``r`` in every degree."""
    comps = {i: MatZn.scalar(x.modulus, x.rank(i), r) for i in x.degrees}
    return ChainMap(x, x, comps, 0, check=False)


def compose(g: ChainMap, f: ChainMap) -> ChainMap:
    """``g . f`` (apply ``f`` first)."""
    if not f.target.same_as(g.source):
        if f.target != g.source:
            raise ValueError("cannot compose: target of f is not the source of g")
    comps = {i: g.component(i + f.degree) @ f.component(i) for i in f.source.degrees}
    return ChainMap(f.source, g.target, comps, f.degree + g.degree, check=False)


def homotopy_perturbation(
    x: ChainComplex, y: ChainComplex, s: Mapping[int, MatZn | np.ndarray]
) -> ChainMap:
    """The null-homotopic map ``d s + s d`` for arbitrary ``s_i : X_i -> Y_{i+1}``."""
    mod = x.modulus
    comp = {i: _as_mat(mod, m, (y.rank(i + 1), x.rank(i))) for i, m in s.items()}

    def si(i):
        return comp.get(i) or MatZn.zeros(mod, y.rank(i + 1), x.rank(i))

    out = {i: y.d(i + 1) @ si(i) + si(i - 1) @ x.d(i) for i in x.degrees}
    return ChainMap(x, y, out, 0, check=False)


# --------------------------------------------------------------------------
# null-homotopy decision


@dataclass(frozen=True)
class Homotopy:
    """Certificate ``f_i = d s_i + s_{i-1} d`` for a degree-0 map ``f``."""

    map: ChainMap
    components: dict[int, MatZn]

    def s(self, i: int) -> MatZn:
        m = self.components.get(i)
        if m is None:
            return MatZn.zeros(self.map.modulus, self.map.target.rank(i + 1), self.map.source.rank(i))
        return m

    def verify(self) -> bool:
        f = self.map
        x, y = f.source, f.target
        for i in x.degrees:
            if f.component(i) != y.d(i + 1) @ self.s(i) + self.s(i - 1) @ x.d(i):
                return False
        return True


@dataclass(frozen=True)
class Obstruction:
    """A functional on degree-0 maps that kills every ``d s + s d`` but not ``f``.

    ``pairing[i]`` has the shape of ``f_i``; the functional is
    ``sum_i sum(pairing[i] * g_i)``.  Its existence proves ``f`` is not
    null-homotopic without trusting any solver.
    """

    map: ChainMap
    pairing: dict[int, MatZn]

    def y(self, i: int) -> MatZn:
        m = self.pairing.get(i)
        if m is None:
            return MatZn.zeros(self.map.modulus, self.map.target.rank(i), self.map.source.rank(i))
        return m

    def value(self) -> int:
        f = self.map
        return int(sum(int((self.y(i).a * f.component(i).a).sum()) for i in f.source.degrees)) % f.n

    def verify(self) -> bool:
        f = self.map
        x, y = f.source, f.target
        if self.value() == 0:
            return False
        for i in range(x.lo - 1, x.hi + 1):
            lhs = y.d(i + 1).T @ self.y(i) + self.y(i + 1) @ x.d(i + 1).T
            if not lhs.is_zero():
                return False
        return True


@dataclass(frozen=True)
class _Layout:
    s_blocks: list[tuple[int, int, int, int]]  # (degree, rows, cols, offset)
    eq_blocks: list[tuple[int, int, int, int]]
    unknowns: int
    equations: int


def homotopy_system(f: ChainMap) -> tuple[MatZn, np.ndarray, _Layout]:
    """Linear system ``M vec(s) = vec(f)`` (row-major vec) for a degree-0 map."""
    if f.degree != 0:
        raise ValueError("homotopy_system expects a degree-0 map")
    x, y = f.source, f.target
    s_blocks, eq_blocks = [], []
    off = 0
    for i in x.degrees:
        r, c = y.rank(i + 1), x.rank(i)
        if r and c:
            s_blocks.append((i, r, c, off))
            off += r * c
    eqo = 0
    for i in x.degrees:
        r, c = y.rank(i), x.rank(i)
        if r and c:
            eq_blocks.append((i, r, c, eqo))
            eqo += r * c
    M = np.zeros((eqo, off), dtype=np.int64)
    rhs = np.zeros(eqo, dtype=np.int64)
    s_at = {b[0]: b for b in s_blocks}
    for i, r, c, eo in eq_blocks:
        rhs[eo:eo + r * c] = f.component(i).a.reshape(-1)
        if i in s_at:
            _, sr, sc, so = s_at[i]
            M[eo:eo + r * c, so:so + sr * sc] += np.kron(y.d(i + 1).a, np.eye(c, dtype=np.int64))
        if i - 1 in s_at:
            _, sr, sc, so = s_at[i - 1]
            M[eo:eo + r * c, so:so + sr * sc] += np.kron(np.eye(r, dtype=np.int64), x.d(i).a.T)
    M %= f.n
    return MatZn._wrap(f.modulus, M), rhs, _Layout(s_blocks, eq_blocks, off, eqo)


def null_homotopy(f: ChainMap) -> Homotopy | None:
    """A verified null-homotopy of ``f``, or ``None`` if ``f`` is not null-homotopic.

    The decision is a single linear system over ``Z/n`` in all entries of
    all ``s_i``, so it is exact.
    """
    f = _degree_zero(f)
    M, rhs, layout = homotopy_system(f)
    sol = solve_linear(M, rhs)
    if sol is None:
        return None
    comps = {
        i: MatZn(f.modulus, sol[o:o + r * c].reshape(r, c))
        for i, r, c, o in layout.s_blocks
    }
    h = Homotopy(f, comps)
    if not h.verify():
        raise AssertionError("solver returned an invalid homotopy")
    return h


def homotopy_obstruction(f: ChainMap) -> Obstruction | None:
    """Dual certificate that ``f`` is not null-homotopic (``None`` if it is)."""
    f = _degree_zero(f)
    M, rhs, layout = homotopy_system(f)
    yv = left_obstruction(M, rhs)
    if yv is None:
        return None
    pairing = {
        i: MatZn(f.modulus, yv[o:o + r * c].reshape(r, c)) for i, r, c, o in layout.eq_blocks
    }
    ob = Obstruction(f, pairing)
    if not ob.verify():
        raise AssertionError("left kernel vector does not certify the obstruction")
    return ob


def is_contractible(x: ChainComplex) -> Homotopy | None:
    """A contraction ``1 = d s + s d`` of ``x``, or ``None``."""
    return null_homotopy(identity_map(x))


def is_quasi_iso(f: ChainMap) -> bool:
    """Whether ``f`` induces isomorphisms on all homology groups.

    Per degree: equal invariant factors (so equal finite orders) and a
    surjective induced map, decided by solving for preimages.
    """
    f = _degree_zero(f)
    hx, hy = homology(f.source), homology(f.target)
    win = _window(_span(f.source), _span(f.target))
    if win is None:
        return True
    for i in range(win[0], win[1] + 1):
        fx = hx.factors(i)
        fy = hy.factors(i)
        if fx != fy:
            return False
        if not fy:
            continue
        gx, gy = hx[i], hy[i]
        images = f.component(i) @ gx.cycles
        span = MatZn._wrap(f.modulus, np.hstack([images.a, f.target.d(i + 1).a]))
        for col in gy.cycles.a.T:
            if solve_linear(span, col) is None:
                return False
    return True


# --------------------------------------------------------------------------
# Koszul objects S/I


@dataclass(frozen=True)
class KoszulBundle:
    """``S/I = S/x_1 (x) ... (x) S/x_k`` with ``eta: S -> S/I`` and ``delta: S/I -> Sigma^k S``."""

    complex: ChainComplex
    unit: ChainMap
    counit: ChainMap
    generators: tuple[int, ...]

    @property
    def ideal(self) -> IdealZn:
        return IdealZn.generated_by(self.complex.modulus, self.generators)

    @property
    def k(self) -> int:
        return len(self.generators)


def koszul(modulus: Modulus | int, generators: Iterable[int]) -> KoszulBundle:
    """Koszul object of a generator list (the list, not the ideal, determines it)."""
    mod = Modulus.of(modulus)
    gens = tuple(int(x) % mod.n for x in generators)
    if not gens:
        raise ValueError("at least one generator is required")
    s = sphere(mod)
    pieces = [cone(scalar_map(s, x)).complex for x in gens]
    c = pieces[0]
    for p in pieces[1:]:
        c = tensor(c, p)
    k = len(gens)
    unit = ChainMap(s, c, {0: MatZn.identity(mod, 1)}, check=False)
    counit = ChainMap(c, sphere(mod, k), {k: MatZn.identity(mod, 1)}, check=False)
    return KoszulBundle(c, unit, counit, gens)


def unit_composite(bundle: KoszulBundle, z: int) -> ChainMap:
    """``eta . z : S -> S/I``."""
    s = bundle.unit.source
    return compose(bundle.unit, scalar_map(s, z))


def koszul_contracts(bundle: KoszulBundle) -> dict[str, bool]:
    """Check the homology contracts of ``eta`` and ``delta``.

    * ``H_l(S/I) = 0`` for ``l < 0`` and ``l > k``;
    * ``H_0(S/I) = Z/n / I`` and ``eta`` induces the quotient map;
    * ``delta`` maps ``H_k(S/I)`` isomorphically onto ``ann(I)``.
    """
    c = bundle.complex
    mod = c.modulus
    n = mod.n
    k = bundle.k
    ideal = bundle.ideal
    g = ideal.g
    h = homology(c)
    out: dict[str, bool] = {}
    out["negative_homology_vanishes"] = all(h.groups[i].is_zero() for i in c.degrees if i < 0)
    out["homology_above_top_vanishes"] = all(h.groups[i].is_zero() for i in c.degrees if i > k)
    out["h0_is_quotient"] = h.factors(0) == ([g] if g > 1 else [])

    # eta(1) generates H_0 and is killed exactly by I (orders match)
    unit_ok = out["h0_is_quotient"]
    if unit_ok and g > 1:
        e0 = bundle.unit.component(0).a[:, 0]
        span = MatZn._wrap(mod, np.hstack([e0.reshape(-1, 1), c.d(1).a]))
        surjective = all(solve_linear(span, col) is not None for col in h[0].cycles.a.T)
        killed = solve_linear(c.d(1), (g * e0) % n) is not None
        unit_ok = surjective and killed
    out["unit_induces_quotient"] = unit_ok

    ann = annihilator(mod, ideal)
    top = h.groups.get(k)
    if top is None:
        out["top_homology_is_annihilator"] = ann.is_zero()
        out["counit_injective"] = True
    else:
        images = (bundle.counit.component(k) @ top.cycles).a.reshape(-1)
        image_g = n
        for v in images:
            image_g = gcd(image_g, int(v))
        out["top_homology_is_annihilator"] = IdealZn(mod, image_g) == ann
        out["counit_injective"] = top.factors.order == ann.size
    return out
