"""Generating-hypothesis experiments over ``Z/n``.

A counterexample to the generating hypothesis is a chain map between
bounded complexes of free modules that is zero on homology but not
null-homotopic.  This module builds the canonical one for non-squarefree
``n``, searches seeded random families for others, and bundles the
structural checks around Koszul objects and quasi-isomorphisms.

Every random instance is drawn from its own stream
``SeedSequence([seed, index])`` so a search can be replayed instance by
instance and evaluated by several workers without changing the result.
"""

from __future__ import annotations

import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from math import gcd
from typing import Iterator, Literal

import numpy as np

from . import complexes as cx
from .complexes import ChainComplex, ChainMap, Homotopy, InducedMap, Obstruction
from .linalg import MatZn, Modulus, kernel_basis
from .rings import (
    IdealZn,
    RelativeReason,
    annihilator,
    double_annihilator_check,
    is_regular,
    relative_gh_predicate,
)

__all__ = [
    "DEFAULT_SEED",
    "SearchConfig",
    "Instance",
    "Witness",
    "CounterexampleReport",
    "SquarefreeModulusError",
    "canonical_counterexample",
    "annihilator_witness_map",
    "random_complex",
    "random_chain_map",
    "random_instance",
    "instance_stream",
    "gh_search",
    "target_sphere_search",
    "koszul_gh_suite",
    "quasi_iso_cone_suite",
    "theorem_suite",
]

DEFAULT_SEED = 20060101

Mode = Literal["general", "target_sphere"]


class SquarefreeModulusError(ValueError):
    """Raised when a counterexample is requested over a regular ring."""


@dataclass(frozen=True)
class SearchConfig:
    modulus: int
    seed: int = DEFAULT_SEED
    samples: int = 500
    max_degrees: int = 4
    max_rank: int = 3
    mode: Mode = "general"

    def __post_init__(self):
        object.__setattr__(self, "modulus", Modulus.of(self.modulus).n)
        if self.samples < 1:
            raise ValueError("samples must be >= 1")
        if self.max_degrees < 1:
            raise ValueError("max_degrees must be >= 1")
        if self.max_rank < 0:
            raise ValueError("max_rank must be >= 0")
        if self.mode not in ("general", "target_sphere"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")

    def to_dict(self) -> dict:
        return asdict(self)


# --------------------------------------------------------------------------
# witnesses and reports


@dataclass(frozen=True)
class Witness:
    """A map with zero induced homology and a proof that it is not null-homotopic.

    ``boundaries[i][j]`` is a chain ``z`` with ``d z = f(c_j)`` for the
    ``j``-th cycle generator ``c_j`` of ``H_i(source)``; ``obstruction`` is a
    dual functional separating ``f`` from all maps ``d s + s d``.
    """

    map: ChainMap
    boundaries: dict[int, list[np.ndarray]]
    obstruction: Obstruction

    @property
    def source(self) -> ChainComplex:
        return self.map.source

    @property
    def target(self) -> ChainComplex:
        return self.map.target

    def verify(self) -> bool:
        """Re-check everything from scratch.

        The homology side recomputes cycle generators and checks the stored
        boundary chains; the homotopy side checks the dual certificate by
        plain matrix products and, separately, re-runs the solver.
        """
        f = self.map
        if cx.validate(f) is not None:
            return False
        hx = cx.homology(f.source)
        for i in f.source.degrees:
            cycles = hx[i].cycles
            zs = self.boundaries.get(i, [])
            if len(zs) != cycles.cols:
                return False
            dy = f.target.d(i + 1)
            for j, z in enumerate(zs):
                lhs = (dy.a @ np.asarray(z, dtype=np.int64)) % f.n
                rhs = (f.component(i).a @ cycles.a[:, j]) % f.n
                if not np.array_equal(lhs, rhs):
                    return False
        if not cx.induced_homology_map(f).is_zero():
            return False
        if not self.obstruction.verify():
            return False
        return cx.null_homotopy(f) is None


def _witness(f: ChainMap, induced: InducedMap | None = None) -> Witness | None:
    induced = induced or cx.induced_homology_map(f)
    if not induced.is_zero():
        return None
    ob = cx.homotopy_obstruction(f)
    if ob is None:
        return None
    return Witness(f, {i: list(zs) for i, zs in induced.witnesses.items()}, ob)


@dataclass
class CounterexampleReport:
    config: SearchConfig | None
    verdict: Literal["counterexample_found", "none_found"]
    witness: Witness | None
    instances_tested: int
    homology_trivial: int = 0
    certified_null_homotopic: int = 0
    nonzero_maps: int = 0
    origins: dict[str, int] = field(default_factory=dict)
    witness_index: int | None = None
    elapsed: float = 0.0
    note: str = ""

    def __post_init__(self):
        if (self.witness is not None) != (self.verdict == "counterexample_found"):
            raise ValueError("witness must be present exactly when a counterexample is reported")

    @property
    def found(self) -> bool:
        return self.verdict == "counterexample_found"


# --------------------------------------------------------------------------
# canonical constructions


def canonical_counterexample(n: Modulus | int) -> CounterexampleReport:
    """The non-null-homotopic self map of ``cone(g)`` for ``g = n/p``, ``p^2 | n``.

    ``Y = (0 -> Z/n --g--> Z/n -> 0)`` in degrees 1, 0 and ``h`` is ``g`` in
    degree 1 and ``0`` in degree 0.  A null-homotopy would be an ``s`` with
    ``g = s g`` and ``g s = 0``, forcing ``g = 0``.
    """
    t0 = time.perf_counter()
    mod = Modulus.of(n)
    p = next((q for q, e in mod.factorization if e >= 2), None)
    if p is None:
        raise SquarefreeModulusError(
            f"Z/{mod.n} is von Neumann regular (n squarefree); "
            "the generating hypothesis holds, so no counterexample exists"
        )
    g = mod.n // p
    s = cx.sphere(mod)
    y = cx.cone(cx.scalar_map(s, g)).complex
    h = ChainMap(y, y, {1: [[g]], 0: [[0]]})
    w = _witness(h)
    if w is None or not w.verify():
        raise AssertionError(f"canonical counterexample failed to certify over Z/{mod.n}")
    return CounterexampleReport(
        config=None,
        verdict="counterexample_found",
        witness=w,
        instances_tested=1,
        homology_trivial=1,
        nonzero_maps=1,
        origins={"canonical": 1},
        witness_index=0,
        elapsed=time.perf_counter() - t0,
        note=f"p={p}, g=n/p={g}",
    )


@dataclass(frozen=True)
class AnnihilatorWitness:
    map: ChainMap
    induced_zero: bool
    homotopy: Homotopy | None
    in_ideal: bool

    @property
    def null_homotopic(self) -> bool:
        return self.homotopy is not None


def annihilator_witness_map(n: Modulus | int, f: int, z: int) -> AnnihilatorWitness:
    """``z . rho : cone(f) -> Sigma S`` for ``z`` in ``ann(ann((f)))``.

    The composite is always zero on homology; it is null-homotopic exactly
    when ``z`` lies in ``(f)``.
    """
    mod = Modulus.of(n)
    f, z = int(f) % mod.n, int(z) % mod.n
    principal = IdealZn(mod, f)
    if z not in annihilator(mod, annihilator(mod, principal)):
        raise ValueError(f"{z} is not in ann(ann(({f}))) over Z/{mod.n}")
    c = cx.cone(cx.scalar_map(cx.sphere(mod), f))
    composite = cx.compose(cx.scalar_map(c.projection.target, z), c.projection)
    induced = cx.induced_homology_map(composite)
    if not induced.is_zero():
        raise AssertionError("z . rho is nonzero on homology")
    h = cx.null_homotopy(composite)
    result = AnnihilatorWitness(composite, True, h, z in principal)
    if result.null_homotopic != result.in_ideal:
        raise AssertionError(f"null-homotopy of z.rho disagrees with z in (f) for n={mod.n}, f={f}, z={z}")
    return result


# --------------------------------------------------------------------------
# random instances


def _random_entries(rng: np.random.Generator, mod: Modulus, shape) -> np.ndarray:
    n = mod.n
    a = rng.integers(0, n, size=shape, dtype=np.int64)
    if rng.random() < 0.5:
        # push entries into a random proper ideal to hit zero divisors
        divs = mod.divisors()[:-1]
        a = (a * divs[rng.integers(0, len(divs))]) % n
    if rng.random() < 0.3:
        a[rng.random(size=shape) < 0.5] = 0
    return a


def _random_automorphism(rng: np.random.Generator, mod: Modulus, size: int) -> tuple[np.ndarray, np.ndarray]:
    n = mod.n
    P = np.eye(size, dtype=np.int64)
    Pinv = np.eye(size, dtype=np.int64)
    if size == 0:
        return P, Pinv
    units = [u for u in range(1, n) if gcd(u, n) == 1]
    for _ in range(2 * size):
        i, j = rng.integers(0, size, size=2)
        if i != j:
            c = int(rng.integers(0, n))
            P[i] = (P[i] + c * P[j]) % n
            Pinv[:, j] = (Pinv[:, j] - c * Pinv[:, i]) % n
        else:
            u = units[rng.integers(0, len(units))]
            P[i] = (P[i] * u) % n
            Pinv[:, i] = (Pinv[:, i] * pow(u, -1, n)) % n
    return P, Pinv


def _kernel_chain_complex(rng, mod: Modulus, lo: int, ranks: list[int]) -> ChainComplex:
    n = mod.n
    diffs: dict[int, MatZn] = {}
    prev = MatZn.zeros(mod, 0, ranks[0])
    for idx in range(1, len(ranks)):
        kern = kernel_basis(prev)  # rows generate ker d_{i-1}
        coeffs = _random_entries(rng, mod, (ranks[idx], kern.rows))
        d = MatZn._wrap(mod, ((coeffs @ kern.a) % n).T.reshape(ranks[idx - 1], ranks[idx]))
        diffs[lo + idx] = d
        prev = d
    return ChainComplex(mod, lo, ranks, diffs, check=False)


def _elementary_complex(rng, mod: Modulus, lo: int, width: int, max_rank: int) -> ChainComplex:
    """Direct sum of spheres and two-term cones ``cone(a)``, then a random change of basis."""
    n = mod.n
    ranks = [0] * width
    pieces: list[tuple[int, int | None]] = []  # (bottom index, scalar or None for a sphere)
    divs = [d for d in mod.divisors() if d < n]
    for _ in range(int(rng.integers(0, width * max_rank + 1))):
        j = int(rng.integers(0, width))
        if j + 1 < width and rng.random() < 0.6:
            if ranks[j] < max_rank and ranks[j + 1] < max_rank:
                if rng.random() < 0.7:
                    a = divs[rng.integers(0, len(divs))] * int(rng.integers(1, n))
                else:
                    a = int(rng.integers(0, n))
                pieces.append((j, a % n))
                ranks[j] += 1
                ranks[j + 1] += 1
        elif ranks[j] < max_rank:
            pieces.append((j, None))
            ranks[j] += 1
    d = [np.zeros((ranks[j - 1] if j else 0, ranks[j]), dtype=np.int64) for j in range(width)]
    fill = [0] * width
    for j, a in pieces:
        if a is None:
            fill[j] += 1
            continue
        d[j + 1][fill[j], fill[j + 1]] = a
        fill[j] += 1
        fill[j + 1] += 1
    basis = [_random_automorphism(rng, mod, r) for r in ranks]
    diffs = {}
    for j in range(1, width):
        P, _ = basis[j - 1]
        _, Qinv = basis[j]
        diffs[lo + j] = MatZn._wrap(mod, (P @ d[j] % n) @ Qinv % n)
    return ChainComplex(mod, lo, ranks, diffs, check=False)


def random_complex(
    rng: np.random.Generator, modulus: Modulus | int, lo: int, width: int, max_rank: int
) -> ChainComplex:
    """A random complex in degrees ``lo .. lo + width - 1`` with ranks ``<= max_rank``."""
    mod = Modulus.of(modulus)
    if max_rank == 0:
        return ChainComplex(mod, lo, [0] * width, check=False)
    if rng.random() < 0.5:
        ranks = [int(r) for r in rng.integers(0, max_rank + 1, size=width)]
        return _kernel_chain_complex(rng, mod, lo, ranks)
    return _elementary_complex(rng, mod, lo, width, max_rank)


def _chain_map_system(x: ChainComplex, y: ChainComplex, trivial_on_homology: bool):
    """Kernel generators for degree-0 chain maps ``x -> y`` (optionally homology-trivial).

    Unknowns are the entries of every ``f_i`` (row-major), followed, in the
    homology-trivial case, by one chain ``z`` per cycle generator with
    ``f_i c = d z``.
    """
    mod = x.modulus
    n = mod.n
    blocks = []
    off = 0
    for i in x.degrees:
        r, c = y.rank(i), x.rank(i)
        blocks.append((i, r, c, off))
        off += r * c
    nf = off
    at = {b[0]: b for b in blocks}
    rows = []
    # d f_i - f_{i-1} d = 0, as equations in the entries of f
    for i in range(x.lo, x.hi + 2):
        r_out, c_out = y.rank(i - 1), x.rank(i)
        if not (r_out and c_out):
            continue
        eq = np.zeros((r_out * c_out, nf), dtype=np.int64)
        if i in at:
            _, r, c, o = at[i]
            eq[:, o:o + r * c] += np.kron(y.d(i).a, np.eye(c, dtype=np.int64))
        if i - 1 in at:
            _, r, c, o = at[i - 1]
            eq[:, o:o + r * c] -= np.kron(np.eye(r, dtype=np.int64), x.d(i).a.T)
        rows.append(eq)
    total = nf
    if trivial_on_homology:
        hx = cx.homology(x)
        extra = []
        for i in x.degrees:
            cyc = hx[i].cycles.a
            yr, yr1 = y.rank(i), y.rank(i + 1)
            if not yr or not cyc.shape[1]:
                continue
            for j in range(cyc.shape[1]):
                extra.append((i, j, total, yr1, cyc[:, j], yr))
                total += yr1
        hom_rows = []
        for i, j, zo, zlen, cvec, yr in extra:
            eq = np.zeros((yr, total), dtype=np.int64)
            _, r, c, o = at[i]
            # f_i c as a linear function of the entries of f_i
            eq[:, o:o + r * c] = np.kron(np.eye(r, dtype=np.int64), cvec.reshape(1, -1))
            eq[:, zo:zo + zlen] = -y.d(i + 1).a
            hom_rows.append(eq)
        rows = [np.hstack([r, np.zeros((r.shape[0], total - nf), dtype=np.int64)]) for r in rows]
        rows += hom_rows
    if rows:
        system = np.vstack(rows) % n
    else:
        system = np.zeros((0, total), dtype=np.int64)
    gens = kernel_basis(MatZn._wrap(mod, system)).a[:, :nf]
    return gens, blocks


def _combine(rng, mod: Modulus, x, y, gens: np.ndarray, blocks) -> ChainMap:
    n = mod.n
    if gens.shape[0]:
        coeffs = rng.integers(0, n, size=gens.shape[0], dtype=np.int64)
        vec = (coeffs @ gens) % n
    else:
        vec = np.zeros(gens.shape[1], dtype=np.int64)
    comps = {i: MatZn._wrap(mod, vec[o:o + r * c].reshape(r, c)) for i, r, c, o in blocks}
    return ChainMap(x, y, comps, check=False)


def random_chain_map(rng, x: ChainComplex, y: ChainComplex, trivial_on_homology: bool = False) -> ChainMap:
    gens, blocks = _chain_map_system(x, y, trivial_on_homology)
    return _combine(rng, x.modulus, x, y, gens, blocks)


def _random_perturbation(rng, x: ChainComplex, y: ChainComplex) -> ChainMap:
    s = {i: _random_entries(rng, x.modulus, (y.rank(i + 1), x.rank(i))) for i in x.degrees}
    return cx.homotopy_perturbation(x, y, s)


@dataclass(frozen=True)
class Instance:
    index: int
    map: ChainMap
    origin: str


def random_instance(config: SearchConfig, index: int = 0) -> Instance:
    """Instance ``index`` of the stream defined by ``config``.

    The source and target are random complexes on a shared degree window
    (the target is ``S`` in ``target_sphere`` mode).  The map is a random
    chain map kept if it is already zero on homology; otherwise a nonzero
    nilradical multiple of it is tried, and failing that a random element of
    the module of homology-trivial chain maps is drawn exactly.  A random
    ``d s + s d`` is added at the end.
    """
    mod = Modulus.of(config.modulus)
    rng = np.random.default_rng(np.random.SeedSequence([config.seed, index]))
    width = int(rng.integers(1, config.max_degrees + 1))
    if config.mode == "target_sphere":
        # keep degrees 0 and -1 in the window so maps to S can be nonzero
        lo = -int(rng.integers(1, width)) if width > 1 else 0
        x = random_complex(rng, mod, lo, width, config.max_rank)
        y = cx.sphere(mod)
    else:
        lo = int(rng.integers(-1, 1))
        x = random_complex(rng, mod, lo, width, config.max_rank)
        y = random_complex(rng, mod, lo, width, config.max_rank)

    f = random_chain_map(rng, x, y)
    origin = "rejection"
    if not cx.induced_homology_map(f).is_zero():
        origin = None
        rad = mod.radical
        if rad != mod.n:
            r = rad * int(rng.integers(1, mod.n // rad))
            g = f * r
            if not g.is_zero() and cx.induced_homology_map(g).is_zero():
                f, origin = g, "nilradical"
        if origin is None:
            f = random_chain_map(rng, x, y, trivial_on_homology=True)
            origin = "trivial-submodule"
    if f.is_zero() or rng.random() < 0.5:
        f = f + _random_perturbation(rng, x, y)
    return Instance(index, f, origin)


def instance_stream(config: SearchConfig) -> Iterator[Instance]:
    for i in range(config.samples):
        yield random_instance(config, i)


# --------------------------------------------------------------------------
# searches


@dataclass(frozen=True)
class _Outcome:
    index: int
    origin: str
    nonzero: bool
    homology_trivial: bool
    certified: bool
    witness: Witness | None


def _evaluate(config: SearchConfig, index: int) -> _Outcome:
    inst = random_instance(config, index)
    f = inst.map
    induced = cx.induced_homology_map(f)
    trivial = induced.is_zero()
    if not trivial:
        raise AssertionError(f"instance {index} is not zero on homology")
    h = cx.null_homotopy(f)
    if h is not None:
        if not h.verify():
            raise AssertionError(f"instance {index}: homotopy certificate failed")
        return _Outcome(index, inst.origin, not f.is_zero(), True, True, None)
    w = _witness(f, induced)
    if w is None:
        raise AssertionError(f"instance {index}: solver says no homotopy but no obstruction found")
    return _Outcome(index, inst.origin, not f.is_zero(), True, False, w)


def _evaluate_chunk(args) -> list[_Outcome]:
    config, indices = args
    return [_evaluate(config, i) for i in indices]


def _outcomes(config: SearchConfig, jobs: int) -> Iterator[_Outcome]:
    if jobs <= 1:
        for i in range(config.samples):
            yield _evaluate(config, i)
        return
    chunk = max(1, config.samples // (jobs * 4))
    chunks = [(config, list(range(s, min(s + chunk, config.samples)))) for s in range(0, config.samples, chunk)]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for batch in pool.map(_evaluate_chunk, chunks):
            yield from batch


def gh_search(config: SearchConfig, jobs: int = 1, stop_at_first: bool = True) -> CounterexampleReport:
    """Run ``config.samples`` instances and report the first counterexample, if any.

    ``none_found`` means the hypothesis survived at this scale; it is not a
    proof.  Results are merged in instance order, so ``jobs`` never changes
    the report.
    """
    t0 = time.perf_counter()
    tested = trivial = certified = nonzero = 0
    origins: Counter = Counter()
    witness = None
    witness_index = None
    for out in _outcomes(config, jobs):
        tested += 1
        trivial += out.homology_trivial
        certified += out.certified
        nonzero += out.nonzero
        origins[out.origin] += 1
        if out.witness is not None and witness is None:
            witness, witness_index = out.witness, out.index
            if stop_at_first:
                break
    verdict = "counterexample_found" if witness is not None else "none_found"
    return CounterexampleReport(
        config=config,
        verdict=verdict,
        witness=witness,
        instances_tested=tested,
        homology_trivial=trivial,
        certified_null_homotopic=certified,
        nonzero_maps=nonzero,
        origins=dict(sorted(origins.items())),
        witness_index=witness_index,
        elapsed=time.perf_counter() - t0,
        note="refuted" if witness is not None else "consistent at this scale (not a proof)",
    )


def target_sphere_search(config: SearchConfig, jobs: int = 1) -> CounterexampleReport:
    """``gh_search`` restricted to maps ``X -> S``."""
    if config.mode != "target_sphere":
        raise ValueError("target_sphere_search needs mode='target_sphere'")
    return gh_search(config, jobs)


# --------------------------------------------------------------------------
# structural suites


@dataclass
class KoszulSuiteReport:
    modulus: int
    generators: tuple[int, ...]
    ideal: int
    contracts: dict[str, bool]
    unit_kernel_is_ideal: bool
    scalars_null_homotopic: bool
    double_annihilator: bool
    relative_gh: bool
    relative_reason: RelativeReason

    @property
    def structural_pass(self) -> bool:
        return (
            all(self.contracts.values())
            and self.unit_kernel_is_ideal
            and self.scalars_null_homotopic
            and self.double_annihilator
        )

    def to_dict(self) -> dict:
        return {
            "modulus": self.modulus,
            "generators": list(self.generators),
            "ideal": self.ideal,
            "contracts": dict(self.contracts),
            "unit_kernel_is_ideal": self.unit_kernel_is_ideal,
            "scalars_null_homotopic": self.scalars_null_homotopic,
            "double_annihilator": self.double_annihilator,
            "relative_gh": self.relative_gh,
            "relative_reason": self.relative_reason.value,
            "structural_pass": self.structural_pass,
        }


def koszul_gh_suite(n: Modulus | int, generators) -> KoszulSuiteReport:
    """Build ``S/I`` and run every check that concerns it."""
    mod = Modulus.of(n)
    bundle = cx.koszul(mod, generators)
    ideal = bundle.ideal
    contracts = cx.koszul_contracts(bundle)
    kernel_ok = all(
        (cx.null_homotopy(cx.unit_composite(bundle, z)) is not None) == (z in ideal)
        for z in range(mod.n)
    )
    scalars_ok = all(
        cx.null_homotopy(cx.scalar_map(bundle.complex, x)) is not None for x in ideal.elements()
    )
    ok, reason = relative_gh_predicate(mod, ideal)
    return KoszulSuiteReport(
        modulus=mod.n,
        generators=bundle.generators,
        ideal=ideal.generator,
        contracts=contracts,
        unit_kernel_is_ideal=kernel_ok,
        scalars_null_homotopic=scalars_ok,
        double_annihilator=double_annihilator_check(mod, ideal),
        relative_gh=ok,
        relative_reason=reason,
    )


@dataclass
class QuasiIsoSuiteReport:
    modulus: int
    constructed: int
    detected_quasi_iso: int
    contractible_cones: int
    failures: list[int]

    @property
    def passed(self) -> bool:
        return not self.failures and self.detected_quasi_iso == self.contractible_cones == self.constructed


def constructed_quasi_iso(rng, modulus: Modulus | int, max_degrees: int = 3, max_rank: int = 2) -> ChainMap:
    """A quasi-isomorphism built so that its cone must be contractible.

    ``X -> X + cone(1_W)`` (or the projection the other way), perturbed by a
    random ``d s + s d``, twisted by a shear automorphism of the padded side
    and scaled by a unit.
    """
    mod = Modulus.of(modulus)
    n = mod.n
    width = int(rng.integers(1, max_degrees + 1))
    x = random_complex(rng, mod, 0, width, max_rank)
    w = random_complex(rng, mod, 0, max(1, width - 1), 1)
    pad = cx.cone(cx.identity_map(w)).complex
    big = cx.direct_sum(x, pad)
    # shear automorphism [[1, 0], [c, 1]] of X + pad for a chain map c: X -> pad
    c = random_chain_map(rng, x, pad)

    inc = {}
    for i in x.degrees:
        top = np.eye(x.rank(i), dtype=np.int64)
        inc[i] = MatZn._wrap(mod, np.vstack([top, c.component(i).a]) % n)
    q = ChainMap(x, big, inc, check=False)
    if rng.random() < 0.5:
        proj = {}
        for i in big.degrees:
            xr, pr = x.rank(i), pad.rank(i)
            proj[i] = MatZn._wrap(mod, np.hstack([np.eye(xr, dtype=np.int64), np.zeros((xr, pr), dtype=np.int64)]))
        q = ChainMap(big, x, proj, check=False)
        q = q + _random_perturbation(rng, big, x)
    else:
        q = q + _random_perturbation(rng, x, big)
    units = [u for u in range(1, n) if gcd(u, n) == 1]
    return q * units[rng.integers(0, len(units))]


def quasi_iso_cone_suite(config: SearchConfig) -> QuasiIsoSuiteReport:
    """Check that constructed quasi-isomorphisms have contractible cones."""
    mod = Modulus.of(config.modulus)
    detected = contractible = 0
    failures = []
    for idx in range(config.samples):
        rng = np.random.default_rng(np.random.SeedSequence([config.seed, idx, 1]))
        q = constructed_quasi_iso(rng, mod, config.max_degrees, config.max_rank)
        qi = cx.is_quasi_iso(q)
        h = cx.is_contractible(cx.cone(q).complex)
        detected += qi
        contractible += h is not None
        if not qi or h is None or not h.verify():
            failures.append(idx)
    return QuasiIsoSuiteReport(mod.n, config.samples, detected, contractible, failures)


@dataclass
class TheoremVerdict:
    modulus: int
    is_regular: bool
    squarefree: bool
    canonical_counterexample: bool
    search_verdict: str
    consistent: bool
    statement: str

    def to_dict(self) -> dict:
        return asdict(self)


def theorem_suite(n: Modulus | int, config: SearchConfig | None = None) -> TheoremVerdict:
    """Cross-check regularity, squarefreeness, the canonical counterexample and a search.

    A found counterexample refutes regularity outright; ``none_found`` is only
    consistent with it.
    """
    mod = Modulus.of(n)
    config = config or SearchConfig(mod.n)
    regular = is_regular(mod)
    try:
        canonical_counterexample(mod)
        canonical = True
    except SquarefreeModulusError:
        canonical = False
    search = gh_search(config)
    consistent = (regular == mod.squarefree) and (canonical == (not regular))
    if search.found:
        consistent = consistent and not regular
        statement = "generating hypothesis refuted by search; ring is not regular"
    elif regular:
        statement = "ring is regular; search found no counterexample (consistent, not a proof)"
    else:
        statement = "ring is not regular; canonical counterexample verified; search found none at this scale"
    return TheoremVerdict(mod.n, regular, mod.squarefree, canonical, search.verdict, consistent, statement)
