import itertools
from collections import defaultdict
from math import gcd

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ghzn.linalg import (
    InvariantFactors,
    MatZn,
    Modulus,
    factorize,
    howell_form,
    is_projective,
    kernel_basis,
    left_obstruction,
    module_structure,
    smith_diagonal,
    solve_linear,
    xgcd,
)

import oracles


@st.composite
def matrices(draw, max_n=30, max_dim=4):
    n = draw(st.integers(2, max_n))
    r = draw(st.integers(0, max_dim))
    c = draw(st.integers(0, max_dim))
    entries = draw(st.lists(st.integers(0, n - 1), min_size=r * c, max_size=r * c))
    return MatZn(n, np.array(entries, dtype=np.int64).reshape(r, c))


# --- basics ---------------------------------------------------------------


@pytest.mark.parametrize("n", [2, 12, 97, 360, 2**13, 30030])
def test_factorize_roundtrip(n):
    f = factorize(n)
    prod = 1
    for p, e in f.items():
        prod *= p**e
    assert prod == n
    assert Modulus(n).squarefree == all(e == 1 for e in f.values())


@given(st.integers(-500, 500), st.integers(-500, 500))
def test_xgcd(a, b):
    g, s, t = xgcd(a, b)
    assert g == gcd(a, b)
    assert s * a + t * b == g


def test_modulus_rejects_small():
    with pytest.raises(ValueError):
        Modulus(1)


def test_matzn_reduces_and_is_immutable():
    m = MatZn(4, [[5, -1], [8, 2]])
    assert m.tolist() == [[1, 3], [0, 2]]
    with pytest.raises((ValueError, AttributeError)):
        m.a[0, 0] = 2


def test_zero_dimensional_matrices():
    a = MatZn.zeros(5, 0, 3)
    b = MatZn.zeros(5, 3, 0)
    assert (b @ a).shape == (3, 3)
    assert (a @ b).shape == (0, 0)
    assert howell_form(a).h.shape[1] == 3


# --- Howell form ----------------------------------------------------------


def test_howell_examples():
    h = howell_form(MatZn(4, [[2]]))
    assert h.h.tolist() == [[2]]
    assert h.pivots == ((0, 0, 2),)

    h = howell_form(MatZn(4, [[1, 2], [0, 2]]))
    assert h.h.tolist() == [[1, 0], [0, 2]]
    assert [(c, v) for _, c, v in h.pivots] == [(0, 1), (1, 2)]

    assert howell_form(MatZn(6, [[3], [2]])).h.tolist() == [[1]]


def _check_howell(a: MatZn):
    n = a.n
    hf = howell_form(a)
    h = hf.h
    assert oracles.row_span(h.a, n) == oracles.row_span(a.a, n)
    assert hf.transform @ a == h
    cols = [c for _, c, _ in hf.pivots]
    assert cols == sorted(set(cols))
    for r, c, v in hf.pivots:
        assert n % v == 0 and h.a[r, c] == v
        assert not h.a[r, :c].any()
        assert all(h.a[q, c] < v for q in range(r))
    # every span element with leading column >= c lies in the span of rows from c on
    span = oracles.row_span(h.a, n)
    for c in range(h.cols):
        tail = [v for v in span if not any(v[:c])]
        sub = oracles.row_span(np.array([row for row in h.a if not row[:c].any()]).reshape(-1, h.cols), n)
        assert set(tail) <= sub
    assert howell_form(h).h == h
    return h


@pytest.mark.parametrize("n", [2, 3, 4])
def test_howell_canonical_exhaustive(n):
    # equal row spans give identical forms, for every matrix up to 2x2
    for rows, cols in [(1, 1), (1, 2), (2, 1), (2, 2)]:
        seen: dict[frozenset, MatZn] = {}
        for a in oracles.all_matrices(n, rows, cols):
            m = MatZn(n, a)
            h = _check_howell(m)
            key = oracles.row_span(a, n)
            if key in seen:
                assert seen[key] == h
            else:
                seen[key] = h


@settings(max_examples=150, deadline=None)
@given(matrices(max_n=12, max_dim=3))
def test_howell_properties_random(a):
    _check_howell(a)


# --- solving ----------------------------------------------------------------


def test_solve_examples():
    assert list(solve_linear(MatZn(4, [[2]]), [2])) in ([1], [3])
    assert solve_linear(MatZn(4, [[2]]), [1]) is None
    b = [3, 1, 4]
    assert list(solve_linear(MatZn.identity(5, 3), b)) == [3, 1, 4]
    with pytest.raises(ValueError):
        solve_linear(MatZn(4, [[1, 0]]), [1, 2])


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_solver_complete_exhaustive(n):
    for rows, cols in [(1, 1), (1, 2), (2, 1), (2, 2)]:
        for a in oracles.all_matrices(n, rows, cols):
            m = MatZn(n, a)
            images = {tuple(v) for v in (oracles.all_vectors(n, cols) @ a.T) % n}
            for b in oracles.all_vectors(n, rows):
                x = solve_linear(m, b)
                assert (x is not None) == (tuple(b) in images)
                if x is not None:
                    assert np.array_equal((a @ x) % n, b)
                else:
                    y = left_obstruction(m, b)
                    assert y is not None
                    assert not ((y @ a) % n).any() and (y @ b) % n != 0


@settings(max_examples=150, deadline=None)
@given(matrices(max_n=40, max_dim=5), st.data())
def test_solve_consistent_system(a, data):
    x = np.array(data.draw(st.lists(st.integers(0, a.n - 1), min_size=a.cols, max_size=a.cols)), dtype=np.int64)
    b = (a.a @ x) % a.n if a.cols else np.zeros(a.rows, dtype=np.int64)
    sol = solve_linear(a, b)
    assert sol is not None
    assert np.array_equal((a.a @ sol) % a.n, b)
    assert left_obstruction(a, b) is None


# --- kernels ----------------------------------------------------------------


def test_kernel_examples():
    assert kernel_basis(MatZn(4, [[2]])).tolist() == [[2]]
    assert kernel_basis(MatZn(6, [[0]])).tolist() == [[1]]
    assert kernel_basis(MatZn(4, [[1]])).rows == 0


@pytest.mark.parametrize("n", [2, 4, 6, 8, 9])
def test_kernel_matches_brute_force(n):
    rng = np.random.default_rng(n)
    for _ in range(40):
        r, c = rng.integers(1, 3), rng.integers(1, 4)
        a = rng.integers(0, n, size=(r, c))
        k = kernel_basis(MatZn(n, a))
        assert not ((a @ k.a.T) % n).any()
        span = oracles.row_span(k.a, n) if k.rows else frozenset({(0,) * c})
        assert span == oracles.kernel(a, n)


# --- module structure -------------------------------------------------------


def test_module_structure_examples():
    assert module_structure(1, MatZn(4, [[2]])).tolist() == [2]
    assert module_structure(1, MatZn.zeros(7, 0, 1)).tolist() == [7]
    assert module_structure(2, MatZn(6, [[2, 0], [0, 3]])).tolist() == [6]


def test_invariant_factors_validation():
    with pytest.raises(ValueError):
        InvariantFactors(Modulus(12), (4, 6))
    with pytest.raises(ValueError):
        InvariantFactors(Modulus(12), (5,))
    assert InvariantFactors(Modulus(12), (2, 6)).order == 12


@pytest.mark.parametrize("n", [4, 6, 8, 9, 12])
def test_module_structure_against_counting(n):
    rng = np.random.default_rng(100 + n)
    for _ in range(25):
        k = int(rng.integers(1, 3))
        rels = rng.integers(0, n, size=(int(rng.integers(0, 3)), k))
        m = module_structure(k, MatZn(n, rels.reshape(-1, k)))
        span = oracles.row_span(rels.reshape(-1, k), n) if rels.size else frozenset({(0,) * k})
        assert oracles.torsion_profile_of_factors(m.factors, n) == oracles.torsion_profile_of_quotient(span, n, k)


def test_smith_against_sympy():
    sympy = pytest.importorskip("sympy")
    from sympy.matrices.normalforms import invariant_factors
    from sympy.polys.domains import ZZ

    rng = np.random.default_rng(7)
    for _ in range(60):
        r, c = int(rng.integers(1, 4)), int(rng.integers(1, 4))
        a = rng.integers(-20, 20, size=(r, c))
        ours = [d for d in smith_diagonal(a.tolist(), c) if d]
        theirs = [abs(int(d)) for d in invariant_factors(sympy.Matrix(a.tolist()), domain=ZZ) if d]
        assert ours == theirs


@pytest.mark.parametrize("n", [12, 18, 30])
def test_module_structure_invariances(n):
    rng = np.random.default_rng(n)
    for _ in range(30):
        k = int(rng.integers(1, 4))
        rels = rng.integers(0, n, size=(int(rng.integers(1, 4)), k))
        base = module_structure(k, MatZn(n, rels))
        perm = rng.permutation(k)
        assert module_structure(k, MatZn(n, rels[:, perm])) == base
        extra = (rng.integers(0, n, size=rels.shape[0]) @ rels) % n
        assert module_structure(k, MatZn(n, np.vstack([rels, extra]))) == base


# --- projectivity -------------------------------------------------------------


def test_is_projective_examples():
    assert is_projective(InvariantFactors(Modulus(6), (2,)))
    assert not is_projective(InvariantFactors(Modulus(4), (2,)))
    for n in (5, 12, 16):
        assert is_projective(InvariantFactors(Modulus(n), (n,)))


def test_is_projective_against_splitting_search():
    for n in range(2, 31):
        for d in (d for d in range(2, n + 1) if n % d == 0):
            m = InvariantFactors(Modulus(n), (d,))
            assert is_projective(m) == oracles.unitary_splitting_exists(n, d), (n, d)


def test_is_projective_sums():
    # a sum is projective iff each cyclic summand is
    verdicts = defaultdict(list)
    n = 36
    for d1, d2 in itertools.combinations_with_replacement([d for d in range(2, n + 1) if n % d == 0], 2):
        if d2 % d1:
            continue
        m = InvariantFactors(Modulus(n), (d1, d2))
        verdicts[is_projective(m)].append((d1, d2))
        assert is_projective(m) == (
            oracles.unitary_splitting_exists(n, d1) and oracles.unitary_splitting_exists(n, d2)
        )
    assert verdicts[True] and verdicts[False]


def test_matzn_pickles():
    import pickle

    m = MatZn(12, [[1, 5], [7, 11]])
    back = pickle.loads(pickle.dumps(m))
    assert back == m and not back.a.flags.writeable
