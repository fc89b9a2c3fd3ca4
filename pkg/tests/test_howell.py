import random

import pytest
from hypothesis import given, settings, strategies as st

from arithjet.howell import (
    howell_form,
    left_kernel_basis,
    module_rank,
    right_kernel_basis,
    unit_vectors,
)
from arithjet.ring import BaseRingSpec

SPEC = BaseRingSpec(5, 1)
M = 3
MOD = 5 ** M


def _mat_mul_vec(rows, vec):
    return [sum(r * v for r, v in zip(row, vec)) % MOD for row in rows]


def test_howell_rank_identity():
    rows = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    hf = howell_form(SPEC, rows, 3, M)
    assert hf.rank == 3


def test_howell_detects_pi_torsion():
    # the row 5*e1 is not in the span of e1 over Z/125 ... it is, but
    # Howell form must still expose the saturated span: x with 25x = 0
    rows = [[25, 0]]
    hf = howell_form(SPEC, rows, 2, M)
    # rank counts unit pivots: a pi^2-torsion row contributes none
    assert hf.rank == 0
    assert hf.pivot_valuations == [2]


def test_right_kernel_annihilates():
    rows = [[1, 2, 3], [0, 5, 10]]
    basis = right_kernel_basis(SPEC, rows, 3, M)
    assert basis
    for vec in basis:
        ints = [v[0] if isinstance(v, tuple) else int(v) for v in vec]
        assert all(x % MOD == 0 for x in _mat_mul_vec(rows, ints))


def test_left_kernel_annihilates():
    rows = [[1, 0], [5, 0], [0, 25]]
    basis = left_kernel_basis(SPEC, rows, 2, M)
    assert basis
    for vec in basis:
        ints = [v[0] if isinstance(v, tuple) else int(v) for v in vec]
        for j in range(2):
            assert sum(ints[i] * rows[i][j] for i in range(3)) % MOD == 0


@given(seed=st.integers(0, 10 ** 6))
@settings(max_examples=30, deadline=None)
def test_right_kernel_random(seed):
    rng = random.Random(seed)
    rows = [[rng.randrange(MOD) for _ in range(4)] for _ in range(3)]
    for vec in right_kernel_basis(SPEC, rows, 4, M):
        ints = [v[0] if isinstance(v, tuple) else int(v) for v in vec]
        assert all(x % MOD == 0 for x in _mat_mul_vec(rows, ints))


def test_module_rank():
    assert module_rank(SPEC, [[1, 0], [0, 1]], 2, M) == 2
    assert module_rank(SPEC, [[1, 0], [2, 0]], 2, M) == 1
    assert module_rank(SPEC, [[5, 0]], 2, M) == 0  # no unit content mod pi
    assert module_rank(SPEC, [], 2, M) == 0


def test_unit_vectors():
    vecs = [[(5,), (25,)], [(1,), (3,)], [(0,), (125,)]]
    units, rest = unit_vectors(SPEC, vecs, M)
    assert units == [[(1,), (3,)]]
    assert rest == [[(5,), (25,)], [(0,), (125,)]]
