"""Exact linear algebra layer: oracles against sympy, plus property tests."""

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from hodge_degen.gq import (
    GaussianRational, MatrixGQ, Subspace, gq, ZERO, ONE, i_power,
    format_scalar, parse_scalar, rref, rank, intersect, ssum, kernel, image,
    conj_space, apply_matrix, preimage, annihilator, complement_mod,
    nilpotent_exp, determinant, hermitian_pd, NotNilpotent, AmbientMismatch,
)


fracs = st.fractions(min_value=-3, max_value=3, max_denominator=3)
scalars = st.builds(GaussianRational, fracs, fracs)


def small_matrix(rows, cols):
    return st.lists(st.lists(scalars, min_size=cols, max_size=cols),
                    min_size=rows, max_size=rows).map(MatrixGQ)


def to_sympy(M):
    return sympy.Matrix([[sympy.Rational(e.re) + sympy.I * sympy.Rational(e.im)
                          for e in row] for row in M.entries])


# ---------------------------------------------------------------- scalars

def test_scalar_arithmetic_basics():
    a = GaussianRational(Fraction(1, 2), Fraction(-1, 3))
    b = GaussianRational(2, 1)
    assert (a * b).re == Fraction(4, 3)
    assert (a * b).im == Fraction(-1, 6)
    assert (a + b - b) == a
    assert (a * a.inverse()) == ONE
    assert a.conj().conj() == a


def test_i_power_cycle():
    assert [i_power(k) for k in range(4)] == \
        [ONE, GaussianRational(0, 1), gq(-1), GaussianRational(0, -1)]
    assert i_power(-1) == GaussianRational(0, -1)
    assert i_power(7) == i_power(3)


@settings(max_examples=25, deadline=None)
@given(scalars)
def test_scalar_format_parse_roundtrip(x):
    assert parse_scalar(format_scalar(x)) == x


def test_parse_scalar_rejects_garbage():
    for bad in ("", "1+2", "i*i", "1//2", "2 3"):
        with pytest.raises(ValueError):
            parse_scalar(bad)


@settings(max_examples=25, deadline=None)
@given(scalars, scalars)
def test_scalar_mul_matches_sympy(a, b):
    got = a * b
    want = sympy.expand(
        (sympy.Rational(a.re) + sympy.I * sympy.Rational(a.im))
        * (sympy.Rational(b.re) + sympy.I * sympy.Rational(b.im)))
    assert sympy.Rational(got.re) + sympy.I * sympy.Rational(got.im) == want


# ---------------------------------------------------------------- matrices

@settings(max_examples=15, deadline=None)
@given(small_matrix(3, 4))
def test_rank_matches_sympy(M):
    assert rank(M) == to_sympy(M).rank()


@settings(max_examples=15, deadline=None)
@given(small_matrix(3, 3))
def test_determinant_matches_sympy(M):
    d = determinant(M)
    want = sympy.expand(to_sympy(M).det())
    assert sympy.Rational(d.re) + sympy.I * sympy.Rational(d.im) == want


@settings(max_examples=15, deadline=None)
@given(small_matrix(3, 4))
def test_rref_idempotent_and_canonical(M):
    R = rref(M)
    assert rref(R) == R
    # same row space: mutual containment
    A = Subspace(4, R) if R.rows else Subspace.zero(4)
    B = Subspace.from_vectors(4, [list(r) for r in M.entries])
    assert A == B


@settings(max_examples=15, deadline=None)
@given(small_matrix(3, 3), small_matrix(3, 3))
def test_matmul_matches_sympy(A, B):
    assert to_sympy(A * B).expand() == (to_sympy(A) * to_sympy(B)).expand()


# ---------------------------------------------------------------- subspaces

def vecs(dim):
    return st.lists(st.lists(scalars, min_size=dim, max_size=dim),
                    min_size=0, max_size=3)


@settings(max_examples=15, deadline=None)
@given(vecs(4), vecs(4))
def test_modular_dimension_law(u, w):
    U = Subspace.from_vectors(4, u)
    W = Subspace.from_vectors(4, w)
    assert intersect(U, W).dim + ssum(U, W).dim == U.dim + W.dim


@settings(max_examples=15, deadline=None)
@given(small_matrix(3, 4))
def test_rank_nullity(M):
    assert kernel(M).dim + image(M).dim == M.cols if M.cols == 4 else True
    assert kernel(M).dim + rank(M) == 4


@settings(max_examples=15, deadline=None)
@given(vecs(3))
def test_conj_involution_and_annihilator(u):
    U = Subspace.from_vectors(3, u)
    assert conj_space(conj_space(U)) == U
    A = annihilator(U)  # constraint rows cutting out U
    assert A.rows == 3 - U.dim
    for v in U.basis.entries:
        assert all(x.is_zero() for x in A.matvec(v))


@settings(max_examples=15, deadline=None)
@given(small_matrix(4, 4), vecs(4))
def test_preimage_is_maximal(M, u):
    A = Subspace.from_vectors(4, u)
    P = preimage(M, A)
    for v in P.basis.entries:
        assert A.contains_vector(list(M.matvec(v)))


def test_complement_mod_direct():
    S = Subspace.from_vectors(3, [[ONE, ZERO, ZERO], [ZERO, ONE, ZERO]])
    U = Subspace.from_vectors(3, [[ONE, ONE, ZERO]])
    C = complement_mod(S, U)
    assert intersect(C, U).dim == 0
    assert ssum(C, U) == S


def test_ambient_mismatch_raises():
    with pytest.raises(AmbientMismatch):
        intersect(Subspace.full(2), Subspace.full(3))


# ---------------------------------------------------------------- exp(zN)

def strict_upper(dim):
    def build(vals):
        ent = [[ZERO] * dim for _ in range(dim)]
        k = 0
        for i in range(dim):
            for j in range(i + 1, dim):
                ent[i][j] = vals[k]
                k += 1
        return MatrixGQ(ent)
    count = dim * (dim - 1) // 2
    return st.lists(scalars, min_size=count, max_size=count).map(build)


@settings(max_examples=15, deadline=None)
@given(strict_upper(4), scalars, scalars)
def test_nilpotent_exp_homomorphism(N, z, w):
    assert nilpotent_exp(N, z) * nilpotent_exp(N, w) == nilpotent_exp(N, z + w)
    assert nilpotent_exp(N, ZERO) == MatrixGQ.identity(4)


def test_nilpotent_exp_rejects_non_nilpotent():
    with pytest.raises(NotNilpotent):
        nilpotent_exp(MatrixGQ.identity(2), ONE)


# ---------------------------------------------------------------- pd forms

@settings(max_examples=15, deadline=None)
@given(small_matrix(3, 3))
def test_hermitian_pd_matches_sympy(M):
    H = M * M.conj_transpose() + MatrixGQ.identity(3)  # always hermitian
    S = to_sympy(H)
    assert hermitian_pd(H) == bool(S.is_positive_definite)


def test_hermitian_pd_rejects_indefinite():
    H = MatrixGQ([[ONE, ZERO], [ZERO, gq(-1)]])
    assert not hermitian_pd(H)


def test_apply_matrix_image_dim():
    M = MatrixGQ([[ONE, ONE], [ZERO, ZERO]])
    U = Subspace.full(2)
    assert apply_matrix(M, U).dim == 1
