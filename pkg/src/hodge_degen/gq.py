"""Exact linear algebra over the Gaussian rationals Q[i].

Everything downstream (filtrations, splittings, polarization checks) is built
on the three types here: GaussianRational scalars, MatrixGQ matrices and
Subspace (a row space held in reduced row echelon form, which makes subspace
equality a structural comparison).
"""

from fractions import Fraction
import re as _re


class AmbientMismatch(ValueError):
    pass


class NotNilpotent(ValueError):
    pass


class NotHermitian(ValueError):
    pass


_FRAC = r"[+-]?\d+(?:/\d+)?"
_SCALAR_RE = _re.compile(
    r"^\s*(?:(?P<re>{f})(?=\s*$|\s*[+-]))?\s*"
    r"(?:(?P<im>[+-]?(?:\d+(?:/\d+)?\s*\*\s*)?)i)?\s*$".format(f=_FRAC)
)


class GaussianRational:
    """A complex number a + b*i with a, b rational."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        # bypassing Fraction() for Fractions matters: this is the hot path
        if type(re) is not Fraction:
            re = Fraction(re)
        if type(im) is not Fraction:
            im = Fraction(im)
        object.__setattr__(self, "re", re)
        object.__setattr__(self, "im", im)

    def __setattr__(self, *a):
        raise AttributeError("GaussianRational is immutable")

    # arithmetic

    def __add__(self, other):
        if type(other) is not GaussianRational:
            other = gq(other)
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        if type(other) is not GaussianRational:
            other = gq(other)
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return gq(other) + (-self)

    def __mul__(self, other):
        if type(other) is not GaussianRational:
            other = gq(other)
        if self.im or other.im:
            return GaussianRational(
                self.re * other.re - self.im * other.im,
                self.re * other.im + self.im * other.re,
            )
        return GaussianRational(self.re * other.re)

    __rmul__ = __mul__

    def inverse(self):
        n = self.re * self.re + self.im * self.im
        if n == 0:
            raise ZeroDivisionError("division by zero GaussianRational")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        return self * gq(other).inverse()

    def __rtruediv__(self, other):
        return gq(other) * self.inverse()

    def conj(self):
        return GaussianRational(self.re, -self.im)

    def is_zero(self):
        return self.re == 0 and self.im == 0

    def is_real(self):
        return self.im == 0

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GaussianRational(other)
        if not isinstance(other, GaussianRational):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return "gq(%s)" % format_scalar(self)

    def __str__(self):
        return format_scalar(self)


def gq(x):
    """Coerce ints, Fractions and strings to GaussianRational."""
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, Fraction)):
        return GaussianRational(x)
    if isinstance(x, str):
        return parse_scalar(x)
    raise TypeError("cannot coerce %r to GaussianRational" % (x,))


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)


def i_power(k):
    # i**k for any integer k
    return (ONE, I, -ONE, -I)[k % 4]


def _fmt_frac(f):
    return str(f.numerator) if f.denominator == 1 else "%d/%d" % (f.numerator, f.denominator)


def format_scalar(x):
    """Serialize as "a/b", "c/d*i" or "a/b+c/d*i" (denominator 1 omitted)."""
    x = gq(x)
    if x.im == 0:
        return _fmt_frac(x.re)
    imtxt = _fmt_frac(x.im) + "*i"
    if x.re == 0:
        return imtxt
    if x.im > 0:
        return _fmt_frac(x.re) + "+" + imtxt
    return _fmt_frac(x.re) + imtxt


def parse_scalar(s):
    """Parse the serialization format; also accepts bare "i" / "-i"."""
    m = _SCALAR_RE.match(s)
    if not m or (m.group("re") is None and m.group("im") is None):
        raise ValueError("bad scalar string: %r" % s)
    re_part = Fraction(m.group("re")) if m.group("re") is not None else Fraction(0)
    im_part = Fraction(0)
    if m.group("im") is not None:
        t = m.group("im").replace(" ", "")
        if t in ("", "+"):
            im_part = Fraction(1)
        elif t == "-":
            im_part = Fraction(-1)
        else:
            im_part = Fraction(t.rstrip("*"))
    return GaussianRational(re_part, im_part)


class MatrixGQ:
    """Dense matrix of GaussianRational entries, immutable."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries, cols=None):
        # cols only matters for empty matrices, where it cannot be inferred
        entries = tuple(tuple(gq(e) for e in row) for row in entries)
        rows = len(entries)
        cols = len(entries[0]) if rows else (cols or 0)
        for row in entries:
            if len(row) != cols:
                raise ValueError("ragged matrix")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, *a):
        raise AttributeError("MatrixGQ is immutable")

    @staticmethod
    def zero(rows, cols):
        return MatrixGQ([[ZERO] * cols for _ in range(rows)], cols=cols)

    @staticmethod
    def identity(n):
        return MatrixGQ([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i):
        return self.entries[i]

    def __eq__(self, other):
        if not isinstance(other, MatrixGQ):
            return NotImplemented
        return self.entries == other.entries and self.cols == other.cols

    def __hash__(self):
        return hash((self.cols, self.entries))

    def __add__(self, other):
        if self.rows != other.rows or self.cols != other.cols:
            raise AmbientMismatch("matrix shapes differ")
        return MatrixGQ(
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)]
        )

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        c = gq(c)
        return MatrixGQ([[c * e for e in row] for row in self.entries])

    def __mul__(self, other):
        if isinstance(other, MatrixGQ):
            if self.cols != other.rows:
                raise AmbientMismatch("inner dimensions differ")
            ot = other.transpose().entries
            return MatrixGQ(
                [[_dot(r, c) for c in ot] for r in self.entries]
            )
        return self.scale(other)

    def __rmul__(self, c):
        return self.scale(c)

    def transpose(self):
        return MatrixGQ(list(zip(*self.entries))) if self.rows else MatrixGQ([])

    def conj(self):
        return MatrixGQ([[e.conj() for e in row] for row in self.entries])

    def conj_transpose(self):
        return self.transpose().conj()

    def is_zero(self):
        return all(e.is_zero() for row in self.entries for e in row)

    def is_real(self):
        return all(e.is_real() for row in self.entries for e in row)

    def matvec(self, v):
        # v a sequence of scalars, returns tuple M v
        assert len(v) == self.cols
        return tuple(_dot(row, v) for row in self.entries)

    def power(self, k):
        assert self.rows == self.cols and k >= 0
        out = MatrixGQ.identity(self.rows)
        for _ in range(k):
            out = out * self
        return out

    def trace(self):
        assert self.rows == self.cols
        t = ZERO
        for i in range(self.rows):
            t = t + self.entries[i][i]
        return t

    def flatten(self):
        return tuple(e for row in self.entries for e in row)

    def to_json(self):
        return [[format_scalar(e) for e in row] for row in self.entries]

    @staticmethod
    def from_json(rows):
        return MatrixGQ([[parse_scalar(e) for e in row] for row in rows])

    def __repr__(self):
        return "MatrixGQ(%r)" % (self.to_json(),)


def _dot(r, c):
    acc = ZERO
    for a, b in zip(r, c):
        if a.is_zero() or b.is_zero():
            continue
        acc = acc + a * b
    return acc


def rref(M):
    """Reduced row echelon form with zero rows dropped (row space canonical form)."""
    work = [list(row) for row in M.entries]
    nrows, ncols = len(work), M.cols
    pivots = []
    r = 0
    for c in range(ncols):
        # find a pivot in column c at or below row r
        piv = None
        for i in range(r, nrows):
            if not work[i][c].is_zero():
                piv = i
                break
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        inv = work[r][c].inverse()
        if inv != ONE:
            work[r] = [e if e.is_zero() else inv * e for e in work[r]]
        for i in range(nrows):
            if i != r and not work[i][c].is_zero():
                f = work[i][c]
                work[i] = [a if b.is_zero() else a - f * b
                           for a, b in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    kept = [row for row in work[:r]]
    return MatrixGQ(kept) if kept else MatrixGQ.zero(0, ncols)


def rank(M):
    return rref(M).rows


class Subspace:
    """A subspace of C^n, stored as an rref basis (rows).  Equality is structural."""

    __slots__ = ("ambient_dim", "basis")

    def __init__(self, ambient_dim, basis, already_canonical=False):
        if basis.cols != ambient_dim and basis.rows > 0:
            raise AmbientMismatch("basis width != ambient dim")
        if not already_canonical:
            basis = rref(basis)
        if basis.rows == 0:
            basis = MatrixGQ.zero(0, ambient_dim)
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "basis", basis)

    def __setattr__(self, *a):
        raise AttributeError("Subspace is immutable")

    @staticmethod
    def from_vectors(ambient_dim, vectors):
        if not vectors:
            return Subspace.zero(ambient_dim)
        return Subspace(ambient_dim, MatrixGQ(vectors))

    @staticmethod
    def zero(ambient_dim):
        return Subspace(ambient_dim, MatrixGQ.zero(0, ambient_dim), already_canonical=True)

    @staticmethod
    def full(ambient_dim):
        return Subspace(ambient_dim, MatrixGQ.identity(ambient_dim), already_canonical=True)

    @property
    def dim(self):
        return self.basis.rows

    def vectors(self):
        return list(self.basis.entries)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def contains_vector(self, v):
        red = _reduce_against(list(v), self.basis)
        return all(e.is_zero() for e in red)

    def contains(self, other):
        self._check(other)
        return all(self.contains_vector(v) for v in other.basis.entries)

    def _check(self, other):
        if self.ambient_dim != other.ambient_dim:
            raise AmbientMismatch("subspaces live in different ambient spaces")

    def __repr__(self):
        return "Subspace(dim %d of C^%d)" % (self.dim, self.ambient_dim)

    def to_json(self):
        return self.basis.to_json()


def _reduce_against(v, B):
    # subtract multiples of the rref rows of B to kill pivot coordinates of v
    v = list(v)
    for row in B.entries:
        piv = next((j for j, e in enumerate(row) if not e.is_zero()), None)
        if piv is None:
            continue
        if not v[piv].is_zero():
            f = v[piv]  # row has pivot entry 1
            v = [a - f * b for a, b in zip(v, row)]
    return v


def ssum(A, B):
    A._check(B)
    stacked = list(A.basis.entries) + list(B.basis.entries)
    return Subspace.from_vectors(A.ambient_dim, stacked)


def intersect(A, B):
    """A cap B via the kernel of the stacked coefficient matrix."""
    A._check(B)
    ka, kb = A.dim, B.dim
    if ka == 0 or kb == 0:
        return Subspace.zero(A.ambient_dim)
    # rows (a | b) with a*basisA - b*basisB = 0
    stacked = MatrixGQ(
        [list(r) for r in A.basis.entries] + [[-e for e in r] for r in B.basis.entries]
    ).transpose()
    ker = kernel(stacked)  # coefficient vectors (a, b)
    vecs = []
    for coeff in ker.basis.entries:
        a = coeff[:ka]
        v = [ZERO] * A.ambient_dim
        for c, row in zip(a, A.basis.entries):
            if c.is_zero():
                continue
            v = [x + c * y for x, y in zip(v, row)]
        vecs.append(v)
    if not vecs:
        return Subspace.zero(A.ambient_dim)
    return Subspace.from_vectors(A.ambient_dim, vecs)


def kernel(M):
    """Right kernel {x : M x = 0} as a Subspace of C^cols."""
    R = rref(M)
    n = M.cols
    pivots = []
    for row in R.entries:
        piv = next(j for j, e in enumerate(row) if not e.is_zero())
        pivots.append(piv)
    free = [j for j in range(n) if j not in pivots]
    vecs = []
    for f in free:
        v = [ZERO] * n
        v[f] = ONE
        for row, piv in zip(R.entries, pivots):
            v[piv] = -row[f]
        vecs.append(v)
    if not vecs:
        return Subspace.zero(n)
    return Subspace.from_vectors(n, vecs)


def image(M):
    """Column space of M, as a Subspace of C^rows."""
    return Subspace(M.rows, M.transpose())


def conj_space(X):
    if isinstance(X, MatrixGQ):
        return X.conj()
    return Subspace(X.ambient_dim, X.basis.conj())


def apply_matrix(M, A):
    """Image of subspace A under the linear map M (vectors as columns)."""
    if M.cols != A.ambient_dim:
        raise AmbientMismatch("matrix does not act on this ambient space")
    if A.dim == 0:
        return Subspace.zero(M.rows)
    vecs = [M.matvec(v) for v in A.basis.entries]
    return Subspace.from_vectors(M.rows, vecs)


def preimage(M, A):
    """{x : M x in A}, a Subspace of the domain."""
    if M.rows != A.ambient_dim:
        raise AmbientMismatch("target space mismatch")
    ann = annihilator(A)
    if ann.rows == 0:
        return Subspace.full(M.cols)
    return kernel(ann * M)


def annihilator(A):
    """Matrix whose kernel is exactly A (rows are linear constraints)."""
    if A.dim == 0:
        return MatrixGQ.identity(A.ambient_dim)
    # rows x with basis . x^T = 0, i.e. kernel of the basis matrix
    ker = kernel(A.basis)
    if ker.dim == 0:
        return MatrixGQ.zero(0, A.ambient_dim)
    return ker.basis


def complement_mod(S, U):
    """Canonical lift of S/(S cap U): rref of the basis of S reduced against U.

    U need not be contained in S.  The span of the returned subspace plus
    (S cap U) is S, and it meets U in 0.
    """
    S._check(U)
    vecs = []
    for v in S.basis.entries:
        red = _reduce_against(list(v), U.basis)
        if any(not e.is_zero() for e in red):
            vecs.append(red)
    if not vecs:
        return Subspace.zero(S.ambient_dim)
    # reduce within to drop dependents
    return Subspace.from_vectors(S.ambient_dim, vecs)


def nilpotent_exp(N, z):
    """exp(z N) for nilpotent N, as a finite exact sum."""
    if N.rows != N.cols:
        raise NotNilpotent("not square")
    n = N.rows
    if not N.power(n).is_zero():
        raise NotNilpotent("N^dim != 0")
    z = gq(z)
    out = MatrixGQ.identity(n)
    term = MatrixGQ.identity(n)
    k = 1
    while True:
        term = term * N
        if term.is_zero():
            break
        coeff = ONE
        for j in range(1, k + 1):
            coeff = coeff * GaussianRational(Fraction(1, j))
        out = out + term.scale(z * coeff * _pow_scalar(z, k - 1))
        k += 1
    return out


def _pow_scalar(z, k):
    acc = ONE
    for _ in range(k):
        acc = acc * z
    return acc


def determinant(M):
    """Exact determinant by fraction-free-ish Gaussian elimination."""
    assert M.rows == M.cols
    n = M.rows
    work = [list(row) for row in M.entries]
    det = ONE
    for c in range(n):
        piv = next((i for i in range(c, n) if not work[i][c].is_zero()), None)
        if piv is None:
            return ZERO
        if piv != c:
            work[c], work[piv] = work[piv], work[c]
            det = -det
        det = det * work[c][c]
        inv = work[c][c].inverse()
        for i in range(c + 1, n):
            if work[i][c].is_zero():
                continue
            f = work[i][c] * inv
            work[i] = [a - f * b for a, b in zip(work[i], work[c])]
    return det


def first_nonpositive_minor(H):
    """Index (1-based) of the first leading principal minor that is not a
    positive rational, or None if all are positive."""
    n = H.rows
    for k in range(1, n + 1):
        minor = determinant(MatrixGQ([row[:k] for row in H.entries[:k]]))
        if not (minor.is_real() and minor.re > 0):
            return k
    return None


def hermitian_pd(H):
    """Sylvester test: all leading principal minors positive.  Raises
    NotHermitian when H is not equal to its conjugate transpose."""
    if H.rows != H.cols or H != H.conj_transpose():
        raise NotHermitian("matrix is not Hermitian")
    return first_nonpositive_minor(H) is None
