"""Polarized Hodge structures: validation, decomposition, model construction.

A weight n structure is a triple (V, Q, F) with Q a real (-1)^n-symmetric
nondegenerate form and F a decreasing filtration with F^0 = V.  The two
bilinear relations are checked exactly:
  HR1: Q(F^p, F^{n-p+1}) = 0 and F^p (+) conj F^{n-p+1} = V
  HR2: i^(p-q) Q(u, conj v) positive definite on V^{p,q}
"""

from fractions import Fraction

from .gq import (
    GaussianRational, MatrixGQ, Subspace, gq, ZERO, ONE, i_power,
    intersect, ssum, conj_space, rank, hermitian_pd, rref,
)


class InconsistentFiltration(ValueError):
    pass


class InadmissibleHodgeNumbers(ValueError):
    pass


class Hr1Prerequisite(ValueError):
    pass


class PolarizationForm:
    """Weight n pairing Q on V, real entries, Q^T = (-1)^n Q, nondegenerate."""

    __slots__ = ("n", "Q")

    def __init__(self, n, Q):
        if n < 0:
            raise ValueError("negative weight")
        if not Q.is_real():
            raise ValueError("polarization must have real entries")
        sign = -1 if n % 2 else 1
        if Q.transpose() != Q.scale(sign):
            raise ValueError("Q parity does not match the weight")
        if rank(Q) != Q.rows:
            raise ValueError("Q is degenerate")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "Q", Q)

    def __setattr__(self, *a):
        raise AttributeError("immutable")

    def pair(self, u, v):
        acc = ZERO
        Mv = self.Q.matvec(v)
        for a, b in zip(u, Mv):
            acc = acc + a * b
        return acc


class HodgeFiltration:
    """Decreasing steps F^n <= ... <= F^0 = V."""

    __slots__ = ("n", "steps")

    def __init__(self, n, steps):
        # steps given as a list [F^0, F^1, ..., F^n]
        if len(steps) != n + 1:
            raise InconsistentFiltration("expected %d steps" % (n + 1))
        dim = steps[0].ambient_dim
        if steps[0] != Subspace.full(dim):
            raise InconsistentFiltration("F^0 must be the full space")
        for p in range(n):
            if not steps[p].contains(steps[p + 1]):
                raise InconsistentFiltration("F^%d does not contain F^%d" % (p, p + 1))
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "steps", tuple(steps))

    def __setattr__(self, *a):
        raise AttributeError("immutable")

    @property
    def ambient_dim(self):
        return self.steps[0].ambient_dim

    def step(self, p):
        """F^p with the usual conventions outside 0..n."""
        if p <= 0:
            return self.steps[0]
        if p > self.n:
            return Subspace.zero(self.ambient_dim)
        return self.steps[p]

    def f_vector(self):
        return tuple(self.steps[p].dim for p in range(self.n + 1))

    def __eq__(self, other):
        if not isinstance(other, HodgeFiltration):
            return NotImplemented
        return self.n == other.n and self.steps == other.steps


class HodgeDatum:
    __slots__ = ("dim", "polarization", "filtration")

    def __init__(self, dim, polarization, filtration):
        if polarization.Q.rows != dim or filtration.ambient_dim != dim:
            raise InconsistentFiltration("dimension mismatch")
        if polarization.n != filtration.n:
            raise InconsistentFiltration("weights disagree")
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "polarization", polarization)
        object.__setattr__(self, "filtration", filtration)

    def __setattr__(self, *a):
        raise AttributeError("immutable")

    @property
    def n(self):
        return self.polarization.n

    def to_json(self):
        return {
            "dim": self.dim,
            "weight": self.n,
            "Q": self.polarization.Q.to_json(),
            "F": {str(p): self.filtration.steps[p].to_json() for p in range(self.n + 1)},
        }

    @staticmethod
    def from_json(obj):
        dim = obj["dim"]
        n = obj["weight"]
        Q = MatrixGQ.from_json(obj["Q"])
        steps = []
        for p in range(n + 1):
            rows = obj["F"].get(str(p))
            if rows is None or (p == 0 and not rows):
                steps.append(Subspace.full(dim))
            elif not rows:
                steps.append(Subspace.zero(dim))
            else:
                steps.append(Subspace(dim, MatrixGQ.from_json(rows)))
        return HodgeDatum(dim, PolarizationForm(n, Q), HodgeFiltration(n, steps))


class HodgeNumbers:
    __slots__ = ("n", "h")

    def __init__(self, n, h):
        h = tuple(int(x) for x in h)
        if len(h) != n + 1:
            raise InadmissibleHodgeNumbers("expected %d entries" % (n + 1))
        if any(x < 0 for x in h):
            raise InadmissibleHodgeNumbers("negative Hodge number")
        if h != tuple(reversed(h)):
            raise InadmissibleHodgeNumbers("h^{p,q} != h^{q,p}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "h", h)

    def __setattr__(self, *a):
        raise AttributeError("immutable")

    def hpq(self, p, q):
        # h is listed h^{n,0}, h^{n-1,1}, ..., h^{0,n}
        if p + q != self.n or p < 0 or q < 0:
            return 0
        return self.h[self.n - p]

    @property
    def dim(self):
        return sum(self.h)

    def __eq__(self, other):
        if not isinstance(other, HodgeNumbers):
            return NotImplemented
        return self.n == other.n and self.h == other.h

    def __repr__(self):
        return "HodgeNumbers(n=%d, h=%s)" % (self.n, self.h)


def hodge_decomposition(d):
    """List of (p, q, V^{p,q} = F^p cap conj F^q) over p+q = n, p = n..0."""
    out = []
    F = d.filtration
    for p in range(d.n, -1, -1):
        q = d.n - p
        out.append((p, q, intersect(F.step(p), conj_space(F.step(q)))))
    return out


def check_hr1(d):
    F = d.filtration
    n = d.n
    dim = d.dim
    for p in range(n + 2):
        Fp = F.step(p)
        Fc = F.step(n - p + 1)
        # isotropy
        for u in Fp.basis.entries:
            for v in Fc.basis.entries:
                if not d.polarization.pair(u, v).is_zero():
                    return False
        # directness of F^p (+) conj F^{n-p+1}
        if Fp.dim + Fc.dim != dim:
            return False
        if intersect(Fp, conj_space(Fc)).dim != 0:
            return False
    return True


def check_isotropy(d):
    """The pairing half of HR1 alone: Q(F^p, F^{n-p+1}) = 0 with complementary
    step dimensions.  Boundary filtrations satisfy this but not directness."""
    F = d.filtration
    n = d.n
    for p in range(n + 2):
        Fp = F.step(p)
        Fc = F.step(n - p + 1)
        if Fp.dim + Fc.dim != d.dim:
            return False
        for u in Fp.basis.entries:
            for v in Fc.basis.entries:
                if not d.polarization.pair(u, v).is_zero():
                    return False
    return True


def _spans(d):
    total = 0
    for _, _, space in hodge_decomposition(d):
        total += space.dim
    return total == d.dim


def check_hr2(d):
    if not check_hr1(d):
        raise Hr1Prerequisite("HR1 fails, decomposition need not span")
    for p, q, space in hodge_decomposition(d):
        if space.dim == 0:
            continue
        basis = space.basis.entries
        c = i_power(p - q)
        H = MatrixGQ(
            [[c * d.polarization.pair(u, tuple(x.conj() for x in v)) for v in basis]
             for u in basis]
        )
        if not hermitian_pd(H):
            return False
    return True


def validate_phs(d):
    """Report {hr1, hr2, spans}; the datum is a PHS iff all three hold."""
    hr1 = check_hr1(d)
    spans = _spans(d)
    if hr1:
        hr2 = check_hr2(d)
    else:
        hr2 = False
    return {"hr1": hr1, "hr2": hr2, "spans": spans}


def is_valid_phs(d):
    r = validate_phs(d)
    return r["hr1"] and r["hr2"] and r["spans"]


def hodge_numbers(d):
    decomp = hodge_decomposition(d)
    h = [0] * (d.n + 1)
    for p, q, space in decomp:
        h[d.n - p] = space.dim
    hn = HodgeNumbers(d.n, h)
    # f^p = sum_{q >= p} h^{q, n-q}
    for p in range(d.n + 1):
        expected = sum(hn.hpq(q, d.n - q) for q in range(p, d.n + 1))
        if d.filtration.steps[p].dim != expected:
            raise InconsistentFiltration("f^%d inconsistent with Hodge numbers" % p)
    return hn


def model_phs(h):
    """Canonical PHS with the given Hodge numbers.

    Basis vectors u^{p,q}_a with conj(u^{p,q}_a) = u^{q,p}_a and Q pairing
    u^{p,q}_a against u^{q,p}_a only; signs arranged so HR2 holds.
    """
    n = h.n
    dim = h.dim
    if dim == 0:
        raise InadmissibleHodgeNumbers("empty structure")
    # allocate real coordinates; record each u^{p,q}_a as a coordinate vector
    u = {}  # (p, q, a) -> vector
    Qent = [[ZERO] * dim for _ in range(dim)]
    idx = 0
    half = Fraction(1, 2)
    for p in range(n, -1, -1):
        q = n - p
        m = h.hpq(p, q)
        if p < q or m == 0:
            continue
        if p == q:
            for a in range(m):
                v = [ZERO] * dim
                v[idx] = ONE
                u[(p, p, a)] = tuple(v)
                Qent[idx][idx] = ONE
                idx += 1
        else:
            for a in range(m):
                x, y = idx, idx + 1
                vp = [ZERO] * dim
                vp[x] = ONE
                vp[y] = GaussianRational(0, 1)
                vq = [ZERO] * dim
                vq[x] = ONE
                vq[y] = GaussianRational(0, -1)
                u[(p, q, a)] = tuple(vp)
                u[(q, p, a)] = tuple(vq)
                c = i_power(q - p)  # the required value of Q(u^{pq}, u^{qp})
                if c.is_real():
                    Qent[x][x] = GaussianRational(c.re * half)
                    Qent[y][y] = GaussianRational(c.re * half)
                else:
                    Qent[y][x] = GaussianRational(c.im * half)
                    Qent[x][y] = GaussianRational(-c.im * half)
                idx += 2
    Q = MatrixGQ(Qent)
    steps = [Subspace.full(dim)]
    for p in range(1, n + 1):
        vecs = [vec for (r, s, a), vec in sorted(u.items()) if r >= p]
        steps.append(Subspace.from_vectors(dim, vecs) if vecs else Subspace.zero(dim))
    datum = HodgeDatum(dim, PolarizationForm(n, Q), HodgeFiltration(n, steps))
    return datum
