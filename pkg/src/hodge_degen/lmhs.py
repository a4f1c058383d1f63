"""Limiting mixed Hodge structures.

Weight filtrations of nilpotent endomorphisms, Deligne splittings, the
nilpotent-orbit validator (weight filtration + induced graded Hodge
structures + (-1,-1) rule + polarized primitives), disc sampling, the
induced structure on g = End(V,Q), reduced limit filtrations, Hodge-Tate
predicates, and the diagonal Levi subalgebra.
"""

from fractions import Fraction

from .gq import (
    GaussianRational, MatrixGQ, Subspace, gq, ZERO, ONE, I as IMAG, i_power,
    intersect, ssum, conj_space, apply_matrix, preimage, kernel, image,
    complement_mod, nilpotent_exp, hermitian_pd, rref, rank, NotNilpotent,
)
from .hodge import (
    HodgeDatum, HodgeFiltration, PolarizationForm, validate_phs,
)


class NotMhs(ValueError):
    pass


class NonRSplit(ValueError):
    pass


class BracketEscape(AssertionError):
    pass


class WeightFiltration:
    """Increasing filtration, stored per level, centered at `center`."""

    __slots__ = ("center", "levels")

    def __init__(self, center, levels):
        # levels: dict level -> Subspace over a contiguous range
        keys = sorted(levels)
        for a, b in zip(keys, keys[1:]):
            if b != a + 1:
                raise ValueError("levels must be contiguous")
            if not levels[b].contains(levels[a]):
                raise ValueError("filtration must be increasing")
        object.__setattr__(self, "center", center)
        object.__setattr__(self, "levels", dict(levels))

    def __setattr__(self, *a):
        raise AttributeError("immutable")

    @property
    def ambient_dim(self):
        return next(iter(self.levels.values())).ambient_dim

    @property
    def min_level(self):
        return min(self.levels)

    @property
    def max_level(self):
        return max(self.levels)

    def level(self, k):
        if k < self.min_level:
            return Subspace.zero(self.ambient_dim)
        if k > self.max_level:
            return self.levels[self.max_level]
        return self.levels[k]

    def gr_dim(self, k):
        return self.level(k).dim - self.level(k - 1).dim

    def __eq__(self, other):
        if not isinstance(other, WeightFiltration):
            return NotImplemented
        if self.center != other.center:
            return False
        lo = min(self.min_level, other.min_level)
        hi = max(self.max_level, other.max_level)
        return all(self.level(k) == other.level(k) for k in range(lo, hi + 1))


def weight_filtration(N, center):
    """Monodromy weight filtration of a nilpotent N, centered at `center`.

    Uses W_k = sum_j ker(N^{k+j+1}) cap im(N^j) (centered at 0), then checks
    the two defining properties.
    """
    dim = N.rows
    if not N.power(dim).is_zero():
        raise NotNilpotent("weight filtration needs a nilpotent input")
    deg = 1
    while not N.power(deg).is_zero():
        deg += 1
    d = deg - 1  # N^(d+1) = 0, N^d != 0

    kers = {}
    ims = {}
    for j in range(0, deg + 1):
        kers[j] = kernel(N.power(j)) if j > 0 else Subspace.zero(dim)
        ims[j] = image(N.power(j))

    def ker_at(j):
        if j <= 0:
            return Subspace.zero(dim)
        return kers[min(j, deg)]

    def im_at(j):
        if j <= 0:
            return Subspace.full(dim)
        if j >= deg:
            return Subspace.zero(dim)
        return ims[j]

    levels = {}
    for k in range(-d, d + 1):
        acc = Subspace.zero(dim)
        for j in range(0, deg + 1):
            term = intersect(ker_at(k + j + 1), im_at(j))
            if term.dim:
                acc = ssum(acc, term)
        levels[center + k] = acc
    W = WeightFiltration(center, levels)
    # defining properties
    for k in range(-d, d + 1):
        if not W.level(center + k - 2).contains(apply_matrix(N, W.level(center + k))):
            raise AssertionError("N W_k not inside W_{k-2}")
    for k in range(0, d + 1):
        if W.gr_dim(center + k) != W.gr_dim(center - k):
            raise AssertionError("graded dims not symmetric")
        up = W.level(center + k)
        lowtarget = ssum(apply_matrix(N.power(k), up), W.level(center - k - 1))
        if lowtarget != W.level(center - k):
            raise AssertionError("N^k not onto Gr_{-k}")
    return W


class LmhsDatum:
    """(V, Q, F) plus a real nilpotent N and its weight filtration."""

    __slots__ = ("hodge", "N", "W")

    def __init__(self, hodge, N, W=None):
        dim = hodge.dim
        if N.rows != dim or N.cols != dim:
            raise ValueError("N has wrong shape")
        if not N.is_real():
            raise ValueError("N must be real")
        if not N.power(dim).is_zero():
            raise NotNilpotent("N must be nilpotent")
        Q = hodge.polarization.Q
        if not (Q * N + N.transpose() * Q).is_zero():
            raise ValueError("N is not in End(V, Q)")
        F = hodge.filtration
        for p in range(1, hodge.n + 1):
            if not F.step(p - 1).contains(apply_matrix(N, F.step(p))):
                raise ValueError("N F^%d not inside F^%d" % (p, p - 1))
        if W is None:
            W = weight_filtration(N, hodge.n)
        object.__setattr__(self, "hodge", hodge)
        object.__setattr__(self, "N", N)
        object.__setattr__(self, "W", W)

    def __setattr__(self, *a):
        raise AttributeError("immutable")

    @property
    def dim(self):
        return self.hodge.dim

    @property
    def n(self):
        return self.hodge.n

    @property
    def center(self):
        return self.W.center

    def to_json(self):
        obj = self.hodge.to_json()
        obj["N"] = self.N.to_json()
        obj["W"] = {str(k): self.W.levels[k].to_json() for k in sorted(self.W.levels)}
        return obj

    @staticmethod
    def from_json(obj):
        hodge = HodgeDatum.from_json(obj)
        N = MatrixGQ.from_json(obj["N"])
        W = None
        if "W" in obj and obj["W"]:
            dim = hodge.dim
            levels = {}
            for k, rows in obj["W"].items():
                if rows:
                    levels[int(k)] = Subspace(dim, MatrixGQ.from_json(rows))
                else:
                    levels[int(k)] = Subspace.zero(dim)
            W = WeightFiltration(hodge.n, levels)
        return LmhsDatum(hodge, N, W)


class Bigrading:
    """Finite collection of bigraded pieces that sum directly to the ambient space."""

    __slots__ = ("ambient_dim", "nodes")

    def __init__(self, ambient_dim, nodes, check_direct=True):
        nodes = [(p, q, s) for (p, q, s) in nodes if s.dim > 0]
        nodes.sort(key=lambda t: (t[0], t[1]))
        if check_direct:
            total = Subspace.zero(ambient_dim)
            count = 0
            for _, _, s in nodes:
                total = ssum(total, s)
                count += s.dim
            if total.dim != count:
                raise NotMhs("pieces are not in direct sum")
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "nodes", tuple(nodes))

    def __setattr__(self, *a):
        raise AttributeError("immutable")

    def dims(self):
        return {(p, q): s.dim for p, q, s in self.nodes}

    def piece(self, p, q):
        for a, b, s in self.nodes:
            if (a, b) == (p, q):
                return s
        return Subspace.zero(self.ambient_dim)

    def total(self):
        return sum(s.dim for _, _, s in self.nodes)

    def triples(self):
        return sorted([p, q, s.dim] for p, q, s in self.nodes)


def deligne_splitting(L):
    """The canonical splitting I^{p,q} of an LMHS, by the standard formula."""
    F = L.hodge.filtration
    W = L.W
    n = L.n
    c = L.center
    dim = L.dim
    nodes = []
    for p in range(n + 1):
        for q in range(n + 1):
            lev = c - n + p + q  # weight level of I^{p,q} relative to W's center
            A = intersect(F.step(p), W.level(lev))
            if A.dim == 0:
                continue
            B = intersect(conj_space(F.step(q)), W.level(lev))
            j = 1
            while True:
                lower = W.level(lev - j - 1)
                if lower.dim == 0 and q - j < 0:
                    break
                term = intersect(conj_space(F.step(q - j)), lower)
                if term.dim:
                    B = ssum(B, term)
                if lower.dim == 0:
                    break
                j += 1
            piece = intersect(A, B)
            if piece.dim:
                nodes.append((p, q, piece))
    bg = Bigrading(dim, nodes)
    _check_reconstruction(L, bg)
    return bg


def _check_reconstruction(L, bg):
    dim = L.dim
    if bg.total() != dim:
        raise NotMhs("splitting does not span")
    c, n = L.center, L.n
    # W_k = sum of pieces with weight level <= k
    for k in range(L.W.min_level, L.W.max_level + 1):
        acc = Subspace.zero(dim)
        for p, q, s in bg.nodes:
            if c - n + p + q <= k:
                acc = ssum(acc, s)
        if acc != L.W.level(k):
            raise NotMhs("weight filtration not recovered at level %d" % k)
    for p0 in range(n + 1):
        acc = Subspace.zero(dim)
        for p, q, s in bg.nodes:
            if p >= p0:
                acc = ssum(acc, s)
        if acc != L.hodge.filtration.step(p0):
            raise NotMhs("Hodge filtration not recovered at step %d" % p0)


def deligne_splitting_fast(L):
    """R-split shortcut I^{p,q} = F^p cap conj F^q cap W_{p+q}; no validity checks."""
    F = L.hodge.filtration
    nodes = []
    for p in range(L.n + 1):
        for q in range(L.n + 1):
            lev = L.center - L.n + p + q
            s = intersect(intersect(F.step(p), conj_space(F.step(q))), L.W.level(lev))
            if s.dim:
                nodes.append((p, q, s))
    return Bigrading(L.dim, nodes, check_direct=False)


def is_r_split(bg):
    for p, q, s in bg.nodes:
        if conj_space(s) != bg.piece(q, p):
            return False
    return True


def is_hodge_tate(bg_or_dims):
    if isinstance(bg_or_dims, Bigrading):
        dims = bg_or_dims.dims()
    else:
        dims = bg_or_dims
    return all(p == q for (p, q), d in dims.items() if d)


def epsilon_k(k):
    # Sign normalization of the twisted pairings Q_k.  With the conventions
    # used by the constructors in this package the polarization direction on
    # every primitive piece comes out positive with no extra sign.
    return 1


def qk_form(L, k):
    """Gram matrix of Q_k(v, w) = eps_k Q(v, N^k w) on a lift of Gr_{center+k}."""
    assert k >= 0
    lift = complement_mod(L.W.level(L.center + k), L.W.level(L.center + k - 1))
    Nk = L.N.power(k)
    eps = gq(epsilon_k(k))
    rows = []
    for u in lift.basis.entries:
        rows.append([eps * L.hodge.polarization.pair(u, Nk.matvec(v))
                     for v in lift.basis.entries])
    return MatrixGQ(rows) if rows else MatrixGQ.zero(0, 0)


def primitives(L):
    """Primitive subspaces, one lift per k >= 0.

    Gr_{c+k,prim} = ker(N^{k+1}: Gr_{c+k} -> Gr_{c-k-2}); returned as the
    canonical lift inside W_{c+k} (rows reduced against W_{c+k-1}).
    """
    c = L.center
    out = []
    kmax = L.W.max_level - c
    for k in range(0, kmax + 1):
        upstairs = L.W.level(c + k)
        target = L.W.level(c - k - 3)
        S = intersect(upstairs, preimage(L.N.power(k + 1), target))
        P = complement_mod(S, L.W.level(c + k - 1))
        out.append((k, P))
    return out


def _primitive_pieces(L, bg):
    """Per level k: pieces I^{p,q} cap ker N^{k+1} with p+q-n = k (centered)."""
    c, n = L.center, L.n
    out = {}
    kmax = L.W.max_level - c
    for k in range(0, kmax + 1):
        ker_k = kernel(L.N.power(k + 1))
        pieces = []
        for p, q, s in bg.nodes:
            if (c - n + p + q) - c != k:
                continue
            piece = intersect(s, ker_k)
            if piece.dim:
                pieces.append((p, q, piece))
        out[k] = pieces
    return out


def validate_lmhs(L):
    """Nilpotent-orbit certificate, one clause per requirement.

    (a) W is the weight filtration of N
    (b) F induces a Hodge structure on each graded piece
    (c) N has type (-1,-1) for the splitting
    (d) the twisted pairings polarize the primitive pieces
    """
    report = {}
    try:
        Wcomp = weight_filtration(L.N, L.center)
        report["weight_filtration"] = (L.W == Wcomp)
    except AssertionError as e:
        report["weight_filtration"] = False
    try:
        bg = deligne_splitting(L)
    except NotMhs as e:
        report["graded_hodge"] = False
        report["minus_one_minus_one"] = False
        report["polarized_primitives"] = False
        report["error"] = str(e)
        report["ok"] = False
        return report

    # (b): each graded level decomposes, with conjugation symmetry mod lower weight
    okb = True
    c, n = L.center, L.n
    for p, q, s in bg.nodes:
        lower = L.W.level(c - n + p + q - 1)
        target = ssum(bg.piece(q, p), lower) if lower.dim else bg.piece(q, p)
        if not target.contains(conj_space(s)):
            okb = False
    report["graded_hodge"] = okb

    okc = all(bg.piece(p - 1, q - 1).contains(apply_matrix(L.N, s))
              for p, q, s in bg.nodes)
    report["minus_one_minus_one"] = okc

    okd = True
    prim = _primitive_pieces(L, bg)
    Qp = L.hodge.polarization
    for k, pieces in prim.items():
        Nk = L.N.power(k)
        eps = gq(epsilon_k(k))
        for p, q, s in pieces:
            # orthogonality against the other primitive pieces of this level
            for r, t, s2 in pieces:
                if (r, t) == (p, q):
                    continue
                for u in s.basis.entries:
                    for v in s2.basis.entries:
                        val = eps * Qp.pair(u, Nk.matvec(tuple(x.conj() for x in v)))
                        if not val.is_zero():
                            okd = False
            coef = i_power(p - q)
            H = MatrixGQ(
                [[coef * eps * Qp.pair(u, Nk.matvec(tuple(x.conj() for x in v)))
                  for v in s.basis.entries] for u in s.basis.entries]
            )
            if H.rows and not (H == H.conj_transpose() and hermitian_pd(H)):
                okd = False
    report["polarized_primitives"] = okd
    report["ok"] = report["weight_filtration"] and okb and okc and okd
    return report


def disc_sample(L, ys):
    """Check that e^{iyN} F is a polarized Hodge structure at each sampled y > 0."""
    out = {"ok": True, "samples": []}
    n = L.n
    for y in ys:
        E = nilpotent_exp(L.N, GaussianRational(0, Fraction(y)))
        steps = [Subspace.full(L.dim)]
        for p in range(1, n + 1):
            steps.append(apply_matrix(E, L.hodge.filtration.step(p)))
        moved = HodgeDatum(L.dim, L.hodge.polarization, HodgeFiltration(n, steps))
        rep = validate_phs(moved)
        good = rep["hr1"] and rep["hr2"] and rep["spans"]
        out["samples"].append({"y": str(y), "ok": good, "clauses": rep})
        if not good:
            out["ok"] = False
    return out


class AdjointLmhs:
    """Induced limiting mixed Hodge structure on g = End(V, Q).

    Everything is expressed in coordinates over g_basis; the bigrading, the
    filtrations and the trace form live on that coordinate space.
    """

    __slots__ = ("g_basis", "I_g", "W_g", "F_g", "killing_proxy", "N_coords",
                 "N_ad", "dimV")

    def __init__(self, g_basis, I_g, W_g, F_g, killing_proxy, N_coords, N_ad, dimV):
        for name, val in (("g_basis", g_basis), ("I_g", I_g), ("W_g", W_g),
                          ("F_g", F_g), ("killing_proxy", killing_proxy),
                          ("N_coords", N_coords), ("N_ad", N_ad), ("dimV", dimV)):
            object.__setattr__(self, name, val)

    def __setattr__(self, *a):
        raise AttributeError("immutable")

    @property
    def dim_g(self):
        return len(self.g_basis)

    def matrix_of(self, coords):
        M = MatrixGQ.zero(self.dimV, self.dimV)
        for c, B in zip(coords, self.g_basis):
            if not gq(c).is_zero():
                M = M + B.scale(c)
        return M


def _solve_block_elements(Qp, blocks, sizes, offsets, dim):
    """Elements xi of End with the given block support and Q xi + xi^T Q = 0.

    blocks: list of (target_node, source_node) index pairs; unknowns are the
    entries of those blocks in the I-adapted basis.  Returns a list of
    full dim x dim matrices (in the adapted basis).
    """
    unknowns = []  # (row, col) in the adapted basis
    for tgt, src in blocks:
        for a in range(sizes[tgt]):
            for b in range(sizes[src]):
                unknowns.append((offsets[tgt] + a, offsets[src] + b))
    if not unknowns:
        return []
    pos = {rc: idx for idx, rc in enumerate(unknowns)}
    rows = []
    # constraint (Q xi)_{ab} + (xi^T Q)_{ab} = 0; only equations touching unknowns
    touched_rows = {rc[0] for rc in unknowns}
    touched = set()
    for (r, ccol) in unknowns:
        for a in range(dim):
            if not Qp[a, r].is_zero():
                touched.add((a, ccol))
        for b in range(dim):
            if not Qp[r, b].is_zero():
                touched.add((ccol, b))
    for (a, b) in sorted(touched):
        row = [ZERO] * len(unknowns)
        hit = False
        for c in range(dim):
            if (c, b) in pos and not Qp[a, c].is_zero():
                row[pos[(c, b)]] = row[pos[(c, b)]] + Qp[a, c]
                hit = True
            if (c, a) in pos and not Qp[c, b].is_zero():
                row[pos[(c, a)]] = row[pos[(c, a)]] + Qp[c, b]
                hit = True
        if hit:
            rows.append(row)
    if rows:
        sols = kernel(MatrixGQ(rows))
        vecs = sols.basis.entries
    else:
        vecs = MatrixGQ.identity(len(unknowns)).entries
    mats = []
    for v in vecs:
        ent = [[ZERO] * dim for _ in range(dim)]
        for val, (r, ccol) in zip(v, unknowns):
            ent[r][ccol] = val
        mats.append(MatrixGQ(ent))
    return mats


def _invert(M):
    n = M.rows
    aug = [list(row) + list(MatrixGQ.identity(n).entries[i])
           for i, row in enumerate(M.entries)]
    R = rref(MatrixGQ(aug))
    if R.rows != n:
        raise ValueError("matrix not invertible")
    return MatrixGQ([row[n:] for row in R.entries])


def adjoint_lmhs(L, g_basis=None):
    """Bigrading, filtrations and trace form induced on g = End(V, Q).

    When g_basis is supplied, the computation is restricted to its span
    (which must be a Q-compatible subalgebra containing N).
    """
    bg = deligne_splitting(L)
    if not is_r_split(bg):
        raise NonRSplit("adjoint induction implemented for R-split data only")
    dim = L.dim
    c, n = L.center, L.n
    node_list = [(p, q) for p, q, _ in bg.nodes]
    sizes = {}
    offsets = {}
    cols = []
    off = 0
    for p, q, s in bg.nodes:
        sizes[(p, q)] = s.dim
        offsets[(p, q)] = off
        off += s.dim
        cols.extend(s.basis.entries)
    P = MatrixGQ(cols).transpose()  # columns are the adapted basis
    Pinv = _invert(P)
    Qp = P.transpose() * L.hodge.polarization.Q * P  # form in the adapted basis

    # candidate bidegrees for nonzero I^{p,q}_g
    deltas = sorted({(p2 - p1, q2 - q1) for p1, q1 in node_list for p2, q2 in node_list})
    pieces = []  # (p, q, [matrices in original basis])
    for dp, dq in deltas:
        blocks = []
        for src in node_list:
            tgt = (src[0] + dp, src[1] + dq)
            if tgt in sizes:
                blocks.append((tgt, src))
        mats_adapted = _solve_block_elements(Qp, blocks, sizes, offsets, dim)
        if mats_adapted:
            mats = [P * M * Pinv for M in mats_adapted]
            pieces.append((dp, dq, mats))

    if g_basis is not None:
        span = Subspace.from_vectors(dim * dim, [B.flatten() for B in g_basis])
        restricted = []
        for p, q, mats in pieces:
            sub = intersect(
                Subspace.from_vectors(dim * dim, [M.flatten() for M in mats]), span)
            if sub.dim:
                restricted.append(
                    (p, q, [MatrixGQ([v[i * dim:(i + 1) * dim] for i in range(dim)])
                            for v in sub.basis.entries]))
        pieces = restricted

    basis = []
    coord_nodes = []
    pos = 0
    for p, q, mats in pieces:
        basis.extend(mats)
        coord_nodes.append((p, q, pos, len(mats)))
        pos += len(mats)
    t = len(basis)

    def coord_subspace(selector):
        vecs = []
        for p, q, start, count in coord_nodes:
            if selector(p, q):
                for i in range(count):
                    v = [ZERO] * t
                    v[start + i] = ONE
                    vecs.append(v)
        return Subspace.from_vectors(t, vecs) if vecs else Subspace.zero(t)

    I_nodes = []
    for p, q, start, count in coord_nodes:
        I_nodes.append((p, q, coord_subspace(lambda a, b, p=p, q=q: (a, b) == (p, q))))
    I_g = Bigrading(t, I_nodes, check_direct=False)

    degs = sorted({p + q for p, q, _, _ in coord_nodes})
    lo, hi = (min(degs), max(degs)) if degs else (0, 0)
    W_levels = {k: coord_subspace(lambda a, b, k=k: a + b <= k) for k in range(lo, hi + 1)}
    W_g = WeightFiltration(0, W_levels)
    ps = sorted({p for p, q, _, _ in coord_nodes}) or [0]
    F_g = {p0: coord_subspace(lambda a, b, p0=p0: a >= p0)
           for p0 in range(min(ps), max(ps) + 1)}

    killing = MatrixGQ([[ (Bi * Bj).trace() for Bj in basis] for Bi in basis])

    flat = Subspace.from_vectors(dim * dim, [B.flatten() for B in basis])
    if not flat.contains_vector(L.N.flatten()):
        raise NotMhs("N does not lie in the computed algebra")
    # coordinates of N over the basis
    coeff = _solve_coords(basis, L.N, dim)
    # N must sit in bidegree (-1,-1)
    m1 = I_g.piece(-1, -1)
    if not m1.contains_vector(coeff):
        raise NotMhs("N is not of type (-1,-1) in the adjoint bigrading")

    # ad(N) in g-coordinates
    ad_cols = []
    for B in basis:
        br = L.N * B - B * L.N
        ad_cols.append(_solve_coords(basis, br, dim))
    N_ad = MatrixGQ(ad_cols).transpose()
    return AdjointLmhs(basis, I_g, W_g, F_g, killing, coeff, N_ad, dim)


def _solve_coords(basis, M, dim):
    """Coordinates of M over a linearly independent list of matrices."""
    cols = MatrixGQ([list(B.flatten()) for B in basis]).transpose()
    aug = MatrixGQ([list(row) + [v] for row, v in
                    zip(cols.entries, M.flatten())])
    R = rref(aug)
    t = len(basis)
    coords = [ZERO] * t
    for row in R.entries:
        piv = next(j for j, e in enumerate(row) if not e.is_zero())
        if piv == t:
            raise ValueError("matrix outside the span")
        coords[piv] = row[t]
    return tuple(coords)


def reduced_limit(bg, n):
    """Limit filtration F_inf^p = (+)_{q <= n-p} I^{.,q} of an R-split splitting."""
    if not is_r_split(bg):
        raise NonRSplit("reduced limit needs an R-split splitting")
    dim = bg.ambient_dim
    steps = [Subspace.full(dim)]
    for p in range(1, n + 1):
        acc = Subspace.zero(dim)
        for _, q, s in bg.nodes:
            if q <= n - p:
                acc = ssum(acc, s)
        steps.append(acc)
    return HodgeFiltration(n, steps)


def diagonal_levi(a):
    """The conjugation-stable Levi s = (+)_p I^{p,p}_g, with its induced LMHS.

    Returns (s_basis, datum) where datum is an LmhsDatum on the coordinate
    space of s (weight shifted to keep filtration indices nonnegative).  The
    induced splitting is asserted Hodge-Tate and N is asserted to lie in s.
    """
    diag_nodes = [(p, q, s) for p, q, s in a.I_g.nodes if p == q]
    t = a.dim_g
    coords = []
    for _, _, s in diag_nodes:
        coords.extend(s.basis.entries)
    s_coord_span = Subspace.from_vectors(t, coords) if coords else Subspace.zero(t)
    s_basis = [a.matrix_of(v) for v in s_coord_span.basis.entries]
    ts = len(s_basis)
    dim = a.dimV

    flat = Subspace.from_vectors(dim * dim, [B.flatten() for B in s_basis])
    for Bi in s_basis:
        for Bj in s_basis:
            br = Bi * Bj - Bj * Bi
            if not flat.contains_vector(br.flatten()):
                raise BracketEscape("[s, s] escapes s")
        if not flat.contains_vector(Bi.conj().flatten()):
            raise BracketEscape("s is not conjugation stable")
    if not flat.contains_vector(a.matrix_of(a.N_coords).flatten()):
        raise BracketEscape("N escapes the diagonal Levi")

    # induced data in s-coordinates
    ps = sorted({p for p, q, s in diag_nodes})
    r = max(abs(p) for p in ps) if ps else 0
    n_s = 2 * r
    Nmat = a.matrix_of(a.N_coords)

    def s_coords(M):
        return _solve_coords(s_basis, M, dim)

    ad_cols = [s_coords(Nmat * B - B * Nmat) for B in s_basis]
    N_s = MatrixGQ(ad_cols).transpose()

    # subspaces of the s-coordinate space from g-coordinate subspaces
    def to_s(sub_g):
        vecs = []
        for v in sub_g.basis.entries:
            M = a.matrix_of(v)
            if flat.contains_vector(M.flatten()):
                vecs.append(s_coords(M))
        return Subspace.from_vectors(ts, vecs) if vecs else Subspace.zero(ts)

    steps = [Subspace.full(ts)]
    for p0 in range(1, n_s + 1):
        want = p0 - r
        acc_vecs = []
        for p, q, sub in diag_nodes:
            if p >= want:
                piece = to_s(sub)
                acc_vecs.extend(piece.basis.entries)
        steps.append(Subspace.from_vectors(ts, acc_vecs)
                     if acc_vecs else Subspace.zero(ts))
    F_s = HodgeFiltration(n_s, steps)
    tracef = MatrixGQ([[(Bi * Bj).trace() for Bj in s_basis] for Bi in s_basis]).scale(-1)
    hodge = HodgeDatum(ts, PolarizationForm(n_s, tracef), F_s)
    datum = LmhsDatum(hodge, N_s)
    split = deligne_splitting(datum)
    if not is_hodge_tate(split):
        raise BracketEscape("induced diagonal-Levi structure is not Hodge-Tate")
    return s_basis, datum
