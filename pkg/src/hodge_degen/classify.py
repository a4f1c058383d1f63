"""Classifiers and constructors for extremal degenerations.

Minimal (codimension-one) degeneration types with explicit low-rank
witnesses; the Hodge-Tate feasibility gate and atomic-block constructor;
closed-orbit constraint checkers; principal-nilpotent limiting structures
for the classical families.
"""

from fractions import Fraction

from .gq import GaussianRational, MatrixGQ, Subspace, gq, ZERO, ONE, rank
from .hodge import (
    HodgeDatum, HodgeFiltration, PolarizationForm, HodgeNumbers, model_phs,
    InadmissibleHodgeNumbers,
)
from .lmhs import LmhsDatum, Bigrading, deligne_splitting, validate_lmhs, is_hodge_tate


class InfeasibleType(ValueError):
    pass


class GateFailed(ValueError):
    pass


class ParityViolation(ValueError):
    pass


class OddWeightNonHT(ValueError):
    pass


class MinimalType:
    """One admissible minimal degeneration: kind I (2-strings) or II (3-string)."""

    __slots__ = ("kind", "p_o", "q_o", "i_table")

    def __init__(self, kind, p_o, q_o, i_table):
        i_table = {k: v for k, v in i_table.items() if v}
        for (p, q), v in i_table.items():
            if v < 0:
                raise InfeasibleType("negative multiplicity at (%d, %d)" % (p, q))
            if i_table.get((q, p), 0) != v:
                raise InfeasibleType("i-table not symmetric")
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "p_o", p_o)
        object.__setattr__(self, "q_o", q_o)
        object.__setattr__(self, "i_table", i_table)

    def __setattr__(self, *a):
        raise AttributeError("immutable")

    def nodes(self):
        return sorted(self.i_table)

    def triples(self):
        return sorted([p, q, d] for (p, q), d in self.i_table.items())

    def __repr__(self):
        return "MinimalType(%s, p_o=%s, q_o=%s)" % (self.kind, self.p_o, self.q_o)


def _kind1_table(n, h, p_o, q_o):
    t = {}
    for p in range(n + 1):
        if h.hpq(p, n - p):
            t[(p, n - p)] = h.hpq(p, n - p)
    t[(p_o, q_o)] = t.get((p_o, q_o), 0) - 1
    t[(p_o + 1, q_o - 1)] = t.get((p_o + 1, q_o - 1), 0) - 1
    t[(p_o + 1, q_o)] = t.get((p_o + 1, q_o), 0) + 1
    t[(p_o, q_o - 1)] = t.get((p_o, q_o - 1), 0) + 1
    if p_o + 1 != q_o:
        # the conjugate 2-string
        t[(q_o, p_o)] = t.get((q_o, p_o), 0) - 1
        t[(q_o - 1, p_o + 1)] = t.get((q_o - 1, p_o + 1), 0) - 1
        t[(q_o, p_o + 1)] = t.get((q_o, p_o + 1), 0) + 1
        t[(q_o - 1, p_o)] = t.get((q_o - 1, p_o), 0) + 1
    return t


def _kind2_table(n, h):
    m = n // 2
    t = {}
    for p in range(n + 1):
        if h.hpq(p, n - p):
            t[(p, n - p)] = h.hpq(p, n - p)
    t[(m - 1, m + 1)] = t.get((m - 1, m + 1), 0) - 1
    t[(m + 1, m - 1)] = t.get((m + 1, m - 1), 0) - 1
    t[(m + 1, m + 1)] = t.get((m + 1, m + 1), 0) + 1
    t[(m - 1, m - 1)] = t.get((m - 1, m - 1), 0) + 1
    return t


def minimal_types(n, h):
    """All minimal degeneration types admissible for weight n Hodge numbers h."""
    out = []
    for p_o in range((n + 1) // 2):
        q_o = n - p_o
        if p_o >= q_o:
            continue
        if h.hpq(p_o, q_o) < 1:
            continue
        # the second string class must exist too
        if q_o - p_o == 2:
            if h.hpq(p_o + 1, q_o - 1) < 2:
                continue
        elif q_o - p_o > 2:
            if h.hpq(p_o + 1, q_o - 1) < 1:
                continue
        out.append(MinimalType("I", p_o, q_o, _kind1_table(n, h, p_o, q_o)))
    if n % 2 == 0:
        m = n // 2
        if h.hpq(m, m) % 2 == 1 and h.hpq(m - 1, m + 1) >= 1:
            out.append(MinimalType("II", m - 1, m + 1, _kind2_table(n, h)))
    return out


def _direct_sum(n, blocks):
    """Assemble an LmhsDatum from (Q, N, steps) blocks; steps = [F^0..F^n] row lists."""
    dim = sum(Q.rows for Q, _, _ in blocks)
    Qent = [[ZERO] * dim for _ in range(dim)]
    Nent = [[ZERO] * dim for _ in range(dim)]
    steps_rows = [[] for _ in range(n + 1)]
    off = 0
    for Q, N, steps in blocks:
        d = Q.rows
        for i in range(d):
            for j in range(d):
                Qent[off + i][off + j] = Q[i, j]
                Nent[off + i][off + j] = N[i, j]
        for p in range(n + 1):
            for row in steps[p]:
                steps_rows[p].append([ZERO] * off + list(row) + [ZERO] * (dim - off - d))
        off += d
    F = [Subspace.full(dim)]
    for p in range(1, n + 1):
        F.append(Subspace.from_vectors(dim, steps_rows[p])
                 if steps_rows[p] else Subspace.zero(dim))
    hodge = HodgeDatum(dim, PolarizationForm(n, MatrixGQ(Qent)),
                       HodgeFiltration(n, F))
    return LmhsDatum(hodge, MatrixGQ(Nent))


def _phs_block(h):
    datum = model_phs(h)
    steps = [[list(r) for r in datum.filtration.steps[p].basis.entries]
             for p in range(h.n + 1)]
    Z = MatrixGQ.zero(datum.dim, datum.dim)
    return (datum.polarization.Q, Z, steps)


def _string2_real(n, top):
    # v in I^{top,top}, Nv in I^{top-1,top-1}; Q(v, Nv) = 1, weight n odd
    Q = MatrixGQ([[ZERO, ONE], [gq(-1), ZERO]])
    N = MatrixGQ([[ZERO, ZERO], [ONE, ZERO]])
    steps = []
    for p in range(n + 1):
        rows = []
        if p <= top:
            rows.append([ONE, ZERO])
        if p <= top - 1:
            rows.append([ZERO, ONE])
        steps.append(rows)
    return (Q, N, steps)


def _string2_pair(n, p_o, q_o, sign):
    # basis x, y, u = Nx, w = Ny; alpha = x + iy in I^{p_o+1, q_o}
    half = Fraction(1, 2)
    if n % 2:
        a, c = GaussianRational(sign * half), ZERO
    else:
        a, c = ZERO, GaussianRational(sign * half)
    eps = gq((-1) ** n)
    Qe = [[ZERO] * 4 for _ in range(4)]
    Qe[0][2], Qe[1][3], Qe[1][2], Qe[0][3] = a, a, c, ZERO - c
    Qe[2][0], Qe[3][1] = eps * a, eps * a
    Qe[2][1], Qe[3][0] = eps * c, eps * (ZERO - c)
    Ne = [[ZERO] * 4 for _ in range(4)]
    Ne[2][0] = ONE
    Ne[3][1] = ONE
    i = GaussianRational(0, 1)
    alpha = (ONE, i, ZERO, ZERO)
    alphabar = (ONE, ZERO - i, ZERO, ZERO)
    nalpha = (ZERO, ZERO, ONE, i)
    nalphabar = (ZERO, ZERO, ONE, ZERO - i)
    levels = [(alpha, p_o + 1), (alphabar, q_o), (nalpha, p_o), (nalphabar, q_o - 1)]
    steps = []
    for p in range(n + 1):
        steps.append([list(v) for v, top in levels if p <= top])
    return (MatrixGQ(Qe), MatrixGQ(Ne), steps)


def _string3_real(n):
    # v, Nv, N^2v with v in I^{m+1,m+1}; Q(v, N^2 v) = 1, Q(Nv, Nv) = -1
    m = n // 2
    Q = MatrixGQ([[ZERO, ZERO, ONE], [ZERO, gq(-1), ZERO], [ONE, ZERO, ZERO]])
    Ne = [[ZERO] * 3 for _ in range(3)]
    Ne[1][0] = ONE
    Ne[2][1] = ONE
    N = MatrixGQ(Ne)
    tops = [m + 1, m, m - 1]
    steps = []
    for p in range(n + 1):
        rows = []
        for i, top in enumerate(tops):
            if p <= top:
                row = [ZERO] * 3
                row[i] = ONE
                rows.append(row)
        steps.append(rows)
    return (Q, N, steps)


def minimal_witness(t, n, h):
    """Explicit LMHS realizing a minimal type: low-rank string block + pure rest."""
    if t.triples() not in [u.triples() for u in minimal_types(n, h)]:
        raise InfeasibleType("type not admissible for these Hodge numbers")
    residual = list(h.h)

    def take(p, q, count=1):
        residual[n - p] -= count
        if residual[n - p] < 0:
            raise InfeasibleType("not enough classes in V^{%d,%d}" % (p, q))

    blocks = []
    if t.kind == "II":
        m = n // 2
        take(m - 1, m + 1)
        take(m + 1, m - 1)
        take(m, m)
        blocks.append(_string3_real(n))
    elif t.q_o == t.p_o + 1:
        take(t.p_o, t.q_o)
        take(t.q_o, t.p_o)
        blocks.append(_string2_real(n, t.q_o))
    else:
        take(t.p_o, t.q_o)
        take(t.q_o, t.p_o)
        take(t.p_o + 1, t.q_o - 1)
        take(t.q_o - 1, t.p_o + 1)
        # the HR sign depends on the weight and (p_o, q_o); try both
        last_err = None
        for sign in (1, -1):
            cand = blocks + [_string2_pair(n, t.p_o, t.q_o, sign)]
            if sum(residual):
                cand.append(_phs_block(HodgeNumbers(n, residual)))
            L = _direct_sum(n, cand)
            if validate_lmhs(L)["ok"]:
                _check_witness(L, t)
                return L
        raise InfeasibleType("no polarizable sign choice")
    if sum(residual):
        blocks.append(_phs_block(HodgeNumbers(n, residual)))
    L = _direct_sum(n, blocks)
    if not validate_lmhs(L)["ok"]:
        raise InfeasibleType("witness fails the nilpotent-orbit certificate")
    _check_witness(L, t)
    return L


def _check_witness(L, t):
    dims = deligne_splitting(L).dims()
    if dims != t.i_table:
        raise InfeasibleType("witness splitting %s != table %s" % (dims, t.i_table))


class HtPlan:
    """Multiplicities of the atomic string blocks realizing a Hodge-Tate limit."""

    __slots__ = ("n", "d")

    def __init__(self, n, d):
        m = n // 2
        d = tuple(int(x) for x in d)
        if len(d) != m + 1:
            raise ValueError("expected %d multiplicities" % (m + 1))
        if any(x < 0 for x in d):
            raise GateFailed("negative atomic multiplicity")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "d", d)

    def __setattr__(self, *a):
        raise AttributeError("immutable")


def ht_gate(n, h):
    """h^{n,0} <= h^{n-1,1} <= ... <= h^{n-m,m}."""
    m = n // 2
    vals = [h.hpq(n - k, k) for k in range(m + 1)]
    return all(a <= b for a, b in zip(vals, vals[1:]))


def ht_plan(n, h):
    if not ht_gate(n, h):
        raise GateFailed("Hodge numbers do not pass the monotone gate")
    m = n // 2
    d = [h.hpq(n, 0)]
    for k in range(1, m + 1):
        d.append(h.hpq(n - k, k) - h.hpq(n - k + 1, k - 1))
    return HtPlan(n, d)


def atomic_block(n, k, d=1):
    """String block V_{k,d}: d strings e^{n-k} -> ... -> e^k, anti-diagonal Q."""
    levels = list(range(k, n - k + 1))
    dim = len(levels) * d

    def idx(s, a):
        return (s - k) * d + a

    Ne = [[ZERO] * dim for _ in range(dim)]
    Qe = [[ZERO] * dim for _ in range(dim)]
    for s in levels:
        for a in range(d):
            if s - 1 >= k:
                Ne[idx(s - 1, a)][idx(s, a)] = ONE
            if k <= n - s <= n - k:
                Qe[idx(s, a)][idx(n - s, a)] = gq((-1) ** (n - k - s))
    steps = []
    for p in range(n + 1):
        rows = []
        for s in levels:
            if s >= p:
                for a in range(d):
                    row = [ZERO] * dim
                    row[idx(s, a)] = ONE
                    rows.append(row)
        steps.append(rows)
    return (MatrixGQ(Qe), MatrixGQ(Ne), steps)


def ht_construct(n, h):
    """Hodge-Tate degeneration as a direct sum of atomic string blocks."""
    plan = ht_plan(n, h)
    blocks = [atomic_block(n, k, dk) for k, dk in enumerate(plan.d) if dk]
    if not blocks:
        raise GateFailed("empty structure")
    L = _direct_sum(n, blocks)
    bg = deligne_splitting(L)
    assert is_hodge_tate(bg)
    assert {p: d for (p, q), d in bg.dims().items()} == \
        {p: h.hpq(p, n - p) for p in range(n + 1) if h.hpq(p, n - p)}
    return L


def _as_dims(bg):
    if isinstance(bg, Bigrading):
        return bg.dims()
    return {tuple(k): v for k, v in bg.items()}


def cp_orb_check(dims, strings=()):
    """Necessary constraints on an adjoint splitting for a closed-orbit limit.

    strings: iterable of {"top": (p, q), "length": L} N-string descriptors.
    """
    dims = {k: v for k, v in _as_dims(dims).items() if v}
    c1 = all(not (p > 0 > q and p != -q) and not (q > 0 > p and q != -p)
             for p, q in dims)
    c2 = all(not (abs(p) >= 3 and abs(p) % 2 == 1 and q == -p) for p, q in dims)
    c3 = all(abs(p - q) <= 2 for p, q in dims if p + q != 0)
    c4 = True
    for s in strings:
        top = tuple(s["top"])
        length = s["length"]
        nodes = [(top[0] - j, top[1] - j) for j in range(length)]
        if any(q - p == 2 for p, q in nodes) or any(p - q == 2 for p, q in nodes):
            if length % 4 != 3:
                c4 = False
    report = {
        "no_mixed_quadrant": c1,
        "no_odd_antidiagonal": c2,
        "bandwidth_two": c3,
        "string_length_mod4": c4,
    }
    report["ok"] = c1 and c2 and c3 and c4
    return report


def period_closed_check(bg, n):
    """Necessary shape of a period-domain LMHS whose limit meets the closed orbit.

    Input may be a Bigrading or a {(p,q): dim} map.  Either the splitting is
    Hodge-Tate, or (weight even) the non-HT clauses are checked.  The result
    is only ever "consistent with" the closed orbit.
    """
    dims = {k: v for k, v in _as_dims(bg).items() if v}
    if all(p == q for p, q in dims):
        return {"branch": "hodge-tate", "consistent_with_closed_orbit": True}
    if n % 2:
        raise OddWeightNonHT("odd weight limits meeting the closed orbit "
                             "must be Hodge-Tate")
    m = n // 2

    def prim(p, q):
        return dims.get((p, q), 0) - dims.get((p + 1, q + 1), 0)

    report = {"branch": "non-hodge-tate"}
    ok_a = ok_b = ok_c = True
    kmax = max(p + q for p, q in dims) - n
    for k in range(0, kmax + 1):
        for (p, q) in list(dims):
            if p + q != n + k or prim(p, q) <= 0:
                continue
            if k > 0:
                if p != q:
                    ok_a = False
                elif k % 4 != 2:
                    ok_b = False
            else:
                if p != q and (p, q) not in ((m + 1, m - 1), (m - 1, m + 1)):
                    ok_c = False
    vshape = all(p == q or (p, q) in ((m + 1, m - 1), (m - 1, m + 1))
                 for p, q in dims)
    report["prim_offdiag_only_at_k0"] = ok_a
    report["prim_levels_2_mod_4"] = ok_b
    report["middle_prim_adjacent_only"] = ok_c
    report["v_shape"] = vshape
    report["consistent_with_closed_orbit"] = ok_a and ok_b and ok_c and vshape
    return report


def non_ht_closed_instance():
    """Weight 2, h = (2,1,2): a closed-orbit-consistent limit that is not HT."""
    blocks = [atomic_block(2, 0), _phs_block(HodgeNumbers(2, (1, 0, 1)))]
    return _direct_sum(2, blocks)


def principal_lmhs(family, param):
    """Principal-nilpotent limiting structures for the classical families.

    sp(n): dim 2n, weight 2n-1, h = (1,...,1)
    so_odd(m): dim 2m+1, weight 2m, h = (1,...,1)
    so_even_mm / so_even_m2m (m even): dim 2m, weight 2m-2,
        h = (1,...,1,2,1,...,1), with the extra vector w in I^{m-1,m-1}
    """
    if family == "sp":
        n = param
        if n < 1:
            raise ParityViolation("need n >= 1")
        dim, weight = 2 * n, 2 * n - 1
        # b_a = N^a v at I^{weight-a, weight-a}; Q(b_a, b_b) = (-1)^a d_{a+b, 2n-1}
        Qe = [[ZERO] * dim for _ in range(dim)]
        Ne = [[ZERO] * dim for _ in range(dim)]
        for a in range(dim):
            Qe[a][dim - 1 - a] = gq((-1) ** a)
            if a + 1 < dim:
                Ne[a + 1][a] = ONE
        steps = _string_steps(dim, weight, top=weight)
        return _assemble(weight, Qe, Ne, steps)
    if family == "so_odd":
        m = param
        if m < 1:
            raise ParityViolation("need m >= 1")
        dim, weight = 2 * m + 1, 2 * m
        Qe = [[ZERO] * dim for _ in range(dim)]
        Ne = [[ZERO] * dim for _ in range(dim)]
        for a in range(dim):
            Qe[a][dim - 1 - a] = gq((-1) ** a)
            if a + 1 < dim:
                Ne[a + 1][a] = ONE
        steps = _string_steps(dim, weight, top=weight)
        return _assemble(weight, Qe, Ne, steps)
    if family in ("so_even_mm", "so_even_m2m"):
        # the two real forms so(m,m), so(m+2,m) share this normal form
        m = param
        if m < 2 or m % 2:
            raise ParityViolation("need m even, m >= 2")
        dim, weight = 2 * m, 2 * m - 2
        Qe = [[ZERO] * dim for _ in range(dim)]
        Ne = [[ZERO] * dim for _ in range(dim)]
        Qe[0][0] = ONE  # w
        for a in range(dim - 1):
            Qe[1 + a][dim - 1 - a] = gq((-1) ** (m + a))
            if a + 1 < dim - 1:
                Ne[2 + a][1 + a] = ONE
        steps = []
        for p in range(weight + 1):
            rows = []
            if p <= m - 1:
                row = [ZERO] * dim
                row[0] = ONE
                rows.append(row)
            for a in range(dim - 1):
                if weight - a >= p:
                    row = [ZERO] * dim
                    row[1 + a] = ONE
                    rows.append(row)
            steps.append(rows)
        return _assemble(weight, Qe, Ne, steps)
    raise ParityViolation("unknown family %r" % family)


def _string_steps(dim, weight, top):
    steps = []
    for p in range(weight + 1):
        rows = []
        for a in range(dim):
            if top - a >= p:
                row = [ZERO] * dim
                row[a] = ONE
                rows.append(row)
        steps.append(rows)
    return steps


def _assemble(weight, Qe, Ne, steps):
    dim = len(Qe)
    F = [Subspace.full(dim)]
    for p in range(1, weight + 1):
        F.append(Subspace.from_vectors(dim, steps[p])
                 if steps[p] else Subspace.zero(dim))
    hodge = HodgeDatum(dim, PolarizationForm(weight, MatrixGQ(Qe)),
                       HodgeFiltration(weight, F))
    return LmhsDatum(hodge, MatrixGQ(Ne))


def principal_neutral_char(family, param):
    """Characteristic vector of the neutral element over the matching root system.

    Built from the V-eigenvalues of the sl2 neutral element Y (string
    positions), evaluated on the simple roots in orthogonal coordinates.
    """
    from .roots import build_root_system, GradingElement, characteristic_vector
    if family == "sp":
        n = param
        rs = build_root_system("C", n) if n > 1 else build_root_system("C", 1)
        evals = [2 * (n - i) - 1 for i in range(n)]
    elif family == "so_odd":
        m = param
        rs = build_root_system("B", m)
        evals = [2 * (m - i) for i in range(m)]
    elif family in ("so_even_mm", "so_even_m2m"):
        m = param
        if m < 2:
            raise ParityViolation("need m >= 2")
        rs = build_root_system("D", m)
        evals = [2 * (m - 1 - i) for i in range(m)]
    else:
        raise ParityViolation("unknown family %r" % family)
    vals = []
    for a in rs.simple_roots:
        coords = rs.orthogonal(a)
        vals.append(sum(c * e for c, e in zip(coords, evals)))
    Y = GradingElement(vals)
    return characteristic_vector(rs, Y)


def normal_forms(n, d):
    """Root-vector normal forms for a weight n period domain with dim V = d.

    Returns (Q, forms) where forms is a list of (tag, N) with N in End(V, Q).
    """
    if n % 2:
        if d % 2:
            raise ParityViolation("odd weight needs even dimension")
        c = d // 2
        Qe = [[ZERO] * d for _ in range(d)]
        for i in range(c):
            Qe[i][c + i] = ONE
            Qe[c + i][i] = gq(-1)
        forms = []
        for i in range(c):
            for j in range(c):
                if i != j:
                    forms.append(("sp:e%d_%d" % (i, j),
                                  _units(d, [(i, j, 1), (c + j, c + i, -1)])))
                forms.append(("sp:lower%d_%d" % (i, j),
                              _units(d, [(c + i, j, 1), (c + j, i, 1)])))
                forms.append(("sp:upper%d_%d" % (i, j),
                              _units(d, [(i, c + j, 1), (j, c + i, 1)])))
        for i in range(c):
            forms.append(("sp:eu%d" % i, _units(d, [(i, c + i, 1)])))
            forms.append(("sp:el%d" % i, _units(d, [(c + i, i, 1)])))
    else:
        c = d // 2
        Qe = [[ZERO] * d for _ in range(d)]
        for i in range(c):
            Qe[i][c + i] = ONE
            Qe[c + i][i] = ONE
        if d % 2:
            Qe[d - 1][d - 1] = ONE
        forms = []
        for i in range(c):
            for j in range(c):
                if i != j:
                    forms.append(("so:e%d_%d" % (i, j),
                                  _units(d, [(i, j, 1), (c + j, c + i, -1)])))
                    forms.append(("so:lower%d_%d" % (i, j),
                                  _units(d, [(c + i, j, 1), (c + j, i, -1)])))
                    forms.append(("so:upper%d_%d" % (i, j),
                                  _units(d, [(i, c + j, 1), (j, c + i, -1)])))
        if d % 2:
            last = d - 1
            for i in range(c):
                forms.append(("so:tail_low%d" % i,
                              _units(d, [(last, i, 1), (c + i, last, -1)])))
                forms.append(("so:tail_up%d" % i,
                              _units(d, [(last, c + i, 1), (i, last, -1)])))
    # dedupe zero forms (none expected) and sanity-check membership in g
    Q = MatrixGQ(Qe)
    out = []
    for tag, N in forms:
        if N.is_zero():
            continue
        assert (Q * N + N.transpose() * Q).is_zero(), tag
        out.append((tag, N))
    return Q, out


def _units(d, entries):
    M = [[ZERO] * d for _ in range(d)]
    for i, j, v in entries:
        M[i][j] = gq(v)
    return MatrixGQ(M)
