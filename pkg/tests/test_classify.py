"""Degeneration classifiers: minimal types and witnesses, the Hodge-Tate
gate, closed-orbit checks, principal constructors, normal-form exhaustion."""

import itertools
import json
import os

import pytest

from hodge_degen.gq import MatrixGQ, rank
from hodge_degen.hodge import HodgeNumbers
from hodge_degen.lmhs import (
    deligne_splitting, validate_lmhs, is_hodge_tate, disc_sample, adjoint_lmhs,
)
from hodge_degen.classify import (
    MinimalType, minimal_types, minimal_witness, ht_gate, ht_plan,
    ht_construct, atomic_block, cp_orb_check, period_closed_check,
    non_ht_closed_instance, principal_lmhs, principal_neutral_char,
    normal_forms, InfeasibleType, GateFailed, ParityViolation, OddWeightNonHT,
)

GOLDEN = os.path.join(os.path.dirname(__file__), "golden")


def load_golden(name):
    with open(os.path.join(GOLDEN, name)) as fh:
        return json.load(fh)


def figure_h(n, diag):
    off, dia = (2, 3) if diag else (1, 2)
    h = [off] * (n + 1)
    if n % 2 == 0:
        h[n // 2] = dia
    return HodgeNumbers(n, h)


# ------------------------------------------------------------ minimal types

@pytest.mark.parametrize("key,weights", [("generic_h", range(1, 5)),
                                         ("unit_h", range(1, 6))])
def test_minimal_types_match_golden_figures(key, weights):
    golden = load_golden("minimal_figures.json")[key]
    for n in weights:
        hn = figure_h(n, diag=(key == "generic_h"))
        got = sorted(
            ({"kind": t.kind, "p_o": t.p_o, "q_o": t.q_o, "nodes": t.triples()}
             for t in minimal_types(n, hn)),
            key=lambda d: (d["kind"], d["p_o"]))
        want = sorted(golden[str(n)], key=lambda d: (d["kind"], d["p_o"]))
        assert got == want, "weight %d" % n


def test_minimal_type_table_symmetry_enforced():
    with pytest.raises(InfeasibleType):
        MinimalType("I", 0, 2, {(0, 1): 1})
    with pytest.raises(InfeasibleType):
        MinimalType("I", 0, 2, {(0, 1): -1, (1, 0): -1})


def test_kind2_requires_odd_middle():
    assert not any(t.kind == "II"
                   for t in minimal_types(2, HodgeNumbers(2, (1, 2, 1))))
    assert any(t.kind == "II"
               for t in minimal_types(2, HodgeNumbers(2, (1, 1, 1))))
    # and a class to move: h^{m-1,m+1} >= 1
    assert minimal_types(2, HodgeNumbers(2, (0, 1, 0))) == []


def test_adjacent_admissibility_needs_two_middle_classes():
    # q_o - p_o = 2 consumes two classes at the midpoint
    assert not any(t.kind == "I"
                   for t in minimal_types(2, HodgeNumbers(2, (1, 1, 1))))
    assert any(t.kind == "I"
               for t in minimal_types(2, HodgeNumbers(2, (1, 2, 1))))


def test_mass_conservation():
    for n in range(1, 5):
        hn = figure_h(n, diag=True)
        for t in minimal_types(n, hn):
            assert sum(t.i_table.values()) == hn.dim


# ------------------------------------------------------------ witnesses

@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_witnesses_validate_and_split_correctly(n):
    hn = figure_h(n, diag=True)
    for t in minimal_types(n, hn):
        L = minimal_witness(t, n, hn)
        assert validate_lmhs(L)["ok"]
        assert deligne_splitting(L).dims() == t.i_table
        assert L.hodge.dim == hn.dim


def test_witness_rejects_inadmissible_type():
    hn = HodgeNumbers(2, (1, 2, 1))
    t = MinimalType("II", 0, 2, {(0, 0): 1, (2, 2): 1, (1, 1): 2})
    with pytest.raises(InfeasibleType):
        minimal_witness(t, 2, hn)


# ------------------------------------------------------------ HT gate

def test_gate_examples():
    assert not ht_gate(2, HodgeNumbers(2, (2, 1, 2)))
    assert ht_gate(2, HodgeNumbers(2, (1, 2, 1)))
    assert ht_gate(4, HodgeNumbers(4, (1, 2, 4, 2, 1)))
    assert not ht_gate(4, HodgeNumbers(4, (2, 1, 4, 1, 2)))


def test_plan_multiplicities():
    plan = ht_plan(4, HodgeNumbers(4, (1, 2, 4, 2, 1)))
    assert plan.d == (1, 1, 2)
    with pytest.raises(GateFailed):
        ht_plan(2, HodgeNumbers(2, (2, 1, 2)))


def test_construct_matches_h_and_is_ht():
    for n, h in ((2, (1, 1, 1)), (2, (1, 2, 1)), (3, (1, 1, 1, 1)),
                 (4, (1, 1, 2, 1, 1))):
        L = ht_construct(n, HodgeNumbers(n, h))
        bg = deligne_splitting(L)
        assert is_hodge_tate(bg)
        assert validate_lmhs(L)["ok"]
        assert {p: d for (p, q), d in bg.dims().items()} == \
            {p: h[n - p] for p in range(n + 1) if h[n - p]}


def test_atomic_block_is_self_dual_string():
    Q, N, steps = atomic_block(3, 1)
    assert rank(MatrixGQ(N.entries)) == 1
    assert (Q + Q.transpose()).is_zero()  # odd weight: skew


# ------------------------------------------------------------ closed orbit

def test_cp_orb_on_golden_pattern():
    pat = load_golden("closed_orbit_pattern.json")
    dims = {(p, q): d for p, q, d in pat["nodes"]}
    strings = [{"top": tuple(s["top"]), "length": s["length"]}
               for s in pat["strings"]]
    assert cp_orb_check(dims, strings)["ok"]


def test_cp_orb_violations():
    assert not cp_orb_check({(3, -1): 1})["no_mixed_quadrant"]
    assert not cp_orb_check({(3, -3): 1})["no_odd_antidiagonal"]
    assert not cp_orb_check({(4, 1): 1})["bandwidth_two"]
    bad = cp_orb_check({(0, 0): 1}, strings=[{"top": (1, 3), "length": 5}])
    assert not bad["string_length_mod4"]


def test_period_closed_non_ht_instance():
    L = non_ht_closed_instance()
    assert validate_lmhs(L)["ok"]
    bg = deligne_splitting(L)
    dims = bg.dims()
    # h^{2,0} = i^{2,0}_prim + i^{2,2}_prim
    h20 = L.hodge.filtration.step(2).dim
    i20_prim = dims.get((2, 0), 0) - dims.get((3, 1), 0)
    i22_prim = dims.get((2, 2), 0) - dims.get((3, 3), 0)
    assert h20 == i20_prim + i22_prim == 2
    rep = period_closed_check(bg, 2)
    assert rep["branch"] == "non-hodge-tate"
    assert rep["consistent_with_closed_orbit"]


def test_period_closed_rejects_weight4_string():
    dims = {(p, p): 1 for p in range(5)}
    dims[(1, 3)] = dims[(3, 1)] = 1
    rep = period_closed_check(dims, 4)
    assert not rep["prim_levels_2_mod_4"]
    assert not rep["consistent_with_closed_orbit"]


def test_period_closed_odd_weight_must_be_ht():
    with pytest.raises(OddWeightNonHT):
        period_closed_check({(1, 2): 1, (2, 1): 1}, 3)
    assert period_closed_check({(0, 0): 1, (1, 1): 1}, 1)["branch"] == \
        "hodge-tate"


# ------------------------------------------------------------ principal

@pytest.mark.parametrize("family,param,dim,weight", [
    ("sp", 1, 2, 1), ("sp", 2, 4, 3), ("sp", 3, 6, 5),
    ("so_odd", 1, 3, 2), ("so_odd", 2, 5, 4), ("so_odd", 3, 7, 6),
    ("so_even_mm", 2, 4, 2), ("so_even_m2m", 2, 4, 2),
])
def test_principal_families(family, param, dim, weight):
    L = principal_lmhs(family, param)
    assert (L.hodge.dim, L.hodge.n) == (dim, weight)
    assert validate_lmhs(L)["ok"]
    cv = principal_neutral_char(family, param)
    assert set(cv) == {2}


def test_principal_hodge_numbers():
    L = principal_lmhs("sp", 2)
    assert L.hodge.filtration.f_vector() == (4, 3, 2, 1)
    L = principal_lmhs("so_even_mm", 2)
    # h = (1, 2, 1): the extra class w sits in the middle
    assert L.hodge.filtration.f_vector() == (4, 3, 1)


def test_principal_parity_violations():
    with pytest.raises(ParityViolation):
        principal_lmhs("so_even_mm", 3)
    with pytest.raises(ParityViolation):
        principal_lmhs("sp", 0)
    with pytest.raises(ParityViolation):
        principal_lmhs("su", 2)


# ------------------------------------------------------------ normal forms

def all_form_cases():
    for n in (1, 2, 3, 4):
        for d in range(2, 8):
            if n % 2 and d % 2:
                continue
            yield n, d


def test_normal_forms_rank_and_nilpotency():
    for n, d in all_form_cases():
        Q, forms = normal_forms(n, d)
        # so(2) has no root vectors at all; everything else does
        assert forms or (n % 2 == 0 and d == 2), (n, d)
        for tag, N in forms:
            assert (Q * N + N.transpose() * Q).is_zero(), tag
            assert rank(N) <= 2, tag
            assert (N * N * N).is_zero(), tag


def test_three_step_forms_only_for_odd_middle():
    for n, d in all_form_cases():
        if n % 2:
            continue
        _, forms = normal_forms(n, d)
        has3 = any(not (N * N).is_zero() for _, N in forms)
        # d odd corresponds to odd middle Hodge number h^{m,m}
        assert has3 == (d % 2 == 1), (n, d)


def test_normal_forms_odd_weight_needs_even_dim():
    with pytest.raises(ParityViolation):
        normal_forms(1, 3)
