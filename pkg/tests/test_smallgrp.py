import itertools

import pytest

from jigroup import catalog
from jigroup.perm import OrderGateExceeded, SubgroupHandle, identity_perm, mul
from jigroup.smallgrp import (
    all_block_systems,
    all_subgroups,
    frattini,
    maximal_subgroups,
    maximal_subgroups_over,
    normal_subgroups,
    recognize_special,
    small_table,
)


def bruteforce_subgroups(G):
    """Independent lattice oracle: test all element subsets (order <= 20)."""
    els = G.elements()
    n = len(els)
    assert n <= 20
    idx = {e: i for i, e in enumerate(els)}
    table = [[idx[mul(a, b)] for b in els] for a in els]
    ident = idx[identity_perm(G.degree)]
    subs = set()
    indices = [i for i in range(n) if i != ident]
    for size in range(0, n):
        if (n) % (size + 1):
            continue
        for combo in itertools.combinations(indices, size):
            cand = set(combo) | {ident}
            if all(table[a][b] in cand for a in cand for b in cand):
                subs.add(frozenset(cand))
    return subs


@pytest.mark.parametrize(
    "G",
    [catalog.quaternion(8), catalog.quaternion(16), catalog.cyclic(12),
     catalog.dihedral(4), catalog.symmetric(3)],
)
def test_lattice_against_subset_oracle(G):
    tbl = small_table(G)
    got = {s for s, _ in tbl.all_subgroups()}
    assert got == bruteforce_subgroups(G)


def test_maximal_subgroups_q8():
    ms = maximal_subgroups(catalog.quaternion(8))
    assert len(ms) == 3
    assert all(m.order == 4 for m in ms)


def test_maximal_subgroups_cyclic_prime():
    ms = maximal_subgroups(catalog.cyclic(5))
    assert len(ms) == 1
    assert ms[0].order == 1


def test_maximal_subgroups_q16():
    ms = maximal_subgroups(catalog.quaternion(16))
    assert len(ms) == 3
    assert sorted(m.order for m in ms) == [8, 8, 8]
    kinds = sorted(
        "cyclic" in recognize_special(m.group) for m in ms
    )
    assert kinds == [False, False, True]  # one C8, two Q8


def test_maximal_subgroups_gate():
    with pytest.raises(OrderGateExceeded):
        maximal_subgroups(catalog.symmetric(8))


def test_frattini_q8():
    f = frattini(catalog.quaternion(8))
    assert f.order == 2


def test_frattini_elementary_abelian():
    f = frattini(catalog.elementary_abelian(2, 3))
    assert f.order == 1


def test_frattini_alt4_inside_sym4():
    _, primitive = catalog.symmetric(4).minimal_block_systems()
    assert primitive
    assert frattini(catalog.alternating(4)).order == 1


def test_normal_subgroups_sym4():
    ns = normal_subgroups(catalog.symmetric(4))
    assert sorted(h.order for h in ns) == [1, 4, 12, 24]
    assert all(h.is_normal_in_parent() for h in ns)


def test_maximal_subgroups_over():
    G = catalog.symmetric(4)
    v4_prime = SubgroupHandle(
        G,
        [
            (1, 0, 2, 3),  # (0 1)
            (0, 1, 3, 2),  # (2 3)
        ],
    )
    over = maximal_subgroups_over(G, v4_prime)
    assert len(over) == 1 and over[0].order == 8


def test_all_block_systems_c4():
    systems = all_block_systems(catalog.cyclic(4))
    assert ((0,), (1,), (2,), (3,)) in systems
    assert ((0, 2), (1, 3)) in systems
    assert len(systems) == 2


def test_all_block_systems_s4_primitive():
    systems = all_block_systems(catalog.symmetric(4))
    assert systems == [((0,), (1,), (2,), (3,))]


def test_all_block_systems_d8():
    systems = all_block_systems(catalog.dihedral(4))
    assert ((0, 2), (1, 3)) in systems
    assert len(systems) == 2


def test_all_block_systems_regular_v4():
    # regular Klein four-group: three block systems of size 2 plus singletons
    systems = all_block_systems(catalog.klein_four())
    assert len(systems) == 4


def test_recognize_special():
    assert recognize_special(catalog.quaternion(16)) == {
        ("p_group", 2),
        ("generalized_quaternion", 16),
    }
    assert recognize_special(catalog.cyclic(6)) == {"cyclic"}
    assert recognize_special(catalog.cyclic(8)) == {"cyclic", ("p_group", 2)}
    assert recognize_special(catalog.klein_four()) == {
        ("p_group", 2),
        "elementary_abelian",
    }
    assert recognize_special(catalog.symmetric(3)) == {"none"}
    tags = recognize_special(catalog.extraspecial_128())
    assert ("p_group", 2) in tags and "extraspecial" in tags
    assert ("generalized_quaternion", 128) not in tags


def test_extraspecial_structure():
    E = catalog.extraspecial_128()
    tbl = small_table(E)
    assert len(tbl.center()) == 2
    assert tbl.derived_subgroup() == tbl.center()
    assert tbl.exponent() == 4
    assert len(frattini(E).group.elements()) == 2


def test_conjugacy_classes_extraspecial():
    tbl = small_table(catalog.extraspecial_128())
    classes = tbl.conjugacy_classes()
    assert len(classes) == 65
    assert sorted(len(c) for c in classes) == [1, 1] + [2] * 63
