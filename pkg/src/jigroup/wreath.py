"""Wreath-product shadow builders and their verdicts.

The shadow of K wr_Omega P (K just infinite, not virtually abelian) is
F wr_Omega P with F a nonabelian finite simple group at its minimal faithful
degree.  The designated basal family is the set of coordinate-factor
products over the blocks of every invariant partition of (P, Omega); the
base itself (one conjugate) is the coarsest member.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from . import catalog
from .basal import BasalCertificate, ShadowModel, ShadowSubgroup, shadow_ji_verdict
from .perm import PermGroup, SubgroupHandle
from .smallgrp import all_block_systems, maximal_subgroups_over

SIMPLE_FIBERS = {
    "A5": lambda: catalog.alternating(5),
    "PSL27": lambda: catalog.psl27(7),
}


def wreath_shadow(fiber_group, top_group, provenance=""):
    """F wr_Omega P on |Omega| * deg(F) points, with its basal family.

    fiber_group must be a nonabelian simple PermGroup (the modeling
    convention); top_group must act transitively and faithfully.
    """
    if not top_group.is_transitive():
        raise ValueError("the top group must be transitive")
    n_omega = top_group.degree
    deg_f = fiber_group.degree
    deg = n_omega * deg_f
    fibers = [tuple(range(i * deg_f, (i + 1) * deg_f)) for i in range(n_omega)]

    def fiber_perm(g, i):
        img = list(range(deg))
        for t in range(deg_f):
            img[i * deg_f + t] = i * deg_f + g[t]
        return tuple(img)

    def lift(alpha):
        img = list(range(deg))
        for i in range(n_omega):
            for t in range(deg_f):
                img[i * deg_f + t] = alpha[i] * deg_f + t
        return tuple(img)

    gens = [fiber_perm(g, 0) for g in fiber_group.generators]
    gens += [lift(a) for a in top_group.generators]
    shadow = PermGroup(gens)
    expected = fiber_group.order**n_omega * top_group.order
    assert shadow.order == expected, "wreath shadow order mismatch"

    base_gens = [
        fiber_perm(g, i) for i in range(n_omega) for g in fiber_group.generators
    ]
    model = ShadowModel(
        group=shadow,
        top=top_group,
        fibers=fibers,
        base_generators=base_gens,
        fiber_group_order=fiber_group.order,
        provenance=provenance or "wreath shadow",
    )
    model.basal_family = _block_product_family(model, fiber_group)
    return model


def _block_product_family(model, fiber_group):
    """Basal certificates for the block products, coarsest first."""
    systems = all_block_systems(model.top)
    # include the one-block partition (the base, a single conjugate)
    systems = [tuple([tuple(range(model.top.degree))])] + list(systems)
    family = []
    for system in systems:
        blocks = [frozenset(b) for b in system]
        block0 = next(b for b in blocks if 0 in b)
        gens = [
            g
            for i in sorted(block0)
            for g in _fiber_gens(model, fiber_group, i)
        ]
        handle = SubgroupHandle(model.group, gens, check=False)
        conjugates = []
        for b in blocks:
            conjugates.append(
                SubgroupHandle(
                    model.group,
                    [
                        g
                        for i in sorted(b)
                        for g in _fiber_gens(model, fiber_group, i)
                    ],
                    check=False,
                )
            )
        closure = SubgroupHandle(model.group, model.base_generators, check=False)
        proof = {
            "style": "disjoint-support product",
            "order_identity": True,
            "pairwise_commute": True,
            "trivial_intersections": True,
            "closure_order": model.base_order,
            "conjugate_orders": [
                model.fiber_group_order ** len(b) for b in blocks
            ],
        }
        cert = BasalCertificate(
            handle,
            conjugates,
            closure,
            proof,
            supports=blocks,
            label=f"block product over {len(blocks)} blocks",
        )
        family.append(cert)
    family.sort(key=lambda c: (c.n_conjugates, sorted(map(sorted, c.supports))))
    return family


def _fiber_gens(model, fiber_group, i):
    deg_f = fiber_group.degree
    deg = model.group.degree
    out = []
    for g in fiber_group.generators:
        img = list(range(deg))
        for t in range(deg_f):
            img[i * deg_f + t] = i * deg_f + g[t]
        out.append(tuple(img))
    return out


@dataclass
class WreathShadow:
    """Example-style shadow: F wr_V (V x| C_p) with the named subgroups."""

    model: ShadowModel
    fiber_tag: str
    p: int
    H: ShadowSubgroup  # base x| W, W a non-normal hyperplane of translations
    M: ShadowSubgroup  # base x| V, the unique maximal over H
    full: ShadowSubgroup  # the whole group as a handle


def build_wreath_shadow(fiber_tag, p):
    """Shadow of the affine wreath example at the prime p (p in {2, 3}).

    A = V x| C_p acts on V = F_p^p by translations and coordinate rotation;
    W is the non-normal index-p subgroup of translations fixing the first
    coordinate sum... concretely the hyperplane v_0 = 0, which the rotation
    moves.  H = base x| W has index p^2; its unique maximal overgroup is
    base x| V.
    """
    if p not in (2, 3):
        raise ValueError("supported primes: 2 and 3")
    if fiber_tag not in SIMPLE_FIBERS:
        raise ValueError(f"supported fibers: {sorted(SIMPLE_FIBERS)}")
    fiber = SIMPLE_FIBERS[fiber_tag]()
    pts = list(product(range(p), repeat=p))
    vidx = {v: i for i, v in enumerate(pts)}

    def translation(e):
        return tuple(
            vidx[tuple((v[j] + e[j]) % p for j in range(p))] for v in pts
        )

    rot = tuple(vidx[v[-1:] + v[:-1]] for v in pts)
    e_vecs = [
        tuple(1 if j == i else 0 for j in range(p)) for i in range(p)
    ]
    t_gens = [translation(e) for e in e_vecs]
    A = PermGroup([t_gens[0], rot])
    assert A.order == p ** (p + 1), "affine top group has the wrong order"
    model = wreath_shadow(fiber, A, provenance=f"{fiber_tag} wr (V x| C_{p})")

    # W: translations by vectors with first coordinate 0 (not rot-invariant)
    w_handle = SubgroupHandle(A, t_gens[1:], check=True)
    assert w_handle.order == p ** (p - 1)
    assert not w_handle.is_normal_in_parent(), "W must not be normal in A"
    v_handle = SubgroupHandle(A, t_gens, check=True)
    assert v_handle.order == p**p

    H = ShadowSubgroup(model, w_handle, label="base x| W")
    M = ShadowSubgroup(model, v_handle, label="base x| V")
    full = ShadowSubgroup(model, SubgroupHandle.full(A), label="shadow group")
    over = maximal_subgroups_over(A, w_handle)
    assert len(over) == 1 and over[0].same_subgroup(v_handle), (
        "the maximal subgroup over W is not unique or is not V"
    )
    return WreathShadow(model, fiber_tag, p, H, M, full)


def wreath_verdicts(shadow):
    """Verdicts for the named subgroups plus the uniqueness certificate."""
    model = shadow.model
    g_v = shadow_ji_verdict(model, shadow.full)
    h_v = shadow_ji_verdict(model, shadow.H)
    m_v = shadow_ji_verdict(model, shadow.M)
    over = maximal_subgroups_over(model.top, shadow.H.top_handle)
    return {
        "G": g_v,
        "H": h_v,
        "M": m_v,
        "M_unique_over_H": len(over) == 1,
        "H_index": model.top.order // shadow.H.top_handle.order,
    }
