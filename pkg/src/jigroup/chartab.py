"""Exact character tables of small groups via the Burnside-Dixon method.

Eigenvalue work runs over a prime field F_l with l = 1 mod exponent(G) and
l >= 2|G|+1, then lifts to exact cyclotomic values; the returned table is
verified against row orthogonality and the degree sum before it is handed
out, both checks exact.
"""

from __future__ import annotations

import heapq

import numpy as np

from .cyclotomic import CycloContext
from .perm import LATTICE_GATE
from .smallgrp import small_table


class CharacterTable:
    """Conjugacy classes, exact cyclotomic character values, degrees."""

    def __init__(self, group, classes, class_sizes, values, degrees, ctx):
        self.group = group
        self.classes = classes          # element-index lists, identity first
        self.class_sizes = class_sizes
        self.values = values            # values[i][j]: chi_i on class j
        self.degrees = degrees
        self.ctx = ctx

    @property
    def n_classes(self):
        return len(self.classes)

    def kernel_classes(self, i):
        """Classes on which chi_i takes its degree (the kernel of chi_i)."""
        deg = self.ctx.from_rational(self.degrees[i])
        return frozenset(
            j for j in range(self.n_classes) if self.values[i][j] == deg
        )

    def verify(self, order):
        assert len(self.degrees) == self.n_classes
        assert sum(d * d for d in self.degrees) == order
        ctx = self.ctx
        for i in range(self.n_classes):
            for j in range(i + 1):
                total = ctx.zero()
                for k in range(self.n_classes):
                    term = ctx.mul(self.values[i][k], ctx.conj(self.values[j][k]))
                    total = ctx.add(total, ctx.scale(term, self.class_sizes[k]))
                want = ctx.from_rational(order if i == j else 0)
                assert total == want, f"orthogonality failed at rows {i},{j}"
        return True


def _smallest_modulus(order, exponent):
    l = 2 * order + 1
    while True:
        if l % exponent == 1 and _is_prime(l):
            return l
        l += 1


def _is_prime(n):
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _nullspace_mod(mat, l):
    """Basis of the right nullspace of mat over F_l (rows are vectors)."""
    a = mat % l
    rows, cols = a.shape
    a = a.copy()
    pivots = []
    r = 0
    for c in range(cols):
        piv = None
        for i in range(r, rows):
            if a[i, c] % l:
                piv = i
                break
        if piv is None:
            continue
        a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), l - 2, l)
        a[r] = (a[r] * inv) % l
        for i in range(rows):
            if i != r and a[i, c] % l:
                a[i] = (a[i] - a[i, c] * a[r]) % l
        pivots.append(c)
        r += 1
        if r == rows:
            break
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = np.zeros(cols, dtype=np.int64)
        v[f] = 1
        for i, c in enumerate(pivots):
            v[c] = (-a[i, f]) % l
        basis.append(v % l)
    return basis


def character_table(group, gate=LATTICE_GATE):
    """Burnside-Dixon character table with exact cyclotomic values."""
    tbl = small_table(group, gate)
    order = tbl.n
    classes = tbl.conjugacy_classes()
    r = len(classes)
    sizes = [len(c) for c in classes]
    class_of = [0] * order
    for ci, cls in enumerate(classes):
        for x in cls:
            class_of[x] = ci
    reps = [cls[0] for cls in classes]
    exponent = tbl.exponent()
    l = _smallest_modulus(order, exponent)

    # class multiplication matrices M_i[j][k] = #{(x,y) in C_i x C_j : xy = rep_k}
    mats = []
    inv_class = [class_of[tbl.inverse[reps[c]]] for c in range(r)]
    for i in range(r):
        m = np.zeros((r, r), dtype=np.int64)
        for k in range(r):
            zk = reps[k]
            for x in classes[i]:
                y = tbl.table[tbl.inverse[x]][zk]
                m[class_of[y], k] += 1
        # m[j][k] = a_ijk; eigen-rows w satisfy w @ m = omega_i w
        mats.append(m)
    # Simultaneous eigenvectors over F_l via recursive splitting.
    blocks = [np.eye(r, dtype=np.int64)]  # each block: rows span a subspace

    def split(block, m):
        rows = block.shape[0]
        if rows == 1:
            return [block]
        # restriction of m to the subspace: solve block @ m = a @ block
        bm = (block @ m) % l
        a = _solve_left(block, bm, l)
        evs = _eigenvalues_mod(a, l)
        if len(evs) == 1:
            return [block]
        out = []
        for lam in evs:
            shifted = (a - lam * np.eye(rows, dtype=np.int64)) % l
            null = _nullspace_mod(shifted.T, l)
            if null:
                sub = (np.array(null, dtype=np.int64) @ block) % l
                out.append(sub)
        assert sum(b.shape[0] for b in out) == rows
        return out

    for m in mats:
        new_blocks = []
        for b in blocks:
            new_blocks.extend(split(b, m))
        blocks = new_blocks
        if all(b.shape[0] == 1 for b in blocks):
            break
    assert all(b.shape[0] == 1 for b in blocks), "class algebra failed to split"

    # each block is one character: eigenvalues w_i = |C_i| chi(g_i)/chi(1)
    chars_mod = []
    for b in blocks:
        v = b[0] % l
        omegas = []
        for m in mats:
            mv = (v @ m) % l
            k = int(np.nonzero(v)[0][0])
            lam = (int(mv[k]) * pow(int(v[k]), l - 2, l)) % l
            omegas.append(lam)
        # 1/d^2 = (1/|G|) sum_i w_i w_{i*} / |C_i|
        s = 0
        for i in range(r):
            s += omegas[i] * omegas[inv_class[i]] * pow(sizes[i], l - 2, l)
        s %= l
        d2 = (pow(int(s), l - 2, l) * order) % l
        d = _int_sqrt_exact(d2)
        values_mod = [
            (d * omegas[i] * pow(sizes[i], l - 2, l)) % l for i in range(r)
        ]
        chars_mod.append((d, values_mod))
    chars_mod.sort(key=lambda t: (t[0], t[1]))

    # lift to cyclotomics: chi(g) = sum_s m_s zeta^s with multiplicities m_s
    ctx = CycloContext(exponent)
    t_root = _element_of_order(l, exponent)
    power_class = [
        [class_of[_table_power(tbl, reps[j], u)] for u in range(exponent)]
        for j in range(r)
    ]
    e_inv = pow(exponent, l - 2, l)
    values = []
    degrees = []
    for d, vmod in chars_mod:
        row = []
        for j in range(r):
            mults = []
            for s in range(exponent):
                acc = 0
                for u in range(exponent):
                    acc += vmod[power_class[j][u]] * pow(t_root, (-s * u) % (l - 1), l)
                m_s = (acc * e_inv) % l
                assert m_s <= d, "character multiplicity out of range"
                mults.append(m_s)
            assert sum(mults) == d, "eigenvalue multiplicities do not sum to degree"
            row.append(ctx.from_root_multiplicities(mults))
        values.append(row)
        degrees.append(d)

    table = CharacterTable(group, classes, sizes, values, degrees, ctx)
    table.verify(order)
    return table


def _solve_left(block, target, l):
    """Solve a @ block = target over F_l (block has full row rank)."""
    rows, cols = block.shape
    bt = block.T % l
    tt = target.T % l
    # solve bt @ x = tt column by column via Gaussian elimination
    aug = np.concatenate([bt, tt], axis=1) % l
    m, n = bt.shape
    r = 0
    pivots = []
    for c in range(n):
        piv = None
        for i in range(r, m):
            if aug[i, c] % l:
                piv = i
                break
        if piv is None:
            continue
        aug[[r, piv]] = aug[[piv, r]]
        inv = pow(int(aug[r, c]), l - 2, l)
        aug[r] = (aug[r] * inv) % l
        for i in range(m):
            if i != r and aug[i, c] % l:
                aug[i] = (aug[i] - aug[i, c] * aug[r]) % l
        pivots.append(c)
        r += 1
    x = np.zeros((n, tt.shape[1]), dtype=np.int64)
    for i, c in enumerate(pivots):
        x[c] = aug[i, n:]
    assert np.array_equal((bt @ x) % l, tt % l), "inconsistent restriction solve"
    return x.T % l


def _eigenvalues_mod(a, l):
    """All eigenvalues of a over F_l by scanning roots of the char poly."""
    n = a.shape[0]
    cp = _charpoly_mod(a, l)
    out = []
    for lam in range(l):
        acc = 0
        for c in reversed(cp):
            acc = (acc * lam + c) % l
        if acc == 0:
            out.append(lam)
            if len(out) == n:
                break
    return out


def _charpoly_mod(a, l):
    """Characteristic polynomial mod l via Newton's identities, low degree first.

    Requires l > n so the 1/k divisions exist.
    """
    n = a.shape[0]
    am = (a % l).astype(object)
    inv_cache = [pow(k, l - 2, l) for k in range(1, n + 1)]
    p = []  # power sums trace(A^k)
    mk = np.eye(n, dtype=object)
    for _ in range(n):
        mk = (am @ mk) % l
        p.append(int(np.trace(mk)) % l)
    e = [1]  # elementary symmetric functions of the eigenvalues
    for k in range(1, n + 1):
        acc = 0
        for i in range(1, k + 1):
            acc += ((-1) ** (i - 1)) * e[k - i] * p[i - 1]
        e.append((acc * inv_cache[k - 1]) % l)
    cp = [0] * (n + 1)
    for k in range(n + 1):
        cp[n - k] = ((-1) ** k * e[k]) % l
    return cp


def _int_sqrt_exact(d2):
    from math import isqrt

    d = isqrt(d2)
    assert d * d == d2, "degree recovery failed; modulus too small"
    return d


def _element_of_order(l, e):
    """A fixed element of multiplicative order e in F_l (l = 1 mod e)."""
    for g in range(2, l):
        x = pow(g, (l - 1) // e, l)
        if x != 1 and all(pow(x, e // q, l) != 1 for q in _prime_factors(e)):
            return x
    raise AssertionError("no element of the required order")


def _prime_factors(n):
    out = set()
    d = 2
    while d * d <= n:
        while n % d == 0:
            out.add(d)
            n //= d
        d += 1
    if n > 1:
        out.add(n)
    return out


def _table_power(tbl, i, k):
    out = tbl.ident
    for _ in range(k):
        out = tbl.table[out][i]
    return out


def min_faithful_degree(group, gate=LATTICE_GATE, table=None):
    """Smallest degree of a faithful characteristic-0 representation.

    Minimum, over subsets of irreducible characters whose kernels intersect
    trivially, of the sum of their degrees (Dijkstra over distinct kernel
    intersections).
    """
    ct = table if table is not None else character_table(group, gate)
    kernels = [ct.kernel_classes(i) for i in range(ct.n_classes)]
    full = frozenset(range(ct.n_classes))
    target = frozenset([0])  # identity class only
    best = {full: 0}
    heap = [(0, 0, full)]
    counter = 1
    while heap:
        cost, _, state = heapq.heappop(heap)
        if state == target:
            return cost
        if cost > best.get(state, 10**9):
            continue
        for i, ker in enumerate(kernels):
            nstate = state & ker
            ncost = cost + ct.degrees[i]
            if ncost < best.get(nstate, 10**9):
                best[nstate] = ncost
                heapq.heappush(heap, (ncost, counter, nstate))
                counter += 1
    raise AssertionError("no faithful character collection found")
