"""Exact arithmetic in Q(zeta_e): rational coefficient vectors mod Phi_e.

Values are tuples of Fractions of length deg(Phi_e); zeta is the residue of
x.  Complex conjugation is the Galois map zeta -> zeta^(e-1).  All equality
tests are exact.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache


@lru_cache(maxsize=None)
def cyclotomic_poly(e):
    """Integer coefficient tuple of Phi_e, lowest degree first."""
    # x^e - 1 divided by the product of Phi_d over proper divisors d of e
    poly = [-1] + [0] * (e - 1) + [1]
    for d in range(1, e):
        if e % d == 0:
            poly = _polydiv_exact(poly, list(cyclotomic_poly(d)))
    return tuple(poly)


def _polydiv_exact(num, den):
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1] // den[-1]
        out[i] = c
        for j, dj in enumerate(den):
            num[i + j] -= c * dj
    assert all(c == 0 for c in num), "non-exact polynomial division"
    return out


class CycloContext:
    """Arithmetic context for Q(zeta_e)."""

    def __init__(self, e):
        self.e = e
        self.phi = cyclotomic_poly(e)
        self.dim = len(self.phi) - 1
        # reduction table: zeta^k as a vector for k in 0..e-1
        self._pow = []
        cur = [Fraction(0)] * self.dim
        cur[0] = Fraction(1)
        for _ in range(e):
            self._pow.append(tuple(cur))
            cur = self._shift(cur)

    def _shift(self, vec):
        """Multiply by zeta with reduction mod Phi_e."""
        out = [Fraction(0)] * self.dim
        carry = vec[self.dim - 1]
        for i in range(self.dim - 1, 0, -1):
            out[i] = vec[i - 1]
        out[0] = Fraction(0)
        if carry:
            for i in range(self.dim):
                out[i] -= carry * self.phi[i]
        return out

    def zero(self):
        return (Fraction(0),) * self.dim

    def one(self):
        return self.root_power(0)

    def root_power(self, k):
        return self._pow[k % self.e]

    def from_rational(self, q):
        out = [Fraction(0)] * self.dim
        out[0] = Fraction(q)
        return tuple(out)

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple(x - y for x, y in zip(a, b))

    def scale(self, a, q):
        q = Fraction(q)
        return tuple(x * q for x in a)

    def mul(self, a, b):
        out = [Fraction(0)] * self.dim
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in enumerate(b):
                if not bj:
                    continue
                k = i + j
                if k < self.dim:
                    out[k] += ai * bj
                else:
                    vec = self._pow[k % self.e]
                    c = ai * bj
                    for t in range(self.dim):
                        out[t] += c * vec[t]
        return tuple(out)

    def conj(self, a):
        """Complex conjugation: zeta^k -> zeta^(e-k)."""
        out = [Fraction(0)] * self.dim
        # a = sum a_i zeta^i -> sum a_i zeta^(e-i)
        for i, ai in enumerate(a):
            if not ai:
                continue
            vec = self._pow[(self.e - i) % self.e]
            for t in range(self.dim):
                out[t] += ai * vec[t]
        return tuple(out)

    def is_rational(self, a):
        return all(x == 0 for x in a[1:])

    def rational_value(self, a):
        if not self.is_rational(a):
            raise ValueError("value is not rational")
        return a[0]

    def from_root_multiplicities(self, mults):
        """sum over s of mults[s] * zeta^s."""
        out = [Fraction(0)] * self.dim
        for s, m in enumerate(mults):
            if not m:
                continue
            vec = self._pow[s % self.e]
            for t in range(self.dim):
                out[t] += m * vec[t]
        return tuple(out)
