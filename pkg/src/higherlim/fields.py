"""Finite fields GF(p^k) as F_p-vector spaces, enough to build e:HGM-style modules.

Elements are integers ``0 <= x < p^k`` read as coefficient vectors in base
``p`` (least significant digit = constant term) modulo a fixed monic
irreducible polynomial: the lexicographically first one whose root
generates the multiplicative group.
"""
from __future__ import annotations

from functools import cached_property
from itertools import product

import numpy as np


class GF:
    def __init__(self, p, k):
        self.p = p
        self.k = k
        self.q = p**k
        self.modulus = _primitive_polynomial(p, k)

    def __repr__(self):
        return f"GF({self.p}^{self.k})"

    def to_vec(self, x):
        v = []
        for _ in range(self.k):
            v.append(x % self.p)
            x //= self.p
        return v

    def from_vec(self, v):
        x = 0
        for c in reversed(list(v)):
            x = x * self.p + int(c) % self.p
        return x

    def add(self, a, b):
        return self.from_vec([(x + y) % self.p for x, y in zip(self.to_vec(a), self.to_vec(b))])

    def mul(self, a, b):
        return self._mul_table[a][b]

    @cached_property
    def _mul_table(self):
        q = self.q
        table = [[0] * q for _ in range(q)]
        for a in range(q):
            va = self.to_vec(a)
            for b in range(a, q):
                c = _polymul_mod(va, self.to_vec(b), self.modulus, self.p)
                table[a][b] = table[b][a] = self.from_vec(c)
        return table

    def power(self, a, n):
        r = 1
        for _ in range(n % (self.q - 1) if a else n):
            r = self.mul(r, a)
        return r if n or a else 1

    @cached_property
    def generator(self):
        """The class of ``x``: a primitive element by choice of modulus."""
        return self.p if self.k > 1 else _primitive_root(self.p)

    def log_table(self):
        """Exponent of each nonzero element with respect to ``generator``."""
        logs = {}
        x = 1
        for e in range(self.q - 1):
            logs[x] = e
            x = self.mul(x, self.generator)
        return logs

    def mult_matrix(self, a):
        """Matrix of ``x -> a x`` on the F_p-basis ``1, t, ..., t^(k-1)``."""
        cols = [self.to_vec(self.mul(a, self.p**i)) for i in range(self.k)]
        return np.array(cols, dtype=np.int64).T

    def frobenius_matrix(self, power=1):
        """Matrix of ``x -> x^(p^power)``."""
        e = self.p**power
        cols = [self.to_vec(self._pow(self.p**i if self.k > 1 else 1, e)) for i in range(self.k)]
        return np.array(cols, dtype=np.int64).T

    def _pow(self, a, e):
        r = 1
        for _ in range(e):
            r = self.mul(r, a)
        return r

    def subfield_elements(self, d):
        """Elements of the subfield of order ``p^d`` (``d`` divides ``k``)."""
        if self.k % d:
            raise ValueError("not a subfield degree")
        e = self.p**d
        return [x for x in range(self.q) if self._pow(x, e) == x]


def _polymul_mod(a, b, mod, p):
    k = len(mod) - 1
    prod = [0] * (2 * k - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    for d in range(len(prod) - 1, k - 1, -1):
        c = prod[d]
        if c:
            for i in range(k + 1):
                prod[d - k + i] = (prod[d - k + i] - c * mod[i]) % p
    return prod[:k]


def _primitive_root(p):
    if p == 2:
        return 1
    for g in range(2, p):
        if all(pow(g, (p - 1) // r, p) != 1 for r in _prime_factors(p - 1)):
            return g
    raise ValueError(p)


def _prime_factors(n):
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _primitive_polynomial(p, k):
    if k == 1:
        return [0, 1]
    q = p**k
    for coeffs in product(range(p), repeat=k):
        mod = list(coeffs) + [1]
        if mod[0] == 0:
            continue
        # order of x modulo mod must be exactly q - 1
        x = [0, 1] + [0] * (k - 2)
        one = [1] + [0] * (k - 1)

        def pw(e):
            r, b = one, x
            while e:
                if e & 1:
                    r = _polymul_mod(r, b, mod, p)
                b = _polymul_mod(b, b, mod, p)
                e >>= 1
            return r

        if pw(q - 1) != one:
            continue
        if all(pw((q - 1) // r) != one for r in _prime_factors(q - 1)):
            return mod
    raise ValueError(f"no primitive polynomial for GF({p}^{k})")
