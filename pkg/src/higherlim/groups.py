"""Finite permutation groups and the subgroup operations used downstream.

Groups are small enough to enumerate: every operation here works on the
full element list, guarded by an enumeration bound.  Permutations compose
right-to-left, ``(g * h)(x) = g(h(x))``, and conjugation is
``g H g^-1``.
"""
from __future__ import annotations

import os
from functools import cached_property

ENUMERATION_BOUND = int(os.environ.get("HIGHERLIM_ENUM_BOUND", 10**5))
DEGREE_BOUND = int(os.environ.get("HIGHERLIM_DEGREE_BOUND", 64))


class GroupTooLarge(ValueError):
    """Raised when an operation needs to enumerate a group above the bound."""


class Perm(tuple):
    """A permutation of ``range(degree)`` stored as its image tuple."""

    __slots__ = ()

    def __new__(cls, images):
        return super().__new__(cls, images)

    @classmethod
    def identity(cls, degree):
        return cls(range(degree))

    @classmethod
    def from_cycles(cls, cycles, degree):
        """Build from disjoint cycles, e.g. ``[(0, 1), (2, 3, 4)]`` or ``"(0 1)(2 3 4)"``."""
        if isinstance(cycles, str):
            cycles = parse_cycles(cycles)
        img = list(range(degree))
        seen = set()
        for cyc in cycles:
            for i, a in enumerate(cyc):
                if a in seen or not 0 <= a < degree:
                    raise ValueError(f"bad cycle {cyc!r} for degree {degree}")
                seen.add(a)
                img[a] = cyc[(i + 1) % len(cyc)]
        return cls(img)

    @property
    def degree(self):
        return len(self)

    def __mul__(self, other):
        return Perm([self[i] for i in other])

    def __rmul__(self, other):
        return NotImplemented

    def __pow__(self, k):
        result = Perm.identity(len(self))
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __call__(self, x):
        return self[x]

    def inverse(self):
        inv = [0] * len(self)
        for i, j in enumerate(self):
            inv[j] = i
        return Perm(inv)

    def is_identity(self):
        return all(i == j for i, j in enumerate(self))

    def order(self):
        n = 1
        for cyc in self.cycles():
            n = _lcm(n, len(cyc))
        return n

    def cycles(self):
        seen = set()
        out = []
        for start in range(len(self)):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            j = self[start]
            while j != start:
                cyc.append(j)
                seen.add(j)
                j = self[j]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def __repr__(self):
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)

    def shifted(self, offset, degree):
        """This permutation acting on ``offset + range(len(self))`` inside ``degree`` points."""
        img = list(range(degree))
        for i, j in enumerate(self):
            img[offset + i] = offset + j
        return Perm(img)


def parse_cycles(text):
    """Parse ``"(0 1)(2,3,4)"`` into a list of integer tuples (0-indexed)."""
    text = text.strip()
    if text in ("", "()", "1", "e", "id"):
        return []
    out = []
    for chunk in text.split(")"):
        chunk = chunk.strip()
        if not chunk:
            continue
        if not chunk.startswith("("):
            raise ValueError(f"malformed cycle notation: {text!r}")
        body = chunk[1:].replace(",", " ").split()
        out.append(tuple(int(x) for x in body))
    return out


def _lcm(a, b):
    from math import gcd
    return a * b // gcd(a, b)


def p_part(n, p):
    q = 1
    while n % p == 0:
        n //= p
        q *= p
    return q


def is_prime(p):
    return p >= 2 and all(p % d for d in range(2, int(p**0.5) + 1))


class PermGroup:
    """A permutation group given by generators; elements enumerated lazily."""

    def __init__(self, generators, degree=None, name=None, *, elements=None):
        gens = [g if isinstance(g, Perm) else Perm(g) for g in generators]
        if degree is None:
            if not gens:
                raise ValueError("degree required for a group without generators")
            degree = len(gens[0])
        for g in gens:
            if len(g) != degree or sorted(g) != list(range(degree)):
                raise ValueError(f"{g!r} is not a permutation of degree {degree}")
        self.degree = degree
        self.generators = tuple(g for g in gens if not g.is_identity())
        self.name = name
        if elements is not None:
            self.__dict__["element_set"] = frozenset(elements)

    def __repr__(self):
        label = self.name or f"<{', '.join(map(repr, self.generators)) or '()'}>"
        return f"{type(self).__name__}({label}, order={self.order()})"

    @cached_property
    def identity(self):
        return Perm.identity(self.degree)

    @cached_property
    def element_set(self):
        if self.degree > DEGREE_BOUND:
            raise GroupTooLarge(f"degree {self.degree} exceeds bound {DEGREE_BOUND}")
        e = self.identity
        seen = {e}
        frontier = [e]
        while frontier:
            nxt = []
            for x in frontier:
                for g in self.generators:
                    y = x * g
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            if len(seen) > ENUMERATION_BOUND:
                raise GroupTooLarge(f"group order exceeds enumeration bound {ENUMERATION_BOUND}")
            frontier = nxt
        return frozenset(seen)

    @cached_property
    def elements(self):
        """All elements, sorted lexicographically by image tuple."""
        return tuple(sorted(self.element_set))

    @cached_property
    def index(self):
        return {g: i for i, g in enumerate(self.elements)}

    def order(self):
        return len(self.element_set)

    def __len__(self):
        return self.order()

    def __contains__(self, g):
        return g in self.element_set

    def __iter__(self):
        return iter(self.elements)

    def __eq__(self, other):
        if not isinstance(other, PermGroup):
            return NotImplemented
        return self.degree == other.degree and self.element_set == other.element_set

    def __hash__(self):
        return hash((self.degree, self.element_set))

    def __le__(self, other):
        return self.degree == other.degree and all(g in other for g in self.generators)

    def __lt__(self, other):
        return self <= other and self.order() < other.order()

    def subgroup(self, generators, name=None, *, elements=None):
        return Subgroup(self, generators, name=name, elements=elements)

    def trivial_subgroup(self):
        return Subgroup(self, [], elements=[self.identity])

    def whole(self):
        return Subgroup(self, self.generators, name=self.name, elements=self.element_set)

    def is_abelian(self):
        return all(a * b == b * a for a in self.generators for b in self.generators)


class Subgroup(PermGroup):
    """A subgroup of ``parent``; equality is by element set."""

    def __init__(self, parent, generators, name=None, *, elements=None):
        super().__init__(generators, degree=parent.degree, name=name, elements=elements)
        self.parent = parent
        if elements is None:
            for g in self.generators:
                if g not in parent:
                    raise ValueError(f"generator {g!r} is not in the parent group")

    def conjugate(self, g):
        """The subgroup ``g H g^-1``."""
        gi = g.inverse()
        return Subgroup(
            self.parent,
            [g * h * gi for h in self.generators],
            elements=[g * h * gi for h in self.element_set],
        )

    def sort_key(self):
        return (self.order(), self.elements)


def as_subgroup(G, H):
    if isinstance(H, Subgroup) and H.parent is G:
        return H
    return Subgroup(G, H.generators, name=getattr(H, "name", None),
                    elements=H.element_set if H.element_set <= G.element_set else None)


def generated(G, gens, name=None):
    return Subgroup(G, gens, name=name)


def from_elements(G, elements, name=None):
    """Subgroup with a known element set; picks a small generating set."""
    elements = frozenset(elements)
    gens = []
    span = {G.identity}
    for g in sorted(elements):
        if g not in span:
            gens.append(g)
            span = set(Subgroup(G, gens, elements=None).element_set)
    return Subgroup(G, gens, name=name, elements=elements)


# --- basic operations -------------------------------------------------------

def order(G):
    return G.order()


def normalizes(g, H):
    gi = g.inverse()
    return all(g * h * gi in H for h in H.generators)


def normalizer(G, H):
    """``N_G(H)`` by brute force over the elements of ``G``."""
    els = [g for g in G.elements if normalizes(g, H)]
    return from_elements(G, els)


def is_normal(G, H):
    return all(normalizes(g, H) for g in G.generators)


def centralizer(G, H):
    els = [g for g in G.elements if all(g * h == h * g for h in H.generators)]
    return from_elements(G, els)


def center(G):
    return centralizer(G, G)


def normal_core(G, H):
    """Kernel of the action of ``G`` on the cosets ``G/H``: the intersection of conjugates."""
    core = set(H.element_set)
    seen = set()
    for g in G.elements:
        if not core or len(core) == 1:
            break
        conj = H.conjugate(g).element_set
        if conj in seen:
            continue
        seen.add(conj)
        core &= conj
    return from_elements(G, core)


def normal_closure(G, gens):
    K = Subgroup(G, list(gens))
    changed = True
    while changed:
        changed = False
        for g in G.generators:
            gi = g.inverse()
            for k in list(K.generators):
                c = g * k * gi
                if c not in K:
                    K = Subgroup(G, list(K.generators) + [c])
                    changed = True
    return K


def commutator(a, b):
    return a.inverse() * b.inverse() * a * b


def commutator_subgroup(G):
    gens = [commutator(a, b) for a in G.generators for b in G.generators]
    return normal_closure(G, [c for c in gens if not c.is_identity()])


def intersection(G, A, B):
    return from_elements(G, A.element_set & B.element_set)


def product_set_size(A, B):
    """``|AB|`` computed as ``|A||B| / |A ∩ B|``."""
    return A.order() * B.order() // len(A.element_set & B.element_set)


def is_p_element(g, p):
    n = g.order()
    return p_part(n, p) == n


def p_subgroups(G, p):
    """All subgroups of ``p``-power order, sorted by (order, elements).

    Built layer by layer: every p-subgroup of order ``p^(k+1)`` is
    ``<Q, x>`` for some ``Q`` of order ``p^k`` normal in it and ``x`` a
    p-element normalizing ``Q`` with ``x^p`` in ``Q``.
    """
    p_elements = [g for g in G.elements if not g.is_identity() and is_p_element(g, p)]
    layer = {frozenset([G.identity]): G.trivial_subgroup()}
    result = dict(layer)
    while layer:
        nxt = {}
        for Q in layer.values():
            Qs = Q.element_set
            for x in p_elements:
                if x in Qs or (x ** p) not in Qs or not normalizes(x, Q):
                    continue
                powers = [G.identity]
                for _ in range(p - 1):
                    powers.append(powers[-1] * x)
                els = frozenset(q * y for q in Qs for y in powers)
                if els not in nxt:
                    nxt[els] = Subgroup(G, list(Q.generators) + [x], elements=els)
        result.update(nxt)
        layer = nxt
    return sorted(result.values(), key=Subgroup.sort_key)


def sylow_p(G, p):
    """One Sylow p-subgroup, grown greedily through normalizers."""
    target = p_part(G.order(), p)
    Q = G.trivial_subgroup()
    while Q.order() < target:
        Qs = Q.element_set
        for x in G.elements:
            if x in Qs or not is_p_element(x, p) or (x ** p) not in Qs or not normalizes(x, Q):
                continue
            powers = [G.identity]
            for _ in range(p - 1):
                powers.append(powers[-1] * x)
            Q = Subgroup(G, list(Q.generators) + [x],
                         elements=[q * y for q in Qs for y in powers])
            break
        else:  # pragma: no cover - impossible by Sylow theory
            raise RuntimeError("failed to extend p-subgroup")
    return Q


def op_subgroup(G, p):
    """``O_p(G)``: the largest normal p-subgroup (core of a Sylow p-subgroup)."""
    return normal_core(G, sylow_p(G, p))


def conjugacy_classes_of_subgroups(G, subgroups):
    """Partition ``subgroups`` (a conjugation-closed list) into G-classes, in list order."""
    pos = {H.element_set: i for i, H in enumerate(subgroups)}
    classes = []
    assigned = set()
    for i, H in enumerate(subgroups):
        if i in assigned:
            continue
        members = set()
        frontier = [H]
        members.add(i)
        while frontier:
            K = frontier.pop()
            for g in G.generators:
                C = K.conjugate(g)
                j = pos.get(C.element_set)
                if j is None:
                    raise ValueError("subgroup list is not closed under conjugation")
                if j not in members:
                    members.add(j)
                    frontier.append(subgroups[j])
        assigned |= members
        classes.append(sorted(members))
    return classes


def conjugation_closure(G, subgroups):
    """Conjugation closure of a list of subgroups, sorted by (order, elements)."""
    found = {}
    frontier = list(subgroups)
    for H in frontier:
        found.setdefault(H.element_set, as_subgroup(G, H))
    while frontier:
        H = frontier.pop()
        for g in G.generators:
            C = H.conjugate(g)
            if C.element_set not in found:
                found[C.element_set] = C
                frontier.append(C)
    return sorted(found.values(), key=Subgroup.sort_key)


def centralizer_of_module(G, M):
    """``C_G(M)``: the kernel of the action of ``G`` on the module ``M``."""
    if M.group is not G and M.group != G:
        raise ValueError("module is not defined over this group")
    els = [g for g in G.elements if M.acts_trivially(g)]
    return from_elements(G, els)


# --- constructions ----------------------------------------------------------

def cyclic_group(n, name=None):
    if n == 1:
        return PermGroup([], degree=1, name=name or "C1")
    return PermGroup([Perm([(i + 1) % n for i in range(n)])], name=name or f"C{n}")


def symmetric_group(n, name=None):
    if n == 1:
        return PermGroup([], degree=1, name=name or "S1")
    gens = [Perm.from_cycles([(0, 1)], n)]
    if n > 2:
        gens.append(Perm.from_cycles([tuple(range(n))], n))
    return PermGroup(gens, name=name or f"S{n}")


def dihedral_group(n, name=None):
    """Dihedral group of order ``2n`` acting on ``n`` points."""
    rot = Perm([(i + 1) % n for i in range(n)])
    ref = Perm([(-i) % n for i in range(n)])
    return PermGroup([rot, ref], name=name or f"D{n}")


class DirectProduct:
    """``G1 x G2`` on disjoint point sets, with factor embeddings."""

    def __init__(self, G1, G2):
        self.factors = (G1, G2)
        self.offsets = (0, G1.degree)
        deg = G1.degree + G2.degree
        gens = [g.shifted(0, deg) for g in G1.generators]
        gens += [g.shifted(G1.degree, deg) for g in G2.generators]
        name = f"{G1.name}x{G2.name}" if G1.name and G2.name else None
        self.group = PermGroup(gens, degree=deg, name=name)

    def embed(self, i, g):
        return g.shifted(self.offsets[i], self.group.degree)

    def pair(self, g1, g2):
        return self.embed(0, g1) * self.embed(1, g2)

    def project(self, i, g):
        off = self.offsets[i]
        d = self.factors[i].degree
        return Perm([g[off + j] - off for j in range(d)])

    def factor_subgroup(self, i):
        G = self.factors[i]
        return Subgroup(self.group, [self.embed(i, g) for g in G.generators],
                        elements=[self.embed(i, g) for g in G.elements])


def direct_product(G1, G2):
    return DirectProduct(G1, G2)


class WreathProduct:
    """``B wr C_p``: ``p`` copies of ``B`` on consecutive blocks, permuted cyclically."""

    def __init__(self, B, p, name=None):
        self.base_group = B
        self.p = p
        d = B.degree
        self.block = d
        deg = d * p
        self.top = Perm([((i // d + 1) % p) * d + i % d for i in range(deg)])
        gens = [g.shifted(0, deg) for g in B.generators]
        if p > 1:
            gens.append(self.top)
        self.group = PermGroup(gens, degree=deg, name=name)

    def base_embedding(self, g, i=0):
        """``g`` placed in coordinate ``i`` of ``B^p``."""
        return g.shifted(i * self.block, self.group.degree)

    def coordinates(self, gs):
        """The base element ``(g_0, ..., g_{p-1})``."""
        out = Perm.identity(self.group.degree)
        for i, g in enumerate(gs):
            out = out * self.base_embedding(g, i)
        return out

    def diagonal(self, g):
        return self.coordinates([g] * self.p)

    def power_subgroup(self, H):
        """``H^{x p}`` inside the base group, for ``H <= B``."""
        gens = [self.base_embedding(h, i) for i in range(self.p) for h in H.generators]
        return Subgroup(self.group, gens)

    def wreath_subgroup(self, H):
        """``H wr C_p`` inside ``B wr C_p``."""
        gens = [self.base_embedding(h, 0) for h in H.generators]
        if self.p > 1:
            gens.append(self.top)
        return Subgroup(self.group, gens)

    def base_subgroup(self):
        return self.power_subgroup(self.base_group)


def wreath_Cp(B, p, name=None):
    """``B wr C_p`` as a permutation group of degree ``p * deg(B)``."""
    return WreathProduct(B, p, name=name)


class SemidirectProduct:
    """``N x| S`` acting on ``points(N)`` plus the regular ``S``-points.

    ``action`` maps each generator of ``S`` to a permutation of the points
    of ``N`` that normalizes ``N``; conjugation by it is the automorphism.
    Alternatively it may map each generator of ``S`` to a dict
    ``{n_gen: image}`` describing an automorphism on the generators of
    ``N``, in which case ``N`` is first replaced by its regular
    representation.
    """

    def __init__(self, N, S, action, name=None):
        if action and isinstance(next(iter(action.values())), dict):
            N, action = _regularize(N, action)
        self.N = N
        self.S = S
        dN = N.degree
        self.s_points = S.elements
        s_index = {s: i for i, s in enumerate(self.s_points)}
        deg = dN + len(self.s_points)
        self._s_index = s_index
        self.degree = deg

        sigma = _extend_action(S, N, action)
        self.sigma = sigma

        def embed_s(s):
            img = list(sigma[s]) + [dN + s_index[s * t] for t in self.s_points]
            return Perm(img)

        self.embed_S = embed_s
        self.embed_N = lambda n: n.shifted(0, deg)
        gens = [self.embed_N(n) for n in N.generators] + [embed_s(s) for s in S.generators]
        self.group = PermGroup(gens, degree=deg, name=name)
        if self.group.order() != N.order() * S.order():
            raise ValueError("semidirect product representation is not faithful")

    def N_subgroup(self):
        return Subgroup(self.group, [self.embed_N(n) for n in self.N.generators],
                        elements=[self.embed_N(n) for n in self.N.elements])

    def S_subgroup(self):
        return Subgroup(self.group, [self.embed_S(s) for s in self.S.generators],
                        elements=[self.embed_S(s) for s in self.S.elements])


def _extend_action(S, N, action):
    dN = N.degree
    ident = Perm.identity(dN)
    sigma = {S.identity: ident}
    frontier = [S.identity]
    for t in S.generators:
        if t not in action:
            raise ValueError(f"no action given for generator {t!r}")
        if not normalizes(action[t], N):
            raise ValueError("action is not an automorphism of N")
    while frontier:
        nxt = []
        for s in frontier:
            for t in S.generators:
                u = t * s
                img = action[t] * sigma[s]
                if u not in sigma:
                    sigma[u] = img
                    nxt.append(u)
                elif sigma[u] != img:
                    raise ValueError("action is not a homomorphism S -> Aut(N)")
        frontier = nxt
    return sigma


def _regularize(N, action):
    """Regular representation of ``N`` and the automorphisms as point permutations."""
    els = N.elements
    idx = {g: i for i, g in enumerate(els)}
    left = lambda n: Perm([idx[n * x] for x in els])
    Nreg = PermGroup([left(n) for n in N.generators], degree=len(els), name=N.name)
    new_action = {}
    for s, images in action.items():
        amap = {N.identity: N.identity}
        frontier = [N.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for g in N.generators:
                    y = g * x
                    img = images[g] * amap[x]
                    if y not in amap:
                        amap[y] = img
                        nxt.append(y)
                    elif amap[y] != img:
                        raise ValueError("action is not an automorphism of N")
            frontier = nxt
        new_action[s] = Perm([idx[amap[x]] for x in els])
        if len(set(new_action[s])) != len(els):
            raise ValueError("action is not an automorphism of N")
    return Nreg, new_action


def semidirect(N, S, action, name=None):
    return SemidirectProduct(N, S, action, name=name)


class QuotientGroup:
    """``G/H`` for normal ``H``, acting on the left cosets of ``H``.

    Cosets are numbered in order of their least elements; ``project``
    sends ``g`` to the permutation ``xH -> gxH``.
    """

    def __init__(self, G, H, name=None):
        H = as_subgroup(G, H)
        if not is_normal(G, H):
            raise ValueError("quotient by a non-normal subgroup")
        self.ambient = G
        self.kernel = H
        coset_of = {}
        reps = []
        for g in G.elements:
            if g in coset_of:
                continue
            i = len(reps)
            reps.append(g)
            for h in H.elements:
                coset_of[g * h] = i
        self._coset_of = coset_of
        self.reps = reps
        self._proj = {}
        gens = [self.project(g) for g in G.generators]
        self.group = PermGroup(gens, degree=len(reps), name=name)

    def project(self, g):
        img = self._proj.get(g)
        if img is None:
            img = Perm([self._coset_of[g * r] for r in self.reps])
            self._proj[g] = img
        return img

    def lift(self, x):
        """A preimage of ``x``: the least element of the corresponding coset."""
        return self.reps[x[0]]

    def image(self, K):
        """``KH/H`` as a subgroup of the quotient."""
        els = {self.project(k) for k in K.element_set}
        return Subgroup(self.group, [self.project(k) for k in K.generators], elements=els)

    def preimage(self, Kbar):
        """The full preimage of a subgroup of the quotient."""
        els = [g for g in self.ambient.elements if self.project(g) in Kbar]
        return from_elements(self.ambient, els)


def quotient(G, H, name=None):
    return QuotientGroup(G, H, name=name)


class Homomorphism:
    """A homomorphism ``G -> H`` determined by images of the generators of ``G``.

    The full element table is built by breadth-first search, which also
    checks that the assignment respects every relation.
    """

    def __init__(self, G, H, images):
        self.source = G
        self.target = H
        imgs = [images[g] for g in G.generators] if isinstance(images, dict) else list(images)
        if len(imgs) != len(G.generators):
            raise ValueError("need one image per generator")
        table = {G.identity: H.identity}
        frontier = [G.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for g, y in zip(G.generators, imgs):
                    gx = g * x
                    img = y * table[x]
                    old = table.get(gx)
                    if old is None:
                        table[gx] = img
                        nxt.append(gx)
                    elif old != img:
                        raise ValueError("generator images do not define a homomorphism")
            frontier = nxt
        self.table = table

    def __call__(self, g):
        return self.table[g]

    def image(self, K):
        return Subgroup(self.target, [self(k) for k in K.generators],
                        elements={self(k) for k in K.element_set})

    def is_injective(self):
        return len(set(self.table.values())) == len(self.table)

    def compose(self, other):
        """``self o other``."""
        return Homomorphism(other.source, self.target,
                            [self(other(g)) for g in other.source.generators])
