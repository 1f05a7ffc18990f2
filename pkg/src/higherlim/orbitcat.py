"""Orbit categories of finite groups and small finite categories in general.

A finite category here is anything exposing ``objects``, ``hom(a, b)``,
``compose(f, g)`` and ``identity(a)`` with objects referred to by their
index.  ``compose(f, g)`` is ``f after g``.  Orbit categories realize
``Mor(H, K)`` as right cosets ``Kg`` with ``gHg^-1 <= K``, each stored
by its lexicographically least element.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import groups as grp

CHAIN_CAP = int(os.environ.get("HIGHERLIM_CHAIN_CAP", 10**7))


class ChainCapExceeded(RuntimeError):
    pass


@dataclass(frozen=True, order=True)
class CosetMorphism:
    """The morphism ``H -> K`` given by the coset ``K g`` (``rep`` = least element)."""

    source: int
    target: int
    rep: grp.Perm

    def __repr__(self):
        return f"[{self.rep!r}]:{self.source}->{self.target}"


@dataclass(frozen=True, order=True)
class Arrow:
    """A morphism in a category with at most one arrow between two objects."""

    source: int
    target: int


class FiniteCategory:
    """Shared machinery: chain enumeration and law checks."""

    objects: list

    def hom(self, a, b):
        raise NotImplementedError

    def compose(self, f, g):
        raise NotImplementedError

    def identity(self, a):
        raise NotImplementedError

    def is_identity(self, f):
        return f.source == f.target and f == self.identity(f.source)

    @property
    def n_objects(self):
        return len(self.objects)

    def morphisms(self):
        for a in range(self.n_objects):
            for b in range(self.n_objects):
                yield from self.hom(a, b)

    def out_morphisms(self, a, nondegenerate=False):
        out = []
        for b in range(self.n_objects):
            for f in self.hom(a, b):
                if nondegenerate and self.is_identity(f):
                    continue
                out.append(f)
        return out

    def morphism_count(self):
        return sum(len(self.hom(a, b)) for a in range(self.n_objects) for b in range(self.n_objects))

    def chains(self, n, nondegenerate=True, cap=None):
        """All composable sequences ``c_0 -> ... -> c_n`` as tuples of morphisms.

        Degree 0 chains are 1-tuples holding the object index.  Enumeration
        is depth-first over objects, then morphisms in canonical order.
        """
        cap = CHAIN_CAP if cap is None else cap
        if n == 0:
            return [(a,) for a in range(self.n_objects)]
        outs = [self.out_morphisms(a, nondegenerate) for a in range(self.n_objects)]
        result = []

        def extend(prefix, obj):
            if len(prefix) == n:
                result.append(tuple(prefix))
                if len(result) > cap:
                    raise ChainCapExceeded(f"more than {cap} chains of length {n}")
                return
            for f in outs[obj]:
                prefix.append(f)
                extend(prefix, f.target)
                prefix.pop()

        for a in range(self.n_objects):
            extend([], a)
        return result

    def chain_count(self, n, nondegenerate=True):
        if n == 0:
            return self.n_objects
        targets = [[f.target for f in self.out_morphisms(a, nondegenerate)] for a in range(self.n_objects)]
        counts = [1] * self.n_objects
        for _ in range(n):
            counts = [sum(counts[t] for t in targets[a]) for a in range(self.n_objects)]
        return sum(counts)

    def composable_pairs(self):
        for f in self.morphisms():
            for b in range(self.n_objects):
                for g in self.hom(f.target, b):
                    yield g, f

    def check_laws(self, limit=10**4, rng=None):
        """Verify identity and associativity laws; exhaustive up to ``limit`` pairs (None: all)."""
        for a in range(self.n_objects):
            ida = self.identity(a)
            for b in range(self.n_objects):
                for f in self.hom(a, b):
                    if self.compose(f, ida) != f or self.compose(self.identity(b), f) != f:
                        return False
        pairs = list(self.composable_pairs())
        if limit is not None and len(pairs) > limit:
            import random
            rng = rng or random.Random(0)
            pairs = rng.sample(pairs, limit)
        for g, f in pairs:
            gf = self.compose(g, f)
            if (gf.source, gf.target) != (f.source, g.target):
                return False
            for h in self.out_morphisms(g.target):
                if self.compose(h, gf) != self.compose(self.compose(h, g), f):
                    return False
        return True

    def check_epimorphisms(self):
        """Every morphism is an epimorphism: ``f g = f' g`` forces ``f = f'``."""
        for g in self.morphisms():
            for c in range(self.n_objects):
                seen = {}
                for f in self.hom(g.target, c):
                    fg = self.compose(f, g)
                    if fg in seen and seen[fg] != f:
                        return False
                    seen[fg] = f
        return True


class OrbitCategory(FiniteCategory):
    """``O_X(G)``: objects a list of subgroups, morphisms right cosets.

    With ``close=True`` the object list is replaced by its conjugation
    closure; ``close=False`` keeps the given list (used for skeleta).
    """

    def __init__(self, G, X, close=True):
        if not X:
            raise ValueError("object set must be nonempty")
        for H in X:
            if H.degree != G.degree or not set(H.generators) <= G.element_set:
                raise ValueError("object is not a subgroup of G")
        self.group = G
        objs = grp.conjugation_closure(G, X) if close else [grp.as_subgroup(G, H) for H in X]
        self.objects = objs
        self._pos = {H.element_set: i for i, H in enumerate(objs)}
        if len(self._pos) != len(objs):
            raise ValueError("repeated object")
        # coset tables and hom-sets are built on first use
        self._canon_tables = {}
        self._hom = {}

    @property
    def _canon(self):
        return _LazyTables(self)

    def _coset_table(self, K):
        table = {}
        Ks = K.elements
        for g in self.group.elements:
            if g in table:
                continue
            coset = [k * g for k in Ks]
            rep = min(coset)
            for x in coset:
                table[x] = rep
        return table

    def _build_hom(self, a, b):
        H, K = self.objects[a], self.objects[b]
        if H.order() > K.order() or K.order() % H.order():
            return ()
        reps = sorted(set(self._canon[b].values()))
        out = []
        for g in reps:
            gi = g.inverse()
            if all(g * h * gi in K for h in H.generators):
                out.append(CosetMorphism(a, b, g))
        return tuple(out)

    def position(self, H):
        """Object index of the subgroup ``H`` (or KeyError)."""
        return self._pos[H.element_set]

    def canonical(self, b, g):
        return self._canon[b][g]

    def hom(self, a, b):
        h = self._hom.get((a, b))
        if h is None:
            h = self._hom[a, b] = self._build_hom(a, b)
        return h

    def morphism(self, a, b, g):
        """The morphism ``a -> b`` induced by the group element ``g``."""
        f = CosetMorphism(a, b, self._canon[b][g])
        gi = g.inverse()
        if not all(g * h * gi in self.objects[b] for h in self.objects[a].generators):
            raise ValueError("g does not conjugate source into target")
        return f

    def compose(self, f, g):
        if g.target != f.source:
            raise ValueError(f"cannot compose {f!r} after {g!r}")
        return CosetMorphism(g.source, f.target, self._canon[f.target][f.rep * g.rep])

    def identity(self, a):
        return CosetMorphism(a, a, self._canon[a][self.group.identity])

    def is_identity(self, f):
        return f.source == f.target and f.rep in self.objects[f.source]

    def transporter_size(self, a, b):
        """``|{g in G : g H g^-1 <= K}|`` computed directly over the group."""
        H, K = self.objects[a], self.objects[b]
        n = 0
        for g in self.group.elements:
            gi = g.inverse()
            if all(g * h * gi in K for h in H.generators):
                n += 1
        return n

    def trivial_object(self):
        for i, H in enumerate(self.objects):
            if H.order() == 1:
                return i
        raise KeyError("trivial subgroup is not an object")

    @cached_property
    def conjugacy_classes(self):
        return grp.conjugacy_classes_of_subgroups(self.group, self.objects)

    def is_conjugation_closed(self):
        for H in self.objects:
            for g in self.group.generators:
                if H.conjugate(g).element_set not in self._pos:
                    return False
        return True


class _LazyTables:
    def __init__(self, C):
        self.C = C

    def __getitem__(self, b):
        t = self.C._canon_tables.get(b)
        if t is None:
            t = self.C._canon_tables[b] = self.C._coset_table(self.C.objects[b])
        return t


def build_orbit_category(G, X):
    return OrbitCategory(G, X)


def p_orbit_category(G, p, skeletal=True):
    """``O_p(G)``, by default reduced to one object per conjugacy class."""
    C = OrbitCategory(G, grp.p_subgroups(G, p))
    return skeleton(C) if skeletal else C


def compose(C, f, g):
    return C.compose(f, g)


def chains(C, n, nondegenerate=True, cap=None):
    return C.chains(n, nondegenerate, cap)


def skeleton(C):
    """Full subcategory on the first member of each conjugacy class."""
    reps = [C.objects[cls[0]] for cls in C.conjugacy_classes]
    if len(reps) == C.n_objects:
        return C
    S = OrbitCategory(C.group, reps, close=False)
    S.ambient = C
    return S


class CategoryFunctor:
    """A functor given by an object map (indices) and a morphism map."""

    def __init__(self, source, target, on_objects, on_morphisms):
        self.source = source
        self.target = target
        self.on_objects = list(on_objects)
        self._on_morphisms = on_morphisms

    def __call__(self, f):
        return self._on_morphisms(f)

    def check(self):
        src, tgt = self.source, self.target
        for f in src.morphisms():
            Ff = self(f)
            if (Ff.source, Ff.target) != (self.on_objects[f.source], self.on_objects[f.target]):
                return False
        for g, f in src.composable_pairs():
            if self(src.compose(g, f)) != tgt.compose(self(g), self(f)):
                return False
        return all(self(src.identity(a)) == tgt.identity(self.on_objects[a])
                   for a in range(src.n_objects))


def conjugation_functor(src, tgt, g):
    """``c_g``: ``L -> gLg^-1`` and ``[x] -> [g x g^-1]`` between orbit categories.

    ``src`` and ``tgt`` are orbit categories of subgroups ``K1``, ``K2`` of a
    common ambient group (all on the same points) with ``g K1 g^-1 <= K2``.
    """
    gi = g.inverse()
    objmap = []
    for L in src.objects:
        conj = grp.Subgroup(tgt.group, [g * h * gi for h in L.generators],
                            elements=[g * h * gi for h in L.element_set])
        objmap.append(tgt.position(conj))

    def on_mor(f):
        a, b = objmap[f.source], objmap[f.target]
        return CosetMorphism(a, b, tgt.canonical(b, g * f.rep * gi))

    return CategoryFunctor(src, tgt, objmap, on_mor)


def inclusion_functor(src, tgt):
    """The inclusion ``O_X(K) -> O_Y(G)`` for ``K <= G`` with ``X`` inside ``Y``."""
    objmap = [tgt.position(L) for L in src.objects]

    def on_mor(f):
        a, b = objmap[f.source], objmap[f.target]
        return CosetMorphism(a, b, tgt.canonical(b, f.rep))

    return CategoryFunctor(src, tgt, objmap, on_mor)


def skeleton_functor(C, S=None):
    """Retraction ``C -> skeleton(C)`` sending each object to its class representative.

    For each object ``H`` a transporter ``t_H`` with ``t_H H t_H^-1 = R`` is
    fixed; a morphism ``[g]: H -> K`` goes to ``[t_K g t_H^-1]``.
    """
    S = skeleton(C) if S is None else S
    G = C.group
    objmap, trans = [], []
    for H in C.objects:
        for i, R in enumerate(S.objects):
            if R.order() != H.order():
                continue
            t = next((g for g in G.elements if H.conjugate(g) == R), None)
            if t is not None:
                objmap.append(i)
                trans.append(t)
                break
        else:
            raise ValueError("object has no representative in the skeleton")

    def on_mor(f):
        a, b = objmap[f.source], objmap[f.target]
        g = trans[f.target] * f.rep * trans[f.source].inverse()
        return CosetMorphism(a, b, S.canonical(b, g))

    F = CategoryFunctor(C, S, objmap, on_mor)
    F.transporters = trans
    return F


def homomorphism_functor(src, tgt, hom):
    """Functor ``O_X(K) -> O_Y(G)`` induced by an injective homomorphism ``hom: K -> G``.

    An object ``P`` goes to the object of ``tgt`` conjugate to ``hom(P)``,
    through a fixed transporter ``t_P`` (the identity when ``hom(P)`` is
    itself an object); ``[g]: P -> Q`` goes to ``[t_Q hom(g) t_P^-1]``.
    """
    G = tgt.group
    objmap, trans = [], []
    for P in src.objects:
        img = hom.image(P)
        try:
            objmap.append(tgt.position(img))
            trans.append(G.identity)
            continue
        except KeyError:
            pass
        for i, R in enumerate(tgt.objects):
            if R.order() != img.order():
                continue
            t = next((g for g in G.elements if img.conjugate(g) == R), None)
            if t is not None:
                objmap.append(i)
                trans.append(t)
                break
        else:
            raise ValueError("image of an object is not conjugate to a target object")

    def on_mor(f):
        a, b = objmap[f.source], objmap[f.target]
        g = trans[f.target] * hom(f.rep) * trans[f.source].inverse()
        return CosetMorphism(a, b, tgt.canonical(b, g))

    F = CategoryFunctor(src, tgt, objmap, on_mor)
    F.transporters = trans
    return F


# --- exhaustive law checks ----------------------------------------------------------


def law_report(C, compare_limit=2_000_000):
    """Exhaustive category-law and epimorphism checks for an orbit category.

    Composition tables ``T[a, b, c][j, i]`` (the index of ``g_j o f_i`` in
    ``Mor(a, c)``) are built from the group multiplication table and the
    right cosets of each target, independently of ``C.compose``.  On them
    the identity laws, closure of hom-sets, associativity on every
    composable triple and the epimorphism property are checked.  Hom-set
    sizes are compared against transporter counts, and ``C.compose`` is
    compared with the tables on every composable pair when there are at
    most ``compare_limit`` of them.
    """
    G = C.group
    els = G.elements
    idx = {g: i for i, g in enumerate(els)}
    n = len(els)
    mult = np.array([[idx[x * y] for y in els] for x in els], dtype=np.int32)
    inv = np.array([idx[g.inverse()] for g in els], dtype=np.int32)
    m = C.n_objects
    labels, members = [], []
    for K in C.objects:
        ks = np.array([idx[k] for k in K.elements], dtype=np.int32)
        lab = np.full(n, -1, dtype=np.int32)
        c = 0
        for i in range(n):
            if lab[i] < 0:
                lab[mult[ks, i]] = c
                c += 1
        labels.append(lab)
        mask = np.zeros(n, dtype=bool)
        mask[ks] = True
        members.append(mask)
    reps = [[np.array([idx[f.rep] for f in C.hom(a, b)], dtype=np.int32) for b in range(m)]
            for a in range(m)]
    report = {"objects": m, "morphisms": int(sum(len(r) for row in reps for r in row))}
    fails = []

    # hom-sets: one morphism per coset, sized by the transporter
    pos = [[None] * m for _ in range(m)]
    conj = np.empty((n, n), dtype=np.int32)   # conj[g, h] = g h g^-1
    for g in range(n):
        conj[g] = mult[mult[g], inv[g]]
    for a in range(m):
        hg = np.array([idx[h] for h in C.objects[a].generators], dtype=np.int32)
        for b in range(m):
            r = reps[a][b]
            ncos = n // C.objects[b].order()
            arr = np.full(ncos, -1, dtype=np.int32)
            arr[labels[b][r]] = np.arange(len(r), dtype=np.int32)
            pos[a][b] = arr
            trans = int(members[b][conj[:, hg]].all(axis=1).sum()) if len(hg) else n
            if len(set(labels[b][r].tolist())) != len(r) or len(r) * C.objects[b].order() != trans:
                fails.append(f"hom({a},{b})")

    tables = {}

    def table(a, b, c):
        T = tables.get((a, b, c))
        if T is None:
            prod = mult[reps[b][c][:, None], reps[a][b][None, :]]
            T = pos[a][c][labels[c][prod]]
            tables[a, b, c] = T
        return T

    reach = [[bool(len(reps[a][b])) for b in range(m)] for a in range(m)]
    pairs = 0
    for a in range(m):
        for b in range(m):
            if not reach[a][b]:
                continue
            for c in range(m):
                if not reach[b][c]:
                    continue
                T = table(a, b, c)
                pairs += T.size
                if (T < 0).any():
                    fails.append(f"closure({a},{b},{c})")
                    continue
                if T.shape[0] > 1:
                    S = np.sort(T, axis=0)
                    if (S[1:] == S[:-1]).any():
                        fails.append(f"epimorphism({a},{b},{c})")
    if fails:
        epi = not any(f.startswith("epimorphism") for f in fails)
        report.update(laws=False, epimorphisms=epi, failures=fails[:20], **{"pass": False})
        return report
    for a in range(m):
        ida = pos[a][a][labels[a][idx[G.identity]]]
        for b in range(m):
            if not reach[a][b]:
                continue
            k = len(reps[a][b])
            idb = pos[b][b][labels[b][idx[G.identity]]]
            if not (np.array_equal(table(a, a, b)[:, ida], np.arange(k))
                    and np.array_equal(table(a, b, b)[idb, :], np.arange(k))):
                fails.append(f"identity({a},{b})")
    triples = 0
    for a in range(m):
        for b in range(m):
            if not reach[a][b]:
                continue
            for c in range(m):
                if not reach[b][c]:
                    continue
                Tabc = table(a, b, c)
                for d in range(m):
                    if not reach[c][d]:
                        continue
                    Tbcd, Tacd, Tabd = table(b, c, d), table(a, c, d), table(a, b, d)
                    left = Tacd[:, Tabc]                      # h o (g o f)
                    right = Tabd[Tbcd[:, :, None], np.arange(Tabc.shape[1])[None, None, :]]
                    triples += left.size
                    if not np.array_equal(left, right):
                        fails.append(f"associativity({a},{b},{c},{d})")
    agrees = None
    if pairs <= compare_limit:
        agrees = True
        for (a, b, c), T in tables.items():
            homs_ab, homs_bc, homs_ac = C.hom(a, b), C.hom(b, c), C.hom(a, c)
            for j, g in enumerate(homs_bc):
                for i, f in enumerate(homs_ab):
                    if C.compose(g, f) != homs_ac[T[j, i]]:
                        agrees = False
        if not agrees:
            fails.append("compose disagrees with the coset tables")
    report.update(composable_pairs=int(pairs), composable_triples=int(triples),
                  compose_agrees=agrees, laws=not fails, epimorphisms=True,
                  failures=fails[:20], **{"pass": not fails})
    return report
