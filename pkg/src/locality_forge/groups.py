"""Finite group arithmetic on dense index tables, plus subgroup-lattice primitives."""

from functools import lru_cache

from .caps import get_caps, ResourceError


class DomainError(ValueError):
    pass


def _compose(a, b):
    # apply a first, then b
    return tuple(b[a[i]] for i in range(len(a)))


def _invert(a):
    out = [0] * len(a)
    for i, j in enumerate(a):
        out[j] = i
    return tuple(out)


class FiniteGroup:
    """Group with elements indexed 0..order-1 and a dense multiplication table.

    Index 0 is always the identity.  perm_images[i], when present, is the
    permutation realizing element i (images, 0-based).
    """

    def __init__(self, mult, inv, perm_images=None):
        self.order = len(mult)
        self.mult = mult
        self.inv = inv
        self.identity = 0
        self.perm_images = perm_images
        self._verify()

    def _verify(self):
        n = self.order
        cap = get_caps().exhaustive_group_check
        for a in range(n):
            if self.mult[0][a] != a or self.mult[a][0] != a:
                raise DomainError("identity law fails at %d" % a)
            if self.mult[a][self.inv[a]] != 0 or self.mult[self.inv[a]][a] != 0:
                raise DomainError("inverse law fails at %d" % a)
        if n <= cap:
            triples = ((a, b, c) for a in range(n) for b in range(n) for c in range(n))
        else:
            import random
            rng = random.Random(0)
            triples = ((rng.randrange(n), rng.randrange(n), rng.randrange(n))
                       for _ in range(cap ** 3))
        for a, b, c in triples:
            if self.mult[self.mult[a][b]][c] != self.mult[a][self.mult[b][c]]:
                raise DomainError("associativity fails at (%d,%d,%d)" % (a, b, c))
        if self.perm_images is not None:
            for a in range(n):
                # one non-trivial spot check per row keeps this O(n)
                b = self.inv[a]
                if _compose(self.perm_images[a], self.perm_images[b]) != \
                        self.perm_images[self.mult[a][b]]:
                    raise DomainError("perm_images disagrees with mult")

    def mul(self, a, b):
        return self.mult[a][b]

    def conj(self, x, g):
        # x^g = g^-1 x g
        return self.mult[self.mult[self.inv[g]][x]][g]

    def word(self, w):
        out = 0
        for g in w:
            out = self.mult[out][g]
        return out

    def element_order(self, g):
        k, x = 1, g
        while x != 0:
            x = self.mult[x][g]
            k += 1
        return k

    def all(self):
        return range(self.order)


class Subgroup:
    """Subgroup as a frozenset of parent indices; canonical form is the sorted tuple."""

    __slots__ = ("parent", "members", "_key")

    def __init__(self, parent, members, check=True):
        self.parent = parent
        self.members = frozenset(members)
        self._key = tuple(sorted(self.members))
        if check:
            m = self.members
            if 0 not in m:
                raise DomainError("subgroup misses identity")
            for a in m:
                if parent.inv[a] not in m:
                    raise DomainError("subgroup not inverse-closed")
                row = parent.mult[a]
                for b in m:
                    if row[b] not in m:
                        raise DomainError("subgroup not closed")

    @property
    def order(self):
        return len(self.members)

    @property
    def key(self):
        return self._key

    def __eq__(self, other):
        return isinstance(other, Subgroup) and self.parent is other.parent \
            and self.members == other.members

    def __hash__(self):
        return hash(self._key)

    def __le__(self, other):
        return self.members <= other.members

    def __lt__(self, other):
        return self.members < other.members

    def __contains__(self, g):
        return g in self.members

    def __iter__(self):
        return iter(self._key)

    def __repr__(self):
        return "Subgroup(order=%d)" % len(self.members)


def make_perm_group(generators, points=None):
    """Close a set of permutations (1-based image lists or 0-based tuples) into a FiniteGroup.

    Breadth-first from the identity with the given generator order, so the
    element indexing is deterministic.
    """
    gens = []
    for g in generators:
        g = tuple(g)
        if g and min(g) == 1:
            g = tuple(x - 1 for x in g)
        gens.append(g)
    if points is None:
        points = len(gens[0]) if gens else 1
    for g in gens:
        if sorted(g) != list(range(points)):
            raise DomainError("not a permutation on %d points: %r" % (points, g))
    ident = tuple(range(points))
    cap = get_caps().group_order
    elems = [ident]
    index = {ident: 0}
    frontier = [ident]
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = _compose(x, g)
                if y not in index:
                    index[y] = len(elems)
                    elems.append(y)
                    new.append(y)
                    if len(elems) > cap:
                        raise ResourceError("group order cap %d exceeded" % cap)
        frontier = new
    n = len(elems)
    mult = [[index[_compose(elems[a], elems[b])] for b in range(n)] for a in range(n)]
    inv = [index[_invert(elems[a])] for a in range(n)]
    return FiniteGroup(mult, inv, perm_images=elems)


def generated_subgroup(G, seed):
    """Subgroup of G generated by the given element indices."""
    elems = {0}
    frontier = [0]
    gens = sorted(set(seed) | {G.inv[g] for g in seed})
    while frontier:
        new = []
        for x in frontier:
            row = G.mult[x]
            for g in gens:
                y = row[g]
                if y not in elems:
                    elems.add(y)
                    new.append(y)
        frontier = new
    return Subgroup(G, elems, check=False)


def all_subgroups(G):
    """Every subgroup exactly once, sorted by (order, canonical members)."""
    cap = get_caps().subgroup_count
    subs = {frozenset([0])}
    frontier = set(subs)
    while frontier:
        new = set()
        for H in frontier:
            for g in G.all():
                if g in H:
                    continue
                K = generated_subgroup(G, set(H) | {g}).members
                if K not in subs:
                    subs.add(K)
                    new.add(K)
                    if len(subs) > cap:
                        raise ResourceError("subgroup count cap %d exceeded" % cap)
        frontier = new
    out = [Subgroup(G, m, check=False) for m in subs]
    out.sort(key=lambda H: (H.order, H.key))
    return out


def p_part(m, p):
    k = 1
    while m % p == 0:
        m //= p
        k *= p
    return k


def is_p_group(G, H, p):
    return all(p_part(G.element_order(g), p) == G.element_order(g) for g in H)


def sylow_subgroup(G, p):
    """A Sylow p-subgroup, grown by repeatedly adjoining normalizing p-elements."""
    target = p_part(G.order, p)
    P = generated_subgroup(G, [])
    while P.order < target:
        grown = False
        for g in G.all():
            if g in P:
                continue
            o = G.element_order(g)
            if p_part(o, p) != o:
                continue
            if all(G.conj(x, g) in P for x in P):
                P = generated_subgroup(G, set(P.members) | {g})
                grown = True
                break
        if not grown:  # cannot happen in a finite group below Sylow order
            raise DomainError("stuck below Sylow order; group tables inconsistent")
    assert P.order == target
    return P


def normalizer(G, H):
    if not H.members <= frozenset(G.all()):
        raise DomainError("H not inside G")
    mem = H.members
    return Subgroup(G, [g for g in G.all()
                        if all(G.conj(x, g) in mem for x in mem)], check=False)


def centralizer(G, H):
    return Subgroup(G, [g for g in G.all()
                        if all(G.conj(x, g) == x for x in H.members)], check=False)


def center(G):
    return centralizer(G, Subgroup(G, range(G.order), check=False))


def normal_closure(G, seed):
    """Smallest normal subgroup containing the seed elements."""
    elems = set(seed)
    while True:
        H = generated_subgroup(G, elems)
        extra = {G.conj(x, g) for x in H.members for g in G.all()} - H.members
        if not extra:
            return H
        elems = H.members | extra


def normal_subgroups(G):
    """All normal subgroups, as joins of the singleton normal closures."""
    atoms = {normal_closure(G, [g]).members for g in G.all() if g != 0}
    out = {frozenset([0])}
    frontier = set(out)
    while frontier:
        new = set()
        for N in frontier:
            for a in atoms:
                if a <= N:
                    continue
                M = normal_closure(G, N | a).members
                if M not in out:
                    out.add(M)
                    new.add(M)
        frontier = new
    subs = [Subgroup(G, m, check=False) for m in out]
    subs.sort(key=lambda H: (H.order, H.key))
    return subs


def o_p(G, p):
    """Largest normal p-subgroup, joined from the p-group atoms; cross-checked
    against the intersection of the Sylow p-subgroup's conjugates."""
    best = frozenset([0])
    for g in G.all():
        if g == 0:
            continue
        o = G.element_order(g)
        if p_part(o, p) != o:
            continue
        N = normal_closure(G, best | {g})
        if is_p_group(G, N.members, p):
            best = N.members
    S = sylow_subgroup(G, p)
    inter = set(S.members)
    for g in G.all():
        inter &= {G.conj(x, g) for x in S.members}
    assert frozenset(inter) == best, "O_p join disagrees with Sylow intersection"
    return Subgroup(G, best, check=False)


def o_p_prime(G, p):
    """Largest normal subgroup of order coprime to p."""
    best = frozenset([0])
    for g in G.all():
        if g == 0 or G.element_order(g) % p == 0:
            continue
        N = normal_closure(G, best | {g})
        if all(G.element_order(x) % p for x in N.members) and N.order % p:
            best = N.members
    return Subgroup(G, best, check=False)


def is_characteristic_p(G, p):
    """C_G(O_p(G)) <= O_p(G)."""
    return centralizer(G, o_p(G, p)).members <= o_p(G, p).members


def has_normalizer_increasing_property(S):
    """For every proper containment P < Q of subgroups of S, P < N_Q(P)."""
    subs = all_subgroups(S)
    for P in subs:
        for Q in subs:
            if P.members < Q.members:
                nq = {g for g in Q.members
                      if all(S.conj(x, g) in P.members for x in P.members)}
                if nq == P.members:
                    return False
    return True


def subgroup_as_group(G, H):
    """H reindexed as its own FiniteGroup; returns (group, to_parent, from_parent)."""
    to_parent = sorted(H.members, key=lambda g: (g != 0, g))
    from_parent = {g: i for i, g in enumerate(to_parent)}
    n = len(to_parent)
    mult = [[from_parent[G.mult[to_parent[a]][to_parent[b]]] for b in range(n)]
            for a in range(n)]
    inv = [from_parent[G.inv[to_parent[a]]] for a in range(n)]
    perms = None
    if G.perm_images is not None:
        perms = [G.perm_images[g] for g in to_parent]
    return FiniteGroup(mult, inv, perm_images=perms), to_parent, from_parent


def quotient_group(G, N):
    """G/N for N normal; returns (group, projection list G-index -> quotient index)."""
    mem = N.members
    if normalizer(G, N).order != G.order:
        raise DomainError("quotient by non-normal subgroup")
    coset_of = {}
    reps = []
    for g in G.all():
        if g in coset_of:
            continue
        cos = frozenset(G.mult[n][g] for n in mem)
        idx = len(reps)
        reps.append(min(cos))
        for h in cos:
            coset_of[h] = idx
    # reorder so identity coset is index 0
    order = sorted(range(len(reps)), key=lambda i: (reps[i] != 0, reps[i]))
    newpos = {old: new for new, old in enumerate(order)}
    reps = [reps[i] for i in order]
    proj = [newpos[coset_of[g]] for g in G.all()]
    n = len(reps)
    mult = [[proj[G.mult[reps[a]][reps[b]]] for b in range(n)] for a in range(n)]
    inv = [proj[G.inv[reps[a]]] for a in range(n)]
    return FiniteGroup(mult, inv), proj
