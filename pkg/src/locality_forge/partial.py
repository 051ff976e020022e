"""Partial groups: domain of words, product, inversion, homomorphisms, normal subgroups."""

import itertools
import random

from .caps import get_caps, ResourceError
from .report import Report


class _Undefined:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "Undefined"

    def __bool__(self):
        return False


UNDEFINED = _Undefined()


class PartialGroup:
    """Elements are indices 0..n-1 with opaque labels; 0 is the identity.

    `pairs` is the binary product: {(a,b): ab} exactly on the defined pairs.
    `word_in_domain` decides w in D for arbitrary words; the owning locality
    supplies it (S_w membership).  For a plain group it is constantly True.
    """

    def __init__(self, labels, inv, pairs, word_in_domain):
        self.labels = list(labels)
        self.n = len(self.labels)
        self.inv = list(inv)
        self.pairs = dict(pairs)
        self.word_in_domain = word_in_domain
        self.index_of = {lab: i for i, lab in enumerate(self.labels)}
        if len(self.index_of) != self.n:
            raise ValueError("duplicate labels")

    @classmethod
    def from_group(cls, G, labels=None):
        if labels is None:
            labels = [("g", i) for i in range(G.order)]
        pairs = {(a, b): G.mult[a][b] for a in range(G.order) for b in range(G.order)}
        return cls(labels, list(G.inv), pairs, lambda w: True)

    def elements(self):
        return range(self.n)

    def fold(self, w):
        """Left-fold product, UNDEFINED if some step is missing from pairs."""
        out = 0
        for g in w:
            step = self.pairs.get((out, g))
            if step is None:
                return UNDEFINED
            out = step
        return out


def word_product(L, w):
    """Pi(w) for w in D, else UNDEFINED.  Empty word -> identity."""
    w = tuple(w)
    if not L.word_in_domain(w):
        return UNDEFINED
    out = L.fold(w)
    # D-words must left-fold successfully; a failure here is a structural fault
    assert out is not UNDEFINED, "word in D but left fold undefined: %r" % (w,)
    return out


def conjugate(L, f, g):
    return word_product(L, (L.inv[g], f, g))


def inv_word(L, w):
    return tuple(L.inv[g] for g in reversed(w))


def _word_iter(L, max_len, budget, sample, rng):
    """Exhaustive words up to the longest length fitting the budget, then samples."""
    n = max(L.n, 1)
    total = 0
    length = 1
    while length <= max_len and total + n ** length <= budget:
        for w in itertools.product(range(L.n), repeat=length):
            yield w
        total += n ** length
        length += 1
    for _ in range(sample):
        k = rng.randint(length, max_len) if length <= max_len else rng.randint(2, 6)
        yield tuple(rng.randrange(L.n) for _ in range(k))


def verify_partial_group_axioms(L, seed=0, first_violation=False, max_len=4):
    """Check the four defining conditions plus cancellation; Report carries witnesses."""
    caps = get_caps()
    rng = random.Random(seed)
    rep = Report("partial-group-axioms", seed=seed)

    def fail(name, witness):
        rep.add(name, False, witness)
        return first_violation

    # identity element behaves
    if L.inv[0] != 0:
        if fail("identity-inverse", 0):
            return rep
    for a in L.elements():
        # (1,a), (a,1) and (a,a^-1) always have S-pair = S_a, so all are defined
        if L.pairs.get((0, a)) != a or L.pairs.get((a, 0)) != a:
            if fail("identity-neutral", a):
                return rep
        if L.pairs.get((a, L.inv[a])) != 0:
            if fail("inverse-product", a):
                return rep

    # pairs table consistent with the word domain on length-2 words
    for a in L.elements():
        for b in L.elements():
            in_pairs = (a, b) in L.pairs
            in_dom = L.word_in_domain((a, b))
            if in_pairs != in_dom:
                if fail("binary-domain-mismatch", (a, b)):
                    return rep

    # cancellation: ab = ac with both pairs defined forces b = c
    seen = {}
    for (a, b), c in L.pairs.items():
        if (a, c) in seen and seen[(a, c)] != b:
            if fail("cancellation", (a, b, seen[(a, c)])):
                return rep
        seen[(a, c)] = b

    for w in _word_iter(L, max_len, caps.word_budget, caps.sample_words // 10, rng):
        in_d = L.word_in_domain(w)
        if not in_d:
            continue
        # (1) subword closure on contiguous splits
        for i in range(1, len(w)):
            if not (L.word_in_domain(w[:i]) and L.word_in_domain(w[i:])):
                if fail("subword-closure", (w, i)):
                    return rep
        val = L.fold(w)
        if val is UNDEFINED:
            if fail("fold-undefined-on-D", w):
                return rep
            continue
        # (2) length-1 identity law
        if len(w) == 1 and val != w[0]:
            if fail("length-1-product", w):
                return rep
        # (3) D-associativity: contract any inner chunk through Pi
        for i in range(len(w)):
            for j in range(i + 1, len(w) + 1):
                mid = L.fold(w[i:j])
                if mid is UNDEFINED:
                    if fail("chunk-fold", (w, i, j)):
                        return rep
                    continue
                w2 = w[:i] + (mid,) + w[j:]
                if not L.word_in_domain(w2):
                    if fail("associativity-domain", (w, i, j)):
                        return rep
                elif L.fold(w2) != val:
                    if fail("associativity-value", (w, i, j)):
                        return rep
        # (4) inverse law
        wi = inv_word(L, w)
        if not L.word_in_domain(wi + w):
            if fail("inverse-domain", w):
                return rep
        elif L.fold(wi + w) != 0:
            if fail("inverse-value", w):
                return rep
    rep.finish()
    return rep


class PartialSubgroup:
    def __init__(self, parent, members):
        self.parent = parent
        self.members = frozenset(members)

    @property
    def order(self):
        return len(self.members)

    def __eq__(self, other):
        return isinstance(other, PartialSubgroup) and self.parent is other.parent \
            and self.members == other.members

    def __hash__(self):
        return hash(self.members)

    def __le__(self, other):
        return self.members <= other.members

    def __iter__(self):
        return iter(sorted(self.members))


class PartialNormalSubgroup(PartialSubgroup):
    pass


def generated_partial_subgroup(L, X):
    """Least partial subgroup containing X.

    Binary closure suffices: for any D-word over the closure, every prefix
    product stays defined (S_w lies below the binary S-pair of each step), so
    the fold lands inside the closed set.
    """
    cur = {0} | set(X) | {L.inv[g] for g in X}
    while True:
        new = set()
        for a in cur:
            for b in cur:
                c = L.pairs.get((a, b))
                if c is not None and c not in cur:
                    new.add(c)
        if not new:
            break
        cur |= new
        cur |= {L.inv[g] for g in new}
    return PartialSubgroup(L, cur)


def _check_subgroup(L, members):
    if 0 not in members:
        return ("missing-identity", 0)
    for a in members:
        if L.inv[a] not in members:
            return ("not-inverse-closed", a)
        for b in members:
            c = L.pairs.get((a, b))
            if c is not None and c not in members:
                return ("not-product-closed", (a, b))
    return None


def is_partial_subgroup(L, members):
    return _check_subgroup(L, frozenset(members)) is None


def is_partial_normal(L, members, witness=False):
    """Subgroup invariants plus closure under every defined conjugation."""
    members = frozenset(members)
    bad = _check_subgroup(L, members)
    if bad is None:
        for f in members:
            for g in L.elements():
                c = conjugate(L, f, g)
                if c is not UNDEFINED and c not in members:
                    bad = ("not-conjugation-closed", (f, g))
                    break
            if bad:
                break
    return (bad is None, bad) if witness else bad is None


def normal_closure_partial(L, seed):
    cur = set(seed)
    while True:
        H = generated_partial_subgroup(L, cur).members
        extra = set()
        for f in H:
            for g in L.elements():
                c = conjugate(L, f, g)
                if c is not UNDEFINED and c not in H:
                    extra.add(c)
        if not extra:
            return PartialNormalSubgroup(L, H)
        cur = H | extra


def enumerate_partial_normal_subgroups(L):
    """Complete list, via joins of the singleton normal closures."""
    cap = get_caps().subgroup_count
    atoms = {normal_closure_partial(L, [g]).members for g in L.elements() if g != 0}
    out = {frozenset([0])}
    frontier = set(out)
    while frontier:
        new = set()
        for N in frontier:
            for a in atoms:
                if a <= N:
                    continue
                M = normal_closure_partial(L, N | a).members
                if M not in out:
                    out.add(M)
                    new.add(M)
                    if len(out) > cap:
                        raise ResourceError("normal-subgroup cap exceeded")
        frontier = new
    result = [PartialNormalSubgroup(L, m) for m in out]
    for N in result:
        assert is_partial_normal(L, N.members)
    result.sort(key=lambda N: (N.order, tuple(sorted(N.members))))
    return result


class PGHomomorphism:
    """Total map on carriers; the induced word map must respect D and Pi."""

    def __init__(self, source, target, mapping):
        self.source = source
        self.target = target
        self.mapping = list(mapping)

    def __call__(self, g):
        return self.mapping[g]

    def image_word(self, w):
        return tuple(self.mapping[g] for g in w)

    def __eq__(self, other):
        return isinstance(other, PGHomomorphism) and self.source is other.source \
            and self.target is other.target and self.mapping == other.mapping


def kernel(lam):
    members = frozenset(g for g in lam.source.elements() if lam.mapping[g] == 0)
    assert is_partial_normal(lam.source, members), "kernel is not partial normal"
    return PartialNormalSubgroup(lam.source, members)


def verify_homomorphism(lam, seed=0, max_len=4):
    """Exhaustive-within-budget check that lam is a partial-group homomorphism."""
    caps = get_caps()
    rng = random.Random(seed)
    rep = Report("pg-homomorphism", seed=seed)
    src, tgt = lam.source, lam.target
    if lam.mapping[0] != 0:
        rep.add("identity", False, 0)
    for g in src.elements():
        if lam.mapping[src.inv[g]] != tgt.inv[lam.mapping[g]]:
            rep.add("inversion", False, g)
    for w in _word_iter(src, max_len, caps.word_budget, caps.sample_words // 10, rng):
        if not src.word_in_domain(w):
            continue
        iw = lam.image_word(w)
        if not tgt.word_in_domain(iw):
            rep.add("domain-preservation", False, w)
            continue
        if tgt.fold(iw) != lam.mapping[src.fold(w)]:
            rep.add("product-preservation", False, w)
    rep.finish()
    return rep
