"""Localities (L, Delta, S): construction, axioms, stratification, restriction,
quotients, and the local sub-localities at a subgroup V."""

import itertools
import random
from collections import namedtuple

from . import groups
from .caps import get_caps
from .groups import DomainError, Subgroup
from .partial import (PartialGroup, PartialNormalSubgroup, PGHomomorphism,
                      UNDEFINED, conjugate, is_partial_normal,
                      verify_partial_group_axioms, word_product)
from .report import Report


class Locality:
    """Carrier elements are indices with opaque labels (index 0 = identity).

    sgroup is S as its own FiniteGroup; s_elem maps S-index -> carrier index;
    conj[g] is the map c_g as a dict on S-indices, whose domain is S_g;
    delta is a set of frozensets of S-indices.
    """

    def __init__(self, p, sgroup, labels, inv, pairs, conj, delta, s_elem):
        self.p = p
        self.sgroup = sgroup
        self.conj = list(conj)
        self.delta = frozenset(frozenset(P) for P in delta)
        self.s_elem = list(s_elem)
        self.s_index_of = {e: i for i, e in enumerate(self.s_elem)}
        self.pg = PartialGroup(labels, inv, pairs, self.word_in_domain)
        self._strat = None
        self._subs_of_s = None
        if len(self.conj) != self.pg.n or len(self.s_elem) != sgroup.order:
            raise DomainError("inconsistent carrier tables")

    # -- basic views ---------------------------------------------------------

    @property
    def n(self):
        return self.pg.n

    @property
    def labels(self):
        return self.pg.labels

    @property
    def full_s(self):
        return frozenset(range(self.sgroup.order))

    def elements(self):
        return range(self.pg.n)

    def s_g(self, g):
        return frozenset(self.conj[g])

    def subgroups_of_s(self):
        if self._subs_of_s is None:
            self._subs_of_s = [H.members for H in groups.all_subgroups(self.sgroup)]
        return self._subs_of_s

    # -- word machinery ------------------------------------------------------

    def s_of_word(self, w):
        """S_w: the members of S conjugated stepwise into S by the entries of w."""
        cur = [(x, x) for x in range(self.sgroup.order)]
        for g in w:
            cg = self.conj[g]
            cur = [(x, cg[y]) for (x, y) in cur if y in cg]
        return frozenset(x for x, _ in cur)

    def word_in_domain(self, w):
        return self.s_of_word(w) in self.delta

    def product(self, w):
        return word_product(self.pg, tuple(w))

    def inv(self, g):
        return self.pg.inv[g]

    # -- subgroup-flavoured helpers ------------------------------------------

    def normalizer_members(self, P):
        """N_L(P) as a set of carrier indices, P a frozenset of S-indices."""
        out = []
        for g in self.elements():
            cg = self.conj[g]
            if P <= frozenset(cg) and {cg[x] for x in P} == P:
                out.append(g)
        return frozenset(out)

    def centralizer_members(self, P):
        out = []
        for g in self.elements():
            cg = self.conj[g]
            if P <= frozenset(cg) and all(cg[x] == x for x in P):
                out.append(g)
        return frozenset(out)

    def as_group(self, members):
        """A subset closed under the partial product, as an abstract FiniteGroup.

        Returns (group, to_carrier, from_carrier).
        """
        to_carrier = sorted(members, key=lambda g: (g != 0, self.labels[g]))
        from_carrier = {g: i for i, g in enumerate(to_carrier)}
        n = len(to_carrier)
        mult = []
        for a in to_carrier:
            row = []
            for b in to_carrier:
                c = self.pg.pairs.get((a, b))
                if c is None or c not in from_carrier:
                    raise DomainError("subset is not a subgroup of the locality")
                row.append(from_carrier[c])
            mult.append(row)
        inv = [from_carrier[self.pg.inv[a]] for a in to_carrier]
        return groups.FiniteGroup(mult, inv), to_carrier, from_carrier

    def f_closed(self, gamma):
        """Is gamma (set of frozensets of S-indices) closed under overgroups in S
        and under the conjugation maps generating F_S(L)?"""
        gamma = set(gamma)
        if not gamma:
            return False, ("empty", None)
        for P in gamma:
            for Q in self.subgroups_of_s():
                if P < Q and Q not in gamma:
                    return False, ("overgroup", (P, Q))
            for g in self.elements():
                cg = self.conj[g]
                if P <= frozenset(cg):
                    img = frozenset(cg[x] for x in P)
                    if img not in gamma:
                        return False, ("conjugate", (P, g))
        return True, None

    def f_conjugates_in_s(self, P):
        """The F_S(L)-class of P among subgroups of S (closure under c_g images)."""
        out = {frozenset(P)}
        frontier = [frozenset(P)]
        while frontier:
            new = []
            for X in frontier:
                for g in self.elements():
                    cg = self.conj[g]
                    if X <= frozenset(cg):
                        img = frozenset(cg[x] for x in X)
                        if img not in out:
                            out.add(img)
                            new.append(img)
            frontier = new
        return out

    # -- stratification ------------------------------------------------------

    def stratification(self):
        if self._strat is None:
            self._strat = Stratification(self)
        return self._strat


def _subgroup_check(sg, members):
    if 0 not in members:
        return False
    for a in members:
        if sg.inv[a] not in members:
            return False
        for b in members:
            if sg.mult[a][b] not in members:
                return False
    return True


class Stratification:
    """Omega = {S_w : w a word}, the star retraction, and the chain dimension."""

    def __init__(self, L):
        self.L = L
        full = L.full_s
        omega = {full}
        frontier = [full]
        while frontier:
            new = []
            for X in frontier:
                for g in L.elements():
                    cg = L.conj[g]
                    pre = frozenset(x for x in cg if cg[x] in X)
                    if pre not in omega:
                        omega.add(pre)
                        new.append(pre)
            frontier = new
        # closed under intersection (each omega member is some X-star)
        for X in omega:
            for Y in omega:
                assert X & Y in omega, "omega not intersection-closed"
        self.omega = omega
        # longest increasing chain ending at X
        self._dim = {}
        for X in sorted(omega, key=len):
            self._dim[X] = max((self._dim[Y] + 1 for Y in omega if Y < X), default=0)
        self._star = {}

    def star(self, X):
        X = frozenset(X)
        if X not in self._star:
            out = self.L.full_s
            for Y in self.omega:
                if X <= Y:
                    out &= Y
            assert out in self.omega
            self._star[X] = out
        return self._star[X]

    def dim(self, X):
        return self._dim[self.star(X)]

    def verify(self, seed=0):
        """(St1)-(St3) in the forms checkable from conjugation maps."""
        rep = Report("stratification", seed=seed)
        L = self.L
        for X in self.omega:
            rep.add("subgroup", _subgroup_check(L.sgroup, X), X)
        for X in self.omega:
            for g in L.elements():
                cg = L.conj[g]
                if X <= frozenset(cg):
                    img = frozenset(cg[x] for x in X)
                    rep.add("St1-invariance", img in self.omega, (X, g))
        subs = L.subgroups_of_s()
        for X in subs:
            st = self.star(X)
            rep.add("St2-retraction", X <= st and self.star(st) == st, X)
            # equivariance: X <= S_g forces star(X) <= S_g, and stars transport
            for g in L.elements():
                cg = L.conj[g]
                if X <= frozenset(cg):
                    if not st <= frozenset(cg):
                        rep.add("St3-star-in-domain", False, (X, g))
                        continue
                    ximg = frozenset(cg[x] for x in X)
                    simg = frozenset(cg[x] for x in st)
                    rep.add("St3-equivariance", self.star(ximg) == simg, (X, g))
        # dim constant on classes
        for X in subs:
            for Y in L.f_conjugates_in_s(X):
                rep.add("dim-constant-on-class", self.dim(Y) == self.dim(X), (X, Y))
        return rep.finish()


SubStratification = namedtuple("SubStratification",
                               ["base", "V", "flavor", "mapped", "poset", "dim"])


def sub_stratification(L, V, flavor="normalizer"):
    """The induced stratification at V: X -> (VX)* cap N_S(V) (normalizer flavor)
    or A -> (VA)* cap C_S(V) (centralizer flavor)."""
    V = frozenset(V)
    strat = L.stratification()
    sg = L.sgroup
    if flavor == "normalizer":
        R = frozenset(groups.normalizer(sg, Subgroup(sg, V, check=False)).members)
    elif flavor == "centralizer":
        R = frozenset(groups.centralizer(sg, Subgroup(sg, V, check=False)).members)
    else:
        raise DomainError("unknown flavor %r" % flavor)
    mapped = {}
    for X in L.subgroups_of_s():
        if not X <= R:
            continue
        VX = groups.generated_subgroup(sg, V | X).members
        mapped[X] = strat.star(VX) & R
    poset = set(mapped.values())
    dim = {}
    for X in sorted(poset, key=len):
        dim[X] = max((dim[Y] + 1 for Y in poset if Y < X), default=0)
    return SubStratification(strat, V, flavor, mapped, poset,
                             lambda X: dim[mapped[frozenset(X)]])


# -- construction -----------------------------------------------------------


def make_transporter_locality(G, p, S, delta):
    """The transporter locality of a finite group on an F-closed object set.

    `delta` is a collection of subgroups of S given either as Subgroups of G
    or as frozensets of G-indices.
    """
    sgroup, to_parent, from_parent = groups.subgroup_as_group(G, S)
    dset = set()
    for P in delta:
        mem = P.members if isinstance(P, Subgroup) else frozenset(P)
        if not mem <= S.members:
            raise DomainError("delta member not inside S")
        dset.add(frozenset(from_parent[x] for x in mem))
    # F_S(G)-closedness of delta, checked in the group
    subs_s = groups.all_subgroups(sgroup)
    for P in dset:
        for Q in subs_s:
            if P < Q.members and Q.members not in dset:
                raise DomainError("delta not closed under overgroups: %r" % (Q,))
        pg_parent = {to_parent[x] for x in P}
        for g in G.all():
            img = {G.conj(x, g) for x in pg_parent}
            if img <= S.members:
                imgs = frozenset(from_parent[x] for x in img)
                if imgs not in dset:
                    raise DomainError("delta not closed under fusion (witness g=%d)" % g)

    def s_dom(g):
        out = {}
        for x in range(sgroup.order):
            y = G.conj(to_parent[x], g)
            if y in from_parent:
                out[x] = from_parent[y]
        return out

    carrier = []
    conj_all = []
    for g in G.all():
        cg = s_dom(g)
        # S_g = S cap S^(g^-1) is automatically a subgroup here
        cg = {x: cg[x] for x in _max_subgroup_inside(sgroup, frozenset(cg))}
        if frozenset(cg) in dset:
            carrier.append(g)
            conj_all.append(cg)
    index = {g: i for i, g in enumerate(carrier)}
    labels = [("g", G.perm_images[g] if G.perm_images else g) for g in carrier]
    inv = [index[G.inv[g]] for g in carrier]
    s_elem = [index[to_parent[x]] for x in range(sgroup.order)]
    L = Locality(p, sgroup, labels, inv, {}, conj_all, dset, s_elem)
    # binary products: group products wherever the S-pair is an object
    pairs = {}
    for a, ga in enumerate(carrier):
        for b, gb in enumerate(carrier):
            if L.s_of_word((a, b)) in dset:
                pairs[(a, b)] = index[G.mult[ga][gb]]
    L.pg.pairs = pairs
    return L


def _max_subgroup_inside(sg, dom):
    """Largest subgroup of S contained in the set dom (dom already a subgroup
    for transporter maps; kept defensive)."""
    if _subgroup_check(sg, dom):
        return dom
    best = frozenset([0])
    for H in groups.all_subgroups(sg):
        if H.members <= dom and len(H.members) > len(best):
            best = H.members
    return best


def restrict(L, delta_prime):
    """Restriction to a smaller F-closed object set; labels are preserved."""
    dset = frozenset(frozenset(P) for P in delta_prime)
    if not dset <= L.delta:
        raise DomainError("delta' must be a subset of delta")
    ok, why = L.f_closed(dset)
    if not ok:
        raise DomainError("delta' not F-closed: %r" % (why,))
    keep = [g for g in L.elements() if L.s_g(g) in dset]
    index = {g: i for i, g in enumerate(keep)}
    labels = [L.labels[g] for g in keep]
    inv = [index[L.pg.inv[g]] for g in keep]
    conj = [L.conj[g] for g in keep]
    s_elem = [index[e] for e in L.s_elem]
    out = Locality(L.p, L.sgroup, labels, inv, {}, conj, dset, s_elem)
    pairs = {}
    for a, ga in enumerate(keep):
        for b, gb in enumerate(keep):
            c = L.pg.pairs.get((ga, gb))
            if c is not None and out.s_of_word((a, b)) in dset:
                pairs[(a, b)] = index[c]
    out.pg.pairs = pairs
    return out


def with_delta(L, delta_new):
    """Free enlargement: every added object has star already in delta, so the
    carrier, conjugation maps and product are untouched."""
    dset = frozenset(frozenset(P) for P in delta_new)
    strat = L.stratification()
    for P in dset - L.delta:
        if strat.star(P) not in L.delta:
            raise DomainError("not a free enlargement: star of %r outside delta" % (P,))
    out = Locality(L.p, L.sgroup, list(L.labels), list(L.pg.inv), dict(L.pg.pairs),
                   list(L.conj), dset, list(L.s_elem))
    return out


def inclusion_hom(L, M):
    """The label-matching inclusion L -> M."""
    mapping = [M.pg.index_of[lab] for lab in L.labels]
    return PGHomomorphism(L.pg, M.pg, mapping)


def localities_equal(L1, L2):
    """Same labels, same products, same objects (up to S-index identity)."""
    if set(L1.labels) != set(L2.labels) or L1.delta != L2.delta:
        return False
    t = [L2.pg.index_of[lab] for lab in L1.labels]
    if any(t[L1.pg.inv[g]] != L2.pg.inv[t[g]] for g in L1.elements()):
        return False
    p2 = {(t[a], t[b]): t[c] for (a, b), c in L1.pg.pairs.items()}
    return p2 == L2.pg.pairs


# -- verification ------------------------------------------------------------


def s_w(L, w):
    return L.s_of_word(tuple(w))


def verify_locality_axioms(L, seed=0, first_violation=False):
    """(O1), (O2), maximality of S, conjugation-map sanity, and the partial
    group axioms; witnesses are collected in the Report."""
    rep = Report("locality-axioms", seed=seed)

    def fail(name, witness):
        rep.add(name, False, witness)
        return first_violation

    sg = L.sgroup
    # conjugation maps are injective homomorphisms on subgroup domains
    for g in L.elements():
        cg = L.conj[g]
        dom = frozenset(cg)
        if dom not in L.delta:
            if fail("S_g-object", g):
                return rep
        if not _subgroup_check(sg, dom):
            if fail("S_g-subgroup", g):
                return rep
            continue
        if len(set(cg.values())) != len(cg):
            if fail("c_g-injective", g):
                return rep
        for x in dom:
            for y in dom:
                if cg.get(sg.mult[x][y]) != sg.mult[cg[x]][cg[y]]:
                    if fail("c_g-homomorphism", (g, x, y)):
                        return rep
    # S embeds with total conjugation action
    for x, e in enumerate(L.s_elem):
        ce = L.conj[e]
        if frozenset(ce) != L.full_s:
            if fail("S-element-total", x):
                return rep
        elif any(ce[y] != sg.conj(y, x) for y in range(sg.order)):
            if fail("S-element-action", x):
                return rep
    if frozenset(L.full_s) not in L.delta:
        if fail("S-in-delta", None):
            return rep
    # (O1) on binary pairs both directions
    for a in L.elements():
        for b in L.elements():
            want = L.s_of_word((a, b)) in L.delta
            have = (a, b) in L.pg.pairs
            if want != have:
                if fail("O1-binary", (a, b)):
                    return rep
    # (O2)
    ok, why = L.f_closed(L.delta)
    if not ok and fail("O2-f-closed", why):
        return rep
    rep.add("O2-f-closed", ok, why)
    # maximality of S: any p-subgroup above S normalizes S, so it is enough
    # that S is Sylow in the group N_L(S)
    nls = L.normalizer_members(L.full_s)
    try:
        NG, _, _ = L.as_group(nls)
        rep.add("S-maximal-p", groups.p_part(NG.order, L.p) == sg.order, len(nls))
    except DomainError as e:
        if fail("N_L(S)-subgroup", str(e)):
            return rep
    sub = verify_partial_group_axioms(L.pg, seed=seed, first_violation=first_violation)
    for name, passed, wit in sub.checks:
        rep.add("pg:" + name, passed, wit)
        if not passed and first_violation:
            return rep
    rep.finish()
    return rep


# -- quotients ---------------------------------------------------------------

QuotientResult = namedtuple("QuotientResult", ["lbar", "rho"])
ThetaResult = namedtuple("ThetaResult", ["theta", "lbar", "rho"])


def _coset(L, N, g):
    out = set()
    for n in N:
        c = L.pg.pairs.get((n, g))
        if c is not None:
            out.add(c)
    return frozenset(out)


def quotient(L, N):
    """L/N by maximal cosets; returns (Lbar, rho) with kernel(rho) = N."""
    mem = N.members if hasattr(N, "members") else frozenset(N)
    if not is_partial_normal(L.pg, mem):
        raise DomainError("N is not partial normal")
    cosets = {g: _coset(L, mem, g) for g in L.elements()}
    # up-maximal elements: S_g maximal within the coset
    maximal = {}
    for g in L.elements():
        sg_g = L.s_g(g)
        if not any(sg_g < L.s_g(h) for h in cosets[g]):
            maximal[g] = cosets[g]
    classes = []
    seen = set()
    covered = set()
    for g in sorted(maximal, key=lambda g: (g != 0, L.labels[g])):
        C = maximal[g]
        if C in seen:
            continue
        seen.add(C)
        classes.append((g, C))
        if covered & C:
            raise DomainError("maximal cosets fail to partition (overlap at rep %d)" % g)
        covered |= C
    if covered != set(L.elements()):
        raise DomainError("maximal cosets fail to cover the carrier")
    rep_of = [g for g, _ in classes]
    class_of = {}
    for i, (_, C) in enumerate(classes):
        for h in C:
            class_of[h] = i
    if class_of[0] != 0 or classes[0][1] != mem:
        raise DomainError("identity coset is not N")

    # quotient p-group S/T
    T = Subgroup(L.sgroup, {x for x in range(L.sgroup.order)
                            if L.s_elem[x] in mem}, check=False)
    sbar, proj = groups.quotient_group(L.sgroup, T)
    # S-bar elements inside the quotient carrier
    s_elem_bar = [None] * sbar.order
    for x in range(L.sgroup.order):
        i = class_of[L.s_elem[x]]
        if s_elem_bar[proj[x]] is None:
            s_elem_bar[proj[x]] = i
        elif s_elem_bar[proj[x]] != i:
            raise DomainError("S-image cosets inconsistent")
    delta_bar = {frozenset(proj[x] for x in P) for P in L.delta}

    # conjugation maps via representatives, with a consistency sweep
    conj_bar = []
    for i, g in enumerate(rep_of):
        cg = {}
        for x, y in L.conj[g].items():
            xb, yb = proj[x], proj[y]
            if cg.get(xb, yb) != yb:
                raise DomainError("quotient conjugation ill-defined at rep %d" % g)
            cg[xb] = yb
        conj_bar.append(cg)

    labels = [("cos", tuple(sorted(L.labels[h] for h in classes[i][1])))
              for i in range(len(classes))]
    inv = [class_of[L.pg.inv[g]] for g in rep_of]
    out = Locality(L.p, sbar, labels, inv, {}, conj_bar, delta_bar, s_elem_bar)

    pairs = {}
    for i, gi in enumerate(rep_of):
        for j, gj in enumerate(rep_of):
            if out.s_of_word((i, j)) not in delta_bar:
                continue
            vals = set()
            for a in classes[i][1]:
                for b in classes[j][1]:
                    c = L.pg.pairs.get((a, b))
                    if c is not None:
                        vals.add(class_of[c])
            if len(vals) != 1:
                raise DomainError("quotient product inconsistent at (%d,%d): %r"
                                  % (i, j, sorted(vals)))
            pairs[(i, j)] = vals.pop()
    out.pg.pairs = pairs
    rho = PGHomomorphism(L.pg, out.pg, [class_of[g] for g in L.elements()])
    return QuotientResult(out, rho)


def theta_quotient(L):
    """Theta = union of the largest normal p'-subgroups of the object
    normalizers; returns (Theta, Lbar, rho) with Lbar = L/Theta."""
    if not groups.has_normalizer_increasing_property(L.sgroup):
        raise DomainError("S lacks the normalizer-increasing property")
    from .fusion import fusion_system, classify_subgroups
    cls = classify_subgroups(L, assert_proper_facts=False)
    for P in L.delta:
        if not cls.flags[cls.class_of[P]]["centric"]:
            raise DomainError("delta contains the non-centric object %r" % (P,))
    for P, flags in ((P, cls.flags[cls.class_of[P]]) for P in cls.class_of):
        if flags["centric"] and flags["radical"] and P not in L.delta:
            raise DomainError("delta misses the centric-radical object %r" % (P,))
    theta = set()
    for P in L.delta:
        members = L.normalizer_members(P)
        NG, to_carrier, _ = L.as_group(members)
        theta |= {to_carrier[i] for i in groups.o_p_prime(NG, L.p).members}
    theta = frozenset(theta)
    ok, wit = is_partial_normal(L.pg, theta, witness=True)
    if not ok:
        raise DomainError("Theta not partial normal: %r" % (wit,))
    assert all(L.s_elem[x] not in theta or x == 0
               for x in range(L.sgroup.order)), "S meets Theta nontrivially"
    lbar, rho = quotient(L, PartialNormalSubgroup(L.pg, theta))
    return ThetaResult(PartialNormalSubgroup(L.pg, theta), lbar, rho)


# -- local sub-localities ----------------------------------------------------


def normalizer_locality(L, V):
    """(N_L(V), Delta_V, N_S(V)) for V fully normalized."""
    V = frozenset(V)
    from .fusion import is_fully_normalized
    if not is_fully_normalized(L, V):
        raise DomainError("V is not fully normalized; use the deterministic "
                          "fully normalized conjugate instead")
    sg = L.sgroup
    ns = frozenset(groups.normalizer(sg, Subgroup(sg, V, check=False)).members)
    delta_v = {P for P in L.delta
               if V <= P and P <= ns
               and all(sg.conj(x, g) in V for x in V for g in P)}
    return _local_sub(L, L.normalizer_members(V), ns, delta_v)


def centralizer_locality(L, V):
    """(C_L(V), Sigma_V, C_S(V)) for V fully centralized."""
    V = frozenset(V)
    from .fusion import is_fully_centralized
    if not is_fully_centralized(L, V):
        raise DomainError("V is not fully centralized")
    sg = L.sgroup
    cs = frozenset(groups.centralizer(sg, Subgroup(sg, V, check=False)).members)
    zv = frozenset(x for x in V
                   if all(sg.mult[x][y] == sg.mult[y][x] for y in V))
    sigma = set()
    for Q in L.subgroups_of_s():
        if Q <= cs and zv <= Q:
            QV = groups.generated_subgroup(sg, Q | V).members
            if QV in L.delta:
                sigma.add(Q)
    return _local_sub(L, L.centralizer_members(V), cs, sigma)


def _local_sub(L, members, s_sub, delta_sub):
    """Assemble a locality on a subset of the carrier over the p-group s_sub."""
    sg = L.sgroup
    sub_g, to_s, from_s = groups.subgroup_as_group(
        sg, Subgroup(sg, s_sub, check=False))
    carrier = sorted(members, key=lambda g: (g != 0, L.labels[g]))
    index = {g: i for i, g in enumerate(carrier)}
    dset = {frozenset(from_s[x] for x in P) for P in delta_sub}
    labels = [L.labels[g] for g in carrier]
    inv = [index[L.pg.inv[g]] for g in carrier]
    conj = []
    for g in carrier:
        cg = L.conj[g]
        conj.append({from_s[x]: from_s[cg[x]] for x in cg
                     if x in from_s and cg[x] in from_s})
    s_elem = [index[L.s_elem[to_s[x]]] for x in range(sub_g.order)]
    out = Locality(L.p, sub_g, labels, inv, {}, conj, dset, s_elem)
    # trim conjugation domains to their largest subgroup (centralizer flavor
    # can leave a non-subgroup set)
    for i in range(out.n):
        dom = _max_subgroup_inside(sub_g, frozenset(out.conj[i]))
        out.conj[i] = {x: out.conj[i][x] for x in dom}
    pairs = {}
    for a, ga in enumerate(carrier):
        for b, gb in enumerate(carrier):
            c = L.pg.pairs.get((ga, gb))
            if c is not None and c in index and out.s_of_word((a, b)) in dset:
                pairs[(a, b)] = index[c]
    out.pg.pairs = pairs
    return out


def o_p_locality(L):
    """O_p(L) = star(1), certified to be a partial normal subgroup inside S."""
    strat = L.stratification()
    one_star = strat.star(frozenset([0]))
    members = frozenset(L.s_elem[x] for x in one_star)
    assert is_partial_normal(L.pg, members), "1-star not partial normal"
    return one_star
