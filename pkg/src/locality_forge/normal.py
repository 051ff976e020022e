"""Partial normal subgroups across expansions: lifting and its uniqueness,
lattice comparison, products, the residuals O^p and O^{p'}, and the fusion
behavior of quotient localities."""

import itertools

from . import groups
from .fusion import (Morph, morph_image, fusion_system, classify_subgroups,
                     is_fusion_preserving, is_fully_normalized)
from .locality import DomainError, inclusion_hom, quotient
from .partial import (UNDEFINED, PartialNormalSubgroup, conjugate,
                      enumerate_partial_normal_subgroups,
                      generated_partial_subgroup, is_partial_normal,
                      normal_closure_partial)
from .report import Report


# -- the lattice of partial normal subgroups ---------------------------------


class NormalLattice:
    """All partial normal subgroups of a locality, ordered by containment."""

    def __init__(self, locality, members=None):
        self.locality = locality
        if members is None:
            members = enumerate_partial_normal_subgroups(locality.pg)
        self.members = sorted(members,
                              key=lambda N: (N.order, tuple(sorted(N.members))))
        self._index = {N.members: i for i, N in enumerate(self.members)}

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def index_of(self, N):
        mem = N.members if hasattr(N, "members") else frozenset(N)
        return self._index.get(mem)

    def s_cap(self, N):
        """S cap N as a set of carrier indices."""
        return frozenset(self.locality.s_elem) & N.members

    def hasse_edges(self):
        """Cover relations (i, j) with members[i] < members[j]."""
        out = []
        for i, A in enumerate(self.members):
            for j, B in enumerate(self.members):
                if not (A.members < B.members):
                    continue
                if any(A.members < C.members < B.members for C in self.members):
                    continue
                out.append((i, j))
        return out

    def to_dict(self):
        covers = {}
        for i, j in self.hasse_edges():
            covers.setdefault(j, []).append(i)
        return {
            "format": "normal-lattice.v1",
            "members": [
                {
                    "size": N.order,
                    "S_cap_N": len(self.s_cap(N)),
                    "hasse_edges": sorted(covers.get(k, [])),
                }
                for k, N in enumerate(self.members)
            ],
        }


# -- lifting across an expansion ---------------------------------------------


def _labels_of(L, members):
    return frozenset(L.labels[g] for g in members)


def _t_indices(L, N):
    """S cap N as a subgroup of the Sylow group (sgroup indices)."""
    return frozenset(x for x in range(L.sgroup.order)
                     if L.s_elem[x] in N.members)


def lift_normal(L, Lplus, N, lattice_plus=None):
    """The unique partial normal subgroup of the expansion meeting the base
    in N: the closure of the set of conjugates of N's image."""
    incl = inclusion_hom(L, Lplus)
    base_img = frozenset(incl(g) for g in N.members)

    # X = the set of all conjugates of the image; its closure is the lift
    X = set(base_img)
    for f in base_img:
        for g in Lplus.elements():
            c = conjugate(Lplus.pg, f, g)
            if c is not UNDEFINED:
                X.add(c)
    nplus = normal_closure_partial(Lplus.pg, base_img)
    assert X <= nplus.members
    assert is_partial_normal(Lplus.pg, nplus.members)

    # meeting the base recovers N
    base_set = frozenset(incl.mapping)
    assert frozenset(g for g in nplus.members if g in base_set) == base_img, \
        "lift meets the base in more than N"

    # the lift adds no new p-elements: S cap N is unchanged
    t_lab = _labels_of(L, frozenset(L.s_elem) & N.members)
    t_lab_plus = _labels_of(Lplus, frozenset(Lplus.s_elem) & nplus.members)
    assert t_lab == t_lab_plus, "S cap N changed under lifting"

    trace = getattr(Lplus, "expansion_trace", None)
    t_idx = _t_indices(L, N)
    if trace is not None:
        reps = [frozenset(step["representative"]) for step in trace
                if step.get("kind") == "class"]
        if reps and all(t_idx <= R for R in reps):
            # the conjugate set is already closed; no generation needed
            assert frozenset(X) == nplus.members, \
                "conjugate set not closed despite S cap N below every step"
        _check_quotient_step(L, Lplus, N, nplus, reps, t_idx)

    # uniqueness: no other member of the expansion's lattice meets base in N
    if lattice_plus is None:
        lattice_plus = NormalLattice(Lplus)
    hits = [M for M in lattice_plus
            if frozenset(g for g in M.members if g in base_set) == base_img]
    assert len(hits) == 1 and hits[0].members == nplus.members, \
        "lift is not the unique normal meeting the base in N"
    return PartialNormalSubgroup(Lplus.pg, nplus.members)


def _check_quotient_step(L, Lplus, N, nplus, reps, t_idx):
    """The induced map L/N -> L+/N+ restricts the larger quotient to the
    image object set, and is onto when S cap N escapes every added class."""
    qb = quotient(L, N)
    qp = quotient(Lplus, nplus)
    incl = inclusion_hom(L, Lplus)
    eta = {}
    for g in L.elements():
        i, j = qb.rho(g), qp.rho(incl(g))
        assert eta.setdefault(i, j) == j, "induced quotient map ill-defined"
    assert len(set(eta.values())) == qb.lbar.pg.n, \
        "induced quotient map not injective"

    # image = restriction of the big quotient to the pushed-down objects
    sb = {c: i for i, c in enumerate(qp.lbar.s_elem)}
    delta_img = set()
    for P in L.delta:
        delta_img.add(frozenset(sb[qp.rho(incl(L.s_elem[x]))] for x in P))
    expected = {h for h in qp.lbar.elements() if qp.lbar.s_g(h) in delta_img}
    assert set(eta.values()) == expected, \
        "induced quotient map image is not the object restriction"

    if reps and all(not t_idx <= R for R in reps):
        assert qp.lbar.pg.n == qb.lbar.pg.n, \
            "quotients differ although S cap N meets no added class"


def verify_A2_bijection(L, Lplus, report_name="normal-lattice-bijection"):
    """Lifting is a containment-preserving bijection of the two lattices,
    with meet-with-the-base as its inverse."""
    rep = Report(report_name)
    lat = NormalLattice(L)
    lat_plus = NormalLattice(Lplus)
    incl = inclusion_hom(L, Lplus)
    base_set = frozenset(incl.mapping)

    lifted = []
    for N in lat:
        P = lift_normal(L, Lplus, N, lattice_plus=lat_plus)
        lifted.append(P)
        rep.add("lift-in-lattice", lat_plus.index_of(P) is not None,
                sorted(N.members))

    rep.add("lift-injective", len({P.members for P in lifted}) == len(lat))
    rep.add("lift-surjective", len(lat) == len(lat_plus),
            (len(lat), len(lat_plus)))

    # inverse direction: meet with the base, then lift back
    back = {}
    for k, M in enumerate(lat_plus):
        meet = frozenset(g for g in M.members if g in base_set)
        meet_base = frozenset(L.pg.index_of[Lplus.labels[g]] for g in meet)
        i = lat.index_of(meet_base)
        rep.add("meet-in-lattice", i is not None, sorted(meet))
        if i is not None:
            back[k] = i
            rep.add("round-trip", lifted[i].members == M.members, k)

    for i, A in enumerate(lat):
        for j, B in enumerate(lat):
            if A.members <= B.members:
                rep.add("containment-preserved",
                        lifted[i].members <= lifted[j].members, (i, j))
            elif lifted[i].members <= lifted[j].members:
                rep.add("containment-reflected", False, (i, j))

    # labeled-poset comparison; member cardinality can grow under lifting,
    # so only the S cap N labels and the cover structure must transfer
    key = sorted(len(lat.s_cap(N)) for N in lat)
    key_plus = sorted(len(lat_plus.s_cap(M)) for M in lat_plus)
    rep.add("poset-labels", key == key_plus, (key, key_plus))
    to_plus = {i: lat_plus.index_of(lifted[i]) for i in range(len(lat))}
    edges = {(to_plus[i], to_plus[j]) for i, j in lat.hasse_edges()}
    rep.add("poset-covers", edges == set(lat_plus.hasse_edges()),
            (sorted(edges), lat_plus.hasse_edges()))
    rep.finish()
    return rep


# -- products and intersections ----------------------------------------------


def product_of_normals(L, N1, N2):
    """The join <N1 u N2>, certified normal."""
    M = generated_partial_subgroup(L.pg, N1.members | N2.members)
    ok, why = is_partial_normal(L.pg, M.members, witness=True)
    assert ok, "product of normals is not normal: %r" % (why,)
    return PartialNormalSubgroup(L.pg, M.members)


def product_lift_compatibility(L, Lplus, N1, N2, lattice_plus=None):
    """Lifting commutes with the join; a below-S intersection is unmoved."""
    rep = Report("product-lift-compatibility")
    if lattice_plus is None:
        lattice_plus = NormalLattice(Lplus)
    p1 = lift_normal(L, Lplus, N1, lattice_plus=lattice_plus)
    p2 = lift_normal(L, Lplus, N2, lattice_plus=lattice_plus)
    prod = product_of_normals(L, N1, N2)
    prod_plus = lift_normal(L, Lplus, prod, lattice_plus=lattice_plus)
    direct = product_of_normals(Lplus, p1, p2)
    rep.add("join-commutes", prod_plus.members == direct.members,
            (len(prod_plus.members), len(direct.members)))

    meet = N1.members & N2.members
    if meet <= frozenset(L.s_elem):
        meet_plus = p1.members & p2.members
        rep.add("meet-below-s-fixed",
                _labels_of(Lplus, meet_plus) == _labels_of(L, meet),
                sorted(meet))
    else:
        rep.note("intersection not inside S; fixedness not required")
    rep.finish()
    return rep


# -- residuals ---------------------------------------------------------------


def _product_set(L, A, B):
    out = set()
    for a in A:
        for b in B:
            c = L.pg.pairs.get((a, b))
            if c is not None:
                out.add(c)
    return out


def o_p_residual(L, N, lattice=None):
    """Smallest normal K with K(S cap N) = N."""
    if lattice is None:
        lattice = NormalLattice(L)
    T = frozenset(L.s_elem) & N.members
    family = [K for K in lattice
              if _product_set(L, K.members, T) == N.members]
    assert family, "residual family is empty (N itself is missing)"
    K0 = frozenset.intersection(*[K.members for K in family])
    assert lattice.index_of(K0) is not None, \
        "intersection of the family left the lattice"
    # the intersection is again in the family
    assert _product_set(L, K0, T) == N.members, "O^p(N) (S cap N) != N"
    # cross-check: mod O^p, every subgroup of the image of N is a p-group,
    # so the image collapses onto the image of S cap N
    q = quotient(L, PartialNormalSubgroup(L.pg, K0))
    assert {q.rho(g) for g in N.members} == {q.rho(t) for t in T}, \
        "image of N mod O^p(N) exceeds the image of S cap N"
    return PartialNormalSubgroup(L.pg, K0)


def o_p_prime_residual(L, N, lattice=None):
    """Smallest normal K with S cap N <= K <= N."""
    if lattice is None:
        lattice = NormalLattice(L)
    T = frozenset(L.s_elem) & N.members
    family = [K for K in lattice
              if T <= K.members and K.members <= N.members]
    assert family, "residual family is empty (N itself is missing)"
    K0 = frozenset.intersection(*[K.members for K in family])
    assert lattice.index_of(K0) is not None, \
        "intersection of the family left the lattice"
    assert T <= K0 <= N.members, "O^{p'}(N) escapes [S cap N, N]"
    return PartialNormalSubgroup(L.pg, K0)


def residual_expansion_compatibility(L, Lplus, N, lattice=None,
                                     lattice_plus=None):
    """Both residual flavors commute with lifting, and both are monotone
    on the nested normals of the base."""
    rep = Report("residual-expansion-compatibility")
    if lattice is None:
        lattice = NormalLattice(L)
    if lattice_plus is None:
        lattice_plus = NormalLattice(Lplus)
    nplus = lift_normal(L, Lplus, N, lattice_plus=lattice_plus)

    for name, residual in (("p", o_p_residual), ("p-prime", o_p_prime_residual)):
        res = residual(L, N, lattice=lattice)
        res_lift = lift_normal(L, Lplus, res, lattice_plus=lattice_plus)
        res_plus = residual(Lplus, nplus, lattice=lattice_plus)
        rep.add("commutes-" + name, res_lift.members == res_plus.members,
                (len(res_lift.members), len(res_plus.members)))

    for A, B in itertools.combinations(lattice, 2):
        lo, hi = (A, B) if A.members <= B.members else (B, A)
        if not lo.members <= hi.members:
            continue
        for name, residual in (("p", o_p_residual),
                               ("p-prime", o_p_prime_residual)):
            ra = residual(L, lo, lattice=lattice)
            rb = residual(L, hi, lattice=lattice)
            rep.add("monotone-" + name, ra.members <= rb.members,
                    (sorted(lo.members), sorted(hi.members)))
    rep.finish()
    return rep


# -- quotient fusion ---------------------------------------------------------


def _push_morph(sigma, m):
    """Image of a fusion morphism under a quotient map of Sylow groups."""
    req = {}
    for x, y in zip(m.dom, m.images):
        xa = sigma[x]
        if req.get(xa, sigma[y]) != sigma[y]:
            return None
        req[xa] = sigma[y]
    dom = tuple(sorted(req))
    return Morph(dom, tuple(req[x] for x in dom))


def verify_quotient_fusion(L, N):
    """How the fusion system of L/N sits under that of L: the projection is
    fusion preserving, hom-surjective above S cap N, transfers the fully
    normalized property, and reflects centric and radical-centric classes."""
    rep = Report("quotient-fusion")
    mem = N.members if hasattr(N, "members") else frozenset(N)
    q = quotient(L, PartialNormalSubgroup(L.pg, mem))
    lbar = q.lbar
    T = _t_indices(L, PartialNormalSubgroup(L.pg, mem))

    sb = {c: i for i, c in enumerate(lbar.s_elem)}
    sigma = {x: sb[q.rho(L.s_elem[x])] for x in range(L.sgroup.order)}
    rep.add("projection-surjective",
            set(sigma.values()) == set(range(lbar.sgroup.order)))

    F = fusion_system(L)
    Fbar = fusion_system(lbar)
    ok, wit = is_fusion_preserving(sigma, F, Fbar, witness=True)
    rep.add("fusion-preserving", ok, wit)

    # hom-surjectivity between subgroups containing S cap N
    overs = [H.members for H in groups.all_subgroups(L.sgroup)
             if T <= H.members]
    for X in overs:
        Xbar = frozenset(sigma[x] for x in X)
        fn = is_fully_normalized(L, X) == is_fully_normalized(lbar, Xbar)
        rep.add("fully-normalized-transfer", fn, sorted(X))
        for Y in overs:
            Ybar = frozenset(sigma[y] for y in Y)
            pushed = {_push_morph(sigma, m) for m in F.hom_set(X, Y)}
            bar = set(Fbar.hom_set(Xbar, Ybar))
            rep.add("hom-surjective", bar <= pushed, (sorted(X), sorted(Y)))

    # preimages of centric / radical-centric classes
    cls = classify_subgroups(L, F=F, assert_proper_facts=False)
    cls_bar = classify_subgroups(lbar, F=Fbar, assert_proper_facts=False)
    for i, group_cls in enumerate(cls_bar.classes):
        fl = cls_bar.flags[i]
        if not fl["centric"]:
            continue
        for Xbar in group_cls:
            X = frozenset(x for x in range(L.sgroup.order) if sigma[x] in Xbar)
            fl_up = cls.flags[cls.class_of[X]]
            rep.add("centric-preimage", fl_up["centric"], sorted(Xbar))
            if fl["radical"]:
                rep.add("radical-centric-preimage",
                        fl_up["centric"] and fl_up["radical"], sorted(Xbar))

    cr = {P for i, c in enumerate(cls.classes) for P in c
          if cls.flags[i]["centric"] and cls.flags[i]["radical"]}
    if cr <= L.delta:
        cr_bar = {P for i, c in enumerate(cls_bar.classes) for P in c
                  if cls_bar.flags[i]["centric"] and cls_bar.flags[i]["radical"]}
        rep.add("cr-objects-descend", cr_bar <= lbar.delta,
                sorted(sorted(P) for P in cr_bar - lbar.delta))
    else:
        rep.note("base objects omit part of F^cr; descent not required")
    rep.finish()
    return rep
