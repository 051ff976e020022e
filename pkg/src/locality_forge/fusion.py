"""Fusion systems of localities: morphism enumeration, local subsystems,
subgroup classification, saturation."""

import itertools
from collections import namedtuple

from . import groups
from .caps import get_caps, ResourceError
from .groups import DomainError, Subgroup
from .report import Report

# A morphism X -> S is (dom, images): dom the sorted tuple of X's members,
# images aligned with dom.  Always injective, so invertible onto its image.
Morph = namedtuple("Morph", ["dom", "images"])


def morph_image(m):
    return frozenset(m.images)


def morph_map(m):
    return dict(zip(m.dom, m.images))


def _conj_morph(sg, P, cmap):
    dom = tuple(sorted(P))
    return Morph(dom, tuple(cmap[x] for x in dom))


class FusionSystem:
    def __init__(self, sgroup, generators):
        self.sgroup = sgroup
        self.homs = set()
        self.by_dom = {}
        self._subs = None
        self._close(generators)

    def subgroups(self):
        if self._subs is None:
            self._subs = [H.members for H in groups.all_subgroups(self.sgroup)]
        return self._subs

    def _add(self, m):
        if m not in self.homs:
            self.homs.add(m)
            self.by_dom.setdefault(frozenset(m.dom), set()).add(m)
            return True
        return False

    def _close(self, generators):
        cap = get_caps().subgroup_count
        frontier = [m for m in generators if self._add(m)]
        # restrictions of everything ever added
        def restrictions(m):
            dom = frozenset(m.dom)
            mm = morph_map(m)
            for Q in self.subgroups():
                if Q < dom:
                    yield _conj_morph(self.sgroup, Q, mm)
        while frontier:
            new = []
            def push(m):
                if self._add(m):
                    new.append(m)
                    if len(self.homs) > cap:
                        raise ResourceError("hom-set cap exceeded")
            for m in list(frontier):
                for r in restrictions(m):
                    push(r)
                # inverse of the isomorphism onto the image
                inv_map = {y: x for x, y in zip(m.dom, m.images)}
                push(_conj_morph(self.sgroup, frozenset(m.images), inv_map))
            for m in list(frontier):
                mm = morph_map(m)
                img = morph_image(m)
                for m2 in list(self.homs):
                    if img <= frozenset(m2.dom):
                        m2m = morph_map(m2)
                        push(Morph(m.dom, tuple(m2m[mm[x]] for x in m.dom)))
                    if morph_image(m2) <= frozenset(m.dom):
                        m2map = morph_map(m2)
                        push(Morph(m2.dom, tuple(mm[m2map[x]] for x in m2.dom)))
            frontier = new

    def hom_set(self, X, Y):
        X, Y = frozenset(X), frozenset(Y)
        return sorted(m for m in self.by_dom.get(X, ()) if morph_image(m) <= Y)

    def isos(self, X, Y):
        X, Y = frozenset(X), frozenset(Y)
        return sorted(m for m in self.by_dom.get(X, ()) if morph_image(m) == Y)

    def f_conjugates(self, X):
        X = frozenset(X)
        return sorted({morph_image(m) for m in self.by_dom.get(X, ())} | {X},
                      key=lambda P: tuple(sorted(P)))

    def classes(self):
        seen = set()
        out = []
        for X in sorted(self.subgroups(), key=lambda P: (len(P), tuple(sorted(P)))):
            if X in seen:
                continue
            cls = self.f_conjugates(X)
            seen |= set(cls)
            out.append(cls)
        return out

    def aut_group(self, Q):
        """Aut_F(Q) as an abstract FiniteGroup; returns (group, list of Morphs)."""
        Q = frozenset(Q)
        auts = self.isos(Q, Q)
        idx = {m: i for i, m in enumerate(auts)}
        ident = Morph(tuple(sorted(Q)), tuple(sorted(Q)))
        # reorder so the identity automorphism sits at index 0
        auts = [ident] + [m for m in auts if m != ident]
        idx = {m: i for i, m in enumerate(auts)}
        n = len(auts)
        mult = []
        for a in auts:
            am = morph_map(a)
            row = []
            for b in auts:
                bm = morph_map(b)
                comp = Morph(a.dom, tuple(bm[am[x]] for x in a.dom))
                row.append(idx[comp])
            mult.append(row)
        inv = []
        for a in auts:
            im = {y: x for x, y in zip(a.dom, a.images)}
            inv.append(idx[_conj_morph(self.sgroup, Q, im)])
        return groups.FiniteGroup(mult, inv), auts

    def __eq__(self, other):
        return isinstance(other, FusionSystem) and self.sgroup is other.sgroup \
            and self.homs == other.homs

    def same_homs(self, other):
        """Hom-set equality for systems over equal (possibly distinct) S tables."""
        return self.homs == other.homs


def fusion_system(L):
    """F_S(L), generated by the restrictions of the conjugation maps."""
    gens = []
    subs = [H.members for H in groups.all_subgroups(L.sgroup)]
    for g in L.elements():
        cg = L.conj[g]
        dom = frozenset(cg)
        for P in subs:
            if P <= dom:
                gens.append(_conj_morph(L.sgroup, P, cg))
    return FusionSystem(L.sgroup, gens)


def trivial_fusion_system(sgroup):
    """F_T(T): conjugation maps of the p-group itself."""
    gens = []
    subs = [H.members for H in groups.all_subgroups(sgroup)]
    for g in range(sgroup.order):
        cmap = {x: sgroup.conj(x, g) for x in range(sgroup.order)}
        for P in subs:
            gens.append(_conj_morph(sgroup, P, cmap))
    return FusionSystem(sgroup, gens)


def f_conjugates(F, X):
    return F.f_conjugates(X)


def hom_set(F, X, Y):
    return F.hom_set(X, Y)


def f_closure(F, gamma0):
    """Least F-invariant overgroup-closed superset of gamma0."""
    if not gamma0:
        raise DomainError("f_closure of the empty family")
    out = set()
    frontier = {frozenset(P) for P in gamma0}
    subs = F.subgroups()
    while frontier:
        new = set()
        for P in frontier:
            for Q in F.f_conjugates(P):
                if Q not in out:
                    new.add(Q)
            for Q in subs:
                if P < Q and Q not in out:
                    new.add(Q)
        out |= frontier
        frontier = new - out
    return out


def _subsystem(F, new_sgroup_members, gen_filter):
    """Build a fusion system on a subgroup of S from filtered F-morphisms."""
    sg = F.sgroup
    sub_g, to_s, from_s = groups.subgroup_as_group(
        sg, Subgroup(sg, new_sgroup_members, check=False))
    gens = []
    for m in F.homs:
        for m2 in gen_filter(m):
            dom = tuple(from_s[x] for x in m2.dom)
            imgs = tuple(from_s[y] for y in m2.images)
            order = sorted(range(len(dom)), key=lambda i: dom[i])
            gens.append(Morph(tuple(dom[i] for i in order),
                              tuple(imgs[i] for i in order)))
    sub = FusionSystem(sub_g, gens)
    sub._embed_to_s = to_s
    sub._embed_from_s = from_s
    return sub


def n_fusion(F, V):
    """N_F(V) on N_S(V): morphisms extending to XV -> YV normalizing V."""
    V = frozenset(V)
    sg = F.sgroup
    ns = frozenset(groups.normalizer(sg, Subgroup(sg, V, check=False)).members)

    def gen_filter(m):
        dom = frozenset(m.dom)
        if not V <= dom:
            return
        mm = morph_map(m)
        if {mm[x] for x in V} != V:
            return
        allowed = frozenset(x for x in dom if x in ns and mm[x] in ns)
        for X in F.subgroups():
            if X <= allowed:
                yield _conj_morph(sg, X, mm)

    return _subsystem(F, ns, gen_filter)


def c_fusion(F, V):
    """C_F(V) on C_S(V): morphisms extending to XV -> YV fixing V pointwise."""
    V = frozenset(V)
    sg = F.sgroup
    cs = frozenset(groups.centralizer(sg, Subgroup(sg, V, check=False)).members)

    def gen_filter(m):
        dom = frozenset(m.dom)
        if not V <= dom:
            return
        mm = morph_map(m)
        if any(mm[x] != x for x in V):
            return
        allowed = frozenset(x for x in dom if x in cs and mm[x] in cs)
        for X in F.subgroups():
            if X <= allowed:
                yield _conj_morph(sg, X, mm)

    return _subsystem(F, cs, gen_filter)


def _largest_subgroup_within(sg, members):
    best = frozenset([0])
    for H in groups.all_subgroups(sg):
        if H.members <= members and len(H.members) > len(best):
            best = H.members
    return best


def is_f_normal(F, V):
    """F = N_F(V): V weakly closed and every morphism extends over V."""
    V = frozenset(V)
    if set(F.f_conjugates(V)) != {V}:
        return False
    sg = F.sgroup
    for m in F.homs:
        dom = frozenset(m.dom)
        XV = groups.generated_subgroup(sg, dom | V).members
        mm = morph_map(m)
        found = False
        for ext in F.by_dom.get(XV, ()):
            em = morph_map(ext)
            if all(em[x] == mm[x] for x in dom) and {em[v] for v in V} == V:
                found = True
                break
        if not found:
            return False
    return True


def o_p_fusion(F):
    """The largest subgroup of S that is normal in F."""
    sg = F.sgroup
    best = frozenset([0])
    for V in sorted(F.subgroups(), key=len):
        if len(V) <= len(best):
            continue
        if is_f_normal(F, V):
            best = V
    # normality is join-closed; maximality certified by the scan order
    return best


def socle(F):
    return o_p_fusion(F)


# -- normalized/centralized flags -------------------------------------------


def is_fully_normalized(L, X):
    return _fn_dim_eq(L, X)


def fully_normalized_witness(L, X):
    """Deterministic choice: maximize dim(N_S(.)) then take the canonically
    least member set."""
    strat = L.stratification()
    sg = L.sgroup

    def keyfun(Y):
        ns = groups.normalizer(sg, Subgroup(sg, Y, check=False)).members
        return (-strat.dim(ns), tuple(sorted(Y)))

    return min(L.f_conjugates_in_s(frozenset(X)), key=keyfun)


def _fn_dim_eq(L, X):
    strat = L.stratification()
    sg = L.sgroup
    X = frozenset(X)
    dx = strat.dim(groups.normalizer(sg, Subgroup(sg, X, check=False)).members)
    for Y in L.f_conjugates_in_s(X):
        dy = strat.dim(groups.normalizer(sg, Subgroup(sg, Y, check=False)).members)
        if dy > dx:
            return False
    return True


def is_fully_centralized(L, X):
    strat = L.stratification()
    sg = L.sgroup
    X = frozenset(X)

    def cdim(Y):
        cs = groups.centralizer(sg, Subgroup(sg, Y, check=False)).members
        return strat.dim(groups.generated_subgroup(sg, cs | Y).members)

    dx = cdim(X)
    return all(cdim(Y) <= dx for Y in L.f_conjugates_in_s(X))


def is_normalizer_inductive(F, Y, L):
    """Some phi: N_S(X) -> N_S(Y) with X phi = Y, for every conjugate X."""
    sg = F.sgroup
    Y = frozenset(Y)
    nsy = groups.normalizer(sg, Subgroup(sg, Y, check=False)).members
    for X in F.f_conjugates(Y):
        nsx = groups.normalizer(sg, Subgroup(sg, X, check=False)).members
        good = False
        for m in F.hom_set(nsx, nsy):
            mm = morph_map(m)
            if {mm[x] for x in X} == Y:
                good = True
                break
        if not good:
            return False
    return True


def is_inductive(F, L):
    return all(any(is_normalizer_inductive(F, Y, L) for Y in cls)
               for cls in F.classes())


# -- classification ----------------------------------------------------------


class SubgroupClassification:
    def __init__(self):
        self.classes = []        # list of lists of frozensets
        self.class_of = {}       # frozenset -> class index
        self.flags = []          # per class dict
        self.witness = []        # per class: the fully normalized witness
        self.fully_normalized = {}
        self.fully_centralized = {}

    def members_with(self, flag):
        out = set()
        for i, cls in enumerate(self.classes):
            if self.flags[i][flag]:
                out |= set(cls)
        return out

    def to_dict(self, label=lambda P: sorted(P)):
        return {
            "format": "classification.v1",
            "classes": [
                {
                    "representative": label(self.witness[i]),
                    "size": len(cls),
                    "flags": self.flags[i],
                    "witnesses": {"fully_normalized": label(self.witness[i])},
                }
                for i, cls in enumerate(self.classes)
            ],
        }


def classify_subgroups(L, F=None, assert_proper_facts=True):
    """Centric / radical / quasicentric / subcentric flags per F-class, plus
    the Sylow-style automizer test set."""
    if F is None:
        F = fusion_system(L)
    sg = L.sgroup
    out = SubgroupClassification()
    out.classes = F.classes()
    for i, cls in enumerate(out.classes):
        for P in cls:
            out.class_of[P] = i

    for P in F.subgroups():
        out.fully_normalized[P] = is_fully_normalized(L, P)
        out.fully_centralized[P] = is_fully_centralized(L, P)

    centric_by_class = {}
    for i, cls in enumerate(out.classes):
        centric_by_class[i] = all(
            groups.centralizer(sg, Subgroup(sg, Y, check=False)).members <= Y
            for Y in cls)

    # first pass: witnesses and the normalizer-local systems
    local = []
    for i, cls in enumerate(out.classes):
        Q = fully_normalized_witness(L, cls[0])
        out.witness.append(Q)
        NFQ = n_fusion(F, Q)
        opn = frozenset(NFQ._embed_to_s[x] for x in o_p_fusion(NFQ))
        local.append((Q, NFQ, opn))

    for i, cls in enumerate(out.classes):
        Q, NFQ, opn = local[i]
        centric = centric_by_class[i]
        radical = (opn == Q)
        # quasicentric: C_F(Q) is the inner fusion system of C_S(Q)
        CFQ = c_fusion(F, Q)
        CSQ = trivial_fusion_system(CFQ.sgroup)
        quasicentric = CFQ.same_homs(CSQ)
        subcentric = centric_by_class[out.class_of[opn]]
        # automizer test (P(F)): Inn(Q) = O_p(Aut_F(Q)) cap Aut_S(Q)
        AQ, auts = F.aut_group(Q)
        innq = _conj_auts(F, Q, Q)
        autsq = _conj_auts(F, Q, groups.normalizer(
            sg, Subgroup(sg, Q, check=False)).members)
        opa = groups.o_p(AQ, L.p).members
        aidx = {m: k for k, m in enumerate(auts)}
        in_p = centric and (
            {aidx[m] for m in innq} == (set(opa) & {aidx[m] for m in autsq}))
        out.flags.append({
            "centric": centric,
            "radical": radical,
            "quasicentric": quasicentric,
            "subcentric": subcentric,
            "in_p_of_f": in_p,
        })

    if assert_proper_facts and is_proper(L, classification=out):
        for i, fl in enumerate(out.flags):
            assert (not fl["centric"]) or fl["quasicentric"], \
                "centric class not quasicentric: %r" % (out.witness[i],)
            assert (not fl["quasicentric"]) or fl["subcentric"], \
                "quasicentric class not subcentric: %r" % (out.witness[i],)
            assert fl["in_p_of_f"] == (fl["centric"] and fl["radical"]), \
                "automizer test disagrees with radical-centric on %r" % (out.witness[i],)
        fs = out.members_with("subcentric")
        assert fs == f_closure(F, fs), "subcentric family is not F-closed"
    return out


def _conj_auts(F, Q, source):
    """The automorphisms of Q induced by conjugation from the given S-members."""
    sg = F.sgroup
    out = set()
    for g in source:
        if all(sg.conj(x, g) in Q for x in Q):
            cmap = {x: sg.conj(x, g) for x in Q}
            out.add(_conj_morph(sg, Q, cmap))
    return out


def is_proper(L, classification=None):
    """PL1: F^cr inside Delta; PL2: object normalizers of characteristic p;
    PL3: S normalizer-increasing."""
    if not groups.has_normalizer_increasing_property(L.sgroup):
        return False
    if classification is None:
        classification = classify_subgroups(L, assert_proper_facts=False)
    cr = {P for i, cls in enumerate(classification.classes)
          for P in cls
          if classification.flags[i]["centric"] and classification.flags[i]["radical"]}
    if not cr <= L.delta:
        return False
    for P in L.delta:
        try:
            NG, _, _ = L.as_group(L.normalizer_members(P))
        except DomainError:
            return False
        if not groups.is_characteristic_p(NG, L.p):
            return False
    return True


# -- saturation --------------------------------------------------------------


def is_saturated(F, L=None, p=None, seed=0):
    """Each class has a conjugate that is fully automized and receptive."""
    if p is None:
        p = L.p if L is not None else _guess_p(F)
    rep = Report("saturation", seed=seed)
    for cls in F.classes():
        ok_some = False
        for Y in cls:
            if _fully_automized(F, Y, p) and _receptive(F, Y):
                ok_some = True
                break
        rep.add("class", ok_some, tuple(sorted(cls[0])))
    rep.note("finite S: the chain condition of the saturation axioms is vacuous")
    rep.finish()
    return rep


def _fully_automized(F, Y, p):
    AQ, auts = F.aut_group(Y)
    aut_s = _conj_auts(F, Y, groups.normalizer(
        F.sgroup, Subgroup(F.sgroup, Y, check=False)).members)
    return groups.p_part(AQ.order, p) == len(aut_s)


def _guess_p(F):
    # S is a p-group; any prime divisor of |S| is p
    n = F.sgroup.order
    if n == 1:
        return 2
    for p in (2, 3, 5, 7, 11, 13):
        if n % p == 0:
            return p
    raise DomainError("cannot infer p from |S|=%d" % n)


def _receptive(F, Y):
    sg = F.sgroup
    Y = frozenset(Y)
    nsy = groups.normalizer(sg, Subgroup(sg, Y, check=False)).members
    aut_s = _conj_auts(F, Y, nsy)
    for X in F.f_conjugates(Y):
        for alpha in F.isos(X, Y):
            am = morph_map(alpha)
            ainv = {y: x for x, y in am.items()}
            nsx = groups.normalizer(sg, Subgroup(sg, X, check=False)).members
            n_alpha = set()
            for g in nsx:
                comp = {}
                for y in Y:
                    comp[y] = am[sg.conj(ainv[y], g)]
                if Morph(tuple(sorted(Y)), tuple(comp[y] for y in sorted(Y))) in aut_s:
                    n_alpha.add(g)
            n_alpha = _largest_subgroup_within(sg, frozenset(n_alpha))
            if not frozenset(X) <= n_alpha:
                return False
            found = False
            for ext in F.by_dom.get(frozenset(n_alpha), ()):
                em = morph_map(ext)
                if all(em[x] == am[x] for x in X) and \
                        morph_image(ext) <= nsy:
                    found = True
                    break
            if not found:
                return False
    return True


def is_fusion_preserving(alpha, F, Fprime, witness=False):
    """alpha: dict S-index -> S'-index (a homomorphism of the underlying
    p-groups); every F-morphism must push forward to an F'-morphism."""
    for m in F.homs:
        need_dom = frozenset(alpha[x] for x in m.dom)
        req = {}
        bad = False
        for x, y in zip(m.dom, m.images):
            xa = alpha[x]
            if req.get(xa, alpha[y]) != alpha[y]:
                bad = True
                break
            req[xa] = alpha[y]
        if bad:
            return (False, m) if witness else False
        target = Morph(tuple(sorted(need_dom)),
                       tuple(req[x] for x in sorted(need_dom)))
        if target not in Fprime.by_dom.get(need_dom, set()):
            return (False, m) if witness else False
    return (True, None) if witness else True
