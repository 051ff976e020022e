"""Build the centric transporter locality of Sym(4) at p = 2, shrink it to
its minimal object set, and grow it back, certifying uniqueness.

Run:  python3 demos/sym4_walkthrough.py
"""

from locality_forge import groups
from locality_forge.expansion import expand, rigid_isomorphism, subcentric_closure
from locality_forge.fusion import classify_subgroups, f_closure, fusion_system
from locality_forge.locality import (make_transporter_locality, restrict,
                                     verify_locality_axioms)


def centric_subgroups(G, S):
    """Subgroups of S whose every G-conjugate inside S contains its own
    S-centralizer."""
    sg, to_parent, _ = groups.subgroup_as_group(G, S)
    out = []
    for H in groups.all_subgroups(sg):
        mem = frozenset(to_parent[x] for x in H.members)
        ok = True
        for g in range(G.order):
            img = frozenset(G.conj(x, g) for x in mem)
            if img <= S.members:
                cent = {c for c in S.members
                        if all(G.conj(x, c) == x for x in img)}
                if not cent <= img:
                    ok = False
                    break
        if ok:
            out.append(mem)
    return out


def main():
    G = groups.make_perm_group([[1, 0, 2, 3], [1, 2, 3, 0]])
    S = groups.sylow_subgroup(G, 2)
    print("G = Sym(4), |G| = %d; S dihedral, |S| = %d" % (G.order, S.order))

    L = make_transporter_locality(G, 2, S, centric_subgroups(G, S))
    print("centric locality: %d elements, %d defined pairs, %d objects"
          % (L.pg.n, len(L.pg.pairs), len(L.delta)))
    verify_locality_axioms(L).raise_if_failed()

    cls = classify_subgroups(L)
    for i, c in enumerate(cls.classes):
        fl = cls.flags[i]
        tags = [k for k in ("centric", "radical", "quasicentric", "subcentric")
                if fl[k]]
        print("  class of order-%d subgroup (size %d): %s"
              % (len(cls.witness[i]), len(c), ", ".join(tags) or "-"))

    # the smallest honest object set: closure of the radical-centric classes
    cr = {P for i, c in enumerate(cls.classes) for P in c
          if cls.flags[i]["centric"] and cls.flags[i]["radical"]}
    base = restrict(L, f_closure(fusion_system(L), cr))
    print("restricted to %d objects: carrier %d, pairs %d"
          % (len(base.delta), base.pg.n, len(base.pg.pairs)))

    # growing back is canonical: the result is rigidly the original
    grown = expand(base, L.delta)
    beta = rigid_isomorphism(grown, L)
    assert beta, beta
    print("expansion back to the centric objects is rigidly unique")

    big = subcentric_closure(L)
    print("subcentric closure: %d objects, carrier %d (nothing new appears)"
          % (len(big.delta), big.pg.n))


if __name__ == "__main__":
    main()
