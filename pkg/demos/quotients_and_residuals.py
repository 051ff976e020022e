"""Partial normal subgroups of the Sym(4) locality: the lattice, quotients,
and the two residuals.

Run:  python3 demos/quotients_and_residuals.py
"""

from locality_forge import groups
from locality_forge.locality import make_transporter_locality, quotient
from locality_forge.normal import (NormalLattice, o_p_prime_residual,
                                   o_p_residual, verify_quotient_fusion)

from sym4_walkthrough import centric_subgroups


def main():
    G = groups.make_perm_group([[1, 0, 2, 3], [1, 2, 3, 0]])
    S = groups.sylow_subgroup(G, 2)
    L = make_transporter_locality(G, 2, S, centric_subgroups(G, S))

    lat = NormalLattice(L)
    print("partial normal subgroups of |L| = %d:" % L.pg.n)
    for N in lat:
        print("  |N| = %2d, |S cap N| = %d"
              % (N.order, len(lat.s_cap(N))))

    # quotient by the Klein four group: a Sym(3)-like locality
    N = next(M for M in lat if M.order == 4)
    q = quotient(L, N)
    print("L / (|N|=4): %d elements, %d pairs"
          % (q.lbar.pg.n, len(q.lbar.pg.pairs)))
    verify_quotient_fusion(L, N).raise_if_failed()
    print("quotient fusion behaves: projection is fusion preserving and")
    print("surjective on morphisms above S cap N")

    print("residuals:")
    for N in lat:
        if N.order == 1:
            continue
        kp = o_p_residual(L, N, lattice=lat)
        kpp = o_p_prime_residual(L, N, lattice=lat)
        print("  |N| = %2d: |O^p(N)| = %2d, |O^{p'}(N)| = %2d"
              % (N.order, len(kp.members), len(kpp.members)))


if __name__ == "__main__":
    main()
