import pytest

import oracle
from conftest import automizer_data, centric_in, locate, v4_of

from locality_forge import groups
from locality_forge.fusion import (classify_subgroups, f_closure,
                                   fusion_system, is_f_normal,
                                   is_fully_normalized,
                                   is_fusion_preserving, is_proper,
                                   is_saturated, n_fusion, o_p_fusion, socle,
                                   trivial_fusion_system,
                                   fully_normalized_witness)


def _to_s(L, sym4_like, parent_members):
    """Parent-group members -> S-indices of the locality's Sylow group."""
    to_parent = sorted(sym4_like["S"].members)
    from_parent = {x: i for i, x in enumerate(to_parent)}
    return frozenset(from_parent[x] for x in parent_members)


def _perm_subgroup_to_s(L, fix, perms):
    G = fix["G"]
    return _to_s(L, fix, locate(G, perms))


# -- construction against the group-fusion oracle ----------------------------


def test_fix2_fusion_is_trivial(fix2):
    F = fusion_system(fix2)
    T = trivial_fusion_system(fix2.sgroup)
    assert F.same_homs(T)


def test_fix1_fusion_equals_group_fusion(t_fc, sym4):
    """Hom-sets of F_S(L) match maps induced by all of Sym(4)."""
    F = fusion_system(t_fc)
    G_set, S_set = sym4["G_set"], sym4["S_set"]
    s_sorted = sorted(sym4["S"].members)
    perm_of = {i: sym4["G"].perm_images[x] for i, x in enumerate(s_sorted)}
    for m in F.homs:
        # every F-morphism is realized by conjugation by some group element
        realized = False
        for g in G_set:
            if all(oracle.conj(perm_of[x], g) == perm_of[y]
                   for x, y in zip(m.dom, m.images)):
                realized = True
                break
        assert realized, m
    # and conversely, group conjugation between subgroups of S is in F
    subs = oracle.all_subgroups(S_set)
    for H in subs:
        for g in G_set:
            img = frozenset(oracle.conj(x, g) for x in H)
            if img <= S_set:
                inv_perm = {p: i for i, p in perm_of.items()}
                dom = tuple(sorted(inv_perm[p] for p in H))
                images = tuple(inv_perm[oracle.conj(perm_of[x], g)]
                               for x in dom)
                from locality_forge.fusion import Morph
                assert Morph(dom, images) in F.homs


def test_transposition_class_size_matches_orbit_oracle(t_fc, sym4):
    F = fusion_system(t_fc)
    t13 = oracle.closure({oracle.from_cycles(4, [(1, 3)])})
    X = _perm_subgroup_to_s(t_fc, sym4, t13)
    cls = F.f_conjugates(X)
    # oracle: subgroups of S generated by an involution, fused to <(1 3)> in G
    s_subs = oracle.all_subgroups(sym4["S_set"])
    fused = {H for H in s_subs
             if any(frozenset(oracle.conj(x, g) for x in t13) == H
                    for g in sym4["G_set"])}
    assert len(cls) == len(fused)


# -- closure, normality, local subsystems ------------------------------------


def test_cr_closure_is_v4_and_s(t_fc):
    F = fusion_system(t_fc)
    cls = classify_subgroups(t_fc)
    cr = {P for i, c in enumerate(cls.classes) for P in c
          if cls.flags[i]["centric"] and cls.flags[i]["radical"]}
    assert f_closure(F, cr) == {v4_of(t_fc), t_fc.full_s}


def test_v4_is_f_normal_and_n_fusion_is_everything(t_fc):
    F = fusion_system(t_fc)
    v4 = v4_of(t_fc)
    assert is_f_normal(F, v4)
    NF = n_fusion(F, v4)
    assert len(NF.homs) == len(F.homs)


def test_o_p_fusion(t_fc, fix3):
    F = fusion_system(t_fc)
    assert o_p_fusion(F) == v4_of(t_fc)
    # FIX-3: S is normal in L = N_G(S), so the whole Sylow is the socle
    F3 = fusion_system(fix3["L"])
    assert socle(F3) == fix3["L"].full_s


def test_fully_normalized_e_class(t_fc, sym4):
    e_sub = oracle.closure({oracle.from_cycles(4, [(1, 3)]),
                            oracle.from_cycles(4, [(2, 4)])})
    E = _perm_subgroup_to_s(t_fc, sym4, e_sub)
    assert is_fully_normalized(t_fc, E)
    F = fusion_system(t_fc)
    assert F.f_conjugates(E) == [E]
    assert fully_normalized_witness(t_fc, E) == E


# -- classification against the brute-force oracle ---------------------------


def test_fix1_classification_matches_oracle(t_fc, sym4):
    cls = classify_subgroups(t_fc)
    G_set, S_set = sym4["G_set"], sym4["S_set"]

    # oracle centric set
    cent_oracle = {frozenset(_perm_subgroup_to_s(t_fc, sym4, H))
                   for H in centric_in(G_set, S_set)}
    got_centric = cls.members_with("centric")
    assert got_centric == cent_oracle
    assert got_centric == t_fc.delta

    # oracle radical-centric via the automizer test
    cr_oracle = set()
    for H in centric_in(G_set, S_set):
        A, inn, auts = automizer_data(G_set, S_set, H)
        opa = oracle.o_p(A, 2)
        if inn == (opa & auts):
            cr_oracle.add(_perm_subgroup_to_s(t_fc, sym4, H))
    got_cr = {P for i, c in enumerate(cls.classes) for P in c
              if cls.flags[i]["centric"] and cls.flags[i]["radical"]}
    assert got_cr == cr_oracle
    assert got_cr == {v4_of(t_fc), t_fc.full_s}


def test_fix1_centric_class_representatives(t_fc, sym4):
    # the four centric classes V4, E, Z4, S are each weakly closed in S
    cls = classify_subgroups(t_fc)
    centric_sizes = sorted(
        (len(cls.witness[i]), len(c))
        for i, c in enumerate(cls.classes) if cls.flags[i]["centric"])
    assert centric_sizes == [(4, 1), (4, 1), (4, 1), (8, 1)]


def test_fix2_all_subgroups_subcentric(fix2):
    cls = classify_subgroups(fix2)
    subs = {H.members for H in groups.all_subgroups(fix2.sgroup)}
    assert cls.members_with("subcentric") == subs
    cr = {P for i, c in enumerate(cls.classes) for P in c
          if cls.flags[i]["centric"] and cls.flags[i]["radical"]}
    assert fix2.full_s in cr


def test_classification_chain(t_fc, fix2, fix3):
    from locality_forge.locality import theta_quotient
    for L in (t_fc, fix2, theta_quotient(fix3["L"]).lbar):
        cls = classify_subgroups(L)
        for i, fl in enumerate(cls.flags):
            if fl["centric"]:
                assert fl["quasicentric"]
            if fl["quasicentric"]:
                assert fl["subcentric"]
            assert fl["in_p_of_f"] == (fl["centric"] and fl["radical"])
        fs = cls.members_with("subcentric")
        assert fs == f_closure(fusion_system(L), fs)


# -- properness and saturation -----------------------------------------------


def test_is_proper(t_fc, base_v4s, fix2, fix3):
    assert is_proper(t_fc)
    assert is_proper(base_v4s)
    assert is_proper(fix2)
    assert not is_proper(fix3["L"])


def test_saturation_of_proper_fixtures(t_fc, fix2):
    for L in (t_fc, fix2):
        rep = is_saturated(fusion_system(L), L=L, p=L.p)
        assert rep.ok, rep.failures[:3]


def test_fusion_preserving_identity(t_fc):
    F = fusion_system(t_fc)
    ident = {x: x for x in range(t_fc.sgroup.order)}
    assert is_fusion_preserving(ident, F, F)


def test_fusion_preserving_rejects_wrong_map(t_fc, sym4):
    F = fusion_system(t_fc)
    # swap the two 4-cycles' images: breaks the E-class fusion
    sg = t_fc.sgroup
    four = [x for x in range(sg.order) if sg.element_order(x) == 4]
    alpha = {x: x for x in range(sg.order)}
    t13 = next(iter(_perm_subgroup_to_s(
        t_fc, sym4, {oracle.from_cycles(4, [(1, 3)])})))
    t24 = next(iter(_perm_subgroup_to_s(
        t_fc, sym4, {oracle.from_cycles(4, [(2, 4)])})))
    alpha[t13], alpha[t24] = alpha[t24], alpha[t13]
    ok, witness = is_fusion_preserving(alpha, F, F, witness=True)
    # the swap is an S-automorphism? if it is, fusion is preserved; in that
    # case distort by a non-homomorphism instead
    if ok:
        alpha[four[0]], alpha[t13] = alpha[t13], alpha[four[0]]
        ok, witness = is_fusion_preserving(alpha, F, F, witness=True)
    assert not ok and witness is not None
