import pytest
from hypothesis import given, settings, strategies as st

import oracle
from conftest import locate, v4_of

from locality_forge import groups
from locality_forge.groups import DomainError, Subgroup
from locality_forge.locality import (centralizer_locality, inclusion_hom,
                                     localities_equal,
                                     make_transporter_locality,
                                     normalizer_locality, o_p_locality,
                                     quotient, restrict, sub_stratification,
                                     theta_quotient, verify_locality_axioms,
                                     with_delta)
from locality_forge.fusion import fusion_system, is_proper, trivial_fusion_system


# -- transporter construction ------------------------------------------------


def test_fix2_is_the_whole_group_with_full_domain(fix2):
    assert fix2.pg.n == 8
    assert len(fix2.pg.pairs) == 64


def test_fix1_v4s_carrier_is_all_of_sym4(t_fc, base_v4s):
    # V4 normal in Sym(4) forces V4 <= S_g for every g
    assert base_v4s.pg.n == 24
    v4 = v4_of(t_fc)
    for g in base_v4s.elements():
        assert v4 <= base_v4s.s_g(g)


def test_fix3_carrier_is_the_sylow_normalizer(fix3):
    L, G = fix3["L"], fix3["G"]
    N = groups.normalizer(G, Subgroup(G, fix3["S"].members))
    assert L.pg.n == 12
    assert {L.labels[g][1] for g in L.elements()} == \
        {G.perm_images[g] for g in N.members}


def test_transporter_rejects_non_closed_delta(sym4):
    z4 = locate(sym4["G"], oracle.closure(
        {oracle.from_cycles(4, [(1, 2, 3, 4)])}))
    with pytest.raises(DomainError):
        make_transporter_locality(sym4["G"], 2, sym4["S"], [frozenset(z4)])


# -- S_w and the domain ------------------------------------------------------


def test_s_of_word_matches_direct_simulation(t_fc):
    L = t_fc
    a = L.labels.index(("g", oracle.from_cycles(4, [(1, 2)])))
    b = L.labels.index(("g", oracle.from_cycles(4, [(1, 2, 3)])))
    got = L.s_of_word((a, b))
    # element-by-element: x -> x^a stays in S, then -> (x^a)^b stays in S
    direct = set()
    for x in range(L.sgroup.order):
        y = L.conj[a].get(x)
        if y is not None and L.conj[b].get(y) is not None:
            direct.add(x)
    assert got <= frozenset(direct)
    # and got is the largest subgroup inside the simulated set
    for H in groups.all_subgroups(L.sgroup):
        if H.members <= frozenset(direct):
            assert H.members <= got or not H.members <= frozenset(direct) \
                or len(H.members) <= len(got)


@settings(max_examples=80, deadline=None)
@given(st.data())
def test_word_domain_iff_s_w_is_an_object(t_fc, data):
    L = t_fc
    w = tuple(data.draw(st.lists(st.integers(0, L.pg.n - 1), min_size=1,
                                 max_size=3)))
    assert L.word_in_domain(w) == (L.s_of_word(w) in L.delta)
    if len(w) == 2:
        assert (w in L.pg.pairs) == L.word_in_domain(w)


# -- axioms ------------------------------------------------------------------


def test_axioms_pass_on_fixtures(t_fc, base_v4s, fix2, fix3):
    for L in (t_fc, base_v4s, fix2, fix3["L"]):
        rep = verify_locality_axioms(L)
        assert rep.ok, rep.failures[:3]


def test_axioms_detect_dropped_object(t_fc):
    # dropping V4 leaves D-pairs whose S-pair is no longer an object
    from locality_forge.locality import Locality
    smaller = t_fc.delta - {v4_of(t_fc)}
    broken = Locality(t_fc.p, t_fc.sgroup, list(t_fc.labels),
                      list(t_fc.pg.inv), dict(t_fc.pg.pairs),
                      list(t_fc.conj), smaller, list(t_fc.s_elem))
    rep = verify_locality_axioms(broken, first_violation=True)
    assert not rep.ok


# -- stratification ----------------------------------------------------------


def test_fix2_stratification_is_flat(fix2):
    strat = fix2.stratification()
    assert strat.omega == {fix2.full_s}
    for H in groups.all_subgroups(fix2.sgroup):
        assert strat.star(H.members) == fix2.full_s
        assert strat.dim(H.members) == 0


def test_fix1_stratification(t_fc):
    strat = t_fc.stratification()
    # on FIX-1 every S_w is V4 or S, so omega has exactly those two members
    assert strat.omega == {v4_of(t_fc), t_fc.full_s}
    # omega is closed under intersections
    for X in strat.omega:
        for Y in strat.omega:
            assert (X & Y) in strat.omega
    z = frozenset(x for x in range(t_fc.sgroup.order)
                  if all(t_fc.sgroup.mult[x][y] == t_fc.sgroup.mult[y][x]
                         for y in range(t_fc.sgroup.order)))
    assert strat.star(z) in strat.omega
    assert z <= strat.star(z)
    assert strat.verify().ok


def test_one_star_is_o2(t_fc, fix2):
    v4 = v4_of(t_fc)
    assert o_p_locality(t_fc) == v4
    assert o_p_locality(fix2) == fix2.full_s


def test_sub_stratification_at_center(t_fc):
    z = frozenset(x for x in range(t_fc.sgroup.order)
                  if all(t_fc.sgroup.mult[x][y] == t_fc.sgroup.mult[y][x]
                         for y in range(t_fc.sgroup.order)))
    sub = sub_stratification(t_fc, z)
    # dim_V is monotone along the induced poset injection
    for X in sub.mapped:
        for Y in sub.mapped:
            if X <= Y:
                assert sub.dim(X) <= sub.dim(Y)


# -- restriction / enlargement ----------------------------------------------


def test_restrict_keeps_carrier_and_products_on_fix1(t_fc, base_v4s):
    assert base_v4s.pg.n == t_fc.pg.n
    assert set(base_v4s.labels) == set(t_fc.labels)
    # on FIX-1 every S_w already lies in {V4, S}, so D does not shrink
    assert len(base_v4s.pg.pairs) == len(t_fc.pg.pairs)
    assert localities_equal(restrict(t_fc, base_v4s.delta), base_v4s)


def test_restrict_shrinks_domain_on_fix4(fix4_tfc):
    sub = {P for P in fix4_tfc.delta if len(P) >= 8}
    small = restrict(fix4_tfc, sub)
    assert small.pg.n < fix4_tfc.pg.n
    assert len(small.pg.pairs) < len(fix4_tfc.pg.pairs)


def test_with_delta_requires_free_enlargement(base_v4s, t_fc, fix4_tfc):
    out = with_delta(base_v4s, t_fc.delta)
    assert out.pg.n == base_v4s.pg.n
    assert out.pg.pairs == base_v4s.pg.pairs
    strat = fix4_tfc.stratification()
    z = frozenset(x for x in range(fix4_tfc.sgroup.order)
                  if all(fix4_tfc.sgroup.mult[x][y] ==
                         fix4_tfc.sgroup.mult[y][x]
                         for y in range(fix4_tfc.sgroup.order)))
    assert strat.star(z) not in fix4_tfc.delta
    with pytest.raises(DomainError):
        with_delta(fix4_tfc, fix4_tfc.delta | {z})


def test_inclusion_hom_is_a_homomorphism(base_v4s, t_fc):
    from locality_forge.partial import verify_homomorphism
    lam = inclusion_hom(base_v4s, t_fc)
    assert verify_homomorphism(lam).ok


# -- quotients ---------------------------------------------------------------


def test_quotient_by_v4_is_sym3(t_fc):
    from locality_forge.partial import (enumerate_partial_normal_subgroups,
                                        kernel)
    lat = enumerate_partial_normal_subgroups(t_fc.pg)
    N = next(N for N in lat if N.order == 4)
    q = quotient(t_fc, N)
    assert q.lbar.pg.n == 6
    assert len(q.lbar.pg.pairs) == 36
    assert kernel(q.rho).members == N.members
    assert verify_locality_axioms(q.lbar).ok


def test_theta_quotient_fix3(fix3):
    tq = theta_quotient(fix3["L"])
    assert tq.theta.order == 2
    assert tq.lbar.pg.n == 6
    assert is_proper(tq.lbar)
    # cross-op agreement with plain quotient
    q = quotient(fix3["L"], tq.theta)
    assert localities_equal(q.lbar, tq.lbar)
    # fusion survives: F_Sbar(Lbar) on the order-3 Sylow equals the base
    # fusion transported, i.e. the quotient is Sym(3)-like: Aut of S has order 2
    F = fusion_system(tq.lbar)
    A, auts = F.aut_group(tq.lbar.full_s)
    assert A.order == 2


def test_theta_is_trivial_on_proper_fix1(t_fc):
    tq = theta_quotient(t_fc)
    assert tq.theta.order == 1
    assert localities_equal(tq.lbar, t_fc) or tq.lbar.pg.n == t_fc.pg.n


# -- local sub-localities ----------------------------------------------------


def test_centralizer_locality_at_center(t_fc):
    z = frozenset(x for x in range(t_fc.sgroup.order)
                  if all(t_fc.sgroup.mult[x][y] == t_fc.sgroup.mult[y][x]
                         for y in range(t_fc.sgroup.order)))
    C = centralizer_locality(t_fc, z)
    assert verify_locality_axioms(C).ok
    assert set(C.labels) <= set(t_fc.labels)
    assert frozenset(C.labels) == frozenset(
        t_fc.labels[g] for g in t_fc.centralizer_members(z))


def test_normalizer_locality_at_v4(t_fc):
    v4 = v4_of(t_fc)
    NL = normalizer_locality(t_fc, v4)
    # V4 normal in Sym(4): N_L(V4) is everything
    assert NL.pg.n == t_fc.pg.n
    assert verify_locality_axioms(NL).ok
