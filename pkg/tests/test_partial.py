import pytest
from hypothesis import given, settings, strategies as st

import oracle
from conftest import locate

from locality_forge import partial
from locality_forge.partial import (UNDEFINED, PGHomomorphism,
                                    enumerate_partial_normal_subgroups,
                                    generated_partial_subgroup,
                                    is_partial_normal, is_partial_subgroup,
                                    kernel, normal_closure_partial,
                                    verify_homomorphism,
                                    verify_partial_group_axioms, word_product)


def _perm_of(L, sym4, g):
    lab = L.labels[g]
    assert lab[0] == "g"
    return lab[1]


def test_identity_and_inverses(base_v4s):
    pg = base_v4s.pg
    for g in pg.elements():
        assert pg.pairs[(0, g)] == g
        assert pg.pairs[(g, pg.inv[g])] == 0


def test_word_product_matches_group_product(base_v4s, sym4):
    # FIX-1 with Delta = {V4,S}: carrier is all of Sym(4); products restrict
    # the group product
    L = base_v4s
    t12 = oracle.from_cycles(4, [(1, 2)])
    t23 = oracle.from_cycles(4, [(2, 3)])
    a = L.labels.index(("g", t12))
    b = L.labels.index(("g", t23))
    out = word_product(L.pg, (a, b))
    assert out is not UNDEFINED
    assert L.labels[out] == ("g", oracle.compose(t12, t23))


def test_word_product_undefined_outside_domain(fix4_tfc):
    # Alt(6) transporter: 1088 defined pairs out of 1600
    L = fix4_tfc
    hits = [(a, b) for a in L.elements() for b in L.elements()
            if (a, b) not in L.pg.pairs]
    assert hits, "every pair defined; fixture cannot exercise UNDEFINED"
    a, b = hits[0]
    assert word_product(L.pg, (a, b)) is UNDEFINED
    assert L.s_of_word((a, b)) not in L.delta


def test_conjugate_matches_permutation_conjugation(t_fc):
    L = t_fc
    x = oracle.from_cycles(4, [(1, 3), (2, 4)])
    g = oracle.from_cycles(4, [(1, 2)])
    xi = L.labels.index(("g", x))
    gi = L.labels.index(("g", g))
    out = partial.conjugate(L.pg, xi, gi)
    assert L.labels[out] == ("g", oracle.conj(x, g))


def test_generated_partial_subgroup_matches_closure_oracle(t_fc):
    L = t_fc
    t13 = L.labels.index(("g", oracle.from_cycles(4, [(1, 3)])))
    H = generated_partial_subgroup(L.pg, [t13])
    expect = oracle.closure({oracle.from_cycles(4, [(1, 3)])})
    assert {L.labels[g][1] for g in H.members} == set(expect)


def test_alt4_part_is_partial_normal(t_fc, sym4):
    alt = {p for p in sym4["G_set"]
           if sum(1 for i in range(4) for j in range(i) if p[j] > p[i]) % 2 == 0}
    members = {g for g in t_fc.elements() if t_fc.labels[g][1] in alt}
    assert is_partial_normal(t_fc.pg, members)


def test_four_cycle_pair_not_partial_subgroup(t_fc):
    c4 = t_fc.labels.index(("g", oracle.from_cycles(4, [(1, 2, 3, 4)])))
    assert not is_partial_subgroup(t_fc.pg, {0, c4, t_fc.pg.inv[c4]})


def test_enumeration_fix1_centric(t_fc):
    out = enumerate_partial_normal_subgroups(t_fc.pg)
    sizes = sorted(N.order for N in out)
    assert sizes[0] == 1 and sizes[-1] == t_fc.pg.n
    v4_mem = normal_closure_partial(
        t_fc.pg, [t_fc.labels.index(("g", oracle.from_cycles(4, [(1, 2), (3, 4)])))])
    assert any(N.members == v4_mem.members for N in out)
    # brute force: every subset that is a partial normal subgroup is listed
    listed = {N.members for N in out}
    for N in out:
        ok, why = is_partial_normal(t_fc.pg, N.members, witness=True)
        assert ok, why
    # closure of every union of two members is again a member
    for A in out:
        for B in out:
            M = normal_closure_partial(t_fc.pg, A.members | B.members)
            assert M.members in listed


def test_kernel_of_quotient_projection(t_fc):
    from locality_forge.locality import quotient
    from locality_forge.partial import PartialNormalSubgroup
    N = enumerate_partial_normal_subgroups(t_fc.pg)[1]
    q = quotient(t_fc, N)
    assert kernel(q.rho).members == N.members


def test_verify_homomorphism_accepts_identity(base_v4s):
    lam = PGHomomorphism(base_v4s.pg, base_v4s.pg,
                         list(base_v4s.pg.elements()))
    assert verify_homomorphism(lam).ok


def test_verify_homomorphism_rejects_swap(base_v4s):
    mapping = list(base_v4s.pg.elements())
    a = base_v4s.labels.index(("g", oracle.from_cycles(4, [(1, 2), (3, 4)])))
    b = base_v4s.labels.index(("g", oracle.from_cycles(4, [(1, 3), (2, 4)])))
    mapping[a], mapping[b] = mapping[b], mapping[a]
    lam = PGHomomorphism(base_v4s.pg, base_v4s.pg, mapping)
    rep = verify_homomorphism(lam)
    assert not rep.ok and rep.first_witness() is not None


def test_axioms_pass_on_fixture(base_v4s):
    assert verify_partial_group_axioms(base_v4s.pg).ok


def test_axioms_detect_broken_product(base_v4s):
    pg = base_v4s.pg
    broken = partial.PartialGroup(pg.labels, pg.inv, dict(pg.pairs),
                                  pg.word_in_domain)
    (a, b), c = next(iter(p for p in pg.pairs.items()
                          if p[0][0] != 0 and p[0][1] != 0))
    broken.pairs[(a, b)] = 0 if c != 0 else 1
    rep = verify_partial_group_axioms(broken, first_violation=True)
    assert not rep.ok and rep.first_witness() is not None


def test_axioms_detect_broken_inverse(base_v4s):
    pg = base_v4s.pg
    inv = list(pg.inv)
    g = next(h for h in pg.elements() if inv[h] != h)
    inv[g] = g
    broken = partial.PartialGroup(pg.labels, inv, dict(pg.pairs),
                                  pg.word_in_domain)
    rep = verify_partial_group_axioms(broken, first_violation=True)
    assert not rep.ok


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_fold_associativity_on_domain_words(base_v4s, data):
    pg = base_v4s.pg
    w = tuple(data.draw(st.lists(st.integers(0, pg.n - 1), min_size=2,
                                 max_size=4)))
    if not pg.word_in_domain(w):
        return
    val = pg.fold(w)
    i = data.draw(st.integers(0, len(w) - 2))
    j = data.draw(st.integers(i + 2, len(w)))
    mid = pg.fold(w[i:j])
    assert mid is not UNDEFINED
    assert pg.fold(w[:i] + (mid,) + w[j:]) == val


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_inverse_word_law(base_v4s, data):
    pg = base_v4s.pg
    w = tuple(data.draw(st.lists(st.integers(0, pg.n - 1), min_size=1,
                                 max_size=3)))
    if not pg.word_in_domain(w):
        return
    wi = partial.inv_word(pg, w)
    assert pg.fold(wi + w) == 0
