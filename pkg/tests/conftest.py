import json
import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

import oracle  # noqa: E402

from locality_forge import groups  # noqa: E402
from locality_forge.groups import Subgroup  # noqa: E402
from locality_forge.locality import make_transporter_locality, restrict  # noqa: E402


def build_group(perm_set):
    """Package group from an oracle element set, with a stable element order."""
    return groups.make_perm_group([list(p) for p in sorted(perm_set)])


def locate(G, perms):
    """Map oracle permutations to indices of the package group."""
    idx = {G.perm_images[g]: g for g in range(G.order)}
    return {idx[p] for p in perms}


def centric_in(G_set, S_set):
    """Oracle-side centric subgroups of S in G (as oracle permutation sets)."""
    out = []
    for H in oracle.all_subgroups(S_set):
        ok = True
        for g in G_set:
            img = frozenset(oracle.conj(x, g) for x in H)
            if img <= S_set and not oracle.centralizer(S_set, img) <= img:
                ok = False
                break
        if ok:
            out.append(H)
    return out


def automizer_data(G_set, S_set, Q_perms):
    """(Aut_F(Q), Inn(Q), Aut_S(Q)) as permutation groups on Q's elements."""
    q_sorted = sorted(Q_perms)
    q_idx = {p: i for i, p in enumerate(q_sorted)}

    def aut_of(g):
        img = [oracle.conj(p, g) for p in q_sorted]
        if any(p not in q_idx for p in img):
            return None
        return tuple(q_idx[p] for p in img)

    N = oracle.normalizer(G_set, Q_perms)
    A = frozenset(a for a in (aut_of(g) for g in N) if a is not None)
    inn = frozenset(a for a in (aut_of(g) for g in Q_perms) if a is not None)
    ns = oracle.normalizer(S_set, Q_perms)
    auts = frozenset(a for a in (aut_of(g) for g in ns) if a is not None)
    return A, inn, auts


@pytest.fixture(scope="session")
def sym4():
    """FIX-1 ambient data: (G, S) as package objects plus the oracle sets."""
    G_set, S_set = oracle.fix1()
    G = build_group(G_set)
    S = Subgroup(G, locate(G, S_set))
    return {"G": G, "S": S, "G_set": G_set, "S_set": S_set}


@pytest.fixture(scope="session")
def t_fc(sym4):
    """FIX-1 transporter locality on the centric object set."""
    cent = [locate(sym4["G"], H) for H in centric_in(sym4["G_set"], sym4["S_set"])]
    return make_transporter_locality(sym4["G"], 2, sym4["S"],
                                     [frozenset(P) for P in cent])


def v4_of(L):
    """The normal Klein four object: inside every S_g and fixed by every c_g
    (the non-normal Klein four E escapes the domains of 4-cycle cosets)."""
    for P in L.delta:
        if len(P) == 4 and all(
                P <= frozenset(L.conj[g])
                and frozenset(L.conj[g][x] for x in P) == P
                for g in L.elements()):
            return P
    raise AssertionError("no normal Klein four object")


@pytest.fixture(scope="session")
def base_v4s(t_fc):
    """FIX-1 base: restriction to {V4, S} = f_closure(F^cr)."""
    return restrict(t_fc, {v4_of(t_fc), t_fc.full_s})


@pytest.fixture(scope="session")
def fix2():
    """FIX-2: the dihedral Sylow 2-group as its own locality, all subgroups."""
    _, S_set = oracle.fix1()
    G = build_group(S_set)
    S = Subgroup(G, set(range(G.order)))
    delta = [H.members for H in groups.all_subgroups(G)]
    return make_transporter_locality(G, 2, S, delta)


@pytest.fixture(scope="session")
def fix3():
    """FIX-3: GL(2,3) at p = 3 with Delta = {Sylow-3}."""
    G_set = oracle.gl23()
    G = build_group(G_set)
    S = Subgroup(G, groups.sylow_subgroup(G, 3).members)
    L = make_transporter_locality(G, 3, S, [S.members])
    return {"G": G, "S": S, "L": L, "G_set": G_set}


@pytest.fixture(scope="session")
def fix4():
    """FIX-4 ambient data (Alt(6), p = 2); the locality itself is built in the
    stress tests to keep its cost out of unrelated modules."""
    G_set, S_set = oracle.fix4()
    G = build_group(G_set)
    S = Subgroup(G, locate(G, S_set))
    return {"G": G, "S": S, "G_set": G_set, "S_set": S_set}


@pytest.fixture(scope="session")
def fix4_tfc(fix4):
    sg, to_p, _ = groups.subgroup_as_group(fix4["G"], fix4["S"])
    subs = [frozenset(to_p[x] for x in H.members)
            for H in groups.all_subgroups(sg)]
    G, S = fix4["G"], fix4["S"]
    cent = []
    for mem in subs:
        ok = True
        for g in range(G.order):
            img = frozenset(G.conj(x, g) for x in mem)
            if img <= S.members:
                c_in_s = {c for c in S.members
                          if all(G.conj(x, c) == x for x in img)}
                if not c_in_s <= img:
                    ok = False
                    break
        if ok:
            cent.append(mem)
    return make_transporter_locality(G, 2, S, cent)


@pytest.fixture()
def sym4_group_file(tmp_path):
    path = tmp_path / "sym4.json"
    path.write_text(json.dumps({
        "format": "perm-group.v1", "points": 4,
        "generators": [[1, 0, 2, 3], [1, 2, 3, 0]]}))
    return str(path)
