"""Versioned JSON formats: perm-group.v1, locality.v1, classification.v1,
normal-lattice.v1, expansion-trace.v1.  All writers are deterministic."""

import hashlib
import json

from . import groups
from .groups import DomainError, Subgroup
from .locality import make_transporter_locality


class FormatError(ValueError):
    pass


def dumps_canonical(obj):
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def write_json(path, obj):
    data = dumps_canonical(obj)
    with open(path, "w") as fh:
        fh.write(data)
    return data


def config_hash(obj):
    return hashlib.sha256(dumps_canonical(obj).encode()).hexdigest()[:16]


# -- perm-group.v1 -----------------------------------------------------------


def group_to_dict(generators, points):
    return {"format": "perm-group.v1", "points": points,
            "generators": [list(g) for g in generators]}


def parse_group(data):
    """perm-group.v1 -> FiniteGroup (with permutation images retained)."""
    if not isinstance(data, dict) or data.get("format") != "perm-group.v1":
        raise FormatError("not a perm-group.v1 record")
    points = data.get("points")
    gens = data.get("generators")
    if not isinstance(points, int) or points < 1:
        raise FormatError("bad point count: %r" % (points,))
    if not isinstance(gens, list) or not gens:
        raise FormatError("missing generators")
    for g in gens:
        if sorted(g) != list(range(points)):
            raise FormatError("not a permutation of %d points: %r" % (points, g))
    return groups.make_perm_group([list(g) for g in gens], points=points)


def load_group(path):
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise FormatError("cannot read group file: %s" % exc)
    return parse_group(data)


# -- locality.v1 -------------------------------------------------------------


def _carrier_indices(L, G, S):
    """Ambient-group index of every carrier element.

    Elements created by expansion carry synthetic labels; they are resolved
    through the rigid isomorphism onto the ambient transporter locality,
    which exists and is unique exactly when the serialization is faithful.
    """
    perm_idx = {}
    if G.perm_images:
        perm_idx = {p: i for i, p in enumerate(G.perm_images)}

    def direct(lab):
        if isinstance(lab, tuple) and len(lab) == 2 and lab[0] == "g":
            return perm_idx.get(lab[1], lab[1] if isinstance(lab[1], int) else None)
        return None

    out = [direct(lab) for lab in L.labels]
    if all(v is not None for v in out):
        return out
    from .expansion import rigid_isomorphism
    delta_parent = [frozenset(_s_to_parent(L, S, P)) for P in L.delta]
    T = make_transporter_locality(G, L.p, S, delta_parent)
    beta = rigid_isomorphism(L, T)
    if not beta:
        raise FormatError("carrier has no ambient coordinates: %r" % (beta,))
    return [direct(T.labels[beta(g)]) for g in L.elements()]


def _s_to_parent(L, S, P):
    # S-index order matches subgroup_as_group's sorted member order
    to_parent = sorted(S.members)
    return sorted(to_parent[x] for x in P)


def locality_to_dict(L, G, S, group_ref):
    carrier = _carrier_indices(L, G, S)
    return {
        "format": "locality.v1",
        "group_ref": group_ref,
        "p": L.p,
        "S_members": sorted(S.members),
        "Delta": sorted(_s_to_parent(L, S, P) for P in L.delta),
        "carrier": carrier,
        "s_domain": [sorted(_s_to_parent(L, S, L.s_g(g)))
                     for g in L.elements()],
    }


def locality_from_dict(data, G):
    """Rebuild the transporter locality the record describes and check the
    stored tables against it; round-trips are then byte-identical."""
    if not isinstance(data, dict) or data.get("format") != "locality.v1":
        raise FormatError("not a locality.v1 record")
    try:
        S = Subgroup(G, set(data["S_members"]))
        delta = [frozenset(P) for P in data["Delta"]]
        L = make_transporter_locality(G, data["p"], S, delta)
    except (KeyError, DomainError) as exc:
        raise FormatError("locality record invalid: %s" % exc)
    got = locality_to_dict(L, G, S, data["group_ref"])
    if got["carrier"] != data["carrier"] or got["s_domain"] != data["s_domain"]:
        raise FormatError("stored carrier tables disagree with the rebuild")
    return L, S


# -- expansion-trace.v1 ------------------------------------------------------


def trace_to_dict(L):
    steps = []
    for step in getattr(L, "expansion_trace", []):
        entry = dict(step)
        if "representative" in entry:
            entry["representative"] = list(entry["representative"])
        steps.append(entry)
    return {"format": "expansion-trace.v1", "steps": steps}
