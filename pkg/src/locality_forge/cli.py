"""locality-forge: classify, expand, enumerate normals, verify, quotient."""

import hashlib
import json
import os
import sys

import click

from . import __version__, groups, serialize
from .caps import ResourceError, get_caps, set_caps
from .expansion import expand, rigid_isomorphism, subcentric_closure
from .fusion import (classify_subgroups, f_closure, fusion_system, is_proper,
                     is_saturated)
from .groups import DomainError, Subgroup
from .locality import (localities_equal, make_transporter_locality, restrict,
                       theta_quotient, verify_locality_axioms)
from .normal import (NormalLattice, o_p_prime_residual, o_p_residual,
                     residual_expansion_compatibility, verify_A2_bijection,
                     verify_quotient_fusion)
from .partial import verify_partial_group_axioms
from .report import Report

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_IO = 2
EXIT_DELTA = 3


class CliError(click.ClickException):
    def __init__(self, message, exit_code):
        super().__init__(message)
        self.exit_code = exit_code


def _fail(code, kind, detail):
    raise CliError(serialize.dumps_canonical(
        {"error": kind, "detail": detail}).strip(), code)


# -- pipeline ---------------------------------------------------------------


class Pipeline:
    """Everything derived from one parsed configuration."""

    def __init__(self, action, group, prime, delta, out, seed, cap_order,
                 no_theta):
        self.action = action
        self.delta_spec = delta
        self.out = out
        self.seed = seed
        self.no_theta = no_theta
        if cap_order:
            set_caps(group_order=cap_order)
        try:
            with open(group, "rb") as fh:
                raw = fh.read()
        except OSError as exc:
            _fail(EXIT_IO, "io", str(exc))
        self.config_hash = serialize.config_hash({
            "action": action,
            "group_sha": hashlib.sha256(raw).hexdigest(),
            "prime": prime,
            "delta": delta,
            "seed": seed,
            "cap_order": cap_order,
            "no_theta": no_theta,
            "caps": vars(get_caps()),
        })
        self.group_ref = {"path": os.path.basename(group),
                          "sha256": hashlib.sha256(raw).hexdigest()}
        try:
            self.G = serialize.parse_group(json.loads(raw))
        except (serialize.FormatError, ValueError) as exc:
            _fail(EXIT_IO, "parse", str(exc))
        except ResourceError as exc:
            _fail(EXIT_IO, "cap", str(exc))
        self.p = prime
        self.S = groups.sylow_subgroup(self.G, prime)
        self.theta_applied = False

    def envelope(self, body):
        out = dict(body)
        out["tool_version"] = __version__
        out["config_hash"] = self.config_hash
        out["seed"] = self.seed
        return out

    def emit(self, name, body):
        os.makedirs(self.out, exist_ok=True)
        path = os.path.join(self.out, name)
        serialize.write_json(path, self.envelope(body))
        click.echo("wrote %s" % path)

    # -- delta resolution ---------------------------------------------------

    def centric_parent_sets(self):
        """Subgroups of S centric in the ambient fusion system of the group."""
        G, S = self.G, self.S
        sg, to_p, _ = groups.subgroup_as_group(G, S)
        out = []
        for H in groups.all_subgroups(sg):
            mem = frozenset(to_p[x] for x in H.members)
            ok = True
            for g in G.all():
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

    def build_base(self):
        """The locality the action operates on, per the delta spec."""
        spec = self.delta_spec
        try:
            if spec in ("centric", "cr-closure", "subcentric"):
                L = make_transporter_locality(self.G, self.p, self.S,
                                              self.centric_parent_sets())
                if spec == "cr-closure":
                    cls = classify_subgroups(L, assert_proper_facts=False)
                    cr = {P for i, c in enumerate(cls.classes) for P in c
                          if cls.flags[i]["centric"] and cls.flags[i]["radical"]}
                    L = restrict(L, f_closure(fusion_system(L), cr))
                elif spec == "subcentric":
                    L = subcentric_closure(L)
                return L
            return make_transporter_locality(self.G, self.p, self.S,
                                             self.explicit_delta(spec))
        except DomainError as exc:
            _fail(EXIT_DELTA, "delta", str(exc))
        except ResourceError as exc:
            _fail(EXIT_IO, "cap", str(exc))

    def explicit_delta(self, spec):
        """A JSON list (inline or @file) of subgroups, each a list of
        permutation image arrays."""
        try:
            if spec.startswith("@"):
                with open(spec[1:]) as fh:
                    data = json.load(fh)
            else:
                data = json.loads(spec)
        except (OSError, ValueError) as exc:
            _fail(EXIT_IO, "parse", "bad delta spec: %s" % exc)
        if self.G.perm_images is None:
            _fail(EXIT_IO, "parse", "explicit delta needs a permutation group")
        perm_idx = {p: i for i, p in enumerate(self.G.perm_images)}
        out = []
        for sub in data:
            mem = set()
            for perm in sub:
                key = tuple(perm)
                if key not in perm_idx:
                    _fail(EXIT_DELTA, "delta",
                          "permutation outside the group: %r" % (perm,))
                mem.add(perm_idx[key])
            out.append(frozenset(mem))
        return out

    def maybe_theta(self, L):
        """Quotient by Theta(L) to reach properness; opt-out via --no-theta."""
        if self.no_theta or is_proper(L):
            return L
        tq = theta_quotient(L)
        self.theta_applied = True
        self.theta_order = tq.theta.order
        return tq.lbar

    def locality_record(self, L):
        return serialize.locality_to_dict(L, self.G, self.S, self.group_ref)


def _common(fn):
    for dec in reversed([
        click.option("--group", required=True, type=click.Path()),
        click.option("--prime", required=True, type=int),
        click.option("--delta", default="cr-closure", show_default=True),
        click.option("--out", default=".", show_default=True,
                     type=click.Path(file_okay=False)),
        click.option("--seed", default=0, show_default=True, type=int),
        click.option("--cap-order", default=0, type=int),
        click.option("--no-theta", is_flag=True),
    ]):
        fn = dec(fn)
    return fn


@click.group(invoke_without_command=True)
@click.version_option(version=__version__, prog_name="locality-forge")
@click.pass_context
def main(ctx):
    if ctx.invoked_subcommand is None:
        click.echo(ctx.get_help())
        ctx.exit(EXIT_OK)


@main.command()
@_common
def classify(**kw):
    """Classify the subgroups of S and emit the locality."""
    pipe = Pipeline("classify", **kw)
    base = pipe.build_base()
    L = pipe.maybe_theta(base)
    cls = classify_subgroups(L, assert_proper_facts=False)
    body = cls.to_dict()
    body["proper"] = is_proper(L, classification=cls)
    body["theta_applied"] = pipe.theta_applied
    pipe.emit("locality.json", pipe.locality_record(base))
    pipe.emit("classification.json", body)


@main.command("expand")
@_common
def expand_cmd(**kw):
    """Expand the minimal proper object set to the delta spec."""
    pipe = Pipeline("expand", **kw)
    target = pipe.build_base()
    base = Pipeline("expand", **{**kw, "delta": "cr-closure"}).build_base()
    base = pipe.maybe_theta(base)
    if pipe.theta_applied:
        _fail(EXIT_DELTA, "delta",
              "expansion base is improper even after the Theta quotient")
    try:
        out = expand(base, target.delta)
    except DomainError as exc:
        _fail(EXIT_DELTA, "delta", str(exc))
    pipe.emit("locality.json", pipe.locality_record(base))
    pipe.emit("expanded.json", pipe.locality_record(out))
    pipe.emit("trace.json", serialize.trace_to_dict(out))


@main.command()
@_common
def normals(**kw):
    """Enumerate the partial normal subgroups and their lattice."""
    pipe = Pipeline("normals", **kw)
    L = pipe.maybe_theta(pipe.build_base())
    try:
        lat = NormalLattice(L)
    except ResourceError as exc:
        _fail(EXIT_IO, "cap", str(exc))
    body = lat.to_dict()
    body["theta_applied"] = pipe.theta_applied
    pipe.emit("normal-lattice.json", body)


@main.command()
@_common
def quotient(**kw):
    """Quotient by every partial normal subgroup; report fusion behavior."""
    pipe = Pipeline("quotient", **kw)
    L = pipe.maybe_theta(pipe.build_base())
    lat = NormalLattice(L)
    reports = []
    for N in lat:
        rep = verify_quotient_fusion(L, N)
        reports.append({"size": N.order, "report": rep.to_dict()})
    pipe.emit("quotients.json", {"format": "quotient-report.v1",
                                 "members": reports})
    if any(not r["report"]["ok"] for r in reports):
        sys.exit(EXIT_VERIFY)


@main.command()
@_common
def verify(**kw):
    """Run the full assertion suite; exit 0 iff everything passes."""
    pipe = Pipeline("verify", **kw)
    L = pipe.maybe_theta(pipe.build_base())
    suites = []

    def run(name, fn):
        try:
            rep = fn()
        except (AssertionError, DomainError) as exc:
            rep = Report(name)
            rep.add("completed", False, str(exc))
            rep.finish()
        suites.append((name, rep))
        click.echo("%-24s %s" % (name, "ok" if rep.ok else "FAILED"))

    run("partial-group-axioms",
        lambda: verify_partial_group_axioms(L.pg, seed=pipe.seed))
    run("locality-axioms", lambda: verify_locality_axioms(L, seed=pipe.seed))
    run("stratification", lambda: L.stratification().verify(seed=pipe.seed))
    run("classification-chain", lambda: _chain_report(L))
    run("saturation", lambda: _saturation_report(L))

    holder = {}

    def expand_suite():
        rep = Report("expansion")
        Lp = subcentric_closure(L)
        holder["Lp"] = Lp
        rep.add("round-trip", localities_equal(restrict(Lp, L.delta), L))
        direct = make_transporter_locality(
            pipe.G, pipe.p, pipe.S,
            [frozenset(serialize._s_to_parent(Lp, pipe.S, P))
             for P in Lp.delta])
        beta = rigid_isomorphism(Lp, direct)
        rep.add("rigid-unique", bool(beta), repr(beta))
        rep.finish()
        return rep

    if not pipe.theta_applied:
        run("expansion", expand_suite)
        if "Lp" in holder:
            run("normal-lattice",
                lambda: verify_A2_bijection(L, holder["Lp"]))
            run("residuals", lambda: _residual_report(L, holder["Lp"]))
    run("quotient-fusion", lambda: _quotient_fusion_report(L))

    body = {"format": "verify.v1",
            "suites": [{"name": n, "report": r.to_dict()} for n, r in suites]}
    pipe.emit("verify.json", body)
    if any(not r.ok for _, r in suites):
        sys.exit(EXIT_VERIFY)


def _chain_report(L):
    rep = Report("classification-chain")
    cls = classify_subgroups(L, assert_proper_facts=False)
    for i, fl in enumerate(cls.flags):
        cr = fl["centric"] and fl["radical"]
        rep.add("cr-implies-centric", (not cr) or fl["centric"], i)
        rep.add("centric-implies-quasicentric",
                (not fl["centric"]) or fl["quasicentric"], i)
        rep.add("quasicentric-implies-subcentric",
                (not fl["quasicentric"]) or fl["subcentric"], i)
    fs = cls.members_with("subcentric")
    rep.add("subcentric-closed", fs == f_closure(fusion_system(L), fs))
    rep.finish()
    return rep


def _saturation_report(L):
    rep = Report("saturation")
    sub = is_saturated(fusion_system(L), L=L, p=L.p)
    rep.add("saturated", sub.ok, sub.first_witness())
    rep.finish()
    return rep


def _residual_report(L, Lp):
    rep = Report("residuals")
    lat = NormalLattice(L)
    lat_plus = NormalLattice(Lp)
    for N in lat:
        op = o_p_residual(L, N, lattice=lat)
        opp = o_p_prime_residual(L, N, lattice=lat)
        rep.add("o-p-in-family", op.members <= N.members, N.order)
        rep.add("o-p-prime-in-family", opp.members <= N.members, N.order)
        sub = residual_expansion_compatibility(L, Lp, N, lattice=lat,
                                               lattice_plus=lat_plus)
        rep.add("expansion-compatible", sub.ok, sub.first_witness())
    rep.finish()
    return rep


def _quotient_fusion_report(L):
    rep = Report("quotient-fusion")
    for N in NormalLattice(L):
        sub = verify_quotient_fusion(L, N)
        rep.add("member", sub.ok, (N.order, sub.first_witness()))
    rep.finish()
    return rep
