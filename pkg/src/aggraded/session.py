"""Session files: a line-oriented declarative front end.

Grammar (``#`` comments allowed)::

    char 32003
    vars X Y Z
    flavor local                      # or: graded
    ideal I : X*Z - Y^3, Y*Z - X^4, Z^2 - X^3*Y^2
    free F : rank 1
    submodule N in F : [X]
    module M = F / N                  # or: module M = F / 0
    option truncation 12
    option max_homdeg 8
    option regbound 10
    analyze M : purity, betti, hilbert, fstar, hk, equigen
    analyze ring : hilbert, invariants, tangentcone

Reports are deterministic JSON documents; identical sessions and options
produce byte-identical output.  Exit status: 0 all conclusive, 2 some
result inconclusive at its cutoff, 1 error.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from . import __version__
from .field import is_prime
from .graded import (GradedModule, betti_analysis, hilbert_series,
                     minimal_graded_resolution, numeric_invariants, ring_as_module)
from .herzog_kuhl import PreconditionError, cmd_equivalence_report, ring_local_invariants
from .modules import LocalModule, SubmoduleNotInMaximalIdeal, equigenerated_check, local_minimal_resolution
from .oracle import OracleWindowError
from .poly import FreeLayout, PolyRing, Vector
from .purity import (INCONCLUSIVE, NOT_PURE, PURE, initial_complex, koszul_fibre_check,
                     purity_verdict, verify_initial_complex)
from .rings import GradedRing, LocalRing

DEFAULT_OPTIONS = {"truncation": 12, "max_homdeg": 8, "regbound": 10}

KNOWN_COMMANDS = (
    "purity", "betti", "hilbert", "invariants", "fstar", "hk", "equigen",
    "koszulfp", "tangentcone",
)
RING_COMMANDS = ("hilbert", "invariants", "tangentcone", "betti")


class SessionError(ValueError):
    def __init__(self, line_no, message):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


@dataclass
class Session:
    characteristic: int = 32003
    variables: tuple = ()
    flavor: str = "local"
    ideal_strings: tuple = ()
    frees: dict = field(default_factory=dict)        # name -> rank
    submodules: dict = field(default_factory=dict)   # name -> (free, [column strings])
    modules: dict = field(default_factory=dict)      # name -> (free, submodule or None)
    commands: list = field(default_factory=list)     # (target, command)
    options: dict = field(default_factory=lambda: dict(DEFAULT_OPTIONS))

    def describe(self):
        return {
            "characteristic": self.characteristic,
            "variables": list(self.variables),
            "flavor": self.flavor,
            "ideal": list(self.ideal_strings),
            "frees": {k: v for k, v in sorted(self.frees.items())},
            "submodules": {k: {"free": v[0], "columns": v[1]} for k, v in sorted(self.submodules.items())},
            "modules": {k: {"free": v[0], "submodule": v[1]} for k, v in sorted(self.modules.items())},
            "commands": [{"target": t, "command": c} for t, c in self.commands],
        }


def _split_columns(text, line_no):
    """Top-level comma split of ``[a, b], [c]`` style column lists."""
    cols = []
    depth = 0
    cur = ""
    for ch in text:
        if ch == "[":
            depth += 1
            if depth == 1:
                cur = ""
                continue
        elif ch == "]":
            depth -= 1
            if depth == 0:
                cols.append(cur)
                cur = ""
                continue
            if depth < 0:
                raise SessionError(line_no, "unbalanced ']'")
        if depth >= 1:
            cur += ch
        elif ch not in ", \t":
            raise SessionError(line_no, f"unexpected {ch!r} outside '[...]'")
    if depth != 0:
        raise SessionError(line_no, "unbalanced '['")
    return cols


def parse_session(text: str) -> Session:
    ses = Session()
    declared = {"char": False, "vars": False}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head == "char":
            try:
                p = int(rest)
            except ValueError:
                raise SessionError(line_no, f"bad characteristic {rest!r}")
            if not is_prime(p):
                raise SessionError(line_no, f"characteristic {p} is not prime")
            ses.characteristic = p
            declared["char"] = True
        elif head == "vars":
            names = rest.split()
            if not names:
                raise SessionError(line_no, "vars line needs at least one name")
            ses.variables = tuple(names)
            declared["vars"] = True
        elif head == "flavor":
            if rest not in ("local", "graded"):
                raise SessionError(line_no, f"flavor must be local or graded, got {rest!r}")
            ses.flavor = rest
        elif head == "ideal":
            name, _, body = rest.partition(":")
            body = body.strip()
            if not name.strip():
                raise SessionError(line_no, "ideal needs a name")
            ses.ideal_strings = tuple(s.strip() for s in body.split(",") if s.strip()) if body else ()
        elif head == "free":
            name, _, body = rest.partition(":")
            name = name.strip()
            body = body.strip()
            if not name or not body.startswith("rank"):
                raise SessionError(line_no, "expected: free NAME : rank R")
            try:
                rank = int(body[len("rank"):].strip())
            except ValueError:
                raise SessionError(line_no, "bad rank")
            if rank < 0:
                raise SessionError(line_no, "rank must be nonnegative")
            ses.frees[name] = rank
        elif head == "submodule":
            decl, _, body = rest.partition(":")
            parts = decl.split()
            if len(parts) != 3 or parts[1] != "in":
                raise SessionError(line_no, "expected: submodule NAME in FREE : [..], [..]")
            name, free = parts[0], parts[2]
            if free not in ses.frees:
                raise SessionError(line_no, f"unknown free module {free!r}")
            cols = _split_columns(body.strip(), line_no) if body.strip() else []
            ses.submodules[name] = (free, cols)
        elif head == "module":
            name, _, body = rest.partition("=")
            name = name.strip()
            free, _, sub = body.partition("/")
            free, sub = free.strip(), sub.strip()
            if not name or not free or not sub:
                raise SessionError(line_no, "expected: module NAME = FREE / SUBMODULE")
            if free not in ses.frees:
                raise SessionError(line_no, f"unknown free module {free!r}")
            if sub != "0":
                if sub not in ses.submodules:
                    raise SessionError(line_no, f"unknown submodule {sub!r}")
                if ses.submodules[sub][0] != free:
                    raise SessionError(line_no, f"submodule {sub!r} lives in a different free module")
            ses.modules[name] = (free, None if sub == "0" else sub)
        elif head == "option":
            key, _, val = rest.partition(" ")
            key = key.strip()
            if key not in DEFAULT_OPTIONS:
                raise SessionError(line_no, f"unknown option {key!r}")
            try:
                ses.options[key] = int(val.strip())
            except ValueError:
                raise SessionError(line_no, f"bad value for option {key}")
        elif head == "analyze":
            target, _, body = rest.partition(":")
            target = target.strip()
            cmds = [c.strip() for c in body.split(",") if c.strip()]
            if not cmds:
                raise SessionError(line_no, "analyze needs at least one command")
            for c in cmds:
                if c not in KNOWN_COMMANDS:
                    raise SessionError(line_no, f"unknown command {c!r}")
                if target == "ring" and c not in RING_COMMANDS:
                    raise SessionError(line_no, f"command {c!r} needs a module target")
                ses.commands.append((target, c))
            if target != "ring" and target not in ses.modules:
                raise SessionError(line_no, f"unknown module {target!r}")
        else:
            raise SessionError(line_no, f"unknown directive {head!r}")
    if not declared["vars"]:
        raise SessionError(0, "missing vars line")
    return ses


# ------------------------------------------------------------- execution


class _Workspace:
    """Resolved presentations for one session."""

    def __init__(self, ses: Session, char_override=None, truncation=None, max_homdeg=None):
        self.session = ses
        self.options = dict(ses.options)
        if truncation is not None:
            self.options["truncation"] = truncation
        if max_homdeg is not None:
            self.options["max_homdeg"] = max_homdeg
        p = char_override if char_override is not None else ses.characteristic
        self.characteristic = p
        self.cover = PolyRing(ses.variables, p)
        ideal = [self.cover.from_string(s) for s in ses.ideal_strings]
        if ses.flavor == "local":
            self.ring = LocalRing(self.cover, ideal)
            self.graded_ring = self.ring.graded_cover
        else:
            self.ring = None
            self.graded_ring = GradedRing(self.cover, ideal)
        self.modules = {}
        for name, (free, sub) in ses.modules.items():
            rank = ses.frees[free]
            layout = FreeLayout(rank)
            cols = []
            if sub is not None:
                for colspec in ses.submodules[sub][1]:
                    entries = [e.strip() for e in colspec.split(",")]
                    if len(entries) != rank:
                        raise SessionError(0, f"column {colspec!r} has {len(entries)} entries, free rank is {rank}")
                    cols.append(Vector.from_polys([self.cover.from_string(e or "0") for e in entries]))
            if ses.flavor == "local":
                self.modules[name] = LocalModule(self.ring, layout, cols)
            else:
                self.modules[name] = GradedModule(self.graded_ring, layout, cols)


def _purity_payload(pv):
    wa = None
    if pv.route_a.witness:
        wa = {"position": pv.route_a.witness[0], "degrees": list(pv.route_a.witness[1])}
    wb = None
    if pv.route_b.homology_witness:
        pos, vec = pv.route_b.homology_witness
        wb = {"position": pos, "class": str(vec)}
    return {
        "verdict": pv.verdict,
        "route_a": {
            "is_pure": pv.route_a.is_pure,
            "complete": pv.route_a.complete,
            "type": list(pv.route_a.delta),
            "witness": wa,
        },
        "route_b": {
            "conclusion": pv.route_b.purity_conclusion,
            "acyclic_up_to": pv.route_b.acyclic_up_to,
            "coker_matches": pv.route_b.coker_matches,
            "is_minimal": pv.route_b.is_minimal,
            "homology_witness": wb,
        },
        "betti_transfer": {str(k): list(v) for k, v in sorted(pv.betti_transfer.items())},
        "delta": list(pv.delta),
        "noteworthy_acyclic_without_coker": pv.noteworthy,
    }


def _betti_payload(table):
    return {
        "entries": [[i, j, c] for (i, j), c in sorted(table.entries.items())],
        "complete": table.complete,
        "pdim": table.pdim if table.complete else None,
        "cutoff": table.cutoff,
        "rendered": table.render(),
    }


def _run_command(ws: _Workspace, target: str, command: str):
    """Returns (payload dict, conclusive flag)."""
    opts = ws.options
    cutoff = opts["max_homdeg"]
    truncation = opts["truncation"]
    local = ws.session.flavor == "local"

    if target == "ring":
        if command == "tangentcone":
            if not local:
                raise PreconditionError("tangentcone needs the local flavor")
            gens = ws.ring.tangent_cone()
            return {"generators": [str(g) for g in gens]}, True
        gmod = ring_as_module(ws.graded_ring)
        if command == "hilbert":
            hs = hilbert_series(gmod)
            return {"series": hs.render(), "numerator": list(hs.numerator),
                    "dim": hs.dim, "multiplicity": hs.multiplicity}, True
        if command == "invariants":
            inv = numeric_invariants(gmod, cutoff)
            payload = {"dim": inv.dim, "depth": inv.depth, "codim": inv.codim,
                       "cmd": inv.cmd, "multiplicity": inv.multiplicity,
                       "pdim_status": list(inv.pdim_status)}
            if local:
                dim_r, depth_r, cmd_r, e_r = ring_local_invariants(ws.ring)
                payload["local_ring"] = {"dim": dim_r, "depth": depth_r, "cmd": cmd_r, "multiplicity": e_r}
            return payload, True
        if command == "betti":
            _, table = minimal_graded_resolution(gmod, cutoff)
            return _betti_payload(table), table.complete
        raise PreconditionError(f"command {command!r} not available on the ring")

    mod = ws.modules[target]
    if not local:
        if command == "betti":
            _, table = minimal_graded_resolution(mod, cutoff)
            return _betti_payload(table), table.complete
        if command == "hilbert":
            hs = hilbert_series(mod)
            return {"series": hs.render(), "numerator": list(hs.numerator),
                    "dim": hs.dim, "multiplicity": hs.multiplicity}, True
        if command == "invariants":
            inv = numeric_invariants(mod, cutoff)
            return {"dim": inv.dim, "depth": inv.depth, "codim": inv.codim,
                    "cmd": inv.cmd, "multiplicity": inv.multiplicity,
                    "pdim_status": list(inv.pdim_status)}, True
        if command == "purity":
            _, table = minimal_graded_resolution(mod, cutoff)
            rep = betti_analysis(table)
            verdict = (PURE if rep.complete else INCONCLUSIVE) if rep.is_pure else NOT_PURE
            return {"verdict": verdict, "is_pure": rep.is_pure, "type": list(rep.delta),
                    "witness": list(rep.witness) if rep.witness else None}, verdict != INCONCLUSIVE
        raise PreconditionError(f"command {command!r} needs the local flavor")

    from .modules import assoc_graded_module
    if command == "purity":
        pv = purity_verdict(mod, cutoff)
        return _purity_payload(pv), pv.conclusive
    if command == "betti":
        _, table = minimal_graded_resolution(assoc_graded_module(mod), cutoff)
        return _betti_payload(table), table.complete
    if command == "hilbert":
        hs = hilbert_series(assoc_graded_module(mod))
        return {"series": hs.render(), "numerator": list(hs.numerator),
                "dim": hs.dim, "multiplicity": hs.multiplicity}, True
    if command == "invariants":
        inv = numeric_invariants(assoc_graded_module(mod), cutoff)
        res = local_minimal_resolution(mod, cutoff)
        payload = {"dim": inv.dim, "depth": inv.depth, "codim": inv.codim,
                   "cmd": inv.cmd, "multiplicity": inv.multiplicity,
                   "pdim_status_graded": list(inv.pdim_status),
                   "pdim_status_local": ["finite", res.pdim] if res.finite else ["at_least", cutoff + 1]}
        return payload, inv.pdim_status[0] == "finite" and res.finite
    if command == "fstar":
        res = local_minimal_resolution(mod, cutoff + 1)
        fs = initial_complex(res)
        vr = verify_initial_complex(fs, cutoff)
        wb = None
        if vr.homology_witness:
            wb = {"position": vr.homology_witness[0], "class": str(vr.homology_witness[1])}
        return {
            "is_complex": vr.is_complex,
            "delta": list(fs.delta),
            "column_orders": [res.column_orders(i) for i in range(1, len(res.mats) + 1)],
            "acyclic_up_to": vr.acyclic_up_to,
            "homology_witness": wb,
            "coker_matches": vr.coker_matches,
            "is_minimal": vr.is_minimal,
            "conclusion": vr.purity_conclusion,
        }, vr.purity_conclusion != INCONCLUSIVE
    if command == "hk":
        rep = cmd_equivalence_report(mod, cutoff)
        return {
            "conditions": {
                "cmd_module_eq_cmd_ring": rep.condition_cmd_module,
                "betti_eq_hk": rep.condition_betti,
                "cmd_graded_eq_cmd_graded_ring": rep.condition_cmd_graded,
            },
            "cmd": {"module": rep.cmd_module, "ring": rep.cmd_ring,
                    "graded_module": rep.cmd_graded_module, "graded_ring": rep.cmd_graded_ring},
            "betti": list(rep.betti),
            "hk_coefficients": [str(b) for b in rep.hk.b],
            "multiplicity_identity": rep.multiplicity_identity_holds,
            "multiplicity_sides": [str(s) for s in rep.multiplicity_sides],
        }, True
    if command == "equigen":
        rep = equigenerated_check(mod, truncation)
        return {
            "verdict": rep.verdict,
            "order": rep.order,
            "generator_degrees": list(rep.generator_degrees),
            "intersection_condition": rep.intersection_condition,
            "mu_condition": rep.mu_condition,
            "mu": {"submodule": rep.mu_n, "initial_submodule": rep.mu_nstar},
        }, True
    if command == "koszulfp":
        rep = koszul_fibre_check(mod, cutoff, force=True)
        return {
            "omega2_equigenerated": rep.omega2_equigenerated,
            "omega2_degrees": list(rep.omega2_degrees),
            "omega2_linear_within_cutoff": rep.omega2_linear_within_cutoff,
            "column_orders_ok": {str(k): v for k, v in sorted(rep.column_orders_ok.items())},
            "not_pure_certificate": rep.not_pure_certificate,
        }, True
    raise PreconditionError(f"unhandled command {command!r}")


def execute(ses: Session, char_override=None, truncation=None, max_homdeg=None):
    """Run all analyze commands; returns (report dict, exit_status)."""
    try:
        ws = _Workspace(ses, char_override, truncation, max_homdeg)
    except (SessionError, SubmoduleNotInMaximalIdeal, ValueError) as exc:
        report = {"session": ses.describe(), "options": dict(ses.options),
                  "results": [], "provenance": {"error": str(exc)}}
        return report, 1
    results = []
    status = 0
    for target, command in ses.commands:
        entry = {"command": command, "target": target}
        try:
            payload, conclusive = _run_command(ws, target, command)
            entry["result"] = payload
            entry["conclusive"] = conclusive
            if not conclusive and status == 0:
                status = 2
        except (PreconditionError, OracleWindowError) as exc:
            entry["error"] = str(exc)
            status = 1
        results.append(entry)
    report = {
        "session": ses.describe(),
        "options": {**ws.options, "characteristic": ws.characteristic},
        "results": results,
        "provenance": {
            "characteristic": ws.characteristic,
            "truncation": ws.options["truncation"],
            "max_homdeg": ws.options["max_homdeg"],
            "regbound": ws.options["regbound"],
            "package": f"aggraded {__version__}",
        },
    }
    return report, status


def render_report(report) -> str:
    """Deterministic machine-readable form (sorted keys, no whitespace drift)."""
    return json.dumps(report, sort_keys=True, indent=1)


def summarize(report) -> str:
    """Human-readable per-command lines."""
    lines = []
    for entry in report["results"]:
        head = f"{entry['target']} : {entry['command']}"
        if "error" in entry:
            lines.append(f"{head} -> ERROR: {entry['error']}")
            continue
        r = entry["result"]
        if entry["command"] == "purity":
            v = r["verdict"]
            if v == "not-pure":
                bits = []
                if r["route_a"]["witness"]:
                    w = r["route_a"]["witness"]
                    bits.append(f"beta_{w['position']} degrees {set(w['degrees'])}")
                if r["route_b"]["homology_witness"]:
                    wb = r["route_b"]["homology_witness"]
                    bits.append(f"initial complex has homology at position {wb['position']}")
                if not r["route_b"]["coker_matches"]:
                    bits.append("cokernel differs from the associated graded module")
                lines.append(f"{head} -> NOT PURE -- witness: " + "; ".join(bits))
            elif v == "pure":
                lines.append(f"{head} -> PURE of type {tuple(r['delta'])}")
            else:
                lines.append(f"{head} -> INCONCLUSIVE at cutoff")
        elif entry["command"] == "hilbert":
            lines.append(f"{head} -> {r['series']}; dim {r['dim']}; e {r['multiplicity']}")
        elif entry["command"] == "betti":
            lines.append(f"{head} ->\n{r['rendered']}")
        elif entry["command"] == "equigen":
            lines.append(
                f"{head} -> {'equigenerated' if r['verdict'] else 'NOT equigenerated'} "
                f"(s={r['order']}, degrees {r['generator_degrees']})"
            )
        elif entry["command"] == "hk":
            conds = r["conditions"]
            lines.append(
                f"{head} -> cmd(M)=cmd(R): {conds['cmd_module_eq_cmd_ring']}, "
                f"HK equations: {conds['betti_eq_hk']}, "
                f"e(M) identity: {r['multiplicity_identity']} "
                f"(sides {r['multiplicity_sides'][0]} = {r['multiplicity_sides'][1]})"
            )
        elif entry["command"] == "tangentcone":
            lines.append(f"{head} -> <" + ", ".join(r["generators"]) + ">")
        elif entry["command"] == "invariants":
            lines.append(
                f"{head} -> dim {r['dim']}, depth {r['depth']}, cmd {r['cmd']}, "
                f"codim {r['codim']}, e {r['multiplicity']}"
            )
        elif entry["command"] == "fstar":
            lines.append(
                f"{head} -> conclusion {r['conclusion']}; acyclic up to {r['acyclic_up_to']}; "
                f"coker matches: {r['coker_matches']}; twists {r['delta']}"
            )
        elif entry["command"] == "koszulfp":
            lines.append(
                f"{head} -> omega2 linear: {r['omega2_linear_within_cutoff']} "
                f"(degrees {r['omega2_degrees']}); not-pure certificate: {r['not_pure_certificate']}"
            )
        else:
            lines.append(f"{head} -> done")
    return "\n".join(lines)
