"""End-to-end verification pipeline and report assembly.

Stage order: arrangement smoothness, per-polytope slice-Delzant checks,
pairwise intersection classification, quiver construction, cycle cover,
per-edge angle/type checks, glued topology, obstructions.  The first
failing stage halts the run with a machine-readable diagnosis.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

from .config import GlueConfiguration
from .core import EPS_GEOM, AngleClass
from .localmodel import hk_angles, intersection_type
from .obstruction import CalibratedSummand, hl_obstruction, parity_obstruction
from .polytope import IntersectionRecord, classify_intersection, check_sigma_delzant
from .quiver import Quiver, betti, cycle_cover, first_betti, glued_topology
from .arrangement import check_smooth


class VerifyError(RuntimeError):
    """A hypothesis required by the gluing construction failed."""

    def __init__(self, stage: str, detail: str):
        super().__init__(f"{stage}: {detail}")
        self.stage = stage
        self.detail = detail


def _angle_dict(a: Optional[AngleClass]):
    return None if a is None else {"num": a.num, "den": a.den}


def _record_dict(name_a, name_b, rec: IntersectionRecord) -> dict:
    return {
        "pair": [name_a, name_b],
        "kind": rec.kind,
        "point": None if rec.point is None else [list(map(float, r)) for r in rec.point],
        "angle": _angle_dict(rec.angle),
        "psi": None if rec.psi is None else [list(r) for r in rec.psi],
        "cone": None if rec.cone is None else [list(g) for g in rec.cone],
        "detail": rec.detail,
    }


def _shape_tag(poly) -> str:
    """Toric summand attached to a slice polytope, from its base shape."""
    n = poly.n
    normals = set(poly.base.normals)
    box = set()
    for i in range(n):
        e = [0] * n
        e[i] = 1
        box.add(tuple(e))
        box.add(tuple(-x for x in e))
    if normals == box:
        return f"(P1)^{n}"
    if n == 2 and len(normals) == 3:
        return "P2"
    return "toric"


def classify_all_pairs(cfg: GlueConfiguration, eps: float = EPS_GEOM):
    """Classification records keyed by sorted name pair."""
    polys = sorted(cfg.polytopes, key=lambda p: p.name)
    records = {}
    for i in range(len(polys)):
        for j in range(i + 1, len(polys)):
            records[(polys[i].name, polys[j].name)] = classify_intersection(
                polys[i], polys[j], eps
            )
    return records


def build_quiver(cfg: GlueConfiguration, records, mode: str = "graph") -> Quiver:
    """One directed edge per standard contact.

    The contact record carries effective slice angles; the edge runs
    from the polytope whose effective angle is pi/n below the other.
    In "main" mode the result must additionally be a single directed
    cycle through every polytope.
    """
    n = cfg.n
    step = AngleClass(1, n)
    edges = []
    for (na, nb), rec in sorted(records.items()):
        if rec.kind == "disjoint":
            continue
        if rec.kind != "standard":
            raise VerifyError("pairwise", f"{na} and {nb}: {rec.detail or rec.kind}")
        if rec.angle == step:
            edges.append((na, nb))
        elif rec.angle == -step:
            edges.append((nb, na))
        else:
            raise VerifyError(
                "pairwise",
                f"{na} and {nb}: contact angle {rec.angle} is not pi/{n}",
            )
    names = tuple(p.name for p in sorted(cfg.polytopes, key=lambda p: p.name))
    q = Quiver(names, tuple(edges))
    if cfg.quiver_spec != "auto":
        given = sorted(cfg.quiver_spec)
        if given != sorted(edges):
            raise VerifyError("quiver", "declared edge list disagrees with geometry")
    if mode == "main":
        outs = {v: 0 for v in names}
        ins = {v: 0 for v in names}
        for s, t in edges:
            outs[s] += 1
            ins[t] += 1
        h0, _ = betti(q)
        if h0 != 1 or any(outs[v] != 1 or ins[v] != 1 for v in names):
            raise VerifyError("quiver", "main mode needs a single directed cycle")
    elif mode != "graph":
        raise ValueError(f"unknown mode {mode!r}")
    return q


def verify_all(cfg: GlueConfiguration, mode: str = "graph",
               eps: float = EPS_GEOM) -> dict:
    """Run every stage; returns a deterministic report dictionary."""
    stages = []
    report = {"mode": mode, "stages": stages, "ok": False}
    n = cfg.n

    def fail(stage: str, detail: str) -> dict:
        stages.append({"stage": stage, "status": "fail", "detail": detail})
        return report

    verdict = check_smooth(cfg.arrangement, eps)
    if not verdict:
        tau, reason = verdict.witness
        return fail("smooth", f"subset {list(tau)}: {reason}")
    stages.append({"stage": "smooth", "status": "pass",
                   "subsets_checked": True})

    for poly in sorted(cfg.polytopes, key=lambda p: p.name):
        if (poly.theta.frac * n).denominator != 1:
            return fail("delzant",
                        f"{poly.name}: angle {poly.theta} is not a multiple of pi/{n}")
        dv = check_sigma_delzant(poly, cfg.arrangement, eps)
        if not dv:
            return fail("delzant", f"{poly.name}: " + "; ".join(dv.failures))
    stages.append({"stage": "delzant", "status": "pass",
                   "polytopes": [p.name for p in sorted(cfg.polytopes, key=lambda p: p.name)]})

    records = classify_all_pairs(cfg, eps)
    stages.append({
        "stage": "pairwise",
        "status": "pass",
        "records": [_record_dict(a, b, r) for (a, b), r in sorted(records.items())],
    })

    try:
        q = build_quiver(cfg, records, mode)
    except VerifyError as exc:
        return fail(exc.stage, exc.detail)
    h0, h1 = betti(q)
    stages.append({"stage": "quiver", "status": "pass",
                   "edges": [list(e) for e in q.edges], "h0": h0, "h1": h1})

    cert = cycle_cover(q)
    if not cert.covered:
        missing = [list(q.edges[j]) for j, f in enumerate(cert.edge_covered) if not f]
        return fail("cycle_cover", f"edges outside every cycle: {missing}")
    stages.append({"stage": "cycle_cover", "status": "pass",
                   "cycles": [list(c) for c in cert.cycles],
                   "kernel": list(cert.kernel)})

    by_name = {p.name: p for p in cfg.polytopes}
    edge_rows = []
    for (na, nb), rec in sorted(records.items()):
        if rec.kind != "standard":
            continue
        if rec.angle == AngleClass(1, n):
            src_th, tgt_th = rec.eff_theta_a, rec.eff_theta_b
            src, tgt = na, nb
        else:
            src_th, tgt_th = rec.eff_theta_b, rec.eff_theta_a
            src, tgt = nb, na
        try:
            angles = hk_angles(src_th, tgt_th, n)
            ityp = intersection_type(angles, 2 * n)
        except (ValueError, AssertionError) as exc:
            return fail("edge_types", f"{src} -> {tgt}: {exc}")
        if ityp != 1:
            return fail("edge_types",
                        f"{src} -> {tgt}: intersection type {ityp}, need 1")
        edge_rows.append({"edge": [src, tgt], "type": ityp,
                          "angle": _angle_dict(angles.exact[0]),
                          "multiplicity": 2 * n})
    stages.append({"stage": "edge_types", "status": "pass", "edges": edge_rows})

    labels = {p.name: (_shape_tag(p), p.theta) for p in cfg.polytopes}
    try:
        expr = glued_topology(q, labels, n)
        b1 = first_betti(expr)
    except ValueError as exc:
        return fail("topology", str(exc))
    stages.append({
        "stage": "topology",
        "status": "pass",
        "summands": [[tag, sign, cnt] for tag, sign, cnt in expr.summands],
        "n_cross": expr.n_cross,
        "dimension": expr.m,
        "b1": b1,
        "string": expr.render(),
    })

    try:
        summands = [
            CalibratedSummand.from_theta(p.theta, n, p.calibrated_volume())
            for p in sorted(cfg.polytopes, key=lambda p: p.name)
        ]
        hl = hl_obstruction(summands, n)
        par = parity_obstruction(expr)
    except ValueError as exc:
        return fail("obstruction", str(exc))
    stages.append({
        "stage": "obstruction",
        "status": "pass",
        "never_hl": hl.never_hl,
        "candidates": list(hl.candidates),
        "b1": par.b1,
        "never_hl_by_parity": par.never_hl_by_parity,
    })

    report["ok"] = True
    report["topology"] = expr.render()
    report["never_hl"] = hl.never_hl
    return report


def report_json(report: dict) -> str:
    """Canonical serialization, byte-stable across runs."""
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def report_summary(report: dict) -> str:
    """Short human-readable rendering of a report."""
    lines = []
    for st in report["stages"]:
        mark = "ok " if st["status"] == "pass" else "FAIL"
        extra = ""
        if st["stage"] == "topology" and st["status"] == "pass":
            extra = f"  {st['string']}  (b1 = {st['b1']})"
        if st["stage"] == "obstruction" and st["status"] == "pass":
            extra = ("  never calibrated" if st["never_hl"]
                     else f"  candidate directions {st['candidates']}")
        if st["status"] == "fail":
            extra = f"  {st['detail']}"
        lines.append(f"[{mark}] {st['stage']}{extra}")
    lines.append("verified" if report["ok"] else "hypotheses violated")
    return "\n".join(lines) + "\n"
