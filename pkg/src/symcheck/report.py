"""Report assembly: plain dicts of exact strings and integers, rendered as JSON or markdown."""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import __version__
from .catalog import ENTRY_IDS, UnknownPair, get_entry
from .cayley import (
    Convention,
    RealFormUnavailable,
    expected_compact_mismatches,
    ks_for_element,
    real_form_context,
    verify_ks_compact,
)
from .criteria import CriteriaReport, PairContext, RepresentativeReport, analyze_element, build_context, verify_pair
from .lie import Element
from .linalg import Matrix
from .scalar import format_scalar


@dataclass(frozen=True)
class RunConfig:
    pairs: tuple = ENTRY_IDS
    seed: int = 0
    samples: int = 100
    convention: Convention = Convention.ADJUSTED
    format: str = "md"
    parallel: bool = False

    def __post_init__(self):
        if self.samples < 1:
            raise ValueError("samples must be at least 1")
        for pid in self.pairs:
            if pid not in ENTRY_IDS:
                raise UnknownPair(pid)

    def echo(self) -> dict:
        # parallel and format are deliberately absent: output must not depend on them
        return {
            "convention": self.convention.value,
            "pairs": list(self.pairs),
            "samples": self.samples,
            "seed": self.seed,
        }


def fmt_matrix(m: Matrix) -> list:
    return [[format_scalar(x) for x in m.row(i)] for i in range(m.rows)]


def fmt_element(x: Element | None):
    if x is None:
        return None
    if x.algebra.realization is not None:
        return fmt_matrix(x.matrix)
    return [format_scalar(c) for c in x.coords]


def fmt_functional(f: tuple) -> str:
    return "(" + ", ".join(str(v) for v in f) + ")"


def representative_dict(rep: RepresentativeReport) -> dict:
    out = {
        "label": rep.label,
        "in_Np": rep.in_Np,
        "orbit_dim": rep.orbit_dim,
        "principal": rep.principal,
        "even": rep.even,
        "minus1_centralizer": rep.minus1_centralizer,
        "minus1_grading": rep.minus1_grading,
        "minus1_even": rep.minus1_even,
        "noticed": rep.noticed,
        "perp_identity": rep.perp_identity,
        "levi_instance": rep.levi_instance,
        "criteria_agree": rep.criteria_agree,
        "self_duality_bookkeeping": rep.self_duality_bookkeeping,
        "a_cap_gs_zero": rep.a_cap_gs_zero,
        "centralizer_samples_nilpotent": rep.centralizer_samples_nilpotent,
        "dims": dict(sorted(rep.dims.items())),
        "grading": {str(d): list(v) for d, v in sorted(rep.grading_dims.items())},
        "witness": fmt_element(rep.witness),
        "note": rep.note,
        "expected_mismatches": list(rep.expected_mismatches),
    }
    if rep.triple is not None:
        out["triple"] = {k: fmt_element(x) for k, x in zip("ehf", rep.triple.elements())}
    return out


def ks_dict(ks_rep) -> dict:
    out = {
        "label": ks_rep.label,
        "status": ks_rep.status,
        "minus1": ks_rep.minus1,
        "scaling": format_scalar(ks_rep.scaling) if ks_rep.scaling is not None else None,
        "probes": [[lam, ok] for lam, ok in ks_rep.probes],
        "compact": ks_rep.compact,
        "compact_iff_minus1": ks_rep.agrees,
        "round_trip": ks_rep.round_trip,
        "z_dim": ks_rep.z_dim,
        "z_gram": fmt_matrix(ks_rep.gram) if ks_rep.gram is not None else None,
    }
    if ks_rep.real_triple is not None:
        out["real_triple"] = {k: fmt_element(x) for k, x in zip("ehf", ks_rep.real_triple.elements())}
    return out


def cayley_section(ctx: PairContext, convention: Convention) -> tuple[dict, list]:
    entry = ctx.pair.entry
    if not entry.real_form:
        return {"available": False, "reason": "real form unavailable", "convention": convention.value}, []
    ks = verify_ks_compact(ctx.pair, convention)
    failures = [f"cayley {msg}" for msg in ks.failures]
    failures += [f"cayley {msg}" for msg in expected_compact_mismatches(ctx.pair, ks)]
    return {
        "available": True,
        "convention": convention.value,
        "real_form": entry.real_form_name,
        "representatives": [ks_dict(r) for r in ks.representatives],
        "passed": ks.passed,
    }, failures


def pair_report(pair_id: str, config: RunConfig) -> dict:
    ctx = build_context(get_entry(pair_id))
    cr: CriteriaReport = verify_pair(ctx, config.seed, config.samples)
    roots = cr.roots
    cayley, ks_failures = cayley_section(ctx, config.convention)
    failures = list(cr.failures) + ks_failures
    return {
        "id": pair_id,
        "description": ctx.pair.entry.description,
        "dims": cr.dims,
        "restricted_roots": {
            "count": len(roots.roots),
            "multiplicities": {fmt_functional(f): m for f, m in sorted(roots.multiplicities.items())},
            "positive": [fmt_functional(f) for f in roots.positives],
            "simple": [fmt_functional(f) for f in roots.simples],
            "reduced": roots.reduced,
            "chamber_element": fmt_element(roots.chamber_c),
            "positive_multiplicity_sum": sum(roots.multiplicities[f] for f in roots.positives),
        },
        "chamber": {"identities": cr.chamber_identities, "dims": cr.chamber_dims},
        "representatives": [representative_dict(r) for r in cr.representatives],
        "theorems": {
            "chamber_identities": cr.chamber_identities,
            "theorem_derived": cr.theorem_derived,
            "theorem_equality": cr.theorem_equality,
            "theorem_null_p": cr.theorem_null_p,
            "random_perp_identity": cr.random_perp_identity,
            "root_bookkeeping": cr.root_bookkeeping,
        },
        "diagonal_reduction": cr.diagonal_reduction,
        "cayley": cayley,
        "failures": failures,
        "passed": not failures,
    }


def _pair_worker(args) -> dict:
    pair_id, config = args
    return pair_report(pair_id, config)


def build_report(config: RunConfig) -> dict:
    ids = sorted(config.pairs)
    jobs = [(pid, config) for pid in ids]
    if config.parallel and len(ids) > 1:
        with ProcessPoolExecutor(max_workers=min(len(ids), 8)) as pool:
            pairs = list(pool.map(_pair_worker, jobs))
    else:
        pairs = [_pair_worker(job) for job in jobs]
    pairs.sort(key=lambda p: p["id"])
    return {
        "tool": "symcheck",
        "version": __version__,
        "config": config.echo(),
        "pairs": pairs,
        "passed": all(p["passed"] for p in pairs),
    }


def element_report(pair_id: str, x: Element, config: RunConfig) -> dict:
    ctx = build_context(get_entry(pair_id))
    rep = analyze_element(ctx.pair, ctx.cartan, x, "element", config.seed, config.samples)
    out = {
        "tool": "symcheck",
        "version": __version__,
        "config": {"convention": config.convention.value, "pair": pair_id, "samples": config.samples,
                   "seed": config.seed},
        "element": fmt_element(x),
        "classification": representative_dict(rep),
    }
    if rep.triple is not None:
        try:
            rf = real_form_context(ctx.pair)
        except RealFormUnavailable:
            out["cayley"] = {"available": False, "reason": "real form unavailable"}
        else:
            out["cayley"] = {"available": True, **ks_dict(ks_for_element(rf, "element", x, config.convention))}
    return out


def render_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _cell(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


def _md_matrix(rows) -> str:
    if rows is None:
        return "-"
    if rows and isinstance(rows[0], list):
        return "[" + "; ".join(" ".join(r) for r in rows) + "]"
    return "(" + ", ".join(rows) + ")"


def _md_pair(p: dict) -> list[str]:
    d = p["dims"]
    rr = p["restricted_roots"]
    lines = [
        f"## {p['id']}: {'PASS' if p['passed'] else 'FAIL'}",
        "",
        p["description"],
        "",
        f"- dims: g={d['g']} k={d['k']} p={d['p']} r={d['r']}",
        f"- restricted roots: {rr['count']} roots, reduced: {_cell(rr['reduced'])}, "
        + "multiplicities: " + ", ".join(f"{f}:{m}" for f, m in rr["multiplicities"].items()),
        f"- simple roots: {', '.join(rr['simple'])}; chamber element c = {_md_matrix(rr['chamber_element'])}",
        f"- chamber identities k^c = k^a, p^c = a: {_cell(p['chamber']['identities'])}",
        "",
        "| representative | in N(p) | orbit dim | principal | even | p^s = 0 | g0- = g2+ | l/u | noticed "
        "| perp | Levi | agree |",
        "|---|---|---|---|---|---|---|---|---|---|---|---|",
    ]
    for r in p["representatives"]:
        cells = [r["label"], r["in_Np"], r["orbit_dim"], r["principal"], r["even"], r["minus1_centralizer"],
                 r["minus1_grading"], r["minus1_even"], r["noticed"], r["perp_identity"], r["levi_instance"],
                 r["criteria_agree"]]
        lines.append("| " + " | ".join(_cell(c) for c in cells) + " |")
    lines.append("")
    for r in p["representatives"]:
        if r["witness"] is not None:
            lines.append(f"- {r['label']}: semisimple witness in p^s: {_md_matrix(r['witness'])}")
    t = p["theorems"]
    lines.append(
        "- principal checks: p^s = 0: {}, grading equality: {}, l/u equality: {}".format(
            _cell(t["theorem_null_p"]), _cell(t["theorem_equality"]), _cell(t["theorem_derived"])
        )
    )
    lines.append(f"- perp identity on random elements of p: {_cell(t['random_perp_identity'])}")
    if p["diagonal_reduction"] is not None:
        for case in p["diagonal_reduction"]["cases"]:
            lines.append(
                f"- diagonal reduction ({case['label']}): minus1 {_cell(case['minus1'])}, distinguished in the "
                f"factor {_cell(case['distinguished'])} (dim g0 = {case['dim_g0']}, dim g2 = {case['dim_g2']})"
            )
    lines.append("")
    lines.extend(_md_cayley(p["cayley"]))
    if p["failures"]:
        lines.append("")
        lines.append("Failures:")
        lines.extend(f"- {f}" for f in p["failures"])
    lines.append("")
    return lines


def _md_cayley(c: dict) -> list[str]:
    if not c["available"]:
        return [f"Cayley / compactness ({c['convention']}): {c['reason']}"]
    lines = [f"Cayley / compactness ({c['convention']}, real form {c['real_form']}):", ""]
    for r in c["representatives"]:
        if r["status"] != "ok":
            lines.append(f"- {r['label']}: {r['status']}")
            continue
        rt = r["real_triple"]
        lines.append(
            f"- {r['label']}: scaling {r['scaling']}, e' = {_md_matrix(rt['e'])}, h' = {_md_matrix(rt['h'])}, "
            f"f' = {_md_matrix(rt['f'])}; dim z = {r['z_dim']}, compact: {_cell(r['compact'])}, "
            f"minus1: {_cell(r['minus1'])}, round trip: {_cell(r['round_trip'])}"
        )
    return lines


def render_markdown(report: dict) -> str:
    cfg = report["config"]
    lines = [
        f"# symcheck {report['version']}",
        "",
        f"seed {cfg['seed']}, samples {cfg['samples']}, convention {cfg['convention']}",
        "",
    ]
    for p in report["pairs"]:
        lines.extend(_md_pair(p))
    lines.append(f"Overall: {'PASS' if report['passed'] else 'FAIL'}")
    return "\n".join(lines) + "\n"


def render_element_markdown(report: dict) -> str:
    c = report["classification"]
    lines = [f"# element of {report['config']['pair']}", "", f"element: {_md_matrix(report['element'])}", ""]
    keys = ["in_Np", "orbit_dim", "principal", "even", "minus1_centralizer", "minus1_grading", "minus1_even",
            "noticed", "perp_identity", "levi_instance"]
    lines.extend(f"- {k}: {_cell(c[k])}" for k in keys)
    if c["note"]:
        lines.append(f"- note: {c['note']}")
    if "triple" in c:
        t = c["triple"]
        lines.append(f"- triple: e = {_md_matrix(t['e'])}, h = {_md_matrix(t['h'])}, f = {_md_matrix(t['f'])}")
    if c["witness"] is not None:
        lines.append(f"- semisimple witness in p^s: {_md_matrix(c['witness'])}")
    if "cayley" in report:
        k = report["cayley"]
        if not k["available"]:
            lines.append(f"- cayley: {k['reason']}")
        elif k["status"] != "ok":
            lines.append(f"- cayley: {k['status']}")
        else:
            lines.append(f"- cayley: compact {_cell(k['compact'])}, dim z = {k['z_dim']}")
    return "\n".join(lines) + "\n"
