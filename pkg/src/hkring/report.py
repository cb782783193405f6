"""Report assembly and rendering.

Reports are plain dicts with a fixed key order so that identical inputs
and options produce byte-identical JSON and text output.  All exact data
is serialized losslessly: rationals as "p/q" strings, polynomials in
canonical term order, index subsets 1-based to match generator names
x1..xm.
"""

from __future__ import annotations

import json

from . import __version__
from .arrangement import (
    Arrangement,
    Datum,
    SmoothnessReport,
    arrangement_from_datum,
    certify_smooth,
    minimal_empty_subsets,
    vertices_detailed,
)
from .datumio import datum_to_obj, jrat
from .groebner import Budget, GroebnerBasis, groebner_basis, quotient_dimension
from .polynomials import MonomialOrder, Poly
from .presentations import (
    CohomPresentation,
    KPresentation,
    RankSummary,
    VerificationReport,
    cohomology_presentation,
    ktheory_presentation,
    ranks_and_betti,
    run_verification,
)


def meta_block(command: str, order: MonomialOrder, seed: int, budget: Budget, zz: bool) -> dict:
    return {
        "tool": "hkring",
        "version": __version__,
        "command": command,
        "order": order.value,
        "seed": seed,
        "budget": budget.max_pairs,
        "zz": zz,
    }


def _subset_1based(subset) -> list[int]:
    return [i + 1 for i in subset]


def validation_block(d: Datum) -> dict:
    split = d.is_split()
    report = certify_smooth(d)
    return {
        "split": split,
        "smooth": report.smooth,
        "verdict": report.verdict if split else "Violation",
        "violations": [
            {"subset": _subset_1based(v.subset), "kind": v.kind} for v in report.violations
        ],
    }


def is_valid(block: dict) -> bool:
    return bool(block["split"] and block["smooth"])


def arrangement_block(d: Datum) -> dict:
    arr = arrangement_from_datum(d)
    verts = vertices_detailed(arr)
    return {
        "hyperplanes": [
            {
                "index": i + 1,
                "normal": list(h.normal),
                "constant": jrat(h.constant),
            }
            for i, h in enumerate(arr.hyperplanes)
        ],
        "minimal_empty_subsets": [_subset_1based(s) for s in minimal_empty_subsets(arr)],
        "vertices": [
            {"point": [jrat(c) for c in v.point], "on": _subset_1based(v.on)} for v in verts
        ],
        "vertex_count": len(verts),
    }


def _render_polys(polys, order) -> list[str]:
    return [p.render(order) for p in polys]


def cohomology_block(cp: CohomPresentation, gb: GroebnerBasis) -> dict:
    order = cp.ideal.order
    dim = quotient_dimension(gb)
    return {
        "generators": [f"x{j + 1}" for j in range(cp.datum.m)],
        "monomial_relations": _render_polys(
            [Poly(cp.datum.m, {mm: 1}) for mm in cp.monomial_relations], order
        ),
        "linear_relations": _render_polys(cp.linear_relations, order),
        "groebner_basis": _render_polys(gb.basis, order),
        "quotient_dimension": dim,
    }


def ktheory_block(kp: KPresentation, gb: GroebnerBasis) -> dict:
    order = kp.ideal.order
    dim = quotient_dimension(gb)
    return {
        "generators": [f"x{j + 1}" for j in range(kp.datum.m)],
        "u_set": [list(u) for u in kp.u_set],
        "closure_certified": kp.closure_certified,
        "monomial_relations": _render_polys(
            [Poly(kp.datum.m, {mm: 1}) for mm in kp.monomial_relations], order
        ),
        "ku_relations": _render_polys(kp.ku_relations, order),
        "groebner_basis": _render_polys(gb.basis, order),
        "quotient_dimension": dim,
    }


def ranks_block(summary: RankSummary) -> dict:
    return {
        "betti": list(summary.betti_with_odd_zeros),
        "betti_even": list(summary.betti),
        "cohom_rank": summary.cohom_rank,
        "k_rank": summary.k_rank,
        "vertex_count": summary.vertex_count,
    }


def verification_block(rep: VerificationReport) -> dict:
    out = {
        "rank_cohomology": rep.rank_cohomology,
        "rank_ktheory": rep.rank_ktheory,
        "vertex_count": rep.vertex_count,
        "hilbert": list(rep.hilbert),
        "initial_forms": [
            {
                "u": list(c.u),
                "sign": c.sign,
                "skipped": c.skipped,
                "ok": c.ok,
            }
            for c in rep.initial_form_checks
        ],
        "u_stability": rep.u_stability,
        "checks": {k: bool(v) for k, v in rep.checks.items()},
        "all_ok": rep.all_ok,
    }
    if rep.zz_summary is not None:
        out["zz_module"] = rep.zz_summary
    return out


def render_json(report: dict) -> str:
    return json.dumps(report, indent=2) + "\n"


def _text_lines(obj, indent: int, out: list[str]) -> None:
    pad = "  " * indent
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v:
                out.append(f"{pad}{k}:")
                _text_lines(v, indent + 1, out)
            else:
                out.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)):
                out.append(f"{pad}-")
                _text_lines(v, indent + 1, out)
            else:
                out.append(f"{pad}- {_scalar(v)}")
    else:
        out.append(f"{pad}{_scalar(obj)}")


def _scalar(v) -> str:
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, list):
        return "[]"
    if isinstance(v, dict):
        return "{}"
    return str(v)


def render_text(report: dict) -> str:
    lines: list[str] = []
    for section, body in report.items():
        lines.append(f"== {section}")
        if isinstance(body, (dict, list)):
            _text_lines(body, 1, lines)
        else:
            lines.append(f"  {_scalar(body)}")
    return "\n".join(lines) + "\n"


def build_report(
    d: Datum,
    command: str,
    which: str = "both",
    order: MonomialOrder = MonomialOrder.GREVLEX,
    seed: int = 0,
    budget: Budget | None = None,
    extra_us: tuple = (),
    verify: bool = False,
    zz: bool = False,
    with_arrangement: bool = True,
    with_presentations: bool = False,
) -> tuple[dict, int]:
    """Assemble a full report; returns (report, exit_code).

    Exit codes follow the CLI contract: 0 success, 2 validation failure,
    3 resource budget exceeded (with a partial report).
    """
    from .groebner import DEFAULT_BUDGET, ResourceBudgetExceeded

    budget = budget or DEFAULT_BUDGET
    report: dict = {
        "meta": meta_block(command, order, seed, budget, zz),
        "input": datum_to_obj(d),
    }
    vblock = validation_block(d)
    report["validation"] = vblock
    if not is_valid(vblock):
        return report, 2
    if with_arrangement:
        report["arrangement"] = arrangement_block(d)
    if not with_presentations:
        return report, 0
    # extra u vectors enrich the presentation's generating u-set; they are
    # the remedy when the default basis u-set under-generates the ideal
    u_set = None
    if extra_us:
        from .presentations import standard_u_set

        u_set = standard_u_set(d.n) + tuple(tuple(int(e) for e in u) for u in extra_us)
    try:
        presentations: dict = {}
        if which in ("cohomology", "both"):
            cp = cohomology_presentation(d, order)
            presentations["cohomology"] = cohomology_block(cp, groebner_basis(cp.ideal, budget))
        if which in ("ktheory", "both"):
            kp = ktheory_presentation(d, u_set=u_set, order=order, budget=budget)
            presentations["ktheory"] = ktheory_block(kp, kp.gb)
        report["presentations"] = presentations
        report["ranks"] = ranks_block(ranks_and_betti(d, order, budget, u_set=u_set))
        if verify:
            rep = run_verification(
                d, order=order, budget=budget, seed=seed, extra_us=extra_us, zz=zz,
                u_set=u_set,
            )
            report["verification"] = verification_block(rep)
    except ResourceBudgetExceeded as e:
        report["error"] = {"type": "ResourceBudgetExceeded", "message": str(e)}
        return report, 3
    return report, 0
