"""Rendering of search rows, sieve reports and family tables.

CSV, JSON-lines and markdown all go through the same field builders below,
so the three formats never disagree.  Every number is an exact decimal int.
"""

from __future__ import annotations

import csv
import io
import json

from rigidpg.numth import factorize
from rigidpg.params import CandidateRow, enumerate_candidates
from rigidpg.sieve import (
    CaseReport,
    FamilyExclusion,
    SubgroupChoice,
    SubgroupOutcome,
    Verdict,
    family_exclude,
    sieve_case,
)

SEARCH_FIELDS = ["case", "s", "t", "alpha", "x", "v", "k", "lambda", "mu", "v_factored"]

SIEVE_FIELDS = [
    "case", "s", "t", "alpha", "v_factored", "N", "N_factored", "pi", "theta", "beta1",
    "Delta1", "d", "d_status", "branches", "subgroup_kill", "verdict",
]

FAMILY_FIELDS = [
    "n", "alpha", "s", "t", "v", "k", "lambda", "mu", "N", "pi", "theta", "beta1",
    "k1_plus", "k1_minus", "var_plus", "var_minus", "closed_form_match",
]

# pg(5,5,2) is realised by the Van Lint-Schrijver geometry
KNOWN_EXAMPLES = {(5, 5, 2): "Van Lint-Schrijver geometry (exists)"}


def search_record(case: int, row: CandidateRow) -> dict:
    p = row.pds
    return {
        "case": case, "s": row.s, "t": row.t, "alpha": row.alpha, "x": row.x,
        "v": p.v, "k": p.k, "lambda": p.lam, "mu": p.mu, "v_factored": row.v_factored.render(),
    }


def _branches_text(outcome: SubgroupOutcome) -> str:
    parts = []
    for b in outcome.branches:
        txt = f"{b.k1}:{b.status.value}"
        if b.var_value is not None:
            txt += f":Var={b.var_value}"
        parts.append(txt)
    return ";".join(parts)


def subgroup_record(case: int, report: CaseReport, sub: SubgroupChoice) -> dict:
    row = report.row
    o = report.per_subgroup[sub]
    r = o.reduction
    tech = o.technique
    return {
        "case": case, "s": row.s, "t": row.t, "alpha": row.alpha,
        "v_factored": row.v_factored.render(), "N": sub.order,
        "N_factored": sub.order_factored.render(), "pi": r.pi, "theta": r.theta,
        "beta1": r.beta1, "Delta1": r.Delta1, "d": r.discriminant, "d_status": o.t1_status.value,
        "branches": _branches_text(o), "subgroup_kill": tech.value if tech else "",
        "verdict": report.verdict.value,
    }


def case_record(case: int, report: CaseReport) -> dict:
    """Nested JSON form of a case report."""
    subs = []
    for sub, o in report.per_subgroup.items():
        r = o.reduction
        subs.append({
            "N": sub.order, "N_factored": sub.order_factored.render(), "label": sub.label(),
            "quotient_order": sub.quotient_order, "pi": r.pi, "theta": r.theta, "beta1": r.beta1,
            "Delta1": r.Delta1, "d": r.discriminant, "d_status": o.t1_status.value,
            "k1_candidates": list(r.k1_candidates),
            "branches": [
                {
                    "k1": b.k1, "status": b.status.value, "var": b.var_value,
                    "witness": list(b.divisibility_witness) if b.divisibility_witness else None,
                }
                for b in o.branches
            ],
            "kill": o.technique.value if o.technique else None,
        })
    rec = search_record(case, report.row)
    rec.update({"verdict": report.verdict.value, "subgroups": subs, "facts": list(report.structural_facts)})
    return rec


def family_record(fe: FamilyExclusion) -> dict:
    inst, red = fe.instance, fe.reduction
    g = inst.geometry
    return {
        "n": inst.n, "alpha": inst.alpha, "s": g.s, "t": g.t, "v": inst.pds.v, "k": inst.pds.k,
        "lambda": inst.pds.lam, "mu": inst.pds.mu, "N": red.subgroup.order, "pi": red.pi,
        "theta": red.theta, "beta1": red.beta1, "k1_plus": fe.k1_plus, "k1_minus": fe.k1_minus,
        "var_plus": fe.var_plus, "var_minus": fe.var_minus,
        "closed_form_match": "true" if fe.closed_form_match else "false",
    }


def to_csv(fields: list[str], records: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    w.writeheader()
    for r in records:
        w.writerow({k: r[k] for k in fields})
    return buf.getvalue()


def to_jsonl(records: list[dict]) -> str:
    return "".join(json.dumps(r, separators=(",", ":")) + "\n" for r in records)


def to_md_table(fields: list[str], records: list[dict]) -> str:
    lines = ["| " + " | ".join(fields) + " |", "|" + "---|" * len(fields)]
    for r in records:
        lines.append("| " + " | ".join(str(r[k]) for k in fields) + " |")
    return "\n".join(lines) + "\n"


def subgroup_line(sub: SubgroupChoice, o: SubgroupOutcome) -> str:
    r = o.reduction
    line = (
        f"|N|={sub.order}, pi={r.pi}, theta={r.theta}, beta1={r.beta1}, "
        f"d={r.discriminant}, {o.t1_status.value}"
    )
    if o.branches:
        bits = []
        for b in o.branches:
            bit = f"k1={b.k1} {b.status.value}"
            if b.divisibility_witness and b.status.dead:
                p, q = b.divisibility_witness
                bit += f" ({p - 1} does not divide {q})"
            if b.var_value is not None:
                bit += f" Var={b.var_value}"
            bits.append(bit)
        line += "; " + "; ".join(bits)
    elif not o.t1_status.dead:
        line += "; no admissible k1 root"
    if o.technique is not None:
        line += f", verdict={o.technique.value}"
    return line


def case_text(case: int, report: CaseReport) -> str:
    row = report.row
    p = row.pds
    out = [
        f"### Case {case}: {row.geometry.label()}",
        "",
        f"v={p.v}={row.v_factored.render()}, k={p.k}, lambda={p.lam}, mu={p.mu}",
        "",
    ]
    if not report.per_subgroup:
        out.append("- no admissible subgroup (v is a prime power)")
    for sub, o in report.per_subgroup.items():
        out.append(f"- {sub.label()} " + subgroup_line(sub, o))
    out.append("")
    out.append(f"verdict={report.verdict.value}")
    if report.structural_facts:
        out.append(f"facts: {'; '.join(report.structural_facts)}")
    return "\n".join(out) + "\n"


# -- the full reproduction document --------------------------------------------


def _pow_label(n: int) -> str:
    return factorize(n).render()


def build_report(alpha_min: int = 2, alpha_max: int = 1000, workers: int | None = None) -> str:
    rows = enumerate_candidates(alpha_min, alpha_max, workers=workers)
    # family members whose alpha = 2^n + 1 lies in the searched range
    n_max = max(2, (alpha_max - 1).bit_length() - 1)
    reports = [sieve_case(r) for r in rows]
    family = {}
    for n in range(2, n_max + 1):
        fe = family_exclude(n)
        family[fe.instance.geometry] = (n, fe)
    case_of = {r.geometry: i for i, r in enumerate(rows, 1)}

    doc = [f"# Rigid-type partial geometries with {alpha_min} <= alpha <= {alpha_max}", ""]

    doc += ["## Candidate parameter sets", ""]
    doc.append(to_md_table(SEARCH_FIELDS, [search_record(i, r) for i, r in enumerate(rows, 1)]))

    doc += ["## Excluded by T1 (sub-PDS discriminant)", ""]
    fields = ["case", "v", "k", "lambda", "mu", "N", "pi", "theta", "beta1", "d"]
    recs = []
    for i, rep in enumerate(reports, 1):
        if rep.verdict is not Verdict.ExcludedT1:
            continue
        for sub in rep.killing_subgroups:
            o = rep.per_subgroup[sub]
            r = o.reduction
            d = {"negative": "<0", "nonsquare": "nonsquare"}.get(o.t1_status.value, "no root")
            recs.append({
                "case": i, "v": rep.row.v_factored.render(), "k": rep.row.pds.k,
                "lambda": rep.row.pds.lam, "mu": rep.row.pds.mu, "N": sub.order_factored.render(),
                "pi": _pow_label(r.pi), "theta": r.theta, "beta1": r.beta1, "d": d,
            })
    doc.append(to_md_table(fields, recs))

    doc += ["## Excluded by T2 (local multipliers)", ""]
    fields = ["case", "v", "k", "lambda", "mu", "N", "pi", "theta", "beta1", "Delta1", "k1", "reason"]
    recs = []
    for i, rep in enumerate(reports, 1):
        if rep.verdict is not Verdict.ExcludedT2:
            continue
        for sub in rep.killing_subgroups:
            o = rep.per_subgroup[sub]
            r = o.reduction
            reasons = [
                f"{b.k1}: {b.divisibility_witness[0] - 1} does not divide {b.divisibility_witness[1]}"
                for b in o.branches
            ]
            recs.append({
                "case": i, "v": rep.row.v_factored.render(), "k": rep.row.pds.k,
                "lambda": rep.row.pds.lam, "mu": rep.row.pds.mu, "N": sub.order_factored.render(),
                "pi": _pow_label(r.pi), "theta": r.theta, "beta1": r.beta1,
                "Delta1": _pow_label(r.Delta1),
                "k1": " or ".join(str(b.k1) for b in o.branches), "reason": "; ".join(reasons),
            })
    doc.append(to_md_table(fields, recs))

    doc += ["## Excluded by T3 (coset variance)", ""]
    fields = ["case", "v", "k", "lambda", "mu", "N", "pi", "theta", "beta1", "Delta1", "k1", "Var"]
    recs = []
    for i, rep in enumerate(reports, 1):
        if rep.verdict is not Verdict.ExcludedT3 or rep.row.geometry in family:
            continue
        for sub in rep.killing_subgroups:
            o = rep.per_subgroup[sub]
            r = o.reduction
            recs.append({
                "case": i, "v": rep.row.v_factored.render(), "k": rep.row.pds.k,
                "lambda": rep.row.pds.lam, "mu": rep.row.pds.mu, "N": sub.order_factored.render(),
                "pi": _pow_label(r.pi), "theta": r.theta, "beta1": r.beta1,
                "Delta1": _pow_label(r.Delta1),
                "k1": " or ".join(str(b.k1) for b in o.branches),
                "Var": " / ".join(str(b.var_value) for b in o.branches),
            })
    doc.append(to_md_table(fields, recs))

    doc += [
        "### The family alpha = 2^n + 1",
        "",
        "pg(a^2+a-1, a^3-a-1, a) with a = 2^n + 1, using |N| = 2^(2n+4).",
        "Both Var values are compared with their closed-form products.",
        "",
    ]
    fam_recs = []
    for geom, (n, fe) in sorted(family.items(), key=lambda kv: kv[1][0]):
        rec = family_record(fe)
        rec["case"] = case_of.get(geom, "")
        fam_recs.append(rec)
    doc.append(to_md_table(["case"] + FAMILY_FIELDS, fam_recs))

    doc += ["## Open cases", ""]
    open_recs = []
    notes = []
    for i, rep in enumerate(reports, 1):
        if rep.verdict is not Verdict.Open:
            continue
        key = (rep.row.s, rep.row.t, rep.row.alpha)
        if key in KNOWN_EXAMPLES:
            notes.append(f"Case {i} ({rep.row.geometry.label()}): {KNOWN_EXAMPLES[key]}.")
            continue
        rec = search_record(i, rep.row)
        facts = list(rep.structural_facts) or ["no admissible subgroup (v is a prime power)"]
        if rep.row.pds.v % 2 == 0:
            facts.append("D contains no involution")
        rec["facts"] = "; ".join(facts)
        open_recs.append(rec)
    doc.append(to_md_table(SEARCH_FIELDS + ["facts"], open_recs))
    doc += notes + [""]

    survivors = [rep.row for rep in reports if rep.verdict is Verdict.Open]
    doc += ["## Survivors", ""]
    doc.append(
        "A rigid-type pg with "
        f"{alpha_min} <= alpha <= {alpha_max} has one of the parameter sets: "
        + ", ".join(f"{r.geometry.label()} (v={r.pds.v})" for r in survivors)
        + "."
    )
    small = [r.pds.v for r in survivors if r.pds.v < 10**6]
    doc.append("")
    doc.append("Point counts below 1000000: " + ", ".join(map(str, small)) + ".")
    return "\n".join(doc) + "\n"
