"""Command-line front end.

Exit codes: 0 success, 1 negative mathematical finding (not a PDS, axiom
violation, nothing found, closed-form mismatch), 2 usage or input error.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from dataclasses import dataclass
from pathlib import Path

from rigidpg import report
from rigidpg.oracle import (
    AxiomViolation,
    NotAPds,
    PdsCandidate,
    build_geometry,
    check_pg_axioms,
    check_rigid,
    cyclotomic_classes,
    find_cyclotomic_pds,
    format_pds_text,
    involution_free,
    parse_pds_text,
    partition_into_lines,
    verify_pds,
)
from rigidpg.params import CandidateRow, PdsParams, candidate_from_triple, enumerate_candidates
from rigidpg.sieve import family_exclude, sieve_case

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE = 0, 1, 2

SUBCOMMANDS = ("search", "sieve", "family", "verify", "cyclotomy", "geometry", "report")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    subcommand: str
    alpha_min: int = 2
    alpha_max: int = 1000
    n_max: int = 9
    format: str = "csv"
    input_path: Path | None = None
    limit: int | None = None
    mls_as_code: bool = False
    workers: int | None = None
    engine: str = "divisor"
    p: int | None = None
    f: int | None = None
    e: int | None = None
    target: PdsParams | None = None
    line_size: int | None = None
    write_pds: Path | None = None

    def __post_init__(self):
        if self.subcommand not in SUBCOMMANDS:
            raise UsageError(f"unknown subcommand {self.subcommand!r}")
        if self.alpha_min < 2 or self.alpha_min > self.alpha_max:
            raise UsageError(f"need 2 <= alpha-min <= alpha-max, got {self.alpha_min}, {self.alpha_max}")
        if self.format not in ("csv", "jsonl", "md"):
            raise UsageError(f"unknown format {self.format!r}")
        if self.limit is not None and self.limit < 1:
            raise UsageError("--limit must be positive")


def _target(text: str) -> PdsParams:
    try:
        v, k, lam, mu = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected v,k,lambda,mu, got {text!r}") from None
    return PdsParams(v, k, lam, mu)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rigidpg", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p, alpha=True, fmt=True):
        if alpha:
            p.add_argument("--alpha-min", type=int, default=2)
            p.add_argument("--alpha-max", type=int, default=1000)
            p.add_argument("--mls-as-code", action="store_true",
                           help="skip the Delta/(s+1) prime test for s <= 2*alpha, as the original script did")
            p.add_argument("--workers", type=int, default=None,
                           help="parallel workers (default: $RIGIDPG_THREADS or 1)")
            p.add_argument("--engine", choices=("divisor", "loop", "loop-loose"), default="divisor")
        if fmt:
            p.add_argument("--format", choices=("csv", "jsonl", "md"), default="csv")

    common(sub.add_parser("search", help="enumerate candidate parameter sets"))

    p = sub.add_parser("sieve", help="run the T1/T2/T3 sieve on candidates")
    common(p)
    p.add_argument("--input", type=Path, help="CSV from a previous search (default: search the alpha range)")

    p = sub.add_parser("family", help="exclusion table for alpha = 2^n + 1")
    p.add_argument("--n-max", type=int, default=9)
    common(p, alpha=False)

    p = sub.add_parser("verify", help="check a PDS file")
    p.add_argument("--input", type=Path, required=True)

    p = sub.add_parser("cyclotomy", help="search unions of cyclotomic classes for a PDS")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--f", type=int, required=True)
    p.add_argument("--e", type=int, required=True)
    p.add_argument("--target", type=_target, required=True, help="v,k,lambda,mu")
    p.add_argument("--limit", type=int, default=None)
    p.add_argument("--write-pds", type=Path, default=None, help="write the first union found as a PDS file")

    p = sub.add_parser("geometry", help="rebuild and check the line system of a PDS file")
    p.add_argument("--input", type=Path, required=True)
    p.add_argument("--line-size", type=int, default=None,
                   help="points per line (default: inferred from the PDS parameters)")

    p = sub.add_parser("report", help="markdown reproduction of all tables")
    p.add_argument("--alpha-min", type=int, default=2)
    p.add_argument("--alpha-max", type=int, default=1000)
    p.add_argument("--workers", type=int, default=None)
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    kw = {k: v for k, v in vars(ns).items() if v is not None}
    kw["input_path"] = kw.pop("input", None)
    return RunConfig(**kw)


def _rows_from_csv(path: Path) -> list[tuple[int, CandidateRow]]:
    try:
        text = path.read_text()
    except OSError as exc:
        raise UsageError(str(exc)) from None
    out = []
    reader = csv.DictReader(io.StringIO(text))
    missing = {"s", "t", "alpha"} - set(reader.fieldnames or ())
    if missing:
        raise UsageError(f"{path}: missing columns {sorted(missing)}")
    for n, rec in enumerate(reader, 1):
        try:
            s, t, a = int(rec["s"]), int(rec["t"]), int(rec["alpha"])
            case = int(rec["case"]) if rec.get("case") else n
            out.append((case, candidate_from_triple(s, t, a)))
        except (ValueError, TypeError) as exc:
            raise UsageError(f"{path}: row {n}: {exc}") from None
    return out


def _emit(fields, records, fmt, out) -> None:
    if fmt == "csv":
        out.write(report.to_csv(fields, records))
    elif fmt == "jsonl":
        out.write(report.to_jsonl(records))
    else:
        out.write(report.to_md_table(fields, records))


def run_search(cfg: RunConfig, out) -> int:
    rows = enumerate_candidates(
        cfg.alpha_min, cfg.alpha_max, engine=cfg.engine, mls_as_code=cfg.mls_as_code, workers=cfg.workers
    )
    _emit(report.SEARCH_FIELDS, [report.search_record(i, r) for i, r in enumerate(rows, 1)], cfg.format, out)
    return EXIT_OK


def run_sieve(cfg: RunConfig, out) -> int:
    if cfg.input_path is not None:
        cases = _rows_from_csv(cfg.input_path)
    else:
        rows = enumerate_candidates(
            cfg.alpha_min, cfg.alpha_max, engine=cfg.engine, mls_as_code=cfg.mls_as_code, workers=cfg.workers
        )
        cases = list(enumerate(rows, 1))
    reports = [(i, sieve_case(r)) for i, r in cases]
    if cfg.format == "csv":
        recs = [report.subgroup_record(i, rep, sub) for i, rep in reports for sub in rep.per_subgroup]
        # prime-power cases have no subgroup rows; keep a row so every case appears
        for i, rep in reports:
            if not rep.per_subgroup:
                rec = dict.fromkeys(report.SIEVE_FIELDS, "")
                rec.update({"case": i, "s": rep.row.s, "t": rep.row.t, "alpha": rep.row.alpha,
                            "v_factored": rep.row.v_factored.render(), "verdict": rep.verdict.value})
                recs.append(rec)
        recs.sort(key=lambda r: (r["case"], r["N"] if r["N"] != "" else 0))
        out.write(report.to_csv(report.SIEVE_FIELDS, recs))
    elif cfg.format == "jsonl":
        out.write(report.to_jsonl([report.case_record(i, rep) for i, rep in reports]))
    else:
        out.write("\n".join(report.case_text(i, rep) for i, rep in reports))
    return EXIT_OK


def run_family(cfg: RunConfig, out) -> int:
    if cfg.n_max < 2:
        raise UsageError(f"--n-max must be >= 2, got {cfg.n_max}")
    results = [family_exclude(n) for n in range(2, cfg.n_max + 1)]
    _emit(report.FAMILY_FIELDS, [report.family_record(fe) for fe in results], cfg.format, out)
    ok = all(fe.closed_form_match and fe.excluded for fe in results)
    return EXIT_OK if ok else EXIT_NEGATIVE


def _load_pds(path: Path) -> PdsCandidate:
    try:
        return parse_pds_text(path.read_text())
    except OSError as exc:
        raise UsageError(str(exc)) from None
    except ValueError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _checked(candidate: PdsCandidate):
    try:
        return verify_pds(candidate)
    except NotAPds:
        raise
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def run_verify(cfg: RunConfig, out) -> int:
    cand = _load_pds(cfg.input_path)
    try:
        check = _checked(cand)
    except NotAPds as exc:
        out.write(f"not a PDS: {exc}\n")
        return EXIT_NEGATIVE
    p = check.params
    out.write(
        f"({p.v},{p.k},{p.lam},{p.mu}) involution_free: {str(involution_free(cand)).lower()} "
        f"inverse_closed: {str(check.inverse_closed).lower()}\n"
    )
    return EXIT_OK


def run_cyclotomy(cfg: RunConfig, out) -> int:
    try:
        classes = cyclotomic_classes(cfg.p, cfg.f, cfg.e)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    found = find_cyclotomic_pds(classes, cfg.target)
    if cfg.limit is not None:
        found = found[: cfg.limit]
    F = classes.field
    out.write(f"# GF({F.p}^{F.f}) modulus={','.join(map(str, F.modulus))} primitive={F.primitive_element}\n")
    for idx in found:
        out.write(",".join(map(str, idx)) + "\n")
    if found and cfg.write_pds is not None:
        t = cfg.target
        comment = f"union of cyclotomic classes {found[0]} of GF({F.p}^{F.f}), e={cfg.e}; ({t.v},{t.k},{t.lam},{t.mu})"
        cfg.write_pds.write_text(format_pds_text(classes.union(found[0]), comment))
    return EXIT_OK if found else EXIT_NEGATIVE


def _line_sizes(p: PdsParams) -> list[int]:
    """s+1 for every (s, t, alpha) whose point-graph parameters equal p."""
    out = []
    for s in range(2, p.k + 1):
        if p.k % s:
            continue
        t = p.k // s - 1
        if t < 1 or p.mu % (t + 1):
            continue
        a = p.mu // (t + 1)
        if a >= 1 and s + t * (a - 1) - 1 == p.lam:
            out.append(s + 1)
    return out


def run_geometry(cfg: RunConfig, out) -> int:
    cand = _load_pds(cfg.input_path)
    try:
        check = _checked(cand)
    except NotAPds as exc:
        out.write(f"not a PDS: {exc}\n")
        return EXIT_NEGATIVE
    sizes = [cfg.line_size] if cfg.line_size else _line_sizes(check.params)
    for size in sizes:
        if size < 2 or cand.k % (size - 1):
            continue
        parts = partition_into_lines(cand, size, limit=1)
        if not parts:
            continue
        geom = build_geometry(cand, parts[0])
        try:
            m = check_pg_axioms(geom)
        except AxiomViolation as exc:
            out.write(f"axiom violation: {exc}\n")
            return EXIT_NEGATIVE
        proper = "proper" if m.proper else "not proper"
        rigid = "rigid" if check_rigid(geom) else "not rigid"
        out.write(f"{m.label()} {proper} {rigid} lines={len(geom.lines)}\n")
        return EXIT_OK
    out.write("no partition of D into lines found\n")
    return EXIT_NEGATIVE


def run_report(cfg: RunConfig, out) -> int:
    out.write(report.build_report(cfg.alpha_min, cfg.alpha_max, workers=cfg.workers))
    return EXIT_OK


RUNNERS = {
    "search": run_search,
    "sieve": run_sieve,
    "family": run_family,
    "verify": run_verify,
    "cyclotomy": run_cyclotomy,
    "geometry": run_geometry,
    "report": run_report,
}


def main(argv: list[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = config_from_args(ns)
        return RUNNERS[cfg.subcommand](cfg, out)
    except UsageError as exc:
        print(f"rigidpg {ns.subcommand}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
