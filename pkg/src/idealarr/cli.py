"""Command-line front end.

Exit codes: 0 success, 1 a verification failed, 2 usage or parse error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

from .derivations import RankLimitError, build_basis_for_ideal, rank_limit
from .lattice import CharPoly, characteristic_polynomial, point_count_charpoly
from .localheight import decomposition_pair_count, verify_local_global
from .matengine import run_induction
from .partition import componentwise_exponents, height_distribution, ideal_exponents
from .rootposet import Ideal, enumerate_ideals, ideal_closure, ideal_from_coefficients, truncation_ideal
from .rootsys import RootSystem, RootSystemError, RootSystemType, build_root_system


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    rtype: str
    generators: list | None = None
    truncate: int | None = None
    all_ideals: bool = False
    fmt: str = "summary"
    jobs: int = 1
    rank_limit: int | None = None


@lru_cache(maxsize=None)
def _system(rtype: str) -> RootSystem:
    return build_root_system(RootSystemType.parse(rtype))


def _ideals(cfg: RunConfig, rs: RootSystem, require_single: bool) -> list[Ideal]:
    specs = sum([cfg.generators is not None, cfg.truncate is not None, cfg.all_ideals])
    if specs > 1:
        raise UsageError("give at most one of --generators, --truncate, --all-ideals")
    if cfg.all_ideals:
        if require_single:
            raise UsageError("this command needs a single ideal (--generators or --truncate)")
        return list(enumerate_ideals(rs))
    if cfg.generators is not None:
        return [ideal_from_coefficients(rs, cfg.generators)]
    if cfg.truncate is not None:
        try:
            return [truncation_ideal(rs, cfg.truncate)]
        except ValueError as e:
            raise UsageError(str(e)) from None
    if require_single:
        raise UsageError("an ideal is required: --generators or --truncate")
    return list(enumerate_ideals(rs))


# -- per-ideal workers (module level so they pickle for --jobs) ---------------


def _exponents_record(rtype: str, mask_members: tuple[int, ...], lattice: bool) -> dict:
    rs = _system(rtype)
    ideal = ideal_closure(rs, mask_members)
    exps = list(ideal_exponents(rs, ideal))
    merged = list(componentwise_exponents(rs, ideal))
    rec = {
        "ideal": ideal.to_json(),
        "height_distribution": list(height_distribution(rs, ideal).counts),
        "exponents": merged,
        "pass": merged == exps,
    }
    if lattice:
        chi = characteristic_polynomial(rs, ideal)
        rec["charpoly"] = list(chi.coeffs)
        rec["pass"] = rec["pass"] and chi == CharPoly.from_roots(merged)
    return rec


def _main_record(rtype: str, members: tuple[int, ...]) -> dict:
    rs = _system(rtype)
    ideal = ideal_closure(rs, members)
    cert = run_induction(rs, ideal)
    chi = characteristic_polynomial(rs, ideal)
    ok = cert.passed and chi == CharPoly.from_roots(cert.exponents)
    return {
        "ideal": ideal.to_json(),
        "size": len(ideal),
        "exponents": cert.exponents,
        "charpoly": list(chi.coeffs),
        "certificate": cert.to_json(),
        "pass": ok,
    }


def _charpoly_record(rtype: str, members: tuple[int, ...], point_count: bool) -> dict:
    rs = _system(rtype)
    ideal = ideal_closure(rs, members)
    exps = list(ideal_exponents(rs, ideal))
    chi = characteristic_polynomial(rs, ideal)
    ok = chi == CharPoly.from_roots(exps)
    rec = {"ideal": ideal.to_json(), "size": len(ideal), "exponents": exps, "charpoly": list(chi.coeffs)}
    if point_count:
        pc = point_count_charpoly(rs, ideal)
        rec["point_count_charpoly"] = list(pc.coeffs)
        ok = ok and pc == chi
    rec["pass"] = ok
    return rec


def _saito_record(rtype: str, members: tuple[int, ...], limit: int) -> dict:
    rs = _system(rtype)
    ideal = ideal_closure(rs, members)
    build = build_basis_for_ideal(rs, ideal, limit=limit)
    exps = list(ideal_exponents(rs, ideal))
    ok = build.saito and build.degrees == exps and all(L.saito for L in build.layers)
    return {"ideal": ideal.to_json(), "size": len(ideal), "degrees": build.degrees, "exponents": exps, "pass": ok}


def _run_many(func, args_list: list[tuple], jobs: int) -> list[dict]:
    if jobs <= 1 or len(args_list) < 2:
        return [func(*a) for a in args_list]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(func, *a) for a in args_list]
        return [f.result() for f in futures]


# -- output -------------------------------------------------------------------


def _emit(records: list[dict], summary: dict, fmt: str, out, csv_row=None) -> None:
    if fmt == "json":
        for r in records:
            out.write(json.dumps(r, sort_keys=True) + "\n")
        out.write(json.dumps({"summary": summary}, sort_keys=True) + "\n")
    elif fmt == "csv":
        if csv_row is None:
            raise UsageError("csv output is not available for this command")
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        for i, r in enumerate(records):
            header, row = csv_row(r)
            if i == 0:
                w.writerow(header)
            w.writerow(row)
        out.write(buf.getvalue())
    out.write(_summary_line(summary) + "\n" if fmt == "summary" else "")


def _summary_line(summary: dict) -> str:
    return " ".join(f"{k}={v}" for k, v in summary.items())


def _csv_row_factory(rtype: str, rank: int):
    def row(r: dict):
        exps = r.get("exponents", [])
        chi = r.get("charpoly", [])
        header = ["type", "ideal_id", "size"] + [f"exp_{i + 1}" for i in range(rank)] + [
            f"chi_{k}" for k in range(rank + 1)
        ]
        chi = list(chi) + [0] * (rank + 1 - len(chi))
        return header, [rtype, r["ideal_id"], r.get("size", len(r["ideal"]["members"]))] + list(exps) + chi

    return row


# -- commands -----------------------------------------------------------------


def cmd_roots(cfg: RunConfig, out) -> int:
    rs = _system(cfg.rtype)
    data = rs.to_json()
    if rs.rtype.alias_note:
        data["note"] = rs.rtype.alias_note
    if cfg.fmt == "json":
        out.write(json.dumps(data, sort_keys=True) + "\n")
    else:
        for i, r in enumerate(rs.positive_roots):
            out.write(f"{i}\t{list(r.coeffs)}\theight={r.height}\n")
        out.write(
            _summary_line(
                {"type": str(rs.rtype), "rank": rs.rank, "positive_roots": rs.num_positive, "coxeter_number": rs.coxeter_number}
            )
            + "\n"
        )
    return 0


def cmd_ideals(cfg: RunConfig, out) -> int:
    rs = _system(cfg.rtype)
    ideals = _ideals(cfg, rs, require_single=False)
    records = []
    for i, ideal in enumerate(ideals):
        rec = {"ideal_id": i, "size": len(ideal), "ideal": ideal.to_json()}
        records.append(rec)
    summary = {"type": str(rs.rtype), "ideals": len(records)}
    if cfg.fmt == "csv":
        def row(r):
            return ["type", "ideal_id", "size", "members"], [
                str(rs.rtype), r["ideal_id"], r["size"], " ".join(map(str, r["ideal"]["members"]))
            ]
        _emit(records, summary, "csv", out, row)
    else:
        _emit(records, summary, cfg.fmt, out)
    return 0


def cmd_exponents(cfg: RunConfig, out, lattice: bool = False) -> int:
    rs = _system(cfg.rtype)
    ideals = _ideals(cfg, rs, require_single=False)
    args = [(str(rs.rtype), I.members, lattice) for I in ideals]
    records = _run_many(_exponents_record, args, cfg.jobs)
    for i, r in enumerate(records):
        r["ideal_id"] = i
    failures = sum(not r["pass"] for r in records)
    if cfg.fmt == "summary" and len(records) == 1:
        r = records[0]
        out.write(f"height_distribution={r['height_distribution']}\n")
        out.write(f"exponents={r['exponents']}\n")
        if lattice:
            out.write(f"charpoly={CharPoly(tuple(r['charpoly']))}\n")
    summary = {"type": str(rs.rtype), "ideals": len(records), "failures": failures}
    _emit(records, summary, cfg.fmt, out, _csv_row_factory(str(rs.rtype), rs.rank))
    return 1 if failures else 0


def cmd_charpoly(cfg: RunConfig, out, point_count: bool = False) -> int:
    rs = _system(cfg.rtype)
    ideals = _ideals(cfg, rs, require_single=False)
    args = [(str(rs.rtype), I.members, point_count) for I in ideals]
    records = _run_many(_charpoly_record, args, cfg.jobs)
    for i, r in enumerate(records):
        r["ideal_id"] = i
    failures = sum(not r["pass"] for r in records)
    if cfg.fmt == "summary" and len(records) == 1:
        out.write(f"charpoly={CharPoly(tuple(records[0]['charpoly']))}\n")
        out.write(f"roots={records[0]['exponents']}\n")
    summary = {"type": str(rs.rtype), "ideals": len(records), "failures": failures}
    _emit(records, summary, cfg.fmt, out, _csv_row_factory(str(rs.rtype), rs.rank))
    return 1 if failures else 0


def cmd_basis(cfg: RunConfig, out, emit_path: str | None, nu: str) -> int:
    rs = _system(cfg.rtype)
    (ideal,) = _ideals(cfg, rs, require_single=True)
    limit = cfg.rank_limit if cfg.rank_limit is not None else rank_limit()
    try:
        build = build_basis_for_ideal(rs, ideal, nu_policy=nu, limit=limit)
    except RankLimitError as e:
        raise UsageError(str(e)) from None
    exps = list(ideal_exponents(rs, ideal))
    ok = build.saito and build.degrees == exps
    if emit_path:
        with open(emit_path, "w", encoding="utf-8") as fh:
            json.dump(build.to_json(), fh, sort_keys=True)
    if cfg.fmt == "json":
        out.write(json.dumps(build.to_json(), sort_keys=True) + "\n")
    else:
        for t in build.basis:
            out.write(f"deg {t.degree}: {t}\n")
        out.write(_summary_line({"type": str(rs.rtype), "degrees": build.degrees, "saito": build.saito}) + "\n")
    return 0 if ok else 1


def cmd_verify(cfg: RunConfig, suite: str, out, point_count: bool = False) -> int:
    rs = _system(cfg.rtype)
    rtype = str(rs.rtype)
    if suite == "local-global":
        records = []
        for a in range(rs.num_positive):
            rep = verify_local_global(rs, a)
            pairs = decomposition_pair_count(rs, a)
            rec = rep.to_json()
            rec["root_id"] = a
            rec["pair_count"] = pairs
            rec["pass"] = rep.passed and pairs == rep.lhs
            records.append(rec)
        failures = sum(not r["pass"] for r in records)
        summary = {"suite": suite, "type": rtype, "roots": len(records), "failures": failures}
        _emit(records, summary, cfg.fmt, out)
        return 1 if failures else 0

    ideals = _ideals(cfg, rs, require_single=False)
    if suite == "main":
        records = _run_many(_main_record, [(rtype, I.members) for I in ideals], cfg.jobs)
    elif suite == "charpoly":
        records = _run_many(_charpoly_record, [(rtype, I.members, point_count) for I in ideals], cfg.jobs)
    elif suite == "saito":
        limit = cfg.rank_limit if cfg.rank_limit is not None else rank_limit()
        if rs.rank > limit:
            raise UsageError(
                f"{rtype} has rank {rs.rank} above the symbolic limit {limit}; "
                "raise it with --rank-limit or IDEALARR_RANK_LIMIT"
            )
        records = _run_many(_saito_record, [(rtype, I.members, limit) for I in ideals], cfg.jobs)
    else:
        raise UsageError(f"unknown verification suite {suite!r}")
    for i, r in enumerate(records):
        r["ideal_id"] = i
    failures = sum(not r["pass"] for r in records)
    summary = {"suite": suite, "type": rtype, "ideals": len(records), "failures": failures}
    _emit(records, summary, cfg.fmt, out, _csv_row_factory(rtype, rs.rank))
    return 1 if failures else 0


# -- argument parsing ---------------------------------------------------------


def _add_common(p: argparse.ArgumentParser, ideal: bool = True) -> None:
    p.add_argument("--type", required=True, dest="rtype", help="root system type, e.g. F4 or A2xA1")
    p.add_argument("--format", dest="fmt", choices=["json", "csv", "summary"], default="summary")
    if ideal:
        g = p.add_argument_group("ideal")
        g.add_argument("--generators", help='coefficient vectors, e.g. "[[1,1],[0,1]]"')
        g.add_argument("--truncate", type=int, help="first t roots in the canonical order")
        g.add_argument("--all-ideals", action="store_true")
        p.add_argument("--jobs", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="idealarr", description="Ideal subarrangements of Weyl arrangements")
    sub = parser.add_subparsers(dest="command", required=True)

    _add_common(sub.add_parser("roots", help="list the positive roots"), ideal=False)
    _add_common(sub.add_parser("ideals", help="enumerate ideals of the root poset"))
    p = sub.add_parser("exponents", help="height distribution and dual partition")
    _add_common(p)
    p.add_argument("--lattice-check", action="store_true", help="also compare with the characteristic polynomial")
    p = sub.add_parser("charpoly", help="characteristic polynomial via the intersection lattice")
    _add_common(p)
    p.add_argument("--point-count", action="store_true", help="cross-check by counting points over prime fields")
    p = sub.add_parser("basis", help="explicit free basis of the logarithmic derivation module")
    _add_common(p)
    p.add_argument("--emit-derivations", metavar="PATH")
    p.add_argument("--nu", choices=["first", "last"], default="first")
    p.add_argument("--rank-limit", type=int)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=["main", "charpoly", "local-global", "saito"])
    _add_common(p)
    p.add_argument("--point-count", action="store_true")
    p.add_argument("--rank-limit", type=int)
    return parser


def _config(args) -> RunConfig:
    generators = None
    if getattr(args, "generators", None) is not None:
        try:
            generators = json.loads(args.generators)
        except json.JSONDecodeError as e:
            raise UsageError(f"--generators is not valid JSON: {e}") from None
        if not isinstance(generators, list) or not all(isinstance(v, list) for v in generators):
            raise UsageError("--generators must be a list of coefficient vectors")
    return RunConfig(
        command=args.command,
        rtype=args.rtype,
        generators=generators,
        truncate=getattr(args, "truncate", None),
        all_ideals=getattr(args, "all_ideals", False),
        fmt=args.fmt,
        jobs=getattr(args, "jobs", 1),
        rank_limit=getattr(args, "rank_limit", None),
    )


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config(args)
        _system(cfg.rtype)
        if args.command == "roots":
            return cmd_roots(cfg, out)
        if args.command == "ideals":
            return cmd_ideals(cfg, out)
        if args.command == "exponents":
            return cmd_exponents(cfg, out, lattice=args.lattice_check)
        if args.command == "charpoly":
            return cmd_charpoly(cfg, out, point_count=args.point_count)
        if args.command == "basis":
            return cmd_basis(cfg, out, args.emit_derivations, args.nu)
        if args.command == "verify":
            return cmd_verify(cfg, args.suite, out, point_count=args.point_count)
    except (UsageError, RootSystemError, ValueError) as e:
        sys.stderr.write(f"idealarr: error: {e}\n")
        return 2
    return 2


if __name__ == "__main__":
    sys.exit(main())
