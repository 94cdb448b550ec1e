"""Command line interface.

Exit codes: 0 pass / sat / found, 1 fail / unsat / none, 2 incomplete
(budget), 3 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .embedder import (FOUND, NONE, RotationConstraint, compat_constraints, constrained_embed, euler_genus,
                       min_genus, trace_faces, weak_constraints)
from .embedder import EXACT as GENUS_EXACT
from .graph import Graph, Graph6Error, read_graph6_file, write_graph6
from .scheme import DrawingScheme, RotationSystem
from .solver import SAT, UNSAT, certificate_problem, min_iocr, solve_sphere, solve_torus

EXIT_OK, EXIT_FAIL, EXIT_INCOMPLETE, EXIT_USAGE = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _load_graphs(path: str | None) -> list[Graph]:
    if path is None:
        raise UsageError("--graph6 is required")
    try:
        graphs = read_graph6_file(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    except Graph6Error as exc:
        raise UsageError(f"{path}: {exc}") from exc
    if not graphs:
        raise UsageError(f"{path} contains no graphs")
    return graphs


def _load_scheme(path: str) -> DrawingScheme:
    try:
        return DrawingScheme.from_json(Path(path).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    except (ValueError, KeyError) as exc:
        raise UsageError(f"{path} is not a valid scheme document: {exc}") from exc


def embedding_document(g: Graph, rot: RotationSystem) -> dict:
    faces = trace_faces(g, rot)
    return {"graph6": write_graph6(g), "rotations": rot.to_json(),
            "faces": [[list(d) for d in f] for f in faces.faces], "genus": euler_genus(g, rot)}


# --------------------------------------------------------------------------


def cmd_solve(args) -> int:
    graphs = _load_graphs(args.graph6)
    if args.certificate and len(graphs) != 1:
        raise UsageError("--certificate needs a file with exactly one graph")
    results = []
    code = EXIT_OK
    for g in graphs:
        if args.min_iocr:
            res = min_iocr(g, args.surface, budget=args.budget_work, seed=args.seed)
            rec = {"graph6": write_graph6(g), "surface": args.surface, "min_iocr": res.value,
                   "exact": res.exact}
            if args.certificate:
                Path(args.certificate).write_text(res.scheme.to_json())
            code = max(code, EXIT_OK if res.exact else EXIT_INCOMPLETE)
            results.append(rec)
            continue
        if args.surface == "sphere":
            res = solve_sphere(g)
        else:
            res = solve_torus(g, budget=args.budget_branches, workers=args.workers)
        stats = {k: v for k, v in res.stats.items() if k != "time"}
        rec = {"graph6": write_graph6(g), "surface": args.surface, "status": res.status, "stats": stats}
        if res.status == SAT and args.certificate:
            Path(args.certificate).write_text(res.certificate.to_json())
        code = max(code, {SAT: EXIT_OK, UNSAT: EXIT_FAIL}.get(res.status, EXIT_INCOMPLETE))
        results.append(rec)
    payload = results[0] if len(results) == 1 else {"results": results}
    lines = []
    for r in results:
        val = f"min_iocr={r['min_iocr']} ({'exact' if r['exact'] else 'upper bound'})" if "min_iocr" in r \
            else r["status"]
        lines.append(f"{r['graph6']}\t{r['surface']}\t{val}")
    _emit(args, payload, "\n".join(lines))
    return code


def _constraints_for(args, s: DrawingScheme) -> dict[int, RotationConstraint]:
    if args.mode == "compat":
        return compat_constraints(s)
    if args.mode == "weak":
        return weak_constraints(s)
    raise UsageError("--mode must be compat or weak")


def cmd_genus(args) -> int:
    if args.constraints:
        s = _load_scheme(args.constraints)
        g = s.graph
        if args.graph6:
            other = _load_graphs(args.graph6)
            if len(other) != 1 or other[0] != g:
                raise UsageError("--graph6 graph differs from the certificate's graph")
        cons = _constraints_for(args, s)
        targets = [args.target] if args.target is not None else range(0, g.m + 1)
        res = None
        for t in targets:
            res = constrained_embed(g, cons, t, budget=args.budget_nodes)
            if res.status != NONE:
                break
        payload = {"graph6": write_graph6(g), "mode": args.mode, "status": res.status,
                   "constrained_vertices": sorted(cons)}
        if res.status == FOUND:
            payload["genus"] = res.genus
            if args.embedding:
                Path(args.embedding).write_text(json.dumps(embedding_document(g, res.rotation), sort_keys=True))
        text = f"{args.mode}: {res.status}" + (f", genus {res.genus}" if res.status == FOUND else "")
        _emit(args, payload, text)
        return {FOUND: EXIT_OK, NONE: EXIT_FAIL}.get(res.status, EXIT_INCOMPLETE)

    graphs = _load_graphs(args.graph6)
    if args.embedding and len(graphs) != 1:
        raise UsageError("--embedding needs a file with exactly one graph")
    results, code = [], EXIT_OK
    for g in graphs:
        res = min_genus(g, budget=args.budget_nodes)
        rec = {"graph6": write_graph6(g), "genus": res.genus, "status": res.status,
               "lower_bound": res.lower_bound}
        if res.status == GENUS_EXACT:
            if args.target is not None:
                rec["within_target"] = res.genus <= args.target
                code = max(code, EXIT_OK if rec["within_target"] else EXIT_FAIL)
            if args.embedding:
                Path(args.embedding).write_text(json.dumps(embedding_document(g, res.rotation), sort_keys=True))
        else:
            # a lower bound above the target still decides the question
            if args.target is not None and res.lower_bound > args.target:
                rec["within_target"] = False
                code = max(code, EXIT_FAIL)
            else:
                code = max(code, EXIT_INCOMPLETE)
        results.append(rec)
    if len(results) == 1:
        r = results[0]
        payload = {k: v for k, v in r.items() if k in ("genus", "within_target")} if r["genus"] is not None else r
    else:
        payload = {"results": results}
    text = "\n".join(f"{r['graph6']}\tgenus {r['genus'] if r['genus'] is not None else '>= %d' % r['lower_bound']}"
                     for r in results)
    _emit(args, payload, text)
    return code


def cmd_min_iocr(args) -> int:
    args.min_iocr = True
    args.certificate = args.witness
    return cmd_solve(args)


def cmd_verify(args) -> int:
    from .experiments import EXPERIMENTS, FAIL, INCOMPLETE, PASS
    from .fixtures import FixtureError
    try:
        preflight()
    except (FixtureError, AssertionError) as exc:
        print(f"fixture preflight failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    names = sorted(EXPERIMENTS) if args.experiment == "all" else [args.experiment]
    reports = []
    for name in names:
        rep = EXPERIMENTS[name](timings=args.timings)
        reports.append(rep.to_dict())
        if not args.json:
            print(f"{name}: {rep.verdict}  {json.dumps(rep.summary, sort_keys=True)}")
    if args.report:
        Path(args.report).write_text(json.dumps(reports if len(reports) > 1 else reports[0], sort_keys=True, indent=1))
    if args.json:
        print(json.dumps(reports if len(reports) > 1 else reports[0], sort_keys=True))
    verdicts = {r["verdict"] for r in reports}
    if FAIL in verdicts:
        return EXIT_FAIL
    if INCOMPLETE in verdicts:
        return EXIT_INCOMPLETE
    assert verdicts <= {PASS}
    return EXIT_OK


def cmd_moves_replay(args) -> int:
    from .moves import MoveRecord, MoveRefused, replay
    s = _load_scheme(args.scheme)
    try:
        lines = Path(args.moves).read_text().splitlines()
        records = [MoveRecord.from_json(line) for line in lines if line.strip()]
    except OSError as exc:
        raise UsageError(f"cannot read {args.moves}: {exc}") from exc
    except (ValueError, KeyError) as exc:
        raise UsageError(f"{args.moves}: bad move record: {exc}") from exc
    try:
        out = replay(s, records)
    except (MoveRefused, ValueError) as exc:
        _emit(args, {"status": "refused", "error": str(exc)}, f"refused: {exc}")
        return EXIT_FAIL
    if args.out:
        Path(args.out).write_text(out.to_json())
    payload = {"status": "ok", "moves": len(records), "graph6": write_graph6(out.graph)}
    code = EXIT_OK
    if args.expect:
        match = out == _load_scheme(args.expect)
        payload["matches_expected"] = match
        code = EXIT_OK if match else EXIT_FAIL
    _emit(args, payload, f"replayed {len(records)} moves" +
          (f", matches expected: {payload['matches_expected']}" if args.expect else ""))
    return code


def preflight() -> dict:
    """Hash-check every fixture, then check the K3,6 plus triangle genus and the golden certificates."""
    from .fixtures import HASHES, fig4, fixture_bytes, golden_certificates
    for name in HASHES:
        fixture_bytes(name)
    g, rot = fig4()
    genus = euler_genus(g, rot)
    if genus != 1:
        raise AssertionError(f"K3,6 plus triangle rotation has genus {genus}, expected 1")
    golden = {}
    for name, s in golden_certificates().items():
        golden[name] = certificate_problem(s.graph, s)
        if golden[name] is not None:
            raise AssertionError(f"golden certificate {name}: {golden[name]}")
    return {"fixtures": sorted(HASHES), "fig4_genus": genus, "golden": sorted(golden)}


def cmd_fixtures_check(args) -> int:
    from .fixtures import FixtureError
    try:
        info = preflight()
    except (FixtureError, AssertionError) as exc:
        _emit(args, {"status": "fail", "error": str(exc)}, f"fail: {exc}")
        return EXIT_FAIL
    _emit(args, {"status": "ok", **info}, f"ok: {len(info['fixtures'])} fixtures, K3,6 plus triangle genus 1, "
                                          f"{len(info['golden'])} golden certificates")
    return EXIT_OK


# --------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="htorus", description="Independently even drawings on the sphere and torus.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def common(sp):
        sp.add_argument("--json", action="store_true", help="machine-readable JSON on stdout")

    sp = sub.add_parser("solve", help="decide whether an independently even drawing exists")
    sp.add_argument("--surface", choices=("sphere", "torus"), required=True)
    sp.add_argument("--graph6", required=True)
    sp.add_argument("--certificate", help="write the drawing scheme here")
    sp.add_argument("--budget-branches", type=int, default=None, help="cap on homology branches (torus)")
    sp.add_argument("--budget-work", type=int, default=2_000_000, help="exact-search work cap for --min-iocr")
    sp.add_argument("--min-iocr", action="store_true", help="minimise odd independent pairs instead")
    sp.add_argument("--workers", type=int, default=None)
    sp.add_argument("--seed", type=int, default=0)
    common(sp)
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("genus", help="orientable genus, optionally constrained by a certificate")
    sp.add_argument("--graph6")
    sp.add_argument("--target", type=int)
    sp.add_argument("--constraints", help="scheme JSON whose even vertices constrain the rotation")
    sp.add_argument("--mode", choices=("compat", "weak"), default="compat")
    sp.add_argument("--budget-nodes", type=int, default=None)
    sp.add_argument("--embedding", help="write the embedding (rotations, faces, genus) here")
    common(sp)
    sp.set_defaults(func=cmd_genus)

    sp = sub.add_parser("min-iocr", help="fewest odd independent pairs on a surface")
    sp.add_argument("--surface", choices=("sphere", "torus"), default="torus")
    sp.add_argument("--graph6", required=True)
    sp.add_argument("--witness", help="write the best scheme found here")
    sp.add_argument("--budget-work", type=int, default=2_000_000)
    sp.add_argument("--seed", type=int, default=0)
    common(sp)
    sp.set_defaults(func=cmd_min_iocr, workers=None, budget_branches=None)

    sp = sub.add_parser("verify", help="run an experiment (E1..E7) or all of them")
    sp.add_argument("experiment", choices=[f"E{i}" for i in range(1, 8)] + ["all"])
    sp.add_argument("--report", help="write the full JSON report here")
    sp.add_argument("--timings", action="store_true", help="include wall-clock timings (not reproducible)")
    common(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("moves-replay", help="replay a JSON-lines move log on a scheme")
    sp.add_argument("--scheme", required=True)
    sp.add_argument("--moves", required=True)
    sp.add_argument("--out")
    sp.add_argument("--expect", help="scheme JSON the replay must reproduce")
    common(sp)
    sp.set_defaults(func=cmd_moves_replay)

    sp = sub.add_parser("fixtures-check", help="verify fixture hashes, the K3,6 plus triangle genus and golden certificates")
    common(sp)
    sp.set_defaults(func=cmd_fixtures_check)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            parser.print_help(sys.stderr)
            return EXIT_USAGE
        return args.func(args)
    except UsageError as exc:
        print(f"htorus: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
