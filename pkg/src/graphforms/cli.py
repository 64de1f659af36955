"""Command-line interface: invariant reports, theorem check suites, solvers.

Exit codes: 0 all good, 1 a theorem check failed, 2 input or resource error.
The check suite's JSON output is byte-deterministic for a fixed seed; wall
clock timings go to stderr only.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time

import numpy as np

from . import checks, corpus, divisors, dynamics, geometry, graphs, morse, orbital, spectral
from .complexes import Chain, Form, stokes_pairing, whitney_complex
from .errors import (
    BudgetExceededError,
    GraphFormatError,
    NotApplicableError,
    ResonantTimeError,
    SizeLimitError,
)

SCHEMA_VERSION = 1


def _load_graph(args) -> tuple[graphs.Graph, str]:
    if args.graph and args.generate:
        raise GraphFormatError("give either --graph or --generate, not both")
    if args.graph:
        with open(args.graph, "r", encoding="utf-8") as fh:
            text = fh.read()
        if text.lstrip().startswith("{"):
            return graphs.from_json_text(text), f"file:{args.graph}"
        return graphs.from_edge_list_text(text), f"file:{args.graph}"
    if args.generate:
        spec = args.generate
        kind, _, argstr = spec.partition(":")
        params = []
        if argstr:
            for tok in argstr.split(","):
                tok = tok.strip()
                params.append(float(tok) if ("." in tok or "e" in tok.lower()) else int(tok))
        return graphs.generate(kind, *params), f"generate:{spec}"
    raise GraphFormatError("a graph is required: --graph FILE or --generate KIND[:ARGS]")


def _graph_hash(g: graphs.Graph) -> str:
    return hashlib.sha256(graphs.to_edge_list_text(g).encode()).hexdigest()[:12]


def _write_output(obj, path, default_stream=True):
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    elif default_stream:
        sys.stdout.write(text)


def _frac_str(x) -> str:
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)


# --- info -----------------------------------------------------------------------

def cmd_info(args) -> int:
    g, source = _load_graph(args)
    t0 = time.time()
    s = whitney_complex(g, budget=args.budget_simplices)
    chi = sum((-1) ** k * v for k, v in enumerate(s.dims))
    report = {
        "schema": SCHEMA_VERSION,
        "graph": {"source": source, "sha256_12": _graph_hash(g), "n": g.n, "m": g.m},
        "invariants": {},
        "verdicts": [],
    }
    inv = report["invariants"]
    inv["f_vector"] = list(s.dims)
    inv["euler_characteristic"] = chi
    met = graphs.metrics(g)
    inv["components"] = met.components
    inv["diameter"] = met.diameter
    inv["mean_distance"] = met.mean_distance
    inv["clustering"] = met.clustering
    inv["edge_density"] = met.edge_density
    sect = geometry.sectional_and_ricci(g)
    defined = [x for x in sect.scalar if x is not None]
    inv["mean_scalar_curvature"] = (
        checks.fmt(float(sum(defined, 0) / len(defined))) if defined else None
    )
    dim = geometry.inductive_dimension(g)
    inv["dimension"] = _frac_str(dim.graph)
    curv = geometry.curvature(g)
    inv["curvature_sum"] = _frac_str(curv.total())
    inv["curvature"] = [_frac_str(k) for k in curv.values]
    betti_exact = spectral.betti_rank_oracle(s)
    inv["betti_rank_oracle"] = list(betti_exact)
    tc = spectral.spanning_tree_count(g)
    inv["spanning_trees"] = tc.count
    inv["rooted_forests"] = spectral.rooted_forest_count(g)
    if graphs.is_connected(g) and g.n >= 1:
        inv["jacobian_order"] = divisors.jacobian_order(g)

    verdicts = report["verdicts"]

    def verdict(vid, lhs, rhs, ok, tolerance=0.0):
        verdicts.append(
            {"id": vid, "lhs": lhs, "rhs": rhs, "pass": bool(ok), "tolerance": tolerance,
             "elapsed_s": round(time.time() - t0, 3)}
        )

    verdict("gauss_bonnet", _frac_str(curv.total()), chi, curv.total() == chi)
    ep = sum((-1) ** k * b for k, b in enumerate(betti_exact))
    verdict("euler_poincare", ep, chi, ep == chi)
    try:
        bundle = spectral.dirac_and_laplacian(s)
        hodge = spectral.betti_hodge(bundle)[0]
        verdict("hodge", list(hodge), list(betti_exact), tuple(hodge) == tuple(betti_exact))
        st = spectral.mckean_singer_supertrace(bundle, 1.0)
        verdict("mckean_singer_t1", checks.fmt(st), chi, abs(st - chi) < 1e-8, 1e-8)
    except SizeLimitError:
        verdicts.append({"id": "hodge", "skipped": "operator too large"})
    if g.n <= 8 and graphs.is_connected(g) and g.n >= 1:
        brute = spectral.spanning_trees_exhaustive(g)
        verdict("kirchhoff", tc.count, brute, tc.count == brute == round(tc.damped_estimate))
    if g.n <= 6:
        brute_f = spectral.rooted_forests_exhaustive(g)
        verdict("chebotarev_shamis", inv["rooted_forests"], brute_f, inv["rooted_forests"] == brute_f)
    import random as _random

    rng = _random.Random(args.seed)
    stokes_rounds = 0
    stokes_ok = True
    for k in range(s.top_dim):
        if not s.simplices[k + 1]:
            continue
        chain = Chain(k + 1, tuple(rng.randint(-3, 3) for _ in s.simplices[k + 1]))
        form = Form(k, tuple(rng.randint(-3, 3) for _ in s.simplices[k]))
        lhs, rhs = stokes_pairing(s, chain, form)
        stokes_rounds += 1
        stokes_ok = stokes_ok and lhs == rhs
    if stokes_rounds:
        verdict("stokes", stokes_rounds, stokes_rounds if stokes_ok else -1, stokes_ok)
    _write_output(report, args.json)
    return 0 if all(v.get("pass", True) for v in verdicts) else 1


# --- check ----------------------------------------------------------------------

def cmd_check(args) -> int:
    seed = args.seed
    entries = (
        corpus.build_default_corpus(seed)
        if args.corpus == "default"
        else corpus.build_quick_corpus(seed)
    )
    cache = checks.CorpusCache(entries)
    only = args.only.split(",") if args.only else None
    orb_kwargs = {}
    if args.corpus == "quick":
        orb_kwargs = dict(
            n_max=300, collatz_p_max=300, quad_p_max=200, pair_p_min=100, pair_p_max=140, a_cap=20
        )
    t0 = time.time()
    results = []
    wanted = set(only) if only else set(checks.ALL_CHECK_IDS)
    unknown = wanted - set(checks.ALL_CHECK_IDS)
    if unknown:
        raise GraphFormatError(f"unknown check ids: {sorted(unknown)}")
    for check_id in checks.ALL_CHECK_IDS:
        if check_id not in wanted:
            continue
        t_item = time.time()
        res = checks.run_suite(cache, seed=seed, only=[check_id], orbital_kwargs=orb_kwargs)[0]
        results.append(res)
        print(
            f"{check_id}: {'PASS' if res['pass'] else 'FAIL'} ({time.time() - t_item:.1f}s)",
            file=sys.stderr,
        )
    all_pass = all(r["pass"] for r in results)
    report = {
        "schema": SCHEMA_VERSION,
        "seed": seed,
        "corpus": {"kind": args.corpus, "size": len(entries)},
        "results": results,
        "all_pass": all_pass,
    }
    _write_output(report, args.json, default_stream=args.json is None)
    if args.csv:
        lines = ["check,pass"] + [f"{r['id']},{int(r['pass'])}" for r in results]
        with open(args.csv, "w", encoding="utf-8") as fh:
            fh.write("\n".join(lines) + "\n")
    print(f"total: {time.time() - t0:.1f}s, all_pass={all_pass}", file=sys.stderr)
    return 0 if all_pass else 1


# --- solve ----------------------------------------------------------------------

def _parse_floats(text):
    return [float(x) for x in text.split(",") if x.strip()]


def _initial_state(args, bundle, degree):
    if args.initial:
        vals = _parse_floats(args.initial)
        if len(vals) != bundle.dims[degree]:
            raise GraphFormatError(
                f"--initial needs {bundle.dims[degree]} values for degree {degree}"
            )
        return np.array(vals)
    vec = np.zeros(bundle.dims[degree])
    if bundle.dims[degree]:
        vec[args.vertex % bundle.dims[degree]] = 1.0
    return vec


def cmd_solve(args) -> int:
    g, source = _load_graph(args)
    s = whitney_complex(g, budget=args.budget_simplices)
    bundle = spectral.dirac_and_laplacian(s)
    times = _parse_floats(args.times) if args.times else [0.0, 1.0, 10.0]
    out = {
        "schema": SCHEMA_VERSION,
        "graph": {"source": source, "sha256_12": _graph_hash(g)},
        "equation": args.equation,
    }
    csv_text = None
    if args.equation == "heat":
        state = dynamics.FieldState(args.degree, _initial_state(args, bundle, args.degree))
        snaps = [dynamics.heat_evolve(bundle, state, t).values for t in times]
        csv_text = dynamics.trajectory_csv(times, snaps)
        out["mass_by_time"] = [checks.fmt(float(np.sum(v))) for v in snaps]
        out["mass_drift"] = checks.fmt(
            max(abs(float(np.sum(v)) - float(np.sum(state.values))) for v in snaps)
        )
        out["pass"] = out["mass_drift"] < args.tolerance
    elif args.equation == "wave":
        u0 = bundle.embed(0, _initial_state(args, bundle, 0))
        v0 = np.zeros(bundle.size)
        if args.velocity:
            vals = _parse_floats(args.velocity)
            if len(vals) != bundle.size:
                raise GraphFormatError(f"--velocity needs {bundle.size} values")
            v0 = np.array(vals)
        snaps = []
        e0 = dynamics.wave_energy(bundle, *dynamics.wave_evolve(bundle, u0, v0, 0.0))
        drift = 0.0
        for t in times:
            ut, vt = dynamics.wave_evolve(bundle, u0, v0, t)
            snaps.append(ut)
            drift = max(drift, abs(dynamics.wave_energy(bundle, ut, vt) - e0))
        csv_text = dynamics.trajectory_csv(times, snaps)
        out["energy_drift"] = checks.fmt(drift)
        out["pass"] = drift < args.tolerance
    elif args.equation == "poisson":
        src = _initial_state(args, bundle, args.degree)
        src = src - src.mean() if args.degree == 0 and args.initial is None else src
        sol = dynamics.poisson_solve(bundle, args.degree, src)
        out["solution"] = [checks.fmt(x) for x in sol["solution"]]
        out["residual"] = checks.fmt(sol["residual"])
        out["removed_norm"] = checks.fmt(float(np.linalg.norm(sol["removed"])))
        out["pass"] = sol["residual"] < args.tolerance
    elif args.equation == "maxwell":
        if bundle.dims[1] if len(bundle.dims) > 1 else 0:
            src = _initial_state(args, bundle, 1) if args.initial else np.random.default_rng(
                args.seed
            ).normal(size=bundle.dims[1])
        else:
            raise GraphFormatError("maxwell needs a graph with edges")
        res = dynamics.maxwell_solve(bundle, src)
        out["potential"] = [checks.fmt(x) for x in res["potential"]]
        out["field"] = [checks.fmt(x) for x in res["field"]]
        out["residual"] = checks.fmt(res["residual"])
        out["coulomb_residual"] = checks.fmt(res["coulomb_residual"])
        out["dF_exact_zero"] = res["dF_exact_zero"]
        out["pass"] = res["residual"] < args.tolerance and res["dF_exact_zero"]
    elif args.equation == "gravity":
        src = _initial_state(args, bundle, 0)
        if args.initial is None:
            src = src - 1.0 / max(g.n, 1)
        res = dynamics.gravity_solve(bundle, src)
        out["potential"] = [checks.fmt(x) for x in res["potential"]]
        out["field"] = [checks.fmt(x) for x in res["field"]]
        out["residual"] = checks.fmt(res["residual"])
        out["pass"] = res["residual"] < args.tolerance
    elif args.equation == "shoot":
        try:
            res = dynamics.hopf_rynov_shoot(bundle, args.source_vertex, args.target_vertex, args.time)
        except ResonantTimeError as exc:
            print(
                f"error: {exc}; try --time {args.time + 0.0317:.4f}",
                file=sys.stderr,
            )
            return 2
        out["velocity"] = [checks.fmt(x) for x in res["velocity"]]
        out["replay_error"] = checks.fmt(res["replay_error"])
        out["pass"] = res["replay_error"] < args.tolerance
    elif args.equation == "deform":
        state = dynamics.toda_lax_deform(bundle, args.t_end, args.dt)
        csv_text = "time,spectral_drift,diag_norm,offdiag_norm\n" + "\n".join(
            f"{t:.12g},{d:.12g},{dn:.12g},{on:.12g}"
            for t, d, dn, on in zip(
                state.times, state.spectral_drifts, state.diag_norms, state.offdiag_norms
            )
        ) + "\n"
        out["max_spectral_drift"] = checks.fmt(max(state.spectral_drifts))
        out["diag_norm_final"] = checks.fmt(state.diag_norms[-1])
        out["pass"] = max(state.spectral_drifts) < args.tolerance
    else:
        raise GraphFormatError(f"unknown equation {args.equation!r}")
    if csv_text and args.csv:
        with open(args.csv, "w", encoding="utf-8") as fh:
            fh.write(csv_text)
    _write_output(out, args.json)
    return 0 if out.get("pass", True) else 1


# --- parser ---------------------------------------------------------------------

def _add_graph_args(p):
    p.add_argument("--graph", help="edge-list or JSON graph file")
    p.add_argument("--generate", help="generator KIND[:ARGS], e.g. cycle:5")
    p.add_argument("--budget-simplices", type=int, default=10**6)
    p.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="graphforms",
        description="Geometric and spectral theorem checks on finite simple graphs",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p_info = sub.add_parser("info", help="invariant report for one graph")
    _add_graph_args(p_info)
    p_info.add_argument("--json", help="write the report to this path")

    p_check = sub.add_parser("check", help="run theorem suites over a corpus")
    p_check.add_argument("--corpus", choices=("default", "quick"), default="default")
    p_check.add_argument("--seed", type=int, default=0)
    p_check.add_argument("--only", help="comma-separated check ids")
    p_check.add_argument("--json", help="write the JSON suite report here")
    p_check.add_argument("--csv", help="write a check,pass table here")
    p_check.add_argument("--tolerance", type=float, default=None, help="unused; kept for interface stability")

    p_solve = sub.add_parser("solve", help="evolve or solve an equation on a graph")
    _add_graph_args(p_solve)
    p_solve.add_argument(
        "--equation",
        required=True,
        choices=("heat", "wave", "poisson", "maxwell", "gravity", "shoot", "deform"),
    )
    p_solve.add_argument("--degree", type=int, default=0)
    p_solve.add_argument("--vertex", type=int, default=0)
    p_solve.add_argument("--initial", help="comma-separated values")
    p_solve.add_argument("--velocity", help="comma-separated values (wave)")
    p_solve.add_argument("--times", help="comma-separated times")
    p_solve.add_argument("--time", type=float, default=1.0, help="shooting time")
    p_solve.add_argument("--source-vertex", type=int, default=0)
    p_solve.add_argument("--target-vertex", type=int, default=1)
    p_solve.add_argument("--t-end", type=float, default=10.0)
    p_solve.add_argument("--dt", type=float, default=1e-3)
    p_solve.add_argument("--tolerance", type=float, default=1e-6)
    p_solve.add_argument("--json", help="write JSON output here")
    p_solve.add_argument("--csv", help="write CSV time series here")

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        if args.command == "info":
            return cmd_info(args)
        if args.command == "check":
            return cmd_check(args)
        if args.command == "solve":
            return cmd_solve(args)
        raise GraphFormatError(f"unknown command {args.command!r}")
    except (GraphFormatError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (BudgetExceededError, SizeLimitError, NotApplicableError) as exc:
        print(f"resource error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
