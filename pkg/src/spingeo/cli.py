"""Command-line interface: classify, spinrep, genus, cech, index, selftest.

All subcommands emit either a human-readable report or JSON with a
versioned schema field; randomized checks take an explicit ``--seed`` so
identical invocations produce identical bytes.  Exit status 0 means every
check passed its contract, 1 means a check failed, and argparse reports
usage errors with status 2.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np
import sympy

from . import __version__, acceptance, cech, chern_weil, classification, index_lab, spinrep

SCHEMA = "spingeo-report/1"


def _emit(payload: dict, fmt: str, human_lines) -> None:
    if fmt == "json":
        payload = {"schema": SCHEMA, "version": __version__, **payload}
        print(json.dumps(payload, sort_keys=True, default=str))
    else:
        for line in human_lines:
            print(line)


def _cmd_classify(args) -> int:
    if args.complex is not None:
        t = classification.classify_complex(args.complex)
        payload = {"command": "classify", "complex_n": args.complex, "result": t.to_dict()}
        _emit(payload, args.format, [f"Cl^c_{args.complex} = {t}"])
        return 0
    if args.even:
        t = classification.even_subalgebra_type(args.p, args.q)
        payload = {"command": "classify", "p": args.p, "q": args.q, "even": True, "result": t.to_dict()}
        _emit(payload, args.format, [f"Cl^0({args.p},{args.q}) = {t}"])
        return 0
    t = classification.classify_real(args.p, args.q)
    payload = {"command": "classify", "p": args.p, "q": args.q, "result": t.to_dict()}
    _emit(payload, args.format, [f"Cl({args.p},{args.q}) = {t}"])
    return 0


def _cmd_spinrep(args) -> int:
    n = args.n
    results = {}
    ok = True
    if args.check in ("relations", "all"):
        sp = spinrep.SpinorSpace(n)
        worst = 0.0
        ident = np.eye(sp.dim)
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                anti = sp.c(i) @ sp.c(j) + sp.c(j) @ sp.c(i)
                worst = max(worst, float(np.max(np.abs(anti + 2.0 * (i == j) * ident))))
        results["relations_residual"] = worst
        ok &= worst <= 1e-12
    if args.check in ("chirality", "all"):
        sp = spinrep.SpinorSpace(n)
        pp, pm = spinrep.chirality_split(sp)
        residual = max(
            float(np.max(np.abs(pp @ pp - pp))),
            float(np.max(np.abs(pp @ pm))),
            float(np.max(np.abs(pp + pm - np.eye(sp.dim)))),
        )
        results["chirality_residual"] = residual
        results["half_spinor_dims"] = [int(round(np.trace(pp).real)), int(round(np.trace(pm).real))]
        ok &= residual <= 1e-12
    if args.check in ("berezin", "all"):
        rng = np.random.default_rng(args.seed)
        worst = 0.0
        for _ in range(args.trials):
            B = rng.normal(size=(n, n)) * 0.4
            lhs, rhs = spinrep.berezin_supertrace_exp(B - B.T)
            worst = max(worst, abs(lhs - rhs))
        results["berezin_residual"] = worst
        results["berezin_trials"] = args.trials
        ok &= worst <= 1e-10
    payload = {
        "command": "spinrep",
        "n": n,
        "check": args.check,
        "seed": args.seed,
        "tolerances": {"relations": 1e-12, "chirality": 1e-12, "berezin": 1e-10},
        "results": results,
        "passed": bool(ok),
    }
    lines = [f"spinrep n={n} check={args.check}: {'PASS' if ok else 'FAIL'}"] + [
        f"  {k} = {v}" for k, v in results.items()
    ]
    _emit(payload, args.format, lines)
    return 0 if ok else 1


def _load_model(args) -> chern_weil.CurvatureModel:
    if args.model_file:
        with open(args.model_file) as fh:
            return chern_weil.model_from_dict(json.load(fh))
    if args.model.startswith("product"):
        a = chern_weil.curvature_model("sphere2", args.radius)
        b = chern_weil.curvature_model("sphere2", args.radius)
        return chern_weil.product_model(a, b)
    return chern_weil.curvature_model(args.model, args.radius)


def _cmd_genus(args) -> int:
    try:
        model = _load_model(args)
    except (OSError, KeyError, ValueError) as exc:
        print(f"error: cannot load curvature model: {exc}", file=sys.stderr)
        return 2
    value = chern_weil.genus_eval(args.name, model.F)
    total = chern_weil.integrate_top(value, model)
    payload = {
        "command": "genus",
        "genus": args.name,
        "model": model.name,
        "radius": str(args.radius),
        "top_coefficient": str(value.top_coefficient()),
        "integral": str(total),
    }
    _emit(
        payload,
        args.format,
        [f"{args.name} on {model.name}: integral = {sympy.nsimplify(total)}"],
    )
    return 0


def _cmd_cech(args) -> int:
    if args.nerve in cech.BUILTIN_NERVES:
        nerve = cech.BUILTIN_NERVES[args.nerve]()
    else:
        try:
            with open(args.nerve) as fh:
                nerve = cech.nerve_from_dict(json.load(fh))
        except (OSError, KeyError, ValueError) as exc:
            print(f"error: cannot load nerve: {exc}", file=sys.stderr)
            return 2
    dims = {f"H{k}": cech.cohomology_dim(nerve, k) for k in range(3)}
    payload = {
        "command": "cech",
        "nerve": args.nerve,
        "patches": nerve.patches,
        "cohomology_dims": dims,
    }
    lines = [f"nerve {args.nerve}: patches={nerve.patches}"] + [
        f"  dim H^{k} = {dims[f'H{k}']}" for k in range(3)
    ]
    ok = True
    if args.w2:
        if args.lifts:
            try:
                with open(args.lifts) as fh:
                    data = json.load(fh)
                values = {tuple(sorted(s)): v for s, v in data}
            except (OSError, ValueError) as exc:
                print(f"error: cannot load lifts: {exc}", file=sys.stderr)
                return 2
        else:
            values = {}
        lifts = cech.Cochain(nerve, 1, values)
        report = cech.w2_and_spin_structures(lifts)
        payload["w2_trivial"] = report.w2_trivial
        payload["spin_structures"] = report.count
        payload["torsor_verified"] = report.torsor_verified
        lines.append(
            f"  w2 trivial: {report.w2_trivial}; spin structures: {report.count};"
            f" torsor verified: {report.torsor_verified}"
        )
        ok = report.w2_trivial is False or report.torsor_verified
    _emit(payload, args.format, lines)
    return 0 if ok else 1


def _parse_floats(text: str) -> list[float]:
    return [float(tok) for tok in text.split(",") if tok]


def _cmd_index(args) -> int:
    ts = _parse_floats(args.t)
    payload: dict = {"command": "index", "model": args.model, "t": ts}
    lines = []
    ok = True
    if args.model == "dlambda":
        res = index_lab.dlambda_index(args.lam, args.cutoff)
        payload.update(res)
        payload["lambda"] = args.lam
        payload["cutoff"] = args.cutoff
        lines.append(
            f"D_λ (λ={args.lam}, cutoff={args.cutoff}): kernel {res['kernel_dim']},"
            f" cokernel {res['cokernel_dim']}, index {res['index']}"
        )
        ok = res["index"] == 0
    elif args.model in ("sphere2", "torus2"):
        rows = []
        for t in ts:
            val = index_lab.hodge_supertrace(args.model, t, args.lmax)
            tau = index_lab.sphere2_tail_bound(t, args.lmax) if args.model == "sphere2" else 1e-12
            rows.append({"t": t, "supertrace": val, "tail_bound": tau})
            lines.append(f"{args.model} t={t} lmax={args.lmax}: str = {val!r} (tail ≤ {tau:.2e})")
        payload["lmax"] = args.lmax
        payload["rows"] = rows
        target = 2.0 if args.model == "sphere2" else 0.0
        ok = all(abs(r["supertrace"] - target) <= max(r["tail_bound"], 1e-12) for r in rows)
        payload["inferred_index"] = int(target)
    elif args.model == "torus_dirac":
        delta = tuple(_parse_floats(args.delta))
        model = index_lab.torus_dirac_model(delta, args.cutoff)
        rows = [{"t": t, "supertrace": model.supertrace(t)} for t in ts]
        payload["delta"] = list(delta)
        payload["cutoff"] = args.cutoff
        payload["rows"] = rows
        payload["kernel_dim"] = model.kernel_dim()
        for r in rows:
            lines.append(f"torus Dirac δ={delta} t={r['t']}: str = {r['supertrace']!r}")
        lines.append(f"kernel dimension: {model.kernel_dim()}")
        ok = all(abs(r["supertrace"]) <= 1e-12 for r in rows)
    else:
        print(f"error: unknown index model {args.model!r}", file=sys.stderr)
        return 2
    if args.format == "csv":
        print("t,supertrace")
        for r in payload.get("rows", []):
            print(f"{r['t']},{r['supertrace']!r}")
        return 0 if ok else 1
    payload["passed"] = bool(ok)
    _emit(payload, args.format, lines + [f"result: {'PASS' if ok else 'FAIL'}"])
    return 0 if ok else 1


def _cmd_selftest(args) -> int:
    results = acceptance.run_all(seed=args.seed)
    payload = {
        "command": "selftest",
        "seed": args.seed,
        "results": [
            {"criterion": r.name, "passed": r.passed, "detail": r.detail} for r in results
        ],
        "passed": all(r.passed for r in results),
    }
    lines = [
        f"[{'PASS' if r.passed else 'FAIL'}] {r.name}: {r.detail}" for r in results
    ] + [f"selftest: {'PASS' if payload['passed'] else 'FAIL'} (seed {args.seed})"]
    _emit(payload, args.format, lines)
    return 0 if payload["passed"] else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="spingeo", description=__doc__)
    parser.add_argument("--version", action="version", version=f"spingeo {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="isomorphism type of Cl(p,q) or Cl^c_n")
    p.add_argument("p", type=int, nargs="?", default=0)
    p.add_argument("q", type=int, nargs="?", default=0)
    p.add_argument("--complex", type=int, default=None, metavar="N")
    p.add_argument("--even", action="store_true", help="classify the even subalgebra")
    p.add_argument("--format", choices=("human", "json"), default="human")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("spinrep", help="spinor representation checks")
    p.add_argument("n", type=int)
    p.add_argument("--check", choices=("relations", "chirality", "berezin", "all"), default="all")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=5)
    p.add_argument("--format", choices=("human", "json"), default="human")
    p.set_defaults(func=_cmd_spinrep)

    p = sub.add_parser("genus", help="evaluate a genus on a curvature model")
    p.add_argument("--name", default="euler",
                   choices=("euler", "ahat", "lgenus", "pontryagin", "chern", "todd", "chern_char"))
    p.add_argument("--model", default="sphere2", help="sphere2|torus2|sphere4|product")
    p.add_argument("--model-file", default=None, help="JSON curvature model file")
    p.add_argument("--radius", default="1", help="radius parameter (rational ok)")
    p.add_argument("--format", choices=("human", "json"), default="human")
    p.set_defaults(func=_cmd_genus)

    p = sub.add_parser("cech", help="Čech cohomology and spin structures")
    p.add_argument("--nerve", default="circle", help="circle|sphere|torus or a JSON file")
    p.add_argument("--w2", action="store_true", help="enumerate spin structures")
    p.add_argument("--lifts", default=None, help="JSON file of lift signs [[simplex, ±1], ...]")
    p.add_argument("--format", choices=("human", "json"), default="human")
    p.set_defaults(func=_cmd_cech)

    p = sub.add_parser("index", help="spectral index-lab runs")
    p.add_argument("--model", default="sphere2", help="dlambda|sphere2|torus2|torus_dirac")
    p.add_argument("--lambda", dest="lam", type=float, default=0.5)
    p.add_argument("--delta", default="0,0", help="spin structure offsets for torus_dirac")
    p.add_argument("--t", default="0.1,0.5,1,2", help="comma-separated times")
    p.add_argument("--lmax", type=int, default=40)
    p.add_argument("--cutoff", type=int, default=12)
    p.add_argument("--format", choices=("human", "json", "csv"), default="human")
    p.set_defaults(func=_cmd_index)

    p = sub.add_parser("selftest", help="run the full acceptance battery")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("human", "json"), default="human")
    p.set_defaults(func=_cmd_selftest)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
