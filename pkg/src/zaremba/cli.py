"""Command-line front end: ``zaremba <command> [--config FILE] [--out DIR] [--seed N] [--svg]``.

Every command prints a JSON report (sorted keys, defaults materialized under
"config") and, with ``--out``, also writes ``<command>.json``, a CSV table and
optionally an SVG chart.  Exit codes: 0 pass, 2 assertion failure,
3 inconclusive, 4 bad input.
"""

import argparse
import ast
import copy
import csv
import io
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import atoms, exponents, fields, geometry, greens, harmonic, solver
from .errors import InconclusiveError, SolverError, ZarembaError

EXIT_PASS, EXIT_FAIL, EXIT_INCONCLUSIVE, EXIT_INPUT = 0, 2, 3, 4


class BadInput(ZarembaError):
    pass


# config plumbing

DEFAULTS = {
    "verify-rellich": {
        "function": "poly:0,0,1",
        "field": "e2",
        "domain": {"breakpoints": [[0.0, 0.0]]},
        "R": [1.0, 4.0, 16.0],
        "tol": 1e-8,
        "flux_threshold": 0.01,
    },
    "counterexample-scan": {
        "p": [1.0, 1.5, 1.9, 2.0],
        "cutoffs": [1e-2, 1e-3, 1e-4, 1e-5, 1e-6],
        "cauchy_rtol": 1e-3,
        "increment_rtol": 0.1,
    },
    "solve": {
        "domain": {"opening": "3*pi/8"},
        "R": 2.0,
        "mesh": {"levels": 11, "corner_levels": 9, "panel_order": 8, "panels_per_level": 1},
        "data": {"f_N": "poly:0,3,1", "f_D": "poly:0,3,1", "arc": "poly:0,3,1"},
        "exact": "poly:0,3,1",
        "probes": 50,
        "tol": 1e-6,
    },
    "exponents": {"M": 0.0, "delta": None, "sweep": []},
    "greens-check": {
        "pairs": 1000,
        "tol": 1e-12,
        "atom": {"center": 2.0, "rho": 1.0, "shape": "haar"},
        "decay_factors": [2.0 ** k for k in range(1, 10)],
        "min_delta": 0.45,
        "min_r2": 0.98,
        "holder": {"z": [1.0, 1.0], "zeta": [0.0, 0.0], "distances": [2.0 ** -k for k in range(12, 31, 2)]},
    },
    "measure-check": {
        "domain": {"breakpoints": [[0.0, 0.0]]},
        "epsilon": [-0.5, 0.0, 0.5, 0.9],
        "centers": [0.0, 1.0, 8.0],
        "r_min": 1e-3,
        "r_max": 1e3,
    },
    "atoms-check": {
        "center": 2.0,
        "rho": 1.0,
        "shape": "haar",
        "epsilon": 0.0,
        "levels": 44,
        "decay_blocks": [2, 8],
        "max_ratio": 0.9,
        "integral_tol": 1e-12,
    },
}


def _number(v):
    return harmonic.parse_real(v) if isinstance(v, str) else float(v)


REPLACED = ("domain", "atom", "holder")


def _merge(base, override):
    """Defaults updated by the override; unknown keys are rejected, domains replaced whole."""
    out = copy.deepcopy(base)
    for k, v in override.items():
        if k not in out:
            raise BadInput(f"unknown config key {k!r}")
        nested = isinstance(out[k], dict) and isinstance(v, dict) and k not in REPLACED
        out[k] = _merge(out[k], v) if nested else copy.deepcopy(v)
    return out


def read_config(path):
    """The override document in a JSON config file ({} when no file is given)."""
    if path is None:
        return {}
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise BadInput(f"cannot read config {path}: {exc}") from exc
    if not isinstance(doc, dict):
        raise BadInput("config must be a JSON object")
    return doc


def _domain(doc):
    if not isinstance(doc, dict):
        raise BadInput("domain must be a JSON object")
    if "opening" in doc:
        return geometry.Sector(_number(doc["opening"]))
    if doc.get("sawtooth") is not None:
        return geometry.GraphDomain.sawtooth(_number(doc["sawtooth"]), _number(doc.get("width", 1.0)))
    return geometry.domain_from_json(doc)


def _field(spec):
    """'e2', 'signdefinite:M,eps', 'mixed:M,eps' or {"lambda", "epsilon"}."""
    if isinstance(spec, dict):
        return fields.HolomorphicField.from_json(spec), None
    kind, _, arg = str(spec).partition(":")
    if kind == "e2" and not arg:
        return fields.HolomorphicField(0.5 * math.pi, 0.0), None
    if kind in ("signdefinite", "mixed") and arg:
        M, eps = (_number(a) for a in arg.split(","))
        build = fields.build_field_signdefinite if kind == "signdefinite" else fields.build_field_mixed
        cert = build(M, eps)
        return cert.field, cert
    raise BadInput(f"unknown field {spec!r}")


class ExpressionFunction:
    """u(x1, x2) from an arithmetic expression; gradient by central differences.

    Meant for deliberately non-harmonic inputs to the identity checks.
    """

    _names = {"pi": math.pi, "sqrt": np.sqrt, "exp": np.exp, "log": np.log,
              "sin": np.sin, "cos": np.cos, "abs": np.abs}
    _binops = {ast.Add: np.add, ast.Sub: np.subtract, ast.Mult: np.multiply,
               ast.Div: np.divide, ast.Pow: np.power}

    def __init__(self, text, h=1e-6):
        self.text, self.h = text, h
        try:
            self._tree = ast.parse(text, mode="eval")
        except SyntaxError as exc:
            raise BadInput(f"cannot parse expression {text!r}") from exc
        self._ev(self._tree.body, {"x1": 0.0, "x2": 0.0})

    def _ev(self, node, env):
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
            return node.value
        if isinstance(node, ast.Name) and node.id in env:
            return env[node.id]
        if isinstance(node, ast.Name) and node.id in self._names:
            return self._names[node.id]
        if isinstance(node, ast.BinOp) and type(node.op) in self._binops:
            return self._binops[type(node.op)](self._ev(node.left, env), self._ev(node.right, env))
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
            return -self._ev(node.operand, env)
        if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and node.func.id in self._names:
            return self._names[node.func.id](*(self._ev(a, env) for a in node.args))
        raise BadInput(f"unsupported expression element in {self.text!r}")

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        return np.asarray(self._ev(self._tree.body, {"x1": z.real, "x2": z.imag}), dtype=float) + 0.0 * z.real

    def grad(self, z):
        z = np.asarray(z, dtype=complex)
        h = self.h
        gx = (self(z + h) - self(z - h)) / (2 * h)
        gy = (self(z + 1j * h) - self(z - 1j * h)) / (2 * h)
        return np.stack([gx, gy], axis=-1)

    def cderiv(self, z):
        g = self.grad(z)
        return g[..., 0] - 1j * g[..., 1]


def _function(spec):
    if isinstance(spec, dict):
        if "expression" in spec:
            return ExpressionFunction(str(spec["expression"]))
        raise BadInput(f"unknown function spec {spec!r}")
    return harmonic.catalog(str(spec))


# output

def _clean(obj):
    """JSON-safe copy: tuples to lists, numpy scalars to Python, non-finite floats to strings."""
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.integer, int)):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        v = float(obj)
        return v if math.isfinite(v) else repr(v)
    return obj


def _csv(header, rows):
    buf = io.StringIO()
    out = csv.writer(buf, lineterminator="\n")
    out.writerow(header)
    for row in rows:
        out.writerow([repr(float(v)) if isinstance(v, (float, np.floating)) else v for v in row])
    return buf.getvalue()


def svg_chart(series, xlabel, ylabel, logx=False, logy=False, width=480, height=320):
    """Minimal SVG line chart; ``series`` maps a label to (x, y) arrays."""
    tx = (lambda v: np.log10(v)) if logx else (lambda v: np.asarray(v, dtype=float))
    ty = (lambda v: np.log10(v)) if logy else (lambda v: np.asarray(v, dtype=float))
    pts = {k: (tx(np.asarray(x, dtype=float)), ty(np.asarray(y, dtype=float))) for k, (x, y) in series.items()}
    allx = np.concatenate([p[0] for p in pts.values()])
    ally = np.concatenate([p[1] for p in pts.values()])
    ok = np.isfinite(allx) & np.isfinite(ally)
    x0, x1 = allx[ok].min(), allx[ok].max()
    y0, y1 = ally[ok].min(), ally[ok].max()
    x1, y1 = (x1 if x1 > x0 else x0 + 1.0), (y1 if y1 > y0 else y0 + 1.0)
    m = 48
    sx = lambda v: m + (v - x0) / (x1 - x0) * (width - 2 * m)
    sy = lambda v: height - m - (v - y0) / (y1 - y0) * (height - 2 * m)
    colors = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"]
    lines = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
             f'font-family="sans-serif" font-size="11">',
             f'<rect x="{m}" y="{m}" width="{width - 2 * m}" height="{height - 2 * m}" fill="none" stroke="#444"/>',
             f'<text x="{width / 2:.1f}" y="{height - 12}" text-anchor="middle">{xlabel}{" (log10)" if logx else ""}</text>',
             f'<text x="14" y="{height / 2:.1f}" transform="rotate(-90 14 {height / 2:.1f})" '
             f'text-anchor="middle">{ylabel}{" (log10)" if logy else ""}</text>',
             f'<text x="{m}" y="{height - m + 14}">{x0:.3g}</text>',
             f'<text x="{width - m}" y="{height - m + 14}" text-anchor="end">{x1:.3g}</text>',
             f'<text x="{m - 4}" y="{height - m}" text-anchor="end">{y0:.3g}</text>',
             f'<text x="{m - 4}" y="{m + 4}" text-anchor="end">{y1:.3g}</text>']
    for i, (label, (x, y)) in enumerate(pts.items()):
        keep = np.isfinite(x) & np.isfinite(y)
        path = " ".join(f"{sx(a):.2f},{sy(b):.2f}" for a, b in zip(x[keep], y[keep]))
        c = colors[i % len(colors)]
        lines.append(f'<polyline fill="none" stroke="{c}" stroke-width="1.5" points="{path}"/>')
        lines.append(f'<text x="{width - m - 4}" y="{m + 14 + 13 * i}" text-anchor="end" fill="{c}">{label}</text>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


class Outcome:
    def __init__(self, status, report, table=None, svg=None):
        self.status, self.report, self.table, self.svg = status, report, table, svg

    @property
    def code(self):
        return {"pass": EXIT_PASS, "fail": EXIT_FAIL, "inconclusive": EXIT_INCONCLUSIVE}[self.status]


# commands

def cmd_verify_rellich(cfg):
    u = _function(cfg["function"])
    fld, cert = _field(cfg["field"])
    domain = _domain(cfg["domain"])
    rows, failed, inconclusive = [], False, False
    for R in cfg["R"]:
        R = _number(R)
        mesh = geometry.boundary_mesh(domain, R, harmonic.RELLICH_GRADING)
        res = harmonic.rellich_residual(u, fld, domain, R, mesh, tol=cfg["tol"])
        ok = res.relative < cfg["tol"]
        row = {"R": R, "boundary_integral": res.boundary_integral, "flux_correction": res.flux_correction,
               "residual": res.residual, "relative": res.relative, "error_estimate": res.error_estimate,
               "tol": cfg["tol"], "pass": ok}
        if cert is not None:
            tw = harmonic.rellich_twosided_check(u, cert, domain, R, mesh, cfg["flux_threshold"])
            row.update({"A": tw.A, "B": tw.B, "ratio": tw.ratio, "bound": tw.bound,
                        "twosided_holds": tw.holds, "inconclusive": tw.inconclusive})
            inconclusive |= tw.inconclusive
        failed |= not ok
        rows.append(row)
    status = "fail" if failed else ("inconclusive" if inconclusive else "pass")
    keys = ["R", "boundary_integral", "flux_correction", "residual", "relative", "error_estimate", "tol", "pass"]
    if cert is not None:
        keys += ["A", "B", "ratio", "bound", "twosided_holds", "inconclusive"]
    table = _csv(keys, [[r[k] for k in keys] for r in rows])
    svg = svg_chart({"|I + F| / scale": ([r["R"] for r in rows], [max(r["relative"], 1e-300) for r in rows])},
                    "R", "relative residual", logx=True, logy=True)
    return Outcome(status, {"rows": rows}, table, svg)


def cmd_counterexample_scan(cfg):
    rows = harmonic.counterexample_scan([_number(p) for p in cfg["p"]], [_number(c) for c in cfg["cutoffs"]])
    d = harmonic.counterexample_dichotomy(rows, cauchy_rtol=cfg["cauchy_rtol"],
                                          increment_rtol=cfg["increment_rtol"])
    report = {"rows": [r._asdict() for r in rows],
              "cauchy": {repr(k): v for k, v in d.cauchy.items()},
              "max_relative_step": {repr(k): v for k, v in d.max_relative_step.items()},
              "p2_increments": d.increments, "p2_increment_spread": d.increment_spread,
              "log_divergent": d.log_divergent}
    table = _csv(["p", "cutoff", "norm", "error_estimate"], [list(r) for r in rows])
    series = {f"p={p:g}": ([r.cutoff for r in rows if r.p == p], [r.norm for r in rows if r.p == p])
              for p in sorted({r.p for r in rows})}
    svg = svg_chart(series, "cutoff", "norm", logx=True)
    return Outcome("pass" if d.holds else "fail", report, table, svg)


def _data_spec(spec, label):
    """Catalog name (the matching trace of that function), 'zero', or {"samples": [...]}."""
    if isinstance(spec, dict):
        if "samples" not in spec:
            raise BadInput(f"{label} data needs 'samples'")
        return np.asarray(spec["samples"], dtype=float)
    if spec == "zero":
        return (lambda z, nu: np.zeros(np.shape(z))) if label == "f_N" else (lambda z: np.zeros(np.shape(z)))
    u = harmonic.catalog(str(spec))
    md = solver.MixedData.from_harmonic(u)
    return {"f_D": md.f_D, "f_N": md.f_N, "arc": md.arc_data}[label]


def cmd_solve(cfg):
    domain = _domain(cfg["domain"])
    R = _number(cfg["R"])
    ms = cfg["mesh"]
    grading = solver.SolverGrading(int(ms["panel_order"]), int(ms["levels"]),
                                   int(ms.get("corner_levels", ms["levels"])), int(ms.get("panels_per_level", 1)))
    data = solver.MixedData(*(_data_spec(cfg["data"][k], k) for k in ("f_D", "f_N", "arc")))
    probes = solver.probe_points(domain, R, int(cfg["probes"]), seed=cfg["seed"])
    mesh = solver.contour_mesh(domain, R, grading)
    dens = solver.solve_mixed(domain, R, mesh, data)
    vals, grads = solver.eval_solution(dens, probes)
    fine = solver.solve_mixed(domain, R, solver.contour_mesh(domain, R, grading.refined()), data)
    est = np.abs(vals - solver.eval_solution(fine, probes)[0])
    exact = _function(cfg["exact"])(probes) if cfg.get("exact") else np.full(len(probes), math.nan)
    err = np.abs(vals - exact)
    header = ["x1", "x2", "u", "error_estimate", "exact", "abs_error"]
    table = _csv(header, [[z.real, z.imag, v, e, x, a] for z, v, e, x, a in zip(probes, vals, est, exact, err)])
    report = {"unknowns": len(mesh), "residual": dens.residual, "condition": dens.condition,
              "max_error_estimate": float(est.max()),
              "max_abs_error": float(err.max()) if cfg.get("exact") else None, "tol": cfg["tol"]}
    ok = bool(err.max() < cfg["tol"]) if cfg.get("exact") else True
    r = np.abs(probes)
    order = np.argsort(r)
    svg = svg_chart({"abs error": (r[order], np.maximum(err[order], 1e-300)),
                     "estimate": (r[order], np.maximum(est[order], 1e-300))},
                    "|z|", "error", logy=True)
    return Outcome("pass" if ok else "fail", report, table, svg)


def cmd_exponents(cfg):
    M = _number(cfg["M"])
    if cfg["delta"] is None and M > 0.0:
        raise BadInput("delta must be given explicitly when M > 0 (the default is the flat-quadrant value)")
    rep = exponents.exponent_report(M, None if cfg["delta"] is None else _number(cfg["delta"]))
    report = rep.to_dict()
    report["tolerance"] = 0.0
    table = exponents.sweep_csv([_number(m) for m in cfg["sweep"]] or [rep.M], rep.delta)
    return Outcome("pass", report, table, None)


def cmd_greens_check(cfg):
    rng = np.random.default_rng(cfg["seed"])
    n, tol = int(cfg["pairs"]), cfg["tol"]
    w = rng.uniform(0.05, 4.0, n) + 1j * rng.uniform(0.05, 4.0, n)
    z = rng.uniform(0.05, 4.0, n) + 1j * rng.uniform(0.05, 4.0, n)
    zD = 1j * rng.uniform(0.0, 4.0, n)
    zN = rng.uniform(0.0, 4.0, n) + 0j
    dirichlet = float(np.max(np.abs(greens.greens_eval(zD, w))))
    neumann = float(np.max(np.abs(greens.greens_grad_z(zN, w)[:, 1])))
    symmetry = float(np.max(np.abs(greens.greens_eval(z, w) - greens.greens_eval(w, z))))
    a = cfg["atom"]
    atom = atoms.make_atom(_number(a["center"]), _number(a["rho"]), a.get("shape", "haar"))
    d, vals, fit = greens.decay_scan(atom, np.asarray(cfg["decay_factors"], dtype=float))
    h = cfg["holder"]
    hf = greens.holder_fit(complex(*h["z"]), complex(*h["zeta"]), h["distances"])
    checks = {"dirichlet_face": dirichlet < tol, "neumann_face": neumann < tol, "symmetry": symmetry < tol,
              "decay": fit.delta >= cfg["min_delta"] and fit.r2 >= cfg["min_r2"]}
    report = {"dirichlet_face_max": dirichlet, "neumann_face_max": neumann, "symmetry_max": symmetry,
              "tol": tol, "decay_delta": fit.delta, "decay_r2": fit.r2, "decay_C": fit.C,
              "holder_delta": hf.delta, "holder_r2": hf.r2, "checks": checks}
    svg = svg_chart({"|u|": (d, vals)}, "distance", "|u|", logx=True, logy=True)
    return Outcome("pass" if all(checks.values()) else "fail", report, greens.decay_csv(d, vals, fit), svg)


def cmd_measure_check(cfg):
    domain = _domain(cfg["domain"])
    M = domain.as_graph().M
    fam = geometry.BallFamily.dyadic(tuple(_number(c) for c in cfg["centers"]), cfg["r_min"], cfg["r_max"])
    rows, ok = [], True
    for eps in cfg["epsilon"]:
        mu = geometry.WeightedMeasure(_number(eps))
        c1, c2 = geometry.measure_lemma_constants(mu.epsilon, M)
        for x, r in fam:
            ratio = geometry.measure_lemma_ratio(domain, x, r, mu)
            doubling = (geometry.weighted_ball_measure(domain, x, 2 * r, mu)
                        / geometry.weighted_ball_measure(domain, x, r, mu))
            inside = geometry.measure_lemma_inside(ratio, c1, c2)
            ok &= inside and c2 / c1 < 4.0
            rows.append([mu.epsilon, x, r, ratio, c1, c2, doubling, inside])
    table = _csv(["epsilon", "x1", "r", "ratio", "c1", "c2", "doubling", "inside"], rows)
    report = {"M": M, "balls": len(rows), "all_inside": ok,
              "max_ratio": max(r[3] for r in rows), "min_ratio": min(r[3] for r in rows)}
    series = {f"eps={e:g}, x={x:g}": ([r[2] for r in rows if r[0] == e and r[1] == x],
                                      [r[3] for r in rows if r[0] == e and r[1] == x])
              for e in sorted({r[0] for r in rows}) for x in sorted({r[1] for r in rows})}
    svg = svg_chart(series, "r", "ratio", logx=True)
    return Outcome("pass" if ok else "fail", report, table, svg)


def cmd_atoms_check(cfg):
    atom = atoms.make_atom(_number(cfg["center"]), _number(cfg["rho"]), cfg["shape"],
                           epsilon=_number(cfg["epsilon"]))
    atom.validate()
    pair = atoms.h11_seminorm_pair_check(atom)
    mesh, g, part = atoms.greens_trace_partition(atom, int(cfg["levels"]))
    norms = part.weighted_l1(mesh, atom.epsilon)
    ints = part.block_integrals(mesh.weights)
    k0, k1 = cfg["decay_blocks"]
    ratios = norms[k0 + 1:k1 + 1] / norms[k0:k1]
    recon = float(np.max(np.abs(part.reconstruct() - g)))
    checks = {"reconstruction": recon == 0.0 or recon < 1e-15 * float(np.max(np.abs(g))),
              "block_integrals": bool(np.max(np.abs(ints)) < cfg["integral_tol"]),
              "geometric_decay": bool(np.all(ratios < cfg["max_ratio"])),
              "primitive_finite": math.isfinite(pair)}
    report = {"sup": atom.sup, "integral": atom.integral, "pair_check": pair, "reconstruction_max": recon,
              "max_block_integral": float(np.max(np.abs(ints))), "integral_tol": cfg["integral_tol"],
              "decay_ratios": ratios.tolist(), "max_ratio": cfg["max_ratio"], "checks": checks}
    table = part.to_csv(mesh, atom.epsilon)
    k = np.arange(len(norms))
    pos = norms > 0
    svg = svg_chart({"L1 norm": (k[pos], norms[pos])}, "k", "weighted L1 norm", logy=True)
    return Outcome("pass" if all(checks.values()) else "fail", report, table, svg)


COMMANDS = {
    "verify-rellich": cmd_verify_rellich,
    "counterexample-scan": cmd_counterexample_scan,
    "solve": cmd_solve,
    "exponents": cmd_exponents,
    "greens-check": cmd_greens_check,
    "measure-check": cmd_measure_check,
    "atoms-check": cmd_atoms_check,
}


def build_parser():
    ap = argparse.ArgumentParser(prog="zaremba", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", help="JSON file overriding the defaults")
        p.add_argument("--out", help="directory for JSON/CSV/SVG outputs")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--svg", action="store_true", help="also write an SVG chart")
    return ap


def run(command, config=None, seed=0):
    """Run a command on a config dict (defaults filled in); returns (exit code, document, outcome)."""
    cfg = _merge(DEFAULTS[command], config or {})
    cfg["seed"] = int(seed)
    out = COMMANDS[command](cfg)
    doc = {"command": command, "config": cfg, "status": out.status, "results": out.report}
    return out.code, _clean(doc), out


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        code, doc, out = run(args.command, read_config(args.config), args.seed)
    except SolverError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except InconclusiveError as exc:
        print(f"inconclusive: {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    except (ZarembaError, KeyError, TypeError, ValueError) as exc:
        print(f"bad input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    sys.stdout.write(text)
    if args.out:
        d = Path(args.out)
        d.mkdir(parents=True, exist_ok=True)
        stem = args.command.replace("-", "_")
        (d / f"{stem}.json").write_text(text, encoding="utf-8")
        if out.table is not None:
            (d / f"{stem}.csv").write_text(out.table, encoding="utf-8")
        if args.svg and out.svg is not None:
            (d / f"{stem}.svg").write_text(out.svg, encoding="utf-8")
    return code


if __name__ == "__main__":
    sys.exit(main())
