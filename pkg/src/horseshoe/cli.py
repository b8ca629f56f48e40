"""Command-line front end.

Exit codes (stable, scripts rely on them):

    0  success (certified / recheck clean / sweep ran / invariant printed)
    1  certification failed, recheck found a violated record, or the lemma
       suite found a violation
    2  bad input: config, grid spec, seed spec, schema or geometry
    3  internal error

Every file the CLI writes goes through a temp file and ``os.replace`` so a
reader never sees a half-written certificate or table.
"""
import argparse
import csv
import dataclasses
import io
import json
import math
import os
import sys
import tempfile
import traceback
from decimal import Decimal, InvalidOperation

import numpy as np

from . import __version__
from .certifiers import (SWEEP_COLUMNS, DissipativeConfig, HamiltonianConfig, certify_dissipative,
                         certify_hamiltonian, sweep)
from .recheck import SchemaError, recheck_file
from .recipes import RECIPES, cells, dsf_cell

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3

PIPELINES = {"dissipative": DissipativeConfig, "hamiltonian": HamiltonianConfig}


class InputError(Exception):
    """Bad user input; maps to exit code 2."""


def _err(msg):
    print(f"error: {msg}", file=sys.stderr)


def write_atomic(path, text):
    path = os.path.abspath(path)
    d = os.path.dirname(path)
    fd, tmp = tempfile.mkstemp(prefix=".tmp-", dir=d)
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        mask = os.umask(0)
        os.umask(mask)
        os.chmod(tmp, 0o666 & ~mask)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(text, out):
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        write_atomic(out, text)


def resolve_threads(value):
    if value is not None:
        n = value
    else:
        env = os.environ.get("HORSESHOE_THREADS")
        if not env:
            return 1
        try:
            n = int(env)
        except ValueError:
            raise InputError(f"HORSESHOE_THREADS={env!r} is not an integer")
    if n < 1:
        raise InputError("thread count must be >= 1")
    return n


def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}")
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}")


# ---------------------------------------------------------------- configs

# flag name -> config field, per pipeline
_DISS_FLAGS = ("a", "b", "b_level", "rho", "N", "epsilon", "witness_radius", "max_back",
               "free_curve_slices", "power", "seed")
_HAM_FLAGS = ("h", "w", "L1", "L2", "max_iter", "direction", "quad_slices", "power", "seed")


def build_config(pipeline, file_cfg=None, overrides=None):
    """Validated config object from an optional JSON dict plus flag overrides.

    Unknown keys, wrong types and out-of-range values raise InputError before
    any computation starts; the family is instantiated once here so parameter
    preconditions (b in (0, 1), parseable expressions) are checked too."""
    cls = PIPELINES[pipeline]
    names = {f.name for f in dataclasses.fields(cls)}
    data = {}
    if file_cfg is not None:
        if not isinstance(file_cfg, dict):
            raise InputError("config must be a JSON object")
        extra = sorted(set(file_cfg) - names)
        if extra:
            raise InputError(f"unknown config keys: {', '.join(extra)}")
        data.update(file_cfg)
    data.update({k: v for k, v in (overrides or {}).items() if v is not None})
    try:
        cfg = cls(**data)
        cfg.validate()
        cfg.family()
    except (TypeError, ValueError, ArithmeticError, KeyError) as exc:
        raise InputError(f"invalid {pipeline} config: {exc}")
    return cfg


def _overrides(args, names):
    return {n: getattr(args, n, None) for n in names}


def _summary(cert):
    lines = [f"pipeline: {cert['pipeline']}", f"verdict: {cert['verdict']}"]
    if cert.get("failure"):
        f = cert["failure"]
        lines.append(f"failed stage: {f.get('stage')} ({f.get('error')}): {f.get('message')}")
    for fp in cert.get("fixed_points", []):
        lines.append(f"fixed point: rotation {fp.get('rotation')}")
    if cert.get("rho") is not None:
        lines.append(f"rotational difference: {cert['rho']}")
    rec = cert.get("records", {})
    if cert["pipeline"] == "dissipative":
        if cert.get("N") is not None:
            lines.append(f"N: {cert['N']}")
        if "max_backward_iterations" in rec:
            lines.append(f"max backward iterations: {rec['max_backward_iterations']}")
        dpn = rec.get("dpn")
        if dpn:
            lines.append(f"crude bound |S| eta^N <= 1/2: {'holds' if dpn['crude_bound_holds'] else 'fails'}")
            lines.append(f"sampled d.p.n. criterion: passes ({dpn['sample_count']} samples)")
    else:
        if cert.get("c_coeff") is not None:
            lines.append(f"c: {cert['c_coeff']}")
        if "NL2_bound" in cert:
            lines.append(f"N_L2 bound: <= {float.fromhex(cert['NL2_bound'][1]):.6g}")
        if "crossing" in rec:
            lines.append(f"crossing iterations: {rec['crossing']['iterations']} ({rec['crossing']['direction']})")
    lines.append(f"content hash: {cert.get('content_hash')}")
    return "\n".join(lines) + "\n"


def cmd_certify(args):
    file_cfg = _load_json(args.config) if args.config else None
    names = _DISS_FLAGS if args.pipeline == "dissipative" else _HAM_FLAGS
    cfg = build_config(args.pipeline, file_cfg, _overrides(args, names))
    fn = certify_dissipative if args.pipeline == "dissipative" else certify_hamiltonian
    cert = fn(cfg)
    text = json.dumps(cert, indent=1, sort_keys=True) + "\n"
    if args.out:
        write_atomic(args.out, text)
    sys.stdout.write(_summary(cert))
    if cert["verdict"] != "certified":
        return EXIT_FAIL
    return EXIT_OK


def cmd_recheck(args):
    try:
        rep = recheck_file(args.cert, check_hash=not args.no_hash)
    except OSError as exc:
        raise InputError(f"cannot read {args.cert}: {exc.strerror}")
    except SchemaError as exc:
        _err(f"schema: {exc}")
        return EXIT_INPUT
    if rep.ok:
        print(f"ok: {len(rep.checked)} records checked")
        return EXIT_OK
    for v in rep.violations:
        print(f"violated: {v}")
    return EXIT_FAIL


# ---------------------------------------------------------------- sweeps

def parse_range(spec):
    """'start:stop:step' (inclusive, decimal-exact) -> list of decimal strings."""
    parts = spec.split(":")
    if len(parts) != 3:
        raise InputError(f"range {spec!r} must be start:stop:step")
    try:
        lo, hi, step = (Decimal(p) for p in parts)
    except InvalidOperation:
        raise InputError(f"range {spec!r} has a non-numeric part")
    if not (lo.is_finite() and hi.is_finite() and step.is_finite()) or step <= 0:
        raise InputError("range step must be positive")
    out = []
    v = lo
    while v <= hi:
        out.append(str(v))
        v += step
    return out


def _grid_from_args(args):
    if args.recipe:
        pipeline, rows = RECIPES[args.recipe]
        return pipeline, cells(rows)
    if args.grid:
        spec = _load_json(args.grid)
        if not isinstance(spec, dict) or "pipeline" not in spec or "cells" not in spec:
            raise InputError("grid file must be an object with 'pipeline' and 'cells'")
        pipeline, rows = spec["pipeline"], spec["cells"]
        if pipeline not in PIPELINES:
            raise InputError(f"unknown pipeline {pipeline!r}")
        if not isinstance(rows, list):
            raise InputError("'cells' must be a list")
        return pipeline, [dict(spec.get("defaults", {}), **r) if isinstance(r, dict) else r for r in rows]
    if args.b_grid is not None:
        a = args.a or "3"
        out = []
        for b in parse_range(args.b_grid):
            try:
                out.append(dsf_cell(b, a) if args.table_policy else {"a": a, "b": b})
            except ArithmeticError:
                raise InputError(f"bad b value {b!r}")
        return "dissipative", out
    raise InputError("give one of --recipe, --grid or --b-grid")


def cmd_sweep(args):
    threads = resolve_threads(args.threads)
    pipeline, grid = _grid_from_args(args)
    for i, cell in enumerate(grid):
        if not isinstance(cell, dict):
            raise InputError(f"cell {i} is not an object")
        try:
            build_config(pipeline, cell)
        except InputError as exc:
            raise InputError(f"cell {i}: {exc}")
    rows = sweep(grid, pipeline, threads=threads)
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=SWEEP_COLUMNS, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow(r)
    _emit(buf.getvalue(), args.out)
    if args.out not in (None, "-"):
        ok = sum(r["verdict"] == "certified" for r in rows)
        print(f"{len(rows)} cells, {ok} certified -> {args.out}")
    return EXIT_OK


# ---------------------------------------------------------------- iterates

def _floats(spec, n, what):
    try:
        vals = [float(v) for v in spec.split(",")]
    except ValueError:
        raise InputError(f"{what} {spec!r}: expected {n} comma-separated numbers")
    if len(vals) != n or not all(math.isfinite(v) for v in vals):
        raise InputError(f"{what} {spec!r}: expected {n} finite numbers")
    return vals


class Seed:
    """A parametrized seed curve t in [0, 1] -> plane (lift coordinates)."""

    def __init__(self, kind, pts, closed):
        self.kind, self.pts, self.closed = kind, np.asarray(pts, float), closed
        seg = np.diff(self.pts, axis=0)
        self._cum = np.concatenate([[0.0], np.cumsum(np.hypot(seg[:, 0], seg[:, 1]))])
        if self._cum[-1] <= 0:
            raise InputError(f"degenerate {kind} seed")

    def __call__(self, t):
        s = np.asarray(t) * self._cum[-1]
        x = np.interp(s, self._cum, self.pts[:, 0])
        y = np.interp(s, self._cum, self.pts[:, 1])
        return x, y

    @property
    def y0(self):
        return float(self.pts[:, 1].mean())


def _square(cx, cy, r):
    return Seed("box", [(cx - r, cy - r), (cx + r, cy - r), (cx + r, cy + r),
                        (cx - r, cy + r), (cx - r, cy - r)], True)


def pair_centres(pipeline, F, cfg):
    """Centres of the fixed-point pair the certifier would use, x in [-1/2, 1/2)."""
    from .certifiers import _dissipative_pair, _hamiltonian_pair
    from .dynamics import CertificationError
    try:
        if pipeline == "dissipative":
            c0, c1, _ = _dissipative_pair(F, cfg)
        else:
            c0, c1 = _hamiltonian_pair(F, float(cfg.L1))
    except CertificationError as exc:
        raise InputError(f"no fixed-point pair to seed around: {exc}")
    out = []
    for c in (c0, c1):
        x, y = c.box.mid()
        out.append(((x + 0.5) % 1.0 - 0.5, y))
    return out


def parse_seeds(args, centres=()):
    seeds = []
    if args.around_pair is not None:
        if not (math.isfinite(args.around_pair) and args.around_pair > 0):
            raise InputError("--around-pair radius must be positive")
        seeds.extend(_square(cx, cy, args.around_pair) for cx, cy in centres)
    for s in args.box or []:
        x0, x1, y0, y1 = _floats(s, 4, "box")
        if not (x0 < x1 and y0 < y1):
            raise InputError(f"box {s!r} must satisfy xlo < xhi and ylo < yhi")
        seeds.append(Seed("box", [(x0, y0), (x1, y0), (x1, y1), (x0, y1), (x0, y0)], True))
    for s in args.around or []:
        cx, cy, r = _floats(s, 3, "around")
        if r <= 0:
            raise InputError(f"around {s!r}: radius must be positive")
        seeds.append(_square(cx, cy, r))
    for s in args.circle or []:
        (y,) = _floats(s, 1, "circle")
        seeds.append(Seed("circle", [(0.0, y), (1.0, y)], False))
    for s in args.segment or []:
        x0, y0, x1, y1 = _floats(s, 4, "segment")
        seeds.append(Seed("segment", [(x0, y0), (x1, y1)], False))
    if not seeds:
        raise InputError("no seed given (use --box, --around, --around-pair, --circle or --segment)")
    return seeds


def _images(F, seed, t, k, sgn):
    x, y = seed(t)
    with np.errstate(all="ignore"):
        for _ in range(k):
            x, y = F.fstep(x, y, sgn)
    return x, y


def iterate_curve(F, seed, steps, sgn, tol=0.02, start=512, max_points=200_000):
    """Images of the seed curve under 0..steps iterates, refined so that
    consecutive image points are at most ``tol`` apart (until max_points)."""
    t = np.linspace(0.0, 1.0, start)
    out = []
    capped = []
    for k in range(steps + 1):
        x, y = _images(F, seed, t, k, sgn)
        while True:
            gap = np.hypot(np.diff(x), np.diff(y))
            bad = np.nonzero((gap > tol) & (np.diff(t) > 1e-13))[0]
            if len(bad) == 0 or len(t) + len(bad) > max_points:
                break
            tm = (t[bad] + t[bad + 1]) / 2
            xm, ym = _images(F, seed, tm, k, sgn)
            t = np.insert(t, bad + 1, tm)
            x = np.insert(x, bad + 1, xm)
            y = np.insert(y, bad + 1, ym)
        capped.append(bool(len(bad)))
        out.append((x, y))
    return out, capped


def crossing_step(curves, seeds, level, rule):
    """First step at which the crossing rule holds, or None.

    both:     every seed image reaches above +level and below -level;
    opposite: some seed image reaches beyond the line opposite to its seed
              (for a seed strictly inside the band: leaves the band).
    """
    if rule == "none":
        return None
    steps = len(curves[0])
    for k in range(steps):
        hits = []
        for seed, imgs in zip(seeds, curves):
            y = imgs[k][1]
            up, down = bool(np.nanmax(y) > level), bool(np.nanmin(y) < -level)
            if rule == "both":
                hits.append(up and down)
            elif seed.y0 <= -level:
                hits.append(up)
            elif seed.y0 >= level:
                hits.append(down)
            else:
                hits.append(up or down)
        if (all if rule == "both" else any)(hits):
            return k
    return None


ITER_COLUMNS = ("step", "seed", "index", "x", "y", "crossed")
_PRE = ("#87ceeb", "#f08080", "#b0a0e0", "#e0c070")
_POST = ("#1f5fa8", "#b2182b", "#5e3c99", "#8c6d1f")


def iterates_csv(curves, cross):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(ITER_COLUMNS)
    for si, imgs in enumerate(curves):
        for k, (x, y) in enumerate(imgs):
            flag = int(cross is not None and k >= cross)
            for i in range(len(x)):
                w.writerow((k, si, i, repr(float(x[i])), repr(float(y[i])), flag))
    return buf.getvalue()


SVG_POINTS = 4000   # per path; the CSV keeps every point


def _path(x, y, ymax):
    if len(x) > SVG_POINTS:
        keep = np.unique(np.linspace(0, len(x) - 1, SVG_POINTS).astype(int))
        x, y = x[keep], y[keep]
    cmds = []
    pen = False
    for xi, yi in zip(x, y):
        if not (math.isfinite(xi) and math.isfinite(yi)) or abs(yi) > ymax:
            pen = False
            continue
        cmds.append(("L" if pen else "M") + f"{xi:.5g},{-yi:.5g}")
        pen = True
    return " ".join(cmds)


def iterates_svg(curves, seeds, cross, level, pipeline):
    finite = [v for imgs in curves for x, y in imgs for v in x[np.isfinite(x) & (np.abs(y) <= 3 * level)]]
    x0 = math.floor(min(finite)) if finite else 0
    x1 = math.ceil(max(finite)) if finite else 1
    x1 = min(max(x1, x0 + 1), x0 + 64)
    ymax = 1.5 * level
    w = x1 - x0
    sw = 0.004 * max(w, 2 * ymax) / 4
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{x0} {-ymax} {w} {2 * ymax}" '
           f'preserveAspectRatio="none" data-pipeline="{pipeline}" data-crossing-step="'
           f'{"" if cross is None else cross}">']
    out.append('<g id="grid" stroke="#cccccc" fill="none">')
    for k in range(x0, x1 + 1):
        out.append(f'<line x1="{k}" y1="{-ymax}" x2="{k}" y2="{ymax}" stroke-width="{sw}"/>')
    for yy in (level, -level):
        out.append(f'<line x1="{x0}" y1="{-yy}" x2="{x1}" y2="{-yy}" stroke="#444444" '
                   f'stroke-dasharray="{4 * sw}" stroke-width="{sw}"/>')
    out.append("</g>")
    for k in range(len(curves[0])):
        crossed = cross is not None and k >= cross
        gid = "seed" if k == 0 else f"step-{k}"
        out.append(f'<g id="{gid}" class="{"seed" if k == 0 else "step"}" data-step="{k}" '
                   f'data-crossed="{int(crossed)}" fill="none" stroke-width="{sw}">')
        for si, imgs in enumerate(curves):
            col = (_POST if crossed else _PRE)[si % len(_PRE)]
            d = _path(*imgs[k], ymax)
            if d:
                out.append(f'<path stroke="{col}" d="{d}"/>')
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def cmd_iterates(args):
    if args.steps < 0:
        raise InputError("--steps must be >= 0")
    names = _DISS_FLAGS if args.pipeline == "dissipative" else _HAM_FLAGS
    cfg = build_config(args.pipeline, None, _overrides(args, names))
    F = cfg.family()
    centres = pair_centres(args.pipeline, F, cfg) if args.around_pair is not None else ()
    seeds = parse_seeds(args, centres)
    level = args.level
    if level is None:
        level = float(cfg.b_level) if args.pipeline == "dissipative" else float(cfg.L2)
    rule = args.cross or ("both" if all(s.kind == "box" for s in seeds) else "opposite")
    sgn = 1 if args.direction == "forward" else -1
    curves = []
    capped = False
    for s in seeds:
        imgs, cap = iterate_curve(F, s, args.steps, sgn, tol=args.tol, max_points=args.max_points)
        curves.append(imgs)
        capped |= any(cap)
    cross = crossing_step(curves, seeds, level, rule)
    if args.format == "csv":
        text = iterates_csv(curves, cross)
    else:
        text = iterates_svg(curves, seeds, cross, level, args.pipeline)
    _emit(text, args.out)
    msg = f"{len(seeds)} seeds, {args.steps} steps, crossing ({rule}, level {level:g}): "
    msg += "none" if cross is None else f"step {cross}"
    if capped:
        msg += " [resolution capped]"
    print(msg, file=sys.stderr if args.out in (None, "-") else sys.stdout)
    return EXIT_OK


# ---------------------------------------------------------------- topology

def cmd_topology(args):
    from . import topology as T
    from .topology.geometry import Q
    from .topology.lemmas import LEMMAS, lemma_suite

    if args.what == "lemmas":
        threads = resolve_threads(args.threads)
        names = args.lemma or None
        if names:
            bad = [n for n in names if n not in LEMMAS]
            if bad:
                raise InputError(f"unknown lemma(s): {', '.join(bad)}")
        rep = lemma_suite(args.budget, args.seed, threads, names)
        for r in rep["lemmas"]:
            print(f"{r['lemma']:18s} instances={r['instances']} violations={r['violations']} "
                  f"oracle_mismatches={r['oracle_mismatches']} min_margin={r['min_margin']}"
                  + (" GENERATION FAILED" if r["generation_failed"] else ""))
        for c in rep["curated"]:
            print(f"curated {c['case']:26s} value={c['value']} expected={c['expected']} "
                  f"{'ok' if c['ok'] else 'MISMATCH'}")
        print(f"violations: {rep['violations']}")
        if args.out:
            write_atomic(args.out, json.dumps(rep, indent=1, default=str) + "\n")
        failed = rep["violations"] or any(r["generation_failed"] for r in rep["lemmas"])
        return EXIT_FAIL if failed else EXIT_OK

    files = args.files
    need = {"theta": 2, "nu": 2, "mu": 2, "sep": 2, "hdiff": 2}[args.what]
    if len(files) != need:
        raise InputError(f"{args.what} takes {need} JSON files")
    try:
        objs = [_load_json(f) for f in files]
        if args.what == "theta":
            A, B = (T.read_polyline(o) for o in objs)
            fast, slow = T.theta(A, B), T.theta_oracle(A, B)
        elif args.what == "nu":
            A, K = (T.read_polyline(o) for o in objs)
            fast, slow = T.nu(A, K), T.nu_oracle(A, K)
        elif args.what == "mu":
            R = T.Rectangle4.from_json(objs[0])
            C = T.read_polyline(objs[1])
            fast, slow = T.mu(R, C), T.mu_oracle(R, C)
        elif args.what == "sep":
            A, G = (T.read_polyline(o) for o in objs)
            x = A.start if args.x is None else tuple(Q(v) for v in args.x.split(","))
            fast = T.sep(x, A, G, args.side)
            slow = T.sep_oracle(x, A, G, args.side)
        else:
            B1, B2 = (T.Banner.from_json(o) for o in objs)
            fast = slow = T.homotopic_difference(B1, B2)
    except T.TopologyError as exc:
        _err(f"{type(exc).__name__}: {exc}")
        return EXIT_INPUT
    except (ValueError, TypeError, KeyError, ZeroDivisionError) as exc:
        _err(f"malformed geometry: {type(exc).__name__}: {exc}")
        return EXIT_INPUT
    if fast != slow:
        _err(f"fast path {fast} and oracle {slow} disagree")
        return EXIT_INTERNAL
    if args.json:
        print(json.dumps({"invariant": args.what, "value": fast}))
    else:
        print(fast)
    return EXIT_OK


def cmd_instances(args):
    """Write the curated topology instances as JSON files into a directory."""
    from .topology import instances as I
    os.makedirs(args.dir, exist_ok=True)
    files = {}
    A, B = I.theta_four()
    files["theta_four_A.json"], files["theta_four_B.json"] = A, B
    A, K = I.nu_one()
    files["nu_one_A.json"], files["nu_one_K.json"] = A, K
    _, A, G = I.sep_three()
    files["sep_three_A.json"], files["sep_three_gamma.json"] = A, G
    B1, B2 = I.banner_pair(12)
    files["banner_1.json"], files["banner_2.json"] = B1, B2
    files["banner_2_rect.json"] = B2.rect
    files["banner_1_B.json"] = B1.B
    for name, obj in files.items():
        write_atomic(os.path.join(args.dir, name), json.dumps(obj.to_json(), indent=1) + "\n")
    print("\n".join(sorted(files)))
    return EXIT_OK


# ---------------------------------------------------------------- parser

def _family_flags(p, pipeline):
    if pipeline == "dissipative":
        p.add_argument("--a", help="parameter a (decimal string)")
        p.add_argument("--b", help="parameter b in (0, 1)")
        p.add_argument("--b-level", dest="b_level", type=float, help="band half-height (default 6)")
        p.add_argument("--rho", type=int, help="force the rotational difference of the pair")
        p.add_argument("--N", type=int, help="d.p.n. length (>= ceil(34/rho))")
        p.add_argument("--epsilon", type=float)
        p.add_argument("--witness-radius", dest="witness_radius", type=float)
        p.add_argument("--max-back", dest="max_back", type=int)
        p.add_argument("--free-curve-slices", dest="free_curve_slices", type=int)
    else:
        p.add_argument("--h", help="h(y), expression in y")
        p.add_argument("--w", help="w(x), expression in x")
        p.add_argument("--L1", type=float)
        p.add_argument("--L2", type=float)
        p.add_argument("--max-iter", dest="max_iter", type=int)
        p.add_argument("--direction", dest="direction", choices=("up", "down", "both"))
        p.add_argument("--quad-slices", dest="quad_slices", type=int)
    p.add_argument("--power", type=int, help="certify the k-th iterate of the map")
    p.add_argument("--seed", type=int, help="random seed for witness searches")


def build_parser():
    ap = argparse.ArgumentParser(prog="horseshoe", description="Rotational horseshoe certifier.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="cmd", required=True)

    c = sub.add_parser("certify", help="certify one map")
    csub = c.add_subparsers(dest="pipeline", required=True)
    for name in PIPELINES:
        p = csub.add_parser(name)
        _family_flags(p, name)
        p.add_argument("--config", help="JSON config file (flags override it)")
        p.add_argument("--out", help="certificate path")
        p.set_defaults(func=cmd_certify)

    r = sub.add_parser("recheck", help="audit a stored certificate")
    r.add_argument("cert")
    r.add_argument("--no-hash", action="store_true", help="skip the content hash comparison")
    r.set_defaults(func=cmd_recheck)

    s = sub.add_parser("sweep", help="run a parameter grid, write CSV")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--recipe", choices=sorted(RECIPES))
    g.add_argument("--grid", help="JSON file {pipeline, cells[, defaults]}")
    g.add_argument("--b-grid", dest="b_grid", help="dissipative b range start:stop:step")
    s.add_argument("--a", help="a for --b-grid (default 3)")
    s.add_argument("--auto-pair", dest="table_policy", action="store_false",
                   help="with --b-grid: let the certifier pick the pair instead of the D.S.F. table choice")
    s.add_argument("--out", help="CSV path (default stdout)")
    s.add_argument("--threads", type=int)
    s.set_defaults(func=cmd_sweep)

    it = sub.add_parser("iterates", help="dump iterates of seed sets as CSV or SVG")
    isub = it.add_subparsers(dest="pipeline", required=True)
    for name in PIPELINES:
        p = isub.add_parser(name)
        _family_flags(p, name)
        p.add_argument("--box", action="append", metavar="XLO,XHI,YLO,YHI")
        p.add_argument("--around", action="append", metavar="CX,CY,R", help="square neighbourhood")
        p.add_argument("--around-pair", dest="around_pair", type=float, metavar="R",
                       help="square neighbourhoods of radius R around the certifier's fixed-point pair")
        p.add_argument("--circle", action="append", metavar="Y", help="the circle y = Y")
        p.add_argument("--segment", action="append", metavar="X0,Y0,X1,Y1")
        p.add_argument("--steps", type=int, default=10)
        p.add_argument("--backward", dest="direction", action="store_const", const="backward",
                       default="forward")
        p.add_argument("--level", type=float, help="crossing line |y| = level")
        p.add_argument("--cross", choices=("both", "opposite", "none"))
        p.add_argument("--format", choices=("csv", "svg"), default="svg")
        p.add_argument("--tol", type=float, default=0.02, help="max gap between image points")
        p.add_argument("--max-points", dest="max_points", type=int, default=200_000)
        p.add_argument("--out")
        p.set_defaults(func=cmd_iterates)

    t = sub.add_parser("topology", help="arc invariants and the lemma suite")
    t.add_argument("what", choices=("theta", "nu", "mu", "sep", "hdiff", "lemmas"))
    t.add_argument("files", nargs="*")
    t.add_argument("--side", choices=("upper", "lower"), default="upper")
    t.add_argument("--x", help="base point for sep (default: start of A)")
    t.add_argument("--json", action="store_true")
    t.add_argument("--budget", type=int, default=1000)
    t.add_argument("--seed", type=int, default=0)
    t.add_argument("--lemma", action="append")
    t.add_argument("--threads", type=int)
    t.add_argument("--out")
    t.set_defaults(func=cmd_topology)

    e = sub.add_parser("instances", help="write the curated topology instances")
    e.add_argument("dir")
    e.set_defaults(func=cmd_instances)
    return ap


def main(argv=None):
    ap = build_parser()
    try:
        args, extra = ap.parse_known_args(argv)
        # topology takes its files after any options ("sep --side lower A.json G.json")
        if extra and getattr(args, "func", None) is cmd_topology and not any(e.startswith("-") for e in extra):
            args.files = list(args.files) + extra
        elif extra:
            ap.error(f"unrecognized arguments: {' '.join(extra)}")
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except InputError as exc:
        _err(str(exc))
        return EXIT_INPUT
    except KeyboardInterrupt:
        return EXIT_INTERNAL
    except Exception:
        traceback.print_exc()
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
