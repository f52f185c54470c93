"""Command-line interface: verify, chern, sweep, sample, recheck.

Exit codes: 0 pass, 1 verification failed, 2 usage error, 3 quadrature did
not converge.
"""

import argparse
import csv
import json
import sys

import numpy as np

from . import __version__
from . import instanton as inst
from . import potentials as pot
from . import vortex as vx
from .errors import AnsatzError, InvalidData, QuadratureNotConverged
from .quadrature import QuadConfig

SCHEMA = 1
EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_NOCONV = 0, 1, 2, 3

# default tolerances (acceptance thresholds)
TOL_DUALITY = 1e-10
TOL_LAW = 1e-8
TOL_VORTEX = 1e-9
TOL_CHERN = 5e-3


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# potential descriptors

def _floats(parts, what):
    try:
        return [float(p) for p in parts]
    except ValueError:
        raise UsageError(f"{what}: expected numbers, got {parts}") from None


def parse_potential(text):
    """Colon shorthand -> SuperPotential.

    thooft:b1:lam1[:b2:lam2...]   centers b_i on the real axis, scales lam_i
    halfplane-sym:re1:im1[:...]   vortex with Higgs zeros at re_i + i im_i
    disc-family:c[:P1|P2]         singular family (eps = 1)
    fhp1, fhp2, basic, flat, const[:v], generic-nonharmonic, generic-nonharmonic-hyp
    """
    name, *args = text.strip().split(":")
    name = name.lower()
    if name == "thooft":
        v = _floats(args, "thooft")
        if not v or len(v) % 2:
            raise UsageError("thooft needs pairs b:lambda")
        cen = np.zeros((len(v) // 2, 4))
        cen[:, 0] = v[0::2]
        return pot.ThooftPotential(cen, v[1::2])
    if name in ("halfplane-sym", "halfplane_sym"):
        v = _floats(args, "halfplane-sym")
        if not v or len(v) % 2:
            raise UsageError("halfplane-sym needs pairs re:im")
        return pot.HalfplaneSym.from_zeros([complex(a, b) for a, b in zip(v[0::2], v[1::2])])
    if name in ("disc-family", "disc_family"):
        if not args:
            raise UsageError("disc-family needs c")
        cut = args[1].upper() if len(args) > 1 else "P2"
        return pot.DiscFamily(_floats(args[:1], "disc-family")[0], 1.0, cut)
    if args and name not in ("const",):
        raise UsageError(f"{name} takes no parameters")
    if name == "fhp1":
        return pot.FHP1()
    if name == "fhp2":
        return pot.FHP2()
    if name == "basic":
        return pot.HalfplaneSym([0.0], [1.0])
    if name == "flat":
        return pot.HalfplaneSym()
    if name == "const":
        return pot.ConstPotential(_floats(args, "const")[0] if args else 1.0)
    if name == "generic-nonharmonic":
        return pot.nonharmonic_control()
    if name == "generic-nonharmonic-hyp":
        return pot.nonharmonic_hyp_control()
    raise UsageError(f"unknown potential {text!r}")


def load_potential(args):
    if getattr(args, "spec_file", None):
        try:
            with open(args.spec_file) as fh:
                return pot.from_dict(json.load(fh))
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read spec file: {exc}") from None
    if not args.potential:
        raise UsageError("give --potential or --spec-file")
    return parse_potential(args.potential)


def _descriptor(p):
    try:
        return p.to_dict()
    except AnsatzError:
        return {"family": p.family}


# ---------------------------------------------------------------------------
# grids

def grid4(p, n, seed):
    rng = np.random.default_rng(seed)
    x = rng.normal(size=(4, 4 * n)) * 1.5
    keep = np.ones(x.shape[1], bool)
    if isinstance(p, pot.ThooftPotential):
        for c in p.centers:
            keep &= np.sum((x - c[:, None]) ** 2, axis=0) > 0.01
    elif p.symmetric:
        keep &= np.sum(x[1:] ** 2, axis=0) > 0.01
    return x[:, keep][:, :n]


def grid2(model, n, seed):
    rng = np.random.default_rng(seed)
    if model == pot.HALFPLANE:
        z = rng.uniform(-3, 3, 2 * n) + 1j * rng.uniform(0.05, 4, 2 * n)
        w = pot.half_to_disc(z)
    else:
        rad = np.sqrt(rng.uniform(0.05 ** 2, 0.95 ** 2, 2 * n))
        w = rad * np.exp(1j * rng.uniform(-np.pi, np.pi, 2 * n))
        z = w
    # stay off the real axis of the disc, where the branch cuts sit
    keep = (np.abs(w.imag) > 1e-3) & (np.abs(w) > 1e-2)
    return z[keep][:n]


def _stats(v):
    v = np.asarray(v, dtype=float)
    return {"max": float(np.max(v)), "mean": float(np.mean(v))}


# ---------------------------------------------------------------------------
# commands

def _is_4d(p, suite):
    if suite == "4d":
        return True
    if suite == "2d":
        return False
    return isinstance(p, (pot.ThooftPotential, pot.ConstPotential, pot.Generic4))


def cmd_verify(args):
    p = load_potential(args)
    checks = []
    if _is_4d(p, args.suite):
        d = inst.Duality(args.duality.upper())
        x = grid4(p, args.points, args.seed)
        Fp, Fm = inst.curvature_densities(p, x, d)
        off = Fm if d == inst.Duality.SD else Fp
        checks.append({"name": "off_duality_density", "tol": args.tol_duality, **_stats(off)})
        # the off-duality part obeys the same (3/8) law for either duality
        law = inst.asd_law(p, x)
        rel = np.abs(off - law) / np.maximum(np.abs(law), 1.0)
        checks.append({"name": "off_duality_law", "tol": args.tol_law, **_stats(rel)})
        suite = "4d"
    else:
        model = args.model or p.native_model or pot.HALFPLANE
        z = grid2(model, args.points, args.seed)
        r1, r2 = vx.vortex_residuals(p, z, args.kind, model)
        checks.append({"name": "res1", "tol": args.tol_vortex, **_stats(r1)})
        checks.append({"name": "res2", "tol": args.tol_vortex, **_stats(r2)})
        suite = "2d"
    for c in checks:
        c["pass"] = bool(c["max"] <= c["tol"])
    report = _report(args, p, {"suite": suite, "checks": checks})
    return _emit(args, report)


def quad_config(args):
    kw = {}
    if args.deltas:
        kw["deltas"] = tuple(_floats(args.deltas.split(","), "--deltas"))
        kw["extrap_order"] = min(2, len(kw["deltas"]) - 1)
    for name in ("tol", "max_levels", "radius", "workers", "panels"):
        v = getattr(args, name, None)
        if v is not None:
            kw[name] = v
    try:
        return QuadConfig(**kw)
    except InvalidData as exc:
        raise UsageError(str(exc)) from None


def cmd_chern(args):
    p = load_potential(args)
    cfg = quad_config(args)
    if args.which == "c2":
        res = inst.chern2(p, "SD", cfg)
    else:
        res = vx.chern1(p, cfg, args.model)
    checks = [{"name": f"{args.which}_converged", "value": res.value,
               "error_estimate": res.error_estimate, "tol": cfg.tol, "pass": res.converged}]
    if args.expected is not None:
        dev = abs(res.value - args.expected)
        checks.append({"name": f"{args.which}_expected", "value": res.value, "expected": args.expected,
                       "max": dev, "tol": args.tol_chern, "pass": bool(dev <= args.tol_chern)})
    if not args.quiet:
        print(f"{args.which} = {res.value:.6f} +- {res.error_estimate:.2e}"
              f"{'' if res.converged else '  (not converged)'}")
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["potential", "which", "value", "error_estimate", "converged"])
            w.writerow([json.dumps(_descriptor(p)), args.which, res.value, res.error_estimate,
                        int(res.converged)])
    report = _report(args, p, {"quadrature": res.to_dict(), "checks": checks,
                               "config": cfg.to_dict()})
    return _emit(args, report, converged=res.converged)


def cmd_sweep(args):
    from . import gauge_holonomy as gh
    cs = _floats(args.c.split(","), "--c")
    radii = _floats(args.radii.split(","), "--radii")
    if any(c == 0 for c in cs):
        raise UsageError("c = 0 is excluded")
    if any(not 0 < r < 1 for r in radii):
        raise UsageError("radii must lie in (0, 1)")
    cfg = quad_config(args)
    conv = {}

    def c1(c):
        res = vx.chern1(pot.DiscFamily(c), cfg)
        conv[c] = res.converged
        return res.value

    rows = gh.sweep_rows(cs, radii, None if args.no_c1 else c1)
    with open(args.out, "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=gh.SWEEP_COLUMNS)
        w.writeheader()
        w.writerows(rows)
    checks = []
    for c in cs:
        mine = [r for r in rows if r["c"] == c]
        last = min(mine, key=lambda r: r["r"])
        dist = abs(complex(last["re_hol"], last["im_hol"]) - gh.expected_limit(c))
        checks.append({"name": f"holonomy_limit_c={c}", "max": dist, "tol": args.tol_holonomy,
                       "pass": bool(dist <= args.tol_holonomy)})
        if not args.no_c1:
            dev = abs(mine[0]["c1"] - (c - 1))
            checks.append({"name": f"c1_c={c}", "max": dev, "tol": args.tol_chern,
                           "pass": bool(dev <= args.tol_chern)})
    if not args.quiet:
        print(f"wrote {len(rows)} rows to {args.out}")
    report = {"schema": SCHEMA, "command": "sweep", "argv": list(args.argv), "c": cs,
              "radii": radii, "checks": checks, "out": args.out}
    return _emit(args, report, converged=all(conv.values()))


def cmd_sample(args):
    p = load_potential(args)
    model = args.model or p.native_model or pot.HALFPLANE
    z = grid2(model, args.points, args.seed)
    rows = vx.field_rows(p, z, args.kind, model)
    out = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        w = csv.DictWriter(out, fieldnames=vx.FIELD_COLUMNS)
        w.writeheader()
        w.writerows(rows)
    finally:
        if args.out:
            out.close()
    return EXIT_PASS


def verdict(report):
    """pass iff every check is within its tolerance (recomputed from the numbers)."""
    ok = True
    for c in report.get("checks", []):
        if "max" in c:
            ok &= c["max"] <= c["tol"]
        else:
            ok &= bool(c.get("pass", False))
    return bool(ok)


def cmd_recheck(args):
    try:
        with open(args.report) as fh:
            report = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read report: {exc}") from None
    if report.get("schema") != SCHEMA:
        raise UsageError(f"unsupported report schema {report.get('schema')!r}")
    ok = verdict(report)
    if ok != report.get("pass"):
        print("verdict differs from the stored one", file=sys.stderr)
    print("PASS" if ok else "FAIL")
    return EXIT_PASS if ok else EXIT_FAIL


# ---------------------------------------------------------------------------
# reports

def _report(args, p, body):
    return {"schema": SCHEMA, "command": args.command, "argv": list(args.argv),
            "potential": _descriptor(p), **body}


def _emit(args, report, converged=True):
    report["pass"] = verdict(report)
    report["converged"] = bool(converged)
    text = json.dumps(report, indent=2, default=float)
    if args.json:
        with open(args.json, "w") as fh:
            fh.write(text + "\n")
    if not args.quiet:
        for c in report.get("checks", []):
            val = c.get("max", c.get("value"))
            print(f"  {c['name']:<28} {val:.3e}  tol {c['tol']:.1e}  {'ok' if c['pass'] else 'FAIL'}")
        print("PASS" if report["pass"] else "FAIL")
    if not converged:
        return EXIT_NOCONV
    return EXIT_PASS if report["pass"] else EXIT_FAIL


def build_parser():
    ap = argparse.ArgumentParser(prog="harmonic-ansatz",
                                 description="Instantons and hyperbolic vortices from harmonic potentials")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, potential=True):
        if potential:
            p.add_argument("--potential", help="colon shorthand, e.g. thooft:0:1 or disc-family:2.5")
            p.add_argument("--spec-file", help="JSON potential descriptor")
        p.add_argument("--json", help="write the JSON report here")
        p.add_argument("--quiet", action="store_true")

    def quad(p):
        p.add_argument("--deltas", help="comma-separated boundary cutoffs")
        p.add_argument("--tol", type=float, default=None, help="quadrature error target")
        p.add_argument("--max-levels", type=int, default=None)
        p.add_argument("--radius", type=float, default=None, help="outer radius for c2")
        p.add_argument("--panels", type=int, default=None)
        p.add_argument("--workers", type=int, default=None)

    v = sub.add_parser("verify", help="residuals of the self-duality or vortex equations")
    common(v)
    v.add_argument("--suite", choices=("auto", "4d", "2d"), default="auto")
    v.add_argument("--duality", choices=("sd", "asd", "SD", "ASD"), default="asd")
    v.add_argument("--kind", choices=vx.KINDS, default=vx.VORTEX)
    v.add_argument("--model", choices=pot.MODELS)
    v.add_argument("--points", type=int, default=200)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--tol-duality", type=float, default=TOL_DUALITY)
    v.add_argument("--tol-law", type=float, default=TOL_LAW)
    v.add_argument("--tol-vortex", type=float, default=TOL_VORTEX)
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("chern", help="c1 (vortex) or c2 (instanton) by quadrature")
    common(c)
    quad(c)
    c.add_argument("--which", choices=("c1", "c2"), default="c1")
    c.add_argument("--model", choices=pot.MODELS)
    c.add_argument("--expected", type=float)
    c.add_argument("--tol-chern", type=float, default=TOL_CHERN)
    c.add_argument("--csv", help="write a one-row CSV here")
    c.set_defaults(func=cmd_chern)

    s = sub.add_parser("sweep", help="loop holonomy and c1 over the singular family")
    common(s, potential=False)
    quad(s)
    s.add_argument("--c", default="1,1.5,2,2.5,3")
    s.add_argument("--radii", default="0.1,0.01,0.001")
    s.add_argument("--out", default="sweep.csv")
    s.add_argument("--no-c1", action="store_true")
    s.add_argument("--tol-chern", type=float, default=TOL_CHERN)
    s.add_argument("--tol-holonomy", type=float, default=2e-2)
    s.set_defaults(func=cmd_sweep)

    f = sub.add_parser("sample", help="write sampled vortex fields as CSV")
    f.add_argument("--potential")
    f.add_argument("--spec-file")
    f.add_argument("--kind", choices=vx.KINDS, default=vx.VORTEX)
    f.add_argument("--model", choices=pot.MODELS)
    f.add_argument("--points", type=int, default=50)
    f.add_argument("--seed", type=int, default=0)
    f.add_argument("--out")
    f.set_defaults(func=cmd_sample)

    r = sub.add_parser("recheck", help="recompute the verdict of a JSON report")
    r.add_argument("report")
    r.set_defaults(func=cmd_recheck)
    return ap


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_PASS
    args.argv = argv
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except QuadratureNotConverged as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOCONV
    except InvalidData as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except AnsatzError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
