"""Command line runner: ``polydisk <subcommand> [options]``.

Every command prints one JSON document with the keys ``scenario``,
``verdicts``, ``diagnostics`` and ``versions``. Exit status is 0 when all
checks pass, 2 for invalid input, 3 when a check finds a violation and 4
when a verdict stays undecided.
"""

import argparse
import csv
import json
import math
import os
import platform
import re
import sys

import numpy as np
import scipy

from . import __version__
from . import curves as C
from . import limits as L
from . import regions as RG
from . import suite
from .boundary import SILOV_TOL, decompose
from .functions import SectorViolationError, UnknownNameError, gallery, gallery_names, gallery_schema
from .sampling import sample_disk
from .hyperbolic import (
    DimensionError,
    kobayashi_distance,
    kobayashi_metric,
    poincare_distance,
)

EXIT_OK, EXIT_USAGE, EXIT_FAIL, EXIT_UNDECIDED = 0, 2, 3, 4

_NUMBER = re.compile(r"^[0-9eE.+\-ij]+$")


class UsageError(ValueError):
    pass


# -- argument parsing -------------------------------------------------------


def parse_complex(s):
    """``'0.5'``, ``'-2i'``, ``'0.5+0.25i'`` and ``'1e-3-2j'`` style numbers."""
    t = s.strip().replace(" ", "")
    if not t or not _NUMBER.match(t):
        raise UsageError(f"not a complex number: {s!r}")
    t = t.replace("i", "j")
    if t in ("j", "+j", "-j"):
        t = t.replace("j", "1j")
    try:
        return complex(t)
    except ValueError:
        raise UsageError(f"not a complex number: {s!r}") from None


def parse_point(s):
    return np.array([parse_complex(p) for p in s.split(",")], dtype=complex)


def parse_params(s):
    """``a=0.8,b=0.4`` to a dict; integral values stay integers."""
    out = {}
    if not s:
        return out
    for item in s.split(","):
        if "=" not in item:
            raise UsageError(f"parameter {item!r} is not of the form key=value")
        k, v = item.split("=", 1)
        z = parse_complex(v)
        if z.imag == 0 and z.real.is_integer() and not re.search(r"[.eE]", v):
            out[k.strip()] = int(z.real)
        elif z.imag == 0:
            out[k.strip()] = z.real
        else:
            out[k.strip()] = z
    return out


def parse_floats(s):
    return [parse_complex(p).real for p in s.split(",")]


# -- report -----------------------------------------------------------------


def _clean(obj):
    """JSON-safe tree: non-finite floats become strings."""
    obj = L._jsonable(obj)
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [_clean(v) for v in obj]
    if isinstance(obj, float) and not math.isfinite(obj):
        return str(obj)
    return obj


def versions():
    return {"polydisk": __version__, "numpy": np.__version__, "scipy": scipy.__version__,
            "python": platform.python_version()}


def settings():
    return {
        "tolerances": {
            "limit": L.LIMIT_TOL, "vanishing": C.TOL_CONV, "window": C.WINDOW,
            "divergence_cap": C.DIVERGENCE_CAP, "silov": SILOV_TOL,
            "region_boundary": RG.BOUNDARY_TOL, "bound_slack": L.BOUND_SLACK,
            "anchor_snap": L.SNAP_TOL,
        },
        "schedule": {"kind": "dyadic", "eps": "2**-k", "kmin": 1, "kmax": C.default_depth(),
                     "family_kmin": 8, "family_kmax": 80},
    }


def _split_params(obj):
    """Scenario echo for a gallery object."""
    return {"label": obj.label, "params": obj.params}


class Report:
    def __init__(self, command, args):
        self.scenario = {"command": command, "seed": getattr(args, "seed", 0), **settings()}
        self.verdicts = {}
        self.diagnostics = {}
        self.series = {}
        self.status = EXIT_OK

    def fail(self):
        self.status = EXIT_FAIL

    def undecided(self):
        if self.status == EXIT_OK:
            self.status = EXIT_UNDECIDED

    def add_series(self, name, eps, values):
        self.series[name] = (np.asarray(eps, float), np.asarray(values, complex))

    def document(self):
        return _clean({"scenario": self.scenario, "verdicts": self.verdicts,
                       "diagnostics": self.diagnostics, "versions": versions()})

    def dumps(self):
        return json.dumps(self.document(), sort_keys=True, indent=2)

    def write_csv(self, path):
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["series", "eps", "re", "im"])
            for name in sorted(self.series):
                eps, vals = self.series[name]
                for e, v in zip(eps, vals):
                    w.writerow([name, repr(float(e)), repr(float(v.real)), repr(float(v.imag))])


# -- commands ---------------------------------------------------------------


def _map(args):
    params = parse_params(args.params)
    try:
        return gallery(args.function, **params)
    except (UnknownNameError, KeyError, TypeError, SectorViolationError, ValueError) as exc:
        raise UsageError(f"cannot build {args.function!r} with {params}: {exc}") from None


def _point(args, attr="point"):
    try:
        return decompose(parse_point(getattr(args, attr)))
    except (DimensionError, ValueError) as exc:
        raise UsageError(str(exc)) from None


def _check_arity(f, x):
    if f.arity != x.n:
        raise UsageError(f"{f.label} acts on dimension {f.arity}, point has {x.n} coordinates")


def cmd_dist(args, rep):
    z = parse_point(args.z)
    w = parse_point(args.w)
    if z.shape != w.shape:
        raise UsageError("points have different dimensions")
    if np.any(np.abs(z) >= 1) or np.any(np.abs(w) >= 1):
        raise UsageError("points must lie in the open polydisk")
    rep.scenario.update(z=z, w=w)
    rep.diagnostics["poincare"] = poincare_distance(z, w)
    rep.diagnostics["kobayashi"] = float(kobayashi_distance(z, w))
    if args.v:
        v = parse_point(args.v)
        if v.shape != z.shape:
            raise UsageError("tangent vector has the wrong dimension")
        rep.scenario["v"] = v
        rep.diagnostics["kobayashi_metric"] = float(kobayashi_metric(z, v))


def cmd_region(args, rep):
    x = _point(args)
    R, M = args.R, args.M
    if R <= 0 or M <= 1:
        raise UsageError("need R > 0 and M > 1")
    rep.scenario.update(point=x.to_dict(), R=R, M=M, samples=args.samples)
    if args.z:
        z = parse_point(args.z)
        if z.shape != x.coords.shape or np.any(np.abs(z) >= 1):
            raise UsageError("z must be a point of the open polydisk of the same dimension")
        rep.scenario["z"] = z
        hv, kv = float(RG.horosphere_value(x, z)), float(RG.koranyi_value(x, z))
        rep.verdicts["in_horosphere"] = bool(RG.classify(hv, R)[0])
        rep.verdicts["in_koranyi"] = bool(RG.classify(kv, M**2)[0])
        rep.diagnostics.update(horosphere_value=hv, koranyi_value=kv,
                               boundary_limsup=float(RG.boundary_limsup(x, z)))
    checks = args.check or []
    viol = 0
    if "sandwich" in checks:
        r = RG.check_sandwich(x, M, args.samples, seed=args.seed)
        rep.diagnostics["sandwich"] = r
        viol += r["violations"]
    if "trace" in checks:
        zeta = np.concatenate([1.0 - C.dyadic_schedule(40),
                               sample_disk(args.samples, args.seed)])
        r = RG.geodesic_trace_check(x, R, M, zeta)
        rep.diagnostics["trace"] = r
        viol += r["violations"]
    if "ball" in checks:
        r = RG.remark_2_3_inclusion(x, M, R, args.samples, seed=args.seed)
        rep.diagnostics["ball_complement"] = r
        viol += r["violations"]
    if checks:
        rep.verdicts["violations"] = viol
        if viol:
            rep.fail()


def cmd_curve(args, rep):
    params = parse_params(args.params)
    schema = C.curve_schema(args.name) if args.name in C.curve_names() else None
    if schema is None:
        raise UsageError(f"unknown curve {args.name!r}; see 'gallery list'")
    if args.point and "point" in schema:
        params["point"] = parse_point(args.point)
    try:
        cur = C.curve_gallery(args.name, **params)
    except (TypeError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    if args.point and "point" not in schema:
        x = _point(args)
        if x.n != cur.target.n or not np.allclose(x.coords, cur.target.coords, atol=1e-12):
            raise UsageError(f"{args.name} ends at {cur.target.coords.tolist()}, "
                             f"not at the requested point")
    rep.scenario.update(curve=cur.label, params=cur.params, point=cur.target.to_dict())
    try:
        cl = C.classify_curve(cur, strict=True)
    except C.ConsistencyError as exc:
        rep.verdicts["consistency"] = str(exc)
        rep.fail()
        return
    d = cl.to_dict()
    diag = d.pop("diagnostics")
    rep.verdicts.update(d)
    rep.diagnostics["tails"] = {k: v[-C.WINDOW:] for k, v in diag.items()}
    for k in ("special_kobayashi", "special_ratio", "stolz", "horosphere", "koranyi"):
        rep.add_series(k, diag["eps"], diag[k])
    expected = {k: v for k, v in cur.expected.items() if k in d}
    if expected:
        rep.diagnostics["expected"] = expected
        # a decided verdict that contradicts the known answer is a failure
        if any(d[k] != v and d[k] != "undecided" for k, v in expected.items()):
            rep.fail()
    if "undecided" in (cl.special, cl.restricted, cl.peculiar, cl.koranyi_eventually):
        rep.undecided()


def _julia(args, rep):
    f = _map(args)
    x = _point(args)
    _check_arity(f, x)
    if f.codomain != 1:
        raise UsageError(f"{f.label} is not scalar valued")
    rep.scenario.update(function=_split_params(f), point=x.to_dict())
    try:
        jr = L.julia_coefficient(f, x)
    except C.ConsistencyError as exc:
        rep.verdicts["consistency"] = str(exc)
        rep.fail()
        return f, x, None
    return f, x, jr


def cmd_julia(args, rep):
    f, x, jr = _julia(args, rep)
    if jr is None:
        return
    rep.verdicts.update(julia=jr.julia, alpha=jr.alpha, tau=jr.tau,
                        positivity_holds=jr.diagnostics["positivity_holds"])
    rep.diagnostics["julia"] = {k: v for k, v in jr.to_dict().items()
                                if k not in ("radial_ratio",)}
    rep.add_series("radial_ratio", jr.diagnostics["eps"], jr.radial_ratio)
    if not jr.diagnostics["positivity_holds"]:
        rep.fail()
    if jr.julia:
        radii = parse_floats(args.radii)
        inc = L.julia_inclusion_check(f, x, jr, radii, args.samples, args.seed)
        rep.diagnostics["inclusion"] = inc
        rep.verdicts["inclusion_violations"] = sum(r["violations"] for r in inc)
        if rep.verdicts["inclusion_violations"]:
            rep.fail()
    elif not np.isinf(jr.alpha):
        rep.undecided()


def cmd_jwc(args, rep):
    f, x, jr = _julia(args, rep)
    if jr is None:
        return
    try:
        r = L.jwc_suite(f, x, jr, seed=args.seed)
    except L.PreconditionError as exc:
        raise UsageError(str(exc)) from None
    d = r.to_dict()
    rep.verdicts.update(
        alpha=r.alpha, tau=r.tau,
        part_i=r.part_i.value,
        part_ii={j + 1: e.value for j, e in r.part_ii.items()},
        part_iii={k: e.value for k, e in r.part_iii.items()},
        part_iv={j + 1: e.value for j, e in r.part_iv.items()},
        part_v={j + 1: e.value for j, e in r.part_v.items()},
        b={j + 1: v for j, v in r.b.items()},
        sum_rule_residual=r.sum_rule_residual,
        findings=len(r.findings),
    )
    rep.diagnostics["jwc"] = d
    if r.findings:
        rep.fail()
    if any(e.verdict == "undecided" for e in
           [r.part_i, *r.part_ii.values(), *r.part_iii.values(), *r.part_v.values()]):
        rep.undecided()


def cmd_lindelof(args, rep):
    f = _map(args)
    x = _point(args)
    _check_arity(f, x)
    if f.codomain != 1:
        raise UsageError(f"{f.label} is not scalar valued")
    pparams = parse_params(args.pilot_params)
    schema = C.curve_schema(args.pilot) if args.pilot in C.curve_names() else None
    if schema is None:
        raise UsageError(f"unknown curve {args.pilot!r}")
    if "point" in schema:
        pparams["point"] = x.coords
    try:
        pilot = C.curve_gallery(args.pilot, **pparams)
    except (TypeError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    if pilot.target.n != x.n or not np.allclose(pilot.target.coords, x.coords, atol=1e-12):
        raise UsageError(f"pilot {args.pilot} does not end at the requested point")
    amps = parse_floats(args.k_bounded) if args.k_bounded else None
    rep.scenario.update(function=_split_params(f), point=x.to_dict(), pilot=pilot.label,
                        pilot_params=pilot.params, k_bounded=amps)
    try:
        out = L.lindelof_check(L.value_obs(f), x, pilot, k_bounded_amplitudes=amps,
                               seed=args.seed)
    except L.PreconditionError as exc:
        rep.verdicts.update(precondition=str(exc), applicable=False)
        rep.status = EXIT_USAGE
        return
    rep.verdicts.update(applicable=True, mode=out["mode"],
                        pilot_limit=out["pilot_limit"]["verdict"],
                        family_limit=out.get("family_limit", {}).get("verdict"),
                        findings=len(out["findings"]))
    rep.diagnostics["lindelof"] = out
    if out["findings"]:
        fam = out.get("family_limit", {}).get("verdict")
        if fam == "undecided":
            rep.undecided()
        else:
            rep.fail()
    elif out["pilot_limit"]["verdict"] == "undecided":
        rep.undecided()


def cmd_bounds(args, rep):
    f, x, jr = _julia(args, rep)
    if jr is None:
        return
    if not jr.julia:
        raise UsageError(f"{f.label} is not Julia at this point")
    amps = parse_floats(args.M)
    rep.scenario.update(amplitudes=amps, samples=args.samples)
    total = 0
    envelope = 0.0
    for M in amps:
        r = L.lemma_bound_checks(f, x, M, jr, n=args.samples, seed=args.seed)
        rep.diagnostics[f"M={M:g}"] = r
        total += r["violations"]
        envelope = max(envelope, L.derivative_envelope(f, x, M, jr, n=min(args.samples, 2000),
                                                       seed=args.seed))
    rep.verdicts.update(violations=total, derivative_envelope=envelope,
                        envelope_constant=suite.ENVELOPE_C,
                        envelope_holds=envelope <= suite.ENVELOPE_C)
    if total or envelope > suite.ENVELOPE_C:
        rep.fail()


def cmd_gallery(args, rep):
    rep.diagnostics["functions"] = {n: gallery_schema(n) for n in gallery_names()}
    rep.diagnostics["curves"] = {n: C.curve_schema(n) for n in C.curve_names()}


def cmd_paper_suite(args, rep):
    checks = suite.CHECKS
    if args.only:
        try:
            wanted = {int(k) for k in args.only.split(",")}
        except ValueError:
            wanted = set()
        if not wanted or not wanted <= set(range(1, len(checks) + 1)):
            raise UsageError(f"--only takes numbers between 1 and {len(checks)}")
        checks = [c for i, c in enumerate(checks, 1) if i in wanted]
    results = sorted((c() for c in checks), key=lambda r: int(r.name.split()[0]))
    rep.verdicts = {r.name: "pass" if r.passed else "fail" for r in results}
    rep.verdicts["assertions"] = sum(r.assertions for r in results)
    rep.verdicts["all_passed"] = all(r.passed for r in results)
    rep.diagnostics = {r.name: r.to_dict() for r in results}
    if not rep.verdicts["all_passed"]:
        rep.fail()


# -- entry point ------------------------------------------------------------


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--depth", type=int, default=None,
                        help="deepest dyadic step k (eps = 2**-k); "
                             "default from POLYDISK_SCHEDULE_DEPTH or 40")
    common.add_argument("--output", help="write the report here instead of stdout")
    common.add_argument("--csv", help="write (eps, value) tails here")

    fn = argparse.ArgumentParser(add_help=False)
    fn.add_argument("--function", required=True, help="gallery map name")
    fn.add_argument("--params", default="", help="e.g. a=0.8,b=0.4")
    fn.add_argument("--point", required=True, help="boundary point, e.g. 1,1 or 1,0.3i")

    p = argparse.ArgumentParser(prog="polydisk", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("dist", parents=[common], help="distances and metric values")
    s.add_argument("--z", required=True)
    s.add_argument("--w", required=True)
    s.add_argument("--v", help="tangent vector at z for the infinitesimal metric")
    s.set_defaults(run=cmd_dist)

    s = sub.add_parser("region", parents=[common], help="membership and inclusion checks")
    s.add_argument("--point", required=True)
    s.add_argument("--z")
    s.add_argument("--R", type=float, default=1.0)
    s.add_argument("--M", type=float, default=2.0)
    s.add_argument("--check", action="append", choices=["sandwich", "trace", "ball"])
    s.add_argument("--samples", type=int, default=10_000)
    s.set_defaults(run=cmd_region)

    s = sub.add_parser("curve", parents=[common], help="classify a gallery curve")
    s.add_argument("--name", required=True)
    s.add_argument("--params", default="")
    s.add_argument("--point")
    s.set_defaults(run=cmd_curve)

    s = sub.add_parser("julia", parents=[common, fn], help="Julia coefficient and inclusion")
    s.add_argument("--radii", default="0.5,1,2")
    s.add_argument("--samples", type=int, default=500)
    s.set_defaults(run=cmd_julia)

    s = sub.add_parser("jwc", parents=[common, fn], help="restricted K-limits (i)-(v)")
    s.set_defaults(run=cmd_jwc)

    s = sub.add_parser("lindelof", parents=[common, fn], help="propagate a pilot-curve limit")
    s.add_argument("--pilot", default="radial")
    s.add_argument("--pilot-params", default="")
    s.add_argument("--k-bounded", help="comma-separated amplitudes for the K-bounded variant")
    s.set_defaults(run=cmd_lindelof)

    s = sub.add_parser("bounds", parents=[common, fn], help="sampled derivative-side bounds")
    s.add_argument("--M", default="1.5,3,10")
    s.add_argument("--samples", type=int, default=10_000)
    s.set_defaults(run=cmd_bounds)

    s = sub.add_parser("gallery", parents=[common], help="list gallery maps and curves")
    s.add_argument("action", choices=["list"])
    s.set_defaults(run=cmd_gallery)

    s = sub.add_parser("paper-suite", parents=[common], help="run every acceptance scenario")
    s.add_argument("--only", help="comma-separated scenario numbers")
    s.set_defaults(run=cmd_paper_suite)
    return p


def run(argv=None, stdout=None):
    """Run one command; returns the exit status."""
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    old = os.environ.get("POLYDISK_SCHEDULE_DEPTH")
    if args.depth is not None:
        if args.depth < 10:
            print("polydisk: --depth must be at least 10", file=sys.stderr)
            return EXIT_USAGE
        os.environ["POLYDISK_SCHEDULE_DEPTH"] = str(args.depth)
    try:
        rep = Report(args.command, args)
        try:
            args.run(args, rep)
        except UsageError as exc:
            print(f"polydisk: {exc}", file=sys.stderr)
            return EXIT_USAGE
        text = rep.dumps()
        if args.output:
            with open(args.output, "w") as fh:
                fh.write(text + "\n")
        else:
            stdout.write(text + "\n")
        if args.csv:
            rep.write_csv(args.csv)
        return rep.status
    finally:
        if args.depth is not None:
            if old is None:
                os.environ.pop("POLYDISK_SCHEDULE_DEPTH", None)
            else:
                os.environ["POLYDISK_SCHEDULE_DEPTH"] = old


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
