"""Command-line interface: reproducible runs over the library modules.

Artifacts are deterministic: identical configurations produce
byte-identical output apart from the timestamp, which is isolated on
the first header line.  CSV is RFC-4180 with a header row, '.' decimal
separator, 12 significant digits for reals; JSON is UTF-8 with sorted
keys.  LOWLYING_THREADS caps parallelism (all current computations are
single-threaded deterministic reductions, so the value only bounds
library thread pools).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from datetime import datetime, timezone

from . import density as density_mod
from . import predict as predict_mod
from .family import get_family, load_family
from .modarith import (MomentTable, closed_form_moments, nagao_estimate,
                       primes_upto)
from .sqsieve import cardinality_constant, enumerate_good, nu
from .tate import conductor
from .testfn import make_testfn


def _threads():
    val = os.environ.get("LOWLYING_THREADS", "")
    try:
        return max(1, int(val))
    except ValueError:
        return os.cpu_count() or 1


def fmt(x):
    """12 significant digits for reals, exact decimal for integers."""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    if isinstance(x, float):
        return f"{x:.12g}"
    return str(x)


def _stamp(out):
    out.write("# timestamp: "
              + datetime.now(timezone.utc).isoformat(timespec="seconds")
              + "\n")


def _emit_csv(out, header, rows):
    _stamp(out)
    w = csv.writer(out, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) for v in row])


def _emit_json(out, obj):
    _stamp(out)
    json.dump(obj, out, sort_keys=True, indent=2, default=fmt)
    out.write("\n")


def _family(args):
    name = args.family
    if os.path.exists(name):
        return load_family(name)
    return get_family(name)


CONDITIONALITY_NOTE = (
    "Interpretation assumes GRH for the explicit-formula framing and BSD "
    "for reading rank off the central point; ABC enters only when the "
    "abc_flag is set.")


# -- subcommands -----------------------------------------------------------

def cmd_moments(args, out):
    f = _family(args)
    rows = []
    tab = MomentTable.build(f, args.pmax)
    for p, (a1, a2) in sorted(tab.entries.items()):
        cf1, cf2 = closed_form_moments(f.label, p)
        match = (cf1 is not None and a1 == cf1
                 and (cf2 is None or a2 == cf2))
        rows.append([p, a1, a2,
                     "" if cf1 is None else cf1,
                     "" if cf2 is None else cf2, match])
    _emit_csv(out, ["p", "A1", "A2", "A1_closed", "A2_closed", "match"], rows)
    return 0


def cmd_rank(args, out):
    f = _family(args)
    X = args.X
    est = nagao_estimate(f, X)
    theta = sum(math.log(p) for p in primes_upto(X))
    _emit_json(out, {
        "family": f.label, "X": X, "nagao_estimate": est,
        "claimed_rank": f.rank, "theta_over_X": theta / X,
        "rank_scaled_target": f.rank * theta / X,
        "note": CONDITIONALITY_NOTE,
    })
    return 0


def cmd_conductor(args, out):
    f = _family(args)
    lo, hi = args.t_range
    rows = []
    for t in range(lo, hi + 1):
        if f.delta_at(t) == 0:
            continue
        C, complete = conductor(f, t)
        exp = (f.expected_conductor.eval(t)
               if f.expected_conductor is not None else "")
        rows.append([t, C, exp, exp != "" and C == exp, complete])
    _emit_csv(out, ["t", "C", "expected", "match", "complete"], rows)
    return 0


def cmd_sieve(args, out):
    f = _family(args)
    rep = enumerate_good(f, args.N, d_max=args.d_max, exact=args.exact)
    rows = [[d, v] for d, v in sorted(rep.nu_table.items())]
    _emit_csv(out, ["d", "nu"], rows)
    _emit_json(out, {
        "N": rep.N, "d_max": rep.d_max, "good_count": int(rep.good_t.size),
        "c_F_estimate": rep.c_F_estimate, "t_set_excess": rep.t_set_excess,
        "abc_flag": f.abc_flag,
    })
    return 0


def _report_dict(rep):
    return {
        "family": rep.family, "N": rep.N,
        "testfns": [list(t) for t in rep.testfns],
        "normalization": rep.normalization, "p_min": rep.p_min,
        "n_curves": rep.n_curves, "D1_emp": rep.D1_emp,
        "D2_emp": rep.D2_emp, "S1_avg": rep.S1_avg, "S2_avg": rep.S2_avg,
        "n_minus_used": rep.n_minus_used,
        "predictions": rep.predictions, "residuals": rep.residuals,
        "abc_flag": rep.abc_flag,
        "incomplete_conductors": rep.incomplete_conductors,
        "admissible": rep.admissible,
        "note": CONDITIONALITY_NOTE,
    }


def cmd_density(args, out):
    f = _family(args)
    g1 = make_testfn(args.testfn)
    mode = {"percurve": "PerCurve", "avglog": "AverageLogConductor"}[args.mode]
    if args.testfn2:
        g2 = make_testfn(args.testfn2)
        rep = density_mod.d2_empirical(f, args.N, g1, g2, mode=mode,
                                       p_min=args.p_min)
    else:
        rep = density_mod.d1_empirical(f, args.N, g1, mode=mode,
                                       p_min=args.p_min)
    _emit_json(out, _report_dict(rep))
    return 0


def cmd_predict(args, out):
    g1 = make_testfn(args.testfn)
    obj = {"testfn": [g1.kind, g1.sigma], "rank": args.rank}
    if args.testfn2:
        g2 = make_testfn(args.testfn2)
        obj["testfn2"] = [g2.kind, g2.sigma]
        obj["d2"] = {
            "SOeven": predict_mod.predict_d2("SOeven", g1, g2, args.rank),
            "O": predict_mod.predict_d2("O", g1, g2, args.rank),
            "SOodd": predict_mod.predict_d2("SOodd", g1, g2, args.rank),
            "Sp": predict_mod.predict_d2_sp(g1, g2, args.rank),
            "U": predict_mod.predict_d2_u(g1, g2),
        }
    else:
        obj["d1"] = {grp: predict_mod.predict_d1(grp, g1, args.rank)
                     for grp in predict_mod.GROUPS}
    _emit_json(out, obj)
    if args.plot_csv:
        import numpy as np

        with open(args.plot_csv, "w", encoding="utf-8", newline="") as fh:
            xs = np.linspace(-5.0, 5.0, 501)
            rows = [[x] + [float(predict_mod.w1_ac(grp, x))
                           for grp in predict_mod.GROUPS] for x in xs]
            _emit_csv(fh, ["x"] + [f"W1_{g}" for g in predict_mod.GROUPS],
                      rows)
    return 0


def cmd_verify_kernels(args, out):
    g1 = make_testfn(args.testfn)
    rows = []
    ok = True
    for grp in predict_mod.GROUPS:
        r = predict_mod.kernel_crosscheck(grp, g1)
        rows.append([grp, "1-level", r, r <= 1e-6])
        ok &= r <= 1e-6
    g2a = make_testfn(args.testfn2 or
                      f"{g1.kind}:{min(0.45, g1.sigma / 2)}")
    for grp in predict_mod.GROUPS:
        r = predict_mod.kernel_crosscheck(grp, g2a, g2a)
        rows.append([grp, "2-level", r, r <= 1e-4])
        ok &= r <= 1e-4
    _emit_csv(out, ["group", "level", "residual", "ok"], rows)
    return 0 if ok else 1


def cmd_report(args, out):
    f = _family(args)
    g1 = make_testfn(args.testfn)
    sieve_rep = enumerate_good(f, args.N)
    rep = density_mod.d1_empirical(f, args.N, g1, p_min=args.p_min)
    best = min(rep.residuals, key=lambda k: (rep.residuals[k], k))
    obj = {
        "config": {
            "family": args.family, "N": args.N, "testfn": args.testfn,
            "p_min": args.p_min,
        },
        "sieve": {"good_count": int(sieve_rep.good_t.size),
                  "c_F_estimate": sieve_rep.c_F_estimate},
        "density": _report_dict(rep),
        "closest_group": best,
        "conditionality": {
            "note": CONDITIONALITY_NOTE,
            "abc_flag": f.abc_flag,
        },
    }
    if args.testfn2:
        g2 = make_testfn(args.testfn2)
        rep2 = density_mod.d2_empirical(f, args.N, g1, g2, p_min=args.p_min)
        obj["density2"] = _report_dict(rep2)
    _emit_json(out, obj)
    return 0


# -- parser ----------------------------------------------------------------

def _t_range(s):
    lo, _, hi = s.partition(":")
    return int(lo), int(hi)


def build_parser():
    p = argparse.ArgumentParser(prog="lowlying")
    p.add_argument("--out", default="-", help="output path ('-' = stdout)")
    sub = p.add_subparsers(dest="cmd", required=True)

    def fam(sp):
        sp.add_argument("--family", required=True,
                        help="preset name or JSON config path")

    sp = sub.add_parser("moments")
    fam(sp)
    sp.add_argument("--pmax", type=int, default=199)
    sp.set_defaults(fn=cmd_moments)

    sp = sub.add_parser("rank")
    fam(sp)
    sp.add_argument("--X", type=int, default=10000)
    sp.set_defaults(fn=cmd_rank)

    sp = sub.add_parser("conductor")
    fam(sp)
    sp.add_argument("--t-range", type=_t_range, required=True,
                    metavar="LO:HI")
    sp.set_defaults(fn=cmd_conductor)

    sp = sub.add_parser("sieve")
    fam(sp)
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--d-max", type=int, default=None)
    sp.add_argument("--exact", action="store_true")
    sp.set_defaults(fn=cmd_sieve)

    sp = sub.add_parser("density")
    fam(sp)
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--testfn", default="fejer:0.3")
    sp.add_argument("--testfn2", default=None)
    sp.add_argument("--mode", choices=["percurve", "avglog"],
                    default="percurve")
    sp.add_argument("--p-min", dest="p_min", type=int, default=5)
    sp.set_defaults(fn=cmd_density)

    sp = sub.add_parser("predict")
    sp.add_argument("--testfn", default="fejer:0.45")
    sp.add_argument("--testfn2", default=None)
    sp.add_argument("--rank", type=int, default=0)
    sp.add_argument("--plot-csv", default=None)
    sp.set_defaults(fn=cmd_predict)

    sp = sub.add_parser("verify-kernels")
    sp.add_argument("--testfn", default="fejer:0.9")
    sp.add_argument("--testfn2", default=None)
    sp.set_defaults(fn=cmd_verify_kernels)

    sp = sub.add_parser("report")
    fam(sp)
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--testfn", default="fejer:0.3")
    sp.add_argument("--testfn2", default=None)
    sp.add_argument("--p-min", dest="p_min", type=int, default=5)
    sp.set_defaults(fn=cmd_report)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        from threadpoolctl import threadpool_limits
        threadpool_limits(limits=_threads())
    except ImportError:
        pass
    try:
        if args.out == "-":
            return args.fn(args, sys.stdout)
        buf = io.StringIO()
        status = args.fn(args, buf)
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(buf.getvalue())
        return status
    except (ValueError, KeyError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
