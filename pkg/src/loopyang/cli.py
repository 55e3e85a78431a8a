"""Command-line driver for the verification suites.

Verbs:

* ``loopyang verify semisimple`` -- the condition checks (A), (B), (C)
  for the constructed solution family over a symmetrizable Cartan datum,
  plus its classical-limit diagnostics;
* ``loopyang verify gln`` -- the n-block tower: abstract conditions,
  defining relations of both polynomial-operator realizations, closed
  forms of the realized series, and the intertwining sweep;
* ``loopyang verify drinfeld`` -- rank-one evaluation-ring checks:
  closed-form tables, the commuting square, and condition (B) evaluated
  on both sides;
* ``loopyang gauge roundtrip`` -- random round-trips of the gauge solver;
* ``loopyang cache purge`` -- clear the series cache.

Options may come from a flat ``key = value`` config file (``--config``);
explicit command-line flags override the file, which overrides built-in
defaults.  Every report embeds the fully resolved scenario.  Exit status
is 0 exactly when all checks pass.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import re
import sys
from concurrent.futures import ProcessPoolExecutor

DEFAULT_MAX_ORDER = 10

COMMON_DEFAULTS = {
    "format": "text",
    "jobs": 1,
    "cache_dir": None,
    "max_order": DEFAULT_MAX_ORDER,
}

LEAF_DEFAULTS = {
    "verify semisimple": {
        "type": "A1",
        "cartan": None,
        "order": 4,
        "k_window": None,
    },
    "verify gln": {
        "n": 2,
        "d": 1,
        "order": 4,
        "modes": 2,
        "k_window": 1,
        "degree": 2,
    },
    "verify drinfeld": {"m_max": 2, "r_window": 2, "order": 6},
    "gauge roundtrip": {"type": "A1", "order": 5, "seeds": 5},
    "cache purge": {},
}

INT_KEYS = {
    "order",
    "k_window",
    "n",
    "d",
    "modes",
    "degree",
    "m_max",
    "r_window",
    "seeds",
    "jobs",
    "max_order",
}


class CliError(Exception):
    pass


# ---------------------------------------------------------------------------
# Configuration.
# ---------------------------------------------------------------------------


def read_config(path):
    """Parse a flat ``key = value`` file; ``#`` starts a comment line."""
    values = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise CliError(f"{path}:{lineno}: expected 'key = value'")
            key, _, val = line.partition("=")
            values[key.strip().replace("-", "_")] = val.strip()
    return values


def resolve_scenario(command, args, config):
    """Defaults, then config-file values, then explicit flags."""
    merged = dict(COMMON_DEFAULTS)
    merged.update(LEAF_DEFAULTS[command])
    for key, val in config.items():
        if key not in merged:
            raise CliError(f"unknown config key: {key}")
        merged[key] = int(val) if key in INT_KEYS else val
    for key in merged:
        val = getattr(args, key, None)
        if val is not None:
            merged[key] = val
    if merged["jobs"] < 1:
        raise CliError("--jobs must be at least 1")
    order = merged.get("order")
    if order is not None and order > merged["max_order"]:
        raise CliError(
            f"order {order} exceeds the truncation cap "
            f"{merged['max_order']} (raise it with --max-order)"
        )
    merged["command"] = command
    return merged


def cache_dir_for(scn):
    path = scn.get("cache_dir") or os.environ.get("LOOPYANG_CACHE")
    if not path:
        path = os.path.join(
            os.environ.get("XDG_CACHE_HOME")
            or os.path.join(os.path.expanduser("~"), ".cache"),
            "loopyang",
        )
    return path


# ---------------------------------------------------------------------------
# Series cache for the solution family (affects timing only).
# ---------------------------------------------------------------------------


def _safe(label):
    return re.sub(r"[^A-Za-z0-9_-]", "_", str(label))


def _cache_key(label, order, sign, i, vname):
    s = "p" if sign > 0 else "m"
    return f"{_safe(label)}-N{order}-g{s}{i}-{vname}.txt"


def cache_load_family(gf, cache_dir, label, order, vnames=("u", "v")):
    if not cache_dir or not os.path.isdir(cache_dir):
        return
    from .series import GradedSeries

    for i in gf.y.datum.nodes:
        for sign in (+1, -1):
            for vn in vnames:
                path = os.path.join(
                    cache_dir, _cache_key(label, order, sign, i, vn)
                )
                if os.path.isfile(path):
                    with open(path) as fh:
                        gf._cache[(sign, i, vn)] = GradedSeries.from_text(
                            gf.y.ctx, fh.read()
                        )


def cache_save_family(gf, cache_dir, label, order):
    if not cache_dir:
        return
    os.makedirs(cache_dir, exist_ok=True)
    for (sign, i, vn), series in gf._cache.items():
        path = os.path.join(cache_dir, _cache_key(label, order, sign, i, vn))
        if not os.path.isfile(path):
            with open(path, "w") as fh:
                fh.write(series.to_text())


# ---------------------------------------------------------------------------
# Task bodies.  Each returns a list of CheckReport and is importable at
# module level so the process pool can dispatch it; running the same task
# list serially or in parallel produces identical reports.
# ---------------------------------------------------------------------------


def _kwindow_range(k_window, order):
    if k_window is None:
        return None
    return range(-k_window, k_window + 1)


def _task_semisimple(spec, label, order, k_window, cache_dir):
    from .cartan import cartan_load
    from .conditions import check_all
    from .phi import GFamily, degeneration_report
    from .report import CheckReport
    from .y0 import Y0Algebra

    y = Y0Algebra(cartan_load(spec), order)
    gf = GFamily(y, label=label)
    cache_load_family(gf, cache_dir, label, order)
    reports = check_all(gf, kwindow=_kwindow_range(k_window, order))
    for name, ok in sorted(degeneration_report(gf).items()):
        reports.append(
            CheckReport(
                check_id=f"SS-DEGEN[{label};{name}]",
                params={"type": label, "check": name, "N": order},
                passed=bool(ok),
            )
        )
    cache_save_family(gf, cache_dir, label, order)
    return reports


def _task_gln_conditions(n, order, k_window):
    from .gln import GlnAlgebra, gln_check_all

    ga = GlnAlgebra(n, order)
    return gln_check_all(ga, kwindow=_kwindow_range(k_window, order))


def _task_gln_yang_relations(n, d, dd, modes, degree):
    from .glnflag import YangFlagRep, yang_probe_polys, yang_relation_suite

    yr = YangFlagRep(n, d)
    probes = yang_probe_polys(yr, dd, degree)
    return yang_relation_suite(yr, dd, probes, modes)


def _task_gln_loop_relations(n, d, dd, modes, k_window, degree):
    from .glnflag import LoopFlagRep, loop_probe_polys, loop_relation_suite

    lr = LoopFlagRep(n, d)
    probes = loop_probe_polys(lr, dd, min(degree, 1))
    return loop_relation_suite(lr, dd, probes, modes, k_window)


def _task_gln_bridge(n, d, order):
    from .gln import GlnAlgebra
    from .glnbridge import GlnBridge, bridge_closed_form_suite

    br = GlnBridge(GlnAlgebra(n, order), d)
    return bridge_closed_form_suite(br)


def _task_gln_intertwine(n, d, order, k_window, degree):
    from .gln import GlnAlgebra
    from .glnbridge import GlnBridge, intertwine_suite

    br = GlnBridge(GlnAlgebra(n, order), d)
    return intertwine_suite(br, rwindow=k_window, degree=degree)


def _task_drinfeld(m, r_window, order):
    from .drinfeld import (
        check_condition_b_by_evaluation,
        check_evaluation_tables,
        check_square,
    )

    reports = list(check_evaluation_tables(m, r_window))
    for r in range(-r_window, r_window + 1):
        if r:
            reports.append(check_square(m, r, order))
    for k in range(-r_window, r_window + 1):
        reports.append(check_condition_b_by_evaluation(m, k, order))
    return reports


def _task_gauge_seed(spec, label, order, seed):
    from .cartan import cartan_load
    from .conditions import VarpiAlgebra, gauge_solve
    from .report import Timer, compare_report
    from .series import rat

    va = VarpiAlgebra(cartan_load(spec), order)
    rng = random.Random(seed)
    gens = [g for _, g in va.gen_items()]
    with Timer() as t:
        eta = va.ctx.zero()
        for _ in range(4):
            i, r = gens[rng.randrange(len(gens))]
            g = va.gen(i, r)
            eta = eta + g * va.ctx.var("h") * rat(rng.randint(-2, 2))
            eta = eta + g * g * va.ctx.var("h") * rat(rng.randint(-1, 1))
        xi = (-eta).exp()
        rbar = {
            j: (xi * va.lambda_apply(+1, j, xi, "u").inverse()).log()
            for j in va.datum.nodes
        }
        got = gauge_solve(va, rbar, "u")
    return [
        compare_report(
            f"GAUGE-RT[{label};seed={seed}]",
            {"type": label, "N": order, "seed": seed},
            got,
            eta,
            t,
        )
    ]


_TASKS = {
    "semisimple": _task_semisimple,
    "gln_conditions": _task_gln_conditions,
    "gln_yang_relations": _task_gln_yang_relations,
    "gln_loop_relations": _task_gln_loop_relations,
    "gln_bridge": _task_gln_bridge,
    "gln_intertwine": _task_gln_intertwine,
    "drinfeld": _task_drinfeld,
    "gauge_seed": _task_gauge_seed,
}


def _run_task(task):
    name, kwargs = task
    return _TASKS[name](**kwargs)


def run_tasks(tasks, jobs):
    if jobs <= 1 or len(tasks) <= 1:
        chunks = [_run_task(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(_run_task, tasks))
    return [r for chunk in chunks for r in chunk]


# ---------------------------------------------------------------------------
# Verb -> task list.
# ---------------------------------------------------------------------------


def build_tasks(scn):
    cmd = scn["command"]
    if cmd == "verify semisimple":
        spec = scn["cartan"] or scn["type"]
        label = scn["type"] if scn["cartan"] is None else scn["cartan"]
        return [
            (
                "semisimple",
                {
                    "spec": spec,
                    "label": label,
                    "order": scn["order"],
                    "k_window": scn["k_window"],
                    "cache_dir": cache_dir_for(scn),
                },
            )
        ]
    if cmd == "verify gln":
        from .glnflag import flag_partitions

        n, d = scn["n"], scn["d"]
        tasks = [
            (
                "gln_conditions",
                {"n": n, "order": scn["order"], "k_window": scn["k_window"]},
            )
        ]
        for dd in flag_partitions(n, d):
            tasks.append(
                (
                    "gln_yang_relations",
                    {
                        "n": n,
                        "d": d,
                        "dd": dd,
                        "modes": scn["modes"],
                        "degree": scn["degree"],
                    },
                )
            )
            tasks.append(
                (
                    "gln_loop_relations",
                    {
                        "n": n,
                        "d": d,
                        "dd": dd,
                        "modes": scn["modes"],
                        "k_window": scn["k_window"],
                        "degree": scn["degree"],
                    },
                )
            )
        tasks.append(("gln_bridge", {"n": n, "d": d, "order": scn["order"]}))
        tasks.append(
            (
                "gln_intertwine",
                {
                    "n": n,
                    "d": d,
                    "order": scn["order"],
                    "k_window": scn["k_window"],
                    "degree": scn["degree"],
                },
            )
        )
        return tasks
    if cmd == "verify drinfeld":
        return [
            (
                "drinfeld",
                {"m": m, "r_window": scn["r_window"], "order": scn["order"]},
            )
            for m in range(1, scn["m_max"] + 1)
        ]
    if cmd == "gauge roundtrip":
        return [
            (
                "gauge_seed",
                {
                    "spec": scn["type"],
                    "label": scn["type"],
                    "order": scn["order"],
                    "seed": seed,
                },
            )
            for seed in range(scn["seeds"])
        ]
    raise CliError(f"no tasks for {cmd}")


# ---------------------------------------------------------------------------
# Output.
# ---------------------------------------------------------------------------


def _sort_key(report):
    return (
        report.check_id,
        json.dumps({k: str(v) for k, v in sorted(report.params.items())}),
    )


def emit(reports, scn, stream):
    reports = sorted(reports, key=_sort_key)
    scenario = {
        k: ("" if v is None else str(v)) for k, v in sorted(scn.items())
    }
    if scn["format"] == "json":
        payload = {
            "scenario": scenario,
            "checks": [r.as_dict() for r in reports],
            "passed": sum(1 for r in reports if r.passed),
            "total": len(reports),
        }
        json.dump(payload, stream, indent=2, sort_keys=True)
        stream.write("\n")
    else:
        for k, v in scenario.items():
            stream.write(f"# {k} = {v}\n")
        from .report import emit_text

        emit_text(reports, stream)


# ---------------------------------------------------------------------------
# Argument parsing.
# ---------------------------------------------------------------------------


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="flat key = value option file")
    common.add_argument("--format", choices=("text", "json"))
    common.add_argument("--jobs", type=int, help="parallel worker processes")
    common.add_argument("--cache-dir", dest="cache_dir")
    common.add_argument(
        "--max-order",
        dest="max_order",
        type=int,
        help=f"truncation cap (default {DEFAULT_MAX_ORDER})",
    )

    parser = argparse.ArgumentParser(
        prog="loopyang",
        description="exact verification of the loop-to-completed-algebra "
        "homomorphism identities",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    pv = sub.add_parser("verify", help="run an identity-check suite")
    vsub = pv.add_subparsers(dest="target", required=True)

    ps = vsub.add_parser("semisimple", parents=[common])
    ps.add_argument("--type", choices=("A1", "A2", "B2", "G2"))
    ps.add_argument("--cartan", help="file with rank and Cartan matrix rows")
    ps.add_argument("--order", type=int)
    ps.add_argument("--k-window", dest="k_window", type=int)

    pg = vsub.add_parser("gln", parents=[common])
    pg.add_argument("--n", type=int)
    pg.add_argument("--d", type=int)
    pg.add_argument("--order", type=int)
    pg.add_argument("--modes", type=int)
    pg.add_argument("--k-window", dest="k_window", type=int)
    pg.add_argument("--degree", type=int)

    pd = vsub.add_parser("drinfeld", parents=[common])
    pd.add_argument("--m-max", dest="m_max", type=int)
    pd.add_argument("--r-window", dest="r_window", type=int)
    pd.add_argument("--order", type=int)

    pga = sub.add_parser("gauge", help="gauge-solver diagnostics")
    gsub = pga.add_subparsers(dest="target", required=True)
    pgr = gsub.add_parser("roundtrip", parents=[common])
    pgr.add_argument("--type", choices=("A1", "A2", "B2", "G2"))
    pgr.add_argument("--order", type=int)
    pgr.add_argument("--seeds", type=int)

    pc = sub.add_parser("cache", help="series cache maintenance")
    csub = pc.add_subparsers(dest="target", required=True)
    csub.add_parser("purge", parents=[common])

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    command = f"{args.verb} {args.target}"
    try:
        config = read_config(args.config) if args.config else {}
        scn = resolve_scenario(command, args, config)
        if command == "cache purge":
            path = cache_dir_for(scn)
            removed = 0
            if os.path.isdir(path):
                for name in sorted(os.listdir(path)):
                    if name.endswith(".txt"):
                        os.remove(os.path.join(path, name))
                        removed += 1
            sys.stdout.write(f"removed {removed} cached series from {path}\n")
            return 0
        reports = run_tasks(build_tasks(scn), scn["jobs"])
        emit(reports, scn, sys.stdout)
        return 0 if all(r.passed for r in reports) else 1
    except (CliError, OSError, ValueError) as exc:
        sys.stderr.write(f"loopyang: error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
