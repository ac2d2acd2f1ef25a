"""Command-line front end.

Builds catalog groups, runs poset/complex/homology computations and the
theorem verifiers, and emits canonical JSON reports with the fixed schema
{tool_version, config, result, timing_ms, verdict}. Exit codes: 0 for a
pass (or an informational command), 1 for a theorem-check failure, 2 for
input or capacity errors. Results of computational commands are cached
content-addressed under the configured cache directory; wall-clock timing
goes to stderr so reports stay byte-identical.
"""

import argparse
import sys
import time
from pathlib import Path

from . import config, lie
from .catalog import CATALOG, _named_subgroup, build_group, list_catalog
from .complexes import order_complex
from .errors import PqError, UnsupportedSpec
from .groups import generated_subgroup
from .homology import homology, is_homology_spherical
from .posets import (
    all_p_subgroups_poset,
    bouc_poset,
    euler_mobius,
    euler_orbit_formula,
    quillen_poset,
)
from .reportio import ResultCache, canonical_json, plainify, report

POSET_KINDS = ("quillen", "bouc", "all")

VERIFIER_IDS = (
    "euler",
    "solomon-tits",
    "field-case",
    "no-field-case",
    "main",
    "spherical-bp",
    "cross-characteristic",
    "golden",
)

# catalog provenance words -> report vocabulary
PROVENANCE = {"literature": "paper", "computed": "derived-oracle"}

# verifier id, group spec, p, r
SUITE_DESK = [
    ("solomon-tits", "PSL(2,9)", 3, None),
    ("solomon-tits", "PSL(3,2)", 2, None),
    ("solomon-tits", "PSL(3,3)", 3, None),
    ("solomon-tits", "Sym(6)", 2, None),
    ("field-case", "PSigmaL(2,4)", 2, None),
    ("field-case", "PSigmaL(2,9)", 3, None),
    ("no-field-case", "PSL(3,2):graph", 2, None),
    ("no-field-case", "Sym(6)", 2, None),
    ("spherical-bp", "PSigmaL(2,4)", 2, None),
    ("euler", "Sym(5)", 2, None),
    ("euler", "PSigmaL(2,9)", 3, None),
    ("euler", "PSL(3,2):graph", 2, None),
    ("cross-characteristic", "Sym(6)", 3, 2),
    ("cross-characteristic", "Sym(6)", 5, 2),
    ("cross-characteristic", "PSL(3,2)", 3, 2),
]

SUITE_SLOW = [
    ("field-case", "PSigmaL(2,16)", 2, None),
    ("main", "PSL(3,4):frob(1):graph", 2, None),
]


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _require_prime(p, flag):
    if p is None:
        raise UnsupportedSpec(f"{flag} is required for this command")
    if not _is_prime(p):
        raise UnsupportedSpec(f"{flag} must be prime, got {p}")
    return p


def _resolve_annotation(g, path):
    """Resolve an --H/--Gdf value inside the built group's index space.

    "self" names the group; "sub(NAME)" uses the catalog's named-subgroup
    construction; "frob" regenerates the field part from the recorded
    Frobenius witness."""
    if path == "self":
        return g
    if path.startswith("sub(") and path.endswith(")"):
        return _named_subgroup(g.spec, g.root, g, g.designated_h, path[4:-1])
    if path == "frob":
        idx = g.witnesses.get("frob")
        if idx is None:
            raise UnsupportedSpec(f"{g.spec} has no Frobenius witness")
        h = g.designated_h
        return generated_subgroup(g.root, list(h.gens) + [idx])
    raise UnsupportedSpec(f"cannot resolve annotation {path!r}")


def _build(args):
    if not args.group:
        raise UnsupportedSpec("--group is required for this command")
    g = build_group(args.group)
    if args.h_path:
        g.designated_h = _resolve_annotation(g, args.h_path)
    if args.gdf_path:
        g.g_df = _resolve_annotation(g, args.gdf_path)
    return g


def _poset(kind, g, p):
    if kind == "quillen":
        return quillen_poset(g, p)
    if kind == "bouc":
        return bouc_poset(g, p)
    if kind == "all":
        return all_p_subgroups_poset(g, p)
    raise UnsupportedSpec(f"unknown poset kind {kind!r}")


def _profile_dict(prof):
    return {
        "betti": [[d, r] for d, r in prof.betti],
        "torsion": [[d, list(f)] for d, f in prof.torsion],
        "euler": prof.euler_reduced(),
    }


# -- command runners ----------------------------------------------------------


def _cmd_group(args, simplex_cap):
    g = _build(args)
    spec_text = str(g.spec)
    tags = {
        str(p): {"family": t.family, "d": t.d, "q": t.q, "rank": t.rank}
        for p, t in (g.tags or {}).items()
    }
    entry = next((e for e in CATALOG if e["spec"] == spec_text), None)
    golden = [
        {**row, "provenance": PROVENANCE[row["provenance"]]}
        for row in (entry["golden"] if entry else [])
    ]
    result = {
        "spec": spec_text,
        "order": g.order,
        "degree": g.root.degree,
        "tags": tags,
        "designated_h_order": g.designated_h.order if g.designated_h else None,
        "g_df_order": g.g_df.order if g.g_df else None,
        "golden": golden,
    }
    return result, "pass"


def _cmd_poset(args, simplex_cap):
    g = _build(args)
    p = _require_prime(args.p, "--p")
    x = _poset(args.kind, g, p)
    chi = euler_mobius(x)
    result = {
        "kind": args.kind,
        "p": p,
        "size": x.n,
        "height": x.height(),
        "euler_mobius": chi,
        "euler_orbit": euler_orbit_formula(x),
    }
    return result, "pass"


def _cmd_complex(args, simplex_cap):
    g = _build(args)
    p = _require_prime(args.p, "--p")
    k = order_complex(_poset(args.kind, g, p), cap=simplex_cap)
    result = {
        "kind": args.kind,
        "p": p,
        "f_vector": list(k.f_vector()),
        "dim": k.dim,
        "total_simplices": k.total_simplices(),
        "euler_reduced": k.euler_reduced(),
    }
    return result, "pass"


def _cmd_homology(args, simplex_cap):
    g = _build(args)
    p = _require_prime(args.p, "--p")
    x = _poset(args.kind, g, p)
    k = order_complex(x, cap=simplex_cap)
    prof = homology(k, cap=simplex_cap)
    result = {
        "kind": args.kind,
        "p": p,
        **_profile_dict(prof),
        "spherical_top": is_homology_spherical(k, k.dim, prof),
    }
    return result, "pass"


def _golden_checks(g, simplex_cap):
    spec_text = str(g.spec)
    entry = next((e for e in CATALOG if e["spec"] == spec_text), None)
    if entry is None:
        raise UnsupportedSpec(f"{spec_text} has no catalog entry with golden values")
    checks = []
    for row in entry["golden"]:
        quantity, p, expected = row["quantity"], row["p"], row["value"]
        if quantity == "euler_quillen":
            got = euler_mobius(quillen_poset(g, p))
        elif quantity == "euler_bouc":
            got = euler_mobius(bouc_poset(g, p))
        elif quantity == "solomon_tits_rank":
            x = bouc_poset(g, p)
            prof = homology(order_complex(x, cap=simplex_cap), cap=simplex_cap)
            got = prof.betti_number(x.height() - 1)
        elif quantity == "extended_top_rank":
            vr = lie.verify_field_case(g, p)
            got = vr.computed["top_rank"]
        else:
            raise UnsupportedSpec(f"unknown golden quantity {quantity!r}")
        checks.append({
            "quantity": quantity,
            "p": p,
            "expected": expected,
            "computed": got,
            "provenance": PROVENANCE[row["provenance"]],
            "ok": got == expected,
        })
    verdict = "pass" if all(c["ok"] for c in checks) else "fail"
    return {"checks": checks}, verdict


def _run_verifier(vid, g, p, r, simplex_cap):
    if vid == "euler":
        try:
            chi = lie.euler_prediction(g, p)
        except AssertionError as exc:
            return {"assertion": str(exc)}, "fail"
        return {"chi": chi, "provenance": "derived-oracle"}, "pass"
    if vid == "golden":
        return _golden_checks(g, simplex_cap)
    if vid == "cross-characteristic":
        if r is None:
            raise UnsupportedSpec("--r is required for cross-characteristic")
        vr = lie.verify_cross_characteristic(g, p, r)
    elif vid == "solomon-tits":
        vr = lie.verify_solomon_tits(g, p)
    elif vid == "field-case":
        vr = lie.verify_field_case(g, p)
    elif vid == "no-field-case":
        vr = lie.verify_no_field_case(g, p)
    elif vid == "main":
        vr = lie.verify_main(g, p)
    elif vid == "spherical-bp":
        vr = lie.verify_spherical_bp(g, p)
    else:
        raise UnsupportedSpec(f"unknown verifier {vid!r}")
    result = {
        "theorem": vr.theorem,
        "instance": vr.instance,
        "predicted": vr.predicted,
        "computed": vr.computed,
        "reason": vr.reason,
    }
    for key, value in vr.computed.items():
        result.setdefault(key, value)
    if vr.theorem == "solomon-tits" and vr.predicted:
        result["degree"] = vr.predicted["degrees"][0]
        result["rank"] = vr.computed["top_rank"]
    return result, vr.verdict


def _cmd_verify(args, simplex_cap):
    vid = args.verifier
    if vid not in VERIFIER_IDS:
        raise UnsupportedSpec(
            f"unknown verifier {vid!r}; known: {', '.join(VERIFIER_IDS)}"
        )
    g = _build(args)
    p = None if vid == "golden" else _require_prime(args.p, "--p")
    r = args.r
    if r is not None:
        _require_prime(r, "--r")
    return _run_verifier(vid, g, p, r, simplex_cap)


def _job_config(vid, spec, p, r, simplex_cap):
    return {
        "command": "verify",
        "verifier": vid,
        "kind": None,
        "group": spec,
        "H": None,
        "Gdf": None,
        "p": p,
        "r": r,
        "slow": False,
        "element_cap": config.ELEMENT_CAP,
        "simplex_cap": simplex_cap,
    }


def _cmd_suite(args, simplex_cap, cache):
    jobs = list(SUITE_DESK)
    for entry in CATALOG:
        if entry["golden"] and not entry.get("slow"):
            jobs.append(("golden", entry["spec"], None, None))
    if args.slow:
        jobs.extend(SUITE_SLOW)
        for entry in CATALOG:
            if entry["golden"] and entry.get("slow"):
                jobs.append(("golden", entry["spec"], None, None))
    rows = []
    for vid, spec, p, r in jobs:
        cfg = _job_config(vid, spec, p, r, simplex_cap)
        payload = cache.get("verify", cfg)
        if payload is None:
            result, verdict = _run_verifier(vid, build_group(spec), p, r, simplex_cap)
            payload = plainify({"result": result, "verdict": verdict})
            cache.put("verify", cfg, payload)
        rows.append({
            "verifier": vid, "group": spec, "p": p, "r": r,
            "verdict": payload["verdict"], "result": payload["result"],
        })
    counts = {}
    for row in rows:
        counts[row["verdict"]] = counts.get(row["verdict"], 0) + 1
    verdict = "fail" if counts.get("fail") else "pass"
    return {"jobs": rows, "counts": counts}, verdict


def _cmd_list(args, simplex_cap):
    rows = []
    for row in list_catalog():
        row = dict(row)
        if "golden" in row:
            row["golden"] = [
                {**g, "provenance": PROVENANCE[g["provenance"]]}
                for g in row["golden"]
            ]
        rows.append(row)
    return {"entries": rows}, "pass"


# -- argument parsing and dispatch -------------------------------------------


def _parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--group", help="group spec string, e.g. 'PSL(3,2):graph'")
    common.add_argument("--H", dest="h_path", metavar="PATH",
                        help="designated core override: self | sub(NAME) | frob")
    common.add_argument("--Gdf", dest="gdf_path", metavar="PATH",
                        help="field-part override: self | sub(NAME) | frob")
    common.add_argument("--p", type=int, help="characteristic prime")
    common.add_argument("--r", type=int, help="second prime (cross-characteristic)")
    common.add_argument("--slow", action="store_true",
                        help="include the slow suite instances")
    common.add_argument("--cache-dir", help="cache directory (default PQ_CACHE_DIR)")
    common.add_argument("--out", help="write the JSON report to this path")
    common.add_argument("--element-cap", type=int, help="group enumeration cap")
    common.add_argument("--simplex-cap", type=int, help="simplex count cap")

    top = argparse.ArgumentParser(prog="pq", description=__doc__)
    sub = top.add_subparsers(dest="command", required=True)
    sub.add_parser("group", parents=[common])
    for name in ("poset", "complex", "homology"):
        sp = sub.add_parser(name, parents=[common])
        sp.add_argument("kind", nargs="?", default="quillen", choices=POSET_KINDS)
    vp = sub.add_parser("verify", parents=[common])
    vp.add_argument("verifier", choices=VERIFIER_IDS)
    sub.add_parser("suite", parents=[common])
    sub.add_parser("list", parents=[common])
    return top


def _config_dict(args, simplex_cap):
    return {
        "command": args.command,
        "verifier": getattr(args, "verifier", None),
        "kind": getattr(args, "kind", None),
        "group": args.group,
        "H": args.h_path,
        "Gdf": args.gdf_path,
        "p": args.p,
        "r": args.r,
        "slow": bool(args.slow),
        "element_cap": config.ELEMENT_CAP,
        "simplex_cap": simplex_cap,
    }


def run(argv=None) -> int:
    args = _parser().parse_args(argv)
    t0 = time.monotonic()
    if args.element_cap is not None and args.element_cap <= 0:
        print("error: --element-cap must be positive", file=sys.stderr)
        return 2
    simplex_cap = args.simplex_cap if args.simplex_cap else config.SIMPLEX_CAP
    if simplex_cap <= 0:
        print("error: --simplex-cap must be positive", file=sys.stderr)
        return 2
    cache = ResultCache(args.cache_dir)
    cfg = _config_dict(args, simplex_cap)

    saved_cap = config.ELEMENT_CAP
    if args.element_cap is not None:
        config.ELEMENT_CAP = args.element_cap
        cfg["element_cap"] = args.element_cap
    try:
        if args.command == "suite":
            result, verdict = _cmd_suite(args, simplex_cap, cache)
        elif args.command in ("poset", "complex", "homology", "verify"):
            operation = args.command
            payload = cache.get(operation, cfg)
            if payload is None:
                runner = {
                    "poset": _cmd_poset,
                    "complex": _cmd_complex,
                    "homology": _cmd_homology,
                    "verify": _cmd_verify,
                }[operation]
                result, verdict = runner(args, simplex_cap)
                payload = plainify({"result": result, "verdict": verdict})
                cache.put(operation, cfg, payload)
            result, verdict = payload["result"], payload["verdict"]
        elif args.command == "group":
            result, verdict = _cmd_group(args, simplex_cap)
        else:
            result, verdict = _cmd_list(args, simplex_cap)
    except PqError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    finally:
        config.ELEMENT_CAP = saved_cap

    rep = report(cfg, plainify(result), verdict)
    data = canonical_json(rep)
    if args.out:
        Path(args.out).write_bytes(data)
    else:
        sys.stdout.buffer.write(data)
    ms = round((time.monotonic() - t0) * 1000)
    print(f"pq {args.command}: {verdict} in {ms} ms", file=sys.stderr)
    return 1 if verdict == "fail" else 0


def main():
    raise SystemExit(run())


if __name__ == "__main__":
    main()
