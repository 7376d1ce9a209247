"""Command line interface.

Exit codes: 0 when every requested check passes, 1 for bad input and 2 when
a verification fails. Output is JSON with rationals written as "p/q".
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import decomp, fan, kahler, maps
from .chow import Variant, chow_ring, mobius_report
from .errors import ChowError, ParseError
from .matroid import DEFAULT_VALIDATE_BOUND, Matroid, boolean, corpus, from_dict, graphic, to_dict, uniform


def jsonable(obj):
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, dict):
        return {str(k) if not isinstance(k, str) else k: jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, (frozenset, set)):
        return sorted((jsonable(v) for v in obj), key=repr)
    return obj


def _shorthand(spec: str) -> Matroid:
    named = corpus()
    if spec in named:
        return named[spec]
    kind, _, rest = spec.partition(":")
    try:
        if kind == "boolean":
            return boolean(int(rest))
        if kind == "uniform":
            n, d = rest.split(":")
            return uniform(int(n), int(d))
        if kind == "graphic":
            edges = [tuple(int(v) for v in e.split("-")) for e in rest.split(",") if e]
            return graphic(edges)
    except ValueError as exc:
        raise ParseError(f"bad matroid shorthand {spec!r}: {exc}") from None
    raise ParseError(f"unrecognised matroid {spec!r}")


def load_matroid(spec: str, validate_bound: int = DEFAULT_VALIDATE_BOUND) -> Matroid:
    """A JSON file path, inline JSON, a corpus name or a shorthand like uniform:4:2."""
    text = None
    if os.path.exists(spec):
        with open(spec, "rb") as fh:
            raw = fh.read()
        text = raw.decode("utf-8", errors="replace")
    elif spec.lstrip().startswith("{"):
        text = spec
    if text is None:
        return _shorthand(spec)
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", len(text[:exc.pos].encode("utf-8"))) from None
    if not isinstance(data, dict):
        raise ParseError("matroid JSON must be an object", 0)
    try:
        return from_dict(data, validate_bound=validate_bound)
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed matroid JSON: {exc}") from None


def _variants(choice: str) -> list[Variant]:
    if choice == "both":
        return [Variant.PLAIN, Variant.AUGMENTED]
    return [Variant(choice)]


def _parse_element(m: Matroid, raw: str | None):
    if raw is None:
        return None
    for e in m.elements:
        if str(e) == raw:
            return e
    m.bit(raw)  # raises ElementNotInGroundSet
    return raw


def cmd_info(m: Matroid, args) -> tuple[dict, bool]:
    lat = m.lattice
    return {
        "matroid": to_dict(m),
        "n": m.n,
        "rank": m.rank,
        "bases": len(m.bases),
        "flats_per_rank": [len(r) for r in lat.by_rank],
        "coloops": m.coloops(),
        "flats": [m.sorted_labels(f) for f in lat.flats],
    }, True


def cmd_chow(m: Matroid, args) -> tuple[dict, bool]:
    out = {}
    ok = True
    for v in _variants(args.variant):
        if v is Variant.PLAIN and m.n == 0:
            continue
        ring = chow_ring(m, v)
        a = ring.alpha()
        entry = {
            "dims": list(ring.dims),
            "basis": [ring.basis_labels(k) for k in range(ring.top + 1)],
            "degree_alpha_top": ring.degree(a ** ring.top),
            "pairing_determinants": [ring.pairing_matrix(k).det() for k in range(ring.top + 1)],
        }
        entry["pairings_nonsingular"] = all(d != 0 for d in entry["pairing_determinants"])
        ok &= entry["pairings_nonsingular"] and entry["degree_alpha_top"] == 1
        if v is Variant.AUGMENTED:
            mob = mobius_report(ring)
            entry["mobius"] = {k: mob[k] for k in mob if k != "failures"}
            ok &= mob["ok"]
        out[v.value] = entry
    return out, ok


def cmd_fan(m: Matroid, args) -> tuple[dict, bool]:
    out = {}
    for v in _variants(args.variant):
        out[v.value] = fan.fan_report(m, v is Variant.AUGMENTED)
    return out, all(r["ok"] for r in out.values())


def _deletion_job(payload):
    data, element, variant = payload
    m = from_dict(data, validate_bound=0)
    e = next(x for x in m.elements if x == element)
    return decomp.deletion_decomposition(m, e, variant).to_dict()


def _run_deletion(m: Matroid, args, requested: str) -> tuple[dict, bool]:
    element = _parse_element(m, args.element)
    elements = [element] if element is not None else list(m.elements)
    jobs = [(to_dict(m), e, v.value) for v in _variants(args.variant) for e in elements]
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_deletion_job, jobs))
    else:
        results = [decomp.deletion_decomposition(m, e, v).to_dict() for _, e, v in jobs]
    out = []
    for (_, e, v), r in zip(jobs, results):
        r["element"] = e
        applied = "d2" if r["decomposition"].startswith("D2") else "d1"
        if requested in ("d1", "d2") and applied != requested:
            r["notes"].append(f"requested {requested} but element {e} "
                              f"{'is' if applied == 'd2' else 'is not'} a coloop; applied {applied}")
        out.append(r)
    return {"decompositions": out}, all(r["ok"] for r in out)


def cmd_d3(m: Matroid, args) -> tuple[dict, bool]:
    out = [decomp.alpha_decomposition(m, v).to_dict() for v in _variants(args.variant)]
    return {"decompositions": out}, all(r["ok"] for r in out)


def cmd_kahler(m: Matroid, args) -> tuple[dict, bool]:
    out = {}
    for v in _variants(args.variant):
        if v is Variant.PLAIN and m.n == 0:
            continue
        out[v.value] = kahler.kahler_report(chow_ring(m, v))
    return out, all(r["ok"] for r in out.values())


def cmd_maps(m: Matroid, args) -> tuple[dict, bool]:
    out: dict = {"flat_maps": [], "lower_maps": [], "deletion": []}
    for v in _variants(args.variant):
        for f in m.lattice.proper(nonempty=v is Variant.PLAIN):
            r = maps.check_flat_maps(m, f, v)
            out["flat_maps"].append({"variant": v.value, "flat": m.sorted_labels(f), **r})
        if m.n >= 2:
            for e in m.elements:
                r = maps.check_deletion(m, e, v)
                out["deletion"].append({"variant": v.value, "element": e, **r})
    for f in m.lattice.flats:
        r = maps.check_lower_maps(m, f)
        out["lower_maps"].append({"flat": m.sorted_labels(f), **r})
    ok = all(r["ok"] for group in out.values() for r in group)
    return out, ok


def cmd_verify(m: Matroid, args) -> tuple[dict, bool]:
    what = args.what
    if what in ("d1", "d2"):
        return _run_deletion(m, args, what)
    table = {"d3": cmd_d3, "kahler": cmd_kahler, "fan": cmd_fan, "maps": cmd_maps}
    if what in table:
        return table[what](m, args)
    out = {}
    ok = True
    for name, fn in [("chow", cmd_chow), ("fan", cmd_fan), ("maps", cmd_maps),
                     ("d3", cmd_d3), ("kahler", cmd_kahler)]:
        out[name], good = fn(m, args)
        ok &= good
    if m.n >= 2:
        out["deletion"], good = _run_deletion(m, args, "all")
        ok &= good
    return out, ok


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="matroid-chow",
                                description="Exact Chow rings of matroids and their decompositions.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--matroid", required=True,
                        help="JSON file, inline JSON, corpus name (B3, U2,4, K4) or "
                             "shorthand boolean:N, uniform:N:D, graphic:0-1,1-2")
    common.add_argument("--variant", choices=["plain", "augmented", "both"], default="both")
    common.add_argument("--element", default=None)
    common.add_argument("--out", default=None, help="write the JSON report here")
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--validate-bound", type=int, default=DEFAULT_VALIDATE_BOUND,
                        help="check the exchange axiom exhaustively up to this many elements")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("info", parents=[common])
    sub.add_parser("chow", parents=[common])
    sub.add_parser("fan", parents=[common])
    v = sub.add_parser("verify", parents=[common])
    v.add_argument("what", choices=["d1", "d2", "d3", "kahler", "fan", "maps", "all"])
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        m = load_matroid(args.matroid, args.validate_bound)
        handler = {"info": cmd_info, "chow": cmd_chow, "fan": cmd_fan,
                   "verify": cmd_verify}[args.command]
        result, ok = handler(m, args)
    except (ChowError, ValueError) as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return 1
    payload = {"command": args.command, "ok": ok, "result": jsonable(result)}
    if args.command == "verify":
        payload["check"] = args.what
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if ok else 2


if __name__ == "__main__":
    sys.exit(main())
