"""Command line interface: validate, classify, diagram, catalog, verify-corpus.

Exit codes: 0 pass, 1 semantic failure, 2 input error.  All output is
byte-deterministic (sorted node lists, canonical scalar strings).
"""

import argparse
import itertools
import json
import os
import sys

from .gq import ONE, nilpotent_exp, apply_matrix
from .hodge import (
    HodgeDatum, HodgeNumbers, HodgeFiltration, validate_phs, check_isotropy,
)
from .lmhs import (
    LmhsDatum, deligne_splitting, validate_lmhs, is_hodge_tate, is_r_split,
    disc_sample, adjoint_lmhs, reduced_limit, diagonal_levi, NonRSplit,
)
from . import classify as cls
from .classify import (
    minimal_types, minimal_witness, ht_gate, ht_plan, ht_construct,
    cp_orb_check, period_closed_check, principal_lmhs, principal_neutral_char,
    GateFailed, InfeasibleType,
)
from .diagrams import DiagramSpec, spec_from_dims, render

CATALOG_ENV = "HODGE_DEGEN_CATALOG"


def catalog_dir():
    override = os.environ.get(CATALOG_ENV)
    if override:
        return override
    return os.path.join(os.path.dirname(__file__), "catalog")


def catalog_names():
    d = catalog_dir()
    out = []
    for fn in sorted(os.listdir(d)):
        if fn.endswith(".json"):
            out.append(json.load(open(os.path.join(d, fn)))["name"])
    return out


def load_catalog_entry(name):
    d = catalog_dir()
    low = name.lower()
    for fn in sorted(os.listdir(d)):
        if not fn.endswith(".json"):
            continue
        entry = json.load(open(os.path.join(d, fn)))
        if entry["name"].lower() == low or \
                low in [a.lower() for a in entry.get("aliases", [])]:
            return entry
    raise KeyError(name)


def _triples(dims):
    return sorted([p, q, d] for (p, q), d in dims.items() if d)


def recompute_entry(entry):
    """Recompute the expected block of a catalog entry from its payload."""
    payload = entry["payload"]
    if entry["kind"] == "period-domain":
        L = LmhsDatum.from_json(payload)
        if not validate_lmhs(L)["ok"]:
            raise ValueError("payload fails validation")
        return {"V": {"nodes": _triples(deligne_splitting(L).dims())}}
    from .roots import (
        build_root_system, GradingElement, rep_weights, rep_bigrading,
        adjoint_bigrading, named_involution, orbit_dims, closed_orbit_criterion,
    )
    rs = build_root_system(payload["type"], payload["rank"])
    L = GradingElement(payload["L"])
    if "involution" in payload:
        inv = named_involution(rs, payload["involution"])
        dims = orbit_dims(rs, L, inv)
        return {"dim_R_orbit": dims["dim_R_orbit"],
                "dim_KR_orbit": dims["dim_KR_orbit"],
                "dim_C_dual": dims["dim_C_dual"],
                "closed": closed_orbit_criterion(rs, L, inv)}
    Y = GradingElement(payload["Y"]) if payload.get("Y") else None
    w = rep_weights(rs, payload["rep"])
    V = rep_bigrading(w, L, Y, payload["weight"])
    adj = adjoint_bigrading(rs, L, Y)
    return {"V": {"nodes": _triples(V)}, "adjoint": {"nodes": _triples(adj)}}


def load_datum(obj):
    """LmhsDatum if the JSON carries an \"N\" entry, else a pure HodgeDatum."""
    if "N" in obj:
        return LmhsDatum.from_json(obj)
    return HodgeDatum.from_json(obj)


def _emit(text, out):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_validate(args):
    try:
        with open(args.path) as fh:
            obj = json.load(fh)
        datum = load_datum(obj)
    except (OSError, ValueError, KeyError, TypeError) as e:
        print(json.dumps({"error": str(e)}))
        return 2
    if isinstance(datum, LmhsDatum):
        report = validate_lmhs(datum)
        ok = report["ok"]
    else:
        report = validate_phs(datum)
        ok = report["hr1"] and report["hr2"] and report["spans"]
        report["ok"] = ok
    print(json.dumps(report, sort_keys=True))
    return 0 if ok else 1


def _parse_h(args):
    h = tuple(int(x) for x in args.h.split(","))
    return HodgeNumbers(args.n, h)


def cmd_classify(args):
    try:
        hn = _parse_h(args)
    except (ValueError, TypeError) as e:
        print(json.dumps({"error": str(e)}))
        return 2
    n = args.n
    report = {"weight": n, "h": list(hn.h), "mode": args.mode}
    if args.mode == "minimal":
        types = minimal_types(n, hn)
        report["types"] = [
            {"kind": t.kind, "p_o": t.p_o, "q_o": t.q_o, "nodes": t.triples()}
            for t in types]
        if args.out:
            for i, t in enumerate(types):
                L = minimal_witness(t, n, hn)
                path = "%s.witness%d.json" % (args.out, i)
                with open(path, "w") as fh:
                    json.dump(L.to_json(), fh, sort_keys=True)
                report["types"][i]["witness"] = path
        print(json.dumps(report, sort_keys=True))
        return 0
    if args.mode == "hodge-tate":
        report["gate"] = ht_gate(n, hn)
        if not report["gate"]:
            print(json.dumps(report, sort_keys=True))
            return 1
        plan = ht_plan(n, hn)
        report["atomic_multiplicities"] = list(plan.d)
        L = ht_construct(n, hn)
        report["nodes"] = _triples(deligne_splitting(L).dims())
        if args.out:
            with open(args.out, "w") as fh:
                json.dump(L.to_json(), fh, sort_keys=True)
            report["witness"] = args.out
        print(json.dumps(report, sort_keys=True))
        return 0
    if args.mode == "closed-orbit":
        if args.input:
            try:
                with open(args.input) as fh:
                    L = LmhsDatum.from_json(json.load(fh))
            except (OSError, ValueError, KeyError, TypeError) as e:
                print(json.dumps({"error": str(e)}))
                return 2
        else:
            try:
                L = ht_construct(n, hn)
            except GateFailed as e:
                report["error"] = str(e)
                print(json.dumps(report, sort_keys=True))
                return 1
        bg = deligne_splitting(L)
        try:
            report["period_check"] = period_closed_check(bg, n)
        except cls.OddWeightNonHT as e:
            report["period_check"] = {"error": str(e),
                                      "consistent_with_closed_orbit": False}
        try:
            adj = adjoint_lmhs(L)
            report["adjoint_check"] = cp_orb_check(adj.I_g.dims())
        except NonRSplit:
            report["adjoint_check"] = None
        print(json.dumps(report, sort_keys=True))
        ok = report["period_check"].get("consistent_with_closed_orbit", False)
        return 0 if ok else 1
    print(json.dumps({"error": "unknown mode"}))
    return 2


def _spec_from_input(args):
    name_or_path = args.input
    if os.path.exists(name_or_path):
        with open(name_or_path) as fh:
            obj = json.load(fh)
        if "nodes" in obj:
            return DiagramSpec.from_json(obj)
        datum = load_datum(obj)
        if isinstance(datum, LmhsDatum):
            return spec_from_dims(deligne_splitting(datum).dims(), arrows=True)
        from .hodge import hodge_decomposition
        dims = {(p, q): s.dim for p, q, s in hodge_decomposition(datum)}
        return spec_from_dims(dims)
    entry = load_catalog_entry(name_or_path)  # raises KeyError on bad input
    which = args.part
    block = entry["expected"].get(which) or entry["expected"]["V"]
    return DiagramSpec([(p, q, d) for p, q, d in block["nodes"]])


def cmd_diagram(args):
    try:
        spec = _spec_from_input(args)
    except KeyError as e:
        print("unknown input %s; catalog names: %s"
              % (e, ", ".join(catalog_names())), file=sys.stderr)
        return 2
    except (OSError, ValueError, TypeError) as e:
        print("bad input: %s" % e, file=sys.stderr)
        return 2
    fmt = args.format if args.format != "json" else "ascii"
    _emit(render(spec, fmt), args.out)
    return 0


def cmd_catalog(args):
    if not args.name:
        for name in catalog_names():
            print(name)
        return 0
    low = args.name.lower()
    names = [n for n in catalog_names() if n.lower() == low
             or n.lower().startswith(low + "-row")]
    if not names:
        try:
            names = [load_catalog_entry(args.name)["name"]]
        except KeyError:
            print("unknown catalog entry %r; available: %s"
                  % (args.name, ", ".join(catalog_names())), file=sys.stderr)
            return 2
    status = 0
    for name in names:
        entry = load_catalog_entry(name)
        got = recompute_entry(entry)
        want = entry["expected"]
        if got == want:
            print("%s: match" % name)
        else:
            status = 1
            print("%s: MISMATCH" % name)
            for key in sorted(set(want) | set(got)):
                if want.get(key) != got.get(key):
                    print("  %s\n    expected: %s\n    got:      %s"
                          % (key, json.dumps(want.get(key), sort_keys=True),
                             json.dumps(got.get(key), sort_keys=True)))
    return status


# ---------------------------------------------------------------- corpus

def _symmetric_h(n, max_entry):
    half = (n + 1) // 2
    free = half + (1 if (n + 1) % 2 else 0)
    for combo in itertools.product(range(max_entry + 1), repeat=free):
        h = list(combo) + list(reversed(combo[:half]))
        if sum(h) == 0:
            continue
        yield HodgeNumbers(n, h)


def corpus_cases(limit=None):
    """Deterministic corpus: (case id, thunk returning an LmhsDatum)."""
    cases = []
    for n in range(1, 5):
        for hn in _symmetric_h(n, 2):
            for t in minimal_types(n, hn):
                cid = "minimal/n=%d,h=%s,%s(%d,%d)" % (
                    n, ",".join(map(str, hn.h)), t.kind, t.p_o, t.q_o)
                cases.append((cid, n, hn,
                              (lambda t=t, n=n, hn=hn:
                               minimal_witness(t, n, hn))))
    for n in range(1, 5):
        for hn in _symmetric_h(n, 3):
            if hn.dim > 8 or not ht_gate(n, hn):
                continue
            cid = "ht/n=%d,h=%s" % (n, ",".join(map(str, hn.h)))
            cases.append((cid, n, hn,
                          (lambda n=n, hn=hn: ht_construct(n, hn))))
    for fam, params in (("sp", (1, 2, 3, 4)), ("so_odd", (1, 2, 3, 4)),
                        ("so_even_mm", (2, 4)), ("so_even_m2m", (2, 4))):
        for p in params:
            cid = "principal/%s(%d)" % (fam, p)
            cases.append((cid, None, None,
                          (lambda fam=fam, p=p: principal_lmhs(fam, p))))
    if limit is not None:
        cases = cases[:limit]
    return cases


def check_case(cid, L, heavy=True):
    """Run every module invariant on one corpus element; returns failure id."""
    n = L.hodge.n
    report = validate_lmhs(L)
    if not report["ok"]:
        return cid + "/validate:" + ",".join(k for k, v in report.items() if not v)
    bg = deligne_splitting(L)
    if bg.total() != L.hodge.dim:
        return cid + "/splitting-total"
    # round trip through JSON
    L2 = LmhsDatum.from_json(json.loads(json.dumps(L.to_json())))
    if deligne_splitting(L2).dims() != bg.dims():
        return cid + "/json-roundtrip"
    if not disc_sample(L, (1, 2))["ok"]:
        return cid + "/disc-sample"
    if not is_r_split(bg):
        return cid  # r-split-only invariants below do not apply
    # reduced limit: exp(N)-fixed and first-relation isotropy
    F = reduced_limit(bg, n)
    d = HodgeDatum(L.hodge.dim, L.hodge.polarization, F)
    if not check_isotropy(d):
        return cid + "/reduced-limit-isotropy"
    E = nilpotent_exp(L.N, ONE)
    for p in range(n + 1):
        if apply_matrix(E, F.step(p)) != F.step(p):
            return cid + "/reduced-limit-exp-fixed"
    if not heavy:
        return cid
    a = adjoint_lmhs(L)
    if a.dim_g == 0:
        return cid
    adims = a.I_g.dims()
    if is_hodge_tate(bg):
        if not all(p == q for (p, q), d2 in adims.items() if d2):
            return cid + "/adjoint-hodge-tate"
        if not cp_orb_check(adims)["ok"]:
            return cid + "/adjoint-cp-orb"
    elif all(p == q for (p, q), d2 in adims.items() if d2):
        return cid + "/adjoint-hodge-tate-converse"
    try:
        diagonal_levi(a)
    except Exception as e:
        return cid + "/diagonal-levi:" + type(e).__name__
    return cid


def cmd_verify_corpus(args):
    cases = corpus_cases(args.limit)
    failures = []
    ran = 0
    for cid, n, hn, thunk in cases:
        try:
            L = thunk()
        except (InfeasibleType, GateFailed) as e:
            failures.append(cid + "/construct:" + str(e))
            break
        heavy = L.hodge.dim <= 6
        res = check_case(cid, L, heavy=heavy)
        ran += 1
        if res != cid:
            failures.append(res)
            break
    report = {"cases": ran, "ok": not failures}
    if failures:
        report["first_failure"] = failures[0]
    print(json.dumps(report, sort_keys=True))
    return 0 if not failures else 1


def main(argv=None):
    ap = argparse.ArgumentParser(
        prog="hodge-degen",
        description="Exact computation with degenerations of polarized "
                    "Hodge structures")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("validate", help="validate a (limiting) Hodge datum file")
    p.add_argument("path")
    p.add_argument("--center", type=int, default=None)
    p.set_defaults(fn=cmd_validate)

    p = sub.add_parser("classify", help="classify degenerations for (n, h)")
    p.add_argument("n", type=int)
    p.add_argument("h", help="comma separated Hodge numbers, top first")
    p.add_argument("--mode", choices=("minimal", "hodge-tate", "closed-orbit"),
                   default="minimal")
    p.add_argument("--input", default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_classify)

    p = sub.add_parser("diagram", help="render a (p,q) lattice diagram")
    p.add_argument("input", help="JSON file or catalog entry name")
    p.add_argument("--format", choices=("json", "ascii", "svg"), default="ascii")
    p.add_argument("--part", choices=("V", "adjoint"), default="V")
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_diagram)

    p = sub.add_parser("catalog", help="list or reproduce golden entries")
    p.add_argument("name", nargs="?", default=None)
    p.set_defaults(fn=cmd_catalog)

    p = sub.add_parser("verify-corpus", help="run all invariants on the corpus")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--limit", type=int, default=None)
    p.add_argument("--samples", default="1,2")
    p.set_defaults(fn=cmd_verify_corpus)

    args = ap.parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
