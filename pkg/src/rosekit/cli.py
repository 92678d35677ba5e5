"""Command-line front end.

Exit status: 0 on success, 2 for bad input (diagnostic on stderr), 1 when a
harness reports a violated invariant.
"""

from __future__ import annotations

import argparse
import itertools
import json
import os
import re
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import abelian, modrep, roselab
from .chain import complex_from_json, complex_to_json, euler_characteristic, homology, reduce_mod_p
from .covers import CoverSpec, build_cover, deck_action_on_h1, subnormal_series
from .exactla import is_prime
from .grouppres import (
    CATALOG_NAMES,
    FinitePresentation,
    catalog,
    parse_epimorphism,
    presentation_complex,
    reidemeister_schreier,
)


class InputError(ValueError):
    pass


class InvariantViolation(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# input helpers


def _load_json(text: str, what: str):
    path = Path(text)
    if not text.lstrip().startswith(("{", "[")) and path.is_file():
        text = path.read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON for {what}: {exc}") from None


_CATALOG_ARG = re.compile(r"^([A-Za-z]+)(?::(.*))?$")


def _catalog_params(body: str) -> dict:
    params = {}
    for item in filter(None, (s.strip() for s in body.split(";"))):
        key, _, val = item.partition("=")
        if not _:
            raise InputError(f"catalog parameter {item!r} is not key=value")
        nums = [int(v) for v in val.split(",") if v.strip()]
        params[key.strip()] = tuple(nums) if key.strip() == "d" else nums[0]
    return params


def load_presentation(text: str) -> FinitePresentation:
    """A JSON file, inline JSON, or a catalog reference like ``free:n=2`` or ``abelian:r=1;d=2,4``."""
    m = _CATALOG_ARG.match(text.strip())
    if m and m.group(1) in CATALOG_NAMES and not Path(text).is_file():
        return catalog(m.group(1), **_catalog_params(m.group(2) or ""))
    return FinitePresentation.from_json(_load_json(text, "presentation"))


def load_complex(args):
    if getattr(args, "complex", None):
        return complex_from_json(_load_json(args.complex, "chain complex"))
    if getattr(args, "pres", None):
        return presentation_complex(load_presentation(args.pres))
    raise InputError("give --complex or --pres")


def parse_field(text: str) -> int | None:
    t = text.strip()
    if t in ("Q", "q", "0"):
        return None
    if t.startswith(("p=", "F_", "F")):
        t = t.split("=", 1)[1] if "=" in t else t.lstrip("F_")
    try:
        p = int(t)
    except ValueError:
        raise InputError(f"unrecognised field {text!r}; use Q or p=<prime>") from None
    if not is_prime(p):
        raise InputError(f"{p} is not prime")
    return p


def parse_prime(text: str) -> int:
    p = parse_field(text)
    if p is None:
        raise InputError("expected a prime, got Q")
    return p


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise InputError(f"expected comma-separated integers, got {text!r}") from None


def _threads() -> int:
    val = os.environ.get("ROSEKIT_THREADS", "")
    try:
        return max(1, int(val)) if val else min(8, os.cpu_count() or 1)
    except ValueError:
        raise InputError(f"ROSEKIT_THREADS must be an integer, got {val!r}") from None


def _emit(args, payload, text: str) -> None:
    if args.json:
        sys.stdout.write(json.dumps(payload, indent=2, ensure_ascii=False) + "\n")
    else:
        sys.stdout.write(text.rstrip("\n") + "\n")


def _cover_spec(P: FinitePresentation, epi_text: str) -> CoverSpec:
    phi = parse_epimorphism(epi_text, P.n)
    phi.validate(P)
    return CoverSpec.from_epimorphism(P, phi)


def _elementary_prime(spec: CoverSpec, p_arg: str | None) -> int:
    if p_arg:
        return parse_prime(p_arg)
    orders = set(spec.target.orders)
    if len(orders) == 1 and is_prime(next(iter(orders))):
        return orders.pop()
    raise InputError(f"target {spec.target} is not elementary abelian; pass --p")


# ---------------------------------------------------------------------------
# subcommands


def cmd_homology(args) -> int:
    C = load_complex(args)
    p = parse_field(args.field) if args.field else None
    H = homology(C if p is None else reduce_mod_p(C, p))
    payload = H.as_dict() | {"euler": euler_characteristic(C)}
    lines = ["degree\tbetti" + ("" if p is not None else "\ttorsion")]
    for i, b in enumerate(H.betti):
        extra = "" if p is not None else "\t" + (",".join(map(str, H.torsion[i])) or "-")
        lines.append(f"{i}\t{b}{extra}")
    lines.append(f"betti = {tuple(H.betti)}; {H}")
    _emit(args, payload, "\n".join(lines))
    return 0


def cmd_presentation(args) -> int:
    P = load_presentation(args.pres)
    if args.kernel:
        phi = parse_epimorphism(args.kernel, P.n)
        P = reidemeister_schreier(P, phi)
    K = presentation_complex(P)
    H = homology(K)
    payload = {
        "presentation": P.to_json(),
        "deficiency": P.deficiency,
        "homology": H.as_dict(),
        "complex": complex_to_json(K),
    }
    text = "\n".join([
        str(P),
        f"generators {P.n}, relators {P.m}, deficiency {P.deficiency}",
        f"homology: {H}",
    ])
    _emit(args, payload, text)
    return 0


def _deck_report(cc, p: int) -> dict | None:
    G = cc.group
    if len(G.orders) != 1 or G.orders[0] != p:
        return None
    T = deck_action_on_h1(cc, (1,), p)
    return {"generator": [1], "decomposition": list(modrep.decompose(T).multiplicities)}


def cmd_cover(args) -> int:
    P = load_presentation(args.pres)
    spec = _cover_spec(P, args.epi)
    if args.check == "theorem1":
        return _run_theorem1(args, spec)
    if args.check == "carlsson":
        return _run_carlsson(args, spec)
    cc = build_cover(spec)
    H = homology(cc.complex)
    payload = {"spec": spec.to_json(), "dims": list(cc.complex.dims), "homology": H.as_dict(),
               "euler": euler_characteristic(cc.complex)}
    lines = [f"cover of {P} by {spec.target}", f"cells {list(cc.complex.dims)}", f"homology: {H}"]
    if args.deck:
        p = _elementary_prime(spec, args.p)
        deck = _deck_report(cc, p)
        if deck is None:
            raise InputError("--deck needs a cyclic target Z_p")
        payload["deck_h1"] = deck
        lines.append("deck action on H_1(F_%d): l = %s" % (p, tuple(deck["decomposition"])))
    _emit(args, payload, "\n".join(lines))
    return 0


def _run_theorem1(args, spec: CoverSpec) -> int:
    p = _elementary_prime(spec, args.p)
    rep = roselab.verify_theorem1(spec, p)
    _emit(args, rep.as_dict(), str(rep))
    if not rep.ok:
        raise InvariantViolation("; ".join(rep.violations))
    return 0


def _run_carlsson(args, spec: CoverSpec) -> int:
    p = _elementary_prime(spec, args.p)
    rep = roselab.verify_carlsson(spec, p)
    _emit(args, rep.as_dict(), str(rep))
    if not rep.ok:
        raise InvariantViolation("; ".join(rep.violations))
    return 0


def cmd_carlsson(args) -> int:
    P = load_presentation(args.pres)
    return _run_carlsson(args, _cover_spec(P, args.epi))


def cmd_series(args) -> int:
    P = load_presentation(args.pres)
    p = parse_prime(args.p)
    stages = subnormal_series(P, p, args.depth)
    payload = {"p": p, "stages": [{"generators": s.presentation.n, "relators": s.presentation.m,
                                   "b1": s.b1, "b2": s.b2} for s in stages]}
    lines = ["stage\tgenerators\trelators\tb1\tb2"]
    lines += [f"{i}\t{s.presentation.n}\t{s.presentation.m}\t{s.b1}\t{s.b2}" for i, s in enumerate(stages)]
    _emit(args, payload, "\n".join(lines))
    return 0


def cmd_rose_check(args) -> int:
    C = load_complex(args)
    v = roselab.rose_check(C, parse_prime(args.p))
    _emit(args, v.as_dict(), str(v))
    return 0


def _sweep_groups(rmax: int, kmax: int, orders: list[int]):
    for r in range(rmax + 1):
        for k in range(kmax + 1):
            for d in itertools.combinations_with_replacement(sorted(set(orders)), k):
                if all(d[i + 1] % d[i] == 0 for i in range(k - 1)):
                    yield abelian.FgAbelianGroup(r, d)


def cmd_gap_table(args) -> int:
    primes = [parse_prime(str(x)) for x in _int_list(args.primes)]
    orders = _int_list(args.orders)
    if any(x < 2 for x in orders):
        raise InputError("cyclic orders must be at least 2")
    fields = [None] + primes
    jobs = [(A, f) for A in _sweep_groups(args.rmax, args.kmax, orders) for f in fields]
    with ThreadPoolExecutor(max_workers=_threads()) as pool:
        reports = list(pool.map(lambda job: abelian.gap(*job), jobs))
    cols = ["group", "r", "d", "field", "b1", "b2", "deficiency", "gap"]
    lines = ["\t".join(cols)]
    for rep in reports:
        lines.append("\t".join([str(rep.group), str(rep.group.r), ",".join(map(str, rep.group.d)) or "-",
                                roselab.field_label(rep.field), str(rep.b1), str(rep.b2),
                                str(rep.deficiency), str(rep.gap)]))
    _emit(args, [r.as_dict() for r in reports], "\n".join(lines))
    return 0


def _supplied_map(text: str | None) -> dict:
    out = {}
    for item in filter(None, (s.strip() for s in (text or "").split(","))):
        key, sep, val = item.partition("=")
        if not sep:
            raise InputError(f"supplied value {item!r} is not field=value")
        f = parse_field(key)
        out["Q" if f is None else f] = int(val)
    return out


def _fields(text: str) -> list:
    return ["Q" if f is None else f for f in (parse_field(t) for t in text.split(",") if t.strip())]


def _check_report(rep) -> None:
    if not rep.ok:
        raise InvariantViolation("; ".join(rep.violations))


def cmd_ledger(args) -> int:
    P = load_presentation(args.pres)
    rep = roselab.deficiency_ledger(P, _fields(args.fields), _supplied_map(args.supplied_b2))
    _emit(args, rep.as_dict(), str(rep))
    _check_report(rep)
    return 0


def cmd_screen(args) -> int:
    P = load_presentation(args.pres)
    A = abelian.parse_abelian(args.gamma) if args.gamma else None
    Q = load_presentation(args.gamma_pres) if args.gamma_pres else None
    supplied = _load_json(args.supplied, "supplied invariants") if args.supplied else {}
    if not isinstance(supplied, dict):
        raise InputError("supplied invariants must be a JSON object")
    rep = roselab.screen_d2_conditions(P, roselab.QuotientData(A, Q, supplied), _fields(args.fields))
    _emit(args, rep.as_dict(), str(rep))
    _check_report(rep)
    return 0


def cmd_modrep_table(args) -> int:
    primes = [parse_prime(str(x)) for x in _int_list(args.primes)]
    payload, lines = [], ["p\tk\t" + "\t".join(f"H^{j}" for j in range(args.max_degree + 1))]
    for p in primes:
        for k, dims in modrep.regular_cohomology_table(p, args.max_degree):
            payload.append({"p": p, "k": k, "dims": list(dims)})
            lines.append(f"{p}\t{k}\t" + "\t".join(map(str, dims)))
    _emit(args, payload, "\n".join(lines))
    return 0


def cmd_catalog(args) -> int:
    if not args.entry:
        _emit(args, list(CATALOG_NAMES), "\n".join(CATALOG_NAMES))
        return 0
    P = load_presentation(args.entry)
    _emit(args, P.to_json() | {"name": P.name}, f"{P.name}: {P}")
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="rosekit", description="Exact homology of 2-complexes and their abelian covers.")
    sub = ap.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.set_defaults(func=func)
        return sp

    pres_help = "presentation: JSON file, inline JSON, or catalog entry such as free:n=2"

    sp = add("homology", cmd_homology, "homology of a chain complex or presentation complex")
    sp.add_argument("--complex")
    sp.add_argument("--pres", help=pres_help)
    sp.add_argument("--field", help="Q or p=<prime>; integral homology when omitted")

    sp = add("presentation", cmd_presentation, "presentation summary and its complex")
    sp.add_argument("--pres", required=True, help=pres_help)
    sp.add_argument("--kernel", metavar="EPI", help="replace by the Reidemeister-Schreier presentation of ker EPI")

    sp = add("cover", cmd_cover, "regular abelian cover of a presentation complex")
    sp.add_argument("--pres", required=True, help=pres_help)
    sp.add_argument("--epi", required=True, help='e.g. "Z2: a->1, b->0" or "Z2xZ2: a->(1,0), b->(0,1)"')
    sp.add_argument("--check", choices=["theorem1", "carlsson"])
    sp.add_argument("--p")
    sp.add_argument("--deck", action="store_true", help="decompose the deck action on H_1 (cyclic Z_p target)")

    sp = add("series", cmd_series, "iterated index-p kernels")
    sp.add_argument("--pres", required=True, help=pres_help)
    sp.add_argument("--p", required=True)
    sp.add_argument("--depth", type=int, default=4)

    sp = add("rose-check", cmd_rose_check, "mod-p homology rose / acyclic test")
    sp.add_argument("--complex")
    sp.add_argument("--pres", help=pres_help)
    sp.add_argument("--p", required=True)

    sp = add("carlsson", cmd_carlsson, "betti lower bounds for a (Z_p)^r cover")
    sp.add_argument("--pres", required=True, help=pres_help)
    sp.add_argument("--epi", required=True)
    sp.add_argument("--p")

    sp = add("gap-table", cmd_gap_table, "gap invariants of abelian groups, TSV")
    sp.add_argument("--rmax", type=int, default=2)
    sp.add_argument("--kmax", type=int, default=2)
    sp.add_argument("--primes", default="2,3")
    sp.add_argument("--orders", default="2,3,4,6,12", help="allowed invariant factors")

    sp = add("ledger", cmd_ledger, "deficiency and betti ledger of a presentation")
    sp.add_argument("--pres", required=True, help=pres_help)
    sp.add_argument("--fields", default="Q,2,3")
    sp.add_argument("--supplied-b2", help="known b_2 of the group, e.g. Q=0,2=1")

    sp = add("screen", cmd_screen, "checklist for a candidate extension G -> Γ")
    sp.add_argument("--pres", required=True, help=pres_help)
    sp.add_argument("--gamma", help='abelian quotient, e.g. "Z^2" or "Z_2 + Z_4"')
    sp.add_argument("--gamma-pres", help="presentation of a nonabelian quotient")
    sp.add_argument("--supplied", help='JSON of supplied values, e.g. {"gap": {"Q": 1}}')
    sp.add_argument("--fields", default="Q")

    sp = add("modrep-table", cmd_modrep_table, "dim H^j(Z_p; R_k) table")
    sp.add_argument("--primes", default="2,3,5,7")
    sp.add_argument("--max-degree", type=int, default=6)

    sp = add("catalog", cmd_catalog, "list or expand catalog presentations")
    sp.add_argument("entry", nargs="?", help="e.g. swan:k=1 or Q:n=1;k=3;l=1")
    return ap


def run(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InvariantViolation as exc:
        print(f"invariant violated: {exc}", file=sys.stderr)
        return 1
    except AssertionError as exc:
        print(f"invariant violated: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
