"""Command-line front end: decompose one problem spec, run verification
sweeps, and manage the Weyl group cache.

Input and output are JSON with a versioned schema; every rational is a
"p/q" string.  Exit codes: 0 success, 1 verification found a counterexample,
2 invalid spec or arguments, 3 enumeration cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from . import __version__, cache, poles, verify
from .arrangement import WallSet, chamber_graph_dot, components
from .cartan import (
    CartanType,
    build_root_system,
    cartan_pairing,
    generate_weyl,
    DEFAULT_CAP,
)
from .constituents import DecompositionReport, build_report
from .errors import EnumerationCapError, GpsError, SpecError
from .levi import make_levi, relative_weyl_group
from .poles import InducingDatum

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_COUNTEREXAMPLE = 1
EXIT_SPEC = 2
EXIT_CAP = 3


def frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def parse_frac(s) -> Fraction:
    if isinstance(s, str):
        try:
            return Fraction(s)
        except (ValueError, ZeroDivisionError) as exc:
            raise SpecError(f"cannot parse rational {s!r}") from exc
    if isinstance(s, int):
        return Fraction(s)
    raise SpecError(f"rationals must be 'p/q' strings, got {s!r}")


class ProblemSpec:
    """Validated decomposition problem: Cartan label, Levi subset, inducing
    data, and the two hypothesis switches."""

    def __init__(self, cartan: str, levi: list[int], inducing: dict,
                 assume_regular: bool, assume_generic: bool):
        self.cartan = cartan
        self.levi = levi
        self.inducing = inducing
        self.assume_regular = assume_regular
        self.assume_generic = assume_generic

    @classmethod
    def from_json(cls, doc) -> "ProblemSpec":
        if not isinstance(doc, dict):
            raise SpecError("spec must be a JSON object")
        allowed = {"schema", "cartan", "levi", "inducing",
                   "assume_regular", "assume_generic"}
        unknown = set(doc) - allowed
        if unknown:
            raise SpecError(f"unknown spec fields rejected: {sorted(unknown)}")
        for key in ("schema", "cartan", "levi", "inducing"):
            if key not in doc:
                raise SpecError(f"spec is missing required field {key!r}")
        if doc["schema"] != SCHEMA_VERSION:
            raise SpecError(f"unsupported schema {doc['schema']!r}; expected {SCHEMA_VERSION}")
        CartanType.parse(str(doc["cartan"]))
        levi = doc["levi"]
        if not isinstance(levi, list) or not all(isinstance(i, int) for i in levi):
            raise SpecError("levi must be a list of 0-based simple-root indices")
        inducing = doc["inducing"]
        if not isinstance(inducing, dict):
            raise SpecError("inducing must be an object")
        if "S" in inducing:
            extra = set(inducing) - {"S", "omega"}
            if extra:
                raise SpecError(f"unknown inducing fields rejected: {sorted(extra)}")
            if not isinstance(inducing["S"], list):
                raise SpecError("inducing.S must be a list of coroot pairing rows")
        elif "poles" in inducing:
            extra = set(inducing) - {"omega", "poles"}
            if extra:
                raise SpecError(f"unknown inducing fields rejected: {sorted(extra)}")
            if "omega" not in inducing:
                raise SpecError("the pole form of inducing data needs omega")
            if not isinstance(inducing["poles"], dict):
                raise SpecError("inducing.poles must map orbit keys to positive rationals")
        else:
            raise SpecError("inducing must carry either S or omega+poles")
        if "omega" in inducing and not isinstance(inducing["omega"], list):
            raise SpecError("inducing.omega must be a list of 'p/q' strings")
        assume_regular = doc.get("assume_regular", False)
        assume_generic = doc.get("assume_generic", False)
        if not isinstance(assume_regular, bool) or not isinstance(assume_generic, bool):
            raise SpecError("assume_regular and assume_generic must be booleans")
        return cls(str(doc["cartan"]), list(levi), inducing,
                   assume_regular, assume_generic)

    def to_json(self) -> dict:
        inducing: dict = {}
        if "S" in self.inducing:
            inducing["S"] = [
                [frac_str(parse_frac(x)) for x in row] for row in self.inducing["S"]
            ]
            if "omega" in self.inducing:
                inducing["omega"] = [frac_str(parse_frac(x)) for x in self.inducing["omega"]]
        else:
            inducing["omega"] = [frac_str(parse_frac(x)) for x in self.inducing["omega"]]
            inducing["poles"] = {
                k: frac_str(parse_frac(v)) for k, v in sorted(self.inducing["poles"].items())
            }
        return {
            "schema": SCHEMA_VERSION,
            "cartan": self.cartan,
            "levi": list(self.levi),
            "inducing": inducing,
            "assume_regular": self.assume_regular,
            "assume_generic": self.assume_generic,
        }


def _coroot_rows(ld, rel_indices) -> list[list[str]]:
    """Each coroot as its pairing row against the emitted basis vectors."""
    rows = []
    for r in rel_indices:
        root = ld.rel_roots[r]
        rows.append([frac_str(cartan_pairing(b, root)) for b in ld.a_star_basis])
    return rows


def _match_coroot_rows(ld, rows) -> list[int]:
    """Inverse of _coroot_rows over the positive reflective coroots."""
    table = {}
    for r in ld.walls_universe:
        root = ld.rel_roots[r]
        key = tuple(cartan_pairing(b, root) for b in ld.a_star_basis)
        table[key] = r
    out = []
    for row in rows:
        key = tuple(parse_frac(x) for x in row)
        if key not in table:
            raise SpecError(
                "S entry is not a positive reflective coroot "
                f"(pairing row {list(map(str, key))}); the report lists the basis"
            )
        out.append(table[key])
    return out


def run_problem(spec: ProblemSpec, cap: int = DEFAULT_CAP,
                cache_dir: str | None = None):
    rs = build_root_system(CartanType.parse(spec.cartan))
    for i in spec.levi:
        if not 0 <= i < rs.rank:
            raise SpecError(f"levi index {i} out of range for rank {rs.rank}")
    wg = generate_weyl(rs, cap=cap, cache_dir=cache_dir)
    ld = make_levi(rs, spec.levi)
    rwg = relative_weyl_group(ld, wg)

    omega = None
    if "omega" in spec.inducing:
        coords = [parse_frac(x) for x in spec.inducing["omega"]]
        if len(coords) != ld.iota:
            raise SpecError(
                f"omega must have {ld.iota} coordinates in the emitted basis"
            )
        omega = ld.vec_from_basis(coords)
    if "S" in spec.inducing:
        walls = WallSet.make(ld, _match_coroot_rows(ld, spec.inducing["S"]))
        datum = InducingDatum(
            omega=omega, explicit_walls=walls.rel_indices,
            assume_regular=spec.assume_regular, assume_generic=spec.assume_generic,
        )
    else:
        pole_map = {k: parse_frac(v) for k, v in spec.inducing["poles"].items()}
        datum = InducingDatum(
            omega=omega, poles=pole_map,
            assume_regular=spec.assume_regular, assume_generic=spec.assume_generic,
        )
        walls = poles.derive_walls(ld, rwg, datum)
    report = build_report(ld, rwg, walls, datum)
    return ld, rwg, walls, report


def envelope_json(spec: ProblemSpec, ld, rwg, walls, report: DecompositionReport,
                  with_timing: bool, seconds: float) -> dict:
    def basis_coords(r: int) -> list[str]:
        return [frac_str(x) for x in ld.basis_coords(ld.rel_roots[r])]

    orbits = {}
    for k, orbit in enumerate(rwg.orbits()):
        orbits[f"orbit{k}"] = [
            basis_coords(r) for r in orbit if ld.rel_positive[r]
        ]
    levi_doc = {
        "cartan": ld.rs.cartan_type.label,
        "theta": list(ld.theta),
        "iota": ld.iota,
        "ambient_dim": ld.rs.ambient_dim,
        "a_star_basis": [[frac_str(x) for x in b] for b in ld.a_star_basis],
        "relative_positive_roots": [basis_coords(r) for r in ld.rel_positives],
        "relative_simples": [basis_coords(r) for r in ld.delta_m],
        "reflective_positive_roots": [basis_coords(r) for r in ld.reflective_positives],
        "reflective_simples": [basis_coords(r) for r in ld.reflective_simples],
        "orbits": orbits,
        "sizes": {
            "W_M": len(rwg.elements),
            "W_M0": len(rwg.reflection_subgroup),
            "W_M1": len(rwg.chamber_stabilizer),
        },
    }
    consts = []
    for c in report.constituents:
        consts.append({
            "id": c.cid,
            "sign_vector": c.sign_string,
            "chambers": c.component.n_chambers,
            "jacquet": [list(w.word) for w in c.jacquet],
            "jacquet_size": len(c.jacquet),
            "flags": {
                "square_integrable": c.square_integrable,
                "tempered": c.tempered,
                "generic": c.generic,
                "is_subrepresentation_witness": c.is_subrepresentation_witness,
            },
            "aubert_dual": c.aubert_dual,
        })
    decomposition = {
        "walls": _coroot_rows(ld, walls.rel_indices),
        "omega": (
            [frac_str(x) for x in ld.basis_coords(report.datum.omega)]
            if report.datum.omega is not None
            else None
        ),
        "length": report.length,
        "irreducible": report.irreducible,
        "constituents": consts,
        "notes": list(report.notes),
    }
    doc = {
        "schema": SCHEMA_VERSION,
        "tool": {"name": "gpseries", "version": __version__},
        "input": spec.to_json(),
        "levi": levi_doc,
        "decomposition": decomposition,
    }
    if with_timing:
        doc["timing"] = {"seconds": round(seconds, 6)}
    return doc


def render_text(doc: dict) -> str:
    levi = doc["levi"]
    dec = doc["decomposition"]
    lines = []
    lines.append(
        f"{levi['cartan']}  theta={levi['theta']}  iota={levi['iota']}  "
        f"|W_M|={levi['sizes']['W_M']}  |W_M0|={levi['sizes']['W_M0']}  "
        f"|W_M1|={levi['sizes']['W_M1']}"
    )
    lines.append(f"basis of a_M^*: {levi['a_star_basis']}")
    lines.append(
        f"walls: {dec['walls']}  length={dec['length']}  "
        f"irreducible={dec['irreducible']}"
    )
    lines.append("id  signs  chambers  |jacquet|  flags              dual")
    for c in dec["constituents"]:
        f = c["flags"]
        tags = "".join(
            (
                "D" if f["square_integrable"] else "-",
                "T" if f["tempered"] else ("?" if f["tempered"] is None else "-"),
                "G" if f["generic"] else ("?" if f["generic"] is None else "-"),
                "S" if f["is_subrepresentation_witness"] else "-",
            )
        )
        sign = c["sign_vector"] or "(none)"
        lines.append(
            f"{c['id']:<3} {sign:<6} {c['chambers']:<9} {c['jacquet_size']:<10} "
            f"{tags:<18} {c['aubert_dual']}"
        )
    for note in dec["notes"]:
        lines.append(f"note: {note}")
    return "\n".join(lines) + "\n"


def dump_json(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def cmd_decompose(args) -> int:
    t0 = time.monotonic()
    try:
        with open(args.spec) as fh:
            raw = json.load(fh)
    except OSError as exc:
        print(f"error: cannot read spec: {exc}", file=sys.stderr)
        return EXIT_SPEC
    except json.JSONDecodeError as exc:
        print(f"error: spec is not valid JSON: {exc}", file=sys.stderr)
        return EXIT_SPEC
    try:
        spec = ProblemSpec.from_json(raw)
        ld, rwg, walls, report = run_problem(
            spec, cap=args.cap, cache_dir=args.cache_dir
        )
    except EnumerationCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except SpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SPEC
    seconds = time.monotonic() - t0
    if args.format == "dot":
        comps = [c.component for c in report.constituents]
        sys.stdout.write(chamber_graph_dot(rwg, walls, comps))
        return EXIT_OK
    doc = envelope_json(spec, ld, rwg, walls, report,
                        with_timing=not args.no_timing, seconds=seconds)
    if args.format == "text":
        sys.stdout.write(render_text(doc))
    else:
        sys.stdout.write(dump_json(doc))
    return EXIT_OK


def cmd_verify(args) -> int:
    families = None
    if args.families:
        families = [f.strip().upper() for f in args.families.split(",") if f.strip()]
        for f in families:
            if f not in "ABCDEFG" or len(f) != 1:
                print(f"error: unknown family {f!r}", file=sys.stderr)
                return EXIT_SPEC
    try:
        report = verify.run_sweep(
            max_rank=args.max_rank, families=families, trials=args.trials,
            seed=args.seed, cap=args.cap, cache_dir=args.cache_dir,
        )
    except EnumerationCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    sys.stdout.write(dump_json(report.to_json()))
    return EXIT_OK if report.ok else EXIT_COUNTEREXAMPLE


def cmd_cache(args) -> int:
    cache_dir = args.cache_dir or cache.default_dir()
    did = False
    if args.clear:
        n = cache.clear(cache_dir)
        print(f"cleared {n} cache entries in {cache_dir}")
        did = True
    if args.rebuild:
        for label in args.rebuild:
            try:
                rs = build_root_system(label)
                generate_weyl(rs, cap=args.cap, cache_dir=None)
            except EnumerationCapError as exc:
                print(f"error: {exc}", file=sys.stderr)
                return EXIT_CAP
            except SpecError as exc:
                print(f"error: {exc}", file=sys.stderr)
                return EXIT_SPEC
            wg = generate_weyl(rs, cap=args.cap, cache_dir=None)
            path = cache.store(cache_dir, rs, wg)
            print(f"cached {label}: {len(wg.elements)} elements -> {path}")
        did = True
    if args.stat or not did:
        entries = cache.stat(cache_dir)
        print(f"cache dir: {cache_dir} ({len(entries)} entries)")
        for e in entries:
            label = e.get("label", "?")
            count = e.get("elements", "?")
            ok = "ok" if e.get("checksum_ok") else "CORRUPT"
            print(f"  {e['file']}: type={label} elements={count} bytes={e['bytes']} checksum={ok}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="gpseries",
        description="Exact decomposition of regular generalized principal series "
                    "from root-system combinatorics.",
    )
    p.add_argument("--cache-dir", default=None,
                   help="Weyl group cache directory (default: $RODIER_CACHE_DIR "
                        "or no caching for decompose/verify)")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP,
                   help="Weyl enumeration cap (default %(default)s)")
    sub = p.add_subparsers(dest="command", required=True)

    d = sub.add_parser("decompose", help="decompose one problem spec")
    d.add_argument("spec", help="path to a problem spec JSON file")
    d.add_argument("--format", choices=("json", "text", "dot"), default="json")
    d.add_argument("--no-timing", action="store_true",
                   help="omit the timing field (for byte-stable output)")
    d.set_defaults(func=cmd_decompose)

    v = sub.add_parser("verify", help="run the structural verification sweep")
    v.add_argument("--max-rank", type=int, default=4)
    v.add_argument("--families", default=None,
                   help="comma-separated family letters, e.g. A,B,D")
    v.add_argument("--trials", type=int, default=200,
                   help="randomized independence trials per type")
    v.add_argument("--seed", type=int, default=0)
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("cache", help="manage the on-disk Weyl group cache")
    c.add_argument("--rebuild", nargs="+", metavar="TYPE",
                   help="regenerate and store the given types, e.g. F4")
    c.add_argument("--clear", action="store_true")
    c.add_argument("--stat", action="store_true")
    c.set_defaults(func=cmd_cache)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.cache_dir is None and args.command != "cache":
        import os

        args.cache_dir = os.environ.get(cache.ENV_VAR)
    try:
        return args.func(args)
    except GpsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SPEC


if __name__ == "__main__":
    sys.exit(main())
