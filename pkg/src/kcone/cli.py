"""Command-line front end.

Subcommands: orbits, basis, acycle, pushforward, selftest.  All output is
deterministic: weights are serialized as integer lists in a fixed order and
rational bounds as exact "p/q" strings, so repeated runs (at any
parallelism setting) are byte-identical.

Exit codes: 0 success, 2 argument/parse errors (including unknown types and
missing orbit tables), 3 resource-cap errors, 4 bound-too-small errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .assocvar import (
    BoundTooSmallError,
    VirtualModule,
    associated_cycle,
    express_in_geometric_basis,
    module_to_kclass,
)
from .ktheory import (
    KClass,
    SubsetCapExceededError,
    gamma_class,
    kclass_from_terms,
    pushforward,
    skyscraper_class,
)
from .nilpotent import classify_orbits, closure_poset, grading_data
from .orbitalg import GeometricBasis, GeometricBasisVector, full_basis
from .repcalc import restrict_gamma_class, restrict_kclass
from .rootdata import build_root_datum

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_RESOURCE = 3
EXIT_BOUND = 4


@dataclass
class RunConfig:
    type_label: str
    bound_sq: Fraction = Fraction(0)
    orbit: Optional[int] = None
    format: str = "json"
    parallelism: int = 0

    def workers(self) -> int:
        if self.parallelism == 0:
            return min(8, os.cpu_count() or 1)
        return self.parallelism


def _fraction_arg(raw: str) -> Fraction:
    try:
        value = Fraction(raw)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {raw!r}")
    if value < 0:
        raise argparse.ArgumentTypeError("bound must be nonnegative")
    return value


def _weight_arg(raw: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in raw.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated integer vector: {raw!r}")


def _fmt_fraction(x: Fraction) -> str:
    return str(x)


def _kclass_json(kc: KClass) -> dict:
    return {
        "coeffs": [{"weight": list(w), "coef": c} for w, c in kc.coeffs],
        "rank": kc.rank,
    }


def _vector_json(v: GeometricBasisVector) -> dict:
    return {
        "orbit": v.orbit_id,
        "index": v.index,
        "certified": v.certified,
        "rank": v.rank,
        "combination": [{"levi_weight": list(w), "coef": c} for w, c in v.combination],
        "kclass": _kclass_json(v.kclass),
    }


def _emit(payload, fmt: str, text_lines) -> None:
    if fmt == "json":
        print(json.dumps(payload, indent=2))
    else:
        for line in text_lines():
            print(line)


def cmd_orbits(cfg: RunConfig) -> int:
    rd = build_root_datum(cfg.type_label)
    orbits = classify_orbits(rd)
    poset = closure_poset(rd, orbits)
    payload = [
        {
            "id": o.id,
            "label": o.label,
            "dynkin_marks": list(o.dynkin_marks),
            "dimension": o.dimension,
            "covers": list(poset.covers[o.id]),
        }
        for o in orbits
    ]

    def text_lines():
        yield f"nilpotent orbits of {cfg.type_label}"
        yield f"{'id':>3} {'label':<14} {'marks':<16} {'dim':>4}  covers"
        for rec in payload:
            marks = ",".join(str(m) for m in rec["dynkin_marks"])
            covers = ",".join(str(c) for c in rec["covers"]) or "-"
            yield f"{rec['id']:>3} {rec['label']:<14} {marks:<16} {rec['dimension']:>4}  {covers}"

    _emit(payload, cfg.format, text_lines)
    return EXIT_OK


def _basis_payload(basis: GeometricBasis, orbit_filter: Optional[int]) -> dict:
    strata = []
    for orbit in basis.orbits:
        if orbit_filter is not None and orbit.id != orbit_filter:
            continue
        strata.append(
            {
                "orbit": orbit.id,
                "label": orbit.label,
                "dimension": orbit.dimension,
                "vectors": [_vector_json(v) for v in basis.strata[orbit.id]],
            }
        )
    return {
        "type": basis.type_label,
        "bound_sq": _fmt_fraction(basis.bound_sq),
        "norm_constant": _fmt_fraction(basis.norm_constant),
        "span_window_sq": _fmt_fraction(basis.span_window_sq),
        "support_window_sq": _fmt_fraction(basis.support_window_sq),
        "strata": strata,
    }


def cmd_basis(cfg: RunConfig) -> int:
    rd = build_root_datum(cfg.type_label)
    basis = full_basis(rd, cfg.bound_sq, workers=cfg.workers())
    if cfg.orbit is not None and not any(o.id == cfg.orbit for o in basis.orbits):
        print(f"error: no orbit with id {cfg.orbit} in {cfg.type_label}", file=sys.stderr)
        return EXIT_USAGE
    payload = _basis_payload(basis, cfg.orbit)

    def text_lines():
        yield f"geometric basis for {cfg.type_label}, bound^2 = {payload['bound_sq']}"
        for stratum in payload["strata"]:
            yield f"orbit {stratum['orbit']} ({stratum['label']}, dim {stratum['dimension']}):"
            for v in stratum["vectors"]:
                flag = "certified" if v["certified"] else "provisional"
                terms = " ".join(
                    f"{t['coef']:+d}[{','.join(str(x) for x in t['weight'])}]"
                    for t in v["kclass"]["coeffs"]
                )
                yield f"  #{v['index']} rank {v['rank']} ({flag}): {terms}"

    _emit(payload, cfg.format, text_lines)
    return EXIT_OK


def _parse_module_file(path: str, rank: int) -> VirtualModule:
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise ValueError("module file must contain a JSON object")
    if "standards" in data:
        terms = []
        for entry in data["standards"]:
            coef = entry["coef"]
            lam_l = tuple(entry["lambda_l"])
            lam_r = tuple(entry["lambda_r"])
            if len(lam_l) != rank or len(lam_r) != rank:
                raise ValueError(f"weight length mismatch in {entry!r}; expected rank {rank}")
            if not isinstance(coef, int):
                raise ValueError(f"coefficient {coef!r} is not an integer")
            if coef:
                terms.append((coef, lam_l, lam_r))
        return VirtualModule(terms=tuple(terms))
    if "kclass" in data:
        raw = data["kclass"]
        coeffs = tuple(
            (tuple(item["weight"]), int(item["coef"])) for item in raw["coeffs"]
        )
        for w, _ in coeffs:
            if len(w) != rank:
                raise ValueError(f"weight length mismatch in {w!r}; expected rank {rank}")
        return VirtualModule(kclass=KClass(coeffs, raw.get("rank")))
    raise ValueError('module file needs a "standards" or "kclass" key')


def cmd_acycle(cfg: RunConfig, module_path: str) -> int:
    rd = build_root_datum(cfg.type_label)
    vm = _parse_module_file(module_path, rd.rank)
    kc = module_to_kclass(rd, vm)
    basis = full_basis(rd, cfg.bound_sq, workers=cfg.workers())
    coords = express_in_geometric_basis(rd, kc, basis)
    cycle = associated_cycle(coords, basis.poset)
    labels = {o.id: o.label for o in basis.orbits}
    payload = {
        "variety": list(cycle.variety),
        "cycle": [
            {"orbit": oid, "label": labels[oid], "multiplicity": mult}
            for oid, mult in cycle.components
        ],
    }

    def text_lines():
        if not cycle.components:
            yield "zero class: empty associated variety"
        for oid, mult in cycle.components:
            yield f"orbit {oid} ({labels[oid]}): multiplicity {mult}"

    _emit(payload, cfg.format, text_lines)
    return EXIT_OK


def cmd_pushforward(cfg: RunConfig, phi: tuple[int, ...]) -> int:
    rd = build_root_datum(cfg.type_label)
    orbits = classify_orbits(rd)
    if cfg.orbit is None or not any(o.id == cfg.orbit for o in orbits):
        print(f"error: --orbit must name an orbit id of {cfg.type_label}", file=sys.stderr)
        return EXIT_USAGE
    gd = grading_data(rd, orbits[cfg.orbit])
    kc = pushforward(rd, gd, phi)
    payload = {
        "type": cfg.type_label,
        "orbit": cfg.orbit,
        "phi": list(phi),
        "kclass": _kclass_json(kc),
    }

    def text_lines():
        terms = " ".join(
            f"{c:+d}[{','.join(str(x) for x in w)}]" for w, c in kc.coeffs
        )
        yield f"pushforward of {list(phi)} on orbit {cfg.orbit}: rank {kc.rank}: {terms}"

    _emit(payload, cfg.format, text_lines)
    return EXIT_OK


def cmd_selftest() -> int:
    failures = []

    def check(name: str, fn) -> None:
        try:
            fn()
        except Exception as exc:  # noqa: BLE001 - report and continue
            failures.append(name)
            print(f"FAIL {name}: {exc}")
        else:
            print(f"PASS {name}")

    def orbit_counts():
        for label, count in [("A1", 2), ("A2", 3), ("A3", 5), ("B2", 4), ("G2", 5)]:
            rd = build_root_datum(label)
            got = len(classify_orbits(rd))
            assert got == count, f"{label}: {got} orbits, expected {count}"

    def skyscraper_a2():
        rd = build_root_datum("A2")
        kc = kclass_from_terms(
            rd, [((0, 0), 1), ((1, 1), -2), ((3, 0), 1), ((0, 3), 1), ((2, 2), -1)]
        )
        assert skyscraper_class(rd, (0, 0)).coeffs == kc.coeffs

    def restriction_oracle():
        rd = build_root_datum("A1")
        assert restrict_gamma_class(rd, (0,), 16).entries == {(0,): 1, (2,): 1, (4,): 1}
        assert restrict_kclass(rd, skyscraper_class(rd, (1,)), 20) == {(1,): 1}

    def subregular_pushforward():
        rd = build_root_datum("A2")
        orbits = classify_orbits(rd)
        gd = grading_data(rd, orbits[1])
        kc = pushforward(rd, gd, (0, 0))
        assert kc.as_dict() == {(0, 0): 1, (1, 1): -1} and kc.rank == 1

    def a1_cycle():
        rd = build_root_datum("A1")
        basis = full_basis(rd, 16)
        kc = module_to_kclass(rd, VirtualModule(terms=((1, (0,), (0,)), (-1, (1,), (1,)))))
        cycle = associated_cycle(express_in_geometric_basis(rd, kc, basis), basis.poset)
        assert cycle.components == ((0, 1),)
        kc = gamma_class(rd, (0,))
        cycle = associated_cycle(express_in_geometric_basis(rd, kc, basis), basis.poset)
        assert cycle.components == ((1, 1),)

    check("orbit counts", orbit_counts)
    check("A2 skyscraper class", skyscraper_a2)
    check("A2 subregular pushforward", subregular_pushforward)
    check("A1 restriction oracle", restriction_oracle)
    check("A1 associated cycles", a1_cycle)
    return EXIT_OK if not failures else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kcone",
        description="Geometric bases of equivariant K-theory of the nilpotent "
        "cone, and associated cycles of virtual modules.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, bound=False):
        p.add_argument("type", help="Cartan type label, e.g. A2, B3, G2, A1xA1")
        if bound:
            p.add_argument(
                "--bound-sq",
                type=_fraction_arg,
                required=True,
                help="squared norm bound (rational, e.g. 16 or 33/2)",
            )
        p.add_argument("--format", choices=["json", "text"], default="json")
        p.add_argument(
            "--parallelism",
            type=int,
            default=0,
            help="worker threads for pushforward evaluation (0 = auto)",
        )

    p_orbits = sub.add_parser("orbits", help="classify nilpotent orbits")
    add_common(p_orbits)

    p_basis = sub.add_parser("basis", help="compute the geometric basis")
    add_common(p_basis, bound=True)
    p_basis.add_argument("--orbit", type=int, default=None, help="restrict output to one orbit id")

    p_acycle = sub.add_parser("acycle", help="associated cycle of a virtual module")
    add_common(p_acycle, bound=True)
    p_acycle.add_argument("--module", required=True, help="JSON module file")

    p_push = sub.add_parser("pushforward", help="pushforward of one Levi weight")
    add_common(p_push)
    p_push.add_argument("--orbit", type=int, required=True, help="orbit id")
    p_push.add_argument("--phi", type=_weight_arg, required=True, help="Levi weight, e.g. 1,0")

    sub.add_parser("selftest", help="run built-in consistency checks")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command == "selftest":
        return cmd_selftest()
    cfg = RunConfig(
        type_label=args.type,
        bound_sq=getattr(args, "bound_sq", Fraction(0)),
        orbit=getattr(args, "orbit", None),
        format=args.format,
        parallelism=args.parallelism,
    )
    try:
        if args.command == "orbits":
            return cmd_orbits(cfg)
        if args.command == "basis":
            return cmd_basis(cfg)
        if args.command == "acycle":
            return cmd_acycle(cfg, args.module)
        if args.command == "pushforward":
            return cmd_pushforward(cfg, args.phi)
    except BoundTooSmallError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BOUND
    except SubsetCapExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (ValueError, KeyError, TypeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    raise AssertionError(f"unhandled command {args.command}")


if __name__ == "__main__":
    sys.exit(main())
