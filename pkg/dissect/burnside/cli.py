from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from dissect.burnside.chain import dump_chain
from dissect.burnside.exceptions import Error, MatchingError, SignatureError, UnknownRelationError
from dissect.burnside.phi import phi_cube_linearize, verify_multifunctor
from dissect.burnside.planar import Matching, SliceWord, enumerate_matchings, load_diagram
from dissect.burnside.qgroup import (
    RELATIONS,
    check_relation,
    in_range_weights,
    solve_signs,
    verify_qgroup,
)
from dissect.burnside.report import SCHEMA_VERSION, Bounds
from dissect.burnside.signed import SignOracle, TableSigns, TrivialSigns, WeightSeq, verify_signed_multifunctor
from dissect.burnside.tqft import DiskElement, Ring, multiply_n

__all__ = ["RunConfig", "main"]

log = logging.getLogger(__name__)
log.setLevel(os.getenv("DISSECT_LOG_CLI", "CRITICAL"))

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_ERROR = 2

VERIFY_KINDS = ("phi", "signed", "qgroup")


@dataclass(frozen=True)
class RunConfig:
    """The validated parameters of one invocation."""

    command: str
    kind: Optional[str] = None
    n: int = 1
    weight: Optional[WeightSeq] = None
    ring: Ring = Ring.F2
    bounds: Bounds = Bounds()
    signs: Optional[Path] = None
    out: Optional[Path] = None
    seed: int = 0
    relations: tuple[str, ...] = tuple(RELATIONS)
    diagram: Optional[Path] = None
    elements: tuple[str, ...] = ()

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> RunConfig:
        if args.relations == "all":
            relations = tuple(RELATIONS)
        else:
            relations = tuple(name.strip() for name in args.relations.split(",") if name.strip())

        config = cls(
            command=args.command,
            kind=getattr(args, "kind", None),
            n=args.n,
            weight=WeightSeq.parse(args.weight) if args.weight is not None else None,
            ring=Ring(args.ring),
            bounds=args.bounds,
            signs=args.signs,
            out=args.out,
            seed=args.seed,
            relations=relations,
            diagram=args.diagram,
            elements=tuple(getattr(args, "elements", ())),
        )
        config.validate()
        return config

    def validate(self) -> None:
        if self.n < 0:
            raise MatchingError(f"--n must be non-negative, got {self.n}")

        unknown = [name for name in self.relations if name not in RELATIONS]
        if unknown:
            known = ", ".join(RELATIONS)
            raise UnknownRelationError(f"Unknown relations {', '.join(unknown)}, expected one of {known}")

        if self.command in ("kh", "export") and self.diagram is None:
            raise ValueError(f"{self.command} needs --diagram")
        if self.command == "export" and self.out is None:
            raise ValueError("export needs --out")
        if self.command == "multiply" and not self.elements:
            raise ValueError("multiply needs at least one element")
        if self.kind == "signed" and self.weight is None:
            raise ValueError("verify signed needs --weight")


def parse_element(key: str, n: int) -> DiskElement:
    """Parse a pair element written as ``a|b|dots``, e.g. ``2,1|2,1|1``."""
    parts = key.split("|")
    if len(parts) != 3:
        raise SignatureError(f"Elements look like A|B|DOTS, got {key!r}")
    a, b = Matching.from_key(parts[0]), Matching.from_key(parts[1])
    if a.n != n or b.n != n:
        raise MatchingError(f"{key!r} is not an element of the arc algebra on {2 * n} points")
    if parts[2] and not set(parts[2]) <= {"0", "1"}:
        raise SignatureError(f"Dots must be a bit string, got {parts[2]!r}")
    return DiskElement(a, b, tuple(int(bit) for bit in parts[2]))


def _diagram(config: RunConfig) -> Optional[SliceWord]:
    return load_diagram(config.diagram) if config.diagram is not None else None


def cmd_enum(config: RunConfig) -> tuple[int, dict]:
    matchings = enumerate_matchings(config.n)
    return EXIT_PASS, {"n": config.n, "count": len(matchings), "matchings": [a.to_json() for a in matchings]}


def cmd_multiply(config: RunConfig) -> tuple[int, dict]:
    elements = [parse_element(key, config.n) for key in config.elements]
    product = multiply_n(elements, config.ring)
    return EXIT_PASS, {"ring": config.ring.value, "factors": [x.key for x in elements], "product": product.to_json()}


def _oracle(config: RunConfig) -> SignOracle:
    return TableSigns.load(config.signs) if config.signs is not None else TrivialSigns()


def cmd_verify(config: RunConfig) -> tuple[int, dict]:
    if config.kind == "phi":
        report = verify_multifunctor(config.n, config.bounds, _diagram(config))
    elif config.kind == "signed":
        report = verify_signed_multifunctor(config.weight, _oracle(config), config.bounds)
    else:
        report = verify_qgroup(config.n, config.relations, config.ring)
    return EXIT_PASS if report.ok else EXIT_FAIL, report.to_json()


def cmd_kh(config: RunConfig) -> tuple[int, dict]:
    diagram = _diagram(config)
    cube = phi_cube_linearize(diagram)
    payload = {"diagram": diagram.key, "crossings": diagram.n_crossings, **cube.to_json()}
    return EXIT_PASS if cube.d_squared_zero() else EXIT_FAIL, payload


def cmd_qgroup_check(config: RunConfig) -> tuple[int, dict]:
    verdicts = {}
    for relation in config.relations:
        verdicts[relation] = {w.key: check_relation(relation, w, config.ring) for w in in_range_weights(config.n)}
    ok = all(all(table.values()) for table in verdicts.values())
    return EXIT_PASS if ok else EXIT_FAIL, {"ring": config.ring.value, "n": config.n, "ok": ok, "relations": verdicts}


def cmd_qgroup_signs(config: RunConfig) -> tuple[int, dict]:
    solutions = {}
    for relation in config.relations:
        table = {}
        for weight in in_range_weights(config.n):
            signs = solve_signs(relation, weight)
            table[weight.key] = list(signs) if signs is not None else None
        solutions[relation] = table
    ok = all(signs is not None for table in solutions.values() for signs in table.values())
    return EXIT_PASS if ok else EXIT_FAIL, {"n": config.n, "ok": ok, "signs": solutions}


def cmd_export(config: RunConfig) -> tuple[int, dict]:
    diagram = _diagram(config)
    cube = phi_cube_linearize(diagram)
    with open(config.out, "wb") as fh:
        size = dump_chain(cube, fh)
    return EXIT_PASS, {"diagram": diagram.key, "dims": list(cube.dims), "bytes": size}


DISPATCH = {
    "enum": cmd_enum,
    "multiply": cmd_multiply,
    "verify": cmd_verify,
    "kh": cmd_kh,
    "qgroup-check": cmd_qgroup_check,
    "qgroup-signs": cmd_qgroup_signs,
    "export": cmd_export,
}


def render(payload: dict) -> str:
    return json.dumps({"schema": SCHEMA_VERSION, **payload}, sort_keys=True, indent=2)


def run(config: RunConfig) -> tuple[int, str]:
    log.info("Running %s with %s", config.command, config)
    code, payload = DISPATCH[config.command](config)
    payload.setdefault("seed", config.seed)
    return code, render(payload)


def _bounds(value: str) -> Bounds:
    try:
        return Bounds.parse(value)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, default=1, help="number of arcs of the matchings (default: 1)")
    common.add_argument("--weight", help="weight sequence over 0, 1, 2, e.g. 1111")
    common.add_argument("--ring", choices=[ring.value for ring in Ring], default=Ring.F2.value)
    common.add_argument("--bounds", type=_bounds, default=Bounds(), help="sweep bounds INPUTS,VERTICES (default: 2,2)")
    common.add_argument("--signs", type=Path, help="sign table JSON file")
    common.add_argument("--out", type=Path, help="write the output here instead of stdout")
    common.add_argument("--seed", type=int, default=0, help="seed recorded in every report (default: 0)")
    common.add_argument("--relations", default="all", help="comma separated relation names or 'all'")
    common.add_argument("--diagram", type=Path, help="diagram file in the slice format")
    common.add_argument("-v", "--verbose", action="count", default=0)

    parser = argparse.ArgumentParser(prog="burnside", description="Burnside lifts of arc algebras and their checks.")
    commands = parser.add_subparsers(dest="command", required=True)
    commands.add_parser("enum", parents=[common], help="list the crossingless matchings on 2n points")
    multiply = commands.add_parser("multiply", parents=[common], help="multiply a chain of arc algebra elements")
    multiply.add_argument("elements", nargs="+", help="elements written as A|B|DOTS")
    verify = commands.add_parser("verify", parents=[common], help="run a verification sweep")
    verify.add_argument("kind", choices=VERIFY_KINDS)
    commands.add_parser("kh", parents=[common], help="cube of resolutions homology of a diagram")
    commands.add_parser("qgroup-check", parents=[common], help="check quantum group relations")
    commands.add_parser("qgroup-signs", parents=[common], help="solve relation signs over Z")
    commands.add_parser("export", parents=[common], help="write the cube complex of a diagram in binary form")
    return parser


def _configure_logging(verbosity: int) -> None:
    if not verbosity:
        return
    level = logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(format="%(name)s: %(message)s", stream=sys.stderr)
    for name in list(logging.root.manager.loggerDict):
        if name.startswith("dissect.burnside"):
            logging.getLogger(name).setLevel(level)


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _configure_logging(args.verbose)

    try:
        config = RunConfig.from_args(args)
    except (Error, ValueError) as e:
        print(f"burnside: error: {e}", file=sys.stderr)
        return EXIT_ERROR

    try:
        code, output = run(config)
    except (Error, OSError) as e:
        print(f"burnside: error: {e}", file=sys.stderr)
        return EXIT_ERROR

    if config.out is not None and config.command != "export":
        config.out.write_text(output + "\n")
    else:
        print(output)
    return code


if __name__ == "__main__":
    sys.exit(main())
