"""Command-line entry point.

Each invocation writes exactly one JSON document to stdout; progress and
error messages go to stderr.

Exit codes: 0 success or no counterexample, 1 counterexample found or map
not null-homotopic or a failed check, 2 usage or input error, 3 counterexample
requested over a regular ring.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import complexes as cx
from . import serialization as ser
from .harness import (
    DEFAULT_SEED,
    SearchConfig,
    SquarefreeModulusError,
    canonical_counterexample,
    gh_search,
    koszul_gh_suite,
    target_sphere_search,
)
from .rings import DEFAULT_MAX_BRUTE, ring_report

log = logging.getLogger("ghzn")

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_REGULAR = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _emit(doc) -> None:
    sys.stdout.write(ser.dumps(doc) + "\n")


def _modulus(value: str) -> int:
    try:
        n = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"modulus must be an integer, got {value!r}")
    if n < 2:
        raise argparse.ArgumentTypeError(f"modulus must be >= 2, got {n}")
    if n >= 2**31:
        raise argparse.ArgumentTypeError("modulus must be < 2**31")
    return n


def _positive(value: str) -> int:
    try:
        v = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {value!r}")
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def _nonnegative(value: str) -> int:
    try:
        v = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {value!r}")
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {v}")
    return v


def _generators(value: str) -> list[int]:
    parts = [p.strip() for p in value.split(",") if p.strip()]
    if not parts:
        raise argparse.ArgumentTypeError("at least one generator is required")
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise argparse.ArgumentTypeError(f"generators must be integers, got {value!r}")


def cmd_ring(args) -> int:
    _emit(ring_report(args.n, args.max_brute).to_dict())
    return EXIT_OK


def cmd_example(args) -> int:
    try:
        report = canonical_counterexample(args.n)
    except SquarefreeModulusError as exc:
        log.error("%s", exc)
        _emit({"error": "regular_ring", "modulus": args.n, "message": str(exc)})
        return EXIT_REGULAR
    doc = ser.report_to_doc(report)
    if args.out is not None:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        f = report.witness.map
        files = {
            "complex": out / "complex.json",
            "map": out / "map.json",
            "report": out / "report.json",
        }
        files["complex"].write_text(ser.dumps(ser.complex_to_doc(f.source)) + "\n")
        files["map"].write_text(ser.dumps(ser.map_to_doc(f, "complex.json", "complex.json")) + "\n")
        files["report"].write_text(ser.dumps(doc) + "\n")
        doc = dict(doc, files={k: str(v) for k, v in files.items()})
        log.info("wrote %s", ", ".join(str(p) for p in files.values()))
    _emit(doc)
    return EXIT_OK


def cmd_gh_search(args) -> int:
    mode = "target_sphere" if args.target_sphere else "general"
    try:
        config = SearchConfig(args.n, args.seed, args.samples, args.max_degrees, args.max_rank, mode)
    except ValueError as exc:
        raise UsageError(str(exc))
    log.info("searching Z/%d: %d samples, seed %d, mode %s", args.n, args.samples, args.seed, mode)
    if args.target_sphere:
        report = target_sphere_search(config, jobs=args.jobs)
    else:
        report = gh_search(config, jobs=args.jobs)
    doc = ser.report_to_doc(report)
    if args.out is not None:
        Path(args.out).write_text(ser.dumps(doc) + "\n")
    _emit(doc)
    return EXIT_FAIL if report.found else EXIT_OK


def cmd_koszul(args) -> int:
    report = koszul_gh_suite(args.n, args.generators)
    _emit(report.to_dict())
    return EXIT_OK if report.structural_pass else EXIT_FAIL


def cmd_homology(args) -> int:
    x = ser.load_complex(args.file)
    _emit({str(i): list(fs) for i, fs in cx.homology(x).as_dict().items()})
    return EXIT_OK


def cmd_nullhomotopy(args) -> int:
    f = ser.load_map(args.file)
    h = cx.null_homotopy(f)
    if h is None:
        ob = cx.homotopy_obstruction(f)
        _emit({
            "null_homotopic": False,
            "certificate": "none",
            "obstruction": {
                "value": ob.value(),
                "pairing": {str(i): ser.matrix_to_doc(m) for i, m in sorted(ob.pairing.items())},
            },
        })
        return EXIT_FAIL
    _emit({
        "null_homotopic": True,
        "certificate": {str(i): ser.matrix_to_doc(m) for i, m in sorted(h.components.items())},
    })
    return EXIT_OK


def cmd_verify(args) -> int:
    report = ser.report_from_doc(ser.load_json(args.file))
    ok = report.witness.verify() if report.witness is not None else True
    _emit({"verdict": report.verdict, "witness_verified": ok if report.witness is not None else None})
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ghzn", description="Generating hypothesis experiments over Z/n.")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("ring", help="ring-theoretic report for Z/n")
    s.add_argument("n", type=_modulus)
    s.add_argument("--max-brute", type=_nonnegative, default=DEFAULT_MAX_BRUTE)
    s.set_defaults(func=cmd_ring)

    s = sub.add_parser("example", help="canonical counterexample over a non-squarefree n")
    s.add_argument("n", type=_modulus)
    s.add_argument("--out", help="directory for complex, map and report documents")
    s.set_defaults(func=cmd_example)

    s = sub.add_parser("gh-search", help="random search for homology-trivial essential maps")
    s.add_argument("n", type=_modulus)
    s.add_argument("--samples", type=_positive, default=500)
    s.add_argument("--seed", type=_nonnegative, default=DEFAULT_SEED)
    s.add_argument("--max-rank", type=_nonnegative, default=3)
    s.add_argument("--max-degrees", type=_positive, default=4)
    s.add_argument("--target-sphere", action="store_true", help="only maps into shifts of S")
    s.add_argument("--jobs", type=_positive, default=1)
    s.add_argument("--out", help="also write the report to this file")
    s.set_defaults(func=cmd_gh_search)

    s = sub.add_parser("koszul", help="structural checks for S/I")
    s.add_argument("n", type=_modulus)
    s.add_argument("generators", type=_generators, help='comma separated, e.g. "4,6"')
    s.set_defaults(func=cmd_koszul)

    s = sub.add_parser("homology", help="invariant factors of a complex document")
    s.add_argument("file")
    s.set_defaults(func=cmd_homology)

    s = sub.add_parser("nullhomotopy", help="decide null-homotopy of a map document")
    s.add_argument("file")
    s.set_defaults(func=cmd_nullhomotopy)

    s = sub.add_parser("verify", help="re-load a report and re-verify its witness")
    s.add_argument("file")
    s.set_defaults(func=cmd_verify)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        _emit({"error": "usage", "message": str(exc)})
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(message)s",
        stream=sys.stderr,
    )
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        _emit({"error": "usage", "message": str(exc)})
        return EXIT_USAGE
    except ser.DocumentError as exc:
        print(f"{parser.prog}: invalid input: {exc}", file=sys.stderr)
        _emit(exc.to_dict())
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
