"""JSON documents for complexes, maps and reports.

Matrices are stored row-major with explicit dimensions::

    {"rows": 1, "cols": 1, "entries": [2]}

A map document embeds its source and target complexes, or names a complex
document by a path relative to the map file.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import numpy as np

from .complexes import ChainComplex, ChainMap, InvalidComplexError, Obstruction, Violation, validate
from .harness import CounterexampleReport, SearchConfig, Witness
from .linalg import MatZn, Modulus

SCHEMA_VERSION = "1"

__all__ = [
    "SCHEMA_VERSION",
    "DocumentError",
    "matrix_to_doc",
    "matrix_from_doc",
    "complex_to_doc",
    "complex_from_doc",
    "map_to_doc",
    "map_from_doc",
    "report_to_doc",
    "report_from_doc",
    "dumps",
    "load_json",
    "load_complex",
    "load_map",
]


class DocumentError(ValueError):
    """A document that does not parse, or parses to an invalid object."""

    def __init__(self, message: str, violation: Violation | None = None):
        super().__init__(message)
        self.violation = violation

    def to_dict(self) -> dict:
        out: dict[str, Any] = {"error": "invalid_document", "message": str(self)}
        if self.violation is not None:
            out["violation"] = self.violation.to_dict()
        return out


def dumps(doc: Any) -> str:
    return json.dumps(doc, indent=2, sort_keys=True)


def load_json(path: str | Path) -> Any:
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise DocumentError(f"cannot read {path}: {exc}") from exc


def matrix_to_doc(m: MatZn) -> dict:
    return {"rows": m.rows, "cols": m.cols, "entries": m.a.reshape(-1).tolist()}


def matrix_from_doc(doc: Any, modulus: Modulus) -> MatZn:
    try:
        rows, cols = int(doc["rows"]), int(doc["cols"])
        entries = [int(x) for x in doc["entries"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise DocumentError(f"malformed matrix: {exc}") from exc
    if rows < 0 or cols < 0 or len(entries) != rows * cols:
        raise DocumentError(f"matrix declares {rows}x{cols} but has {len(entries)} entries")
    return MatZn(modulus, np.array(entries, dtype=np.int64).reshape(rows, cols))


def _check_version(doc: Any, kind: str):
    if not isinstance(doc, dict):
        raise DocumentError(f"{kind} document must be a JSON object")
    if str(doc.get("schema_version")) != SCHEMA_VERSION:
        raise DocumentError(f"unsupported schema_version {doc.get('schema_version')!r}")


def complex_to_doc(x: ChainComplex) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "complex",
        "modulus": x.n,
        "lo": x.lo,
        "hi": x.hi,
        "ranks": {str(i): x.rank(i) for i in x.degrees},
        "boundaries": {
            str(i): matrix_to_doc(x.d(i))
            for i in range(x.lo + 1, x.hi + 1)
            if x.d(i).rows and x.d(i).cols
        },
    }


def complex_from_doc(doc: Any) -> ChainComplex:
    _check_version(doc, "complex")
    try:
        mod = Modulus(int(doc["modulus"]))
        lo, hi = int(doc["lo"]), int(doc["hi"])
        ranks_doc = {int(k): int(v) for k, v in doc.get("ranks", {}).items()}
        bnd = {int(k): v for k, v in doc.get("boundaries", {}).items()}
    except (KeyError, TypeError, ValueError) as exc:
        raise DocumentError(f"malformed complex document: {exc}") from exc
    if hi < lo - 1:
        raise DocumentError(f"invalid degree window [{lo}, {hi}]")
    stray = [i for i in ranks_doc if not lo <= i <= hi and ranks_doc[i]]
    if stray:
        raise DocumentError(
            f"rank declared outside [{lo}, {hi}]",
            Violation("degree", stray[0], f"degree {stray[0]} lies outside the window"),
        )
    ranks = [ranks_doc.get(i, 0) for i in range(lo, hi + 1)]
    if any(r < 0 for r in ranks):
        raise DocumentError("negative rank")
    diffs = {i: matrix_from_doc(m, mod) for i, m in bnd.items()}
    x = ChainComplex(mod, lo, ranks, diffs, check=False)
    v = validate(x)
    if v is not None:
        raise DocumentError(v.message, v)
    return x


def map_to_doc(f: ChainMap, source: Any = None, target: Any = None) -> dict:
    """``source``/``target`` may be given as file references to embed instead of the complexes."""
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "map",
        "source": source if source is not None else complex_to_doc(f.source),
        "target": target if target is not None else complex_to_doc(f.target),
        "degree": f.degree,
        "components": {str(i): matrix_to_doc(m) for i, m in f.components().items()},
    }


def _resolve_complex(ref: Any, base: Path | None) -> ChainComplex:
    if isinstance(ref, str):
        path = Path(ref)
        if not path.is_absolute() and base is not None:
            path = base / path
        return complex_from_doc(load_json(path))
    return complex_from_doc(ref)


def map_from_doc(doc: Any, base: Path | str | None = None) -> ChainMap:
    _check_version(doc, "map")
    base = Path(base) if base is not None else None
    try:
        src = _resolve_complex(doc["source"], base)
        tgt = _resolve_complex(doc["target"], base)
        degree = int(doc.get("degree", 0))
        comps = {int(k): v for k, v in doc.get("components", {}).items()}
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, DocumentError):
            raise
        raise DocumentError(f"malformed map document: {exc}") from exc
    if src.modulus != tgt.modulus:
        raise DocumentError("source and target have different moduli")
    mats = {i: matrix_from_doc(m, src.modulus) for i, m in comps.items()}
    f = ChainMap(src, tgt, mats, degree, check=False)
    v = validate(f)
    if v is not None:
        raise DocumentError(v.message, v)
    return f


def load_complex(path: str | Path) -> ChainComplex:
    return complex_from_doc(load_json(path))


def load_map(path: str | Path) -> ChainMap:
    path = Path(path)
    return map_from_doc(load_json(path), path.parent)


def _vector_list(vs) -> list[list[int]]:
    return [np.asarray(v, dtype=np.int64).reshape(-1).tolist() for v in vs]


def witness_to_doc(w: Witness) -> dict:
    return {
        "map": map_to_doc(w.map),
        "homology_certificate": {
            str(i): _vector_list(zs) for i, zs in sorted(w.boundaries.items())
        },
        "obstruction": {
            "value": w.obstruction.value(),
            "pairing": {str(i): matrix_to_doc(m) for i, m in sorted(w.obstruction.pairing.items())},
        },
    }


def witness_from_doc(doc: Any) -> Witness:
    f = map_from_doc(doc["map"])
    boundaries = {
        int(i): [np.array(z, dtype=np.int64) for z in zs]
        for i, zs in doc["homology_certificate"].items()
    }
    pairing = {int(i): matrix_from_doc(m, f.modulus) for i, m in doc["obstruction"]["pairing"].items()}
    return Witness(f, boundaries, Obstruction(f, pairing))


def report_to_doc(r: CounterexampleReport) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "counterexample_report",
        "config": r.config.to_dict() if r.config is not None else None,
        "verdict": r.verdict,
        "instances_tested": r.instances_tested,
        "homology_trivial": r.homology_trivial,
        "certified_null_homotopic": r.certified_null_homotopic,
        "nonzero_maps": r.nonzero_maps,
        "origins": dict(r.origins),
        "witness_index": r.witness_index,
        "note": r.note,
        "witness": witness_to_doc(r.witness) if r.witness is not None else None,
        "elapsed": round(r.elapsed, 6),
    }


def report_from_doc(doc: Any) -> CounterexampleReport:
    _check_version(doc, "report")
    try:
        cfg = SearchConfig(**doc["config"]) if doc.get("config") else None
        witness = witness_from_doc(doc["witness"]) if doc.get("witness") else None
        return CounterexampleReport(
            config=cfg,
            verdict=doc["verdict"],
            witness=witness,
            instances_tested=int(doc["instances_tested"]),
            homology_trivial=int(doc.get("homology_trivial", 0)),
            certified_null_homotopic=int(doc.get("certified_null_homotopic", 0)),
            nonzero_maps=int(doc.get("nonzero_maps", 0)),
            origins=dict(doc.get("origins", {})),
            witness_index=doc.get("witness_index"),
            elapsed=float(doc.get("elapsed", 0.0)),
            note=doc.get("note", ""),
        )
    except (KeyError, TypeError, ValueError, InvalidComplexError) as exc:
        if isinstance(exc, DocumentError):
            raise
        raise DocumentError(f"malformed report: {exc}") from exc
