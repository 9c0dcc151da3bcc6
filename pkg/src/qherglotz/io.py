"""JSON encoding and decoding for the public object types.

Conventions: a quaternion is [w, x, y, z]; a complex number is [re, im];
a quaternionic matrix is {"rows", "cols", "data"} with data a row-major
nest of quaternion entries; complex matrices are row-major nests of
[re, im].  Decoders raise InputError carrying the JSON key path of the
offending field, and re-raise constructor-level validation failures the
same way so callers can map any malformed input to a single error class.
"""

from __future__ import annotations

import json
from typing import Any

import numpy as np

from .errors import InputError, QHError
from .measures import (DiscreteQPositiveMeasure, MeasureAtom,
                       MixedMeasurePair)
from .moments import HermitianSequence
from .quatcore import QMatrix, Quaternion
from .realize import PontryaginRealization, SignatureGram
from .slicefn import SliceAtom, SliceMeasure

__all__ = [
    "quaternion_to_json", "quaternion_from_json",
    "qmatrix_to_json", "qmatrix_from_json",
    "sequence_to_json", "sequence_from_json",
    "measure_to_json", "measure_from_json",
    "pair_to_json", "pair_from_json",
    "realization_to_json", "realization_from_json",
    "slice_measure_to_json", "slice_measure_from_json",
    "load_json_file", "dump_json_file",
]


def _fail(path: str, message: str):
    raise InputError(f"{path}: {message}")


def _real(obj: Any, path: str) -> float:
    if isinstance(obj, bool) or not isinstance(obj, (int, float)):
        _fail(path, f"expected a number, got {type(obj).__name__}")
    return float(obj)


def _int(obj: Any, path: str) -> int:
    if isinstance(obj, bool) or not isinstance(obj, int):
        _fail(path, f"expected an integer, got {type(obj).__name__}")
    return obj


def _dict(obj: Any, path: str) -> dict:
    if not isinstance(obj, dict):
        _fail(path, f"expected an object, got {type(obj).__name__}")
    return obj


def _list(obj: Any, path: str, length: int | None = None) -> list:
    if not isinstance(obj, list):
        _fail(path, f"expected an array, got {type(obj).__name__}")
    if length is not None and len(obj) != length:
        _fail(path, f"expected {length} entries, got {len(obj)}")
    return obj


def _key(obj: dict, name: str, path: str) -> Any:
    if name not in obj:
        _fail(path, f"missing key '{name}'")
    return obj[name]


def quaternion_to_json(q: Quaternion) -> list[float]:
    return [q.w, q.x, q.y, q.z]


def quaternion_from_json(obj: Any, path: str = "quaternion") -> Quaternion:
    parts = _list(obj, path, 4)
    w, x, y, z = (_real(p, f"{path}[{i}]") for i, p in enumerate(parts))
    return Quaternion(w, x, y, z)


def _complex_from_json(obj: Any, path: str) -> complex:
    parts = _list(obj, path, 2)
    return complex(_real(parts[0], f"{path}[0]"), _real(parts[1], f"{path}[1]"))


def _cmat_to_json(a: np.ndarray) -> list:
    return [[[float(v.real), float(v.imag)] for v in row] for row in a]


def _cmat_from_json(obj: Any, path: str, shape: tuple[int, int] | None = None) -> np.ndarray:
    rows = _list(obj, path)
    if not rows:
        _fail(path, "matrix must have at least one row")
    width = None
    out = []
    for i, row in enumerate(rows):
        cells = _list(row, f"{path}[{i}]")
        if width is None:
            width = len(cells)
        elif len(cells) != width:
            _fail(f"{path}[{i}]", "ragged rows")
        out.append([_complex_from_json(c, f"{path}[{i}][{j}]")
                    for j, c in enumerate(cells)])
    a = np.array(out, dtype=np.complex128)
    if shape is not None and a.shape != shape:
        _fail(path, f"expected shape {shape}, got {a.shape}")
    return a


def qmatrix_to_json(m: QMatrix) -> dict:
    data = [[quaternion_to_json(m.entry(i, j)) for j in range(m.cols)]
            for i in range(m.rows)]
    return {"rows": m.rows, "cols": m.cols, "data": data}


def qmatrix_from_json(obj: Any, path: str = "matrix") -> QMatrix:
    d = _dict(obj, path)
    rows = _int(_key(d, "rows", path), f"{path}.rows")
    cols = _int(_key(d, "cols", path), f"{path}.cols")
    if rows < 1 or cols < 1:
        _fail(path, f"rows and cols must be positive, got {rows}x{cols}")
    data = _list(_key(d, "data", path), f"{path}.data", rows)
    entries = []
    for i, row in enumerate(data):
        cells = _list(row, f"{path}.data[{i}]", cols)
        entries.append([quaternion_from_json(c, f"{path}.data[{i}][{j}]")
                        for j, c in enumerate(cells)])
    return QMatrix.from_entries(entries)


def sequence_to_json(seq: HermitianSequence) -> dict:
    return {"s": seq.s, "N": seq.N,
            "values": [qmatrix_to_json(v) for v in seq.values]}


def sequence_from_json(obj: Any, path: str = "sequence") -> HermitianSequence:
    d = _dict(obj, path)
    vals_json = _list(_key(d, "values", path), f"{path}.values")
    values = [qmatrix_from_json(v, f"{path}.values[{n}]")
              for n, v in enumerate(vals_json)]
    if "N" in d:
        n_decl = _int(d["N"], f"{path}.N")
        if n_decl != len(values) - 1:
            _fail(f"{path}.N", f"declares {n_decl} but values give {len(values) - 1}")
    if "s" in d:
        s_decl = _int(d["s"], f"{path}.s")
        if values and values[0].rows != s_decl:
            _fail(f"{path}.s", f"declares {s_decl} but blocks are {values[0].rows}x{values[0].cols}")
    try:
        return HermitianSequence(values)
    except (QHError, ValueError) as exc:
        _fail(path, str(exc))


def measure_to_json(nu: DiscreteQPositiveMeasure) -> dict:
    atoms = [{"t": a.t, "nu1": _cmat_to_json(a.nu1), "nu2": _cmat_to_json(a.nu2)}
             for a in nu.atoms]
    return {"s": nu.s, "atoms": atoms}


def measure_from_json(obj: Any, path: str = "measure") -> DiscreteQPositiveMeasure:
    d = _dict(obj, path)
    s = _int(_key(d, "s", path), f"{path}.s")
    if s < 1:
        _fail(f"{path}.s", f"block size must be positive, got {s}")
    atoms_json = _list(_key(d, "atoms", path), f"{path}.atoms")
    atoms = []
    for i, aj in enumerate(atoms_json):
        ad = _dict(aj, f"{path}.atoms[{i}]")
        t = _real(_key(ad, "t", f"{path}.atoms[{i}]"), f"{path}.atoms[{i}].t")
        nu1 = _cmat_from_json(_key(ad, "nu1", f"{path}.atoms[{i}]"),
                              f"{path}.atoms[{i}].nu1", (s, s))
        nu2 = _cmat_from_json(_key(ad, "nu2", f"{path}.atoms[{i}]"),
                              f"{path}.atoms[{i}].nu2", (s, s))
        atoms.append(MeasureAtom(t, nu1, nu2))
    try:
        return DiscreteQPositiveMeasure(s, atoms)
    except (QHError, ValueError) as exc:
        _fail(path, str(exc))


def pair_to_json(pair: MixedMeasurePair) -> dict:
    return {"plus": measure_to_json(pair.plus),
            "minus": measure_to_json(pair.minus)}


def pair_from_json(obj: Any, path: str = "pair") -> MixedMeasurePair:
    d = _dict(obj, path)
    plus = measure_from_json(_key(d, "plus", path), f"{path}.plus")
    minus = measure_from_json(_key(d, "minus", path), f"{path}.minus")
    try:
        return MixedMeasurePair(plus, minus)
    except (QHError, ValueError) as exc:
        _fail(path, str(exc))


def realization_to_json(r: PontryaginRealization) -> dict:
    return {"J": list(r.J.signs), "U": qmatrix_to_json(r.U),
            "C": qmatrix_to_json(r.C)}


def realization_from_json(obj: Any, path: str = "realization") -> PontryaginRealization:
    d = _dict(obj, path)
    signs_json = _list(_key(d, "J", path), f"{path}.J")
    signs = []
    for i, sgn in enumerate(signs_json):
        v = _int(sgn, f"{path}.J[{i}]")
        if v not in (1, -1):
            _fail(f"{path}.J[{i}]", f"signature entries must be +1 or -1, got {v}")
        signs.append(v)
    u = qmatrix_from_json(_key(d, "U", path), f"{path}.U")
    c = qmatrix_from_json(_key(d, "C", path), f"{path}.C")
    try:
        return PontryaginRealization(SignatureGram(tuple(signs)), u, c)
    except (QHError, ValueError) as exc:
        _fail(path, str(exc))


def slice_measure_to_json(m: SliceMeasure) -> dict:
    return {"I": quaternion_to_json(m.i_unit),
            "J": quaternion_to_json(m.j_unit),
            "imag0F": m.imag0_f, "imag0G": m.imag0_g,
            "atoms": [{"t": a.t, "mu1": a.mu1, "mu2": a.mu2} for a in m.atoms]}


def slice_measure_from_json(obj: Any, path: str = "sliceMeasure") -> SliceMeasure:
    d = _dict(obj, path)
    iu = quaternion_from_json(_key(d, "I", path), f"{path}.I")
    ju = quaternion_from_json(_key(d, "J", path), f"{path}.J")
    f0 = _real(d.get("imag0F", 0.0), f"{path}.imag0F")
    g0 = _real(d.get("imag0G", 0.0), f"{path}.imag0G")
    atoms_json = _list(_key(d, "atoms", path), f"{path}.atoms")
    atoms = []
    for i, aj in enumerate(atoms_json):
        ad = _dict(aj, f"{path}.atoms[{i}]")
        atoms.append(SliceAtom(
            _real(_key(ad, "t", f"{path}.atoms[{i}]"), f"{path}.atoms[{i}].t"),
            _real(_key(ad, "mu1", f"{path}.atoms[{i}]"), f"{path}.atoms[{i}].mu1"),
            _real(_key(ad, "mu2", f"{path}.atoms[{i}]"), f"{path}.atoms[{i}].mu2")))
    try:
        return SliceMeasure(iu, ju, tuple(atoms), f0, g0)
    except (QHError, ValueError) as exc:
        _fail(path, str(exc))


def load_json_file(filename: str) -> Any:
    """Parse a JSON file, mapping I/O and syntax problems to InputError."""
    try:
        with open(filename, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {filename}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{filename} is not valid JSON: {exc}") from exc


def dump_json_file(filename: str, payload: Any):
    with open(filename, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")
