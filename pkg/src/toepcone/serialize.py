"""JSON schemas for the value types plus a canonical, reproducible dumper.

Complex numbers serialize as [re, im] pairs; floats are rendered with 17
significant digits so identical runs produce byte-identical reports.
"""

from __future__ import annotations

import json

import numpy as np

from .duality import AtomicMeasure
from .trig_core import BlockToeplitz, BlockTrigPoly, ToeplitzMat, TrigPoly


def _c(z) -> list:
    z = complex(z)
    return [z.real, z.imag]


def _mat(m: np.ndarray) -> list:
    return [[_c(v) for v in row] for row in np.asarray(m, dtype=complex)]


def _as_complex(pair) -> complex:
    return complex(float(pair[0]), float(pair[1]))


def _as_mat(rows) -> np.ndarray:
    return np.array([[_as_complex(v) for v in row] for row in rows], dtype=complex)


def encode_trig_poly(f: TrigPoly) -> dict:
    return {"d": f.d, "coeffs": [_c(v) for v in f.coeffs]}


def decode_trig_poly(obj: dict) -> TrigPoly:
    d = int(obj["d"])
    return TrigPoly(d, np.array([_as_complex(v) for v in obj["coeffs"]]))


def encode_block_trig_poly(f: BlockTrigPoly) -> dict:
    return {"d": f.d, "m": f.m, "coeffs": [_mat(b) for b in f.coeffs]}


def decode_block_trig_poly(obj: dict) -> BlockTrigPoly:
    d = int(obj["d"])
    m = int(obj["m"])
    coeffs = np.array([_as_mat(b) for b in obj["coeffs"]], dtype=complex)
    return BlockTrigPoly(d, m, coeffs)


def decode_poly(obj: dict):
    """TrigPoly or BlockTrigPoly depending on the presence of a block size."""
    return decode_block_trig_poly(obj) if "m" in obj else decode_trig_poly(obj)


def encode_toeplitz(t: ToeplitzMat) -> dict:
    return {"n": t.n, "symbols": [_c(v) for v in t.symbols]}


def decode_toeplitz(obj: dict) -> ToeplitzMat:
    n = int(obj["n"])
    return ToeplitzMat(n, np.array([_as_complex(v) for v in obj["symbols"]]))


def encode_block_toeplitz(t: BlockToeplitz) -> dict:
    return {"n": t.n, "m": t.m, "symbols": [_mat(b) for b in t.symbols]}


def decode_block_toeplitz(obj: dict) -> BlockToeplitz:
    n = int(obj["n"])
    m = int(obj["m"])
    return BlockToeplitz(n, m, np.array([_as_mat(b) for b in obj["symbols"]], dtype=complex))


def decode_toeplitz_like(obj: dict):
    """ToeplitzMat or BlockToeplitz depending on the presence of a block size."""
    return decode_block_toeplitz(obj) if "m" in obj else decode_toeplitz(obj)


def encode_atomic_measure(mu: AtomicMeasure) -> dict:
    atoms = []
    for j in range(mu.size):
        w = mu.weights[j]
        atoms.append(
            {
                "lambda": _c(mu.lambdas[j]),
                "w": float(np.real(w)) if mu.m == 1 else _mat(w),
            }
        )
    return {"m": mu.m, "atoms": atoms}


def decode_atomic_measure(obj: dict) -> AtomicMeasure:
    m = int(obj["m"])
    lams = np.array([_as_complex(a["lambda"]) for a in obj["atoms"]], dtype=complex)
    if m == 1:
        ws = np.array([float(a["w"]) for a in obj["atoms"]])
    else:
        ws = np.array([_as_mat(a["w"]) for a in obj["atoms"]], dtype=complex)
    return AtomicMeasure(lams, ws, m=m)


def _render(obj, out: list) -> None:
    if obj is None or obj is True or obj is False:
        out.append("null" if obj is None else ("true" if obj else "false"))
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif isinstance(obj, bool):  # pragma: no cover - handled above
        out.append("true" if obj else "false")
    elif isinstance(obj, (int, np.integer)):
        out.append(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        x = float(obj)
        if not np.isfinite(x):
            raise ValueError("non-finite float in report")
        out.append(format(x, ".17g"))
    elif isinstance(obj, complex):
        raise TypeError("complex values must be encoded as [re, im] pairs before dumping")
    elif isinstance(obj, (list, tuple)):
        out.append("[")
        for i, v in enumerate(obj):
            if i:
                out.append(", ")
            _render(v, out)
        out.append("]")
    elif isinstance(obj, dict):
        out.append("{")
        for i, (k, v) in enumerate(obj.items()):
            if i:
                out.append(", ")
            if not isinstance(k, str):
                raise TypeError("report keys must be strings")
            out.append(json.dumps(k))
            out.append(": ")
            _render(v, out)
        out.append("}")
    else:
        raise TypeError(f"cannot serialize {type(obj)!r}")


def dumps_canonical(obj) -> str:
    """Deterministic JSON text: insertion-ordered keys, 17-significant-digit floats."""
    out: list[str] = []
    _render(obj, out)
    out.append("\n")
    return "".join(out)
