"""File formats: matrices, ensembles, nets, circuits.

JSON matrices are arrays of rows of [re, im] pairs; the optional binary
format is raw little-endian float64, row-major, re/im interleaved.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from prulab.ensembles import EnsembleSpec
from prulab.nets import NetSpec
from prulab.truncation import DiagonalOracleCircuit, DiagonalPhase


def matrix_to_json(u: np.ndarray) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in u]


def matrix_from_json(rows: list) -> np.ndarray:
    return np.array([[complex(re, im) for re, im in row] for row in rows])


def save_matrix_bin(path: str | Path, u: np.ndarray) -> None:
    flat = np.empty(u.size * 2, dtype="<f8")
    flat[0::2] = u.real.reshape(-1)
    flat[1::2] = u.imag.reshape(-1)
    Path(path).write_bytes(flat.tobytes())


def load_matrix_bin(path: str | Path, dim: int) -> np.ndarray:
    flat = np.frombuffer(Path(path).read_bytes(), dtype="<f8")
    if flat.size != 2 * dim * dim:
        raise ValueError("binary matrix size does not match the declared dimension")
    return (flat[0::2] + 1j * flat[1::2]).reshape(dim, dim)


def ensemble_to_json_dict(ens: EnsembleSpec, inline: bool = True) -> dict:
    if ens.mode != "finite-list":
        raise ValueError("only finite-list ensembles serialize to manifests")
    return {
        "dim": ens.dim,
        "weights": [float(w) for w in ens.weights],
        "matrices": [matrix_to_json(u) for u in ens.unitaries],
        "name": ens.name,
    }


def ensemble_from_json_dict(d: dict, baseic: Path | None = None) -> EnsembleSpec:
    dim = int(d["dim"])
    if "matrices" in d:
        us = [matrix_from_json(m) for m in d["matrices"]]
    elif "matrix_files" in d:
        base = base if base is not None else Path(".")
        us = [load_matrix_bin(Path(base) / f, dim) for f in d["matrix_files"]]
    else:
        raise ValueError("manifest needs 'matrices' or 'matrix_files'")
    weights = np.array(d["weights"]) if "weights" in d else None
    return EnsembleSpec(dim, "finite-list", us, weights, name=d.get("name", ""))


def net_to_json_dict(net: NetSpec) -> dict:
    return {"dim": net.dim, "matrices": [matrix_to_json(u) for u in net.unitaries]}


def net_from_json_dict(d: dict) -> NetSpec:
    dim = int(d["dim"])
    return NetSpec(dim, [matrix_from_json(m) for m in d["matrices"]])


def circuit_to_json_dict(c: DiagonalOracleCircuit) -> dict:
    seq = []
    for item in c.sequence:
        if item[0] == "fixed":
            seq.append({"fixed": matrix_to_json(item[1])})
        else:
            seq.append({"oracle": item[1]})
    return {
        "n": c.n,
        "m": c.m,
        "oracles": [[float(v) for v in f.phases] for f in c.oracles],
        "sequence": seq,
    }


def circuit_from_json_dict(d: dict) -> DiagonalOracleCircuit:
    m = int(d["m"])
    oracles = [DiagonalPhase(m, np.array(p, dtype=float)) for p in d["oracles"]]
    seq = []
    for item in d["sequence"]:
        if "fixed" in item:
            seq.append(("fixed", matrix_from_json(item["fixed"])))
        else:
            seq.append(("oracle", int(item["oracle"])))
    return DiagonalOracleCircuit(int(d["n"]), m, oracles, seq)


def load_json(path: str | Path) -> dict:
    return json.loads(Path(path).read_text())


def dump_json(path: str | Path, obj: dict) -> None:
    Path(path).write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n")
