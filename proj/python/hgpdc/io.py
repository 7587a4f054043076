"""Readers for the files written by the ``hgpdc`` tool (numpy only)."""

from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

SWEEP_COLUMNS = (
    "power_w,gain,gain_db,purity,p1,p2,p3,r1,r2,r3,res_aa,res_bb,res_ab,wall_s".split(",")
)
_MAGIC = b"HGPDCMAT"


def read_sweep(path) -> dict[str, np.ndarray]:
    """Sweep or run CSV as a dict of float arrays keyed by column name."""
    with open(path, newline="") as f:
        reader = csv.reader(f)
        header = next(reader)
        if header != SWEEP_COLUMNS:
            raise ValueError(f"{path}: unexpected header {header}")
        rows = [[float(x) for x in row] for row in reader if row]
    data = np.array(rows, dtype=float).reshape(-1, len(SWEEP_COLUMNS))
    return {name: data[:, k] for k, name in enumerate(SWEEP_COLUMNS)}


def read_matrix(path):
    """Return (matrix, row_axis, col_axis) from a .cmat dump."""
    raw = Path(path).read_bytes()
    if raw[:8] != _MAGIC:
        raise ValueError(f"{path}: not a matrix dump")
    version, _reserved = np.frombuffer(raw, "<u4", 2, 8)
    if version != 1:
        raise ValueError(f"{path}: unsupported version {version}")
    rows, cols = (int(x) for x in np.frombuffer(raw, "<u8", 2, 16))
    off = 32
    row_axis = np.frombuffer(raw, "<f8", rows, off)
    off += 8 * rows
    col_axis = np.frombuffer(raw, "<f8", cols, off)
    off += 8 * cols
    values = np.frombuffer(raw, "<f8", 2 * rows * cols, off)
    if off + values.nbytes != len(raw):
        raise ValueError(f"{path}: size does not match header")
    matrix = (values[0::2] + 1j * values[1::2]).reshape(rows, cols)
    return matrix, row_axis.copy(), col_axis.copy()


def read_modes(path) -> dict[str, dict[int, tuple[np.ndarray, np.ndarray]]]:
    """Mode profiles as {axis: {mode: (omega, complex amplitude)}}."""
    out: dict[str, dict[int, list]] = {}
    with open(path, newline="") as f:
        for rec in csv.DictReader(f):
            mode = out.setdefault(rec["axis"], {}).setdefault(int(rec["mode"]), [[], []])
            mode[0].append(float(rec["omega"]))
            mode[1].append(complex(float(rec["re"]), float(rec["im"])))
    return {
        axis: {m: (np.array(w), np.array(v)) for m, (w, v) in modes.items()}
        for axis, modes in out.items()
    }
