"""Ensemble model file format (version 1).

A model file is plain UTF-8 text:

    UDEED-ENSEMBLE 1
    <m> <d>
    <w_11> <w_12> ... <w_1d>
    ...
    <w_m1> ... <w_md>

Weights are written in Python's shortest round-trip decimal form, so
save/load is bit-exact. The version number is bumped on any layout change.
"""

from __future__ import annotations

from .core import EnsembleModel
from .errors import UdeedError

MAGIC = "UDEED-ENSEMBLE"
VERSION = 1


def save_model(model: EnsembleModel, path) -> None:
    lines = [f"{MAGIC} {VERSION}", f"{model.m} {model.dimension}"]
    for row in model.weights:
        lines.append(" ".join(repr(value) for value in row.tolist()))
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as handle:
            handle.write("\n".join(lines) + "\n")
    except OSError as exc:
        raise UdeedError(f"cannot write model file {path}: {exc}") from exc


def load_model(path) -> EnsembleModel:
    try:
        with open(path, encoding="utf-8") as handle:
            lines = handle.read().splitlines()
    except FileNotFoundError:
        raise UdeedError(f"model file not found: {path}") from None
    except OSError as exc:
        raise UdeedError(f"cannot read model file {path}: {exc}") from exc
    if not lines or lines[0].split() != [MAGIC, str(VERSION)]:
        raise UdeedError(
            f"{path} is not a {MAGIC} version {VERSION} file"
        )
    if len(lines) < 2:
        raise UdeedError(f"{path}: missing dimension line")
    try:
        m, d = (int(t) for t in lines[1].split())
    except ValueError:
        raise UdeedError(f"{path}: malformed dimension line {lines[1]!r}") from None
    rows = [line for line in lines[2:] if line.strip()]
    if len(rows) != m:
        raise UdeedError(f"{path}: expected {m} weight rows, found {len(rows)}")
    weights = []
    for i, line in enumerate(rows, start=3):
        values = line.split()
        if len(values) != d:
            raise UdeedError(
                f"{path}: line {i} has {len(values)} weights, expected {d}"
            )
        try:
            weights.append([float(v) for v in values])
        except ValueError:
            raise UdeedError(f"{path}: line {i} has a non-numeric weight") from None
    return EnsembleModel(weights)
