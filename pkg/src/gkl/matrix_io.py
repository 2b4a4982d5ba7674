"""Kernel-matrix serialization: headerless CSV with full float precision and a
key=value metadata sidecar describing the producing spec."""

from __future__ import annotations

import os
from pathlib import Path

import numpy as np

from .errors import ParseError
from .kernels.base import KernelMatrix
from .kernels.spec import KernelSpec


def write_matrix(
    path: str | os.PathLike,
    matrix: KernelMatrix,
    spec: KernelSpec | None = None,
) -> Path:
    """Write one CSV row per matrix row (17 significant digits, lossless for
    float64) and a ``<path>.meta`` sidecar with spec echo and shapes."""
    path = Path(path)
    with path.open("w") as fh:
        for row in matrix.values:
            fh.write(",".join(f"{v:.16e}" for v in row))
            fh.write("\n")
    meta = [f"rows={matrix.rows}", f"cols={matrix.cols}", f"role={matrix.role}"]
    if spec is not None:
        meta.insert(0, f"kernel={spec.kernel_name}")
        for key in sorted(spec.params):
            meta.append(f"param.{key}={spec.params[key]}")
        meta.append(f"normalize={str(spec.normalize).lower()}")
        meta.append(f"nystrom_components={spec.nystrom_components}")
        meta.append(f"seed={spec.seed}")
    Path(f"{path}.meta").write_text("\n".join(meta) + "\n")
    return path


def read_matrix(path: str | os.PathLike) -> np.ndarray:
    """Read a matrix CSV back into a 2-D float array."""
    path = Path(path)
    rows = []
    width = None
    with path.open() as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                row = [float(tok) for tok in line.split(",")]
            except ValueError:
                raise ParseError(f"{path}:{lineno}: non-numeric matrix entry") from None
            if width is None:
                width = len(row)
            elif len(row) != width:
                raise ParseError(f"{path}:{lineno}: ragged row ({len(row)} != {width})")
            rows.append(row)
    if not rows:
        raise ParseError(f"{path}: empty matrix file")
    return np.array(rows, dtype=float)
