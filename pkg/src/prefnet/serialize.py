"""File formats: weighted edge lists with a JSON header line, plus
deterministic JSON and CSV writers.

Edge-list layout: line 1 is a single-line JSON header (it must contain
"n_nodes"; everything else is provenance metadata), each following line is
`i j weight` with 0-based ids, i < j, ascending, and weights printed via
repr for lossless round-tripping. All outputs use LF newlines and UTF-8 so
reruns are byte-identical.
"""

from __future__ import annotations

import csv
import hashlib
import io as _io
import json
from pathlib import Path
from typing import Any, Iterable, Optional, Union

import numpy as np

from .network import WeightedNetwork

PathLike = Union[str, Path]


def canonical_json(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def config_hash(obj: Any) -> str:
    """Stable sha256 of a canonical-JSON-serialized configuration."""
    return hashlib.sha256(canonical_json(obj).encode("utf-8")).hexdigest()


def write_json(path: PathLike, obj: Any) -> None:
    Path(path).write_text(
        json.dumps(obj, sort_keys=True, indent=2) + "\n", encoding="utf-8", newline="\n"
    )


def write_csv(path: PathLike, header: list[str], rows: Iterable[Iterable[Any]]) -> None:
    buf = _io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(
            ["" if v is None else (repr(float(v)) if isinstance(v, float) else v) for v in row]
        )
    Path(path).write_text(buf.getvalue(), encoding="utf-8", newline="\n")


def read_csv(path: PathLike) -> tuple[list[str], list[list[str]]]:
    """Read a CSV written by write_csv, skipping leading # comment lines."""
    text = Path(path).read_text(encoding="utf-8")
    lines = [ln for ln in text.splitlines() if not ln.startswith("#")]
    reader = csv.reader(lines)
    header = next(reader)
    return header, [row for row in reader]


def write_network(path: PathLike, net: WeightedNetwork, meta: Optional[dict] = None) -> None:
    """Write a network as a JSON header line plus sorted `i j w` edge lines."""
    header: dict[str, Any] = {"format": "prefnet-edges", "n_nodes": net.n_nodes}
    header["labels"] = list(net.labels) if net.labels is not None else None
    if meta:
        header.update(meta)
    rows, cols = np.triu_indices(net.n_nodes, k=1)
    w = net.weights[rows, cols]
    nz = np.flatnonzero(w > 0.0)
    lines = [canonical_json(header)]
    lines.extend(f"{rows[k]} {cols[k]} {float(w[k])!r}" for k in nz)
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")


def read_network(path: PathLike) -> tuple[WeightedNetwork, dict]:
    """Read an edge-list file back into a network plus its header metadata."""
    with open(path, "r", encoding="utf-8", newline="") as fh:
        header = json.loads(fh.readline())
        if header.get("format") != "prefnet-edges":
            raise ValueError(f"{path}: not a prefnet edge-list file")
        n = int(header["n_nodes"])
        mat = np.zeros((n, n), dtype=np.float64)
        for line in fh:
            line = line.strip()
            if not line:
                continue
            i_s, j_s, w_s = line.split()
            i, j, w = int(i_s), int(j_s), float(w_s)
            mat[i, j] = w
            mat[j, i] = w
    labels = header.get("labels")
    net = WeightedNetwork.from_matrix(mat, labels=labels, copy=False, validate=False)
    return net, header
