"""Edge-list parsing, synthetic tensors and solution files.

Supported text formats (one edge per line, 1-based indices by default):

``coo5``       ``i j l k t w``  node i on layer l -> node j on layer k at time t
``coo2``       ``i j w``        monolayer edge i -> j
``multiplex``  ``i j l w``      intra-layer edge, expanded to ``(i, j, l, l, 1)``
``citation``   ``src dst src_journal dst_journal year``  weight 1, years
               remapped to the contiguous range ``1..n_T`` in increasing order

Blank lines and lines starting with ``#`` are ignored, except a
``# shape: n1,n2,...`` line, which fixes the tensor shape (the writer
emits one so that inactive trailing indices survive a round trip).
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import MDHitsError, ParseError, ShapeError
from .mapcore import SLICE_NAMES
from .tensor import SparseTensor

__all__ = [
    "EdgeFormat",
    "FORMATS",
    "parse",
    "load_tensor",
    "write_edge_list",
    "SynthSpec",
    "generate_random",
    "write_solution",
    "read_solution",
    "read_scores_csv",
]

# format tag -> (number of columns, default delimiter)
FORMATS = {
    "coo5": (6, ","),
    "coo2": (3, ","),
    "multiplex": (4, None),
    "citation": (5, ","),
}


@dataclass(frozen=True)
class EdgeFormat:
    """How to read one edge-list file.

    ``delimiter=None`` splits on runs of whitespace.  For comma-delimited
    formats a line without any comma is also split on whitespace.
    """

    tag: str
    delimiter: str | None = "default"
    header: bool = False
    one_based: bool = True

    def __post_init__(self):
        if self.tag not in FORMATS:
            raise MDHitsError(f"unknown format {self.tag!r}; choose from {sorted(FORMATS)}")

    @property
    def columns(self) -> int:
        return FORMATS[self.tag][0]

    @property
    def sep(self):
        return FORMATS[self.tag][1] if self.delimiter == "default" else self.delimiter


def _as_format(fmt) -> EdgeFormat:
    return fmt if isinstance(fmt, EdgeFormat) else EdgeFormat(fmt)


def _split(line: str, sep):
    if sep is None or (sep == "," and "," not in line):
        return line.split()
    return [tok.strip() for tok in line.split(sep)]


def _parse_index(tok, lineno, offset):
    try:
        value = int(tok)
    except ValueError:
        try:
            f = float(tok)
        except ValueError:
            raise ParseError(f"non-numeric index {tok!r}", lineno) from None
        if not f.is_integer():
            raise ParseError(f"non-integer index {tok!r}", lineno) from None
        value = int(f)
    value -= offset
    if value < 0:
        raise ParseError(f"index {tok!r} below the first valid index", lineno)
    return value


def _parse_weight(tok, lineno):
    try:
        w = float(tok)
    except ValueError:
        raise ParseError(f"non-numeric weight {tok!r}", lineno) from None
    if not (math.isfinite(w) and w > 0):
        raise ParseError(f"weight must be positive and finite, got {tok!r}", lineno)
    return w


def parse(source, fmt, shape=None):
    """Read edge records from a path or text stream.

    Parameters
    ----------
    source : str, os.PathLike or file-like
    fmt : str or EdgeFormat
    shape : sequence of int, optional
        Overrides the shape inferred from per-mode maxima.

    Returns
    -------
    records : list of (tuple, float)
        0-based index tuples and weights, ready for ``from_edge_list``.
    shape : tuple of int
    """
    fmt = _as_format(fmt)
    if isinstance(source, (str, os.PathLike)):
        with open(source, encoding="utf-8") as fh:
            return _parse_lines(fh, fmt, shape)
    return _parse_lines(source, fmt, shape)


def _parse_lines(lines, fmt: EdgeFormat, shape):
    offset = 1 if fmt.one_based else 0
    sep = fmt.sep
    records = []
    years = []
    declared = None
    for lineno, raw in enumerate(lines, start=1):
        if fmt.header and lineno == 1:
            continue
        line = raw.strip()
        if line.startswith("#"):
            body = line[1:].strip()
            if body.startswith("shape:"):
                try:
                    declared = tuple(int(v) for v in body[6:].split(","))
                except ValueError:
                    raise ParseError(f"bad shape comment {line!r}", lineno) from None
            continue
        if not line:
            continue
        toks = _split(line, sep)
        if len(toks) != fmt.columns:
            raise ParseError(
                f"expected {fmt.columns} columns for {fmt.tag}, got {len(toks)}", lineno
            )
        if fmt.tag == "coo5":
            idx = tuple(_parse_index(t, lineno, offset) for t in toks[:5])
            records.append((idx, _parse_weight(toks[5], lineno)))
        elif fmt.tag == "coo2":
            idx = tuple(_parse_index(t, lineno, offset) for t in toks[:2])
            records.append((idx, _parse_weight(toks[2], lineno)))
        elif fmt.tag == "multiplex":
            i, j, layer = (_parse_index(t, lineno, offset) for t in toks[:3])
            records.append(((i, j, layer, layer, 0), _parse_weight(toks[3], lineno)))
        else:
            i, j, l, k = (_parse_index(t, lineno, offset) for t in toks[:4])
            try:
                year = int(toks[4])
            except ValueError:
                raise ParseError(f"non-integer year {toks[4]!r}", lineno) from None
            records.append(((i, j, l, k), 1.0))
            years.append(year)
    if fmt.tag == "citation":
        remap = {y: t for t, y in enumerate(sorted(set(years)))}
        records = [(idx + (remap[y],), w) for (idx, w), y in zip(records, years)]
    inferred = _infer_shape(records, fmt.tag)
    if shape is None:
        shape = declared
    if shape is None:
        return records, inferred
    shape = tuple(int(n) for n in shape)
    if len(shape) != len(inferred):
        raise ShapeError(f"shape override {shape} has the wrong order for {fmt.tag}")
    return records, shape


def _infer_shape(records, tag):
    m = 2 if tag == "coo2" else 5
    if not records:
        return (1,) * m
    top = np.max(np.array([idx for idx, _ in records], dtype=np.int64), axis=0) + 1
    if m == 5:
        nv = max(top[0], top[1])
        nl = max(top[2], top[3])
        return (int(nv), int(nv), int(nl), int(nl), int(top[4]))
    nv = max(top[0], top[1])
    return (int(nv), int(nv))


def load_tensor(source, fmt, shape=None) -> SparseTensor:
    """``parse`` followed by tensor construction."""
    records, shape = parse(source, fmt, shape)
    if not records:
        return SparseTensor(shape, np.empty((0, len(shape))), np.empty(0))
    idx = np.array([r[0] for r in records], dtype=np.int64)
    w = np.array([r[1] for r in records], dtype=np.float64)
    return SparseTensor.from_arrays(idx, w, shape)


def write_edge_list(tensor: SparseTensor, target, fmt="coo5") -> None:
    """Write ``tensor`` in ``coo5`` or ``coo2`` format (1-based, comma separated)."""
    fmt = _as_format(fmt)
    if fmt.tag not in ("coo5", "coo2") or fmt.columns - 1 != tensor.order:
        raise MDHitsError(f"cannot write an order-{tensor.order} tensor as {fmt.tag}")
    sep = fmt.sep or " "
    offset = 1 if fmt.one_based else 0
    lines = ["# shape: " + ",".join(str(n) for n in tensor.shape)]
    for idx, w in zip(tensor.indices, tensor.weights):
        cols = [str(int(i) + offset) for i in idx] + [repr(float(w))]
        lines.append(sep.join(cols))
    text = "\n".join(lines) + "\n"
    if isinstance(target, (str, os.PathLike)):
        Path(target).write_text(text, encoding="utf-8")
    else:
        target.write(text)


@dataclass(frozen=True)
class SynthSpec:
    """Recipe for a sparse random temporal multilayer tensor.

    ``n_L = n_V``, ``n_T = round(n_V ** (1/3))`` (half rounds up) and
    ``n_V * n_L`` distinct uniformly drawn nonzeros.  Weights are 1 by
    default; ``weights="lognormal"`` draws ``exp(N(0, weight_sigma**2))``.
    """

    n_v: int
    seed: int = 0
    weights: str = "unit"
    weight_sigma: float = 2.0

    def __post_init__(self):
        if self.n_v < 2:
            raise MDHitsError(f"n_v must be >= 2, got {self.n_v}")
        if self.weights not in ("unit", "lognormal"):
            raise MDHitsError(f"unknown weight distribution {self.weights!r}")

    @property
    def n_l(self) -> int:
        return self.n_v

    @property
    def n_t(self) -> int:
        n = int(math.floor(self.n_v ** (1.0 / 3.0) + 0.5))
        # guard against cube roots of perfect cubes landing just below
        while (n + 0.5) ** 3 <= self.n_v:
            n += 1
        while n > 1 and (n - 0.5) ** 3 > self.n_v:
            n -= 1
        return n

    @property
    def nnz(self) -> int:
        return self.n_v * self.n_l

    @property
    def shape(self) -> tuple:
        return (self.n_v, self.n_v, self.n_l, self.n_l, self.n_t)


def generate_random(spec: SynthSpec) -> SparseTensor:
    """Draw ``spec.nnz`` distinct index tuples uniformly, by rejection.

    Uses a Philox counter-based generator seeded with ``spec.seed``, so the
    result is reproducible bit for bit.
    """
    shape = spec.shape
    dense = math.prod(shape)
    nnz = spec.nnz
    if nnz > dense:
        raise MDHitsError(f"cannot place {nnz} distinct entries in {dense} slots")
    rng = np.random.Generator(np.random.Philox(spec.seed))
    if dense < 2**62:
        keys = np.empty(0, dtype=np.int64)
        while keys.size < nnz:
            draw = rng.integers(0, dense, size=nnz - keys.size, dtype=np.int64)
            merged = np.concatenate([keys, draw])
            # keep first occurrences in draw order
            _, first = np.unique(merged, return_index=True)
            keys = merged[np.sort(first)]
        indices = np.stack(np.unravel_index(keys, shape), axis=1)
    else:
        rows = np.empty((0, len(shape)), dtype=np.int64)
        while rows.shape[0] < nnz:
            need = nnz - rows.shape[0]
            draw = np.stack([rng.integers(0, n, size=need) for n in shape], axis=1)
            merged = np.concatenate([rows, draw])
            _, first = np.unique(merged, axis=0, return_index=True)
            rows = merged[np.sort(first)]
        indices = rows
    if spec.weights == "unit":
        weights = np.ones(nnz)
    else:
        weights = rng.lognormal(0.0, spec.weight_sigma, size=nnz)
    return SparseTensor.from_arrays(indices, weights, shape)


def _vector_names(m: int) -> list:
    if m == 5:
        return list(SLICE_NAMES)
    if m == 2:
        return list(SLICE_NAMES[:2])
    return [f"mode{s}" for s in range(m)]


def _solution_dict(solution) -> dict:
    names = _vector_names(len(solution.c))
    out = {name: [float(v) for v in vec] for name, vec in zip(names, solution.c)}
    out.update(
        {
            "lambda": [float(v) for v in solution.lambda_],
            "sigma": float(solution.sigma),
            "iterations": int(solution.iterations),
            "converged": bool(solution.converged),
            "alpha": [float(v) for v in solution.config.alpha],
            "rho": float(solution.config.rho),
            "beta": [float(v) for v in solution.config.beta],
            "trace": [
                {"k": int(r.k), "step": float(r.step), "bound": float(r.bound)}
                for r in solution.trace
            ],
        }
    )
    return out


def write_solution(solution, path, fmt="json") -> list:
    """Serialize a :class:`~mdhits.solver.Solution`.

    ``json`` writes one object to ``path``.  ``csv`` writes one file per
    score vector, named ``<stem>_<vector>.csv`` next to ``path``, each
    with header ``id,score`` and 1-based ids.  Floats are written with
    ``repr`` so they round-trip exactly.

    Returns the list of files written.
    """
    data = _solution_dict(solution)
    path = Path(path)
    try:
        if fmt == "json":
            path.write_text(json.dumps(data, indent=1) + "\n", encoding="utf-8")
            return [path]
        if fmt == "csv":
            written = []
            names = _vector_names(len(solution.c))
            for name in names:
                target = path.with_name(f"{path.stem}_{name}.csv")
                buf = io.StringIO()
                writer = csv.writer(buf, lineterminator="\n")
                writer.writerow(["id", "score"])
                for i, v in enumerate(data[name], start=1):
                    writer.writerow([i, repr(v)])
                target.write_text(buf.getvalue(), encoding="utf-8")
                written.append(target)
            return written
    except OSError as exc:
        raise MDHitsError(f"cannot write {path}: {exc}") from exc
    raise MDHitsError(f"unknown output format {fmt!r}; use json or csv")


def read_solution(path) -> dict:
    """Load a JSON solution file; score vectors become numpy arrays."""
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise MDHitsError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise MDHitsError(f"{path} is not valid JSON: {exc}") from exc
    for key in list(data):
        if key in SLICE_NAMES or key.startswith("mode") or key in ("lambda", "alpha", "beta"):
            data[key] = np.asarray(data[key], dtype=np.float64)
    return data


def read_scores_csv(path) -> np.ndarray:
    """Read one ``id,score`` CSV back into a dense vector (ids are 1-based)."""
    with open(path, encoding="utf-8", newline="") as fh:
        rows = list(csv.DictReader(fh))
    out = np.zeros(len(rows))
    for row in rows:
        out[int(row["id"]) - 1] = float(row["score"])
    return out
