"""Edge-list and graph6 formats, and report serialisation."""

from __future__ import annotations

import csv
import io as _io
import json
import math
from pathlib import Path
from typing import Iterable, Iterator, Union

import numpy as np

from .hypergraph import Hypergraph, HypergraphError, make_hypergraph

SIG_DIGITS = 12
GRAPH6_MAX_N = 62
GRAPH6_HEADER = b">>graph6<<"


class FormatError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


# ---------------------------------------------------------------- edge lists


def parse_edgelist(text: str) -> Hypergraph:
    """Header ``n r`` then one edge per line.  Blank lines and ``#`` comments are skipped."""
    lines = [
        (no, raw.split("#", 1)[0].strip())
        for no, raw in enumerate(text.splitlines(), start=1)
    ]
    lines = [(no, s) for no, s in lines if s]
    if not lines:
        raise FormatError("empty input: expected header 'n r'", 1)
    no, header = lines[0]
    parts = header.split()
    try:
        n, r = (int(t) for t in parts)
    except ValueError:
        raise FormatError(f"malformed header {header!r}: expected 'n r'", no) from None
    if n < 0 or r < 1:
        raise FormatError(f"bad header values n={n}, r={r}", no)
    seen: dict[tuple, int] = {}
    edges = []
    for no, s in lines[1:]:
        try:
            verts = [int(t) for t in s.split()]
        except ValueError:
            raise FormatError(f"non-integer vertex in {s!r}", no) from None
        if len(verts) != r:
            raise FormatError(f"edge has {len(verts)} vertices, expected {r}", no)
        if len(set(verts)) != r:
            raise FormatError(f"repeated vertex in edge {s!r}", no)
        bad = [v for v in verts if not 1 <= v <= n]
        if bad:
            raise FormatError(f"vertex {bad[0]} outside 1..{n}", no)
        key = tuple(sorted(verts))
        if key in seen:
            raise FormatError(f"duplicate edge {key} (first on line {seen[key]})", no)
        seen[key] = no
        edges.append(key)
    try:
        return make_hypergraph(n, r, edges)
    except HypergraphError as exc:  # pragma: no cover - caught above
        raise FormatError(str(exc)) from exc


def format_edgelist(h: Hypergraph) -> str:
    out = [f"{h.n} {h.r}"]
    out.extend(" ".join(str(v) for v in e) for e in h.edges)
    return "\n".join(out) + "\n"


def read_edgelist(path: Union[str, Path]) -> Hypergraph:
    return parse_edgelist(Path(path).read_text())


# ---------------------------------------------------------------- graph6


def _decode_graph6_line(line: bytes, lineno: int) -> Hypergraph:
    if line.startswith(GRAPH6_HEADER):
        line = line[len(GRAPH6_HEADER):]
    if not line:
        raise FormatError("empty graph6 line", lineno)
    data = [c - 63 for c in line]
    if any(not 0 <= d <= 63 for d in data):
        raise FormatError("character outside 63..126", lineno)
    n = data[0]
    if n > GRAPH6_MAX_N:
        raise FormatError("only the short form (n <= 62) is supported", lineno)
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if len(data) - 1 != need:
        raise FormatError(f"expected {need} data bytes for n={n}, got {len(data) - 1}", lineno)
    bits = []
    for d in data[1:]:
        bits.extend((d >> s) & 1 for s in range(5, -1, -1))
    edges = []
    k = 0
    # column-major upper triangle: (0,1), (0,2), (1,2), (0,3), ...
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                edges.append((i + 1, j + 1))
            k += 1
    return make_hypergraph(n, 2, edges)


def parse_graph6(data: Union[bytes, str, Iterable[bytes]]) -> Iterator[Hypergraph]:
    """Yield one graph per non-empty line of a graph6 stream."""
    if isinstance(data, str):
        data = data.encode("ascii")
    if isinstance(data, (bytes, bytearray)):
        data = bytes(data).splitlines()
    for lineno, line in enumerate(data, start=1):
        line = line.strip()
        if line:
            yield _decode_graph6_line(line, lineno)


def encode_graph6(h: Hypergraph) -> bytes:
    if h.r != 2:
        raise FormatError("graph6 holds graphs only (r = 2)")
    if h.n > GRAPH6_MAX_N:
        raise FormatError("only the short form (n <= 62) is supported")
    n = h.n
    bits = [1 if h.has_edge((i + 1, j + 1)) else 0 for j in range(1, n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    out = [n + 63]
    for k in range(0, len(bits), 6):
        v = 0
        for b in bits[k:k + 6]:
            v = (v << 1) | b
        out.append(v + 63)
    return bytes(out)


# ---------------------------------------------------------------- reports


def round_sig(v: float, digits: int = SIG_DIGITS) -> float:
    if v == 0 or not math.isfinite(v):
        return v
    return float(f"{v:.{digits}g}")


def _clean(obj):
    """Plain JSON-able structure with floats cut to SIG_DIGITS."""
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_clean(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        if not math.isfinite(v):
            return str(v)
        return round_sig(v)
    if obj is None or isinstance(obj, str):
        return obj
    if hasattr(obj, "to_dict"):
        return _clean(obj.to_dict())
    return str(obj)


def _fmt(v) -> str:
    if isinstance(v, float):
        return f"{v:.{SIG_DIGITS}g}"
    if isinstance(v, list):
        return "[" + " ".join(_fmt(u) for u in v) + "]"
    return str(v)


def _rows(doc: dict) -> list[dict]:
    return doc["instances"] if isinstance(doc.get("instances"), list) else [doc]


def _flat(row: dict) -> dict:
    return {k: (json.dumps(v) if isinstance(v, (dict, list)) else v) for k, v in row.items()}


def render_report(report, fmt: str = "json") -> str:
    doc = _clean(report)
    if not isinstance(doc, dict):
        doc = {"value": doc}
    if fmt == "json":
        return json.dumps(doc, indent=2, sort_keys=False) + "\n"
    if fmt == "csv":
        rows = [_flat(r) for r in _rows(doc)]
        cols: list[str] = []
        for r in rows:
            cols.extend(k for k in r if k not in cols)
        buf = _io.StringIO()
        w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        return buf.getvalue()
    if fmt == "text":
        head = [f"{k}: {_fmt(v)}" for k, v in doc.items() if k != "instances"]
        if "instances" not in doc:
            return "\n".join(head) + "\n"
        rows = [_flat(r) for r in doc["instances"]]
        cols: list[str] = []
        for r in rows:
            cols.extend(k for k in r if k not in cols)
        cells = [[_fmt(r.get(c, "")) for c in cols] for r in rows]
        widths = [max([len(c)] + [len(row[i]) for row in cells]) for i, c in enumerate(cols)]
        table = ["  ".join(c.ljust(w) for c, w in zip(cols, widths))]
        table.append("  ".join("-" * w for w in widths))
        table.extend("  ".join(x.ljust(w) for x, w in zip(row, widths)) for row in cells)
        return "\n".join(head + [""] + table) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def write_report(report, fmt: str = "json", path: Union[str, Path, None] = None) -> str:
    """Serialise ``report`` (a dict or anything with ``to_dict``); write it if ``path`` is given."""
    text = render_report(report, fmt)
    if path is not None and str(path) != "-":
        try:
            Path(path).write_text(text)
        except OSError as exc:
            raise OSError(f"cannot write report to {path}: {exc}") from exc
    return text
