"""Graph file formats: edge list, METIS, DIMACS and JSON with cluster metadata.

Vertex numbering is the graph's canonical id (cube vertex as integer, then
sorted dart ``(i, j)``, then the extra cube coordinate for products).  All
writers stream adjacency chunk by chunk.
"""
from __future__ import annotations

import io
import json

import numpy as np

from .construct import TruncatedCubeGraph, build_ncc_graph, cartesian_product_with_cube
from .planar import Triangulation

FORMATS = ("edge-list", "metis", "dimacs", "json")
SCHEMA = 1


def _edge_chunks(g):
    for start, rows in g.iter_rows():
        u = np.repeat(np.arange(start, start + len(rows), dtype=np.int64), g.degree)
        w = np.sort(rows, axis=1).ravel()
        keep = u < w
        yield np.stack([u[keep], w[keep]], axis=1)


def _write_rows(sink, arr, fmt):
    if len(arr):
        np.savetxt(sink, arr, fmt=fmt)


def graph_metadata(g) -> dict:
    return {
        "schema": SCHEMA,
        "m": g.m,
        "k": g.k,
        "seed": g.seed,
        "blueprint": [[j + 1 for j in r] for r in g.blueprint.rotation],
        "n": g.n,
        "n_edges": g.n_edges,
        "degree": g.degree,
        "cluster_size": g.fiber,
        "vertex_order": "(cube vertex as integer, i, j, extra cube vertex); cluster = id // cluster_size",
    }


def export_graph(g, fmt: str, sink=None):
    """Serialise ``g``; returns bytes when ``sink`` is None, else writes to the binary sink."""
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}; choose from {', '.join(FORMATS)}")
    own = sink is None
    out = io.BytesIO() if own else sink
    n, e = g.n, g.n_edges
    if fmt == "edge-list":
        out.write(f"# {n} {e}\n".encode())
        for chunk in _edge_chunks(g):
            _write_rows(out, chunk, "%d")
    elif fmt == "dimacs":
        out.write(f"p edge {n} {e}\n".encode())
        for chunk in _edge_chunks(g):
            _write_rows(out, chunk + 1, "e %d %d")
    elif fmt == "metis":
        out.write(f"{n} {e}\n".encode())
        for _, rows in g.iter_rows():
            _write_rows(out, np.sort(rows, axis=1) + 1, "%d")
    else:
        meta = json.dumps(graph_metadata(g))
        out.write(meta[:-1].encode() + b', "edges": [')
        first = True
        for chunk in _edge_chunks(g):
            if not len(chunk):
                continue
            body = "],[".join(f"{u},{v}" for u, v in chunk.tolist())
            out.write(("" if first else ",").encode() + f"[{body}]".encode())
            first = False
        out.write(b"]}\n")
    if own:
        return out.getvalue()
    return None


def read_edge_list(data: bytes) -> tuple[int, np.ndarray]:
    text = data.decode()
    first = text.split("\n", 1)[0]
    if not first.startswith("#"):
        raise ValueError("edge list must start with '# n_vertices n_edges'")
    n, e = map(int, first[1:].split())
    edges = np.loadtxt(io.StringIO(text), dtype=np.int64, comments="#", ndmin=2)
    if edges.shape != (e, 2):
        raise ValueError(f"expected {e} edges, read {len(edges)}")
    return n, edges


def read_metis(data: bytes) -> tuple[int, np.ndarray]:
    lines = data.decode().splitlines()
    n, e = map(int, lines[0].split())
    pairs = []
    for u, line in enumerate(lines[1 : n + 1]):
        for v in line.split():
            v = int(v) - 1
            if u < v:
                pairs.append((u, v))
    edges = np.array(sorted(pairs), dtype=np.int64).reshape(-1, 2)
    if len(edges) != e:
        raise ValueError(f"header says {e} edges, adjacency lists give {len(edges)}")
    return n, edges


def read_dimacs(data: bytes) -> tuple[int, np.ndarray]:
    n = e = None
    pairs = []
    for line in data.decode().splitlines():
        parts = line.split()
        if not parts or parts[0] == "c":
            continue
        if parts[0] == "p":
            n, e = int(parts[2]), int(parts[3])
        elif parts[0] == "e":
            pairs.append((int(parts[1]) - 1, int(parts[2]) - 1))
    if n is None or len(pairs) != e:
        raise ValueError("malformed DIMACS data")
    return n, np.array(pairs, dtype=np.int64).reshape(-1, 2)


class GraphFileError(ValueError):
    pass


def load_graph_json(data: bytes | str | dict):
    """Rebuild a graph from its JSON export and check its edge list against the rebuild."""
    try:
        doc = json.loads(data) if isinstance(data, (bytes, str)) else data
    except json.JSONDecodeError as exc:
        raise GraphFileError(f"graph file is not JSON: {exc}") from exc
    if not isinstance(doc, dict) or doc.get("schema") != SCHEMA:
        schema = doc.get("schema") if isinstance(doc, dict) else None
        raise GraphFileError(f"unsupported graph schema {schema!r}")
    try:
        rot = tuple(tuple(j - 1 for j in r) for r in doc["blueprint"])
        blueprint = Triangulation(rot)
        blueprint.validate()
        g = TruncatedCubeGraph(int(doc["m"]), blueprint, doc.get("seed"))
        if doc.get("k", 0):
            g = cartesian_product_with_cube(g, int(doc["k"]))
        edges = np.asarray(doc["edges"], dtype=np.int64).reshape(-1, 2)
    except (KeyError, TypeError, ValueError) as exc:
        raise GraphFileError(f"malformed graph file: {exc}") from exc
    if not np.array_equal(edges, g.edge_array()):
        raise GraphFileError("edge list does not match the graph rebuilt from its blueprint")
    return g


def graph_from_config(m: int, seed=0, blueprint: Triangulation | None = None, k: int = 0):
    g = build_ncc_graph(m, blueprint, seed)
    return cartesian_product_with_cube(g, k) if k else g

