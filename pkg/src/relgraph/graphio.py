"""Edge-list text format (primary) and DIMACS ``.col`` (read-only interop).

Edge list::

    n m
    u v        (m lines, 0 <= u < v < n)

DIMACS::

    c comment
    p edge n m
    e u v      (1-indexed)
"""

from __future__ import annotations

from pathlib import Path

from .errors import ParseError
from .graph import Graph, norm_edge


def _int(token: str, lineno: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"expected an integer, got {token!r}", lineno) from None


def _add_edge(edges: set, u: int, v: int, n: int, lineno: int) -> None:
    if u == v:
        raise ParseError(f"self-loop at vertex {u}", lineno)
    if not (0 <= u < n and 0 <= v < n):
        raise ParseError(f"vertex index out of range [0, {n})", lineno)
    e = norm_edge(u, v)
    if e in edges:
        raise ParseError(f"duplicate edge {e[0]} {e[1]}", lineno)
    edges.add(e)


def _looks_dimacs(lines: list[tuple[int, str]]) -> bool:
    return bool(lines) and lines[0][1].split()[0] in {"c", "p"}


def parse_graph(text: str) -> Graph:
    lines = [(i, ln.strip()) for i, ln in enumerate(text.splitlines(), start=1)]
    lines = [(i, ln) for i, ln in lines if ln]
    if not lines:
        raise ParseError("empty input", 1)
    if _looks_dimacs(lines):
        return _parse_dimacs(lines)

    header_no, header = lines[0]
    parts = header.split()
    if len(parts) != 2:
        raise ParseError("header must be 'n m'", header_no)
    n, m = _int(parts[0], header_no), _int(parts[1], header_no)
    if n < 0 or m < 0:
        raise ParseError("negative header value", header_no)
    body = lines[1:]
    if len(body) != m:
        last = body[-1][0] if body else header_no
        raise ParseError(f"header announces {m} edges, found {len(body)}", last)
    edges: set = set()
    for lineno, ln in body:
        toks = ln.split()
        if len(toks) != 2:
            raise ParseError("edge line must be 'u v'", lineno)
        _add_edge(edges, _int(toks[0], lineno), _int(toks[1], lineno), n, lineno)
    return Graph.from_edges(n, edges)


def _parse_dimacs(lines: list[tuple[int, str]]) -> Graph:
    n = None
    m = None
    edges: set = set()
    for lineno, ln in lines:
        toks = ln.split()
        tag = toks[0]
        if tag == "c":
            continue
        if tag == "p":
            if n is not None:
                raise ParseError("second problem line", lineno)
            if len(toks) != 4 or toks[1] not in {"edge", "col"}:
                raise ParseError("problem line must be 'p edge n m'", lineno)
            n, m = _int(toks[2], lineno), _int(toks[3], lineno)
        elif tag == "e":
            if n is None:
                raise ParseError("edge line before problem line", lineno)
            if len(toks) != 3:
                raise ParseError("edge line must be 'e u v'", lineno)
            _add_edge(edges, _int(toks[1], lineno) - 1, _int(toks[2], lineno) - 1, n, lineno)
        else:
            raise ParseError(f"unknown DIMACS line type {tag!r}", lineno)
    if n is None:
        raise ParseError("missing 'p edge n m' line", lines[-1][0])
    if m != len(edges):
        raise ParseError(f"problem line announces {m} edges, found {len(edges)}", lines[-1][0])
    return Graph.from_edges(n, edges)


def write_graph(g: Graph) -> str:
    out = [f"{g.n} {g.m}"]
    out.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(out) + "\n"


def read_graph_file(path: str | Path) -> Graph:
    return parse_graph(Path(path).read_text(encoding="utf-8"))


def write_graph_file(path: str | Path, g: Graph) -> None:
    Path(path).write_text(write_graph(g), encoding="utf-8", newline="\n")
