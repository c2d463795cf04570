"""Readers and writers for edge lists, DIMACS, PACE ``.gr`` and PACE ``.td`` files.

Every graph reader returns the graph together with a label table: entry
``i`` is the token that names vertex ``i`` in the file.
"""

from __future__ import annotations

from .errors import ParseError, SelfLoopError, ValidationError
from .graph import Graph
from .treedecomp import TreeDecomposition, validate

FORMATS = ("edge-list", "dimacs", "pace-gr")


def _text(data: bytes | str) -> str:
    if isinstance(data, bytes):
        try:
            return data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"not UTF-8 text: {exc}") from None
    return data


def _lines(data: bytes | str, comment: str):
    for number, raw in enumerate(_text(data).splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith(comment):
            continue
        yield number, line.split()


def _int(token: str, number: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"expected an integer, got {token!r}", number) from None


def _parse_edge_list(data) -> tuple[Graph, list[str]]:
    pairs = []
    for number, tokens in _lines(data, "#"):
        if len(tokens) != 2:
            raise ParseError(f"expected 'u v', got {' '.join(tokens)!r}", number)
        u, v = tokens
        if u == v:
            raise SelfLoopError(f"self-loop at {u}", number)
        pairs.append((u, v))
    names = {t for pair in pairs for t in pair}
    try:
        labels = sorted(names, key=int)
    except ValueError:
        labels = sorted(names)
    index = {label: i for i, label in enumerate(labels)}
    return Graph(len(labels), [(index[u], index[v]) for u, v in pairs]), labels


def _parse_numbered(data, header: str, edge_prefix: str | None) -> tuple[Graph, list[str]]:
    n = None
    edges = []
    for number, tokens in _lines(data, "c"):
        if tokens[0] == "p":
            if n is not None:
                raise ParseError("duplicate header", number)
            if len(tokens) != 4 or tokens[1] != header:
                raise ParseError(f"expected 'p {header} <n> <m>'", number)
            n = _int(tokens[2], number)
            _int(tokens[3], number)
            if n < 0:
                raise ParseError("negative vertex count", number)
            continue
        if n is None:
            raise ParseError("edge before header", number)
        if edge_prefix is not None:
            if tokens[0] != edge_prefix:
                raise ParseError(f"unexpected line type {tokens[0]!r}", number)
            tokens = tokens[1:]
        if len(tokens) != 2:
            raise ParseError("expected two vertex ids", number)
        u, v = (_int(t, number) for t in tokens)
        if not (1 <= u <= n and 1 <= v <= n):
            raise ParseError(f"vertex id outside 1..{n}", number)
        if u == v:
            raise SelfLoopError(f"self-loop at {u}", number)
        edges.append((u - 1, v - 1))
    if n is None:
        raise ParseError("missing header line")
    return Graph(n, edges), [str(i) for i in range(1, n + 1)]


def parse_graph(data: bytes | str, fmt: str = "edge-list") -> tuple[Graph, list[str]]:
    """Parse ``data`` in one of :data:`FORMATS`.

    Edge-list labels are ordered numerically when every label is an integer
    and as strings otherwise; DIMACS and PACE vertices keep their 1-based
    numbers as labels.  Duplicate edges collapse, self-loops are rejected.
    """
    if fmt == "edge-list":
        return _parse_edge_list(data)
    if fmt == "dimacs":
        return _parse_numbered(data, "edge", "e")
    if fmt == "pace-gr":
        return _parse_numbered(data, "tw", None)
    raise ValueError(f"unknown format {fmt!r}; choose from {FORMATS}")


def write_graph(g: Graph, fmt: str = "edge-list", labels: list[str] | None = None) -> str:
    """Canonical text: edges in lexicographic id order, one per line."""
    if fmt == "edge-list":
        names = labels if labels is not None else [str(i) for i in range(g.n)]
        return "".join(f"{names[u]} {names[v]}\n" for u, v in g.edges())
    if fmt == "dimacs":
        body = "".join(f"e {u + 1} {v + 1}\n" for u, v in g.edges())
        return f"p edge {g.n} {g.m}\n" + body
    if fmt == "pace-gr":
        body = "".join(f"{u + 1} {v + 1}\n" for u, v in g.edges())
        return f"p tw {g.n} {g.m}\n" + body
    raise ValueError(f"unknown format {fmt!r}; choose from {FORMATS}")


def parse_td(data: bytes | str, g: Graph | None = None, labels: list[str] | None = None) -> TreeDecomposition:
    """Parse a PACE ``.td`` file; validate it against ``g`` when given.

    Bag members are looked up in ``labels`` when given, otherwise read as
    1-based vertex numbers.
    """
    index = {label: i for i, label in enumerate(labels)} if labels is not None else None
    header = None
    bags: dict[int, frozenset[int]] = {}
    edges = []
    for number, tokens in _lines(data, "c"):
        if tokens[0] == "s":
            if header is not None:
                raise ParseError("duplicate header", number)
            if len(tokens) != 5 or tokens[1] != "td":
                raise ParseError("expected 's td <bags> <width+1> <n>'", number)
            header = tuple(_int(t, number) for t in tokens[2:])
            continue
        if header is None:
            raise ParseError("line before 's td' header", number)
        if tokens[0] == "b":
            if len(tokens) < 2:
                raise ParseError("bag line without id", number)
            bag_id = _int(tokens[1], number)
            if not 1 <= bag_id <= header[0]:
                raise ParseError(f"bag id {bag_id} outside 1..{header[0]}", number)
            if bag_id in bags:
                raise ParseError(f"bag {bag_id} listed twice", number)
            members = []
            for t in tokens[2:]:
                if index is not None:
                    if t not in index:
                        raise ParseError(f"unknown vertex label {t!r}", number)
                    members.append(index[t])
                else:
                    members.append(_int(t, number) - 1)
            bags[bag_id] = frozenset(members)
            continue
        if len(tokens) != 2:
            raise ParseError("expected a tree edge 'a b'", number)
        a, b = (_int(t, number) for t in tokens)
        edges.append((a - 1, b - 1))
    if header is None:
        raise ParseError("missing 's td' header")
    if len(bags) != header[0]:
        raise ParseError(f"header announces {header[0]} bags, found {len(bags)}")
    td = TreeDecomposition(tuple(bags[i] for i in range(1, header[0] + 1)), tuple(edges))
    if g is not None:
        report = validate(td, g)
        if not report.ok:
            raise ValidationError(report)
    return td


def write_td(td: TreeDecomposition, n: int) -> str:
    lines = [f"s td {len(td.bags)} {td.width + 1} {n}"]
    for i, bag in enumerate(td.bags, start=1):
        lines.append(" ".join(["b", str(i)] + [str(v + 1) for v in sorted(bag)]))
    lines += [f"{a + 1} {b + 1}" for a, b in td.edges]
    return "\n".join(lines) + "\n"
