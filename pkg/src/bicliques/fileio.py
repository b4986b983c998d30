"""Line-oriented plain-text instance and certificate formats.

All formats are UTF-8 with `#` starting a comment that runs to end of line.
Rationals are written `p/q` or as plain integers.

Interval file      lines `I <id> <left> <right> [<part>]`
Subtree file       header `T <n>`, edges `E <u> <v>`,
                   members `S <id> [<part>] : <v1> <v2> ...`
Cotree file        one s-expression `expr := <id> | (U expr expr+) | (C expr)`,
                   optionally followed by partition lines `P <id> <part>`
Edge-list file     header `G <n>`, edges `E <u> <v>` (plain graphs)
Partition file     lines `P <id> <part>`
Certificate file   `BICLIQUE kind=<complete|empty>` then `A: <ids>` `B: <ids>`
"""

from __future__ import annotations

from fractions import Fraction

from .core import (
    BicliqueCertificate,
    Graph,
    InputError,
    IntervalFamily,
    IntervalMember,
    Partition,
    Subtree,
    SubtreeFamily,
    SubtreeMember,
    Tree,
)


def _strip_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def parse_fraction(token: str, lineno: int = 0) -> Fraction:
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"line {lineno}: bad rational {token!r}") from None


def _parse_int(token: str, lineno: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise InputError(f"line {lineno}: bad {what} {token!r}") from None


# ---------------------------------------------------------------------------
# interval families
# ---------------------------------------------------------------------------

def parse_interval_family(text: str) -> IntervalFamily:
    members = []
    for lineno, line in _strip_lines(text):
        tokens = line.split()
        if tokens[0] != "I":
            raise InputError(f"line {lineno}: expected interval line, got {tokens[0]!r}")
        if len(tokens) not in (4, 5):
            raise InputError(f"line {lineno}: interval line needs 3 or 4 fields")
        ident = _parse_int(tokens[1], lineno, "id")
        left = parse_fraction(tokens[2], lineno)
        right = parse_fraction(tokens[3], lineno)
        part = _parse_int(tokens[4], lineno, "part") if len(tokens) == 5 else None
        members.append(IntervalMember(ident, part, left, right))
    return IntervalFamily(tuple(members))


def format_interval_family(fam: IntervalFamily) -> str:
    lines = []
    for m in sorted(fam.members, key=lambda m: m.id):
        base = f"I {m.id} {m.left} {m.right}"
        lines.append(base + (f" {m.part}" if m.part is not None else ""))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# subtree families
# ---------------------------------------------------------------------------

def parse_subtree_family(text: str) -> SubtreeFamily:
    n = None
    edges = []
    members = []
    for lineno, line in _strip_lines(text):
        tokens = line.split()
        tag = tokens[0]
        if tag == "T":
            if n is not None:
                raise InputError(f"line {lineno}: duplicate T header")
            n = _parse_int(tokens[1], lineno, "vertex count")
        elif tag == "E":
            if len(tokens) != 3:
                raise InputError(f"line {lineno}: edge line needs two vertices")
            edges.append(
                (_parse_int(tokens[1], lineno, "vertex"), _parse_int(tokens[2], lineno, "vertex"))
            )
        elif tag == "S":
            if ":" not in tokens:
                raise InputError(f"line {lineno}: member line missing ':'")
            colon = tokens.index(":")
            head = tokens[1:colon]
            if len(head) == 1:
                ident, part = _parse_int(head[0], lineno, "id"), None
            elif len(head) == 2:
                ident = _parse_int(head[0], lineno, "id")
                part = _parse_int(head[1], lineno, "part")
            else:
                raise InputError(f"line {lineno}: member line head needs id [part]")
            verts = [_parse_int(t, lineno, "vertex") for t in tokens[colon + 1 :]]
            if not verts:
                raise InputError(f"line {lineno}: member {ident} has no vertices")
            members.append(SubtreeMember(ident, part, Subtree(tuple(verts))))
        else:
            raise InputError(f"line {lineno}: unknown line tag {tag!r}")
    if n is None:
        raise InputError("subtree file missing T header")
    return SubtreeFamily(Tree.from_edges(n, edges), tuple(members))


def format_subtree_family(fam: SubtreeFamily, header_comments: tuple = ()) -> str:
    lines = [f"# {c}" for c in header_comments]
    lines.append(f"T {fam.ambient.n}")
    for u, v in sorted(fam.ambient.edges):
        lines.append(f"E {u} {v}")
    for m in sorted(fam.members, key=lambda m: m.id):
        part = f" {m.part}" if m.part is not None else ""
        verts = " ".join(str(v) for v in m.subtree.vertices)
        lines.append(f"S {m.id}{part} : {verts}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# plain graphs and partitions
# ---------------------------------------------------------------------------

def parse_edge_list(text: str) -> Graph:
    n = None
    edges = []
    for lineno, line in _strip_lines(text):
        tokens = line.split()
        if tokens[0] == "G":
            n = _parse_int(tokens[1], lineno, "vertex count")
        elif tokens[0] == "E":
            edges.append(
                (_parse_int(tokens[1], lineno, "vertex"), _parse_int(tokens[2], lineno, "vertex"))
            )
        elif tokens[0] == "P":
            continue  # partitions may ride along in graph files
        else:
            raise InputError(f"line {lineno}: unknown line tag {tokens[0]!r}")
    if n is None:
        raise InputError("edge-list file missing G header")
    return Graph.from_edges(n, edges)


def format_edge_list(g: Graph) -> str:
    lines = [f"G {g.n}"]
    for u, v in sorted(g.edges):
        lines.append(f"E {u} {v}")
    return "\n".join(lines) + "\n"


def parse_partition_lines(text: str):
    """Partition from `P <id> <part>` lines, or None when there are none."""
    mapping = {}
    for lineno, line in _strip_lines(text):
        tokens = line.split()
        if tokens[0] != "P":
            continue
        if len(tokens) != 3:
            raise InputError(f"line {lineno}: partition line needs id and part")
        ident = _parse_int(tokens[1], lineno, "id")
        part = _parse_int(tokens[2], lineno, "part")
        if part not in (1, 2):
            raise InputError(f"line {lineno}: part must be 1 or 2")
        if ident in mapping:
            raise InputError(f"line {lineno}: duplicate partition entry for {ident}")
        mapping[ident] = part
    return Partition.from_mapping(mapping) if mapping else None


def format_partition(partition: Partition) -> str:
    return "\n".join(f"P {i} {p}" for i, p in partition.assignment) + "\n"


# ---------------------------------------------------------------------------
# certificates
# ---------------------------------------------------------------------------

def parse_certificate(text: str) -> BicliqueCertificate:
    kind = None
    sides = {"A": None, "B": None}
    for lineno, line in _strip_lines(text):
        if line.startswith("BICLIQUE"):
            tokens = line.split()
            for tok in tokens[1:]:
                if tok.startswith("kind="):
                    kind = tok[len("kind=") :]
            if kind is None:
                raise InputError(f"line {lineno}: BICLIQUE line missing kind=")
        elif line.startswith("A:") or line.startswith("B:"):
            side = line[0]
            ids = tuple(_parse_int(t, lineno, "id") for t in line[2:].split())
            if sides[side] is not None:
                raise InputError(f"line {lineno}: duplicate side {side}")
            sides[side] = ids
        else:
            raise InputError(f"line {lineno}: unexpected certificate line {line!r}")
    if kind is None or sides["A"] is None or sides["B"] is None:
        raise InputError("certificate file incomplete")
    return BicliqueCertificate(kind, sides["A"], sides["B"])


def format_certificate(cert: BicliqueCertificate) -> str:
    a = " ".join(str(i) for i in cert.side_a)
    b = " ".join(str(i) for i in cert.side_b)
    return (
        f"BICLIQUE kind={cert.kind}\n"
        + (f"A: {a}\n" if a else "A:\n")
        + (f"B: {b}\n" if b else "B:\n")
    )


def sniff_format(text: str) -> str:
    """Classify an instance file by its first meaningful token."""
    for _, line in _strip_lines(text):
        head = line.split()[0]
        if head == "I":
            return "interval"
        if head == "T":
            return "subtree"
        if head == "G":
            return "graph"
        if head == "(" or line.startswith("("):
            return "cotree"
        if head.isdigit():
            return "cotree"
        raise InputError(f"cannot classify instance starting with {head!r}")
    raise InputError("empty instance file")
