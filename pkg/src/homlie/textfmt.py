"""Reader and writer for the plain-text definition format.

    # comment
    algebra heis3 { dim 3; alpha = [0,0,0; 0,0,0; 0,0,0]; bracket(1,2) = [0,0,1]; }
    action G -> H { act(1,2) = [1,0]; }
    subspace K in heis3 { vec = [0,0,1]; }

Indices are 1-based; bracket entries require i < j; ``alpha`` rows are
matrix rows and default to zero when omitted.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from . import linalg as la
from .actions import HomAction
from .algebra import HomLieAlgebra
from .errors import ParseError, SemanticError
from .linalg import Matrix, Subspace

_TOKEN = re.compile(
    r"(?P<ws>[ \t\r]+)|(?P<nl>\n)|(?P<comment>#[^\n]*)"
    r"|(?P<arrow>->)|(?P<num>-?\d+(?:/\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z0-9_.']*)"
    r"|(?P<punct>[{}\[\]();,=])"
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int


def tokenize(text: str) -> list:
    out, line, pos = [], 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
        elif kind not in ("ws", "comment"):
            out.append(Token(kind, m.group(), line))
        pos = m.end()
    return out


@dataclass(frozen=True)
class DefinitionDocument:
    algebras: dict = field(default_factory=dict)  # name -> HomLieAlgebra
    actions: dict = field(default_factory=dict)  # (actor, target) -> HomAction
    subspaces: dict = field(default_factory=dict)  # name -> (algebra name, Subspace)

    def algebra(self, name: str) -> HomLieAlgebra:
        try:
            return self.algebras[name]
        except KeyError:
            raise SemanticError(f"unknown algebra {name!r}") from None

    def action(self, actor: str, target: str) -> HomAction:
        try:
            return self.actions[(actor, target)]
        except KeyError:
            raise SemanticError(f"no action {actor} -> {target}") from None

    def subspace(self, name: str) -> Subspace:
        try:
            return self.subspaces[name][1]
        except KeyError:
            raise SemanticError(f"unknown subspace {name!r}") from None


class _Parser:
    def __init__(self, tokens):
        self.toks = tokens
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def line(self):
        t = self.peek()
        if t is not None:
            return t.line
        return self.toks[-1].line if self.toks else 1

    def next(self, kind=None, text=None, what=None):
        t = self.peek()
        if t is None or (kind and t.kind != kind) or (text and t.text != text):
            want = what or text or kind
            got = "end of input" if t is None else repr(t.text)
            raise ParseError(f"expected {want}, found {got}", self.line())
        self.i += 1
        return t

    def at(self, text):
        t = self.peek()
        return t is not None and t.text == text

    def integer(self, what="integer"):
        t = self.next("num", what=what)
        if "/" in t.text:
            raise ParseError(f"expected {what}, found {t.text!r}", t.line)
        return int(t.text), t.line

    def rational(self):
        t = self.next("num", what="rational")
        try:
            return la.parse_rational(t.text)
        except ValueError as exc:
            raise ParseError(str(exc), t.line) from None

    def vector(self):
        self.next(text="[")
        vals = []
        if not self.at("]"):
            while True:
                vals.append(self.rational())
                if self.at(","):
                    self.next()
                    continue
                break
        self.next(text="]")
        return tuple(vals)

    def matrix_rows(self):
        self.next(text="[")
        rows, cur = [], []
        if self.at("]"):
            self.next()
            return rows
        while True:
            cur.append(self.rational())
            if self.at(","):
                self.next()
            elif self.at(";"):
                self.next()
                rows.append(tuple(cur))
                cur = []
            else:
                break
        rows.append(tuple(cur))
        self.next(text="]")
        return rows


def _parse_algebra(p: _Parser, doc_alg: dict):
    start = p.next("name", what="algebra name")
    name = start.text
    if name in doc_alg:
        raise SemanticError(f"duplicate algebra {name!r}", start.line)
    p.next(text="{")
    dim = alpha_rows = None
    alpha_line = start.line
    entries = {}
    while not p.at("}"):
        key = p.next("name", what="'dim', 'alpha' or 'bracket'")
        if key.text == "dim":
            if dim is not None:
                raise SemanticError("dim given twice", key.line)
            dim, _ = p.integer("dimension")
        elif key.text == "alpha":
            p.next(text="=")
            alpha_line = key.line
            alpha_rows = p.matrix_rows()
        elif key.text == "bracket":
            if dim is None:
                raise SemanticError("dim must precede bracket entries", key.line)
            p.next(text="(")
            i, _ = p.integer("index")
            p.next(text=",")
            j, _ = p.integer("index")
            p.next(text=")")
            p.next(text="=")
            v = p.vector()
            if not (1 <= i <= dim and 1 <= j <= dim):
                raise SemanticError(f"bracket index ({i},{j}) out of range 1..{dim}", key.line)
            if i >= j:
                raise SemanticError(f"bracket entry ({i},{j}) must have i < j", key.line)
            if len(v) != dim:
                raise SemanticError(f"bracket value has length {len(v)}, expected {dim}", key.line)
            if (i - 1, j - 1) in entries:
                raise SemanticError(f"bracket ({i},{j}) given twice", key.line)
            entries[(i - 1, j - 1)] = v
        else:
            raise ParseError(f"unknown algebra field {key.text!r}", key.line)
        p.next(text=";")
    p.next(text="}")
    if dim is None:
        raise SemanticError(f"algebra {name!r} has no dim", start.line)
    if alpha_rows is None:
        alpha = Matrix.zeros(dim, dim)
    else:
        if dim == 0 and alpha_rows == [()]:
            alpha_rows = []
        if len(alpha_rows) != dim or any(len(r) != dim for r in alpha_rows):
            raise SemanticError(f"alpha must be {dim}x{dim}", alpha_line)
        alpha = Matrix.from_rows(alpha_rows, dim)
    doc_alg[name] = HomLieAlgebra.from_brackets(name, dim, entries, alpha)


def _parse_action(p: _Parser, algebras: dict, actions: dict):
    a = p.next("name", what="actor name")
    p.next("arrow", what="'->'")
    b = p.next("name", what="target name")
    for t in (a, b):
        if t.text not in algebras:
            raise SemanticError(f"unknown algebra {t.text!r}", t.line)
    if (a.text, b.text) in actions:
        raise SemanticError(f"duplicate action {a.text} -> {b.text}", a.line)
    L, M = algebras[a.text], algebras[b.text]
    p.next(text="{")
    entries = {}
    while not p.at("}"):
        key = p.next("name", text="act", what="'act'")
        p.next(text="(")
        i, _ = p.integer("index")
        p.next(text=",")
        j, _ = p.integer("index")
        p.next(text=")")
        p.next(text="=")
        v = p.vector()
        p.next(text=";")
        if not (1 <= i <= L.dim and 1 <= j <= M.dim):
            raise SemanticError(f"act index ({i},{j}) out of range", key.line)
        if len(v) != M.dim:
            raise SemanticError(f"act value has length {len(v)}, expected {M.dim}", key.line)
        if (i - 1, j - 1) in entries:
            raise SemanticError(f"act ({i},{j}) given twice", key.line)
        entries[(i - 1, j - 1)] = v
    p.next(text="}")
    actions[(a.text, b.text)] = HomAction.from_entries(L, M, entries)


def _parse_subspace(p: _Parser, algebras: dict, subspaces: dict):
    n = p.next("name", what="subspace name")
    if n.text in subspaces or n.text in algebras:
        raise SemanticError(f"duplicate name {n.text!r}", n.line)
    p.next("name", text="in", what="'in'")
    a = p.next("name", what="algebra name")
    if a.text not in algebras:
        raise SemanticError(f"unknown algebra {a.text!r}", a.line)
    dim = algebras[a.text].dim
    p.next(text="{")
    vecs = []
    while not p.at("}"):
        key = p.next("name", text="vec", what="'vec'")
        p.next(text="=")
        v = p.vector()
        p.next(text=";")
        if len(v) != dim:
            raise SemanticError(f"vector has length {len(v)}, expected {dim}", key.line)
        vecs.append(v)
    p.next(text="}")
    subspaces[n.text] = (a.text, la.canonicalize(vecs, dim))


def parse(text: str) -> DefinitionDocument:
    p = _Parser(tokenize(text))
    algebras, actions, subspaces = {}, {}, {}
    while p.peek() is not None:
        kw = p.next("name", what="'algebra', 'action' or 'subspace'")
        if kw.text == "algebra":
            nxt = p.peek()
            if nxt is not None and nxt.text in subspaces:
                raise SemanticError(f"duplicate name {nxt.text!r}", nxt.line)
            _parse_algebra(p, algebras)
        elif kw.text == "action":
            _parse_action(p, algebras, actions)
        elif kw.text == "subspace":
            _parse_subspace(p, algebras, subspaces)
        else:
            raise ParseError(f"unknown block {kw.text!r}", kw.line)
    return DefinitionDocument(algebras, actions, subspaces)


def _fmt_vec(v) -> str:
    return "[" + ", ".join(la.format_rational(x) for x in v) + "]"


def serialize_algebra(L: HomLieAlgebra) -> str:
    lines = [f"algebra {L.name} {{", f"  dim {L.dim};"]
    rows = "; ".join(", ".join(la.format_rational(x) for x in r) for r in L.alpha.rows)
    lines.append(f"  alpha = [{rows}];")
    for i in range(L.dim):
        for j in range(i + 1, L.dim):
            v = L.structure[i][j]
            if not la.is_zero(v):
                lines.append(f"  bracket({i + 1},{j + 1}) = {_fmt_vec(v)};")
    lines.append("}")
    return "\n".join(lines)


def serialize_action(actor: str, target: str, act: HomAction) -> str:
    lines = [f"action {actor} -> {target} {{"]
    for i, row in enumerate(act.table):
        for j, v in enumerate(row):
            if not la.is_zero(v):
                lines.append(f"  act({i + 1},{j + 1}) = {_fmt_vec(v)};")
    lines.append("}")
    return "\n".join(lines)


def serialize_subspace(name: str, algebra: str, S: Subspace) -> str:
    lines = [f"subspace {name} in {algebra} {{"]
    lines += [f"  vec = {_fmt_vec(b)};" for b in S.basis]
    lines.append("}")
    return "\n".join(lines)


def serialize(doc: DefinitionDocument) -> str:
    """Canonical text: algebras, then actions, then subspaces, each in insertion order."""
    blocks = [serialize_algebra(L) for L in doc.algebras.values()]
    blocks += [serialize_action(a, b, act) for (a, b), act in doc.actions.items()]
    blocks += [serialize_subspace(n, a, S) for n, (a, S) in doc.subspaces.items()]
    return "\n\n".join(blocks) + "\n"
