"""Line-oriented text format for groups, homomorphisms, actions, crossed modules
and internal categories.

::

    # comments run to end of line
    group S3 builtin symmetric 3
    group Z2 order 2
    0 1
    1 0
    hom sgn : S3 -> Z2
    0 1 1 0 0 1
    action conj : S3 on A3
    ...one row of |A3| indices per element of S3
    xmod X = ( A3, S3, incl, conj )
    internalcat I = ( A, O, s=src, t=tgt, e=ids )
    comp
    ...one composite per composable pair, in f-major pair order

Element 0 is the identity of every group. Builtins are sugar: the serializer
writes every group as an explicit table.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Any, Iterator, Optional, Union

import numpy as np

from .core.catalog import BUILTINS, builtin
from .core.groups import FiniteGroup, GroupAction, Hom, order_cap
from .crossed_modules import CrossedModule
from .errors import MalformedInputError
from .internal_categories import InternalCategory, InternalDigraph

KEYWORDS = ("group", "hom", "action", "xmod", "internalcat")
_TOKEN = re.compile(r"->|[(),:=]|[^\s(),:=#]+")
_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_.]*\Z")
_INT = re.compile(r"[0-9]+\Z")


@dataclass(frozen=True)
class Diagnostic:
    severity: str
    line: int
    column: int
    message: str

    def format(self, filename: str = "<spec>") -> str:
        return f"{filename}:{self.line}:{self.column}: {self.severity}: {self.message}"


class SpecSyntaxError(MalformedInputError):
    """Raised by :func:`parse_spec`; ``diagnostics`` lists every declaration-level error."""

    def __init__(self, diagnostics: list[Diagnostic]):
        self.diagnostics = diagnostics
        super().__init__("; ".join(d.format() for d in diagnostics))


# Declarations. Source positions and built objects do not take part in equality,
# so a document equals its reparsed serialization.

@dataclass
class GroupDecl:
    name: str
    table: tuple
    builtin: Optional[tuple] = field(default=None, compare=False)
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)
    obj: Any = field(default=None, compare=False, repr=False)
    kind = "group"


@dataclass
class HomDecl:
    name: str
    source: str
    target: str
    images: tuple
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)
    obj: Any = field(default=None, compare=False, repr=False)
    kind = "hom"


@dataclass
class ActionDecl:
    name: str
    group: str
    carrier: str
    table: tuple
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)
    obj: Any = field(default=None, compare=False, repr=False)
    kind = "action"


@dataclass
class XmodDecl:
    name: str
    C: str
    G: str
    boundary: str
    action: str
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)
    obj: Any = field(default=None, compare=False, repr=False)
    kind = "xmod"


@dataclass
class InternalCatDecl:
    name: str
    A: str
    O: str
    s: str
    t: str
    e: str
    comp: tuple
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)
    obj: Any = field(default=None, compare=False, repr=False)
    kind = "internalcat"


Declaration = Union[GroupDecl, HomDecl, ActionDecl, XmodDecl, InternalCatDecl]


@dataclass
class SpecDocument:
    declarations: list = field(default_factory=list)

    def __iter__(self) -> Iterator[Declaration]:
        return iter(self.declarations)

    def __len__(self) -> int:
        return len(self.declarations)

    def get(self, name: str) -> Declaration:
        for d in self.declarations:
            if d.name == name:
                return d
        raise KeyError(name)

    def names(self) -> list[str]:
        return [d.name for d in self.declarations]

    # builders used by the constructions

    def add_group(self, name: str, G: FiniteGroup) -> GroupDecl:
        d = GroupDecl(name, _rows(G.table), obj=G)
        self._append(d)
        return d

    def add_hom(self, name: str, f: Hom, source: str, target: str) -> HomDecl:
        d = HomDecl(name, source, target, tuple(int(x) for x in f.map), obj=f)
        self._append(d)
        return d

    def add_action(self, name: str, act: GroupAction, group: str, carrier: str) -> ActionDecl:
        d = ActionDecl(name, group, carrier, _rows(act.table), obj=act)
        self._append(d)
        return d

    def add_xmod(self, name: str, xm: CrossedModule, C: str, G: str, boundary: str, action: str) -> XmodDecl:
        d = XmodDecl(name, C, G, boundary, action, obj=xm)
        self._append(d)
        return d

    def add_internalcat(self, name: str, ic: InternalCategory, A: str, O: str, s: str, t: str, e: str) -> InternalCatDecl:
        d = InternalCatDecl(name, A, O, s, t, e, tuple(int(x) for x in ic.comp), obj=ic)
        self._append(d)
        return d

    def _append(self, d) -> None:
        if d.name in self.names():
            raise MalformedInputError(f"duplicate name {d.name!r}")
        self.declarations.append(d)


def _rows(arr) -> tuple:
    return tuple(tuple(int(x) for x in row) for row in np.asarray(arr))


class _Fail(Exception):
    def __init__(self, line: int, column: int, message: str):
        self.diag = Diagnostic("error", line, column, message)


@dataclass
class _Line:
    number: int
    tokens: list  # [(text, column)]

    @property
    def head(self) -> str:
        return self.tokens[0][0]


def _lex(text: str) -> list[_Line]:
    lines = []
    for number, raw in enumerate(text.split("\n"), start=1):
        body = raw.split("#", 1)[0]
        tokens = [(m.group(), m.start() + 1) for m in _TOKEN.finditer(body)]
        if tokens:
            lines.append(_Line(number, tokens))
    return lines


class _Cursor:
    """Walks the tokens of one header line."""

    def __init__(self, line: _Line):
        self.line = line
        self.pos = 1  # token 0 is the keyword

    def _where(self) -> tuple[int, int]:
        if self.pos < len(self.line.tokens):
            return self.line.number, self.line.tokens[self.pos][1]
        text, col = self.line.tokens[-1]
        return self.line.number, col + len(text) - 1

    def fail(self, message: str):
        raise _Fail(*self._where(), message)

    def next(self, what: str) -> tuple[str, int]:
        if self.pos >= len(self.line.tokens):
            self.fail(f"expected {what} at end of line")
        tok = self.line.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, literal: str) -> None:
        text, col = self.next(repr(literal))
        if text != literal:
            raise _Fail(self.line.number, col, f"expected {literal!r}, got {text!r}")

    def name(self) -> tuple[str, int]:
        text, col = self.next("a name")
        if not _NAME.match(text) or text in KEYWORDS:
            raise _Fail(self.line.number, col, f"invalid name {text!r}")
        return text, col

    def integer(self) -> tuple[int, int]:
        text, col = self.next("an integer")
        if not _INT.match(text):
            raise _Fail(self.line.number, col, f"expected an integer, got {text!r}")
        return int(text), col

    def end(self) -> None:
        if self.pos < len(self.line.tokens):
            text, col = self.line.tokens[self.pos]
            raise _Fail(self.line.number, col, f"unexpected {text!r} after declaration")


class _Parser:
    def __init__(self, text: str):
        self.lines = _lex(text)
        self.i = 0
        self.doc = SpecDocument()
        self.scope: dict[str, Declaration] = {}
        self.diagnostics: list[Diagnostic] = []

    def run(self) -> SpecDocument:
        while self.i < len(self.lines):
            line = self.lines[self.i]
            self.i += 1
            try:
                if line.head not in KEYWORDS:
                    raise _Fail(line.number, line.tokens[0][1], f"expected a declaration keyword, got {line.head!r}")
                decl = getattr(self, "_" + line.head)(_Cursor(line))
                self.doc.declarations.append(decl)
                self.scope[decl.name] = decl
            except _Fail as exc:
                self.diagnostics.append(exc.diag)
                self._skip_to_keyword()
        if self.diagnostics:
            raise SpecSyntaxError(self.diagnostics)
        return self.doc

    def _skip_to_keyword(self) -> None:
        while self.i < len(self.lines) and self.lines[self.i].head not in KEYWORDS:
            self.i += 1

    def _rows(self, header: _Line, count: int, width: int, what: str) -> tuple:
        rows = []
        for k in range(count):
            if self.i >= len(self.lines) or self.lines[self.i].head in KEYWORDS:
                where = self.lines[self.i] if self.i < len(self.lines) else header
                raise _Fail(where.number, where.tokens[0][1], f"{what}: expected {count} rows, found {k}")
            line = self.lines[self.i]
            self.i += 1
            if len(line.tokens) != width:
                raise _Fail(line.number, line.tokens[0][1], f"row length {len(line.tokens)}, expected {width}")
            row = []
            for text, col in line.tokens:
                if not _INT.match(text):
                    raise _Fail(line.number, col, f"expected an integer, got {text!r}")
                row.append(int(text))
            rows.append(tuple(row))
        return tuple(rows)

    def _declared_name(self, cur: _Cursor) -> tuple[str, int]:
        name, col = cur.name()
        if name in self.scope:
            raise _Fail(cur.line.number, col, f"duplicate name {name!r}")
        return name, col

    def _ref(self, cur: _Cursor, kind: str) -> Declaration:
        name, col = cur.name()
        decl = self.scope.get(name)
        if decl is None:
            raise _Fail(cur.line.number, col, f"unknown {kind} {name!r}")
        if decl.kind != kind:
            raise _Fail(cur.line.number, col, f"{name!r} is a {decl.kind}, expected a {kind}")
        return decl

    def _group(self, cur: _Cursor) -> GroupDecl:
        name, col = self._declared_name(cur)
        mode, mcol = cur.next("'order' or 'builtin'")
        if mode == "order":
            n, ncol = cur.integer()
            cur.end()
            cap = order_cap()
            if n < 1:
                raise _Fail(cur.line.number, ncol, "group order must be positive")
            if n > cap:
                raise _Fail(cur.line.number, ncol, f"order {n} exceeds cap {cap}")
            table = self._rows(cur.line, n, n, f"group {name}")
            try:
                G = FiniteGroup(table, name)
            except MalformedInputError as exc:
                raise _Fail(cur.line.number, col, f"group {name}: {exc}")
            return GroupDecl(name, table, None, cur.line.number, cur.line.tokens[0][1], G)
        if mode == "builtin":
            kind, kcol = cur.next("a builtin family")
            if kind not in BUILTINS:
                raise _Fail(cur.line.number, kcol, f"unknown builtin {kind!r}; expected one of {', '.join(BUILTINS)}")
            k = cur.integer()[0] if cur.pos < len(cur.line.tokens) else None
            cur.end()
            try:
                G = builtin(kind, k).renamed(name)
            except MalformedInputError as exc:
                raise _Fail(cur.line.number, kcol, str(exc))
            return GroupDecl(name, _rows(G.table), (kind, k), cur.line.number, cur.line.tokens[0][1], G)
        raise _Fail(cur.line.number, mcol, f"expected 'order' or 'builtin', got {mode!r}")

    def _hom(self, cur: _Cursor) -> HomDecl:
        name, _ = self._declared_name(cur)
        cur.expect(":")
        src = self._ref(cur, "group")
        cur.expect("->")
        dst = self._ref(cur, "group")
        cur.end()
        (row,) = self._rows(cur.line, 1, src.obj.order, f"hom {name}")
        try:
            f = Hom(src.obj, dst.obj, row, name)
        except MalformedInputError as exc:
            row_line = self.lines[self.i - 1]
            raise _Fail(row_line.number, row_line.tokens[0][1], str(exc))
        return HomDecl(name, src.name, dst.name, row, cur.line.number, cur.line.tokens[0][1], f)

    def _action(self, cur: _Cursor) -> ActionDecl:
        name, _ = self._declared_name(cur)
        cur.expect(":")
        grp = self._ref(cur, "group")
        cur.expect("on")
        car = self._ref(cur, "group")
        cur.end()
        table = self._rows(cur.line, grp.obj.order, car.obj.order, f"action {name}")
        try:
            act = GroupAction(grp.obj, car.obj, table, name)
        except MalformedInputError as exc:
            raise _Fail(cur.line.number, cur.line.tokens[1][1], str(exc))
        return ActionDecl(name, grp.name, car.name, table, cur.line.number, cur.line.tokens[0][1], act)

    def _xmod(self, cur: _Cursor) -> XmodDecl:
        name, _ = self._declared_name(cur)
        cur.expect("=")
        cur.expect("(")
        C = self._ref(cur, "group")
        cur.expect(",")
        G = self._ref(cur, "group")
        cur.expect(",")
        d = self._ref(cur, "hom")
        cur.expect(",")
        a = self._ref(cur, "action")
        cur.expect(")")
        cur.end()
        try:
            xm = CrossedModule(C.obj, G.obj, d.obj, a.obj, name)
        except MalformedInputError as exc:
            raise _Fail(cur.line.number, cur.line.tokens[1][1], str(exc))
        if d.source != C.name or d.target != G.name or a.group != G.name or a.carrier != C.name:
            raise _Fail(cur.line.number, cur.line.tokens[1][1],
                        f"xmod {name}: boundary must be {C.name} -> {G.name} and the action of {G.name} on {C.name}")
        return XmodDecl(name, C.name, G.name, d.name, a.name, cur.line.number, cur.line.tokens[0][1], xm)

    def _internalcat(self, cur: _Cursor) -> InternalCatDecl:
        name, _ = self._declared_name(cur)
        cur.expect("=")
        cur.expect("(")
        A = self._ref(cur, "group")
        cur.expect(",")
        O = self._ref(cur, "group")
        maps = {}
        for key in ("s", "t", "e"):
            cur.expect(",")
            cur.expect(key)
            cur.expect("=")
            maps[key] = self._ref(cur, "hom")
        cur.expect(")")
        cur.end()
        expected = {"s": (A.name, O.name), "t": (A.name, O.name), "e": (O.name, A.name)}
        for key, decl in maps.items():
            if (decl.source, decl.target) != expected[key]:
                raise _Fail(cur.line.number, cur.line.tokens[1][1],
                            f"{key}={decl.name} must map {expected[key][0]} -> {expected[key][1]}")
        dg = InternalDigraph(A.obj, O.obj, maps["s"].obj, maps["t"].obj, maps["e"].obj)
        if self.i >= len(self.lines) or self.lines[self.i].head != "comp":
            where = self.lines[self.i] if self.i < len(self.lines) else cur.line
            raise _Fail(where.number, where.tokens[0][1], f"internalcat {name}: expected 'comp'")
        comp_line = self.lines[self.i]
        if len(comp_line.tokens) != 1:
            text, col = comp_line.tokens[1]
            raise _Fail(comp_line.number, col, f"unexpected {text!r} after 'comp'")
        self.i += 1
        rows = self._rows(comp_line, dg.pairs.order, 1, f"internalcat {name} comp")
        comp = tuple(r[0] for r in rows)
        try:
            ic = InternalCategory(dg, np.array(comp, dtype=np.intp), name)
        except MalformedInputError as exc:
            raise _Fail(comp_line.number, comp_line.tokens[0][1], str(exc))
        return InternalCatDecl(name, A.name, O.name, maps["s"].name, maps["t"].name, maps["e"].name,
                               comp, cur.line.number, cur.line.tokens[0][1], ic)


def parse_spec(text: str) -> SpecDocument:
    """Parse a spec document; raises SpecSyntaxError carrying every diagnostic."""
    return _Parser(text).run()


def _table_lines(rows) -> list[str]:
    return [" ".join(str(x) for x in row) for row in rows]


def serialize_spec(doc: SpecDocument) -> str:
    """Canonical text: single spaces, a blank line between declarations, trailing newline."""
    blocks = []
    for d in doc:
        if isinstance(d, GroupDecl):
            lines = [f"group {d.name} order {len(d.table)}"] + _table_lines(d.table)
        elif isinstance(d, HomDecl):
            lines = [f"hom {d.name} : {d.source} -> {d.target}", " ".join(str(x) for x in d.images)]
        elif isinstance(d, ActionDecl):
            lines = [f"action {d.name} : {d.group} on {d.carrier}"] + _table_lines(d.table)
        elif isinstance(d, XmodDecl):
            lines = [f"xmod {d.name} = ( {d.C}, {d.G}, {d.boundary}, {d.action} )"]
        elif isinstance(d, InternalCatDecl):
            lines = [f"internalcat {d.name} = ( {d.A}, {d.O}, s={d.s}, t={d.t}, e={d.e} )", "comp"]
            lines += [str(x) for x in d.comp]
        else:
            raise TypeError(f"unknown declaration {d!r}")
        blocks.append("\n".join(lines) + "\n")
    return "\n".join(blocks)


def group_spec(name: str, G: FiniteGroup) -> str:
    doc = SpecDocument()
    doc.add_group(name, G)
    return serialize_spec(doc)
