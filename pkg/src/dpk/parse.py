"""Text format for polynomials and geometric data files.

Grammar (whitespace-insensitive)::

    expr   := term (('+' | '-') term)*
    term   := factor ('*'? factor)*        # juxtaposition is allowed: 3x0x1
    factor := ('-' | '+') factor | atom (('^' | '**') INT)?
    atom   := INT | NAME | '(' expr ')'

NAME must be a ring variable, or the generator name of an extension field.

Data files are UTF-8 and line oriented: a header ``p=<prime> vars=x0,...,x5``
(optionally ``k=<degree>``) followed by ``name = <expression>`` lines.  Blank
lines and ``#`` comments are ignored; an expression may continue on
following lines that start with whitespace.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

from .field import build_extension
from .ring import MultiPoly, Ring, make_ring


class ParseError(ValueError):
    def __init__(self, msg: str, pos: int | None = None, text: str | None = None):
        self.pos = pos
        self.text = text
        where = f" at position {pos}" if pos is not None else ""
        super().__init__(f"{msg}{where}")


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*^()]))")


def _tokenize(text: str):
    toks = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            toks.append(("int", int(m.group(1)), start))
        elif m.group(2) is not None:
            toks.append(("name", m.group(2), start))
        else:
            toks.append(("op", m.group(3), start))
        pos = m.end()
    toks.append(("end", None, n))
    return toks


def _split_names(word: str, ring: Ring):
    """Split a run like 'x0x3' into ring variable names (longest match first)."""
    names = sorted(ring.names, key=len, reverse=True)
    out = []
    i = 0
    while i < len(word):
        for s in names:
            if word.startswith(s, i):
                out.append(s)
                i += len(s)
                break
        else:
            return None
    return out


class _Parser:
    def __init__(self, text: str, ring: Ring):
        self.text = text
        self.ring = ring
        self.toks = self._split_runs(_tokenize(text))
        self.i = 0

    def _split_runs(self, toks):
        # 'x0x3^2' means x0 * x3^2, so runs are split before exponents bind
        R = self.ring
        out = []
        for kind, val, pos in toks:
            if kind == "name" and val not in R._index and not (
                    R.field.k > 1 and val == R.field.gen_name):
                parts = _split_names(val, R)
                if parts is not None:
                    for s in parts:
                        out.append(("name", s, pos))
                        pos += len(s)
                    continue
            out.append((kind, val, pos))
        return out

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg):
        raise ParseError(msg, self.peek()[2], self.text)

    def parse(self) -> MultiPoly:
        if self.peek()[0] == "end":
            self.error("empty expression")
        e = self.expr()
        if self.peek()[0] != "end":
            self.error(f"unexpected token {self.peek()[1]!r}")
        return e

    def expr(self) -> MultiPoly:
        acc = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def _starts_factor(self, tok) -> bool:
        return tok[0] in ("int", "name") or (tok[0] == "op" and tok[1] == "(")

    def term(self) -> MultiPoly:
        acc = self.factor()
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] == "*":
                self.take()
                acc = acc * self.factor()
            elif self._starts_factor(tok):
                acc = acc * self.factor()
            else:
                return acc

    def factor(self) -> MultiPoly:
        tok = self.peek()
        if tok[0] == "op" and tok[1] in ("+", "-"):
            self.take()
            f = self.factor()
            return -f if tok[1] == "-" else f
        base = self.atom()
        tok = self.peek()
        if tok[0] == "op" and tok[1] in ("^", "**"):
            self.take()
            e = self.take()
            if e[0] != "int":
                raise ParseError("exponent must be a nonnegative integer literal", e[2], self.text)
            return base ** e[1]
        return base

    def atom(self) -> MultiPoly:
        kind, val, pos = self.take()
        R = self.ring
        if kind == "int":
            return R.const(val)
        if kind == "name":
            if val in R._index:
                return R.var(val)
            F = R.field
            if F.k > 1 and val == F.gen_name:
                return R.element(F.gen())
            raise ParseError(f"unknown variable {val!r}", pos, self.text)
        if val == "(":
            e = self.expr()
            close = self.take()
            if close[:2] != ("op", ")"):
                raise ParseError("expected ')'", close[2], self.text)
            return e
        raise ParseError(f"unexpected token {val!r}", pos, self.text)


def parse_poly(text: str, ring: Ring) -> MultiPoly:
    return _Parser(text, ring).parse()


def format_poly(f: MultiPoly) -> str:
    R = f.ring
    F = R.field
    if not f.terms:
        return "0"
    out = []
    for m, c in f.sorted_terms():
        mono = R.mono_str(m)
        cs = F.to_str(c)
        if mono == "1":
            s = cs
        elif c == 1:
            s = mono
        else:
            s = f"{cs}*{mono}"
        out.append(s)
    return " + ".join(out)


# ---------------------------------------------------------------------------


@dataclass
class PolyData:
    """Contents of a data file: the ring and the named polynomials, in file order."""

    ring: Ring
    polys: dict[str, MultiPoly]

    def __getitem__(self, name: str) -> MultiPoly:
        return self.polys[name]

    def to_text(self) -> str:
        R = self.ring
        head = f"p={R.field.p}"
        if R.field.k > 1:
            head += f" k={R.field.k}"
        lines = [head + " vars=" + ",".join(R.names)]
        for name, f in self.polys.items():
            lines.append(f"{name} = {format_poly(f)}")
        return "\n".join(lines) + "\n"


_HEADER = re.compile(r"(\w+)\s*=\s*(\S+)")


def parse_data(text: str) -> PolyData:
    raw_lines = text.splitlines()
    logical: list[tuple[int, str]] = []
    for lineno, line in enumerate(raw_lines, 1):
        stripped = line.split("#", 1)[0].rstrip()
        if not stripped.strip():
            continue
        if line[:1].isspace() and logical:
            no, prev = logical[-1]
            logical[-1] = (no, prev + " " + stripped.strip())
        else:
            logical.append((lineno, stripped.strip()))
    if not logical:
        raise ParseError("empty data file")
    lineno, header = logical[0]
    fields = dict(_HEADER.findall(header))
    if "p" not in fields or "vars" not in fields:
        raise ParseError(f"line {lineno}: header must read 'p=<prime> vars=<names>'")
    try:
        p = int(fields["p"])
        k = int(fields.get("k", "1"))
    except ValueError:
        raise ParseError(f"line {lineno}: malformed header numbers") from None
    names = [s for s in fields["vars"].split(",") if s]
    ring = make_ring(build_extension(p, k), names)
    polys: dict[str, MultiPoly] = {}
    for lineno, line in logical[1:]:
        if "=" not in line:
            raise ParseError(f"line {lineno}: expected 'name = expression'")
        name, expr = line.split("=", 1)
        name = name.strip()
        if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", name):
            raise ParseError(f"line {lineno}: bad name {name!r}")
        if name in polys:
            raise ParseError(f"line {lineno}: duplicate name {name!r}")
        try:
            polys[name] = parse_poly(expr, ring)
        except ParseError as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
    return PolyData(ring, polys)


def read_data(path) -> PolyData:
    return parse_data(Path(path).read_text(encoding="utf-8"))
