"""Concrete syntax: tokenizer, parsers, printers and JSON for types and expressions."""
from __future__ import annotations

import re
from dataclasses import dataclass

from .syntax import (
    BOT, Arrow, Bottom, Coerce, Cons, Cut, Forall, Lam, Nil, NIL, Sel, TVar,
    TyCons, TyLam, Var,
)


class ParseError(Exception):
    def __init__(self, msg: str, offset: int):
        super().__init__(f"{msg} at offset {offset}")
        self.msg = msg
        self.offset = offset


class LevelError(ParseError):
    pass


_TOKEN = re.compile(r"\s*(?:(/\\|\\|\[\]|::|->|[.{}()<>,:;])|([A-Za-z_][A-Za-z0-9_']*))")


@dataclass
class Tok:
    text: str
    offset: int
    ident: bool


def tokenize(src: str) -> list:
    toks, i = [], 0
    while True:
        while i < len(src) and src[i].isspace():
            i += 1
        if i >= len(src):
            break
        m = _TOKEN.match(src, i)
        if not m:
            raise ParseError(f"unexpected character {src[i]!r}", i)
        start = m.start(1) if m.group(1) else m.start(2)
        toks.append(Tok(m.group(1) or m.group(2), start, m.group(2) is not None))
        i = m.end()
    toks.append(Tok("", len(src), False))
    return toks


class TokenStream:
    """Cursor over tokens with one-token lookahead helpers."""

    def __init__(self, src: str):
        self.toks = tokenize(src)
        self.i = 0

    def peek(self, k: int = 0) -> Tok:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def next(self) -> Tok:
        t = self.peek()
        self.i += 1
        return t

    def at(self, text: str, k: int = 0) -> bool:
        t = self.peek(k)
        return not t.ident and t.text == text

    def expect(self, text: str) -> Tok:
        t = self.next()
        if t.ident or t.text != text:
            raise ParseError(f"expected {text!r}, found {t.text or 'end of input'!r}", t.offset)
        return t

    def ident(self) -> str:
        t = self.next()
        if not t.ident:
            raise ParseError(f"expected identifier, found {t.text or 'end of input'!r}", t.offset)
        return t.text

    def at_ident(self, k: int = 0) -> bool:
        return self.peek(k).ident

    def done(self) -> bool:
        return self.peek().text == "" and not self.peek().ident

    def finish(self):
        if not self.done():
            t = self.peek()
            raise ParseError(f"unexpected trailing input {t.text!r}", t.offset)


# ---------------------------------------------------------------- types

def parse_type_from(ts: TokenStream):
    if ts.at_ident() and ts.peek().text == "forall":
        ts.next()
        x = ts.ident()
        ts.expect(".")
        return Forall(x, parse_type_from(ts))
    a = _type_atom(ts)
    if ts.at("->"):
        ts.next()
        return Arrow(a, parse_type_from(ts))
    return a


def _type_atom(ts: TokenStream):
    if ts.at("("):
        ts.next()
        a = parse_type_from(ts)
        ts.expect(")")
        return a
    t = ts.peek()
    name = ts.ident()
    if name == "forall":
        raise ParseError("misplaced forall", t.offset)
    return BOT if name == "Bot" else TVar(name)


def parse_type(src: str):
    ts = TokenStream(src)
    a = parse_type_from(ts)
    ts.finish()
    return a


def print_type(a) -> str:
    match a:
        case TVar(n):
            return n
        case Bottom():
            return "Bot"
        case Arrow(d, c):
            left = print_type(d)
            if isinstance(d, (Arrow, Forall)):
                left = f"({left})"
            return f"{left}->{print_type(c)}"
        case Forall(x, body):
            return f"forall {x}.{print_type(body)}"
    raise TypeError(f"not a type: {a!r}")


def type_to_json(a) -> dict:
    match a:
        case TVar(n):
            return {"k": "tvar", "x": n}
        case Bottom():
            return {"k": "bot"}
        case Arrow(d, c):
            return {"k": "arrow", "dom": type_to_json(d), "cod": type_to_json(c)}
        case Forall(x, body):
            return {"k": "forall", "x": x, "body": type_to_json(body)}
    raise TypeError(f"not a type: {a!r}")


def type_from_json(d: dict):
    match d["k"]:
        case "tvar":
            return TVar(d["x"])
        case "bot":
            return BOT
        case "arrow":
            return Arrow(type_from_json(d["dom"]), type_from_json(d["cod"]))
        case "forall":
            return Forall(d["x"], type_from_json(d["body"]))
    raise ValueError(f"unknown type kind {d['k']!r}")


# ---------------------------------------------------------------- expressions

class _ExprParser:
    def __init__(self, src: str, level: str):
        self.ts = TokenStream(src)
        self.second = level == "second"

    def _level(self, tok: Tok):
        if not self.second:
            raise LevelError("second-order construct at propositional level", tok.offset)

    def term(self):
        ts = self.ts
        t = ts.peek()
        if ts.at("\\"):
            ts.next()
            x = ts.ident()
            ts.expect(".")
            return Lam(x, self.term())
        if ts.at("/\\"):
            self._level(t)
            ts.next()
            x = ts.ident()
            ts.expect(".")
            return TyLam(x, self.term())
        if ts.at("{"):
            ts.next()
            c = self.command()
            ts.expect("}")
            return Coerce(c)
        if ts.at("("):
            ts.next()
            u = self.term()
            ts.expect(")")
            return u
        return Var(ts.ident())

    def coterm(self):
        ts = self.ts
        t = ts.peek()
        if ts.at("[]"):
            ts.next()
            return NIL
        if ts.at("(") and ts.at_ident(1) and ts.at(")", 2) and not ts.at("::", 3):
            ts.next()
            x = ts.ident()
            ts.next()
            return Sel(x, self.command())
        if ts.at("<"):
            self._level(t)
            ts.next()
            ty = parse_type_from(ts)
            ts.expect(">")
            ts.expect("::")
            return TyCons(ty, self.coterm())
        u = self.term()
        ts.expect("::")
        return Cons(u, self.coterm())

    def command(self):
        ts = self.ts
        if ts.at("{"):
            ts.next()
            c = self.command()
            ts.expect("}")
            head = Coerce(c)
        elif ts.at("("):
            ts.next()
            head = self.term()
            ts.expect(")")
        else:
            head = Var(ts.ident())
        return Cut(head, self.coterm())


def parse_expr(src: str, cls: str = "term", level: str = "second"):
    """Parse a term, co-term or command."""
    p = _ExprParser(src, level)
    match cls:
        case "term":
            e = p.term()
        case "coterm":
            e = p.coterm()
        case "command":
            e = p.command()
        case _:
            raise ValueError(f"unknown class {cls!r}")
    p.ts.finish()
    return e


def parse_any(src: str, level: str = "second"):
    """Try term, then command, then co-term."""
    err = None
    for cls in ("term", "command", "coterm"):
        try:
            return parse_expr(src, cls, level)
        except LevelError:
            raise
        except ParseError as ex:
            err = err or ex
    raise err


def print_expr(e) -> str:
    match e:
        case Var(n):
            return n
        case Lam(x, b):
            return f"\\{x}.{print_expr(b)}"
        case TyLam(x, b):
            return f"/\\{x}.{print_expr(b)}"
        case Coerce(c):
            return "{" + print_expr(c) + "}"
        case Nil():
            return "[]"
        case Cons(u, l):
            return f"{_arg(u)}::{print_expr(l)}"
        case TyCons(ty, l):
            return f"<{print_type(ty)}>::{print_expr(l)}"
        case Sel(x, c):
            return f"({x}) {print_expr(c)}"
        case Cut(t, l):
            return f"{_arg(t)} {print_expr(l)}"
    raise TypeError(f"not an expression: {e!r}")


def _arg(t) -> str:
    s = print_expr(t)
    return f"({s})" if isinstance(t, (Lam, TyLam)) else s


def to_json(e) -> dict:
    match e:
        case Var(n):
            return {"k": "var", "x": n}
        case Lam(x, b):
            return {"k": "lam", "x": x, "body": to_json(b)}
        case TyLam(x, b):
            return {"k": "tylam", "x": x, "body": to_json(b)}
        case Coerce(c):
            return {"k": "coerce", "cmd": to_json(c)}
        case Nil():
            return {"k": "nil"}
        case Cons(u, l):
            return {"k": "cons", "head": to_json(u), "tail": to_json(l)}
        case TyCons(ty, l):
            return {"k": "tycons", "ty": type_to_json(ty), "tail": to_json(l)}
        case Sel(x, c):
            return {"k": "sel", "x": x, "cmd": to_json(c)}
        case Cut(t, l):
            return {"k": "cut", "t": to_json(t), "l": to_json(l)}
    raise TypeError(f"not an expression: {e!r}")


def from_json(d: dict):
    match d["k"]:
        case "var":
            return Var(d["x"])
        case "lam":
            return Lam(d["x"], from_json(d["body"]))
        case "tylam":
            return TyLam(d["x"], from_json(d["body"]))
        case "coerce":
            return Coerce(from_json(d["cmd"]))
        case "nil":
            return NIL
        case "cons":
            return Cons(from_json(d["head"]), from_json(d["tail"]))
        case "tycons":
            return TyCons(type_from_json(d["ty"]), from_json(d["tail"]))
        case "sel":
            return Sel(d["x"], from_json(d["cmd"]))
        case "cut":
            return Cut(from_json(d["t"]), from_json(d["l"]))
    raise ValueError(f"unknown expression kind {d['k']!r}")
