"""Mini-grammar for distribution, relation and functional specs.

    spec   := NAME [ "(" [ arg ("," arg)* ] ")" ]
    arg    := NAME "=" value
    value  := NUMBER | "{" NUMBER ("," NUMBER)* "}" | NUMBER ":" NUMBER ":" INT [":log"]

Names are case-insensitive. List and range values are only accepted where
a parameter sweep makes sense (``parse_scan``).
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass

import numpy as np

from .distributions import FamilySpec, family_parameters
from .orders import Relation

_NUM = r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_TOKEN = re.compile(rf"\s*(?:(?P<num>{_NUM})|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<sym>[(){{}},=:]))")


_KIND_NAMES = {"num": "a number", "name": "a name", "end": "end of input"}


class ParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        self.message, self.text, self.pos = message, text, pos
        super().__init__(f"{message} at position {pos}\n  {text}\n  {' ' * pos}^")


@dataclass(frozen=True)
class Call:
    name: str
    args: dict  # name -> float | list[float]


def _tokens(text: str):
    pos, out = 0, []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError("unexpected character", text, pos)
        kind = m.lastgroup
        start = m.start(kind)
        out.append((kind, m.group(kind), start))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, sweep: bool):
        self.text, self.sweep = text, sweep
        self.toks = _tokens(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None, value=None):
        tok = self.peek()
        if (kind and tok[0] != kind) or (value is not None and tok[1] != value):
            want = repr(value) if value is not None else _KIND_NAMES.get(kind, kind)
            got = tok[1] or "end of input"
            raise ParseError(f"expected {want}, found {got!r}", self.text, tok[2])
        self.i += 1
        return tok

    def number(self):
        return float(self.take("num")[1])

    def value(self):
        tok = self.peek()
        if tok[1] == "{":
            if not self.sweep:
                raise ParseError("lists are only allowed in scans", self.text, tok[2])
            self.take()
            vals = [self.number()]
            while self.peek()[1] == ",":
                self.take()
                vals.append(self.number())
            self.take("sym", "}")
            return vals
        a = self.number()
        if self.peek()[1] != ":":
            return a
        if not self.sweep:
            raise ParseError("ranges are only allowed in scans", self.text, self.peek()[2])
        self.take()
        b = self.number()
        self.take("sym", ":")
        ntok = self.take("num")
        n = float(ntok[1])
        if n != int(n) or n < 1:
            raise ParseError("range count must be a positive integer", self.text, ntok[2])
        log = False
        if self.peek()[1] == ":":
            self.take()
            t = self.take("name")
            if t[1].lower() != "log":
                raise ParseError("expected 'log'", self.text, t[2])
            log = True
        if log and not (a > 0 and b > 0):
            raise ParseError("log ranges need positive bounds", self.text, ntok[2])
        n = int(n)
        return list(np.geomspace(a, b, n) if log else np.linspace(a, b, n))

    def call(self) -> Call:
        name = self.take("name")[1].lower()
        args = {}
        if self.peek()[1] == "(":
            self.take()
            if self.peek()[1] != ")":
                while True:
                    key = self.take("name")
                    k = key[1].lower()
                    if k in args:
                        raise ParseError(f"duplicate argument {k!r}", self.text, key[2])
                    self.take("sym", "=")
                    args[k] = self.value()
                    if self.peek()[1] != ",":
                        break
                    self.take()
            self.take("sym", ")")
        self.take("end")
        return Call(name, args)


def parse_call(text: str, sweep: bool = False) -> Call:
    return _Parser(text, sweep).call()


def _check_family(call: Call, text: str) -> None:
    try:
        names = family_parameters(call.name)
    except ValueError as e:
        raise ParseError(str(e), text, 0) from None
    got = set(call.args)
    if got != set(names):
        missing, extra = set(names) - got, got - set(names)
        msg = []
        if missing:
            msg.append(f"missing {sorted(missing)}")
        if extra:
            msg.append(f"unexpected {sorted(extra)}")
        raise ParseError(f"{call.name}: " + ", ".join(msg), text, max(text.find("("), 0))


def parse_distribution(text: str) -> FamilySpec:
    """``"weibull(k=1.5)"`` -> ``FamilySpec("weibull", {"k": 1.5})``."""
    call = parse_call(text)
    _check_family(call, text)
    return FamilySpec(call.name, dict(call.args))


def parse_scan(text: str) -> list[FamilySpec]:
    """Expand list/range parameters into the Cartesian product of specs."""
    call = parse_call(text, sweep=True)
    _check_family(call, text)
    keys = list(family_parameters(call.name))
    axes = [call.args[k] if isinstance(call.args[k], list) else [call.args[k]] for k in keys]
    return [FamilySpec(call.name, {k: float(v) for k, v in zip(keys, combo)})
            for combo in itertools.product(*axes)]


def parse_relation(text: str) -> Relation:
    """``k0``..``k3``, ``gs``, ``gs(t0=1.5)``, ``gss`` or ``equiv3``."""
    call = parse_call(text)
    if call.name not in ("k0", "k1", "k2", "k3", "gs", "gss", "equiv3"):
        raise ParseError(f"unknown relation {call.name!r}", text, 0)
    allowed = {"t0"} if call.name == "gs" else set()
    extra = set(call.args) - allowed
    if extra:
        raise ParseError(f"{call.name}: unexpected {sorted(extra)}", text, max(text.find("("), 0))
    return Relation(call.name, float(call.args.get("t0", 0.0)))


_FUNCTIONALS = {
    "gamma_d": ({"p"}, 1),
    "gamma_mode": (set(), 1),
    "kappa_q": ({"alpha", "eta"}, 1),
    "kappa_qf": ({"alpha"}, 2),
    "eta_f": ({"q"}, 1),
}


def parse_functional(text: str) -> tuple[Call, int]:
    """Returns the call and the number of distributions it needs."""
    call = parse_call(text)
    if call.name not in _FUNCTIONALS:
        raise ParseError(f"unknown functional {call.name!r}; expected one of "
                         f"{sorted(_FUNCTIONALS)}", text, 0)
    names, arity = _FUNCTIONALS[call.name]
    if set(call.args) != names:
        raise ParseError(f"{call.name}: expected arguments {sorted(names)}", text,
                         max(text.find("("), 0))
    return call, arity
