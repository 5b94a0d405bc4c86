"""Text and JSON forms of Garside elements.

Text form: ``D^p . f1 . f2`` where each factor is a space-separated atom word.
The parser also accepts raw words over atoms and their inverses such as
``s0 s1 s0^-1`` or ``a b^-1 D^-1`` and normalises them.
"""

from __future__ import annotations

import re
from typing import Any

from .garside import GarsideContext, GarsideElement, context

SCHEMA = "algraph.element/1"

_TOKEN = re.compile(r"\s*(?:(\.)|([A-Za-z][A-Za-z0-9_]*)(?:\^\(?(-?\d+)\)?)?)")


class ParseError(ValueError):
    """Malformed element text; ``position`` is the 0-based character offset."""

    def __init__(self, message: str, position: int, text: str = "") -> None:
        super().__init__(f"{message} at position {position}" + (f" in {text!r}" if text else ""))
        self.position = position
        self.text = text


def atom_lookup(ctx: GarsideContext) -> dict[str, int]:
    names = {f"s{i}": i for i in range(ctx.rank)}
    names.update({n: i for i, n in enumerate(ctx.type.atom_names())})
    return names


def tokenize(ctx: GarsideContext, text: str) -> list[tuple[str, int, int]]:
    """Tokens as (kind, value, exponent) with kind in {'atom', 'delta'}."""
    names = atom_lookup(ctx)
    out: list[tuple[str, int, int]] = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[start]!r}", start, text)
        if m.group(1) is None:
            name, exp = m.group(2), int(m.group(3)) if m.group(3) is not None else 1
            start = m.start(2)
            if name in ("D", "Delta"):
                out.append(("delta", 0, exp))
            elif name in names:
                out.append(("atom", names[name], exp))
            else:
                raise ParseError(f"unknown atom {name!r} for type {ctx.type}", start, text)
        pos = m.end()
    return out


def parse_element(ctx: GarsideContext, text: str) -> GarsideElement:
    """Parse a text form or raw word into its left normal form."""
    x = ctx.identity
    run: list[tuple[int, int]] = []
    for kind, val, exp in tokenize(ctx, text):
        if kind == "atom":
            run.append((val, exp))
        else:
            if run:
                x = x * ctx.from_atom_word(run)
                run = []
            x = x.times_delta(exp)
    if run:
        x = x * ctx.from_atom_word(run)
    return x


def format_simple(ctx: GarsideContext, s) -> str:
    names = ctx.type.atom_names()
    return " ".join(names[i] for i in s.word())


def format_element(x: GarsideElement) -> str:
    parts = [f"D^{x.delta}"]
    parts += [format_simple(x.ctx, f) for f in x.factors]
    return " . ".join(parts)


def element_to_json(x: GarsideElement) -> dict[str, Any]:
    return {
        "schema": SCHEMA,
        "type": str(x.ctx.type),
        "delta_power": x.delta,
        "factors": [list(f.word()) for f in x.factors],
    }


def element_from_json(obj: dict[str, Any]) -> GarsideElement:
    if obj.get("schema", SCHEMA) != SCHEMA:
        raise ParseError(f"unsupported schema {obj.get('schema')!r}", 0)
    ctx = context(obj["type"])
    fs = [ctx.W.word_to_w(w) for w in obj["factors"]]
    return ctx.element(int(obj["delta_power"]), fs)
