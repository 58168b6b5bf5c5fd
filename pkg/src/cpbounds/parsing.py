"""Text syntax for group ids and composition-factor lists.

Group grammar (whitespace ignored)::

    group    := name "(" int ["," int] ")" | "A" int
    name     := L | U | PSp | Omega | POmega+ | POmega- | G2 | F4 | E6 | 2E6
              | E7 | E8 | 3D4 | 2F4 | Sz | 2B2 | 2G2 | Alt
              (the internal family labels TwoE6, ThreeD4, ... are accepted too)

Classical groups take (natural dimension, field size): ``L(3,4)``,
``U(3,3)``, ``PSp(4,3)`` (m = 2), ``Omega(7,3)`` (m = 3), ``POmega+(8,3)``
(m = 4).  Exceptional groups take the field size only: ``Sz(8)``, ``G2(3)``.

Factor-list grammar::

    list     := term ("," term)*
    term     := factor ["^" int]
    factor   := "C" prime | group | "X(" key=value ("," key=value)* ")"

``X`` terms need ``order=`` and accept ``name=`` and ``chars=`` (primes
separated by ``;`` or spaces, possibly empty).  ``^k`` repeats a factor.
"""

from __future__ import annotations

import re

from cpbounds.arith import DomainError, is_prime
from cpbounds.catalog import GroupId, require_valid

_NAMES = {
    "L": "L", "PSL": "L", "U": "U", "PSU": "U", "PSp": "PSp",
    "Omega": "OmegaOdd", "OmegaOdd": "OmegaOdd",
    "POmega+": "POmegaPlus", "POmegaPlus": "POmegaPlus",
    "POmega-": "POmegaMinus", "POmegaMinus": "POmegaMinus",
    "G2": "G2", "F4": "F4", "E6": "E6", "E7": "E7", "E8": "E8",
    "2E6": "TwoE6", "TwoE6": "TwoE6", "3D4": "ThreeD4", "ThreeD4": "ThreeD4",
    "2F4": "TwoF4", "TwoF4": "TwoF4", "Sz": "Sz", "2B2": "Sz",
    "2G2": "TwoG2", "TwoG2": "TwoG2", "Alt": "Alt",
}

_DISPLAY = {
    "L": "L", "U": "U", "PSp": "PSp", "OmegaOdd": "Omega", "POmegaPlus": "POmega+",
    "POmegaMinus": "POmega-", "TwoE6": "2E6", "ThreeD4": "3D4", "TwoF4": "2F4",
    "TwoG2": "2G2",
}

_GROUP_RE = re.compile(r"^([A-Za-z0-9]+[+-]?)\(\s*(\d+)\s*(?:,\s*(\d+)\s*)?\)$")
_ALT_SHORT_RE = re.compile(r"^A(\d+)$")


class ParseError(ValueError):
    pass


def parse_group(text: str) -> GroupId:
    s = text.strip().replace(" ", "")
    short = _ALT_SHORT_RE.match(s)
    if short:
        g = GroupId("Alt", int(short.group(1)))
        require_valid(g)
        return g
    mt = _GROUP_RE.match(s)
    if not mt:
        raise ParseError(f"cannot parse group {text!r}")
    name, a, b = mt.group(1), int(mt.group(2)), mt.group(3)
    if name not in _NAMES:
        raise ParseError(f"unknown group name {name!r}")
    fam = _NAMES[name]
    if fam == "Alt":
        if b is not None:
            raise ParseError("Alt takes a single degree")
        g = GroupId("Alt", a)
    elif fam in ("L", "U"):
        g = GroupId(fam, a, _need(b, text))
    elif fam in ("PSp", "POmegaPlus", "POmegaMinus"):
        if a % 2:
            raise ParseError(f"{name} dimension must be even, got {a}")
        g = GroupId(fam, a // 2, _need(b, text))
    elif fam == "OmegaOdd":
        if a % 2 == 0:
            raise ParseError(f"Omega dimension must be odd, got {a}")
        g = GroupId(fam, (a - 1) // 2, _need(b, text))
    else:
        if b is not None:
            raise ParseError(f"{name} takes only a field size")
        g = GroupId(fam, None, a)
    require_valid(g)
    return g


def _need(b, text):
    if b is None:
        raise ParseError(f"{text!r} needs (dimension, field size)")
    return int(b)


def format_group(g: GroupId) -> str:
    fam = g.family
    if fam == "Alt":
        return f"Alt({g.m})"
    name = _DISPLAY.get(fam, fam)
    if fam in ("L", "U"):
        return f"{name}({g.m},{g.r})"
    if fam in ("PSp", "POmegaPlus", "POmegaMinus"):
        return f"{name}({2 * g.m},{g.r})"
    if fam == "OmegaOdd":
        return f"{name}({2 * g.m + 1},{g.r})"
    return f"{name}({g.r})"


def split_top_level(text: str, sep: str = ",") -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ParseError(f"unbalanced parentheses in {text!r}")
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if depth:
        raise ParseError(f"unbalanced parentheses in {text!r}")
    parts.append("".join(cur))
    return [p.strip() for p in parts]


def parse_factor_list(text: str) -> list:
    from cpbounds.cp import Alternating, Cyclic, Explicit, LieType

    out = []
    for term in split_top_level(text):
        if not term:
            raise ParseError(f"empty factor in {text!r}")
        count = 1
        mt = re.match(r"^(.*\))\s*\^\s*(\d+)$|^([^()]*?)\s*\^\s*(\d+)$", term)
        if mt:
            term = (mt.group(1) or mt.group(3)).strip()
            count = int(mt.group(2) or mt.group(4))
        if re.fullmatch(r"C\d+", term):
            ell = int(term[1:])
            if not is_prime(ell):
                raise ParseError(f"cyclic factor order {ell} is not prime")
            factor = Cyclic(ell)
        elif term.startswith("X(") and term.endswith(")"):
            factor = _parse_explicit(term[2:-1], Explicit)
        else:
            try:
                g = parse_group(term)
            except DomainError as exc:
                raise ParseError(str(exc)) from exc
            factor = Alternating(g.m) if g.family == "Alt" else LieType(g)
        out.extend([factor] * count)
    return out


def _parse_explicit(body: str, Explicit):
    fields = {}
    for item in split_top_level(body):
        if "=" not in item:
            raise ParseError(f"expected key=value in X(...), got {item!r}")
        key, value = (s.strip() for s in item.split("=", 1))
        fields[key] = value
    unknown = set(fields) - {"name", "order", "chars"}
    if unknown:
        raise ParseError(f"unknown X(...) keys {sorted(unknown)}")
    if "order" not in fields:
        raise ParseError("X(...) needs order=")
    chars = frozenset(int(c) for c in re.split(r"[;\s]+", fields.get("chars", "")) if c)
    for c in chars:
        if not is_prime(c):
            raise ParseError(f"characteristic {c} is not prime")
    order = int(fields["order"])
    if order < 2:
        raise ParseError("explicit factor order must be at least 2")
    return Explicit(fields.get("name", "X"), order, chars)
