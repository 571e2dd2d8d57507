"""Named matrices and word expansion (``t^-2 a l^3``) over a number field."""

from __future__ import annotations

import re

from .nfield import NumberField
from .nfmat import mat_mul, mat_power

_TOKEN = re.compile(r"([A-Za-z])(?:\^\{?(-?\d+)\}?)?")


def parse_word(word):
    """Split a word into (letter, exponent) pairs; whitespace is optional."""
    compact = re.sub(r"\s+", "", word)
    pos = 0
    out = []
    while pos < len(compact):
        m = _TOKEN.match(compact, pos)
        if not m:
            raise ValueError(f"cannot parse word {word!r} at position {pos}")
        out.append((m.group(1), int(m.group(2)) if m.group(2) else 1))
        pos = m.end()
    return out


def expand_word(word, named):
    """Product of named matrices along a word, left to right."""
    letters = parse_word(word)
    if not letters:
        raise ValueError("empty word")
    result = None
    for letter, e in letters:
        if letter not in named:
            raise KeyError(f"unknown generator {letter!r}")
        factor = mat_power(named[letter], e)
        result = factor if result is None else mat_mul(result, factor)
    return result


def eisenstein_field():
    """Q(omega) with omega a primitive cube root of unity (minimal polynomial x^2+x+1)."""
    return NumberField([1, 1, 1])


def swan_generators(F=None):
    """t, l, a generating SL(2, Z[omega]) (with the relations l^3 = 1, a^4 = 1)."""
    F = F or eisenstein_field()
    if F.minpoly != (1, 1, 1):
        raise ValueError("the t, l, a generators are defined over Q(omega), minpoly x^2+x+1")
    one, zero, w = F.one(), F.zero(), F.alpha
    return {
        "t": ((one, one), (zero, one)),
        "l": ((w * w, zero), (zero, w)),
        "a": ((zero, -one), (one, zero)),
    }


__all__ = ["parse_word", "expand_word", "swan_generators", "eisenstein_field"]
