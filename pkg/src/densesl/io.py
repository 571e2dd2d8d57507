"""JSON input files for fields and groups."""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .matgroup import make_group
from .nfield import NumberField
from .words import eisenstein_field, expand_word, swan_generators


class InputError(ValueError):
    pass


def parse_rational(x):
    """Integers, or strings like "3", "-2/5"."""
    if isinstance(x, bool):
        raise InputError(f"not a rational: {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"not a rational: {x!r}") from exc
    raise InputError(f"rationals are integers or 'p/q' strings, got {x!r}")


def format_rational(q):
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def field_from_dict(d):
    if "minpoly" not in d:
        raise InputError("field description needs 'minpoly' (ascending coefficients)")
    minpoly = [parse_rational(c) for c in d["minpoly"]]
    if any(c.denominator != 1 for c in minpoly):
        raise InputError("minpoly must have integer coefficients")
    basis = d.get("integral_basis")
    if basis is not None:
        basis = [[parse_rational(c) for c in b] for b in basis]
    return NumberField([int(c) for c in minpoly], basis)


def field_to_dict(F):
    return {"minpoly": [int(c) for c in F.minpoly]}


def element_from_json(x, F):
    if isinstance(x, list):
        coeffs = [parse_rational(c) for c in x]
    else:
        coeffs = [parse_rational(x)]
    if len(coeffs) > F.m:
        raise InputError(f"element {x!r} has more than {F.m} coefficients")
    return F(coeffs)


def matrix_from_json(M, F):
    if not isinstance(M, list) or not M or not all(isinstance(r, list) for r in M):
        raise InputError("matrices are lists of rows")
    return [[element_from_json(x, F) for x in row] for row in M]


def _read(path):
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from exc


def load_field(path):
    d = _read(path)
    return field_from_dict(d.get("field", d))


def load_group(path):
    """Group file: {"field", "n", "generators"} or {"words", optional "named"}.

    Word files default to the t, l, a generators over Q(omega) when neither a
    field nor named matrices are given.
    """
    d = _read(path)
    return group_from_dict(d)


def group_from_dict(d):
    if "field" in d:
        F = field_from_dict(d["field"])
    elif "words" in d:
        F = eisenstein_field()
    else:
        raise InputError("group file needs a 'field'")
    n = d.get("n")
    gens = [matrix_from_json(M, F) for M in d.get("generators", [])]
    if "words" in d:
        named = {}
        if F.minpoly == (1, 1, 1):
            named.update(swan_generators(F))
        for name, M in d.get("named", {}).items():
            named[name] = matrix_from_json(M, F)
        gens += [expand_word(w, named) for w in d["words"]]
    if not gens:
        raise InputError("group file has no generators")
    return make_group(gens, F, n)


def dumps(obj):
    """Canonical JSON rendering (sorted keys, two-space indent)."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


__all__ = ["InputError", "parse_rational", "format_rational", "field_from_dict",
           "field_to_dict", "element_from_json", "matrix_from_json", "load_field",
           "load_group", "group_from_dict", "dumps"]
