"""Command-line interface: ``densesl <command> ...``."""

from __future__ import annotations

import argparse
import json
import sys

from . import io
from .congruence import ReductionError, local_ring_of, reduce_group, residue_field_of
from .exclusion import congruence_table, is_dense, primes_for_dense, sweep_nonfull
from .fingrp import DEFAULT_CAP, EnumerationCap, FiniteMatGroup, congruence_index_check
from .ideals import IdealError, factor_rational_prime
from .matgroup import GroupError, trace_ring


def _emit(args, text, obj):
    if args.format == "json":
        sys.stdout.write(io.dumps(obj))
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _exit(args, inconclusive):
    if inconclusive and not args.allow_inconclusive:
        print("inconclusive: rerun with a different --seed or pass --allow-inconclusive",
              file=sys.stderr)
        return 3
    return 0


def _ideal_line(I):
    return f"{I.label()}  norm={I.norm} e={I.e} f={I.k}"


def _elem_json(a):
    return [io.format_rational(c) for c in a.coeffs]


# -- commands -----------------------------------------------------------------

def cmd_factor(args):
    F = io.load_field(args.field_file)
    ideals = factor_rational_prime(args.p, F)
    _emit(args, "\n".join(_ideal_line(I) for I in ideals),
          {"p": args.p, "ideals": [{**I.to_json(), "label": I.label()} for I in ideals]})
    return 0


def _pick_ideal(F, p, which):
    ideals = factor_rational_prime(p, F)
    if not 0 <= which < len(ideals):
        raise IdealError(f"{p} has {len(ideals)} prime ideal(s); --which must be in "
                         f"0..{len(ideals) - 1}")
    return ideals[which]


def cmd_reduce(args):
    H = io.load_group(args.group_file)
    F = H.field
    if (args.prime is None) == (args.modulus is None):
        raise ReductionError("give exactly one of --prime or --modulus")
    if args.prime is not None:
        I = _pick_ideal(F, args.prime, args.which)
        ring = residue_field_of(I)
        target, name = I, I.label()
    else:
        ring = local_ring_of(args.modulus, F)
        target, name = args.modulus, f"O/{args.modulus}O"
    images = reduce_group(H, target)
    G = FiniteMatGroup(ring, H.n, images, args.cap)
    mats = [[[list(map(int, ring.coeffs(int(x)))) for x in row] for row in M] for M in images]
    obj = {"target": name, "images": mats, "order": G.order, "index": G.index_in_sl()}
    lines = [f"target {name}"]
    lines += [f"  {M}" for M in mats]
    lines.append(f"order {G.order}  index {G.index_in_sl()}")
    _emit(args, "\n".join(lines), obj)
    return 0


def cmd_density(args):
    H = io.load_group(args.group_file)
    v = is_dense(H, args.seed)
    _emit(args, str(v), {"verdict": v.verdict, "reason": v.reason})
    return _exit(args, v.verdict == "INCONCLUSIVE")


def cmd_pfd(args):
    H = io.load_group(args.group_file)
    res = primes_for_dense(H, args.seed, args.view, args.cap)
    lines = [f"view {res.view}"]
    for rep in res.reports + ([res.subfields] if res.subfields else []):
        conf = ", ".join(I.label() for I in rep.confirmed) or "-"
        extra = f" verdict={rep.verdict}" if rep.verdict else ""
        lines.append(f"{rep.procedure}: {len(rep.candidates)} candidate(s), "
                     f"confirmed {conf}{extra}")
        lines += [f"  inconclusive: {f.removeprefix('inconclusive: ')}"
                  for f in rep.inconclusive_flags]
    if res.ambiguous:
        lines.append("ambiguous (subfield and another class): "
                     + ", ".join(I.label() for I in res.ambiguous))
    lines.append("Pi: " + (", ".join(_ideal_line(I) for I in res.pi) or "(empty)"))
    _emit(args, "\n".join(lines), res.to_json())
    return _exit(args, bool(res.unverified))


def cmd_table(args):
    H = io.load_group(args.group_file)
    res = primes_for_dense(H, args.seed, args.view, args.cap)
    table = congruence_table(H, res.pi, seed=args.seed, view=args.view, cap=args.cap)
    status = 0
    if args.sweep_norm:
        swept = sweep_nonfull(H, args.sweep_norm, args.cap)
        listed = {I for I in res.pi if I.norm <= args.sweep_norm}
        if set(swept) == listed:
            table.notes.append(f"sweep-verified: every maximal ideal of norm <= "
                               f"{args.sweep_norm} with a proper image is listed")
        else:
            missing = sorted(set(swept) - listed)
            extra = sorted(listed - set(swept))
            table.notes.append("sweep mismatch: missing "
                               + (", ".join(I.label() for I in missing) or "-")
                               + "; not confirmed by sweep "
                               + (", ".join(I.label() for I in extra) or "-"))
            status = 1
    table.notes += [f"unverified: {u}" for u in res.unverified]
    _emit(args, table.to_text(), table.to_json())
    return status or _exit(args, bool(res.unverified))


def cmd_congcheck(args):
    L = io.load_group(args.group_file)
    passed, found, order, ambient = congruence_index_check(
        list(L.gens), args.modulus, args.claimed_index, L.field, args.cap)
    obj = {"modulus": args.modulus, "claimed_index": args.claimed_index,
           "found_index": found, "image_order": order, "ambient_order": ambient,
           "passed": passed}
    lines = [f"modulus {args.modulus}: |SL(2,O/mO)| = {ambient}, image order {order}",
             f"index found {found}, claimed {args.claimed_index}: "
             + ("PASS" if passed else "FAIL")]
    if L.mu == 1:
        tr = trace_ring(L)
        obj["trace_span_index"] = tr.span_index if isinstance(tr.span_index, int) else "inf"
        lines.append(f"span_Z(tr L) has index {obj['trace_span_index']} in O")
    _emit(args, "\n".join(lines), obj)
    return 0 if passed else 1


def cmd_tracering(args):
    H = io.load_group(args.group_file)
    F = H.field
    tr = trace_ring(H)

    def fmt(mod):
        return [F.from_integral_basis(r) for r in mod.basis]

    def idx(x):
        return x if isinstance(x, int) else "inf"

    obj = {
        "index": idx(tr.index),
        "span": {"basis": mods_json(tr.span), "index": idx(tr.span_index),
                 "elements": [_elem_json(a) for a in fmt(tr.span)]},
        "ring": {"basis": mods_json(tr.ring), "index": idx(tr.ring_index)},
        "unital_ring": {"basis": mods_json(tr.unital), "index": idx(tr.unital_index)},
    }
    lines = [
        f"Tr(H) = span_Z(tr H): index {idx(tr.span_index)}, basis "
        + ", ".join(str(a) for a in fmt(tr.span)),
        f"ring generated by tr H: index {idx(tr.ring_index)}",
        f"unital ring <tr H, 1>: index {idx(tr.unital_index)}, basis "
        + ", ".join(str(a) for a in fmt(tr.unital)),
    ]
    _emit(args, "\n".join(lines), obj)
    return 0


def mods_json(mod):
    """HNF rows in integral-basis coordinates."""
    return [[int(x) for x in row] for row in mod.basis]


# -- parser -------------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=1)
    common.add_argument("--cap", type=int, default=DEFAULT_CAP,
                        help="maximum group size to enumerate")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--allow-inconclusive", action="store_true",
                        help="exit 0 even when some sub-report is inconclusive")

    p = argparse.ArgumentParser(prog="densesl",
                                description="Congruence images of dense subgroups of SL(n)")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("factor", parents=[common], help="prime ideals above a rational prime")
    s.add_argument("field_file")
    s.add_argument("p", type=int)
    s.set_defaults(func=cmd_factor)

    s = sub.add_parser("reduce", parents=[common], help="reduce generators modulo an ideal")
    s.add_argument("group_file")
    s.add_argument("--prime", type=int, help="rational prime below the ideal")
    s.add_argument("--which", type=int, default=0, help="which ideal above --prime")
    s.add_argument("--modulus", type=int, help="reduce modulo mO instead")
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("density", parents=[common], help="Zariski density test")
    s.add_argument("group_file")
    s.set_defaults(func=cmd_density)

    for name, func, helptext in (("pfd", cmd_pfd, "exceptional ideal set with evidence"),
                                 ("table", cmd_table, "table of non-surjective images")):
        s = sub.add_parser(name, parents=[common], help=helptext)
        s.add_argument("group_file")
        s.add_argument("--view", choices=("sat", "all"), default="all")
        if name == "table":
            s.add_argument("--sweep-norm", type=int, default=0,
                           help="cross-check against a brute-force sweep up to this norm")
        s.set_defaults(func=func)

    s = sub.add_parser("congcheck", parents=[common], help="certify a congruence subgroup")
    s.add_argument("group_file")
    s.add_argument("--modulus", type=int, required=True)
    s.add_argument("--claimed-index", type=int, required=True)
    s.set_defaults(func=cmd_congcheck)

    s = sub.add_parser("tracering", parents=[common], help="trace ring of H and its index")
    s.add_argument("group_file")
    s.set_defaults(func=cmd_tracering)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except EnumerationCap as exc:
        print(f"error: {exc}", file=sys.stderr)
    except (io.InputError, IdealError, ReductionError, GroupError, ValueError,
            OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    return 2


if __name__ == "__main__":
    sys.exit(main())
