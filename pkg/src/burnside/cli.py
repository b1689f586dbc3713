"""Command-line surface.

Exit discipline: 0 success, 1 usage or validation error, 2 cap exceeded,
3 internal invariant violation (a dual-route check disagreed; never
expected).  Output is deterministic for fixed inputs: JSON is emitted in
canonical form and all orderings are the library's class orderings.
The BURNSIDE_CAP environment variable overrides the order cap used for
lattice-grade work.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import re
import sys
from pathlib import Path

from . import formats
from .crossed import CrossedElement, get_crossed_ring
from .errors import BurnsideError, CapExceeded, InternalCheckError, ParseError
from .gsets import disjoint_union, from_subgroup, point_gset
from .hall import hall_truncation
from .lattice import DEFAULT_LATTICE_CAP
from .linalg import QQ
from .mackey import (
    burnside_mackey,
    crossed_from_pair,
    eta,
    fixed_point_mackey,
    fixed_quotient_mackey,
    regular_representation,
)
from .ring import get_ring
from .towers import (
    crossed_family_marker_recovery,
    idempotent_family,
    is_compatible,
    prosoluble_census,
)


class UsageError(BurnsideError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _cap() -> int:
    try:
        return int(os.environ.get("BURNSIDE_CAP", DEFAULT_LATTICE_CAP))
    except ValueError:
        raise UsageError("BURNSIDE_CAP must be an integer") from None


def _group(spec: str):
    g = formats.parse_group_spec(spec)
    return g


def _ring(spec: str):
    g = _group(spec)
    return get_ring(g, cap=max(_cap(), 0))


def _payload(text: str):
    if text.startswith("@"):
        try:
            text = Path(text[1:]).read_text()
        except OSError as exc:
            raise UsageError(f"cannot read {text[1:]}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"bad JSON payload: {exc}") from exc


def build_parser() -> _Parser:
    p = _Parser(prog="burnside", description=__doc__)
    p.add_argument("--format", choices=["text", "json", "csv"], default="text")
    p.add_argument("--oracle", action="store_true",
                   help="recompute through the slow independent path and compare")
    p.add_argument("--seed", type=int, default=0, help="seed for sampled sweeps")
    sub = p.add_subparsers(dest="verb", required=True)

    sp = sub.add_parser("tom", help="table of marks")
    sp.add_argument("group")

    sp = sub.add_parser("idem", help="idempotents of the Burnside ring")
    sp.add_argument("group")
    sp.add_argument("--integral", action="store_true",
                    help="primitive integral idempotents instead of rational ones")

    sp = sub.add_parser("mul", help="product of two Burnside elements")
    sp.add_argument("group")
    sp.add_argument("x")
    sp.add_argument("y")

    sp = sub.add_parser("crossed-basis", help="canonical crossed basis pairs")
    sp.add_argument("group")

    sp = sub.add_parser("crossed-mul", help="product of two crossed elements")
    sp.add_argument("group")
    sp.add_argument("x")
    sp.add_argument("y")

    sp = sub.add_parser("zeta", help="zeta image of a crossed element")
    sp.add_argument("group")
    sp.add_argument("x")

    sp = sub.add_parser("tower", help="quotient-tower computations")
    sp.add_argument("tower_spec")
    tsub = sp.add_subparsers(dest="tower_verb", required=True)
    ti = tsub.add_parser("idem", help="idempotent family for a subgroup spec")
    ti.add_argument("--subgroup", required=True)
    tc = tsub.add_parser("census", help="per-level idempotent census")
    tc.add_argument("--census-cap", type=int, default=16)
    tk = tsub.add_parser("check", help="compatibility of a family JSON")
    tk.add_argument("family")

    sp = sub.add_parser("mackey", help="action of crossed basis pairs on a Mackey functor")
    sp.add_argument("group")
    sp.add_argument("--functor", choices=["burnside", "fp", "fq"], default="burnside")
    sp.add_argument("--y", default="point",
                    help="G-set: 'point', 'trans:<classid>', joined with '+'")
    sp.add_argument("--pair", default=None,
                    help="single basis pair H=<classid>,a=<index>")

    sp = sub.add_parser("hall", help="exponent-p truncation computations")
    sp.add_argument("p", type=int)
    sp.add_argument("n", type=int)
    hsub = sp.add_subparsers(dest="hall_verb", required=True)
    hsub.add_parser("order")
    hc = hsub.add_parser("class")
    hc.add_argument("--word", required=True)
    hz = hsub.add_parser("centralizer")
    hz.add_argument("--word", required=True)
    hk = hsub.add_parser("check")
    hk.add_argument("--samples", type=int, default=100)
    return p


# -- command bodies ---------------------------------------------------------------


def _emit(args, text_lines, json_obj, csv_text=None) -> str:
    if args.format == "json":
        return formats.canonical_json(json_obj)
    if args.format == "csv":
        if csv_text is None:
            raise UsageError("csv output is not defined for this command")
        return csv_text
    return "\n".join(text_lines) + "\n"


def cmd_tom(args) -> str:
    ring = _ring(args.group)
    tom = ring.table_of_marks
    if args.oracle:
        slow = _tom_oracle(ring)
        if slow != [list(r) for r in tom.rows]:
            raise InternalCheckError("table of marks disagrees with G-set counting")
    ids = [formats.class_id(ring.lattice, c) for c in range(ring.class_count)]
    lines = ["\t".join(ids)] + ["\t".join(str(v) for v in row) for row in tom.rows]
    obj = {"group": ring.group.label, "classes": ids,
           "rows": [list(map(int, r)) for r in tom.rows]}
    return _emit(args, lines, obj, formats.tom_to_csv(tom))


def _tom_oracle(ring):
    rows = []
    for k in range(ring.class_count):
        x = from_subgroup(ring.group, ring.lattice.classes[k])
        rows.append([len(x.fixed_points(ring.lattice.classes[h].elems))
                     for h in range(ring.class_count)])
    return rows


def cmd_idem(args) -> str:
    ring = _ring(args.group)
    if args.integral:
        idems = ring.integral_idempotents()
        items = [{"label": formats.class_id(ring.lattice, lab),
                  **formats.element_to_obj(e)} for lab, e in idems]
        if args.oracle:
            if ring.class_count > 16:
                raise CapExceeded(ring.class_count, 16, "census oracle class count")
            census = ring.census()
            boolean = set()
            for mask in range(1 << len(idems)):
                total = ring.zero
                for j, (_, e) in enumerate(idems):
                    if (mask >> j) & 1:
                        total = total + e
                boolean.add(tuple(sorted(total.coeffs.items())))
            if boolean != {tuple(sorted(e.coeffs.items())) for e in census}:
                raise InternalCheckError("integral idempotents disagree with census")
    else:
        items = [{"label": formats.class_id(ring.lattice, c),
                  **formats.element_to_obj(ring.gluck(c))}
                 for c in range(ring.class_count)]
        if args.oracle:
            for c in range(ring.class_count):
                e = ring.gluck(c)
                if ring.multiply(e, e, "cosets") != e:
                    raise InternalCheckError("rational idempotent fails e*e=e")
    lines = [f"{it['label']}: " + " + ".join(
        f"{c['num']}/{c['den']}*[G/{c['class']}]" for c in it["coeffs"])
        for it in items]
    return _emit(args, lines, {"group": ring.group.label, "idempotents": items})


def cmd_mul(args) -> str:
    ring = _ring(args.group)
    x = formats.element_from_obj(_payload(args.x), group=ring.group)
    y = formats.element_from_obj(_payload(args.y), group=ring.group)
    prod = ring.multiply_checked(x, y) if args.oracle else ring.multiply(x, y)
    obj = formats.element_to_obj(prod)
    lines = [" + ".join(f"{c['num']}/{c['den']}*[G/{c['class']}]"
                        for c in obj["coeffs"]) or "0"]
    return _emit(args, lines, obj)


def cmd_crossed_basis(args) -> str:
    g = _group(args.group)
    ring = get_crossed_ring(g, cap=max(_cap(), 0))
    items = [{"H": formats.class_id(ring.lattice, b.class_index), "a": b.marker}
             for b in ring.basis]
    lines = [f"({it['H']}, {it['a']})" for it in items]
    return _emit(args, lines, {"group": g.label, "basis": items})


def cmd_crossed_mul(args) -> str:
    g = _group(args.group)
    ring = get_crossed_ring(g, cap=max(_cap(), 0))
    x = formats.crossed_from_obj(_payload(args.x), group=g)
    y = formats.crossed_from_obj(_payload(args.y), group=g)
    prod = ring.multiply_checked(x, y) if args.oracle else ring.multiply(x, y)
    obj = formats.crossed_to_obj(prod)
    lines = [" + ".join(f"{c['num']}/{c['den']}*({c['H']},{c['a']})"
                        for c in obj["coeffs"]) or "0"]
    return _emit(args, lines, obj)


def cmd_zeta(args) -> str:
    g = _group(args.group)
    ring = get_crossed_ring(g, cap=max(_cap(), 0))
    x = formats.crossed_from_obj(_payload(args.x), group=g)
    z = ring.zeta(x)
    items = []
    for u_cls in range(ring.lattice.class_count):
        comp = z.get(u_cls, {})
        items.append({"U": formats.class_id(ring.lattice, u_cls),
                      "terms": [{"g": k, "coeff": v}
                                for k, v in sorted(comp.items())]})
    lines = [f"{it['U']}: " + " + ".join(f"{t['coeff']}*g{t['g']}"
                                         for t in it["terms"]) for it in items]
    return _emit(args, lines, {"group": g.label, "zeta": items})


def cmd_tower(args) -> str:
    tower = formats.parse_tower_spec(args.tower_spec, cap=max(_cap(), 300))
    if args.tower_verb == "idem":
        fam = idempotent_family(tower, args.subgroup)
        ok, bad = is_compatible(fam)
        if not ok:
            raise InternalCheckError(f"idempotent family incompatible at level {bad}")
        obj = formats.family_to_obj(fam)
        obj["compatible"] = True
        lines = [f"level {i + 1} ({g.label}): " + (
            " + ".join(f"{c['num']}/{c['den']}*[G/{c['class']}]" for c in lvl) or "0")
            for i, (g, lvl) in enumerate(zip(tower.levels, obj["levels"]))]
        return _emit(args, lines, obj)
    if args.tower_verb == "census":
        report = prosoluble_census(tower, census_cap=args.census_cap)
        obj = {"tower": tower.spec,
               "per_level_counts": list(report.per_level_counts),
               "per_level_bruteforce": list(report.per_level_bruteforce),
               "coherent_count": len(report.coherent),
               "nontrivial_exists": report.nontrivial_exists}
        lines = [f"levels: {list(report.per_level_counts)}",
                 f"coherent families: {len(report.coherent)}",
                 f"nontrivial: {report.nontrivial_exists}"]
        return _emit(args, lines, obj)
    if args.tower_verb == "check":
        fam = formats.family_from_obj(_payload(args.family), tower=tower)
        ok, bad = is_compatible(fam)
        detail = {"tower": tower.spec, "compatible": ok,
                  "first_failing_level": None if ok else bad + 1}
        if ok and fam.flavor == "crossed":
            chains = crossed_family_marker_recovery(tower, fam)
            detail["marker_chains"] = len(chains)
        lines = [f"compatible: {ok}" if ok
                 else f"compatible: False (level {bad + 1})"]
        return _emit(args, lines, detail)
    raise UsageError("unknown tower verb")


def _parse_gset(ring, spec: str):
    if spec == "point":
        return point_gset(ring.group)
    pieces = spec.split("+")
    out = None
    for piece in pieces:
        if piece == "point":
            x = point_gset(ring.group)
        elif piece.startswith("trans:"):
            cls = formats.class_from_id(ring.lattice, piece[len("trans:"):])
            x = from_subgroup(ring.group, ring.lattice.classes[cls])
        else:
            raise UsageError(f"bad G-set spec {piece!r}")
        out = x if out is None else disjoint_union(out, x)[0]
    return out


def cmd_mackey(args) -> str:
    ring = _ring(args.group)
    g = ring.group
    cring = get_crossed_ring(g, cap=max(_cap(), 0))
    if args.functor == "burnside":
        m = burnside_mackey(g)
    elif args.functor == "fp":
        m = fixed_point_mackey(g, regular_representation(g, QQ))
    else:
        m = fixed_quotient_mackey(g, regular_representation(g, QQ))
    y = _parse_gset(ring, args.y)
    if args.pair:
        try:
            hpart, apart = args.pair.split(",")
            cls = formats.class_from_id(ring.lattice, hpart.split("=", 1)[1])
            a = int(apart.split("=", 1)[1])
        except (ValueError, IndexError) as exc:
            raise UsageError(f"bad --pair {args.pair!r}") from exc
        pairs = [(cls, a)]
    else:
        pairs = [b.key() for b in cring.basis]
    mats = []
    for cls, a in pairs:
        c = crossed_from_pair(g, ring.lattice.classes[cls], a)
        mats.append(((cls, a), eta(c, m, y)))
    items = [{"H": formats.class_id(ring.lattice, cls), "a": a,
              "matrix": [[str(v) for v in row] for row in mat]}
             for (cls, a), mat in mats]
    lines = []
    for it in items:
        lines.append(f"pair ({it['H']}, {it['a']}):")
        for row in it["matrix"]:
            lines.append("  " + " ".join(row))
    csv_text = None
    if len(mats) == 1:
        csv_text = formats.matrix_to_csv(mats[0][1])
    return _emit(args, lines,
                 {"group": g.label, "functor": args.functor, "eta": items}, csv_text)


_WORD_TOKEN = re.compile(r"^([gz])(-?\d+)(?:\^(-?\d+))?$")


def _parse_hall_word(h, word: str):
    token = _WORD_TOKEN
    out = h.identity
    for tok in word.split():
        m = token.match(tok)
        if not m:
            raise UsageError(f"bad hall word token {tok!r}")
        kind, idx, exp = m.group(1), int(m.group(2)), int(m.group(3) or 1)
        base = h.generator(idx) if kind == "g" else h.central(idx)
        step = h.identity
        for _ in range(exp % h.p):
            step = h.mul(step, base)
        out = h.mul(out, step)
    return out


def cmd_hall(args) -> str:
    h = hall_truncation(args.p, args.n)
    if args.hall_verb == "order":
        lines = [f"order: {h.order}"]
        return _emit(args, lines, {"p": h.p, "n": h.n, "order": h.order})
    if args.hall_verb == "class":
        w = _parse_hall_word(h, args.word)
        orbit = h.conjugacy_class(w)
        obj = {"p": h.p, "n": h.n, "word": args.word, "class_size": len(orbit),
               "support": list(h.support(w))}
        return _emit(args, [f"class size: {len(orbit)}"], obj)
    if args.hall_verb == "centralizer":
        w = _parse_hall_word(h, args.word)
        cent = h.claimed_centralizer(w)
        obj = {"p": h.p, "n": h.n, "word": args.word, "order": cent.order,
               "far_generators": list(cent.far_generators),
               "runs": len(cent.run_words)}
        lines = [f"centralizer order: {cent.order}",
                 f"far generators: {list(cent.far_generators)}",
                 f"support runs: {len(cent.run_words)}"]
        return _emit(args, lines, obj)
    if args.hall_verb == "check":
        rng = random.Random(args.seed)
        bad = 0
        for _ in range(args.samples):
            a = [0] * h.num_gens
            for i in range(-h.n + 1, h.n):
                a[i + h.n] = rng.randrange(h.p)
            b = tuple(rng.randrange(h.p) for _ in range(h.num_z))
            w = (tuple(a), b)
            if len(h.conjugacy_class(w)) * h.claimed_centralizer(w).order != h.order:
                bad += 1
        if bad:
            raise InternalCheckError(
                f"orbit-stabilizer failed on {bad}/{args.samples} words")
        lines = [f"orbit-stabilizer verified on {args.samples} random interior words"]
        return _emit(args, lines,
                     {"p": h.p, "n": h.n, "samples": args.samples, "failures": 0})
    raise UsageError("unknown hall verb")


_COMMANDS = {
    "tom": cmd_tom,
    "idem": cmd_idem,
    "mul": cmd_mul,
    "crossed-basis": cmd_crossed_basis,
    "crossed-mul": cmd_crossed_mul,
    "zeta": cmd_zeta,
    "tower": cmd_tower,
    "mackey": cmd_mackey,
    "hall": cmd_hall,
}


def run(argv: list[str]) -> tuple[int, str, str]:
    """(exit code, stdout, stderr); the testable core of main()."""
    try:
        args = build_parser().parse_args(argv)
        out = _COMMANDS[args.verb](args)
        return 0, out, ""
    except InternalCheckError as exc:
        return 3, "", f"internal invariant violation: {exc}\n"
    except CapExceeded as exc:
        return 2, "", f"cap exceeded: {exc}\n"
    except BurnsideError as exc:
        return 1, "", f"error: {exc}\n"


def main() -> None:
    code, out, err = run(sys.argv[1:])
    if out:
        sys.stdout.write(out)
    if err:
        sys.stderr.write(err)
    raise SystemExit(code)


if __name__ == "__main__":
    main()
