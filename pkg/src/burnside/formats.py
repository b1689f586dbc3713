"""Stable parsing and serialization for the CLI and file interfaces.

Group specs, element/crossed-element JSON, table-of-marks CSV, tower specs
and family JSON all live here.  Subgroup classes travel as canonical ids:
the hyphen-joined sorted element indices of the canonical class
representative, which are stable because every builtin fixes its element
ordering.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from pathlib import Path

from .crossed import CrossedElement, get_crossed_ring
from .errors import ParseError
from .groups import FiniteGroup, builtin, group_from_cayley, group_from_permutations
from .lattice import SubgroupLattice
from .ring import BurnsideElement, TableOfMarks, get_ring
from .towers import CompatibleFamily, QuotientTower, tower_build

_group_cache: dict[str, FiniteGroup] = {}

_PERM_RE = re.compile(r"\(([^()]*)\)")


def parse_permutation_spec(body: str) -> tuple[int, list[tuple[int, ...]], str]:
    """'(0 1 2)(3 4);(0 1) deg=5' -> (degree, generators, normal form)."""
    m = re.search(r"\bdeg=(\d+)\s*$", body)
    if not m:
        raise ParseError("permutation spec needs a 'deg=d' suffix")
    degree = int(m.group(1))
    gen_part = body[: m.start()].strip()
    gens = []
    norm_gens = []
    for chunk in filter(None, (c.strip() for c in gen_part.split(";"))):
        perm = list(range(degree))
        cycles = _PERM_RE.findall(chunk)
        if not cycles or _PERM_RE.sub("", chunk).strip():
            raise ParseError(f"bad cycle notation {chunk!r}")
        norm_cycles = []
        for cyc in cycles:
            pts = [int(t) for t in cyc.split()]
            if len(set(pts)) != len(pts) or any(not 0 <= t < degree for t in pts):
                raise ParseError(f"bad cycle ({cyc})")
            for a, b in zip(pts, pts[1:] + pts[:1]):
                perm[a] = b
            if pts:
                k = pts.index(min(pts))
                norm_cycles.append(tuple(pts[k:] + pts[:k]))
        norm_cycles.sort()
        norm_gens.append("".join("(" + " ".join(map(str, c)) + ")"
                                 for c in norm_cycles))
        # perm as a mapping table: perm[a] = image of a
        gens.append(tuple(perm))
    normal = "perm:" + ";".join(norm_gens) + f" deg={degree}"
    return degree, gens, normal


def normalize_group_spec(spec: str) -> str:
    spec = spec.strip()
    if spec.startswith("perm:"):
        return parse_permutation_spec(spec[len("perm:"):])[2]
    return spec


def parse_group_spec(spec: str) -> FiniteGroup:
    """Group from a spec string; instances are cached per normal form."""
    normal = normalize_group_spec(spec)
    hit = _group_cache.get(normal)
    if hit is not None:
        return hit
    if normal.startswith("perm:"):
        degree, gens, _ = parse_permutation_spec(normal[len("perm:"):])
        g = group_from_permutations(degree, gens, label=normal)
    elif normal.startswith("cayley:"):
        path = Path(normal[len("cayley:"):])
        try:
            obj = json.loads(path.read_text())
        except OSError as exc:
            raise ParseError(f"cannot read {path}: {exc}") from exc
        g = group_from_json(obj)
    else:
        g = builtin(normal)
    _group_cache[normal] = g
    return g


def group_from_json(obj) -> FiniteGroup:
    try:
        order = int(obj["order"])
        table = obj["mul"]
        label = str(obj.get("label", "custom"))
    except (KeyError, TypeError) as exc:
        raise ParseError(f"bad Cayley JSON: {exc}") from exc
    if len(table) != order:
        raise ParseError("Cayley JSON order disagrees with table size")
    return group_from_cayley(table, label)


def group_to_json(g: FiniteGroup) -> dict:
    return {"order": g.order, "mul": [list(map(int, row)) for row in g.mul_table],
            "label": g.label}


# -- subgroup class ids ----------------------------------------------------------


def class_id(lattice: SubgroupLattice, cls: int) -> str:
    return "-".join(str(i) for i in lattice.classes[cls].elems)


def class_from_id(lattice: SubgroupLattice, ident: str) -> int:
    try:
        elems = tuple(sorted(int(t) for t in ident.split("-")))
    except ValueError as exc:
        raise ParseError(f"bad class id {ident!r}") from exc
    try:
        return lattice.class_index(elems)
    except Exception as exc:
        raise ParseError(f"no subgroup class with id {ident!r}") from exc


def _fraction_fields(v: Fraction) -> dict:
    return {"num": str(v.numerator), "den": str(v.denominator)}


def _fraction_from_fields(obj) -> Fraction:
    try:
        return Fraction(int(obj["num"]), int(obj["den"]))
    except (KeyError, ValueError, ZeroDivisionError, TypeError) as exc:
        raise ParseError(f"bad rational {obj!r}") from exc


# -- Burnside elements -------------------------------------------------------------


def element_to_obj(x: BurnsideElement) -> dict:
    ring = get_ring(x.group)
    coeffs = [{"class": class_id(ring.lattice, c), **_fraction_fields(v)}
              for c, v in sorted(x.coeffs.items())]
    return {"group": x.group.label, "coeffs": coeffs}


def element_from_obj(obj, group: FiniteGroup | None = None) -> BurnsideElement:
    if group is None:
        group = parse_group_spec(obj["group"])
    ring = get_ring(group, cap=max(200, group.order))
    coeffs = {}
    for item in obj.get("coeffs", []):
        cls = class_from_id(ring.lattice, item["class"])
        coeffs[cls] = coeffs.get(cls, Fraction(0)) + _fraction_from_fields(item)
    return BurnsideElement(group, coeffs)


def crossed_to_obj(x: CrossedElement) -> dict:
    ring = get_crossed_ring(x.group)
    coeffs = [{"H": class_id(ring.lattice, c), "a": a, **_fraction_fields(v)}
              for (c, a), v in sorted(x.coeffs.items())]
    return {"group": x.group.label, "coeffs": coeffs}


def crossed_from_obj(obj, group: FiniteGroup | None = None) -> CrossedElement:
    if group is None:
        group = parse_group_spec(obj["group"])
    ring = get_crossed_ring(group, cap=max(200, group.order))
    coeffs = {}
    for item in obj.get("coeffs", []):
        cls = class_from_id(ring.lattice, item["H"])
        key = ring.canonical_pair(ring.lattice.classes[cls].elems, int(item["a"]))
        coeffs[key] = coeffs.get(key, Fraction(0)) + _fraction_from_fields(item)
    return CrossedElement(group, coeffs)


# -- tables and matrices -------------------------------------------------------------


def tom_to_csv(tom: TableOfMarks) -> str:
    ids = [class_id(tom.lattice, c) for c in range(len(tom.rows))]
    lines = [",".join(ids)]
    for row in tom.rows:
        lines.append(",".join(str(v) for v in row))
    return "\n".join(lines) + "\n"


def matrix_to_csv(matrix) -> str:
    lines = []
    for row in matrix:
        lines.append(",".join(str(v) for v in row))
    return "\n".join(lines) + "\n"


# -- towers and families ----------------------------------------------------------------


def parse_tower_spec(spec: str, cap: int | None = None) -> QuotientTower:
    spec = spec.strip()
    kwargs = {} if cap is None else {"cap": cap}
    if spec.startswith("zp:"):
        params = _keyvals(spec[3:])
        return tower_build("zp", int(params["p"]), depth=int(params["depth"]), **kwargs)
    if spec.startswith("zhat:"):
        params = _keyvals(spec[5:])
        return tower_build("zhat", None, depth=int(params["depth"]), **kwargs)
    if spec.startswith("a5xz:"):
        params = _keyvals(spec[5:])
        chain = tuple(int(t) for t in params["chain"].split(","))
        return tower_build("a5xz", chain, **kwargs)
    if spec.startswith("custom:"):
        path = Path(spec[len("custom:"):])
        try:
            obj = json.loads(path.read_text())
        except OSError as exc:
            raise ParseError(f"cannot read {path}: {exc}") from exc
        return tower_from_json(obj, **kwargs)
    raise ParseError(f"bad tower spec {spec!r}")


def _keyvals(body: str) -> dict[str, str]:
    out = {}
    for part in filter(None, (p.strip() for p in body.split(","))):
        if "=" not in part:
            # bare values belong to the previous key's comma list (chain=1,2,4)
            last = next(reversed(out), None)
            if last is None:
                raise ParseError(f"bad tower parameter {part!r}")
            out[last] += "," + part
            continue
        k, _, v = part.partition("=")
        out[k.strip()] = v.strip()
    return out


def tower_from_json(obj, cap: int | None = None) -> QuotientTower:
    from .groups import Homomorphism

    levels = []
    for lvl in obj["levels"]:
        if isinstance(lvl, str):
            levels.append(parse_group_spec(lvl))
        else:
            levels.append(group_from_json(lvl))
    maps = []
    for i, table in enumerate(obj["maps"]):
        maps.append(Homomorphism(levels[i + 1], levels[i],
                                 tuple(int(x) for x in table)))
    kwargs = {} if cap is None else {"cap": cap}
    return tower_build("custom", (levels, maps), **kwargs)


def family_to_obj(family: CompatibleFamily) -> dict:
    levels = []
    for i, e in enumerate(family.elements):
        if family.flavor == "plain":
            ring = family.tower.ring(i)
            levels.append([{"class": class_id(ring.lattice, c), **_fraction_fields(v)}
                           for c, v in sorted(e.coeffs.items())])
        else:
            ring = family.tower.crossed_ring(i)
            levels.append([{"H": class_id(ring.lattice, c), "a": a,
                            **_fraction_fields(v)}
                           for (c, a), v in sorted(e.coeffs.items())])
    return {"tower": family.tower.spec, "flavor": family.flavor, "levels": levels}


def family_from_obj(obj, tower: QuotientTower | None = None) -> CompatibleFamily:
    if tower is None:
        tower = parse_tower_spec(obj["tower"])
    flavor = obj.get("flavor", "plain")
    if len(obj["levels"]) != tower.depth:
        raise ParseError("family level count disagrees with tower depth")
    elements = []
    for i, items in enumerate(obj["levels"]):
        if flavor == "plain":
            elements.append(element_from_obj({"coeffs": items},
                                             group=tower.levels[i]))
        else:
            elements.append(crossed_from_obj({"coeffs": items},
                                             group=tower.levels[i]))
    return CompatibleFamily(tower, flavor, tuple(elements))


# -- G-sets ------------------------------------------------------------------------------


def gset_to_obj(x) -> dict:
    return {"group": x.group.label, "points": x.size,
            "action": [list(map(int, row)) for row in x.action]}


def gset_from_obj(obj, group: FiniteGroup | None = None):
    from .gsets import GSet

    if group is None:
        group = parse_group_spec(obj["group"])
    return GSet(group, obj["action"])


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"
