import json
from fractions import Fraction

import pytest

from burnside.errors import ParseError
from burnside.crossed import get_crossed_ring
from burnside.formats import (
    canonical_json,
    class_from_id,
    class_id,
    crossed_from_obj,
    crossed_to_obj,
    element_from_obj,
    element_to_obj,
    family_from_obj,
    family_to_obj,
    gset_from_obj,
    gset_to_obj,
    group_from_json,
    group_to_json,
    normalize_group_spec,
    parse_group_spec,
    parse_permutation_spec,
    parse_tower_spec,
    tom_to_csv,
)
from burnside.gsets import from_subgroup
from burnside.ring import get_ring
from burnside.towers import idempotent_family


def test_parse_builtin_specs():
    assert parse_group_spec("sym:3").order == 6
    assert parse_group_spec("product:alt:5×cyclic:2").order == 120
    assert parse_group_spec("sym:3") is parse_group_spec("sym:3")  # cached


def test_perm_spec_round_trip():
    degree, gens, normal = parse_permutation_spec("(1 2 0);(0 1) deg=3")
    assert degree == 3
    assert normal == "perm:(0 1 2);(0 1) deg=3"
    g = parse_group_spec("perm:(1 2 0);(0 1) deg=3")
    assert g.order == 6
    assert normalize_group_spec(g.label) == g.label


def test_perm_spec_mapping_convention():
    # "(0 1 2)" sends 0->1, 1->2, 2->0
    _, gens, _ = parse_permutation_spec("(0 1 2) deg=3")
    assert gens[0] == (1, 2, 0)


def test_perm_spec_errors():
    for bad in ["(0 1 deg=3", "(0 0) deg=2", "(0 3) deg=3", "(0 1)"]:
        with pytest.raises(ParseError):
            parse_permutation_spec(bad.replace("perm:", ""))


def test_cayley_json_round_trip(tmp_path):
    g = parse_group_spec("dihedral:4")
    obj = group_to_json(g)
    g2 = group_from_json(obj)
    assert g2.order == g.order
    path = tmp_path / "g.json"
    path.write_text(json.dumps(obj))
    g3 = parse_group_spec(f"cayley:{path}")
    assert g3.order == 8


def test_class_ids():
    ring = get_ring(parse_group_spec("sym:3"))
    for c in range(ring.class_count):
        ident = class_id(ring.lattice, c)
        assert class_from_id(ring.lattice, ident) == c
    assert class_id(ring.lattice, 0) == "0"
    with pytest.raises(ParseError):
        class_from_id(ring.lattice, "1-2-3")


def test_element_json_round_trip():
    ring = get_ring(parse_group_spec("sym:4"))
    x = ring.basis(3).scale(Fraction(2, 7)) - ring.basis(0).scale(5)
    obj = element_to_obj(x)
    assert json.loads(canonical_json(obj)) == obj
    back = element_from_obj(obj)
    assert back == x


def test_crossed_json_round_trip():
    g = parse_group_spec("quaternion:8")
    ring = get_crossed_ring(g)
    x = ring.unit + ring.pair_element((g.identity,), 3, Fraction(-2, 3))
    obj = crossed_to_obj(x)
    back = crossed_from_obj(obj)
    assert back == x


def test_tom_csv_shape():
    ring = get_ring(parse_group_spec("sym:3"))
    csv = tom_to_csv(ring.table_of_marks)
    lines = csv.strip().split("\n")
    assert len(lines) == 5
    assert lines[1].split(",") == ["6", "0", "0", "0"]


def test_tower_spec_parse_and_family_round_trip():
    tower = parse_tower_spec("zp:p=2,depth=3")
    assert [g.order for g in tower.levels] == [2, 4, 8]
    assert tower.spec == "zp:p=2,depth=3"
    fam = idempotent_family(tower, "index:p^1")
    obj = family_to_obj(fam)
    back = family_from_obj(obj)
    assert back.elements == fam.elements
    a5 = parse_tower_spec("a5xz:chain=1,2")
    assert [g.order for g in a5.levels] == [60, 120]


def test_custom_tower_from_json(tmp_path):
    obj = {"levels": ["cyclic:2", "cyclic:4"],
           "maps": [[0, 1, 0, 1]]}
    path = tmp_path / "tower.json"
    path.write_text(json.dumps(obj))
    tower = parse_tower_spec(f"custom:{path}")
    assert tower.depth == 2
    assert tower.maps[0](3) == 1


def test_gset_json_round_trip():
    g = parse_group_spec("sym:3")
    ring = get_ring(g)
    x = from_subgroup(g, ring.lattice.classes[1])
    obj = gset_to_obj(x)
    back = gset_from_obj(obj)
    assert back == x


def test_canonical_json_deterministic():
    a = canonical_json({"b": 1, "a": [2, 3]})
    b = canonical_json({"a": [2, 3], "b": 1})
    assert a == b == '{"a":[2,3],"b":1}\n'
