"""Complexes: construction, tensor, dual, reduction, serialization."""

from __future__ import annotations

import pytest

from cfkcalc import (
    Arrow,
    CfkComplex,
    Generator,
    InternalInconsistency,
    ParseError,
    change_basis,
    deserialize,
    direct_sum,
    dual,
    epsilon,
    j_drop,
    reduce,
    serialize,
    square_complex,
    tau,
    tensor,
    unknot_complex,
    validate,
)
from conftest import (
    random_basis_change,
    random_staircase,
    torus_staircase,
    trefoil_complex,
    with_random_squares,
)

TREFOIL_TEXT = """cfk v1
gen x2 A=-1 M=-2
gen x1 A=0 M=-1
gen x0 A=1 M=0
arr x1 x0 u=1
arr x1 x2 u=0
"""


def test_construction_sorts_and_indexes():
    c = trefoil_complex()
    assert [g.name for g in c.generators] == ["x2", "x1", "x0"]
    assert c.alexander_of("x0") == 1
    assert c.maslov_of("x2") == -2
    assert c.arrows_from("x1") == (Arrow("x1", "x0", 1), Arrow("x1", "x2", 0))


def test_construction_rejects_bad_input():
    g = [Generator("a", 0, 0)]
    with pytest.raises(ValueError):
        CfkComplex([Generator("", 0, 0)])
    with pytest.raises(ValueError):
        CfkComplex([Generator("a b", 0, 0)])
    with pytest.raises(ValueError):
        CfkComplex(g + g)
    with pytest.raises(ValueError):
        CfkComplex(g, [Arrow("a", "zz", 0)])
    with pytest.raises(ValueError):
        CfkComplex(g, [Arrow("a", "a", -1)])


def test_duplicate_arrows_cancel_mod_2():
    g = [Generator("a", 1, 0), Generator("b", 0, -1)]
    c = CfkComplex(g, [Arrow("b", "a", 0), Arrow("b", "a", 0)])
    assert c.arrows == ()
    c = CfkComplex(g, [Arrow("b", "a", 0)] * 3)
    assert c.arrows == (Arrow("b", "a", 0),)


def test_j_drop_values():
    c = trefoil_complex()
    assert j_drop(c, Arrow("x1", "x0", 1)) == 0
    assert j_drop(c, Arrow("x1", "x2", 0)) == 1


def test_grading_table():
    assert trefoil_complex().grading_table() == {(1, 0): 1, (0, -1): 1, (-1, -2): 1}


def test_validate_flags_violations():
    g = [Generator("a", 0, 0), Generator("b", 0, 0)]
    report = validate(CfkComplex(g, [Arrow("b", "a", 0)]))
    assert not report.ok
    assert any(v.kind == "maslov" for v in report.errors)
    g = [Generator("a", 5, 1), Generator("b", 0, 0)]
    report = validate(CfkComplex(g, [Arrow("a", "b", 0)]))
    assert report.ok  # vertical arrow dropping 5 levels is legal

    g = [Generator("a", 0, 1), Generator("b", 3, 0)]
    report = validate(CfkComplex(g, [Arrow("a", "b", 0)]))
    assert any(v.kind == "j-drop" for v in report.errors)


def test_validate_d_squared():
    gens = [
        Generator("a", 1, 1),
        Generator("b", 0, 0),
        Generator("c", 1, 0),
        Generator("d", 0, -1),
    ]
    arrows = [Arrow("a", "b", 0), Arrow("a", "c", 0), Arrow("b", "d", 0), Arrow("c", "d", 0)]
    assert validate(CfkComplex(gens, arrows)).ok
    report = validate(CfkComplex(gens, arrows[:3]))
    assert any(v.kind == "d-squared" for v in report.errors)


def test_validate_knot_class_flag():
    assert validate(trefoil_complex(), knot_class=True).ok
    two = CfkComplex([Generator("a", 0, 0), Generator("b", 1, 1)])
    report = validate(two, knot_class=True)
    assert not report.ok


def test_serialize_golden_and_round_trip():
    c = trefoil_complex()
    assert serialize(c) == TREFOIL_TEXT
    assert deserialize(serialize(c)) == c


def test_deserialize_errors():
    with pytest.raises(ParseError, match="header"):
        deserialize("gen a A=0 M=0\n")
    with pytest.raises(ParseError, match="malformed gen"):
        deserialize("cfk v1\ngen a A=x M=0\n")
    with pytest.raises(ParseError, match="duplicate"):
        deserialize("cfk v1\ngen a A=0 M=0\ngen a A=0 M=0\n")
    with pytest.raises(ParseError, match="unknown generator"):
        deserialize("cfk v1\ngen a A=0 M=0\narr a b u=0\n")
    with pytest.raises(ParseError, match="directive"):
        deserialize("cfk v1\nfoo\n")


def test_deserialize_cancels_duplicate_arrows():
    text = "cfk v1\ngen a A=1 M=0\ngen b A=0 M=-1\narr b a u=0\narr b a u=0\n"
    assert deserialize(text).arrows == ()


def test_tensor_structure():
    t = trefoil_complex()
    s = tensor(t, t)
    assert len(s.generators) == 9
    assert len(s.arrows) == 2 * 3 + 3 * 2
    assert validate(s).ok
    table = s.grading_table()
    assert table[(2, 0)] == 1  # x0 | x0
    assert table[(-2, -4)] == 1  # x2 | x2
    assert table[(1, -1)] == 2


def test_tensor_with_unknot_preserves_shape():
    t = trefoil_complex()
    s = tensor(t, unknot_complex("u"))
    assert s.grading_table() == t.grading_table()
    assert len(s.arrows) == len(t.arrows)
    assert tau(s) == tau(t) and epsilon(s) == epsilon(t)


def test_dual_negates_and_reverses():
    t = trefoil_complex()
    d = dual(t)
    assert d.grading_table() == {(-1, 0): 1, (0, 1): 1, (1, 2): 1}
    assert d.arrows == (Arrow("x0*", "x1*", 1), Arrow("x2*", "x1*", 0))
    assert dual(d) == t


def test_dual_involution_random(rng):
    for _ in range(10):
        c = with_random_squares(rng, random_staircase(rng), rng.randint(0, 2))
        assert dual(dual(c)) == c
        assert validate(dual(c)).ok


def test_reduce_cancels_synthetic_pair():
    gens = [
        Generator("a", 1, 0),
        Generator("b", 0, -1),
        Generator("p", 0, 0),
        Generator("q", 0, -1),
        Generator("r", 1, 0),
        Generator("s", -1, -1),
    ]
    # p -> q is the only bidegree-(0,0) arrow; r hits q and p hits s, so
    # cancellation must reroute r through the pair onto s
    arrows = [
        Arrow("b", "a", 1),
        Arrow("p", "q", 0),
        Arrow("p", "s", 0),
        Arrow("r", "q", 0),
    ]
    c = CfkComplex(gens, arrows)
    assert validate(c).ok
    r = reduce(c, check_steps=True)
    assert len(r.generators) == 4
    assert r.arrows == (Arrow("b", "a", 1), Arrow("r", "s", 0))
    assert validate(r).ok


def test_reduce_identity_on_reduced():
    t = trefoil_complex()
    assert reduce(t) == t
    r = reduce(tensor(t, dual(t)))
    assert reduce(r) == r


def test_reduce_idempotent_random(rng):
    for _ in range(8):
        c = with_random_squares(rng, random_staircase(rng), rng.randint(0, 2))
        c = random_basis_change(rng, c)
        r = reduce(c, check_steps=True)
        assert reduce(r) == r
        assert validate(r).ok


def test_square_complex_validates():
    for w, h in [(1, 1), (2, 1), (1, 3), (2, 2)]:
        sq = square_complex(w, h, 0, -1)
        assert validate(sq).ok
        assert len(sq.generators) == 4
    with pytest.raises(ValueError):
        square_complex(0, 1)


def test_direct_sum_rejects_name_clash():
    with pytest.raises(ValueError):
        direct_sum(trefoil_complex(), trefoil_complex())


def perturbable_complex() -> CfkComplex:
    # pure staircases admit no filtered change of basis at all (no pair
    # satisfies both grading constraints), so adjoin a square summand
    return direct_sum(trefoil_complex(), square_complex(1, 1, 0, -1))


def test_change_basis_preserves_complex():
    c = perturbable_complex()
    out = change_basis(c, "x1", "sqb", 0)
    assert out != c
    assert validate(out).ok
    assert out.grading_table() == c.grading_table()
    assert tau(out) == tau(c) and epsilon(out) == epsilon(c)


def test_change_basis_rejects_bad_requests():
    c = perturbable_complex()
    with pytest.raises(ValueError):
        change_basis(c, "x1", "x1", 0)
    with pytest.raises(ValueError):
        change_basis(c, "x1", "sqb", 1)  # Maslov mismatch
    with pytest.raises(ValueError):
        change_basis(c, "x2", "sqa", 1)  # would raise the filtration
    with pytest.raises(ValueError):
        change_basis(c, "x1", "sqb", -2)


def test_change_basis_round_trip_is_identity():
    c = perturbable_complex()
    once = change_basis(c, "x1", "sqb", 0)
    twice = change_basis(once, "x1", "sqb", 0)
    assert twice == c


def test_reduce_check_steps_accepts_catalog(rng):
    for _ in range(5):
        c = tensor(random_staircase(rng), dual(random_staircase(rng)))
        r = reduce(c, check_steps=True)
        assert validate(r, knot_class=True).ok
