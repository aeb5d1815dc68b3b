import pytest

popmatch = pytest.importorskip("popmatch_py")

FIX_INTRO = """\
item b1 copies=1 cost=3
item b2 copies=1 cost=2
item b3 copies=1 cost=1
person a1 : b1 > b2 > b3
person a2 : b1 > b2 > b3
person a3 : b1 > b2 > b3
"""

FIX_INTRO_PLUS_B2 = FIX_INTRO.replace("item b2 copies=1", "item b2 copies=2")


def test_infeasible_instance_returns_none():
    assert popmatch.solve(FIX_INTRO) is None


def test_solve_reports_min_cost():
    result = popmatch.solve(FIX_INTRO_PLUS_B2)
    assert result is not None
    assert result["cost"] == 7
    assert sorted(result["matching"]) == ["a1", "a2", "a3"]


def test_augment_picks_cheaper_copy():
    plan = popmatch.augment(FIX_INTRO, mode="exact")
    assert plan == {"extra": {"b2": 1}, "total_cost": 2}


def test_is_popular():
    matching = "a1 -> b1\na2 -> b2\na3 -> b2\n"
    assert popmatch.is_popular(FIX_INTRO_PLUS_B2, matching)
    assert not popmatch.is_popular(FIX_INTRO, "a1 -> b1\na2 -> b2\na3 -> b3\n")


def test_gadget_round_trip():
    sat = "vars 3\nc 1 2 3\n"
    assert popmatch.solve_1in3(sat) is not None
    gadget = popmatch.generate_gadget(sat, "augment")
    assert popmatch.solve(gadget) is None
    plan = popmatch.augment(gadget, mode="exact")
    assert plan["total_cost"] == 1


def test_parse_errors_raise():
    with pytest.raises(popmatch.PopmatchError):
        popmatch.solve("item b1 copies=0 cost=1\n")
