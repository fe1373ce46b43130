"""Smoke test for the pyhallcomm extension module."""

import json

import pyhallcomm as hc


def main():
    assert hc.reduce("x.y.y^-1.x") == "x.x"

    h0 = hc.Subgroup(["y", "x.y.x^-1", "x.x.y.x^-1.x^-1", "x.x.x"])
    assert (h0.index(), h0.rank()) == (3, 4)
    assert h0.basis() == ["y", "x.x.x", "x.y.x^-1", "x^-1.y.x"]
    assert h0.contains("x.y.x.x") and not h0.contains("x")
    assert h0.intersect(hc.Subgroup(["x", "y.y", "y.x.y^-1"])).index() == 6

    tower = hc.Tower(figure=True)
    assert [tower.order(k) for k in range(3)] == [3, 6, 720]
    assert tower.ell(0, "1") == "(012)"
    table = tower.m_map_table(1).splitlines()
    assert table[5] == "a_(021)(01) -> a_*.a_2.a_*^-1" and table[6] == "a_* -> a_*.a_*"

    e = tower.embed(0, "1")
    assert e.images() == ["x.y.x^-1", "x.x.y.x^-1.x^-1", "y", "x.x.x"]
    assert e.apply("y") == "x.y.x^-1"
    assert tower.embed(1, "(012)").comm_equal(e)
    assert not e.is_identity() and e.compose(e.invert()).is_identity()
    assert hc.VirtualAut.from_json(e.to_json()) == e
    assert json.loads(e.to_json())["ambient_rank"] == 2

    swap = hc.VirtualAut(["x", "y"], ["y", "x"])
    assert not swap.comm_equal(hc.VirtualAut.identity())
    assert swap.compose(swap).is_identity()

    assert tower.h_subgroup(2).index() == 720
    assert tower.u_multiply((0, "1"), (1, "(01)")) == (1, "(02)")
    assert tower.embed_finite_group([[0, 1], [1, 0]])[1] == (2, "(01)")
    assert tower.hall_conjugator(1, ["(01)"], ["(12)"])
    passed, attempted, failures = tower.verify("homomorphism", level=1)
    assert (passed, attempted, failures) == (36, 36, [])

    try:
        tower.embed(3, "()")
    except ValueError:
        pass
    else:
        raise AssertionError("level 3 embed should fail")

    print("pyhallcomm smoke test passed")


if __name__ == "__main__":
    main()
