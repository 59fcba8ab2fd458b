"""Smoke test for the dfan extension module: build it with maturin, then
run `python3 python/smoke_test.py`."""

import dfan


def main():
    d, x = dfan.Operator("d1", 1), dfan.Operator("x1", 1)
    assert str(d * x) == str(dfan.Operator("x1 d1 + 1", 1))
    assert d.mul_dt(x) == dfan.Operator("x1 d1 + t", 1)

    euler = dfan.Module(["x1 d1 + x2 d2"], n=2, k=2)
    basis = euler.standard_basis([1, "1/2"])
    assert len(basis) == 1
    quotients, remainder = basis.divide(dfan.Element("x1^2 d1 + x1 x2 d2", 2))
    assert str(remainder) == "0", remainder
    assert [str(q) for q in quotients] == ["x1"], quotients
    assert not basis.contains(dfan.Element("x1", 2))

    assert len(euler.fan()) == 1
    walls = dfan.Module(["d1 + x1 d2^2"], n=2, k=2).fan()
    assert (len(walls), walls.maximal_count()) == (3, 2)

    assert dfan.Module(["1 + x1^2 d1"], n=1, k=1).fiber()["verdict"] == "zero"
    assert dfan.Module(["d1"], n=1, k=1).fiber()["verdict"] == "nonzero"

    cone = dfan.BasicCone.orthant(2)
    at_cone = euler.standard_basis(cone.interior_weight())
    q = dfan.Element("x1 d1 + x2 d2", 2)
    pieces = dfan.flat_decompose(q, [1, 1], cone, [0, 1], at_cone)
    total = pieces[0]
    for p in pieces[1:]:
        total = total + p
    assert total == q

    r = dfan.kernel_normalize([[1, 0], [0, 1]], ["W2 x1 d2 + 3 W2", "-W1 x1 d2 - 3 W1"], 2)
    assert len(r) == 2

    steps = dfan.monomial_chain("W1^2, W1 W2", 2)
    assert steps and all(isinstance(m, list) for m, _ in steps)

    try:
        dfan.BasicCone([[1, 1], [1, 3]])
    except dfan.AlgebraError as e:
        assert "basic" in str(e)
    else:
        raise AssertionError("non-basic cone accepted")
    try:
        dfan.Operator("x1 +", 1)
    except dfan.ParseError:
        pass
    else:
        raise AssertionError("bad operator accepted")

    print("dfan smoke test: ok")


if __name__ == "__main__":
    main()
