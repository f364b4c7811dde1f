"""Quick check that the extension module imports and agrees with known values."""

from fractions import Fraction

import dualgarside as dg


def main():
    assert [dg.catalan(n) for n in range(1, 7)] == [1, 2, 5, 14, 42, 132]
    assert len(dg.enumerate_nc(5)) == 42

    assert dg.count_braids(4, 3) == 556
    assert dg.count_braids(6, 8) == 16643147362961
    assert sum(c for _, c in dg.count_by_last(3, 2)) == 15

    p = dg.NcPartition(12, [[1, 5, 12], [2, 3], [6, 8, 9], [4], [7], [10], [11]])
    k = p.kreweras()
    assert k.blocks == [[1, 3, 4], [2], [5, 9, 10, 11], [6, 7], [8], [12]]
    assert k.kreweras() == p.rotate(-1)
    assert len({p, k, dg.NcPartition(12, p.blocks)}) == 2

    top = dg.NcPartition.top(4)
    assert top.mobius() == -5
    assert dg.NcPartition.bottom(4).leq(top)

    assert abs(dg.determinant_exact(5)) == dg.determinant_formula(5)
    assert int(dg.spectral_radius(5) * 100) == 1283
    assert dg.part_size_total(5, 2) == 35

    catalan_moments = [dg.catalan(n) for n in range(1, 6)]
    assert dg.cumulants_from_moments(catalan_moments) == [Fraction(1)] * 5
    assert dg.moments_from_cumulants([0, 1, 0, 0, 0, 0], "classical") == [0, 1, 0, 3, 0, 15]
    assert dg.moments_from_cumulants(["1/2", "0"], "boolean") == [Fraction(1, 2), Fraction(1, 4)]

    assert dg.product_cumulants([[1, 1, 1], [1, 1, 1]], 3) == [1, 3, 15]
    assert dg.count_joining_tuples(3, 2) == 15
    squares = [dg.catalan(n) ** 2 for n in range(1, 7)]
    assert dg.series_solve_r(squares) == [1, 3, 15, 99, 773, 6743]

    assert dg.band_generator(1, 3, 3) == [1, 2, -1]
    assert dg.braid_to_permutation(3, [1, 2, -1]) == [3, 2, 1]

    try:
        dg.count_braids(12, 2)
    except dg.ResourceLimitError:
        pass
    else:
        raise AssertionError("expected ResourceLimitError")
    try:
        dg.NcPartition(4, [[1, 3], [2, 4]])
    except ValueError:
        pass
    else:
        raise AssertionError("expected ValueError")

    print("smoke test ok")


if __name__ == "__main__":
    main()
