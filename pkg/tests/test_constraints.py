import numpy as np
import pytest

from orbgrand.bitlin import BitMatrix, BitVec, gf2_in_row_space
from orbgrand.codes import build_ebch
from orbgrand.constraints import (
    ConstraintInfeasibleError,
    ConstraintLayout,
    ConstraintTargets,
    compute_targets,
    count_search_space,
    derive_constraints,
    random_disjoint_layout,
)

PAIR_ROWS = [[1, 1, 1, 1, 0, 1, 1, 0], [0, 1, 0, 1, 0, 0, 1, 0]]


def pair_matrix() -> BitMatrix:
    return BitMatrix.from_lists(PAIR_ROWS)


def test_two_row_derivation_reference_case():
    layout = derive_constraints(pair_matrix(), 2)
    assert layout.p == 2
    assert [r.to01() for r in layout.rows] == ["10100100", "01010010"]
    assert layout.sets == ((1, 3, 6), (2, 4, 7))
    # unconstrained positions 5 and 8 take the leading slots
    assert layout.pi2 == (3, 6, 4, 7, 1, 5, 8, 2)
    assert layout.intervals == ((3, 5), (6, 8))


def test_derived_rows_stay_in_dual_space():
    h = pair_matrix()
    layout = derive_constraints(h, 2)
    for row in layout.rows:
        assert gf2_in_row_space(h, row) is not None
    code = build_ebch(7, 3)
    layout = derive_constraints(code.H, 2)
    for row in layout.rows:
        assert gf2_in_row_space(code.H, row) is not None


def test_all_one_seeded_first():
    code = build_ebch(3, 1)
    layout = derive_constraints(code.H, 1)
    assert layout.sets == (tuple(range(1, 9)),)
    assert layout.intervals == ((1, 8),)
    assert layout.pi2 == tuple(range(1, 9))


def test_ebch128_layouts():
    code = build_ebch(7, 3)
    one = derive_constraints(code.H, 1)
    assert one.sets[0] == tuple(range(1, 129))
    two = derive_constraints(code.H, 2)
    sizes = [len(s) for s in two.sets]
    # splitting the all-one row partitions every position between the sets
    assert sum(sizes) == 128
    assert min(sizes) >= 1
    assert two.rows[0].value ^ two.rows[1].value == (1 << 128) - 1


def test_infeasible_p_reports_achievable():
    code = build_ebch(7, 3)
    with pytest.raises(ConstraintInfeasibleError) as exc:
        derive_constraints(code.H, 5)
    assert exc.value.achievable == 2
    assert "2" in str(exc.value)
    with pytest.raises(ValueError):
        derive_constraints(code.H, 0)
    with pytest.raises(ValueError):
        derive_constraints(code.H, 23)


def test_disjointness_fuzz():
    rng = np.random.default_rng(5)
    for _ in range(50):
        rows = int(rng.integers(2, 7))
        cols = int(rng.integers(6, 17))
        a = rng.integers(0, 2, size=(rows, cols), dtype=np.uint8)
        m = BitMatrix.from_lists(a.tolist())
        try:
            layout = derive_constraints(m, 2)
        except (ConstraintInfeasibleError, ValueError):
            continue
        seen = 0
        for row in layout.rows:
            assert row.value & seen == 0
            seen |= row.value
            assert gf2_in_row_space(m, row) is not None


def test_layout_validation():
    with pytest.raises(ValueError):
        ConstraintLayout(1, (BitVec(4, 0b0011),), ((1, 2),), (1, 2, 3, 4), ((3, 4),))
    with pytest.raises(ValueError):
        ConstraintLayout(
            2,
            (BitVec(4, 0b0011), BitVec(4, 0b0110)),
            ((1, 2), (2, 3)),
            (1, 2, 3, 4),
            ((1, 2), (3, 4)),
        )
    lay = ConstraintLayout(1, (BitVec(4, 0b0110),), ((2, 3),), (1, 3, 4, 2), ((3, 4),))
    assert lay.n == 4
    assert lay.position_masks() == [0, 0, 1, 1, 0]


def test_compute_targets():
    layout = derive_constraints(pair_matrix(), 2)
    assert compute_targets(layout, BitVec.zeros(8)).targets == (0, 0)
    # a word with odd parity on {2,4,7} and even on {1,3,6}
    v = BitVec.from_support(8, [2, 5])
    assert compute_targets(layout, v).targets == (0, 1)
    # combined-row target equals the XOR of the constituent row targets
    h = pair_matrix()
    rng = np.random.default_rng(9)
    for _ in range(50):
        v = BitVec(8, int(rng.integers(0, 256)))
        t1 = (h.row_ints[0] & v.value).bit_count() & 1
        t2 = (h.row_ints[1] & v.value).bit_count() & 1
        got = compute_targets(layout, v).targets
        assert got[0] == t1 ^ t2
        assert got[1] == t2
    with pytest.raises(ValueError):
        compute_targets(layout, BitVec(7, 0))


def test_targets_packed_and_validation():
    t = ConstraintTargets((1, 0, 1))
    assert t.packed == 0b101
    with pytest.raises(ValueError):
        ConstraintTargets((2,))


def test_count_search_space_examples():
    assert count_search_space(8, ConstraintLayout.unconstrained(8), ConstraintTargets(())) == 256
    layout = derive_constraints(pair_matrix(), 2)
    for bits in ((0, 0), (0, 1), (1, 0), (1, 1)):
        assert count_search_space(8, layout, ConstraintTargets(bits)) == 64
    all_one = ConstraintLayout(
        1, (BitVec.ones(4),), (tuple(range(1, 5)),), tuple(range(1, 5)), ((1, 4),)
    )
    assert count_search_space(4, all_one, ConstraintTargets((1,))) == 8
    assert count_search_space(4, all_one, ConstraintTargets((0,))) == 8
    with pytest.raises(ValueError):
        count_search_space(25, ConstraintLayout.unconstrained(25), ConstraintTargets(()))
    with pytest.raises(ValueError):
        count_search_space(8, layout, ConstraintTargets((1,)))


def test_count_matches_direct_enumeration():
    rng = np.random.default_rng(21)
    for _ in range(20):
        n = int(rng.integers(4, 11))
        p = int(rng.integers(0, min(3, n) + 1))
        layout = random_disjoint_layout(n, p, rng)
        targets = ConstraintTargets(tuple(int(b) for b in rng.integers(0, 2, size=p)))
        slow = 0
        for e in range(1 << n):
            ok = True
            for row, tgt in zip(layout.rows, targets.targets):
                if (e & row.value).bit_count() & 1 != tgt:
                    ok = False
                    break
            slow += ok
        assert count_search_space(n, layout, targets) == slow


def test_random_disjoint_layout_shape():
    rng = np.random.default_rng(2)
    for _ in range(100):
        n = int(rng.integers(2, 20))
        p = int(rng.integers(0, n + 1))
        layout = random_disjoint_layout(n, p, rng)
        assert layout.p == p
        assert all(s for s in layout.sets)
    with pytest.raises(ValueError):
        random_disjoint_layout(4, 5, rng)
