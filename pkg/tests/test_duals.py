import os

import pytest

import orgrass.duals as duals
from orgrass import (
    DualTable,
    Poly,
    dual_class,
    g,
    reduce_mod_vars,
    reduced_dual_class,
    reduced_dual_classes,
    scan_vanishing,
    verify_iterated_recurrence,
    verify_iterated_recurrence_batch,
)

from oracles import truncated_geometric_inverse


def test_first_components_by_hand():
    # direct expansion of the convolution recurrence at k=3
    assert dual_class(3, 0) == Poly.one(3)
    assert dual_class(3, 1) == Poly.variable(3, 1)
    assert dual_class(3, 2) == Poly.parse(3, "w1^2 + w2")
    assert dual_class(3, 3) == Poly.parse(3, "w1^3 + w3")


def test_entries_are_homogeneous():
    for k in (2, 3, 4):
        for i in range(0, 25):
            p = dual_class(k, i)
            assert p.is_zero or p.homogeneous_degree == i


def test_geometric_series_oracle():
    for k in (2, 3, 4, 5):
        for i in range(41):
            assert dual_class(k, i) == truncated_geometric_inverse(k, i)


def test_convolution_recurrence_recomputed():
    for k in (3, 4):
        for i in range(1, 31):
            acc = Poly.zero(k)
            for m in range(1, min(k, i) + 1):
                acc = acc + Poly.variable(k, m) * dual_class(k, i - m)
            assert acc == dual_class(k, i)


def _embed(p: Poly, k: int) -> Poly:
    return Poly(k, [t + (0,) * (k - p.k) for t in p.terms])


def test_truncation_to_fewer_variables():
    # killing the top variables of the k-variable dual class gives the
    # r-variable dual class, so vanishing propagates downward in k
    for k, r in ((4, 3), (5, 3), (5, 4)):
        kill = set(range(r + 1, k + 1))
        for i in range(0, 61):
            reduced = reduce_mod_vars(dual_class(k, i), kill)
            assert reduced == _embed(dual_class(r, i), k)


def test_truncation_for_g():
    for k, r in ((4, 3), (5, 4)):
        kill = {1} | set(range(r + 1, k + 1))
        for i in range(0, 61):
            reduced = reduced_dual_class(k, i, kill)
            assert reduced == _embed(reduced_dual_class(r, i, {1}), k)


def test_g_point_values():
    assert g(4, 1).is_zero
    assert g(4, 5).is_zero
    assert g(5, 5) == Poly.variable(5, 5)
    assert g(3, 2) == Poly.variable(3, 2)


def test_g_matches_reduction_of_full_class():
    for k in (3, 4, 5):
        for i in range(0, 61):
            assert g(k, i) == reduce_mod_vars(dual_class(k, i), {1})


def test_reduced_class_with_empty_kill_is_full_class():
    for i in range(0, 20):
        assert reduced_dual_class(3, i, set()) == dual_class(3, i)


def test_scan_zero_sets():
    assert scan_vanishing(3, {1}, 2, 100).zero_degrees == (5, 13, 29, 61)
    assert scan_vanishing(4, {1}, 2, 100).zero_degrees == (5, 13, 29, 61)
    assert scan_vanishing(5, {1}, 2, 100).zero_degrees == ()
    assert scan_vanishing(6, {1}, 2, 100).zero_degrees == ()


def test_scan_from_one_includes_trivial_zero():
    assert scan_vanishing(3, {1}, 1, 10).zero_degrees == (1, 5)


def test_scan_values_z12():
    scan = scan_vanishing(4, {1, 2, 3}, 12, 12, keep_values=True)
    assert 12 not in scan.zero_degrees
    assert scan.values[12] == Poly.parse(4, "w4^3")


def test_scan_validates_range_and_kill():
    with pytest.raises(ValueError):
        scan_vanishing(3, {1}, 5, 4)
    with pytest.raises(ValueError):
        scan_vanishing(3, {4}, 0, 4)


def test_dual_class_mod_w1_vanishes_only_at_pow2_minus_3():
    assert not reduce_mod_vars(dual_class(3, 8), {1}).is_zero
    assert reduce_mod_vars(dual_class(3, 13), {1}).is_zero


def test_z12_from_the_two_generator_combination():
    g10 = g(4, 10)
    g12 = g(4, 12)
    combo = Poly.variable(4, 2) * g10 + g12
    assert reduce_mod_vars(combo, {2, 3}) == Poly.parse(4, "w4^3")


def test_z_closed_form_small_t():
    for t in (4, 5, 6):
        i = 2**t - 4
        want = Poly.monomial(4, (0, 0, 0, 2 ** (t - 2) - 1))
        assert reduced_dual_class(4, i, {1, 2, 3}) == want


def test_h_two_term_recursion():
    # reductions of the k=5 dual classes mod w1, w2, w3, at i = 2^t - 3
    needed = set()
    for t in range(4, 9):
        needed.update({2**t - 3, 2 ** (t - 1) - 3, 3 * 2 ** (t - 3) - 3})
    h = reduced_dual_classes(5, {1, 2, 3}, needed)
    w4 = Poly.variable(5, 4)
    w5 = Poly.variable(5, 5)
    for t in range(4, 9):
        e = 2 ** (t - 3)
        lhs = h[2**t - 3]
        rhs = w4**e * h[2 ** (t - 1) - 3] + w5**e * h[3 * 2 ** (t - 3) - 3]
        assert lhs == rhs
        assert not lhs.is_zero


def test_iterated_recurrence_examples():
    assert verify_iterated_recurrence(3, 13, 1)
    assert verify_iterated_recurrence(3, 7, 0)
    assert verify_iterated_recurrence(4, 29, 2)


def test_iterated_recurrence_precondition():
    with pytest.raises(ValueError, match="1 \\+ k\\*2\\^s = 7"):
        verify_iterated_recurrence(3, 6, 1)


def test_iterated_recurrence_batch_matches_single():
    cases = [(3, 13, 1), (4, 29, 2), (5, 50, 1), (3, 100, 3)]
    assert verify_iterated_recurrence_batch(cases) == [
        verify_iterated_recurrence(*case) for case in cases
    ]


# -- cache ----------------------------------------------------------------


def test_cache_roundtrip(tmp_path):
    table = DualTable(3)
    table.ensure(12)
    lines = table.dump_lines()
    loaded = DualTable.parse_lines(lines)
    assert loaded is not None
    assert loaded.computed_up_to == 12
    assert all(loaded.entry(i) == table.entry(i) for i in range(13))


def test_cache_version_mismatch_discarded():
    table = DualTable(3)
    table.ensure(5)
    lines = table.dump_lines()
    lines[0] = "orgrass-duals/0"
    assert DualTable.parse_lines(lines) is None


def test_cache_corruption_discarded():
    table = DualTable(3)
    table.ensure(5)
    lines = table.dump_lines()
    lines[4] = "2\tw1^3"  # wrong degree for entry 2
    assert DualTable.parse_lines(lines) is None


def test_cache_save_load_files(tmp_path, monkeypatch):
    monkeypatch.setitem(duals._TABLES, 2, DualTable(2))
    duals.dual_table(2).ensure(9)
    path = duals.save_cache(2, str(tmp_path))
    assert os.path.exists(path)
    with open(path) as fh:
        assert fh.readline().strip() == duals.CACHE_FORMAT
    # a fresh process table picks the disk copy up
    monkeypatch.setitem(duals._TABLES, 2, DualTable(2))
    assert duals.load_cache(2, str(tmp_path)) == 9
    assert duals.dual_table(2).computed_up_to == 9
    assert not os.path.exists(os.path.join(str(tmp_path), ".lock"))


def test_cache_default_dir_env(monkeypatch, tmp_path):
    monkeypatch.setenv(duals.CACHE_ENV, str(tmp_path / "subdir"))
    assert duals.default_cache_dir() == str(tmp_path / "subdir")
