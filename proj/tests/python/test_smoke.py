"""End-to-end smoke tests for the klazar Python module."""

import math

import pytest

import klazar


def test_parse_standardize_format():
    p = klazar.parse("1635/24")
    assert str(p) == "1356/24"
    assert p.n == 6
    assert klazar.standardize([[1, 6, 3, 5], [2, 4]]) == p
    with pytest.raises(klazar.DomainError):
        klazar.standardize([[1, 2], [2, 3]])


def test_containment_fixtures():
    host = klazar.parse("136/5/27")
    assert klazar.contains(host, klazar.parse("14/23")) == [2, 3, 6, 7]
    assert klazar.contains(host, klazar.parse("1/234")) is None
    assert klazar.restrict(host, [2, 3, 6, 7]) == klazar.parse("14/23")


def test_rank_layered_stats():
    assert klazar.rank(klazar.parse("1356/24")) == 4
    assert klazar.is_layered(klazar.parse("12/3456/789"))
    assert not klazar.is_layered(klazar.parse("13/2456/789"))
    p = klazar.parse("1267/345")
    assert klazar.thickness(p)["value"] == 3
    pm = klazar.permutability(p)
    assert pm["value"] == 4
    assert pm["split"] == [[1], [2, 3], [4], [5, 6], [7]]
    assert klazar.thickness_oracle(p) == 3


def test_correspondents_and_parallel():
    assert str(klazar.build_correspondent([[1, 2]])) == "13/24"
    assert klazar.as_tuple(klazar.parse("13/24")) == [[1, 2]]
    assert klazar.as_tuple(klazar.parse("1267/345")) is None
    assert klazar.parallel_contains([[1, 2], [2, 1]], [[1, 2], [2, 1]]) == [1, 2]
    assert klazar.parallel_contains([[2, 1]], [[1, 2]]) is None


def test_split_decompose():
    d = klazar.split_decompose(klazar.parse("1246/35/78"))
    assert str(d["left"]) == "124/3"
    assert str(d["right"]) == "1/2/34"
    assert d["matching"] == [2, 1]


def test_counting():
    assert klazar.count_avoiders(klazar.parse("12"), 9)["count"] == 1
    assert klazar.count_avoiders(klazar.parse("13/24"), 8)["count"] == 1430
    # oversized pattern counts everything: Bell(6) = 203
    assert klazar.count_avoiders(klazar.parse("1234567"), 6)["count"] == 203
    assert klazar.count_avoiders(klazar.parse("13/24"), 6, m=3)["count"] > 0
    with pytest.raises(klazar.GuardError):
        klazar.count_avoiders(klazar.parse("13/24"), 40)


def test_parallel_count_matches_python_weak_order_oracle():
    from itertools import permutations

    def inversions(perm):
        return {
            (i, j)
            for i in range(len(perm))
            for j in range(i + 1, len(perm))
            if perm[i] > perm[j]
        }

    for n in (2, 3, 4):
        expected = sum(
            1
            for a in permutations(range(1, n + 1))
            for b in permutations(range(1, n + 1))
            if inversions(b) <= inversions(a)
        )
        got = klazar.count_parallel_avoiders([[1, 2], [2, 1]], n)["count"]
        assert got == expected


def test_construction_and_exponents():
    family = klazar.lowerbound_construction(klazar.parse("123"), 6)
    assert len(family) == 6
    assert all(klazar.contains(p, klazar.parse("123")) is None for p in family)
    table = klazar.exponent_table(klazar.parse("13/24"), 6)
    assert table["pm"] == 1
    ratios = [row["ratio"] for row in table["rows"]]
    assert ratios == sorted(ratios, reverse=True)


def test_strip_singletons():
    assert klazar.strip_singletons(klazar.parse("136/5/27")) == klazar.parse("134/25")
    assert klazar.strip_singletons(klazar.parse("1/2/3")).n == 0


def test_matrices():
    ident = klazar.build_perm_matrix([[1, 2, 3]])
    anti = klazar.build_perm_matrix([[2, 1]])
    assert ident["ones"] == [[1, 1], [2, 2], [3, 3]]
    assert not klazar.matrix_contains(ident, anti)
    assert klazar.matrix_contains(ident, klazar.build_perm_matrix([[1, 2]]))
    assert klazar.max_ones_avoiding(klazar.build_perm_matrix([[1, 2]]), 2) == 3
    # 4 of the 16 two-by-two matrices contain the identity (both diagonal
    # cells set), so 12 avoid it
    assert klazar.count_avoiding_matrices(klazar.build_perm_matrix([[1, 2]]), 2) == 12


def test_monte_carlo():
    cloud = klazar.sample_points(4, 1, 42)
    assert cloud == klazar.sample_points(4, 1, 42)
    assert len(cloud["points"]) == 4 and len(cloud["points"][0]) == 2
    est = klazar.estimate_qk(3, 1, 20000, 7)
    assert abs(est["estimate"] - 1 / 6) < 4 * est["stderr"]
    report = klazar.run_mc(4, 2, 500, 11, r=4)
    assert report["violations"] == 0
    assert report["seed"] == 11
    # constructed converse gap: two comparable points in one box
    tight = {"k": 1, "points": [[0.10, 0.11], [0.15, 0.16]]}
    assert klazar.grid_implication_check(tight, [[1, 2]], 2) == "converse_gap"
    assert not klazar.antichain_check(tight)
    grid = klazar.grid_matrix(tight, 2)
    assert grid["ones"] == [[1, 1]]


def test_engine_version_exposed():
    assert isinstance(klazar.engine_version, str) and klazar.engine_version
