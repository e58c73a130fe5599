"""Causal order construction, cones, spacelike relations, dissections.

Expected values for the derived cases were first computed with the
brute-force oracles at the bottom of this file and then frozen inline.
"""
from __future__ import annotations

import random

import pytest

from screenoff.order import (
    CausalSite,
    NotSpacelikeError,
    OrderError,
    RegionError,
    iter_bits,
    submasks,
)


# -- helpers ---------------------------------------------------------------


def chain(n: int) -> CausalSite:
    """e0 < e1 < ... < e(n-1), all binary."""
    sites = [(f"e{i}", 2) for i in range(n)]
    rels = [(f"e{i}", f"e{i+1}") for i in range(n - 1)]
    return CausalSite(sites, rels)


def antichain(n: int) -> CausalSite:
    return CausalSite([(f"e{i}", 2) for i in range(n)])


def diamond() -> CausalSite:
    """o below l and r, both below t."""
    return CausalSite(
        [("o", 2), ("l", 2), ("r", 2), ("t", 2)],
        [("o", "l"), ("o", "r"), ("l", "t"), ("r", "t")],
    )


def coin_site() -> CausalSite:
    """Choice element strictly below the two outcome elements."""
    return CausalSite(
        [("c", 2), ("a_s", 2), ("b_s", 2)],
        [("c", "a_s"), ("c", "b_s")],
    )


def oracle_past(site: CausalSite, r: int) -> int:
    """Element-by-element past computation straight off the relation."""
    out = 0
    for y in range(site.n):
        if any(site.leq(y, x) for x in iter_bits(r)):
            out |= 1 << y
    return out


# -- construction ----------------------------------------------------------


class TestConstruction:
    def test_transitive_closure(self):
        s = chain(3)
        assert s.leq("e0", "e2")
        assert not s.leq("e2", "e0")

    def test_reflexive(self):
        s = antichain(2)
        assert s.leq("e0", "e0")

    def test_cycle_rejected(self):
        with pytest.raises(OrderError):
            CausalSite([("a", 2), ("b", 2)], [("a", "b"), ("b", "a")])

    def test_self_loop_allowed(self):
        # a <= a is just reflexivity, not a cycle
        s = CausalSite([("a", 2)], [("a", "a")])
        assert s.leq("a", "a")

    def test_duplicate_id_rejected(self):
        with pytest.raises(OrderError):
            CausalSite([("a", 2), ("a", 2)])

    def test_empty_rejected(self):
        with pytest.raises(OrderError):
            CausalSite([])

    def test_bad_alphabet(self):
        with pytest.raises(OrderError):
            CausalSite([("a", 0)])

    def test_unknown_relation_element(self):
        with pytest.raises(OrderError):
            CausalSite([("a", 2)], [("a", "zz")])

    def test_region_roundtrip(self):
        s = coin_site()
        r = s.region(["c", "b_s"])
        assert s.region_ids(r) == ("c", "b_s")

    def test_region_mask_validated(self):
        s = antichain(2)
        with pytest.raises(RegionError):
            s.past(0b100)


# -- cones -----------------------------------------------------------------


class TestCones:
    def test_past_of_top_in_chain(self):
        s = chain(3)
        assert s.past(s.region(["e2"])) == 0b111

    def test_past_is_inclusive(self):
        s = chain(2)
        assert s.past(s.region(["e0"])) == 0b01

    def test_future_of_root(self):
        s = chain(3)
        assert s.future(s.region(["e0"])) == 0b111

    def test_past_of_empty(self):
        assert antichain(3).past(0) == 0

    def test_past_matches_oracle_on_random_sites(self):
        rng = random.Random(7)
        for _ in range(60):
            n = rng.randint(1, 8)
            sites = [(f"e{i}", 2) for i in range(n)]
            rels = [
                (f"e{i}", f"e{j}")
                for i in range(n)
                for j in range(i + 1, n)
                if rng.random() < 0.4
            ]
            s = CausalSite(sites, rels)
            for _ in range(5):
                r = rng.randrange(1 << n)
                assert s.past(r) == oracle_past(s, r)
                # duality between the cones
                assert s.future(r) == sum(
                    1 << y for y in range(n) if any(s.leq(x, y) for x in iter_bits(r))
                )

    def test_closure_is_a_partial_order(self):
        rng = random.Random(11)
        for _ in range(40):
            n = rng.randint(1, 8)
            rels = [
                (f"e{i}", f"e{j}")
                for i in range(n)
                for j in range(i + 1, n)
                if rng.random() < 0.5
            ]
            s = CausalSite([(f"e{i}", 2) for i in range(n)], rels)
            for i in range(n):
                assert s.leq(i, i)
                for j in range(n):
                    if s.leq(i, j) and s.leq(j, i):
                        assert i == j
                    for k in range(n):
                        if s.leq(i, j) and s.leq(j, k):
                            assert s.leq(i, k)


# -- spacelike, pasts of pairs ---------------------------------------------


class TestSpacelike:
    def test_chain_not_spacelike(self):
        s = chain(2)
        assert not s.spacelike(0b01, 0b10)

    def test_antichain_spacelike(self):
        s = antichain(2)
        assert s.spacelike(0b01, 0b10)

    def test_empty_region_spacelike_to_all(self):
        s = chain(3)
        for r in range(8):
            assert s.spacelike(0, r)
            assert s.spacelike(r, 0)

    def test_symmetric(self):
        s = diamond()
        for x in range(16):
            for y in range(16):
                assert s.spacelike(x, y) == s.spacelike(y, x)

    def test_mutual_past_coin(self):
        # both outcome elements see exactly the choice element
        s = coin_site()
        a = s.region(["a_s"])
        b = s.region(["b_s"])
        assert s.mutual_past(a, b) == s.region(["c"])

    def test_mutual_past_disjoint_roots(self):
        # o < l and p < lp, nothing shared
        s = CausalSite(
            [("o", 2), ("p", 2), ("l", 2), ("lp", 2)],
            [("o", "l"), ("p", "lp")],
        )
        assert s.mutual_past(s.region(["l"]), s.region(["lp"])) == 0

    def test_joint_past_private_roots(self):
        s = CausalSite(
            [("o", 2), ("p", 2), ("l", 2), ("lp", 2)],
            [("o", "l"), ("p", "lp")],
        )
        jp = s.joint_past(s.region(["l"]), s.region(["lp"]))
        assert jp == s.region(["o", "p"])

    def test_joint_past_excludes_the_regions(self):
        s = coin_site()
        a = s.region(["a_s"])
        b = s.region(["b_s"])
        assert s.joint_past(a, b) & (a | b) == 0
        assert s.joint_past(a, b) == s.region(["c"])

    def test_mutual_inside_joint_plus_regions(self):
        rng = random.Random(3)
        for _ in range(40):
            n = rng.randint(2, 7)
            rels = [
                (f"e{i}", f"e{j}")
                for i in range(n)
                for j in range(i + 1, n)
                if rng.random() < 0.4
            ]
            s = CausalSite([(f"e{i}", 2) for i in range(n)], rels)
            a = rng.randrange(1, 1 << n)
            b = rng.randrange(1, 1 << n)
            assert s.mutual_past(a, b) & ~(s.joint_past(a, b) | a | b) == 0

    def test_multi_joint_past_common_root(self):
        s = CausalSite(
            [("o", 2), ("x", 2), ("y", 2), ("z", 2)],
            [("o", "x"), ("o", "y"), ("o", "z")],
        )
        regions = [s.region(["x"]), s.region(["y"]), s.region(["z"])]
        assert s.multi_joint_past(regions) == s.region(["o"])

    def test_multi_joint_past_empty_list(self):
        with pytest.raises(RegionError):
            antichain(2).multi_joint_past([])

    def test_initial_elements(self):
        assert chain(3).initial_elements() == 0b001
        assert antichain(3).initial_elements() == 0b111
        assert diamond().initial_elements() == 0b0001


# -- dissections -----------------------------------------------------------


class TestDissections:
    def test_diamond_single_dissection(self):
        s = diamond()
        l, r = s.region(["l"]), s.region(["r"])
        out = s.enumerate_dissections(l, r)
        assert out == [(s.region(["o"]), (l, r))]

    def test_antichain_empty_dissection(self):
        s = antichain(2)
        out = s.enumerate_dissections(0b01, 0b10)
        assert out == [(0, (0b01, 0b10))]

    def test_chain_pair_errors(self):
        s = chain(2)
        with pytest.raises(NotSpacelikeError):
            s.enumerate_dissections(0b01, 0b10)

    def test_empty_region_errors(self):
        s = antichain(2)
        with pytest.raises(NotSpacelikeError):
            s.enumerate_dissections(0, 0b10)

    def test_deep_past_two_choices(self):
        # r < i < l and r < lp: removing {r} or {r, i} splits l from lp
        s = CausalSite(
            [("r", 2), ("i", 2), ("l", 2), ("lp", 2)],
            [("r", "i"), ("i", "l"), ("r", "lp")],
        )
        out = s.enumerate_dissections(s.region(["l"]), s.region(["lp"]))
        cuts = [p for p, _ in out]
        assert cuts == [s.region(["r"]), s.region(["r", "i"])]
        # the intermediate element alone does not cut: r connects both sides
        assert s.region(["i"]) not in cuts

    def test_always_at_least_one_dissection(self):
        rng = random.Random(19)
        found_pair = 0
        for _ in range(60):
            n = rng.randint(2, 6)
            rels = [
                (f"e{i}", f"e{j}")
                for i in range(n)
                for j in range(i + 1, n)
                if rng.random() < 0.4
            ]
            s = CausalSite([(f"e{i}", 2) for i in range(n)], rels)
            for a in range(1, 1 << n):
                b = (~a) & s.full_mask
                for bsub in submasks(b):
                    if bsub and s.spacelike(a, bsub):
                        found_pair += 1
                        assert s.enumerate_dissections(a, bsub)
                        break
                break
        assert found_pair > 10
