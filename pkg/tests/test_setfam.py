import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from matchless import (
    Family,
    FamilyFormatError,
    Params,
    SubsetWord,
    deficiency,
    layer,
    layer_at_least,
    layer_at_most,
    parse_family,
    restrict,
    serialize_family,
)
from conftest import random_family


class TestSubsetWord:
    def test_elements_roundtrip(self):
        w = SubsetWord.from_elements(6, [5, 1, 3])
        assert w.elements() == (1, 3, 5)
        assert w.size == 3
        assert w.bits == 0b10101

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            SubsetWord.from_elements(4, [5])
        with pytest.raises(ValueError):
            SubsetWord(4, 1 << 4)
        with pytest.raises(ValueError):
            SubsetWord(0, 0)
        with pytest.raises(ValueError):
            SubsetWord(1025, 0)

    def test_predicates(self):
        a = SubsetWord.from_elements(5, [1, 3])
        b = SubsetWord.from_elements(5, [2, 4])
        assert a.isdisjoint(b)
        assert a.issubset(SubsetWord.from_elements(5, [1, 2, 3]))
        assert a.contains(3) and not a.contains(2)


class TestFamily:
    def test_canonical_order(self):
        fam = Family.from_sets(3, [[2], [1], [1, 2]])
        assert [w.elements() for w in fam] == [(1,), (2,), (1, 2)]

    def test_deduplication(self):
        fam = Family.of(3, [0b01, 0b01, 0b10])
        assert len(fam) == 2

    def test_mixed_ground_set_rejected(self):
        with pytest.raises(ValueError):
            Family(3, (SubsetWord(4, 1),))

    def test_unsorted_members_rejected(self):
        a = SubsetWord(3, 0b11)
        b = SubsetWord(3, 0b01)
        with pytest.raises(ValueError):
            Family(3, (a, b))


class TestFormat:
    def test_parse_example(self):
        fam = parse_family("FAMILY v1\nn=3\n-\n1,2\n")
        assert fam == Family.from_sets(3, [[], [1, 2]])

    def test_duplicate_rejected(self):
        with pytest.raises(FamilyFormatError) as exc:
            parse_family("FAMILY v1\nn=2\n1\n1\n")
        assert exc.value.line == 4

    def test_serialize_examples(self):
        assert serialize_family(Family.from_sets(3, [[], [1, 2]])) == "FAMILY v1\nn=3\n-\n1,2\n"
        assert serialize_family(Family(5)) == "FAMILY v1\nn=5\n"
        assert serialize_family(Family.from_sets(2, [[2], [1]])) == "FAMILY v1\nn=2\n1\n2\n"

    def test_header_errors(self):
        with pytest.raises(FamilyFormatError) as exc:
            parse_family("FAMILY v2\nn=3\n")
        assert exc.value.line == 1
        with pytest.raises(FamilyFormatError) as exc:
            parse_family("FAMILY v1\nn=03\n")
        assert exc.value.line == 2

    def test_element_errors(self):
        with pytest.raises(FamilyFormatError) as exc:
            parse_family("FAMILY v1\nn=3\n1,4\n")
        assert exc.value.line == 3
        with pytest.raises(FamilyFormatError):
            parse_family("FAMILY v1\nn=3\n2,1\n")
        with pytest.raises(FamilyFormatError):
            parse_family("FAMILY v1\nn=3\n1,1\n")
        with pytest.raises(FamilyFormatError):
            parse_family("FAMILY v1\nn=3\n1, 2\n")

    def test_input_order_is_free(self):
        fam = parse_family("FAMILY v1\nn=3\n1,2\n-\n2\n")
        assert [w.elements() for w in fam] == [(), (2,), (1, 2)]

    def test_roundtrip_random(self):
        rng = random.Random(20240811)
        for _ in range(1000):
            n = rng.randint(1, 20)
            fam = random_family(rng, n, min(200, 1 << n))
            assert parse_family(serialize_family(fam)) == fam


class TestLayers:
    def test_full_lattice_layer(self):
        full = Family.of(2, range(4))
        assert [w.elements() for w in layer(full, 1)] == [(1,), (2,)]
        assert [w.elements() for w in layer_at_most(full, 1)] == [(), (1,), (2,)]
        assert len(layer(Family.from_sets(2, [[1, 2]]), 1)) == 0

    def test_layer_range_checked(self):
        fam = Family(3)
        with pytest.raises(ValueError):
            layer(fam, 4)
        with pytest.raises(ValueError):
            deficiency(fam, -1)

    def test_layer_partition(self, rng):
        for _ in range(50):
            n = rng.randint(1, 10)
            fam = random_family(rng, n, 1 << n)
            assert sum(len(layer(fam, k)) for k in range(n + 1)) == len(fam)

    def test_deficiency_examples(self):
        assert deficiency(Family.of(4, range(16)), 2) == 0
        assert deficiency(Family(4), 2) == 6
        assert deficiency(Family.from_sets(4, [[1, 2]]), 2) == 5

    def test_deficiency_complements_layer(self, rng):
        import math

        for _ in range(50):
            n = rng.randint(1, 10)
            fam = random_family(rng, n, 60)
            for k in range(n + 1):
                assert deficiency(fam, k) + len(layer(fam, k)) == math.comb(n, k)


class TestRestrict:
    def test_examples(self):
        fam = Family.from_sets(3, [[1], [2], [1, 3]])
        window = SubsetWord.from_elements(3, [1, 3])
        assert restrict(fam, window) == Family.from_sets(3, [[1], [1, 3]])
        assert restrict(fam, SubsetWord.from_elements(3, [1, 2, 3])) == fam
        assert restrict(fam, SubsetWord(3, 0)) == Family(3)
        with_empty = Family.from_sets(3, [[], [1]])
        assert restrict(with_empty, SubsetWord(3, 0)) == Family.from_sets(3, [[]])

    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 255), st.integers(0, 255), st.data())
    def test_compose(self, xbits, ybits, data):
        n = 8
        members = data.draw(st.sets(st.integers(0, 255), max_size=25))
        fam = Family.of(n, members)
        x = SubsetWord(n, xbits)
        y = SubsetWord(n, ybits)
        assert restrict(restrict(fam, x), y) == restrict(fam, SubsetWord(n, xbits & ybits))

    def test_window_same_ground_set(self):
        with pytest.raises(ValueError):
            restrict(Family(3), SubsetWord(4, 0))


class TestParams:
    def test_valid(self):
        p = Params.from_msl(1, 4, 2)
        assert (p.n, p.s, p.m, p.l) == (6, 4, 1, 2)

    def test_invalid(self):
        with pytest.raises(ValueError):
            Params(7, 4, 1, 2)
        with pytest.raises(ValueError):
            Params.from_msl(1, 4, 5)
        with pytest.raises(ValueError):
            Params.from_msl(0, 4, 2)
