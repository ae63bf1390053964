import pytest
from sympy.utilities.iterables import partitions

from errors import InvalidPartition, UnknownLabel
from niporb import (
    DOUBLE_COVER_PAIRS,
    OrbitKind,
    OrbitLabel,
    Partition,
    classical_ambient,
    classical_orbit_dim,
    minimal_partition,
    nilpotent_orbits,
    validate_partition,
    z_dim_from_label,
    z_long_dim,
)
from rootcore import SimpleType, parse_type, simple


def test_partition_parse_and_str():
    d = Partition.parse("3,2^2,1^4")
    assert d.parts == (3, 2, 2, 1, 1, 1, 1)
    assert d.total == 11
    assert str(d) == "[3,2^2,1^4]"
    assert Partition.parse("2^(2), 1^0").parts == (2, 2)


def test_partition_transpose():
    assert Partition((3, 2, 2)).transpose() == Partition((3, 3, 1))
    assert Partition((4,)).transpose() == Partition((1, 1, 1, 1))


@pytest.mark.parametrize("n", range(1, 13))
def test_transpose_is_involution(n):
    for p in partitions(n):
        d = Partition.from_exponents(p.items())
        t = d.transpose()
        assert t.total == n
        assert t.transpose() == d
        assert len(t.parts) == d.parts[0]


def test_partition_rejects_bad_input():
    with pytest.raises(InvalidPartition):
        Partition((1, 2))
    with pytest.raises(InvalidPartition):
        Partition.parse("3,x")
    with pytest.raises(InvalidPartition):
        Partition.from_exponents([(2, -1)])


def test_validate_partition():
    assert validate_partition("so", 7, Partition((3, 2, 2)))
    assert not validate_partition("so", 3, Partition((2, 1)))
    assert validate_partition("sp", 4, Partition((2, 1, 1)))
    assert not validate_partition("sp", 4, Partition((3, 1)))
    assert not validate_partition("sp", 5, Partition((2, 2, 1)))
    assert not validate_partition("sl", 5, Partition((3, 1)))
    with pytest.raises(UnknownLabel):
        validate_partition("su", 3, Partition((3,)))


def test_so7_orbit_inventory():
    orbits = nilpotent_orbits("so", 7)
    assert len(orbits) == 6
    assert set(orbits.values()) == {17, 15, 13, 11, 9, 7}
    assert orbits[Partition((3, 2, 2))] == 11


def test_classical_orbit_dim_rejects_invalid():
    with pytest.raises(InvalidPartition):
        classical_orbit_dim("so", 6, Partition((4, 1, 1)))


@pytest.mark.parametrize("family, n, cone", [
    ("sl", 5, 8),
    ("sp", 8, 8),
    ("so", 9, 12),
])
def test_minimal_orbit_dims(family, n, cone):
    assert classical_orbit_dim(family, n, minimal_partition(family, n)) == cone


CLASSICAL = (
    [SimpleType("A", r) for r in range(1, 13)]
    + [SimpleType("B", r) for r in range(2, 13)]
    + [SimpleType("C", r) for r in range(2, 13)]
    + [SimpleType("D", r) for r in range(3, 13)]
)


@pytest.mark.parametrize("t", CLASSICAL, ids=str)
def test_adjoint_variety_is_minimal_orbit(t):
    family, n = classical_ambient(t)
    assert z_long_dim(t) == classical_orbit_dim(family, n, minimal_partition(family, n)) - 1


def test_classical_ambient():
    assert classical_ambient(SimpleType("B", 3)) == ("so", 7)
    assert classical_ambient(SimpleType("C", 4)) == ("sp", 8)
    with pytest.raises(UnknownLabel):
        classical_ambient(SimpleType("G", 2))


@pytest.mark.parametrize("g, label, dim", [
    ("B3", "partition:3,2^2", 11),
    ("B3", "short", 9),
    ("C3", "short", 9),
    ("F4", "short", 21),
    ("E6", "bc:2A1", 31),
    ("F4", "bc:A1~", 21),
    ("G2+G2", "minmin", 11),
    ("E8", "long", 57),
    ("A5", "long", 9),
])
def test_z_dim_from_label(g, label, dim):
    assert z_dim_from_label(parse_type(g), OrbitLabel.parse(label)) == dim


@pytest.mark.parametrize("g, label", [
    ("E7", "bc:2A1"),
    ("A3", "short"),
    ("E6", "short"),
    ("A1+A1", "long"),
    ("G2+F4", "minmin"),
])
def test_z_dim_unknown_label(g, label):
    with pytest.raises(UnknownLabel):
        z_dim_from_label(parse_type(g), OrbitLabel.parse(label))


def test_orbit_label_parse():
    assert OrbitLabel.parse("long").kind is OrbitKind.LONG
    assert OrbitLabel.parse("bc:~A1").name == "Ã1"
    assert str(OrbitLabel.parse("partition:3,1^4")) == "Z[3,1^4]"
    with pytest.raises(UnknownLabel):
        OrbitLabel.parse("weird")
    with pytest.raises(UnknownLabel):
        OrbitLabel.parse("long:3")


def test_double_cover_pairs():
    assert len(DOUBLE_COVER_PAIRS) == 5
    for entry in DOUBLE_COVER_PAIRS:
        assert set(entry) == {"pair", "condition", "cover"}
    assert {"pair": "(B3, G2)", "condition": "", "cover": "B4"} in DOUBLE_COVER_PAIRS


def test_short_partition_dims_match_simple_formula():
    for r in range(2, 8):
        assert z_dim_from_label(simple(f"C{r}"), OrbitLabel(OrbitKind.SHORT)) == 4 * r - 3
        assert z_dim_from_label(simple(f"B{r}"), OrbitLabel(OrbitKind.SHORT)) == 4 * r - 3


@pytest.mark.parametrize("family, n, parts, valid", [
    ("so", 6, (2, 2, 1, 1), True),
    ("so", 5, (2, 2, 1), True),
    ("so", 4, (2, 1, 1), False),
    ("so", 6, (3, 3), True),
])
def test_so_partition_rule(family, n, parts, valid):
    assert validate_partition(family, n, Partition(parts)) is valid


@pytest.mark.parametrize("l", range(2, 7))
def test_two_by_two_partition_dims(l):
    d = Partition.from_exponents([(2, 2), (1, 2 * l - 4)])
    assert classical_orbit_dim("sl", 2 * l, d) == 8 * l - 8
    assert classical_orbit_dim("sp", 2 * l, d) == 4 * l - 2
    assert z_dim_from_label(parse_type(f"C{l}+C{l}"), OrbitLabel(OrbitKind.MIN_PLUS_MIN)) == 4 * l - 1
