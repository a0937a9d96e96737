"""Small-model enumeration cross-checked against raw table filtering."""

from itertools import product

from krl.enumerators import (enumerate_alexandroff, enumerate_implications,
                             enumerate_interior_tables, enumerate_interiors,
                             enumerate_lattices, monotone_maps)
from krl.interior import is_alexandroff
from krl.order import ExplicitLattice, PowersetLattice, validate_lattice


def brute_force_implications(lattice):
    n = lattice.size
    found = []
    for flat in product(range(n), repeat=n * n):
        table = tuple(tuple(flat[a * n:(a + 1) * n]) for a in range(n))
        good = True
        for a in range(n):
            for a2 in range(n):
                if not lattice.leq(a2, a):
                    continue
                for b in range(n):
                    for b2 in range(n):
                        if lattice.leq(b, b2) and not lattice.leq(
                                table[a][b], table[a2][b2]):
                            good = False
                            break
                    if not good:
                        break
                if not good:
                    break
            if not good:
                break
        if good:
            found.append(table)
    return found


def test_implication_enumeration_matches_brute_force():
    for n in (1, 2, 3):
        chain = ExplicitLattice.chain(n)
        fast = sorted(enumerate_implications(chain))
        slow = sorted(brute_force_implications(chain))
        assert fast == slow


def test_lattice_enumeration_counts_and_validity():
    counts = {}
    for n in (1, 2, 3, 4, 5):
        lattices = list(enumerate_lattices(n))
        counts[n] = len(lattices)
        for lattice in lattices:
            assert validate_lattice(lattice).ok
    assert counts[1] == 1 and counts[2] == 1 and counts[3] == 1
    # the two shapes on four points: the chain and the diamond
    assert counts[4] == 2
    assert counts[5] == 7


def test_lattice_enumeration_reaches_both_four_element_shapes():
    shapes = set()
    for lattice in enumerate_lattices(4):
        comparable = sum(lattice.leq(a, b)
                         for a in range(4) for b in range(4) if a != b)
        shapes.add(comparable)
    assert shapes == {6, 5}  # chain has 6 strict pairs, diamond 5


def test_interior_enumerations_agree():
    for lattice in list(enumerate_lattices(3)) + list(enumerate_lattices(4)):
        via_opens = sorted(op.table for op in enumerate_interiors(lattice))
        via_tables = sorted(op.table for op in enumerate_interior_tables(lattice))
        assert via_opens == via_tables


def test_alexandroff_enumeration_matches_direct_test():
    lattice = PowersetLattice(("a", "b"))
    alex = {op.table for op in enumerate_alexandroff(lattice)}
    for op in enumerate_interiors(lattice):
        assert (op.table in alex) == is_alexandroff(op)[0]


def test_monotone_maps_count_on_chains():
    two, three = ExplicitLattice.chain(2), ExplicitLattice.chain(3)
    assert len(list(monotone_maps(two, two))) == 3
    assert len(list(monotone_maps(three, three))) == 10
    assert len(list(monotone_maps(two, three))) == 6
