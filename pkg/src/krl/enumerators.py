"""Exhaustive small-model enumeration.

Lattices are enumerated through order-consistent labelings (the order
relation only ever relates i to j when i <= j as integers), so every
finite lattice shows up after relabeling along a linear extension while
the candidate space stays tiny.  Implications, interior operators, and
candidate morphism tables are filtered from full table spaces, except
that interior operators can also be generated through their open sets,
which is exponentially cheaper on powerset carriers.
"""

from __future__ import annotations

from itertools import product

from .implicative import ImplicativeStructure
from .interior import ClosedPart, InteriorOperator, theta_inv
from .order import ExplicitLattice, FiniteLattice, bits


def enumerate_lattices(n: int):
    """All complete lattices on n order-consistently labeled elements."""
    names = tuple(f"e{i}" for i in range(n))
    strict = [(i, j) for i in range(n) for j in range(i + 1, n)]
    for choice in product((False, True), repeat=len(strict)):
        up = [1 << i for i in range(n)]
        for (i, j), chosen in zip(strict, choice):
            if chosen:
                up[i] |= 1 << j
        # transitivity
        ok = True
        for i in range(n):
            for j in bits(up[i]):
                if up[i] | up[j] != up[i]:
                    ok = False
                    break
            if not ok:
                break
        if not ok:
            continue
        lattice = ExplicitLattice(names, tuple(up))
        if _is_complete(lattice):
            yield lattice


def _is_complete(lattice: ExplicitLattice) -> bool:
    full = (1 << lattice.size) - 1
    if lattice._greatest(full) is None or lattice._least(full) is None:
        return False
    for a in range(lattice.size):
        for b in range(a + 1, lattice.size):
            if lattice._greatest(lattice.down[a] & lattice.down[b]) is None:
                return False
            if lattice._least(lattice.up[a] & lattice.up[b]) is None:
                return False
    return True


def monotone_selfmaps(lattice: FiniteLattice):
    """All monotone tables from the lattice to itself."""
    return monotone_maps(lattice, lattice)


def monotone_maps(src: FiniteLattice, tgt: FiniteLattice):
    n = src.size
    comparable = [(a, b) for a in range(n) for b in range(n)
                  if a != b and src.leq(a, b)]
    for table in product(range(tgt.size), repeat=n):
        if all(tgt.leq(table[a], table[b]) for a, b in comparable):
            yield table


def enumerate_implications(lattice: FiniteLattice):
    """All implication tables that are antitone on the left and monotone
    on the right; meet-commutation is deliberately not imposed."""
    rows = list(monotone_selfmaps(lattice))
    n = lattice.size
    for combo in product(range(len(rows)), repeat=n):
        ok = True
        for a in range(n):
            for a2 in range(n):
                if a != a2 and lattice.leq(a2, a):
                    ra, ra2 = rows[combo[a]], rows[combo[a2]]
                    if not all(lattice.leq(ra[b], ra2[b]) for b in range(n)):
                        ok = False
                        break
            if not ok:
                break
        if ok:
            yield tuple(rows[combo[a]] for a in range(n))


def enumerate_interiors(lattice: FiniteLattice):
    """All interior operators, generated from their open-element sets.

    Open sets are exactly the join-closed subsets, so this enumeration
    is complete and never filters the full table space.
    """
    elems = list(lattice.elements())
    n = len(elems)
    for m in range(1 << n):
        members = frozenset(elems[i] for i in bits(m))
        part = ClosedPart(lattice, members, "P_c")
        if part.validate().ok:
            yield theta_inv(part)


def enumerate_interior_tables(lattice: FiniteLattice):
    """All interior operators by brute-force table filtering; only
    sensible on very small carriers, used to cross-check the open-set
    route."""
    n = lattice.size
    for table in product(range(n), repeat=n):
        if not all(lattice.leq(table[a], a) for a in range(n)):
            continue
        if not all(table[table[a]] == table[a] for a in range(n)):
            continue
        monotone = True
        for a in range(n):
            for b in range(n):
                if lattice.leq(a, b) and not lattice.leq(table[a], table[b]):
                    monotone = False
                    break
            if not monotone:
                break
        if monotone:
            yield InteriorOperator(lattice, table)


def enumerate_alexandroff(lattice: FiniteLattice):
    for op in enumerate_interiors(lattice):
        members = frozenset(op.opens())
        if ClosedPart(lattice, members, "P_c_infty").validate().ok:
            yield op


def structure_from_table(lattice: FiniteLattice, table) -> ImplicativeStructure:
    return ImplicativeStructure(lattice, table)
