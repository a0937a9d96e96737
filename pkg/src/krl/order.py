"""Finite complete lattices with two interchangeable backends.

Elements are small integers indexing a carrier.  The explicit backend
stores the full order relation as bitmask rows.  The powerset backend
represents subsets of a base set as bitmasks ordered by *reverse*
inclusion, so arbitrary meets are bitwise unions and are never found by
scanning lower bounds.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import LatticeError
from .report import Report


def bits(mask: int):
    """Yield the positions of the set bits of ``mask``, low to high."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class FiniteLattice:
    """Interface shared by the explicit and powerset backends."""

    size: int

    def leq(self, a: int, b: int) -> bool:
        raise NotImplementedError

    def meet(self, subset) -> int:
        raise NotImplementedError

    def join(self, subset) -> int:
        raise NotImplementedError

    def meet2(self, a: int, b: int) -> int:
        return self.meet((a, b))

    def join2(self, a: int, b: int) -> int:
        return self.join((a, b))

    @property
    def top(self) -> int:
        return self.meet(())

    @property
    def bottom(self) -> int:
        return self.join(())

    def elements(self) -> range:
        return range(self.size)

    def name(self, a: int) -> str:
        raise NotImplementedError

    def name_set(self, subset) -> str:
        return "{" + ", ".join(sorted(self.name(a) for a in subset)) + "}"


class ExplicitLattice(FiniteLattice):
    """A lattice given by its full order relation.

    ``up[a]`` is the bitmask of elements above ``a`` (inclusive);
    ``down[b]`` the mask of elements below ``b``.  Meets and joins scan
    the shared bound masks for their extremum, with binary results
    cached.
    """

    def __init__(self, names, up_masks):
        self.names = tuple(names)
        self.up = tuple(up_masks)
        self.size = len(self.names)
        self._full = (1 << self.size) - 1
        down = [0] * self.size
        for a in range(self.size):
            for b in bits(self.up[a]):
                down[b] |= 1 << a
        self.down = tuple(down)
        self._meet2: dict[tuple[int, int], int] = {}
        self._join2: dict[tuple[int, int], int] = {}
        self._top: int | None = None
        self._bottom: int | None = None

    @classmethod
    def from_pairs(cls, names, pairs) -> "ExplicitLattice":
        """Build from a list of (a, b) pairs meaning a <= b; reflexive pairs implied."""
        n = len(names)
        up = [1 << a for a in range(n)]
        for a, b in pairs:
            up[a] |= 1 << b
        return cls(names, up)

    @classmethod
    def from_leq(cls, names, leq_fn) -> "ExplicitLattice":
        n = len(names)
        up = [sum(1 << b for b in range(n) if leq_fn(a, b)) for a in range(n)]
        return cls(names, up)

    @classmethod
    def chain(cls, n: int) -> "ExplicitLattice":
        names = [f"e{i}" for i in range(n)]
        return cls.from_leq(names, lambda a, b: a <= b)

    def leq(self, a: int, b: int) -> bool:
        return bool(self.up[a] >> b & 1)

    def pairs(self):
        """All (a, b) with a <= b and a != b, sorted."""
        return sorted(
            (a, b) for a in range(self.size) for b in bits(self.up[a]) if a != b
        )

    def _greatest(self, mask: int) -> int | None:
        # greatest element of the mask, if the mask has one
        for m in bits(mask):
            if mask & ~self.down[m] == 0:
                return m
        return None

    def _least(self, mask: int) -> int | None:
        for m in bits(mask):
            if mask & ~self.up[m] == 0:
                return m
        return None

    def meet(self, subset) -> int:
        subset = tuple(subset)
        if not subset:
            if self._top is None:
                top = self._greatest(self._full)
                if top is None:
                    raise LatticeError("no top element")
                self._top = top
            return self._top
        acc = subset[0]
        for c in subset[1:]:
            acc = self._binary_meet(acc, c)
        return acc

    def _binary_meet(self, a: int, b: int) -> int:
        key = (a, b) if a <= b else (b, a)
        got = self._meet2.get(key)
        if got is None:
            got = self._greatest(self.down[a] & self.down[b])
            if got is None:
                raise LatticeError(
                    f"elements {self.names[a]}, {self.names[b]} have no meet"
                )
            self._meet2[key] = got
        return got

    def join(self, subset) -> int:
        subset = tuple(subset)
        if not subset:
            if self._bottom is None:
                bottom = self._least(self._full)
                if bottom is None:
                    raise LatticeError("no bottom element")
                self._bottom = bottom
            return self._bottom
        acc = subset[0]
        for c in subset[1:]:
            acc = self._binary_join(acc, c)
        return acc

    def _binary_join(self, a: int, b: int) -> int:
        key = (a, b) if a <= b else (b, a)
        got = self._join2.get(key)
        if got is None:
            # least upper bound computed as the least common upper bound
            got = self._least(self.up[a] & self.up[b])
            if got is None:
                raise LatticeError(
                    f"elements {self.names[a]}, {self.names[b]} have no join"
                )
            self._join2[key] = got
        return got

    def name(self, a: int) -> str:
        return self.names[a]

    def index_of(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise LatticeError(f"no element named '{name}'") from None

    def __eq__(self, other):
        return (isinstance(other, ExplicitLattice)
                and self.names == other.names and self.up == other.up)

    def __hash__(self):
        return hash((self.names, self.up))


class PowersetLattice(FiniteLattice):
    """Subsets of a base set under reverse inclusion.

    Elements are bitmasks over the base.  The order puts smaller sets on
    top: P <= Q exactly when Q is contained in P, so the empty set is
    the top element and the full base is the bottom.
    """

    def __init__(self, base_names):
        self.base_names = tuple(base_names)
        self.base_size = len(self.base_names)
        self.size = 1 << self.base_size
        self._full = self.size - 1

    def leq(self, a: int, b: int) -> bool:
        return b & a == b

    def meet(self, subset) -> int:
        acc = 0
        for m in subset:
            acc |= m
        return acc

    def join(self, subset) -> int:
        acc = self._full
        for m in subset:
            acc &= m
        return acc

    def meet2(self, a: int, b: int) -> int:
        return a | b

    def join2(self, a: int, b: int) -> int:
        return a & b

    @property
    def top(self) -> int:
        return 0

    @property
    def bottom(self) -> int:
        return self._full

    def name(self, a: int) -> str:
        return "{" + " ".join(self.base_names[i] for i in bits(a)) + "}"

    def index_of(self, name: str) -> int:
        text = name.strip()
        if not (text.startswith("{") and text.endswith("}")):
            raise LatticeError(f"'{name}' is not a subset name")
        mask = 0
        for part in text[1:-1].replace(",", " ").split():
            try:
                mask |= 1 << self.base_names.index(part)
            except ValueError:
                raise LatticeError(f"unknown base element '{part}' in '{name}'") from None
        return mask

    def __eq__(self, other):
        return isinstance(other, PowersetLattice) and self.base_names == other.base_names

    def __hash__(self):
        return hash(self.base_names)


@dataclass(frozen=True)
class MonotoneMap:
    """A table-backed map between lattices, checked for monotonicity."""

    source: FiniteLattice
    target: FiniteLattice
    table: tuple[int, ...]

    def __call__(self, a: int) -> int:
        return self.table[a]

    def validate(self) -> Report:
        rep = Report("monotone-map")
        witness = None
        for a in self.source.elements():
            for b in self.source.elements():
                if self.source.leq(a, b) and not self.target.leq(self.table[a], self.table[b]):
                    witness = f"({self.source.name(a)}, {self.source.name(b)})"
                    break
            if witness:
                break
        rep.check("map.monotone", witness is None, witness)
        return rep


def subset_meets(lattice: FiniteLattice, values) -> list[int]:
    """meets[m] = meet of {values[i] : bit i of m}, for every bitmask m.

    Dynamic programming over the subset lattice; the empty mask gives the
    top element.
    """
    n = len(values)
    meets = [0] * (1 << n)
    meets[0] = lattice.top
    for m in range(1, 1 << n):
        low = m & -m
        i = low.bit_length() - 1
        meets[m] = values[i] if m == low else lattice.meet2(meets[m ^ low], values[i])
    return meets


def upward_closure(lattice: FiniteLattice, subset) -> frozenset:
    """All elements above some member of ``subset``."""
    out = set()
    for a in subset:
        for b in lattice.elements():
            if lattice.leq(a, b):
                out.add(b)
    return frozenset(out)


def validate_lattice(lattice: FiniteLattice) -> Report:
    """Check the order axioms and completeness, with witnesses.

    Powerset backends satisfy everything by construction; the same
    clauses are still emitted so reports stay uniform.
    """
    rep = Report("lattice")
    if isinstance(lattice, PowersetLattice):
        for clause in ("order.reflexive", "order.antisymmetric", "order.transitive",
                       "order.complete"):
            rep.check(clause, True)
        return rep

    nm = lattice.name
    witness = next((nm(a) for a in lattice.elements() if not lattice.leq(a, a)), None)
    rep.check("order.reflexive", witness is None, witness)

    witness = None
    for a in lattice.elements():
        for b in lattice.elements():
            if a != b and lattice.leq(a, b) and lattice.leq(b, a):
                witness = f"({nm(a)}, {nm(b)})"
                break
        if witness:
            break
    rep.check("order.antisymmetric", witness is None, witness)

    witness = None
    for a in lattice.elements():
        for b in lattice.elements():
            if not lattice.leq(a, b):
                continue
            for c in lattice.elements():
                if lattice.leq(b, c) and not lattice.leq(a, c):
                    witness = f"({nm(a)}, {nm(b)}, {nm(c)})"
                    break
            if witness:
                break
        if witness:
            break
    rep.check("order.transitive", witness is None, witness)

    # completeness: all binary meets plus a greatest element suffice on a
    # finite carrier (the empty meet is the top, folds give the rest)
    witness = None
    for a in lattice.elements():
        for b in range(a + 1, lattice.size):
            if lattice._greatest(lattice.down[a] & lattice.down[b]) is None:
                witness = lattice.name_set((a, b))
                break
        if witness:
            break
    if witness is None and lattice._greatest(lattice._full) is None:
        witness = "{} (no top element)"
    rep.check("order.complete", witness is None, witness)
    return rep
