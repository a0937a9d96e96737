"""Implicative structures and algebras.

An implicative structure is a finite complete lattice with an
implication that is antitone on the left, monotone on the right, and
commutes with arbitrary meets in its second argument.  Application is
the left adjoint of implication, the combinators are the usual meets
over element tuples, and a separator picks out the designated truth
values.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import VerificationFailed
from .order import FiniteLattice, bits, subset_meets
from .report import Report


class ImplicativeStructure:
    """A lattice together with an implication map.

    ``imp`` may be a full table (tuple of rows) or any callable; an
    optional closed-form application can be supplied for backends where
    the adjoint has a direct formula (AKS powersets), otherwise the
    defining meet is enumerated and cached.
    """

    def __init__(self, lattice: FiniteLattice, imp, app=None):
        self.lattice = lattice
        if callable(imp):
            self._imp = imp
        else:
            table = tuple(tuple(row) for row in imp)
            self._imp = lambda a, b: table[a][b]
        self._app = app
        self._imp_cache: dict[tuple[int, int], int] = {}
        self._app_cache: dict[tuple[int, int], int] = {}

    def imp(self, a: int, b: int) -> int:
        key = (a, b)
        got = self._imp_cache.get(key)
        if got is None:
            got = self._imp(a, b)
            self._imp_cache[key] = got
        return got

    def application(self, a: int, b: int) -> int:
        key = (a, b)
        got = self._app_cache.get(key)
        if got is None:
            got = self._app(a, b) if self._app else self.application_by_definition(a, b)
            self._app_cache[key] = got
        return got

    def application_by_definition(self, a: int, b: int) -> int:
        """The meet of every c with a <= b -> c, ignoring any closed form."""
        L = self.lattice
        return L.meet([c for c in L.elements() if L.leq(a, self.imp(b, c))])

    def apply_chain(self, *elems: int) -> int:
        """Left-associated application of two or more elements."""
        acc = elems[0]
        for e in elems[1:]:
            acc = self.application(acc, e)
        return acc

    def imp_table(self):
        n = self.lattice.size
        return tuple(tuple(self.imp(a, b) for b in range(n)) for a in range(n))


@dataclass(frozen=True)
class EntailmentWitness:
    realizer: int
    lhs: int
    rhs: int


class ImplicativeAlgebra:
    """An implicative structure with a separator and designated k, s.

    The stored combinators need not be the canonical meets; validation
    only requires them to sit below the respective bounds.
    """

    def __init__(self, structure: ImplicativeStructure, separator, k: int, s: int):
        self.structure = structure
        self.separator = frozenset(separator)
        self.k = k
        self.s = s

    @property
    def lattice(self) -> FiniteLattice:
        return self.structure.lattice

    def imp(self, a: int, b: int) -> int:
        return self.structure.imp(a, b)

    def application(self, a: int, b: int) -> int:
        return self.structure.application(a, b)

    def apply_chain(self, *elems: int) -> int:
        return self.structure.apply_chain(*elems)


def validate_structure(structure: ImplicativeStructure) -> Report:
    """Check the implication axioms: variance and meet-commutation.

    A structure whose implication commutes with nonempty meets only is
    flagged quasi-implicative instead of failing outright.
    """
    L = structure.lattice
    nm = L.name
    rep = Report("implicative-structure")

    witness = None
    for a in L.elements():
        for a2 in L.elements():
            if not L.leq(a2, a):
                continue
            for b in L.elements():
                for b2 in L.elements():
                    if L.leq(b, b2) and not L.leq(structure.imp(a, b), structure.imp(a2, b2)):
                        witness = f"(a'={nm(a2)}, a={nm(a)}, b={nm(b)}, b'={nm(b2)})"
                        break
                if witness:
                    break
            if witness:
                break
        if witness:
            break
    rep.check("imp.variance", witness is None, witness)

    elems = list(L.elements())
    meets = subset_meets(L, elems)
    witness = empty_witness = None
    for a in L.elements():
        imp_row = [structure.imp(a, b) for b in elems]
        imp_meets = subset_meets(L, imp_row)
        for m in range(len(meets)):
            if structure.imp(a, meets[m]) != imp_meets[m]:
                members = L.name_set(elems[i] for i in bits(m))
                w = f"a={nm(a)}, B={members}"
                if m == 0:
                    empty_witness = empty_witness or w
                else:
                    witness = witness or w
        if witness and empty_witness:
            break
    rep.check("imp.meet-commutation", witness is None and empty_witness is None,
              witness or empty_witness)
    rep.flag("quasi-implicative", witness is None and empty_witness is not None,
             f"fails only at B={{}}: {empty_witness}" if empty_witness else None)
    return rep


def check_adjunction(structure: ImplicativeStructure) -> Report:
    """Decide, triple by triple, whether application is left adjoint to
    implication.  The half condition (a <= b -> c implies ab <= c) is
    reported separately because it survives even without
    meet-commutation."""
    L = structure.lattice
    nm = L.name
    rep = Report("adjunction")
    half_witness = full_witness = None
    for a in L.elements():
        for b in L.elements():
            ab = structure.application(a, b)
            for c in L.elements():
                lhs = L.leq(ab, c)
                rhs = L.leq(a, structure.imp(b, c))
                if rhs and not lhs and half_witness is None:
                    half_witness = f"({nm(a)}, {nm(b)}, {nm(c)})"
                if lhs != rhs and full_witness is None:
                    full_witness = f"({nm(a)}, {nm(b)}, {nm(c)})"
    rep.check("adjunction.half", half_witness is None, half_witness)
    rep.check("adjunction.full", full_witness is None, full_witness)
    return rep


def combinator_i(structure: ImplicativeStructure) -> int:
    L = structure.lattice
    return L.meet([structure.imp(a, a) for a in L.elements()])


def combinator_k(structure: ImplicativeStructure) -> int:
    L = structure.lattice
    return L.meet([
        structure.imp(a, structure.imp(b, a))
        for a in L.elements() for b in L.elements()
    ])


def combinator_s(structure: ImplicativeStructure) -> int:
    L = structure.lattice
    acc = L.top
    for a in L.elements():
        for b in L.elements():
            ab = structure.imp(a, b)
            for c in L.elements():
                abc = structure.imp(a, structure.imp(b, c))
                ac = structure.imp(a, c)
                acc = L.meet2(acc, structure.imp(abc, structure.imp(ab, ac)))
    return acc


def combinator_cc(structure: ImplicativeStructure) -> int:
    """The Peirce element, quantified over all pairs a, b."""
    L = structure.lattice
    acc = L.top
    for a in L.elements():
        for b in L.elements():
            peirce = structure.imp(structure.imp(structure.imp(a, b), a), a)
            acc = L.meet2(acc, peirce)
    return acc


def combinator_nu(algebra: ImplicativeAlgebra) -> int:
    """A composition combinator: nu a b c <= a(bc) for all triples.

    Realized as (s (k s)) k from the algebra's stored combinators; the
    result is checked to lie in the separator and to satisfy the
    defining inequality on every triple.
    """
    st = algebra.structure
    L = algebra.lattice
    nu = st.application(st.application(algebra.s, st.application(algebra.k, algebra.s)),
                        algebra.k)
    if nu not in algebra.separator:
        raise VerificationFailed(
            f"composition combinator {L.name(nu)} escaped the separator")
    for a in L.elements():
        for b in L.elements():
            for c in L.elements():
                if not L.leq(st.apply_chain(nu, a, b, c),
                             st.application(a, st.application(b, c))):
                    raise VerificationFailed(
                        "composition combinator fails nu a b c <= a(bc) at "
                        f"({L.name(a)}, {L.name(b)}, {L.name(c)})")
    return nu


def separator_closure(structure: ImplicativeStructure, generators) -> frozenset:
    """Least separator containing the generators.

    Iterates upward closure and modus ponens to a fixpoint, starting
    from the generators plus the canonical k and s.
    """
    L = structure.lattice
    current = set(generators)
    current.add(combinator_k(structure))
    current.add(combinator_s(structure))
    while True:
        grown = set(current)
        for a in current:
            for b in L.elements():
                if L.leq(a, b):
                    grown.add(b)
        for a in list(grown):
            for b in L.elements():
                if structure.imp(a, b) in grown and a in grown:
                    grown.add(b)
        if grown == current:
            return frozenset(current)
        current = grown


def validate_algebra(algebra: ImplicativeAlgebra) -> Report:
    """Full validation: structure axioms, separator axioms, combinator
    bounds, the applied combinator laws, and the classical/consistent
    flags."""
    st = algebra.structure
    L = algebra.lattice
    nm = L.name
    sep = algebra.separator
    rep = validate_structure(st)
    rep.name = "implicative-algebra"

    witness = None
    for a in sep:
        for b in L.elements():
            if L.leq(a, b) and b not in sep:
                witness = f"({nm(a)} <= {nm(b)})"
                break
        if witness:
            break
    rep.check("separator.upward-closed", witness is None, witness)

    witness = None
    for a in sep:
        for b in L.elements():
            if st.imp(a, b) in sep and b not in sep:
                witness = f"(a={nm(a)}, b={nm(b)})"
                break
        if witness:
            break
    rep.check("separator.modus-ponens", witness is None, witness)

    rep.check("separator.has-k", algebra.k in sep,
              None if algebra.k in sep else nm(algebra.k))
    rep.check("separator.has-s", algebra.s in sep,
              None if algebra.s in sep else nm(algebra.s))

    k_bound = combinator_k(st)
    rep.check("k.bound", L.leq(algebra.k, k_bound),
              None if L.leq(algebra.k, k_bound) else f"k={nm(algebra.k)} > {nm(k_bound)}")
    s_bound = combinator_s(st)
    rep.check("s.bound", L.leq(algebra.s, s_bound),
              None if L.leq(algebra.s, s_bound) else f"s={nm(algebra.s)} > {nm(s_bound)}")

    witness = None
    for a in L.elements():
        for b in L.elements():
            if not L.leq(st.apply_chain(algebra.k, a, b), a):
                witness = f"({nm(a)}, {nm(b)})"
                break
        if witness:
            break
    rep.check("law.k-applied", witness is None, witness)

    witness = None
    for a in L.elements():
        for b in L.elements():
            for c in L.elements():
                lhs = st.apply_chain(algebra.s, a, b, c)
                rhs = st.application(st.application(a, c), st.application(b, c))
                if not L.leq(lhs, rhs):
                    witness = f"({nm(a)}, {nm(b)}, {nm(c)})"
                    break
            if witness:
                break
        if witness:
            break
    rep.check("law.s-applied", witness is None, witness)

    rep.flag("classical", combinator_cc(st) in sep)
    rep.flag("consistent", L.meet(L.elements()) not in sep)
    return rep


def entails(algebra: ImplicativeAlgebra, a: int, b: int) -> EntailmentWitness | None:
    """A separator element realizing a |- b, canonically a -> b itself."""
    r = algebra.imp(a, b)
    if r in algebra.separator:
        return EntailmentWitness(r, a, b)
    return None


def uniform_entails(algebra: ImplicativeAlgebra, pairs) -> int | None:
    """The meet of all f(x) -> g(x), when it lies in the separator.

    The meet itself is the canonical uniform realizer: it is below every
    instance by construction.
    """
    m = algebra.lattice.meet([algebra.imp(a, b) for a, b in pairs])
    return m if m in algebra.separator else None
