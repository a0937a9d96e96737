"""Interior operators on finite lattices and implication change.

An interior operator is deflationary, idempotent, and monotone; it is
Alexandroff when it commutes with arbitrary meets.  Operators correspond
bijectively to their sets of open elements, and every operator has a
least Alexandroff operator above it.  An Alexandroff operator that is
compatible with a separator turns an implicative algebra into a new one
on the open elements, with the interior of the old implication as the
new implication; the inclusion back and the corestricted interior map
are both computationally dense, with explicit witnesses.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (HypothesisFailed, InvalidClosedPart, NotAlexandroff,
                     VerificationFailed)
from .implicative import (ImplicativeAlgebra, ImplicativeStructure,
                          combinator_i, combinator_nu, validate_algebra)
from .morphism import DensityCertificate, MorphismSpec
from .order import ExplicitLattice, FiniteLattice, PowersetLattice, bits, subset_meets
from .report import Report


@dataclass(frozen=True)
class InteriorOperator:
    lattice: FiniteLattice
    table: tuple[int, ...]

    def __call__(self, a: int) -> int:
        return self.table[a]

    def opens(self) -> tuple[int, ...]:
        return tuple(a for a in self.lattice.elements() if self.table[a] == a)

    @property
    def klass(self) -> str:
        if is_alexandroff(self)[0]:
            return "alexandroff"
        if is_topological(self)[0]:
            return "topological"
        return "plain"


def is_topological(op: InteriorOperator):
    """Binary meet commutation plus a fixed top."""
    L = op.lattice
    if op.table[L.top] != L.top:
        return False, f"top: {L.name(op.table[L.top])}"
    for a in L.elements():
        for b in L.elements():
            if op.table[L.meet2(a, b)] != L.meet2(op.table[a], op.table[b]):
                return False, f"({L.name(a)}, {L.name(b)})"
    return True, None


def is_alexandroff(op: InteriorOperator):
    """Meet commutation over every subset, the empty one included."""
    L = op.lattice
    elems = list(L.elements())
    meets = subset_meets(L, elems)
    image_meets = subset_meets(L, [op.table[a] for a in elems])
    for m in range(len(meets)):
        if op.table[meets[m]] != image_meets[m]:
            return False, L.name_set(elems[i] for i in bits(m))
    return True, None


def validate_interior(op: InteriorOperator) -> Report:
    """The three operator axioms plus the computed class flags."""
    L = op.lattice
    nm = L.name
    rep = Report("interior")
    witness = next((nm(a) for a in L.elements() if not L.leq(op.table[a], a)), None)
    rep.check("interior.deflationary", witness is None, witness)
    witness = next((nm(a) for a in L.elements()
                    if op.table[op.table[a]] != op.table[a]), None)
    rep.check("interior.idempotent", witness is None, witness)
    witness = None
    for a in L.elements():
        for b in L.elements():
            if L.leq(a, b) and not L.leq(op.table[a], op.table[b]):
                witness = f"({nm(a)}, {nm(b)})"
                break
        if witness:
            break
    rep.check("interior.monotone", witness is None, witness)
    if rep.ok:
        topo, w_topo = is_topological(op)
        rep.flag("topological", topo, None if topo else f"witness {w_topo}")
        alex, w_alex = is_alexandroff(op)
        rep.flag("alexandroff", alex, None if alex else f"witness family {w_alex}")
        rep.data["class"] = op.klass
    return rep


def operator_leq(op1: InteriorOperator, op2: InteriorOperator) -> bool:
    L = op1.lattice
    return all(L.leq(op1.table[a], op2.table[a]) for a in L.elements())


def closure_from_interior(op: InteriorOperator) -> tuple[int, ...]:
    """The closure sending an element to the meet of the open elements
    above it; its fixed points are checked to be exactly the opens."""
    alex, witness = is_alexandroff(op)
    if not alex:
        raise NotAlexandroff(f"meet commutation fails at family {witness}")
    L = op.lattice
    opens = op.opens()
    table = tuple(
        L.meet([b for b in opens if L.leq(a, b)]) for a in L.elements())
    fixed = tuple(a for a in L.elements() if table[a] == a)
    if fixed != opens:
        raise VerificationFailed("closure fixed points differ from the opens")
    return table


@dataclass(frozen=True)
class ClosedPart:
    """A set of elements closed under ambient joins (and, for the
    alexandroff flavor, ambient meets as well)."""

    lattice: FiniteLattice
    members: frozenset
    flavor: str                  # "P_c" or "P_c_infty"

    def validate(self) -> Report:
        L = self.lattice
        rep = Report("closed-part")
        members = sorted(self.members)
        witness = None
        for m in range(1 << len(members)):
            sub = [members[i] for i in bits(m)]
            if L.join(sub) not in self.members:
                witness = L.name_set(sub)
                break
        rep.check("closed.join-closed", witness is None, witness)
        if self.flavor == "P_c_infty":
            witness = None
            for m in range(1 << len(members)):
                sub = [members[i] for i in bits(m)]
                if L.meet(sub) not in self.members:
                    witness = L.name_set(sub)
                    break
            rep.check("closed.meet-closed", witness is None, witness)
        return rep


def theta(op: InteriorOperator) -> ClosedPart:
    """The open-element set of an operator, with its computed flavor."""
    L = op.lattice
    members = frozenset(op.opens())
    flavor = "P_c_infty" if is_alexandroff(op)[0] else "P_c"
    return ClosedPart(L, members, flavor)


def theta_inv(part: ClosedPart) -> InteriorOperator:
    """The operator sending an element to the join of the members below
    it; inverse to :func:`theta`."""
    rep = part.validate()
    if not rep.ok:
        raise InvalidClosedPart(rep.failures()[0].clause + " at " +
                                str(rep.failures()[0].witness))
    L = part.lattice
    table = tuple(
        L.join([b for b in part.members if L.leq(b, a)]) for a in L.elements())
    return InteriorOperator(L, table)


def al_approx(op: InteriorOperator) -> InteriorOperator:
    """Least Alexandroff operator above the given one.

    On a powerset backend the approximation acts by unioning the
    interiors of singletons; in general the opens are closed under
    ambient joins and meets and the correspondence inverted.  Where both
    routes apply they are compared and must agree.
    """
    L = op.lattice
    general = _al_approx_general(op)
    if isinstance(L, PowersetLattice):
        table = []
        for p in L.elements():
            acc = 0
            for x in bits(p):
                acc |= op.table[1 << x]
            table.append(acc)
        fast = InteriorOperator(L, tuple(table))
        if fast.table != general.table:
            raise VerificationFailed(
                "singleton-union approximation disagrees with the closure route")
        return fast
    return general


def _al_approx_general(op: InteriorOperator) -> InteriorOperator:
    L = op.lattice
    members = set(op.opens())
    members.add(L.top)
    members.add(L.bottom)
    while True:
        extra = set()
        current = sorted(members)
        for a in current:
            for b in current:
                m = L.meet2(a, b)
                if m not in members:
                    extra.add(m)
                j = L.join2(a, b)
                if j not in members:
                    extra.add(j)
        if not extra:
            break
        members |= extra
    return theta_inv(ClosedPart(L, frozenset(members), "P_c_infty"))


class ChangedAlgebra:
    """An algebra on the open elements of a compatible operator.

    ``opens`` lists the open elements by their base ids; ``algebra`` is
    the induced algebra on the re-indexed open carrier.  The attached
    report records the construction-time verification: the changed
    structure validates, and its application is the closure of the
    original application on every open pair.
    """

    def __init__(self, base: ImplicativeAlgebra, iota: InteriorOperator,
                 opens, algebra: ImplicativeAlgebra, closure,
                 strong_imp_condition: bool, report: Report):
        self.base = base
        self.iota = iota
        self.opens = tuple(opens)
        self.algebra = algebra
        self.closure = tuple(closure)
        self.strong_imp_condition = strong_imp_condition
        self.report = report
        self.to_sub = {b: i for i, b in enumerate(self.opens)}

    @property
    def k_iota(self) -> int:
        return self.opens[self.algebra.k]

    @property
    def s_iota(self) -> int:
        return self.opens[self.algebra.s]

    @property
    def separator_iota(self) -> frozenset:
        return frozenset(self.opens[i] for i in self.algebra.separator)

    def imp_iota(self, a: int, b: int) -> int:
        """The changed implication on base element ids."""
        return self.opens[self.algebra.imp(self.to_sub[a], self.to_sub[b])]


def change_implication(base: ImplicativeAlgebra, iota: InteriorOperator) -> ChangedAlgebra:
    """Build the changed algebra, checking the three hypotheses first.

    The operator must be Alexandroff, compatible with the separator, and
    must dominate the action of the identity combinator; the stronger
    implication-invariance condition is tested first and recorded,
    since it implies the last hypothesis and unlocks the density
    certificate of the corestricted map.
    """
    L = base.lattice
    st = base.structure
    alex, witness = is_alexandroff(iota)
    if not alex:
        raise HypothesisFailed("alexandroff", f"family {witness}")
    for s in sorted(base.separator):
        if iota.table[s] not in base.separator:
            raise HypothesisFailed("compatibility", L.name(s))

    strong = True
    for a in L.elements():
        for b in L.elements():
            if st.imp(iota.table[a], b) != st.imp(a, b):
                strong = False
                break
        if not strong:
            break

    i_comb = combinator_i(st)
    if not strong:
        for a in L.elements():
            if not L.leq(st.application(i_comb, a), iota.table[a]):
                raise HypothesisFailed("i-bound", L.name(a))

    opens = tuple(a for a in L.elements() if iota.table[a] == a)
    to_sub = {b: i for i, b in enumerate(opens)}
    sub = ExplicitLattice.from_leq([L.name(a) for a in opens],
                                   lambda i, j: L.leq(opens[i], opens[j]))
    sub_imp = tuple(
        tuple(to_sub[iota.table[st.imp(a, b)]] for b in opens) for a in opens)
    sub_structure = ImplicativeStructure(sub, sub_imp)
    sub_separator = frozenset(to_sub[iota.table[s]] for s in base.separator)

    nu = combinator_nu(base)
    k_iota = iota.table[st.apply_chain(nu, i_comb, base.k)]
    nu_i = st.application(nu, i_comb)
    s_iota = iota.table[st.apply_chain(nu, st.application(nu_i, nu_i), base.s)]
    algebra = ImplicativeAlgebra(sub_structure, sub_separator,
                                 to_sub[k_iota], to_sub[s_iota])

    closure = closure_from_interior(iota)
    report = validate_algebra(algebra)
    report.name = "changed-algebra"
    witness = None
    for a in opens:
        for b in opens:
            changed = opens[algebra.application(to_sub[a], to_sub[b])]
            if changed != closure[st.application(a, b)]:
                witness = f"({L.name(a)}, {L.name(b)})"
                break
        if witness:
            break
    report.check("change.application-is-closure", witness is None, witness)
    report.flag("imp-invariance", strong)
    return ChangedAlgebra(base, iota, opens, algebra, closure, strong, report)


def density_certificates(base: ImplicativeAlgebra, iota: InteriorOperator):
    """The two computationally dense maps around a changed algebra.

    Returns ``((inclusion, cert), (corestriction, cert))`` with the
    literal witnesses: the inclusion uses the identity combinator as both
    realizers and the operator itself as the section; the corestricted
    map uses the interiors of the identity combinator and of the
    composition-combinator square.
    """
    ch = change_implication(base, iota)
    L = base.lattice
    st = base.structure
    i_comb = combinator_i(st)

    inclusion = MorphismSpec("ia", ch.algebra, base, ch.opens, "inclusion")
    inc_h = {b: ch.to_sub[iota.table[b]] for b in base.separator}
    inc_cert = DensityCertificate.make(i_comb, inc_h, i_comb)

    if not ch.strong_imp_condition:
        raise HypothesisFailed("imp-invariance",
                               "interior does not leave implications unchanged")
    corestriction = MorphismSpec(
        "ia", base, ch.algebra,
        tuple(ch.to_sub[iota.table[a]] for a in L.elements()), "interior-map")
    nu = combinator_nu(base)
    nu_i = st.application(nu, i_comb)
    r_elem = iota.table[st.application(nu_i, nu_i)]
    cor_h = {i: ch.opens[i] for i in ch.algebra.separator}
    cor_cert = DensityCertificate.make(
        ch.to_sub[iota.table[i_comb]], cor_h, ch.to_sub[r_elem])
    return (inclusion, inc_cert), (corestriction, cor_cert)
