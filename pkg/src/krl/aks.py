"""Abstract Krivine structures.

The carrier is a finite set of terms-and-stacks with a polarity
relation, push and application tables, a quasi-proof set, and two
distinguished elements driving the k/s axioms.  Subsets of the carrier
are bitmasks throughout, the polarity is stored as row and column
masks, and the perp of a set is an intersection of matrix lines, which
keeps every derived operation word-parallel.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product

from .order import bits
from .report import Report


@dataclass(frozen=True)
class AbstractKrivineStructure:
    names: tuple[str, ...]
    perp_rows: tuple[int, ...]     # perp_rows[t] = mask of stacks orthogonal to t
    push: tuple[tuple[int, ...], ...]
    app: tuple[tuple[int, ...], ...]
    qp: int                        # quasi-proof set, as a mask
    k_elem: int
    s_elem: int

    @property
    def pi_size(self) -> int:
        return len(self.names)

    @cached_property
    def perp_cols(self) -> tuple[int, ...]:
        cols = [0] * self.pi_size
        for t, row in enumerate(self.perp_rows):
            for pi in bits(row):
                cols[pi] |= 1 << t
        return tuple(cols)

    @property
    def full(self) -> int:
        return (1 << self.pi_size) - 1

    def perp(self, t: int, pi: int) -> bool:
        return bool(self.perp_rows[t] >> pi & 1)

    def name(self, x: int) -> str:
        return self.names[x]

    def name_mask(self, mask: int) -> str:
        return "{" + " ".join(self.names[i] for i in bits(mask)) + "}"

    def index_of(self, name: str) -> int:
        return self.names.index(name)


@dataclass(frozen=True)
class PolaritySubsets:
    """A left set of terms paired with a right set of stacks."""

    left: int
    right: int

    def terms_perp_to_right(self, aks) -> int:
        return perp_left(aks, self.right)

    def stacks_perp_to_left(self, aks) -> int:
        return perp_right(aks, self.left)


def perp_left(aks: AbstractKrivineStructure, right_mask: int) -> int:
    """All t orthogonal to every stack in the mask; the full carrier on {}."""
    acc = aks.full
    for pi in bits(right_mask):
        acc &= aks.perp_cols[pi]
    return acc


def perp_right(aks: AbstractKrivineStructure, left_mask: int) -> int:
    acc = aks.full
    for t in bits(left_mask):
        acc &= aks.perp_rows[t]
    return acc


def bar_closure(aks: AbstractKrivineStructure, mask: int) -> int:
    """Double-perp closure; extensive, idempotent, monotone for inclusion."""
    return perp_right(aks, perp_left(aks, mask))


def hat_closure(aks: AbstractKrivineStructure, mask: int) -> int:
    """Union of the bar closures of the singletons of the set."""
    acc = 0
    for pi in bits(mask):
        acc |= bar_closure(aks, 1 << pi)
    return acc


def spec_preorder(aks: AbstractKrivineStructure, sigma: int, pi: int) -> bool:
    """sigma precedes pi when pi lies in the bar closure of {sigma}."""
    return bool(bar_closure(aks, 1 << sigma) >> pi & 1)


def imp_sets(aks: AbstractKrivineStructure, p: int, q: int) -> int:
    """The implication on subsets: everything of the form t.pi with t
    orthogonal to p and pi in q."""
    out = 0
    for t in bits(perp_left(aks, p)):
        row = aks.push[t]
        for pi in bits(q):
            out |= 1 << row[pi]
    return out


def app_sets(aks: AbstractKrivineStructure, p: int, q: int) -> int:
    """The adjoint application on subsets: stacks pi with t.pi in p for
    every t orthogonal to q."""
    out = 0
    tq = perp_left(aks, q)
    for pi in range(aks.pi_size):
        if all(p >> aks.push[t][pi] & 1 for t in bits(tq)):
            out |= 1 << pi
    return out


def validate_aks(aks: AbstractKrivineStructure) -> Report:
    """Per-axiom validation with witness tuples.

    Strong compatibility (the biconditional form) is recorded as a flag
    rather than an axiom; the degenerate full polarity passes everything.
    """
    rep = Report("aks")
    nm = aks.name
    n = aks.pi_size

    witness = None
    strong = True
    for t in range(n):
        for s in range(n):
            ts = aks.app[t][s]
            for pi in range(n):
                fwd = aks.perp(t, aks.push[s][pi])
                back = aks.perp(ts, pi)
                if fwd and not back and witness is None:
                    witness = f"(t={nm(t)}, s={nm(s)}, pi={nm(pi)})"
                if fwd != back:
                    strong = False
    rep.check("aks.compatibility", witness is None, witness)
    rep.flag("strong-compatibility", strong and witness is None)

    witness = None
    for t in bits(aks.qp):
        for s in bits(aks.qp):
            if not aks.qp >> aks.app[t][s] & 1:
                witness = f"(t={nm(t)}, s={nm(s)})"
                break
        if witness:
            break
    rep.check("aks.qp-application-closed", witness is None, witness)
    has_k = bool(aks.qp >> aks.k_elem & 1)
    rep.check("aks.qp-has-k", has_k, None if has_k else nm(aks.k_elem))
    has_s = bool(aks.qp >> aks.s_elem & 1)
    rep.check("aks.qp-has-s", has_s, None if has_s else nm(aks.s_elem))

    witness = None
    for t in range(n):
        for pi in bits(aks.perp_rows[t]):
            for s in range(n):
                stack = aks.push[t][aks.push[s][pi]]
                if not aks.perp(aks.k_elem, stack):
                    witness = f"(t={nm(t)}, s={nm(s)}, pi={nm(pi)})"
                    break
            if witness:
                break
        if witness:
            break
    rep.check("aks.k-axiom", witness is None, witness)

    witness = None
    for t in range(n):
        for u in range(n):
            tu = aks.app[t][u]
            for s in range(n):
                su = aks.app[s][u]
                lhs = aks.app[tu][su]
                for pi in bits(aks.perp_rows[lhs]):
                    stack = aks.push[t][aks.push[s][aks.push[u][pi]]]
                    if not aks.perp(aks.s_elem, stack):
                        witness = f"(t={nm(t)}, s={nm(s)}, u={nm(u)}, pi={nm(pi)})"
                        break
                if witness:
                    break
            if witness:
                break
        if witness:
            break
    rep.check("aks.s-axiom", witness is None, witness)
    return rep


def app_closure(aks_app, members: int) -> int:
    """Close a mask under the application table."""
    current = members
    while True:
        grown = current
        for t in bits(current):
            row = aks_app[t]
            for s in bits(current):
                grown |= 1 << row[s]
        if grown == current:
            return current
        current = grown


def full_polarity_aks(n: int, names=None) -> AbstractKrivineStructure:
    """The degenerate structure where everything is orthogonal to
    everything; valid for any tables, with the whole carrier as
    quasi-proofs."""
    names = tuple(names) if names else tuple(chr(ord("a") + i) for i in range(n))
    full = (1 << n) - 1
    table = tuple(tuple(0 for _ in range(n)) for _ in range(n))
    return AbstractKrivineStructure(
        names=names, perp_rows=(full,) * n, push=table, app=table,
        qp=full, k_elem=0, s_elem=0)


def mine_aks(pi_size, perp_pairs, *, max_results=1, app_combo_cap=4096,
             names=None):
    """Deterministic exhaustive search for valid structures over a fixed
    polarity.

    Push tables are scanned in lexicographic order.  For each, the
    compatibility axiom leaves an independent candidate set per
    application cell; the cells are filled from those products, then the
    k/s elements are read off their axiom constraints and the quasi-proof
    set is the application closure of the chosen pair.  Results come out
    in a stable order, so the first hit is a reproducible fixture.
    """
    names = tuple(names) if names else tuple(chr(ord("a") + i) for i in range(pi_size))
    n = pi_size
    full = (1 << n) - 1
    rows = [0] * n
    for t, pi in perp_pairs:
        rows[t] |= 1 << pi
    rows = tuple(rows)
    cols = [0] * n
    for t in range(n):
        for pi in bits(rows[t]):
            cols[pi] |= 1 << t
    perp_elems = [(t, pi) for t in range(n) for pi in bits(rows[t])]

    def left_perp(mask):
        acc = full
        for pi in bits(mask):
            acc &= cols[pi]
        return acc

    results = []
    for push_flat in product(range(n), repeat=n * n):
        push = tuple(tuple(push_flat[s * n:(s + 1) * n]) for s in range(n))

        # app(t, s) must be orthogonal to every pi with t perp push(s, pi)
        cand = [[0] * n for _ in range(n)]
        feasible = True
        for t in range(n):
            for s in range(n):
                need = 0
                for pi in range(n):
                    if rows[t] >> push[s][pi] & 1:
                        need |= 1 << pi
                c = left_perp(need)
                if not c:
                    feasible = False
                    break
                cand[t][s] = c
            if not feasible:
                break
        if not feasible:
            continue

        dk = 0
        for t, pi in perp_elems:
            for s in range(n):
                dk |= 1 << push[t][push[s][pi]]
        k_cands = left_perp(dk)
        if not k_cands:
            continue

        cells = [sorted(bits(cand[t][s])) for t in range(n) for s in range(n)]
        combos = 0
        for app_flat in product(*cells):
            combos += 1
            if combos > app_combo_cap:
                break
            app = tuple(tuple(app_flat[t * n + s] for s in range(n)) for t in range(n))
            ds = 0
            for t in range(n):
                for u in range(n):
                    tu = app[t][u]
                    for s in range(n):
                        lhs = app[tu][app[s][u]]
                        for pi in bits(rows[lhs]):
                            ds |= 1 << push[t][push[s][push[u][pi]]]
            s_cands = left_perp(ds)
            if not s_cands:
                continue
            for k_el in bits(k_cands):
                for s_el in bits(s_cands):
                    qp = app_closure(app, (1 << k_el) | (1 << s_el))
                    found = AbstractKrivineStructure(
                        names=names, perp_rows=rows, push=push, app=app,
                        qp=qp, k_elem=k_el, s_elem=s_el)
                    results.append(found)
                    if len(results) >= max_results:
                        return results
    return results
