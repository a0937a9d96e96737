"""Morphism checkers, certificate search, composition, and 2-cells."""

from itertools import product

import pytest

from krl.aks import full_polarity_aks
from krl.errors import ComposabilityError, SearchBudgetExceeded
from krl.fixtures import aks2, aks3, diamond, heyting3, l2, singleton_algebra
from krl.morphism import (DensityCertificate, MorphismSpec, check_applicative,
                          check_applicative_ia, check_comp_dense,
                          check_comp_dense_ia, check_condition2_equiv, compose,
                          identity_morphism, two_cell_leq, verify_certificate)


def candidate_maps(src, tgt):
    """Every table satisfying separator and meet preservation."""
    out = []
    for table in product(range(tgt.lattice.size), repeat=src.lattice.size):
        f = MorphismSpec("ia", src, tgt, table)
        rep = check_applicative_ia(f)
        by_clause = {c.clause: c.passed for c in rep.checks}
        if (by_clause["morphism.separator-preservation"]
                and by_clause["morphism.meet-preservation"]):
            out.append((f, rep))
    return out


def brute_force_dense(f):
    """Search over every monotone table and every uniform realizer."""
    A, B = f.source, f.target
    la, lb = A.lattice, B.lattice
    sep_b = sorted(B.separator)
    sep_a = sorted(A.separator)
    for values in product(sep_a, repeat=len(sep_b)):
        h = dict(zip(sep_b, values))
        if any(lb.leq(b1, b2) and not la.leq(h[b1], h[b2])
               for b1 in sep_b for b2 in sep_b):
            continue
        for t in sep_b:
            if all(lb.leq(B.application(t, f(h[b])), b) for b in sep_b):
                return DensityCertificate.make(t, h)
    return None


def test_identity_is_applicative_with_realizer_top():
    f = identity_morphism(l2(), "ia")
    rep = check_applicative_ia(f)
    assert rep.ok and rep.data["realizer"] == 1


def test_identity_is_dense_everywhere():
    for algebra in (l2(), heyting3(), diamond(), singleton_algebra()):
        f = identity_morphism(algebra, "ia")
        cert = check_comp_dense_ia(f)
        assert cert is not None
        assert verify_certificate(f, cert).ok
        assert cert.h_map == {b: b for b in algebra.separator}


def test_constant_top_map_is_applicative():
    # the collapse of everything onto the top passes every clause: meets
    # of images are meets of tops, and any separator element realizes
    # uniformity
    f = MorphismSpec("ia", l2(), l2(), (1, 1), "const-top")
    rep = check_applicative_ia(f)
    assert rep.ok
    assert check_comp_dense_ia(f) is not None


def test_non_preserving_map_reports_clause():
    # swapping the chain breaks separator preservation and monotonicity
    f = MorphismSpec("ia", l2(), l2(), (1, 0), "swap")
    rep = check_applicative_ia(f)
    failed = {c.clause for c in rep.failures()}
    assert "morphism.separator-preservation" in failed


def test_meet_preservation_failure_has_witness():
    # on a chain every monotone map preserves meets, so a genuine failure
    # needs incomparable elements: send both midpoints of the diamond up
    f = MorphismSpec("ia", diamond(), l2(), (0, 1, 1, 1), "squash")
    rep = check_applicative_ia(f)
    clause = next(c for c in rep.checks if c.clause == "morphism.meet-preservation")
    assert not clause.passed and clause.witness == "{x, y}"


def test_condition_forms_agree_on_identity():
    for algebra in (l2(), heyting3()):
        rep = check_condition2_equiv(identity_morphism(algebra, "ia"))
        assert rep.ok


def test_condition_forms_agree_on_all_small_maps():
    fixtures = [l2(), heyting3()]
    for src in fixtures:
        for tgt in fixtures:
            for f, _ in candidate_maps(src, tgt):
                rep = check_condition2_equiv(f)
                assert next(c for c in rep.checks
                            if c.clause == "condition2.equivalence").passed


def test_search_agrees_with_brute_force_on_all_small_maps():
    fixtures = [l2(), heyting3(), diamond()]
    for src in fixtures:
        for tgt in fixtures:
            for f, rep in candidate_maps(src, tgt):
                if not rep.ok:
                    continue
                cert = check_comp_dense_ia(f)
                brute = brute_force_dense(f)
                assert (cert is None) == (brute is None)
                if cert is not None:
                    assert verify_certificate(f, cert).ok


def test_search_budget_is_reported_distinctly():
    f = identity_morphism(diamond(), "ia")
    with pytest.raises(SearchBudgetExceeded):
        check_comp_dense_ia(f, budget=0)


def test_verify_rejects_wrong_certificate():
    f = identity_morphism(l2(), "ia")
    bogus = DensityCertificate.make(0, {1: 1}, 1)
    rep = verify_certificate(f, bogus)
    assert not rep.ok
    assert any(c.clause == "cert.t-in-separator" for c in rep.failures())


def test_verify_rejects_non_monotone_h():
    h3 = heyting3()
    f = MorphismSpec("ia", h3, h3, (0, 1, 2))
    bogus = DensityCertificate.make(2, {1: 2, 2: 1}, 2)
    rep = verify_certificate(f, bogus)
    assert any(c.clause == "cert.h-monotone" for c in rep.failures())


def test_compose_with_identity_keeps_certificate():
    algebra = heyting3()
    ident = identity_morphism(algebra, "ia")
    cert = check_comp_dense_ia(ident)
    collapse = MorphismSpec("ia", algebra, l2(), (0, 1, 1), "collapse")
    ccert = check_comp_dense_ia(collapse)
    assert ccert is not None
    composed, composed_cert = compose(ident, collapse, cert, ccert)
    assert composed.carrier == collapse.carrier
    assert composed_cert == ccert
    assert verify_certificate(composed, composed_cert).ok


def test_compose_dense_maps_revalidates():
    # collapse then swap-free embedding: both dense, composite re-verifies
    h3 = heyting3()
    collapse = MorphismSpec("ia", h3, l2(), (0, 1, 1), "collapse")
    embed = MorphismSpec("ia", l2(), h3, (0, 2), "embed")
    c1 = check_comp_dense_ia(collapse)
    c2 = check_comp_dense_ia(embed)
    assert c1 and c2
    composed, cert = compose(collapse, embed, c1, c2)
    assert cert is not None and verify_certificate(composed, cert).ok
    fresh = check_comp_dense_ia(composed)
    assert fresh is not None


def test_compose_rejects_mismatched_endpoints():
    with pytest.raises(ComposabilityError):
        compose(identity_morphism(l2(), "ia"),
                identity_morphism(heyting3(), "ia"))
    with pytest.raises(ComposabilityError):
        compose(identity_morphism(l2(), "ia"),
                identity_morphism(aks2(), "aks"))


def test_identity_aks_morphism_is_dense():
    for aks in (aks2(), aks3(), full_polarity_aks(2)):
        f = identity_morphism(aks, "aks")
        assert check_applicative(f).ok
        cert = check_comp_dense(f)
        assert cert is not None and verify_certificate(f, cert).ok


def test_any_map_into_full_polarity_is_applicative():
    full = full_polarity_aks(2)
    for table in product(range(2), repeat=3):
        f = MorphismSpec("aks", aks3(), full, table)
        assert check_applicative(f).ok


def test_aks_morphisms_between_fixtures():
    # exhaustively classify carrier maps between the mined fixtures and
    # re-verify every certificate the search produces
    src, tgt = aks2(), aks3()
    found_dense = 0
    for table in product(range(3), repeat=2):
        f = MorphismSpec("aks", src, tgt, table)
        if not check_applicative(f).ok:
            continue
        cert = check_comp_dense(f)
        if cert is not None:
            found_dense += 1
            assert verify_certificate(f, cert).ok
    assert found_dense > 0


def test_two_cell_order_ia():
    algebra = l2()
    const0 = MorphismSpec("ia", algebra, algebra, (0, 0), "const0")
    const1 = MorphismSpec("ia", algebra, algebra, (1, 1), "const1")
    assert two_cell_leq(const0, const0)
    assert two_cell_leq(const0, const1)
    assert not two_cell_leq(const1, const0)


def test_two_cell_order_is_preorder_on_small_homset():
    algebra = heyting3()
    maps = [MorphismSpec("ia", algebra, algebra, t)
            for t in product(range(3), repeat=3)]
    for f in maps:
        assert two_cell_leq(f, f)
    for f in maps:
        for g in maps:
            for h in maps:
                if two_cell_leq(f, g) and two_cell_leq(g, h):
                    assert two_cell_leq(f, h)


def test_two_cell_order_aks_full_polarity_is_total():
    full = full_polarity_aks(2)
    maps = [MorphismSpec("aks", full, full, t) for t in product(range(2), repeat=2)]
    for f in maps:
        for g in maps:
            assert two_cell_leq(f, g)
