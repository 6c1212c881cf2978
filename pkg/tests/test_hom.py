"""Hom validation, tightness, duality, consonance, and factorization."""

import pytest

from tightforge import corpus, gpd, hom, isg, latt
from tightforge.errors import InvalidStructure, NotTight, PreconditionFailed

from bruteforce import (
    isg_tightly_surjective_oracle,
    preserves_covers_oracle,
    tightly_surjective_oracle,
)

E2 = corpus.chain(2)
C3 = corpus.chain(3)
DIA = corpus.diamond()
I2 = corpus.symmetric_inverse_monoid(2)
I2_SGP = I2
CHAIN3_SGP = isg.from_semilattice(C3)

CORPUS_SL = corpus.semilattices()
CORPUS_ISG = corpus.inverse_semigroups()

INCL = hom.make_hom(E2, DIA, [0, DIA.index("1")])
Q3 = hom.make_hom(C3, E2, [0, 1, 1])
J23 = hom.make_hom(E2, C3, [0, 1])


def small_semilattice_homs(limit):
    pool = [(n, E) for n, E in CORPUS_SL if len(E) <= limit]
    for _, dom in pool:
        for _, cod in pool:
            for mapping in corpus.semilattice_homs(dom, cod):
                yield hom.make_hom(dom, cod, mapping)


def test_make_hom_rejects_non_multiplicative():
    with pytest.raises(InvalidStructure, match="multiplicative"):
        hom.make_hom(C3, E2, [0, 1, 0])


def test_make_hom_rejects_zero_loss():
    with pytest.raises(InvalidStructure, match="zero"):
        hom.make_hom(E2, E2, [1, 1])


def test_make_hom_without_zero_requirement():
    h = hom.make_hom(E2, C3, [1, 2], require_zero=False)
    assert h.mapping == (1, 2)


def test_make_hom_rejects_mixed_kinds():
    with pytest.raises(InvalidStructure, match="same kind"):
        hom.make_hom(E2, I2, [0, 1])


def test_identity_and_composition():
    i = hom.identity_hom(C3)
    assert i.mapping == (0, 1, 2)
    k = hom.compose_homs(J23, Q3)
    assert k.mapping == (0, 1, 1)
    with pytest.raises(PreconditionFailed):
        hom.compose_homs(Q3, Q3)


def test_kernel_examples():
    assert hom.kernel(INCL) == frozenset({0})
    assert hom.kernel(hom.make_hom(C3, E2, [0, 0, 1])) == frozenset({0, 1})


def test_inclusion_is_tight_but_not_tightly_surjective():
    rep = hom.is_tight_hom(INCL)
    assert rep["tight"]
    assert rep["images_cover"] and rep["covers_push_forward"]
    assert hom.is_tightly_injective(INCL)
    assert not hom.is_tightly_surjective(INCL)
    verdict = hom.check_consonance(INCL)
    assert not verdict["is_consonance"]
    assert verdict["surjectivity_witness"]["target"] in ("e", "f")


def test_collapse_fails_tightness_with_witness():
    # sending the top of the diamond onto a chain top kills the cover
    # {e, f} of the top
    h = hom.make_hom(DIA, E2, [0, 0, 0, 1])
    rep = hom.is_tight_hom(h)
    assert not rep["covers_push_forward"]
    assert rep["witness"] == {"element": "1", "obstruction": "1"}


def test_quotient_hom_is_consonance():
    verdict = hom.check_consonance(Q3)
    assert verdict["is_consonance"]
    assert hom.is_tight_hom(Q3)["tight"]
    assert hom.kernel(Q3) == frozenset({0})


def test_unit_inclusion_into_chain_is_consonance():
    verdict = hom.check_consonance(J23)
    assert verdict["is_consonance"]


def test_dual_map_of_inclusion_collapses_points():
    assert hom.dual_map(INCL) == [0, 0]
    assert hom.dual_map(Q3) == [0]
    assert hom.dual_map(J23) == [0]


def test_dual_map_requires_tight():
    # the atom inclusion misses the other atom entirely
    h = hom.make_hom(E2, DIA, [0, DIA.index("e")])
    assert not hom.is_tight_hom(h)["images_cover"]
    with pytest.raises(NotTight):
        hom.dual_map(h)


def test_check_inverse_examples():
    assert hom.check_inverse(Q3) == [0]
    assert hom.check_inverse(J23) == [0]
    with pytest.raises(PreconditionFailed):
        hom.check_inverse(INCL)


def test_duality_laws_on_exhaustive_small_homs():
    # for tight homs: the dual point map is surjective exactly for the
    # tightly injective ones, injective exactly for the tightly
    # surjective ones, bijective exactly for consonances, and always
    # order preserving
    seen = 0
    for h in small_semilattice_homs(4):
        if not hom.is_tight_hom(h)["tight"]:
            continue
        seen += 1
        dual = hom.dual_map(h)
        npts1 = len(latt.tight_spectrum(h.dom).points)
        surj = set(dual) == set(range(npts1))
        inj = len(set(dual)) == len(dual)
        assert surj == hom.is_tightly_injective(h)
        assert inj == hom.is_tightly_surjective(h)
        bij = surj and inj
        assert bij == hom.check_consonance(h)["is_consonance"]
        spec2 = latt.tight_spectrum(h.cod)
        spec1 = latt.tight_spectrum(h.dom)
        for (p, q) in spec2.order:
            assert (dual[p], dual[q]) in spec1.order
        if bij:
            inv = hom.check_inverse(h)
            assert [dual[inv[i]] for i in range(npts1)] == list(range(npts1))
    assert seen > 100


def test_kernel_triviality_matches_tight_injectivity_for_tight_homs():
    for h in small_semilattice_homs(4):
        if not hom.is_tight_hom(h)["tight"]:
            continue
        inj = hom.is_tightly_injective(h)
        assert (hom.kernel(h) == frozenset({h.dom.zero})) == inj
        reflects = all(
            latt.tight_leq(h.dom, e, f)
            for e in h.dom.elements()
            for f in h.dom.elements()
            if latt.tight_leq(h.cod, h.mapping[e], h.mapping[f])
        )
        assert reflects == inj


def test_tight_surjectivity_matches_subset_oracle():
    for h in small_semilattice_homs(4):
        got = hom.is_tightly_surjective(h)
        want, _ = tightly_surjective_oracle(h.dom, h.cod, h.mapping)
        assert got == want


def test_cover_pushforward_matches_quantified_oracle():
    for h in small_semilattice_homs(4):
        got = hom.is_tight_hom(h)["covers_push_forward"]
        want, _ = preserves_covers_oracle(h.dom, h.cod, h.mapping)
        assert got == want


def test_isg_tight_surjectivity_matches_subset_oracle():
    pool = [(n, S) for n, S in corpus.hom_pool().items() if len(S) <= 5]
    for _, dom in pool:
        for _, cod in pool:
            for mapping in corpus.isg_homs(dom, cod):
                h = hom.make_hom(dom, cod, mapping)
                got = hom.is_tightly_surjective(h)
                want, _ = isg_tightly_surjective_oracle(dom, cod, h.mapping)
                assert got == want


def test_tight_characters_detect_injectivity_and_surjectivity():
    # a hom is tightly injective iff composing with it reaches every
    # tight character of the domain, and tightly surjective iff the
    # composites with distinct characters stay distinct
    for h in small_semilattice_homs(4):
        if not hom.is_tight_hom(h)["tight"]:
            continue
        spec1 = latt.tight_spectrum(h.dom)
        spec2 = latt.tight_spectrum(h.cod)
        pulled = set()
        for p in spec2.points:
            pre = frozenset(
                e for e in h.dom.elements() if h.mapping[e] in p.members
            )
            pulled.add(pre)
        all1 = {p.members for p in spec1.points}
        assert (pulled == all1) == hom.is_tightly_injective(h)
        assert (len(pulled) == len(spec2.points)) == \
            hom.is_tightly_surjective(h)


def test_restriction_of_isg_consonance_is_consonance():
    Q, q = isg.tight_quotient(I2)
    verdict = hom.check_consonance(q)
    assert verdict["is_consonance"]
    assert verdict["restriction"]["is_consonance"]


def test_induced_groupoid_map_of_quotient_is_bijective():
    Q, q = isg.tight_quotient(CHAIN3_SGP)
    rep = hom.induced_groupoid_map(q)
    assert rep["injective"] and rep["surjective"]
    assert len(rep["arrow_map"]) == 1


def test_induced_groupoid_map_of_envelope_hom():
    for _, S in CORPUS_ISG:
        if len(S) > 8:
            continue
        cpl, rho, _ = gpd.tight_envelope(S)
        rep = hom.induced_groupoid_map(rho)
        assert rep["injective"] and rep["surjective"]


def test_induced_groupoid_map_flags_follow_tightness():
    pool = [(n, S) for n, S in corpus.hom_pool().items() if len(S) <= 5]
    for _, dom in pool:
        for _, cod in pool:
            for mapping in corpus.isg_homs(dom, cod):
                h = hom.make_hom(dom, cod, mapping)
                h0 = hom.restriction_to_idempotents(h)
                if not hom.check_consonance(h0)["is_consonance"]:
                    continue
                rep = hom.induced_groupoid_map(h)
                assert rep["injective"] == hom.is_tightly_injective(h)
                assert rep["surjective"] == hom.is_tightly_surjective(h)


def test_induced_groupoid_map_requires_consonant_restriction():
    # the semilattice inclusion of the chain into the diamond misses an
    # atom, so the idempotent restriction is not a consonance
    dom = isg.from_semilattice(E2)
    cod = isg.from_semilattice(DIA)
    h = hom.make_hom(dom, cod, [0, DIA.index("e")])
    with pytest.raises(PreconditionFailed):
        hom.induced_groupoid_map(h)


def trivial_action(S, npoints):
    """Every nonzero element acts as the identity on npoints points."""
    full = {x: x for x in range(npoints)}
    theta = [full if s != S.zero else {} for s in S.elements()]
    labels = [f"p{x}" for x in range(npoints)]
    order = {(x, x) for x in range(npoints)}
    return gpd.make_action(S, labels, order, theta)


def test_check_covariant_identity_pair_is_epimorphism():
    act = gpd.canonical_action(I2)
    rep = hom.check_covariant(hom.identity_hom(I2), [0, 1], act, act)
    assert rep["verdict"] == "epimorphism"
    assert rep["delta_containment"] and rep["delta_equality"]


def test_check_covariant_quotient_pair_is_epimorphism():
    Q, q = isg.tight_quotient(CHAIN3_SGP)
    alpha = gpd.canonical_action(CHAIN3_SGP)
    beta = gpd.canonical_action(Q)
    rep = hom.check_covariant(q, [0], alpha, beta)
    assert rep["verdict"] == "epimorphism"


def test_check_covariant_detects_equivariance_failure():
    # the group element acts by the swap in alpha and trivially in beta
    Z = corpus.cyclic_group_with_zero(2)
    g = next(s for s in Z.elements() if not Z.is_idempotent(s))
    theta = [{} for _ in Z.elements()]
    theta[Z.mul(g, g)] = {0: 0, 1: 1}
    theta[g] = {0: 1, 1: 0}
    alpha = gpd.make_action(Z, ["p0", "p1"], {(0, 0), (1, 1)}, theta)
    beta = trivial_action(Z, 2)
    rep = hom.check_covariant(hom.identity_hom(Z), [0, 1], alpha, beta)
    assert rep["verdict"] == "none"
    assert rep["violated"] == "equivariance"


def test_check_covariant_detects_domain_failure():
    act = gpd.canonical_action(I2)
    rep = hom.check_covariant(hom.identity_hom(I2), [1, 1], act, act)
    assert rep["verdict"] == "none"
    assert rep["violated"] == "domain containment"


def test_check_covariant_without_surjectivity_is_covariant_only():
    alpha = gpd.canonical_action(CHAIN3_SGP)
    beta = trivial_action(CHAIN3_SGP, 2)
    rep = hom.check_covariant(hom.identity_hom(CHAIN3_SGP), [0], alpha, beta)
    assert rep["verdict"] == "covariant"
    assert rep["delta_containment"]


def test_decide_consonant_on_envelope_pair():
    cpl, _, _ = gpd.tight_envelope(I2)
    for via in ("auto", "envelope", "generated"):
        rep = hom.decide_consonant(I2, cpl, via=via)
        assert rep["consonant"], via
        assert len(rep["mediator"]) == 7


def test_decide_consonant_positive_pairs():
    members = dict(corpus.hom_pool())
    for a, b in corpus.consonant_pairs():
        rep = hom.decide_consonant(members[a], members[b])
        assert rep["consonant"], (a, b)
        for arm in ("h1", "h2"):
            assert rep[arm] is not None


def test_decide_consonant_negative_pairs():
    members = dict(corpus.hom_pool())
    for a, b in corpus.dissonant_pairs():
        rep = hom.decide_consonant(members[a], members[b])
        assert not rep["consonant"], (a, b)


def test_decide_consonant_accepts_semilattices():
    rep = hom.decide_consonant(C3, E2)
    assert rep["consonant"]
    rep = hom.decide_consonant(C3, DIA)
    assert not rep["consonant"]


def test_factor_through_envelope_hom_is_inverse_iso():
    cpl, rho, _ = gpd.tight_envelope(I2)
    k = hom.factor_through(rho)
    assert k.dom is cpl
    assert sorted(k.mapping) == list(range(7))
    comp = hom.compose_homs(k, rho)
    assert comp.mapping == tuple(range(7))


def test_factor_through_identity_recovers_envelope_hom():
    k = hom.factor_through(hom.identity_hom(I2))
    cpl, rho, _ = gpd.tight_envelope(I2)
    assert k.mapping == rho.mapping


def test_factor_through_quotient():
    Q, q = isg.tight_quotient(CHAIN3_SGP)
    k = hom.factor_through(q)
    assert k.cod.names == ("{}", "{1@^1}")
    assert k.mapping[Q.index("1")] == 1


def test_factor_through_requires_consonance():
    dom = isg.from_semilattice(E2)
    cod = isg.from_semilattice(DIA)
    h = hom.make_hom(dom, cod, [0, DIA.index("1")])
    with pytest.raises(PreconditionFailed):
        hom.factor_through(h)
