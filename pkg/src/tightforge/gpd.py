"""Groupoids of germs for finite inverse semigroup actions.

Covers the canonical action on the tight spectrum, germ groupoids with
their spectral order, slices and up-slices, the tight envelope, the
reverse-Ehresmann axioms, the fundamental inverse semigroup of an ordered
groupoid, and reconstruction of a groupoid from its up-slices.

For finite structures the germ topology is discrete: every singleton is a
fundamental slice cut down to a source fiber. Open and compact therefore
both mean arbitrary subset, and the discreteness fact is asserted on every
constructed tight groupoid rather than assumed.
"""

import functools
from collections import namedtuple

from . import caps, latt
from .errors import InvalidStructure, PreconditionFailed, SizeCapExceeded


class FiniteOrderedGroupoid:
    """A finite groupoid with a partial order on its arrows.

    Arrows are indices into a name list; units are the identity arrows.
    compose maps exactly the pairs (a, b) with source(a) = range(b) to
    the arrow "a after b". Construct through make_groupoid.
    """

    def __init__(self, names, units, source, range_, compose, inverse, order):
        self.names = tuple(names)
        self.units = frozenset(units)
        self.source = tuple(source)
        self.range = tuple(range_)
        self.compose = dict(compose)
        self.inverse = tuple(inverse)
        self.order = frozenset(order)

    def __len__(self):
        return len(self.names)

    def __repr__(self):
        return f"FiniteOrderedGroupoid({len(self)} arrows, {len(self.units)} units)"

    def arrows(self):
        return range(len(self.names))

    def composable(self, a, b):
        return self.source[a] == self.range[b]

    def unit_list(self):
        return sorted(self.units)


def make_groupoid(names, units, source, range_, compose, inverse, order, max_arrows=None):
    """Validate the groupoid axioms and the order, then build the structure."""
    names = list(names)
    n = len(names)
    cap = caps.max_arrows(max_arrows)
    if n > cap:
        raise SizeCapExceeded(f"{n} arrows exceeds cap {cap}")
    if len(set(names)) != n:
        raise InvalidStructure("arrow names must be distinct")
    units = frozenset(units)
    source = list(source)
    range_ = list(range_)
    inverse = list(inverse)
    compose = dict(compose)
    if not units <= set(range(n)):
        raise InvalidStructure("units must be arrows")
    if len(source) != n or len(range_) != n or len(inverse) != n:
        raise InvalidStructure("source, range and inverse must cover all arrows")
    for u in units:
        if source[u] != u or range_[u] != u:
            raise InvalidStructure("units must be their own source and range", witness=(names[u],))
    for a in range(n):
        if source[a] not in units or range_[a] not in units:
            raise InvalidStructure("source and range must be units", witness=(names[a],))
    expected = {(a, b) for a in range(n) for b in range(n) if source[a] == range_[b]}
    if set(compose) != expected:
        bad = set(compose) ^ expected
        raise InvalidStructure(
            "composition must be defined exactly on composable pairs",
            witness=tuple(sorted(bad))[:3],
        )
    for (a, b), c in compose.items():
        if source[c] != source[b] or range_[c] != range_[a]:
            raise InvalidStructure("composite endpoints wrong", witness=(names[a], names[b]))
    for (a, b) in compose:
        for c in range(n):
            if source[b] == range_[c]:
                if compose[(compose[(a, b)], c)] != compose[(a, compose[(b, c)])]:
                    raise InvalidStructure(
                        "composition not associative",
                        witness=(names[a], names[b], names[c]),
                    )
    for a in range(n):
        ia = inverse[a]
        if inverse[ia] != a:
            raise InvalidStructure("inverse not involutive", witness=(names[a],))
        if source[ia] != range_[a] or range_[ia] != source[a]:
            raise InvalidStructure("inverse endpoints wrong", witness=(names[a],))
        if compose[(a, ia)] != range_[a] or compose[(ia, a)] != source[a]:
            raise InvalidStructure("inverse law fails", witness=(names[a],))
        if compose[(a, source[a])] != a or compose[(range_[a], a)] != a:
            raise InvalidStructure("units are not identities", witness=(names[a],))
    order = frozenset(order)
    for (a, b) in order:
        if not (0 <= a < n and 0 <= b < n):
            raise InvalidStructure("order pair out of range", witness=(a, b))
    for a in range(n):
        if (a, a) not in order:
            raise InvalidStructure("order not reflexive", witness=(names[a],))
    for (a, b) in order:
        if a != b and (b, a) in order:
            raise InvalidStructure("order not antisymmetric", witness=(names[a], names[b]))
        for c in range(n):
            if (b, c) in order and (a, c) not in order:
                raise InvalidStructure(
                    "order not transitive", witness=(names[a], names[b], names[c])
                )
    return FiniteOrderedGroupoid(names, units, source, range_, compose, inverse, order)


class Slice:
    """A set of arrows on which both source and range are injective."""

    def __init__(self, groupoid, arrows):
        arrows = frozenset(arrows)
        sources = [groupoid.source[a] for a in arrows]
        if len(set(sources)) != len(sources):
            raise InvalidStructure("slice source map not injective")
        ranges = [groupoid.range[a] for a in arrows]
        if len(set(ranges)) != len(ranges):
            raise InvalidStructure("slice range map not injective")
        self.groupoid = groupoid
        self.arrows = arrows

    def __len__(self):
        return len(self.arrows)

    def __contains__(self, a):
        return a in self.arrows

    def __eq__(self, other):
        return (
            isinstance(other, Slice)
            and self.groupoid is other.groupoid
            and self.arrows == other.arrows
        )

    def __hash__(self):
        return hash(self.arrows)

    def __repr__(self):
        inner = ",".join(self.groupoid.names[a] for a in sorted(self.arrows))
        return f"Slice({{{inner}}})"


def slice_product(U, V):
    """Pointwise composition of slices; always a slice again."""
    if U.groupoid is not V.groupoid:
        raise PreconditionFailed("slices belong to different groupoids")
    G = U.groupoid
    out = {
        G.compose[(a, b)]
        for a in U.arrows
        for b in V.arrows
        if G.composable(a, b)
    }
    return Slice(G, out)


def slice_inverse(U):
    return Slice(U.groupoid, {U.groupoid.inverse[a] for a in U.arrows})


def is_up_slice(G, A):
    """True iff A is a bisection and upward closed in the arrow order."""
    A = frozenset(A)
    sources = [G.source[a] for a in A]
    if len(set(sources)) != len(sources):
        return False
    ranges = [G.range[a] for a in A]
    if len(set(ranges)) != len(ranges):
        return False
    for a in A:
        for b in G.arrows():
            if (a, b) in G.order and b not in A:
                return False
    return True


def _up_slices(G):
    """All up-slices as frozensets, sorted by size then content."""
    n = len(G)
    out = []

    def dfs(start, chosen, used_src, used_rng):
        out.append(frozenset(chosen))
        for a in range(start, n):
            s, r = G.source[a], G.range[a]
            if s in used_src or r in used_rng:
                continue
            dfs(a + 1, chosen + [a], used_src | {s}, used_rng | {r})

    dfs(0, [], frozenset(), frozenset())
    ups = [fs for fs in out if is_up_slice(G, fs)]
    ups.sort(key=lambda fs: (len(fs), sorted(fs)))
    return ups


class SemigroupAction:
    """An inverse semigroup acting on a finite ordered set by partial bijections.

    theta[s] is a dict sending points to points; point_min[x] is the least
    idempotent whose map is defined at x, which names germs canonically.
    Construct through make_action.
    """

    def __init__(self, semigroup, labels, order, theta, point_min):
        self.semigroup = semigroup
        self.labels = tuple(labels)
        self.order = frozenset(order)
        self.theta = tuple(dict(t) for t in theta)
        self.point_min = tuple(point_min)

    def npoints(self):
        return len(self.labels)

    def __repr__(self):
        return f"SemigroupAction({self.semigroup!r} on {len(self.labels)} points)"


def make_action(S, labels, order, theta):
    """Validate an action: partial bijections, multiplicativity, empty zero
    map, inverses acting as inverses, idempotents as partial identities,
    and domains covering the space."""
    labels = list(labels)
    npts = len(labels)
    if len(set(labels)) != npts:
        raise InvalidStructure("point labels must be distinct")
    order = frozenset(order)
    for x in range(npts):
        if (x, x) not in order:
            raise InvalidStructure("space order not reflexive", witness=(labels[x],))
    for (x, y) in order:
        if not (0 <= x < npts and 0 <= y < npts):
            raise InvalidStructure("space order pair out of range", witness=(x, y))
        if x != y and (y, x) in order:
            raise InvalidStructure("space order not antisymmetric", witness=(labels[x], labels[y]))
        for z in range(npts):
            if (y, z) in order and (x, z) not in order:
                raise InvalidStructure("space order not transitive")
    theta = [dict(t) for t in theta]
    if len(theta) != len(S):
        raise InvalidStructure("one partial map per semigroup element required")
    for s, t in enumerate(theta):
        for x, y in t.items():
            if not (0 <= x < npts and 0 <= y < npts):
                raise InvalidStructure("map point out of range", witness=(S.names[s],))
        if len(set(t.values())) != len(t):
            raise InvalidStructure("map not injective", witness=(S.names[s],))
    if theta[S.zero]:
        raise InvalidStructure("zero must act as the empty map")
    for s in S.elements():
        for t in S.elements():
            st = S.mul(s, t)
            composed = {
                x: theta[s][y]
                for x, y in theta[t].items()
                if y in theta[s]
            }
            if composed != theta[st]:
                raise InvalidStructure(
                    "action not multiplicative", witness=(S.names[s], S.names[t])
                )
    for s in S.elements():
        flipped = {y: x for x, y in theta[s].items()}
        if theta[S.inv(s)] != flipped:
            raise InvalidStructure("involution does not act by inverse maps", witness=(S.names[s],))
    for e in S.idempotents:
        if any(x != y for x, y in theta[e].items()):
            raise InvalidStructure("idempotent does not act as a partial identity", witness=(S.names[e],))
    covered = set()
    for t in theta:
        covered |= set(t)
    if covered != set(range(npts)):
        raise InvalidStructure("domains do not cover the space")
    point_min = []
    for x in range(npts):
        found = [e for e in S.idempotents if x in theta[e]]
        m = found[0]
        for e in found[1:]:
            m = S.mul(m, e)
        if x not in theta[m]:
            raise InvalidStructure("domain filter has no minimum", witness=(labels[x],))
        point_min.append(m)
    return SemigroupAction(S, labels, order, theta, point_min)


@functools.lru_cache(maxsize=None)
def canonical_action(S):
    """The action of S on the tight spectrum of its idempotents.

    theta_s sends a point containing s*s to the up-set of s·min·s*, which
    is the filter generated by conjugating the point by s.
    """
    spec = latt.tight_spectrum(S.esl)
    labels = [p.label for p in spec.points]
    theta = []
    for s in S.elements():
        dom_e = S.esl_of(S.dom(s))
        t = {}
        for i, p in enumerate(spec.points):
            if dom_e not in p.members:
                continue
            m = S.sgp_of(p.least)
            u = S.mul(S.mul(s, m), S.inv(s))
            j = spec.point_by_least(S.esl_of(u))
            assert j is not None, "conjugated filter must be tight"
            t[i] = j
        theta.append(t)
    return make_action(S, labels, spec.order, theta)


GermBundle = namedtuple(
    "GermBundle", "groupoid delta germs unit_of_point point_of_unit"
)


def germ_groupoid(action, max_arrows=None):
    """The groupoid of germs of a validated action, with the spectral order.

    Arrows are canonical germ pairs (u, x) with u = s·point_min[x]; two
    germs at x are equal iff their canonical elements agree. The order
    puts (u, x) below (v, y) iff x is below y in the space and some single
    element s represents both germs. Returns the groupoid, the sets
    Delta_s as arrow sets, the germ pairs, and the unit/point bijection.
    """
    S = action.semigroup
    keyset = set()
    for s in S.elements():
        for x in action.theta[s]:
            keyset.add((S.mul(s, action.point_min[x]), x))
    keys = sorted(keyset, key=lambda k: (k[1], k[0]))
    index = {k: i for i, k in enumerate(keys)}
    names = [f"{S.names[u]}@{action.labels[x]}" for u, x in keys]
    unit_of_point = tuple(
        index[(action.point_min[x], x)] for x in range(action.npoints())
    )
    point_of_unit = {unit_of_point[x]: x for x in range(action.npoints())}
    units = set(unit_of_point)
    source = [unit_of_point[x] for u, x in keys]
    range_ = [unit_of_point[action.theta[u][x]] for u, x in keys]
    compose = {}
    for a, (u, y2) in enumerate(keys):
        for b, (v, x) in enumerate(keys):
            if source[a] != range_[b]:
                continue
            w = S.mul(u, v)
            key = (S.mul(w, action.point_min[x]), x)
            compose[(a, b)] = index[key]
    inverse = []
    for u, x in keys:
        y = action.theta[u][x]
        key = (S.mul(S.inv(u), action.point_min[y]), y)
        inverse.append(index[key])
    order = set()
    for a, (u, x) in enumerate(keys):
        for b, (v, y) in enumerate(keys):
            if (x, y) not in action.order:
                continue
            for s in S.elements():
                ts = action.theta[s]
                if x in ts and y in ts:
                    if S.mul(s, action.point_min[x]) == u and S.mul(s, action.point_min[y]) == v:
                        order.add((a, b))
                        break
    delta = tuple(
        frozenset(
            index[(S.mul(s, action.point_min[x]), x)] for x in action.theta[s]
        )
        for s in S.elements()
    )
    G = make_groupoid(names, units, source, range_, compose, inverse, order, max_arrows)
    return GermBundle(G, delta, tuple(keys), unit_of_point, point_of_unit)


TightGroupoidBundle = namedtuple(
    "TightGroupoidBundle",
    "semigroup action spectrum groupoid delta germs unit_of_point point_of_unit",
)


def _set_product(G, A, B):
    return frozenset(
        G.compose[(a, b)] for a in A for b in B if G.composable(a, b)
    )


def _build_tight_groupoid(S, max_arrows):
    action = canonical_action(S)
    spec = latt.tight_spectrum(S.esl)
    gb = germ_groupoid(action, max_arrows)
    G = gb.groupoid
    # canonical representatives are fixed by their filter minimum
    for (u, x) in gb.germs:
        assert S.mul(u, action.point_min[x]) == u, "germ representative not canonical"
    # the regular representation is multiplicative
    for s in S.elements():
        for t in S.elements():
            assert _set_product(G, gb.delta[s], gb.delta[t]) == gb.delta[S.mul(s, t)], (
                "fundamental slices must multiply like the semigroup"
            )
    # sources of Delta_s sweep exactly the points containing s*s
    for s in S.elements():
        pts = {gb.point_of_unit[G.source[a]] for a in gb.delta[s]}
        assert pts == set(spec.d_sets[S.esl_of(S.dom(s))]), (
            "Delta_s must sit over the domain point set"
        )
    # discreteness: a fundamental slice cut to a source fiber is a singleton
    for a, (u, x) in enumerate(gb.germs):
        fiber = {
            b for b in gb.delta[u] if G.source[b] == gb.unit_of_point[x]
        }
        assert fiber == {a}, "singletons must be fundamental slices cut to fibers"
    rep = check_re_axioms(G)
    assert rep["ok"], f"tight groupoid must satisfy the RE axioms: {rep}"
    delta_slices = tuple(Slice(G, fs) for fs in gb.delta)
    return TightGroupoidBundle(
        S, action, spec, G, delta_slices, gb.germs, gb.unit_of_point, gb.point_of_unit
    )


@functools.lru_cache(maxsize=None)
def _tight_groupoid_default(S):
    return _build_tight_groupoid(S, None)


def tight_groupoid(S, max_arrows=None):
    """The tight groupoid of S: canonical action, then germs. Memoized for
    the default cap."""
    if max_arrows is None:
        return _tight_groupoid_default(S)
    return _build_tight_groupoid(S, max_arrows)


def _build_tight_envelope(S, max_arrows, max_elements):
    from . import hom

    bundle = tight_groupoid(S, max_arrows)
    G = bundle.groupoid
    ups = _up_slices(G)
    cap = caps.max_elements(max_elements)
    if len(ups) > cap:
        raise SizeCapExceeded(f"{len(ups)} up-slices exceeds cap {cap}")
    index = {fs: i for i, fs in enumerate(ups)}
    names = [
        "{" + "|".join(G.names[a] for a in sorted(fs)) + "}" for fs in ups
    ]
    table = [
        [index[_set_product(G, A, B)] for B in ups] for A in ups
    ]
    from . import isg as isg_mod

    cpl = isg_mod.validate_inverse_semigroup(names, table, index[frozenset()],
                                             max_elements=max_elements)
    mapping = [index[bundle.delta[s].arrows] for s in S.elements()]
    rho = hom.make_hom(S, cpl, mapping)
    verdict = hom.check_consonance(rho)
    assert verdict["is_consonance"], "the regular representation must be a consonance"
    slices = tuple(Slice(G, fs) for fs in ups)
    return cpl, rho, slices


@functools.lru_cache(maxsize=None)
def _tight_envelope_default(S):
    return _build_tight_envelope(S, None, None)


def tight_envelope(S, max_arrows=None, max_elements=None):
    """All up-slices of the tight groupoid under slice product, with the
    fundamental map s -> Delta_s, asserted to be a consonance.

    Returns (envelope, fundamental hom, slice tuple aligned with envelope
    element order)."""
    if max_arrows is None and max_elements is None:
        return _tight_envelope_default(S)
    return _build_tight_envelope(S, max_arrows, max_elements)


def check_re_axioms(G):
    """The four reverse-Ehresmann axioms, each reported with a witness.

    (a) inversion is monotone; (b) composition is monotone; (c) an arrow
    restricts uniquely upward along its source; (d) same along its range.
    """
    inv_ok, inv_wit = True, None
    for (a, b) in G.order:
        if (G.inverse[a], G.inverse[b]) not in G.order:
            inv_ok, inv_wit = False, (G.names[a], G.names[b])
            break
    comp_ok, comp_wit = True, None
    for (a1, a2) in G.order:
        for (b1, b2) in G.order:
            if G.composable(a1, b1) and G.composable(a2, b2):
                c1 = G.compose[(a1, b1)]
                c2 = G.compose[(a2, b2)]
                if (c1, c2) not in G.order:
                    comp_ok, comp_wit = False, (G.names[a1], G.names[b1], G.names[a2], G.names[b2])
                    break
        if not comp_ok:
            break
    src_ok, src_wit = True, None
    for a in G.arrows():
        for x in G.unit_list():
            if (G.source[a], x) not in G.order:
                continue
            cands = [
                b for b in G.arrows() if (a, b) in G.order and G.source[b] == x
            ]
            if len(cands) != 1:
                src_ok, src_wit = False, (G.names[a], G.names[x], [G.names[c] for c in cands])
                break
        if not src_ok:
            break
    rng_ok, rng_wit = True, None
    for a in G.arrows():
        for x in G.unit_list():
            if (G.range[a], x) not in G.order:
                continue
            cands = [
                b for b in G.arrows() if (a, b) in G.order and G.range[b] == x
            ]
            if len(cands) != 1:
                rng_ok, rng_wit = False, (G.names[a], G.names[x], [G.names[c] for c in cands])
                break
        if not rng_ok:
            break
    return {
        "inverse_monotone": {"ok": inv_ok, "witness": inv_wit},
        "composition_monotone": {"ok": comp_ok, "witness": comp_wit},
        "source_restriction": {"ok": src_ok, "witness": src_wit},
        "range_restriction": {"ok": rng_ok, "witness": rng_wit},
        "ok": inv_ok and comp_ok and src_ok and rng_ok,
    }


def ehresmann_re(S):
    """The nonzero elements of S as an ordered groupoid: composition is the
    product restricted to matching domain and range idempotents, and the
    arrow order is the reverse of the natural order. A fixture with
    genuinely nontrivial order, since tight groupoid orders degenerate."""
    nz = S.nonzero()
    aidx = {s: i for i, s in enumerate(nz)}
    names = [S.names[s] for s in nz]
    units = {aidx[e] for e in S.idempotents if e != S.zero}
    source = [aidx[S.dom(s)] for s in nz]
    range_ = [aidx[S.ran(s)] for s in nz]
    compose = {}
    for i, s in enumerate(nz):
        for j, t in enumerate(nz):
            if S.dom(s) == S.ran(t):
                compose[(i, j)] = aidx[S.mul(s, t)]
    inverse = [aidx[S.inv(s)] for s in nz]
    order = {
        (i, j)
        for i, s in enumerate(nz)
        for j, t in enumerate(nz)
        if S.natural_leq[t][s]
    }
    return make_groupoid(names, units, source, range_, compose, inverse, order,
                         max_arrows=max(len(nz), 1))


FundamentalResult = namedtuple("FundamentalResult", "semigroup slices covers")


def fundamental_inverse_semigroup(G, max_arrows=None, max_elements=None):
    """All up-slices of an RE groupoid under slice product, plus whether
    they cover the arrows."""
    rep = check_re_axioms(G)
    if not rep["ok"]:
        raise PreconditionFailed("groupoid does not satisfy the RE axioms")
    cap = caps.max_arrows(max_arrows)
    if len(G) > cap:
        raise SizeCapExceeded(f"{len(G)} arrows exceeds cap {cap}")
    from . import isg as isg_mod

    ups = _up_slices(G)
    ecap = caps.max_elements(max_elements)
    if len(ups) > ecap:
        raise SizeCapExceeded(f"{len(ups)} up-slices exceeds cap {ecap}")
    index = {fs: i for i, fs in enumerate(ups)}
    names = ["{" + "|".join(G.names[a] for a in sorted(fs)) + "}" for fs in ups]
    table = []
    for A in ups:
        row = []
        for B in ups:
            prod = _set_product(G, A, B)
            if prod not in index:
                raise InvalidStructure(
                    "up-slices not closed under product", witness=(names[index[A]], names[index[B]])
                )
            row.append(index[prod])
        table.append(row)
    U = isg_mod.validate_inverse_semigroup(names, table, index[frozenset()],
                                           max_elements=max_elements)
    covered = set()
    for fs in ups:
        covered |= fs
    covers = covered == set(G.arrows())
    slices = tuple(Slice(G, fs) for fs in ups)
    return FundamentalResult(U, slices, covers)


def reconstruct(G, max_arrows=None, max_elements=None):
    """Rebuild a tight-like groupoid from its up-slices.

    Forms the natural action of the fundamental inverse semigroup on the
    units (each slice maps sources to ranges), takes germs, and verifies
    that sending the germ of (U, x) to the unique member of U with source
    x is an isomorphism of ordered groupoids.
    """
    from . import tlk

    rep = tlk.check_tight_like_groupoid(G)
    if not rep["tight_like"]:
        raise PreconditionFailed("groupoid is not tight-like")
    fund = fundamental_inverse_semigroup(G, max_arrows, max_elements)
    U = fund.semigroup
    unit_arrows = G.unit_list()
    pt_of_unit = {u: i for i, u in enumerate(unit_arrows)}
    labels = [G.names[u] for u in unit_arrows]
    order = {
        (pt_of_unit[a], pt_of_unit[b])
        for (a, b) in G.order
        if a in G.units and b in G.units
    }
    theta = []
    for sl in fund.slices:
        theta.append(
            {pt_of_unit[G.source[a]]: pt_of_unit[G.range[a]] for a in sl.arrows}
        )
    action = make_action(U, labels, order, theta)
    gb = germ_groupoid(action, max_arrows=max(len(G), 1))
    H = gb.groupoid
    failures = []
    mu = []
    for (u_elt, x) in gb.germs:
        slice_arrows = fund.slices[u_elt].arrows
        target_unit = unit_arrows[x]
        hits = [a for a in slice_arrows if G.source[a] == target_unit]
        if len(hits) != 1:
            failures.append(f"no unique member of {U.names[u_elt]} at {labels[x]}")
            mu.append(None)
        else:
            mu.append(hits[0])
    iso = len(H) == len(G) and None not in mu and len(set(mu)) == len(mu)
    if iso:
        for a in H.arrows():
            if mu[H.inverse[a]] != G.inverse[mu[a]]:
                failures.append(f"inversion mismatch at {H.names[a]}")
                iso = False
        for a in H.arrows():
            for b in H.arrows():
                if H.composable(a, b) != G.composable(mu[a], mu[b]):
                    failures.append(f"composability mismatch at {H.names[a]},{H.names[b]}")
                    iso = False
                elif H.composable(a, b) and mu[H.compose[(a, b)]] != G.compose[(mu[a], mu[b])]:
                    failures.append(f"composition mismatch at {H.names[a]},{H.names[b]}")
                    iso = False
                if ((a, b) in H.order) != ((mu[a], mu[b]) in G.order):
                    failures.append(f"order mismatch at {H.names[a]},{H.names[b]}")
                    iso = False
    return {
        "tight_like": True,
        "iso_confirmed": iso,
        "arrow_map": [None if m is None else G.names[m] for m in mu],
        "failures": failures,
        "covers": fund.covers,
    }


def groupoid_iso_search(G, H, max_arrows=None):
    """Deterministic backtracking search for an isomorphism of ordered
    groupoids; returns the arrow map as a list or None."""
    cap = caps.max_arrows(max_arrows)
    if len(G) > cap or len(H) > cap:
        raise SizeCapExceeded("arrow count exceeds cap")
    if len(G) != len(H) or len(G.units) != len(H.units) or len(G.order) != len(H.order):
        return None
    n = len(G)
    g_units = G.unit_list()
    g_nonunits = [a for a in G.arrows() if a not in G.units]
    todo = g_units + g_nonunits
    phi = [None] * n
    used = [False] * n

    def consistent(a, h):
        if (a in G.units) != (h in H.units):
            return False
        sa = phi[G.source[a]]
        if sa is not None and H.source[h] != sa:
            return False
        ra = phi[G.range[a]]
        if ra is not None and H.range[h] != ra:
            return False
        ia = phi[G.inverse[a]]
        if ia is not None and H.inverse[h] != ia:
            return False
        for b in range(n):
            pb = phi[b]
            if pb is None:
                continue
            if G.composable(a, b) != H.composable(h, pb):
                return False
            if G.composable(b, a) != H.composable(pb, h):
                return False
            if G.composable(a, b):
                c = phi[G.compose[(a, b)]]
                if c is not None and H.compose[(h, pb)] != c:
                    return False
            if G.composable(b, a):
                c = phi[G.compose[(b, a)]]
                if c is not None and H.compose[(pb, h)] != c:
                    return False
            if ((a, b) in G.order) != ((h, pb) in H.order):
                return False
            if ((b, a) in G.order) != ((pb, h) in H.order):
                return False
        if ((a, a) in G.order) != ((h, h) in H.order):
            return False
        return True

    def solve(k):
        if k == len(todo):
            return True
        a = todo[k]
        for h in range(n):
            if used[h]:
                continue
            if consistent(a, h):
                phi[a] = h
                used[h] = True
                if solve(k + 1):
                    return True
                phi[a] = None
                used[h] = False
        return False

    if solve(0):
        return list(phi)
    return None
