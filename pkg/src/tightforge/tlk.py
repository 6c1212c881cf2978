"""Axiom checkers for tight-like spaces and tight-like groupoids.

A finite Hausdorff space is discrete, so the topology is fixed to
discrete throughout: every subset is compact and open, closures are
identities, and the axioms below degenerate accordingly. The checkers
stay honest about that degeneration instead of hiding it: reports note
that a passing finite space must carry the trivial order.
"""

from . import caps, gpd, isg, latt
from .errors import InvalidStructure, PreconditionFailed, SizeCapExceeded

DISCRETE_NOTE = (
    "finite Hausdorff spaces are discrete, so dense maximal elements "
    "force every point to be maximal and the order to be trivial"
)


class FiniteOrderedSpace:
    """A finite set of points with a partial order and the discrete
    topology. Construct through make_space."""

    def __init__(self, labels, order):
        self.labels = tuple(labels)
        self.order = frozenset(order)

    def __len__(self):
        return len(self.labels)

    def __repr__(self):
        return f"FiniteOrderedSpace({len(self)} points)"

    def points(self):
        return range(len(self.labels))

    def up_of(self, x):
        """The principal up-set of a point."""
        return frozenset(y for y in self.points() if (x, y) in self.order)

    def maximals(self):
        return [
            x for x in self.points()
            if all((x, y) not in self.order or y == x for y in self.points())
        ]


def make_space(labels, order):
    """Validate a point list and a relation as a finite ordered space."""
    labels = list(labels)
    if len(set(labels)) != len(labels):
        raise InvalidStructure("point labels must be distinct")
    n = len(labels)
    order = set(order)
    for (x, y) in order:
        if not (0 <= x < n and 0 <= y < n):
            raise InvalidStructure("order pair out of range", witness=(x, y))
    for x in range(n):
        if (x, x) not in order:
            raise InvalidStructure("order not reflexive", witness=(labels[x],))
    for (x, y) in order:
        if x != y and (y, x) in order:
            raise InvalidStructure(
                "order not antisymmetric", witness=(labels[x], labels[y])
            )
    for (x, y) in order:
        for z in range(n):
            if (y, z) in order and (x, z) not in order:
                raise InvalidStructure(
                    "order not transitive",
                    witness=(labels[x], labels[y], labels[z]),
                )
    return FiniteOrderedSpace(labels, order)


def space_from_spectrum(E):
    """The tight spectrum of a semilattice as a finite ordered space."""
    spec = latt.tight_spectrum(E)
    return FiniteOrderedSpace(spec.labels(), spec.order)


def check_tight_like_space(X):
    """The three tight-like space axioms, reported one by one.

    (a) every point lies in a compact open up-set: the full space
    qualifies, so this always passes finitely and is checked via the
    principal up-set. (b) points are separated by up-sets: the
    principal up-set of x contains x and excludes every y not above x.
    (c) the maximal elements are dense: discretely, the closure of the
    maximals is the maximals, so every point must be maximal.
    """
    covered_ok, covered_wit = True, None
    for x in X.points():
        if x not in X.up_of(x):
            covered_ok, covered_wit = False, X.labels[x]
            break
    separation_ok, separation_wit = True, None
    for x in X.points():
        up = X.up_of(x)
        for y in X.points():
            if (x, y) in X.order:
                continue
            if x not in up or y in up:
                separation_ok = False
                separation_wit = (X.labels[x], X.labels[y])
                break
        if not separation_ok:
            break
    maximal = set(X.maximals())
    dense_ok = maximal == set(X.points())
    dense_wit = None
    if not dense_ok:
        stray = min(set(X.points()) - maximal)
        dense_wit = X.labels[stray]
    return {
        "compactly_covered": {"ok": covered_ok, "witness": covered_wit},
        "separation": {"ok": separation_ok, "witness": separation_wit},
        "maximals_dense": {"ok": dense_ok, "witness": dense_wit},
        "ok": covered_ok and separation_ok and dense_ok,
        "note": DISCRETE_NOTE,
    }


def _upset_name(X, pts):
    return "{" + "|".join(X.labels[x] for x in sorted(pts)) + "}"


def compact_open_upsets(X, max_elements=None):
    """The semilattice of up-sets of a finite ordered space under
    intersection, with the empty set as zero.

    The count can be exponential in the point count, so the element cap
    applies. Cover tests against set unions are asserted for small
    families before returning.
    """
    E, _ = _upsets_with_semilattice(X, max_elements)
    return E


def _upsets_with_semilattice(X, max_elements=None):
    cap = caps.max_elements(max_elements)
    n = len(X)
    if n > 16:
        raise SizeCapExceeded(f"{n} points would overflow the up-set cap")
    ups = []
    for mask in range(1 << n):
        pts = frozenset(x for x in range(n) if mask >> x & 1)
        if all((x, y) not in X.order or y in pts
               for x in pts for y in X.points()):
            ups.append(pts)
            if len(ups) > cap:
                raise SizeCapExceeded(
                    f"more than {cap} up-sets on {n} points"
                )
    ups.sort(key=lambda fs: (len(fs), sorted(fs)))
    index = {fs: i for i, fs in enumerate(ups)}
    names = [_upset_name(X, fs) for fs in ups]
    meet = [[index[a & b] for b in ups] for a in ups]
    E = latt.validate_semilattice(names, meet, index[frozenset()],
                                  max_elements=max_elements)
    trivial_order = all(x == y for (x, y) in X.order)
    if trivial_order and len(ups) <= 16:
        # on tight-like spaces covers agree with set unions, sampled
        # over small families; false in general for non-trivial orders
        for u, U in enumerate(ups):
            if not U:
                continue
            inside = [v for v, V in enumerate(ups) if V and V <= U]
            fams = [[v] for v in inside]
            fams += [[v, w] for i, v in enumerate(inside)
                     for w in inside[i + 1:]]
            for fam in fams:
                union = frozenset().union(*(ups[v] for v in fam))
                assert latt.is_cover(E, fam, u) == (union == U), (
                    "cover tests must agree with set unions"
                )
    return E, ups


def space_duality(X, max_elements=None):
    """The order-homeomorphism from a tight-like space onto the tight
    spectrum of its up-set semilattice.

    Sends each point to the filter of up-sets containing it; asserts the
    filters are tight, the map is a bijection, and order is preserved
    both ways. Returns the semilattice and the point index table.
    """
    report = check_tight_like_space(X)
    if not report["ok"]:
        raise PreconditionFailed("space fails the tight-like axioms")
    E, ups = _upsets_with_semilattice(X, max_elements)
    spec = latt.tight_spectrum(E)
    members_to_point = {p.members: i for i, p in enumerate(spec.points)}
    table = []
    for x in X.points():
        xi = frozenset(i for i, U in enumerate(ups) if x in U)
        filt = latt.Filter(E, xi)
        assert latt.is_tight_filter(E, filt), (
            "point filters must be tight"
        )
        j = members_to_point.get(xi)
        assert j is not None, "point filters must appear in the spectrum"
        table.append(j)
    assert len(set(table)) == len(table), "point map must be injective"
    assert len(table) == len(spec.points), "point map must be surjective"
    for x in X.points():
        for y in X.points():
            assert ((x, y) in X.order) == \
                ((table[x], table[y]) in spec.order), (
                    "point map must preserve order both ways"
                )
    return {"ok": True, "semilattice": E, "point_map": table}


def unit_space(G):
    """The unit space of an ordered groupoid, with the restricted
    order."""
    units = G.unit_list()
    pos = {u: i for i, u in enumerate(units)}
    order = {
        (pos[a], pos[b])
        for (a, b) in G.order if a in G.units and b in G.units
    }
    return FiniteOrderedSpace([G.names[u] for u in units], order)


def check_tight_like_groupoid(G, max_arrows=None, max_elements=None):
    """Decide whether an ordered groupoid is tight-like.

    Requires the reverse-Ehresmann axioms, a tight-like unit space, and
    that the up-slices jointly cover every arrow. Reports each part.
    """
    re_report = gpd.check_re_axioms(G)
    report = {
        "re": re_report,
        "unit_space": None,
        "covered": None,
        "tight_like": False,
    }
    if not re_report["ok"]:
        return report
    space_report = check_tight_like_space(unit_space(G))
    report["unit_space"] = space_report
    cap = caps.max_arrows(max_arrows)
    if len(G) > cap:
        raise SizeCapExceeded(f"{len(G)} arrows exceeds cap {cap}")
    ups = gpd._up_slices(G)
    ecap = caps.max_elements(max_elements)
    if len(ups) > ecap:
        raise SizeCapExceeded(f"{len(ups)} up-slices exceeds cap {ecap}")
    covered = set()
    for fs in ups:
        covered |= fs
    missing = sorted(set(G.arrows()) - covered)
    report["covered"] = {
        "ok": not missing,
        "witness": G.names[missing[0]] if missing else None,
    }
    report["tight_like"] = space_report["ok"] and not missing
    return report


def _refinement_property(G, slices):
    """Every arrow in an intersection of up-slices sits in an up-slice
    inside the intersection."""
    sets = [sl.arrows for sl in slices]
    for U in sets:
        for V in sets:
            both = U & V
            for c in both:
                if not any(c in W and W <= both for W in sets):
                    return False, G.names[c]
    return True, None


def _match_envelopes(fund, slices, cpl, env_slices):
    """An explicit isomorphism between the fundamental semigroup of a
    tight groupoid and the envelope of its source semigroup, matched by
    arrow sets."""
    env_index = {sl.arrows: i for i, sl in enumerate(env_slices)}
    sigma = []
    for sl in fund.slices:
        i = env_index.get(sl.arrows)
        if i is None:
            return False
        sigma.append(i)
    if len(set(sigma)) != len(env_slices):
        return False
    U = fund.semigroup
    for a in U.elements():
        for b in U.elements():
            if sigma[U.mul(a, b)] != cpl.mul(sigma[a], sigma[b]):
                return False
    return sigma[U.zero] == cpl.zero


def groupoid_duality_roundtrip(X, max_arrows=None, max_elements=None):
    """Round-trip the duality between semigroups and tight-like
    groupoids.

    Given a semilattice or inverse semigroup, forms the tight groupoid,
    checks it is tight-like, matches its fundamental semigroup with the
    tight envelope, and confirms both the searched and the explicit
    reconstruction isomorphisms. Given a groupoid, does the same minus
    the envelope comparison. The fundamental semigroup is also checked
    flat and distributive, and the intersection refinement property is
    verified exhaustively.
    """
    bundle = None
    if isinstance(X, latt.FiniteSemilattice):
        X = isg.from_semilattice(X)
    if isinstance(X, isg.FiniteInverseSemigroup):
        bundle = gpd.tight_groupoid(X, max_arrows)
        G = bundle.groupoid
    else:
        G = X
    tl = check_tight_like_groupoid(G, max_arrows, max_elements)
    report = {
        "tight_like": tl["tight_like"],
        "envelope_matches": None,
        "groupoid_iso": False,
        "reconstruction": False,
        "flat": False,
        "distributive": False,
        "refinement": False,
        "ok": False,
    }
    if not tl["tight_like"]:
        return report
    fund = gpd.fundamental_inverse_semigroup(G, max_arrows, max_elements)
    if bundle is not None:
        cpl, _, env_slices = gpd.tight_envelope(
            bundle.semigroup, max_arrows, max_elements
        )
        report["envelope_matches"] = bool(
            _match_envelopes(fund, fund.slices, cpl, env_slices)
        )
    H = gpd.tight_groupoid(fund.semigroup, max_arrows).groupoid
    report["groupoid_iso"] = (
        gpd.groupoid_iso_search(H, G, max_arrows) is not None
    )
    recon = gpd.reconstruct(G, max_arrows, max_elements)
    report["reconstruction"] = recon["iso_confirmed"]
    cls = isg.classify(fund.semigroup)
    report["flat"] = cls["flat"]
    report["distributive"] = cls["distributive"]
    ref_ok, _ = _refinement_property(G, fund.slices)
    report["refinement"] = ref_ok
    report["ok"] = all(
        report[k] for k in
        ("tight_like", "groupoid_iso", "reconstruction",
         "flat", "distributive", "refinement")
    ) and report["envelope_matches"] is not False
    return report
