"""Finite inverse semigroups with zero.

Elements are indices into a name list; the product is a full n-by-n table.
Validation derives the involution, the idempotent semilattice and the
natural order. On top sit the tight order, compatibility, joins, the
flat/distributive classification, and the tight quotient.

Partial bijections compose like functions: product(f, g) applies g first.
"""

import functools
from itertools import combinations

from . import caps, latt
from .errors import InvalidStructure, SizeCapExceeded


class FiniteInverseSemigroup:
    """A validated finite inverse semigroup with zero.

    Construct through validate_inverse_semigroup or from_partial_bijections.
    Immutable by convention; identity-based hashing keeps memoized results
    tied to the instance.
    """

    def __init__(self, names, product, zero, star, idempotents, esl, esl_index):
        self.names = tuple(names)
        self.product = tuple(tuple(row) for row in product)
        self.zero = zero
        self.star = tuple(star)
        self.idempotents = tuple(idempotents)
        self.esl = esl
        self.esl_index = dict(esl_index)
        n = len(self.names)
        self.natural_leq = tuple(
            tuple(self.product[t][self.dom(s)] == s for t in range(n))
            for s in range(n)
        )

    def __len__(self):
        return len(self.names)

    def __repr__(self):
        return f"FiniteInverseSemigroup({len(self)} elements)"

    def index(self, name):
        try:
            return self.names.index(name)
        except ValueError:
            raise InvalidStructure("unknown element name", witness=(name,))

    def elements(self):
        return range(len(self.names))

    def nonzero(self):
        return [s for s in self.elements() if s != self.zero]

    def mul(self, s, t):
        return self.product[s][t]

    def inv(self, s):
        return self.star[s]

    def dom(self, s):
        """The domain idempotent star(s)·s."""
        return self.product[self.star[s]][s]

    def ran(self, s):
        """The range idempotent s·star(s)."""
        return self.product[s][self.star[s]]

    def is_idempotent(self, s):
        return self.product[s][s] == s

    def esl_of(self, s):
        """Position of an idempotent in the semilattice view."""
        return self.esl_index[s]

    def sgp_of(self, e):
        """Semigroup index of a semilattice-view element."""
        return self.idempotents[e]


def validate_inverse_semigroup(names, product_table, zero, max_elements=None):
    """Check the inverse-semigroup axioms and return the validated structure.

    Verifies associativity, absorbing zero at the given index, existence and
    uniqueness of generalized inverses, the involution laws, and that the
    idempotents commute and form a valid semilattice.
    """
    names = list(names)
    n = len(names)
    if n == 0:
        raise InvalidStructure("no elements")
    if len(set(names)) != n:
        raise InvalidStructure("element names must be distinct")
    cap = caps.max_elements(max_elements)
    if n > cap:
        raise SizeCapExceeded(f"{n} elements exceeds cap {cap}")
    table = [list(row) for row in product_table]
    if len(table) != n or any(len(row) != n for row in table):
        raise InvalidStructure("product table must be n by n")
    for row in table:
        for v in row:
            if not isinstance(v, int) or not 0 <= v < n:
                raise InvalidStructure("product table entry out of range", witness=(v,))
    if not isinstance(zero, int) or not 0 <= zero < n:
        raise InvalidStructure("zero must be an element index", witness=(zero,))
    for s in range(n):
        if table[zero][s] != zero or table[s][zero] != zero:
            raise InvalidStructure(
                "no zero behavior at the given index", witness=(names[s],)
            )
    for a in range(n):
        for b in range(n):
            ab = table[a][b]
            for c in range(n):
                if table[ab][c] != table[a][table[b][c]]:
                    raise InvalidStructure(
                        "product not associative",
                        witness=(names[a], names[b], names[c]),
                    )
    star = []
    for s in range(n):
        cands = [
            t
            for t in range(n)
            if table[table[s][t]][s] == s and table[table[t][s]][t] == t
        ]
        if not cands:
            raise InvalidStructure("missing generalized inverse", witness=(names[s],))
        if len(cands) > 1:
            raise InvalidStructure(
                "ambiguous generalized inverse",
                witness=(names[s], tuple(names[t] for t in cands)),
            )
        star.append(cands[0])
    for s in range(n):
        if star[star[s]] != s:
            raise InvalidStructure("involution not involutive", witness=(names[s],))
        for t in range(n):
            if star[table[s][t]] != table[star[t]][star[s]]:
                raise InvalidStructure(
                    "involution not an antihomomorphism", witness=(names[s], names[t])
                )
    idempotents = [e for e in range(n) if table[e][e] == e]
    for e in idempotents:
        for f in idempotents:
            if table[e][f] != table[f][e]:
                raise InvalidStructure(
                    "idempotents do not commute", witness=(names[e], names[f])
                )
    esl_index = {e: i for i, e in enumerate(idempotents)}
    meet = [[esl_index[table[e][f]] for f in idempotents] for e in idempotents]
    esl = latt.validate_semilattice(
        [names[e] for e in idempotents], meet, esl_index[zero],
        max_elements=max_elements,
    )
    return FiniteInverseSemigroup(names, table, zero, star, idempotents, esl, esl_index)


@functools.lru_cache(maxsize=None)
def from_semilattice(E):
    """View a finite semilattice as an inverse semigroup of idempotents."""
    return validate_inverse_semigroup(E.names, E.meet, E.zero)


def _check_partial_map(degree, gen):
    pairs = sorted(dict(gen).items())
    for a, b in pairs:
        if not (1 <= a <= degree and 1 <= b <= degree):
            raise InvalidStructure("partial map point out of range", witness=(a, b))
    values = [b for _, b in pairs]
    if len(set(values)) != len(values):
        raise InvalidStructure("partial map not injective", witness=tuple(pairs))
    return frozenset(pairs)


def _compose_maps(f, g):
    """f after g, both as frozensets of (source, target) pairs."""
    fd = dict(f)
    return frozenset((x, fd[y]) for x, y in g if y in fd)


def _map_name(pairs):
    return "[" + ",".join(f"{a}>{b}" for a, b in sorted(pairs)) + "]"


def from_partial_bijections(degree, generators, max_elements=None):
    """Close a generating set of partial bijections of {1..degree} under
    composition and inversion, with the empty map adjoined as zero."""
    cap = caps.max_elements(max_elements)
    elems = {frozenset()}
    for gen in generators:
        elems.add(_check_partial_map(degree, gen))
    grew = True
    while grew:
        grew = False
        current = list(elems)
        for f in current:
            inv = frozenset((b, a) for a, b in f)
            if inv not in elems:
                elems.add(inv)
                grew = True
        current = list(elems)
        for f in current:
            for g in current:
                fg = _compose_maps(f, g)
                if fg not in elems:
                    elems.add(fg)
                    grew = True
        if len(elems) > cap:
            raise SizeCapExceeded(f"closure exceeds cap {cap}")
    ordered = sorted(elems, key=lambda m: (len(m), sorted(m)))
    index = {m: i for i, m in enumerate(ordered)}
    names = [_map_name(m) for m in ordered]
    table = [[index[_compose_maps(f, g)] for g in ordered] for f in ordered]
    return validate_inverse_semigroup(names, table, 0, max_elements=max_elements)


@functools.lru_cache(maxsize=None)
def tight_leq_s(S, s, t):
    """The tight order: decided through the maximal agreement set.

    s is tightly below t iff the idempotents e below s*s with se = te form
    a cover of s*s. Any cover witnessing the relation sits inside this set,
    and covers survive enlargement within the down-set, so testing the
    maximal set alone is enough. s = 0 holds vacuously.
    """
    if s == S.zero:
        return True
    ss = S.dom(s)
    ss_e = S.esl_of(ss)
    agreement = [
        S.esl_of(e)
        for e in S.idempotents
        if S.esl.leq[S.esl_of(e)][ss_e] and S.mul(s, e) == S.mul(t, e)
    ]
    return latt.is_cover(S.esl, agreement, ss_e)


def tight_equiv_s(S, s, t):
    return tight_leq_s(S, s, t) and tight_leq_s(S, t, s)


def _compatible(S, s, t):
    """Pairwise compatibility, with the three equivalent forms cross-asserted."""
    form1 = S.is_idempotent(S.mul(s, S.inv(t))) and S.is_idempotent(
        S.mul(S.inv(s), t)
    )
    e = S.mul(S.dom(s), S.dom(t))
    f = S.mul(S.ran(s), S.ran(t))
    form2 = S.mul(s, e) == S.mul(t, e) and S.mul(f, s) == S.mul(f, t)
    form3 = S.mul(s, S.dom(t)) == S.mul(t, S.dom(s)) and S.mul(
        S.ran(s), t
    ) == S.mul(S.ran(t), s)
    assert form1 == form2 == form3, "compatibility characterizations disagree"
    return form1


def _least_upper_bound(S, up_masks, candidates_mask):
    """Index of the least element of the upper-bound mask, or None.

    At most one element u of the mask can satisfy mask <= up(u), so the
    scan stops at the first hit.
    """
    mask = candidates_mask
    while mask:
        low = mask & -mask
        u = low.bit_length() - 1
        if candidates_mask & ~up_masks[u] == 0:
            return u
        mask ^= low
    return None


@functools.lru_cache(maxsize=None)
def _up_masks(S):
    n = len(S)
    masks = []
    for s in range(n):
        m = 0
        for t in range(n):
            if S.natural_leq[s][t]:
                m |= 1 << t
        masks.append(m)
    return tuple(masks)


def join_of(S, elements):
    """Least upper bound in the natural order, or None."""
    up = _up_masks(S)
    mask = (1 << len(S)) - 1
    for s in elements:
        mask &= up[s]
    return _least_upper_bound(S, up, mask)


def compatibility_and_join(S, elements):
    """Pairwise compatibility of a set, and its join when one exists."""
    elems = sorted(set(elements))
    compatible = all(
        _compatible(S, s, t) for s, t in combinations(elems, 2)
    )
    return {"pairwise_compatible": compatible, "join": join_of(S, elems)}


def classify(S, max_subset_size=None):
    """Flatness, existence of finite joins, and distributivity.

    Flat means the tight order adds nothing to the natural order. Joins
    and distributivity are checked over every pairwise-compatible subset
    when the semigroup has at most 12 elements; above that, join existence
    is checked over compatible subsets of bounded size (default 4) and the
    distributive law over compatible pairs, which propagates to the larger
    verified joins by splitting them into nested binary joins.
    """
    n = len(S)
    flat = True
    for s in range(n):
        for t in range(n):
            if tight_leq_s(S, s, t) != S.natural_leq[s][t]:
                flat = False
                break
        if not flat:
            break

    up = _up_masks(S)
    full = (1 << n) - 1
    compat_mask = []
    for s in range(n):
        m = 0
        for t in range(n):
            if _compatible(S, s, t):
                m |= 1 << t
        compat_mask.append(m)

    exhaustive = n <= 12
    depth_cap = n if exhaustive else (4 if max_subset_size is None else max_subset_size)

    has_joins = True
    distributive = True
    joins_found = []

    def emit(subset, ub_mask):
        nonlocal has_joins, distributive
        j = _least_upper_bound(S, up, ub_mask)
        if j is None:
            has_joins = False
            distributive = False
            return False
        if exhaustive or len(subset) == 2:
            joins_found.append((tuple(subset), j))
        return True

    def dfs(start, subset, ub_mask, allowed):
        if not has_joins:
            return
        for x in range(start, n):
            if not allowed & (1 << x):
                continue
            new_subset = subset + [x]
            new_ub = ub_mask & up[x]
            if not emit(new_subset, new_ub):
                return
            if len(new_subset) < depth_cap:
                dfs(x + 1, new_subset, new_ub, allowed & compat_mask[x])

    dfs(0, [], full, full)

    if has_joins:
        for subset, j in joins_found:
            for r in range(n):
                left_imgs = [S.mul(r, x) for x in subset]
                lub = join_of(S, left_imgs)
                if lub is None or lub != S.mul(r, j):
                    distributive = False
                    break
                right_imgs = [S.mul(x, r) for x in subset]
                rub = join_of(S, right_imgs)
                if rub is None or rub != S.mul(j, r):
                    distributive = False
                    break
            if not distributive:
                break

    return {"flat": flat, "has_finite_joins": has_joins, "distributive": distributive}


def tight_quotient(S):
    """The quotient of S by tight equivalence, realized on the regular
    tight representation: elements are the distinct slices Delta_s of the
    tight groupoid, named after their least constituent.

    Returns the quotient and the quotient homomorphism; the quotient is
    asserted flat.
    """
    from . import gpd, hom

    bundle = gpd.tight_groupoid(S)
    by_slice = {}
    for s in S.elements():
        by_slice.setdefault(bundle.delta[s].arrows, []).append(s)
    classes = sorted(by_slice.values(), key=min)
    class_of = {}
    for i, cls in enumerate(classes):
        for s in cls:
            class_of[s] = i
    names = [min(S.names[s] for s in cls) for cls in classes]
    reps = [cls[0] for cls in classes]
    table = [
        [class_of[S.mul(a, b)] for b in reps]
        for a in reps
    ]
    Q = validate_inverse_semigroup(names, table, class_of[S.zero])
    mapping = [class_of[s] for s in S.elements()]
    q = hom.make_hom(S, Q, mapping)
    assert classify(Q)["flat"], "tight quotient must be flat"
    return Q, q
