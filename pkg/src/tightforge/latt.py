"""Finite meet semilattices with zero.

Elements are indices into a name list; the binary meet is a full n-by-n
table. The derived order is e <= f iff meet(e, f) = e. On top of that sit
covers, filters, the tight order, and the tight spectrum.
"""

import functools

from . import caps
from .errors import InvalidStructure, PreconditionFailed, SizeCapExceeded, ZeroTarget


class FiniteSemilattice:
    """A validated finite meet semilattice with least element.

    Construct through validate_semilattice; the constructor assumes the
    axioms already hold. Instances are immutable by convention and are
    compared and hashed by identity so results can be memoized per table.
    """

    def __init__(self, names, meet, zero):
        self.names = tuple(names)
        self.meet = tuple(tuple(row) for row in meet)
        self.zero = zero
        n = len(self.names)
        self.leq = tuple(
            tuple(self.meet[e][f] == e for f in range(n)) for e in range(n)
        )
        self._below = tuple(
            tuple(e for e in range(n) if self.leq[e][f]) for f in range(n)
        )

    def __len__(self):
        return len(self.names)

    def __repr__(self):
        return f"FiniteSemilattice({len(self)} elements, zero={self.names[self.zero]!r})"

    def index(self, name):
        try:
            return self.names.index(name)
        except ValueError:
            raise InvalidStructure("unknown element name", witness=(name,))

    def elements(self):
        return range(len(self.names))

    def nonzero(self):
        return [e for e in self.elements() if e != self.zero]

    def below(self, f):
        """All elements e with e <= f, zero included."""
        return self._below[f]

    def up_set(self, m):
        return frozenset(e for e in self.elements() if self.leq[m][e])

    def atoms(self):
        """Minimal nonzero elements."""
        out = []
        for e in self.nonzero():
            if all(g == e or g == self.zero for g in self.below(e)):
                out.append(e)
        return out


def validate_semilattice(names, meet_table, zero, max_elements=None):
    """Check the meet-table axioms and return the validated structure.

    Raises InvalidStructure with a witness on the first violated axiom:
    idempotency, commutativity, associativity, or zero absorption. The
    derived order being a partial order with minimum zero follows from
    these, as does meet(e, f) being the greatest lower bound.
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
    if not isinstance(zero, int) or not 0 <= zero < n:
        raise InvalidStructure("zero must be an element index", witness=(zero,))
    table = [list(row) for row in meet_table]
    if len(table) != n or any(len(row) != n for row in table):
        raise InvalidStructure("meet table must be n by n")
    for row in table:
        for v in row:
            if not isinstance(v, int) or not 0 <= v < n:
                raise InvalidStructure("meet table entry out of range", witness=(v,))
    for e in range(n):
        if table[e][e] != e:
            raise InvalidStructure("meet not idempotent", witness=(names[e],))
    for e in range(n):
        for f in range(e + 1, n):
            if table[e][f] != table[f][e]:
                raise InvalidStructure(
                    "meet not commutative", witness=(names[e], names[f])
                )
    for e in range(n):
        for f in range(n):
            ef = table[e][f]
            for g in range(n):
                if table[ef][g] != table[e][table[f][g]]:
                    raise InvalidStructure(
                        "meet not associative", witness=(names[e], names[f], names[g])
                    )
    for e in range(n):
        if table[zero][e] != zero:
            raise InvalidStructure("zero not absorbing", witness=(names[e],))
    return FiniteSemilattice(names, table, zero)


def is_cover(E, C, f):
    """Decide whether the set C covers f: every nonzero g <= f meets some c in C.

    f must be nonzero (ZeroTarget otherwise) and C must sit inside the
    down-set of f (PreconditionFailed otherwise).
    """
    if f == E.zero:
        raise ZeroTarget("covers are defined for nonzero targets only")
    C = list(C)
    for c in C:
        if not E.leq[c][f]:
            raise PreconditionFailed(
                f"cover candidate {E.names[c]!r} is not below {E.names[f]!r}"
            )
    for g in E.below(f):
        if g == E.zero:
            continue
        if all(E.meet[g][c] == E.zero for c in C):
            return False
    return True


def tight_leq(E, e, f):
    """The tight order: e is tightly below f iff no nonzero g <= e is disjoint from f."""
    for g in E.below(e):
        if g != E.zero and E.meet[g][f] == E.zero:
            return False
    return True


def tight_equiv(E, e, f):
    """Tight equivalence: tightly below in both directions."""
    return tight_leq(E, e, f) and tight_leq(E, f, e)


class Filter:
    """A filter: a nonempty, zero-free, meet-closed, upward-closed subset.

    Finiteness forces every filter to be the up-set of its least element,
    so the least element is computed and stored at construction.
    """

    def __init__(self, base, members):
        members = frozenset(members)
        if not members:
            raise InvalidStructure("filter must be nonempty")
        least = None
        for e in members:
            least = e if least is None else base.meet[least][e]
        if least == base.zero:
            raise InvalidStructure(
                "filter contains zero or is not meet-closed",
                witness=tuple(sorted(base.names[e] for e in members)),
            )
        if members != base.up_set(least):
            missing = sorted(base.up_set(least) - members)
            extra = sorted(members - base.up_set(least))
            raise InvalidStructure(
                "filter is not an up-set of its least element",
                witness=(
                    [base.names[e] for e in missing],
                    [base.names[e] for e in extra],
                ),
            )
        self.base = base
        self.members = members
        self.least = least

    @property
    def label(self):
        return "^" + self.base.names[self.least]

    def __contains__(self, e):
        return e in self.members

    def __eq__(self, other):
        return (
            isinstance(other, Filter)
            and self.base is other.base
            and self.members == other.members
        )

    def __hash__(self):
        return hash(self.members)

    def __repr__(self):
        return f"Filter({self.label})"


def principal_filter(E, m):
    """The up-set of a nonzero element, as a Filter."""
    if m == E.zero:
        raise InvalidStructure("filters cannot contain zero")
    return Filter(E, E.up_set(m))


def filters(E):
    """All filters, in least-element order, each flagged ultra.

    A filter is ultra iff it is maximal, which for principal filters of a
    finite semilattice means its least element is an atom.
    """
    atom_set = set(E.atoms())
    out = []
    for m in E.nonzero():
        out.append((principal_filter(E, m), m in atom_set))
    return out


def is_tight_filter(E, xi):
    """Tightness of a filter.

    xi is tight iff for every f in xi the complement-in-the-down-set
    {e <= f : e not in xi, e nonzero} fails to cover f. Testing only this
    maximal avoiding set suffices: any avoiding cover extends to it, and
    covers of f stay covers under enlargement within the down-set of f.
    """
    for f in xi.members:
        avoid = [e for e in E.below(f) if e not in xi.members and e != E.zero]
        if is_cover(E, avoid, f):
            return False
    return True


class TightSpectrum:
    """The tight filters of a semilattice, with their inclusion order and D-map.

    points: tuple of Filters, sorted by least element index.
    order: frozenset of index pairs (i, j) with points[i] included in points[j].
    d_sets: for each element e, the frozenset of point indices containing e.
    """

    def __init__(self, base, points):
        self.base = base
        self.points = tuple(points)
        self.order = frozenset(
            (i, j)
            for i, p in enumerate(self.points)
            for j, q in enumerate(self.points)
            if p.members <= q.members
        )
        self.d_sets = tuple(
            frozenset(i for i, p in enumerate(self.points) if e in p)
            for e in base.elements()
        )
        self._by_least = {p.least: i for i, p in enumerate(self.points)}

    def __len__(self):
        return len(self.points)

    def labels(self):
        return [p.label for p in self.points]

    def point_by_least(self, m):
        """Index of the point whose least element is m, or None."""
        return self._by_least.get(m)

    def __repr__(self):
        return f"TightSpectrum({len(self)} points over {self.base!r})"


@functools.lru_cache(maxsize=None)
def tight_spectrum(E):
    """All tight filters with inclusion order and the sets D_e.

    The tight points are computed from the tightness definition and then
    asserted to coincide with the ultra filters, which is forced in the
    finite case. Inclusion between distinct tight points never holds here,
    but the order is computed honestly rather than assumed discrete.
    """
    flagged = filters(E)
    tight = [flt for flt, _ultra in flagged if is_tight_filter(E, flt)]
    ultra = [flt for flt, is_ultra in flagged if is_ultra]
    assert set(tight) == set(ultra), "tight filters must equal ultra filters here"
    tight.sort(key=lambda flt: flt.least)
    return TightSpectrum(E, tight)
