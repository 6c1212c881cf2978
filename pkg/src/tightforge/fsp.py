"""Full spectra of semilattices with the zero requirement dropped.

Characters here are arbitrary nonzero two-valued homomorphisms, so a
support may swallow an absorbing element if the table has one; a flag
on each character records whether it kills that element, which recovers
the zero-respecting semantics of the rest of the library.
"""

from .errors import InvalidStructure, PreconditionFailed


class PlainSemilattice:
    """A finite commutative idempotent table, zero optional and unused.

    Construct through make_plain or from_semilattice. The zero attribute
    records an absorbing element when one exists, purely as metadata.
    """

    def __init__(self, names, meet, zero):
        self.names = tuple(names)
        self.meet = tuple(tuple(row) for row in meet)
        self.zero = zero

    def __len__(self):
        return len(self.names)

    def __repr__(self):
        return f"PlainSemilattice({len(self)} elements)"

    def elements(self):
        return range(len(self.names))

    def leq(self, e, f):
        return self.meet[e][f] == e


def make_plain(names, meet_table):
    """Validate a meet table without requiring a zero element."""
    names = list(names)
    n = len(names)
    if n == 0:
        raise InvalidStructure("a semilattice needs at least one element")
    if len(set(names)) != n:
        raise InvalidStructure("element names must be distinct")
    meet = [list(row) for row in meet_table]
    if len(meet) != n or any(len(row) != n for row in meet):
        raise InvalidStructure("meet table must be square")
    for row in meet:
        for v in row:
            if not (0 <= v < n):
                raise InvalidStructure("meet value out of range", witness=(v,))
    for e in range(n):
        if meet[e][e] != e:
            raise InvalidStructure("meet not idempotent", witness=(names[e],))
        for f in range(n):
            if meet[e][f] != meet[f][e]:
                raise InvalidStructure(
                    "meet not commutative", witness=(names[e], names[f])
                )
            for g in range(n):
                if meet[meet[e][f]][g] != meet[e][meet[f][g]]:
                    raise InvalidStructure(
                        "meet not associative",
                        witness=(names[e], names[f], names[g]),
                    )
    zero = None
    for z in range(n):
        if all(meet[z][f] == z for f in range(n)):
            zero = z
            break
    return PlainSemilattice(names, meet, zero)


def from_semilattice(E):
    """Reuse a zero-bearing semilattice, ignoring its zero."""
    return PlainSemilattice(E.names, E.meet, E.zero)


class Character:
    """A nonzero two-valued homomorphism, stored by its support."""

    def __init__(self, base, support):
        self.base = base
        self.support = frozenset(support)
        self.kills_zero = (
            None if base.zero is None else base.zero not in self.support
        )

    def __call__(self, e):
        return 1 if e in self.support else 0

    @property
    def label(self):
        return "<" + ",".join(
            self.base.names[e] for e in sorted(self.support)
        ) + ">"

    def __eq__(self, other):
        return (isinstance(other, Character)
                and self.base is other.base
                and self.support == other.support)

    def __hash__(self):
        return hash(self.support)

    def __repr__(self):
        return f"Character({self.label})"


def full_spectrum(E):
    """All characters of a plain semilattice.

    A support is any nonempty subset closed upward and under meets; the
    correspondence between characters and supports is one to one, which
    the enumeration asserts.
    """
    n = len(E.names)
    out = []
    for mask in range(1, 1 << n):
        sup = {e for e in range(n) if mask >> e & 1}
        meet_closed = all(E.meet[e][f] in sup for e in sup for f in sup)
        up_closed = all(f in sup
                        for e in sup for f in range(n) if E.leq(e, f))
        if meet_closed and up_closed:
            out.append(Character(E, sup))
    out.sort(key=lambda c: (len(c.support), sorted(c.support)))
    assert len({c.support for c in out}) == len(out), (
        "characters must be determined by their supports"
    )
    return out


class PlainHom:
    """A multiplicative map between plain semilattices; zero behavior is
    deliberately unconstrained."""

    def __init__(self, dom, cod, mapping):
        self.dom = dom
        self.cod = cod
        self.mapping = tuple(mapping)

    def __call__(self, e):
        return self.mapping[e]

    def __repr__(self):
        return f"PlainHom({self.dom!r} -> {self.cod!r})"


def make_plain_hom(dom, cod, mapping):
    mapping = list(mapping)
    if len(mapping) != len(dom.names):
        raise InvalidStructure(
            "map table length does not match the domain",
            witness=(len(mapping), len(dom.names)),
        )
    for v in mapping:
        if not (0 <= v < len(cod.names)):
            raise InvalidStructure("map value out of range", witness=(v,))
    for e in dom.elements():
        for f in dom.elements():
            if mapping[dom.meet[e][f]] != cod.meet[mapping[e]][mapping[f]]:
                raise InvalidStructure(
                    "map not multiplicative",
                    witness=(dom.names[e], dom.names[f]),
                )
    return PlainHom(dom, cod, mapping)


def full_dual(h):
    """The partial dual of a plain hom.

    Returns the list of codomain characters whose pullback is nonzero,
    and the table sending each of them to the index of its pullback in
    the domain spectrum.
    """
    dom_chars = full_spectrum(h.dom)
    cod_chars = full_spectrum(h.cod)
    dom_index = {c.support: i for i, c in enumerate(dom_chars)}
    defined = []
    table = {}
    for j, psi in enumerate(cod_chars):
        pre = frozenset(
            e for e in h.dom.elements() if h.mapping[e] in psi.support
        )
        if not pre:
            continue
        i = dom_index.get(pre)
        assert i is not None, "a nonzero pullback must be a character"
        defined.append(j)
        table[j] = i
    return defined, table


def theorem_13_2(h):
    """Three equivalent readings of when a plain hom dualizes to a
    homeomorphism of full spectra.

    Computes each condition independently, asserts they agree, and
    returns the shared value with a witness on failure. At finite scale
    the homeomorphism condition adds nothing beyond bijectivity, which
    is exactly what the equivalence asserts.
    """
    n_dom, n_cod = len(h.dom.names), len(h.cod.names)
    iso = n_dom == n_cod and len(set(h.mapping)) == n_dom
    iso_witness = None
    if not iso:
        if len(set(h.mapping)) != n_dom:
            seen = {}
            for e, v in enumerate(h.mapping):
                if v in seen:
                    iso_witness = (h.dom.names[seen[v]], h.dom.names[e])
                    break
                seen[v] = e
        else:
            missing = min(set(range(n_cod)) - set(h.mapping))
            iso_witness = (h.cod.names[missing],)
    dom_chars = full_spectrum(h.dom)
    cod_chars = full_spectrum(h.cod)
    defined, table = full_dual(h)
    total = len(defined) == len(cod_chars)
    dual_witness = None
    if not total:
        j = min(set(range(len(cod_chars))) - set(defined))
        dual_witness = cod_chars[j].label
    injective = len(set(table.values())) == len(table)
    surjective = set(table.values()) == set(range(len(dom_chars)))
    bijective = total and injective and surjective
    if total and not bijective and dual_witness is None:
        if not injective:
            hits = {}
            for j, i in table.items():
                if i in hits:
                    dual_witness = (cod_chars[hits[i]].label,
                                    cod_chars[j].label)
                    break
                hits[i] = j
        else:
            i = min(set(range(len(dom_chars))) - set(table.values()))
            dual_witness = dom_chars[i].label
    homeomorphism = bijective
    assert iso == bijective == homeomorphism, (
        "the three conditions must agree on finite semilattices"
    )
    return {
        "iso": iso,
        "dual_total_and_bijective": bijective,
        "dual_total_and_homeomorphism": homeomorphism,
        "value": iso,
        "iso_witness": iso_witness,
        "dual_witness": dual_witness,
    }
