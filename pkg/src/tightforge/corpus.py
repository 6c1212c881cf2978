"""Built-in corpus of small structures used by tests and the CLI suite.

Builders are deterministic; the randomized ones take an explicit seed and
use their own Random instance, never the global one.
"""

import random
from itertools import combinations, permutations

from . import isg, latt
from .errors import SizeCapExceeded


def chain(n):
    """The chain 0 < 1 < ... < n-1 under min."""
    names = [str(i) for i in range(n)]
    table = [[min(i, j) for j in range(n)] for i in range(n)]
    return latt.validate_semilattice(names, table, 0)


def antichain_with_zero(k):
    """k pairwise-disjoint atoms over a zero."""
    names = ["0"] + [f"a{i}" for i in range(1, k + 1)]
    n = k + 1
    table = [[i if i == j else 0 for j in range(n)] for i in range(n)]
    return latt.validate_semilattice(names, table, 0)


def crown(k):
    """k pairwise-disjoint atoms with a common top and a zero."""
    names = ["0"] + [f"a{i}" for i in range(1, k + 1)] + ["1"]
    top = k + 1
    n = k + 2

    def mt(i, j):
        if i == j:
            return i
        if i == top:
            return j
        if j == top:
            return i
        return 0

    table = [[mt(i, j) for j in range(n)] for i in range(n)]
    return latt.validate_semilattice(names, table, 0)


def diamond():
    """The four-element semilattice 0 < e, f < 1 with e and f disjoint."""
    names = ["0", "e", "f", "1"]
    table = [
        [0, 0, 0, 0],
        [0, 1, 0, 1],
        [0, 0, 2, 2],
        [0, 1, 2, 3],
    ]
    return latt.validate_semilattice(names, table, 0)


def tree_semilattice(parents, names=None):
    """A rooted tree as a semilattice: the root is zero, x <= y iff x is an
    ancestor of y, and meets are deepest common ancestors.

    parents[i] is the parent of node i; the root points to itself.
    """
    n = len(parents)
    roots = [i for i in range(n) if parents[i] == i]
    if len(roots) != 1:
        raise ValueError("exactly one root required")
    root = roots[0]

    def ancestors(i):
        out = [i]
        while parents[out[-1]] != out[-1]:
            out.append(parents[out[-1]])
        return out

    anc = [ancestors(i) for i in range(n)]
    table = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            common = [a for a in anc[i] if a in anc[j]]
            table[i][j] = common[0]
    if names is None:
        names = [f"t{i}" for i in range(n)]
        names[root] = "0"
    return latt.validate_semilattice(names, table, root)


def intersection_family(sets):
    """A family of finite sets closed under intersection, ordered by inclusion.

    The empty set must be present; it is the zero. Names encode contents.
    """
    family = sorted({frozenset(s) for s in sets}, key=lambda s: (len(s), sorted(s)))
    if frozenset() not in family:
        raise ValueError("family must contain the empty set")
    index = {s: i for i, s in enumerate(family)}
    for a in family:
        for b in family:
            if a & b not in index:
                raise ValueError("family not closed under intersection")
    names = ["0"] + [
        "s" + "".join(str(x) for x in sorted(s)) for s in family if s
    ]
    table = [[index[a & b] for b in family] for a in family]
    return latt.validate_semilattice(names, table, 0)


def pairs_lattice():
    """Empty set, singletons and pairs from a three-point universe, under intersection."""
    base = [frozenset()]
    base += [frozenset({x}) for x in (1, 2, 3)]
    base += [frozenset(p) for p in combinations((1, 2, 3), 2)]
    return intersection_family(base)


def random_meet_closed(rng, universe=4, picks=4, max_size=7):
    """A random intersection-closed family over 1..universe, or None if the
    closure overflows max_size."""
    pool = list(range(1, universe + 1))
    chosen = set()
    for _ in range(picks):
        size = rng.randint(1, universe)
        chosen.add(frozenset(rng.sample(pool, size)))
    family = {frozenset()} | chosen
    grew = True
    while grew:
        grew = False
        for a in list(family):
            for b in list(family):
                if a & b not in family:
                    family.add(a & b)
                    grew = True
    if len(family) > max_size:
        return None
    return intersection_family(family)


def random_semilattices(seed, count):
    """Deterministic list of distinct random intersection-closed semilattices."""
    rng = random.Random(seed)
    out = []
    seen = set()
    while len(out) < count:
        E = random_meet_closed(rng)
        if E is None:
            continue
        signature = (E.names, E.meet)
        if signature in seen:
            continue
        seen.add(signature)
        out.append(E)
    return out


_TREES = {
    "tree_y": [0, 0, 1, 1],
    "tree_broom": [0, 0, 1, 1, 1],
    "tree_twochains": [0, 0, 1, 0, 3],
    "tree_hook": [0, 0, 1, 2, 1],
    "tree_star_chain": [0, 0, 0, 1, 1, 2],
    "tree_deep": [0, 0, 1, 2, 0, 4, 5],
}


def semilattices():
    """The semilattice corpus: at least 30 members, every one with at most 7 elements."""
    out = []
    for n in range(2, 8):
        out.append((f"chain{n}", chain(n)))
    for k in range(2, 7):
        out.append((f"antichain{k}", antichain_with_zero(k)))
    out.append(("diamond", diamond()))
    for k in range(3, 6):
        out.append((f"crown{k}", crown(k)))
    for name, parents in _TREES.items():
        out.append((name, tree_semilattice(parents)))
    out.append(("pairs", pairs_lattice()))
    for i, E in enumerate(random_semilattices(20260819, 10)):
        out.append((f"rand_sl_{i}", E))
    return out


def group_with_zero(names, mult):
    """Adjoin an absorbing zero to a finite group table."""
    n = len(names)
    full = ["0"] + list(names)
    table = [[0] * (n + 1)]
    for i in range(n):
        table.append([0] + [mult[i][j] + 1 for j in range(n)])
    return isg.validate_inverse_semigroup(full, table, 0)


def cyclic_group_with_zero(n):
    names = ["1"] + [f"g{i}" if i > 1 else "g" for i in range(1, n)]
    mult = [[(i + j) % n for j in range(n)] for i in range(n)]
    return group_with_zero(names, mult)


def symmetric_group_with_zero(n):
    """All permutations of 1..n with a zero thrown in."""
    perms = sorted(permutations(range(1, n + 1)))
    names = ["".join(map(str, p)) for p in perms]
    index = {p: i for i, p in enumerate(perms)}
    mult = [
        [index[tuple(p[q[k] - 1] for k in range(n))] for q in perms]
        for p in perms
    ]
    return group_with_zero(names, mult)


def brandt(n):
    """Partial bijections of 1..n of rank at most one."""
    gens = [{i: i + 1} for i in range(1, n)]
    if not gens:
        gens = [{1: 1}]
    return isg.from_partial_bijections(n, gens)


def symmetric_inverse_monoid(n):
    """All partial bijections of 1..n."""
    gens = [{i: i for i in range(1, n + 1)}]
    if n >= 2:
        swap = {i: i for i in range(1, n + 1)}
        swap[1], swap[2] = 2, 1
        gens.append(swap)
        gens.append({i: i for i in range(2, n + 1)})
    if n >= 3:
        cycle = {i: i % n + 1 for i in range(1, n + 1)}
        gens.append(cycle)
    return isg.from_partial_bijections(n, gens, max_elements=64)


def boolean_semilattice(n):
    """All subsets of 1..n under intersection."""
    sets = [frozenset(c)
            for r in range(n + 1) for c in combinations(range(1, n + 1), r)]
    return intersection_family(sets)


def random_partial_bijection_closure(rng, degree=3, max_size=12):
    """Close a couple of random partial injections, or None on overflow."""
    points = list(range(1, degree + 1))
    gens = []
    for _ in range(rng.randint(1, 2)):
        k = rng.randint(1, degree)
        src = rng.sample(points, k)
        dst = rng.sample(points, k)
        gens.append(dict(zip(src, dst)))
    try:
        S = isg.from_partial_bijections(degree, gens, max_elements=max_size)
    except SizeCapExceeded:
        return None
    return gens, S


def random_inverse_semigroups(seed, count, degree=3, max_size=12):
    """Deterministic list of (generators, closure) pairs, distinct and
    nontrivial."""
    rng = random.Random(seed)
    out = []
    seen = set()
    while len(out) < count:
        got = random_partial_bijection_closure(rng, degree, max_size)
        if got is None:
            continue
        gens, S = got
        if len(S) < 3 or S.names in seen:
            continue
        seen.add(S.names)
        out.append((gens, S))
    return out


def relabeled_copy(S, prefix):
    """The same inverse semigroup with every element renamed."""
    return isg.validate_inverse_semigroup(
        [prefix + name for name in S.names],
        [list(row) for row in S.product],
        S.zero,
    )


def inverse_semigroups():
    """The inverse semigroup corpus: at least 10 members, none above 12
    elements."""
    out = [
        ("chain3_sgp", isg.from_semilattice(chain(3))),
        ("diamond_sgp", isg.from_semilattice(diamond())),
        ("boolean8_sgp", isg.from_semilattice(boolean_semilattice(3))),
        ("brandt2", brandt(2)),
        ("brandt3", brandt(3)),
        ("sim2", symmetric_inverse_monoid(2)),
        ("z2_zero", cyclic_group_with_zero(2)),
        ("z3_zero", cyclic_group_with_zero(3)),
        ("s3_zero", symmetric_group_with_zero(3)),
    ]
    for i, (gens, S) in enumerate(random_inverse_semigroups(20260819, 3)):
        out.append((f"rand_pb_{i}", S))
    return out


def consonant_pairs():
    """Corpus pairs whose tight groupoids are order-isomorphic."""
    return [
        ("sim2", "brandt2"),
        ("chain3_sgp", "chain2_sgp"),
        ("diamond_sgp", "antichain2_sgp"),
    ]


def dissonant_pairs():
    """Corpus pairs distinguished by tight groupoid invariants."""
    return [
        ("chain3_sgp", "diamond_sgp"),
        ("sim2", "chain3_sgp"),
        ("z2_zero", "z3_zero"),
    ]


def hom_pool():
    """The structures the pair names above refer to."""
    pool = dict(inverse_semigroups())
    pool["chain2_sgp"] = isg.from_semilattice(chain(2))
    pool["antichain2_sgp"] = isg.from_semilattice(antichain_with_zero(2))
    return pool


def enumerate_homs(dom, cod, dom_mul, cod_mul, fixed=None):
    """All multiplicative maps dom -> cod by backtracking, as index
    tuples. fixed maps domain indices to forced values (zero to zero,
    say); tables are plain callables so semilattices, inverse semigroups
    and plain tables all fit."""
    n = len(dom.names)
    m = len(cod.names)
    fixed = dict(fixed or {})
    out = []
    assignment = [None] * n

    def consistent(k):
        for i in range(k + 1):
            for j in range(k + 1):
                p = dom_mul(i, j)
                if p <= k and cod_mul(assignment[i], assignment[j]) != assignment[p]:
                    return False
        return True

    def extend(k):
        if k == n:
            out.append(tuple(assignment))
            return
        choices = [fixed[k]] if k in fixed else range(m)
        for v in choices:
            assignment[k] = v
            if consistent(k):
                extend(k + 1)
        assignment[k] = None

    extend(0)
    return out


def semilattice_homs(dom, cod, require_zero=True):
    fixed = {dom.zero: cod.zero} if require_zero else None
    return enumerate_homs(
        dom, cod,
        lambda i, j: dom.meet[i][j],
        lambda i, j: cod.meet[i][j],
        fixed,
    )


def isg_homs(dom, cod):
    return enumerate_homs(
        dom, cod,
        lambda i, j: dom.product[i][j],
        lambda i, j: cod.product[i][j],
        {dom.zero: cod.zero},
    )
