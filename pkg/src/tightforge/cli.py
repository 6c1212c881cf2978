"""Command line interface: JSON documents in, verdict reports out.

Commands exit 0 when the computed property holds, 1 when it fails (the
report carries a witness), and 2 on malformed input. Reports are JSON on
stdout; DOT output replaces the report under --dot.
"""

import argparse
import json
import sys

from . import corpus, fsp, gpd, hom, isg, latt, tlk
from .errors import InputError, TightforgeError

KINDS = (
    "semilattice",
    "inverse_semigroup",
    "partial_bijections",
    "hom",
    "ordered_groupoid",
    "ordered_space",
)


def _require(doc, field, kind):
    if field not in doc:
        raise InputError(f"{kind} document missing field {field!r}")
    return doc[field]


def _string_list(value, kind, field):
    if not isinstance(value, list) or not all(
        isinstance(x, str) and x for x in value
    ):
        raise InputError(f"{kind}.{field} must be a list of nonempty strings")
    return value


def _name_index(names, kind, field):
    index = {}
    for i, name in enumerate(names):
        if name in index:
            raise InputError(f"{kind}.{field} repeats name {name!r}")
        index[name] = i
    return index


def _resolve(index, name, kind, field):
    if name not in index:
        raise InputError(f"{kind}.{field} references unknown name {name!r}")
    return index[name]


def _name_table(doc, field, index, kind, allow_null=False):
    rows = _require(doc, field, kind)
    n = len(index)
    if not isinstance(rows, list) or len(rows) != n:
        raise InputError(f"{kind}.{field} must be a {n}x{n} table")
    table = []
    for row in rows:
        if not isinstance(row, list) or len(row) != n:
            raise InputError(f"{kind}.{field} must be a {n}x{n} table")
        out = []
        for cell in row:
            if cell is None and allow_null:
                out.append(None)
            else:
                out.append(_resolve(index, cell, kind, field))
        table.append(out)
    return table


def _pair_list(doc, field, index, kind):
    pairs = _require(doc, field, kind)
    if not isinstance(pairs, list):
        raise InputError(f"{kind}.{field} must be a list of name pairs")
    out = set()
    for pair in pairs:
        if not isinstance(pair, list) or len(pair) != 2:
            raise InputError(f"{kind}.{field} entries must be [a, b] pairs")
        out.add((
            _resolve(index, pair[0], kind, field),
            _resolve(index, pair[1], kind, field),
        ))
    return out


def _parse_semilattice(doc, max_elements):
    names = _string_list(_require(doc, "elements", "semilattice"),
                         "semilattice", "elements")
    index = _name_index(names, "semilattice", "elements")
    zero = _resolve(index, _require(doc, "zero", "semilattice"),
                    "semilattice", "zero")
    meet = _name_table(doc, "meet", index, "semilattice")
    return latt.validate_semilattice(names, meet, zero,
                                     max_elements=max_elements)


def _parse_inverse_semigroup(doc, max_elements):
    names = _string_list(_require(doc, "elements", "inverse_semigroup"),
                         "inverse_semigroup", "elements")
    index = _name_index(names, "inverse_semigroup", "elements")
    zero = _resolve(index, _require(doc, "zero", "inverse_semigroup"),
                    "inverse_semigroup", "zero")
    product = _name_table(doc, "product", index, "inverse_semigroup")
    return isg.validate_inverse_semigroup(names, product, zero,
                                          max_elements=max_elements)


def _parse_partial_bijections(doc, max_elements):
    degree = _require(doc, "degree", "partial_bijections")
    if not isinstance(degree, int) or degree < 1:
        raise InputError("partial_bijections.degree must be a positive integer")
    raw = _require(doc, "generators", "partial_bijections")
    if not isinstance(raw, list) or not raw:
        raise InputError("partial_bijections.generators must be a nonempty list")
    generators = []
    for gen in raw:
        if not isinstance(gen, list):
            raise InputError(
                "partial_bijections generators must be lists of [src, dst] pairs")
        pairs = {}
        for pair in gen:
            if (not isinstance(pair, list) or len(pair) != 2
                    or not all(isinstance(p, int) for p in pair)):
                raise InputError(
                    "partial_bijections generator entries must be [src, dst] integer pairs")
            src, dst = pair
            if not (1 <= src <= degree and 1 <= dst <= degree):
                raise InputError(
                    f"partial_bijections point {pair} outside 1..{degree}")
            if src in pairs:
                raise InputError(
                    f"partial_bijections generator repeats source {src}")
            pairs[src] = dst
        generators.append(pairs)
    return isg.from_partial_bijections(degree, generators,
                                       max_elements=max_elements)


def _parse_hom(doc, max_elements, max_arrows):
    dom = parse_structure(_require(doc, "domain", "hom"),
                          max_elements, max_arrows)
    cod = parse_structure(_require(doc, "codomain", "hom"),
                          max_elements, max_arrows)
    table = _require(doc, "map", "hom")
    if not isinstance(table, dict):
        raise InputError("hom.map must be an object of element name pairs")
    dom_index = {name: i for i, name in enumerate(dom.names)}
    cod_index = {name: i for i, name in enumerate(cod.names)}
    mapping = []
    for name in dom.names:
        if name not in table:
            raise InputError(f"hom.map missing domain element {name!r}")
        mapping.append(_resolve(cod_index, table[name], "hom", "map"))
    for name in table:
        if name not in dom_index:
            raise InputError(f"hom.map references unknown domain element {name!r}")
    return hom.make_hom(dom, cod, mapping)


def _parse_groupoid(doc, max_arrows):
    names = _string_list(_require(doc, "arrows", "ordered_groupoid"),
                         "ordered_groupoid", "arrows")
    index = _name_index(names, "ordered_groupoid", "arrows")
    units = {
        _resolve(index, u, "ordered_groupoid", "units")
        for u in _string_list(_require(doc, "units", "ordered_groupoid"),
                              "ordered_groupoid", "units")
    }
    source = [_resolve(index, s, "ordered_groupoid", "source")
              for s in _require(doc, "source", "ordered_groupoid")]
    range_ = [_resolve(index, r, "ordered_groupoid", "range")
              for r in _require(doc, "range", "ordered_groupoid")]
    if len(source) != len(names) or len(range_) != len(names):
        raise InputError(
            "ordered_groupoid source and range must list one unit per arrow")
    table = _name_table(doc, "compose", index, "ordered_groupoid",
                        allow_null=True)
    compose = {}
    for a, row in enumerate(table):
        for b, cell in enumerate(row):
            if cell is not None:
                compose[(a, b)] = cell
    inverse = [_resolve(index, i, "ordered_groupoid", "inverse")
               for i in _require(doc, "inverse", "ordered_groupoid")]
    if len(inverse) != len(names):
        raise InputError("ordered_groupoid inverse must list one arrow per arrow")
    order = _pair_list(doc, "order", index, "ordered_groupoid")
    order |= {(a, a) for a in range(len(names))}
    return gpd.make_groupoid(names, units, source, range_, compose, inverse,
                             order, max_arrows=max_arrows)


def _parse_space(doc):
    labels = _string_list(_require(doc, "points", "ordered_space"),
                          "ordered_space", "points")
    index = _name_index(labels, "ordered_space", "points")
    order = _pair_list(doc, "order", index, "ordered_space")
    order |= {(x, x) for x in range(len(labels))}
    return tlk.make_space(labels, order)


def parse_structure(doc, max_elements=None, max_arrows=None):
    """Build the structure a document describes, validating as it goes."""
    if not isinstance(doc, dict):
        raise InputError("document must be a JSON object")
    kind = _require(doc, "kind", "structure")
    if kind == "semilattice":
        return _parse_semilattice(doc, max_elements)
    if kind == "inverse_semigroup":
        return _parse_inverse_semigroup(doc, max_elements)
    if kind == "partial_bijections":
        return _parse_partial_bijections(doc, max_elements)
    if kind == "hom":
        return _parse_hom(doc, max_elements, max_arrows)
    if kind == "ordered_groupoid":
        return _parse_groupoid(doc, max_arrows)
    if kind == "ordered_space":
        return _parse_space(doc)
    raise InputError(f"unknown document kind {kind!r}; expected one of {KINDS}")


def semilattice_document(E):
    return {
        "kind": "semilattice",
        "elements": list(E.names),
        "zero": E.names[E.zero],
        "meet": [[E.names[c] for c in row] for row in E.meet],
    }


def inverse_semigroup_document(S):
    return {
        "kind": "inverse_semigroup",
        "elements": list(S.names),
        "zero": S.names[S.zero],
        "product": [[S.names[c] for c in row] for row in S.product],
    }


def groupoid_document(G):
    n = len(G)
    compose = [[None] * n for _ in range(n)]
    for (a, b), c in G.compose.items():
        compose[a][b] = G.names[c]
    return {
        "kind": "ordered_groupoid",
        "arrows": list(G.names),
        "units": [G.names[u] for u in sorted(G.units)],
        "source": [G.names[s] for s in G.source],
        "range": [G.names[r] for r in G.range],
        "compose": compose,
        "inverse": [G.names[i] for i in G.inverse],
        "order": sorted(
            [G.names[a], G.names[b]] for a, b in G.order if a != b
        ),
    }


def space_document(X):
    return {
        "kind": "ordered_space",
        "points": list(X.labels),
        "order": sorted(
            [X.labels[x], X.labels[y]] for x, y in X.order if x != y
        ),
    }


def structure_document(obj):
    """The document for a structure built by this package."""
    if isinstance(obj, latt.FiniteSemilattice):
        return semilattice_document(obj)
    if isinstance(obj, isg.FiniteInverseSemigroup):
        return inverse_semigroup_document(obj)
    if isinstance(obj, gpd.FiniteOrderedGroupoid):
        return groupoid_document(obj)
    if isinstance(obj, tlk.FiniteOrderedSpace):
        return space_document(obj)
    raise InputError(f"no document form for {type(obj).__name__}")


def export_dot(G):
    """Deterministic DOT text for an ordered groupoid.

    Units become nodes; each non-unit arrow and its inverse share one
    edge carrying both germ labels, drawn double-headed. Order pairs
    between distinct units come out dashed.
    """
    lines = ["digraph groupoid {"]
    for u in sorted(G.units):
        lines.append(f'    "{G.names[u]}";')
    done = set()
    for a in G.arrows():
        if a in G.units or a in done:
            continue
        b = G.inverse[a]
        done.add(a)
        done.add(b)
        src = G.names[G.source[a]]
        dst = G.names[G.range[a]]
        if b == a:
            lines.append(f'    "{src}" -> "{dst}" [label="{G.names[a]}"];')
        else:
            label = f"{G.names[a]} / {G.names[b]}"
            lines.append(
                f'    "{src}" -> "{dst}" [label="{label}", dir=both];')
    for a, b in sorted(G.order):
        if a != b and a in G.units and b in G.units:
            lines.append(
                f'    "{G.names[a]}" -> "{G.names[b]}" [style=dashed];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _jsonable(value):
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (set, frozenset)):
        return sorted(_jsonable(v) for v in value)
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def _read_document(path):
    if path is None or path == "-":
        text = sys.stdin.read()
        where = "stdin"
    else:
        try:
            with open(path, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read {path}: {exc.strerror}")
        where = path
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(
            f"{where}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}")


def _as_semigroup(obj):
    if isinstance(obj, latt.FiniteSemilattice):
        return isg.from_semilattice(obj)
    if isinstance(obj, isg.FiniteInverseSemigroup):
        return obj
    raise InputError("this command needs a semilattice or inverse semigroup")


def _cmd_validate(args):
    doc = _read_document(args.document)
    obj = parse_structure(doc, args.max_elements, args.max_arrows)
    report = {"command": "validate", "kind": doc["kind"], "ok": True}
    if hasattr(obj, "names"):
        report["size"] = len(obj.names)
    elif hasattr(obj, "labels"):
        report["size"] = len(obj.labels)
    else:
        report["size"] = len(obj.dom.names)
    return 0, report


def _cmd_tight_spectrum(args):
    doc = _read_document(args.document)
    obj = parse_structure(doc, args.max_elements, args.max_arrows)
    if isinstance(obj, isg.FiniteInverseSemigroup):
        E = obj.esl
    elif isinstance(obj, latt.FiniteSemilattice):
        E = obj
    else:
        raise InputError("tight-spectrum needs a semilattice or inverse semigroup")
    spectrum = latt.tight_spectrum(E)
    labels = spectrum.labels()
    return 0, {
        "command": "tight-spectrum",
        "points": labels,
        "order": sorted(
            [labels[a], labels[b]] for a, b in spectrum.order if a != b
        ),
    }


def _cmd_tight_order(args):
    doc = _read_document(args.document)
    obj = parse_structure(doc, args.max_elements, args.max_arrows)
    report = {"command": "tight-order", "left": args.left, "right": args.right}
    if isinstance(obj, latt.FiniteSemilattice):
        index = {name: i for i, name in enumerate(obj.names)}
        e = _resolve(index, args.left, "semilattice", "elements")
        f = _resolve(index, args.right, "semilattice", "elements")
        holds = latt.tight_leq(obj, e, f)
        report["natural"] = obj.leq[e][f]
        if not holds:
            # the defeating element: nonzero, below e, disjoint from f
            witness = next(
                g for g in obj.below(e)
                if g != obj.zero and obj.meet[g][f] == obj.zero
            )
            report["witness"] = obj.names[witness]
    elif isinstance(obj, isg.FiniteInverseSemigroup):
        index = {name: i for i, name in enumerate(obj.names)}
        s = _resolve(index, args.left, "inverse_semigroup", "elements")
        t = _resolve(index, args.right, "inverse_semigroup", "elements")
        holds = isg.tight_leq_s(obj, s, t)
        report["natural"] = obj.natural_leq[s][t]
        if not holds:
            agreement = [
                obj.esl.names[obj.esl_index[e]]
                for e in obj.idempotents
                if obj.mul(s, e) == obj.mul(t, e)
            ]
            report["witness"] = {"agreement": sorted(agreement)}
    else:
        raise InputError("tight-order needs a semilattice or inverse semigroup")
    report["holds"] = holds
    return (0 if holds else 1), report


def _cmd_groupoid(args):
    doc = _read_document(args.document)
    S = _as_semigroup(parse_structure(doc, args.max_elements, args.max_arrows))
    bundle = gpd.tight_groupoid(S, args.max_arrows)
    if args.dot:
        return 0, export_dot(bundle.groupoid)
    return 0, {
        "command": "groupoid",
        "groupoid": groupoid_document(bundle.groupoid),
        "units": [bundle.groupoid.names[u]
                  for u in sorted(bundle.groupoid.units)],
    }


def _cmd_envelope(args):
    doc = _read_document(args.document)
    S = _as_semigroup(parse_structure(doc, args.max_elements, args.max_arrows))
    cpl, rho, _ = gpd.tight_envelope(S, args.max_arrows, args.max_elements)
    return 0, {
        "command": "envelope",
        "envelope": inverse_semigroup_document(cpl),
        "fundamental_map": {
            S.names[s]: cpl.names[rho.mapping[s]] for s in S.elements()
        },
    }


def _cmd_quotient(args):
    doc = _read_document(args.document)
    S = _as_semigroup(parse_structure(doc, args.max_elements, args.max_arrows))
    Q, q = isg.tight_quotient(S)
    return 0, {
        "command": "quotient",
        "quotient": inverse_semigroup_document(Q),
        "map": {S.names[s]: Q.names[q.mapping[s]] for s in S.elements()},
    }


def _cmd_check_hom(args):
    doc = _read_document(args.document)
    h = parse_structure(doc, args.max_elements, args.max_arrows)
    if not isinstance(h, hom.SemigroupHom):
        raise InputError("check-hom needs a hom document")
    verdict = hom.is_tight_hom(h)
    report = {"command": "check-hom"}
    report.update(_jsonable(verdict))
    return (0 if verdict["tight"] else 1), report


def _cmd_check_consonance(args):
    doc = _read_document(args.document)
    h = parse_structure(doc, args.max_elements, args.max_arrows)
    if not isinstance(h, hom.SemigroupHom):
        raise InputError("check-consonance needs a hom document")
    verdict = hom.check_consonance(h)
    report = {"command": "check-consonance"}
    report.update(_jsonable(verdict))
    return (0 if verdict["is_consonance"] else 1), report


def _cmd_consonant(args):
    S1 = _as_semigroup(parse_structure(
        _read_document(args.first), args.max_elements, args.max_arrows))
    S2 = _as_semigroup(parse_structure(
        _read_document(args.second), args.max_elements, args.max_arrows))
    u1 = len(latt.tight_spectrum(S1.esl))
    u2 = len(latt.tight_spectrum(S2.esl))
    verdict = hom.decide_consonant(S1, S2, via=args.via)
    report = {
        "command": "consonant",
        "consonant": verdict["consonant"],
        "units": [u1, u2],
    }
    if verdict["consonant"]:
        report["mediator_size"] = len(verdict["mediator"].names)
    else:
        report["witness"] = {
            "reason": "no tight groupoid isomorphism",
            "units": [u1, u2],
        }
    return (0 if verdict["consonant"] else 1), report


def _cmd_duality(args):
    doc = _read_document(args.document)
    obj = parse_structure(doc, args.max_elements, args.max_arrows)
    report = {"command": "duality", "kind": doc["kind"]}
    if isinstance(obj, tlk.FiniteOrderedSpace):
        check = tlk.check_tight_like_space(obj)
        report["tight_like"] = check["ok"]
        if not check["ok"]:
            report["witness"] = _jsonable(
                {k: v for k, v in check.items() if k not in ("ok", "note")})
            return 1, report
        result = tlk.space_duality(obj, args.max_elements)
        report["ok"] = result["ok"]
        report["semilattice"] = list(result["semilattice"].names)
        return (0 if result["ok"] else 1), report
    if isinstance(obj, latt.FiniteSemilattice):
        result = tlk.space_duality(
            tlk.space_from_spectrum(obj), args.max_elements)
        report["ok"] = result["ok"]
        report["points"] = len(result["point_map"])
        return (0 if result["ok"] else 1), report
    if isinstance(obj, (isg.FiniteInverseSemigroup,
                        gpd.FiniteOrderedGroupoid)):
        result = tlk.groupoid_duality_roundtrip(
            obj, args.max_arrows, args.max_elements)
    else:
        raise InputError("duality does not apply to hom documents")
    report.update(_jsonable(result))
    return (0 if result["ok"] else 1), report


def _cmd_full_spectrum(args):
    doc = _read_document(args.document)
    obj = parse_structure(doc, args.max_elements, args.max_arrows)
    if not isinstance(obj, latt.FiniteSemilattice):
        raise InputError("full-spectrum needs a semilattice document")
    P = fsp.from_semilattice(obj)
    characters = fsp.full_spectrum(P)
    return 0, {
        "command": "full-spectrum",
        "characters": [c.label for c in characters],
        "kills_zero": [c.kills_zero for c in characters],
    }


def _suite_checks(seed):
    """One (instance, check, ok, detail) row per suite check."""
    rows = []
    for name, E in corpus.semilattices():
        spectrum = latt.tight_spectrum(E)
        rows.append((name, "spectrum", True, f"points={len(spectrum)}"))
        dual = tlk.space_duality(tlk.space_from_spectrum(E))
        rows.append((name, "space_duality", dual["ok"], ""))
        ok = all(
            latt.tight_leq(E, e, e)
            and all(
                not (latt.tight_leq(E, e, f) and latt.tight_leq(E, f, g))
                or latt.tight_leq(E, e, g)
                for f in E.elements() for g in E.elements()
            )
            for e in E.elements()
        )
        rows.append((name, "tight_order_preorder", ok, ""))
    members = corpus.inverse_semigroups()
    members += [
        (f"suite_rand_{i}", S)
        for i, (_, S) in enumerate(corpus.random_inverse_semigroups(seed, 2))
    ]
    for name, S in members:
        shape = isg.classify(S)
        rows.append((
            name, "classify", True,
            "flat={flat} joins={has_finite_joins} dist={distributive}".format(
                **shape),
        ))
        Q, q = isg.tight_quotient(S)
        quotient_ok = hom.check_consonance(q)["is_consonance"]
        rows.append((name, "quotient_consonant", quotient_ok,
                     f"size={len(Q)}"))
        cpl, rho, _ = gpd.tight_envelope(S)
        envelope_shape = isg.classify(cpl)
        envelope_ok = (envelope_shape["flat"]
                       and envelope_shape["distributive"]
                       and hom.check_consonance(rho)["is_consonance"])
        rows.append((name, "envelope_flat_distributive", envelope_ok,
                     f"size={len(cpl)}"))
        if len(S) <= 8:
            trip = tlk.groupoid_duality_roundtrip(S)
            rows.append((name, "duality_roundtrip", trip["ok"], ""))
    rows.sort(key=lambda r: (r[0], r[1]))
    return rows


def _cmd_suite(args):
    rows = _suite_checks(args.seed)
    failures = [r for r in rows if not r[2]]
    return (0 if not failures else 1), {
        "command": "suite",
        "seed": args.seed,
        "checks": [
            {"instance": n, "check": c, "ok": ok, "detail": d}
            for n, c, ok, d in rows
        ],
        "total": len(rows),
        "failures": len(failures),
    }


def _cmd_gen_corpus(args):
    if args.count < 1:
        raise InputError("--count must be positive")
    if args.degree < 1:
        raise InputError("--degree must be positive")
    built = corpus.random_inverse_semigroups(
        args.seed, args.count, degree=args.degree)
    return 0, {
        "command": "gen-corpus",
        "seed": args.seed,
        "count": args.count,
        "degree": args.degree,
        "structures": [inverse_semigroup_document(S) for _, S in built],
    }


def build_parser():
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--max-elements", type=int, default=None,
                        help="element cap for constructions (default 64)")
    shared.add_argument("--max-arrows", type=int, default=None,
                        help="arrow cap for groupoid constructions (default 16)")
    parser = argparse.ArgumentParser(
        prog="tightforge",
        description="Exact computations with tight orders, tight spectra, "
                    "tight groupoids, and consonances of finite semilattices "
                    "and inverse semigroups.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add(name, handler, help_text, document=True):
        p = sub.add_parser(name, parents=[shared], help=help_text)
        if document:
            p.add_argument("document", nargs="?", default=None,
                           help="input document path (default: stdin)")
        p.set_defaults(handler=handler)
        return p

    add("validate", _cmd_validate, "parse and validate a document")
    add("tight-spectrum", _cmd_tight_spectrum,
        "tight spectrum points and their order")
    p = sub.add_parser("tight-order", parents=[shared],
                       help="decide whether one element is tightly below another")
    p.add_argument("left", help="element name expected below")
    p.add_argument("right", help="element name expected above")
    p.add_argument("document", nargs="?", default=None,
                   help="input document path (default: stdin)")
    p.set_defaults(handler=_cmd_tight_order)
    p = add("groupoid", _cmd_groupoid, "emit the tight groupoid")
    p.add_argument("--dot", action="store_true",
                   help="emit DOT instead of a JSON report")
    add("envelope", _cmd_envelope, "emit the tight envelope")
    add("quotient", _cmd_quotient, "emit the tight quotient")
    add("check-hom", _cmd_check_hom, "verdict on tightness of a hom")
    add("check-consonance", _cmd_check_consonance,
        "verdict on consonance of a hom")
    p = sub.add_parser("consonant", parents=[shared],
                       help="decide consonance of two structures")
    p.add_argument("first", help="first structure document path")
    p.add_argument("second", help="second structure document path")
    p.add_argument("--via", default="auto",
                   choices=("auto", "envelope", "generated"),
                   help="mediator construction to use")
    p.set_defaults(handler=_cmd_consonant)
    add("duality", _cmd_duality,
        "duality verdict for a space, semilattice, semigroup, or groupoid")
    add("full-spectrum", _cmd_full_spectrum,
        "all multiplicative characters of a semilattice")
    p = sub.add_parser("suite", parents=[shared],
                       help="run the property-check suite over the built-in corpus")
    p.add_argument("--seed", type=int, default=0,
                   help="seed for the randomized corpus extension")
    p.set_defaults(handler=_cmd_suite)
    p = sub.add_parser("gen-corpus", parents=[shared],
                       help="generate random partial-bijection closures")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--degree", type=int, default=3)
    p.set_defaults(handler=_cmd_gen_corpus)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        code, report = args.handler(args)
    except TightforgeError as exc:
        payload = {"ok": False, "error": str(exc)}
        witness = getattr(exc, "witness", None)
        if witness is not None:
            payload["witness"] = _jsonable(witness)
        print(json.dumps(payload, indent=2), file=sys.stderr)
        return 2
    if isinstance(report, str):
        sys.stdout.write(report)
    else:
        print(json.dumps(report, indent=2))
    return code


if __name__ == "__main__":
    sys.exit(main())
