"""Command line front end: ``ietlang <command> ...``.

Verdicts (including negative ones) exit with status 0; malformed input or a
failed precondition exits with status 2 and the error on stderr.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import construct, derive, iet, language, words
from .words import OrderPair, TotalOrder


def _word_list(text: str) -> list[str]:
    if text.startswith("@"):
        raw = Path(text[1:]).read_text().replace(",", "\n").split()
    else:
        raw = text.split(",")
    out = [w.strip() for w in raw if w.strip()]
    if not out:
        raise ValueError("no words given")
    return out


def _pair(text):
    return OrderPair.parse(text)


def _add_language_flags(p, required=True):
    g = p.add_argument_group("language")
    src = g.add_mutually_exclusive_group(required=required)
    src.add_argument("--words", help="comma separated words, or @file; the language is their factors")
    src.add_argument("--power", metavar="WORD", help="factors of WORD repeated forever")
    src.add_argument("--lang", metavar="FILE", help="language spec (JSON)")
    src.add_argument("--iet", metavar="FILE", help="natural coding of the IET in FILE")
    g.add_argument("--closure-reversal", action="store_true", help="add the reversals of --words")
    g.add_argument("--depth", type=int, help="materialization depth")


def _language(args) -> language.FactorialLanguage:
    if args.words:
        ws = _word_list(args.words)
        if args.closure_reversal:
            ws += [w[::-1] for w in ws]
        depth = args.depth or max(len(w) for w in ws)
        return language.build_language(language.FiniteWords(ws), depth, cap=max(64, depth))
    if args.power:
        depth = args.depth or 2 * len(args.power) + 2
        return language.build_language(language.PowerWord(args.power), depth, cap=max(64, depth))
    if args.iet:
        T = iet.load_iet(args.iet)
        return language.build_language(language.IetCoding(T), args.depth or 16, cap=max(64, args.depth or 0))
    spec = json.loads(Path(args.lang).read_text())
    return language.language_from_spec(spec, Path(args.lang).parent, args.depth)


def _emit(args, text: str, data) -> None:
    if getattr(args, "json", False):
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        print(text)


def _write_or_print(args, spec: dict) -> None:
    text = json.dumps(spec, indent=2)
    if getattr(args, "output", None):
        Path(args.output).write_text(text + "\n")
    print(text)


def _verdict_data(v: language.OrderVerdict) -> dict:
    if v.holds:
        return {"holds": True}
    (x, y), (x2, y2) = v.edges
    return {"holds": False, "bispecial": v.word, "edges": [[x, y], [x2, y2]]}


# -- commands ------------------------------------------------------------------------


def cmd_bwt(args):
    out = words.bwt(args.word, TotalOrder.parse(args.order))
    _emit(args, out, {"word": args.word, "order": args.order, "bwt": out})


def cmd_cluster(args):
    if args.pair:
        pair = _pair(args.pair)
    elif args.order:
        d = TotalOrder.parse(args.order)
        pair = OrderPair(d.reversed(), d)
    else:
        raise ValueError("give --pair or --order (perfect clustering)")
    ok = words.clusters_for(args.word, pair)
    _emit(args, "true" if ok else "false", {"word": args.word, "pair": str(pair), "clusters": ok})


def cmd_pairs(args):
    found = sorted(str(p) for p in words.clustering_pairs(args.word, args.alphabet))
    _emit(args, "\n".join(found) if found else "none", {"word": args.word, "pairs": found})


def cmd_order_check(args):
    L = _language(args)
    if args.all_pairs:
        found = sorted(str(p) for p in language.order_pairs_satisfying(L, args.maxlen, args.alphabet))
        _emit(args, "\n".join(found) if found else "none", {"pairs": found})
        return
    if not args.pair:
        raise ValueError("give --pair or --all-pairs")
    v = language.order_condition(L, _pair(args.pair), args.maxlen)
    _emit(args, v.describe(), _verdict_data(v))


def cmd_connections(args):
    L = _language(args)
    found = language.connections(L, _pair(args.pair), args.maxlen)
    _emit(args, "\n".join(str(c) for c in found) if found else "none",
          {"connections": [[c.word, c.a, c.a2, c.b, c.b2] for c in found]})


def cmd_returns(args):
    L = _language(args)
    found = sorted(language.return_words(L, args.word, args.kind), key=lambda u: (len(u), u))
    _emit(args, "\n".join(found), {"word": args.word, "kind": args.kind, "returns": found})


def cmd_derive_orders(args):
    res = derive.derived_orders(args.word, _word_list(args.returns), _pair(args.pair), args.kind)
    lines = [str(res.pair), str(res.morphism)]
    lines += [f"{a}{b}: t={t} u={u}" for (a, b), (t, u) in sorted(res.indices.items())]
    _emit(args, "\n".join(lines), {
        "pair": str(res.pair),
        "morphism": res.morphism.as_dict(),
        "indices": {f"{a}{b}": [t, u] for (a, b), (t, u) in res.indices.items()},
    })


def cmd_apply_morphism(args):
    out = derive.apply_morphism(derive.Morphism.parse(args.morphism), args.word)
    _emit(args, out, {"image": out})


def cmd_rich(args):
    L = _language(args)
    v = language.richness_check(L, args.maxlen)
    text = "rich" if v else f"not rich: full return {v.full_return!r} to palindrome {v.palindrome!r}"
    _emit(args, text, {"rich": v.rich, "palindrome": v.palindrome, "full_return": v.full_return})


def cmd_palcx(args):
    L = _language(args)
    top = args.n if args.n is not None else L.depth
    rows = [(n, language.palindromic_complexity(L, n), language.factor_complexity(L, n)) for n in range(top + 1)]
    _emit(args, "\n".join(f"{n} {pc} {p}" for n, pc, p in rows),
          {"rows": [{"n": n, "pc": pc, "p": p} for n, pc, p in rows]})


def cmd_iet_make(args):
    T = iet.make_standard(_pair(args.pair), args.lengths.split(","))
    _write_or_print(args, iet.iet_to_spec(T))


def cmd_iet_cylinder(args):
    J = iet.cylinder(iet.load_iet(args.iet), args.word)
    _emit(args, "empty" if J.empty else str(J), {"word": args.word, "cylinder": J.to_spec(), "empty": J.empty})


def cmd_iet_factors(args):
    levels = iet.coding_factors(iet.load_iet(args.iet), args.n)
    _emit(args, "\n".join(f"{n}: {' '.join(sorted(levels[n]))}" for n in range(1, args.n + 1)),
          {"levels": [sorted(level) for level in levels]})


def cmd_iet_induce(args):
    res = iet.induce(iet.load_iet(args.iet), args.word, args.cap)
    _write_or_print(args, iet.induced_to_spec(res))


def cmd_saturate(args):
    L = _language(args)
    pair = _pair(args.pair)
    g = language.extension_graph(L, args.word, pair)
    if args.symmetric:
        h = language.extension_graph(L, args.word[::-1], pair)
        g, _ = construct.saturate(g, g if args.word == args.word[::-1] else h)
    else:
        g = construct.saturate(g)
    edges = [f"{x}{args.word}{y}" for x, y in g.sorted_edges()]
    _emit(args, " ".join(edges), {"word": args.word, "edges": [[x, y] for x, y in g.sorted_edges()]})


def cmd_extend(args):
    L = construct.extend_language(_word_list(args.words), _pair(args.pair), args.horizon, args.symmetric)
    _write_or_print(args, language.language_to_spec(L))


def cmd_build_affine(args):
    T = construct.build_affine(_word_list(args.words), _pair(args.pair))
    _write_or_print(args, iet.iet_to_spec(T))


def cmd_decide_symmetric(args):
    ws = [args.word] if args.word else _word_list(args.words)
    d = construct.decide_standard_symmetric(ws, _pair(args.pair))
    _emit(args, d.describe(), {"producible": d.producible, **_verdict_data(d.verdict)})


def cmd_search_standard(args):
    T = construct.standard_iet_search(_word_list(args.words), _pair(args.pair), args.max_den, args.depth)
    if T is None:
        _emit(args, "none", None)
    else:
        _write_or_print(args, iet.iet_to_spec(T))


# -- parser --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="ietlang", description="Clustering words, order conditions and interval exchanges.")
    sub = top.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, lang=False, lang_required=True):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        p.add_argument("--json", action="store_true", help="machine readable output")
        if lang:
            _add_language_flags(p, lang_required)
        return p

    p = add("bwt", cmd_bwt, "Burrows-Wheeler transform")
    p.add_argument("word")
    p.add_argument("--order", required=True, help="letters in ascending order, e.g. 123")

    p = add("cluster", cmd_cluster, "does WORD cluster for a pair of orders")
    p.add_argument("word")
    p.add_argument("--pair", help="orderA|orderD")
    p.add_argument("--order", help="<_D for perfect clustering (<_A is its reverse)")

    p = add("pairs", cmd_pairs, "all pairs of orders for which WORD clusters")
    p.add_argument("word")
    p.add_argument("--alphabet")

    p = add("order-check", cmd_order_check, "order condition on bispecial factors", lang=True)
    p.add_argument("--pair")
    p.add_argument("--maxlen", type=int)
    p.add_argument("--all-pairs", action="store_true", help="list every satisfied pair instead")
    p.add_argument("--alphabet")

    p = add("connections", cmd_connections, "connections of a language", lang=True)
    p.add_argument("--pair", required=True)
    p.add_argument("--maxlen", type=int)

    p = add("returns", cmd_returns, "return words", lang=True)
    p.add_argument("--word", required=True)
    p.add_argument("--kind", choices=["suffix", "prefix"], default="suffix")

    p = add("derive-orders", cmd_derive_orders, "orders induced on return words")
    p.add_argument("--word", required=True)
    p.add_argument("--returns", required=True, help="comma separated return words (labelled a, b, c, ...)")
    p.add_argument("--pair", required=True)
    p.add_argument("--kind", choices=["suffix", "prefix"], default="suffix")

    p = add("apply-morphism", cmd_apply_morphism, "image of WORD under a morphism")
    p.add_argument("word")
    p.add_argument("--morphism", required=True, help='e.g. "a=12,b=1312,c=212"')

    p = add("rich", cmd_rich, "richness up to a palindrome length", lang=True)
    p.add_argument("--maxlen", type=int, required=True)

    p = add("palcx", cmd_palcx, "palindromic and factor complexity table", lang=True)
    p.add_argument("--n", type=int, help="largest length reported (default: depth)")

    p = add("iet-make", cmd_iet_make, "standard IET spec from lengths")
    p.add_argument("--pair", required=True)
    p.add_argument("--lengths", required=True, help="p/q values along <_D, comma separated")
    p.add_argument("-o", "--output")

    p = add("iet-cylinder", cmd_iet_cylinder, "cylinder of a word")
    p.add_argument("--iet", required=True)
    p.add_argument("--word", required=True)

    p = add("iet-factors", cmd_iet_factors, "natural coding factors")
    p.add_argument("--iet", required=True)
    p.add_argument("--n", type=int, required=True)

    p = add("iet-induce", cmd_iet_induce, "first return map to a cylinder")
    p.add_argument("--iet", required=True)
    p.add_argument("--word", required=True)
    p.add_argument("--cap", type=int, default=10_000)
    p.add_argument("-o", "--output")

    p = add("saturate", cmd_saturate, "saturate the extension graph of a word", lang=True)
    p.add_argument("--word", default="")
    p.add_argument("--pair", required=True)
    p.add_argument("--symmetric", action="store_true")

    p = add("extend", cmd_extend, "extend F(W) to a language without connections")
    p.add_argument("--words", required=True)
    p.add_argument("--pair", required=True)
    p.add_argument("--horizon", type=int, required=True)
    p.add_argument("--symmetric", action="store_true")
    p.add_argument("-o", "--output")

    p = add("build-affine", cmd_build_affine, "affine IET whose coding contains W")
    p.add_argument("--words", required=True)
    p.add_argument("--pair", required=True)
    p.add_argument("-o", "--output")

    p = add("decide-symmetric", cmd_decide_symmetric, "production by a standard symmetric IET")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--word")
    g.add_argument("--words")
    p.add_argument("--pair", required=True)

    p = add("search-standard", cmd_search_standard, "grid search for a standard IET coding W")
    p.add_argument("--words", required=True)
    p.add_argument("--pair", required=True)
    p.add_argument("--max-den", type=int, default=24)
    p.add_argument("--depth", type=int, help="also require no connection up to this depth")
    p.add_argument("-o", "--output")
    return top


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.func(args)
    except (ValueError, TypeError, KeyError, OSError, RuntimeError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
