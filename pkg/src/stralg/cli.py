"""Command-line entry point: ``stralg <subcommand> ...``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import automaton as am
from . import exceptional as ex
from . import hammock as hm
from . import regular_orders as ro
from . import strings as st
from . import word_problems as wp
from .presentation import QuiverPresentation, infer_sign_maps, parse_presentation, validate_string_algebra


class CliError(Exception):
    pass


def _load(path: str) -> QuiverPresentation:
    return parse_presentation(Path(path).read_text(encoding="utf-8"))


def _load_valid(path: str) -> QuiverPresentation:
    p = _load(path)
    problems = validate_string_algebra(p)
    if problems:
        raise CliError("not a string algebra: " + "; ".join(problems))
    p.signs  # verify or infer up front so errors surface here
    return p


def _json(doc) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def _word_json(p, w: st.Word) -> dict:
    return {"string": w.to_json(), "text": str(w), "sign": st.sign_sequence(w)}


def _hammock(p, args) -> hm.HammockAutomaton:
    if args.anchor_string:
        return hm.build_hammock_automaton(p, st.Word.parse(args.anchor_string))
    vertex = args.vertex or p.vertices[0]
    if args.side == "right":
        return hm.build_right_hammock_automaton(p, vertex)
    return hm.build_hammock_automaton(p, (vertex, 1))


def _vertices(p, args) -> list:
    if args.vertex is not None:
        if args.vertex not in p.vertices:
            raise CliError(f"unknown vertex {args.vertex!r}")
        return [args.vertex]
    return list(p.vertices)


# ----------------------------------------------------------- subcommands

def cmd_validate(args) -> str:
    p = _load(args.file)
    problems = validate_string_algebra(p)
    if args.format == "json":
        out = _json({"valid": not problems, "violations": problems})
    else:
        out = "valid\n" if not problems else "".join(f"violation: {x}\n" for x in problems)
    if problems:
        sys.stdout.write(out)
        raise CliError(f"{len(problems)} violation(s)")
    return out


def cmd_sign_maps(args) -> str:
    p = _load_valid(args.file)
    signs = infer_sign_maps(p, p.provided_signs)
    if args.format == "json":
        return _json(signs.to_json())
    return "".join(f"{a.name}: sigma={signs.sigma[a.name]:+d} tau={signs.tau[a.name]:+d}\n"
                   for a in p.arrows)


def cmd_strings(args) -> str:
    p = _load_valid(args.file)
    if args.vertex is not None:
        words = st.enumerate_hl_naive(p, args.vertex, args.maxlen)
    else:
        words = st.enumerate_strings(p, args.maxlen)
    if args.format == "json":
        return _json([_word_json(p, w) if args.vertex else w.to_json() for w in words])
    if args.vertex is not None:
        return "".join(f"{w}\t{st.sign_sequence(w) or 'ε'}\n" for w in words)
    return "".join(f"{w}\n" for w in words)


def cmd_bands(args) -> str:
    p = _load_valid(args.file)
    bands = st.enumerate_bands(p, args.maxlen, args.band_orientation)
    if args.format == "json":
        return _json([b.tokens() for b in bands])
    return "".join(f"{b}\n" for b in bands)


def _automaton_out(m: am.Dfa, fmt: str, labels=None, extra=None) -> str:
    if fmt == "dot":
        return am.to_dot(m, labels)
    doc = m.to_json()
    if extra:
        doc.update(extra)
    if fmt == "json":
        return _json(doc)
    lines = [f"start: {doc['start']}", f"accepting: {', '.join(doc['accepts'])}"]
    lines += [f"{t['from']} -{t['letter']}-> {t['to']}" for t in doc["transitions"]]
    return "\n".join(lines) + "\n"


def cmd_hammock(args) -> str:
    p = _load_valid(args.file)
    h = _hammock(p, args)
    cls = am.classify_states(h.dfa)
    labels = {q: w.pretty() for q, w in h.labels.items()}
    extra = {"flags": {str(q): cls.flags(q) for q in h.dfa.states},
             "universe_size": h.universe_size}
    return _automaton_out(h.dfa, args.format, labels, extra)


def cmd_rees(args) -> str:
    p = _load_valid(args.file)
    m = hm.build_rees_automaton(p)
    trivial = [str(st.Word.trivial(v, i)) for v in p.vertices for i in (1, -1)]
    return _automaton_out(m, args.format, extra={"trivial_strings_not_words": trivial})


def cmd_classify(args) -> str:
    p = _load_valid(args.file)
    h = _hammock(p, args)
    cls = am.classify_states(h.dfa)
    flags = am.linguage_flags(h.dfa)
    if args.format == "json":
        return _json({"states": {str(q): cls.flags(q) for q in h.dfa.states},
                      "linguage": {"empty": flags.empty, "finite": flags.finite,
                                   "scattered": flags.scattered}})
    rows = []
    for q in h.dfa.states:
        f = cls.flags(q)
        rows.append(f"{q}\t" + " ".join(k for k, v in f.items() if v))
    rows.append(f"linguage: empty={flags.empty} finite={flags.finite} "
                f"scattered={flags.scattered}")
    return "\n".join(rows) + "\n"


def cmd_is_domestic(args) -> str:
    p = _load_valid(args.file)
    result = hm.is_domestic(p)
    return _json({"domestic": result}) if args.format == "json" else f"{str(result).lower()}\n"


def cmd_word_problem(args) -> str:
    p = _load_valid(args.file)
    system = wp.automaton_to_word_problem(_hammock(p, args).dfa)
    if args.format == "json":
        return _json(system.to_json())
    lines = [f"{u} = {' '.join(system.rhs[u])}"
             + (f"    # state {system.origin[u]}" if u in system.origin else "")
             + ("  (start)" if u == system.start else "")
             for u in system.unknowns]
    return "\n".join(lines) + "\n"


def _solution_out(system: wp.WordProblem, header: str = "") -> tuple:
    solution = wp.solve(system)
    rows = []
    for u in system.unknowns:
        rows.append({"unknown": u, "state": str(system.origin.get(u, "")) or None,
                     "start": u == system.start, "term": ro.format_term(solution[u])})
    text = [header] if header else []
    for row in rows:
        state = f" [{row['state']}]" if row["state"] else ""
        mark = "  <- start" if row["start"] else ""
        text.append(f"  {row['unknown']}{state} = {row['term']}{mark}")
    return rows, "\n".join(text) + "\n"


def cmd_order_type(args) -> str:
    p = _load_valid(args.file)
    docs = []
    texts = []
    for v in _vertices(p, args):
        h = (hm.build_right_hammock_automaton(p, v) if args.side == "right"
             else hm.build_hammock_automaton(p, (v, 1)))
        system = wp.automaton_to_word_problem(h.dfa)
        rows, text = _solution_out(system, f"vertex {v} ({args.side} hammock)")
        quasi = wp.quasi_rational(system)
        start = next((r["term"] for r in rows if r["start"]), "0")
        docs.append({"vertex": v, "side": args.side, "start_term": start,
                     "scattered": quasi, "components": rows})
        texts.append(text)
    return _json(docs) if args.format == "json" else "".join(texts)


def _read_system(path: str) -> wp.WordProblem:
    text = Path(path).read_text(encoding="utf-8")
    if text.lstrip().startswith("{"):
        doc = json.loads(text)
        return wp.WordProblem(tuple(doc.get("terminals", [wp.STAR])), tuple(doc["unknowns"]),
                              {u: tuple(w) for u, w in doc["equations"].items()},
                              doc.get("start"))
    return wp.parse_word_problem(text)


def cmd_solve_wp(args) -> str:
    system = _read_system(args.file)
    rows, text = _solution_out(system)
    for row in rows:
        row.pop("state")
    if args.format == "json":
        return _json({"quasi_rational": wp.quasi_rational(system), "solution": rows})
    return text + f"quasi-rational: {str(wp.quasi_rational(system)).lower()}\n"


def cmd_expand(args) -> str:
    system = _read_system(args.file)
    unknown = args.unknown or system.start
    tree = wp.expand_tree(system, unknown, args.depth)
    leaves = wp.frontier(tree)
    if args.format == "json":
        return _json({"unknown": unknown, "depth": args.depth,
                      "frontier": [{"node": list(n), "label": lab} for n, lab in leaves],
                      "terminal_leaves": sum(lab not in system.rhs for _, lab in leaves)})
    return "".join(f"{'.'.join(map(str, n)) or 'root'}\t{lab}\n" for n, lab in leaves)


def cmd_term(args) -> str:
    t = ro.parse_term(args.expression)
    norm = ro.normalize(t)
    m = ro.term_to_automaton(norm)
    if args.format == "dot":
        return am.to_dot(m)
    preds = ro.predicates(norm).as_dict()
    if args.format == "json":
        return _json({"normalized": ro.format_term(norm), "ast": ro.term_to_json(norm),
                      "predicates": preds, "automaton": m.to_json()})
    lines = [f"normalized: {ro.format_term(norm)}"]
    lines += [f"{k}: {v}" for k, v in preds.items()]
    return "\n".join(lines) + "\n"


def cmd_exceptional(args) -> str:
    p = _load_valid(args.file)
    if args.format == "dot":
        vertex = args.vertex or p.vertices[0]
        return ex.quiver_dot(p, vertex, args.side, args.d_orientation)
    report = ex.exceptional_report(p, args.d_orientation, args.band_orientation)
    if args.format == "json":
        return _json(report.to_json())
    lines = [f"e = {report.e}"]
    for pt in report.points:
        sides = [s for s, f in (("left", pt.left_exceptional),
                                ("right", pt.right_exceptional)) if f]
        lines.append(f"vertex {pt.vertex}: {pt.cyclic_word} (band {pt.band}) "
                     f"exceptional on {', '.join(sides)}")
    for v, side, w in report.rejected:
        lines.append(f"rejected candidate at vertex {v} ({side}): {w}")
    lines += [f"diagnostic: {d}" for d in report.diagnostics]
    if report.bound is not None:
        lines.append(f"bound: e < {report.bound}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="stralg",
                                     description="Hammocks of string algebras via automata.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, formats=("text", "json"), file_help="presentation JSON"):
        sp = sub.add_parser(name, help=help_text)
        if file_help:
            sp.add_argument("file", help=file_help)
        sp.add_argument("--format", choices=formats, default=formats[0])
        sp.set_defaults(func=func)
        return sp

    def nonneg(text):
        value = int(text)
        if value < 0:
            raise argparse.ArgumentTypeError("must be >= 0")
        return value

    def anchors(sp):
        sp.add_argument("--vertex")
        sp.add_argument("--side", choices=("left", "right"), default="left")
        sp.add_argument("--anchor-string")

    add("validate", cmd_validate, "check the string-algebra conditions")
    add("sign-maps", cmd_sign_maps, "verify or infer sigma and tau")
    sp = add("strings", cmd_strings, "list strings (or a left hammock with --vertex)")
    sp.add_argument("--vertex")
    sp.add_argument("--maxlen", type=nonneg, default=4)
    sp = add("bands", cmd_bands, "list bands up to a length")
    sp.add_argument("--maxlen", type=nonneg, default=4)
    sp.add_argument("--band-orientation", choices=(st.RIGHTMOST_DIRECT, st.LEFTMOST_DIRECT),
                    default=st.RIGHTMOST_DIRECT)
    anchors(add("hammock", cmd_hammock, "emit a hammock automaton", ("json", "dot", "text")))
    add("rees", cmd_rees, "emit the string acceptor", ("json", "dot", "text"))
    sp = add("order-type", cmd_order_type, "order type of the hammock(s) as terms")
    sp.add_argument("--vertex")
    sp.add_argument("--side", choices=("left", "right"), default="left")
    anchors(add("classify", cmd_classify, "eta/omega flags of hammock states"))
    add("is-domestic", cmd_is_domestic, "domesticity test")
    anchors(add("word-problem", cmd_word_problem, "equation system of a hammock automaton"))
    add("solve-wp", cmd_solve_wp, "solve an equation system file",
        file_help="system file (text or JSON)")
    sp = add("expand", cmd_expand, "bounded tree expansion and frontier",
             file_help="system file (text or JSON)")
    sp.add_argument("--unknown")
    sp.add_argument("--depth", type=nonneg, default=2)
    sp = add("term", cmd_term, "parse, normalise and analyse an order term",
             ("text", "json", "dot"), file_help=None)
    sp.add_argument("expression")
    sp = add("exceptional", cmd_exceptional, "exceptional band points and e",
             ("json", "text", "dot"))
    sp.add_argument("--vertex")
    sp.add_argument("--side", choices=("left", "right"), default="left")
    sp.add_argument("--d-orientation", choices=(ex.TARGET, ex.SOURCE), default=ex.TARGET)
    sp.add_argument("--band-orientation", choices=(st.RIGHTMOST_DIRECT, st.LEFTMOST_DIRECT),
                    default=st.RIGHTMOST_DIRECT)
    return parser


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        out = args.func(args)
    except (CliError, ValueError, RuntimeError, OSError, KeyError) as exc:
        message = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {message}", file=sys.stderr)
        return 1
    sys.stdout.write(out)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
