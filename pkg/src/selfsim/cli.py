"""Command line interface.

Exit codes: 0 success, 1 domain refusal (scope guard or an UNKNOWN answer),
2 input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import replace

from . import finitegpd as fg
from .action import (ActionError, Budget, Decision, is_transitive, isotropy_probe, orbits,
                     pseudo_free_probe)
from .assumptions import ScopeError, check_assumptions
from .germ import (GermError, PeriodicityBudgetExceeded, compose, extend, format_evpath,
                   format_germ, germ_equal, germ_range, invert, parse_germ, rho)
from .graph import GraphError
from .homol import ASSUMED, COMPUTED, PROBED, full_pipeline, homology_pipeline, isotropy_json
from .kthy import (crossed_product_k, isotropy_winding, k_from_multipliers,
                   k_of_groupoid_algebra, multipliers)
from .semigroup import TripleError, format_triple, multiply, parse_triple
from .specfmt import (SpecError, parse_gpd, parse_spec, read_input, spec_budget,
                      spec_cocycle, to_system)

EXIT_OK, EXIT_REFUSED, EXIT_INPUT = 0, 1, 2

INPUT_ERRORS = (GraphError, ActionError, SpecError, fg.GroupoidError, TripleError, GermError,
                FileNotFoundError, ValueError)


class Output:
    def __init__(self, fmt: str, command: str):
        self.fmt = fmt
        self.payload: dict = {"command": command}
        self.lines: list[str] = []

    def put(self, key: str, value, text: str | None = None):
        self.payload[key] = value
        if text is not None:
            self.lines.append(text)

    def text(self, line: str):
        self.lines.append(line)

    def render(self) -> str:
        if self.fmt == "json":
            return json.dumps(self.payload, indent=2, sort_keys=True)
        return "\n".join(self.lines)


def _budget(args, spec=None) -> Budget:
    b = Budget.from_env()
    if spec is not None and spec_budget(spec) is not None:
        sb = spec_budget(spec)
        if "ISUNIT_MAX_SEEN" not in os.environ:
            b = replace(b, max_seen=sb.max_seen)
        if "ISUNIT_MAX_LEN" not in os.environ:
            b = replace(b, max_len=sb.max_len)
    if getattr(args, "budget_seen", None) is not None:
        b = replace(b, max_seen=args.budget_seen)
    if getattr(args, "budget_len", None) is not None:
        b = replace(b, max_len=args.budget_len)
    return b


def _load_system(args):
    spec = parse_spec(read_input(args.spec))
    sys_ = to_system(spec)
    return spec, sys_, spec_cocycle(spec, sys_), _budget(args, spec)


def _tagged(value, provenance):
    return {"value": value, "provenance": provenance}


# -- commands --------------------------------------------------------------------


def cmd_validate(args, out: Output) -> int:
    spec, s, c, budget = _load_system(args)
    g = s.graph
    out.put("vertices", list(g.vertex_names), f"vertices: {' '.join(g.vertex_names)}")
    out.put("edges", [[g.edge_names[e], g.vertex_names[g.r[e]], g.vertex_names[g.s[e]]]
                      for e in range(g.n_edges)], f"edges: {g.n_edges}")
    rows = []
    for i, name in enumerate(s.gen_names):
        for sign, label in ((1, name), (-1, name + "^-1")):
            for e, (f, res) in sorted(s.moves[sign * (i + 1)].items()):
                rows.append({"letter": label, "edge": g.edge_names[e], "image": g.edge_names[f],
                             "restriction": s.format_word(res)})
    out.put("rows", rows)
    for r in rows:
        out.text(f"{r['letter']} . {r['edge']} = {r['image']}, "
                 f"{r['letter']}|_{r['edge']} = {r['restriction']}")
    out.put("valid", True, "valid")
    return EXIT_OK


def cmd_act(args, out: Output) -> int:
    _, s, _, _ = _load_system(args)
    w = s.parse_word(args.word)
    mu = s.graph.parse_path(args.path)
    img = s.graph.format_path(s.act_path(w, mu))
    out.put("image", img, img)
    return EXIT_OK


def cmd_restrict(args, out: Output) -> int:
    _, s, _, _ = _load_system(args)
    w = s.parse_word(args.word)
    mu = s.graph.parse_path(args.path)
    res = s.format_word(s.restrict_path(w, mu))
    out.put("restriction", res, res)
    return EXIT_OK


def _decision_exit(ans: Decision) -> int:
    return EXIT_REFUSED if ans is Decision.UNKNOWN else EXIT_OK


def cmd_is_unit(args, out: Output) -> int:
    _, s, _, budget = _load_system(args)
    w = s.parse_word(args.word)
    chk = s.is_unit(w, budget)
    out.put("answer", chk.answer.value.upper(), chk.answer.value.upper())
    if chk.witness is not None:
        a, b = (s.graph.format_path(p) for p in chk.witness)
        out.put("witness", [a, b], f"witness: {a} -> {b}")
    if chk.reason:
        out.put("reason", chk.reason, chk.reason)
    out.put("budget", {"max_seen": budget.max_seen, "max_len": budget.max_len})
    return _decision_exit(chk.answer)


def cmd_equal(args, out: Output) -> int:
    _, s, _, budget = _load_system(args)
    ans = s.equal(s.parse_word(args.word1), s.parse_word(args.word2), budget)
    out.put("answer", ans.value.upper(), ans.value.upper())
    return _decision_exit(ans)


def cmd_pseudo_free(args, out: Output) -> int:
    _, s, _, budget = _load_system(args)
    rep = pseudo_free_probe(s, args.depth, budget)
    out.put("bound", args.depth)
    out.put("checked", rep.checked)
    out.put("unit_generators", rep.unit_generators)
    out.put("inconclusive", len(rep.inconclusive))
    if rep.violation is not None:
        w, e = rep.violation
        v = {"word": s.format_word(w), "edge": s.graph.edge_names[e]}
        out.put("violation", v, f"VIOLATION: {v['word']} fixes {v['edge']} with unit "
                                f"restriction but is not a unit")
        return EXIT_REFUSED
    out.put("violation", None, f"no violation up to word length {args.depth} "
                               f"({rep.checked} cases, {len(rep.inconclusive)} inconclusive)")
    if rep.unit_generators:
        out.text(f"generators acting as units: {' '.join(rep.unit_generators)}")
    return EXIT_REFUSED if rep.inconclusive else EXIT_OK


def cmd_orbits(args, out: Output) -> int:
    _, s, _, _ = _load_system(args)
    classes = [[s.graph.vertex_names[v] for v in orb] for orb in orbits(s)]
    out.put("orbits", classes, "\n".join("{" + ", ".join(o) + "}" for o in classes))
    out.put("transitive", is_transitive(s), f"transitive: {is_transitive(s)}")
    return EXIT_OK


def cmd_isotropy(args, out: Output) -> int:
    _, s, c, budget = _load_system(args)
    v = s.graph.vertex(args.vertex)
    rep = isotropy_probe(s, v, args.depth, args.powers, budget)
    items = []
    for ev in rep.nonunits:
        a, b = (s.graph.format_path(p) for p in ev.witness)
        item = {"word": s.format_word(ev.word), "witness": [a, b],
                "nonunit_powers": ev.nonunit_powers}
        if c is not None:
            item["degree"] = c(ev.word)
        items.append(item)
        out.text(f"{item['word']}: not a unit ({a} -> {b}); powers 1..{ev.nonunit_powers} "
                 "certified non-units")
    out.put("nonunits", items)
    out.put("units", [s.format_word(w) for w in rep.units])
    out.put("unknown", [s.format_word(w) for w in rep.unknown])
    out.text(f"{len(rep.units)} loop words are units, {len(rep.unknown)} undecided")
    return EXIT_OK


def cmd_sgp_mul(args, out: Output) -> int:
    _, s, _, _ = _load_system(args)
    z = multiply(s, parse_triple(s, args.x), parse_triple(s, args.y))
    txt = format_triple(s, z)
    out.put("product", txt, txt)
    return EXIT_OK


def cmd_germ(args, out: Output) -> int:
    _, s, _, budget = _load_system(args)
    x = parse_germ(s, args.germs[0])
    need = {"range": 1, "invert": 1, "rho": 1, "compose": 2, "equal": 2, "extend": 2}[args.op]
    if len(args.germs) != need:
        raise ValueError(f"germ {args.op} takes {need} argument(s)")
    try:
        if args.op == "range":
            res = format_evpath(s.graph, germ_range(s, x))
        elif args.op == "invert":
            res = format_germ(s, invert(s, x))
        elif args.op == "rho":
            res = str(rho(x))
        elif args.op == "compose":
            res = format_germ(s, compose(s, x, parse_germ(s, args.germs[1])))
        elif args.op == "extend":
            res = format_germ(s, extend(s, x, s.graph.parse_path(args.germs[1])))
        else:
            ans = germ_equal(s, x, parse_germ(s, args.germs[1]), budget)
            out.put("answer", ans.value.upper(), ans.value.upper())
            return _decision_exit(ans)
    except PeriodicityBudgetExceeded as exc:
        prefix = s.graph.format_path(exc.image_prefix(16))
        out.put("refused", str(exc), f"refused: {exc}; first 16 edges of the image: {prefix}")
        out.put("image_prefix", prefix)
        return EXIT_REFUSED
    out.put("result", res, res)
    return EXIT_OK


def cmd_finite_homology(args, out: Output) -> int:
    G = parse_gpd(read_input(args.gpd))
    hs = fg.homology(G, args.nmax)
    out.put("elements", len(G))
    out.put("units", len(G.units))
    out.put("homology", [_tagged(h.to_json(), COMPUTED) for h in hs])
    for n, h in enumerate(hs):
        out.text(f"H_{n} = {h}")
    return EXIT_OK


def similarity_instances() -> list[tuple[str, fg.SimilarityData]]:
    """The standard small instances for both similarity statements."""
    Z2 = fg.cyclic_group(2)
    P2 = fg.pair_groupoid(["1", "2"])
    flip = fg.GroupoidAction.from_function(
        Z2, P2, lambda h: 0,
        lambda h, g: h if g == 0 else tuple({"1": "2", "2": "1"}[x] for x in h)).check()
    T = fg.transitive_groupoid(["1", "2", "3"], Z2)
    to_z2 = fg.GroupoidHom.from_function(T, Z2, lambda g: g[1]).check()
    triv_rho, _ = fg.trivial_hom(P2)
    return [
        ("trivial group acting on pair2", fg.canonical_similarity_HG(fg.trivial_action(P2))),
        ("pair2 with trivial cocycle", fg.canonical_similarity_Grho(P2, triv_rho)),
        ("Z/2 flipping pair2", fg.canonical_similarity_HG(flip)),
        ("Z/2 with identity cocycle", fg.canonical_similarity_Grho(Z2, fg.GroupoidHom(Z2, Z2, [0, 1]))),
        ("3-unit transitive Z/2 groupoid on its units", fg.canonical_similarity_HG(fg.unit_space_action(T))),
        ("3-unit transitive Z/2 groupoid with cocycle to Z/2", fg.canonical_similarity_Grho(T, to_z2)),
    ]


def cmd_similarity_demo(args, out: Output) -> int:
    results = []
    ok = True
    for name, data in similarity_instances():
        rep = fg.similarity_check(data)
        h1 = fg.homology(data.G1, args.nmax)
        h2 = fg.homology(data.G2, args.nmax)
        agree = h1 == h2
        ok = ok and rep.ok and agree
        results.append({"instance": name, "sizes": [len(data.G1), len(data.G2)],
                        "identities_hold": rep.ok, "witness": rep.witness,
                        "homology": [str(h) for h in h1], "homology_agrees": agree})
        out.text(f"{name}: |G1|={len(data.G1)} |G2|={len(data.G2)} identities "
                 f"{'hold' if rep.ok else 'FAIL at ' + str(rep.witness)}; "
                 f"H_0..H_{args.nmax} = {', '.join(str(h) for h in h1)}"
                 f"{'' if agree else ' (MISMATCH)'}")
    out.put("instances", results)
    return EXIT_OK if ok else EXIT_REFUSED


def _banner(out: Output, assumptions):
    out.put("assumptions", assumptions.to_json())
    out.text("assumptions (" + PROBED + "):")
    for line in assumptions.banner():
        out.text("  " + line)


def cmd_ktheory(args, out: Output) -> int:
    _, s, c, budget = _load_system(args)
    a = check_assumptions(s, c, args.depth, budget)
    _banner(out, a)
    m = multipliers(s, c, a)
    kf = k_from_multipliers(m)
    kc = crossed_product_k(m)
    kg = k_of_groupoid_algebra(s, c)
    out.put("D", _tagged(m.D, COMPUTED), f"D = {m.D} [{COMPUTED}]")
    out.put("Phi0", _tagged(m.phi0, COMPUTED), f"Phi0 = {m.phi0} [{COMPUTED}]")
    out.put("Phi1", _tagged(m.phi1, COMPUTED), f"Phi1 = {m.phi1} [{COMPUTED}]")
    out.put("K_fixed_point", _tagged([g.to_json() for g in kf], ASSUMED),
            f"K_0, K_1 of the fixed-point algebra = {kf[0]}, {kf[1]} [{ASSUMED}]")
    out.put("K_crossed_product", _tagged([g.to_json() for g in kc], COMPUTED),
            f"K_0, K_1 of C*(G,E) = {kc[0]}, {kc[1]} [{COMPUTED}]")
    out.put("K_groupoid_algebra", _tagged([g.to_json() for g in kg], ASSUMED),
            f"K_0, K_1 of C*(G) = {kg[0]}, {kg[1]} [{ASSUMED}: M_n(C(T)) model]")
    _isotropy_lines(out, s, m.phi1, isotropy_winding(s, c, 0, args.depth, budget))
    return EXIT_OK


def _isotropy_lines(out: Output, s, phi1, iw):
    out.put("Phi1_isotropy_generator", isotropy_json(s, iw))
    if iw is None:
        return
    note = "agrees" if iw.value == phi1 else "DIFFERS from the formal-z value"
    out.text(f"cross-check: Phi1 with z realized by the isotropy loop {s.format_word(iw.generator)} "
             f"(degree {iw.degree}) = {iw.value} [{COMPUTED}], {note}")


def _homology_lines(out: Output, s, h):
    out.text(f"H_0, H_1 of H_k = {h.Hk.h0}, {h.Hk.h1} [{ASSUMED}] generated by {h.Hk.generator}")
    out.text(f"inclusion multiplier = {h.inclusion} [{COMPUTED}]")
    out.text(f"H_0, H_1 of H = {h.H_of_H[0]}, {h.H_of_H[1]} [{ASSUMED}]")
    cj = h.conjugator
    out.text(f"rho_* = x{h.rho.value} [{COMPUTED}] via U = B({s.graph.format_path(cj.U.alpha)}, "
             f"{s.format_word(cj.U.word)}, {s.graph.format_path(cj.U.beta)}) x {{1}}")
    sol = h.solution
    out.text(f"H_0 = {sol.H0}, H_1 = {sol.H1}, H_2 = {sol.H2}, H_q = 0 for q >= 3 [{COMPUTED}]")
    out.text(f"exactness audit: {'pass' if h.exact else 'FAIL'}")


def cmd_homology(args, out: Output) -> int:
    _, s, c, budget = _load_system(args)
    a = check_assumptions(s, c, args.depth, budget)
    _banner(out, a)
    h = homology_pipeline(s, c, a, budget)
    _homology_lines(out, s, h)
    out.put("homology", _report_json(s, h))
    return EXIT_OK if h.exact else EXIT_REFUSED


def _report_json(s, h) -> dict:
    sol = h.solution
    return {
        "H_Hk": _tagged([h.Hk.h0.to_json(), h.Hk.h1.to_json()], ASSUMED),
        "inclusion_multiplier": _tagged(h.inclusion, COMPUTED),
        "H_H": _tagged([g.to_json() for g in h.H_of_H], ASSUMED),
        "rho_star": _tagged(str(h.rho.value), COMPUTED),
        "conjugator": {"alpha": s.graph.format_path(h.conjugator.alpha),
                       "edge": s.graph.edge_names[h.conjugator.edge],
                       "checks": h.conjugator.checks},
        "H_G": _tagged([sol.H0.to_json(), sol.H1.to_json() if sol.H1 else None,
                        sol.H2.to_json()], COMPUTED),
        "tail_zero": sol.tail_zero,
        "exactness_audit": h.exact,
    }


def cmd_report(args, out: Output) -> int:
    _, s, c, budget = _load_system(args)
    a = check_assumptions(s, c, args.depth, budget)
    _banner(out, a)
    r = full_pipeline(s, c, args.depth, budget)
    payload = r.to_json(s)
    out.put("ktheory", payload["ktheory"])
    out.put("homology", payload["homology"])
    m = r.multipliers
    out.text(f"D = {m.D}, Phi0 = {m.phi0}, Phi1 = {m.phi1} [{COMPUTED}]")
    out.text(f"K_0, K_1 of the fixed-point algebra = {r.k_fixed[0]}, {r.k_fixed[1]} [{ASSUMED}]")
    out.text(f"K_0, K_1 of C*(G,E) = {r.k_crossed[0]}, {r.k_crossed[1]} [{COMPUTED}]")
    out.text(f"K_0, K_1 of C*(G) = {r.k_groupoid[0]}, {r.k_groupoid[1]} "
             f"[{ASSUMED}: M_n(C(T)) model]")
    _isotropy_lines(out, s, m.phi1, r.phi1_isotropy)
    _homology_lines(out, s, r.homology)
    return EXIT_OK


# -- parser ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--budget-seen", type=int, default=None,
                        help="word problem closure size (default ISUNIT_MAX_SEEN or 10000)")
    common.add_argument("--budget-len", type=int, default=None,
                        help="word problem word length (default ISUNIT_MAX_LEN or 64)")
    common.add_argument("--depth", type=int, default=4, help="word length bound for probes")
    common.add_argument("--nmax", type=int, default=3, help="top homology degree")

    p = argparse.ArgumentParser(prog="selfsim", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, *positional, **extra):
        sp = sub.add_parser(name, parents=[common])
        for arg in positional:
            sp.add_argument(arg)
        for arg, kw in extra.items():
            sp.add_argument(arg, **kw)
        sp.set_defaults(func=func)
        return sp

    add("validate", cmd_validate, "spec")
    add("act", cmd_act, "spec", "word", "path")
    add("restrict", cmd_restrict, "spec", "word", "path")
    add("is-unit", cmd_is_unit, "spec", "word")
    add("equal", cmd_equal, "spec", "word1", "word2")
    add("pseudo-free", cmd_pseudo_free, "spec")
    add("orbits", cmd_orbits, "spec")
    iso = add("isotropy", cmd_isotropy, "spec", "vertex")
    iso.add_argument("--powers", type=int, default=8)
    add("sgp-mul", cmd_sgp_mul, "spec", "x", "y")
    germ = sub.add_parser("germ", parents=[common])
    germ.add_argument("spec")
    germ.add_argument("op", choices=("range", "invert", "rho", "compose", "equal", "extend"))
    germ.add_argument("germs", nargs="+")
    germ.set_defaults(func=cmd_germ)
    add("finite-homology", cmd_finite_homology, "gpd")
    add("similarity-demo", cmd_similarity_demo)
    add("ktheory", cmd_ktheory, "spec")
    add("homology", cmd_homology, "spec")
    add("report", cmd_report, "spec")
    return p


def run(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    out = Output(args.format, args.command)
    try:
        code = args.func(args, out)
    except ScopeError as exc:
        out.put("refused", str(exc), f"refused: {exc}")
        code = EXIT_REFUSED
    except INPUT_ERRORS as exc:
        out.put("error", f"{type(exc).__name__}: {exc}")
        print(f"error: {type(exc).__name__}: {exc}", file=stderr)
        if args.format == "json":
            print(out.render(), file=stdout)
        return EXIT_INPUT
    out.put("exit_code", code)
    print(out.render(), file=stdout)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
