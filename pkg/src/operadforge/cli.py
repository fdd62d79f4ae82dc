"""Command line front end: JSON/DOT/CSV reports over the core modules.

Exit codes: 0 = all checks pass, 1 = counterexample found (witness in
the report), 2 = usage or config error, 3 = inconclusive (e.g. open
truncation frontier).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .conjectures import (
    check_conjecture1,
    check_conjecture2,
    check_cover,
    downset,
    poset_for_tree,
    system,
    ProductPoset,
)
from .lattice_paths import (
    GeneralizedLatticePath,
    LatticePath,
    block_homology,
    block_membership,
    closure_check_seq2,
    closure_check_tam,
    compose_generalized,
    compose_paths,
    enumerate_paths,
    matching_check,
    pair_profile,
    path_params,
    profile_leq,
    relabel_axes,
    seq2_label_sets,
    swap_profile,
    _out_codegeneracies,
    _block_paths,
    _diag_face,
    _tam_composite_bad,
    pair_complexity_label,
)
from .poset_topology import FinitePoset, dismantle, homology, milgram_poset, order_complex
from .signatures import TruncatedSignature, factor_to_k2, parse_signature, sig_leq
from .trees import LevelTree, TreeMorphism
from .vdgen import generate_V, generate_tilde, move_graph


def _threads_from_env() -> int:
    raw = os.environ.get("OPERAD_FORGE_THREADS")
    if raw is None:
        return 1
    try:
        n = int(raw)
    except ValueError:
        raise SystemExit2("OPERAD_FORGE_THREADS must be an integer, got %r" % raw)
    if n < 1:
        raise SystemExit2("OPERAD_FORGE_THREADS must be positive, got %d" % n)
    # execution is sequential; the value is validated for config sanity
    return n


class SystemExit2(Exception):
    """Usage/config error carrying the message for stderr."""


def _dump(payload) -> str:
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def _parse_spec(text: str):
    """Block spec: a single alternating factor like (121) -> arity-2
    parameter pair; a bar-string like (121)|(12) -> signature."""
    stripped = text.replace("(", "").replace(")", "")
    if "|" in stripped:
        return parse_signature(text, stripped.count("|") + 1)
    return factor_to_k2(stripped)


def _elem_repr(x):
    if isinstance(x, TruncatedSignature):
        return x.text()
    if isinstance(x, tuple):
        return [_elem_repr(v) for v in x]
    return x


def _poset_payload(P: FinitePoset) -> dict:
    return {
        "size": len(P),
        "elements": [_elem_repr(x) for x in P.elements],
        "covers": [[i, j] for i, j in P.covers()],
    }


def _homology_payload(rep) -> dict:
    return {
        "betti": {str(q): b for q, b in rep.betti.items()},
        "torsion": {str(q): list(t) for q, t in rep.torsion.items()},
        "reduced": rep.reduced,
        "euler_consistent": rep.euler_consistent(),
    }


def _homology_csv(rep) -> str:
    lines = ["degree,betti,torsion"]
    if rep is not None:
        for q in sorted(rep.betti):
            tor = ";".join(str(t) for t in rep.torsion.get(q, ()))
            lines.append("%d,%d,%s" % (q, rep.betti[q], tor))
    return "\n".join(lines) + "\n"


def _hasse_dot(P: FinitePoset, name: str) -> str:
    lines = ["digraph %s {" % name, "  rankdir=BT;"]
    for i, x in enumerate(P.elements):
        label = _elem_repr(x)
        if isinstance(label, list):
            label = "|".join(str(v) for v in label)
        lines.append('  n%d [label="%s"];' % (i, label))
    for i, j in P.covers():
        lines.append("  n%d -> n%d;" % (i, j))
    lines.append("}")
    return "\n".join(lines) + "\n"


def _movegraph_dot(g) -> str:
    canon = set(g.canonical)
    lines = ["digraph moves {", "  rankdir=TB;"]
    for i, sig in enumerate(g.nodes):
        style = "solid" if i in canon else "dashed"
        lines.append('  n%d [label="%s", style=%s];' % (i, sig.text(), style))
    for i, j, a in g.edges:
        lines.append('  n%d -> n%d [label="%d"];' % (i, j, a))
    lines.append("}")
    return "\n".join(lines) + "\n"


def _parse_tree(text: str) -> LevelTree:
    data = json.loads(text)
    return LevelTree.from_nested(data["d"], data["tree"])


def _parse_path(text: str):
    data = json.loads(text)
    if "base" in data:
        return GeneralizedLatticePath.from_json(data)
    return LatticePath.from_json(data)


# ------------------------------------------------------------- subcommands

def cmd_vd(args) -> tuple[int, str]:
    seq = generate_V(args.d)
    payload = {
        "d": args.d,
        "elements": seq.texts(),
        "moves": [[a, rem] for a, rem in seq.moves],
        "warnings": list(seq.warnings),
    }
    return 0, _dump(payload)


def cmd_tilde(args) -> tuple[int, str]:
    seq = generate_tilde(args.ell, args.d)
    payload = {"ell": args.ell, "d": seq.d, "elements": seq.texts()}
    return 0, _dump(payload)


def cmd_move_graph(args) -> tuple[int, str]:
    g = move_graph(args.d)
    if args.format == "dot":
        return 0, _movegraph_dot(g)
    payload = {
        "d": args.d,
        "nodes": [s.text() for s in g.nodes],
        "edges": [[i, j, a] for i, j, a in g.edges],
        "canonical": list(g.canonical),
        "pruned": list(g.pruned),
    }
    return 0, _dump(payload)


def _system_maybe_weakened(d: int, weakened: bool):
    sys_d = system(d)
    if weakened:
        sys_d = sys_d.replace(0, sys_d.at(0)[:1])
    return sys_d


def cmd_conj1(args) -> tuple[int, str]:
    sys_d = _system_maybe_weakened(args.d, args.weakened)
    w = check_conjecture1(sys_d)
    payload = {
        "check": "conj1",
        "d": args.d,
        "weakened": args.weakened,
        "result": "pass" if w is None else "fail",
    }
    if w is not None:
        payload["witness"] = dict(
            w.to_json(), check="conj1", d=args.d, weakened=args.weakened
        )
    return (0 if w is None else 1), _dump(payload)


def cmd_conj2(args) -> tuple[int, str]:
    w = check_conjecture2(args.d)
    payload = {
        "check": "conj2",
        "d": args.d,
        "result": "pass" if w is None else "fail",
    }
    if w is not None:
        payload["witness"] = dict(w.to_json(), check="conj2", d=args.d)
    return (0 if w is None else 1), _dump(payload)


def cmd_cover(args) -> tuple[int, str]:
    rep = check_cover(args.d)
    return (0 if rep.passed() else 1), _dump(rep.to_json())


def cmd_poset(args) -> tuple[int, str]:
    if args.tree:
        T = _parse_tree(args.tree)
        sys_d = system(T.depth - 1)
        P = poset_for_tree(sys_d, T, cap=args.cap)
        if isinstance(P, ProductPoset):
            payload = {"size": P.size, "note": "over cap %d, not materialized" % args.cap}
            return 3, _dump(payload)
    else:
        P = downset(generate_V(args.d).elements)
    if args.format == "dot":
        return 0, _hasse_dot(P, "poset")
    payload = _poset_payload(P)
    rep = None
    if args.homology:
        rep = homology(order_complex(P))
        payload["homology"] = _homology_payload(rep)
    if args.dismantle:
        res = dismantle(P)
        payload["dismantlable"] = res.success
        payload["removed"] = [_elem_repr(x) for x in res.removed]
        if not res.success:
            payload["core_size"] = len(res.core)
    if args.format == "csv":
        return 0, _homology_csv(rep)
    return 0, _dump(payload)


def cmd_milgram(args) -> tuple[int, str]:
    P = milgram_poset(args.n)
    if args.format == "dot":
        return 0, _hasse_dot(P, "milgram")
    payload = _poset_payload(P)
    rep = None
    if args.homology:
        rep = homology(order_complex(P), reduced=False)
        maxq = max(rep.betti) if rep.betti else 0
        payload["homology"] = _homology_payload(rep)
        payload["betti_vector"] = [rep.betti.get(q, 0) for q in range(maxq + 1)]
    if args.dismantle:
        res = dismantle(P)
        payload["dismantlable"] = res.success
    if args.format == "csv":
        return 0, _homology_csv(rep)
    return 0, _dump(payload)


def cmd_paths(args) -> tuple[int, str]:
    if args.action == "enumerate":
        if args.in_degrees is None or args.out is None:
            raise SystemExit2("enumerate needs --in and --out")
        degs = tuple(int(v) for v in args.in_degrees.split(","))
        paths = enumerate_paths(degs, args.out)
        if args.spec:
            spec = _parse_spec(args.spec)
            paths = [p for p in paths if block_membership(p, spec)]
        return 0, _dump({"count": len(paths), "paths": [p.to_json() for p in paths]})
    if args.action == "params":
        if not args.path:
            raise SystemExit2("params needs --path")
        x = _parse_path(args.path)
        if isinstance(x, GeneralizedLatticePath):
            return 0, _dump({"profile": pair_profile(x, 1, 2)})
        par = path_params(x)
        return 0, _dump({"mu": list(par.mu), "sigma": list(par.sigma)})
    if args.action == "membership":
        if not (args.path and args.spec):
            raise SystemExit2("membership needs --path and --spec")
        x = _parse_path(args.path)
        ok = block_membership(x, _parse_spec(args.spec))
        return (0 if ok else 1), _dump({"member": ok})
    raise SystemExit2("unknown paths action %r" % args.action)


def cmd_closure(args) -> tuple[int, str]:
    if args.variant == "tam":
        rep = closure_check_tam(args.max_arity, args.max_degree)
    elif args.variant == "seq2":
        rep = closure_check_seq2(args.max_total_degree, weakened=args.weakened)
    else:
        raise SystemExit2("unknown closure variant %r" % args.variant)
    return (0 if rep.passed else 1), _dump(rep.to_json())


def cmd_matching(args) -> tuple[int, str]:
    spec = _parse_spec(args.spec)
    rep = matching_check(spec, args.ell, args.max_degree)
    payload = dict(rep.to_json(), spec=args.spec)
    if payload.get("witness") is not None:
        payload["witness"] = dict(
            payload["witness"], check="matching", spec=args.spec, ell=args.ell
        )
    return (0 if rep.passed else 1), _dump(payload)


def cmd_block_homology(args) -> tuple[int, str]:
    spec = _parse_spec(args.spec)
    rep, diag = block_homology(spec, args.n, bound=args.bound)
    if rep is None:
        return 3, _dump({"check": "block-homology", "status": "inconclusive", "diagnostics": diag})
    if args.format == "csv":
        return 0, _homology_csv(rep)
    payload = {
        "check": "block-homology",
        "spec": args.spec,
        "n": args.n,
        "status": "ok",
        "homology": _homology_payload(rep),
        "diagnostics": diag,
    }
    return 0, _dump(payload)


# ---------------------------------------------------------- verify-witness

def _verify_conj1(w) -> bool:
    sys_d = _system_maybe_weakened(w["d"], w.get("weakened", False))
    label = parse_signature("|".join(w["label"]["factors"]), w["label"]["d"])
    needed = label.swap() if w["twisted"] else label
    in_b = label in sys_d.at(w["b"])
    dominated = any(sig_leq(needed, lam) for lam in sys_d.at(w["a"]))
    return in_b and not dominated


def _verify_conj2(w) -> bool:
    d = w["d"]
    alpha = parse_signature("|".join(w["alpha"]["factors"]), d)
    V = generate_V(d).elements
    mem = tuple(i for i, omega in enumerate(V) if sig_leq(alpha, omega))
    return list(mem) == list(w["membership"]) and mem[-1] - mem[0] + 1 != len(mem)


def _verify_closure_seq2(w) -> bool:
    outer = GeneralizedLatticePath.from_json(w["outer"])
    u1 = GeneralizedLatticePath.from_json(w["u1"])
    u2 = GeneralizedLatticePath.from_json(w["u2"])
    comp = compose_generalized(compose_generalized(outer, 2, u2), 1, u1)
    labels = seq2_label_sets(weakened=w.get("weakened", False))
    prof = pair_profile(comp, 1, 2)
    outer_prof = pair_profile(outer, 1, 2)
    b_ok = any(profile_leq(outer_prof, lam) for lam in labels[w["b"]])
    need = swap_profile(prof) if w["rho"] == "swap" else prof
    a_bad = not any(profile_leq(need, lam) for lam in labels[w["a"]])
    return b_ok and a_bad


def _verify_closure_tam(w) -> bool:
    T = LevelTree.from_nested(w["T"]["d"], w["T"]["tree"])
    S = LevelTree.from_nested(w["S"]["d"], w["S"]["tree"])
    phi = TreeMorphism(T, S, tuple(tuple(m) for m in w["phi"]))
    outer = LatticePath.from_json(w["outer"])
    inners = [LatticePath.from_json(x) for x in w["inners"]]
    kT = T.num_leaves()
    s = S.num_leaves()
    groups = [[l for l in range(kT) if phi.maps[2][l] == b] for b in range(s)]
    perm = tuple(l + 1 for g in groups for l in g)
    comp = outer
    for b in range(s, 0, -1):
        comp = compose_paths(comp, b, inners[b - 1])
    comp = relabel_axes(comp, perm)
    if comp.to_json() != w["composite"]:
        return False
    bad = _tam_composite_bad(comp, pair_complexity_label(T), outer, inners, groups)
    return bad == w["reason"]


def _verify_matching(w) -> bool:
    spec = _parse_spec(w["spec"])
    if "unreached" in w:
        low = LatticePath.from_json(w["unreached"])
        top = _block_paths(spec, low.in_degrees, 1)
        return all(_out_codegeneracies(x)[0] != low for x in top)
    if "beta" in w:  # horn instance with no filler
        n, i = w["n"], w["i"]
        k = len(LatticePath.from_json(w["beta"]).in_degrees)
        beta = LatticePath.from_json(w["beta"])
        if n == 1:
            alpha = LatticePath.from_json(w["alpha"])
            a = 1 - i
            if _diag_face(beta, a) != _out_codegeneracies(alpha)[0]:
                return False
            Y1 = _block_paths(spec, (1,) * k, 1)
            return not any(
                _diag_face(y, a) == alpha and _out_codegeneracies(y)[0] == beta
                for y in Y1
            )
        faces = [a for a in (0, 1, 2) if a != i]
        alphas = dict(zip(faces, (LatticePath.from_json(x) for x in w["alphas"])))
        a, b = faces
        if _diag_face(alphas[a], b - 1) != _diag_face(alphas[b], a):
            return False
        if any(
            _diag_face(beta, f) != _out_codegeneracies(alphas[f])[0] for f in faces
        ):
            return False
        Y2 = _block_paths(spec, (2,) * k, 1)
        return not any(
            all(_diag_face(y, f) == alphas[f] for f in faces)
            and _out_codegeneracies(y)[0] == beta
            for y in Y2
        )
    return False


_VERIFIERS = {
    "conj1": _verify_conj1,
    "conj2": _verify_conj2,
    "closure-seq2": _verify_closure_seq2,
    "closure-tam": _verify_closure_tam,
    "matching": _verify_matching,
}


def cmd_verify_witness(args) -> tuple[int, str]:
    if args.file == "-":
        raw = sys.stdin.read()
    else:
        with open(args.file) as f:
            raw = f.read()
    data = json.loads(raw)
    w = data.get("witness", data)
    kind = w.get("check")
    if kind not in _VERIFIERS:
        raise SystemExit2("no verifier for witness kind %r" % kind)
    ok = _VERIFIERS[kind](w)
    payload = {"check": "verify-witness", "kind": kind, "confirmed": ok}
    return (0 if ok else 1), _dump(payload)


# ------------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "dot", "csv"], default="json")
    common.add_argument("--output", default=None, help="write report to a file")

    p = argparse.ArgumentParser(prog="operad-forge", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("vd", parents=[common])
    sp.add_argument("--d", type=int, required=True)
    sp.set_defaults(func=cmd_vd)

    sp = sub.add_parser("tilde", parents=[common])
    sp.add_argument("--ell", type=int, required=True)
    sp.add_argument("--d", type=int, default=None)
    sp.set_defaults(func=cmd_tilde)

    sp = sub.add_parser("move-graph", parents=[common])
    sp.add_argument("--d", type=int, required=True)
    sp.set_defaults(func=cmd_move_graph)

    sp = sub.add_parser("conj1", parents=[common])
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--weakened", action="store_true")
    sp.set_defaults(func=cmd_conj1)

    sp = sub.add_parser("conj2", parents=[common])
    sp.add_argument("--d", type=int, required=True)
    sp.set_defaults(func=cmd_conj2)

    sp = sub.add_parser("cover", parents=[common])
    sp.add_argument("--d", type=int, required=True)
    sp.set_defaults(func=cmd_cover)

    sp = sub.add_parser("poset", parents=[common])
    sp.add_argument("--d", type=int, default=2)
    sp.add_argument("--tree", default=None, help='tree JSON like {"d":2,"tree":[[1],[2]]}')
    sp.add_argument("--homology", action="store_true")
    sp.add_argument("--dismantle", action="store_true")
    sp.add_argument("--cap", type=int, default=10**6)
    sp.set_defaults(func=cmd_poset)

    sp = sub.add_parser("milgram", parents=[common])
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--homology", action="store_true")
    sp.add_argument("--dismantle", action="store_true")
    sp.set_defaults(func=cmd_milgram)

    sp = sub.add_parser("paths", parents=[common])
    sp.add_argument("action", choices=["enumerate", "params", "membership"])
    sp.add_argument("--in", dest="in_degrees", default=None, help="comma-separated degrees")
    sp.add_argument("--out", type=int, default=None)
    sp.add_argument("--path", default=None, help="path JSON")
    sp.add_argument("--spec", default=None, help='block spec like "(121)"')
    sp.set_defaults(func=cmd_paths)

    sp = sub.add_parser("closure", parents=[common])
    sp.add_argument("--variant", choices=["tam", "seq2"], required=True)
    sp.add_argument("--weakened", action="store_true")
    sp.add_argument("--max-arity", type=int, default=3)
    sp.add_argument("--max-degree", type=int, default=1)
    sp.add_argument("--max-total-degree", type=int, default=2)
    sp.set_defaults(func=cmd_closure)

    sp = sub.add_parser("matching", parents=[common])
    sp.add_argument("--spec", required=True)
    sp.add_argument("--ell", type=int, required=True)
    sp.add_argument("--max-degree", type=int, default=2)
    sp.set_defaults(func=cmd_matching)

    sp = sub.add_parser("block-homology", parents=[common])
    sp.add_argument("--spec", required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--bound", type=int, default=8)
    sp.set_defaults(func=cmd_block_homology)

    sp = sub.add_parser("verify-witness", parents=[common])
    sp.add_argument("--file", required=True, help="witness JSON file, - for stdin")
    sp.set_defaults(func=cmd_verify_witness)

    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        _threads_from_env()
        code, text = args.func(args)
    except SystemExit2 as e:
        sys.stderr.write("error: %s\n" % e)
        return 2
    except (ValueError, KeyError, json.JSONDecodeError, OSError) as e:
        sys.stderr.write("error: %s\n" % e)
        return 2
    _emit(text, args.output)
    return code


if __name__ == "__main__":
    sys.exit(main())
