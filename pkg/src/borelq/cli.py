"""Command-line interface ``borelq``.

Exit codes: 0 success, 1 a check failed, 2 usage or domain error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from importlib import resources
from typing import Sequence

from . import __version__
from .algebra import (AlgebraError, BasisCache, ConsistencyError, ReducedElement, UqBorel,
                      dimension_check, format_k, format_word, pbw_check, serre_check, smash_check)
from .cartan import (CartanError, cartan_datum, kostant_dim, longest_element, positive_root_frame,
                     weyl_group)
from .expr import EvalError, ParseError, eval_borel
from .hopf import BorelHopf, antipode, antipode_inv, borel_axiom_check, delta
from .quotient import FiniteHopf, QuotientError, quotient_spec
from .repmod import F_of, F_sigma_injectivity_check, WeightSymbol, tensor_of_vermas, weight_of_vector
from .rmatrix import classify, solve_finite, solve_generic, verify_qcc, witness_tensor
from .scalars import ScalarContext, ScalarError


class UsageError(Exception):
    pass


class Output:
    """Collects a JSON document and the equivalent text lines."""

    def __init__(self, command: str):
        self.doc: dict = {"command": command}
        self.lines: list[str] = []
        self.ok = True

    def text(self, line: str = "") -> None:
        self.lines.append(line)

    def render(self, as_json: bool) -> str:
        if as_json:
            return json.dumps(self.doc, sort_keys=True, indent=2) + "\n"
        return "\n".join(self.lines) + ("\n" if self.lines else "")


# -- helpers -------------------------------------------------------------------------

def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError as exc:
        raise UsageError(f"expected a comma-separated list of integers, got {text!r}") from exc


def _datum(args):
    return cartan_datum(args.type)


def _frame(args, datum):
    word = getattr(args, "word", None)
    if word:
        return positive_root_frame(datum, _ints(word), one_based=True)
    return None


def _cache(args) -> BasisCache:
    return BasisCache(args.cache_dir or os.environ.get("BORELQ_CACHE_DIR") or None)


def _algebra(args) -> UqBorel:
    datum = _datum(args)
    return UqBorel(datum, frame=_frame(args, datum), cache=_cache(args))


def _fmt_matrix(M) -> str:
    return "[" + ", ".join("[" + ", ".join(str(x) for x in row) + "]" for row in M) + "]"


def _specialize(args, c):
    r = getattr(args, "r", None)
    return ScalarContext(r).coerce(c) if r else c


def _element_json(args, x: ReducedElement) -> dict:
    terms = []
    for (w, lam), c in x.sorted_terms():
        c = _specialize(args, c)
        if c:
            terms.append({"word": [i + 1 for i in w], "k": list(lam), "coeff": str(c)})
    return {"terms": terms}


def _element_text(args, x: ReducedElement) -> str:
    if not getattr(args, "r", None):
        return str(x)
    out = {}
    for m, c in x.terms.items():
        c = _specialize(args, c)
        if c:
            out[m] = c
    return str(ReducedElement(x.alg, out))


def _mono_label(m) -> str:
    w, lam = m
    return "*".join(p for p in (format_word("E", w), format_k(lam)) if p) or "1"


def _tensor_json(args, T) -> list:
    rows = []
    for key in sorted(T.terms):
        c = _specialize(args, T.terms[key])
        if c:
            rows.append({"factors": [_mono_label(m) for m in key], "coeff": str(c)})
    return rows


# -- subcommands ---------------------------------------------------------------------

def cmd_cartan(args, out: Output):
    datum = _datum(args)
    frame = _frame(args, datum) or positive_root_frame(datum)
    W = weyl_group(datum)
    w0 = longest_element(datum)
    out.doc.update({"type": datum.name, "C": [list(r) for r in datum.C], "D": list(datum.D),
                    "DC": [list(r) for r in datum.DC], "weyl_order": len(W), "N": frame.N,
                    "longest_length": w0.length, "w0_word": [i + 1 for i in frame.w0_word],
                    "betas": [list(b) for b in frame.betas]})
    out.text(f"type: {datum.name}")
    out.text(f"C: {_fmt_matrix(datum.C)}")
    out.text(f"D: {list(datum.D)}")
    out.text(f"DC: {_fmt_matrix(datum.DC)}")
    out.text(f"|W|: {len(W)}")
    out.text(f"N: {frame.N}")
    out.text(f"w0 word: {' '.join(str(i + 1) for i in frame.w0_word)}")
    for s, b in enumerate(frame.betas):
        out.text(f"beta_{s + 1} = {list(b)}")


def cmd_roots(args, out: Output):
    alg = _algebra(args)
    vecs = alg.root_vectors()
    rows = []
    for s, (b, v) in enumerate(zip(alg.frame.betas, vecs)):
        rows.append({"index": s + 1, "beta": list(b), "element": str(v),
                     "cancellation": alg.cancellation_levels[s]})
        out.text(f"E_beta_{s + 1} [{','.join(map(str, b))}] = {v}   ({alg.cancellation_levels[s]})")
    out.doc.update({"type": alg.datum.name, "w0_word": [i + 1 for i in alg.frame.w0_word],
                    "root_vectors": rows})


def cmd_dim(args, out: Output):
    alg = _algebra(args)
    eta = _ints(args.eta)
    if len(eta) != alg.n:
        raise UsageError(f"--eta needs {alg.n} entries")
    k = kostant_dim(alg.frame, eta)
    try:
        dim = alg.graded_basis(eta).dim
    except ConsistencyError:
        dim = None
    out.ok = dim == k
    out.doc.update({"type": alg.datum.name, "eta": list(eta), "dim": dim, "kostant": k, "pass": out.ok})
    out.text(str(dim))


def cmd_pbw(args, out: Output):
    alg = _algebra(args)
    rep = pbw_check(alg, args.height)
    out.ok = rep["pass"]
    out.doc.update({"type": alg.datum.name, "height": args.height, **rep})
    for rv in rep["root_vectors"]:
        out.text(f"E_beta_{rv['index']} = {rv['element']}")
    for row in rep["degrees"]:
        out.text(f"eta={row['eta']} count={row['count']} kostant={row['kostant']} "
                 f"independent={row['independent']} {'ok' if row['pass'] else 'FAIL'}")
    out.text("PASS" if out.ok else "FAIL")


def cmd_nf(args, out: Output):
    alg = _algebra(args)
    x = eval_borel(alg, args.expr)
    out.doc.update({"type": alg.datum.name, "input": args.expr, "normal_form": _element_text(args, x),
                    **_element_json(args, x)})
    out.text(_element_text(args, x))


def cmd_delta(args, out: Output):
    alg = _algebra(args)
    x = eval_borel(alg, args.expr)
    T = delta(BorelHopf(alg), x.terms)
    terms = _tensor_json(args, T)
    text = " + ".join(f"({t['coeff']})*{t['factors'][0]} (x) {t['factors'][1]}" for t in terms) or "0"
    out.doc.update({"type": alg.datum.name, "input": args.expr, "delta": terms, "text": str(T)})
    out.text(str(T) if not args.r else text)


def cmd_antipode(args, out: Output):
    alg = _algebra(args)
    x = eval_borel(alg, args.expr)
    H = BorelHopf(alg)
    y = ReducedElement(alg, (antipode_inv if args.inverse else antipode)(H, x.terms))
    out.doc.update({"type": alg.datum.name, "input": args.expr, "inverse": args.inverse,
                    "antipode": _element_text(args, y), **_element_json(args, y)})
    out.text(_element_text(args, y))


def cmd_serre_check(args, out: Output):
    alg = _algebra(args)
    height = args.height if args.height is not None else (5 if alg.datum.name == "G2" else 6)
    dims = dimension_check(alg, height)
    serre = serre_check(alg)
    out.ok = all(r["pass"] for r in dims) and all(r["pass"] for r in serre)
    out.doc.update({"type": alg.datum.name, "height": height, "dimensions": dims, "serre": serre,
                    "pass": out.ok})
    for r in serre:
        out.text(f"serre({r['i']},{r['j']}) degree {r['degree']}: {'0' if r['pass'] else 'NONZERO'}")
    bad = [r for r in dims if not r["pass"]]
    out.text(f"{len(dims)} degrees up to height {height}, {len(bad)} mismatches against kostant_dim")
    for r in bad:
        out.text(f"  eta={r['eta']} dim={r['dim']} kostant={r['kostant']}")
    out.text("PASS" if out.ok else "FAIL")


def cmd_hopf_check(args, out: Output):
    alg = _algebra(args)
    rep = borel_axiom_check(alg, args.height, args.box)
    out.ok = rep["pass"]
    out.doc.update({"type": alg.datum.name, "height": args.height, "box": args.box, **rep})
    for law, ok in rep["laws"].items():
        extra = f" (first failure: {rep['counterexamples'][law]})" if not ok else ""
        out.text(f"{law}: {'ok' if ok else 'FAIL'}{extra}")
    out.text(f"checked {rep['checked']} elements: {'PASS' if out.ok else 'FAIL'}")


def cmd_smash_check(args, out: Output):
    alg = _algebra(args)
    rep = smash_check(alg, args.height, args.box)
    out.ok = rep["pass"]
    out.doc.update({"type": alg.datum.name, "height": args.height, "box": args.box, **rep})
    out.text(f"checked {rep['checked']} basis pairs: {'PASS' if out.ok else 'FAIL'}")
    for a, b in rep["failures"]:
        out.text(f"  not multiplicative on ({a}, {b})")


def _solution_row(sol, verify: bool) -> dict:
    row = sol.to_json()
    if verify and sol.invertible_exists and sol.spec.k_central:
        H = FiniteHopf(sol.spec)
        rep = verify_qcc(H, witness_tensor(H, sol.witness))
        row["checks"] = row["checks"] + [{"name": "verify_qcc", "pass": rep["pass"]}]
    return row


def _rmatrix_text(out: Output, row: dict) -> None:
    c = row["case"]
    status = "invalid (d <= d0)" if not row["valid"] else (
        f"kernel_dim={row['kernel_dim']} invertible_exists={row['invertible_exists']}")
    out.text(f"{c['type']:>3} r={c['r']:<2} d={c['d']:<2} {status}")
    if row["valid"]:
        out.text(f"      q^(2A) = 1 on the index group: {row['consistent']}")
    for chk in row["checks"]:
        out.text(f"      {chk['name']}: {'ok' if chk['pass'] else 'FAIL'}")
    for name in row["skipped_checks"]:
        out.text(f"      skipped: {name}")
    if row.get("note"):
        out.text(f"      note: {row['note']}")


def cmd_rmatrix_solve(args, out: Output):
    datum = _datum(args)
    sol = solve_finite(quotient_spec(datum, args.r))
    row = _solution_row(sol, not args.no_verify)
    out.ok = all(chk["pass"] for chk in row["checks"])
    out.doc.update(row)
    _rmatrix_text(out, row)
    if row.get("witness"):
        out.text("witness: " + " + ".join(f"({w['a']})*K^{w['j']} (x) K^{w['l']}" for w in row["witness"]))


def _load_grid(spec: str) -> list[tuple[str, int]]:
    try:
        if spec == "default":
            data = json.loads(resources.files("borelq").joinpath("data", "default_grid.json").read_text())
        else:
            with open(spec) as fh:
                data = json.load(fh)
    except (OSError, ValueError) as exc:
        raise UsageError(f"cannot read grid file {spec!r}: {exc}") from exc
    if not isinstance(data, list):
        raise UsageError("grid file must be a JSON list of {type, rank, r}")
    grid = []
    for entry in data:
        if not isinstance(entry, dict) or "type" not in entry or "r" not in entry:
            raise UsageError(f"bad grid entry {entry!r}")
        t = entry["type"]
        name = f"{t}{entry['rank']}" if "rank" in entry and not t[-1].isdigit() else t
        grid.append((name, int(entry["r"])))
    return grid


def cmd_rmatrix_classify(args, out: Output):
    sols = classify(_load_grid(args.grid))
    rows = [_solution_row(s, not args.no_verify) for s in sols]
    positive = [[r["case"]["type"], r["case"]["r"]] for r in rows if r["invertible_exists"]]
    out.ok = all(chk["pass"] for r in rows for chk in r["checks"])
    out.doc.update({"rows": rows, "positive": positive})
    for r in rows:
        _rmatrix_text(out, r)
    out.text("positive rows: " + (", ".join(f"({t}, r={r})" for t, r in positive) or "none"))


def cmd_rmatrix_generic(args, out: Output):
    datum = _datum(args)
    k = solve_generic(datum, args.box)
    kg = solve_generic(datum, args.box, method="graph")
    out.ok = k == 0 and kg == k
    out.doc.update({"type": datum.name, "box": args.box, "kernel_dim": k, "graph_kernel_dim": kg,
                    "pass": out.ok})
    out.text(f"kernel_dim = {k} (graph solver {kg})")


def cmd_verma_weights(args, out: Output):
    alg = _algebra(args)
    from .cartan import degrees_up_to_height
    sigma = WeightSymbol.symbol("s", alg.n)
    rows = []
    for eta in degrees_up_to_height(alg.n, args.height):
        w = weight_of_vector(alg.datum, sigma, eta)
        rows.append({"eta": list(eta), "weight": str(w), "dim": kostant_dim(alg.frame, eta),
                     "F": list(F_of(alg.datum, eta))})
        out.text(f"eta={list(eta)} weight={w} dim={rows[-1]['dim']}")
    inj = F_sigma_injectivity_check(alg.datum.DC, args.height)
    out.ok = inj
    out.doc.update({"type": alg.datum.name, "height": args.height, "weights": rows,
                    "F_injective": inj, "pass": inj})
    out.text(f"F_sigma injective up to height {args.height}: {inj}")


def cmd_verma_tensor(args, out: Output):
    alg = _algebra(args)
    rep = tensor_of_vermas(alg, args.height).decompose()
    out.ok = rep.passed
    out.doc.update({"type": alg.datum.name, "height": args.height, **rep.to_json()})
    for s in rep.slices:
        ranks = ",".join(f"{r}" for _, r in sorted(s.generator_ranks.items()))
        out.text(f"degree={list(s.degree)} weight={s.weight} dim={s.dim} ranks=[{ranks}] "
                 f"{'ok' if s.passed else 'FAIL'}")
    for e, c in sorted(rep.multiplicities.items()):
        out.text(f"multiplicity {list(e)}: {c} (kostant {rep.expected_multiplicities.get(e)})")
    out.text("PASS" if out.ok else "FAIL")


def _finite(args) -> FiniteHopf:
    datum = _datum(args)
    return FiniteHopf(quotient_spec(datum, args.r))


def _vec(text: str, n: int, d: int) -> tuple:
    v = _ints(text)
    if len(v) != n:
        raise UsageError(f"expected {n} entries, got {text!r}")
    return tuple(x % d for x in v)


def _yd_module(args):
    from .yd import BetaChar, build_H_beta_g
    H = _finite(args)
    beta = BetaChar(_vec(args.beta, H.n, H.d))
    g = H.group_like(_vec(args.g, H.n, H.d))
    return H, build_H_beta_g(H, beta, g)


def _yd_doc(H, mod) -> dict:
    from .yd import phi_invariants
    return {"type": H.spec.datum.name, "r": H.spec.r, "d": H.d, "beta": list(mod.beta.exps),
            "g": list(mod.g[1]), "dim": mod.dim, "carrier": [H.fmt(v) for v in mod.basis],
            "invariants": phi_invariants(mod)}


def cmd_yd_build(args, out: Output):
    H, mod = _yd_module(args)
    out.doc.update(_yd_doc(H, mod))
    out.text(f"H_beta,g with beta={list(mod.beta.exps)} g={H.mono_str(mod.g)}: dim {mod.dim}")
    for v in mod.basis:
        out.text(f"  {H.fmt(v)}")


def cmd_yd_check(args, out: Output):
    from .yd import action_associative, coaction_counit, unital, yd_compatibility_check
    H, mod = _yd_module(args)
    rep = yd_compatibility_check(mod, args.height)
    doc = _yd_doc(H, mod)
    inv = doc["invariants"]
    roundtrip = inv.get("beta") == list(mod.beta.exps) and inv.get("g") == list(mod.g[1])
    module_ok = action_associative(mod) and unital(mod) and coaction_counit(mod)
    out.ok = rep["pass"] and roundtrip and module_ok
    doc.update({"conjugation_form": rep["conjugation_form"], "compatibility": rep["compatibility"], "coaction_closed": rep["coaction_closed"],
                "module_laws": module_ok, "roundtrip": roundtrip, "yd_ok": rep["pass"], "pass": out.ok})
    out.doc.update(doc)
    out.text(f"dim {mod.dim}; conjugation form {rep['conjugation_form']}; compatibility {rep['compatibility']}; coaction closed "
             f"{rep['coaction_closed']}; module laws {module_ok}; invariants round-trip {roundtrip}")
    out.text("PASS" if out.ok else "FAIL")


def cmd_yd_scan(args, out: Output):
    from .yd import scan
    H = _finite(args)
    rows = scan(H, args.height)
    readouts = [(tuple(r["invariants"].get("beta", ())), tuple(r["invariants"].get("g", ()))) for r in rows]
    roundtrip = all(ro == (tuple(r["beta"]), tuple(r["g"])) for ro, r in zip(readouts, rows))
    distinct = len(set(readouts)) == len(readouts)
    out.ok = all(r["yd_ok"] for r in rows) and roundtrip and distinct
    out.doc.update({"type": H.spec.datum.name, "r": H.spec.r, "d": H.d, "rows": rows,
                    "roundtrip": roundtrip, "distinct": distinct, "pass": out.ok})
    out.text(f"{'beta':>6} {'g':>6} {'dim':>4}  yd_ok  readout")
    for r in rows:
        inv = r["invariants"]
        out.text(f"{str(r['beta']):>6} {str(r['g']):>6} {r['dim']:>4}  {str(r['yd_ok']):5}  "
                 f"beta={inv.get('beta')} g={inv.get('g')}")
    out.text(f"round-trip {roundtrip}; distinct {distinct}: {'PASS' if out.ok else 'FAIL'}")


# -- parser --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON")
    common.add_argument("--cache-dir", default=None, help="graded-basis cache directory")

    typed = argparse.ArgumentParser(add_help=False, parents=[common])
    typed.add_argument("--type", required=True, help="Cartan type, e.g. A2, B2, G2")
    typed.add_argument("--word", default=None, help="reduced word for w0, 1-based, e.g. 1,2,1")

    p = argparse.ArgumentParser(prog="borelq", description="Exact computations in U_q^{>=0}.")
    p.add_argument("--version", action="version", version=f"borelq {__version__}")
    sub = p.add_subparsers(dest="command", metavar="command")
    sub.required = True

    def add(name, fn, parents=(typed,), **kw):
        sp = sub.add_parser(name, parents=list(parents), **kw)
        sp.set_defaults(func=fn)
        return sp

    add("cartan", cmd_cartan, help="Cartan datum, Weyl group and positive roots")
    add("roots", cmd_roots, help="root vectors via braid operators")
    add("dim", cmd_dim, help="dimension of a graded piece").add_argument("--eta", required=True)
    add("pbw", cmd_pbw, help="PBW basis check").add_argument("--height", type=int, default=4)
    for name, fn, what in (("nf", cmd_nf, "normal form"), ("delta", cmd_delta, "coproduct"),
                           ("antipode", cmd_antipode, "antipode")):
        sp = add(name, fn, help=f"{what} of an expression")
        sp.add_argument("expr")
        sp.add_argument("--r", type=int, default=None, help="specialise coefficients at a root of unity")
        if name == "antipode":
            sp.add_argument("--inverse", action="store_true")
    add("serre-check", cmd_serre_check, help="Serre relations and graded dimensions").add_argument(
        "--height", type=int, default=None)
    for name, fn, what in (("hopf-check", cmd_hopf_check, "Hopf"), ("smash-check", cmd_smash_check, "smash product")):
        sp = add(name, fn, help=f"{what} axiom suite")
        sp.add_argument("--height", type=int, default=3)
        sp.add_argument("--box", type=int, default=1)

    rm = sub.add_parser("rmatrix", help="quasi-cocommutativity constraint systems")
    rms = rm.add_subparsers(dest="rcommand", metavar="subcommand")
    rms.required = True
    sp = rms.add_parser("solve", parents=[typed])
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--no-verify", action="store_true")
    sp.set_defaults(func=cmd_rmatrix_solve)
    sp = rms.add_parser("classify", parents=[common])
    sp.add_argument("--grid", default="default", help="'default' or a JSON file of {type, rank, r}")
    sp.add_argument("--no-verify", action="store_true")
    sp.set_defaults(func=cmd_rmatrix_classify)
    sp = rms.add_parser("generic", parents=[typed])
    sp.add_argument("--box", type=int, default=2)
    sp.set_defaults(func=cmd_rmatrix_generic)

    vm = sub.add_parser("verma", help="Verma modules")
    vms = vm.add_subparsers(dest="vcommand", metavar="subcommand")
    vms.required = True
    for name, fn in (("weights", cmd_verma_weights), ("tensor-decompose", cmd_verma_tensor)):
        sp = vms.add_parser(name, parents=[typed])
        sp.add_argument("--height", type=int, default=4)
        sp.set_defaults(func=fn)

    yd = sub.add_parser("yd", help="Yetter-Drinfel'd modules over the finite quotient")
    yds = yd.add_subparsers(dest="ycommand", metavar="subcommand")
    yds.required = True
    for name, fn in (("build", cmd_yd_build), ("check", cmd_yd_check), ("scan", cmd_yd_scan)):
        sp = yds.add_parser(name, parents=[typed])
        sp.add_argument("--r", type=int, required=True)
        if name != "scan":
            sp.add_argument("--beta", required=True, help="beta(K_i) = zeta_d^k_i; comma list")
            sp.add_argument("--g", required=True, help="g = K^m; comma list")
        if name != "build":
            sp.add_argument("--height", type=int, default=3)
        sp.set_defaults(func=fn)
    return p


def _command_name(args) -> str:
    parts = [args.command]
    for attr in ("rcommand", "vcommand", "ycommand"):
        if getattr(args, attr, None):
            parts.append(getattr(args, attr))
    return " ".join(parts)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else 2
    out = Output(_command_name(args))
    try:
        args.func(args, out)
    except (UsageError, CartanError, ParseError, EvalError, QuotientError, ScalarError, AlgebraError) as exc:
        print(f"borelq: error: {exc}", file=sys.stderr)
        return 2
    except ConsistencyError as exc:
        print(f"borelq: consistency failure: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(out.render(args.json))
    return 0 if out.ok else 1


def schema_text(name: str) -> str:
    return resources.files("borelq").joinpath("schemas", f"{name}.json").read_text()


if __name__ == "__main__":
    sys.exit(main())
