"""Command-line front end.

Subcommands: invariants, classify, normalize, act, sweep, verify.  States are
given inline or via --input FILE|- in the bra-ket surface syntax.  Numeric
output uses 15 significant digits.  Exit codes: 0 success, 1 failed
verification or internal error, 2 parse error, 3 unphysical state.

Two zero thresholds are in play (see --tol-zero): stored coefficients below
1e-12 are pruned as exact zeros, while "does this covariant vanish" decisions
in classification default to the looser 1e-9.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Sequence

from .grassmann import VANISH_TOL, AlgebraContext, GrassmannNumber, NoInverse
from .states import SuperState, Unphysical, make_state
from .parser import ParseError, parse_state, state_to_text
from . import osp
from .superlinear import Supermatrix, superbracket
from .invariants import (
    classify_super,
    covariant_report,
    infinitesimal_invariance_check,
    sdet,
    super_three_tangle,
    super_two_tangle,
    superhyperdet,
    superhyperdet_routes,
    t_covariance_check,
)


def _sig15(x: float) -> float:
    return float(f"{x:.15g}")


def _round_floats(obj):
    if isinstance(obj, float):
        return _sig15(obj)
    if isinstance(obj, dict):
        return {k: _round_floats(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [_round_floats(v) for v in obj]
    return obj


def _emit_json(data: dict) -> None:
    print(json.dumps(_round_floats(data), indent=2))


def _emit_csv_report(data: dict) -> None:
    def flatten(prefix, obj, rows):
        if isinstance(obj, dict):
            for k, v in obj.items():
                flatten(f"{prefix}.{k}" if prefix else str(k), v, rows)
        elif isinstance(obj, list):
            rows.append((prefix, json.dumps(_round_floats(obj))))
        else:
            rows.append((prefix, obj))

    rows: list[tuple[str, object]] = []
    flatten("", _round_floats(data), rows)
    print("key,value")
    for key, value in rows:
        print(f"{key},{value}")


def _fail(kind: str, message: str, code: int) -> int:
    print(json.dumps({"error": kind, "message": message}), file=sys.stderr)
    return code


def _read_state_text(args) -> str:
    if getattr(args, "state", None):
        return args.state
    source = getattr(args, "input", None) or "-"
    if source == "-":
        return sys.stdin.read()
    with open(source, "r", encoding="utf-8") as fh:
        return fh.read()


def _parse_complex(text: str) -> complex:
    cleaned = text.strip().replace(" ", "").replace("i", "j")
    try:
        return complex(cleaned)
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse complex number {text!r}") from None


# ---------------------------------------------------------------------------
# state commands
# ---------------------------------------------------------------------------


def cmd_invariants(args) -> int:
    state = parse_state(_read_state_text(args), n=args.n)
    report = covariant_report(state, tol=args.tol_zero)
    payload = report.to_json()
    if args.csv:
        _emit_csv_report(payload)
    else:
        _emit_json(payload)
    return 0


def cmd_classify(args) -> int:
    return cmd_invariants(args)


def cmd_normalize(args) -> int:
    state = parse_state(_read_state_text(args), n=args.n)
    normalized = state.normalize()
    payload = normalized.to_json()
    payload["text"] = state_to_text(normalized)
    if args.csv:
        _emit_csv_report(payload)
    else:
        _emit_json(payload)
    return 0


def cmd_act(args) -> int:
    state = parse_state(_read_state_text(args), n=args.n)
    result = osp.act_named_generator(state, args.generator, args.slot)
    payload = result.to_json()
    payload["generator"] = args.generator
    payload["slot"] = args.slot
    payload["text"] = state_to_text(result)
    _emit_json(payload)
    return 0


# ---------------------------------------------------------------------------
# parameter sweeps
# ---------------------------------------------------------------------------


def family_state_text(family: str, alpha: complex, beta: complex) -> str:
    """Surface-syntax text of a named interpolation family, with the
    normalization prefactor baked in."""
    norm = 1.0 / math.sqrt(abs(alpha) ** 2 + abs(beta) ** 2)
    if family == "bell-soul":
        a = alpha * norm / math.sqrt(2.0)
        b = beta * norm
        coeffs = {"00": a, "11": a, "**": b}
        n = 2
    elif family == "super-w":
        a = alpha * norm / math.sqrt(3.0)
        b = beta * norm / math.sqrt(3.0)
        coeffs = {"110": a, "101": a, "011": a, "**1": b, "*1*": b, "1**": b}
        n = 3
    elif family == "biseparable":
        a = alpha * norm / math.sqrt(2.0)
        coeffs = {"000": a, "011": a, "0**": beta * norm}
        n = 3
    else:
        raise ValueError(f"unknown family {family!r}")
    state = make_state(n, coeffs, AlgebraContext(n))
    return state_to_text(state)


def _parse_grid(spec: str) -> tuple[list[float], list[float]]:
    def axis(text: str) -> list[float]:
        try:
            lo_s, hi_s, k_s = text.split(":")
            lo, hi, k = float(lo_s), float(hi_s), int(k_s)
        except ValueError:
            raise argparse.ArgumentTypeError(
                f"bad grid axis {text!r}; use start:stop:steps"
            ) from None
        if k < 1:
            raise argparse.ArgumentTypeError("grid steps must be at least 1")
        if k == 1:
            return [lo]
        return [lo + (hi - lo) * i / (k - 1) for i in range(k)]

    parts = spec.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError("grid must be re0:re1:k,im0:im1:k")
    return axis(parts[0]), axis(parts[1])


def sweep_tau(family: str, alpha: complex, beta: complex) -> float:
    """One grid point through the full pipeline: text -> parse -> normalize ->
    invariant -> tangle body."""
    text = family_state_text(family, alpha, beta)
    state = parse_state(text)
    state = state.normalize()
    if state.n == 2:
        return super_two_tangle(state).body.real
    tau, status = super_three_tangle(state, verify=False)
    if tau is None:
        raise ArithmeticError(f"tangle undefined ({status})")
    return tau.body.real


def cmd_sweep(args) -> int:
    res, ims = _parse_grid(args.beta_grid)
    rows = []
    for im in ims:
        for re in res:
            tau = sweep_tau(args.family, args.alpha, complex(re, im))
            rows.append((re, im, tau))
    lines = ["beta_re,beta_im,tau"]
    lines.extend(f"{re:.15g},{im:.15g},{tau:.15g}" for re, im, tau in rows)
    text = "\n".join(lines) + "\n"
    if args.output and args.output != "-":
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


# ---------------------------------------------------------------------------
# verification suite
# ---------------------------------------------------------------------------


def _random_even_supermatrix(ctx, shape, rng, souls: bool = True) -> Supermatrix:
    from .grassmann import GrassmannNumber as GN

    rows = []
    for i in range(shape.dim):
        row = []
        for j in range(shape.dim):
            parity = (shape.deg(i) + shape.deg(j)) & 1
            if parity == 0:
                z = ctx.scalar(complex(rng.randint(-3, 3), rng.randint(-3, 3)))
                if souls and rng.random() < 0.5 and ctx.generator_count >= 2:
                    a = rng.randrange(ctx.generator_count)
                    b = rng.randrange(ctx.generator_count)
                    if a != b:
                        z = z + ctx.generator(a) * ctx.generator(b) * rng.randint(-2, 2)
            else:
                z = ctx.zero()
                for g in range(ctx.generator_count):
                    if rng.random() < 0.4:
                        z = z + ctx.generator(g) * rng.randint(-2, 2)
            row.append(z)
        rows.append(row)
    return Supermatrix(ctx, shape, shape, 0, rows)


def _random_state(n, ctx, rng):
    from .states import all_kets, ket_deg

    coeffs = {}
    for ket in all_kets(n):
        if ket_deg(ket) == 0:
            z = ctx.scalar(complex(rng.randint(-3, 3), rng.randint(-3, 3)))
            if rng.random() < 0.5:
                a = rng.randrange(ctx.generator_count)
                b = rng.randrange(ctx.generator_count)
                if a != b:
                    z = z + ctx.generator(a) * ctx.generator(b) * rng.randint(-2, 2)
        else:
            z = ctx.zero()
            for g in range(ctx.generator_count):
                if rng.random() < 0.4:
                    z = z + ctx.generator(g) * rng.randint(-2, 2)
        coeffs[ket] = z
    return SuperState(n, ctx, coeffs)


def run_verification(epsilon_fault: bool = False, print_table: bool = False, trials: int = 20) -> list[tuple[str, bool, str]]:
    """Run the algebra identity suite; returns (name, passed, detail) rows."""
    import random

    from .superlinear import GradedShape

    rng = random.Random(20231115)
    results: list[tuple[str, bool, str]] = []

    def record(name: str, fn) -> None:
        try:
            fn()
            results.append((name, True, ""))
        except Exception as exc:  # noqa: BLE001 - report and continue
            results.append((name, False, str(exc)))

    gens = osp.build_generators()
    ctx = gens.context

    def check_bracket_table():
        table = osp.bracket_table(gens, epsilon_fault=epsilon_fault)
        if print_table:
            names = [name for name, _ in osp.OSP12_BASIS]
            width = 10
            print("".rjust(width), *(n.rjust(width) for n in names))
            for r in names:
                cells = []
                for c in names:
                    combo = table[(r, c)]
                    cell = " + ".join(
                        (f"{v:+d}{k}" if abs(v) != 1 else ("+" if v > 0 else "-") + k)
                        for k, v in combo.items()
                    ) or "0"
                    cells.append(cell.rjust(width))
                print(r.rjust(width), *cells)

    record("bracket-table", check_bracket_table)
    record("rescaled-brackets", lambda: osp.check_rescaled_brackets(gens))

    def check_membership():
        for pair, t in gens.T.items():
            if t.max_abs() == 0:
                continue
            if not osp.is_osp_algebra_element(gens, t, tol=0.0):
                raise AssertionError(f"T{pair} fails the algebra membership condition")

    record("algebra-membership", check_membership)

    shape = GradedShape.of(2, 1)
    mctx = AlgebraContext(3)

    def check_st_order4():
        for _ in range(trials):
            m = _random_even_supermatrix(mctx, shape, rng)
            st4 = m.supertranspose().supertranspose().supertranspose().supertranspose()
            if not st4.isclose(m, 0.0):
                raise AssertionError("supertranspose is not of order four")

    record("supertranspose-order-4", check_st_order4)

    def check_str_cyclic():
        for _ in range(trials):
            m = _random_even_supermatrix(mctx, shape, rng)
            n = _random_even_supermatrix(mctx, shape, rng)
            lhs = (m @ n).supertrace()
            rhs = (n @ m).supertrace()
            if not lhs.isclose(rhs, 1e-9):
                raise AssertionError("supertrace not cyclic for even factors")
            if not m.supertranspose().supertrace().isclose(m.supertrace(), 1e-9):
                raise AssertionError("supertrace not supertranspose invariant")

    record("supertrace-cyclicity", check_str_cyclic)

    def check_ber():
        for _ in range(trials):
            m = _random_even_supermatrix(mctx, shape, rng)
            n = _random_even_supermatrix(mctx, shape, rng)
            try:
                bm, bn, bmn = m.berezinian(), n.berezinian(), (m @ n).berezinian()
            except (NoInverse, Exception) as exc:
                if "singular" in str(exc).lower() or isinstance(exc, NoInverse):
                    continue
                raise
            if not bmn.isclose(bm * bn, 1e-9):
                raise AssertionError("Berezinian not multiplicative")

    record("berezinian-multiplicative", check_ber)

    def check_ber_exp():
        from .grassmann import gn_exp

        for _ in range(max(4, trials // 2)):
            m = _random_even_supermatrix(mctx, shape, rng).scale(0.25)
            lhs = m.exp().berezinian()
            rhs = gn_exp(m.supertrace())
            if not lhs.isclose(rhs, 1e-9):
                raise AssertionError("Ber(exp M) != exp(str M)")

    record("berezinian-exp", check_ber_exp)

    def check_group_exponentials():
        for _ in range(trials):
            coeffs = [rng.uniform(-1, 1) for _ in range(3)]
            x = (
                gens.T[(0, 1)].scale(coeffs[0])
                + gens.T[(0, 0)].scale(coeffs[1])
                + gens.T[(1, 1)].scale(coeffs[2])
            )
            m = x.exp()
            if not osp.check_group_element(gens, m, tol=1e-9):
                raise AssertionError("exp of an even algebra element left the group")

    record("group-membership-exponentials", check_group_exponentials)

    def check_uosp():
        basis = osp.uosp_compact_basis(gens)
        eps = osp.EPSILON_LOWER
        for i, name in enumerate(("A1", "A2", "A3")):
            if not osp.check_uosp_algebra_element(basis[name], tol=0.0):
                raise AssertionError(f"{name} is not anti-super-Hermitian")
        for a in (0, 1):
            q_adj = gens.q_of(a).superadjoint()
            expected = gens.q_of(0).scale(eps[a][0]) + gens.q_of(1).scale(eps[a][1])
            if not q_adj.isclose(expected, 0.0):
                raise AssertionError("superadjoint of Q deviates from eps Q")
        for _ in range(trials):
            xi = [rng.uniform(-1, 1) for _ in range(3)]
            m = osp.uosp_algebra_element(gens, tuple(xi)).exp()
            if not osp.check_uosp_group_element(m, tol=1e-9):
                raise AssertionError("exp of a compact element is not superunitary")
        qctx = AlgebraContext(1)
        gens_q = osp.build_generators(context=qctx)
        eta = qctx.theta(0)
        x = osp.uosp_algebra_element(gens_q, (0.3, -0.2, 0.5), eta)
        if not osp.check_uosp_algebra_element(x, tol=0.0):
            raise AssertionError("compact element with odd parameter not anti-super-Hermitian")
        m = x.exp()
        if not osp.check_uosp_group_element(m, tol=1e-9):
            raise AssertionError("exp with odd parameter is not superunitary")

    record("uosp-conditions", check_uosp)

    def check_invariants():
        pairs = [(0, 0), (0, 1), (1, 1), (0, 2), (1, 2)]
        ctx2 = AlgebraContext(2)
        ctx3 = AlgebraContext(3)
        for _ in range(3):
            st2 = _random_state(2, ctx2, rng)
            for x1, x2 in pairs:
                for slot in (1, 2):
                    if not infinitesimal_invariance_check(st2, x1, x2, slot, "sdet"):
                        raise AssertionError("sdet not annihilated by a generator")
            st3 = _random_state(3, ctx3, rng)
            routes = superhyperdet_routes(st3)
            if not routes["supertrace"].isclose(routes["gamma_a"], 1e-9):
                raise AssertionError("sDet supertrace route disagrees")
            if not routes["t_contraction"].isclose(routes["gamma_a"], 1e-9):
                raise AssertionError("sDet T-contraction route disagrees")
            for x1, x2 in pairs:
                for slot in (1, 2, 3):
                    if not infinitesimal_invariance_check(st3, x1, x2, slot, "sDet"):
                        raise AssertionError("sDet not annihilated by a generator")

    record("invariant-annihilation", check_invariants)
    return results


def cmd_verify(args) -> int:
    results = run_verification(
        epsilon_fault=args.inject_epsilon_fault, print_table=args.table
    )
    failed = [name for name, ok, _ in results if not ok]
    for name, ok, detail in results:
        line = f"{'PASS' if ok else 'FAIL'} {name}"
        if detail and not ok:
            line += f": {detail}"
        print(line)
    return 1 if failed else 0


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="superqubit",
        description=(
            "Superqubit states, osp(1|2) algebra checks, and supersymmetric "
            "entanglement invariants.  Coefficient pruning threshold is 1e-12; "
            "classification treats quantities below --tol-zero (default 1e-9) "
            "as vanishing."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_state_opts(p, with_format=True):
        p.add_argument("state", nargs="?", help="inline state expression")
        p.add_argument("--n", type=int, default=None, help="number of superqubit slots")
        p.add_argument("--input", default=None, help="read the state from FILE or - (stdin)")
        p.add_argument("--tol-zero", type=float, default=VANISH_TOL, dest="tol_zero",
                       help="vanishing threshold for classification decisions")
        if with_format:
            fmt = p.add_mutually_exclusive_group()
            fmt.add_argument("--json", action="store_true", default=True, help="JSON output (default)")
            fmt.add_argument("--csv", action="store_true", default=False, help="flat CSV output")

    p_inv = sub.add_parser("invariants", help="compute the covariant/invariant report")
    add_state_opts(p_inv)
    p_inv.set_defaults(func=cmd_invariants)

    p_cls = sub.add_parser("classify", help="classify the entanglement pattern")
    add_state_opts(p_cls)
    p_cls.set_defaults(func=cmd_classify)

    p_nrm = sub.add_parser("normalize", help="normalize a physical state")
    add_state_opts(p_nrm)
    p_nrm.set_defaults(func=cmd_normalize)

    p_act = sub.add_parser("act", help="apply a generator to one slot of a state")
    add_state_opts(p_act, with_format=False)
    p_act.add_argument("--generator", required=True, choices=sorted(osp.GENERATOR_LABELS),
                       help="P00, P01, P11, Q0 or Q1")
    p_act.add_argument("--slot", type=int, required=True, help="1-based slot index")
    p_act.set_defaults(func=cmd_act)

    p_swp = sub.add_parser("sweep", help="tangle over a beta grid for a named family")
    p_swp.add_argument("--family", required=True, choices=["bell-soul", "super-w", "biseparable"])
    p_swp.add_argument("--alpha", type=_parse_complex, default=complex(1.0))
    p_swp.add_argument("--beta-grid", default="-2:2:21,-2:2:21", dest="beta_grid",
                       help="re0:re1:k,im0:im1:k (inclusive linear grids)")
    p_swp.add_argument("--output", default="-", help="CSV output path or - (stdout)")
    p_swp.set_defaults(func=cmd_sweep)

    p_ver = sub.add_parser("verify", help="run the algebra identity suite")
    p_ver.add_argument("--table", action="store_true", help="print the bracket table")
    p_ver.add_argument("--inject-epsilon-fault", action="store_true",
                       dest="inject_epsilon_fault",
                       help="test hook: corrupt one epsilon entry and watch the table check fail")
    p_ver.set_defaults(func=cmd_verify)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        return _fail("parse", str(exc), 2)
    except Unphysical as exc:
        return _fail("unphysical", str(exc), 3)
    except (ValueError, ArithmeticError) as exc:
        return _fail("invalid", str(exc), 1)


if __name__ == "__main__":
    sys.exit(main())
