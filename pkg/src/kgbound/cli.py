"""Command-line front end.

Subcommands: ``spectrum``, ``table1``, ``wavefunction``, ``oracle`` and
``potential-curve``. Every subcommand writes CSV (header row, comma
separator, LF endings, numbers as ``%.11e``) to ``--output`` or stdout.

Exit codes: 0 ok, 1 usage error, 2 no roots, 3 table mismatch,
4 non-normalizable state, 5 oracle disagreement.
"""

from __future__ import annotations

import argparse
import io
import math
import os
import sys

import numpy as np

from .errors import KGError, NonNormalizableError, NoSignChangeError
from .oracle import (
    NONREL_2V,
    NONREL_V,
    RELATIVISTIC_APPROX,
    RELATIVISTIC_EXACT,
    IntegratorConfig,
    approximation_error,
    approximation_error_csv,
    build_effective,
    default_domain,
    locate_eigenvalue,
)
from .potentials import (
    EckartType,
    Hulthen,
    RosenMorseType,
    RosenMorseWell,
    StandardEckart,
    TrigRosenMorse,
    WoodsSaxon,
    dimensional_numbers,
    ECKART_LIKE,
    evaluate_potential,
    family_of,
)
from .spectrum import (
    KG_LIMIT_2V,
    SCHRODINGER_V,
    ScanConfig,
    find_bound_states,
    nonrelativistic_energy,
    nonrelativistic_exponents,
)
from .tables import BLOCKS, TABLE_TOL, compute_row, row_matches
from .wavefn import FULL_LINE, HALF_LINE, GridConfig, count_nodes_values, normalize, ode_residual, radial_u

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NO_ROOTS = 2
EXIT_TABLE = 3
EXIT_NONNORM = 4
EXIT_ORACLE = 5

TOL_ENV = "KG_TOL_ROOT"

MODELS = (
    "eckart-type",
    "rosen-morse-type",
    "hulthen",
    "woods-saxon",
    "eckart",
    "rosen-morse-well",
    "trig-rosen-morse",
)

ORACLE_MODES = {
    "approx": RELATIVISTIC_APPROX,
    "exact": RELATIVISTIC_EXACT,
    "nonrel-V": NONREL_V,
    "nonrel-2V": NONREL_2V,
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad flags; 2 means "no roots" here
    def error(self, message):
        raise UsageError(message)


def fmt(x: float) -> str:
    return f"{x:.11e}"


def _range_arg(text: str) -> list[int]:
    """``3``, ``1..5`` or ``0,1,2``."""
    try:
        if ".." in text:
            lo, hi = text.split("..")
            out = list(range(int(lo), int(hi) + 1))
        else:
            out = [int(t) for t in text.split(",")]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad integer list {text!r}") from exc
    if not out or min(out) < 0:
        raise argparse.ArgumentTypeError(f"bad integer list {text!r}")
    return out


def _float_list(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",")]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad number list {text!r}") from exc


def _add_model_flags(p: argparse.ArgumentParser, default_model: str | None = None):
    g = p.add_argument_group("model")
    g.add_argument("--model", choices=MODELS, default=default_model, required=default_model is None)
    g.add_argument("--v0", type=float)
    g.add_argument("--v1", type=float)
    g.add_argument("--v2", type=float)
    g.add_argument("--v3", type=float)
    g.add_argument("--q", type=float, default=1.0)
    g.add_argument("--alpha", type=float, default=1.0)
    g.add_argument("--a", type=float, help="trigonometric model: V1 = a(a+1)")
    g.add_argument("--b", type=float, help="trigonometric model: V2 = 2b")


def _add_state_flags(p: argparse.ArgumentParser):
    g = p.add_argument_group("state")
    g.add_argument("--mass", type=float, default=1.0)
    g.add_argument("--n", type=_range_arg, default=[0], help="3, 1..5 or 0,1,2")
    g.add_argument("--l", type=int, default=0)
    g.add_argument("--dim", type=int, default=3)
    g.add_argument("--branch", choices=("+1", "-1", "both"), default="both")
    g.add_argument("--grid-points", type=int, default=2048)
    g.add_argument("--tol-root", type=float, help=f"absolute root tolerance (env {TOL_ENV})")
    g.add_argument("--hbar-c", type=float, default=1.0)


def _need(args, *names):
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"model {args.model} needs {', '.join(missing)}")
    return [getattr(args, n) for n in names]


def build_model(args):
    """Instantiate the potential selected by the model flags."""
    m, a, q = args.model, args.alpha, args.q
    if m == "eckart-type":
        return EckartType(*_need(args, "v1", "v2", "v3"), q=q, alpha=a)
    if m == "rosen-morse-type":
        return RosenMorseType(*_need(args, "v1", "v2", "v3"), q=q, alpha=a)
    if m == "hulthen":
        return Hulthen(*_need(args, "v0"), alpha=a)
    if m == "woods-saxon":
        return WoodsSaxon(*_need(args, "v0"), alpha=a)
    if m == "eckart":
        return StandardEckart(*_need(args, "v1", "v2"), alpha=a)
    if m == "rosen-morse-well":
        return RosenMorseWell(*_need(args, "v1", "v2"), q=q, alpha=a)
    return TrigRosenMorse(*_need(args, "a", "b"), alpha=a)


def _branches(args) -> tuple[int, ...]:
    return {"+1": (1,), "-1": (-1,), "both": (1, -1)}[args.branch]


def _scan(args) -> ScanConfig:
    tol = args.tol_root
    if tol is None and os.environ.get(TOL_ENV):
        try:
            tol = float(os.environ[TOL_ENV])
        except ValueError as exc:
            raise UsageError(f"{TOL_ENV} is not a number") from exc
    return ScanConfig(grid_points=args.grid_points, tol_root=tol, hbar_c=args.hbar_c)


def _states(args, m, n):
    dn = dimensional_numbers(args.dim, args.l)
    return find_bound_states(m, n, dn, _branches(args), args.mass, _scan(args))


def cmd_spectrum(args, out) -> int:
    m = build_model(args)
    out.write("n,l,D,branch,E,p,w,admissible_flags\n")
    rows = 0
    for n in args.n:
        for b in _states(args, m, n):
            flags = ";".join(b.admissible.names())
            out.write(f"{b.n},{b.l},{b.D},{b.sign_branch:+d},{fmt(b.E)},{fmt(b.exponents.p)},"
                      f"{fmt(b.exponents.w)},{flags}\n")
            rows += 1
    return EXIT_OK if rows else EXIT_NO_ROOTS


def cmd_table1(args, out) -> int:
    scan = _scan(args)
    cols = [f"E_computed_{i}" for i in range(1, 5)] + [f"E_paper_{i}" for i in range(1, 5)]
    out.write("block,n," + ",".join(cols) + ",match\n")
    offenders = []
    for block in BLOCKS:
        for n in sorted(block.rows):
            tab = block.rows[n]
            got = compute_row(block, n, scan)
            ok = row_matches(got, tab, args.tol)
            if not ok:
                offenders.append((block.index, n))
            cells = [fmt(v) for v in got[:4]] + ["-"] * (4 - min(len(got), 4))
            cells += [fmt(v) for v in tab] + ["-"] * (4 - len(tab))
            out.write(f"{block.index},{n}," + ",".join(cells) + f",{'true' if ok else 'false'}\n")
    if offenders:
        listed = " ".join(f"block{b}/n={n}" for b, n in offenders)
        print(f"table mismatch: {listed}", file=sys.stderr)
        return EXIT_TABLE
    return EXIT_OK


def cmd_wavefunction(args, out) -> int:
    m = build_model(args)
    n = args.n[0]
    states = _states(args, m, n)
    if not states:
        print("no roots for this state", file=sys.stderr)
        return EXIT_NO_ROOTS
    if not 0 <= args.root_index < len(states):
        raise UsageError(f"--root-index must lie in [0, {len(states) - 1}]")
    b = states[args.root_index]
    domain = args.domain or default_domain(m)
    full = domain == FULL_LINE
    if args.normalize:
        try:
            s = normalize(b, m, GridConfig(), domain)
        except NonNormalizableError as exc:
            print(f"not normalizable: {exc}", file=sys.stderr)
            return EXIT_NONNORM
        out.write(s.to_csv())
        nodes, res = s.node_count, s.max_ode_residual
    else:
        a = family_of(m).alpha
        lo = args.r_min if args.r_min is not None else (-20.0 / a if full else 1e-3 / a)
        hi = args.r_max if args.r_max is not None else 20.0 / a
        r = np.linspace(lo, hi, args.points)
        u = radial_u(b, m, r, full_line=full)
        R = u if full else r ** (-(b.D - 1) / 2.0) * u
        out.write("r,u,R\n")
        for x, uu, RR in zip(r, u, R):
            out.write(f"{fmt(x)},{fmt(uu)},{fmt(RR)}\n")
        nodes = count_nodes_values(u)
        res = ode_residual(b, m, r, full_line=full)
    print(f"E={fmt(b.E)} nodes={nodes} max_ode_residual={res:.3e}", file=sys.stderr)
    return EXIT_OK


def _normalizable(m, domain: str, n: int, p: float, w: float) -> bool:
    """Whether a closed form with exponents (p, w) decays on ``domain``."""
    if not p > 0:
        return False
    if domain == FULL_LINE:
        return p + w + n < 0
    return w > 0 or family_of(m).kind != ECKART_LIKE


def _closed_roots(args, m, n, mode, domain):
    """(branch, E_closed, normalizable) for the closed form matching an oracle mode."""
    dn = dimensional_numbers(args.dim, args.l)
    if mode in (NONREL_V, NONREL_2V):
        nr = SCHRODINGER_V if mode == NONREL_V else KG_LIMIT_2V
        E = nonrelativistic_energy(m, n, dn, args.mass, nr, args.hbar_c)
        ex = nonrelativistic_exponents(m, n, dn, args.mass, nr, args.hbar_c)
        return [(0, E, _normalizable(m, domain, n, ex.p, ex.w))]
    return [(b.sign_branch, b.E, _normalizable(m, domain, n, b.exponents.p, b.exponents.w))
            for b in _states(args, m, n)]


def cmd_oracle(args, out) -> int:
    m = build_model(args)
    mode = ORACLE_MODES[args.mode]
    dn = dimensional_numbers(args.dim, args.l)
    if mode == RELATIVISTIC_EXACT:
        alphas = args.alpha_sweep or [args.alpha]
        sign = 1 if args.branch in ("+1", "both") else -1
        try:
            rows = approximation_error(m, args.n[0], dn, sign, args.mass, alphas, args.hbar_c)
        except NoSignChangeError as exc:
            print(f"oracle failed: {exc}", file=sys.stderr)
            return EXIT_ORACLE
        out.write(approximation_error_csv(rows))
        return EXIT_OK
    if args.alpha_sweep:
        raise UsageError("--alpha-sweep needs --mode exact")
    cfg = IntegratorConfig()
    out.write("n,l,D,branch,E_closed,E_oracle,rel_error,agree\n")
    bad = 0
    rows = 0
    for n in args.n:
        for branch, E0, decays in _closed_roots(args, m, n, mode, default_domain(m)):
            if args.decaying_only and not decays:
                continue
            eq = build_effective(m, branch or 1, dn, args.mass, mode, args.hbar_c)
            try:
                E1, _ = locate_eigenvalue(eq, E0, args.window * args.mass, cfg)
                rel = abs(E1 - E0) / max(abs(E0), 1e-300)
            except NoSignChangeError:
                E1, rel = math.nan, math.inf
            ok = rel <= args.tol
            bad += not ok
            rows += 1
            bcell = f"{branch:+d}" if branch else "0"
            out.write(f"{n},{args.l},{args.dim},{bcell},{fmt(E0)},{fmt(E1)},{fmt(rel)},"
                      f"{'true' if ok else 'false'}\n")
    if rows == 0:
        return EXIT_NO_ROOTS
    return EXIT_ORACLE if bad else EXIT_OK


def cmd_potential_curve(args, out) -> int:
    m = build_model(args)
    a = m.alpha
    if isinstance(m, TrigRosenMorse):
        lo, hi = 0.01 * math.pi / a, 0.99 * math.pi / a
    else:
        lo, hi = 0.01 / a, 10.0 / a
    lo = args.x_min if args.x_min is not None else lo
    hi = args.x_max if args.x_max is not None else hi
    x = np.linspace(lo, hi, args.points)
    v = evaluate_potential(m, x, full_line=args.full_line)
    out.write("x,V\n")
    for xx, vv in zip(x, v):
        out.write(f"{fmt(xx)},{fmt(vv)}\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="kgbound", description="Klein-Gordon bound states for exponential-type potentials.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--output", "-o", help="output file (default stdout)")
        sp.add_argument("--format", choices=("csv",), default="csv")
        sp.add_argument("--config", help="file of key=value lines mapping onto flags")

    sp = sub.add_parser("spectrum", help="roots of the energy equation")
    _add_model_flags(sp)
    _add_state_flags(sp)
    common(sp)

    sp = sub.add_parser("table1", help="recompute the four reference blocks")
    sp.add_argument("--grid-points", type=int, default=2048)
    sp.add_argument("--tol-root", type=float)
    sp.add_argument("--hbar-c", type=float, default=1.0)
    sp.add_argument("--tol", type=float, default=TABLE_TOL, help="match tolerance")
    common(sp)

    sp = sub.add_parser("wavefunction", help="sample one closed-form state")
    _add_model_flags(sp)
    _add_state_flags(sp)
    sp.add_argument("--root-index", type=int, default=0)
    sp.add_argument("--normalize", action="store_true")
    sp.add_argument("--domain", choices=(HALF_LINE, FULL_LINE))
    sp.add_argument("--r-min", type=float)
    sp.add_argument("--r-max", type=float)
    sp.add_argument("--points", type=int, default=2001)
    common(sp)

    sp = sub.add_parser("oracle", help="shooting oracle against the closed forms")
    _add_model_flags(sp)
    _add_state_flags(sp)
    sp.add_argument("--mode", choices=tuple(ORACLE_MODES), default="approx")
    sp.add_argument("--alpha-sweep", type=_float_list)
    sp.add_argument("--tol", type=float, default=1e-6, help="relative agreement tolerance")
    sp.add_argument("--window", type=float, default=1e-3, help="search half-width in units of M")
    sp.add_argument("--decaying-only", action="store_true",
                    help="skip closed-form roots that do not decay on the oracle domain")
    common(sp)

    sp = sub.add_parser("potential-curve", help="sample V on a grid")
    _add_model_flags(sp, default_model="trig-rosen-morse")
    sp.set_defaults(a=0.5, b=17.0)
    sp.add_argument("--x-min", type=float)
    sp.add_argument("--x-max", type=float)
    sp.add_argument("--points", type=int, default=500)
    sp.add_argument("--full-line", action="store_true")
    common(sp)
    return p


def _config_tokens(path: str) -> list[str]:
    tokens = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key=value")
            key, value = (s.strip() for s in line.split("=", 1))
            flag = "--" + key.lstrip("-").replace("_", "-")
            if value.lower() in ("true", "yes", "on"):
                tokens.append(flag)
            elif value.lower() in ("false", "no", "off"):
                continue
            else:
                tokens += [flag, value]
    return tokens


def expand_config(argv: list[str]) -> list[str]:
    """Splice ``--config FILE`` entries in right after the subcommand.

    Explicit flags come later on the command line and therefore win.
    """
    argv = list(argv)
    for i, tok in enumerate(argv):
        if tok == "--config" or tok.startswith("--config="):
            if tok == "--config":
                if i + 1 >= len(argv):
                    raise UsageError("--config needs a file")
                path = argv[i + 1]
                del argv[i : i + 2]
            else:
                path = tok.split("=", 1)[1]
                del argv[i]
            try:
                extra = _config_tokens(path)
            except OSError as exc:
                raise UsageError(f"cannot read config: {exc}") from exc
            return argv[:1] + extra + argv[1:]
    return argv


COMMANDS = {
    "spectrum": cmd_spectrum,
    "table1": cmd_table1,
    "wavefunction": cmd_wavefunction,
    "oracle": cmd_oracle,
    "potential-curve": cmd_potential_curve,
}


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = build_parser().parse_args(expand_config(argv))
        buf = io.StringIO()
        code = COMMANDS[args.command](args, buf)
    except UsageError as exc:
        print(f"kgbound: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (KGError, ValueError) as exc:
        print(f"kgbound: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = buf.getvalue()
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        try:
            sys.stdout.write(text)
            sys.stdout.flush()
        except BrokenPipeError:
            # reader went away (e.g. piped into head); silence the final flush
            os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
    return code


if __name__ == "__main__":
    sys.exit(main())
