"""Command-line front end.

Subcommands map onto the library's capabilities: `basis` (stratum
dimensions), `cofinite` (C_n quotient tables and generator choice), `zhu`
(the level-zero quotient algebra), `omega` (lowest-weight vectors),
`rewrite` (normalize one operator word) and `verify` (a seeded battery of
exactness checks).  Scenario parameters come from flags, or from an INI file
via --config (flags win).  Reports are deterministic: exact rationals
printed as p/q, no timestamps, no environment echoes — two runs with the
same configuration, seed and package version emit identical bytes.

Exit codes: 0 on success (a non-stabilized table is still a success — the
report says so), 2 on usage errors, 3 when a computation fails or a verify
check does not pass.
"""

from __future__ import annotations

import argparse
import configparser
import random
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import __version__
from .linalg import Element, NotInSpanError
from .fock import (Space, TruncationOverflow, stratum_basis, strata,
                   enumerate_basis, fixed_subspace, vacuum, basis_element)
from .modes import virasoro_check, verify_commutator, verify_iterate
from .cofinite import quotient_table, choose_X, c1_reps
from .zhu import build_context, a_product_table
from .rewrite import (normalize, apply_word, find_omega, annihilator_monomials,
                      compute_L)

__all__ = ["ScenarioConfig", "Report", "main"]


class UsageError(Exception):
    pass


@dataclass
class ScenarioConfig:
    norms: tuple
    coset: tuple          # None for the algebra itself
    sign: int             # None, +1, -1
    max_weight: Fraction
    cn: int
    seed: int
    fmt: str
    out: str
    word: tuple
    target_index: int

    def space(self):
        return Space(norms=self.norms, coset=self.coset, cutoff=self.max_weight)

    def algebra(self):
        return Space(norms=self.norms, cutoff=self.max_weight)


class Report:
    """Accumulates printable lines and csv rows for one command."""

    def __init__(self, title):
        self.title = title
        self._lines = ["%s (voalab %s)" % (title, __version__)]
        self._csv = []

    def line(self, text=""):
        self._lines.append(text)

    def csv_row(self, *cells):
        self._csv.append(",".join(str(c) for c in cells))

    def text(self, fmt):
        body = self._csv if fmt == "csv" else self._lines
        return "\n".join(body) + "\n"

    def emit(self, cfg):
        text = self.text(cfg.fmt)
        if cfg.out:
            with open(cfg.out, "w") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)


def _parse_fraction(text):
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise UsageError("not a rational: %r" % text)


def _parse_norms(text):
    try:
        norms = tuple(int(p) for p in text.split(","))
    except ValueError:
        raise UsageError("--lattice wants comma-separated integers, got %r" % text)
    if not norms or any(n < 2 or n % 2 for n in norms):
        raise UsageError("lattice norms must be even integers >= 2")
    return norms


def _parse_coset(text, rank):
    parts = [p for p in text.split(",")]
    if len(parts) != rank:
        raise UsageError("coset needs %d offsets, got %d" % (rank, len(parts)))
    return tuple(_parse_fraction(p) for p in parts)


def _parse_word(text):
    text = text.strip()
    if not text:
        return ()
    out = []
    for piece in text.split(","):
        try:
            i, m = piece.split(":")
            out.append((int(i), int(m)))
        except ValueError:
            raise UsageError("word letters look like INDEX:MODE, got %r" % piece)
    return tuple(out)


_DEFAULTS = {"lattice": "2", "coset": None, "sign": None, "max_weight": "6",
             "cn": "2", "seed": "0", "format": "report", "out": None,
             "word": None, "target_index": "0"}


def _load_config(path):
    parser = configparser.ConfigParser()
    if not parser.read(path):
        raise UsageError("cannot read config file %r" % path)
    if not parser.has_section("scenario"):
        raise UsageError("config file needs a [scenario] section")
    out = {}
    for key in parser["scenario"]:
        if key not in _DEFAULTS:
            raise UsageError("unknown config key %r" % key)
        out[key] = parser["scenario"][key]
    return out


def _build_config(args):
    layered = dict(_DEFAULTS)
    if args.config:
        layered.update(_load_config(args.config))
    overrides = {"lattice": args.lattice, "coset": args.coset, "sign": args.sign,
                 "max_weight": args.max_weight, "cn": args.cn, "seed": args.seed,
                 "format": args.format, "out": args.out, "word": args.word,
                 "target_index": args.target_index}
    for key, val in overrides.items():
        if val is not None:
            layered[key] = val
    norms = _parse_norms(str(layered["lattice"]))
    coset = layered["coset"]
    if coset is not None:
        coset = _parse_coset(str(coset), len(norms))
    sign = layered["sign"]
    if sign is not None:
        sign = int(sign)
        if sign not in (1, -1):
            raise UsageError("sign must be +1 or -1")
    fmt = str(layered["format"])
    if fmt not in ("report", "csv"):
        raise UsageError("--format must be report or csv")
    try:
        cn = int(str(layered["cn"]))
        seed = int(str(layered["seed"]))
        tidx = int(str(layered["target_index"]))
    except ValueError:
        raise UsageError("--cn, --seed and --target-index want integers")
    word = layered["word"]
    word = _parse_word(str(word)) if word is not None else None
    return ScenarioConfig(norms, coset, sign, _parse_fraction(str(layered["max_weight"])),
                          cn, seed, fmt, layered["out"], word, tidx)


# -- subcommands ---------------------------------------------------------------

def cmd_basis(cfg):
    rep = Report("stratum dimensions")
    space = cfg.space()
    rep.line("lattice norms %s, coset %s, sign %s"
             % (list(cfg.norms), _coset_str(cfg), _sign_str(cfg.sign)))
    rep.line("stratum | dim")
    rep.csv_row("stratum", "dim")
    for d in strata(space, cfg.max_weight):
        if cfg.sign is None:
            dim = len(stratum_basis(space, d))
        else:
            dim = fixed_subspace(space, cfg.sign, d).rank
        rep.line("%7s | %d" % (d, dim))
        rep.csv_row(d, dim)
    return rep, 0


def cmd_cofinite(cfg):
    if cfg.cn < 2:
        raise UsageError("--cn must be at least 2")
    if cfg.coset is not None:
        raise UsageError("quotient tables live on the algebra; drop --coset")
    rep = Report("C_n quotient table")
    space = cfg.algebra()
    table = quotient_table(space, cfg.cn, cfg.max_weight, sign=cfg.sign)
    rep.csv_row("stratum", "ambient", "cn", "quotient")
    for line in table.lines():
        rep.line(line)
    for w, a, s, q in table.rows:
        rep.csv_row(w, a, s, q)
    if cfg.cn == 2 and table.stabilized:
        params = choose_X(space, cfg.max_weight, sign=cfg.sign, table=table)
        rep.line()
        for line in params.describe():
            rep.line(line)
    return rep, 0


def cmd_zhu(cfg):
    if cfg.coset is not None:
        raise UsageError("the quotient algebra is attached to the algebra; drop --coset")
    if cfg.sign is not None:
        raise UsageError("sign filters are not supported here")
    rep = Report("level-zero quotient algebra")
    depth = int(cfg.max_weight)
    ctx = build_context(cfg.algebra(), depth)
    for line in ctx.lines():
        rep.line(line)
    rep.csv_row("depth", ctx.depth)
    rep.csv_row("adims", *ctx.adims)
    rep.csv_row("stabilized", ctx.stabilized)
    rep.csv_row("dim", ctx.adim)
    if ctx.stabilized:
        tab = a_product_table(ctx)
        rep.line()
        for line in tab.lines():
            rep.line(line)
        rep.csv_row("identity_ok", tab.identity_ok)
        rep.csv_row("central_ok", tab.central_ok)
        rep.csv_row("assoc_ok", tab.assoc_ok)
        if not tab.ok:
            return rep, 3
    else:
        rep.line("window not stabilized; product table skipped (raise --max-weight)")
    return rep, 0


def cmd_omega(cfg):
    rep = Report("lowest-weight vectors")
    if cfg.sign is not None:
        raise UsageError("sign filters are not supported here")
    space = cfg.space()
    alg = cfg.algebra()
    reps = c1_reps(alg, cfg.max_weight)
    try:
        params = choose_X(alg, cfg.max_weight)
    except ValueError:
        params = None
    report = find_omega(space, reps.y, cfg.max_weight, reduced=True, params=params)
    for line in report.lines():
        rep.line(line)
    rep.csv_row("stratum", "ambient", "kernel")
    for d, a, k in report.rows:
        rep.csv_row(d, a, k)
    rep.line("kernel vectors:")
    for v in report.omega_basis:
        rep.line("  %r" % (v,))
    return rep, 0


def cmd_rewrite(cfg):
    if cfg.word is None:
        raise UsageError("rewrite needs --word INDEX:MODE[,INDEX:MODE...]")
    rep = Report("operator word normal form")
    alg = cfg.algebra()
    params = choose_X(alg, cfg.max_weight)
    for i, _ in cfg.word:
        if not 0 <= i < len(params.x):
            raise UsageError("letter index %d outside the generator set (size %d)"
                             % (i, len(params.x)))
    space = cfg.space()
    targets = enumerate_basis(space, cfg.max_weight)
    if not 0 <= cfg.target_index < len(targets):
        raise UsageError("--target-index outside 0..%d" % (len(targets) - 1))
    target = Element.monomial(space, targets[cfg.target_index])
    rep.line("generators: " + ", ".join("x%d=%r" % (i, x) for i, x in enumerate(params.x)))
    rep.line("target: %r" % target)
    result = normalize(params, cfg.word, target)
    for line in result.lines():
        rep.line(line)
    rep.line("evaluates to: %r" % result.value)
    rep.csv_row("coeff", "word")
    for c, cert in result.terms:
        rep.csv_row(c, " ".join("%d:%d" % l for l in cert.word))
    return rep, 0


def cmd_verify(cfg):
    """Seeded battery of exactness checks over the configured lattice."""
    rep = Report("verification battery")
    rep.line("seed %d, lattice %s, max weight %s"
             % (cfg.seed, list(cfg.norms), cfg.max_weight))
    rng = random.Random(cfg.seed)
    failures = 0

    def check(name, ok):
        nonlocal failures
        rep.line("%-44s %s" % (name, "pass" if ok else "FAIL"))
        rep.csv_row(name, "pass" if ok else "FAIL")
        if not ok:
            failures += 1

    alg = Space(norms=cfg.norms, cutoff=max(Fraction(6), cfg.max_weight))
    vres = virasoro_check(alg, mode_bound=2, max_stratum=2)
    check("virasoro bracket (%d cases)" % vres.checked, vres.ok)

    basis = enumerate_basis(alg, 3)
    uni = alg.unbounded()
    ok = True
    for _ in range(10):
        u = basis_element(uni, *_pick(rng, basis))
        v = basis_element(uni, *_pick(rng, basis))
        w = basis_element(uni, *_pick(rng, basis))
        k, q = rng.randint(-2, 2), rng.randint(-2, 2)
        ok = ok and bool(verify_commutator(u, v, k, q, w))
    check("commutator identity (10 samples)", ok)
    ok = True
    for _ in range(8):
        u = basis_element(uni, *_pick(rng, basis))
        v = basis_element(uni, *_pick(rng, basis))
        w = basis_element(uni, *_pick(rng, basis))
        r, q = rng.randint(1, 3), rng.randint(-2, 2)
        ok = ok and bool(verify_iterate(u, v, r, q, w))
    check("iterate identity (8 samples)", ok)

    table = quotient_table(alg, 2, alg.cutoff)
    check("quotient table computed (%d strata)" % len(table.rows), True)
    rep.line("  quotient dims: %s" % table.quotient_dims())
    if table.stabilized:
        params = choose_X(alg, alg.cutoff, table=table)
        check("generator set certified (r=%d, Q=%d)" % (params.r, params.Q), True)
        reps = c1_reps(alg, min(alg.cutoff, 6))
        red = find_omega(alg, reps.y, 3, reduced=True)
        full = find_omega(alg, annihilator_monomials(alg, 3), 3, reduced=False)
        check("lowest-weight reduced vs full", red.omega_dims() == full.omega_dims())
        vac = vacuum(uni)
        ok = True
        words = 0
        for _ in range(12):
            kk = rng.randint(1, 4)
            word = tuple((rng.randrange(len(params.x)), rng.randint(-3, 3))
                         for _ in range(kk))
            res = normalize(params, word, vac)
            for _, cert in res.terms:
                cert.validate()
            ok = ok and res.value == apply_word(params, word, vac)
            words += 1
        check("rewriter round-trip (%d words)" % words, ok)
        check("annihilation threshold L(vacuum) = 0", compute_L(params, vac) == 0)
    else:
        rep.line("  (not stabilized at this depth; rewriter checks skipped)")
    ctx = build_context(Space(norms=cfg.norms, cutoff=6), 6)
    if ctx.stabilized:
        tab = a_product_table(ctx)
        check("quotient algebra axioms (dim %d)" % ctx.adim, tab.ok)
    else:
        rep.line("  (quotient algebra window not stabilized at depth 6)")
    rep.line("failures: %d" % failures)
    return rep, (3 if failures else 0)


def _pick(rng, basis):
    b = basis[rng.randrange(len(basis))]
    return b.parts, b.point


def _coset_str(cfg):
    return "none" if cfg.coset is None else list(cfg.coset)


def _sign_str(sign):
    return {None: "none", 1: "+1", -1: "-1"}[sign]


_COMMANDS = {"basis": cmd_basis, "cofinite": cmd_cofinite, "zhu": cmd_zhu,
             "omega": cmd_omega, "rewrite": cmd_rewrite, "verify": cmd_verify}


def _parser():
    top = argparse.ArgumentParser(prog="voalab",
                                  description="exact lattice vertex algebra computations")
    top.add_argument("command", choices=sorted(_COMMANDS))
    top.add_argument("--lattice", help="comma-separated even norms, e.g. 2,4")
    top.add_argument("--coset", help="comma-separated rational offsets, e.g. 1/2,0")
    top.add_argument("--plus", dest="sign", action="store_const", const="1",
                     help="restrict to the +1 eigenspace of the involution")
    top.add_argument("--minus", dest="sign", action="store_const", const="-1",
                     help="restrict to the -1 eigenspace")
    top.add_argument("--max-weight", dest="max_weight", help="stratum cutoff (rational)")
    top.add_argument("--cn", help="which C_n to tabulate (>= 2)")
    top.add_argument("--seed", help="seed for the verify battery")
    top.add_argument("--format", choices=["report", "csv"], help="output format")
    top.add_argument("--out", help="write the report to this file")
    top.add_argument("--config", help="INI file with a [scenario] section")
    top.add_argument("--word", help="rewrite input, INDEX:MODE[,INDEX:MODE...]")
    top.add_argument("--target-index", dest="target_index",
                     help="basis monomial the word acts on (default 0)")
    return top


def main(argv=None):
    try:
        args = _parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else 2
    try:
        cfg = _build_config(args)
        rep, code = _COMMANDS[args.command](cfg)
    except UsageError as exc:
        print("usage error: %s" % exc, file=sys.stderr)
        return 2
    except (TruncationOverflow, NotInSpanError, ValueError, RuntimeError) as exc:
        print("computation failed: %s" % exc, file=sys.stderr)
        return 3
    rep.emit(cfg)
    return code


if __name__ == "__main__":
    sys.exit(main())
