"""Command-line entry points.

Subcommands cover the algebra utilities (idempotent tables, splitting a
group-invariant code into components), code utilities (minimum weight,
duals, canonical forms, orbits, automorphisms) and the three search
pipelines with their verification helpers.

Exit codes: 0 success, 2 a pipeline or verification count did not match
its expected value (results are still written), 1 usage or input errors.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass

from .binary import BinaryCode, CodeError, min_weight
from .canon import (ActionError, ActionSpec, automorphism_group,
                    canonical_form, orbit_of_code)
from .component import (ComponentCode, component_dual, dump_code, load_code,
                        min_weight_table, save_code, split)
from .groupalg import Decomposition, GroupError
from .pipelines.manifest import default_outdir
from .pipelines.setups import group_description, group_names, named_group

GEN_LETTERS = "ghuv"


class UsageError(ValueError):
    pass


@dataclass
class CliConfig:
    """Parsed run options shared across subcommands."""

    command: str
    group: str | None = None
    path: str | None = None
    action: str = "auto"
    stage: int | None = None
    extended: bool = False
    resume: str | None = None
    workers: int = 1
    outdir: str | None = None
    out: str | None = None
    orbit_cap: int = 1_000_000
    max_nodes: int = 2_000_000
    component: int | None = None
    verbose: bool = False

    def __post_init__(self):
        if self.workers < 1 or self.orbit_cap < 1 or self.max_nodes < 1:
            raise UsageError("resource caps and worker counts must be positive")
        if self.resume is not None and not os.path.exists(self.resume):
            raise UsageError(f"resume path {self.resume!r} does not exist")


def _group(name: str):
    # accept z3xz3 as a spelling of z3z3
    key = name.lower().replace("x", "")
    try:
        return key, named_group(key)
    except KeyError as exc:
        raise UsageError(str(exc))


def _load(path: str):
    try:
        return load_code(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path!r}: {exc.strerror}")
    except CodeError as exc:
        raise UsageError(f"malformed code file {path!r}: {exc}")


def _monomial_name(exps, orders) -> str:
    terms = [f"{GEN_LETTERS[i]}{e}" if e > 1 else GEN_LETTERS[i]
             for i, e in enumerate(exps) if e]
    return "*".join(terms) if terms else "1"


def _action_for(code, kind: str) -> ActionSpec:
    if isinstance(code, BinaryCode):
        if kind not in ("auto", "binary"):
            raise UsageError("binary code files only support the binary action")
        return ActionSpec.binary(code.n)
    if kind in ("auto", "monomial"):
        spec = ActionSpec.monomial(code.field.k, code.length)
        if code.sub_k != code.field.k:
            raise UsageError("subfield-linear code needs --action semilinear")
        return spec
    if kind == "semilinear":
        if code.field.k == 4 and code.sub_k == 2:
            return ActionSpec.semimonomial5(code.length)
        return ActionSpec.monomial(code.field.k, code.length, with_galois=True)
    raise UsageError(f"action {kind!r} does not apply to this code")


# -- subcommands ------------------------------------------------------


def cmd_idempotents(cfg: CliConfig) -> int:
    name, G = _group(cfg.group)
    dec = Decomposition(G)
    print(f"group {name}: {group_description(name)}")
    npairs = len(dec.pairs())
    print(f"|G| = {G.q}, components = {dec.t + 1}, "
          f"self-conjugate = {dec.r + 1}, conjugate pairs = {npairs}")
    cols = [_monomial_name(G.exponents[i], G.gen_orders) for i in range(G.q)]
    print("columns: " + " ".join(cols))
    for i, idem in enumerate(dec.idems):
        bits = "".join(str((idem.coeffs >> j) & 1) for j in range(G.q))
        poly = "+".join(cols[j] for j in range(G.q) if (idem.coeffs >> j) & 1)
        tag = idem.tag if idem.tag == "self" else f"pair<->e{idem.partner}"
        print(f"e{i}  {tag:<12} k={idem.k}  {bits}  = {poly}")
    return 0


def cmd_decompose(cfg: CliConfig) -> int:
    name, G = _group(cfg.group)
    code = _load(cfg.path)
    if not isinstance(code, BinaryCode):
        raise UsageError("decompose expects a binary code file")
    if code.n != G.n:
        raise UsageError(f"code length {code.n} does not match the group "
                         f"action on {G.n} points")
    dec = Decomposition(G)
    comps = split(code, dec.isos)
    outdir = cfg.outdir or default_outdir()
    os.makedirs(outdir, exist_ok=True)
    base = os.path.splitext(os.path.basename(cfg.path))[0]
    print(f"group {name}: {dec.t + 1} components")
    total = 0
    for i, comp in enumerate(comps):
        iso = dec.isos[i]
        dest = os.path.join(outdir, f"{base}-comp{i}.code")
        save_code(comp, dest)
        total += comp.dim * iso.field.k
        print(f"  C{i}: [{comp.length}, {comp.dim}] over GF({iso.field.size})"
              f" ({dec.idems[i].tag})  -> {dest}")
    print(f"binary dimension of the sum: {total} (code has {code.dim})")
    return 0 if total == code.dim else 2


def cmd_mindist(cfg: CliConfig) -> int:
    code = _load(cfg.path)
    if isinstance(code, BinaryCode):
        d = min_weight(code)
        print(f"[{code.n}, {code.dim}] binary code: minimum weight {d}")
    else:
        table = [0] + [1] * (code.field.size - 1)
        d = min_weight_table(code, table)
        print(f"[{code.length}, {code.dim}] code over GF({code.field.size}): "
              f"minimum symbol weight {d}")
    return 0


def cmd_dual(cfg: CliConfig) -> int:
    code = _load(cfg.path)
    if isinstance(code, BinaryCode):
        dual = code.dual()
    else:
        if cfg.group is None or cfg.component is None:
            raise UsageError("component duals need --group and --component "
                             "to pin down the duality form")
        _, G = _group(cfg.group)
        dec = Decomposition(G)
        i = cfg.component
        if not 0 <= i <= dec.t:
            raise UsageError(f"component index out of range 0..{dec.t}")
        pair = dict(dec.pairs())
        pair.update({b: a for a, b in dec.pairs()})
        iso_dual = dec.isos[pair[i]] if i in pair else None
        dual = component_dual(code, dec.isos[i], iso_dual)
    text = dump_code(dual)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
        print(f"dual written to {cfg.out}")
    else:
        sys.stdout.write(text)
    return 0


def cmd_canon(cfg: CliConfig) -> int:
    code = _load(cfg.path)
    action = _action_for(code, cfg.action)
    res = canonical_form(code, action, max_nodes=cfg.max_nodes)
    print(f"canonical key: {res.key_hex() or '(empty code)'}")
    print(f"stabilizer order: {res.stabilizer_order}")
    text = dump_code(res.representative)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
        print(f"canonical representative written to {cfg.out}")
    else:
        sys.stdout.write(text)
    return 0


def cmd_orbit(cfg: CliConfig) -> int:
    code = _load(cfg.path)
    action = _action_for(code, cfg.action)
    orbit = orbit_of_code(code, action, cap=cfg.orbit_cap)
    print(f"orbit size: {len(orbit)}"
          + (" (hit the cap)" if len(orbit) >= cfg.orbit_cap else ""))
    return 0


def cmd_aut(cfg: CliConfig) -> int:
    code = _load(cfg.path)
    if not isinstance(code, BinaryCode):
        raise UsageError("aut expects a binary code file")
    aut = automorphism_group(code, max_nodes=cfg.max_nodes)
    print(f"automorphism group order: {aut.order}")
    print(f"generators: {len(aut.generators)}")
    for g in aut.generators:
        print("  " + " ".join(str(x) for x in g))
    return 0


def cmd_pipeline(cfg: CliConfig) -> int:
    from .pipelines.d10 import d10_run
    from .pipelines.z3z3 import z3z3_run
    from .pipelines.z7 import z7_run

    runners = {"z3z3": (z3z3_run, 6), "z7": (z7_run, 4), "d10": (d10_run, 4)}
    run, default_stage = runners[cfg.group]
    outdir = cfg.resume or cfg.outdir
    man = run(stage_limit=cfg.stage or default_stage, extended=cfg.extended,
              outdir=outdir, workers=cfg.workers, verbose=cfg.verbose)
    print(man.summary())
    return man.exit_code


def cmd_verify(cfg: CliConfig) -> int:
    from .pipelines import verify

    runners = {
        "golay": verify.verify_golay,
        "lemmaE": verify.verify_pairing_glue,
        "lemmaE5": lambda: verify.verify_selfdual14(workers=cfg.workers),
        "forms": verify.verify_forms,
    }
    report = runners[cfg.group]()
    for key, val in report.items():
        if key != "ok":
            print(f"{key}: {val}")
    print("verdict:", "ok" if report["ok"] else "MISMATCH")
    return 0 if report["ok"] else 2


# -- argument parsing -------------------------------------------------


def _parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="sdcodes",
        description="group-invariant self-dual binary codes: algebra "
                    "utilities and nonexistence search pipelines")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("idempotents",
                       help="coefficient table of the central primitive idempotents")
    p.add_argument("--group", required=True,
                   help="named group (" + ", ".join(group_names()) + ")")

    p = sub.add_parser("decompose",
                       help="split a group-invariant binary code into components")
    p.add_argument("--group", required=True)
    p.add_argument("--outdir", help="directory for the component code files")
    p.add_argument("path", help="binary code file")

    for name, hlp in (("mindist", "minimum weight of a code file"),
                      ("orbit", "orbit size of a code under its action"),
                      ("aut", "automorphism group of a binary code"),
                      ("canon", "canonical form of a code")):
        p = sub.add_parser(name, help=hlp)
        p.add_argument("path", help="code file")
        if name in ("orbit", "canon"):
            p.add_argument("--action", default="auto",
                           choices=["auto", "binary", "monomial", "semilinear"])
        if name == "orbit":
            p.add_argument("--cap", type=int, default=1_000_000,
                           help="orbit size cap")
        if name in ("canon",):
            p.add_argument("--out", help="write the representative here")
        if name in ("canon", "aut"):
            p.add_argument("--max-nodes", type=int, default=2_000_000,
                           help="search tree node budget")

    p = sub.add_parser("dual", help="dual code (binary or component)")
    p.add_argument("path", help="code file")
    p.add_argument("--group", help="group context for component duals")
    p.add_argument("--component", type=int,
                   help="component index for component duals")
    p.add_argument("--out", help="write the dual here")

    p = sub.add_parser("pipeline", help="run a nonexistence search pipeline")
    p.add_argument("name", choices=["z3z3", "z7", "d10"])
    p.add_argument("--stage", type=int, help="run through this stage only")
    p.add_argument("--extended", action="store_true",
                   help="run the full (multi-day) search depth")
    p.add_argument("--resume", help="existing output directory to resume from")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--outdir", help="output directory for manifests/checkpoints")
    p.add_argument("--verbose", action="store_true")

    p = sub.add_parser("verify", help="verify a fixed ingredient of the searches")
    p.add_argument("name", choices=["golay", "lemmaE", "lemmaE5", "forms"])
    p.add_argument("--workers", type=int, default=1)
    return top


def _config(args: argparse.Namespace) -> CliConfig:
    return CliConfig(
        command=args.command,
        group=getattr(args, "group", None) or getattr(args, "name", None),
        path=getattr(args, "path", None),
        action=getattr(args, "action", "auto"),
        stage=getattr(args, "stage", None),
        extended=getattr(args, "extended", False),
        resume=getattr(args, "resume", None),
        workers=getattr(args, "workers", 1),
        outdir=getattr(args, "outdir", None),
        out=getattr(args, "out", None),
        orbit_cap=getattr(args, "cap", 1_000_000),
        max_nodes=getattr(args, "max_nodes", 2_000_000),
        component=getattr(args, "component", None),
        verbose=getattr(args, "verbose", False),
    )


COMMANDS = {
    "idempotents": cmd_idempotents,
    "decompose": cmd_decompose,
    "mindist": cmd_mindist,
    "dual": cmd_dual,
    "canon": cmd_canon,
    "orbit": cmd_orbit,
    "aut": cmd_aut,
    "pipeline": cmd_pipeline,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    try:
        args = _parser().parse_args(argv)
        cfg = _config(args)
        return COMMANDS[cfg.command](cfg)
    except (UsageError, ActionError, GroupError, CodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
