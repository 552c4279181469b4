"""Command-line entry point.

    recollift <command> [--preset NAME | --spec FILE] [--seed N] [--mode fast|thorough]
              [--degree K] [--dim-bound D] [--format json|md] [--out PATH]

Exit codes: 0 when every check passes, 1 when a check fails (the report is
still written), 2 on input or construction errors and on reports without checks.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional, Sequence

from . import homological as hl
from . import modules as md
from . import presets
from . import recollement as rc
from . import specfile as sf
from .errors import BoundExceeded, ConstructionError, InputError, UnsupportedAlgebra
from .report import CheckRecord, Report, module_from_json
from .samples import sample_suite

COMMANDS = ("analyze", "gp", "approx", "ext", "stable-hom", "recollement", "lift", "cps", "replay")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="recollift", description="Recollements, Gorenstein approximations and lifting checks.")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("args", nargs="*", help="command arguments (module names, degree, 'verify', report path)")
    src = ap.add_mutually_exclusive_group()
    src.add_argument("--preset", help="dualnumbers, kA2, t2-dualnumbers, nonstrat or morn:<n>:<base>")
    src.add_argument("--spec", help="path to a specification file")
    ap.add_argument("--idempotent", help="idempotent label or [coordinates] for idempotent presets")
    ap.add_argument("--seed", type=int, default=None)
    ap.add_argument("--mode", choices=("fast", "thorough"), default=None)
    ap.add_argument("--degree", type=int, default=None)
    ap.add_argument("--dim-bound", type=int, default=None, dest="dim_bound")
    ap.add_argument("--side", choices=("A", "B", "C"), default="B", help="algebra for module commands")
    ap.add_argument("--corrupt", action="store_true", help="replace i by the zero functor (negative control)")
    ap.add_argument("--format", choices=("json", "md"), default="json")
    ap.add_argument("--out", help="write the report here instead of stdout")
    return ap


def _load(args) -> tuple[sf.InstanceSpec, dict]:
    if args.spec:
        with open(args.spec, encoding="utf-8") as fh:
            text = fh.read()
        source = {"spec": text}
    elif args.preset:
        text = presets.preset_text(args.preset, args.idempotent)
        source = {"preset": args.preset, "idempotent": args.idempotent}
    else:
        raise InputError("one of --preset or --spec is required")
    spec = sf.parse_spec(text)
    if args.idempotent and args.spec:
        if spec.kind != "idempotent":
            raise InputError("--idempotent needs an idempotent instance")
        spec.idempotent = sf.Entry(args.idempotent, 0, 0)
        source["idempotent"] = args.idempotent
    run = spec.run
    env_seed = os.environ.get("RECOLLIFT_SEED")
    if args.seed is not None:
        run.seed = args.seed
    elif env_seed is not None:
        try:
            run.seed = int(env_seed)
        except ValueError:
            raise InputError(f"RECOLLIFT_SEED={env_seed!r} is not an integer") from None
    if args.mode:
        run.mode = args.mode
    if args.degree is not None:
        run.degree = args.degree
    if args.dim_bound is not None:
        run.dim_bound = args.dim_bound
    source["run"] = {"seed": run.seed, "mode": run.mode, "degree": run.degree, "dim_bound": run.dim_bound, "depth": run.depth, "random": run.random}
    source["corrupt"] = bool(args.corrupt)
    return spec, source


def _instance(built: sf.BuiltSpec, corrupt: bool) -> rc.RecollementInstance:
    if built.instance is None:
        raise InputError("this command needs an instance section (idempotent, morn or triangular)")
    return rc.corrupt_zero_i(built.instance) if corrupt else built.instance


def _samples(inst: rc.RecollementInstance, run: sf.RunSettings) -> rc.SampleSets:
    return rc.sample_sets(inst, run.seed, run.random, run.dim_bound, run.depth)


def resolve_module(a, name: str, run: sf.RunSettings) -> md.Module:
    """``Lambda``, ``0``, ``k`` (the simple of a local algebra), a sample-suite name, or a ``+`` sum."""
    parts = [t.strip() for t in name.split("+")] if "+" in name else [name.strip()]
    if len(parts) > 1:
        return md.direct_sum_module([resolve_module(a, t, run) for t in parts]).with_name(name)
    name = parts[0]
    if name in ("Lambda", "A"):
        return md.regular_module(a)
    if name == "0":
        return md.zero_module(a)
    if name == "k":
        sims = md.simple_modules(a)
        if len(sims) != 1:
            raise InputError("'k' names the simple module of a local algebra only")
        return sims[0]
    suite = sample_suite(a, run.seed, run.random, run.dim_bound, run.depth)
    for s in suite:
        if s.name == name:
            return s.module
    raise InputError(f"unknown module {name!r}; available: Lambda, 0, k, {', '.join(s.name for s in suite)}")


def _side_algebra(built: sf.BuiltSpec, side: str):
    if side == "B":
        return built.algebra
    return _instance(built, False).side(side)


def _need(args, k: int, usage: str) -> list[str]:
    if len(args.args) != k:
        raise InputError(f"usage: recollift {usage}")
    return args.args


def _profile_record(a) -> CheckRecord:
    prof = hl.gorenstein_profile(a)
    return CheckRecord(f"Gorenstein profile of {a.name}", prof.verified, 1, "exact", f"bound {prof.bound}", details=prof.as_dict())


def cmd_analyze(args, built, spec, rep: Report):
    algs = {"B": built.algebra}
    if built.instance is not None:
        algs.update({"A": built.instance.a, "C": built.instance.c})
    for side, a in sorted(algs.items()):
        rec = rep.add(_profile_record(a))
        rep.info[f"profile_{side}"] = rec.details
        rep.info[f"dim_{side}"] = a.dim


def cmd_gp(args, built, spec, rep):
    (name,) = _need(args, 1, "gp <module>")
    a = _side_algebra(built, args.side)
    rep.add(_profile_record(a))
    x = resolve_module(a, name, spec.run)
    hl._require_d(a)
    val = hl.is_gp(x)
    rep.info["module"] = {"name": name, "dim": x.dim}
    rep.info["is_gp"] = val
    if a.morn is not None:
        s = md.module_to_morseq(x)
        structural = rc.gp_structural_test_morn(s)
        rep.info["structural"] = structural
        rep.add(CheckRecord("structural test agrees with Ext vanishing", structural == val, 1, "exact", name))


def cmd_approx(args, built, spec, rep):
    (name,) = _need(args, 1, "approx <module>")
    a = _side_algebra(built, args.side)
    rep.add(_profile_record(a))
    x = resolve_module(a, name, spec.run)
    for kind, fn in (("cofibrant", hl.cofibrant_replacement), ("fibrant", hl.fibrant_replacement)):
        seq = fn(x)
        cert = hl.certify(seq)
        rep.info[kind] = {
            "replaced_dim": seq.replaced.dim,
            "trivial_part_dim": seq.trivial_part.dim,
            "certificate": cert,
        }
        rep.add(CheckRecord(f"{kind} replacement certificate", all(cert.values()), 1, "exact", name, details=cert))


def cmd_ext(args, built, spec, rep):
    xs, ys, ns = _need(args, 3, "ext <x> <y> <n>")
    try:
        n = int(ns)
    except ValueError:
        raise InputError(f"degree {ns!r} is not an integer") from None
    if n < 0:
        raise InputError("degree must be non-negative")
    a = _side_algebra(built, args.side)
    x, y = resolve_module(a, xs, spec.run), resolve_module(a, ys, spec.run)
    res = hl.projective_resolution(x, n + 1)
    rep.add(CheckRecord("projective resolution exact", res.is_exact(), 1, "exact", f"{xs}, length {res.length}"))
    rep.info["ext_dim"] = hl.ext_dim(x, y, n)
    rep.info["degree"] = n


def cmd_stable_hom(args, built, spec, rep):
    xs, ys = _need(args, 2, "stable-hom <x> <y>")
    a = _side_algebra(built, args.side)
    rep.add(_profile_record(a))
    hl._require_d(a)
    x, y = resolve_module(a, xs, spec.run), resolve_module(a, ys, spec.run)
    rep.info["stable_hom_dim"] = hl.stable_hom_dim(x, y)
    qx = hl.cofibrant_replacement(x).replaced
    lhs = hl.stable_hom_dim(qx, hl.suspension(hl.cofibrant_replacement(y).replaced))
    rhs = hl.ext_dim(qx, y, 1)
    rep.info["bridge"] = {"stable_hom_Q_suspension": lhs, "ext1": rhs}
    rep.add(CheckRecord("stable Hom into the suspension equals Ext^1", lhs == rhs, 1, "exact", f"{xs}, {ys}"))


def _verify_arg(args, what: str):
    if args.args != ["verify"]:
        raise InputError(f"usage: recollift {what} verify")


def cmd_recollement(args, built, spec, rep):
    _verify_arg(args, "recollement")
    inst = _instance(built, args.corrupt)
    ss = _samples(inst, spec.run)
    for rec in rc.verify_recollement_axioms(inst, ss):
        rep.add(rec)
    rep.add(rc.verify_exactness(inst, ss))
    rep.info["instance"] = inst.description


def cmd_lift(args, built, spec, rep):
    _verify_arg(args, "lift")
    inst = _instance(built, args.corrupt)
    ss = _samples(inst, spec.run)
    for rec in rc.check_setup(inst, ss):
        rep.add(rec)
    for rec in rc.check_derived_embedding(inst, ss, spec.run.mode, min(spec.run.degree, 2)):
        rep.add(rec)
    for rec in rc.check_kernel_unit_condition(inst, ss):
        rep.add(rec)
    for rec in rc.stable_recollement_report(inst, ss):
        rep.add(rec)
    rep.info["instance"] = inst.description
    rep.info["profiles"] = {k: v.as_dict() for k, v in rc.profiles(inst).items()}


def cmd_cps(args, built, spec, rep):
    if args.args:
        if len(args.args) != 1:
            raise InputError("usage: recollift cps [<idempotent>] --degree K")
        if built.spec.kind != "idempotent":
            raise InputError("cps takes an idempotent argument only for idempotent instances")
        e = args.args[0]
        built = sf.BuiltSpec(spec, built.algebra, rc.idempotent_recollement(built.algebra, sf.resolve_element(built.algebra, e), e))
    inst = _instance(built, args.corrupt)
    ss = _samples(inst, spec.run)
    pairs = [(x, y) for x in ss.a for y in ss.a]
    rec = rep.add(rc.homological_embedding_degree(inst, pairs, spec.run.degree, spec.run.mode))
    rep.info["conclusion"] = rc.cps_conclusion(rec, spec.run.degree)
    rep.info["degree"] = spec.run.degree
    rep.info["instance"] = inst.description


def cmd_replay(args, built, spec, rep):
    (path,) = _need(args, 1, "replay <report.json> --preset/--spec ...")
    with open(path, encoding="utf-8") as fh:
        old = json.load(fh)
    inst = _instance(built, bool(old.get("input", {}).get("corrupt", args.corrupt)))
    for chk in old.get("checks", []):
        for k, w in enumerate(chk.get("witnesses", [])):
            sides = rc.sides_for(inst, w["check"], w["params"])
            mods = [module_from_json(m, inst.side(s)) for m, s in zip(w["modules"], sides)]
            ok, info = rc.run_sample_check(inst, w["check"], mods, w["params"])
            rep.add(
                CheckRecord(
                    f"replay {chk['name']} #{k}", not ok, 1, "exact", f"witness {w['samples']}", details={"reproduced_failure": not ok, "info": info}
                )
            )


HANDLERS = {
    "analyze": cmd_analyze,
    "gp": cmd_gp,
    "approx": cmd_approx,
    "ext": cmd_ext,
    "stable-hom": cmd_stable_hom,
    "recollement": cmd_recollement,
    "lift": cmd_lift,
    "cps": cmd_cps,
    "replay": cmd_replay,
}


def run_command(argv: Sequence[str]) -> Report:
    ap = build_parser()
    args = ap.parse_args(list(argv))
    command = " ".join([args.command] + [a for a in args.args if args.command in ("recollement", "lift")])
    rep = Report(command, {})
    try:
        spec, source = _load(args)
        rep.input = dict(source, args=list(args.args), side=args.side)
        built = sf.build(spec)
        HANDLERS[args.command](args, built, spec, rep)
    except (InputError, UnsupportedAlgebra, ConstructionError, BoundExceeded, OSError, json.JSONDecodeError) as exc:
        rep.error = f"{type(exc).__name__}: {exc}"
    return rep


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    fmt, out = "json", None
    try:
        ns = build_parser().parse_args(list(argv))
        fmt, out = ns.format, ns.out
    except SystemExit as exc:
        return 2 if exc.code else 0
    rep = run_command(argv)
    text = rep.emit(fmt)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if rep.error:
        print(rep.error, file=sys.stderr)
    return rep.exit_code


if __name__ == "__main__":
    sys.exit(main())
