"""Command-line interface; every subcommand prints one JSON report.

Exit codes: 0 success, 1 a checked mathematical property failed, 2 bad
input, 3 a size budget was exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from dataclasses import dataclass
from pathlib import Path

from .casework import (find_entry, min_liftable_index_bound, psl2_criterion,
                       verify_double_cover_liftability)
from .cochain import Cochain2, cohomology_group, default_budget, extension_from_cocycle
from .embed import aux_merge_test, build_embedding, complement_classes
from .errors import InputError, SubextError
from .gmodule import GModule
from .liftsplit import lift_report
from .perm import PermGroup, format_cycles, named_group, parse_cycles
from .spincover import spin_cover


@dataclass
class RunConfig:
    command: str
    args: argparse.Namespace
    seed: int = 0
    samples: int = 1000
    budget: int | None = None
    output: str | None = None


# ------------------------------------------------------------------ input parsing

def _read_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def _group_from_json(data, degree: int | None = None) -> PermGroup:
    if not isinstance(data, dict) or "generators" not in data:
        raise InputError('group JSON must look like {"degree": n, "generators": [...]}')
    try:
        n = int(data.get("degree", degree or 0))
    except (TypeError, ValueError) as exc:
        raise InputError("degree must be an integer") from exc
    if n < 1:
        raise InputError("group JSON needs a positive degree")
    gens = data["generators"]
    if not isinstance(gens, list):
        raise InputError("generators must be a list of cycle strings")
    return PermGroup([parse_cycles(str(g), n) for g in gens], degree=n)


def load_group(value: str, degree: int | None = None) -> tuple[PermGroup, str]:
    """A group from a JSON file, A<n>/S<n>/C<n>/D<n>, or a catalog entry name.

    A standard name whose natural degree differs from ``degree`` falls
    through to the catalog of that degree, so ``C3`` inside ``A4`` is the
    point stabilizer. ``name@A<n>`` pins the ambient group explicitly.
    """
    if value.endswith(".json") or os.path.exists(value):
        return _group_from_json(_read_json(value), degree), Path(value).name
    if re.fullmatch(r"\s*[ASCD]_?\d+\s*", value):
        G = named_group(value)
        if degree is None or G.degree == degree:
            return G, value.strip()
    spec = find_entry(value, degree)
    return spec.group(), spec.name


def load_module(value: str | None, group: PermGroup) -> GModule:
    """Module JSON file, or ``trivial:m[:k]`` / ``permutation:m`` shorthand."""
    if value is None:
        raise InputError("--module is required")
    if value.startswith(("trivial:", "permutation:")):
        parts = value.split(":")
        try:
            nums = [int(x) for x in parts[1:]]
        except ValueError as exc:
            raise InputError(f"bad module shorthand {value!r}") from exc
        if parts[0] == "trivial" and len(nums) in (1, 2):
            return GModule.trivial(group, nums[0], nums[1] if len(nums) == 2 else 1)
        if parts[0] == "permutation" and len(nums) == 1:
            return GModule.permutation(group, nums[0])
        raise InputError(f"bad module shorthand {value!r}")
    data = _read_json(value)
    if not isinstance(data, dict):
        raise InputError("module JSON must be an object")
    return GModule.from_json(data, group)


def load_cocycle(path: str, group: PermGroup, module: GModule) -> Cochain2:
    data = _read_json(path)
    if not isinstance(data, list):
        raise InputError("cocycle JSON must be a list of {g, h, value} records")
    table = {}
    for rec in data:
        try:
            g = parse_cycles(rec["g"], group.degree)
            h = parse_cycles(rec["h"], group.degree)
            value = module.reduce([int(x) for x in rec["value"]])
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, InputError):
                raise
            raise InputError(f"bad cocycle record {rec!r}") from exc
        if not (group.contains(g) and group.contains(h)):
            raise InputError(f"cocycle record outside the group: {rec!r}")
        if any(value) and not (all(x == i for i, x in enumerate(g)) or all(x == i for i, x in enumerate(h))):
            table[(g, h)] = value
    return Cochain2(module, group, table=table)


def cocycle_to_json(c: Cochain2) -> list[dict]:
    out = []
    for g in c.group.element_list():
        for h in c.group.element_list():
            v = c(g, h)
            if any(v):
                out.append({"g": format_cycles(g), "h": format_cycles(h), "value": list(v)})
    return out


def _extension(args, group: PermGroup, name: str):
    if args.cocycle == "spin":
        if not (name.startswith("A") and name[1:].isdigit()):
            raise InputError("--cocycle spin needs --group A<n>")
        return spin_cover(group.degree).extension()
    module = load_module(args.module, group)
    c = load_cocycle(args.cocycle, group, module)
    return extension_from_cocycle(group, module, c)


# ------------------------------------------------------------------ subcommands

def cmd_order(cfg: RunConfig) -> dict:
    G, _ = load_group(cfg.args.group)
    return {"order": G.order}


def cmd_cohomology(cfg: RunConfig) -> dict:
    G, _ = load_group(cfg.args.group)
    L = load_module(cfg.args.module, G)
    return cohomology_group(G, L, cfg.args.dim, cfg.budget).report()


def cmd_lift_test(cfg: RunConfig) -> dict:
    args = cfg.args
    G, gname = load_group(args.group)
    H, hname = load_group(args.subgroup, G.degree)
    ext = _extension(args, G, gname)
    res = lift_report(ext, H, args.strategy)
    cert = res.split.digest() if res.split is not None else res.certificate
    return {"group": gname, "subgroup": hname, "subgroup_order": H.order, "liftable": res.liftable,
            "strategy": res.strategy, "certificate": cert}


def cmd_embed(cfg: RunConfig) -> dict:
    args = cfg.args
    G, gname = load_group(args.group)
    H, hname = load_group(args.subgroup, G.degree)
    ext = _extension(args, G, gname)
    res = lift_report(ext, H)
    if res.split is None:
        return {"group": gname, "subgroup": hname, "liftable": False, "certificate": res.certificate}
    beta, report = build_embedding(ext, H, res.split, cfg.samples, cfg.seed)
    return beta.certificate(report, gname, hname)


def cmd_complements(cfg: RunConfig) -> dict:
    args = cfg.args
    G, gname = load_group(args.group)
    L = load_module(args.module, G)
    classes = complement_classes(G, L, cfg.budget)
    H = load_group(args.subgroup, G.degree)[0] if args.subgroup else None
    out = []
    for cls in classes:
        cls.verify()
        rec = {"class": list(cls.class_id), "is_group_class": cls.is_group_class,
               "cocycle": {format_cycles(g): list(cls.cocycle(g)) for g in G.generators}}
        if H is not None:
            m = aux_merge_test(G, H, L, cls)
            rec["m_conjugate_to_G"] = m.m_conjugate_to_G
            rec["intersection_l_conjugate_to_H"] = m.intersection_l_conjugate_to_H
            rec["m_witness"] = None if m.m_witness is None else list(m.m_witness)
            rec["l_witness"] = None if m.l_witness is None else list(m.l_witness)
        out.append(rec)
    return {"group": gname, "class_count": len(out), "classes": out}


def cmd_verify_an(cfg: RunConfig) -> dict:
    return verify_double_cover_liftability(cfg.args.n)


def cmd_psl2(cfg: RunConfig) -> dict:
    return psl2_criterion(cfg.args.q)


def cmd_min_index(cfg: RunConfig) -> dict:
    return min_liftable_index_bound(cfg.args.n)


COMMANDS = {
    "order": cmd_order, "cohomology": cmd_cohomology, "lift-test": cmd_lift_test, "embed": cmd_embed,
    "complements": cmd_complements, "verify-an": cmd_verify_an, "psl2": cmd_psl2, "min-index": cmd_min_index,
}


def _nonnegative(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=_nonnegative, default=0)
    common.add_argument("--samples", type=_nonnegative, default=1000)
    common.add_argument("--budget", type=_nonnegative, default=None,
                        help="dense cochain matrix entry cap (default from SUBEXT_BUDGET or 2e7)")
    common.add_argument("--output", "-o", default=None, help="write the report here instead of stdout")
    p = argparse.ArgumentParser(prog="subext", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("order", parents=[common], help="order of a permutation group")
    s.add_argument("group")
    s = sub.add_parser("cohomology", parents=[common], help="H^1 or H^2 of a small group")
    s.add_argument("--group", required=True)
    s.add_argument("--module", required=True)
    s.add_argument("--dim", type=int, choices=(1, 2), required=True)
    for name in ("lift-test", "embed"):
        s = sub.add_parser(name, parents=[common])
        s.add_argument("--group", required=True)
        s.add_argument("--subgroup", required=True)
        s.add_argument("--cocycle", required=True, help='"spin" or a dense cocycle JSON file')
        s.add_argument("--module", default=None)
        if name == "lift-test":
            s.add_argument("--strategy", choices=("auto", "sign-search", "linear"), default="auto")
    s = sub.add_parser("complements", parents=[common], help="complement classes and the M-conjugacy test")
    s.add_argument("--group", required=True)
    s.add_argument("--module", required=True)
    s.add_argument("--subgroup", default=None)
    s = sub.add_parser("verify-an", parents=[common], help="lift test of the maximal-subgroup catalog of A_n")
    s.add_argument("--n", type=int, choices=range(4, 10), required=True)
    s = sub.add_parser("psl2", parents=[common], help="PSL2(q) Borel lift test against the divisibility formula")
    s.add_argument("--q", type=int, required=True)
    s = sub.add_parser("min-index", parents=[common], help="smallest liftable index found (upper bound for f(n))")
    s.add_argument("--n", type=int, choices=range(4, 10), required=True)
    return p


def run(cfg: RunConfig) -> tuple[int, dict]:
    try:
        if cfg.budget is None:
            cfg.budget = default_budget()
        report = COMMANDS[cfg.command](cfg)
        return 0, report
    except SubextError as exc:
        return exc.exit_code, {"error": type(exc).__name__, "message": str(exc)}
    except OverflowError as exc:
        return 1, {"error": "OverflowError", "message": str(exc)}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    cfg = RunConfig(args.command, args, args.seed, args.samples, args.budget, args.output)
    code, report = run(cfg)
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if code != 0:
        sys.stderr.write(text)
    elif cfg.output:
        Path(cfg.output).write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
