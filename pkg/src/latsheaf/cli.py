"""Command-line front end.

Exit status: 0 ok, 1 a checked property failed, 2 bad input or manifest,
3 a resource bound was hit.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any

from .blo import validate_blo
from .classify import classify
from .corpus import MAX_ENUMERATION_SIZE, enumerate_lattices
from .epi import es_experiment, make_universe, universe_of_size
from .errors import BadInput, BadManifest, LatsheafError, TooLarge
from .ideals import gratzer_schmidt_report
from .io import algebra_to_json, dumps, load_algebras
from .priestly import birkhoff_roundtrip, clopen_downsets, separation_check, spectrum
from .sheaf import MODES, dual_space, eta_report, regular_ideal_openset_iso

COMMANDS = ("validate", "spectrum", "dualize", "represent", "classify", "gs-check",
            "regular-ideals", "epi-sweep", "enumerate")
NEEDS_INPUT = {"validate", "spectrum", "dualize", "represent", "classify", "gs-check",
               "regular-ideals"}
OPTION_KEYS = {"J", "mode", "max_size", "universe", "format", "out"}


@dataclass
class CommandManifest:
    command: str
    inputs: list[str] = field(default_factory=list)
    J: list[str] = field(default_factory=list)
    mode: str = "collapse"
    max_size: int | None = None
    universe: str | None = None
    format: str = "json"
    out: str | None = None

    def check(self) -> None:
        if self.command not in COMMANDS:
            raise BadManifest(f"unknown command {self.command!r}")
        if self.mode not in MODES:
            raise BadManifest(f"mode must be one of {', '.join(MODES)}")
        if self.format not in ("json", "md"):
            raise BadManifest("format must be json or md")
        if self.command in NEEDS_INPUT and not self.inputs:
            raise BadManifest(f"{self.command} needs at least one input")
        if self.command == "enumerate" and self.max_size is None:
            raise BadManifest("enumerate needs max_size")
        if self.max_size is not None and (not isinstance(self.max_size, int) or self.max_size < 1):
            raise BadManifest("max_size must be a positive integer")
        if self.command == "epi-sweep" and self.universe is None and self.max_size is None:
            raise BadManifest("epi-sweep needs a universe (path or size bound)")


def manifest_from_json(obj: Any, where: str = "manifest") -> CommandManifest:
    if not isinstance(obj, dict):
        raise BadManifest(f"{where}: manifest must be a JSON object")
    if "command" not in obj:
        raise BadManifest(f"{where}: missing field 'command'")
    inputs = obj.get("inputs", obj.get("input", []))
    if isinstance(inputs, str):
        inputs = [inputs]
    if not isinstance(inputs, list) or not all(isinstance(p, str) for p in inputs):
        raise BadManifest(f"{where}: field 'inputs' must be a list of paths")
    opts = obj.get("options", {})
    if not isinstance(opts, dict):
        raise BadManifest(f"{where}: field 'options' must be an object")
    unknown = set(opts) - OPTION_KEYS
    if unknown:
        raise BadManifest(f"{where}: unknown option(s) {', '.join(sorted(unknown))}")
    J = opts.get("J", [])
    if isinstance(J, str):
        J = [j for j in J.split(",") if j]
    if not isinstance(J, list):
        raise BadManifest(f"{where}: option 'J' must be a list or comma string")
    universe = opts.get("universe")
    if universe is not None:
        universe = str(universe)
    m = CommandManifest(obj["command"], inputs, [str(j) for j in J], opts.get("mode", "collapse"),
                        opts.get("max_size"), universe, opts.get("format", "json"), opts.get("out"))
    m.check()
    return m


def _load(m: CommandManifest):
    algs = []
    for p in m.inputs:
        algs.extend(load_algebras(p))
    return algs


def _check_J(A, J):
    missing = [j for j in J if j not in A.operators]
    if missing:
        raise BadInput(f"{A.name or 'algebra'}: unknown operator index {', '.join(missing)}")


def _per_algebra(m: CommandManifest, fn) -> tuple[list[dict], bool]:
    out, ok = [], True
    for A in _load(m):
        _check_J(A, m.J)
        rec, good = fn(A)
        out.append(dict({"algebra": A.name}, **rec))
        ok = ok and good
    return out, ok


def cmd_validate(m):
    def one(A):
        v = validate_blo(A)
        return {"valid": not v, "violations": v}, not v
    return _per_algebra(m, one)


def cmd_spectrum(m):
    def one(A):
        S = spectrum(A)
        rt = birkhoff_roundtrip(A)
        return {
            "spectrum": S.to_json(),
            "order": [[S.point_label(i), S.point_label(j)] for i in range(S.n) for j in range(S.n)
                      if i != j and S.order[i][j]],
            "discrete": S.is_discrete,
            "clopen_downsets": list(clopen_downsets(S).names),
            "roundtrip_isomorphic": rt.isomorphic,
            "separation": separation_check(S),
        }, rt.isomorphic
    return _per_algebra(m, one)


def cmd_dualize(m):
    return _per_algebra(m, lambda A: (dual_space(A, m.J, m.mode).to_json(), True))


def cmd_represent(m):
    def one(A):
        r = eta_report(A, m.J, m.mode)
        return asdict(r), True
    return _per_algebra(m, one)


def cmd_classify(m):
    def one(A):
        r = classify(A, m.J, m.mode)
        return dict(asdict(r), summary=r.summary()), True
    return _per_algebra(m, one)


def cmd_gs_check(m):
    def one(A):
        r = gratzer_schmidt_report(A)
        return asdict(r), r.equivalence
    return _per_algebra(m, one)


def cmd_regular_ideals(m):
    def one(A):
        r = regular_ideal_openset_iso(dual_space(A, m.J, m.mode))
        return asdict(r), True
    return _per_algebra(m, one)


def _universe(m: CommandManifest):
    where = m.universe
    if where is None or where.isdigit():
        return universe_of_size(int(where) if where is not None else m.max_size)
    algs = []
    for p in where.split(","):
        algs.extend(load_algebras(p))
    return make_universe(algs, "user-supplied", where)


def cmd_epi_sweep(m):
    r = es_experiment(_universe(m))
    ok = r.surjective_all_epi and r.witnesses_verified and r.injective_iff_mono
    return [r.to_json()], ok


def cmd_enumerate(m):
    if m.max_size > MAX_ENUMERATION_SIZE:
        raise TooLarge(f"enumerate is limited to {MAX_ENUMERATION_SIZE} elements")
    out = []
    for n in range(1, m.max_size + 1):
        for L in enumerate_lattices(n, distributive=True):
            out.append(algebra_to_json(L))
    counts = {str(n): len(enumerate_lattices(n, distributive=True)) for n in range(1, m.max_size + 1)}
    return [{"max_size": m.max_size, "counts": counts, "lattices": out}], True


HANDLERS = {
    "validate": cmd_validate,
    "spectrum": cmd_spectrum,
    "dualize": cmd_dualize,
    "represent": cmd_represent,
    "classify": cmd_classify,
    "gs-check": cmd_gs_check,
    "regular-ideals": cmd_regular_ideals,
    "epi-sweep": cmd_epi_sweep,
    "enumerate": cmd_enumerate,
}


def _md_value(v: Any) -> str:
    if isinstance(v, (dict, list)):
        return "`" + json.dumps(v, ensure_ascii=False) + "`"
    return str(v)


def to_markdown(command: str, results: list[dict]) -> str:
    lines = [f"# {command}", ""]
    for rec in results:
        title = rec.get("algebra") or rec.get("universe", {}).get("name") or command
        lines.append(f"## {title}")
        lines.append("")
        if "summary" in rec:
            lines += [rec["summary"], ""]
        for k, v in rec.items():
            if k in ("algebra", "summary"):
                continue
            if isinstance(v, list) and len(v) > 20:
                lines.append(f"- **{k}**: {len(v)} entries")
            else:
                lines.append(f"- **{k}**: {_md_value(v)}")
        lines.append("")
    return "\n".join(lines)


def execute(m: CommandManifest) -> tuple[str, int]:
    """Run a validated manifest; returns (report text, exit status)."""
    results, ok = HANDLERS[m.command](m)
    if m.format == "md":
        text = to_markdown(m.command, results)
    else:
        text = dumps({"command": m.command, "ok": ok, "results": results})
    return text, 0 if ok else 1


def run(manifest: CommandManifest | dict | str | Path) -> int:
    """Run a manifest object or manifest file, writing to its ``out`` path or stdout."""
    try:
        if isinstance(manifest, (str, Path)):
            try:
                obj = json.loads(Path(manifest).read_text())
            except FileNotFoundError:
                raise BadManifest(f"{manifest}: no such file") from None
            except json.JSONDecodeError as exc:
                raise BadManifest(f"{manifest}: line {exc.lineno}: {exc.msg}") from None
            manifest = manifest_from_json(obj, str(manifest))
        elif isinstance(manifest, dict):
            manifest = manifest_from_json(manifest)
        else:
            manifest.check()
        text, status = execute(manifest)
    except TooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (BadInput, BadManifest) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except LatsheafError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    if manifest.out:
        Path(manifest.out).write_text(text)
    else:
        sys.stdout.write(text)
    return status


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="latsheaf", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--input", action="append", default=[], help="algebra JSON file (repeatable)")
        sp.add_argument("--J", default="", help="comma-separated operator indices")
        sp.add_argument("--mode", default="collapse", choices=MODES)
        sp.add_argument("--max-size", type=int, default=None)
        sp.add_argument("--universe", default=None, help="size bound or comma-separated paths")
        sp.add_argument("--out", default=None)
        sp.add_argument("--format", default="json", choices=("json", "md"))
    rp = sub.add_parser("run", help="run a JSON manifest")
    rp.add_argument("manifest")
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "run":
        return run(args.manifest)
    m = CommandManifest(args.command, args.input, [j for j in args.J.split(",") if j], args.mode,
                        args.max_size, args.universe, args.format, args.out)
    try:
        m.check()
    except BadManifest as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return run(m)


if __name__ == "__main__":
    sys.exit(main())
