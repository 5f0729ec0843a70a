"""Full classification table for one (family, rank, cocharacter, q) configuration."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass, field
from typing import Optional, Union

from . import matrixgrp
from .finfield import FieldError, prime_power
from .stabilizer import (
    DEFERRED, GroupDescriptor, UnsupportedConfiguration, irrep_count, order_at,
    stabilizer_descriptor,
)
from .weyl import MAX_RANK, TYPE_A, TYPE_A_TWISTED, TYPE_C, WeylError
from .zipdata import ZipDatum, closure_order, hasse_edges

SCHEMA_VERSION = 1
FAMILIES = {"gl": TYPE_A, "sp": TYPE_C, "gu": TYPE_A_TWISTED}
MAX_ORACLE_Q = 5

EXIT_OK, EXIT_MISMATCH, EXIT_INVALID = 0, 1, 2


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class CensusConfig:
    family: str
    rank: int
    cochar: str
    q: int = 2
    oracle: bool = False
    format: str = "table"
    budget: int = matrixgrp.DEFAULT_BUDGET


@dataclass
class StratumRow:
    w: str
    length: int
    k_w: list
    descriptor: str
    structure: dict
    order: int
    irreps: Union[int, str]
    oracle: dict = field(default_factory=dict)


@dataclass
class CensusReport:
    config: CensusConfig
    I: list
    strata: list
    closure: list
    totals: dict

    @property
    def failed(self) -> bool:
        return self.totals["mismatches"] > 0

    def to_dict(self) -> dict:
        cfg = asdict(self.config)
        cfg.pop("format")
        cfg["I"] = self.I
        return {
            "schema_version": SCHEMA_VERSION,
            "config": cfg,
            "strata": [
                {"w": r.w, "length": r.length, "k_w": r.k_w,
                 "descriptor": {"text": r.descriptor, **r.structure},
                 "order": r.order, "irreps": r.irreps, "oracle": r.oracle}
                for r in self.strata
            ],
            "closure": [list(e) for e in self.closure],
            "totals": self.totals,
        }


def parse_cochar(family: str, rank: int, spec: str) -> list[int]:
    """Indices of I from a block signature ("2,2") or an explicit "I:1,3".

    Signatures are compositions of n (gl, gu) or symmetric compositions of
    2n (sp); a simple reflection is dropped from I when it crosses a block
    boundary.
    """
    fam = FAMILIES.get(family)
    if fam is None:
        raise ConfigError(f"unknown family {family!r}")
    spec = spec.strip()
    n_simple = rank if fam == TYPE_C else rank - 1
    if spec.lower().startswith("i:"):
        body = spec[2:].strip()
        try:
            idx = sorted({int(t) for t in body.split(",") if t.strip()})
        except ValueError as exc:
            raise ConfigError(f"bad index list {body!r}") from exc
        if any(not 1 <= i <= n_simple for i in idx):
            raise ConfigError(f"simple reflection index out of range 1..{n_simple}")
        return idx
    try:
        parts = [int(t) for t in spec.split(",")]
    except ValueError as exc:
        raise ConfigError(f"bad cocharacter spec {spec!r}") from exc
    total = 2 * rank if fam == TYPE_C else rank
    if any(p <= 0 for p in parts) or sum(parts) != total:
        raise ConfigError(f"signature {spec!r} must be positive parts summing to {total}")
    if fam == TYPE_C and parts != parts[::-1]:
        raise ConfigError("symplectic signatures must be symmetric")
    cuts, acc = set(), 0
    for p in parts[:-1]:
        acc += p
        cuts.add(acc)
    return [i for i in range(1, n_simple + 1) if i not in cuts]


def validate(cfg: CensusConfig) -> ZipDatum:
    fam = FAMILIES.get(cfg.family)
    if fam is None:
        raise ConfigError(f"unknown family {cfg.family!r}")
    if not 1 <= cfg.rank <= MAX_RANK[fam] or (fam != TYPE_C and cfg.rank < 2):
        raise ConfigError(f"rank {cfg.rank} unsupported for {cfg.family}")
    try:
        prime_power(cfg.q)
    except FieldError as exc:
        raise ConfigError(str(exc)) from exc
    if cfg.oracle and cfg.q > MAX_ORACLE_Q:
        raise ConfigError(f"oracle runs need q <= {MAX_ORACLE_Q}")
    if cfg.format not in ("table", "json", "dot"):
        raise ConfigError(f"unknown format {cfg.format!r}")
    idx = parse_cochar(cfg.family, cfg.rank, cfg.cochar)
    try:
        return ZipDatum.make(fam, cfg.rank, idx, cfg.q)
    except WeylError as exc:
        raise ConfigError(str(exc)) from exc


def _oracle(d, s, g: GroupDescriptor, order: int, budget: int):
    G = matrixgrp.stratum_group(d, s, budget)
    if G is None:
        return {"verdict": "skipped", "order": None}, None
    if G.materialized:
        G.check_group()
    verdict = "match" if G.count == order else "mismatch"
    return {"verdict": verdict, "order": G.count}, G


def run_census(cfg: CensusConfig) -> CensusReport:
    d = validate(cfg)
    cox = d.cox
    rows = []
    for s in d.strata:
        g = stabilizer_descriptor(d, s)
        order = order_at(g, cfg.q)
        G = None
        if cfg.oracle:
            info, G = _oracle(d, s, g, order, cfg.budget)
        else:
            info = {"verdict": "off", "order": None}
        if g.is_abelian:
            irreps: Union[int, str] = order
        elif g.extension is not None:
            irreps = irrep_count(g, cfg.q, elements=G) if G is not None and G.materialized else DEFERRED
        elif cfg.oracle:
            irreps = irrep_count(g, cfg.q, budget=cfg.budget)
        else:
            irreps = DEFERRED
        rows.append(StratumRow(
            w=str(s.w), length=s.length,
            k_w=[str(cox.simple(i)) for i in cox.indices(s.K_w)],
            descriptor=str(g), structure=g.to_dict(), order=order, irreps=irreps, oracle=info,
        ))
    rel = closure_order(d)
    nodes = [s.w for s in d.strata]
    edges = [(str(a), str(b)) for a, b in hasse_edges(rel, nodes)]
    resolved = [r.irreps for r in rows if isinstance(r.irreps, int)]
    totals = {
        "strata": len(rows),
        "simple_perverse_sheaves": sum(resolved) if len(resolved) == len(rows) else None,
        "partial": len(resolved) != len(rows),
        "mismatches": sum(r.oracle.get("verdict") == "mismatch" for r in rows),
        "oracle_skipped": sum(r.oracle.get("verdict") == "skipped" for r in rows),
    }
    return CensusReport(cfg, cox.indices(d.I), rows, edges, totals)


# -- rendering -----------------------------------------------------------------

def _table(rep: CensusReport) -> str:
    cfg = rep.config
    head = ["w", "len", "K_w", "Pi_w", "|Pi_w|", "irreps", "oracle"]
    body = []
    for r in rep.strata:
        o = r.oracle
        ocell = o["verdict"] if o.get("order") is None else f"{o['verdict']} ({o['order']})"
        body.append([r.w, str(r.length), "{" + ",".join(r.k_w) + "}", r.descriptor,
                     str(r.order), str(r.irreps) if isinstance(r.irreps, int) else "deferred", ocell])
    widths = [max(len(row[i]) for row in [head] + body) for i in range(len(head))]
    fmt = lambda row: "  ".join(c.ljust(wd) for c, wd in zip(row, widths)).rstrip()
    lines = [f"{cfg.family} rank {cfg.rank}, I = {rep.I}, q = {cfg.q}", fmt(head),
             fmt(["-" * wd for wd in widths])]
    lines += [fmt(row) for row in body]
    t = rep.totals
    total = t["simple_perverse_sheaves"]
    lines.append(f"strata: {t['strata']}  simple perverse sheaves: "
                 f"{total if total is not None else 'partial'}"
                 + (f"  mismatches: {t['mismatches']}" if cfg.oracle else ""))
    if rep.closure:
        lines.append("closure: " + ", ".join(f"{a} -> {b}" for a, b in rep.closure))
    return "\n".join(lines) + "\n"


def _dot(rep: CensusReport) -> str:
    ids = {r.w: f"n{i}" for i, r in enumerate(rep.strata)}
    esc = lambda s: s.replace("\\", "\\\\").replace('"', '\\"')
    lines = ["digraph closure {", "  rankdir=TB;"]
    for r in rep.strata:
        lines.append(f'  {ids[r.w]} [label="{esc(r.w + " | " + r.descriptor)}"];')
    for a, b in rep.closure:
        lines.append(f"  {ids[a]} -> {ids[b]};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def render(rep: CensusReport, fmt: str = "table") -> str:
    if fmt == "json":
        return json.dumps(rep.to_dict(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"
    if fmt == "dot":
        return _dot(rep)
    if fmt == "table":
        return _table(rep)
    raise ConfigError(f"unknown format {fmt!r}")


# -- command line ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="census", description=__doc__)
    ap.add_argument("--family", required=True, choices=sorted(FAMILIES))
    ap.add_argument("--rank", required=True, type=int)
    ap.add_argument("--cochar", required=True,
                    help='block signature such as "2,2", or explicit "I:1,3"')
    ap.add_argument("--q", type=int, default=2)
    ap.add_argument("--oracle", action="store_true", help="cross-check with brute force")
    ap.add_argument("--format", default="table", choices=["table", "json", "dot"])
    ap.add_argument("--out", help="write output here instead of stdout")
    ap.add_argument("--budget", type=int, default=matrixgrp.DEFAULT_BUDGET,
                    help="candidate budget per oracle call")
    return ap


def main(argv: Optional[list] = None) -> int:
    args = build_parser().parse_args(argv)
    cfg = CensusConfig(args.family, args.rank, args.cochar, args.q, args.oracle,
                       args.format, args.budget)
    try:
        rep = run_census(cfg)
    except (ConfigError, UnsupportedConfiguration, NotImplementedError) as exc:
        print(f"census: {exc}", file=sys.stderr)
        return EXIT_INVALID
    text = render(rep, cfg.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if rep.failed:
        print(f"census: {rep.totals['mismatches']} oracle mismatch(es)", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
