"""Audit reports tying the analyses together."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Mapping, Sequence

from .exact import fraction_str
from .factoring import FactorDecomposition, factor, factor_labels, factor_value
from .graph import RED, BicoloredMultigraph, FrameSignature, TieDown
from .pebble import Verdict, fundamental_circuit, play, play_uncolored
from .rigidity import pure_condition_float, stresses

RIGID = "generically rigid"
FLEXIBLE = "flexible"
OVER = "over-constrained"


def threads() -> int:
    raw = os.environ.get("CADRIGID_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def colored(g: BicoloredMultigraph, sig: FrameSignature) -> bool:
    return sig.b > 0 and any(e.color == RED for e in g.edges)


def classify(g: BicoloredMultigraph, sig: FrameSignature):
    if colored(g, sig):
        return play(g, sig)
    return play_uncolored(g.recolored(), sig.k)


@dataclass
class FactorStatus:
    edges: list[str]
    value: str | None = None
    vanishes: bool | None = None


@dataclass
class AuditReport:
    verdict: str
    sparsity: str
    sig: tuple[int, int]
    rejected: list[str] = field(default_factory=list)
    circuits: dict[str, list[str]] = field(default_factory=dict)
    factors: list[FactorStatus] = field(default_factory=list)
    embedding: bool = False
    special: bool = False
    stress_support: list[str] = field(default_factory=list)
    figures: list[str] = field(default_factory=list)

    @property
    def flagged(self) -> bool:
        return self.verdict == OVER or self.special

    def to_dict(self) -> dict:
        out = {
            "verdict": self.verdict,
            "sparsity": self.sparsity,
            "a": self.sig[0],
            "b": self.sig[1],
            "rejected": self.rejected,
            "circuits": self.circuits,
            "factors": [
                {k: v for k, v in (("edges", f.edges), ("value", f.value), ("vanishes", f.vanishes)) if v is not None}
                for f in self.factors
            ],
        }
        if self.embedding:
            out["special_position"] = self.special
            out["stress_support"] = self.stress_support
        if self.figures:
            out["figures"] = self.figures
        return out

    def rows(self) -> list[tuple[str, ...]]:
        """Tab-delimited body of the human-readable form."""
        rows: list[tuple[str, ...]] = [("verdict", self.verdict), ("sparsity", self.sparsity)]
        for e in self.rejected:
            rows.append(("circuit", e, " ".join(self.circuits.get(e, []))))
        for i, f in enumerate(self.factors, 1):
            row = ("factor", str(i), " ".join(f.edges))
            if f.value is not None:
                row += (f.value, "zero" if f.vanishes else "nonzero")
            rows.append(row)
        if self.embedding:
            rows.append(("special_position", "yes" if self.special else "no"))
            if self.special:
                rows.append(("stress_support", " ".join(self.stress_support)))
        for p in self.figures:
            rows.append(("figure", p))
        return rows


def _verdict_name(v: Verdict) -> str:
    if v == Verdict.TIGHT:
        return RIGID
    if v == Verdict.SPARSE:
        return FLEXIBLE
    return OVER


def audit(
    g: BicoloredMultigraph,
    sig: FrameSignature,
    labeling: Mapping[str, Sequence] | None = None,
    tie_down: TieDown | None = None,
    use_float: bool = False,
    tol: float = 1e-9,
    with_factors: bool = True,
) -> tuple[AuditReport, FactorDecomposition | None]:
    verdict, cfg = classify(g, sig)
    rep = AuditReport(_verdict_name(verdict.verdict), verdict.verdict.value, (sig.a, sig.b))
    rep.rejected = list(verdict.rejected)
    for eid in verdict.rejected:
        rep.circuits[eid] = fundamental_circuit(cfg, eid) + [eid]
    dec = None
    if verdict.is_tight and with_factors:
        dec = factor(g, sig)
        rep.factors = [FactorStatus(list(f.edge_ids)) for f in dec.factors]
    if labeling is not None and dec is not None:
        rep.embedding = True

        def one(f):
            if use_float:
                det, norm, zero = pure_condition_float(f.graph, sig, factor_labels(f, sig, labeling), None, tol)
                return repr(det), zero
            val = factor_value(f, sig, labeling)
            return fraction_str(val), val == 0

        with ThreadPoolExecutor(max_workers=threads()) as pool:
            results = list(pool.map(one, dec.factors))
        for st, (val, zero) in zip(rep.factors, results):
            st.value, st.vanishes = val, zero
        rep.special = any(z for _, z in results)
        if rep.special:
            td = tie_down or TieDown.standard(0, sig, colored=colored(g, sig))
            support: set[str] = set()
            for s in stresses(g, sig, labeling, td):
                support |= set(s.support)
            rep.stress_support = [e.id for e in g.edges if e.id in support]
    return rep, dec


def render_figures(
    rep: AuditReport, g: BicoloredMultigraph, dec: FactorDecomposition | None, out_dir: str | Path, stem: str
) -> list[str]:
    from .plotting import draw_factor_values, draw_graph

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = []
    groups = [f.edge_ids for f in dec.factors] if dec is not None else []
    highlight = rep.stress_support or [x for c in rep.circuits.values() for x in c]
    paths.append(draw_graph(g, out / f"{stem}_graph.png", title=rep.verdict + (" (special position)" if rep.special else ""), highlight=highlight, groups=groups))
    if rep.embedding and rep.factors:
        vals = {}
        for i, f in enumerate(rep.factors, 1):
            vals[f"F{i}"] = 0.0 if f.vanishes else float(Fraction(f.value or "0"))
        paths.append(draw_factor_values(vals, out / f"{stem}_factors.png", title="factor values"))
    rep.figures = [str(p) for p in paths]
    return rep.figures
