"""Deterministic report serialization.

Reports must be byte-identical across runs with the same seed, so floats
are rendered with 17 significant digits through a single code path and the
JSON/CSV writers below never depend on hash order or timestamps.
"""

from __future__ import annotations

import numpy as np

from .equilibrium import EquilibriumCertificate, SearchReport, SearchWitness
from .ewl import DiscreteMixedStrategy
from .su2 import Su2Element


def fmt_float(x: float) -> str:
    return format(float(x), ".17g")


def dumps_json(obj, indent: int = 2) -> str:
    """JSON writer preserving dict insertion order and 17-digit floats."""
    pieces: list[str] = []
    _write_json(obj, pieces, indent, 0)
    pieces.append("\n")
    return "".join(pieces)


def _write_json(obj, out: list[str], indent: int, level: int) -> None:
    pad = " " * (indent * (level + 1))
    close_pad = " " * (indent * level)
    if isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        out.append("{\n")
        for i, (key, value) in enumerate(obj.items()):
            out.append(f'{pad}"{key}": ')
            _write_json(value, out, indent, level + 1)
            out.append(",\n" if i < len(obj) - 1 else "\n")
        out.append(close_pad + "}")
    elif isinstance(obj, (list, tuple, np.ndarray)):
        items = list(obj)
        if not items:
            out.append("[]")
            return
        scalars = all(not isinstance(v, (dict, list, tuple, np.ndarray)) for v in items)
        if scalars:
            out.append("[" + ", ".join(_scalar_json(v) for v in items) + "]")
            return
        out.append("[\n")
        for i, value in enumerate(items):
            out.append(pad)
            _write_json(value, out, indent, level + 1)
            out.append(",\n" if i < len(items) - 1 else "\n")
        out.append(close_pad + "]")
    else:
        out.append(_scalar_json(obj))


def _scalar_json(v) -> str:
    if v is None:
        return "null"
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return fmt_float(v)
    if isinstance(v, str):
        escaped = v.replace("\\", "\\\\").replace('"', '\\"')
        return f'"{escaped}"'
    raise TypeError(f"cannot serialize {type(v).__name__} to JSON")


def dumps_csv(header: list[str], rows: list[list]) -> str:
    def cell(v) -> str:
        if isinstance(v, (float, np.floating)):
            return fmt_float(v)
        return str(v)

    lines = [",".join(header)]
    lines += [",".join(cell(v) for v in row) for row in rows]
    return "\n".join(lines) + "\n"


def strategy_obj(element: Su2Element) -> dict:
    return {"vector": [float(c) for c in element.u]}


def mixed_obj(mu: DiscreteMixedStrategy) -> dict:
    return {
        "support": [strategy_obj(el) for el in mu.support],
        "probs": [float(p) for p in mu.probs],
    }


def certificate_obj(cert: EquilibriumCertificate) -> dict:
    return {
        "profile_a": mixed_obj(cert.mu_a),
        "profile_b": mixed_obj(cert.mu_b),
        "payoff_a": cert.payoff_a,
        "payoff_b": cert.payoff_b,
        "gap_a": cert.gap_a,
        "gap_b": cert.gap_b,
        "epsilon": cert.epsilon,
        "verdict": "certified" if cert.certified else "refuted",
    }


def witness_obj(witness: SearchWitness) -> dict:
    obj = {"method": witness.method}
    obj.update(certificate_obj(witness.certificate))
    obj["trace_length"] = witness.trace_length
    if witness.restricted_gaps is not None:
        obj["restricted_gap_a"] = witness.restricted_gaps[0]
        obj["restricted_gap_b"] = witness.restricted_gaps[1]
    return obj


def search_report_obj(report: SearchReport) -> dict:
    return {
        "game": report.game_name,
        "gamma": report.gamma,
        "config": {
            "grid": list(report.config.grid),
            "epsilon": report.config.epsilon,
            "epsilon_exact": report.config.epsilon_exact,
            "seed": report.config.seed,
            "br_starts": report.config.br_starts,
            "max_iter": report.config.max_iter,
            "max_support": report.config.max_support,
        },
        "witnesses": [witness_obj(w) for w in report.witnesses],
        "attempts": {k: report.attempts[k] for k in sorted(report.attempts)},
        "search_failed": report.search_failed,
    }
