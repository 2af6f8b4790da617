"""Machine-readable reports: one JSON document per CLI invocation, stable
key order, lossless round-trip."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field


@dataclass
class Report:
    command: str
    betti: "list | None" = None
    ring: "dict | None" = None
    massey: list = field(default_factory=list)
    violations: list = field(default_factory=list)
    hypotheses_assumed: list = field(default_factory=list)
    extras: dict = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, indent=2, ensure_ascii=False)

    @classmethod
    def from_json(cls, text: str) -> "Report":
        data = json.loads(text)
        return cls(command=data["command"], betti=data.get("betti"),
                   ring=data.get("ring"), massey=data.get("massey", []),
                   violations=data.get("violations", []),
                   hypotheses_assumed=data.get("hypotheses_assumed", []),
                   extras=data.get("extras", {}))


def structure_constants_table(ring) -> dict:
    """JSON-shaped product table of a CohomologyRing: 'a·b' -> {name: 'p/q'}."""
    out = {}
    for (a, b), value in sorted(ring.structure_constants.items()):
        out[f"{a}·{b}"] = {nm: str(c) for nm, c in sorted(value.items())}
    return out


def representatives_table(h) -> dict:
    return {nm: {k: str(v) for k, v in sorted(h.representative(nm).items())}
            for nm in h.space.names()}
