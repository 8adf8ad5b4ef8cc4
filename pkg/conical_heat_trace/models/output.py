import json
from dataclasses import dataclass, field
from typing import Any

from .coefficients import Provenance

SCHEMA_VERSION = "1"


@dataclass
class OutputRecord:
    """Machine-readable result of one CLI computation. Every result carries an error estimate and a provenance."""

    inputs: dict[str, Any] = field(default_factory=dict)
    results: dict[str, float] = field(default_factory=dict)
    err_ests: dict[str, float] = field(default_factory=dict)
    provenance: dict[str, Provenance] = field(default_factory=dict)
    schema_version: str = SCHEMA_VERSION

    def add(self, name: str, value: float, err_est: float = 0.0, provenance: Provenance = Provenance.CLOSED_FORM) -> None:
        if err_est < 0:
            raise ValueError(f"error estimate of {name} must be nonnegative, got {err_est}")
        self.results[name] = float(value)
        self.err_ests[name] = float(err_est)
        self.provenance[name] = provenance

    def to_dict(self) -> dict[str, Any]:
        return {
            "schema_version": self.schema_version,
            "inputs": dict(self.inputs),
            "results": dict(self.results),
            "err_ests": dict(self.err_ests),
            "provenance": {name: prov.value for name, prov in self.provenance.items()},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def rows(self) -> list[tuple[str, float, float, str]]:
        return [(name, value, self.err_ests[name], self.provenance[name].value) for name, value in self.results.items()]
