from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional


@dataclass(frozen=True)
class VerifyReport:
    """Outcome of checking one identity at one parameter point.

    ``witness`` carries a textual diff of the two sides and is present
    exactly when the check failed.
    """

    identity: str
    params: dict = field(default_factory=dict)
    passed: bool = True
    witness: Optional[str] = None

    def __post_init__(self):
        if self.passed != (self.witness is None):
            raise ValueError("a report carries a witness iff it failed")

    @classmethod
    def compare(cls, identity: str, params: dict, lhs, rhs) -> "VerifyReport":
        if lhs == rhs:
            return cls(identity, params)
        return cls(identity, params, False, f"lhs = {lhs}\nrhs = {rhs}")

    @classmethod
    def combine(cls, identity: str, params: dict, reports) -> "VerifyReport":
        """Fold several sub-checks into one report; failures keep their witnesses."""
        failed = [r for r in reports if not r.passed]
        if not failed:
            return cls(identity, params)
        lines = []
        for r in failed:
            lines.append(f"[{r.identity} {r.params}]")
            lines.append(r.witness)
        return cls(identity, params, False, "\n".join(lines))

    def to_dict(self) -> dict:
        out = {"identity": self.identity, "params": dict(self.params), "pass": self.passed}
        if self.witness is not None:
            out["witness"] = self.witness
        return out
