"""Shared record type for protocol executions."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class Message:
    sender: str  # "A" or "B"
    qubits: int = 0
    cbits: int = 0
    note: str = ""


@dataclass
class ProtocolRun:
    protocol: str
    n: int
    d: int | None
    inputs: dict[str, Any]
    expected: Any
    messages: list[Message] = field(default_factory=list)
    branches: list[tuple[str, float, Any]] = field(default_factory=list)
    extra: dict[str, Any] = field(default_factory=dict)

    def send(self, sender: str, qubits: int = 0, cbits: int = 0, note: str = "") -> None:
        self.messages.append(Message(sender, qubits, cbits, note))

    def branch(self, branch_id: str, probability: float, outcome: Any) -> None:
        self.branches.append((branch_id, float(probability), outcome))

    @property
    def rounds(self) -> int:
        return len(self.messages)

    @property
    def qubits_sent(self) -> int:
        return sum(m.qubits for m in self.messages)

    @property
    def cbits_sent(self) -> int:
        return sum(m.cbits for m in self.messages)

    @property
    def total_probability(self) -> float:
        return sum(p for _, p, _ in self.branches)

    @property
    def correct(self) -> bool:
        """Every recorded branch gives the expected outcome and the branch
        probabilities account for the whole state."""
        return (
            bool(self.branches)
            and all(out == self.expected for _, _, out in self.branches)
            and abs(self.total_probability - 1.0) <= 1e-9
        )

    @property
    def outcome(self) -> Any:
        outs = {repr(o): o for _, _, o in self.branches}
        return next(iter(outs.values())) if len(outs) == 1 else None

    def to_dict(self) -> dict[str, Any]:
        return {
            "protocol": self.protocol,
            "n": self.n,
            "d": self.d,
            "inputs": self.inputs,
            "outcome": self.outcome,
            "rounds": self.rounds,
            "qubits_sent": self.qubits_sent,
            "cbits_sent": self.cbits_sent,
            "branches": [{"id": b, "probability": p, "outcome": o} for b, p, o in self.branches],
            "pass": self.correct,
        }
