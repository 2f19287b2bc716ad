"""Message transcripts of protocol runs.

A transcript records every transmitted message of one repair run: sender,
receiver, and the field elements in the payload, tagged with the phase it
belongs to.  Locally computed values (a player's message to itself) are not
messages and never appear here.  Transcripts are what the communication
accounting and the coalition-view auditors consume.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ParameterError
from .field import FieldElement, PrimeField

EXCHANGE = "exchange"
REPAIR = "repair"
PHASES = (EXCHANGE, REPAIR)


@dataclass(frozen=True)
class Message:
    phase: str
    sender: int
    receiver: int
    payload: tuple

    def __post_init__(self):
        if self.phase not in PHASES:
            raise ParameterError(f"unknown phase {self.phase!r}")
        if not self.payload:
            raise ParameterError("message payload must be nonempty")


@dataclass(frozen=True)
class Transcript:
    messages: tuple

    def __post_init__(self):
        seen = set()
        for msg in self.messages:
            key = (msg.phase, msg.sender, msg.receiver)
            if key in seen:
                raise ParameterError(
                    f"duplicate message {msg.sender}->{msg.receiver} in {msg.phase} phase"
                )
            seen.add(key)

    @property
    def message_count(self) -> int:
        return len(self.messages)

    @property
    def field_element_count(self) -> int:
        return sum(len(m.payload) for m in self.messages)

    def in_phase(self, phase: str) -> tuple:
        return tuple(m for m in self.messages if m.phase == phase)

    def to_obj(self) -> list:
        """JSON-ready form: a list of {phase, from, to, payload} records."""
        return [
            {
                "phase": m.phase,
                "from": m.sender,
                "to": m.receiver,
                "payload": [e.value for e in m.payload],
            }
            for m in self.messages
        ]

    @classmethod
    def from_obj(cls, obj: list, field: PrimeField) -> "Transcript":
        messages = []
        for rec in obj:
            messages.append(
                Message(
                    phase=rec["phase"],
                    sender=int(rec["from"]),
                    receiver=int(rec["to"]),
                    payload=tuple(field.element(int(v)) for v in rec["payload"]),
                )
            )
        return cls(tuple(messages))
