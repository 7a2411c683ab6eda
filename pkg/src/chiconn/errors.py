from __future__ import annotations


class InvariantViolation(AssertionError):
    """A checked mathematical invariant failed.

    ``label`` names the claim at stake (e.g. ``"eq-chi9"``); ``state`` carries
    whatever snapshot the caller attached for diagnosis.
    """

    def __init__(self, label: str, message: str, state: object = None):
        super().__init__(f"[{label}] {message}")
        self.label = label
        self.state = state


def check(condition: bool, label: str, message: str, state: object = None) -> None:
    if not condition:
        raise InvariantViolation(label, message, state)
