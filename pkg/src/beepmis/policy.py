"""Beep-probability policies: per-node local feedback, global sweep, constant.

A policy owns all per-run probability state.  The engine talks to policies
through four calls: ``initial_state``, ``uniform_probability`` (fast path for
node-independent policies), ``beep_probability``, and the two update hooks
``update_node`` / ``end_round``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt, ldexp

from .errors import InvalidParameter

# Smallest positive double is 2^-1074; clamp exponents there so probabilities
# stay strictly positive even on adversarially long runs.
_MAX_EXPONENT = 1074
# Underflow floor for generalized (non power-of-two) adjustment factors.
_MIN_GENERAL_PROBABILITY = 2.0 ** -64

_DYADIC = [ldexp(1.0, -k) for k in range(_MAX_EXPONENT + 1)]


@dataclass
class LocalFeedbackState:
    """Per-node state for the feedback rule.

    Exactly one of the two lists is used: integer exponents in the default
    dyadic mode (probability is exactly 2^-exponent), float probabilities in
    generalized mode.
    """

    exponents: list[int] | None = None
    probabilities: list[float] | None = None


class LocalFeedback:
    """Each node adapts its own beep probability from what it heard.

    A node that heard at least one beep in a round divides its probability by
    the adjustment factor; a node that heard silence multiplies by the same
    factor, clamped at the cap.  Defaults (factor 2, start 1/2, cap 1/2) keep
    every probability an exact dyadic rational via integer exponents that
    start at 1 and never drop below 1.
    """

    needs_node_updates = True

    def __init__(self, factor: float = 2.0, initial: float = 0.5, cap: float = 0.5):
        if not factor > 1.0:
            raise InvalidParameter(f"adjustment factor must be > 1, got {factor!r}")
        if not 0.0 < cap < 1.0:
            raise InvalidParameter(f"probability cap must be in (0, 1), got {cap!r}")
        if not 0.0 < initial <= cap:
            raise InvalidParameter(f"initial probability must be in (0, cap], got {initial!r}")
        self.factor = float(factor)
        self.initial = float(initial)
        self.cap = float(cap)
        self._exact = factor == 2.0 and initial == 0.5 and cap == 0.5

    @property
    def name(self) -> str:
        if self._exact:
            return "feedback"
        return f"feedback:f={self.factor:g},init={self.initial:g},cap={self.cap:g}"

    def initial_state(self, node_count: int) -> LocalFeedbackState:
        if self._exact:
            return LocalFeedbackState(exponents=[1] * node_count)
        return LocalFeedbackState(probabilities=[self.initial] * node_count)

    def uniform_probability(self, state: LocalFeedbackState) -> float | None:
        return None

    def beep_probability(self, state: LocalFeedbackState, node: int) -> float:
        if state.exponents is not None:
            return _DYADIC[min(state.exponents[node], _MAX_EXPONENT)]
        return state.probabilities[node]

    def update_node(self, state: LocalFeedbackState, node: int, heard_beep: bool) -> None:
        """Apply the feedback rule to one still-active node after a round.

        heard_beep=True halves the probability (exponent + 1); heard_beep=False
        doubles it, clamped at the cap (exponent - 1, floored at 1).
        """
        if state.exponents is not None:
            if heard_beep:
                state.exponents[node] += 1
            elif state.exponents[node] > 1:
                state.exponents[node] -= 1
        else:
            p = state.probabilities[node]
            if heard_beep:
                state.probabilities[node] = max(p / self.factor, _MIN_GENERAL_PROBABILITY)
            else:
                state.probabilities[node] = min(p * self.factor, self.cap)

    def end_round(self, state: LocalFeedbackState) -> None:
        pass


def sweep_phase_position(step: int) -> tuple[int, int]:
    """Locate a 1-based global step in the sweep schedule.

    Phase k (k >= 1) consists of k+1 steps and starts at step
    1 + (k-1)(k+2)/2, a triangular number, so the phase index is recovered
    exactly with an integer square root.  Returns (phase, position) where
    position counts 0..k within the phase.
    """
    if not isinstance(step, int) or step < 1:
        raise InvalidParameter(f"sweep step must be a positive integer, got {step!r}")
    k = (isqrt(8 * step + 1) - 1) // 2
    start = 1 + (k - 1) * (k + 2) // 2
    return k, step - start


@dataclass
class GlobalSweepState:
    """Global step counter for the sweep schedule (1-based)."""

    step: int = 1

    @property
    def phase(self) -> int:
        return sweep_phase_position(self.step)[0]

    @property
    def position(self) -> int:
        return sweep_phase_position(self.step)[1]


class GlobalSweep:
    """Preset node-independent schedule: probability 1 at the start of each
    phase, halved on every following step of the phase; phase k has k+1 steps.

    Produces the sequence 1, 1/2, 1, 1/2, 1/4, 1, 1/2, 1/4, 1/8, ...
    """

    needs_node_updates = False
    name = "sweep"

    def initial_state(self, node_count: int) -> GlobalSweepState:
        return GlobalSweepState(step=1)

    def uniform_probability(self, state: GlobalSweepState) -> float:
        _, position = sweep_phase_position(state.step)
        return _DYADIC[min(position, _MAX_EXPONENT)]

    def beep_probability(self, state: GlobalSweepState, node: int) -> float:
        return self.uniform_probability(state)

    def update_node(self, state: GlobalSweepState, node: int, heard_beep: bool) -> None:
        pass

    def end_round(self, state: GlobalSweepState) -> None:
        """Advance the global step; phase and position follow from the closed form."""
        state.step += 1


@dataclass
class ConstantState:
    """Fixed probability shared by every node and round."""

    probability: float


class Constant:
    """Control policy: every node beeps with the same fixed probability."""

    needs_node_updates = False

    def __init__(self, probability: float):
        if not 0.0 < probability <= 1.0:
            raise InvalidParameter(f"probability must be in (0, 1], got {probability!r}")
        self.probability = float(probability)

    @property
    def name(self) -> str:
        return f"const:{self.probability:g}"

    def initial_state(self, node_count: int) -> ConstantState:
        return ConstantState(self.probability)

    def uniform_probability(self, state: ConstantState) -> float:
        return state.probability

    def beep_probability(self, state: ConstantState, node: int) -> float:
        return state.probability

    def update_node(self, state: ConstantState, node: int, heard_beep: bool) -> None:
        pass

    def end_round(self, state: ConstantState) -> None:
        pass


def parse_policy(text: str):
    """Parse a policy selection string.

    Grammar: ``feedback`` | ``feedback:f=<float>,init=<float>,cap=<float>``
    (keys optional, any subset) | ``sweep`` | ``const:<float>``.
    """
    head, sep, rest = text.partition(":")
    if head == "feedback":
        kwargs = {}
        if sep:
            for item in rest.split(","):
                key, eq, value = item.partition("=")
                if not eq:
                    raise InvalidParameter(f"bad feedback option {item!r}, expected key=value")
                try:
                    number = float(value)
                except ValueError:
                    raise InvalidParameter(f"bad feedback value {value!r}") from None
                if key == "f":
                    kwargs["factor"] = number
                elif key == "init":
                    kwargs["initial"] = number
                elif key == "cap":
                    kwargs["cap"] = number
                else:
                    raise InvalidParameter(f"unknown feedback option {key!r}")
        return LocalFeedback(**kwargs)
    if text == "sweep":
        return GlobalSweep()
    if head == "const" and sep:
        try:
            p = float(rest)
        except ValueError:
            raise InvalidParameter(f"bad constant probability {rest!r}") from None
        return Constant(p)
    raise InvalidParameter(f"unknown policy {text!r}")
