"""Decision and guess problems solved by circuits with bounded advantage.

A problem instance fixes a partial function f on n-bit patterns. The
circuit runs on |b, 0...0> with the problem bits on the low-order qubits;
advantage is read off the worst-case probability of the correct answer
over the domain.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .tensor import Circuit, DomainError, StateVec, apply_circuit, measure_prefix


def _checked_table(n: int, f: dict, out_bits: int) -> dict[int, int]:
    if n < 1:
        raise DomainError(f"need n >= 1, got {n}")
    if not f:
        raise DomainError("domain must be nonempty")
    table = {}
    for b, val in f.items():
        b, val = int(b), int(val)
        if not 0 <= b < 1 << n:
            raise DomainError(f"domain point {b} outside [0, {1 << n})")
        if not 0 <= val < 1 << out_bits:
            raise DomainError(f"value {val} outside [0, {1 << out_bits})")
        table[b] = val
    return table


@dataclass(frozen=True)
class DecisionProblem:
    """Partial boolean function on n-bit patterns."""

    n: int
    f: dict

    def __post_init__(self):
        object.__setattr__(self, "f", _checked_table(self.n, self.f, 1))

    @property
    def domain(self) -> tuple[int, ...]:
        return tuple(sorted(self.f))


@dataclass(frozen=True)
class GuessProblem:
    """Partial n-bit-valued function on n-bit patterns."""

    n: int
    f: dict

    def __post_init__(self):
        object.__setattr__(self, "f", _checked_table(self.n, self.f, self.n))

    @property
    def domain(self) -> tuple[int, ...]:
        return tuple(sorted(self.f))


@dataclass(frozen=True)
class Advantage:
    """Worst-case success probability and the advantage it buys (None when
    the circuit does no better than chance)."""

    p_star: float
    q: float | None


def _input_state(circuit: Circuit, problem_n: int, b: int) -> StateVec:
    if circuit.n < problem_n:
        raise DomainError(f"circuit has {circuit.n} qubits, problem needs {problem_n}")
    return StateVec.basis(circuit.n, b)


def decision_advantage(circuit: Circuit, problem: DecisionProblem) -> Advantage:
    """Worst-case probability that the first output bit equals f(b).

    q = 1 / (2 p* - 1) when p* > 1/2, else None.
    """
    p_star = 1.0
    for b in problem.domain:
        out = apply_circuit(circuit, _input_state(circuit, problem.n, b))
        p_b = float(measure_prefix(out, 1).probs[problem.f[b]])
        p_star = min(p_star, p_b)
    q = 1.0 / (2 * p_star - 1) if p_star > 0.5 else None
    return Advantage(p_star, q)


def guess_advantage(circuit: Circuit, problem: GuessProblem) -> Advantage:
    """Worst-case probability that the first n output bits read f(b).

    q = 1 / p* when p* > 0, else None.
    """
    p_star = 1.0
    for b in problem.domain:
        out = apply_circuit(circuit, _input_state(circuit, problem.n, b))
        p_b = float(measure_prefix(out, problem.n).probs[problem.f[b]])
        p_star = min(p_star, p_b)
    q = 1.0 / p_star if p_star > 0 else None
    return Advantage(p_star, q)


def amplify_estimate(q: float, confidence: float, mode: str = "decision") -> int:
    """Repetitions driving the failure chance below 1 - confidence.

    decision mode: majority vote, Chernoff tail exp(-r / (2 q^2)).
    guess mode: independent trials, failure (1 - 1/q)^r.
    """
    if q < 1:
        raise DomainError(f"need q >= 1, got {q}")
    if not 0 < confidence < 1:
        raise DomainError(f"confidence must lie in (0, 1), got {confidence}")
    fail = 1 - confidence
    if mode == "decision":
        return max(1, math.ceil(2 * q * q * math.log(1 / fail)))
    if mode == "guess":
        if q == 1:
            return 1  # success is certain on every trial
        return max(1, math.ceil(math.log(fail) / math.log(1 - 1 / q)))
    raise DomainError(f"mode must be decision or guess, got {mode!r}")
