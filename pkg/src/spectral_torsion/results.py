"""Exact values of the form ``coeff * pi^k`` and the records that compare
derived coefficients with reference closed forms."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional

from .scalar_ring import ZERO, GaussRat, ParamScalar, Params, coerce

__all__ = ["SphereValue", "Comparison", "ResidueReport", "compare"]


@dataclass(frozen=True)
class SphereValue:
    """``coeff * pi**pi_power`` with an exact ParamScalar coefficient."""

    coeff: ParamScalar
    pi_power: int = 0

    def __post_init__(self):
        object.__setattr__(self, "coeff", coerce(self.coeff))

    def is_zero(self) -> bool:
        return not self.coeff

    def __add__(self, other: "SphereValue") -> "SphereValue":
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if self.pi_power != other.pi_power:
            raise ValueError("cannot add different powers of pi exactly")
        return SphereValue(self.coeff + other.coeff, self.pi_power)

    def __neg__(self):
        return SphereValue(-self.coeff, self.pi_power)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, s) -> "SphereValue":
        if isinstance(s, SphereValue):
            return SphereValue(self.coeff * s.coeff, self.pi_power + s.pi_power)
        return SphereValue(self.coeff * coerce(s), self.pi_power)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, SphereValue):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return True
        return self.pi_power == other.pi_power and self.coeff == other.coeff

    def __hash__(self):
        return hash((self.coeff, self.pi_power if self.coeff else 0))

    def eval(self, a, b) -> "SphereValue":
        return SphereValue(ParamScalar(self.coeff.eval(a, b)), self.pi_power)

    def specialize(self, params: Params) -> "SphereValue":
        return SphereValue(params.specialize(self.coeff), self.pi_power)

    def to_text(self) -> str:
        if not self.coeff:
            return "0"
        if self.pi_power == 0:
            return self.coeff.to_text()
        pi = "pi" if self.pi_power == 1 else f"pi^{self.pi_power}"
        t = self.coeff.to_text()
        if t == "1":
            return pi
        if t == "-1":
            return f"-{pi}"
        return f"({t})*{pi}"

    __str__ = to_text

    def to_dict(self) -> dict:
        return {"coeff": self.coeff.to_text(), "pi_power": self.pi_power, "text": self.to_text()}

    @classmethod
    def from_dict(cls, d: dict) -> "SphereValue":
        return cls(ParamScalar.parse(d["coeff"]), int(d["pi_power"]))


@dataclass
class Comparison:
    """Derived value against one reference closed form."""

    label: str
    claimed: SphereValue
    verdict: str                 # "Match" or "Mismatch"
    delta: Optional[str]         # derived - claimed, when exactly expressible
    note: str = ""

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "claimed": self.claimed.to_dict(),
            "verdict": self.verdict,
            "delta": self.delta,
            "note": self.note,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Comparison":
        return cls(d["label"], SphereValue.from_dict(d["claimed"]), d["verdict"], d["delta"], d.get("note", ""))


def compare(label: str, derived: SphereValue, claimed: SphereValue, note: str = "") -> Comparison:
    if derived == claimed:
        return Comparison(label, claimed, "Match", None, note)
    if derived.pi_power == claimed.pi_power or derived.is_zero() or claimed.is_zero():
        delta = (derived - claimed).to_text()
    else:
        ratio = derived.coeff / claimed.coeff
        delta = None
        extra = f"powers of pi differ ({derived.pi_power} vs {claimed.pi_power}); coefficient ratio {ratio.to_text()}"
        note = f"{note}; {extra}" if note else extra
    return Comparison(label, claimed, "Mismatch", delta, note)


@dataclass
class ResidueReport:
    """Everything known about one derived functional."""

    functional: str
    params: str
    bracket: str
    derived: SphereValue
    coefficients: Dict[str, SphereValue] = field(default_factory=dict)
    comparisons: List[Comparison] = field(default_factory=list)
    checks: Dict[str, str] = field(default_factory=dict)
    notes: List[str] = field(default_factory=list)

    @property
    def verdict(self) -> str:
        """Verdict of the headline comparison (the first one)."""
        return self.comparisons[0].verdict if self.comparisons else "Match"

    def to_dict(self) -> dict:
        return {
            "functional": self.functional,
            "params": self.params,
            "bracket": self.bracket,
            "derived": self.derived.to_dict(),
            "coefficients": {k: v.to_dict() for k, v in self.coefficients.items()},
            "comparisons": [c.to_dict() for c in self.comparisons],
            "verdict": self.verdict,
            "checks": dict(self.checks),
            "notes": list(self.notes),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ResidueReport":
        return cls(
            d["functional"],
            d["params"],
            d["bracket"],
            SphereValue.from_dict(d["derived"]),
            {k: SphereValue.from_dict(v) for k, v in d["coefficients"].items()},
            [Comparison.from_dict(c) for c in d["comparisons"]],
            dict(d["checks"]),
            list(d["notes"]),
        )
