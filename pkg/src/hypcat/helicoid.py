"""Helicoids in the three models and their conjugate catenoids.

The helicoid with pitch ``abar`` is swept by a geodesic turning at rate
``abar`` while it translates along a fixed axis. It is conjugate to a
catenoid: spherical for ``abar > 1``, parabolic for ``abar = 1``, hyperbolic
for ``0 < abar < 1``. The plane ``abar = 0`` is its own conjugate. In the
spherical range the dictionary reduces to ``abar = coth(a)``, so stability
switches at ``abar_c = coth(a_c)``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

from .catenary import A_MAX
from .models import BallPoint, DomainError, LorentzVec, UpperHalfPoint

__all__ = [
    "HelicoidPitch",
    "ConjugateKind",
    "ConjugacyRelation",
    "HelicoidKind",
    "StabilityClassHelicoid",
    "INDEX_NOTE",
    "check_pitch",
    "helicoid_hyperboloid",
    "helicoid_ball",
    "helicoid_upperhalf",
    "pitch_from_spherical",
    "pitch_from_hyperbolic",
    "abar_c",
    "conjugate_of",
    "classify_helicoid",
]

# some statements of the unstable case give index one; the argument gives infinity
INDEX_NOTE = ("Unstable helicoids are reported with infinite Morse index. A restated form of "
              "the classification theorem says index one, which contradicts its own proof.")


@dataclass(frozen=True)
class HelicoidPitch:
    abar: float

    def __post_init__(self):
        v = float(self.abar)
        if not (v >= 0.0 and math.isfinite(v)):
            raise DomainError(f"pitch abar = {self.abar!r} must be finite and nonnegative")
        object.__setattr__(self, "abar", v)

    def __float__(self) -> float:
        return self.abar


def check_pitch(abar) -> float:
    if isinstance(abar, HelicoidPitch):
        return abar.abar
    return HelicoidPitch(abar).abar


class ConjugateKind(str, enum.Enum):
    SPHERICAL = "Spherical"
    HYPERBOLIC = "Hyperbolic"
    PARABOLIC = "Parabolic"
    PLANE = "Plane"


@dataclass(frozen=True)
class ConjugacyRelation:
    kind: ConjugateKind
    atilde: Optional[float] = None
    a_ball: Optional[float] = None

    def __post_init__(self):
        if self.kind in (ConjugateKind.SPHERICAL, ConjugateKind.HYPERBOLIC):
            if self.atilde is None or not self.atilde > 0.5:
                raise DomainError(f"{self.kind.value} conjugate needs atilde > 1/2")
        elif self.atilde is not None or self.a_ball is not None:
            raise DomainError(f"{self.kind.value} conjugate carries no parameters")

    def as_dict(self) -> dict:
        return {"kind": self.kind.value, "atilde": self.atilde, "a_ball": self.a_ball}


class HelicoidKind(str, enum.Enum):
    GLOBALLY_STABLE = "GloballyStable"
    UNSTABLE_INFINITE_INDEX = "UnstableInfiniteIndex"


@dataclass(frozen=True)
class StabilityClassHelicoid:
    abar: float
    kind: HelicoidKind
    conjugate: ConjugacyRelation
    abar_c: float

    @property
    def morse_index(self) -> float:
        return 0.0 if self.kind is HelicoidKind.GLOBALLY_STABLE else math.inf

    def as_dict(self) -> dict:
        stable = self.kind is HelicoidKind.GLOBALLY_STABLE
        out = {"abar": self.abar, "kind": self.kind.value,
               "morse_index": "0" if stable else "infinite",
               "abar_c": self.abar_c, "conjugate": self.conjugate.as_dict()}
        if not stable:
            out["note"] = INDEX_NOTE
        return out


def helicoid_hyperboloid(abar, u, v) -> LorentzVec:
    """``(cosh u cosh v, cosh u sinh v, sinh u cos(abar v), sinh u sin(abar v))``."""
    abar = check_pitch(abar)
    cu = math.cosh(u)
    su = math.sinh(u)
    return LorentzVec(cu * math.cosh(v), cu * math.sinh(v),
                      su * math.cos(abar * v), su * math.sin(abar * v))


def helicoid_ball(abar, u, v) -> BallPoint:
    """Ball chart ``(sinh u cos(abar v), sinh u sin(abar v), cosh u sinh v) / (1 + cosh u cosh v)``."""
    abar = check_pitch(abar)
    cu = math.cosh(u)
    d = 1.0 + cu * math.cosh(v)
    r = math.sinh(u) / d
    return BallPoint(r * math.cos(abar * v), r * math.sin(abar * v), cu * math.sinh(v) / d)


def helicoid_upperhalf(abar, u, v) -> UpperHalfPoint:
    """Upper half chart: ``z = e^(v + i abar v) tanh u``, ``t = e^v sech u``."""
    abar = check_pitch(abar)
    ev = math.exp(v)
    m = ev * math.tanh(u)
    return UpperHalfPoint(m * math.cos(abar * v), m * math.sin(abar * v), ev / math.cosh(u))


def _check_atilde(atilde) -> float:
    atilde = float(atilde)
    if not atilde > 0.5:
        raise DomainError(f"atilde = {atilde!r} must exceed 1/2")
    return atilde


def pitch_from_spherical(atilde) -> HelicoidPitch:
    """Pitch of the helicoid conjugate to the spherical catenoid with parameter ``atilde``."""
    atilde = _check_atilde(atilde)
    return HelicoidPitch(math.sqrt((atilde + 0.5) / (atilde - 0.5)))


def pitch_from_hyperbolic(atilde) -> HelicoidPitch:
    """Pitch of the helicoid conjugate to a hyperbolic catenoid; always in (0, 1)."""
    atilde = _check_atilde(atilde)
    return HelicoidPitch(math.sqrt((atilde - 0.5) / (atilde + 0.5)))


def abar_c() -> float:
    """Critical pitch ``coth(a_c)``."""
    from .jacobi import find_a_c

    return 1.0 / math.tanh(find_a_c())


def conjugate_of(abar) -> ConjugacyRelation:
    """Invert the pitch dictionary."""
    abar = check_pitch(abar)
    if abar == 0.0:
        return ConjugacyRelation(ConjugateKind.PLANE)
    if abar == 1.0:
        return ConjugacyRelation(ConjugateKind.PARABOLIC)
    b2 = abar * abar
    if abar < 1.0:
        return ConjugacyRelation(ConjugateKind.HYPERBOLIC, (1.0 + b2) / (2.0 * (1.0 - b2)))
    a = math.atanh(1.0 / abar)
    # cosh(2a) / 2 with coth(a) = abar
    atilde = (b2 + 1.0) / (2.0 * (b2 - 1.0))
    return ConjugacyRelation(ConjugateKind.SPHERICAL, atilde, a if a <= A_MAX else None)


def classify_helicoid(abar) -> StabilityClassHelicoid:
    """Globally stable for ``abar <= coth(a_c)``, otherwise unstable with infinite index."""
    abar = check_pitch(abar)
    crit = abar_c()
    kind = HelicoidKind.GLOBALLY_STABLE if abar <= crit else HelicoidKind.UNSTABLE_INFINITE_INDEX
    return StabilityClassHelicoid(abar, kind, conjugate_of(abar), crit)
