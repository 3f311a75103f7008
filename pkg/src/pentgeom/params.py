"""Parameter arithmetic for PENT(k, r, w): counts, admissibility, bounds and
the two nonexistence chains at the girth-5 lower bound and one above it.

Everything here is exact integer/rational arithmetic.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Any, Iterable

from .core import PentError


class NotIntegral(PentError):
    pass


class NotIntegralR(PentError):
    pass


class UnsupportedK(PentError):
    pass


class UnsupportedGirth(PentError):
    pass


class PreconditionViolated(PentError):
    pass


class HypothesisViolated(PentError):
    pass


@dataclass(frozen=True)
class PentParams:
    k: int
    r: int
    w: int

    def __post_init__(self):
        if self.k < 2:
            raise PentError(f"block size must be at least 2, got {self.k}")

    def __iter__(self):
        return iter((self.k, self.r, self.w))


def _p(p) -> PentParams:
    return p if isinstance(p, PentParams) else PentParams(*p)


def point_count(p: PentParams | tuple[int, int, int]) -> int:
    k, r, w = _p(p)
    return r * (k - 1) + w + 1


def line_count(p: PentParams | tuple[int, int, int]) -> int:
    k, r, w = _p(p)
    vr = point_count(p) * r
    if vr % k:
        raise NotIntegral(f"k={k} does not divide v*r={vr}")
    return vr // k


def is_admissible(p: PentParams | tuple[int, int, int]) -> bool:
    """True iff ``k | r(r - w - 1)``, the line-count integrality condition."""
    k, r, w = _p(p)
    return (r * (r - w - 1)) % k == 0


_PROVEN_STEINER_K = (2, 3, 4, 5)


def steiner_admissible(k: int, w: int, strict: bool = True) -> bool:
    """Whether an S(2, k, w) exists.

    The congruence ``w = 1 or k (mod k(k-1))`` is necessary and sufficient
    for ``k <= 5``. For larger ``k`` it is only necessary; ``strict=True``
    raises :class:`UnsupportedK` there, ``strict=False`` returns the
    necessary condition.
    """
    if k < 2:
        raise PentError(f"k must be at least 2, got {k}")
    if w in (0, 1) or w == k:
        return True
    if k not in _PROVEN_STEINER_K and strict:
        raise UnsupportedK(f"existence of S(2,{k},w) is not characterized for k > 5")
    return w % (k * (k - 1)) in (1, k % (k * (k - 1)))


def girth5_min_r(k: int, w: int) -> int:
    """Smallest r allowed for a PENT(k, r, w) whose deficiency graph has girth >= 5."""
    return -(-w * (w - 1) // (k - 1))


def moore_bound(w: int, girth: int) -> int:
    if girth == 5:
        return w * w + 1
    if girth == 6:
        return 2 * (w * w - w + 1)
    raise UnsupportedGirth(f"Moore bound implemented for girth 5 and 6 only, got {girth}")


MOORE_DEGREES = (2, 3, 7, 57)
MOORE_CASE_TRIPLES = ((2, 2, 2), (2, 6, 3), (3, 3, 3), (2, 42, 7), (3, 21, 7), (7, 7, 7))


class Status(str, enum.Enum):
    POSSIBLE = "possible"
    EXCLUDED = "excluded"
    UNKNOWN = "possible-unknown"


@dataclass(frozen=True)
class MooreVerdict:
    status: Status
    k: int
    r: int
    w: int
    reason: str
    triple: tuple[int, int, int] | None = None

    @property
    def possible(self) -> bool:
        return self.status is not Status.EXCLUDED


def moore_case_verdict(k: int, w: int) -> MooreVerdict:
    """Verdict for r = w(w-1)/(k-1), where the point count meets the girth-5 Moore bound."""
    if not (w >= k >= 2):
        raise PreconditionViolated(f"need w >= k >= 2, got k={k}, w={w}")
    if (w * (w - 1)) % (k - 1):
        raise NotIntegralR(f"(k-1)={k - 1} does not divide w(w-1)={w * (w - 1)}")
    r = w * (w - 1) // (k - 1)
    if w not in MOORE_DEGREES:
        return MooreVerdict(Status.EXCLUDED, k, r, w, f"no Moore graph of degree {w} and girth 5")
    if not steiner_admissible(k, w, strict=False):
        return MooreVerdict(Status.EXCLUDED, k, r, w, f"no S(2,{k},{w})")
    if w == 57:
        # Depends on the unknown 57-regular Moore graph; for k > 5 the design
        # condition is only necessary as well.
        return MooreVerdict(Status.UNKNOWN, k, r, w, "requires the hypothetical 57-regular Moore graph")
    triple = (k, r, w)
    if triple not in MOORE_CASE_TRIPLES:
        return MooreVerdict(Status.EXCLUDED, k, r, w, "design exists but no matching construction")
    return MooreVerdict(Status.POSSIBLE, k, r, w, "Moore graph overlay", triple)


class FailingStep(str, enum.Enum):
    POINT_COUNT = "point-count divisibility"
    B_REM = "b_rem divisibility"
    K_NOT_DIVIDING_W = "k does not divide w"
    EQ2 = "w not of the form tk(k-1)+k"
    SQRT_4W_4K_1 = "4w-4k+1 not square"
    SQRT_4W_1 = "4w+1 not square"
    MULTIPLICITY = "multiplicity not a non-negative integer"
    FINAL_INEQUALITY = "final inequality contradiction"
    CATALOGED_K2 = "cataloged: no (w,5)-graph on w^2+2 vertices"
    CATALOGED_W_EQ_K = "cataloged: w = k"


@dataclass(frozen=True)
class ExclusionVerdict:
    excluded: bool
    k: int
    w: int
    r: int
    failing_step: FailingStep | None
    witness: dict[str, Any] = field(default_factory=dict)
    note: str = ""

    def to_dict(self) -> dict[str, Any]:
        return {
            "k": self.k,
            "r": self.r,
            "w": self.w,
            "excluded": self.excluded,
            "failing_step": self.failing_step.value if self.failing_step else None,
            "witness": {key: str(val) for key, val in self.witness.items()},
            "note": self.note,
        }


def _exact_sqrt(n: int) -> int | None:
    if n < 0:
        return None
    s = isqrt(n)
    return s if s * s == n else None


def multiplicities(k: int, w: int, root1: int, root2: int) -> tuple[Fraction, ...]:
    """Eigenvalue multiplicities m1..m4 forced on the deficiency graph.

    ``root1`` and ``root2`` stand for sqrt(4w-4k+1) and sqrt(4w+1). Integer
    roots give exact :class:`~fractions.Fraction` results; floats are
    accepted for numerical cross-checks.
    """
    if isinstance(root1, int) and isinstance(root2, int):
        root1, root2 = Fraction(root1), Fraction(root2)
    c = k * k + (w * w - 1) * k - w * w
    m1 = w * (w - 2 * k + w * root1) / (2 * k * root1)
    m2 = w * (2 * k - w + w * root1) / (2 * k * root1)
    m3 = (root2 + 1) * c / (2 * k * root2)
    m4 = (root2 - 1) * c / (2 * k * root2)
    return m1, m2, m3, m4


def bound_plus_one_verdict(k: int, w: int) -> ExclusionVerdict:
    """Run the nonexistence chain for PENT(k, w(w-1)/(k-1) + 1, w) with girth >= 5.

    Steps are tried in proof order; the first one that fails is reported
    together with the intermediate values computed so far.
    """
    if w < k or k < 2:
        raise PreconditionViolated(f"need w >= k >= 2, got k={k}, w={w}")
    if (w * (w - 1)) % (k - 1):
        raise NotIntegralR(f"(k-1)={k - 1} does not divide w(w-1)={w * (w - 1)}")
    r = w * (w - 1) // (k - 1) + 1
    if w == k:
        if k in (2, 6):
            return ExclusionVerdict(False, k, w, r, None, note=f"PENT({k},{r},{w}) exists")
        if k == 56:
            return ExclusionVerdict(False, k, w, r, None, note="PENT(56,57,56) unresolved")
        return ExclusionVerdict(True, k, w, r, FailingStep.CATALOGED_W_EQ_K,
                                note="pentagonal geometries with r = k+1 are classified")
    if k == 2:
        return ExclusionVerdict(True, k, w, r, FailingStep.CATALOGED_K2, {"v": w * w + 2},
                                note="smallest (w,5)-graph order is never w^2+2")

    v = w * w + k
    wit: dict[str, Any] = {"v": v}

    def fail(step: FailingStep) -> ExclusionVerdict:
        return ExclusionVerdict(True, k, w, r, step, dict(wit))

    if v % k:
        return fail(FailingStep.B_REM)
    wit["b_rem"] = v // k
    if (v * r) % k:
        return fail(FailingStep.POINT_COUNT)
    wit["b"] = v * r // k
    if w % k:
        return fail(FailingStep.K_NOT_DIVIDING_W)
    if (w - k) % (k * (k - 1)):
        return fail(FailingStep.EQ2)
    t = (w - k) // (k * (k - 1))
    wit["t"] = t
    disc1, disc2 = 4 * w - 4 * k + 1, 4 * w + 1
    root1 = _exact_sqrt(disc1)
    wit["4w-4k+1"] = disc1
    if root1 is None:
        return fail(FailingStep.SQRT_4W_4K_1)
    root2 = _exact_sqrt(disc2)
    wit["4w+1"] = disc2
    if root2 is None:
        return fail(FailingStep.SQRT_4W_1)
    wit["s1"] = Fraction(-1 + root1, 2)
    wit["s2"] = Fraction(-1 - root1, 2)
    wit["s3"] = Fraction(-1 + root2, 2)
    wit["s4"] = Fraction(-1 - root2, 2)
    ms = multiplicities(k, w, root1, root2)
    for i, m in enumerate(ms, 1):
        wit[f"m{i}"] = m
    if any(m.denominator != 1 or m < 0 for m in ms):
        return fail(FailingStep.MULTIPLICITY)
    # w = p^2+p+k = q^2+q, so (q-p)(q+p+1) = k = de and w-k = ((d-e)^2-1)/4,
    # which is at most ((k-1)^2-1)/4 < tk(k-1) = w-k.
    p, q = (root1 - 1) // 2, (root2 - 1) // 2
    d, e = q - p, q + p + 1
    wit.update(p=p, q=q, d=d, e=e)
    if d * e != k:
        raise AssertionError(f"divisor identity fails for k={k}, w={w}")
    wit["((d-e)^2-1)/4"] = Fraction((d - e) ** 2 - 1, 4)
    wit["tk(k-1)"] = t * k * (k - 1)
    return fail(FailingStep.FINAL_INEQUALITY)


def gdd3_exists(g: int, u: int, m: int | None = None) -> bool:
    """Sufficient condition for a 3-GDD of type g^u (or g^u m^1), g and m even."""
    if g < 1 or g % 2:
        raise HypothesisViolated(f"group size g must be even and positive, got {g}")
    if m is None:
        return u >= 3 and (u * (u - 1) * g) % 3 == 0
    if m % 2 or m < 0:
        raise HypothesisViolated(f"m must be even, got {m}")
    return u >= 3 and m <= g * (u - 1) and (g * g * u * (u - 1) + 2 * g * u * m) % 3 == 0


def gdd4_exists(g: int, t: int, m: int) -> bool:
    """Sufficient condition for a 4-GDD of type g^{3t} m^1."""
    if g % 2 or m % 2:
        raise HypothesisViolated(f"g and m must be even, got g={g}, m={m}")
    if (m - g) % 3:
        raise HypothesisViolated(f"need m = g (mod 3), got g={g}, m={m}")
    if g < 8:
        raise HypothesisViolated(f"need g >= 8, got {g}")
    if m == g:
        return t >= 1
    if g < m:
        return 2 * m <= g * (3 * t - 1) and t >= 4
    return 1 <= m and t >= 10


def wilson_r(k: int, w: int, ingredient_rs: Iterable[int]) -> int:
    """Replication number of the geometry obtained by filling the groups of a
    k-GDD with PENT(k, r_i, w) ingredients."""
    rs = list(ingredient_rs)
    n = len(rs)
    if n == 0:
        raise PentError("need at least one ingredient")
    num = (n - 1) * (w + 1)
    if num % (k - 1):
        raise NotIntegral(f"(k-1)={k - 1} does not divide (N-1)(w+1)={num}")
    return sum(rs) + num // (k - 1)
