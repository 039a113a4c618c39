"""Non-negative step functions on the half-line.

A :class:`StepFunction` is piecewise constant with compact support: cuts
``0 = x_0 < x_1 < ... < x_m`` and values ``v_1..v_m`` (value ``v_i`` on
``[x_{i-1}, x_i)``), implicitly zero on ``[x_m, oo)``.  All coordinates and
values are exact rationals.  The canonical form merges equal neighbours and
trims trailing zero pieces, so equality of canonical forms is equality of
functions almost everywhere.

This module provides the superlevel-set view, layer-cake Lp norms, the
Schwarz non-increasing rearrangement, the best non-decreasing upper bound,
inner products and rearrangement equivalence, plus the text/JSON formats of
the CLI.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .intervals import IntervalSet, Rational, _check_rational

__all__ = [
    "StepFunction",
    "MonotoneStep",
    "ParseError",
    "superlevel",
    "lp_norm",
    "lp_norm_layer_cake",
    "schwarz",
    "best_upper_bound",
    "s_sigma",
    "inner_product",
    "is_rearrangement_of",
    "is_unimodal",
    "lp_distance",
    "parse_text",
    "parse_json",
]


class ParseError(ValueError):
    """Input text could not be parsed; carries a line/field location."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"{message} at line {line}"
        super().__init__(message)


def _canon(cuts: Sequence[Rational], values: Sequence[Rational]):
    if len(cuts) != len(values) + 1:
        raise ValueError("need exactly one more cut than values")
    for x in cuts:
        _check_rational(x, "cut")
    for v in values:
        _check_rational(v, "value")
        if v < 0:
            raise ValueError(f"negative value {v}")
    if cuts and cuts[0] < 0:
        raise ValueError("cuts must lie in the half-line")
    out_cuts = [0]
    out_vals = []
    if cuts and cuts[0] > 0:
        out_vals.append(0)
        out_cuts.append(cuts[0])
    prev = cuts[0] if cuts else 0
    for x, v in zip(cuts[1:], values):
        if x < prev:
            raise ValueError("cuts must be non-decreasing")
        if x == prev:
            continue  # zero-length piece
        if out_vals and out_vals[-1] == v:
            out_cuts[-1] = x  # merge with equal neighbour
        else:
            out_vals.append(v)
            out_cuts.append(x)
        prev = x
    while out_vals and out_vals[-1] == 0:
        out_vals.pop()
        out_cuts.pop()
    return tuple(out_cuts), tuple(out_vals)


@dataclass(frozen=True)
class StepFunction:
    cuts: tuple
    values: tuple

    def __post_init__(self):
        c, v = _canon(self.cuts, self.values)
        if c != tuple(self.cuts) or v != tuple(self.values):
            object.__setattr__(self, "cuts", c)
            object.__setattr__(self, "values", v)

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "StepFunction":
        return cls((0,), ())

    @classmethod
    def from_pieces(cls, pieces: Iterable[tuple]) -> "StepFunction":
        """Build from (lo, hi, value) triples; gaps are zero, overlap is an error."""
        triples = sorted(
            ((lo, hi, v) for lo, hi, v in pieces if lo < hi), key=lambda t: (t[0], t[1])
        )
        cuts = [0]
        values = []
        for lo, hi, v in triples:
            if lo < cuts[-1]:
                raise ValueError(f"overlapping pieces near {lo}")
            if lo > cuts[-1]:
                cuts.append(lo)
                values.append(0)
            cuts.append(hi)
            values.append(v)
        return cls(tuple(cuts), tuple(values))

    @classmethod
    def indicator(cls, lo, hi) -> "StepFunction":
        return cls.from_pieces([(lo, hi, 1)])

    # -- basic queries -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.values

    @property
    def support_end(self) -> Rational:
        return self.cuts[-1]

    def max_value(self) -> Rational:
        return max(self.values, default=0)

    def __call__(self, x) -> Rational:
        if x < 0 or x >= self.cuts[-1]:
            return 0
        import bisect

        i = bisect.bisect_right(self.cuts, x) - 1
        return self.values[i] if i < len(self.values) else 0

    def pieces(self):
        """All (lo, hi, value) triples, including interior zero pieces."""
        return [
            (lo, hi, v) for lo, hi, v in zip(self.cuts, self.cuts[1:], self.values)
        ]

    def support_pieces(self):
        """The (lo, hi, value) triples with nonzero value."""
        return [p for p in self.pieces() if p[2] != 0]

    def distinct_levels(self) -> tuple:
        """Distinct positive values, ascending."""
        return tuple(sorted({v for v in self.values if v > 0}))

    # -- arithmetic helpers -------------------------------------------------

    def refine_with(self, other: "StepFunction"):
        """Common refinement: merged cuts plus the (v, w) value pairs."""
        cuts = sorted(set(self.cuts) | set(other.cuts))
        end = max(self.cuts[-1], other.cuts[-1])
        cuts = [c for c in cuts if c <= end]
        pairs = []
        for lo, hi in zip(cuts, cuts[1:]):
            pairs.append((lo, hi, self(lo), other(lo)))
        return pairs

    def scale_x(self, factor: Rational) -> "StepFunction":
        if factor <= 0:
            raise ValueError("scale factor must be positive")
        return StepFunction(tuple(c * factor for c in self.cuts), self.values)

    def translate(self, shift: Rational) -> "StepFunction":
        if shift < 0:
            raise ValueError("translation must stay on the half-line")
        if self.is_zero() or shift == 0:
            return self
        return StepFunction.from_pieces(
            [(lo + shift, hi + shift, v) for lo, hi, v in self.support_pieces()]
        )

    # -- serialisation -------------------------------------------------------

    def to_text(self) -> str:
        return "\n".join(f"{lo} {hi} {v}" for lo, hi, v in self.support_pieces())

    def to_json(self) -> str:
        return json.dumps(
            {
                "pieces": [
                    {"lo": str(lo), "hi": str(hi), "value": str(v)}
                    for lo, hi, v in self.support_pieces()
                ]
            }
        )


@dataclass(frozen=True)
class MonotoneStep:
    """Non-decreasing step function with a constant terminal value on [x_m, oo)."""

    cuts: tuple
    values: tuple
    terminal: Rational

    def __post_init__(self):
        if len(self.cuts) != len(self.values) + 1:
            raise ValueError("need exactly one more cut than values")
        seq = list(self.values) + [self.terminal]
        if any(b < a for a, b in zip(seq, seq[1:])):
            raise ValueError("values must be non-decreasing")
        if any(v < 0 for v in seq):
            raise ValueError("values must be non-negative")

    def __call__(self, x) -> Rational:
        if x < 0:
            return 0
        if x >= self.cuts[-1]:
            return self.terminal
        import bisect

        i = bisect.bisect_right(self.cuts, x) - 1
        return self.values[i]

    def to_text(self) -> str:
        lines = [f"{lo} {hi} {v}" for lo, hi, v in zip(self.cuts, self.cuts[1:], self.values)]
        lines.append(f"{self.cuts[-1]} inf {self.terminal}")
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------


def superlevel(phi: StepFunction, nu) -> IntervalSet:
    """The set {x : phi(x) >= nu} for a positive level nu (closed convention)."""
    if not nu > 0:
        raise ValueError("level must be positive (the whole half-line is not representable)")
    return IntervalSet.from_endpoints(
        [(lo, hi) for lo, hi, v in zip(phi.cuts, phi.cuts[1:], phi.values) if v >= nu]
    )


def _pow(base: Rational, p) -> Union[Fraction, float]:
    """base**p, exact when p is an integer."""
    if isinstance(p, int) or (isinstance(p, float) and p.is_integer()):
        return Fraction(base) ** int(p)
    return float(base) ** float(p)


def lp_power_sum(phi: StepFunction, p) -> Union[Fraction, float]:
    """The p-th power of the Lp norm: sum of v^p * piece length."""
    if p < 1:
        raise ValueError("p must be >= 1")
    total = 0
    for lo, hi, v in zip(phi.cuts, phi.cuts[1:], phi.values):
        if v != 0:
            total += _pow(v, p) * (hi - lo)
    return total


def lp_norm(phi: StepFunction, p) -> float:
    if p < 1:
        raise ValueError("p must be >= 1")
    return float(lp_power_sum(phi, p)) ** (1.0 / float(p))


def lp_norm_layer_cake(phi: StepFunction, p) -> float:
    """Lp norm through the level decomposition.

    The distribution function nu -> meas{phi >= nu} is a staircase over the
    distinct values, so the integral p * int nu^(p-1) meas dnu splits into
    closed-form bands meas_j * (u_j^p - u_{j-1}^p).
    """
    if p < 1:
        raise ValueError("p must be >= 1")
    total = 0
    prev = 0
    for u in phi.distinct_levels():
        m = superlevel(phi, u).measure()
        total += m * (_pow(u, p) - _pow(prev, p))
        prev = u
    return float(total) ** (1.0 / float(p))


def lp_distance(phi: StepFunction, psi: StepFunction, p) -> float:
    """||phi - psi||_p computed on the common refinement."""
    if p < 1:
        raise ValueError("p must be >= 1")
    total = 0.0
    for lo, hi, v, w in phi.refine_with(psi):
        if v != w:
            total += abs(float(v) - float(w)) ** float(p) * float(hi - lo)
    return total ** (1.0 / float(p))


def schwarz(phi: StepFunction) -> StepFunction:
    """The non-increasing rearrangement: superlevels become [0, meas{phi>=nu}]."""
    levels = phi.distinct_levels()
    cuts = [0]
    values = []
    for u in reversed(levels):
        m = superlevel(phi, u).measure()
        if m > cuts[-1]:
            cuts.append(m)
            values.append(u)
    return StepFunction(tuple(cuts), tuple(values))


def best_upper_bound(phi: StepFunction) -> MonotoneStep:
    """Running essential supremum of phi: the minimal non-decreasing majorant."""
    running = 0
    values = []
    for v in phi.values:
        running = max(running, v)
        values.append(running)
    cuts = [0]
    out_vals = []
    for x, v in zip(phi.cuts[1:], values):
        if out_vals and out_vals[-1] == v:
            cuts[-1] = x
        else:
            out_vals.append(v)
            cuts.append(x)
    while out_vals and out_vals[-1] == running:
        out_vals.pop()
        cuts.pop()
    return MonotoneStep(tuple(cuts), tuple(out_vals), running)


def s_sigma(phi: StepFunction):
    """Right end of the top plateau, and the same shifted by the discrepancy measure.

    ``s`` is the right endpoint of the last piece attaining the maximum value;
    ``sigma = s - meas({phi != phi_up} cap [0, s])`` where ``phi_up`` is the
    best non-decreasing upper bound.
    """
    if phi.is_zero():
        raise ValueError("s is undefined for the zero function")
    vmax = phi.max_value()
    s = None
    for lo, hi, v in zip(phi.cuts, phi.cuts[1:], phi.values):
        if v == vmax:
            s = hi
    mismatch = 0
    running = 0
    for lo, hi, v in zip(phi.cuts, phi.cuts[1:], phi.values):
        running = max(running, v)
        if lo >= s:
            break
        if v != running:
            mismatch += min(hi, s) - lo
    return s, s - mismatch


def inner_product(phi: StepFunction, psi: StepFunction) -> Rational:
    total = 0
    for lo, hi, v, w in phi.refine_with(psi):
        total += v * w * (hi - lo)
    return total


def is_rearrangement_of(phi: StepFunction, psi: StepFunction) -> bool:
    """Equality of superlevel measures at every level of the merged level set.

    For step functions the distribution functions are staircases jumping only
    at the two functions' values, so agreement at the merged values implies
    agreement at almost every level.
    """
    levels = sorted(set(phi.distinct_levels()) | set(psi.distinct_levels()))
    return all(
        superlevel(phi, u).measure() == superlevel(psi, u).measure() for u in levels
    )


def is_unimodal(phi: StepFunction) -> bool:
    """One rise then one fall in the value sequence (with zero boundaries)."""
    seq = [0, *phi.values, 0]
    diffs = [b - a for a, b in zip(seq, seq[1:]) if b != a]
    seen_drop = False
    for d in diffs:
        if d < 0:
            seen_drop = True
        elif seen_drop:
            return False
    return True


# ---------------------------------------------------------------------------
# Parsing (text format: one `lo hi value` piece per line; JSON mirror)
# ---------------------------------------------------------------------------


def _parse_rational(token: str, line: int) -> Fraction:
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"malformed rational {token!r}", line) from None


def parse_text(text: str) -> StepFunction:
    pieces = []
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) != 3:
            raise ParseError(f"expected `lo hi value`, got {len(fields)} fields", lineno)
        lo, hi, v = (_parse_rational(f, lineno) for f in fields)
        if v < 0:
            raise ParseError("negative value", lineno)
        if lo < 0:
            raise ParseError("piece starts left of the origin", lineno)
        if lo >= hi:
            raise ParseError("empty piece (lo >= hi)", lineno)
        rows.append((lo, hi, v, lineno))
        pieces.append((lo, hi, v))
    rows.sort(key=lambda r: (r[0], r[1]))
    for (_, hi_a, _, _), (lo_b, _, _, line_b) in zip(rows, rows[1:]):
        if lo_b < hi_a:
            raise ParseError("overlapping pieces", line_b)
    try:
        return StepFunction.from_pieces(pieces)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def parse_json(text: str) -> StepFunction:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno) from None
    if not isinstance(doc, dict) or "pieces" not in doc:
        raise ParseError('expected an object with a "pieces" array')
    pieces = []
    for k, item in enumerate(doc["pieces"]):
        try:
            lo = _coerce_rational(item["lo"])
            hi = _coerce_rational(item["hi"])
            v = _coerce_rational(item["value"])
        except (KeyError, ValueError, TypeError):
            raise ParseError(f"malformed piece #{k}") from None
        if v < 0:
            raise ParseError(f"negative value in piece #{k}")
        if lo >= hi:
            raise ParseError(f"empty piece #{k}")
        pieces.append((lo, hi, v))
    try:
        return StepFunction.from_pieces(pieces)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def _coerce_rational(x) -> Fraction:
    if isinstance(x, bool):
        raise ValueError("boolean is not a rational")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        # JSON numbers are decimal literals; interpret them decimally.
        return Fraction(repr(x))
    if isinstance(x, str):
        return Fraction(x)
    raise ValueError(f"cannot interpret {x!r} as a rational")


def parse_function(text: str) -> StepFunction:
    """Parse either format; JSON is detected by a leading brace."""
    if text.lstrip().startswith("{"):
        return parse_json(text)
    return parse_text(text)
