"""Semiring algebras used to weight transition systems.

Everything else in this package is generic over a :class:`Semiring`
instance: a carrier with a commutative additive monoid ``(+, zero)``, a
multiplicative monoid ``(*, one)``, two-sided distributivity, and an
annihilating zero.  Each shipped instance also provides a total ``star``
operation returning the countable sum ``1 + a + a*a + ...``, which is what
lets cyclic systems of equations be solved exactly.

Shipped instances (selected by name):

* ``boolean``     -- {false, true} with or/and.
* ``real``        -- non-negative rationals plus a symbolic infinity,
                     exact arithmetic via :class:`fractions.Fraction`.
* ``real-float``  -- non-negative floats; equality is epsilon-tolerant.
* ``tropical``    -- min-plus over non-negative rationals plus infinity.
* ``arctic``      -- max-plus over rationals plus both infinities.
* ``truncation``  -- {0..k} with min as sum and addition clamped at k.
* ``maxtimes``    -- [0, 1] with max and multiplication.

Values are plain Python objects (bool, Fraction, float, int, or the
module-level ``INF``/``NEG_INF`` sentinels); the semiring instance holds
the operations, so no per-value wrapper objects are allocated.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction


class _Extreme:
    """Symbolic signed infinity, distinct from every finite carrier value."""

    __slots__ = ("sign",)

    def __init__(self, sign):
        self.sign = sign

    def __repr__(self):
        return "inf" if self.sign > 0 else "-inf"

    def __eq__(self, other):
        return isinstance(other, _Extreme) and other.sign == self.sign

    def __hash__(self):
        return hash(("semiring-extreme", self.sign))


INF = _Extreme(1)
NEG_INF = _Extreme(-1)

_RATIONAL_RE = re.compile(r"^-?[0-9]+(/[0-9]+)?$")


def _parse_fraction(text):
    """Parse 'p/q' or 'n' into a Fraction; raise ValueError otherwise."""
    if not _RATIONAL_RE.match(text):
        raise ValueError("expected a rational literal 'p/q' or 'n', got %r" % text)
    try:
        return Fraction(text)
    except ZeroDivisionError:
        raise ValueError("zero denominator in %r" % text) from None


class Semiring:
    """Base class fixing the operation contract shared by all instances.

    Subclasses set ``zero``/``one`` and implement ``add``, ``mul``,
    ``star`` and ``natural_leq``.  ``natural_leq(a, b)`` decides the
    natural preorder: whether some c exists with ``a + c == b``; ``zero``
    is its bottom in every shipped instance.
    """

    name = "abstract"
    carrier_mode = None  # "boolean" | "exact-rational" | "float" | "bounded-integer"
    idempotent = False
    zero = None
    one = None

    # -- core algebra --------------------------------------------------

    def add(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def star(self, a):
        """Least s with s == one + a*s (equals the countable sum of a**n)."""
        raise NotImplementedError

    def natural_leq(self, a, b):
        raise NotImplementedError

    # -- derived helpers -------------------------------------------------

    def values_equal(self, a, b):
        """Carrier equality; float instances override with a tolerance."""
        return a == b

    def is_zero(self, v):
        return self.values_equal(v, self.zero)

    def sum(self, values):
        total = self.zero
        for v in values:
            total = self.add(total, v)
        return total

    # -- I/O and ordering ------------------------------------------------

    def coerce(self, v):
        """Normalize a raw Python value into the carrier; ValueError if outside."""
        raise NotImplementedError

    def parse(self, text):
        """Parse a weight literal; raises ValueError on malformed input."""
        raise NotImplementedError

    def format(self, v):
        raise NotImplementedError

    def sort_key(self, v):
        """Key for a total order on the carrier (used by sorted splitting)."""
        raise NotImplementedError

    def sample_values(self):
        """Structured sample set (units, bounds, generic points) for axiom checks."""
        raise NotImplementedError

    def params(self):
        """Instance parameters as a dict, for document round trips."""
        return {}

    def describe(self):
        d = {"name": self.name}
        d.update(self.params())
        return d

    def __repr__(self):
        ps = self.params()
        if ps:
            inner = ", ".join("%s=%r" % kv for kv in sorted(ps.items()))
            return "%s(%s)" % (self.name, inner)
        return self.name


class BooleanSemiring(Semiring):
    """({false, true}, or, false, and, true); weak bisimulation over it is Milner's."""

    name = "boolean"
    carrier_mode = "boolean"
    idempotent = True
    zero = False
    one = True

    def add(self, a, b):
        return a or b

    def mul(self, a, b):
        return a and b

    def star(self, a):
        return True

    def natural_leq(self, a, b):
        return (not a) or b

    def coerce(self, v):
        if isinstance(v, bool):
            return v
        raise ValueError("boolean semiring carries bool values, got %r" % (v,))

    def parse(self, text):
        t = text.strip().lower()
        if t in ("true", "1"):
            return True
        if t in ("false", "0"):
            return False
        raise ValueError("expected true/false/1/0, got %r" % text)

    def format(self, v):
        return "true" if v else "false"

    def sort_key(self, v):
        return 1 if v else 0

    def sample_values(self):
        return [False, True]


class RealSemiring(Semiring):
    """Non-negative extended rationals with exact arithmetic.

    ``INF`` is absorbing for + and for * against nonzero values, while
    ``INF * 0 == 0`` so that zero still annihilates.  ``star(a)`` is the
    geometric-series value 1/(1-a) below one and INF from one upward.
    """

    name = "real"
    carrier_mode = "exact-rational"
    zero = Fraction(0)
    one = Fraction(1)

    def add(self, a, b):
        if a is INF or b is INF:
            return INF
        return a + b

    def mul(self, a, b):
        if a == self.zero or b == self.zero:
            return self.zero
        if a is INF or b is INF:
            return INF
        return a * b

    def star(self, a):
        if a is INF or a >= 1:
            return INF
        return 1 / (1 - a)

    def natural_leq(self, a, b):
        if b is INF:
            return True
        if a is INF:
            return False
        return a <= b

    def coerce(self, v):
        if v is INF:
            return v
        if isinstance(v, bool):
            raise ValueError("bool is not a rational weight")
        if isinstance(v, (int, Fraction)):
            v = Fraction(v)
            if v < 0:
                raise ValueError("negative weight %s outside the carrier" % v)
            return v
        raise ValueError("cannot use %r as an extended rational" % (v,))

    def parse(self, text):
        t = text.strip()
        if t == "inf":
            return INF
        return self.coerce(_parse_fraction(t))

    def format(self, v):
        return "inf" if v is INF else str(v)

    def sort_key(self, v):
        return (1, Fraction(0)) if v is INF else (0, v)

    def sample_values(self):
        return [Fraction(0), Fraction(1, 2), Fraction(1), Fraction(2), INF]


class RealFloatSemiring(Semiring):
    """Float variant of the real semiring with epsilon-tolerant comparisons."""

    name = "real-float"
    carrier_mode = "float"
    zero = 0.0
    one = 1.0

    def __init__(self, epsilon=1e-9):
        if not (isinstance(epsilon, float) and epsilon > 0):
            raise ValueError("epsilon must be a positive float")
        self.epsilon = epsilon

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        # inf * 0.0 is nan in IEEE; the semiring needs an annihilating zero.
        if a == 0.0 or b == 0.0:
            return 0.0
        return a * b

    def star(self, a):
        if a >= 1.0:
            return math.inf
        return 1.0 / (1.0 - a)

    def natural_leq(self, a, b):
        if b == math.inf:
            return True
        if a == math.inf:
            return False
        return a <= b + self.epsilon

    def values_equal(self, a, b):
        if a == math.inf or b == math.inf:
            return a == b
        return abs(a - b) <= self.epsilon

    def coerce(self, v):
        if isinstance(v, bool):
            raise ValueError("bool is not a float weight")
        if isinstance(v, (int, float, Fraction)):
            v = float(v)
            if math.isnan(v) or v < 0:
                raise ValueError("weight %r outside the non-negative carrier" % v)
            return v
        raise ValueError("cannot use %r as a float weight" % (v,))

    def parse(self, text):
        t = text.strip()
        if t == "inf":
            return math.inf
        if _RATIONAL_RE.match(t):
            return self.coerce(_parse_fraction(t))
        try:
            return self.coerce(float(t))
        except (ValueError, OverflowError):
            raise ValueError("malformed float literal %r" % text) from None

    def format(self, v):
        return "inf" if v == math.inf else repr(v)

    def sort_key(self, v):
        return v

    def sample_values(self):
        return [0.0, 0.5, 1.0, 2.0, math.inf]

    def params(self):
        return {"epsilon": self.epsilon}


class TropicalSemiring(Semiring):
    """Min-plus over non-negative rationals plus INF (which is the zero).

    The carrier is restricted to non-negative values so that ``star`` is
    total: with a >= 0 the least solution of s == min(0, a + s) is 0.
    """

    name = "tropical"
    carrier_mode = "exact-rational"
    idempotent = True
    zero = INF
    one = Fraction(0)

    def add(self, a, b):
        if a is INF:
            return b
        if b is INF:
            return a
        return a if a <= b else b

    def mul(self, a, b):
        if a is INF or b is INF:
            return INF
        return a + b

    def star(self, a):
        return Fraction(0)

    def natural_leq(self, a, b):
        # a + c == b means min(a, c) == b, solvable exactly when b <= a.
        if a is INF:
            return True
        if b is INF:
            return False
        return b <= a

    def coerce(self, v):
        if v is INF:
            return v
        if isinstance(v, bool):
            raise ValueError("bool is not a tropical weight")
        if isinstance(v, (int, Fraction)):
            v = Fraction(v)
            if v < 0:
                raise ValueError("tropical carrier is non-negative, got %s" % v)
            return v
        raise ValueError("cannot use %r as a tropical weight" % (v,))

    def parse(self, text):
        t = text.strip()
        if t == "inf":
            return INF
        return self.coerce(_parse_fraction(t))

    def format(self, v):
        return "inf" if v is INF else str(v)

    def sort_key(self, v):
        return (1, Fraction(0)) if v is INF else (0, v)

    def sample_values(self):
        return [INF, Fraction(0), Fraction(1), Fraction(7, 2), Fraction(5)]


class ArcticSemiring(Semiring):
    """Max-plus over rationals extended with both infinities.

    NEG_INF is the zero and must annihilate, so NEG_INF + INF is NEG_INF
    under ``mul``.  ``star`` is 0 for a <= 0 and INF for a > 0.
    """

    name = "arctic"
    carrier_mode = "exact-rational"
    idempotent = True
    zero = NEG_INF
    one = Fraction(0)

    def add(self, a, b):
        if a is NEG_INF:
            return b
        if b is NEG_INF:
            return a
        if a is INF or b is INF:
            return INF
        return a if a >= b else b

    def mul(self, a, b):
        if a is NEG_INF or b is NEG_INF:
            return NEG_INF
        if a is INF or b is INF:
            return INF
        return a + b

    def star(self, a):
        if a is NEG_INF:
            return Fraction(0)
        if a is INF or a > 0:
            return INF
        return Fraction(0)

    def natural_leq(self, a, b):
        if a is NEG_INF or b is INF:
            return True
        if b is NEG_INF:
            return a is NEG_INF
        if a is INF:
            return False
        return a <= b

    def coerce(self, v):
        if v is INF or v is NEG_INF:
            return v
        if isinstance(v, bool):
            raise ValueError("bool is not an arctic weight")
        if isinstance(v, (int, Fraction)):
            return Fraction(v)
        raise ValueError("cannot use %r as an arctic weight" % (v,))

    def parse(self, text):
        t = text.strip()
        if t == "inf":
            return INF
        if t == "-inf":
            return NEG_INF
        return self.coerce(_parse_fraction(t))

    def format(self, v):
        if v is INF:
            return "inf"
        if v is NEG_INF:
            return "-inf"
        return str(v)

    def sort_key(self, v):
        if v is NEG_INF:
            return (-1, Fraction(0))
        if v is INF:
            return (1, Fraction(0))
        return (0, v)

    def sample_values(self):
        return [NEG_INF, Fraction(-1), Fraction(0), Fraction(2), INF]


class TruncationSemiring(Semiring):
    """({0..k}, min, k, clamped +, 0): distances saturating at horizon k.

    Note the ordering of the tuple: min is the sum with k as its unit, and
    the clamped addition min(a + b, k) is the product with unit 0.  Putting
    max first instead would break annihilation (min(0 + a, k) is a, not
    the zero), which is checked by the axiom suite.
    """

    name = "truncation"
    carrier_mode = "bounded-integer"
    idempotent = True

    def __init__(self, k):
        if not isinstance(k, int) or isinstance(k, bool) or k <= 0:
            raise ValueError("truncation bound k must be a positive integer")
        self.k = k
        self.zero = k
        self.one = 0

    def add(self, a, b):
        return a if a <= b else b

    def mul(self, a, b):
        s = a + b
        return s if s < self.k else self.k

    def star(self, a):
        return 0

    def natural_leq(self, a, b):
        return b <= a

    def coerce(self, v):
        if isinstance(v, int) and not isinstance(v, bool) and 0 <= v <= self.k:
            return v
        raise ValueError("truncation carrier is {0..%d}, got %r" % (self.k, v))

    def parse(self, text):
        t = text.strip()
        if not re.match(r"^[0-9]+$", t):
            raise ValueError("expected an integer in 0..%d, got %r" % (self.k, text))
        return self.coerce(int(t))

    def format(self, v):
        return str(v)

    def sort_key(self, v):
        return v

    def sample_values(self):
        vals = [0, 1, self.k // 2, self.k - 1, self.k]
        return sorted(set(vals))

    def params(self):
        return {"k": self.k}


class MaxTimesSemiring(Semiring):
    """([0,1], max, 0, *, 1): best-run probabilities."""

    name = "maxtimes"
    carrier_mode = "exact-rational"
    idempotent = True
    zero = Fraction(0)
    one = Fraction(1)

    def add(self, a, b):
        return a if a >= b else b

    def mul(self, a, b):
        return a * b

    def star(self, a):
        return Fraction(1)

    def natural_leq(self, a, b):
        return a <= b

    def coerce(self, v):
        if isinstance(v, bool):
            raise ValueError("bool is not a maxtimes weight")
        if isinstance(v, (int, Fraction)):
            v = Fraction(v)
            if not (0 <= v <= 1):
                raise ValueError("maxtimes carrier is [0,1], got %s" % v)
            return v
        raise ValueError("cannot use %r as a maxtimes weight" % (v,))

    def parse(self, text):
        return self.coerce(_parse_fraction(text.strip()))

    def format(self, v):
        return str(v)

    def sort_key(self, v):
        return v

    def sample_values(self):
        return [Fraction(0), Fraction(1, 3), Fraction(1, 2), Fraction(1)]


SEMIRING_NAMES = (
    "boolean",
    "real",
    "real-float",
    "tropical",
    "arctic",
    "truncation",
    "maxtimes",
)


def by_name(name, **params):
    """Instantiate a shipped semiring by name.

    ``truncation`` requires ``k`` (positive int); ``real-float`` accepts
    ``epsilon`` (default 1e-9).  Other instances take no parameters.
    """
    known = {
        "boolean": BooleanSemiring,
        "real": RealSemiring,
        "real-float": RealFloatSemiring,
        "tropical": TropicalSemiring,
        "arctic": ArcticSemiring,
        "truncation": TruncationSemiring,
        "maxtimes": MaxTimesSemiring,
    }
    if name not in known:
        raise ValueError(
            "unknown semiring %r (known: %s)" % (name, ", ".join(SEMIRING_NAMES))
        )
    cls = known[name]
    if name == "truncation":
        if "k" not in params:
            raise ValueError("truncation semiring needs parameter k")
        extra = set(params) - {"k"}
        if extra:
            raise ValueError("unexpected parameters %s for truncation" % sorted(extra))
        return cls(params["k"])
    if name == "real-float":
        extra = set(params) - {"epsilon"}
        if extra:
            raise ValueError("unexpected parameters %s for real-float" % sorted(extra))
        return cls(**params)
    if params:
        raise ValueError("semiring %r takes no parameters" % name)
    return cls()


# -- axiom checking -------------------------------------------------------


@dataclass
class AxiomCheck:
    law: str
    ok: bool
    witness: str | None = None


@dataclass
class AxiomReport:
    semiring: str
    checks: list[AxiomCheck] = field(default_factory=list)

    @property
    def ok(self):
        return all(c.ok for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c.ok]


def check_axioms(sr, samples=None):
    """Exercise the semiring laws over a finite sample set.

    Checks associativity/commutativity/identity of +, associativity and
    identity of *, both distributivities, annihilation by zero, the star
    fixed-point law, that zero is a bottom for the natural preorder, its
    reflexivity and transitivity, and (for instances that claim it)
    idempotence of +.  Returns an :class:`AxiomReport` with one entry per
    law carrying the first counterexample found, if any.
    """
    if samples is None:
        samples = sr.sample_values()
    samples = list(samples)
    if not samples:
        raise ValueError("need a nonempty sample set")
    eq = sr.values_equal
    f = sr.format
    report = AxiomReport(semiring=repr(sr))

    def law(name, pairs_of_sides):
        for witness, lhs, rhs in pairs_of_sides:
            if not eq(lhs, rhs):
                report.checks.append(
                    AxiomCheck(name, False, "%s: %s != %s" % (witness, f(lhs), f(rhs)))
                )
                return
        report.checks.append(AxiomCheck(name, True))

    def predicate(name, cases):
        for witness, holds in cases:
            if not holds:
                report.checks.append(AxiomCheck(name, False, witness))
                return
        report.checks.append(AxiomCheck(name, True))

    singles = samples
    pairs = [(a, b) for a in samples for b in samples]
    triples = [(a, b, c) for a in samples for b in samples for c in samples]

    law(
        "add-associative",
        (
            ("a=%s b=%s c=%s" % (f(a), f(b), f(c)),
             sr.add(sr.add(a, b), c), sr.add(a, sr.add(b, c)))
            for a, b, c in triples
        ),
    )
    law(
        "add-commutative",
        (("a=%s b=%s" % (f(a), f(b)), sr.add(a, b), sr.add(b, a)) for a, b in pairs),
    )
    law(
        "add-identity",
        (("a=%s" % f(a), sr.add(a, sr.zero), a) for a in singles),
    )
    law(
        "mul-associative",
        (
            ("a=%s b=%s c=%s" % (f(a), f(b), f(c)),
             sr.mul(sr.mul(a, b), c), sr.mul(a, sr.mul(b, c)))
            for a, b, c in triples
        ),
    )
    law(
        "mul-identity-left",
        (("a=%s" % f(a), sr.mul(sr.one, a), a) for a in singles),
    )
    law(
        "mul-identity-right",
        (("a=%s" % f(a), sr.mul(a, sr.one), a) for a in singles),
    )
    law(
        "distribute-left",
        (
            ("a=%s b=%s c=%s" % (f(a), f(b), f(c)),
             sr.mul(a, sr.add(b, c)), sr.add(sr.mul(a, b), sr.mul(a, c)))
            for a, b, c in triples
        ),
    )
    law(
        "distribute-right",
        (
            ("a=%s b=%s c=%s" % (f(a), f(b), f(c)),
             sr.mul(sr.add(a, b), c), sr.add(sr.mul(a, c), sr.mul(b, c)))
            for a, b, c in triples
        ),
    )
    law(
        "annihilate-left",
        (("a=%s" % f(a), sr.mul(sr.zero, a), sr.zero) for a in singles),
    )
    law(
        "annihilate-right",
        (("a=%s" % f(a), sr.mul(a, sr.zero), sr.zero) for a in singles),
    )
    law(
        "star-fixed-point",
        (
            ("a=%s" % f(a), sr.star(a), sr.add(sr.one, sr.mul(a, sr.star(a))))
            for a in singles
        ),
    )
    predicate(
        "zero-bottom",
        (("a=%s" % f(a), sr.natural_leq(sr.zero, a)) for a in singles),
    )
    predicate(
        "leq-reflexive",
        (("a=%s" % f(a), sr.natural_leq(a, a)) for a in singles),
    )
    predicate(
        "leq-transitive",
        (
            ("a=%s b=%s c=%s" % (f(a), f(b), f(c)),
             (not (sr.natural_leq(a, b) and sr.natural_leq(b, c)))
             or sr.natural_leq(a, c))
            for a, b, c in triples
        ),
    )
    if sr.idempotent:
        law(
            "add-idempotent",
            (("a=%s" % f(a), sr.add(a, a), a) for a in singles),
        )
    return report
