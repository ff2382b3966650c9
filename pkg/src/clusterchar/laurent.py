"""Exact sparse Laurent polynomials over the integers.

A monomial is a sorted tuple of ``(variable id, exponent)`` pairs with no
zero exponents; a polynomial maps monomials to nonzero integer coefficients.
All arithmetic is exact (Python big ints), values are immutable after
construction, and every operation returns canonical sparse form.  This module
is the substrate for cluster variables and q-characters alike.

Variable ids are interned through a process-wide registry mapping display
names (``"x1"``, ``"f2"``, ``"Y[1,0]"``, ...) to opaque integers.  The
registry is append-only behind a lock, so polynomials can safely be shared
between threads.
"""

from __future__ import annotations

import json
import re
import threading
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Tuple


class LaurentError(Exception):
    """Base class for errors raised by this module."""


class NonInvertibleImage(LaurentError):
    """A negative power must be applied to a non-unit substitution image."""


class ZeroToNegativePower(LaurentError):
    """Evaluation hit 0 raised to a negative exponent."""


class NonIntegralResult(LaurentError):
    """An integer was demanded but the exact value has a denominator."""


class NonExactDivision(LaurentError):
    """Laurent division left a remainder (signals a caller bug)."""


# --------------------------------------------------------------------------
# variable registry

_lock = threading.Lock()
_name_to_id: Dict[str, int] = {}
_id_to_name: list = []


def var(name: str) -> int:
    """Return the id for ``name``, registering it on first use."""
    vid = _name_to_id.get(name)
    if vid is not None:
        return vid
    with _lock:
        vid = _name_to_id.get(name)
        if vid is None:
            vid = len(_id_to_name)
            _id_to_name.append(name)
            _name_to_id[name] = vid
        return vid


def var_name(vid: int) -> str:
    return _id_to_name[vid]


# --------------------------------------------------------------------------
# monomials

# Monomial = tuple of (vid, exponent) sorted by vid, exponents nonzero.
Monomial = Tuple[Tuple[int, int], ...]

ONE_MONO: Monomial = ()


def mono(d: Mapping[int, int]) -> Monomial:
    return tuple(sorted((v, e) for v, e in d.items() if e != 0))


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        n = d.get(v, 0) + e
        if n:
            d[v] = n
        else:
            del d[v]
    return tuple(sorted(d.items()))


def mono_pow(m: Monomial, k: int) -> Monomial:
    if k == 0:
        return ONE_MONO
    return tuple((v, e * k) for v, e in m)


def mono_inv(m: Monomial) -> Monomial:
    return tuple((v, -e) for v, e in m)


class LaurentPoly:
    """Immutable sparse Laurent polynomial with integer coefficients."""

    __slots__ = ("terms", "_key", "_hash")

    def __init__(self, terms: Mapping[Monomial, int]):
        self.terms = {m: c for m, c in terms.items() if c != 0}
        self._key = None
        self._hash = None

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> "LaurentPoly":
        return _ZERO

    @staticmethod
    def one() -> "LaurentPoly":
        return _ONE

    @staticmethod
    def const(c: int) -> "LaurentPoly":
        return LaurentPoly({ONE_MONO: c})

    @staticmethod
    def variable(name_or_id) -> "LaurentPoly":
        vid = var(name_or_id) if isinstance(name_or_id, str) else name_or_id
        return LaurentPoly({((vid, 1),): 1})

    @staticmethod
    def monomial(m: Monomial, coeff: int = 1) -> "LaurentPoly":
        return LaurentPoly({m: coeff})

    # -- canonical key, equality, hashing -----------------------------------

    def key(self):
        """Deterministic canonical form: terms sorted by (VarId, exponent)."""
        if self._key is None:
            self._key = tuple(sorted(self.terms.items()))
        return self._key

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.key())
        return self._hash

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return self.terms == {ONE_MONO: 1}

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_unit(self) -> bool:
        """True when invertible in Z[x^{+-}]: a single term with coefficient +-1."""
        if len(self.terms) != 1:
            return False
        return next(iter(self.terms.values())) in (1, -1)

    def num_terms(self) -> int:
        return len(self.terms)

    def variables(self) -> set:
        out = set()
        for m in self.terms:
            for v, _ in m:
                out.add(v)
        return out

    # -- ring operations -----------------------------------------------------

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not self.terms:
            return other
        if not other.terms:
            return self
        out = dict(self.terms)
        for m, c in other.terms.items():
            n = out.get(m, 0) + c
            if n:
                out[m] = n
            else:
                del out[m]
        return LaurentPoly(out)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not other.terms:
            return self
        out = dict(self.terms)
        for m, c in other.terms.items():
            n = out.get(m, 0) - c
            if n:
                out[m] = n
            else:
                del out[m]
        return LaurentPoly(out)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not self.terms or not other.terms:
            return _ZERO
        if other.is_one():
            return self
        if self.is_one():
            return other
        # iterate the smaller factor outside
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        out: Dict[Monomial, int] = {}
        for ma, ca in a.items():
            for mb, cb in b.items():
                m = mono_mul(ma, mb)
                n = out.get(m, 0) + ca * cb
                if n:
                    out[m] = n
                else:
                    del out[m]
        return LaurentPoly(out)

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            if not self.is_unit():
                raise NonInvertibleImage(
                    "negative power of a non-unit Laurent polynomial")
            m, c = next(iter(self.terms.items()))
            return LaurentPoly({mono_pow(m, k): 1 if c == 1 or k % 2 == 0 else -1})
        result = _ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def scale(self, c: int) -> "LaurentPoly":
        if c == 0:
            return _ZERO
        return LaurentPoly({m: c * cm for m, cm in self.terms.items()})

    def mul_monomial(self, m: Monomial, coeff: int = 1) -> "LaurentPoly":
        return LaurentPoly({mono_mul(mm, m): c * coeff
                            for mm, c in self.terms.items()})

    # -- division ------------------------------------------------------------

    def divide_exact(self, divisor: "LaurentPoly") -> "LaurentPoly":
        """Exact quotient self / divisor; raises NonExactDivision otherwise.

        Laurent monomial shifts are units, so both operands are first shifted
        into honest polynomials and reduced by lexicographic leading-term
        cancellation.  Exactness forces every step to succeed.
        """
        if divisor.is_zero():
            raise NonExactDivision("division by zero")
        if self.is_zero():
            return _ZERO
        if divisor.is_monomial():
            (dm, dc), = divisor.terms.items()
            inv = mono_inv(dm)
            out = {}
            for m, c in self.terms.items():
                q, r = divmod(c, dc)
                if r:
                    raise NonExactDivision("coefficient not divisible")
                out[mono_mul(m, inv)] = q
            return LaurentPoly(out)

        vids = sorted(self.variables() | divisor.variables())
        index = {v: i for i, v in enumerate(vids)}
        nv = len(vids)

        def dense(p: "LaurentPoly"):
            rows = {}
            for m, c in p.terms.items():
                e = [0] * nv
                for v, ex in m:
                    e[index[v]] = ex
                rows[tuple(e)] = c
            return rows

        a = dense(self)
        b = dense(divisor)
        # shift both into the polynomial cone
        shift_a = [min(e[i] for e in a) for i in range(nv)]
        shift_b = [min(e[i] for e in b) for i in range(nv)]
        a = {tuple(x - s for x, s in zip(e, shift_a)): c for e, c in a.items()}
        b = {tuple(x - s for x, s in zip(e, shift_b)): c for e, c in b.items()}
        lead_b = max(b)
        cb = b[lead_b]
        quo: Dict[Tuple[int, ...], int] = {}
        while a:
            lead_a = max(a)
            ca = a[lead_a]
            diff = tuple(x - y for x, y in zip(lead_a, lead_b))
            if any(x < 0 for x in diff):
                raise NonExactDivision("leading monomial not divisible")
            q, r = divmod(ca, cb)
            if r:
                raise NonExactDivision("leading coefficient not divisible")
            quo[diff] = q
            for e, c in b.items():
                m = tuple(x + y for x, y in zip(e, diff))
                n = a.get(m, 0) - q * c
                if n:
                    a[m] = n
                else:
                    a.pop(m, None)
        # undo the shifts: quotient exponents adjust by shift_a - shift_b
        adj = [x - y for x, y in zip(shift_a, shift_b)]
        out = {}
        for e, c in quo.items():
            m = tuple((vids[i], e[i] + adj[i]) for i in range(nv)
                      if e[i] + adj[i] != 0)
            out[m] = c
        return LaurentPoly(out)

    # -- substitution and evaluation ------------------------------------------

    def substitute(self, assignment: Mapping[int, "LaurentPoly"]) -> "LaurentPoly":
        """Exact composition; unassigned variables pass through.

        A variable appearing with a negative exponent must be sent to a unit
        (single monomial with coefficient +-1), else NonInvertibleImage.
        """
        if not assignment:
            return self
        out = _ZERO
        pow_cache: Dict[Tuple[int, int], LaurentPoly] = {}
        for m, c in self.terms.items():
            term = LaurentPoly({ONE_MONO: c})
            for v, e in m:
                img = assignment.get(v)
                if img is None:
                    term = term.mul_monomial(((v, e),))
                    continue
                key = (v, e)
                p = pow_cache.get(key)
                if p is None:
                    if e < 0 and not img.is_unit():
                        raise NonInvertibleImage(
                            f"variable {var_name(v)} has negative exponent but "
                            "a non-unit image")
                    p = img ** e
                    pow_cache[key] = p
                term = term * p
            out = out + term
        return out

    def evaluate_exact(self, point: Mapping[int, object]) -> Fraction:
        """Exact rational value of the polynomial at an integer/rational point.

        All variables must be assigned; 0 under a negative exponent raises.
        """
        total = Fraction(0)
        for m, c in self.terms.items():
            term = Fraction(c)
            for v, e in m:
                if v not in point:
                    raise LaurentError(f"unassigned variable {var_name(v)}")
                x = Fraction(point[v])
                if x == 0 and e < 0:
                    raise ZeroToNegativePower(var_name(v))
                term *= x ** e
            total += term
        return total

    def evaluate_int(self, point: Mapping[int, object]) -> int:
        val = self.evaluate_exact(point)
        if val.denominator != 1:
            raise NonIntegralResult(str(val))
        return val.numerator

    # -- structure queries -----------------------------------------------------

    def min_exponent(self, vid: int) -> int:
        """Smallest exponent of ``vid`` over all terms (0 if absent everywhere)."""
        best = None
        for m in self.terms:
            e = 0
            for v, ex in m:
                if v == vid:
                    e = ex
                    break
            best = e if best is None else min(best, e)
        return 0 if best is None else best

    def denominator_vector(self, vids: Iterable[int]) -> Tuple[int, ...]:
        """Per-variable denominator exponents: minus the minimal exponent."""
        return tuple(-self.min_exponent(v) for v in vids)

    def has_positive_coeffs(self) -> bool:
        return all(c > 0 for c in self.terms.values())

    # -- serialization ----------------------------------------------------------

    def text(self) -> str:
        """Canonical text form, e.g. ``3*x1^2*f2^-1 + x1 - 2``."""
        if not self.terms:
            return "0"
        parts = []
        for m, c in sorted(self.terms.items()):
            factors = [f"{var_name(v)}^{e}" if e != 1 else var_name(v)
                       for v, e in m]
            body = "*".join(factors)
            mag = abs(c)
            if not body:
                s = str(mag)
            elif mag == 1:
                s = body
            else:
                s = f"{mag}*{body}"
            parts.append(("- " if c < 0 else "+ ") + s)
        first = parts[0]
        head = ("-" + first[2:]) if first.startswith("- ") else first[2:]
        return " ".join([head] + parts[1:])

    @staticmethod
    def parse(text: str) -> "LaurentPoly":
        """Inverse of :meth:`text` (also accepts ``**`` and omitted ``*``)."""
        text = text.strip()
        if text in ("", "0"):
            return _ZERO
        chunks = re.split(r"(?<!\^)(?=[+-])(?![^\[]*\])", text.replace(" ", ""))
        out = _ZERO
        for chunk in chunks:
            if not chunk:
                continue
            sign = 1
            while chunk and chunk[0] in "+-":
                if chunk[0] == "-":
                    sign = -sign
                chunk = chunk[1:]
            coeff = sign
            monod: Dict[int, int] = {}
            for factor in chunk.split("*"):
                if not factor:
                    continue
                fm = re.fullmatch(r"(\d+)", factor)
                if fm:
                    coeff *= int(fm.group(1))
                    continue
                fm = re.fullmatch(
                    r"([A-Za-z_][A-Za-z_0-9\[\],\-]*?)(?:\^(-?\d+))?", factor)
                if not fm:
                    raise LaurentError(f"cannot parse factor {factor!r}")
                v = var(fm.group(1))
                e = int(fm.group(2)) if fm.group(2) else 1
                monod[v] = monod.get(v, 0) + e
            out = out + LaurentPoly({mono(monod): coeff})
        return out

    def to_json(self) -> dict:
        """JSON form with coefficients as decimal strings."""
        return {
            "terms": [
                {"coeff": str(c), "mono": {var_name(v): e for v, e in m}}
                for m, c in sorted(self.terms.items())
            ]
        }

    @staticmethod
    def from_json(data: dict) -> "LaurentPoly":
        out: Dict[Monomial, int] = {}
        for t in data["terms"]:
            m = mono({var(name): e for name, e in t["mono"].items()})
            out[m] = out.get(m, 0) + int(t["coeff"])
        return LaurentPoly(out)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))

    def __repr__(self):
        return f"LaurentPoly({self.text()})"


_ZERO = LaurentPoly({})
_ONE = LaurentPoly({ONE_MONO: 1})


def arith(a: LaurentPoly, b: LaurentPoly, op: str) -> LaurentPoly:
    """Spec-facing dispatcher for {add|sub|mul}."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise LaurentError(f"unknown op {op!r}")
