"""Exact multivariate Laurent polynomials with integer coefficients.

Terms are kept in a dict mapping exponent tuples (negative entries allowed)
to nonzero Python ints, so coefficients never overflow.  The graded
lexicographic order on exponent vectors fixes serialization and division.
"""

from __future__ import annotations

from typing import Iterable, Mapping


class NotDivisible(Exception):
    """Exact division failed; upstream this signals a broken Laurent identity."""


def _grlex_key(exps: tuple[int, ...]) -> tuple:
    return (sum(exps), exps)


class LaurentPoly:
    """A Laurent polynomial in a fixed number of variables.

    ``terms`` maps exponent tuples to nonzero integer coefficients.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[tuple[int, ...], int] | None = None):
        self.nvars = nvars
        t = {}
        if terms:
            for e, c in terms.items():
                if c:
                    t[tuple(e)] = c
        self.terms = t

    # ------------------------------------------------------------------
    # constructors

    @staticmethod
    def zero(nvars: int) -> "LaurentPoly":
        return LaurentPoly(nvars)

    @staticmethod
    def one(nvars: int) -> "LaurentPoly":
        return LaurentPoly(nvars, {(0,) * nvars: 1})

    @staticmethod
    def constant(nvars: int, c: int) -> "LaurentPoly":
        return LaurentPoly(nvars, {(0,) * nvars: c})

    @staticmethod
    def variable(nvars: int, i: int, power: int = 1) -> "LaurentPoly":
        e = [0] * nvars
        e[i] = power
        return LaurentPoly(nvars, {tuple(e): 1})

    @staticmethod
    def monomial(nvars: int, exps: Iterable[int], coeff: int = 1) -> "LaurentPoly":
        return LaurentPoly(nvars, {tuple(exps): coeff})

    # ------------------------------------------------------------------
    # basic structure

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return self.terms == {(0,) * self.nvars: 1}

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def _check(self, other: "LaurentPoly"):
        if self.nvars != other.nvars:
            raise ValueError(
                f"variable dimension mismatch: {self.nvars} vs {other.nvars}"
            )

    # ------------------------------------------------------------------
    # ring operations

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            nc = t.get(e, 0) + c
            if nc:
                t[e] = nc
            else:
                t.pop(e, None)
        out = LaurentPoly(self.nvars)
        out.terms = t
        return out

    def __neg__(self) -> "LaurentPoly":
        out = LaurentPoly(self.nvars)
        out.terms = {e: -c for e, c in self.terms.items()}
        return out

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check(other)
        t: dict[tuple[int, ...], int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                nc = t.get(e, 0) + c1 * c2
                if nc:
                    t[e] = nc
                else:
                    t.pop(e, None)
        out = LaurentPoly(self.nvars)
        out.terms = t
        return out

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            if not self.is_monomial():
                raise NotDivisible("negative power of a non-monomial")
            ((e, c),) = self.terms.items()
            if c * c != 1:
                raise NotDivisible("negative power with non-unit coefficient")
            return LaurentPoly(
                self.nvars, {tuple(a * k for a in e): c if k % 2 else 1}
            )
        out = LaurentPoly.one(self.nvars)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # ------------------------------------------------------------------
    # exact division (the Laurent-phenomenon workhorse)

    def _strip_content(self) -> tuple["LaurentPoly", tuple[int, ...]]:
        """Divide out the monomial gcd: min exponent becomes 0 per variable."""
        if not self.terms:
            return self, (0,) * self.nvars
        shift = tuple(
            -min(e[i] for e in self.terms) for i in range(self.nvars)
        )
        if not any(shift):
            return self, shift
        t = {tuple(a + s for a, s in zip(e, shift)): c for e, c in self.terms.items()}
        out = LaurentPoly(self.nvars)
        out.terms = t
        return out, shift

    def div_exact(self, other: "LaurentPoly") -> "LaurentPoly":
        """Return q with q * other == self, or raise NotDivisible.

        Works by leading-term elimination under graded lex after clearing
        denominators; never approximates.
        """
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero Laurent polynomial")
        if self.is_zero():
            return LaurentPoly.zero(self.nvars)
        f, fs = self._strip_content()
        g, gs = other._strip_content()
        quot: dict[tuple[int, ...], int] = {}
        g_lead = max(g.terms, key=_grlex_key)
        g_lc = g.terms[g_lead]
        rem = LaurentPoly(self.nvars)
        rem.terms = dict(f.terms)
        while rem.terms:
            lead = max(rem.terms, key=_grlex_key)
            lc = rem.terms[lead]
            qe = tuple(a - b for a, b in zip(lead, g_lead))
            if any(a < 0 for a in qe) or lc % g_lc != 0:
                raise NotDivisible("leading term not divisible")
            qc = lc // g_lc
            quot[qe] = qc
            for e, c in g.terms.items():
                ne = tuple(a + b for a, b in zip(e, qe))
                nc = rem.terms.get(ne, 0) - qc * c
                if nc:
                    rem.terms[ne] = nc
                else:
                    rem.terms.pop(ne, None)
        # undo the shifts: q = (f * x^fs') / (g * x^gs') * x^(gs - fs)
        adj = tuple(g - f for f, g in zip(fs, gs))
        out = LaurentPoly(self.nvars)
        out.terms = {tuple(a + b for a, b in zip(e, adj)): c for e, c in quot.items()}
        return out

    # ------------------------------------------------------------------
    # queries

    def denominator_vector(self) -> tuple[int, ...]:
        """Per-variable denominator exponents: max(0, -min exponent)."""
        if self.is_zero():
            raise ValueError("denominator vector of zero is undefined")
        return tuple(
            max(0, -min(e[i] for e in self.terms)) for i in range(self.nvars)
        )

    def has_positive_coeffs(self) -> bool:
        return all(c > 0 for c in self.terms.values())

    def evaluate(self, values: list) -> object:
        """Evaluate at nonzero values (ints or Fractions)."""
        from fractions import Fraction

        total = Fraction(0)
        for e, c in self.terms.items():
            term = Fraction(c)
            for v, a in zip(values, e):
                term *= Fraction(v) ** a
            total += term
        return total

    # ------------------------------------------------------------------
    # serialization

    def sorted_terms(self) -> list[tuple[tuple[int, ...], int]]:
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def to_text(self, var_names: list[str] | None = None) -> str:
        if self.is_zero():
            return "0"
        names = var_names or [f"x{i+1}" for i in range(self.nvars)]
        parts = []
        for e, c in self.sorted_terms():
            factors = []
            for name, a in zip(names, e):
                if a == 1:
                    factors.append(name)
                elif a != 0:
                    factors.append(f"{name}^{a}")
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def to_json(self, var_names: list[str] | None = None) -> dict:
        names = var_names or [f"x{i+1}" for i in range(self.nvars)]
        return {
            "vars": names,
            "terms": [
                {"coeff": str(c), "exps": list(e)} for e, c in self.sorted_terms()
            ],
        }

    @staticmethod
    def from_json(data: dict) -> "LaurentPoly":
        nvars = len(data["vars"])
        terms = {tuple(t["exps"]): int(t["coeff"]) for t in data["terms"]}
        return LaurentPoly(nvars, terms)

    def __repr__(self):
        return f"LaurentPoly({self.to_text()})"


def parse_ratio(num: LaurentPoly, den: LaurentPoly) -> LaurentPoly:
    """Convenience: num / den as an exact Laurent polynomial."""
    return num.div_exact(den)
