"""Exact sparse polynomials in two indexed variable families x1,x2,... and t1,t2,...

Coefficients are arbitrary-precision integers.  A monomial is a pair of
exponent tuples (x-block, t-block) with trailing zeros trimmed, so variable
indices are unbounded and monomials stay cheap to hash.  Values are immutable
after construction and every operation returns a new canonical polynomial
(no zero coefficients, no zero exponents stored).

The substitution-style operators of the calculus live here as functions:
the insertion maps ``r_shift`` (R^-_i / R^+_i and their depleted variants),
the divided difference, the trimming operator ``e_trim`` (E_i), evaluation
at a permutation or a depleted alphabet, and the Graham positivity test.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

Mono = tuple[tuple[int, ...], tuple[int, ...]]
VarRef = tuple[str, int]  # ("x", i) or ("t", i), 1-based


def _trim(vec: Iterable[int]) -> tuple[int, ...]:
    out = list(vec)
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def _vec_add(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for k, e in enumerate(b):
        out[k] += e
    return tuple(out)


def _sort_key(mono: Mono):
    # graded lexicographic, x-block before t-block, lower indices more
    # significant, higher exponents first: gives a stable printed order.
    xv, tv = mono
    return (-(sum(xv) + sum(tv)), tuple(-e for e in xv), tuple(-e for e in tv))


class ExactPolynomial:
    """Sparse integer polynomial in Z[t1,t2,...][x1,x2,...]."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Mono, int] | None = None, _canonical: bool = False):
        if terms is None:
            self._terms: dict[Mono, int] = {}
        elif _canonical:
            self._terms = dict(terms)
        else:
            clean: dict[Mono, int] = {}
            for (xv, tv), c in terms.items():
                if c:
                    clean[(_trim(xv), _trim(tv))] = clean.get((_trim(xv), _trim(tv)), 0) + c
            self._terms = {m: c for m, c in clean.items() if c}

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> "ExactPolynomial":
        return ExactPolynomial()

    @staticmethod
    def integer(c: int) -> "ExactPolynomial":
        return ExactPolynomial({((), ()): int(c)})

    @staticmethod
    def one() -> "ExactPolynomial":
        return ExactPolynomial.integer(1)

    @staticmethod
    def x(i: int) -> "ExactPolynomial":
        if i < 1:
            raise ValueError("variable indices are 1-based")
        return ExactPolynomial({((0,) * (i - 1) + (1,), ()): 1})

    @staticmethod
    def t(i: int) -> "ExactPolynomial":
        if i < 1:
            raise ValueError("variable indices are 1-based")
        return ExactPolynomial({((), (0,) * (i - 1) + (1,)): 1})

    # -- basic structure ----------------------------------------------------

    def items(self) -> Iterator[tuple[Mono, int]]:
        """Terms in the canonical order (graded lex, see module docstring)."""
        return iter(sorted(self._terms.items(), key=lambda kv: _sort_key(kv[0])))

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self._terms == ExactPolynomial.integer(other)._terms
        if not isinstance(other, ExactPolynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def total_degree(self) -> int:
        return max((sum(xv) + sum(tv) for (xv, tv) in self._terms), default=0)

    def max_x_index(self) -> int:
        return max((len(xv) for (xv, _) in self._terms), default=0)

    def max_t_index(self) -> int:
        return max((len(tv) for (_, tv) in self._terms), default=0)

    def is_x_free(self) -> bool:
        return self.max_x_index() == 0

    def constant_term(self) -> int:
        return self._terms.get(((), ()), 0)

    # -- ring arithmetic ----------------------------------------------------

    def __add__(self, other) -> "ExactPolynomial":
        other = _coerce(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return ExactPolynomial(out, _canonical=True)

    __radd__ = __add__

    def __neg__(self) -> "ExactPolynomial":
        return ExactPolynomial({m: -c for m, c in self._terms.items()}, _canonical=True)

    def __sub__(self, other) -> "ExactPolynomial":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "ExactPolynomial":
        return _coerce(other) - self

    def __mul__(self, other) -> "ExactPolynomial":
        other = _coerce(other)
        if not self._terms or not other._terms:
            return ExactPolynomial.zero()
        out: dict[Mono, int] = {}
        for (xa, ta), ca in self._terms.items():
            for (xb, tb), cb in other._terms.items():
                m = (_vec_add(xa, xb), _vec_add(ta, tb))
                s = out.get(m, 0) + ca * cb
                if s:
                    out[m] = s
                else:
                    del out[m]
        return ExactPolynomial(out, _canonical=True)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "ExactPolynomial":
        if n < 0:
            raise ValueError("negative powers are not defined here")
        out = ExactPolynomial.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- substitution -------------------------------------------------------

    def substitute_variables(self, xmap: Mapping[int, VarRef] | None = None,
                             tmap: Mapping[int, VarRef] | None = None) -> "ExactPolynomial":
        """Relabel variables; each map sends an index to ("x"|"t", index)."""
        xmap = xmap or {}
        tmap = tmap or {}
        out: dict[Mono, int] = {}
        for (xv, tv), c in self._terms.items():
            xd: dict[int, int] = {}
            td: dict[int, int] = {}
            for i, e in enumerate(xv, 1):
                if e:
                    fam, j = xmap.get(i, ("x", i))
                    (xd if fam == "x" else td)[j] = (xd if fam == "x" else td).get(j, 0) + e
            for i, e in enumerate(tv, 1):
                if e:
                    fam, j = tmap.get(i, ("t", i))
                    (xd if fam == "x" else td)[j] = (xd if fam == "x" else td).get(j, 0) + e
            m = (_dict_to_vec(xd), _dict_to_vec(td))
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                del out[m]
        return ExactPolynomial(out, _canonical=True)

    def substitute_polynomials(self, xmap: Mapping[int, "ExactPolynomial"] | None = None,
                               tmap: Mapping[int, "ExactPolynomial"] | None = None) -> "ExactPolynomial":
        """Substitute whole polynomials for variables (unmapped ones stay)."""
        xmap = xmap or {}
        tmap = tmap or {}
        power_cache: dict[tuple[str, int, int], ExactPolynomial] = {}

        def img_power(fam: str, i: int, e: int) -> ExactPolynomial:
            key = (fam, i, e)
            if key not in power_cache:
                base = (xmap if fam == "x" else tmap).get(i)
                if base is None:
                    base = ExactPolynomial.x(i) if fam == "x" else ExactPolynomial.t(i)
                power_cache[key] = base ** e
            return power_cache[key]

        total = ExactPolynomial.zero()
        for (xv, tv), c in self._terms.items():
            piece = ExactPolynomial.integer(c)
            for i, e in enumerate(xv, 1):
                if e:
                    piece = piece * img_power("x", i, e)
            for i, e in enumerate(tv, 1):
                if e:
                    piece = piece * img_power("t", i, e)
            total = total + piece
        return total

    # -- text and JSON codecs -----------------------------------------------

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts: list[str] = []
        for (xv, tv), c in self.items():
            factors = [f"x{i}" + (f"^{e}" if e > 1 else "")
                       for i, e in enumerate(xv, 1) if e]
            factors += [f"t{i}" + (f"^{e}" if e > 1 else "")
                        for i, e in enumerate(tv, 1) if e]
            mag = abs(c)
            if factors:
                body = "*".join(factors)
                if mag != 1:
                    body = f"{mag}*{body}"
            else:
                body = str(mag)
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    __repr__ = __str__

    @staticmethod
    def parse(text: str) -> "ExactPolynomial":
        return _Parser(text).parse()

    def to_json(self) -> list[dict]:
        return [
            {"coeff": c,
             "xexp": {str(i): e for i, e in enumerate(xv, 1) if e},
             "texp": {str(i): e for i, e in enumerate(tv, 1) if e}}
            for (xv, tv), c in self.items()
        ]

    @staticmethod
    def from_json(data: list[dict]) -> "ExactPolynomial":
        terms: dict[Mono, int] = {}
        for entry in data:
            xd = {int(k): int(v) for k, v in entry.get("xexp", {}).items()}
            td = {int(k): int(v) for k, v in entry.get("texp", {}).items()}
            m = (_dict_to_vec(xd), _dict_to_vec(td))
            terms[m] = terms.get(m, 0) + int(entry["coeff"])
        return ExactPolynomial(terms)


def _coerce(value) -> ExactPolynomial:
    if isinstance(value, ExactPolynomial):
        return value
    if isinstance(value, int):
        return ExactPolynomial.integer(value)
    raise TypeError(f"cannot coerce {value!r} to ExactPolynomial")


def _dict_to_vec(d: Mapping[int, int]) -> tuple[int, ...]:
    if not d:
        return ()
    n = max(d)
    return _trim(d.get(i, 0) for i in range(1, n + 1))


class _Parser:
    """Recursive-descent parser for the text grammar.

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor (['*'] factor)*
    factor := INT | x<INT> | t<INT> | '(' expr ')' , optionally '^' INT
    """

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def parse(self) -> ExactPolynomial:
        value = self._expr()
        self._skip_ws()
        if self.pos != len(self.text):
            raise ValueError(f"trailing input at position {self.pos}: {self.text[self.pos:]!r}")
        return value

    def _skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _peek(self) -> str:
        self._skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def _expr(self) -> ExactPolynomial:
        sign = 1
        if self._peek() and self._peek() in "+-":
            sign = -1 if self.text[self.pos] == "-" else 1
            self.pos += 1
        value = self._term() * sign
        while self._peek() and self._peek() in "+-":
            op = self.text[self.pos]
            self.pos += 1
            rhs = self._term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def _term(self) -> ExactPolynomial:
        value = self._factor()
        while True:
            ch = self._peek()
            if ch == "*":
                self.pos += 1
                value = value * self._factor()
            elif ch and (ch.isdigit() or ch in "xt("):
                value = value * self._factor()
            else:
                return value

    def _factor(self) -> ExactPolynomial:
        ch = self._peek()
        if ch == "(":
            self.pos += 1
            value = self._expr()
            if self._peek() != ")":
                raise ValueError("unbalanced parenthesis")
            self.pos += 1
        elif ch.isdigit():
            value = ExactPolynomial.integer(self._int())
        elif ch and ch in "xt":
            fam = ch
            self.pos += 1
            idx = self._int()
            value = ExactPolynomial.x(idx) if fam == "x" else ExactPolynomial.t(idx)
        else:
            raise ValueError(f"unexpected character {ch!r} at position {self.pos}")
        if self._peek() == "^":
            self.pos += 1
            value = value ** self._int()
        return value

    def _int(self) -> int:
        self._skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise ValueError(f"expected integer at position {start}")
        return int(self.text[start:self.pos])


# ---------------------------------------------------------------------------
# depleted alphabets
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DepletedAlphabet:
    """A finite set A of removed t-indices.

    The i-th depleted variable t_{i,A} is t at the i-th element of N \\ A in
    increasing order, so the empty alphabet leaves indices untouched.
    """

    removed: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "removed", frozenset(int(a) for a in self.removed))
        if any(a < 1 for a in self.removed):
            raise ValueError("removed indices must be positive")

    def variable_index(self, i: int) -> int:
        """Index of t_{i,A} in the ambient t alphabet (i-th element of N \\ A)."""
        if i < 1:
            raise ValueError("depleted positions are 1-based")
        k = 0
        j = 0
        while True:
            j += 1
            if j not in self.removed:
                k += 1
                if k == i:
                    return j

    def relabel(self, f: ExactPolynomial) -> ExactPolynomial:
        """Send t_i -> t_{i,A} throughout f (x variables untouched)."""
        tmap = {i: ("t", self.variable_index(i)) for i in range(1, f.max_t_index() + 1)}
        return f.substitute_variables(tmap=tmap)

    def __str__(self) -> str:
        return "{" + ",".join(str(a) for a in sorted(self.removed)) + "}"


def _alphabet(A) -> DepletedAlphabet:
    if A is None:
        return DepletedAlphabet()
    if isinstance(A, DepletedAlphabet):
        return A
    return DepletedAlphabet(frozenset(A))


# ---------------------------------------------------------------------------
# operators
# ---------------------------------------------------------------------------

def arith(a: ExactPolynomial, b: ExactPolynomial, op: str) -> ExactPolynomial:
    """Ring arithmetic dispatch: op is one of add / sub / mul."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def r_shift(f: ExactPolynomial, i: int, sign: str, A=None) -> ExactPolynomial:
    """Variable-insertion maps R^-_{i,A} and R^+_{i,A}.

    minus: x_i <- t_{i,A} and x_j <- x_{j-1} for j > i.
    plus:  x_{i+1} <- t_{i,A} and x_j <- x_{j-1} for j > i+1.
    """
    if i < 1:
        raise ValueError("index must be positive")
    alpha = _alphabet(A)
    tia = alpha.variable_index(i)
    m = f.max_x_index()
    if sign == "minus":
        xmap: dict[int, VarRef] = {i: ("t", tia)}
        xmap.update({j: ("x", j - 1) for j in range(i + 1, m + 1)})
    elif sign == "plus":
        xmap = {i + 1: ("t", tia)}
        xmap.update({j: ("x", j - 1) for j in range(i + 2, m + 1)})
    else:
        raise ValueError("sign must be 'minus' or 'plus'")
    return f.substitute_variables(xmap=xmap)


def _divide_by_linear(f: ExactPolynomial, u: VarRef, v: VarRef) -> ExactPolynomial:
    """Exact division f / (u - v) for distinct variables u, v.

    Synthetic division: with f = sum_k g_k u^k (g_k free of u),
    the quotient is sum_k g_k (u^{k-1} + u^{k-2} v + ... + v^{k-1}) and the
    remainder is f at u = v, which must vanish.
    """
    (ufam, ui), (vfam, vi) = u, v
    remainder = f.substitute_variables(
        xmap={ui: v} if ufam == "x" else None,
        tmap={ui: v} if ufam == "t" else None,
    )
    assert remainder.is_zero(), "inexact division by linear factor"

    out: dict[Mono, int] = {}
    for (xv, tv), c in f._terms.items():
        uvec = xv if ufam == "x" else tv
        k = uvec[ui - 1] if ui <= len(uvec) else 0
        if k == 0:
            continue
        # strip u^k from the monomial
        if ufam == "x":
            base_x = list(xv)
            base_x[ui - 1] = 0
            base = (_trim(base_x), tv)
        else:
            base_t = list(tv)
            base_t[ui - 1] = 0
            base = (xv, _trim(base_t))
        for a in range(k):
            b = k - 1 - a
            xd = list(base[0])
            td = list(base[1])
            for fam, idx, e in ((ufam, ui, a), (vfam, vi, b)):
                if not e:
                    continue
                vec = xd if fam == "x" else td
                while len(vec) < idx:
                    vec.append(0)
                vec[idx - 1] += e
            m = (_trim(xd), _trim(td))
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                del out[m]
    return ExactPolynomial(out, _canonical=True)


def divided_difference(f: ExactPolynomial, i: int) -> ExactPolynomial:
    """Newton divided difference (f - s_i.f) / (x_i - x_{i+1})."""
    swapped = f.substitute_variables(xmap={i: ("x", i + 1), i + 1: ("x", i)})
    return _divide_by_linear(f - swapped, ("x", i), ("x", i + 1))


def e_trim(f: ExactPolynomial, i: int, A=None) -> ExactPolynomial:
    """Trimming operator E_{i,A} = (R^+_{i,A} - R^-_{i,A}) / (x_i - t_{i,A})."""
    alpha = _alphabet(A)
    diff = r_shift(f, i, "plus", alpha) - r_shift(f, i, "minus", alpha)
    return _divide_by_linear(diff, ("x", i), ("t", alpha.variable_index(i)))


def evaluate(f: ExactPolynomial, assignment) -> ExactPolynomial:
    """Evaluate the x variables at t's.

    ``assignment`` is either a DepletedAlphabet A (x_i <- t_{i,A}), a
    permutation-like object with .apply(i) or .one_line, or a plain one-line
    sequence (x_i <- t_{sigma(i)}, fixed beyond its length).
    """
    m = f.max_x_index()
    if isinstance(assignment, DepletedAlphabet) or isinstance(assignment, (set, frozenset)):
        alpha = _alphabet(assignment)
        xmap = {i: ("t", alpha.variable_index(i)) for i in range(1, m + 1)}
    else:
        if hasattr(assignment, "apply"):
            image = assignment.apply
        else:
            one_line = tuple(assignment.one_line) if hasattr(assignment, "one_line") else tuple(assignment)
            image = lambda i: one_line[i - 1] if i <= len(one_line) else i
        xmap = {i: ("t", image(i)) for i in range(1, m + 1)}
    return f.substitute_variables(xmap=xmap)


def specialize_t_zero(f: ExactPolynomial) -> ExactPolynomial:
    """Set every t variable to zero."""
    return ExactPolynomial({(xv, tv): c for (xv, tv), c in f._terms.items() if not tv},
                           _canonical=True)


@dataclass(frozen=True)
class GrahamCertificate:
    """Expansion of an x-free polynomial over t1 and d_i = t_{i+1} - t_i.

    Internally ``expansion`` reuses ExactPolynomial storage with x1 standing
    for t1 and t_i standing for d_i; positivity means: no t1 (no x part) and
    all integer coefficients nonnegative.
    """

    expansion: ExactPolynomial

    @property
    def positive(self) -> bool:
        return self.expansion.is_x_free() and all(c > 0 for _, c in self.expansion.items())

    def __str__(self) -> str:
        return self.pretty()

    def pretty(self) -> str:
        parts = []
        for (xv, tv), c in self.expansion.items():
            factors = [f"t1^{e}" if e > 1 else "t1" for e in xv[:1] if e]
            factors += [f"d{i}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(tv, 1) if e]
            mag = abs(c)
            body = "*".join(factors) if factors else str(mag)
            if factors and mag != 1:
                body = f"{mag}*{body}"
            parts.append((("+ " if c > 0 else "- ") if parts else ("" if c > 0 else "-")) + body)
        return " ".join(parts) if parts else "0"


def graham_positive(f: ExactPolynomial) -> tuple[bool, GrahamCertificate]:
    """Test membership in Z>=0[t2-t1, t3-t2, ...] for an x-free polynomial.

    Substitutes t_i = t1 + (d_1 + ... + d_{i-1}); the result must not involve
    t1 and must have nonnegative coefficients.  The certificate carries the
    d-expansion either way.
    """
    if not f.is_x_free():
        raise ValueError("graham_positive is defined for x-free polynomials only")
    tmap: dict[int, ExactPolynomial] = {}
    for i in range(1, f.max_t_index() + 1):
        image = ExactPolynomial.x(1)  # stands for t1
        for m in range(1, i):
            image = image + ExactPolynomial.t(m)  # t_m stands for d_m
        tmap[i] = image
    expansion = f.substitute_polynomials(tmap=tmap)
    cert = GrahamCertificate(expansion)
    return cert.positive, cert


def is_equivariantly_quasisymmetric(f: ExactPolynomial, n: int) -> bool:
    """True iff R^+_i f = R^-_i f for all 1 <= i < n."""
    if f.max_x_index() > n:
        raise ValueError(f"f involves x-index {f.max_x_index()} > n = {n}")
    return all(r_shift(f, i, "plus") == r_shift(f, i, "minus") for i in range(1, n))
