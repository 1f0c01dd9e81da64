"""Exact symbolic machinery: multivariate polynomials and truncated series.

Everything here is exact: coefficients are integers or ``Fraction``s, and
no floating point is used anywhere.  Two layers are provided:

- :class:`MultiPoly`, a sparse multivariate polynomial over scalar
  variables (u, r, s, t, x, y, p, q, ...) and indexed variable families
  (X_0, X_1, ..., Y_0, ..., Z_0, ..., plus the primed families used by
  word weights);
- :class:`TruncatedSeries`, a power series in one grading variable
  truncated at a fixed order, whose coefficients are ``MultiPoly``
  values (or plain integers).  Supports +, -, *, division by a series
  of nonzero valuation, square roots of series with constant term 1,
  integer powers, and substitution of series for the grading variable
  and for scalar variables.

On top of these sit the linear operator ``rho`` (collapsing X/Y/Z
monomials to powers of s by counting effective indices), the expansion
of the slot generating functions S_m(u), the right-hand side of the
decrease-value identity, and a catalog of named closed forms
(:data:`CATALOG_IDS`) that expand to exact series.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Callable, Mapping, Sequence

SCALARS = ("u", "r", "s", "t", "x", "y", "p", "q")

# A variable key is (name, index); scalar variables use index -1.
VarKey = tuple[str, int]
# A monomial is a tuple of (VarKey, positive exponent) pairs sorted by key.
Monomial = tuple[tuple[VarKey, int], ...]

_PRINT_NAMES = {"Yp": "Y'", "Tp": "T'"}


def scalar(name: str) -> VarKey:
    return (name, -1)


def _is_number(value: object) -> bool:
    return isinstance(value, (int, Fraction))


def _normalize_coeff(value: Fraction | int) -> Fraction | int:
    if isinstance(value, Fraction) and value.denominator == 1:
        return int(value)
    return value


def _var_print_order(vk: VarKey) -> tuple:
    name, idx = vk
    if idx < 0:
        rank = SCALARS.index(name) if name in SCALARS else len(SCALARS)
        return (0, rank, name, 0)
    return (1, 0, name, idx)


def _mono_degree(mono: Monomial) -> int:
    return sum(e for _, e in mono)


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    exps: dict[VarKey, int] = dict(a)
    for vk, e in b:
        exps[vk] = exps.get(vk, 0) + e
    return tuple(sorted(exps.items()))


class MultiPoly:
    """Sparse exact multivariate polynomial; zero coefficients are dropped."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, Fraction | int] | None = None):
        clean: dict[Monomial, Fraction | int] = {}
        if terms:
            for mono, coeff in terms.items():
                coeff = _normalize_coeff(Fraction(coeff) if not _is_number(coeff) else coeff)
                if coeff:
                    clean[mono] = coeff
        self.terms = clean

    # -- constructors -------------------------------------------------

    @classmethod
    def from_scalar(cls, value: Fraction | int) -> "MultiPoly":
        return cls({(): value} if value else {})

    @classmethod
    def var(cls, name: str, index: int = -1, exp: int = 1) -> "MultiPoly":
        return cls({(((name, index), exp),): 1})

    @staticmethod
    def coerce(value: "MultiPoly | Fraction | int") -> "MultiPoly":
        if isinstance(value, MultiPoly):
            return value
        return MultiPoly.from_scalar(value)

    # -- ring operations ----------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, MultiPoly):
            return self.terms == other.terms
        if _is_number(other):
            return self.terms == MultiPoly.from_scalar(other).terms
        return NotImplemented

    __hash__ = None  # type: ignore[assignment]

    def __add__(self, other):
        if _is_number(other):
            other = MultiPoly.from_scalar(other)
        elif not isinstance(other, MultiPoly):
            return NotImplemented
        out = dict(self.terms)
        for mono, coeff in other.terms.items():
            new = out.get(mono, 0) + coeff
            if new:
                out[mono] = _normalize_coeff(new)
            else:
                out.pop(mono, None)
        res = MultiPoly.__new__(MultiPoly)
        res.terms = out
        return res

    __radd__ = __add__

    def __neg__(self):
        res = MultiPoly.__new__(MultiPoly)
        res.terms = {m: -c for m, c in self.terms.items()}
        return res

    def __sub__(self, other):
        if _is_number(other):
            other = MultiPoly.from_scalar(other)
        elif not isinstance(other, MultiPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if _is_number(other):
            if not other:
                return MultiPoly()
            res = MultiPoly.__new__(MultiPoly)
            res.terms = {
                m: _normalize_coeff(c * other) for m, c in self.terms.items()
            }
            return res
        if not isinstance(other, MultiPoly):
            return NotImplemented
        out: dict[Monomial, Fraction | int] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = _mono_mul(m1, m2)
                new = out.get(mono, 0) + c1 * c2
                if new:
                    out[mono] = new
                else:
                    out.pop(mono, None)
        res = MultiPoly.__new__(MultiPoly)
        res.terms = {m: _normalize_coeff(c) for m, c in out.items()}
        return res

    __rmul__ = __mul__

    def __pow__(self, exp: int):
        if exp < 0:
            raise ValueError("negative powers are not polynomials")
        result = MultiPoly.from_scalar(1)
        base = self
        while exp:
            if exp & 1:
                result = result * base
            exp >>= 1
            if exp:
                base = base * base
        return result

    # -- queries -------------------------------------------------------

    def is_constant(self) -> bool:
        return not self.terms or set(self.terms) == {()}

    def constant_value(self) -> Fraction | int:
        return self.terms.get((), 0)

    def variables(self) -> set[VarKey]:
        return {vk for mono in self.terms for vk, _ in mono}

    def degree_in(self, name: str, index: int = -1) -> int:
        key = (name, index)
        best = 0
        for mono in self.terms:
            for vk, e in mono:
                if vk == key:
                    best = max(best, e)
        return best

    def coefficient_of(self, name: str, power: int, index: int = -1) -> "MultiPoly":
        """The polynomial multiplying name^power (the variable removed)."""
        key = (name, index)
        out: dict[Monomial, Fraction | int] = {}
        for mono, coeff in self.terms.items():
            exps = dict(mono)
            if exps.pop(key, 0) == power:
                out[tuple(sorted(exps.items()))] = coeff
        res = MultiPoly.__new__(MultiPoly)
        res.terms = out
        return res

    def truncate_degree(self, name: str, max_power: int, index: int = -1) -> "MultiPoly":
        key = (name, index)
        out = {
            mono: coeff
            for mono, coeff in self.terms.items()
            if dict(mono).get(key, 0) <= max_power
        }
        res = MultiPoly.__new__(MultiPoly)
        res.terms = out
        return res

    def rename_scalars(self, mapping: Mapping[str, str]) -> "MultiPoly":
        out: dict[Monomial, Fraction | int] = {}
        for mono, coeff in self.terms.items():
            new = tuple(
                sorted(
                    (((mapping.get(name, name), idx) if idx < 0 else (name, idx)), e)
                    for (name, idx), e in mono
                )
            )
            out[new] = out.get(new, 0) + coeff
        return MultiPoly(out)

    def evaluate(self, assignment: Mapping[str, Fraction | int]) -> Fraction | int:
        """Evaluate with every variable assigned a number (scalars only)."""
        total: Fraction | int = 0
        for mono, coeff in self.terms.items():
            value: Fraction | int = coeff
            for (name, idx), e in mono:
                if idx >= 0 or name not in assignment:
                    raise ValueError(f"no value for variable {(name, idx)}")
                value *= Fraction(assignment[name]) ** e
            total += value
        return _normalize_coeff(Fraction(total))

    # -- exact division -------------------------------------------------

    def exact_div(self, divisor: "MultiPoly | Fraction | int") -> "MultiPoly":
        """Exact polynomial division; raises ValueError if not a multiple."""
        if _is_number(divisor):
            if not divisor:
                raise ZeroDivisionError("division by zero polynomial")
            return self * (Fraction(1) / Fraction(divisor))
        if divisor.is_constant():
            c = divisor.constant_value()
            if not c:
                raise ZeroDivisionError("division by zero polynomial")
            return self * (Fraction(1) / Fraction(c))
        if not self:
            return MultiPoly()
        variables = sorted(self.variables() | divisor.variables(), key=_var_print_order)
        vpos = {vk: i for i, vk in enumerate(variables)}

        def dense(mono: Monomial) -> tuple[int, ...]:
            vec = [0] * len(variables)
            for vk, e in mono:
                vec[vpos[vk]] = e
            return tuple(vec)

        def sparse(vec: Sequence[int]) -> Monomial:
            return tuple(sorted((variables[i], e) for i, e in enumerate(vec) if e))

        def order_key(vec: tuple[int, ...]) -> tuple:
            return (sum(vec), vec)

        rem = {dense(m): c for m, c in self.terms.items()}
        div = {dense(m): c for m, c in divisor.terms.items()}
        lead_d = max(div, key=order_key)
        lead_dc = div[lead_d]
        quot: dict[tuple[int, ...], Fraction | int] = {}
        while rem:
            lead_r = max(rem, key=order_key)
            diff = tuple(a - b for a, b in zip(lead_r, lead_d))
            if any(d < 0 for d in diff):
                raise ValueError("polynomial division is not exact")
            q = Fraction(rem[lead_r]) / Fraction(lead_dc)
            quot[diff] = _normalize_coeff(Fraction(quot.get(diff, 0)) + q)
            for mono_d, cd in div.items():
                mono = tuple(a + b for a, b in zip(diff, mono_d))
                new = Fraction(rem.get(mono, 0)) - q * cd
                if new:
                    rem[mono] = _normalize_coeff(new)
                else:
                    rem.pop(mono, None)
        return MultiPoly({sparse(vec): c for vec, c in quot.items()})

    # -- printing --------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        ordered = sorted(
            self.terms.items(),
            key=lambda item: (
                -_mono_degree(item[0]),
                [(-e, _var_print_order(vk)) for vk, e in
                 sorted(item[0], key=lambda p: _var_print_order(p[0]))],
            ),
        )
        parts = []
        for mono, coeff in ordered:
            factors = []
            for (name, idx), e in sorted(mono, key=lambda p: _var_print_order(p[0])):
                label = _PRINT_NAMES.get(name, name) if idx < 0 else (
                    f"{_PRINT_NAMES.get(name, name)}_{idx}"
                )
                factors.append(label if e == 1 else f"{label}^{e}")
            body = "*".join(factors)
            c = coeff
            if not body:
                text = str(c)
            elif c == 1:
                text = body
            elif c == -1:
                text = f"-{body}"
            else:
                text = f"{c}*{body}"
            parts.append(text)
        out = parts[0]
        for text in parts[1:]:
            out += f" - {text[1:]}" if text.startswith("-") else f" + {text}"
        return out

    def __repr__(self) -> str:
        return f"MultiPoly({self})"


Coeff = MultiPoly  # documentation alias: series coefficients


def coeff_eq(a, b) -> bool:
    """Equality of series coefficients across int/Fraction/MultiPoly."""
    if isinstance(a, MultiPoly) or isinstance(b, MultiPoly):
        return MultiPoly.coerce(a) == MultiPoly.coerce(b)
    return a == b


_ceq = coeff_eq


def _coeff_div(value, lead):
    """Divide a series coefficient by the leading coefficient of a divisor."""
    if _is_number(lead):
        if lead == 1:
            return value
        inv = Fraction(1) / Fraction(lead)
        return _normalize_coeff(value * inv) if _is_number(value) else value * inv
    if isinstance(lead, MultiPoly):
        if lead.is_constant():
            return _coeff_div(value, lead.constant_value())
        return MultiPoly.coerce(value).exact_div(lead)
    raise TypeError(f"cannot divide by coefficient of type {type(lead).__name__}")


class TruncatedSeries:
    """Power series in one variable, exact coefficients, fixed truncation.

    ``coeffs[i]`` is the coefficient of var**i; the list always has
    ``order + 1`` entries.  The grading variable must not occur inside
    the coefficients.
    """

    __slots__ = ("var", "order", "coeffs")

    def __init__(self, var: str, order: int, coeffs: Sequence | None = None):
        if order < 0:
            raise ValueError("order must be nonnegative")
        data = list(coeffs or [])
        if len(data) > order + 1:
            data = data[: order + 1]
        data.extend([0] * (order + 1 - len(data)))
        self.var = var
        self.order = order
        self.coeffs = data

    # -- constructors ----------------------------------------------------

    @classmethod
    def constant(cls, var: str, order: int, value) -> "TruncatedSeries":
        return cls(var, order, [value])

    @classmethod
    def from_powers(cls, var: str, order: int, powers: Mapping[int, object]) -> "TruncatedSeries":
        coeffs = [0] * (order + 1)
        for p, c in powers.items():
            if p <= order:
                coeffs[p] = c
        return cls(var, order, coeffs)

    @classmethod
    def geometric(cls, var: str, order: int, ratio=1) -> "TruncatedSeries":
        """1 / (1 - ratio*var) expanded directly."""
        coeffs: list = [1]
        for _ in range(order):
            coeffs.append(coeffs[-1] * ratio)
        return cls(var, order, coeffs)

    def coeff(self, i: int):
        if i > self.order:
            raise IndexError(f"coefficient {i} beyond truncation order {self.order}")
        return self.coeffs[i]

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return TruncatedSeries(self.var, order, self.coeffs[: order + 1])

    def valuation(self) -> int | None:
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return None

    def is_zero(self) -> bool:
        return self.valuation() is None

    # -- arithmetic --------------------------------------------------------

    def _check(self, other: "TruncatedSeries") -> None:
        if self.var != other.var:
            raise ValueError(f"mixed grading variables {self.var!r} and {other.var!r}")

    def __add__(self, other):
        if isinstance(other, TruncatedSeries):
            self._check(other)
            n = min(self.order, other.order)
            return TruncatedSeries(
                self.var, n, [self.coeffs[i] + other.coeffs[i] for i in range(n + 1)]
            )
        coeffs = list(self.coeffs)
        coeffs[0] = coeffs[0] + other
        return TruncatedSeries(self.var, self.order, coeffs)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(self.var, self.order, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other if isinstance(other, TruncatedSeries) else -MultiPoly.coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            self._check(other)
            n = min(self.order, other.order)
            out: list = [0] * (n + 1)
            for i, a in enumerate(self.coeffs[: n + 1]):
                if not a:
                    continue
                for j in range(n + 1 - i):
                    b = other.coeffs[j]
                    if b:
                        out[i + j] = out[i + j] + a * b
            return TruncatedSeries(self.var, n, out)
        return TruncatedSeries(self.var, self.order, [c * other for c in self.coeffs])

    __rmul__ = __mul__

    def __pow__(self, exp: int):
        if exp < 0:
            raise ValueError("use divide for negative powers")
        result = TruncatedSeries.constant(self.var, self.order, 1)
        base = self
        while exp:
            if exp & 1:
                result = result * base
            exp >>= 1
            if exp:
                base = base * base
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (
            self.var == other.var
            and self.order == other.order
            and all(_ceq(a, b) for a, b in zip(self.coeffs, other.coeffs))
        )

    __hash__ = None  # type: ignore[assignment]

    def divide(self, other: "TruncatedSeries") -> "TruncatedSeries":
        """Exact series division; requires val(self) >= val(other).

        The result is truncated at min(order) - val(other): dividing by a
        series vanishing to order v costs v orders of precision.
        """
        self._check(other)
        v = other.valuation()
        if v is None:
            raise ZeroDivisionError("division by zero series")
        sv = self.valuation()
        n = min(self.order, other.order) - v
        if n < 0:
            raise ValueError("insufficient truncation order for division")
        if sv is None:
            return TruncatedSeries(self.var, n)
        if sv < v:
            raise ValueError(
                f"series of valuation {sv} is not divisible by valuation {v}"
            )
        num = self.coeffs[v:]
        den = other.coeffs[v:]
        lead = den[0]
        out: list = []
        for i in range(n + 1):
            acc = num[i] if i < len(num) else 0
            for j in range(i):
                d = den[i - j] if i - j < len(den) else 0
                if d and out[j]:
                    acc = acc - out[j] * d
            out.append(_coeff_div(acc, lead) if acc else 0)
        return TruncatedSeries(self.var, n, out)

    def inverse(self) -> "TruncatedSeries":
        return TruncatedSeries.constant(self.var, self.order, 1).divide(self)

    def sqrt(self) -> "TruncatedSeries":
        """Square root of a series with constant term 1."""
        if not _ceq(self.coeffs[0], 1):
            raise ValueError("sqrt requires constant term 1")
        half = Fraction(1, 2)
        out: list = [1]
        for n in range(1, self.order + 1):
            acc = self.coeffs[n]
            for i in range(1, n):
                if out[i] and out[n - i]:
                    acc = acc - out[i] * out[n - i]
            out.append(acc * half if acc else 0)
        return TruncatedSeries(self.var, self.order, out)

    def shift_up(self, k: int) -> "TruncatedSeries":
        """Multiply by var**k, truncating at the same order."""
        if k == 0:
            return self
        return TruncatedSeries(self.var, self.order, [0] * k + self.coeffs)

    def map_coeffs(self, fn: Callable) -> "TruncatedSeries":
        return TruncatedSeries(self.var, self.order, [fn(c) for c in self.coeffs])

    def rescale(self, factor_per_order) -> "TruncatedSeries":
        """Substitute var <- factor * var (factor a coefficient value)."""
        out: list = []
        power: object = 1
        for c in self.coeffs:
            out.append(c * power if c else 0)
            power = power * factor_per_order
        return TruncatedSeries(self.var, self.order, out)

    def substitute(
        self,
        inner: "TruncatedSeries | None" = None,
        scalar_subs: Mapping[str, "TruncatedSeries"] | None = None,
    ) -> "TruncatedSeries":
        """Substitute a series for the grading variable and/or scalars.

        ``inner`` (for the grading variable) must have valuation >= 1.
        Scalar substitutions apply inside every coefficient; substituted
        scalar variables must not appear in the result.
        """
        var, order = self.var, self.order
        if inner is not None:
            self._check(inner)
            iv = inner.valuation()
            if iv == 0:
                raise ValueError("substituted series must have zero constant term")
        subs = dict(scalar_subs or {})
        power_cache: dict[tuple[str, int], TruncatedSeries] = {}

        def scalar_power(name: str, e: int) -> TruncatedSeries:
            key = (name, e)
            if key not in power_cache:
                power_cache[key] = subs[name] ** e
            return power_cache[key]

        def expand_coeff(c) -> TruncatedSeries:
            if not subs or _is_number(c):
                return TruncatedSeries.constant(var, order, c)
            total = TruncatedSeries(var, order)
            for mono, coeff in MultiPoly.coerce(c).terms.items():
                factor = TruncatedSeries.constant(var, order, 1)
                rest: dict = {}
                for vk, e in mono:
                    name, idx = vk
                    if idx < 0 and name in subs:
                        factor = factor * scalar_power(name, e)
                    else:
                        rest[(vk, e)] = None
                keep = MultiPoly({tuple(sorted(rest)): coeff})
                total = total + factor * keep
            return total

        result = TruncatedSeries(var, order)
        inner_pow = TruncatedSeries.constant(var, order, 1)
        for i, c in enumerate(self.coeffs):
            if c:
                term = expand_coeff(c)
                result = result + (term * inner_pow if inner is not None else term.shift_up(i))
            if inner is not None and i < order:
                inner_pow = inner_pow * inner
        return result

    def __str__(self) -> str:
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            cs = str(c) if _is_number(c) else f"({c})"
            if i == 0:
                parts.append(cs)
            elif i == 1:
                parts.append(f"{cs}*{self.var}")
            else:
                parts.append(f"{cs}*{self.var}^{i}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self) -> str:
        return f"TruncatedSeries[{self.var}^<={self.order}]({self})"


# ---------------------------------------------------------------------------
# The operator rho: monomials over X/Y/Z collapse to powers of s.
# ---------------------------------------------------------------------------

_RHO_FAMILIES = {"X", "Y", "Z"}


def _effective_from_sets(xs: Sequence[int], yzs: Sequence[int]) -> tuple[int, ...]:
    """Effective indices given sorted X indices and sorted Y/Z indices.

    An index i (carrying Y_i or Z_i) is effective when some X_k with
    k > i is present and no Y_j or Z_j sits strictly between i and k.
    """
    out = []
    for i in yzs:
        next_x = next((k for k in xs if k > i), None)
        if next_x is None:
            continue
        next_yz = next((j for j in yzs if j > i), None)
        if next_yz is None or next_yz >= next_x:
            out.append(i)
    return tuple(out)


def effective_indices(mono: Monomial) -> tuple[int, ...]:
    xs: list[int] = []
    yzs: set[int] = set()
    for (name, idx), _ in mono:
        if idx < 0:
            continue
        if name == "X":
            xs.append(idx)
        elif name in ("Y", "Z"):
            yzs.add(idx)
        else:
            raise ValueError(f"variable family {name!r} not allowed here")
    return _effective_from_sets(sorted(xs), sorted(yzs))


def effective_count(mono_or_poly) -> int:
    """Number of effective indices of a monomial over X/Y/Z.

    >>> m = (MultiPoly.var("X", 1) * MultiPoly.var("X", 2) * MultiPoly.var("Y", 0)
    ...      * MultiPoly.var("Y", 3) * MultiPoly.var("Z", 0) * MultiPoly.var("Z", 1))
    >>> effective_count(m)
    2
    """
    if isinstance(mono_or_poly, MultiPoly):
        if len(mono_or_poly.terms) != 1:
            raise ValueError("effective_count expects a single monomial")
        (mono,) = mono_or_poly.terms
    else:
        mono = mono_or_poly
    return len(effective_indices(mono))


def rho(poly: MultiPoly) -> MultiPoly:
    """Replace the X/Y/Z part of every monomial by s**(#effective indices).

    Scalar variables are kept; any other variable family is rejected.
    """
    out = MultiPoly()
    s_key = scalar("s")
    for mono, coeff in poly.terms.items():
        scalars_part = []
        xs: list[int] = []
        yzs: set[int] = set()
        for (name, idx), e in mono:
            if idx < 0:
                scalars_part.append((((name, idx)), e))
            elif name == "X":
                xs.append(idx)
            elif name in ("Y", "Z"):
                yzs.add(idx)
            else:
                raise ValueError(f"variable family {name!r} not allowed under rho")
        eff = len(_effective_from_sets(sorted(xs), sorted(yzs)))
        if eff:
            scalars_part.append((s_key, eff))
        out = out + MultiPoly({tuple(sorted(scalars_part)): coeff})
    return out


def rho_series(series: TruncatedSeries) -> TruncatedSeries:
    return series.map_coeffs(lambda c: rho(MultiPoly.coerce(c)) if c else 0)


# ---------------------------------------------------------------------------
# Slot generating functions S_m(u).
# ---------------------------------------------------------------------------


def _sm_series(m: int, order: int, X, Y, rZ) -> TruncatedSeries:
    """Shared structure of S_m(u); X/Y/rZ build coefficient elements."""
    var = "u"
    one = TruncatedSeries.constant(var, order, 1)
    num = one
    for j in range(1, m + 1):
        num = num * TruncatedSeries(var, order, [1, -X(j)])
    for j in range(0, m + 1):
        num = num.divide(TruncatedSeries(var, order, [1, -rZ(j)]))
    total = TruncatedSeries(var, order)
    x_prod = one
    y_prod = one
    for l in range(1, m + 1):
        y_prod = y_prod * TruncatedSeries(var, order, [1, -Y(l - 1)])
        term = TruncatedSeries(var, order, [0, X(l)]) * x_prod
        total = total + term.divide(y_prod)
        x_prod = x_prod * TruncatedSeries(var, order, [1, -X(l)])
    return num.divide(one - total)


def expand_Sm(m: int, order: int) -> TruncatedSeries:
    """Exact expansion of S_m(u) with MultiPoly coefficients over X/Y/Z, r.

    S_0(u) is the geometric series in r*u*Z_0.
    """
    if m < 0 or order < 0:
        raise ValueError("m and order must be nonnegative")
    r = MultiPoly.var("r")
    return _sm_series(
        m,
        order,
        lambda j: MultiPoly.var("X", j),
        lambda j: MultiPoly.var("Y", j),
        lambda j: r * MultiPoly.var("Z", j),
    )


class EffPoly:
    """Quotient of the X/Y/Z polynomial ring remembering only variable
    presence (as bitmask) plus the r-degree.

    The number of effective indices of a monomial depends only on which
    X / (Y or Z) indices occur, and presence masks combine by union under
    multiplication, so this quotient is a ring and rho factors through it.
    Used to evaluate rho(S_m(u)) cheaply for larger m.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[int, int, int], int] | None = None):
        self.terms = {key: c for key, c in (terms or {}).items() if c}

    @classmethod
    def X(cls, j: int) -> "EffPoly":
        return cls({(1 << j, 0, 0): 1})

    @classmethod
    def Y(cls, j: int) -> "EffPoly":
        return cls({(0, 1 << j, 0): 1})

    @classmethod
    def rZ(cls, j: int) -> "EffPoly":
        return cls({(0, 1 << j, 1): 1})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, EffPoly):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        if other == 1:
            return self.terms == {(0, 0, 0): 1}
        return NotImplemented

    __hash__ = None  # type: ignore[assignment]

    def __add__(self, other):
        if isinstance(other, int):
            if not other:
                return self
            other = EffPoly({(0, 0, 0): other})
        if not isinstance(other, EffPoly):
            return NotImplemented
        out = dict(self.terms)
        for key, c in other.terms.items():
            new = out.get(key, 0) + c
            if new:
                out[key] = new
            else:
                del out[key]
        return EffPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return EffPoly({key: -c for key, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            return self + (-other)
        if not isinstance(other, EffPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return EffPoly()
            return EffPoly({key: c * other for key, c in self.terms.items()})
        if not isinstance(other, EffPoly):
            return NotImplemented
        out: dict[tuple[int, int, int], int] = {}
        for (x1, yz1, r1), c1 in self.terms.items():
            for (x2, yz2, r2), c2 in other.terms.items():
                key = (x1 | x2, yz1 | yz2, r1 + r2)
                new = out.get(key, 0) + c1 * c2
                if new:
                    out[key] = new
                else:
                    del out[key]
        return EffPoly(out)

    __rmul__ = __mul__


def _mask_bits(mask: int) -> list[int]:
    bits = []
    i = 0
    while mask:
        if mask & 1:
            bits.append(i)
        mask >>= 1
        i += 1
    return bits


def rho_Sm(m: int, order: int) -> TruncatedSeries:
    """rho(S_m(u)) as a series in u with coefficients over s and r."""
    raw = _sm_series(m, order, EffPoly.X, EffPoly.Y, EffPoly.rZ)
    s = MultiPoly.var("s")
    r = MultiPoly.var("r")

    def collapse(c) -> MultiPoly:
        if not c:
            return MultiPoly()
        if isinstance(c, int):
            return MultiPoly.from_scalar(c)
        out = MultiPoly()
        for (xm, yzm, rdeg), count in c.terms.items():
            eff = len(_effective_from_sets(_mask_bits(xm), _mask_bits(yzm)))
            out = out + count * (s ** eff) * (r ** rdeg)
        return out

    return raw.map_coeffs(collapse)


# ---------------------------------------------------------------------------
# Right-hand side of the decrease-value identity.
# ---------------------------------------------------------------------------


def expand_decrease_value_rhs(m: int, order: int) -> TruncatedSeries:
    """Expand the closed form for the sum of word weights over [0, m]^n.

    The identity carries no explicit size variable, so the series is
    graded by an auxiliary variable "g" multiplying every family
    variable; each word letter contributes exactly one variable, hence
    the g-grade equals the word length.  The grade-n coefficient equals
    the sum of the weights of all words of length n over the alphabet
    {0, ..., m}.
    """
    var = "g"

    def fam(name: str, j: int) -> MultiPoly:
        return MultiPoly.var(name, j)

    one = TruncatedSeries.constant(var, order, 1)

    def ratio_zx(j: int) -> TruncatedSeries:
        # (1 - Z_j) / (1 - Z_j + X_j)
        num = TruncatedSeries(var, order, [1, -fam("Z", j)])
        den = TruncatedSeries(var, order, [1, fam("X", j) - fam("Z", j)])
        return num.divide(den)

    def ratio_ty(j: int, primed: bool) -> TruncatedSeries:
        tname, yname = ("Tp", "Yp") if primed else ("T", "Y")
        num = TruncatedSeries(var, order, [1, -fam(tname, j)])
        den = TruncatedSeries(var, order, [1, fam(yname, j) - fam(tname, j)])
        return num.divide(den)

    top = one
    for j in range(1, m + 1):
        top = top * ratio_zx(j)
    for j in range(0, m + 1):
        top = top.divide(ratio_ty(j, primed=True))

    total = TruncatedSeries(var, order)
    zx_prod = one
    ty_prod = one
    for l in range(1, m + 1):
        ty_prod = ty_prod * ratio_ty(l - 1, primed=False)
        last = TruncatedSeries(var, order, [0, fam("X", l)]).divide(
            TruncatedSeries(var, order, [1, fam("X", l) - fam("Z", l)])
        )
        total = total + (zx_prod * last).divide(ty_prod)
        zx_prod = zx_prod * ratio_zx(l)

    return top.divide(one - total)


# ---------------------------------------------------------------------------
# Quadratic functional equations and explicit compositions.
# ---------------------------------------------------------------------------


def solve_quadratic_series(
    a: TruncatedSeries,
    b: TruncatedSeries,
    c: TruncatedSeries,
    constant_term,
) -> TruncatedSeries:
    """The unique series Y with a*Y^2 + b*Y + c = 0 and Y(0) as prescribed.

    Newton iteration; requires 2*a*Y(0) + b to have an invertible
    constant term.  Degenerates to a linear solve when a = 0.
    """
    var, order = a.var, min(a.order, b.order, c.order)
    a, b, c = a.truncate(order), b.truncate(order), c.truncate(order)
    if a.is_zero():
        return (-c).divide(b)
    y = TruncatedSeries.constant(var, order, constant_term)
    first = (a * y + b) * y + c
    if first.coeff(0):
        raise ValueError("prescribed constant term is not a root")
    for _ in range(order + 2):
        residual = (a * y + b) * y + c
        if residual.is_zero():
            break
        try:
            y = y - residual.divide(2 * a * y + b)
        except (ZeroDivisionError, ValueError) as exc:
            raise ValueError("no admissible series branch found") from exc
    residual = (a * y + b) * y + c
    if not residual.is_zero():
        raise ValueError("no admissible series branch found")
    if not _ceq(y.coeff(0), constant_term):
        raise ValueError("solution lost its prescribed constant term")
    return y


def compose_G_from_F(f_series: TruncatedSeries, order: int) -> TruncatedSeries:
    """Turn the (des, xdes) derangement series into the (des, dez) series.

    ``f_series`` is a series in u with coefficients polynomial in t and s;
    the result tracks x (descents) and y (descents of the derangement
    form) over all permutations.
    """
    if f_series.order < order:
        raise ValueError("input series order too small")
    var = "u"
    x = MultiPoly.var("x")
    y = MultiPoly.var("y")
    xy = x * y
    f = f_series.truncate(order)
    one_minus_u = TruncatedSeries(var, order, [1, -1])
    t_sub = TruncatedSeries.constant(var, order, xy).divide(
        TruncatedSeries(var, order, [1, xy - 1])
    )
    s_sub = (
        TruncatedSeries(var, order, [1, x - 1])
        * TruncatedSeries(var, order, [1, y - 1])
    ).divide(TruncatedSeries(var, order, [1, xy - 1]))
    u_sub = TruncatedSeries(var, order, [0, 1]) + TruncatedSeries(
        var, order, [0, 0, xy]
    ).divide(one_minus_u)
    composed = f.substitute(inner=u_sub, scalar_subs={"t": t_sub, "s": s_sub})
    return composed.divide(one_minus_u)


# ---------------------------------------------------------------------------
# Closed-form catalog.
# ---------------------------------------------------------------------------


def catalan_number(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


def catalan_series(order: int) -> TruncatedSeries:
    """(1 - sqrt(1 - 4x)) / (2x)."""
    work = order + 2
    root = TruncatedSeries.from_powers("x", work, {0: 1, 1: -4}).sqrt()
    num = TruncatedSeries.constant("x", work, 1) - root
    den = TruncatedSeries.from_powers("x", work, {1: 2})
    return num.divide(den).truncate(order)


def _p(var: str, order: int, powers: Mapping[int, object]) -> TruncatedSeries:
    return TruncatedSeries.from_powers(var, order, powers)


def _cf_321der(order: int) -> TruncatedSeries:
    w = order + 4
    root = _p("x", w, {0: 1, 1: -4}).sqrt()
    num = _p("x", w, {0: 1, 1: -3, 2: 3, 3: 2}) + _p("x", w, {0: -1, 1: 1, 2: 1}) * root
    den = _p("x", w, {2: 4, 3: -2, 4: -2})  # 2x^2 (1 - x)(2 + x)
    return num.divide(den).truncate(order)


def _cf_312_3(order: int) -> TruncatedSeries:
    w = order + 3
    cat = catalan_series(w)
    first = (cat - _p("x", w, {0: 1, 1: 1})).divide(_p("x", w, {2: 1}))
    return (first - TruncatedSeries.geometric("x", w - 2, 2)).truncate(order)


def _cf_312_2(order: int) -> TruncatedSeries:
    w = order + 2
    cat = catalan_series(w)
    return (cat - 1).divide(_p("x", w, {1: 1})).truncate(order)


def _cf_nara(order: int) -> TruncatedSeries:
    t = MultiPoly.var("t")
    a = _p("x", order, {1: t})
    b = _p("x", order, {0: -1, 1: 1 - t})
    c = _p("x", order, {0: 1})
    return solve_quadratic_series(a, b, c, 1)


def _312_quadratic(order: int) -> TruncatedSeries:
    t = MultiPoly.var("t")
    a = _p("x", order, {2: t * t})
    b = _p("x", order, {0: -1, 1: 2, 2: -(t * t) + 2 * t - 1})
    c = _p("x", order, {0: 1})
    return solve_quadratic_series(a, b, c, 1)


def _root_321(order: int) -> TruncatedSeries:
    # sqrt(1 - 4x + 4x^2 - 4t x^2)
    t = MultiPoly.var("t")
    return _p("x", order, {0: 1, 1: -4, 2: 4 - 4 * t}).sqrt()


def _cf_321des(order: int) -> TruncatedSeries:
    w = order + 2
    t = MultiPoly.var("t")
    num = TruncatedSeries.constant("x", w, 1) - _root_321(w)
    den = _p("x", w, {1: 2, 2: 2 * (t - 1)})  # 2x (tx - x + 1)
    return num.divide(den).truncate(order)


def _cf_des_ldes(order: int) -> TruncatedSeries:
    t = MultiPoly.var("t")
    p = MultiPoly.var("p")
    root = _root_321(order)
    head = TruncatedSeries.constant("x", order, p).divide(_p("x", order, {0: 1, 1: -p}))
    num = (t * p * p) * (_p("x", order, {0: -1, 1: 2, 2: 2 * t - 2}) + root)
    den = (
        _p("x", order, {0: 1, 1: t - 1})
        * _p("x", order, {0: -1, 1: p})
        * (_p("x", order, {0: 2 - p, 1: 2 * t - 2}) + p * root)
    )
    return head + num.divide(den)


def _cf_des_plat(order: int) -> TruncatedSeries:
    w = order + 3
    t = MultiPoly.var("t")
    q = MultiPoly.var("q")
    root = _p("x", w, {0: 1, 1: -4, 2: 4 - 4 * t}).sqrt()  # sqrt(1 + 4x(x - tx - 1))
    num = (
        _p("x", w, {0: 1, 1: -1 - q, 2: 2 - 2 * t})
        + _p("x", w, {0: -1, 1: q - 1}) * root
    ) * _p("x", w, {0: 1, 1: 1 - q})
    den = _p("x", w, {2: 2}) * _p("x", w, {0: 1, 1: t - 1}) * _p(
        "x", w, {0: 2 - q, 1: q * q - 2 * q + t}
    )
    return num.divide(den).truncate(order)


def _cf_123_2des(order: int) -> TruncatedSeries:
    w = order + 3
    t = MultiPoly.var("t")
    # T = sqrt(1 + 4tx(tx - x - 1))
    root = _p("x", w, {0: 1, 1: -4 * t, 2: 4 * t * t - 4 * t}).sqrt()
    first = _p("x", w, {0: 1, 1: -1 - t, 2: 2 * t * t - 2 * t})
    lin = _p("x", w, {0: 1, 1: t - 1})  # tx - x + 1
    num = (first - lin * root) * lin
    den = _p("x", w, {2: 2 * t}) * _p("x", w, {0: -1, 1: t - 1}) * _p(
        "x", w, {0: 1 - 2 * t, 1: t - 1}
    )
    return num.divide(den).truncate(order)


def _cf_0hill(order: int) -> TruncatedSeries:
    p = MultiPoly.var("p")
    root = _p("x", order, {0: 1, 1: -4}).sqrt()
    num = (2 * p) * (_p("x", order, {0: 1, 1: 2 - 2 * p}) + root)
    den = (_p("x", order, {0: 1, 1: 2}) + root) * (
        TruncatedSeries.constant("x", order, 2 - p) + p * root
    )
    return num.divide(den)


def _cf_p0(order: int) -> TruncatedSeries:
    return TruncatedSeries.geometric("u", order, MultiPoly.var("r"))


def _cf_p1(order: int) -> TruncatedSeries:
    r = MultiPoly.var("r")
    s = MultiPoly.var("s")
    num = _p("u", order, {2: s})
    den = _p("u", order, {0: 1, 1: -r}) ** 2 * _p("u", order, {0: 1, 1: -2})
    return num.divide(den)


def _cf_p2(order: int) -> TruncatedSeries:
    r = MultiPoly.var("r")
    s = MultiPoly.var("s")
    lead = _p("u", order, {3: 1}).divide(
        _p("u", order, {0: 1, 1: -r}) ** 3
        * _p("u", order, {0: 1, 1: -3, 2: 1})
        * _p("u", order, {0: 1, 1: -2})
    )
    term1 = (
        _p("u", order, {0: -r, 1: 3 * r - 2})
        * _p("u", order, {0: -1, 1: 1})
    ).divide(_p("u", order, {0: 1, 1: -2})) * s
    term2 = _p("u", order, {1: r + 2, 2: -3 * r - 4, 3: 2}).divide(
        _p("u", order, {0: 1, 1: -3})
    ) * (s * s)
    return lead * (term1 + term2)


def _cf_rho_s1(order: int) -> TruncatedSeries:
    r = MultiPoly.var("r")
    s = MultiPoly.var("s")
    lead = TruncatedSeries.constant("u", order, 1).divide(
        _p("u", order, {0: 1, 1: -r}) ** 2
    )
    tail = _p("u", order, {2: s}).divide(_p("u", order, {0: 1, 1: -2}))
    return lead * (tail + 1)


def _cf_rho_s2(order: int) -> TruncatedSeries:
    r = MultiPoly.var("r")
    s = MultiPoly.var("s")
    lead = TruncatedSeries.constant("u", order, 1).divide(
        _p("u", order, {0: 1, 1: -r}) ** 3
    )
    qpoly = _p("u", order, {0: 1, 1: -3, 2: 1})  # u^2 - 3u + 1
    t1 = _p("u", order, {2: 3, 3: -7, 4: 3 - r}).divide(
        qpoly * _p("u", order, {0: 1, 1: -2})
    ) * s
    t2 = _p("u", order, {4: r + 2, 5: -3 * r - 4, 6: 2}).divide(
        qpoly * _p("u", order, {0: 1, 1: -3}) * _p("u", order, {0: 1, 1: -2})
    ) * (s * s)
    return lead * (1 + t1 + t2)


_CATALOG: dict[str, Callable[[int], TruncatedSeries]] = {
    "CF-CATALAN": catalan_series,
    "CF-321DER": _cf_321der,
    "CF-312-3": _cf_312_3,
    "CF-312-2": _cf_312_2,
    "CF-NARA": _cf_nara,
    "CF-EQ312": _312_quadratic,
    "CF-231H": _312_quadratic,
    "CF-321DES": _cf_321des,
    "CF-DES-LDES": _cf_des_ldes,
    "CF-DES-PLAT": _cf_des_plat,
    "CF-123-2DES": _cf_123_2des,
    "CF-0HILL": _cf_0hill,
    "CF-P0": _cf_p0,
    "CF-P1": _cf_p1,
    "CF-P2": _cf_p2,
    "CF-RHO-S1": _cf_rho_s1,
    "CF-RHO-S2": _cf_rho_s2,
}

CATALOG_IDS = tuple(sorted(_CATALOG))


def expand_closed_form(catalog_id: str, order: int) -> TruncatedSeries:
    """Expand a named closed form to the requested order.

    >>> [expand_closed_form("CF-CATALAN", 4).coeff(i) for i in range(5)]
    [1, 1, 2, 5, 14]
    """
    try:
        builder = _CATALOG[catalog_id]
    except KeyError:
        raise ValueError(f"unknown catalog id {catalog_id!r}") from None
    if order < 0:
        raise ValueError("order must be nonnegative")
    return builder(order)
