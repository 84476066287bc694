"""
Exact q- and (q,t)-polynomials, truncated multivariate series, and the
closed-form generating functions for partitions with constrained ranks
"""

import logging
from fractions import Fraction
from functools import lru_cache

from rankpath.errors import IntegralityError, PreconditionError, UnknownNameError

logger = logging.getLogger(__name__)


def _format_monomial(coeff, powers):
    """Render coeff * x^a * y^b ... with 1-exponents and unit coefficients elided"""
    factors = [var if exp == 1 else f"{var}^{exp}" for var, exp in powers if exp != 0]
    magnitude = abs(coeff)
    if not factors:
        body = str(magnitude)
    elif magnitude == 1:
        body = "*".join(factors)
    else:
        body = f"{magnitude}*" + "*".join(factors)
    return ("-" if coeff < 0 else "+"), body


def format_terms(terms):
    """Join (coeff, powers) pairs into '1 + t*q^2 - 2*t^2*q^5'"""
    pieces = []
    for coeff, powers in terms:
        if coeff == 0:
            continue
        sign, body = _format_monomial(coeff, powers)
        if not pieces:
            pieces.append(body if sign == "+" else f"-{body}")
        else:
            pieces.append(f"{sign} {body}")
    return " ".join(pieces) if pieces else "0"


def _json_number(value):
    value = Fraction(value)
    return value.numerator if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


class QPoly:
    """Dense polynomial in q with integer coefficients"""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def monomial(cls, exponent, coeff=1):
        if exponent < 0:
            raise ArithmeticError(f"Negative q-exponent {exponent}")
        return cls([0] * exponent + [coeff])

    @staticmethod
    def lift(value):
        return value if isinstance(value, QPoly) else QPoly([value])

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def __getitem__(self, j):
        return self.coeffs[j] if 0 <= j < len(self.coeffs) else 0

    def __len__(self):
        return len(self.coeffs)

    def __add__(self, other):
        other = QPoly.lift(other)
        size = max(len(self.coeffs), len(other.coeffs))
        return QPoly([self[j] + other[j] for j in range(size)])

    __radd__ = __add__

    def __neg__(self):
        return QPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-QPoly.lift(other))

    def __rsub__(self, other):
        return QPoly.lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, QPoly):
            return QPoly([c * other for c in self.coeffs])
        if not self.coeffs or not other.coeffs:
            return QPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return QPoly(out)

    __rmul__ = __mul__

    def shift(self, k):
        """Multiply by q^k; k may be negative when the low coefficients vanish"""
        if k >= 0:
            return QPoly([0] * k + list(self.coeffs))
        if any(self.coeffs[:-k]):
            raise ArithmeticError(f"Shifting {self} by q^{k} leaves a negative exponent")
        return QPoly(self.coeffs[-k:])

    def __divmod__(self, other):
        other = QPoly.lift(other)
        if other.is_zero():
            raise ZeroDivisionError("Division by the zero polynomial")
        lead = other.coeffs[-1]
        rem = list(self.coeffs)
        quot = [0] * max(len(rem) - len(other.coeffs) + 1, 0)
        for shift in range(len(quot) - 1, -1, -1):
            top = rem[shift + len(other.coeffs) - 1]
            if top == 0:
                continue
            if top % lead:
                raise ArithmeticError(f"Inexact integer division of {self} by {other}")
            factor = top // lead
            quot[shift] = factor
            for j, c in enumerate(other.coeffs):
                rem[shift + j] -= factor * c
        return QPoly(quot), QPoly(rem)

    def exact_div(self, other):
        quot, rem = divmod(self, other)
        if not rem.is_zero():
            raise ArithmeticError(f"{self} is not divisible by {other}: remainder {rem}")
        return quot

    def truncate(self, order):
        return QPoly(self.coeffs[: order + 1])

    def __call__(self, x):
        total = 0
        for c in reversed(self.coeffs):
            total = total * x + c
        return total

    def __eq__(self, other):
        if isinstance(other, int):
            other = QPoly([other])
        if not isinstance(other, QPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"QPoly({list(self.coeffs)})"

    def __str__(self):
        return format_terms((c, [("q", j)]) for j, c in enumerate(self.coeffs))

    def to_json(self):
        return {f"q^{j}": c for j, c in enumerate(self.coeffs) if c}


ZERO = QPoly()
ONE = QPoly([1])


class QTPoly:
    """Polynomial in t whose coefficients are QPoly values"""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        for i, p in (terms or {}).items():
            p = QPoly.lift(p)
            if not p.is_zero():
                self.terms[int(i)] = p

    @classmethod
    def constant(cls, p):
        return cls({0: p})

    @classmethod
    def t_power(cls, i, p=ONE):
        return cls({i: p})

    @staticmethod
    def lift(value):
        return value if isinstance(value, QTPoly) else QTPoly.constant(value)

    def coefficient(self, i):
        return self.terms.get(i, ZERO)

    @property
    def t_degree(self):
        return max(self.terms, default=-1)

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        other = QTPoly.lift(other)
        out = dict(self.terms)
        for i, p in other.terms.items():
            out[i] = out.get(i, ZERO) + p
        return QTPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return QTPoly({i: -p for i, p in self.terms.items()})

    def __sub__(self, other):
        return self + (-QTPoly.lift(other))

    def __rsub__(self, other):
        return QTPoly.lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, QTPoly):
            return QTPoly({i: p * other for i, p in self.terms.items()})
        out = {}
        for i, a in self.terms.items():
            for j, b in other.terms.items():
                out[i + j] = out.get(i + j, ZERO) + a * b
        return QTPoly(out)

    __rmul__ = __mul__

    def at_t1(self):
        """Specialize t = 1"""
        total = ZERO
        for p in self.terms.values():
            total = total + p
        return total

    def substitute_t_shift(self, k):
        """t -> t q^k"""
        return QTPoly({i: p.shift(k * i) for i, p in self.terms.items()})

    def truncate_q(self, order):
        return QTPoly({i: p.truncate(order) for i, p in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, (int, QPoly)):
            other = QTPoly.constant(other)
        if not isinstance(other, QTPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def __repr__(self):
        return f"QTPoly({self})"

    def __str__(self):
        return format_terms(
            (c, [("t", i), ("q", j)])
            for i in sorted(self.terms)
            for j, c in enumerate(self.terms[i].coeffs)
        )

    def to_json(self):
        return {f"t^{i}": self.terms[i].to_json() for i in sorted(self.terms)}


class TruncatedSeries:
    """Multivariate power series with rational coefficients, truncated in its first variable"""

    __slots__ = ("variables", "order", "coeffs")

    def __init__(self, variables, order, coeffs=None):
        self.variables = tuple(variables)
        self.order = int(order)
        self.coeffs = {}
        for exps, c in (coeffs or {}).items():
            exps = tuple(exps)
            if len(exps) != len(self.variables):
                raise PreconditionError(f"Monomial {exps} does not match variables {self.variables}")
            c = Fraction(c)
            if c and exps[0] <= self.order:
                self.coeffs[exps] = c

    @classmethod
    def constant(cls, value, variables, order):
        return cls(variables, order, {(0,) * len(variables): value})

    @classmethod
    def variable(cls, name, variables, order):
        exps = tuple(1 if v == name else 0 for v in variables)
        return cls(variables, order, {exps: 1})

    @classmethod
    def from_qtpoly(cls, p, order):
        """Embed a QTPoly as a series in (q, t)"""
        p = QTPoly.lift(p)
        return cls(
            ("q", "t"),
            order,
            {(j, i): c for i, qp in p.terms.items() for j, c in enumerate(qp.coeffs)},
        )

    def _coerce(self, other):
        if isinstance(other, TruncatedSeries):
            if other.variables != self.variables:
                raise PreconditionError(f"Variables differ: {self.variables} vs {other.variables}")
            return other
        return TruncatedSeries.constant(other, self.variables, self.order)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return TruncatedSeries(self.variables, min(self.order, other.order), out)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(self.variables, self.order, {e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            factor = Fraction(other)
            return TruncatedSeries(self.variables, self.order, {e: c * factor for e, c in self.coeffs.items()})
        other = self._coerce(other)
        order = min(self.order, other.order)
        out = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                if e1[0] + e2[0] > order:
                    continue
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return TruncatedSeries(self.variables, order, out)

    __rmul__ = __mul__

    def _leading_constant(self):
        zero = (0,) * len(self.variables)
        for e in self.coeffs:
            if e[0] == 0 and e != zero:
                raise PreconditionError(
                    f"The {self.variables[0]}^0 part must be a constant to invert, found monomial {e}"
                )
        c0 = self.coeffs.get(zero, Fraction(0))
        if c0 == 0:
            raise PreconditionError("Cannot invert a series with zero constant term")
        return c0

    def inverse(self):
        """1/self by the geometric recurrence"""
        c0 = self._leading_constant()
        h = (self - c0) * Fraction(-1, 1) * (1 / c0)
        term = TruncatedSeries.constant(1, self.variables, self.order)
        total = term
        for _ in range(self.order):
            term = term * h
            if not term.coeffs:
                break
            total = total + term
        return total * (1 / c0)

    def inv_sqrt(self):
        """self^(-1/2) by Newton iteration y <- y (3 - x y^2) / 2"""
        c0 = self._leading_constant()
        if c0 != 1:
            raise PreconditionError(f"inv_sqrt needs constant term 1, got {c0}")
        y = TruncatedSeries.constant(1, self.variables, self.order)
        precision = 1
        while precision <= self.order:
            y = y * (3 - self * y * y) * Fraction(1, 2)
            precision *= 2
        return y

    def specialize(self, name, value):
        """Set a non-distinguished variable to a number"""
        idx = self.variables.index(name)
        if idx == 0:
            raise PreconditionError(f"Cannot specialize the truncation variable {name}")
        value = Fraction(value)
        variables = self.variables[:idx] + self.variables[idx + 1 :]
        out = {}
        for e, c in self.coeffs.items():
            key = e[:idx] + e[idx + 1 :]
            out[key] = out.get(key, 0) + c * value ** e[idx]
        return TruncatedSeries(variables, self.order, out)

    def coefficient(self, **exponents):
        unknown = set(exponents) - set(self.variables)
        if unknown:
            raise PreconditionError(f"Unknown variables {sorted(unknown)}")
        key = tuple(exponents.get(v, 0) for v in self.variables)
        return self.coeffs.get(key, Fraction(0))

    def is_integral(self):
        return all(c.denominator == 1 for c in self.coeffs.values())

    def check_integral(self):
        bad = [(e, c) for e, c in self.coeffs.items() if c.denominator != 1]
        if bad:
            raise IntegralityError(f"Non-integral coefficient {bad[0][1]} at {bad[0][0]}")
        return self

    def to_qtpoly(self):
        """Convert a series in q or (q, t) with integer coefficients to a QTPoly"""
        if self.variables not in (("q",), ("q", "t")):
            raise PreconditionError(f"Only (q) or (q, t) series convert, got {self.variables}")
        self.check_integral()
        buckets = {}
        for e, c in self.coeffs.items():
            i = e[1] if len(e) > 1 else 0
            buckets.setdefault(i, {})[e[0]] = int(c)
        return QTPoly(
            {i: QPoly([b.get(j, 0) for j in range(max(b) + 1)]) for i, b in buckets.items()}
        )

    def univariate(self):
        """Integer coefficient list of a series in q alone"""
        if len(self.variables) != 1:
            raise PreconditionError(f"Expected a univariate series, got {self.variables}")
        self.check_integral()
        return [int(self.coeffs.get((j,), 0)) for j in range(self.order + 1)]

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (self.variables, self.order, self.coeffs) == (other.variables, other.order, other.coeffs)

    def __str__(self):
        body = format_terms(
            (c if c.denominator != 1 else int(c), list(zip(self.variables, e)))
            for e, c in sorted(self.coeffs.items(), key=lambda item: (item[0][1:], item[0][0]))
        )
        return f"{body} + O({self.variables[0]}^{self.order + 1})"

    def to_json(self):
        if self.variables == ("q", "t"):
            nested = {}
            for (j, i), c in sorted(self.coeffs.items(), key=lambda item: (item[0][1], item[0][0])):
                nested.setdefault(f"t^{i}", {})[f"q^{j}"] = _json_number(c)
            return {**nested, "truncation": self.order}
        terms = {}
        for e, c in sorted(self.coeffs.items()):
            name = "*".join(f"{v}^{k}" for v, k in zip(self.variables, e) if k) or "1"
            terms[name] = _json_number(c)
        return {"variables": list(self.variables), "truncation": self.order, "terms": terms}


# ---------------------------------------------------------------- q-analogues


@lru_cache(maxsize=None)
def _qbinom_coeffs(n, k):
    if k < 0 or k > n:
        return ()
    if k == 0 or k == n:
        return (1,)
    upper = QPoly(_qbinom_coeffs(n - 1, k - 1))
    lower = QPoly(_qbinom_coeffs(n - 1, k)).shift(k)
    return (upper + lower).coeffs


def qbinom(n, k):
    """Gaussian binomial [n choose k]_q; zero outside 0 <= k <= n"""
    if n < 0 or k < 0 or k > n:
        return ZERO
    return QPoly(_qbinom_coeffs(n, k))


def q_integer(n):
    """[n]_q = 1 + q + ... + q^{n-1}"""
    return QPoly([1] * max(n, 0))


def q_pochhammer(n):
    """(q)_n = (1-q)(1-q^2)...(1-q^n)"""
    result = ONE
    for i in range(1, n + 1):
        result = result * (ONE - QPoly.monomial(i))
    return result


def qbinom_by_quotient(n, k):
    """(q)_n / ((q)_k (q)_{n-k}) by exact division"""
    if n < 0 or k < 0 or k > n:
        return ZERO
    return q_pochhammer(n).exact_div(q_pochhammer(k) * q_pochhammer(n - k))


def qcatalan(n):
    """MacMahon's q-Catalan number [2n choose n]_q / [n+1]_q"""
    return qbinom(2 * n, n).exact_div(q_integer(n + 1))


def _sum_range(*bounds):
    return range(0, max(max(bounds), 0) + 2)


# ---------------------------------------------------------------- closed forms


def catalan_qt(n):
    """C_n(q,t) = 1 + (1/[n]_q) sum_{i=1}^{n-1} t^i q^{i(i+1)} [n,i][n,i+1]"""
    if n < 0:
        raise PreconditionError(f"catalan_qt needs n >= 0, got {n}")
    total = QTPoly.constant(ONE)
    divisor = q_integer(n)
    for i in range(1, n):
        numerator = (qbinom(n, i) * qbinom(n, i + 1)).shift(i * (i + 1))
        try:
            total = total + QTPoly.t_power(i, numerator.exact_div(divisor))
        except ArithmeticError as e:
            raise IntegralityError(f"C_{n}(q,t): division by [{n}]_q left a remainder") from e
    return total


def fh_formula(m, n, complement=False):
    """Descent/major-index generating function of paths above (or dipping below) the axis"""
    if m < 0 or n < 0:
        raise PreconditionError(f"fh_formula needs m, n >= 0, got m={m}, n={n}")
    if m < n:
        raise PreconditionError(f"fh_formula needs m >= n, got m={m}, n={n}")
    total = QTPoly()
    for i in _sum_range(m, n):
        below = qbinom(m - 1, i - 1) * qbinom(n + 1, i + 1)
        bracket = below if complement else qbinom(m, i) * qbinom(n, i) - below
        total = total + QTPoly.t_power(i, bracket.shift(i * i))
    return total


def d_box_gf(m, n):
    """sum_i t^i q^{i^2} [n,i][m,i]: Durfee-square generating function of the m x n box"""
    total = QTPoly()
    for i in _sum_range(min(m, n)):
        total = total + QTPoly.t_power(i, (qbinom(n, i) * qbinom(m, i)).shift(i * i))
    return total


def dr_box_gf(m, n):
    """sum_i t^i q^{i(i+1)} [n-1,i][m+1,i+1]: Durfee-rectangle generating function of the box"""
    if n == 0:
        return QTPoly.constant(ONE)
    total = QTPoly()
    for i in _sum_range(m, n):
        total = total + QTPoly.t_power(i, (qbinom(n - 1, i) * qbinom(m + 1, i + 1)).shift(i * (i + 1)))
    return total


def thm_lopsided(m, n, ell, branch=None):
    """Partitions in the m x n box with all ranks >= 1 - ell (-n <= ell <= 1), t marking d

    The Catalan branch applies when ell <= m - n and the sum branch when ell >= m - n;
    branch forces one of them ("catalan" or "sum").
    """
    if m < 0 or n < 0:
        raise PreconditionError(f"thm_lopsided needs m, n >= 0, got m={m}, n={n}")
    if not -n <= ell <= 1:
        raise PreconditionError(f"thm_lopsided needs -n <= ell <= 1, got n={n}, ell={ell}")
    if branch is None:
        branch = "catalan" if ell <= m - n else "sum"
    if branch == "catalan":
        if ell > m - n:
            raise PreconditionError(f"Catalan branch needs ell <= m - n, got m={m}, n={n}, ell={ell}")
        try:
            return catalan_qt(n + ell).substitute_t_shift(-ell)
        except ArithmeticError as e:
            raise IntegralityError(f"t -> t q^{-ell} produced a negative q-exponent") from e
    if branch == "sum":
        if ell < m - n:
            raise PreconditionError(f"Sum branch needs ell >= m - n, got m={m}, n={n}, ell={ell}")
        total = QTPoly()
        for i in _sum_range(m, n + ell):
            bracket = qbinom(n + ell, i) * qbinom(m, i) - qbinom(n + ell - 1, i - 1) * qbinom(m + 1, i + 1)
            if bracket.is_zero():
                continue
            total = total + QTPoly.t_power(i, bracket.shift(i * (i - ell)))
        return total
    raise UnknownNameError(f"Unknown branch {branch!r}; use 'catalan' or 'sum'")


def _check_central(name, m, n, ell):
    if min(m, n, ell) < 0:
        raise PreconditionError(f"{name} needs m, n, ell >= 0, got m={m}, n={n}, ell={ell}")
    if n + ell < m:
        raise PreconditionError(f"{name} needs n + ell >= m, got m={m}, n={n}, ell={ell}")


def thm_central_dsq(m, n, ell):
    """Partitions in the box with all ranks >= 1 - ell (ell >= 0), t marking the Durfee square"""
    _check_central("thm_central_dsq", m, n, ell)
    total = QTPoly()
    for i in _sum_range(m, n + ell):
        bracket = qbinom(n, i) * qbinom(m, i) - (
            qbinom(n + ell - 1, i - 1) * qbinom(m - ell + 1, i + 1)
        ).shift(ell)
        total = total + QTPoly.t_power(i, bracket.shift(i * i))
    return total


def thm_central_drect(m, n, ell):
    """Same family as thm_central_dsq, t marking the Durfee rectangle"""
    _check_central("thm_central_drect", m, n, ell)
    if n == 0:
        # the 0-column box holds only the empty partition
        return QTPoly.constant(ONE)
    total = QTPoly()
    for i in _sum_range(m, n + ell):
        bracket = qbinom(n - 1, i) * qbinom(m + 1, i + 1) - (
            qbinom(n + ell, i) * qbinom(m - ell, i + 1)
        ).shift(ell + 1)
        total = total + QTPoly.t_power(i, bracket.shift(i * (i + 1)))
    return total


def thm_box_t1(m, n, ell):
    """[m+n, m] - q^{ell+1} [m+n, m-ell-1]"""
    _check_central("thm_box_t1", m, n, ell)
    return qbinom(m + n, m) - qbinom(m + n, m - ell - 1).shift(ell + 1)


def combined_t1(n, ell):
    """Area generating function of the n x n box with all ranks >= 1 - ell, any integer ell"""
    if n < 0:
        raise PreconditionError(f"combined_t1 needs n >= 0, got {n}")
    if ell <= -n:
        # every nonempty partition in the box has a rank <= n - 1 < 1 - ell
        return ONE
    if ell <= 1:
        return thm_lopsided(n, n, ell).at_t1()
    return thm_box_t1(n, n, ell)


def keith_km(m, n, ell):
    """Peak statistics (hdes, hmaj) over paths with n U and m D steps staying above y = -ell"""
    if min(m, n, ell) < 0:
        raise PreconditionError(f"keith_km needs m, n, ell >= 0, got m={m}, n={n}, ell={ell}")
    if n + ell < m - 1:
        raise PreconditionError(f"keith_km needs n + ell >= m - 1, got m={m}, n={n}, ell={ell}")
    total = QTPoly()
    for i in _sum_range(m, n + ell + 1):
        bracket = qbinom(n, i) * qbinom(m, i) - qbinom(n + ell + 1, i) * qbinom(m - ell - 1, i)
        total = total + QTPoly.t_power(i, bracket.shift(i * i))
    return total


def lgv_product(m, n, ell, i, intersecting=True):
    """Closed form for intersecting (or nonintersecting) Durfee-arm/leg path pairs"""
    crossing = (qbinom(m + ell - 1, i - 1) * qbinom(n - ell + 1, i + 1)).shift(ell)
    if intersecting:
        return crossing
    return qbinom(n, i) * qbinom(m, i) - crossing


def rr_box(m, n):
    """Ranks in {0,-1} inside the m x n box, t marking d"""
    if m < 0 or n < 0:
        raise PreconditionError(f"rr_box needs m, n >= 0, got m={m}, n={n}")
    top = 2 * m - 1 if m <= n else 2 * n
    total = QTPoly()
    for k in range(0, n + 1):
        total = total + QTPoly.t_power(k, qbinom(top - k + 1, k).shift(k * k))
    return total


def ex83_box(m, n):
    """Ranks in {-1,-2} inside the m x n box (m, n >= 2), t marking d"""
    if m < 2 or n < 2:
        raise PreconditionError(f"ex83_box needs m, n >= 2, got m={m}, n={n}")
    top = 2 * m - 2 if m <= n + 1 else 2 * n + 1
    total = QTPoly()
    for k in range(0, n):
        total = total + QTPoly.t_power(k, qbinom(top - k, k).shift(k * (k + 1)))
    return total


# ---------------------------------------------------------------- limits


def _geometric(step, order):
    """1/(1 - q^step) truncated"""
    return QPoly([1 if j % step == 0 else 0 for j in range(order + 1)])


def _inv_product(indices, order):
    result = ONE
    for i in indices:
        result = (result * _geometric(i, order)).truncate(order)
    return result


def _inv_poch(i, order):
    """1/(q)_i truncated"""
    return _inv_product(range(1, i + 1), order)


def _plane_pair(i, order):
    """1/((1-q)(1-q^2)^2...(1-q^i)^2(1-q^{i+1})), i.e. (1-q)/((q)_i (q)_{i+1})"""
    return ((ONE - QPoly.monomial(1)) * _inv_poch(i, order) * _inv_poch(i + 1, order)).truncate(order)


def _t_sum(order, term, offset):
    """sum_i t^i term(i), stopping once the leading q-power offset(i) passes the order"""
    total = QTPoly()
    i = 0
    while offset(i) <= order:
        total = total + QTPoly.t_power(i, term(i).truncate(order))
        i += 1
    return total


def _series(p, order):
    return TruncatedSeries.from_qtpoly(p.truncate_q(order), order)


def lim_cq1(order):
    """prod_{i>=2} 1/(1-q^i)"""
    return _series(QTPoly.constant(_inv_product(range(2, order + 1), order)), order)


def lim_cn(order):
    """prod_{i>=1, i != 2} 1/(1-q^i)"""
    return _series(QTPoly.constant(_inv_product([i for i in range(1, order + 1) if i != 2], order)), order)


def lim_cn_sum(order):
    """1 + sum_{i>=1} q^{i^2}/((1-q)(1-q^2)^2...(1-q^i)^2(1-q^{i+1}))"""
    total = _t_sum(order, lambda i: _plane_pair(i, order).shift(i * i), lambda i: i * i)
    return _series(QTPoly.constant(total.at_t1()), order)


def lim_cn_split(order):
    """Even/odd number of ones split of the part-2-free generating function"""
    one_minus_q = ONE - QPoly.monomial(1)
    total = ONE
    i = 1
    while i * i <= order:
        even = (one_minus_q * _inv_poch(i, order) * _inv_poch(i, order)).shift(i * i)
        odd = _plane_pair(i, order).shift(i * i + i + 1)
        total = (total + even + odd).truncate(order)
        i += 1
    return _series(QTPoly.constant(total), order)


def lopsided_limit(order, b):
    """sum over partitions with all ranks >= b, t marking d (b >= 0)"""
    if b < 0:
        raise PreconditionError(f"lopsided limit needs b >= 0, got {b}")
    total = _t_sum(order, lambda i: _plane_pair(i, order).shift(i * (i + b)), lambda i: i * (i + b) if i else 0)
    return _series(total, order)


def lim_cqt(order):
    """lim C_n(q,t) = 1 + sum t^i q^{i(i+1)} / ((1-q)(1-q^2)^2...(1-q^{i+1}))"""
    return lopsided_limit(order, 1)


def central_t1_mlimit(order, m, ell):
    """At most m parts, all ranks >= 1 - ell, by area (m > ell >= 0)"""
    if not m > ell >= 0:
        raise PreconditionError(f"Need m > ell >= 0, got m={m}, ell={ell}")
    value = _inv_poch(m, order) - _inv_poch(m - ell - 1, order).shift(ell + 1)
    return _series(QTPoly.constant(value.truncate(order)), order)


def ab_limit(order, ell):
    """prod_{i != ell+1} 1/(1-q^i)"""
    if ell < 0:
        raise PreconditionError(f"Need ell >= 0, got {ell}")
    return _series(
        QTPoly.constant(_inv_product([i for i in range(1, order + 1) if i != ell + 1], order)), order
    )


def drect_mlimit(order, m, ell):
    """At most m parts, all ranks >= 1 - ell, t marking dr"""
    if m < 0 or ell < 0:
        raise PreconditionError(f"Need m, ell >= 0, got m={m}, ell={ell}")

    def term(i):
        bracket = qbinom(m + 1, i + 1) - qbinom(m - ell, i + 1).shift(ell + 1)
        return (_inv_poch(i, order) * bracket).shift(i * (i + 1))

    return _series(_t_sum(order, term, lambda i: i * (i + 1)), order)


def drect_limit(order, ell):
    """(1 - q^{ell+1}) sum t^i q^{i(i+1)} / ((q)_i (q)_{i+1})"""
    if ell < 0:
        raise PreconditionError(f"Need ell >= 0, got {ell}")
    factor = ONE - QPoly.monomial(ell + 1)

    def term(i):
        return (factor * _inv_poch(i, order) * _inv_poch(i + 1, order)).shift(i * (i + 1))

    return _series(_t_sum(order, term, lambda i: i * (i + 1)), order)


def main_mlimit(order, m, ell):
    """At most m parts, all ranks >= 1 - ell, t marking d; the i = 0 term is the empty partition"""
    if m < 0 or ell < 0:
        raise PreconditionError(f"Need m, ell >= 0, got m={m}, ell={ell}")

    def term(i):
        bracket = qbinom(m, i) - ((ONE - QPoly.monomial(i)) * qbinom(m - ell + 1, i + 1)).shift(ell)
        return (_inv_poch(i, order) * bracket).shift(i * i)

    return _series(_t_sum(order, term, lambda i: i * i), order)


def main_limit(order, ell):
    """sum t^i q^{i^2} ((1 - q^{i+1}) - q^ell (1 - q^i)) / ((q)_i (q)_{i+1})"""
    if ell < 0:
        raise PreconditionError(f"Need ell >= 0, got {ell}")

    def term(i):
        numerator = (ONE - QPoly.monomial(i + 1)) - (ONE - QPoly.monomial(i)).shift(ell)
        return (numerator * _inv_poch(i, order) * _inv_poch(i + 1, order)).shift(i * i)

    return _series(_t_sum(order, term, lambda i: i * i), order)


def rr1_limit(order):
    """sum t^k q^{k^2} / (q)_k"""
    return _series(_t_sum(order, lambda k: _inv_poch(k, order).shift(k * k), lambda k: k * k), order)


def zero_minus_a_limit(order, a):
    """sum t^k q^{k^2} prod_{j<=k} (1 + q^{aj}) / prod_{j<=k} (1 - q^{2j})"""
    if a < 1:
        raise PreconditionError(f"zero_minus_a_limit needs a >= 1, got {a}")

    def term(k):
        numerator = ONE
        for j in range(1, k + 1):
            numerator = (numerator * (ONE + QPoly.monomial(a * j))).truncate(order)
        return (numerator * _inv_product([2 * j for j in range(1, k + 1)], order)).shift(k * k)

    return _series(_t_sum(order, term, lambda k: k * k), order)


LIMIT_SERIES = {
    "eq-limCq1": (lim_cq1, ()),
    "eq-limCn": (lim_cn, ()),
    "eq-limCn-sum": (lim_cn_sum, ()),
    "eq-limCn-split": (lim_cn_split, ()),
    "limCqt": (lim_cqt, ()),
    "cor-lopsidedlimit": (lopsided_limit, ("b",)),
    "cor-central-t1-mlimit": (central_t1_mlimit, ("m", "ell")),
    "cor-AB-limit": (ab_limit, ("ell",)),
    "cor-drect-mlimit": (drect_mlimit, ("m", "ell")),
    "cor-drect-limit": (drect_limit, ("ell",)),
    "cor-main-mlimit": (main_mlimit, ("m", "ell")),
    "cor-mainlimit": (main_limit, ("ell",)),
    "rr1-limit": (rr1_limit, ()),
    "zero-minus-a-limit": (zero_minus_a_limit, ("a",)),
}


def canonical_name(name):
    """'eq:limCn' and 'eq_limCn' both become 'eq-limCn'"""
    return name.replace(":", "-").replace("_", "-")


def _lookup(table, name, what):
    key = canonical_name(name)
    if key not in table:
        raise UnknownNameError(f"Unknown {what} {name!r}; known: {', '.join(sorted(table))}")
    return table[key]


def limit_series(name, D, **params):
    """Truncated expansion of a named limit closed form"""
    if D < 0:
        raise PreconditionError(f"Truncation order must be >= 0, got {D}")
    builder, names = _lookup(LIMIT_SERIES, name, "limit series")
    missing = [p for p in names if p not in params]
    if missing:
        raise PreconditionError(f"{canonical_name(name)} needs parameters {missing}")
    return builder(D, **{p: params[p] for p in names})


FINITE_RANK = {
    "rr-box": (rr_box, ("m", "n")),
    "ex83-box": (ex83_box, ("m", "n")),
    "rr1-limit": (rr1_limit, ("D",)),
    "zero-minus-a-limit": (zero_minus_a_limit, ("D", "a")),
}


def finite_rank_gf(name, **params):
    """Generating functions for ranks confined to a finite set"""
    builder, names = _lookup(FINITE_RANK, name, "finite-rank formula")
    missing = [p for p in names if p not in params]
    if missing:
        raise PreconditionError(f"{canonical_name(name)} needs parameters {missing}")
    args = [params[p] for p in names]
    return builder(*args)


def rank_parity_closed_form(D):
    """sum_n sum_{lambda in n x n box} t^{#odd ranks} u^{#even ranks} z^n, to z-order D"""
    if D < 0:
        raise PreconditionError(f"Truncation order must be >= 0, got {D}")
    variables = ("z", "t", "u")

    def var(name):
        return TruncatedSeries.variable(name, variables, D)

    z, t, u = var("z"), var("t"), var("u")
    numerator = 1 - (t - 1) * z
    radicand = numerator * (1 - (u - 1) * z) * (1 + (u - 1) * (t - 1) * z * z - (t + u + 2) * z)
    result = numerator * radicand.inv_sqrt()
    logger.debug(f"rank parity series to z^{D}: {len(result.coeffs)} terms")
    return result.check_integral()


def product_exponents(f, D):
    """Integers s_1..s_D with f = prod (1 - q^i)^{-s_i} mod q^{D+1}"""
    if isinstance(f, TruncatedSeries):
        coeffs = f.univariate() if len(f.variables) == 1 else f.to_qtpoly().at_t1().coeffs
    else:
        coeffs = QPoly.lift(f).coeffs
    h = [coeffs[j] if j < len(coeffs) else 0 for j in range(D + 1)]
    if h[0] != 1:
        raise PreconditionError(f"product_exponents needs constant term 1, got {h[0]}")
    s = []
    for i in range(1, D + 1):
        si = h[i]
        s.append(si)
        if si > 0:
            for _ in range(si):
                for j in range(D, i - 1, -1):
                    h[j] -= h[j - i]
        elif si < 0:
            for _ in range(-si):
                for j in range(i, D + 1):
                    h[j] += h[j - i]
    return tuple(s)
