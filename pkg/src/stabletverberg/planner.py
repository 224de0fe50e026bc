"""Parameter arithmetic: which argument covers a given q, and which prime to use.

Given ``q`` and ``d`` the general argument needs a prime ``p = (a+1)q + 1``
large enough that the ``(n+1)``-fold join of a ``(p/q - c)``-connected
complex is ``p(d+1)``-connected for ``n = q(d+1)``.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from fractions import Fraction
from math import isqrt

from .errors import DomainError

ROUTES = ("prime_power_q", "prime_power_q_plus_1", "prime_2q_plus_1", "general")
PRIME_SEARCH_CAP = 10**7


def is_prime(n: int) -> bool:
    """Deterministic trial division."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _integer_root(n: int, k: int) -> int | None:
    r = round(n ** (1.0 / k))
    for c in (r - 1, r, r + 1):
        if c > 0 and c**k == n:
            return c
    return None


def prime_power_base(n: int) -> int | None:
    """The prime ``b`` with ``n = b^k`` (``k >= 1``), or None."""
    if n < 2:
        return None
    for k in range(n.bit_length(), 0, -1):
        root = isqrt(n) if k == 2 else _integer_root(n, k)
        if root is not None and root**k == n and is_prime(root):
            return root
    return None


def is_prime_power(n: int) -> bool:
    return prime_power_base(n) is not None


def route(q: int) -> str:
    """First applicable argument: q prime power, q+1 prime power, 2q+1 prime, else general."""
    if q < 2:
        raise DomainError(f"q must be >= 2, got {q}")
    if is_prime_power(q):
        return "prime_power_q"
    if is_prime_power(q + 1):
        return "prime_power_q_plus_1"
    if is_prime(2 * q + 1):
        return "prime_2q_plus_1"
    return "general"


def find_prime(q: int, lower: int) -> int:
    """Least prime ``p >= lower`` with ``p ≡ 1 (mod q)``."""
    if q < 2:
        raise DomainError(f"q must be >= 2, got {q}")
    p = max(lower, 2)
    p += (1 - p) % q
    while p <= PRIME_SEARCH_CAP:
        if is_prime(p):
            return p
        p += q
    raise RuntimeError(f"no prime ≡ 1 mod {q} found in [{lower}, {PRIME_SEARCH_CAP}]")


@dataclass(frozen=True)
class BoundCheck:
    ok: bool
    slack: Fraction  # join connectivity bound minus p(d+1)
    hypothesis_ok: bool  # p >= cq + (c-2) q^2 (d+1)
    join_bound: Fraction
    target: int


def join_bound_check(c: int, d: int, q: int, n: int, p: int) -> BoundCheck:
    """Evaluate ``(n+1)(p/q - c) + 2n >= p(d+1)`` exactly."""
    if c < 0 or d < 0 or q < 1:
        raise DomainError("need c >= 0, d >= 0 and q >= 1")
    if n < q * (d + 1):
        raise DomainError(f"need n >= q(d+1) = {q * (d + 1)}, got n={n}")
    bound = (n + 1) * (Fraction(p, q) - c) + 2 * n
    target = p * (d + 1)
    hyp = p >= c * q + (c - 2) * q * q * (d + 1)
    return BoundCheck(bound >= target, bound - target, hyp, bound, target)


def join_conn_bound(conn_sigma, n: int):
    """Connectivity bound ``(n+1) conn + 2n`` for the ``(n+1)``-fold join."""
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")
    return (n + 1) * conn_sigma + 2 * n


@dataclass(frozen=True)
class PlanReport:
    q: int
    d: int
    route: str
    p: int
    a: int
    c: int
    n: int
    bound_ok: bool
    slack: Fraction
    lower_bound: int
    margin_ok: bool  # a - 2 >= p/q - 4
    complex_conn: int  # a - 2, the connectivity the cyclic complex is meant to supply
    join_conn: int  # join bound using the integer connectivity a - 2
    needed_conn: int  # (p-1)(d+1) - 1, what the equivariant zero argument needs
    general_needed: bool

    def to_dict(self) -> dict:
        out = asdict(self)
        out["slack"] = str(self.slack)
        out["version"] = 1
        return out


def plan(q: int, d: int, c: int = 4) -> PlanReport:
    """Route ``q`` and pick the least usable prime for the general argument.

    The prime is computed for every route so that reports are uniform;
    ``general_needed`` tells whether a simpler argument already applies.
    """
    if q < 2 or d < 1:
        raise DomainError("need q >= 2 and d >= 1")
    tag = route(q)
    n = q * (d + 1)
    lower = c * q + (c - 2) * q * q * (d + 1)
    p = find_prime(q, max(lower, q + 1))
    while True:
        chk = join_bound_check(c, d, q, n, p)
        if chk.ok:
            break
        p = find_prime(q, p + 1)
    a = (p - 1) // q - 1
    margin = Fraction(a - 2) >= Fraction(p, q) - 4
    return PlanReport(
        q=q,
        d=d,
        route=tag,
        p=p,
        a=a,
        c=c,
        n=n,
        bound_ok=chk.ok,
        slack=chk.slack,
        lower_bound=lower,
        margin_ok=margin,
        complex_conn=a - 2,
        join_conn=join_conn_bound(a - 2, n),
        needed_conn=(p - 1) * (d + 1) - 1,
        general_needed=tag == "general",
    )
