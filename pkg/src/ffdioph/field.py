"""Finite field arithmetic for F_q, q = p^d.

Elements are plain integers in range(q).  For prime fields (d = 1) the
integer is the residue mod p.  For extension fields the integer encodes the
coordinate vector (c0, c1, ..., c_{d-1}) relative to the power basis of the
modulus as c0 + c1*p + ... + c_{d-1}*p^(d-1).  All arithmetic goes through a
shared ``Fq`` context object, which keeps element values hashable, cheap to
copy and safe to share between workers.
"""

from __future__ import annotations

from .errors import ParseError

# Built-in irreducible moduli (coefficient lists, low degree first) for the
# extension fields we support out of the box.  Anything else needs an
# explicit user-supplied modulus.
_BUILTIN_MODULI: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 2): (1, 1, 1),  # X^2 + X + 1 over F_2  -> F_4
    (2, 3): (1, 1, 0, 1),  # X^3 + X + 1 over F_2  -> F_8
    (3, 2): (1, 0, 1),  # X^2 + 1     over F_3  -> F_9
}


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _poly_mod_p(coeffs: list[int], p: int) -> list[int]:
    out = [c % p for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return out


def _poly_divmod_p(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    # schoolbook long division over F_p; b must be nonzero
    a = list(a)
    binv = pow(b[-1], p - 2, p)
    q = [0] * max(0, len(a) - len(b) + 1)
    while len(a) >= len(b) and any(a):
        if a[-1] == 0:
            a.pop()
            continue
        shift = len(a) - len(b)
        factor = (a[-1] * binv) % p
        q[shift] = factor
        for i, c in enumerate(b):
            a[shift + i] = (a[shift + i] - factor * c) % p
        while a and a[-1] == 0:
            a.pop()
    return _poly_mod_p(q, p), _poly_mod_p(a, p)


def is_irreducible_mod_p(coeffs: list[int], p: int) -> bool:
    """Trial-division irreducibility test for small moduli over F_p."""
    coeffs = _poly_mod_p(list(coeffs), p)
    deg = len(coeffs) - 1
    if deg < 1:
        return False
    if deg == 1:
        return True
    # try all monic divisors of degree 1 .. deg//2
    for ddeg in range(1, deg // 2 + 1):
        for idx in range(p**ddeg):
            div = []
            v = idx
            for _ in range(ddeg):
                div.append(v % p)
                v //= p
            div.append(1)  # monic
            _, rem = _poly_divmod_p(coeffs, div, p)
            if not rem:
                return False
    return True


class Fq:
    """Arithmetic context for the finite field with q = p^d elements.

    Instances are immutable after construction and safe to share between
    workers; every operation is a pure function of its arguments.
    """

    __slots__ = ("p", "d", "q", "modulus")

    def __init__(self, p: int, d: int = 1, modulus: tuple[int, ...] | None = None):
        if not is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if d < 1:
            raise ValueError("extension degree must be >= 1")
        if d == 1:
            if modulus is not None:
                raise ValueError("modulus only applies to extension fields (d > 1)")
        else:
            if modulus is None:
                modulus = _BUILTIN_MODULI.get((p, d))
                if modulus is None:
                    raise ValueError(
                        f"no built-in modulus for p={p}, d={d}; supply one explicitly"
                    )
            modulus = tuple(c % p for c in modulus)
            if len(modulus) != d + 1 or modulus[-1] == 0:
                raise ValueError(f"modulus must have degree exactly {d}")
            if not is_irreducible_mod_p(list(modulus), p):
                raise ValueError("modulus is not irreducible")
        self.p = p
        self.d = d
        self.q = p**d
        self.modulus = modulus

    # -- element codec -------------------------------------------------

    def coords(self, a: int) -> tuple[int, ...]:
        """Coordinates of an element relative to the power basis."""
        out = []
        for _ in range(self.d):
            out.append(a % self.p)
            a //= self.p
        return tuple(out)

    def from_coords(self, coords) -> int:
        cs = list(coords)
        if len(cs) > self.d:
            raise ValueError(f"too many coordinates for degree-{self.d} extension")
        val = 0
        for c in reversed(cs):
            val = val * self.p + (c % self.p)
        return val

    def elements(self) -> range:
        return range(self.q)

    # -- arithmetic ----------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.d == 1:
            return (a + b) % self.p
        p, val, mult = self.p, 0, 1
        for _ in range(self.d):
            val += ((a + b) % p) * mult
            a //= p
            b //= p
            mult *= p
        return val

    def neg(self, a: int) -> int:
        if self.d == 1:
            return (-a) % self.p
        p, val, mult = self.p, 0, 1
        for _ in range(self.d):
            val += ((-a) % p) * mult
            a //= p
            mult *= p
        return val

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.d == 1:
            return (a * b) % self.p
        if a == 0 or b == 0:
            return 0
        p = self.p
        ca, cb = list(self.coords(a)), list(self.coords(b))
        prod = [0] * (2 * self.d - 1)
        for i, x in enumerate(ca):
            if x:
                for j, y in enumerate(cb):
                    prod[i + j] = (prod[i + j] + x * y) % p
        # reduce mod the modulus polynomial
        mod = self.modulus
        for k in range(len(prod) - 1, self.d - 1, -1):
            c = prod[k]
            if c:
                prod[k] = 0
                for i in range(self.d):
                    prod[k - self.d + i] = (prod[k - self.d + i] - c * mod[i]) % p
        return self.from_coords(prod[: self.d])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no inverse in F_q")
        if self.d == 1:
            return pow(a, self.p - 2, self.p)
        # a^(q-2) by square-and-multiply
        result, base, e = 1, a, self.q - 2
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    # -- misc ----------------------------------------------------------

    def is_gf2(self) -> bool:
        return self.q == 2

    def spec_string(self) -> str:
        if self.d == 1:
            return f"p={self.p}"
        terms = []
        for e in range(self.d, -1, -1):
            c = self.modulus[e]
            if c == 0:
                continue
            if e == 0:
                terms.append(str(c))
            elif e == 1:
                terms.append("X" if c == 1 else f"{c}*X")
            else:
                terms.append(f"X^{e}" if c == 1 else f"{c}*X^{e}")
        return f"p={self.p},d={self.d},modulus={' + '.join(terms)}"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Fq)
            and self.p == other.p
            and self.d == other.d
            and self.modulus == other.modulus
        )

    def __hash__(self) -> int:
        return hash((self.p, self.d, self.modulus))

    def __repr__(self) -> str:
        return f"Fq({self.spec_string()!r})"


def parse_field_spec(text: str) -> Fq:
    """Parse a field spec string like ``p=2`` or ``p=2,d=2,modulus=X^2+X+1``."""
    from .poly import parse_poly_literal  # deferred: poly depends on field

    parts = [s.strip() for s in text.split(",")]
    kv: dict[str, str] = {}
    # the modulus itself may contain no commas, so plain splitting is safe
    for part in parts:
        if not part:
            continue
        if "=" not in part:
            raise ParseError(f"expected key=value in field spec, got {part!r}")
        k, v = part.split("=", 1)
        kv[k.strip()] = v.strip()
    if "p" not in kv:
        raise ParseError("field spec must set p")
    try:
        p = int(kv["p"])
        d = int(kv.get("d", "1"))
    except ValueError as exc:
        raise ParseError(f"bad integer in field spec: {exc}") from exc
    modulus = None
    if "modulus" in kv:
        base = Fq(p)
        mpoly = parse_poly_literal(kv["modulus"], base)
        modulus = mpoly.coeffs
    unknown = set(kv) - {"p", "d", "modulus"}
    if unknown:
        raise ParseError(f"unknown field spec keys: {sorted(unknown)}")
    return Fq(p, d, modulus)
