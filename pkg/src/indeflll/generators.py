"""Deterministic instance generators.

Randomness comes from an explicit splitmix64 stream so that corpora
are reproducible bit-for-bit across platforms and languages; nothing
here touches the global random state.
"""

from fractions import Fraction

from .gram import GramMatrix, mat_identity

MASK64 = (1 << 64) - 1


class SplitMix64:
    """splitmix64: 64-bit state, one add and two xor-shift-multiplies
    per output (Steele, Lea, Flood; the java.util.SplittableRandom
    mixer).  Tiny, portable, and good enough for test corpora."""

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        """Uniform integer in [0, n) by rejection."""
        if n <= 0:
            raise ValueError("below() needs a positive bound")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % n

    def int_in(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi] inclusive."""
        return lo + self.below(hi - lo + 1)


def gen_random_symmetric(dim: int, bound: int, seed: int) -> GramMatrix:
    """Symmetric integral matrix with entries uniform in [-bound, bound]."""
    if dim < 1:
        raise ValueError("dim must be at least 1")
    if bound < 0:
        raise ValueError("bound must be non-negative")
    rng = SplitMix64(seed)
    rows = [[0] * dim for _ in range(dim)]
    for i in range(dim):
        for j in range(i, dim):
            v = rng.int_in(-bound, bound)
            rows[i][j] = rows[j][i] = v
    return GramMatrix(rows)


def _chain_block(dim: int, base: int) -> list[list[Fraction]]:
    """Tridiagonal chain of overlapping scaled [[2,1],[1,2]] blocks.

    With c = base/4: diagonal 2c, 2c, 2c*(3/4), ..., 2c*(3/4)^(d-2) and
    off-diagonal c*(3/4)^(i-1); every projected 2x2 block is the scaled
    [[2,1],[1,2]] whose orthogonalized norms sit at the 4/3 ratio.
    """
    c = Fraction(base, 4)
    rows = [[Fraction(0)] * dim for _ in range(dim)]
    rows[0][0] = 2 * c
    for i in range(1, dim):
        rows[i][i] = 2 * c * Fraction(3, 4) ** (i - 1)
    for i in range(dim - 1):
        s = c * Fraction(3, 4) ** i
        rows[i][i + 1] = rows[i + 1][i] = s
    return rows


def gen_worstcase(d: int) -> GramMatrix:
    """Already-reduced 2d-dimensional indefinite matrix maximizing the
    definite-block exponent: a positive 4/3-gap chain scaled by 16^(d-1)
    stacked against the negated chain scaled by 12^(d-1).

    Signature 0; the single indefinite block in the middle is a scaled
    diag(1, -1) and nothing moves under reduction.
    """
    if d < 2:
        raise ValueError("the worst-case family needs d >= 2")
    top = _chain_block(d, 16 ** (d - 1))
    bot = _chain_block(d, 12 ** (d - 1))
    n = 2 * d
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i in range(d):
        for j in range(d):
            rows[i][j] = top[i][j]
            rows[d + i][d + j] = -bot[i][j]
    out = GramMatrix(rows)
    if not out.is_integral():
        raise AssertionError("worst-case family must be integral")
    return out


def gen_random_unimodular(dim: int, steps: int, seed: int) -> list[list[int]]:
    """Product of `steps` random elementary moves: column translations
    with offsets in [-3, 3], column swaps, and sign flips.  Determinant
    is +-1 by construction."""
    if dim < 1:
        raise ValueError("dim must be at least 1")
    if steps < 0:
        raise ValueError("steps must be non-negative")
    rng = SplitMix64(seed)
    u = mat_identity(dim)
    if dim == 1:
        return u
    for _ in range(steps):
        kind = rng.below(4)
        if kind == 0:  # swap two columns
            i = rng.below(dim)
            j = rng.below(dim - 1)
            if j >= i:
                j += 1
            for r in range(dim):
                u[r][i], u[r][j] = u[r][j], u[r][i]
        elif kind == 1:  # negate a column
            i = rng.below(dim)
            for r in range(dim):
                u[r][i] = -u[r][i]
        else:  # col_j += tau * col_i, tau in [-3, 3] \ {0}
            i = rng.below(dim)
            j = rng.below(dim - 1)
            if j >= i:
                j += 1
            tau = rng.int_in(1, 3) * (1 if rng.below(2) else -1)
            for r in range(dim):
                u[r][j] += tau * u[r][i]
    return u


def gen_hyperbolic_stack(n: int, alphas: list[int]) -> GramMatrix:
    """Block-diagonal stack of n copies of [1] + [[0, a], [a, 0]].

    Dimension 3n; each copy contributes one extra positive eigenvalue,
    so the signature is n while no definite 2x2 block appears."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if len(alphas) != n:
        raise ValueError("need exactly one alpha per copy")
    if any(a == 0 for a in alphas):
        raise ValueError("hyperbolic cross terms must be nonzero")
    dim = 3 * n
    rows = [[0] * dim for _ in range(dim)]
    for k, a in enumerate(alphas):
        base = 3 * k
        rows[base][base] = 1
        rows[base + 1][base + 2] = a
        rows[base + 2][base + 1] = a
    return GramMatrix(rows)


# ---------------------------------------------------------------------------
# bundled sample instances (used by the comparison experiments)
# ---------------------------------------------------------------------------

#: Dense symmetric 10x10 with entries in [-100, 100]; the standing
#: example for comparing the absolute-value baseline against the
#: indefinite reduction.
SAMPLE_RANDOM_10 = GramMatrix([
    [44, 25, 45, 93, -71, -49, -69, -99, 3, -3],
    [25, -78, 47, 54, 99, 87, -52, 49, -66, -34],
    [45, 47, 78, 16, 50, 5, -29, 35, -37, 27],
    [93, 54, 16, -59, -34, 34, -81, -68, -43, 76],
    [-71, 99, 50, -34, 68, 80, 29, -77, 22, -90],
    [-49, 87, 5, 34, 80, 30, 53, 90, 20, -80],
    [-69, -52, -29, -81, 29, 53, 28, -61, 75, 80],
    [-99, 49, 35, -68, -77, 90, -61, -49, -66, 9],
    [3, -66, -37, -43, 22, 20, 75, -66, -56, 78],
    [-3, -34, 27, 76, -90, -80, 80, 9, 78, 74],
])

#: 10x10 with nine positive eigenvalues and one negative (signature 8,
#: the maximum for an indefinite matrix of this dimension).
SAMPLE_LARGE_SIGNATURE_10 = GramMatrix([
    [369, 146, -139, 35, -35, 69, -62, 16, 83, 0],
    [146, 327, -32, -66, -59, -48, -120, 83, 26, 0],
    [-139, -32, 376, 51, -33, -163, 67, -42, 37, 0],
    [35, -66, 51, 312, -124, -52, -157, -162, 20, 0],
    [-35, -59, -33, -124, 528, 1, 98, 40, 80, 0],
    [69, -48, -163, -52, 1, 221, -56, 109, -56, 0],
    [-62, -120, 67, -157, 98, -56, 365, -9, 90, 0],
    [16, 83, -42, -162, 40, 109, -9, 188, -42, 0],
    [83, 26, 37, 20, 80, -56, 90, -42, 121, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, -7396],
])


def gen_large_signature() -> GramMatrix:
    """The bundled signature-8 sample instance."""
    return SAMPLE_LARGE_SIGNATURE_10
