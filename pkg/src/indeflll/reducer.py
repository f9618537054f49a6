"""Lattice reduction for indefinite integral Gram matrices.

The main loop keeps an admissible prefix (scalar positions with nonzero
generalized GSO norm, plus fully orthogonal hyperbolic planes), scans
the tail for the first vector that is not a prefix zero, pulls it in
with a cyclic shift, and reduces it against the prefix.  Projected 2x2
blocks are driven by the binary-quadratic-form engines of
:mod:`indeflll.qform`; isotropic pairs are kept as hyperbolic planes
instead of being broken up.  All arithmetic is exact.

``reduce_baseline`` is the classic absolute-value variant (Simon-style
adaptation of LLL) used for comparisons; it fails fast on isotropic
orthogonalized vectors.
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import InternalInvariantError, IsotropicVectorError
from .gram import (
    AdmissibleTrace,
    GramMatrix,
    GsoState,
    auto_gso,
    local_potential,
    mat_det,
    mat_identity,
)
from .numerics import (
    Rational,
    ceil_mixed,
    cmp_with_sqrt,
    floor_mixed,
    nearest_int,
    sign,
)
from .qform import (
    BQForm,
    Transform2,
    apply as qf_apply,
    is_reduced as qf_is_reduced,
    reduce_definite,
    step_toward_reduced,
    _cycle_move,
)

IMPROPER_SWAP = Transform2(0, 1, 1, 0)  # (a, b, c) -> (c, b, a), det -1


def _gcd_int(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


@dataclass
class ReducerParams:
    """Knobs of the indefinite reduction.

    gamma0 is the quality factor in (0, 1) (default 99/100); gamma_h
    governs hyperbolic-plane ordering and must equal gamma0 or exactly
    1; max_extra bounds the cycle steps taken past the first reduced
    form (reduced-form cycles of large discriminants hide their short
    leading coefficients several steps in, so the default walk is 12);
    sign_strategy turns the sign-alternance heuristics on.
    """

    gamma0: Fraction = Fraction(99, 100)
    gamma_h: Fraction | None = None
    max_extra: int = 12
    sign_strategy: bool = True

    def __post_init__(self):
        self.gamma0 = Fraction(self.gamma0)
        if not (0 < self.gamma0 < 1):
            raise ValueError("gamma0 must lie strictly between 0 and 1")
        if self.gamma_h is None:
            self.gamma_h = self.gamma0
        else:
            self.gamma_h = Fraction(self.gamma_h)
            if self.gamma_h != self.gamma0 and self.gamma_h != 1:
                raise ValueError("gamma_h must equal gamma0 or be exactly 1")
        if self.max_extra < 0:
            raise ValueError("max_extra must be non-negative")


@dataclass
class ReductionStats:
    loop_iterations: int = 0
    position_reports: int = 0
    pair_reports: int = 0
    swaps: int = 0
    backward_steps: int = 0
    adherent_integrations: int = 0
    plane_moves: int = 0
    repairs: int = 0
    worthwhile_c_zero: int = 0
    potential_drops: int = 0
    potential_violations: int = 0


@dataclass
class ReductionResult:
    transform: list[list[int]]
    reduced: GramMatrix
    rank: int
    trace: AdmissibleTrace
    block_kinds: list[str]
    stats: ReductionStats
    params: ReducerParams

    def first_entry(self) -> Fraction:
        """First squared norm, or the first hyperbolic cross term."""
        if self.reduced.dim == 0:
            return Fraction(0)
        head = Fraction(self.reduced.rows[0][0])
        if head != 0 or self.reduced.dim < 2:
            return head
        return Fraction(self.reduced.rows[0][1])

    def sum_definite_exponent(self) -> int:
        """Sum over positions of the running definite-block count."""
        total = 0
        for p, kind in enumerate(self.block_kinds):
            if kind == "definite":
                total += self.rank - 1 - p
        return total

    def unit_diagonal_count(self) -> int:
        return sum(1 for i in range(self.reduced.dim) if abs(self.reduced.rows[i][i]) == 1)


class ReducerState:
    """Mutable working state: transform columns and the current Gram."""

    def __init__(self, gram: GramMatrix, params: ReducerParams):
        self.g_in = gram
        self.params = params
        self.d = gram.dim
        self.u = mat_identity(self.d)
        self.gc: list[list] = gram.copy_rows()
        self.stats = ReductionStats()
        self.gso: GsoState | None = None  # GSO of the current prefix
        self._pot_max_dim = 0
        self._pot_last: Fraction | None = Fraction(1)

    # -- elementary column operations (kept congruent on gc) --------------

    def col_addmul(self, dst: int, src: int, coef: int) -> None:
        """v_dst += coef * v_src."""
        if coef == 0 or dst == src:
            return
        for r in range(self.d):
            self.u[r][dst] += coef * self.u[r][src]
        gc = self.gc
        for i in range(self.d):
            gc[i][dst] = gc[i][dst] + coef * gc[i][src]
        row_dst, row_src = gc[dst], gc[src]
        for j in range(self.d):
            row_dst[j] = row_dst[j] + coef * row_src[j]

    def col_swap(self, i: int, j: int) -> None:
        if i == j:
            return
        for r in range(self.d):
            self.u[r][i], self.u[r][j] = self.u[r][j], self.u[r][i]
        gc = self.gc
        for r in range(self.d):
            gc[r][i], gc[r][j] = gc[r][j], gc[r][i]
        gc[i], gc[j] = gc[j], gc[i]

    def col_transform2(self, p: int, q: int, t: Transform2) -> None:
        """(v_p, v_q) <- (m11 v_p + m21 v_q, m12 v_p + m22 v_q)."""
        for r in range(self.d):
            a, b = self.u[r][p], self.u[r][q]
            self.u[r][p] = t.m11 * a + t.m21 * b
            self.u[r][q] = t.m12 * a + t.m22 * b
        gc = self.gc
        for i in range(self.d):
            a, b = gc[i][p], gc[i][q]
            gc[i][p] = t.m11 * a + t.m21 * b
            gc[i][q] = t.m12 * a + t.m22 * b
        rp, rq = gc[p], gc[q]
        for j in range(self.d):
            a, b = rp[j], rq[j]
            rp[j] = t.m11 * a + t.m21 * b
            rq[j] = t.m12 * a + t.m22 * b

    def cyclic_shift(self, dst: int, src: int) -> None:
        """(v_dst, ..., v_src) -> (v_src, v_dst, ..., v_{src-1})."""
        if dst == src:
            return
        for r in range(self.d):
            row = self.u[r]
            row[dst : src + 1] = [row[src]] + row[dst:src]
        gc = self.gc
        for r in range(self.d):
            row = gc[r]
            row[dst : src + 1] = [row[src]] + row[dst:src]
        gc[dst : src + 1] = [gc[src]] + gc[dst:src]

    def snapshot(self):
        return ([row[:] for row in self.u], [row[:] for row in self.gc])

    def restore(self, snap) -> None:
        self.u = [row[:] for row in snap[0]]
        self.gc = [row[:] for row in snap[1]]

    # -- views -------------------------------------------------------------

    def current_gram(self) -> GramMatrix:
        return GramMatrix(self.gc)

    def refresh_prefix_gso(self, prefix: int) -> GsoState:
        self.gso = auto_gso(self.current_gram(), prefix)
        return self.gso

    def star_product(self, gso: GsoState, j: int, pos: int) -> Fraction:
        """b(v_pos, star_j) against the current Gram."""
        row = self.gc[pos]
        acc = 0
        for m, n in enumerate(gso.star_num[j]):
            if n:
                acc += n * row[m]
        return Fraction(acc, gso.star_den[j])

    def raw_products(self, prefix: int, pos: int) -> list:
        return self.gc[pos][:prefix]

    def columns_match_pm(self, p: int, q: int, old_p: list, old_q: list) -> bool:
        """(v_p, v_q) equal to (old_p, old_q) up to independent signs."""
        col_p = [self.u[r][p] for r in range(self.d)]
        col_q = [self.u[r][q] for r in range(self.d)]
        same_p = col_p == old_p or col_p == [-x for x in old_p]
        same_q = col_q == old_q or col_q == [-x for x in old_q]
        return same_p and same_q


# ---------------------------------------------------------------------------
# size reduction / clean-up
# ---------------------------------------------------------------------------


def _cleanup_lambda(n1: Fraction, s: Fraction, n2: Fraction) -> int:
    """Shift count for the candidate against its scalar neighbor.

    Ordinary size reduction when the projected block is definite or
    degenerate; otherwise the window rule that keeps indefinite blocks
    reducible (with the all-boundary square case falling back to the
    nearest-integer choice).
    """
    disc = s * s - n1 * n2
    if disc <= 0:
        return nearest_int(-s / n1)
    if s == 0 and n1 + n2 == 0:
        return 0
    if n2 != 0 or cmp_with_sqrt(abs(s), 1, disc) != 0 or cmp_with_sqrt(abs(n1), 1, disc) != 0:
        if cmp_with_sqrt(abs(n1), 1, disc) > 0:
            return nearest_int(-s / n1)
        if n1 > 0:
            return floor_mixed(-s / n1, Fraction(1) / n1, disc)
        return ceil_mixed(-s / n1, Fraction(1) / n1, disc)
    return nearest_int(-s / n1)


def cleanup_size_reduce(
    state: ReducerState, pos: int, gso: GsoState | None = None
) -> tuple[list[Fraction], Fraction]:
    """Size-reduce the vector at `pos` against the prefix held in `gso`.

    The last prefix position, when scalar, is handled by the clean-up
    rule above (anticipating that the vector lands right after it); all
    earlier scalar positions get plain nearest-integer reduction and
    hyperbolic pairs get the pair rule on both cross coefficients.
    Afterwards, a prefix zero has its full integral coefficient vector
    subtracted, leaving it exactly orthogonal to the prefix.  Returns
    the final coefficient vector and residual norm of the vector.
    """
    gso = gso or state.gso
    kappa = gso.upto
    if kappa == 0:
        return [], Fraction(state.gc[pos][pos])
    last = kappa - 1
    handled_last = False
    if gso.is_scalar(last):
        n1 = gso.star_norms[last]
        s = state.star_product(gso, last, pos)
        raw = state.raw_products(kappa, pos)
        _, rnorm = gso.theta_and_residual_norm(raw, Fraction(state.gc[pos][pos]))
        n2 = rnorm + s * s / n1
        lam = _cleanup_lambda(n1, s, n2)
        if lam:
            state.col_addmul(pos, last, lam)
        handled_last = True
    for block in reversed(gso.blocks()):
        j = block.index
        if block.kind.value == "scalar":
            if handled_last and j == last:
                continue
            p = state.star_product(gso, j, pos)
            lam = nearest_int(p / gso.star_norms[j])
            if lam:
                state.col_addmul(pos, j, -lam)
        else:
            alpha = gso.cross[j]
            n_first = nearest_int(state.star_product(gso, j + 1, pos) / alpha)
            n_second = nearest_int(state.star_product(gso, j, pos) / alpha)
            if n_first:
                state.col_addmul(pos, j, -n_first)
            if n_second:
                state.col_addmul(pos, j + 1, -n_second)
    # a prefix zero is straightened out entirely
    raw = state.raw_products(kappa, pos)
    theta, rnorm = gso.theta_and_residual_norm(raw, Fraction(state.gc[pos][pos]))
    if rnorm == 0 and all(t.denominator == 1 for t in theta) and any(theta):
        for j, tj in enumerate(theta):
            if tj:
                state.col_addmul(pos, j, -int(tj))
        theta = [Fraction(0)] * kappa
    return theta, rnorm


# ---------------------------------------------------------------------------
# vector reduction
# ---------------------------------------------------------------------------


def _sign_target(gso: GsoState, prev: int) -> int | None:
    """Sign the next star norm should avoid: sign of the last scalar
    star norm strictly below `prev`, skipping hyperbolic planes."""
    i = prev - 1
    while i >= 0:
        if gso.is_scalar(i):
            return sign(gso.star_norms[i])
        i -= 1
    return None


def _block_data(
    state: ReducerState, k: int, rnorm: Fraction | None = None
) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    """(N1, S, N2, rnorm) of the projected block at 1-based (k-1, k)."""
    gso = state.gso
    prev, pos = k - 2, k - 1
    n1 = gso.star_norms[prev]
    s = state.star_product(gso, prev, pos)
    if rnorm is None:
        raw = state.raw_products(k - 1, pos)
        _, rnorm = gso.theta_and_residual_norm(raw, Fraction(state.gc[pos][pos]))
    n2 = rnorm + s * s / n1
    return n1, s, n2, rnorm


def _place_transformed_pair(state: ReducerState, k: int, t: Transform2) -> int:
    """Apply a block transform at (k-1, k) and run the placement tests.

    The new front vector is size-reduced against the shorter prefix,
    classified, and the pair is kept (front first, or swapped when the
    front is a prefix zero) unless it equals the old pair up to signs,
    in which case everything is rolled back.
    """
    prev, pos = k - 2, k - 1
    snap = state.snapshot()
    old_p = [snap[0][r][prev] for r in range(state.d)]
    old_q = [snap[0][r][pos] for r in range(state.d)]
    state.col_transform2(prev, pos, t)
    short = state.gso.truncated(prev)
    theta, rnorm = cleanup_size_reduce(state, prev, gso=short)
    is_gzero = rnorm == 0 and all(x.denominator == 1 for x in theta)
    if not is_gzero:
        if not state.columns_match_pm(prev, pos, old_p, old_q):
            state.stats.swaps += 1
            state.stats.backward_steps += 1
            return -1
        state.restore(snap)
        return +1
    state.col_swap(prev, pos)
    if not state.columns_match_pm(prev, pos, old_p, old_q):
        state.stats.swaps += 1
        state.stats.backward_steps += 1
        return -1
    state.restore(snap)
    return +1


def _lovasz_definite(state: ReducerState, k: int, n1: Fraction, s: Fraction, n2: Fraction) -> int:
    """Definite projected block: size-reduce, swap on a gamma0 gain.

    A strict sub-gamma0 improvement is also taken (counted as a repair)
    so that final definite blocks satisfy |a| <= |c| exactly; each such
    swap still strictly lowers the integer-valued potential, so the
    loop cannot cycle on them.
    """
    prev, pos = k - 2, k - 1
    lam = nearest_int(s / n1)
    n2_new = n2 - 2 * lam * s + lam * lam * n1
    if lam:
        state.col_addmul(pos, prev, -lam)
    if abs(n2_new) < abs(n1):
        if not (abs(n2_new) < state.params.gamma0 * abs(n1)):
            state.stats.repairs += 1
        state.col_swap(prev, pos)
        state.stats.swaps += 1
        state.stats.backward_steps += 1
        return -1
    return +1


def integrate_adherent(state: ReducerState, k: int) -> int:
    """Fold an adherent (isotropic residual, non-integral coefficients)
    vector into the prefix through the degenerate projected block.

    The rank-one 2x2 block is run down to a (0, 0, c) shape, which is a
    GCD computation on the two projected vectors; the lift shortens the
    prefix vector and leaves behind a combination that adheres further
    down, so the main loop keeps cascading until the leftover becomes a
    prefix zero.  Each pass divides the local determinant by at least 4.
    """
    gso = state.gso
    prev = k - 2
    if not gso.is_scalar(prev):
        raise ValueError("integrate_adherent requires a scalar neighbor position")
    n1, s, n2, rnorm = _block_data(state, k)
    if rnorm != 0:
        raise ValueError("integrate_adherent requires an adherent vector")
    raw = state.raw_products(k - 1, k - 1)
    theta, _ = gso.theta_and_residual_norm(raw, Fraction(state.gc[k - 1][k - 1]))
    if all(x.denominator == 1 for x in theta):
        raise ValueError("integrate_adherent rejects prefix zeroes")
    form = BQForm(n1, 2 * s, n2)
    _, t = reduce_definite(form)
    state.stats.adherent_integrations += 1
    change = _place_transformed_pair(state, k, t)
    if change != -1:
        raise InternalInvariantError("adherent integration produced a sign-trivial pair")
    return change


def _indefinite_candidates(
    form: BQForm,
    gamma0: Fraction,
    max_extra: int,
    want_sign: int | None,
) -> list[tuple[BQForm, Transform2]]:
    """Ordered transform candidates for a projected indefinite block.

    Unreduced input: step until reduced, remembering the point where
    the leading coefficient first halves (with the right sign under the
    sign strategy) as the preferred early exit; optionally swap leading
    and trailing coefficients to fix the sign of the first reduced
    form; then continue along the cycle for up to max_extra steps.
    Candidates worth applying come first: leading coefficient beating
    gamma0 (with the right sign), then the clear-a-zero-trailing rule,
    then reduced forms that at least do not grow the leading
    coefficient (they repair an unreduced block without raising the
    potential).  Reduced input: cycle steps only, gated on a strict
    gamma0 gain with the right sign.
    """
    # the engines are scale invariant: clear denominators once so the
    # walk below runs on integers (much cheaper exact arithmetic)
    lcm = 1
    for x in form.coeffs():
        den = x.denominator
        lcm = lcm * den // _gcd_int(lcm, den)
    if lcm != 1:
        form = form.scaled(lcm)
    a0 = abs(form.a)
    disc = form.disc

    def sign_ok(x: Fraction) -> bool:
        return want_sign is None or x == 0 or sign(x) != want_sign

    if qf_is_reduced(form):
        f, t = form, Transform2.identity()
        for _ in range(max_extra):
            move = _cycle_move(f)
            if move is None:
                break
            f, step = move
            t = t.compose(step)
            if abs(f.a) < gamma0 * a0 and sign_ok(f.a):
                return [(f, t)]
        return []

    # unreduced input: walk to the first reduced form, noting the escape
    f, t = form, Transform2.identity()
    escape: tuple[BQForm, Transform2] | None = None
    seen = set()
    budget = 4 * max(
        x.numerator.bit_length() + x.denominator.bit_length() for x in form.coeffs()
    ) + 64
    while not qf_is_reduced(f):
        if escape is None and 2 * abs(f.a) <= a0 and sign_ok(f.a) and f.coeffs() != form.coeffs():
            escape = (f, t)
        key = f.coeffs()
        if key in seen:
            break
        seen.add(key)
        f, step = step_toward_reduced(f)
        t = t.compose(step)
        budget -= 1
        if budget < 0:
            raise InternalInvariantError("projected block reduction exceeded its budget")
    if want_sign is not None and qf_is_reduced(f) and not sign_ok(f.a):
        c = f.c
        if c != 0 and abs(c) < gamma0 * a0 and 4 * c * c <= disc:
            f = qf_apply(f, IMPROPER_SWAP)
            t = t.compose(IMPROPER_SWAP)
    walk: list[tuple[BQForm, Transform2]] = []
    if escape is not None:
        walk.append(escape)
    walk.append((f, t))
    if qf_is_reduced(f):
        fc, tc = f, t
        for _ in range(max_extra):
            move = _cycle_move(fc)
            if move is None:
                break
            fc, step = move
            tc = tc.compose(step)
            walk.append((fc, tc))

    def gamma_gain(cand: BQForm) -> bool:
        return abs(cand.a) < gamma0 * a0 and sign_ok(cand.a)

    def clears_zero_tail(cand: BQForm) -> bool:
        return abs(cand.a) <= a0 and form.c == 0 and cand.c != 0

    first = [wt for wt in walk if gamma_gain(wt[0])]
    second = [wt for wt in walk if not gamma_gain(wt[0]) and clears_zero_tail(wt[0])]
    repair = sorted(
        (
            wt
            for wt in walk
            if qf_is_reduced(wt[0])
            and abs(wt[0].a) <= a0
            and not gamma_gain(wt[0])
            and not clears_zero_tail(wt[0])
        ),
        key=lambda wt: (abs(wt[0].a), 0 if sign_ok(wt[0].a) else 1),
    )
    return first + second + repair


def _vector_reduce(state: ReducerState, k: int, use_sign: bool, rnorm: Fraction | None = None) -> int:
    gso = state.gso
    prev = k - 2
    n1, s, n2, rnorm = _block_data(state, k, rnorm)
    disc_alg = s * s - n1 * n2
    if disc_alg < 0:
        return _lovasz_definite(state, k, n1, s, n2)
    if disc_alg == 0:
        return integrate_adherent(state, k)
    want = None
    if use_sign:
        want = _sign_target(gso, prev)
    form = BQForm(n1, 2 * s, n2)
    candidates = _indefinite_candidates(form, state.params.gamma0, state.params.max_extra, want)
    for cand, t in candidates:
        if _place_transformed_pair(state, k, t) == -1:
            if not (abs(cand.a) < state.params.gamma0 * abs(form.a)):
                if form.c == 0 and cand.c != 0:
                    state.stats.worthwhile_c_zero += 1
                else:
                    state.stats.repairs += 1
            return -1
    return +1


def vector_reduce_nosign(state: ReducerState, k: int, rnorm: Fraction | None = None) -> int:
    """Reduce the projected block at (k-1, k) without the sign strategy."""
    return _vector_reduce(state, k, use_sign=False, rnorm=rnorm)


def vector_reduce_sign(state: ReducerState, k: int, rnorm: Fraction | None = None) -> int:
    """Reduce the projected block at (k-1, k), steering the new leading
    star norm toward the sign opposite the previous scalar one."""
    return _vector_reduce(state, k, use_sign=True, rnorm=rnorm)


# ---------------------------------------------------------------------------
# hyperbolic plane handling
# ---------------------------------------------------------------------------


def plane_reduce(state: ReducerState, k: int, incoming_pair: bool) -> int:
    """Order hyperbolic planes against neighbors; returns the new k.

    Three configurations: a prefix plane followed by a reported vector,
    a scalar vector followed by a fresh plane, and two adjacent planes.
    On any move k is set to point before the block that moved back.
    """
    gamma_h = state.params.gamma_h
    state.stats.plane_moves += 1
    if not incoming_pair:
        # plane at (k-3, k-2) 0-based, reported vector at k-1
        p0, p1, v = k - 3, k - 2, k - 1
        cross = Fraction(state.gc[p0][p1])
        alpha = Fraction(state.gc[p0][v])
        beta = Fraction(state.gc[p1][v])
        norm = Fraction(state.gc[v][v])
        if alpha == 0 and beta != 0:
            state.col_swap(p0, p1)
            alpha, beta = beta, alpha
        if alpha != 0:
            state.cyclic_shift(p0, v)
            state.stats.backward_steps += 1
            return k - 2
        if abs(norm) < gamma_h * abs(cross):
            state.cyclic_shift(p0, v)
            state.stats.backward_steps += 1
            return k - 2
        return k + 1
    prefix_plane = k >= 3 and (k - 3) in state.gso.bad
    if prefix_plane:
        # planes at (k-3, k-2) and (k-1, k) 0-based
        alpha = Fraction(state.gc[k - 3][k - 2])
        beta = Fraction(state.gc[k - 1][k])
        if gamma_h * abs(alpha) > abs(beta):
            state.cyclic_shift(k - 3, k - 1)
            state.cyclic_shift(k - 2, k)
            state.stats.backward_steps += 1
            return k - 2
        return k + 2
    # scalar at k-2, plane at (k-1, k) 0-based
    norm = Fraction(state.gc[k - 2][k - 2])
    cross = Fraction(state.gc[k - 1][k])
    if gamma_h * abs(norm) <= abs(cross):
        return k + 2
    state.cyclic_shift(k - 2, k)
    state.cyclic_shift(k - 1, k)
    state.stats.backward_steps += 1
    return k + 1


# ---------------------------------------------------------------------------
# main loops
# ---------------------------------------------------------------------------


def _max_bits(gram: GramMatrix) -> int:
    bits = 1
    for row in gram.rows:
        for x in row:
            f = Fraction(x)
            bits = max(bits, f.numerator.bit_length(), f.denominator.bit_length())
    return bits


def _track_potential(state: ReducerState, prefix: int) -> None:
    if prefix < state._pot_max_dim:
        return
    pot = local_potential(state.gso.trace(), state.gso)
    if prefix > state._pot_max_dim:
        state._pot_max_dim = prefix
        state._pot_last = pot
        return
    if state._pot_last is not None:
        if pot > state._pot_last:
            state.stats.potential_violations += 1
        elif pot < state._pot_last:
            state.stats.potential_drops += 1
    state._pot_last = pot


def _finalize(state: ReducerState, rank: int) -> ReductionResult:
    gram_out = state.current_gram()
    check = state.g_in.congruence(state.u)
    if check != gram_out:
        raise InternalInvariantError("congruence lost: U^T G U differs from the working Gram")
    if abs(mat_det(state.u)) != 1:
        raise InternalInvariantError("transform is not unimodular")
    for i in range(rank, state.d):
        if any(gram_out.rows[i][j] != 0 for j in range(state.d)):
            raise InternalInvariantError(f"tail row {i} is not exactly zero")
    gso = auto_gso(gram_out, rank)
    blocks = gso.blocks()
    plane_members = set()
    for b in blocks:
        if b.kind.value == "hyperbolic":
            plane_members.add(b.index)
            plane_members.add(b.index + 1)
    kinds = []
    for p in range(rank - 1):
        if p in plane_members or (p + 1) in plane_members:
            kinds.append("hyperbolic-adjacent")
        elif sign(gso.star_norms[p]) == sign(gso.star_norms[p + 1]):
            kinds.append("definite")
        else:
            kinds.append("indefinite")
    return ReductionResult(
        transform=state.u,
        reduced=gram_out,
        rank=rank,
        trace=gso.trace(),
        block_kinds=kinds,
        stats=state.stats,
        params=state.params,
    )


def reduce(gram: GramMatrix, params: ReducerParams | None = None) -> ReductionResult:
    """Run the indefinite reduction on a symmetric integral Gram matrix.

    Output contract: the leading `rank` columns form an admissible
    Gram matrix whose scalar/scalar projected blocks are reduced binary
    forms, hyperbolic planes are exact anti-diagonal blocks orthogonal
    to their prefix, trailing rows and columns are identically zero and
    the congruence U^T G U equals the returned matrix exactly.
    """
    params = params or ReducerParams()
    if not gram.is_integral():
        raise ValueError("reduce expects an integral Gram matrix")
    d = gram.dim
    state = ReducerState(gram, params)
    if d == 0:
        return _finalize(state, 0)
    cap = 1000 + 80 * d * d * _max_bits(gram)
    k = 1
    rank = d
    while k <= d:
        state.stats.loop_iterations += 1
        if state.stats.loop_iterations > cap:
            raise InternalInvariantError(f"main loop exceeded {cap} iterations")
        prefix = k - 1
        state.refresh_prefix_gso(prefix)
        _track_potential(state, prefix)
        reported_pos = None
        reported_pair = None
        reported_rnorm = None
        for i in range(prefix, d):
            theta, rnorm = cleanup_size_reduce(state, i)
            if not (rnorm == 0 and all(x.denominator == 1 for x in theta)):
                reported_pos = i
                reported_rnorm = rnorm
                break
            if i > prefix and state.gc[i - 1][i] != 0:
                reported_pair = (i - 1, i)
                break
        if reported_pos is None and reported_pair is None:
            found = None
            for a in range(prefix, d):
                for b in range(a + 1, d):
                    if state.gc[a][b] != 0:
                        found = (a, b)
                        break
                if found:
                    break
            reported_pair = found
        if reported_pos is None and reported_pair is None:
            rank = prefix
            break
        if reported_pos is not None:
            state.stats.position_reports += 1
            state.cyclic_shift(prefix, reported_pos)
            if k == 1:
                k = 2
                continue
            if k >= 3 and (k - 3) in state.gso.bad:
                k = plane_reduce(state, k, incoming_pair=False)
            elif params.sign_strategy:
                k = k + vector_reduce_sign(state, k, reported_rnorm)
            else:
                k = k + vector_reduce_nosign(state, k, reported_rnorm)
        else:
            state.stats.pair_reports += 1
            i, j = reported_pair
            state.cyclic_shift(prefix, i)
            state.cyclic_shift(prefix + 1, j)
            if k == 1:
                k = 3
                continue
            k = plane_reduce(state, k, incoming_pair=True)
        k = max(1, k)
    return _finalize(state, rank)


def reduce_baseline(gram: GramMatrix, gamma0: Rational = Fraction(99, 100)) -> ReductionResult:
    """Classic LLL with absolute values around every squared-norm
    comparison (the Simon-style baseline).

    Standard Gram-Schmidt only: the first isotropic orthogonalized
    vector aborts the run with IsotropicVectorError.
    """
    gamma0 = Fraction(gamma0)
    if not (0 < gamma0 < 1):
        raise ValueError("gamma0 must lie strictly between 0 and 1")
    if not gram.is_integral():
        raise ValueError("reduce_baseline expects an integral Gram matrix")
    d = gram.dim
    params = ReducerParams(gamma0=gamma0)
    state = ReducerState(gram, params)
    if d == 0:
        return _finalize(state, 0)

    def standard_gso(upto: int) -> tuple[list[list[Fraction]], list[Fraction]]:
        rows = state.gc
        star: list[list[Fraction]] = []
        norms: list[Fraction] = []
        for i in range(upto):
            vec = [Fraction(0)] * upto
            vec[i] = Fraction(1)
            for j in range(len(star)):
                if norms[j] == 0:
                    raise IsotropicVectorError(j)
                p = sum((c * rows[i][m] for m, c in enumerate(star[j]) if c), Fraction(0))
                if p:
                    mu = p / norms[j]
                    for m in range(j + 1):
                        vec[m] -= mu * star[j][m]
            norm = Fraction(0)
            for a, xa in enumerate(vec):
                if xa:
                    norm += xa * sum((xb * rows[a][b] for b, xb in enumerate(vec) if xb), Fraction(0))
            star.append(vec)
            norms.append(norm)
        return star, norms

    cap = 1000 + 80 * d * d * _max_bits(gram)
    k = 2
    while k <= d:
        state.stats.loop_iterations += 1
        if state.stats.loop_iterations > cap:
            raise InternalInvariantError(f"baseline loop exceeded {cap} iterations")
        star, norms = standard_gso(k)
        pos = k - 1
        for j in range(k - 2, -1, -1):
            if norms[j] == 0:
                raise IsotropicVectorError(j)
            p = sum((c * state.gc[pos][m] for m, c in enumerate(star[j]) if c), Fraction(0))
            lam = nearest_int(p / norms[j])
            if lam:
                state.col_addmul(pos, j, -lam)
        n_prev = norms[k - 2]
        if n_prev == 0:
            raise IsotropicVectorError(k - 2)
        s = sum((c * state.gc[pos][m] for m, c in enumerate(star[k - 2]) if c), Fraction(0))
        proj = norms[k - 1] + s * s / n_prev
        if abs(proj) < gamma0 * abs(n_prev):
            state.col_swap(k - 2, k - 1)
            state.stats.swaps += 1
            k = max(2, k - 1)
        else:
            k += 1
    final_star, final_norms = standard_gso(d)
    if any(n == 0 for n in final_norms):
        raise IsotropicVectorError(final_norms.index(Fraction(0)))
    return _finalize(state, d)
