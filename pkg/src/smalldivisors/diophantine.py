"""Diophantine certificates for frequency vectors by exhaustive lattice scan.

A vector alpha in R^d satisfies the (C, tau) small-divisor condition when

    |sum_i alpha_i p_i| > C * (max_i |p_i|)^(-tau)

for every nonzero integer vector p.  Only finite radii are checkable, so a
certificate records the minimum of the weighted margin

    margin(p) = |p . alpha| * (max_i |p_i|)^tau

over the box |p|_inf <= N, together with the minimizing point.  The scan is
exhaustive in the following sense: points far from the resonance hyperplane
p . alpha = 0 are pruned only when a proven lower bound on their margin
already exceeds the running minimum, so the reported minimum equals the
minimum over the full box.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

RESONANCE_THRESHOLD = 1e-14   # |p.alpha| below this counts as exact resonance
CF_OVERFLOW_BOUND = 1e12      # partial quotient above this: effectively rational
_DENSE_SCAN_LIMIT = 4_000_000  # box sizes up to this are enumerated directly


class ResonanceError(ValueError):
    """Some scanned lattice point annihilates alpha to working precision."""

    def __init__(self, witness: tuple[int, ...], value: float):
        self.witness = witness
        self.value = value
        super().__init__(f"rational resonance at p={witness}, |p.alpha|={value:.3e}")


@dataclass(frozen=True)
class FrequencyVector:
    """Real frequency vector (angles per unit time)."""

    components: tuple[float, ...]

    def __post_init__(self):
        comps = tuple(float(c) for c in self.components)
        if len(comps) < 1:
            raise ValueError("need at least one component")
        if not all(math.isfinite(c) for c in comps):
            raise ValueError("components must be finite")
        object.__setattr__(self, "components", comps)

    @property
    def dim(self) -> int:
        return len(self.components)

    def as_array(self) -> np.ndarray:
        return np.array(self.components, dtype=float)

    def rationally_independent(self, radius: int,
                               threshold: float = RESONANCE_THRESHOLD) -> bool:
        """True when k . alpha != 0 for every nonzero |k|_inf <= radius."""
        try:
            check_diophantine(self, C=0.0 + 1e-300, tau=1.0, N=radius,
                              resonance_threshold=threshold)
        except ResonanceError:
            return False
        return True


def _as_frequency(alpha) -> FrequencyVector:
    if isinstance(alpha, FrequencyVector):
        return alpha
    if isinstance(alpha, (int, float)):
        return FrequencyVector((float(alpha),))
    return FrequencyVector(tuple(alpha))


@dataclass(frozen=True)
class DiophantineCertificate:
    """Result of a finite-radius scan; holds iff worst_margin > C."""

    C: float
    tau: float
    radius: int
    worst_point: tuple[int, ...]
    worst_margin: float

    @property
    def holds(self) -> bool:
        return self.worst_margin > self.C

    def to_json_dict(self) -> dict:
        return {
            "C": self.C,
            "tau": self.tau,
            "radius": self.radius,
            "worst_point": list(self.worst_point),
            "worst_margin": self.worst_margin,
            "holds": self.holds,
        }


@dataclass(frozen=True)
class ContinuedFraction:
    """Partial quotients [a0; a1, ...] and convergents p_k / q_k."""

    partial_quotients: tuple[int, ...]
    convergents: tuple[tuple[int, int], ...]
    effectively_rational: bool = False


def _canonical_mask(points: np.ndarray) -> np.ndarray:
    """Select the representative of each {p, -p} pair: first nonzero
    coordinate positive."""
    n = points.shape[0]
    decided = np.zeros(n, dtype=bool)
    keep = np.zeros(n, dtype=bool)
    for ax in range(points.shape[1]):
        col = points[:, ax]
        keep |= (~decided) & (col > 0)
        decided |= col != 0
    return keep


def _margins(points: np.ndarray, alpha: np.ndarray, tau: float,
             resonance_threshold: float) -> np.ndarray:
    dots = np.abs(points @ alpha)
    if dots.size and float(np.min(dots)) < resonance_threshold:
        bad = points[dots < resonance_threshold]
        order = np.lexsort(bad.T[::-1])
        witness = tuple(int(v) for v in bad[order[0]])
        raise ResonanceError(witness, float(np.min(dots)))
    weights = np.max(np.abs(points), axis=1).astype(float) ** tau
    return dots * weights


def _reduce_min(points: np.ndarray, margins: np.ndarray):
    """(margin, point) with exact-tie break on lexicographically smallest point."""
    m = float(np.min(margins))
    tied = points[margins == m]
    order = np.lexsort(tied.T[::-1])
    return m, tuple(int(v) for v in tied[order[0]])


def _scan_dense(alpha: np.ndarray, tau: float, N: int, resonance_threshold: float):
    d = alpha.size
    axes = [np.arange(-N, N + 1)] * d
    points = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, d)
    points = points[np.any(points != 0, axis=1)]
    points = points[_canonical_mask(points)]
    return _reduce_min(points, _margins(points, alpha, tau, resonance_threshold))


def _scan_strips(alpha: np.ndarray, tau: float, N: int, resonance_threshold: float):
    """Exhaustive-equivalent scan for boxes too large to enumerate.

    Pivot on the largest |alpha_i|.  For fixed remaining coordinates q the
    margin of (q, p_piv) is at least |alpha_piv| * w where w is the distance
    of p_piv to the resonance value -(q . alpha_rest) / alpha_piv, because
    the weight (max |p_i|)^tau is >= 1.  Hence only p_piv within
    running_min / |alpha_piv| of the resonance value can improve the
    minimum, and those candidates are enumerated exactly.
    """
    d = alpha.size
    piv = int(np.argmax(np.abs(alpha)))
    apiv = alpha[piv]
    if apiv == 0.0:
        raise ResonanceError(tuple(int(v == piv) for v in range(d)), 0.0)
    rest_axes = [ax for ax in range(d) if ax != piv]

    best_m, best_p = math.inf, None

    def absorb(points):
        nonlocal best_m, best_p
        if points.size == 0:
            return
        m, p = _reduce_min(points, _margins(points, alpha, tau, resonance_threshold))
        if m < best_m or (m == best_m and (best_p is None or p < best_p)):
            best_m, best_p = m, p

    # pivot axis alone
    axis_pts = np.zeros((N, d), dtype=np.int64)
    axis_pts[:, piv] = np.arange(1, N + 1)
    absorb(axis_pts)

    chunk = max(1, _DENSE_SCAN_LIMIT // (2 * N + 1))
    rest_iter = itertools.product(*[range(-N, N + 1) for _ in rest_axes])
    while True:
        block = list(itertools.islice(rest_iter, chunk))
        if not block:
            break
        q = np.array(block, dtype=np.int64)
        q = q[np.any(q != 0, axis=1)]
        if q.size == 0:
            continue
        # canonical half in the original coordinate order: the first nonzero
        # coordinate of the full vector lies among the rest axes whenever
        # q != 0 and piv is not axis 0; when piv == 0 the pivot coordinate
        # leads, so both half-spaces of q are needed and p_piv >= 1 decides.
        full_template = np.zeros((q.shape[0], d), dtype=np.int64)
        full_template[:, rest_axes] = q
        keep = _canonical_mask(full_template) if piv != 0 else np.ones(len(q), bool)
        q = q[keep]
        if q.size == 0:
            continue
        partial = q @ alpha[rest_axes]
        center = -partial / apiv
        # running minimum bounds the search window around the resonance line
        w = best_m / abs(apiv) + 1.0
        lo = np.ceil(center - w).astype(np.int64)
        hi = np.floor(center + w).astype(np.int64)
        counts = np.clip(hi - lo + 1, 0, None)
        if piv == 0:
            lo = np.maximum(lo, 1)  # canonical: leading coordinate positive
            counts = np.clip(hi - lo + 1, 0, None)
        total = int(counts.sum())
        if total == 0:
            continue
        rows = np.repeat(np.arange(len(q)), counts)
        offsets = np.concatenate([np.arange(c) for c in counts]) if total else []
        pvals = lo[rows] + offsets
        ok = np.abs(pvals) <= N
        rows, pvals = rows[ok], pvals[ok]
        pts = np.zeros((rows.size, d), dtype=np.int64)
        pts[:, rest_axes] = q[rows]
        pts[:, piv] = pvals
        pts = pts[np.any(pts != 0, axis=1)]
        absorb(pts)
    return best_m, best_p


def check_diophantine(alpha, C: float, tau: float, N: int,
                      resonance_threshold: float = RESONANCE_THRESHOLD
                      ) -> DiophantineCertificate:
    """Scan all nonzero |p|_inf <= N and certify worst margin vs C.

    Deterministic: ties are broken by the lexicographically smallest point
    among the scanned representatives (one of each {p, -p} pair, the one
    whose first nonzero coordinate is positive).
    """
    if C <= 0 or tau <= 0:
        raise ValueError("C and tau must be positive")
    if N < 1:
        raise ValueError("N must be >= 1")
    fv = _as_frequency(alpha)
    a = fv.as_array()
    if (2 * N + 1) ** fv.dim <= _DENSE_SCAN_LIMIT:
        margin, point = _scan_dense(a, tau, N, resonance_threshold)
    else:
        margin, point = _scan_strips(a, tau, N, resonance_threshold)
    return DiophantineCertificate(C=float(C), tau=float(tau), radius=int(N),
                                  worst_point=point, worst_margin=margin)


def continued_fraction(x: float, n_terms: int,
                       overflow_bound: float = CF_OVERFLOW_BOUND) -> ContinuedFraction:
    """Standard expansion x = [a0; a1, a2, ...] with convergents.

    Stops early when a partial quotient would exceed overflow_bound, which
    at double precision means the remainder is indistinguishable from zero;
    the result is then flagged effectively rational.
    """
    if not math.isfinite(x):
        raise ValueError("x must be finite")
    if n_terms < 1:
        raise ValueError("n_terms must be >= 1")
    quotients: list[int] = []
    convergents: list[tuple[int, int]] = []
    p_prev, q_prev = 1, 0
    p_cur, q_cur = 0, 1   # (p_{-1}, q_{-1}) = (1, 0), (p_{-2}, q_{-2}) = (0, 1)
    value = x
    truncated = False
    for i in range(n_terms):
        a = math.floor(value)
        frac = value - a
        if i > 0 and a > overflow_bound:
            truncated = True
            break
        quotients.append(int(a))
        p_cur, p_prev = a * p_prev + p_cur, p_cur
        q_cur, q_prev = a * q_prev + q_cur, q_cur
        p_cur, p_prev = p_prev, p_cur
        q_cur, q_prev = q_prev, q_cur
        convergents.append((int(p_prev), int(q_prev)))
        if frac == 0.0 or 1.0 / frac > overflow_bound:
            truncated = frac != 0.0 and i + 1 < n_terms
            break
        value = 1.0 / frac
    return ContinuedFraction(tuple(quotients), tuple(convergents),
                             effectively_rational=truncated)


def ratio_condition(alpha0: float, alpha1: float, C: float, tau: float, N: int,
                    resonance_threshold: float = RESONANCE_THRESHOLD
                    ) -> DiophantineCertificate:
    """Empirical constant for |m + n (alpha1/alpha0)| >= C' / |n|^tau.

    For each 0 < n <= N the nearest integer m to -n * ratio realizes the
    minimum over m, so C' = min_n |m + n ratio| * n^tau.  Returns the
    certificate with worst_point = (m, n); holds iff C' > C.

    Documented comparison with the full d=2 box scan: for every n the point
    (m, n) satisfies max(|m|, |n|) <= |n| * (|ratio| + 1), hence

        check(alpha).worst_margin <= |alpha0| * (|ratio| + 1)^tau * C'.
    """
    if alpha0 == 0.0:
        raise ValueError("alpha0 must be nonzero")
    if N < 1:
        raise ValueError("N must be >= 1")
    ratio = alpha1 / alpha0
    n = np.arange(1, N + 1, dtype=np.int64)
    m = -np.round(n * ratio).astype(np.int64)
    vals = np.abs(m + n * ratio)
    if float(np.min(vals)) < resonance_threshold:
        i = int(np.argmin(vals))
        raise ResonanceError((int(m[i]), int(n[i])), float(vals[i]))
    margins = vals * n.astype(float) ** tau
    best = float(np.min(margins))
    tied = np.flatnonzero(margins == best)
    i = int(tied[np.lexsort((n[tied], m[tied]))][0])
    return DiophantineCertificate(C=float(C), tau=float(tau), radius=int(N),
                                  worst_point=(int(m[i]), int(n[i])),
                                  worst_margin=best)


def tail_margin(x: float, N: int) -> float:
    """min over N/2 < n <= N of |m + n x| * n with m the nearest integer.

    Estimates liminf_n n * dist(n x, Z) (for the golden ratio this is the
    classical 1/sqrt(5)); restricting to the last octave discards the
    small-n transient that dominates the plain box minimum.
    """
    if N < 4:
        raise ValueError("N too small for a tail estimate")
    n = np.arange(N // 2 + 1, N + 1, dtype=np.int64)
    vals = np.abs(n * x - np.round(n * x))
    return float(np.min(vals * n))


@dataclass(frozen=True)
class ExponentFit:
    """OLS fit of log worst-margin against log radius over dyadic radii."""

    tau_hat: float
    C_hat: float
    radii: tuple[int, ...]
    margins: tuple[float, ...]


def estimate_exponent(alpha, N: int,
                      resonance_threshold: float = RESONANCE_THRESHOLD) -> ExponentFit:
    """Fit |p.alpha| ~ C * radius^(-tau) on the unweighted minima
    delta(R) = min over 0 < |p|_inf <= R of |p . alpha| at dyadic R."""
    if N < 10:
        raise ValueError("N must be >= 10")
    fv = _as_frequency(alpha)
    radii = []
    r = 2
    while r <= N:
        radii.append(r)
        r *= 2
    if radii[-1] != N:
        radii.append(N)
    margins = []
    for R in radii:
        # tau -> 0 limit of the weighted scan gives the unweighted minimum
        cert = check_diophantine(fv, C=1e-300, tau=1e-12, N=R,
                                 resonance_threshold=resonance_threshold)
        margins.append(cert.worst_margin)
    logr = np.log(np.array(radii, dtype=float))
    logm = np.log(np.array(margins, dtype=float))
    slope, intercept = np.polyfit(logr, logm, 1)
    return ExponentFit(tau_hat=float(-slope), C_hat=float(np.exp(intercept)),
                       radii=tuple(radii), margins=tuple(margins))
