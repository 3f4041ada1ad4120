"""Counting solutions of x^p + y^q = z^r (mod N) and the bound chain.

The exact count comes from an O(N^2) convolution of power histograms
(frequency tables of the maps x -> x^ell mod N) with integer arithmetic;
a Fourier-side evaluation through the exponential sums
S_k(ell) = sum_x exp(2 pi i k x^ell / N) serves as a floating cross-check.
verify_bound_chain evaluates the full inequality chain that forces a
nontrivial solution once N exceeds 32 p^2 q^2 r^2, and finds a witness.

Desk scale by design: moduli must fit in 31 bits so int64 vector math
stays exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidContext
from .modmath import PrimeModulus, as_prime_modulus
from .triplets import BSContext, BSTriplet, Residue

# Above this block size the histogram convolution switches from direct
# int64 accumulation to an FFT with a verified rounding margin.
_DIRECT_CONVOLUTION_LIMIT = 4096

_MAX_COUNTING_MODULUS = 1 << 31


def _counting_modulus(N) -> int:
    Nv = as_prime_modulus(N).value
    if Nv >= _MAX_COUNTING_MODULUS:
        raise ValueError(
            f"counting supports moduli below 2^31 (int64 exactness), got {Nv}"
        )
    return Nv


def _powmod_vector(values: np.ndarray, exponent: int, N: int) -> np.ndarray:
    """Elementwise values**exponent mod N, square-and-multiply in int64."""
    result = np.ones_like(values)
    base = values % N
    e = exponent
    while e:
        if e & 1:
            result = result * base % N
        base = base * base % N
        e >>= 1
    return result


@dataclass(frozen=True)
class PowerHistogram:
    """freq[a] = #{x in Z_N : x^ell = a (mod N)}."""

    ell: int
    modulus: int
    freq: np.ndarray

    @property
    def support_size(self) -> int:
        """Number of attained values, i.e. |image of x -> x^ell|."""
        return int(np.count_nonzero(self.freq))

    @property
    def nonzero_image_size(self) -> int:
        """|{a^ell : a nonzero}|, the power subgroup size."""
        return self.support_size - (1 if self.freq[0] else 0)


def power_histogram(ell: int, N) -> PowerHistogram:
    """Build the frequency table of x -> x^ell mod N in one pass."""
    if ell < 1:
        raise ValueError("ell must be positive")
    Nv = _counting_modulus(N)
    powers = _powmod_vector(np.arange(Nv, dtype=np.int64), ell, Nv)
    freq = np.bincount(powers, minlength=Nv).astype(np.int64)
    return PowerHistogram(ell=ell, modulus=Nv, freq=freq)


@dataclass(frozen=True)
class ExpSum:
    """S_k(ell) = sum_{x=0}^{N-1} exp(2 pi i k x^ell / N) with its provenance."""

    k: int
    ell: int
    modulus: int
    value: complex


def exp_sum(k: int, ell: int, N) -> ExpSum:
    """One exponential sum, evaluated termwise from the power histogram."""
    Nv = _counting_modulus(N)
    if not 0 <= k < Nv:
        raise ValueError(f"k must lie in [0, {Nv - 1}]")
    hist = power_histogram(ell, Nv)
    phases = np.exp((2j * math.pi * k / Nv) * np.arange(Nv))
    return ExpSum(k=k, ell=ell, modulus=Nv, value=complex(hist.freq @ phases))


def exp_sum_table(ell: int, N) -> np.ndarray:
    """All N exponential sums S_k(ell), k = 0..N-1, via one FFT."""
    Nv = _counting_modulus(N)
    hist = power_histogram(ell, Nv)
    # fft uses kernel exp(-2 pi i k a / N); conjugate flips the sign
    return np.conj(np.fft.fft(hist.freq.astype(np.float64)))


def count_power_matches(p: int, q: int, N) -> int:
    """#{(x, y) in Z_N^2 : x^p = y^q (mod N)}, exact."""
    Nv = _counting_modulus(N)
    fp = power_histogram(p, Nv).freq
    fq = power_histogram(q, Nv).freq
    return int(fp @ fq)


def count_trivial(p: int, q: int, r: int, N) -> int:
    """Exact number of solutions with x*y*z = 0 (mod N).

    Inclusion-exclusion over the zero coordinate: any two coordinates zero
    forces the third, so the three pairwise (and the triple) overlaps are
    all the single all-zero triple.
    """
    Nv = _counting_modulus(N)
    fp = power_histogram(p, Nv).freq
    fq = power_histogram(q, Nv).freq
    fr = power_histogram(r, Nv).freq
    x_zero = int(fq @ fr)  # y^q = z^r
    y_zero = int(fp @ fr)  # x^p = z^r
    # x^p + y^q = 0: pair f_p[a] with f_q[-a]
    z_zero = int(fp @ np.roll(fq[::-1], 1))
    return x_zero + y_zero + z_zero - 2


def _plain_int(N) -> int:
    return N.value if isinstance(N, PrimeModulus) else int(N)


def trivial_upper_bound(p: int, q: int, r: int, N) -> int:
    """Closed-form cap 1 + (min(q,r) + min(p,r) + min(p,q)) * (N-1)."""
    Nv = _plain_int(N)
    return 1 + (min(q, r) + min(p, r) + min(p, q)) * (Nv - 1)


def count_lower_bound(p: int, q: int, r: int, N) -> float:
    """The guaranteed floor N^2 - (2N)^(3/2) * p*q*r on the solution count."""
    Nv = _plain_int(N)
    return Nv * Nv - (2 * Nv) ** 1.5 * p * q * r


def _cyclic_convolution(fp: np.ndarray, fq: np.ndarray, N: int) -> np.ndarray:
    """Exact cyclic convolution of two integer histograms."""
    if N <= _DIRECT_CONVOLUTION_LIMIT:
        conv = np.zeros(N, dtype=np.int64)
        for a in np.flatnonzero(fp):
            conv += int(fp[a]) * np.roll(fq, a)
        return conv
    approx = np.fft.irfft(np.fft.rfft(fp) * np.fft.rfft(fq), n=N)
    conv = np.rint(approx).astype(np.int64)
    if np.max(np.abs(approx - conv)) > 1e-3:
        raise ArithmeticError("convolution rounding margin exceeded")
    return conv


@dataclass(frozen=True)
class SolutionCount:
    """Exact count of solutions, its Fourier estimate, and the trivial split."""

    total: int
    fourier: float
    trivial: int
    nontrivial: int


def count_solutions_exact(p: int, q: int, r: int, N) -> SolutionCount:
    """Exact #{(x,y,z) : x^p + y^q = z^r (mod N)} plus the trivial split.

    The count is sum over c of (f_p conv f_q)[c] * f_r[c] with integer
    histograms, O(N^2) time and O(N) space.
    """
    Nv = _counting_modulus(N)
    fp = power_histogram(p, Nv).freq
    fq = power_histogram(q, Nv).freq
    fr = power_histogram(r, Nv).freq
    conv = _cyclic_convolution(fp, fq, Nv)
    total = int(conv @ fr)
    trivial = count_trivial(p, q, r, Nv)
    return SolutionCount(
        total=total,
        fourier=count_solutions_fourier(p, q, r, Nv),
        trivial=trivial,
        nontrivial=total - trivial,
    )


def count_solutions_fourier(p: int, q: int, r: int, N) -> float:
    """Fourier-side count N^2 + (1/N) sum_{k>=1} S_k(p) S_k(q) conj(S_k(r))."""
    Nv = _counting_modulus(N)
    sp = exp_sum_table(p, Nv)
    sq = exp_sum_table(q, Nv)
    sr = exp_sum_table(r, Nv)
    tail = np.sum(sp[1:] * sq[1:] * np.conj(sr[1:]))
    return float(Nv * Nv + tail.real / Nv)


def count_solutions_bruteforce(p: int, q: int, r: int, N) -> int:
    """Reference O(N^3) triple loop; for cross-checks at tiny N only."""
    Nv = _counting_modulus(N)
    xp = [pow(x, p, Nv) for x in range(Nv)]
    yq = [pow(y, q, Nv) for y in range(Nv)]
    zr = [pow(z, r, Nv) for z in range(Nv)]
    count = 0
    for a in xp:
        for b in yq:
            c = (a + b) % Nv
            for d in zr:
                if c == d:
                    count += 1
    return count


@dataclass(frozen=True)
class ChainCheck:
    """One named inequality in the bound chain, with its operands."""

    name: str
    lhs: float
    rel: str
    rhs: float
    passed: bool

    def render(self) -> str:
        def num(v):
            return str(v) if isinstance(v, int) else f"{v:.6f}"

        status = "pass" if self.passed else "fail"
        return f"CHECK {self.name} {num(self.lhs)} {self.rel} {num(self.rhs)} {status}"


@dataclass(frozen=True)
class BoundChainReport:
    """Outcome of the nontrivial-solution bound chain for one context."""

    p: int
    q: int
    r: int
    N: int
    total: int
    trivial: int
    nontrivial: int
    lower_bound: float
    trivial_upper: int
    checks: list[ChainCheck] = field(default_factory=list)
    witness: BSTriplet | None = None

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def render(self) -> str:
        lines = [c.render() for c in self.checks]
        if self.witness is not None:
            w = self.witness
            lines.append(f"WITNESS {w.x.value} {w.y.value} {w.z.value}")
        return "\n".join(lines)


def _find_nontrivial_witness(p: int, q: int, r: int, N: int) -> BSTriplet | None:
    """Deterministic scan for a nontrivial solution: smallest (x, y, z)."""
    root_of = [0] * N  # smallest nonzero z with z^r = a, or 0 if none
    for z in range(N - 1, 0, -1):
        root_of[pow(z, r, N)] = z
    yq = [pow(y, q, N) for y in range(N)]
    for x in range(1, N):
        xp = pow(x, p, N)
        for y in range(1, N):
            z = root_of[(xp + yq[y]) % N]
            if z:
                return BSTriplet(Residue(x, N), Residue(y, N), Residue(z, N))
    return None


def verify_bound_chain(ctx: BSContext) -> BoundChainReport:
    """Evaluate the inequality chain guaranteeing a nontrivial solution.

    All comparisons involving the irrational (2N)^(3/2) term are decided
    in exact integer arithmetic by squaring; displayed operands may be
    floats but pass/fail never depends on floating point.
    """
    if not isinstance(ctx, BSContext):
        raise InvalidContext("verify_bound_chain needs a BSContext")
    p, q, r, N = ctx.p, ctx.q, ctx.r, ctx.N
    counts = count_solutions_exact(p, q, r, N)
    M = counts.total
    lower = count_lower_bound(p, q, r, N)
    tub = trivial_upper_bound(p, q, r, N)
    lin = 1 + (p + q + r) * N
    pqr = p * q * r
    sqrt_term = 7.0 * math.sqrt(N / 32.0) * N

    # M >= N^2 - (2N)^(3/2) pqr  <=>  (N^2 - M)^2 <= 8 N^3 (pqr)^2 when M < N^2
    gap = N * N - M
    count_above_lower = gap <= 0 or gap * gap <= 8 * N**3 * pqr * pqr
    checks = [
        ChainCheck("count-above-root-bound", M, ">=", lower, count_above_lower),
        # N^2 - (2N)^(3/2) pqr >= N^2/2  <=>  N >= 32 (pqr)^2
        ChainCheck(
            "root-bound-above-half-square", lower, ">=", N * N / 2.0,
            N >= 32 * pqr * pqr,
        ),
        ChainCheck(
            "count-above-half-square", M, ">=", N * N / 2.0, 2 * M >= N * N
        ),
        ChainCheck(
            "half-square-beats-linear", N * N / 2.0, ">", lin,
            N * N > 2 * lin,
        ),
        # 7 sqrt(N/32) N > 7 (p+q+r) N  <=>  N > 32 (p+q+r)^2
        ChainCheck(
            "root-term-beats-linear", sqrt_term, ">", 7 * (p + q + r) * N,
            N > 32 * (p + q + r) ** 2,
        ),
        # N^2/2 > 7 sqrt(N/32) N  <=>  8 N > 49
        ChainCheck(
            "half-square-beats-root-term", N * N / 2.0, ">", sqrt_term,
            8 * N > 49,
        ),
        ChainCheck(
            "scaled-linear-beats-linear", 7 * (p + q + r) * N, ">", lin,
            7 * (p + q + r) * N > lin,
        ),
        ChainCheck("count-beats-linear", M, ">", lin, M > lin),
        ChainCheck("count-beats-trivial-cap", M, ">", tub, M > tub),
    ]
    witness = _find_nontrivial_witness(p, q, r, N)
    return BoundChainReport(
        p=p, q=q, r=r, N=N,
        total=M,
        trivial=counts.trivial,
        nontrivial=counts.nontrivial,
        lower_bound=lower,
        trivial_upper=tub,
        checks=checks,
        witness=witness,
    )
