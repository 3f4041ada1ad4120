"""Acceptance suite: the eight exit criteria, one test per criterion.

Each test prints a single PASS line on success; tolerances are pinned
here and nowhere else.  Run with `pytest tests/test_acceptance.py -v -s`.
"""

import math
import random
import subprocess
import sys
import time

import numpy as np
import pytest

from bealschur.counting import (
    count_power_matches,
    count_solutions_exact,
    count_solutions_fourier,
    exp_sum_table,
    power_histogram,
    trivial_upper_bound,
    verify_bound_chain,
)
from bealschur.crypto import (
    decrypt_I,
    decrypt_II,
    decrypt_III,
    encrypt_I,
    encrypt_II,
    encrypt_III,
)
from bealschur.keygen import (
    assemble_keypair,
    keygen_scheme1,
    keygen_scheme2,
    parse_key,
    serialize_fields,
    serialize_key,
)
from bealschur.triplets import (
    BSContext,
    is_bs_triplet,
    is_indiscernible,
    is_intra_divisible,
    solve_real_beal,
)

from conftest import (
    PRIME_57_BIT,
    PRIME_66_BIT,
    PRIME_74_BIT,
    brute_force_count,
    sieve_primes,
    trial_division_prime,
)


def report(line):
    print(f"\n{line}")


def test_criterion_1_bound_chain_at_desk_scale():
    """Full inequality chain at the three smallest primes above 2048."""
    primes = [n for n in range(2049, 2070) if trial_division_prime(n)]
    assert primes == [2053, 2063, 2069]
    for N in primes:
        start = time.monotonic()
        ctx = BSContext.create(2, 2, 2, N)
        rep = verify_bound_chain(ctx)
        elapsed = time.monotonic() - start
        assert elapsed < 2.0, f"verify took {elapsed:.2f}s at N={N}"
        M = rep.total
        # exact integer comparisons, no tolerance:
        gap = N * N - M
        assert gap <= 0 or gap * gap <= 8 * N**3 * 64      # M >= N^2 - (2N)^1.5 * 8
        assert 2 * M >= N * N                              # M >= N^2 / 2
        assert N * N > 2 + 12 * N                          # N^2/2 > 1 + 6N
        assert M > 1 + 6 * N                               # M > 1 + 6N
        assert M > 1 + 6 * (N - 1)                         # M beats the trivial cap
        assert M > trivial_upper_bound(2, 2, 2, N)
        assert rep.all_passed
        w = rep.witness
        assert w is not None and w.nontrivial
        assert (pow(w.x.value, 2, N) + pow(w.y.value, 2, N)) % N == pow(w.z.value, 2, N)
    report("PASS criterion-1: bound chain exact at N=2053, 2063, 2069 (< 2 s each)")


def test_criterion_2_brute_force_equivalence():
    """Exact counter vs the O(N^3) triple loop on the full small grid."""
    exponents = (1, 2, 3, 4)
    checked = 0
    for N in sieve_primes(31):
        for p in exponents:
            for q in exponents:
                for r in exponents:
                    assert (
                        count_solutions_exact(p, q, r, N).total
                        == brute_force_count(p, q, r, N)
                    ), (p, q, r, N)
                    checked += 1
    report(f"PASS criterion-2: exact count equals brute force on {checked} grids")


def test_criterion_3_fourier_identity():
    """Fourier-side count rounds to the exact count everywhere it should."""
    exponents = (1, 2, 3, 4, 6)
    checked = 0
    for N in sieve_primes(101):
        for p in exponents:
            for q in exponents:
                for r in exponents:
                    exact = count_solutions_exact(p, q, r, N).total
                    fourier = count_solutions_fourier(p, q, r, N)
                    assert round(fourier) == exact, (p, q, r, N)
                    assert abs(fourier - exact) < 1e-3, (p, q, r, N)
                    checked += 1
    report(f"PASS criterion-3: round(fourier) == exact with residual < 1e-3 on {checked} grids")


def test_criterion_4_exponential_sum_suite():
    """Orthogonality, the product identity, and the power-sum bounds, N <= 499."""
    start = time.monotonic()
    exponents = (1, 2, 3, 4, 6)
    divisible_pairs = [
        (p, q) for p in (2, 3, 4, 6) for q in (2, 3, 4, 6)
        if p % q == 0 or q % p == 0
    ]
    for N in sieve_primes(499):
        ks = np.arange(N)
        kernel = np.exp(2j * np.pi / N * np.outer(ks, ks))  # kernel[k, w]
        sums_over_k = kernel.sum(axis=0)
        assert abs(sums_over_k[0] - N) < 1e-6
        if N > 2:
            assert np.max(np.abs(sums_over_k[1:])) < 1e-6

        tables = {ell: exp_sum_table(ell, N) for ell in exponents}
        hists = {ell: power_histogram(ell, N) for ell in exponents}

        for p in exponents:
            for q in exponents:
                lhs = np.sum(tables[p] * np.conj(tables[q]))
                rhs = N * count_power_matches(p, q, N)
                assert abs(lhs - rhs) < 1e-3, (p, q, N)

        for p, q in divisible_pairs:
            matches = int(hists[p].freq @ hists[q].freq)
            assert matches <= 1 + min(p, q) * (N - 1), (p, q, N)

        for p in (2, 3, 4, 6):
            tail = np.abs(tables[p][1:]) if N > 2 else np.abs(tables[p][1:2])
            if len(tail):
                peak = float(np.max(tail))
                assert peak <= math.sqrt(2 * N) * p + 1e-9, (p, N)
                assert peak * peak <= 2 * N * p * p + 1e-9, (p, N)
            image = hists[p].nonzero_image_size
            assert p * image >= N - 1, (p, N)
    elapsed = time.monotonic() - start
    assert elapsed < 60.0, f"suite took {elapsed:.1f}s"
    report(f"PASS criterion-4: exponential-sum suite over primes <= 499 in {elapsed:.1f}s")


CRYPTO_CONTEXTS = [
    (2, 2, 2, PRIME_66_BIT),
    (3, 3, 3, PRIME_57_BIT),
    (2, 4, 8, PRIME_74_BIT),
]


def test_criterion_5_crypto_roundtrips():
    """100 seeded roundtrips per scheme, lengths 0..4096, no silent failure."""
    # the scheme I context takes the multi-root branch: gcd(r, N-1) = 2
    assert math.gcd(2, PRIME_66_BIT - 1) > 1
    assert math.gcd(3, PRIME_57_BIT - 1) == 1
    lengths = random.Random(505).choices(range(4097), k=100)
    lengths[0], lengths[1] = 0, 4096

    for seed, size in enumerate(lengths):
        msg = random.Random(1_000_000 + seed).randbytes(size)
        rng = random.Random(2_000_000 + seed)
        ct = encrypt_I(msg, (2, PRIME_66_BIT), (2, 2), rng)
        assert decrypt_I(ct, (2, PRIME_66_BIT), (2, 2)) == msg, f"scheme I seed {seed}"

    for seed, size in enumerate(lengths):
        msg = random.Random(3_000_000 + seed).randbytes(size)
        rng = random.Random(4_000_000 + seed)
        ct = encrypt_II(msg, (2, 4, 8), PRIME_74_BIT, rng)
        assert decrypt_II(ct, (2, 4, 8), PRIME_74_BIT) == msg, f"scheme II seed {seed}"

    split = ([2], [1, 3])
    for seed, size in enumerate(lengths):
        msg = random.Random(5_000_000 + seed).randbytes(size)
        rng = random.Random(6_000_000 + seed)
        third = size // 3
        partition = [third, third, size - 2 * third]
        ct = encrypt_III(msg, partition, CRYPTO_CONTEXTS, split, rng)
        assert decrypt_III(ct, CRYPTO_CONTEXTS, split) == msg, f"scheme III seed {seed}"

    report("PASS criterion-5: 100 roundtrips per scheme (I, II, III), zero corruptions")


def test_criterion_6_key_generation():
    """100 KG1 + 100 KG2 keys: all invariants, bit-exact serialization."""
    for count, gen, scheme, hash_base in (
        (100, keygen_scheme1, "KG1", 10_000_000),
        (100, keygen_scheme2, "KG2", 20_000_000),
    ):
        for seed in range(count):
            key = gen(4, (18, 24), random.Random(hash_base + seed))
            ctx = key.context
            assert is_intra_divisible(ctx.p, ctx.q, ctx.r)
            assert is_indiscernible(ctx.N, ctx.triplet)
            assert is_bs_triplet(key.x, key.y, key.z, ctx)
            assert key.x % ctx.N and key.y % ctx.N and key.z % ctx.N
            pub_text = serialize_key(key, "PUBLIC")
            priv_text = serialize_key(key, "PRIVATE")
            pub = parse_key(pub_text)
            priv = parse_key(priv_text)
            assert assemble_keypair(pub, priv) == key
            assert serialize_key(assemble_keypair(pub, priv), "PUBLIC") == pub_text
            assert serialize_key(assemble_keypair(pub, priv), "PRIVATE") == priv_text
            if scheme == "KG1":
                assert set(pub.fields) == {"N", "z"}
            else:
                assert set(pub.fields) == {"p", "q", "r", "z"}
    report("PASS criterion-6: 200 generated keys valid and bit-exact through files")


def test_criterion_7_real_field_solver():
    """100 randomized admissible inputs with relative defect <= 1e-9."""
    rng = random.Random(7007)
    checked = 0
    while checked < 100:
        y = rng.uniform(1.1, 5.0) * rng.choice((1.0, 1.0, -1.0))
        z = rng.uniform(1.1, 5.0)
        p = rng.uniform(1.5, 7.0)
        q = rng.uniform(2.0, 7.0)
        r = rng.uniform(2.0, 7.0)
        if y < 0:
            q = float(rng.randrange(2, 8))  # negative base needs integer exponent
        try:
            radicand = z**r - (abs(y) ** q if y > 0 else y**int(q))
        except OverflowError:
            continue
        if radicand <= 1e-6:
            continue
        sol = solve_real_beal(y=y, z=z, p=p, q=q, r=r)
        assert sol.defect() <= 1e-9, (y, z, p, q, r)
        checked += 1
    report("PASS criterion-7: 100 real-field solutions with defect <= 1e-9")


def test_criterion_8_cli_determinism(tmp_path):
    """Identical seeded CLI invocations give byte-identical outputs."""
    pub = tmp_path / "s1.pub"
    priv = tmp_path / "s1.priv"
    pub.write_text(serialize_fields("I", "PUBLIC", {"r": 2, "N": PRIME_66_BIT}))
    priv.write_text(serialize_fields("I", "PRIVATE", {"p": 2, "q": 2}))
    msg = tmp_path / "msg.bin"
    msg.write_bytes(random.Random(88).randbytes(512))

    def run_all(tag):
        ct = tmp_path / f"ct.{tag}"
        out = tmp_path / f"out.{tag}"
        kpub = tmp_path / f"key.{tag}.pub"
        kpriv = tmp_path / f"key.{tag}.priv"
        results = []
        for args in (
            ["keygen", "--scheme", "kg1", "--max-exp", "4", "--prime-bits",
             "18..24", "--seed", "99", "--out-pub", str(kpub), "--out-priv", str(kpriv)],
            ["encrypt", "--scheme", "I", "--pub", str(pub), "--priv", str(priv),
             "--in", str(msg), "--out", str(ct), "--seed", "99"],
            ["decrypt", "--scheme", "I", "--pub", str(pub), "--priv", str(priv),
             "--in", str(ct), "--out", str(out)],
            ["verify", "--p", "2", "--q", "2", "--r", "2", "--modulus", "2069"],
            ["count", "--p", "2", "--q", "3", "--r", "6", "--modulus", "101", "--fourier"],
            ["sums", "--k", "5", "--ell", "4", "--modulus", "257"],
            ["root", "--c", "16", "--k", "4", "--modulus", "73", "--all", "--seed", "99"],
        ):
            proc = subprocess.run(
                [sys.executable, "-m", "bealschur.cli", *args],
                capture_output=True, cwd=tmp_path,
            )
            assert proc.returncode == 0, (args, proc.stderr)
            results.append(proc.stdout)
        results += [ct.read_bytes(), out.read_bytes(),
                    kpub.read_bytes(), kpriv.read_bytes()]
        assert out.read_bytes() == msg.read_bytes()
        return results

    assert run_all("a") == run_all("b")
    report("PASS criterion-8: seeded CLI runs byte-identical across processes")
