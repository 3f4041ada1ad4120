"""Beal-Schur congruence toolkit.

Exact and Fourier-analytic counting of solutions to x^p + y^q = z^r
(mod N), verification of the bound chain that guarantees nontrivial
solutions for indiscernible primes, and reference (non-production)
implementations of the associated encryption and key generation schemes.
"""

from .counting import (
    BoundChainReport,
    ExpSum,
    PowerHistogram,
    SolutionCount,
    count_lower_bound,
    count_power_matches,
    count_solutions_bruteforce,
    count_solutions_exact,
    count_solutions_fourier,
    count_trivial,
    exp_sum,
    exp_sum_table,
    power_histogram,
    trivial_upper_bound,
    verify_bound_chain,
)
from .crypto import (
    Ciphertext,
    block_capacity,
    decode_message,
    decrypt_I,
    decrypt_II,
    decrypt_III,
    encode_message,
    encrypt_I,
    encrypt_II,
    encrypt_III,
)
from .errors import BealSchurError
from .keygen import (
    KeyHalf,
    KeyPair,
    assemble_keypair,
    keygen_scheme1,
    keygen_scheme2,
    parse_key,
    serialize_key,
)
from .modmath import (
    PrimeModulus,
    Residue,
    all_kth_roots,
    as_prime_modulus,
    find_generator,
    is_probable_prime,
    kth_residue_test,
    kth_root_mod,
    mod_pow,
)
from .triplets import (
    BSContext,
    BSTriplet,
    ExponentTriplet,
    RealBealSolution,
    find_bs_pair,
    indiscernibility_threshold,
    is_bs_triplet,
    is_indiscernible,
    is_intra_divisible,
    solve_real_beal,
)

__version__ = "0.1.0"
