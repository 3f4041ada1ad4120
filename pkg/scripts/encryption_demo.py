#!/usr/bin/env python3
"""End-to-end demo: generate keys, encrypt a message, decrypt it back.

Shows the three schemes side by side on the same plaintext and prints the
first ciphertext pairs so the randomization is visible across runs (fix
--seed to make runs identical).
"""

import argparse
import random

from bealschur.crypto import (
    decrypt_I,
    decrypt_II,
    decrypt_III,
    encrypt_I,
    encrypt_II,
    encrypt_III,
)
from bealschur.keygen import keygen_scheme1, serialize_key


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--message", default="beal-schur reference demo")
    args = parser.parse_args()
    rng = random.Random(args.seed)
    msg = args.message.encode()

    # moduli: 3 mod 4 primes with bit length not 1 mod 8, so two-root
    # blocks always disambiguate cleanly
    n66 = 2**65 + 131
    n57 = 2**56 + 97
    n74 = 2**73 + 291

    ct1 = encrypt_I(msg, (2, n66), (2, 2), rng)
    assert decrypt_I(ct1, (2, n66), (2, 2)) == msg
    print(f"scheme I : {len(ct1.pairs)} pairs, first x = {ct1.pairs[0][0]}")

    ct2 = encrypt_II(msg, (3, 3, 3), n57, rng)
    assert decrypt_II(ct2, (3, 3, 3), n57) == msg
    print(f"scheme II : {len(ct2.pairs)} pairs, first x = {ct2.pairs[0][0]}")

    contexts = [(2, 2, 2, n66), (3, 3, 3, n57), (2, 4, 8, n74)]
    third = len(msg) // 3
    partition = [third, third, len(msg) - 2 * third]
    split = ([2], [1, 3])
    ct3 = encrypt_III(msg, partition, contexts, split, rng)
    assert decrypt_III(ct3, contexts, split) == msg
    print(f"scheme III: {len(ct3.pairs)} pairs over {len(contexts)} contexts")

    key = keygen_scheme1(4, (18, 24), rng)
    print("\na generated KG1 public key:")
    print(serialize_key(key, "PUBLIC"), end="")


if __name__ == "__main__":
    main()
