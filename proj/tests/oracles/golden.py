"""Independent reference values for the C++ unit tests.

Uses only hashlib and the `cryptography` package's ChaCha20, so none of the
project code is involved. Run: python3 tests/oracles/golden.py
"""
import hashlib
import struct

from cryptography.hazmat.primitives.ciphers import Cipher, algorithms

M64 = (1 << 64) - 1


def splitmix64(state):
    while True:
        state = (state + 0x9E3779B97F4A7C15) & M64
        z = state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & M64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & M64
        yield z ^ (z >> 31)


def derive_seed(*parts):
    d = hashlib.sha256(b"".join(struct.pack(">Q", p & M64) for p in parts)).digest()
    return int.from_bytes(d[-8:], "big")


def uniform(gen, bound):
    threshold = ((1 << 64) - bound) % bound
    while True:
        r = next(gen)
        if r >= threshold:
            return r % bound


def permutation(seed, rnd, roster):
    order = sorted(roster)
    gen = splitmix64(derive_seed(seed, rnd))
    for i in range(len(order) - 1, 0, -1):
        j = uniform(gen, i + 1)
        order[i], order[j] = order[j], order[i]
    return order


def mask(key_bytes, rnd, length):
    stream_key = hashlib.sha256(key_bytes + struct.pack(">Q", rnd & M64)).digest()
    enc = Cipher(algorithms.ChaCha20(stream_key, bytes(16)), mode=None).encryptor()
    ks = enc.update(bytes(8 * length))
    return list(struct.unpack("<%dQ" % length, ks))


def keygen(p, g, seed):
    # x uniform in [0, p-3) from big-endian splitmix64 bytes masked to the bit
    # length of p-3, rejection sampled, then shifted into [2, p-2].
    rng = p - 3
    bits = rng.bit_length()
    nbytes = (bits + 7) // 8
    gen = splitmix64(seed)
    while True:
        buf = b""
        while len(buf) < nbytes:
            buf += struct.pack(">Q", next(gen))
        x = int.from_bytes(buf[:nbytes], "big") & ((1 << bits) - 1)
        if x < rng:
            return x + 2, pow(g, x + 2, p)


if __name__ == "__main__":
    print("derive_seed(1, 0) =", hex(derive_seed(1, 0)))
    print("permutation(e=1, r=0, 0..8) =", permutation(1, 0, range(9)))
    print("permutation(e=1, r=1, 0..8) =", permutation(1, 1, range(9)))
    print("sha256(0x02) =", hashlib.sha256(b"\x02").hexdigest())
    key = hashlib.sha256(b"\x02").digest()
    print("mask(sha256(0x02), r=0, 4) =", [hex(w) for w in mask(key, 0, 4)])
    print("mask(sha256(0x02), r=1, 4) =", [hex(w) for w in mask(key, 1, 4)])
    p = (1 << 61) - 1
    print("keygen(23, 5, seed=7) =", keygen(23, 5, 7))
    for s in (1, 2):
        x, y = keygen(p, 3, s)
        print("keygen(2^61-1, 3, seed=%d) = private %d public %d" % (s, x, y))
    g = splitmix64(0)
    print("splitmix64(0) first 3 =", [hex(next(g)) for _ in range(3)])
