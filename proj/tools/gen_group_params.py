#!/usr/bin/env python3
"""Derives the Schnorr group parameters embedded in core/src/crypto/params.cc.

Every candidate is drawn from SHA-256 in counter mode over a public label, so
anyone can re-run this and check that the constants were not hand-picked.
"""
import hashlib
import sys

import gmpy2


def expand(label: str, bits: int) -> int:
    out = b""
    counter = 0
    while len(out) * 8 < bits:
        out += hashlib.sha256(label.encode() + counter.to_bytes(4, "big")).digest()
        counter += 1
    x = int.from_bytes(out, "big") >> (len(out) * 8 - bits)
    return x | (1 << (bits - 1))


def derive(label: str, pbits: int, qbits: int):
    q = int(gmpy2.next_prime(expand(label + "/q", qbits)))
    x = expand(label + "/p", pbits)
    p = x - (x % (2 * q)) + 1
    while not gmpy2.is_prime(p, 64) or p.bit_length() != pbits:
        p += 2 * q
    h = 2
    while True:
        g = pow(h, (p - 1) // q, p)
        if g != 1:
            break
        h += 1
    return p, q, g


if __name__ == "__main__":
    for label, pbits, qbits in [("cbdc-group-512-160", 512, 160), ("cbdc-group-2048-256", 2048, 256)]:
        p, q, g = derive(label, pbits, qbits)
        print(label)
        print("p", format(p, "x"))
        print("q", format(q, "x"))
        print("g", format(g, "x"))
        sys.stdout.flush()
