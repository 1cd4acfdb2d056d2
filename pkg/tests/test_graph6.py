"""graph6 codec against an independent decoder written from the format spec."""

from __future__ import annotations

import random

import pytest

from copwin.graph import Graph, GraphError, parse_graph6, write_graph6

from conftest import random_graph


def decode_oracle(record: str) -> tuple[int, set[tuple[int, int]]]:
    """Independent graph6 decoder: header byte n+63, column-major upper
    triangle packed into 6-bit groups, each group +63."""
    n = ord(record[0]) - 63
    bitstring = "".join(format(ord(ch) - 63, "06b") for ch in record[1:])
    edges = set()
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bitstring[k] == "1":
                edges.add((i, j))
            k += 1
    assert all(b == "0" for b in bitstring[k:])
    return n, edges


def encode_oracle(n: int, edges: set[tuple[int, int]]) -> str:
    bits = []
    for j in range(1, n):
        for i in range(j):
            bits.append("1" if (i, j) in edges or (j, i) in edges else "0")
    s = "".join(bits)
    s += "0" * (-len(s) % 6)
    return chr(n + 63) + "".join(
        chr(int(s[i : i + 6], 2) + 63) for i in range(0, len(s), 6)
    )


def test_spec_record_star():
    g = parse_graph6("D?{")
    assert g.n == 5
    assert set(g.edges()) == {(0, 4), (1, 4), (2, 4), (3, 4)}


def test_k1_encodes_to_at_sign():
    assert write_graph6(Graph.empty(1)) == "@"
    assert parse_graph6("@") == Graph.empty(1)


def test_write_matches_encode_oracle():
    rng = random.Random(7)
    for _ in range(200):
        n = rng.randint(1, 14)
        g = random_graph(rng, n, rng.uniform(0.1, 0.9))
        assert write_graph6(g) == encode_oracle(n, set(g.edges()))


def test_parse_matches_decode_oracle_and_roundtrips():
    rng = random.Random(8)
    for _ in range(200):
        n = rng.randint(1, 20)
        g = random_graph(rng, n, rng.uniform(0.05, 0.95))
        rec = write_graph6(g)
        n2, edges = decode_oracle(rec)
        assert n2 == n and edges == set(g.edges())
        assert parse_graph6(rec) == g


def test_write_injective_on_labeled_graphs():
    rng = random.Random(9)
    seen = {}
    for _ in range(300):
        g = random_graph(rng, 7, 0.5)
        rec = write_graph6(g)
        if rec in seen:
            assert seen[rec] == g
        seen[rec] = g


def test_optional_header_prefix():
    rec = write_graph6(Graph.from_edges(3, [(0, 1), (1, 2)]))
    assert parse_graph6(">>graph6<<" + rec) == parse_graph6(rec)


@pytest.mark.parametrize(
    "bad",
    [
        "",  # empty
        chr(33 + 63),  # n = 33 beyond capacity
        "D?",  # truncated body
        "D?{{",  # overlong body
        "@?",  # K1 takes no body bytes
        "B" + chr(63 + 0b000111),  # n=3 uses 3 bits; padding bits set
    ],
)
def test_malformed_records_rejected(bad):
    with pytest.raises(GraphError):
        parse_graph6(bad)


def test_nonzero_padding_rejected():
    # n=5 uses 10 bits: the second byte carries 2 padding bits that must be zero
    good = "D?{"
    corrupted = good[:2] + chr(ord(good[2]) + 1)
    with pytest.raises(GraphError):
        parse_graph6(corrupted)
