import itertools

import pytest

from prymcert.cover import validate
from prymcert.enumeration import FamilySignature, enumerate_signatures, rows_to_csv, scan


def brute_signatures(p, m, s_max):
    """All count vectors with total <= s_max meeting the column-sum rule, canonicalised."""
    found = set()
    for counts in itertools.product(range(s_max + 1), repeat=m):
        if sum(counts) > s_max:
            continue
        s1, rest = counts[0], counts[1:]
        if s1 == 0 or s1 % (2 * p) or any(c == 0 or c % p for c in rest):
            continue
        found.add((s1,) + tuple(sorted(rest, reverse=True)))
    return found


def test_examples():
    assert [s.counts for s in enumerate_signatures(5, 1, 25)] == [(10,), (20,)]
    assert [s.counts for s in enumerate_signatures(5, 2, 15)] == [(10, 5)]
    assert enumerate_signatures(5, 2, 14) == []


@pytest.mark.parametrize("p, m, s_max", [(3, 1, 20), (3, 2, 24), (3, 3, 27), (5, 2, 40), (5, 3, 35), (2, 3, 16)])
def test_completeness(p, m, s_max):
    sigs = enumerate_signatures(p, m, s_max)
    assert len({s.counts for s in sigs}) == len(sigs)
    assert {s.counts for s in sigs} == brute_signatures(p, m, s_max)
    assert [s.counts for s in sigs] == sorted(s.counts for s in sigs)


@pytest.mark.parametrize("p, m, s_max", [(5, 2, 30), (3, 3, 24), (7, 1, 28)])
def test_materialised_matrices_valid(p, m, s_max):
    for sig in enumerate_signatures(p, m, s_max):
        r = validate(sig.matrix())
        assert r.valid and r.totally_ramified and r.group_is_full_product


def test_signature_invariants():
    with pytest.raises(ValueError):
        FamilySignature(5, 1, (5,))
    with pytest.raises(ValueError):
        FamilySignature(5, 3, (10, 5, 10))
    with pytest.raises(ValueError):
        FamilySignature(5, 2, (10, 7))
    with pytest.raises(ValueError):
        enumerate_signatures(4, 1, 20)


def test_scan_examples():
    (row,) = scan(5, 1, 10)
    assert (row.genus, row.prym_dim, row.flat_total, row.verdict) == (36, 20, 12, "obstructed")
    assert {r.verdict for r in scan(3, 1, 12)} == {"not_applicable"}
    (row,) = scan(7, 1, 14)
    assert row.genus == 78
    assert row.prym_dim == sum(13 - n for n in range(1, 14, 2)) == 42
    assert row.verdict == "obstructed"


def test_csv_layout():
    text = rows_to_csv(scan(5, 2, 15))
    assert text.splitlines() == [
        "p,m,counts,s,genus,prym_dim,flat_total,verdict",
        "5,2,10;5,15,276,150,64,obstructed",
    ]
