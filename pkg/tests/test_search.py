from math import gcd

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from sidonkit.constructions import NotCoprime, bose, singer
from sidonkit.core import NotSidon, SidonError, exhaustive_optimal, is_sidon, theorem1_holds
from sidonkit.search import (
    CacheCorrupt,
    KTooLarge,
    ParseError,
    SearchConfig,
    SearchRecord,
    best_k_window,
    bk_lower_bound,
    dilate,
    ingest_external,
    merge_tables,
    read_table,
    run_search,
    scan_set,
    write_table,
)

S2 = singer(2)


def brute_best_window(res, m, k):
    """Minimum over all cyclic windows of k consecutive residues, unwrapped."""
    r = sorted(res)
    n = len(r)
    best = None
    for i in range(n):
        w = [r[(i + j) % n] + (m if i + j >= n else 0) for j in range(k)]
        d = w[-1] - w[0]
        if best is None or d < best:
            best = d
    return best


def test_dilate_examples():
    assert dilate(S2, 1).residues == S2.residues
    assert dilate(S2, 2).residues == (0, 2, 6)
    assert oracles.perfect(dilate(S2, 2).residues, 7)
    neg = dilate(S2, 6)
    assert sorted((-a) % 7 for a in S2.residues) == list(neg.residues)
    with pytest.raises(NotCoprime):
        dilate(singer(4), 7)


def test_best_window_examples():
    d, w = best_k_window(S2, 2)
    assert d == 1 and w.elements == (0, 1)
    d, w = best_k_window(S2, 3)
    assert d == 3 and w.elements == (0, 1, 3)
    assert d == exhaustive_optimal(3)[0]
    with pytest.raises(KTooLarge):
        best_k_window(S2, 4)


@given(st.sampled_from([3, 4, 5, 7, 8, 9]), st.data())
def test_best_window_matches_bruteforce(q, data):
    s = singer(q)
    c = data.draw(st.integers(1, s.m - 1).filter(lambda c: gcd(c, s.m) == 1))
    k = data.draw(st.integers(1, len(s)))
    ds = dilate(s, c)
    d, w = best_k_window(ds, k)
    assert d == brute_best_window(ds.residues, ds.m, k)
    assert w.k == k and w.diameter == d and oracles.sidon(w.elements)


def test_scan_set_full_vs_brute():
    s = bose(7)
    table = scan_set(s, range(2, 8))
    units = [c for c in range(1, s.m) if gcd(c, s.m) == 1]
    for k, rec in table.items():
        ref = min(brute_best_window(dilate(s, c).residues, s.m, k) for c in units)
        assert rec.diameter == ref
        assert is_sidon(rec.ruler) and rec.ruler[-1] == rec.diameter


def test_half_dilations_equal_all():
    s = singer(11)
    units = np.array([c for c in range(1, s.m) if gcd(c, s.m) == 1])
    half = scan_set(s, range(2, 13), units[units <= s.m // 2])
    full = scan_set(s, range(2, 13), units)
    assert {k: r.diameter for k, r in half.items()} == {k: r.diameter for k, r in full.items()}
    assert {k: r.ruler for k, r in half.items()} == {k: r.ruler for k, r in full.items()}


def test_run_search_examples():
    t = run_search(SearchConfig(q_min=2, q_max=2, constructions=("singer",), k_min=3, k_max=3))
    assert t[3].diameter == 3
    t = run_search(SearchConfig(q_max=31, k_min=10, k_max=10))
    assert t[10].diameter <= 55 and theorem1_holds(10, t[10].diameter)
    assert run_search(SearchConfig(k_min=5, k_max=4)) == {}


def test_records_not_below_exhaustive():
    t = run_search(SearchConfig(q_max=13, k_min=1, k_max=8))
    for k, rec in t.items():
        assert rec.diameter >= exhaustive_optimal(k)[0]


def test_singer_full_window_bound():
    for q in (5, 7, 11, 13):
        d, _ = best_k_window(singer(q), q + 1)
        assert d <= q * q + q


def test_merge_monotone_and_commutative():
    cfg_a = SearchConfig(q_min=2, q_max=11, k_min=4, k_max=14)
    cfg_b = SearchConfig(q_min=12, q_max=23, k_min=4, k_max=14)
    a, b = run_search(cfg_a), run_search(cfg_b)
    whole = run_search(SearchConfig(q_min=2, q_max=23, k_min=4, k_max=14))
    assert merge_tables(a, b) == merge_tables(b, a) == whole
    for k in whole:
        if k in a:
            assert whole[k].diameter <= a[k].diameter


def test_sampled_dilations_reproducible():
    cfg = SearchConfig(q_min=2, q_max=13, k_min=3, k_max=10, dilations="sample", sample_size=5, seed=7)
    assert run_search(cfg) == run_search(cfg)


def test_cache_roundtrip_and_resume(tmp_path):
    path = tmp_path / "c.tsv"
    cfg = SearchConfig(q_min=2, q_max=9, k_min=3, k_max=9, cache_path=str(path))
    first = run_search(cfg)
    assert path.exists() and read_table(path) == first
    bigger = SearchConfig(q_min=2, q_max=13, k_min=3, k_max=9, cache_path=str(path))
    assert run_search(bigger) == run_search(SearchConfig(q_min=2, q_max=13, k_min=3, k_max=9))


def test_cache_corrupt(tmp_path):
    path = tmp_path / "c.tsv"
    write_table({4: SearchRecord(4, 6, (0, 1, 4, 6), "singer", 3, 13, 1, 0)}, path)
    text = path.read_text().replace("0 1 4 6", "0 1 2 6")
    path.write_text(text)
    with pytest.raises(CacheCorrupt):
        read_table(path)
    path.write_text("nonsense\n")
    with pytest.raises(CacheCorrupt):
        read_table(path)


def test_ingest(tmp_path):
    f = tmp_path / "r.txt"
    f.write_text("# comment\n0 1 3 7\n")
    t = ingest_external(f)
    assert list(t) == [4] and t[4].diameter == 7
    f.write_text("0 1 2\n")
    with pytest.raises(NotSidon) as e:
        ingest_external(f)
    assert e.value.line == 1
    f.write_text("")
    assert ingest_external(f) == {}
    f.write_text("0 1 3\n0 x 4\n")
    with pytest.raises(ParseError) as e:
        ingest_external(f)
    assert e.value.line == 2


def test_bk_decimal():
    assert bk_lower_bound(4, 6) == "1.250000"
    assert bk_lower_bound(9, 44) == f"{(81 - 44) / 27:.6f}"


def test_config_validation():
    with pytest.raises(SidonError):
        SearchConfig(dilations="some")
    with pytest.raises(SidonError):
        SearchConfig(workers=0)


def test_parallel_equals_serial():
    base = dict(q_min=2, q_max=17, k_min=3, k_max=18)
    assert run_search(SearchConfig(**base, workers=2)) == run_search(SearchConfig(**base))
