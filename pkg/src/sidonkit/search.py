"""Short rulers from dilations and cyclic windows of modular Sidon sets.

For a modular Sidon set X mod m and a unit c, the dilate cX is again
modular Sidon.  Any k cyclically consecutive residues of cX, translated
to start at 0 and unwrapped, form an integer Sidon set whose diameter is
the gap spanned by the window.  Minimizing over constructions, q, c and
window start gives an upper bound D_k >= s_k.

Only contiguous cyclic windows are searched.  Dilations c and m - c give
mirror-image windows, so only c <= m/2 is scanned.
"""

from __future__ import annotations

import csv
import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import gcd
from pathlib import Path
from typing import Iterable

import numpy as np

from .constructions import ModularSidonSet, NotCoprime, construct, prime_powers
from .core import NotSidon, SidonError, SidonSet, canonical, is_sidon, normalize, theorem1_holds
from .exact import sqrt_ratio_decimal
from .fields import is_prime

__all__ = [
    "KTooLarge",
    "CacheCorrupt",
    "ParseError",
    "SearchRecord",
    "SearchConfig",
    "dilate",
    "best_k_window",
    "scan_set",
    "merge_tables",
    "run_search",
    "ingest_external",
    "read_rulers",
    "write_table",
    "read_table",
    "bk_lower_bound",
    "TABLE_HEADER",
]

log = logging.getLogger(__name__)

TABLE_HEADER = ["k", "diameter", "construction", "q", "m", "dilation", "window_start", "ruler"]
FULL_SCAN_LIMIT = 300_000


class KTooLarge(SidonError):
    pass


class CacheCorrupt(SidonError):
    pass


class ParseError(SidonError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True, order=True)
class SearchRecord:
    # field order is the merge order: shortest, then canonical witness, then provenance
    k: int
    diameter: int
    ruler: tuple[int, ...]
    construction: str = ""
    q: int = 0
    m: int = 0
    dilation: int = 0
    window_start: int = 0

    def witness(self) -> SidonSet:
        return SidonSet(self.ruler)

    def bk_decimal(self, places: int = 6) -> str:
        return bk_lower_bound(self.k, self.diameter, places)

    def row(self) -> list[str]:
        return [
            str(self.k), str(self.diameter), self.construction, str(self.q), str(self.m),
            str(self.dilation), str(self.window_start), " ".join(map(str, self.ruler)),
        ]


def bk_lower_bound(k: int, diameter: int, places: int = 6) -> str:
    """(k^2 - D) / k^(3/2) = (k^2 - D) sqrt(k) / k^2, rendered exactly to ``places``."""
    return sqrt_ratio_decimal(k * k - diameter, k * k, k, places)


@dataclass(frozen=True)
class SearchConfig:
    q_min: int = 2
    q_max: int = 31
    constructions: tuple[str, ...] = ("singer", "bose", "ruzsa")
    k_min: int = 1
    k_max: int = 32
    dilations: str = "full"  # "full" | "sample"
    sample_size: int = 2000
    seed: int = 0
    workers: int = 1
    cache_path: str | None = None

    def __post_init__(self):
        if self.q_min > self.q_max and self.k_min <= self.k_max:
            raise SidonError("empty q range")
        if self.dilations not in ("full", "sample"):
            raise SidonError("dilations must be 'full' or 'sample'")
        if self.workers < 1 or self.sample_size < 1:
            raise SidonError("workers and sample_size must be positive")

    def shards(self) -> list[tuple[str, int]]:
        out = []
        for q in prime_powers(self.q_min, self.q_max):
            for name in self.constructions:
                if name == "ruzsa" and (not is_prime(q) or q == 2):
                    continue
                out.append((name, q))
        return out


def dilate(s: ModularSidonSet, c: int) -> ModularSidonSet:
    if gcd(c, s.m) != 1:
        raise NotCoprime(f"gcd({c}, {s.m}) != 1")
    return s.dilate(c)


def _window(sorted_res: list[int], m: int, start: int, k: int) -> tuple[int, ...]:
    n = len(sorted_res)
    base = sorted_res[start]
    out = []
    for i in range(start, start + k):
        v = sorted_res[i % n] + (m if i >= n else 0)
        out.append(v - base)
    return tuple(out)


def best_k_window(s: ModularSidonSet, k: int) -> tuple[int, SidonSet]:
    """Shortest window of k cyclically consecutive residues, unwrapped to integers."""
    n = len(s.residues)
    if k > n:
        raise KTooLarge(f"k={k} exceeds set size {n}")
    if k < 1:
        raise SidonError("k must be >= 1")
    res = sorted(s.residues)
    best = None
    for i in range(n):
        w = _window(res, s.m, i, k)
        key = (w[-1], canonical(SidonSet(w)).elements)
        if best is None or key < best[0]:
            best = (key, w)
    (diam, ruler), _ = best
    return diam, SidonSet(ruler)


def _dilations(m: int, cfg: SearchConfig, name: str, q: int) -> np.ndarray:
    cs = np.arange(1, m // 2 + 1, dtype=np.int64)
    cs = cs[np.gcd(cs, m) == 1]
    if cfg.dilations == "sample" or (m > FULL_SCAN_LIMIT and len(cs) > cfg.sample_size):
        rng = np.random.default_rng([cfg.seed, q, hash_name(name)])
        if len(cs) > cfg.sample_size:
            cs = np.sort(rng.choice(cs, size=cfg.sample_size, replace=False))
            cs = np.union1d(cs, [1])
    return cs


def hash_name(name: str) -> int:
    return sum((i + 1) * ord(ch) for i, ch in enumerate(name))


def scan_set(s: ModularSidonSet, ks: Iterable[int], dilations: np.ndarray | None = None) -> dict[int, SearchRecord]:
    """Best record per k over the given dilations of one modular set.

    All dilations are handled at once: row c of the matrix is the sorted
    dilate, extended by one period so cyclic windows become slices.
    """
    m, n = s.m, len(s.residues)
    if dilations is None:
        dilations = np.arange(1, m // 2 + 1, dtype=np.int64)
        dilations = dilations[np.gcd(dilations, m) == 1]
    base = np.asarray(s.residues, dtype=np.int64)
    out: dict[int, SearchRecord] = {}
    chunk = max(1, 4_000_000 // max(n, 1))
    for lo in range(0, len(dilations), chunk):
        cs = dilations[lo: lo + chunk]
        rows = np.sort((cs[:, None] * base[None, :]) % m, axis=1)
        ext = np.concatenate([rows, rows + m], axis=1)
        for k in ks:
            if k > n or k < 1:
                continue
            widths = ext[:, k - 1: k - 1 + n] - rows
            best = int(widths.min())
            cur = out.get(k)
            if cur is not None and cur.diameter < best:
                continue
            ri, si = np.nonzero(widths == best)
            for r, st in zip(ri.tolist(), si.tolist()):
                w = tuple(int(v) for v in ext[r, st: st + k] - ext[r, st])
                rec = SearchRecord(
                    k, best, canonical(SidonSet(w)).elements, s.construction, s.q, m, int(cs[r]), st
                )
                if cur is None or rec < cur:
                    cur = rec
            out[k] = cur
    return out


def merge_tables(*tables: dict[int, SearchRecord]) -> dict[int, SearchRecord]:
    """Per-k minimum; associative and commutative."""
    out: dict[int, SearchRecord] = {}
    for t in tables:
        for k, rec in t.items():
            if k not in out or rec < out[k]:
                out[k] = rec
    return dict(sorted(out.items()))


def _run_shard(args) -> tuple[tuple[str, int], dict[int, SearchRecord]]:
    name, q, cfg = args
    s = construct(name, q)
    cs = _dilations(s.m, cfg, name, q)
    ks = range(cfg.k_min, cfg.k_max + 1)
    table = scan_set(s, ks, cs)
    for rec in table.values():
        if not is_sidon(rec.ruler) or rec.ruler[-1] != rec.diameter or len(rec.ruler) != rec.k:
            raise AssertionError(f"bad witness from {name} q={q}: {rec}")
    return (name, q), table


def run_search(config: SearchConfig) -> dict[int, SearchRecord]:
    """Min-merged record table over every (construction, q) shard of the config.

    With ``cache_path`` set, the table and the list of finished shards are
    stored next to each other and a rerun skips finished shards.
    """
    if config.k_min > config.k_max:
        return {}
    table: dict[int, SearchRecord] = {}
    done: set[tuple[str, int]] = set()
    cache = Path(config.cache_path) if config.cache_path else None
    if cache is not None and cache.exists():
        table = read_table(cache)
        done = _read_shards(cache)
    todo = [sh for sh in config.shards() if sh not in done]
    jobs = [(name, q, config) for name, q in todo]
    if config.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            results = list(pool.map(_run_shard, jobs))
    else:
        results = [_run_shard(j) for j in jobs]
    for shard, part in results:
        table = merge_tables(table, part)
        done.add(shard)
        log.debug("shard %s q=%d done", *shard)
    if cache is not None:
        write_table(table, cache)
        _write_shards(cache, done)
    table = {k: r for k, r in table.items() if config.k_min <= k <= config.k_max}
    for rec in table.values():
        if not theorem1_holds(rec.k, rec.diameter):
            raise AssertionError(f"record below the s_k lower bound: {rec}")
    return table


def _shard_path(cache: Path) -> Path:
    return cache.with_name(cache.name + ".shards.json")


def _read_shards(cache: Path) -> set[tuple[str, int]]:
    p = _shard_path(cache)
    if not p.exists():
        return set()
    try:
        return {(n, int(q)) for n, q in json.loads(p.read_text())}
    except (ValueError, TypeError) as e:
        raise CacheCorrupt(f"{p}: {e}") from e


def _write_shards(cache: Path, done: set[tuple[str, int]]):
    _shard_path(cache).write_text(json.dumps(sorted([n, q] for n, q in done)))


def write_table(table: dict[int, SearchRecord], path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, delimiter="\t", lineterminator="\n")
        w.writerow(TABLE_HEADER)
        for k in sorted(table):
            w.writerow(table[k].row())


def read_table(path) -> dict[int, SearchRecord]:
    """Load a TSV record table, re-verifying every ruler."""
    out: dict[int, SearchRecord] = {}
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh, delimiter="\t"))
    if not rows:
        return out
    if rows[0] != TABLE_HEADER:
        raise CacheCorrupt(f"{path}: bad header {rows[0]!r}")
    for lineno, row in enumerate(rows[1:], start=2):
        try:
            k, d, name, q, m, c, st, ruler = row
            rec = SearchRecord(
                int(k), int(d), tuple(int(v) for v in ruler.split()), name, int(q), int(m), int(c), int(st)
            )
        except ValueError as e:
            raise CacheCorrupt(f"{path}:{lineno}: {e}") from e
        if len(rec.ruler) != rec.k or rec.ruler[-1] != rec.diameter or not is_sidon(rec.ruler):
            raise CacheCorrupt(f"{path}:{lineno}: record does not verify")
        out[rec.k] = rec
    return out


def read_rulers(path) -> list[tuple[int, SidonSet]]:
    """Parse the ruler text format: ascending integers, one ruler per line, '#' comments.

    Returns (line number, normalized set); raises ParseError / NotSidon with
    the offending line number.
    """
    out = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            body = line.split("#", 1)[0].strip()
            if not body:
                continue
            try:
                vals = [int(t) for t in body.split()]
            except ValueError:
                raise ParseError(f"not an integer list: {body!r}", lineno) from None
            if any(b <= a for a, b in zip(vals, vals[1:])):
                raise ParseError("marks must be strictly ascending", lineno)
            try:
                out.append((lineno, normalize(vals)))
            except NotSidon as e:
                raise NotSidon(f"line {lineno}: {e}", e.pair1, e.pair2, line=lineno) from None
    return out


def ingest_external(path) -> dict[int, SearchRecord]:
    """Record table from an external ruler file (shortest ruler per k)."""
    table: dict[int, SearchRecord] = {}
    for lineno, s in read_rulers(path):
        rec = SearchRecord(s.k, s.diameter, canonical(s).elements, "external", 0, 0, 0, lineno)
        if s.k not in table or rec < table[s.k]:
            table[s.k] = rec
    return dict(sorted(table.items()))
