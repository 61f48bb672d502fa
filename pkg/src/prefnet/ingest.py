"""Retweet-log ingestion: CSV parsing, per-hashtag networks, temporal halving.

Input contract: UTF-8 comma-delimited text (LF or CRLF) with the exact
header `hashtag,user_a,user_b,timestamp`, one row per (retweet, hashtag)
incidence. user_a is the retweeter, user_b the retweeted user, timestamp an
integer in seconds. Self-retweets are dropped with a counted warning;
otherwise-malformed rows are tolerated up to a configurable fraction.
"""

from __future__ import annotations

import csv
import io
import logging
from dataclasses import dataclass
from itertools import combinations
from typing import IO, Iterable, Union

import numpy as np

from .errors import IngestFormatError
from .measures import Half
from .network import WeightedNetwork

log = logging.getLogger(__name__)

EXPECTED_HEADER = ["hashtag", "user_a", "user_b", "timestamp"]


@dataclass(frozen=True)
class RetweetRecord:
    """One observed retweet event."""

    hashtag: str
    user_a: str
    user_b: str
    timestamp: int


@dataclass(frozen=True)
class ParseResult:
    records: tuple[RetweetRecord, ...]
    n_rows: int
    n_malformed: int
    n_self_retweets: int


@dataclass(frozen=True)
class HashtagDataset:
    """One hashtag's (possibly halved) labeled retweet network."""

    hashtag: str
    half: Half
    network: WeightedNetwork
    n_retweets: int
    n_users: int

    @property
    def retweet_user_ratio(self) -> float:
        return self.n_retweets / self.n_users


def parse_log(
    source: Union[str, IO[str]], malformed_threshold: float = 0.01
) -> ParseResult:
    """Parse a retweet CSV into validated records.

    Malformed rows are counted and skipped; if they exceed
    malformed_threshold as a fraction of data rows the parse aborts.
    Self-retweet rows are dropped separately with a warning count.
    """
    if isinstance(source, (str, bytes)) or hasattr(source, "__fspath__"):
        with open(source, "r", encoding="utf-8-sig", newline="") as fh:
            return parse_log(fh, malformed_threshold)
    if isinstance(source, io.TextIOBase) or hasattr(source, "read"):
        reader = csv.reader(source)
    else:
        raise TypeError("source must be a path or a text stream")

    try:
        header = next(reader)
    except StopIteration:
        raise IngestFormatError("empty input: missing header row") from None
    if [h.strip().lower() for h in header] != EXPECTED_HEADER:
        raise IngestFormatError(
            f"bad header {header!r}; expected {','.join(EXPECTED_HEADER)}"
        )

    records: list[RetweetRecord] = []
    n_rows = 0
    n_malformed = 0
    n_self = 0
    for row in reader:
        if not row or (len(row) == 1 and not row[0].strip()):
            continue
        n_rows += 1
        if len(row) != 4:
            n_malformed += 1
            continue
        hashtag, user_a, user_b, ts_raw = (field.strip() for field in row)
        if not hashtag or not user_a or not user_b:
            n_malformed += 1
            continue
        try:
            ts = int(ts_raw)
        except ValueError:
            n_malformed += 1
            continue
        if user_a == user_b:
            n_self += 1
            continue
        records.append(RetweetRecord(hashtag, user_a, user_b, ts))

    if n_rows > 0 and n_malformed / n_rows > malformed_threshold:
        raise IngestFormatError(
            f"{n_malformed}/{n_rows} malformed rows exceeds the "
            f"{malformed_threshold:.1%} threshold"
        )
    if n_malformed:
        log.warning("skipped %d malformed rows of %d", n_malformed, n_rows)
    if n_self:
        log.warning("dropped %d self-retweet rows", n_self)
    return ParseResult(
        records=tuple(records),
        n_rows=n_rows,
        n_malformed=n_malformed,
        n_self_retweets=n_self,
    )


def _dataset_from(
    hashtag: str, half: Half, records: list[RetweetRecord]
) -> HashtagDataset:
    users = sorted({r.user_a for r in records} | {r.user_b for r in records})
    index = {u: k for k, u in enumerate(users)}
    n = len(users)
    mat = np.zeros((n, n), dtype=np.float64)
    for r in records:
        i, j = index[r.user_a], index[r.user_b]
        mat[i, j] += 1.0
        mat[j, i] += 1.0
    net = WeightedNetwork.from_matrix(mat, labels=users, copy=False, validate=False)
    return HashtagDataset(
        hashtag=hashtag, half=half, network=net, n_retweets=len(records), n_users=n
    )


def build_networks(
    records: Iterable[RetweetRecord], halving: bool
) -> list[HashtagDataset]:
    """Per-hashtag undirected retweet networks, link weight = event count
    folded over both directions.

    With halving, each hashtag splits at the midpoint of the global
    collection window (strictly earlier timestamps go to the first half).
    Halves left with no records are dropped with a warning. Output order is
    deterministic: sorted by hashtag, then first/second half.
    """
    records = list(records)
    if not records:
        raise ValueError("records must be nonempty")
    by_tag: dict[str, list[RetweetRecord]] = {}
    for r in records:
        by_tag.setdefault(r.hashtag, []).append(r)

    datasets: list[HashtagDataset] = []
    if not halving:
        for tag in sorted(by_tag):
            datasets.append(_dataset_from(tag, Half.WHOLE, by_tag[tag]))
        return datasets

    t_min = min(r.timestamp for r in records)
    t_max = max(r.timestamp for r in records)
    midpoint = (t_min + t_max) / 2.0
    for tag in sorted(by_tag):
        first = [r for r in by_tag[tag] if r.timestamp < midpoint]
        second = [r for r in by_tag[tag] if r.timestamp >= midpoint]
        for half, subset in ((Half.FIRST, first), (Half.SECOND, second)):
            if not subset:
                log.warning("hashtag %r has no records in %s half; dropped", tag, half.value)
                continue
            datasets.append(_dataset_from(tag, half, subset))
    return datasets


def enumerate_pairs(
    datasets: list[HashtagDataset], halved: bool
) -> list[tuple[HashtagDataset, HashtagDataset]]:
    """Comparison pairs across distinct hashtags.

    Halved mode emits two pairs per unordered hashtag pair, one per
    assignment of differing temporal halves; whole mode emits each unordered
    pair once. A hashtag is never paired with itself.
    """
    tags = sorted({d.hashtag for d in datasets})
    if len(tags) < 2:
        raise ValueError("need datasets from at least 2 hashtags")
    if halved:
        lookup = {(d.hashtag, d.half): d for d in datasets}
        for tag in tags:
            if (tag, Half.FIRST) not in lookup or (tag, Half.SECOND) not in lookup:
                raise ValueError(f"hashtag {tag!r} is missing a temporal half")
        pairs = []
        for tag_a, tag_b in combinations(tags, 2):
            pairs.append((lookup[(tag_a, Half.FIRST)], lookup[(tag_b, Half.SECOND)]))
            pairs.append((lookup[(tag_a, Half.SECOND)], lookup[(tag_b, Half.FIRST)]))
        return pairs
    lookup = {d.hashtag: d for d in datasets if d.half is Half.WHOLE}
    missing = [t for t in tags if t not in lookup]
    if missing:
        raise ValueError(f"whole-data datasets missing for hashtags {missing}")
    return [(lookup[a], lookup[b]) for a, b in combinations(tags, 2)]


def ratio_distribution(datasets: list[HashtagDataset]) -> list[float]:
    """Retweets-per-user ratio of each dataset (budget scaling input)."""
    if not datasets:
        raise ValueError("datasets must be nonempty")
    return [d.retweet_user_ratio for d in datasets]
