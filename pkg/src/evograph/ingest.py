"""Build evolving graphs from longitudinal voting data.

Two source formats are supported:

* a normalized song-contest vote table (CSV with header
  ``year,from,to,points``): one instance per year, vertices are the
  countries that voted or received votes that year, and the undirected
  edge weight is the sum of points exchanged in both directions;
* fixed-width roll-call vote files, one file per two-year period: vertices
  are members, and members are connected when they agree on a large enough
  fraction of the substantive votes they share.

Vote codes in roll-call files: 0 not present, 1 agree, 6 reject,
9 present but not voting.  Only codes 1 and 6 count toward similarity.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field

import numpy as np

from .errors import IngestError
from .model import EvolvingGraph

VALID_POINTS = frozenset({1, 2, 3, 4, 5, 6, 7, 8, 10, 12})
VOTE_CODES = frozenset({0, 1, 6, 9})
SUBSTANTIVE = (1, 6)  # codes that count toward agreement


@dataclass(frozen=True)
class VoteRecord:
    year: int
    from_country: str
    to_country: str
    points: int


@dataclass(frozen=True)
class RollCallMember:
    member_id: str
    state: str
    district: int
    party_code: int
    name: str
    votes: tuple[int, ...]


@dataclass(frozen=True)
class RowIssue:
    line: int
    message: str

    def __str__(self):
        return f"line {self.line}: {self.message}"


@dataclass(frozen=True)
class IngestConfig:
    """weight_threshold is an agreement ratio in [0, 1] by default; see
    threshold_mode for the absolute-count and percentile readings."""

    weight_threshold: float = 0.9
    vote_column_offset: int = 36  # 0-based start of the vote region
    threshold_mode: str = "ratio"  # ratio | absolute | percentile

    def __post_init__(self):
        if self.threshold_mode == "ratio" and not 0.0 <= self.weight_threshold <= 1.0:
            raise IngestError(f"ratio threshold must be in [0, 1], got {self.weight_threshold}")
        if self.threshold_mode not in ("ratio", "absolute", "percentile"):
            raise IngestError(f"unknown threshold_mode {self.threshold_mode!r}")
        if self.vote_column_offset < 0:
            raise IngestError("vote_column_offset must be >= 0")


# ---------------------------------------------------------------------------
# vote table


def parse_votes_csv(data: bytes | str, strict: bool = True
                    ) -> tuple[list[VoteRecord], list[RowIssue]]:
    """Parse the vote table; in lenient mode bad rows are skipped and reported."""
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    lines = data.splitlines()
    if not lines:
        raise IngestError("empty vote table")
    header = [h.strip().lower() for h in lines[0].split(",")]
    if header != ["year", "from", "to", "points"]:
        raise IngestError(f"expected header year,from,to,points; got {lines[0]!r}", line=1)
    records: list[VoteRecord] = []
    issues: list[RowIssue] = []

    def bad(lineno: int, message: str) -> None:
        if strict:
            raise IngestError(message, line=lineno)
        issues.append(RowIssue(lineno, message))

    for lineno, raw in enumerate(lines[1:], start=2):
        if not raw.strip():
            continue
        parts = [p.strip() for p in raw.split(",")]
        if len(parts) != 4:
            bad(lineno, f"expected 4 fields, got {len(parts)}")
            continue
        year_text, from_country, to_country, points_text = parts
        try:
            year = int(year_text)
            points = int(points_text)
        except ValueError:
            bad(lineno, f"year and points must be integers: {raw!r}")
            continue
        if not from_country or not to_country:
            bad(lineno, "country names must be non-empty")
            continue
        if from_country == to_country:
            bad(lineno, f"{from_country!r} cannot vote for itself")
            continue
        if points not in VALID_POINTS:
            bad(lineno, f"invalid points value {points}; allowed: {sorted(VALID_POINTS)}")
            continue
        records.append(VoteRecord(year, from_country, to_country, points))
    return records, issues


def build_eurovision_eg(records: list[VoteRecord], name: str = "eurovision") -> EvolvingGraph:
    """One instance per year; directed votes merge into undirected summed weights."""
    if not records:
        raise IngestError("no vote records to build from")
    by_year: dict[int, list[VoteRecord]] = defaultdict(list)
    for record in records:
        by_year[record.year].append(record)
    eg = EvolvingGraph(name)
    for year in sorted(by_year):
        inst = eg.new_instance(year)
        countries = set()
        weights: dict[tuple[str, str], int] = defaultdict(int)
        for record in by_year[year]:
            countries.add(record.from_country)
            countries.add(record.to_country)
            pair = tuple(sorted((record.from_country, record.to_country)))
            weights[pair] += record.points
        for country in sorted(countries):
            inst.add_vertex(country)
        for (a, b), weight in sorted(weights.items()):
            if weight > 0:
                inst.add_edge(a, b, float(weight))
    return eg


# ---------------------------------------------------------------------------
# roll-call files

# fixed metadata regions preceding the vote block; only the vote region is
# load-bearing, the rest is best-effort
_ID = slice(0, 10)
_DISTRICT = slice(10, 12)
_STATE = slice(12, 20)
_PARTY = slice(20, 23)
_NAME = slice(25, 36)


def parse_rollcall_file(data: bytes | str, cfg: IngestConfig | None = None,
                        strict: bool = True) -> tuple[list[RollCallMember], list[RowIssue]]:
    """Parse one fixed-width roll-call period file."""
    cfg = cfg or IngestConfig()
    if isinstance(data, bytes):
        data = data.decode("utf-8", errors="replace")
    members: list[RollCallMember] = []
    issues: list[RowIssue] = []

    def bad(lineno: int, message: str, column: int | None = None) -> None:
        if strict:
            raise IngestError(message, line=lineno, column=column)
        issues.append(RowIssue(lineno, message))

    for lineno, raw in enumerate(data.splitlines(), start=1):
        if not raw.strip():
            continue
        if len(raw) <= cfg.vote_column_offset:
            bad(lineno, f"line is shorter than the vote region (offset {cfg.vote_column_offset})")
            continue
        member_id = raw[_ID].strip()
        if not member_id:
            bad(lineno, "empty member id")
            continue
        district_text = raw[_DISTRICT].strip()
        party_text = raw[_PARTY].strip()
        votes: list[int] = []
        ok = True
        for offset, ch in enumerate(raw[cfg.vote_column_offset:]):
            if ch == " ":
                continue
            if ch not in "0169":
                bad(lineno, f"invalid vote code {ch!r}", column=cfg.vote_column_offset + offset)
                ok = False
                break
            votes.append(int(ch))
        if not ok:
            continue
        members.append(RollCallMember(
            member_id=member_id,
            state=raw[_STATE].strip(),
            district=int(district_text) if district_text.isdigit() else 0,
            party_code=int(party_text) if party_text.isdigit() else 0,
            name=raw[_NAME].strip(),
            votes=tuple(votes),
        ))
    lengths = {len(m.votes) for m in members}
    if len(lengths) > 1:
        bad(0, f"members disagree on vote count: {sorted(lengths)}")
    return members, issues


def vote_similarity(a: RollCallMember, b: RollCallMember) -> tuple[int, int]:
    """(agreements, shared substantive votes) between two members."""
    agreements = 0
    shared = 0
    for va, vb in zip(a.votes, b.votes):
        if va in SUBSTANTIVE and vb in SUBSTANTIVE:
            shared += 1
            if va == vb:
                agreements += 1
    return agreements, shared


def _pair_counts(members: list[RollCallMember]) -> tuple[np.ndarray, np.ndarray]:
    lengths = {len(m.votes) for m in members}
    if len(lengths) > 1:
        raise IngestError(f"members disagree on vote count: {sorted(lengths)}")
    votes = np.array([m.votes for m in members], dtype=np.int8).reshape(len(members), -1)
    valid = np.isin(votes, SUBSTANTIVE).astype(float)
    shared = valid @ valid.T
    agree = np.zeros_like(shared)
    for code in SUBSTANTIVE:
        hit = (votes == code).astype(float)
        agree += hit @ hit.T
    return agree, shared


def build_house_eg(files: list[list[RollCallMember]], cfg: IngestConfig | None = None,
                   start_year: int = 1989, year_step: int = 2,
                   name: str = "house") -> EvolvingGraph:
    """One instance per period file; edges join members whose agreement
    passes the configured threshold, weighted by the agreement count."""
    cfg = cfg or IngestConfig()
    if not files:
        raise IngestError("no roll-call files to build from")
    eg = EvolvingGraph(name)
    for idx, members in enumerate(files):
        inst = eg.new_instance(start_year + idx * year_step)
        order = sorted(range(len(members)), key=lambda i: members[i].member_id)
        for i in order:
            m = members[i]
            if m.member_id in inst.vertices:
                raise IngestError(f"duplicate member id {m.member_id!r} in period {idx}")
            inst.add_vertex(m.member_id, attributes={
                "name": m.name, "state": m.state,
                "district": str(m.district), "party": str(m.party_code)})
        if not members:
            continue
        agree, shared = _pair_counts(members)
        with np.errstate(invalid="ignore", divide="ignore"):
            ratio = np.where(shared > 0, agree / np.maximum(shared, 1), 0.0)
        if cfg.threshold_mode == "ratio":
            keep = (shared > 0) & (ratio >= cfg.weight_threshold)
        elif cfg.threshold_mode == "absolute":
            keep = (shared > 0) & (agree >= cfg.weight_threshold)
        else:  # percentile over the ratios of sharing pairs
            iu, ju = np.triu_indices(len(members), k=1)
            pool = ratio[iu, ju][shared[iu, ju] > 0]
            cut = float(np.quantile(pool, cfg.weight_threshold)) if pool.size else 1.0
            keep = (shared > 0) & (ratio >= cut)
        for i in range(len(members)):
            for j in range(i + 1, len(members)):
                if keep[i, j]:
                    inst.add_edge(members[i].member_id, members[j].member_id,
                                  float(agree[i, j]))
    return eg
