import pytest

from evograph.egml import parse_egml, serialize_egml, document_for
from evograph.errors import IngestError
from evograph.ingest import (IngestConfig, RollCallMember, VoteRecord,
                             build_eurovision_eg, build_house_eg,
                             parse_rollcall_file, parse_votes_csv,
                             vote_similarity)

VOTES = b"""year,from,to,points
1975,France,UK,12
1975,UK,France,8
1975,Italy,France,10
1980,France,UK,12
1980,UK,France,8
"""

# layout mirrors the historical fixed-width roll-call format: 10-char id,
# district, state, party block, name, then one character per vote
ROLLCALL = (
    "1019990899 0USA     20000BUSH       9999996999169699999996\n"
    "1011509041 1ALABAMA 20001CALLAHAN  H6616166161166616111166\n"
    "1011071741 2ALABAMA 20001DICKINSON  6611166166166616666116\n"
    "1011563241 3ALABAMA 10002BROWDER  GL0000000000000000000000\n"
).encode()


class TestVotesCsv:
    def test_simple_row(self):
        records, issues = parse_votes_csv(b"year,from,to,points\n1975,France,UK,12\n")
        assert records == [VoteRecord(1975, "France", "UK", 12)]
        assert issues == []

    def test_self_vote_rejected(self):
        with pytest.raises(IngestError):
            parse_votes_csv(b"year,from,to,points\n1975,France,France,8\n")

    def test_invalid_points_strict(self):
        with pytest.raises(IngestError) as err:
            parse_votes_csv(b"year,from,to,points\n1975,France,UK,11\n")
        assert "11" in str(err.value)

    def test_lenient_collects_line_numbers(self):
        data = b"year,from,to,points\n1975,France,UK,12\nbogus line\n1976,UK,Malta,10\n"
        records, issues = parse_votes_csv(data, strict=False)
        assert len(records) == 2
        assert issues[0].line == 3

    def test_header_required(self):
        with pytest.raises(IngestError):
            parse_votes_csv(b"annee,de,vers,points\n")


class TestEurovisionBuild:
    def test_directed_votes_merge(self):
        records, _ = parse_votes_csv(VOTES)
        eg = build_eurovision_eg(records)
        inst = eg[0]
        assert inst.timestamp == 1975
        assert inst.edges[("France", "UK")].weight == 20.0
        assert inst.edges[("France", "Italy")].weight == 10.0

    def test_voter_without_votes_received_is_vertex(self):
        records, _ = parse_votes_csv(VOTES)
        eg = build_eurovision_eg(records)
        assert "Italy" in eg[0].vertices
        assert "Italy" not in eg[1].vertices  # not active in 1980

    def test_instance_per_year(self):
        records, _ = parse_votes_csv(VOTES)
        eg = build_eurovision_eg(records)
        assert eg.p == 2
        assert [inst.timestamp for inst in eg] == [1975, 1980]

    def test_order_independent(self):
        records, _ = parse_votes_csv(VOTES)
        eg1 = build_eurovision_eg(records)
        eg2 = build_eurovision_eg(list(reversed(records)))
        assert eg1 == eg2

    def test_one_instance_per_distinct_year(self):
        records = [VoteRecord(1956 + y, "A", "B", 12) for y in range(47)]
        eg = build_eurovision_eg(records)
        assert eg.p == 47

    def test_round_trips_through_egml(self):
        records, _ = parse_votes_csv(VOTES)
        eg = build_eurovision_eg(records)
        doc = parse_egml(serialize_egml(document_for(eg)))
        assert doc.evolving_graph == eg


class TestRollCallParse:
    def test_sample_lines(self):
        members, issues = parse_rollcall_file(ROLLCALL)
        assert issues == []
        assert [m.name for m in members] == ["BUSH", "CALLAHAN  H", "DICKINSON", "BROWDER  GL"]
        bush = members[0]
        assert bush.member_id == "1019990899"
        assert bush.state == "USA"
        assert len(bush.votes) == 22
        assert bush.votes.count(9) == 17  # mostly not voting
        callahan = members[1]
        assert callahan.state == "ALABAMA"
        assert callahan.district == 1
        assert callahan.party_code == 200
        assert set(callahan.votes) <= {0, 1, 6, 9}

    def test_vote_alphabet_enforced(self):
        bad = ROLLCALL.replace(b"9999996999169699999996", b"9999996999169699999997")
        with pytest.raises(IngestError) as err:
            parse_rollcall_file(bad)
        assert "7" in str(err.value)

    def test_inconsistent_lengths_rejected(self):
        bad = ROLLCALL + b"1011111111 9ALABAMA 10001SHORT      11\n"
        with pytest.raises(IngestError):
            parse_rollcall_file(bad)

    def test_simple_vote_string(self):
        line = "x" * 36 + "1166"
        members, _ = parse_rollcall_file(("1234567890 1STATE   10001NAME       1166\n").encode())
        assert members[0].votes == (1, 1, 6, 6)
        assert len(line) == 40


def member(mid, votes):
    return RollCallMember(mid, "ST", 1, 100, mid, tuple(votes))


class TestHouseBuild:
    def test_similarity_counts(self):
        a = member("a", [1, 1, 6, 6])
        b = member("b", [1, 1, 6, 1])
        assert vote_similarity(a, b) == (3, 4)

    def test_threshold_boundary(self):
        a = member("a", [1, 1, 6, 6])
        b = member("b", [1, 1, 6, 1])
        dropped = build_house_eg([[a, b]], IngestConfig(weight_threshold=0.9))
        kept = build_house_eg([[a, b]], IngestConfig(weight_threshold=0.7))
        assert not dropped[0].edges
        assert kept[0].edges[("a", "b")].weight == 3.0

    def test_identical_substantive_always_kept(self):
        a = member("a", [1, 6, 1, 6])
        b = member("b", [1, 6, 1, 6])
        eg = build_house_eg([[a, b]], IngestConfig(weight_threshold=1.0))
        assert eg[0].edges[("a", "b")].weight == 4.0

    def test_absent_member_never_connects(self):
        a = member("a", [0, 9, 0, 9])
        b = member("b", [1, 1, 6, 6])
        eg = build_house_eg([[a, b]], IngestConfig(weight_threshold=0.0))
        assert not eg[0].edges

    def test_symmetry_and_monotone_threshold(self):
        rows = [member("a", [1, 1, 6, 6, 1]), member("b", [1, 6, 6, 6, 1]),
                member("c", [6, 6, 6, 1, 1]), member("d", [1, 1, 6, 6, 9])]
        last = None
        for tau in (0.0, 0.4, 0.8, 1.0):
            eg = build_house_eg([rows], IngestConfig(weight_threshold=tau))
            edges = set(eg[0].edges)
            if last is not None:
                assert edges <= last
            last = edges

    def test_period_timestamps(self):
        rows = [member("a", [1]), member("b", [1])]
        eg = build_house_eg([rows, rows], start_year=1989, year_step=2)
        assert [inst.timestamp for inst in eg] == [1989, 1991]

    def test_output_passes_model_validation(self):
        rows = [member("a", [1, 6]), member("b", [1, 6]), member("c", [6, 1])]
        eg = build_house_eg([rows], IngestConfig(weight_threshold=0.5))
        eg.validate()
        doc = parse_egml(serialize_egml(document_for(eg)))
        assert doc.evolving_graph == eg
