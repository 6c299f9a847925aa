import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bondopt.domain import (
    Configuration,
    FailureMode,
    ObjectiveVector,
    Outcome,
    ReplicatedObservation,
    bonding_design_space,
    dominates,
    format_configuration,
    format_outcome,
    parse_configuration,
    parse_outcome,
    pareto_filter,
    strictly_dominates,
)
from bondopt.errors import DomainError, FormatError


def vec(pc, neg_ts):
    return ObjectiveVector(pc=pc, neg_ts=neg_ts)


def brute_force_pareto(points):
    """Independent O(n^2) oracle: pairwise dominance check."""
    keep = []
    for i, p in enumerate(points):
        if not any(dominates(q, p) for j, q in enumerate(points) if j != i):
            keep.append(i)
    return keep


class TestDominance:
    def test_strict_improvement_dominates(self):
        assert dominates(vec(1.0, -30), vec(2.0, -20))

    def test_equal_vectors_never_dominate(self):
        assert not dominates(vec(1.0, -30), vec(1.0, -30))

    def test_incomparable_pair(self):
        assert not dominates(vec(1.0, -20), vec(2.0, -30))

    def test_strict_dominance_cases(self):
        assert strictly_dominates(vec(1, -30), vec(2, -20))
        assert not strictly_dominates(vec(1, -30), vec(1, -20))
        assert not strictly_dominates(vec(2, -20), vec(1, -30))

    @given(
        st.tuples(st.floats(-10, 10), st.floats(-10, 10)),
        st.tuples(st.floats(-10, 10), st.floats(-10, 10)),
        st.tuples(st.floats(-10, 10), st.floats(-10, 10)),
    )
    @settings(max_examples=200)
    def test_irreflexive_and_transitive(self, a, b, c):
        va, vb, vc = vec(*a), vec(*b), vec(*c)
        assert not dominates(va, va)
        if dominates(va, vb) and dominates(vb, vc):
            assert dominates(va, vc)


class TestParetoFilter:
    def test_hand_case(self):
        points = [vec(1, -30), vec(2, -20), vec(1.5, -25)]
        assert pareto_filter(points) == [0]

    def test_single_point(self):
        assert pareto_filter([vec(1, -30)]) == [0]

    def test_empty(self):
        assert pareto_filter([]) == []

    def test_duplicates_of_nondominated_point_all_kept(self):
        points = [vec(1, -30), vec(1, -30), vec(2, -20)]
        assert pareto_filter(points) == [0, 1]

    def test_matches_brute_force_on_random_points(self):
        rng = np.random.default_rng(11)
        for _ in range(20):
            points = [vec(float(a), float(b)) for a, b in rng.uniform(-5, 5, size=(50, 2))]
            assert set(pareto_filter(points)) == set(brute_force_pareto(points))

    def test_output_is_mutually_nondominated_and_excludes_only_dominated(self):
        rng = np.random.default_rng(5)
        points = [vec(float(a), float(b)) for a, b in rng.uniform(0, 1, size=(40, 2))]
        keep = pareto_filter(points)
        kept = [points[i] for i in keep]
        for a in kept:
            assert not any(dominates(b, a) for b in kept)
        for i, p in enumerate(points):
            if i not in keep:
                assert any(dominates(points[k], p) for k in keep)


class TestEncodeDecode:
    def setup_method(self):
        self.space = bonding_design_space()

    def test_bound_endpoints(self):
        low = Configuration((0, 300, 5, 0.2, 1, 1))
        high = Configuration((1, 500, 250, 2.0, 50, 120))
        assert self.space.encode(low)[1] == 0.0
        assert self.space.encode(high)[1] == 1.0

    def test_midpoint_of_torch_height(self):
        cfg = Configuration((0, 300, 5, 1.1, 1, 1))
        assert self.space.encode(cfg)[3] == pytest.approx(0.5, abs=1e-12)

    def test_round_trip(self):
        rng = np.random.default_rng(3)
        for _ in range(50):
            unit = rng.random(6)
            cfg = self.space.decode(unit)
            back = self.space.decode(self.space.encode(cfg))
            assert back == cfg

    def test_out_of_bounds_names_variable(self):
        cfg = Configuration((0, 300, 300, 1.0, 5, 10))
        with pytest.raises(DomainError, match="v3"):
            self.space.encode(cfg)

    def test_decode_rounds_passes_and_preprocessing(self):
        cfg = self.space.decode([0.49, 0.5, 0.5, 0.5, 0.5, 0.5])
        assert cfg.values[0] == 0.0
        cfg = self.space.decode([0.5, 0.5, 0.5, 0.5, 0.5, 0.5])
        assert cfg.values[0] == 1.0
        assert cfg.values[4] == int(cfg.values[4])

    def test_array_paths_match_scalar_paths(self):
        rng = np.random.default_rng(8)
        unit = rng.random((30, 6))
        decoded = self.space.decode_array(unit)
        for i in range(30):
            assert tuple(decoded[i]) == self.space.decode(unit[i]).values
        reencoded = self.space.encode_array(decoded)
        for i in range(30):
            expected = self.space.encode(Configuration(tuple(decoded[i])))
            np.testing.assert_allclose(reencoded[i], expected, atol=1e-14)


def outcome(feasible: bool) -> Outcome:
    mode = FailureMode.COHESIVE if feasible else FailureMode.ADHESION
    return Outcome(strength=10.0, cost=1.0, failure_mode=mode, visual_damage=False)


class TestReplicatedObservation:
    def test_pf_and_majority(self):
        obs = ReplicatedObservation(
            config=Configuration((0, 400, 100, 1.0, 5, 10)),
            outcomes=(outcome(True), outcome(True), outcome(False), outcome(True), outcome(False)),
        )
        assert obs.pf == pytest.approx(3 / 5)
        assert obs.majority_feasible

    def test_majority_tie_counts_feasible(self):
        obs = ReplicatedObservation(
            config=Configuration((0, 400, 100, 1.0, 5, 10)),
            outcomes=(outcome(True), outcome(False)),
        )
        assert obs.pf == 0.5
        assert obs.majority_feasible

    def test_majority_matches_pf_threshold_exhaustively(self):
        cfg = Configuration((0, 400, 100, 1.0, 5, 10))
        for r in range(1, 11):
            for feasible_count in range(r + 1):
                outs = tuple(outcome(i < feasible_count) for i in range(r))
                obs = ReplicatedObservation(config=cfg, outcomes=outs)
                assert obs.pf == feasible_count / r
                assert obs.majority_feasible == (obs.pf >= 0.5)

    def test_single_replication_variance_zero(self):
        obs = ReplicatedObservation(
            config=Configuration((0, 400, 100, 1.0, 5, 10)), outcomes=(outcome(True),)
        )
        assert obs.var_objectives == (0.0, 0.0)

    def test_sample_variance_is_unbiased_form(self):
        cfg = Configuration((0, 400, 100, 1.0, 5, 10))
        outs = (
            Outcome(10.0, 1.0, FailureMode.COHESIVE, False),
            Outcome(14.0, 1.0, FailureMode.COHESIVE, False),
        )
        obs = ReplicatedObservation(config=cfg, outcomes=outs)
        # strengths 10, 14 -> neg_ts -10, -14; sample variance 8
        assert obs.var_objectives[1] == pytest.approx(8.0)
        assert obs.mean_objectives.neg_ts == pytest.approx(-12.0)

    def test_empty_outcomes_rejected(self):
        with pytest.raises(DomainError):
            ReplicatedObservation(config=Configuration((0, 400, 100, 1.0, 5, 10)), outcomes=())

    def test_outcome_feasibility_definition(self):
        burned = Outcome(5.0, 1.0, FailureMode.SUBSTRATE, visual_damage=True)
        adhesion = Outcome(5.0, 1.0, FailureMode.ADHESION, visual_damage=False)
        good = Outcome(5.0, 1.0, FailureMode.COHESIVE, visual_damage=False)
        assert not burned.feasible
        assert not adhesion.feasible
        assert good.feasible


class TestRecords:
    def test_configuration_round_trip(self):
        space = bonding_design_space()
        cfg = Configuration((1, 412.5, 37.25, 0.75, 12, 61.2))
        record = format_configuration(cfg)
        assert record.startswith("v1=1 ")
        assert parse_configuration(record, space) == cfg

    def test_parse_rejects_missing_fields(self):
        with pytest.raises(FormatError, match="v6"):
            parse_configuration("v1=0 v2=300 v3=5 v4=1 v5=2")

    def test_outcome_round_trip(self):
        out = Outcome(strength=21.5, cost=0.85, failure_mode=FailureMode.SUBSTRATE, visual_damage=False)
        assert parse_outcome(format_outcome(out)) == out

    def test_parse_outcome_rejects_unknown_mode(self):
        with pytest.raises(FormatError, match="cohesive"):
            parse_outcome("strength=1 cost=1 failure_mode=bad visual_damage=false")
