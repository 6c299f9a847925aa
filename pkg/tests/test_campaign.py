import pytest

from bondopt.campaign import Campaign, CampaignSettings, run
from bondopt.domain import Configuration, FailureMode, Outcome, bonding_design_space
from bondopt.errors import BudgetExhaustedError, DomainError, FormatError, StateError
from bondopt.scalarize import weight_grid
from bondopt.simulator import SimulatorSettings, make_evaluator

SPACE = bonding_design_space()


def small_settings(**overrides):
    defaults = dict(init_size=5, iterations=2, replications=2, seed=11, gp_restarts=3)
    defaults.update(overrides)
    return CampaignSettings(**defaults)


def simulator_evaluator(settings: CampaignSettings, gamma=0.3):
    sim = SimulatorSettings(gamma=gamma, seed=settings.seed)
    return make_evaluator(sim, settings.replications)


def drive_design(campaign: Campaign, evaluator):
    for config in list(campaign.remaining_design):
        campaign.tell(config, evaluator(config))


class TestInitialize:
    def test_default_design_size(self):
        campaign = Campaign.new(CampaignSettings(seed=0))
        assert len(campaign.remaining_design) == 20
        assert campaign.iteration == 0

    def test_deterministic_design(self):
        a = Campaign.new(small_settings())
        b = Campaign.new(small_settings())
        assert a.remaining_design == b.remaining_design

    def test_minimal_campaign(self):
        campaign = Campaign.new(CampaignSettings(init_size=2, iterations=0, replications=1))
        assert len(campaign.remaining_design) == 2

    def test_invalid_settings_rejected(self):
        with pytest.raises(DomainError):
            CampaignSettings(init_size=1)
        with pytest.raises(DomainError):
            CampaignSettings(iterations=-1)
        with pytest.raises(DomainError):
            CampaignSettings(replications=0)


class TestAskTell:
    def test_suggest_before_design_complete_rejected(self):
        campaign = Campaign.new(small_settings())
        with pytest.raises(StateError):
            campaign.suggest()

    def test_suggest_after_design_is_rounded_and_in_bounds(self):
        settings = small_settings()
        campaign = Campaign.new(settings)
        drive_design(campaign, simulator_evaluator(settings))
        config = campaign.suggest()
        SPACE.validate_values(config.values)
        assert config.values[0] in (0.0, 1.0)
        assert config.values[4] == int(config.values[4])

    def test_suggest_is_idempotent_until_tell(self):
        settings = small_settings()
        campaign = Campaign.new(settings)
        evaluator = simulator_evaluator(settings)
        drive_design(campaign, evaluator)
        first = campaign.suggest()
        assert campaign.suggest() == first
        campaign.tell(first, evaluator(first))
        assert campaign.suggest() != first or campaign.iteration == 1

    def test_same_seed_same_suggestion(self):
        settings = small_settings()
        a, b = Campaign.new(settings), Campaign.new(settings)
        ev_a, ev_b = simulator_evaluator(settings), simulator_evaluator(settings)
        drive_design(a, ev_a)
        drive_design(b, ev_b)
        assert a.suggest() == b.suggest()

    def test_tell_wrong_replication_count_names_expected(self):
        settings = small_settings()
        campaign = Campaign.new(settings)
        config = campaign.remaining_design[0]
        outcome = Outcome(10.0, 1.0, FailureMode.COHESIVE, False)
        with pytest.raises(DomainError, match="exactly 2"):
            campaign.tell(config, [outcome])

    def test_tell_unknown_config_rejected(self):
        settings = small_settings()
        campaign = Campaign.new(settings)
        rogue = Configuration((0, 401.5, 99.0, 1.0, 5, 10))
        outcome = Outcome(10.0, 1.0, FailureMode.COHESIVE, False)
        with pytest.raises(DomainError, match="pending suggestion"):
            campaign.tell(rogue, [outcome, outcome])

    def test_pf_three_of_five(self):
        settings = small_settings(replications=5)
        campaign = Campaign.new(settings)
        good = Outcome(10.0, 1.0, FailureMode.COHESIVE, False)
        bad = Outcome(10.0, 1.0, FailureMode.ADHESION, False)
        obs = campaign.tell(campaign.remaining_design[0], [good, good, bad, good, bad])
        assert obs.pf == pytest.approx(0.6)

    def test_budget_exhaustion(self):
        settings = small_settings(iterations=1)
        campaign = Campaign.new(settings)
        evaluator = simulator_evaluator(settings)
        drive_design(campaign, evaluator)
        config = campaign.suggest()
        campaign.tell(config, evaluator(config))
        with pytest.raises(BudgetExhaustedError):
            campaign.suggest()

    def test_fallback_when_nothing_feasible(self):
        settings = small_settings()
        campaign = Campaign.new(settings)
        bad = Outcome(5.0, 1.0, FailureMode.ADHESION, False)
        for config in list(campaign.remaining_design):
            campaign.tell(config, [bad, bad])
        config = campaign.suggest()
        SPACE.validate_values(config.values)


class TestRun:
    def test_exact_budget_and_outcome_counts(self):
        settings = small_settings(init_size=5, iterations=2, replications=2)
        calls = []
        base = simulator_evaluator(settings)

        def counting(config):
            outs = base(config)
            calls.append(config)
            return outs

        campaign, history = run(settings, counting)
        assert len(calls) == 7
        assert len(campaign.observations) == 7
        assert len(history) == 7
        assert sum(len(o.outcomes) for o in campaign.observations) == 14

    def test_design_only_run(self):
        settings = small_settings(iterations=0)
        campaign, history = run(settings, simulator_evaluator(settings))
        assert len(campaign.observations) == settings.init_size
        assert len(history) == settings.init_size

    def test_history_non_decreasing(self):
        settings = small_settings(init_size=6, iterations=3)
        _, history = run(settings, simulator_evaluator(settings))
        assert all(b >= a - 1e-12 for a, b in zip(history, history[1:]))

    def test_reproducible_observation_sequence(self):
        settings = small_settings(init_size=4, iterations=2)
        a, _ = run(settings, simulator_evaluator(settings))
        b, _ = run(settings, simulator_evaluator(settings))
        assert [o.config for o in a.observations] == [o.config for o in b.observations]
        assert [o.outcomes for o in a.observations] == [o.outcomes for o in b.observations]

    def test_weight_schedule_covers_grid_over_eleven_iterations(self):
        settings = CampaignSettings(
            init_size=2, iterations=11, replications=1, seed=6, gp_restarts=2
        )
        campaign, _ = run(settings, simulator_evaluator(settings))
        lambdas = {tuple(entry["lambda"]) for entry in campaign.model_log}
        assert lambdas == {w.values for w in weight_grid()}

    def test_history_matches_recomputed_hv(self):
        settings = small_settings(init_size=4, iterations=2)
        campaign, history = run(settings, simulator_evaluator(settings))
        assert history == campaign.hv_history()


class TestPersistence:
    def test_round_trip_preserves_next_suggestion(self, tmp_path):
        settings = small_settings()
        campaign = Campaign.new(settings)
        evaluator = simulator_evaluator(settings)
        drive_design(campaign, evaluator)
        path = tmp_path / "state.json"
        campaign.save(path)
        restored = Campaign.load(path)
        assert restored.suggest() == campaign.suggest()

    def test_round_trip_preserves_pending(self, tmp_path):
        settings = small_settings()
        campaign = Campaign.new(settings)
        drive_design(campaign, simulator_evaluator(settings))
        pending = campaign.suggest()
        path = tmp_path / "state.json"
        campaign.save(path)
        restored = Campaign.load(path)
        assert restored.suggest() == pending

    def test_schema_version_present_and_checked(self, tmp_path):
        campaign = Campaign.new(small_settings())
        doc = campaign.to_document()
        assert doc["schema_version"] == 1
        doc["schema_version"] = 99
        with pytest.raises(FormatError, match="schema_version"):
            Campaign.from_document(doc)

    def test_truncated_document_rejected(self, tmp_path):
        campaign = Campaign.new(small_settings())
        path = tmp_path / "state.json"
        campaign.save(path)
        text = path.read_text()
        path.write_text(text[: len(text) // 2])
        with pytest.raises(FormatError):
            Campaign.load(path)

    def test_wrong_kind_rejected(self):
        with pytest.raises(FormatError):
            Campaign.from_document({"schema_version": 1, "kind": "something-else"})

    def test_observations_survive_round_trip(self, tmp_path):
        settings = small_settings()
        campaign = Campaign.new(settings)
        drive_design(campaign, simulator_evaluator(settings))
        path = tmp_path / "state.json"
        campaign.save(path)
        restored = Campaign.load(path)
        assert restored.observations == campaign.observations
        assert restored.current_front().hv == campaign.current_front().hv


class TestFront:
    def test_empty_front_without_feasible_points(self):
        settings = small_settings()
        campaign = Campaign.new(settings)
        bad = Outcome(5.0, 1.0, FailureMode.ADHESION, False)
        campaign.tell(campaign.remaining_design[0], [bad, bad])
        assert campaign.current_front().points == ()

    def test_single_feasible_observation(self):
        settings = small_settings()
        campaign = Campaign.new(settings)
        good = Outcome(25.0, 1.0, FailureMode.COHESIVE, False)
        campaign.tell(campaign.remaining_design[0], [good, good])
        front = campaign.current_front()
        assert len(front.points) == 1
        assert front.hv == pytest.approx((3.0 - 1.0) * (-4.0 - (-25.0)))

    def test_front_matches_brute_force(self):
        from bondopt.domain import dominates

        settings = small_settings(init_size=30, iterations=0)
        campaign, _ = run(settings, simulator_evaluator(settings))
        front = campaign.current_front()
        feasible = [o for o in campaign.observations if o.majority_feasible]
        expected = [
            o.mean_objectives
            for o in feasible
            if not any(
                dominates(q.mean_objectives, o.mean_objectives) for q in feasible if q is not o
            )
        ]
        assert sorted(p.objectives.as_tuple() for p in front.points) == sorted(
            e.as_tuple() for e in expected
        )
