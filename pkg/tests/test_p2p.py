import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from covchain.p2p import (
    ClientFleet,
    ClusterTooSmall,
    CodeVerifier,
    DomainError,
    estimate,
    infection_risk,
    risk_pmf,
)
from covchain.patterns import (
    InfectionInstance,
    InfectionPattern,
    derive_instances,
    parse_pattern,
    take_shortlex,
)
from covchain.surveillance import TrackingReport

from oracles import pmf_by_enumeration


def make_pattern(text, pid="IP-0", case="c1", alphabet="abc01"):
    ast = parse_pattern(text, tuple(alphabet))
    return InfectionPattern.from_ast(pid, case, ast, "01/06/20-12:00:00")


def inst(code, subject, pid="IP-0", rank=0):
    return InfectionInstance(
        code=code, class_marker=code[0], payload=code[1:],
        pattern_id=pid, subject_id=subject, rank=rank,
    )


class TestRiskPmf:
    def test_symmetric_coin(self):
        assert risk_pmf(2, 0.5) == pytest.approx([0.25, 0.5, 0.25], abs=1e-15)

    def test_empty_inbox(self):
        assert risk_pmf(0, 0.3) == [1.0]

    def test_ten_codes_headline_risk(self):
        pmf = risk_pmf(10, 0.1)
        assert pmf[0] == pytest.approx(0.9**10, abs=1e-15)
        assert 1 - pmf[0] == pytest.approx(1 - 0.9**10, abs=1e-12)

    @pytest.mark.parametrize("n", [0, 1, 2, 5, 9, 12])
    @pytest.mark.parametrize("p", [0.1, 0.5, 0.83])
    def test_matches_exhaustive_enumeration(self, n, p):
        assert risk_pmf(n, p) == pytest.approx(pmf_by_enumeration(n, p), abs=1e-12)

    @pytest.mark.parametrize("p", [0.0, 0.01, 0.5, 0.99, 1.0])
    @pytest.mark.parametrize("n", [1, 10, 100, 1000, 10000])
    def test_normalization(self, n, p):
        assert abs(math.fsum(risk_pmf(n, p)) - 1.0) <= 1e-9

    def test_monte_carlo_cross_check(self):
        rng = np.random.default_rng(20200601)
        draws = rng.random((10**6, 10)) < 0.1
        empirical = np.mean(draws.any(axis=1))
        assert abs(infection_risk(10, 0.1) - empirical) < 0.002

    def test_degenerate_p(self):
        assert risk_pmf(3, 0.0) == [1.0, 0.0, 0.0, 0.0]
        assert risk_pmf(3, 1.0) == [0.0, 0.0, 0.0, 1.0]

    @pytest.mark.parametrize("bad_p", [-0.1, 1.1, 2.0])
    def test_domain_errors(self, bad_p):
        with pytest.raises(DomainError):
            risk_pmf(3, bad_p)
        with pytest.raises(DomainError):
            infection_risk(3, bad_p)
        with pytest.raises(DomainError):
            risk_pmf(-1, 0.5)

    def test_monotone_in_n(self):
        # strict growth is asserted on the complement (1-p)^n: once risk
        # rounds to 1.0 the float increments vanish even though the
        # mathematical ordering still holds
        for p in (0.01, 0.1, 0.5, 0.99):
            risks = [infection_risk(n, p) for n in range(101)]
            assert all(b >= a for a, b in zip(risks, risks[1:]))
            comp = [(1 - p) ** n for n in range(101)]
            assert all(b < a for a, b in zip(comp, comp[1:]))
        risks = [infection_risk(n, 0.1) for n in range(101)]
        assert all(b > a for a, b in zip(risks, risks[1:]))

    @given(st.integers(0, 300), st.floats(0.001, 0.999))
    @settings(max_examples=100, deadline=None)
    def test_risk_equals_one_minus_pmf0(self, n, p):
        est = estimate("c", n, p)
        assert est.risk == 1.0 - est.pmf[0]
        assert 0.0 <= est.risk <= 1.0


class TestNotify:
    def fleet(self):
        fleet = ClientFleet(p_per_contact=0.1)
        for c in ("u1", "u2", "u3"):
            fleet.register_client(c)
        fleet.register_place("mall")
        return fleet

    def test_person_codes_delivered(self):
        fleet = self.fleet()
        report = fleet.notify(
            [inst("Pabc", "u1"), inst("Pabbc", "u2"), inst("Pabbbc", "u3")],
            received_at="01/06/20-10:00:00",
        )
        assert [r.status for r in report] == ["delivered"] * 3
        assert fleet.inboxes["u1"].codes == ["Pabc"]

    def test_duplicate_dropped(self):
        fleet = self.fleet()
        fleet.notify([inst("Pabc", "u1")], "01/06/20-10:00:00")
        report = fleet.notify([inst("Pabc", "u1")], "01/06/20-11:00:00")
        assert report[0].status == "duplicate"
        assert len(fleet.inboxes["u1"].messages) == 1

    def test_building_code_routes_to_place_registry(self):
        fleet = self.fleet()
        report = fleet.notify([inst("Babc", "mall")], "01/06/20-10:00:00")
        assert report[0].status == "place"
        assert fleet.place_codes["mall"] == ["Babc"]
        assert all(not box.messages for box in fleet.inboxes.values())

    def test_unknown_recipient_reported_not_fatal(self):
        fleet = self.fleet()
        report = fleet.notify(
            [inst("Pabc", "ghost"), inst("Pabbc", "u1")], "01/06/20-10:00:00"
        )
        assert [r.status for r in report] == ["unknown_recipient", "delivered"]

    def test_delivery_accounting_balances(self):
        fleet = self.fleet()
        batch = [
            inst("Pabc", "u1"), inst("Pabc", "u1"), inst("Pabbc", "u2"),
            inst("Babc", "mall"), inst("Pabbbc", "u2"),
        ]
        fleet.notify(batch, "01/06/20-10:00:00")
        inbox_total = sum(len(b.messages) for b in fleet.inboxes.values())
        place_total = sum(len(v) for v in fleet.place_codes.values())
        assert fleet.delivered == inbox_total
        assert fleet.delivered + fleet.duplicates + fleet.place_deliveries == len(batch)
        assert place_total == fleet.place_deliveries

    def test_risk_refreshes_on_delivery(self):
        fleet = self.fleet()
        assert fleet.risk_of("u1").risk == 0.0
        fleet.notify([inst("Pabc", "u1")], "01/06/20-10:00:00")
        assert fleet.risk_of("u1").risk == pytest.approx(0.1)
        fleet.notify([inst("Pabbc", "u1", rank=1)], "01/06/20-10:05:00")
        assert fleet.risk_of("u1").risk == pytest.approx(1 - 0.9**2)

    def test_seeded_drop_rate(self):
        fleet = ClientFleet(drop_rate=1.0)
        fleet.register_client("u1")
        report = fleet.notify([inst("Pabc", "u1")], "01/06/20-10:00:00")
        assert report[0].status == "dropped"
        assert fleet.inboxes["u1"].messages == []


class TestSuspects:
    def fleet_with_risks(self, risks):
        fleet = ClientFleet(p_per_contact=0.1)
        for cid, n in risks.items():
            fleet.register_client(cid)
            fleet.notify(
                [inst(f"P{'b'*(i+1)}", cid, rank=i) for i in range(n)],
                "01/06/20-10:00:00",
            )
        return fleet

    def test_top_k_with_tie_break(self):
        fleet = self.fleet_with_risks({"a": 5, "b": 1, "c": 5})
        top2 = fleet.detect_suspects(k=2)
        assert [e.client_id for e in top2] == ["a", "c"]

    def test_threshold_above_one_empty(self):
        fleet = self.fleet_with_risks({"a": 5, "b": 1})
        assert fleet.detect_suspects(threshold=1.1) == []

    def test_threshold_zero_keeps_all_sorted(self):
        fleet = self.fleet_with_risks({"a": 2, "b": 4, "c": 0})
        out = fleet.detect_suspects(threshold=0.0)
        assert [e.client_id for e in out] == ["b", "a", "c"]

    def test_ordering_invariant_under_monotone_transform(self):
        # ranking is an argsort: any strictly increasing transform of the
        # risks leaves the order unchanged
        fleet = self.fleet_with_risks({"a": 3, "b": 7, "c": 1, "d": 7})
        order = [e.client_id for e in fleet.detect_suspects()]
        transformed = sorted(
            fleet.risk_registry.values(),
            key=lambda e: (-math.exp(3 * e.risk + 1), e.client_id),
        )
        assert [e.client_id for e in transformed] == order


class TestWarnings:
    def test_three_member_exchange(self):
        fleet = ClientFleet(p_per_contact=0.1)
        # risks: a=0.7 > c=0.4 > b=0.1 by inbox counts chosen accordingly
        for cid, n in {"a": 12, "b": 1, "c": 5}.items():
            fleet.register_client(cid)
            fleet.notify(
                [inst(f"P{'b'*(i+1)}", cid, rank=i) for i in range(n)],
                "01/06/20-10:00:00",
            )
        views = fleet.exchange_warnings(["a", "b", "c"], now="01/06/20-12:00:00")
        assert [w.sender_id for w in views["a"]] == ["c", "b"]
        assert [w.sender_id for w in views["b"]] == ["a", "c"]
        assert [w.sender_id for w in views["c"]] == ["a", "b"]
        for member, msgs in views.items():
            assert member not in [w.sender_id for w in msgs]

    def test_pair_exchange(self):
        fleet = ClientFleet()
        fleet.register_client("a")
        fleet.register_client("b")
        views = fleet.exchange_warnings(["a", "b"], now="01/06/20-12:00:00")
        assert len(views["a"]) == 1 and len(views["b"]) == 1

    def test_equal_risks_order_by_sender(self):
        fleet = ClientFleet()
        for cid in ("z", "m", "a"):
            fleet.register_client(cid)
        views = fleet.exchange_warnings(["z", "m", "a"], now="01/06/20-12:00:00")
        assert [w.sender_id for w in views["z"]] == ["a", "m"]

    def test_cluster_too_small(self):
        fleet = ClientFleet()
        fleet.register_client("a")
        with pytest.raises(ClusterTooSmall):
            fleet.exchange_warnings(["a"], now="01/06/20-12:00:00")


class TestVerifyCode:
    def verifier(self):
        v = CodeVerifier()
        pattern = make_pattern("ab+c")
        v.register_pattern(pattern)
        v.register_report(
            "c1", TrackingReport("c1", (0, 100), ("u1", "u2"), ("mall",))
        )
        for i in derive_instances(pattern, [("P", "u1"), ("P", "u2")]):
            v.register_dispatch(i)
        return v, pattern

    def test_dispatched_code_resolves(self):
        v, pattern = self.verifier()
        detail = v.verify_code("Pabbc")
        assert detail.valid
        assert detail.case_id == "c1"
        assert detail.pattern_id == pattern.pattern_id
        assert detail.contagion_place == "mall"
        assert detail.contagion_time == pattern.created_at
        assert not detail.undispatched

    def test_garbage_invalid_with_empty_fields(self):
        v, _ = self.verifier()
        detail = v.verify_code("Pzzz")
        assert not detail.valid
        assert detail.pattern_id is None
        assert detail.case_id is None
        assert detail.contagion_place is None
        assert detail.contagion_time is None

    def test_missing_marker_invalid(self):
        v, _ = self.verifier()
        assert not v.verify_code("abc").valid
        assert not v.verify_code("").valid

    def test_undispatched_language_member_flagged(self):
        v, pattern = self.verifier()
        beyond = take_shortlex(pattern.dfa, 5)[4]  # rank past the dispatched ones
        detail = v.verify_code("P" + beyond)
        assert detail.valid
        assert detail.undispatched
        assert detail.case_id == "c1"
