from observability import AlertManager, MetricsCollector


def test_metrics_snapshot():
    collector = MetricsCollector()
    collector.record_check("bilinear.cross", True, 0.002)
    collector.record_check("bilinear.cross", False, 0.004, error="residual has 3 terms")
    collector.record_check("toda", True, 0.001)
    metrics = collector.get_metrics()
    assert metrics["total_checks"] == 3
    assert metrics["total_failures"] == 1
    cross = metrics["identities"]["bilinear.cross"]
    assert cross["checks"] == 2
    assert cross["pass_rate_pct"] == 50.0
    assert cross["avg_duration_ms"] == 3.0
    assert cross["max_duration_ms"] == 4.0


def test_history_is_bounded():
    collector = MetricsCollector(history_size=3)
    for k in range(5):
        collector.record_check("toda", k % 2 == 0, 0.0, metadata={"k": k})
    assert len(collector.history) == 3
    assert [f["metadata"]["k"] for f in collector.get_recent_failures()] == [3]
    assert collector.get_metrics()["total_checks"] == 5
    collector.reset()
    assert collector.get_metrics()["total_checks"] == 0
    assert collector.get_recent_failures() == []


def test_alert_conditions():
    collector = MetricsCollector()
    collector.record_check("lax.zero_curvature", True, 12.0)
    collector.record_check("symmetry.relation", False, 0.1)
    alerts = collector.check_alert_conditions(slow_threshold=5.0)
    assert {(a["type"], a["identity"]) for a in alerts} == {
        ("slow_check", "lax.zero_curvature"), ("identity_failure", "symmetry.relation"),
    }
    manager = AlertManager(max_history=1)
    for alert in alerts:
        manager.record_alert(alert)
    assert len(manager.alerts()) == 1
    assert "timestamp" in manager.alerts()[0]
    assert manager.alerts("low") == []


def test_timestamps_are_utc():
    collector = MetricsCollector()
    collector.record_check("toda", True, 0.0)
    assert collector.history[0]["timestamp"].endswith("+00:00")
