from fractions import Fraction

from commands.reporting import exit_code_for, summarize
from errors import ComputationError, ConfigError, SingularLocusError
from identities import IdentityReport
from middleware import tracked_command


def report(identity, residual, tolerance=0.0):
    return IdentityReport(identity, {}, residual, tolerance=tolerance)


def test_summarize_groups_by_identity():
    reports = [report("a", Fraction(0)), report("b", Fraction(1)), report("a", 0.5, tolerance=1.0), report("a", 2.0)]
    summary = summarize(reports)
    assert list(summary["identities"]) == ["a", "b"]
    assert summary["identities"]["a"] == {"checks": 3, "failures": 1}
    assert summary["total_checks"] == 4
    assert summary["total_failures"] == 2
    assert [f["id"] for f in summary["failures"]] == ["b", "a"]


def test_exit_code_for():
    assert exit_code_for([]) == 0
    assert exit_code_for([report("a", Fraction(0))]) == 0
    assert exit_code_for([report("a", Fraction(0)), report("b", 1e-3)]) == 1


def _raising(exc):
    @tracked_command("test")
    def command():
        raise exc

    return command


def test_tracked_command_exit_codes():
    assert tracked_command("test")(lambda: 0)() == 0
    assert tracked_command("test")(lambda: 1)() == 1
    assert _raising(ConfigError("bad"))() == 2
    assert _raising(ComputationError("stuck"))() == 3
    assert _raising(ZeroDivisionError("division by zero"))() == 3
    assert _raising(SingularLocusError("s_1 = 1", last_state={"s": ["1"]}))() == 4
