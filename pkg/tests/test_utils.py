import json
import logging

import pytest

from utils import errors
from utils.decorators import escalate_precision
from utils.file_utils import load_file, save_file
from utils.logging_utils import configure_logging, get_logger


class _Report:
    def __init__(self, precision: int, settles_at: int):
        self.precision = precision
        self.settles_at = settles_at

    def needs_more_precision(self) -> bool:
        return self.precision < self.settles_at


def test_escalation_doubles_until_settled():
    calls = []

    @escalate_precision(max_attempts=4)
    def check(settles_at, *, precision):
        calls.append(precision)
        return _Report(precision, settles_at)

    assert check(200, precision=53).precision == 212
    assert calls == [53, 106, 212]


def test_escalation_gives_up():
    @escalate_precision(max_attempts=2)
    def check(*, precision):
        return _Report(precision, 10 ** 6)

    report = check(precision=64)
    assert report.precision == 128
    assert report.needs_more_precision()


def test_results_without_validator_return_at_once():
    @escalate_precision()
    def check(*, precision):
        return precision

    assert check(precision=80) == 80


@pytest.mark.parametrize(
    "error, code",
    [
        (errors.ParseError, 2),
        (errors.UsageError, 2),
        (errors.FormatError, 2),
        (errors.IndefiniteLattice, 3),
        (errors.CyclotomicOrderExceeded, 3),
        (errors.NoConsistentIndex, 4),
        (errors.VerificationFailure, 4),
    ],
)
def test_exit_codes(error, code):
    e = error("boom")
    assert e.exit_code == code
    assert e.name == error.__name__


def test_save_and_load_file(tmp_path):
    path = str(tmp_path / "nested" / "dir" / "a.txt")
    save_file("x\ny\n", path)
    assert load_file(path) == "x\ny\n"
    assert load_file(str(tmp_path / "absent.txt")) is None


def test_json_logging(capsys):
    configure_logging("info", True)
    get_logger("weilkit.test").info("[Sample] ✅ done")
    line = capsys.readouterr().err.strip().splitlines()[-1]
    assert json.loads(line)["message"] == "[Sample] ✅ done"
    configure_logging("warning", False)
    assert logging.getLogger().level == logging.WARNING
