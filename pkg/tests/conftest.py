import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from aprsmodem import ax25  # noqa: E402

GOLDEN_TEXT = "YG3DQQ>APTCM0,YBSAT,WIDE2-2:Pengujian APRS TCM3105"

_criteria = []


@pytest.fixture
def golden_frame():
    return ax25.UiFrame(
        ax25.AddressField("APTCM0"),
        ax25.AddressField("YG3DQQ"),
        (ax25.AddressField("YBSAT"), ax25.AddressField("WIDE2", 2)),
        info=b"Pengujian APRS TCM3105",
    )


@pytest.fixture
def criterion():
    """Record an acceptance criterion outcome for the terminal summary."""
    def record(number, text, passed, detail=""):
        _criteria.append((number, text, passed, detail))
    return record


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number, text, passed, detail in sorted(_criteria, key=lambda c: str(c[0])):
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"[{status}] {number}. {text} {detail}".rstrip())
