import os
import sys

from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def pytest_report_header(config):
    from roundelim import BACKEND

    return f"roundelim kernel backend: {BACKEND} (python {sys.version.split()[0]})"
