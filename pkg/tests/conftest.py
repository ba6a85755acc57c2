import time


def pytest_configure(config):
    # wall-clock anchor for the suite runtime bound checked in test_zz_runtime
    config._suite_start = time.perf_counter()
