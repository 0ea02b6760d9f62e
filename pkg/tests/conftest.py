import os

from hypothesis import HealthCheck, settings

# one fixed seed set: randomized suites are reproducible run to run
settings.register_profile("default", derandomize=True, max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", derandomize=False, max_examples=300, deadline=None)
settings.load_profile(os.environ.get("K3FIB_HYPOTHESIS_PROFILE", "default"))
