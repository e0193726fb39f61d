import numpy as np
import pytest

from mgfnorm import _dispatch
from mgfnorm.montecarlo import _batch_gram


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    # trigger any one-time kernel compilation up front so individual test
    # timings stay meaningful
    rng = np.random.default_rng(0)
    gram, sqn = _batch_gram(rng.standard_normal((2, 8, 2)))
    kern = _dispatch.get_kernels()
    kern.t_stat(gram, sqn, 5.0, 2)
    kern.skewness_sums(gram, sqn)
    kern.hj_stat(gram, sqn, 2.0, 2)
    kern.hz_stat(gram, sqn, 1.0, 2)
    kern.energy_stat(gram, sqn, 2)
    kern.hjm_stat(gram, sqn, 5.0, 2)
