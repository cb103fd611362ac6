import pytest

from hopfcross.fields import FieldSpec
from hopfcross.crossed import convolution_inverse, regular_bimodule
from hopfcross.problems import (
    BUILTIN_NAMES,
    builtin,
    cyclic_group_algebra,
    cyclic_group_hopf,
)

Q = FieldSpec.rationals()
F2 = FieldSpec.prime(2)


def z_n_algebra(field, n):
    return cyclic_group_algebra(field, n)


def z_n_hopf(field, n):
    return cyclic_group_hopf(field, n)


def _make_builder(name):
    def build(field):
        return builtin(name, field=field).crossed_product(with_inverse=False)

    return build


BUILTIN_BUILDERS = {name: _make_builder(name) for name in BUILTIN_NAMES}

build_trivial = BUILTIN_BUILDERS["trivial"]
build_z2_trivial = BUILTIN_BUILDERS["z2_trivial"]
build_z4_cocycle = BUILTIN_BUILDERS["z4_as_cocycle_extension"]
build_s3_action = BUILTIN_BUILDERS["s3_as_action_extension"]
build_klein_four = BUILTIN_BUILDERS["klein_four"]
build_sweedler_smash = BUILTIN_BUILDERS["sweedler_smash"]


@pytest.fixture(scope="session")
def crossed_products():
    """All built-ins over their default fields, convolution inverses attached."""
    out = {}
    for name in BUILTIN_NAMES:
        pf = builtin(name)
        out[name] = pf.crossed_product()
    return out


@pytest.fixture(scope="session")
def sweedler_cp(crossed_products):
    return crossed_products["sweedler_smash"]


@pytest.fixture(scope="session")
def regular_bimodules(crossed_products):
    return {name: regular_bimodule(cp.e) for name, cp in crossed_products.items()}
