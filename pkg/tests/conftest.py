from __future__ import annotations

import functools

import pytest

from gpseries import build_root_system, generate_weyl, make_levi, relative_weyl_group


@functools.lru_cache(maxsize=None)
def cached_rs(label: str):
    return build_root_system(label)


@functools.lru_cache(maxsize=None)
def cached_wg(label: str):
    return generate_weyl(cached_rs(label))


@functools.lru_cache(maxsize=None)
def cached_levi(label: str, theta: tuple[int, ...]):
    return make_levi(cached_rs(label), theta)


@functools.lru_cache(maxsize=None)
def cached_rwg(label: str, theta: tuple[int, ...]):
    return relative_weyl_group(cached_levi(label, theta), cached_wg(label))


@pytest.fixture
def rs_of():
    return cached_rs


@pytest.fixture
def wg_of():
    return cached_wg


@pytest.fixture
def levi_of():
    return cached_levi


@pytest.fixture
def rwg_of():
    return cached_rwg
