"""Shared fixtures; puts src/ on the import path like the runnable scripts do."""

import os
import sys

import pytest

sys.path.insert(0, os.path.join(os.path.dirname(os.path.abspath(__file__)), '..', 'src'))

from algebra.cartan import build_cartan  # noqa: E402
from evaluation.batch import THREADS_ENV  # noqa: E402


@pytest.fixture(scope='session')
def A1():
    return build_cartan('A', 1)


@pytest.fixture(scope='session')
def A2():
    return build_cartan('A', 2)


@pytest.fixture(scope='session')
def G2():
    return build_cartan('G2')


@pytest.fixture
def single_worker(monkeypatch):
    monkeypatch.setenv(THREADS_ENV, '1')
