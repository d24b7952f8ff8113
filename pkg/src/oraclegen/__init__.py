"""Token-by-token generation of axiomatic test oracles from Java source and
doc comments, with dataset tooling, an evaluation harness, and assertion
injection."""

from . import codemodel, dataset, engine, evaluation, generation, grammar, inject  # noqa: F401

__version__ = "0.1.0"
