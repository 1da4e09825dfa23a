import itertools

import pytest

from psipp.algebra import make_interpreter
from psipp.errors import (DuplicateType, FieldShadowing, NoSuchMethod,
                          UnknownAncestor)
from psipp.objects import KindedType, NativeMethod, Registry, UserMethod
from psipp.parser import parse_program
from psipp.values import FAIL


@pytest.fixture
def prelude():
    return make_interpreter().registry


def define(registry, source):
    for item in parse_program(source).items:
        registry.define_object(item)


def test_group_descriptor(prelude):
    group = prelude.descriptor("Group")
    assert ("+", "infix") in group.methods
    assert ("-", "prefix") in group.methods


def test_inherited_method_resolved_not_copied(prelude):
    algebra = prelude.descriptor("Algebra")
    assert ("+", "infix") not in algebra.methods
    assert prelude.resolve_method("Algebra", "+", "infix") \
        is prelude.resolve_method("Group", "+", "infix")


def test_duplicate_type(prelude):
    with pytest.raises(DuplicateType):
        define(prelude, "Group = Object;")


def test_unknown_ancestor():
    registry = Registry()
    with pytest.raises(UnknownAncestor):
        define(registry, "Algebra = Object(Group);")


def test_field_shadowing(prelude):
    with pytest.raises(FieldShadowing):
        define(prelude, "Gaussian = Object(Complex);\n  Re : integer;\nend;")


def test_resolve_override(prelude):
    impl = prelude.resolve_method("Complex", "*", "infix")
    assert isinstance(impl, UserMethod)
    assert impl.decl.owner == "Complex"


def test_resolve_walks_to_ancestor(prelude):
    # Complex declares no infix +, so resolution lands on the Complex
    # native attached below Group's signature level
    impl = prelude.resolve_method("Complex", "+", "infix")
    assert isinstance(impl, NativeMethod)


def test_resolve_no_such_method(prelude):
    with pytest.raises(NoSuchMethod):
        prelude.resolve_method("Group", "*", "infix")


def test_is_descendant_examples(prelude):
    assert prelude.is_descendant("Complex", "Group")
    assert not prelude.is_descendant("Group", "Complex")
    assert prelude.is_descendant("Group", "Group")


def test_is_descendant_partial_order(prelude):
    names = list(prelude.types)
    for a in names:
        assert prelude.is_descendant(a, a)
    for a, b in itertools.permutations(names, 2):
        if prelude.is_descendant(a, b) and prelude.is_descendant(b, a):
            assert a == b
    for a, b, c in itertools.product(names, repeat=3):
        if prelude.is_descendant(a, b) and prelude.is_descendant(b, c):
            assert prelude.is_descendant(a, c)


def test_resolution_defers_to_ancestor(prelude):
    for name in prelude.types:
        desc = prelude.descriptor(name)
        if desc.ancestor is None:
            continue
        for symbol, fixity in [("+", "infix"), ("-", "prefix"), ("*", "infix")]:
            if (symbol, fixity) in desc.methods:
                continue
            try:
                expected = prelude.resolve_method(desc.ancestor, symbol, fixity)
            except NoSuchMethod:
                with pytest.raises(NoSuchMethod):
                    prelude.resolve_method(name, symbol, fixity)
                continue
            assert prelude.resolve_method(name, symbol, fixity) is expected


def test_kind_compatible_functional_object(prelude):
    slot = KindedType("Complex", "value")
    assert prelude.kind_compatible(slot, KindedType("Complex",
                                                    "functional-object"))


def test_fail_compatible_with_all_types(prelude):
    for name in list(prelude.types) + ["integer"]:
        assert prelude.kind_compatible(KindedType(name, "value"), FAIL)


def test_ancestor_not_compatible_with_descendant_slot(prelude):
    assert not prelude.kind_compatible(KindedType("Complex"),
                                       KindedType("Group"))
    assert prelude.kind_compatible(KindedType("Group"), KindedType("Complex"))


def test_integer_promotes_into_complex_chain(prelude):
    assert prelude.kind_compatible(KindedType("Complex"),
                                   KindedType("integer"))
    assert prelude.kind_compatible(KindedType("Algebra"),
                                   KindedType("integer"))
