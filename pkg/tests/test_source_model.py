from __future__ import annotations

import pytest

from anticopypaster.errors import EmptyScope, IndexingError
from anticopypaster.lexer import token_texts, tokenize
from anticopypaster.source_model import (
    index_file,
    nesting_profile,
    scan_declarations,
    validate_fragment,
)

TWO_METHODS = """\
public class TwoMethods {
    public int first(int a) {
        int r = a + 1;
        r = r * 2;
        return r;
    }

    public int second(int a) {
        int r = a - 1;
        r = r * 3;
        return r;
    }
}
"""


def test_two_methods_fixture_has_hand_annotated_ranges():
    methods, classes = index_file(TWO_METHODS, "TwoMethods.java")
    assert [m.name for m in methods] == ["first", "second"]
    first, second = methods
    assert (first.start_line, first.end_line) == (3, 5)
    assert (second.start_line, second.end_line) == (9, 11)
    assert first.id == "TwoMethods.java:3:first"
    assert classes[0].method_names == {"first", "second"}


def test_fields_only_file_produces_class_context_without_methods():
    source = "class Holder {\n    private int a;\n    private String b;\n}\n"
    methods, classes = index_file(source, "Holder.java")
    assert methods == []
    assert classes[0].field_names == {"a": "int", "b": "String"}


def test_inner_class_methods_belong_to_the_inner_context():
    source = """\
class Outer {
    int outerField;

    void outerMethod() {
        outerField = 1;
    }

    class Inner {
        int innerField;

        void innerMethod() {
            innerField = 2;
        }
    }
}
"""
    methods, classes = index_file(source, "Outer.java")
    by_name = {m.name: m for m in methods}
    assert by_name["innerMethod"].owner.class_name == "Inner"
    assert by_name["outerMethod"].owner.class_name == "Outer"
    inner = next(c for c in classes if c.class_name == "Inner")
    assert inner.field_names == {"innerField": "int"}


def test_constructors_count_as_methods_and_bodiless_ones_do_not():
    source = """\
abstract class Shape {
    private int edges;

    Shape(int edges) {
        this.edges = edges;
    }

    abstract int area();
}
"""
    methods, classes = index_file(source, "Shape.java")
    assert [m.name for m in methods] == ["Shape"]
    assert classes[0].method_names == {"Shape", "area"}


def test_static_flag_and_parameters():
    source = """\
class Util {
    static java.util.List<String> wrap(String head, int[] tail) {
        return null;
    }
}
"""
    (method,), _ = index_file(source, "Util.java")
    assert method.is_static
    assert [(p.name, p.declared_type) for p in method.parameter_list] == [
        ("head", "String"),
        ("tail", "int[]"),
    ]


def test_field_initializer_with_braces_is_not_a_method():
    source = """\
class Table {
    private int[] sizes = {1, 2, 3};

    int lookup(int i) {
        return sizes[i];
    }
}
"""
    methods, classes = index_file(source, "Table.java")
    assert [m.name for m in methods] == ["lookup"]
    assert "sizes" in classes[0].field_names


def test_unbalanced_braces_raise_indexing_error():
    with pytest.raises(IndexingError):
        index_file("class A { void f() { }", "A.java")


def test_indexing_is_deterministic():
    a = index_file(TWO_METHODS, "TwoMethods.java")[0]
    b = index_file(TWO_METHODS, "TwoMethods.java")[0]
    assert [m.id for m in a] == [m.id for m in b]
    assert [(m.start_line, m.end_line) for m in a] == [(m.start_line, m.end_line) for m in b]


def test_retokenizing_body_lines_reproduces_body_tokens():
    lines = TWO_METHODS.split("\n")
    methods, _ = index_file(TWO_METHODS, "TwoMethods.java")
    for method in methods:
        body_source = "\n".join(lines[method.start_line - 1 : method.end_line])
        assert token_texts(tokenize(body_source)) == token_texts(method.body_tokens)


# --- fragment validity -------------------------------------------------------

def test_expression_statement_is_valid():
    assert validate_fragment("x = 1;").valid


def test_unbalanced_delimiters_are_invalid():
    assert not validate_fragment("if (x {").valid


def test_type_declaration_is_invalid():
    assert not validate_fragment("public class A {}").valid
    assert not validate_fragment("class A {}").valid


def test_method_declaration_is_invalid():
    assert not validate_fragment("void foo() { run(); }").valid
    assert not validate_fragment("int foo() { return 1; }").valid


def test_empty_text_is_invalid():
    fragment = validate_fragment("")
    assert not fragment.valid
    assert fragment.line_count == 0


def test_control_flow_statements_are_valid():
    assert validate_fragment("if (a) { b(); } else { c(); }").valid
    assert validate_fragment("for (int i = 0; i < n; i++) { f(i); }").valid
    assert validate_fragment("do { poll(); } while (busy);").valid
    assert validate_fragment("try { open(); } catch (Exception e) { log(e); }").valid
    assert validate_fragment("switch (k) { case 1: f(); break; default: g(); }").valid
    assert validate_fragment("synchronized (lock) { counter++; }").valid


def test_lambda_and_anonymous_class_statements_are_valid():
    assert validate_fragment("Runnable r = () -> { run(); };").valid
    assert validate_fragment("f(new Runnable() { public void run() { } });").valid


def test_labeled_break_is_valid():
    assert validate_fragment("outer: for (;;) { break outer; }").valid


def test_try_without_catch_or_finally_is_invalid():
    assert not validate_fragment("try { open(); }").valid


def test_line_count_trims_blank_edges():
    fragment = validate_fragment("\n\n  x = 1;\n\n")
    assert fragment.line_count == 1
    assert fragment.symbol_count == 4


# --- nesting profiles ---------------------------------------------------------

def test_nesting_profile_of_guarded_block():
    fragment = validate_fragment("if (x > 0) {\n    sum += x;\n}")
    assert nesting_profile(fragment) == [1, 2, 1]


def test_flat_statements_profile_at_depth_one():
    assert nesting_profile(validate_fragment("a();\nb();")) == [1, 1]
    assert nesting_profile(validate_fragment("x = 1;")) == [1]


def test_empty_scope_raises():
    with pytest.raises(EmptyScope):
        nesting_profile(validate_fragment(""))


def test_blank_interior_lines_keep_running_depth():
    fragment = validate_fragment("if (a) {\n\n    f();\n}")
    assert nesting_profile(fragment) == [1, 2, 2, 1]


def test_profile_changes_bounded_by_adjacent_brace_counts():
    # A line's depth can move by the braces after the previous line's first
    # token plus a leading '}' pre-decrement on the line itself.
    source = "while (a) {\n    if (b) { f(); }\n    g();\n}"
    fragment = validate_fragment(source)
    profile = nesting_profile(fragment)
    lines = source.split("\n")
    for i in range(1, len(profile)):
        budget = sum(lines[j].count("{") + lines[j].count("}") for j in (i - 1, i))
        assert abs(profile[i] - profile[i - 1]) <= budget


def test_method_profile_starts_at_depth_one():
    methods, _ = index_file(TWO_METHODS, "TwoMethods.java")
    for method in methods:
        assert all(d >= 1 for d in method.nesting_profile)
        assert len(method.nesting_profile) == method.end_line - method.start_line + 1


# --- declaration scanning ----------------------------------------------------

def test_scan_finds_declarations_in_common_shapes():
    tokens = tokenize(
        "final int a = 1, b = 2;\n"
        "List<String> names = make();\n"
        "for (int i = 0; i < n; i++) { use(i); }\n"
        "for (String s : names) { use(s); }\n"
        "try (Closeable c = open()) { c.hashCode(); } catch (Exception e) { log(e); }"
    )
    declared = {name: decl.declared_type for name, decl in scan_declarations(tokens)}
    assert declared == {
        "a": "int",
        "b": "int",
        "names": "List<String>",
        "i": "int",
        "s": "String",
        "c": "Closeable",
        "e": "Exception",
    }


def test_scan_does_not_mistake_assignments_or_calls_for_declarations():
    tokens = tokenize("x = 1;\nfoo(a);\na.b = 2;\nx < y;")
    assert scan_declarations(tokens) == []
