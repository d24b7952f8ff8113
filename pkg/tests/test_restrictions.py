"""Each context restriction R1-R20: one admitted case, one pruned case."""

import pytest

from corpus import context_for

from oraclegen.codemodel import build_project_model
from oraclegen.engine import (
    GenerationContext,
    filter_candidates,
    list_restrictions,
    restriction,
    veto_reason,
)
from oraclegen.grammar import (
    identifier,
    literal_of,
    member,
    operator,
    punct,
    reserved,
    tokenize,
)


def veto(ctx, partial_text, tok):
    toks = tokenize(partial_text) if partial_text else []
    return veto_reason(ctx, toks, tok)


@pytest.fixture(scope="module")
def scale_model(tmp_path_factory):
    # a model whose only static helper needs a numeric argument
    root = tmp_path_factory.mktemp("scale") / "src"
    root.mkdir()
    (root / "MathKit.java").write_text(
        "/** Math helpers. */\n"
        "public class MathKit {\n"
        "    /**\n"
        "     * Scales a value.\n"
        "     *\n"
        "     * @param x the value\n"
        "     */\n"
        "    public static double scale(double x) {\n"
        "        return x;\n"
        "    }\n"
        "}\n")
    (root / "Widget.java").write_text(
        "/** A widget registry. */\n"
        "public class Widget {\n"
        "    /**\n"
        "     * Registers a widget.\n"
        "     *\n"
        "     * @param name the widget name, must not be null\n"
        "     */\n"
        "    public static void register(String name) {\n"
        "    }\n"
        "}\n")
    return build_project_model(str(root))


class TestRegistry:
    def test_r1_to_r20_present(self):
        ids = [r.id for r in list_restrictions()]
        assert ids == [f"R{i}" for i in range(1, 21)]

    def test_lookup(self):
        assert "void" in restriction("R1").description


class TestR1MethodResultVoid:
    def test_pruned_for_void_method(self, model):
        ctx = context_for(model, "CsvPrinter", "printHeaders", "EXCEPT_POST",
                          "throws", "SQLException")
        assert veto(ctx, "", reserved("methodResultID")) == "R1"

    def test_admitted_for_nonvoid(self, model):
        ctx = context_for(model, "Account", "getBalance", "NORMAL_POST")
        assert veto(ctx, "", reserved("methodResultID")) is None


class TestR2MethodResultInPrecondition:
    def test_pruned_in_precondition(self, model):
        ctx = context_for(model, "ObjectConverter", "convert", "PRE", "param")
        assert veto(ctx, "", reserved("methodResultID")) == "R2"

    def test_admitted_in_postcondition(self, model):
        ctx = context_for(model, "ObjectConverter", "convert", "NORMAL_POST")
        assert veto(ctx, "", reserved("methodResultID")) is None


class TestR3Instanceof:
    def test_pruned_after_primitive(self, model):
        ctx = context_for(model, "ChartRenderer",
                          "setSeriesItemLabelGenerator", "PRE", "param",
                          "series")
        assert veto(ctx, "series", operator("instanceof")) == "R3"

    def test_admitted_after_reference(self, model):
        ctx = context_for(model, "TextScanner", "compareTo", "EXCEPT_POST")
        assert veto(ctx, "other", operator("instanceof")) is None

    def test_unknown_class_name_pruned(self, model):
        ctx = context_for(model, "TextScanner", "compareTo", "EXCEPT_POST")
        assert veto(ctx, "other instanceof", identifier("NoSuchClass")) == "R3"


class TestR4Relational:
    def test_pruned_after_reference(self, model):
        ctx = context_for(model, "ObjectConverter", "convert", "PRE")
        assert veto(ctx, "object", operator("<")) == "R4"

    def test_admitted_after_numeric(self, model):
        ctx = context_for(model, "ChartRenderer",
                          "setSeriesItemLabelGenerator", "PRE", "param",
                          "series")
        assert veto(ctx, "series", operator("<")) is None


class TestR5Arithmetic:
    def test_pruned_on_reference_rhs(self, model):
        ctx = context_for(model, "ObjectConverter", "convert", "NORMAL_POST")
        assert veto(ctx, "methodResultID == object", operator("+")) == "R5"

    def test_admitted_on_numeric_rhs(self, model):
        ctx = context_for(model, "ChartRenderer",
                          "setSeriesItemLabelGenerator", "PRE", "param",
                          "series")
        assert veto(ctx, "series < series", operator("+")) is None


class TestR6Equality:
    def test_null_pruned_against_numeric(self, model):
        ctx = context_for(model, "ChartRenderer",
                          "setSeriesItemLabelGenerator", "PRE", "param",
                          "series")
        assert veto(ctx, "series ==", reserved("null")) == "R6"

    def test_null_admitted_against_reference(self, model):
        ctx = context_for(model, "ObjectConverter", "convert", "PRE")
        assert veto(ctx, "object ==", reserved("null")) is None


class TestR7MemberAccess:
    def test_dot_pruned_after_primitive(self, model):
        ctx = context_for(model, "ChartRenderer",
                          "setSeriesItemLabelGenerator", "PRE", "param",
                          "series")
        assert veto(ctx, "series", punct(".")) == "R7"

    def test_dot_admitted_after_reference(self, model):
        ctx = context_for(model, "ObjectConverter", "convert", "PRE")
        assert veto(ctx, "object", punct(".")) is None


class TestR8AccessibleMembers:
    def test_unknown_member_pruned(self, model):
        ctx = context_for(model, "CsvPrinter", "printHeaders", "EXCEPT_POST",
                          "throws", "SQLException")
        assert veto(ctx, "resultSet.", member("frobnicate")) == "R8"

    def test_declared_member_admitted(self, model):
        ctx = context_for(model, "CsvPrinter", "printHeaders", "EXCEPT_POST",
                          "throws", "SQLException")
        assert veto(ctx, "resultSet.", member("isClosed")) is None


class TestR9This:
    def test_pruned_in_static_method(self, model):
        ctx = context_for(model, "ArrayTools", "contains", "PRE", "param",
                          "array")
        assert veto(ctx, "", reserved("this")) == "R9"

    def test_admitted_in_instance_method(self, model):
        ctx = context_for(model, "Account", "deposit", "PRE", "param")
        assert veto(ctx, "", reserved("this")) is None


class TestR10JdVar:
    def test_pruned_outside_lambda(self, model):
        ctx = context_for(model, "ArrayTools", "contains", "NORMAL_POST")
        assert veto(ctx, "", reserved("jdVar")) == "R10"

    def test_admitted_as_lambda_binder(self, model):
        ctx = context_for(model, "ArrayTools", "contains", "NORMAL_POST")
        assert veto(ctx, "Arrays.stream(array).anyMatch(",
                    reserved("jdVar")) is None


class TestR11StreamQuantifier:
    def test_nonlambda_argument_pruned(self, model):
        ctx = context_for(model, "ArrayTools", "contains", "NORMAL_POST")
        assert veto(ctx, "Arrays.stream(array).anyMatch(",
                    literal_of("0")) == "R11"

    def test_match_opener_admitted_on_stream(self, model):
        ctx = context_for(model, "ArrayTools", "contains", "NORMAL_POST")
        assert veto(ctx, "Arrays.stream(array).",
                    member("anyMatch")) is None


class TestR12CallableMethods:
    def test_unsatisfiable_parameter_pruned(self, model):
        # charAt(int) with no numeric identifier in scope
        ctx = context_for(model, "CsvPrinter", "printHeaders", "EXCEPT_POST",
                          "throws", "SQLException")
        assert veto(ctx, "this.toString().", member("charAt")) == "R12"

    def test_zero_argument_method_admitted(self, model):
        ctx = context_for(model, "CsvPrinter", "printHeaders", "EXCEPT_POST",
                          "throws", "SQLException")
        assert veto(ctx, "this.toString().", member("length")) is None


class TestR13TrivialOracle:
    def test_bare_true_pruned(self, model):
        ctx = context_for(model, "ObjectConverter", "convert", "PRE")
        assert veto(ctx, "true", punct(";")) == "R13"

    def test_contentful_oracle_admitted(self, model):
        ctx = context_for(model, "ChartRenderer",
                          "setSeriesItemLabelGenerator", "PRE", "param",
                          "series")
        assert veto(ctx, "series >= 0", punct(";")) is None


class TestR14SelfComparison:
    def test_identical_sides_pruned_at_close(self, model):
        ctx = context_for(model, "ObjectConverter", "convert", "PRE")
        assert veto(ctx, "object == object", punct(";")) == "R14"

    def test_identical_boolean_operand_pruned_early(self, model):
        ctx = context_for(model, "Account", "isClosed", "NORMAL_POST")
        assert veto(ctx, "methodResultID ==",
                    reserved("methodResultID")) == "R14"

    def test_different_sides_admitted(self, model):
        ctx = context_for(model, "ObjectConverter", "convert", "PRE")
        assert veto(ctx, "object ==", reserved("null")) is None


class TestR15TernaryTopLevel:
    def test_pruned_inside_group(self, model):
        ctx = context_for(model, "Account", "isClosed", "NORMAL_POST")
        cs = filter_candidates(ctx, tokenize("(methodResultID == true"))
        assert "?" not in cs.texts()

    def test_admitted_at_top_level(self, model):
        ctx = context_for(model, "Account", "isClosed", "NORMAL_POST")
        cs = filter_candidates(ctx, tokenize("methodResultID == true"))
        assert "?" in cs.texts()


class TestR16BooleanClosure:
    def test_nonboolean_semicolon_pruned(self, model):
        ctx = context_for(model, "ObjectConverter", "convert", "PRE")
        assert veto(ctx, "object", punct(";")) == "R16"

    def test_boolean_semicolon_admitted(self, model):
        ctx = context_for(model, "ObjectConverter", "convert", "PRE")
        assert veto(ctx, "object == null", punct(";")) is None


class TestR17ArgumentCategory:
    def test_mismatched_argument_pruned(self, model):
        ctx = context_for(model, "TextScanner", "compareTo", "EXCEPT_POST")
        assert veto(ctx, "this.equals(", literal_of("0")) == "R17"

    def test_matching_argument_admitted(self, model):
        ctx = context_for(model, "TextScanner", "compareTo", "EXCEPT_POST")
        assert veto(ctx, "this.equals(", reserved("this")) is None


class TestR18Arity:
    def test_extra_argument_pruned(self, model):
        ctx = context_for(model, "TextScanner", "compareTo", "EXCEPT_POST")
        assert veto(ctx, "this.equals(this", punct(",")) == "R18"

    def test_exact_arity_admitted(self, model):
        ctx = context_for(model, "TextScanner", "compareTo", "EXCEPT_POST")
        assert veto(ctx, "this.equals(this", punct(")")) is None


class TestR19MethodMustBeInvoked:
    def test_dot_after_uninvoked_method_pruned(self, model):
        ctx = context_for(model, "CsvPrinter", "printHeaders", "EXCEPT_POST",
                          "throws", "SQLException")
        assert veto(ctx, "resultSet.isClosed", punct(".")) == "R19"

    def test_call_paren_after_field_pruned(self, model):
        ctx = context_for(model, "Account", "deposit", "PRE", "param")
        assert veto(ctx, "this.balance", punct("(")) == "R19"

    def test_invocation_admitted(self, model):
        ctx = context_for(model, "CsvPrinter", "printHeaders", "EXCEPT_POST",
                          "throws", "SQLException")
        assert veto(ctx, "resultSet.isClosed", punct("(")) is None


class TestR20DeadEndAvoidance:
    def test_class_without_usable_members_pruned(self, scale_model):
        m = scale_model.find_method("Widget", "register")
        ctx = GenerationContext(model=scale_model, unit=m, oracleType="PRE",
                                tag=m.tags[0], exceptionType="")
        assert veto(ctx, "", identifier("MathKit")) == "R20"

    def test_class_with_usable_member_admitted(self, scale_model):
        m = scale_model.find_method("MathKit", "scale")
        ctx = GenerationContext(model=scale_model, unit=m, oracleType="PRE",
                                tag=m.tags[0], exceptionType="")
        assert veto(ctx, "", identifier("MathKit")) is None
