#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "veriscale/errors.hpp"
#include "veriscale/value.hpp"

using namespace veriscale;

TEST_CASE("type names round-trip through their canonical spellings") {
  const ValueType all[] = {ValueType::Int,     ValueType::Nat,      ValueType::ListInt,
                           ValueType::ArrayInt, ValueType::ListNat, ValueType::ArrayNat,
                           ValueType::ListChar, ValueType::String};
  for (ValueType t : all) {
    auto back = type_from_name(type_name(t));
    REQUIRE(back.has_value());
    CHECK(*back == t);
  }
  CHECK(type_name(ValueType::ListNat) == "List Nat");
  CHECK(type_name(ValueType::ArrayInt) == "Array Int");
  CHECK_FALSE(type_from_name("ListNat").has_value());
  CHECK_FALSE(type_from_name("int").has_value());
}

TEST_CASE("type predicates") {
  CHECK(is_nat_family(ValueType::Nat));
  CHECK(is_nat_family(ValueType::ListNat));
  CHECK(is_nat_family(ValueType::ArrayNat));
  CHECK_FALSE(is_nat_family(ValueType::Int));
  CHECK_FALSE(is_nat_family(ValueType::String));

  CHECK_FALSE(is_sequence(ValueType::Int));
  CHECK_FALSE(is_sequence(ValueType::Nat));
  CHECK(is_sequence(ValueType::String));
  CHECK(is_sequence(ValueType::ListChar));

  CHECK(is_numeric_sequence(ValueType::ArrayNat));
  CHECK_FALSE(is_numeric_sequence(ValueType::ListChar));
  CHECK(is_char_sequence(ValueType::String));
  CHECK_FALSE(is_char_sequence(ValueType::ListInt));
  CHECK(is_array(ValueType::ArrayInt));
  CHECK_FALSE(is_array(ValueType::ListInt));
}

TEST_CASE("alphabets have the pinned sizes and members") {
  CHECK(mutation_alphabet().size() == 37);
  CHECK(mutation_alphabet() == "abcdefghijklmnopqrstuvwxyz0123456789 ");
  CHECK(special_alphabet().size() == 9);
  CHECK(special_alphabet().find('\n') != std::string::npos);
  CHECK(special_alphabet().find('\t') != std::string::npos);
  CHECK(special_alphabet().find('"') != std::string::npos);
  CHECK(special_alphabet().find('\\') != std::string::npos);
  for (char c : mutation_alphabet()) CHECK(is_allowed_char(c));
  for (char c : special_alphabet()) CHECK(is_allowed_char(c));
  CHECK_FALSE(is_allowed_char('\r'));
  CHECK_FALSE(is_allowed_char('\x7f'));
  CHECK_FALSE(is_allowed_char('\x01'));
  CHECK(is_allowed_char(' '));
  CHECK(is_allowed_char('~'));
}

TEST_CASE("factories enforce their domains") {
  CHECK(Value::make_int(-5).as_int() == -5);
  CHECK_THROWS_AS(Value::make_nat(-1), TypeMismatch);
  CHECK(Value::make_nat(0).as_int() == 0);
  CHECK_THROWS_AS(Value::make_sequence(ValueType::ListNat, {1, -2}), TypeMismatch);
  CHECK_THROWS_AS(Value::make_sequence(ValueType::String, {1}), TypeMismatch);
  CHECK_THROWS_AS(Value::make_chars(ValueType::ListChar, "ok\rbad"), TypeMismatch);
  CHECK_THROWS_AS(Value::make_chars(ValueType::ListInt, "abc"), TypeMismatch);
  CHECK(Value::make_chars(ValueType::String, "tab\tnl\n").as_chars() == "tab\tnl\n");
}

TEST_CASE("equality is structural and type-tagged") {
  Value list = Value::make_sequence(ValueType::ListInt, {1, 2});
  Value array = Value::make_sequence(ValueType::ArrayInt, {1, 2});
  Value list_nat = Value::make_sequence(ValueType::ListNat, {1, 2});
  CHECK(list == Value::make_sequence(ValueType::ListInt, {1, 2}));
  CHECK(list != array);       // same payload, different container type
  CHECK(list != list_nat);    // same payload, different element domain
  CHECK(Value::make_int(3) != Value::make_nat(3));
  CHECK(Value::make_chars(ValueType::ListChar, "ab") !=
        Value::make_chars(ValueType::String, "ab"));
}

TEST_CASE("prover rendering") {
  CHECK(render_value(Value::make_int(-7), RenderStyle::Prover) == "-7");
  CHECK(render_value(Value::make_nat(7), RenderStyle::Prover) == "7");
  CHECK(render_value(Value::make_sequence(ValueType::ListInt, {1, -2, 3}),
                     RenderStyle::Prover) == "[1, -2, 3]");
  CHECK(render_value(Value::make_sequence(ValueType::ArrayNat, {4, 5}), RenderStyle::Prover) ==
        "#[4, 5]");
  CHECK(render_value(Value::make_sequence(ValueType::ArrayInt, {}), RenderStyle::Prover) ==
        "#[]");
  CHECK(render_value(Value::make_chars(ValueType::ListChar, "ab"), RenderStyle::Prover) ==
        "['a', 'b']");
  CHECK(render_value(Value::make_chars(ValueType::String, "hi"), RenderStyle::Prover) ==
        "\"hi\"");
}

TEST_CASE("json-style rendering differs only where json needs it") {
  CHECK(render_value(Value::make_sequence(ValueType::ArrayNat, {4, 5}), RenderStyle::Json) ==
        "[4, 5]");
  CHECK(render_value(Value::make_chars(ValueType::ListChar, "ab"), RenderStyle::Json) ==
        "[\"a\", \"b\"]");
  CHECK(render_value(Value::make_chars(ValueType::String, "hi"), RenderStyle::Json) ==
        "\"hi\"");
}

TEST_CASE("escapes in character payloads") {
  Value s = Value::make_chars(ValueType::String, "a\"b\\c\nd\te");
  CHECK(render_value(s, RenderStyle::Prover) == "\"a\\\"b\\\\c\\nd\\te\"");
  Value lc = Value::make_chars(ValueType::ListChar, "'\n");
  CHECK(render_value(lc, RenderStyle::Prover) == "['\\'', '\\n']");
}

TEST_CASE("parse_value inverts render_value in both styles") {
  std::vector<Value> values = {
      Value::make_int(-12),
      Value::make_nat(0),
      Value::make_sequence(ValueType::ListInt, {-1, 0, 1}),
      Value::make_sequence(ValueType::ArrayInt, {7}),
      Value::make_sequence(ValueType::ListNat, {}),
      Value::make_sequence(ValueType::ArrayNat, {0, 2}),
      Value::make_chars(ValueType::ListChar, "x y"),
      Value::make_chars(ValueType::String, "quote\" slash\\ nl\n tab\t"),
  };
  for (const Value& v : values) {
    CAPTURE(render_value(v, RenderStyle::Prover));
    CHECK(parse_value(render_value(v, RenderStyle::Prover), v.type()) == v);
    CHECK(parse_value(render_value(v, RenderStyle::Json), v.type()) == v);
  }
}

TEST_CASE("parse_value rejects malformed and out-of-domain literals") {
  CHECK_THROWS_AS(parse_value("abc", ValueType::Int), SyntaxError);
  CHECK_THROWS_AS(parse_value("[1, 2", ValueType::ListInt), SyntaxError);
  CHECK_THROWS_AS(parse_value("-3", ValueType::Nat), TypeMismatch);
  CHECK_THROWS_AS(parse_value("[1, -2]", ValueType::ListNat), TypeMismatch);
  CHECK_THROWS_AS(parse_value("1 2", ValueType::Int), SyntaxError);  // trailing junk
}

TEST_CASE("canonical_key is deterministic and injective across types") {
  InputMap a{{"xs", Value::make_sequence(ValueType::ListInt, {1, 2})}};
  InputMap b{{"xs", Value::make_sequence(ValueType::ArrayInt, {1, 2})}};
  InputMap c{{"xs", Value::make_sequence(ValueType::ListInt, {1, 2})}};
  CHECK(canonical_key(a) == canonical_key(c));
  CHECK(canonical_key(a) != canonical_key(b));

  // Key order is independent of insertion order (std::map sorts).
  InputMap two;
  two.emplace("b", Value::make_int(1));
  two.emplace("a", Value::make_int(2));
  InputMap two_again;
  two_again.emplace("a", Value::make_int(2));
  two_again.emplace("b", Value::make_int(1));
  CHECK(canonical_key(two) == canonical_key(two_again));
}

TEST_CASE("binds_signature demands exact names and types") {
  ParamSignature sig{{{"xs", ValueType::ListInt}, {"n", ValueType::Nat}}};
  InputMap good{{"xs", Value::make_sequence(ValueType::ListInt, {1})},
                {"n", Value::make_nat(2)}};
  CHECK(binds_signature(good, sig));

  InputMap wrong_type{{"xs", Value::make_sequence(ValueType::ArrayInt, {1})},
                      {"n", Value::make_nat(2)}};
  CHECK_FALSE(binds_signature(wrong_type, sig));

  InputMap missing{{"xs", Value::make_sequence(ValueType::ListInt, {1})}};
  CHECK_FALSE(binds_signature(missing, sig));

  InputMap extra = good;
  extra.emplace("zz", Value::make_int(0));
  CHECK_FALSE(binds_signature(extra, sig));
}

TEST_CASE("ParamSignature::find") {
  ParamSignature sig{{{"a", ValueType::Int}, {"b", ValueType::String}}};
  REQUIRE(sig.find("b") != nullptr);
  CHECK(sig.find("b")->type == ValueType::String);
  CHECK(sig.find("zzz") == nullptr);
}
