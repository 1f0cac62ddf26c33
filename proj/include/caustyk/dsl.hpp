// Copyright 2026 The caustyk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <unordered_map>

#include "caustyk/caus.hpp"
#include "caustyk/random.hpp"

namespace caustyk {

// Grammar, loosest binding first:
//   expr    := expr '@' expr | expr '<' expr | expr '*' expr | postfix
//   postfix := primary '^'*
//   primary := FO(d) | ANY(d) | CLA(n) | I | '[' expr ',' expr ']' | '(' expr ')'
// Precedence: '^' > '*' > '<' > '@'; infix operators are left-associative.
// The symbols U+2297, U+214B and U+25C1 are accepted for '*', '@' and '<'.

struct TypeExpr;
using Expr = std::shared_ptr<const TypeExpr>;

struct TypeExpr {
  enum class Kind { FO, Any, Cla, Unit, Dual, Tensor, Par, Seq, Hom };
  Kind kind = Kind::Unit;
  Index n = 1;
  Expr lhs;
  Expr rhs;
};

Expr fo_expr(Index d);
Expr any_expr(Index d);
Expr cla_expr(Index n);
Expr unit_expr();
Expr dual_expr(Expr e);
Expr binary_expr(TypeExpr::Kind kind, Expr lhs, Expr rhs);

/// Throws Error(Syntax) or Error(Semantic) with the byte offset in the message.
Expr parse_type(std::string_view text);
/// Canonical text with the fewest parentheses.
std::string print_type(const Expr& e);
/// Fully explicit constructor form, e.g. "Seq(Hom(FO 2, FO 2), FO 3)".
std::string tree_string(const Expr& e);
bool same_tree(const Expr& a, const Expr& b);
/// Product of the factor dimensions the expression denotes.
Index expr_dim(const Expr& e);

/// Elaborates expressions to objects, memoized on the canonical text of
/// every subtree. Safe to share between threads.
class Elaborator {
 public:
  CausObject elaborate(const Expr& e);
  std::size_t cache_size() const;

 private:
  mutable std::mutex mu_;
  std::unordered_map<std::string, CausObject> cache_;
};

CausObject elaborate(const Expr& e);
inline CausObject elaborate(std::string_view text) { return elaborate(parse_type(text)); }

/// Random expression; `max_dim` bounds expr_dim when positive.
Expr random_type(Rng& rng, int depth, Index max_dim = 0);

}  // namespace caustyk
