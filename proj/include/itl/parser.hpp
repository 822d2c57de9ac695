#pragma once

#include "itl/errors.hpp"
#include "itl/formula.hpp"
#include "itl/hilbert.hpp"
#include "itl/poset_model.hpp"
#include "itl/realline.hpp"

#include <string>
#include <string_view>

namespace itl
{

// Formula grammar, loosest first:
//   impl  := disj ('->' impl)? | disj '<->' disj
//   disj  := conj ('|' conj)*
//   conj  := unary ('&' unary)*
//   unary := ('~' | 'O' | '<>' | '[]' | '[*]') unary | atom
//   atom  := 'false' | identifier | '(' impl ')'
[[nodiscard]] formula parse_formula( std::string_view text );
[[nodiscard]] std::string print_formula( const formula& f );

// Line-based files; '#' starts a comment. Every parse_error span is a byte
// range of the whole text. Structural problems (bad order, valuations that
// are not up-sets or not open) raise the owning module's errors.
//
//   worlds: w v u
//   order: v<=u              (reflexive pairs optional; transitivity is checked)
//   step: w->v v->v u->u
//   val p: u
[[nodiscard]] poset_model parse_poset_model( std::string_view text );
[[nodiscard]] std::string print_poset_model( const poset_model& m );

//   map: piecewise x<=0 : 0 ; x>=0 : 2*x     (or a single affine term: x + 1)
//   val p: (-inf, 1) u [2, 3)
//   caps: iter=64 restart=8 orbit=128 window=8
[[nodiscard]] real_system parse_real_system( std::string_view text );
[[nodiscard]] std::string print_real_system( const real_system& s );

// "(a, b) u [c, c]", "empty", "(-inf, inf)".
[[nodiscard]] interval_set parse_interval_set( std::string_view text );
[[nodiscard]] rational parse_rational( std::string_view text );

//   1. []p -> p        ; axiom viii {phi:=p}
//   2. ...             ; ipc-taut
//   3. ...             ; mp 1 2
//   4. ...             ; nec-box 3
[[nodiscard]] derivation parse_derivation( std::string_view text );
[[nodiscard]] std::string print_derivation( const derivation& d );

} // namespace itl
