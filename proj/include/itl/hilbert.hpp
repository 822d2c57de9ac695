#pragma once

#include "itl/formula.hpp"

#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace itl
{

// An axiom schema. Its atoms are metavariables drawn from phi, psi, chi.
struct schema
{
    std::string name;
    formula tmpl;
    std::vector< std::string > metavars;
};

// Every known schema: the core axioms ii..xiii, the optional axioms, and a
// finite basis of intuitionistic propositional schemas (ipc-*).
[[nodiscard]] const std::vector< schema >& all_schemas();
[[nodiscard]] const schema* find_schema( std::string_view name );

// Throws missing_metavariable when subst misses a metavariable of s.
[[nodiscard]] formula instantiate( const schema& s, const std::map< std::string, formula >& subst );

// Finds a substitution making the template equal to f, if any.
[[nodiscard]] std::optional< std::map< std::string, formula > > match( const schema& s, const formula& f );

// Decides intuitionistic propositional validity, reading every tensed
// subformula as an opaque atom.
[[nodiscard]] bool is_ipc_tautology( const formula& f );

enum class rule_kind
{
    mp,       // A, A -> B / B
    nec_next, // A / O A
    nec_box,  // A / [] A
    mon_dia,  // A -> B / <>A -> <>B
    ind_dia,  // O A -> A / <>A -> A
};

[[nodiscard]] std::string to_string( rule_kind r );
[[nodiscard]] std::optional< rule_kind > parse_rule_kind( std::string_view name );
[[nodiscard]] std::size_t premise_count( rule_kind r );

struct justification
{
    enum class kind
    {
        axiom,
        ipc_taut,
        rule,
    };

    kind how = kind::ipc_taut;
    std::string schema;                      // axiom
    std::map< std::string, formula > subst;  // axiom; empty means "match"
    rule_kind rule = rule_kind::mp;          // rule
    std::vector< std::size_t > premises;     // rule; 0-based line indices
};

struct derivation_line
{
    formula f;
    justification just;
    std::size_t source_line = 0; // 1-based line in the file, 0 if built in memory
};

struct derivation
{
    std::vector< derivation_line > lines;
};

enum class box_flavor
{
    strong,
    weak,
};

// The axioms and rules of one named logic. Weak logics are stored over the
// strong box and checked through translate_strong.
struct logic_spec
{
    std::string name;
    std::set< std::string > axioms; // schema names (the ipc basis is always included)
    std::set< rule_kind > rules;
    fragment frag;                  // in the strong rendering
    box_flavor flavor = box_flavor::strong;

    [[nodiscard]] bool has_axiom( const std::string& s ) const { return axioms.count( s ) > 0; }
};

// Accepts BASE.SUFFIX with BASE in ITL, ITL0, ETL, RTL, CDTL, ITL+, ETL+,
// CDTL+ and SUFFIX in db, dw, b, w, d. Throws unknown_logic.
[[nodiscard]] logic_spec logic_by_name( std::string_view name );
[[nodiscard]] std::vector< std::string > logic_names();

struct verdict
{
    static constexpr std::size_t npos = std::numeric_limits< std::size_t >::max();

    bool accepted = false;
    std::size_t lines = 0;
    std::size_t failing_index = npos; // 0-based
    std::size_t failing_line = 0;     // source line of the failing step
    std::string reason;
};

// For a weak logic this delegates to check_weak.
[[nodiscard]] verdict check( const derivation& d, const logic_spec& logic );

// Translates every line (and substitution) with translate_strong and checks
// the result against the strong rendering of `logic`. Throws mixed_boxes if
// both boxes occur.
[[nodiscard]] verdict check_weak( const derivation& d, const logic_spec& logic );

// Applies f to every formula of the derivation.
template < typename F >
[[nodiscard]] derivation map_formulas( const derivation& d, F&& f )
{
    derivation out = d;
    for ( auto& line : out.lines )
    {
        line.f = f( line.f );
        for ( auto& [ mv, g ] : line.just.subst )
            g = f( g );
    }
    return out;
}

} // namespace itl
