#include "itl/hilbert.hpp"

#include "itl/errors.hpp"
#include "itl/parser.hpp"

#include <algorithm>
#include <array>

namespace itl
{

namespace
{

struct schema_text
{
    const char* name;
    const char* text;
};

constexpr schema_text schema_table[] = {
    { "ii", "~O false" },
    { "iii", "O(phi & psi) <-> O phi & O psi" },
    { "iv", "O(phi | psi) <-> O phi | O psi" },
    { "v", "O(phi -> psi) -> O phi -> O psi" },
    { "vi", "[](phi -> psi) -> []phi -> []psi" },
    { "vii", "[](phi -> psi) -> <>phi -> <>psi" },
    { "viii", "[]phi -> phi" },
    { "ix", "[]phi -> O[]phi" },
    { "x", "phi -> <>phi" },
    { "xi", "O<>phi -> <>phi" },
    { "xii", "[](phi -> O phi) -> phi -> []phi" },
    { "xiii", "[](O phi -> phi) -> <>phi -> phi" },
    { "wh", "[]phi -> []O phi" },
    { "fs-next", "(O phi -> O psi) -> O(phi -> psi)" },
    { "fs-dia", "(<>phi -> []psi) -> [](phi -> psi)" },
    { "cd", "[](phi | psi) -> []phi | <>psi" },
    { "cd-minus", "[](~phi | phi) -> []~phi | <>phi" },
    { "bi", "[](phi | psi) & [](O psi -> psi) -> []phi | psi" },
    { "cem", "~O phi & O~~phi -> O psi | ~O psi" },
    { "ipc-k", "phi -> psi -> phi" },
    { "ipc-s", "(phi -> psi -> chi) -> (phi -> psi) -> phi -> chi" },
    { "ipc-and-i", "phi -> psi -> phi & psi" },
    { "ipc-and-e1", "phi & psi -> phi" },
    { "ipc-and-e2", "phi & psi -> psi" },
    { "ipc-or-i1", "phi -> phi | psi" },
    { "ipc-or-i2", "psi -> phi | psi" },
    { "ipc-or-e", "(phi -> chi) -> (psi -> chi) -> phi | psi -> chi" },
    { "ipc-efq", "false -> phi" },
};

const std::array< std::string, 9 > ipc_basis = { "ipc-k",      "ipc-s",      "ipc-and-i", "ipc-and-e1", "ipc-and-e2",
                                                 "ipc-or-i1", "ipc-or-i2", "ipc-or-e",  "ipc-efq" };

const std::array< std::string, 12 > core_axioms = { "ii",   "iii", "iv", "v",  "vi",  "vii",
                                                    "viii", "ix",  "x",  "xi", "xii", "xiii" };

bool match_into( const formula& t, const formula& f, std::map< std::string, formula >& m )
{
    if ( t.kind() == op::atom )
    {
        auto [ it, fresh ] = m.emplace( t.name(), f );
        return fresh || it->second == f;
    }
    if ( t.kind() != f.kind() )
        return false;
    if ( is_binary( t.kind() ) )
        return match_into( t.lhs(), f.lhs(), m ) && match_into( t.rhs(), f.rhs(), m );
    if ( is_unary( t.kind() ) )
        return match_into( t.operand(), f.operand(), m );
    return true;
}

} // namespace

const std::vector< schema >& all_schemas()
{
    static const std::vector< schema > schemas = [] {
        std::vector< schema > out;
        for ( const auto& [ name, text ] : schema_table )
        {
            formula t = parse_formula( text );
            auto mv = atoms( t );
            out.push_back( { name, t, { mv.begin(), mv.end() } } );
        }
        return out;
    }();
    return schemas;
}

const schema* find_schema( std::string_view name )
{
    for ( const auto& s : all_schemas() )
        if ( s.name == name )
            return &s;
    return nullptr;
}

formula instantiate( const schema& s, const std::map< std::string, formula >& subst )
{
    for ( const auto& mv : s.metavars )
        if ( !subst.count( mv ) )
            throw missing_metavariable( "schema " + s.name + " needs a value for " + mv );
    return substitute( s.tmpl, subst );
}

std::optional< std::map< std::string, formula > > match( const schema& s, const formula& f )
{
    std::map< std::string, formula > m;
    if ( !match_into( s.tmpl, f, m ) )
        return std::nullopt;
    return m;
}

// ---------------------------------------------------------------------------
// rules

std::string to_string( rule_kind r )
{
    switch ( r )
    {
    case rule_kind::mp: return "mp";
    case rule_kind::nec_next: return "nec-next";
    case rule_kind::nec_box: return "nec-box";
    case rule_kind::mon_dia: return "mon-dia";
    case rule_kind::ind_dia: return "ind-dia";
    }
    return "?";
}

std::optional< rule_kind > parse_rule_kind( std::string_view name )
{
    for ( auto r : { rule_kind::mp, rule_kind::nec_next, rule_kind::nec_box, rule_kind::mon_dia, rule_kind::ind_dia } )
        if ( to_string( r ) == name )
            return r;
    return std::nullopt;
}

std::size_t premise_count( rule_kind r )
{
    return r == rule_kind::mp ? 2 : 1;
}

// ---------------------------------------------------------------------------
// logics

logic_spec logic_by_name( std::string_view name )
{
    auto dot = name.rfind( '.' );
    if ( dot == std::string_view::npos )
        throw unknown_logic( "logic name needs a suffix (.db, .dw, .b, .w, .d): " + std::string( name ) );
    const std::string base{ name.substr( 0, dot ) };
    const std::string suffix{ name.substr( dot + 1 ) };

    static const std::map< std::string, std::vector< std::string > > extras = {
        { "ITL", {} },
        { "ITL0", {} },
        { "ETL", { "cd-minus" } },
        { "RTL", { "cd-minus", "cem" } },
        { "CDTL", { "cd" } },
        { "ITL+", { "fs-next" } },
        { "ETL+", { "fs-next", "cd-minus" } },
        { "CDTL+", { "fs-next", "cd" } },
    };
    auto it = extras.find( base );
    if ( it == extras.end() )
        throw unknown_logic( "unknown logic " + std::string( name ) );
    if ( suffix != "db" && suffix != "dw" && suffix != "b" && suffix != "w" && suffix != "d" )
        throw unknown_logic( "unknown suffix ." + suffix + " in " + std::string( name ) );

    logic_spec spec;
    spec.name = std::string( name );
    spec.axioms.insert( core_axioms.begin(), core_axioms.end() );
    spec.axioms.insert( ipc_basis.begin(), ipc_basis.end() );
    spec.axioms.insert( it->second.begin(), it->second.end() );

    // Weak renderings of the three logics without CD or FS sit on the base
    // where WH replaces axiom ix; the rest keep ix.
    const bool weak = suffix == "dw" || suffix == "w";
    const bool weakened_base = base == "ITL" || base == "ETL" || base == "RTL";
    if ( base == "ITL0" || ( weak && weakened_base ) )
    {
        spec.axioms.erase( "ix" );
        spec.axioms.insert( "wh" );
    }
    spec.flavor = weak ? box_flavor::weak : box_flavor::strong;

    spec.rules = { rule_kind::mp, rule_kind::nec_next, rule_kind::nec_box };
    if ( suffix == "db" || suffix == "dw" )
        spec.frag = { tense::eventually, tense::strong_box };
    else if ( suffix == "b" || suffix == "w" )
    {
        spec.frag = { tense::strong_box };
        if ( spec.has_axiom( "cd" ) )
            spec.axioms.insert( "bi" );
    }
    else
    {
        spec.frag = { tense::eventually };
        spec.rules = { rule_kind::mp, rule_kind::nec_next, rule_kind::mon_dia, rule_kind::ind_dia };
    }
    return spec;
}

std::vector< std::string > logic_names()
{
    std::vector< std::string > out;
    for ( const char* base : { "ITL", "ITL0", "ETL", "RTL", "CDTL", "ITL+", "ETL+", "CDTL+" } )
        for ( const char* suffix : { "db", "dw", "b", "w", "d" } )
            out.push_back( std::string( base ) + "." + suffix );
    return out;
}

// ---------------------------------------------------------------------------
// checking

namespace
{

std::string show( const formula& f )
{
    return "'" + print_formula( f ) + "'";
}

// Empty when the line is correct, else the reason it is not.
std::string check_line( const derivation& d, std::size_t i, const logic_spec& logic )
{
    const auto& line = d.lines[ i ];
    const auto& j = line.just;

    if ( !in_fragment( line.f, logic.frag ) )
        return "formula leaves the language " + logic.frag.to_string();

    switch ( j.how )
    {
    case justification::kind::ipc_taut:
        if ( !is_ipc_tautology( line.f ) )
            return "not an intuitionistic tautology (tensed subformulas read as atoms)";
        return {};

    case justification::kind::axiom:
    {
        const schema* s = find_schema( j.schema );
        if ( !s )
            return "unknown schema " + j.schema;
        if ( !logic.has_axiom( s->name ) )
            return "schema " + s->name + " is not an axiom of " + logic.name;
        if ( j.subst.empty() )
        {
            if ( !match( *s, line.f ) )
                return "not an instance of schema " + s->name;
            return {};
        }
        for ( const auto& [ mv, g ] : j.subst )
            if ( std::find( s->metavars.begin(), s->metavars.end(), mv ) == s->metavars.end() )
                return "schema " + s->name + " has no metavariable " + mv;
        for ( const auto& mv : s->metavars )
            if ( !j.subst.count( mv ) )
                return "substitution misses " + mv;
        formula expected = instantiate( *s, j.subst );
        if ( expected != line.f )
            return "schema " + s->name + " instance is " + show( expected );
        return {};
    }

    case justification::kind::rule:
    {
        if ( !logic.rules.count( j.rule ) )
            return "rule " + to_string( j.rule ) + " is not available in " + logic.name;
        if ( j.premises.size() != premise_count( j.rule ) )
            return "rule " + to_string( j.rule ) + " takes " + std::to_string( premise_count( j.rule ) ) +
                   " premise(s)";
        for ( auto p : j.premises )
            if ( p >= i )
                return "premise " + std::to_string( p + 1 ) + " does not precede the line";
        const formula& a = d.lines[ j.premises[ 0 ] ].f;

        switch ( j.rule )
        {
        case rule_kind::mp:
        {
            const formula& imp = d.lines[ j.premises[ 1 ] ].f;
            if ( imp.kind() != op::implies || imp.lhs() != a )
                return "second premise is not an implication from the first";
            if ( imp.rhs() != line.f )
                return "modus ponens yields " + show( imp.rhs() );
            return {};
        }
        case rule_kind::nec_next:
            if ( line.f != formula::next( a ) )
                return "necessitation yields " + show( formula::next( a ) );
            return {};
        case rule_kind::nec_box:
            if ( line.f != formula::strong_box( a ) )
                return "necessitation yields " + show( formula::strong_box( a ) );
            return {};
        case rule_kind::mon_dia:
        {
            if ( a.kind() != op::implies )
                return "premise is not an implication";
            formula want = formula::implies( formula::eventually( a.lhs() ), formula::eventually( a.rhs() ) );
            if ( line.f != want )
                return "rule yields " + show( want );
            return {};
        }
        case rule_kind::ind_dia:
        {
            if ( a.kind() != op::implies || a.lhs() != formula::next( a.rhs() ) )
                return "premise is not of the form O A -> A";
            formula want = formula::implies( formula::eventually( a.rhs() ), a.rhs() );
            if ( line.f != want )
                return "rule yields " + show( want );
            return {};
        }
        }
    }
    }
    return "malformed justification";
}

verdict check_strong( const derivation& d, const logic_spec& logic )
{
    verdict v;
    v.lines = d.lines.size();
    if ( d.lines.empty() )
    {
        v.reason = "empty derivation";
        v.failing_index = 0;
        return v;
    }
    for ( std::size_t i = 0; i < d.lines.size(); ++i )
    {
        std::string why = check_line( d, i, logic );
        if ( !why.empty() )
        {
            v.failing_index = i;
            v.failing_line = d.lines[ i ].source_line;
            v.reason = std::move( why );
            return v;
        }
    }
    v.accepted = true;
    return v;
}

bool mentions( const derivation& d, op o )
{
    for ( const auto& line : d.lines )
    {
        if ( contains_op( line.f, o ) )
            return true;
        for ( const auto& [ mv, g ] : line.just.subst )
            if ( contains_op( g, o ) )
                return true;
    }
    return false;
}

} // namespace

verdict check( const derivation& d, const logic_spec& logic )
{
    if ( logic.flavor == box_flavor::weak )
        return check_weak( d, logic );
    return check_strong( d, logic );
}

verdict check_weak( const derivation& d, const logic_spec& logic )
{
    if ( mentions( d, op::strong_box ) && mentions( d, op::weak_box ) )
        throw mixed_boxes( "derivation mixes [] and [*]" );
    for ( std::size_t i = 0; i < d.lines.size(); ++i )
        if ( contains_op( d.lines[ i ].f, op::strong_box ) )
        {
            verdict v;
            v.lines = d.lines.size();
            v.failing_index = i;
            v.failing_line = d.lines[ i ].source_line;
            v.reason = "[] does not belong to the language of " + logic.name + " (write [*])";
            return v;
        }
    return check_strong( map_formulas( d, []( const formula& f ) { return translate_strong( f ); } ), logic );
}

} // namespace itl
