#include "itl/formula.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <unordered_set>

namespace itl
{

struct formula::node
{
    op kind;
    std::string name;
    formula lhs;
    formula rhs;
    std::size_t hash;
    std::size_t size;
    std::size_t depth;
};

bool is_unary( op o )
{
    return o == op::next || o == op::eventually || o == op::strong_box || o == op::weak_box;
}

bool is_binary( op o )
{
    return o == op::conj || o == op::disj || o == op::implies;
}

bool is_tense( op o )
{
    return is_unary( o );
}

namespace
{

std::size_t mix( std::size_t seed, std::size_t v )
{
    return seed ^ ( v + 0x9e3779b97f4a7c15ULL + ( seed << 6 ) + ( seed >> 2 ) );
}

} // namespace

formula formula::make( op kind, std::string name, const formula* lhs, const formula* rhs )
{
    std::size_t h = std::hash< int >{}( static_cast< int >( kind ) );
    std::size_t size = 1;
    std::size_t depth = 0;
    if ( kind == op::atom )
        h = mix( h, std::hash< std::string >{}( name ) );
    if ( lhs )
    {
        h = mix( h, lhs->hash() );
        size += lhs->size();
        depth = std::max( depth, lhs->depth() + 1 );
    }
    if ( rhs )
    {
        h = mix( h, rhs->hash() );
        size += rhs->size();
        depth = std::max( depth, rhs->depth() + 1 );
    }
    auto n = std::make_shared< const node >( node{ kind, std::move( name ),
                                                   lhs ? *lhs : formula{ std::shared_ptr< const node >{} },
                                                   rhs ? *rhs : formula{ std::shared_ptr< const node >{} },
                                                   h, size, depth } );
    return formula{ std::move( n ) };
}

formula::formula()
{
    static const formula bot = make( op::bottom, {}, nullptr, nullptr );
    _node = bot._node;
}

formula formula::bottom() { return formula{}; }
formula formula::atom( std::string name ) { return make( op::atom, std::move( name ), nullptr, nullptr ); }
formula formula::conj( const formula& l, const formula& r ) { return make( op::conj, {}, &l, &r ); }
formula formula::disj( const formula& l, const formula& r ) { return make( op::disj, {}, &l, &r ); }
formula formula::implies( const formula& l, const formula& r ) { return make( op::implies, {}, &l, &r ); }
formula formula::next( const formula& f ) { return make( op::next, {}, &f, nullptr ); }
formula formula::eventually( const formula& f ) { return make( op::eventually, {}, &f, nullptr ); }
formula formula::strong_box( const formula& f ) { return make( op::strong_box, {}, &f, nullptr ); }
formula formula::weak_box( const formula& f ) { return make( op::weak_box, {}, &f, nullptr ); }
formula formula::negation( const formula& f ) { return implies( f, bottom() ); }
formula formula::iff( const formula& l, const formula& r ) { return conj( implies( l, r ), implies( r, l ) ); }

formula formula::unary( op kind, const formula& f )
{
    assert( is_unary( kind ) );
    return make( kind, {}, &f, nullptr );
}

formula formula::binary( op kind, const formula& l, const formula& r )
{
    assert( is_binary( kind ) );
    return make( kind, {}, &l, &r );
}

op formula::kind() const { return _node->kind; }
const std::string& formula::name() const { return _node->name; }
const formula& formula::lhs() const { return _node->lhs; }
const formula& formula::rhs() const { return _node->rhs; }
const formula& formula::operand() const { return _node->lhs; }
std::size_t formula::hash() const { return _node->hash; }
std::size_t formula::size() const { return _node->size; }
std::size_t formula::depth() const { return _node->depth; }

bool formula::is_negation() const
{
    return kind() == op::implies && rhs().kind() == op::bottom;
}

bool operator==( const formula& a, const formula& b )
{
    if ( a._node == b._node )
        return true;
    if ( !a._node || !b._node )
        return false;
    const auto& x = *a._node;
    const auto& y = *b._node;
    if ( x.hash != y.hash || x.kind != y.kind || x.size != y.size )
        return false;
    if ( x.kind == op::atom )
        return x.name == y.name;
    return x.lhs == y.lhs && x.rhs == y.rhs;
}

bool operator<( const formula& a, const formula& b )
{
    if ( a._node == b._node )
        return false;
    if ( !a._node || !b._node )
        return !a._node;
    const auto& x = *a._node;
    const auto& y = *b._node;
    if ( x.kind != y.kind )
        return x.kind < y.kind;
    if ( x.kind == op::atom )
        return x.name < y.name;
    if ( x.lhs != y.lhs )
        return x.lhs < y.lhs;
    return x.rhs < y.rhs;
}

std::vector< formula > subformulas( const formula& f )
{
    std::vector< formula > out;
    std::unordered_set< formula, formula_hash > seen;

    std::function< void( const formula& ) > walk = [ & ]( const formula& g ) {
        if ( seen.count( g ) )
            return;
        if ( is_binary( g.kind() ) )
        {
            walk( g.lhs() );
            walk( g.rhs() );
        }
        else if ( is_unary( g.kind() ) )
            walk( g.operand() );
        seen.insert( g );
        out.push_back( g );
    };
    walk( f );
    return out;
}

namespace
{

formula replace_op( const formula& f, op from, op to )
{
    switch ( f.kind() )
    {
    case op::bottom:
    case op::atom:
        return f;
    case op::conj:
    case op::disj:
    case op::implies:
        return formula::binary( f.kind(), replace_op( f.lhs(), from, to ), replace_op( f.rhs(), from, to ) );
    default:
        return formula::unary( f.kind() == from ? to : f.kind(), replace_op( f.operand(), from, to ) );
    }
}

} // namespace

formula translate_weak( const formula& f ) { return replace_op( f, op::strong_box, op::weak_box ); }
formula translate_strong( const formula& f ) { return replace_op( f, op::weak_box, op::strong_box ); }

std::string fragment::to_string() const
{
    std::string s = "{O";
    if ( admits( tense::eventually ) )
        s += ",<>";
    if ( admits( tense::strong_box ) )
        s += ",[]";
    if ( admits( tense::weak_box ) )
        s += ",[*]";
    return s + "}";
}

bool contains_op( const formula& f, op o )
{
    if ( f.kind() == o )
        return true;
    if ( is_binary( f.kind() ) )
        return contains_op( f.lhs(), o ) || contains_op( f.rhs(), o );
    if ( is_unary( f.kind() ) )
        return contains_op( f.operand(), o );
    return false;
}

bool in_fragment( const formula& f, fragment frag )
{
    switch ( f.kind() )
    {
    case op::bottom:
    case op::atom:
        return true;
    case op::conj:
    case op::disj:
    case op::implies:
        return in_fragment( f.lhs(), frag ) && in_fragment( f.rhs(), frag );
    case op::next:
        return in_fragment( f.operand(), frag );
    case op::eventually:
        return frag.admits( tense::eventually ) && in_fragment( f.operand(), frag );
    case op::strong_box:
        return frag.admits( tense::strong_box ) && in_fragment( f.operand(), frag );
    case op::weak_box:
        return frag.admits( tense::weak_box ) && in_fragment( f.operand(), frag );
    }
    return false;
}

std::set< std::string > atoms( const formula& f )
{
    std::set< std::string > out;
    for ( const auto& g : subformulas( f ) )
        if ( g.kind() == op::atom )
            out.insert( g.name() );
    return out;
}

formula substitute( const formula& f, const std::map< std::string, formula >& subst )
{
    switch ( f.kind() )
    {
    case op::bottom:
        return f;
    case op::atom:
    {
        auto it = subst.find( f.name() );
        return it == subst.end() ? f : it->second;
    }
    case op::conj:
    case op::disj:
    case op::implies:
        return formula::binary( f.kind(), substitute( f.lhs(), subst ), substitute( f.rhs(), subst ) );
    default:
        return formula::unary( f.kind(), substitute( f.operand(), subst ) );
    }
}

} // namespace itl
