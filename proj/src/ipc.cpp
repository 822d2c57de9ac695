// Contraction-free sequent search for intuitionistic propositional logic
// (Dyckhoff's G4ip). Every rule application shrinks the sequent in a
// well-founded order, so the search terminates without loop checks.

#include "itl/hilbert.hpp"

#include <algorithm>
#include <unordered_map>

namespace itl
{

namespace
{

// Tensed subformulas are opaque to the prover.
bool atomic( const formula& f )
{
    return f.kind() == op::atom || is_unary( f.kind() );
}

using context = std::vector< formula >;

struct sequent_key
{
    std::size_t hash;
    context ctx;
    formula goal;

    friend bool operator==( const sequent_key& a, const sequent_key& b )
    {
        return a.hash == b.hash && a.goal == b.goal && a.ctx == b.ctx;
    }
};

struct key_hash
{
    std::size_t operator()( const sequent_key& k ) const { return k.hash; }
};

class prover
{
    std::unordered_map< sequent_key, bool, key_hash > _memo;

public:
    bool prove( context ctx, const formula& goal )
    {
        std::sort( ctx.begin(), ctx.end() );
        ctx.erase( std::unique( ctx.begin(), ctx.end() ), ctx.end() );

        std::size_t h = goal.hash();
        for ( const auto& f : ctx )
            h = h * 1000003U ^ f.hash();
        sequent_key key{ h, ctx, goal };
        if ( auto it = _memo.find( key ); it != _memo.end() )
            return it->second;
        bool result = search( std::move( ctx ), goal );
        _memo.emplace( std::move( key ), result );
        return result;
    }

private:
    static context without( const context& ctx, std::size_t i )
    {
        context out = ctx;
        out.erase( out.begin() + static_cast< std::ptrdiff_t >( i ) );
        return out;
    }

    static bool has( const context& ctx, const formula& f )
    {
        return std::binary_search( ctx.begin(), ctx.end(), f );
    }

    bool search( const context& ctx, const formula& goal )
    {
        // invertible left rules
        for ( std::size_t i = 0; i < ctx.size(); ++i )
        {
            const formula& f = ctx[ i ];
            switch ( f.kind() )
            {
            case op::bottom: return true;
            case op::conj:
            {
                context next = without( ctx, i );
                next.push_back( f.lhs() );
                next.push_back( f.rhs() );
                return prove( std::move( next ), goal );
            }
            case op::disj:
            {
                context l = without( ctx, i );
                context r = l;
                l.push_back( f.lhs() );
                r.push_back( f.rhs() );
                return prove( std::move( l ), goal ) && prove( std::move( r ), goal );
            }
            case op::implies:
            {
                const formula& a = f.lhs();
                const formula& b = f.rhs();
                if ( a.kind() == op::bottom )
                    return prove( without( ctx, i ), goal );
                if ( atomic( a ) && has( ctx, a ) )
                {
                    context next = without( ctx, i );
                    next.push_back( b );
                    return prove( std::move( next ), goal );
                }
                if ( a.kind() == op::conj )
                {
                    context next = without( ctx, i );
                    next.push_back( formula::implies( a.lhs(), formula::implies( a.rhs(), b ) ) );
                    return prove( std::move( next ), goal );
                }
                if ( a.kind() == op::disj )
                {
                    context next = without( ctx, i );
                    next.push_back( formula::implies( a.lhs(), b ) );
                    next.push_back( formula::implies( a.rhs(), b ) );
                    return prove( std::move( next ), goal );
                }
                break;
            }
            default:
                if ( f == goal )
                    return true;
                break;
            }
        }

        // invertible right rules
        if ( goal.kind() == op::implies )
        {
            context next = ctx;
            next.push_back( goal.lhs() );
            return prove( std::move( next ), goal.rhs() );
        }
        if ( goal.kind() == op::conj )
            return prove( ctx, goal.lhs() ) && prove( ctx, goal.rhs() );

        // non-invertible choices
        if ( goal.kind() == op::disj && ( prove( ctx, goal.lhs() ) || prove( ctx, goal.rhs() ) ) )
            return true;
        for ( std::size_t i = 0; i < ctx.size(); ++i )
        {
            const formula& f = ctx[ i ];
            if ( f.kind() != op::implies || f.lhs().kind() != op::implies )
                continue;
            // (C -> D) -> B
            const formula& c = f.lhs().lhs();
            const formula& d = f.lhs().rhs();
            const formula& b = f.rhs();
            context left = without( ctx, i );
            context right = left;
            left.push_back( formula::implies( d, b ) );
            right.push_back( b );
            if ( prove( std::move( left ), formula::implies( c, d ) ) && prove( std::move( right ), goal ) )
                return true;
        }
        return false;
    }
};

} // namespace

bool is_ipc_tautology( const formula& f )
{
    prover p;
    return p.prove( {}, f );
}

} // namespace itl
