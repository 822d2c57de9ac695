#pragma once

#include "itl/formula.hpp"

#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace itl
{

inline constexpr std::size_t max_worlds = 64;

// A subset of the worlds of a carrier with at most 64 worlds.
class world_set
{
    std::uint64_t _bits = 0;

public:
    constexpr world_set() = default;
    constexpr explicit world_set( std::uint64_t bits ) : _bits{ bits } {}

    static constexpr world_set singleton( std::size_t w ) { return world_set{ std::uint64_t{ 1 } << w }; }
    static constexpr world_set all( std::size_t n )
    {
        return world_set{ n >= 64 ? ~std::uint64_t{ 0 } : ( std::uint64_t{ 1 } << n ) - 1 };
    }

    [[nodiscard]] constexpr std::uint64_t bits() const { return _bits; }
    [[nodiscard]] constexpr bool contains( std::size_t w ) const { return ( _bits >> w ) & 1U; }
    [[nodiscard]] constexpr bool empty() const { return _bits == 0; }
    [[nodiscard]] int count() const { return std::popcount( _bits ); }
    [[nodiscard]] constexpr bool subset_of( world_set o ) const { return ( _bits & ~o._bits ) == 0; }

    constexpr void insert( std::size_t w ) { _bits |= std::uint64_t{ 1 } << w; }

    friend constexpr world_set operator|( world_set a, world_set b ) { return world_set{ a._bits | b._bits }; }
    friend constexpr world_set operator&( world_set a, world_set b ) { return world_set{ a._bits & b._bits }; }
    friend constexpr bool operator==( world_set a, world_set b ) { return a._bits == b._bits; }
    friend constexpr bool operator<( world_set a, world_set b ) { return a._bits < b._bits; }

    // complement relative to a carrier of n worlds
    [[nodiscard]] constexpr world_set complement( std::size_t n ) const { return world_set{ ~_bits } & all( n ); }

    template < typename F >
    void for_each( F&& f ) const
    {
        for ( std::uint64_t b = _bits; b; b &= b - 1 )
            f( static_cast< std::size_t >( std::countr_zero( b ) ) );
    }
};

// Violations found by dynamic_poset::validate. Each pair names worlds by index.
struct poset_diagnostics
{
    bool continuous = true;
    bool open = true;
    // (w, w') with w <= w' but not S(w) <= S(w')
    std::vector< std::pair< std::size_t, std::size_t > > continuity_violations;
    // (w, v) with S(w) <= v but no w' >= w has S(w') = v
    std::vector< std::pair< std::size_t, std::size_t > > openness_violations;
};

// A finite partial order with a total transition map S. The topology is the
// up-set topology of the order.
class dynamic_poset
{
    std::vector< std::string > _names;
    std::vector< world_set > _up;   // up[w] = { v : w <= v }
    std::vector< world_set > _down; // down[w] = { v : v <= w }
    std::vector< std::size_t > _step;
    bool _continuous = false;
    bool _open = false;

    dynamic_poset() = default;

public:
    // `order` lists pairs (a, b) meaning a <= b; reflexive pairs are added.
    // Throws malformed_order when the relation is not antisymmetric and
    // transitive, and invalid_structure on bad indices or sizes.
    static dynamic_poset from_relation( std::vector< std::string > names,
                                        const std::vector< std::pair< std::size_t, std::size_t > >& order,
                                        std::vector< std::size_t > step );

    // Same, from up-sets already closed under the order (fast path for
    // enumeration). `up[w]` must contain w.
    static dynamic_poset from_up_sets( std::vector< std::string > names, std::vector< world_set > up,
                                       std::vector< std::size_t > step );

    [[nodiscard]] std::size_t size() const { return _names.size(); }
    [[nodiscard]] const std::string& name( std::size_t w ) const { return _names[ w ]; }
    [[nodiscard]] const std::vector< std::string >& names() const { return _names; }
    [[nodiscard]] std::optional< std::size_t > index_of( std::string_view name ) const;

    [[nodiscard]] bool leq( std::size_t a, std::size_t b ) const { return _up[ a ].contains( b ); }
    [[nodiscard]] world_set up( std::size_t w ) const { return _up[ w ]; }
    [[nodiscard]] world_set down( std::size_t w ) const { return _down[ w ]; }
    [[nodiscard]] std::size_t step( std::size_t w ) const { return _step[ w ]; }
    [[nodiscard]] const std::vector< std::size_t >& steps() const { return _step; }
    [[nodiscard]] world_set all() const { return world_set::all( size() ); }

    [[nodiscard]] bool continuous() const { return _continuous; }
    [[nodiscard]] bool open() const { return _open; }
    [[nodiscard]] poset_diagnostics validate() const;

    [[nodiscard]] bool is_up_set( world_set a ) const;
    // { w : up(w) is a subset of a }
    [[nodiscard]] world_set interior( world_set a ) const;
    // S^{-1}[a]
    [[nodiscard]] world_set preimage( world_set a ) const;
    // S[a]
    [[nodiscard]] world_set image( world_set a ) const;
};

// Atom name to the up-set it denotes. Atoms not listed denote the empty set.
class valuation
{
    std::map< std::string, world_set > _sets;

public:
    valuation() = default;

    void assign( const std::string& atom, world_set s ) { _sets[ atom ] = s; }
    [[nodiscard]] world_set operator()( const std::string& atom ) const;
    [[nodiscard]] const std::map< std::string, world_set >& entries() const { return _sets; }
};

struct poset_model
{
    dynamic_poset frame;
    valuation val;

    // Throws invalid_structure when some assigned set is not an up-set.
    void check_valuation() const;
};

// Iteration counts observed while evaluating temporal fixpoints.
struct fixpoint_stats
{
    std::size_t max_eventually_steps = 0;
    std::size_t max_box_steps = 0;
};

// A formula compiled against a fixed atom order, for repeated evaluation on
// many frames and valuations.
class poset_evaluator
{
public:
    struct instr
    {
        op kind;
        std::size_t lhs = 0;
        std::size_t rhs = 0;
        std::size_t atom_slot = 0;
    };

private:
    std::vector< instr > _code; // one per subformula, children first
    std::vector< std::string > _atoms;
    mutable std::vector< world_set > _scratch;

public:
    explicit poset_evaluator( const formula& f );
    poset_evaluator( const formula& f, std::vector< std::string > atom_order );

    [[nodiscard]] const std::vector< std::string >& atoms() const { return _atoms; }

    // Extension of the whole formula. `atom_sets[i]` is the extension of
    // atoms()[i]. Requires a continuous frame.
    [[nodiscard]] world_set eval( const dynamic_poset& frame, std::span< const world_set > atom_sets,
                                  fixpoint_stats* stats = nullptr ) const;
};

// Throws continuity_required if the frame is not continuous.
[[nodiscard]] world_set eval( const poset_model& model, const formula& f, fixpoint_stats* stats = nullptr );

// { w : every S^n(w) lies in the extension of f }, by walking orbits.
[[nodiscard]] world_set eval_box_by_orbit( const poset_model& model, const formula& f );

struct morphism_diagnostics
{
    bool monotone = true;
    bool lifts = true;
    bool commutes = true;
    std::vector< std::pair< std::size_t, std::size_t > > monotonicity_violations; // (w, w') in src
    std::vector< std::pair< std::size_t, std::size_t > > lift_violations;         // (w in src, v in dst)
    std::vector< std::size_t > commute_violations;                                // w in src

    [[nodiscard]] bool ok() const { return monotone && lifts && commutes; }
};

// Checks that `map` (defined on `domain`, an S-invariant up-set of `src`) is
// an interior map into `dst` commuting with the transition maps. Entries of
// `map` outside the domain are ignored.
// Throws domain_not_invariant when the domain is not open and S-invariant.
[[nodiscard]] morphism_diagnostics check_morphism( const dynamic_poset& src, const dynamic_poset& dst,
                                                   world_set domain, std::span< const std::size_t > map );

[[nodiscard]] std::string format_world_set( const dynamic_poset& frame, world_set s );

} // namespace itl
