#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace itl
{

// Primitive connectives. Negation and biconditional are not primitive: they
// are expanded when constructed.
enum class op : std::uint8_t
{
    bottom,
    atom,
    conj,
    disj,
    implies,
    next,
    eventually,
    strong_box,
    weak_box,
};

[[nodiscard]] bool is_unary( op o );
[[nodiscard]] bool is_binary( op o );
[[nodiscard]] bool is_tense( op o );

// Immutable formula tree with shared structure. Copies are cheap; equality is
// syntactic.
class formula
{
    struct node;
    std::shared_ptr< const node > _node;

    explicit formula( std::shared_ptr< const node > n ) : _node{ std::move( n ) } {}
    static formula make( op kind, std::string name, const formula* lhs, const formula* rhs );

public:
    formula(); // bottom

    static formula bottom();
    static formula atom( std::string name );
    static formula conj( const formula& l, const formula& r );
    static formula disj( const formula& l, const formula& r );
    static formula implies( const formula& l, const formula& r );
    static formula next( const formula& f );
    static formula eventually( const formula& f );
    static formula strong_box( const formula& f );
    static formula weak_box( const formula& f );
    static formula negation( const formula& f );
    static formula iff( const formula& l, const formula& r );
    static formula unary( op kind, const formula& f );
    static formula binary( op kind, const formula& l, const formula& r );

    [[nodiscard]] op kind() const;
    [[nodiscard]] const std::string& name() const; // atoms only
    [[nodiscard]] const formula& lhs() const;      // binary
    [[nodiscard]] const formula& rhs() const;      // binary
    [[nodiscard]] const formula& operand() const;  // unary
    [[nodiscard]] std::size_t hash() const;
    [[nodiscard]] std::size_t size() const;  // number of nodes
    [[nodiscard]] std::size_t depth() const;

    // p -> false
    [[nodiscard]] bool is_negation() const;

    friend bool operator==( const formula& a, const formula& b );
    friend bool operator!=( const formula& a, const formula& b ) { return !( a == b ); }
    // Total order used for deterministic containers; not semantically meaningful.
    friend bool operator<( const formula& a, const formula& b );
};

struct formula_hash
{
    std::size_t operator()( const formula& f ) const { return f.hash(); }
};

// Every distinct subtree of f, children before parents.
[[nodiscard]] std::vector< formula > subformulas( const formula& f );

// Replace every strong box by a weak box (and conversely).
[[nodiscard]] formula translate_weak( const formula& f );
[[nodiscard]] formula translate_strong( const formula& f );

enum class tense : std::uint8_t
{
    eventually = 1,
    strong_box = 2,
    weak_box = 4,
};

// The tenses a language admits besides `next`, which is always present.
class fragment
{
    std::uint8_t _mask = 0;

public:
    constexpr fragment() = default;
    constexpr fragment( std::initializer_list< tense > ts )
    {
        for ( auto t : ts )
            _mask |= static_cast< std::uint8_t >( t );
    }

    [[nodiscard]] constexpr bool admits( tense t ) const { return _mask & static_cast< std::uint8_t >( t ); }
    [[nodiscard]] constexpr std::uint8_t mask() const { return _mask; }
    [[nodiscard]] std::string to_string() const;

    friend constexpr bool operator==( fragment a, fragment b ) { return a._mask == b._mask; }
};

[[nodiscard]] bool in_fragment( const formula& f, fragment frag );
[[nodiscard]] bool contains_op( const formula& f, op o );

[[nodiscard]] std::set< std::string > atoms( const formula& f );

// Simultaneous substitution of atoms; unmapped atoms are left alone.
[[nodiscard]] formula substitute( const formula& f, const std::map< std::string, formula >& subst );

} // namespace itl
